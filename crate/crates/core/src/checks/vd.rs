//! Vertex decomposability by recursive search for shedding vertices.

use std::collections::HashMap;
use std::sync::Arc;

use crate::face::{self, Face};

use super::report::SheddingFailure;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VdTree {
    Simplex(Face),
    Shed {
        vertex: usize,
        link: Arc<VdTree>,
        deletion: Arc<VdTree>,
    },
}

impl VdTree {
    /// Facet order read off the decomposition: the deletion's order, then the
    /// link's order coned with the shedding vertex. For a pure complex this is
    /// a shelling.
    pub fn facet_order(&self) -> Vec<Face> {
        match self {
            VdTree::Simplex(f) => vec![*f],
            VdTree::Shed {
                vertex,
                link,
                deletion,
            } => {
                let mut out = deletion.facet_order();
                out.extend(link.facet_order().into_iter().map(|f| f.with(*vertex)));
                out
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VdOutcome {
    Decomposable(Arc<VdTree>),
    /// Why each candidate vertex failed at the top level.
    NotDecomposable(Vec<(usize, SheddingFailure)>),
    BudgetExceeded,
}

/// Every facet of `del(v)` is a facet of the complex.
pub(crate) fn is_shedding(facets: &[Face], v: usize) -> bool {
    facets.iter().filter(|f| f.contains(v)).all(|f| {
        let rest = f.without(v);
        facets.iter().any(|g| !g.contains(v) && rest.is_subset(*g))
    })
}

struct OutOfBudget;

struct Search {
    budget: u64,
    nodes: u64,
    memo: HashMap<Vec<Face>, Option<Arc<VdTree>>>,
}

impl Search {
    fn attempt(
        &mut self,
        facets: &[Face],
        v: usize,
    ) -> Result<Result<Arc<VdTree>, SheddingFailure>, OutOfBudget> {
        if !is_shedding(facets, v) {
            return Ok(Err(SheddingFailure::NotShedding));
        }
        let vf = Face::singleton(v);
        let Some(link) = self.search(&face::link_facets(facets, vf))? else {
            return Ok(Err(SheddingFailure::LinkNotDecomposable));
        };
        let Some(deletion) = self.search(&face::deletion_facets(facets, vf))? else {
            return Ok(Err(SheddingFailure::DeletionNotDecomposable));
        };
        Ok(Ok(Arc::new(VdTree::Shed {
            vertex: v,
            link,
            deletion,
        })))
    }

    fn search(&mut self, facets: &[Face]) -> Result<Option<Arc<VdTree>>, OutOfBudget> {
        if facets.len() == 1 {
            return Ok(Some(Arc::new(VdTree::Simplex(facets[0]))));
        }
        if let Some(hit) = self.memo.get(facets) {
            return Ok(hit.clone());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(OutOfBudget);
        }
        let mut found = None;
        for v in face::union_of(facets).iter() {
            if let Ok(tree) = self.attempt(facets, v)? {
                found = Some(tree);
                break;
            }
        }
        self.memo.insert(facets.to_vec(), found.clone());
        Ok(found)
    }
}

/// Decides vertex decomposability of the complex with the given (canonical,
/// nonempty) facet list. Returns the outcome and the number of search nodes.
pub fn decompose(facets: &[Face], budget: u64) -> (VdOutcome, u64) {
    let mut s = Search {
        budget,
        nodes: 0,
        memo: HashMap::new(),
    };
    if facets.len() <= 1 {
        let tree = Arc::new(VdTree::Simplex(facets.first().copied().unwrap_or_default()));
        return (VdOutcome::Decomposable(tree), 0);
    }
    s.nodes += 1;
    let mut attempts = Vec::new();
    for v in face::union_of(facets).iter() {
        match s.attempt(facets, v) {
            Err(OutOfBudget) => return (VdOutcome::BudgetExceeded, s.nodes),
            Ok(Ok(tree)) => return (VdOutcome::Decomposable(tree), s.nodes),
            Ok(Err(why)) => attempts.push((v, why)),
        }
    }
    (VdOutcome::NotDecomposable(attempts), s.nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::shelling::verify_order;

    fn faces(fs: &[&[usize]]) -> Vec<Face> {
        face::maximalize(fs.iter().map(|f| Face::from_indices(f.iter().copied())).collect())
    }

    #[test]
    fn bowtie_not_vd() {
        let (out, _) = decompose(&faces(&[&[0, 1, 2], &[2, 3, 4]]), 1000);
        let VdOutcome::NotDecomposable(attempts) = out else {
            panic!("{out:?}")
        };
        assert_eq!(attempts.len(), 5);
    }

    #[test]
    fn four_cycle_vd_and_order_shells() {
        let f = faces(&[&[0, 2], &[0, 3], &[1, 2], &[1, 3]]);
        let (out, _) = decompose(&f, 1000);
        let VdOutcome::Decomposable(tree) = out else {
            panic!("{out:?}")
        };
        let order: Vec<usize> = tree
            .facet_order()
            .iter()
            .map(|g| f.iter().position(|h| h == g).unwrap())
            .collect();
        assert_eq!(verify_order(&f, &order), Ok(()));
    }

    #[test]
    fn base_cases() {
        assert!(matches!(
            decompose(&[Face::EMPTY], 10).0,
            VdOutcome::Decomposable(_)
        ));
        assert!(matches!(
            decompose(&faces(&[&[0, 1, 2]]), 10).0,
            VdOutcome::Decomposable(_)
        ));
    }

    #[test]
    fn shedding_condition() {
        // <ab, bc>: a is shedding (del(a) = <bc>), b is not (del(b) = <a, c>)
        let f = faces(&[&[0, 1], &[1, 2]]);
        assert!(is_shedding(&f, 0));
        assert!(!is_shedding(&f, 1));
    }
}
