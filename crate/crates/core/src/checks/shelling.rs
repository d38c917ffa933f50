//! Backtracking search for shelling orders of pure complexes.

use std::collections::HashSet;

use crate::face::Face;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShellingOutcome {
    /// Indices into the facet list.
    Order(Vec<usize>),
    /// The search space was exhausted: not shellable.
    Exhausted { nodes: u64 },
    BudgetExceeded { nodes: u64 },
}

/// Whether `facet` may follow the facets in `earlier`.
///
/// `⟨F⟩ ∩ ⟨earlier⟩` is pure of codimension one in `F` iff every `F ∩ G`
/// sits inside some `F \ {v}` already covered by an earlier facet.
pub(crate) fn extends(facet: Face, earlier: impl Iterator<Item = Face> + Clone) -> bool {
    let mut covered = Face::EMPTY;
    let mut any = false;
    for g in earlier.clone() {
        any = true;
        let d = facet.difference(g);
        if d.len() == 1 {
            covered = covered.union(d);
        }
    }
    if !any {
        return true;
    }
    earlier.into_iter().all(|g| !facet.difference(g).is_disjoint(covered))
}

/// Replays an order; returns the position of the first offending facet.
pub fn verify_order(facets: &[Face], order: &[usize]) -> Result<(), usize> {
    let mut seen = vec![false; facets.len()];
    for (pos, &i) in order.iter().enumerate() {
        if i >= facets.len() || seen[i] {
            return Err(pos);
        }
        if !extends(facets[i], order[..pos].iter().map(|&j| facets[j])) {
            return Err(pos);
        }
        seen[i] = true;
    }
    if order.len() != facets.len() {
        return Err(order.len());
    }
    Ok(())
}

struct Search<'a> {
    facets: &'a [Face],
    budget: u64,
    nodes: u64,
    chosen: Vec<usize>,
    used: Vec<u64>,
    dead: HashSet<Vec<u64>>,
}

enum Step {
    Found,
    Failed,
    OutOfBudget,
}

impl Search<'_> {
    fn run(&mut self) -> Step {
        if self.chosen.len() == self.facets.len() {
            return Step::Found;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::OutOfBudget;
        }
        if self.dead.contains(&self.used) {
            return Step::Failed;
        }
        for i in 0..self.facets.len() {
            if self.used[i / 64] >> (i % 64) & 1 == 1 {
                continue;
            }
            let facets = self.facets;
            if !extends(facets[i], self.chosen.iter().map(|&j| facets[j])) {
                continue;
            }
            self.chosen.push(i);
            self.used[i / 64] |= 1 << (i % 64);
            match self.run() {
                Step::Found => return Step::Found,
                Step::OutOfBudget => return Step::OutOfBudget,
                Step::Failed => {}
            }
            self.chosen.pop();
            self.used[i / 64] &= !(1 << (i % 64));
        }
        self.dead.insert(self.used.clone());
        Step::Failed
    }
}

/// Searches facet orders in canonical order, memoizing dead prefixes by their
/// facet sets (validity of the next facet only depends on the set before it).
pub fn find_shelling(facets: &[Face], budget: u64) -> ShellingOutcome {
    let mut s = Search {
        facets,
        budget,
        nodes: 0,
        chosen: Vec::with_capacity(facets.len()),
        used: vec![0; facets.len().div_ceil(64).max(1)],
        dead: HashSet::new(),
    };
    match s.run() {
        Step::Found => ShellingOutcome::Order(s.chosen),
        Step::Failed => ShellingOutcome::Exhausted { nodes: s.nodes },
        Step::OutOfBudget => ShellingOutcome::BudgetExceeded { nodes: s.nodes },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn faces(fs: &[&[usize]]) -> Vec<Face> {
        fs.iter().map(|f| Face::from_indices(f.iter().copied())).collect()
    }

    #[test]
    fn four_cycle_order_is_a_shelling() {
        // a=0 b=1 c=2 d=3; order ad, dc, cb, ba
        let f = faces(&[&[0, 3], &[2, 3], &[1, 2], &[0, 1]]);
        assert_eq!(verify_order(&f, &[0, 1, 2, 3]), Ok(()));
        // ad, cb are disjoint: not a valid second step
        assert_eq!(verify_order(&f, &[0, 2, 1, 3]), Err(1));
        assert!(matches!(find_shelling(&f, 1000), ShellingOutcome::Order(_)));
    }

    #[test]
    fn bowtie_is_not_shellable() {
        let f = faces(&[&[0, 1, 2], &[2, 3, 4]]);
        assert!(matches!(
            find_shelling(&f, 1000),
            ShellingOutcome::Exhausted { .. }
        ));
    }

    #[test]
    fn points_and_simplex() {
        let f = faces(&[&[0], &[1], &[2]]);
        assert!(matches!(find_shelling(&f, 1000), ShellingOutcome::Order(_)));
        let f = faces(&[&[0, 1, 2, 3]]);
        assert_eq!(find_shelling(&f, 10), ShellingOutcome::Order(vec![0]));
        let f = vec![Face::EMPTY];
        assert_eq!(find_shelling(&f, 10), ShellingOutcome::Order(vec![0]));
    }

    #[test]
    fn budget_is_respected() {
        // two disjoint triangles: exhaustive search needs more than one node
        let f = faces(&[&[0, 1, 2], &[3, 4, 5], &[0, 1, 6]]);
        assert!(matches!(
            find_shelling(&f, 1),
            ShellingOutcome::BudgetExceeded { .. }
        ));
    }
}
