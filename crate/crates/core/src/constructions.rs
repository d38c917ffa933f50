//! Whiskering, grafting recognition, coloured whiskering and generalized
//! Bier complexes.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::checks::LabelledFace;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::{Face, MAX_VERTICES};
use crate::graphs::Graph;
use crate::ideals::MonomialIdeal;

pub const DEFAULT_FRESH_PREFIX: &str = "y#";

fn fresh_labels(existing: &[String], prefix: &str, count: usize) -> Result<Vec<String>> {
    let labels: Vec<String> = (1..=count).map(|i| format!("{prefix}{i}")).collect();
    if let Some((i, l)) = existing
        .iter()
        .enumerate()
        .find(|(_, l)| labels.contains(l))
    {
        return Err(Error::input(
            format!("/vertices/{i}"),
            format!("label {l:?} collides with a generated vertex"),
        ));
    }
    if existing.len() + count > MAX_VERTICES {
        return Err(Error::domain(format!(
            "{} vertices after adding {count} new ones exceed the limit of {MAX_VERTICES}",
            existing.len() + count
        )));
    }
    Ok(labels)
}

/// `w(G)`: a pendant vertex `y#i` attached to every vertex `x_i`.
pub fn whisker_graph(g: &Graph) -> Result<Graph> {
    whisker_graph_with_prefix(g, DEFAULT_FRESH_PREFIX)
}

pub fn whisker_graph_with_prefix(g: &Graph, prefix: &str) -> Result<Graph> {
    let d = g.num_vertices();
    let ys = fresh_labels(g.vertices(), prefix, d)?;
    let mut vertices = g.vertices().to_vec();
    vertices.extend(ys);
    let mut edges = g.edges().to_vec();
    edges.extend((0..d).map(|i| (i, d + i)));
    Ok(Graph::from_indexed(vertices, edges))
}

/// An ordered partition of a complex's vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Colouring {
    pub parts: Vec<Vec<String>>,
}

impl Colouring {
    pub fn new(parts: Vec<Vec<String>>) -> Self {
        Colouring { parts }
    }

    /// One part per vertex, in vertex order.
    pub fn singletons(c: &SimplicialComplex) -> Self {
        Colouring {
            parts: c.vertices().iter().map(|v| vec![v.clone()]).collect(),
        }
    }

    pub fn is_singletons(&self) -> bool {
        self.parts.iter().all(|p| p.len() == 1)
    }

    /// Resolves the parts to masks, checking that they partition the vertex
    /// set and that no facet meets a part twice.
    pub fn resolve(&self, c: &SimplicialComplex) -> Result<Vec<Face>> {
        let mut seen = Face::EMPTY;
        let mut masks = Vec::with_capacity(self.parts.len());
        for (i, part) in self.parts.iter().enumerate() {
            let mut m = Face::EMPTY;
            for (j, l) in part.iter().enumerate() {
                let v = c.index_of(l).ok_or_else(|| {
                    Error::input(format!("/parts/{i}/{j}"), format!("unknown vertex {l:?}"))
                })?;
                if seen.contains(v) {
                    return Err(Error::input(
                        format!("/parts/{i}/{j}"),
                        format!("vertex {l:?} appears in two parts"),
                    ));
                }
                seen = seen.with(v);
                m = m.with(v);
            }
            masks.push(m);
        }
        let missing = c.ground().difference(seen);
        if !missing.is_empty() {
            return Err(Error::input(
                "/parts",
                format!("vertices {:?} are in no part", c.labels(missing)),
            ));
        }
        for (i, m) in masks.iter().enumerate() {
            if let Some(f) = c.facets().iter().find(|f| f.intersection(*m).len() > 1) {
                return Err(Error::domain(format!(
                    "not a colouring: part {i} {:?} meets facet {:?} in more than one vertex",
                    c.labels(*m),
                    c.labels(*f)
                )));
            }
        }
        Ok(masks)
    }
}

/// `Δ_χ = ⟨F ∪ Y_F : F ∈ Δ⟩` with `Y_F` the new vertices of the parts `F` misses.
pub fn coloured_whisker(c: &SimplicialComplex, chi: &Colouring) -> Result<SimplicialComplex> {
    coloured_whisker_with_prefix(c, chi, DEFAULT_FRESH_PREFIX)
}

pub fn coloured_whisker_with_prefix(
    c: &SimplicialComplex,
    chi: &Colouring,
    prefix: &str,
) -> Result<SimplicialComplex> {
    if c.is_void() {
        return Err(Error::domain("coloured whiskering of the void complex"));
    }
    let parts = chi.resolve(c)?;
    let n = c.num_vertices();
    let ys = fresh_labels(c.vertices(), prefix, parts.len())?;
    let generators = c
        .faces()
        .into_iter()
        .map(|f| {
            parts
                .iter()
                .enumerate()
                .filter(|(_, p)| p.is_disjoint(f))
                .fold(f, |acc, (j, _)| acc.with(n + j))
        })
        .collect();
    let mut vertices = c.vertices().to_vec();
    vertices.extend(ys);
    Ok(SimplicialComplex::from_masks(vertices, generators))
}

/// Leaves of the complex and, for each, its first joint in canonical order
/// (`None` when it is the only facet).
pub(crate) fn leaves(facets: &[Face]) -> Vec<(usize, Option<usize>)> {
    if facets.len() == 1 {
        return vec![(0, None)];
    }
    (0..facets.len())
        .filter_map(|i| joint_of(facets, i).map(|j| (i, Some(j))))
        .collect()
}

fn joint_of(facets: &[Face], i: usize) -> Option<usize> {
    let f = facets[i];
    let meet = facets
        .iter()
        .enumerate()
        .filter(|(h, _)| *h != i)
        .fold(Face::EMPTY, |acc, (_, h)| acc.union(f.intersection(*h)));
    (0..facets.len()).find(|&g| g != i && meet.is_subset(facets[g]))
}

fn is_joint(facets: &[Face], leaves: &[usize], g: usize) -> bool {
    leaves.iter().any(|&i| {
        let f = facets[i];
        let meet = facets
            .iter()
            .enumerate()
            .filter(|(h, _)| *h != i)
            .fold(Face::EMPTY, |acc, (_, h)| acc.union(f.intersection(*h)));
        meet.is_subset(facets[g])
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JointEntry {
    pub leaf: LabelledFace,
    /// `None` when the leaf is the only facet.
    pub joint: Option<LabelledFace>,
}

/// One subcomplex visited by the recursion: the joints removed so far and
/// the leaves found there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraftStep {
    pub removed: Vec<LabelledFace>,
    pub leaves: Vec<LabelledFace>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraftCertificate {
    pub leaves: Vec<LabelledFace>,
    pub joints: Vec<JointEntry>,
    /// The removed-joint sets explored, root first.
    pub trace: Vec<GraftStep>,
}

/// Conditions (1)-(4) at one level: leaves pairwise disjoint and covering
/// every vertex of the non-leaf facets. Returns the leaf indices and the
/// non-leaf facets that are joints.
fn graft_level(facets: &[Face]) -> Option<(Vec<usize>, Vec<usize>)> {
    let leaves: Vec<usize> = leaves(facets).into_iter().map(|(i, _)| i).collect();
    let mut covered = Face::EMPTY;
    for &i in &leaves {
        if !covered.is_disjoint(facets[i]) {
            return None;
        }
        covered = covered.union(facets[i]);
    }
    let rest: Vec<usize> = (0..facets.len()).filter(|i| !leaves.contains(i)).collect();
    if !rest.iter().all(|&g| facets[g].is_subset(covered)) {
        return None;
    }
    let joints = rest
        .into_iter()
        .filter(|&g| is_joint(facets, &leaves, g))
        .collect();
    Some((leaves, joints))
}

struct GraftSearch<'a> {
    facets: &'a [Face],
    memo: HashMap<BTreeSet<usize>, bool>,
    order: Vec<BTreeSet<usize>>,
}

impl GraftSearch<'_> {
    fn current(&self, removed: &BTreeSet<usize>) -> (Vec<usize>, Vec<Face>) {
        let idx: Vec<usize> = (0..self.facets.len())
            .filter(|i| !removed.contains(i))
            .collect();
        let fs = idx.iter().map(|&i| self.facets[i]).collect();
        (idx, fs)
    }

    fn grafted(&mut self, removed: BTreeSet<usize>) -> bool {
        if let Some(&hit) = self.memo.get(&removed) {
            return hit;
        }
        self.memo.insert(removed.clone(), false);
        self.order.push(removed.clone());
        let (idx, fs) = self.current(&removed);
        let ok = match graft_level(&fs) {
            None => false,
            Some((_, joints)) => joints.into_iter().all(|g| {
                let mut next = removed.clone();
                next.insert(idx[g]);
                self.grafted(next)
            }),
        };
        self.memo.insert(removed, ok);
        ok
    }
}

/// Decides whether the complex is grafted.
///
/// The leaves are forced, so the only search is over joint removals; each
/// removed-joint set is checked once.
pub fn is_grafted(c: &SimplicialComplex) -> Result<Option<GraftCertificate>> {
    if c.is_void() {
        return Err(Error::domain("is_grafted: the void complex is not supported"));
    }
    if !c.isolated_vertices().is_empty() {
        return Err(Error::domain(format!(
            "is_grafted: isolated vertices {:?} are not allowed",
            c.isolated_vertices()
        )));
    }
    let facets = c.facets();
    let mut s = GraftSearch {
        facets,
        memo: HashMap::new(),
        order: Vec::new(),
    };
    if !s.grafted(BTreeSet::new()) {
        return Ok(None);
    }
    let root = leaves(facets);
    let trace = s
        .order
        .iter()
        .map(|removed| {
            let (idx, fs) = s.current(removed);
            GraftStep {
                removed: removed.iter().map(|&i| c.labels(facets[i])).collect(),
                leaves: leaves(&fs)
                    .into_iter()
                    .map(|(i, _)| c.labels(facets[idx[i]]))
                    .collect(),
            }
        })
        .collect();
    Ok(Some(GraftCertificate {
        leaves: root.iter().map(|(i, _)| c.labels(facets[*i])).collect(),
        joints: root
            .iter()
            .map(|(i, j)| JointEntry {
                leaf: c.labels(facets[*i]),
                joint: j.map(|j| c.labels(facets[j])),
            })
            .collect(),
        trace,
    }))
}

impl GraftCertificate {
    /// Re-checks every step: the recorded leaves are exactly the leaves,
    /// the level conditions hold, and every joint removal has its own step.
    pub fn replay(&self, c: &SimplicialComplex) -> bool {
        let to_face = |l: &LabelledFace| c.face_from_labels(l).ok();
        let facets = c.facets();
        let mut steps: HashMap<BTreeSet<Face>, &GraftStep> = HashMap::new();
        for step in &self.trace {
            let Some(removed) = step.removed.iter().map(to_face).collect::<Option<BTreeSet<Face>>>() else {
                return false;
            };
            steps.insert(removed, step);
        }
        if !steps.contains_key(&BTreeSet::new()) {
            return false;
        }
        let root_leaves: Option<Vec<Face>> = self.leaves.iter().map(to_face).collect();
        if root_leaves.as_deref()
            != Some(&leaves(facets).iter().map(|(i, _)| facets[*i]).collect::<Vec<_>>())
        {
            return false;
        }
        steps.iter().all(|(removed, step)| {
            let fs: Vec<Face> = facets.iter().copied().filter(|f| !removed.contains(f)).collect();
            let Some((ls, joints)) = graft_level(&fs) else {
                return false;
            };
            let recorded: Option<Vec<Face>> = step.leaves.iter().map(to_face).collect();
            recorded == Some(ls.iter().map(|&i| fs[i]).collect())
                && joints.iter().all(|&g| {
                    let mut next = removed.clone();
                    next.insert(fs[g]);
                    steps.contains_key(&next)
                })
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BierType {
    Sphere,
    Ball,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BierOutput {
    pub complex: SimplicialComplex,
    pub polarized: MonomialIdeal,
    pub predicted_dim: i32,
    pub predicted_type: BierType,
}

/// Stanley-Reisner complex of the polarization of an artinian ideal.
pub fn bier(ideal: &MonomialIdeal) -> Result<BierOutput> {
    let profile = ideal.profile()?;
    let Some(art) = profile.artinian else {
        return Err(Error::domain(
            "bier: the ideal is not artinian (some variable has no pure power among the generators)",
        ));
    };
    let polarized = ideal.polarize()?.polarized;
    let complex = polarized.to_complexes()?.sr_complex;
    let total: u32 = art.pure_powers.iter().sum();
    Ok(BierOutput {
        complex,
        polarized,
        predicted_dim: total as i32 - art.pure_powers.len() as i32 - 1,
        predicted_type: if art.extra.is_empty() {
            BierType::Sphere
        } else {
            BierType::Ball
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(vs: &[&str], fs: &[&[&str]]) -> SimplicialComplex {
        let fs: Vec<Vec<&str>> = fs.iter().map(|f| f.to_vec()).collect();
        SimplicialComplex::build(vs, &fs).unwrap()
    }

    fn parts(ps: &[&[&str]]) -> Colouring {
        Colouring::new(ps.iter().map(|p| p.iter().map(|s| s.to_string()).collect()).collect())
    }

    /// Faces of `Δ_χ` straight from the definition: `F ∪ G` with `G ⊆ Y_F`.
    fn coloured_faces_oracle(c: &SimplicialComplex, masks: &[Face]) -> BTreeSet<Face> {
        let n = c.num_vertices();
        let mut out = BTreeSet::new();
        for f in c.faces() {
            let y = masks
                .iter()
                .enumerate()
                .filter(|(_, p)| p.is_disjoint(f))
                .fold(Face::EMPTY, |acc, (j, _)| acc.with(n + j));
            for g in y.subsets() {
                out.insert(f.union(g));
            }
        }
        out
    }

    #[test]
    fn coloured_whisker_matches_definition() {
        let c = complex(&["a", "b", "c", "d"], &[&["a", "b", "c"], &["c", "d"]]);
        for chi in [parts(&[&["a", "d"], &["b"], &["c"]]), Colouring::singletons(&c)] {
            let masks = chi.resolve(&c).unwrap();
            let w = coloured_whisker(&c, &chi).unwrap();
            let faces: BTreeSet<Face> = w.faces().into_iter().collect();
            assert_eq!(faces, coloured_faces_oracle(&c, &masks));
            assert!(w.is_pure());
            assert_eq!(w.dim(), Some(chi.parts.len() as i32 - 1));
        }
    }

    #[test]
    fn invalid_colourings() {
        let c = complex(&["a", "b", "c"], &[&["a", "b"], &["c"]]);
        assert!(matches!(
            coloured_whisker(&c, &parts(&[&["a", "b"], &["c"]])),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            coloured_whisker(&c, &parts(&[&["a"], &["b"]])),
            Err(Error::Input { .. })
        ));
        assert!(matches!(
            coloured_whisker(&c, &parts(&[&["a"], &["a", "b"], &["c"]])),
            Err(Error::Input { .. })
        ));
        let clash = complex(&["a", "y#1"], &[&["a"], &["y#1"]]);
        assert!(matches!(
            coloured_whisker(&clash, &Colouring::singletons(&clash)),
            Err(Error::Input { .. })
        ));
    }

    #[test]
    fn empty_face_complex_whiskers_to_simplex() {
        let c = SimplicialComplex::from_masks(vec![], vec![Face::EMPTY]);
        let w = coloured_whisker(&c, &parts(&[&[], &[]])).unwrap();
        assert_eq!(w.facet_labels(), vec![vec!["y#1".to_string(), "y#2".to_string()]]);
    }

    #[test]
    fn whiskering() {
        let g = Graph::build(&["x"], &[] as &[(&str, &str)]).unwrap();
        let w = whisker_graph(&g).unwrap();
        assert!(w.is_dk2());
        let g = Graph::build(&["a", "b", "c"], &[("a", "b")]).unwrap();
        let w = whisker_graph(&g).unwrap();
        assert_eq!(w.edges().len(), 4);
        assert!(w.is_very_well_covered() && w.is_whiskered());
    }

    #[test]
    fn grafting_basics() {
        let two = complex(&["a", "b", "c", "d"], &[&["a", "b"], &["c", "d"]]);
        let cert = is_grafted(&two).unwrap().unwrap();
        assert_eq!(cert.leaves.len(), 2);
        assert!(cert.replay(&two));
        let path = complex(&["a", "b", "c"], &[&["a", "b"], &["b", "c"]]);
        assert!(is_grafted(&path).unwrap().is_none());
        let hollow = complex(&["a", "b", "c"], &[&["a", "b"], &["b", "c"], &["a", "c"]]);
        assert!(is_grafted(&hollow).unwrap().is_none());
        // whiskered path a-b with whiskers
        let w = complex(
            &["a", "b", "p", "q"],
            &[&["a", "b"], &["a", "p"], &["b", "q"]],
        );
        let cert = is_grafted(&w).unwrap().unwrap();
        assert!(cert.replay(&w));
        assert_eq!(cert.trace.len(), 2);
    }

    #[test]
    fn bier_examples() {
        let b = bier(&MonomialIdeal::parse("x^2, x*y, y^2", None).unwrap()).unwrap();
        assert_eq!(b.predicted_dim, 1);
        assert_eq!(b.predicted_type, BierType::Ball);
        assert_eq!(b.complex.facets().len(), 3);
        let b = bier(&MonomialIdeal::parse("x^2, y^2, z^2", None).unwrap()).unwrap();
        assert_eq!(b.predicted_type, BierType::Sphere);
        assert_eq!(b.complex.facets().len(), 8);
        assert!(bier(&MonomialIdeal::parse("x^2, x*y", None).unwrap()).is_err());
    }
}
