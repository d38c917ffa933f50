//! Simplicial complexes over a named, ordered vertex set.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::face::{self, Face, MAX_VERTICES};

/// A finite simplicial complex stored by its facets.
///
/// The vertex list is the carrier's ground set; a vertex that lies in no
/// facet is an isolated vertex of the carrier and is not a face. It still
/// counts as a ground element for independent sets and Stanley-Reisner
/// ideals. An empty facet list is the void complex; a single empty facet is
/// the complex `{∅}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<Face>,
}

/// Combinatorial summary of a nonvoid complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexProfile {
    pub dim: i32,
    pub is_pure: bool,
    /// `f_{-1}, f_0, ..., f_dim`.
    pub f_vector: Vec<u64>,
    pub unimodal_f: bool,
    pub cone_vertices: Vec<String>,
}

pub(crate) fn check_labels<S: AsRef<str>>(labels: &[S], pointer: &str, limit: usize) -> Result<HashMap<String, usize>> {
    let limit = limit.min(MAX_VERTICES);
    if labels.len() > limit {
        return Err(Error::input(
            pointer,
            format!("{} vertices exceed the limit of {}", labels.len(), limit),
        ));
    }
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        let l = l.as_ref();
        if l.is_empty() {
            return Err(Error::input(format!("{pointer}/{i}"), "empty vertex label"));
        }
        if index.insert(l.to_string(), i).is_some() {
            return Err(Error::input(
                format!("{pointer}/{i}"),
                format!("duplicate vertex label {l:?}"),
            ));
        }
    }
    Ok(index)
}

impl SimplicialComplex {
    /// Builds the canonical complex generated by `faces` over `vertices`.
    pub fn build<S: AsRef<str>, T: AsRef<str>>(vertices: &[S], faces: &[Vec<T>]) -> Result<Self> {
        Self::build_with_limit(vertices, faces, MAX_VERTICES)
    }

    pub fn build_with_limit<S: AsRef<str>, T: AsRef<str>>(
        vertices: &[S],
        faces: &[Vec<T>],
        max_vertices: usize,
    ) -> Result<Self> {
        let index = check_labels(vertices, "/vertices", max_vertices)?;
        let mut masks = Vec::with_capacity(faces.len());
        for (i, f) in faces.iter().enumerate() {
            let mut m = Face::EMPTY;
            for (j, l) in f.iter().enumerate() {
                let l = l.as_ref();
                let v = *index.get(l).ok_or_else(|| {
                    Error::input(
                        format!("/facets/{i}/{j}"),
                        format!("undeclared vertex {l:?}"),
                    )
                })?;
                m = m.with(v);
            }
            masks.push(m);
        }
        Ok(Self::from_masks(
            vertices.iter().map(|s| s.as_ref().to_string()).collect(),
            masks,
        ))
    }

    /// Canonicalizing constructor over already-indexed faces. Labels are
    /// assumed distinct and every face must lie within `0..vertices.len()`.
    pub fn from_masks(vertices: Vec<String>, faces: Vec<Face>) -> Self {
        debug_assert!(vertices.len() <= MAX_VERTICES);
        debug_assert!(faces
            .iter()
            .all(|f| f.is_subset(Face::full(vertices.len()))));
        SimplicialComplex {
            vertices,
            facets: face::maximalize(faces),
        }
    }

    /// The full simplex on the given labels.
    pub fn simplex<S: AsRef<str>>(vertices: &[S]) -> Result<Self> {
        let all: Vec<&str> = vertices.iter().map(|s| s.as_ref()).collect();
        Self::build(vertices, &[all])
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Ground set as a face over all declared vertices.
    pub fn ground(&self) -> Face {
        Face::full(self.vertices.len())
    }

    /// Vertices that are faces.
    pub fn support(&self) -> Face {
        face::union_of(&self.facets)
    }

    pub fn isolated_vertices(&self) -> Vec<String> {
        self.labels(self.ground().difference(self.support()))
    }

    /// `None` for the void complex.
    pub fn dim(&self) -> Option<i32> {
        self.facets.iter().map(|f| f.dim()).max()
    }

    pub fn is_pure(&self) -> bool {
        match self.facets.first() {
            None => true,
            Some(f) => self.facets.iter().all(|g| g.len() == f.len()),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn labels(&self, f: Face) -> Vec<String> {
        f.iter().map(|v| self.vertices[v].clone()).collect()
    }

    pub fn face_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Face> {
        let mut m = Face::EMPTY;
        for (j, l) in labels.iter().enumerate() {
            let l = l.as_ref();
            let v = self
                .index_of(l)
                .ok_or_else(|| Error::input(format!("/{j}"), format!("unknown vertex {l:?}")))?;
            m = m.with(v);
        }
        Ok(m)
    }

    pub fn contains_face(&self, f: Face) -> bool {
        face::is_face(&self.facets, f)
    }

    /// All faces, canonical order.
    pub fn faces(&self) -> Vec<Face> {
        face::all_faces(&self.facets)
    }

    /// Facets as label lists, canonical order.
    pub fn facet_labels(&self) -> Vec<Vec<String>> {
        self.facets.iter().map(|f| self.labels(*f)).collect()
    }

    /// Facets as label sets; handy for comparing complexes regardless of vertex order.
    pub fn facet_label_sets(&self) -> BTreeSet<BTreeSet<String>> {
        self.facets
            .iter()
            .map(|f| self.labels(*f).into_iter().collect())
            .collect()
    }

    /// Complex on the sub-ground-set `keep`, reindexed in the existing order.
    pub(crate) fn restricted(vertices: &[String], keep: Face, facets: &[Face]) -> Self {
        let kept: Vec<usize> = keep.iter().collect();
        let mut remap = [usize::MAX; MAX_VERTICES];
        for (new, &old) in kept.iter().enumerate() {
            remap[old] = new;
        }
        let labels = kept.iter().map(|&v| vertices[v].clone()).collect();
        let faces = facets
            .iter()
            .map(|f| Face::from_indices(f.iter().map(|v| remap[v])))
            .collect();
        Self::from_masks(labels, faces)
    }

    /// `link(F) = {G : G ∪ F ∈ Δ, G ∩ F = ∅}`, on the vertices it uses.
    pub fn link(&self, f: Face) -> Result<Self> {
        if !self.contains_face(f) {
            return Err(Error::domain(format!(
                "{:?} is not a face of the complex",
                self.labels(f)
            )));
        }
        let facets = face::link_facets(&self.facets, f);
        let keep = face::union_of(&facets);
        Ok(Self::restricted(&self.vertices, keep, &facets))
    }

    /// `del(F) = {G ∈ Δ : G ∩ F = ∅}`, on the ground set minus `F`.
    pub fn deletion(&self, f: Face) -> Self {
        let f = f.intersection(self.ground());
        let facets = if self.is_void() {
            Vec::new()
        } else {
            face::deletion_facets(&self.facets, f)
        };
        Self::restricted(&self.vertices, self.ground().difference(f), &facets)
    }

    /// `Ind(Δ)`: subsets of the ground set containing no facet.
    pub fn independence_complex(&self) -> Result<Self> {
        if self.is_void() {
            return Err(Error::domain("independence complex of the void complex"));
        }
        let facets = face::maximal_independent_sets(self.ground(), &self.facets);
        Ok(Self::from_masks(self.vertices.clone(), facets))
    }

    /// Vertices lying in every facet.
    pub fn cone_vertices(&self) -> Face {
        self.facets
            .iter()
            .fold(self.support(), |acc, f| acc.intersection(*f))
    }

    /// Face counts `f_{-1}, ..., f_dim`; empty for the void complex.
    pub fn f_vector(&self) -> Vec<u64> {
        let Some(d) = self.dim() else {
            return Vec::new();
        };
        let mut counts = vec![0u64; (d + 2) as usize];
        for f in self.faces() {
            counts[f.len()] += 1;
        }
        counts
    }

    pub fn profile(&self) -> Result<ComplexProfile> {
        let dim = self
            .dim()
            .ok_or_else(|| Error::domain("profile of the void complex"))?;
        let f_vector = self.f_vector();
        let unimodal_f = is_unimodal(&f_vector[1..]);
        Ok(ComplexProfile {
            dim,
            is_pure: self.is_pure(),
            f_vector,
            unimodal_f,
            cone_vertices: self.labels(self.cone_vertices()),
        })
    }
}

/// Non-strict rise then fall.
pub fn is_unimodal(seq: &[u64]) -> bool {
    let mut falling = false;
    for w in seq.windows(2) {
        if w[1] < w[0] {
            falling = true;
        } else if w[1] > w[0] && falling {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(c: &SimplicialComplex) -> Vec<String> {
        c.facet_labels().into_iter().map(|f| f.concat()).collect()
    }

    fn example() -> SimplicialComplex {
        SimplicialComplex::build(
            &["a", "b", "c", "d"],
            &[vec!["a", "b", "c"], vec!["c", "d"], vec!["a", "d"], vec!["a"]],
        )
        .unwrap()
    }

    #[test]
    fn build_absorbs_dominated_faces() {
        let c = example();
        assert_eq!(sets(&c), ["ad", "cd", "abc"]);
        assert_eq!(c.dim(), Some(2));
    }

    #[test]
    fn build_single_vertex_and_void() {
        let c = SimplicialComplex::build(&["a"], &[vec!["a"]]).unwrap();
        assert_eq!(c.facets().len(), 1);
        assert_eq!(c.dim(), Some(0));

        let void = SimplicialComplex::build::<_, &str>(&["a", "b"], &[]).unwrap();
        assert!(void.is_void());
        assert_eq!(void.dim(), None);
        assert_eq!(void.isolated_vertices(), ["a", "b"]);

        let empty_face = SimplicialComplex::build::<_, &str>(&["a"], &[vec![]]).unwrap();
        assert!(!empty_face.is_void());
        assert_eq!(empty_face.dim(), Some(-1));
        assert_ne!(void, empty_face);
    }

    #[test]
    fn build_rejects_bad_labels() {
        let dup = SimplicialComplex::build(&["a", "a"], &[vec!["a"]]);
        assert!(matches!(dup, Err(Error::Input { ref pointer, .. }) if pointer == "/vertices/1"));
        let undeclared = SimplicialComplex::build(&["a"], &[vec!["a"], vec!["z"]]);
        assert!(matches!(undeclared, Err(Error::Input { ref pointer, .. }) if pointer == "/facets/1/0"));
        let labels: Vec<String> = (0..5).map(|i| format!("v{i}")).collect();
        assert!(SimplicialComplex::build_with_limit::<_, &str>(&labels, &[], 4).is_err());
    }

    #[test]
    fn link_and_deletion() {
        let c = example();
        let d = c.face_from_labels(&["d"]).unwrap();
        let lk = c.link(d).unwrap();
        assert_eq!(sets(&lk), ["a", "c"]);
        assert_eq!(lk.vertices(), ["a", "c"]);

        let del = c.deletion(d);
        assert_eq!(sets(&del), ["abc"]);
        assert_eq!(del.vertices(), ["a", "b", "c"]);

        let simplex = SimplicialComplex::simplex(&["a", "b", "c"]).unwrap();
        assert_eq!(simplex.link(Face::EMPTY).unwrap(), simplex);

        let bd = c.face_from_labels(&["b", "d"]).unwrap();
        assert!(matches!(c.link(bd), Err(Error::Domain(_))));
    }

    #[test]
    fn independence_complex_examples() {
        assert_eq!(
            sets(&example().independence_complex().unwrap()),
            ["ab", "ac", "bc", "bd"]
        );
        let path = SimplicialComplex::build(
            &["a", "b", "c", "d"],
            &[vec!["a", "b"], vec!["b", "c"], vec!["c", "d"]],
        )
        .unwrap();
        assert_eq!(sets(&path.independence_complex().unwrap()), ["ac", "ad", "bd"]);
        let two_edges =
            SimplicialComplex::build(&["a", "b", "c", "d"], &[vec!["a", "b"], vec!["c", "d"]])
                .unwrap();
        assert_eq!(
            sets(&two_edges.independence_complex().unwrap()),
            ["ac", "ad", "bc", "bd"]
        );
        let point = SimplicialComplex::simplex(&["a"]).unwrap();
        let ind = point.independence_complex().unwrap();
        assert_eq!(ind.facets(), &[Face::EMPTY]);
    }

    #[test]
    fn isolated_vertex_is_in_every_independent_set() {
        let gamma = SimplicialComplex::build(
            &["x1", "x2", "x3", "x4"],
            &[vec!["x1", "x4"], vec!["x2", "x4"]],
        )
        .unwrap();
        assert_eq!(gamma.isolated_vertices(), ["x3"]);
        let ind = gamma.independence_complex().unwrap();
        assert_eq!(sets(&ind), ["x3x4", "x1x2x3"]);
    }

    #[test]
    fn profile_examples() {
        let p = example().profile().unwrap();
        assert_eq!(p.dim, 2);
        assert!(!p.is_pure);
        assert!(p.cone_vertices.is_empty());

        let p = SimplicialComplex::simplex(&["a", "b", "c"])
            .unwrap()
            .profile()
            .unwrap();
        assert_eq!(p.f_vector, vec![1, 3, 3, 1]);
        assert!(p.is_pure);
        assert_eq!(p.cone_vertices, ["a", "b", "c"]);
        assert!(p.unimodal_f);
    }

    #[test]
    fn unimodality() {
        assert!(is_unimodal(&[1, 3, 3, 1]));
        assert!(is_unimodal(&[4, 4, 2]));
        assert!(!is_unimodal(&[3, 1, 2]));
        assert!(is_unimodal(&[]));
    }
}
