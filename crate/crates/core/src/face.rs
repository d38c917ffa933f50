//! Faces as fixed-width vertex-index sets, plus the set-system routines that
//! every other module builds on.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

/// Hard upper bound on the number of vertices of any carrier object.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex indices, stored as a bitmask over the carrier's vertex order.
///
/// The ordering is the canonical one used everywhere in the crate: first by
/// size, then lexicographically by the ascending index sequence.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(pub u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn singleton(v: usize) -> Face {
        debug_assert!(v < MAX_VERTICES);
        Face(1u64 << v)
    }

    /// All indices `0..n`.
    pub fn full(n: usize) -> Face {
        if n >= 64 {
            Face(u64::MAX)
        } else {
            Face((1u64 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Face {
        Face(indices.into_iter().fold(0u64, |m, i| m | (1u64 << i)))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `|F| - 1`; the empty face has dimension -1.
    #[inline]
    pub fn dim(self) -> i32 {
        self.len() as i32 - 1
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    #[inline]
    pub fn is_disjoint(self, other: Face) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn with(self, v: usize) -> Face {
        Face(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Face {
        Face(self.0 & !(1u64 << v))
    }

    /// Smallest index in the face.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Ascending vertex indices.
    pub fn iter(self) -> FaceIter {
        FaceIter(self.0)
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset of this face, the empty set included.
    pub fn subsets(self) -> SubsetIter {
        SubsetIter {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // For equal-size sets the lowest index of the symmetric difference
        // decides the lexicographic comparison of the sorted sequences.
        if self.0 & (diff & diff.wrapping_neg()) != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct FaceIter(u64);

impl Iterator for FaceIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

pub struct SubsetIter {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for SubsetIter {
    type Item = Face;

    fn next(&mut self) -> Option<Face> {
        let cur = self.next?;
        // Standard submask walk: (s - mask) & mask enumerates upward.
        let nxt = cur.wrapping_sub(self.mask) & self.mask;
        self.next = (nxt != 0).then_some(nxt);
        Some(Face(cur))
    }
}

/// Removes duplicates and inclusion-dominated sets, returning the maximal
/// ones in canonical order.
pub fn maximalize(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_unstable_by(|a, b| b.cmp(a));
    faces.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
    for f in faces {
        if !kept.iter().any(|k| f.is_subset(*k)) {
            kept.push(f);
        }
    }
    kept.sort_unstable();
    kept
}

/// Removes duplicates and supersets, returning the minimal sets in canonical order.
pub fn minimalize(mut sets: Vec<Face>) -> Vec<Face> {
    sets.sort_unstable();
    sets.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept
}

/// All faces of the complex generated by `facets`, in canonical order.
pub fn all_faces(facets: &[Face]) -> Vec<Face> {
    let mut seen: HashSet<Face> = HashSet::new();
    for f in facets {
        for s in f.subsets() {
            seen.insert(s);
        }
    }
    let mut out: Vec<Face> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// Whether `face` lies in the complex generated by `facets`.
pub fn is_face(facets: &[Face], face: Face) -> bool {
    facets.iter().any(|f| face.is_subset(*f))
}

pub fn union_of(facets: &[Face]) -> Face {
    facets.iter().fold(Face::EMPTY, |acc, f| acc.union(*f))
}

/// Facets of `link(face)`, in the same index space.
pub fn link_facets(facets: &[Face], face: Face) -> Vec<Face> {
    maximalize(
        facets
            .iter()
            .filter(|f| face.is_subset(**f))
            .map(|f| f.difference(face))
            .collect(),
    )
}

/// Facets of `del(face)` = faces disjoint from `face`.
pub fn deletion_facets(facets: &[Face], face: Face) -> Vec<Face> {
    maximalize(facets.iter().map(|f| f.difference(face)).collect())
}

/// Maximal subsets of `ground` containing none of `edges`.
///
/// Branches on vertices in ascending order. A vertex is only left out when
/// some edge through it can still be completed by the chosen set, which is
/// exactly what maximality needs at the leaves.
pub fn maximal_independent_sets(ground: Face, edges: &[Face]) -> Vec<Face> {
    let edges = minimalize(edges.iter().copied().filter(|e| e.is_subset(ground)).collect());
    if edges.iter().any(|e| e.is_empty()) {
        return Vec::new();
    }
    let order: Vec<usize> = ground.iter().collect();
    let mut by_vertex: Vec<Vec<Face>> = vec![Vec::new(); MAX_VERTICES];
    for e in &edges {
        for v in e.iter() {
            by_vertex[v].push(*e);
        }
    }
    let mut out = Vec::new();
    let mut search = MisSearch {
        order: &order,
        by_vertex: &by_vertex,
        out: &mut out,
    };
    search.run(0, Face::EMPTY, Face::EMPTY);
    out.sort_unstable();
    out
}

struct MisSearch<'a> {
    order: &'a [usize],
    by_vertex: &'a [Vec<Face>],
    out: &'a mut Vec<Face>,
}

impl MisSearch<'_> {
    fn contains_edge(&self, set: Face, v: usize) -> bool {
        self.by_vertex[v].iter().any(|e| e.is_subset(set))
    }

    /// Every excluded vertex needs an edge it could still complete.
    fn excluded_feasible(&self, excluded: Face) -> bool {
        excluded.iter().all(|u| {
            self.by_vertex[u]
                .iter()
                .any(|e| e.without(u).is_disjoint(excluded))
        })
    }

    fn run(&mut self, pos: usize, chosen: Face, excluded: Face) {
        if pos == self.order.len() {
            let maximal = excluded
                .iter()
                .all(|u| self.contains_edge(chosen.with(u), u));
            if maximal {
                self.out.push(chosen);
            }
            return;
        }
        let v = self.order[pos];
        let with_v = chosen.with(v);
        if !self.contains_edge(with_v, v) {
            self.run(pos + 1, with_v, excluded);
        }
        let ex = excluded.with(v);
        if !self.by_vertex[v].is_empty() && self.excluded_feasible(ex) {
            self.run(pos + 1, chosen, ex);
        }
    }
}

/// Minimal subsets of `ground` meeting every set in `sets`.
pub fn minimal_transversals(ground: Face, sets: &[Face]) -> Vec<Face> {
    // T is a transversal iff ground \ T contains no member of `sets`.
    let mut out: Vec<Face> = maximal_independent_sets(ground, sets)
        .into_iter()
        .map(|w| ground.difference(w))
        .collect();
    out.sort_unstable();
    out
}
