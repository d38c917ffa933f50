//! Reduced simplicial homology through the augmented chain complex.

use std::collections::HashMap;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::{self, Face};

use super::linalg::{self, SparseRow};
use super::report::{BettiVector, Field};

/// Reduced Betti numbers of `complex` over `field`, dimensions `-1..=dim`.
pub fn reduced_homology(complex: &SimplicialComplex, field: Field) -> Result<BettiVector> {
    if complex.is_void() {
        return Err(Error::domain("homology of the void complex"));
    }
    Ok(betti_of_facets(complex.facets(), field))
}

/// Same as [`reduced_homology`] on a raw nonempty facet list.
pub(crate) fn betti_of_facets(facets: &[Face], field: Field) -> BettiVector {
    debug_assert!(!facets.is_empty());
    let top = facets.iter().map(|f| f.len()).max().unwrap_or(0);
    // by_size[k] holds the faces with k vertices (dimension k - 1).
    let mut by_size: Vec<Vec<Face>> = vec![Vec::new(); top + 1];
    for f in face::all_faces(facets) {
        by_size[f.len()].push(f);
    }
    // rank[k] = rank of the boundary map out of faces with k vertices.
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        let index: HashMap<Face, usize> = by_size[k - 1]
            .iter()
            .enumerate()
            .map(|(i, f)| (*f, i))
            .collect();
        let rows: Vec<SparseRow> = by_size[k]
            .iter()
            .map(|f| {
                f.iter()
                    .enumerate()
                    .map(|(pos, v)| {
                        let sign = if pos % 2 == 0 { 1 } else { -1 };
                        (index[&f.without(v)], sign)
                    })
                    .collect()
            })
            .collect();
        ranks[k] = linalg::rank(&rows, by_size[k - 1].len(), field);
    }
    let values = (0..=top)
        .map(|k| (by_size[k].len() - ranks[k] - ranks[k + 1]) as u64)
        .collect();
    BettiVector { field, values }
}
