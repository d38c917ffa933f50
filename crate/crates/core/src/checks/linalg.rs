//! Exact rank of sparse integer matrices over GF(2), GF(p) and Q.
//!
//! Every routine inserts rows into an echelon basis keyed by pivot column.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::report::Field;

/// A row as `(column, coefficient)` pairs with coefficients in `{-1, 1}` or
/// any small integer.
pub type SparseRow = Vec<(usize, i64)>;

pub fn rank(rows: &[SparseRow], cols: usize, field: Field) -> usize {
    match field {
        Field::Prime(2) => rank_gf2(rows, cols),
        Field::Prime(p) => rank_mod_p(rows, cols, p),
        Field::Rationals => rank_rational(rows, cols),
    }
}

pub fn rank_gf2(rows: &[SparseRow], cols: usize) -> usize {
    let words = cols.div_ceil(64);
    let mut basis: Vec<Option<Vec<u64>>> = vec![None; cols];
    let mut rank = 0;
    for row in rows {
        let mut bits = vec![0u64; words];
        for &(c, v) in row {
            if v.rem_euclid(2) == 1 {
                bits[c / 64] ^= 1 << (c % 64);
            }
        }
        loop {
            let Some(lead) = leading_bit(&bits) else { break };
            match &basis[lead] {
                Some(b) => {
                    for (x, y) in bits.iter_mut().zip(b) {
                        *x ^= y;
                    }
                }
                None => {
                    basis[lead] = Some(bits);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn leading_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// `p` must be prime and below 2^32.
pub fn rank_mod_p(rows: &[SparseRow], cols: usize, p: u64) -> usize {
    let mut basis: Vec<Option<Vec<u64>>> = vec![None; cols];
    let mut rank = 0;
    for row in rows {
        let mut dense = vec![0u64; cols];
        for &(c, v) in row {
            dense[c] = (dense[c] + v.rem_euclid(p as i64) as u64) % p;
        }
        let mut start = 0;
        while let Some(lead) = (start..cols).find(|&c| dense[c] != 0) {
            match &basis[lead] {
                Some(b) => {
                    let f = dense[lead];
                    for c in lead..cols {
                        if b[c] != 0 {
                            dense[c] = (dense[c] + p - f * b[c] % p) % p;
                        }
                    }
                    start = lead + 1;
                }
                None => {
                    let inv = pow_mod(dense[lead], p - 2, p);
                    for x in dense.iter_mut().skip(lead) {
                        *x = *x * inv % p;
                    }
                    basis[lead] = Some(dense);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

pub fn rank_rational(rows: &[SparseRow], cols: usize) -> usize {
    let mut basis: Vec<Option<Vec<BigRational>>> = vec![None; cols];
    let mut rank = 0;
    for row in rows {
        let mut dense = vec![BigRational::zero(); cols];
        for &(c, v) in row {
            dense[c] += BigRational::from_integer(BigInt::from(v));
        }
        let mut start = 0;
        while let Some(lead) = (start..cols).find(|&c| !dense[c].is_zero()) {
            match &basis[lead] {
                Some(b) => {
                    let f = dense[lead].clone();
                    for c in lead..cols {
                        if !b[c].is_zero() {
                            let d = &f * &b[c];
                            dense[c] -= d;
                        }
                    }
                    start = lead + 1;
                }
                None => {
                    let inv = BigRational::one() / dense[lead].clone();
                    for x in dense.iter_mut().skip(lead) {
                        *x = &*x * &inv;
                    }
                    basis[lead] = Some(dense);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}
