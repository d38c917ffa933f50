//! Brute-force oracles over plain bitmasks. Nothing here calls into the
//! library's algorithms; they work from the definitions by enumeration.

#![allow(dead_code)]

use std::collections::BTreeSet;

use indball::{Face, SimplicialComplex};

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

pub fn complex(n: usize, faces: &[u64]) -> SimplicialComplex {
    SimplicialComplex::from_masks(labels(n), faces.iter().map(|&f| Face(f)).collect())
}

pub fn masks(c: &SimplicialComplex) -> Vec<u64> {
    c.facets().iter().map(|f| f.0).collect()
}

pub fn label_sets(c: &SimplicialComplex) -> BTreeSet<BTreeSet<String>> {
    c.facet_label_sets()
}

fn subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

pub fn popcount(a: u64) -> usize {
    a.count_ones() as usize
}

pub fn maximal(sets: impl IntoIterator<Item = u64>) -> BTreeSet<u64> {
    let all: BTreeSet<u64> = sets.into_iter().collect();
    all.iter()
        .copied()
        .filter(|&s| !all.iter().any(|&t| t != s && subset(s, t)))
        .collect()
}

pub fn minimal(sets: impl IntoIterator<Item = u64>) -> BTreeSet<u64> {
    let all: BTreeSet<u64> = sets.into_iter().collect();
    all.iter()
        .copied()
        .filter(|&s| !all.iter().any(|&t| t != s && subset(t, s)))
        .collect()
}

/// Every face of the complex generated by `facets`.
pub fn faces(facets: &[u64]) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for &f in facets {
        // walk all submasks of f
        let mut s = f;
        loop {
            out.insert(s);
            if s == 0 {
                break;
            }
            s = (s - 1) & f;
        }
    }
    out
}

pub fn is_face(facets: &[u64], s: u64) -> bool {
    facets.iter().any(|&f| subset(s, f))
}

/// Facets of Ind: maximal subsets of `0..n` containing no facet.
pub fn independence_facets(n: usize, facets: &[u64]) -> BTreeSet<u64> {
    maximal((0u64..1 << n).filter(|&s| facets.iter().all(|&f| !subset(f, s))))
}

/// Minimal subsets of `0..n` that are not faces.
pub fn minimal_nonfaces(n: usize, facets: &[u64]) -> BTreeSet<u64> {
    minimal((0u64..1 << n).filter(|&s| !is_face(facets, s)))
}

pub fn link(facets: &[u64], f: u64) -> BTreeSet<u64> {
    maximal(faces(facets).into_iter().filter(|&g| g & f == 0 && is_face(facets, g | f)))
}

pub fn deletion(facets: &[u64], f: u64) -> BTreeSet<u64> {
    maximal(faces(facets).into_iter().filter(|&g| g & f == 0))
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..rows.len()).find(|&r| rows[r][c] % p != 0) else {
            continue;
        };
        rows.swap(rank, r);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let k = rows[r][c];
                for j in 0..cols {
                    rows[r][j] = (rows[r][j] + p * p - k * rows[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Reduced Betti numbers over GF(p) of the complex generated by `facets`,
/// indexed by face size (index `k` is dimension `k - 1`). Uses the augmented
/// chain complex with the usual alternating signs.
pub fn betti_mod_p(facets: &[u64], p: u64) -> Vec<u64> {
    let all = faces(facets);
    let top = all.iter().map(|&f| popcount(f)).max().unwrap_or(0);
    let by_size: Vec<Vec<u64>> = (0..=top + 1)
        .map(|k| all.iter().copied().filter(|&f| popcount(f) == k).collect())
        .collect();
    // rank of the boundary from size k to size k-1
    let boundary_rank = |k: usize| -> usize {
        if k == 0 || k > top {
            return 0;
        }
        let lower = &by_size[k - 1];
        let rows: Vec<Vec<u64>> = by_size[k]
            .iter()
            .map(|&f| {
                let mut row = vec![0u64; lower.len()];
                for (pos, v) in (0..64).filter(|&v| f >> v & 1 == 1).enumerate() {
                    let g = f & !(1 << v);
                    let j = lower.iter().position(|&h| h == g).unwrap();
                    row[j] = if pos % 2 == 0 { 1 } else { p - 1 };
                }
                row
            })
            .collect();
        rank_mod_p(rows, p)
    };
    (0..=top)
        .map(|k| (by_size[k].len() - boundary_rank(k) - boundary_rank(k + 1)) as u64)
        .collect()
}

/// `None` if not a pseudomanifold; otherwise whether it has boundary.
pub fn pseudomanifold(facets: &[u64]) -> Option<bool> {
    let d = popcount(facets[0]);
    if facets.iter().any(|&f| popcount(f) != d) {
        return None;
    }
    let ridges: BTreeSet<u64> = faces(facets).into_iter().filter(|&r| popcount(r) + 1 == d).collect();
    let mut boundary = false;
    for &r in &ridges {
        match facets.iter().filter(|&&f| subset(r, f)).count() {
            1 => boundary = true,
            2 => {}
            _ => return None,
        }
    }
    strongly_connected(facets).then_some(boundary)
}

pub fn strongly_connected(facets: &[u64]) -> bool {
    let mut seen = vec![false; facets.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..facets.len() {
            if !seen[j] && popcount(facets[i] & facets[j]) + 1 == popcount(facets[i]) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Every later facet meets the earlier ones in a pure codimension-one complex.
fn is_shelling(order: &[u64]) -> bool {
    (1..order.len()).all(|k| {
        let f = order[k];
        maximal(order[..k].iter().map(|&g| g & f))
            .into_iter()
            .all(|m| popcount(m) + 1 == popcount(f))
    })
}

fn permutations(items: &mut Vec<u64>, k: usize, found: &mut bool) {
    if *found {
        return;
    }
    if k == items.len() {
        *found = is_shelling(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, found);
        items.swap(k, i);
    }
}

/// Tries every ordering of the facets.
pub fn shellable(facets: &[u64]) -> bool {
    let mut items = facets.to_vec();
    let mut found = false;
    permutations(&mut items, 0, &mut found);
    found
}

/// Vertex decomposability straight from the recursive definition.
pub fn vertex_decomposable(facets: &BTreeSet<u64>) -> bool {
    if facets.len() <= 1 {
        return true;
    }
    let support = facets.iter().fold(0, |a, &f| a | f);
    (0..64).filter(|&v| support >> v & 1 == 1).any(|v| {
        let bit = 1u64 << v;
        let fs: Vec<u64> = facets.iter().copied().collect();
        let del = deletion(&fs, bit);
        let lk = link(&fs, bit);
        // shedding: every facet of the deletion is a facet of the complex
        del.iter().all(|g| facets.contains(g)) && vertex_decomposable(&lk) && vertex_decomposable(&del)
    })
}

/// Reisner's criterion over GF(p): every link has vanishing reduced
/// homology below its dimension.
pub fn cohen_macaulay(facets: &[u64], p: u64) -> bool {
    faces(facets).into_iter().all(|f| {
        let lk: Vec<u64> = link(facets, f).into_iter().collect();
        let b = betti_mod_p(&lk, p);
        let top = lk.iter().map(|&g| popcount(g)).max().unwrap_or(0);
        b.iter().take(top).all(|&x| x == 0)
    })
}

/// Every link has exactly one reduced homology class, in its top dimension.
pub fn homology_sphere(facets: &[u64], p: u64) -> bool {
    faces(facets).into_iter().all(|f| {
        let lk: Vec<u64> = link(facets, f).into_iter().collect();
        let b = betti_mod_p(&lk, p);
        let top = lk.iter().map(|&g| popcount(g)).max().unwrap_or(0);
        let d = popcount(lk[0]);
        lk.iter().all(|&g| popcount(g) == d)
            && b.iter().enumerate().all(|(k, &x)| x == u64::from(k == top))
    })
}

/// Independent sets of a graph on `n` vertices, maximal ones only.
pub fn maximal_independent_sets(n: usize, edges: &[(usize, usize)]) -> BTreeSet<u64> {
    let edge_masks: Vec<u64> = edges.iter().map(|&(a, b)| 1 << a | 1 << b).collect();
    independence_facets(n, &edge_masks)
}
