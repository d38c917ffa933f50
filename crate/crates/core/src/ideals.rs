//! Monomial ideals, their facet and Stanley-Reisner complexes, and polarization.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::complex::{check_labels, SimplicialComplex};
use crate::error::{Error, Result};
use crate::face::{self, Face, MAX_VERTICES};

/// Exponent vector over the variables of its ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Variables with positive exponent.
    pub fn support(&self) -> Face {
        Face::from_indices(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, _)| i),
        )
    }

    /// `Some(i)` when the monomial is a pure power of variable `i`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut it = self.0.iter().enumerate().filter(|(_, &e)| e > 0);
        let (i, _) = it.next()?;
        it.next().is_none().then_some(i)
    }

    fn canonical_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }

    pub fn render(&self, variables: &[String]) -> String {
        if self.is_unit() {
            return "1".into();
        }
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    variables[i].clone()
                } else {
                    format!("{}^{}", variables[i], e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A monomial ideal held by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    variables: Vec<String>,
    generators: Vec<Monomial>,
}

/// Which polarized variables replace each original variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolarizationMap {
    pub blocks: Vec<(String, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization {
    pub polarized: MonomialIdeal,
    pub map: PolarizationMap,
}

/// `{x_1^{a_1}, ..., x_n^{a_n}} ∪ A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinianDecomposition {
    pub pure_powers: Vec<u32>,
    pub extra: Vec<Monomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealProfile {
    pub is_squarefree: bool,
    pub artinian: Option<ArtinianDecomposition>,
    pub is_complete_intersection: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexIdeals {
    pub facet_ideal: MonomialIdeal,
    pub sr_ideal: MonomialIdeal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealComplexes {
    pub facet_complex: SimplicialComplex,
    pub sr_complex: SimplicialComplex,
}

impl MonomialIdeal {
    /// Minimalizes `generators` and puts them in canonical order
    /// (total degree, then exponent vector descending).
    pub fn new(variables: Vec<String>, generators: Vec<Vec<u32>>) -> Result<Self> {
        check_labels(&variables, "/variables", usize::MAX)?;
        for (i, g) in generators.iter().enumerate() {
            if g.len() != variables.len() {
                return Err(Error::input(
                    format!("/generators/{i}"),
                    format!(
                        "exponent vector has {} entries for {} variables",
                        g.len(),
                        variables.len()
                    ),
                ));
            }
        }
        Ok(Self::from_monomials(
            variables,
            generators.into_iter().map(Monomial).collect(),
        ))
    }

    pub(crate) fn from_monomials(variables: Vec<String>, mut gens: Vec<Monomial>) -> Self {
        gens.sort_by(|a, b| a.canonical_cmp(b));
        gens.dedup();
        let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
        // Degree order guarantees every divisor of g is seen before g.
        for g in gens {
            if !kept.iter().any(|k| k.divides(&g)) {
                kept.push(g);
            }
        }
        MonomialIdeal {
            variables,
            generators: kept,
        }
    }

    /// Generators given as `(variable, exponent)` lists.
    pub fn from_labelled<S: AsRef<str>>(
        variables: Vec<String>,
        generators: &[Vec<(S, u32)>],
    ) -> Result<Self> {
        let index = check_labels(&variables, "/variables", usize::MAX)?;
        let mut gens = Vec::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            let mut e = vec![0u32; variables.len()];
            for (name, exp) in g {
                let name = name.as_ref();
                let v = *index.get(name).ok_or_else(|| {
                    Error::input(
                        format!("/generators/{i}/{name}"),
                        format!("undeclared variable {name:?}"),
                    )
                })?;
                e[v] += exp;
            }
            gens.push(e);
        }
        Self::new(variables, gens)
    }

    /// Parses `"x^2, x*y, y^2"`. Without explicit variables they are taken in
    /// order of first appearance.
    pub fn parse(expr: &str, variables: Option<Vec<String>>) -> Result<Self> {
        let mut vars: Vec<String> = variables.clone().unwrap_or_default();
        let fixed = variables.is_some();
        let mut gens: Vec<Vec<(String, u32)>> = Vec::new();
        for (i, term) in expr.split(',').enumerate() {
            let term = term.trim();
            if term.is_empty() {
                if expr.trim().is_empty() {
                    break;
                }
                return Err(Error::input(format!("/{i}"), "empty generator"));
            }
            let mut factors = Vec::new();
            if term != "1" {
                for factor in term.split('*') {
                    let factor = factor.trim();
                    let (name, exp) = match factor.split_once('^') {
                        Some((n, e)) => {
                            let e: u32 = e.trim().parse().map_err(|_| {
                                Error::input(format!("/{i}"), format!("bad exponent in {factor:?}"))
                            })?;
                            (n.trim(), e)
                        }
                        None => (factor, 1),
                    };
                    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || "()+-^*".contains(c)) {
                        return Err(Error::input(format!("/{i}"), format!("bad variable in {factor:?}")));
                    }
                    if !vars.iter().any(|v| v == name) {
                        if fixed {
                            return Err(Error::input(
                                format!("/{i}"),
                                format!("undeclared variable {name:?}"),
                            ));
                        }
                        vars.push(name.to_string());
                    }
                    factors.push((name.to_string(), exp));
                }
            }
            gens.push(factors);
        }
        Self::from_labelled(vars, &gens)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.is_unit())
    }

    pub fn is_squarefree(&self) -> bool {
        self.generators.iter().all(|g| g.is_squarefree())
    }

    pub fn render(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|g| g.render(&self.variables))
            .collect()
    }

    /// Generator supports as label sets; comparison helper that ignores variable order.
    pub fn generator_label_sets(&self) -> std::collections::BTreeSet<Vec<(String, u32)>> {
        self.generators
            .iter()
            .map(|g| {
                let mut v: Vec<(String, u32)> = g
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (self.variables[i].clone(), e))
                    .collect();
                v.sort();
                v
            })
            .collect()
    }

    fn require_proper(&self, op: &str) -> Result<()> {
        if self.is_zero() {
            return Err(Error::domain(format!("{op}: the zero ideal is not supported")));
        }
        if self.is_unit() {
            return Err(Error::domain(format!("{op}: the unit ideal is not supported")));
        }
        Ok(())
    }

    /// Square-free generators as faces; errors name the first offender.
    fn squarefree_faces(&self, op: &str) -> Result<Vec<Face>> {
        if self.variables.len() > MAX_VERTICES {
            return Err(Error::domain(format!(
                "{op}: {} variables exceed the limit of {MAX_VERTICES}",
                self.variables.len()
            )));
        }
        self.generators
            .iter()
            .map(|g| {
                if g.is_squarefree() {
                    Ok(g.support())
                } else {
                    Err(Error::domain(format!(
                        "{op}: generator {} is not square-free",
                        g.render(&self.variables)
                    )))
                }
            })
            .collect()
    }

    /// Facet complex and Stanley-Reisner complex of a square-free ideal.
    pub fn to_complexes(&self) -> Result<IdealComplexes> {
        self.require_proper("ideal_to_complexes")?;
        let faces = self.squarefree_faces("ideal_to_complexes")?;
        let facet_complex = SimplicialComplex::from_masks(self.variables.clone(), faces);
        let sr_complex = facet_complex.independence_complex()?;
        Ok(IdealComplexes {
            facet_complex,
            sr_complex,
        })
    }

    /// `P(I)`: each `x_i^a` becomes `x_{i,1} ⋯ x_{i,a}`.
    pub fn polarize(&self) -> Result<Polarization> {
        self.require_proper("polarize")?;
        let n = self.variables.len();
        let block_len: Vec<u32> = (0..n)
            .map(|i| self.generators.iter().map(|g| g.0[i]).max().unwrap_or(0))
            .collect();
        let mut offset = vec![0usize; n];
        let mut new_vars = Vec::new();
        let mut blocks = Vec::new();
        for i in 0..n {
            offset[i] = new_vars.len();
            if block_len[i] == 0 {
                continue;
            }
            let names: Vec<String> = (1..=block_len[i])
                .map(|j| format!("{}#{}", self.variables[i], j))
                .collect();
            new_vars.extend(names.iter().cloned());
            blocks.push((self.variables[i].clone(), names));
        }
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let mut e = vec![0u32; new_vars.len()];
                for i in 0..n {
                    for j in 0..g.0[i] as usize {
                        e[offset[i] + j] = 1;
                    }
                }
                Monomial(e)
            })
            .collect();
        let polarized = MonomialIdeal::from_monomials(new_vars, gens);
        Ok(Polarization {
            polarized,
            map: PolarizationMap { blocks },
        })
    }

    pub fn profile(&self) -> Result<IdealProfile> {
        self.require_proper("ideal_profile")?;
        let n = self.variables.len();
        let mut pure = vec![0u32; n];
        let mut extra = Vec::new();
        for g in &self.generators {
            match g.pure_power_of() {
                Some(i) => pure[i] = g.0[i],
                None => extra.push(g.clone()),
            }
        }
        let artinian = pure.iter().all(|&a| a > 0).then(|| ArtinianDecomposition {
            pure_powers: pure,
            extra,
        });
        let mut seen = Face::EMPTY;
        let mut disjoint = true;
        for g in &self.generators {
            let s = g.support();
            if !s.is_disjoint(seen) {
                disjoint = false;
                break;
            }
            seen = seen.union(s);
        }
        Ok(IdealProfile {
            is_squarefree: self.is_squarefree(),
            artinian,
            is_complete_intersection: disjoint,
        })
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.render().join(", "))
    }
}

fn squarefree_ideal(variables: &[String], faces: Vec<Face>) -> MonomialIdeal {
    let n = variables.len();
    let gens = faces
        .into_iter()
        .map(|f| {
            let mut e = vec![0u32; n];
            for v in f.iter() {
                e[v] = 1;
            }
            Monomial(e)
        })
        .collect();
    MonomialIdeal::from_monomials(variables.to_vec(), gens)
}

/// Facet ideal `F(Δ)` and Stanley-Reisner ideal `N(Δ)` (minimal nonfaces).
pub fn complex_to_ideals(complex: &SimplicialComplex) -> Result<ComplexIdeals> {
    if complex.is_void() {
        return Err(Error::domain("ideals of the void complex"));
    }
    let facet_ideal = squarefree_ideal(complex.vertices(), complex.facets().to_vec());
    let ground = complex.ground();
    let complements: Vec<Face> = complex
        .facets()
        .iter()
        .map(|f| ground.difference(*f))
        .collect();
    let nonfaces = face::minimal_transversals(ground, &complements);
    let sr_ideal = squarefree_ideal(complex.vertices(), nonfaces);
    Ok(ComplexIdeals {
        facet_ideal,
        sr_ideal,
    })
}

/// Shorthand for `complex_to_ideals(..).sr_ideal`.
pub fn stanley_reisner_ideal(complex: &SimplicialComplex) -> Result<MonomialIdeal> {
    Ok(complex_to_ideals(complex)?.sr_ideal)
}
