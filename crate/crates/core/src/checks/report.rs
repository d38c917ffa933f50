use std::fmt;
use std::time::Duration;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Coefficient field for homology: a prime field or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Prime(u64),
    Rationals,
}

impl Field {
    pub const GF2: Field = Field::Prime(2);

    /// `0` selects the rationals; anything else must be prime.
    pub fn from_characteristic(p: u64) -> Result<Field> {
        match p {
            0 => Ok(Field::Rationals),
            p if p < (1 << 32) && is_prime(p) => Ok(Field::Prime(p)),
            p if p >= (1 << 32) => Err(Error::input(
                "/field",
                format!("characteristic {p} is too large (limit 2^32)"),
            )),
            p => Err(Error::input("/field", format!("{p} is not prime"))),
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Prime(p) => p,
            Field::Rationals => 0,
        }
    }
}

impl Default for Field {
    fn default() -> Self {
        Field::GF2
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "GF({p})"),
            Field::Rationals => write!(f, "Q"),
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.characteristic())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Shared knobs for the deciders.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub field: Field,
    /// Search-node budget for shelling and vertex decomposition.
    pub budget: u64,
}

pub const DEFAULT_BUDGET: u64 = 1_000_000;

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            field: Field::GF2,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    StronglyConnected,
    Pseudomanifold,
    Shellable,
    VertexDecomposable,
    CohenMacaulay,
    HomologySphere,
    Gorenstein,
}

impl Property {
    pub fn parse(s: &str) -> Option<Property> {
        Some(match s {
            "sc" => Property::StronglyConnected,
            "pm" => Property::Pseudomanifold,
            "shellable" => Property::Shellable,
            "vd" => Property::VertexDecomposable,
            "cm" => Property::CohenMacaulay,
            "hsphere" => Property::HomologySphere,
            "gorenstein" => Property::Gorenstein,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Cost {
    pub nodes: u64,
    /// Omitted from serialized output unless explicitly recorded, so that
    /// reports stay byte-stable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

/// Vertex labels of a face.
pub type LabelledFace = Vec<String>;

/// Reduced Betti numbers indexed from dimension -1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiVector {
    pub field: Field,
    /// `values[i]` is the reduced Betti number in dimension `i - 1`.
    pub values: Vec<u64>,
}

impl BettiVector {
    /// Reduced Betti number in dimension `i` (zero outside the stored range).
    pub fn get(&self, i: i32) -> u64 {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.values.get(k).copied())
            .unwrap_or(0)
    }

    /// `Σ (-1)^i β̃_i` over `i ≥ -1`.
    pub fn reduced_euler(&self) -> i64 {
        alternating_sum(&self.values)
    }

    /// The identity `Σ(-1)^i β̃_i = Σ(-1)^i f_i`, both sums from `i = -1`.
    pub fn satisfies_euler(&self, f_vector: &[u64]) -> bool {
        self.reduced_euler() == alternating_sum(f_vector)
    }
}

/// Sum with sign `(-1)^(k-1)` on index `k`, i.e. indexing from dimension -1.
pub(crate) fn alternating_sum(values: &[u64]) -> i64 {
    values
        .iter()
        .enumerate()
        .map(|(k, &v)| if k % 2 == 0 { -(v as i64) } else { v as i64 })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VdCertificate {
    Simplex {
        facet: LabelledFace,
    },
    Shed {
        vertex: String,
        link: Box<VdCertificate>,
        deletion: Box<VdCertificate>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SheddingFailure {
    NotShedding,
    LinkNotDecomposable,
    DeletionNotDecomposable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SheddingAttempt {
    pub vertex: String,
    pub failure: SheddingFailure,
}

/// Certificate or witness attached to a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Breadth-first spanning tree of the facet-adjacency graph.
    FacetTree {
        facets: Vec<LabelledFace>,
        parents: Vec<Option<usize>>,
    },
    Disconnected {
        first: LabelledFace,
        second: LabelledFace,
    },
    NotPure {
        first: LabelledFace,
        second: LabelledFace,
    },
    OverfullRidge {
        ridge: LabelledFace,
        facets: Vec<LabelledFace>,
    },
    Pseudomanifold {
        boundary: Vec<LabelledFace>,
    },
    ShellingOrder {
        order: Vec<LabelledFace>,
    },
    SearchExhausted {
        nodes: u64,
    },
    BudgetExhausted {
        nodes: u64,
    },
    Decomposition {
        tree: VdCertificate,
    },
    NoSheddingVertex {
        attempts: Vec<SheddingAttempt>,
    },
    /// Every link checked; re-running the check over `faces_checked` faces replays it.
    AllLinks {
        faces_checked: usize,
    },
    FailingLink {
        face: LabelledFace,
        link_dim: i32,
        betti: BettiVector,
    },
    Gorenstein {
        cone_vertices: Vec<String>,
        core_faces_checked: usize,
    },
    NotGorenstein {
        cone_vertices: Vec<String>,
        face: LabelledFace,
        link_dim: i32,
        betti: BettiVector,
    },
    /// Shortcut path: the associated square-free ideal has generators with
    /// pairwise disjoint supports.
    CompleteIntersection {
        class: String,
        generators: Vec<LabelledFace>,
    },
    NotCompleteIntersection {
        class: String,
        first: LabelledFace,
        second: LabelledFace,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub property: Property,
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub field: Field,
    pub budget: u64,
    pub cost: Cost,
}

impl CheckReport {
    pub(crate) fn new(
        property: Property,
        verdict: Verdict,
        certificate: Certificate,
        config: &CheckConfig,
        nodes: u64,
        elapsed: Duration,
    ) -> Self {
        CheckReport {
            property,
            verdict,
            certificate,
            field: config.field,
            budget: config.budget,
            cost: Cost {
                nodes,
                elapsed_ms: Some(elapsed.as_secs_f64() * 1e3),
            },
        }
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }

    pub fn is_no(&self) -> bool {
        self.verdict == Verdict::No
    }

    /// Drops timing so the serialized form depends only on the inputs.
    pub fn without_timing(mut self) -> Self {
        self.cost.elapsed_ms = None;
        self
    }
}
