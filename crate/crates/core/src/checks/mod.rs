//! Property deciders: strong connectivity, pseudomanifolds, shellability,
//! vertex decomposability, reduced homology, Reisner's criterion, homology
//! spheres, and ball/sphere recognition through shellable pseudomanifolds.

pub mod homology;
pub mod linalg;
pub mod report;
pub mod shelling;
pub mod vd;

use std::collections::{HashMap, VecDeque};
use std::time::Instant;

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::{self, Face};

pub use homology::reduced_homology;
pub use report::{
    BettiVector, Certificate, CheckConfig, CheckReport, Cost, Field, LabelledFace, Property,
    SheddingAttempt, SheddingFailure, VdCertificate, Verdict, DEFAULT_BUDGET,
};
use shelling::ShellingOutcome;
use vd::{VdOutcome, VdTree};

fn require_nonvoid(c: &SimplicialComplex, what: &str) -> Result<()> {
    if c.is_void() {
        Err(Error::domain(format!("{what}: the void complex is not supported")))
    } else {
        Ok(())
    }
}

fn require_pure(c: &SimplicialComplex, what: &str) -> Result<()> {
    require_nonvoid(c, what)?;
    if c.is_pure() {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} is only defined for pure complexes")))
    }
}

/// Facets adjacent when they share a codimension-one face. Breadth-first
/// from the first facet; `Err((i, j))` names facets in different components.
pub(crate) fn facet_tree(facets: &[Face]) -> std::result::Result<Vec<Option<usize>>, (usize, usize)> {
    let n = facets.len();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    if n > 0 {
        seen[0] = true;
    }
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if !seen[j] && facets[i].difference(facets[j]).len() == 1 {
                seen[j] = true;
                parent[j] = Some(i);
                queue.push_back(j);
            }
        }
    }
    match seen.iter().position(|s| !s) {
        Some(j) => Err((0, j)),
        None => Ok(parent),
    }
}

pub fn is_strongly_connected(c: &SimplicialComplex) -> Result<CheckReport> {
    is_strongly_connected_with(c, &CheckConfig::default())
}

pub fn is_strongly_connected_with(c: &SimplicialComplex, config: &CheckConfig) -> Result<CheckReport> {
    require_pure(c, "strong connectivity")?;
    let start = Instant::now();
    let facets = c.facets();
    let (verdict, cert) = match facet_tree(facets) {
        Ok(parents) => (
            Verdict::Yes,
            Certificate::FacetTree {
                facets: facets.iter().map(|f| c.labels(*f)).collect(),
                parents,
            },
        ),
        Err((i, j)) => (
            Verdict::No,
            Certificate::Disconnected {
                first: c.labels(facets[i]),
                second: c.labels(facets[j]),
            },
        ),
    };
    Ok(CheckReport::new(
        Property::StronglyConnected,
        verdict,
        cert,
        config,
        facets.len() as u64,
        start.elapsed(),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PmWitness {
    /// A codimension-one face in three or more facets.
    OverfullRidge {
        ridge: LabelledFace,
        facets: Vec<LabelledFace>,
    },
    Disconnected {
        first: LabelledFace,
        second: LabelledFace,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PseudomanifoldStatus {
    NotPure {
        first: LabelledFace,
        second: LabelledFace,
    },
    NotPseudomanifold {
        witness: PmWitness,
    },
    WithBoundary {
        boundary: Vec<LabelledFace>,
    },
    WithoutBoundary,
}

impl PseudomanifoldStatus {
    pub fn is_pseudomanifold(&self) -> bool {
        matches!(
            self,
            PseudomanifoldStatus::WithBoundary { .. } | PseudomanifoldStatus::WithoutBoundary
        )
    }

    pub fn has_boundary(&self) -> bool {
        matches!(self, PseudomanifoldStatus::WithBoundary { .. })
    }
}

pub(crate) enum PmMasks {
    NotPure(Face, Face),
    Overfull(Face, Vec<Face>),
    Disconnected(Face, Face),
    Pm { boundary: Vec<Face> },
}

pub(crate) fn pseudomanifold_masks(facets: &[Face]) -> PmMasks {
    let first = facets[0];
    if let Some(other) = facets.iter().find(|f| f.len() != first.len()) {
        return PmMasks::NotPure(first, *other);
    }
    let mut count: HashMap<Face, usize> = HashMap::new();
    for f in facets {
        for v in f.iter() {
            *count.entry(f.without(v)).or_insert(0) += 1;
        }
    }
    let mut ridges: Vec<(Face, usize)> = count.into_iter().collect();
    ridges.sort_unstable();
    if let Some((r, _)) = ridges.iter().rev().find(|(_, k)| *k > 2) {
        let containing = facets.iter().copied().filter(|f| r.is_subset(*f)).collect();
        return PmMasks::Overfull(*r, containing);
    }
    if let Err((i, j)) = facet_tree(facets) {
        return PmMasks::Disconnected(facets[i], facets[j]);
    }
    PmMasks::Pm {
        boundary: ridges
            .into_iter()
            .filter(|(_, k)| *k == 1)
            .map(|(r, _)| r)
            .collect(),
    }
}

pub fn pseudomanifold_status(c: &SimplicialComplex) -> Result<PseudomanifoldStatus> {
    require_nonvoid(c, "pseudomanifold check")?;
    let l = |f: Face| c.labels(f);
    Ok(match pseudomanifold_masks(c.facets()) {
        PmMasks::NotPure(a, b) => PseudomanifoldStatus::NotPure {
            first: l(a),
            second: l(b),
        },
        PmMasks::Overfull(r, fs) => PseudomanifoldStatus::NotPseudomanifold {
            witness: PmWitness::OverfullRidge {
                ridge: l(r),
                facets: fs.into_iter().map(l).collect(),
            },
        },
        PmMasks::Disconnected(a, b) => PseudomanifoldStatus::NotPseudomanifold {
            witness: PmWitness::Disconnected {
                first: l(a),
                second: l(b),
            },
        },
        PmMasks::Pm { boundary } if boundary.is_empty() => PseudomanifoldStatus::WithoutBoundary,
        PmMasks::Pm { boundary } => PseudomanifoldStatus::WithBoundary {
            boundary: boundary.into_iter().map(l).collect(),
        },
    })
}

/// [`pseudomanifold_status`] wrapped as a report.
pub fn pseudomanifold_report(c: &SimplicialComplex, config: &CheckConfig) -> Result<CheckReport> {
    let start = Instant::now();
    let status = pseudomanifold_status(c)?;
    let (verdict, cert) = match status {
        PseudomanifoldStatus::NotPure { first, second } => {
            (Verdict::No, Certificate::NotPure { first, second })
        }
        PseudomanifoldStatus::NotPseudomanifold { witness } => (
            Verdict::No,
            match witness {
                PmWitness::OverfullRidge { ridge, facets } => {
                    Certificate::OverfullRidge { ridge, facets }
                }
                PmWitness::Disconnected { first, second } => {
                    Certificate::Disconnected { first, second }
                }
            },
        ),
        PseudomanifoldStatus::WithBoundary { boundary } => {
            (Verdict::Yes, Certificate::Pseudomanifold { boundary })
        }
        PseudomanifoldStatus::WithoutBoundary => (
            Verdict::Yes,
            Certificate::Pseudomanifold {
                boundary: Vec::new(),
            },
        ),
    };
    Ok(CheckReport::new(
        Property::Pseudomanifold,
        verdict,
        cert,
        config,
        c.facets().len() as u64,
        start.elapsed(),
    ))
}

pub fn shelling(c: &SimplicialComplex, config: &CheckConfig) -> Result<CheckReport> {
    require_pure(c, "shellability")?;
    let start = Instant::now();
    let facets = c.facets();
    let (verdict, cert, nodes) = match shelling::find_shelling(facets, config.budget) {
        ShellingOutcome::Order(order) => (
            Verdict::Yes,
            Certificate::ShellingOrder {
                order: order.iter().map(|&i| c.labels(facets[i])).collect(),
            },
            order.len() as u64,
        ),
        ShellingOutcome::Exhausted { nodes } => {
            (Verdict::No, Certificate::SearchExhausted { nodes }, nodes)
        }
        ShellingOutcome::BudgetExceeded { nodes } => {
            (Verdict::Unknown, Certificate::BudgetExhausted { nodes }, nodes)
        }
    };
    Ok(CheckReport::new(
        Property::Shellable,
        verdict,
        cert,
        config,
        nodes,
        start.elapsed(),
    ))
}

fn vd_certificate(c: &SimplicialComplex, tree: &VdTree) -> VdCertificate {
    match tree {
        VdTree::Simplex(f) => VdCertificate::Simplex { facet: c.labels(*f) },
        VdTree::Shed {
            vertex,
            link,
            deletion,
        } => VdCertificate::Shed {
            vertex: c.label(*vertex).to_string(),
            link: Box::new(vd_certificate(c, link)),
            deletion: Box::new(vd_certificate(c, deletion)),
        },
    }
}

pub fn vertex_decomposition(c: &SimplicialComplex, config: &CheckConfig) -> Result<CheckReport> {
    require_nonvoid(c, "vertex decomposition")?;
    let start = Instant::now();
    let (outcome, nodes) = vd::decompose(c.facets(), config.budget);
    let (verdict, cert) = match outcome {
        VdOutcome::Decomposable(tree) => (
            Verdict::Yes,
            Certificate::Decomposition {
                tree: vd_certificate(c, &tree),
            },
        ),
        VdOutcome::NotDecomposable(attempts) => (
            Verdict::No,
            Certificate::NoSheddingVertex {
                attempts: attempts
                    .into_iter()
                    .map(|(v, failure)| SheddingAttempt {
                        vertex: c.label(v).to_string(),
                        failure,
                    })
                    .collect(),
            },
        ),
        VdOutcome::BudgetExceeded => (Verdict::Unknown, Certificate::BudgetExhausted { nodes }),
    };
    Ok(CheckReport::new(
        Property::VertexDecomposable,
        verdict,
        cert,
        config,
        nodes,
        start.elapsed(),
    ))
}

/// Replays a labelled shelling order against the complex.
pub fn replay_shelling(c: &SimplicialComplex, order: &[LabelledFace]) -> bool {
    let facets = c.facets();
    let idx: Option<Vec<usize>> = order
        .iter()
        .map(|l| {
            let f = c.face_from_labels(l).ok()?;
            facets.iter().position(|g| *g == f)
        })
        .collect();
    idx.is_some_and(|o| shelling::verify_order(facets, &o).is_ok())
}

/// Replays a vertex decomposition certificate against the complex.
pub fn replay_decomposition(c: &SimplicialComplex, cert: &VdCertificate) -> bool {
    fn go(c: &SimplicialComplex, facets: &[Face], cert: &VdCertificate) -> bool {
        match cert {
            VdCertificate::Simplex { facet } => {
                c.face_from_labels(facet).ok().map(|f| vec![f]).as_deref() == Some(facets)
            }
            VdCertificate::Shed {
                vertex,
                link,
                deletion,
            } => {
                let Some(v) = c.index_of(vertex) else {
                    return false;
                };
                let vf = Face::singleton(v);
                facets.len() > 1
                    && vd::is_shedding(facets, v)
                    && go(c, &face::link_facets(facets, vf), link)
                    && go(c, &face::deletion_facets(facets, vf), deletion)
            }
        }
    }
    !c.is_void() && go(c, c.facets(), cert)
}

/// First face whose link fails `accept`, with the link's dimension and Betti
/// vector; `Ok(n)` reports how many faces were checked. Faces are visited in
/// reverse canonical order so the witness is as local as possible.
pub(crate) fn scan_links(
    facets: &[Face],
    field: Field,
    accept: impl Fn(i32, &BettiVector) -> bool,
) -> std::result::Result<usize, (Face, i32, BettiVector)> {
    let faces = face::all_faces(facets);
    for f in faces.iter().rev() {
        let link = face::link_facets(facets, *f);
        let dim = link.iter().map(|g| g.dim()).max().unwrap_or(-1);
        let betti = homology::betti_of_facets(&link, field);
        if !accept(dim, &betti) {
            return Err((*f, dim, betti));
        }
    }
    Ok(faces.len())
}

pub(crate) fn cm_accepts(dim: i32, betti: &BettiVector) -> bool {
    (-1..dim).all(|i| betti.get(i) == 0)
}

pub(crate) fn sphere_accepts(dim: i32, betti: &BettiVector) -> bool {
    (-1..=dim).all(|i| betti.get(i) == u64::from(i == dim))
}

fn link_report(
    c: &SimplicialComplex,
    config: &CheckConfig,
    property: Property,
    accept: impl Fn(i32, &BettiVector) -> bool,
) -> Result<CheckReport> {
    require_nonvoid(c, "link homology check")?;
    let start = Instant::now();
    let (verdict, cert, nodes) = match scan_links(c.facets(), config.field, accept) {
        Ok(n) => (Verdict::Yes, Certificate::AllLinks { faces_checked: n }, n as u64),
        Err((f, link_dim, betti)) => (
            Verdict::No,
            Certificate::FailingLink {
                face: c.labels(f),
                link_dim,
                betti,
            },
            0,
        ),
    };
    Ok(CheckReport::new(property, verdict, cert, config, nodes, start.elapsed()))
}

/// Reisner's criterion: `H̃_i(link F) = 0` for `i < dim link F`, every face `F`.
pub fn reisner_cm(c: &SimplicialComplex, config: &CheckConfig) -> Result<CheckReport> {
    link_report(c, config, Property::CohenMacaulay, cm_accepts)
}

/// Every link has reduced homology exactly one copy of the field in its top dimension.
pub fn homology_sphere(c: &SimplicialComplex, config: &CheckConfig) -> Result<CheckReport> {
    link_report(c, config, Property::HomologySphere, sphere_accepts)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type")]
pub enum Topology {
    Sphere {
        shelling: Vec<LabelledFace>,
    },
    Ball {
        shelling: Vec<LabelledFace>,
        boundary: Vec<LabelledFace>,
    },
    NotPseudomanifold {
        status: PseudomanifoldStatus,
    },
    /// A pseudomanifold for which no shelling was found within budget.
    PseudomanifoldUnknown {
        has_boundary: bool,
        nodes: u64,
    },
}

impl Topology {
    pub fn name(&self) -> &'static str {
        match self {
            Topology::Sphere { .. } => "Sphere",
            Topology::Ball { .. } => "Ball",
            Topology::NotPseudomanifold { .. } => "NotPseudomanifold",
            Topology::PseudomanifoldUnknown { .. } => "PseudomanifoldUnknown",
        }
    }
}

/// Finds a shelling by backtracking, falling back to the order read off a
/// vertex decomposition. Every returned order has been replayed.
pub(crate) fn shelling_order(facets: &[Face], budget: u64) -> (Option<Vec<usize>>, u64) {
    let mut nodes = 0;
    match shelling::find_shelling(facets, budget) {
        ShellingOutcome::Order(order) => {
            let n = order.len() as u64;
            return (Some(order), n);
        }
        ShellingOutcome::Exhausted { nodes: n } => return (None, n),
        ShellingOutcome::BudgetExceeded { nodes: n } => nodes += n,
    }
    let (outcome, n) = vd::decompose(facets, budget);
    nodes += n;
    if let VdOutcome::Decomposable(tree) = outcome {
        let order: Option<Vec<usize>> = tree
            .facet_order()
            .iter()
            .map(|g| facets.iter().position(|h| h == g))
            .collect();
        if let Some(order) = order {
            if shelling::verify_order(facets, &order).is_ok() {
                return (Some(order), nodes);
            }
        }
    }
    (None, nodes)
}

/// Sphere or ball when the complex is a shellable pseudomanifold, without or
/// with boundary respectively.
pub fn classify_topology(c: &SimplicialComplex, config: &CheckConfig) -> Result<Topology> {
    let status = pseudomanifold_status(c)?;
    let boundary = match &status {
        PseudomanifoldStatus::WithBoundary { boundary } => boundary.clone(),
        PseudomanifoldStatus::WithoutBoundary => Vec::new(),
        _ => return Ok(Topology::NotPseudomanifold { status }),
    };
    let facets = c.facets();
    match shelling_order(facets, config.budget) {
        (Some(order), _) => {
            let shelling = order.iter().map(|&i| c.labels(facets[i])).collect();
            Ok(if boundary.is_empty() {
                Topology::Sphere { shelling }
            } else {
                Topology::Ball { shelling, boundary }
            })
        }
        (None, nodes) => Ok(Topology::PseudomanifoldUnknown {
            has_boundary: !boundary.is_empty(),
            nodes,
        }),
    }
}

/// Runs one named property check.
pub fn check(c: &SimplicialComplex, property: Property, config: &CheckConfig) -> Result<CheckReport> {
    match property {
        Property::StronglyConnected => is_strongly_connected_with(c, config),
        Property::Pseudomanifold => pseudomanifold_report(c, config),
        Property::Shellable => shelling(c, config),
        Property::VertexDecomposable => vertex_decomposition(c, config),
        Property::CohenMacaulay => reisner_cm(c, config),
        Property::HomologySphere => homology_sphere(c, config),
        Property::Gorenstein => crate::graphs::gorenstein_classify(
            crate::graphs::GorensteinInput::Complex(c),
            config,
            false,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(vs: &[&str], fs: &[&[&str]]) -> SimplicialComplex {
        let fs: Vec<Vec<&str>> = fs.iter().map(|f| f.to_vec()).collect();
        SimplicialComplex::build(vs, &fs).unwrap()
    }

    fn four_cycle() -> SimplicialComplex {
        complex(
            &["a", "b", "c", "d"],
            &[&["a", "c"], &["a", "d"], &["b", "c"], &["b", "d"]],
        )
    }

    fn path_ball() -> SimplicialComplex {
        complex(&["a", "b", "c", "d"], &[&["a", "c"], &["a", "d"], &["b", "d"]])
    }

    fn cfg() -> CheckConfig {
        CheckConfig::default()
    }

    #[test]
    fn strong_connectivity() {
        assert!(is_strongly_connected(&four_cycle()).unwrap().is_yes());
        let two = complex(&["a", "b", "c", "d"], &[&["a", "b"], &["c", "d"]]);
        let r = is_strongly_connected(&two).unwrap();
        assert!(r.is_no());
        assert_eq!(
            r.certificate,
            Certificate::Disconnected {
                first: vec!["a".into(), "b".into()],
                second: vec!["c".into(), "d".into()],
            }
        );
        let ind = complex(
            &["a", "b", "c", "d"],
            &[&["a", "b"], &["b", "c"], &["a", "c"], &["b", "d"]],
        );
        assert!(is_strongly_connected(&ind).unwrap().is_yes());
        let mixed = complex(&["a", "b", "c"], &[&["a", "b"], &["c"]]);
        assert!(matches!(is_strongly_connected(&mixed), Err(Error::Domain(_))));
    }

    #[test]
    fn pseudomanifold_examples() {
        assert_eq!(
            pseudomanifold_status(&four_cycle()).unwrap(),
            PseudomanifoldStatus::WithoutBoundary
        );
        assert_eq!(
            pseudomanifold_status(&path_ball()).unwrap(),
            PseudomanifoldStatus::WithBoundary {
                boundary: vec![vec!["b".into()], vec!["c".into()]]
            }
        );
        let tri_fan = complex(&["a", "b", "c", "d"], &[&["a", "b"], &["a", "c"], &["a", "d"]]);
        assert!(matches!(
            pseudomanifold_status(&tri_fan).unwrap(),
            PseudomanifoldStatus::NotPseudomanifold {
                witness: PmWitness::OverfullRidge { .. }
            }
        ));
        let empty = SimplicialComplex::from_masks(vec![], vec![Face::EMPTY]);
        assert_eq!(
            pseudomanifold_status(&empty).unwrap(),
            PseudomanifoldStatus::WithoutBoundary
        );
    }

    #[test]
    fn shelling_reports() {
        let s = complex(&["a", "b", "c"], &[&["a", "b", "c"]]);
        assert!(shelling(&s, &cfg()).unwrap().is_yes());
        assert!(shelling(&four_cycle(), &cfg()).unwrap().is_yes());
        let bowtie = complex(&["a", "b", "c", "d", "e"], &[&["a", "b", "c"], &["c", "d", "e"]]);
        assert!(shelling(&bowtie, &cfg()).unwrap().is_no());
        assert!(vertex_decomposition(&bowtie, &cfg()).unwrap().is_no());
        let empty = SimplicialComplex::from_masks(vec![], vec![Face::EMPTY]);
        assert!(vertex_decomposition(&empty, &cfg()).unwrap().is_yes());
    }

    #[test]
    fn reisner_examples() {
        let two = complex(&["a", "b", "c", "d"], &[&["a", "b"], &["c", "d"]]);
        let r = reisner_cm(&two, &cfg()).unwrap();
        match r.certificate {
            Certificate::FailingLink { face, link_dim, betti } => {
                assert!(face.is_empty());
                assert_eq!(link_dim, 1);
                assert_eq!(betti.get(0), 1);
            }
            other => panic!("{other:?}"),
        }
        assert!(reisner_cm(&four_cycle(), &cfg()).unwrap().is_yes());
    }

    #[test]
    fn homology_sphere_examples() {
        assert!(homology_sphere(&four_cycle(), &cfg()).unwrap().is_yes());
        let r = homology_sphere(&path_ball(), &cfg()).unwrap();
        match r.certificate {
            Certificate::FailingLink { face, .. } => {
                assert!(face == ["b"] || face == ["c"], "{face:?}")
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn topology_examples() {
        assert_eq!(classify_topology(&four_cycle(), &cfg()).unwrap().name(), "Sphere");
        assert_eq!(classify_topology(&path_ball(), &cfg()).unwrap().name(), "Ball");
        let bowtie = complex(&["a", "b", "c", "d", "e"], &[&["a", "b", "c"], &["c", "d", "e"]]);
        assert_eq!(
            classify_topology(&bowtie, &cfg()).unwrap().name(),
            "NotPseudomanifold"
        );
    }
}
