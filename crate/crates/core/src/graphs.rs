//! Simple graphs, their independence complexes and edge ideals,
//! very well-covered labellings, and Gorenstein classification.

use std::collections::{BTreeSet, VecDeque};
use std::time::Instant;

use serde::Serialize;

use crate::checks::{
    self, homology, pseudomanifold_status, scan_links, sphere_accepts, Certificate, CheckConfig,
    CheckReport, Field, LabelledFace, Property, PseudomanifoldStatus, Topology, Verdict,
};
use crate::complex::{check_labels, SimplicialComplex};
use crate::constructions;
use crate::error::{Error, Result};
use crate::face::{self, Face, MAX_VERTICES};
use crate::ideals::{self, MonomialIdeal};

/// A simple undirected graph over an ordered list of labelled vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    vertices: Vec<String>,
    /// Pairs `(i, j)` with `i < j`, sorted.
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Repeated edges collapse; loops and undeclared endpoints are input errors.
    pub fn build<S: AsRef<str>, T: AsRef<str>>(vertices: &[S], edges: &[(T, T)]) -> Result<Self> {
        let index = check_labels(vertices, "/vertices", MAX_VERTICES)?;
        let mut pairs = Vec::with_capacity(edges.len());
        for (i, (a, b)) in edges.iter().enumerate() {
            let look = |l: &str, j: usize| {
                index.get(l).copied().ok_or_else(|| {
                    Error::input(format!("/edges/{i}/{j}"), format!("undeclared vertex {l:?}"))
                })
            };
            let (u, v) = (look(a.as_ref(), 0)?, look(b.as_ref(), 1)?);
            if u == v {
                return Err(Error::input(format!("/edges/{i}"), "loops are not allowed"));
            }
            pairs.push((u, v));
        }
        Ok(Self::from_indexed(
            vertices.iter().map(|s| s.as_ref().to_string()).collect(),
            pairs,
        ))
    }

    pub(crate) fn from_indexed(vertices: Vec<String>, edges: Vec<(usize, usize)>) -> Self {
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Graph { vertices, edges }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn edge_labels(&self) -> Vec<(String, String)> {
        self.edges
            .iter()
            .map(|&(u, v)| (self.vertices[u].clone(), self.vertices[v].clone()))
            .collect()
    }

    pub fn edge_faces(&self) -> Vec<Face> {
        self.edges
            .iter()
            .map(|&(u, v)| Face::from_indices([u, v]))
            .collect()
    }

    /// Neighbourhoods as vertex masks.
    pub fn neighbourhoods(&self) -> Vec<Face> {
        let mut nb = vec![Face::EMPTY; self.vertices.len()];
        for &(u, v) in &self.edges {
            nb[u] = nb[u].with(v);
            nb[v] = nb[v].with(u);
        }
        nb
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// The graph as a 1-dimensional complex; isolated graph vertices stay in the ground set.
    pub fn as_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_masks(self.vertices.clone(), self.edge_faces())
    }

    pub fn independence_complex(&self) -> SimplicialComplex {
        let ground = Face::full(self.vertices.len());
        SimplicialComplex::from_masks(
            self.vertices.clone(),
            face::maximal_independent_sets(ground, &self.edge_faces()),
        )
    }

    /// `I(G)`; the zero ideal for an edgeless graph.
    pub fn edge_ideal(&self) -> MonomialIdeal {
        let n = self.vertices.len();
        let gens = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let mut e = vec![0u32; n];
                e[u] = 1;
                e[v] = 1;
                e
            })
            .collect();
        MonomialIdeal::new(self.vertices.clone(), gens).expect("labels already checked")
    }

    pub fn isolated(&self) -> Face {
        let nb = self.neighbourhoods();
        Face::from_indices((0..self.vertices.len()).filter(|&v| nb[v].is_empty()))
    }

    /// Connected components as vertex masks, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Face> {
        let nb = self.neighbourhoods();
        let mut seen = Face::EMPTY;
        let mut out = Vec::new();
        for s in 0..self.vertices.len() {
            if seen.contains(s) {
                continue;
            }
            let mut comp = Face::singleton(s);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let next = frontier
                    .iter()
                    .fold(Face::EMPTY, |acc, v| acc.union(nb[v]))
                    .difference(comp);
                comp = comp.union(next);
                frontier = next;
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on `keep`, reindexed in the existing order.
    pub fn induced(&self, keep: Face) -> Graph {
        let kept: Vec<usize> = keep.iter().collect();
        let pos = |v: usize| kept.iter().position(|&k| k == v).unwrap();
        Graph::from_indexed(
            kept.iter().map(|&v| self.vertices[v].clone()).collect(),
            self.edges
                .iter()
                .filter(|(u, v)| keep.contains(*u) && keep.contains(*v))
                .map(|&(u, v)| (pos(u), pos(v)))
                .collect(),
        )
    }

    pub fn is_bipartite(&self) -> bool {
        let nb = self.neighbourhoods();
        let mut side: Vec<Option<bool>> = vec![None; self.vertices.len()];
        for s in 0..self.vertices.len() {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for w in nb[u].iter() {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Length of a shortest cycle; `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let nb = self.neighbourhoods();
        let n = self.vertices.len();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for w in nb[u].iter() {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// A perfect matching with no other edges.
    pub fn is_dk2(&self) -> bool {
        !self.vertices.is_empty() && self.neighbourhoods().iter().all(|n| n.len() == 1)
    }

    /// Vertices pair up as `(x_i, y_i)` with `y_i` pendant on `x_i`.
    pub fn is_whiskered(&self) -> bool {
        let nb = self.neighbourhoods();
        (0..self.vertices.len()).all(|v| match nb[v].len() {
            0 => false,
            // pendant: either half of a K2, or hangs off a vertex of degree >= 2
            1 => true,
            _ => nb[v].iter().filter(|&w| nb[w].len() == 1).count() == 1,
        })
    }

    /// Maximal independent sets, canonical order.
    pub fn maximal_independent_sets(&self) -> Vec<Face> {
        self.independence_complex().facets().to_vec()
    }

    pub fn is_well_covered(&self) -> bool {
        let mis = self.maximal_independent_sets();
        mis.iter().all(|m| m.len() == mis[0].len())
    }

    pub fn is_very_well_covered(&self) -> bool {
        let n = self.vertices.len();
        n % 2 == 0
            && self
                .maximal_independent_sets()
                .iter()
                .all(|m| 2 * m.len() == n)
    }

    pub fn profile(&self) -> GraphProfile {
        GraphProfile {
            vertices: self.vertices.len(),
            edges: self.edges.len(),
            components: self.components().len(),
            is_bipartite: self.is_bipartite(),
            girth: self.girth(),
            isolated_vertices: self.labels(self.isolated()),
            is_dk2: self.is_dk2(),
            is_whiskered: self.is_whiskered(),
            is_well_covered: self.is_well_covered(),
            is_very_well_covered: self.is_very_well_covered(),
        }
    }

    pub fn labels(&self, f: Face) -> Vec<String> {
        f.iter().map(|v| self.vertices[v].clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphProfile {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub is_bipartite: bool,
    /// `None` when acyclic.
    pub girth: Option<usize>,
    pub isolated_vertices: Vec<String>,
    pub is_dk2: bool,
    pub is_whiskered: bool,
    pub is_well_covered: bool,
    pub is_very_well_covered: bool,
}

/// Ordered pairs `(x_i, y_i)`: the `x`s form a minimal vertex cover, the
/// `y`s a maximal independent set, and the labelling conditions hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VwcLabelling {
    pub pairs: Vec<(String, String)>,
}

/// Which labelling condition fails, with the indices involved (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabellingError {
    NotAPartition,
    CoverOrIndependence,
    MissingPairEdge(usize),
    Closure { i: usize, j: usize, k: usize },
    CoverEdgeWithCrossEdge { i: usize, j: usize },
    Order { i: usize, j: usize },
}

fn require_vwc(g: &Graph, op: &str) -> Result<()> {
    if !g.isolated().is_empty() {
        return Err(Error::domain(format!(
            "{op}: isolated vertices {:?} are not allowed",
            g.labels(g.isolated())
        )));
    }
    if !g.is_very_well_covered() {
        return Err(Error::domain(format!("{op}: the graph is not very well-covered")));
    }
    Ok(())
}

/// Conditions other than the ordering one; they do not depend on the order of pairs.
fn unordered_conditions(g: &Graph, xs: &[usize], ys: &[usize]) -> std::result::Result<(), LabellingError> {
    let d = xs.len();
    for i in 0..d {
        if !g.is_adjacent(xs[i], ys[i]) {
            return Err(LabellingError::MissingPairEdge(i));
        }
    }
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue;
            }
            if g.is_adjacent(xs[i], ys[j]) && g.is_adjacent(xs[i], xs[j]) {
                return Err(LabellingError::CoverEdgeWithCrossEdge { i, j });
            }
            for k in 0..d {
                if k == i || k == j || !g.is_adjacent(ys[j], xs[k]) {
                    continue;
                }
                for z in [xs[i], ys[i]] {
                    if g.is_adjacent(z, xs[j]) && !g.is_adjacent(z, xs[k]) {
                        return Err(LabellingError::Closure { i, j, k });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Orders the pairs so that `x_i ~ y_j` implies `i <= j`: a topological sort
/// of the forced precedences, smallest pair first. `None` on a cycle.
fn order_pairs(g: &Graph, xs: &[usize], ys: &[usize]) -> Option<Vec<usize>> {
    let d = xs.len();
    let mut indeg = vec![0usize; d];
    let mut succ = vec![Vec::new(); d];
    for a in 0..d {
        for b in 0..d {
            if a != b && g.is_adjacent(xs[a], ys[b]) {
                succ[a].push(b);
                indeg[b] += 1;
            }
        }
    }
    let mut ready: BTreeSet<usize> = (0..d).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(d);
    while let Some(a) = ready.pop_first() {
        order.push(a);
        for &b in &succ[a] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                ready.insert(b);
            }
        }
    }
    (order.len() == d).then_some(order)
}

struct MatchingSearch<'a> {
    g: &'a Graph,
    xs: Vec<usize>,
    ys: Vec<usize>,
    assigned: Vec<usize>,
    used: Face,
    found: Option<Vec<(usize, usize)>>,
}

impl MatchingSearch<'_> {
    fn run(&mut self, i: usize) {
        if self.found.is_some() {
            return;
        }
        if i == self.xs.len() {
            let ys: Vec<usize> = self.assigned.clone();
            if unordered_conditions(self.g, &self.xs, &ys).is_ok() {
                if let Some(order) = order_pairs(self.g, &self.xs, &ys) {
                    self.found = Some(order.iter().map(|&k| (self.xs[k], ys[k])).collect());
                }
            }
            return;
        }
        let x = self.xs[i];
        for &y in &self.ys.clone() {
            if self.used.contains(y) || !self.g.is_adjacent(x, y) {
                continue;
            }
            self.used = self.used.with(y);
            self.assigned.push(y);
            self.run(i + 1);
            self.assigned.pop();
            self.used = self.used.without(y);
        }
    }
}

impl VwcLabelling {
    fn indices(&self, g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (x, y) in &self.pairs {
            xs.push(g.index_of(x)?);
            ys.push(g.index_of(y)?);
        }
        Some((xs, ys))
    }

    /// Checks every labelling condition against `g`.
    pub fn verify(&self, g: &Graph) -> std::result::Result<(), LabellingError> {
        let (xs, ys) = self.indices(g).ok_or(LabellingError::NotAPartition)?;
        let xm = Face::from_indices(xs.iter().copied());
        let ym = Face::from_indices(ys.iter().copied());
        if xm.len() != xs.len()
            || ym.len() != ys.len()
            || !xm.is_disjoint(ym)
            || xm.union(ym) != Face::full(g.num_vertices())
        {
            return Err(LabellingError::NotAPartition);
        }
        // Y independent and maximal; X is then a minimal vertex cover.
        let nb = g.neighbourhoods();
        if ys.iter().any(|&y| !nb[y].is_disjoint(ym)) || xs.iter().any(|&x| nb[x].is_disjoint(ym)) {
            return Err(LabellingError::CoverOrIndependence);
        }
        unordered_conditions(g, &xs, &ys)?;
        for i in 0..xs.len() {
            for j in 0..i {
                if g.is_adjacent(xs[i], ys[j]) {
                    return Err(LabellingError::Order { i, j });
                }
            }
        }
        Ok(())
    }

    /// Checks that every facet of `Ind(G)` picks exactly one vertex from each pair.
    pub fn facets_are_transversals(&self, g: &Graph) -> bool {
        let Some((xs, ys)) = self.indices(g) else {
            return false;
        };
        g.maximal_independent_sets().iter().all(|f| {
            f.len() == xs.len()
                && xs
                    .iter()
                    .zip(&ys)
                    .all(|(&x, &y)| f.contains(x) != f.contains(y))
        })
    }
}

/// Searches for a labelling: maximal independent sets `Y` in canonical
/// order, then perfect matchings between the cover and `Y`, then a
/// precedence-respecting order of the pairs.
pub fn vwc_labelling(g: &Graph) -> Result<Option<VwcLabelling>> {
    require_vwc(g, "vwc_labelling")?;
    let all = Face::full(g.num_vertices());
    for y in g.maximal_independent_sets() {
        let mut s = MatchingSearch {
            g,
            xs: all.difference(y).indices(),
            ys: y.indices(),
            assigned: Vec::new(),
            used: Face::EMPTY,
            found: None,
        };
        s.run(0);
        if let Some(pairs) = s.found {
            return Ok(Some(VwcLabelling {
                pairs: pairs
                    .into_iter()
                    .map(|(x, y)| (g.label(x).to_string(), g.label(y).to_string()))
                    .collect(),
            }));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VwcVerdict {
    Sphere,
    Ball,
    NotCohenMacaulay,
    /// The shelling search ran out of budget.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VwcClassification {
    pub verdict: VwcVerdict,
    pub field: Field,
    pub is_dk2: bool,
    pub strongly_connected: CheckReport,
    pub cohen_macaulay: CheckReport,
    pub pseudomanifold: PseudomanifoldStatus,
    pub homology_sphere: CheckReport,
    pub topology: Topology,
    pub labelling: Option<VwcLabelling>,
    /// Whether all the equivalent conditions agreed.
    pub consistent: bool,
}

impl VwcClassification {
    pub fn without_timing(mut self) -> Self {
        self.strongly_connected = self.strongly_connected.without_timing();
        self.cohen_macaulay = self.cohen_macaulay.without_timing();
        self.homology_sphere = self.homology_sphere.without_timing();
        self
    }
}

/// Computes the equivalent conditions for a very well-covered graph and
/// the refined sphere/ball verdict.
pub fn classify_vwc(g: &Graph, config: &CheckConfig) -> Result<VwcClassification> {
    require_vwc(g, "classify_vwc")?;
    let ind = g.independence_complex();
    let sc = checks::is_strongly_connected_with(&ind, config)?;
    let cm = checks::reisner_cm(&ind, config)?;
    let pm = pseudomanifold_status(&ind)?;
    let hs = checks::homology_sphere(&ind, config)?;
    let topology = checks::classify_topology(&ind, config)?;
    let labelling = vwc_labelling(g)?;
    let is_dk2 = g.is_dk2();

    let ball_or_sphere = matches!(topology, Topology::Sphere { .. } | Topology::Ball { .. });
    let unknown = matches!(topology, Topology::PseudomanifoldUnknown { .. });
    let cm_yes = cm.is_yes();
    let mut consistent = sc.is_yes() == cm_yes
        && pm.is_pseudomanifold() == cm_yes
        && labelling.is_some() == cm_yes
        && (unknown || ball_or_sphere == cm_yes);
    if cm_yes {
        let sphere = matches!(topology, Topology::Sphere { .. });
        consistent &= is_dk2 == (pm == PseudomanifoldStatus::WithoutBoundary)
            && is_dk2 == hs.is_yes()
            && (unknown || is_dk2 == sphere);
    }
    let verdict = match topology {
        Topology::Sphere { .. } => VwcVerdict::Sphere,
        Topology::Ball { .. } => VwcVerdict::Ball,
        _ if !cm_yes => VwcVerdict::NotCohenMacaulay,
        _ => VwcVerdict::Unknown,
    };
    Ok(VwcClassification {
        verdict,
        field: config.field,
        is_dk2,
        strongly_connected: sc,
        cohen_macaulay: cm,
        pseudomanifold: pm,
        homology_sphere: hs,
        topology,
        labelling,
        consistent,
    })
}

#[derive(Clone, Copy, Debug)]
pub enum GorensteinInput<'a> {
    /// Gorenstein-ness of the Stanley-Reisner ring of the complex.
    Complex(&'a SimplicialComplex),
    /// Gorenstein-ness of the edge ideal.
    Graph(&'a Graph),
}

/// Strips vertices lying in every facet until none remain.
pub(crate) fn strip_cones(facets: &[Face]) -> (Face, Vec<Face>) {
    let mut core = facets.to_vec();
    let mut cones = Face::EMPTY;
    loop {
        let c = core
            .iter()
            .fold(face::union_of(&core), |acc, f| acc.intersection(*f));
        if c.is_empty() {
            return (cones, core);
        }
        cones = cones.union(c);
        core = face::maximalize(core.iter().map(|f| f.difference(c)).collect());
    }
}

fn ci_certificate(class: &str, labels: &dyn Fn(Face) -> LabelledFace, gens: &[Face]) -> (Verdict, Certificate) {
    for (i, a) in gens.iter().enumerate() {
        if let Some(b) = gens[i + 1..].iter().find(|b| !a.is_disjoint(**b)) {
            return (
                Verdict::No,
                Certificate::NotCompleteIntersection {
                    class: class.to_string(),
                    first: labels(*a),
                    second: labels(*b),
                },
            );
        }
    }
    (
        Verdict::Yes,
        Certificate::CompleteIntersection {
            class: class.to_string(),
            generators: gens.iter().map(|g| labels(*g)).collect(),
        },
    )
}

/// Gorenstein classification.
///
/// The general path strips cone vertices and tests the core for being a
/// homology sphere over `config.field`. With `shortcut`, the input must be
/// in one of the two certified classes (independence complex of a grafted
/// complex, or a very well-covered graph without isolated vertices) and the
/// verdict is whether the associated ideal is a complete intersection.
pub fn gorenstein_classify(input: GorensteinInput<'_>, config: &CheckConfig, shortcut: bool) -> Result<CheckReport> {
    let start = Instant::now();
    let owned;
    let complex = match input {
        GorensteinInput::Complex(c) => c,
        GorensteinInput::Graph(g) => {
            owned = g.independence_complex();
            &owned
        }
    };
    if complex.is_void() {
        return Err(Error::domain("gorenstein_classify: the void complex is not supported"));
    }
    if shortcut {
        let (verdict, cert, nodes) = match input {
            GorensteinInput::Graph(g) => {
                require_vwc(g, "gorenstein shortcut")?;
                let labels = |f: Face| g.labels(f);
                let (v, c) = ci_certificate("very_well_covered_graph", &labels, &g.edge_faces());
                (v, c, g.edges().len() as u64)
            }
            GorensteinInput::Complex(c) => {
                let sr = ideals::stanley_reisner_ideal(c)?;
                let gens: Vec<Face> = sr.generators().iter().map(|m| m.support()).collect();
                let support = face::union_of(&gens);
                if gens.is_empty() {
                    return Err(Error::domain(
                        "gorenstein shortcut: the Stanley-Reisner ideal is zero, so there is no facet complex to certify",
                    ));
                }
                let facet_complex = SimplicialComplex::restricted(c.vertices(), support, &gens);
                if constructions::is_grafted(&facet_complex)?.is_none() {
                    return Err(Error::domain(
                        "gorenstein shortcut: the facet complex of the Stanley-Reisner ideal is not grafted",
                    ));
                }
                let labels = |f: Face| c.labels(f);
                let (v, cert) = ci_certificate("grafted_facet_complex", &labels, &gens);
                (v, cert, gens.len() as u64)
            }
        };
        return Ok(CheckReport::new(
            Property::Gorenstein,
            verdict,
            cert,
            config,
            nodes,
            start.elapsed(),
        ));
    }
    let (cones, core) = strip_cones(complex.facets());
    let cone_vertices = complex.labels(cones);
    let (verdict, cert, nodes) = match scan_links(&core, config.field, sphere_accepts) {
        Ok(n) => (
            Verdict::Yes,
            Certificate::Gorenstein {
                cone_vertices,
                core_faces_checked: n,
            },
            n as u64,
        ),
        Err((f, link_dim, betti)) => (
            Verdict::No,
            Certificate::NotGorenstein {
                cone_vertices,
                face: complex.labels(f),
                link_dim,
                betti,
            },
            0,
        ),
    };
    Ok(CheckReport::new(
        Property::Gorenstein,
        verdict,
        cert,
        config,
        nodes,
        start.elapsed(),
    ))
}

/// Every component is `K1`, `K2`, or has girth at most five: the necessary
/// condition on graphs with Gorenstein edge ideal.
pub fn gorenstein_girth_consistent(g: &Graph) -> bool {
    g.components().into_iter().all(|c| {
        let h = g.induced(c);
        h.num_vertices() <= 2 || h.girth().is_some_and(|girth| girth <= 5)
    })
}

/// Reduced homology of `Ind(G)`.
pub fn independence_homology(g: &Graph, field: Field) -> checks::BettiVector {
    homology::betti_of_facets(g.independence_complex().facets(), field)
}
