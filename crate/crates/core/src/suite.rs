//! Seeded randomized batteries over the library's invariants.
//!
//! Each battery draws from its own stream of a single seeded generator, so
//! a battery's outcome depends only on the seed and its own settings.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::checks::{
    self, homology, CheckConfig, CheckReport, Certificate, Field, PseudomanifoldStatus, Topology,
    Verdict,
};
use crate::complex::SimplicialComplex;
use crate::constructions::{self, BierType, Colouring};
use crate::error::Result;
use crate::face::{self, Face};
use crate::graphs::{self, GorensteinInput, Graph, VwcLabelling, VwcVerdict};
use crate::ideals::{self, MonomialIdeal};
use crate::io;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Battery {
    pub instances: usize,
    /// Vertex, variable or pair cap, depending on the battery.
    pub max_size: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BierBattery {
    pub instances: usize,
    pub max_variables: usize,
    pub max_exponent: u32,
    pub max_extra: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub budget: u64,
    pub coloured_whiskering: Battery,
    pub bier_balls: BierBattery,
    pub implication_chain: Battery,
    pub sr_duality: Battery,
    pub vwc_pseudomanifold: Battery,
    pub whiskered_vwc: Battery,
    pub bipartite_cm: Battery,
    pub vwc_equivalences: Battery,
    pub gorenstein_agreement: Battery,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            budget: checks::DEFAULT_BUDGET,
            coloured_whiskering: Battery { instances: 100, max_size: 6 },
            bier_balls: BierBattery {
                instances: 200,
                max_variables: 4,
                max_exponent: 4,
                max_extra: 3,
            },
            implication_chain: Battery { instances: 300, max_size: 7 },
            sr_duality: Battery { instances: 300, max_size: 7 },
            vwc_pseudomanifold: Battery { instances: 50, max_size: 5 },
            whiskered_vwc: Battery { instances: 50, max_size: 6 },
            bipartite_cm: Battery { instances: 100, max_size: 8 },
            vwc_equivalences: Battery { instances: 60, max_size: 4 },
            gorenstein_agreement: Battery { instances: 60, max_size: 3 },
        }
    }
}

pub const BATTERIES: [&str; 9] = [
    "coloured_whiskering",
    "bier_balls",
    "implication_chain",
    "sr_duality",
    "vwc_pseudomanifold",
    "whiskered_vwc",
    "bipartite_cm",
    "vwc_equivalences",
    "gorenstein_agreement",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BatteryReport {
    pub name: String,
    pub instances: usize,
    pub checks: u64,
    pub violations: u64,
    /// Checks that could not be decided within the budget.
    pub inconclusive: u64,
    pub counterexamples: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.inconclusive == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub seed: u64,
    pub budget: u64,
    pub batteries: Vec<BatteryReport>,
    pub passed: bool,
}

const MAX_DUMPS: usize = 5;

struct Tally {
    checks: u64,
    violations: u64,
    inconclusive: u64,
    dumps: Vec<Value>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            violations: 0,
            inconclusive: 0,
            dumps: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: &str, instance: &dyn Fn() -> Value) {
        self.checks += 1;
        if !ok {
            self.violations += 1;
            if self.dumps.len() < MAX_DUMPS {
                self.dumps.push(json!({ "violation": what, "instance": instance() }));
            }
        }
    }

    /// Unwraps `r`, recording an error as a violation.
    fn ok<T>(&mut self, r: Result<T>, what: &str, instance: &dyn Fn() -> Value) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, &format!("{what}: {e}"), instance);
                None
            }
        }
    }

    /// Records an implication `premise ⇒ conclusion` between verdicts;
    /// an unknown conclusion under a true premise is inconclusive.
    fn implies(&mut self, premise: Verdict, conclusion: Verdict, what: &str, instance: &dyn Fn() -> Value) {
        if premise == Verdict::Yes && conclusion == Verdict::Unknown {
            self.checks += 1;
            self.inconclusive += 1;
            return;
        }
        self.check(premise != Verdict::Yes || conclusion == Verdict::Yes, what, instance);
    }

    fn report(self, name: &str, instances: usize, start: Instant) -> BatteryReport {
        BatteryReport {
            name: name.to_string(),
            instances,
            checks: self.checks,
            violations: self.violations,
            inconclusive: self.inconclusive,
            counterexamples: self.dumps,
            elapsed_ms: Some(start.elapsed().as_secs_f64() * 1e3),
        }
    }
}

fn stream(seed: u64, battery: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let idx = BATTERIES.iter().position(|b| *b == battery).unwrap_or(BATTERIES.len());
    rng.set_stream(idx as u64 + 1);
    rng
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Face {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    Face::from_indices(idx.into_iter().take(k))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// A random complex on at most `max_n` vertices, every vertex a face.
pub fn random_complex(rng: &mut ChaCha8Rng, max_n: usize, pure: bool) -> SimplicialComplex {
    let n = rng.gen_range(1..=max_n.max(1));
    let faces: Vec<Face> = if pure {
        let k = rng.gen_range(1..=n);
        let m = rng.gen_range(1..=binomial(n, k).min(8));
        (0..m).map(|_| random_subset(rng, n, k)).collect()
    } else {
        let m = rng.gen_range(1..=6);
        (0..m)
            .map(|_| {
                let k = rng.gen_range(1..=n);
                random_subset(rng, n, k)
            })
            .collect()
    };
    let support = face::union_of(&faces);
    let kept = face::maximalize(faces);
    let all = labels("v", n);
    let c = SimplicialComplex::restricted(&all, support, &kept);
    SimplicialComplex::from_masks(labels("v", c.num_vertices()), c.facets().to_vec())
}

/// A random colouring without empty parts: all singletons about a third of
/// the time, otherwise a greedy random merge.
pub fn random_colouring(rng: &mut ChaCha8Rng, c: &SimplicialComplex) -> Colouring {
    let n = c.num_vertices();
    if rng.gen_bool(0.35) {
        return Colouring::singletons(c);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut parts: Vec<Face> = Vec::new();
    for v in order {
        let star = c
            .facets()
            .iter()
            .filter(|f| f.contains(v))
            .fold(Face::EMPTY, |acc, f| acc.union(*f));
        let open: Vec<usize> = (0..parts.len())
            .filter(|&p| parts[p].is_disjoint(star))
            .collect();
        if !open.is_empty() && rng.gen_bool(0.7) {
            let p = *open.choose(rng).unwrap();
            parts[p] = parts[p].with(v);
        } else {
            parts.push(Face::singleton(v));
        }
    }
    Colouring::new(parts.into_iter().map(|p| c.labels(p)).collect())
}

/// A graph meeting the labelling conditions by construction, with pairs
/// `(x_i, y_i)`; cover-to-cover edges only when `cover_edges` is set.
/// Retries until the result is very well-covered.
pub fn random_vwc_cm(rng: &mut ChaCha8Rng, max_pairs: usize, cover_edges: bool) -> (Graph, VwcLabelling) {
    loop {
        let d = rng.gen_range(1..=max_pairs.max(1));
        let p: f64 = rng.gen_range(0.0..0.6);
        let n = 2 * d;
        let mut adj = vec![vec![false; n]; n];
        let add = |adj: &mut Vec<Vec<bool>>, u: usize, v: usize| {
            adj[u][v] = true;
            adj[v][u] = true;
        };
        for i in 0..d {
            add(&mut adj, i, d + i);
        }
        for i in 0..d {
            for j in i + 1..d {
                if rng.gen_bool(p) {
                    add(&mut adj, i, d + j);
                }
            }
        }
        if cover_edges {
            for i in 0..d {
                for j in i + 1..d {
                    if !adj[i][d + j] && !adj[j][d + i] && rng.gen_bool(p) {
                        add(&mut adj, i, j);
                    }
                }
            }
        }
        // close under: z_i ~ x_j and y_j ~ x_k force z_i ~ x_k
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        if i == j || j == k || i == k || !adj[d + j][k] {
                            continue;
                        }
                        for z in [i, d + i] {
                            if adj[z][j] && !adj[z][k] {
                                add(&mut adj, z, k);
                                changed = true;
                            }
                        }
                    }
                }
            }
        }
        // vertex order x1, y1, x2, y2, ...
        let names: Vec<String> = (1..=d).flat_map(|i| [format!("x{i}"), format!("y{i}")]).collect();
        let pos = |v: usize| if v < d { 2 * v } else { 2 * (v - d) + 1 };
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if adj[u][v] {
                    edges.push((pos(u), pos(v)));
                }
            }
        }
        let g = Graph::from_indexed(names, edges);
        let lab = VwcLabelling {
            pairs: (1..=d).map(|i| (format!("x{i}"), format!("y{i}"))).collect(),
        };
        if lab.verify(&g).is_ok() && g.is_very_well_covered() {
            return (g, lab);
        }
    }
}

/// A random graph on `n` vertices with edge probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_indexed(labels("v", n), edges)
}

/// A random very well-covered graph without isolated vertices: a perfect
/// matching plus random extra edges, filtered.
pub fn random_vwc(rng: &mut ChaCha8Rng, max_pairs: usize) -> Graph {
    loop {
        let d = rng.gen_range(1..=max_pairs.max(1));
        let p: f64 = rng.gen_range(0.0..0.7);
        let mut g = random_graph(rng, 2 * d, p);
        let mut edges = g.edges().to_vec();
        edges.extend((0..d).map(|i| (2 * i, 2 * i + 1)));
        g = Graph::from_indexed(g.vertices().to_vec(), edges);
        if g.is_very_well_covered() {
            return g;
        }
    }
}

pub fn random_artinian(
    rng: &mut ChaCha8Rng,
    max_variables: usize,
    max_exponent: u32,
    max_extra: usize,
) -> MonomialIdeal {
    let n = rng.gen_range(1..=max_variables.max(1));
    let a: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=max_exponent.max(1))).collect();
    let mut gens: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = a[i];
            e
        })
        .collect();
    let extra = rng.gen_range(0..=max_extra);
    for _ in 0..extra {
        for _attempt in 0..20 {
            let e: Vec<u32> = (0..n).map(|i| rng.gen_range(0..a[i])).collect();
            if e.iter().filter(|&&x| x > 0).count() >= 2 {
                gens.push(e);
                break;
            }
        }
    }
    MonomialIdeal::new(labels("x", n), gens).expect("generated labels are distinct")
}

fn config_for(budget: u64) -> CheckConfig {
    CheckConfig {
        field: Field::GF2,
        budget,
    }
}

/// Every facet picks exactly one of `x_i`, `y_i` for each pair.
fn facets_are_transversals(c: &SimplicialComplex, pairs: &[(usize, usize)]) -> bool {
    c.facets().iter().all(|f| {
        f.len() == pairs.len() && pairs.iter().all(|&(x, y)| f.contains(x) != f.contains(y))
    })
}

fn label_sets(ideal: &MonomialIdeal) -> BTreeSet<BTreeSet<String>> {
    ideal
        .generators()
        .iter()
        .map(|g| g.support().iter().map(|v| ideal.variables()[v].clone()).collect())
        .collect()
}

/// Coloured whiskering: dimension, purity and vertex decomposability for
/// every colouring; pseudomanifold exactly for the singleton colouring, and
/// for it the ideal identity, the facet shape, graftedness and the
/// sphere/ball split.
pub fn coloured_whiskering(seed: u64, b: Battery, budget: u64) -> BatteryReport {
    let start = Instant::now();
    let mut rng = stream(seed, "coloured_whiskering");
    let cfg = config_for(budget);
    let mut t = Tally::new();
    for _ in 0..b.instances {
        let pure = rng.gen_bool(0.5);
        let c = random_complex(&mut rng, b.max_size, pure);
        let chi = random_colouring(&mut rng, &c);
        let inst = || json!({ "complex": io::complex_to_json(&c), "colouring": chi });
        let Some(w) = t.ok(constructions::coloured_whisker(&c, &chi), "coloured_whisker", &inst) else {
            continue;
        };
        let s = chi.parts.len() as i32;
        t.check(w.is_pure() && w.dim() == Some(s - 1), "pure of dimension s-1", &inst);
        if let Some(vd) = t.ok(checks::vertex_decomposition(&w, &cfg), "vd", &inst) {
            t.implies(Verdict::Yes, vd.verdict, "vertex decomposable", &inst);
        }
        let Some(pm) = t.ok(checks::pseudomanifold_status(&w), "pm", &inst) else {
            continue;
        };
        let singletons = chi.is_singletons();
        t.check(pm.is_pseudomanifold() == singletons, "pseudomanifold iff singletons", &inst);

        let Some(sr) = t.ok(ideals::stanley_reisner_ideal(&w), "sr ideal", &inst) else {
            continue;
        };
        let gens: Vec<Face> = sr.generators().iter().map(|m| m.support()).collect();
        let gamma = SimplicialComplex::restricted(w.vertices(), face::union_of(&gens), &gens);
        if let Some(g) = t.ok(constructions::is_grafted(&gamma), "is_grafted", &inst) {
            t.check(g.is_some() == singletons, "grafted iff singletons", &inst);
        }
        if !singletons {
            continue;
        }
        let n = c.num_vertices();
        let Some(base) = t.ok(ideals::stanley_reisner_ideal(&c), "sr ideal", &inst) else {
            continue;
        };
        let Some(masks) = t.ok(chi.resolve(&c), "resolve", &inst) else {
            continue;
        };
        // part j is {x_v}; its new vertex is y_j
        let pairs: Vec<(usize, usize)> = masks
            .iter()
            .enumerate()
            .map(|(j, m)| (m.iter().next().expect("nonempty part"), n + j))
            .collect();
        let mut expected = label_sets(&base);
        for &(x, y) in &pairs {
            expected.insert([w.label(x).to_string(), w.label(y).to_string()].into());
        }
        t.check(label_sets(&sr) == expected, "sr ideal identity", &inst);
        t.check(facets_are_transversals(&w, &pairs), "facet shape", &inst);
        if let Some(top) = t.ok(checks::classify_topology(&w, &cfg), "classify", &inst) {
            let want = if c.facets().len() == 1 { "Sphere" } else { "Ball" };
            if matches!(top, Topology::PseudomanifoldUnknown { .. }) {
                t.checks += 1;
                t.inconclusive += 1;
            } else {
                t.check(top.name() == want, "sphere iff simplex, else ball", &inst);
            }
        }
    }
    t.report("coloured_whiskering", b.instances, start)
}

/// Generalized Bier complexes of random artinian ideals.
pub fn bier_balls(seed: u64, b: BierBattery, budget: u64) -> BatteryReport {
    let start = Instant::now();
    let mut rng = stream(seed, "bier_balls");
    let cfg = config_for(budget);
    let mut t = Tally::new();
    for _ in 0..b.instances {
        let ideal = random_artinian(&mut rng, b.max_variables, b.max_exponent, b.max_extra);
        let inst = || io::ideal_to_json(&ideal);
        let Some(out) = t.ok(constructions::bier(&ideal), "bier", &inst) else {
            continue;
        };
        let Some(profile) = t.ok(ideal.profile(), "profile", &inst) else {
            continue;
        };
        let extra_empty = profile.artinian.as_ref().is_some_and(|a| a.extra.is_empty());
        t.check(
            out.complex.is_pure() && out.complex.dim() == Some(out.predicted_dim),
            "pure of predicted dimension",
            &inst,
        );
        t.check(
            (out.predicted_type == BierType::Sphere) == extra_empty,
            "sphere predicted iff no extra generators",
            &inst,
        );
        if let Some(vd) = t.ok(checks::vertex_decomposition(&out.complex, &cfg), "vd", &inst) {
            t.implies(Verdict::Yes, vd.verdict, "vertex decomposable", &inst);
            if let Certificate::Decomposition { tree } = &vd.certificate {
                t.check(checks::replay_decomposition(&out.complex, tree), "vd replay", &inst);
            }
        }
        if let Some(fc) = t.ok(out.polarized.to_complexes(), "facet complex", &inst) {
            match t.ok(constructions::is_grafted(&fc.facet_complex), "is_grafted", &inst) {
                Some(Some(cert)) => t.check(cert.replay(&fc.facet_complex), "graft replay", &inst),
                Some(None) => t.check(false, "facet complex grafted", &inst),
                None => {}
            }
        }
        if let Some(top) = t.ok(checks::classify_topology(&out.complex, &cfg), "classify", &inst) {
            let want = match out.predicted_type {
                BierType::Sphere => "Sphere",
                BierType::Ball => "Ball",
            };
            if matches!(top, Topology::PseudomanifoldUnknown { .. }) {
                t.checks += 1;
                t.inconclusive += 1;
            } else {
                t.check(top.name() == want, "classification matches prediction", &inst);
            }
        }
    }
    t.report("bier_balls", b.instances, start)
}

/// Euler identity for the homology of the complex generated by `facets`.
fn euler_holds(facets: &[Face], field: Field) -> bool {
    let betti = homology::betti_of_facets(facets, field);
    let top = facets.iter().map(|f| f.len()).max().unwrap_or(0);
    let mut f = vec![0u64; top + 1];
    for g in face::all_faces(facets) {
        f[g.len()] += 1;
    }
    betti.satisfies_euler(&f)
}

/// One-way implications between the properties on random complexes, plus
/// the Euler identity for the complex and every link.
pub fn implication_chain(seed: u64, b: Battery, budget: u64) -> BatteryReport {
    let start = Instant::now();
    let mut rng = stream(seed, "implication_chain");
    let cfg = config_for(budget);
    let mut t = Tally::new();
    for _ in 0..b.instances {
        let pure = rng.gen_bool(0.5);
        let c = random_complex(&mut rng, b.max_size, pure);
        let inst = || io::complex_to_json(&c);
        let (Some(vd), Some(cm), Some(hs), Some(pm)) = (
            t.ok(checks::vertex_decomposition(&c, &cfg), "vd", &inst),
            t.ok(checks::reisner_cm(&c, &cfg), "cm", &inst),
            t.ok(checks::homology_sphere(&c, &cfg), "hsphere", &inst),
            t.ok(checks::pseudomanifold_status(&c), "pm", &inst),
        ) else {
            continue;
        };
        if c.is_pure() {
            let (Some(sh), Some(sc)) = (
                t.ok(checks::shelling(&c, &cfg), "shelling", &inst),
                t.ok(checks::is_strongly_connected_with(&c, &cfg), "sc", &inst),
            ) else {
                continue;
            };
            t.implies(vd.verdict, sh.verdict, "vd => shellable", &inst);
            t.implies(sh.verdict, cm.verdict, "shellable => cm", &inst);
            t.implies(cm.verdict, sc.verdict, "cm => strongly connected", &inst);
            if let Certificate::ShellingOrder { order } = &sh.certificate {
                t.check(checks::replay_shelling(&c, order), "shelling replay", &inst);
            }
        } else {
            t.check(!cm.is_yes(), "cm => pure", &inst);
        }
        if let Certificate::Decomposition { tree } = &vd.certificate {
            t.check(checks::replay_decomposition(&c, tree), "vd replay", &inst);
        }
        t.check(
            !hs.is_yes() || pm == PseudomanifoldStatus::WithoutBoundary,
            "homology sphere => pseudomanifold without boundary",
            &inst,
        );
        t.check(
            matches!(pm, PseudomanifoldStatus::NotPure { .. }) != c.is_pure(),
            "pseudomanifold => pure",
            &inst,
        );
        for f in c.faces() {
            let link = face::link_facets(c.facets(), f);
            t.check(euler_holds(&link, cfg.field), "euler identity", &inst);
        }
    }
    t.report("implication_chain", b.instances, start)
}

/// Independent sets by enumerating every subset of `0..n`.
fn brute_force_ind(n: usize, gens: &[Face]) -> Vec<Face> {
    let indep: Vec<Face> = (0u64..1 << n)
        .map(Face)
        .filter(|s| gens.iter().all(|g| !g.is_subset(*s)))
        .collect();
    let mut out: Vec<Face> = indep
        .iter()
        .copied()
        .filter(|s| !indep.iter().any(|t| t != s && s.is_subset(*t)))
        .collect();
    out.sort_unstable();
    out
}

/// Stanley-Reisner complex of a square-free ideal equals the independence
/// complex of its facet complex, both checked against subset enumeration,
/// and the ideal round-trips through both complexes.
pub fn sr_duality(seed: u64, b: Battery) -> BatteryReport {
    let start = Instant::now();
    let mut rng = stream(seed, "sr_duality");
    let mut t = Tally::new();
    for _ in 0..b.instances {
        let n = rng.gen_range(1..=b.max_size.max(1));
        let m = rng.gen_range(1..=6);
        let gens: Vec<Vec<u32>> = (0..m)
            .map(|_| {
                let k = rng.gen_range(1..=n.min(3));
                let f = random_subset(&mut rng, n, k);
                (0..n).map(|v| u32::from(f.contains(v))).collect()
            })
            .collect();
        let ideal = MonomialIdeal::new(labels("x", n), gens).expect("generated labels are distinct");
        let inst = || io::ideal_to_json(&ideal);
        let Some(cx) = t.ok(ideal.to_complexes(), "to_complexes", &inst) else {
            continue;
        };
        let supports: Vec<Face> = ideal.generators().iter().map(|g| g.support()).collect();
        let oracle = brute_force_ind(n, &supports);
        t.check(cx.sr_complex.facets() == oracle.as_slice(), "sr complex matches enumeration", &inst);
        if let Some(ind) = t.ok(cx.facet_complex.independence_complex(), "ind", &inst) {
            t.check(ind == cx.sr_complex, "N(I) = Ind(F(I))", &inst);
        }
        if let Some(back) = t.ok(ideals::complex_to_ideals(&cx.facet_complex), "facet ideal", &inst) {
            t.check(back.facet_ideal == ideal, "facet round trip", &inst);
        }
        if let Some(back) = t.ok(ideals::complex_to_ideals(&cx.sr_complex), "sr ideal", &inst) {
            t.check(back.sr_ideal == ideal, "sr round trip", &inst);
        }
    }
    t.report("sr_duality", b.instances, start)
}

/// Graphs built from the labelling conditions: the independence complex is
/// a pseudomanifold, without boundary exactly for `dK2`, and every facet
/// takes one vertex from each pair.
pub fn vwc_pseudomanifold(seed: u64, b: Battery, budget: u64) -> BatteryReport {
    let start = Instant::now();
    let mut rng = stream(seed, "vwc_pseudomanifold");
    let cfg = config_for(budget);
    let mut t = Tally::new();
    for _ in 0..b.instances {
        let (g, lab) = random_vwc_cm(&mut rng, b.max_size, true);
        let inst = || json!({ "graph": io::graph_to_json(&g), "labelling": lab });
        let ind = g.independence_complex();
        let Some(pm) = t.ok(checks::pseudomanifold_status(&ind), "pm", &inst) else {
            continue;
        };
        t.check(pm.is_pseudomanifold(), "pseudomanifold", &inst);
        t.check(
            pm.is_pseudomanifold() && (pm.has_boundary() != g.is_dk2()),
            "boundary iff not dK2",
            &inst,
        );
        t.check(lab.facets_are_transversals(&g), "facet shape", &inst);
        match t.ok(graphs::vwc_labelling(&g), "vwc_labelling", &inst) {
            Some(Some(found)) => {
                t.check(found.verify(&g).is_ok(), "found labelling verifies", &inst);
                t.check(found.facets_are_transversals(&g), "facet shape (found)", &inst);
            }
            Some(None) => t.check(false, "labelling exists", &inst),
            None => {}
        }
        if let Some(cls) = t.ok(graphs::classify_vwc(&g, &cfg), "classify_vwc", &inst) {
            t.check(cls.consistent, "equivalent conditions agree", &inst);
            let want = if g.is_dk2() { VwcVerdict::Sphere } else { VwcVerdict::Ball };
            if cls.verdict == VwcVerdict::Unknown {
                t.checks += 1;
                t.inconclusive += 1;
            } else {
                t.check(cls.verdict == want, "sphere iff dK2, else ball", &inst);
            }
        }
    }
    t.report("vwc_pseudomanifold", b.instances, start)
}

/// Whiskering any graph gives a very well-covered, whiskered graph with a labelling.
pub fn whiskered_vwc(seed: u64, b: Battery) -> BatteryReport {
    let start = Instant::now();
    let mut rng = stream(seed, "whiskered_vwc");
    let mut t = Tally::new();
    for _ in 0..b.instances {
        let n = rng.gen_range(1..=b.max_size.max(1));
        let p: f64 = rng.gen_range(0.0..0.8);
        let g = random_graph(&mut rng, n, p);
        let inst = || io::graph_to_json(&g);
        let Some(w) = t.ok(constructions::whisker_graph(&g), "whisker", &inst) else {
            continue;
        };
        t.check(w.num_vertices() == 2 * n && w.edges().len() == g.edges().len() + n, "size", &inst);
        t.check(w.is_very_well_covered(), "very well-covered", &inst);
        t.check(w.is_whiskered(), "whiskered", &inst);
        if let Some(l) = t.ok(graphs::vwc_labelling(&w), "labelling", &inst) {
            t.check(l.is_some(), "labelling exists", &inst);
        }
    }
    t.report("whiskered_vwc", b.instances, start)
}

/// Bipartite graphs without isolated vertices: Cohen-Macaulay forces very
/// well-covered, a pseudomanifold, and sphere exactly for `dK2`.
pub fn bipartite_cm(seed: u64, b: Battery, budget: u64) -> BatteryReport {
    let start = Instant::now();
    let mut rng = stream(seed, "bipartite_cm");
    let cfg = config_for(budget);
    let mut t = Tally::new();
    for _ in 0..b.instances {
        let g = if rng.gen_bool(0.5) {
            random_vwc_cm(&mut rng, b.max_size / 2, false).0
        } else {
            let left = rng.gen_range(1..b.max_size.max(2));
            let right = rng.gen_range(1..=(b.max_size - left).max(1));
            let p: f64 = rng.gen_range(0.2..0.9);
            let mut edges = Vec::new();
            for u in 0..left {
                for v in 0..right {
                    if rng.gen_bool(p) {
                        edges.push((u, left + v));
                    }
                }
            }
            // no isolated vertices
            for u in 0..left {
                if !edges.iter().any(|e| e.0 == u) {
                    edges.push((u, left + rng.gen_range(0..right)));
                }
            }
            for v in 0..right {
                if !edges.iter().any(|e| e.1 == left + v) {
                    edges.push((rng.gen_range(0..left), left + v));
                }
            }
            Graph::from_indexed(labels("v", left + right), edges)
        };
        let inst = || io::graph_to_json(&g);
        t.check(g.is_bipartite() && g.isolated().is_empty(), "generator", &inst);
        let ind = g.independence_complex();
        let Some(cm) = t.ok(checks::reisner_cm(&ind, &cfg), "cm", &inst) else {
            continue;
        };
        if !cm.is_yes() {
            continue;
        }
        t.check(g.is_very_well_covered(), "cm => very well-covered", &inst);
        if let Some(top) = t.ok(checks::classify_topology(&ind, &cfg), "classify", &inst) {
            let want = if g.is_dk2() { "Sphere" } else { "Ball" };
            if matches!(top, Topology::PseudomanifoldUnknown { .. }) {
                t.checks += 1;
                t.inconclusive += 1;
            } else {
                t.check(top.name() == want, "sphere iff dK2, else ball", &inst);
            }
        }
    }
    t.report("bipartite_cm", b.instances, start)
}

/// Random very well-covered graphs: strongly connected, Cohen-Macaulay,
/// pseudomanifold and labelling existence all agree.
pub fn vwc_equivalences(seed: u64, b: Battery, budget: u64) -> BatteryReport {
    let start = Instant::now();
    let mut rng = stream(seed, "vwc_equivalences");
    let cfg = config_for(budget);
    let mut t = Tally::new();
    for _ in 0..b.instances {
        let g = if rng.gen_bool(0.3) {
            random_vwc_cm(&mut rng, b.max_size, true).0
        } else {
            random_vwc(&mut rng, b.max_size)
        };
        let inst = || io::graph_to_json(&g);
        if let Some(cls) = t.ok(graphs::classify_vwc(&g, &cfg), "classify_vwc", &inst) {
            t.check(cls.consistent, "equivalent conditions agree", &inst);
            t.check(
                cls.cohen_macaulay.is_yes() == cls.pseudomanifold.is_pseudomanifold(),
                "cm iff pseudomanifold",
                &inst,
            );
        }
    }
    t.report("vwc_equivalences", b.instances, start)
}

fn gorenstein_pair(
    t: &mut Tally,
    input: GorensteinInput<'_>,
    cfg: &CheckConfig,
    inst: &dyn Fn() -> Value,
) -> Option<(CheckReport, CheckReport)> {
    let general = t.ok(graphs::gorenstein_classify(input, cfg, false), "general path", inst)?;
    let short = t.ok(graphs::gorenstein_classify(input, cfg, true), "shortcut path", inst)?;
    t.check(general.verdict == short.verdict, "paths agree", inst);
    Some((general, short))
}

/// Gorenstein iff complete intersection on generalized Bier complexes and
/// very well-covered graphs; girth rule on graphs judged Gorenstein.
pub fn gorenstein_agreement(seed: u64, b: Battery, budget: u64) -> BatteryReport {
    let start = Instant::now();
    let mut rng = stream(seed, "gorenstein_agreement");
    let cfg = config_for(budget);
    let mut t = Tally::new();
    for _ in 0..b.instances {
        match rng.gen_range(0..3) {
            0 => {
                let ideal = random_artinian(&mut rng, b.max_size, 3, 2);
                let inst = || io::ideal_to_json(&ideal);
                let Some(out) = t.ok(constructions::bier(&ideal), "bier", &inst) else {
                    continue;
                };
                if let Some((general, _)) =
                    gorenstein_pair(&mut t, GorensteinInput::Complex(&out.complex), &cfg, &inst)
                {
                    t.check(
                        general.is_yes() == (out.predicted_type == BierType::Sphere),
                        "gorenstein iff no extra generators",
                        &inst,
                    );
                }
            }
            1 => {
                let g = if rng.gen_bool(0.5) {
                    random_vwc_cm(&mut rng, b.max_size + 1, true).0
                } else {
                    random_vwc(&mut rng, b.max_size + 1)
                };
                let inst = || io::graph_to_json(&g);
                if let Some((general, _)) = gorenstein_pair(&mut t, GorensteinInput::Graph(&g), &cfg, &inst) {
                    t.check(general.is_yes() == g.is_dk2(), "gorenstein iff dK2", &inst);
                    t.check(
                        !general.is_yes() || graphs::gorenstein_girth_consistent(&g),
                        "girth rule",
                        &inst,
                    );
                }
            }
            _ => {
                let n = rng.gen_range(1..=2 * b.max_size + 1);
                let p: f64 = rng.gen_range(0.2..0.8);
                let g = random_graph(&mut rng, n, p);
                let inst = || io::graph_to_json(&g);
                if let Some(r) = t.ok(
                    graphs::gorenstein_classify(GorensteinInput::Graph(&g), &cfg, false),
                    "general path",
                    &inst,
                ) {
                    t.check(
                        !r.is_yes() || graphs::gorenstein_girth_consistent(&g),
                        "girth rule",
                        &inst,
                    );
                }
            }
        }
    }
    t.report("gorenstein_agreement", b.instances, start)
}

/// Runs the named batteries (all when `only` is empty).
pub fn run(seed: u64, config: &SuiteConfig, only: &[String]) -> SuiteReport {
    let wanted = |name: &str| only.is_empty() || only.iter().any(|o| o == name);
    let budget = config.budget;
    let mut batteries = Vec::new();
    for name in BATTERIES {
        if !wanted(name) {
            continue;
        }
        batteries.push(match name {
            "coloured_whiskering" => coloured_whiskering(seed, config.coloured_whiskering, budget),
            "bier_balls" => bier_balls(seed, config.bier_balls, budget),
            "implication_chain" => implication_chain(seed, config.implication_chain, budget),
            "sr_duality" => sr_duality(seed, config.sr_duality),
            "vwc_pseudomanifold" => vwc_pseudomanifold(seed, config.vwc_pseudomanifold, budget),
            "whiskered_vwc" => whiskered_vwc(seed, config.whiskered_vwc),
            "bipartite_cm" => bipartite_cm(seed, config.bipartite_cm, budget),
            "vwc_equivalences" => vwc_equivalences(seed, config.vwc_equivalences, budget),
            "gorenstein_agreement" => gorenstein_agreement(seed, config.gorenstein_agreement, budget),
            _ => unreachable!(),
        });
    }
    let passed = batteries.iter().all(BatteryReport::passed);
    SuiteReport {
        schema: io::SCHEMA,
        seed,
        budget,
        batteries,
        passed,
    }
}

impl SuiteReport {
    pub fn without_timing(mut self) -> Self {
        for b in &mut self.batteries {
            b.elapsed_ms = None;
        }
        self
    }

    pub fn has_inconclusive(&self) -> bool {
        self.batteries.iter().any(|b| b.inconclusive > 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_well_formed() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let c = random_complex(&mut rng, 6, false);
            assert!(c.isolated_vertices().is_empty());
            let chi = random_colouring(&mut rng, &c);
            assert!(chi.resolve(&c).is_ok());
            assert!(chi.parts.iter().all(|p| !p.is_empty()));
        }
        for _ in 0..20 {
            let (g, lab) = random_vwc_cm(&mut rng, 4, true);
            assert_eq!(lab.verify(&g), Ok(()));
            let (g, _) = random_vwc_cm(&mut rng, 4, false);
            assert!(g.is_bipartite());
            let i = random_artinian(&mut rng, 4, 4, 3);
            assert!(i.profile().unwrap().artinian.is_some());
        }
    }

    #[test]
    fn small_runs_pass_and_are_reproducible() {
        let cfg = SuiteConfig {
            coloured_whiskering: Battery { instances: 10, max_size: 4 },
            bier_balls: BierBattery {
                instances: 10,
                max_variables: 3,
                max_exponent: 3,
                max_extra: 2,
            },
            implication_chain: Battery { instances: 20, max_size: 5 },
            sr_duality: Battery { instances: 20, max_size: 5 },
            vwc_pseudomanifold: Battery { instances: 5, max_size: 3 },
            whiskered_vwc: Battery { instances: 5, max_size: 4 },
            bipartite_cm: Battery { instances: 10, max_size: 6 },
            vwc_equivalences: Battery { instances: 5, max_size: 3 },
            gorenstein_agreement: Battery { instances: 10, max_size: 2 },
            ..SuiteConfig::default()
        };
        let a = run(11, &cfg, &[]).without_timing();
        assert!(a.passed, "{}", serde_json::to_string_pretty(&a).unwrap());
        let b = run(11, &cfg, &[]).without_timing();
        assert_eq!(a, b);
    }
}
