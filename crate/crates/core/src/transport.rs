//! Exact transportation distance between finitely supported rational
//! measures on a graph, with certified optima.
//!
//! The solve scales both marginals by the lcm of their denominators, runs
//! successive shortest paths on the resulting integer transportation problem
//! (costs are BFS distances in the ambient graph), and scales back. A dual
//! 1-Lipschitz potential is then extracted from the optimal coupling via a
//! difference-constraint system; the solve refuses to return unless the
//! primal cost and the dual objective agree exactly, so every result carries
//! a zero-gap certificate pair.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::graph::Graph;
use crate::rational::Rational;

/// Sparse probability measure on vertices. Entries are strictly positive and
/// sum to exactly one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    masses: BTreeMap<usize, Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistributionError {
    NonPositiveMass { vertex: usize },
    MassSum { total: Rational },
    VertexOutOfRange { vertex: usize },
}

impl fmt::Display for DistributionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistributionError::NonPositiveMass { vertex } => {
                write!(f, "non-positive mass at vertex {}", vertex)
            }
            DistributionError::MassSum { total } => {
                write!(f, "masses sum to {} instead of 1", total)
            }
            DistributionError::VertexOutOfRange { vertex } => {
                write!(f, "distribution vertex {} out of range", vertex)
            }
        }
    }
}

impl Distribution {
    /// Builds a distribution; entries for the same vertex are merged.
    pub fn new(entries: impl IntoIterator<Item = (usize, Rational)>) -> Result<Self, DistributionError> {
        let mut masses: BTreeMap<usize, Rational> = BTreeMap::new();
        for (v, m) in entries {
            *masses.entry(v).or_default() += &m;
        }
        let mut total = Rational::zero();
        for (&v, m) in &masses {
            if !m.is_positive() {
                return Err(DistributionError::NonPositiveMass { vertex: v });
            }
            total += m;
        }
        if !total.is_one() {
            return Err(DistributionError::MassSum { total });
        }
        Ok(Distribution { masses })
    }

    pub fn dirac(v: usize) -> Self {
        let mut masses = BTreeMap::new();
        masses.insert(v, Rational::one());
        Distribution { masses }
    }

    pub fn mass(&self, v: usize) -> Rational {
        self.masses.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    /// Support vertices, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.masses.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.masses.iter().map(|(&v, m)| (v, m))
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn check_in_graph(&self, g: &Graph) -> Result<(), DistributionError> {
        match self.masses.keys().find(|&&v| v >= g.n()) {
            Some(&v) => Err(DistributionError::VertexOutOfRange { vertex: v }),
            None => Ok(()),
        }
    }
}

/// Sparse transport plan between two measures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coupling {
    entries: BTreeMap<(usize, usize), Rational>,
}

impl Coupling {
    pub fn new(entries: impl IntoIterator<Item = ((usize, usize), Rational)>) -> Self {
        let entries = entries
            .into_iter()
            .filter(|(_, m)| !m.is_zero())
            .collect();
        Coupling { entries }
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.entries.iter().map(|(&k, m)| (k, m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }
}

/// Vertex-indexed dual function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Potential {
    values: BTreeMap<usize, Rational>,
}

impl Potential {
    pub fn new(values: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        Potential { values: values.into_iter().collect() }
    }

    pub fn value(&self, v: usize) -> Option<&Rational> {
        self.values.get(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.values.iter().map(|(&v, r)| (v, r))
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.keys().copied()
    }
}

/// Optimal transport value with its certificate pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportResult {
    pub value: Rational,
    pub primal: Coupling,
    pub dual: Potential,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransportError {
    Distribution(DistributionError),
    EmptySupport,
    DisconnectedSupports { from: usize, to: usize },
    MarginalViolation { side: MarginalSide, vertex: usize, expected: Rational, got: Rational },
    PotentialMissing { vertex: usize },
    /// A certificate failed to re-verify; indicates an engine bug.
    Internal(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarginalSide {
    Row,
    Column,
}

impl fmt::Display for TransportError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransportError::Distribution(e) => write!(f, "{}", e),
            TransportError::EmptySupport => write!(f, "empty support"),
            TransportError::DisconnectedSupports { from, to } => {
                write!(f, "supports disconnected: no path from {} to {}", from, to)
            }
            TransportError::MarginalViolation { side, vertex, expected, got } => write!(
                f,
                "{} marginal violated at vertex {}: expected {}, got {}",
                match side {
                    MarginalSide::Row => "row",
                    MarginalSide::Column => "column",
                },
                vertex,
                expected,
                got
            ),
            TransportError::PotentialMissing { vertex } => {
                write!(f, "potential undefined at support vertex {}", vertex)
            }
            TransportError::Internal(what) => write!(f, "internal invariant failed: {}", what),
        }
    }
}

impl From<DistributionError> for TransportError {
    fn from(e: DistributionError) -> Self {
        TransportError::Distribution(e)
    }
}

/// Exact transportation distance `W(mu1, mu2)` with optimal coupling and a
/// zero-gap dual witness.
pub fn wasserstein(
    g: &Graph,
    mu1: &Distribution,
    mu2: &Distribution,
) -> Result<TransportResult, TransportError> {
    mu1.check_in_graph(g)?;
    mu2.check_in_graph(g)?;
    if mu1.is_empty() || mu2.is_empty() {
        return Err(TransportError::EmptySupport);
    }

    let sources: Vec<usize> = mu1.support().collect();
    let sinks: Vec<usize> = mu2.support().collect();

    // Pairwise distances over the union support, in the ambient graph.
    let union: Vec<usize> = {
        let mut u = sources.clone();
        u.extend(sinks.iter().copied());
        u.sort_unstable();
        u.dedup();
        u
    };
    let dist = g.distance_matrix_restricted(&union);
    let pos = |v: usize| union.binary_search(&v).unwrap();
    for &s in &sources {
        for &t in &sinks {
            if dist[pos(s)][pos(t)].is_none() {
                return Err(TransportError::DisconnectedSupports { from: s, to: t });
            }
        }
    }

    // Scale to an integer transportation problem.
    let scale = Rational::denominator_lcm(mu1.iter().map(|(_, m)| m).chain(mu2.iter().map(|(_, m)| m)));
    let supply: Vec<BigInt> = sources.iter().map(|&v| mu1.mass(v).scaled_to_integer(&scale)).collect();
    let demand: Vec<BigInt> = sinks.iter().map(|&v| mu2.mass(v).scaled_to_integer(&scale)).collect();
    let cost = |i: usize, j: usize| dist[pos(sources[i])][pos(sinks[j])].unwrap() as i64;

    let flow = solve_integer_transport(&supply, &demand, &cost);

    // Scale the flow back to the optimal coupling and its exact cost.
    let mut total_cost = BigInt::zero();
    let mut entries = BTreeMap::new();
    for (&(i, j), f) in &flow {
        total_cost += f * BigInt::from(cost(i, j));
        entries.insert(
            (sources[i], sinks[j]),
            Rational::from_bigs(f.clone(), scale.clone()),
        );
    }
    let value = Rational::from_bigs(total_cost, scale);
    let primal = Coupling { entries };

    let dual = extract_dual(&union, &dist, &sinks, &flow, &sources)?;

    // Both certificates must re-verify before the result is released.
    let primal_cost = verify_coupling(g, mu1, mu2, &primal)?;
    if primal_cost != value {
        return Err(TransportError::Internal("primal cost mismatch"));
    }
    if !lipschitz_on(&union, &dist, &dual) {
        return Err(TransportError::Internal("dual not 1-Lipschitz"));
    }
    let gap_check = dual_objective(&dual, mu1, mu2)?;
    if gap_check != value {
        return Err(TransportError::Internal("nonzero duality gap"));
    }

    Ok(TransportResult { value, primal, dual })
}

/// Successive shortest paths on the bipartite transportation network.
/// Augmenting order is fixed (Bellman-Ford over arcs in insertion order,
/// sources ascending), so the returned basic optimal flow is deterministic.
fn solve_integer_transport(
    supply: &[BigInt],
    demand: &[BigInt],
    cost: &dyn Fn(usize, usize) -> i64,
) -> BTreeMap<(usize, usize), BigInt> {
    let m = supply.len();
    let n = demand.len();
    // Node ids: 0 = source, 1..=m sources, m+1..=m+n sinks, m+n+1 = sink.
    let s = 0usize;
    let t = m + n + 1;
    let node_count = m + n + 2;

    struct Arc {
        to: usize,
        cost: i64,
        residual: BigInt,
        twin: usize,
    }
    let mut arcs: Vec<Arc> = Vec::new();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); node_count];
    let link = |arcs: &mut Vec<Arc>, out: &mut Vec<Vec<usize>>, a: usize, b: usize, c: i64, cap: BigInt| {
        let e = arcs.len();
        arcs.push(Arc { to: b, cost: c, residual: cap, twin: e + 1 });
        arcs.push(Arc { to: a, cost: -c, residual: BigInt::zero(), twin: e });
        out[a].push(e);
        out[b].push(e + 1);
    };
    let total: BigInt = supply.iter().sum();
    for (i, sup) in supply.iter().enumerate() {
        link(&mut arcs, &mut out, s, 1 + i, 0, sup.clone());
    }
    for i in 0..m {
        for j in 0..n {
            link(&mut arcs, &mut out, 1 + i, 1 + m + j, cost(i, j), total.clone());
        }
    }
    for (j, dem) in demand.iter().enumerate() {
        link(&mut arcs, &mut out, 1 + m + j, t, 0, dem.clone());
    }

    let inf = i64::MAX / 4;
    loop {
        // Bellman-Ford on the residual network; deterministic relaxation
        // order and strict improvement keep parents reproducible.
        let mut dist = vec![inf; node_count];
        let mut parent: Vec<Option<usize>> = vec![None; node_count];
        dist[s] = 0;
        for _ in 0..node_count {
            let mut changed = false;
            for u in 0..node_count {
                if dist[u] == inf {
                    continue;
                }
                for &e in &out[u] {
                    if arcs[e].residual.is_zero() {
                        continue;
                    }
                    let nd = dist[u] + arcs[e].cost;
                    if nd < dist[arcs[e].to] {
                        dist[arcs[e].to] = nd;
                        parent[arcs[e].to] = Some(e);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if dist[t] == inf {
            break;
        }
        // Bottleneck along the path.
        let mut bottleneck: Option<BigInt> = None;
        let mut v = t;
        while v != s {
            let e = parent[v].unwrap();
            let r = &arcs[e].residual;
            bottleneck = Some(match bottleneck {
                None => r.clone(),
                Some(b) => {
                    if r < &b {
                        r.clone()
                    } else {
                        b
                    }
                }
            });
            v = arcs[arcs[e].twin].to;
        }
        let push = bottleneck.unwrap();
        if push.is_zero() {
            break;
        }
        let mut v = t;
        while v != s {
            let e = parent[v].unwrap();
            arcs[e].residual -= &push;
            let twin = arcs[e].twin;
            arcs[twin].residual += &push;
            v = arcs[twin].to;
        }
    }

    let mut flow = BTreeMap::new();
    for i in 0..m {
        for j in 0..n {
            // Middle arc index: sources come first (2 arcs each).
            let e = 2 * m + 2 * (i * n + j);
            let sent = &total - &arcs[e].residual;
            if !sent.is_zero() {
                flow.insert((i, j), sent);
            }
        }
    }
    flow
}

/// Builds a 1-Lipschitz potential complementary to the optimal flow by
/// solving the difference-constraint system
///   f(p) - f(q) <= d(p, q)        for all support pairs,
///   f(x) - f(y)  = d(x, y)        on every arc carrying flow,
/// via Bellman-Ford. Normalized so f vanishes at the smallest vertex of the
/// second support.
fn extract_dual(
    union: &[usize],
    dist: &[Vec<Option<usize>>],
    sinks: &[usize],
    flow: &BTreeMap<(usize, usize), BigInt>,
    sources: &[usize],
) -> Result<Potential, TransportError> {
    let k = union.len();
    let idx = |v: usize| union.binary_search(&v).unwrap();
    // Edges q -> p with weight w encode f(p) <= f(q) + w.
    let mut cons: Vec<(usize, usize, i64)> = Vec::new();
    for p in 0..k {
        for q in 0..k {
            if p != q {
                if let Some(d) = dist[p][q] {
                    cons.push((q, p, d as i64));
                }
            }
        }
    }
    for &(i, j) in flow.keys() {
        let (x, y) = (idx(sources[i]), idx(sinks[j]));
        let d = dist[x][y].unwrap() as i64;
        // f(x) - f(y) = d, as two inequalities.
        cons.push((y, x, d));
        cons.push((x, y, -d));
    }
    // Bellman-Ford from a virtual source connected to every node at 0.
    let mut f = vec![0i64; k];
    for round in 0..=k {
        let mut changed = false;
        for &(q, p, w) in &cons {
            if f[q] + w < f[p] {
                f[p] = f[q] + w;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        if round == k {
            return Err(TransportError::Internal("negative cycle in dual system"));
        }
    }
    let base = f[idx(sinks[0])];
    Ok(Potential::new(
        union
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, Rational::from_integer(f[i] - base))),
    ))
}

fn lipschitz_on(union: &[usize], dist: &[Vec<Option<usize>>], f: &Potential) -> bool {
    for (i, &p) in union.iter().enumerate() {
        for (j, &q) in union.iter().enumerate() {
            if i == j {
                continue;
            }
            let (Some(fp), Some(fq)) = (f.value(p), f.value(q)) else {
                return false;
            };
            if let Some(d) = dist[i][j] {
                if &(fp - fq) > &Rational::from_integer(d as i64) {
                    return false;
                }
            }
        }
    }
    true
}

/// Checks both marginal constraints of `a` against `mu1`/`mu2` exactly and
/// returns the transport cost under the graph metric.
pub fn verify_coupling(
    g: &Graph,
    mu1: &Distribution,
    mu2: &Distribution,
    a: &Coupling,
) -> Result<Rational, TransportError> {
    let mut rows: BTreeMap<usize, Rational> = BTreeMap::new();
    let mut cols: BTreeMap<usize, Rational> = BTreeMap::new();
    for ((x, y), m) in a.iter() {
        *rows.entry(x).or_default() += m;
        *cols.entry(y).or_default() += m;
    }
    for (v, expected) in mu1.iter() {
        let got = rows.remove(&v).unwrap_or_default();
        if &got != expected {
            return Err(TransportError::MarginalViolation {
                side: MarginalSide::Row,
                vertex: v,
                expected: expected.clone(),
                got,
            });
        }
    }
    if let Some((&v, got)) = rows.iter().next() {
        return Err(TransportError::MarginalViolation {
            side: MarginalSide::Row,
            vertex: v,
            expected: Rational::zero(),
            got: got.clone(),
        });
    }
    for (v, expected) in mu2.iter() {
        let got = cols.remove(&v).unwrap_or_default();
        if &got != expected {
            return Err(TransportError::MarginalViolation {
                side: MarginalSide::Column,
                vertex: v,
                expected: expected.clone(),
                got,
            });
        }
    }
    if let Some((&v, got)) = cols.iter().next() {
        return Err(TransportError::MarginalViolation {
            side: MarginalSide::Column,
            vertex: v,
            expected: Rational::zero(),
            got: got.clone(),
        });
    }
    let mut cost = Rational::zero();
    for ((x, y), m) in a.iter() {
        if x == y {
            continue;
        }
        match g.distance(x, y) {
            Some(d) => cost += &(m * &Rational::from_integer(d as i64)),
            None => return Err(TransportError::DisconnectedSupports { from: x, to: y }),
        }
    }
    Ok(cost)
}

/// True iff `f(x) - f(y) <= d(x, y)` for every ordered pair of `domain`.
pub fn verify_lipschitz(g: &Graph, f: &Potential, domain: &[usize]) -> bool {
    let dist = g.distance_matrix_restricted(domain);
    lipschitz_on(domain, &dist, f)
}

/// `sum_x f(x) (mu1(x) - mu2(x))`, exact.
pub fn dual_objective(
    f: &Potential,
    mu1: &Distribution,
    mu2: &Distribution,
) -> Result<Rational, TransportError> {
    let mut total = Rational::zero();
    for (v, m) in mu1.iter() {
        let fv = f.value(v).ok_or(TransportError::PotentialMissing { vertex: v })?;
        total += &(fv * m);
    }
    for (v, m) in mu2.iter() {
        let fv = f.value(v).ok_or(TransportError::PotentialMissing { vertex: v })?;
        total -= &(fv * m);
    }
    Ok(total)
}
