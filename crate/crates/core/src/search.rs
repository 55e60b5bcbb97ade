//! Exhaustive enumeration of connected bounded-degree graphs up to
//! isomorphism, and the Ricci-flat filter over it.
//!
//! Generation grows graphs one vertex at a time (the new vertex attaches to
//! 1..=max_degree existing vertices), deduplicating each level by canonical
//! certificate. Every connected graph has a removable non-cut vertex, so the
//! growth is complete for connected graphs within the degree cap; the
//! minimum-degree requirement is applied only when emitting, never while
//! growing. A brute-force oracle over all labeled graphs pins completeness
//! at small orders in the tests.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashSet;

use crate::canon::{certificate_from_rows, CanonicalCertificate};
use crate::curvature::{self, CurvatureError, CurvatureReport};
use crate::cycles;
use crate::graph::{EdgeRef, Graph};
use crate::structure::{self, EdgeLocalType, StructureError, Violation};

/// Hard cap before the explicit override, and the absolute representation
/// bound of the compact adjacency used by the enumerator.
pub const DEFAULT_CAP: usize = 11;
pub const ABSOLUTE_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_n: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    /// Restrict results to graphs containing a C3 or a C4.
    pub require_short_cycle: bool,
    /// Apply the structural pre-filters before running transport solves.
    pub prune_rules: bool,
    /// Re-check a sample of pruned graphs with the full engine.
    pub audit_prunes: bool,
    /// Lift the default vertex cap (still bounded by the representation).
    pub override_cap: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_n: 8,
            min_degree: 2,
            max_degree: 4,
            require_short_cycle: false,
            prune_rules: true,
            audit_prunes: false,
            override_cap: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    CapExceeded { max_n: usize, cap: usize },
    BadConfig(&'static str),
    Curvature(CurvatureError),
    Structure(StructureError),
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::CapExceeded { max_n, cap } => {
                write!(f, "max_n = {} exceeds cap {} (use the override to go further)", max_n, cap)
            }
            SearchError::BadConfig(msg) => write!(f, "bad search config: {}", msg),
            SearchError::Curvature(e) => write!(f, "{}", e),
            SearchError::Structure(e) => write!(f, "{}", e),
        }
    }
}

impl From<CurvatureError> for SearchError {
    fn from(e: CurvatureError) -> Self {
        SearchError::Curvature(e)
    }
}

impl From<StructureError> for SearchError {
    fn from(e: StructureError) -> Self {
        SearchError::Structure(e)
    }
}

/// Compact adjacency for the enumerator: bitset rows, n <= 16.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    pub n: u8,
    pub rows: [u16; ABSOLUTE_CAP],
}

impl SmallGraph {
    pub fn single_vertex() -> Self {
        SmallGraph { n: 1, rows: [0; ABSOLUTE_CAP] }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n as usize).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Adds vertex `n` joined to the set bits of `targets`.
    pub fn extended(&self, targets: u16) -> SmallGraph {
        let mut g = *self;
        let v = g.n as usize;
        g.rows[v] = targets;
        let mut m = targets;
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            g.rows[w] |= 1 << v;
        }
        g.n += 1;
        g
    }

    pub fn certificate(&self) -> CanonicalCertificate {
        let mut rows64 = [0u64; ABSOLUTE_CAP];
        for v in 0..self.n as usize {
            rows64[v] = self.rows[v] as u64;
        }
        certificate_from_rows(self.n as usize, &rows64[..self.n as usize])
    }

    pub fn to_graph(&self) -> Graph {
        let n = self.n as usize;
        let mut adj = vec![Vec::new(); n];
        for v in 0..n {
            let mut m = self.rows[v];
            while m != 0 {
                let w = m.trailing_zeros() as usize;
                m &= m - 1;
                adj[v].push(w);
            }
        }
        Graph::from_adjacency(adj).expect("compact graph is simple")
    }

    fn has_short_cycle(&self) -> bool {
        let n = self.n as usize;
        for u in 0..n {
            for wv in 0..n {
                if u == wv || self.rows[u] & (1 << wv) == 0 {
                    continue;
                }
                // Common neighbor: triangle.
                if self.rows[u] & self.rows[wv] != 0 {
                    return true;
                }
            }
        }
        // Four-cycle: two vertices with two common neighbors.
        for u in 0..n {
            for v in (u + 1)..n {
                if (self.rows[u] & self.rows[v]).count_ones() >= 2 {
                    return true;
                }
            }
        }
        false
    }
}

fn check_config(config: &SearchConfig) -> Result<(), SearchError> {
    if config.max_n == 0 {
        return Err(SearchError::BadConfig("max_n must be at least 1"));
    }
    if config.max_degree > 15 || config.min_degree > config.max_degree {
        return Err(SearchError::BadConfig("degree bounds out of range"));
    }
    let cap = if config.override_cap { ABSOLUTE_CAP } else { DEFAULT_CAP };
    if config.max_n > cap {
        return Err(SearchError::CapExceeded { max_n: config.max_n, cap });
    }
    Ok(())
}

/// One representative per isomorphism class of connected graphs satisfying
/// the config bounds, sorted by (n, certificate). Certificates are returned
/// alongside the compact graphs.
pub fn enumerate_compact(
    config: &SearchConfig,
) -> Result<Vec<(CanonicalCertificate, SmallGraph)>, SearchError> {
    check_config(config)?;
    let mut out: Vec<(CanonicalCertificate, SmallGraph)> = Vec::new();
    let mut level: Vec<SmallGraph> = vec![SmallGraph::single_vertex()];
    for n in 1..=config.max_n {
        for g in &level {
            if g.min_degree() >= config.min_degree
                && (!config.require_short_cycle || g.has_short_cycle())
            {
                out.push((g.certificate(), *g));
            }
        }
        if n == config.max_n {
            break;
        }
        let remaining = config.max_n - n;
        let mut seen: HashSet<alloc::vec::Vec<u8>> = HashSet::new();
        let mut next: Vec<SmallGraph> = Vec::new();
        for parent in &level {
            // A vertex still below min_degree must be fixed by future
            // attachments; each future vertex supplies at most max_degree
            // edge endpoints.
            let deficiency: usize = (0..parent.n as usize)
                .map(|v| config.min_degree.saturating_sub(parent.degree(v)))
                .sum();
            if deficiency > remaining * config.max_degree {
                continue;
            }
            let eligible: Vec<usize> = (0..parent.n as usize)
                .filter(|&v| parent.degree(v) < config.max_degree)
                .collect();
            let count = eligible.len();
            for mask in 1u32..(1 << count) {
                let picks = mask.count_ones() as usize;
                if picks > config.max_degree {
                    continue;
                }
                let mut targets = 0u16;
                let mut m = mask;
                while m != 0 {
                    let b = m.trailing_zeros() as usize;
                    m &= m - 1;
                    targets |= 1 << eligible[b];
                }
                let child = parent.extended(targets);
                let cert = child.certificate();
                if seen.insert(cert.0.clone()) {
                    next.push(child);
                }
            }
        }
        level = next;
    }
    out.sort_by(|a, b| (a.1.n, &a.0).cmp(&(b.1.n, &b.0)));
    out.dedup_by(|a, b| a.0 == b.0);
    Ok(out)
}

/// Streaming variant producing full `Graph` values in deterministic order.
pub fn enumerate(config: &SearchConfig) -> Result<impl Iterator<Item = Graph>, SearchError> {
    Ok(enumerate_compact(config)?.into_iter().map(|(_, g)| g.to_graph()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PruneDecision {
    Keep,
    Cut(&'static str),
}

/// Structural pre-filter applied to completed graphs (all degrees final)
/// before any transport solve. Every cut is licensed by a necessary
/// condition on Ricci-flat graphs; audit mode re-checks cuts with the full
/// engine.
pub fn lemma_prune(g: &Graph) -> PruneDecision {
    if g.min_degree() <= 1 {
        return PruneDecision::Cut("leaf_vertex");
    }
    for (u, v) in g.edges() {
        let e = EdgeRef::new(u, v);
        let (a, b) = (g.degree(u), g.degree(v));
        let pair = (a.min(b), a.max(b));
        let mem = cycles::cycle_membership(g, e);
        if !mem.any() {
            // Off all short cycles the curvature is the closed form, which
            // vanishes only for degrees (2,2).
            if pair != (2, 2) {
                return PruneDecision::Cut("closed_form_nonzero");
            }
            continue;
        }
        // On a short cycle:
        match pair {
            // A flat (2,2) edge lies on no short cycle at all.
            (2, 2) => return PruneDecision::Cut("deg22_on_short_cycle"),
            (2, 3) => {
                if mem.in_c3() || mem.in_c4() {
                    return PruneDecision::Cut("deg23_on_c3_or_c4");
                }
            }
            (2, 4) => {
                if mem.in_c3() {
                    return PruneDecision::Cut("deg24_on_c3");
                }
            }
            (3, 3) => {
                if mem.in_c4() {
                    return PruneDecision::Cut("deg33_on_c4");
                }
            }
            (3, 4) => {
                if mem.in_c3() {
                    return PruneDecision::Cut("deg34_on_c3");
                }
                let c4s = cycles::cycles_through_edge(g, e, 4);
                if c4s.len() != 1 {
                    return PruneDecision::Cut("deg34_c4_count");
                }
            }
            (4, 4) => {
                if !mem.in_c3() && !mem.in_c4() {
                    // Off C3 and C4 the upper bound is -1/4 < 0.
                    return PruneDecision::Cut("deg44_off_c3c4");
                }
            }
            _ => {}
        }
        if mem.in_c3() && mem.in_c4() {
            return PruneDecision::Cut("c3_c4_shared");
        }
    }
    PruneDecision::Keep
}

/// One Ricci-flat graph found by the search, with everything needed to audit
/// it offline.
#[derive(Debug, Clone)]
pub struct FlatHit {
    pub graph: Graph,
    pub certificate: CanonicalCertificate,
    pub reports: Vec<CurvatureReport>,
    pub classifications: Vec<EdgeLocalType>,
    pub violations: Vec<Violation>,
}

/// Outcome of a Ricci-flat search.
#[derive(Debug, Clone, Default)]
pub struct FlatSearchOutcome {
    pub hits: Vec<FlatHit>,
    pub enumerated: usize,
    pub pruned: usize,
    /// Certificates of pruned graphs that the audit found to be flat
    /// (must stay empty; a nonempty list is a prune soundness bug).
    pub audit_failures: Vec<CanonicalCertificate>,
    pub audited: usize,
}

/// Maximum number of pruned graphs re-checked in audit mode.
pub const AUDIT_SAMPLE: usize = 1000;

/// Enumerates per the config and keeps the Ricci-flat graphs, each with full
/// per-edge reports, classifications and a clean exclusion audit.
pub fn find_ricci_flat(config: &SearchConfig) -> Result<FlatSearchOutcome, SearchError> {
    let listed = enumerate_compact(config)?;
    let mut outcome = FlatSearchOutcome::default();
    for (cert, small) in listed {
        outcome.enumerated += 1;
        let g = small.to_graph();
        if g.n() < 2 {
            continue;
        }
        if config.prune_rules {
            if let PruneDecision::Cut(_) = lemma_prune(&g) {
                outcome.pruned += 1;
                if config.audit_prunes && outcome.audited < AUDIT_SAMPLE {
                    outcome.audited += 1;
                    if curvature::is_ricci_flat(&g)?.flat {
                        outcome.audit_failures.push(cert.clone());
                    }
                }
                continue;
            }
        }
        let flat = curvature::is_ricci_flat(&g)?;
        if !flat.flat {
            continue;
        }
        outcome.hits.push(examine_hit(g, cert)?);
    }
    Ok(outcome)
}

/// Builds the full audit bundle for one flat graph.
pub fn examine_hit(g: Graph, certificate: CanonicalCertificate) -> Result<FlatHit, SearchError> {
    let full = curvature::is_ricci_flat_full(&g)?;
    let mut classifications = Vec::new();
    for (u, v) in g.edges() {
        classifications.push(structure::classify_flat_edge(&g, EdgeRef::new(u, v))?);
    }
    let violations = structure::check_exclusion_lemmas(&g);
    Ok(FlatHit { graph: g, certificate, reports: full.reports, classifications, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_certificate;
    use crate::catalog;
    use alloc::collections::BTreeSet;

    fn config(max_n: usize, min_degree: usize) -> SearchConfig {
        SearchConfig { max_n, min_degree, ..SearchConfig::default() }
    }

    #[test]
    fn tiny_cases() {
        // min_degree 2 admits nothing below the triangle.
        let got = enumerate_compact(&config(1, 2)).unwrap();
        assert!(got.is_empty());
        let got = enumerate_compact(&config(1, 0)).unwrap();
        assert_eq!(got.len(), 1);
        let got = enumerate_compact(&config(3, 2)).unwrap();
        assert_eq!(got.len(), 1); // the triangle
    }

    #[test]
    fn four_vertices_min_degree_two() {
        let got = enumerate_compact(&config(4, 2)).unwrap();
        // Triangle; C4; diamond; K4; triangle with one pendant excluded by
        // min degree.
        assert_eq!(got.iter().filter(|(_, g)| g.n == 4).count(), 3);
        assert_eq!(got.len(), 4);
    }

    // Brute-force oracle: every labeled graph on exactly n vertices.
    fn brute_force_classes(n: usize, min_deg: usize, max_deg: usize) -> BTreeSet<Vec<u8>> {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
        let mut classes = BTreeSet::new();
        for mask in 0u64..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            if !g.is_connected() || g.min_degree() < min_deg || g.max_degree() > max_deg {
                continue;
            }
            classes.insert(canonical_certificate(&g).unwrap().0);
        }
        classes
    }

    #[test]
    fn completeness_matches_brute_force_up_to_six() {
        for n in 1..=6 {
            for min_deg in [0, 2] {
                let oracle = brute_force_classes(n, min_deg, 4);
                let got: BTreeSet<Vec<u8>> = enumerate_compact(&config(n, min_deg))
                    .unwrap()
                    .into_iter()
                    .filter(|(_, g)| g.n as usize == n)
                    .map(|(c, _)| c.0)
                    .collect();
                assert_eq!(got, oracle, "mismatch at n = {}, min_deg = {}", n, min_deg);
            }
        }
    }

    #[test]
    fn no_duplicate_certificates() {
        let got = enumerate_compact(&config(7, 0)).unwrap();
        let mut seen = BTreeSet::new();
        for (c, _) in &got {
            assert!(seen.insert(c.0.clone()));
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_compact(&config(12, 2)),
            Err(SearchError::CapExceeded { .. })
        ));
        let mut c = config(12, 2);
        c.max_n = 17;
        c.override_cap = true;
        assert!(matches!(enumerate_compact(&c), Err(SearchError::CapExceeded { .. })));
    }

    #[test]
    fn prune_decisions() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(matches!(lemma_prune(&k4), PruneDecision::Cut(_)));
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(lemma_prune(&p3), PruneDecision::Cut("leaf_vertex"));
        let pet = catalog::named("petersen").unwrap();
        assert_eq!(lemma_prune(&pet), PruneDecision::Keep);
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(matches!(lemma_prune(&c5), PruneDecision::Cut("deg22_on_short_cycle")));
    }

    #[test]
    fn find_flat_small() {
        // Up to 6 vertices the only flat graph with min degree 2 is C6.
        let outcome = find_ricci_flat(&config(6, 2)).unwrap();
        assert_eq!(outcome.hits.len(), 1);
        let c6: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let c6 = Graph::from_edges(6, &c6).unwrap();
        assert_eq!(outcome.hits[0].certificate, canonical_certificate(&c6).unwrap());
        assert!(outcome.hits[0].violations.is_empty());
    }

    #[test]
    fn prunes_do_not_change_results() {
        let with = find_ricci_flat(&config(7, 2)).unwrap();
        let without = find_ricci_flat(&SearchConfig {
            prune_rules: false,
            ..config(7, 2)
        })
        .unwrap();
        let a: Vec<_> = with.hits.iter().map(|h| h.certificate.clone()).collect();
        let b: Vec<_> = without.hits.iter().map(|h| h.certificate.clone()).collect();
        assert_eq!(a, b);
        assert!(with.pruned > 0);
    }

    #[test]
    fn audit_mode_confirms_prunes() {
        let outcome = find_ricci_flat(&SearchConfig {
            audit_prunes: true,
            ..config(6, 2)
        })
        .unwrap();
        assert!(outcome.audited > 0);
        assert!(outcome.audit_failures.is_empty());
    }
}
