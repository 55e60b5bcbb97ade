//! Solver-independent re-validation of report documents.
//!
//! The checker rebuilds the two lazy measures from their definition, checks
//! the embedded coupling's marginals and cost, the potential's Lipschitz
//! property against BFS distances, and the zero duality gap — everything a
//! report claims, using only graph distances and exact arithmetic. It never
//! calls the transport solver.

use std::collections::BTreeMap;
use std::str::FromStr;

use ricciflat_core::{EdgeRef, Graph, Rational};

use crate::report::{EdgeReportDoc, ReportDocument};

#[derive(Debug)]
pub struct VerifyFailure {
    pub edge: (usize, usize),
    pub what: String,
}

pub fn verify_report(doc: &ReportDocument) -> Result<(), Vec<VerifyFailure>> {
    let mut failures = Vec::new();
    let graph = match doc.graph.to_graph() {
        Ok(g) => g,
        Err(e) => {
            return Err(vec![VerifyFailure { edge: (0, 0), what: format!("bad graph: {}", e) }])
        }
    };
    for edge in &doc.edges {
        if let Err(what) = verify_edge(&graph, edge) {
            failures.push(VerifyFailure { edge: (edge.u, edge.v), what });
        }
    }
    let all_flat = doc.edges.iter().all(|e| e.flat);
    if doc.flat != all_flat {
        failures.push(VerifyFailure {
            edge: (0, 0),
            what: format!("summary flag flat={} disagrees with edge entries", doc.flat),
        });
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures)
    }
}

fn rat(s: &str) -> Result<Rational, String> {
    Rational::from_str(s).map_err(|e| e.to_string())
}

/// The lazy measure from its definition; no engine involvement.
fn lazy_measure_terms(g: &Graph, x: usize, alpha: &Rational) -> BTreeMap<usize, Rational> {
    let mut out = BTreeMap::new();
    let d = g.degree(x);
    if !alpha.is_zero() {
        out.insert(x, alpha.clone());
    }
    if !alpha.is_one() {
        let share = &(&Rational::one() - alpha) / &Rational::from_integer(d as i64);
        for &y in g.neighbors(x) {
            *out.entry(y).or_default() += &share;
        }
    }
    out
}

fn verify_edge(g: &Graph, e: &EdgeReportDoc) -> Result<(), String> {
    if !g.has_edge(e.u, e.v) {
        return Err("report edge not present in graph".to_owned());
    }
    let edge = EdgeRef::new(e.u, e.v);
    let dmax = g.degree(edge.u).max(g.degree(edge.v));
    let alpha_star = rat(&e.alpha_star)?;
    if alpha_star != Rational::new(1, dmax as i64 + 1) {
        return Err(format!("alpha_star {} is not 1/(max degree + 1)", e.alpha_star));
    }
    let w = rat(&e.w)?;
    let k = rat(&e.k)?;

    // k = (1 - W) / (1 - alpha*), exactly.
    let expected_k = &(&Rational::one() - &w) / &(&Rational::one() - &alpha_star);
    if k != expected_k {
        return Err(format!("k = {} does not equal (1 - W)/(1 - alpha*) = {}", k, expected_k));
    }
    if e.flat != k.is_zero() {
        return Err("flat flag disagrees with k".to_owned());
    }

    let mu1 = lazy_measure_terms(g, e.u, &alpha_star);
    let mu2 = lazy_measure_terms(g, e.v, &alpha_star);

    // Coupling: nonnegative entries, exact marginals, cost equal to W.
    let mut rows: BTreeMap<usize, Rational> = BTreeMap::new();
    let mut cols: BTreeMap<usize, Rational> = BTreeMap::new();
    let mut cost = Rational::zero();
    for (x, y, m) in &e.coupling {
        let m = rat(m)?;
        if m.is_negative() {
            return Err(format!("negative coupling mass at ({}, {})", x, y));
        }
        *rows.entry(*x).or_default() += &m;
        *cols.entry(*y).or_default() += &m;
        if x != y {
            let d = g.distance(*x, *y).ok_or("disconnected coupling pair")?;
            cost += &(&m * &Rational::from_integer(d as i64));
        }
    }
    if rows != mu1 {
        return Err("coupling row marginals differ from the first measure".to_owned());
    }
    if cols != mu2 {
        return Err("coupling column marginals differ from the second measure".to_owned());
    }
    if cost != w {
        return Err(format!("coupling cost {} differs from W = {}", cost, w));
    }

    // Potential: 1-Lipschitz on the support union, dual objective equal W.
    let mut f: BTreeMap<usize, Rational> = BTreeMap::new();
    for (v, val) in &e.potential {
        f.insert(*v, rat(val)?);
    }
    let mut support: Vec<usize> = mu1.keys().chain(mu2.keys()).copied().collect();
    support.sort_unstable();
    support.dedup();
    for &p in &support {
        if !f.contains_key(&p) {
            return Err(format!("potential missing support vertex {}", p));
        }
    }
    for &p in &support {
        for &q in &support {
            if p == q {
                continue;
            }
            let d = g.distance(p, q).ok_or("disconnected support pair")?;
            if &(&f[&p] - &f[&q]) > &Rational::from_integer(d as i64) {
                return Err(format!("potential violates 1-Lipschitz on ({}, {})", p, q));
            }
        }
    }
    let mut dual = Rational::zero();
    for (v, m) in &mu1 {
        dual += &(&f[v] * m);
    }
    for (v, m) in &mu2 {
        dual -= &(&f[v] * m);
    }
    if dual != w {
        return Err(format!("dual objective {} differs from W = {} (nonzero gap)", dual, w));
    }
    Ok(())
}
