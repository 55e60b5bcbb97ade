//! Lazy random-walk measures, alpha-Ricci curvature, the Lin-Lu-Yau limit
//! curvature and its idleness profile, plus the closed forms that serve as
//! independent cross-checks.
//!
//! The limit curvature is never approximated numerically: the idleness
//! function alpha -> k_alpha is piecewise linear with its last piece running
//! from alpha* = 1/(max(d(x), d(y)) + 1) to (1, 0), so
//! k = k_{alpha*} / (1 - alpha*) exactly.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{EdgeRef, Graph};
use crate::rational::Rational;
use crate::transport::{self, Distribution, TransportError, TransportResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurvatureError {
    IsolatedVertex(usize),
    AlphaOutOfRange(Rational),
    NotAnEdge(EdgeRef),
    Disconnected,
    Transport(TransportError),
    /// The piecewise-linear shape guaranteed for the idleness function failed
    /// to verify; indicates an engine bug, not bad input.
    IdlenessShape { edge: EdgeRef },
}

impl fmt::Display for CurvatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvatureError::IsolatedVertex(v) => write!(f, "vertex {} is isolated", v),
            CurvatureError::AlphaOutOfRange(a) => write!(f, "idleness {} outside [0, 1]", a),
            CurvatureError::NotAnEdge(e) => write!(f, "{} is not an edge", e),
            CurvatureError::Disconnected => write!(f, "graph is not connected"),
            CurvatureError::Transport(e) => write!(f, "{}", e),
            CurvatureError::IdlenessShape { edge } => {
                write!(f, "idleness function of {} is not piecewise linear as required", edge)
            }
        }
    }
}

impl From<TransportError> for CurvatureError {
    fn from(e: TransportError) -> Self {
        CurvatureError::Transport(e)
    }
}

/// The measure that stays at `x` with probability `alpha` and spreads the
/// rest uniformly over the neighbors.
pub fn lazy_measure(g: &Graph, x: usize, alpha: &Rational) -> Result<Distribution, CurvatureError> {
    if alpha.is_negative() || alpha > &Rational::one() {
        return Err(CurvatureError::AlphaOutOfRange(alpha.clone()));
    }
    let d = g.degree(x);
    if d == 0 {
        return Err(CurvatureError::IsolatedVertex(x));
    }
    let mut entries = Vec::with_capacity(d + 1);
    if !alpha.is_zero() {
        entries.push((x, alpha.clone()));
    }
    if !alpha.is_one() {
        let share = &(&Rational::one() - alpha) / &Rational::from_integer(d as i64);
        for &y in g.neighbors(x) {
            entries.push((y, share.clone()));
        }
    }
    Ok(Distribution::new(entries).expect("lazy measure sums to one"))
}

/// `k_alpha(x, y) = 1 - W(mu_x^alpha, mu_y^alpha)` for an edge (so the
/// denominator d(x, y) = 1), with the transport certificate.
pub fn k_alpha(
    g: &Graph,
    e: EdgeRef,
    alpha: &Rational,
) -> Result<(Rational, TransportResult), CurvatureError> {
    if !e.in_graph(g) {
        return Err(CurvatureError::NotAnEdge(e));
    }
    let mu_x = lazy_measure(g, e.u, alpha)?;
    let mu_y = lazy_measure(g, e.v, alpha)?;
    let t = transport::wasserstein(g, &mu_x, &mu_y)?;
    Ok((&Rational::one() - &t.value, t))
}

/// The idleness value at which flatness is decided:
/// `alpha* = 1 / (max(d(x), d(y)) + 1)`.
pub fn alpha_star(g: &Graph, e: EdgeRef) -> Rational {
    let dmax = g.degree(e.u).max(g.degree(e.v));
    Rational::new(1, dmax as i64 + 1)
}

/// Per-edge curvature report: the Lin-Lu-Yau curvature, the idleness value
/// it was computed at, flatness, and the transport certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureReport {
    pub edge: EdgeRef,
    pub k_star: Rational,
    pub alpha_star: Rational,
    pub k_alpha_at: BTreeMap<Rational, Rational>,
    pub flat: bool,
    pub certificate: TransportResult,
}

/// Lin-Lu-Yau curvature of an edge, evaluated exactly at `alpha*`.
pub fn lly_curvature(g: &Graph, e: EdgeRef) -> Result<CurvatureReport, CurvatureError> {
    let a = alpha_star(g, e);
    let (k_a, cert) = k_alpha(g, e, &a)?;
    let k_star = &k_a / &(&Rational::one() - &a);
    let mut k_alpha_at = BTreeMap::new();
    k_alpha_at.insert(a.clone(), k_a);
    let flat = k_star.is_zero();
    Ok(CurvatureReport { edge: e, k_star, alpha_star: a, k_alpha_at, flat, certificate: cert })
}

/// One maximal linear piece of the idleness function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearPiece {
    pub from: (Rational, Rational),
    pub to: (Rational, Rational),
    pub slope: Rational,
}

/// The idleness function alpha -> k_alpha of an edge: exact values at the
/// theorem's anchor points and at the true kinks, plus the minimal verified
/// piecewise-linear description.
///
/// The function is concave and piecewise linear with at most three pieces,
/// linear over [0, 1/(lcm+1)] and over [1/(max+1), 1]; the interior kinks
/// may lie strictly between those two anchors (they are recovered exactly
/// here, not assumed to coincide with the anchors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdlenessProfile {
    pub edge: EdgeRef,
    /// (alpha, k_alpha) at 0, 1/(lcm+1), 1/(max+1), 1 and at every kink.
    pub breakpoints: Vec<(Rational, Rational)>,
    pub pieces: Vec<LinearPiece>,
}

impl IdlenessProfile {
    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    /// The curvature read off the final segment: k_alpha is linear on
    /// [alpha*, 1] and vanishes at 1, so k = -slope of the last piece.
    pub fn k_from_final_slope(&self) -> Rational {
        -self.pieces.last().expect("profile has pieces").slope.clone()
    }
}

fn lcm_u(a: usize, b: usize) -> usize {
    a / gcd_u(a, b) * b
}

fn gcd_u(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_u(b, a % b)
    }
}

/// A line `k = slope * alpha + intercept` in exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Line {
    slope: Rational,
    intercept: Rational,
}

impl Line {
    fn through(p: &(Rational, Rational), q: &(Rational, Rational)) -> Line {
        let slope = &(&q.1 - &p.1) / &(&q.0 - &p.0);
        let intercept = &p.1 - &(&slope * &p.0);
        Line { slope, intercept }
    }

    fn at(&self, alpha: &Rational) -> Rational {
        &(&self.slope * alpha) + &self.intercept
    }

    fn intersect(&self, other: &Line) -> Option<Rational> {
        if self.slope == other.slope {
            return None;
        }
        Some(&(&other.intercept - &self.intercept) / &(&self.slope - &other.slope))
    }
}

/// The supporting line of the idleness function extracted from a verified
/// dual potential: `k(alpha) <= 1 - sum f d(mu_x^alpha - mu_y^alpha)`, with
/// equality at the idleness the potential was solved at.
fn dual_line(g: &Graph, e: EdgeRef, f: &crate::transport::Potential) -> Line {
    let sum_over = |v: usize| -> Rational {
        let mut s = Rational::zero();
        for &z in g.neighbors(v) {
            s += f.value(z).expect("dual defined on both neighborhoods");
        }
        s
    };
    let fx = f.value(e.u).unwrap().clone();
    let fy = f.value(e.v).unwrap().clone();
    let avg_x = &sum_over(e.u) / &Rational::from_integer(g.degree(e.u) as i64);
    let avg_y = &sum_over(e.v) / &Rational::from_integer(g.degree(e.v) as i64);
    // W-line: alpha (fx - fy) + (1 - alpha)(avg_x - avg_y); k = 1 - W-line.
    let w_const = &avg_x - &avg_y;
    let w_slope = &(&fx - &fy) - &w_const;
    Line { slope: -w_slope, intercept: &Rational::one() - &w_const }
}

/// Computes the exact piecewise-linear description of alpha -> k_alpha.
///
/// The two outer pieces are pinned by the evaluations at 0, 1/(lcm+1) and
/// at 1/(max+1), 1 (midpoint-verified; for a concave function a collinear
/// midpoint forces linearity of the whole segment). Interior kinks are
/// recovered by intersecting the outer lines with the supporting line at
/// the probe point, which is the exact middle-piece line when one exists.
pub fn idleness_profile(g: &Graph, e: EdgeRef) -> Result<IdlenessProfile, CurvatureError> {
    if !e.in_graph(g) {
        return Err(CurvatureError::NotAnEdge(e));
    }
    let (dx, dy) = (g.degree(e.u), g.degree(e.v));
    let a = Rational::new(1, lcm_u(dx, dy) as i64 + 1);
    let b = Rational::new(1, dx.max(dy) as i64 + 1);
    let half = Rational::new(1, 2);
    let eval = |al: &Rational| -> Result<Rational, CurvatureError> { Ok(k_alpha(g, e, al)?.0) };
    let shape_err = || CurvatureError::IdlenessShape { edge: e };

    let k0 = eval(&Rational::zero())?;
    let ka = eval(&a)?;
    let kb = eval(&b)?;
    let k1 = eval(&Rational::one())?;
    if !k1.is_zero() {
        return Err(shape_err());
    }

    let left = Line::through(&(Rational::zero(), k0.clone()), &(a.clone(), ka.clone()));
    let right = Line::through(&(b.clone(), kb.clone()), &(Rational::one(), k1.clone()));

    // Pinned-interval linearity, verified at midpoints (sufficient by
    // concavity).
    let mid_left = &a * &half;
    if eval(&mid_left)? != left.at(&mid_left) {
        return Err(shape_err());
    }
    let mid_right = &(&b + &Rational::one()) * &half;
    if eval(&mid_right)? != right.at(&mid_right) {
        return Err(shape_err());
    }

    let mut kinks: Vec<(Rational, Rational)> = Vec::new();
    let mut lines: Vec<Line> = Vec::new();
    if left == right {
        lines.push(left.clone());
        let mid = &(&a + &b) * &half;
        if eval(&mid)? != left.at(&mid) {
            return Err(shape_err());
        }
    } else {
        // Probe where the outer lines cross (always inside [a, b] for a
        // concave function pinned on the outer intervals), or mid-window
        // when they are parallel.
        let probe = match left.intersect(&right) {
            Some(t) if t >= a && t <= b => t,
            Some(_) => return Err(shape_err()),
            None => &(&a + &b) * &half,
        };
        let k_probe = eval(&probe)?;
        let on_left = k_probe == left.at(&probe);
        let on_right = k_probe == right.at(&probe);
        if on_left && on_right {
            // Two pieces meeting at the probe.
            kinks.push((probe, k_probe));
            lines.push(left.clone());
            lines.push(right.clone());
        } else if on_left || on_right {
            return Err(shape_err());
        } else {
            // Hidden middle piece: its line is the supporting line at the
            // probe, read off the verified dual potential.
            let (_, cert) = k_alpha(g, e, &probe)?;
            let middle = dual_line(g, e, &cert.dual);
            if middle.at(&probe) != k_probe {
                return Err(shape_err());
            }
            let t1 = left.intersect(&middle).ok_or_else(shape_err)?;
            let t2 = middle.intersect(&right).ok_or_else(shape_err)?;
            if t1 < a || t1 > probe || t2 < probe || t2 > b {
                return Err(shape_err());
            }
            // The kinks must really lie on the function.
            if eval(&t1)? != left.at(&t1) || eval(&t2)? != right.at(&t2) {
                return Err(shape_err());
            }
            kinks.push((t1.clone(), left.at(&t1)));
            kinks.push((t2.clone(), right.at(&t2)));
            lines.push(left.clone());
            lines.push(middle);
            lines.push(right.clone());
        }
    }

    // Assemble maximal pieces from the kink list.
    let mut cuts: Vec<(Rational, Rational)> = alloc::vec![(Rational::zero(), k0.clone())];
    cuts.extend(kinks.iter().cloned());
    cuts.push((Rational::one(), k1.clone()));
    let mut pieces = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        pieces.push(LinearPiece {
            from: cuts[i].clone(),
            to: cuts[i + 1].clone(),
            slope: line.slope.clone(),
        });
    }
    // Concavity: slopes strictly decreasing across pieces.
    for w in pieces.windows(2) {
        if w[0].slope <= w[1].slope {
            return Err(shape_err());
        }
    }

    // Breakpoints: anchors plus kinks, ascending, with exact values.
    let mut breakpoints = alloc::vec![
        (Rational::zero(), k0),
        (a, ka),
        (b, kb),
        (Rational::one(), k1),
    ];
    breakpoints.extend(kinks);
    breakpoints.sort_by(|x, y| x.0.cmp(&y.0));
    breakpoints.dedup_by(|x, y| x.0 == y.0);

    Ok(IdlenessProfile { edge: e, breakpoints, pieces })
}

/// `k(x, y) = 2/d(x) + 2/d(y) - 2`, valid for edges on no C3, C4 or C5.
pub fn closed_form_off_short_cycles(dx: usize, dy: usize) -> Rational {
    assert!(dx >= 1 && dy >= 1);
    Rational::new(2, dx as i64) + Rational::new(2, dy as i64) - Rational::from_integer(2)
}

/// Upper bound `k(x, y) <= 1/d(x) + 2/d(y) - 1` for edges on no C3 or C4.
pub fn upper_bound_off_c3c4(dx: usize, dy: usize) -> Rational {
    assert!(dx >= 1 && dy >= 1);
    Rational::new(1, dx as i64) + Rational::new(2, dy as i64) - Rational::one()
}

/// Result of scanning a graph for Ricci-flatness.
#[derive(Debug, Clone)]
pub struct FlatnessReport {
    pub flat: bool,
    /// First edge (lexicographic) with nonzero curvature, and its value.
    pub witness: Option<(EdgeRef, Rational)>,
    /// Per-edge reports; all edges in full mode, the scanned prefix in
    /// early-exit mode.
    pub reports: Vec<CurvatureReport>,
}

/// Checks `k = 0` on every edge, stopping at the first counterexample.
pub fn is_ricci_flat(g: &Graph) -> Result<FlatnessReport, CurvatureError> {
    scan_flatness(g, true)
}

/// Full-report variant: computes every edge even after a counterexample.
pub fn is_ricci_flat_full(g: &Graph) -> Result<FlatnessReport, CurvatureError> {
    scan_flatness(g, false)
}

fn scan_flatness(g: &Graph, early_exit: bool) -> Result<FlatnessReport, CurvatureError> {
    if !g.is_connected() || g.n() == 0 {
        return Err(CurvatureError::Disconnected);
    }
    let mut reports = Vec::new();
    let mut witness = None;
    for (u, v) in g.edges() {
        let r = lly_curvature(g, EdgeRef::new(u, v))?;
        if !r.flat && witness.is_none() {
            witness = Some((r.edge, r.k_star.clone()));
            reports.push(r);
            if early_exit {
                break;
            }
        } else {
            reports.push(r);
        }
    }
    Ok(FlatnessReport { flat: witness.is_none(), witness, reports })
}
