//! JSON report documents. Reports are self-contained: the graph, every
//! coupling and every potential are embedded, so a checker can re-validate
//! all claims without running the solver.

use ricciflat_core::curvature::CurvatureReport;
use ricciflat_core::structure::{EdgeLocalType, Violation};
use ricciflat_core::transport::{Coupling, Potential};
use ricciflat_core::{Graph, Rational};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl GraphDoc {
    pub fn of(g: &Graph) -> Self {
        GraphDoc {
            n: g.n(),
            edges: g.edges().collect(),
            name: g.name().map(str::to_owned),
        }
    }

    pub fn to_graph(&self) -> Result<Graph, ricciflat_core::GraphError> {
        Ok(match &self.name {
            Some(name) => Graph::from_edges(self.n, &self.edges)?.with_name(name),
            None => Graph::from_edges(self.n, &self.edges)?,
        })
    }
}

/// `[x, y, "p/q"]` rows of a coupling.
pub fn coupling_doc(c: &Coupling) -> Vec<(usize, usize, String)> {
    c.iter().map(|((x, y), m)| (x, y, m.to_string())).collect()
}

/// `[v, "p/q"]` rows of a potential.
pub fn potential_doc(p: &Potential) -> Vec<(usize, String)> {
    p.iter().map(|(v, r)| (v, r.to_string())).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeReportDoc {
    pub u: usize,
    pub v: usize,
    pub k: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_decimal: Option<String>,
    pub alpha_star: String,
    pub w: String,
    pub flat: bool,
    /// k at the explicitly requested idleness, when one was given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_alpha: Option<String>,
    pub coupling: Vec<(usize, usize, String)>,
    pub potential: Vec<(usize, String)>,
}

impl EdgeReportDoc {
    pub fn of(r: &CurvatureReport, decimal: bool) -> Self {
        EdgeReportDoc {
            u: r.edge.u,
            v: r.edge.v,
            k: r.k_star.to_string(),
            k_decimal: decimal.then(|| r.k_star.to_decimal_string(6)),
            alpha_star: r.alpha_star.to_string(),
            w: r.certificate.value.to_string(),
            flat: r.flat,
            k_alpha: None,
            coupling: coupling_doc(&r.certificate.primal),
            potential: potential_doc(&r.certificate.dual),
        }
    }

    pub fn with_k_alpha(mut self, k: &Rational) -> Self {
        self.k_alpha = Some(k.to_string());
        self
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassificationDoc {
    pub u: usize,
    pub v: usize,
    pub tag: String,
    pub bindings: Vec<(String, usize)>,
    pub distance_facts: Vec<DistanceFactDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistanceFactDoc {
    pub a: usize,
    pub b: usize,
    pub required: String,
    pub observed: usize,
}

impl ClassificationDoc {
    pub fn of(c: &EdgeLocalType) -> Self {
        ClassificationDoc {
            u: c.edge.u,
            v: c.edge.v,
            tag: c.tag.id().to_owned(),
            bindings: c.bindings.iter().map(|&(r, v)| (r.to_owned(), v)).collect(),
            distance_facts: c
                .distance_facts
                .iter()
                .map(|f| DistanceFactDoc {
                    a: f.a,
                    b: f.b,
                    required: f.required.to_string(),
                    observed: f.observed,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ViolationDoc {
    pub rule: String,
    pub u: usize,
    pub v: usize,
    pub detail: String,
}

impl ViolationDoc {
    pub fn of(v: &Violation) -> Self {
        ViolationDoc {
            rule: v.rule.to_owned(),
            u: v.edge.u,
            v: v.edge.v,
            detail: v.detail.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StructureDoc {
    pub classifications: Vec<ClassificationDoc>,
    pub violations: Vec<ViolationDoc>,
    pub type5b_excluded: bool,
}

/// Top-level report produced by the curvature/check/classify commands.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub input: String,
    pub graph: GraphDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    pub edges: Vec<EdgeReportDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureDoc>,
    pub flat: bool,
}

pub fn tool_version() -> String {
    format!("ricciflat {}", env!("CARGO_PKG_VERSION"))
}

pub fn render(doc: &ReportDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
    s.push('\n');
    s
}
