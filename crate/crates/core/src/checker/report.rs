use std::fmt::Write;

use serde::Serialize;

use crate::deduction::DerivationTree;
use crate::lang::ast::PropKind;
use crate::lang::diag::Diagnostic;
use crate::production::{FactId, ProductionGraph};
use crate::schema::{ExportedSchema, PropNumber};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Rejected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeductionNode {
    pub label: String,
    pub rule: String,
    pub judgments: Vec<String>,
    pub premises: Vec<FactId>,
    pub facts: Vec<FactId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoalStatus {
    pub judgment: String,
    pub fact: Option<FactId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub number: PropNumber,
    pub kind: PropKind,
    pub verdict: Verdict,
    pub diagnostics: Vec<Diagnostic>,
    pub exported_schema: Option<ExportedSchema>,
    pub fact_count: usize,
    pub diagrammatic_posits: Vec<String>,
    /// Segments used only as parts of an already drawn line.
    pub chain_segments: Vec<String>,
    pub primitive_dependencies: Vec<PropNumber>,
    pub production_trace: ProductionGraph,
    pub deduction_trace: Vec<DeductionNode>,
    pub reconstructed_specification: Option<String>,
    pub reconstructed_conclusion: Option<String>,
    pub goals: Vec<GoalStatus>,
    pub goal_provenance: Vec<DerivationTree>,
}

impl VerificationReport {
    pub fn new(number: PropNumber, kind: PropKind) -> Self {
        VerificationReport {
            number,
            kind,
            verdict: Verdict::Rejected,
            diagnostics: Vec::new(),
            exported_schema: None,
            fact_count: 0,
            diagrammatic_posits: Vec::new(),
            chain_segments: Vec::new(),
            primitive_dependencies: Vec::new(),
            production_trace: ProductionGraph::default(),
            deduction_trace: Vec::new(),
            reconstructed_specification: None,
            reconstructed_conclusion: None,
            goals: Vec::new(),
            goal_provenance: Vec::new(),
        }
    }

    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }

    pub fn render_text(&self, trace: bool) -> String {
        let mut out = String::new();
        let verdict = match self.verdict {
            Verdict::Verified => "verified",
            Verdict::Rejected => "rejected",
        };
        writeln!(
            out,
            "{} {}: {verdict} ({} facts)",
            self.kind.keyword(),
            self.number,
            self.fact_count
        )
        .ok();
        for d in &self.diagnostics {
            writeln!(out, "  error {d}").ok();
        }
        if let Some(s) = &self.reconstructed_specification {
            writeln!(out, "  specification (reconstructed): {s}").ok();
        }
        if let Some(s) = &self.reconstructed_conclusion {
            writeln!(out, "  conclusion (reconstructed): {s}").ok();
        }
        for p in &self.diagrammatic_posits {
            writeln!(out, "  diagram: {p}").ok();
        }
        if !self.chain_segments.is_empty() {
            writeln!(out, "  chain segments: {}", self.chain_segments.join(", ")).ok();
        }
        for p in &self.primitive_dependencies {
            writeln!(out, "  uses primitive {p}").ok();
        }
        if trace {
            writeln!(out, "  production:").ok();
            for i in self.production_trace.topological_order() {
                let n = &self.production_trace.nodes[i];
                writeln!(
                    out,
                    "    [{}] {}({}) -> {}",
                    n.step.0,
                    n.op,
                    n.inputs.join(", "),
                    n.outputs.join(", ")
                )
                .ok();
            }
            writeln!(out, "  deduction:").ok();
            for n in &self.deduction_trace {
                writeln!(
                    out,
                    "    {}: {} by {}",
                    n.label,
                    n.judgments.join(", "),
                    n.rule
                )
                .ok();
            }
            writeln!(out, "  provenance:").ok();
            for t in &self.goal_provenance {
                for line in t.render().lines() {
                    writeln!(out, "    {line}").ok();
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimitiveEntry {
    pub number: PropNumber,
    pub statement: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoryReport {
    pub name: String,
    pub reports: Vec<VerificationReport>,
    pub primitives: Vec<PrimitiveEntry>,
    pub verdict: Verdict,
}

impl TheoryReport {
    pub fn verified_count(&self) -> usize {
        self.reports.iter().filter(|r| r.is_verified()).count()
    }

    pub fn rejected_count(&self) -> usize {
        self.reports.len() - self.verified_count()
    }

    /// For example `4 verified, 1 primitive (1.4)`.
    pub fn summary(&self) -> String {
        let mut s = format!("{} verified", self.verified_count());
        if self.rejected_count() > 0 {
            write!(s, ", {} rejected", self.rejected_count()).ok();
        }
        if !self.primitives.is_empty() {
            let nums: Vec<String> = self
                .primitives
                .iter()
                .map(|p| p.number.to_string())
                .collect();
            write!(s, ", {} primitive ({})", nums.len(), nums.join(", ")).ok();
        }
        s
    }

    pub fn render_text(&self, trace: bool) -> String {
        let mut out = format!("theory {:?}\n", self.name);
        for p in &self.primitives {
            writeln!(
                out,
                "primitive theorem {}: admitted without proof",
                p.number
            )
            .ok();
        }
        for r in &self.reports {
            out.push_str(&r.render_text(trace));
        }
        writeln!(out, "{}", self.summary()).ok();
        out
    }
}
