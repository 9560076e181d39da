//! Report types shared by the CLI: serializable structures plus a plain
//! text renderer. The structured output is JSON with a stable field
//! order, so identical runs produce byte-identical reports.

use serde::Serialize;

use crate::bismut::SktVerdict;
use crate::catalog::CatalogRow;
use crate::compose::{CertificateStatus, IrreducibilityCertificate, PlanStep};
use crate::decomp::{Codim2Data, Codim2Report};
use crate::exactnum::{RatMatrix, Rational, Subspace};
use crate::forms::AlternatingForm;
use crate::hermitian::HermitianTriple;
use crate::laws::{LawReport, Severity};
use crate::search::{SearchConfig, SearchResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Structured,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Self::Text),
            "structured" => Ok(Self::Structured),
            other => Err(format!("unknown format `{other}` (use text|structured)")),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FormTermOut {
    pub indices: Vec<usize>,
    pub coeff: String,
}

pub fn form_terms(form: &AlternatingForm) -> Vec<FormTermOut> {
    form.terms()
        .map(|(t, c)| FormTermOut {
            indices: t.to_vec(),
            coeff: c.to_string(),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SubspaceOut {
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
}

pub fn subspace_out(s: &Subspace) -> SubspaceOut {
    SubspaceOut {
        dim: s.dim(),
        basis: s
            .basis_rows()
            .iter()
            .map(|row| row.iter().map(Rational::to_string).collect())
            .collect(),
    }
}

pub fn matrix_out(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(Rational::to_string).collect())
        .collect()
}

pub fn vector_out(v: &[Rational]) -> Vec<String> {
    v.iter().map(Rational::to_string).collect()
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LawCheckOut {
    pub name: String,
    pub passed: bool,
    pub soft: bool,
    pub details: Option<String>,
}

pub fn law_checks_out(report: &LawReport) -> Vec<LawCheckOut> {
    report
        .checks
        .iter()
        .map(|c| LawCheckOut {
            name: c.name.to_string(),
            passed: c.passed,
            soft: c.severity == Severity::Soft,
            details: c.details.clone(),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ValidationOut {
    pub jacobi: bool,
    pub j_square: bool,
    pub integrable: bool,
    pub compatible: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct VerifyReport {
    pub file: String,
    pub dim: usize,
    pub validated: ValidationOut,
    pub nilpotency_step: Option<usize>,
    pub center: SubspaceOut,
    pub derived: SubspaceOut,
    pub z_part: SubspaceOut,
    pub v_part: SubspaceOut,
    pub abelian_j: bool,
    pub abelian_j_witness: Option<(usize, usize)>,
    pub is_skt: bool,
    pub torsion_c: Vec<FormTermOut>,
    pub dc: Vec<FormTermOut>,
    pub dc_sq_norm: String,
    pub laws: Vec<LawCheckOut>,
    pub falsifications: Vec<String>,
}

impl VerifyReport {
    pub fn build(
        file: &str,
        triple: &HermitianTriple,
        verdict: &SktVerdict,
        laws: &LawReport,
    ) -> Self {
        let flags = triple.flags();
        let split = crate::decomp::vz_split(triple);
        let abelian = triple.is_abelian_j();
        Self {
            file: file.to_string(),
            dim: triple.dim(),
            validated: ValidationOut {
                jacobi: flags.jacobi,
                j_square: flags.j_square,
                integrable: flags.integrable,
                compatible: flags.compatible,
            },
            nilpotency_step: triple.algebra().nilpotency().step(),
            center: subspace_out(&triple.algebra().center()),
            derived: subspace_out(&triple.algebra().derived()),
            z_part: subspace_out(&split.z),
            v_part: subspace_out(&split.v),
            abelian_j: abelian.abelian,
            abelian_j_witness: abelian.witness,
            is_skt: verdict.is_skt,
            torsion_c: form_terms(&verdict.c),
            dc: form_terms(&verdict.dc),
            dc_sq_norm: verdict.dc.sq_norm().to_string(),
            laws: law_checks_out(laws),
            falsifications: laws
                .falsifications()
                .iter()
                .map(|c| format!("{}: {}", c.name, c.details.clone().unwrap_or_default()))
                .collect(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("file: {}\n", self.file));
        out.push_str(&format!("dimension: {}\n", self.dim));
        out.push_str(&format!(
            "validated: jacobi={} j_square={} integrable={} compatible={}\n",
            self.validated.jacobi,
            self.validated.j_square,
            self.validated.integrable,
            self.validated.compatible
        ));
        match self.nilpotency_step {
            Some(k) => out.push_str(&format!("nilpotency step: {k}\n")),
            None => out.push_str("nilpotency step: not nilpotent\n"),
        }
        out.push_str(&format!(
            "center: dim {}, derived: dim {}\n",
            self.center.dim, self.derived.dim
        ));
        out.push_str(&format!(
            "v (+) z split: dim {} (+) dim {}\n",
            self.v_part.dim, self.z_part.dim
        ));
        out.push_str(&format!("abelian complex structure: {}", self.abelian_j));
        if let Some((a, b)) = self.abelian_j_witness {
            out.push_str(&format!(" (witness pair ({a},{b}))"));
        }
        out.push('\n');
        out.push_str(&format!("torsion c ({} terms):\n", self.torsion_c.len()));
        for term in &self.torsion_c {
            out.push_str(&format!("  e^{:?} -> {}\n", term.indices, term.coeff));
        }
        out.push_str(&format!("SKT: {}\n", self.is_skt));
        if !self.dc.is_empty() {
            out.push_str(&format!(
                "dc is nonzero on {} tuples (squared norm {}):\n",
                self.dc.len(),
                self.dc_sq_norm
            ));
            for term in &self.dc {
                out.push_str(&format!("  e^{:?} -> {}\n", term.indices, term.coeff));
            }
        }
        if !self.laws.is_empty() {
            out.push_str("structure checks:\n");
            for law in &self.laws {
                let tag = if law.passed {
                    "pass"
                } else if law.soft {
                    "WARN"
                } else {
                    "FALSIFIED"
                };
                out.push_str(&format!("  {:<34} {}\n", law.name, tag));
            }
        }
        for f in &self.falsifications {
            out.push_str(&format!("FALSIFICATION: {f}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CatalogListReport {
    pub entries: Vec<CatalogRowOut>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CatalogRowOut {
    pub name: String,
    pub dim: usize,
    pub step: usize,
    pub abelian_j: bool,
    pub is_skt: bool,
}

impl CatalogListReport {
    pub fn build(rows: &[CatalogRow]) -> Self {
        Self {
            entries: rows
                .iter()
                .map(|r| CatalogRowOut {
                    name: r.name.to_string(),
                    dim: r.dim,
                    step: r.step,
                    abelian_j: r.abelian_j,
                    is_skt: r.is_skt,
                })
                .collect(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<16} {:>4} {:>5} {:>10} {:>7}\n",
            "name", "dim", "step", "abelian_j", "skt"
        ));
        for e in &self.entries {
            out.push_str(&format!(
                "{:<16} {:>4} {:>5} {:>10} {:>7}\n",
                e.name, e.dim, e.step, e.abelian_j, e.is_skt
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ComposeReport {
    pub left: String,
    pub right: String,
    pub output_dim: usize,
    pub r: String,
    pub s: String,
    pub x_choice: Vec<String>,
    pub y_choice: Vec<String>,
    pub is_skt: bool,
    pub nilpotency_step: Option<usize>,
    pub center_dim: usize,
    pub derived_dim: usize,
    pub abelian_j: bool,
    pub abelian_j_predicted: bool,
    pub irreducibility: String,
    pub evidence_left: Vec<String>,
    pub evidence_right: Vec<String>,
    pub output_file: Option<String>,
}

impl ComposeReport {
    #[allow(clippy::too_many_arguments)]
    pub fn build(
        left: &str,
        right: &str,
        composed: &crate::compose::Composed,
        certificate: &IrreducibilityCertificate,
        predicted_abelian: bool,
        output_file: Option<&str>,
    ) -> Self {
        let triple = &composed.triple;
        Self {
            left: left.to_string(),
            right: right.to_string(),
            output_dim: triple.dim(),
            r: composed.spec.r.to_string(),
            s: composed.spec.s.to_string(),
            x_choice: vector_out(&composed.spec.x_choice),
            y_choice: vector_out(&composed.spec.y_choice),
            is_skt: composed.verdict.is_skt,
            nilpotency_step: triple.algebra().nilpotency().step(),
            center_dim: triple.algebra().center().dim(),
            derived_dim: triple.algebra().derived().dim(),
            abelian_j: triple.is_abelian_j().abelian,
            abelian_j_predicted: predicted_abelian,
            irreducibility: match certificate.status {
                CertificateStatus::Certified => "certified".to_string(),
                CertificateStatus::Decomposable { zero_side } => {
                    format!("decomposable ({zero_side} projection vanishes)")
                }
                CertificateStatus::Inconclusive => "inconclusive".to_string(),
            },
            evidence_left: vector_out(&certificate.evidence.0),
            evidence_right: vector_out(&certificate.evidence.1),
            output_file: output_file.map(str::to_string),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "composed {} (+) {} -> dimension {}\n",
            self.left, self.right, self.output_dim
        ));
        out.push_str(&format!("scales: r = {}, s = {}\n", self.r, self.s));
        out.push_str(&format!(
            "SKT: {} (step {:?}, center dim {}, derived dim {})\n",
            self.is_skt, self.nilpotency_step, self.center_dim, self.derived_dim
        ));
        out.push_str(&format!(
            "abelian J: {} (predicted {})\n",
            self.abelian_j, self.abelian_j_predicted
        ));
        out.push_str(&format!("irreducibility: {}\n", self.irreducibility));
        if let Some(f) = &self.output_file {
            out.push_str(&format!("written to: {f}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct IterateReport {
    pub target_dim: usize,
    pub seeds: Vec<String>,
    pub plan: Vec<PlanStepOut>,
    pub final_dim: usize,
    pub is_skt: bool,
    pub output_file: Option<String>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct PlanStepOut {
    pub left_dim: usize,
    pub seed_index: usize,
    pub result_dim: usize,
}

impl IterateReport {
    pub fn build(
        target: usize,
        seeds: &[String],
        plan: &[PlanStep],
        final_dim: usize,
        is_skt: bool,
        output_file: Option<&str>,
    ) -> Self {
        Self {
            target_dim: target,
            seeds: seeds.to_vec(),
            plan: plan
                .iter()
                .map(|p| PlanStepOut {
                    left_dim: p.left_dim,
                    seed_index: p.seed_index,
                    result_dim: p.result_dim,
                })
                .collect(),
            final_dim,
            is_skt,
            output_file: output_file.map(str::to_string),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "iterated composition to dimension {} from seeds {:?}\n",
            self.target_dim, self.seeds
        ));
        for step in &self.plan {
            out.push_str(&format!(
                "  {} (+) seed #{} -> {}\n",
                step.left_dim, step.seed_index, step.result_dim
            ));
        }
        out.push_str(&format!(
            "final dimension {}, SKT: {}\n",
            self.final_dim, self.is_skt
        ));
        if let Some(f) = &self.output_file {
            out.push_str(&format!("written to: {f}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SplitReport {
    pub file: String,
    pub complement: (usize, usize),
    pub ideal_dim: usize,
    pub embedding: Vec<usize>,
    pub adjoint_a: Vec<Vec<String>>,
    pub adjoint_b: Vec<Vec<String>>,
    pub x_vector: Vec<String>,
    pub ambient_is_skt: bool,
    pub restriction_is_skt: bool,
    pub checks: Vec<LawCheckOut>,
}

impl SplitReport {
    pub fn build(
        file: &str,
        data: &Codim2Data,
        ambient_is_skt: bool,
        restriction_is_skt: bool,
        checks: &Codim2Report,
    ) -> Self {
        Self {
            file: file.to_string(),
            complement: data.complement,
            ideal_dim: data.n.dim(),
            embedding: data.embedding.clone(),
            adjoint_a: matrix_out(&data.a_mat),
            adjoint_b: matrix_out(&data.b_mat),
            x_vector: vector_out(&data.x_vec),
            ambient_is_skt,
            restriction_is_skt,
            checks: checks
                .checks
                .iter()
                .map(|c| LawCheckOut {
                    name: c.name.to_string(),
                    passed: c.passed,
                    soft: false,
                    details: c.details.clone(),
                })
                .collect(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "split of {} along plane ({}, {})\n",
            self.file, self.complement.0, self.complement.1
        ));
        out.push_str(&format!(
            "ideal dimension {}, embedding {:?}\n",
            self.ideal_dim, self.embedding
        ));
        out.push_str(&format!("A = {:?}\n", self.adjoint_a));
        out.push_str(&format!("B = {:?}\n", self.adjoint_b));
        out.push_str(&format!("X = {:?}\n", self.x_vector));
        out.push_str(&format!(
            "ambient SKT: {}, restriction SKT: {}\n",
            self.ambient_is_skt, self.restriction_is_skt
        ));
        for check in &self.checks {
            out.push_str(&format!(
                "  {:<34} {}\n",
                check.name,
                if check.passed { "pass" } else { "FALSIFIED" }
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SearchReport {
    pub file: String,
    pub starts: usize,
    pub max_iters: usize,
    pub tol: f64,
    pub rng_seed: u64,
    pub converged: bool,
    pub best_residual: f64,
    pub metric_positive_definite: bool,
    pub metric_compat_error: f64,
    pub best_metric: Vec<Vec<f64>>,
    pub per_start: Vec<StartOut>,
    pub falsification: Option<String>,
    pub note: String,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct StartOut {
    pub seed: u64,
    pub residual: f64,
    pub iterations: usize,
}

impl SearchReport {
    pub fn build(file: &str, config: &SearchConfig, result: &SearchResult) -> Self {
        Self {
            file: file.to_string(),
            starts: config.starts,
            max_iters: config.max_iters,
            tol: config.tol,
            rng_seed: config.rng_seed,
            converged: result.converged,
            best_residual: result.best_residual,
            metric_positive_definite: result.metric_positive_definite,
            metric_compat_error: result.metric_compat_error,
            best_metric: result.best_metric.clone(),
            per_start: result
                .per_start
                .iter()
                .map(|r| StartOut {
                    seed: r.seed,
                    residual: r.residual,
                    iterations: r.iterations,
                })
                .collect(),
            falsification: result.falsification.clone(),
            note: if result.converged {
                "a residual below tolerance is numerical evidence of an SKT metric; \
                 rational reconstruction can make it exact"
                    .to_string()
            } else {
                "non-convergence is evidence, not proof, that no SKT metric exists"
                    .to_string()
            },
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "metric search on {} ({} starts, tol {:e}, seed {})\n",
            self.file, self.starts, self.tol, self.rng_seed
        ));
        out.push_str(&format!(
            "converged: {} (best residual {:e})\n",
            self.converged, self.best_residual
        ));
        out.push_str(&format!(
            "best metric: positive definite {}, compat error {:e}\n",
            self.metric_positive_definite, self.metric_compat_error
        ));
        out.push_str("per-start results (residual, iterations):\n");
        for s in &self.per_start {
            out.push_str(&format!(
                "  seed {:<8} {:>14.6e} {:>7}\n",
                s.seed, s.residual, s.iterations
            ));
        }
        if let Some(f) = &self.falsification {
            out.push_str(&format!("FALSIFICATION: {f}\n"));
        }
        out.push_str(&format!("note: {}\n", self.note));
        out
    }
}

/// Serializes any report as stable pretty JSON.
pub fn to_structured<T: Serialize>(report: &T) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    text
}
