//! Machine-readable reports. Every number that can be large travels as a
//! decimal string; structs keep a fixed field order so identical
//! invocations serialize to identical JSON (the trailing timing field is
//! the one component comparisons must ignore).

use arcgraph::arcs::{ArcVerdict, FunctionId, RefutationCertificate, Witness};
use arcgraph::outsets::{EqualityStatus, OutCharacterization};
use arcgraph::ExplorationBudget;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub function: Option<FunctionSpec>,
    pub inputs: Vec<String>,
    pub verdict: VerdictReport,
    pub budget: BudgetReport,
    pub version: String,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionSpec {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub e: Option<u32>,
}

impl FunctionSpec {
    pub fn of(f: &FunctionId) -> FunctionSpec {
        match f {
            FunctionId::SumDigits { base } => FunctionSpec {
                name: "sb".into(),
                b: Some(*base),
                e: None,
            },
            FunctionId::HappySum { base, exponent } => FunctionSpec {
                name: "happy".into(),
                b: Some(*base),
                e: Some(*exponent),
            },
            FunctionId::Tau => FunctionSpec {
                name: "tau".into(),
                b: None,
                e: None,
            },
            FunctionId::Omega => FunctionSpec {
                name: "omega".into(),
                b: None,
                e: None,
            },
            FunctionId::BigOmega => FunctionSpec {
                name: "bigomega".into(),
                b: None,
                e: None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub oracle_k_max: u64,
    pub dp_state_cap: u64,
    pub max_witness_digits: u64,
    pub input_cap: u64,
}

impl BudgetReport {
    pub fn of(b: &ExplorationBudget) -> BudgetReport {
        BudgetReport {
            oracle_k_max: b.oracle_k_max,
            dp_state_cap: b.dp_state_cap,
            max_witness_digits: b.max_witness_digits,
            input_cap: b.input_cap,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    /// Present whenever the value fits the witness digit budget.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub decimal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub base: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub digits: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub factorization: Option<Vec<FactorEntry>>,
    pub digit_estimate: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub prime: String,
    pub exponent: u64,
}

impl WitnessReport {
    pub fn of(w: &Witness, budget: &ExplorationBudget) -> WitnessReport {
        let decimal = w.decimal_if_within(budget.max_witness_digits);
        let (base, digits) = match w {
            Witness::Digits(d) => (Some(d.base()), Some(d.to_msf_string())),
            _ => (None, None),
        };
        let factorization = match w {
            Witness::Factored(f) => Some(
                f.factors()
                    .iter()
                    .map(|(p, e)| FactorEntry {
                        prime: p.to_string(),
                        exponent: *e,
                    })
                    .collect(),
            ),
            _ => None,
        };
        WitnessReport {
            decimal,
            base,
            digits,
            factorization,
            digit_estimate: w.digit_estimate(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum CertificateReport {
    ResidueClass {
        modulus: String,
    },
    BelowMinimum {
        minimum: String,
    },
    ModularExhaustion {
        base: u64,
        modulus: u64,
        target_sum: u64,
        residue: u64,
        preperiod: u64,
        period: u64,
    },
    DivisorSearchExhaustion {
        target: u64,
        slot_minima: Vec<u64>,
        tuples_searched: u64,
    },
    ExhaustiveScan {
        limit: String,
    },
}

impl CertificateReport {
    pub fn of(c: &RefutationCertificate) -> CertificateReport {
        match c {
            RefutationCertificate::ResidueClass { d } => CertificateReport::ResidueClass {
                modulus: d.to_string(),
            },
            RefutationCertificate::BelowMinimum { minimum } => CertificateReport::BelowMinimum {
                minimum: minimum.to_string(),
            },
            RefutationCertificate::ModularExhaustion { params } => {
                CertificateReport::ModularExhaustion {
                    base: params.base,
                    modulus: params.modulus,
                    target_sum: params.target_sum,
                    residue: params.residue,
                    preperiod: params.preperiod,
                    period: params.period,
                }
            }
            RefutationCertificate::TauFactorizationExhaustion { search } => {
                CertificateReport::DivisorSearchExhaustion {
                    target: search.target,
                    slot_minima: search.slot_minima.clone(),
                    tuples_searched: search.tuples_searched,
                }
            }
            RefutationCertificate::ExhaustiveScan { limit } => CertificateReport::ExhaustiveScan {
                limit: limit.to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum EqualityReport {
    Established,
    StrictWitness { missing: String },
    Undecided { horizon: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowReport {
    pub input: String,
    pub verdict: VerdictReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeReport {
    pub from: String,
    pub to: String,
    pub verdict: VerdictReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum VerdictReport {
    Value {
        value: String,
    },
    Proven {
        witness: WitnessReport,
    },
    Refuted {
        certificate: CertificateReport,
    },
    Unknown {
        budget_spent: String,
    },
    WitnessCheck {
        valid: bool,
    },
    Full {
        reason: String,
    },
    ExactTail {
        minimum: String,
    },
    Cofinite {
        frobenius: String,
        proven_bound: String,
    },
    ResidueConstrained {
        modulus: String,
        equality: EqualityReport,
    },
    InfiniteNotCofinite {
        minimum: String,
    },
    Frobenius {
        value: String,
    },
    NoFrobenius {
        reason: String,
    },
    Rows {
        rows: Vec<RowReport>,
    },
    Friends {
        forward: Box<VerdictReport>,
        backward: Box<VerdictReport>,
        outcome: String,
    },
    Polygons {
        polygons: Vec<Vec<String>>,
    },
    Chain {
        vertices: Vec<String>,
    },
    Subgraph {
        edges: Vec<EdgeReport>,
    },
    Selftest {
        checks: Vec<CheckReport>,
    },
    Error {
        message: String,
    },
}

impl VerdictReport {
    pub fn of_arc(v: &ArcVerdict, budget: &ExplorationBudget) -> VerdictReport {
        match v {
            ArcVerdict::Proven { witness } => VerdictReport::Proven {
                witness: WitnessReport::of(witness, budget),
            },
            ArcVerdict::Refuted { certificate } => VerdictReport::Refuted {
                certificate: CertificateReport::of(certificate),
            },
            ArcVerdict::Unknown { budget_spent } => VerdictReport::Unknown {
                budget_spent: budget_spent.clone(),
            },
        }
    }

    pub fn of_classification(k: &OutCharacterization) -> VerdictReport {
        match k {
            OutCharacterization::Full { reason } => VerdictReport::Full {
                reason: reason.clone(),
            },
            OutCharacterization::ExactTail { minimum } => VerdictReport::ExactTail {
                minimum: minimum.to_string(),
            },
            OutCharacterization::CofiniteComputed {
                frobenius,
                proven_bound,
            } => VerdictReport::Cofinite {
                frobenius: frobenius.to_string(),
                proven_bound: proven_bound.to_string(),
            },
            OutCharacterization::ResidueConstrained { d, equality } => {
                VerdictReport::ResidueConstrained {
                    modulus: d.to_string(),
                    equality: match equality {
                        EqualityStatus::Established => EqualityReport::Established,
                        EqualityStatus::StrictWitness { u } => EqualityReport::StrictWitness {
                            missing: u.to_string(),
                        },
                        EqualityStatus::UndecidedWithinBound { horizon } => {
                            EqualityReport::Undecided {
                                horizon: horizon.to_string(),
                            }
                        }
                    },
                }
            }
            OutCharacterization::InfiniteNotCofinite { minimum } => {
                VerdictReport::InfiniteNotCofinite {
                    minimum: minimum.to_string(),
                }
            }
        }
    }
}

fn write_witness(out: &mut String, w: &WitnessReport, indent: &str) {
    if let Some(decimal) = &w.decimal {
        let _ = writeln!(out, "{indent}witness: {decimal}");
    } else {
        let _ = writeln!(
            out,
            "{indent}witness: about {} decimal digits (not materialized)",
            w.digit_estimate
        );
    }
    if let (Some(base), Some(digits)) = (&w.base, &w.digits) {
        let _ = writeln!(out, "{indent}base-{base} digits: {digits}");
    }
    if let Some(factors) = &w.factorization {
        let rendered: Vec<String> = factors
            .iter()
            .map(|f| {
                if f.exponent == 1 {
                    f.prime.clone()
                } else {
                    format!("{}^{}", f.prime, f.exponent)
                }
            })
            .collect();
        let _ = writeln!(out, "{indent}factorization: {}", rendered.join(" * "));
    }
}

fn write_certificate(out: &mut String, c: &CertificateReport, indent: &str) {
    match c {
        CertificateReport::ResidueClass { modulus } => {
            let _ = writeln!(
                out,
                "{indent}certificate: target is outside the residue class forced modulo {modulus}"
            );
        }
        CertificateReport::BelowMinimum { minimum } => {
            let _ = writeln!(
                out,
                "{indent}certificate: every multiple scores at least {minimum}"
            );
        }
        CertificateReport::ModularExhaustion {
            base,
            modulus,
            target_sum,
            residue,
            preperiod,
            period,
        } => {
            let _ = writeln!(
                out,
                "{indent}certificate: reachability table is empty at the target \
                 (base {base}, modulus {modulus}, target {target_sum}, residue {residue}, \
                 preperiod {preperiod}, period {period})"
            );
        }
        CertificateReport::DivisorSearchExhaustion {
            target,
            slot_minima,
            tuples_searched,
        } => {
            let _ = writeln!(
                out,
                "{indent}certificate: no divisor assignment reaches {target} \
                 (slot minima {slot_minima:?}, {tuples_searched} tuples searched)"
            );
        }
        CertificateReport::ExhaustiveScan { limit } => {
            let _ = writeln!(
                out,
                "{indent}certificate: every multiple up to {limit} was checked"
            );
        }
    }
}

fn write_verdict(out: &mut String, v: &VerdictReport, indent: &str) {
    let deeper = format!("{indent}  ");
    match v {
        VerdictReport::Value { value } => {
            let _ = writeln!(out, "{indent}value: {value}");
        }
        VerdictReport::Proven { witness } => {
            let _ = writeln!(out, "{indent}verdict: proven");
            write_witness(out, witness, &deeper);
        }
        VerdictReport::Refuted { certificate } => {
            let _ = writeln!(out, "{indent}verdict: refuted");
            write_certificate(out, certificate, &deeper);
        }
        VerdictReport::Unknown { budget_spent } => {
            let _ = writeln!(out, "{indent}verdict: unknown ({budget_spent})");
        }
        VerdictReport::WitnessCheck { valid } => {
            let _ = writeln!(
                out,
                "{indent}witness check: {}",
                if *valid { "valid" } else { "invalid" }
            );
        }
        VerdictReport::Full { reason } => {
            let _ = writeln!(out, "{indent}out-set: full ({reason})");
        }
        VerdictReport::ExactTail { minimum } => {
            let _ = writeln!(out, "{indent}out-set: every target >= {minimum}");
        }
        VerdictReport::Cofinite {
            frobenius,
            proven_bound,
        } => {
            let _ = writeln!(
                out,
                "{indent}out-set: cofinite, largest absent target {frobenius} \
                 (exact sweep up to {proven_bound})"
            );
        }
        VerdictReport::ResidueConstrained { modulus, equality } => {
            let eq = match equality {
                EqualityReport::Established => "exactly the positive multiples".to_string(),
                EqualityReport::StrictWitness { missing } => {
                    format!("strictly inside them ({missing} is unreachable)")
                }
                EqualityReport::Undecided { horizon } => {
                    format!("tightness undecided below {horizon}")
                }
            };
            let _ = writeln!(
                out,
                "{indent}out-set: contained in the multiples of {modulus}, {eq}"
            );
        }
        VerdictReport::InfiniteNotCofinite { minimum } => {
            let _ = writeln!(
                out,
                "{indent}out-set: infinite but not cofinite (minimum {minimum})"
            );
        }
        VerdictReport::Frobenius { value } => {
            let _ = writeln!(out, "{indent}frobenius: {value}");
        }
        VerdictReport::NoFrobenius { reason } => {
            let _ = writeln!(out, "{indent}frobenius: none ({reason})");
        }
        VerdictReport::Rows { rows } => {
            for row in rows {
                let _ = writeln!(out, "{indent}{}:", row.input);
                write_verdict(out, &row.verdict, &deeper);
            }
        }
        VerdictReport::Friends {
            forward,
            backward,
            outcome,
        } => {
            let _ = writeln!(out, "{indent}outcome: {outcome}");
            let _ = writeln!(out, "{indent}forward:");
            write_verdict(out, forward, &deeper);
            let _ = writeln!(out, "{indent}backward:");
            write_verdict(out, backward, &deeper);
        }
        VerdictReport::Polygons { polygons } => {
            let _ = writeln!(out, "{indent}polygons found: {}", polygons.len());
            for p in polygons {
                let _ = writeln!(out, "{indent}  {}", p.join(" -> "));
            }
        }
        VerdictReport::Chain { vertices } => {
            let _ = writeln!(out, "{indent}chain: {}", vertices.join(" -> "));
        }
        VerdictReport::Subgraph { edges } => {
            for e in edges {
                let kind = match &e.verdict {
                    VerdictReport::Proven { .. } => "proven",
                    VerdictReport::Refuted { .. } => "refuted",
                    _ => "unknown",
                };
                let _ = writeln!(out, "{indent}{} -> {}: {kind}", e.from, e.to);
            }
        }
        VerdictReport::Selftest { checks } => {
            for c in checks {
                let status = if c.ok { "ok" } else { "FAILED" };
                let _ = writeln!(out, "{indent}{status}  {}", c.name);
                if let Some(detail) = &c.detail {
                    let _ = writeln!(out, "{indent}    {detail}");
                }
            }
        }
        VerdictReport::Error { message } => {
            let _ = writeln!(out, "{indent}error: {message}");
        }
    }
}

/// Human-readable rendering of a report.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command: {}", report.command);
    if let Some(f) = &report.function {
        let mut line = format!("function: {}", f.name);
        if let Some(b) = f.b {
            let _ = write!(line, " (base {b}");
            if let Some(e) = f.e {
                let _ = write!(line, ", exponent {e}");
            }
            line.push(')');
        }
        let _ = writeln!(out, "{line}");
    }
    if !report.inputs.is_empty() {
        let _ = writeln!(out, "inputs: {}", report.inputs.join(" "));
    }
    write_verdict(&mut out, &report.verdict, "");
    let _ = writeln!(
        out,
        "budget: k_max {} dp_cap {} witness_digits {} input_cap {}",
        report.budget.oracle_k_max,
        report.budget.dp_state_cap,
        report.budget.max_witness_digits,
        report.budget.input_cap
    );
    let _ = write!(out, "elapsed: {} ms", report.elapsed_ms);
    out
}
