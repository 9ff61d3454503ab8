//! Dispatch from a parsed invocation to the library, plus the exit-code
//! mapping: 0 proven/true/full, 1 refuted/false, 2 unknown, 64 usage or
//! precondition error, 65 cap or budget exceeded.

use crate::invocation::{Command, Invocation};
use crate::report::{BudgetReport, CheckReport, FunctionSpec, Report, RowReport, VerdictReport};
use arcgraph::arcs::{
    decide_arc, eval, verify_arc_witness, verify_witness, ArcVerdict, FunctionId,
    RefutationCertificate,
};
use arcgraph::graph::{
    congruence_arc, find_polygons, friends, k_bounded_arc, k_bounded_chain, subgraph_export,
    FriendsOutcome,
};
use arcgraph::outsets::{
    classify_out, enumerate_out_prefix, frobenius_of_out, in_search, OutCharacterization,
};
use arcgraph::{Error, ExplorationBudget, Natural};
use std::time::Instant;

fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } | Error::BudgetExceeded { .. } => 65,
        _ => 64,
    }
}

fn verdict_exit_code(v: &ArcVerdict) -> i32 {
    match v {
        ArcVerdict::Proven { .. } => 0,
        ArcVerdict::Refuted { .. } => 1,
        ArcVerdict::Unknown { .. } => 2,
    }
}

/// Runs the invocation and produces the report and process exit code.
pub fn execute(inv: &Invocation) -> (Report, i32) {
    let started = Instant::now();
    let (verdict, code) = match run_command(inv) {
        Ok(pair) => pair,
        Err(e) => (
            VerdictReport::Error {
                message: e.to_string(),
            },
            error_exit_code(&e),
        ),
    };

    let mut inputs: Vec<String> = inv.naturals.iter().map(|n| n.to_string()).collect();
    if let Some(r) = &inv.residue {
        inputs.push(r.to_string());
    }
    if let Some(k) = inv.k_bound {
        inputs.push(k.to_string());
    }
    if let Some(w) = &inv.verify {
        inputs.push(w.to_string());
    }

    let report = Report {
        command: inv.command.name().to_string(),
        function: inv.function.as_ref().map(FunctionSpec::of),
        inputs,
        verdict,
        budget: BudgetReport::of(&inv.budget),
        version: env!("CARGO_PKG_VERSION").to_string(),
        elapsed_ms: started.elapsed().as_millis() as u64,
    };
    (report, code)
}

fn run_command(inv: &Invocation) -> Result<(VerdictReport, i32), Error> {
    let budget = &inv.budget;
    match inv.command {
        Command::Eval => {
            let f = inv.function.as_ref().expect("parser requires --g");
            let value = eval(f, &inv.naturals[0], budget)?;
            Ok((
                VerdictReport::Value {
                    value: value.to_string(),
                },
                0,
            ))
        }
        Command::Arc => {
            let f = inv.function.as_ref().expect("parser requires --g");
            let n = &inv.naturals[0];
            let u = &inv.naturals[1];
            if let Some(w) = &inv.verify {
                let valid = verify_arc_witness(f, n, u, w, budget)?;
                return Ok((
                    VerdictReport::WitnessCheck { valid },
                    if valid { 0 } else { 1 },
                ));
            }
            let verdict = if let Some(r) = &inv.residue {
                congruence_arc(f, n, r, u, budget)?
            } else if let Some(k) = inv.k_bound {
                k_bounded_arc(f, n, u, k, budget)?
            } else {
                decide_arc(f, n, u, budget)?
            };
            let code = verdict_exit_code(&verdict);
            Ok((VerdictReport::of_arc(&verdict, budget), code))
        }
        Command::Witness => {
            let f = inv.function.as_ref().expect("parser requires --g");
            let verdict = decide_arc(f, &inv.naturals[0], &inv.naturals[1], budget)?;
            let code = verdict_exit_code(&verdict);
            Ok((VerdictReport::of_arc(&verdict, budget), code))
        }
        Command::Out => {
            let f = inv.function.as_ref().expect("parser requires --g");
            let kind = classify_out(f, &inv.naturals[0], budget)?;
            let code = i32::from(!matches!(kind, OutCharacterization::Full { .. }));
            Ok((VerdictReport::of_classification(&kind), code))
        }
        Command::Frobenius => {
            let f = inv.function.as_ref().expect("parser requires --g");
            match frobenius_of_out(f, &inv.naturals[0], budget) {
                Ok(Some(value)) => Ok((
                    VerdictReport::Frobenius {
                        value: value.to_string(),
                    },
                    0,
                )),
                Ok(None) => Ok((
                    VerdictReport::NoFrobenius {
                        reason: "every positive target is reachable".to_string(),
                    },
                    0,
                )),
                Err(Error::NoFrobeniusNumber { reason }) => {
                    Ok((VerdictReport::NoFrobenius { reason }, 1))
                }
                Err(e) => Err(e),
            }
        }
        Command::Prefix => {
            let f = inv.function.as_ref().expect("parser requires --g");
            let u_max = budget.checked_input("u_max", &inv.naturals[1])?;
            let rows = enumerate_out_prefix(f, &inv.naturals[0], u_max, budget)?;
            Ok((row_report(&rows, budget), 0))
        }
        Command::In => {
            let f = inv.function.as_ref().expect("parser requires --g");
            let m_max = budget.checked_input("m_max", &inv.naturals[1])?;
            let rows = in_search(f, &inv.naturals[0], m_max, budget)?;
            Ok((row_report(&rows, budget), 0))
        }
        Command::Friends => {
            let f = inv.function.as_ref().expect("parser requires --g");
            let v = friends(f, &inv.naturals[0], &inv.naturals[1], budget)?;
            let (outcome, code) = match v.outcome() {
                FriendsOutcome::Mutual => ("mutual", 0),
                FriendsOutcome::NotMutual => ("not-mutual", 1),
                FriendsOutcome::Undetermined => ("undetermined", 2),
            };
            Ok((
                VerdictReport::Friends {
                    forward: Box::new(VerdictReport::of_arc(&v.forward, budget)),
                    backward: Box::new(VerdictReport::of_arc(&v.backward, budget)),
                    outcome: outcome.to_string(),
                },
                code,
            ))
        }
        Command::Polygon => {
            let f = inv.function.as_ref().expect("parser requires --g");
            let bound = budget.checked_input("vertex_bound", &inv.naturals[0])?;
            let length = budget.checked_input("length", &inv.naturals[1])?;
            let polygons = find_polygons(f, bound, length, inv.max_results, budget)?;
            let code = i32::from(polygons.is_empty());
            Ok((
                VerdictReport::Polygons {
                    polygons: polygons
                        .iter()
                        .map(|p| p.vertices.iter().map(|v| v.to_string()).collect())
                        .collect(),
                },
                code,
            ))
        }
        Command::Chain => {
            let f = inv.function.as_ref().expect("parser requires --g");
            let k = budget.checked_input("k", &inv.naturals[1])?;
            let steps = budget.checked_input("steps", &inv.naturals[2])?;
            let chain = k_bounded_chain(f, &inv.naturals[0], k, steps, budget)?;
            Ok((
                VerdictReport::Chain {
                    vertices: chain.iter().map(|v| v.to_string()).collect(),
                },
                0,
            ))
        }
        Command::Subgraph => {
            let f = inv.function.as_ref().expect("parser requires --g");
            let bound = budget.checked_input("vertex_bound", &inv.naturals[0])?;
            let edges = subgraph_export(f, bound, budget)?;
            Ok((
                VerdictReport::Subgraph {
                    edges: edges
                        .iter()
                        .map(|e| crate::report::EdgeReport {
                            from: e.from.to_string(),
                            to: e.to.to_string(),
                            verdict: VerdictReport::of_arc(&e.verdict, budget),
                        })
                        .collect(),
                },
                0,
            ))
        }
        Command::Selftest => {
            let checks = run_selftest();
            let all_ok = checks.iter().all(|c| c.ok);
            Ok((
                VerdictReport::Selftest { checks },
                if all_ok { 0 } else { 1 },
            ))
        }
    }
}

fn row_report(rows: &[(Natural, ArcVerdict)], budget: &ExplorationBudget) -> VerdictReport {
    VerdictReport::Rows {
        rows: rows
            .iter()
            .map(|(x, v)| RowReport {
                input: x.to_string(),
                verdict: VerdictReport::of_arc(v, budget),
            })
            .collect(),
    }
}

fn check(name: &str, run: impl FnOnce() -> Result<(), String>) -> CheckReport {
    match run() {
        Ok(()) => CheckReport {
            name: name.to_string(),
            ok: true,
            detail: None,
        },
        Err(detail) => CheckReport {
            name: name.to_string(),
            ok: false,
            detail: Some(detail),
        },
    }
}

fn nat(x: u64) -> Natural {
    Natural::from(x)
}

/// Fixed regression vectors; `selftest` exits 0 exactly when all pass.
fn run_selftest() -> Vec<CheckReport> {
    let budget = ExplorationBudget::default();
    let sb10 = FunctionId::SumDigits { base: 10 };

    vec![
        check("digit-sum-values", || {
            let cases: [(u64, u64, u32, u64); 3] =
                [(123, 10, 1, 6), (123, 5, 1, 11), (123, 10, 2, 14)];
            for (n, b, e, want) in cases {
                let got =
                    arcgraph::arith::power_digit_sum(&nat(n), b, e).map_err(|e| e.to_string())?;
                if got != nat(want) {
                    return Err(format!(
                        "digit power sum of {n} in base {b}: {got}, want {want}"
                    ));
                }
            }
            Ok(())
        }),
        check("digit-sum-refutation-33-3", || {
            match decide_arc(&sb10, &nat(33), &nat(3), &budget).map_err(|e| e.to_string())? {
                ArcVerdict::Refuted {
                    certificate: RefutationCertificate::ModularExhaustion { .. },
                } => Ok(()),
                other => Err(format!("expected table refutation, got {other:?}")),
            }
        }),
        check("digit-sum-witness-ladder", || {
            for u in (3..=30u64).step_by(3) {
                match decide_arc(&sb10, &nat(3), &nat(u), &budget).map_err(|e| e.to_string())? {
                    ArcVerdict::Proven { witness } => {
                        let ok = verify_witness(&sb10, &nat(3), &nat(u), &witness, &budget)
                            .map_err(|e| e.to_string())?;
                        if !ok {
                            return Err(format!("witness for target {u} fails verification"));
                        }
                        if u == 6 && witness.value() != nat(33) {
                            return Err(format!(
                                "deterministic witness for target 6 should be 33, got {}",
                                witness.value()
                            ));
                        }
                    }
                    other => return Err(format!("target {u}: expected proof, got {other:?}")),
                }
            }
            Ok(())
        }),
        check("pair-construction-base-2", || {
            let pair = arcgraph::arcs::construct_sb_pair(2, &nat(3), &budget)
                .map_err(|e| e.to_string())?;
            let (a, b) = (pair.a.value(), pair.b.value());
            if a != nat(84) || b != nat(180) {
                return Err(format!("expected (84, 180), got ({a}, {b})"));
            }
            Ok(())
        }),
        check("full-out-set-base-10", || {
            match classify_out(&sb10, &nat(40), &budget).map_err(|e| e.to_string())? {
                OutCharacterization::Full { .. } => Ok(()),
                other => Err(format!("expected full out-set, got {other:?}")),
            }
        }),
        check("divisor-count-tail-frobenius", || {
            match frobenius_of_out(&FunctionId::Tau, &nat(8), &budget).map_err(|e| e.to_string())? {
                Some(v) if v == nat(3) => Ok(()),
                other => Err(format!("expected 3, got {other:?}")),
            }
        }),
        check("divisor-count-gap", || {
            match decide_arc(&FunctionId::Tau, &nat(6), &nat(5), &budget)
                .map_err(|e| e.to_string())?
            {
                ArcVerdict::Refuted { .. } => Ok(()),
                other => Err(format!("expected refutation, got {other:?}")),
            }
        }),
        check("distinct-prime-threshold", || {
            let one = decide_arc(&FunctionId::Omega, &nat(12), &nat(1), &budget)
                .map_err(|e| e.to_string())?;
            if !one.is_refuted() {
                return Err(format!("target 1 should be refuted, got {one:?}"));
            }
            let two = decide_arc(&FunctionId::Omega, &nat(12), &nat(2), &budget)
                .map_err(|e| e.to_string())?;
            if !two.is_proven() {
                return Err(format!("target 2 should be proven, got {two:?}"));
            }
            Ok(())
        }),
        check("multiplicity-padding", || {
            match decide_arc(&FunctionId::BigOmega, &nat(12), &nat(5), &budget)
                .map_err(|e| e.to_string())?
            {
                ArcVerdict::Proven { witness } => {
                    let ok =
                        verify_witness(&FunctionId::BigOmega, &nat(12), &nat(5), &witness, &budget)
                            .map_err(|e| e.to_string())?;
                    if ok {
                        Ok(())
                    } else {
                        Err("padded witness fails verification".to_string())
                    }
                }
                other => Err(format!("expected proof, got {other:?}")),
            }
        }),
        check("coin-representation", || {
            let (x, y) =
                arcgraph::arcs::solve_coin_representation(3, 4, 6).map_err(|e| e.to_string())?;
            if (x, y) != (2, 0) {
                return Err(format!("expected (2, 0), got ({x}, {y})"));
            }
            Ok(())
        }),
    ]
}
