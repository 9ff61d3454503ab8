//! Argument parsing. The grammar is small and hand-rolled so that every
//! usage error names the offending token and parsing stays a pure
//! function of (argv, environment), which keeps it directly testable.

use arcgraph::arcs::FunctionId;
use arcgraph::{ExplorationBudget, Natural};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Eval,
    Arc,
    Witness,
    Out,
    Frobenius,
    Prefix,
    In,
    Friends,
    Polygon,
    Chain,
    Subgraph,
    Selftest,
}

impl Command {
    fn from_token(tok: &str) -> Option<Command> {
        Some(match tok {
            "eval" => Command::Eval,
            "arc" => Command::Arc,
            "witness" => Command::Witness,
            "out" => Command::Out,
            "frobenius" => Command::Frobenius,
            "prefix" => Command::Prefix,
            "in" => Command::In,
            "friends" => Command::Friends,
            "polygon" => Command::Polygon,
            "chain" => Command::Chain,
            "subgraph" => Command::Subgraph,
            "selftest" => Command::Selftest,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Command::Eval => "eval",
            Command::Arc => "arc",
            Command::Witness => "witness",
            Command::Out => "out",
            Command::Frobenius => "frobenius",
            Command::Prefix => "prefix",
            Command::In => "in",
            Command::Friends => "friends",
            Command::Polygon => "polygon",
            Command::Chain => "chain",
            Command::Subgraph => "subgraph",
            Command::Selftest => "selftest",
        }
    }

    /// How many positional naturals the command takes.
    fn arity(self) -> usize {
        match self {
            Command::Eval | Command::Out | Command::Frobenius | Command::Subgraph => 1,
            Command::Arc
            | Command::Witness
            | Command::Prefix
            | Command::In
            | Command::Friends
            | Command::Polygon => 2,
            Command::Chain => 3,
            Command::Selftest => 0,
        }
    }

    fn takes_function(self) -> bool {
        !matches!(self, Command::Selftest)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

/// A fully validated command line, ready to execute.
#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub command: Command,
    pub function: Option<FunctionId>,
    pub naturals: Vec<Natural>,
    pub residue: Option<Natural>,
    pub k_bound: Option<u64>,
    pub verify: Option<Natural>,
    pub max_results: usize,
    pub format: OutputFormat,
    pub budget: ExplorationBudget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(out, "{}", self.0)
    }
}

fn parse_natural(tok: &str) -> Result<Natural, UsageError> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(UsageError(format!("malformed natural number '{tok}'")));
    }
    tok.parse::<Natural>()
        .map_err(|_| UsageError(format!("malformed natural number '{tok}'")))
}

fn parse_u64(flag: &str, tok: &str) -> Result<u64, UsageError> {
    tok.parse::<u64>()
        .map_err(|_| UsageError(format!("{flag} expects an unsigned integer, got '{tok}'")))
}

/// Parses argv against the real process environment.
pub fn parse_invocation(argv: &[String]) -> Result<Invocation, UsageError> {
    parse_invocation_with_env(argv, |key| std::env::var(key).ok())
}

/// Parses argv with an explicit environment lookup. Budget values come
/// from flags first, then environment variables, then defaults.
pub fn parse_invocation_with_env(
    argv: &[String],
    env: impl Fn(&str) -> Option<String>,
) -> Result<Invocation, UsageError> {
    let mut tokens = argv.iter().map(String::as_str);
    let first = tokens
        .next()
        .ok_or_else(|| UsageError("missing command".to_string()))?;
    let command = Command::from_token(first)
        .ok_or_else(|| UsageError(format!("unknown command '{first}'")))?;

    let mut g_name: Option<String> = None;
    let mut base: Option<u64> = None;
    let mut exponent: Option<u32> = None;
    let mut positionals: Vec<Natural> = Vec::new();
    let mut residue: Option<Natural> = None;
    let mut k_bound: Option<u64> = None;
    let mut verify: Option<Natural> = None;
    let mut max_results: Option<u64> = None;
    let mut format = OutputFormat::Text;
    let mut flag_k_max: Option<u64> = None;
    let mut flag_dp_cap: Option<u64> = None;
    let mut flag_witness_digits: Option<u64> = None;
    let mut flag_input_cap: Option<u64> = None;

    while let Some(tok) = tokens.next() {
        if let Some(flag) = tok.strip_prefix("--") {
            let mut value_for = |name: &str| {
                tokens
                    .next()
                    .map(str::to_string)
                    .ok_or_else(|| UsageError(format!("--{name} expects a value")))
            };
            match flag {
                "g" => g_name = Some(value_for("g")?),
                "b" => base = Some(parse_u64("--b", &value_for("b")?)?),
                "e" => {
                    let raw = value_for("e")?;
                    let parsed = raw.parse::<u32>().map_err(|_| {
                        UsageError(format!("--e expects an unsigned integer, got '{raw}'"))
                    })?;
                    exponent = Some(parsed);
                }
                "residue" => residue = Some(parse_natural(&value_for("residue")?)?),
                "k-bound" => k_bound = Some(parse_u64("--k-bound", &value_for("k-bound")?)?),
                "verify" => verify = Some(parse_natural(&value_for("verify")?)?),
                "max-results" => {
                    max_results = Some(parse_u64("--max-results", &value_for("max-results")?)?)
                }
                "format" => {
                    let raw = value_for("format")?;
                    format = match raw.as_str() {
                        "text" => OutputFormat::Text,
                        "json" => OutputFormat::Json,
                        _ => {
                            return Err(UsageError(format!(
                                "--format expects 'text' or 'json', got '{raw}'"
                            )));
                        }
                    };
                }
                "k-max" => flag_k_max = Some(parse_u64("--k-max", &value_for("k-max")?)?),
                "dp-cap" => flag_dp_cap = Some(parse_u64("--dp-cap", &value_for("dp-cap")?)?),
                "max-witness-digits" => {
                    flag_witness_digits = Some(parse_u64(
                        "--max-witness-digits",
                        &value_for("max-witness-digits")?,
                    )?)
                }
                "input-cap" => {
                    flag_input_cap = Some(parse_u64("--input-cap", &value_for("input-cap")?)?)
                }
                _ => return Err(UsageError(format!("unknown flag '--{flag}'"))),
            }
        } else {
            positionals.push(parse_natural(tok)?);
        }
    }

    let function = if command.takes_function() {
        let name = g_name
            .as_deref()
            .ok_or_else(|| UsageError("missing --g".to_string()))?;
        Some(resolve_function(name, base, exponent)?)
    } else {
        if g_name.is_some() || base.is_some() || exponent.is_some() {
            return Err(UsageError(format!(
                "{} takes no function flags",
                command.name()
            )));
        }
        None
    };

    if positionals.len() != command.arity() {
        return Err(UsageError(format!(
            "{} expects {} positional argument{}, got {}",
            command.name(),
            command.arity(),
            if command.arity() == 1 { "" } else { "s" },
            positionals.len()
        )));
    }

    if command != Command::Arc {
        if residue.is_some() {
            return Err(UsageError("--residue only applies to arc".to_string()));
        }
        if k_bound.is_some() {
            return Err(UsageError("--k-bound only applies to arc".to_string()));
        }
        if verify.is_some() {
            return Err(UsageError("--verify only applies to arc".to_string()));
        }
    }
    let arc_modes = [residue.is_some(), k_bound.is_some(), verify.is_some()];
    if arc_modes.iter().filter(|&&m| m).count() > 1 {
        return Err(UsageError(
            "--residue, --k-bound and --verify are mutually exclusive".to_string(),
        ));
    }
    if max_results.is_some() && command != Command::Polygon {
        return Err(UsageError(
            "--max-results only applies to polygon".to_string(),
        ));
    }

    let env_u64 = |key: &str| -> Result<Option<u64>, UsageError> {
        match env(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<u64>()
                .map(Some)
                .map_err(|_| UsageError(format!("{key} expects an unsigned integer, got '{raw}'"))),
        }
    };

    let defaults = ExplorationBudget::default();
    let budget = ExplorationBudget {
        oracle_k_max: flag_k_max
            .or(env_u64("ARCGRAPH_K_MAX")?)
            .unwrap_or(defaults.oracle_k_max),
        dp_state_cap: flag_dp_cap
            .or(env_u64("ARCGRAPH_DP_CAP")?)
            .unwrap_or(defaults.dp_state_cap),
        max_witness_digits: flag_witness_digits
            .or(env_u64("ARCGRAPH_MAX_WITNESS_DIGITS")?)
            .unwrap_or(defaults.max_witness_digits),
        input_cap: flag_input_cap
            .or(env_u64("ARCGRAPH_INPUT_CAP")?)
            .unwrap_or(defaults.input_cap),
    };
    let budget = budget
        .validated()
        .map_err(|e| UsageError(format!("invalid budget: {e}")))?;

    Ok(Invocation {
        command,
        function,
        naturals: positionals,
        residue,
        k_bound,
        verify,
        max_results: max_results.unwrap_or(100) as usize,
        format,
        budget,
    })
}

fn resolve_function(
    name: &str,
    base: Option<u64>,
    exponent: Option<u32>,
) -> Result<FunctionId, UsageError> {
    match name {
        "sb" => {
            if exponent.is_some() {
                return Err(UsageError("--e does not apply to sb".to_string()));
            }
            let b = base.ok_or_else(|| UsageError("missing --b".to_string()))?;
            Ok(FunctionId::SumDigits { base: b })
        }
        "happy" => {
            let b = base.ok_or_else(|| UsageError("missing --b".to_string()))?;
            let e = exponent.ok_or_else(|| UsageError("missing --e".to_string()))?;
            Ok(FunctionId::happy_sum(b, e))
        }
        "tau" | "omega" | "bigomega" => {
            if base.is_some() || exponent.is_some() {
                return Err(UsageError(format!("--b and --e do not apply to {name}")));
            }
            Ok(match name {
                "tau" => FunctionId::Tau,
                "omega" => FunctionId::Omega,
                _ => FunctionId::BigOmega,
            })
        }
        _ => Err(UsageError(format!("unknown function '{name}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn no_env(_: &str) -> Option<String> {
        None
    }

    #[test]
    fn arc_with_digit_sum_parses() {
        let inv =
            parse_invocation_with_env(&args(&["arc", "--g", "sb", "--b", "10", "33", "3"]), no_env)
                .unwrap();
        assert_eq!(inv.command, Command::Arc);
        assert_eq!(inv.function, Some(FunctionId::SumDigits { base: 10 }));
        assert_eq!(
            inv.naturals,
            vec![Natural::from(33u32), Natural::from(3u32)]
        );
        assert_eq!(inv.format, OutputFormat::Text);
    }

    #[test]
    fn eval_tau_parses() {
        let inv = parse_invocation_with_env(&args(&["eval", "--g", "tau", "8"]), no_env).unwrap();
        assert_eq!(inv.command, Command::Eval);
        assert_eq!(inv.function, Some(FunctionId::Tau));
        assert_eq!(inv.naturals, vec![Natural::from(8u32)]);
    }

    #[test]
    fn digit_sum_requires_base() {
        let err =
            parse_invocation_with_env(&args(&["arc", "--g", "sb", "33", "3"]), no_env).unwrap_err();
        assert_eq!(err.0, "missing --b");
    }

    #[test]
    fn unknown_tokens_are_named() {
        let err = parse_invocation_with_env(&args(&["conquer"]), no_env).unwrap_err();
        assert!(err.0.contains("conquer"));
        let err =
            parse_invocation_with_env(&args(&["eval", "--g", "tau", "12x"]), no_env).unwrap_err();
        assert!(err.0.contains("12x"));
        let err = parse_invocation_with_env(&args(&["eval", "--g", "tau", "8", "--turbo"]), no_env)
            .unwrap_err();
        assert!(err.0.contains("--turbo"));
    }

    #[test]
    fn arity_is_checked() {
        let err =
            parse_invocation_with_env(&args(&["arc", "--g", "tau", "33"]), no_env).unwrap_err();
        assert!(err.0.contains("expects 2"));
    }

    #[test]
    fn happy_requires_base_and_exponent() {
        let err =
            parse_invocation_with_env(&args(&["eval", "--g", "happy", "--b", "10", "5"]), no_env)
                .unwrap_err();
        assert_eq!(err.0, "missing --e");
        let inv = parse_invocation_with_env(
            &args(&["eval", "--g", "happy", "--b", "10", "--e", "2", "5"]),
            no_env,
        )
        .unwrap();
        assert_eq!(
            inv.function,
            Some(FunctionId::HappySum {
                base: 10,
                exponent: 2
            })
        );
    }

    #[test]
    fn happy_exponent_one_collapses_to_digit_sum() {
        let inv = parse_invocation_with_env(
            &args(&["eval", "--g", "happy", "--b", "10", "--e", "1", "5"]),
            no_env,
        )
        .unwrap();
        assert_eq!(inv.function, Some(FunctionId::SumDigits { base: 10 }));
    }

    #[test]
    fn budget_comes_from_flags_then_env_then_defaults() {
        let env = |key: &str| match key {
            "ARCGRAPH_K_MAX" => Some("77".to_string()),
            "ARCGRAPH_DP_CAP" => Some("123456".to_string()),
            _ => None,
        };
        let inv =
            parse_invocation_with_env(&args(&["eval", "--g", "tau", "8", "--k-max", "55"]), env)
                .unwrap();
        assert_eq!(inv.budget.oracle_k_max, 55);
        assert_eq!(inv.budget.dp_state_cap, 123456);
        assert_eq!(
            inv.budget.max_witness_digits,
            ExplorationBudget::default().max_witness_digits
        );
    }

    #[test]
    fn malformed_env_budget_is_a_usage_error() {
        let env = |key: &str| (key == "ARCGRAPH_K_MAX").then(|| "soon".to_string());
        let err = parse_invocation_with_env(&args(&["eval", "--g", "tau", "8"]), env).unwrap_err();
        assert!(err.0.contains("ARCGRAPH_K_MAX"));
    }

    #[test]
    fn arc_modes_are_mutually_exclusive() {
        let err = parse_invocation_with_env(
            &args(&[
                "arc",
                "--g",
                "sb",
                "--b",
                "10",
                "3",
                "6",
                "--residue",
                "1",
                "--verify",
                "33",
            ]),
            no_env,
        )
        .unwrap_err();
        assert!(err.0.contains("mutually exclusive"));
    }

    #[test]
    fn flags_are_rejected_on_wrong_commands() {
        let err = parse_invocation_with_env(
            &args(&["eval", "--g", "tau", "8", "--residue", "1"]),
            no_env,
        )
        .unwrap_err();
        assert!(err.0.contains("--residue"));
        let err =
            parse_invocation_with_env(&args(&["selftest", "--g", "tau"]), no_env).unwrap_err();
        assert!(err.0.contains("selftest"));
    }

    #[test]
    fn huge_naturals_parse() {
        let big = "9".repeat(200);
        let inv = parse_invocation_with_env(
            &args(&["witness", "--g", "sb", "--b", "10", &big, "4"]),
            no_env,
        )
        .unwrap();
        assert_eq!(inv.naturals[0].to_string(), big);
    }
}
