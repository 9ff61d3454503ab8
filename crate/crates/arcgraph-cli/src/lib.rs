//! Command-line front end: parse an invocation, run it against the
//! library, and emit one report (text or JSON) plus a meaningful exit
//! code. Parsing and execution are plain functions over their inputs so
//! the whole surface is testable without spawning processes.

mod execute;
mod invocation;
mod report;

pub use execute::execute;
pub use invocation::{
    parse_invocation, parse_invocation_with_env, Command, Invocation, OutputFormat, UsageError,
};
pub use report::{render_text, Report, VerdictReport};

pub const USAGE: &str = "\
usage: arcgraph <command> --g <function> [flags] <naturals...>

commands:
  eval       <n>                 evaluate the function at n
  arc        <n> <u>             decide whether some multiple of n scores u
  witness    <n> <u>             like arc, emphasizing the witness
  out        <n>                 classify the set of reachable targets
  frobenius  <n>                 largest unreachable target, when one exists
  prefix     <n> <u_max>         decide every target up to u_max
  in         <u> <m_max>         which sources up to m_max reach target u
  friends    <a> <b>             decide both directions between a and b
  polygon    <bound> <len>       directed cycles of the given length
  chain      <start> <k> <steps> greedy increasing chain exploration
  subgraph   <bound>             decide every ordered pair up to bound
  selftest                       run the built-in regression vectors

functions (--g): sb (needs --b), happy (needs --b and --e),
                 tau, omega, bigomega

arc-only flags: --residue <r>   restrict witnesses to r mod n
                --k-bound <k>   scan only the first k multiples
                --verify <w>    check a claimed witness instead of searching
other flags:    --max-results <m> (polygon), --format text|json
budget flags:   --k-max, --dp-cap, --max-witness-digits, --input-cap
                (environment fallbacks ARCGRAPH_K_MAX, ARCGRAPH_DP_CAP,
                 ARCGRAPH_MAX_WITNESS_DIGITS, ARCGRAPH_INPUT_CAP)

exit codes: 0 proven/true/full, 1 refuted/false, 2 unknown,
            64 usage or precondition error, 65 cap or budget exceeded";

/// Full CLI entry point: returns the process exit code.
pub fn run<E>(args: Vec<String>, env: E) -> i32
where
    E: Fn(&str) -> std::result::Result<String, std::env::VarError>,
{
    let inv = match parse_invocation_with_env(&args, |key| env(key).ok()) {
        Ok(inv) => inv,
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!();
            eprintln!("{USAGE}");
            return 64;
        }
    };
    let (report, code) = execute(&inv);
    let rendered = match inv.format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&report).expect("reports always serialize")
        }
        OutputFormat::Text => render_text(&report),
    };
    println!("{rendered}");
    code
}
