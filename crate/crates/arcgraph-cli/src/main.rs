fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let code = arcgraph_cli::run(args, |key: &str| std::env::var(key));
    std::process::exit(code);
}
