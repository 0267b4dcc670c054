fn main() {
    let outcome = dold_cli::run_command(std::env::args_os());
    print!("{}", outcome.output);
    std::process::exit(outcome.code);
}
