fn main() {
    let outcome = instanton_lab_cli::run(std::env::args_os());
    let code = instanton_lab_cli::emit(&outcome, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
