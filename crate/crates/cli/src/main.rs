fn main() {
    let (out, code) = lndfilt_cli::run_args(std::env::args_os());
    if !out.is_empty() {
        if code == lndfilt_cli::report::EXIT_USAGE && !out.starts_with('{') {
            eprintln!("{out}");
        } else {
            println!("{out}");
        }
    }
    std::process::exit(code);
}
