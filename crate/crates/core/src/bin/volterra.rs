fn main() {
    volterra_series::cli::init_logging();
    let code = volterra_series::cli::run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
