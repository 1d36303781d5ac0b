use std::io::Write;

fn main() {
    let cache = std::env::var_os(pidiv::cli::CACHE_ENV).map(Into::into);
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let code = pidiv::cli::run(std::env::args_os(), cache, &mut out, &mut stderr.lock());
    let _ = out.flush();
    drop(out);
    std::process::exit(code);
}
