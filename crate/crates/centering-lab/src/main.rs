use clap::Parser;

fn main() {
    // CENTERING_LAB_THREADS caps the optimizer worker count; results do not
    // depend on it
    if let Ok(v) = std::env::var("CENTERING_LAB_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
    let cli = centering_lab::cli::Cli::parse();
    std::process::exit(centering_lab::cli::run(cli));
}
