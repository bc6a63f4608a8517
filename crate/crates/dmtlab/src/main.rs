use clap::Parser;
use dmtlab::cli::{run, Cli};

fn main() {
    // Optional worker-count cap; the default pool uses all cores.
    if let Ok(raw) = std::env::var("DMTLAB_THREADS") {
        if let Ok(n) = raw.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
    std::process::exit(run(Cli::parse()));
}
