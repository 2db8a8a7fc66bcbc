fn main() {
    if let Some(threads) = std::env::var("RANDSET_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    std::process::exit(randset::cli::run_command(std::env::args_os()));
}
