//! Runs the lazy pipeline over the bundled corpus and prints the result
//! tables.
//!
//!     cargo run -p feq --example solve_corpus

use feq::runner::{render_report, run_lazy, PipelineOptions, ReportFormat};

fn main() {
    let corpus = feq::load_corpus().expect("bundled corpus loads");
    let opts = PipelineOptions {
        all_templates: true,
        ..PipelineOptions::default()
    };
    let reports: Vec<_> = corpus.iter().map(|p| run_lazy(p, &opts)).collect();
    print!("{}", render_report(&reports, ReportFormat::Text));
}
