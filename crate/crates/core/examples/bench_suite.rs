//! Runs a small benchmark suite and prints one JSON record per cell.
//!
//! `cargo run -p blocklis --example bench_suite --release`

use blocklis::workbench::{parse_suite, run_suite, write_records, SuiteOptions};

const SUITE: &str = r#"
# family x methods; each pair is one cell
{"family":{"kind":"random","n":2000,"sigma":4,"seed":1},"methods":[{"method":"exact"},{"method":"estimate","rate":{"num":1,"den":2},"seed":7}]}
{"family":{"kind":"permutation","n":5000,"seed":2},"methods":[{"method":"exact"}]}
{"family":{"kind":"planted","n":3000,"sigma":8,"planted_len":1000,"seed":3},"methods":[{"method":"exact"},{"method":"estimate","rate":{"num":1,"den":4}}]}
{"family":{"kind":"random","n":20000,"sigma":26,"seed":4},"methods":[{"method":"exact"}]}
"#;

fn main() {
    let entries = parse_suite(SUITE).unwrap();
    let opts = SuiteOptions {
        dp_guard: 10_000_000,
        jobs: 2,
    };
    let records = run_suite(&entries, &opts).unwrap();
    write_records(&records, std::io::stdout().lock()).unwrap();
    for r in &records {
        assert!(r.violations().is_empty(), "{:?}", r.violations());
    }
    eprintln!(
        "{} records, {} bounds-only",
        records.len(),
        records.iter().filter(|r| r.bounds_only).count()
    );
}
