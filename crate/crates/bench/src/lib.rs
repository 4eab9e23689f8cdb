//! Criterion benchmarks for `pt-floquet`; run with `cargo bench -p pt-floquet-bench`.
