//! Benchmarks live in `benches/`; run them with `cargo bench -p qutrit-mub-bench`.
