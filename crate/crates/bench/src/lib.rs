//! Criterion benches for dq-core live in benches/; nothing is exported.
