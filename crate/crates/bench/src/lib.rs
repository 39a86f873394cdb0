//! Benchmarks for the enumeration, coset and zeta kernels; see `benches/`.
