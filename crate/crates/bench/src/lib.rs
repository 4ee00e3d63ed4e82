//! Shared inputs for the benchmark targets.
