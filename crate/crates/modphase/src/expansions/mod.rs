//! Per-face asymptotic evaluators (scaffolding).
