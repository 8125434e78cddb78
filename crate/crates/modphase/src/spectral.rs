//! Spectral counting (scaffolding).
