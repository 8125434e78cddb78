//! Differentiated expansions (scaffolding).
