//! Process-wide dimension cap.

use std::sync::OnceLock;

/// Default cap on matrix side length (the Choi state of an 8-dimensional channel).
pub const DEFAULT_MAX_DIM: usize = 64;

/// Environment variable overriding [`DEFAULT_MAX_DIM`].
pub const MAX_DIM_ENV: &str = "QDIST_MAX_DIM";

/// Largest matrix side length produced by tensor products.
///
/// Read once from `QDIST_MAX_DIM`; unparsable or zero values fall back to the default.
pub fn max_dim() -> usize {
    static MAX: OnceLock<usize> = OnceLock::new();
    *MAX.get_or_init(|| {
        std::env::var(MAX_DIM_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_MAX_DIM)
    })
}
