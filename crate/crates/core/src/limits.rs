//! Enumeration guard shared by every exhaustive search.

/// Default cap on enumerated paths, tuples or product states.
pub const DEFAULT_RESOURCE_LIMIT: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_RESOURCE_LIMIT`].
pub const RESOURCE_LIMIT_ENV: &str = "GKT_RESOURCE_LIMIT";

/// Current enumeration cap, read from the environment on every call.
pub fn resource_limit() -> u64 {
    std::env::var(RESOURCE_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_RESOURCE_LIMIT)
}
