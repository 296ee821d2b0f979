//! Acceptance suite for `datastock`. Everything lives in `tests/acceptance.rs`;
//! it sits in its own package so that it runs after the library's own tests.
