pub mod key_prop;
pub mod lemmas;
pub mod sequence;
pub mod witness;

/// Residual tolerance for identities that hold exactly in the construction:
/// `1e-30`, or `2^{-bits/2}` when the working precision cannot reach it.
pub fn residual_tol(bits: u32) -> f64 {
    2f64.powf(-(bits as f64) / 2.0).max(1e-30)
}

/// Largest value, `-∞` on an empty iterator.
pub(crate) fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

/// Smallest value, `+∞` on an empty iterator.
pub(crate) fn min_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(f64::INFINITY, f64::min)
}
