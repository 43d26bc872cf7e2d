use super::Scalar;

/// A truncated Laurent expansion in powers of `(z - base)`.
///
/// `coeffs[i]` is the coefficient of `(z - base)^(lowest + i)`; coefficients
/// are known up to and including the exponent `truncation()` and nothing is
/// claimed beyond it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries<C = Scalar> {
    base: Scalar,
    lowest: i64,
    coeffs: Vec<C>,
}

impl<C> LaurentSeries<C> {
    /// Panics when `coeffs` is empty (truncation must be at least `lowest`).
    pub fn new(base: Scalar, lowest: i64, coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a Laurent series needs at least one known coefficient");
        LaurentSeries { base, lowest, coeffs }
    }

    pub fn base(&self) -> &Scalar {
        &self.base
    }

    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    pub fn truncation(&self) -> i64 {
        self.lowest + self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `(z - base)^p`, `None` outside `lowest..=truncation`.
    pub fn coeff(&self, p: i64) -> Option<&C> {
        if p < self.lowest {
            return None;
        }
        self.coeffs.get((p - self.lowest) as usize)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.lowest + i as i64, c))
    }

    pub fn map<D>(&self, f: impl FnMut(&C) -> D) -> LaurentSeries<D> {
        LaurentSeries { base: self.base.clone(), lowest: self.lowest, coeffs: self.coeffs.iter().map(f).collect() }
    }
}
