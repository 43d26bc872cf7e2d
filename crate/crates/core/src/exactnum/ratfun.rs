use super::{int, one, zero, LaurentSeries, Poly, Scalar};
use num_traits::Zero;
use std::fmt;

/// A rational function `num / den` in canonical form: `den` monic,
/// `gcd(num, den) = 1`, and zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Normalizes `num / den`. Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFun::zero();
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading().expect("nonzero").recip();
        RatFun { num: num.scale(&lead), den: den.scale(&lead) }
    }

    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn constant(c: Scalar) -> Self {
        RatFun { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    /// `(z - a)^e` for any integer `e`.
    pub fn power_at(a: &Scalar, e: i64) -> Self {
        let lin = Poly::linear_root(a);
        if e >= 0 {
            RatFun::from_poly(lin.pow(e as usize))
        } else {
            RatFun { num: Poly::one(), den: lin.pow((-e) as usize) }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        if self.den == other.den {
            return RatFun::new(self.num.add(&other.num), self.den.clone());
        }
        RatFun::new(self.num.mul(&other.den).add(&other.num.mul(&self.den)), self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        RatFun::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &Scalar) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Panics on division by the zero function.
    pub fn div(&self, other: &RatFun) -> RatFun {
        assert!(!other.is_zero(), "division by the zero function");
        RatFun::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// `d/dz`.
    pub fn derivative(&self) -> RatFun {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        RatFun::new(n, self.den.mul(&self.den))
    }

    /// Value at `z`, `None` at a pole.
    pub fn eval(&self, z: &Scalar) -> Option<Scalar> {
        let d = self.den.eval(z);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(z) / d)
        }
    }

    /// Order of vanishing at `z0` (negative for a pole); `None` for the zero function.
    pub fn valuation_at(&self, z0: &Scalar) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.num.root_multiplicity(z0) as i64 - self.den.root_multiplicity(z0) as i64)
    }

    /// Order of vanishing at infinity, `deg den - deg num`; `None` for zero.
    pub fn valuation_at_infinity(&self) -> Option<i64> {
        let dn = self.num.degree()? as i64;
        Some(self.den.degree().expect("nonzero") as i64 - dn)
    }

    pub fn is_holomorphic_at_infinity(&self) -> bool {
        self.valuation_at_infinity().is_none_or(|v| v >= 0)
    }

    /// Coefficients of `(z - z0)^p` for `p = lo..=hi`.
    pub fn laurent_expand(&self, z0: &Scalar, lo: i64, hi: i64) -> LaurentSeries {
        assert!(hi >= lo, "empty expansion range");
        let len = (hi - lo + 1) as usize;
        if self.is_zero() {
            return LaurentSeries::new(z0.clone(), lo, vec![zero(); len]);
        }
        let n = self.num.shift(z0);
        let d = self.den.shift(z0);
        let v = n.coeffs().iter().take_while(|c| c.is_zero()).count();
        let e = d.coeffs().iter().take_while(|c| c.is_zero()).count();
        let n = &n.coeffs()[v..];
        let d = &d.coeffs()[e..];
        let start = v as i64 - e as i64;
        // series of n(t)/d(t) with d(0) != 0, needed through exponent hi - start
        let need = hi - start + 1;
        let mut series: Vec<Scalar> = Vec::new();
        if need > 0 {
            let d0_inv = d[0].recip();
            for i in 0..need as usize {
                let mut acc = n.get(i).cloned().unwrap_or_else(zero);
                for j in 1..=i.min(d.len() - 1) {
                    if !d[j].is_zero() && !series[i - j].is_zero() {
                        acc -= &d[j] * &series[i - j];
                    }
                }
                series.push(acc * &d0_inv);
            }
        }
        let coeffs = (lo..=hi)
            .map(|p| {
                let idx = p - start;
                if idx < 0 {
                    zero()
                } else {
                    series[idx as usize].clone()
                }
            })
            .collect();
        LaurentSeries::new(z0.clone(), lo, coeffs)
    }

    /// Residue of `self * dz` at the finite point `z0`.
    pub fn residue(&self, z0: &Scalar) -> Scalar {
        self.laurent_expand(z0, -1, -1).coeffs()[0].clone()
    }

    /// Residue of `self * dz` at infinity: minus the coefficient of `1/z` in
    /// the expansion at infinity.
    pub fn residue_at_infinity(&self) -> Scalar {
        if self.is_zero() {
            return zero();
        }
        // f(z) = -w^{-2} g(w) dw with w = 1/z; the coefficient of 1/z of f at
        // infinity equals the coefficient of w of f(1/w).
        let dn = self.num.degree().unwrap() as i64;
        let dd = self.den.degree().unwrap() as i64;
        let top = dn.max(dd) as usize;
        let rev = |p: &Poly| {
            let mut c = p.coeffs().to_vec();
            c.resize(top + 1, zero());
            c.reverse();
            Poly::new(c)
        };
        let g = RatFun::new(rev(&self.num), rev(&self.den));
        -g.laurent_expand(&zero(), 1, 1).coeffs()[0].clone()
    }

    /// Multiplies by `c` and returns `self`.
    pub fn scaled(mut self, c: &Scalar) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        self.num = self.num.scale(c);
        self
    }

    pub fn one() -> Self {
        RatFun::constant(one())
    }

    pub fn z() -> Self {
        RatFun::from_poly(Poly::new(vec![zero(), int(1)]))
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
