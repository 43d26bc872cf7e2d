use super::{binomial, int, powi, zero, LaurentSeries, Poly, RatFun, Scalar};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// A rational function holomorphic at infinity with all poles at finite
/// rational points, stored by its partial-fraction decomposition
///
/// ```text
/// f(z) = c + sum_p sum_{j >= 1} a_{p,j} (z - p)^(-j)
/// ```
///
/// The decomposition is unique, so equality of values is equality of
/// representations. Principal parts never carry trailing zeros and points
/// with an empty principal part are dropped.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PartialFraction {
    constant: Scalar,
    parts: BTreeMap<Scalar, Vec<Scalar>>,
}

impl PartialFraction {
    pub fn zero() -> Self {
        PartialFraction::default()
    }

    pub fn constant(c: Scalar) -> Self {
        PartialFraction { constant: c, parts: BTreeMap::new() }
    }

    /// `(z - p)^(-j)` for `j >= 1`.
    pub fn pole(p: &Scalar, j: usize) -> Self {
        assert!(j >= 1, "pole order must be positive");
        let mut coeffs = vec![zero(); j];
        coeffs[j - 1] = int(1);
        let mut parts = BTreeMap::new();
        parts.insert(p.clone(), coeffs);
        PartialFraction { constant: zero(), parts }
    }

    /// Builds from raw data, normalizing trailing zeros.
    pub fn from_parts(constant: Scalar, parts: BTreeMap<Scalar, Vec<Scalar>>) -> Self {
        let mut f = PartialFraction { constant, parts };
        f.normalize();
        f
    }

    fn normalize(&mut self) {
        self.parts.retain(|_, v| {
            while v.last().is_some_and(Zero::is_zero) {
                v.pop();
            }
            !v.is_empty()
        });
    }

    /// Value at infinity.
    pub fn constant_term(&self) -> &Scalar {
        &self.constant
    }

    /// Principal parts: `parts[p][j - 1]` is the coefficient of `(z - p)^(-j)`.
    pub fn parts(&self) -> &BTreeMap<Scalar, Vec<Scalar>> {
        &self.parts
    }

    pub fn poles(&self) -> impl Iterator<Item = &Scalar> {
        self.parts.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.parts.is_empty()
    }

    pub fn pole_order(&self, p: &Scalar) -> usize {
        self.parts.get(p).map_or(0, Vec::len)
    }

    /// Coefficient of `(z - p)^(-j)`.
    pub fn principal_coeff(&self, p: &Scalar, j: usize) -> Scalar {
        self.parts.get(p).and_then(|v| v.get(j - 1)).cloned().unwrap_or_else(zero)
    }

    pub fn residue(&self, p: &Scalar) -> Scalar {
        self.principal_coeff(p, 1)
    }

    /// Sum of the residues of `f dz` over all finite points.
    pub fn total_finite_residue(&self) -> Scalar {
        self.parts.values().fold(zero(), |acc, v| acc + &v[0])
    }

    pub fn add(&self, other: &PartialFraction) -> PartialFraction {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &PartialFraction) {
        self.add_scaled(other, &int(1));
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &PartialFraction, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        self.constant += &other.constant * c;
        for (p, v) in &other.parts {
            let entry = self.parts.entry(p.clone()).or_default();
            if entry.len() < v.len() {
                entry.resize(v.len(), zero());
            }
            for (a, b) in entry.iter_mut().zip(v) {
                if !b.is_zero() {
                    *a += b * c;
                }
            }
        }
        self.normalize();
    }

    pub fn sub(&self, other: &PartialFraction) -> PartialFraction {
        let mut out = self.clone();
        out.add_scaled(other, &int(-1));
        out
    }

    pub fn neg(&self) -> PartialFraction {
        self.scale(&int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> PartialFraction {
        if c.is_zero() {
            return PartialFraction::zero();
        }
        PartialFraction {
            constant: &self.constant * c,
            parts: self.parts.iter().map(|(p, v)| (p.clone(), v.iter().map(|a| a * c).collect())).collect(),
        }
    }

    /// Coefficients of `(z - a)^e` for `e = lo..=hi`, returned as a plain vector.
    pub fn expansion_coeffs(&self, a: &Scalar, lo: i64, hi: i64) -> Vec<Scalar> {
        let len = (hi - lo + 1).max(0) as usize;
        let mut out = vec![zero(); len];
        let slot = |e: i64| -> Option<usize> { (e >= lo && e <= hi).then(|| (e - lo) as usize) };
        if let Some(i) = slot(0) {
            out[i] += &self.constant;
        }
        for (p, v) in &self.parts {
            if p == a {
                for (j, c) in v.iter().enumerate() {
                    if let Some(i) = slot(-(j as i64) - 1) {
                        out[i] += c;
                    }
                }
                continue;
            }
            let s_lo = lo.max(0);
            if hi < s_lo {
                continue;
            }
            // (t + d)^(-j) = sum_s (-1)^s C(j+s-1, s) d^(-j-s) t^s, with d = a - p
            let d_inv = (a - p).recip();
            for (jm1, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let j = jm1 as u64 + 1;
                let mut dpow = powi(&d_inv, (j as i64) + s_lo);
                for s in s_lo..=hi {
                    let mut term = c * binomial(j + s as u64 - 1, s as u64) * &dpow;
                    if s % 2 == 1 {
                        term = -term;
                    }
                    out[(s - lo) as usize] += term;
                    dpow *= &d_inv;
                }
            }
        }
        out
    }

    /// Laurent expansion at `a` over `lo..=hi`.
    pub fn laurent_expand(&self, a: &Scalar, lo: i64, hi: i64) -> LaurentSeries {
        assert!(hi >= lo, "empty expansion range");
        LaurentSeries::new(a.clone(), lo, self.expansion_coeffs(a, lo, hi))
    }

    /// Order of vanishing at the finite point `a`; `None` for the zero function.
    pub fn valuation_at(&self, a: &Scalar) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let ord = self.pole_order(a);
        if ord > 0 {
            return Some(-(ord as i64));
        }
        // a nonzero function holomorphic at infinity has at most as many zeros
        // as poles (counted at infinity too), so this window always suffices
        let bound: usize = self.parts.values().map(Vec::len).sum();
        let coeffs = self.expansion_coeffs(a, 0, bound as i64);
        let v = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero function vanishing to excess order");
        Some(v as i64)
    }

    /// Order of vanishing at infinity; `None` for the zero function.
    pub fn valuation_at_infinity(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        if !self.constant.is_zero() {
            return Some(0);
        }
        // coefficient of z^{-n} at infinity: sum_p sum_{j<=n} a_{p,j} C(n-1, j-1) p^(n-j)
        let bound: usize = self.parts.values().map(Vec::len).sum();
        for n in 1..=bound + 1 {
            let mut c = zero();
            for (p, v) in &self.parts {
                for (jm1, a) in v.iter().enumerate() {
                    let j = jm1 + 1;
                    if j <= n && !a.is_zero() {
                        c += a * binomial((n - 1) as u64, (j - 1) as u64) * powi(p, (n - j) as i64);
                    }
                }
            }
            if !c.is_zero() {
                return Some(n as i64);
            }
        }
        unreachable!("nonzero function vanishing to excess order at infinity")
    }

    pub fn mul(&self, other: &PartialFraction) -> PartialFraction {
        if self.is_zero() || other.is_zero() {
            return PartialFraction::zero();
        }
        let mut parts = BTreeMap::new();
        let points: std::collections::BTreeSet<&Scalar> = self.parts.keys().chain(other.parts.keys()).collect();
        for p in points {
            let ef = self.pole_order(p) as i64;
            let eg = other.pole_order(p) as i64;
            let total = ef + eg;
            let fx = self.expansion_coeffs(p, -ef, eg - 1);
            let gx = other.expansion_coeffs(p, -eg, ef - 1);
            // coefficient of t^e in the product, e = -total..-1
            let mut principal = vec![zero(); total as usize];
            for (ia, a) in fx.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let ea = ia as i64 - ef;
                for (ib, b) in gx.iter().enumerate() {
                    let e = ea + ib as i64 - eg;
                    if e >= 0 {
                        break;
                    }
                    if !b.is_zero() {
                        principal[(-e - 1) as usize] += a * b;
                    }
                }
            }
            parts.insert(p.clone(), principal);
        }
        PartialFraction::from_parts(&self.constant * &other.constant, parts)
    }

    /// `d/dz`.
    pub fn derivative(&self) -> PartialFraction {
        let parts = self
            .parts
            .iter()
            .map(|(p, v)| {
                let mut d = vec![zero(); v.len() + 1];
                for (jm1, c) in v.iter().enumerate() {
                    let j = jm1 as i64 + 1;
                    d[jm1 + 1] = c * int(-j);
                }
                (p.clone(), d)
            })
            .collect();
        PartialFraction::from_parts(zero(), parts)
    }

    /// Value at a finite non-pole point.
    pub fn eval(&self, z: &Scalar) -> Option<Scalar> {
        if self.parts.contains_key(z) {
            return None;
        }
        Some(self.expansion_coeffs(z, 0, 0).pop().unwrap())
    }

    pub fn to_ratfun(&self) -> RatFun {
        let mut den = Poly::one();
        for (p, v) in &self.parts {
            den = den.mul(&Poly::linear_root(p).pow(v.len()));
        }
        let mut num = den.scale(&self.constant);
        for (p, v) in &self.parts {
            let rest = den.div_rem(&Poly::linear_root(p).pow(v.len())).0;
            for (jm1, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                // c (z-p)^{-j} = c (z-p)^{ord-j} * rest / den
                let lift = Poly::linear_root(p).pow(v.len() - jm1 - 1).mul(&rest);
                num = num.add(&lift.scale(c));
            }
        }
        RatFun::new(num, den)
    }

    /// Decomposes `f`, which must be holomorphic at infinity with every pole
    /// among `points`. Returns `None` otherwise.
    pub fn from_ratfun(f: &RatFun, points: &[Scalar]) -> Option<PartialFraction> {
        if f.is_zero() {
            return Some(PartialFraction::zero());
        }
        if !f.is_holomorphic_at_infinity() {
            return None;
        }
        let mut rest = f.den().clone();
        let mut parts = BTreeMap::new();
        for p in points {
            let e = rest.root_multiplicity(p);
            if e == 0 {
                continue;
            }
            rest = rest.div_rem(&Poly::linear_root(p).pow(e)).0;
            let s = f.laurent_expand(p, -(e as i64), -1);
            let mut v: Vec<Scalar> = s.coeffs().to_vec();
            v.reverse();
            parts.insert(p.clone(), v);
        }
        if rest.degree() != Some(0) {
            return None;
        }
        let constant = if f.num().degree() == f.den().degree() {
            f.num().leading().unwrap() / f.den().leading().unwrap()
        } else {
            zero()
        };
        Some(PartialFraction::from_parts(constant, parts))
    }
}

impl fmt::Debug for PartialFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PartialFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        if !self.constant.is_zero() {
            terms.push(super::format_scalar(&self.constant));
        }
        for (p, v) in &self.parts {
            for (jm1, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    terms.push(format!("{}*(z-{})^-{}", super::format_scalar(c), super::format_scalar(p), jm1 + 1));
                }
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
