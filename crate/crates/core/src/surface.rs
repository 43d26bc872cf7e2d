//! The projective line with marked points `P_1..P_N`, `Q_1..Q_M` and the
//! grading points `gamma_s`, together with degree schedules, the divisors
//! `D_m` and Riemann-Roch spaces.
//!
//! Infinity is never marked. Functions are required to be holomorphic there,
//! which keeps every Riemann-Roch space spanned by a constant and principal
//! parts at the marked points.

use crate::exactnum::{int, null_space, zero, Matrix, PartialFraction, RatFun, Scalar};
use crate::rootsys::{GradingSpec, RootSystem};
use crate::{Error, Result};
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointLabel {
    P(usize),
    Q(usize),
    Gamma(usize),
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointLabel::P(i) => write!(f, "P{}", i + 1),
            PointLabel::Q(i) => write!(f, "Q{}", i + 1),
            PointLabel::Gamma(i) => write!(f, "gamma{}", i + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaPoint {
    pub coord: Scalar,
    pub spec: GradingSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedCurve {
    p: Vec<Scalar>,
    q: Vec<Scalar>,
    gammas: Vec<GammaPoint>,
}

impl MarkedCurve {
    pub fn new(p: Vec<Scalar>, q: Vec<Scalar>, gammas: Vec<GammaPoint>) -> Result<Self> {
        if p.is_empty() || q.is_empty() {
            return Err(Error::InvalidCurve("need at least one P-point and one Q-point".into()));
        }
        let mut seen = BTreeSet::new();
        for x in p.iter().chain(&q).chain(gammas.iter().map(|g| &g.coord)) {
            if !seen.insert(x.clone()) {
                return Err(Error::InvalidCurve(format!(
                    "point {} is marked twice",
                    crate::exactnum::format_scalar(x)
                )));
            }
        }
        Ok(MarkedCurve { p, q, gammas })
    }

    pub fn p_points(&self) -> &[Scalar] {
        &self.p
    }

    pub fn q_points(&self) -> &[Scalar] {
        &self.q
    }

    pub fn gammas(&self) -> &[GammaPoint] {
        &self.gammas
    }

    /// Number of P-points.
    pub fn n(&self) -> usize {
        self.p.len()
    }

    /// Number of Q-points.
    pub fn m(&self) -> usize {
        self.q.len()
    }

    pub fn points(&self) -> Vec<(PointLabel, Scalar)> {
        let mut out: Vec<(PointLabel, Scalar)> =
            self.p.iter().enumerate().map(|(i, x)| (PointLabel::P(i), x.clone())).collect();
        out.extend(self.q.iter().enumerate().map(|(i, x)| (PointLabel::Q(i), x.clone())));
        out.extend(self.gammas.iter().enumerate().map(|(i, g)| (PointLabel::Gamma(i), g.coord.clone())));
        out
    }

    pub fn coord(&self, label: PointLabel) -> &Scalar {
        match label {
            PointLabel::P(i) => &self.p[i],
            PointLabel::Q(i) => &self.q[i],
            PointLabel::Gamma(i) => &self.gammas[i].coord,
        }
    }

    pub fn coords(&self) -> Vec<Scalar> {
        self.points().into_iter().map(|(_, x)| x).collect()
    }

    /// Finite residues of `f dz`, keyed by point. `f dz` must be holomorphic at
    /// infinity and `f` may only have poles at marked points.
    pub fn form_residues(&self, f: &RatFun) -> Result<BTreeMap<Scalar, Scalar>> {
        if !f.is_zero() && f.valuation_at_infinity().is_some_and(|v| v < 2) {
            return Err(Error::PoleAtInfinity);
        }
        let pf = PartialFraction::from_ratfun(f, &self.coords())
            .ok_or_else(|| Error::InvalidCurve("function has a pole away from the marked points".into()))?;
        Ok(pf.poles().map(|p| (p.clone(), pf.residue(p))).filter(|(_, r)| !r.is_zero()).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Rule {
    Default,
    Explicit { first: i64, rows: Vec<Vec<i64>> },
}

/// Degrees `n_{m,j}` at the Q-points, playing the role of `a_j m + b_{m,j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSchedule {
    n: usize,
    slopes: Vec<Scalar>,
    rule: Rule,
}

impl DegreeSchedule {
    /// `n_{m,j} = F_j(m) - F_{j-1}(m)` with `F_j(m) = floor(j (N m + N - 1) / M)`.
    pub fn default_for(curve: &MarkedCurve) -> Self {
        let (n, m) = (curve.n(), curve.m());
        DegreeSchedule { n, slopes: vec![Scalar::new((n as i64).into(), (m as i64).into()); m], rule: Rule::Default }
    }

    /// A user-supplied table of rows `n_{m,1..M}` for `m = first, first+1, ...`.
    pub fn explicit(curve: &MarkedCurve, slopes: Vec<Scalar>, first: i64, rows: Vec<Vec<i64>>) -> Result<Self> {
        let (n, mq) = (curve.n() as i64, curve.m());
        let bad = |msg: String| Err(Error::InvalidSchedule(msg));
        if slopes.len() != mq || rows.is_empty() {
            return bad(format!("expected {mq} slopes and at least one row"));
        }
        if slopes.iter().any(|a| !a.is_positive()) {
            return bad("slopes must be positive".into());
        }
        if slopes.iter().sum::<Scalar>() != int(n) {
            return bad(format!("slopes must sum to {n}"));
        }
        for (k, row) in rows.iter().enumerate() {
            let m = first + k as i64;
            if row.len() != mq {
                return bad(format!("row for m = {m} has {} entries", row.len()));
            }
            if row.iter().sum::<i64>() != n * m + n - 1 {
                return bad(format!("row for m = {m} must sum to {}", n * m + n - 1));
            }
            if k > 0 && row.iter().zip(&rows[k - 1]).any(|(a, b)| a < b) {
                return bad(format!("row for m = {m} decreases"));
            }
        }
        Ok(DegreeSchedule { n: curve.n(), slopes, rule: Rule::Explicit { first, rows } })
    }

    pub fn slopes(&self) -> &[Scalar] {
        &self.slopes
    }

    pub fn is_default(&self) -> bool {
        self.rule == Rule::Default
    }

    /// Degree range covered by an explicit table.
    pub fn explicit_range(&self) -> Option<(i64, i64)> {
        match &self.rule {
            Rule::Default => None,
            Rule::Explicit { first, rows } => Some((*first, first + rows.len() as i64 - 1)),
        }
    }

    /// `(n_{m,1}, ..., n_{m,M})`.
    pub fn offsets(&self, m: i64) -> Result<Vec<i64>> {
        match &self.rule {
            Rule::Default => {
                let (n, mq) = (self.n as i64, self.slopes.len() as i64);
                let f = |j: i64| (j * (n * m + n - 1)).div_euclid(mq);
                Ok((1..=mq).map(|j| f(j) - f(j - 1)).collect())
            }
            Rule::Explicit { first, rows } => {
                let k = m - first;
                if k < 0 || k >= rows.len() as i64 {
                    return Err(Error::InvalidSchedule(format!("no row for m = {m}")));
                }
                Ok(rows[k as usize].clone())
            }
        }
    }

    /// `max |n_{m,j} - a_j m|`: over one period for the default rule, over the
    /// table for explicit schedules.
    pub fn bound(&self) -> Scalar {
        let ms: Vec<i64> = match self.explicit_range() {
            None => (0..self.slopes.len() as i64).collect(),
            Some((lo, hi)) => (lo..=hi).collect(),
        };
        let mut b = zero();
        for m in ms {
            for (nj, a) in self.offsets(m).expect("in range").iter().zip(&self.slopes) {
                let d = (int(*nj) - a * int(m)).abs();
                if d > b {
                    b = d;
                }
            }
        }
        b
    }
}

/// Integer combination of marked points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    entries: Vec<(PointLabel, Scalar, i64)>,
}

impl Divisor {
    pub fn new(entries: Vec<(PointLabel, Scalar, i64)>) -> Self {
        Divisor { entries }
    }

    pub fn entries(&self) -> &[(PointLabel, Scalar, i64)] {
        &self.entries
    }

    pub fn degree(&self) -> i64 {
        self.entries.iter().map(|e| e.2).sum()
    }

    pub fn coefficient(&self, label: PointLabel) -> i64 {
        self.entries.iter().find(|e| e.0 == label).map_or(0, |e| e.2)
    }

    /// The same divisor with the coefficient at `label` replaced.
    pub fn with_coefficient(&self, label: PointLabel, c: i64) -> Divisor {
        let mut d = self.clone();
        match d.entries.iter_mut().find(|e| e.0 == label) {
            Some(e) => e.2 = c,
            None => panic!("{label} is not in the divisor support"),
        }
        d
    }

    /// Whether `f` satisfies `(f) + D >= 0` and is regular away from the support.
    pub fn admits(&self, f: &PartialFraction) -> bool {
        if f.is_zero() {
            return true;
        }
        let support: BTreeSet<&Scalar> = self.entries.iter().map(|e| &e.1).collect();
        if f.poles().any(|p| !support.contains(p)) {
            return false;
        }
        self.entries.iter().all(|(_, x, c)| f.valuation_at(x).expect("nonzero") + c >= 0)
    }
}

/// `D_m = -m sum P_i + sum n_{m,j} Q_j + sum k_gamma gamma`.
pub fn divisor_dm(curve: &MarkedCurve, schedule: &DegreeSchedule, rs: &RootSystem, m: i64) -> Result<Divisor> {
    let offsets = schedule.offsets(m)?;
    let mut entries: Vec<(PointLabel, Scalar, i64)> =
        curve.p.iter().enumerate().map(|(i, x)| (PointLabel::P(i), x.clone(), -m)).collect();
    entries.extend(curve.q.iter().zip(offsets).enumerate().map(|(j, (x, n))| (PointLabel::Q(j), x.clone(), n)));
    for (s, g) in curve.gammas.iter().enumerate() {
        rs.check_spec(&g.spec)?;
        entries.push((PointLabel::Gamma(s), g.coord.clone(), rs.depth(&g.spec)));
    }
    Ok(Divisor { entries })
}

/// Basis of `L(D)`, as partial fractions. Candidates are `1` and
/// `(z - x)^{-j}` for `j <= d_x`; zeros demanded at negative coefficients are
/// imposed as linear conditions.
pub fn rr_basis_partial(d: &Divisor) -> Vec<PartialFraction> {
    let mut candidates = vec![PartialFraction::constant(int(1))];
    for (_, x, c) in &d.entries {
        for j in 1..=(*c).max(0) as usize {
            candidates.push(PartialFraction::pole(x, j));
        }
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (_, x, c) in d.entries.iter().filter(|e| e.2 < 0) {
        let cols: Vec<Vec<Scalar>> = candidates.iter().map(|f| f.expansion_coeffs(x, 0, -c - 1)).collect();
        for e in 0..(-c) as usize {
            rows.push(cols.iter().map(|col| col[e].clone()).collect());
        }
    }
    if rows.is_empty() {
        return candidates;
    }
    null_space(&Matrix::from_rows(rows))
        .into_iter()
        .map(|v| {
            let mut f = PartialFraction::zero();
            for (c, g) in v.iter().zip(&candidates) {
                if !c.is_zero() {
                    f.add_scaled(g, c);
                }
            }
            f
        })
        .collect()
}

/// Basis of `L(D)` in canonical numerator/denominator form.
pub fn rr_basis(d: &Divisor) -> Vec<RatFun> {
    rr_basis_partial(d).iter().map(PartialFraction::to_ratfun).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{frac, Poly};
    use crate::rootsys::CartanType;
    use proptest::prelude::*;

    fn curve(n: usize, m: usize, gammas: usize) -> MarkedCurve {
        let p = (0..n).map(|i| int(i as i64)).collect();
        let q = (0..m).map(|j| int(10 + j as i64)).collect();
        let g = (0..gammas)
            .map(|s| GammaPoint { coord: frac(1 + 2 * s as i64, 2), spec: GradingSpec::new(vec![1]).unwrap() })
            .collect();
        MarkedCurve::new(p, q, g).unwrap()
    }

    #[test]
    fn rejects_coincident_points() {
        assert!(MarkedCurve::new(vec![int(0)], vec![int(0)], vec![]).is_err());
        assert!(MarkedCurve::new(vec![], vec![int(0)], vec![]).is_err());
    }

    #[test]
    fn default_schedules() {
        let s = DegreeSchedule::default_for(&curve(1, 1, 0));
        assert_eq!(s.slopes(), &[int(1)]);
        for m in -3..=3 {
            assert_eq!(s.offsets(m).unwrap(), vec![m]);
        }
        assert_eq!(s.bound(), int(0));
        let s = DegreeSchedule::default_for(&curve(2, 1, 0));
        for m in -3..=3 {
            assert_eq!(s.offsets(m).unwrap(), vec![2 * m + 1]);
        }
        assert_eq!(s.bound(), int(1));
        let s = DegreeSchedule::default_for(&curve(1, 2, 0));
        assert_eq!(s.slopes(), &[frac(1, 2), frac(1, 2)]);
        let table: Vec<Vec<i64>> = (-3..=3).map(|m| s.offsets(m).unwrap()).collect();
        assert_eq!(
            table,
            vec![vec![-2, -1], vec![-1, -1], vec![-1, 0], vec![0, 0], vec![0, 1], vec![1, 1], vec![1, 2]]
        );
        assert_eq!(s.bound(), frac(1, 2));
    }

    #[test]
    fn explicit_schedule_validation() {
        let c = curve(1, 2, 0);
        let ok =
            DegreeSchedule::explicit(&c, vec![frac(1, 2), frac(1, 2)], 0, vec![vec![0, 0], vec![1, 0], vec![1, 1]]);
        let s = ok.unwrap();
        assert_eq!(s.offsets(1).unwrap(), vec![1, 0]);
        assert!(s.offsets(3).is_err());
        assert_eq!(s.bound(), frac(1, 2));
        assert!(DegreeSchedule::explicit(&c, vec![frac(1, 2), frac(1, 2)], 0, vec![vec![0, 1]]).is_err());
        assert!(DegreeSchedule::explicit(&c, vec![frac(1, 2), frac(1, 2)], 0, vec![vec![0, 0], vec![2, -1]]).is_err());
        assert!(DegreeSchedule::explicit(&c, vec![int(1), int(1)], 0, vec![vec![0, 0]]).is_err());
    }

    #[test]
    fn divisors() {
        let rs = RootSystem::new(CartanType::A, 2).unwrap();
        let c = curve(1, 1, 0);
        let s = DegreeSchedule::default_for(&c);
        let d = divisor_dm(&c, &s, &rs, 0).unwrap();
        assert_eq!(d.degree(), 0);
        let c = curve(1, 1, 2);
        let s = DegreeSchedule::default_for(&c);
        let d = divisor_dm(&c, &s, &rs, 3).unwrap();
        let coeffs: Vec<i64> = d.entries().iter().map(|e| e.2).collect();
        assert_eq!(coeffs, vec![-3, 3, 1, 1]);
        assert_eq!(d.degree(), 2);
    }

    #[test]
    fn rr_examples() {
        let o = int(0);
        assert_eq!(rr_basis(&Divisor::new(vec![(PointLabel::P(0), o.clone(), 0)])), vec![RatFun::one()]);
        let b = rr_basis(&Divisor::new(vec![(PointLabel::P(0), o.clone(), 2)]));
        assert_eq!(b.len(), 3);
        assert!(b.contains(&RatFun::power_at(&o, -2)));
        let d = Divisor::new(vec![(PointLabel::P(0), o.clone(), -1), (PointLabel::Q(0), int(1), 2)]);
        let b = rr_basis_partial(&d);
        assert_eq!(b.len(), 2);
        for f in &b {
            assert!(f.valuation_at(&o).unwrap() >= 1);
            assert!(f.pole_order(&int(1)) <= 2);
            assert!(d.admits(f));
        }
        let neg = Divisor::new(vec![(PointLabel::P(0), o, -1)]);
        assert!(rr_basis(&neg).is_empty());
    }

    #[test]
    fn residues_of_forms() {
        let c = MarkedCurve::new(
            vec![int(0)],
            vec![int(1)],
            vec![GammaPoint { coord: int(2), spec: GradingSpec::new(vec![1]).unwrap() }],
        )
        .unwrap();
        let f = RatFun::power_at(&int(0), -1).sub(&RatFun::power_at(&int(1), -1));
        let r = c.form_residues(&f).unwrap();
        assert_eq!(r.get(&int(0)), Some(&int(1)));
        assert_eq!(r.get(&int(1)), Some(&int(-1)));
        assert!(c.form_residues(&RatFun::zero()).unwrap().is_empty());
        let den = Poly::linear_root(&int(0)).mul(&Poly::linear_root(&int(1))).mul(&Poly::linear_root(&int(2)));
        let f = RatFun::new(Poly::new(vec![int(1), int(1)]), den);
        let r = c.form_residues(&f).unwrap();
        assert_eq!(r.values().cloned().collect::<Vec<_>>(), vec![frac(1, 2), int(-2), frac(3, 2)]);
        assert_eq!(r.values().sum::<Scalar>(), int(0));
        assert_eq!(
            c.form_residues(&RatFun::power_at(&int(0), -1).scale(&int(1)).add(&RatFun::one())),
            Err(Error::PoleAtInfinity)
        );
        assert!(c.form_residues(&RatFun::power_at(&int(5), -2)).is_err());
    }

    proptest! {
        #[test]
        fn default_schedule_invariants(n in 1usize..5, mq in 1usize..5, m in -20i64..20) {
            let c = MarkedCurve::new(
                (0..n).map(|i| int(i as i64)).collect(),
                (0..mq).map(|j| int(100 + j as i64)).collect(),
                vec![],
            ).unwrap();
            let s = DegreeSchedule::default_for(&c);
            let row = s.offsets(m).unwrap();
            let next = s.offsets(m + 1).unwrap();
            let nn = n as i64;
            prop_assert_eq!(row.iter().sum::<i64>(), nn * m + nn - 1);
            prop_assert_eq!(next.iter().sum::<i64>() - row.iter().sum::<i64>(), nn);
            prop_assert!(row.iter().zip(&next).all(|(a, b)| a <= b));
            let b = s.bound();
            for (nj, a) in row.iter().zip(s.slopes()) {
                prop_assert!((int(*nj) - a * int(m)).abs() <= b);
            }
            // F_j - F_{j-1} is within 1 of (N m + N - 1) / M
            prop_assert!(b <= frac(nn - 1, mq as i64) + int(1));
        }

        #[test]
        fn rr_dimension_is_degree_plus_one(coeffs in proptest::collection::vec(-3i64..4, 1..5)) {
            let d = Divisor::new(coeffs.iter().enumerate().map(|(i, c)| (PointLabel::Q(i), int(3 * i as i64 - 2), *c)).collect());
            let basis = rr_basis_partial(&d);
            prop_assert_eq!(basis.len() as i64, (d.degree() + 1).max(0));
            for f in &basis {
                prop_assert!(d.admits(f));
            }
        }

        #[test]
        fn residue_theorem(a in -5i64..5, b in -5i64..5, c in 1i64..4) {
            let curve = MarkedCurve::new(vec![int(0)], vec![int(1)], vec![GammaPoint { coord: int(2), spec: GradingSpec::new(vec![1]).unwrap() }]).unwrap();
            let f = PartialFraction::pole(&int(0), 1).scale(&int(a))
                .add(&PartialFraction::pole(&int(1), 2).scale(&int(b)))
                .add(&PartialFraction::pole(&int(2), 1).scale(&int(-a)))
                .mul(&PartialFraction::pole(&int(1), c as usize));
            let r = curve.form_residues(&f.to_ratfun());
            if f.valuation_at_infinity().is_none_or(|v| v >= 2) {
                prop_assert_eq!(r.unwrap().values().sum::<Scalar>(), int(0));
            } else {
                prop_assert_eq!(r, Err(Error::PoleAtInfinity));
            }
        }
    }

    #[test]
    fn consecutive_divisors_have_equal_degree() {
        let rs = RootSystem::new(CartanType::A, 2).unwrap();
        let c = curve(2, 3, 1);
        let s = DegreeSchedule::default_for(&c);
        let degs: BTreeSet<i64> = (-5..=5).map(|m| divisor_dm(&c, &s, &rs, m).unwrap().degree()).collect();
        assert_eq!(degs.into_iter().collect::<Vec<_>>(), vec![2]);
        let d0 = divisor_dm(&c, &s, &rs, 0).unwrap();
        let d1 = divisor_dm(&c, &s, &rs, 1).unwrap();
        assert_eq!(d1.coefficient(PointLabel::P(0)) - d0.coefficient(PointLabel::P(0)), -1);
    }
}
