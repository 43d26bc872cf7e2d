//! The current algebra: `g`-valued rational functions on the marked line whose
//! Laurent coefficients at each grading point `gamma` obey
//!
//! ```text
//! L(z) = sum_{p >= -k} L_p (z - gamma)^p,   L_p in g_{<=p}
//! ```
//!
//! and its degree subspaces `L_m = { L : (L) + D_m >= 0 }`.
//!
//! Basis elements of the model are homogeneous for every grading, so the
//! local conditions act coordinatewise: the coefficient function of `X_i`
//! must vanish at `gamma` to order `level_gamma(i)`. Degree subspaces are
//! computed block by block and are spanned by pure tensors `X_i (x) f`.

use crate::exactnum::{int, null_space, rank, zero, Matrix, PartialFraction, RatFun, Scalar};
use crate::grading::GradedStructure;
use crate::liealg::MatrixLieAlgebra;
use crate::surface::{divisor_dm, rr_basis_partial, DegreeSchedule, Divisor, MarkedCurve};
use crate::{Error, Result};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex};

/// A `g`-valued function, one partial fraction per algebra basis coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurrentElement {
    coords: Vec<PartialFraction>,
}

impl CurrentElement {
    pub fn zero(dim: usize) -> Self {
        CurrentElement { coords: vec![PartialFraction::zero(); dim] }
    }

    pub fn new(coords: Vec<PartialFraction>) -> Self {
        CurrentElement { coords }
    }

    /// `X_i (x) f`.
    pub fn pure(dim: usize, i: usize, f: PartialFraction) -> Self {
        let mut e = CurrentElement::zero(dim);
        e.coords[i] = f;
        e
    }

    /// A constant function with value `x`.
    pub fn constant(x: &[Scalar]) -> Self {
        CurrentElement { coords: x.iter().map(|c| PartialFraction::constant(c.clone())).collect() }
    }

    pub fn coords(&self) -> &[PartialFraction] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(PartialFraction::is_zero)
    }

    /// Indices of nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coords.len()).filter(|&i| !self.coords[i].is_zero()).collect()
    }

    pub fn add(&self, other: &CurrentElement) -> CurrentElement {
        CurrentElement { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &CurrentElement) -> CurrentElement {
        CurrentElement { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> CurrentElement {
        CurrentElement { coords: self.coords.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn derivative(&self) -> CurrentElement {
        CurrentElement { coords: self.coords.iter().map(PartialFraction::derivative).collect() }
    }

    /// Pointwise commutator.
    pub fn bracket(&self, other: &CurrentElement, alg: &MatrixLieAlgebra) -> Result<CurrentElement> {
        let n = alg.dim();
        if self.dim() != n || other.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.dim().min(other.dim()) });
        }
        let mut out = CurrentElement::zero(n);
        for i in self.support() {
            for j in other.support() {
                let br = alg.bracket_basis(i, j);
                if br.is_empty() {
                    continue;
                }
                let fg = self.coords[i].mul(&other.coords[j]);
                for (k, c) in br {
                    out.coords[*k].add_scaled(&fg, c);
                }
            }
        }
        Ok(out)
    }

    /// Coefficient vector of `(z - a)^p`.
    pub fn coefficient(&self, a: &Scalar, p: i64) -> Vec<Scalar> {
        self.coords.iter().map(|f| f.expansion_coeffs(a, p, p).pop().expect("one coefficient")).collect()
    }

    /// Largest pole order over all coordinates at `a`.
    pub fn pole_order(&self, a: &Scalar) -> usize {
        self.coords.iter().map(|f| f.pole_order(a)).max().unwrap_or(0)
    }

    pub fn to_ratfuns(&self) -> Vec<RatFun> {
        self.coords.iter().map(PartialFraction::to_ratfun).collect()
    }
}

/// Outcome of a membership test, with the first violated condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub violation: Option<String>,
}

impl Membership {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// An exact basis of `L_m` made of pure tensors.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    pub m: i64,
    pub divisor: Divisor,
    pub elements: Vec<CurrentElement>,
    /// Algebra basis index carried by each element.
    pub coordinate: Vec<usize>,
    /// `dim g * dim L(D_m)`.
    pub ambient_dim: usize,
    /// Number of local conditions, `sum_gamma k_gamma dim g`.
    pub constraint_count: usize,
    pub constraint_rank: usize,
}

impl DegreeBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// Full-rank local conditions.
    pub fn is_generic(&self) -> bool {
        self.constraint_rank == self.constraint_count
    }

    /// Function carried by element `e`.
    pub fn function(&self, e: usize) -> &PartialFraction {
        &self.elements[e].coords[self.coordinate[e]]
    }
}

/// Support of a decomposed bracket together with its membership check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub m: i64,
    pub n: i64,
    pub a: usize,
    pub b: usize,
    pub support: std::result::Result<BTreeSet<i64>, String>,
    pub closure: Membership,
}

#[derive(Clone, Debug)]
pub struct AlmostGradingReport {
    pub range: (i64, i64),
    pub pairs_checked: usize,
    /// Largest observed `m + n - min(support)` (lower spread).
    pub lower_spread: i64,
    /// Largest observed `max(support) - (m + n)` (upper spread).
    pub upper_spread: i64,
    /// Pairs whose bracket left `L_{m+n}`, failed to decompose or left the algebra.
    pub failures: Vec<PairCheck>,
    /// Coordinates in which the stacked bases over the bracket window are dependent,
    /// so that components are not unique.
    pub dependent_coordinates: Vec<usize>,
}

impl AlmostGradingReport {
    /// Every bracket landed in `L_{m+n}` and stayed in the algebra.
    pub fn strict(&self) -> bool {
        self.failures.is_empty() && self.lower_spread == 0 && self.upper_spread == 0
    }

    /// The degree subspaces over the window form a direct sum.
    pub fn direct_sum(&self) -> bool {
        self.dependent_coordinates.is_empty()
    }
}

/// Algebra, curve and schedule bundled with the grading at each `gamma` and a
/// cache of degree bases.
#[derive(Debug)]
pub struct LaxAlgebra {
    alg: MatrixLieAlgebra,
    curve: MarkedCurve,
    schedule: DegreeSchedule,
    gradings: Vec<GradedStructure>,
    cache: Mutex<BTreeMap<i64, Arc<DegreeBasis>>>,
}

impl LaxAlgebra {
    pub fn new(alg: MatrixLieAlgebra, curve: MarkedCurve, schedule: DegreeSchedule) -> Result<Self> {
        if schedule.slopes().len() != curve.m() {
            return Err(Error::InvalidSchedule(format!(
                "schedule has {} slopes for {} Q-points",
                schedule.slopes().len(),
                curve.m()
            )));
        }
        let gradings = curve.gammas().iter().map(|g| GradedStructure::new(&alg, &g.spec)).collect::<Result<_>>()?;
        Ok(LaxAlgebra { alg, curve, schedule, gradings, cache: Mutex::new(BTreeMap::new()) })
    }

    pub fn algebra(&self) -> &MatrixLieAlgebra {
        &self.alg
    }

    pub fn curve(&self) -> &MarkedCurve {
        &self.curve
    }

    pub fn schedule(&self) -> &DegreeSchedule {
        &self.schedule
    }

    pub fn gradings(&self) -> &[GradedStructure] {
        &self.gradings
    }

    /// `N dim g`.
    pub fn expected_dim(&self) -> usize {
        self.curve.n() * self.alg.dim()
    }

    pub fn divisor(&self, m: i64) -> Result<Divisor> {
        let rs = self.alg.roots().expect("checked in new").system();
        divisor_dm(&self.curve, &self.schedule, rs, m)
    }

    /// The expansion condition at every grading point, plus regularity away from the
    /// marked points.
    pub fn check_membership(&self, l: &CurrentElement) -> Membership {
        let fail = |v: String| Membership { violation: Some(v) };
        if l.dim() != self.alg.dim() {
            return fail(format!("element has {} coordinates", l.dim()));
        }
        let marked: BTreeSet<Scalar> = self.curve.coords().into_iter().collect();
        for f in l.coords() {
            if let Some(p) = f.poles().find(|p| !marked.contains(*p)) {
                return fail(format!("pole at unmarked point {}", crate::exactnum::format_scalar(p)));
            }
        }
        for (s, (g, gr)) in self.curve.gammas().iter().zip(&self.gradings).enumerate() {
            let k = gr.depth();
            let order = l.pole_order(&g.coord) as i64;
            if order > k {
                return fail(format!("pole of order {order} > {k} at gamma{}", s + 1));
            }
            for p in -k..k {
                let lp = l.coefficient(&g.coord, p);
                if !gr.in_filtration(&lp, p) {
                    return fail(format!("coefficient of order {p} at gamma{} leaves the filtration", s + 1));
                }
            }
        }
        Membership { violation: None }
    }

    /// Whether `l` satisfies `(l) + D_m >= 0` coordinatewise.
    pub fn within_divisor(&self, l: &CurrentElement, m: i64) -> Result<bool> {
        let d = self.divisor(m)?;
        Ok(l.coords().iter().all(|f| d.admits(f)))
    }

    /// Whether `l` lies in `L_m`.
    pub fn in_degree(&self, l: &CurrentElement, m: i64) -> Result<bool> {
        Ok(self.within_divisor(l, m)? && self.check_membership(l).holds())
    }

    fn compute_degree(&self, m: i64) -> Result<DegreeBasis> {
        let divisor = self.divisor(m)?;
        let functions = rr_basis_partial(&divisor);
        let n = self.alg.dim();
        let mut elements = Vec::new();
        let mut coordinate = Vec::new();
        let mut constraint_rank = 0;
        let mut constraint_count = 0;
        for i in 0..n {
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for (g, gr) in self.curve.gammas().iter().zip(&self.gradings) {
                let k = gr.depth();
                constraint_count += k as usize;
                let hi = gr.level(i) - 1;
                if hi < -k {
                    continue;
                }
                let cols: Vec<Vec<Scalar>> = functions.iter().map(|f| f.expansion_coeffs(&g.coord, -k, hi)).collect();
                for e in 0..(hi + k + 1) as usize {
                    rows.push(cols.iter().map(|c| c[e].clone()).collect());
                }
            }
            let kernel: Vec<Vec<Scalar>> = if rows.is_empty() || functions.is_empty() {
                (0..functions.len())
                    .map(|t| (0..functions.len()).map(|u| if t == u { int(1) } else { zero() }).collect())
                    .collect()
            } else {
                let c = Matrix::from_rows(rows);
                constraint_rank += rank(&c);
                null_space(&c)
            };
            for v in kernel {
                let mut f = PartialFraction::zero();
                for (c, g) in v.iter().zip(&functions) {
                    if !c.is_zero() {
                        f.add_scaled(g, c);
                    }
                }
                elements.push(CurrentElement::pure(n, i, f));
                coordinate.push(i);
            }
        }
        Ok(DegreeBasis {
            m,
            divisor,
            elements,
            coordinate,
            ambient_dim: n * functions.len(),
            constraint_count,
            constraint_rank,
        })
    }

    /// Basis of `L_m`, computed once and cached.
    pub fn degree_subspace(&self, m: i64) -> Result<Arc<DegreeBasis>> {
        if let Some(b) = self.cache.lock().expect("cache lock").get(&m) {
            return Ok(b.clone());
        }
        let b = Arc::new(self.compute_degree(m)?);
        self.cache.lock().expect("cache lock").insert(m, b.clone());
        Ok(b)
    }

    /// Inserts a basis obtained elsewhere (for instance from an on-disk cache).
    pub fn seed_degree(&self, basis: DegreeBasis) {
        self.cache.lock().expect("cache lock").insert(basis.m, Arc::new(basis));
    }

    /// Unique components of `l` in `L_lo, ..., L_hi`.
    ///
    /// Fails with `Decomposition` when the stacked bases are dependent in a
    /// coordinate `l` touches, and with `OutsideWindow` when `l` is not in
    /// their span.
    pub fn decompose(&self, l: &CurrentElement, lo: i64, hi: i64) -> Result<BTreeMap<i64, CurrentElement>> {
        let bases: Vec<Arc<DegreeBasis>> = (lo..=hi).map(|m| self.degree_subspace(m)).collect::<Result<_>>()?;
        self.solve_in(l, &bases, true)?.ok_or(Error::OutsideWindow { lo, hi })
    }

    /// Whether `l` lies in the span of the computed basis of `L_m`.
    pub fn lies_in(&self, l: &CurrentElement, m: i64) -> Result<bool> {
        let basis = self.degree_subspace(m)?;
        Ok(self.solve_in(l, &[basis], false)?.is_some())
    }

    /// Coordinates where the stacked bases over `lo..=hi` are linearly dependent.
    pub fn dependent_coordinates(&self, lo: i64, hi: i64) -> Result<Vec<usize>> {
        let bases: Vec<Arc<DegreeBasis>> = (lo..=hi).map(|m| self.degree_subspace(m)).collect::<Result<_>>()?;
        Ok((0..self.alg.dim())
            .filter(|&i| {
                let cols = block_columns(&bases, i);
                let rows = monomial_matrix(cols.iter().map(|c| c.1));
                !cols.is_empty() && rank(&Matrix::from_rows(rows)) < cols.len()
            })
            .collect())
    }

    fn solve_in(
        &self,
        l: &CurrentElement,
        bases: &[Arc<DegreeBasis>],
        unique: bool,
    ) -> Result<Option<BTreeMap<i64, CurrentElement>>> {
        let n = self.alg.dim();
        let mut out: BTreeMap<i64, CurrentElement> = BTreeMap::new();
        for i in l.support() {
            let cols = block_columns(bases, i);
            if cols.is_empty() {
                return Ok(None);
            }
            let target = &l.coords()[i];
            let rows = monomial_matrix(cols.iter().map(|c| c.1).chain([target]));
            let ncols = cols.len();
            let a = Matrix::from_rows(rows.iter().map(|r| r[..ncols].to_vec()).collect());
            if unique && rank(&a) < ncols {
                let (lo, hi) = (bases[0].m, bases[bases.len() - 1].m);
                return Err(Error::Decomposition(format!(
                    "degree subspaces {lo}..={hi} are linearly dependent in coordinate {i}"
                )));
            }
            let b: Vec<Scalar> = rows.iter().map(|r| r[ncols].clone()).collect();
            let Some(x) = a.solve(&b) else {
                return Ok(None);
            };
            for ((m, f), c) in cols.iter().zip(&x) {
                if !c.is_zero() {
                    out.entry(*m).or_insert_with(|| CurrentElement::zero(n)).coords[i].add_scaled(f, c);
                }
            }
        }
        Ok(Some(out))
    }

    /// Brackets all basis pairs of `L_m x L_n` for `m, n` in `lo..=hi`,
    /// decomposes each over `m + n - spread ..= m + n + spread` and checks
    /// membership of every bracket.
    pub fn verify_almost_graded(&self, lo: i64, hi: i64, spread: i64) -> Result<AlmostGradingReport> {
        let mut report = AlmostGradingReport {
            range: (lo, hi),
            pairs_checked: 0,
            lower_spread: 0,
            upper_spread: 0,
            failures: Vec::new(),
            dependent_coordinates: self.dependent_coordinates(2 * lo - spread, 2 * hi + spread)?,
        };
        for m in lo..=hi {
            for n in lo..=hi {
                let bm = self.degree_subspace(m)?;
                let bn = self.degree_subspace(n)?;
                for a in 0..bm.dim() {
                    for b in 0..bn.dim() {
                        let check = self.check_pair(&bm, &bn, a, b, spread);
                        report.pairs_checked += 1;
                        if let Ok(s) = &check.support {
                            if let (Some(first), Some(last)) = (s.first(), s.last()) {
                                report.lower_spread = report.lower_spread.max(m + n - first);
                                report.upper_spread = report.upper_spread.max(last - m - n);
                            }
                        }
                        let strict = matches!(&check.support, Ok(s) if s.iter().all(|&r| r == m + n));
                        if !strict || !check.closure.holds() {
                            report.failures.push(check);
                        }
                    }
                }
            }
        }
        Ok(report)
    }

    fn check_pair(&self, bm: &DegreeBasis, bn: &DegreeBasis, a: usize, b: usize, spread: i64) -> PairCheck {
        let (m, n) = (bm.m, bn.m);
        let br = bm.elements[a].bracket(&bn.elements[b], &self.alg).expect("same algebra");
        let closure = self.check_membership(&br);
        let support = match self.lies_in(&br, m + n) {
            Ok(true) if br.is_zero() => Ok(BTreeSet::new()),
            Ok(true) => Ok(BTreeSet::from([m + n])),
            Ok(false) => self
                .decompose(&br, m + n - spread, m + n + spread)
                .map(|parts| parts.into_iter().filter(|(_, e)| !e.is_zero()).map(|(r, _)| r).collect())
                .map_err(|e| e.to_string()),
            Err(e) => Err(e.to_string()),
        };
        PairCheck { m, n, a, b, support, closure }
    }
}

/// `(m, f)` for every basis element of the given degrees carried by coordinate `i`.
fn block_columns(bases: &[Arc<DegreeBasis>], i: usize) -> Vec<(i64, &PartialFraction)> {
    bases
        .iter()
        .flat_map(|b| (0..b.dim()).filter(move |&e| b.coordinate[e] == i).map(move |e| (b.m, b.function(e))))
        .collect()
}

/// Coefficient matrix of partial fractions over their joint monomials
/// `1, (z - p)^{-j}`: one row per monomial, one column per function.
fn monomial_matrix<'a>(fs: impl Iterator<Item = &'a PartialFraction> + Clone) -> Vec<Vec<Scalar>> {
    let mut keys: BTreeSet<(Option<Scalar>, usize)> = BTreeSet::new();
    keys.insert((None, 0));
    for f in fs.clone() {
        for (p, v) in f.parts() {
            for j in 1..=v.len() {
                keys.insert((Some(p.clone()), j));
            }
        }
    }
    let keys: Vec<(Option<Scalar>, usize)> = keys.into_iter().collect();
    let cols: Vec<&PartialFraction> = fs.collect();
    keys.iter()
        .map(|(p, j)| {
            cols.iter()
                .map(|f| match p {
                    None => f.constant_term().clone(),
                    Some(p) => f.principal_coeff(p, *j),
                })
                .collect()
        })
        .collect()
}

/// Per-coordinate Riemann-Roch count: `sum_i max(0, N - sum_gamma level_gamma(i))`
/// for divisors of degree `N - 1 + sum k_gamma`.
pub fn riemann_roch_count(lax: &LaxAlgebra) -> usize {
    let n = lax.curve().n() as i64;
    (0..lax.algebra().dim())
        .map(|i| {
            let lvl: i64 = lax.gradings().iter().map(|g| g.level(i)).sum();
            (n - lvl).max(0) as usize
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::frac;
    use crate::rootsys::{CartanType, GradingSpec};
    use crate::surface::GammaPoint;
    use proptest::prelude::*;

    pub(crate) fn lax(ty: CartanType, rank: usize, n: usize, mq: usize, pvec: &[i64], gammas: usize) -> LaxAlgebra {
        let alg = MatrixLieAlgebra::build(ty, rank).unwrap();
        let p = (0..n).map(|i| int(i as i64)).collect();
        let q = (0..mq).map(|j| int(-1 - j as i64)).collect();
        let g = (0..gammas)
            .map(|s| GammaPoint { coord: frac(1, s as i64 + 3), spec: GradingSpec::new(pvec.to_vec()).unwrap() })
            .collect();
        let curve = MarkedCurve::new(p, q, g).unwrap();
        let schedule = DegreeSchedule::default_for(&curve);
        LaxAlgebra::new(alg, curve, schedule).unwrap()
    }

    #[test]
    fn sl2_reference_dimensions() {
        let l = lax(CartanType::A, 2, 1, 1, &[1], 1);
        for m in -5..=5 {
            let b = l.degree_subspace(m).unwrap();
            assert_eq!(b.dim(), 3, "m = {m}");
            assert!(b.is_generic());
            assert_eq!(b.ambient_dim - b.constraint_rank, 3);
            assert_eq!(b.ambient_dim, 3 * (1 + 1));
            for e in &b.elements {
                assert!(l.in_degree(e, m).unwrap());
            }
        }
    }

    #[test]
    fn no_gamma_points_means_loop_algebra() {
        let l = lax(CartanType::A, 3, 2, 1, &[1, 0], 0);
        for m in -2..=2 {
            let b = l.degree_subspace(m).unwrap();
            assert_eq!(b.dim(), 8 * (b.divisor.degree() as usize + 1));
            assert_eq!(b.dim(), 16);
            assert_eq!(b.constraint_count, 0);
        }
    }

    #[test]
    fn dimension_matches_coordinatewise_riemann_roch() {
        // k |Gamma| > N: the level-k coordinates lose nothing, the level -k
        // ones cannot shed their extra pole conditions
        for (ty, r, n, mq, p, gam, expected) in [
            (CartanType::C, 2, 1, 1, vec![1, 0], 1, 11),
            (CartanType::B, 2, 1, 2, vec![0, 1], 1, 11),
            (CartanType::A, 3, 2, 1, vec![1, 0], 2, 16),
            (CartanType::A, 2, 1, 1, vec![1], 2, 4),
        ] {
            let l = lax(ty, r, n, mq, &p, gam);
            assert_eq!(riemann_roch_count(&l), expected);
            for m in -2..=2 {
                let b = l.degree_subspace(m).unwrap();
                assert_eq!(b.dim(), expected, "{} m = {m}", l.algebra().label());
                assert_eq!(b.constraint_count, l.gradings()[0].depth() as usize * l.algebra().dim() * gam);
                assert_eq!(b.ambient_dim - b.constraint_rank, b.dim());
                assert_eq!(b.is_generic(), expected == l.expected_dim());
            }
        }
    }

    #[test]
    fn membership_examples() {
        let l = lax(CartanType::C, 2, 1, 1, &[1, 0], 1);
        let g = l.algebra();
        let gr = &l.gradings()[0];
        let z0 = l.curve().gammas()[0].coord.clone();
        let x1 = gr.subspace(1)[0];
        assert!(!l.check_membership(&CurrentElement::constant(&g.unit(x1))).holds());
        let x0 = gr.subspace(0)[0];
        assert!(l.check_membership(&CurrentElement::constant(&g.unit(x0))).holds());
        let xm1 = gr.subspace(-1)[0];
        let simple = CurrentElement::pure(g.dim(), xm1, PartialFraction::pole(&z0, 1));
        assert!(l.check_membership(&simple).holds());
        let xm2 = gr.subspace(-2)[0];
        let deep = CurrentElement::pure(g.dim(), xm2, PartialFraction::pole(&z0, 3));
        assert!(!l.check_membership(&deep).holds());
        let elsewhere = CurrentElement::pure(g.dim(), x0, PartialFraction::pole(&int(7), 1));
        assert!(!l.check_membership(&elsewhere).holds());
    }

    #[test]
    fn bracket_with_itself_vanishes() {
        let l = lax(CartanType::A, 2, 1, 1, &[1], 1);
        let b = l.degree_subspace(1).unwrap();
        let x = b.elements.iter().fold(CurrentElement::zero(3), |acc, e| acc.add(e));
        assert!(x.bracket(&x, l.algebra()).unwrap().is_zero());
    }

    #[test]
    fn depth_one_brackets_keep_double_poles_clean() {
        let l = lax(CartanType::A, 3, 1, 1, &[1, 0], 1);
        let z0 = l.curve().gammas()[0].coord.clone();
        let b = l.degree_subspace(0).unwrap();
        for x in &b.elements {
            for y in &b.elements {
                let br = x.bracket(y, l.algebra()).unwrap();
                assert!(br.pole_order(&z0) <= 1);
            }
        }
    }

    #[test]
    fn decomposition_round_trip() {
        let l = lax(CartanType::A, 2, 2, 1, &[1], 0);
        let b1 = l.degree_subspace(-1).unwrap();
        let b2 = l.degree_subspace(2).unwrap();
        let x = b1.elements[0].add(&b2.elements[2].scale(&int(3)));
        let parts = l.decompose(&x, -3, 3).unwrap();
        let support: Vec<i64> = parts.iter().filter(|(_, e)| !e.is_zero()).map(|(m, _)| *m).collect();
        assert_eq!(support, vec![-1, 2]);
        assert_eq!(parts[&-1], b1.elements[0]);
        let single = l.decompose(&b2.elements[1], -3, 3).unwrap();
        assert_eq!(single.len(), 1);
        assert!(matches!(l.decompose(&b2.elements[1], -3, 1), Err(Error::OutsideWindow { .. })));
    }

    #[test]
    fn strict_grading_reference() {
        let l = lax(CartanType::A, 2, 1, 1, &[1], 1);
        let rep = l.verify_almost_graded(-1, 1, 2).unwrap();
        assert!(rep.strict(), "{:?}", rep.failures.first());
        let l = lax(CartanType::A, 2, 1, 1, &[1], 0);
        let rep = l.verify_almost_graded(-1, 1, 1).unwrap();
        assert!(rep.strict());
        assert!(rep.direct_sum());
        assert_eq!(rep.pairs_checked, 81);
    }

    #[test]
    fn gamma_points_break_uniqueness_of_components() {
        // the level -1 block of sl(2) carries two functions per degree, both
        // vanishing to order m at P, so neighbouring degrees overlap
        let l = lax(CartanType::A, 2, 1, 1, &[1], 1);
        let low = l.gradings()[0].subspace(-1)[0];
        assert_eq!(l.dependent_coordinates(0, 1).unwrap(), vec![low]);
        assert!(l.dependent_coordinates(0, 0).unwrap().is_empty());
        let high = l.gradings()[0].subspace(1)[0];
        assert!(l.degree_subspace(0).unwrap().coordinate.iter().all(|&i| i != high));
    }

    #[test]
    fn overlapping_degrees_are_reported() {
        // N = 1 with depth 2: the stacked bases are dependent in the level -2 block
        let l = lax(CartanType::C, 2, 1, 1, &[1, 0], 1);
        let b = l.degree_subspace(0).unwrap();
        let gr = &l.gradings()[0];
        let i = gr.subspace(-2)[0];
        let e = (0..b.dim()).find(|&e| b.coordinate[e] == i).unwrap();
        assert!(matches!(l.decompose(&b.elements[e], -1, 1), Err(Error::Decomposition(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn random_window_elements_reassemble(coeffs in proptest::collection::vec(-3i64..4, 21)) {
            let l = lax(CartanType::A, 2, 1, 1, &[1], 0);
            let mut x = CurrentElement::zero(3);
            let mut t = 0;
            for m in -3..=3 {
                let b = l.degree_subspace(m).unwrap();
                for e in &b.elements {
                    x = x.add(&e.scale(&int(coeffs[t])));
                    t += 1;
                }
            }
            let parts = l.decompose(&x, -3, 3).unwrap();
            let sum = parts.values().fold(CurrentElement::zero(3), |acc, e| acc.add(e));
            prop_assert_eq!(sum, x);
            for (m, e) in &parts {
                prop_assert!(l.in_degree(e, *m).unwrap());
            }
        }

        #[test]
        fn brackets_stay_in_the_algebra(m in -2i64..3, n in -2i64..3, a in 0usize..8, b in 0usize..8) {
            let l = lax(CartanType::A, 3, 2, 1, &[1, 0], 2);
            let bm = l.degree_subspace(m).unwrap();
            let bn = l.degree_subspace(n).unwrap();
            let x = &bm.elements[a % bm.dim()];
            let y = &bn.elements[b % bn.dim()];
            let br = x.bracket(y, l.algebra()).unwrap();
            prop_assert!(l.check_membership(&br).holds());
        }
    }
}
