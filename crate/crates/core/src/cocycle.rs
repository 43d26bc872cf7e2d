//! The connection form `omega`, the cocycle
//! `eta(L, L') = sum_P res <L, (d - ad omega) L'>` and its checks.

use crate::current::{CurrentElement, LaxAlgebra};
use crate::exactnum::{format_scalar, int, PartialFraction, RatFun, Scalar};
use crate::liealg::{FormKind, InvariantForm, MatrixLieAlgebra};
use crate::{Error, Result};
use num_traits::Zero;

/// `omega / dz` as a current together with its pole profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionForm {
    element: CurrentElement,
    /// Order of zero demanded at each P-point.
    plus_orders: Vec<i64>,
    /// Allowed pole order at each Q-point.
    minus_orders: Vec<i64>,
}

impl ConnectionForm {
    /// `sum_gamma h_gamma (1/(z - gamma) - 1/(z - Q_1))`: Cartan-valued, simple
    /// poles with residue `h_gamma` and holomorphic at infinity.
    pub fn build(lax: &LaxAlgebra) -> Result<Self> {
        let alg = lax.algebra();
        let curve = lax.curve();
        let mut element = CurrentElement::zero(alg.dim());
        let mut minus = vec![0; curve.m()];
        if !curve.gammas().is_empty() {
            let q1 = curve.q_points()[0].clone();
            minus[0] = 1;
            let mut coords: Vec<PartialFraction> = element.coords().to_vec();
            for (g, gr) in curve.gammas().iter().zip(lax.gradings()) {
                let h = gr.grading_element();
                if h.iter().enumerate().any(|(i, c)| i >= alg.cartan_dim() && !c.is_zero()) {
                    return Err(Error::InvalidConnection("grading element outside the common Cartan".into()));
                }
                let f = PartialFraction::pole(&g.coord, 1).sub(&PartialFraction::pole(&q1, 1));
                for (i, c) in h.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    coords[i].add_scaled(&f, c);
                }
            }
            element = CurrentElement::new(coords);
        }
        ConnectionForm::new(lax, element, vec![0; curve.n()], minus)
    }

    /// The zero form, used as a negative control.
    pub fn zero(lax: &LaxAlgebra) -> Self {
        ConnectionForm {
            element: CurrentElement::zero(lax.algebra().dim()),
            plus_orders: vec![0; lax.curve().n()],
            minus_orders: vec![0; lax.curve().m()],
        }
    }

    /// Validates the residues at `gamma`, the `g_0` condition on the regular
    /// part there, the divisor bound and holomorphy at infinity.
    pub fn new(lax: &LaxAlgebra, element: CurrentElement, plus: Vec<i64>, minus: Vec<i64>) -> Result<Self> {
        let curve = lax.curve();
        let bad = |s: String| Err(Error::InvalidConnection(s));
        if element.dim() != lax.algebra().dim() || plus.len() != curve.n() || minus.len() != curve.m() {
            return bad("profile does not match the curve and algebra".into());
        }
        if plus.iter().chain(&minus).any(|&v| v < 0) {
            return bad("pole profile entries must be non-negative".into());
        }
        for f in element.coords() {
            if !f.constant_term().is_zero() || !f.total_finite_residue().is_zero() {
                return bad("omega/dz is not O(z^-2) at infinity".into());
            }
            for p in f.poles() {
                if curve.gammas().iter().any(|g| &g.coord == p) || curve.q_points().contains(p) {
                    continue;
                }
                return bad(format!("pole at {}", format_scalar(p)));
            }
        }
        for (a, &mp) in curve.p_points().iter().zip(&plus) {
            if element.coords().iter().any(|f| f.valuation_at(a).is_some_and(|v| v < mp)) {
                return bad(format!("zero of order {mp} fails at P = {}", format_scalar(a)));
            }
        }
        for (a, &mm) in curve.q_points().iter().zip(&minus) {
            if element.pole_order(a) as i64 > mm {
                return bad(format!("pole order above {mm} at Q = {}", format_scalar(a)));
            }
        }
        for (g, gr) in curve.gammas().iter().zip(lax.gradings()) {
            if element.pole_order(&g.coord) > 1 {
                return bad("pole of order > 1 at a gamma point".into());
            }
            if element.coefficient(&g.coord, -1) != gr.grading_element() {
                return bad("residue at a gamma point differs from its grading element".into());
            }
            let zero_block = gr.subspace(0);
            for l in 0..=2 * gr.depth() {
                let c = element.coefficient(&g.coord, l);
                if c.iter().enumerate().any(|(i, v)| !v.is_zero() && !zero_block.contains(&i)) {
                    return bad(format!("coefficient {l} at a gamma point leaves g_0"));
                }
            }
        }
        Ok(ConnectionForm { element, plus_orders: plus, minus_orders: minus })
    }

    pub fn element(&self) -> &CurrentElement {
        &self.element
    }

    pub fn plus_orders(&self) -> &[i64] {
        &self.plus_orders
    }

    pub fn minus_orders(&self) -> &[i64] {
        &self.minus_orders
    }
}

/// `eta` together with its residues at each P- and Q-point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleEvaluation {
    pub value: Scalar,
    pub per_p: Vec<Scalar>,
    pub per_q: Vec<Scalar>,
    pub form: FormKind,
}

impl CocycleEvaluation {
    /// The residue theorem: the Q-side sum equals `-eta`.
    pub fn q_side_agrees(&self) -> bool {
        let q: Scalar = self.per_q.iter().sum();
        q == -&self.value
    }
}

/// `sum_ij G_ij x_i y_j` for current-valued `x, y`.
pub fn pair(form: &InvariantForm, x: &CurrentElement, y: &CurrentElement) -> PartialFraction {
    let mut out = PartialFraction::zero();
    for i in x.support() {
        for j in y.support() {
            let g = &form.gram[(i, j)];
            if !g.is_zero() {
                out.add_scaled(&x.coords()[i].mul(&y.coords()[j]), g);
            }
        }
    }
    out
}

/// `rho` with `rho dz = <L, (d - ad omega) L'>`.
pub fn rho(
    alg: &MatrixLieAlgebra,
    form: &InvariantForm,
    omega: &ConnectionForm,
    l: &CurrentElement,
    l2: &CurrentElement,
) -> Result<PartialFraction> {
    let twisted = l2.derivative().sub(&omega.element.bracket(l2, alg)?);
    Ok(pair(form, l, &twisted))
}

/// Whether `rho` is regular at each grading point.
pub fn check_gamma_holomorphy(lax: &LaxAlgebra, rho: &PartialFraction) -> Vec<bool> {
    lax.curve().gammas().iter().map(|g| rho.pole_order(&g.coord) == 0).collect()
}

pub fn eta(
    lax: &LaxAlgebra,
    form: &InvariantForm,
    omega: &ConnectionForm,
    l: &CurrentElement,
    l2: &CurrentElement,
) -> Result<CocycleEvaluation> {
    let r = rho(lax.algebra(), form, omega, l, l2)?;
    Ok(evaluate(lax, &r, form.kind))
}

fn evaluate(lax: &LaxAlgebra, r: &PartialFraction, kind: FormKind) -> CocycleEvaluation {
    let per_p: Vec<Scalar> = lax.curve().p_points().iter().map(|a| r.residue(a)).collect();
    let per_q: Vec<Scalar> = lax.curve().q_points().iter().map(|a| r.residue(a)).collect();
    CocycleEvaluation { value: per_p.iter().sum(), per_p, per_q, form: kind }
}

/// Window of `m + m'` outside which `eta` vanishes on `L_m x L_m'`.
///
/// At a Q-point `rho` has pole order at most `a (m + m') + b_m + b_m' + max(1, m^-)`,
/// the `1` coming from differentiating `L'`, so a residue there needs
/// `a (m + m') >= 1 - max(2B + 1, 2B + max m^-)`.
pub fn locality_bounds(lax: &LaxAlgebra, omega: &ConnectionForm) -> (i64, i64) {
    let upper = -1 - omega.plus_orders.iter().map(|&m| m.min(-1)).min().unwrap_or(-1);
    let b = lax.schedule().bound();
    let max_minus = int(omega.minus_orders.iter().copied().max().unwrap_or(0));
    let two_b = &b * int(2);
    let inner = std::cmp::max(&two_b + int(1), &two_b + max_minus);
    let lower = lax
        .schedule()
        .slopes()
        .iter()
        .map(|a| (int(1) - &inner) / a)
        .min()
        .expect("at least one Q-point")
        .floor()
        .to_integer();
    (i64::try_from(lower).expect("small bound"), upper)
}

/// Checks of the cocycle over a degree window.
#[derive(Clone, Debug, Default)]
pub struct CocycleReport {
    pub pairs_checked: usize,
    pub bounds: (i64, i64),
    /// Smallest and largest `m + n` with nonzero `eta`.
    pub observed: Option<(i64, i64)>,
    pub gamma_poles: Vec<(i64, i64, usize, usize)>,
    pub antisymmetry_failures: Vec<(i64, i64, usize, usize)>,
    pub locality_failures: Vec<(i64, i64, usize, usize)>,
    pub residue_failures: Vec<(i64, i64, usize, usize)>,
}

impl CocycleReport {
    pub fn holomorphic(&self) -> bool {
        self.gamma_poles.is_empty()
    }

    pub fn antisymmetric(&self) -> bool {
        self.antisymmetry_failures.is_empty()
    }

    pub fn local(&self) -> bool {
        self.locality_failures.is_empty()
    }

    pub fn residues_balance(&self) -> bool {
        self.residue_failures.is_empty()
    }
}

/// Runs holomorphy, antisymmetry, residue balance and locality over all basis
/// pairs of `L_m x L_n`, `m, n` in `lo..=hi`.
pub fn verify_cocycle(
    lax: &LaxAlgebra,
    form: &InvariantForm,
    omega: &ConnectionForm,
    lo: i64,
    hi: i64,
) -> Result<CocycleReport> {
    let bounds = locality_bounds(lax, omega);
    let mut rep = CocycleReport { bounds, ..Default::default() };
    let alg = lax.algebra();
    for m in lo..=hi {
        let bm = lax.degree_subspace(m)?;
        for n in lo..=hi {
            let bn = lax.degree_subspace(n)?;
            for (a, x) in bm.elements.iter().enumerate() {
                for (b, y) in bn.elements.iter().enumerate() {
                    rep.pairs_checked += 1;
                    let key = (m, n, a, b);
                    let r = rho(alg, form, omega, x, y)?;
                    if check_gamma_holomorphy(lax, &r).contains(&false) {
                        rep.gamma_poles.push(key);
                    }
                    let ev = evaluate(lax, &r, form.kind);
                    if !ev.q_side_agrees() {
                        rep.residue_failures.push(key);
                    }
                    let back = eta(lax, form, omega, y, x)?;
                    if back.value != -&ev.value {
                        rep.antisymmetry_failures.push(key);
                    }
                    if !ev.value.is_zero() {
                        let s = m + n;
                        rep.observed = Some(match rep.observed {
                            None => (s, s),
                            Some((a, b)) => (a.min(s), b.max(s)),
                        });
                        if s < bounds.0 || s > bounds.1 {
                            rep.locality_failures.push(key);
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, Default)]
pub struct CocycleIdentityReport {
    pub triples: usize,
    /// Index triples into the concatenated degree bases with nonzero defect.
    pub failures: Vec<(usize, usize, usize)>,
}

/// `eta([x, y], z) + eta([y, z], x) + eta([z, x], y) = 0` over all triples of
/// basis elements drawn from the given degrees.
pub fn verify_cocycle_identity(
    lax: &LaxAlgebra,
    form: &InvariantForm,
    omega: &ConnectionForm,
    degrees: &[i64],
) -> Result<CocycleIdentityReport> {
    let mut elems = Vec::new();
    for &m in degrees {
        elems.extend(lax.degree_subspace(m)?.elements.iter().cloned());
    }
    let alg = lax.algebra();
    let e = |x: &CurrentElement, y: &CurrentElement| eta(lax, form, omega, x, y).map(|v| v.value);
    let mut rep = CocycleIdentityReport::default();
    for i in 0..elems.len() {
        for j in i..elems.len() {
            for k in j..elems.len() {
                let (x, y, z) = (&elems[i], &elems[j], &elems[k]);
                let total = e(&x.bracket(y, alg)?, z)? + e(&y.bracket(z, alg)?, x)? + e(&z.bracket(x, alg)?, y)?;
                rep.triples += 1;
                if !total.is_zero() {
                    rep.failures.push((i, j, k));
                }
            }
        }
    }
    Ok(rep)
}

/// Both sides of `<L, (ad omega) L'> = -tr(ad [L, L'] ad omega)`, the first
/// in `form`, the second through the Killing form rescaled to `form`.
pub fn coboundary_sides(
    alg: &MatrixLieAlgebra,
    form: &InvariantForm,
    omega: &ConnectionForm,
    l: &CurrentElement,
    l2: &CurrentElement,
) -> Result<(RatFun, RatFun)> {
    let lhs = pair(form, l, &omega.element.bracket(l2, alg)?);
    let scale = match form.kind {
        FormKind::Killing => int(1),
        FormKind::Trace => alg
            .killing_trace_ratio()
            .ok_or_else(|| Error::InvalidConnection("no Killing/trace ratio for this algebra".into()))?
            .recip(),
        FormKind::Custom => return Err(Error::InvalidConnection("rescaling needs the trace or Killing form".into())),
    };
    let killing = InvariantForm::killing(alg);
    let rhs = pair(&killing, &l.bracket(l2, alg)?, &omega.element).scale(&-scale);
    Ok((lhs.to_ratfun(), rhs.to_ratfun()))
}

pub fn coboundary_identity(
    alg: &MatrixLieAlgebra,
    form: &InvariantForm,
    omega: &ConnectionForm,
    l: &CurrentElement,
    l2: &CurrentElement,
) -> Result<bool> {
    let (a, b) = coboundary_sides(alg, form, omega, l, l2)?;
    Ok(a == b)
}

/// A random element of `L_lo + ... + L_hi` with small integer coefficients.
pub fn random_element(lax: &LaxAlgebra, lo: i64, hi: i64, mut draw: impl FnMut() -> i64) -> Result<CurrentElement> {
    let mut x = CurrentElement::zero(lax.algebra().dim());
    for m in lo..=hi {
        for e in &lax.degree_subspace(m)?.elements {
            let c = draw();
            if c != 0 {
                x = x.add(&e.scale(&int(c)));
            }
        }
    }
    Ok(x)
}

/// A pair `(X/(z - gamma), Y (z - gamma)/(z - Q_1))` with `X` in `g_{-1}`,
/// `Y` in `g_1` at the first grading point and `<X, Y> != 0`, with extra
/// factors vanishing at the other grading points as needed. Both lie in the
/// current algebra; `<L, dL'>` alone has a pole at `gamma`.
pub fn gamma_probe(lax: &LaxAlgebra, form: &InvariantForm) -> Option<(CurrentElement, CurrentElement)> {
    let gammas = lax.curve().gammas();
    let q1 = lax.curve().q_points().first()?.clone();
    let first = lax.gradings().first()?;
    let n = lax.algebra().dim();
    let (i, j) = first
        .subspace(-1)
        .into_iter()
        .flat_map(|i| first.subspace(1).into_iter().map(move |j| (i, j)))
        .find(|&(i, j)| !form.gram[(i, j)].is_zero())?;
    let vanishing = |s: usize, e: i64| {
        let c = gammas[s].coord.clone();
        let f = PartialFraction::constant(int(1)).add(&PartialFraction::pole(&q1, 1).scale(&(&q1 - &c)));
        (0..e).fold(PartialFraction::constant(int(1)), |acc, _| acc.mul(&f))
    };
    let damp = |coord: usize, f: PartialFraction| {
        (1..gammas.len()).fold(f, |acc, s| acc.mul(&vanishing(s, lax.gradings()[s].level(coord).max(0))))
    };
    let x = CurrentElement::pure(n, i, damp(i, PartialFraction::pole(&gammas[0].coord, 1)));
    let y = CurrentElement::pure(n, j, damp(j, vanishing(0, 1)));
    Some((x, y))
}
