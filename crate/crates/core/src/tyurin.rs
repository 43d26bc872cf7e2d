//! Tyurin-type parametrizations of the negative grading subspaces for
//! simple-root gradings, compared with the computed subspaces by exact rank.

use crate::exactnum::{frac, int, null_space, one, rank, zero, Matrix, Scalar};
use crate::grading::GradedStructure;
use crate::liealg::MatrixLieAlgebra;
use crate::rootsys::{CartanType, GradingSpec};
use crate::{Error, Result};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Equal,
    /// The family spans a proper subspace of the computed one.
    FamilyProper,
    /// The computed subspace is a proper subspace of the family span.
    SubspaceProper,
    Incomparable,
    /// Some family member is not in the algebra.
    NotInAlgebra,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equal => "equal",
            Verdict::FamilyProper => "family proper",
            Verdict::SubspaceProper => "subspace proper",
            Verdict::Incomparable => "incomparable",
            Verdict::NotInAlgebra => "not in algebra",
        })
    }
}

/// Span comparison between a parametrized family and a computed subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanCheck {
    pub name: String,
    pub family_dim: usize,
    pub subspace_dim: usize,
    pub verdict: Verdict,
}

impl SpanCheck {
    pub fn compare(
        name: impl Into<String>,
        alg: &MatrixLieAlgebra,
        family: &[Matrix],
        subspace: &[Matrix],
    ) -> SpanCheck {
        let name = name.into();
        let flat = |ms: &[Matrix]| Matrix::from_rows(ms.iter().map(Matrix::flatten).collect());
        let rk = |ms: &[Matrix]| if ms.is_empty() { 0 } else { rank(&flat(ms)) };
        let (rf, rs) = (rk(family), rk(subspace));
        if !family.iter().all(|m| alg.contains(m)) {
            return SpanCheck { name, family_dim: rf, subspace_dim: rs, verdict: Verdict::NotInAlgebra };
        }
        let union: Vec<Matrix> = family.iter().chain(subspace).cloned().collect();
        let ru = rk(&union);
        let verdict = match (ru == rf, ru == rs) {
            (true, true) => Verdict::Equal,
            (false, true) => Verdict::FamilyProper,
            (true, false) => Verdict::SubspaceProper,
            (false, false) => Verdict::Incomparable,
        };
        SpanCheck { name, family_dim: rf, subspace_dim: rs, verdict }
    }

    pub fn is_equal(&self) -> bool {
        self.verdict == Verdict::Equal
    }
}

fn unit_vec(d: usize, i: usize) -> Vec<Scalar> {
    (0..d).map(|j| if i == j { one() } else { zero() }).collect()
}

fn outer(a: &[Scalar], b: &[Scalar]) -> Matrix {
    Matrix::from_rows(a.iter().map(|x| b.iter().map(|y| x * y).collect()).collect())
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `(a b^T + sign b a^T) sigma`, or without `sigma` when it is `None`.
fn wedge(a: &[Scalar], b: &[Scalar], sign: i64, sigma: Option<&Matrix>) -> Matrix {
    let m = outer(a, b).add(&outer(b, a).scale(&int(sign)));
    match sigma {
        Some(s) => m.mul(s),
        None => m,
    }
}

/// Basis of `{ beta : c_i^T beta = 0 }` in dimension `d`.
fn orthogonal_complement(d: usize, constraints: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if constraints.is_empty() {
        return (0..d).map(|i| unit_vec(d, i)).collect();
    }
    null_space(&Matrix::from_rows(constraints.to_vec()))
}

fn subspace_matrices(alg: &MatrixLieAlgebra, gr: &GradedStructure, p: i64) -> Vec<Matrix> {
    gr.subspace(p).into_iter().map(|i| alg.basis()[i].clone()).collect()
}

fn sigma_of(alg: &MatrixLieAlgebra) -> Result<&Matrix> {
    alg.sigma().ok_or_else(|| Error::InvalidTyurinData(format!("{} has no defining form", alg.label())))
}

fn graded(alg: &MatrixLieAlgebra, simple: usize) -> Result<GradedStructure> {
    let rank = alg.roots().map(|r| r.system().rank()).unwrap_or(0);
    GradedStructure::new(alg, &GradingSpec::simple(rank, simple))
}

/// `{ alpha beta^T : beta^T alpha = 0 }` with `alpha = e_1`.
pub fn family_a_minus1(n: usize) -> Vec<Matrix> {
    let alpha = unit_vec(n, 0);
    orthogonal_complement(n, std::slice::from_ref(&alpha)).iter().map(|b| outer(&alpha, b)).collect()
}

/// `sum_i e_i beta_i^T` for `i <= r`, each `beta_j` orthogonal to every `e_i`.
pub fn family_a_block(n: usize, r: usize) -> Vec<Matrix> {
    let frames: Vec<Vec<Scalar>> = (0..r).map(|i| unit_vec(n, i)).collect();
    let betas = orthogonal_complement(n, &frames);
    frames.iter().flat_map(|a| betas.iter().map(move |b| outer(a, b))).collect()
}

/// `{ (alpha beta^T + sign beta alpha^T) sigma : beta^T sigma alpha = 0 }` with
/// `alpha = e_1`; `sign = -1` for orthogonal, `+1` for symplectic algebras.
/// `extra` adds further linear constraints on `beta`.
pub fn family_first(sigma: &Matrix, sign: i64, extra: &[Vec<Scalar>]) -> Vec<Matrix> {
    let d = sigma.rows();
    let alpha = unit_vec(d, 0);
    let mut cons = vec![sigma.mul_vec(&alpha)];
    cons.extend_from_slice(extra);
    orthogonal_complement(d, &cons).iter().map(|b| wedge(&alpha, b, sign, Some(sigma))).collect()
}

/// `nu alpha alpha^T sigma`.
pub fn family_c_minus2(sigma: &Matrix) -> Vec<Matrix> {
    let alpha = unit_vec(sigma.rows(), 0);
    vec![outer(&alpha, &alpha).mul(sigma)]
}

/// `sum_i (alpha_i beta_i^T + sign beta_i alpha_i^T) sigma` with `alpha_i = e_i`
/// and every `beta_i` supported on the first `n` coordinates.
pub fn family_multi_frame(sigma: &Matrix, n: usize, sign: i64) -> Vec<Matrix> {
    let d = sigma.rows();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            out.push(wedge(&unit_vec(d, i), &unit_vec(d, j), sign, Some(sigma)));
        }
    }
    out
}

/// `alpha_0 beta_0^T - beta_0 alpha_0^T` with `alpha_0` the middle basis
/// vector of `so(2n+1)`, optionally followed by `sigma`.
pub fn family_b_middle(sigma: &Matrix, n: usize, with_sigma: bool) -> Vec<Matrix> {
    let d = sigma.rows();
    let a0 = unit_vec(d, n);
    (0..n).map(|j| wedge(&a0, &unit_vec(d, j), -1, with_sigma.then_some(sigma))).collect()
}

/// Checks the relations `alpha_i^T sigma beta_j = alpha_i^T sigma alpha_j = beta_i^T sigma beta_j = 0`
/// for frames and parameters supported on the first `n` coordinates.
pub fn multi_frame_relations_hold(sigma: &Matrix, n: usize) -> bool {
    let d = sigma.rows();
    let vs: Vec<Vec<Scalar>> = (0..n).map(|i| unit_vec(d, i)).collect();
    vs.iter().all(|a| vs.iter().all(|b| dot(a, &sigma.mul_vec(b)).is_zero()))
}

/// Span checks of the classical families. Names encode type, grading and level.
pub fn classical_checks(ty: CartanType, n: usize) -> Result<Vec<SpanCheck>> {
    let alg = MatrixLieAlgebra::build(ty, n)?;
    let mut out = Vec::new();
    match ty {
        CartanType::A => {
            let size = alg.size();
            let gr = graded(&alg, 0)?;
            out.push(SpanCheck::compare(
                "A first g_-1",
                &alg,
                &family_a_minus1(size),
                &subspace_matrices(&alg, &gr, -1),
            ));
            for r in 2..=size / 2 {
                let gr = graded(&alg, r - 1)?;
                let name = format!("A root {r} g_-1");
                out.push(SpanCheck::compare(name, &alg, &family_a_block(size, r), &subspace_matrices(&alg, &gr, -1)));
            }
        }
        CartanType::D => {
            let s = sigma_of(&alg)?;
            let gr = graded(&alg, 0)?;
            out.push(SpanCheck::compare(
                "D first g_-1",
                &alg,
                &family_first(s, -1, &[]),
                &subspace_matrices(&alg, &gr, -1),
            ));
            let gr = graded(&alg, n - 1)?;
            out.push(SpanCheck::compare(
                "D last g_-1",
                &alg,
                &family_multi_frame(s, n, -1),
                &subspace_matrices(&alg, &gr, -1),
            ));
        }
        CartanType::C => {
            let s = sigma_of(&alg)?;
            let d = s.rows();
            let gr = graded(&alg, 0)?;
            out.push(SpanCheck::compare("C first g_-2", &alg, &family_c_minus2(s), &subspace_matrices(&alg, &gr, -2)));
            // beta = alpha satisfies beta^T sigma alpha = 0 and lands in g_-2
            out.push(SpanCheck::compare(
                "C first g_-1 literal",
                &alg,
                &family_first(s, 1, &[]),
                &subspace_matrices(&alg, &gr, -1),
            ));
            let filtration: Vec<Matrix> = gr.filtration(-1).into_iter().map(|i| alg.basis()[i].clone()).collect();
            out.push(SpanCheck::compare("C first g~_-1 literal", &alg, &family_first(s, 1, &[]), &filtration));
            out.push(SpanCheck::compare(
                "C first g_-1",
                &alg,
                &family_first(s, 1, &[unit_vec(d, 0)]),
                &subspace_matrices(&alg, &gr, -1),
            ));
            let gr = graded(&alg, n - 1)?;
            out.push(SpanCheck::compare(
                "C last g_-1",
                &alg,
                &family_multi_frame(s, n, 1),
                &subspace_matrices(&alg, &gr, -1),
            ));
        }
        CartanType::B => {
            let s = sigma_of(&alg)?;
            let gr = graded(&alg, 0)?;
            out.push(SpanCheck::compare(
                "B first g_-1",
                &alg,
                &family_first(s, -1, &[]),
                &subspace_matrices(&alg, &gr, -1),
            ));
            let gr = graded(&alg, n - 1)?;
            let g1 = subspace_matrices(&alg, &gr, -1);
            out.push(SpanCheck::compare("B last g_-1", &alg, &family_b_middle(s, n, true), &g1));
            out.push(SpanCheck::compare("B last g_-1 without sigma", &alg, &family_b_middle(s, n, false), &g1));
            out.push(SpanCheck::compare(
                "B last g_-2",
                &alg,
                &family_multi_frame(s, n, -1),
                &subspace_matrices(&alg, &gr, -2),
            ));
        }
        CartanType::G2 => return Err(Error::UnsupportedAlgebra { ty: "G2".into(), n }),
    }
    Ok(out)
}

/// `{ X : X alpha in C alpha }` against `g~_0` for the first grading of `sl(n)`.
pub fn stabilizer_check_a(n: usize) -> Result<SpanCheck> {
    let alg = MatrixLieAlgebra::build(CartanType::A, n)?;
    let gr = graded(&alg, 0)?;
    let size = alg.size();
    // X e_1 has no component along e_2..e_n
    let rows: Vec<Vec<Scalar>> = (1..size).map(|i| alg.basis().iter().map(|b| b[(i, 0)].clone()).collect()).collect();
    let stab: Vec<Matrix> = null_space(&Matrix::from_rows(rows)).iter().map(|c| alg.matrix_of(c)).collect();
    let filt: Vec<Matrix> = gr.filtration(0).into_iter().map(|i| alg.basis()[i].clone()).collect();
    Ok(SpanCheck::compare("A stabilizer of alpha vs g~_0", &alg, &stab, &filt))
}

/// `alpha^T sigma L alpha` for every basis element `L` of `g_1` of the first
/// grading of `sp(2n)`.
pub fn c_level_one_values(n: usize) -> Result<Vec<Scalar>> {
    let alg = MatrixLieAlgebra::build(CartanType::C, n)?;
    let s = sigma_of(&alg)?;
    let gr = graded(&alg, 0)?;
    let alpha = unit_vec(s.rows(), 0);
    let sa = s.transpose().mul_vec(&alpha);
    Ok(gr.subspace(1).into_iter().map(|i| dot(&sa, &alg.basis()[i].mul_vec(&alpha))).collect())
}

/// Level dimensions of the G2 gradings and the rank of the rational form of
/// its depth-two family for `g_-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G2Report {
    /// `(p, dim g_p)` for the grading by the second simple root.
    pub depth_two: Vec<(i64, usize)>,
    /// `(p, dim g_p)` for the grading by the first simple root.
    pub depth_three: Vec<(i64, usize)>,
    pub family_parameters: usize,
    pub family_rank: usize,
    pub level_minus_one_dim: usize,
    /// Parameter vectors `(b01, b02, x, y, u, w)` mapped to zero.
    pub relations: Vec<Vec<Scalar>>,
    pub family_in_model: bool,
    pub top_family_in_model: bool,
}

impl G2Report {
    pub fn dims_match(&self) -> bool {
        let d2: Vec<usize> = self.depth_two.iter().map(|x| x.1).collect();
        let d3: Vec<usize> = self.depth_three.iter().map(|x| x.1).collect();
        d2 == [1, 4, 4, 4, 1] && d3 == [2, 1, 2, 4, 2, 1, 2]
    }
}

fn bracket3(x: &[Scalar]) -> Matrix {
    let z = zero();
    Matrix::from_rows(vec![
        vec![z.clone(), x[2].clone(), -&x[1]],
        vec![-&x[2], z.clone(), x[0].clone()],
        vec![x[1].clone(), -&x[0], z],
    ])
}

/// The depth-two `g_-1` family, conjugated by `diag(1/sqrt 2, 1, ..., 1)` so
/// that it is rational: blocks of sizes 1, 3, 3 with
/// `b1 = (x, y, 0)` and `b2 = (u, 0, w)`.
pub fn g2_family(p: &[Scalar]) -> Matrix {
    let (b01, b02) = (&p[0], &p[1]);
    let a1 = unit_vec(3, 1);
    let a2 = unit_vec(3, 2);
    let b1 = vec![p[2].clone(), p[3].clone(), zero()];
    let b2 = vec![p[4].clone(), zero(), p[5].clone()];
    let mut m = Matrix::zeros(7, 7);
    let put = |m: &mut Matrix, r0: usize, c0: usize, block: &Matrix| {
        for i in 0..block.rows() {
            for j in 0..block.cols() {
                m[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    };
    for j in 0..3 {
        m[(0, 1 + j)] = -(b02 * &a2[j]);
        m[(0, 4 + j)] = -(b01 * &a1[j]);
        m[(1 + j, 0)] = int(2) * b01 * &a1[j];
        m[(4 + j, 0)] = int(2) * b02 * &a2[j];
    }
    put(&mut m, 1, 1, &outer(&a1, &b2).sub(&outer(&b1, &a2)));
    put(&mut m, 1, 4, &bracket3(&a2).scale(b02));
    put(&mut m, 4, 1, &bracket3(&a1).scale(b01));
    put(&mut m, 4, 4, &outer(&a2, &b1).sub(&outer(&b2, &a1)));
    m
}

/// `mu diag(0, a1 a2^T, -a2 a1^T)`.
pub fn g2_top_family() -> Matrix {
    let a1 = unit_vec(3, 1);
    let a2 = unit_vec(3, 2);
    let mut m = Matrix::zeros(7, 7);
    let (p, q) = (outer(&a1, &a2), outer(&a2, &a1));
    for i in 0..3 {
        for j in 0..3 {
            m[(1 + i, 1 + j)] = p[(i, j)].clone();
            m[(4 + i, 4 + j)] = -&q[(i, j)];
        }
    }
    m
}

pub fn g2_report() -> Result<G2Report> {
    let alg = MatrixLieAlgebra::build(CartanType::G2, 2)?;
    let two = graded(&alg, 1)?;
    let three = graded(&alg, 0)?;
    let images: Vec<Vec<Scalar>> = (0..6).map(|i| g2_family(&unit_vec(6, i)).flatten()).collect();
    let image = Matrix::from_rows(images);
    let family_rank = rank(&image);
    let relations = null_space(&image.transpose());
    let family_in_model = (0..6).all(|i| alg.contains(&g2_family(&unit_vec(6, i))));
    Ok(G2Report {
        depth_two: two.dims(),
        depth_three: three.dims(),
        family_parameters: 6,
        family_rank,
        level_minus_one_dim: two.subspace(-1).len(),
        relations,
        family_in_model,
        top_family_in_model: alg.contains(&g2_top_family()),
    })
}

/// Which expansion a set of Tyurin parameters describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GermCase {
    /// `sl(n)`, first grading: `alpha beta^T z^-1 + L_0 + ...`.
    A,
    /// `sp(2n)`, first grading: `nu alpha alpha^T sigma z^-2 + (alpha beta^T + beta alpha^T) sigma z^-1 + L_0 + L_1 z + ...`.
    C,
}

/// Parameters of a local expansion with `alpha = e_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TyurinData {
    pub case: GermCase,
    pub beta: Vec<Scalar>,
    pub nu: Scalar,
    pub l0: Matrix,
    pub l1: Option<Matrix>,
}

/// Laurent coefficients `L_p` of an expansion at a grading point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Germ {
    pub coefficients: BTreeMap<i64, Matrix>,
}

impl Germ {
    /// The expansion condition on the stored coefficients, orders `-k..k-1`.
    pub fn violation(&self, alg: &MatrixLieAlgebra, gr: &GradedStructure) -> Option<String> {
        let k = gr.depth();
        if let Some((&p, _)) = self.coefficients.iter().find(|(p, m)| **p < -k && !m.is_zero()) {
            return Some(format!("pole of order {} exceeds {k}", -p));
        }
        for (&p, m) in self.coefficients.range(-k..k) {
            let Ok(c) = alg.coords_of(m) else {
                return Some(format!("coefficient {p} is not in the algebra"));
            };
            if !gr.in_filtration(&c, p) {
                return Some(format!("coefficient {p} leaves the filtration"));
            }
        }
        None
    }
}

/// Builds the expansion coefficients from Tyurin data, checking its relations.
pub fn local_expansion_from_data(alg: &MatrixLieAlgebra, data: &TyurinData) -> Result<Germ> {
    let bad = |s: &str| Err(Error::InvalidTyurinData(s.into()));
    let d = alg.size();
    if data.beta.len() != d || data.l0.rows() != d || data.l0.cols() != d {
        return bad("parameter sizes do not match the algebra");
    }
    let alpha = unit_vec(d, 0);
    if !alg.contains(&data.l0) {
        return bad("L_0 is not in the algebra");
    }
    let l0a = data.l0.mul_vec(&alpha);
    if l0a.iter().skip(1).any(|c| !c.is_zero()) {
        return bad("alpha is not an eigenvector of L_0");
    }
    let mut coefficients = BTreeMap::new();
    match data.case {
        GermCase::A => {
            if !dot(&data.beta, &alpha).is_zero() {
                return bad("beta^T alpha != 0");
            }
            coefficients.insert(-1, outer(&alpha, &data.beta));
        }
        GermCase::C => {
            let s = sigma_of(alg)?;
            if !dot(&data.beta, &s.mul_vec(&alpha)).is_zero() {
                return bad("beta^T sigma alpha != 0");
            }
            coefficients.insert(-2, outer(&alpha, &alpha).mul(s).scale(&data.nu));
            coefficients.insert(-1, wedge(&alpha, &data.beta, 1, Some(s)));
            if let Some(l1) = &data.l1 {
                if !alg.contains(l1) {
                    return bad("L_1 is not in the algebra");
                }
                if !dot(&s.transpose().mul_vec(&alpha), &l1.mul_vec(&alpha)).is_zero() {
                    return bad("alpha^T sigma L_1 alpha != 0");
                }
                coefficients.insert(1, l1.clone());
            }
        }
    }
    coefficients.insert(0, data.l0.clone());
    Ok(Germ { coefficients })
}

/// A deterministic sample of valid data, used by tests and the CLI.
pub fn sample_data(alg: &MatrixLieAlgebra, case: GermCase, seed: i64) -> Result<TyurinData> {
    let d = alg.size();
    let gr = graded(alg, 0)?;
    let pick = |p: i64, salt: i64| -> Matrix {
        gr.subspace(p).into_iter().enumerate().fold(Matrix::zeros(d, d), |acc, (t, i)| {
            acc.add(&alg.basis()[i].scale(&frac(seed + salt + t as i64, 1 + t as i64)))
        })
    };
    let l0 = pick(0, 1).add(&pick(-1, 2));
    let mut beta: Vec<Scalar> = (0..d).map(|i| int((seed + i as i64) % 5 - 2)).collect();
    beta[0] = zero();
    let (nu, l1) = match case {
        GermCase::A => (zero(), None),
        GermCase::C => {
            let s = sigma_of(alg)?;
            let sa = s.mul_vec(&unit_vec(d, 0));
            // enforce beta^T sigma alpha = 0 on the paired coordinate
            for (i, c) in sa.iter().enumerate() {
                if !c.is_zero() {
                    beta[i] = zero();
                }
            }
            (int(seed + 3), Some(pick(1, 3).add(&pick(-2, 4))))
        }
    };
    Ok(TyurinData { case, beta, nu, l0, l1 })
}
