//! Z-gradings `g = g_{-k} + ... + g_k` induced by an element `h` of the
//! Cartan subalgebra with prescribed values `alpha_i(h) = p_i` on the simple
//! roots.
//!
//! Every basis element of a root-data model is homogeneous, so a grading is
//! recorded as one level per basis index and all subspaces are spans of
//! basis vectors.

use crate::exactnum::{rank, zero, Matrix, Scalar};
use crate::liealg::{InvariantForm, MatrixLieAlgebra};
use crate::rootsys::GradingSpec;
use crate::{Error, Result};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedStructure {
    spec: GradingSpec,
    depth: i64,
    levels: Vec<i64>,
    h: Vec<Scalar>,
}

/// Codimensions of the filtration subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodimReport {
    /// `(p, codim of the filtration subspace at p)` for `p = -k..k-1`.
    pub codims: Vec<(i64, usize)>,
    pub total: usize,
    /// `k * dim g`.
    pub expected: usize,
}

impl CodimReport {
    pub fn holds(&self) -> bool {
        self.total == self.expected
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradingReport {
    pub violations: Vec<String>,
}

impl GradingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The element `h` of the Cartan subalgebra with `alpha_i(h) = p_i`, as
/// coordinates over the algebra basis.
pub fn grading_element(alg: &MatrixLieAlgebra, spec: &GradingSpec) -> Result<Vec<Scalar>> {
    let roots = alg.roots().ok_or_else(|| Error::InvalidGrading(format!("{} has no root data", alg.label())))?;
    let rs = roots.system();
    rs.check_spec(spec)?;
    let r = alg.cartan_dim();
    let rows: Vec<Vec<Scalar>> = (0..r)
        .map(|i| {
            let mut e = vec![0; r];
            e[i] = 1;
            let idx = roots.index_of(&e).expect("simple root vector");
            alg.weight(idx).ok_or_else(|| Error::Decomposition(format!("basis element {idx} is not a weight vector")))
        })
        .collect::<Result<_>>()?;
    let rhs: Vec<Scalar> = spec.values().iter().map(|&p| crate::exactnum::int(p)).collect();
    let sol = Matrix::from_rows(rows)
        .solve(&rhs)
        .ok_or_else(|| Error::InvalidGrading("simple roots do not separate the Cartan subalgebra".into()))?;
    let mut h = alg.zero_element();
    h[..r].clone_from_slice(&sol);
    Ok(h)
}

impl GradedStructure {
    pub fn new(alg: &MatrixLieAlgebra, spec: &GradingSpec) -> Result<Self> {
        let h = grading_element(alg, spec)?;
        let roots = alg.roots().expect("checked by grading_element");
        let rs = roots.system();
        let levels: Vec<i64> = (0..alg.dim()).map(|i| roots.root_of(i).map_or(0, |m| rs.level(spec, m))).collect();
        Ok(GradedStructure { spec: spec.clone(), depth: rs.depth(spec), levels, h })
    }

    pub fn spec(&self) -> &GradingSpec {
        &self.spec
    }

    pub fn depth(&self) -> i64 {
        self.depth
    }

    pub fn levels(&self) -> &[i64] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> i64 {
        self.levels[i]
    }

    pub fn grading_element(&self) -> &[Scalar] {
        &self.h
    }

    /// Basis indices spanning `g_p`.
    pub fn subspace(&self, p: i64) -> Vec<usize> {
        (0..self.levels.len()).filter(|&i| self.levels[i] == p).collect()
    }

    /// Basis indices spanning the filtration subspace `g_{<=p}`.
    pub fn filtration(&self, p: i64) -> Vec<usize> {
        (0..self.levels.len()).filter(|&i| self.levels[i] <= p).collect()
    }

    /// `(p, dim g_p)` for `p = -k..k`.
    pub fn dims(&self) -> Vec<(i64, usize)> {
        (-self.depth..=self.depth).map(|p| (p, self.subspace(p).len())).collect()
    }

    /// Whether `x` lies in the filtration subspace `g_{<=p}`.
    pub fn in_filtration(&self, x: &[Scalar], p: i64) -> bool {
        x.iter().zip(&self.levels).all(|(c, &l)| l <= p || c.is_zero())
    }

    /// Same test as [`GradedStructure::in_filtration`] done by comparing ranks.
    pub fn in_filtration_by_rank(&self, x: &[Scalar], p: i64) -> bool {
        let n = self.levels.len();
        let mut rows: Vec<Vec<Scalar>> = self
            .filtration(p)
            .into_iter()
            .map(|i| {
                let mut v = vec![zero(); n];
                v[i] = crate::exactnum::one();
                v
            })
            .collect();
        let before = rows.len();
        rows.push(x.to_vec());
        rank(&Matrix::from_rows(rows)) == before
    }

    pub fn codim_report(&self) -> CodimReport {
        let n = self.levels.len();
        let codims: Vec<(i64, usize)> = (-self.depth..self.depth)
            .map(|p| {
                let idx = self.filtration(p);
                let r = if idx.is_empty() {
                    0
                } else {
                    rank(&Matrix::from_rows(
                        idx.iter()
                            .map(|&i| (0..n).map(|j| if i == j { crate::exactnum::one() } else { zero() }).collect())
                            .collect(),
                    ))
                };
                (p, n - r)
            })
            .collect();
        let total = codims.iter().map(|(_, c)| c).sum();
        CodimReport { codims, total, expected: self.depth as usize * n }
    }

    /// Checks bracket compatibility, dimension symmetry, orthogonality of
    /// `g_p` and `g_q` for `p + q != 0`, and the eigenvalue of `ad h`.
    pub fn verify(&self, alg: &MatrixLieAlgebra, form: &InvariantForm) -> GradingReport {
        let mut report = GradingReport::default();
        let n = alg.dim();
        for i in 0..n {
            for j in 0..n {
                let target = self.levels[i] + self.levels[j];
                if let Some((k, _)) = alg.bracket_basis(i, j).iter().find(|(k, _)| self.levels[*k] != target) {
                    report.violations.push(format!("[X{i}, X{j}] has a component X{k} outside level {target}"));
                }
                if target != 0 && !form.gram[(i, j)].is_zero() {
                    report.violations.push(format!("form pairs X{i} and X{j} at total level {target}"));
                }
            }
        }
        for p in 1..=self.depth {
            let (a, b) = (self.subspace(p).len(), self.subspace(-p).len());
            if a != b {
                report.violations.push(format!("dim g_{p} = {a} but dim g_-{p} = {b}"));
            }
        }
        for i in 0..n {
            let e = alg.unit(i);
            let ad = alg.bracket(&self.h, &e).expect("same algebra");
            let lvl = crate::exactnum::int(self.levels[i]);
            if ad.iter().zip(&e).any(|(a, b)| *a != &lvl * b) {
                report.violations.push(format!("ad h does not act by {} on X{i}", self.levels[i]));
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{frac, int};
    use crate::rootsys::CartanType::{self, *};
    use proptest::prelude::*;

    fn graded(ty: CartanType, n: usize, p: &[i64]) -> (MatrixLieAlgebra, GradedStructure) {
        let g = MatrixLieAlgebra::build(ty, n).unwrap();
        let gr = GradedStructure::new(&g, &GradingSpec::new(p.to_vec()).unwrap()).unwrap();
        (g, gr)
    }

    fn diag(v: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(v.len(), v.len());
        for (i, x) in v.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    #[test]
    fn grading_elements() {
        // alpha(h) = h_2 - h_1 with e_i(H) = -H_ii
        let (g, gr) = graded(A, 2, &[1]);
        assert_eq!(g.matrix_of(gr.grading_element()), diag(&[frac(-1, 2), frac(1, 2)]));
        let (g, gr) = graded(A, 3, &[1, 0]);
        assert_eq!(g.matrix_of(gr.grading_element()), diag(&[frac(-2, 3), frac(1, 3), frac(1, 3)]));
        let (g, gr) = graded(C, 2, &[0, 0]);
        assert!(g.matrix_of(gr.grading_element()).is_zero());
        assert_eq!(gr.depth(), 0);
    }

    #[test]
    fn level_dimensions() {
        let (_, gr) = graded(C, 3, &[1, 0, 0]);
        assert_eq!(gr.depth(), 2);
        assert_eq!(gr.subspace(-2).len(), 1);
        for n in 3..=5 {
            let mut p = vec![0; n];
            p[0] = 1;
            let (_, gr) = graded(D, n, &p);
            assert_eq!(gr.depth(), 1);
            assert_eq!(gr.subspace(-1).len(), 2 * (n - 1));
        }
        let (_, gr) = graded(G2, 2, &[0, 1]);
        let dims: Vec<usize> = gr.dims().into_iter().map(|(_, d)| d).collect();
        assert_eq!(dims, vec![1, 4, 4, 4, 1]);
        let (_, gr) = graded(G2, 2, &[1, 0]);
        let dims: Vec<usize> = gr.dims().into_iter().map(|(_, d)| d).collect();
        assert_eq!(dims, vec![2, 1, 2, 4, 2, 1, 2]);
        let (_, gr) = graded(C, 2, &[1, 0]);
        let dims: Vec<usize> = gr.dims().into_iter().map(|(_, d)| d).collect();
        assert_eq!(dims, vec![1, 2, 4, 2, 1]);
    }

    #[test]
    fn b_last_root_levels() {
        let (g, gr) = graded(B, 3, &[0, 0, 1]);
        assert_eq!(gr.depth(), 2);
        let rs = g.roots().unwrap().system();
        for r in rs.positive_roots() {
            let ones = r.vector.iter().filter(|x| **x == int(1)).count();
            let twos = r.vector.iter().filter(|x| **x == int(2)).count();
            let minus = r.vector.iter().filter(|x| **x == int(-1)).count();
            let expected = if minus > 0 { 0 } else { ones + 2 * twos };
            assert_eq!(rs.level(gr.spec(), &r.expansion), expected as i64, "{:?}", r.vector);
        }
    }

    #[test]
    fn filtration_membership() {
        let (g, gr) = graded(C, 2, &[1, 0]);
        let k = gr.depth();
        for i in gr.subspace(-k) {
            assert!(gr.in_filtration(&g.unit(i), -k));
        }
        for i in 0..g.cartan_dim() {
            assert!(!gr.in_filtration(&g.unit(i), -1));
            assert!(gr.in_filtration(&g.unit(i), 0));
        }
        let mut x = g.zero_element();
        for i in gr.subspace(1).into_iter().chain(gr.subspace(-1)) {
            x[i] = int(i as i64 + 1);
        }
        assert!(!gr.in_filtration(&x, 0));
        assert!(gr.in_filtration(&x, 1));
        assert!(gr.in_filtration(&x, 5));
        assert!(!gr.in_filtration(&x, -7));
        assert!(gr.in_filtration(&g.zero_element(), -7));
    }

    #[test]
    fn codimensions() {
        let (_, gr) = graded(A, 2, &[1]);
        let rep = gr.codim_report();
        assert_eq!(rep.codims, vec![(-1, 2), (0, 1)]);
        assert_eq!(rep.total, 3);
        let (_, gr) = graded(C, 2, &[1, 0]);
        assert_eq!(gr.codim_report().total, 20);
        let (_, gr) = graded(C, 2, &[0, 0]);
        assert_eq!(gr.codim_report().total, 0);
    }

    #[test]
    fn shipped_gradings_verify() {
        let cases: Vec<(CartanType, Vec<usize>)> =
            vec![(A, vec![2, 3, 4, 5]), (B, vec![1, 2, 3, 4]), (C, vec![1, 2, 3, 4]), (D, vec![3, 4]), (G2, vec![2])];
        for (ty, ns) in cases {
            for n in ns {
                let g = MatrixLieAlgebra::build(ty, n).unwrap();
                let form = InvariantForm::killing(&g);
                let r = g.cartan_dim();
                for i in 0..=r {
                    let spec = if i == r { GradingSpec::zero(r) } else { GradingSpec::simple(r, i) };
                    let gr = GradedStructure::new(&g, &spec).unwrap();
                    let rep = gr.verify(&g, &form);
                    assert!(rep.passed(), "{} {:?}: {:?}", g.label(), spec, rep.violations);
                    let c = gr.codim_report();
                    assert!(c.holds());
                    for (p, cp) in &c.codims {
                        let other = c.codims.iter().find(|(q, _)| *q == -p - 1).unwrap().1;
                        assert_eq!(cp + other, g.dim());
                    }
                }
            }
        }
    }

    #[test]
    fn killing_pairs_opposite_levels() {
        let (g, gr) = graded(G2, 2, &[1, 0]);
        let k = g.killing_gram();
        for p in 1..=gr.depth() {
            let a = gr.subspace(p);
            let b = gr.subspace(-p);
            let m = Matrix::from_rows(a.iter().map(|&i| b.iter().map(|&j| k[(i, j)].clone()).collect()).collect());
            assert_eq!(rank(&m), a.len());
        }
    }

    #[test]
    fn rejects_bad_specs() {
        let g = MatrixLieAlgebra::build(A, 3).unwrap();
        assert!(GradedStructure::new(&g, &GradingSpec::new(vec![1]).unwrap()).is_err());
        let s = MatrixLieAlgebra::build(A, 2).unwrap();
        let ss = MatrixLieAlgebra::direct_sum(&s, &s).unwrap();
        assert!(grading_element(&ss, &GradingSpec::new(vec![1]).unwrap()).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn arbitrary_specs_b3(p in proptest::collection::vec(0i64..3, 3)) {
            let g = MatrixLieAlgebra::build(B, 3).unwrap();
            let gr = GradedStructure::new(&g, &GradingSpec::new(p).unwrap()).unwrap();
            prop_assert!(gr.verify(&g, &InvariantForm::trace(&g)).passed());
            prop_assert!(gr.codim_report().holds());
            let total: usize = gr.dims().iter().map(|(_, d)| d).sum();
            prop_assert_eq!(total, g.dim());
            for (q, d) in gr.dims() {
                prop_assert_eq!(d, gr.subspace(-q).len());
            }
        }

        #[test]
        fn filtration_tests_agree(
            p in proptest::collection::vec(0i64..2, 2),
            x in proptest::collection::vec(-2i64..3, 10),
            level in -3i64..4,
        ) {
            let g = MatrixLieAlgebra::build(C, 2).unwrap();
            let gr = GradedStructure::new(&g, &GradingSpec::new(p).unwrap()).unwrap();
            let x: Vec<Scalar> = x.into_iter().map(int).collect();
            prop_assert_eq!(gr.in_filtration(&x, level), gr.in_filtration_by_rank(&x, level));
        }

        #[test]
        fn filtration_is_compatible(
            p in proptest::collection::vec(0i64..2, 2),
            a in -2i64..3,
            b in -2i64..3,
        ) {
            let g = MatrixLieAlgebra::build(G2, 2).unwrap();
            let gr = GradedStructure::new(&g, &GradingSpec::new(p).unwrap()).unwrap();
            for i in gr.filtration(a) {
                for j in gr.filtration(b) {
                    let br = g.bracket(&g.unit(i), &g.unit(j)).unwrap();
                    prop_assert!(gr.in_filtration(&br, a + b));
                }
            }
        }
    }
}
