//! Exact matrix models of semisimple Lie algebras.
//!
//! Every model is cut out of `gl(d)` by linear constraints. The Cartan
//! subalgebra is the diagonal part and each root space is found as the
//! solution space supported on the matrix positions of matching weight, so
//! the basis is laid out as
//!
//! ```text
//! [ Cartan | positive root vectors | negative root vectors ]
//! ```
//!
//! with root vectors in the order of [`RootSystem::positive_roots`].
//!
//! Weights are matched with the abstract roots through the convention
//! `e_i(H) = -H_ii` for the classical models, so that the first row of a
//! matrix carries negative roots of the first simple root.

mod forms;
pub(crate) mod models;

pub use forms::{FormKind, InvariantForm};
pub use models::defining_form;

use crate::exactnum::{null_space, rank, rref, zero, Matrix, Scalar};
use crate::rootsys::{CartanType, RootSystem};
use crate::{Error, Result};
use num_traits::Zero;
use std::collections::HashMap;

/// Sparse coordinate vector: `(basis index, coefficient)` pairs.
pub type Sparse = Vec<(usize, Scalar)>;

/// Root bookkeeping for models built from a root system.
#[derive(Clone, Debug)]
pub struct RootData {
    system: RootSystem,
    expansions: Vec<Option<Vec<i64>>>,
    index: HashMap<Vec<i64>, usize>,
}

impl RootData {
    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    /// Expansion of the root of basis element `i`; `None` on the Cartan.
    pub fn root_of(&self, i: usize) -> Option<&[i64]> {
        self.expansions[i].as_deref()
    }

    pub fn index_of(&self, expansion: &[i64]) -> Option<usize> {
        self.index.get(expansion).copied()
    }
}

#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra {
    label: String,
    size: usize,
    sigma: Option<Matrix>,
    basis: Vec<Matrix>,
    cartan_dim: usize,
    roots: Option<RootData>,
    solve_positions: Vec<usize>,
    solve_inverse: Matrix,
    structure: Vec<Vec<Sparse>>,
}

fn format_label(ty: CartanType, n: usize) -> String {
    match ty {
        CartanType::A => format!("sl({n})"),
        CartanType::B => format!("so({})", 2 * n + 1),
        CartanType::C => format!("sp({})", 2 * n),
        CartanType::D => format!("so({})", 2 * n),
        CartanType::G2 => "G2".to_string(),
    }
}

fn restricted_solutions(constraints: &Matrix, positions: &[usize], d: usize) -> Vec<Matrix> {
    let sub = Matrix::from_rows(
        (0..constraints.rows()).map(|r| positions.iter().map(|&p| constraints[(r, p)].clone()).collect()).collect(),
    );
    null_space(&sub)
        .into_iter()
        .map(|v| {
            let mut flat = vec![zero(); d * d];
            for (&p, x) in positions.iter().zip(v) {
                flat[p] = x;
            }
            Matrix::from_flat(d, d, flat)
        })
        .collect()
}

impl MatrixLieAlgebra {
    /// Builds the model for a supported type; for type A, `n` is the matrix size.
    pub fn build(ty: CartanType, n: usize) -> Result<Self> {
        let system = RootSystem::new(ty, n)?;
        let model = models::model(&system);
        let d = model.size;
        let weight = |a: usize, b: usize| -> Vec<Scalar> {
            model.position_weights[a].iter().zip(&model.position_weights[b]).map(|(x, y)| x - y).collect()
        };
        let positions_of =
            |target: &[Scalar]| -> Vec<usize> { (0..d * d).filter(|&p| weight(p / d, p % d) == target).collect() };
        let ambient_zero = vec![zero(); system.ambient_dim()];
        let mut basis = restricted_solutions(&model.constraints, &positions_of(&ambient_zero), d);
        let cartan_dim = basis.len();
        if cartan_dim != system.rank() {
            return Err(Error::Decomposition(format!("Cartan part has dimension {cartan_dim}")));
        }
        let all = system.all_roots();
        let mut expansions: Vec<Option<Vec<i64>>> = vec![None; cartan_dim];
        let mut index = HashMap::new();
        for root in &all {
            let space = restricted_solutions(&model.constraints, &positions_of(&root.vector), d);
            if space.len() != 1 {
                return Err(Error::Decomposition(format!(
                    "root {:?} has a {}-dimensional root space",
                    root.expansion,
                    space.len()
                )));
            }
            index.insert(root.expansion.clone(), basis.len());
            expansions.push(Some(root.expansion.clone()));
            basis.extend(space);
        }
        let expected = d * d - rank(&model.constraints);
        if basis.len() != expected {
            return Err(Error::Decomposition(format!("root spaces span {} of {expected} dimensions", basis.len())));
        }
        let roots = RootData { system, expansions, index };
        Self::assemble(format_label(ty, n), d, model.sigma, basis, cartan_dim, Some(roots))
    }

    /// An algebra given by an explicit basis, without root data. The span
    /// must be closed under the commutator.
    pub fn from_basis(label: &str, size: usize, basis: Vec<Matrix>) -> Result<Self> {
        Self::assemble(label.to_string(), size, None, basis, 0, None)
    }

    /// Block-diagonal direct sum of two algebras.
    pub fn direct_sum(a: &MatrixLieAlgebra, b: &MatrixLieAlgebra) -> Result<Self> {
        let d = a.size + b.size;
        let embed = |x: &Matrix, off: usize| {
            let mut m = Matrix::zeros(d, d);
            for i in 0..x.rows() {
                for j in 0..x.cols() {
                    m[(off + i, off + j)] = x[(i, j)].clone();
                }
            }
            m
        };
        let mut basis: Vec<Matrix> = a.basis.iter().map(|x| embed(x, 0)).collect();
        basis.extend(b.basis.iter().map(|x| embed(x, a.size)));
        Self::assemble(format!("{} + {}", a.label, b.label), d, None, basis, 0, None)
    }

    fn assemble(
        label: String,
        size: usize,
        sigma: Option<Matrix>,
        basis: Vec<Matrix>,
        cartan_dim: usize,
        roots: Option<RootData>,
    ) -> Result<Self> {
        let dim = basis.len();
        let transposed = Matrix::from_rows(basis.iter().map(Matrix::flatten).collect());
        let r = rref(&transposed);
        if r.rank != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: r.rank });
        }
        let square = Matrix::from_rows(
            (0..dim).map(|i| r.pivots.iter().map(|&p| transposed[(i, p)].clone()).collect()).collect(),
        )
        .transpose();
        let solve_inverse = square.inverse().expect("pivot block is invertible");
        let mut alg = MatrixLieAlgebra {
            label,
            size,
            sigma,
            basis,
            cartan_dim,
            roots,
            solve_positions: r.pivots,
            solve_inverse,
            structure: Vec::new(),
        };
        let mut structure = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let c = alg.basis[i].commutator(&alg.basis[j]);
                let coords = alg.coords_of(&c)?;
                let sparse: Sparse = coords.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
                structure[j][i] = sparse.iter().map(|(k, x)| (*k, -x.clone())).collect();
                structure[i][j] = sparse;
            }
        }
        alg.structure = structure;
        Ok(alg)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix size `d` of the defining representation.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn sigma(&self) -> Option<&Matrix> {
        self.sigma.as_ref()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn cartan_dim(&self) -> usize {
        self.cartan_dim
    }

    pub fn roots(&self) -> Option<&RootData> {
        self.roots.as_ref()
    }

    /// Basis index of the root vector with the given expansion.
    pub fn root_index(&self, expansion: &[i64]) -> Option<usize> {
        self.roots.as_ref()?.index_of(expansion)
    }

    /// Coordinate vector of basis element `i`.
    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![zero(); self.dim()];
        v[i] = crate::exactnum::one();
        v
    }

    pub fn zero_element(&self) -> Vec<Scalar> {
        vec![zero(); self.dim()]
    }

    /// `sum_i x_i X_i`.
    pub fn matrix_of(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.size, self.size);
        for (c, b) in x.iter().zip(&self.basis) {
            if !c.is_zero() {
                m = m.add(&b.scale(c));
            }
        }
        m
    }

    /// Coordinates of a matrix over the basis; fails if it is not in the algebra.
    pub fn coords_of(&self, m: &Matrix) -> Result<Vec<Scalar>> {
        if m.rows() != self.size || m.cols() != self.size {
            return Err(Error::DimensionMismatch { expected: self.size, found: m.rows() });
        }
        let flat = m.as_slice();
        let rhs: Vec<Scalar> = self.solve_positions.iter().map(|&p| flat[p].clone()).collect();
        let x = self.solve_inverse.mul_vec(&rhs);
        if &self.matrix_of(&x) != m {
            return Err(Error::NotInAlgebra);
        }
        Ok(x)
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.coords_of(m).is_ok()
    }

    /// Sparse coordinates of `[X_i, X_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.structure[i][j]
    }

    fn check_len(&self, x: &[Scalar]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = self.zero_element();
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in &self.structure[i][j] {
                    out[*k] += &ab * c;
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad x` over the basis: column `j` holds `[x, X_j]`.
    pub fn ad_matrix(&self, x: &[Scalar]) -> Result<Matrix> {
        self.check_len(x)?;
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for j in 0..n {
                for (k, c) in &self.structure[i][j] {
                    m[(*k, j)] += a * c;
                }
            }
        }
        Ok(m)
    }

    /// `tr(XY)` in the defining representation.
    pub fn trace_form(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.matrix_of(x).mul(&self.matrix_of(y)).trace())
    }

    /// `tr(ad X ad Y)`.
    pub fn killing_form(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar> {
        Ok(self.ad_matrix(x)?.mul(&self.ad_matrix(y)?).trace())
    }

    pub fn trace_gram(&self) -> Matrix {
        let n = self.dim();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = self.basis[i].mul(&self.basis[j]).trace();
                g[(j, i)] = v.clone();
                g[(i, j)] = v;
            }
        }
        g
    }

    pub fn killing_gram(&self) -> Matrix {
        let n = self.dim();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                // sum_{a,b} c_{i a}^b c_{j b}^a
                let mut v = zero();
                for a in 0..n {
                    for (b, x) in &self.structure[i][a] {
                        for (a2, y) in &self.structure[j][*b] {
                            if *a2 == a {
                                v += x * y;
                            }
                        }
                    }
                }
                g[(j, i)] = v.clone();
                g[(i, j)] = v;
            }
        }
        g
    }

    /// The constant `c` with `killing = c * trace_form`, if one exists.
    pub fn killing_trace_ratio(&self) -> Option<Scalar> {
        let k = self.killing_gram();
        let t = self.trace_gram();
        let n = self.dim();
        let (i, j) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| !t[(i, j)].is_zero())?;
        let c = &k[(i, j)] / &t[(i, j)];
        (k == t.scale(&c)).then_some(c)
    }

    /// Eigenvalue of `ad H_c` on basis element `i` for each Cartan basis
    /// element `H_c`, if `X_i` is a common eigenvector.
    pub fn weight(&self, i: usize) -> Option<Vec<Scalar>> {
        (0..self.cartan_dim)
            .map(|c| {
                let br = &self.structure[c][i];
                match br.as_slice() {
                    [] => Some(zero()),
                    [(k, v)] if *k == i => Some(v.clone()),
                    _ => None,
                }
            })
            .collect()
    }

    /// Cartan matrix recomputed from the weights of the simple root vectors
    /// and the Killing form on the Cartan subalgebra.
    pub fn cartan_matrix_from_killing(&self) -> Option<Vec<Vec<i64>>> {
        let roots = self.roots.as_ref()?;
        let r = self.cartan_dim;
        let k = self.killing_gram();
        let kh = Matrix::from_rows((0..r).map(|i| (0..r).map(|j| k[(i, j)].clone()).collect()).collect());
        let kh_inv = kh.inverse()?;
        let simple: Vec<Vec<Scalar>> = (0..r)
            .map(|i| {
                let mut e = vec![0; r];
                e[i] = 1;
                self.weight(roots.index_of(&e)?)
            })
            .collect::<Option<_>>()?;
        let pair = |a: &[Scalar], b: &[Scalar]| -> Scalar {
            let kb = kh_inv.mul_vec(b);
            a.iter().zip(&kb).fold(zero(), |acc, (x, y)| acc + x * y)
        };
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let v = crate::exactnum::int(2) * pair(&simple[i], &simple[j]) / pair(&simple[j], &simple[j]);
                        crate::exactnum::to_i64(&v)
                    })
                    .collect()
            })
            .collect()
    }

    /// Basis of the space of invariant symmetric bilinear forms.
    pub fn invariant_form_space(&self) -> Vec<InvariantForm> {
        forms::invariant_form_space(self)
    }

    /// Indices generating the algebra: simple root vectors and their
    /// negatives, or the full basis when no root data is present.
    pub(crate) fn generators(&self) -> Vec<usize> {
        match &self.roots {
            Some(rd) => {
                let r = self.cartan_dim;
                let mut g = Vec::new();
                for i in 0..r {
                    let mut e = vec![0i64; r];
                    e[i] = 1;
                    g.push(rd.index_of(&e).expect("simple root"));
                    e[i] = -1;
                    g.push(rd.index_of(&e).expect("negative simple root"));
                }
                g
            }
            None => (0..self.dim()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, one};
    use crate::rootsys::CartanType::*;
    use proptest::prelude::*;

    fn alg(ty: CartanType, n: usize) -> MatrixLieAlgebra {
        MatrixLieAlgebra::build(ty, n).unwrap()
    }

    fn expected_dim(ty: CartanType, n: usize) -> usize {
        match ty {
            A => n * n - 1,
            B => n * (2 * n + 1),
            C => n * (2 * n + 1),
            D => n * (2 * n - 1),
            G2 => 14,
        }
    }

    const SHIPPED: [(CartanType, usize); 12] =
        [(A, 2), (A, 3), (A, 4), (B, 1), (B, 2), (B, 3), (C, 1), (C, 2), (C, 3), (D, 3), (D, 4), (G2, 2)];

    #[test]
    fn dimensions() {
        for (ty, n) in SHIPPED {
            let g = alg(ty, n);
            assert_eq!(g.dim(), expected_dim(ty, n), "{}", g.label());
            assert_eq!(g.cartan_dim(), g.roots().unwrap().system().rank());
        }
        assert_eq!(alg(D, 4).dim(), 28);
        assert_eq!(alg(A, 2).cartan_dim(), 1);
    }

    #[test]
    fn basis_satisfies_defining_relations() {
        for (ty, n) in SHIPPED {
            let g = alg(ty, n);
            for x in g.basis() {
                match g.sigma() {
                    Some(s) => assert!(x.transpose().mul(s).add(&s.mul(x)).is_zero()),
                    None => assert!(x.trace().is_zero()),
                }
            }
        }
    }

    #[test]
    fn g2_basis_consists_of_derivations() {
        use models::zorn;
        let g = alg(G2, 2);
        let to_zorn = |im: &[Scalar]| {
            let mut x = zorn::imaginary(0).map(|c| c * &im[0]);
            for s in 1..7 {
                x[s] += &im[s];
            }
            x
        };
        for d in g.basis() {
            for s in 0..7 {
                for t in 0..7 {
                    let xs = zorn::imaginary(s);
                    let xt = zorn::imaginary(t);
                    let (re, im) = zorn::split(&zorn::mul(&xs, &xt));
                    let lhs = to_zorn(&d.mul_vec(&im));
                    let dxs = to_zorn(&d.mul_vec(&zorn::split(&xs).1));
                    let dxt = to_zorn(&d.mul_vec(&zorn::split(&xt).1));
                    let a = zorn::mul(&dxs, &xt);
                    let b = zorn::mul(&xs, &dxt);
                    let _ = re;
                    for k in 0..8 {
                        assert_eq!(lhs[k], &a[k] + &b[k]);
                    }
                }
            }
        }
    }

    #[test]
    fn sl2_bracket() {
        let g = alg(A, 2);
        let e = Matrix::unit(2, 0, 1);
        let f = Matrix::unit(2, 1, 0);
        let h = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
        let ce = g.coords_of(&e).unwrap();
        let cf = g.coords_of(&f).unwrap();
        assert_eq!(g.matrix_of(&g.bracket(&ce, &cf).unwrap()), h);
        assert!(g.bracket(&ce, &ce).unwrap().iter().all(Zero::is_zero));
        let ch = g.coords_of(&h).unwrap();
        assert_eq!(g.trace_form(&ch, &ch).unwrap(), int(2));
    }

    #[test]
    fn closure_and_membership() {
        for (ty, n) in SHIPPED {
            let g = alg(ty, n);
            for i in 0..g.dim() {
                for j in 0..g.dim() {
                    let c = g.basis()[i].commutator(&g.basis()[j]);
                    let x = g.coords_of(&c).unwrap();
                    assert_eq!(g.matrix_of(&x), c);
                }
            }
        }
        let g = alg(A, 2);
        assert_eq!(g.coords_of(&Matrix::identity(2)), Err(Error::NotInAlgebra));
    }

    #[test]
    fn jacobi_on_all_triples_small_rank() {
        for (ty, n) in [(A, 3), (B, 2), (C, 2), (G2, 2)] {
            let g = alg(ty, n);
            let d = g.dim();
            for i in 0..d {
                for j in i + 1..d {
                    for k in j + 1..d {
                        let (x, y, z) = (g.unit(i), g.unit(j), g.unit(k));
                        let a = g.bracket(&x, &g.bracket(&y, &z).unwrap()).unwrap();
                        let b = g.bracket(&y, &g.bracket(&z, &x).unwrap()).unwrap();
                        let c = g.bracket(&z, &g.bracket(&x, &y).unwrap()).unwrap();
                        for t in 0..d {
                            assert!((&a[t] + &b[t] + &c[t]).is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ad_matrix_basics() {
        let g = alg(C, 2);
        assert!(g.ad_matrix(&g.zero_element()).unwrap().is_zero());
        for i in 0..g.dim() {
            assert!(g.ad_matrix(&g.unit(i)).unwrap().trace().is_zero());
        }
        // sl(2): ad(h) with alpha(h) = 1 has eigenvalues 1, 0, -1
        let s = alg(A, 2);
        let h = s
            .coords_of(&Matrix::from_rows(vec![
                vec![crate::exactnum::frac(-1, 2), zero()],
                vec![zero(), crate::exactnum::frac(1, 2)],
            ]))
            .unwrap();
        let ad = s.ad_matrix(&h).unwrap();
        let mut eig: Vec<Scalar> = (0..3).map(|i| ad[(i, i)].clone()).collect();
        eig.sort();
        assert_eq!(eig, vec![int(-1), int(0), int(1)]);
        assert!((0..3).all(|i| (0..3).all(|j| i == j || ad[(i, j)].is_zero())));
    }

    #[test]
    fn killing_is_proportional_to_trace_form() {
        let cases = [(A, 2, 4), (A, 3, 6), (B, 2, 3), (C, 2, 6), (D, 4, 6), (G2, 2, 4)];
        for (ty, n, c) in cases {
            let g = alg(ty, n);
            assert_eq!(g.killing_trace_ratio(), Some(int(c)), "{}", g.label());
            assert!(!g.killing_gram().determinant().is_zero());
        }
    }

    #[test]
    fn killing_is_invariant() {
        let g = alg(B, 2);
        let k = g.killing_gram();
        let d = g.dim();
        for z in 0..d {
            for x in 0..d {
                for y in 0..d {
                    let zx = g.bracket(&g.unit(z), &g.unit(x)).unwrap();
                    let zy = g.bracket(&g.unit(z), &g.unit(y)).unwrap();
                    let a: Scalar = (0..d).map(|i| &zx[i] * &k[(i, y)]).sum();
                    let b: Scalar = (0..d).map(|i| &k[(x, i)] * &zy[i]).sum();
                    assert!((a + b).is_zero());
                }
            }
        }
    }

    #[test]
    fn weights_match_root_system() {
        for (ty, n) in SHIPPED {
            let g = alg(ty, n);
            for i in g.cartan_dim()..g.dim() {
                assert!(g.weight(i).is_some(), "{} index {i}", g.label());
            }
            let rs = g.roots().unwrap().system();
            assert_eq!(g.cartan_matrix_from_killing().unwrap(), rs.cartan_matrix(), "{}", g.label());
        }
        assert_eq!(alg(G2, 2).cartan_matrix_from_killing().unwrap(), vec![vec![2, -1], vec![-3, 2]]);
    }

    #[test]
    fn root_space_counts() {
        for n in 3..=5 {
            let g = alg(D, n);
            assert_eq!(g.dim() - g.cartan_dim(), 2 * n * (n - 1));
        }
        let g = alg(A, 2);
        assert_eq!(g.dim() - g.cartan_dim(), 2);
    }

    #[test]
    fn first_row_carries_negative_roots() {
        let g = alg(A, 3);
        let x = g.coords_of(&Matrix::unit(3, 0, 1)).unwrap();
        let i = x.iter().position(|c| !c.is_zero()).unwrap();
        assert_eq!(g.roots().unwrap().root_of(i), Some(&[-1i64, 0][..]));
    }

    #[test]
    fn forms_orthogonal_on_root_spaces() {
        for (ty, n) in [(B, 2), (C, 3), (G2, 2)] {
            let g = alg(ty, n);
            let rd = g.roots().unwrap();
            let k = g.killing_gram();
            for i in g.cartan_dim()..g.dim() {
                for j in g.cartan_dim()..g.dim() {
                    let (a, b) = (rd.root_of(i).unwrap(), rd.root_of(j).unwrap());
                    if a.iter().zip(b).any(|(x, y)| x + y != 0) {
                        assert!(k[(i, j)].is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn direct_sum_has_no_roots() {
        let s = alg(A, 2);
        let ss = MatrixLieAlgebra::direct_sum(&s, &s).unwrap();
        assert_eq!(ss.dim(), 6);
        assert!(ss.roots().is_none());
        assert_eq!(ss.killing_trace_ratio(), Some(int(4)));
        let _ = one();
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn jacobi_random_so8(
            a in proptest::collection::vec(-3i64..4, 28),
            b in proptest::collection::vec(-3i64..4, 28),
            c in proptest::collection::vec(-3i64..4, 28),
        ) {
            let g = MatrixLieAlgebra::build(D, 4).unwrap();
            let to = |v: &[i64]| v.iter().map(|&t| int(t)).collect::<Vec<_>>();
            let (x, y, z) = (to(&a), to(&b), to(&c));
            let s1 = g.bracket(&x, &g.bracket(&y, &z).unwrap()).unwrap();
            let s2 = g.bracket(&y, &g.bracket(&z, &x).unwrap()).unwrap();
            let s3 = g.bracket(&z, &g.bracket(&x, &y).unwrap()).unwrap();
            for i in 0..g.dim() {
                prop_assert!((&s1[i] + &s2[i] + &s3[i]).is_zero());
            }
        }

        #[test]
        fn bracket_matches_commutator_g2(
            a in proptest::collection::vec(-3i64..4, 14),
            b in proptest::collection::vec(-3i64..4, 14),
        ) {
            let g = MatrixLieAlgebra::build(G2, 2).unwrap();
            let x: Vec<Scalar> = a.iter().map(|&t| int(t)).collect();
            let y: Vec<Scalar> = b.iter().map(|&t| int(t)).collect();
            let lhs = g.matrix_of(&g.bracket(&x, &y).unwrap());
            prop_assert_eq!(lhs, g.matrix_of(&x).commutator(&g.matrix_of(&y)));
            let k1 = g.killing_form(&x, &y).unwrap();
            let k2 = g.killing_form(&y, &x).unwrap();
            prop_assert_eq!(k1.clone(), k2);
            prop_assert_eq!(k1, g.trace_form(&x, &y).unwrap() * int(4));
        }
    }
}
