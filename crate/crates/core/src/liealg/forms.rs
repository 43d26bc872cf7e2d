use super::MatrixLieAlgebra;
use crate::exactnum::{one, zero, Matrix, Scalar};
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormKind {
    Trace,
    Killing,
    Custom,
}

/// A symmetric bilinear form given by its Gram matrix over the algebra basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantForm {
    pub gram: Matrix,
    pub kind: FormKind,
}

impl InvariantForm {
    pub fn trace(alg: &MatrixLieAlgebra) -> Self {
        InvariantForm { gram: alg.trace_gram(), kind: FormKind::Trace }
    }

    pub fn killing(alg: &MatrixLieAlgebra) -> Self {
        InvariantForm { gram: alg.killing_gram(), kind: FormKind::Killing }
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut acc = zero();
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let g = &self.gram[(i, j)];
                if !g.is_zero() {
                    acc += a * b * g;
                }
            }
        }
        acc
    }

    /// Checks `B([x, y], z) + B(y, [x, z]) = 0` on all basis triples.
    pub fn is_invariant(&self, alg: &MatrixLieAlgebra) -> bool {
        let n = alg.dim();
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let a: Scalar = alg.bracket_basis(x, y).iter().map(|(k, c)| c * &self.gram[(*k, z)]).sum();
                    let b: Scalar = alg.bracket_basis(x, z).iter().map(|(k, c)| c * &self.gram[(y, *k)]).sum();
                    (a + b).is_zero()
                })
            })
        })
    }
}

type SparseRow = BTreeMap<usize, Scalar>;

/// Incremental row echelon form over sparse rows.
struct Echelon {
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    fn insert(&mut self, mut row: SparseRow) {
        while let Some((&lead, _)) = row.iter().next() {
            let Some(pivot) = self.rows.get(&lead) else {
                let inv = row[&lead].recip();
                for v in row.values_mut() {
                    *v *= &inv;
                }
                self.rows.insert(lead, row);
                return;
            };
            let f = row[&lead].clone();
            for (c, v) in pivot {
                let e = row.entry(*c).or_insert_with(zero);
                *e -= &f * v;
                if e.is_zero() {
                    row.remove(c);
                }
            }
        }
    }

    /// Kernel basis: one vector per free column.
    fn kernel(&self, cols: usize) -> Vec<Vec<Scalar>> {
        (0..cols)
            .filter(|c| !self.rows.contains_key(c))
            .map(|free| {
                let mut x = vec![zero(); cols];
                x[free] = one();
                for (&p, row) in self.rows.iter().rev() {
                    let s: Scalar = row.iter().filter(|(c, _)| **c != p).map(|(c, v)| v * &x[*c]).sum();
                    x[p] = -s;
                }
                x
            })
            .collect()
    }
}

pub(super) fn invariant_form_space(alg: &MatrixLieAlgebra) -> Vec<InvariantForm> {
    let n = alg.dim();
    let var = |a: usize, b: usize| {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        a * n - a * (a + 1) / 2 + b
    };
    let unknowns = n * (n + 1) / 2;
    let mut ech = Echelon { rows: BTreeMap::new() };
    for g in alg.generators() {
        for j in 0..n {
            for k in j..n {
                let mut row = SparseRow::new();
                for (l, c) in alg.bracket_basis(g, j) {
                    *row.entry(var(*l, k)).or_insert_with(zero) += c;
                }
                for (l, c) in alg.bracket_basis(g, k) {
                    *row.entry(var(j, *l)).or_insert_with(zero) += c;
                }
                row.retain(|_, v| !v.is_zero());
                if !row.is_empty() {
                    ech.insert(row);
                }
            }
        }
    }
    ech.kernel(unknowns)
        .into_iter()
        .map(|x| {
            let mut gram = Matrix::zeros(n, n);
            for a in 0..n {
                for b in 0..n {
                    gram[(a, b)] = x[var(a, b)].clone();
                }
            }
            InvariantForm { gram, kind: FormKind::Custom }
        })
        .collect()
}
