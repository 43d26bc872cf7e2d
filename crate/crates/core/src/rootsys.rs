//! Root systems of types A, B, C, D and G2.
//!
//! Conventions follow the standard Bourbaki-style labelling with ambient
//! orthonormal vectors `e_1, ..., e_n`:
//!
//! | type | algebra | simple roots |
//! |------|---------|--------------|
//! | A    | sl(n)   | `e_i - e_{i+1}`, `i = 1..n-1` (keyed by matrix size `n`) |
//! | B    | so(2n+1)| `e_i - e_{i+1}`, `e_n` |
//! | C    | sp(2n)  | `e_i - e_{i+1}`, `2 e_n` |
//! | D    | so(2n)  | `e_i - e_{i+1}`, `e_{n-1} + e_n` |
//! | G2   | G2      | `e_1 - e_2` (short), `-2 e_1 + e_2 + e_3` (long), inside `x + y + z = 0` |

use crate::exactnum::{int, Matrix, Scalar};
use crate::{Error, Result};
use num_traits::Zero;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    G2,
}

impl CartanType {
    pub fn parse(text: &str) -> Option<CartanType> {
        match text.trim().to_ascii_uppercase().as_str() {
            "A" | "SL" => Some(CartanType::A),
            "B" => Some(CartanType::B),
            "C" | "SP" => Some(CartanType::C),
            "D" => Some(CartanType::D),
            "G2" | "G" => Some(CartanType::G2),
            _ => None,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
            CartanType::G2 => "G2",
        };
        f.write_str(s)
    }
}

/// A root, stored both by its expansion over the simple roots and as an
/// ambient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub expansion: Vec<i64>,
    pub vector: Vec<Scalar>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.expansion.iter().sum()
    }

    pub fn negated(&self) -> Root {
        Root {
            expansion: self.expansion.iter().map(|m| -m).collect(),
            vector: self.vector.iter().map(|x| -x.clone()).collect(),
        }
    }
}

/// Nonnegative integer values `p_i = alpha_i(h)` on the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradingSpec(Vec<i64>);

impl GradingSpec {
    pub fn new(p: Vec<i64>) -> Result<Self> {
        if let Some(bad) = p.iter().find(|&&x| x < 0) {
            return Err(Error::InvalidGrading(format!("negative entry {bad}")));
        }
        Ok(GradingSpec(p))
    }

    /// The grading defined by the single simple root `i` (0-based).
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut p = vec![0; rank];
        p[i] = 1;
        GradingSpec(p)
    }

    pub fn zero(rank: usize) -> Self {
        GradingSpec(vec![0; rank])
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    ty: CartanType,
    n: usize,
    simple: Vec<Vec<Scalar>>,
    positive: Vec<Root>,
    cartan: Vec<Vec<i64>>,
}

fn unit(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = int(1);
    v
}

fn comb(dim: usize, terms: &[(usize, i64)]) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    for &(i, c) in terms {
        v[i] += int(c);
    }
    v
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

impl RootSystem {
    /// Builds the root system. For type A, `n` is the matrix size of `sl(n)`;
    /// for G2 it must be 2.
    pub fn new(ty: CartanType, n: usize) -> Result<Self> {
        let unsupported = || Error::UnsupportedAlgebra { ty: ty.to_string(), n };
        let simple: Vec<Vec<Scalar>> = match ty {
            CartanType::A => {
                if n < 2 {
                    return Err(unsupported());
                }
                (0..n - 1).map(|i| comb(n, &[(i, 1), (i + 1, -1)])).collect()
            }
            CartanType::B | CartanType::C | CartanType::D => {
                if n < 1 || (ty == CartanType::D && n < 3) {
                    return Err(unsupported());
                }
                let mut s: Vec<Vec<Scalar>> = (0..n - 1).map(|i| comb(n, &[(i, 1), (i + 1, -1)])).collect();
                s.push(match ty {
                    CartanType::B => unit(n, n - 1),
                    CartanType::C => comb(n, &[(n - 1, 2)]),
                    _ => comb(n, &[(n - 2, 1), (n - 1, 1)]),
                });
                s
            }
            CartanType::G2 => {
                if n != 2 {
                    return Err(unsupported());
                }
                vec![comb(3, &[(0, 1), (1, -1)]), comb(3, &[(0, -2), (1, 1), (2, 1)])]
            }
        };
        let r = simple.len();
        let cartan: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let v = int(2) * dot(&simple[i], &simple[j]) / dot(&simple[j], &simple[j]);
                        crate::exactnum::to_i64(&v).expect("Cartan integers")
                    })
                    .collect()
            })
            .collect();
        let positive = positive_roots(&cartan, &simple);
        Ok(RootSystem { ty, n, simple, positive, cartan })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    /// The size parameter passed to [`RootSystem::new`].
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.simple[0].len()
    }

    pub fn simple_roots(&self) -> &[Vec<Scalar>] {
        &self.simple
    }

    /// Positive roots sorted by height, simple roots first.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// Positive roots followed by their negatives in the same order.
    pub fn all_roots(&self) -> Vec<Root> {
        let mut all = self.positive.clone();
        all.extend(self.positive.iter().map(Root::negated));
        all
    }

    /// Cartan matrix `A_ij = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j)`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Writes an ambient vector as an integer combination of simple roots.
    /// Fails unless the vector is a (positive or negative) root.
    pub fn expand_in_simple(&self, vector: &[Scalar]) -> Result<Vec<i64>> {
        let not_root = || Error::RootNotInSystem(format!("{}{}", self.ty, self.n));
        if vector.len() != self.ambient_dim() {
            return Err(not_root());
        }
        let cols: Vec<Vec<Scalar>> =
            (0..self.ambient_dim()).map(|k| self.simple.iter().map(|s| s[k].clone()).collect()).collect();
        let m = Matrix::from_rows(cols);
        let x = m.solve(vector).ok_or_else(not_root)?;
        let exp: Vec<i64> = x.iter().map(crate::exactnum::to_i64).collect::<Option<_>>().ok_or_else(not_root)?;
        let is_root =
            self.positive.iter().any(|r| r.expansion == exp || r.expansion.iter().zip(&exp).all(|(a, b)| *a == -*b));
        if !is_root {
            return Err(not_root());
        }
        Ok(exp)
    }

    /// The highest root `theta`.
    pub fn highest_root(&self) -> &Root {
        self.positive.iter().max_by_key(|r| r.height()).expect("nonempty")
    }

    /// `alpha(h) = sum_i m_i p_i` for a root with expansion `m`.
    pub fn level(&self, spec: &GradingSpec, expansion: &[i64]) -> i64 {
        expansion.iter().zip(spec.values()).map(|(m, p)| m * p).sum()
    }

    /// Depth `k` of the grading: the level of the highest root.
    pub fn depth(&self, spec: &GradingSpec) -> i64 {
        self.level(spec, &self.highest_root().expansion)
    }

    pub fn check_spec(&self, spec: &GradingSpec) -> Result<()> {
        if spec.values().len() != self.rank() {
            return Err(Error::InvalidGrading(format!(
                "expected {} entries, found {}",
                self.rank(),
                spec.values().len()
            )));
        }
        Ok(())
    }

    /// Number of positive roots predicted by the type.
    pub fn expected_positive_count(&self) -> usize {
        let n = self.n;
        match self.ty {
            CartanType::A => n * (n - 1) / 2,
            CartanType::B | CartanType::C => n * n,
            CartanType::D => n * (n - 1),
            CartanType::G2 => 6,
        }
    }
}

/// Generates positive roots by simple-root strings: `beta + alpha_i` is a root
/// iff `q > 0`, where `beta - p alpha_i, ..., beta + q alpha_i` is the string
/// and `p - q = <beta, alpha_i^vee>`.
fn positive_roots(cartan: &[Vec<i64>], simple: &[Vec<Scalar>]) -> Vec<Root> {
    let r = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut e = vec![0; r];
            e[i] = 1;
            e
        })
        .collect();
    let mut frontier = roots.clone();
    while !frontier.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &frontier {
            for i in 0..r {
                // p: how far down the alpha_i string we can go
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if roots.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..r).map(|j| beta[j] * cartan[j][i]).sum();
                let q = p - pairing;
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !roots.contains(&up) && !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort_by(|a, b| b.cmp(a));
        roots.extend(next.iter().cloned());
        frontier = next;
    }
    let dim = simple[0].len();
    roots
        .into_iter()
        .map(|exp| {
            let mut v = vec![Scalar::zero(); dim];
            for (m, s) in exp.iter().zip(simple) {
                for (a, b) in v.iter_mut().zip(s) {
                    *a += int(*m) * b;
                }
            }
            Root { expansion: exp, vector: v }
        })
        .collect()
}
