//! Defining data of the shipped matrix models: matrix size, the linear
//! constraints cutting the algebra out of `gl(d)`, the defining form and the
//! weight carried by each matrix position.

use crate::exactnum::{int, zero, Matrix, Scalar};
use crate::rootsys::{CartanType, RootSystem};

pub(super) struct Model {
    pub size: usize,
    pub sigma: Option<Matrix>,
    /// Rows are linear functionals on row-major flattened `size x size` matrices.
    pub constraints: Matrix,
    /// Ambient weight `w_a` of basis position `a`; `E_ab` has weight `w_a - w_b`.
    pub position_weights: Vec<Vec<Scalar>>,
}

fn ambient(dim: usize, i: usize, c: i64) -> Vec<Scalar> {
    let mut v = vec![zero(); dim];
    v[i] = int(c);
    v
}

/// `(0 E; E 0)`, `(0 E; -E 0)` or the odd form `(0 0 E; 0 1 0; E 0 0)`.
pub fn defining_form(ty: CartanType, n: usize) -> Option<Matrix> {
    match ty {
        CartanType::D | CartanType::C => {
            let mut s = Matrix::zeros(2 * n, 2 * n);
            let lower = if ty == CartanType::D { 1 } else { -1 };
            for i in 0..n {
                s[(i, n + i)] = int(1);
                s[(n + i, i)] = int(lower);
            }
            Some(s)
        }
        CartanType::B => {
            let d = 2 * n + 1;
            let mut s = Matrix::zeros(d, d);
            for i in 0..n {
                s[(i, n + 1 + i)] = int(1);
                s[(n + 1 + i, i)] = int(1);
            }
            s[(n, n)] = int(1);
            Some(s)
        }
        _ => None,
    }
}

fn trace_constraint(d: usize) -> Matrix {
    let mut row = vec![zero(); d * d];
    for i in 0..d {
        row[i * d + i] = int(1);
    }
    Matrix::from_rows(vec![row])
}

/// Rows of `X^T sigma + sigma X = 0`.
fn form_constraints(sigma: &Matrix) -> Matrix {
    let d = sigma.rows();
    let mut rows = Vec::with_capacity(d * d);
    for r in 0..d {
        for c in 0..d {
            let mut row = vec![zero(); d * d];
            for k in 0..d {
                row[k * d + r] += &sigma[(k, c)];
                row[k * d + c] += &sigma[(r, k)];
            }
            rows.push(row);
        }
    }
    Matrix::from_rows(rows)
}

pub(super) fn model(rs: &RootSystem) -> Model {
    let n = rs.n();
    match rs.cartan_type() {
        CartanType::A => Model {
            size: n,
            sigma: None,
            constraints: trace_constraint(n),
            position_weights: (0..n).map(|a| ambient(n, a, -1)).collect(),
        },
        ty @ (CartanType::C | CartanType::D) => {
            let sigma = defining_form(ty, n).expect("form");
            let mut w: Vec<Vec<Scalar>> = (0..n).map(|a| ambient(n, a, -1)).collect();
            w.extend((0..n).map(|a| ambient(n, a, 1)));
            Model { size: 2 * n, constraints: form_constraints(&sigma), sigma: Some(sigma), position_weights: w }
        }
        CartanType::B => {
            let sigma = defining_form(CartanType::B, n).expect("form");
            let mut w: Vec<Vec<Scalar>> = (0..n).map(|a| ambient(n, a, -1)).collect();
            w.push(vec![zero(); n]);
            w.extend((0..n).map(|a| ambient(n, a, 1)));
            Model { size: 2 * n + 1, constraints: form_constraints(&sigma), sigma: Some(sigma), position_weights: w }
        }
        CartanType::G2 => g2_model(),
    }
}

/// Split octonions in Zorn vector-matrix form `(a, u; v, b)`, stored as
/// `[a, u1, u2, u3, v1, v2, v3, b]`.
pub(crate) mod zorn {
    use crate::exactnum::{zero, Scalar};

    pub type Zorn = [Scalar; 8];

    fn dot(x: &[Scalar], y: &[Scalar]) -> Scalar {
        x.iter().zip(y).fold(zero(), |acc, (a, b)| acc + a * b)
    }

    fn cross(x: &[Scalar], y: &[Scalar]) -> [Scalar; 3] {
        [&x[1] * &y[2] - &x[2] * &y[1], &x[2] * &y[0] - &x[0] * &y[2], &x[0] * &y[1] - &x[1] * &y[0]]
    }

    /// `(a,u;v,b)(a',u';v',b') = (aa' + u.v', au' + b'u - v x v'; a'v + bv' + u x u', bb' + v.u')`
    pub fn mul(x: &Zorn, y: &Zorn) -> Zorn {
        let (a, u, v, b) = (&x[0], &x[1..4], &x[4..7], &x[7]);
        let (a2, u2, v2, b2) = (&y[0], &y[1..4], &y[4..7], &y[7]);
        let vv = cross(v, v2);
        let uu = cross(u, u2);
        let mut out: Zorn = std::array::from_fn(|_| zero());
        out[0] = a * a2 + dot(u, v2);
        for i in 0..3 {
            out[1 + i] = a * &u2[i] + b2 * &u[i] - &vv[i];
            out[4 + i] = a2 * &v[i] + b * &v2[i] + &uu[i];
        }
        out[7] = b * b2 + dot(v, u2);
        out
    }

    #[cfg(test)]
    /// Norm `ab - u.v`, multiplicative on the split octonions.
    pub fn norm(x: &Zorn) -> Scalar {
        &x[0] * &x[7] - dot(&x[1..4], &x[4..7])
    }

    /// The imaginary basis vector `s` of `(e0, u1, u2, u3, v1, v2, v3)`,
    /// with `e0 = (1, 0; 0, -1)`.
    pub fn imaginary(s: usize) -> Zorn {
        let mut x: Zorn = std::array::from_fn(|_| zero());
        if s == 0 {
            x[0] = crate::exactnum::one();
            x[7] = -crate::exactnum::one();
        } else {
            x[s] = crate::exactnum::one();
        }
        x
    }

    /// Splits into the real part and imaginary coordinates.
    pub fn split(x: &Zorn) -> (Scalar, [Scalar; 7]) {
        let two = crate::exactnum::int(2);
        let re = (&x[0] + &x[7]) / &two;
        let mut im: [Scalar; 7] = std::array::from_fn(|_| zero());
        im[0] = (&x[0] - &x[7]) / &two;
        im[1..7].clone_from_slice(&x[1..7]);
        (re, im)
    }
}

/// Derivations of the split octonions, acting on the imaginary part.
fn g2_model() -> Model {
    const D: usize = 7;
    // products of imaginary basis vectors: real part and imaginary coordinates
    let products: Vec<Vec<(Scalar, [Scalar; 7])>> = (0..D)
        .map(|s| (0..D).map(|t| zorn::split(&zorn::mul(&zorn::imaginary(s), &zorn::imaginary(t)))).collect())
        .collect();
    let mut rows = Vec::new();
    // D(x_s x_t) - D(x_s) x_t - x_s D(x_t) = 0, with D(1) = 0; unknown D_pq at p*7+q
    for s in 0..D {
        for t in 0..D {
            let mut eq: Vec<Vec<Scalar>> = vec![vec![zero(); D * D]; 8];
            let (_, im) = &products[s][t];
            for q in 0..D {
                if im[q] == zero() {
                    continue;
                }
                for p in 0..D {
                    eq[1 + p][p * D + q] += &im[q];
                }
            }
            for p in 0..D {
                let (re, im) = &products[p][t];
                eq[0][p * D + s] -= re;
                for (r, c) in im.iter().enumerate() {
                    eq[1 + r][p * D + s] -= c;
                }
                let (re, im) = &products[s][p];
                eq[0][p * D + t] -= re;
                for (r, c) in im.iter().enumerate() {
                    eq[1 + r][p * D + t] -= c;
                }
            }
            rows.extend(eq.into_iter().filter(|r| r.iter().any(|x| *x != zero())));
        }
    }
    // u_i carries e_j - e_k for (i, j, k) cyclic, v_i the opposite
    let g = |i: usize| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let mut v = vec![zero(); 3];
        v[j] = int(1);
        v[k] = int(-1);
        v
    };
    let mut w = vec![vec![zero(); 3]];
    w.extend((0..3).map(g));
    w.extend((0..3).map(|i| g(i).into_iter().map(|x| -x).collect()));
    Model { size: D, sigma: None, constraints: Matrix::from_rows(rows), position_weights: w }
}

#[cfg(test)]
mod tests {
    use super::zorn::*;
    use super::*;
    use crate::exactnum::{frac, int};

    fn sample(seed: i64) -> Zorn {
        std::array::from_fn(|i| frac((seed * 7 + i as i64 * 3) % 11 - 5, 1 + (i as i64 + seed) % 3))
    }

    #[test]
    fn zorn_is_alternative() {
        for s in 0..6 {
            let x = sample(s);
            let y = sample(s + 13);
            let xx = mul(&x, &x);
            assert_eq!(mul(&xx, &y), mul(&x, &mul(&x, &y)));
            let yy = mul(&y, &y);
            assert_eq!(mul(&mul(&x, &y), &y), mul(&x, &yy));
        }
    }

    #[test]
    fn zorn_norm_is_multiplicative() {
        for s in 0..6 {
            let x = sample(s);
            let y = sample(2 * s + 1);
            assert_eq!(norm(&mul(&x, &y)), norm(&x) * norm(&y));
        }
    }

    #[test]
    fn imaginary_units_square_to_scalars() {
        let (re, im) = split(&mul(&imaginary(0), &imaginary(0)));
        assert_eq!(re, int(1));
        assert!(im.iter().all(|x| *x == zero()));
    }

    #[test]
    fn forms_are_nondegenerate() {
        assert_eq!(defining_form(CartanType::D, 3).unwrap().determinant(), int(-1));
        assert_eq!(defining_form(CartanType::C, 2).unwrap().determinant(), int(1));
        assert_ne!(defining_form(CartanType::B, 2).unwrap().determinant(), int(0));
    }
}
