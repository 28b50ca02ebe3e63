//! Reference implementations shared by the integration tests. Nothing here
//! calls into the library's arithmetic: octonion products come from a
//! separate recursive doubling over plain rationals, and span membership from
//! a separate incremental elimination.

#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use octospin::{Matrix, Octonion, Rational};

pub fn r(n: i64, d: i64) -> Rational {
    BigRational::new(n.into(), d.into())
}

fn conj(a: &[Rational]) -> Vec<Rational> {
    a.iter()
        .enumerate()
        .map(|(i, x)| if i == 0 { x.clone() } else { -x.clone() })
        .collect()
}

/// `(a, b)(c, d) = (ac − d̄b, da + bc̄)` applied recursively down to reals.
pub fn cd_mul(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    if x.len() == 1 {
        return vec![&x[0] * &y[0]];
    }
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul(a, c);
    let dbar_b = cd_mul(&conj(d), b);
    let da = cd_mul(d, a);
    let b_cbar = cd_mul(b, &conj(c));
    let mut out: Vec<Rational> = ac.iter().zip(&dbar_b).map(|(p, q)| p - q).collect();
    out.extend(da.iter().zip(&b_cbar).map(|(p, q)| p + q));
    out
}

pub fn oct_mul(x: &Octonion<Rational>, y: &Octonion<Rational>) -> Octonion<Rational> {
    Octonion::from_slice(&cd_mul(&x.coords, &y.coords))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Row-echelon basis built one vector at a time.
#[derive(Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone() / &row[*p];
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let rem = self.reduce(v);
        match rem.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                // keep earlier rows reduced in the new pivot column
                for (_, row) in self.rows.iter_mut() {
                    if !row[p].is_zero() {
                        let f = row[p].clone() / &rem[p];
                        for (x, y) in row.iter_mut().zip(&rem) {
                            if !y.is_zero() {
                                *x -= &f * y;
                            }
                        }
                    }
                }
                self.rows.push((p, rem));
                true
            }
        }
    }

    pub fn from_matrices(ms: &[Matrix<Rational>]) -> Self {
        let mut e = Echelon::new();
        for m in ms {
            e.insert(m.entries());
        }
        e
    }
}

/// Triple-loop product, independent of the library's multiply.
pub fn naive_mul(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    let mut out = vec![vec![Rational::zero(); b.cols()]; a.rows()];
    for (i, row) in out.iter_mut().enumerate() {
        for k in 0..a.cols() {
            let x = &a[(i, k)];
            if x.is_zero() {
                continue;
            }
            for (j, o) in row.iter_mut().enumerate() {
                let y = &b[(k, j)];
                if !y.is_zero() {
                    *o += x * y;
                }
            }
        }
    }
    Matrix::from_fn(a.rows(), b.cols(), |i, j| out[i][j].clone())
}

pub fn naive_bracket(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    let ab = naive_mul(a, b);
    let ba = naive_mul(b, a);
    Matrix::from_fn(a.rows(), a.cols(), |i, j| &ab[(i, j)] - &ba[(i, j)])
}

/// Substitutes into every basis pair of the infinitesimal triality relation.
pub fn triality_holds(a1: &Matrix<Rational>, a2: &Matrix<Rational>, a3: &Matrix<Rational>) -> bool {
    let apply = |m: &Matrix<Rational>, v: &[Rational]| -> Vec<Rational> {
        (0..8).map(|i| dot(m.row(i), v)).collect()
    };
    let e = |i: usize| -> Vec<Rational> {
        (0..8).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect()
    };
    (0..8).all(|i| {
        (0..8).all(|j| {
            let lhs = apply(a2, &cd_mul(&e(i), &e(j)));
            let t1 = cd_mul(&apply(a1, &e(i)), &e(j));
            let t2 = cd_mul(&e(i), &apply(a3, &e(j)));
            lhs.iter().zip(t1.iter().zip(&t2)).all(|(l, (p, q))| *l == p + q)
        })
    })
}

pub fn is_nonnegative(x: &Rational) -> bool {
    !x.is_negative()
}
