//! The octonions `O` in the basis `e0 = 1, e1, …, e7`.
//!
//! The multiplication table is derived once from Cayley–Dickson doubling
//! `R → C → H → O` with the rule `(a, b)(c, d) = (ac − d̄b, da + bc̄)`;
//! basis units `e4..e7` are `(0, e0..e3)` over the quaternions.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// `TABLE[i][j] = (k, s)` means `e_i e_j = s · e_k`.
type Table = [[(usize, i8); 8]; 8];

fn doubling_conj(a: &[i64]) -> Vec<i64> {
    a.iter()
        .enumerate()
        .map(|(i, &x)| if i == 0 { x } else { -x })
        .collect()
}

fn doubling_product(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len();
    if n == 1 {
        return vec![a[0] * b[0]];
    }
    let h = n / 2;
    let (p, q) = a.split_at(h);
    let (r, s) = b.split_at(h);
    let pr = doubling_product(p, r);
    let s_bar_q = doubling_product(&doubling_conj(s), q);
    let sp = doubling_product(s, p);
    let q_r_bar = doubling_product(q, &doubling_conj(r));
    pr.iter()
        .zip(&s_bar_q)
        .map(|(x, y)| x - y)
        .chain(sp.iter().zip(&q_r_bar).map(|(x, y)| x + y))
        .collect()
}

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        let unit = |i: usize| -> Vec<i64> { (0..8).map(|k| i64::from(k == i)).collect() };
        let mut t = [[(0usize, 0i8); 8]; 8];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let prod = doubling_product(&unit(i), &unit(j));
                let (k, &s) = prod
                    .iter()
                    .enumerate()
                    .find(|(_, &c)| c != 0)
                    .expect("basis products are nonzero");
                *slot = (k, s as i8);
            }
        }
        t
    })
}

/// Nonzero structure constants `(i, j, k, c)` with `e_i e_j = c e_k`.
pub fn structure_constants() -> Vec<(usize, usize, usize, i8)> {
    let t = table();
    let mut out = Vec::with_capacity(64);
    for (i, row) in t.iter().enumerate() {
        for (j, &(k, s)) in row.iter().enumerate() {
            out.push((i, j, k, s));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct Octonion<T> {
    pub coords: [T; 8],
}

impl<T: Scalar> Octonion<T> {
    pub fn new(coords: [T; 8]) -> Self {
        Octonion { coords }
    }

    pub fn from_slice(s: &[T]) -> Self {
        assert_eq!(s.len(), 8, "octonion needs 8 coordinates");
        Octonion {
            coords: std::array::from_fn(|i| s[i].clone()),
        }
    }

    pub fn from_ints(c: [i64; 8]) -> Self {
        Octonion {
            coords: c.map(T::from_i64),
        }
    }

    pub fn zero() -> Self {
        Octonion {
            coords: std::array::from_fn(|_| T::zero()),
        }
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    pub fn basis(i: usize) -> Self {
        let mut x = Self::zero();
        x.coords[i] = T::one();
        x
    }

    /// `r · 1`.
    pub fn real(r: T) -> Self {
        let mut x = Self::zero();
        x.coords[0] = r;
        x
    }

    pub fn re(&self) -> &T {
        &self.coords[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &T) -> Self {
        Octonion {
            coords: std::array::from_fn(|i| self.coords[i].clone() * s.clone()),
        }
    }

    /// `x̄ = 2⟨x, 1⟩1 − x`.
    pub fn conj(&self) -> Self {
        Octonion {
            coords: std::array::from_fn(|i| {
                if i == 0 {
                    self.coords[0].clone()
                } else {
                    -self.coords[i].clone()
                }
            }),
        }
    }

    pub fn inner(&self, other: &Self) -> T {
        let mut acc = T::zero();
        for (a, b) in self.coords.iter().zip(&other.coords) {
            acc.add_mul(a, b);
        }
        acc
    }

    pub fn norm_sq(&self) -> T {
        self.inner(self)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let t = table();
        let mut out = Self::zero();
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (k, s) = t[i][j];
                if s > 0 {
                    out.coords[k].add_mul(a, b);
                } else {
                    out.coords[k] -= a.clone() * b.clone();
                }
            }
        }
        out
    }

    /// Matrix of `L_x : y ↦ x y`.
    pub fn left_matrix(&self) -> Matrix<T> {
        let cols: Vec<Octonion<T>> = (0..8).map(|j| self.mul(&Self::basis(j))).collect();
        Matrix::from_fn(8, 8, |i, j| cols[j].coords[i].clone())
    }

    /// Matrix of `R_x : y ↦ y x`.
    pub fn right_matrix(&self) -> Matrix<T> {
        let cols: Vec<Octonion<T>> = (0..8).map(|j| Self::basis(j).mul(self)).collect();
        Matrix::from_fn(8, 8, |i, j| cols[j].coords[i].clone())
    }

    pub fn to_vec(&self) -> Vec<T> {
        self.coords.to_vec()
    }
}

/// Matrix of conjugation, `diag(1, −1, …, −1)`.
pub fn conjugation_matrix<T: Scalar>() -> Matrix<T> {
    Matrix::from_fn(8, 8, |i, j| match (i, j) {
        (0, 0) => T::one(),
        (i, j) if i == j => -T::one(),
        _ => T::zero(),
    })
}

/// Applies an 8×8 matrix to an octonion's coordinate vector.
pub fn apply<T: Scalar>(m: &Matrix<T>, x: &Octonion<T>) -> Octonion<T> {
    Octonion::from_slice(&m.apply(&x.coords))
}

impl<T: Scalar> Add for &Octonion<T> {
    type Output = Octonion<T>;

    fn add(self, rhs: &Octonion<T>) -> Octonion<T> {
        Octonion {
            coords: std::array::from_fn(|i| self.coords[i].clone() + rhs.coords[i].clone()),
        }
    }
}

impl<T: Scalar> Sub for &Octonion<T> {
    type Output = Octonion<T>;

    fn sub(self, rhs: &Octonion<T>) -> Octonion<T> {
        Octonion {
            coords: std::array::from_fn(|i| self.coords[i].clone() - rhs.coords[i].clone()),
        }
    }
}

impl<T: Scalar> Mul for &Octonion<T> {
    type Output = Octonion<T>;

    fn mul(self, rhs: &Octonion<T>) -> Octonion<T> {
        Octonion::mul(self, rhs)
    }
}

impl<T: Scalar> Neg for &Octonion<T> {
    type Output = Octonion<T>;

    fn neg(self) -> Octonion<T> {
        Octonion {
            coords: std::array::from_fn(|i| -self.coords[i].clone()),
        }
    }
}
