//! Clifford generators on `O ⊕ O`, the triality group `H ⊂ SO(8)³`, its
//! automorphisms, and the Lie algebra spin(8) as triples `(a1, a2, a3)`.

use crate::error::{Error, Result};
use crate::linalg::solve_unique;
use crate::matrix::{bracket, Matrix};
use crate::octonion::{apply, conjugation_matrix, Octonion};
use crate::scalar::Scalar;

/// `m_x = [[0, C R_x], [−C L_x, 0]]` on `O ⊕ O`; squares to `−|x|² I`.
pub fn clifford_m8<T: Scalar>(x: &Octonion<T>) -> Matrix<T> {
    let c = conjugation_matrix();
    let zero = Matrix::zeros(8, 8);
    Matrix::from_blocks(&[
        vec![zero.clone(), &c * &x.right_matrix()],
        vec![-&(&c * &x.left_matrix()), zero],
    ])
}

fn max_abs_octonion<T: Scalar>(x: &Octonion<T>, acc: &mut T) {
    for c in &x.coords {
        let a = c.abs();
        if a > *acc {
            *acc = a;
        }
    }
}

/// A candidate element `(g1, g2, g3)` of `H`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialityTriple<T> {
    pub g1: Matrix<T>,
    pub g2: Matrix<T>,
    pub g3: Matrix<T>,
}

impl<T: Scalar> TrialityTriple<T> {
    pub fn new(g1: Matrix<T>, g2: Matrix<T>, g3: Matrix<T>) -> Self {
        TrialityTriple { g1, g2, g3 }
    }

    pub fn identity() -> Self {
        Self::signs(1, 1, 1)
    }

    /// `(ε1 I, ε2 I, ε3 I)`.
    pub fn signs(e1: i64, e2: i64, e3: i64) -> Self {
        let s = |e| Matrix::scalar(8, T::from_i64(e));
        TrialityTriple::new(s(e1), s(e2), s(e3))
    }

    /// The four central elements `(ε1 I, ε2 I, ε3 I)` with `ε1 ε2 ε3 = 1`.
    pub fn center() -> [Self; 4] {
        [
            Self::signs(1, 1, 1),
            Self::signs(1, -1, -1),
            Self::signs(-1, 1, -1),
            Self::signs(-1, -1, 1),
        ]
    }

    /// Largest deviation of `g2(e_i e_j) − g1(e_i) g3(e_j)` over all basis
    /// pairs. Exactly zero iff the triple satisfies the triality relation.
    pub fn h_residual(&self) -> T {
        let mut worst = T::zero();
        for i in 0..8 {
            let gx = apply(&self.g1, &Octonion::basis(i));
            for j in 0..8 {
                let lhs = apply(&self.g2, &Octonion::basis(i).mul(&Octonion::basis(j)));
                let rhs = gx.mul(&apply(&self.g3, &Octonion::basis(j)));
                max_abs_octonion(&(&lhs - &rhs), &mut worst);
            }
        }
        worst
    }

    pub fn in_h(&self) -> bool {
        self.h_residual().negligible(1.0)
    }

    pub fn is_orthogonal(&self) -> bool {
        let id = Matrix::identity(8);
        [&self.g1, &self.g2, &self.g3]
            .iter()
            .all(|g| (&(&g.transpose() * g) - &id).max_abs().negligible(1.0))
    }

    fn require_h(&self) -> Result<()> {
        let r = self.h_residual();
        if r.negligible(1.0) {
            Ok(())
        } else {
            Err(Error::NotInH(r.to_f64()))
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        TrialityTriple::new(&self.g1 * &other.g1, &self.g2 * &other.g2, &self.g3 * &other.g3)
    }

    /// `α(g1, g2, g3) = (C g3 C, C g2 C, C g1 C)`.
    pub fn alpha(&self) -> Result<Self> {
        self.require_h()?;
        Ok(self.alpha_unchecked())
    }

    /// `β(g1, g2, g3) = (g2, g1, C g3 C)`.
    pub fn beta(&self) -> Result<Self> {
        self.require_h()?;
        Ok(self.beta_unchecked())
    }

    /// The triality automorphism `τ = α ∘ β`.
    pub fn tau(&self) -> Result<Self> {
        self.beta()?.alpha()
    }

    fn alpha_unchecked(&self) -> Self {
        let c = conjugation_matrix();
        let conj = |g: &Matrix<T>| &(&c * g) * &c;
        TrialityTriple::new(conj(&self.g3), conj(&self.g2), conj(&self.g1))
    }

    fn beta_unchecked(&self) -> Self {
        let c = conjugation_matrix();
        TrialityTriple::new(self.g2.clone(), self.g1.clone(), &(&c * &self.g3) * &c)
    }

    /// The action on `O ⊕ O`, `diag(g1, g3)`.
    pub fn spinor_action(&self) -> Matrix<T> {
        Matrix::block_diagonal(&[&self.g1, &self.g3])
    }
}

/// `(L_u, L_u R_u, R_u)` for a unit octonion `u`.
pub fn sigma_generator<T: Scalar>(u: &Octonion<T>) -> Result<TrialityTriple<T>> {
    if !(u.norm_sq() - T::one()).negligible(1.0) {
        return Err(Error::NotUnit("u"));
    }
    let l = u.left_matrix();
    let r = u.right_matrix();
    let lr = &l * &r;
    Ok(TrialityTriple::new(l, lr, r))
}

/// An element of spin(8) carried by its three images in so(8).
#[derive(Clone, Debug, PartialEq)]
pub struct Spin8Element<T> {
    pub a1: Matrix<T>,
    pub a2: Matrix<T>,
    pub a3: Matrix<T>,
}

impl<T: Scalar> Spin8Element<T> {
    pub fn zero() -> Self {
        let z = Matrix::zeros(8, 8);
        Spin8Element {
            a1: z.clone(),
            a2: z.clone(),
            a3: z,
        }
    }

    /// Completes `(a1, a3)` by solving `a2(e_i e_j) = a1(e_i) e_j + e_i a3(e_j)`
    /// for all 64 basis pairs. The solution must exist and be unique.
    pub fn from_outer(a1: Matrix<T>, a3: Matrix<T>) -> Result<Self> {
        let e = |i: usize| Octonion::<T>::basis(i);
        // One equation per basis pair; each row of a2 is solved separately
        // against the same coefficient matrix.
        let mut coeff = Matrix::zeros(64, 8);
        let mut rhs: Vec<Vec<T>> = (0..8).map(|_| Vec::with_capacity(64)).collect();
        for i in 0..8 {
            let a1x = apply(&a1, &e(i));
            for j in 0..8 {
                let xy = e(i).mul(&e(j));
                for (c, v) in xy.coords.iter().enumerate() {
                    coeff[(i * 8 + j, c)] = v.clone();
                }
                let target = &a1x.mul(&e(j)) + &e(i).mul(&apply(&a3, &e(j)));
                for (k, t) in target.coords.into_iter().enumerate() {
                    rhs[k].push(t);
                }
            }
        }
        let mut rows = Vec::with_capacity(8);
        for b in &rhs {
            rows.push(solve_unique(&coeff, b)?);
        }
        let a2 = Matrix::from_fn(8, 8, |k, c| rows[k][c].clone());
        Ok(Spin8Element { a1, a2, a3 })
    }

    /// Largest deviation from infinitesimal triality over basis pairs.
    pub fn triality_residual(&self) -> T {
        let mut worst = T::zero();
        for i in 0..8 {
            let x = Octonion::basis(i);
            let a1x = apply(&self.a1, &x);
            for j in 0..8 {
                let y = Octonion::basis(j);
                let lhs = apply(&self.a2, &x.mul(&y));
                let rhs = &a1x.mul(&y) + &x.mul(&apply(&self.a3, &y));
                max_abs_octonion(&(&lhs - &rhs), &mut worst);
            }
        }
        worst
    }

    pub fn is_skew(&self) -> bool {
        self.a1.is_skew() && self.a2.is_skew() && self.a3.is_skew()
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.triality_residual();
        if !r.negligible(1.0) || !self.is_skew() {
            return Err(Error::TrialityViolated(r.to_f64()));
        }
        Ok(())
    }

    /// `diag(a1, a3)` acting on `O ⊕ O`.
    pub fn block_diagonal(&self) -> Matrix<T> {
        Matrix::block_diagonal(&[&self.a1, &self.a3])
    }

    pub fn add(&self, other: &Self) -> Self {
        Spin8Element {
            a1: &self.a1 + &other.a1,
            a2: &self.a2 + &other.a2,
            a3: &self.a3 + &other.a3,
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Spin8Element {
            a1: self.a1.scale(s),
            a2: self.a2.scale(s),
            a3: self.a3.scale(s),
        }
    }

    pub fn bracket(&self, other: &Self) -> Self {
        let b = |x: &Matrix<T>, y: &Matrix<T>| bracket(x, y).expect("8x8 bracket");
        Spin8Element {
            a1: b(&self.a1, &other.a1),
            a2: b(&self.a2, &other.a2),
            a3: b(&self.a3, &other.a3),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }
}

/// The 28 elements `½[m_{e_i}, m_{e_j}]`, `i < j`, as triples.
pub fn spin8_basis<T: Scalar>() -> Vec<Spin8Element<T>> {
    let m: Vec<Matrix<T>> = (0..8).map(|i| clifford_m8(&Octonion::basis(i))).collect();
    let mut out = Vec::with_capacity(28);
    for i in 0..8 {
        for j in i + 1..8 {
            let half = bracket(&m[i], &m[j])
                .expect("16x16 bracket")
                .scale(&T::half());
            let a1 = half.block(0, 0, 8, 8);
            let a3 = half.block(8, 8, 8, 8);
            out.push(
                Spin8Element::from_outer(a1, a3)
                    .expect("the outer blocks of a Clifford bivector admit a unique a2"),
            );
        }
    }
    out
}

/// `ρ2'(a) = a2`, after checking `a` is a genuine spin(8) triple.
pub fn rho2_of<T: Scalar>(a: &Spin8Element<T>) -> Result<Matrix<T>> {
    a.validate()?;
    Ok(a.a2.clone())
}
