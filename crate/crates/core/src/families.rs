//! Matrix models of spin(9), spin(10), spin(10,1), spin(10,2) and spin(9,1).
//!
//! Real spinor coordinates are ordered `(x1, y1, x2, y2)`, each an octonion
//! block of 8. The 16-dimensional families act on `(x1, y1)` and are applied
//! diagonally when a 32-dimensional action is needed.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{expm, SpanBasis};
use crate::matrix::{bracket, ComplexMatrix, Matrix};
use crate::octonion::{conjugation_matrix, Octonion};
use crate::scalar::Scalar;
use crate::spin8::{spin8_basis, Spin8Element};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Spin8,
    Spin9,
    Spin10,
    Spin101,
    Spin102,
    Spin91,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Spin8,
        Family::Spin9,
        Family::Spin10,
        Family::Spin101,
        Family::Spin102,
        Family::Spin91,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Spin8 => "spin8",
            Family::Spin9 => "spin9",
            Family::Spin10 => "spin10",
            Family::Spin101 => "spin101",
            Family::Spin102 => "spin102",
            Family::Spin91 => "spin91",
        }
    }

    pub fn dim(self) -> usize {
        28 + self.scalar_names().len() + 8 * self.octonion_names().len()
    }

    /// Size of the matrices realizing the family.
    pub fn matrix_size(self) -> usize {
        match self {
            Family::Spin8 | Family::Spin9 | Family::Spin91 => 16,
            Family::Spin10 | Family::Spin101 | Family::Spin102 => 32,
        }
    }

    /// Real scalar parameters, in basis order.
    pub fn scalar_names(self) -> &'static [&'static str] {
        match self {
            Family::Spin8 | Family::Spin9 => &[],
            Family::Spin10 => &["r"],
            Family::Spin101 => &["x", "y", "z"],
            Family::Spin102 => &["u", "v", "w", "x", "y", "z"],
            Family::Spin91 => &["x_scalar"],
        }
    }

    /// Octonion parameters, in basis order.
    pub fn octonion_names(self) -> &'static [&'static str] {
        match self {
            Family::Spin8 => &[],
            Family::Spin9 => &["x"],
            Family::Spin10 => &["x", "y"],
            Family::Spin101 => &["x", "y", "z"],
            Family::Spin102 => &["w", "x", "y", "z"],
            Family::Spin91 => &["w", "x_oct"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Parameter record of a family element: a spin(8) part plus named scalars
/// and octonions.
#[derive(Clone, Debug, PartialEq)]
pub struct Params<T> {
    pub a: Spin8Element<T>,
    pub scalars: Vec<T>,
    pub octonions: Vec<Octonion<T>>,
}

impl<T: Scalar> Params<T> {
    pub fn zero(family: Family) -> Self {
        Params {
            a: Spin8Element::zero(),
            scalars: vec![T::zero(); family.scalar_names().len()],
            octonions: vec![Octonion::zero(); family.octonion_names().len()],
        }
    }

    /// Builds parameters from coordinates in basis order.
    pub fn from_coords(family: Family, spin8: &[Spin8Element<T>], coords: &[T]) -> Result<Self> {
        if coords.len() != family.dim() {
            return Err(Error::DimensionMismatch {
                op: "params from coordinates",
                left: (family.dim(), 1),
                right: (coords.len(), 1),
            });
        }
        let mut p = Self::zero(family);
        for (b, c) in spin8.iter().zip(&coords[..28]) {
            if !c.is_zero() {
                p.a = p.a.add(&b.scale(c));
            }
        }
        let ns = p.scalars.len();
        p.scalars.clone_from_slice(&coords[28..28 + ns]);
        for (k, o) in p.octonions.iter_mut().enumerate() {
            let start = 28 + ns + 8 * k;
            *o = Octonion::from_slice(&coords[start..start + 8]);
        }
        Ok(p)
    }

    fn check(&self, family: Family) -> Result<()> {
        let ok = self.scalars.len() == family.scalar_names().len()
            && self.octonions.len() == family.octonion_names().len();
        if ok {
            Ok(())
        } else {
            Err(Error::NotInFamily {
                family: family.name(),
            })
        }
    }

    pub fn scalar(&self, family: Family, name: &str) -> Option<&T> {
        let i = family.scalar_names().iter().position(|n| *n == name)?;
        self.scalars.get(i)
    }

    pub fn octonion(&self, family: Family, name: &str) -> Option<&Octonion<T>> {
        let i = family.octonion_names().iter().position(|n| *n == name)?;
        self.octonions.get(i)
    }
}

fn cr<T: Scalar>(x: &Octonion<T>) -> Matrix<T> {
    &conjugation_matrix() * &x.right_matrix()
}

fn cl<T: Scalar>(x: &Octonion<T>) -> Matrix<T> {
    &conjugation_matrix() * &x.left_matrix()
}

fn sid<T: Scalar>(s: &T) -> Matrix<T> {
    Matrix::scalar(8, s.clone())
}

fn grid<T: Scalar>(rows: Vec<Vec<Matrix<T>>>) -> Matrix<T> {
    Matrix::from_blocks(&rows)
}

/// Evaluates the family's block template.
pub fn template<T: Scalar>(family: Family, p: &Params<T>) -> Result<Matrix<T>> {
    p.check(family)?;
    let (a1, a3) = (&p.a.a1, &p.a.a3);
    let s = &p.scalars;
    let o = &p.octonions;
    Ok(match family {
        Family::Spin8 => p.a.block_diagonal(),
        Family::Spin9 => grid(vec![
            vec![a1.clone(), cr(&o[0])],
            vec![-&cl(&o[0]), a3.clone()],
        ]),
        Family::Spin10 => {
            let (r, x, y) = (&s[0], &o[0], &o[1]);
            grid(vec![
                vec![a1.clone(), cr(x), -&sid(r), -&cr(y)],
                vec![-&cl(x), a3.clone(), -&cl(y), sid(r)],
                vec![sid(r), cr(y), a1.clone(), cr(x)],
                vec![cl(y), -&sid(r), -&cl(x), a3.clone()],
            ])
        }
        Family::Spin101 => {
            let (x, y, zs) = (&s[0], &s[1], &s[2]);
            let (xo, yo, zo) = (&o[0], &o[1], &o[2]);
            grid(vec![
                vec![a1 + &sid(x), cr(xo), sid(y), cr(yo)],
                vec![-&cl(xo), a3 + &sid(x), cl(yo), -&sid(y)],
                vec![sid(zs), cr(zo), a1 - &sid(x), cr(xo)],
                vec![cl(zo), -&sid(zs), -&cl(xo), a3 - &sid(x)],
            ])
        }
        Family::Spin102 => {
            let (u, v, w, x, y, zs) = (&s[0], &s[1], &s[2], &s[3], &s[4], &s[5]);
            let (wo, xo, yo, zo) = (&o[0], &o[1], &o[2], &o[3]);
            grid(vec![
                vec![a1 + &sid(x), cr(wo), sid(y), cr(yo)],
                vec![cl(xo), a3 + &sid(w), cl(yo), sid(u)],
                vec![sid(zs), cr(zo), a1 - &sid(x), -&cr(xo)],
                vec![cl(zo), sid(v), -&cl(wo), a3 - &sid(w)],
            ])
        }
        Family::Spin91 => {
            let (x, wo, xo) = (&s[0], &o[0], &o[1]);
            grid(vec![
                vec![a1 + &sid(x), cr(wo)],
                vec![cl(xo), a3 - &sid(x)],
            ])
        }
    })
}

/// A family element together with its parameters and matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct LieElement<T> {
    pub family: Family,
    pub params: Params<T>,
    pub matrix: Matrix<T>,
}

impl<T: Scalar> LieElement<T> {
    pub fn new(family: Family, params: Params<T>) -> Result<Self> {
        let matrix = template(family, &params)?;
        Ok(LieElement {
            family,
            params,
            matrix,
        })
    }

    /// The matrix acting on `n` real coordinates, `n` = 16 or 32.
    pub fn matrix_on(&self, n: usize) -> Result<Matrix<T>> {
        let m = self.matrix.rows();
        if n == m {
            Ok(self.matrix.clone())
        } else if n == 2 * m && m == 16 {
            Ok(embed_diagonal(&self.matrix))
        } else {
            Err(Error::DimensionMismatch {
                op: "act",
                left: self.matrix.shape(),
                right: (n, 1),
            })
        }
    }

    pub fn act(&self, v: &[T]) -> Result<Vec<T>> {
        Ok(self.matrix_on(v.len())?.apply(v))
    }

    fn expect(&self, family: Family) -> Result<()> {
        if self.family == family {
            Ok(())
        } else {
            Err(Error::WrongFamily {
                expected: family.name(),
                got: self.family.name(),
            })
        }
    }
}

/// `diag(m, m)`.
pub fn embed_diagonal<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    Matrix::block_diagonal(&[m, m])
}

/// An ordered basis of a family with its row-reduced span.
#[derive(Clone, Debug)]
pub struct FamilyBasis<T> {
    pub family: Family,
    pub elements: Vec<LieElement<T>>,
    spin8: Vec<Spin8Element<T>>,
    span: SpanBasis<T>,
}

impl<T: Scalar> FamilyBasis<T> {
    /// spin(8) triples first, then scalars, then octonion coordinates.
    pub fn new(family: Family) -> Self {
        let spin8 = spin8_basis::<T>();
        let dim = family.dim();
        let elements: Vec<LieElement<T>> = (0..dim)
            .map(|k| {
                let coords: Vec<T> = (0..dim)
                    .map(|i| if i == k { T::one() } else { T::zero() })
                    .collect();
                let p = Params::from_coords(family, &spin8, &coords).expect("coordinate length");
                LieElement::new(family, p).expect("parameter shape")
            })
            .collect();
        let span = SpanBasis::from_matrices(&elements.iter().map(|e| e.matrix.clone()).collect::<Vec<_>>());
        FamilyBasis {
            family,
            elements,
            spin8,
            span,
        }
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    pub fn is_independent(&self) -> bool {
        self.span.is_independent()
    }

    pub fn matrices(&self) -> Vec<Matrix<T>> {
        self.elements.iter().map(|e| e.matrix.clone()).collect()
    }

    /// Residual of `m` against the span (squared remainder norm).
    pub fn residual(&self, m: &Matrix<T>) -> T {
        self.span.residual_norm_sq(m.entries())
    }

    pub fn contains(&self, m: &Matrix<T>) -> bool {
        m.shape() == self.elements[0].matrix.shape() && self.span.contains(m.entries())
    }

    pub fn coordinates(&self, m: &Matrix<T>) -> Option<Vec<T>> {
        if m.shape() != self.elements[0].matrix.shape() {
            return None;
        }
        self.span.coordinates(m.entries())
    }

    /// Recovers the parameters of a matrix in the span.
    pub fn element_from_matrix(&self, m: &Matrix<T>) -> Result<LieElement<T>> {
        let coords = self.coordinates(m).ok_or(Error::NotInFamily {
            family: self.family.name(),
        })?;
        let params = Params::from_coords(self.family, &self.spin8, &coords)?;
        LieElement::new(self.family, params)
    }

    pub fn element_from_coords(&self, coords: &[T]) -> Result<LieElement<T>> {
        let params = Params::from_coords(self.family, &self.spin8, coords)?;
        LieElement::new(self.family, params)
    }

    /// Largest span residual of `[b_i, b_j]` over all pairs `i < j`.
    pub fn closure_residual(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let b = bracket(&self.elements[i].matrix, &self.elements[j].matrix)
                    .expect("square basis matrices");
                let r = self.residual(&b);
                if r > worst {
                    worst = r;
                }
            }
        }
        worst
    }

    /// Nonzero `c` with `[b_i, b_j] = Σ_k c b_k`, for `i < j`.
    pub fn structure_constants(&self) -> Result<Vec<(usize, usize, usize, T)>> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let b = bracket(&self.elements[i].matrix, &self.elements[j].matrix)?;
                let coords = self.coordinates(&b).ok_or(Error::NotInFamily {
                    family: self.family.name(),
                })?;
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.negligible(1.0) {
                        out.push((i, j, k, c));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Largest squared residual of each matrix in `sub` against span(`sup`).
pub fn containment_residual<T: Scalar>(sub: &[Matrix<T>], sup: &[Matrix<T>]) -> T {
    let span = SpanBasis::from_matrices(sup);
    sub.iter()
        .map(|m| span.residual_norm_sq(m.entries()))
        .fold(T::zero(), |acc, r| if r > acc { r } else { acc })
}

/// `r = diag(I16, −I16)`, generating the one-parameter subgroup R.
pub fn r_algebra<T: Scalar>() -> Matrix<T> {
    let mut d = vec![T::one(); 16];
    d.extend(vec![-T::one(); 16]);
    Matrix::diagonal(&d)
}

/// `r′ = diag(I8, −I8, −I8, I8)`, generating R′.
pub fn r_prime_algebra<T: Scalar>() -> Matrix<T> {
    let signs = [1, -1, -1, 1];
    let d: Vec<T> = signs
        .iter()
        .flat_map(|&s| std::iter::repeat_n(T::from_i64(s), 8))
        .collect();
    Matrix::diagonal(&d)
}

/// `base ⊕ extra ⊕ [base, extra]`.
pub fn bracket_extension<T: Scalar>(base: &[Matrix<T>], extra: &Matrix<T>) -> Result<Vec<Matrix<T>>> {
    let mut out: Vec<Matrix<T>> = base.to_vec();
    out.push(extra.clone());
    for b in base {
        out.push(bracket(b, extra)?);
    }
    Ok(out)
}

/// spin(10) ⊕ r ⊕ [spin(10), r].
pub fn spin101_from_brackets<T: Scalar>() -> Vec<Matrix<T>> {
    let base = FamilyBasis::<T>::new(Family::Spin10).matrices();
    bracket_extension(&base, &r_algebra()).expect("32x32 matrices")
}

/// spin(10,1) ⊕ r′ ⊕ [spin(10,1), r′].
pub fn spin102_from_brackets<T: Scalar>() -> Vec<Matrix<T>> {
    let base = FamilyBasis::<T>::new(Family::Spin101).matrices();
    bracket_extension(&base, &r_prime_algebra()).expect("32x32 matrices")
}

/// `m_(r,x) = i [[r I, C R_x], [C L_x, −r I]]` as a complex 16×16 matrix.
pub fn m9<T: Scalar>(r: &T, x: &Octonion<T>) -> ComplexMatrix<T> {
    let im = grid(vec![
        vec![sid(r), cr(x)],
        vec![cl(x), -&sid(r)],
    ]);
    ComplexMatrix::from_parts(&Matrix::zeros(16, 16), &im)
}

/// `p_(r,x) = [[r I, C R_x], [−C L_x, r I]]`.
pub fn p9<T: Scalar>(r: &T, x: &Octonion<T>) -> Matrix<T> {
    grid(vec![
        vec![sid(r), cr(x)],
        vec![-&cl(x), sid(r)],
    ])
}

/// `p_(r,x)` as a Spin(9) generator; requires `r² + |x|² = 1`.
pub fn p9_generator<T: Scalar>(r: &T, x: &Octonion<T>) -> Result<Matrix<T>> {
    let n = r.square() + x.norm_sq();
    if !(n - T::one()).negligible(1.0) {
        return Err(Error::NotUnit("(r, x)"));
    }
    Ok(p9(r, x))
}

fn positive<T: Scalar>(t: &T, what: &str) -> Result<()> {
    if *t > T::zero() {
        Ok(())
    } else {
        Err(Error::Constraint(format!("{what} must be positive")))
    }
}

fn block_scalars<T: Scalar>(d: [T; 4]) -> Matrix<T> {
    let v: Vec<T> = d
        .iter()
        .flat_map(|s| std::iter::repeat_n(s.clone(), 8))
        .collect();
    Matrix::diagonal(&v)
}

/// `diag(t I16, t⁻¹ I16)`.
pub fn r_generator<T: Scalar>(t: &T) -> Result<Matrix<T>> {
    positive(t, "t")?;
    let inv = T::one() / t.clone();
    Ok(block_scalars([t.clone(), t.clone(), inv.clone(), inv]))
}

/// `diag(t, t⁻¹, t⁻¹, t)` in 8-blocks.
pub fn r_prime_generator<T: Scalar>(t: &T) -> Result<Matrix<T>> {
    positive(t, "t")?;
    let inv = T::one() / t.clone();
    Ok(block_scalars([t.clone(), inv.clone(), inv, t.clone()]))
}

/// The circle element with `P = diag(c, c)`, `Q = diag(s, −s)`, in real form
/// `[[P, −Q], [Q, P]]`.
pub fn t_generator<T: Scalar>(c: &T, s: &T) -> Result<Matrix<T>> {
    if !(c.square() + s.square() - T::one()).negligible(1.0) {
        return Err(Error::Constraint("c² + s² must equal 1".into()));
    }
    let p = Matrix::block_diagonal(&[&sid(c), &sid(c)]);
    let q = Matrix::block_diagonal(&[&sid(s), &-&sid(s)]);
    Ok(grid(vec![vec![p.clone(), -&q], vec![q, p]]))
}

/// Element of the 6-dimensional group mixing `(x1, x2)` by `[[a, b], [c, d]]`
/// and `(y1, y2)` by `[[a′, b′], [c′, d′]]`, with `ad − bc = a′d′ − b′c′ = ±1`.
pub fn g6_element<T: Scalar>(x: [T; 4], y: [T; 4]) -> Result<Matrix<T>> {
    let det = |m: &[T; 4]| m[0].clone() * m[3].clone() - m[1].clone() * m[2].clone();
    let (dx, dy) = (det(&x), det(&y));
    if !(dx.abs() - T::one()).negligible(1.0) || !(dx - dy).negligible(1.0) {
        return Err(Error::Constraint(
            "ad − bc and a′d′ − b′c′ must be equal to the same ±1".into(),
        ));
    }
    let z = Matrix::zeros(8, 8);
    let [a, b, c, d] = &x;
    let [a2, b2, c2, d2] = &y;
    Ok(grid(vec![
        vec![sid(a), z.clone(), sid(b), z.clone()],
        vec![z.clone(), sid(a2), z.clone(), sid(b2)],
        vec![sid(c), z.clone(), sid(d), z.clone()],
        vec![z.clone(), sid(c2), z.clone(), sid(d2)],
    ]))
}

fn put_col<T: Scalar>(m: &mut Matrix<T>, r0: usize, c: usize, v: &Octonion<T>, s: i64) {
    for (k, x) in v.coords.iter().enumerate() {
        m[(r0 + k, c)] = T::from_i64(s) * x.clone();
    }
}

fn put_row<T: Scalar>(m: &mut Matrix<T>, r: usize, c0: usize, v: &Octonion<T>, s: i64) {
    for (k, x) in v.coords.iter().enumerate() {
        m[(r, c0 + k)] = T::from_i64(s) * x.clone();
    }
}

/// `ρ′(A) = [[0, 2 x̄ᵀ], [−2 x̄, a2]]` on `R ⊕ O`.
pub fn rho9<T: Scalar>(a: &LieElement<T>) -> Result<Matrix<T>> {
    a.expect(Family::Spin9)?;
    let xb = a.params.octonions[0].conj();
    let mut m = Matrix::zeros(9, 9);
    put_row(&mut m, 0, 1, &xb, 2);
    put_col(&mut m, 1, 0, &xb, -2);
    m.set_block(1, 1, &a.params.a.a2);
    Ok(m)
}

/// `ρ′(A)` on `R^{2+1} ⊕ O`.
pub fn rho101<T: Scalar>(a: &LieElement<T>) -> Result<Matrix<T>> {
    a.expect(Family::Spin101)?;
    let s = &a.params.scalars;
    let (x, y, z) = (&s[0], &s[1], &s[2]);
    let o = &a.params.octonions;
    let (xb, yb, zb) = (o[0].conj(), o[1].conj(), o[2].conj());
    let two = T::from_i64(2);
    let mut m = Matrix::zeros(11, 11);
    m[(0, 0)] = two.clone() * x.clone();
    m[(0, 1)] = y.clone();
    m[(1, 0)] = two.clone() * z.clone();
    m[(1, 2)] = two.clone() * y.clone();
    m[(2, 1)] = z.clone();
    m[(2, 2)] = -(two * x.clone());
    put_row(&mut m, 0, 3, &yb, 1);
    put_row(&mut m, 1, 3, &xb, 2);
    put_row(&mut m, 2, 3, &zb, 1);
    put_col(&mut m, 3, 0, &zb, 2);
    put_col(&mut m, 3, 1, &xb, -2);
    put_col(&mut m, 3, 2, &yb, 2);
    m.set_block(3, 3, &a.params.a.a2);
    Ok(m)
}

/// Gram matrix of `−2(a1 b3 + a3 b1) + a2 b2 + o·o′`.
pub fn minkowski_gram<T: Scalar>() -> Matrix<T> {
    let mut g = Matrix::zeros(11, 11);
    g[(0, 2)] = T::from_i64(-2);
    g[(2, 0)] = T::from_i64(-2);
    g[(1, 1)] = T::one();
    for k in 3..11 {
        g[(k, k)] = T::one();
    }
    g
}

/// `exp(t A)`.
pub fn exp_element(a: &LieElement<f64>, t: f64) -> Matrix<f64> {
    expm(&a.matrix.scale(&t))
}
