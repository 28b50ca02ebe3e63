//! Invariant polynomials and squaring maps on `O²` and `O⁴`.

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::linalg::poly_directional_coeffs_vec;
use crate::matrix::Matrix;
use crate::octonion::Octonion;
use crate::scalar::Scalar;

/// A point `(x1, y1, x2, y2)` of `O⁴`; points of `O²` have `x2 = y2 = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spinor<T> {
    pub x1: Octonion<T>,
    pub y1: Octonion<T>,
    pub x2: Octonion<T>,
    pub y2: Octonion<T>,
}

const SLOTS: [&str; 4] = ["x1", "y1", "x2", "y2"];

impl<T: Scalar> Spinor<T> {
    pub fn new(x1: Octonion<T>, y1: Octonion<T>, x2: Octonion<T>, y2: Octonion<T>) -> Self {
        Spinor { x1, y1, x2, y2 }
    }

    /// `(x, y) ∈ O²`.
    pub fn pair(x: Octonion<T>, y: Octonion<T>) -> Self {
        Spinor::new(x, y, Octonion::zero(), Octonion::zero())
    }

    /// From 16 or 32 real coordinates.
    pub fn from_coords(c: &[T]) -> Result<Self> {
        let o = |k: usize| Octonion::from_slice(&c[8 * k..8 * k + 8]);
        match c.len() {
            16 => Ok(Spinor::pair(o(0), o(1))),
            32 => Ok(Spinor::new(o(0), o(1), o(2), o(3))),
            n => Err(Error::DimensionMismatch {
                op: "spinor coordinates",
                left: (32, 1),
                right: (n, 1),
            }),
        }
    }

    pub fn slots(&self) -> [&Octonion<T>; 4] {
        [&self.x1, &self.y1, &self.x2, &self.y2]
    }

    pub fn coords(&self) -> Vec<T> {
        self.slots().iter().flat_map(|o| o.coords.iter().cloned()).collect()
    }

    /// The `(x1, y1)` half as 16 coordinates.
    pub fn pair_coords(&self) -> Vec<T> {
        self.coords()[..16].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.slots().iter().all(|o| o.is_zero())
    }

    /// Reads `{"x1": [8], "y1": [8], "x2": [8], "y2": [8]}`; missing slots
    /// are zero.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Json("spinor must be an object".into()))?;
        if let Some(k) = obj.keys().find(|k| !SLOTS.contains(&k.as_str())) {
            return Err(Error::Json(format!("unexpected key {k:?}")));
        }
        let mut slots = Vec::with_capacity(4);
        for name in SLOTS {
            let o = match obj.get(name) {
                None => Octonion::zero(),
                Some(Value::Array(xs)) if xs.len() == 8 => {
                    let mut c = Vec::with_capacity(8);
                    for x in xs {
                        c.push(
                            T::from_json(x)
                                .ok_or_else(|| Error::Json(format!("bad scalar in {name}")))?,
                        );
                    }
                    Octonion::from_slice(&c)
                }
                Some(_) => return Err(Error::Json(format!("{name} must have 8 entries"))),
            };
            slots.push(o);
        }
        let mut it = slots.into_iter();
        let mut next = || it.next().expect("four slots");
        Ok(Spinor::new(next(), next(), next(), next()))
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (name, o) in SLOTS.iter().zip(self.slots()) {
            m.insert(
                name.to_string(),
                Value::Array(o.coords.iter().map(Scalar::to_json).collect()),
            );
        }
        Value::Object(m)
    }
}

/// `(t, o) ∈ R ⊕ O`.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector9<T> {
    pub t: T,
    pub o: Octonion<T>,
}

impl<T: Scalar> Vector9<T> {
    pub fn dot(&self, other: &Self) -> T {
        self.t.clone() * other.t.clone() + self.o.inner(&other.o)
    }

    pub fn to_vec(&self) -> Vec<T> {
        std::iter::once(self.t.clone()).chain(self.o.coords.iter().cloned()).collect()
    }
}

/// `(a1, a2, a3, o) ∈ R^{2+1} ⊕ O`.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector11<T> {
    pub a: [T; 3],
    pub o: Octonion<T>,
}

impl<T: Scalar> Vector11<T> {
    pub fn to_vec(&self) -> Vec<T> {
        self.a.iter().chain(self.o.coords.iter()).cloned().collect()
    }

    pub fn from_vec(v: &[T]) -> Self {
        Vector11 {
            a: [v[0].clone(), v[1].clone(), v[2].clone()],
            o: Octonion::from_slice(&v[3..11]),
        }
    }
}

/// The full quadratic form `|x1|² + |y1|² + |x2|² + |y2|²`.
pub fn q<T: Scalar>(z: &Spinor<T>) -> T {
    z.slots().iter().fold(T::zero(), |acc, o| acc + o.norm_sq())
}

/// `(|x|², |y|²)` for `(x, y) ∈ O ⊕ O`.
pub fn q_pair<T: Scalar>(v: &Spinor<T>) -> (T, T) {
    (v.x1.norm_sq(), v.y1.norm_sq())
}

/// `(q20, q11, q02)` for `z = (v1, v2)`, `v1 = (x1, y1)`, `v2 = (x2, y2)`.
pub fn quads<T: Scalar>(z: &Spinor<T>) -> (T, T, T) {
    (
        z.x1.norm_sq() + z.y1.norm_sq(),
        z.x1.inner(&z.x2) + z.y1.inner(&z.y2),
        z.x2.norm_sq() + z.y2.norm_sq(),
    )
}

/// `σ(x, y) = (|x|² − |y|², 2 x y)`.
pub fn sigma9<T: Scalar>(x: &Octonion<T>, y: &Octonion<T>) -> Vector9<T> {
    Vector9 {
        t: x.norm_sq() - y.norm_sq(),
        o: x.mul(y).scale(&T::from_i64(2)),
    }
}

/// `σ(v1) · σ(v2)`.
pub fn q22<T: Scalar>(z: &Spinor<T>) -> T {
    sigma9(&z.x1, &z.y1).dot(&sigma9(&z.x2, &z.y2))
}

/// `(|x1|² − |y1|²)(|x2|² − |y2|²) + 4 (x1 y1)·(x2 y2)`.
pub fn q22_expanded<T: Scalar>(z: &Spinor<T>) -> T {
    (z.x1.norm_sq() - z.y1.norm_sq()) * (z.x2.norm_sq() - z.y2.norm_sq())
        + T::from_i64(4) * z.x1.mul(&z.y1).inner(&z.x2.mul(&z.y2))
}

/// `p = ½ (q22 + q20 q02 − 2 q11²)`.
pub fn p_from_quads<T: Scalar>(z: &Spinor<T>) -> T {
    let (q20, q11, q02) = quads(z);
    (q22(z) + q20 * q02 - T::from_i64(2) * q11.square()) * T::half()
}

/// `|x1|²|x2|² + |y1|²|y2|² − (x1·x2 + y1·y2)² + 2 (x1 y1)·(x2 y2)`.
pub fn p_quartic<T: Scalar>(z: &Spinor<T>) -> T {
    z.x1.norm_sq() * z.x2.norm_sq() + z.y1.norm_sq() * z.y2.norm_sq()
        - (z.x1.inner(&z.x2) + z.y1.inner(&z.y2)).square()
        + T::from_i64(2) * z.x1.mul(&z.y1).inner(&z.x2.mul(&z.y2))
}

/// `|a ∧ b|² = |a|²|b|² − (a·b)²`.
pub fn wedge_norm_sq<T: Scalar>(a: &Octonion<T>, b: &Octonion<T>) -> T {
    a.norm_sq() * b.norm_sq() - a.inner(b).square()
}

/// `|x1∧x2|² + |y1∧y2|² − 2 (x1·x2)(y1·y2) + 2 (x1 y1)·(x2 y2)`.
pub fn p_wedge<T: Scalar>(z: &Spinor<T>) -> T {
    let two = T::from_i64(2);
    wedge_norm_sq(&z.x1, &z.x2) + wedge_norm_sq(&z.y1, &z.y2)
        - two.clone() * z.x1.inner(&z.x2) * z.y1.inner(&z.y2)
        + two * z.x1.mul(&z.y1).inner(&z.x2.mul(&z.y2))
}

/// `σ(z) = (|x1|² + |y1|², 2(x1·x2 − y1·y2), |x2|² + |y2|², 2(x1 y2 + x2 y1))`.
pub fn sigma101<T: Scalar>(z: &Spinor<T>) -> Vector11<T> {
    let two = T::from_i64(2);
    Vector11 {
        a: [
            z.x1.norm_sq() + z.y1.norm_sq(),
            two.clone() * (z.x1.inner(&z.x2) - z.y1.inner(&z.y2)),
            z.x2.norm_sq() + z.y2.norm_sq(),
        ],
        o: (&z.x1.mul(&z.y2) + &z.x2.mul(&z.y1)).scale(&two),
    }
}

/// `−2(a1 b3 + a3 b1) + a2 b2 + o·o′`.
pub fn minkowski<T: Scalar>(u: &Vector11<T>, v: &Vector11<T>) -> T {
    let [a1, a2, a3] = &u.a;
    let [b1, b2, b3] = &v.a;
    T::from_i64(-2) * (a1.clone() * b3.clone() + a3.clone() * b1.clone())
        + a2.clone() * b2.clone()
        + u.o.inner(&v.o)
}

/// `Ω(z, w) = x1(z)·x2(w) − x1(w)·x2(z) + y1(z)·y2(w) − y1(w)·y2(z)`.
pub fn omega<T: Scalar>(z: &Spinor<T>, w: &Spinor<T>) -> T {
    z.x1.inner(&w.x2) - w.x1.inner(&z.x2) + z.y1.inner(&w.y2) - w.y1.inner(&z.y2)
}

/// Gram matrix `J = [[0, I16], [−I16, 0]]` of `Ω`.
pub fn omega_gram<T: Scalar>() -> Matrix<T> {
    let id = Matrix::identity(16);
    let zero = Matrix::zeros(16, 16);
    Matrix::from_blocks(&[vec![zero.clone(), id.clone()], vec![-&id, zero]])
}

/// Coefficients in `t` of each component of `f(z + t w)` for a polynomial
/// map `f` of degree at most `degree` on spinor coordinates.
pub fn spinor_coeffs<T: Scalar>(
    f: impl Fn(&Spinor<T>) -> Vec<T>,
    z: &Spinor<T>,
    w: &[T],
    degree: usize,
) -> Vec<Vec<T>> {
    let zc = if w.len() == 16 { z.pair_coords() } else { z.coords() };
    poly_directional_coeffs_vec(
        |c| f(&Spinor::from_coords(c).expect("16 or 32 coordinates")),
        &zc,
        w,
        degree,
    )
}

/// The `t¹` coefficient of `f(z + t w)`, i.e. the derivative along `w`.
pub fn directional_derivative<T: Scalar>(
    f: impl Fn(&Spinor<T>) -> T,
    z: &Spinor<T>,
    w: &[T],
    degree: usize,
) -> T {
    spinor_coeffs(|s| vec![f(s)], z, w, degree)
        .swap_remove(1)
        .swap_remove(0)
}

/// The `t¹` coefficients of a vector-valued `f(z + t w)`.
pub fn directional_derivative_vec<T: Scalar>(
    f: impl Fn(&Spinor<T>) -> Vec<T>,
    z: &Spinor<T>,
    w: &[T],
    degree: usize,
) -> Vec<T> {
    spinor_coeffs(f, z, w, degree).swap_remove(1)
}
