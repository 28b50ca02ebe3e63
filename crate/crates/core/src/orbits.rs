//! Canonical orbit representatives, invariant-based classification and
//! stabilizer subalgebras.

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::families::{Family, FamilyBasis};
use crate::invariants::{p_quartic, q, q22, q_pair, quads, Spinor};
use crate::linalg::{is_negative_definite, nullspace_basis, SpanBasis};
use crate::matrix::{bracket, Matrix};
use crate::octonion::Octonion;
use crate::scalar::{number_json, Scalar};

/// Relative tolerance for snapping float `p` onto the endpoint orbits.
pub const SNAP_TOLERANCE: f64 = 1e-9;

/// The fixed unit imaginary octonion used in canonical forms.
pub fn canonical_u<T: Scalar>() -> Octonion<T> {
    Octonion::basis(1)
}

/// `z_θ = (cos θ · 1, 0, sin θ · u, 0)`.
pub fn z_theta(theta: f64) -> Spinor<f64> {
    z_cs(&theta.cos(), &theta.sin())
}

/// `(c · 1, 0, s · u, 0)`; `z_θ` for `(c, s) = (cos θ, sin θ)`.
pub fn z_cs<T: Scalar>(c: &T, s: &T) -> Spinor<T> {
    Spinor::new(
        Octonion::real(c.clone()),
        Octonion::zero(),
        canonical_u::<T>().scale(s),
        Octonion::zero(),
    )
}

/// `z_{a,b} = (a · 1, 0, b · u, 0)`.
pub fn z_ab<T: Scalar>(a: &T, b: &T) -> Spinor<T> {
    z_cs(a, b)
}

/// `((a · 1, 0), (c · 1 + d · u, b · 1))`.
pub fn spin9_canonical<T: Scalar>(a: &T, b: &T, c: &T, d: &T) -> Spinor<T> {
    Spinor::new(
        Octonion::real(a.clone()),
        Octonion::zero(),
        &Octonion::real(c.clone()) + &canonical_u::<T>().scale(d),
        Octonion::real(b.clone()),
    )
}

/// Squares `(a², b², c², d²)` and the sign of `c` recovered from
/// `(q20, q11, q02, q22)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AbcdSquares<T> {
    pub a_sq: T,
    pub b_sq: T,
    pub c_sq: T,
    pub d_sq: T,
    pub c_negative: bool,
}

impl<T: Scalar> AbcdSquares<T> {
    /// Exact roots if every square is a perfect square in `T`.
    pub fn roots(&self) -> Option<[T; 4]> {
        let c = self.c_sq.sqrt()?;
        let c = if self.c_negative { -c } else { c };
        Some([self.a_sq.sqrt()?, self.b_sq.sqrt()?, c, self.d_sq.sqrt()?])
    }

    pub fn roots_f64(&self) -> [f64; 4] {
        let r = |x: &T| x.to_f64().max(0.0).sqrt();
        let c = r(&self.c_sq);
        [
            r(&self.a_sq),
            r(&self.b_sq),
            if self.c_negative { -c } else { c },
            r(&self.d_sq),
        ]
    }
}

fn nonnegative<T: Scalar>(x: T, what: &str) -> Result<T> {
    let scale = x.abs().to_f64();
    if x >= T::zero() {
        Ok(x)
    } else if x.negligible(scale.max(1.0)) {
        Ok(T::zero())
    } else {
        Err(Error::InconsistentInvariants(format!(
            "{what} = {} is negative",
            x.to_f64()
        )))
    }
}

/// Inverts `quads` and `q22` on the canonical element: `a² = q20`,
/// `c = q11 / a`, `b² = (q02 − q22/q20)/2`, `d² = (q02 + q22/q20)/2 − c²`.
pub fn recover_abcd_squares<T: Scalar>(q20: &T, q11: &T, q02: &T, q22: &T) -> Result<AbcdSquares<T>> {
    if *q20 <= T::zero() {
        return Err(Error::InconsistentInvariants("q20 must be positive".into()));
    }
    let ratio = q22.clone() / q20.clone();
    let c_sq = q11.square() / q20.clone();
    let b_sq = nonnegative((q02.clone() - ratio.clone()) * T::half(), "b²")?;
    let d_sq = nonnegative((q02.clone() + ratio) * T::half() - c_sq.clone(), "d²")?;
    Ok(AbcdSquares {
        a_sq: q20.clone(),
        b_sq,
        c_sq,
        d_sq,
        c_negative: *q11 < T::zero(),
    })
}

/// As [`recover_abcd_squares`], returning the roots; exact mode requires
/// every root to be rational.
pub fn recover_abcd<T: Scalar>(q20: &T, q11: &T, q02: &T, q22: &T) -> Result<[T; 4]> {
    recover_abcd_squares(q20, q11, q02, q22)?
        .roots()
        .ok_or_else(|| Error::Constraint("a, b, c, d are irrational; use recover_abcd_squares".into()))
}

/// Invariant readout of a spinor's orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitLabel {
    pub family: Family,
    pub invariants: Vec<(&'static str, Value)>,
    pub params: Vec<(&'static str, Value)>,
    pub orbit: Option<&'static str>,
}

impl OrbitLabel {
    pub fn get(&self, key: &str) -> Option<&Value> {
        self.invariants
            .iter()
            .chain(&self.params)
            .find(|(k, _)| *k == key)
            .map(|(_, v)| v)
    }

    /// A flat object of invariants, canonical parameters and the orbit name.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, v) in self.invariants.iter().chain(&self.params) {
            m.insert(k.to_string(), v.clone());
        }
        if let Some(o) = self.orbit {
            m.insert("orbit".into(), Value::from(o));
        }
        Value::Object(m)
    }
}

fn f64_json(x: f64) -> Value {
    number_json(&x)
}

fn is_zero_snapped<T: Scalar>(x: &T, scale: f64) -> bool {
    match T::MODE {
        crate::scalar::Mode::Exact => x.is_zero(),
        crate::scalar::Mode::Float => x.to_f64().abs() <= SNAP_TOLERANCE * scale.max(f64::MIN_POSITIVE),
    }
}

fn requires_pair<T: Scalar>(z: &Spinor<T>, family: Family) -> Result<()> {
    if z.x2.is_zero() && z.y2.is_zero() {
        Ok(())
    } else {
        Err(Error::Constraint(format!(
            "{family} acts on O ⊕ O; x2 and y2 must be zero"
        )))
    }
}

/// Reads the orbit invariants of `z`; never searches for group elements.
pub fn classify<T: Scalar>(family: Family, z: &Spinor<T>) -> Result<OrbitLabel> {
    let mut label = OrbitLabel {
        family,
        invariants: Vec::new(),
        params: Vec::new(),
        orbit: None,
    };
    match family {
        Family::Spin8 => {
            requires_pair(z, family)?;
            let (q1, q2) = q_pair(z);
            let (a, b) = (q1.to_f64().sqrt(), q2.to_f64().sqrt());
            label.orbit = Some(if q1.is_zero() && q2.is_zero() {
                "origin"
            } else {
                "generic"
            });
            label.invariants = vec![("q1", number_json(&q1)), ("q2", number_json(&q2))];
            label.params = vec![
                ("a", q1.sqrt().map_or(f64_json(a), |r| number_json(&r))),
                ("b", q2.sqrt().map_or(f64_json(b), |r| number_json(&r))),
            ];
        }
        Family::Spin9 => {
            let (q20, q11, q02) = quads(z);
            let q22v = q22(z);
            label.invariants = vec![
                ("q20", number_json(&q20)),
                ("q11", number_json(&q11)),
                ("q02", number_json(&q02)),
                ("q22", number_json(&q22v)),
            ];
            let scale = q20.to_f64().abs().max(q02.to_f64().abs());
            let values: [Value; 4] = if !is_zero_snapped(&q20, scale.max(1.0)) {
                let sq = recover_abcd_squares(&q20, &q11, &q02, &q22v)?;
                label.orbit = Some("generic");
                match sq.roots() {
                    Some(r) => r.map(|x| number_json(&x)),
                    None => sq.roots_f64().map(f64_json),
                }
            } else if !is_zero_snapped(&q02, 1.0) {
                // v1 = 0: the orbit of v2 is fixed by its norm alone.
                label.orbit = Some("generic");
                let b = q02.sqrt().map_or(f64_json(q02.to_f64().sqrt()), |r| number_json(&r));
                [Value::from(0), b, Value::from(0), Value::from(0)]
            } else {
                label.orbit = Some("origin");
                [0, 0, 0, 0].map(Value::from)
            };
            let [a, b, c, d] = values;
            label.params = vec![("a", a), ("b", b), ("c", c), ("d", d)];
        }
        Family::Spin10 => {
            let qv = q(z);
            let pv = p_quartic(z);
            label.invariants = vec![("q", number_json(&qv)), ("p", number_json(&pv))];
            let qf = qv.to_f64();
            if is_zero_snapped(&qv, 1.0) {
                label.orbit = Some("origin");
            } else {
                let quarter_q2 = qv.square() * T::from_ratio(1, 4);
                let scale = qf * qf;
                let (theta, orbit) = if is_zero_snapped(&pv, scale) {
                    (0.0, "M")
                } else if is_zero_snapped(&(pv.clone() - quarter_q2), scale) {
                    (std::f64::consts::FRAC_PI_4, "M*")
                } else {
                    let s = (2.0 * pv.to_f64().max(0.0).sqrt() / qf).clamp(-1.0, 1.0);
                    (0.5 * s.asin(), "generic")
                };
                label.params = vec![("theta", f64_json(theta))];
                label.orbit = Some(orbit);
            }
        }
        Family::Spin101 => {
            let pv = p_quartic(z);
            label.invariants = vec![("p", number_json(&pv))];
            let scale = q(z).to_f64().powi(2);
            label.orbit = Some(if z.is_zero() {
                "origin"
            } else if is_zero_snapped(&pv, scale) {
                "null-cone"
            } else {
                "generic"
            });
        }
        Family::Spin102 | Family::Spin91 => {
            return Err(Error::Constraint(format!(
                "no orbit classification is defined for {family}"
            )));
        }
    }
    Ok(label)
}

/// The stabilizer subalgebra `{Σ c_i A_i : Σ c_i A_i z = 0}` of a spinor.
#[derive(Clone, Debug)]
pub struct Stabilizer<T> {
    pub family: Family,
    pub coefficients: Vec<Vec<T>>,
    pub matrices: Vec<Matrix<T>>,
}

impl<T: Scalar> Stabilizer<T> {
    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    /// Largest squared residual of `[S_i, S_j]` against the stabilizer span.
    pub fn closure_residual(&self) -> T {
        if self.matrices.is_empty() {
            return T::zero();
        }
        let span = SpanBasis::from_matrices(&self.matrices);
        let mut worst = T::zero();
        for i in 0..self.matrices.len() {
            for j in i + 1..self.matrices.len() {
                let b = bracket(&self.matrices[i], &self.matrices[j]).expect("square matrices");
                let r = span.residual_norm_sq(b.entries());
                if r > worst {
                    worst = r;
                }
            }
        }
        worst
    }

    pub fn is_closed(&self) -> bool {
        if self.matrices.is_empty() {
            return true;
        }
        let span = SpanBasis::from_matrices(&self.matrices);
        (0..self.matrices.len()).all(|i| {
            (i + 1..self.matrices.len()).all(|j| {
                let b = bracket(&self.matrices[i], &self.matrices[j]).expect("square matrices");
                span.contains(b.entries())
            })
        })
    }

    /// Gram matrix of `tr(A B)` on the stabilizer basis.
    pub fn trace_form(&self) -> Matrix<T> {
        let n = self.matrices.len();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let t = (&self.matrices[i] * &self.matrices[j]).trace();
                g[(i, j)] = t.clone();
                g[(j, i)] = t;
            }
        }
        g
    }

    pub fn has_negative_definite_trace_form(&self) -> bool {
        is_negative_definite(&self.trace_form())
    }
}

/// Stabilizer of `z` in a family. Families on `O ⊕ O` act on `(x1, y1)`
/// when `x2 = y2 = 0`, and diagonally on `O⁴` otherwise.
pub fn stabilizer<T: Scalar>(basis: &FamilyBasis<T>, z: &Spinor<T>) -> Result<Stabilizer<T>> {
    let size = basis.family.matrix_size();
    let v = if size == 16 && z.x2.is_zero() && z.y2.is_zero() {
        z.pair_coords()
    } else {
        z.coords()
    };
    let gens: Vec<Matrix<T>> = basis
        .elements
        .iter()
        .map(|e| e.matrix_on(v.len()))
        .collect::<Result<_>>()?;
    let coefficients = nullspace_basis(&gens, &v)?;
    let matrices = coefficients
        .iter()
        .map(|c| {
            let mut m = Matrix::zeros(size, size);
            for (ci, e) in c.iter().zip(&basis.elements) {
                if !ci.is_zero() {
                    m = &m + &e.matrix.scale(ci);
                }
            }
            m
        })
        .collect();
    Ok(Stabilizer {
        family: basis.family,
        coefficients,
        matrices,
    })
}

pub fn stabilizer_dim<T: Scalar>(basis: &FamilyBasis<T>, z: &Spinor<T>) -> Result<usize> {
    Ok(stabilizer(basis, z)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    #[test]
    fn abcd_from_unit() {
        assert_eq!(
            recover_abcd(&q(1), &q(0), &q(0), &q(0)).unwrap(),
            [q(1), q(0), q(0), q(0)]
        );
        assert_eq!(
            recover_abcd(&q(4), &q(2), &q(3), &q(4)).unwrap(),
            [q(2), q(1), q(1), q(1)]
        );
    }

    #[test]
    fn abcd_rejects_unrealizable() {
        assert!(matches!(
            recover_abcd(&q(1), &q(0), &q(0), &q(5)),
            Err(Error::InconsistentInvariants(_))
        ));
        assert!(recover_abcd(&q(0), &q(0), &q(1), &q(0)).is_err());
    }

    #[test]
    fn spin10_endpoints() {
        let z0 = z_cs(&q(1), &q(0));
        let l = classify(Family::Spin10, &z0).unwrap();
        assert_eq!(
            l.to_json(),
            serde_json::json!({"q": 1, "p": 0, "theta": 0, "orbit": "M"})
        );
        let zq = z_cs(&q(1), &q(1));
        assert_eq!(classify(Family::Spin10, &zq).unwrap().orbit, Some("M*"));
        let l = classify(Family::Spin10, &z_theta(0.3)).unwrap();
        assert_eq!(l.orbit, Some("generic"));
        assert!((l.get("theta").unwrap().as_f64().unwrap() - 0.3).abs() < 1e-12);
    }

    #[test]
    fn unsupported_family() {
        assert!(classify(Family::Spin102, &z_cs(&q(1), &q(0))).is_err());
    }
}
