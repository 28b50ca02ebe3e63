//! Seeded random inputs with small numerators and denominators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::invariants::Spinor;
use crate::octonion::Octonion;
use crate::scalar::Scalar;

pub const MAX_NUMERATOR: i64 = 9;
pub const MAX_DENOMINATOR: i64 = 4;

#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// `n / d` with `|n| ≤ 9`, `1 ≤ d ≤ 4`.
    pub fn scalar<T: Scalar>(&mut self) -> T {
        let n = self.rng.gen_range(-MAX_NUMERATOR..=MAX_NUMERATOR);
        let d = self.rng.gen_range(1..=MAX_DENOMINATOR);
        T::from_ratio(n, d)
    }

    pub fn positive<T: Scalar>(&mut self) -> T {
        let n = self.rng.gen_range(1..=MAX_NUMERATOR);
        let d = self.rng.gen_range(1..=MAX_DENOMINATOR);
        T::from_ratio(n, d)
    }

    pub fn octonion<T: Scalar>(&mut self) -> Octonion<T> {
        Octonion::new(std::array::from_fn(|_| self.scalar()))
    }

    pub fn nonzero_octonion<T: Scalar>(&mut self) -> Octonion<T> {
        loop {
            let x = self.octonion();
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// A point of the unit sphere in `R^n`, `n ≥ 2`, with rational
    /// coordinates: `(1 − |t|², 2t) / (1 + |t|²)` for rational `t ∈ R^{n−1}`.
    pub fn unit_vector<T: Scalar>(&mut self, n: usize) -> Vec<T> {
        let t: Vec<T> = (1..n).map(|_| self.scalar()).collect();
        let s = t.iter().fold(T::zero(), |acc, x| acc + x.square());
        let den = T::one() + s.clone();
        let two = T::from_i64(2);
        std::iter::once((T::one() - s) / den.clone())
            .chain(t.into_iter().map(|x| two.clone() * x / den.clone()))
            .collect()
    }

    pub fn unit_octonion<T: Scalar>(&mut self) -> Octonion<T> {
        Octonion::from_slice(&self.unit_vector(8))
    }

    pub fn spinor<T: Scalar>(&mut self) -> Spinor<T> {
        Spinor::new(self.octonion(), self.octonion(), self.octonion(), self.octonion())
    }

    /// A point of `O²`.
    pub fn pair<T: Scalar>(&mut self) -> Spinor<T> {
        Spinor::pair(self.octonion(), self.octonion())
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// A float point of the unit sphere in `O⁴`.
    pub fn unit_float_spinor(&mut self) -> Spinor<f64> {
        loop {
            let c: Vec<f64> = (0..32).map(|_| self.uniform(-1.0, 1.0)).collect();
            let n = c.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-3 {
                let unit: Vec<f64> = c.iter().map(|x| x / n).collect();
                return Spinor::from_coords(&unit).expect("32 coordinates");
            }
        }
    }
}
