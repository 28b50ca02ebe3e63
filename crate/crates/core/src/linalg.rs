//! Row reduction, spans, nullspaces and the few numerical routines the
//! algebra code needs.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{max_magnitude, Mode, Scalar};

/// Singular values below this fraction of the largest count as zero.
pub const FLOAT_RANK_THRESHOLD: f64 = 1e-8;

/// Reduces `rows` (each of length `ncols`) to reduced row echelon form in
/// place and returns the pivot column of each leading row.
pub fn rref_rows<T: Scalar>(rows: &mut [Vec<T>], ncols: usize) -> Vec<usize> {
    let scale = max_magnitude(rows.iter().flatten()).to_f64();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let mut best: Option<(usize, f64)> = None;
        for (i, row) in rows.iter().enumerate().skip(r) {
            if row[c].negligible(scale) {
                continue;
            }
            let mag = row[c].to_f64().abs();
            match T::MODE {
                Mode::Exact => {
                    best = Some((i, mag));
                    break;
                }
                Mode::Float => {
                    if best.is_none_or(|(_, m)| mag > m) {
                        best = Some((i, mag));
                    }
                }
            }
        }
        let Some((p, _)) = best else {
            for row in rows.iter_mut().skip(r) {
                row[c] = T::zero();
            }
            continue;
        };
        rows.swap(r, p);

        let inv = T::one() / rows[r][c].clone();
        let mut pivot_nz: Vec<(usize, T)> = Vec::new();
        for (j, x) in rows[r].iter_mut().enumerate() {
            if !x.is_zero() {
                *x *= inv.clone();
                pivot_nz.push((j, x.clone()));
            }
        }
        rows[r][c] = T::one();

        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (j, pv) in &pivot_nz {
                let delta = f.clone() * pv.clone();
                row[*j] -= delta;
            }
            row[c] = T::zero();
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn matrix_rows<T: Scalar>(m: &Matrix<T>) -> Vec<Vec<T>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Rank by row reduction (exact in exact mode).
pub fn rank<T: Scalar>(m: &Matrix<T>) -> usize {
    let mut rows = matrix_rows(m);
    rref_rows(&mut rows, m.cols()).len()
}

/// Nullspace of `m` read off from its reduced row echelon form.
pub fn rref_nullspace<T: Scalar>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let mut rows = matrix_rows(m);
    let pivots = rref_rows(&mut rows, m.cols());
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![T::zero(); m.cols()];
            v[f] = T::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -rows[k][f].clone();
            }
            v
        })
        .collect()
}

/// The unique solution of `a x = b`.
pub fn solve_unique<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Result<Vec<T>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            op: "solve",
            left: a.shape(),
            right: (b.len(), 1),
        });
    }
    let n = a.cols();
    let mut rows: Vec<Vec<T>> = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let pivots = rref_rows(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return Err(Error::Inconsistent);
    }
    if pivots.len() < n {
        return Err(Error::NotUnique {
            rank: pivots.len(),
            unknowns: n,
        });
    }
    Ok(rows[..n].iter().map(|r| r[n].clone()).collect())
}

fn to_dmatrix(m: &Matrix<f64>) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.entries())
}

fn singular_values(m: &Matrix<f64>) -> Vec<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    to_dmatrix(m).singular_values().iter().copied().collect()
}

/// Rank counting singular values above `threshold × σ_max`.
pub fn numerical_rank(m: &Matrix<f64>, threshold: f64) -> usize {
    let sv = singular_values(m);
    let max = sv.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > threshold * max).count()
}

/// Nullspace from the right singular vectors whose singular values fall
/// below `threshold × σ_max`.
pub fn svd_nullspace(m: &Matrix<f64>, threshold: f64) -> Vec<Vec<f64>> {
    let n = m.cols();
    if n == 0 {
        return Vec::new();
    }
    // Pad to at least square so the SVD returns a full set of right vectors.
    let mut dm = to_dmatrix(m);
    if dm.nrows() < n {
        dm = dm.resize_vertically(n, 0.0);
    }
    let svd = dm.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| max == 0.0 || s <= threshold * max)
        .map(|(i, _)| v_t.row(i).iter().copied().collect())
        .collect()
}

/// Euclidean norm of `x − B c` for the least-squares `c`.
pub fn least_squares_residual(x: &[f64], basis: &[Vec<f64>]) -> f64 {
    let xv = DVector::from_column_slice(x);
    if basis.is_empty() {
        return xv.norm();
    }
    let b = DMatrix::from_fn(x.len(), basis.len(), |i, j| basis[j][i]);
    let svd = b.clone().svd(true, true);
    let max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let c = svd
        .solve(&xv, FLOAT_RANK_THRESHOLD * max.max(f64::MIN_POSITIVE))
        .expect("singular vectors were computed");
    (b * c - xv).norm()
}

#[derive(Clone, Debug)]
struct ReducedRow<T> {
    pivot: usize,
    entries: Vec<(usize, T)>,
    combo: Vec<T>,
}

/// Row-reduced span of a list of vectors. Supports membership tests and
/// coordinates with respect to the original (independent) vectors.
#[derive(Clone, Debug)]
pub struct SpanBasis<T> {
    dim: usize,
    inputs: usize,
    rows: Vec<ReducedRow<T>>,
    scale: f64,
}

impl<T: Scalar> SpanBasis<T> {
    pub fn new(vectors: Vec<Vec<T>>, dim: usize) -> Self {
        let inputs = vectors.len();
        let scale = max_magnitude(vectors.iter().flatten()).to_f64();
        let mut rows: Vec<Vec<T>> = vectors
            .into_iter()
            .enumerate()
            .map(|(k, mut v)| {
                assert_eq!(v.len(), dim, "span vector length");
                v.extend((0..inputs).map(|j| if j == k { T::one() } else { T::zero() }));
                v
            })
            .collect();
        let pivots = rref_rows(&mut rows, dim + inputs);
        let rows = pivots
            .iter()
            .zip(rows)
            .take_while(|(&p, _)| p < dim)
            .map(|(&pivot, mut row)| {
                let combo = row.split_off(dim);
                let entries = row
                    .into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect();
                ReducedRow {
                    pivot,
                    entries,
                    combo,
                }
            })
            .collect();
        SpanBasis {
            dim,
            inputs,
            rows,
            scale,
        }
    }

    pub fn from_matrices(mats: &[Matrix<T>]) -> Self {
        let dim = mats.first().map_or(0, |m| m.rows() * m.cols());
        Self::new(mats.iter().map(|m| m.entries().to_vec()).collect(), dim)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_independent(&self) -> bool {
        self.rank() == self.inputs
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Splits `x` into a combination of the inputs and a remainder that is
    /// zero exactly when `x` lies in the span.
    pub fn decompose(&self, x: &[T]) -> (Vec<T>, Vec<T>) {
        assert_eq!(x.len(), self.dim, "span vector length");
        let mut rem = x.to_vec();
        let mut coeffs = vec![T::zero(); self.inputs];
        for row in &self.rows {
            let c = rem[row.pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (j, v) in &row.entries {
                let delta = c.clone() * v.clone();
                rem[*j] -= delta;
            }
            for (k, v) in row.combo.iter().enumerate() {
                if !v.is_zero() {
                    coeffs[k].add_mul(&c, v);
                }
            }
        }
        (coeffs, rem)
    }

    pub fn residual_norm_sq(&self, x: &[T]) -> T {
        let (_, rem) = self.decompose(x);
        let mut acc = T::zero();
        for r in &rem {
            acc.add_mul(r, r);
        }
        acc
    }

    pub fn contains(&self, x: &[T]) -> bool {
        let (_, rem) = self.decompose(x);
        let scale = self.scale.max(max_magnitude(x).to_f64());
        rem.iter().all(|r| r.negligible(scale))
    }

    /// Coordinates with respect to the input vectors, if `x` is in the span.
    pub fn coordinates(&self, x: &[T]) -> Option<Vec<T>> {
        let scale = self.scale.max(max_magnitude(x).to_f64());
        let (coeffs, rem) = self.decompose(x);
        rem.iter().all(|r| r.negligible(scale)).then_some(coeffs)
    }
}

/// Basis of `{c : Σ c_i (A_i v) = 0}`.
pub fn nullspace_basis<T: Scalar>(generators: &[Matrix<T>], v: &[T]) -> Result<Vec<Vec<T>>> {
    let first = generators.first().ok_or(Error::EmptyGenerators)?;
    let n = first.rows();
    for g in generators {
        if !g.is_square() || g.rows() != n {
            return Err(Error::DimensionMismatch {
                op: "nullspace_basis",
                left: first.shape(),
                right: g.shape(),
            });
        }
    }
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            op: "nullspace_basis",
            left: first.shape(),
            right: (v.len(), 1),
        });
    }
    let images: Vec<Vec<T>> = generators.iter().map(|g| g.apply(v)).collect();
    let m = Matrix::from_fn(n, generators.len(), |i, j| images[j][i].clone());
    Ok(T::nullspace(&m))
}

/// Zero iff `x` lies in the span of `basis`. Exact mode returns the squared
/// norm of the row-reduction remainder; float mode the least-squares
/// residual norm.
pub fn span_residual<T: Scalar>(x: &Matrix<T>, basis: &[Matrix<T>]) -> Result<T> {
    for b in basis {
        if b.shape() != x.shape() {
            return Err(Error::DimensionMismatch {
                op: "span_residual",
                left: x.shape(),
                right: b.shape(),
            });
        }
    }
    let vecs: Vec<Vec<T>> = basis.iter().map(|b| b.entries().to_vec()).collect();
    Ok(T::span_residual(x.entries(), &vecs))
}

/// Monomial coefficients of the polynomial through `(nodes[i], values[i])`.
pub fn interpolate<T: Scalar>(nodes: &[T], values: &[T]) -> Vec<T> {
    assert_eq!(nodes.len(), values.len());
    let n = nodes.len();
    if n == 0 {
        return Vec::new();
    }
    let mut newton = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            newton[i] = (newton[i].clone() - newton[i - 1].clone())
                / (nodes[i].clone() - nodes[i - j].clone());
        }
    }
    let mut poly = vec![newton[n - 1].clone()];
    for k in (0..n - 1).rev() {
        let mut next = vec![T::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] += c.clone();
            next[i] -= nodes[k].clone() * c.clone();
        }
        next[0] += newton[k].clone();
        poly = next;
    }
    poly
}

/// Coefficients in `t` of each component of `f(z + t w)`, for `f` of total
/// degree at most `degree`, by sampling at `t = 0, 1, …, degree`.
pub fn poly_directional_coeffs_vec<T: Scalar>(
    f: impl Fn(&[T]) -> Vec<T>,
    z: &[T],
    w: &[T],
    degree: usize,
) -> Vec<Vec<T>> {
    assert_eq!(z.len(), w.len());
    let nodes: Vec<T> = (0..=degree).map(|t| T::from_i64(t as i64)).collect();
    let samples: Vec<Vec<T>> = nodes
        .iter()
        .map(|t| {
            let p: Vec<T> = z
                .iter()
                .zip(w)
                .map(|(a, b)| a.clone() + t.clone() * b.clone())
                .collect();
            f(&p)
        })
        .collect();
    let width = samples[0].len();
    let per_component: Vec<Vec<T>> = (0..width)
        .map(|c| {
            let vals: Vec<T> = samples.iter().map(|s| s[c].clone()).collect();
            interpolate(&nodes, &vals)
        })
        .collect();
    (0..=degree)
        .map(|k| per_component.iter().map(|p| p[k].clone()).collect())
        .collect()
}

/// Scalar form of [`poly_directional_coeffs_vec`]; entry 1 is the
/// directional derivative of `f` at `z` along `w`.
pub fn poly_directional_coeffs<T: Scalar>(
    f: impl Fn(&[T]) -> T,
    z: &[T],
    w: &[T],
    degree: usize,
) -> Vec<T> {
    poly_directional_coeffs_vec(|p| vec![f(p)], z, w, degree)
        .into_iter()
        .map(|mut c| c.swap_remove(0))
        .collect()
}

/// True iff the symmetric matrix is negative definite, by checking that
/// every pivot of unpivoted symmetric elimination is negative.
pub fn is_negative_definite<T: Scalar>(m: &Matrix<T>) -> bool {
    let n = m.rows();
    let mut rows = matrix_rows(m);
    let scale = m.max_abs().to_f64();
    for k in 0..n {
        let pivot = rows[k][k].clone();
        if pivot.negligible(scale) || pivot > T::zero() {
            return false;
        }
        for i in k + 1..n {
            let f = rows[i][k].clone() / pivot.clone();
            if f.is_zero() {
                continue;
            }
            let (top, bottom) = rows.split_at_mut(i);
            for (x, y) in bottom[0][k..].iter_mut().zip(&top[k][k..]) {
                *x -= f.clone() * y.clone();
            }
        }
    }
    true
}

fn one_norm(m: &Matrix<f64>) -> f64 {
    (0..m.cols())
        .map(|j| (0..m.rows()).map(|i| m[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring around a Taylor series.
/// The scaled matrix has 1-norm at most 1/2, so the truncated tail is below
/// unit roundoff.
pub fn expm(a: &Matrix<f64>) -> Matrix<f64> {
    assert!(a.is_square(), "expm of a non-square matrix");
    let n = a.rows();
    let norm = one_norm(a);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a.scale(&0.5f64.powi(squarings));
    let mut result = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=40 {
        term = (&term * &scaled).scale(&(1.0 / k as f64));
        result = &result + &term;
        if one_norm(&term) <= 1e-17 * one_norm(&result) {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn identity_has_trivial_nullspace() {
        let v = vec![q(1, 1), q(-2, 3), q(0, 1)];
        let basis = nullspace_basis(&[Matrix::identity(3)], &v).unwrap();
        assert!(basis.is_empty());
    }

    #[test]
    fn annihilating_generator_gives_one_vector() {
        let a = Matrix::from_fn(2, 2, |i, j| if i == 0 && j == 1 { q(1, 1) } else { q(0, 1) });
        let v = vec![q(5, 1), q(0, 1)];
        assert_eq!(nullspace_basis(&[a], &v).unwrap().len(), 1);
    }

    #[test]
    fn empty_generators_rejected() {
        let v: Vec<Rational> = vec![q(1, 1)];
        assert_eq!(nullspace_basis(&[], &v), Err(Error::EmptyGenerators));
    }

    #[test]
    fn nullspace_vectors_are_exact_kernels() {
        let m = Matrix::from_fn(3, 5, |i, j| q((i * 5 + j) as i64 % 4 - 1, 1 + (j as i64 % 2)));
        let null = rref_nullspace(&m);
        assert_eq!(null.len(), 5 - rank(&m));
        for v in &null {
            assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn float_nullspace_matches_exact_dimension() {
        let m = Matrix::from_fn(3, 5, |i, j| ((i * 5 + j) % 4) as f64 - 1.0);
        let null = svd_nullspace(&m, FLOAT_RANK_THRESHOLD);
        let exact = rref_nullspace(&m.map(|x| Rational::from_i64(*x as i64)));
        assert_eq!(null.len(), exact.len());
        for v in &null {
            assert!(m.apply(v).iter().all(|x| x.abs() < 1e-12));
        }
    }

    #[test]
    fn span_residual_cases() {
        let b0 = Matrix::from_fn(2, 2, |i, j| q((i + j) as i64, 1));
        let b1 = Matrix::from_fn(2, 2, |i, j| q(i as i64 - j as i64, 2));
        let basis = vec![b0.clone(), b1.clone()];
        assert!(span_residual(&b0, &basis).unwrap().is_zero());
        assert!(span_residual(&Matrix::zeros(2, 2), &basis).unwrap().is_zero());
        assert!(!span_residual(&Matrix::identity(2), &basis).unwrap().is_zero());

        let fb: Vec<Matrix<f64>> = basis.iter().map(|m| m.map(Scalar::to_f64)).collect();
        let x = &fb[0].scale(&2.0) - &fb[1];
        assert!(span_residual(&x, &fb).unwrap() < 1e-12);
        assert!(span_residual(&Matrix::identity(2), &fb).unwrap() > 0.1);
    }

    #[test]
    fn span_coordinates_recover_combination() {
        let vs = vec![
            vec![q(1, 1), q(2, 1), q(0, 1), q(1, 1)],
            vec![q(0, 1), q(1, 1), q(1, 1), q(-1, 1)],
            vec![q(3, 1), q(0, 1), q(0, 1), q(1, 2)],
        ];
        let span = SpanBasis::new(vs.clone(), 4);
        assert!(span.is_independent());
        let c = [q(2, 3), q(-1, 1), q(5, 7)];
        let x: Vec<Rational> = (0..4)
            .map(|i| (0..3).fold(q(0, 1), |acc, k| acc + c[k].clone() * vs[k][i].clone()))
            .collect();
        assert_eq!(span.coordinates(&x).unwrap(), c.to_vec());
        assert!(span.coordinates(&[q(0, 1), q(0, 1), q(0, 1), q(1, 1)]).is_none());
    }

    #[test]
    fn solve_unique_reports_rank() {
        let a = Matrix::from_fn(3, 2, |i, j| q((i + j) as i64, 1));
        assert_eq!(
            solve_unique(&a, &[q(1, 1), q(2, 1), q(3, 1)]).unwrap(),
            vec![q(0, 1), q(1, 1)]
        );
        assert_eq!(
            solve_unique(&a, &[q(1, 1), q(0, 1), q(3, 1)]),
            Err(Error::Inconsistent)
        );
        let singular = Matrix::from_fn(2, 2, |_, _| q(1, 1));
        assert!(matches!(
            solve_unique(&singular, &[q(1, 1), q(1, 1)]),
            Err(Error::NotUnique { rank: 1, .. })
        ));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        // 3 - t + 2 t^3 at t = 0..3
        let nodes: Vec<Rational> = (0..4).map(|t| q(t, 1)).collect();
        let vals: Vec<Rational> = nodes
            .iter()
            .map(|t| q(3, 1) - t.clone() + q(2, 1) * t.clone() * t.clone() * t.clone())
            .collect();
        assert_eq!(interpolate(&nodes, &vals), vec![q(3, 1), q(-1, 1), q(0, 1), q(2, 1)]);
    }

    #[test]
    fn negative_definite_detection() {
        let m = Matrix::from_fn(2, 2, |i, j| if i == j { q(-2, 1) } else { q(1, 1) });
        assert!(is_negative_definite(&m));
        let m = Matrix::from_fn(2, 2, |i, j| if i == j { q(-1, 1) } else { q(2, 1) });
        assert!(!is_negative_definite(&m));
    }

    #[test]
    fn expm_of_zero_and_rotation() {
        assert_eq!(expm(&Matrix::zeros(3, 3)), Matrix::identity(3));
        let t = 2.5f64;
        let gen = Matrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => -t,
            (1, 0) => t,
            _ => 0.0,
        });
        let r = expm(&gen);
        assert!((r[(0, 0)] - t.cos()).abs() < 1e-13);
        assert!((r[(1, 0)] - t.sin()).abs() < 1e-13);
    }

    #[test]
    fn expm_agrees_with_nalgebra() {
        let m = Matrix::from_fn(5, 5, |i, j| ((3 * i + 7 * j) % 5) as f64 / 3.0 - 0.6);
        let ours = expm(&m);
        let theirs = DMatrix::from_row_slice(5, 5, m.entries()).exp();
        for i in 0..5 {
            for j in 0..5 {
                let d = (ours[(i, j)] - theirs[(i, j)]).abs();
                assert!(d < 1e-11 * theirs[(i, j)].abs().max(1.0), "{d}");
            }
        }
    }
}
