//! Randomized and exhaustive checks run by `verify`.

use std::collections::HashMap;

use octospin::families::{
    containment_residual, g6_element, m9, minkowski_gram, r_generator, r_prime_generator, rho101,
    rho9, spin101_from_brackets, spin102_from_brackets, t_generator,
};
use octospin::invariants::{
    directional_derivative, directional_derivative_vec, minkowski, omega_gram, p_from_quads,
    p_quartic, p_wedge, q, q22, quads, sigma101, sigma9,
};
use octospin::matrix::bracket;
use octospin::octonion::conjugation_matrix;
use octospin::orbits::{recover_abcd_squares, spin9_canonical};
use octospin::sampling::Sampler;
use octospin::scalar::max_magnitude;
use octospin::spin8::{clifford_m8, sigma_generator, spin8_basis, TrialityTriple};
use octospin::{Family, FamilyBasis, LieElement, Matrix, Mode, Octonion, Result, Scalar, Spinor};

pub const FLOAT_TOLERANCE: f64 = 1e-9;

pub struct SuiteReport {
    pub name: &'static str,
    pub topic: &'static str,
    pub trials: usize,
    pub max_residual: f64,
    pub passed: bool,
    pub error: Option<String>,
}

type Run<T> = fn(&mut Ctx<T>, &mut Sampler, usize) -> Result<f64>;

pub struct Suite<T> {
    pub name: &'static str,
    pub topic: &'static str,
    pub family: Option<Family>,
    /// Exhaustive suites ignore `--trials`.
    randomized: bool,
    run: Run<T>,
}

pub struct Ctx<T> {
    bases: HashMap<Family, FamilyBasis<T>>,
}

impl<T: Scalar> Ctx<T> {
    fn new() -> Self {
        Ctx {
            bases: HashMap::new(),
        }
    }

    fn basis(&mut self, f: Family) -> &FamilyBasis<T> {
        self.bases.entry(f).or_insert_with(|| FamilyBasis::new(f))
    }
}

fn mag<T: Scalar>(xs: &[T]) -> f64 {
    max_magnitude(xs).to_f64()
}

/// Keeps exact nonzero residuals from rounding to zero.
fn nonzero_floor<T: Scalar>(d: &[T], r: f64) -> f64 {
    if r == 0.0 && d.iter().any(|x| !x.is_zero()) {
        f64::MIN_POSITIVE
    } else {
        r
    }
}

/// Largest entry of `a − b` relative to the larger of the two.
fn rel<T: Scalar>(a: &[T], b: &[T]) -> f64 {
    let d: Vec<T> = a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect();
    let r = mag(&d) / 1f64.max(mag(a)).max(mag(b));
    nonzero_floor(&d, r)
}

fn rel_m<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> f64 {
    rel(a.entries(), b.entries())
}

fn rel_s<T: Scalar>(a: &T, b: &T) -> f64 {
    rel(std::slice::from_ref(a), std::slice::from_ref(b))
}

/// `d` should vanish; `scale` bounds the size of the terms that cancel.
fn vanish<T: Scalar>(d: &[T], scale: f64) -> f64 {
    nonzero_floor(d, mag(d) / scale.max(1.0))
}

fn norm<T: Scalar>(v: &[T]) -> f64 {
    v.iter().map(|x| x.to_f64().powi(2)).sum::<f64>().sqrt()
}

fn worst(acc: &mut f64, r: f64) {
    if r > *acc || r.is_nan() {
        *acc = r;
    }
}

fn passes<T: Scalar>(r: f64) -> bool {
    match T::MODE {
        Mode::Exact => r == 0.0,
        Mode::Float => r <= FLOAT_TOLERANCE,
    }
}

/// A few random basis elements with random coefficients.
fn random_element<T: Scalar>(b: &FamilyBasis<T>, s: &mut Sampler) -> Result<LieElement<T>> {
    let mut c = vec![T::zero(); b.dim()];
    for _ in 0..3 {
        c[s.index(b.dim())] = s.scalar();
    }
    b.element_from_coords(&c)
}

/// Spinor in the coordinates the family acts on.
fn random_input<T: Scalar>(f: Family, s: &mut Sampler) -> (Spinor<T>, Vec<T>) {
    if f.matrix_size() == 16 {
        let z = s.pair();
        let v = z.pair_coords();
        (z, v)
    } else {
        let z = s.spinor();
        let v = z.coords();
        (z, v)
    }
}

/// Derivative of `f` (degree `deg`) at `z` along `A z`.
fn invariance_residual<T: Scalar>(
    f: fn(&Spinor<T>) -> T,
    deg: i32,
    a: &LieElement<T>,
    z: &Spinor<T>,
    v: &[T],
) -> Result<f64> {
    let w = a.act(v)?;
    let d = directional_derivative(f, z, &w, deg as usize);
    Ok(vanish(&[d], (norm(v) + norm(&w)).powi(deg)))
}

fn octonion_moufang<T: Scalar>(_: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    let mut r = 0.0;
    for _ in 0..n {
        let (x, y, z): (Octonion<T>, Octonion<T>, Octonion<T>) = (s.octonion(), s.octonion(), s.octonion());
        let m = |a: &Octonion<T>, b: &Octonion<T>| a.mul(b);
        let pairs = [
            (m(&z, &m(&x, &m(&z, &y))), m(&m(&m(&z, &x), &z), &y)),
            (m(&x, &m(&z, &m(&y, &z))), m(&m(&m(&x, &z), &y), &z)),
            (m(&m(&z, &x), &m(&y, &z)), m(&m(&z, &m(&x, &y)), &z)),
        ];
        for (a, b) in pairs {
            worst(&mut r, rel(&a.coords, &b.coords));
        }
    }
    Ok(r)
}

fn octonion_composition<T: Scalar>(_: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    let mut r = 0.0;
    for _ in 0..n {
        let (x, y): (Octonion<T>, Octonion<T>) = (s.octonion(), s.octonion());
        let xy = x.mul(&y);
        worst(&mut r, rel_s(&xy.norm_sq(), &(x.norm_sq() * y.norm_sq())));
        worst(&mut r, rel(&xy.conj().coords, &y.conj().mul(&x.conj()).coords));
    }
    Ok(r)
}

fn octonion_conjugation<T: Scalar>(_: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    let c = conjugation_matrix::<T>();
    let mut r = 0.0;
    for _ in 0..n {
        let x: Octonion<T> = s.octonion();
        worst(&mut r, rel_m(&(&(&c * &x.left_matrix()) * &c), &x.conj().right_matrix()));
    }
    Ok(r)
}

fn spin8_clifford<T: Scalar>(_: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    let mut r = 0.0;
    for _ in 0..n {
        let x: Octonion<T> = s.octonion();
        let m = clifford_m8(&x);
        worst(&mut r, rel_m(&(&m * &m), &Matrix::scalar(16, -x.norm_sq())));
    }
    Ok(r)
}

fn random_h<T: Scalar>(s: &mut Sampler) -> Result<TrialityTriple<T>> {
    let mut g = TrialityTriple::identity();
    for _ in 0..5 {
        g = g.compose(&sigma_generator(&s.unit_octonion())?);
    }
    Ok(g)
}

fn spin8_triality<T: Scalar>(_: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    let mut r = 0.0;
    let id = Matrix::identity(8);
    for _ in 0..n {
        let g = random_h::<T>(s)?;
        worst(&mut r, g.h_residual().to_f64());
        for m in [&g.g1, &g.g2, &g.g3] {
            worst(&mut r, rel_m(&(&m.transpose() * m), &id));
        }
        let a2 = g.alpha()?.alpha()?;
        let b2 = g.beta()?.beta()?;
        let t3 = g.tau()?.tau()?.tau()?;
        for img in [a2, b2, t3] {
            for (p, q) in [(&img.g1, &g.g1), (&img.g2, &g.g2), (&img.g3, &g.g3)] {
                worst(&mut r, rel_m(p, q));
            }
        }
    }
    for z in TrialityTriple::<T>::center() {
        worst(&mut r, z.h_residual().to_f64());
    }
    Ok(r)
}

fn spin8_basis_triality<T: Scalar>(_: &mut Ctx<T>, _: &mut Sampler, _: usize) -> Result<f64> {
    let mut r = 0.0;
    for a in spin8_basis::<T>() {
        worst(&mut r, a.triality_residual().to_f64());
        for m in [&a.a1, &a.a2, &a.a3] {
            worst(&mut r, rel_m(&m.transpose(), &-m));
        }
    }
    Ok(r)
}

fn spin8_q_pair<T: Scalar>(_: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    let mut r = 0.0;
    for _ in 0..n {
        let g = random_h::<T>(s)?.spinor_action();
        let z: Spinor<T> = s.pair();
        let gz = Spinor::from_coords(&g.apply(&z.pair_coords()))?;
        worst(&mut r, rel_s(&z.x1.norm_sq(), &gz.x1.norm_sq()));
        worst(&mut r, rel_s(&z.y1.norm_sq(), &gz.y1.norm_sq()));
    }
    Ok(r)
}

fn closure<T: Scalar>(ctx: &mut Ctx<T>, f: Family) -> Result<f64> {
    let b = ctx.basis(f);
    if b.rank() != f.dim() {
        return Ok(f64::INFINITY);
    }
    let c = b.closure_residual();
    Ok(nonzero_floor(std::slice::from_ref(&c), c.to_f64()))
}

fn family_invariance<T: Scalar>(
    ctx: &mut Ctx<T>,
    s: &mut Sampler,
    n: usize,
    f: Family,
    poly: fn(&Spinor<T>) -> T,
    deg: i32,
) -> Result<f64> {
    let b = ctx.basis(f);
    let mut r = 0.0;
    for _ in 0..n {
        let a = random_element(b, s)?;
        let (z, v) = random_input(f, s);
        worst(&mut r, invariance_residual(poly, deg, &a, &z, &v)?);
    }
    Ok(r)
}

/// `ρ([A, B]) = [ρA, ρB]` for random `A, B`.
fn homomorphism<T: Scalar>(
    ctx: &mut Ctx<T>,
    s: &mut Sampler,
    n: usize,
    f: Family,
    rho: fn(&LieElement<T>) -> Result<Matrix<T>>,
) -> Result<f64> {
    let b = ctx.basis(f);
    let mut r = 0.0;
    for _ in 0..n {
        let (x, y) = (random_element(b, s)?, random_element(b, s)?);
        let br = b.element_from_matrix(&bracket(&x.matrix, &y.matrix)?)?;
        worst(&mut r, rel_m(&rho(&br)?, &bracket(&rho(&x)?, &rho(&y)?)?));
    }
    Ok(r)
}

fn spin9_closure<T: Scalar>(c: &mut Ctx<T>, _: &mut Sampler, _: usize) -> Result<f64> {
    closure(c, Family::Spin9)
}

fn spin9_clifford<T: Scalar>(_: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    let mut r = 0.0;
    for _ in 0..n {
        let x: Octonion<T> = s.octonion();
        let t: T = s.scalar();
        let m = m9(&t, &x);
        let expected = Matrix::scalar(32, -(t.square() + x.norm_sq()));
        worst(&mut r, rel_m(m.mul(&m).real_form(), &expected));
    }
    Ok(r)
}

fn spin9_rho<T: Scalar>(c: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    homomorphism(c, s, n, Family::Spin9, rho9)
}

fn spin9_sigma<T: Scalar>(ctx: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    let b = ctx.basis(Family::Spin9);
    let mut r = 0.0;
    for _ in 0..n {
        let a = random_element(b, s)?;
        let z: Spinor<T> = s.pair();
        let v = z.pair_coords();
        let w = a.act(&v)?;
        let d = directional_derivative_vec(|u| sigma9(&u.x1, &u.y1).to_vec(), &z, &w, 2);
        let expected = rho9(&a)?.apply(&sigma9(&z.x1, &z.y1).to_vec());
        let diff: Vec<T> = d.iter().zip(&expected).map(|(p, q)| p.clone() - q.clone()).collect();
        worst(&mut r, vanish(&diff, (norm(&v) + norm(&w)).powi(2)));
    }
    Ok(r)
}

fn spin9_q<T: Scalar>(c: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    family_invariance(c, s, n, Family::Spin9, q, 2)
}

fn spin9_quads<T: Scalar>(ctx: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    let b = ctx.basis(Family::Spin9);
    let mut r = 0.0;
    for _ in 0..n {
        let a = random_element(b, s)?;
        let z: Spinor<T> = s.spinor();
        let v = z.coords();
        for (poly, deg) in [
            ((|z| quads(z).0) as fn(&Spinor<T>) -> T, 2),
            (|z| quads(z).1, 2),
            (|z| quads(z).2, 2),
            (q22, 4),
        ] {
            worst(&mut r, invariance_residual(poly, deg, &a, &z, &v)?);
        }
    }
    Ok(r)
}

fn spin9_abcd<T: Scalar>(_: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    let mut r = 0.0;
    for _ in 0..n {
        let abcd: [T; 4] = std::array::from_fn(|_| s.positive());
        let z = spin9_canonical(&abcd[0], &abcd[1], &abcd[2], &abcd[3]);
        let (q20, q11, q02) = quads(&z);
        let sq = recover_abcd_squares(&q20, &q11, &q02, &q22(&z))?;
        let got = [sq.a_sq, sq.b_sq, sq.c_sq, sq.d_sq];
        let want: Vec<T> = abcd.iter().map(Scalar::square).collect();
        worst(&mut r, rel(&got, &want));
        if sq.c_negative {
            worst(&mut r, 1.0);
        }
    }
    Ok(r)
}

fn spin10_closure<T: Scalar>(c: &mut Ctx<T>, _: &mut Sampler, _: usize) -> Result<f64> {
    closure(c, Family::Spin10)
}

fn spin10_q<T: Scalar>(c: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    family_invariance(c, s, n, Family::Spin10, q, 2)
}

fn spin10_p<T: Scalar>(c: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    family_invariance(c, s, n, Family::Spin10, p_quartic, 4)
}

/// The group elements T, R, R′ and G6 preserve `p` (and T also `q`).
fn group_invariance<T: Scalar>(
    s: &mut Sampler,
    n: usize,
    gen: fn(&mut Sampler) -> Result<Matrix<T>>,
    also_q: bool,
) -> Result<f64> {
    let mut r = 0.0;
    for _ in 0..n {
        let g = gen(s)?;
        let z: Spinor<T> = s.spinor();
        let gz = Spinor::from_coords(&g.apply(&z.coords()))?;
        worst(&mut r, rel_s(&p_quartic(&z), &p_quartic(&gz)));
        if also_q {
            worst(&mut r, rel_s(&q(&z), &q(&gz)));
        }
    }
    Ok(r)
}

fn spin10_circle<T: Scalar>(_: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    group_invariance::<T>(
        s,
        n,
        |s| {
            let cs = s.unit_vector::<T>(2);
            t_generator(&cs[0], &cs[1])
        },
        true,
    )
}

fn spin101_closure<T: Scalar>(c: &mut Ctx<T>, _: &mut Sampler, _: usize) -> Result<f64> {
    closure(c, Family::Spin101)
}

fn from_brackets<T: Scalar>(ctx: &mut Ctx<T>, f: Family, built: Vec<Matrix<T>>) -> Result<f64> {
    let template = ctx.basis(f).matrices();
    let mut r = 0.0;
    for c in [
        containment_residual(&built, &template),
        containment_residual(&template, &built),
    ] {
        worst(&mut r, nonzero_floor(std::slice::from_ref(&c), c.to_f64()));
    }
    Ok(r)
}

fn spin101_brackets<T: Scalar>(c: &mut Ctx<T>, _: &mut Sampler, _: usize) -> Result<f64> {
    from_brackets(c, Family::Spin101, spin101_from_brackets())
}

fn spin101_rho<T: Scalar>(c: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    homomorphism(c, s, n, Family::Spin101, rho101)
}

fn spin101_metric<T: Scalar>(ctx: &mut Ctx<T>, _: &mut Sampler, _: usize) -> Result<f64> {
    let g = minkowski_gram::<T>();
    let mut r = 0.0;
    for a in &ctx.basis(Family::Spin101).elements {
        let m = rho101(a)?;
        let lhs = &m.transpose() * &g;
        worst(&mut r, rel_m(&lhs, &-&(&g * &m)));
    }
    Ok(r)
}

fn spin101_sigma<T: Scalar>(ctx: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    let b = ctx.basis(Family::Spin101);
    let mut r = 0.0;
    for _ in 0..n {
        let a = random_element(b, s)?;
        let z: Spinor<T> = s.spinor();
        let v = z.coords();
        let w = a.act(&v)?;
        let d = directional_derivative_vec(|u| sigma101(u).to_vec(), &z, &w, 2);
        let expected = rho101(&a)?.apply(&sigma101(&z).to_vec());
        let diff: Vec<T> = d.iter().zip(&expected).map(|(p, q)| p.clone() - q.clone()).collect();
        worst(&mut r, vanish(&diff, (norm(&v) + norm(&w)).powi(2)));
    }
    Ok(r)
}

fn spin101_p<T: Scalar>(c: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    family_invariance(c, s, n, Family::Spin101, p_quartic, 4)
}

fn spin101_minkowski<T: Scalar>(_: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    let mut r = 0.0;
    for _ in 0..n {
        let z: Spinor<T> = s.spinor();
        let v = sigma101(&z);
        let p = p_quartic(&z);
        worst(&mut r, rel_s(&p, &(minkowski(&v, &v) * T::from_ratio(-1, 4))));
        worst(&mut r, rel_s(&p, &p_from_quads(&z)));
        worst(&mut r, rel_s(&p, &p_wedge(&z)));
    }
    Ok(r)
}

fn spin101_scaling<T: Scalar>(_: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    group_invariance::<T>(s, n, |s| r_generator(&s.positive::<T>()), false)
}

fn spin102_closure<T: Scalar>(c: &mut Ctx<T>, _: &mut Sampler, _: usize) -> Result<f64> {
    closure(c, Family::Spin102)
}

fn spin102_brackets<T: Scalar>(c: &mut Ctx<T>, _: &mut Sampler, _: usize) -> Result<f64> {
    from_brackets(c, Family::Spin102, spin102_from_brackets())
}

fn spin102_p<T: Scalar>(c: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    family_invariance(c, s, n, Family::Spin102, p_quartic, 4)
}

fn spin102_omega<T: Scalar>(ctx: &mut Ctx<T>, _: &mut Sampler, _: usize) -> Result<f64> {
    let j = omega_gram::<T>();
    let mut r = 0.0;
    for a in &ctx.basis(Family::Spin102).elements {
        let m = &a.matrix;
        worst(&mut r, rel_m(&(&m.transpose() * &j), &-&(&j * m)));
    }
    Ok(r)
}

fn random_sl2<T: Scalar>(s: &mut Sampler, det: i64) -> [T; 4] {
    // [[a, b], [c, d]] with ad − bc = det and a ≠ 0
    let a = s.positive::<T>();
    let (b, c) = (s.scalar::<T>(), s.scalar::<T>());
    let d = (T::from_i64(det) + b.clone() * c.clone()) / a.clone();
    [a, b, c, d]
}

fn spin102_groups<T: Scalar>(_: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    let mut r = group_invariance::<T>(s, n, |s| r_prime_generator(&s.positive::<T>()), false)?;
    let g6 = group_invariance::<T>(
        s,
        n,
        |s| {
            let det = if s.index(2) == 0 { 1 } else { -1 };
            g6_element(random_sl2(s, det), random_sl2(s, det))
        },
        false,
    )?;
    worst(&mut r, g6);
    Ok(r)
}

fn spin91_closure<T: Scalar>(c: &mut Ctx<T>, _: &mut Sampler, _: usize) -> Result<f64> {
    closure(c, Family::Spin91)
}

/// Some element must move `q`: residual 0 once a witness is found.
fn spin91_witness<T: Scalar>(ctx: &mut Ctx<T>, s: &mut Sampler, n: usize) -> Result<f64> {
    let b = ctx.basis(Family::Spin91);
    for _ in 0..n.max(1) {
        for a in &b.elements {
            let z: Spinor<T> = s.pair();
            let v = z.pair_coords();
            if invariance_residual(q, 2, a, &z, &v)? > FLOAT_TOLERANCE {
                return Ok(0.0);
            }
        }
    }
    Ok(1.0)
}

macro_rules! suite {
    ($name:literal, $topic:literal, $family:expr, $randomized:literal, $run:ident) => {
        Suite {
            name: $name,
            topic: $topic,
            family: $family,
            randomized: $randomized,
            run: $run::<T>,
        }
    };
}

/// Every suite, sorted by name.
pub fn all<T: Scalar>() -> Vec<Suite<T>> {
    use Family::*;
    let mut v = vec![
        suite!("octonion.composition", "octonion algebra", None, true, octonion_composition),
        suite!("octonion.conjugation", "octonion algebra", None, true, octonion_conjugation),
        suite!("octonion.moufang", "octonion algebra", None, true, octonion_moufang),
        suite!("spin8.basis_triality", "infinitesimal triality", Some(Spin8), false, spin8_basis_triality),
        suite!("spin8.clifford", "Clifford relations", Some(Spin8), true, spin8_clifford),
        suite!("spin8.q_pair", "orbit invariants", Some(Spin8), true, spin8_q_pair),
        suite!("spin8.triality", "triality group", Some(Spin8), true, spin8_triality),
        suite!("spin9.abcd", "canonical forms", Some(Spin9), true, spin9_abcd),
        suite!("spin9.clifford", "Clifford relations", Some(Spin9), true, spin9_clifford),
        suite!("spin9.closure", "Lie algebra closure", Some(Spin9), false, spin9_closure),
        suite!("spin9.q", "invariant polynomials", Some(Spin9), true, spin9_q),
        suite!("spin9.quads", "invariant polynomials", Some(Spin9), true, spin9_quads),
        suite!("spin9.rho", "vector representation", Some(Spin9), true, spin9_rho),
        suite!("spin9.sigma", "squaring map", Some(Spin9), true, spin9_sigma),
        suite!("spin10.circle", "subgroup T", Some(Spin10), true, spin10_circle),
        suite!("spin10.closure", "Lie algebra closure", Some(Spin10), false, spin10_closure),
        suite!("spin10.p", "invariant polynomials", Some(Spin10), true, spin10_p),
        suite!("spin10.q", "invariant polynomials", Some(Spin10), true, spin10_q),
        suite!("spin101.brackets", "bracket construction", Some(Spin101), false, spin101_brackets),
        suite!("spin101.closure", "Lie algebra closure", Some(Spin101), false, spin101_closure),
        suite!("spin101.metric", "vector representation", Some(Spin101), false, spin101_metric),
        suite!("spin101.minkowski", "squaring map", Some(Spin101), true, spin101_minkowski),
        suite!("spin101.p", "invariant polynomials", Some(Spin101), true, spin101_p),
        suite!("spin101.rho", "vector representation", Some(Spin101), true, spin101_rho),
        suite!("spin101.scaling", "subgroup R", Some(Spin101), true, spin101_scaling),
        suite!("spin101.sigma", "squaring map", Some(Spin101), true, spin101_sigma),
        suite!("spin102.brackets", "bracket construction", Some(Spin102), false, spin102_brackets),
        suite!("spin102.closure", "Lie algebra closure", Some(Spin102), false, spin102_closure),
        suite!("spin102.groups", "subgroups R' and G6", Some(Spin102), true, spin102_groups),
        suite!("spin102.omega", "symplectic form", Some(Spin102), false, spin102_omega),
        suite!("spin102.p", "invariant polynomials", Some(Spin102), true, spin102_p),
        suite!("spin91.closure", "Lie algebra closure", Some(Spin91), false, spin91_closure),
        suite!("spin91.q_witness", "invariant polynomials", Some(Spin91), true, spin91_witness),
    ];
    v.sort_by_key(|s| s.name);
    v
}

/// FNV-1a, so each suite's stream depends only on the seed and its name.
fn name_hash(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

pub fn run<T: Scalar>(suites: &[Suite<T>], seed: u64, trials: usize) -> Vec<SuiteReport> {
    let mut ctx = Ctx::new();
    let mut out: Vec<SuiteReport> = suites
        .iter()
        .map(|suite| {
            let mut s = Sampler::new(seed ^ name_hash(suite.name));
            let n = if suite.randomized { trials } else { 1 };
            let (max_residual, error) = match (suite.run)(&mut ctx, &mut s, n) {
                Ok(r) => (r, None),
                Err(e) => (f64::INFINITY, Some(e.to_string())),
            };
            SuiteReport {
                name: suite.name,
                topic: suite.topic,
                trials: n,
                max_residual,
                passed: error.is_none() && passes::<T>(max_residual),
                error,
            }
        })
        .collect();
    out.sort_by_key(|r| r.name);
    out
}
