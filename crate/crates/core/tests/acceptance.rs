//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p octospin --test acceptance`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{naive_bracket, oct_mul, Echelon};
use octospin::families::{
    containment_residual, m9, minkowski_gram, rho101, rho9, spin101_from_brackets,
    spin102_from_brackets,
};
use octospin::invariants::{
    directional_derivative, directional_derivative_vec, minkowski, omega_gram, p_from_quads,
    p_quartic, p_wedge, q, q22, quads, sigma101, sigma9,
};
use octospin::linalg::SpanBasis;
use octospin::matrix::bracket;
use octospin::octonion::conjugation_matrix;
use octospin::orbits::{
    recover_abcd, spin9_canonical, stabilizer, z_ab, z_cs, z_theta,
};
use octospin::sampling::Sampler;
use octospin::spin8::{clifford_m8, sigma_generator, TrialityTriple};
use octospin::{Family, FamilyBasis, Matrix, Octonion, Rational, Scalar, Spinor};

type Q = Rational;

#[derive(Default)]
struct Check {
    checks: usize,
    failures: Vec<String>,
}

impl Check {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }

    fn within(&mut self, start: Instant, limit: Duration) {
        let t = start.elapsed();
        self.expect(t < limit, || format!("took {t:?}, limit {limit:?}"));
    }

    fn summary(&self) -> (bool, String) {
        if self.failures.is_empty() {
            (true, format!("{} checks", self.checks))
        } else {
            let shown: Vec<&str> = self
                .failures
                .iter()
                .filter(|s| !s.is_empty())
                .map(String::as_str)
                .collect();
            (
                false,
                format!(
                    "{} of {} checks failed: {}",
                    self.failures.len(),
                    self.checks,
                    shown.join("; ")
                ),
            )
        }
    }
}

fn seed() -> u64 {
    std::env::var("OCTOSPIN_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(20_240_601)
}

fn octonion_axioms() -> Check {
    let start = Instant::now();
    let mut c = Check::default();
    let mut s = Sampler::new(seed());
    let cm = conjugation_matrix::<Q>();
    for _ in 0..100 {
        let x: Octonion<Q> = s.octonion();
        let y: Octonion<Q> = s.octonion();
        let z: Octonion<Q> = s.octonion();
        let m = |a: &Octonion<Q>, b: &Octonion<Q>| a.mul(b);
        c.expect(m(&x, &y) == oct_mul(&x, &y), || "product differs from doubling oracle".into());
        c.expect(
            m(&z, &m(&x, &m(&z, &y))) == m(&m(&m(&z, &x), &z), &y),
            || "z(x(zy)) = ((zx)z)y".into(),
        );
        c.expect(
            m(&x, &m(&z, &m(&y, &z))) == m(&m(&m(&x, &z), &y), &z),
            || "x(z(yz)) = ((xz)y)z".into(),
        );
        c.expect(
            m(&m(&z, &x), &m(&y, &z)) == m(&m(&z, &m(&x, &y)), &z),
            || "(zx)(yz) = (z(xy))z".into(),
        );
        c.expect(
            m(&x, &y).norm_sq() == x.norm_sq() * y.norm_sq(),
            || "|xy|² = |x|²|y|²".into(),
        );
        c.expect(m(&x, &y).conj() == m(&y.conj(), &x.conj()), || "conj(xy) = ȳ x̄".into());
        c.expect(
            &(&cm * &x.left_matrix()) * &cm == x.conj().right_matrix(),
            || "C L_x C = R_x̄".into(),
        );
    }
    c.within(start, Duration::from_secs(5));
    c
}

fn clifford_relations() -> Check {
    let mut c = Check::default();
    let mut s = Sampler::new(seed() + 2);
    for _ in 0..100 {
        let x: Octonion<Q> = s.octonion();
        let rr: Q = s.scalar();
        let mx = clifford_m8(&x);
        c.expect(
            &mx * &mx == Matrix::scalar(16, -x.norm_sq()),
            || "m_x² ≠ −|x|²".into(),
        );
        let m = m9(&rr, &x);
        let sq = m.mul(&m);
        let expected = Matrix::scalar(32, -(rr.square() + x.norm_sq()));
        c.expect(sq.real_form() == &expected, || "m_(r,x)² ≠ −(r²+|x|²)".into());
    }
    c
}

fn triality() -> Check {
    let mut c = Check::default();
    let mut s = Sampler::new(seed() + 3);
    for trial in 0..10 {
        let mut g = TrialityTriple::<Q>::identity();
        for _ in 0..5 {
            let u = s.unit_octonion();
            g = g.compose(&sigma_generator(&u).expect("unit octonion"));
        }
        c.expect(g.h_residual().is_zero(), || format!("product {trial} not in H"));
        c.expect(g.is_orthogonal(), || format!("product {trial} not orthogonal"));
        let alpha2 = g.alpha().and_then(|a| a.alpha());
        let beta2 = g.beta().and_then(|b| b.beta());
        let tau3 = g.tau().and_then(|t| t.tau()).and_then(|t| t.tau());
        c.expect(alpha2.as_ref() == Ok(&g), || "α² ≠ id".into());
        c.expect(beta2.as_ref() == Ok(&g), || "β² ≠ id".into());
        c.expect(tau3.as_ref() == Ok(&g), || "(αβ)³ ≠ id".into());
        for img in [g.alpha(), g.beta()] {
            c.expect(img.map(|t| t.in_h()) == Ok(true), || "image left H".into());
        }
    }
    for z in TrialityTriple::<Q>::center() {
        c.expect(z.in_h(), || "center element not in H".into());
    }
    c
}

fn dimension_table() -> Check {
    let mut c = Check::default();
    let expected = [28, 36, 45, 55, 66, 45];
    for (f, d) in Family::ALL.into_iter().zip(expected) {
        let b = FamilyBasis::<Q>::new(f);
        let mats = b.matrices();
        let oracle = Echelon::from_matrices(&mats);
        c.expect(b.dim() == d, || format!("{f}: dim {}", b.dim()));
        c.expect(oracle.rank() == d && b.rank() == d, || format!("{f}: rank {}", oracle.rank()));
        let mut closed = true;
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                let br = naive_bracket(&mats[i], &mats[j]);
                closed &= oracle.contains(br.entries());
            }
        }
        c.expect(closed, || format!("{f}: bracket leaves the span"));
        c.expect(b.closure_residual().is_zero(), || format!("{f}: closure residual"));
    }
    c
}

fn bracket_templates() -> Check {
    let mut c = Check::default();
    for (f, built) in [
        (Family::Spin101, spin101_from_brackets::<Q>()),
        (Family::Spin102, spin102_from_brackets::<Q>()),
    ] {
        let template = FamilyBasis::<Q>::new(f).matrices();
        let rank = SpanBasis::from_matrices(&built).rank();
        c.expect(rank == f.dim(), || format!("{f}: bracket span has rank {rank}"));
        c.expect(
            containment_residual(&built, &template).is_zero(),
            || format!("{f}: bracket span ⊄ template"),
        );
        c.expect(
            containment_residual(&template, &built).is_zero(),
            || format!("{f}: template ⊄ bracket span"),
        );
    }
    c
}

fn homomorphisms() -> Check {
    let mut c = Check::default();
    let b9 = FamilyBasis::<Q>::new(Family::Spin9);
    let rho: Vec<Matrix<Q>> = b9.elements.iter().map(|e| rho9(e).unwrap()).collect();
    for (i, m) in rho.iter().enumerate() {
        c.expect(m.is_skew(), || format!("ρ9(b{i}) not skew"));
    }
    for i in 0..b9.dim() {
        for j in i + 1..b9.dim() {
            let br = bracket(&b9.elements[i].matrix, &b9.elements[j].matrix).unwrap();
            let lhs = rho9(&b9.element_from_matrix(&br).unwrap()).unwrap();
            c.expect(lhs == naive_bracket(&rho[i], &rho[j]), || format!("ρ9 [b{i}, b{j}]"));
        }
    }
    let b11 = FamilyBasis::<Q>::new(Family::Spin101);
    let g = minkowski_gram::<Q>();
    let rho: Vec<Matrix<Q>> = b11.elements.iter().map(|e| rho101(e).unwrap()).collect();
    for (i, m) in rho.iter().enumerate() {
        c.expect((&(&m.transpose() * &g) + &(&g * m)).is_zero(), || format!("ρ101(b{i}) ∉ so(10,1)"));
    }
    for i in 0..b11.dim() {
        for j in i + 1..b11.dim() {
            let br = bracket(&b11.elements[i].matrix, &b11.elements[j].matrix).unwrap();
            let lhs = rho101(&b11.element_from_matrix(&br).unwrap()).unwrap();
            c.expect(lhs == naive_bracket(&rho[i], &rho[j]), || format!("ρ101 [b{i}, b{j}]"));
        }
    }
    c
}

fn equivariance() -> Check {
    let start = Instant::now();
    let mut c = Check::default();
    let mut s = Sampler::new(seed() + 7);
    let b9 = FamilyBasis::<Q>::new(Family::Spin9);
    for (i, a) in b9.elements.iter().enumerate() {
        let rho = rho9(a).unwrap();
        for _ in 0..20 {
            let z: Spinor<Q> = s.pair();
            let w = a.act(&z.pair_coords()).unwrap();
            let d = directional_derivative_vec(|v| sigma9(&v.x1, &v.y1).to_vec(), &z, &w, 2);
            let expected = rho.apply(&sigma9(&z.x1, &z.y1).to_vec());
            c.expect(d == expected, || format!("σ9 not equivariant for b{i}"));
        }
    }
    let b11 = FamilyBasis::<Q>::new(Family::Spin101);
    for (i, a) in b11.elements.iter().enumerate() {
        let rho = rho101(a).unwrap();
        for _ in 0..20 {
            let z: Spinor<Q> = s.spinor();
            let w = a.act(&z.coords()).unwrap();
            let d = directional_derivative_vec(|v| sigma101(v).to_vec(), &z, &w, 2);
            let expected = rho.apply(&sigma101(&z).to_vec());
            c.expect(d == expected, || format!("σ101 not equivariant for b{i}"));
        }
    }
    c.within(start, Duration::from_secs(60));
    c
}

fn invariance() -> Check {
    let mut c = Check::default();
    let mut s = Sampler::new(seed() + 8);
    let trials = 3;

    let b9 = FamilyBasis::<Q>::new(Family::Spin9);
    for (i, a) in b9.elements.iter().enumerate() {
        for _ in 0..trials {
            let v: Spinor<Q> = s.pair();
            let w = a.act(&v.pair_coords()).unwrap();
            c.expect(directional_derivative(q, &v, &w, 2).is_zero(), || format!("spin9 b{i}: dq ≠ 0"));
            let z: Spinor<Q> = s.spinor();
            let w = a.act(&z.coords()).unwrap();
            let d = directional_derivative_vec(
                |v| {
                    let (a, b, c) = quads(v);
                    vec![a, b, c, q22(v)]
                },
                &z,
                &w,
                4,
            );
            c.expect(d.iter().all(Scalar::is_zero), || format!("spin9 b{i}: quads/q22 vary"));
        }
    }

    let gram = omega_gram::<Q>();
    for (f, check_q) in [
        (Family::Spin10, true),
        (Family::Spin101, false),
        (Family::Spin102, false),
    ] {
        let b = FamilyBasis::<Q>::new(f);
        for (i, a) in b.elements.iter().enumerate() {
            for _ in 0..trials {
                let z: Spinor<Q> = s.spinor();
                let w = a.act(&z.coords()).unwrap();
                if check_q {
                    c.expect(directional_derivative(q, &z, &w, 2).is_zero(), || format!("{f} b{i}: dq ≠ 0"));
                }
                c.expect(
                    directional_derivative(p_quartic, &z, &w, 4).is_zero(),
                    || format!("{f} b{i}: dp ≠ 0"),
                );
            }
            if f == Family::Spin102 {
                let m = &a.matrix;
                c.expect(
                    (&(&m.transpose() * &gram) + &(&gram * m)).is_zero(),
                    || format!("spin102 b{i} does not preserve Ω"),
                );
            }
        }
    }

    let b91 = FamilyBasis::<Q>::new(Family::Spin91);
    let mut witness = None;
    'search: for (i, a) in b91.elements.iter().enumerate() {
        for _ in 0..trials {
            let z: Spinor<Q> = s.pair();
            let w = a.act(&z.pair_coords()).unwrap();
            let d = directional_derivative(q, &z, &w, 2);
            if !d.is_zero() {
                witness = Some((i, d));
                break 'search;
            }
        }
    }
    c.expect(witness.is_some(), || "spin91 preserves q on every sample".into());
    c
}

fn orbit_numerics() -> Check {
    let mut c = Check::default();
    let mut s = Sampler::new(seed() + 9);
    for k in 0..20 {
        let theta = std::f64::consts::FRAC_PI_2 * k as f64 / 19.0;
        let p = p_quartic(&z_theta(theta));
        let expected = 0.25 * (2.0 * theta).sin().powi(2);
        c.expect((p - expected).abs() <= 1e-12, || format!("p(z_θ) at θ = {theta}"));
    }
    for _ in 0..50 {
        let (a, b): (Q, Q) = (s.scalar(), s.scalar());
        c.expect(
            p_quartic(&z_ab(&a, &b)) == a.square() * b.square(),
            || "p(z_ab) ≠ a²b²".into(),
        );
    }
    for _ in 0..50 {
        let abcd: [Q; 4] = std::array::from_fn(|_| s.positive());
        let z = spin9_canonical(&abcd[0], &abcd[1], &abcd[2], &abcd[3]);
        let (q20, q11, q02) = quads(&z);
        let back = recover_abcd(&q20, &q11, &q02, &q22(&z));
        c.expect(back.as_ref() == Ok(&abcd), || format!("recover_abcd({abcd:?}) = {back:?}"));
    }
    for _ in 0..100 {
        let z: Spinor<Q> = s.spinor();
        let p = p_quartic(&z);
        c.expect(p == p_from_quads(&z) && p == p_wedge(&z), || "p expressions disagree".into());
    }
    c
}

fn stabilizers() -> Check {
    let start = Instant::now();
    let mut c = Check::default();
    let one = Q::from_i64(1);
    let zero = Q::from_i64(0);
    let b8 = FamilyBasis::<Q>::new(Family::Spin8);
    let b9 = FamilyBasis::<Q>::new(Family::Spin9);
    let b10 = FamilyBasis::<Q>::new(Family::Spin10);
    let b101 = FamilyBasis::<Q>::new(Family::Spin101);
    let cases: Vec<(&str, &FamilyBasis<Q>, Spinor<Q>, usize)> = vec![
        ("spin8 at (1, 1)", &b8, Spinor::pair(Octonion::one(), Octonion::one()), 14),
        ("spin9 at (1, 0)", &b9, Spinor::pair(Octonion::one(), Octonion::zero()), 21),
        ("spin10 at z0", &b10, z_cs(&one, &zero), 21),
        ("spin10 at z_π/4", &b10, z_cs(&one, &one), 24),
        ("spin101 at z_1,1", &b101, z_ab(&one, &one), 24),
        ("spin101 at z_1,0", &b101, z_ab(&one, &zero), 30),
    ];
    for (name, basis, z, dim) in cases {
        let st = stabilizer(basis, &z).unwrap();
        c.expect(st.dim() == dim, || format!("{name}: dim {} ≠ {dim}", st.dim()));
        c.expect(st.closure_residual().is_zero(), || format!("{name}: not closed"));
        if name == "spin10 at z_π/4" {
            c.expect(
                st.has_negative_definite_trace_form(),
                || format!("{name}: trace form not negative definite"),
            );
        }
    }
    let b10f = FamilyBasis::<f64>::new(Family::Spin10);
    let st = stabilizer(&b10f, &z_theta(std::f64::consts::FRAC_PI_6)).unwrap();
    c.expect(st.dim() == 15, || format!("spin10 at z_π/6: dim {} ≠ 15", st.dim()));
    c.expect(st.is_closed(), || "spin10 at z_π/6: not closed".into());
    c.within(start, Duration::from_secs(120));
    c
}

fn minkowski_identity() -> Check {
    let mut c = Check::default();
    let mut s = Sampler::new(seed() + 11);
    for _ in 0..100 {
        let z: Spinor<Q> = s.spinor();
        let v = sigma101(&z);
        let n = minkowski(&v, &v);
        c.expect(p_quartic(&z) == n.clone() * Q::from_ratio(-1, 4), || "p ≠ −¼ σ·σ".into());
        c.expect(n <= Q::from_i64(0), || "σ(z) is spacelike".into());
        c.expect(v.a[0] >= Q::from_i64(0), || "σ(z) is past-pointing".into());
    }
    c
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 11] = [
        ("octonion axioms", octonion_axioms),
        ("Clifford relations", clifford_relations),
        ("triality group and automorphisms", triality),
        ("dimension table, independence, closure", dimension_table),
        ("bracket constructions match templates", bracket_templates),
        ("vector representations are homomorphisms", homomorphisms),
        ("squaring maps are equivariant", equivariance),
        ("invariant polynomials and forms", invariance),
        ("orbit numerics", orbit_numerics),
        ("stabilizer dimensions", stabilizers),
        ("p as a Minkowski norm", minkowski_identity),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match catch_unwind(AssertUnwindSafe(run)) {
            Ok(check) => check.summary(),
            Err(_) => (false, "panicked".to_string()),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {detail} ({:.2}s)",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
