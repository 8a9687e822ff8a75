//! Acceptance run: one line per criterion, nonzero exit on any failure.
//! Each criterion, and the run as a whole, must finish within the time
//! budget.

use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use substral::algebraic::{pisot_test, default_tolerance, FieldElement, NumberField, PisotKind, RationalPolynomial};
use substral::coincidence::{
    dense_coincidence_probe, find_coincident_prototile_pair, theorem_certify, CertificationReport,
    CertifyConfig, SpectrumVerdict,
};
use substral::generators::{arnoux_rauzy, beta_orbit, beta_substitution, brun, greedy_expansion, jacobi_perron};
use substral::substitution::{write_substitution, Substitution};
use substral::tiling::{GeometricSubstitution, Patch};

const BUDGET: Duration = Duration::from_secs(5);

type Outcome = Result<String, String>;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn field(p: &str) -> Arc<NumberField> {
    NumberField::from_min_poly(&p.parse().unwrap()).unwrap()
}

fn words(alphabet: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (1..=alphabet).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Every member of the families named in the first criterion.
fn family() -> Vec<(String, Substitution)> {
    let mut out = Vec::new();
    for (name, p) in [
        ("golden", "x^2-x-1"),
        ("tribonacci", "x^3-x^2-x-1"),
        ("plastic", "x^3-x-1"),
    ] {
        let parry = beta_orbit(&field(p), 100).unwrap();
        out.push((format!("beta {name}"), beta_substitution(&parry).unwrap()));
    }
    for d in [2, 3] {
        for w in words(d, 4) {
            if (1..=d).all(|l| w.contains(&l)) {
                out.push((format!("ar d={d} w={w:?}"), arnoux_rauzy(d, &w).unwrap()));
            }
        }
    }
    for w in words(3, 3) {
        if w.contains(&3) {
            out.push((format!("brun w={w:?}"), brun(&w).unwrap()));
        }
    }
    for pair in [(0, 1), (1, 1), (1, 2)] {
        out.push((format!("jp {pair:?}"), jacobi_perron(&[pair]).unwrap()));
    }
    out
}

fn criterion_1(reports: &[(String, CertificationReport)]) -> Outcome {
    let failures: Vec<&str> = reports
        .iter()
        .filter(|(_, r)| r.verdict != SpectrumVerdict::PdsCertifiedByTheorem)
        .map(|(n, _)| n.as_str())
        .collect();
    if failures.is_empty() {
        Ok(format!("{} substitutions certified", reports.len()))
    } else {
        Err(format!("not certified: {failures:?}"))
    }
}

fn criterion_2(reports: &[(String, CertificationReport)]) -> Outcome {
    let mut compared = 0;
    let mut skipped = Vec::new();
    for (name, r) in reports {
        let g = r.graph.as_ref().ok_or(format!("{name}: no overlap graph"))?;
        let degree = r.field.as_ref().unwrap().degree();
        if g.truncated || r.span_rank < degree {
            skipped.push(format!("{name} (rank {}/{degree})", r.span_rank));
            continue;
        }
        compared += 1;
        if r.overlap_verdict != SpectrumVerdict::PdsConsistentByOverlap {
            return Err(format!("{name}: overlap says {}", r.overlap_verdict.label()));
        }
    }
    Ok(format!(
        "{compared}/{} closed with full rank, all consistent; skipped {skipped:?}",
        reports.len()
    ))
}

fn criterion_3() -> Outcome {
    let tm = theorem_certify(&Substitution::from_digits(&["12", "21"]).unwrap(), &CertifyConfig::default());
    let last = tm.substitution.last_letter_map();
    if tm.hypotheses.theorem_applies || tm.hypotheses.final_letters.constant || last != vec![1, 0] {
        return Err("Thue–Morse hypotheses misreported".into());
    }
    match &tm.verdict {
        SpectrumVerdict::NotPdsEvidence { cycle, .. }
            if !cycle.is_empty() && cycle.iter().all(|c| !c.is_coincidence()) => {}
        v => return Err(format!("Thue–Morse verdict {}", v.label())),
    }
    let sub = Substitution::from_digits(&["2", "1112"]).unwrap();
    let geo = GeometricSubstitution::new(&sub).map_err(|e| e.to_string())?;
    let v = pisot_test(geo.field(), &default_tolerance()).map_err(|e| e.to_string())?;
    let outside = v.conjugate_moduli.iter().any(|(lo, _)| lo > &BigRational::one());
    if v.kind != PisotKind::NotPisot || !outside {
        return Err(format!("1→2, 2→1112 gave {:?}", v.kind));
    }
    let r = theorem_certify(&sub, &CertifyConfig::default());
    if r.hypotheses.theorem_applies {
        return Err("theorem applied to a non-Pisot substitution".into());
    }
    Ok(format!(
        "TM cycle of length {}, conjugate modulus > 1 certified",
        match &tm.verdict {
            SpectrumVerdict::NotPdsEvidence { cycle, .. } => cycle.len(),
            _ => 0,
        }
    ))
}

fn random_patch(rng: &mut ChaCha8Rng, geo: &GeometricSubstitution) -> Patch {
    let f = geo.field();
    let mut left = f.from_rational(q(rng.gen_range(-40..40), rng.gen_range(1..8)));
    let mut tiles = Vec::new();
    for _ in 0..rng.gen_range(1..7) {
        let t = geo.tile(rng.gen_range(0..geo.size()), left.clone());
        left = t.right.clone();
        tiles.push(t);
    }
    Patch::new(tiles)
}

fn criterion_4(family: &[(String, Substitution)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checks = 0usize;
    for (name, sub) in family {
        let geo = GeometricSubstitution::new(sub).map_err(|e| format!("{name}: {e}"))?;
        let f = geo.field();
        let lam = geo.inflation();
        let omega = geo.omega();
        let a = sub.abelianization();
        for j in 0..sub.size() {
            let lhs = (0..sub.size()).fold(f.zero(), |acc, i| {
                &acc + &omega[i].scale(&BigRational::from_integer(a.get(i, j).into()))
            });
            if lhs != lam * &omega[j] {
                return Err(format!("{name}: ωA ≠ λω at {j}"));
            }
        }
        for _ in 0..100 {
            let p = random_patch(&mut rng, &geo);
            let coords = (0..f.degree()).map(|_| q(rng.gen_range(-20..20), rng.gen_range(1..5))).collect();
            let t = f.element(coords).unwrap();
            let img = geo.inflate_patch(&p);
            let (lo, hi) = p.support().unwrap();
            if img.support().unwrap() != (lam * &lo, lam * &hi) {
                return Err(format!("{name}: support not scaled by λ"));
            }
            if geo.inflate_patch(&p.shifted(&t)) != img.shifted(&(lam * &t)) {
                return Err(format!("{name}: inflation does not commute with translation"));
            }
            checks += 1;
        }
    }
    for p in ["x^2-x-1", "x^3-x^2-x-1", "x^3-x-1", "x-2", "x^2-2*x-1", "x^3-2*x^2-1"] {
        let parry = beta_orbit(&field(p), 100).unwrap();
        let sub = beta_substitution(&parry).unwrap();
        let n = parry.digits.len();
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::one();
        for (k, a) in parry.digits.iter().enumerate() {
            c[n - 1 - k] = -a.clone();
        }
        let parry_poly = RationalPolynomial::from_integers(c);
        let cp = substral::algebraic::char_poly(sub.abelianization().rows());
        if !cp.rem(&parry_poly).is_zero() {
            return Err(format!("{p}: {parry_poly} does not divide {cp}"));
        }
    }
    Ok(format!("{} substitutions, {checks} random patches, 6 Parry polynomials", family.len()))
}

/// Independent orbit computation: elements of ℤ[β] as integer coefficient
/// vectors reduced by the monic minimal polynomial, signs decided by
/// interval evaluation on a bisected enclosure of β.
mod oracle {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Signed, Zero};

    pub struct Ring {
        /// Monic, low degree first.
        p: Vec<BigInt>,
        lo: BigRational,
        hi: BigRational,
    }

    fn eval(p: &[BigInt], x: &BigRational) -> BigRational {
        p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    impl Ring {
        /// Largest real root of `p`, assumed to lie in `(1, bound)` with a
        /// sign change there.
        pub fn new(p: Vec<BigInt>, bound: i64) -> Self {
            let mut lo = BigRational::one();
            let mut hi = BigRational::from_integer(bound.into());
            for _ in 0..200 {
                let mid = (&lo + &hi) / BigRational::from_integer(2.into());
                if eval(&p, &mid).is_positive() {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            Ring { p, lo, hi }
        }

        fn n(&self) -> usize {
            self.p.len() - 1
        }

        pub fn times_beta(&self, x: &[BigInt]) -> Vec<BigInt> {
            let n = self.n();
            let mut y = vec![BigInt::zero(); n + 1];
            for (k, c) in x.iter().enumerate() {
                y[k + 1] += c;
            }
            let top = y[n].clone();
            for (yk, pk) in y.iter_mut().zip(&self.p[..n]) {
                *yk -= &top * pk;
            }
            y.truncate(n);
            y
        }

        /// Interval containing the value at β, using `β ∈ [lo, hi]`, `β > 0`.
        fn bounds(&self, x: &[BigInt]) -> (BigRational, BigRational) {
            let (mut a, mut b) = (BigRational::zero(), BigRational::zero());
            for (k, c) in x.iter().enumerate() {
                let c = BigRational::from_integer(c.clone());
                let (pl, ph) = (num_traits::pow(self.lo.clone(), k), num_traits::pow(self.hi.clone(), k));
                if c.is_negative() {
                    a += &c * &ph;
                    b += &c * &pl;
                } else {
                    a += &c * &pl;
                    b += &c * &ph;
                }
            }
            (a, b)
        }

        pub fn floor(&self, x: &[BigInt]) -> BigInt {
            let (a, b) = self.bounds(x);
            let (fa, fb) = (a.floor().to_integer(), b.floor().to_integer());
            assert_eq!(fa, fb, "enclosure too wide to decide the floor");
            fa
        }

        /// Digits of the orbit of 1, stopping at an exact zero.
        pub fn parry_digits(&self, max: usize) -> Option<Vec<BigInt>> {
            let mut x = vec![BigInt::zero(); self.n()];
            x[0] = BigInt::one();
            let mut digits = Vec::new();
            for _ in 0..max {
                let y = self.times_beta(&x);
                let a = self.floor(&y);
                x = y;
                x[0] -= &a;
                digits.push(a);
                if x.iter().all(Zero::is_zero) {
                    return Some(digits);
                }
            }
            None
        }
    }
}

fn criterion_5() -> Outcome {
    let cases: [(&str, Vec<i64>, Vec<i64>); 4] = [
        ("x^2-x-1", vec![-1, -1, 1], vec![1, 1]),
        ("x-2", vec![-2, 1], vec![2]),
        ("x^3-x^2-x-1", vec![-1, -1, -1, 1], vec![1, 1, 1]),
        ("x^3-x-1", vec![-1, -1, 0, 1], vec![1, 0, 0, 0, 1]),
    ];
    for (p, coeffs, expected) in cases {
        let expected: Vec<BigInt> = expected.into_iter().map(BigInt::from).collect();
        let ring = oracle::Ring::new(coeffs.into_iter().map(BigInt::from).collect(), 3);
        let oracle = ring.parry_digits(50).ok_or(format!("{p}: oracle found no zero"))?;
        let got = beta_orbit(&field(p), 100).map_err(|e| e.to_string())?;
        if !got.simple || got.digits != expected || oracle != expected {
            return Err(format!("{p}: library {:?}, oracle {oracle:?}", got.digits));
        }
    }
    Ok("golden (1,1), 2 (2), tribonacci (1,1,1), plastic (1,0,0,0,1)".into())
}

fn criterion_6() -> Outcome {
    let golden = GeometricSubstitution::new(&Substitution::from_digits(&["21", "1"]).unwrap()).unwrap();
    let w = find_coincident_prototile_pair(&golden, 8, 64)
        .map_err(|e| e.to_string())?
        .ok_or("golden: no coincident pair")?;
    let one = golden.field().one();
    if (w.i, w.j, w.power) != (0, 1, 2) || w.report.coverage != one {
        return Err(format!("golden pair ({}, {}) power {} coverage {}", w.i + 1, w.j + 1, w.power, w.report.coverage));
    }
    let tm = GeometricSubstitution::new(&Substitution::from_digits(&["12", "21"]).unwrap()).unwrap();
    let f = tm.field();
    let omega = tm.omega();
    let p1 = Patch::new(vec![tm.tile(0, -&omega[0])]);
    let p2 = Patch::new(vec![tm.tile(1, -&omega[1])]);
    let eps = &omega[0] * &tm.inflation().inverse().unwrap();
    let r = dense_coincidence_probe(&tm, &p1, &p2, &-&eps, &f.zero(), 64, 12).map_err(|e| e.to_string())?;
    if !r.coverage.is_zero() || r.hits != 0 {
        return Err(format!("Thue–Morse coverage {}", r.coverage));
    }
    Ok(format!("golden coverage 1 over {} samples, Thue–Morse 0", w.report.samples))
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let d: i64 = rng.gen_range(1..1000);
    q(rng.gen_range(0..10 * d), d)
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let m = 24;
    let mut checked = 0usize;
    for p in ["x^2-x-1", "x^3-x-1"] {
        let f = field(p);
        let beta = f.generator();
        let inv = beta.inverse().unwrap();
        let power = |k: i64| if k >= 0 { beta.pow(k as u32) } else { inv.pow((-k) as u32) };
        for _ in 0..100 {
            let x = f.from_rational(random_rational(&mut rng));
            let g = greedy_expansion(&x, m).map_err(|e| format!("{p}: {e}"))?;
            let mut sum = f.zero();
            for (i, d) in g.digits.iter().enumerate() {
                let k = g.start + i as i64;
                if d.is_negative() || d > &beta.floor() {
                    return Err(format!("{p}: digit {d} out of range"));
                }
                sum = &sum + &power(-k).scale(&BigRational::from_integer(d.clone()));
                let err: FieldElement = (&x - &sum).abs();
                if err >= power(-k) {
                    return Err(format!("{p}: bound violated at index {k}"));
                }
                checked += 1;
            }
            if g.last() != m {
                return Err(format!("{p}: stopped at {}", g.last()));
            }
        }
    }
    Ok(format!("{checked} partial sums checked, 0 violations"))
}

fn criterion_8() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let inputs = [
        ("golden", Substitution::from_digits(&["21", "1"]).unwrap()),
        ("thue-morse", Substitution::from_digits(&["12", "21"]).unwrap()),
        ("ar123", arnoux_rauzy(3, &[1, 2, 3]).unwrap()),
    ];
    for (name, sub) in inputs {
        let path = dir.path().join(format!("{name}.txt"));
        std::fs::write(&path, write_substitution(&sub)).unwrap();
        let digest = || {
            let o = Command::new(env!("CARGO_BIN_EXE_substral"))
                .args(["check", "--input", path.to_str().unwrap()])
                .output()
                .unwrap();
            Sha256::digest(&o.stdout)
        };
        let (a, b) = (digest(), digest());
        if a != b {
            return Err(format!("{name}: reports differ"));
        }
    }
    Ok("3 inputs, identical SHA-256 over repeated runs".into())
}

fn report(n: u32, elapsed: Duration, outcome: Outcome) -> bool {
    let slow = elapsed > BUDGET;
    let ok = outcome.is_ok() && !slow;
    let detail = match &outcome {
        Ok(s) if slow => format!("{s}; over the {}s budget", BUDGET.as_secs()),
        Ok(s) => s.clone(),
        Err(e) => e.clone(),
    };
    println!(
        "criterion {n}: {} ({:.2}s) {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    ok
}

fn timed<T>(f: impl FnOnce() -> T) -> (Duration, T) {
    let start = Instant::now();
    let out = f();
    (start.elapsed(), out)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let members = family();
    let cfg = CertifyConfig::default();
    let (t_certify, reports) = timed(|| {
        members
            .iter()
            .map(|(n, s)| (n.clone(), theorem_certify(s, &cfg)))
            .collect::<Vec<_>>()
    });
    let mut ok = true;
    let (t, o) = timed(|| criterion_1(&reports));
    ok &= report(1, t_certify + t, o);
    let (t, o) = timed(|| criterion_2(&reports));
    ok &= report(2, t_certify + t, o);
    let (t, o) = timed(criterion_3);
    ok &= report(3, t, o);
    let (t, o) = timed(|| criterion_4(&members));
    ok &= report(4, t, o);
    let (t, o) = timed(criterion_5);
    ok &= report(5, t, o);
    let (t, o) = timed(criterion_6);
    ok &= report(6, t, o);
    let (t, o) = timed(criterion_7);
    ok &= report(7, t, o);
    let (t, o) = timed(criterion_8);
    ok &= report(8, t, o);
    let total = start.elapsed();
    println!("total: {:.2}s (budget {}s)", total.as_secs_f64(), BUDGET.as_secs());
    if total > BUDGET {
        println!("run exceeded the time budget");
        ok = false;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
