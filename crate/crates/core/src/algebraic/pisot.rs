//! Certified Pisot test.
//!
//! Complex root approximations are refined with Weierstrass iterations in
//! fixed-point arithmetic on a dyadic grid, then certified exactly with
//! the Weierstrass inclusion disks: for a monic polynomial of degree `n` and
//! pairwise distinct approximations `z_i`, each disk
//! `|z - z_i| ≤ n·|p(z_i) / Π_{j≠i}(z_i - z_j)|` that is disjoint from all
//! others contains exactly one root.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{AlgebraError, NumberField, RationalPolynomial};

/// Default width below which an undecided modulus interval is reported as
/// borderline.
pub fn default_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1_000_000_000u64))
}

const MAX_BITS: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PisotKind {
    Pisot,
    NotPisot,
    Borderline,
}

/// Outcome of [`pisot_test`], with a certified modulus interval for each
/// algebraic conjugate of λ other than λ itself.
#[derive(Clone, Debug, PartialEq)]
pub struct PisotVerdict {
    pub kind: PisotKind,
    pub conjugate_moduli: Vec<(BigRational, BigRational)>,
    /// Working precision, in bits, at which the verdict was reached.
    pub precision_bits: u64,
}

impl PisotVerdict {
    pub fn is_pisot(&self) -> bool {
        self.kind == PisotKind::Pisot
    }
}

#[derive(Clone, Debug)]
struct CRat {
    re: BigRational,
    im: BigRational,
}

impl CRat {
    fn zero() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Self {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn mul(&self, o: &Self) -> Self {
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    fn round(&self, bits: u64) -> Self {
        Self {
            re: round_dyadic(&self.re, bits),
            im: round_dyadic(&self.im, bits),
        }
    }

    fn from_f64(z: Complex64, bits: u64) -> Self {
        let conv = |x: f64| BigRational::from_float(x).unwrap_or_else(BigRational::zero);
        Self {
            re: conv(z.re),
            im: conv(z.im),
        }
        .round(bits)
    }
}

fn round_dyadic(x: &BigRational, bits: u64) -> BigRational {
    let scale = BigInt::one() << bits as usize;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let n = (x * BigRational::from_integer(scale.clone()) + half).floor().to_integer();
    BigRational::new(n, scale)
}

/// Rational bounds `lo ≤ √q ≤ hi` with `hi - lo ≤ 2^-bits`.
fn sqrt_bounds(q: &BigRational, bits: u64) -> (BigRational, BigRational) {
    let scale = BigInt::one() << (2 * bits) as usize;
    let n = (q * BigRational::from_integer(scale)).floor().to_integer();
    let s = n.sqrt();
    let den = BigInt::one() << bits as usize;
    (BigRational::new(s.clone(), den.clone()), BigRational::new(s + 1, den))
}

fn horner(p: &[BigRational], z: &CRat) -> CRat {
    p.iter().rev().fold(CRat::zero(), |acc, c| {
        let m = acc.mul(z);
        CRat {
            re: m.re + c,
            im: m.im,
        }
    })
}

/// Aberth iteration in double precision for starting values.
fn aberth_seeds(p: &RationalPolynomial) -> Vec<Complex64> {
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64().unwrap_or(0.0)).collect();
    let n = coeffs.len() - 1;
    let radius = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| c.abs())
            .fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.9, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            d = d * x + v;
            v = v * x + c;
        }
        (v, d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let w = v / d;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = w / (Complex64::new(1.0, 0.0) - w * s);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm());
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

struct Certified {
    centers: Vec<CRat>,
    /// Upper bounds on disk radii.
    radii: Vec<BigRational>,
}

/// Fixed-point complex number `(re + i·im) / 2^bits`.
#[derive(Clone)]
struct Fixed {
    re: BigInt,
    im: BigInt,
}

impl Fixed {
    fn from_grid(z: &CRat, bits: u64) -> Self {
        let scale = BigRational::from_integer(BigInt::one() << bits as usize);
        let conv = |x: &BigRational| (x * &scale).round().to_integer();
        Self { re: conv(&z.re), im: conv(&z.im) }
    }

    fn to_grid(&self, bits: u64) -> CRat {
        let den = BigInt::one() << bits as usize;
        CRat {
            re: BigRational::new(self.re.clone(), den.clone()),
            im: BigRational::new(self.im.clone(), den),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Self { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn mul(&self, o: &Self, bits: u64) -> Self {
        let b = bits as usize;
        Self {
            re: (&self.re * &o.re - &self.im * &o.im) >> b,
            im: (&self.re * &o.im + &self.im * &o.re) >> b,
        }
    }

    fn div(&self, o: &Self, bits: u64) -> Option<Self> {
        let d = &o.re * &o.re + &o.im * &o.im;
        if d.is_zero() {
            return None;
        }
        let b = bits as usize;
        Some(Self {
            re: ((&self.re * &o.re + &self.im * &o.im) << b) / &d,
            im: ((&self.im * &o.re - &self.re * &o.im) << b) / &d,
        })
    }
}

/// One Weierstrass (Durand–Kerner) sweep on the `2^-bits` grid. Rounding
/// only perturbs the approximations; certification is exact.
fn weierstrass_step(p: &[BigInt], z: &[Fixed], bits: u64) -> Vec<Fixed> {
    let one = Fixed { re: BigInt::one() << bits as usize, im: BigInt::zero() };
    (0..z.len())
        .map(|i| {
            let denom = (0..z.len())
                .filter(|&j| j != i)
                .fold(one.clone(), |acc, j| acc.mul(&z[i].sub(&z[j]), bits));
            let value = p.iter().rev().fold(Fixed { re: BigInt::zero(), im: BigInt::zero() }, |acc, c| {
                let m = acc.mul(&z[i], bits);
                Fixed { re: m.re + (c << bits as usize), im: m.im }
            });
            match value.div(&denom, bits) {
                Some(step) => z[i].sub(&step),
                None => z[i].clone(),
            }
        })
        .collect()
}

fn certify(p: &[BigRational], z: &[CRat], bits: u64) -> Option<Certified> {
    let n = z.len();
    let nn = BigRational::from_integer(BigInt::from((n * n) as u64));
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let mut prod = BigRational::one();
        for j in 0..n {
            if j != i {
                prod *= z[i].sub(&z[j]).norm_sqr();
            }
        }
        if prod.is_zero() {
            return None;
        }
        let r2 = horner(p, &z[i]).norm_sqr() * &nn / prod;
        radii.push(sqrt_bounds(&r2, bits + 8).1);
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = sqrt_bounds(&z[i].sub(&z[j]).norm_sqr(), bits + 8).0;
            if d <= &radii[i] + &radii[j] {
                return None;
            }
        }
    }
    Some(Certified {
        centers: z.to_vec(),
        radii,
    })
}

/// Decides whether λ is a Pisot number: an algebraic integer all of whose
/// other conjugates lie strictly inside the unit circle.
///
/// Precision is raised until every conjugate's modulus interval is
/// separated from 1 or narrower than `tolerance`; the latter case (and
/// exhaustion of the precision budget) yields [`PisotKind::Borderline`].
pub fn pisot_test(field: &NumberField, tolerance: &BigRational) -> Result<PisotVerdict, AlgebraError> {
    if !field.is_algebraic_integer() {
        return Err(AlgebraError::NotAlgebraicInteger(field.min_poly().to_string()));
    }
    let p = field.min_poly();
    let n = field.degree();
    if n == 1 {
        return Ok(PisotVerdict {
            kind: PisotKind::Pisot,
            conjugate_moduli: Vec::new(),
            precision_bits: 0,
        });
    }
    let coeffs = p.coeffs().to_vec();
    let int_coeffs = p.integer_coeffs().expect("algebraic integer");
    let one = BigRational::one();
    let mut bits = 64u64;
    let mut z: Vec<CRat> = aberth_seeds(p)
        .into_iter()
        .map(|c| CRat::from_f64(c, bits))
        .collect();
    let mut last_moduli = Vec::new();
    while bits <= MAX_BITS {
        let mut fz: Vec<Fixed> = z.iter().map(|c| Fixed::from_grid(c, bits)).collect();
        for _ in 0..8 {
            fz = weierstrass_step(&int_coeffs, &fz, bits);
        }
        z = fz.iter().map(|f| f.to_grid(bits)).collect();
        let Some(cert) = certify(&coeffs, &z, bits) else {
            bits *= 2;
            continue;
        };
        let (llo, lhi) = field.dyadic_interval(bits);
        let lam = CRat {
            re: (&llo + &lhi) / BigRational::from_integer(2.into()),
            im: BigRational::zero(),
        };
        let slack = &lhi - &llo;
        let containing: Vec<usize> = (0..n)
            .filter(|&i| {
                let d = sqrt_bounds(&cert.centers[i].sub(&lam).norm_sqr(), bits + 8).0;
                d <= &cert.radii[i] + &slack
            })
            .collect();
        if containing.len() != 1 {
            bits *= 2;
            continue;
        }
        let moduli: Vec<(BigRational, BigRational)> = (0..n)
            .filter(|&i| i != containing[0])
            .map(|i| {
                let (mlo, mhi) = sqrt_bounds(&cert.centers[i].norm_sqr(), bits + 8);
                let lo = &mlo - &cert.radii[i];
                let lo = if lo.is_negative() { BigRational::zero() } else { lo };
                (lo, mhi + &cert.radii[i])
            })
            .collect();
        let kind = if moduli.iter().all(|(_, hi)| hi < &one) {
            Some(PisotKind::Pisot)
        } else if moduli.iter().any(|(lo, _)| lo >= &one) {
            Some(PisotKind::NotPisot)
        } else if moduli
            .iter()
            .filter(|(lo, hi)| lo < &one && hi >= &one)
            .all(|(lo, hi)| hi - lo < *tolerance)
        {
            Some(PisotKind::Borderline)
        } else {
            None
        };
        if let Some(kind) = kind {
            return Ok(PisotVerdict {
                kind,
                conjugate_moduli: moduli,
                precision_bits: bits,
            });
        }
        last_moduli = moduli;
        bits *= 2;
    }
    Ok(PisotVerdict {
        kind: PisotKind::Borderline,
        conjugate_moduli: last_moduli,
        precision_bits: MAX_BITS,
    })
}
