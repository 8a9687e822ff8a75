//! The real number field ℚ(λ) with a certified embedding.
//!
//! Elements are coordinate vectors over the power basis `1, λ, …, λ^(m-1)`.
//! Signs are decided by evaluating the coordinates against a dyadic
//! enclosure of λ that is refined on demand and shared by every element of
//! the field.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::sturm;
use super::{factor, AlgebraError, RationalPolynomial};

/// Width of the isolating interval recorded at construction.
pub const ISOLATION_BITS: u32 = 32;

const INITIAL_BITS: u64 = 64;

/// λ ∈ [lo/2^bits, (lo+1)/2^bits], with cached enclosures of λ^k scaled by
/// 2^bits for `k < degree`.
#[derive(Clone, Debug)]
struct RootApprox {
    bits: u64,
    lo: BigInt,
    powers: Vec<(BigInt, BigInt)>,
}

impl RootApprox {
    fn new(bits: u64, lo: BigInt, degree: usize) -> Self {
        let mut a = Self {
            bits,
            lo,
            powers: Vec::new(),
        };
        a.rebuild_powers(degree);
        a
    }

    /// Midpoints of the power enclosures as `f64`.
    fn float_powers(&self) -> Vec<f64> {
        let scale = 2f64.powi(-(self.bits as i32));
        self.powers
            .iter()
            .map(|(lo, hi)| (lo + hi).to_f64().unwrap_or(f64::INFINITY) * 0.5 * scale)
            .collect()
    }

    fn rebuild_powers(&mut self, degree: usize) {
        let hi: BigInt = &self.lo + 1;
        let one = BigInt::one() << self.bits as usize;
        let mut powers = vec![(one.clone(), one)];
        let (mut plo, mut phi) = (self.lo.clone(), hi.clone());
        for k in 1..degree {
            // lo^k / 2^(bits(k-1)) floored, (lo+1)^k / 2^(bits(k-1)) ceiled.
            let shift = self.bits as usize * (k - 1);
            let l = &plo >> shift;
            let h = {
                let q = &phi >> shift;
                if (&q << shift) == phi {
                    q
                } else {
                    q + 1
                }
            };
            powers.push((l, h));
            plo *= &self.lo;
            phi *= &hi;
        }
        self.powers = powers;
    }
}

/// ℚ(λ) for a real algebraic λ > 1 given by its minimal polynomial.
#[derive(Debug)]
pub struct NumberField {
    min_poly: RationalPolynomial,
    /// Primitive integer multiple of `min_poly`, used for sign tests.
    scaled: Vec<BigInt>,
    degree: usize,
    root_interval: (BigRational, BigRational),
    /// λ itself when the degree is one.
    rational_root: Option<BigRational>,
    /// Integer coefficients of a monic integral minimal polynomial, low
    /// degree first, for reducing products without rationals.
    reducer: Option<Vec<BigInt>>,
    /// Fixed at `INITIAL_BITS`; settles most signs with small integers.
    coarse: RootApprox,
    /// λ^k to double precision, for a first guess at signs.
    float_powers: Vec<f64>,
    approx: RwLock<RootApprox>,
}

impl NumberField {
    /// Builds the field from an irreducible polynomial and a rational
    /// interval `(lo, hi]` isolating the intended real root.
    ///
    /// Irreducibility is the caller's responsibility; see
    /// [`NumberField::from_min_poly`] for a checked constructor.
    pub fn with_isolated_root(
        min_poly: RationalPolynomial,
        lo: BigRational,
        hi: BigRational,
    ) -> Result<Arc<Self>, AlgebraError> {
        let degree = min_poly.degree().ok_or(AlgebraError::ZeroPolynomial)?;
        if degree == 0 {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let min_poly = min_poly.monic();
        let chain = sturm::sturm_chain(&min_poly);
        if sturm::count_roots(&chain, &lo, &hi) != 1 {
            return Err(AlgebraError::Internal(
                "interval does not isolate a single root".into(),
            ));
        }
        let scaled = min_poly.primitive_part();
        let reducer = min_poly.integer_coeffs();
        if degree == 1 {
            let root = -min_poly.coeff(0);
            if root <= BigRational::one() {
                return Err(AlgebraError::NotExpanding(root.to_string()));
            }
            let approx = RootApprox::new(0, root.floor().to_integer(), 1);
            return Ok(Arc::new(Self {
                min_poly,
                scaled,
                degree,
                root_interval: (lo, hi),
                rational_root: Some(root),
                reducer,
                float_powers: approx.float_powers(),
                coarse: approx.clone(),
                approx: RwLock::new(approx),
            }));
        }
        // Widen (lo, hi] to grid points a, c of step 2^-INITIAL_BITS, shrinking
        // first if that takes in another root.
        let scale = BigInt::one() << INITIAL_BITS as usize;
        let on_grid = |x: &BigRational| x * BigRational::from_integer(scale.clone());
        let grid = |m: &BigInt| BigRational::new(m.clone(), scale.clone());
        let (mut lo, mut hi) = (lo, hi);
        let slo = eval_sign_rational(&scaled, &lo);
        let width = BigRational::new(BigInt::one(), scale.clone());
        let (mut a, mut c) = loop {
            let a = on_grid(&lo).floor().to_integer();
            let c = on_grid(&hi).ceil().to_integer();
            if sturm::count_roots(&chain, &grid(&a), &grid(&c)) == 1 {
                break (a, c);
            }
            if &hi - &lo < width {
                return Err(AlgebraError::Internal(
                    "roots closer than the working grid".into(),
                ));
            }
            let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
            if eval_sign_rational(&scaled, &mid) == slo {
                lo = mid;
            } else {
                hi = mid;
            }
        };
        // Grid points are never roots: the degree is at least two.
        let sa = eval_sign_dyadic(&scaled, &a, INITIAL_BITS);
        while &c - &a > BigInt::one() {
            let mid: BigInt = (&a + &c) >> 1usize;
            if eval_sign_dyadic(&scaled, &mid, INITIAL_BITS) == sa {
                a = mid;
            } else {
                c = mid;
            }
        }
        let m = a;
        let approx = RootApprox::new(INITIAL_BITS, m, degree);
        let mut field = Self {
            min_poly,
            scaled,
            degree,
            root_interval: (BigRational::zero(), BigRational::zero()),
            rational_root: None,
            reducer,
            float_powers: approx.float_powers(),
            coarse: approx.clone(),
            approx: RwLock::new(approx),
        };
        let one = BigRational::one();
        if field.sign_of_rational_minus_lambda(&one) >= 0 {
            return Err(AlgebraError::NotExpanding(format!(
                "root of {} is at most 1",
                field.min_poly
            )));
        }
        field.root_interval = field.dyadic_interval(ISOLATION_BITS as u64);
        Ok(Arc::new(field))
    }

    /// The field generated by the largest real root of an irreducible
    /// polynomial.
    pub fn from_min_poly(p: &RationalPolynomial) -> Result<Arc<Self>, AlgebraError> {
        if !factor::is_irreducible(p)? {
            return Err(AlgebraError::Reducible(p.to_string()));
        }
        let (lo, hi) = sturm::largest_real_root(p, ISOLATION_BITS)
            .ok_or_else(|| AlgebraError::NoRealRoot(p.to_string()))?;
        Self::with_isolated_root(p.clone(), lo, hi)
    }

    pub fn min_poly(&self) -> &RationalPolynomial {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Isolating interval for λ of width at most 2^-32.
    pub fn root_interval(&self) -> &(BigRational, BigRational) {
        &self.root_interval
    }

    /// True when the minimal polynomial is monic with integer coefficients.
    pub fn is_algebraic_integer(&self) -> bool {
        self.min_poly.is_integral()
    }

    /// Current enclosure of λ, refined to at least `bits` bits.
    pub fn dyadic_interval(&self, bits: u64) -> (BigRational, BigRational) {
        if let Some(r) = &self.rational_root {
            return (r.clone(), r.clone());
        }
        self.refine_to(bits);
        let a = self.approx.read().unwrap();
        let den = BigInt::one() << a.bits as usize;
        (
            BigRational::new(a.lo.clone(), den.clone()),
            BigRational::new(&a.lo + 1, den),
        )
    }

    fn sign_of_rational_minus_lambda(&self, q: &BigRational) -> i8 {
        if let Some(r) = &self.rational_root {
            return sign_of(&(q - r));
        }
        let mut bits = INITIAL_BITS;
        loop {
            let (lo, hi) = self.dyadic_interval(bits);
            if q < &lo {
                return -1;
            }
            if q > &hi {
                return 1;
            }
            bits *= 2;
        }
    }

    /// Bisects the shared enclosure until it has at least `bits` bits.
    fn refine_to(&self, bits: u64) {
        if self.approx.read().unwrap().bits >= bits {
            return;
        }
        let mut a = self.approx.write().unwrap();
        if a.bits >= bits {
            return;
        }
        let scaled = &self.scaled;
        let s_lo = eval_sign_dyadic(scaled, &a.lo, a.bits);
        let mut lo = a.lo.clone();
        let mut cur = a.bits;
        while cur < bits {
            // Split [lo, lo+1]/2^cur at (2lo+1)/2^(cur+1).
            let mid = (&lo << 1usize) + 1;
            cur += 1;
            let s = eval_sign_dyadic(scaled, &mid, cur);
            lo = if s == s_lo { mid } else { lo << 1usize };
        }
        *a = RootApprox::new(cur, lo, self.degree);
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement::from_coords(self, Vec::new())
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_rational(BigRational::one())
    }

    /// The generator λ.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        match &self.rational_root {
            Some(r) => self.from_rational(r.clone()),
            None => FieldElement::from_coords(self, vec![BigRational::zero(), BigRational::one()]),
        }
    }

    pub fn from_rational(self: &Arc<Self>, q: BigRational) -> FieldElement {
        FieldElement::from_coords(self, vec![q])
    }

    pub fn from_integer(self: &Arc<Self>, n: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    /// The image of a polynomial in λ, reduced modulo the minimal polynomial.
    pub fn from_poly(self: &Arc<Self>, p: &RationalPolynomial) -> FieldElement {
        let r = match &self.rational_root {
            Some(root) => RationalPolynomial::constant(p.eval(root)),
            None => p.rem(&self.min_poly),
        };
        FieldElement::from_coords(self, r.coeffs().to_vec())
    }

    /// Element from explicit coordinates (length at most the degree).
    pub fn element(self: &Arc<Self>, coords: Vec<BigRational>) -> Result<FieldElement, AlgebraError> {
        if coords.len() > self.degree {
            return Err(AlgebraError::CoordinateLength {
                got: coords.len(),
                degree: self.degree,
            });
        }
        Ok(FieldElement::from_coords(self, coords))
    }

    /// Sign of Σ numer[k]·λ^k for integer coordinates; zero only for the zero
    /// vector (the minimal polynomial is irreducible).
    fn sign_of_integer_coords(&self, numer: &[BigInt]) -> i8 {
        if numer.iter().all(Zero::is_zero) {
            return 0;
        }
        if self.rational_root.is_some() {
            return sign_of(&BigRational::from_integer(numer[0].clone()));
        }
        if let Some(s) = self.float_sign(numer) {
            return s;
        }
        let (lo, hi) = enclose(&self.coarse, numer);
        if lo.is_positive() {
            return 1;
        }
        if hi.is_negative() {
            return -1;
        }
        let mut want = 2 * INITIAL_BITS;
        loop {
            {
                let a = self.approx.read().unwrap();
                if a.bits >= want {
                    let (lo, hi) = enclose(&a, numer);
                    if lo.is_positive() {
                        return 1;
                    }
                    if hi.is_negative() {
                        return -1;
                    }
                    want = a.bits * 2;
                }
            }
            self.refine_to(want);
        }
    }
}

impl NumberField {
    /// Sign of Σ numer[k]·λ^k in floating point, when the sum clears a
    /// bound on the accumulated rounding error.
    ///
    /// Every term carries a relative error of a few units in the last place
    /// (coefficient conversion, the power of λ, the product), and the sum
    /// adds at most one more per term; `1e-12` of the absolute sum covers
    /// this for any degree below a few hundred.
    fn float_sign(&self, numer: &[BigInt]) -> Option<i8> {
        let (sum, mag) = self.float_value(numer)?;
        let err = mag * 1e-12;
        if sum > err {
            Some(1)
        } else if sum < -err {
            Some(-1)
        } else {
            None
        }
    }
}

impl NumberField {
    /// Σ numer[k]·λ^k in floating point, with the sum of the absolute
    /// values of the terms.
    fn float_value(&self, numer: &[BigInt]) -> Option<(f64, f64)> {
        let mut sum = 0.0f64;
        let mut mag = 0.0f64;
        for (c, p) in numer.iter().zip(&self.float_powers) {
            if c.is_zero() {
                continue;
            }
            let t = c.to_f64()? * p;
            sum += t;
            mag += t.abs();
        }
        mag.is_finite().then_some((sum, mag))
    }
}

/// Enclosure of 2^bits·Σ numer[k]·λ^k.
fn enclose(a: &RootApprox, numer: &[BigInt]) -> (BigInt, BigInt) {
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    for (c, (pl, ph)) in numer.iter().zip(a.powers.iter()) {
        if c.is_zero() {
            continue;
        }
        if c.is_positive() {
            lo += c * pl;
            hi += c * ph;
        } else {
            lo += c * ph;
            hi += c * pl;
        }
    }
    (lo, hi)
}

fn sign_of(q: &BigRational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

fn eval_sign_rational(p: &[BigInt], x: &BigRational) -> i8 {
    let v = p
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()));
    sign_of(&v)
}

/// Sign of p(m / 2^bits) for an integer polynomial p, computed as the sign
/// of Σ p_k m^k 2^(bits(n-k)).
fn eval_sign_dyadic(p: &[BigInt], m: &BigInt, bits: u64) -> i8 {
    let n = p.len() - 1;
    let mut total = BigInt::zero();
    let mut mk = BigInt::one();
    for (k, c) in p.iter().enumerate() {
        total += (c * &mk) << (bits as usize * (n - k));
        mk *= m;
    }
    if total.is_positive() {
        1
    } else if total.is_negative() {
        -1
    } else {
        0
    }
}

/// An element (Σ num[k]·λ^k) / den of a [`NumberField`], kept in lowest
/// terms with `den > 0`.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl FieldElement {
    fn from_coords(field: &Arc<NumberField>, coords: Vec<BigRational>) -> Self {
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, c| if c.denom().is_one() { acc } else { acc.lcm(c.denom()) });
        let num = coords
            .iter()
            .map(|c| if c.denom() == &den { c.numer().clone() } else { c.numer() * (&den / c.denom()) })
            .collect();
        Self::from_parts(field, num, den)
    }

    fn from_parts(field: &Arc<NumberField>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        num.resize(field.degree, BigInt::zero());
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -&*c);
        }
        if !den.is_one() {
            let g = content_gcd(&den, &num);
            if !g.is_one() {
                num.iter_mut().for_each(|c| *c = &*c / &g);
                den /= g;
            }
        }
        Self {
            field: Arc::clone(field),
            num,
            den,
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Rational coordinates over the power basis `1, λ, …`.
    pub fn coords(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// The rational value, when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    pub fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field)
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch)
        }
    }

    /// Numerators of `self` and `other` over a common denominator.
    fn combine(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| f(a, b)).collect();
            return Self::from_parts(&self.field, num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| f(&(a * &other.den), &(b * &self.den)))
            .collect();
        Self::from_parts(&self.field, num, &self.den * &other.den)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(self.combine(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(self.combine(other, |a, b| a - b))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let n = self.field.degree;
        let den = &self.den * &other.den;
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let Some(mp) = &self.field.reducer else {
            let coords = prod
                .into_iter()
                .map(|c| BigRational::new(c, den.clone()))
                .collect();
            let r = RationalPolynomial::new(coords).rem(&self.field.min_poly);
            return Ok(Self::from_coords(&self.field, r.coeffs().to_vec()));
        };
        // Reduce with the monic minimal polynomial from the top down.
        for k in (n..2 * n - 1).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (i, m) in mp[..n].iter().enumerate() {
                if !m.is_zero() {
                    prod[k - n + i] -= &c * m;
                }
            }
        }
        prod.truncate(n);
        Ok(Self::from_parts(&self.field, prod, den))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::from_parts(&self.field, num, &self.den * q.denom())
    }

    pub fn mul_lambda(&self) -> Self {
        self * &self.field.generator()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.field.one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn to_poly(&self) -> RationalPolynomial {
        RationalPolynomial::new(self.coords())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.field.degree == 1 {
            return Some(Self::from_parts(&self.field, vec![self.den.clone()], self.num[0].clone()));
        }
        let (g, s) = self.to_poly().gcd_inverse(&self.field.min_poly);
        debug_assert!(g.degree() == Some(0));
        Some(self.field.from_poly(&s))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let inv = other.inverse().ok_or(AlgebraError::DivisionByZero)?;
        self.checked_mul(&inv)
    }

    /// Sign of the real embedding: −1, 0 or +1.
    pub fn sign(&self) -> i8 {
        self.field.sign_of_integer_coords(&self.num)
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Rational enclosure of the real embedding using λ to `bits` bits.
    pub fn enclosure(&self, bits: u64) -> (BigRational, BigRational) {
        if let Some(q) = self.as_rational() {
            return (q.clone(), q);
        }
        self.field.refine_to(bits);
        let a = self.field.approx.read().unwrap();
        let (lo, hi) = enclose(&a, &self.num);
        let scale = &self.den << a.bits as usize;
        (BigRational::new(lo, scale.clone()), BigRational::new(hi, scale))
    }

    /// The unique integer `n` with `n ≤ self < n + 1`.
    pub fn floor(&self) -> BigInt {
        if let Some(q) = self.as_rational() {
            return q.floor().to_integer();
        }
        let mut bits = INITIAL_BITS;
        loop {
            let (lo, hi) = self.enclosure(bits);
            let n = lo.floor().to_integer();
            let next = BigRational::from_integer(&n + 1);
            if hi < next {
                return n;
            }
            // Exact boundary test: self == n + 1.
            let diff = self - &self.field.from_rational(next);
            if diff.is_zero() {
                return n + 1;
            }
            bits *= 2;
        }
    }

    /// Decimal expansion truncated toward zero to `digits` fractional digits;
    /// integers print without a fractional part.
    pub fn to_decimal(&self, digits: usize) -> String {
        if let Some(q) = self.as_rational() {
            if q.is_integer() {
                return q.to_integer().to_string();
            }
            return truncate_decimal(&q, digits);
        }
        let mut bits = INITIAL_BITS.max(4 * digits as u64 + 16);
        loop {
            let (lo, hi) = self.enclosure(bits);
            let a = truncate_decimal(&lo, digits);
            let b = truncate_decimal(&hi, digits);
            if a == b && (lo.is_negative() == hi.is_negative()) {
                return a;
            }
            bits *= 2;
        }
    }

    /// Nearest `f64` (for display and diagnostics only).
    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(INITIAL_BITS);
        ((lo + hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

/// gcd of `den` and every entry of `num`, on machine words while they fit.
fn content_gcd(den: &BigInt, num: &[BigInt]) -> BigInt {
    if let Some(mut g) = den.to_u64() {
        let mut small = true;
        for c in num {
            if g == 1 {
                break;
            }
            match c.magnitude().to_u64() {
                Some(0) => {}
                Some(v) => g = g.gcd(&v),
                None => {
                    small = false;
                    break;
                }
            }
        }
        if small {
            return BigInt::from(g);
        }
    }
    let mut g = den.clone();
    for c in num {
        if g.is_one() {
            break;
        }
        if !c.is_zero() {
            g = g.gcd(c);
        }
    }
    g
}

impl FieldElement {
    /// The order of `self` and `other` in floating point, when the gap
    /// clears the rounding error bound of [`NumberField::float_sign`].
    fn float_cmp(&self, other: &Self) -> Option<Ordering> {
        let (a, ma) = self.field.float_value(&self.num)?;
        let (b, mb) = self.field.float_value(&other.num)?;
        let (da, db) = (self.den.to_f64()?, other.den.to_f64()?);
        if !da.is_finite() || !db.is_finite() {
            return None;
        }
        let (x, y) = (a / da, b / db);
        let err = (ma / da + mb / db) * 1e-12;
        if x - y > err {
            Some(Ordering::Greater)
        } else if y - x > err {
            Some(Ordering::Less)
        } else {
            None
        }
    }
}

fn truncate_decimal(q: &BigRational, digits: usize) -> String {
    let neg = q.is_negative();
    let mag = q.abs();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (mag * BigRational::from_integer(scale.clone())).floor().to_integer();
    let (int, frac) = scaled.div_rem(&scale);
    let mut s = String::new();
    if neg && !scaled.is_zero() {
        s.push('-');
    }
    s.push_str(&int.to_string());
    if digits > 0 {
        s.push('.');
        let f = frac.to_string();
        s.push_str(&"0".repeat(digits - f.len()));
        s.push_str(&f);
    }
    s
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.den == other.den && self.num == other.num
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Order of the real embedding. Panics on elements of different fields.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        assert!(self.same_field(other), "field element operands from different fields");
        if self.den == other.den && self.num == other.num {
            return Ordering::Equal;
        }
        if self.field.rational_root.is_none() {
            if let Some(o) = self.float_cmp(other) {
                return o;
            }
        }
        // Denominators are positive, so compare a·d' against b·d.
        let diff: Vec<BigInt> = if self.den == other.den {
            self.num.iter().zip(&other.num).map(|(a, b)| a - b).collect()
        } else {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| a * &other.den - b * &self.den)
                .collect()
        };
        match self.field.sign_of_integer_coords(&diff) {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

macro_rules! field_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: Self) -> FieldElement {
                self.$checked(rhs).expect("field element operands from different fields")
            }
        }
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: Self) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

field_binop!(Add, add, checked_add);
field_binop!(Sub, sub, checked_sub);
field_binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: Arc::clone(&self.field),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Polynomial in `λ`, e.g. `λ + 1`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_poly().to_string();
        write!(f, "{}", s.replace('x', "λ"))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}
