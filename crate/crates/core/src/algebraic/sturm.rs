//! Real root isolation with Sturm sequences.
//!
//! Intervals produced here have dyadic endpoints, since every bisection
//! starts from a power-of-two root bound.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::RationalPolynomial;

/// Sturm chain `p, p', -rem(p, p'), ...`.
pub fn sturm_chain(p: &RationalPolynomial) -> Vec<RationalPolynomial> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

/// Positive integer multiple of `p`, low degree first.
fn integral(p: &RationalPolynomial) -> Vec<BigInt> {
    let den = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    p.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect()
}

/// Sign of `p(a/b)` for `b > 0`, via `Σ p_k a^k b^(n-k)`.
fn sign_at(p: &[BigInt], x: &BigRational) -> i8 {
    let (a, b) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut bpow = BigInt::one();
    for c in p.iter().rev() {
        acc = acc * a + c * &bpow;
        bpow *= b;
    }
    // acc = Σ p_k a^k b^(n-k) scaled by a positive power of b; only the
    // sign matters.
    if acc.is_positive() {
        1
    } else if acc.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_changes(chain: &[Vec<BigInt>], x: &BigRational) -> usize {
    let mut changes = 0;
    let mut prev = 0i8;
    for p in chain {
        let s = sign_at(p, x);
        if s != 0 {
            if prev != 0 && s != prev {
                changes += 1;
            }
            prev = s;
        }
    }
    changes
}

fn integral_chain(chain: &[RationalPolynomial]) -> Vec<Vec<BigInt>> {
    chain.iter().map(integral).collect()
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn count_roots(chain: &[RationalPolynomial], a: &BigRational, b: &BigRational) -> usize {
    let chain = integral_chain(chain);
    sign_changes(&chain, a).saturating_sub(sign_changes(&chain, b))
}

/// Smallest `e` with every complex root of `p` strictly inside `|z| < 2^e`
/// (Cauchy bound rounded up to a power of two).
pub fn root_bound_exponent(p: &RationalPolynomial) -> u32 {
    let lc = p.leading().expect("root bound of zero polynomial").abs();
    let n = p.degree().unwrap();
    let max_ratio = p.coeffs()[..n]
        .iter()
        .map(|c| c.abs() / &lc)
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    let bound = max_ratio + BigRational::one();
    let mut e = 0u32;
    let mut pow = BigRational::one();
    while pow <= bound {
        pow *= BigRational::from_integer(BigInt::from(2));
        e += 1;
    }
    e
}

/// Isolating intervals `(lo, hi]`, sorted ascending, each containing
/// exactly one real root of `p` and of width at most `2^-min_bits`.
pub fn isolate_real_roots(p: &RationalPolynomial, min_bits: u32) -> Vec<(BigRational, BigRational)> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sf = p.squarefree_part();
    let chain = integral_chain(&sturm_chain(&sf));
    let sf_int = integral(&sf);
    let e = root_bound_exponent(&sf);
    let bound = BigRational::from_integer(BigInt::one() << e as usize);
    let max_width = BigRational::new(BigInt::one(), BigInt::one() << min_bits as usize);
    let two = BigRational::from_integer(BigInt::from(2));
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sign_changes(&chain, &lo).saturating_sub(sign_changes(&chain, &hi));
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(refine(&sf_int, lo, hi, &max_width, &two));
            continue;
        }
        let mid = (&lo + &hi) / &two;
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Bisects `(lo, hi]`, which holds exactly one root of the squarefree `p`,
/// down to `max_width` using the sign of `p` alone.
fn refine(
    p: &[BigInt],
    mut lo: BigRational,
    mut hi: BigRational,
    max_width: &BigRational,
    two: &BigRational,
) -> (BigRational, BigRational) {
    let s_hi = sign_at(p, &hi);
    while &(&hi - &lo) > max_width {
        let mid = (&lo + &hi) / two;
        let s = sign_at(p, &mid);
        // A zero at `hi` or a sign change in (mid, hi) keeps the right half.
        if s_hi == 0 || (s != 0 && s != s_hi) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Isolating interval of the largest real root, if any.
pub fn largest_real_root(p: &RationalPolynomial, min_bits: u32) -> Option<(BigRational, BigRational)> {
    isolate_real_roots(p, min_bits).pop()
}
