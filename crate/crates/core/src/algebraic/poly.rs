//! Dense univariate polynomials over ℚ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

/// Polynomial with rational coefficients, lowest degree first.
///
/// The zero polynomial has an empty coefficient vector; otherwise the last
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·x^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }

    /// Integer coefficients, if every coefficient is an integer.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Scales to the monic associate. Panics on the zero polynomial.
    pub fn monic(&self) -> Self {
        let lc = self.leading().expect("monic of zero polynomial").clone();
        Self::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    /// The primitive integer polynomial with positive leading coefficient
    /// that is a rational multiple of `self`.
    pub fn primitive_part(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        for c in ints.iter_mut() {
            *c = &*c / &content * &sign;
        }
        ints
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / lc;
            if q.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * d;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Returns `(g, s)` with `g = gcd(self, modulus)` monic and
    /// `s·self ≡ g (mod modulus)`.
    pub fn gcd_inverse(&self, modulus: &Self) -> (Self, Self) {
        let (mut r0, mut r1) = (modulus.clone(), self.rem(modulus));
        let (mut s0, mut s1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        match r0.leading().cloned() {
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv))
            }
            None => (r0, s0),
        }
    }

    /// Square-free part `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: Self) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: Self) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: Self) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Renders in the CLI grammar, highest degree first: `x^3 - x - 1`,
/// `3/2*x^2 + 1`.
impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{}*{var}", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

/// Parses sums of terms `c*x^k`, e.g. `x^3-x-1`, `2*x^2 + 1/2`, `3x`.
impl FromStr for RationalPolynomial {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |msg: &str| AlgebraError::PolynomialSyntax(format!("{msg} in {s:?}"));
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(err("empty polynomial"));
        }
        let mut coeffs: Vec<BigRational> = Vec::new();
        let bytes = text.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = BigRational::one();
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(err("expected '+' or '-'"));
            }
            let end = text[pos..]
                .find(['+', '-'])
                .map_or(text.len(), |e| pos + e);
            let term = &text[pos..end];
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let (coef, power) = parse_term(term).ok_or_else(|| err("malformed term"))?;
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigRational::zero());
            }
            coeffs[power] += sign * coef;
            pos = end;
        }
        Ok(Self::new(coeffs))
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

fn parse_term(term: &str) -> Option<(BigRational, usize)> {
    let Some(xpos) = term.find('x') else {
        return Some((parse_rational(term)?, 0));
    };
    let head = term[..xpos].trim_end_matches('*');
    let coef = if head.is_empty() {
        BigRational::one()
    } else {
        if term[..xpos].ends_with("**") {
            return None;
        }
        parse_rational(head)?
    };
    let tail = &term[xpos + 1..];
    let power = if tail.is_empty() {
        1
    } else {
        tail.strip_prefix('^')?.parse::<usize>().ok()?
    };
    Some((coef, power))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RationalPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["x^3 - x - 1", "x - 2", "3/2*x^2 + 1", "-x^5 + 7", "0", "2*x"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("x^3-x-1"), p("x^3 - x - 1"));
        assert_eq!(p("3x+1"), p("3*x + 1"));
        assert_eq!(p("x^2-x-1").coeffs().len(), 3);
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "x^", "x^-1", "1/0", "2**x", "y+1", "x+"] {
            assert!(s.parse::<RationalPolynomial>().is_err(), "{s}");
        }
    }

    #[test]
    fn division_and_gcd() {
        let a = p("x^3 - x^2 - x + 1"); // (x-1)^2 (x+1)
        let (q, r) = a.div_rem(&p("x - 1"));
        assert_eq!(q, p("x^2 - 1"));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&a.derivative()), p("x - 1"));
        assert_eq!(a.squarefree_part(), p("x^2 - 1"));
    }

    #[test]
    fn inverse_modulo() {
        let m = p("x^2 - x - 1");
        let (g, s) = p("x").gcd_inverse(&m);
        assert!(g.is_one_poly());
        assert_eq!((&s * &p("x")).rem(&m), RationalPolynomial::one());
    }

    #[test]
    fn primitive_part_clears_denominators() {
        assert_eq!(
            p("1/2*x^2 - 3/4").primitive_part(),
            vec![BigInt::from(-3), BigInt::zero(), BigInt::from(2)]
        );
    }

    impl RationalPolynomial {
        fn is_one_poly(&self) -> bool {
            *self == RationalPolynomial::one()
        }
    }
}
