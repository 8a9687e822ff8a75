use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Accepts `7`, `-3/4`, `0.125` and `1e-9`.
pub fn rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let bad = || format!("not a rational number: {s:?}");
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if frac.chars().any(|c| !c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let ten = BigInt::from(10);
    let exp = exp - frac.len() as i32;
    let scale = num_traits::pow(ten, exp.unsigned_abs() as usize);
    Ok(if exp >= 0 {
        BigRational::from_integer(n * scale)
    } else {
        BigRational::new(n, scale)
    })
}

pub fn positive_rational(s: &str) -> Result<BigRational, String> {
    let q = rational(s)?;
    if q <= BigRational::zero() {
        return Err(format!("must be positive: {s}"));
    }
    Ok(q)
}

pub fn nonnegative_rational(s: &str) -> Result<BigRational, String> {
    let q = rational(s)?;
    if q < BigRational::zero() {
        return Err(format!("must be nonnegative: {s}"));
    }
    Ok(q)
}

/// `a,b` pairs separated by `;` or whitespace.
pub fn pairs(s: &str) -> Result<Vec<(u32, u32)>, String> {
    let out: Result<Vec<_>, String> = s
        .split([';', ' '])
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (a, b) = p.split_once(',').ok_or_else(|| format!("expected a,b in {p:?}"))?;
            let a = a.trim().parse().map_err(|_| format!("bad integer in {p:?}"))?;
            let b = b.trim().parse().map_err(|_| format!("bad integer in {p:?}"))?;
            Ok((a, b))
        })
        .collect();
    let out = out?;
    if out.is_empty() {
        return Err("no pairs given".into());
    }
    Ok(out)
}

/// Rational rounded outward to `digits` decimals, for displaying
/// certified bounds.
pub fn decimal_bound(q: &BigRational, digits: usize, upward: bool) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = q * BigRational::from_integer(scale.clone());
    let n = if upward { scaled.ceil() } else { scaled.floor() }.to_integer();
    let neg = n < BigInt::zero();
    let mag = if neg { -n } else { n }.to_string();
    let mag = format!("{mag:0>width$}", width = digits + 1);
    let (int, frac) = mag.split_at(mag.len() - digits);
    format!("{}{int}.{frac}", if neg { "-" } else { "" })
}

pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rationals() {
        assert_eq!(rational("-3/4").unwrap(), q(-3, 4));
        assert_eq!(rational("0.125").unwrap(), q(1, 8));
        assert_eq!(rational("1e-9").unwrap(), q(1, 1_000_000_000));
        assert_eq!(rational("2.5e1").unwrap(), q(25, 1));
        assert!(rational("x").is_err());
        assert!(rational("1/0").is_err());
    }

    #[test]
    fn pair_lists() {
        assert_eq!(pairs("0,1;1,2").unwrap(), vec![(0, 1), (1, 2)]);
        assert_eq!(pairs("2,1").unwrap(), vec![(2, 1)]);
        assert!(pairs("2").is_err());
    }

    #[test]
    fn bounds() {
        assert_eq!(decimal_bound(&q(2, 3), 3, false), "0.666");
        assert_eq!(decimal_bound(&q(2, 3), 3, true), "0.667");
        assert_eq!(decimal_bound(&q(-1, 8), 2, false), "-0.13");
    }
}
