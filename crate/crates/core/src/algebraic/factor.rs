//! Factorization over ℚ: square-free decomposition, rational-root
//! stripping, then Berlekamp factorization modulo a small prime, Hensel
//! lifting, and exhaustive recombination of the lifted factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{AlgebraError, RationalPolynomial};

/// Largest degree accepted by [`factor`].
pub const MAX_FACTOR_DEGREE: usize = 12;

/// Factors `p` into monic irreducible factors over ℚ with multiplicities,
/// sorted by degree then coefficients.
pub fn factor(p: &RationalPolynomial) -> Result<Vec<(RationalPolynomial, u32)>, AlgebraError> {
    let n = p.degree().ok_or(AlgebraError::ZeroPolynomial)?;
    if n > MAX_FACTOR_DEGREE {
        return Err(AlgebraError::DegreeTooLarge {
            degree: n,
            max: MAX_FACTOR_DEGREE,
        });
    }
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(&p.monic()) {
        for f in factor_squarefree_primitive(&part.primitive_part()) {
            let q = RationalPolynomial::from_integers(f).monic();
            out.push((q, mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    Ok(out)
}

/// True iff `p` (nonconstant) is irreducible over ℚ.
pub fn is_irreducible(p: &RationalPolynomial) -> Result<bool, AlgebraError> {
    let f = factor(p)?;
    Ok(f.len() == 1 && f[0].1 == 1)
}

/// Yun's algorithm on a monic polynomial.
fn squarefree_decomposition(f: &RationalPolynomial) -> Vec<(RationalPolynomial, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let a = f.gcd(&df);
    let mut b = f.div_rem(&a).0;
    let mut c = df.div_rem(&a).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let ai = b.gcd(&d);
        b = b.div_rem(&ai).0;
        c = d.div_rem(&ai).0;
        d = &c - &b.derivative();
        if ai.degree().unwrap_or(0) > 0 {
            out.push((ai, i));
        }
        i += 1;
    }
    out
}

/// Factors a square-free primitive integer polynomial with positive
/// leading coefficient.
fn factor_squarefree_primitive(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    if lc.is_one() {
        return factor_monic(f.to_vec());
    }
    // g(y) = lc^(n-1) f(y / lc) is monic; factors map back via y = lc·x.
    let g: Vec<BigInt> = (0..=n)
        .map(|i| &f[i] * num_traits::pow(lc.clone(), n - i) / &lc)
        .collect();
    factor_monic(g)
        .into_iter()
        .map(|h| {
            let scaled: Vec<BigInt> = h
                .iter()
                .enumerate()
                .map(|(i, c)| c * num_traits::pow(lc.clone(), i))
                .collect();
            RationalPolynomial::from_integers(scaled).primitive_part()
        })
        .collect()
}

fn factor_monic(mut f: Vec<BigInt>) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    // x | f
    while f.len() > 1 && f[0].is_zero() {
        f.remove(0);
        out.push(vec![BigInt::zero(), BigInt::one()]);
    }
    for r in small_integer_root_candidates(&f[0]) {
        while f.len() > 1 {
            let lin = vec![-r.clone(), BigInt::one()];
            match div_exact_monic(&f, &lin) {
                Some(q) => {
                    out.push(lin);
                    f = q;
                }
                None => break,
            }
        }
    }
    if f.len() > 1 {
        out.extend(zassenhaus(&f));
    }
    out
}

/// Divisors of `a0` (both signs) when `|a0|` is small enough to enumerate.
fn small_integer_root_candidates(a0: &BigInt) -> Vec<BigInt> {
    let Some(m) = a0.abs().to_u64().filter(|&m| m > 0 && m <= 1_000_000) else {
        return Vec::new();
    };
    let mut ds = Vec::new();
    let mut k = 1u64;
    while k * k <= m {
        if m % k == 0 {
            ds.push(k);
            if k != m / k {
                ds.push(m / k);
            }
        }
        k += 1;
    }
    ds.sort_unstable();
    ds.into_iter()
        .flat_map(|d| [BigInt::from(d), -BigInt::from(d)])
        .collect()
}

/// Exact quotient `f / g` over ℤ for monic `g`, if the remainder vanishes.
fn div_exact_monic(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let dg = g.len() - 1;
    if f.len() < g.len() {
        return None;
    }
    let mut rem = f.to_vec();
    let mut q = vec![BigInt::zero(); f.len() - dg];
    for k in (0..q.len()).rev() {
        let c = rem[k + dg].clone();
        if c.is_zero() {
            continue;
        }
        for (i, gi) in g.iter().enumerate() {
            rem[k + i] -= &c * gi;
        }
        q[k] = c;
    }
    rem[..dg].iter().all(Zero::is_zero).then_some(q)
}

// ---------------------------------------------------------------------
// Arithmetic in F_p[x]; coefficients in [0, p), lowest degree first.

type ModPoly = Vec<u64>;

fn trim(mut a: ModPoly) -> ModPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let (mut base, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn mp_sub(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn mp_add(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn mp_mul(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn mp_divrem(a: &ModPoly, b: &ModPoly, p: u64) -> (ModPoly, ModPoly) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let inv = inv_mod(b[db], p);
    let mut rem = a.clone();
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db] * inv % p;
        if c == 0 {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] = (rem[k + i] + p - c * bi % p) % p;
        }
        q[k] = c;
    }
    rem.truncate(db);
    (trim(q), trim(rem))
}

fn mp_monic(a: &ModPoly, p: u64) -> ModPoly {
    let inv = inv_mod(*a.last().unwrap(), p);
    a.iter().map(|c| c * inv % p).collect()
}

fn mp_gcd(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = mp_divrem(&x, &y, p).1;
        x = y;
        y = r;
    }
    if x.is_empty() {
        x
    } else {
        mp_monic(&x, p)
    }
}

/// `(s, t)` with `s·a + t·b = 1` in F_p[x] for coprime `a`, `b`.
fn mp_bezout(a: &ModPoly, b: &ModPoly, p: u64) -> (ModPoly, ModPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = mp_divrem(&r0, &r1, p);
        let s = mp_sub(&s0, &mp_mul(&q, &s1, p), p);
        let t = mp_sub(&t0, &mp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = inv_mod(r0[0], p);
    let scale = |v: &ModPoly| trim(v.iter().map(|c| c * inv % p).collect());
    (scale(&s0), scale(&t0))
}

fn mp_derivative(a: &ModPoly, p: u64) -> ModPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| (k as u64 % p) * c % p)
            .collect(),
    )
}

fn reduce_mod(f: &[BigInt], p: u64) -> ModPoly {
    let pb = BigInt::from(p);
    trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

/// Berlekamp factorization of a monic square-free polynomial over F_p.
fn berlekamp(f: &ModPoly, p: u64) -> Vec<ModPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    // Rows of Q: x^(i·p) mod f.
    let xp = {
        let mut result = vec![1u64];
        let mut base = vec![0u64, 1];
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                result = mp_divrem(&mp_mul(&result, &base, p), f, p).1;
            }
            base = mp_divrem(&mp_mul(&base, &base, p), f, p).1;
            e >>= 1;
        }
        result
    };
    let mut rows = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for _ in 0..n {
        let mut row = cur.clone();
        row.resize(n, 0);
        rows.push(row);
        cur = mp_divrem(&mp_mul(&cur, &xp, p), f, p).1;
    }
    // Null space of (Q^T - I): m[j][i] = Q[i][j] - δ_ij.
    let mut m: Vec<Vec<u64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| (rows[i][j] + if i == j { p - 1 } else { 0 }) % p)
                .collect()
        })
        .collect();
    let basis = null_space_mod(&mut m, p);
    let r = basis.len();
    let mut factors = vec![f.clone()];
    for v in basis.iter() {
        if factors.len() == r {
            break;
        }
        let v = trim(v.clone());
        if v.len() <= 1 {
            continue;
        }
        let mut next = Vec::new();
        for g in factors {
            if g.len() <= 2 {
                next.push(g);
                continue;
            }
            let mut rest = g;
            for s in 0..p {
                if rest.len() <= 2 {
                    break;
                }
                let shifted = mp_sub(&v, &vec![s], p);
                let h = mp_gcd(&rest, &shifted, p);
                if h.len() > 1 && h.len() < rest.len() {
                    rest = mp_divrem(&rest, &h, p).0;
                    next.push(h);
                }
            }
            next.push(mp_monic(&rest, p));
        }
        factors = next;
    }
    factors
}

/// Basis of the null space of a square matrix over F_p (destroys `m`).
fn null_space_mod(m: &mut [Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, pr);
        let inv = inv_mod(m[row][col], p);
        for x in m[row].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = m[row].clone();
        for (r, line) in m.iter_mut().enumerate() {
            if r != row && line[col] != 0 {
                let factor = line[col];
                for (x, y) in line.iter_mut().zip(&pivot) {
                    *x = (*x + p - factor * y % p) % p;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - m[r][fc]) % p;
            }
            v
        })
        .collect()
}

// ---------------------------------------------------------------------
// Hensel lifting and recombination.

fn symmetric(c: &BigInt, modulus: &BigInt) -> BigInt {
    let r = c.mod_floor(modulus);
    if &r * 2 > *modulus {
        r - modulus
    } else {
        r
    }
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn to_z(a: &ModPoly) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts `f ≡ g0·h0 (mod p)` to `f ≡ g·h (mod p^k)` with `g`, `h` monic.
fn hensel_lift(f: &[BigInt], g0: &ModPoly, h0: &ModPoly, p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (s, t) = mp_bezout(g0, h0, p);
    let pb = BigInt::from(p);
    let modulus = num_traits::pow(pb.clone(), k as usize);
    let mut g = to_z(g0);
    let mut h = to_z(h0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let gh = zmul(&g, &h);
        let diff: Vec<BigInt> = (0..f.len())
            .map(|i| {
                let fi = f[i].mod_floor(&modulus);
                let ghi = gh.get(i).cloned().unwrap_or_default();
                fi - ghi
            })
            .collect();
        let e: ModPoly = trim(
            diff.iter()
                .map(|c| {
                    debug_assert!((c % &pj).is_zero());
                    (c / &pj).mod_floor(&pb).to_u64().unwrap()
                })
                .collect(),
        );
        if !e.is_empty() {
            let te = mp_mul(&t, &e, p);
            let (q, dg) = mp_divrem(&te, g0, p);
            let dh = mp_divrem(&mp_add(&mp_mul(&s, &e, p), &mp_mul(&q, h0, p), p), h0, p).1;
            for (i, c) in dg.iter().enumerate() {
                g[i] += &pj * c;
            }
            for (i, c) in dh.iter().enumerate() {
                h[i] += &pj * c;
            }
        }
        pj *= &pb;
    }
    let reduce = |v: Vec<BigInt>| v.iter().map(|c| c.mod_floor(&modulus)).collect();
    (reduce(g), reduce(h))
}

fn lift_all(f: &[BigInt], factors: &[ModPoly], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        let modulus = num_traits::pow(BigInt::from(p), k as usize);
        return vec![f.iter().map(|c| c.mod_floor(&modulus)).collect()];
    }
    let rest = factors[1..]
        .iter()
        .fold(vec![1u64], |acc, g| mp_mul(&acc, g, p));
    let (g, h) = hensel_lift(f, &factors[0], &rest, p, k);
    let mut out = vec![g];
    out.extend(lift_all(&h, &factors[1..], p, k));
    out
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..2000).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    // Choose, among a few admissible primes, the one with fewest factors.
    let mut best: Option<(u64, Vec<ModPoly>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        let fp = reduce_mod(f, p);
        if fp.len() != f.len() {
            continue;
        }
        if mp_gcd(&fp, &mp_derivative(&fp, p), p).len() != 1 {
            continue;
        }
        let facs = berlekamp(&fp, p);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (p, modular) = best.expect("no admissible prime for square-free polynomial");
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    // Mignotte: every coefficient of a monic factor is at most 2^n·‖f‖₂.
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = (norm2 << n) * 2;
    let mut k = 1u32;
    let pb = BigInt::from(p);
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let mut lifted: Vec<Vec<BigInt>> = lift_all(f, &modular, p, k);
    let mut remaining = f.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for combo in combinations(lifted.len(), size) {
            let prod = combo
                .iter()
                .fold(vec![BigInt::one()], |acc, &i| zmul(&acc, &lifted[i]));
            let cand: Vec<BigInt> = prod.iter().map(|c| symmetric(c, &pk)).collect();
            if let Some(q) = div_exact_monic(&remaining, &cand) {
                hit = Some((combo, cand, q));
                break;
            }
        }
        match hit {
            Some((combo, cand, q)) => {
                found.push(cand);
                remaining = q;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, v)| v)
                    .collect();
            }
            None => size += 1,
        }
    }
    if remaining.len() > 1 {
        found.push(remaining);
    }
    found
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The monic irreducible factor of `p` having a root in `(lo, hi]`, given
/// that this interval isolates a root of `p`.
pub fn factor_with_root_in(
    p: &RationalPolynomial,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<RationalPolynomial, AlgebraError> {
    for (f, _) in factor(p)? {
        let chain = super::sturm::sturm_chain(&f);
        if super::sturm::count_roots(&chain, lo, hi) == 1 {
            return Ok(f);
        }
    }
    Err(AlgebraError::Internal(
        "isolating interval matches no irreducible factor".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RationalPolynomial {
        s.parse().unwrap()
    }

    fn factors_of(s: &str) -> Vec<String> {
        factor(&p(s))
            .unwrap()
            .into_iter()
            .map(|(f, m)| if m == 1 { f.to_string() } else { format!("({f})^{m}") })
            .collect()
    }

    #[test]
    fn plastic_beta_char_poly_splits() {
        assert_eq!(factors_of("x^5 - x^4 - 1"), ["x^2 - x + 1", "x^3 - x - 1"]);
    }

    #[test]
    fn irreducibles_stay_whole() {
        for s in ["x^2 - x - 1", "x^3 - x^2 - x - 1", "x^3 - x - 1", "x^4 + 1", "x^2 - x - 3"] {
            assert!(is_irreducible(&p(s)).unwrap(), "{s}");
        }
    }

    #[test]
    fn multiplicities_and_linear_parts() {
        assert_eq!(factors_of("x^3 - 2*x^2"), ["x - 2", "(x)^2"]);
        assert_eq!(factors_of("x^3 - x^2 - 3*x + 3"), ["x - 1", "x^2 - 3"]);
    }

    #[test]
    fn recombination_needed() {
        // x^4 + 1 splits into linear/quadratic factors mod every prime.
        let q = &p("x^4 + 1") * &p("x^4 - 2*x^3 + 2");
        assert_eq!(factors_of(&q.to_string()), ["x^4 + 1", "x^4 - 2*x^3 + 2"]);
        let r = &(&p("x^2 - x - 1") * &p("x^3 - x - 1")) * &(&p("x^2 + x + 1") * &p("x^4 + 1"));
        assert_eq!(factors_of(&r.to_string()).len(), 4);
    }

    #[test]
    fn non_monic_input() {
        assert_eq!(factors_of("6*x^2 - x - 1"), ["x - 1/2", "x + 1/3"]);
        assert_eq!(factors_of("4*x^4 - 1"), ["x^2 - 1/2", "x^2 + 1/2"]);
    }

    #[test]
    fn degree_cap_enforced() {
        let q = p("x^13 - x - 1");
        assert!(matches!(factor(&q), Err(AlgebraError::DegreeTooLarge { degree: 13, .. })));
    }

    #[test]
    fn product_of_factors_reconstructs_input() {
        let inputs = [
            "x^6 - 1",
            "x^8 - 3*x^7 + x^5 - 2*x + 1",
            "x^12 - 1",
            "x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1",
        ];
        for s in inputs {
            let q = p(s);
            let prod = factor(&q).unwrap().into_iter().fold(RationalPolynomial::one(), |acc, (f, m)| {
                &acc * &f.pow(m)
            });
            assert_eq!(prod, q.monic(), "{s}");
            for (f, _) in factor(&q).unwrap() {
                assert!(is_irreducible(&f).unwrap());
            }
        }
    }
}
