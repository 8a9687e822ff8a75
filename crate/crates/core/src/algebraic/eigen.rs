//! Characteristic polynomials and Perron–Frobenius data of nonnegative
//! integer matrices.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{factor, sturm, AlgebraError, FieldElement, NumberField, RationalPolynomial};

/// `det(xI - M)` by the Faddeev–LeVerrier recurrence.
pub fn char_poly(m: &[Vec<u64>]) -> RationalPolynomial {
    let n = m.len();
    let a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|&v| BigRational::from_integer(v.into())).collect())
        .collect();
    let mul = |x: &[Vec<BigRational>], y: &[Vec<BigRational>]| -> Vec<Vec<BigRational>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(BigRational::zero(), |s, k| s + &x[i][k] * &y[k][j]))
                    .collect()
            })
            .collect()
    };
    // coeffs[k] is the coefficient of x^(n-k).
    let mut coeffs = vec![BigRational::one()];
    let mut mk: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for k in 1..=n {
        let am = mul(&a, &mk);
        let trace = (0..n).fold(BigRational::zero(), |s, i| s + &am[i][i]);
        let c = -trace / BigRational::from_integer(BigInt::from(k as u64));
        mk = am;
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] += &c;
        }
        coeffs.push(c);
    }
    coeffs.reverse();
    RationalPolynomial::new(coeffs)
}

/// The field ℚ(λ) for the largest real root λ of `p`, built from the
/// irreducible factor of `p` vanishing at λ.
///
/// For the characteristic polynomial of a primitive matrix λ is the
/// Perron–Frobenius eigenvalue.
pub fn min_poly_of_pf_root(p: &RationalPolynomial) -> Result<Arc<NumberField>, AlgebraError> {
    let (lo, hi) = sturm::largest_real_root(p, super::ISOLATION_BITS)
        .ok_or_else(|| AlgebraError::NoRealRoot(p.to_string()))?;
    let f = factor::factor_with_root_in(p, &lo, &hi)?;
    NumberField::with_isolated_root(f, lo, hi)
}

/// Left eigenvector `ω` with `ω M = λ ω` over `field`, normalised so that
/// `ω_d = 1` and then rescaled by a positive rational to make every
/// coordinate of every entry an integer with overall content 1.
pub fn left_pf_eigenvector(
    m: &[Vec<u64>],
    field: &Arc<NumberField>,
) -> Result<Vec<FieldElement>, AlgebraError> {
    let n = m.len();
    let lambda = field.generator();
    // Row j of (M^T - λI): Σ_i M[i][j] ω_i - λ ω_j.
    let mut rows: Vec<Vec<FieldElement>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let e = field.from_integer(m[i][j] as i64);
                    if i == j {
                        &e - &lambda
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    let pivots = row_reduce(&mut rows);
    if pivots.len() + 1 != n {
        return Err(AlgebraError::Internal(format!(
            "eigenspace for the Perron-Frobenius root has dimension {}",
            n - pivots.len()
        )));
    }
    let free = (0..n).find(|c| !pivots.contains(c)).unwrap();
    let mut omega = vec![field.zero(); n];
    omega[free] = field.one();
    for (r, &c) in pivots.iter().enumerate() {
        omega[c] = -&rows[r][free];
    }
    let inv = omega[n - 1].inverse().ok_or(AlgebraError::DivisionByZero)?;
    let omega: Vec<FieldElement> = omega.iter().map(|w| w * &inv).collect();
    let omega = clear_content(&omega);
    if !omega.iter().all(|w| w.is_positive()) {
        return Err(AlgebraError::NotPrimitive);
    }
    Ok(omega)
}

/// Reduced row echelon form in place; returns pivot columns.
fn row_reduce(rows: &mut [Vec<FieldElement>]) -> Vec<usize> {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n_cols {
        if r == n_rows {
            break;
        }
        let Some(p) = (r..n_rows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().unwrap();
        rows[r] = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..n_rows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot_row.iter()) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn clear_content(v: &[FieldElement]) -> Vec<FieldElement> {
    let mut den = BigInt::one();
    for w in v {
        for c in w.coords() {
            den = den.lcm(c.denom());
        }
    }
    let mut g = BigInt::zero();
    for w in v {
        for c in w.coords() {
            g = g.gcd(&(c * BigRational::from_integer(den.clone())).to_integer());
        }
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let s = BigRational::new(den, g.abs());
    v.iter().map(|w| w.scale(&s)).collect()
}
