//! Substitution families: β-substitutions of simple Parry numbers,
//! Arnoux–Rauzy, Brun and Jacobi–Perron products, and greedy β-expansions.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::algebraic::{FieldElement, NumberField};
use crate::substitution::{Substitution, SubstitutionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("no zero or cycle in the orbit of 1 within {0} steps")]
    NotParryWithinBound(usize),
    #[error("β is not a simple Parry number")]
    NotSimpleParry,
    #[error("x must be nonnegative")]
    NegativeInput,
    #[error("word is empty")]
    EmptyWord,
    #[error("letter {0} does not occur in the word")]
    MissingLetter(usize),
    #[error("letter {letter} out of range 1..={d}")]
    LetterOutOfRange { letter: usize, d: usize },
    #[error("Brun word must contain the letter 3")]
    NoThree,
    #[error("pair {index}: need 0 <= a <= b and b != 0, got ({a}, {b})")]
    ConstraintViolation { index: usize, a: u32, b: u32 },
    #[error("no pairs given")]
    NoPairs,
    #[error("digit does not fit the alphabet")]
    DigitTooLarge,
    #[error("greedy bound failed at index {0}")]
    BoundViolated(i64),
    #[error(transparent)]
    Substitution(#[from] SubstitutionError),
}

/// The orbit of 1 under `T_β(x) = βx - ⌊βx⌋`.
#[derive(Clone, Debug)]
pub struct ParryData {
    pub field: Arc<NumberField>,
    /// `a_k = ⌊β T_β^{k-1}(1)⌋`.
    pub digits: Vec<BigInt>,
    pub simple: bool,
    /// `T_β^k(1)` for `k = 0, 1, …`; ends with 0 when simple.
    pub orbit: Vec<FieldElement>,
    /// For a non-simple Parry number: the orbit index where the cycle
    /// starts and its length.
    pub preperiod: Option<usize>,
    pub period: Option<usize>,
}

pub fn beta_orbit(field: &Arc<NumberField>, max_steps: usize) -> Result<ParryData, GeneratorError> {
    let beta = field.generator();
    let mut x = field.one();
    let mut orbit = vec![x.clone()];
    let mut digits = Vec::new();
    for _ in 0..max_steps {
        let y = &beta * &x;
        let a = y.floor();
        x = &y - &field.from_rational(a.clone().into());
        digits.push(a);
        if x.is_zero() {
            orbit.push(x);
            return Ok(ParryData {
                field: Arc::clone(field),
                digits,
                simple: true,
                orbit,
                preperiod: None,
                period: None,
            });
        }
        if let Some(j) = orbit.iter().position(|o| o == &x) {
            let period = orbit.len() - j;
            orbit.push(x);
            return Ok(ParryData {
                field: Arc::clone(field),
                digits,
                simple: false,
                orbit,
                preperiod: Some(j),
                period: Some(period),
            });
        }
        orbit.push(x.clone());
    }
    Err(GeneratorError::NotParryWithinBound(max_steps))
}

/// `φ_β(i) = (i+1) 1^{a_i}` for `i < n` and `φ_β(n) = 1^{a_n}`.
pub fn beta_substitution(p: &ParryData) -> Result<Substitution, GeneratorError> {
    if !p.simple {
        return Err(GeneratorError::NotSimpleParry);
    }
    let n = p.digits.len();
    let a: Vec<usize> = p
        .digits
        .iter()
        .map(|d| d.to_usize().ok_or(GeneratorError::DigitTooLarge))
        .collect::<Result<_, _>>()?;
    assert!(a[0] != 0 && a[n - 1] != 0, "simple Parry digits start and end nonzero");
    let images = (0..n)
        .map(|i| {
            let mut w = Vec::with_capacity(a[i] + 1);
            if i + 1 < n {
                w.push(i + 1);
            }
            w.extend(std::iter::repeat_n(0, a[i]));
            w
        })
        .collect();
    let s = Substitution::new(images)?;
    debug_assert!(s.initial_letter_injective());
    debug_assert!(s.final_letters_eventually_constant().constant);
    Ok(s)
}

/// Greedy digits `x_k`, `k = start..=last`, with
/// `x = Σ x_k β^{-k}` in the limit.
#[derive(Clone, Debug)]
pub struct GreedyExpansion {
    pub x: FieldElement,
    /// Least `N` with `x < β^{N+1}`; `None` for `x = 0`.
    pub n: Option<i64>,
    /// Index of the first digit, `min(-N, 0)`.
    pub start: i64,
    pub digits: Vec<BigInt>,
    /// Whether the remainder after the last digit is exactly zero.
    pub terminates: bool,
}

impl GreedyExpansion {
    pub fn last(&self) -> i64 {
        self.start + self.digits.len() as i64 - 1
    }
}

fn beta_power(beta: &FieldElement, inv: &FieldElement, k: i64) -> FieldElement {
    if k >= 0 {
        beta.pow(k as u32)
    } else {
        inv.pow((-k) as u32)
    }
}

/// Greedy expansion of `x ≥ 0` in base `β` up to index `m`, checking
/// `|x - Σ_{k ≤ M'} x_k β^{-k}| < β^{-M'}` at every index `M'`.
pub fn greedy_expansion(x: &FieldElement, m: i64) -> Result<GreedyExpansion, GeneratorError> {
    if x.is_negative() {
        return Err(GeneratorError::NegativeInput);
    }
    let field = x.field();
    let beta = field.generator();
    let inv = beta.inverse().expect("β is nonzero");
    let n = if x.is_zero() {
        None
    } else {
        let mut n: i64 = 0;
        while x >= &beta_power(&beta, &inv, n + 1) {
            n += 1;
        }
        while x < &beta_power(&beta, &inv, n) {
            n -= 1;
        }
        Some(n)
    };
    let start = n.map_or(0, |n| (-n).min(0));
    let mut digits = Vec::new();
    let mut z = x * &beta_power(&beta, &inv, start);
    let mut partial = field.zero();
    let mut k = start;
    while k <= m {
        let d = z.floor();
        let dd = field.from_rational(d.clone().into());
        z = &(&z - &dd) * &beta;
        partial = &partial + &(&dd * &beta_power(&beta, &inv, -k));
        let err = (x - &partial).abs();
        if err >= beta_power(&beta, &inv, -k) || d.is_negative() {
            return Err(GeneratorError::BoundViolated(k));
        }
        digits.push(d);
        k += 1;
    }
    Ok(GreedyExpansion {
        x: x.clone(),
        n,
        start,
        digits,
        terminates: z.is_zero(),
    })
}

fn check_letters(d: usize, w: &[usize]) -> Result<(), GeneratorError> {
    if w.is_empty() {
        return Err(GeneratorError::EmptyWord);
    }
    if let Some(&l) = w.iter().find(|&&l| l == 0 || l > d) {
        return Err(GeneratorError::LetterOutOfRange { letter: l, d });
    }
    Ok(())
}

fn compose_all(parts: Vec<Substitution>) -> Result<Substitution, GeneratorError> {
    let mut it = parts.into_iter();
    let mut acc = it.next().ok_or(GeneratorError::EmptyWord)?;
    for s in it {
        acc = acc.compose(&s)?;
    }
    Ok(acc)
}

/// `σ_{w_1} ∘ ⋯ ∘ σ_{w_k}` with `σ_i(i) = i`, `σ_i(j) = ji`. The word is
/// 1-based and must use every letter.
pub fn arnoux_rauzy(d: usize, w: &[usize]) -> Result<Substitution, GeneratorError> {
    check_letters(d, w)?;
    if let Some(missing) = (1..=d).find(|l| !w.contains(l)) {
        return Err(GeneratorError::MissingLetter(missing));
    }
    let sigma = |i: usize| {
        Substitution::new((0..d).map(|j| if j == i { vec![i] } else { vec![j, i] }).collect())
    };
    let s = compose_all(w.iter().map(|&l| sigma(l - 1)).collect::<Result<_, _>>()?)?;
    debug_assert!(s.initial_letter_injective());
    debug_assert_eq!(s.final_letters_eventually_constant().power, Some(1));
    Ok(s)
}

/// Product of Brun maps over `{1, 2, 3}`; the word must contain a 3.
pub fn brun(w: &[usize]) -> Result<Substitution, GeneratorError> {
    check_letters(3, w)?;
    if !w.contains(&3) {
        return Err(GeneratorError::NoThree);
    }
    let maps = [
        Substitution::from_digits(&["1", "2", "32"])?,
        Substitution::from_digits(&["1", "3", "23"])?,
        Substitution::from_digits(&["2", "3", "13"])?,
    ];
    compose_all(w.iter().map(|&l| maps[l - 1].clone()).collect())
}

/// `σ_{a_1,b_1} ∘ ⋯ ∘ σ_{a_n,b_n}` with `σ_{a,b}: 1 ↦ 3, 2 ↦ 13^a,
/// 3 ↦ 23^b`.
pub fn jacobi_perron(pairs: &[(u32, u32)]) -> Result<Substitution, GeneratorError> {
    if pairs.is_empty() {
        return Err(GeneratorError::NoPairs);
    }
    let mut parts = Vec::with_capacity(pairs.len());
    for (index, &(a, b)) in pairs.iter().enumerate() {
        if a > b || b == 0 {
            return Err(GeneratorError::ConstraintViolation { index: index + 1, a, b });
        }
        let mut two = vec![0];
        two.extend(std::iter::repeat_n(2, a as usize));
        let mut three = vec![1];
        three.extend(std::iter::repeat_n(2, b as usize));
        parts.push(Substitution::new(vec![vec![2], two, three])?);
    }
    compose_all(parts)
}

/// Parses a 1-based digit word such as `"123"` or `"1.2.3"`.
pub fn parse_word(s: &str) -> Option<Vec<usize>> {
    let parts: Vec<&str> = if s.contains('.') {
        s.split('.').collect()
    } else {
        s.split("").filter(|p| !p.is_empty()).collect()
    };
    parts.iter().map(|p| p.trim().parse::<usize>().ok()).collect()
}
