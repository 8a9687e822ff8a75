#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use substral::algebraic::{FieldElement, NumberField};
use substral::substitution::Substitution;
use substral::tiling::{fixed_tiling, GeometricSubstitution, Tiling};

/// Primitive Pisot substitutions with injective first letters and constant
/// final letters, then Thue–Morse.
pub const POOL: &[&[&str]] = &[
    &["21", "1"],
    &["21", "31", "1"],
    &["21", "3", "4", "5", "1"],
    &["121", "21"],
    &["12", "21"],
];

pub const PDS_POOL: usize = 4;

pub struct Entry {
    pub sub: Substitution,
    pub geo: GeometricSubstitution,
    pub tiling: Tiling,
    pub k: u32,
}

pub fn pool() -> &'static [Entry] {
    static CELL: OnceLock<Vec<Entry>> = OnceLock::new();
    CELL.get_or_init(|| {
        POOL.iter()
            .map(|images| {
                let sub = Substitution::from_digits(images).unwrap();
                let geo = GeometricSubstitution::new(&sub).unwrap();
                let seed = sub.admissible_seed().unwrap();
                let tiling = fixed_tiling(&geo, seed).unwrap();
                Entry { sub, geo, tiling, k: seed.k }
            })
            .collect()
    })
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational() -> impl Strategy<Value = BigRational> {
    (-40i64..40, 1i64..8).prop_map(|(n, d)| q(n, d))
}

pub fn element(f: &Arc<NumberField>, coords: &[BigRational]) -> FieldElement {
    f.element(coords[..f.degree()].to_vec()).unwrap()
}

pub fn coords() -> impl Strategy<Value = Vec<BigRational>> {
    proptest::collection::vec(rational(), 5)
}

/// Random substitutions on `1..=max_d` letters with images of length
/// `1..=max_len`.
pub fn substitution(max_d: usize, max_len: usize) -> impl Strategy<Value = Substitution> {
    (1..=max_d).prop_flat_map(move |d| {
        proptest::collection::vec(proptest::collection::vec(0..d, 1..=max_len), d)
            .prop_map(|images| Substitution::new(images).unwrap())
    })
}

pub fn is_expanding(s: &Substitution) -> bool {
    s.images().iter().any(|w| w.len() > 1)
}
