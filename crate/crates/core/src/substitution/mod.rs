//! Substitutions on the alphabet `{1, …, d}` and their combinatorial
//! properties.
//!
//! Letters are stored 0-based (`0..d`); they are printed 1-based.

mod matrix;
mod text;

pub use matrix::AbelianMatrix;
pub use text::{parse_substitution, write_substitution, ParsedSubstitution};

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::algebraic::{self, AlgebraError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubstitutionError {
    #[error("alphabet must be nonempty")]
    EmptyAlphabet,
    #[error("line {line}: empty image for letter {letter}")]
    EmptyImage { line: usize, letter: String },
    #[error("line {line}: unknown letter {letter:?} in image")]
    UnknownLetter { line: usize, letter: String },
    #[error("line {line}: duplicate rule for letter {letter:?}")]
    DuplicateRule { line: usize, letter: String },
    #[error("letter {0:?} appears in an image but has no rule")]
    MissingRule(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("letter {letter} out of range for alphabet of size {d}")]
    LetterOutOfRange { letter: usize, d: usize },
    #[error("alphabet sizes differ: {0} and {1}")]
    AlphabetMismatch(usize, usize),
    #[error("power must be positive")]
    ZeroPower,
    #[error("substitution is not primitive")]
    NotPrimitive,
    #[error("substitution does not expand (all images have length 1)")]
    NotExpanding,
    #[error("no admissible seed with k <= {0}")]
    NoSeed(u32),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A morphism `a ↦ φ(a)` with nonempty images.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Substitution {
    images: Vec<Vec<usize>>,
}

impl Substitution {
    pub fn new(images: Vec<Vec<usize>>) -> Result<Self, SubstitutionError> {
        let d = images.len();
        if d == 0 {
            return Err(SubstitutionError::EmptyAlphabet);
        }
        for (a, w) in images.iter().enumerate() {
            if w.is_empty() {
                return Err(SubstitutionError::EmptyImage {
                    line: a + 1,
                    letter: (a + 1).to_string(),
                });
            }
            if let Some(&l) = w.iter().find(|&&l| l >= d) {
                return Err(SubstitutionError::LetterOutOfRange { letter: l + 1, d });
            }
        }
        Ok(Self { images })
    }

    /// Builds from 1-based digit strings, e.g. `["21", "1"]`. Only for
    /// alphabets of size at most 9.
    pub fn from_digits(images: &[&str]) -> Result<Self, SubstitutionError> {
        let mut out = Vec::with_capacity(images.len());
        for (k, s) in images.iter().enumerate() {
            let mut w = Vec::with_capacity(s.len());
            for c in s.chars() {
                match c.to_digit(10) {
                    Some(v) if v >= 1 => w.push(v as usize - 1),
                    _ => {
                        return Err(SubstitutionError::UnknownLetter {
                            line: k + 1,
                            letter: c.to_string(),
                        })
                    }
                }
            }
            out.push(w);
        }
        Self::new(out)
    }

    pub fn identity(d: usize) -> Self {
        Self {
            images: (0..d).map(|a| vec![a]).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Vec<usize>] {
        &self.images
    }

    pub fn image(&self, a: usize) -> &[usize] {
        &self.images[a]
    }

    pub fn apply(&self, word: &[usize]) -> Vec<usize> {
        word.iter().flat_map(|&a| self.images[a].iter().copied()).collect()
    }

    /// `self ∘ other`: apply `other` first, then `self` letterwise.
    pub fn compose(&self, other: &Self) -> Result<Self, SubstitutionError> {
        if self.size() != other.size() {
            return Err(SubstitutionError::AlphabetMismatch(self.size(), other.size()));
        }
        Ok(Self {
            images: other.images.iter().map(|w| self.apply(w)).collect(),
        })
    }

    pub fn power(&self, k: u32) -> Result<Self, SubstitutionError> {
        if k == 0 {
            return Err(SubstitutionError::ZeroPower);
        }
        let mut out = self.clone();
        for _ in 1..k {
            out = self.compose(&out)?;
        }
        Ok(out)
    }

    pub fn abelianization(&self) -> AbelianMatrix {
        let d = self.size();
        let mut rows = vec![vec![0u64; d]; d];
        for (j, w) in self.images.iter().enumerate() {
            for &i in w {
                rows[i][j] += 1;
            }
        }
        AbelianMatrix::new(rows)
    }

    pub fn is_primitive(&self) -> Option<u32> {
        self.abelianization().is_primitive()
    }

    pub fn first_letter_map(&self) -> Vec<usize> {
        self.images.iter().map(|w| w[0]).collect()
    }

    pub fn last_letter_map(&self) -> Vec<usize> {
        self.images.iter().map(|w| *w.last().unwrap()).collect()
    }

    pub fn initial_letter_injective(&self) -> bool {
        let firsts: BTreeSet<usize> = self.first_letter_map().into_iter().collect();
        firsts.len() == self.size()
    }

    /// Whether some power of `self` is constant on final letters.
    ///
    /// With `f(a)` the last letter of `φ(a)`, this holds iff the functional
    /// graph of `f` has a single cycle and that cycle is a fixed point `c`.
    pub fn final_letters_eventually_constant(&self) -> FinalLetters {
        let f = self.last_letter_map();
        let d = f.len();
        let fixed: Vec<usize> = (0..d).filter(|&a| f[a] == a).collect();
        let no = FinalLetters {
            constant: false,
            power: None,
            letter: None,
        };
        if fixed.len() != 1 {
            return no;
        }
        let c = fixed[0];
        // Every orbit must reach c; if one enters another cycle it fails.
        let mut depth = 0usize;
        for a in 0..d {
            let mut x = a;
            let mut steps = 0;
            while x != c {
                x = f[x];
                steps += 1;
                if steps > d {
                    return no;
                }
            }
            depth = depth.max(steps);
        }
        FinalLetters {
            constant: true,
            power: Some(depth.max(1) as u32),
            letter: Some(c),
        }
    }

    /// The two-letter words of the language.
    pub fn two_letter_factors(&self) -> Result<BTreeSet<(usize, usize)>, SubstitutionError> {
        if self.is_primitive().is_none() {
            return Err(SubstitutionError::NotPrimitive);
        }
        let mut set = BTreeSet::new();
        for w in &self.images {
            for p in w.windows(2) {
                set.insert((p[0], p[1]));
            }
        }
        let mut todo: Vec<(usize, usize)> = set.iter().copied().collect();
        while let Some((a, b)) = todo.pop() {
            let w = self.apply(&[a, b]);
            for p in w.windows(2) {
                if set.insert((p[0], p[1])) {
                    todo.push((p[0], p[1]));
                }
            }
        }
        Ok(set)
    }

    /// All words of length `1..=n` occurring in the language.
    pub fn factors(&self, n: usize) -> Result<BTreeSet<Vec<usize>>, SubstitutionError> {
        let pairs = self.two_letter_factors()?;
        if self.images.iter().all(|w| w.len() == 1) {
            return Err(SubstitutionError::NotExpanding);
        }
        // Iterate until every φ^m(a) has length at least n; then each factor
        // of length ≤ n sits inside some φ^m(a)φ^m(b) with ab in the language.
        let mut blocks: Vec<Vec<usize>> = (0..self.size()).map(|a| vec![a]).collect();
        while blocks.iter().any(|w| w.len() < n) {
            blocks = blocks.iter().map(|w| self.apply(w)).collect();
        }
        let mut out = BTreeSet::new();
        for &(a, b) in &pairs {
            let mut w = blocks[a].clone();
            w.extend_from_slice(&blocks[b]);
            for len in 1..=n {
                for f in w.windows(len) {
                    out.insert(f.to_vec());
                }
            }
        }
        Ok(out)
    }

    /// Complexity `p(m)` for `m = 1..=n`.
    pub fn complexity(&self, n: usize) -> Result<Vec<usize>, SubstitutionError> {
        let fs = self.factors(n)?;
        let mut counts = vec![0usize; n];
        for w in fs {
            counts[w.len() - 1] += 1;
        }
        Ok(counts)
    }

    /// Smallest `k`, then lexicographically smallest `(a, b)`, with
    /// `φ^k(a)` starting with `a`, `φ^k(b)` ending with `b` and `ba` in the
    /// language.
    pub fn admissible_seed(&self) -> Result<Seed, SubstitutionError> {
        let pairs = self.two_letter_factors()?;
        let g = self.first_letter_map();
        let f = self.last_letter_map();
        let d = self.size();
        let mut gk: Vec<usize> = (0..d).collect();
        let mut fk: Vec<usize> = (0..d).collect();
        let limit = seed_search_limit(d);
        for k in 1..=limit {
            gk = gk.iter().map(|&x| g[x]).collect();
            fk = fk.iter().map(|&x| f[x]).collect();
            for a in (0..d).filter(|&a| gk[a] == a) {
                for b in (0..d).filter(|&b| fk[b] == b) {
                    if pairs.contains(&(b, a)) {
                        return Ok(Seed { k, a, b });
                    }
                }
            }
        }
        Err(SubstitutionError::NoSeed(limit))
    }

    /// Checks a user-supplied seed against the three admissibility
    /// conditions.
    pub fn verify_seed(&self, seed: Seed) -> Result<bool, SubstitutionError> {
        let d = self.size();
        if seed.a >= d || seed.b >= d {
            return Err(SubstitutionError::LetterOutOfRange {
                letter: seed.a.max(seed.b) + 1,
                d,
            });
        }
        if seed.k == 0 {
            return Err(SubstitutionError::ZeroPower);
        }
        let pairs = self.two_letter_factors()?;
        let g = self.first_letter_map();
        let f = self.last_letter_map();
        let (mut x, mut y) = (seed.a, seed.b);
        for _ in 0..seed.k {
            x = g[x];
            y = f[y];
        }
        Ok(x == seed.a && y == seed.b && pairs.contains(&(seed.b, seed.a)))
    }

    /// Non-periodicity evidence. Irrational inflation rules out periodic
    /// tilings; for an integer inflation only bounded complexity
    /// `p(n) ≤ n` for some `n ≤ window` is detected.
    pub fn periodicity_heuristic(&self, window: usize) -> Result<Periodicity, SubstitutionError> {
        if self.is_primitive().is_none() {
            return Err(SubstitutionError::NotPrimitive);
        }
        let cp = algebraic::char_poly(self.abelianization().rows());
        let field = algebraic::min_poly_of_pf_root(&cp)?;
        self.periodicity_given_degree(field.degree(), window)
    }

    /// [`Substitution::periodicity_heuristic`] for a primitive `φ` whose
    /// inflation has minimal polynomial of degree `degree`.
    pub(crate) fn periodicity_given_degree(&self, degree: usize, window: usize) -> Result<Periodicity, SubstitutionError> {
        if degree >= 2 {
            return Ok(Periodicity::Yes);
        }
        let p = self.complexity(window)?;
        match p.iter().enumerate().find(|(i, &c)| c <= i + 1) {
            Some((i, _)) => Ok(Periodicity::PeriodicDetected { length: i + 1 }),
            None => Ok(Periodicity::Unknown),
        }
    }
}

fn seed_search_limit(d: usize) -> u32 {
    // lcm of cycle lengths of two maps on d points, plus the depth, is far
    // below this for any desk-scale alphabet.
    let mut l = 1u64;
    for n in 1..=d as u64 {
        l = num_integer::lcm(l, n);
        if l > 1 << 16 {
            break;
        }
    }
    (l * l + d as u64).min(1 << 20) as u32
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FinalLetters {
    pub constant: bool,
    /// Least `k` with `φ^k` constant on final letters.
    pub power: Option<u32>,
    /// The common final letter `c` (0-based).
    pub letter: Option<usize>,
}

/// `(k, a, b)` with letters 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Seed {
    pub k: u32,
    pub a: usize,
    pub b: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Periodicity {
    Yes,
    PeriodicDetected { length: usize },
    Unknown,
}

impl Periodicity {
    pub fn label(&self) -> &'static str {
        match self {
            Periodicity::Yes => "Yes",
            Periodicity::PeriodicDetected { .. } => "PeriodicDetected",
            Periodicity::Unknown => "Unknown",
        }
    }
}

/// Writes a word 1-based; letters are concatenated for `d ≤ 9` and
/// `.`-separated otherwise.
pub fn word_to_string(w: &[usize], d: usize) -> String {
    let parts: Vec<String> = w.iter().map(|&a| (a + 1).to_string()).collect();
    if d <= 9 {
        parts.concat()
    } else {
        parts.join(".")
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.size();
        for (a, w) in self.images.iter().enumerate() {
            if a > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}->{}", a + 1, word_to_string(w, d))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Substitution({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(images: &[&str]) -> Substitution {
        Substitution::from_digits(images).unwrap()
    }

    fn words(set: &BTreeSet<Vec<usize>>) -> Vec<String> {
        set.iter().map(|w| word_to_string(w, 9)).collect()
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(s(&["21", "1"]).abelianization().rows(), &[vec![1, 1], vec![1, 0]]);
        assert_eq!(s(&["12", "21"]).abelianization().rows(), &[vec![1, 1], vec![1, 1]]);
        assert_eq!(s(&["1"]).abelianization().rows(), &[vec![1]]);
    }

    #[test]
    fn compose_and_power() {
        let ar1 = s(&["1", "21"]);
        let ar2 = s(&["12", "2"]);
        assert_eq!(ar1.compose(&ar2).unwrap(), s(&["121", "21"]));
        let golden = s(&["21", "1"]);
        assert_eq!(golden.compose(&Substitution::identity(2)).unwrap(), golden);
        assert_eq!(golden.power(2).unwrap(), s(&["121", "21"]));
        assert_eq!(golden.power(1).unwrap(), golden);
        assert_eq!(s(&["12", "21"]).power(2).unwrap(), s(&["1221", "2112"]));
        assert_eq!(golden.power(0), Err(SubstitutionError::ZeroPower));
        assert!(matches!(
            golden.compose(&Substitution::identity(3)),
            Err(SubstitutionError::AlphabetMismatch(2, 3))
        ));
    }

    #[test]
    fn initial_and_final_letters() {
        assert!(s(&["21", "1"]).initial_letter_injective());
        assert!(!s(&["12", "11"]).initial_letter_injective());
        assert!(s(&["11"]).initial_letter_injective());

        let g = s(&["21", "1"]).final_letters_eventually_constant();
        assert_eq!((g.constant, g.power, g.letter), (true, Some(1), Some(0)));
        let tm = s(&["12", "21"]).final_letters_eventually_constant();
        assert!(!tm.constant);
        let plastic = s(&["21", "3", "4", "5", "1"]).final_letters_eventually_constant();
        assert_eq!((plastic.constant, plastic.power, plastic.letter), (true, Some(4), Some(0)));
    }

    #[test]
    fn factor_sets() {
        let golden = s(&["21", "1"]);
        assert_eq!(words(&golden.factors(2).unwrap()), vec!["1", "11", "12", "2", "21"]);
        assert_eq!(
            words(&s(&["12", "21"]).factors(2).unwrap()),
            vec!["1", "11", "12", "2", "21", "22"]
        );
        assert_eq!(
            s(&["12", "1"]).factors(1).unwrap().len(),
            2,
            "primitive gives the whole alphabet"
        );
        assert_eq!(s(&["1", "2"]).factors(2), Err(SubstitutionError::NotPrimitive));
    }

    #[test]
    fn seeds() {
        assert_eq!(s(&["21", "1"]).admissible_seed().unwrap(), Seed { k: 2, a: 0, b: 0 });
        // 11 is in the Thue-Morse language, so b = 1 precedes b = 2.
        assert_eq!(s(&["12", "21"]).admissible_seed().unwrap(), Seed { k: 2, a: 0, b: 0 });
        assert!(s(&["12", "21"]).verify_seed(Seed { k: 2, a: 0, b: 1 }).unwrap());
        assert!(!s(&["12", "21"]).verify_seed(Seed { k: 1, a: 0, b: 1 }).unwrap());
        assert_eq!(s(&["11"]).admissible_seed().unwrap(), Seed { k: 1, a: 0, b: 0 });
    }

    #[test]
    fn periodicity() {
        assert_eq!(s(&["21", "1"]).periodicity_heuristic(64).unwrap(), Periodicity::Yes);
        assert_eq!(
            s(&["12", "12"]).periodicity_heuristic(64).unwrap(),
            Periodicity::PeriodicDetected { length: 2 }
        );
        assert_eq!(s(&["12", "21"]).periodicity_heuristic(64).unwrap(), Periodicity::Unknown);
    }

    #[test]
    fn invalid_images_rejected() {
        assert!(matches!(
            Substitution::new(vec![vec![1], vec![]]),
            Err(SubstitutionError::EmptyImage { .. })
        ));
        assert!(matches!(
            Substitution::new(vec![vec![2]]),
            Err(SubstitutionError::LetterOutOfRange { .. })
        ));
        assert_eq!(Substitution::new(vec![]), Err(SubstitutionError::EmptyAlphabet));
    }
}
