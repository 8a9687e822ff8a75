use std::sync::{Arc, RwLock};

use super::{GeometricSubstitution, Patch, Tile, TilingError};
use crate::algebraic::FieldElement;
use crate::substitution::Seed;

/// The tiling `T = ∪_m Φ^{mk}(P)` with `P = {ρ_b - ω_b, ρ_a}`, grown on
/// demand. `levels[m]` holds `Φ^{mk}(P)`; each level contains the previous.
#[derive(Debug)]
pub struct FixedTiling {
    geo: GeometricSubstitution,
    step: GeometricSubstitution,
    seed: Seed,
    levels: RwLock<Vec<Patch>>,
}

impl FixedTiling {
    pub fn seed(&self) -> Seed {
        self.seed
    }

    pub fn geometric(&self) -> &GeometricSubstitution {
        &self.geo
    }

    /// Tiles meeting `[lo, hi]`, read from `Φ^{mk}(P)` for the least `m`
    /// whose support strictly contains `[lo, hi]`.
    fn meeting(&self, lo: &FieldElement, hi: &FieldElement) -> Patch {
        // Levels are contiguous, so the ends give the support.
        let fits = |p: &Patch| &p.tiles[0].left < lo && &p.tiles[p.tiles.len() - 1].right > hi;
        {
            let levels = self.levels.read().unwrap();
            if let Some(p) = levels.iter().find(|p| fits(p)) {
                return p.meeting(lo, hi);
            }
        }
        let mut levels = self.levels.write().unwrap();
        loop {
            let last = levels.last().unwrap();
            if fits(last) {
                return last.meeting(lo, hi);
            }
            let next = self.step.inflate_patch(last);
            levels.push(next);
        }
    }

    pub fn level(&self, m: usize) -> Patch {
        let mut levels = self.levels.write().unwrap();
        while levels.len() <= m {
            let next = self.step.inflate_patch(levels.last().unwrap());
            levels.push(next);
        }
        levels[m].clone()
    }
}

/// `Q̄ = ∪_{n∈ℤ} (Q + n(b - a))` for a contiguous patch `Q` with support
/// `[a, b]`.
#[derive(Debug)]
pub struct PeriodicTiling {
    generator: Patch,
    start: FieldElement,
    end: FieldElement,
    period: FieldElement,
}

impl PeriodicTiling {
    pub fn period(&self) -> &FieldElement {
        &self.period
    }

    pub fn generator(&self) -> &Patch {
        &self.generator
    }
}

/// A tiling answering window queries. `Translate { base, shift }` is
/// `base - shift`.
#[derive(Clone, Debug)]
pub enum Tiling {
    SubstitutionFixed(Arc<FixedTiling>),
    Periodic(Arc<PeriodicTiling>),
    Translate { base: Box<Tiling>, shift: FieldElement },
}

pub fn fixed_tiling(geo: &GeometricSubstitution, seed: Seed) -> Result<Tiling, TilingError> {
    let invalid = |reason: &str| TilingError::InvalidSeed {
        k: seed.k,
        a: seed.a + 1,
        b: seed.b + 1,
        reason: reason.into(),
    };
    let sub = geo.substitution();
    if seed.k == 0 || seed.a >= sub.size() || seed.b >= sub.size() {
        return Err(invalid("out of range"));
    }
    if !sub.verify_seed(seed)? {
        return Err(invalid("conditions on first letter, last letter or language fail"));
    }
    let step = geo.power(seed.k)?;
    let f = geo.field();
    let p = Patch::new(vec![
        geo.tile(seed.b, -&geo.omega()[seed.b]),
        geo.tile(seed.a, f.zero()),
    ]);
    Ok(Tiling::SubstitutionFixed(Arc::new(FixedTiling {
        geo: geo.clone(),
        step,
        seed,
        levels: RwLock::new(vec![p]),
    })))
}

pub fn periodic_tiling(q: &Patch) -> Result<Tiling, TilingError> {
    let (start, end) = q.support().ok_or(TilingError::EmptyPatch)?;
    if !q.is_contiguous() {
        return Err(TilingError::NotContiguous);
    }
    let period = &end - &start;
    Ok(Tiling::Periodic(Arc::new(PeriodicTiling {
        generator: q.clone(),
        start,
        end,
        period,
    })))
}

impl Tiling {
    /// All tiles whose closed support meets `[lo, hi]`, ordered left to
    /// right.
    pub fn tiles_meeting(&self, lo: &FieldElement, hi: &FieldElement) -> Patch {
        match self {
            Tiling::SubstitutionFixed(t) => t.meeting(lo, hi),
            Tiling::Periodic(p) => {
                let inv = p.period.inverse().expect("period is positive");
                let first = ((lo - &p.end) * &inv).floor();
                let last = ((hi - &p.start) * &inv).floor() + 1;
                let f = p.period.field();
                let mut tiles = Vec::new();
                let mut n = first;
                while n <= last {
                    let shift = &p.period * &f.from_rational(n.clone().into());
                    for t in &p.generator.tiles {
                        let s = t.shifted(&shift);
                        if s.meets(lo, hi) {
                            tiles.push(s);
                        }
                    }
                    n += 1;
                }
                Patch { tiles }
            }
            Tiling::Translate { base, shift } => base
                .tiles_meeting(&(lo + shift), &(hi + shift))
                .shifted(&-shift),
        }
    }

    /// `B_R[T]`: tiles meeting the closed ball of radius `r` about 0.
    pub fn window(&self, r: &FieldElement) -> Patch {
        self.tiles_meeting(&-r, r)
    }

    /// `T - t`.
    pub fn translate(&self, t: &FieldElement) -> Tiling {
        match self {
            Tiling::Translate { base, shift } => Tiling::Translate {
                base: base.clone(),
                shift: shift + t,
            },
            _ => Tiling::Translate {
                base: Box::new(self.clone()),
                shift: t.clone(),
            },
        }
    }

    /// The tile containing `t` in its interior.
    pub fn tile_at(&self, t: &FieldElement) -> Result<Tile, TilingError> {
        self.tiles_meeting(t, t).tile_at(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::Substitution;

    fn geo(images: &[&str]) -> GeometricSubstitution {
        GeometricSubstitution::new(&Substitution::from_digits(images).unwrap()).unwrap()
    }

    #[test]
    fn golden_window_at_zero() {
        let g = geo(&["21", "1"]);
        let f = g.field().clone();
        let t = fixed_tiling(&g, Seed { k: 2, a: 0, b: 0 }).unwrap();
        let w = t.window(&f.zero());
        assert_eq!(w.tiles, vec![g.tile(0, -f.generator()), g.tile(0, f.zero())]);
    }

    #[test]
    fn unit_grid() {
        let g = geo(&["11"]);
        let f = g.field().clone();
        let t = fixed_tiling(&g, Seed { k: 1, a: 0, b: 0 }).unwrap();
        let w = t.window(&f.from_integer(3));
        let lefts: Vec<String> = w.tiles.iter().map(|x| x.left.to_string()).collect();
        assert_eq!(lefts, vec!["-4", "-3", "-2", "-1", "0", "1", "2", "3"]);

        let q = Patch::new(vec![g.tile(0, f.zero())]);
        let p = periodic_tiling(&q).unwrap();
        assert_eq!(p.window(&f.zero()).tiles, vec![g.tile(0, f.from_integer(-1)), g.tile(0, f.zero())]);
        assert_eq!(p.window(&f.from_integer(3)), w);
    }

    #[test]
    fn periodic_golden_patch() {
        let g = geo(&["21", "1"]);
        let f = g.field().clone();
        let q = Patch::new(vec![g.tile(1, f.zero()), g.tile(0, f.one())]);
        let Tiling::Periodic(p) = periodic_tiling(&q).unwrap() else { panic!() };
        assert_eq!(p.period().to_string(), "λ + 1");
        assert_eq!(periodic_tiling(&Patch::default()).unwrap_err(), TilingError::EmptyPatch);
        let gap = Patch::new(vec![g.tile(1, f.zero()), g.tile(1, f.from_integer(2))]);
        assert_eq!(periodic_tiling(&gap).unwrap_err(), TilingError::NotContiguous);
    }

    #[test]
    fn translate_is_shifted_window() {
        let g = geo(&["21", "1"]);
        let f = g.field().clone();
        let t = fixed_tiling(&g, Seed { k: 2, a: 0, b: 0 }).unwrap();
        let lam = f.generator();
        let moved = t.translate(&lam);
        let direct = t.tiles_meeting(&lam, &lam).shifted(&-&lam);
        assert_eq!(moved.window(&f.zero()), direct);
        let back = moved.translate(&-&lam);
        assert_eq!(back.window(&f.from_integer(4)), t.window(&f.from_integer(4)));
    }

    #[test]
    fn bad_seed_rejected() {
        let g = geo(&["12", "21"]);
        assert!(matches!(
            fixed_tiling(&g, Seed { k: 1, a: 0, b: 1 }),
            Err(TilingError::InvalidSeed { .. })
        ));
        assert!(fixed_tiling(&g, Seed { k: 2, a: 0, b: 1 }).is_ok());
    }

    #[test]
    fn fixed_tiling_is_invariant() {
        let g = geo(&["21", "1"]);
        let f = g.field().clone();
        let t = fixed_tiling(&g, Seed { k: 2, a: 0, b: 0 }).unwrap();
        let g2 = g.power(2).unwrap();
        let r = f.from_integer(6);
        let big = t.window(&(&r * &f.from_integer(2)));
        let image = g2.inflate_patch(&big);
        assert_eq!(image.meeting(&-&r, &r), t.window(&r));
    }
}
