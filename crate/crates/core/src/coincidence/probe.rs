use num_bigint::BigInt;
use num_rational::BigRational;

use super::CoincidenceError;
use crate::algebraic::FieldElement;
use crate::tiling::{GeometricSubstitution, Patch, Tile, Tiling, TilingError};

/// Anything that can report the tile containing a point.
pub trait Cover {
    fn tile_at(&self, t: &FieldElement) -> Result<Tile, TilingError>;
}

impl Cover for Tiling {
    fn tile_at(&self, t: &FieldElement) -> Result<Tile, TilingError> {
        Tiling::tile_at(self, t)
    }
}

impl Cover for Patch {
    fn tile_at(&self, t: &FieldElement) -> Result<Tile, TilingError> {
        Patch::tile_at(self, t)
    }
}

/// `B_0` of an inflated tiling: the tile containing 0, or the two tiles
/// meeting at 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum AtZero {
    Inside(Tile),
    Split(Tile, Tile),
}

impl AtZero {
    fn inflate(&self, geo: &GeometricSubstitution) -> Result<Self, CoincidenceError> {
        match self {
            AtZero::Inside(tile) => {
                let zero = geo.field().zero();
                let kids = geo.inflate_tile(tile);
                for (k, c) in kids.iter().enumerate() {
                    match c.locate(&zero) {
                        Some(true) => return Ok(AtZero::Inside(c.clone())),
                        // 0 is interior to the parent, so it is never the
                        // left end of the first child.
                        Some(false) => return Ok(AtZero::Split(c.clone(), kids[k + 1].clone())),
                        None => {}
                    }
                }
                Err(CoincidenceError::Uncovered)
            }
            AtZero::Split(left, right) => {
                let l = geo.inflate_tile(left).pop().unwrap();
                let r = geo.inflate_tile(right).swap_remove(0);
                Ok(AtZero::Split(l, r))
            }
        }
    }

    /// Support of the tiles at 0.
    pub(crate) fn support(&self) -> (&FieldElement, &FieldElement) {
        match self {
            AtZero::Inside(t) => (&t.left, &t.right),
            AtZero::Split(a, b) => (&a.left, &b.right),
        }
    }
}

/// Least `n ≤ n_max` with `B_0[Φ^n(T - t)] = B_0[Φ^n(T' - t)]`, together
/// with that patch.
pub(crate) fn coincidence_detail<A: Cover + ?Sized, B: Cover + ?Sized>(
    geo: &GeometricSubstitution,
    t1: &A,
    t2: &B,
    t: &FieldElement,
    n_max: u32,
) -> Result<Option<(u32, AtZero)>, CoincidenceError> {
    let shift = -t;
    let mut a = AtZero::Inside(t1.tile_at(t)?.shifted(&shift));
    let mut b = AtZero::Inside(t2.tile_at(t)?.shifted(&shift));
    for n in 0..=n_max {
        if a == b {
            return Ok(Some((n, a)));
        }
        if n == n_max {
            break;
        }
        a = a.inflate(geo)?;
        b = b.inflate(geo)?;
    }
    Ok(None)
}

/// Tracks the tiles at 0 of `Φ^n(T - t)` and `Φ^n(T' - t)` through
/// `n_max` inflations; returns the first `n` at which they agree. `t` must
/// be interior to a tile of each; boundaries met later are handled by
/// tracking both tiles that touch 0.
pub fn eventually_coincident_at<A: Cover + ?Sized, B: Cover + ?Sized>(
    geo: &GeometricSubstitution,
    t1: &A,
    t2: &B,
    t: &FieldElement,
    n_max: u32,
) -> Result<Option<u32>, CoincidenceError> {
    Ok(coincidence_detail(geo, t1, t2, t, n_max)?.map(|(n, _)| n))
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub samples: usize,
    pub hits: usize,
    /// Certified intervals of eventual coincidence, merged and sorted.
    pub covered: Vec<(FieldElement, FieldElement)>,
    pub uncovered: Vec<(FieldElement, FieldElement)>,
    pub covered_measure: FieldElement,
    /// `covered_measure / (v - u)`.
    pub coverage: FieldElement,
}

impl ProbeReport {
    pub fn hit_fraction(&self) -> f64 {
        self.hits as f64 / self.samples as f64
    }
}

fn perturbations(step: &FieldElement) -> Vec<FieldElement> {
    let delta = step.scale(&BigRational::new(1.into(), BigInt::from(1u64 << 16)));
    vec![delta.clone(), -&delta, delta.scale(&BigRational::from_integer(2.into()))]
}

/// Samples `t_k = u + (k + 1/2)(v - u)/samples` and tests eventual
/// coincidence at each. A hit at `t` whose shared tiles at 0 in
/// `Φ^n(T - t)` span `[ℓ, r]` certifies the interval `t + λ^{-n}(ℓ, r)`.
pub fn dense_coincidence_probe<A: Cover + ?Sized, B: Cover + ?Sized>(
    geo: &GeometricSubstitution,
    t1: &A,
    t2: &B,
    u: &FieldElement,
    v: &FieldElement,
    samples: usize,
    n_max: u32,
) -> Result<ProbeReport, CoincidenceError> {
    if u >= v || samples == 0 {
        return Err(CoincidenceError::EmptyInterval);
    }
    let len = v - u;
    let step = len.scale(&BigRational::new(1.into(), BigInt::from(samples)));
    let shrink = geo.inflation().inverse().expect("inflation is nonzero");
    let mut hits = 0;
    let mut intervals: Vec<(FieldElement, FieldElement)> = Vec::new();
    for k in 0..samples {
        let base = u + &step.scale(&BigRational::new(BigInt::from(2 * k + 1), 2.into()));
        let mut outcome = coincidence_detail(geo, t1, t2, &base, n_max).map(|r| (base.clone(), r));
        for p in perturbations(&step) {
            if !matches!(outcome, Err(CoincidenceError::EndpointHit)) {
                break;
            }
            let t = &base + &p;
            outcome = coincidence_detail(geo, t1, t2, &t, n_max).map(|r| (t, r));
        }
        let (t, found) = match outcome {
            Ok(x) => x,
            Err(CoincidenceError::Uncovered) => continue,
            Err(e) => return Err(e),
        };
        if let Some((n, at)) = found {
            hits += 1;
            let s = shrink.pow(n);
            let (l, r) = at.support();
            let lo = &t + &(&s * l);
            let hi = &t + &(&s * r);
            let lo = if &lo < u { u.clone() } else { lo };
            let hi = if &hi > v { v.clone() } else { hi };
            if lo < hi {
                intervals.push((lo, hi));
            }
        }
    }
    intervals.sort_by(|a, b| a.0.cmp(&b.0));
    let mut covered: Vec<(FieldElement, FieldElement)> = Vec::new();
    for (lo, hi) in intervals {
        match covered.last_mut() {
            Some(last) if lo <= last.1 => {
                if hi > last.1 {
                    last.1 = hi;
                }
            }
            _ => covered.push((lo, hi)),
        }
    }
    let mut uncovered = Vec::new();
    let mut cursor = u.clone();
    for (lo, hi) in &covered {
        if lo > &cursor {
            uncovered.push((cursor.clone(), lo.clone()));
        }
        cursor = hi.clone();
    }
    if &cursor < v {
        uncovered.push((cursor, v.clone()));
    }
    let f = geo.field();
    let covered_measure = covered.iter().fold(f.zero(), |acc, (lo, hi)| &acc + &(hi - lo));
    let coverage = &covered_measure * &len.inverse().unwrap();
    Ok(ProbeReport {
        samples,
        hits,
        covered,
        uncovered,
        covered_measure,
        coverage,
    })
}
