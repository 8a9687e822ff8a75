//! Tilings of the line by intervals whose lengths are the entries of the
//! left Perron–Frobenius eigenvector, and the inflation map Φ.

mod render;
mod tilings;

pub use render::{render_svg, render_text};
pub use tilings::{fixed_tiling, periodic_tiling, FixedTiling, PeriodicTiling, Tiling};

use std::sync::Arc;

use thiserror::Error;

use crate::algebraic::{self, AlgebraError, FieldElement, NumberField};
use crate::substitution::{Substitution, SubstitutionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TilingError {
    #[error(transparent)]
    Substitution(#[from] SubstitutionError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("substitution is not primitive")]
    NotPrimitive,
    #[error("inflation factor is not greater than 1")]
    NotExpanding,
    #[error("seed (k={k}, a={a}, b={b}) is not admissible: {reason}")]
    InvalidSeed { k: u32, a: usize, b: usize, reason: String },
    #[error("patch is empty")]
    EmptyPatch,
    #[error("patch is not contiguous")]
    NotContiguous,
    #[error("point lies on a tile boundary")]
    EndpointHit,
    #[error("point is not covered")]
    Uncovered,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prototile {
    pub kind: usize,
    pub length: FieldElement,
}

/// A tile `[left, right)` of type `kind` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tile {
    pub kind: usize,
    pub left: FieldElement,
    pub right: FieldElement,
}

impl Tile {
    pub fn new(kind: usize, left: FieldElement, omega: &[FieldElement]) -> Self {
        let right = &left + &omega[kind];
        Self { kind, left, right }
    }

    pub fn shifted(&self, s: &FieldElement) -> Self {
        Self {
            kind: self.kind,
            left: &self.left + s,
            right: &self.right + s,
        }
    }

    pub fn length(&self) -> FieldElement {
        &self.right - &self.left
    }

    /// Whether the closed support meets `[lo, hi]`.
    pub fn meets(&self, lo: &FieldElement, hi: &FieldElement) -> bool {
        &self.left <= hi && &self.right >= lo
    }

    /// `Some(true)` if `t` is interior, `Some(false)` if it is an endpoint,
    /// `None` if outside the closed support.
    pub fn locate(&self, t: &FieldElement) -> Option<bool> {
        if t < &self.left || t > &self.right {
            None
        } else {
            Some(t != &self.left && t != &self.right)
        }
    }
}

/// Tiles ordered by left endpoint with pairwise disjoint interiors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Patch {
    pub tiles: Vec<Tile>,
}

impl Patch {
    pub fn new(mut tiles: Vec<Tile>) -> Self {
        tiles.sort_by(|a, b| a.left.cmp(&b.left));
        Self { tiles }
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn is_contiguous(&self) -> bool {
        self.tiles.windows(2).all(|w| w[0].right == w[1].left)
    }

    /// Convex hull of the supports.
    pub fn support(&self) -> Option<(FieldElement, FieldElement)> {
        let first = self.tiles.first()?;
        let right = self.tiles.iter().map(|t| &t.right).max().unwrap();
        Some((first.left.clone(), right.clone()))
    }

    /// `P + s`; the patch `P - t` is `shifted(-t)`.
    pub fn shifted(&self, s: &FieldElement) -> Self {
        Self {
            tiles: self.tiles.iter().map(|t| t.shifted(s)).collect(),
        }
    }

    pub fn meeting(&self, lo: &FieldElement, hi: &FieldElement) -> Patch {
        let start = self.tiles.partition_point(|t| &t.right < lo);
        Patch {
            tiles: self.tiles[start..]
                .iter()
                .take_while(|t| &t.left <= hi)
                .filter(|t| t.meets(lo, hi))
                .cloned()
                .collect(),
        }
    }

    /// The tile containing `t` in its interior.
    pub fn tile_at(&self, t: &FieldElement) -> Result<Tile, TilingError> {
        let start = self.tiles.partition_point(|x| &x.right < t);
        for tile in self.tiles[start..].iter().take_while(|x| &x.left <= t) {
            match tile.locate(t) {
                Some(true) => return Ok(tile.clone()),
                Some(false) => return Err(TilingError::EndpointHit),
                None => {}
            }
        }
        Err(TilingError::Uncovered)
    }
}

/// A substitution together with its tile lengths `ω` and inflation factor.
///
/// For a power `φ^k` built by [`GeometricSubstitution::power`] the field and
/// `ω` are shared with `φ` and the inflation is `λ^k`.
#[derive(Clone, Debug)]
pub struct GeometricSubstitution {
    sub: Substitution,
    field: Arc<NumberField>,
    omega: Vec<FieldElement>,
    inflation: FieldElement,
    /// `offsets[i][m]` is the left endpoint of the `m`-th child of `ρ_i`.
    offsets: Vec<Vec<FieldElement>>,
}

impl GeometricSubstitution {
    pub fn new(sub: &Substitution) -> Result<Self, TilingError> {
        if sub.is_primitive().is_none() {
            return Err(TilingError::NotPrimitive);
        }
        let m = sub.abelianization();
        let cp = algebraic::char_poly(m.rows());
        let field = algebraic::min_poly_of_pf_root(&cp).map_err(|e| match e {
            AlgebraError::NotExpanding(_) => TilingError::NotExpanding,
            e => TilingError::Algebra(e),
        })?;
        let omega = algebraic::left_pf_eigenvector(m.rows(), &field)?;
        let inflation = field.generator();
        Ok(Self::assemble(sub.clone(), field, omega, inflation))
    }

    fn assemble(
        sub: Substitution,
        field: Arc<NumberField>,
        omega: Vec<FieldElement>,
        inflation: FieldElement,
    ) -> Self {
        let offsets = sub
            .images()
            .iter()
            .map(|w| {
                let mut acc = field.zero();
                w.iter()
                    .map(|&l| {
                        let here = acc.clone();
                        acc = &acc + &omega[l];
                        here
                    })
                    .collect()
            })
            .collect();
        Self {
            sub,
            field,
            omega,
            inflation,
            offsets,
        }
    }

    pub fn power(&self, k: u32) -> Result<Self, TilingError> {
        let sub = self.sub.power(k)?;
        Ok(Self::assemble(
            sub,
            Arc::clone(&self.field),
            self.omega.clone(),
            self.inflation.pow(k),
        ))
    }

    pub fn substitution(&self) -> &Substitution {
        &self.sub
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn omega(&self) -> &[FieldElement] {
        &self.omega
    }

    pub fn inflation(&self) -> &FieldElement {
        &self.inflation
    }

    pub fn size(&self) -> usize {
        self.sub.size()
    }

    pub fn max_length(&self) -> &FieldElement {
        self.omega.iter().max().unwrap()
    }

    pub fn prototiles(&self) -> Vec<Prototile> {
        self.omega
            .iter()
            .enumerate()
            .map(|(kind, w)| Prototile {
                kind,
                length: w.clone(),
            })
            .collect()
    }

    /// `Φ(ρ_i + left)`, as a left-to-right list of tiles.
    pub fn inflate_tile(&self, tile: &Tile) -> Vec<Tile> {
        let base = &self.inflation * &tile.left;
        self.sub
            .image(tile.kind)
            .iter()
            .zip(&self.offsets[tile.kind])
            .map(|(&l, off)| Tile::new(l, &base + off, &self.omega))
            .collect()
    }

    pub fn inflate_patch(&self, patch: &Patch) -> Patch {
        Patch {
            tiles: patch.tiles.iter().flat_map(|t| self.inflate_tile(t)).collect(),
        }
    }

    pub fn tile(&self, kind: usize, left: FieldElement) -> Tile {
        Tile::new(kind, left, &self.omega)
    }
}
