use std::fmt;

/// Square matrix of letter counts; entry `(i, j)` counts letter `i` in
/// `φ(j)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbelianMatrix {
    rows: Vec<Vec<u64>>,
}

impl AbelianMatrix {
    pub fn new(rows: Vec<Vec<u64>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == rows.len()));
        Self { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.rows[i][j]
    }

    /// Product with saturating arithmetic; entries of desk-scale powers
    /// stay far below `u64::MAX`.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.size();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(0u64, |s, k| {
                            s.saturating_add(self.rows[i][k].saturating_mul(other.rows[k][j]))
                        })
                    })
                    .collect()
            })
            .collect();
        Self { rows }
    }

    pub fn pow(&self, k: u32) -> Self {
        let n = self.size();
        let mut out = Self {
            rows: (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect(),
        };
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Smallest `k ≤ (d-1)^2 + 1` with `A^k` entrywise positive.
    pub fn is_primitive(&self) -> Option<u32> {
        let n = self.size();
        let a: Vec<Vec<bool>> = self.rows.iter().map(|r| r.iter().map(|&v| v > 0).collect()).collect();
        let bound = ((n - 1) * (n - 1) + 1) as u32;
        let mut p = a.clone();
        for k in 1..=bound {
            if p.iter().all(|r| r.iter().all(|&v| v)) {
                return Some(k);
            }
            p = (0..n)
                .map(|i| (0..n).map(|j| (0..n).any(|m| p[i][m] && a[m][j])).collect())
                .collect();
        }
        None
    }
}

impl fmt::Debug for AbelianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}
