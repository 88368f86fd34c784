use serde::Serialize;

use crate::error::{Error, Result};

/// Largest spin count accepted; 2^20 spin states per boson level is already
/// far beyond what the dense or Lanczos paths here are meant for.
pub const MAX_SPINS: usize = 20;

/// Product basis |n⟩ ⊗ |mask⟩ with flat index n·2^N + mask.
///
/// Bit i of `mask` set means spin i points up (Sᶻᵢ = +½).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BasisDescriptor {
    pub n_spins: usize,
    pub n_max: usize,
    pub dim: usize,
}

impl BasisDescriptor {
    pub fn spin_states(&self) -> usize {
        1 << self.n_spins
    }

    pub fn index(&self, n: usize, mask: usize) -> usize {
        debug_assert!(n <= self.n_max && mask < self.spin_states());
        (n << self.n_spins) | mask
    }

    pub fn decompose(&self, idx: usize) -> (usize, usize) {
        (idx >> self.n_spins, idx & (self.spin_states() - 1))
    }

    /// Eigenvalue (−1)^{n + n_up} of the Z₂ parity at each basis index.
    pub fn parity(&self) -> Vec<i8> {
        (0..self.dim)
            .map(|idx| {
                let (n, mask) = self.decompose(idx);
                if (n + mask.count_ones() as usize).is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }
}

pub fn build_basis(n_spins: usize, n_max: usize) -> Result<BasisDescriptor> {
    if !(1..=MAX_SPINS).contains(&n_spins) {
        return Err(Error::invalid("n_spins", format!("must be in 1..={MAX_SPINS}")));
    }
    if n_max < 1 {
        return Err(Error::invalid("n_max", "must be >= 1"));
    }
    let dim = (n_max + 1)
        .checked_mul(1 << n_spins)
        .ok_or_else(|| Error::invalid("n_max", "basis dimension overflows"))?;
    Ok(BasisDescriptor {
        n_spins,
        n_max,
        dim,
    })
}

/// Two truncated bosons |n_a⟩ ⊗ |n_b⟩ with flat index n_a·(n_max_b+1) + n_b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoBosonBasis {
    pub n_max_a: usize,
    pub n_max_b: usize,
    pub dim: usize,
}

impl TwoBosonBasis {
    pub fn new(n_max_a: usize, n_max_b: usize) -> Result<Self> {
        if n_max_a < 1 || n_max_b < 1 {
            return Err(Error::invalid("n_max", "must be >= 1"));
        }
        Ok(TwoBosonBasis {
            n_max_a,
            n_max_b,
            dim: (n_max_a + 1) * (n_max_b + 1),
        })
    }

    pub fn index(&self, na: usize, nb: usize) -> usize {
        na * (self.n_max_b + 1) + nb
    }

    pub fn decompose(&self, idx: usize) -> (usize, usize) {
        (idx / (self.n_max_b + 1), idx % (self.n_max_b + 1))
    }

    pub fn parity(&self) -> Vec<i8> {
        (0..self.dim)
            .map(|idx| {
                let (a, b) = self.decompose(idx);
                if (a + b) % 2 == 0 {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }
}
