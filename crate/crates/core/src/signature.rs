//! Embedding signatures and the rank of the twisted embedding lattice's plus part.

use crate::error::{Error, Result};
use crate::scalar::euler_phi;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmbeddingSignature {
    pub r1: u64,
    pub r2: u64,
    pub r: i64,
}

impl EmbeddingSignature {
    pub fn new(r1: u64, r2: u64, r: i64) -> Result<Self> {
        if r > 0 {
            return Err(Error::Precondition(format!("twist r = {r} must be non-positive")));
        }
        Ok(EmbeddingSignature { r1, r2, r })
    }

    /// Signature of ℚ(ζ_m).
    pub fn cyclotomic(m: u64, r: i64) -> Result<Self> {
        let phi = euler_phi(m);
        if phi <= 1 {
            Self::new(1, 0, r)
        } else {
            Self::new(0, phi / 2, r)
        }
    }

    /// Signature of the maximal real subfield ℚ(ζ_m)⁺.
    pub fn real_cyclotomic(m: u64, r: i64) -> Result<Self> {
        let phi = euler_phi(m);
        Self::new((phi / 2).max(1), 0, r)
    }

    pub fn degree(&self) -> u64 {
        self.r1 + 2 * self.r2
    }
}

/// r₂ for odd r, r₁ + r₂ for even r.
pub fn y_rank(sig: &EmbeddingSignature) -> u64 {
    if sig.r % 2 != 0 {
        sig.r2
    } else {
        sig.r1 + sig.r2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventh_roots() {
        assert_eq!(y_rank(&EmbeddingSignature::cyclotomic(7, -1).unwrap()), 3);
        assert_eq!(y_rank(&EmbeddingSignature::real_cyclotomic(7, -1).unwrap()), 0);
        assert_eq!(y_rank(&EmbeddingSignature::real_cyclotomic(7, -2).unwrap()), 3);
        assert_eq!(EmbeddingSignature::cyclotomic(5, 0).unwrap().degree(), 4);
        assert!(EmbeddingSignature::new(1, 0, 1).is_err());
    }
}
