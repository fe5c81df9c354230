//! Fixed-precision ℓ-adic numbers and Teichmüller lifts.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{int_valuation, Rational};

/// ℓ^valuation · unit with the unit known modulo ℓ^precision; `valuation == None` means exactly zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LAdic {
    pub prime: u64,
    pub valuation: Option<i64>,
    pub unit: BigInt,
    pub precision: u32,
}

impl fmt::Display for LAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.valuation {
            None => f.write_str("0"),
            Some(v) => write!(f, "{}^{} * {} (mod {}^{})", self.prime, v, self.unit, self.prime, self.precision),
        }
    }
}

pub fn prime_power(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

fn modinv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// The (ℓ−1)-th root of unity in ℤ_ℓ congruent to `a`, modulo ℓ^precision, by Newton iteration on X^{ℓ−1} − 1.
pub fn teichmuller(a: u64, ell: u64, precision: u32) -> Result<BigInt> {
    if a.is_multiple_of(ell) {
        return Err(Error::Precondition(format!("{a} is not a unit mod {ell}")));
    }
    let modulus = prime_power(ell, precision);
    let d = BigInt::from(ell - 1);
    let mut x = BigInt::from(a % ell);
    loop {
        let f: BigInt = (x.modpow(&d, &modulus) - BigInt::one()).mod_floor(&modulus);
        if f.is_zero() {
            return Ok(x);
        }
        let df: BigInt = (&d * x.modpow(&(&d - BigInt::one()), &modulus)).mod_floor(&modulus);
        let inv = modinv(&df, &modulus).expect("derivative is a unit");
        x = (&x - f * inv).mod_floor(&modulus);
    }
}

/// Σ aᵢ wᵢ for rationals aᵢ and ℓ-adic integers wᵢ (given mod ℓ^precision), reduced to
/// valuation and unit. `exact_zero` tells whether the true sum is known to vanish.
pub fn combine(
    terms: &[(Rational, BigInt)],
    ell: u64,
    precision: u32,
    exact_zero: bool,
) -> Result<LAdic> {
    if exact_zero || terms.iter().all(|(a, _)| a.is_zero()) {
        return Ok(LAdic { prime: ell, valuation: None, unit: BigInt::zero(), precision });
    }
    let v0 = terms
        .iter()
        .filter(|(a, _)| !a.is_zero())
        .map(|(a, _)| int_valuation(a.numer(), ell) as i64 - int_valuation(a.denom(), ell) as i64)
        .min()
        .expect("nonzero term");
    let modulus = prime_power(ell, precision);
    let mut sum = BigInt::zero();
    for (a, w) in terms.iter().filter(|(a, _)| !a.is_zero()) {
        let scaled = if v0 >= 0 {
            a / Rational::from(prime_power(ell, v0 as u32))
        } else {
            a * Rational::from(prime_power(ell, (-v0) as u32))
        };
        let den = modinv(&scaled.denom().mod_floor(&modulus), &modulus).expect("ℓ-integral");
        sum += scaled.numer() * den * w;
    }
    let sum = sum.mod_floor(&modulus);
    if sum.is_zero() {
        return Err(Error::Precision {
            precision,
            detail: format!("sum vanishes modulo {ell}^{precision} but is not known to be zero"),
        });
    }
    let extra = int_valuation(&sum, ell);
    let unit = (&sum / prime_power(ell, extra)).mod_floor(&prime_power(ell, precision - extra));
    debug_assert!(!unit.is_negative());
    Ok(LAdic { prime: ell, valuation: Some(v0 + extra as i64), unit, precision: precision - extra })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn teichmuller_lifts() {
        let w = teichmuller(2, 5, 10).unwrap();
        let m = prime_power(5, 10);
        assert_eq!(w.modpow(&BigInt::from(4), &m), BigInt::one());
        assert_eq!(&w % 5, BigInt::from(2));
        assert_eq!(teichmuller(1, 7, 5).unwrap(), BigInt::one());
        assert!(teichmuller(5, 5, 3).is_err());
    }

    #[test]
    fn combine_valuations() {
        let x = combine(&[(rat(3, 5), BigInt::one())], 5, 10, false).unwrap();
        assert_eq!(x.valuation, Some(-1));
        let y = combine(&[(rat(1, 1), BigInt::one()), (rat(-1, 1), BigInt::one())], 5, 10, false);
        assert!(matches!(y, Err(Error::Precision { .. })));
        let z = combine(&[(rat(25, 2), BigInt::from(3))], 5, 10, false).unwrap();
        assert_eq!(z.valuation, Some(2));
    }
}
