//! Elements of ℚ(ζ_N) stored as reduced polynomials modulo Φ_N.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::matrix::Matrix;
use crate::scalar::{divisors, euler_phi, gcd_u64, lcm_u64, Rational, Scalar};

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    assert!(n >= 1);
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let div = cyclotomic_polynomial(d);
        num = exact_divide(&num, &div);
    }
    let p = Arc::new(num);
    phi_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut q = vec![0i64; nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|c| *c == 0));
    q
}

fn reduce(mut poly: Vec<Rational>, order: u64) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(order);
    let deg = phi.len() - 1;
    if poly.len() < deg {
        poly.resize(deg, Rational::zero());
        return poly;
    }
    for i in (deg..poly.len()).rev() {
        let c = std::mem::replace(&mut poly[i], Rational::zero());
        if c.is_zero() {
            continue;
        }
        for (j, pj) in phi.iter().enumerate().take(deg) {
            if *pj != 0 {
                let t = &c * Rational::from_integer(BigInt::from(*pj));
                poly[i - deg + j] -= t;
            }
        }
    }
    poly.truncate(deg);
    poly
}

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic { order: 1, coeffs: vec![q] }
    }

    /// ζ_order^k.
    pub fn root_of_unity(order: u64, k: i64) -> Self {
        let order = order.max(1);
        let k = k.rem_euclid(order as i64) as usize;
        let mut buf = vec![Rational::zero(); order as usize];
        buf[k] = Rational::one();
        Self::from_power_sums(order, buf)
    }

    /// Reduces Σ buf[i] ζ_order^i with `buf.len() == order`.
    pub fn from_power_sums(order: u64, buf: Vec<Rational>) -> Self {
        assert_eq!(buf.len() as u64, order);
        Cyclotomic { order, coeffs: reduce(buf, order) }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Re-expresses the value in ℚ(ζ_target); `target` must be a multiple of the order.
    pub fn promote(&self, target: u64) -> Self {
        if target == self.order {
            return self.clone();
        }
        assert_eq!(target % self.order, 0, "promotion target must be a multiple");
        let step = (target / self.order) as usize;
        let mut buf = vec![Rational::zero(); target as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            buf[i * step] += c;
        }
        Self::from_power_sums(target, buf)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let n = lcm_u64(a.order, b.order);
        (a.promote(n), b.promote(n))
    }

    /// Image under ζ ↦ ζ^k, gcd(k, N) = 1.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.order;
        let k = k.rem_euclid(n as i64) as u64;
        assert_eq!(gcd_u64(k.max(1), n), 1, "galois exponent must be a unit");
        let mut buf = vec![Rational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            buf[(i as u64 * k % n) as usize] += c;
        }
        Self::from_power_sums(n, buf)
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    /// Multiplication by a root of unity ζ_N^k applied to a power-sum buffer of length N.
    pub(crate) fn accumulate_rotated(&self, n: u64, k: u64, buf: &mut [Rational]) {
        let step = n / self.order;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let idx = ((i as u64 * step + k) % n) as usize;
                buf[idx] += c;
            }
        }
    }

    fn scale(&self, q: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.to_rational() {
            return Some(Self::from_rational(q.recip()));
        }
        let d = self.coeffs.len();
        let mut m = Matrix::<Rational>::zeros(d, d);
        let mut basis = Cyclotomic::root_of_unity(self.order, 0);
        let zeta = Cyclotomic::root_of_unity(self.order, 1);
        for j in 0..d {
            let col = self.clone() * basis.clone();
            for i in 0..d {
                m[(i, j)] = col.promote(self.order).coeffs[i].clone();
            }
            basis = basis * zeta.clone();
        }
        let mut rhs = vec![Rational::zero(); d];
        rhs[0] = Rational::one();
        let y = m.solve(&rhs)?;
        Some(Cyclotomic { order: self.order, coeffs: y })
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Self::common(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Self) -> Self {
        let (a, b) = Self::common(&self, &rhs);
        Cyclotomic {
            order: a.order,
            coeffs: a.coeffs.into_iter().zip(b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Self) -> Self {
        if let Some(q) = rhs.to_rational() {
            return self.scale(&q);
        }
        if let Some(q) = self.to_rational() {
            return rhs.scale(&q);
        }
        let (a, b) = Self::common(&self, &rhs);
        let mut prod = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Cyclotomic { order: a.order, coeffs: reduce(prod, a.order) }
    }
}

impl Scalar for Cyclotomic {
    fn from_rational(q: &Rational) -> Self {
        Cyclotomic::from_rational(q.clone())
    }
    fn as_rational(&self) -> Option<Rational> {
        self.to_rational()
    }
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
    fn to_cyclotomic(&self) -> Cyclotomic {
        self.clone()
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    write!(f, "z{}^{}", self.order, i)?;
                }
            }
        }
        Ok(())
    }
}

/// Degree of ℚ(ζ_n) over ℚ.
pub fn field_degree(n: u64) -> u64 {
    euler_phi(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        let mut s = Cyclotomic::zero();
        for k in 0..5 {
            s = s + Cyclotomic::root_of_unity(5, k);
        }
        assert!(s.is_zero());
        let z3 = Cyclotomic::root_of_unity(3, 1);
        assert_eq!(z3.clone() * z3.clone() * z3, Cyclotomic::one());
    }

    #[test]
    fn mixed_orders_compare_after_promotion() {
        let minus_one = Cyclotomic::root_of_unity(2, 1);
        assert_eq!(minus_one, Cyclotomic::from_rational(rat(-1, 1)));
        let z6 = Cyclotomic::root_of_unity(6, 2);
        assert_eq!(z6, Cyclotomic::root_of_unity(3, 1));
        let i = Cyclotomic::root_of_unity(4, 1);
        assert_eq!(i.clone() * i, Cyclotomic::from_rational(rat(-1, 1)));
    }

    #[test]
    fn inverse_and_galois() {
        let x = Cyclotomic::root_of_unity(7, 1) + Cyclotomic::from_rational(rat(2, 1));
        let y = x.inv().unwrap();
        assert_eq!(x.clone() * y, Cyclotomic::one());
        let z = Cyclotomic::root_of_unity(7, 1);
        assert_eq!(z.galois(3), Cyclotomic::root_of_unity(7, 3));
        assert_eq!(z.conj() * z, Cyclotomic::one());
    }

    #[test]
    fn sqrt_minus_three() {
        let z = Cyclotomic::root_of_unity(3, 1);
        let s = z.clone() - z.conj();
        assert_eq!(s.clone() * s, Cyclotomic::from_rational(rat(-3, 1)));
    }
}
