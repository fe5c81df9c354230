//! Dirichlet characters, generalized Bernoulli numbers, L-values at s ≤ 0 and partial zeta values.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::scalar::{divisors, factorize, gcd_u64, int, is_prime, mod_inverse, Rational};

/// (ℤ/m)^× together with its residue labelling; shared per modulus.
#[derive(Debug)]
pub struct UnitGroup {
    modulus: u64,
    group: Arc<FiniteGroup>,
    residues: Vec<u64>,
    index: HashMap<u64, usize>,
}

impl UnitGroup {
    pub fn get(m: u64) -> Arc<UnitGroup> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<UnitGroup>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(u) = cache.lock().unwrap().get(&m) {
            return u.clone();
        }
        let (group, residues) = FiniteGroup::unit_group(m);
        let index = residues.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let u = Arc::new(UnitGroup { modulus: m, group: Arc::new(group), residues, index });
        cache.lock().unwrap().entry(m).or_insert(u).clone()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.residues.len()
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn residue(&self, i: usize) -> u64 {
        self.residues[i]
    }

    /// Index of the class of `a`; `None` if `a` is not a unit.
    pub fn index_of(&self, a: i64) -> Option<usize> {
        let m = self.modulus.max(1) as i64;
        let r = a.rem_euclid(m) as u64;
        let r = if self.modulus <= 1 { 1 } else { r };
        self.index.get(&r).copied()
    }

    /// Index of complex conjugation σ₋₁.
    pub fn conjugation(&self) -> usize {
        self.index_of(-1).expect("-1 is a unit")
    }
}

/// The archimedean place together with a finite set of rational primes.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PlaceSet {
    primes: BTreeSet<u64>,
}

impl PlaceSet {
    pub fn infinite() -> Self {
        PlaceSet::default()
    }

    pub fn with_primes(primes: &[u64]) -> Result<Self> {
        for &p in primes {
            if !is_prime(p) {
                return Err(Error::Precondition(format!("{p} is not prime")));
            }
        }
        Ok(PlaceSet { primes: primes.iter().copied().collect() })
    }

    /// S = {∞} ∪ {p | m}.
    pub fn for_modulus(m: u64) -> Self {
        PlaceSet { primes: factorize(m).into_iter().map(|(p, _)| p).collect() }
    }

    /// Parses a comma-separated list such as `infty,7`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut primes = Vec::new();
        let mut saw_infinity = false;
        for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok {
                "infty" | "inf" | "∞" => saw_infinity = true,
                _ => primes.push(
                    tok.parse::<u64>()
                        .map_err(|_| Error::Parse(format!("place '{tok}' is neither infty nor a prime")))?,
                ),
            }
        }
        if !saw_infinity {
            return Err(Error::Parse("place set must contain infty".into()));
        }
        Self::with_primes(&primes)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.contains(&p)
    }

    pub fn contains_primes_of(&self, m: u64) -> bool {
        factorize(m).iter().all(|(p, _)| self.primes.contains(p))
    }

    pub fn union_with_modulus(&self, m: u64) -> Self {
        let mut primes = self.primes.clone();
        primes.extend(factorize(m).into_iter().map(|(p, _)| p));
        PlaceSet { primes }
    }
}

impl fmt::Display for PlaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "infty")?;
        for p in &self.primes {
            write!(f, ",{p}")?;
        }
        Ok(())
    }
}

/// A character of (ℤ/m)^× with values ζ_order^k, extended by zero to non-units.
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    modulus: u64,
    order: u64,
    values: Vec<Option<u64>>,
    conductor: u64,
    primitive: Vec<Option<u64>>,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
            && (0..self.modulus.max(1)).all(|a| self.value(a as i64) == other.value(a as i64))
    }
}

impl DirichletCharacter {
    /// Builds a character from exponents of ζ_order on the units mod m.
    pub fn from_exponents(m: u64, order: u64, exp: impl Fn(u64) -> u64) -> Result<Self> {
        let units = UnitGroup::get(m);
        let size = m.max(1) as usize;
        let mut values = vec![None; size];
        for &a in units.residues() {
            values[(a % m.max(1)) as usize] = Some(exp(a) % order);
        }
        let chi = |a: u64| values[(a % m.max(1)) as usize];
        let g = units.group();
        let structure = g.abelian_structure().expect("unit groups are abelian");
        for &a in units.residues() {
            for &gen in structure.generators() {
                let b = units.residue(gen);
                let lhs = chi(a * b % m.max(1));
                let rhs = (chi(a).unwrap() + chi(b).unwrap()) % order;
                if lhs != Some(rhs) {
                    return Err(Error::NotHomomorphism(format!(
                        "chi({a}*{b}) differs from chi({a})chi({b}) mod {m}"
                    )));
                }
            }
        }
        if m > 1 && chi(1) != Some(0) {
            return Err(Error::NotHomomorphism("chi(1) != 1".into()));
        }
        let conductor = divisors(m.max(1))
            .into_iter()
            .find(|&f| {
                units
                    .residues()
                    .iter()
                    .filter(|&&a| a % f == 1 % f)
                    .all(|&a| chi(a) == Some(0))
            })
            .expect("m itself is a period");
        let mut primitive = vec![None; conductor as usize];
        for a in 0..conductor {
            if gcd_u64(a, conductor) != 1 && conductor > 1 {
                continue;
            }
            let lift = (0..m.max(1))
                .map(|t| a + t * conductor)
                .find(|&b| gcd_u64(b, m) == 1)
                .expect("units lift");
            primitive[a as usize] = chi(lift);
        }
        Ok(DirichletCharacter { modulus: m, order, values, conductor, primitive })
    }

    pub fn trivial(m: u64) -> Self {
        Self::from_exponents(m, 1, |_| 0).expect("trivial character")
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Values are powers of ζ_order.
    pub fn value_order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_none_or(|k| k == 0))
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    /// χ(−1) = ±1.
    pub fn parity(&self) -> i8 {
        match self.exponent(-1) {
            Some(0) | None => 1,
            _ => -1,
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 1
    }

    pub fn exponent(&self, a: i64) -> Option<u64> {
        let m = self.modulus.max(1) as i64;
        self.values[a.rem_euclid(m) as usize]
    }

    pub fn value(&self, a: i64) -> Cyclotomic {
        match self.exponent(a) {
            Some(k) => Cyclotomic::root_of_unity(self.order, k as i64),
            None => Cyclotomic::zero(),
        }
    }

    /// Exponent of the associated primitive character at `a`.
    pub fn primitive_exponent(&self, a: i64) -> Option<u64> {
        let f = self.conductor as i64;
        self.primitive[a.rem_euclid(f) as usize]
    }

    pub fn primitive_value(&self, a: i64) -> Cyclotomic {
        match self.primitive_exponent(a) {
            Some(k) => Cyclotomic::root_of_unity(self.order, k as i64),
            None => Cyclotomic::zero(),
        }
    }

    pub fn conj(&self) -> Self {
        let o = self.order;
        Self::from_exponents(self.modulus, o, |a| (o - self.exponent(a as i64).unwrap()) % o)
            .expect("conjugate character")
    }

    /// χ^z, the Galois conjugate under ζ ↦ ζ^z.
    pub fn galois(&self, z: u64) -> Self {
        let o = self.order;
        Self::from_exponents(self.modulus, o, |a| self.exponent(a as i64).unwrap() * z % o)
            .expect("galois conjugate")
    }

    /// Pointwise product of two characters of the same modulus.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::Precondition("characters of different moduli".into()));
        }
        let o = crate::scalar::lcm_u64(self.order, other.order);
        let (s, t) = (o / self.order, o / other.order);
        Self::from_exponents(self.modulus, o, |a| {
            self.exponent(a as i64).unwrap() * s + other.exponent(a as i64).unwrap() * t
        })
    }
}

/// All φ(m) characters mod m in the canonical (lexicographic exponent tuple) order.
pub fn characters_mod(m: u64) -> Vec<DirichletCharacter> {
    let units = UnitGroup::get(m);
    let s = units.group().abelian_structure().expect("abelian");
    (0..s.character_count())
        .map(|chi| character_from_index(&units, chi))
        .collect()
}

pub fn character_from_index(units: &UnitGroup, chi: usize) -> DirichletCharacter {
    let s = units.group().abelian_structure().expect("abelian");
    DirichletCharacter::from_exponents(units.modulus(), s.exponent(), |a| {
        s.character_value_exp(chi, units.index_of(a as i64).expect("unit"))
    })
    .expect("structure characters are homomorphisms")
}

fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]));
    let mut b = cache.lock().unwrap();
    while b.len() <= n {
        // Σ_{k=0}^{j} C(j+1, k) B_k = 0
        let j = b.len();
        let mut s = Rational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            s += Rational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(j + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-s / Rational::from_integer(BigInt::from(j + 1)));
    }
    b[..=n].to_vec()
}

/// B_n with B₁ = −1/2.
pub fn bernoulli_number(n: usize) -> Rational {
    bernoulli_numbers(n)[n].clone()
}

/// B_n(x) = Σ_k C(n,k) B_k x^{n−k}.
pub fn bernoulli_polynomial(n: usize, x: &Rational) -> Rational {
    let b = bernoulli_numbers(n);
    let mut total = Rational::zero();
    let mut binom = BigInt::one();
    for (k, bk) in b.iter().enumerate() {
        total += Rational::from_integer(binom.clone()) * bk * pow_rational(x, (n - k) as u32);
        binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
    }
    total
}

fn pow_rational(x: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}

fn pow_int(p: u64, k: u32) -> Rational {
    Rational::from_integer(BigInt::from(p).pow(k))
}

/// B_{n,χ} = f^{n−1} Σ_{a=1}^{f} χ(a) B_n(a/f) for the primitive character attached to χ.
pub fn generalized_bernoulli(n: usize, chi: &DirichletCharacter) -> Result<Cyclotomic> {
    if n == 0 {
        return Err(Error::Precondition("generalized Bernoulli index must be positive".into()));
    }
    let f = chi.conductor();
    let o = chi.value_order();
    let mut buf = vec![Rational::zero(); o as usize];
    for a in 1..=f {
        if let Some(k) = chi.primitive_exponent(a as i64) {
            buf[k as usize] += bernoulli_polynomial(n, &Rational::new(BigInt::from(a), BigInt::from(f)));
        }
    }
    let scale = pow_int(f, n as u32 - 1);
    let buf = buf.into_iter().map(|c| c * &scale).collect();
    Ok(Cyclotomic::from_power_sums(o, buf))
}

/// L_S(r, χ) for r ≤ 0: −B_{1−r,χ}/(1−r) times ∏ (1 − χ(p) p^{−r}) over p ∈ S ∪ {p | m} with p ∤ f.
pub fn l_value(r: i64, chi: &DirichletCharacter, places: &PlaceSet) -> Result<Cyclotomic> {
    if r > 0 {
        return Err(Error::Precondition(format!("L-values only at r <= 0, got {r}")));
    }
    let n = (1 - r) as usize;
    let b = generalized_bernoulli(n, chi)?;
    let mut value = b * Cyclotomic::from_rational(-Rational::new(BigInt::one(), BigInt::from(n)));
    let f = chi.conductor();
    for p in places.union_with_modulus(chi.modulus()).primes() {
        if f.is_multiple_of(p) {
            continue;
        }
        let factor = Cyclotomic::one()
            - chi.primitive_value(p as i64) * Cyclotomic::from_rational(pow_int(p, (-r) as u32));
        value = value * factor;
    }
    Ok(value)
}

fn check_partial_zeta_args(r: i64, a: i64, m: u64, places: &PlaceSet) -> Result<()> {
    if r > 0 {
        return Err(Error::Precondition(format!("partial zeta only at r <= 0, got {r}")));
    }
    if m == 0 || gcd_u64(a.rem_euclid(m as i64) as u64, m) != 1 && m > 1 {
        return Err(Error::Precondition(format!("{a} is not a unit mod {m}")));
    }
    if !places.contains_primes_of(m) {
        return Err(Error::Precondition(format!("S = {places} misses a prime dividing {m}")));
    }
    Ok(())
}

/// ζ(1−n, σ_b) summed over k ≡ b mod m: −m^{n−1} B_n(b/m)/n with b ∈ [1, m].
fn hurwitz_partial(n: usize, b: i64, m: u64) -> Rational {
    let mi = m as i64;
    let mut rep = b.rem_euclid(mi);
    if rep == 0 {
        rep = mi;
    }
    let x = Rational::new(BigInt::from(rep), BigInt::from(m));
    -pow_int(m, n as u32 - 1) * bernoulli_polynomial(n, &x) / int(n as i64)
}

/// ζ_S(r, σ_a) via Hurwitz values, with primes of S not dividing m removed by Möbius inversion.
pub fn partial_zeta(r: i64, a: i64, m: u64, places: &PlaceSet) -> Result<Rational> {
    check_partial_zeta_args(r, a, m, places)?;
    let n = (1 - r) as usize;
    let extra: Vec<u64> = places.primes().filter(|p| !m.is_multiple_of(*p)).collect();
    let mut total = Rational::zero();
    for mask in 0u32..(1 << extra.len()) {
        let mut d = 1u64;
        let mut sign = 1i64;
        for (i, &p) in extra.iter().enumerate() {
            if mask >> i & 1 == 1 {
                d *= p;
                sign = -sign;
            }
        }
        let b = if m <= 1 {
            1
        } else {
            let dinv = mod_inverse(d % m, m).expect("d prime to m");
            (a.rem_euclid(m as i64) as u64 * dinv % m) as i64
        };
        total += int(sign) * pow_int(d, (-r) as u32) * hurwitz_partial(n, b, m.max(1));
    }
    Ok(total)
}

/// ζ_S(r, σ_a) = |G|⁻¹ Σ_χ χ̄(a) L_S(r, χ).
pub fn partial_zeta_by_characters(r: i64, a: i64, m: u64, places: &PlaceSet) -> Result<Rational> {
    check_partial_zeta_args(r, a, m, places)?;
    let chars = characters_mod(m);
    let mut total = Cyclotomic::zero();
    for chi in &chars {
        let l = l_value(r, chi, places)?;
        total = total + chi.value(a).conj() * l;
    }
    let total = total * Cyclotomic::from_rational(Rational::new(BigInt::one(), BigInt::from(chars.len())));
    total.to_rational().ok_or_else(|| Error::NotRational {
        element: format!("σ{a}"),
        value: total.to_string(),
    })
}

/// Both routes, failing if they disagree.
pub fn partial_zeta_checked(r: i64, a: i64, m: u64, places: &PlaceSet) -> Result<Rational> {
    let x = partial_zeta(r, a, m, places)?;
    let y = partial_zeta_by_characters(r, a, m, places)?;
    if x != y {
        return Err(Error::Integrality(format!(
            "partial zeta routes disagree at r={r}, a={a}, m={m}: {x} vs {y}"
        )));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn quadratic_mod3() -> DirichletCharacter {
        characters_mod(3).into_iter().find(|c| !c.is_trivial()).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(characters_mod(1).len(), 1);
        assert_eq!(characters_mod(3).len(), 2);
        let c7 = characters_mod(7);
        assert_eq!(c7.len(), 6);
        assert_eq!(c7.iter().filter(|c| c.parity() == -1).count(), 3);
    }

    #[test]
    fn conductors() {
        let c12 = characters_mod(12);
        let mut fs: Vec<u64> = c12.iter().map(|c| c.conductor()).collect();
        fs.sort_unstable();
        assert_eq!(fs, vec![1, 3, 4, 12]);
        assert_eq!(quadratic_mod3().conductor(), 3);
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(4), rat(-1, 30));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
        assert_eq!(bernoulli_polynomial(1, &rat(1, 3)), rat(-1, 6));
        assert_eq!(bernoulli_polynomial(2, &rat(0, 1)), rat(1, 6));
    }

    #[test]
    fn generalized_examples() {
        let chi = quadratic_mod3();
        assert_eq!(generalized_bernoulli(1, &chi).unwrap(), Cyclotomic::from_rational(rat(-1, 3)));
        assert!(generalized_bernoulli(2, &chi).unwrap().is_zero());
        let triv = DirichletCharacter::trivial(1);
        assert_eq!(generalized_bernoulli(2, &triv).unwrap(), Cyclotomic::from_rational(rat(1, 6)));
        assert_eq!(generalized_bernoulli(1, &triv).unwrap(), Cyclotomic::from_rational(rat(1, 2)));
        assert!(generalized_bernoulli(0, &triv).is_err());
    }

    #[test]
    fn l_value_examples() {
        let s3 = PlaceSet::parse("infty,3").unwrap();
        assert_eq!(l_value(0, &quadratic_mod3(), &s3).unwrap(), Cyclotomic::from_rational(rat(1, 3)));
        let triv = DirichletCharacter::trivial(1);
        let inf = PlaceSet::infinite();
        assert_eq!(l_value(-1, &triv, &inf).unwrap(), Cyclotomic::from_rational(rat(-1, 12)));
        assert_eq!(l_value(-1, &triv, &s3).unwrap(), Cyclotomic::from_rational(rat(1, 6)));
        assert!(l_value(0, &triv, &s3).unwrap().is_zero());
    }

    #[test]
    fn partial_zeta_examples() {
        let s7 = PlaceSet::parse("infty,7").unwrap();
        assert_eq!(partial_zeta(0, 3, 7, &s7).unwrap(), rat(1, 14));
        assert_eq!(partial_zeta_checked(0, 3, 7, &s7).unwrap(), rat(1, 14));
        let s3 = PlaceSet::parse("infty,3").unwrap();
        assert_eq!(partial_zeta_checked(0, 1, 3, &s3).unwrap(), rat(1, 6));
        let total = (1..7).fold(Rational::zero(), |acc, a| acc + partial_zeta(0, a, 7, &s7).unwrap());
        assert!(total.is_zero());
        assert!(partial_zeta(0, 3, 9, &s3).is_err());
        assert!(partial_zeta(0, 1, 7, &PlaceSet::infinite()).is_err());
    }

    #[test]
    fn extra_primes_in_s() {
        let s = PlaceSet::parse("infty,3,5").unwrap();
        for r in [0, -1, -2] {
            for a in [1, 2] {
                assert_eq!(
                    partial_zeta(r, a, 3, &s).unwrap(),
                    partial_zeta_by_characters(r, a, 3, &s).unwrap()
                );
            }
        }
    }

    #[test]
    fn place_set_parsing() {
        assert_eq!(PlaceSet::parse("infty,7").unwrap().to_string(), "infty,7");
        assert!(PlaceSet::parse("7").is_err());
        assert!(PlaceSet::parse("infty,8").is_err());
    }
}
