//! Explicit fractional ideals for ℚ(ζ_{ℓ^{n+1}}), its real subfield and the imaginary
//! quadratic base, eigen-projections over Γ_n, and torsion annihilators.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::check::{format_vector, CheckResult};
use crate::cyclotomic::Cyclotomic;
use crate::dirichlet::{PlaceSet, UnitGroup};
use crate::error::{Error, Result};
use crate::functorial::Tower;
use crate::group::FiniteGroup;
use crate::group_ring::GroupRingElement;
use crate::ideal::{Ambient, FractionalIdeal};
use crate::padic::{combine, prime_power, teichmuller, LAdic};
use crate::scalar::{int, is_prime, mod_pow, rat, Rational};
use crate::stickelberger::{base_change_element, plus_idempotent, stickelberger, HalfStickelberger};
use crate::{QGroupRing, QMatrix};

pub const DEFAULT_PRECISION: u32 = 20;

/// m = ℓ^{n+1}, G_n = (ℤ/m)^× = Δ_n × Γ_n.
#[derive(Clone, Debug)]
pub struct CyclotomicLevel {
    pub ell: u64,
    pub n: u32,
    pub modulus: u64,
    units: Arc<UnitGroup>,
    /// Elements of order dividing ℓ − 1.
    pub delta: Vec<usize>,
    /// Elements ≡ 1 mod ℓ.
    pub gamma: Vec<usize>,
}

impl CyclotomicLevel {
    pub fn new(ell: u64, n: u32) -> Result<Self> {
        if !is_prime(ell) || ell == 2 {
            return Err(Error::Precondition(format!("ell = {ell} must be an odd prime")));
        }
        let modulus = ell.pow(n + 1);
        let units = UnitGroup::get(modulus);
        let delta = (0..units.order())
            .filter(|&i| mod_pow(units.residue(i), ell - 1, modulus) == 1)
            .collect();
        let gamma = (0..units.order()).filter(|&i| units.residue(i) % ell == 1).collect();
        Ok(CyclotomicLevel { ell, n, modulus, units, delta, gamma })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.units.group()
    }

    pub fn units(&self) -> &Arc<UnitGroup> {
        &self.units
    }

    /// S = {∞, ℓ}.
    pub fn places(&self) -> PlaceSet {
        PlaceSet::with_primes(&[self.ell]).expect("prime")
    }

    /// G_n → G_n⁺ = G_n/⟨c⟩.
    pub fn plus_tower(&self) -> Tower {
        let c = self.units.conjugation();
        let normal = self.group().closure(&[c]);
        Tower::from_normal(self.group().clone(), &normal).expect("central subgroup")
    }

    /// Δ-component δ = g^{ℓ^n} and Γ-component g·δ⁻¹ of an element.
    pub fn split(&self, g: usize) -> (usize, usize) {
        let a = self.units.residue(g);
        let d = mod_pow(a, self.ell.pow(self.n), self.modulus);
        let d = self.units.index_of(d as i64).expect("unit");
        let group = self.group();
        (d, group.mul(g, group.inv(d)))
    }

    pub fn stickelberger(&self, r: i64) -> Result<QGroupRing> {
        Ok(stickelberger(self.modulus, &self.places(), r)?.element)
    }
}

/// Stand-in for the annihilator of the unit quotient over G_n⁺ (or H_n).
#[derive(Clone, Debug)]
pub struct UnitQuotientFixture {
    pub ideal: FractionalIdeal,
    pub note: String,
}

impl UnitQuotientFixture {
    /// The unit ideal, appropriate when the real layer has class number one.
    pub fn unit(ambient: Ambient) -> Self {
        UnitQuotientFixture {
            ideal: FractionalIdeal::unit(ambient),
            note: "unit ideal (class number one assumed for the real layer)".into(),
        }
    }
}

/// ℤ[1/2][G]⟨I⟩ · τ(R⁻¹).
pub fn ideal_from_components(group: &Arc<FiniteGroup>, i_gens: &[QGroupRing], r: &QGroupRing) -> Result<FractionalIdeal> {
    let inv = r
        .inverse()
        .map_err(|_| Error::NotInvertible(format!("R = {r} is not a unit of Q[G]")))?;
    FractionalIdeal::from_generators(group, i_gens)?.scale_by(&inv.tau())
}

#[derive(Clone, Debug)]
pub struct FullIdeal {
    pub ideal: FractionalIdeal,
    pub plus: FractionalIdeal,
    pub minus: FractionalIdeal,
}

/// ½e₊^(r)·lift(U) ⊕ ℤ[1/2][G]θ(r), with ḡ lifted to its smallest representative.
pub fn ideal_j_full(level: &CyclotomicLevel, r: i64, u: &UnitQuotientFixture) -> Result<FullIdeal> {
    let tower = level.plus_tower();
    let group = level.group();
    let e_plus = plus_idempotent(level.modulus, r);
    let half = rat(1, 2);
    let mut gens = Vec::with_capacity(u.ideal.rank());
    for b in u.ideal.basis_elements(&tower.quotient)? {
        let lifted = b.push_forward(group, &tower.reps);
        gens.push((&e_plus * &lifted).scale(&half));
    }
    let plus = FractionalIdeal::from_generators(group, &gens)?;
    let minus = FractionalIdeal::principal(&level.stickelberger(r)?)?;
    let ideal = plus.sum(&minus)?;
    if ideal.rank() != plus.rank() + minus.rank() {
        return Err(Error::Precondition("plus and minus summands intersect".into()));
    }
    Ok(FullIdeal { ideal, plus, minus })
}

/// ½U over G_n⁺.
pub fn ideal_j_real(u: &UnitQuotientFixture) -> FractionalIdeal {
    u.ideal.scale_rational(&rat(1, 2))
}

#[derive(Clone, Debug)]
pub struct ImagQuadIdeal {
    pub ideal: FractionalIdeal,
    pub half: HalfStickelberger,
    pub base_change: QGroupRing,
    /// Φ⁻¹(J over G_n⁺).
    pub transported_real: FractionalIdeal,
}

/// Φ: ℚ[H_n] → ℚ[G_n⁺] induced by H_n ⊂ G_n → G_n⁺.
pub fn half_to_plus_matrix(level: &CyclotomicLevel, half: &HalfStickelberger) -> QMatrix {
    let tower = level.plus_tower();
    QMatrix::from_fn(tower.quotient.order(), half.subgroup.embed.len(), |q, h| {
        if tower.proj[half.subgroup.embed[h]] == q {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// Φ⁻¹(2Φ(θ̃)·J_real) = 2θ̃·Φ⁻¹(J_real) over H_n.
pub fn ideal_j_imagquad(ell: u64, n: u32, u: &UnitQuotientFixture) -> Result<ImagQuadIdeal> {
    let level = CyclotomicLevel::new(ell, n)?;
    let (half, base_change) = base_change_element(ell, n)?;
    let phi = half_to_plus_matrix(&level, &half);
    let transported_real = ideal_j_real(u).map_preimage(&phi, Ambient::of_group(&half.subgroup.group))?;
    let ideal = transported_real.scale_by(&half.element.scale(&int(2)))?;
    Ok(ImagQuadIdeal { ideal, half, base_change, transported_real })
}

/// τ(B)·J = Φ⁻¹(J_real).
pub fn check_imagquad_base_change(j: &ImagQuadIdeal) -> Result<CheckResult> {
    let scaled = j.ideal.scale_by(&j.base_change.tau())?;
    let name = format!("tau(B) J = Phi^-1(J real) at m = {}", j.half.modulus);
    Ok(if scaled == j.transported_real {
        CheckResult::pass(name)
    } else {
        CheckResult::fail(name, format!("{scaled} vs {}", j.transported_real))
    })
}

#[derive(Clone, Debug)]
pub struct ProjectionCoefficients {
    pub exact: Vec<Cyclotomic>,
    pub ladic: Vec<LAdic>,
    pub min_valuation: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct EigenProjection {
    /// δ* = ω^power.
    pub power: u64,
    pub precision: u32,
    /// Residues of Γ_n in ascending order.
    pub gamma: Vec<u64>,
    pub raw: ProjectionCoefficients,
    /// π(δ*)((1 − (1+ℓ)σ⁻¹)x), present when δ* = ω.
    pub smoothed: Option<ProjectionCoefficients>,
}

fn project(level: &CyclotomicLevel, power: u64, x: &QGroupRing, precision: u32) -> Result<ProjectionCoefficients> {
    let ell = level.ell;
    let order = ell - 1;
    let units = level.units();
    let root = (2..ell.max(3))
        .find(|&g| (1..order).all(|k| mod_pow(g, k, ell) != 1))
        .unwrap_or(1);
    let dlog = |a: u64| (0..order).find(|&j| mod_pow(root, j, ell) == a % ell).expect("primitive root");
    let omega_root = teichmuller(root, ell, precision)?;
    let modulus = prime_power(ell, precision);
    let mut exact = Vec::with_capacity(level.gamma.len());
    let mut ladic = Vec::with_capacity(level.gamma.len());
    for &gam in &level.gamma {
        let mut buf = vec![Rational::zero(); order as usize];
        let mut terms = Vec::with_capacity(level.delta.len());
        for &d in &level.delta {
            let g = level.group().mul(d, gam);
            let c = x.coeff(g).clone();
            let j = (power * dlog(units.residue(d))) % order;
            buf[j as usize] += &c;
            terms.push((c, omega_root.modpow(&BigInt::from(j), &modulus)));
        }
        let value = Cyclotomic::from_power_sums(order, buf);
        ladic.push(combine(&terms, ell, precision, value.is_zero())?);
        exact.push(value);
    }
    let min_valuation = ladic.iter().filter_map(|c| c.valuation).min();
    Ok(ProjectionCoefficients { exact, ladic, min_valuation })
}

/// π_n(δ*)(x) with δ* = ω^power, the Teichmüller character raised to `power`.
pub fn eigen_projection(level: &CyclotomicLevel, power: u64, x: &QGroupRing, precision: u32) -> Result<EigenProjection> {
    if x.group().as_ref() != level.group().as_ref() {
        return Err(Error::GroupMismatch);
    }
    let power = power % (level.ell - 1);
    let raw = project(level, power, x, precision)?;
    let smoothed = if power == 1 % (level.ell - 1) {
        let group = level.group();
        let sigma = level.units().index_of((1 + level.ell) as i64).expect("unit");
        let factor = &GroupRingElement::one(group)
            - &GroupRingElement::basis(group, group.inv(sigma)).scale(&int(1 + level.ell as i64));
        Some(project(level, power, &(x * &factor), precision)?)
    } else {
        None
    };
    let gamma = level.gamma.iter().map(|&g| level.units().residue(g)).collect();
    Ok(EigenProjection { power, precision, gamma, raw, smoothed })
}

#[derive(Clone, Debug)]
pub struct TorsionAnnihilator {
    pub v: u32,
    pub order: BigInt,
    pub generators: Vec<QGroupRing>,
    pub ideal: FractionalIdeal,
}

/// Largest k with a^{1−r} ≡ 1 mod ℓ^k for all a ≡ 1 mod ℓ^{min(k, v_ℓ(m))}.
pub fn torsion_exponent(m: u64, ell: u64, r: i64) -> u32 {
    let e = (0..).find(|&k| !m.is_multiple_of(ell.pow(k + 1))).unwrap_or(0);
    let power = (1 - r) as u64;
    let mut v = 0;
    for k in 1..=e + 16 {
        let modulus = (ell as u128).pow(k);
        let step = (ell as u128).pow(k.min(e));
        let ok = (1..modulus)
            .step_by(step as usize)
            .filter(|a| a % ell as u128 != 0)
            .all(|a| mod_pow_u128(a, power, modulus) == 1);
        if !ok {
            break;
        }
        v = k;
    }
    v
}

fn mod_pow_u128(mut b: u128, mut e: u64, m: u128) -> u128 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Ideal generated by ℓ^v and σ_a − a^{1−r} over (ℤ/m)^×.
pub fn torsion_annihilator(m: u64, ell: u64, r: i64) -> Result<TorsionAnnihilator> {
    if !is_prime(ell) || ell == 2 {
        return Err(Error::Precondition(format!("ell = {ell} must be an odd prime")));
    }
    if m < ell || !m.is_multiple_of(ell) || !(0..).map(|k| ell.pow(k)).take_while(|&p| p <= m).any(|p| p == m) {
        return Err(Error::Precondition(format!("m = {m} must be a positive power of {ell}")));
    }
    if r >= 0 {
        return Err(Error::Precondition(format!("r = {r} must be negative")));
    }
    let v = torsion_exponent(m, ell, r);
    let order = num_traits::pow(BigInt::from(ell), v as usize);
    let units = UnitGroup::get(m);
    let group = units.group();
    let modulus = ell.pow(v);
    let mut generators = vec![GroupRingElement::scalar(group, Rational::from(order.clone()))];
    for (i, &a) in units.residues().iter().enumerate() {
        let twist = mod_pow(a, (1 - r) as u64, modulus) as i64;
        let g = &GroupRingElement::basis(group, i) - &GroupRingElement::scalar(group, int(twist));
        if !g.is_zero() {
            generators.push(g);
        }
    }
    let ideal = FractionalIdeal::from_generators(group, &generators)?;
    Ok(TorsionAnnihilator { v, order, generators, ideal })
}

/// Every coefficient of ann · θ(r) is ℓ-integral.
pub fn check_torsion_integrality(m: u64, ell: u64, r: i64) -> Result<CheckResult> {
    let ann = torsion_annihilator(m, ell, r)?;
    let theta = stickelberger(m, &PlaceSet::with_primes(&[ell])?, r)?.element;
    let product = ann.ideal.scale_by(&theta)?;
    let name = format!("ann(tors) theta({r}) is {ell}-integral at m = {m}");
    let labels = product.ambient().labels().to_vec();
    for v in product.basis_vectors() {
        if v.iter().any(|q| crate::scalar::valuation(q, ell).is_some_and(|x| x < 0)) {
            return Ok(CheckResult::fail(name, format_vector(&labels, &v)));
        }
    }
    Ok(CheckResult::pass(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_structure() {
        let l = CyclotomicLevel::new(5, 1).unwrap();
        assert_eq!(l.delta.len(), 4);
        assert_eq!(l.gamma.len(), 5);
        for g in 0..l.group().order() {
            let (d, c) = l.split(g);
            assert!(l.delta.contains(&d) && l.gamma.contains(&c));
            assert_eq!(l.group().mul(d, c), g);
        }
    }

    #[test]
    fn full_ideal_at_three() {
        let level = CyclotomicLevel::new(3, 0).unwrap();
        let u = UnitQuotientFixture::unit(Ambient::of_group(&level.plus_tower().quotient));
        let j = ideal_j_full(&level, 0, &u).unwrap();
        assert_eq!(j.ideal.rank(), 2);
        let theta = level.stickelberger(0).unwrap();
        let e_minus = crate::stickelberger::minus_idempotent(3, 0);
        assert_eq!(j.ideal.scale_by(&e_minus).unwrap(), FractionalIdeal::principal(&theta).unwrap());
        assert_eq!(j.ideal.scale_by(&plus_idempotent(3, 0)).unwrap(), j.plus);
    }

    #[test]
    fn torsion_exponents() {
        assert_eq!(torsion_exponent(3, 3, -1), 1);
        assert_eq!(torsion_exponent(9, 3, -1), 2);
        assert_eq!(torsion_exponent(3, 3, -2), 2);
        assert_eq!(torsion_exponent(5, 5, -1), 1);
        let t = torsion_annihilator(3, 3, -1).unwrap();
        assert_eq!(t.order, BigInt::from(3));
        assert!(torsion_annihilator(6, 3, -1).is_err());
    }

    #[test]
    fn worked_integrality_case() {
        let group = UnitGroup::get(3).group().clone();
        let theta = stickelberger(3, &PlaceSet::with_primes(&[3]).unwrap(), -1).unwrap().element;
        let g = &GroupRingElement::basis(&group, 1) - &GroupRingElement::scalar(&group, int(4));
        let p = &g * &theta;
        assert_eq!(p.coeffs(), &[rat(-1, 4), rat(-1, 4)]);
        assert!(check_torsion_integrality(3, 3, -1).unwrap().passed);
    }

    #[test]
    fn eigen_projection_of_one() {
        let level = CyclotomicLevel::new(5, 1).unwrap();
        let one = GroupRingElement::one(level.group());
        let p = eigen_projection(&level, 1, &one, DEFAULT_PRECISION).unwrap();
        assert_eq!(p.raw.min_valuation, Some(0));
        assert_eq!(p.raw.ladic[0].unit, BigInt::one());
    }

    #[test]
    fn eigen_projection_of_theta() {
        let level = CyclotomicLevel::new(5, 0).unwrap();
        let theta = level.stickelberger(0).unwrap();
        let p = eigen_projection(&level, 1, &theta, DEFAULT_PRECISION).unwrap();
        assert_eq!(p.raw.ladic.len(), 1);
        assert_eq!(p.raw.min_valuation, Some(-1));
        assert_eq!(p.smoothed.unwrap().min_valuation, Some(0));
        let level = CyclotomicLevel::new(3, 1).unwrap();
        let theta = level.stickelberger(0).unwrap();
        let p = eigen_projection(&level, 1, &theta, DEFAULT_PRECISION).unwrap();
        assert_eq!(p.gamma.len(), 3);
        assert_eq!(p.raw.ladic.len(), 3);
    }
}
