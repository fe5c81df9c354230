//! Stickelberger elements, half-Stickelberger elements and the base-change element.

use std::sync::Arc;

use num_traits::Zero;

use crate::cyclotomic::Cyclotomic;
use crate::dirichlet::{
    character_from_index, characters_mod, l_value, partial_zeta, DirichletCharacter, PlaceSet,
    UnitGroup,
};
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::group_ring::{lambda_assemble, GroupRingElement};
use crate::scalar::{int, is_prime, lcm_u64, mod_inverse, mod_pow, Rational};
use crate::QGroupRing;

/// θ = Σ_σ ζ_S(r, σ⁻¹) σ on (ℤ/m)^×.
#[derive(Clone, Debug)]
pub struct StickelbergerElement {
    pub modulus: u64,
    pub places: PlaceSet,
    pub r: i64,
    pub element: QGroupRing,
}

fn check_places(m: u64, places: &PlaceSet) -> Result<()> {
    if places.contains_primes_of(m) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("S = {places} must contain every prime dividing {m}")))
    }
}

fn inverse_residue(a: u64, m: u64) -> i64 {
    if m <= 1 {
        1
    } else {
        mod_inverse(a, m).expect("unit") as i64
    }
}

/// Partial-zeta construction.
pub fn stickelberger(m: u64, places: &PlaceSet, r: i64) -> Result<StickelbergerElement> {
    check_places(m, places)?;
    let units = UnitGroup::get(m);
    let coeffs: Result<Vec<Rational>> = units
        .residues()
        .iter()
        .map(|&a| partial_zeta(r, inverse_residue(a, m), m, places))
        .collect();
    let element = GroupRingElement::from_coeffs(units.group(), coeffs?)?;
    Ok(StickelbergerElement { modulus: m, places: places.clone(), r, element })
}

/// Character construction: λ(χ ↦ L_S(r, χ̄)).
pub fn stickelberger_by_characters(m: u64, places: &PlaceSet, r: i64) -> Result<QGroupRing> {
    check_places(m, places)?;
    let units = UnitGroup::get(m);
    let values: Result<Vec<Cyclotomic>> =
        characters_mod(m).iter().map(|chi| l_value(r, &chi.conj(), places)).collect();
    lambda_assemble(units.group(), &values?)
}

/// Both constructions, failing if they disagree.
pub fn stickelberger_checked(m: u64, places: &PlaceSet, r: i64) -> Result<StickelbergerElement> {
    let theta = stickelberger(m, places, r)?;
    let other = stickelberger_by_characters(m, places, r)?;
    if theta.element != other {
        return Err(Error::Integrality(format!(
            "Stickelberger routes disagree at m={m}, r={r}: {} vs {other}",
            theta.element
        )));
    }
    Ok(theta)
}

/// e₋^(r) = (1 − (−1)^r c)/2, the idempotent whose image contains θ(r).
pub fn minus_idempotent(m: u64, r: i64) -> QGroupRing {
    sign_idempotent(m, if r % 2 == 0 { -1 } else { 1 })
}

/// e₊^(r) = (1 + (−1)^r c)/2.
pub fn plus_idempotent(m: u64, r: i64) -> QGroupRing {
    sign_idempotent(m, if r % 2 == 0 { 1 } else { -1 })
}

fn sign_idempotent(m: u64, sign: i64) -> QGroupRing {
    let units = UnitGroup::get(m);
    let g = units.group();
    let half = Rational::new(1.into(), 2.into());
    let c = units.conjugation();
    if c == g.identity() {
        return if sign == 1 { GroupRingElement::one(g) } else { GroupRingElement::zero(g) };
    }
    GroupRingElement::from_pairs(g, &[(g.identity(), half.clone()), (c, half * int(sign))])
}

/// Number of roots of unity in ℚ(ζ_m).
pub fn roots_of_unity_count(m: u64) -> u64 {
    if m.is_multiple_of(2) {
        m
    } else {
        2 * m
    }
}

/// The index-2 subgroup of squares in (ℤ/m)^×, as residues.
pub fn squares_subgroup(m: u64) -> Vec<u64> {
    let units = UnitGroup::get(m);
    let mut sq: Vec<u64> = units.residues().iter().map(|&a| a * a % m).collect();
    sq.sort_unstable();
    sq.dedup();
    sq
}

/// θ̃ on an index-2 subgroup H avoiding complex conjugation.
#[derive(Clone, Debug)]
pub struct HalfStickelberger {
    pub modulus: u64,
    pub subgroup: Subgroup,
    pub residues: Vec<u64>,
    pub element: QGroupRing,
}

pub fn half_stickelberger(m: u64, h: &[u64], places: &PlaceSet) -> Result<HalfStickelberger> {
    check_places(m, places)?;
    let units = UnitGroup::get(m);
    let mut idx = Vec::with_capacity(h.len());
    for &a in h {
        idx.push(units.index_of(a as i64).ok_or_else(|| {
            Error::InvalidSubgroup(format!("{a} is not a unit mod {m}"))
        })?);
    }
    let sub = units.group().subgroup(&idx)?;
    if 2 * sub.embed.len() != units.order() {
        return Err(Error::InvalidSubgroup(format!(
            "subgroup has order {} but index 2 requires {}",
            sub.embed.len(),
            units.order() / 2
        )));
    }
    if sub.embed.contains(&units.conjugation()) {
        return Err(Error::InvalidSubgroup("complex conjugation lies in H".into()));
    }
    let residues: Vec<u64> = sub.embed.iter().map(|&i| units.residue(i)).collect();
    let coeffs: Result<Vec<Rational>> = residues
        .iter()
        .map(|&a| partial_zeta(0, inverse_residue(a, m), m, places))
        .collect();
    let element = GroupRingElement::from_coeffs(&sub.group, coeffs?)?;
    Ok(HalfStickelberger { modulus: m, subgroup: sub, residues, element })
}

/// Embeds an element of ℚ[H] into ℚ[(ℤ/m)^×].
pub fn embed_subgroup_element(sub: &Subgroup, parent: &Arc<crate::FiniteGroup>, x: &QGroupRing) -> QGroupRing {
    x.push_forward(parent, &sub.embed)
}

/// The cyclotomic layer m = ℓ^{n+1} with ℓ ≡ 3 mod 4, ℓ > 3.
pub fn check_imaginary_quadratic_prime(ell: u64) -> Result<()> {
    if !is_prime(ell) || ell % 4 != 3 || ell <= 3 {
        return Err(Error::Precondition(format!("need a prime ell = 3 mod 4 with ell > 3, got {ell}")));
    }
    Ok(())
}

/// Even characters ψ of (ℤ/m)^×, indexed by their restrictions φ to H in H's character order,
/// each returned together with ρψ for the quadratic character ρ mod ℓ.
pub struct EvenCharacterData {
    pub half: HalfStickelberger,
    pub psi: Vec<DirichletCharacter>,
    pub rho_psi: Vec<DirichletCharacter>,
}

pub fn even_character_data(ell: u64, n: u32) -> Result<EvenCharacterData> {
    check_imaginary_quadratic_prime(ell)?;
    let m = ell.pow(n + 1);
    let places = PlaceSet::with_primes(&[ell])?;
    let half = half_stickelberger(m, &squares_subgroup(m), &places)?;
    let hs = half.subgroup.group.abelian_structure().expect("abelian");
    let e_h = hs.exponent();
    let order = lcm_u64(e_h, 2);
    let pos_in_h = |a: u64| half.residues.iter().position(|&b| b == a);
    let mut psi = Vec::new();
    let mut rho_psi = Vec::new();
    for phi in 0..hs.character_count() {
        let exp_psi = |a: u64| {
            let h = pos_in_h(a).or_else(|| pos_in_h((m - a) % m)).expect("G = H x <c>");
            hs.character_value_exp(phi, h) * (order / e_h)
        };
        let p = DirichletCharacter::from_exponents(m, order, exp_psi)?;
        let legendre = |a: u64| if mod_pow(a % ell, (ell - 1) / 2, ell) == 1 { 0 } else { order / 2 };
        let rp = DirichletCharacter::from_exponents(m, order, |a| exp_psi(a) + legendre(a))?;
        debug_assert!(p.is_even() && !rp.is_even());
        psi.push(p);
        rho_psi.push(rp);
    }
    Ok(EvenCharacterData { half, psi, rho_psi })
}

/// For each even ψ: (L_S(0, ρψ), 2·ψ|_H(τθ̃)) with S = {∞, ℓ}.
pub fn rho_psi_identity(ell: u64, n: u32) -> Result<Vec<(Cyclotomic, Cyclotomic)>> {
    let data = even_character_data(ell, n)?;
    let places = PlaceSet::with_primes(&[ell])?;
    let tau_theta = data.half.element.tau();
    let two = Cyclotomic::from_rational(int(2));
    data.rho_psi
        .iter()
        .enumerate()
        .map(|(phi, rp)| Ok((l_value(0, rp, &places)?, two.clone() * tau_theta.evaluate(phi)?)))
        .collect()
}

/// B = Σ_{ψ even} L_S(0, ρψ)⁻¹ e_{ψ|H} on H.
pub fn base_change_element(ell: u64, n: u32) -> Result<(HalfStickelberger, QGroupRing)> {
    let data = even_character_data(ell, n)?;
    let places = PlaceSet::with_primes(&[ell])?;
    let mut values = Vec::with_capacity(data.rho_psi.len());
    for rp in &data.rho_psi {
        let l = l_value(0, rp, &places)?;
        if l.is_zero() {
            return Err(Error::ZeroDivision(format!("L_S(0, rho psi) vanishes mod {}", rp.modulus())));
        }
        values.push(l.inv().expect("nonzero"));
    }
    let b = lambda_assemble(&data.half.subgroup.group, &values)?;
    Ok((data.half, b))
}

/// Characters mod m given by their index in the canonical enumeration.
pub fn character(m: u64, index: usize) -> Result<DirichletCharacter> {
    let units = UnitGroup::get(m);
    if index >= units.order() {
        return Err(Error::Precondition(format!(
            "character index {index} out of range for modulus {m} ({} characters)",
            units.order()
        )));
    }
    Ok(character_from_index(&units, index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn coeffs(x: &QGroupRing) -> Vec<Rational> {
        x.coeffs().to_vec()
    }

    #[test]
    fn small_stickelberger_elements() {
        let s3 = PlaceSet::parse("infty,3").unwrap();
        let t = stickelberger_checked(3, &s3, 0).unwrap();
        assert_eq!(coeffs(&t.element), vec![rat(1, 6), rat(-1, 6)]);
        let t = stickelberger_checked(3, &s3, -1).unwrap();
        assert_eq!(coeffs(&t.element), vec![rat(1, 12), rat(1, 12)]);
        let s7 = PlaceSet::parse("infty,7").unwrap();
        let t = stickelberger_checked(7, &s7, 0).unwrap();
        let expected: Vec<Rational> = [5, -1, -3, 3, 1, -5].iter().map(|&k| rat(k, 14)).collect();
        assert_eq!(coeffs(&t.element), expected);
        assert!(stickelberger(9, &PlaceSet::infinite(), 0).is_err());
    }

    #[test]
    fn half_element_at_seven() {
        let s7 = PlaceSet::parse("infty,7").unwrap();
        let h = half_stickelberger(7, &[1, 2, 4], &s7).unwrap();
        assert_eq!(coeffs(&h.element), vec![rat(5, 14), rat(-1, 14), rat(3, 14)]);
        assert!(half_stickelberger(7, &[1, 6], &s7).is_err());
        assert!(half_stickelberger(7, &[1, 2, 4, 6], &s7).is_err());
    }

    #[test]
    fn base_change_at_seven() {
        let (half, b) = base_change_element(7, 0).unwrap();
        let two_theta = half.element.scale(&int(2));
        assert!((&b.tau() * &two_theta).is_one());
        for (lhs, rhs) in rho_psi_identity(7, 0).unwrap() {
            assert_eq!(lhs, rhs);
        }
        assert!(base_change_element(5, 0).is_err());
    }
}
