//! Quotient, inclusion, fixed-point and corestriction maps between group rings,
//! and containment checks for fractional ideals along towers.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::check::{format_vector, CheckResult};
use crate::cyclotomic::Cyclotomic;
use crate::dirichlet::UnitGroup;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::group_ring::{abelian, det_leibniz, det_over_group_ring, same_group, GroupRingElement, GroupRingMatrix};
use crate::ideal::{Ambient, FractionalIdeal};
use crate::scalar::{int, Rational};
use crate::{QGroupRing, QMatrix};

/// G = Gal(L/F) with normal subgroup N = Gal(L/K) and quotient Q = Gal(K/F).
#[derive(Clone, Debug)]
pub struct Tower {
    pub top: Arc<FiniteGroup>,
    pub quotient: Arc<FiniteGroup>,
    /// Image in `quotient` of each element of `top`.
    pub proj: Vec<usize>,
    pub kernel: Vec<usize>,
    /// Smallest preimage of each quotient element.
    pub reps: Vec<usize>,
}

impl Tower {
    /// Validates that `proj` is a surjective homomorphism.
    pub fn from_projection(top: Arc<FiniteGroup>, quotient: Arc<FiniteGroup>, proj: Vec<usize>) -> Result<Self> {
        if proj.len() != top.order() {
            return Err(Error::DimensionMismatch { expected: top.order(), found: proj.len() });
        }
        for a in 0..top.order() {
            for b in 0..top.order() {
                if proj[top.mul(a, b)] != quotient.mul(proj[a], proj[b]) {
                    return Err(Error::NotHomomorphism(format!(
                        "{} * {} does not map to the product of images",
                        top.label(a),
                        top.label(b)
                    )));
                }
            }
        }
        let mut reps = vec![usize::MAX; quotient.order()];
        for (a, &q) in proj.iter().enumerate() {
            if reps[q] == usize::MAX {
                reps[q] = a;
            }
        }
        if reps.contains(&usize::MAX) {
            return Err(Error::NotHomomorphism("projection is not surjective".into()));
        }
        let kernel = (0..top.order()).filter(|&a| proj[a] == quotient.identity()).collect();
        Ok(Tower { top, quotient, proj, kernel, reps })
    }

    pub fn from_normal(top: Arc<FiniteGroup>, normal: &[usize]) -> Result<Self> {
        let q = top.quotient(normal)?;
        Self::from_projection(top, q.group, q.proj)
    }

    /// K = L.
    pub fn identity(top: Arc<FiniteGroup>) -> Self {
        let proj = (0..top.order()).collect();
        Self::from_projection(top.clone(), top, proj).expect("identity map")
    }

    /// (ℤ/m_top)^× → (ℤ/m_bottom)^× by reduction.
    pub fn cyclotomic(m_top: u64, m_bottom: u64) -> Result<Self> {
        if m_bottom == 0 || !m_top.is_multiple_of(m_bottom) {
            return Err(Error::Precondition(format!("{m_bottom} does not divide {m_top}")));
        }
        let top = UnitGroup::get(m_top);
        let bottom = UnitGroup::get(m_bottom);
        let proj = top
            .residues()
            .iter()
            .map(|&a| bottom.index_of((a % m_bottom.max(1)) as i64).expect("reduction of a unit"))
            .collect();
        Self::from_projection(top.group().clone(), bottom.group().clone(), proj)
    }

    pub fn top_ambient(&self) -> Ambient {
        Ambient::of_group(&self.top)
    }

    pub fn quotient_ambient(&self) -> Ambient {
        Ambient::of_group(&self.quotient)
    }

    /// e_{L/K} = |N|⁻¹ Σ_{n ∈ N} n.
    pub fn kernel_idempotent(&self) -> QGroupRing {
        GroupRingElement::set_sum(&self.top, &self.kernel)
            .scale(&Rational::new(1.into(), (self.kernel.len() as i64).into()))
    }
}

/// π: ℚ[G] → ℚ[Q].
pub fn quotient_map(t: &Tower, x: &QGroupRing) -> Result<QGroupRing> {
    if !same_group(x.group(), &t.top) {
        return Err(Error::GroupMismatch);
    }
    Ok(x.push_forward(&t.quotient, &t.proj))
}

pub fn quotient_matrix(t: &Tower) -> QMatrix {
    QMatrix::from_fn(t.quotient.order(), t.top.order(), |q, g| {
        if t.proj[g] == q {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// φ: ℚ[H] → ℚ[G].
pub fn inclusion_map(sub: &Subgroup, parent: &Arc<FiniteGroup>, x: &QGroupRing) -> Result<QGroupRing> {
    if !same_group(x.group(), &sub.group) {
        return Err(Error::GroupMismatch);
    }
    Ok(x.push_forward(parent, &sub.embed))
}

/// Both sides of φ(Det_{ℚ[H]} M) = Det_{ℚ[G]}(ℚ[G] ⊗ M): the left side character by character
/// over H, the right side by Leibniz expansion over G of the entrywise image.
pub fn induced_det(sub: &Subgroup, parent: &Arc<FiniteGroup>, m: &GroupRingMatrix) -> Result<(QGroupRing, QGroupRing)> {
    let lhs = inclusion_map(sub, parent, &det_over_group_ring(m)?)?;
    let induced: Result<GroupRingMatrix> = m
        .iter()
        .map(|row| row.iter().map(|x| inclusion_map(sub, parent, x)).collect())
        .collect();
    let rhs = det_leibniz(&induced?)?;
    Ok((lhs, rhs))
}

/// λ(x) = aug(x)(1 − e) + (Σ_q x_q z_q) e with z_q the smallest coset representative.
pub fn fixed_point_map(t: &Tower, x: &QGroupRing) -> Result<QGroupRing> {
    if !same_group(x.group(), &t.quotient) {
        return Err(Error::GroupMismatch);
    }
    let e = t.kernel_idempotent();
    let one = GroupRingElement::one(&t.top);
    let lifted = x.push_forward(&t.top, &t.reps);
    let a = (&one - &e).scale(&x.augmentation());
    Ok(&a + &(&lifted * &e))
}

/// The multiplicative variant (1 − e) + x̃e, a monoid map sending units to units.
pub fn fixed_point_unit_map(t: &Tower, x: &QGroupRing) -> Result<QGroupRing> {
    if !same_group(x.group(), &t.quotient) {
        return Err(Error::GroupMismatch);
    }
    let e = t.kernel_idempotent();
    let one = GroupRingElement::one(&t.top);
    let lifted = x.push_forward(&t.top, &t.reps);
    Ok(&(&one - &e) + &(&lifted * &e))
}

pub fn fixed_point_matrix(t: &Tower) -> Result<QMatrix> {
    let mut cols = Vec::with_capacity(t.quotient.order());
    for q in 0..t.quotient.order() {
        cols.push(fixed_point_map(t, &GroupRingElement::basis(&t.quotient, q))?.coeffs().to_vec());
    }
    Ok(QMatrix::from_fn(t.top.order(), t.quotient.order(), |g, q| cols[q][g].clone()))
}

/// Character values of λ(x): x at χ₁ when χ is inflated from χ₁, aug(x) otherwise.
pub fn fixed_point_by_characters(t: &Tower, x: &QGroupRing) -> Result<Vec<Cyclotomic>> {
    let s = abelian(&t.top)?;
    let sq = abelian(&t.quotient)?;
    let aug = Cyclotomic::from_rational(x.augmentation());
    let mut out = Vec::with_capacity(s.character_count());
    for chi in 0..s.character_count() {
        let trivial_on_kernel = t.kernel.iter().all(|&n| s.character_value_exp(chi, n) == 0);
        if !trivial_on_kernel {
            out.push(aug.clone());
            continue;
        }
        let chi1 = (0..sq.character_count())
            .find(|&c| {
                (0..t.top.order()).all(|g| s.character_value(chi, g) == sq.character_value(c, t.proj[g]))
            })
            .expect("inflated character");
        out.push(x.evaluate(chi1)?);
    }
    Ok(out)
}

/// ι: ℚ[G] → ℚ[H], g ↦ [G:H]g for g ∈ H and 0 otherwise.
pub fn corestriction_map(sub: &Subgroup, parent: &Arc<FiniteGroup>, x: &QGroupRing) -> Result<QGroupRing> {
    if !same_group(x.group(), parent) {
        return Err(Error::GroupMismatch);
    }
    let index = int((parent.order() / sub.embed.len()) as i64);
    let coeffs = sub.embed.iter().map(|&g| x.coeff(g) * &index).collect();
    GroupRingElement::from_coeffs(&sub.group, coeffs)
}

pub fn corestriction_matrix(sub: &Subgroup, parent: &Arc<FiniteGroup>) -> QMatrix {
    let index = int((parent.order() / sub.embed.len()) as i64);
    QMatrix::from_fn(sub.embed.len(), parent.order(), |h, g| {
        if sub.embed[h] == g {
            index.clone()
        } else {
            Rational::zero()
        }
    })
}

/// Ind_H^G χ evaluated on every element of G, straight from the multiplication table:
/// |H|⁻¹ Σ_{x ∈ G, x⁻¹gx ∈ H} χ(x⁻¹gx).
pub fn induced_character(sub: &Subgroup, parent: &FiniteGroup, chi: usize) -> Result<Vec<Cyclotomic>> {
    let s = abelian(&sub.group)?;
    let mut position = vec![None; parent.order()];
    for (h, &g) in sub.embed.iter().enumerate() {
        position[g] = Some(h);
    }
    let scale = Cyclotomic::from_rational(Rational::new(1.into(), (sub.embed.len() as i64).into()));
    Ok((0..parent.order())
        .map(|g| {
            let mut total = Cyclotomic::zero();
            for x in 0..parent.order() {
                let c = parent.conjugate(parent.inv(x), g);
                if let Some(h) = position[c] {
                    total = total + s.character_value(chi, h);
                }
            }
            total * scale.clone()
        })
        .collect())
}

/// ψ_χ(ι(x)) = Σ_g x_g Ind χ(g) for every character χ of H; returns the first failing χ.
pub fn corestriction_duality(sub: &Subgroup, parent: &Arc<FiniteGroup>, x: &QGroupRing) -> Result<Option<usize>> {
    let image = corestriction_map(sub, parent, x)?;
    let s = abelian(&sub.group)?;
    for chi in 0..s.character_count() {
        let ind = induced_character(sub, parent, chi)?;
        let rhs = x
            .coeffs()
            .iter()
            .zip(&ind)
            .fold(Cyclotomic::zero(), |acc, (c, v)| acc + v.clone() * Cyclotomic::from_rational(c.clone()));
        if image.evaluate(chi)? != rhs {
            return Ok(Some(chi));
        }
    }
    Ok(None)
}

fn containment(name: String, image: &FractionalIdeal, target: &FractionalIdeal) -> Result<CheckResult> {
    let witness = image
        .witness_not_in(target)?
        .map(|v| format_vector(target.ambient().labels(), &v));
    Ok(CheckResult::from_witness(name, witness))
}

/// π(J_L) ⊆ J_K.
pub fn check_quotient(t: &Tower, j_top: &FractionalIdeal, j_bottom: &FractionalIdeal) -> Result<CheckResult> {
    let image = j_top.map_image(&quotient_matrix(t), t.quotient_ambient())?;
    containment(format!("pi({}) in J over {}", t.top.name(), t.quotient.name()), &image, j_bottom)
}

/// λ(J_K) ⊆ (1 − e)ℚ[G] + e·J_L, decided generator by generator through e·λ(x) ∈ e·J_L.
pub fn check_fixed_point(t: &Tower, j_bottom: &FractionalIdeal, j_top: &FractionalIdeal) -> Result<CheckResult> {
    let e = t.kernel_idempotent();
    let e_j = j_top.scale_by(&e)?;
    let name = format!("lambda(J over {}) in (1-e)Q[G] + eJ over {}", t.quotient.name(), t.top.name());
    for x in j_bottom.basis_elements(&t.quotient)? {
        let y = &fixed_point_map(t, &x)? * &e;
        if !e_j.contains(&y)? {
            return Ok(CheckResult::fail(name, x.to_string()));
        }
    }
    Ok(CheckResult::pass(name))
}

/// ι(J_G) ⊆ J_H.
pub fn check_corestriction(
    sub: &Subgroup,
    parent: &Arc<FiniteGroup>,
    j_parent: &FractionalIdeal,
    j_sub: &FractionalIdeal,
) -> Result<CheckResult> {
    let image = j_parent.map_image(&corestriction_matrix(sub, parent), Ambient::of_group(&sub.group))?;
    containment(format!("iota(J over {}) in J over {}", parent.name(), sub.group.name()), &image, j_sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn c(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n))
    }

    fn c4_over_c2() -> Tower {
        let g = c(4);
        let normal = g.closure(&[2]);
        Tower::from_normal(g, &normal).unwrap()
    }

    #[test]
    fn quotient_of_c4() {
        let t = c4_over_c2();
        assert_eq!(t.proj, vec![0, 1, 0, 1]);
        let z = GroupRingElement::basis(&t.top, 1);
        assert_eq!(quotient_map(&t, &z).unwrap(), GroupRingElement::basis(&t.quotient, 1));
        let unit = FractionalIdeal::unit(t.top_ambient());
        let image = unit.map_image(&quotient_matrix(&t), t.quotient_ambient()).unwrap();
        assert_eq!(image, FractionalIdeal::unit(t.quotient_ambient()));
    }

    #[test]
    fn lambda_on_c4() {
        let t = c4_over_c2();
        let zbar = GroupRingElement::basis(&t.quotient, 1);
        let l = fixed_point_map(&t, &zbar).unwrap();
        assert_eq!(l.coeffs(), &[rat(1, 2), rat(1, 2), rat(-1, 2), rat(1, 2)]);
        assert!(fixed_point_map(&t, &GroupRingElement::one(&t.quotient)).unwrap().is_one());
        assert_eq!(l.character_values().unwrap(), fixed_point_by_characters(&t, &zbar).unwrap());
        assert_eq!(fixed_point_unit_map(&t, &zbar).unwrap(), l);
    }

    #[test]
    fn corestriction_on_c4() {
        let g = c(4);
        let sub = g.subgroup(&g.closure(&[2])).unwrap();
        let z2 = GroupRingElement::basis(&g, 2);
        let image = corestriction_map(&sub, &g, &z2).unwrap();
        assert_eq!(image.coeffs(), &[int(0), int(2)]);
        assert!(corestriction_map(&sub, &g, &GroupRingElement::basis(&g, 1)).unwrap().is_zero());
        assert_eq!(corestriction_duality(&sub, &g, &z2).unwrap(), None);
    }

    #[test]
    fn induced_det_small() {
        let g = c(4);
        let sub = g.subgroup(&g.closure(&[2])).unwrap();
        let m = vec![vec![GroupRingElement::basis(&sub.group, 1)]];
        let (lhs, rhs) = induced_det(&sub, &g, &m).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, GroupRingElement::basis(&g, 2));
    }

    #[test]
    fn cyclotomic_tower() {
        let t = Tower::cyclotomic(9, 3).unwrap();
        assert_eq!(t.kernel.len(), 3);
        assert!(Tower::cyclotomic(9, 2).is_err());
    }
}
