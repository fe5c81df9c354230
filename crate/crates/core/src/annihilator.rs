//! Left ideals generated by norm elements times lifts z_{H,α,β}, with two-sidedness and
//! quotient checks.

use std::sync::Arc;

use num_traits::Zero;

use crate::brauer::SubgroupRecord;
use crate::check::{format_vector, CheckResult};
use crate::error::{Error, Result};
use crate::functorial::{quotient_matrix, Tower};
use crate::group::FiniteGroup;
use crate::group_ring::{same_group, GroupRingElement};
use crate::ideal::FractionalIdeal;
use crate::scalar::{valuation, Rational};
use crate::QGroupRing;

/// α and β live on H^ab; their product must be ℓ-integral.
#[derive(Clone, Debug)]
pub struct AnnihilatorDatum {
    pub subgroup: SubgroupRecord,
    pub alpha: QGroupRing,
    pub beta: QGroupRing,
    pub ell: u64,
}

impl AnnihilatorDatum {
    pub fn new(subgroup: SubgroupRecord, alpha: QGroupRing, beta: QGroupRing, ell: u64) -> Result<Self> {
        for x in [&alpha, &beta] {
            if !same_group(x.group(), &subgroup.abelianization) {
                return Err(Error::GroupMismatch);
            }
        }
        Ok(AnnihilatorDatum { subgroup, alpha, beta, ell })
    }

    pub fn target(&self) -> QGroupRing {
        &self.alpha * &self.beta
    }
}

fn is_integral(x: &QGroupRing, ell: u64) -> bool {
    x.coeffs().iter().all(|q| valuation(q, ell).is_none_or(|v| v >= 0))
}

/// Places each coefficient of α·β on the smallest element of its [H,H]-coset; the result is an
/// element of ℚ[G] supported on H.
pub fn lift_z(parent: &Arc<FiniteGroup>, d: &AnnihilatorDatum) -> Result<QGroupRing> {
    let target = d.target();
    if !is_integral(&target, d.ell) {
        return Err(Error::Integrality(format!(
            "alpha * beta = {target} is not {}-integral on subgroup of order {}",
            d.ell,
            d.subgroup.order()
        )));
    }
    let pairs: Vec<(usize, Rational)> = target
        .coeffs()
        .iter()
        .enumerate()
        .map(|(a, c)| (d.subgroup.lifts[a], c.clone()))
        .collect();
    Ok(GroupRingElement::from_pairs(parent, &pairs))
}

/// ℚ[G] ⊇ ℚ[H] → ℚ[H^ab]; errors if x is not supported on H.
pub fn project_to_abelianization(record: &SubgroupRecord, x: &QGroupRing) -> Result<QGroupRing> {
    let ab = &record.abelianization;
    let mut out = vec![Rational::zero(); ab.order()];
    for (g, c) in x.coeffs().iter().enumerate() {
        if c == &Rational::zero() {
            continue;
        }
        let a = record
            .abelian_image(g)
            .ok_or_else(|| Error::Precondition(format!("support element {} lies outside H", x.group().label(g))))?;
        out[a] += c;
    }
    GroupRingElement::from_coeffs(ab, out)
}

#[derive(Clone, Debug)]
pub struct NcIdeal {
    pub group: Arc<FiniteGroup>,
    pub generators: Vec<QGroupRing>,
    /// ℤ[1/2]-span of all left translates of the generators.
    pub lattice: FractionalIdeal,
}

/// Generators N_{[H,H]}·z_{H,α,β} and their left closure.
pub fn nc_ideal(group: &Arc<FiniteGroup>, data: &[AnnihilatorDatum]) -> Result<NcIdeal> {
    let mut generators = Vec::with_capacity(data.len());
    for d in data {
        let norm = GroupRingElement::set_sum(group, &d.subgroup.commutator);
        generators.push(norm.try_mul(&lift_z(group, d)?)?);
    }
    let lattice = FractionalIdeal::from_generators(group, &generators)?;
    Ok(NcIdeal { group: group.clone(), generators, lattice })
}

impl NcIdeal {
    /// The left closure of the lattice basis; equal to `lattice` when closure is idempotent.
    pub fn reclose(&self) -> Result<FractionalIdeal> {
        FractionalIdeal::from_generators(&self.group, &self.lattice.basis_elements(&self.group)?)
    }

    pub fn is_integral(&self, ell: u64) -> bool {
        self.generators.iter().all(|x| is_integral(x, ell))
    }
}

/// w·x·w⁻¹ ∈ I for every generator x and w ∈ G.
pub fn two_sided_check(ideal: &NcIdeal) -> Result<CheckResult> {
    let g = &ideal.group;
    let name = format!("left ideal over {} is two-sided", g.name());
    for x in &ideal.generators {
        for w in 0..g.order() {
            let y = x.conjugate_by(w);
            if !ideal.lattice.contains(&y)? {
                return Ok(CheckResult::fail(name, format!("w = {}, x = {x}", g.label(w))));
            }
        }
    }
    Ok(CheckResult::pass(name))
}

/// π(I_G) ⊆ I_{G/N} for the ideals built from the two data lists.
pub fn quotient_check(
    tower: &Tower,
    upper: &[AnnihilatorDatum],
    lower: &[AnnihilatorDatum],
) -> Result<CheckResult> {
    let i_upper = nc_ideal(&tower.top, upper)?;
    let i_lower = nc_ideal(&tower.quotient, lower)?;
    let image = i_upper.lattice.map_image(&quotient_matrix(tower), tower.quotient_ambient())?;
    let witness = image
        .witness_not_in(&i_lower.lattice)?
        .map(|v| format_vector(i_lower.lattice.ambient().labels(), &v));
    let name = format!("pi(I over {}) in I over {}", tower.top.name(), tower.quotient.name());
    Ok(CheckResult::from_witness(name, witness))
}

/// Pushes a datum at H ⊆ G to π(H) ⊆ G/N, mapping α and β along H^ab → π(H)^ab.
pub fn push_datum(tower: &Tower, d: &AnnihilatorDatum) -> Result<AnnihilatorDatum> {
    let image: Vec<usize> = {
        let mut v: Vec<usize> = d.subgroup.elements.iter().map(|&h| tower.proj[h]).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let record = SubgroupRecord::new(&tower.quotient, &image)?;
    let map: Vec<usize> = (0..d.subgroup.abelianization.order())
        .map(|a| record.abelian_image(tower.proj[d.subgroup.lifts[a]]).expect("image subgroup"))
        .collect();
    let alpha = d.alpha.push_forward(&record.abelianization, &map);
    let beta = d.beta.push_forward(&record.abelianization, &map);
    AnnihilatorDatum::new(record, alpha, beta, d.ell)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::subgroup_lattice;
    use crate::scalar::int;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::symmetric3())
    }

    fn transposition_datum(rec: &SubgroupRecord) -> AnnihilatorDatum {
        let ab = &rec.abelianization;
        let t = (0..ab.order()).find(|&a| a != ab.identity()).unwrap();
        let alpha = &GroupRingElement::one(ab) - &GroupRingElement::basis(ab, t);
        AnnihilatorDatum::new(rec.clone(), alpha, GroupRingElement::one(ab), 3).unwrap()
    }

    #[test]
    fn covariant_and_control() {
        let g = s3();
        let lattice = subgroup_lattice(&g).unwrap();
        let twos: Vec<_> = lattice.iter().filter(|s| s.order() == 2).collect();
        assert_eq!(twos.len(), 3);
        let all: Vec<_> = twos.iter().map(|r| transposition_datum(r)).collect();
        let i = nc_ideal(&g, &all).unwrap();
        assert!(two_sided_check(&i).unwrap().passed);
        assert_eq!(i.reclose().unwrap(), i.lattice);
        let one = nc_ideal(&g, &all[..1]).unwrap();
        let c = two_sided_check(&one).unwrap();
        assert!(!c.passed && c.witness.is_some());
    }

    #[test]
    fn lift_projects_back() {
        let g = s3();
        let lattice = subgroup_lattice(&g).unwrap();
        let whole = lattice.last().unwrap();
        let ab = &whole.abelianization;
        let x = GroupRingElement::from_coeffs(ab, vec![int(2), int(-5)]).unwrap();
        let d = AnnihilatorDatum::new(whole.clone(), x.clone(), GroupRingElement::one(ab), 3).unwrap();
        let z = lift_z(&g, &d).unwrap();
        assert_eq!(project_to_abelianization(whole, &z).unwrap(), x);
        assert_eq!(z.support().len(), 2);
        let bad = AnnihilatorDatum::new(
            whole.clone(),
            x.scale(&Rational::new(1.into(), 3.into())),
            GroupRingElement::one(ab),
            3,
        )
        .unwrap();
        assert!(matches!(lift_z(&g, &bad), Err(Error::Integrality(_))));
        assert!(nc_ideal(&g, &[]).unwrap().lattice.is_zero());
    }
}
