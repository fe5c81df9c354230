//! Subgroup lattices with abelianizations, the class space ℚ{G}, the dual Brauer-induction
//! map B_G*: ℚ{G} → ⊕_H ℚ[H^ab], and ideals in ℚ{G} obtained as preimages.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::check::{format_vector, CheckResult};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::group_ring::abelian;
use crate::ideal::{Ambient, FractionalIdeal};
use crate::scalar::Rational;
use crate::QMatrix;

/// A subgroup H ⊆ G with [H,H] and H^ab = H/[H,H].
#[derive(Clone, Debug)]
pub struct SubgroupRecord {
    /// Sorted parent indices.
    pub elements: Vec<usize>,
    /// H as a group; element i is `elements[i]`.
    pub group: Arc<FiniteGroup>,
    /// Parent indices of [H,H].
    pub commutator: Vec<usize>,
    pub abelianization: Arc<FiniteGroup>,
    /// Image in H^ab of each element of H, by position in `elements`.
    pub projection: Vec<usize>,
    /// Smallest parent index mapping to each element of H^ab.
    pub lifts: Vec<usize>,
}

impl SubgroupRecord {
    pub fn new(parent: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let sub = parent.subgroup(elements)?;
        let all: Vec<usize> = (0..sub.group.order()).collect();
        let comm_local = sub.group.commutator_subgroup(&all);
        let q = sub.group.quotient(&comm_local)?;
        let mut lifts = vec![usize::MAX; q.group.order()];
        for (i, &a) in q.proj.iter().enumerate() {
            if lifts[a] == usize::MAX {
                lifts[a] = sub.embed[i];
            }
        }
        Ok(SubgroupRecord {
            commutator: comm_local.iter().map(|&i| sub.embed[i]).collect(),
            elements: sub.embed,
            group: sub.group,
            abelianization: q.group,
            projection: q.proj,
            lifts,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn position(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    /// Image in H^ab of a parent element lying in H.
    pub fn abelian_image(&self, g: usize) -> Option<usize> {
        self.position(g).map(|i| self.projection[i])
    }
}

/// Every subgroup of G with its abelianization, in (order, elements) order.
pub fn subgroup_lattice(g: &FiniteGroup) -> Result<Vec<SubgroupRecord>> {
    g.subgroups()?.iter().map(|s| SubgroupRecord::new(g, s)).collect()
}

/// Labels for ℚ{G}: a class is named by its smallest element, braced when it is not a singleton.
pub fn class_ambient(g: &FiniteGroup) -> Ambient {
    Ambient::new(
        g.conjugacy_classes()
            .iter()
            .map(|c| if c.len() == 1 { g.label(c[0]).to_string() } else { format!("{{{}}}", g.label(c[0])) })
            .collect(),
    )
}

/// G together with its subgroup lattice and the component layout of ⊕_H ℚ[H^ab].
#[derive(Clone, Debug)]
pub struct BrauerData {
    pub group: Arc<FiniteGroup>,
    pub classes: Vec<Vec<usize>>,
    pub subgroups: Vec<SubgroupRecord>,
    /// Starting row of each component.
    pub offsets: Vec<usize>,
    pub dim: usize,
}

impl BrauerData {
    pub fn new(group: Arc<FiniteGroup>) -> Result<Self> {
        let subgroups = subgroup_lattice(&group)?;
        let mut offsets = Vec::with_capacity(subgroups.len());
        let mut dim = 0;
        for s in &subgroups {
            offsets.push(dim);
            dim += s.abelianization.order();
        }
        let classes = group.conjugacy_classes();
        Ok(BrauerData { group, classes, subgroups, offsets, dim })
    }

    pub fn class_ambient(&self) -> Ambient {
        class_ambient(&self.group)
    }

    pub fn component_ambient(&self) -> Ambient {
        let mut labels = Vec::with_capacity(self.dim);
        for (i, s) in self.subgroups.iter().enumerate() {
            labels.extend(s.abelianization.labels().iter().map(|l| format!("H{i}:{l}")));
        }
        Ambient::new(labels)
    }

    pub fn index_of_subgroup(&self, elements: &[usize]) -> Option<usize> {
        let mut e = elements.to_vec();
        e.sort_unstable();
        self.subgroups.iter().position(|s| s.elements == e)
    }

    /// B_G*: the H-component of class γ is Σ over left cosets xH with x⁻¹γx ∈ H of its image in H^ab.
    pub fn bgstar(&self) -> QMatrix {
        let g = &self.group;
        let mut m = QMatrix::zeros(self.dim, self.classes.len());
        for (hi, h) in self.subgroups.iter().enumerate() {
            let coset_reps: Vec<usize> = (0..g.order())
                .filter(|&x| h.elements.iter().all(|&y| g.mul(x, y) >= x))
                .collect();
            for (ci, class) in self.classes.iter().enumerate() {
                let gamma = class[0];
                for &x in &coset_reps {
                    let c = g.conjugate(g.inv(x), gamma);
                    if let Some(a) = h.abelian_image(c) {
                        m[(self.offsets[hi] + a, ci)] += Rational::one();
                    }
                }
            }
        }
        m
    }

    /// The H-block of B_G* as a map ℚ{G} → ℚ[H^ab].
    pub fn component_matrix(&self, bgstar: &QMatrix, hi: usize) -> QMatrix {
        let off = self.offsets[hi];
        let n = self.subgroups[hi].abelianization.order();
        QMatrix::from_fn(n, bgstar.cols(), |i, j| bgstar[(off + i, j)].clone())
    }

    /// rank B_G* = number of classes.
    pub fn is_injective(&self, bgstar: &QMatrix) -> bool {
        bgstar.rank() == self.classes.len()
    }

    /// Pairs every component against every character φ of H^ab and compares with
    /// (Ind_H^G Inf φ)(γ) = |H|⁻¹ Σ_{x ∈ G, x⁻¹γx ∈ H} φ(x⁻¹γx). Returns the first mismatch.
    pub fn duality_mismatch(&self, bgstar: &QMatrix) -> Result<Option<(usize, usize, usize)>> {
        let g = &self.group;
        for (hi, h) in self.subgroups.iter().enumerate() {
            let s = abelian(&h.abelianization)?;
            let h_order = Cyclotomic::from_rational(Rational::new(1.into(), (h.order() as i64).into()));
            for phi in 0..s.character_count() {
                for (ci, class) in self.classes.iter().enumerate() {
                    let gamma = class[0];
                    let mut induced = Cyclotomic::zero();
                    for x in 0..g.order() {
                        if let Some(a) = h.abelian_image(g.conjugate(g.inv(x), gamma)) {
                            induced = induced + s.character_value(phi, a);
                        }
                    }
                    induced = induced * h_order.clone();
                    let mut paired = Cyclotomic::zero();
                    for a in 0..h.abelianization.order() {
                        let c = &bgstar[(self.offsets[hi] + a, ci)];
                        if !c.is_zero() {
                            paired = paired + s.character_value(phi, a) * Cyclotomic::from_rational(c.clone());
                        }
                    }
                    if paired != induced {
                        return Ok(Some((hi, phi, ci)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// ⊕_H J_H as one lattice in the component space.
    pub fn direct_sum(&self, components: &[FractionalIdeal]) -> Result<FractionalIdeal> {
        if components.len() != self.subgroups.len() {
            return Err(Error::DimensionMismatch { expected: self.subgroups.len(), found: components.len() });
        }
        let mut vectors = Vec::new();
        for (hi, (c, h)) in components.iter().zip(&self.subgroups).enumerate() {
            if c.dim() != h.abelianization.order() {
                return Err(Error::DimensionMismatch { expected: h.abelianization.order(), found: c.dim() });
            }
            for v in c.basis_vectors() {
                let mut full = vec![Rational::zero(); self.dim];
                for (k, x) in v.into_iter().enumerate() {
                    full[self.offsets[hi] + k] = x;
                }
                vectors.push(full);
            }
        }
        FractionalIdeal::from_vectors(self.component_ambient(), &vectors)
    }

    /// (B_G*)⁻¹(⊕_H J_H) inside ℚ{G}.
    pub fn nonabelian_j(&self, components: &[FractionalIdeal]) -> Result<FractionalIdeal> {
        let b = self.bgstar();
        self.direct_sum(components)?.map_preimage(&b, self.class_ambient())
    }

    /// Matrix of the isomorphism H^ab → (wHw⁻¹)^ab induced by conjugation.
    pub fn conjugation_matrix(&self, from: usize, to: usize, w: usize) -> QMatrix {
        let g = &self.group;
        let (h, k) = (&self.subgroups[from], &self.subgroups[to]);
        QMatrix::from_fn(k.abelianization.order(), h.abelianization.order(), |b, a| {
            let image = k.abelian_image(g.conjugate(w, h.lifts[a])).expect("conjugate subgroup");
            if image == b {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// Smallest w with wHw⁻¹ = K.
    pub fn conjugator(&self, from: usize, to: usize) -> Option<usize> {
        let g = &self.group;
        let (h, k) = (&self.subgroups[from], &self.subgroups[to]);
        (0..g.order()).find(|&w| {
            let mut c: Vec<usize> = h.elements.iter().map(|&x| g.conjugate(w, x)).collect();
            c.sort_unstable();
            c == k.elements
        })
    }

    /// Fills every subgroup from seeds by conjugation; a subgroup takes the first seed
    /// (in lattice order) in its conjugacy orbit.
    pub fn conjugate_components(&self, seeds: &[(usize, FractionalIdeal)]) -> Result<Vec<FractionalIdeal>> {
        let mut out = Vec::with_capacity(self.subgroups.len());
        for k in 0..self.subgroups.len() {
            let mut done = None;
            for (h, ideal) in seeds {
                if let Some(w) = self.conjugator(*h, k) {
                    let ambient = Ambient::of_group(&self.subgroups[k].abelianization);
                    done = Some(ideal.map_image(&self.conjugation_matrix(*h, k, w), ambient)?);
                    break;
                }
            }
            out.push(done.ok_or_else(|| {
                Error::Precondition(format!("no component datum for subgroup H{k} or its conjugates"))
            })?);
        }
        Ok(out)
    }
}

/// G → G/N with Brauer data at both levels.
#[derive(Clone, Debug)]
pub struct BrauerQuotient {
    pub upper: BrauerData,
    pub lower: BrauerData,
    /// Image in G/N of each element of G.
    pub proj: Vec<usize>,
    /// For each subgroup J of G/N, the index of π⁻¹(J) upstairs.
    pub preimages: Vec<usize>,
}

impl BrauerQuotient {
    pub fn new(group: Arc<FiniteGroup>, normal: &[usize]) -> Result<Self> {
        let q = group.quotient(normal)?;
        let upper = BrauerData::new(group)?;
        let lower = BrauerData::new(q.group)?;
        let mut preimages = Vec::with_capacity(lower.subgroups.len());
        for j in &lower.subgroups {
            let h: Vec<usize> = (0..upper.group.order()).filter(|&x| j.position(q.proj[x]).is_some()).collect();
            preimages.push(upper.index_of_subgroup(&h).expect("preimage is a subgroup"));
        }
        Ok(BrauerQuotient { upper, lower, proj: q.proj, preimages })
    }

    /// Class-space map ℚ{G} → ℚ{G/N}, dual to inflation.
    pub fn inflation_dual(&self) -> QMatrix {
        let lower_class = self.lower.group.class_index();
        QMatrix::from_fn(self.lower.classes.len(), self.upper.classes.len(), |i, j| {
            if lower_class[self.proj[self.upper.classes[j][0]]] == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// Block of the pushforward H^ab → J^ab for H = π⁻¹(J).
    fn push_block(&self, ji: usize) -> QMatrix {
        let h = &self.upper.subgroups[self.preimages[ji]];
        let j = &self.lower.subgroups[ji];
        QMatrix::from_fn(j.abelianization.order(), h.abelianization.order(), |b, a| {
            if j.abelian_image(self.proj[h.lifts[a]]) == Some(b) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// Dual of α_{G,N}: keeps the π⁻¹(J)-components and pushes them to J^ab.
    pub fn alpha_dual(&self) -> QMatrix {
        let mut m = QMatrix::zeros(self.lower.dim, self.upper.dim);
        for ji in 0..self.lower.subgroups.len() {
            let block = self.push_block(ji);
            let (r0, c0) = (self.lower.offsets[ji], self.upper.offsets[self.preimages[ji]]);
            for b in 0..block.rows() {
                for a in 0..block.cols() {
                    m[(r0 + b, c0 + a)] = block[(b, a)].clone();
                }
            }
        }
        m
    }

    /// α* ∘ B_G* = B_{G/N}* ∘ Inf*, entry by entry.
    pub fn square_commutes(&self) -> bool {
        let lhs = &self.alpha_dual() * &self.upper.bgstar();
        let rhs = &self.lower.bgstar() * &self.inflation_dual();
        lhs == rhs
    }

    /// Lower component data J_J = push(J_{π⁻¹(J)}).
    pub fn push_components(&self, upper: &[FractionalIdeal]) -> Result<Vec<FractionalIdeal>> {
        (0..self.lower.subgroups.len())
            .map(|ji| {
                let ambient = Ambient::of_group(&self.lower.subgroups[ji].abelianization);
                upper[self.preimages[ji]].map_image(&self.push_block(ji), ambient)
            })
            .collect()
    }

    /// Commuting square, then π(J_G) ⊆ J_{G/N} with the lower data given.
    pub fn check(&self, upper: &[FractionalIdeal], lower: &[FractionalIdeal]) -> Result<Vec<CheckResult>> {
        let name = format!("dual square commutes for {} -> {}", self.upper.group.name(), self.lower.group.name());
        let square = if self.square_commutes() {
            CheckResult::pass(name)
        } else {
            CheckResult::fail(name, "alpha* B_G* differs from B_Q* Inf*")
        };
        let j_upper = self.upper.nonabelian_j(upper)?;
        let j_lower = self.lower.nonabelian_j(lower)?;
        let image = j_upper.map_image(&self.inflation_dual(), self.lower.class_ambient())?;
        let witness = image
            .witness_not_in(&j_lower)?
            .map(|v| format_vector(j_lower.ambient().labels(), &v));
        let name = format!("pi(J over {}) in J over {}", self.upper.group.name(), self.lower.group.name());
        Ok(vec![square, CheckResult::from_witness(name, witness)])
    }
}

/// A conjugation-covariant component datum: the ideal over H^ab generated by 3 + N_{H^ab}.
pub fn synthetic_components(data: &BrauerData) -> Result<Vec<FractionalIdeal>> {
    data.subgroups
        .iter()
        .map(|s| {
            let ab = &s.abelianization;
            let all: Vec<usize> = (0..ab.order()).collect();
            let x = &crate::GroupRingElement::set_sum(ab, &all)
                + &crate::GroupRingElement::scalar(ab, crate::scalar::int(3));
            FractionalIdeal::principal(&x)
        })
        .collect()
}

/// Components J_H := B_G*(J)_H of an abelian ideal J (given over ℚ[G] = ℚ{G}).
pub fn components_from_abelian(data: &BrauerData, j: &FractionalIdeal) -> Result<Vec<FractionalIdeal>> {
    let b = data.bgstar();
    let j = j.with_ambient(data.class_ambient())?;
    (0..data.subgroups.len())
        .map(|hi| {
            let ambient = Ambient::of_group(&data.subgroups[hi].abelianization);
            j.map_image(&data.component_matrix(&b, hi), ambient)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::symmetric3())
    }

    #[test]
    fn lattice_of_s3_and_q8() {
        let l = subgroup_lattice(&FiniteGroup::symmetric3()).unwrap();
        assert_eq!(l.len(), 6);
        assert_eq!(l[5].abelianization.order(), 2);
        let q = subgroup_lattice(&FiniteGroup::quaternion8()).unwrap();
        assert_eq!(q.len(), 6);
        assert_eq!(q[5].abelianization.order(), 4);
        assert!(q[5].abelianization.is_abelian());
    }

    #[test]
    fn bgstar_for_s3() {
        let d = BrauerData::new(s3()).unwrap();
        let b = d.bgstar();
        assert!(d.is_injective(&b));
        assert_eq!(b.rank(), 3);
        assert_eq!(d.duality_mismatch(&b).unwrap(), None);
        let a3 = d.subgroups.iter().position(|s| s.order() == 3).unwrap();
        let g = &d.group;
        let gamma = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        let ci = d.group.class_index()[gamma];
        let col = d.component_matrix(&b, a3).column(ci);
        let h = &d.subgroups[a3];
        assert_eq!(col[h.abelian_image(gamma).unwrap()], int(1));
        assert_eq!(col[h.abelian_image(g.mul(gamma, gamma)).unwrap()], int(1));
        assert_eq!(col[h.abelian_image(g.identity()).unwrap()], int(0));
    }

    #[test]
    fn bgstar_for_c2() {
        let d = BrauerData::new(Arc::new(FiniteGroup::cyclic(2))).unwrap();
        let b = d.bgstar();
        assert_eq!(d.component_matrix(&b, 0), QMatrix::from_rows(vec![vec![int(2), int(0)]]));
        assert_eq!(d.component_matrix(&b, 1), QMatrix::identity(2));
    }

    #[test]
    fn squares_commute() {
        let g = s3();
        let a3 = g.closure(&[(0..6).find(|&x| g.element_order(x) == 3).unwrap()]);
        let q = BrauerQuotient::new(g, &a3).unwrap();
        assert!(q.square_commutes());
        let up = synthetic_components(&q.upper).unwrap();
        let down = q.push_components(&up).unwrap();
        assert!(q.check(&up, &down).unwrap().iter().all(|c| c.passed));
    }

    #[test]
    fn unit_components_on_s3() {
        let d = BrauerData::new(s3()).unwrap();
        let units: Vec<FractionalIdeal> = d
            .subgroups
            .iter()
            .map(|s| FractionalIdeal::unit(Ambient::of_group(&s.abelianization)))
            .collect();
        let j = d.nonabelian_j(&units).unwrap();
        let mut id = vec![Rational::zero(); d.classes.len()];
        id[0] = Rational::one();
        assert!(j.contains_vector(&id).unwrap());
        let mut smaller = units.clone();
        smaller[5] = FractionalIdeal::zero(Ambient::of_group(&d.subgroups[5].abelianization));
        let k = d.nonabelian_j(&smaller).unwrap();
        assert_eq!(k.compare(&j).unwrap(), crate::Comparison::Subset);
    }
}
