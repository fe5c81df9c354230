//! Group rings F[G], characters, idempotents and determinants.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;

use crate::abelian::AbelianStructure;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::Matrix;
use crate::scalar::{int, lcm_u64, Rational, Scalar};

/// A scalar-valued function on a finite group, multiplied by convolution.
#[derive(Clone, Debug)]
pub struct GroupRingElement<S> {
    group: Arc<FiniteGroup>,
    coeffs: Vec<S>,
}

impl<S: Scalar> PartialEq for GroupRingElement<S> {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.coeffs == other.coeffs
    }
}

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<S: Scalar> GroupRingElement<S> {
    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        GroupRingElement { group: group.clone(), coeffs: vec![S::zero(); group.order()] }
    }

    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        Self::basis(group, group.identity())
    }

    pub fn basis(group: &Arc<FiniteGroup>, g: usize) -> Self {
        let mut x = Self::zero(group);
        x.coeffs[g] = S::one();
        x
    }

    pub fn scalar(group: &Arc<FiniteGroup>, s: S) -> Self {
        let mut x = Self::zero(group);
        x.coeffs[group.identity()] = s;
        x
    }

    pub fn from_coeffs(group: &Arc<FiniteGroup>, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::DimensionMismatch { expected: group.order(), found: coeffs.len() });
        }
        Ok(GroupRingElement { group: group.clone(), coeffs })
    }

    pub fn from_pairs(group: &Arc<FiniteGroup>, pairs: &[(usize, S)]) -> Self {
        let mut x = Self::zero(group);
        for (g, s) in pairs {
            x.coeffs[*g] = x.coeffs[*g].clone() + s.clone();
        }
        x
    }

    /// Σ_{h ∈ set} h.
    pub fn set_sum(group: &Arc<FiniteGroup>, set: &[usize]) -> Self {
        let mut x = Self::zero(group);
        for &h in set {
            x.coeffs[h] = x.coeffs[h].clone() + S::one();
        }
        x
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> &S {
        &self.coeffs[g]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&g| !self.coeffs[g].is_zero()).collect()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(GroupRingElement { group: self.group.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let g = &self.group;
        let mut out = vec![S::zero(); g.order()];
        for a in self.support() {
            for b in other.support() {
                let c = g.mul(a, b);
                out[c] = out[c].clone() + self.coeffs[a].clone() * other.coeffs[b].clone();
            }
        }
        Ok(GroupRingElement { group: g.clone(), coeffs: out })
    }

    fn neg_ref(&self) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    /// The involution g ↦ g⁻¹ extended linearly.
    pub fn tau(&self) -> Self {
        let mut out = vec![S::zero(); self.coeffs.len()];
        for (g, c) in self.coeffs.iter().enumerate() {
            out[self.group.inv(g)] = c.clone();
        }
        GroupRingElement { group: self.group.clone(), coeffs: out }
    }

    pub fn augmentation(&self) -> S {
        self.coeffs.iter().fold(S::zero(), |acc, c| acc + c.clone())
    }

    /// g·x.
    pub fn left_translate(&self, g: usize) -> Self {
        let mut out = vec![S::zero(); self.coeffs.len()];
        for (h, c) in self.coeffs.iter().enumerate() {
            out[self.group.mul(g, h)] = c.clone();
        }
        GroupRingElement { group: self.group.clone(), coeffs: out }
    }

    /// x·g.
    pub fn right_translate(&self, g: usize) -> Self {
        let mut out = vec![S::zero(); self.coeffs.len()];
        for (h, c) in self.coeffs.iter().enumerate() {
            out[self.group.mul(h, g)] = c.clone();
        }
        GroupRingElement { group: self.group.clone(), coeffs: out }
    }

    /// w·x·w⁻¹.
    pub fn conjugate_by(&self, w: usize) -> Self {
        let mut out = vec![S::zero(); self.coeffs.len()];
        for (h, c) in self.coeffs.iter().enumerate() {
            out[self.group.conjugate(w, h)] = c.clone();
        }
        GroupRingElement { group: self.group.clone(), coeffs: out }
    }

    pub fn to_cyclotomic(&self) -> GroupRingElement<Cyclotomic> {
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(Scalar::to_cyclotomic).collect(),
        }
    }

    pub fn to_rational(&self) -> Option<GroupRingElement<Rational>> {
        let coeffs: Option<Vec<Rational>> = self.coeffs.iter().map(Scalar::as_rational).collect();
        coeffs.map(|coeffs| GroupRingElement { group: self.group.clone(), coeffs })
    }

    /// Image under the group homomorphism given elementwise by `map` into `target`.
    pub fn push_forward(&self, target: &Arc<FiniteGroup>, map: &[usize]) -> Self {
        let mut out = vec![S::zero(); target.order()];
        for (g, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[map[g]] = out[map[g]].clone() + c.clone();
            }
        }
        GroupRingElement { group: target.clone(), coeffs: out }
    }

    /// Two-sided inverse via the left regular representation.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.group.order();
        let m = Matrix::from_fn(n, n, |i, j| {
            // column j is x·g_j; row i reads the coefficient at g_i
            let h = self.group.mul(i, self.group.inv(j));
            self.coeffs[h].clone()
        });
        let mut rhs = vec![S::zero(); n];
        rhs[self.group.identity()] = S::one();
        let y = m
            .solve(&rhs)
            .ok_or_else(|| Error::NotInvertible(self.to_string()))?;
        let y = GroupRingElement { group: self.group.clone(), coeffs: y };
        if y.try_mul(self)? != Self::one(&self.group) {
            return Err(Error::NotInvertible(self.to_string()));
        }
        Ok(y)
    }

    /// Evaluation at the character with index `chi`: Σ_g x_g χ(g).
    pub fn evaluate(&self, chi: usize) -> Result<Cyclotomic> {
        let s = abelian(&self.group)?;
        let e = s.exponent();
        let cyc: Vec<Cyclotomic> = self.coeffs.iter().map(Scalar::to_cyclotomic).collect();
        let order = cyc.iter().fold(e, |acc, c| lcm_u64(acc, c.order()));
        let mut buf = vec![Rational::zero(); order as usize];
        for (g, c) in cyc.iter().enumerate() {
            if !c.is_zero() {
                let k = s.character_value_exp(chi, g) * (order / e);
                c.accumulate_rotated(order, k, &mut buf);
            }
        }
        Ok(Cyclotomic::from_power_sums(order, buf))
    }

    /// ψ: the vector of character evaluations in canonical character order.
    pub fn character_values(&self) -> Result<Vec<Cyclotomic>> {
        let s = abelian(&self.group)?;
        (0..s.character_count()).map(|chi| self.evaluate(chi)).collect()
    }

    /// Canonical text form: nonzero `(label, scalar)` pairs in element order.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.support()
            .into_iter()
            .map(|g| (self.group.label(g).to_string(), self.coeffs[g].to_string()))
            .collect()
    }
}

pub(crate) fn abelian(group: &Arc<FiniteGroup>) -> Result<Arc<AbelianStructure>> {
    group
        .abelian_structure()
        .ok_or_else(|| Error::Precondition(format!("{} is not abelian", group.name())))
}

impl<S: Scalar> fmt::Display for GroupRingElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> =
            self.to_pairs().into_iter().map(|(l, c)| format!("({l}, {c})")).collect();
        write!(f, "[{}]", pairs.join(", "))
    }
}

impl<S: Scalar> Add for &GroupRingElement<S> {
    type Output = GroupRingElement<S>;
    fn add(self, rhs: Self) -> GroupRingElement<S> {
        self.try_add(rhs).expect("group ring addition")
    }
}

impl<S: Scalar> Sub for &GroupRingElement<S> {
    type Output = GroupRingElement<S>;
    fn sub(self, rhs: Self) -> GroupRingElement<S> {
        self.try_sub(rhs).expect("group ring subtraction")
    }
}

impl<S: Scalar> Mul for &GroupRingElement<S> {
    type Output = GroupRingElement<S>;
    fn mul(self, rhs: Self) -> GroupRingElement<S> {
        self.try_mul(rhs).expect("group ring multiplication")
    }
}

impl<S: Scalar> Neg for &GroupRingElement<S> {
    type Output = GroupRingElement<S>;
    fn neg(self) -> GroupRingElement<S> {
        self.neg_ref()
    }
}

/// e_χ = |G|⁻¹ Σ_g χ(g) g⁻¹.
pub fn idempotent(group: &Arc<FiniteGroup>, chi: usize) -> Result<GroupRingElement<Cyclotomic>> {
    let s = abelian(group)?;
    let n = int(group.order() as i64);
    let coeffs = (0..group.order())
        .map(|h| {
            let k = s.character_value_exp(chi, group.inv(h)) as i64;
            Cyclotomic::root_of_unity(s.exponent(), k) * Cyclotomic::from_rational(n.recip())
        })
        .collect();
    Ok(GroupRingElement { group: group.clone(), coeffs })
}

/// Verifies that exponent assignments on the structure generators define a character, returning its index.
pub fn character_from_generator_values(group: &Arc<FiniteGroup>, values: &[Cyclotomic]) -> Result<usize> {
    let s = abelian(group)?;
    if values.len() != s.generators().len() {
        return Err(Error::DimensionMismatch { expected: s.generators().len(), found: values.len() });
    }
    let mut exps = Vec::new();
    for (i, (&d, v)) in s.invariants().iter().zip(values).enumerate() {
        let e = s.exponent();
        let found = (0..d).find(|&a| Cyclotomic::root_of_unity(e, (a * (e / d)) as i64) == *v);
        match found {
            Some(a) => exps.push(a),
            None => {
                return Err(Error::NotHomomorphism(format!(
                    "value {v} at generator {i} is not a root of unity of order dividing {d}"
                )))
            }
        }
    }
    Ok(s.character_index(&exps))
}

/// λ_G: Σ_χ h(χ) e_χ, required to have rational coefficients.
pub fn lambda_assemble(group: &Arc<FiniteGroup>, h: &[Cyclotomic]) -> Result<GroupRingElement<Rational>> {
    let s = abelian(group)?;
    if h.len() != s.character_count() {
        return Err(Error::DimensionMismatch { expected: s.character_count(), found: h.len() });
    }
    let e = s.exponent();
    let order = h.iter().fold(e, |acc, c| lcm_u64(acc, c.order()));
    let n = int(group.order() as i64);
    let mut coeffs = Vec::with_capacity(group.order());
    for g in 0..group.order() {
        // coefficient at g: |G|⁻¹ Σ_χ h(χ) χ̄(g)
        let mut buf = vec![Rational::zero(); order as usize];
        for (chi, value) in h.iter().enumerate() {
            if value.is_zero() {
                continue;
            }
            let k = (e - s.character_value_exp(chi, g)) % e * (order / e);
            value.accumulate_rotated(order, k, &mut buf);
        }
        let c = Cyclotomic::from_power_sums(order, buf);
        match c.to_rational() {
            Some(q) => coeffs.push(q / &n),
            None => {
                return Err(Error::NotRational {
                    element: group.label(g).to_string(),
                    value: c.to_string(),
                })
            }
        }
    }
    Ok(GroupRingElement { group: group.clone(), coeffs })
}

/// A square matrix over ℚ[G] given by rows.
pub type GroupRingMatrix = Vec<Vec<GroupRingElement<Rational>>>;

fn check_square(m: &GroupRingMatrix) -> Result<(usize, Arc<FiniteGroup>)> {
    let n = m.len();
    let first = m
        .first()
        .and_then(|r| r.first())
        .ok_or(Error::NotSquare { rows: 0, cols: 0 })?;
    let group = first.group().clone();
    for row in m {
        if row.len() != n {
            return Err(Error::NotSquare { rows: n, cols: row.len() });
        }
        for x in row {
            if !same_group(x.group(), &group) {
                return Err(Error::GroupMismatch);
            }
        }
    }
    Ok((n, group))
}

/// Character-by-character determinant followed by reassembly.
pub fn det_over_group_ring(m: &GroupRingMatrix) -> Result<GroupRingElement<Rational>> {
    let (n, group) = check_square(m)?;
    let s = abelian(&group)?;
    let mut values = Vec::with_capacity(s.character_count());
    for chi in 0..s.character_count() {
        let mut entries = Vec::with_capacity(n);
        for row in m {
            let r: Result<Vec<Cyclotomic>> = row.iter().map(|x| x.evaluate(chi)).collect();
            entries.push(r?);
        }
        values.push(Matrix::from_rows(entries).det().expect("square"));
    }
    lambda_assemble(&group, &values)
}

/// Leibniz expansion inside the group ring; kept for cross-checks on small matrices.
pub fn det_leibniz(m: &GroupRingMatrix) -> Result<GroupRingElement<Rational>> {
    let (n, group) = check_square(m)?;
    let mut total = GroupRingElement::zero(&group);
    for perm in permutations(n) {
        let mut term = GroupRingElement::one(&group);
        for (i, &j) in perm.iter().enumerate() {
            term = term.try_mul(&m[i][j])?;
        }
        if permutation_sign(&perm) < 0 {
            term = -&term;
        }
        total = total.try_add(&term)?;
    }
    Ok(total)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn permutation_sign(p: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Identity-check helper: Σ_χ e_χ.
pub fn idempotent_sum(group: &Arc<FiniteGroup>) -> Result<GroupRingElement<Cyclotomic>> {
    let s = abelian(group)?;
    let mut total = GroupRingElement::zero(group);
    for chi in 0..s.character_count() {
        total = total.try_add(&idempotent(group, chi)?)?;
    }
    Ok(total)
}

impl GroupRingElement<Rational> {
    pub fn is_one(&self) -> bool {
        *self == Self::one(&self.group)
    }
}

impl<S: Scalar> GroupRingElement<S> {
    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(&self.group), |acc, _| &acc * self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_traits::One;

    fn cyc(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n))
    }

    #[test]
    fn tau_examples() {
        let g = cyc(4);
        let x = GroupRingElement::from_pairs(&g, &[(0, int(2)), (1, int(3))]);
        assert_eq!(x.tau().tau(), x);
        assert_eq!(x.tau(), GroupRingElement::from_pairs(&g, &[(0, int(2)), (3, int(3))]));
        let c2 = cyc(2);
        let one = GroupRingElement::<Rational>::one(&c2);
        let t = GroupRingElement::basis(&c2, 1);
        assert!((&(&one + &t) * &(&one - &t)).is_zero());
    }

    #[test]
    fn c3_idempotent_by_hand() {
        let g = cyc(3);
        let e = idempotent(&g, 1).unwrap();
        assert_eq!(&e * &e, e);
        let third = Cyclotomic::from_rational(rat(1, 3));
        let z = Cyclotomic::root_of_unity(3, 1);
        // (1 + ζ g⁻¹ + ζ² g⁻²)/3 with g⁻¹ = g², g⁻² = g
        assert_eq!(e.coeff(0), &third);
        assert_eq!(e.coeff(2), &(z.clone() * third.clone()));
        assert_eq!(e.coeff(1), &(z.clone() * z * third));
        assert_eq!(idempotent_sum(&g).unwrap(), GroupRingElement::one(&g));
    }

    #[test]
    fn c2_lambda() {
        let g = cyc(2);
        let h = vec![Cyclotomic::from_rational(int(5)), Cyclotomic::from_rational(int(1))];
        let x = lambda_assemble(&g, &h).unwrap();
        assert_eq!(x, GroupRingElement::from_pairs(&g, &[(0, int(3)), (1, int(2))]));
        let bad = vec![Cyclotomic::one(), Cyclotomic::root_of_unity(4, 1)];
        assert!(matches!(lambda_assemble(&g, &bad), Err(Error::NotRational { .. })));
    }

    #[test]
    fn non_equivariant_values_rejected() {
        let g = cyc(3);
        let h = vec![Cyclotomic::one(), Cyclotomic::root_of_unity(3, 1), Cyclotomic::one()];
        assert!(lambda_assemble(&g, &h).is_err());
    }

    #[test]
    fn small_determinants() {
        let c2 = cyc(2);
        let g = GroupRingElement::basis(&c2, 1);
        let z = GroupRingElement::zero(&c2);
        let m = vec![vec![z.clone(), g.clone()], vec![g, z]];
        assert_eq!(det_over_group_ring(&m).unwrap(), GroupRingElement::scalar(&c2, int(-1)));
        assert_eq!(det_leibniz(&m).unwrap(), GroupRingElement::scalar(&c2, int(-1)));
        let c4 = cyc(4);
        let id = vec![
            vec![GroupRingElement::one(&c4), GroupRingElement::zero(&c4)],
            vec![GroupRingElement::zero(&c4), GroupRingElement::one(&c4)],
        ];
        assert!(det_over_group_ring(&id).unwrap().is_one());
        let x = GroupRingElement::from_pairs(&c4, &[(1, rat(1, 2)), (3, int(7))]);
        assert_eq!(det_over_group_ring(&vec![vec![x.clone()]]).unwrap(), x);
        let ragged = vec![vec![x.clone(), x.clone()]];
        assert!(matches!(det_over_group_ring(&ragged), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn inverse_via_regular_representation() {
        let g = cyc(3);
        let x = GroupRingElement::from_pairs(&g, &[(0, int(2)), (1, int(1))]);
        let y = x.inverse().unwrap();
        assert!((&x * &y).is_one());
        let aug_zero = GroupRingElement::from_pairs(&g, &[(0, int(1)), (1, int(-1))]);
        assert!(aug_zero.inverse().is_err());
        let s3 = Arc::new(FiniteGroup::symmetric3());
        let w = GroupRingElement::from_pairs(&s3, &[(0, int(3)), (4, int(1))]);
        let wi = w.inverse().unwrap();
        assert!((&w * &wi).is_one() && (&wi * &w).is_one());
    }

    #[test]
    fn mismatched_groups() {
        let a = GroupRingElement::<Rational>::one(&cyc(2));
        let b = GroupRingElement::<Rational>::one(&cyc(3));
        assert_eq!(a.try_add(&b), Err(Error::GroupMismatch));
        assert_eq!(a.try_mul(&b), Err(Error::GroupMismatch));
    }
}
