//! Finitely generated ℤ[1/2]-submodules of ℚ^n in a canonical lattice form.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::group_ring::GroupRingElement;
use crate::hnf::{content, hnf, integer_left_kernel, pivots};
use crate::scalar::{is_power_of_two, lcm_denominators, split_two, valuation, Rational};
use crate::{QGroupRing, QMatrix};

/// Ordered basis labels of the ambient ℚ-vector space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ambient(Arc<Vec<String>>);

impl Ambient {
    pub fn new(labels: Vec<String>) -> Self {
        Ambient(Arc::new(labels))
    }

    pub fn of_group(g: &FiniteGroup) -> Self {
        Ambient::new(g.labels().to_vec())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Subset,
    Superset,
    Incomparable,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::Equal => "equal",
            Comparison::Subset => "subset",
            Comparison::Superset => "superset",
            Comparison::Incomparable => "incomparable",
        })
    }
}

/// (1/d)·L[1/2] with L an integer lattice in HNF, 2-saturated (L = L[1/2] ∩ ℤ^n),
/// d odd and coprime to the content of L. Equal modules have identical fields.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FractionalIdeal {
    ambient: Ambient,
    basis: Vec<Vec<BigInt>>,
    denominator: BigInt,
}

fn f2_left_kernel(rows: &[Vec<BigInt>]) -> Vec<Vec<bool>> {
    let r = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut aug: Vec<(Vec<bool>, Vec<bool>)> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| (row.iter().map(|x| x.is_odd()).collect(), (0..r).map(|j| j == i).collect()))
        .collect();
    let mut top = 0;
    for c in 0..n {
        let Some(p) = (top..r).find(|&i| aug[i].0[c]) else { continue };
        aug.swap(top, p);
        let pivot = aug[top].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != top && row.0[c] {
                for (a, b) in row.0.iter_mut().zip(&pivot.0) {
                    *a ^= b;
                }
                for (a, b) in row.1.iter_mut().zip(&pivot.1) {
                    *a ^= b;
                }
            }
        }
        top += 1;
    }
    aug.into_iter().skip(top).map(|(_, c)| c).collect()
}

fn saturate_two(mut basis: Vec<Vec<BigInt>>, n: usize) -> Vec<Vec<BigInt>> {
    loop {
        let kernel = f2_left_kernel(&basis);
        if kernel.is_empty() {
            return basis;
        }
        for c in kernel {
            let mut v = vec![BigInt::zero(); n];
            for (row, _) in basis.iter().zip(&c).filter(|(_, &b)| b) {
                for (a, b) in v.iter_mut().zip(row) {
                    *a += b;
                }
            }
            basis.push(v.into_iter().map(|x| x / 2).collect());
        }
        basis = hnf(basis, n);
    }
}

impl FractionalIdeal {
    pub fn zero(ambient: Ambient) -> Self {
        FractionalIdeal { ambient, basis: Vec::new(), denominator: BigInt::one() }
    }

    /// ℤ[1/2]^n.
    pub fn unit(ambient: Ambient) -> Self {
        let n = ambient.dim();
        let basis = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        FractionalIdeal { ambient, basis, denominator: BigInt::one() }
    }

    /// The ℤ[1/2]-span of the given vectors.
    pub fn from_vectors(ambient: Ambient, vectors: &[Vec<Rational>]) -> Result<Self> {
        let n = ambient.dim();
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
        let d = lcm_denominators(vectors.iter().flatten());
        let (_, d_odd) = split_two(&d);
        let rows: Vec<Vec<BigInt>> = vectors
            .iter()
            .map(|v| v.iter().map(|q| (q * Rational::from(d.clone())).to_integer()).collect())
            .collect();
        let basis = saturate_two(hnf(rows, n), n);
        if basis.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let g = content(&basis).gcd(&d_odd);
        let basis = basis.into_iter().map(|row| row.into_iter().map(|x| x / &g).collect()).collect();
        Ok(FractionalIdeal { ambient, basis, denominator: d_odd / g })
    }

    /// The ℤ[1/2][G]-module generated by `gens` under left multiplication.
    pub fn from_generators(group: &Arc<FiniteGroup>, gens: &[QGroupRing]) -> Result<Self> {
        let mut vectors = Vec::with_capacity(gens.len() * group.order());
        for x in gens {
            if x.group().as_ref() != group.as_ref() {
                return Err(Error::GroupMismatch);
            }
            for g in 0..group.order() {
                vectors.push(x.left_translate(g).coeffs().to_vec());
            }
        }
        Self::from_vectors(Ambient::of_group(group), &vectors)
    }

    /// Principal left ideal ℤ[1/2][G]·x.
    pub fn principal(x: &QGroupRing) -> Result<Self> {
        Self::from_generators(x.group(), std::slice::from_ref(x))
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.ambient.dim()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn lattice(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// Basis vectors with the denominator applied.
    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis
            .iter()
            .map(|row| row.iter().map(|x| Rational::new(x.clone(), self.denominator.clone())).collect())
            .collect()
    }

    pub fn basis_elements(&self, group: &Arc<FiniteGroup>) -> Result<Vec<QGroupRing>> {
        self.check_group(group)?;
        self.basis_vectors().into_iter().map(|v| GroupRingElement::from_coeffs(group, v)).collect()
    }

    fn check_group(&self, group: &FiniteGroup) -> Result<()> {
        if self.ambient.labels() != group.labels() {
            return Err(Error::AmbientMismatch(format!(
                "ideal lives over [{}], element over group {}",
                self.ambient.labels().join(", "),
                group.name()
            )));
        }
        Ok(())
    }

    fn check_ambient(&self, other: &Ambient) -> Result<()> {
        if &self.ambient != other {
            return Err(Error::AmbientMismatch(format!(
                "[{}] vs [{}]",
                self.ambient.labels().join(", "),
                other.labels().join(", ")
            )));
        }
        Ok(())
    }

    /// Coordinates of `v` in the lattice basis, if v lies in the ℚ-span.
    fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let mut y: Vec<Rational> = v.iter().map(|q| q * Rational::from(self.denominator.clone())).collect();
        let mut coords = Vec::with_capacity(self.basis.len());
        for (row, p) in self.basis.iter().zip(pivots(&self.basis)) {
            if y[..p].iter().any(|q| !q.is_zero()) {
                return None;
            }
            let c = &y[p] / Rational::from(row[p].clone());
            if !c.is_zero() {
                for (a, b) in y.iter_mut().zip(row).skip(p) {
                    *a -= &c * Rational::from(b.clone());
                }
            }
            coords.push(c);
        }
        y.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains_vector(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: v.len() });
        }
        Ok(self
            .coordinates(v)
            .is_some_and(|c| c.iter().all(|q| is_power_of_two(q.denom()))))
    }

    pub fn contains(&self, x: &QGroupRing) -> Result<bool> {
        self.check_group(x.group())?;
        self.contains_vector(x.coeffs())
    }

    /// First basis vector of `self` not in `other`.
    pub fn witness_not_in(&self, other: &Self) -> Result<Option<Vec<Rational>>> {
        other.check_ambient(&self.ambient)?;
        for v in self.basis_vectors() {
            if !other.contains_vector(&v)? {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        Ok(self.witness_not_in(other)?.is_none())
    }

    pub fn compare(&self, other: &Self) -> Result<Comparison> {
        other.check_ambient(&self.ambient)?;
        if self == other {
            return Ok(Comparison::Equal);
        }
        Ok(match (self.is_subset(other)?, other.is_subset(self)?) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::Subset,
            (false, true) => Comparison::Superset,
            (false, false) => Comparison::Incomparable,
        })
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        other.check_ambient(&self.ambient)?;
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Self::from_vectors(self.ambient.clone(), &vs)
    }

    /// {b·x : b ∈ I}.
    pub fn scale_by(&self, x: &QGroupRing) -> Result<Self> {
        self.multiply(x, false)
    }

    /// {x·b : b ∈ I}.
    pub fn left_scale_by(&self, x: &QGroupRing) -> Result<Self> {
        self.multiply(x, true)
    }

    fn multiply(&self, x: &QGroupRing, left: bool) -> Result<Self> {
        let g = x.group();
        let vs: Result<Vec<Vec<Rational>>> = self
            .basis_elements(g)?
            .iter()
            .map(|b| {
                let p = if left { x.try_mul(b)? } else { b.try_mul(x)? };
                Ok(p.coeffs().to_vec())
            })
            .collect();
        Self::from_vectors(self.ambient.clone(), &vs?)
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        let vs: Vec<Vec<Rational>> =
            self.basis_vectors().into_iter().map(|v| v.into_iter().map(|a| a * q).collect()).collect();
        Self::from_vectors(self.ambient.clone(), &vs).expect("same dimension")
    }

    /// T(I) for T: ℚ^n → ℚ^m given as an m×n matrix.
    pub fn map_image(&self, t: &QMatrix, codomain: Ambient) -> Result<Self> {
        if t.cols() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: t.cols() });
        }
        if t.rows() != codomain.dim() {
            return Err(Error::DimensionMismatch { expected: codomain.dim(), found: t.rows() });
        }
        let vs: Vec<Vec<Rational>> = self.basis_vectors().iter().map(|v| t.apply(v)).collect();
        Self::from_vectors(codomain, &vs)
    }

    /// {x ∈ ℚ^n : T x ∈ self} for injective T: ℚ^n → ℚ^m.
    pub fn map_preimage(&self, t: &QMatrix, domain: Ambient) -> Result<Self> {
        if t.rows() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: t.rows() });
        }
        if t.cols() != domain.dim() {
            return Err(Error::DimensionMismatch { expected: domain.dim(), found: t.cols() });
        }
        let rank = t.rank();
        if rank < t.cols() {
            return Err(Error::NotInjective { rank, dim: t.cols() });
        }
        // Integer equations cutting out the image of T.
        let equations: Vec<Vec<BigInt>> = t
            .transpose()
            .nullspace()
            .into_iter()
            .map(|w| {
                let d = lcm_denominators(w.iter());
                w.iter().map(|q| (q * Rational::from(d.clone())).to_integer()).collect()
            })
            .collect();
        let products: Vec<Vec<BigInt>> = self
            .basis
            .iter()
            .map(|b| {
                equations
                    .iter()
                    .map(|w| b.iter().zip(w).map(|(x, y)| x * y).sum())
                    .collect()
            })
            .collect();
        let kernel = integer_left_kernel(&products, equations.len());
        let mut xs = Vec::with_capacity(kernel.len());
        for c in kernel {
            let mut u = vec![BigInt::zero(); self.dim()];
            for (ci, b) in c.iter().zip(&self.basis) {
                for (a, bj) in u.iter_mut().zip(b) {
                    *a += ci * bj;
                }
            }
            let u: Vec<Rational> =
                u.into_iter().map(|x| Rational::new(x, self.denominator.clone())).collect();
            let x = t.solve(&u).ok_or_else(|| {
                Error::Precondition("lattice vector in the image has no preimage".into())
            })?;
            xs.push(x);
        }
        Self::from_vectors(domain, &xs)
    }

    /// Minimum p-adic valuation over the lattice basis (None for the zero module).
    pub fn min_valuation(&self, p: u64) -> Option<i64> {
        self.basis_vectors().iter().flatten().filter_map(|q| valuation(q, p)).min()
    }

    /// Every basis coefficient is p-integral.
    pub fn is_p_integral(&self, p: u64) -> bool {
        self.min_valuation(p).is_none_or(|v| v >= 0)
    }

    /// Relabels the ambient without changing coordinates.
    pub fn with_ambient(&self, ambient: Ambient) -> Result<Self> {
        if ambient.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: ambient.dim() });
        }
        Ok(FractionalIdeal { ambient, ..self.clone() })
    }

    /// Index [self : other] as a rational with 2-parts removed, when both have full rank.
    pub fn odd_index_ratio(&self, other: &Self) -> Option<Rational> {
        if self.rank() != self.dim() || other.rank() != other.dim() {
            return None;
        }
        let vol = |i: &Self| {
            let d: BigInt = i.basis.iter().enumerate().map(|(k, r)| r[k].clone()).product();
            let den = num_traits::pow(i.denominator.clone(), i.dim());
            Rational::new(d, den)
        };
        let q = vol(other) / vol(self);
        let strip = |n: &BigInt| split_two(n).1;
        Some(Rational::new(strip(q.numer()), strip(q.denom())))
    }
}

impl fmt::Display for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return f.write_str("0");
        }
        write!(f, "(1/{})<", self.denominator)?;
        for (k, row) in self.basis.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            let terms: Vec<String> = row
                .iter()
                .zip(self.ambient.labels())
                .filter(|(x, _)| !x.is_zero())
                .map(|(x, l)| format!("{x}*{l}"))
                .collect();
            f.write_str(&terms.join(" + "))?;
        }
        f.write_str(">")
    }
}

impl PartialOrd for FractionalIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.compare(other).ok()? {
            Comparison::Equal => Some(Ordering::Equal),
            Comparison::Subset => Some(Ordering::Less),
            Comparison::Superset => Some(Ordering::Greater),
            Comparison::Incomparable => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::PlaceSet;
    use crate::scalar::{int, rat};
    use crate::stickelberger::stickelberger;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    fn el(g: &Arc<FiniteGroup>, c: &[Rational]) -> QGroupRing {
        GroupRingElement::from_coeffs(g, c.to_vec()).unwrap()
    }

    #[test]
    fn unit_and_idempotent() {
        let g = c2();
        let unit = FractionalIdeal::from_generators(&g, &[GroupRingElement::one(&g)]).unwrap();
        assert_eq!(unit, FractionalIdeal::unit(Ambient::of_group(&g)));
        assert_eq!(unit.denominator(), &BigInt::one());
        let e = el(&g, &[rat(1, 2), rat(1, 2)]);
        let i = FractionalIdeal::principal(&e).unwrap();
        assert_eq!(i.rank(), 1);
        assert!(i.contains(&e).unwrap());
        assert!(unit.contains(&el(&g, &[rat(1, 4), rat(1, 4)])).unwrap());
        assert!(!unit.contains(&el(&g, &[rat(1, 3), rat(1, 3)])).unwrap());
        assert_eq!(i.compare(&unit).unwrap(), Comparison::Subset);
        let f = el(&g, &[rat(1, 2), rat(-1, 2)]);
        let j = FractionalIdeal::principal(&f).unwrap();
        assert_eq!(i.compare(&j).unwrap(), Comparison::Incomparable);
        assert_eq!(i.sum(&j).unwrap(), unit);
        assert!(FractionalIdeal::from_generators(&g, &[]).unwrap().is_zero());
    }

    #[test]
    fn theta_three() {
        let s = PlaceSet::parse("infty,3").unwrap();
        let theta = stickelberger(3, &s, 0).unwrap().element;
        let g = theta.group().clone();
        let i = FractionalIdeal::principal(&theta).unwrap();
        assert_eq!(i.denominator(), &BigInt::from(3));
        assert_eq!(i.lattice(), &[vec![BigInt::one(), -BigInt::one()]]);
        assert!(i.contains(&el(&g, &[rat(1, 6), rat(-1, 6)])).unwrap());
        let unit = FractionalIdeal::unit(Ambient::of_group(&g));
        assert_eq!(unit.scale_by(&theta).unwrap(), i);
    }

    #[test]
    fn images_and_preimages() {
        let g = c2();
        let amb = Ambient::of_group(&g);
        let aug = QMatrix::from_rows(vec![vec![int(1), int(1)]]);
        let j = FractionalIdeal::principal(&el(&g, &[rat(1, 2), rat(-1, 2)])).unwrap();
        assert!(j.map_image(&aug, Ambient::new(vec!["1".into()])).unwrap().is_zero());
        let line = Ambient::new(vec!["x".into()]);
        let t = QMatrix::from_rows(vec![vec![int(1)], vec![int(2)]]);
        let plane = FractionalIdeal::unit(Ambient::new(vec!["a".into(), "b".into()]));
        assert_eq!(plane.map_preimage(&t, line.clone()).unwrap(), FractionalIdeal::unit(line.clone()));
        let first = QMatrix::from_rows(vec![vec![int(1)], vec![int(0)]]);
        assert_eq!(plane.map_preimage(&first, line.clone()).unwrap(), FractionalIdeal::unit(line));
        let id = QMatrix::identity(2);
        assert_eq!(j.map_preimage(&id, amb.clone()).unwrap(), j);
        assert!(matches!(
            j.map_preimage(&QMatrix::from_rows(vec![vec![int(1), int(1)], vec![int(1), int(1)]]), amb),
            Err(Error::NotInjective { .. })
        ));
    }

    #[test]
    fn odd_content_normalization() {
        let amb = Ambient::new(vec!["a".into(), "b".into()]);
        let i = FractionalIdeal::from_vectors(amb.clone(), &[vec![int(6), int(0)], vec![int(0), rat(10, 7)]]).unwrap();
        assert_eq!(i.denominator(), &BigInt::from(7));
        let j = FractionalIdeal::from_vectors(amb, &[vec![int(3), int(0)], vec![int(0), rat(5, 7)]]).unwrap();
        assert_eq!(i, j);
    }
}
