//! Finite groups given by Cayley tables.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::AbelianStructure;
use crate::error::{Error, Result};
use crate::scalar::gcd_u64;

/// Largest order for which the subgroup lattice is enumerated.
pub const SUBGROUP_BUDGET: usize = 32;

pub struct FiniteGroup {
    name: String,
    n: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
    labels: Vec<String>,
    abelian: OnceLock<Option<Arc<AbelianStructure>>>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            name: self.name.clone(),
            n: self.n,
            table: self.table.clone(),
            inv: self.inv.clone(),
            identity: self.identity,
            labels: self.labels.clone(),
            abelian: OnceLock::new(),
        }
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.table == other.table && self.labels == other.labels)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.n)
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a multiplication table `table[a][b] = a·b`.
    pub fn from_table(
        name: impl Into<String>,
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", row.len())));
            }
            if let Some(x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {x} out of range in row {i}")));
            }
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| flat[e * n + a] == a && flat[a * n + e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                let x = flat[a * n + b];
                if seen[x] {
                    return Err(Error::InvalidGroup(format!("row {a} repeats {x}")));
                }
                seen[x] = true;
                if x == identity {
                    inv[a] = b;
                }
            }
        }
        let check = |a: usize, b: usize, c: usize| {
            flat[flat[a * n + b] * n + c] == flat[a * n + flat[b * n + c]]
        };
        if n <= SUBGROUP_BUDGET {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Err(Error::InvalidGroup(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..4096 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !check(a, b, c) {
                    return Err(Error::InvalidGroup(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
            }
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        if labels.len() != n {
            return Err(Error::InvalidGroup("label count differs from order".into()));
        }
        Ok(FiniteGroup {
            name: name.into(),
            n,
            table: flat,
            inv,
            identity,
            labels,
            abelian: OnceLock::new(),
        })
    }

    /// Parses the plain-text Cayley format: the order, then one row of 0-based entries per element.
    pub fn parse_cayley(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let n: usize = tokens
            .next()
            .ok_or_else(|| Error::Parse("missing order".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("order: {e}")))?;
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let t = tokens
                    .next()
                    .ok_or_else(|| Error::Parse(format!("missing entry ({i},{j})")))?;
                row.push(t.parse().map_err(|e| Error::Parse(format!("entry ({i},{j}): {e}")))?);
            }
            rows.push(row);
        }
        if tokens.next().is_some() {
            return Err(Error::Parse("trailing data after table".into()));
        }
        Self::from_table(format!("cayley{n}"), rows, None)
    }

    pub fn to_cayley_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for a in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|b| self.mul(a, b).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Closure of `gens` under `op`, elements listed in breadth-first order from the identity.
    pub fn from_closure<T, M, L>(
        name: impl Into<String>,
        identity: T,
        gens: &[T],
        op: M,
        label: L,
    ) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        M: Fn(&T, &T) -> T,
        L: Fn(&T) -> String,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let x = op(&elems[i], g);
                if !index.contains_key(&x) {
                    index.insert(x.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(x);
                }
            }
        }
        let table: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&op(a, b)]).collect())
            .collect();
        let labels = elems.iter().map(label).collect();
        Self::from_table(name, table, Some(labels))
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let labels = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        Self::from_table(format!("C{n}"), table, Some(labels)).expect("cyclic group")
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        let labels = (0..n)
            .map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb)))
            .collect();
        Self::from_table(format!("{}x{}", a.name, b.name), table, Some(labels))
            .expect("direct product")
    }

    pub fn symmetric3() -> Self {
        permutation_group("S3", 3, &[vec![1, 0, 2], vec![1, 2, 0]])
    }

    pub fn dihedral4() -> Self {
        permutation_group("D4", 4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])
    }

    pub fn alternating4() -> Self {
        permutation_group("A4", 4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
    }

    pub fn quaternion8() -> Self {
        type Quat = [i8; 4];
        let mul = |p: &Quat, q: &Quat| -> Quat {
            let [a1, b1, c1, d1] = *p;
            let [a2, b2, c2, d2] = *q;
            [
                a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
            ]
        };
        let label = |q: &Quat| {
            let names = ["1", "i", "j", "k"];
            let (pos, v) = q.iter().enumerate().find(|(_, v)| **v != 0).expect("unit");
            if *v > 0 {
                names[pos].to_string()
            } else {
                format!("-{}", names[pos])
            }
        };
        Self::from_closure("Q8", [1, 0, 0, 0], &[[0, 1, 0, 0], [0, 0, 1, 0]], mul, label)
            .expect("Q8")
    }

    /// (ℤ/m)^× with elements ordered by residue and labelled `σa`.
    pub fn unit_group(m: u64) -> (Self, Vec<u64>) {
        let residues: Vec<u64> = if m <= 1 {
            vec![1]
        } else {
            (1..m).filter(|&a| gcd_u64(a, m) == 1).collect()
        };
        let index: HashMap<u64, usize> =
            residues.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let modulus = m.max(2);
        let table = residues
            .iter()
            .map(|&a| residues.iter().map(|&b| index[&(a * b % modulus)]).collect())
            .collect();
        let labels = residues.iter().map(|a| format!("σ{a}")).collect();
        let g = Self::from_table(format!("U({m})"), table, Some(labels)).expect("unit group");
        (g, residues)
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let upper = name.to_ascii_uppercase();
        match upper.as_str() {
            "S3" => Ok(Self::symmetric3()),
            "D4" => Ok(Self::dihedral4()),
            "Q8" => Ok(Self::quaternion8()),
            "A4" => Ok(Self::alternating4()),
            _ => {
                let parts: Vec<&str> = upper.split('X').collect();
                let parse = |p: &str| -> Option<usize> {
                    p.strip_prefix('C').and_then(|d| d.parse().ok()).filter(|&d| d >= 1)
                };
                let factors: Option<Vec<usize>> = parts.iter().map(|p| parse(p)).collect();
                match factors {
                    Some(fs) if !fs.is_empty() => {
                        let mut g = Self::cyclic(fs[0]);
                        for &f in &fs[1..] {
                            g = Self::direct_product(&g, &Self::cyclic(f));
                        }
                        Ok(g)
                    }
                    _ => Err(Error::InvalidGroup(format!("unknown built-in group {name}"))),
                }
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    /// w·x·w⁻¹.
    pub fn conjugate(&self, w: usize, x: usize) -> usize {
        self.mul(self.mul(w, x), self.inv(w))
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn abelian_structure(&self) -> Option<Arc<AbelianStructure>> {
        self.abelian
            .get_or_init(|| {
                if self.is_abelian() {
                    Some(Arc::new(AbelianStructure::compute(self)))
                } else {
                    None
                }
            })
            .clone()
    }

    /// Conjugacy classes, each sorted, ordered by smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut classes = Vec::new();
        for a in 0..self.n {
            if seen[a] {
                continue;
            }
            let mut cls: Vec<usize> = (0..self.n).map(|w| self.conjugate(w, a)).collect();
            cls.sort_unstable();
            cls.dedup();
            for &x in &cls {
                seen[x] = true;
            }
            classes.push(cls);
        }
        classes
    }

    /// For each element, the index of its conjugacy class.
    pub fn class_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.n];
        for (c, cls) in self.conjugacy_classes().iter().enumerate() {
            for &x in cls {
                idx[x] = c;
            }
        }
        idx
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        inside[self.identity] = true;
        let mut elems = vec![self.identity];
        let mut i = 0;
        while i < elems.len() {
            for &g in gens {
                let x = self.mul(elems[i], g);
                if !inside[x] {
                    inside[x] = true;
                    elems.push(x);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.n];
        for &x in set {
            if x >= self.n {
                return false;
            }
            inside[x] = true;
        }
        !set.is_empty()
            && set.iter().all(|&a| set.iter().all(|&b| inside[self.mul(a, b)]))
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.n];
        for &x in set {
            inside[x] = true;
        }
        (0..self.n).all(|w| set.iter().all(|&h| inside[self.conjugate(w, h)]))
    }

    pub fn commutator_subgroup(&self, set: &[usize]) -> Vec<usize> {
        let mut comms = Vec::new();
        for &a in set {
            for &b in set {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.closure(&comms)
    }

    /// Every subgroup once, ordered by (order, sorted element indices).
    pub fn subgroups(&self) -> Result<Vec<Vec<usize>>> {
        if self.n > SUBGROUP_BUDGET {
            return Err(Error::OrderBudget { order: self.n, budget: SUBGROUP_BUDGET });
        }
        let to_mask = |s: &[usize]| s.iter().fold(0u64, |m, &x| m | (1u64 << x));
        let from_mask = |m: u64| (0..self.n).filter(|&x| m >> x & 1 == 1).collect::<Vec<_>>();
        let mut found: Vec<u64> = Vec::new();
        for g in 0..self.n {
            let m = to_mask(&self.closure(&[g]));
            if !found.contains(&m) {
                found.push(m);
            }
        }
        let mut start = 0;
        loop {
            let len = found.len();
            let mut fresh = Vec::new();
            for i in 0..len {
                for j in start.max(i + 1)..len {
                    let joint = found[i] | found[j];
                    if found.contains(&joint) || fresh.contains(&joint) {
                        continue;
                    }
                    let m = to_mask(&self.closure(&from_mask(joint)));
                    if !found.contains(&m) && !fresh.contains(&m) {
                        fresh.push(m);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            start = len;
            found.extend(fresh);
        }
        let mut subs: Vec<Vec<usize>> = found.into_iter().map(from_mask).collect();
        subs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(subs)
    }

    /// The subgroup on `set` as a group in its own right, with its embedding.
    pub fn subgroup(&self, set: &[usize]) -> Result<Subgroup> {
        let mut elems = set.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if !self.is_subgroup(&elems) {
            return Err(Error::InvalidSubgroup(format!("{set:?} is not closed")));
        }
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let table = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos[&self.mul(a, b)]).collect())
            .collect();
        let labels = elems.iter().map(|&x| self.labels[x].clone()).collect();
        let name = format!("{}<{}>", self.name, elems.len());
        let group = FiniteGroup::from_table(name, table, Some(labels))?;
        Ok(Subgroup { group: Arc::new(group), embed: elems })
    }

    /// G/N with cosets ordered by smallest element and labelled by it.
    pub fn quotient(&self, normal: &[usize]) -> Result<Quotient> {
        if !self.is_subgroup(normal) {
            return Err(Error::InvalidSubgroup(format!("{normal:?} is not a subgroup")));
        }
        if !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let mut proj = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for a in 0..self.n {
            if proj[a] != usize::MAX {
                continue;
            }
            for &h in normal {
                proj[self.mul(a, h)] = reps.len();
            }
            reps.push(a);
        }
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| proj[self.mul(a, b)]).collect())
            .collect();
        let labels = reps
            .iter()
            .map(|&a| {
                if normal.len() == 1 {
                    self.labels[a].clone()
                } else {
                    format!("[{}]", self.labels[a])
                }
            })
            .collect();
        let name = format!("{}/{}", self.name, normal.len());
        let group = FiniteGroup::from_table(name, table, Some(labels))?;
        Ok(Quotient { group: Arc::new(group), proj, reps })
    }
}

/// A subgroup as its own group: `embed[i]` is the parent index of element `i`.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: Arc<FiniteGroup>,
    pub embed: Vec<usize>,
}

/// A quotient group: `proj` maps parent elements to cosets, `reps` are smallest representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Arc<FiniteGroup>,
    pub proj: Vec<usize>,
    pub reps: Vec<usize>,
}

fn permutation_group(name: &str, degree: usize, gens: &[Vec<usize>]) -> FiniteGroup {
    let compose = |p: &Vec<usize>, q: &Vec<usize>| -> Vec<usize> { (0..p.len()).map(|i| p[q[i]]).collect() };
    let identity: Vec<usize> = (0..degree).collect();
    let g = FiniteGroup::from_closure(name, identity, gens, compose, |p| cycle_notation(p))
        .expect("permutation group");
    // Reorder elements by cycle label for a presentation-independent enumeration.
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by(|&a, &b| {
        let key = |x: usize| (g.element_order(x), g.label(x).to_string());
        key(a).cmp(&key(b))
    });
    let pos: Vec<usize> = {
        let mut p = vec![0; order.len()];
        for (i, &x) in order.iter().enumerate() {
            p[x] = i;
        }
        p
    };
    let table = order
        .iter()
        .map(|&a| order.iter().map(|&b| pos[g.mul(a, b)]).collect())
        .collect();
    let labels = order.iter().map(|&x| g.label(x).to_string()).collect();
    FiniteGroup::from_table(name, table, Some(labels)).expect("permutation group")
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&(i + 1).to_string());
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        "()".to_string()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders_and_classes() {
        let cases = [("S3", 6, 3), ("D4", 8, 5), ("Q8", 8, 5), ("A4", 12, 4), ("C6", 6, 6)];
        for (name, order, classes) in cases {
            let g = FiniteGroup::builtin(name).unwrap();
            assert_eq!(g.order(), order, "{name}");
            assert_eq!(g.conjugacy_classes().len(), classes, "{name}");
        }
        assert_eq!(FiniteGroup::builtin("C2xC2").unwrap().order(), 4);
        assert!(FiniteGroup::builtin("Z7").is_err());
    }

    #[test]
    fn subgroup_counts() {
        let count = |name: &str| FiniteGroup::builtin(name).unwrap().subgroups().unwrap().len();
        assert_eq!(count("S3"), 6);
        assert_eq!(count("Q8"), 6);
        assert_eq!(count("C4"), 3);
        assert_eq!(count("D4"), 10);
        assert_eq!(count("A4"), 10);
        assert_eq!(count("C2xC2"), 5);
    }

    #[test]
    fn cayley_round_trip() {
        let g = FiniteGroup::symmetric3();
        let h = FiniteGroup::parse_cayley(&g.to_cayley_text()).unwrap();
        assert_eq!(h.order(), 6);
        assert_eq!(h.conjugacy_classes().len(), 3);
        assert!(FiniteGroup::parse_cayley("2\n0 1\n1 1\n").is_err());
        assert!(FiniteGroup::parse_cayley("2\n0 1\n1").is_err());
    }

    #[test]
    fn non_associative_table_rejected() {
        // A Latin square with identity 0 that is not a group.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table("bad", rows, None).is_err());
    }

    #[test]
    fn quotient_and_commutators() {
        let g = FiniteGroup::symmetric3();
        let subs = g.subgroups().unwrap();
        let a3 = subs.iter().find(|s| s.len() == 3).unwrap().clone();
        assert!(g.is_normal(&a3));
        assert_eq!(g.commutator_subgroup(&(0..6).collect::<Vec<_>>()), a3);
        let q = g.quotient(&a3).unwrap();
        assert_eq!(q.group.order(), 2);
        let c2 = subs.iter().find(|s| s.len() == 2).unwrap();
        assert!(matches!(g.quotient(c2), Err(Error::NotNormal)));
        assert_eq!(g.center(), vec![g.identity()]);
    }

    #[test]
    fn unit_group_labels() {
        let (g, res) = FiniteGroup::unit_group(9);
        assert_eq!(res, vec![1, 2, 4, 5, 7, 8]);
        assert_eq!(g.label(1), "σ2");
        assert_eq!(g.element_order(1), 6);
        let (t, r) = FiniteGroup::unit_group(1);
        assert_eq!((t.order(), r), (1, vec![1]));
    }
}
