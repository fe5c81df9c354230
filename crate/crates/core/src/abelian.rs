//! Invariant-factor decomposition of finite abelian groups and their characters.

use std::collections::HashMap;

use crate::cyclotomic::Cyclotomic;
use crate::group::FiniteGroup;
use crate::scalar::{factorize, gcd_u64};

/// `G ≅ ℤ/d₁ × … × ℤ/d_k` with `d₁ | d₂ | … | d_k`, each `d_i > 1`.
#[derive(Clone, Debug)]
pub struct AbelianStructure {
    invariants: Vec<u64>,
    generators: Vec<usize>,
    coords: Vec<Vec<u64>>,
    by_coords: HashMap<Vec<u64>, usize>,
    exponent: u64,
}

fn p_part_basis(g: &FiniteGroup, p: u64) -> Vec<(usize, u64)> {
    let n = g.order();
    let is_p_power = |mut k: u64| {
        while k.is_multiple_of(p) {
            k /= p;
        }
        k == 1
    };
    let part: Vec<usize> = (0..n).filter(|&x| is_p_power(g.element_order(x))).collect();
    let mut basis = Vec::new();
    let mut span = vec![g.identity()];
    while span.len() < part.len() {
        let mut in_span = vec![false; n];
        for &s in &span {
            in_span[s] = true;
        }
        let quotient_order = |x: usize| {
            let mut y = x;
            let mut k = 1;
            while !in_span[y] {
                y = g.mul(y, x);
                k += 1;
            }
            k
        };
        let (best, order) = part
            .iter()
            .map(|&x| (x, quotient_order(x)))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("nonempty p-part");
        let lifted = span
            .iter()
            .map(|&s| g.mul(best, s))
            .find(|&y| g.element_order(y) == order)
            .expect("a lift of maximal quotient order exists");
        basis.push((lifted, order));
        let mut gens: Vec<usize> = basis.iter().map(|b| b.0).collect();
        gens.sort_unstable();
        span = g.closure(&gens);
    }
    basis
}

impl AbelianStructure {
    pub fn compute(g: &FiniteGroup) -> Self {
        assert!(g.is_abelian(), "abelian structure of a non-abelian group");
        let n = g.order() as u64;
        let mut columns: Vec<Vec<(usize, u64)>> = Vec::new();
        for (p, _) in factorize(n) {
            let mut b = p_part_basis(g, p);
            b.sort_by(|x, y| y.1.cmp(&x.1));
            columns.push(b);
        }
        let k = columns.iter().map(Vec::len).max().unwrap_or(0);
        let mut factors: Vec<(usize, u64)> = (0..k)
            .map(|i| {
                columns.iter().fold((g.identity(), 1u64), |(x, d), col| match col.get(i) {
                    Some(&(y, e)) => (g.mul(x, y), d * e),
                    None => (x, d),
                })
            })
            .collect();
        factors.reverse();
        let invariants: Vec<u64> = factors.iter().map(|f| f.1).collect();
        let generators: Vec<usize> = factors.iter().map(|f| f.0).collect();
        let mut coords = vec![Vec::new(); g.order()];
        let mut by_coords = HashMap::new();
        let total: u64 = invariants.iter().product();
        assert_eq!(total, n, "decomposition covers the group");
        for idx in 0..total {
            let c = mixed_radix(idx, &invariants);
            let x = c
                .iter()
                .zip(&generators)
                .fold(g.identity(), |acc, (&ci, &gi)| g.mul(acc, g.pow(gi, ci)));
            assert!(coords[x].is_empty() || invariants.is_empty(), "decomposition is injective");
            coords[x] = c.clone();
            by_coords.insert(c, x);
        }
        let exponent = invariants.last().copied().unwrap_or(1);
        AbelianStructure { invariants, generators, coords, by_coords, exponent }
    }

    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn order(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self, x: usize) -> &[u64] {
        &self.coords[x]
    }

    pub fn element(&self, coords: &[u64]) -> usize {
        self.by_coords[coords]
    }

    pub fn character_count(&self) -> usize {
        self.order()
    }

    /// Exponent tuple of the character with the given index (lexicographic order).
    pub fn character_exponents(&self, chi: usize) -> Vec<u64> {
        mixed_radix(chi as u64, &self.invariants)
    }

    pub fn character_index(&self, exps: &[u64]) -> usize {
        exps.iter()
            .zip(&self.invariants)
            .fold(0u64, |acc, (&a, &d)| acc * d + a % d) as usize
    }

    /// χ(x) = ζ_e^k; returns k mod e.
    pub fn character_value_exp(&self, chi: usize, x: usize) -> u64 {
        let exps = self.character_exponents(chi);
        let e = self.exponent;
        exps.iter()
            .zip(&self.coords[x])
            .zip(&self.invariants)
            .map(|((&a, &c), &d)| a * c % d * (e / d))
            .sum::<u64>()
            % e
    }

    pub fn character_value(&self, chi: usize, x: usize) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.exponent, self.character_value_exp(chi, x) as i64)
    }

    pub fn conjugate_character(&self, chi: usize) -> usize {
        let exps: Vec<u64> = self
            .character_exponents(chi)
            .iter()
            .zip(&self.invariants)
            .map(|(&a, &d)| (d - a) % d)
            .collect();
        self.character_index(&exps)
    }

    pub fn multiply_characters(&self, a: usize, b: usize) -> usize {
        let ea = self.character_exponents(a);
        let eb = self.character_exponents(b);
        let exps: Vec<u64> = ea
            .iter()
            .zip(&eb)
            .zip(&self.invariants)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect();
        self.character_index(&exps)
    }

    /// χ ↦ χ^z for z prime to the exponent.
    pub fn galois_character(&self, chi: usize, z: u64) -> usize {
        assert_eq!(gcd_u64(z, self.exponent), 1);
        let exps: Vec<u64> = self
            .character_exponents(chi)
            .iter()
            .zip(&self.invariants)
            .map(|(&a, &d)| a * z % d)
            .collect();
        self.character_index(&exps)
    }

    pub fn character_order(&self, chi: usize) -> u64 {
        self.character_exponents(chi)
            .iter()
            .zip(&self.invariants)
            .map(|(&a, &d)| d / gcd_u64(a, d))
            .fold(1, crate::scalar::lcm_u64)
    }
}

fn mixed_radix(mut idx: u64, radices: &[u64]) -> Vec<u64> {
    let mut out = vec![0; radices.len()];
    for i in (0..radices.len()).rev() {
        out[i] = idx % radices[i];
        idx /= radices[i];
    }
    out
}
