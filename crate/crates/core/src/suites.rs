//! Named check suites over the whole library.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::annihilator::{nc_ideal, push_datum, quotient_check, two_sided_check, AnnihilatorDatum};
use crate::brauer::{components_from_abelian, synthetic_components, BrauerData, BrauerQuotient, SubgroupRecord};
use crate::check::CheckResult;
use crate::cyclo_ideals::{
    check_imagquad_base_change, check_torsion_integrality, ideal_j_full, ideal_j_imagquad, ideal_j_real,
    torsion_annihilator, CyclotomicLevel, UnitQuotientFixture,
};
use crate::dirichlet::{bernoulli_number, characters_mod, generalized_bernoulli, partial_zeta, partial_zeta_by_characters, PlaceSet, UnitGroup};
use crate::error::{Error, Result};
use crate::functorial::{
    check_corestriction, check_fixed_point, check_quotient, corestriction_duality, corestriction_map,
    fixed_point_by_characters, fixed_point_map, induced_det, Tower,
};
use crate::group::FiniteGroup;
use crate::group_ring::{GroupRingElement, GroupRingMatrix};
use crate::ideal::{Ambient, FractionalIdeal};
use crate::scalar::{int, rat};
use crate::signature::{y_rank, EmbeddingSignature};
use crate::stickelberger::{
    base_change_element, embed_subgroup_element, half_stickelberger, rho_psi_identity, squares_subgroup,
    stickelberger, stickelberger_by_characters,
};
use crate::QGroupRing;

pub const SUITES: &[&str] = &[
    "functoriality",
    "stickelberger",
    "oracles",
    "brauer",
    "annihilator",
    "cyclotomic",
    "rank",
    "all",
];

fn compare<T: PartialEq + std::fmt::Display>(name: String, lhs: &T, rhs: &T) -> CheckResult {
    if lhs == rhs {
        CheckResult::pass(name)
    } else {
        CheckResult::fail(name, format!("{lhs} != {rhs}"))
    }
}

fn places(ell: u64) -> PlaceSet {
    PlaceSet::with_primes(&[ell]).expect("prime")
}

fn random_element(group: &Arc<FiniteGroup>, rng: &mut ChaCha8Rng) -> QGroupRing {
    let coeffs = (0..group.order())
        .map(|_| rat(rng.gen_range(-6..=6), [1, 2, 3, 5][rng.gen_range(0..4)]))
        .collect();
    GroupRingElement::from_coeffs(group, coeffs).expect("sized")
}

/// (1 − c)θ̃ = θ at S = {∞, ℓ}.
pub fn half_stickelberger_identity() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for ell in [7u64, 11, 19, 23] {
        for n in [0, 1] {
            let m = ell.pow(n + 1u32);
            let s = places(ell);
            let half = half_stickelberger(m, &squares_subgroup(m), &s)?;
            let theta = stickelberger(m, &s, 0)?.element;
            let group = theta.group().clone();
            let c = UnitGroup::get(m).conjugation();
            let factor = &GroupRingElement::one(&group) - &GroupRingElement::basis(&group, c);
            let lhs = &factor * &embed_subgroup_element(&half.subgroup, &group, &half.element);
            out.push(compare(format!("(1 - c) half theta = theta at m = {m}"), &lhs, &theta));
        }
    }
    Ok(out)
}

/// L_S(0, ρψ) = 2ψ|_H(τθ̃) for every even ψ.
pub fn rho_psi_l_values() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for ell in [7, 11] {
        for (k, (lhs, rhs)) in rho_psi_identity(ell, 0)?.into_iter().enumerate() {
            out.push(compare(format!("L_S(0, rho psi_{k}) = 2 psi_{k}(tau half theta) at ell = {ell}"), &lhs, &rhs));
        }
    }
    Ok(out)
}

/// τ(B)⁻¹ = 2θ̃.
pub fn base_change_inverse() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for ell in [7, 11] {
        let (half, b) = base_change_element(ell, 0)?;
        let lhs = b.tau().inverse()?;
        let rhs = half.element.scale(&int(2));
        out.push(compare(format!("tau(B)^-1 = 2 half theta at ell = {ell}"), &lhs, &rhs));
    }
    Ok(out)
}

/// π(ℤ[1/2][G_{n+1}]θ(r)) ⊆ ℤ[1/2][G_n]θ(r) for n < `levels`, with a shrunken negative control.
pub fn quotient_functoriality_at(ell: u64, levels: u32) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for n in 0..levels {
        let (m_top, m_bottom) = (ell.pow(n + 2), ell.pow(n + 1));
        let tower = Tower::cyclotomic(m_top, m_bottom)?;
        for r in [0, -1, -2] {
            let top = FractionalIdeal::principal(&stickelberger(m_top, &places(ell), r)?.element)?;
            let bottom = FractionalIdeal::principal(&stickelberger(m_bottom, &places(ell), r)?.element)?;
            let mut c = check_quotient(&tower, &top, &bottom)?;
            c.name = format!("{} (minus part, r = {r})", c.name);
            out.push(c);
            if r == 0 {
                let shrunk = bottom.scale_rational(&int(3));
                out.push(check_quotient(&tower, &top, &shrunk)?.negative_control());
            }
        }
    }
    Ok(out)
}

pub fn quotient_functoriality() -> Result<Vec<CheckResult>> {
    let mut out = quotient_functoriality_at(3, 1)?;
    out.extend(quotient_functoriality_at(5, 1)?);
    Ok(out)
}

fn inclusions() -> Result<Vec<(String, Arc<FiniteGroup>, Vec<usize>)>> {
    let mut out = Vec::new();
    for (name, g, h_order) in [
        ("1 < C2", FiniteGroup::cyclic(2), 1),
        ("C2 < C4", FiniteGroup::cyclic(4), 2),
        ("C3 < C6", FiniteGroup::cyclic(6), 3),
        ("C2 < C2xC2", FiniteGroup::builtin("C2xC2")?, 2),
    ] {
        let h = g.subgroups()?.into_iter().find(|s| s.len() == h_order).expect("subgroup");
        out.push((name.to_string(), Arc::new(g), h));
    }
    Ok(out)
}

/// φ(Det_{ℚ[H]} M) = Det_{ℚ[G]}(ℚ[G] ⊗ M) on random matrices.
pub fn induced_determinants(samples: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (name, g, h) in inclusions()? {
        let sub = g.subgroup(&h)?;
        let mut failure = None;
        for i in 0..samples {
            let size = rng.gen_range(1..=3);
            let m: GroupRingMatrix = (0..size)
                .map(|_| (0..size).map(|_| random_element(&sub.group, &mut rng)).collect())
                .collect();
            let (lhs, rhs) = induced_det(&sub, &g, &m)?;
            if lhs != rhs {
                failure = Some(format!("sample {i}: {lhs} vs {rhs}"));
                break;
            }
        }
        out.push(CheckResult::from_witness(format!("induced determinant identity for {name} ({samples} samples)"), failure));
    }
    Ok(out)
}

/// λ is a unital ring homomorphism agreeing with its character description; ι satisfies
/// character duality, H-linearity and the corestriction containment on cyclotomic fixtures.
pub fn fixed_point_and_corestriction(seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let c4 = Arc::new(FiniteGroup::cyclic(4));
    let c6 = Arc::new(FiniteGroup::cyclic(6));
    let towers = vec![
        ("C4 over C2", Tower::from_normal(c4.clone(), &c4.closure(&[2]))?),
        ("C6 over C3", Tower::from_normal(c6.clone(), &c6.closure(&[3]))?),
        ("(Z/9)* over (Z/3)*", Tower::cyclotomic(9, 3)?),
        ("(Z/7)* over (Z/7)*/<-1>", { let u = UnitGroup::get(7); Tower::from_normal(u.group().clone(), &[0, u.conjugation()])? }),
    ];
    for (name, t) in &towers {
        let one = fixed_point_map(t, &GroupRingElement::one(&t.quotient))?;
        let mut failure = (!one.is_one()).then(|| format!("lambda(1) = {one}"));
        for _ in 0..20 {
            if failure.is_some() {
                break;
            }
            let x = random_element(&t.quotient, &mut rng);
            let y = random_element(&t.quotient, &mut rng);
            let lxy = fixed_point_map(t, &(&x * &y))?;
            let prod = &fixed_point_map(t, &x)? * &fixed_point_map(t, &y)?;
            let sum = &fixed_point_map(t, &x)? + &fixed_point_map(t, &y)?;
            if lxy != prod {
                failure = Some(format!("lambda(xy) != lambda(x)lambda(y) for x = {x}, y = {y}"));
            } else if fixed_point_map(t, &(&x + &y))? != sum {
                failure = Some(format!("lambda not additive at x = {x}"));
            } else if fixed_point_map(t, &x)?.character_values()? != fixed_point_by_characters(t, &x)? {
                failure = Some(format!("character description differs at x = {x}"));
            }
        }
        out.push(CheckResult::from_witness(format!("lambda for {name} is a unital ring map matching characters"), failure));
    }
    let mut subgroup_cases: Vec<(String, Arc<FiniteGroup>, Vec<usize>)> = inclusions()?;
    let u7 = UnitGroup::get(7);
    let sq7: Vec<usize> = squares_subgroup(7).iter().map(|&a| u7.index_of(a as i64).unwrap()).collect();
    subgroup_cases.push(("squares < (Z/7)*".into(), u7.group().clone(), sq7.clone()));
    for (name, g, h) in &subgroup_cases {
        let sub = g.subgroup(h)?;
        let mut failure = None;
        for x in 0..g.order() {
            let e = GroupRingElement::basis(g, x);
            if let Some(chi) = corestriction_duality(&sub, g, &e)? {
                failure = Some(format!("character {chi} at basis element {}", g.label(x)));
                break;
            }
            for (hi, &hg) in sub.embed.iter().enumerate() {
                let lhs = corestriction_map(&sub, g, &e.left_translate(hg))?;
                let rhs = corestriction_map(&sub, g, &e)?.left_translate(hi);
                if lhs != rhs {
                    failure = Some(format!("not H-linear at {} and {}", g.label(x), g.label(hg)));
                }
            }
        }
        out.push(CheckResult::from_witness(format!("iota for {name}: Frobenius duality and H-linearity"), failure));
    }
    // Corestriction containment: identity tower, an envelope fixture and a negative control.
    let s7 = places(7);
    let theta = stickelberger(7, &s7, 0)?.element;
    let j = FractionalIdeal::principal(&theta)?;
    let whole = u7.group().subgroup(&(0..u7.order()).collect::<Vec<_>>())?;
    let same = j.with_ambient(Ambient::of_group(&whole.group))?;
    out.push(check_corestriction(&whole, u7.group(), &j, &same)?);
    let sub = u7.group().subgroup(&sq7)?;
    let envelope = FractionalIdeal::unit(Ambient::of_group(&sub.group)).scale_rational(&rat(1, 7));
    let mut c = check_corestriction(&sub, u7.group(), &j, &envelope)?;
    c.name = format!("{c} with the (1/7) envelope fixture", c = c.name);
    out.push(c);
    let integral = FractionalIdeal::unit(Ambient::of_group(&sub.group));
    out.push(check_corestriction(&sub, u7.group(), &j, &integral)?.negative_control());
    Ok(out)
}

/// Identity towers and the λ containment along (ℤ/9)^× → (ℤ/3)^×.
pub fn tower_identities() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let s3 = places(3);
    let theta9 = stickelberger(9, &s3, 0)?.element;
    let theta3 = stickelberger(3, &s3, 0)?.element;
    let j9 = FractionalIdeal::principal(&theta9)?;
    let j3 = FractionalIdeal::principal(&theta3)?;
    let id = Tower::identity(theta9.group().clone());
    out.push(check_quotient(&id, &j9, &j9)?);
    out.push(check_fixed_point(&id, &j9, &j9)?);
    let whole = theta9.group().subgroup(&(0..6).collect::<Vec<_>>())?;
    let same = j9.with_ambient(Ambient::of_group(&whole.group))?;
    out.push(check_corestriction(&whole, theta9.group(), &j9, &same)?);
    let t = Tower::cyclotomic(9, 3)?;
    out.push(check_fixed_point(&t, &j3, &j9)?);
    out.push(check_quotient(&t, &j9, &j3)?);
    Ok(out)
}

fn brauer_groups() -> Result<Vec<Arc<FiniteGroup>>> {
    Ok(vec![
        Arc::new(FiniteGroup::symmetric3()),
        Arc::new(FiniteGroup::dihedral4()),
        Arc::new(FiniteGroup::quaternion8()),
        Arc::new(FiniteGroup::alternating4()),
    ])
}

/// B_G* injective and duality-certified; the dual quotient square commutes.
pub fn brauer_layer() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for g in brauer_groups()? {
        let d = BrauerData::new(g.clone())?;
        let b = d.bgstar();
        let rank = b.rank();
        out.push(CheckResult::from_witness(
            format!("B* injective for {} (rank {rank}, {} classes)", g.name(), d.classes.len()),
            (rank != d.classes.len()).then(|| format!("rank {rank}")),
        ));
        out.push(CheckResult::from_witness(
            format!("B* pairs with Ind Inf for {}", g.name()),
            d.duality_mismatch(&b)?.map(|(h, phi, c)| format!("subgroup H{h}, character {phi}, class {c}")),
        ));
    }
    let s3 = Arc::new(FiniteGroup::symmetric3());
    let a3 = s3.closure(&[(0..6).find(|&x| s3.element_order(x) == 3).expect("3-cycle")]);
    let d4 = Arc::new(FiniteGroup::dihedral4());
    let center = d4.center();
    for (g, n) in [(s3, a3), (d4, center)] {
        let q = BrauerQuotient::new(g, &n)?;
        let up = synthetic_components(&q.upper)?;
        let down = q.push_components(&up)?;
        out.extend(q.check(&up, &down)?);
    }
    Ok(out)
}

/// The preimage of the component images of an abelian J is J itself.
pub fn abelian_reduction() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for ell in [3, 5] {
        let level = CyclotomicLevel::new(ell, 0)?;
        let u = UnitQuotientFixture::unit(Ambient::of_group(&level.plus_tower().quotient));
        let j = ideal_j_full(&level, 0, &u)?.ideal;
        let d = BrauerData::new(level.group().clone())?;
        let comps = components_from_abelian(&d, &j)?;
        let pre = d.nonabelian_j(&comps)?;
        let name = format!("preimage recovers the abelian ideal over (Z/{ell})*");
        out.push(if pre == j.with_ambient(d.class_ambient())? {
            CheckResult::pass(name)
        } else {
            CheckResult::fail(name, format!("{pre} vs {j}"))
        });
    }
    Ok(out)
}

/// ann(Tors)·θ(r) is ℓ-integral, including (σ₂ − 4)θ(−1) = −(σ₁ + σ₂)/4 at m = 3.
pub fn torsion_integrality() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for ell in [3, 5, 7] {
        for m in [ell, ell * ell] {
            for r in [-1, -2] {
                out.push(check_torsion_integrality(m, ell, r)?);
            }
        }
    }
    let g = UnitGroup::get(3).group().clone();
    let theta = stickelberger(3, &places(3), -1)?.element;
    let lhs = &(&GroupRingElement::basis(&g, 1) - &GroupRingElement::scalar(&g, int(4))) * &theta;
    let rhs = GroupRingElement::from_coeffs(&g, vec![rat(-1, 4), rat(-1, 4)])?;
    out.push(compare("(s2 - 4) theta(-1) = -(s1 + s2)/4 at m = 3".into(), &lhs, &rhs));
    Ok(out)
}

fn transposition_data(g: &FiniteGroup, count: usize) -> Result<Vec<AnnihilatorDatum>> {
    let lattice = crate::brauer::subgroup_lattice(g)?;
    lattice
        .into_iter()
        .filter(|s| s.order() == 2)
        .take(count)
        .map(|rec| {
            let ab = rec.abelianization.clone();
            let t = (0..ab.order()).find(|&a| a != ab.identity()).expect("order 2");
            let alpha = &GroupRingElement::one(&ab) - &GroupRingElement::basis(&ab, t);
            AnnihilatorDatum::new(rec, alpha, GroupRingElement::one(&ab), 3)
        })
        .collect()
}

fn stickelberger_data(m: u64, ell: u64, r: i64) -> Result<Vec<AnnihilatorDatum>> {
    let g = UnitGroup::get(m).group().clone();
    let rec = SubgroupRecord::new(&g, &(0..g.order()).collect::<Vec<_>>())?;
    let to_ab = |x: &QGroupRing| x.push_forward(&rec.abelianization, &rec.projection);
    let theta = to_ab(&stickelberger(m, &places(ell), r)?.element);
    torsion_annihilator(m, ell, r)?
        .generators
        .iter()
        .map(|b| AnnihilatorDatum::new(rec.clone(), theta.clone(), to_ab(b), ell))
        .collect()
}

/// Two-sidedness on covariant S₃ data (with a one-subgroup control) and quotient containment.
pub fn noncommutative_ideal() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let s3 = Arc::new(FiniteGroup::symmetric3());
    let covariant = transposition_data(&s3, 3)?;
    out.push(two_sided_check(&nc_ideal(&s3, &covariant)?)?);
    let single = transposition_data(&s3, 1)?;
    out.push(two_sided_check(&nc_ideal(&s3, &single)?)?.negative_control());

    let a3 = s3.closure(&[(0..6).find(|&x| s3.element_order(x) == 3).expect("3-cycle")]);
    let tower = Tower::from_normal(s3.clone(), &a3)?;
    let lower: Vec<AnnihilatorDatum> = covariant.iter().map(|d| push_datum(&tower, d)).collect::<Result<_>>()?;
    out.push(quotient_check(&tower, &covariant, &lower)?);
    let incompatible: Vec<AnnihilatorDatum> = lower
        .iter()
        .map(|d| AnnihilatorDatum::new(d.subgroup.clone(), d.alpha.scale(&int(5)), d.beta.clone(), d.ell))
        .collect::<Result<_>>()?;
    out.push(quotient_check(&tower, &covariant, &incompatible)?.negative_control());

    let tower = Tower::cyclotomic(9, 3)?;
    let upper = stickelberger_data(9, 3, -1)?;
    let lower = stickelberger_data(3, 3, -1)?;
    let mut c = quotient_check(&tower, &upper, &lower)?;
    c.name = format!("{} with Stickelberger data at r = -1", c.name);
    out.push(c);
    Ok(out)
}

/// Dual-route partial zeta values, ζ(−1), B_{1,χ₋₃} and θ at m = 7.
pub fn oracle_cross_checks() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut failure = None;
    'outer: for m in 1..=30u64 {
        let s = PlaceSet::for_modulus(m);
        for r in [0, -1, -2, -3] {
            for &a in UnitGroup::get(m).residues() {
                let direct = partial_zeta(r, a as i64, m, &s)?;
                let dual = partial_zeta_by_characters(r, a as i64, m, &s)?;
                if direct != dual {
                    failure = Some(format!("m = {m}, r = {r}, a = {a}: {direct} vs {dual}"));
                    break 'outer;
                }
            }
        }
    }
    out.push(CheckResult::from_witness("partial zeta routes agree for m <= 30, r in {0,-1,-2,-3}", failure));
    let zeta = partial_zeta(-1, 1, 1, &PlaceSet::infinite())?;
    out.push(compare("zeta(-1) = -1/12".into(), &zeta, &rat(-1, 12)));
    let b2 = bernoulli_number(2);
    out.push(compare("B_2 = 1/6".into(), &b2, &rat(1, 6)));
    let chi = characters_mod(3).into_iter().find(|c| !c.is_trivial()).ok_or(Error::Precondition("mod 3".into()))?;
    let b1 = generalized_bernoulli(1, &chi)?;
    out.push(compare("B_{1,chi_-3} = -1/3".into(), &b1, &crate::Cyclotomic::from_rational(rat(-1, 3))));
    let s7 = places(7);
    let theta = stickelberger(7, &s7, 0)?.element;
    let dual = stickelberger_by_characters(7, &s7, 0)?;
    out.push(compare("theta at m = 7 by partial zeta and by characters".into(), &theta, &dual));
    Ok(out)
}

/// y_rank on ℚ(ζ₅), ℚ(ζ₇), ℚ(ζ₇)⁺.
pub fn rank_formula() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for r in [0, -1, -2, -3] {
        for (name, sig) in [
            ("Q(zeta_5)", EmbeddingSignature::cyclotomic(5, r)?),
            ("Q(zeta_7)", EmbeddingSignature::cyclotomic(7, r)?),
            ("Q(zeta_7)+", EmbeddingSignature::real_cyclotomic(7, r)?),
        ] {
            let expected = if r % 2 != 0 { sig.r2 } else { sig.r1 + sig.r2 };
            out.push(compare(format!("rank of Y_{r}^+ for {name}"), &y_rank(&sig), &expected));
        }
    }
    Ok(out)
}

/// Full, real and imaginary-quadratic ideals and their consistency checks.
pub fn cyclotomic_families() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for ell in [3, 5, 7] {
        for n in [0, 1] {
            let level = CyclotomicLevel::new(ell, n)?;
            let tower = level.plus_tower();
            let u = UnitQuotientFixture::unit(tower.quotient_ambient());
            let full = ideal_j_full(&level, 0, &u)?;
            let real = ideal_j_real(&u);
            out.push(check_quotient(&tower, &full.ideal, &real)?);
            let e_minus = crate::stickelberger::minus_idempotent(level.modulus, 0);
            out.push(compare(
                format!("minus part of J is generated by theta at m = {}", level.modulus),
                &full.ideal.scale_by(&e_minus)?,
                &full.minus,
            ));
            let integral = FractionalIdeal::unit(Ambient::of_group(level.group()));
            out.push(CheckResult::from_witness(
                format!("plus part of J is integral at m = {}", level.modulus),
                full.plus.witness_not_in(&integral)?.map(|v| format!("{v:?}")),
            ));
            if n == 1 {
                let lower = CyclotomicLevel::new(ell, 0)?;
                let lu = UnitQuotientFixture::unit(lower.plus_tower().quotient_ambient());
                let lower_full = ideal_j_full(&lower, 0, &lu)?;
                out.push(check_quotient(&Tower::cyclotomic(level.modulus, ell)?, &full.ideal, &lower_full.ideal)?);
            }
            if n == 0 {
                let corrupted = UnitQuotientFixture {
                    ideal: u.ideal.scale_rational(&int(3)),
                    note: "unit ideal scaled by 3".into(),
                };
                out.push(check_quotient(&tower, &full.ideal, &ideal_j_real(&corrupted))?.negative_control());
            }
        }
    }
    for ell in [7, 11] {
        let tower = CyclotomicLevel::new(ell, 0)?.plus_tower();
        let j = ideal_j_imagquad(ell, 0, &UnitQuotientFixture::unit(tower.quotient_ambient()))?;
        out.push(check_imagquad_base_change(&j)?);
        let mu = 2 * ell as i64;
        let mu_theta = j.half.element.scale(&int(mu));
        out.push(CheckResult::from_witness(
            format!("mu half theta lies in J over H at ell = {ell}"),
            (!j.ideal.contains(&mu_theta)?).then(|| mu_theta.to_string()),
        ));
    }
    Ok(out)
}

fn tagged(tag: &str, results: Result<Vec<CheckResult>>) -> Result<Vec<CheckResult>> {
    results.map(|v| {
        v.into_iter()
            .map(|mut c| {
                c.name = format!("[{tag}] {}", c.name);
                c
            })
            .collect()
    })
}

pub fn run_suite(name: &str) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let all = name == "all";
    if all || name == "functoriality" {
        out.extend(tagged("functoriality", quotient_functoriality())?);
        out.extend(tagged("functoriality", induced_determinants(100, 7))?);
        out.extend(tagged("functoriality", fixed_point_and_corestriction(11))?);
        out.extend(tagged("functoriality", tower_identities())?);
    }
    if all || name == "stickelberger" {
        out.extend(tagged("stickelberger", half_stickelberger_identity())?);
        out.extend(tagged("stickelberger", rho_psi_l_values())?);
        out.extend(tagged("stickelberger", base_change_inverse())?);
    }
    if all || name == "oracles" {
        out.extend(tagged("oracles", oracle_cross_checks())?);
    }
    if all || name == "brauer" {
        out.extend(tagged("brauer", brauer_layer())?);
        out.extend(tagged("brauer", abelian_reduction())?);
    }
    if all || name == "annihilator" {
        out.extend(tagged("annihilator", noncommutative_ideal())?);
    }
    if all || name == "cyclotomic" {
        out.extend(tagged("cyclotomic", torsion_integrality())?);
        out.extend(tagged("cyclotomic", cyclotomic_families())?);
    }
    if all || name == "rank" {
        out.extend(tagged("rank", rank_formula())?);
    }
    if !SUITES.contains(&name) {
        return Err(Error::Parse(format!("unknown suite '{name}'; expected one of {}", SUITES.join(", "))));
    }
    Ok(out)
}
