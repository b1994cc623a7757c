//! Independent cross-checks through twisted Koszul complexes: the
//! conjugation identity for the exponential twists, square-zero of the
//! differentials, chain-level products recomputed from representatives,
//! and sector dimensions recovered by exact rank counting on weight
//! slices.

use crate::clifford::{
    exp_t_times, mask_of, upsilon_apply, upsilon_dagger_apply, CliffordElement, Mask, MaskPoly,
    TClifford,
};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::orbifold::{untwisted_h, TwistedAlgebra};
use crate::poly::{Block, Monomial, MultiPoly};
use crate::scalar::{CycScalar, Rat};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

/// All differentials and twist kernels of one sector, at the chain level.
pub struct SectorKoszul {
    pub kos: CliffordElement,
    pub curv_prime: CliffordElement,
    pub curv_dprime: CliffordElement,
    pub b_kos: CliffordElement,
    pub b_curv_prime: CliffordElement,
    pub b_curv_dprime: CliffordElement,
    pub h: CliffordElement,
    pub h_dagger: CliffordElement,
}

/// The homology-side twist kernel, with the reversed inner substitution.
pub fn twisted_h_dagger(w: &MultiPoly, g: &GroupElement) -> Result<MaskPoly> {
    let n = w.nvars();
    let field = w.field().clone();
    let scales = g.scales(&field);
    let proj = g.fixed_projection_scales(&field);
    let ones = vec![CycScalar::one(&field); n];
    let moving = g.moving_indices();
    let mut out = MaskPoly::zero(n, &field);
    for &i in &moving {
        let inner = w
            .nabla(i, Block::X, Block::Y)
            .substitute_scaled(Block::X, Block::X, &scales)
            .substitute_scaled(Block::Y, Block::X, &ones);
        for &j in moving.iter().filter(|&&j| j < i) {
            let outer = inner
                .nabla(j, Block::X, Block::Y)
                .substitute_scaled(Block::Y, Block::X, &proj);
            let denom = CycScalar::one(&field).checked_sub(&scales[j])?;
            out.insert(mask_of(&[j, i]), outer.scale(&denom.inverse()?));
        }
    }
    Ok(out)
}

pub fn sector_koszul(w: &MultiPoly, g: &GroupElement) -> Result<SectorKoszul> {
    let n = w.nvars();
    let field = w.field().clone();
    let scales = g.scales(&field);
    let ones = vec![CycScalar::one(&field); n];
    let mut kos = CliffordElement::zero(n, &field);
    let mut curv_prime = CliffordElement::zero(n, &field);
    let mut curv_dprime = CliffordElement::zero(n, &field);
    let mut b_kos = CliffordElement::zero(n, &field);
    let mut b_curv_prime = CliffordElement::zero(n, &field);
    let mut b_curv_dprime = CliffordElement::zero(n, &field);
    for i in 0..n {
        let moving = g.exps()[i] != 0;
        if moving {
            let coeff = CycScalar::one(&field).checked_sub(&scales[i])?;
            let xi = MultiPoly::var(n, &field, Block::X, i).scale(&coeff);
            kos = kos.add(&CliffordElement::from_poly(0, 1 << i, xi.clone()));
            b_kos = b_kos.add(&CliffordElement::from_poly(0, 1 << i, xi.neg()));
        }
        // forward slices substituted at y = g(x), reversed at x = g(x)
        let fwd = w
            .nabla(i, Block::X, Block::Y)
            .substitute_scaled(Block::Y, Block::X, &scales);
        let rev = w
            .nabla(i, Block::X, Block::Y)
            .substitute_scaled(Block::X, Block::X, &scales)
            .substitute_scaled(Block::Y, Block::X, &ones);
        let fwd_term = CliffordElement::from_poly(1 << i, 0, fwd.neg());
        let rev_term = CliffordElement::from_poly(1 << i, 0, rev);
        if moving {
            curv_prime = curv_prime.add(&fwd_term);
            b_curv_prime = b_curv_prime.add(&rev_term);
        } else {
            curv_dprime = curv_dprime.add(&fwd_term);
            b_curv_dprime = b_curv_dprime.add(&rev_term);
        }
    }
    let h = mask_to_clifford(&crate::orbifold::twisted_h(w, g)?);
    let h_dagger = mask_to_clifford(&twisted_h_dagger(w, g)?);
    Ok(SectorKoszul {
        kos,
        curv_prime,
        curv_dprime,
        b_kos,
        b_curv_prime,
        b_curv_dprime,
        h,
        h_dagger,
    })
}

fn mask_to_clifford(m: &MaskPoly) -> CliffordElement {
    let mut out = CliffordElement::zero(m.nvars(), m.field());
    for (mask, p) in m.terms() {
        out = out.add(&CliffordElement::from_poly(*mask, 0, p.clone()));
    }
    out
}

fn tclifford_eq(a: &TClifford, b: &TClifford, max_deg: u32) -> bool {
    (0..=max_deg).all(|d| a.coeff(d).sub(&b.coeff(d)).is_zero())
}

/// Checks the exponential conjugation identity on both the cohomology and
/// the homology side of the sector, with the formal parameter kept symbolic.
pub fn verify_conjugation(w: &MultiPoly, g: &GroupElement) -> Result<(bool, bool)> {
    let sk = sector_koszul(w, g)?;
    let max_deg = 2 * w.nvars() as u32 + 2;
    let coh = {
        let start = TClifford::from_parts([(0, sk.kos.clone()), (1, sk.curv_dprime.clone())]);
        let target = TClifford::from_parts([
            (0, sk.kos.clone()),
            (1, sk.curv_prime.add(&sk.curv_dprime)),
        ]);
        let lhs = exp_t_times(&sk.h)
            .mul(&start)
            .mul(&exp_t_times(&sk.h.neg()));
        tclifford_eq(&lhs, &target, max_deg)
    };
    let hom = {
        let start = TClifford::from_parts([(0, sk.b_kos.clone()), (1, sk.b_curv_dprime.clone())]);
        let target = TClifford::from_parts([
            (0, sk.b_kos.clone()),
            (1, sk.b_curv_prime.add(&sk.b_curv_dprime)),
        ]);
        let lhs = exp_t_times(&sk.h_dagger)
            .mul(&start)
            .mul(&exp_t_times(&sk.h_dagger.neg()));
        tclifford_eq(&lhs, &target, max_deg)
    };
    Ok((coh, hom))
}

/// Checks that both full differentials square to zero with the formal
/// parameter kept symbolic.
pub fn verify_square_zero(w: &MultiPoly, g: &GroupElement) -> Result<(bool, bool)> {
    let sk = sector_koszul(w, g)?;
    let d = TClifford::from_parts([
        (0, sk.kos.clone()),
        (1, sk.curv_prime.add(&sk.curv_dprime)),
    ]);
    let b = TClifford::from_parts([
        (0, sk.b_kos.clone()),
        (1, sk.b_curv_prime.add(&sk.b_curv_dprime)),
    ]);
    Ok((d.mul(&d).is_zero(), b.mul(&b).is_zero()))
}

fn exp_act_dtheta(h2: &CliffordElement, q: &MaskPoly) -> MaskPoly {
    let mut acc = q.clone();
    let mut term = q.clone();
    let mut k: u64 = 1;
    loop {
        term = h2
            .act_dtheta(&term)
            .map_coeffs(|p| p.scale_rat(Rat::new(1.into(), (k as i64).into())));
        if term.is_zero() {
            return acc;
        }
        acc = acc.add(&term);
        k += 1;
    }
}

fn exp_act_theta(h2: &CliffordElement, q: &MaskPoly) -> MaskPoly {
    let mut acc = q.clone();
    let mut term = q.clone();
    let mut k: u64 = 1;
    loop {
        term = h2
            .act_theta(&term)
            .map_coeffs(|p| p.scale_rat(Rat::new(1.into(), (k as i64).into())));
        if term.is_zero() {
            return acc;
        }
        acc = acc.add(&term);
        k += 1;
    }
}

fn moving_mask(g: &GroupElement) -> Mask {
    mask_of(&g.moving_indices())
}

fn fixed_mask(g: &GroupElement) -> Mask {
    mask_of(&g.fixed_indices())
}

/// Sum of the one-based positions in a mask.
fn index_norm(m: Mask) -> usize {
    crate::clifford::bits_ascending(m).map(|i| i + 1).sum()
}

/// Recomputes a structure constant from exponentially twisted chain
/// representatives: the product of the two twisted sector words is formed
/// at the chain level, untwisted in the target sector, and the top
/// coefficient is reduced. No intermediate reduction takes place, so this
/// exercises a different code path than the table construction.
pub fn chain_cup_sigma(alg: &TwistedAlgebra, gi: usize, hi: usize) -> Result<MultiPoly> {
    let w = alg.potential();
    let n = alg.nvars();
    let field = alg.field();
    let g = &alg.group()[gi];
    let h = &alg.group()[hi];
    let gh = g.mul(h);
    let ghi = alg
        .sector_index(&gh)
        .ok_or(Error::Computation("product sector missing".into()))?;
    let skg = sector_koszul(w, g)?;
    let skh = sector_koszul(w, h)?;
    let skgh = sector_koszul(w, &gh)?;
    let g_scales = g.scales(field);
    let gh_scales = gh.scales(field);
    let q1 = exp_act_dtheta(&skg.h, &MaskPoly::word(n, field, moving_mask(g)));
    // the second factor enters the product with its coefficients moved to g(x)
    let q2 = exp_act_dtheta(&skh.h, &MaskPoly::word(n, field, moving_mask(h)))
        .map_coeffs(|p| p.substitute_scaled(Block::X, Block::X, &g_scales));
    let hw = untwisted_h(w).map_coeffs(|p| {
        p.substitute_scaled(Block::Y, Block::X, &g_scales)
            .substitute_scaled(Block::Z, Block::X, &gh_scales)
    });
    let e_hw = hw.exp_with(&|p: &MultiPoly| p.clone());
    let u = upsilon_apply(&e_hw, &q1, &q2);
    let v = exp_act_dtheta(&skgh.h.neg(), &u);
    Ok(alg.milnor(ghi).class_of(&v.coeff(moving_mask(&gh))))
}

/// The cap-side analogue: the homology representative of the first sector
/// is paired against the cohomology representative of the second, and the
/// result is normalized by the representative sign so it must equal the
/// same structure constant.
pub fn chain_cap_sigma(alg: &TwistedAlgebra, gi: usize, hi: usize) -> Result<MultiPoly> {
    let w = alg.potential();
    let n = alg.nvars();
    let field = alg.field();
    let g = &alg.group()[gi];
    let h = &alg.group()[hi];
    let gh = g.mul(h);
    let ghi = alg
        .sector_index(&gh)
        .ok_or(Error::Computation("product sector missing".into()))?;
    let skg = sector_koszul(w, g)?;
    let skh = sector_koszul(w, h)?;
    let skgh = sector_koszul(w, &gh)?;
    let g_scales = g.scales(field);
    let gh_scales = gh.scales(field);
    let ones = vec![CycScalar::one(field); n];
    let p = exp_act_theta(&skg.h_dagger, &MaskPoly::word(n, field, fixed_mask(g)));
    let q = exp_act_dtheta(&skh.h, &MaskPoly::word(n, field, moving_mask(h)))
        .map_coeffs(|c| c.substitute_scaled(Block::X, Block::X, &g_scales));
    let hw = untwisted_h(w).map_coeffs(|c| {
        c.substitute_scaled(Block::X, Block::X, &g_scales)
            .substitute_scaled(Block::Y, Block::X, &gh_scales)
            .substitute_scaled(Block::Z, Block::X, &ones)
    });
    let e_hw = hw.exp_with(&|c: &MultiPoly| c.clone());
    let u = upsilon_dagger_apply(&e_hw, &p, &q);
    let v = exp_act_theta(&skgh.h_dagger.neg(), &u);
    let tilde = alg.milnor(ghi).class_of(&v.coeff(fixed_mask(&gh)));
    let sign = n * (g.d_g() + gh.d_g()) + index_norm(moving_mask(g)) + index_norm(moving_mask(&gh));
    Ok(if sign % 2 == 1 { tilde.neg() } else { tilde })
}

/// Positive weights making every monomial of W have weight one, when they
/// exist and are unique.
pub fn quasi_weights(w: &MultiPoly) -> Option<Vec<Rat>> {
    let n = w.nvars();
    let mut rows: Vec<Vec<Rat>> = w
        .terms()
        .map(|(m, _)| {
            let mut row: Vec<Rat> = (0..n)
                .map(|i| Rat::from_integer((m.exp(Block::X, i) as i64).into()))
                .collect();
            row.push(Rat::one());
            row
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].clone().recip();
        for c in col..=n {
            rows[rank][c] = &rows[rank][c] * &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..=n {
                    let d = &factor * &rows[rank][c];
                    rows[r][c] = &rows[r][c] - &d;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    // inconsistent or underdetermined systems give no usable weights
    for r in rank..rows.len() {
        if !rows[r][n].is_zero() {
            return None;
        }
    }
    if rank < n {
        return None;
    }
    let mut weights = vec![Rat::zero(); n];
    for (k, &col) in pivots.iter().enumerate() {
        weights[col] = rows[k][n].clone();
    }
    if weights.iter().any(|q| !q.is_positive()) {
        return None;
    }
    Some(weights)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorDims {
    pub even: usize,
    pub odd: usize,
    /// True when the scan window extended past the socle bound and every
    /// extra slice carried no cohomology.
    pub certified: bool,
}

/// Recovers the dimension and parity of a sector's cohomology by exact
/// rank computations on the weight slices of the full twisted complex.
/// Returns None when the potential is not quasi-homogeneous.
pub fn sector_dimension_oracle(
    w: &MultiPoly,
    g: &GroupElement,
) -> Result<Option<SectorDims>> {
    let Some(weights) = quasi_weights(w) else {
        return Ok(None);
    };
    let n = w.nvars();
    let field = w.field().clone();
    let mut scale: i64 = 2;
    for q in &weights {
        let d = q.denom().try_into().map_err(|_| {
            Error::Computation("weight denominators exceed the supported range".into())
        })?;
        scale = num::integer::lcm(scale, d);
    }
    let l = scale;
    let half = l / 2;
    let wi: Vec<i64> = weights
        .iter()
        .map(|q| (q * Rat::from_integer(l.into())).to_integer().try_into().unwrap())
        .collect();
    let sk = sector_koszul(w, g)?;
    let d_full = sk.kos.add(&sk.curv_prime).add(&sk.curv_dprime);
    let v_min: i64 = (0..n).map(|i| (half - wi[i]).min(0)).sum();
    let socle: i64 = g.fixed_indices().iter().map(|&i| l - 2 * wi[i]).sum::<i64>()
        + g.moving_indices().iter().map(|&i| half - wi[i]).sum::<i64>();
    let v_max = socle.max(v_min) + l;
    let mut bases: BTreeMap<i64, Vec<(Monomial, Mask)>> = BTreeMap::new();
    let basis = |v: i64, bases: &mut BTreeMap<i64, Vec<(Monomial, Mask)>>| {
        bases
            .entry(v)
            .or_insert_with(|| enumerate_slice(n, &wi, half, v))
            .clone()
    };
    // ranks of the even->odd and odd->even components out of slice v
    let mut ranks: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
    let rank_at = |v: i64,
                       bases: &mut BTreeMap<i64, Vec<(Monomial, Mask)>>,
                       ranks: &mut BTreeMap<i64, (usize, usize)>|
     -> Result<(usize, usize)> {
        if let Some(r) = ranks.get(&v) {
            return Ok(*r);
        }
        let src = bases
            .entry(v)
            .or_insert_with(|| enumerate_slice(n, &wi, half, v))
            .clone();
        let dst = bases
            .entry(v + half)
            .or_insert_with(|| enumerate_slice(n, &wi, half, v + half))
            .clone();
        let index: BTreeMap<(Monomial, Mask), usize> = dst
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, e)| (e, k))
            .collect();
        let mut even_rows: Vec<Vec<CycScalar>> = Vec::new();
        let mut odd_rows: Vec<Vec<CycScalar>> = Vec::new();
        for (m, mask) in &src {
            let one_term = MultiPoly::from_terms(n, &field, [(m.clone(), CycScalar::one(&field))]);
            let image = d_full.act_dtheta(&MaskPoly::from_poly(*mask, one_term));
            let mut row = vec![CycScalar::zero(&field); dst.len()];
            for (im, ip) in image.terms() {
                for (mm, c) in ip.terms() {
                    let Some(&k) = index.get(&(mm.clone(), *im)) else {
                        return Err(Error::Computation(
                            "dimension oracle: differential is not weight homogeneous".into(),
                        ));
                    };
                    row[k] = &row[k] + c;
                }
            }
            if mask.count_ones() % 2 == 0 {
                even_rows.push(row);
            } else {
                odd_rows.push(row);
            }
        }
        let r = (rank_of(even_rows), rank_of(odd_rows));
        ranks.insert(v, r);
        Ok(r)
    };
    let mut even = 0usize;
    let mut odd = 0usize;
    let mut certified = true;
    for v in v_min..=v_max {
        let slice = basis(v, &mut bases);
        if slice.is_empty() {
            continue;
        }
        let e_dim = slice.iter().filter(|(_, k)| k.count_ones() % 2 == 0).count();
        let o_dim = slice.len() - e_dim;
        let (out_e, out_o) = rank_at(v, &mut bases, &mut ranks)?;
        let (in_e, in_o) = rank_at(v - half, &mut bases, &mut ranks)?;
        // maps into the even part of slice v come from the odd part below
        let h_even = e_dim - out_e - in_o;
        let h_odd = o_dim - out_o - in_e;
        even += h_even;
        odd += h_odd;
        if v > socle && (h_even > 0 || h_odd > 0) {
            certified = false;
        }
    }
    Ok(Some(SectorDims {
        even,
        odd,
        certified,
    }))
}

fn enumerate_slice(n: usize, wi: &[i64], half: i64, v: i64) -> Vec<(Monomial, Mask)> {
    let mut out = Vec::new();
    for mask in 0..(1u32 << n) as Mask {
        let k_weight: i64 = crate::clifford::bits_ascending(mask)
            .map(|i| half - wi[i])
            .sum();
        let r = v - k_weight;
        if r < 0 {
            continue;
        }
        let mut exps = vec![0u16; n];
        fill_exponents(n, wi, 0, r, &mut exps, mask, &mut out);
    }
    out
}

fn fill_exponents(
    n: usize,
    wi: &[i64],
    i: usize,
    remaining: i64,
    exps: &mut [u16],
    mask: Mask,
    out: &mut Vec<(Monomial, Mask)>,
) {
    if i == n {
        if remaining == 0 {
            let mut m = Monomial::one(n);
            for (j, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    m = m.mul(&Monomial::var(n, Block::X, j));
                }
            }
            out.push((m, mask));
        }
        return;
    }
    let max = remaining / wi[i];
    for e in 0..=max {
        exps[i] = e as u16;
        fill_exponents(n, wi, i + 1, remaining - e * wi[i], exps, mask, out);
    }
    exps[i] = 0;
}

fn rank_of(mut rows: Vec<Vec<CycScalar>>) -> usize {
    let mut rank = 0;
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inverse().unwrap();
        for c in col..ncols {
            rows[rank][c] = &rows[rank][c] * &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..ncols {
                    let d = &f * &rows[rank][c];
                    rows[r][c] = &rows[r][c] - &d;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::generate_group;
    use crate::milnor::LocalMode;
    use crate::parse::parse_poly;
    use crate::scalar::CycField;

    fn cubic() -> TwistedAlgebra {
        let field = CycField::new(3);
        let w = parse_poly("x1^3", 1, &field).unwrap();
        let group = generate_group(&[GroupElement::new(vec![1], 3)], 1, 3, &w).unwrap();
        TwistedAlgebra::build(w, group, LocalMode::Auto, 32).unwrap()
    }

    fn chain34() -> TwistedAlgebra {
        let field = CycField::new(12);
        let w = parse_poly("x1^3*x2 + x2^4", 2, &field).unwrap();
        let group = generate_group(&[GroupElement::new(vec![1, 9], 12)], 2, 12, &w).unwrap();
        TwistedAlgebra::build(w, group, LocalMode::Auto, 32).unwrap()
    }

    #[test]
    fn conjugation_identity_holds_for_the_cubic() {
        let alg = cubic();
        for g in alg.group() {
            let (coh, hom) = verify_conjugation(alg.potential(), g).unwrap();
            assert!(coh && hom, "sector ({})", g.exps_string());
            let (d2, b2) = verify_square_zero(alg.potential(), g).unwrap();
            assert!(d2 && b2, "sector ({})", g.exps_string());
        }
    }

    #[test]
    fn conjugation_identity_holds_for_the_chain() {
        let alg = chain34();
        for g in alg.group() {
            let (coh, hom) = verify_conjugation(alg.potential(), g).unwrap();
            assert!(coh && hom, "sector ({})", g.exps_string());
            let (d2, b2) = verify_square_zero(alg.potential(), g).unwrap();
            assert!(d2 && b2, "sector ({})", g.exps_string());
        }
    }

    #[test]
    fn cup_oracle_matches_the_table_on_the_cubic() {
        let alg = cubic();
        for gi in 0..alg.order() {
            for hi in 0..alg.order() {
                let oracle = chain_cup_sigma(&alg, gi, hi).unwrap();
                assert_eq!(&oracle, &alg.sigma(gi, hi).value, "pair ({gi},{hi})");
            }
        }
    }

    #[test]
    fn cap_oracle_matches_the_table_on_the_cubic() {
        let alg = cubic();
        for gi in 0..alg.order() {
            for hi in 0..alg.order() {
                let oracle = chain_cap_sigma(&alg, gi, hi).unwrap();
                assert_eq!(&oracle, &alg.sigma(gi, hi).value, "pair ({gi},{hi})");
            }
        }
    }

    #[test]
    fn cup_and_cap_oracles_match_the_table_on_the_chain() {
        let alg = chain34();
        for gi in 0..alg.order() {
            for hi in 0..alg.order() {
                let cup = chain_cup_sigma(&alg, gi, hi).unwrap();
                assert_eq!(&cup, &alg.sigma(gi, hi).value, "cup pair ({gi},{hi})");
                let cap = chain_cap_sigma(&alg, gi, hi).unwrap();
                assert_eq!(&cap, &alg.sigma(gi, hi).value, "cap pair ({gi},{hi})");
            }
        }
    }

    #[test]
    fn weights_of_standard_models() {
        let field = CycField::new(12);
        let w = parse_poly("x1^3*x2 + x2^4", 2, &field).unwrap();
        let quarter = Rat::new(1.into(), 4.into());
        assert_eq!(quasi_weights(&w), Some(vec![quarter.clone(), quarter]));
        let w = parse_poly("x1^3", 1, &field).unwrap();
        assert_eq!(quasi_weights(&w), Some(vec![Rat::new(1.into(), 3.into())]));
        let field5 = CycField::new(5);
        let w = parse_poly("x1^5 + x2^5 + x3^5 - x1*x2*x3", 3, &field5).unwrap();
        assert_eq!(quasi_weights(&w), None);
    }

    #[test]
    fn dimension_oracle_on_the_cubic() {
        let alg = cubic();
        let e = alg.identity_index();
        let dims = sector_dimension_oracle(alg.potential(), &alg.group()[e])
            .unwrap()
            .unwrap();
        assert_eq!(
            dims,
            SectorDims {
                even: 2,
                odd: 0,
                certified: true
            }
        );
        let g1 = alg.sector_index(&GroupElement::new(vec![1], 3)).unwrap();
        let dims = sector_dimension_oracle(alg.potential(), &alg.group()[g1])
            .unwrap()
            .unwrap();
        assert_eq!(
            dims,
            SectorDims {
                even: 0,
                odd: 1,
                certified: true
            }
        );
    }

    #[test]
    fn dimension_oracle_on_the_chain() {
        let alg = chain34();
        for s in 0..alg.order() {
            let g = &alg.group()[s];
            let dims = sector_dimension_oracle(alg.potential(), g).unwrap().unwrap();
            let expect = alg.milnor(s).dim();
            let (got_match, got_other) = if g.d_g().is_multiple_of(2) {
                (dims.even, dims.odd)
            } else {
                (dims.odd, dims.even)
            };
            assert!(dims.certified, "sector ({})", g.exps_string());
            assert_eq!(got_match, expect, "sector ({})", g.exps_string());
            assert_eq!(got_other, 0, "sector ({})", g.exps_string());
        }
    }
}
