//! The twisted sector algebra of a potential with a finite diagonal
//! symmetry group: one Milnor algebra per sector, structure constants
//! coupling the sectors, the induced products, and the group action.

use crate::clifford::{mask_of, upsilon_apply, BiTheta, Mask, MaskPoly};
use crate::error::{Error, Result};
use crate::group::{pair_defect, GroupElement};
use crate::milnor::{LocalMode, MilnorAlgebra};
use crate::poly::{Block, Monomial, MultiPoly};
use crate::scalar::{CycField, CycScalar};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Debug)]
pub struct SigmaEntry {
    /// Half the signed dimension drop; None when it is not a non-negative
    /// integer, which forces the product to vanish.
    pub defect: Option<u64>,
    pub value: MultiPoly,
}

impl SigmaEntry {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedElement {
    algebra_id: u64,
    omega: bool,
    parts: BTreeMap<(usize, i32), MultiPoly>,
}

impl TwistedElement {
    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_omega(&self) -> bool {
        self.omega
    }

    pub fn parts(&self) -> impl Iterator<Item = (&(usize, i32), &MultiPoly)> {
        self.parts.iter()
    }

    pub fn part(&self, sector: usize, t: i32) -> Option<&MultiPoly> {
        self.parts.get(&(sector, t))
    }

    fn insert(&mut self, key: (usize, i32), p: MultiPoly) {
        if p.is_zero() {
            return;
        }
        match self.parts.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&p);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.algebra_id != other.algebra_id || self.omega != other.omega {
            return Err(Error::MixedAlgebras);
        }
        let mut out = self.clone();
        for (k, p) in &other.parts {
            out.insert(*k, p.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for p in out.parts.values_mut() {
            *p = p.neg();
        }
        out
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        let mut out = TwistedElement {
            algebra_id: self.algebra_id,
            omega: self.omega,
            parts: BTreeMap::new(),
        };
        for (k, p) in &self.parts {
            out.insert(*k, p.scale(s));
        }
        out
    }

    pub fn shift_t(&self, by: i32) -> Self {
        let mut out = TwistedElement {
            algebra_id: self.algebra_id,
            omega: self.omega,
            parts: BTreeMap::new(),
        };
        for ((s, t), p) in &self.parts {
            out.insert((*s, t + by), p.clone());
        }
        out
    }
}

pub struct TwistedAlgebra {
    id: u64,
    nvars: usize,
    field: Arc<CycField>,
    w: MultiPoly,
    group: Vec<GroupElement>,
    index: BTreeMap<Vec<u64>, usize>,
    milnor: Vec<MilnorAlgebra>,
    h_w: BiTheta,
    h_wg: Vec<MaskPoly>,
    sigma: Vec<Vec<SigmaEntry>>,
}

/// The two-slot exponent kernel of the potential over three blocks of
/// variables; slot masks are singleton pairs (i, j) with j <= i.
pub fn untwisted_h(w: &MultiPoly) -> BiTheta {
    let n = w.nvars();
    let mut out = BiTheta::zero(n, w.field());
    for i in 0..n {
        let di = w.nabla(i, Block::X, Block::Y);
        for j in 0..=i {
            let dj = di.nabla(j, Block::Y, Block::Z);
            out.insert(((1 << i) as Mask, (1 << j) as Mask), dj);
        }
    }
    out
}

/// The one-slot kernel of a twisted sector, a two-form in the moving
/// directions.
pub fn twisted_h(w: &MultiPoly, g: &GroupElement) -> Result<MaskPoly> {
    let n = w.nvars();
    let field = w.field().clone();
    let scales = g.scales(&field);
    let proj = g.fixed_projection_scales(&field);
    let moving = g.moving_indices();
    let mut out = MaskPoly::zero(n, &field);
    for &i in &moving {
        let inner = w
            .nabla(i, Block::X, Block::Y)
            .substitute_scaled(Block::Y, Block::X, &scales);
        for &j in moving.iter().filter(|&&j| j < i) {
            let outer = inner
                .nabla(j, Block::X, Block::Y)
                .substitute_scaled(Block::Y, Block::X, &proj);
            let denom = CycScalar::one(&field).checked_sub(&scales[j])?;
            let coeff = denom.inverse()?;
            out.insert(mask_of(&[j, i]), outer.scale(&coeff));
        }
    }
    Ok(out)
}

impl TwistedAlgebra {
    pub fn build(
        w: MultiPoly,
        group: Vec<GroupElement>,
        mode: LocalMode,
        d_max: u32,
    ) -> Result<Self> {
        let nvars = w.nvars();
        if nvars > 28 {
            return Err(Error::Validation(format!(
                "{nvars} variables exceed the supported limit of 28"
            )));
        }
        let field = w.field().clone();
        let mut index = BTreeMap::new();
        for (k, g) in group.iter().enumerate() {
            index.insert(g.exps().to_vec(), k);
        }
        if !index.contains_key(&vec![0u64; nvars]) {
            return Err(Error::Validation("group does not contain the identity".into()));
        }
        let milnor: Vec<MilnorAlgebra> = group
            .par_iter()
            .map(|g| MilnorAlgebra::new(&w, g, mode, d_max))
            .collect::<Result<_>>()?;
        let h_w = untwisted_h(&w);
        let h_wg: Vec<MaskPoly> = group
            .par_iter()
            .map(|g| twisted_h(&w, g))
            .collect::<Result<_>>()?;
        let mut algebra = TwistedAlgebra {
            id: NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed),
            nvars,
            field,
            w,
            group,
            index,
            milnor,
            h_w,
            h_wg,
            sigma: Vec::new(),
        };
        let order = algebra.group.len();
        let pairs: Vec<(usize, usize)> = (0..order)
            .flat_map(|i| (0..order).map(move |j| (i, j)))
            .collect();
        let entries: Vec<SigmaEntry> = pairs
            .par_iter()
            .map(|&(i, j)| algebra.sigma_value(i, j))
            .collect::<Result<_>>()?;
        let mut table: Vec<Vec<SigmaEntry>> = Vec::with_capacity(order);
        let mut it = entries.into_iter();
        for _ in 0..order {
            table.push((&mut it).take(order).collect());
        }
        algebra.sigma = table;
        Ok(algebra)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn potential(&self) -> &MultiPoly {
        &self.w
    }

    pub fn group(&self) -> &[GroupElement] {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.len()
    }

    pub fn milnor(&self, sector: usize) -> &MilnorAlgebra {
        &self.milnor[sector]
    }

    pub fn sector_index(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g.exps()).copied()
    }

    pub fn identity_index(&self) -> usize {
        self.index[&vec![0u64; self.nvars]]
    }

    pub fn sigma(&self, gi: usize, hi: usize) -> &SigmaEntry {
        &self.sigma[gi][hi]
    }

    pub fn untwisted_kernel(&self) -> &BiTheta {
        &self.h_w
    }

    pub fn sector_kernel(&self, sector: usize) -> &MaskPoly {
        &self.h_wg[sector]
    }

    fn sigma_value(&self, gi: usize, hi: usize) -> Result<SigmaEntry> {
        let g = &self.group[gi];
        let h = &self.group[hi];
        let gh = g.mul(h);
        let ghi = self.index[gh.exps()];
        let mil = &self.milnor[ghi];
        let defect = pair_defect(g, h);
        let zero = MultiPoly::zero(self.nvars, &self.field);
        if !defect.is_integer() || defect < num::rational::Ratio::from_integer(0) {
            return Ok(SigmaEntry {
                defect: None,
                value: zero,
            });
        }
        let d = defect.to_integer() as u64;
        let reduce = |p: &MultiPoly| mil.class_of(p);
        let g_scales = g.scales(&self.field);
        let ones = vec![CycScalar::one(&self.field); self.nvars];
        let a = self.h_w.map_coeffs(|p| {
            reduce(
                &p.substitute_scaled(Block::Y, Block::X, &g_scales)
                    .substitute_scaled(Block::Z, Block::X, &ones),
            )
        });
        let mut b = BiTheta::zero(self.nvars, &self.field);
        for (m, p) in self.h_wg[gi].terms() {
            b.insert((*m, 0), reduce(p));
        }
        let mut c = BiTheta::zero(self.nvars, &self.field);
        for (m, p) in self.h_wg[hi].terms() {
            c.insert(
                (0, *m),
                reduce(&p.substitute_scaled(Block::X, Block::X, &g_scales)),
            );
        }
        let s = a.add(&b).add(&c);
        let mut power = BiTheta::one(self.nvars, &self.field);
        for k in 1..=d {
            power = power.mul_with(&s, &reduce);
            power = power.map_coeffs(|p| {
                p.scale_rat(crate::scalar::Rat::new(1.into(), (k as i64).into()))
            });
            if power.is_zero() {
                break;
            }
        }
        let q1 = MaskPoly::word(self.nvars, &self.field, self.moving_mask(gi));
        let q2 = MaskPoly::word(self.nvars, &self.field, self.moving_mask(hi));
        let u = upsilon_apply(&power, &q1, &q2);
        let value = reduce(&u.coeff(self.moving_mask(ghi)));
        Ok(SigmaEntry {
            defect: Some(d),
            value,
        })
    }

    fn moving_mask(&self, sector: usize) -> Mask {
        mask_of(&self.group[sector].moving_indices())
    }

    fn blank(&self, omega: bool) -> TwistedElement {
        TwistedElement {
            algebra_id: self.id,
            omega,
            parts: BTreeMap::new(),
        }
    }

    pub fn zero_element(&self, omega: bool) -> TwistedElement {
        self.blank(omega)
    }

    pub fn unit(&self) -> TwistedElement {
        self.generator(self.identity_index())
    }

    pub fn omega_unit(&self) -> TwistedElement {
        self.omega_generator(self.identity_index())
    }

    pub fn generator(&self, sector: usize) -> TwistedElement {
        let mut e = self.blank(false);
        e.insert((sector, 0), MultiPoly::one(self.nvars, &self.field));
        e
    }

    pub fn omega_generator(&self, sector: usize) -> TwistedElement {
        let mut e = self.blank(true);
        e.insert((sector, 0), MultiPoly::one(self.nvars, &self.field));
        e
    }

    /// An element supported in one sector, reduced to its normal form.
    pub fn class_element(&self, sector: usize, f: &MultiPoly, omega: bool) -> TwistedElement {
        let mut e = self.blank(omega);
        e.insert((sector, 0), self.milnor[sector].class_of(f));
        e
    }

    fn check_owned(&self, e: &TwistedElement) -> Result<()> {
        if e.algebra_id != self.id {
            return Err(Error::MixedAlgebras);
        }
        Ok(())
    }

    fn product(&self, a: &TwistedElement, b: &TwistedElement, omega: bool) -> Result<TwistedElement> {
        self.check_owned(a)?;
        self.check_owned(b)?;
        let mut out = self.blank(omega);
        for ((gi, t1), f1) in &a.parts {
            for ((hi, t2), f2) in &b.parts {
                let entry = &self.sigma[*gi][*hi];
                let Some(d) = entry.defect else {
                    continue;
                };
                if entry.is_zero() {
                    continue;
                }
                let gh = self.group[*gi].mul(&self.group[*hi]);
                let ghi = self.index[gh.exps()];
                let mil = &self.milnor[ghi];
                let prod = mil.class_of(&f1.mul(f2).mul(&entry.value));
                out.insert((ghi, t1 + t2 + d as i32), prod);
            }
        }
        Ok(out)
    }

    /// Cup product of two cohomology-side elements.
    pub fn cup(&self, a: &TwistedElement, b: &TwistedElement) -> Result<TwistedElement> {
        if a.omega || b.omega {
            return Err(Error::Validation(
                "cup expects two cohomology-side elements".into(),
            ));
        }
        self.product(a, b, false)
    }

    /// Cap product of a homology-side element with a cohomology-side one.
    pub fn cap(&self, a: &TwistedElement, b: &TwistedElement) -> Result<TwistedElement> {
        if !a.omega || b.omega {
            return Err(Error::Validation(
                "cap expects a homology-side element on the left".into(),
            ));
        }
        self.product(a, b, true)
    }

    /// The action of h: classes transform by substitution, the sector
    /// generators by the displayed character.
    pub fn g_act(&self, h: &GroupElement, e: &TwistedElement) -> Result<TwistedElement> {
        self.check_owned(e)?;
        let mut out = self.blank(e.omega);
        for ((s, t), f) in &e.parts {
            let g = &self.group[*s];
            let mut exponent: i64 = 0;
            if e.omega {
                for i in g.fixed_indices() {
                    exponent += h.exps()[i] as i64;
                }
            } else {
                for i in g.moving_indices() {
                    exponent -= h.exps()[i] as i64;
                }
            }
            let factor = crate::group::root_of_unity(&self.field, h.modulus(), exponent);
            let acted = self.milnor[*s].g_act(h, f).scale(&factor);
            out.insert((*s, *t), acted);
        }
        Ok(out)
    }

    /// Parity of a one-sector element of the given species.
    pub fn part_parity(&self, sector: usize, omega: bool) -> u8 {
        let d = self.group[sector].d_g();
        if omega {
            ((d + self.nvars) % 2) as u8
        } else {
            (d % 2) as u8
        }
    }

    /// Per-sector dimensions of the subspace fixed by the whole group.
    pub fn invariants(&self, omega: bool) -> Vec<SectorInvariants> {
        self.group
            .iter()
            .enumerate()
            .map(|(s, g)| {
                let mil = &self.milnor[s];
                let basis: Vec<Monomial> = mil
                    .basis()
                    .iter()
                    .filter(|m| self.is_invariant_monomial(g, m, omega))
                    .cloned()
                    .collect();
                SectorInvariants {
                    sector: g.exps().to_vec(),
                    d_g: g.d_g(),
                    dim: mil.dim(),
                    invariant_dim: basis.len(),
                    invariant_basis: basis,
                    parity: self.part_parity(s, omega),
                }
            })
            .collect()
    }

    fn is_invariant_monomial(&self, g: &GroupElement, m: &Monomial, omega: bool) -> bool {
        let n_mod = g.modulus() as i64;
        self.group.iter().all(|h| {
            let mut chi: i64 = 0;
            for i in 0..self.nvars {
                chi += h.exps()[i] as i64 * m.exp(Block::X, i) as i64;
            }
            if omega {
                for i in g.fixed_indices() {
                    chi += h.exps()[i] as i64;
                }
            } else {
                for i in g.moving_indices() {
                    chi -= h.exps()[i] as i64;
                }
            }
            chi.rem_euclid(n_mod) == 0
        })
    }

    /// Renders a twisted element for human output.
    pub fn render(&self, e: &TwistedElement) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let symbol = if e.omega { "omega" } else { "xi" };
        let mut pieces = Vec::new();
        for ((s, t), f) in &e.parts {
            let sector = self.group[*s].exps_string();
            let mut piece = format!("({f})");
            if *t != 0 {
                piece.push_str(&format!("*t^{t}"));
            }
            piece.push_str(&format!("*{symbol}[{sector}]"));
            pieces.push(piece);
        }
        pieces.join(" + ")
    }
}

#[derive(Clone, Debug)]
pub struct SectorInvariants {
    pub sector: Vec<u64>,
    pub d_g: usize,
    pub dim: usize,
    pub invariant_dim: usize,
    pub invariant_basis: Vec<Monomial>,
    pub parity: u8,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::generate_group;
    use crate::parse::parse_poly;

    fn cubic_algebra() -> TwistedAlgebra {
        let field = CycField::new(3);
        let w = parse_poly("x1^3", 1, &field).unwrap();
        let group = generate_group(&[GroupElement::new(vec![1], 3)], 1, 3, &w).unwrap();
        TwistedAlgebra::build(w, group, LocalMode::Auto, 32).unwrap()
    }

    #[test]
    fn cubic_sigma_values() {
        let alg = cubic_algebra();
        let field = alg.field().clone();
        let g1 = alg.sector_index(&GroupElement::new(vec![1], 3)).unwrap();
        let g2 = alg.sector_index(&GroupElement::new(vec![2], 3)).unwrap();
        // sigma(g, g^2) = -(2 + zeta) x
        let expect = parse_poly("-2*x1 - zeta*x1", 1, &field).unwrap();
        assert_eq!(alg.sigma(g1, g2).value, expect);
        let expect2 = parse_poly("-2*x1 - zeta^2*x1", 1, &field).unwrap();
        assert_eq!(alg.sigma(g2, g1).value, expect2);
        // the ratio of the two is 1 + zeta
        let e = alg.identity_index();
        assert!(alg.sigma(e, g1).value.is_one());
        assert!(alg.sigma(g1, e).value.is_one());
        // g * g lands in the sector of g^2 with defect (1+1-1)/2, not integral
        assert!(alg.sigma(g1, g1).defect.is_none());
    }

    #[test]
    fn cubic_unit_law() {
        let alg = cubic_algebra();
        let g1 = alg.sector_index(&GroupElement::new(vec![1], 3)).unwrap();
        let one = alg.unit();
        let xi = alg.generator(g1);
        assert_eq!(alg.cup(&one, &xi).unwrap(), xi);
        assert_eq!(alg.cup(&xi, &one).unwrap(), xi);
    }

    #[test]
    fn cubic_braided_commutativity() {
        // v_g cup v_h = (-1)^{|v_g||v_h|} v_h cup h^{-1}(v_g)
        let alg = cubic_algebra();
        let g1 = alg.sector_index(&GroupElement::new(vec![1], 3)).unwrap();
        let g2 = alg.sector_index(&GroupElement::new(vec![2], 3)).unwrap();
        let xi1 = alg.generator(g1);
        let xi2 = alg.generator(g2);
        let lhs = alg.cup(&xi1, &xi2).unwrap();
        let h_inv = GroupElement::new(vec![2], 3).inverse();
        let twisted = alg.g_act(&h_inv, &xi1).unwrap();
        let rhs = alg.cup(&xi2, &twisted).unwrap().neg();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cubic_invariants() {
        let alg = cubic_algebra();
        let inv = alg.invariants(false);
        let dims: Vec<usize> = inv.iter().map(|s| s.invariant_dim).collect();
        assert_eq!(dims.iter().sum::<usize>(), 1);
        let coinv = alg.invariants(true);
        let total: usize = coinv.iter().map(|s| s.invariant_dim).sum();
        assert_eq!(total, 2);
    }

    #[test]
    fn mixed_algebras_rejected() {
        let a1 = cubic_algebra();
        let a2 = cubic_algebra();
        let e1 = a1.unit();
        let e2 = a2.unit();
        assert!(matches!(a1.cup(&e1, &e2), Err(Error::MixedAlgebras)));
        assert!(matches!(e1.add(&e2), Err(Error::MixedAlgebras)));
    }

    #[test]
    fn cap_makes_omega_free_of_rank_one() {
        let alg = cubic_algebra();
        let g1 = alg.sector_index(&GroupElement::new(vec![1], 3)).unwrap();
        let omega_e = alg.omega_unit();
        let xi = alg.generator(g1);
        let capped = alg.cap(&omega_e, &xi).unwrap();
        assert!(capped.is_omega());
        assert_eq!(capped.part(g1, 0).cloned().map(|p| p.is_one()), Some(true));
    }
}
