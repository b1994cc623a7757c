//! Sparse multivariate polynomials over Q(zeta_n) in three variable blocks
//! x, y, z of equal width, together with the difference-derivative calculus.
//!
//! The slice operator renames a leading segment of one block into another;
//! the difference derivative of f in variable i is the exact quotient
//! (l_i(f) - l_{i+1}(f)) / (x_i - y_i), so that summing (x_i - y_i) * nabla_i(f)
//! telescopes to f(x) - f(y).

use crate::error::{Error, Result};
use crate::scalar::{CycField, CycScalar, Rat};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Block {
    X,
    Y,
    Z,
}

impl Block {
    pub const ALL: [Block; 3] = [Block::X, Block::Y, Block::Z];

    fn index(self) -> usize {
        match self {
            Block::X => 0,
            Block::Y => 1,
            Block::Z => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Block::X => "x",
            Block::Y => "y",
            Block::Z => "z",
        }
    }
}

/// Exponent vector over the 3N variables, laid out x-block, y-block, z-block.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: vec![0; 3 * nvars],
        }
    }

    pub fn var(nvars: usize, block: Block, i: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[block.index() * nvars + i] = 1;
        m
    }

    pub fn from_x_exponents(nvars: usize, exps: &[u16]) -> Monomial {
        assert_eq!(exps.len(), nvars);
        let mut m = Monomial::one(nvars);
        m.exps[..nvars].copy_from_slice(exps);
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len() / 3
    }

    pub fn exp(&self, block: Block, i: usize) -> u16 {
        self.exps[block.index() * self.nvars() + i]
    }

    pub fn set_exp(&mut self, block: Block, i: usize, e: u16) {
        let n = self.nvars();
        self.exps[block.index() * n + i] = e;
    }

    pub fn x_exponents(&self) -> &[u16] {
        &self.exps[..self.nvars()]
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn degree_in(&self, block: Block) -> u32 {
        let n = self.nvars();
        self.exps[block.index() * n..(block.index() + 1) * n]
            .iter()
            .map(|&e| e as u32)
            .sum()
    }

    pub fn uses(&self, block: Block) -> bool {
        self.degree_in(block) > 0
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Graded reverse lexicographic order with x1 > x2 > ... > y1 > ... > zN.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let da = self.total_degree();
        let db = other.total_degree();
        if da != db {
            return da.cmp(&db);
        }
        for (a, b) in self.exps.iter().rev().zip(other.exps.iter().rev()) {
            if a != b {
                // Smaller exponent in the least significant differing slot wins.
                return b.cmp(a);
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for block in Block::ALL {
            for i in 0..self.nvars() {
                let e = self.exp(block, i);
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}{}", block.name(), i + 1)?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    field: Arc<CycField>,
    terms: BTreeMap<Monomial, CycScalar>,
}

impl MultiPoly {
    pub fn zero(nvars: usize, field: &Arc<CycField>) -> MultiPoly {
        MultiPoly {
            nvars,
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize, field: &Arc<CycField>) -> MultiPoly {
        Self::constant(nvars, field, CycScalar::one(field))
    }

    pub fn constant(nvars: usize, field: &Arc<CycField>, c: CycScalar) -> MultiPoly {
        let mut p = Self::zero(nvars, field);
        p.insert_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, field: &Arc<CycField>, block: Block, i: usize) -> MultiPoly {
        let mut p = Self::zero(nvars, field);
        p.insert_term(Monomial::var(nvars, block, i), CycScalar::one(field));
        p
    }

    pub fn from_terms<I>(nvars: usize, field: &Arc<CycField>, it: I) -> MultiPoly
    where
        I: IntoIterator<Item = (Monomial, CycScalar)>,
    {
        let mut p = Self::zero(nvars, field);
        for (m, c) in it {
            p.insert_term(m, c);
        }
        p
    }

    pub fn insert_term(&mut self, m: Monomial, c: CycScalar) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycScalar)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn coeff(&self, m: &Monomial) -> CycScalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| CycScalar::zero(&self.field))
    }

    /// Leading term in the grevlex order.
    pub fn leading(&self) -> Option<(&Monomial, &CycScalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn uses_block(&self, block: Block) -> bool {
        self.terms.keys().any(|m| m.uses(block))
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn scale(&self, s: &CycScalar) -> MultiPoly {
        if s.is_zero() {
            return Self::zero(self.nvars, &self.field);
        }
        let mut out = Self::zero(self.nvars, &self.field);
        for (m, c) in &self.terms {
            out.insert_term(m.clone(), c * s);
        }
        out
    }

    pub fn scale_rat(&self, r: Rat) -> MultiPoly {
        self.scale(&CycScalar::from_rat(&self.field, r))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &CycScalar) -> MultiPoly {
        let mut out = Self::zero(self.nvars, &self.field);
        if c.is_zero() {
            return out;
        }
        for (mm, cc) in &self.terms {
            out.insert_term(mm.mul(m), cc * c);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.field.order(), other.field.order(), "scalar order mismatch");
        let mut out = Self::zero(self.nvars, &self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one(self.nvars, &self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn map_coeffs<F: Fn(&CycScalar) -> CycScalar>(&self, f: F) -> MultiPoly {
        let mut out = Self::zero(self.nvars, &self.field);
        for (m, c) in &self.terms {
            out.insert_term(m.clone(), f(c));
        }
        out
    }

    pub fn partial_derivative(&self, block: Block, i: usize) -> MultiPoly {
        let mut out = Self::zero(self.nvars, &self.field);
        for (m, c) in &self.terms {
            let e = m.exp(block, i);
            if e == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm.set_exp(block, i, e - 1);
            out.insert_term(mm, c * &CycScalar::from_int(&self.field, e as i64));
        }
        out
    }

    /// Renames src-variables with index < cut into the dst block.
    /// The divided-difference slice at position i corresponds to cut = i - 1.
    pub fn slice_rename(&self, cut: usize, src: Block, dst: Block) -> MultiPoly {
        assert_ne!(src, dst);
        let mut out = Self::zero(self.nvars, &self.field);
        for (m, c) in &self.terms {
            let mut mm = m.clone();
            for i in 0..cut {
                let e = mm.exp(src, i);
                if e > 0 {
                    mm.set_exp(src, i, 0);
                    let prev = mm.exp(dst, i);
                    mm.set_exp(dst, i, prev + e);
                }
            }
            out.insert_term(mm, c.clone());
        }
        out
    }

    /// Difference derivative in variable i of the src block, landing in
    /// functions of (src, dst): (l_i - l_{i+1}) / (src_i - dst_i).
    pub fn nabla(&self, i: usize, src: Block, dst: Block) -> MultiPoly {
        let hi = self.slice_rename(i, src, dst);
        let lo = self.slice_rename(i + 1, src, dst);
        let num = hi.sub(&lo);
        num.exact_div_linear(src, dst, i)
    }

    /// Exact division by (u - v) where u = (ublock, i), v = (vblock, i).
    /// Panics if the division leaves a remainder; callers only divide
    /// differences that vanish at u = v.
    fn exact_div_linear(&self, ublock: Block, vblock: Block, i: usize) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        // Group terms by the exponent of u, with u stripped out.
        let mut layers: BTreeMap<u16, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(ublock, i);
            let mut mm = m.clone();
            mm.set_exp(ublock, i, 0);
            layers
                .entry(e)
                .or_insert_with(|| Self::zero(self.nvars, &self.field))
                .insert_term(mm, c.clone());
        }
        let emax = *layers.keys().next_back().unwrap();
        let mut quotient = Self::zero(self.nvars, &self.field);
        let one = CycScalar::one(&self.field);
        // Horner descent: carry v * layer down one u-level at a time.
        for e in (1..=emax).rev() {
            let layer = match layers.remove(&e) {
                Some(p) => p,
                None => continue,
            };
            if layer.is_zero() {
                continue;
            }
            let mut upow = Monomial::one(self.nvars);
            upow.set_exp(ublock, i, e - 1);
            quotient = quotient.add(&layer.mul_monomial(&upow, &one));
            let vvar = Monomial::var(self.nvars, vblock, i);
            let carried = layer.mul_monomial(&vvar, &one);
            let slot = layers
                .entry(e - 1)
                .or_insert_with(|| Self::zero(self.nvars, &self.field));
            *slot = slot.add(&carried);
        }
        if let Some(r) = layers.get(&0) {
            assert!(
                r.is_zero(),
                "internal error: division by ({}{} - {}{}) left remainder {}",
                ublock.name(),
                i + 1,
                vblock.name(),
                i + 1,
                r
            );
        }
        quotient
    }

    /// Substitutes src_i := scales[i] * dst_i for every i. src == dst means a
    /// plain diagonal rescaling. Exponents move onto the dst block.
    pub fn substitute_scaled(&self, src: Block, dst: Block, scales: &[CycScalar]) -> MultiPoly {
        assert_eq!(scales.len(), self.nvars);
        let mut out = Self::zero(self.nvars, &self.field);
        'terms: for (m, c) in &self.terms {
            let mut mm = m.clone();
            let mut cc = c.clone();
            for i in 0..self.nvars {
                let e = mm.exp(src, i);
                if e == 0 {
                    continue;
                }
                if scales[i].is_zero() {
                    continue 'terms;
                }
                cc = &cc * &scales[i].pow(e as u64);
                mm.set_exp(src, i, 0);
                let prev = mm.exp(dst, i);
                mm.set_exp(dst, i, prev + e);
            }
            out.insert_term(mm, cc);
        }
        out
    }

    /// Kills every term divisible by x_i for i in `moving` (restriction to a
    /// fixed coordinate subspace).
    pub fn restrict_x(&self, moving: &[usize]) -> MultiPoly {
        let mut out = Self::zero(self.nvars, &self.field);
        'terms: for (m, c) in &self.terms {
            for &i in moving {
                if m.exp(Block::X, i) > 0 {
                    continue 'terms;
                }
            }
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    /// Re-embeds into a wider ring, shifting every variable index by `offset`.
    pub fn shift_vars(&self, offset: usize, new_nvars: usize) -> MultiPoly {
        assert!(self.nvars + offset <= new_nvars);
        let mut out = Self::zero(new_nvars, &self.field);
        for (m, c) in &self.terms {
            let mut mm = Monomial::one(new_nvars);
            for block in Block::ALL {
                for i in 0..self.nvars {
                    let e = m.exp(block, i);
                    if e > 0 {
                        mm.set_exp(block, i + offset, e);
                    }
                }
            }
            out.insert_term(mm, c.clone());
        }
        out
    }

    /// Change of field: reinterprets coefficients in a larger cyclotomic field.
    /// The new order must be a multiple of the old one.
    pub fn lift_field(&self, field: &Arc<CycField>) -> Result<MultiPoly> {
        let old = self.field.order();
        let new = field.order();
        if !new.is_multiple_of(old) {
            return Err(Error::Config(format!(
                "cannot lift coefficients from Q(zeta_{}) into Q(zeta_{})",
                old, new
            )));
        }
        let k = (new / old) as i64;
        let mut out = Self::zero(self.nvars, field);
        for (m, c) in &self.terms {
            let mut lifted = CycScalar::zero(field);
            for (e, r) in c.coeffs().iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                let basis = CycScalar::zeta_pow(field, e as i64 * k);
                lifted = &lifted + &basis.scale_rat(r.clone());
            }
            out.insert_term(m.clone(), lifted);
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let simple = c
                .as_rational()
                .map(|r| !r.is_zero())
                .unwrap_or(false);
            if m.is_one() {
                if simple {
                    write!(f, "{}", c)?;
                } else {
                    write!(f, "({})", c)?;
                }
            } else if c.is_one() {
                write!(f, "{}", m)?;
            } else if simple {
                write!(f, "{}*{}", c, m)?;
            } else {
                write!(f, "({})*{}", c, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use proptest::prelude::*;

    fn setup(nvars: usize) -> (usize, Arc<CycField>) {
        (nvars, CycField::new(3))
    }

    fn xp(nvars: usize, field: &Arc<CycField>, text: &str) -> MultiPoly {
        parse_poly(text, nvars, field).unwrap()
    }

    #[test]
    fn grevlex_order() {
        let n = 2;
        let x1 = Monomial::var(n, Block::X, 0);
        let x2 = Monomial::var(n, Block::X, 1);
        assert!(x1 > x2);
        let x1sq = x1.mul(&x1);
        let x1x2 = x1.mul(&x2);
        assert!(x1sq > x1x2);
        assert!(x1x2 > x1);
    }

    #[test]
    fn nabla_of_cube_telescopes_through_blocks() {
        let (n, f) = setup(1);
        let w = xp(n, &f, "x1^3");
        // nabla_1(x^3) = x^2 + x*y + y^2
        let d = w.nabla(0, Block::X, Block::Y);
        assert_eq!(d, xp(n, &f, "x1^2 + x1*y1 + y1^2"));
        // second difference derivative, y -> (y, z): x + y + z
        let dd = d.nabla(0, Block::Y, Block::Z);
        assert_eq!(dd, xp(n, &f, "x1 + y1 + z1"));
    }

    #[test]
    fn nabla_on_mixed_monomial() {
        let (n, f) = setup(2);
        let w = xp(n, &f, "x1*x2");
        assert_eq!(w.nabla(0, Block::X, Block::Y), xp(n, &f, "x2"));
        assert_eq!(w.nabla(1, Block::X, Block::Y), xp(n, &f, "y1"));
    }

    #[test]
    fn substitution_scales_and_moves_blocks() {
        let (n, f) = setup(1);
        let zeta = CycScalar::zeta_pow(&f, 1);
        let p = xp(n, &f, "x1^2");
        let q = p.substitute_scaled(Block::X, Block::Y, std::slice::from_ref(&zeta));
        // x^2 -> zeta^2 y^2
        let mut expected = MultiPoly::zero(n, &f);
        expected.insert_term(
            {
                let mut m = Monomial::one(n);
                m.set_exp(Block::Y, 0, 2);
                m
            },
            CycScalar::zeta_pow(&f, 2),
        );
        assert_eq!(q, expected);
    }

    #[test]
    fn restriction_kills_moving_coordinates() {
        let (n, f) = setup(2);
        let p = xp(n, &f, "x1^3 + x1*x2 + x2^2");
        assert_eq!(p.restrict_x(&[0]), xp(n, &f, "x2^2"));
        assert_eq!(p.restrict_x(&[0, 1]), MultiPoly::zero(n, &f));
    }

    fn arb_poly(nvars: usize, maxdeg: u16) -> impl Strategy<Value = MultiPoly> {
        let field = CycField::new(3);
        proptest::collection::vec(
            (
                proptest::collection::vec(0..=maxdeg, nvars),
                -3i64..4,
                0i64..3,
            ),
            0..6,
        )
        .prop_map(move |terms| {
            let mut p = MultiPoly::zero(nvars, &field);
            for (exps, cnum, zpow) in terms {
                let m = Monomial::from_x_exponents(nvars, &exps);
                let c = &CycScalar::from_int(&field, cnum) * &CycScalar::zeta_pow(&field, zpow);
                p.insert_term(m, c);
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn telescoping_identity(p in arb_poly(3, 3)) {
            // sum_i (x_i - y_i) nabla_i(p) = p(x) - p(y)
            let n = p.nvars();
            let f = p.field().clone();
            let mut acc = MultiPoly::zero(n, &f);
            for i in 0..n {
                let xi = MultiPoly::var(n, &f, Block::X, i);
                let yi = MultiPoly::var(n, &f, Block::Y, i);
                acc = acc.add(&xi.sub(&yi).mul(&p.nabla(i, Block::X, Block::Y)));
            }
            let ones = vec![CycScalar::one(&f); n];
            let py = p.substitute_scaled(Block::X, Block::Y, &ones);
            prop_assert_eq!(acc, p.sub(&py));
        }

        #[test]
        fn leibniz_rule(p in arb_poly(2, 3), q in arb_poly(2, 3), i in 0usize..2) {
            // nabla_i(fg) = nabla_i(f) l_i(g) + l_{i+1}(f) nabla_i(g)
            let lhs = p.mul(&q).nabla(i, Block::X, Block::Y);
            let rhs = p
                .nabla(i, Block::X, Block::Y)
                .mul(&q.slice_rename(i, Block::X, Block::Y))
                .add(&p.slice_rename(i + 1, Block::X, Block::Y).mul(&q.nabla(i, Block::X, Block::Y)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn commutation_identity(p in arb_poly(3, 3), i in 0usize..3, j in 0usize..3) {
            // nabla^{y->(y,z)}_i nabla^{x->(x,y)}_j = nabla^{x->(x,y)}_j nabla^{x->(x,z)}_i
            let lhs = p.nabla(j, Block::X, Block::Y).nabla(i, Block::Y, Block::Z);
            let rhs = p.nabla(i, Block::X, Block::Z).nabla(j, Block::X, Block::Y);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn double_nabla_vanishes_for_i_lt_j(p in arb_poly(3, 3), i in 0usize..3, j in 0usize..3) {
            // The inner difference derivative introduces y-dependence only up
            // to index i, so a later outer slot differences nothing.
            if i < j {
                let d = p.nabla(i, Block::X, Block::Y).nabla(j, Block::Y, Block::Z);
                prop_assert!(d.is_zero());
            }
        }
    }
}
