//! Buchberger's algorithm over Q(zeta_n) in the grevlex order, plus the
//! staircase extraction and the m-adic local quotient used for potentials
//! with critical points away from the origin.
//!
//! Ideals here always live in the x block, over an explicit subset of the
//! variables (a sector's fixed coordinates).

use crate::error::{Error, Result};
use crate::poly::{Block, Monomial, MultiPoly};
use crate::scalar::{CycField, CycScalar};
use std::collections::BTreeSet;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    nvars: usize,
    field: Arc<CycField>,
    vars: Vec<usize>,
    gens: Vec<MultiPoly>,
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    /// Fully reduced remainder of f modulo the basis; the unique normal form
    /// supported on the staircase.
    pub fn normal_form(&self, f: &MultiPoly) -> MultiPoly {
        let mut rem = MultiPoly::zero(self.nvars, &self.field);
        let mut work = f.clone();
        'outer: while let Some((m, c)) = work.leading() {
            let (m, c) = (m.clone(), c.clone());
            for g in &self.gens {
                let (lm, _) = g.leading().expect("basis elements are nonzero");
                if lm.divides(&m) {
                    let q = m.div(lm);
                    work = work.sub(&g.mul_monomial(&q, &c));
                    continue 'outer;
                }
            }
            rem.insert_term(m.clone(), c);
            work = work.sub(&MultiPoly::from_terms(
                self.nvars,
                &self.field,
                [(m, work.leading().unwrap().1.clone())],
            ));
        }
        rem
    }

    /// Monomials under the staircase. Errors when the quotient is not a
    /// finite-dimensional vector space.
    pub fn quotient_basis(&self) -> Result<Vec<Monomial>> {
        let leads: Vec<Monomial> = self
            .gens
            .iter()
            .map(|g| g.leading().unwrap().0.clone())
            .collect();
        if leads.iter().any(|m| m.is_one()) {
            return Ok(Vec::new());
        }
        // Finite dimension needs a pure power of every active variable
        // among the leading terms.
        let mut bound = vec![0u16; self.vars.len()];
        for (k, &v) in self.vars.iter().enumerate() {
            let mut best: Option<u16> = None;
            for m in &leads {
                let e = m.exp(Block::X, v);
                if e > 0 && (0..self.nvars).all(|j| j == v || m.exp(Block::X, j) == 0) {
                    best = Some(best.map_or(e, |b: u16| b.min(e)));
                }
            }
            match best {
                Some(e) => bound[k] = e,
                None => {
                    return Err(Error::Computation(format!(
                        "non-isolated critical locus: no power of x{} lies in the leading ideal",
                        v + 1
                    )))
                }
            }
        }
        let mut out = Vec::new();
        let mut current = vec![0u16; self.vars.len()];
        enumerate_box(&bound, 0, &mut current, &mut |exps| {
            let mut m = Monomial::one(self.nvars);
            for (k, &v) in self.vars.iter().enumerate() {
                m.set_exp(Block::X, v, exps[k]);
            }
            if !leads.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
        });
        out.sort();
        Ok(out)
    }
}

fn enumerate_box(
    bound: &[u16],
    k: usize,
    current: &mut Vec<u16>,
    f: &mut impl FnMut(&[u16]),
) {
    if k == bound.len() {
        f(current);
        return;
    }
    for e in 0..bound[k] {
        current[k] = e;
        enumerate_box(bound, k + 1, current, f);
    }
    current[k] = 0;
}

fn make_monic(p: MultiPoly) -> MultiPoly {
    let lead = p.leading().unwrap().1.clone();
    let inv = lead.inverse().expect("leading coefficient is nonzero");
    p.scale(&inv)
}

fn s_poly(f: &MultiPoly, g: &MultiPoly, nvars: usize, field: &Arc<CycField>) -> MultiPoly {
    let (lf, _) = f.leading().unwrap();
    let (lg, _) = g.leading().unwrap();
    let l = lf.lcm(lg);
    let one = CycScalar::one(field);
    let a = f.mul_monomial(&l.div(lf), &one);
    let b = g.mul_monomial(&l.div(lg), &one);
    let _ = nvars;
    a.sub(&b)
}

fn reduce_by(f: &MultiPoly, basis: &[MultiPoly], skip: Option<usize>) -> MultiPoly {
    let nvars = f.nvars();
    let field = f.field().clone();
    let mut rem = MultiPoly::zero(nvars, &field);
    let mut work = f.clone();
    'outer: while let Some((m, c)) = work.leading() {
        let (m, c) = (m.clone(), c.clone());
        for (k, g) in basis.iter().enumerate() {
            if Some(k) == skip {
                continue;
            }
            let (lm, _) = g.leading().unwrap();
            if lm.divides(&m) {
                let q = m.div(lm);
                work = work.sub(&g.mul_monomial(&q, &c));
                continue 'outer;
            }
        }
        rem.insert_term(m, c.clone());
        let lead = work.leading().unwrap().0.clone();
        let lc = work.leading().unwrap().1.clone();
        work = work.sub(&MultiPoly::from_terms(nvars, &field, [(lead, lc)]));
    }
    rem
}

/// Computes a reduced Groebner basis of the ideal spanned by `gens` in the
/// polynomial ring on the listed x-variables.
pub fn buchberger(gens: &[MultiPoly], vars: &[usize], nvars: usize, field: &Arc<CycField>) -> GroebnerBasis {
    for g in gens {
        debug_assert!(!g.uses_block(Block::Y) && !g.uses_block(Block::Z));
        debug_assert!(g.terms().all(|(m, _)| {
            (0..nvars).all(|i| m.exp(Block::X, i) == 0 || vars.contains(&i))
        }));
    }
    let mut basis: Vec<MultiPoly> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(make_monic(g.clone()));
        }
    }
    // Pair queue ordered by lcm degree for the normal selection strategy.
    let mut queue: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let enqueue = |queue: &mut BTreeSet<(u32, usize, usize)>, basis: &[MultiPoly], i: usize, j: usize| {
        let li = basis[i].leading().unwrap().0;
        let lj = basis[j].leading().unwrap().0;
        if li.coprime(lj) {
            return;
        }
        let deg = li.lcm(lj).total_degree();
        queue.insert((deg, i, j));
    };
    for i in 0..basis.len() {
        for j in 0..i {
            enqueue(&mut queue, &basis, j, i);
        }
    }
    while let Some(&(deg, i, j)) = queue.iter().next() {
        queue.remove(&(deg, i, j));
        let s = s_poly(&basis[i], &basis[j], nvars, field);
        let r = reduce_by(&s, &basis, None);
        if r.is_zero() {
            continue;
        }
        let r = make_monic(r);
        basis.push(r);
        let newest = basis.len() - 1;
        for k in 0..newest {
            enqueue(&mut queue, &basis, k, newest);
        }
    }
    // Minimalize: drop any element whose leading term another one divides.
    basis.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    let mut kept: Vec<MultiPoly> = Vec::new();
    for g in basis {
        let keep = {
            let lt = g.leading().unwrap().0;
            !kept.iter().any(|k| k.leading().unwrap().0.divides(lt))
        };
        if keep {
            kept.push(g);
        }
    }
    // Tail-reduce against the rest; heads are pairwise indivisible now, so
    // one pass yields the reduced basis.
    let gens = (0..kept.len())
        .map(|k| make_monic(reduce_by(&kept[k], &kept, Some(k))))
        .collect();
    GroebnerBasis {
        nvars,
        field: field.clone(),
        vars: vars.to_vec(),
        gens,
    }
}

fn monomials_of_degree(nvars: usize, vars: &[usize], d: u16, field: &Arc<CycField>) -> Vec<MultiPoly> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; vars.len()];
    fn rec(
        vars: &[usize],
        nvars: usize,
        field: &Arc<CycField>,
        d: u16,
        k: usize,
        exps: &mut Vec<u16>,
        out: &mut Vec<MultiPoly>,
    ) {
        if k + 1 == vars.len() {
            exps[k] = d;
            let mut m = Monomial::one(nvars);
            for (idx, &v) in vars.iter().enumerate() {
                m.set_exp(Block::X, v, exps[idx]);
            }
            out.push(MultiPoly::from_terms(
                nvars,
                field,
                [(m, CycScalar::one(field))],
            ));
            return;
        }
        for e in 0..=d {
            exps[k] = e;
            rec(vars, nvars, field, d - e, k + 1, exps, out);
        }
    }
    if vars.is_empty() {
        return out;
    }
    rec(vars, nvars, field, d, 0, &mut exps, &mut out);
    out
}

/// Quotient by the ideal plus a power of the maximal ideal at the origin,
/// grown until the staircase stabilizes over two consecutive cutoffs. The
/// stabilized basis presents the local algebra at the origin.
pub fn local_quotient_at_origin(
    gens: &[MultiPoly],
    vars: &[usize],
    nvars: usize,
    field: &Arc<CycField>,
    d_max: u32,
) -> Result<GroebnerBasis> {
    let mut previous: Option<(GroebnerBasis, Vec<Monomial>)> = None;
    let mut d = 2u16;
    while (d as u32) <= d_max {
        let mut padded = gens.to_vec();
        padded.extend(monomials_of_degree(nvars, vars, d, field));
        let gb = buchberger(&padded, vars, nvars, field);
        let staircase = gb.quotient_basis()?;
        if let Some((prev_gb, prev_stair)) = previous {
            if prev_stair == staircase {
                return Ok(prev_gb);
            }
            previous = Some((gb, staircase));
        } else {
            previous = Some((gb, staircase));
        }
        d += 1;
    }
    Err(Error::NoStabilization { d_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use proptest::prelude::*;

    fn gb_of(texts: &[&str], vars: &[usize], nvars: usize) -> GroebnerBasis {
        let field = CycField::new(3);
        let gens: Vec<MultiPoly> = texts
            .iter()
            .map(|t| parse_poly(t, nvars, &field).unwrap())
            .collect();
        buchberger(&gens, vars, nvars, &field)
    }

    #[test]
    fn fermat_sum_quotient_basis() {
        let gb = gb_of(&["3*x1^2", "3*x2^2"], &[0, 1], 2);
        let basis = gb.quotient_basis().unwrap();
        let names: Vec<String> = basis.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, vec!["1", "x2", "x1", "x1*x2"]);
    }

    #[test]
    fn chain_normal_form_identity() {
        // W = x1^a1 x2 + x2^a2 with (a1, a2) = (3, 4):
        // nf(x1^(2a1-2)) = -a2 * nf(x1^(a1-2) x2^(a2-1))
        let field = CycField::new(3);
        let a1 = 3u32;
        let a2 = 4u32;
        let j1 = parse_poly("3*x1^2*x2", 2, &field).unwrap();
        let j2 = parse_poly("x1^3 + 4*x2^3", 2, &field).unwrap();
        let gb = buchberger(&[j1, j2], &[0, 1], 2, &field);
        let lhs = gb.normal_form(&parse_poly("x1^4", 2, &field).unwrap());
        let rhs = gb
            .normal_form(&parse_poly("x1*x2^3", 2, &field).unwrap())
            .scale(&CycScalar::from_int(&field, -(a2 as i64)));
        assert_eq!(lhs, rhs);
        let _ = a1;
    }

    #[test]
    fn infinite_quotient_is_detected() {
        let gb = gb_of(&["3*x1^2"], &[0, 1], 2);
        assert!(gb.quotient_basis().is_err());
    }

    #[test]
    fn local_quotient_of_cubic_matches_global() {
        let field = CycField::new(3);
        let j = parse_poly("3*x1^2", 1, &field).unwrap();
        let local = local_quotient_at_origin(std::slice::from_ref(&j), &[0], 1, &field, 12).unwrap();
        let basis = local.quotient_basis().unwrap();
        let names: Vec<String> = basis.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, vec!["1", "x1"]);
        let global = buchberger(&[j], &[0], 1, &field);
        assert_eq!(global.quotient_basis().unwrap(), basis);
    }

    #[test]
    fn local_quotient_discards_off_origin_support() {
        // x^2 (x - 1): global quotient has dimension 3, local at origin 2.
        let field = CycField::new(3);
        let dw = parse_poly("3*x1^2 - 2*x1", 1, &field).unwrap();
        let global = buchberger(std::slice::from_ref(&dw), &[0], 1, &field);
        assert_eq!(global.quotient_basis().unwrap().len(), 2);
        // Derivative of x^3 - x^2 has a root at 0 (double) and 2/3.
        let local = local_quotient_at_origin(&[dw], &[0], 1, &field, 12).unwrap();
        assert_eq!(local.quotient_basis().unwrap().len(), 1);
    }

    fn arb_x_poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
        let field = CycField::new(3);
        proptest::collection::vec(
            (proptest::collection::vec(0u16..4, nvars), -3i64..4),
            0..5,
        )
        .prop_map(move |terms| {
            let mut p = MultiPoly::zero(nvars, &field);
            for (exps, c) in terms {
                p.insert_term(
                    Monomial::from_x_exponents(nvars, &exps),
                    CycScalar::from_int(&field, c),
                );
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn normal_form_is_a_ring_map_on_products(f in arb_x_poly(2), g in arb_x_poly(2)) {
            let field = CycField::new(3);
            let j1 = parse_poly("3*x1^2*x2", 2, &field).unwrap();
            let j2 = parse_poly("x1^3 + 3*x2^2", 2, &field).unwrap();
            let gb = buchberger(&[j1, j2], &[0, 1], 2, &field);
            let lhs = gb.normal_form(&f.mul(&g));
            let rhs = gb.normal_form(&gb.normal_form(&f).mul(&gb.normal_form(&g)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn normal_form_is_idempotent_and_supported_on_staircase(f in arb_x_poly(2)) {
            let field = CycField::new(3);
            let j1 = parse_poly("3*x1^2", 2, &field).unwrap();
            let j2 = parse_poly("3*x2^2", 2, &field).unwrap();
            let gb = buchberger(&[j1, j2], &[0, 1], 2, &field);
            let nf = gb.normal_form(&f);
            prop_assert_eq!(gb.normal_form(&nf), nf.clone());
            let staircase = gb.quotient_basis().unwrap();
            for (m, _) in nf.terms() {
                prop_assert!(staircase.contains(m));
            }
        }
    }
}
