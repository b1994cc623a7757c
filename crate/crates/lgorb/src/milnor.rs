//! Per-sector Milnor algebras: the quotient of the fixed-locus coordinate
//! ring by the Jacobian ideal of the restricted potential, with a choice of
//! global or origin-local quotient.

use crate::error::{Error, Result};
use crate::groebner::{buchberger, local_quotient_at_origin, GroebnerBasis};
use crate::group::GroupElement;
use crate::poly::{Block, Monomial, MultiPoly};
use crate::scalar::{CycField, CycScalar};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalMode {
    Auto,
    On,
    Off,
}

impl LocalMode {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "auto" => Ok(LocalMode::Auto),
            "on" => Ok(LocalMode::On),
            "off" => Ok(LocalMode::Off),
            other => Err(Error::Config(format!(
                "unknown local mode '{other}', expected auto, on or off"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MilnorAlgebra {
    sector: GroupElement,
    restricted: MultiPoly,
    gb: GroebnerBasis,
    basis: Vec<Monomial>,
    local: bool,
}

impl MilnorAlgebra {
    pub fn new(w: &MultiPoly, g: &GroupElement, mode: LocalMode, d_max: u32) -> Result<Self> {
        let nvars = w.nvars();
        let field = w.field().clone();
        let moving = g.moving_indices();
        let fixed = g.fixed_indices();
        let restricted = w.restrict_x(&moving);
        let gens: Vec<MultiPoly> = fixed
            .iter()
            .map(|&i| restricted.partial_derivative(Block::X, i))
            .collect();
        let global = buchberger(&gens, &fixed, nvars, &field);
        let (gb, basis, local) = match mode {
            LocalMode::Off => {
                let basis = global.quotient_basis().map_err(|_| Error::NonIsolated {
                    sector: g.exps_string(),
                })?;
                (global, basis, false)
            }
            LocalMode::On => {
                let gb = local_quotient_at_origin(&gens, &fixed, nvars, &field, d_max)?;
                let basis = gb.quotient_basis()?;
                (gb, basis, true)
            }
            LocalMode::Auto => match global.quotient_basis() {
                Ok(global_basis) => {
                    let local_gb =
                        local_quotient_at_origin(&gens, &fixed, nvars, &field, d_max)?;
                    let local_basis = local_gb.quotient_basis()?;
                    if local_basis == global_basis {
                        (global, global_basis, false)
                    } else {
                        (local_gb, local_basis, true)
                    }
                }
                Err(_) => {
                    let gb = local_quotient_at_origin(&gens, &fixed, nvars, &field, d_max)?;
                    let basis = gb.quotient_basis()?;
                    (gb, basis, true)
                }
            },
        };
        Ok(MilnorAlgebra {
            sector: g.clone(),
            restricted,
            gb,
            basis,
            local,
        })
    }

    pub fn sector(&self) -> &GroupElement {
        &self.sector
    }

    pub fn restricted_potential(&self) -> &MultiPoly {
        &self.restricted
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn is_local(&self) -> bool {
        self.local
    }

    pub fn field(&self) -> &Arc<CycField> {
        self.gb.field()
    }

    pub fn nvars(&self) -> usize {
        self.gb.nvars()
    }

    /// Restricts to the fixed locus and takes the normal form: the canonical
    /// representative of the class of f.
    pub fn class_of(&self, f: &MultiPoly) -> MultiPoly {
        let moving = self.sector.moving_indices();
        self.gb.normal_form(&f.restrict_x(&moving))
    }

    pub fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        self.class_of(&a.mul(b))
    }

    /// The action of h on a class: each variable is rescaled by the
    /// eigenvalue of h.
    pub fn g_act(&self, h: &GroupElement, f: &MultiPoly) -> MultiPoly {
        let scales = h.scales(self.field());
        self.class_of(&f.substitute_scaled(Block::X, Block::X, &scales))
    }

    /// Coefficients of the normal form of f over the monomial basis.
    pub fn coeff_vector(&self, f: &MultiPoly) -> Vec<CycScalar> {
        let nf = self.class_of(f);
        self.basis.iter().map(|m| nf.coeff(m)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::generate_group;
    use crate::parse::parse_poly;
    use crate::scalar::CycField;

    #[test]
    fn cubic_sectors() {
        let field = CycField::new(3);
        let w = parse_poly("x1^3", 1, &field).unwrap();
        let group = generate_group(&[GroupElement::new(vec![1], 3)], 1, 3, &w).unwrap();
        let e = &group[0];
        let me = MilnorAlgebra::new(&w, e, LocalMode::Auto, 32).unwrap();
        assert_eq!(me.dim(), 2);
        assert!(!me.is_local());
        let g = &group[1];
        let mg = MilnorAlgebra::new(&w, g, LocalMode::Auto, 32).unwrap();
        assert_eq!(mg.dim(), 1);
        assert_eq!(mg.basis()[0].to_string(), "1");
    }

    #[test]
    fn chain_34_untwisted_dimension() {
        let field = CycField::new(12);
        let w = parse_poly("x1^3*x2 + x2^4", 2, &field).unwrap();
        let e = GroupElement::identity(2, 12);
        let m = MilnorAlgebra::new(&w, &e, LocalMode::Auto, 32).unwrap();
        assert_eq!(m.dim(), 9);
        // x2^4 reduces into the staircase
        let f = parse_poly("x2^4", 2, &field).unwrap();
        assert!(m.class_of(&f).total_degree() < 4);
    }

    #[test]
    fn class_arithmetic_respects_relations() {
        let field = CycField::new(3);
        let w = parse_poly("x1^3", 1, &field).unwrap();
        let e = GroupElement::identity(1, 3);
        let m = MilnorAlgebra::new(&w, &e, LocalMode::Auto, 32).unwrap();
        let x = parse_poly("x1", 1, &field).unwrap();
        assert!(m.mul(&x, &x).is_zero());
    }

    #[test]
    fn g_act_scales_monomials() {
        let field = CycField::new(3);
        let w = parse_poly("x1^3", 1, &field).unwrap();
        let group = generate_group(&[GroupElement::new(vec![1], 3)], 1, 3, &w).unwrap();
        let g = &group[1];
        let e = GroupElement::identity(1, 3);
        let m = MilnorAlgebra::new(&w, &e, LocalMode::Auto, 32).unwrap();
        let x = parse_poly("x1", 1, &field).unwrap();
        let acted = m.g_act(g, &x);
        assert_eq!(acted, x.scale(&CycScalar::zeta_pow(&field, 1)));
    }

    #[test]
    fn jacobian_restriction_identity() {
        // The invariance of w forces res(dw_i) = d(res w)_i on fixed indices
        // and res(dw_i) = 0 on moving ones.
        let field = CycField::new(6);
        let w = parse_poly("x1^3*x2 + x2^3", 2, &field).unwrap();
        // g = (zeta_6^{-1} acts how?) pick the order-3 symmetry fixing x2
        let group = generate_group(&[GroupElement::new(vec![2, 0], 6)], 2, 6, &w).unwrap();
        let g = group.iter().find(|g| !g.is_identity()).unwrap();
        let moving = g.moving_indices();
        for i in 0..2 {
            let lhs = w.partial_derivative(crate::poly::Block::X, i).restrict_x(&moving);
            if moving.contains(&i) {
                assert!(lhs.is_zero());
            } else {
                let rhs = w.restrict_x(&moving).partial_derivative(crate::poly::Block::X, i);
                assert_eq!(lhs, rhs);
            }
        }
    }
}
