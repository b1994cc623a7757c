//! Finite diagonal symmetry groups. An element g scales coordinate i by
//! zeta^(a_i) for a shared root of unity zeta of order `modulus`, so an
//! element is just its exponent vector.

use crate::error::{Error, Result};
use crate::poly::{Block, Monomial, MultiPoly};
use crate::scalar::{CycField, CycScalar};
use num::rational::Ratio;
use std::collections::BTreeSet;
use std::sync::Arc;

pub type Rational = Ratio<i64>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    exps: Vec<u64>,
    modulus: u64,
}

impl GroupElement {
    pub fn new(exps: Vec<i64>, modulus: u64) -> GroupElement {
        assert!(modulus >= 1);
        GroupElement {
            exps: exps
                .into_iter()
                .map(|e| e.rem_euclid(modulus as i64) as u64)
                .collect(),
            modulus,
        }
    }

    pub fn identity(nvars: usize, modulus: u64) -> GroupElement {
        GroupElement {
            exps: vec![0; nvars],
            modulus,
        }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.modulus, other.modulus);
        GroupElement {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| (a + b) % self.modulus)
                .collect(),
            modulus: self.modulus,
        }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            exps: self
                .exps
                .iter()
                .map(|&a| (self.modulus - a) % self.modulus)
                .collect(),
            modulus: self.modulus,
        }
    }

    /// Indices fixed by g (the unit eigenvalue directions).
    pub fn fixed_indices(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] == 0).collect()
    }

    /// Indices moved by g.
    pub fn moving_indices(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] != 0).collect()
    }

    pub fn d_g(&self) -> usize {
        self.exps.iter().filter(|&&e| e != 0).count()
    }

    /// Sum of the fractional rotation numbers a_i / n.
    pub fn age(&self) -> Rational {
        let sum: i64 = self.exps.iter().map(|&e| e as i64).sum();
        Rational::new(sum, self.modulus as i64)
    }

    /// Exponent k with det(g) = zeta^k.
    pub fn det_exponent(&self) -> u64 {
        self.exps.iter().sum::<u64>() % self.modulus
    }

    /// Character exponent of g on the x-part of a monomial: sum a_i e_i mod n.
    pub fn char_exponent(&self, m: &Monomial) -> u64 {
        let mut acc: u64 = 0;
        for (i, &a) in self.exps.iter().enumerate() {
            acc = (acc + a * m.exp(Block::X, i) as u64) % self.modulus;
        }
        acc
    }

    /// The eigenvalue of g on coordinate i, in a field whose order is a
    /// multiple of the group modulus.
    pub fn eigenvalue(&self, i: usize, field: &Arc<CycField>) -> CycScalar {
        root_of_unity(field, self.modulus, self.exps[i] as i64)
    }

    /// All coordinate eigenvalues, the scaling vector of g.
    pub fn scales(&self, field: &Arc<CycField>) -> Vec<CycScalar> {
        (0..self.nvars()).map(|i| self.eigenvalue(i, field)).collect()
    }

    /// Scaling vector of the projection onto the fixed locus: 1 on fixed
    /// coordinates, 0 on moving ones.
    pub fn fixed_projection_scales(&self, field: &Arc<CycField>) -> Vec<CycScalar> {
        self.exps
            .iter()
            .map(|&e| {
                if e == 0 {
                    CycScalar::one(field)
                } else {
                    CycScalar::zero(field)
                }
            })
            .collect()
    }

    pub fn exps_string(&self) -> String {
        self.exps
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl std::fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) mod {}", self.exps_string(), self.modulus)
    }
}

/// zeta_modulus^k expressed in `field`, whose order must be a multiple of
/// `modulus`.
pub fn root_of_unity(field: &Arc<CycField>, modulus: u64, k: i64) -> CycScalar {
    let m = field.order();
    assert!(
        m.is_multiple_of(modulus),
        "field order {} does not contain the {}-th roots of unity",
        m,
        modulus
    );
    CycScalar::zeta_pow(field, k * (m / modulus) as i64)
}

/// Closes the generator set under multiplication and checks every generator
/// preserves W. Elements come back sorted with the identity first.
pub fn generate_group(
    generators: &[GroupElement],
    nvars: usize,
    modulus: u64,
    w: &MultiPoly,
) -> Result<Vec<GroupElement>> {
    for g in generators {
        if g.nvars() != nvars || g.modulus() != modulus {
            return Err(Error::Config(
                "generator shape does not match the model".into(),
            ));
        }
        for (m, _) in w.terms() {
            let chi = g.char_exponent(m);
            if chi != 0 {
                return Err(Error::Validation(format!(
                    "generator ({}) does not preserve W: monomial {} has character exponent {} (mod {})",
                    g.exps_string(),
                    m,
                    chi,
                    modulus
                )));
            }
        }
    }
    let identity = GroupElement::identity(nvars, modulus);
    let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(g) = frontier.pop() {
        for gen in generators {
            let h = g.mul(gen);
            if seen.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    let mut out: Vec<GroupElement> = seen.into_iter().collect();
    // Lexicographic sort puts the all-zero identity first.
    out.sort();
    debug_assert!(out[0].is_identity());
    Ok(out)
}

/// Integer or half-integer t-exponent of the pair (g, h):
/// (d_g + d_h - d_{gh}) / 2.
pub fn pair_defect(g: &GroupElement, h: &GroupElement) -> Rational {
    let dg = g.d_g() as i64;
    let dh = h.d_g() as i64;
    let dgh = g.mul(h).d_g() as i64;
    Rational::new(dg + dh - dgh, 2)
}

#[derive(Clone, Debug)]
pub struct SectorData {
    pub element: GroupElement,
    pub fixed: Vec<usize>,
    pub moving: Vec<usize>,
    pub d_g: usize,
    pub age: Rational,
}

pub fn sector_data(g: &GroupElement) -> SectorData {
    SectorData {
        fixed: g.fixed_indices(),
        moving: g.moving_indices(),
        d_g: g.d_g(),
        age: g.age(),
        element: g.clone(),
    }
}
