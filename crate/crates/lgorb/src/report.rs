//! Structured result documents and their plain, JSON, and LaTeX renderings.
//!
//! Every command of the batch interface produces one of the document types
//! here. The documents serialize to a stable JSON schema: field order is
//! fixed, collections are emitted in the deterministic sector order of the
//! algebra, and scalars use the portable `{"order", "coeffs"}` encoding, so
//! identical inputs give byte-identical output.

use crate::checks::{run_suite, CheckReport};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::koszul::{
    chain_cap_sigma, chain_cup_sigma, quasi_weights, sector_dimension_oracle,
    verify_conjugation, verify_square_zero,
};
use crate::model::Model;
use crate::orbifold::TwistedAlgebra;
use crate::poly::{Monomial, MultiPoly};
use crate::scalar::CycScalar;
use crate::surface::{surface_report, SurfaceReport};
use crate::twisted_jacobian::CompareVerdict;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Json,
    Latex,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "plain" => Ok(Format::Plain),
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            other => Err(Error::Validation(format!(
                "unknown format '{other}' (expected plain, json, or latex)"
            ))),
        }
    }
}

/// Renderings shared by every document type.
pub trait Render {
    fn plain(&self) -> String;
    fn latex(&self) -> String;
}

fn parity_name(p: u8) -> String {
    if p.is_multiple_of(2) { "even" } else { "odd" }.to_string()
}

fn rat_string(r: &num::Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

// ---------------------------------------------------------------------------
// sectors

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorRow {
    pub sector: Vec<u64>,
    pub d_g: usize,
    pub age: String,
    pub dim: usize,
    pub parity: String,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorsDoc {
    pub model: String,
    pub potential: String,
    pub nvars: usize,
    pub group_order: usize,
    pub modulus: u64,
    pub field_order: u64,
    pub local: bool,
    pub sectors: Vec<SectorRow>,
    pub total_even: usize,
    pub total_odd: usize,
}

pub fn sectors_doc(model: &Model) -> SectorsDoc {
    let alg = &model.algebra;
    let mut sectors = Vec::new();
    let mut total_even = 0;
    let mut total_odd = 0;
    for (i, g) in alg.group().iter().enumerate() {
        let mil = alg.milnor(i);
        let parity = alg.part_parity(i, false);
        if parity == 0 {
            total_even += mil.dim();
        } else {
            total_odd += mil.dim();
        }
        sectors.push(SectorRow {
            sector: g.exps().to_vec(),
            d_g: g.d_g(),
            age: rat_string(&g.age()),
            dim: mil.dim(),
            parity: parity_name(parity),
            basis: mil.basis().iter().map(|m| m.to_string()).collect(),
        });
    }
    SectorsDoc {
        model: model.name(),
        potential: alg.potential().to_string(),
        nvars: alg.nvars(),
        group_order: alg.order(),
        modulus: model.modulus,
        field_order: model.field_order,
        local: alg.milnor(alg.identity_index()).is_local(),
        sectors,
        total_even,
        total_odd,
    }
}

impl Render for SectorsDoc {
    fn plain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "model {}: W = {}, group order {}, field Q(zeta_{}), local {}",
            self.model,
            self.potential,
            self.group_order,
            self.field_order,
            if self.local { "on" } else { "off" },
        );
        for s in &self.sectors {
            let _ = writeln!(
                out,
                "sector ({}): d_g={} age={} dim={} parity={} basis: {}",
                join_u64(&s.sector),
                s.d_g,
                s.age,
                s.dim,
                s.parity,
                s.basis.join(", "),
            );
        }
        let _ = write!(
            out,
            "graded dimension: even {}, odd {}",
            self.total_even, self.total_odd
        );
        out
    }

    fn latex(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "% model {}", self.model);
        let _ = writeln!(out, "\\begin{{tabular}}{{lrrrl}}");
        let _ = writeln!(
            out,
            "g & d_g & \\mathrm{{age}} & \\dim & \\text{{basis}}\\\\\\hline"
        );
        for s in &self.sectors {
            let _ = writeln!(
                out,
                "({}) & {} & {} & {} & ${}$\\\\",
                join_u64(&s.sector),
                s.d_g,
                latex_rat_str(&s.age),
                s.dim,
                s.basis
                    .iter()
                    .map(|b| latex_monomial_str(b))
                    .collect::<Vec<_>>()
                    .join(",\\ "),
            );
        }
        let _ = write!(out, "\\end{{tabular}}");
        out
    }
}

// ---------------------------------------------------------------------------
// sigma and the multiplication tables

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub g: Vec<u64>,
    pub h: Vec<u64>,
    pub product_sector: Vec<u64>,
    /// The power of the formal variable carried by the product; None when
    /// the defect is not a non-negative integer and the entry vanishes.
    pub t_exponent: Option<u64>,
    /// Coordinates of the value in the staircase basis of the product
    /// sector's Milnor algebra.
    pub coeffs: Vec<CycScalar>,
    pub display: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableDoc {
    pub model: String,
    pub kind: String,
    pub entries: Vec<TableEntry>,
}

fn table_entry(alg: &TwistedAlgebra, gi: usize, hi: usize) -> TableEntry {
    let g = &alg.group()[gi];
    let h = &alg.group()[hi];
    let gh = g.mul(h);
    let ghi = alg.sector_index(&gh).expect("group is closed");
    let entry = alg.sigma(gi, hi);
    TableEntry {
        g: g.exps().to_vec(),
        h: h.exps().to_vec(),
        product_sector: gh.exps().to_vec(),
        t_exponent: entry.defect,
        coeffs: alg.milnor(ghi).coeff_vector(&entry.value),
        display: entry.value.to_string(),
    }
}

/// The full generator table: sigma over every ordered pair of sectors.
pub fn table_doc(model: &Model) -> TableDoc {
    let alg = &model.algebra;
    let mut entries = Vec::new();
    for gi in 0..alg.order() {
        for hi in 0..alg.order() {
            entries.push(table_entry(alg, gi, hi));
        }
    }
    TableDoc {
        model: model.name(),
        kind: "cup".to_string(),
        entries,
    }
}

/// The cap table: omega-generator against xi-generator over every pair.
pub fn cap_table_doc(model: &Model) -> Result<TableDoc> {
    let alg = &model.algebra;
    let mut entries = Vec::new();
    for gi in 0..alg.order() {
        for hi in 0..alg.order() {
            let w = alg.omega_generator(gi);
            let x = alg.generator(hi);
            let prod = alg.cap(&w, &x)?;
            let g = &alg.group()[gi];
            let h = &alg.group()[hi];
            let gh = g.mul(h);
            let ghi = alg.sector_index(&gh).expect("group is closed");
            let (t, value) = match prod.parts().next() {
                Some(((_, t), f)) => (Some(*t as u64), f.clone()),
                None => (
                    alg.sigma(gi, hi).defect,
                    MultiPoly::zero(alg.nvars(), alg.field()),
                ),
            };
            entries.push(TableEntry {
                g: g.exps().to_vec(),
                h: h.exps().to_vec(),
                product_sector: gh.exps().to_vec(),
                t_exponent: t,
                coeffs: alg.milnor(ghi).coeff_vector(&value),
                display: value.to_string(),
            });
        }
    }
    Ok(TableDoc {
        model: model.name(),
        kind: "cap".to_string(),
        entries,
    })
}

pub fn sigma_doc(model: &Model, g: &[i64], h: &[i64]) -> Result<TableDoc> {
    let gi = resolve_sector(model, g)?;
    let hi = resolve_sector(model, h)?;
    Ok(TableDoc {
        model: model.name(),
        kind: "sigma".to_string(),
        entries: vec![table_entry(&model.algebra, gi, hi)],
    })
}

/// Maps exponents given modulo the configured order onto a sector of the
/// (possibly reduced) built group.
pub fn resolve_sector(model: &Model, exps: &[i64]) -> Result<usize> {
    let alg = &model.algebra;
    if exps.len() != alg.nvars() {
        return Err(Error::Validation(format!(
            "expected {} exponents, got {}",
            alg.nvars(),
            exps.len()
        )));
    }
    let m0 = model.config.order;
    let k = (m0 / model.modulus) as i64;
    let mut reduced = Vec::with_capacity(exps.len());
    for &e in exps {
        let e = e.rem_euclid(m0 as i64);
        if e % k != 0 {
            return Err(Error::Validation(format!(
                "({}) is not an element of the symmetry group",
                join_i64(exps)
            )));
        }
        reduced.push(e / k);
    }
    let g = GroupElement::new(reduced, model.modulus);
    model.algebra.sector_index(&g).ok_or_else(|| {
        Error::Validation(format!(
            "({}) is not an element of the symmetry group",
            join_i64(exps)
        ))
    })
}

impl Render for TableDoc {
    fn plain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "model {}: {} table", self.model, self.kind);
        for e in &self.entries {
            let t = match e.t_exponent {
                Some(t) => format!("t^{t}"),
                None => "t^-".to_string(),
            };
            let _ = writeln!(
                out,
                "{}(({}),({})) {} = {}",
                if self.kind == "cap" { "cap" } else { "sigma" },
                join_u64(&e.g),
                join_u64(&e.h),
                t,
                e.display,
            );
        }
        out.truncate(out.trim_end().len());
        out
    }

    fn latex(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "% model {}, {} table", self.model, self.kind);
        let _ = writeln!(out, "\\begin{{tabular}}{{llcl}}");
        let head = if self.kind == "cap" { "\\omega_g\\cap\\xi_h" } else { "\\sigma_{g,h}" };
        let _ = writeln!(out, "g & h & t & ${head}$\\\\\\hline");
        for e in &self.entries {
            let t = match e.t_exponent {
                Some(t) => format!("t^{{{t}}}"),
                None => "-".to_string(),
            };
            let _ = writeln!(
                out,
                "({}) & ({}) & ${}$ & ${}$\\\\",
                join_u64(&e.g),
                join_u64(&e.h),
                t,
                latex_poly_str(&e.display),
            );
        }
        let _ = write!(out, "\\end{{tabular}}");
        out
    }
}

// ---------------------------------------------------------------------------
// invariants and the invariant-algebra table

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantSectorRow {
    pub sector: Vec<u64>,
    pub d_g: usize,
    pub dim: usize,
    pub invariant_dim: usize,
    pub parity: String,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantsDoc {
    pub model: String,
    pub omega: bool,
    pub sectors: Vec<InvariantSectorRow>,
    pub total_even: usize,
    pub total_odd: usize,
}

pub fn invariants_doc(model: &Model, omega: bool) -> InvariantsDoc {
    let alg = &model.algebra;
    let mut rows = Vec::new();
    let mut total_even = 0;
    let mut total_odd = 0;
    for inv in alg.invariants(omega) {
        if inv.parity % 2 == 0 {
            total_even += inv.invariant_dim;
        } else {
            total_odd += inv.invariant_dim;
        }
        rows.push(InvariantSectorRow {
            sector: inv.sector.clone(),
            d_g: inv.d_g,
            dim: inv.dim,
            invariant_dim: inv.invariant_dim,
            parity: parity_name(inv.parity),
            basis: inv.invariant_basis.iter().map(|m| m.to_string()).collect(),
        });
    }
    InvariantsDoc {
        model: model.name(),
        omega,
        sectors: rows,
        total_even,
        total_odd,
    }
}

impl Render for InvariantsDoc {
    fn plain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "model {}: G-invariants of the {} part",
            self.model,
            if self.omega { "omega" } else { "xi" },
        );
        for s in &self.sectors {
            let _ = writeln!(
                out,
                "sector ({}): dim {} invariant {} parity {} basis: {}",
                join_u64(&s.sector),
                s.dim,
                s.invariant_dim,
                s.parity,
                if s.basis.is_empty() {
                    "-".to_string()
                } else {
                    s.basis.join(", ")
                },
            );
        }
        let _ = write!(
            out,
            "invariant graded dimension: even {}, odd {}",
            self.total_even, self.total_odd
        );
        out
    }

    fn latex(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "% model {}", self.model);
        let _ = writeln!(out, "\\begin{{tabular}}{{lrrl}}");
        let _ = writeln!(out, "g & \\dim & \\dim^G & \\text{{basis}}\\\\\\hline");
        for s in &self.sectors {
            let _ = writeln!(
                out,
                "({}) & {} & {} & ${}$\\\\",
                join_u64(&s.sector),
                s.dim,
                s.invariant_dim,
                s.basis
                    .iter()
                    .map(|b| latex_monomial_str(b))
                    .collect::<Vec<_>>()
                    .join(",\\ "),
            );
        }
        let _ = write!(out, "\\end{{tabular}}");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantBasisElement {
    pub index: usize,
    pub sector: Vec<u64>,
    pub poly: String,
    pub parity: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantTerm {
    pub basis_index: usize,
    pub coeff: CycScalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantProductRow {
    pub left: usize,
    pub right: usize,
    pub t_exponent: Option<u64>,
    pub terms: Vec<InvariantTerm>,
    pub display: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantTableDoc {
    pub model: String,
    pub basis: Vec<InvariantBasisElement>,
    pub products: Vec<InvariantProductRow>,
}

/// The multiplication table of the invariant algebra, with products
/// expanded over the invariant basis.
pub fn invariant_table_doc(model: &Model) -> Result<InvariantTableDoc> {
    let alg = &model.algebra;
    // The flat invariant basis: (sector, monomial) pairs in sector order.
    let mut basis = Vec::new();
    let mut keys: Vec<(usize, Monomial)> = Vec::new();
    for (si, inv) in alg.invariants(false).iter().enumerate() {
        for m in &inv.invariant_basis {
            basis.push(InvariantBasisElement {
                index: basis.len(),
                sector: inv.sector.clone(),
                poly: m.to_string(),
                parity: parity_name(inv.parity),
            });
            keys.push((si, m.clone()));
        }
    }
    let elements: Vec<_> = keys
        .iter()
        .map(|(si, m)| {
            let p = MultiPoly::from_terms(
                alg.nvars(),
                alg.field(),
                [(m.clone(), CycScalar::one(alg.field()))],
            );
            alg.class_element(*si, &p, false)
        })
        .collect();
    let mut products = Vec::new();
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            let prod = alg.cup(a, b)?;
            let mut terms = Vec::new();
            let mut display = "0".to_string();
            let mut t_exp = None;
            if let Some(((si, t), f)) = prod.parts().next() {
                t_exp = Some(*t as u64);
                display = f.to_string();
                // A product of invariants is invariant, so its staircase
                // support must lie inside the invariant basis monomials.
                for (m, c) in f.terms() {
                    let key = (*si, m.clone());
                    let pos = keys.iter().position(|k| *k == key).ok_or_else(|| {
                        Error::Computation(format!(
                            "product of invariants left the invariant span at {m}"
                        ))
                    })?;
                    terms.push(InvariantTerm {
                        basis_index: pos,
                        coeff: c.clone(),
                    });
                }
            }
            products.push(InvariantProductRow {
                left: i,
                right: j,
                t_exponent: t_exp,
                terms,
                display,
            });
        }
    }
    Ok(InvariantTableDoc {
        model: model.name(),
        basis,
        products,
    })
}

impl Render for InvariantTableDoc {
    fn plain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "model {}: invariant algebra", self.model);
        for b in &self.basis {
            let _ = writeln!(
                out,
                "u{} = ({})*xi[{}]  ({})",
                b.index,
                b.poly,
                join_u64(&b.sector),
                b.parity,
            );
        }
        for p in &self.products {
            let rhs = if p.terms.is_empty() {
                "0".to_string()
            } else {
                p.terms
                    .iter()
                    .map(|t| {
                        if t.coeff.is_one() {
                            format!("u{}", t.basis_index)
                        } else {
                            format!("({})*u{}", t.coeff, t.basis_index)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" + ")
            };
            let _ = writeln!(out, "u{} * u{} = {}", p.left, p.right, rhs);
        }
        out.truncate(out.trim_end().len());
        out
    }

    fn latex(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "% model {}, invariant algebra", self.model);
        let _ = writeln!(out, "\\begin{{align*}}");
        for b in &self.basis {
            let _ = writeln!(
                out,
                "u_{{{}}} &= {}\\,\\xi_{{({})}}\\\\",
                b.index,
                latex_poly_str(&b.poly),
                join_u64(&b.sector),
            );
        }
        for p in &self.products {
            let rhs = if p.terms.is_empty() {
                "0".to_string()
            } else {
                p.terms
                    .iter()
                    .map(|t| {
                        if t.coeff.is_one() {
                            format!("u_{{{}}}", t.basis_index)
                        } else {
                            format!(
                                "\\left({}\\right)u_{{{}}}",
                                latex_scalar_str(&t.coeff.to_string()),
                                t.basis_index
                            )
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" + ")
            };
            let _ = writeln!(out, "u_{{{}}}\\cup u_{{{}}} &= {}\\\\", p.left, p.right, rhs);
        }
        let _ = write!(out, "\\end{{align*}}");
        out
    }
}

// ---------------------------------------------------------------------------
// checks

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    pub passed: bool,
    pub informational: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub model: String,
    pub suite: String,
    pub items: Vec<CheckRow>,
    pub passed: bool,
}

pub fn check_doc(model: &Model, suite: &str) -> Result<CheckDoc> {
    let report = run_suite(&model.algebra, suite)?;
    Ok(check_doc_from(model.name(), suite, &report))
}

pub fn check_doc_from(model: String, suite: &str, report: &CheckReport) -> CheckDoc {
    CheckDoc {
        model,
        suite: suite.to_string(),
        items: report
            .items
            .iter()
            .map(|i| CheckRow {
                name: i.name.to_string(),
                passed: i.passed,
                informational: i.informational,
                detail: i.detail.clone(),
            })
            .collect(),
        passed: report.passed(),
    }
}

impl Render for CheckDoc {
    fn plain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "model {}: check suite '{}'", self.model, self.suite);
        for i in &self.items {
            let mark = if i.passed {
                "pass"
            } else if i.informational {
                "info"
            } else {
                "FAIL"
            };
            let _ = writeln!(out, "[{mark}] {}: {}", i.name, i.detail);
        }
        let _ = write!(out, "result: {}", if self.passed { "pass" } else { "FAIL" });
        out
    }

    fn latex(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "% model {}, suite {}", self.model, self.suite);
        let _ = writeln!(out, "\\begin{{tabular}}{{lll}}");
        let _ = writeln!(out, "check & status & detail\\\\\\hline");
        for i in &self.items {
            let mark = if i.passed {
                "pass"
            } else if i.informational {
                "info"
            } else {
                "fail"
            };
            let _ = writeln!(
                out,
                "{} & {} & {}\\\\",
                latex_escape(&i.name),
                mark,
                latex_escape(&i.detail),
            );
        }
        let _ = write!(out, "\\end{{tabular}}");
        out
    }
}

// ---------------------------------------------------------------------------
// comparison against the hand-built orbifold algebra

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaRow {
    pub sector: Vec<u64>,
    pub alpha: Option<CycScalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareDoc {
    pub model: String,
    pub blocks: Vec<String>,
    pub verdict: String,
    pub detail: String,
    pub alpha: Vec<AlphaRow>,
    pub alpha_symmetric: bool,
}

pub fn compare_doc(model: &Model) -> Result<CompareDoc> {
    let report = model.compare_jac()?;
    let verdict = match report.verdict {
        CompareVerdict::IsomorphicViaRescaling => "isomorphic_via_rescaling",
        CompareVerdict::VanishingMismatch => "vanishing_mismatch",
        CompareVerdict::Inconclusive => "inconclusive",
    };
    // alpha_g must agree with alpha_{g^{-1}} whenever both are present.
    let mut alpha_symmetric = true;
    for (exps, a) in &report.alpha {
        let g = GroupElement::new(exps.iter().map(|&e| e as i64).collect(), model.modulus);
        let inv = g.inverse().exps().to_vec();
        let b = report
            .alpha
            .iter()
            .find(|(e, _)| *e == inv)
            .and_then(|(_, b)| b.as_ref());
        if let (Some(a), Some(b)) = (a.as_ref(), b) {
            if a != b {
                alpha_symmetric = false;
            }
        }
    }
    Ok(CompareDoc {
        model: model.name(),
        blocks: report.blocks.iter().map(|b| b.describe()).collect(),
        verdict: verdict.to_string(),
        detail: report.detail.clone(),
        alpha: report
            .alpha
            .iter()
            .map(|(s, a)| AlphaRow {
                sector: s.clone(),
                alpha: a.clone(),
            })
            .collect(),
        alpha_symmetric,
    })
}

impl Render for CompareDoc {
    fn plain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "model {}: comparison", self.model);
        let _ = writeln!(out, "atomic blocks: {}", self.blocks.join(", "));
        for row in &self.alpha {
            match &row.alpha {
                Some(a) => {
                    let _ = writeln!(out, "alpha({}) = {}", join_u64(&row.sector), a);
                }
                None => {
                    let _ = writeln!(out, "alpha({}) undetermined", join_u64(&row.sector));
                }
            }
        }
        let _ = writeln!(out, "alpha symmetric: {}", self.alpha_symmetric);
        let _ = write!(out, "verdict: {} ({})", self.verdict, self.detail);
        out
    }

    fn latex(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "% model {}", self.model);
        let _ = writeln!(out, "\\begin{{tabular}}{{ll}}");
        let _ = writeln!(out, "g & \\alpha_g\\\\\\hline");
        for row in &self.alpha {
            let a = match &row.alpha {
                Some(a) => format!("${}$", latex_scalar_str(&a.to_string())),
                None => "--".to_string(),
            };
            let _ = writeln!(out, "({}) & {}\\\\", join_u64(&row.sector), a);
        }
        let _ = writeln!(out, "\\end{{tabular}}");
        let _ = write!(out, "\\par verdict: {}", latex_escape(&self.verdict));
        out
    }
}

// ---------------------------------------------------------------------------
// oracle

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleSectorRow {
    pub sector: Vec<u64>,
    pub conjugation: bool,
    pub conjugation_dual: bool,
    pub square_zero: bool,
    pub square_zero_dual: bool,
    pub milnor_dim: usize,
    pub parity: String,
    pub oracle_even: Option<usize>,
    pub oracle_odd: Option<usize>,
    pub certified: Option<bool>,
    pub dims_match: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleDoc {
    pub model: String,
    pub quasi_homogeneous: bool,
    pub sectors: Vec<OracleSectorRow>,
    pub cup_matches: usize,
    pub cap_matches: usize,
    pub pair_total: usize,
    pub passed: bool,
}

pub fn oracle_doc(model: &Model) -> Result<OracleDoc> {
    let alg = &model.algebra;
    let w = alg.potential();
    let qh = quasi_weights(w).is_some();
    let mut sectors = Vec::new();
    let mut passed = true;
    for (i, g) in alg.group().iter().enumerate() {
        let (c1, c2) = verify_conjugation(w, g)?;
        let (s1, s2) = verify_square_zero(w, g)?;
        let dims = sector_dimension_oracle(w, g)?;
        let parity = alg.part_parity(i, false);
        let milnor_dim = alg.milnor(i).dim();
        let dims_match = dims.as_ref().map(|d| {
            let (same, other) = if parity == 0 {
                (d.even, d.odd)
            } else {
                (d.odd, d.even)
            };
            same == milnor_dim && other == 0 && d.certified
        });
        passed &= c1 && c2 && s1 && s2 && dims_match.unwrap_or(true);
        sectors.push(OracleSectorRow {
            sector: g.exps().to_vec(),
            conjugation: c1,
            conjugation_dual: c2,
            square_zero: s1,
            square_zero_dual: s2,
            milnor_dim,
            parity: parity_name(parity),
            oracle_even: dims.as_ref().map(|d| d.even),
            oracle_odd: dims.as_ref().map(|d| d.odd),
            certified: dims.as_ref().map(|d| d.certified),
            dims_match,
        });
    }
    let mut cup_matches = 0;
    let mut cap_matches = 0;
    let mut pair_total = 0;
    for gi in 0..alg.order() {
        for hi in 0..alg.order() {
            pair_total += 1;
            let table = &alg.sigma(gi, hi).value;
            if &chain_cup_sigma(alg, gi, hi)? == table {
                cup_matches += 1;
            }
            if &chain_cap_sigma(alg, gi, hi)? == table {
                cap_matches += 1;
            }
        }
    }
    passed &= cup_matches == pair_total && cap_matches == pair_total;
    Ok(OracleDoc {
        model: model.name(),
        quasi_homogeneous: qh,
        sectors,
        cup_matches,
        cap_matches,
        pair_total,
        passed,
    })
}

impl Render for OracleDoc {
    fn plain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "model {}: independent verification (quasi-homogeneous: {})",
            self.model, self.quasi_homogeneous,
        );
        for s in &self.sectors {
            let dims = match (s.oracle_even, s.oracle_odd) {
                (Some(e), Some(o)) => format!(
                    "complex dims even {e} odd {o}{} vs algebra {} ({}): {}",
                    if s.certified == Some(true) {
                        ""
                    } else {
                        " (uncertified)"
                    },
                    s.milnor_dim,
                    s.parity,
                    if s.dims_match == Some(true) { "match" } else { "MISMATCH" },
                ),
                _ => "complex dims skipped".to_string(),
            };
            let _ = writeln!(
                out,
                "sector ({}): conjugation {}/{} square-zero {}/{} {}",
                join_u64(&s.sector),
                ok(s.conjugation),
                ok(s.conjugation_dual),
                ok(s.square_zero),
                ok(s.square_zero_dual),
                dims,
            );
        }
        let _ = writeln!(
            out,
            "chain-level products: cup {}/{} cap {}/{}",
            self.cup_matches, self.pair_total, self.cap_matches, self.pair_total,
        );
        let _ = write!(out, "result: {}", if self.passed { "pass" } else { "FAIL" });
        out
    }

    fn latex(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "% model {}", self.model);
        let _ = writeln!(out, "\\begin{{tabular}}{{lcccc}}");
        let _ = writeln!(out, "g & conj & conj$^\\dagger$ & $D^2$ & dims\\\\\\hline");
        for s in &self.sectors {
            let dims = match (s.oracle_even, s.oracle_odd) {
                (Some(e), Some(o)) => format!("$({e},{o})$"),
                _ => "--".to_string(),
            };
            let _ = writeln!(
                out,
                "({}) & {} & {} & {} & {}\\\\",
                join_u64(&s.sector),
                ok(s.conjugation),
                ok(s.conjugation_dual),
                ok(s.square_zero && s.square_zero_dual),
                dims,
            );
        }
        let _ = writeln!(out, "\\end{{tabular}}");
        let _ = write!(
            out,
            "\\par products: cup {}/{}, cap {}/{}",
            self.cup_matches, self.pair_total, self.cap_matches, self.pair_total,
        );
        out
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

// ---------------------------------------------------------------------------
// surface

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CValueRow {
    pub k: u64,
    pub c: CycScalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceDoc {
    pub genus: u64,
    pub milnor_dim: usize,
    pub milnor_dim_expected: usize,
    pub invariant_even: usize,
    pub invariant_odd: usize,
    pub kernels_match: bool,
    pub sigma_matches: bool,
    pub c_values: Vec<CValueRow>,
    pub top_squares_to_zero: bool,
    pub top_kills_odd: bool,
    pub mismatched_products_vanish: bool,
    pub paired_products_nonzero: bool,
    pub isomorphic: bool,
    pub lines: Vec<String>,
}

pub fn surface_doc(genus: u64) -> Result<SurfaceDoc> {
    let r: SurfaceReport = surface_report(genus)?;
    Ok(SurfaceDoc {
        genus: r.genus,
        milnor_dim: r.milnor_dim,
        milnor_dim_expected: r.milnor_dim_expected,
        invariant_even: r.invariant_even,
        invariant_odd: r.invariant_odd,
        kernels_match: r.kernels_match,
        sigma_matches: r.sigma_matches,
        c_values: r
            .c_values
            .iter()
            .map(|(k, c)| CValueRow { k: *k, c: c.clone() })
            .collect(),
        top_squares_to_zero: r.top_squares_to_zero,
        top_kills_odd: r.top_kills_odd,
        mismatched_products_vanish: r.mismatched_products_vanish,
        paired_products_nonzero: r.paired_products_nonzero,
        isomorphic: r.isomorphic(),
        lines: r.lines.clone(),
    })
}

impl Render for SurfaceDoc {
    fn plain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "genus {} surface model", self.genus);
        for l in &self.lines {
            let _ = writeln!(out, "{l}");
        }
        let _ = write!(
            out,
            "cohomology of the genus-{} surface recovered: {}",
            self.genus,
            if self.isomorphic { "yes" } else { "NO" },
        );
        out
    }

    fn latex(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "% genus {} surface model", self.genus);
        let _ = writeln!(out, "\\begin{{itemize}}");
        for l in &self.lines {
            let _ = writeln!(out, "\\item {}", latex_escape(l));
        }
        let _ = writeln!(out, "\\end{{itemize}}");
        let _ = write!(
            out,
            "\\par isomorphic to $H^*(\\Sigma_{{{}}})$: {}",
            self.genus, self.isomorphic,
        );
        out
    }
}

// ---------------------------------------------------------------------------
// latex helpers

/// Escapes the handful of characters that appear in detail strings.
fn latex_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '_' | '^' | '#' | '%' | '&' | '{' | '}' => {
                out.push('\\');
                out.push(ch);
            }
            '\\' => out.push_str("\\textbackslash "),
            _ => out.push(ch),
        }
    }
    out
}

/// Rewrites the plain scalar rendering into LaTeX (zeta^k -> \zeta^{k}).
fn latex_scalar_str(s: &str) -> String {
    let mut out = String::new();
    let mut rest = s;
    while let Some(pos) = rest.find("zeta") {
        out.push_str(&rest[..pos].replace('*', " "));
        rest = &rest[pos + 4..];
        out.push_str("\\zeta");
        if let Some(tail) = rest.strip_prefix('^') {
            let digits: String = tail.chars().take_while(|c| c.is_ascii_digit()).collect();
            out.push_str(&format!("^{{{digits}}}"));
            rest = &tail[digits.len()..];
        }
    }
    out.push_str(&rest.replace('*', " "));
    out
}

/// Rewrites a plain monomial rendering (x1^3*x2) into LaTeX.
fn latex_monomial_str(s: &str) -> String {
    let mut out = String::new();
    let mut chars = s.chars().peekable();
    while let Some(ch) = chars.next() {
        match ch {
            '*' => out.push(' '),
            '^' => {
                let mut digits = String::new();
                while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    digits.push(chars.next().unwrap());
                }
                out.push_str(&format!("^{{{digits}}}"));
            }
            c if c.is_ascii_alphabetic() => {
                let mut digits = String::new();
                while chars.peek().is_some_and(|d| d.is_ascii_digit()) {
                    digits.push(chars.next().unwrap());
                }
                if digits.is_empty() {
                    out.push(c);
                } else {
                    out.push_str(&format!("{c}_{{{digits}}}"));
                }
            }
            c => out.push(c),
        }
    }
    out
}

/// Rewrites a plain polynomial rendering into LaTeX term by term.
fn latex_poly_str(s: &str) -> String {
    // The plain form is a `+`-separated sum whose parenthesized groups are
    // scalar coefficients; handle both in one pass.
    let mut out = String::new();
    let mut rest = s;
    while let Some(open) = rest.find('(') {
        out.push_str(&latex_monomial_str(&rest[..open]));
        let close = match rest[open..].find(')') {
            Some(c) => open + c,
            None => break,
        };
        out.push_str("\\left(");
        out.push_str(&latex_scalar_str(&rest[open + 1..close]));
        out.push_str("\\right)");
        rest = &rest[close + 1..];
    }
    out.push_str(&latex_monomial_str(rest));
    out
}

/// "p/q" -> \frac{p}{q} unless q = 1.
fn latex_rat_str(s: &str) -> String {
    match s.split_once('/') {
        Some((p, "1")) => format!("${p}$"),
        Some((p, q)) => format!("$\\frac{{{p}}}{{{q}}}$"),
        None => format!("${s}$"),
    }
}

fn join_u64(v: &[u64]) -> String {
    v.iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn join_i64(v: &[i64]) -> String {
    v.iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Parses a comma-separated exponent vector.
pub fn parse_exps(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|p| {
            p.trim().parse::<i64>().map_err(|_| {
                Error::Validation(format!("malformed exponent vector '{text}'"))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::preset;

    #[test]
    fn table_doc_round_trips_and_is_deterministic() {
        let model = Model::build(&preset("x3_z3").unwrap(), false).unwrap();
        let doc = table_doc(&model);
        let json = serde_json::to_string_pretty(&doc).unwrap();
        let back: TableDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(doc, back);
        let model2 = Model::build(&preset("x3_z3").unwrap(), false).unwrap();
        let json2 = serde_json::to_string_pretty(&table_doc(&model2)).unwrap();
        assert_eq!(json, json2);
        assert_eq!(doc.entries.len(), 9);
        // The nonzero off-diagonal entry carries t^1 and one staircase
        // coordinate on x1.
        let entry = doc
            .entries
            .iter()
            .find(|e| e.g == vec![1] && e.h == vec![2])
            .unwrap();
        assert_eq!(entry.t_exponent, Some(1));
        assert_eq!(entry.product_sector, vec![0]);
        assert_eq!(entry.coeffs.len(), 2);
        assert!(entry.coeffs[0].is_zero());
        assert!(!entry.coeffs[1].is_zero());
    }

    #[test]
    fn sectors_doc_renders_all_formats() {
        let model = Model::build(&preset("x3_z3").unwrap(), false).unwrap();
        let doc = sectors_doc(&model);
        assert_eq!(doc.total_even, 2);
        assert_eq!(doc.total_odd, 2);
        assert_eq!(doc.sectors.len(), 3);
        assert_eq!(doc.sectors[0].basis, vec!["1", "x1"]);
        let plain = doc.plain();
        assert!(plain.contains("sector (1): d_g=1 age=1/3 dim=1 parity=odd"));
        let latex = doc.latex();
        assert!(latex.contains("\\begin{tabular}"));
        let back: SectorsDoc =
            serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(doc, back);
    }

    #[test]
    fn invariant_table_expands_in_basis() {
        let model = Model::build(&preset("surface2").unwrap(), false).unwrap();
        let doc = invariant_table_doc(&model).unwrap();
        // 2 even + 4 odd invariant classes.
        assert_eq!(doc.basis.len(), 6);
        assert_eq!(doc.products.len(), 36);
        // Every product row expands inside the basis (no errors) and the
        // nonzero odd pairings hit the top class.
        let nonzero_odd: Vec<_> = doc
            .products
            .iter()
            .filter(|p| {
                doc.basis[p.left].parity == "odd"
                    && doc.basis[p.right].parity == "odd"
                    && !p.terms.is_empty()
            })
            .collect();
        assert_eq!(nonzero_odd.len(), 4);
        for row in nonzero_odd {
            assert_eq!(doc.basis[row.terms[0].basis_index].poly, "x1*x2*x3");
        }
    }

    #[test]
    fn sigma_doc_resolves_configured_exponents() {
        // chain34's group reduces from order 12 to order 12 (no reduction),
        // so exponents pass through; the x3 preset with doubling reduces.
        let model = Model::build(&preset("x3_z3").unwrap(), true).unwrap();
        assert_eq!(model.field_order, 6);
        assert_eq!(model.modulus, 3);
        let doc = sigma_doc(&model, &[1], &[2]).unwrap();
        assert_eq!(doc.entries.len(), 1);
        assert_eq!(doc.entries[0].t_exponent, Some(1));
        assert!(sigma_doc(&model, &[1, 2], &[1]).is_err());
        let plain = doc.plain();
        assert!(plain.contains("sigma((1),(2)) t^1 ="));
    }

    #[test]
    fn check_and_oracle_docs_pass_on_cubic() {
        let model = Model::build(&preset("x3_z3").unwrap(), false).unwrap();
        let cd = check_doc(&model, "braided").unwrap();
        assert!(cd.passed);
        assert!(check_doc(&model, "bogus").is_err());
        let od = oracle_doc(&model).unwrap();
        assert!(od.passed);
        assert!(od.quasi_homogeneous);
        assert_eq!(od.cup_matches, 9);
        assert_eq!(od.cap_matches, 9);
        let plain = od.plain();
        assert!(plain.contains("result: pass"));
    }

    #[test]
    fn compare_doc_reports_alpha_symmetry() {
        let model = Model::build(&preset("chain33").unwrap(), true).unwrap();
        let doc = compare_doc(&model).unwrap();
        assert_eq!(doc.verdict, "isomorphic_via_rescaling");
        assert!(doc.alpha_symmetric);
        assert!(doc.plain().contains("verdict: isomorphic_via_rescaling"));
    }

    #[test]
    fn latex_helpers_rewrite_plain_forms() {
        assert_eq!(latex_monomial_str("x1^3*x2"), "x_{1}^{3} x_{2}");
        assert_eq!(latex_scalar_str("2*zeta^2 - 1"), "2 \\zeta^{2} - 1");
        assert_eq!(
            latex_poly_str("(-2 - zeta)*x1"),
            "\\left(-2 - \\zeta\\right) x_{1}"
        );
        assert_eq!(latex_rat_str("1/3"), "$\\frac{1}{3}$");
        assert_eq!(latex_rat_str("0/1"), "$0$");
    }

    #[test]
    fn surface_doc_serializes() {
        let doc = surface_doc(2).unwrap();
        assert!(doc.isomorphic);
        let back: SurfaceDoc =
            serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(doc, back);
        assert!(doc.plain().contains("recovered: yes"));
    }
}
