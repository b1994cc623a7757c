//! Named verification suites over a built sector algebra. Every suite
//! walks an exhaustive monomial basis, so a passing report is a finite
//! certificate for the model at hand, not a sampled smoke test.

use crate::clifford::{mask_of, shuffle_sign};
use crate::error::{Error, Result};
use crate::group::root_of_unity;
use crate::koszul::{
    chain_cap_sigma, chain_cup_sigma, sector_dimension_oracle, verify_conjugation,
    verify_square_zero,
};
use crate::orbifold::{TwistedAlgebra, TwistedElement};
use crate::poly::MultiPoly;
use crate::scalar::CycScalar;

#[derive(Clone, Debug)]
pub struct CheckItem {
    pub name: &'static str,
    pub passed: bool,
    /// Informational items report observations and never gate the verdict.
    pub informational: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed || i.informational)
    }

    fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    /// Re-derive every structure constant through the chain-level complexes.
    pub oracles: bool,
    /// Recount sector dimensions through weight-slice ranks.
    pub dimensions: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            oracles: true,
            dimensions: true,
        }
    }
}

fn basis_elements(alg: &TwistedAlgebra, omega: bool) -> Vec<(usize, TwistedElement)> {
    let mut out = Vec::new();
    for s in 0..alg.order() {
        for m in alg.milnor(s).basis() {
            let f = MultiPoly::from_terms(
                alg.nvars(),
                alg.field(),
                [(m.clone(), CycScalar::one(alg.field()))],
            );
            out.push((s, alg.class_element(s, &f, omega)));
        }
    }
    out
}

pub fn check_unit(alg: &TwistedAlgebra) -> Result<CheckItem> {
    let one = alg.unit();
    let mut total = 0usize;
    let mut failed = 0usize;
    for (_, a) in basis_elements(alg, false) {
        total += 1;
        if alg.cup(&one, &a)? != a || alg.cup(&a, &one)? != a {
            failed += 1;
        }
    }
    for (_, w) in basis_elements(alg, true) {
        total += 1;
        if alg.cap(&w, &one)? != w {
            failed += 1;
        }
    }
    Ok(CheckItem {
        name: "unit",
        passed: failed == 0,
        informational: false,
        detail: format!("{failed} of {total} basis classes break the unit laws"),
    })
}

pub fn check_braided_commutativity(alg: &TwistedAlgebra) -> Result<CheckItem> {
    let basis = basis_elements(alg, false);
    let mut total = 0usize;
    let mut failed = 0usize;
    for (gi, a) in &basis {
        let p1 = alg.part_parity(*gi, false);
        for (hi, b) in &basis {
            let p2 = alg.part_parity(*hi, false);
            total += 1;
            let lhs = alg.cup(a, b)?;
            let twisted = alg.g_act(&alg.group()[*hi].inverse(), a)?;
            let mut rhs = alg.cup(b, &twisted)?;
            if p1 & p2 == 1 {
                rhs = rhs.neg();
            }
            if lhs != rhs {
                failed += 1;
            }
        }
    }
    Ok(CheckItem {
        name: "braided-commutativity",
        passed: failed == 0,
        informational: false,
        detail: format!("{failed} of {total} ordered pairs break the braiding relation"),
    })
}

pub fn check_associativity(alg: &TwistedAlgebra) -> Result<CheckItem> {
    let basis = basis_elements(alg, false);
    let mut total = 0usize;
    let mut failed = 0usize;
    for (_, a) in &basis {
        for (_, b) in &basis {
            let ab = alg.cup(a, b)?;
            for (_, c) in &basis {
                total += 1;
                if alg.cup(&ab, c)? != alg.cup(a, &alg.cup(b, c)?)? {
                    failed += 1;
                }
            }
        }
    }
    Ok(CheckItem {
        name: "associativity",
        passed: failed == 0,
        informational: false,
        detail: format!("{failed} of {total} triples break associativity"),
    })
}

pub fn check_module_associativity(alg: &TwistedAlgebra) -> Result<CheckItem> {
    let xi = basis_elements(alg, false);
    let omega = basis_elements(alg, true);
    let mut total = 0usize;
    let mut failed = 0usize;
    for (_, w) in &omega {
        for (_, a) in &xi {
            let wa = alg.cap(w, a)?;
            for (_, b) in &xi {
                total += 1;
                if alg.cap(&wa, b)? != alg.cap(w, &alg.cup(a, b)?)? {
                    failed += 1;
                }
            }
        }
    }
    Ok(CheckItem {
        name: "module-associativity",
        passed: failed == 0,
        informational: false,
        detail: format!("{failed} of {total} triples break the module law"),
    })
}

pub fn check_equivariance(alg: &TwistedAlgebra) -> Result<CheckItem> {
    let xi = basis_elements(alg, false);
    let omega = basis_elements(alg, true);
    let mut total = 0usize;
    let mut failed = 0usize;
    for h in alg.group() {
        for (_, a) in &xi {
            let ha = alg.g_act(h, a)?;
            for (_, b) in &xi {
                total += 1;
                let lhs = alg.g_act(h, &alg.cup(a, b)?)?;
                if lhs != alg.cup(&ha, &alg.g_act(h, b)?)? {
                    failed += 1;
                }
            }
        }
        for (_, w) in &omega {
            let hw = alg.g_act(h, w)?;
            for (_, b) in &xi {
                total += 1;
                let lhs = alg.g_act(h, &alg.cap(w, b)?)?;
                if lhs != alg.cap(&hw, &alg.g_act(h, b)?)? {
                    failed += 1;
                }
            }
        }
    }
    Ok(CheckItem {
        name: "equivariance",
        passed: failed == 0,
        informational: false,
        detail: format!("{failed} of {total} acted products differ"),
    })
}

pub fn check_omega_freeness(alg: &TwistedAlgebra) -> Result<CheckItem> {
    let vol = alg.omega_unit();
    let mut total = 0usize;
    let mut failed = 0usize;
    for s in 0..alg.order() {
        for m in alg.milnor(s).basis() {
            total += 1;
            let f = MultiPoly::from_terms(
                alg.nvars(),
                alg.field(),
                [(m.clone(), CycScalar::one(alg.field()))],
            );
            let mapped = alg.cap(&vol, &alg.class_element(s, &f, false))?;
            if mapped != alg.class_element(s, &f, true) {
                failed += 1;
            }
        }
    }
    Ok(CheckItem {
        name: "omega-freeness",
        passed: failed == 0,
        informational: false,
        detail: format!(
            "{failed} of {total} basis classes missed by capping the volume generator"
        ),
    })
}

/// When the defect vanishes the sectors meet transversally and the
/// structure constant must be the bare shuffle sign of merging the two
/// moving index sets.
pub fn check_transversal(alg: &TwistedAlgebra) -> Result<CheckItem> {
    let mut total = 0usize;
    let mut failed = 0usize;
    for gi in 0..alg.order() {
        for hi in 0..alg.order() {
            let entry = alg.sigma(gi, hi);
            if entry.defect != Some(0) {
                continue;
            }
            total += 1;
            let mg = mask_of(&alg.group()[gi].moving_indices());
            let mh = mask_of(&alg.group()[hi].moving_indices());
            let one = MultiPoly::one(alg.nvars(), alg.field());
            let expected = if shuffle_sign(mg, mh) < 0 {
                one.neg()
            } else {
                one
            };
            let gh = alg.group()[gi].mul(&alg.group()[hi]);
            let ghi = alg.sector_index(&gh).expect("closed group");
            if entry.value != alg.milnor(ghi).class_of(&expected) {
                failed += 1;
            }
        }
    }
    Ok(CheckItem {
        name: "transversal-sign",
        passed: failed == 0,
        informational: false,
        detail: format!("{failed} of {total} transversal pairs differ from the shuffle sign"),
    })
}

/// Reports, per sector, whether the inverse-pair constants satisfy the
/// plain determinant relation or the parity-signed one. Informational:
/// the observation is recorded, not required.
pub fn check_det_identity(alg: &TwistedAlgebra) -> Result<CheckItem> {
    let mut plain = 0usize;
    let mut signed = 0usize;
    let mut total = 0usize;
    for (gi, g) in alg.group().iter().enumerate() {
        let gj = alg
            .sector_index(&g.inverse())
            .expect("group is closed under inverses");
        total += 1;
        let fwd = &alg.sigma(gi, gj).value;
        let bwd = &alg.sigma(gj, gi).value;
        let det = root_of_unity(alg.field(), g.modulus(), g.det_exponent() as i64);
        let scaled = fwd.scale(&det);
        if bwd == &scaled {
            plain += 1;
        }
        if bwd == &(if g.d_g() % 2 == 1 { scaled.neg() } else { scaled }) {
            signed += 1;
        }
    }
    Ok(CheckItem {
        name: "det-identity",
        passed: signed == total,
        informational: true,
        detail: format!(
            "parity-signed determinant relation holds on {signed} of {total} sectors, plain form on {plain}"
        ),
    })
}

pub fn check_koszul_conjugation(alg: &TwistedAlgebra) -> Result<CheckItem> {
    let mut failed = 0usize;
    for g in alg.group() {
        let (coh, hom) = verify_conjugation(alg.potential(), g)?;
        let (d2, b2) = verify_square_zero(alg.potential(), g)?;
        if !(coh && hom && d2 && b2) {
            failed += 1;
        }
    }
    Ok(CheckItem {
        name: "koszul-conjugation",
        passed: failed == 0,
        informational: false,
        detail: format!(
            "{failed} of {} sectors break the conjugation or square-zero identities",
            alg.order()
        ),
    })
}

pub fn check_koszul_products(alg: &TwistedAlgebra) -> Result<CheckItem> {
    let mut total = 0usize;
    let mut failed = 0usize;
    for gi in 0..alg.order() {
        for hi in 0..alg.order() {
            total += 1;
            let table = &alg.sigma(gi, hi).value;
            if &chain_cup_sigma(alg, gi, hi)? != table || &chain_cap_sigma(alg, gi, hi)? != table {
                failed += 1;
            }
        }
    }
    Ok(CheckItem {
        name: "koszul-products",
        passed: failed == 0,
        informational: false,
        detail: format!("{failed} of {total} structure constants differ from the chain level"),
    })
}

pub fn check_dimensions(alg: &TwistedAlgebra) -> Result<CheckItem> {
    let mut total = 0usize;
    let mut failed = 0usize;
    let mut skipped = 0usize;
    for (s, g) in alg.group().iter().enumerate() {
        total += 1;
        let Some(dims) = sector_dimension_oracle(alg.potential(), g)? else {
            skipped += 1;
            continue;
        };
        let expect = alg.milnor(s).dim();
        let (carrier, other) = if g.d_g() % 2 == 0 {
            (dims.even, dims.odd)
        } else {
            (dims.odd, dims.even)
        };
        if !(dims.certified && carrier == expect && other == 0) {
            failed += 1;
        }
    }
    let informational = skipped == total;
    Ok(CheckItem {
        name: "dimensions",
        passed: failed == 0,
        informational,
        detail: if informational {
            "skipped: the potential is not quasi-homogeneous".into()
        } else {
            format!("{failed} of {total} sector dimensions disagree ({skipped} skipped)")
        },
    })
}

pub fn run_checks(alg: &TwistedAlgebra, opts: &CheckOptions) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    report.push(check_unit(alg)?);
    report.push(check_braided_commutativity(alg)?);
    report.push(check_associativity(alg)?);
    report.push(check_module_associativity(alg)?);
    report.push(check_equivariance(alg)?);
    report.push(check_omega_freeness(alg)?);
    report.push(check_transversal(alg)?);
    report.push(check_det_identity(alg)?);
    if opts.oracles {
        report.push(check_koszul_conjugation(alg)?);
        report.push(check_koszul_products(alg)?);
    }
    if opts.dimensions {
        report.push(check_dimensions(alg)?);
    }
    Ok(report)
}

/// Runs one named family of checks. `all` runs everything.
pub fn run_suite(alg: &TwistedAlgebra, suite: &str) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    match suite {
        "all" => return run_checks(alg, &CheckOptions::default()),
        "unit" => {
            report.push(check_unit(alg)?);
            report.push(check_omega_freeness(alg)?);
        }
        "braided" => {
            report.push(check_braided_commutativity(alg)?);
            report.push(check_transversal(alg)?);
            report.push(check_det_identity(alg)?);
        }
        "assoc" => {
            report.push(check_associativity(alg)?);
            report.push(check_module_associativity(alg)?);
        }
        "equivariance" => report.push(check_equivariance(alg)?),
        "oracle" => {
            report.push(check_koszul_conjugation(alg)?);
            report.push(check_koszul_products(alg)?);
            report.push(check_dimensions(alg)?);
        }
        other => {
            return Err(Error::Validation(format!(
                "unknown check suite '{other}' (expected braided, assoc, unit, equivariance, oracle, or all)"
            )))
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{generate_group, GroupElement};
    use crate::milnor::LocalMode;
    use crate::parse::parse_poly;
    use crate::scalar::CycField;

    fn build(w: &str, n: usize, gens: &[Vec<i64>], modulus: u64, order: u64) -> TwistedAlgebra {
        let field = CycField::new(order);
        let w = parse_poly(w, n, &field).unwrap();
        let gens: Vec<GroupElement> = gens
            .iter()
            .map(|e| GroupElement::new(e.clone(), modulus))
            .collect();
        let group = generate_group(&gens, n, modulus, &w).unwrap();
        TwistedAlgebra::build(w, group, LocalMode::Auto, 32).unwrap()
    }

    #[test]
    fn the_cubic_passes_every_check() {
        let alg = build("x1^3", 1, &[vec![1]], 3, 3);
        let report = run_checks(&alg, &CheckOptions::default()).unwrap();
        assert!(report.passed(), "{:#?}", report.items);
        let det = report
            .items
            .iter()
            .find(|i| i.name == "det-identity")
            .unwrap();
        assert!(det.passed, "{}", det.detail);
    }

    #[test]
    fn the_chain_passes_every_check() {
        let alg = build("x1^3*x2 + x2^4", 2, &[vec![1, 9]], 12, 12);
        let report = run_checks(&alg, &CheckOptions::default()).unwrap();
        assert!(report.passed(), "{:#?}", report.items);
    }

    #[test]
    fn fermat_pair_has_genuine_transversal_pairs() {
        let alg = build("x1^3 + x2^3", 2, &[vec![1, 0], vec![0, 1]], 3, 3);
        let item = check_transversal(&alg).unwrap();
        assert!(item.passed, "{}", item.detail);
        // (1,0) against (0,1) meets transversally in both orders
        let g = alg.sector_index(&GroupElement::new(vec![1, 0], 3)).unwrap();
        let h = alg.sector_index(&GroupElement::new(vec![0, 1], 3)).unwrap();
        assert_eq!(alg.sigma(g, h).defect, Some(0));
        let one = MultiPoly::one(alg.nvars(), alg.field());
        assert_eq!(alg.sigma(g, h).value, one);
        assert_eq!(alg.sigma(h, g).value, one.neg());
    }
}
