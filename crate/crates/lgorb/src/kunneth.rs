//! Direct-sum comparison: the sector algebra of a joined model against
//! the tensor of its factor algebras. The tables are expected to agree
//! up to the parity sign of the interchange and one sign per sector,
//! solved for over F2.

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::model::{tensor_config, Model, ModelConfig};
use crate::orbifold::TwistedAlgebra;
use num::integer::lcm;

pub struct KunnethReport {
    pub consistent: bool,
    pub detail: String,
    /// Per tensor sector: exponent vector and the solved sign.
    pub signs: Vec<(Vec<u64>, i8)>,
}

/// Builds the two factors and their join over a common coefficient field
/// and compares the tables.
pub fn kunneth_models(a: &ModelConfig, b: &ModelConfig) -> Result<KunnethReport> {
    let t_cfg = tensor_config(a, b)?;
    let fa = Model::build(a, false)?.field_order;
    let fb = Model::build(b, false)?.field_order;
    let ft = Model::build(&t_cfg, false)?.field_order;
    let common = lcm(lcm(fa, fb), ft);
    let with_field = |c: &ModelConfig| {
        let mut c = c.clone();
        c.field_order = Some(common);
        Model::build(&c, false)
    };
    let ma = with_field(a)?;
    let mb = with_field(b)?;
    let mt = with_field(&t_cfg)?;
    kunneth_compare(&mt.algebra, &ma.algebra, &mb.algebra)
}

pub fn kunneth_compare(
    t: &TwistedAlgebra,
    a: &TwistedAlgebra,
    b: &TwistedAlgebra,
) -> Result<KunnethReport> {
    let na = a.nvars();
    let nb = b.nvars();
    let n = t.nvars();
    if na + nb != n {
        return Err(Error::Validation(
            "factor variable counts do not add up".into(),
        ));
    }
    if t.field().order() != a.field().order() || t.field().order() != b.field().order() {
        return Err(Error::Config(
            "build the factors and the join over a common field order".into(),
        ));
    }
    let mt = t.group()[0].modulus();
    let m_a = a.group()[0].modulus();
    let m_b = b.group()[0].modulus();
    if !mt.is_multiple_of(m_a) || !mt.is_multiple_of(m_b) {
        return Err(Error::Validation("factor moduli do not divide the join".into()));
    }
    let ka = mt / m_a;
    let kb = mt / m_b;
    // map each joined sector to its factor pair
    let mut split = Vec::with_capacity(t.order());
    for g in t.group() {
        let ea: Vec<i64> = g.exps()[..na].iter().map(|&e| (e / ka) as i64).collect();
        let eb: Vec<i64> = g.exps()[na..].iter().map(|&e| (e / kb) as i64).collect();
        if g.exps()[..na].iter().any(|&e| e % ka != 0)
            || g.exps()[na..].iter().any(|&e| e % kb != 0)
        {
            return Err(Error::Validation(format!(
                "sector ({}) does not split over the factors",
                g.exps_string()
            )));
        }
        let ia = a
            .sector_index(&GroupElement::new(ea, m_a))
            .ok_or_else(|| Error::Validation("missing factor sector".into()))?;
        let ib = b
            .sector_index(&GroupElement::new(eb, m_b))
            .ok_or_else(|| Error::Validation("missing factor sector".into()))?;
        split.push((ia, ib));
    }
    let mut mismatches: Vec<String> = Vec::new();
    for (s, &(ia, ib)) in split.iter().enumerate() {
        let dt = t.milnor(s).dim();
        let dab = a.milnor(ia).dim() * b.milnor(ib).dim();
        if dt != dab {
            mismatches.push(format!(
                "sector ({}): dim {dt} vs {dab} from the factors",
                t.group()[s].exps_string()
            ));
        }
    }
    // equations eps_G + eps_H + eps_GH = rhs over F2, one unknown per sector
    let order = t.order();
    let mut rows: Vec<Vec<u8>> = Vec::new();
    let mut row = vec![0u8; order + 1];
    row[t.identity_index()] = 1;
    rows.push(row);
    for gi in 0..order {
        for hi in 0..order {
            let (ia1, ib1) = split[gi];
            let (ia2, ib2) = split[hi];
            let gh = t.group()[gi].mul(&t.group()[hi]);
            let ghi = t.sector_index(&gh).expect("closed group");
            let sigma_t = &t.sigma(gi, hi).value;
            let sa = &a.sigma(ia1, ia2).value;
            let sb = &b.sigma(ib1, ib2).value;
            if sa.is_zero() || sb.is_zero() || t.sigma(gi, hi).defect.is_none() {
                if !sigma_t.is_zero() {
                    mismatches.push(format!(
                        "pair ({};{}) should vanish by the factors",
                        t.group()[gi].exps_string(),
                        t.group()[hi].exps_string()
                    ));
                }
                continue;
            }
            let interchange = b.group()[ib1].d_g() * a.group()[ia2].d_g();
            let mut expected = t.milnor(ghi).class_of(
                &sa.shift_vars(0, n).mul(&sb.shift_vars(na, n)),
            );
            if interchange % 2 == 1 {
                expected = expected.neg();
            }
            let rhs = if sigma_t == &expected {
                0u8
            } else if sigma_t == &expected.neg() {
                1u8
            } else {
                mismatches.push(format!(
                    "pair ({};{}) differs from the factor product beyond a sign",
                    t.group()[gi].exps_string(),
                    t.group()[hi].exps_string()
                ));
                continue;
            };
            let mut row = vec![0u8; order + 1];
            row[gi] ^= 1;
            row[hi] ^= 1;
            row[ghi] ^= 1;
            row[order] = rhs;
            rows.push(row);
        }
    }
    let solution = solve_f2(rows, order);
    let consistent = mismatches.is_empty() && solution.is_some();
    let signs = match &solution {
        Some(eps) => t
            .group()
            .iter()
            .zip(eps)
            .map(|(g, &e)| (g.exps().to_vec(), if e == 1 { -1i8 } else { 1i8 }))
            .collect(),
        None => Vec::new(),
    };
    let detail = if consistent {
        "the joined table equals the factor tables after one sign per sector".to_string()
    } else if !mismatches.is_empty() {
        mismatches.join("; ")
    } else {
        "no per-sector sign assignment reconciles the tables".to_string()
    };
    Ok(KunnethReport {
        consistent,
        detail,
        signs,
    })
}

fn solve_f2(mut rows: Vec<Vec<u8>>, unknowns: usize) -> Option<Vec<u8>> {
    let mut rank = 0;
    let mut pivot_of = vec![usize::MAX; unknowns];
    for col in 0..unknowns {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] == 1) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] == 1 {
                for c in col..=unknowns {
                    rows[r][c] ^= rows[rank][c];
                }
            }
        }
        pivot_of[col] = rank;
        rank += 1;
    }
    for row in rows.iter().skip(rank) {
        if row[unknowns] == 1 {
            return None;
        }
    }
    let mut eps = vec![0u8; unknowns];
    for col in 0..unknowns {
        if pivot_of[col] != usize::MAX {
            eps[col] = rows[pivot_of[col]][unknowns];
        }
    }
    Some(eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::preset;

    #[test]
    fn the_cubic_pair_satisfies_kunneth() {
        let a = preset("x3_z3").unwrap();
        let report = kunneth_models(&a, &a).unwrap();
        assert!(report.consistent, "{}", report.detail);
        assert_eq!(report.signs.len(), 9);
        let e = report.signs.iter().find(|(e, _)| e == &vec![0, 0]).unwrap();
        assert_eq!(e.1, 1);
    }

    #[test]
    fn chain_times_cubic_satisfies_kunneth() {
        let a = preset("chain33").unwrap();
        let b = preset("x3_z3").unwrap();
        let report = kunneth_models(&a, &b).unwrap();
        assert!(report.consistent, "{}", report.detail);
    }

    #[test]
    fn f2_solver_detects_inconsistency() {
        // x0 = 0, x1 = 1, x0 + x1 = 0 has no solution
        let rows = vec![vec![1, 0, 0], vec![0, 1, 1], vec![1, 1, 0]];
        assert!(solve_f2(rows, 2).is_none());
        let rows = vec![vec![1, 0, 0], vec![0, 1, 1]];
        assert_eq!(solve_f2(rows, 2), Some(vec![0, 1]));
    }
}
