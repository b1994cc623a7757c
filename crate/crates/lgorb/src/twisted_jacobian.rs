//! The comparison algebra: a twisted Jacobian algebra with structure
//! constants supported on inverse pairs, built from the atomic
//! decomposition of the potential. Comparing it with the computed
//! sector algebra decides whether the two are isomorphic after
//! rescaling the sector generators.

use crate::error::{Error, Result};
use crate::group::root_of_unity;
use crate::orbifold::TwistedAlgebra;
use crate::poly::{Block, MultiPoly};
use crate::scalar::CycScalar;
use num::{BigInt, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtomicType {
    Fermat,
    Chain,
    Loop,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomicBlock {
    pub kind: AtomicType,
    /// Variables in link order: each one's monomial points at the next.
    pub vars: Vec<usize>,
    pub exponents: Vec<u16>,
}

impl AtomicBlock {
    pub fn describe(&self) -> String {
        let kind = match self.kind {
            AtomicType::Fermat => "fermat",
            AtomicType::Chain => "chain",
            AtomicType::Loop => "loop",
        };
        let vars = self
            .vars
            .iter()
            .map(|v| format!("x{}", v + 1))
            .collect::<Vec<_>>()
            .join(",");
        let exps = self
            .exponents
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!("{kind}({vars}; {exps})")
    }
}

/// Splits an invertible potential into its atomic summands. Every monomial
/// must be a pure power or a power times one other variable, every variable
/// must lead exactly one monomial, and the resulting links must form
/// disjoint chains and cycles.
pub fn decompose(w: &MultiPoly) -> Result<Vec<AtomicBlock>> {
    let n = w.nvars();
    let mut tail: Vec<Option<Option<usize>>> = vec![None; n];
    let mut power: Vec<u16> = vec![0; n];
    for (m, _) in w.terms() {
        let support: Vec<(usize, u16)> = (0..n)
            .map(|i| (i, m.exp(Block::X, i)))
            .filter(|&(_, e)| e > 0)
            .collect();
        let (head, head_exp, link) = match support.as_slice() {
            [(i, e)] if *e >= 2 => (*i, *e, None),
            [(i, _)] => {
                return Err(Error::Validation(format!(
                    "monomial {m} is linear in x{}, the potential is not invertible",
                    i + 1
                )))
            }
            [(i, ei), (j, 1)] if *ei >= 2 => (*i, *ei, Some(*j)),
            [(i, 1), (j, ej)] if *ej >= 2 => (*j, *ej, Some(*i)),
            _ => {
                return Err(Error::Validation(format!(
                    "monomial {m} is not of atomic shape"
                )))
            }
        };
        if tail[head].is_some() {
            return Err(Error::Validation(format!(
                "variable x{} leads two monomials, the potential is not atomic",
                head + 1
            )));
        }
        tail[head] = Some(link);
        power[head] = head_exp;
    }
    let mut incoming: Vec<usize> = vec![0; n];
    for t in &tail {
        match t {
            None => {}
            Some(Some(j)) => incoming[*j] += 1,
            Some(None) => {}
        }
    }
    for i in 0..n {
        if tail[i].is_none() {
            return Err(Error::Validation(format!(
                "variable x{} does not lead any monomial, the potential is not invertible",
                i + 1
            )));
        }
        if incoming[i] > 1 {
            return Err(Error::Validation(format!(
                "variable x{} is linked from two monomials, the potential is not atomic",
                i + 1
            )));
        }
    }
    let mut visited = vec![false; n];
    let mut blocks = Vec::new();
    // Chains and Fermat pieces start at variables nothing links to.
    for start in 0..n {
        if visited[start] || incoming[start] > 0 {
            continue;
        }
        let mut vars = vec![start];
        visited[start] = true;
        let mut cur = start;
        while let Some(Some(next)) = tail[cur] {
            if visited[next] {
                return Err(Error::Validation(
                    "the link structure of the potential is not a disjoint union of chains and loops".into(),
                ));
            }
            visited[next] = true;
            vars.push(next);
            cur = next;
        }
        let kind = if vars.len() == 1 {
            AtomicType::Fermat
        } else {
            AtomicType::Chain
        };
        let exponents = vars.iter().map(|&v| power[v]).collect();
        blocks.push(AtomicBlock {
            kind,
            vars,
            exponents,
        });
    }
    // Whatever remains sits on cycles.
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut vars = vec![start];
        visited[start] = true;
        let mut cur = tail[start].unwrap().unwrap();
        while cur != start {
            if visited[cur] {
                return Err(Error::Validation(
                    "the link structure of the potential is not a disjoint union of chains and loops".into(),
                ));
            }
            visited[cur] = true;
            vars.push(cur);
            cur = tail[cur].unwrap().unwrap();
        }
        let exponents = vars.iter().map(|&v| power[v]).collect();
        blocks.push(AtomicBlock {
            kind: AtomicType::Loop,
            vars,
            exponents,
        });
    }
    Ok(blocks)
}

/// Determinant of the second-derivative matrix of W over the given index
/// set, by cofactor expansion.
pub fn hessian_det(w: &MultiPoly, indices: &[usize]) -> MultiPoly {
    let entries: Vec<Vec<MultiPoly>> = indices
        .iter()
        .map(|&i| {
            indices
                .iter()
                .map(|&j| w.partial_derivative(Block::X, i).partial_derivative(Block::X, j))
                .collect()
        })
        .collect();
    det(&entries, w)
}

fn det(mat: &[Vec<MultiPoly>], w: &MultiPoly) -> MultiPoly {
    let n = mat.len();
    if n == 0 {
        return MultiPoly::one(w.nvars(), w.field());
    }
    if n == 1 {
        return mat[0][0].clone();
    }
    let mut acc = MultiPoly::zero(w.nvars(), w.field());
    for (k, entry) in mat[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != k)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cofactor = entry.mul(&det(&minor, w));
        acc = if k % 2 == 0 {
            acc.add(&cofactor)
        } else {
            acc.sub(&cofactor)
        };
    }
    acc
}

/// The comparison algebra's structure constants, indexed like the sigma
/// table of the sector algebra it was built against.
pub struct JacPrime {
    pub blocks: Vec<AtomicBlock>,
    entries: Vec<Vec<MultiPoly>>,
}

impl JacPrime {
    pub fn entry(&self, gi: usize, hi: usize) -> &MultiPoly {
        &self.entries[gi][hi]
    }

    /// Overwrites one structure constant; used to probe the comparison.
    pub fn set_entry(&mut self, gi: usize, hi: usize, value: MultiPoly) {
        self.entries[gi][hi] = value;
    }
}

pub fn jac_prime(alg: &TwistedAlgebra) -> Result<JacPrime> {
    let blocks = decompose(alg.potential())?;
    let field = alg.field().clone();
    let group = alg.group();
    let n_mod = group[0].modulus();
    let order = alg.order();
    let mut entries: Vec<Vec<MultiPoly>> = Vec::with_capacity(order);
    for gi in 0..order {
        let mut row = Vec::with_capacity(order);
        for hi in 0..order {
            row.push(entry_value(alg, &blocks, gi, hi, n_mod, &field)?);
        }
        entries.push(row);
    }
    Ok(JacPrime { blocks, entries })
}

fn entry_value(
    alg: &TwistedAlgebra,
    blocks: &[AtomicBlock],
    gi: usize,
    hi: usize,
    n_mod: u64,
    field: &std::sync::Arc<crate::scalar::CycField>,
) -> Result<MultiPoly> {
    let g = &alg.group()[gi];
    let h = &alg.group()[hi];
    let w = alg.potential();
    let zero = MultiPoly::zero(alg.nvars(), field);
    let mut value = MultiPoly::one(alg.nvars(), field);
    let mut age_numerator: u64 = 0;
    for block in blocks {
        let g_trivial = block.vars.iter().all(|&v| g.exps()[v] == 0);
        let h_trivial = block.vars.iter().all(|&v| h.exps()[v] == 0);
        if g_trivial || h_trivial {
            continue;
        }
        let inverse_pair = block
            .vars
            .iter()
            .all(|&v| (g.exps()[v] + h.exps()[v]).is_multiple_of(n_mod));
        if !inverse_pair {
            return Ok(zero);
        }
        let moving: Vec<usize> = block
            .vars
            .iter()
            .copied()
            .filter(|&v| g.exps()[v] != 0)
            .collect();
        value = value.mul(&hessian_det(w, &moving));
        age_numerator += block.vars.iter().map(|&v| g.exps()[v]).sum::<u64>();
    }
    let factor = if age_numerator.is_multiple_of(2) {
        root_of_unity(field, n_mod, -((age_numerator / 2) as i64))
    } else {
        if !field.order().is_multiple_of(2 * n_mod) {
            return Err(Error::Config(format!(
                "the comparison algebra needs a primitive root of order {}; rebuild over a field of order divisible by {}",
                2 * n_mod,
                2 * n_mod
            )));
        }
        root_of_unity(field, 2 * n_mod, -(age_numerator as i64))
    };
    let gh = g.mul(h);
    let ghi = alg.sector_index(&gh).ok_or(Error::Computation(
        "product sector missing from the group closure".into(),
    ))?;
    Ok(alg.milnor(ghi).class_of(&value).scale(&factor))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompareVerdict {
    VanishingMismatch,
    Inconclusive,
    IsomorphicViaRescaling,
}

#[derive(Clone, Debug)]
pub struct CompareReport {
    pub verdict: CompareVerdict,
    pub detail: String,
    /// For each non-identity sector g: the ratio sigma / sigma' on the pair
    /// (g, g^{-1}) when both sides are nonzero.
    pub alpha: Vec<(Vec<u64>, Option<CycScalar>)>,
    pub blocks: Vec<AtomicBlock>,
}

/// Decides whether rescaling each sector generator can carry the computed
/// structure constants onto the comparison algebra's. The rescaling system
/// is solved exactly: the multiplicative equations are solvable over the
/// nonzero field elements precisely when every integer relation among
/// their exponent rows kills the corresponding product of ratios.
pub fn compare(alg: &TwistedAlgebra, jp: &JacPrime) -> CompareReport {
    let order = alg.order();
    let e_idx = alg.identity_index();
    let blocks = jp.blocks.clone();
    let mut alpha: Vec<(Vec<u64>, Option<CycScalar>)> = Vec::new();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut ratios: Vec<CycScalar> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    // Column layout: one variable per non-identity sector.
    let col_of = |s: usize| if s < e_idx { s } else { s - 1 };
    let ncols = order - 1;
    for gi in 0..order {
        for hi in 0..order {
            let s = &alg.sigma(gi, hi).value;
            let sp = jp.entry(gi, hi);
            let label = format!(
                "({}),({})",
                alg.group()[gi].exps_string(),
                alg.group()[hi].exps_string()
            );
            match (s.is_zero(), sp.is_zero()) {
                (true, true) => continue,
                (true, false) => {
                    return CompareReport {
                        verdict: CompareVerdict::VanishingMismatch,
                        detail: format!(
                            "sigma[{label}] vanishes but the comparison constant does not"
                        ),
                        alpha,
                        blocks,
                    }
                }
                (false, true) => {
                    return CompareReport {
                        verdict: CompareVerdict::VanishingMismatch,
                        detail: format!(
                            "sigma[{label}] is nonzero but the comparison constant vanishes"
                        ),
                        alpha,
                        blocks,
                    }
                }
                (false, false) => {
                    let (lm, lc) = sp.leading().unwrap();
                    let num = s.coeff(lm);
                    let ratio = match lc.inverse() {
                        Ok(inv) => &num * &inv,
                        Err(_) => unreachable!("leading coefficient is nonzero"),
                    };
                    if !s.sub(&sp.scale(&ratio)).is_zero() || ratio.is_zero() {
                        return CompareReport {
                            verdict: CompareVerdict::Inconclusive,
                            detail: format!(
                                "sigma[{label}] is not a scalar multiple of the comparison constant"
                            ),
                            alpha,
                            blocks,
                        };
                    }
                    let mut row = vec![BigInt::zero(); ncols];
                    for s_idx in [gi, hi] {
                        if s_idx != e_idx {
                            row[col_of(s_idx)] += 1;
                        }
                    }
                    let ghi = alg
                        .sector_index(&alg.group()[gi].mul(&alg.group()[hi]))
                        .unwrap();
                    if ghi != e_idx {
                        row[col_of(ghi)] -= 1;
                    }
                    rows.push(row);
                    ratios.push(ratio);
                    labels.push(label);
                }
            }
        }
    }
    for gi in 0..order {
        if gi == e_idx {
            continue;
        }
        let inv = alg.group()[gi].inverse();
        let hi = alg.sector_index(&inv).unwrap();
        let s = &alg.sigma(gi, hi).value;
        let sp = jp.entry(gi, hi);
        let value = if s.is_zero() || sp.is_zero() {
            None
        } else {
            let (lm, lc) = sp.leading().unwrap();
            Some(&s.coeff(lm) * &lc.inverse().unwrap())
        };
        alpha.push((alg.group()[gi].exps().to_vec(), value));
    }
    // Solvability of prod beta^row = ratio over the multiplicative group.
    for v in integer_left_kernel(&rows) {
        let mut obstruction = CycScalar::one(alg.field());
        let mut involved = Vec::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            involved.push(labels[i].clone());
            let magnitude = c.abs().to_u64().expect("rescaling exponent overflow");
            let base = if c.is_negative() {
                ratios[i].inverse().unwrap()
            } else {
                ratios[i].clone()
            };
            obstruction = &obstruction * &base.pow(magnitude);
        }
        if !obstruction.is_one() {
            return CompareReport {
                verdict: CompareVerdict::Inconclusive,
                detail: format!(
                    "no rescaling of the sector generators reconciles the structure constants; obstruction among the pairs [{}]",
                    involved.join(" ")
                ),
                alpha,
                blocks,
            };
        }
    }
    CompareReport {
        verdict: CompareVerdict::IsomorphicViaRescaling,
        detail: "structure constants agree after rescaling the sector generators".into(),
        alpha,
        blocks,
    }
}

/// Basis of the left kernel lattice {v : v^T A = 0} of an integer matrix,
/// by unimodular row reduction of [A | I].
fn integer_left_kernel(a: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let m = a.len();
    if m == 0 {
        return Vec::new();
    }
    let ncols = a[0].len();
    let mut mat: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        loop {
            let mut pivot: Option<usize> = None;
            for r in rank..m {
                if mat[r][col].is_zero() {
                    continue;
                }
                if pivot.is_none_or(|p| mat[r][col].abs() < mat[p][col].abs()) {
                    pivot = Some(r);
                }
            }
            let Some(p) = pivot else { break };
            mat.swap(rank, p);
            u.swap(rank, p);
            let mut again = false;
            for r in rank + 1..m {
                if mat[r][col].is_zero() {
                    continue;
                }
                let q = &mat[r][col] / &mat[rank][col];
                if !q.is_zero() {
                    for c in 0..ncols {
                        let d = &q * &mat[rank][c];
                        mat[r][c] -= d;
                    }
                    for c in 0..m {
                        let d = &q * &u[rank][c];
                        u[r][c] -= d;
                    }
                }
                if !mat[r][col].is_zero() {
                    again = true;
                }
            }
            if !again {
                rank += 1;
                break;
            }
        }
        if rank == m {
            break;
        }
    }
    let mut kernel = Vec::new();
    for r in 0..m {
        if mat[r].iter().all(|x| x.is_zero()) {
            kernel.push(u[r].clone());
        }
    }
    kernel
}
