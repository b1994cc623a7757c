//! Exact arithmetic in the cyclotomic field Q(zeta_n).
//!
//! Scalars are residues modulo the n-th cyclotomic polynomial, stored as
//! coefficient vectors of length phi(n) over arbitrary-precision rationals.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// The field Q(zeta_n), shared by every scalar living in it.
#[derive(Debug)]
pub struct CycField {
    order: u64,
    /// Coefficients of the n-th cyclotomic polynomial, ascending, monic.
    modulus: Vec<Rat>,
}

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}
impl Eq for CycField {}

impl CycField {
    pub fn new(order: u64) -> Arc<CycField> {
        assert!(order >= 1, "field order must be positive");
        let modulus = cyclotomic_polynomial(order);
        Arc::new(CycField { order, modulus })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// phi(n), the degree of the extension.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Rat] {
        &self.modulus
    }
}

/// An element of Q(zeta_n): coefficients of 1, zeta, ..., zeta^(phi(n)-1).
#[derive(Clone)]
pub struct CycScalar {
    field: Arc<CycField>,
    coeffs: Vec<Rat>,
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}
impl Eq for CycScalar {}

impl CycScalar {
    pub fn zero(field: &Arc<CycField>) -> CycScalar {
        CycScalar {
            field: field.clone(),
            coeffs: vec![Rat::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<CycField>) -> CycScalar {
        Self::from_rat(field, Rat::one())
    }

    pub fn from_rat(field: &Arc<CycField>, r: Rat) -> CycScalar {
        let mut coeffs = vec![Rat::zero(); field.degree()];
        coeffs[0] = r;
        CycScalar {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_int(field: &Arc<CycField>, n: i64) -> CycScalar {
        Self::from_rat(field, rat_int(n))
    }

    pub fn rational(field: &Arc<CycField>, num: i64, den: i64) -> CycScalar {
        Self::from_rat(field, rat(num, den))
    }

    /// zeta^k, with k taken modulo n.
    pub fn zeta_pow(field: &Arc<CycField>, k: i64) -> CycScalar {
        let n = field.order() as i64;
        let k = k.rem_euclid(n) as usize;
        let mut dense = vec![Rat::zero(); k + 1];
        dense[k] = Rat::one();
        let reduced = poly_rem(dense, &field.modulus);
        CycScalar::from_dense(field, reduced)
    }

    fn from_dense(field: &Arc<CycField>, mut dense: Vec<Rat>) -> CycScalar {
        debug_assert!(dense.len() <= field.degree());
        dense.resize(field.degree(), Rat::zero());
        CycScalar {
            field: field.clone(),
            coeffs: dense,
        }
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn order(&self) -> u64 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Constant-term view, when the element happens to be rational.
    pub fn as_rational(&self) -> Option<&Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_order(&self, other: &CycScalar) -> Result<()> {
        if self.field.order == other.field.order {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "cannot combine scalars from Q(zeta_{}) and Q(zeta_{})",
                self.field.order, other.field.order
            )))
        }
    }

    pub fn checked_add(&self, other: &CycScalar) -> Result<CycScalar> {
        self.check_order(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &CycScalar) -> Result<CycScalar> {
        self.check_order(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &CycScalar) -> Result<CycScalar> {
        self.check_order(other)?;
        Ok(self * other)
    }

    pub fn inverse(&self) -> Result<CycScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero {
                order: self.field.order,
            });
        }
        // Extended Euclid against the (irreducible) modulus.
        let a = trim(self.coeffs.clone());
        let (g, u, _) = poly_ext_gcd(a, self.field.modulus.clone());
        // g is a nonzero constant; divide it out of the Bezout coefficient.
        assert_eq!(g.len(), 1, "cyclotomic modulus must be coprime to any nonzero residue");
        let ginv = Rat::one() / g[0].clone();
        let inv: Vec<Rat> = u.into_iter().map(|c| c * &ginv).collect();
        let inv = poly_rem(inv, &self.field.modulus);
        Ok(CycScalar::from_dense(&self.field, inv))
    }

    pub fn div(&self, other: &CycScalar) -> Result<CycScalar> {
        self.check_order(other)?;
        Ok(self * &other.inverse()?)
    }

    pub fn scale_rat(&self, r: Rat) -> CycScalar {
        self * &CycScalar::from_rat(&self.field, r)
    }

    pub fn pow(&self, mut e: u64) -> CycScalar {
        let mut base = self.clone();
        let mut acc = CycScalar::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl std::ops::Add for &CycScalar {
    type Output = CycScalar;
    fn add(self, other: &CycScalar) -> CycScalar {
        assert_eq!(self.field.order, other.field.order, "scalar order mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycScalar {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl std::ops::Sub for &CycScalar {
    type Output = CycScalar;
    fn sub(self, other: &CycScalar) -> CycScalar {
        assert_eq!(self.field.order, other.field.order, "scalar order mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycScalar {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl std::ops::Mul for &CycScalar {
    type Output = CycScalar;
    fn mul(self, other: &CycScalar) -> CycScalar {
        assert_eq!(self.field.order, other.field.order, "scalar order mismatch");
        let a = trim(self.coeffs.clone());
        let b = trim(other.coeffs.clone());
        if a.is_empty() || b.is_empty() {
            return CycScalar::zero(&self.field);
        }
        let prod = poly_mul(&a, &b);
        let red = poly_rem(prod, &self.field.modulus);
        CycScalar::from_dense(&self.field, red)
    }
}

impl std::ops::Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{}", abs)?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", abs)?;
                }
                if k == 1 {
                    write!(f, "zeta")?;
                } else {
                    write!(f, "zeta^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// The portable JSON form: {"order": n, "coeffs": ["p/q", ...]} with exactly
// phi(n) coefficient strings, ascending in powers of zeta.

impl serde::Serialize for CycScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CycScalar", 2)?;
        st.serialize_field("order", &self.field.order)?;
        let coeffs: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for CycScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(serde::Deserialize)]
        struct Enc {
            order: u64,
            coeffs: Vec<String>,
        }
        let enc = Enc::deserialize(d)?;
        if enc.order == 0 {
            return Err(D::Error::custom("order must be positive"));
        }
        let field = CycField::new(enc.order);
        if enc.coeffs.len() != field.degree() {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for Q(zeta_{}), got {}",
                field.degree(),
                enc.order,
                enc.coeffs.len()
            )));
        }
        let mut coeffs = Vec::with_capacity(enc.coeffs.len());
        for text in &enc.coeffs {
            coeffs.push(parse_rat(text).map_err(D::Error::custom)?);
        }
        Ok(CycScalar { field, coeffs })
    }
}

/// Parses "p/q" or a bare integer "p" into an exact rational.
pub fn parse_rat(text: &str) -> std::result::Result<Rat, String> {
    let bad = |_| format!("malformed rational '{text}'");
    match text.split_once('/') {
        Some((p, q)) => {
            let num: BigInt = p.trim().parse().map_err(bad)?;
            let den: BigInt = q.trim().parse().map_err(bad)?;
            if den.is_zero() {
                return Err(format!("zero denominator in '{text}'"));
            }
            Ok(Rat::new(num, den))
        }
        None => {
            let num: BigInt = text.trim().parse().map_err(bad)?;
            Ok(Rat::from(num))
        }
    }
}

// Dense univariate helpers over Q, ascending coefficients, no trailing zeros.

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            out[i + j] += ai * bj;
        }
    }
    trim(out)
}

/// Remainder of a modulo m (m monic-leading, not necessarily monic).
fn poly_rem(a: Vec<Rat>, m: &[Rat]) -> Vec<Rat> {
    let mut r = trim(a);
    let dm = m.len() - 1;
    let lead = &m[dm];
    while r.len() > dm {
        let dr = r.len() - 1;
        let factor = r[dr].clone() / lead.clone();
        let shift = dr - dm;
        for (k, mk) in m.iter().enumerate() {
            if !mk.is_zero() {
                let delta = &factor * mk;
                r[k + shift] -= delta;
            }
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn poly_divmod(a: Vec<Rat>, m: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r = trim(a);
    let dm = m.len() - 1;
    let lead = &m[dm];
    if r.len() <= dm {
        return (Vec::new(), r);
    }
    let mut q = vec![Rat::zero(); r.len() - dm];
    while r.len() > dm {
        let dr = r.len() - 1;
        let factor = r[dr].clone() / lead.clone();
        let shift = dr - dm;
        q[shift] = factor.clone();
        for (k, mk) in m.iter().enumerate() {
            if !mk.is_zero() {
                let delta = &factor * mk;
                r[k + shift] -= delta;
            }
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    (trim(q), r)
}

/// Returns (g, u, v) with u*a + v*b = g.
fn poly_ext_gcd(a: Vec<Rat>, b: Vec<Rat>) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let mut r0 = trim(a);
    let mut r1 = trim(b);
    let mut u0 = vec![Rat::one()];
    let mut u1: Vec<Rat> = Vec::new();
    let mut v0: Vec<Rat> = Vec::new();
    let mut v1 = vec![Rat::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(r0.clone(), &r1);
        let nu = poly_sub(&u0, &poly_mul_maybe(&q, &u1));
        let nv = poly_sub(&v0, &poly_mul_maybe(&q, &v1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = nu;
        v0 = v1;
        v1 = nv;
    }
    (r0, u0, v0)
}

fn poly_mul_maybe(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        Vec::new()
    } else {
        poly_mul(a, b)
    }
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    trim(out)
}

/// Phi_n by recursive division: x^n - 1 divided by Phi_d for all proper divisors d.
fn cyclotomic_polynomial(n: u64) -> Vec<Rat> {
    let mut table: Vec<(u64, Vec<Rat>)> = Vec::new();
    for m in 1..=n {
        if !n.is_multiple_of(m) {
            continue;
        }
        let mut num = vec![Rat::zero(); m as usize + 1];
        num[0] = -Rat::one();
        num[m as usize] = Rat::one();
        let mut phi_m = num;
        for (d, phi_d) in &table {
            if m % d == 0 {
                let (q, r) = poly_divmod(phi_m, phi_d);
                assert!(r.is_empty(), "cyclotomic division must be exact");
                phi_m = q;
            }
        }
        table.push((m, phi_m));
    }
    table.pop().unwrap().1
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q3() -> Arc<CycField> {
        CycField::new(3)
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_polynomial(1), vec![rat_int(-1), rat_int(1)]);
        assert_eq!(cyclotomic_polynomial(2), vec![rat_int(1), rat_int(1)]);
        assert_eq!(
            cyclotomic_polynomial(3),
            vec![rat_int(1), rat_int(1), rat_int(1)]
        );
        assert_eq!(
            cyclotomic_polynomial(4),
            vec![rat_int(1), rat_int(0), rat_int(1)]
        );
        assert_eq!(
            cyclotomic_polynomial(12),
            vec![rat_int(1), rat_int(0), rat_int(-1), rat_int(0), rat_int(1)]
        );
        assert_eq!(CycField::new(7).degree(), 6);
        assert_eq!(CycField::new(24).degree(), 8);
    }

    #[test]
    fn product_in_q_zeta3() {
        // (zeta - 1)(zeta + 2) = -3 in Q(zeta_3)
        let f = q3();
        let zeta = CycScalar::zeta_pow(&f, 1);
        let a = &zeta - &CycScalar::one(&f);
        let b = &zeta + &CycScalar::from_int(&f, 2);
        assert_eq!(&a * &b, CycScalar::from_int(&f, -3));
    }

    #[test]
    fn inverse_in_q_zeta3() {
        // inverse(zeta - 1) = -(zeta + 2)/3, checked by multiplying back
        let f = q3();
        let zeta = CycScalar::zeta_pow(&f, 1);
        let a = &zeta - &CycScalar::one(&f);
        let inv = a.inverse().unwrap();
        let expected = (&zeta + &CycScalar::from_int(&f, 2))
            .checked_mul(&CycScalar::rational(&f, -1, 3))
            .unwrap();
        assert_eq!(inv, expected);
        assert!((&a * &inv).is_one());
    }

    #[test]
    fn zeta_pow_wraps_and_reduces() {
        let f = q3();
        assert!(CycScalar::zeta_pow(&f, 3).is_one());
        assert_eq!(CycScalar::zeta_pow(&f, 4), CycScalar::zeta_pow(&f, 1));
        assert_eq!(CycScalar::zeta_pow(&f, -1), CycScalar::zeta_pow(&f, 2));
        // zeta^2 = -1 - zeta under Phi_3
        let z2 = CycScalar::zeta_pow(&f, 2);
        let expected = &(-&CycScalar::one(&f)) - &CycScalar::zeta_pow(&f, 1);
        assert_eq!(z2, expected);
    }

    #[test]
    fn zero_has_no_inverse() {
        let f = q3();
        assert_eq!(
            CycScalar::zero(&f).inverse(),
            Err(Error::DivisionByZero { order: 3 })
        );
    }

    #[test]
    fn order_mismatch_is_config_error() {
        let a = CycScalar::one(&CycField::new(3));
        let b = CycScalar::one(&CycField::new(5));
        assert!(matches!(a.checked_add(&b), Err(Error::Config(_))));
    }

    #[test]
    fn half_roots_of_unity() {
        // In Q(zeta_6), zeta^3 = -1.
        let f = CycField::new(6);
        let m1 = CycScalar::zeta_pow(&f, 3);
        assert_eq!(m1, CycScalar::from_int(&f, -1));
    }

    fn arb_scalar(order: u64) -> impl Strategy<Value = CycScalar> {
        let field = CycField::new(order);
        let deg = field.degree();
        proptest::collection::vec(-4i64..5, deg).prop_map(move |v| {
            let coeffs: Vec<Rat> = v.into_iter().map(rat_int).collect();
            CycScalar {
                field: field.clone(),
                coeffs,
            }
        })
    }

    proptest! {
        #[test]
        fn ring_axioms_q_zeta12(a in arb_scalar(12), b in arb_scalar(12), c in arb_scalar(12)) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, CycScalar::zero(a.field()));
        }

        #[test]
        fn inverse_roundtrip_q_zeta12(a in arb_scalar(12)) {
            if !a.is_zero() {
                let inv = a.inverse().unwrap();
                prop_assert!((&a * &inv).is_one());
            }
        }
    }

    proptest! {
        #[test]
        fn json_roundtrip_q_zeta12(a in arb_scalar(12)) {
            let text = serde_json::to_string(&a).unwrap();
            let back: CycScalar = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(a, back);
        }
    }

    #[test]
    fn json_shape_and_validation() {
        let field = CycField::new(3);
        let s = &CycScalar::rational(&field, -1, 2) + &CycScalar::zeta_pow(&field, 1);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"order":3,"coeffs":["-1/2","1/1"]}"#);
        assert!(serde_json::from_str::<CycScalar>(r#"{"order":3,"coeffs":["1/1"]}"#).is_err());
        assert!(serde_json::from_str::<CycScalar>(r#"{"order":3,"coeffs":["1/0","0/1"]}"#).is_err());
        let bare: CycScalar = serde_json::from_str(r#"{"order":3,"coeffs":["2","-3"]}"#).unwrap();
        let minus3 = CycScalar::from_int(&field, -3);
        assert_eq!(bare, &CycScalar::from_int(&field, 2) + &(&minus3 * &CycScalar::zeta_pow(&field, 1)));
    }
}
