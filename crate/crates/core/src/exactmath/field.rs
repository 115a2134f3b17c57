//! Exact scalars: the prime field `F_p` and the rational function field `F_p(t)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::poly::{inv_mod, pow_mod, Poly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKind {
    Prime,
    RationalFunction,
}

/// Descriptor of a scalar field: `F_p` or `F_p(t)` with `2 <= p <= 251` prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr")]
pub struct Field {
    kind: FieldKind,
    p: u8,
}

#[derive(Deserialize)]
struct FieldRepr {
    kind: FieldKind,
    p: u32,
}

impl TryFrom<FieldRepr> for Field {
    type Error = Error;

    fn try_from(r: FieldRepr) -> Result<Self> {
        Field::new(r.kind, r.p)
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl Field {
    pub fn new(kind: FieldKind, p: u32) -> Result<Self> {
        if p > 251 || !is_prime(p) {
            return Err(Error::BadCharacteristic(p));
        }
        Ok(Field { kind, p: p as u8 })
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(FieldKind::Prime, p)
    }

    pub fn rational_function(p: u32) -> Result<Self> {
        Self::new(FieldKind::RationalFunction, p)
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn is_prime_field(&self) -> bool {
        self.kind == FieldKind::Prime
    }

    /// The image of an integer.
    pub fn from_int(&self, n: i64) -> FieldValue {
        let v = n.rem_euclid(self.p as i64) as u8;
        match self.kind {
            FieldKind::Prime => FieldValue::Prime(Fp { p: self.p, v }),
            FieldKind::RationalFunction => FieldValue::Rational(Box::new(RatFn {
                p: self.p,
                num: Poly::monomial(v, 0, self.p),
                den: Poly::one(),
            })),
        }
    }

    pub fn zero(&self) -> FieldValue {
        self.from_int(0)
    }

    pub fn one(&self) -> FieldValue {
        self.from_int(1)
    }

    /// The transcendental `t`; `None` over a prime field.
    pub fn t(&self) -> Option<FieldValue> {
        match self.kind {
            FieldKind::Prime => None,
            FieldKind::RationalFunction => Some(FieldValue::Rational(Box::new(RatFn {
                p: self.p,
                num: Poly::monomial(1, 1, self.p),
                den: Poly::one(),
            }))),
        }
    }

    /// Builds `num/den` in `F_p(t)`, reducing to canonical form.
    pub fn ratio(&self, num: Vec<i64>, den: Vec<i64>) -> Result<FieldValue> {
        let p = self.p;
        let to_poly = |c: Vec<i64>| Poly::from_coeffs(c.into_iter().map(|x| x.rem_euclid(p as i64) as u8).collect(), p);
        let num = to_poly(num);
        let den = to_poly(den);
        match self.kind {
            FieldKind::Prime => {
                if num.degree().unwrap_or(0) > 0 || den.degree().unwrap_or(0) > 0 {
                    return Err(Error::InvalidInput(format!("non-constant rational function in {self}")));
                }
                let n = self.from_int(num.leading() as i64);
                let d = self.from_int(den.leading() as i64);
                n.checked_div(&d)
            }
            FieldKind::RationalFunction => Ok(FieldValue::Rational(Box::new(RatFn::new(num, den, p)?))),
        }
    }

    /// Re-expresses a value of the same characteristic in this field.
    /// Prime-field scalars embed into `F_p(t)`; constants of `F_p(t)` descend to `F_p`.
    pub fn embed(&self, v: &FieldValue) -> Result<FieldValue> {
        if v.p() != self.p {
            return Err(Error::FieldMismatch(v.field(), *self));
        }
        match (self.kind, v) {
            (FieldKind::Prime, FieldValue::Prime(_)) | (FieldKind::RationalFunction, FieldValue::Rational(_)) => {
                Ok(v.clone())
            }
            (FieldKind::RationalFunction, FieldValue::Prime(x)) => Ok(self.from_int(x.v as i64)),
            (FieldKind::Prime, FieldValue::Rational(r)) => {
                if r.num.degree().unwrap_or(0) == 0 && r.den.is_one() {
                    Ok(self.from_int(r.num.leading() as i64))
                } else {
                    Err(Error::FieldMismatch(v.field(), *self))
                }
            }
        }
    }

    /// Decodes the JSON scalar encoding: an integer for `F_p`, or
    /// `{"num": [...], "den": [...]}` (little-endian coefficients) for `F_p(t)`.
    /// Integers are accepted in `F_p(t)` as constants.
    pub fn value_from_json(&self, v: &Value) -> Result<FieldValue> {
        if let Some(n) = v.as_i64() {
            return Ok(self.from_int(n));
        }
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidInput(format!("bad scalar {v}")))?;
        let coeffs = |key: &str| -> Result<Vec<i64>> {
            match obj.get(key) {
                None if key == "den" => Ok(vec![1]),
                None => Err(Error::InvalidInput(format!("scalar missing '{key}'"))),
                Some(arr) => arr
                    .as_array()
                    .ok_or_else(|| Error::InvalidInput(format!("'{key}' must be an array")))?
                    .iter()
                    .map(|c| c.as_i64().ok_or_else(|| Error::InvalidInput(format!("bad coefficient {c}"))))
                    .collect(),
            }
        };
        self.ratio(coeffs("num")?, coeffs("den")?)
    }

    pub fn vector_from_json(&self, v: &Value) -> Result<Vec<FieldValue>> {
        v.as_array()
            .ok_or_else(|| Error::InvalidInput(format!("expected an array of scalars, got {v}")))?
            .iter()
            .map(|x| self.value_from_json(x))
            .collect()
    }

    /// Checks that `v` belongs to this field.
    pub fn check(&self, v: &FieldValue) -> Result<()> {
        if v.field() == *self {
            Ok(())
        } else {
            Err(Error::FieldMismatch(v.field(), *self))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Prime => write!(f, "F_{}", self.p),
            FieldKind::RationalFunction => write!(f, "F_{}(t)", self.p),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    p: u8,
    v: u8,
}

impl Fp {
    pub fn value(&self) -> u8 {
        self.v
    }
}

/// A reduced fraction `num/den` with monic denominator; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn {
    p: u8,
    num: Poly,
    den: Poly,
}

impl RatFn {
    fn new(num: Poly, den: Poly, p: u8) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFn { p, num, den: Poly::one() });
        }
        let g = num.gcd(&den, p);
        let (mut num, _) = num.div_rem(&g, p);
        let (mut den, _) = den.div_rem(&g, p);
        let lead = den.leading();
        if lead != 1 {
            let inv = inv_mod(lead, p);
            num = num.scale(inv, p);
            den = den.scale(inv, p);
        }
        Ok(RatFn { p, num, den })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }
}

/// An exact scalar. Values carry their characteristic so that mixing fields is detected.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldValue {
    Prime(Fp),
    Rational(Box<RatFn>),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact `a op b`, rejecting mismatched fields and division by zero.
pub fn field_arith(a: &FieldValue, b: &FieldValue, op: ArithOp) -> Result<FieldValue> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field(), b.field()));
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl FieldValue {
    pub fn p(&self) -> u8 {
        match self {
            FieldValue::Prime(x) => x.p,
            FieldValue::Rational(r) => r.p,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            FieldValue::Prime(x) => Field { kind: FieldKind::Prime, p: x.p },
            FieldValue::Rational(r) => Field { kind: FieldKind::RationalFunction, p: r.p },
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        match self {
            FieldValue::Prime(x) => x.v == 0,
            FieldValue::Rational(r) => r.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldValue::Prime(x) => x.v == 1,
            FieldValue::Rational(r) => r.num.is_one() && r.den.is_one(),
        }
    }

    /// The residue for prime-field values.
    pub fn as_residue(&self) -> Option<u8> {
        match self {
            FieldValue::Prime(x) => Some(x.v),
            FieldValue::Rational(_) => None,
        }
    }

    fn to_rational(&self) -> RatFn {
        match self {
            FieldValue::Prime(x) => RatFn { p: x.p, num: Poly::monomial(x.v, 0, x.p), den: Poly::one() },
            FieldValue::Rational(r) => (**r).clone(),
        }
    }

    pub fn inv(&self) -> Result<FieldValue> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldValue::Prime(x) => FieldValue::Prime(Fp { p: x.p, v: inv_mod(x.v, x.p) }),
            FieldValue::Rational(r) => FieldValue::Rational(Box::new(RatFn::new(r.den.clone(), r.num.clone(), r.p)?)),
        })
    }

    pub fn checked_div(&self, other: &FieldValue) -> Result<FieldValue> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> FieldValue {
        if let FieldValue::Prime(x) = self {
            let e = if x.v == 0 || e == 0 { e } else { (e - 1) % (x.p as u64 - 1) + 1 };
            return FieldValue::Prime(Fp { p: x.p, v: pow_mod(x.v, e as u32, x.p) });
        }
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Returns `Some(b)` with `b^p = self` when such `b` exists.
    ///
    /// Frobenius is the identity on `F_p`, so prime-field values are always
    /// their own roots. A reduced fraction in `F_p(t)` is a `p`-th power iff
    /// numerator and denominator only involve exponents divisible by `p`.
    pub fn is_pth_power(&self) -> Option<FieldValue> {
        match self {
            FieldValue::Prime(_) => Some(self.clone()),
            FieldValue::Rational(r) => {
                let num = r.num.pth_root(r.p)?;
                let den = r.den.pth_root(r.p)?;
                Some(FieldValue::Rational(Box::new(RatFn { p: r.p, num, den })))
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            FieldValue::Prime(x) => json!(x.v),
            FieldValue::Rational(r) => json!({ "num": r.num.coeffs(), "den": r.den.coeffs() }),
        }
    }

    /// Number of monomial terms, used to pick short display forms.
    pub(crate) fn is_simple(&self) -> bool {
        match self {
            FieldValue::Prime(_) => true,
            FieldValue::Rational(r) => r.den.is_one() && r.num.term_count() <= 1,
        }
    }
}

fn rat_add(a: &RatFn, b: &RatFn) -> RatFn {
    let p = a.p;
    if a.den == b.den {
        return RatFn::new(a.num.add(&b.num, p), a.den.clone(), p).expect("nonzero denominator");
    }
    let num = a.num.mul(&b.den, p).add(&b.num.mul(&a.den, p), p);
    RatFn::new(num, a.den.mul(&b.den, p), p).expect("nonzero denominator")
}

fn rat_mul(a: &RatFn, b: &RatFn) -> RatFn {
    let p = a.p;
    RatFn::new(a.num.mul(&b.num, p), a.den.mul(&b.den, p), p).expect("nonzero denominator")
}

impl<'a> Add<&'a FieldValue> for &'a FieldValue {
    type Output = FieldValue;

    #[inline]
    fn add(self, rhs: &FieldValue) -> FieldValue {
        match (self, rhs) {
            (FieldValue::Prime(a), FieldValue::Prime(b)) => {
                debug_assert_eq!(a.p, b.p, "field mismatch");
                let s = a.v as u16 + b.v as u16;
                let p = a.p as u16;
                FieldValue::Prime(Fp { p: a.p, v: if s >= p { (s - p) as u8 } else { s as u8 } })
            }
            _ => {
                assert_eq!(self.p(), rhs.p(), "field mismatch");
                FieldValue::Rational(Box::new(rat_add(&self.to_rational(), &rhs.to_rational())))
            }
        }
    }
}

impl Neg for &FieldValue {
    type Output = FieldValue;

    #[inline]
    fn neg(self) -> FieldValue {
        match self {
            FieldValue::Prime(a) => FieldValue::Prime(Fp { p: a.p, v: if a.v == 0 { 0 } else { a.p - a.v } }),
            FieldValue::Rational(r) => FieldValue::Rational(Box::new(RatFn {
                p: r.p,
                num: r.num.neg(r.p),
                den: r.den.clone(),
            })),
        }
    }
}

impl<'a> Sub<&'a FieldValue> for &'a FieldValue {
    type Output = FieldValue;

    #[inline]
    fn sub(self, rhs: &FieldValue) -> FieldValue {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a FieldValue> for &'a FieldValue {
    type Output = FieldValue;

    #[inline]
    fn mul(self, rhs: &FieldValue) -> FieldValue {
        match (self, rhs) {
            (FieldValue::Prime(a), FieldValue::Prime(b)) => {
                debug_assert_eq!(a.p, b.p, "field mismatch");
                FieldValue::Prime(Fp { p: a.p, v: ((a.v as u16 * b.v as u16) % a.p as u16) as u8 })
            }
            _ => {
                assert_eq!(self.p(), rhs.p(), "field mismatch");
                FieldValue::Rational(Box::new(rat_mul(&self.to_rational(), &rhs.to_rational())))
            }
        }
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Prime(x) => write!(f, "{}", x.v),
            FieldValue::Rational(r) => {
                let wrap = |poly: &Poly, f: &mut fmt::Formatter<'_>| -> fmt::Result {
                    if poly.term_count() > 1 {
                        write!(f, "(")?;
                        poly.fmt_with("t", f)?;
                        write!(f, ")")
                    } else {
                        poly.fmt_with("t", f)
                    }
                };
                if r.den.is_one() {
                    r.num.fmt_with("t", f)
                } else {
                    wrap(&r.num, f)?;
                    write!(f, "/")?;
                    wrap(&r.den, f)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_product() {
        let f3 = Field::prime(3).unwrap();
        let two = f3.from_int(2);
        assert_eq!(field_arith(&two, &two, ArithOp::Mul).unwrap(), f3.one());
    }

    #[test]
    fn inverse_pair_in_rational_functions() {
        let f = Field::rational_function(2).unwrap();
        let a = f.ratio(vec![0, 1], vec![1, 1]).unwrap();
        let b = f.ratio(vec![1, 1], vec![0, 1]).unwrap();
        assert_eq!(field_arith(&a, &b, ArithOp::Mul).unwrap(), f.one());
    }

    #[test]
    fn characteristic_two_cancellation() {
        let f = Field::rational_function(2).unwrap();
        let a = f.ratio(vec![0, 1, 1], vec![1]).unwrap();
        let b = f.t().unwrap();
        let t2 = f.ratio(vec![0, 0, 1], vec![1]).unwrap();
        assert_eq!(field_arith(&a, &b, ArithOp::Add).unwrap(), t2);
    }

    #[test]
    fn errors() {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        assert_eq!(field_arith(&f2.one(), &f2.zero(), ArithOp::Div), Err(Error::DivisionByZero));
        assert!(matches!(
            field_arith(&f2.one(), &f3.one(), ArithOp::Add),
            Err(Error::FieldMismatch(_, _))
        ));
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(257).is_err());
    }

    #[test]
    fn pth_powers() {
        let f = Field::rational_function(2).unwrap();
        let t = f.t().unwrap();
        assert_eq!(t.is_pth_power(), None);
        let t2 = &t * &t;
        assert_eq!(t2.is_pth_power(), Some(t));
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.from_int(2).is_pth_power(), Some(f3.from_int(2)));
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let f = Field::rational_function(3).unwrap();
        // (2t)/(2t+2) = t/(t+1)
        let a = f.ratio(vec![0, 2], vec![2, 2]).unwrap();
        let b = f.ratio(vec![0, 1], vec![1, 1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "t/(t+1)");
        assert_eq!(f.value_from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn zero_is_canonical() {
        let f = Field::rational_function(2).unwrap();
        let t = f.t().unwrap();
        let z = &t - &t;
        assert_eq!(z, f.zero());
        assert_eq!(f.ratio(vec![0], vec![1, 1]).unwrap(), f.zero());
    }
}
