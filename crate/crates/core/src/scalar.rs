//! Exact arithmetic in the rational function field `Q(v)`, where `v² = q`.
//!
//! Every structure constant of the engine lives here. Weights pair with
//! roots to integers, so the torus generators act by integral powers of `v`
//! and no fractional exponents ever appear.
//!
//! Values are kept in a normal form so that `==` is exact field equality:
//! the denominator is an ordinary polynomial with nonzero constant term and
//! leading coefficient one, and it is coprime to the numerator. Laurent
//! polynomials therefore always carry the denominator `1`, which is the fast
//! path for nearly all module arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Rational coefficient.
pub type Q = BigRational;

fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

// ---- dense polynomial helpers (coefficients low -> high, no trailing zeros) ----

fn trim(c: &mut Vec<Q>) {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// Polynomial long division; `b` must be nonzero.
fn poly_divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    debug_assert!(!b.is_empty());
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let mut r = a.to_vec();
    let lead_inv = b.last().unwrap().recip();
    let mut quot = vec![Q::zero(); a.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead_inv;
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                r[shift + j] -= &c * y;
            }
        }
        quot[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut quot);
    (quot, r)
}

fn make_monic(a: &mut [Q]) {
    if let Some(l) = a.last().cloned() {
        if !l.is_one() {
            let inv = l.recip();
            for x in a.iter_mut() {
                *x *= &inv;
            }
        }
    }
}

/// Monic gcd of two polynomials (gcd(0, 0) = 0).
fn poly_gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![Q::one()];
        }
        let (_, mut r) = poly_divrem(&x, &y);
        make_monic(&mut r);
        x = y;
        y = r;
    }
    make_monic(&mut x);
    x
}

// ---- Laurent polynomials ----

/// Laurent polynomial in `v` with rational coefficients.
///
/// Stored densely from the lowest exponent; both end coefficients are
/// nonzero and the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<Q>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(0, c)
    }

    /// `c · v^e`.
    pub fn monomial(e: i32, c: Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: e,
            coeffs: vec![c],
        }
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i32, Q)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out += &Self::monomial(e, c);
        }
        out
    }

    fn from_dense(low: i32, mut coeffs: Vec<Q>) -> Self {
        trim(&mut coeffs);
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        LaurentPoly {
            low: low + lead as i32,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low_exponent(&self) -> i32 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high_exponent(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    pub fn coeff(&self, e: i32) -> Q {
        let k = e - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            Q::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Nonzero terms with ascending exponents.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Q)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i32, c))
    }

    pub fn leading_coeff(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// The substitution `v ↦ v⁻¹`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.coeffs.clone();
        c.reverse();
        LaurentPoly {
            low: -self.high_exponent(),
            coeffs: c,
        }
    }

    /// Exact evaluation at a nonzero rational point.
    pub fn eval(&self, v0: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v0 + c;
        }
        acc * pow_q(v0, self.low)
    }

    fn canonical_terms(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms()
            .map(|(e, c)| format!("{}*v^{}", c, e))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn parse_terms(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for term in s.split(" + ") {
            let (c, e) = term
                .trim()
                .split_once("*v^")
                .ok_or_else(|| Error::Parse(format!("bad term `{term}`")))?;
            let c = Q::from_str(c).map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))?;
            let e: i32 = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent `{e}`")))?;
            out += &Self::monomial(e, c);
        }
        Ok(out)
    }
}

fn pow_q(x: &Q, e: i32) -> Q {
    match e.cmp(&0) {
        Ordering::Equal => Q::one(),
        Ordering::Greater => num_traits::pow(x.clone(), e as usize),
        Ordering::Less => num_traits::pow(x.recip(), (-e) as usize),
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_terms())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_exponent().max(rhs.high_exponent());
        let mut c = vec![Q::zero(); (high - low + 1) as usize];
        for (k, x) in self.coeffs.iter().enumerate() {
            c[(self.low - low) as usize + k] += x;
        }
        for (k, x) in rhs.coeffs.iter().enumerate() {
            c[(rhs.low - low) as usize + k] += x;
        }
        LaurentPoly::from_dense(low, c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self + rhs;
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly::from_dense(self.low + rhs.low, poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

// ---- rational functions ----

/// Element of `Q(v)` in normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// Shorthand used throughout the crate.
pub type Rf = RationalFunction;

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(LaurentPoly::constant(q_int(n)))
    }

    pub fn from_rational(c: Q) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RationalFunction {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// `v^e`.
    pub fn v_pow(e: i32) -> Self {
        Self::from_laurent(LaurentPoly::monomial(e, Q::one()))
    }

    /// The indeterminate `v`.
    pub fn v() -> Self {
        Self::v_pow(1)
    }

    /// `q = v²`.
    pub fn q() -> Self {
        Self::v_pow(2)
    }

    /// Construct `num / den` and bring it to normal form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        // Move the monomial part of the denominator into the numerator.
        let s = den.low;
        let mut num = num.shift(-s);
        let mut den_c = den.coeffs;
        if den_c.len() > 1 {
            let nlow = num.low;
            let g = poly_gcd(&num.coeffs, &den_c);
            if g.len() > 1 {
                let (nq, nr) = poly_divrem(&num.coeffs, &g);
                let (dq, dr) = poly_divrem(&den_c, &g);
                debug_assert!(nr.is_empty() && dr.is_empty());
                num = LaurentPoly::from_dense(nlow, nq);
                den_c = dq;
            }
        }
        let lead = den_c.last().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            for c in den_c.iter_mut() {
                *c *= &inv;
            }
        }
        RationalFunction {
            num,
            den: LaurentPoly {
                low: 0,
                coeffs: den_c,
            },
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.is_laurent().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// The substitution `v ↦ v⁻¹`.
    pub fn bar(&self) -> Self {
        Self::normalize(self.num.bar(), self.den.bar())
    }

    /// Exact value at the rational point `v0`.
    ///
    /// Requires `v0 > 0`, `v0 ≠ 1` and that `v0` is not a pole.
    pub fn specialize(&self, v0: &Q) -> Result<NumericValue> {
        if !v0.is_positive() || v0.is_one() {
            return Err(Error::BadSpecialization(v0.to_string()));
        }
        let d = self.den.eval(v0);
        if d.is_zero() {
            return Err(Error::Pole(v0.to_string()));
        }
        Ok(NumericValue::Exact(self.num.eval(v0) / d))
    }

    /// Canonical text form `c*v^e + ... / d*v^f + ...`, exponents ascending.
    /// The denominator part is omitted when it equals `1`.
    pub fn to_canonical(&self) -> String {
        if self.den.is_one() {
            self.num.canonical_terms()
        } else {
            format!("{} / {}", self.num.canonical_terms(), self.den.canonical_terms())
        }
    }

    pub fn parse_canonical(s: &str) -> Result<Self> {
        match s.split_once(" / ") {
            None => Ok(Self::from_laurent(LaurentPoly::parse_terms(s)?)),
            Some((n, d)) => Self::new(LaurentPoly::parse_terms(n)?, LaurentPoly::parse_terms(d)?),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_canonical())
    }
}

impl FromStr for RationalFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_canonical(s)
    }
}

impl serde::Serialize for RationalFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_canonical())
    }
}

impl<'de> serde::Deserialize<'de> for RationalFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Self::parse_canonical(&s).map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a Rf> for &'a Rf {
    type Output = Rf;
    fn add(self, rhs: &Rf) -> Rf {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return Rf::from_laurent(&self.num + &rhs.num);
            }
            return Rf::normalize(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Rf::normalize(num, &self.den * &rhs.den)
    }
}

impl Neg for &Rf {
    type Output = Rf;
    fn neg(self) -> Rf {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Rf {
    type Output = Rf;
    fn neg(self) -> Rf {
        -&self
    }
}

impl<'a> Sub<&'a Rf> for &'a Rf {
    type Output = Rf;
    fn sub(self, rhs: &Rf) -> Rf {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Rf> for &'a Rf {
    type Output = Rf;
    fn mul(self, rhs: &Rf) -> Rf {
        if self.is_zero() || rhs.is_zero() {
            return Rf::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Rf::from_laurent(&self.num * &rhs.num);
        }
        Rf::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`RationalFunction::checked_div`] otherwise.
impl<'a> Div<&'a Rf> for &'a Rf {
    type Output = Rf;
    fn div(self, rhs: &Rf) -> Rf {
        self.checked_div(rhs).expect("division by zero in Q(v)")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Rf> for Rf {
            type Output = Rf;
            fn $m(self, rhs: Rf) -> Rf { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Rf> for Rf {
            type Output = Rf;
            fn $m(self, rhs: &Rf) -> Rf { (&self).$m(rhs) }
        }
        impl<'a> $tr<Rf> for &'a Rf {
            type Output = Rf;
            fn $m(self, rhs: Rf) -> Rf { self.$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Rf> for Rf {
    fn add_assign(&mut self, rhs: &Rf) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rf> for Rf {
    fn sub_assign(&mut self, rhs: &Rf) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rf> for Rf {
    fn mul_assign(&mut self, rhs: &Rf) {
        *self = &*self * rhs;
    }
}

impl From<i64> for Rf {
    fn from(n: i64) -> Self {
        Rf::from_int(n)
    }
}

impl From<LaurentPoly> for Rf {
    fn from(p: LaurentPoly) -> Self {
        Rf::from_laurent(p)
    }
}

// ---- numeric values ----

/// A specialized value: exact when no square roots were needed.
#[derive(Clone, Debug, PartialEq)]
pub enum NumericValue {
    Exact(Q),
    Float(f64),
}

impl NumericValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            NumericValue::Exact(x) => {
                let n: f64 = x.numer().to_string().parse().unwrap_or(f64::NAN);
                let d: f64 = x.denom().to_string().parse().unwrap_or(f64::NAN);
                n / d
            }
            NumericValue::Float(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, NumericValue::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Q> {
        match self {
            NumericValue::Exact(x) => Some(x),
            NumericValue::Float(_) => None,
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            NumericValue::Exact(x) => {
                if x.is_zero() {
                    0
                } else if x.is_positive() {
                    1
                } else {
                    -1
                }
            }
            NumericValue::Float(x) => {
                if *x == 0.0 {
                    0
                } else if *x > 0.0 {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

impl fmt::Display for NumericValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericValue::Exact(x) => write!(f, "{x}"),
            NumericValue::Float(x) => write!(f, "{x:.12e}"),
        }
    }
}

/// Parse a positive rational like `2` or `3/2`.
pub fn parse_rational(s: &str) -> Result<Q> {
    Q::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad rational `{s}`")))
}

// ---- q-combinatorics ----

/// Balanced q-number `[n]` in `q_i = v^{2d}`: `(q_i^n − q_i^{−n}) / (q_i − q_i^{−1})`.
pub fn q_integer(n: i64, d: u32) -> Rf {
    let m = n.unsigned_abs() as i64;
    let step = 2 * d as i64;
    let mut p = LaurentPoly::zero();
    for k in 0..m {
        let e = step * (m - 1 - 2 * k);
        p += &LaurentPoly::monomial(e as i32, Q::one());
    }
    let r = Rf::from_laurent(p);
    if n < 0 {
        -r
    } else {
        r
    }
}

/// Balanced q-factorial `[n]! = [1][2]⋯[n]`.
pub fn q_factorial(n: i64, d: u32) -> Rf {
    (1..=n).fold(Rf::one(), |acc, k| &acc * &q_integer(k, d))
}

/// Gauss polynomial `[m]! / ([t]! [m−t]!)` in `q_i = v^{2d}`.
pub fn gauss_binomial(m: i64, t: i64, d: u32) -> Result<Rf> {
    if t < 0 || t > m {
        return Err(Error::BinomialRange { m, t });
    }
    let num = q_factorial(m, d);
    let den = &q_factorial(t, d) * &q_factorial(m - t, d);
    num.checked_div(&den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, q_int(c))))
    }

    fn rf(terms: &[(i32, i64)]) -> Rf {
        Rf::from_laurent(lp(terms))
    }

    #[test]
    fn cancels_common_factor() {
        // (v² − 1)/(v − 1) = v + 1
        let x = Rf::new(lp(&[(2, 1), (0, -1)]), lp(&[(1, 1), (0, -1)])).unwrap();
        assert_eq!(x, rf(&[(1, 1), (0, 1)]));
        assert!(x.is_laurent());
    }

    #[test]
    fn multiplicative_identity() {
        let a = Rf::new(lp(&[(3, 2), (-1, 1)]), lp(&[(2, 1), (0, 5)])).unwrap();
        assert_eq!(&a * &Rf::one(), a);
    }

    #[test]
    fn expands_product() {
        let a = rf(&[(1, 1), (-1, 1)]);
        let b = rf(&[(1, 1), (-1, -1)]);
        assert_eq!(&a * &b, rf(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Rf::one().checked_div(&Rf::zero()), Err(Error::DivisionByZero));
        assert!(Rf::new(LaurentPoly::one(), LaurentPoly::zero()).is_err());
        assert!(Rf::zero().inv().is_err());
    }

    #[test]
    fn monomial_denominator_becomes_negative_exponent() {
        let x = Rf::new(lp(&[(0, 3)]), lp(&[(2, 6)])).unwrap();
        assert!(x.is_laurent());
        assert_eq!(x, Rf::v_pow(-2).scale(&Q::new(1.into(), 2.into())));
    }

    #[test]
    fn normal_form_denominator_is_monic_with_constant_term() {
        let x = Rf::new(lp(&[(0, 1)]), lp(&[(3, 4), (1, 2)])).unwrap();
        let d = x.denominator();
        assert_eq!(d.low_exponent(), 0);
        assert!(d.leading_coeff().unwrap().is_one());
        assert!(!d.coeff(0).is_zero());
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_integer(2, 1), rf(&[(2, 1), (-2, 1)]));
        assert_eq!(q_integer(0, 1), Rf::zero());
        assert_eq!(q_integer(3, 1), rf(&[(4, 1), (0, 1), (-4, 1)]));
        assert_eq!(q_integer(-3, 1), -q_integer(3, 1));
        assert_eq!(q_integer(2, 2), rf(&[(4, 1), (-4, 1)]));
    }

    /// Balanced q-Pascal rule, independent of the factorial route:
    /// [m, t] = q_i^{t}[m−1, t] + q_i^{−(m−t)}[m−1, t−1].
    fn pascal_oracle(m: i64, t: i64, d: u32) -> Rf {
        if t == 0 || t == m {
            return Rf::one();
        }
        let a = &Rf::v_pow((2 * d as i64 * t) as i32) * &pascal_oracle(m - 1, t, d);
        let b = &Rf::v_pow((-2 * d as i64 * (m - t)) as i32) * &pascal_oracle(m - 1, t - 1, d);
        &a + &b
    }

    #[test]
    fn gauss_binomials() {
        assert_eq!(gauss_binomial(2, 1, 1).unwrap(), q_integer(2, 1));
        for m in 0..6 {
            assert_eq!(gauss_binomial(m, 0, 1).unwrap(), Rf::one());
        }
        let g = gauss_binomial(4, 2, 1).unwrap();
        assert_eq!(g, pascal_oracle(4, 2, 1));
        assert_eq!(g, rf(&[(8, 1), (4, 1), (0, 2), (-4, 1), (-8, 1)]));
        for d in 1..=3 {
            for m in 0..7 {
                for t in 0..=m {
                    let g = gauss_binomial(m, t, d).unwrap();
                    assert_eq!(g, pascal_oracle(m, t, d));
                    assert_eq!(g, gauss_binomial(m, m - t, d).unwrap());
                    assert_eq!(g.bar(), g);
                }
            }
        }
        assert!(gauss_binomial(3, 4, 1).is_err());
        assert!(gauss_binomial(3, -1, 1).is_err());
    }

    #[test]
    fn specialization() {
        let two = q_int(2);
        let x = rf(&[(2, 1), (-2, 1)]).specialize(&two).unwrap();
        assert_eq!(x, NumericValue::Exact(Q::new(17.into(), 4.into())));
        assert_eq!(Rf::one().specialize(&two).unwrap(), NumericValue::Exact(Q::one()));
        let g = gauss_binomial(4, 2, 1).unwrap().specialize(&two).unwrap();
        let oracle = pascal_oracle(4, 2, 1).specialize(&two).unwrap();
        assert_eq!(g, oracle);
        // 256 + 16 + 2 + 1/16 + 1/256
        assert_eq!(
            g,
            NumericValue::Exact(Q::new((65536 + 4096 + 512 + 16 + 1).into(), 256.into()))
        );
    }

    #[test]
    fn specialization_rejects_poles_and_bad_points() {
        let x = Rf::new(LaurentPoly::one(), lp(&[(1, 1), (0, -2)])).unwrap();
        assert!(matches!(x.specialize(&q_int(2)), Err(Error::Pole(_))));
        assert!(x.specialize(&Q::one()).is_err());
        assert!(x.specialize(&q_int(-3)).is_err());
    }

    #[test]
    fn canonical_text() {
        let x = Rf::new(lp(&[(2, 3), (-1, -1)]), lp(&[(0, 2), (1, 3)])).unwrap();
        let s = x.to_canonical();
        assert_eq!(s, "-1/3*v^-1 + 1*v^2 / 2/3*v^0 + 1*v^1");
        assert_eq!(Rf::parse_canonical(&s).unwrap(), x);
        assert_eq!(Rf::zero().to_canonical(), "0");
        assert_eq!(q_integer(2, 1).to_canonical(), "1*v^-2 + 1*v^2");
    }

    fn arb_lp() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-4i32..5, -5i64..6), 0..4).prop_map(|t| {
            LaurentPoly::from_terms(t.into_iter().map(|(e, c)| (e, q_int(c))))
        })
    }

    fn arb_rf() -> impl Strategy<Value = Rf> {
        (arb_lp(), arb_lp()).prop_map(|(n, d)| {
            if d.is_zero() {
                Rf::from_laurent(n)
            } else {
                Rf::new(n, d).unwrap()
            }
        })
    }

    proptest! {
        #[test]
        fn normalization_is_idempotent(x in arb_rf()) {
            let again = Rf::new(x.numerator().clone(), x.denominator().clone()).unwrap();
            prop_assert_eq!(&again, &x);
        }

        #[test]
        fn field_laws(a in arb_rf(), b in arb_rf(), c in arb_rf()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, Rf::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), Rf::one());
            }
        }

        #[test]
        fn canonical_round_trip(a in arb_rf()) {
            prop_assert_eq!(Rf::parse_canonical(&a.to_canonical()).unwrap(), a);
        }

        #[test]
        fn bar_is_an_involutive_automorphism(a in arb_rf(), b in arb_rf()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        }

        #[test]
        fn q_numbers_are_bar_invariant(n in -6i64..7, d in 1u32..4) {
            prop_assert_eq!(q_integer(n, d).bar(), q_integer(n, d));
        }

        #[test]
        fn specialize_is_a_ring_homomorphism(a in arb_rf(), b in arb_rf()) {
            let two = q_int(2);
            if let (Ok(x), Ok(y)) = (a.specialize(&two), b.specialize(&two)) {
                let (x, y) = (x.as_exact().unwrap().clone(), y.as_exact().unwrap().clone());
                let s = (&a + &b).specialize(&two).unwrap();
                let p = (&a * &b).specialize(&two).unwrap();
                prop_assert_eq!(s, NumericValue::Exact(&x + &y));
                prop_assert_eq!(p, NumericValue::Exact(&x * &y));
            }
        }
    }
}
