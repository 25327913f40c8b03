//! Exact scalars over a prime field `F_p` (p ≡ 3 mod 4) or the rationals,
//! and the quadratic extension `E = F[i]` with `i² = −1`.
//!
//! Both fields share one runtime representation so that every geometric
//! type in the crate is field-agnostic. Values carry their field; mixing
//! fields is reported as [`Error::FieldMismatch`] by the `try_*` methods and
//! panics in the operator impls.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};

use crate::error::{Error, Result};

/// Which field the scalars live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime(u32),
    Rational,
}

/// A validated field description. Prime fields must satisfy p ≡ 3 (mod 4),
/// which for odd primes is equivalent to −1 being a non-square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    kind: FieldKind,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 {
            return Err(Error::InvalidField(format!("p = {p} exceeds 2^32")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p == 2 {
            return Err(Error::InvalidField("characteristic 2 is not supported".into()));
        }
        if p % 4 != 3 {
            return Err(Error::InvalidField(format!(
                "p = {p} is 1 mod 4, so -1 is a square"
            )));
        }
        Ok(FieldSpec {
            kind: FieldKind::Prime(p as u32),
        })
    }

    pub fn rational() -> Self {
        FieldSpec {
            kind: FieldKind::Rational,
        }
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn modulus(&self) -> Option<u32> {
        match self.kind {
            FieldKind::Prime(p) => Some(p),
            FieldKind::Rational => None,
        }
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        self.modulus().map_or(0, u64::from)
    }

    pub fn is_prime(&self) -> bool {
        self.modulus().is_some()
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    /// The image of an integer in the field.
    pub fn int(&self, v: i64) -> Scalar {
        match self.kind {
            FieldKind::Prime(p) => Scalar::modular(v.rem_euclid(p as i64) as u32, p),
            FieldKind::Rational => Scalar(Repr::Rat(Ratio::from_integer(v as i128))),
        }
    }

    /// `num / den` as a field element.
    pub fn ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        match self.kind {
            FieldKind::Prime(_) => self.int(num).try_div(self.int(den)),
            FieldKind::Rational => Ok(Scalar(Repr::Rat(Ratio::new(num as i128, den as i128)))),
        }
    }

    /// The residue `v mod p` for prime fields, or the integer `v` for rationals.
    pub fn residue(&self, v: u64) -> Scalar {
        match self.kind {
            FieldKind::Prime(p) => Scalar::modular((v % p as u64) as u32, p),
            FieldKind::Rational => Scalar(Repr::Rat(Ratio::from_integer(v as i128))),
        }
    }

    /// All elements in residue order. Prime fields only.
    pub fn elements(&self) -> Result<impl Iterator<Item = Scalar> + Clone> {
        match self.kind {
            FieldKind::Prime(p) => Ok((0..p).map(move |v| Scalar::modular(v, p))),
            FieldKind::Rational => Err(Error::UnsupportedForRationals),
        }
    }

    /// Parses `n`, `-n` or `n/d`. Prime-field inputs are reduced mod p.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::InvalidParameter(format!("cannot parse scalar {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<i128>().map_err(|_| bad())?,
                d.trim().parse::<i128>().map_err(|_| bad())?,
            ),
            None => (s.parse::<i128>().map_err(|_| bad())?, 1),
        };
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        match self.kind {
            FieldKind::Prime(p) => {
                let n = Scalar::modular(num.rem_euclid(p as i128) as u32, p);
                let d = Scalar::modular(den.rem_euclid(p as i128) as u32, p);
                n.try_div(d)
            }
            FieldKind::Rational => Ok(Scalar(Repr::Rat(Ratio::new(num, den)))),
        }
    }

    /// The imaginary unit of `E = F[i]`.
    pub fn i(&self) -> ExtScalar {
        ExtScalar {
            re: self.zero(),
            im: self.one(),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Prime(p) => write!(f, "p:{p}"),
            FieldKind::Rational => f.write_str("rational"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "rational" {
            return Ok(FieldSpec::rational());
        }
        match s.strip_prefix("p:") {
            Some(p) => {
                let p = p
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidField(format!("bad prime in {s:?}")))?;
                FieldSpec::prime(p)
            }
            None => Err(Error::InvalidField(format!(
                "expected `p:<prime>` or `rational`, got {s:?}"
            ))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    /// `barrett = ⌊(2⁶⁴ − 1)/modulus⌋`, fixed by the modulus.
    Mod { value: u32, modulus: u32, barrett: u64 },
    Rat(Ratio<i128>),
}

/// An element of F in canonical form: residue in `[0, p)` or a reduced
/// fraction with positive denominator. Equality is representational.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(Repr);

#[inline]
fn rat_overflow() -> ! {
    panic!("rational arithmetic overflowed i128")
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn is_perfect_square(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    let r = n.sqrt();
    r * r == n
}

/// Rational arithmetic with an integer fast path. Mixed or mismatched
/// operands are a field mismatch.
#[inline(never)]
fn rat_binop(
    a: Repr,
    b: Repr,
    int_op: fn(i128, i128) -> Option<i128>,
    rat_op: fn(&Ratio<i128>, &Ratio<i128>) -> Option<Ratio<i128>>,
) -> Result<Scalar> {
    match (a, b) {
        (Repr::Rat(a), Repr::Rat(b)) => {
            let r = if a.is_integer() && b.is_integer() {
                int_op(*a.numer(), *b.numer()).map(Ratio::from_integer)
            } else {
                rat_op(&a, &b)
            };
            Ok(Scalar(Repr::Rat(r.unwrap_or_else(|| rat_overflow()))))
        }
        _ => Err(Error::FieldMismatch),
    }
}

impl Scalar {
    #[inline]
    fn modular(value: u32, modulus: u32) -> Self {
        Scalar(Repr::Mod {
            value,
            modulus,
            barrett: u64::MAX / modulus as u64,
        })
    }

    #[inline]
    pub fn field(&self) -> FieldSpec {
        match self.0 {
            Repr::Mod { modulus, .. } => FieldSpec {
                kind: FieldKind::Prime(modulus),
            },
            Repr::Rat(_) => FieldSpec::rational(),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Mod { value, .. } => *value == 0,
            Repr::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Mod { value, .. } => *value == 1,
            Repr::Rat(r) => r.is_one(),
        }
    }

    /// Residue in `[0, p)` for prime-field scalars.
    pub fn residue(&self) -> Option<u32> {
        match self.0 {
            Repr::Mod { value, .. } => Some(value),
            Repr::Rat(_) => None,
        }
    }

    /// Numerator and (positive) denominator for rational scalars.
    pub fn as_fraction(&self) -> Option<(i128, i128)> {
        match &self.0 {
            Repr::Mod { .. } => None,
            Repr::Rat(r) => Some((*r.numer(), *r.denom())),
        }
    }

    #[inline]
    pub fn try_add(self, rhs: Scalar) -> Result<Scalar> {
        if let (Repr::Mod { value: a, modulus: p, barrett }, Repr::Mod { value: b, modulus: q, .. }) = (self.0, rhs.0) {
            if p == q {
                let s = a as u64 + b as u64;
                let s = if s >= p as u64 { s - p as u64 } else { s };
                return Ok(Scalar(Repr::Mod { value: s as u32, modulus: p, barrett }));
            }
        }
        rat_binop(self.0, rhs.0, i128::checked_add, |x, y| x.checked_add(y))
    }

    #[inline]
    pub fn try_sub(self, rhs: Scalar) -> Result<Scalar> {
        if let (Repr::Mod { value: a, modulus: p, barrett }, Repr::Mod { value: b, modulus: q, .. }) = (self.0, rhs.0) {
            if p == q {
                let value = if a >= b { a - b } else { a + (p - b) };
                return Ok(Scalar(Repr::Mod { value, modulus: p, barrett }));
            }
        }
        rat_binop(self.0, rhs.0, i128::checked_sub, |x, y| x.checked_sub(y))
    }

    #[inline]
    pub fn try_mul(self, rhs: Scalar) -> Result<Scalar> {
        if let (Repr::Mod { value: a, modulus: p, barrett }, Repr::Mod { value: b, modulus: q, .. }) = (self.0, rhs.0) {
            if p == q {
                // Barrett reduction; the estimate is short by at most 2p
                let x = a as u64 * b as u64;
                let quot = ((x as u128 * barrett as u128) >> 64) as u64;
                let mut r = x - quot * p as u64;
                while r >= p as u64 {
                    r -= p as u64;
                }
                return Ok(Scalar(Repr::Mod { value: r as u32, modulus: p, barrett }));
            }
        }
        rat_binop(self.0, rhs.0, i128::checked_mul, |x, y| x.checked_mul(y))
    }

    pub fn try_div(self, rhs: Scalar) -> Result<Scalar> {
        if self.field() != rhs.field() {
            return Err(Error::FieldMismatch);
        }
        self.try_mul(rhs.inv()?)
    }

    pub fn inv(self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self.0 {
            Repr::Mod { value, modulus, .. } => Scalar::modular(
                pow_mod(value as u64, modulus as u64 - 2, modulus as u64) as u32,
                modulus,
            ),
            Repr::Rat(r) => Scalar(Repr::Rat(r.recip())),
        })
    }

    #[inline]
    pub fn square(self) -> Scalar {
        self * self
    }

    #[inline]
    pub fn double(self) -> Scalar {
        self + self
    }

    /// Multiplies by ½; the characteristic is never 2.
    pub fn half(self) -> Scalar {
        let two = self.field().int(2);
        self * two.inv().expect("2 is invertible in odd characteristic")
    }

    /// Whether `self = x²` for some x in the same field. For rationals this
    /// is the reduced numerator/denominator perfect-square test.
    pub fn is_square(&self) -> bool {
        match &self.0 {
            Repr::Mod { value, modulus, .. } => {
                *value == 0
                    || pow_mod(*value as u64, (*modulus as u64 - 1) / 2, *modulus as u64) == 1
            }
            Repr::Rat(r) => is_perfect_square(*r.numer()) && is_perfect_square(*r.denom()),
        }
    }

    /// Sign of a rational scalar; prime-field scalars have no order.
    pub fn signum(&self) -> Option<Ordering> {
        match &self.0 {
            Repr::Mod { .. } => None,
            Repr::Rat(r) => Some(if r.is_positive() {
                Ordering::Greater
            } else if r.is_negative() {
                Ordering::Less
            } else {
                Ordering::Equal
            }),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Mod { value, .. } => write!(f, "{value}"),
            Repr::Rat(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    #[inline]
    fn add(self, rhs: Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar field mismatch")
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    #[inline]
    fn sub(self, rhs: Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar field mismatch")
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    #[inline]
    fn mul(self, rhs: Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar field mismatch")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    #[inline]
    fn neg(self) -> Scalar {
        match self.0 {
            Repr::Mod { value, modulus, barrett } => Scalar(Repr::Mod {
                value: if value == 0 { 0 } else { modulus - value },
                modulus,
                barrett,
            }),
            Repr::Rat(r) => Scalar(Repr::Rat(-r)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith(op: ArithOp, a: Scalar, b: Scalar) -> Result<Scalar> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

/// An element `re + im·i` of `E = F[i]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtScalar {
    re: Scalar,
    im: Scalar,
}

impl ExtScalar {
    pub fn new(re: Scalar, im: Scalar) -> Result<Self> {
        if re.field() != im.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(ExtScalar { re, im })
    }

    pub fn real(re: Scalar) -> Self {
        ExtScalar {
            re,
            im: re.field().zero(),
        }
    }

    pub fn re(&self) -> Scalar {
        self.re
    }

    pub fn im(&self) -> Scalar {
        self.im
    }

    pub fn field(&self) -> FieldSpec {
        self.re.field()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    pub fn conj(self) -> Self {
        ExtScalar {
            re: self.re,
            im: -self.im,
        }
    }

    /// `½(ω + ω̄)`, a purely real element.
    pub fn real_part(self) -> Self {
        (self + self.conj()).scale(self.field().one().half())
    }

    /// `½(ω − ω̄)`, a purely imaginary element.
    pub fn imag_part(self) -> Self {
        (self - self.conj()).scale(self.field().one().half())
    }

    /// `ω·ω̄ = re² + im²`.
    pub fn norm(self) -> Scalar {
        self.re.square() + self.im.square()
    }

    pub fn scale(self, k: Scalar) -> Self {
        ExtScalar {
            re: self.re * k,
            im: self.im * k,
        }
    }

    pub fn try_add(self, rhs: Self) -> Result<Self> {
        Ok(ExtScalar {
            re: self.re.try_add(rhs.re)?,
            im: self.im.try_add(rhs.im)?,
        })
    }

    pub fn try_mul(self, rhs: Self) -> Result<Self> {
        let ac = self.re.try_mul(rhs.re)?;
        let bd = self.im.try_mul(rhs.im)?;
        let ad = self.re.try_mul(rhs.im)?;
        let bc = self.im.try_mul(rhs.re)?;
        Ok(ExtScalar {
            re: ac - bd,
            im: ad + bc,
        })
    }

    /// Nonzero elements are invertible because `re² + im² = 0` forces
    /// `re = im = 0` when −1 is not a square.
    pub fn inv(self) -> Result<Self> {
        let n = self.norm().inv()?;
        Ok(self.conj().scale(n))
    }

    pub fn try_div(self, rhs: Self) -> Result<Self> {
        if self.field() != rhs.field() {
            return Err(Error::FieldMismatch);
        }
        self.try_mul(rhs.inv()?)
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl Add for ExtScalar {
    type Output = ExtScalar;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        ExtScalar {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for ExtScalar {
    type Output = ExtScalar;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        ExtScalar {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for ExtScalar {
    type Output = ExtScalar;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(rhs).expect("scalar field mismatch")
    }
}

impl Neg for ExtScalar {
    type Output = ExtScalar;
    fn neg(self) -> Self {
        ExtScalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtOp {
    Add,
    Mul,
    Conj,
    Re,
    Im,
}

/// Binary ops need `rhs`; unary ops ignore it.
pub fn ext_arith(op: ExtOp, w: ExtScalar, rhs: Option<ExtScalar>) -> Result<ExtScalar> {
    let need = || rhs.ok_or_else(|| Error::InvalidParameter(format!("{op:?} needs two operands")));
    match op {
        ExtOp::Add => w.try_add(need()?),
        ExtOp::Mul => w.try_mul(need()?),
        ExtOp::Conj => Ok(w.conj()),
        ExtOp::Re => Ok(w.real_part()),
        ExtOp::Im => Ok(w.imag_part()),
    }
}
