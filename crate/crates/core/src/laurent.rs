//! Integer Laurent polynomials in one variable `t`.
//!
//! Values are kept canonical: the stored coefficient run never starts or ends
//! with a zero, and the zero polynomial owns no coefficients at all. Equality
//! of two canonical values is therefore plain structural equality.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// An exact element of `Z[t, t^-1]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^degree`.
    pub fn monomial(c: i64, degree: i32) -> Self {
        Self::from_big_monomial(BigInt::from(c), degree)
    }

    pub fn from_big_monomial(c: BigInt, degree: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: degree, coeffs: vec![c] }
    }

    /// Builds `sum_k coeffs[k] * t^(low + k)`.
    pub fn from_coeffs(low: i32, coeffs: &[i64]) -> Self {
        Self::from_big_coeffs(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_big_coeffs(low: i32, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
            return;
        }
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i32;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for `±t^k`, the units of the ring.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].abs().is_one()
    }

    /// Lowest degree carrying a nonzero coefficient; `None` for zero.
    pub fn low_degree(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_degree(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    /// Number of stored coefficients (the degree span plus one).
    pub fn span(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient run, lowest degree first.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: i32) -> BigInt {
        let idx = degree - self.low;
        if idx < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_default()
    }

    /// Nonzero terms `(degree, coefficient)` in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i32, c))
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// The substitution `t -> t^-1`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let high = self.high_degree().unwrap();
        let coeffs = self.coeffs.iter().rev().cloned().collect();
        LaurentPoly { low: -high, coeffs }
    }

    /// Value at an integer point. Negative powers are only defined at `±1`.
    pub fn eval_unit_point(&self, at_minus_one: bool) -> BigInt {
        self.terms()
            .map(|(d, c)| if at_minus_one && d.rem_euclid(2) == 1 { -c.clone() } else { c.clone() })
            .fold(BigInt::zero(), |acc, c| acc + c)
    }

    /// Canonical representative of the class modulo units `±t^k`: lowest
    /// degree zero and a positive lowest coefficient.
    pub fn normalize_unit(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let negate = self.coeffs[0].is_negative();
        let coeffs = if negate {
            self.coeffs.iter().map(|c| -c).collect()
        } else {
            self.coeffs.clone()
        };
        LaurentPoly { low: 0, coeffs }
    }

    pub fn equal_up_to_unit(&self, other: &Self) -> bool {
        self.normalize_unit() == other.normalize_unit()
    }

    /// True when `self == other` or `self == -other`.
    pub fn equal_up_to_sign(&self, other: &Self) -> bool {
        self == other || *self == -other
    }

    /// Returns `(±1, k)` such that `self = sign * t^k * other`, if one exists.
    pub fn unit_ratio(&self, other: &Self) -> Option<(i8, i32)> {
        if self.is_zero() || other.is_zero() || self.span() != other.span() {
            return (self.is_zero() && other.is_zero()).then_some((1, 0));
        }
        let k = self.low - other.low;
        if self.coeffs == other.coeffs {
            Some((1, k))
        } else if self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| *a == -b) {
            Some((-1, k))
        } else {
            None
        }
    }

    /// Exact division in `Z[t, t^-1]`. Returns `None` when `divisor` does not
    /// divide `self` (or is zero).
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.span() > self.span() {
            return None;
        }
        let d = &divisor.coeffs;
        let dlead = d.last().unwrap();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - d.len() + 1;
        let mut q = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + d.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (quot, r) = top.div_rem(dlead);
            if !r.is_zero() {
                return None;
            }
            for (j, dj) in d.iter().enumerate() {
                if !dj.is_zero() {
                    rem[i + j] -= &quot * dj;
                }
            }
            q[i] = quot;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_big_coeffs(self.low - divisor.low, q))
    }

    /// Inverse of a unit `±t^k`.
    pub fn unit_inverse(&self) -> Option<Self> {
        self.is_unit()
            .then(|| LaurentPoly { low: -self.low, coeffs: vec![self.coeffs[0].clone()] })
    }

    /// `self += a * b`, without materializing the product.
    pub fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let plow = a.low + b.low;
        let plen = a.span() + b.span() - 1;
        if self.is_zero() {
            *self = a * b;
            return;
        }
        let new_low = self.low.min(plow);
        let new_high = (self.low + self.span() as i32).max(plow + plen as i32);
        let mut coeffs = vec![BigInt::zero(); (new_high - new_low) as usize];
        let off = (self.low - new_low) as usize;
        for (k, c) in self.coeffs.drain(..).enumerate() {
            coeffs[off + k] = c;
        }
        let poff = (plow - new_low) as usize;
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    coeffs[poff + i + j] += x * y;
                }
            }
        }
        self.low = new_low;
        self.coeffs = coeffs;
        self.trim();
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate_other { -other } else { other.clone() };
        }
        let low = self.low.min(other.low);
        let high = (self.low + self.span() as i32).max(other.low + other.span() as i32);
        let mut coeffs = vec![BigInt::zero(); (high - low) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(other.low - low) as usize + k];
            if negate_other {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        Self::from_big_coeffs(low, coeffs)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, false)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        self.combine(&rhs, false)
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, true)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self.combine(&rhs, true)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.combine(rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.combine(rhs, true);
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.span() + rhs.span() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    coeffs[i + j] += x * y;
                }
            }
        }
        LaurentPoly::from_big_coeffs(self.low + rhs.low, coeffs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in &mut self.coeffs {
            *c = -core::mem::take(c);
        }
        self
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordering by degree span, then lowest degree, then coefficients. Only used to
/// give collections a deterministic order.
impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.span()
            .cmp(&other.span())
            .then(self.low.cmp(&other.low))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

/// Renders descending by degree with explicit signs: `t^2 - t + 1`,
/// `-t^6 + t^5 - 2t^3`, `t^-1 + 3`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            if deg == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match deg {
                1 => f.write_str("t")?,
                _ => write!(f, "t^{deg}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the rendering format. Also tolerates `*` between coefficient and
    /// variable and braces around exponents (`t^{-1}`).
    fn from_str(s: &str) -> Result<Self, Error> {
        let text: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        let bad = || Error::MalformedInput(alloc::format!("bad polynomial '{s}'"));
        if text.is_empty() {
            return Err(bad());
        }
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut acc = LaurentPoly::zero();
        while pos < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(bad());
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff = if pos > start {
                text[start..pos].parse::<BigInt>().map_err(|_| bad())?
            } else {
                BigInt::one()
            };
            let mut degree = 0i32;
            if pos < bytes.len() && bytes[pos] == b't' {
                pos += 1;
                degree = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let braced = pos < bytes.len() && bytes[pos] == b'{';
                    if braced {
                        pos += 1;
                    }
                    let estart = pos;
                    if pos < bytes.len() && bytes[pos] == b'-' {
                        pos += 1;
                    }
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    degree = text[estart..pos].parse::<i32>().map_err(|_| bad())?;
                    if braced {
                        if pos >= bytes.len() || bytes[pos] != b'}' {
                            return Err(bad());
                        }
                        pos += 1;
                    }
                }
            } else if pos == start {
                return Err(bad());
            }
            acc += &LaurentPoly::from_big_monomial(sign * coeff, degree);
        }
        Ok(acc)
    }
}
