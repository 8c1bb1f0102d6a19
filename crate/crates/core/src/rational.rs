//! Quotients of Laurent polynomials and their directed series expansions.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{dense, LaurentPolynomial};
use crate::scalar::Coefficient;

/// Which formal neighbourhood a rational function is expanded in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Power series in `w`, finitely many negative powers.
    AtZero,
    /// Power series in `w^-1`, finitely many positive powers.
    AtInfinity,
}

impl Direction {
    fn name(self) -> &'static str {
        match self {
            Direction::AtZero => "at zero",
            Direction::AtInfinity => "at infinity",
        }
    }
}

/// Coefficients of a series over the inclusive window `lo..=hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoefficientTable<T> {
    lo: i64,
    hi: i64,
    values: Vec<T>,
}

impl<T: Coefficient> CoefficientTable<T> {
    pub fn zeros(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty window [{lo}, {hi}]");
        Self {
            lo,
            hi,
            values: vec![T::zero(); (hi - lo + 1) as usize],
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Coefficient at degree `d`; degrees outside the window read as zero.
    pub fn get(&self, d: i64) -> T {
        if d < self.lo || d > self.hi {
            T::zero()
        } else {
            self.values[(d - self.lo) as usize].clone()
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &T)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(k, v)| (self.lo + k as i64, v))
    }

    /// Pointwise sum of two tables over the same window.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.lo, self.hi), (other.lo, other.hi), "window mismatch");
        Self {
            lo: self.lo,
            hi: self.hi,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    /// Restriction to a sub-window.
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        assert!(self.lo <= lo && hi <= self.hi && lo <= hi);
        Self {
            lo,
            hi,
            values: (lo..=hi).map(|d| self.get(d)).collect(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }
}

/// `num / den` with `den ≠ 0`, kept in canonical form: numerator and
/// denominator coprime, denominator's lowest term in degree 0 with a positive
/// coefficient, no common integer content.
///
/// Equality is decided by cross-multiplication, never by truncated series.
#[derive(Clone)]
pub struct RationalFunction<T> {
    num: LaurentPolynomial<T>,
    den: LaurentPolynomial<T>,
}

impl<T: Coefficient> RationalFunction<T> {
    /// # Panics
    /// If `den` is zero.
    pub fn new(num: LaurentPolynomial<T>, den: LaurentPolynomial<T>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        Self::canonical(num, den)
    }

    pub fn try_new(num: LaurentPolynomial<T>, den: LaurentPolynomial<T>) -> Option<Self> {
        (!den.is_zero()).then(|| Self::canonical(num, den))
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPolynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPolynomial::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(LaurentPolynomial::constant(T::from_int(c)))
    }

    /// The monomial `w^d`.
    pub fn w(d: i64) -> Self {
        Self::from_poly(LaurentPolynomial::w(d))
    }

    pub fn from_poly(p: LaurentPolynomial<T>) -> Self {
        Self::new(p, LaurentPolynomial::one())
    }

    /// `1 / (1 - w^k)`.
    pub fn geometric_inverse(k: i64) -> Self {
        Self::new(
            LaurentPolynomial::one(),
            LaurentPolynomial::one() - LaurentPolynomial::w(k),
        )
    }

    fn canonical(num: LaurentPolynomial<T>, den: LaurentPolynomial<T>) -> Self {
        if num.is_zero() {
            return Self {
                num,
                den: LaurentPolynomial::one(),
            };
        }
        let (nlo, nd) = num.to_dense();
        let (dlo, dd) = den.to_dense();
        let g = dense::gcd(&nd, &dd);
        let (nd, dd) = if g.len() > 1 {
            (
                dense::div_exact(&nd, &g).expect("gcd divides numerator"),
                dense::div_exact(&dd, &g).expect("gcd divides denominator"),
            )
        } else {
            (nd, dd)
        };
        let mut num = LaurentPolynomial::from_terms(
            nd.into_iter().enumerate().map(|(k, c)| (k as i64 + nlo - dlo, c)),
        );
        let mut den =
            LaurentPolynomial::from_terms(dd.into_iter().enumerate().map(|(k, c)| (k as i64, c)));
        // dividing by g may leave a monomial factor in the denominator
        let shift = den.min_degree().unwrap();
        if shift != 0 {
            num = num.shift(-shift);
            den = den.shift(-shift);
        }
        let c = num.content().gcd(&den.content());
        let c = if den.lowest_coeff().is_negative() { -c } else { c };
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        Self { num, den }
    }

    pub fn numerator(&self) -> &LaurentPolynomial<T> {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPolynomial<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The Laurent polynomial this function equals, if it is one.
    pub fn as_polynomial(&self) -> Option<LaurentPolynomial<T>> {
        if self.den.num_terms() == 1 && self.den.lowest_coeff().is_one() {
            Some(self.num.shift(-self.den.min_degree().unwrap()))
        } else {
            None
        }
    }

    /// Multiplication by `w^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            num: self.num.shift(k),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::new(self.num.scale(&T::from_int(c)), self.den.clone())
    }

    /// # Panics
    /// If `self` is zero.
    pub fn recip(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Integer power; negative exponents invert.
    ///
    /// # Panics
    /// For a negative exponent of zero.
    pub fn powi(&self, e: i32) -> Self {
        let base = if e < 0 { self.recip() } else { self.clone() };
        let k = e.unsigned_abs();
        Self::new(base.num.pow(k), base.den.pow(k))
    }

    /// `a(w^-1)`, cleared back to Laurent polynomials.
    pub fn inverse_variable(&self) -> Self {
        self.substitute_power(-1)
    }

    /// `a(w^k)`.
    pub fn substitute_power(&self, k: i64) -> Self {
        Self::new(self.num.substitute_power(k), self.den.substitute_power(k))
    }

    /// `a(-w)`.
    pub fn reflect(&self) -> Self {
        Self::new(self.num.reflect(), self.den.reflect())
    }

    /// The unique formal series of `self` in direction `dir`, restricted to
    /// `lo..=hi`.
    ///
    /// Uses degreewise long division, so the denominator's extreme coefficient
    /// on the expansion side must be `±1`.
    pub fn expand(&self, dir: Direction, lo: i64, hi: i64) -> Result<CoefficientTable<T>> {
        if lo > hi {
            return Err(Error::InvalidWindow { lo, hi });
        }
        match dir {
            Direction::AtZero => expand_at_zero(&self.num, &self.den, lo, hi),
            Direction::AtInfinity => {
                let flipped = expand_at_zero(
                    &self.num.substitute_power(-1),
                    &self.den.substitute_power(-1),
                    -hi,
                    -lo,
                )
                .map_err(|_| Error::NonUnitLeadingTerm {
                    direction: dir.name(),
                    coefficient: self.den.highest_coeff().to_string(),
                })?;
                Ok(CoefficientTable {
                    lo,
                    hi,
                    values: (lo..=hi).map(|d| flipped.get(-d)).collect(),
                })
            }
        }
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.display_in(var)
        } else {
            format!("({})/({})", self.num.display_in(var), self.den.display_in(var))
        }
    }

    /// Parses `p` or `(p)/(q)` in the variable `var`.
    pub fn parse_in(s: &str, var: char) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            let (num, rest) = rest
                .split_once(")/(")
                .ok_or_else(|| Error::Parse(format!("expected (num)/(den), got {s:?}")))?;
            let den = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?;
            let den = LaurentPolynomial::parse_in(den, var)?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Self::new(LaurentPolynomial::parse_in(num, var)?, den))
        } else {
            Ok(Self::from_poly(LaurentPolynomial::parse_in(s, var)?))
        }
    }
}

fn expand_at_zero<T: Coefficient>(
    num: &LaurentPolynomial<T>,
    den: &LaurentPolynomial<T>,
    lo: i64,
    hi: i64,
) -> Result<CoefficientTable<T>> {
    let mut table = CoefficientTable::zeros(lo, hi);
    if num.is_zero() {
        return Ok(table);
    }
    let lead = den.lowest_coeff();
    if !lead.is_unit() {
        return Err(Error::NonUnitLeadingTerm {
            direction: Direction::AtZero.name(),
            coefficient: lead.to_string(),
        });
    }
    let (dlo, dcoeffs) = den.to_dense();
    let start = num.min_degree().unwrap() - dlo;
    if start > hi {
        return Ok(table);
    }
    // c_k = (num_{k+dlo} - Σ_{j≥1} den_j c_{k-j}) / den_0
    let len = (hi - start + 1) as usize;
    let mut series: Vec<T> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = num.coeff(start + k as i64 + dlo);
        for (j, dj) in dcoeffs.iter().enumerate().skip(1).take(k) {
            if !dj.is_zero() {
                acc = acc - dj.clone() * series[k - j].clone();
            }
        }
        series.push(acc * lead.clone());
    }
    for (k, c) in series.into_iter().enumerate() {
        let d = start + k as i64;
        if d >= lo {
            table.values[(d - lo) as usize] = c;
        }
    }
    Ok(table)
}

impl<T: Coefficient> PartialEq for RationalFunction<T> {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<T: Coefficient> Eq for RationalFunction<T> {}

impl<T: Coefficient> fmt::Display for RationalFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("w"))
    }
}

impl<T: Coefficient> fmt::Debug for RationalFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl<T: Coefficient> FromStr for RationalFunction<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_in(s, 'w')
    }
}

impl<T: Coefficient> From<LaurentPolynomial<T>> for RationalFunction<T> {
    fn from(p: LaurentPolynomial<T>) -> Self {
        Self::from_poly(p)
    }
}

impl<'a, T: Coefficient> Add<&'a RationalFunction<T>> for &'a RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn add(self, rhs: &'a RationalFunction<T>) -> RationalFunction<T> {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl<'a, T: Coefficient> Sub<&'a RationalFunction<T>> for &'a RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn sub(self, rhs: &'a RationalFunction<T>) -> RationalFunction<T> {
        self + &(-rhs)
    }
}

impl<'a, T: Coefficient> Mul<&'a RationalFunction<T>> for &'a RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn mul(self, rhs: &'a RationalFunction<T>) -> RationalFunction<T> {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a, T: Coefficient> Div<&'a RationalFunction<T>> for &'a RationalFunction<T> {
    type Output = RationalFunction<T>;

    /// # Panics
    /// On division by zero.
    fn div(self, rhs: &'a RationalFunction<T>) -> RationalFunction<T> {
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl<T: Coefficient> Neg for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn neg(self) -> RationalFunction<T> {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<T: Coefficient> Neg for RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn neg(self) -> RationalFunction<T> {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<T: Coefficient> $tr<RationalFunction<T>> for RationalFunction<T> {
            type Output = RationalFunction<T>;
            fn $m(self, rhs: RationalFunction<T>) -> RationalFunction<T> {
                (&self).$m(&rhs)
            }
        }
        impl<'a, T: Coefficient> $tr<&'a RationalFunction<T>> for RationalFunction<T> {
            type Output = RationalFunction<T>;
            fn $m(self, rhs: &'a RationalFunction<T>) -> RationalFunction<T> {
                (&self).$m(rhs)
            }
        }
        impl<'a, T: Coefficient> $tr<RationalFunction<T>> for &'a RationalFunction<T> {
            type Output = RationalFunction<T>;
            fn $m(self, rhs: RationalFunction<T>) -> RationalFunction<T> {
                self.$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl<T: Coefficient> std::iter::Sum for RationalFunction<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = LaurentPolynomial<BigInt>;
    type R = RationalFunction<BigInt>;

    fn rf(s: &str) -> R {
        s.parse().unwrap()
    }

    fn ints(t: &CoefficientTable<BigInt>) -> Vec<i64> {
        t.values().iter().map(|v| v.try_into().unwrap()).collect()
    }

    #[test]
    fn additive_inverse_is_zero() {
        let a = R::geometric_inverse(1);
        let sum = &a + &(-&a);
        assert!(sum.is_zero());
        assert!(sum.denominator().is_one());
    }

    #[test]
    fn column_sum_in_u() {
        // u⁴/(1−u) − u⁶/(1−u³) = u⁴(1+u)/(1−u³)
        let lhs = rf("(w^4)/(1 - w)") + rf("(-w^6)/(1 - w^3)");
        assert_eq!(lhs, rf("(w^4 + w^5)/(1 - w^3)"));
    }

    #[test]
    fn polynomial_addition() {
        assert_eq!(R::w(1) + R::w(2), R::from_poly(P::from_dense(1, &[1, 1])));
    }

    #[test]
    fn products() {
        let a = rf("1 - w");
        assert_eq!(&a * &R::geometric_inverse(1), R::one());
        let err = rf("(w^2)/(1 - 2w^2 + w^4)") * R::w(2);
        assert_eq!(err, R::w(4) * R::geometric_inverse(2).powi(2));
        assert_eq!(R::w(-4) * R::w(6), R::w(2));
    }

    #[test]
    fn equality_is_cross_multiplication() {
        assert_eq!(rf("1 - w^2"), R::from_poly(P::from_dense(0, &[1, -1]) * P::from_dense(0, &[1, 1])));
        assert_ne!(R::geometric_inverse(1), R::geometric_inverse(2));
        // non-reduced representations compare equal
        let raw = R {
            num: P::from_dense(0, &[1, 1]),
            den: P::from_dense(0, &[1, 0, -1]),
        };
        assert_eq!(raw, R::geometric_inverse(1));
    }

    #[test]
    fn canonical_form() {
        let a = R::new(P::from_dense(3, &[-2, -2]), P::from_dense(1, &[-2, 0, 2]));
        assert_eq!(a.denominator(), &P::from_dense(0, &[1, -1]));
        assert_eq!(a.numerator(), &P::w(2));
    }

    #[test]
    fn inverse_variable() {
        let a = rf("(w^2)/(1 - w)");
        let inv = a.inverse_variable();
        assert_eq!(inv, R::new(P::w(-1), P::from_dense(0, &[-1, 1])));
        assert_eq!(inv.inverse_variable(), a);
        assert_eq!(R::one().inverse_variable(), R::one());
    }

    #[test]
    fn expansions() {
        let e = rf("(w^2)/(1 - 2w^2 + w^4)");
        assert_eq!(ints(&e.expand(Direction::AtZero, 0, 8).unwrap()), [0, 0, 1, 0, 2, 0, 3, 0, 4]);
        let g = R::geometric_inverse(1);
        assert_eq!(ints(&g.expand(Direction::AtZero, 0, 3).unwrap()), [1, 1, 1, 1]);
        let h = R::geometric_inverse(-1);
        assert_eq!(ints(&h.expand(Direction::AtInfinity, -3, 0).unwrap()), [1, 1, 1, 1]);
        // the same function, expanded at zero, is -w - w^2 - ...
        assert_eq!(ints(&h.expand(Direction::AtZero, 0, 3).unwrap()), [0, -1, -1, -1]);
    }

    #[test]
    fn expansion_precondition() {
        let a = rf("(1)/(2 - w)");
        assert!(matches!(
            a.expand(Direction::AtZero, 0, 3),
            Err(Error::NonUnitLeadingTerm { .. })
        ));
        let b = rf("(1)/(1 - 2w)");
        assert!(b.expand(Direction::AtZero, 0, 3).is_ok());
        assert!(matches!(
            b.expand(Direction::AtInfinity, -3, 0),
            Err(Error::NonUnitLeadingTerm { .. })
        ));
        assert!(matches!(b.expand(Direction::AtZero, 3, 0), Err(Error::InvalidWindow { .. })));
    }

    #[test]
    fn negative_powers() {
        let a = rf("1 - w");
        assert_eq!(a.powi(-2) * a.powi(2), R::one());
        assert_eq!(a.powi(0), R::one());
    }

    #[test]
    fn parse_round_trip() {
        let a = rf("(w^-1 + 3w)/(1 - w^2)");
        assert_eq!(a.to_string().parse::<R>().unwrap(), a);
        assert!("(1)/(0)".parse::<R>().is_err());
        assert!("(1 - w".parse::<R>().is_err());
    }
}
