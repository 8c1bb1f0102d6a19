//! Integer Laurent polynomials in a single variable.
//!
//! The variable is printed as `w` by default. The same type also carries the
//! variables `t`, `x = t²` and `u = -t` of the Bruner–Greenlees comparison;
//! those are obtained with [`LaurentPolynomial::substitute_power`] and
//! [`LaurentPolynomial::reflect`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::Error;
use crate::scalar::Coefficient;

/// A finite sum `Σ a_d w^d` with `d ∈ Z`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial<T> {
    coeffs: BTreeMap<i64, T>,
}

impl<T: Coefficient> Default for LaurentPolynomial<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Coefficient> LaurentPolynomial<T> {
    pub fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(T::one(), 0)
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·w^d`.
    pub fn monomial(c: T, d: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(d, c);
        }
        Self { coeffs }
    }

    /// The monomial `w^d`.
    pub fn w(d: i64) -> Self {
        Self::monomial(T::one(), d)
    }

    /// Builds a polynomial from `(degree, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, T)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    /// Dense constructor: `coeffs[k]` is the coefficient of `w^(lo + k)`.
    pub fn from_dense(lo: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (lo + k as i64, T::from_int(c))),
        )
    }

    /// `1 + w^step + w^(2 step) + ... + w^(step·(count-1))`.
    pub fn geometric(step: i64, count: usize) -> Self {
        Self::from_terms((0..count as i64).map(|k| (k * step, T::one())))
    }

    fn add_term(&mut self, d: i64, c: T) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(d).or_insert_with(T::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.coeffs.remove(&d);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, d: i64) -> T {
        self.coeffs.get(&d).cloned().unwrap_or_else(T::zero)
    }

    /// Nonzero terms in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> + '_ {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Coefficient of the lowest-degree term (zero for the zero polynomial).
    pub fn lowest_coeff(&self) -> T {
        self.coeffs.values().next().cloned().unwrap_or_else(T::zero)
    }

    pub fn highest_coeff(&self) -> T {
        self.coeffs.values().next_back().cloned().unwrap_or_else(T::zero)
    }

    /// Multiplication by `w^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(d, c)| (d + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(d, a)| (*d, a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The substitution `w ↦ w^k`. With `k = -1` this is the inversion of the
    /// variable; with `k = 2` it turns a polynomial in `t` into one in `x = t²`.
    ///
    /// # Panics
    /// If `k == 0`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "w ↦ w^0 is not a ring automorphism");
        Self {
            coeffs: self.coeffs.iter().map(|(d, c)| (d * k, c.clone())).collect(),
        }
    }

    /// The substitution `w ↦ -w`.
    pub fn reflect(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(d, c)| (*d, if d.rem_euclid(2) == 1 { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    /// Terms of degree at least `d`.
    pub fn truncate_below(&self, d: i64) -> Self {
        Self {
            coeffs: self.coeffs.range(d..).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    /// Gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> T {
        self.coeffs
            .values()
            .fold(T::zero(), |g, c| g.gcd(c))
    }

    /// Exact division of every coefficient by `c`.
    ///
    /// # Panics
    /// If some coefficient is not divisible by `c`.
    pub fn div_scalar_exact(&self, c: &T) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(d, a)| {
                    let (q, r) = a.div_rem(c);
                    assert!(r.is_zero(), "inexact scalar division");
                    (*d, q)
                })
                .collect(),
        }
    }

    /// Evaluation at an integer point, for polynomials with no negative
    /// powers. Returns `None` if a negative power is present.
    pub fn eval_at(&self, x: &T) -> Option<T> {
        if self.min_degree().is_some_and(|d| d < 0) {
            return None;
        }
        let mut acc = T::zero();
        let mut last = self.max_degree().unwrap_or(0);
        for (d, c) in self.coeffs.iter().rev() {
            for _ in *d..last {
                acc = acc * x.clone();
            }
            acc = acc + c.clone();
            last = *d;
        }
        for _ in 0..last {
            acc = acc * x.clone();
        }
        Some(acc)
    }

    /// Converts between coefficient rings.
    pub fn convert<U: Coefficient>(&self) -> Option<LaurentPolynomial<U>> {
        let mut coeffs = BTreeMap::new();
        for (d, c) in &self.coeffs {
            coeffs.insert(*d, U::from_i128(c.to_i128()?)?);
        }
        Some(LaurentPolynomial { coeffs })
    }

    /// Renders the polynomial in the variable `var`.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (d, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match *d {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{d}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}{mono}"));
            }
        }
        out
    }

    /// Parses the output of [`display_in`](Self::display_in).
    pub fn parse_in(s: &str, var: char) -> Result<Self, Error> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let mut poly = Self::zero();
        let bad = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
        while pos < chars.len() {
            let mut sign = T::one();
            if chars[pos] == '+' || chars[pos] == '-' {
                if chars[pos] == '-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(bad("expected sign"));
            }
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff = if pos > start {
                let digits: String = chars[start..pos].iter().collect();
                T::from_str_radix(&digits, 10).map_err(|_| bad("bad coefficient"))?
            } else {
                T::one()
            };
            let mut degree = 0;
            if pos < chars.len() && chars[pos] == var {
                pos += 1;
                degree = 1;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    let estart = pos;
                    if pos < chars.len() && chars[pos] == '-' {
                        pos += 1;
                    }
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let exp: String = chars[estart..pos].iter().collect();
                    degree = exp.parse().map_err(|_| bad("bad exponent"))?;
                }
            } else if pos == start {
                return Err(bad("empty term"));
            }
            poly.add_term(degree, sign * coeff);
        }
        Ok(poly)
    }

    // Dense view with the lowest term moved to degree 0.
    pub(crate) fn to_dense(&self) -> (i64, Vec<T>) {
        let Some(lo) = self.min_degree() else {
            return (0, Vec::new());
        };
        let hi = self.max_degree().unwrap();
        let mut v = vec![T::zero(); (hi - lo + 1) as usize];
        for (d, c) in &self.coeffs {
            v[(d - lo) as usize] = c.clone();
        }
        (lo, v)
    }
}

impl<T: Coefficient> fmt::Display for LaurentPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("w"))
    }
}

impl<T: Coefficient> fmt::Debug for LaurentPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

impl<T: Coefficient> FromStr for LaurentPolynomial<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::parse_in(s, 'w')
    }
}

impl<'a, T: Coefficient> Add<&'a LaurentPolynomial<T>> for &'a LaurentPolynomial<T> {
    type Output = LaurentPolynomial<T>;

    fn add(self, rhs: &'a LaurentPolynomial<T>) -> LaurentPolynomial<T> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a, T: Coefficient> Sub<&'a LaurentPolynomial<T>> for &'a LaurentPolynomial<T> {
    type Output = LaurentPolynomial<T>;

    fn sub(self, rhs: &'a LaurentPolynomial<T>) -> LaurentPolynomial<T> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a, T: Coefficient> Mul<&'a LaurentPolynomial<T>> for &'a LaurentPolynomial<T> {
    type Output = LaurentPolynomial<T>;

    fn mul(self, rhs: &'a LaurentPolynomial<T>) -> LaurentPolynomial<T> {
        let mut out = LaurentPolynomial::zero();
        for (da, ca) in &self.coeffs {
            for (db, cb) in &rhs.coeffs {
                out.add_term(da + db, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<T: Coefficient> Neg for &LaurentPolynomial<T> {
    type Output = LaurentPolynomial<T>;

    fn neg(self) -> LaurentPolynomial<T> {
        LaurentPolynomial {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, -c.clone())).collect(),
        }
    }
}

impl<T: Coefficient> Neg for LaurentPolynomial<T> {
    type Output = LaurentPolynomial<T>;

    fn neg(self) -> LaurentPolynomial<T> {
        -&self
    }
}

impl<T: Coefficient> AddAssign<&LaurentPolynomial<T>> for LaurentPolynomial<T> {
    fn add_assign(&mut self, rhs: &LaurentPolynomial<T>) {
        for (d, c) in &rhs.coeffs {
            self.add_term(*d, c.clone());
        }
    }
}

impl<T: Coefficient> SubAssign<&LaurentPolynomial<T>> for LaurentPolynomial<T> {
    fn sub_assign(&mut self, rhs: &LaurentPolynomial<T>) {
        for (d, c) in &rhs.coeffs {
            self.add_term(*d, -c.clone());
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<T: Coefficient> $tr<LaurentPolynomial<T>> for LaurentPolynomial<T> {
            type Output = LaurentPolynomial<T>;
            fn $m(self, rhs: LaurentPolynomial<T>) -> LaurentPolynomial<T> {
                (&self).$m(&rhs)
            }
        }
        impl<'a, T: Coefficient> $tr<&'a LaurentPolynomial<T>> for LaurentPolynomial<T> {
            type Output = LaurentPolynomial<T>;
            fn $m(self, rhs: &'a LaurentPolynomial<T>) -> LaurentPolynomial<T> {
                (&self).$m(rhs)
            }
        }
        impl<'a, T: Coefficient> $tr<LaurentPolynomial<T>> for &'a LaurentPolynomial<T> {
            type Output = LaurentPolynomial<T>;
            fn $m(self, rhs: LaurentPolynomial<T>) -> LaurentPolynomial<T> {
                self.$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

/// Dense polynomial helpers over `T`, lowest degree first. Used for gcd
/// reduction of rational functions; monomial factors are units in the
/// Laurent ring and are stripped before these run.
pub(crate) mod dense {
    use crate::scalar::Coefficient;

    fn trim<T: Coefficient>(v: &mut Vec<T>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }

    fn content<T: Coefficient>(v: &[T]) -> T {
        v.iter().fold(T::zero(), |g, c| g.gcd(c))
    }

    fn primitive<T: Coefficient>(mut v: Vec<T>) -> Vec<T> {
        trim(&mut v);
        let c = content(&v);
        if c.is_zero() {
            return v;
        }
        let sign = if v.last().unwrap().is_negative() {
            -T::one()
        } else {
            T::one()
        };
        let c = c * sign;
        v.into_iter().map(|a| a / c.clone()).collect()
    }

    // lc(b)^(deg a - deg b + 1)·a mod b
    fn pseudo_rem<T: Coefficient>(a: &[T], b: &[T]) -> Vec<T> {
        let mut r: Vec<T> = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lb = b[db].clone();
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c = c.clone() * lb.clone();
            }
            let off = dr - db;
            for (k, bk) in b.iter().enumerate() {
                r[off + k] = r[off + k].clone() - lr.clone() * bk.clone();
            }
            trim(&mut r);
        }
        r
    }

    /// Primitive gcd with positive leading coefficient. Both inputs nonzero.
    pub fn gcd<T: Coefficient>(a: &[T], b: &[T]) -> Vec<T> {
        let mut a = primitive(a.to_vec());
        let mut b = primitive(b.to_vec());
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() && b.len() > 1 {
            let r = primitive(pseudo_rem(&a, &b));
            a = b;
            b = r;
        }
        if b.is_empty() {
            a
        } else {
            // b is a nonzero constant: coprime up to content
            vec![T::one()]
        }
    }

    /// Exact quotient `a / b`, or `None` if `b` does not divide `a` over `T`.
    pub fn div_exact<T: Coefficient>(a: &[T], b: &[T]) -> Option<Vec<T>> {
        let mut r: Vec<T> = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        if b.is_empty() {
            return None;
        }
        if r.is_empty() {
            return Some(Vec::new());
        }
        if r.len() < b.len() {
            return None;
        }
        let db = b.len() - 1;
        let lb = b[db].clone();
        let mut q = vec![T::zero(); r.len() - db];
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let (qc, rem) = r[dr].div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            let off = dr - db;
            for (k, bk) in b.iter().enumerate() {
                r[off + k] = r[off + k].clone() - qc.clone() * bk.clone();
            }
            q[off] = qc;
            trim(&mut r);
        }
        if r.is_empty() {
            trim(&mut q);
            Some(q)
        } else {
            None
        }
    }
}
