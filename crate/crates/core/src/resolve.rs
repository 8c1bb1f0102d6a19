//! Brute-force `Tor` over `Z[β]` from explicit free resolutions.
//!
//! Each module is presented by a finite free resolution with generators in
//! even internal degrees (`β` has degree 2). In a fixed internal degree the
//! tensor product of two resolutions is a finite complex of free abelian
//! groups, and its homology is read off Smith normal forms. Everything is
//! computed over `Z`; only `p`-power torsion can occur, and that is checked.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::error::{Error, Result};
use crate::grmod::{check_prime, product_table, ModuleSymbol, SmashKind};
use crate::rational::Direction;
use crate::snf::{invariant_factors, SparseMatrix};
use crate::BigInt;

/// Element of `Z[β]`: β-exponent to coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BetaPolynomial {
    terms: BTreeMap<u32, BigInt>,
}

impl BetaPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exp: u32, c: impl Into<BigInt>) -> Self {
        Self::zero().plus(exp, c)
    }

    /// `self + c·β^exp`.
    pub fn plus(mut self, exp: u32, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let e = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exp);
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }
}

impl fmt::Display for BetaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "β")?,
                _ => write!(f, "{a}β")?,
            }
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

/// Free graded `Z[β]`-module on named generators.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedFreeModule {
    pub generators: Vec<Generator>,
}

impl GradedFreeModule {
    fn push(&mut self, name: String, degree: i64) -> usize {
        self.generators.push(Generator { name, degree });
        self.generators.len() - 1
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    fn min_degree(&self) -> Option<i64> {
        self.generators.iter().map(|g| g.degree).min()
    }
}

/// A free resolution `0 → F_ℓ → … → F_1 → F_0`, truncated in internal degree.
///
/// `differentials[j - 1][s]` is the image of generator `s` of `F_j` as a list
/// of `(generator of F_{j-1}, coefficient)`. Every generator of degree at most
/// `degree_bound` is present.
#[derive(Debug, Clone)]
pub struct ResolutionSpec {
    pub symbol: ModuleSymbol,
    pub prime: u32,
    pub terms: Vec<GradedFreeModule>,
    pub differentials: Vec<Vec<Vec<(usize, BetaPolynomial)>>>,
    pub degree_bound: i64,
}

impl ResolutionSpec {
    pub fn f0(&self) -> &GradedFreeModule {
        &self.terms[0]
    }

    pub fn f1(&self) -> Option<&GradedFreeModule> {
        self.terms.get(1)
    }

    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    /// Entry of `d_j` in row `target`, column `source`.
    pub fn entry(&self, j: usize, target: usize, source: usize) -> BetaPolynomial {
        self.differentials[j - 1][source]
            .iter()
            .find(|(t, _)| *t == target)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// Whether every differential preserves internal degree.
    pub fn is_homogeneous(&self) -> bool {
        self.differentials.iter().enumerate().all(|(k, d)| {
            d.iter().enumerate().all(|(s, image)| {
                let src = self.terms[k + 1].generators[s].degree;
                image.iter().all(|(t, c)| {
                    let tgt = self.terms[k].generators[*t].degree;
                    c.terms().all(|(e, _)| tgt + 2 * i64::from(e) == src)
                })
            })
        })
    }

    fn min_degree(&self) -> i64 {
        self.terms.iter().filter_map(|t| t.min_degree()).min().unwrap_or(0)
    }
}

fn free_k(p: u32, degree_bound: i64) -> ResolutionSpec {
    let mut f0 = GradedFreeModule::default();
    f0.push("e".into(), 0);
    ResolutionSpec {
        symbol: ModuleSymbol::FreeK,
        prime: p,
        terms: vec![f0],
        differentials: vec![],
        degree_bound,
    }
}

/// The standard resolution of `sym` at `p`, through internal degree
/// `degree_bound` plus one more generator row.
pub fn resolution_of(sym: ModuleSymbol, p: u32, degree_bound: i64) -> Result<ResolutionSpec> {
    check_prime(p)?;
    if degree_bound < 0 {
        return Err(Error::InvalidWindow { lo: 0, hi: degree_bound });
    }
    let e = 2 * i64::from(p - 1);
    let beta = p - 1;
    match sym {
        ModuleSymbol::FreeK => Ok(free_k(p, degree_bound)),
        ModuleSymbol::ScrN | ModuleSymbol::ScrM => {
            let shift = if sym == ModuleSymbol::ScrM { 2 * (2 - i64::from(p)) } else { 0 };
            let first = if sym == ModuleSymbol::ScrM { 0 } else { 1 };
            let top = (degree_bound - shift).div_euclid(e) + 1;
            let mut f0 = GradedFreeModule::default();
            let mut f1 = GradedFreeModule::default();
            let mut d1 = Vec::new();
            for i in 0..=top {
                f0.push(format!("z{i}"), i * e + shift);
            }
            for i in first..=top {
                f1.push(format!("t{i}"), i * e + shift);
                let image = if i == 0 {
                    vec![(0, BetaPolynomial::monomial(0, 1))]
                } else {
                    vec![
                        (i as usize, BetaPolynomial::monomial(0, p)),
                        (i as usize - 1, BetaPolynomial::monomial(beta, -1)),
                    ]
                };
                d1.push(image);
            }
            Ok(ResolutionSpec {
                symbol: sym,
                prime: p,
                terms: vec![f0, f1],
                differentials: vec![d1],
                degree_bound,
            })
        }
        ModuleSymbol::Hmod => {
            // Koszul complex on the regular sequence (p, β^{p-1})
            let mut f0 = GradedFreeModule::default();
            let mut f1 = GradedFreeModule::default();
            let mut f2 = GradedFreeModule::default();
            f0.push("e".into(), 0);
            f1.push("a".into(), 0);
            f1.push("b".into(), e);
            f2.push("c".into(), e);
            let d1 = vec![
                vec![(0, BetaPolynomial::monomial(0, p))],
                vec![(0, BetaPolynomial::monomial(beta, 1))],
            ];
            let d2 = vec![vec![
                (0, BetaPolynomial::monomial(beta, 1)),
                (1, BetaPolynomial::monomial(0, -i64::from(p))),
            ]];
            Ok(ResolutionSpec {
                symbol: sym,
                prime: p,
                terms: vec![f0, f1, f2],
                differentials: vec![d1, d2],
                degree_bound,
            })
        }
        other => Err(Error::UnsupportedSymbol(other)),
    }
}

/// One internal degree of a graded abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupPiece {
    pub free: usize,
    /// Orders of the cyclic torsion summands, ascending.
    pub torsion: Vec<BigInt>,
}

impl GroupPiece {
    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }

    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        let order = order.into();
        if order.is_zero() {
            return Self { free: 1, torsion: vec![] };
        }
        if order.is_one() {
            return Self::default();
        }
        Self { free: 0, torsion: vec![order] }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut torsion = self.torsion.clone();
        torsion.extend(other.torsion.iter().cloned());
        torsion.sort();
        Self {
            free: self.free + other.free,
            torsion,
        }
    }

    fn repeat(&self, times: usize) -> Self {
        let mut out = Self::default();
        for _ in 0..times {
            out = out.direct_sum(self);
        }
        out
    }
}

impl fmt::Display for GroupPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free == 1 {
            parts.push("Z".to_string());
        } else if self.free > 1 {
            parts.push(format!("Z^{}", self.free));
        }
        parts.extend(self.torsion.iter().map(|o| format!("Z/{o}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Degreewise finitely generated abelian group on a window `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAbelianGroup {
    lo: i64,
    hi: i64,
    pieces: BTreeMap<i64, GroupPiece>,
}

impl GradedAbelianGroup {
    pub fn zero(lo: i64, hi: i64) -> Self {
        Self {
            lo,
            hi,
            pieces: BTreeMap::new(),
        }
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn set(&mut self, d: i64, piece: GroupPiece) {
        assert!(self.lo <= d && d <= self.hi, "degree {d} outside the window");
        if piece.is_zero() {
            self.pieces.remove(&d);
        } else {
            self.pieces.insert(d, piece);
        }
    }

    pub fn get(&self, d: i64) -> GroupPiece {
        self.pieces.get(&d).cloned().unwrap_or_default()
    }

    /// Nonzero degrees.
    pub fn support(&self) -> impl Iterator<Item = (i64, &GroupPiece)> + '_ {
        self.pieces.iter().map(|(d, g)| (*d, g))
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Moves everything up by `k` degrees, window included.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            lo: self.lo + k,
            hi: self.hi + k,
            pieces: self.pieces.iter().map(|(d, g)| (d + k, g.clone())).collect(),
        }
    }

    /// Same groups, reported only on `[lo, hi]`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        Self {
            lo,
            hi,
            pieces: self.pieces.range(lo..=hi).map(|(d, g)| (*d, g.clone())).collect(),
        }
    }
}

impl fmt::Display for GradedAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.lo..=self.hi {
            writeln!(f, "{d}: {}", self.get(d))?;
        }
        Ok(())
    }
}

impl Serialize for GradedAbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row {
            d: i64,
            free: usize,
            torsion: Vec<Number>,
        }
        let mut rows = Vec::new();
        for d in self.lo..=self.hi {
            let g = self.get(d);
            let torsion = g
                .torsion
                .iter()
                .map(|o| o.to_string().parse::<Number>().map_err(serde::ser::Error::custom))
                .collect::<std::result::Result<_, _>>()?;
            rows.push(Row { d, free: g.free, torsion });
        }
        let mut s = serializer.serialize_struct("GradedAbelianGroup", 1)?;
        s.serialize_field("degrees", &rows)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for GradedAbelianGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Row {
            d: i64,
            free: usize,
            torsion: Vec<Number>,
        }
        #[derive(Deserialize)]
        struct Raw {
            degrees: Vec<Row>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let lo = raw.degrees.iter().map(|r| r.d).min().unwrap_or(0);
        let hi = raw.degrees.iter().map(|r| r.d).max().unwrap_or(-1);
        let mut out = Self::zero(lo, hi);
        for row in raw.degrees {
            let mut torsion = row
                .torsion
                .iter()
                .map(|n| n.to_string().parse::<BigInt>().map_err(de::Error::custom))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            torsion.sort();
            out.set(row.d, GroupPiece { free: row.free, torsion });
        }
        Ok(out)
    }
}

/// Basis of the tensor product of two resolutions in total homological
/// degree `m` and internal degree `d`: `(i, g, h, k)` stands for
/// `g ⊗ h · β^k` with `g ∈ F^A_i`, `h ∈ F^B_{m-i}`.
fn slice(a: &ResolutionSpec, b: &ResolutionSpec, m: usize, d: i64) -> Vec<(usize, usize, usize, i64)> {
    let mut out = Vec::new();
    for i in 0..=m.min(a.length()) {
        let j = m - i;
        if j > b.length() {
            continue;
        }
        for (gi, g) in a.terms[i].generators.iter().enumerate() {
            for (hi, h) in b.terms[j].generators.iter().enumerate() {
                let rest = d - g.degree - h.degree;
                if rest >= 0 && rest % 2 == 0 {
                    out.push((i, gi, hi, rest / 2));
                }
            }
        }
    }
    out
}

/// Matrix of the total differential `C_m → C_{m-1}` in internal degree `d`.
fn boundary(
    a: &ResolutionSpec,
    b: &ResolutionSpec,
    source: &[(usize, usize, usize, i64)],
    target: &[(usize, usize, usize, i64)],
    m: usize,
) -> SparseMatrix<BigInt> {
    let index: BTreeMap<_, _> = target.iter().enumerate().map(|(r, key)| (*key, r)).collect();
    let mut out = SparseMatrix::new(target.len(), source.len());
    for (col, &(i, g, h, k)) in source.iter().enumerate() {
        if i > 0 {
            for (t, c) in &a.differentials[i - 1][g] {
                for (e, v) in c.terms() {
                    if let Some(&r) = index.get(&(i - 1, *t, h, k + i64::from(e))) {
                        out.add(r, col, v.clone());
                    }
                }
            }
        }
        let j = m - i;
        if j > 0 {
            let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            for (t, c) in &b.differentials[j - 1][h] {
                for (e, v) in c.terms() {
                    if let Some(&r) = index.get(&(i, g, *t, k + i64::from(e))) {
                        out.add(r, col, &sign * v);
                    }
                }
            }
        }
    }
    out
}

fn is_power_of(n: &BigInt, p: u32) -> bool {
    let p = BigInt::from(p);
    let mut n = n.clone();
    while (&n % &p).is_zero() {
        n /= &p;
    }
    n.is_one()
}

/// `Tor_j` of two explicit resolutions on `[lo, hi]`.
pub fn tor_with(a: &ResolutionSpec, b: &ResolutionSpec, j: usize, lo: i64, hi: i64) -> Result<GradedAbelianGroup> {
    if lo > hi {
        return Err(Error::InvalidWindow { lo, hi });
    }
    if a.prime != b.prime {
        return Err(Error::PrimeMismatch(a.prime, b.prime));
    }
    for (x, y) in [(a, b), (b, a)] {
        let needed = hi - y.min_degree();
        if needed > x.degree_bound {
            return Err(Error::WindowTooWide {
                lo,
                hi,
                needed,
                bound: x.degree_bound,
            });
        }
    }
    let mut out = GradedAbelianGroup::zero(lo, hi);
    for d in lo..=hi {
        let here = slice(a, b, j, d);
        if here.is_empty() {
            continue;
        }
        let rank_out = if j == 0 {
            0
        } else {
            let below = slice(a, b, j - 1, d);
            invariant_factors(&boundary(a, b, &here, &below, j)).len()
        };
        let above = slice(a, b, j + 1, d);
        let incoming = invariant_factors(&boundary(a, b, &above, &here, j + 1));
        let torsion: Vec<BigInt> = incoming.iter().filter(|x| !x.is_one()).cloned().collect();
        for t in &torsion {
            assert!(
                is_power_of(t, a.prime),
                "internal error: torsion of order {t} is not a power of {}",
                a.prime
            );
        }
        out.set(
            d,
            GroupPiece {
                free: here.len() - rank_out - incoming.len(),
                torsion,
            },
        );
    }
    Ok(out)
}

/// Resolution reach used to report `[lo, hi]`.
pub fn degree_bound_for(p: u32, hi: i64) -> i64 {
    (hi + 8 * i64::from(p - 1)).max(0)
}

/// `Tor_j^{Z[β]}(A, B)` in internal degrees `lo..=hi`.
pub fn tor(a: ModuleSymbol, b: ModuleSymbol, j: usize, p: u32, lo: i64, hi: i64) -> Result<GradedAbelianGroup> {
    let bound = degree_bound_for(p, hi);
    let ra = resolution_of(a, p, bound)?;
    let rb = resolution_of(b, p, bound)?;
    tor_with(&ra, &rb, j, lo, hi)
}

/// Homotopy groups of a standard block (the cokernel of its resolution).
pub fn coefficient_groups(sym: ModuleSymbol, p: u32, lo: i64, hi: i64) -> Result<GradedAbelianGroup> {
    tor(sym, ModuleSymbol::FreeK, 0, p, lo, hi)
}

/// Homotopy of a wedge `⊕ sym · mult(w)` on `[lo, hi]`, with the blocks'
/// groups from the oracle and multiplicities expanded at zero.
pub fn wedge_homotopy(
    blocks: &[(ModuleSymbol, crate::RatFn)],
    p: u32,
    lo: i64,
    hi: i64,
) -> Result<GradedAbelianGroup> {
    let mut out = GradedAbelianGroup::zero(lo, hi);
    for (sym, mult) in blocks {
        if mult.is_zero() {
            continue;
        }
        let bottom = resolution_of(*sym, p, 0)?.f0().min_degree().unwrap_or(0);
        // lowest power of w in the multiplicity
        let low = mult.numerator().min_degree().unwrap_or(0)
            - mult.denominator().min_degree().unwrap_or(0);
        if hi - low < bottom {
            continue;
        }
        let table = mult.expand(Direction::AtZero, low, hi - bottom)?;
        let pieces = coefficient_groups(*sym, p, bottom, hi - low)?;
        for d in lo..=hi {
            let mut acc = out.get(d);
            for (m, c) in table.iter() {
                let times = c.to_usize().ok_or_else(|| {
                    Error::Parse(format!("multiplicity {c} of {sym} at w^{m} is not a count"))
                })?;
                if times == 0 || d - m < bottom || d - m > hi - low {
                    continue;
                }
                acc = acc.direct_sum(&pieces.get(d - m).repeat(times));
            }
            out.set(d, acc);
        }
    }
    Ok(out)
}

/// Whether the table's `a ∧ b` has the homotopy predicted by the oracle:
/// `π_d = Tor_0(a, b)_d ⊕ Tor_1(a, b)_{d-1}` in every degree of the window.
pub fn verify_table_row(a: ModuleSymbol, b: ModuleSymbol, p: u32, lo: i64, hi: i64) -> Result<bool> {
    let row = product_table(a, b, SmashKind::OrdinarySmash, p)?;
    let blocks: Vec<_> = row.terms().map(|(s, m)| (s, m.clone())).collect();
    let table = wedge_homotopy(&blocks, p, lo, hi)?;
    let t0 = tor(a, b, 0, p, lo, hi)?;
    let t1 = tor(a, b, 1, p, lo - 1, hi - 1)?;
    Ok((lo..=hi).all(|d| table.get(d) == t0.get(d).direct_sum(&t1.get(d - 1))))
}
