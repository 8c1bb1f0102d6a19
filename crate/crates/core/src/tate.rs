//! Tate cohomology of `k` over `(Z/p)^n`: the wedge `𝒬_n · q(w) ∨ H̃ · f(w)`.
//!
//! `f` has a half that lives near `w = 0` (from Borel homology) and a half
//! that lives near `w = ∞` (from Borel cohomology). They are kept apart and
//! only ever expanded in their own directions.

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::borel::{borel_cohomology_closed, borel_homology_closed};
use crate::error::{Error, Result};
use crate::grmod::{check_prime, ModuleSymbol};
use crate::rational::Direction;
use crate::resolve::{GradedAbelianGroup, GroupPiece};
use crate::{BigInt, Laurent, RatFn};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TateResult {
    pub prime: u32,
    pub n: u32,
    pub q_multiplicity: RatFn,
    /// Expanded at zero.
    pub f_hom: RatFn,
    /// Expanded at infinity.
    pub f_coh: RatFn,
}

impl TateResult {
    /// `f` as a single rational function (for identity checks only).
    pub fn f(&self) -> RatFn {
        &self.f_hom + &self.f_coh
    }
}

fn one_minus(x: &RatFn) -> RatFn {
    &RatFn::one() - x
}

/// `1/(pre·(1-x)^{n-1}) · [(1 - S^n(1-x)^n)/(1 - S(1-x)) - (1 - (1-x)^n)/(1 - (1-x))]`.
fn bracket(x: &RatFn, s: &RatFn, pre: &RatFn, n: u32) -> RatFn {
    let n = n as i32;
    let omx = one_minus(x);
    let first = one_minus(&(s.powi(n) * omx.powi(n))) / one_minus(&(s * &omx));
    let second = one_minus(&omx.powi(n)) / one_minus(&omx);
    (first - second) / (pre * &omx.powi(n - 1))
}

fn even_sum(x: &RatFn, terms: u32) -> RatFn {
    (0..terms).map(|j| x.powi(2 * j as i32)).sum()
}

/// `f` for `p = 2`, as a pair (homology half, cohomology half).
pub fn ttt_f(n: u32) -> (RatFn, RatFn) {
    let w = RatFn::w(1);
    let v = RatFn::w(-1);
    let s = &RatFn::one() + &(&w * &w);
    let sv = &RatFn::one() + &(&v * &v);
    let pre = one_minus(&(&w * &w)).powi(2);
    let prev = one_minus(&(&v * &v)).powi(2);
    (&w * &bracket(&w, &s, &pre, n), bracket(&v, &sv, &prev, n))
}

/// `f` for any prime, as a pair (homology half, cohomology half).
pub fn tptt_f(p: u32, n: u32) -> (RatFn, RatFn) {
    let e = 2 * (p as i32 - 1);
    let w = RatFn::w(1);
    let v = RatFn::w(-1);
    let pre = one_minus(&w.powi(e)) * one_minus(&w.powi(2));
    let prev = one_minus(&v.powi(e)) * one_minus(&v.powi(2));
    (
        &w * &bracket(&w, &even_sum(&w, p), &pre, n),
        bracket(&v, &even_sum(&v, p), &prev, n),
    )
}

/// `(1 + w^{-2} + … + w^{-2(p-1)})^n - w^{-2n(p-1)}`.
pub fn q_multiplicity(p: u32, n: u32) -> RatFn {
    let s = even_sum(&RatFn::w(-1), p);
    s.powi(n as i32) - RatFn::w(-2 * i64::from(n) * (i64::from(p) - 1))
}

pub fn tate_decomposition(p: u32, n: u32) -> Result<TateResult> {
    check_prime(p)?;
    let (f_hom, f_coh) = if p == 2 { ttt_f(n) } else { tptt_f(p, n) };
    Ok(TateResult {
        prime: p,
        n,
        q_multiplicity: q_multiplicity(p, n),
        f_hom,
        f_coh,
    })
}

/// Whether `f = w·q_hom + q_coh` with `q_hom`, `q_coh` the `H̃` multiplicities
/// of Borel homology and cohomology.
pub fn consistency_check(p: u32, n: u32) -> bool {
    let (Ok(t), Ok(h), Ok(c)) = (
        tate_decomposition(p, n),
        borel_homology_closed(p, n),
        borel_cohomology_closed(p, n),
    ) else {
        return false;
    };
    let expected = RatFn::w(1) * h.get(ModuleSymbol::Hmod) + c.get(ModuleSymbol::Hmod);
    t.f() == expected
}

/// Homotopy of the Tate spectrum on `[lo, hi]`: `free` counts copies of
/// `Z_p`, torsion is a list of `Z/p`s.
pub fn tate_homotopy(p: u32, n: u32, lo: i64, hi: i64) -> Result<GradedAbelianGroup> {
    if lo > hi {
        return Err(Error::InvalidWindow { lo, hi });
    }
    let t = tate_decomposition(p, n)?;
    let q = t
        .q_multiplicity
        .as_polynomial()
        .expect("q multiplicity is a Laurent polynomial");
    let q_total: BigInt = q.terms().map(|(_, c)| c.clone()).sum();
    let spread = 2 * (i64::from(p) - 2);
    let near = t.f_hom.expand(Direction::AtZero, lo - spread, hi)?;
    let far = t.f_coh.expand(Direction::AtInfinity, lo - spread, hi)?;
    let f = near.add(&far);
    let mut out = GradedAbelianGroup::zero(lo, hi);
    for d in lo..=hi {
        let free = if d % 2 == 0 { q_total.to_usize().unwrap_or(0) } else { 0 };
        let count: BigInt = (0..=spread / 2).map(|j| f.get(d - 2 * j)).sum();
        let count = count.to_usize().expect("Z/p count fits in memory");
        out.set(
            d,
            GroupPiece {
                free,
                torsion: vec![BigInt::from(p); count],
            },
        );
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Band {
    /// Degrees `2j`, `j < 0`: the `HZ_p[-2i]` summands.
    Lower,
    /// `0 ≤ 2j ≤ 2(p-1)(n-1)`: the truncated connective part.
    Middle,
    /// `2j ≥ 2(p-1)n`: the `HZ_p[2(p-1)n + 2i]` summands.
    Upper,
    /// Odd `p` only: `2(p-1)(n-1) < 2j < 2(p-1)n`, covered by none of the
    /// three pieces.
    Unlabeled,
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Band::Lower => "lower",
            Band::Middle => "middle",
            Band::Upper => "upper",
            Band::Unlabeled => "unlabeled",
        };
        write!(f, "{s}")
    }
}

/// Coefficients of `𝒬_n`: a copy of `Z_p` in each even degree, spanned by
/// `p^{e_j} β^j` inside `Q_p[β, β^{-1}]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QnCoefficients {
    pub prime: u32,
    pub n: u32,
}

impl QnCoefficients {
    /// `π_d(𝒬_n)`.
    pub fn group(&self, d: i64) -> GroupPiece {
        if d % 2 == 0 {
            GroupPiece { free: 1, torsion: vec![] }
        } else {
            GroupPiece::default()
        }
    }

    /// `e_j` with `π_{2j} = p^{e_j} Z_p β^j`.
    pub fn exponent(&self, j: i64) -> i64 {
        let q = i64::from(self.prime) - 1;
        let from_one = (-j).max(0).div_euclid(q) + i64::from((-j).max(0) % q != 0);
        let from_tower = i64::from(self.n) - 1 - j.div_euclid(q);
        from_one.min(from_tower)
    }

    pub fn band(&self, j: i64) -> Band {
        let q = i64::from(self.prime) - 1;
        let n = i64::from(self.n);
        if j < 0 {
            Band::Lower
        } else if j <= q * (n - 1) {
            Band::Middle
        } else if j >= q * n {
            Band::Upper
        } else {
            Band::Unlabeled
        }
    }
}

pub fn qn_postnikov_profile(p: u32, n: u32) -> Result<QnCoefficients> {
    check_prime(p)?;
    if n == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            range: "n >= 1".into(),
        });
    }
    Ok(QnCoefficients { prime: p, n })
}

/// Smallest `p`-valuation of the degree-`2j` elements reachable as
/// `(p/β^{p-1})^b β^a · g` with `g` one of the generators `1`,
/// `β^{(p-1)(n-1)} (β^{p-1}/p)^i`, by exhaustive search over `a, b, i ≤ reach`.
pub fn lattice_exponent(p: u32, n: u32, j: i64, reach: i64) -> Option<i64> {
    let q = i64::from(p) - 1;
    let n = i64::from(n);
    let mut best: Option<i64> = None;
    let mut keep = |v: i64| best = Some(best.map_or(v, |b: i64| b.min(v)));
    for b in 0..=reach {
        for a in 0..=reach {
            if a - b * q == j {
                keep(b);
            }
            for i in 0..=reach {
                if q * (n - 1 + i) + a - b * q == j {
                    keep(b - i);
                }
            }
        }
    }
    best
}

/// `q(w)` as a polynomial, for display.
pub fn q_polynomial(p: u32, n: u32) -> Laurent {
    q_multiplicity(p, n)
        .as_polynomial()
        .expect("q multiplicity is a Laurent polynomial")
}
