//! The Bruner–Greenlees form of the `p = 2` Borel homology error term.
//!
//! Their Poincaré series is `[T_2] + … + [T_r]` in a variable `t` with
//! `x = t^2`. Every intermediate step of the rewriting into our closed form
//! is exposed as a named identity, so a failure points at a single step.

use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::borel::borel_homology_closed;
use crate::error::{Error, Result};
use crate::grmod::ModuleSymbol;
use crate::rational::Direction;
use crate::{BigInt, Laurent, RatFn};

fn t(d: i64) -> RatFn {
    RatFn::w(d)
}

fn poly(lo: i64, coeffs: &[i64]) -> RatFn {
    RatFn::from_poly(Laurent::from_dense(lo, coeffs))
}

fn one() -> RatFn {
    RatFn::one()
}

/// `1 + c·t^d`.
fn one_plus(c: i64, d: i64) -> RatFn {
    &one() + &t(d).scale(c)
}

fn pw(f: &RatFn, e: u32) -> RatFn {
    f.powi(e as i32)
}

fn check_rank(r: u32) -> Result<()> {
    if r < 2 {
        return Err(Error::IndexOutOfRange {
            index: i64::from(r),
            range: "r >= 2".into(),
        });
    }
    Ok(())
}

/// Terms of `f` of `x`-index at least `i`, where `f` is a polynomial in
/// `x = t^2`.
pub fn tail(f: &Laurent, i: i64) -> Laurent {
    tail_in(f, i, 1)
}

/// Tail of `f` viewed as a polynomial in `y = x^step`: the terms with
/// `y`-index at least `i`. `(1-x^2)^r_{[i]}` is `tail_in(·, i, 2)`, keeping
/// the binomial terms `C(r,k)(-x^2)^k` with `k ≥ i`.
pub fn tail_in(f: &Laurent, i: i64, step: i64) -> Laurent {
    f.truncate_below(2 * step * i)
}

/// `(1 - t^{2·step})^r` as a polynomial.
fn binomial_power(r: u32, step: i64) -> Laurent {
    Laurent::from_terms((0..=r).map(|k| {
        let c = binomial(BigInt::from(r), BigInt::from(k));
        let c = if k % 2 == 0 { c } else { -c };
        (2 * step * i64::from(k), c)
    }))
}

fn neg_t_power(e: i64) -> RatFn {
    let m = t(e);
    if e.rem_euclid(2) == 0 {
        m
    } else {
        m.scale(-1)
    }
}

fn part1_term(r: u32, i: i64) -> RatFn {
    neg_t_power(4 - i) * RatFn::from_poly(tail(&binomial_power(r, 1), i))
}

fn part2_term(r: u32, i: i64) -> RatFn {
    neg_t_power(4 - i) * t(2 * (1 - i)) * RatFn::from_poly(tail_in(&binomial_power(r, 2), i, 2))
}

/// `[T_i] = (-t)^{4-i}[(1-x)^r_{[i]} - x^{1-i}(1-x^2)^r_{[i]}] / (1-x)^{r+1}`.
pub fn bg_ti(r: u32, i: i64) -> Result<RatFn> {
    check_rank(r)?;
    if i < 2 || i > i64::from(r) {
        return Err(Error::IndexOutOfRange {
            index: i,
            range: format!("2..={r}"),
        });
    }
    Ok((part1_term(r, i) - part2_term(r, i)) / pw(&one_plus(-1, 2), r + 1))
}

/// `[T_2] + … + [T_r]`.
pub fn bg_sum(r: u32) -> Result<RatFn> {
    check_rank(r)?;
    (2..=i64::from(r)).map(|i| bg_ti(r, i)).sum()
}

/// `-t^3/(1+t^3) [((1+t^2)^r - 1)/(1-t^2) + t((1-t)^r - 1)/((1-t)^r (1+t))]`.
pub fn bg_closed(r: u32) -> Result<RatFn> {
    check_rank(r)?;
    let inner = (pw(&one_plus(1, 2), r) - one()) / one_plus(-1, 2)
        + t(1) * (pw(&one_plus(-1, 1), r) - one()) / (pw(&one_plus(-1, 1), r) * one_plus(1, 1));
    Ok((t(3) / one_plus(1, 3)).scale(-1) * inner)
}

/// The `H` multiplicity of `k ∧ B(Z/2)^r_+`, written as in our closed form.
pub fn ours(r: u32) -> RatFn {
    let a = one_plus(1, 2);
    let b = one_plus(-1, 1);
    let first = (one() - pw(&a, r) * pw(&b, r)) / (one() - &a * &b);
    let second = (one() - pw(&b, r)) / (one() - b.clone());
    (first - second) / (pw(&one_plus(-1, 2), 2) * b.powi(r as i32 - 1))
}

/// `t^{-4} · bg_closed(r)` as printed.
pub fn shifted(r: u32) -> RatFn {
    let inner = (pw(&one_plus(1, 2), r) - one()) / one_plus(-1, 2)
        + t(1) * (pw(&one_plus(-1, 1), r) - one()) / (pw(&one_plus(-1, 1), r) * one_plus(1, 1));
    (one() / (t(1) * one_plus(1, 3))).scale(-1) * inner
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identity {
    pub name: String,
    pub holds: bool,
}

fn identity(name: &str, lhs: RatFn, rhs: RatFn) -> Identity {
    Identity {
        name: name.to_string(),
        holds: lhs == rhs,
    }
}

/// Every step of the rewriting at rank `r`, in order.
pub fn identities(r: u32) -> Result<Vec<Identity>> {
    check_rank(r)?;
    let ri = i64::from(r);
    let sum = bg_sum(r)?;
    let closed = bg_closed(r)?;
    let ti = one_plus(1, 1);
    let part1: RatFn = (2..=ri).map(|i| part1_term(r, i)).sum();
    let part2: RatFn = (2..=ri).map(|i| part2_term(r, i)).sum();
    let part1_closed = t(3) / ti.clone()
        * (t(1) * (pw(&ti, r) - one()) + (pw(&one_plus(-1, 2), r) - one()));
    let part2_closed = t(3) / one_plus(1, 3)
        * (t(3) * (pw(&ti, r) - one()) + (pw(&one_plus(-1, 4), r) - one()));
    let answer = (&part1_closed - &part2_closed) / pw(&one_plus(-1, 2), r + 1);

    // the same expressions in u = -t, converted back with reflect
    let u = t(1);
    let omu = one_plus(-1, 1);
    let omu3 = one_plus(-1, 3);
    let omu2r = pw(&one_plus(-1, 2), r) - one();
    let omur = pw(&omu, r) - one();
    let omu4r = pw(&one_plus(-1, 4), r) - one();
    let col1_lhs = t(4) / omu.clone() * &omur - t(6) / omu3.clone() * &omur;
    let col1_rhs = t(4) * one_plus(1, 1) / omu3.clone() * &omur;
    let col2_lhs = t(3) / omu3.clone() * &omu4r - t(3) / omu.clone() * &omu2r;
    let col2_mid = t(3) / omu3.clone() * (pw(&one_plus(-1, 2), r) * pw(&one_plus(1, 2), r) - one())
        - t(3) * poly(0, &[1, 1, 1]) / omu3.clone() * &omu2r;
    let col2_rhs = t(3) / omu3.clone() * (pw(&one_plus(1, 2), r) - one()) * pw(&one_plus(-1, 2), r)
        - t(4) * one_plus(1, 1) / omu3.clone() * &omu2r;
    let combined_lhs = (t(4) * one_plus(1, 1) / omu3.clone() * &omu2r).scale(-1) + &col1_rhs;
    let combined_rhs =
        (t(4) * one_plus(1, 1) / omu3.clone() * (pw(&one_plus(1, 1), r) - one()) * pw(&omu, r)).scale(-1);
    let withneg = (t(4) / omu.clone() * &omur - t(3) / omu.clone() * &omu2r - t(6) / omu3.clone() * &omur
        + t(3) / omu3.clone() * &omu4r)
        / pw(&one_plus(-1, 2), r + 1);
    let withneg_final = t(3) / omu3.clone()
        * ((pw(&one_plus(1, 2), r) - one()) / one_plus(-1, 2)
            - &u * (pw(&one_plus(1, 1), r) - one()) / (pw(&one_plus(1, 1), r) * omu.clone()));

    // shifted sum against ours
    let w = t(1);
    let a = one_plus(1, 2);
    let b = one_plus(-1, 1);
    let big_n = (one() - pw(&a, r) * pw(&b, r)) * (one() - b.clone()) - (one() - &a * &b) * (one() - pw(&b, r));
    let den = (one() - &a * &b) * (one() - b.clone());
    let cubic = poly(0, &[1, -1, 1]);
    let ours_changed = big_n.clone() / (t(2) * cubic.clone())
        / (pw(&one_plus(-1, 2), 2) * b.powi(ri as i32 - 1));
    let term1 = (w.clone() * pw(&a, r) * pw(&b, r)).scale(-1);
    let term2 = t(2) * b.clone();
    let term3 = pw(&b, r) * (one() - &a * &b);
    let term3_expanded = &w * &pw(&b, r) - t(2) * pw(&b, r + 1);
    let compare1 = big_n.clone() / w.clone();
    let compare2 = (pw(&a, r) * pw(&b, r)).scale(-1) + pw(&b, r) - &w * &pw(&b, r + 1) + &w * &b;
    let shifted_rewrite = (one() / (t(1) * cubic.clone())).scale(-1)
        * ((pw(&a, r) - one()) * pw(&b, r) + &w * &b * (pw(&b, r) - one()))
        / (pw(&one_plus(-1, 2), 2) * b.powi(ri as i32 - 1));
    let borel_h = borel_homology_closed(2, r)?.get(ModuleSymbol::Hmod);

    Ok(vec![
        identity("part1", part1, part1_closed),
        identity("part2", part2, part2_closed),
        identity("answer", sum.clone(), answer.clone()),
        identity("withneg", answer.clone(), withneg.reflect()),
        identity("column1", col1_lhs, col1_rhs),
        identity("column2_step1", col2_lhs.clone(), col2_mid),
        identity("column2_step2", col2_lhs, col2_rhs),
        identity("combined", combined_lhs, combined_rhs),
        identity("withneg_final", withneg, withneg_final),
        identity("bganswer", sum.clone(), closed.clone()),
        identity("shifted", t(-4) * closed, shifted(r)),
        identity("shifted_rewrite", shifted(r), shifted_rewrite),
        identity("ours_denominator", den, t(2) * cubic),
        identity("ourschanged", ours(r), ours_changed),
        identity("term1_plus_term2_plus_term3", big_n, &(&term1 + &term2) + &term3),
        identity("term3", term3, term3_expanded),
        identity("compare1_eq_compare2", compare1, compare2),
        identity("lemma", shifted(r), ours(r)),
        identity("ours_is_borel", ours(r), borel_h),
        Identity {
            name: "start2".into(),
            holds: start2_holds(r, &sum)?,
        },
        Identity {
            name: "lowest_terms".into(),
            holds: lowest_terms_hold(r)?,
        },
    ])
}

/// Whether `t^{-4}·bg_sum(r)` starts with `C(r,2) t^2`.
fn start2_holds(r: u32, sum: &RatFn) -> Result<bool> {
    let table = (t(-4) * sum).expand(Direction::AtZero, -10, 2)?;
    let below = (-10..2).all(|d| table.get(d) == BigInt::from(0));
    Ok(below && table.get(2) == binomial(BigInt::from(r), BigInt::from(2)))
}

/// Coefficient of `t^{i+4+2m}` in `(1-t^2)^r [T_i]` predicted by
/// `C(r,i)t^{i+4} - C(r,i+1)(t^{i+6} + t^{i+8}) + C(r,i+2)(t^{i+8} + t^{i+10} + t^{i+12}) - …`.
pub fn lowest_term_prediction(r: u32, i: i64, m: i64) -> BigInt {
    (0..=m)
        .filter(|k| *k <= m && m <= 2 * k)
        .map(|k| {
            let c = if i + k > i64::from(r) {
                BigInt::from(0)
            } else {
                binomial(BigInt::from(r), BigInt::from(i + k))
            };
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .sum()
}

/// How many leading coefficients of `(1-t^2)^r [T_i]` are checked.
pub const LOWEST_TERMS: i64 = 4;

fn lowest_terms_hold(r: u32) -> Result<bool> {
    for i in 2..=i64::from(r) {
        let series = pw(&one_plus(-1, 2), r) * bg_ti(r, i)?;
        let table = series.expand(Direction::AtZero, 0, i + 4 + 2 * LOWEST_TERMS)?;
        if (0..i + 4).any(|d| table.get(d) != BigInt::from(0)) {
            return Ok(false);
        }
        for m in 0..=LOWEST_TERMS {
            if table.get(i + 4 + 2 * m) != lowest_term_prediction(r, i, m) {
                return Ok(false);
            }
            if table.get(i + 5 + 2 * m) != BigInt::from(0) && m < LOWEST_TERMS {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `t^{-4}·bg_sum(r)` equals our closed form.
pub fn bg_vs_ours(r: u32) -> Result<bool> {
    Ok(t(-4) * bg_sum(r)? == ours(r))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BgReport {
    pub r: u32,
    pub sum: RatFn,
    pub closed: RatFn,
    pub ours: RatFn,
    pub all_identities: Vec<Identity>,
}

impl BgReport {
    pub fn holds(&self) -> bool {
        self.all_identities.iter().all(|i| i.holds)
    }
}

pub fn bg_report(r: u32) -> Result<BgReport> {
    Ok(BgReport {
        r,
        sum: bg_sum(r)?,
        closed: bg_closed(r)?,
        ours: ours(r),
        all_identities: identities(r)?,
    })
}
