//! Borel homology `k ∧ B(Z/p)^n_+` and Borel cohomology `F(B(Z/p)^n_+, k)`,
//! each computed by iterated smash products and by closed formula.
//!
//! Cohomology multiplicities of `𝒫` follow the published normalization: the
//! closed formulas carry `𝒫` shifted by `w^{-2}` at `p = 2` and by `w^{-3}`
//! at odd `p` relative to `F(BZ/p, k) = 𝒫(1 + w^{-2} + … + w^{-2(p-2)})`.
//! The recursion runs with the unshifted base and converts at the end; see
//! [`p_normalization`].

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grmod::{check_prime, smash, Decomposition, ModuleSymbol, SmashKind};
use crate::resolve::{wedge_homotopy, GradedAbelianGroup};
use crate::RatFn;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Homology,
    Cohomology,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Recursive,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BorelResult {
    pub side: Side,
    pub method: Method,
    pub n: u32,
    #[serde(flatten)]
    pub decomposition: Decomposition,
}

impl BorelResult {
    pub fn prime(&self) -> u32 {
        self.decomposition.prime()
    }

    pub fn get(&self, sym: ModuleSymbol) -> RatFn {
        self.decomposition.get(sym)
    }
}

/// `1 + x^2 + … + x^{2(count-1)}`.
fn even_powers(x: &RatFn, count: u32) -> RatFn {
    let x2 = x * x;
    let mut acc = RatFn::zero();
    let mut term = RatFn::one();
    for _ in 0..count {
        acc = acc + &term;
        term = &term * &x2;
    }
    acc
}

/// `1 + w^2 + … + w^{2(p-1)}`.
pub fn big_s(p: u32) -> RatFn {
    even_powers(&RatFn::w(1), p)
}

/// `1 + w^2 + … + w^{2(p-2)}`.
pub fn small_s(p: u32) -> RatFn {
    even_powers(&RatFn::w(1), p - 1)
}

/// The `H̃` multiplicity of Borel homology written in the variable `x`:
///
/// `1/((1-x^{2(p-1)})(1-x^2)(1-x)^{n-1}) · [(1 - S^n(1-x)^n)/(1 - S(1-x)) - (1 - (1-x)^n)/x]`
/// with `S = 1 + x^2 + … + x^{2(p-1)}`. Cohomology uses `x = w^{-1}`.
pub fn h_closed_in(x: &RatFn, p: u32, n: u32) -> RatFn {
    let one = RatFn::one();
    let s = even_powers(x, p);
    let omx = &one - x;
    let n = n as i32;
    let e = x.powi(2 * (p as i32 - 1));
    let pre = (&one - &e) * (&one - &(x * x)) * omx.powi(n - 1);
    let first = (&one - &(s.powi(n) * omx.powi(n))) / (&one - &(&s * &omx));
    let second = (&one - &omx.powi(n)) / (&one - &omx);
    (first - second) / pre
}

/// Ratio between the published `𝒫` multiplicities and those produced by
/// the recursion from `F(BZ/p, k) = 𝒫(1 + w^{-2} + … + w^{-2(p-2)})`.
pub fn p_normalization(p: u32) -> RatFn {
    if p == 2 {
        RatFn::w(-2)
    } else {
        RatFn::w(-3)
    }
}

pub fn borel_homology_closed(p: u32, n: u32) -> Result<BorelResult> {
    check_prime(p)?;
    let sn = big_s(p).powi(n as i32);
    let m = (sn - RatFn::one()) * RatFn::w(-3);
    let h = h_closed_in(&RatFn::w(1), p, n);
    Ok(BorelResult {
        side: Side::Homology,
        method: Method::ClosedForm,
        n,
        decomposition: Decomposition::unit(p)?
            .with(ModuleSymbol::ScrM, m)
            .with(ModuleSymbol::Hmod, h),
    })
}

/// `k ∧ BZ/p_+ = k ∨ ℳ w^{-1}(1 + w^2 + … + w^{2(p-2)})`.
pub fn homology_base(p: u32) -> Result<Decomposition> {
    Ok(Decomposition::unit(p)?.with(ModuleSymbol::ScrM, small_s(p) * RatFn::w(-1)))
}

pub fn borel_homology_recursive(p: u32, n: u32) -> Result<BorelResult> {
    let base = homology_base(p)?;
    let mut acc = Decomposition::unit(p)?;
    for _ in 0..n {
        acc = smash(&acc, &base, SmashKind::OrdinarySmash)?;
    }
    Ok(BorelResult {
        side: Side::Homology,
        method: Method::Recursive,
        n,
        decomposition: acc,
    })
}

/// Reduced Borel cohomology as published (no `FreeK` summand).
pub fn borel_cohomology_closed(p: u32, n: u32) -> Result<BorelResult> {
    check_prime(p)?;
    let inv = RatFn::w(-1);
    let sn = even_powers(&inv, p).powi(n as i32) - RatFn::one();
    let pm = if p == 2 { sn } else { sn * &inv };
    let h = h_closed_in(&inv, p, n);
    Ok(BorelResult {
        side: Side::Cohomology,
        method: Method::ClosedForm,
        n,
        decomposition: Decomposition::new(p)?
            .with(ModuleSymbol::ScrP, pm)
            .with(ModuleSymbol::Hmod, h),
    })
}

/// `F(BZ/p_+, k) = k ∨ 𝒫(1 + w^{-2} + … + w^{-2(p-2)})`.
pub fn cohomology_base(p: u32) -> Result<Decomposition> {
    Ok(Decomposition::unit(p)?.with(ModuleSymbol::ScrP, even_powers(&RatFn::w(-1), p - 1)))
}

/// Unreduced cohomology from iterated `∧̂`, with `𝒫` in the normalization of
/// [`cohomology_base`].
pub fn cohomology_recursion(p: u32, n: u32) -> Result<Decomposition> {
    let base = cohomology_base(p)?;
    let mut acc = Decomposition::unit(p)?;
    for _ in 0..n {
        acc = smash(&acc, &base, SmashKind::HatSmash)?;
    }
    Ok(acc)
}

/// Reduced cohomology by recursion, reported in the published normalization.
pub fn borel_cohomology_recursive(p: u32, n: u32) -> Result<BorelResult> {
    let raw = cohomology_recursion(p, n)?;
    let decomposition = Decomposition::new(p)?
        .with(ModuleSymbol::ScrP, raw.get(ModuleSymbol::ScrP) * p_normalization(p))
        .with(ModuleSymbol::Hmod, raw.get(ModuleSymbol::Hmod));
    Ok(BorelResult {
        side: Side::Cohomology,
        method: Method::Recursive,
        n,
        decomposition,
    })
}

/// Homotopy groups of `k ∧ B(Z/p)^n_+` (or of the reduced part) on `[lo, hi]`,
/// with the groups of `k`, `ℳ` and `H̃` taken from the resolution oracle.
pub fn homology_coefficients(p: u32, n: u32, lo: i64, hi: i64, reduced: bool) -> Result<GradedAbelianGroup> {
    let mut d = borel_homology_closed(p, n)?.decomposition;
    if reduced {
        d = d.reduced();
    }
    let blocks: Vec<_> = d.terms().map(|(s, m)| (s, m.clone())).collect();
    wedge_homotopy(&blocks, p, lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolve::GroupPiece;
    use crate::{Direction, Laurent};
    use ModuleSymbol::*;

    fn rf(s: &str) -> RatFn {
        s.parse().unwrap()
    }

    #[test]
    fn small_cases() {
        let r = borel_homology_recursive(2, 1).unwrap();
        assert_eq!(r.get(ScrM), RatFn::w(-1));
        assert!(r.get(Hmod).is_zero());
        let r0 = borel_homology_recursive(2, 0).unwrap();
        assert_eq!(r0.decomposition, Decomposition::unit(2).unwrap());
        assert_eq!(borel_homology_recursive(3, 1).unwrap().get(ScrM), rf("w^-1 + w"));
        assert_eq!(borel_homology_closed(2, 2).unwrap().get(ScrM), rf("2w^-1 + w"));
        assert!(borel_homology_closed(2, 1).unwrap().get(Hmod).is_zero());
        assert!(borel_homology_closed(2, 0).unwrap().get(Hmod).is_zero());
        assert_eq!(
            borel_homology_closed(5, 1).unwrap().get(ScrM),
            rf("w^-1 + w + w^3 + w^5")
        );
    }

    #[test]
    fn cohomology_small_cases() {
        let c1 = borel_cohomology_closed(2, 1).unwrap();
        assert_eq!(c1.get(ScrP), RatFn::w(-2));
        assert!(c1.get(Hmod).is_zero());
        assert!(borel_cohomology_closed(2, 0).unwrap().decomposition.is_zero());
        let raw = cohomology_recursion(2, 1).unwrap();
        assert_eq!(raw.get(ScrP), RatFn::one());
    }

    #[test]
    fn raw_recursion_p_multiplicity() {
        for p in [2u32, 3, 5] {
            for n in 0..4 {
                let raw = cohomology_recursion(p, n).unwrap();
                let s = even_powers(&RatFn::w(-1), p);
                assert_eq!(raw.get(ScrP), (s.powi(n as i32) - RatFn::one()) * RatFn::w(2));
            }
        }
    }

    #[test]
    fn recursion_matches_closed_form() {
        for (p, top) in [(2u32, 6u32), (3, 4), (5, 3)] {
            for n in 0..=top {
                assert_eq!(
                    borel_homology_recursive(p, n).unwrap().decomposition,
                    borel_homology_closed(p, n).unwrap().decomposition,
                    "homology p={p} n={n}"
                );
                assert_eq!(
                    borel_cohomology_recursive(p, n).unwrap().decomposition,
                    borel_cohomology_closed(p, n).unwrap().decomposition,
                    "cohomology p={p} n={n}"
                );
            }
        }
    }

    #[test]
    fn error_terms_are_dual() {
        for (p, n) in [(2u32, 2u32), (2, 5), (3, 3), (5, 2)] {
            let h = borel_homology_closed(p, n).unwrap().get(Hmod);
            let c = borel_cohomology_closed(p, n).unwrap().get(Hmod);
            assert_eq!(c, h.inverse_variable());
        }
    }

    #[test]
    fn q_recursion_is_monotone() {
        let one_minus_w = RatFn::from_poly(Laurent::from_dense(0, &[1, -1]));
        for n in 1..6 {
            let q = borel_homology_closed(2, n).unwrap().get(Hmod);
            let next = borel_homology_closed(2, n + 1).unwrap().get(Hmod);
            let diff = next - q / &one_minus_w;
            assert!(diff.expand(Direction::AtZero, -10, 50).unwrap().is_nonnegative());
        }
    }

    #[test]
    fn coefficients_of_bz2() {
        let g = homology_coefficients(2, 1, 1, 7, true).unwrap();
        for i in 1..=4 {
            assert_eq!(g.get(2 * i - 1), GroupPiece::cyclic(1u64 << i));
            assert!(g.get(2 * i).is_zero() || 2 * i > 7);
        }
        let k = homology_coefficients(2, 0, 0, 4, false).unwrap();
        assert_eq!(k.support().map(|(d, _)| d).collect::<Vec<_>>(), [0, 2, 4]);
        let two = homology_coefficients(2, 2, 2, 2, false).unwrap().get(2);
        assert_eq!(two.free, 1);
        assert!(!two.torsion.is_empty());
    }

    #[test]
    fn json_carries_side_and_method() {
        let r = borel_homology_closed(2, 1).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["side"], "homology");
        assert_eq!(v["method"], "closed_form");
        assert_eq!(v["prime"], 2);
        assert_eq!(v["n"], 1);
        let back: BorelResult = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
