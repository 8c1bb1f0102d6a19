//! One line per criterion; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use ktate_core::bg::{bg_vs_ours, identities, tail};
use ktate_core::borel::{
    borel_cohomology_closed, borel_cohomology_recursive, borel_homology_closed,
    borel_homology_recursive, homology_coefficients,
};
use ktate_core::grmod::{Decomposition, ModuleSymbol::*};
use ktate_core::resolve::{coefficient_groups, resolution_of, tor, tor_with, GroupPiece};
use ktate_core::tate::{consistency_check, tate_decomposition, tptt_f, ttt_f};
use ktate_core::{BigInt, Direction, Laurent, RatFn};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn ranges() -> Vec<(u32, u32)> {
    let mut v: Vec<(u32, u32)> = (0..=8).map(|n| (2, n)).collect();
    v.extend([3, 5].into_iter().flat_map(|p| (0..=5).map(move |n| (p, n))));
    v
}

fn tate_ranges() -> Vec<(u32, u32)> {
    let mut v: Vec<(u32, u32)> = (0..=8).map(|n| (2, n)).collect();
    v.extend([3, 5].into_iter().flat_map(|p| (0..=4).map(move |n| (p, n))));
    v
}

fn bruner_greenlees() -> Outcome {
    for r in 2..=10 {
        ensure(bg_vs_ours(r).map_err(|e| e.to_string())?, || format!("r={r}: sum differs from ours"))?;
        for id in identities(r).map_err(|e| e.to_string())? {
            ensure(id.holds, || format!("r={r}: {}", id.name))?;
        }
    }
    Ok(())
}

fn recursion_matches_closed() -> Outcome {
    let e = |e: ktate_core::Error| e.to_string();
    for (p, n) in ranges() {
        let hr = borel_homology_recursive(p, n).map_err(e)?.decomposition;
        let hc = borel_homology_closed(p, n).map_err(e)?.decomposition;
        ensure(hr == hc, || format!("homology p={p} n={n}"))?;
        let cr = borel_cohomology_recursive(p, n).map_err(e)?.decomposition;
        let cc = borel_cohomology_closed(p, n).map_err(e)?.decomposition;
        ensure(cr == cc, || format!("cohomology p={p} n={n}"))?;
    }
    Ok(())
}

fn oracle_lemmas() -> Outcome {
    let e = |e: ktate_core::Error| e.to_string();
    for (p, hi) in [(2u32, 40i64), (3, 48), (5, 48)] {
        let mm1 = tor(ScrM, ScrM, 1, p, 0, hi).map_err(e)?;
        let m2 = coefficient_groups(ScrM, p, -2, hi - 2).map_err(e)?.shift(2);
        for d in 0..=hi {
            ensure(mm1.get(d) == m2.get(d), || format!("p={p}: Tor1(M,M) ≠ M[2] in degree {d}"))?;
        }
        if p == 2 {
            for i in 0..=(hi - 2) / 2 {
                let want = GroupPiece::cyclic(BigInt::from(2).pow(i as u32));
                ensure(mm1.get(2 * i + 2) == want, || format!("Tor1(M,M) in degree {}", 2 * i + 2))?;
            }
        }
        ensure(tor(ScrM, ScrN, 1, p, 0, hi).map_err(e)?.is_zero(), || format!("p={p}: Tor1(M,N) ≠ 0"))?;
        ensure(tor(ScrN, ScrN, 1, p, 0, hi).map_err(e)?.is_zero(), || format!("p={p}: Tor1(N,N) ≠ 0"))?;
        for (a, b) in [(ScrM, ScrM), (ScrM, ScrN), (ScrN, ScrN), (ScrM, Hmod)] {
            ensure(tor(a, b, 2, p, 0, hi).map_err(e)?.is_zero(), || format!("p={p}: Tor2({a},{b}) ≠ 0"))?;
        }
        for (a, b) in [(ScrM, ScrM), (ScrM, Hmod)] {
            let ok = ktate_core::resolve::verify_table_row(a, b, p, 0, hi).map_err(e)?;
            ensure(ok, || format!("p={p}: table row {a} ∧ {b}"))?;
        }
    }
    Ok(())
}

fn tate_consistency() -> Outcome {
    for (p, n) in tate_ranges() {
        ensure(consistency_check(p, n), || format!("p={p} n={n}"))?;
    }
    for n in 0..=8 {
        ensure(ttt_f(n) == tptt_f(2, n), || format!("general f at p=2 differs, n={n}"))?;
    }
    Ok(())
}

fn duality() -> Outcome {
    let e = |e: ktate_core::Error| e.to_string();
    for (p, n) in ranges() {
        let h = borel_homology_closed(p, n).map_err(e)?.get(Hmod);
        let c = borel_cohomology_closed(p, n).map_err(e)?.get(Hmod);
        ensure(c == h.inverse_variable(), || format!("p={p} n={n}"))?;
    }
    Ok(())
}

fn coefficient_benchmark() -> Outcome {
    let g = homology_coefficients(2, 1, 1, 39, true).map_err(|e| e.to_string())?;
    for i in 1..=20i64 {
        let want = GroupPiece::cyclic(BigInt::from(2).pow(i as u32));
        ensure(g.get(2 * i - 1) == want, || format!("degree {}: {}", 2 * i - 1, g.get(2 * i - 1)))?;
    }
    for d in (2..=38).step_by(2) {
        ensure(g.get(d) == GroupPiece::default(), || format!("degree {d} not zero"))?;
    }
    Ok(())
}

fn degenerate_cases() -> Outcome {
    let e = |e: ktate_core::Error| e.to_string();
    for p in [2u32, 3, 5] {
        let unit = Decomposition::unit(p).map_err(e)?;
        ensure(borel_homology_closed(p, 0).map_err(e)?.decomposition == unit, || format!("homology p={p} n=0"))?;
        ensure(borel_homology_recursive(p, 0).map_err(e)?.decomposition == unit, || format!("recursion p={p} n=0"))?;
        let t = tate_decomposition(p, 0).map_err(e)?;
        ensure(t.q_multiplicity.is_zero() && t.f().is_zero(), || format!("tate p={p} n=0"))?;
    }
    let t = tate_decomposition(2, 1).map_err(e)?;
    ensure(t.q_multiplicity == RatFn::one() && t.f().is_zero(), || format!("tate(2,1): {t:?}"))?;
    let f = Laurent::from_dense(0, &[1, -3, 3, -1]);
    ensure(tail(&f, 0) == f, || "tail(f, 0) ≠ f".into())
}

fn laurent_strategy() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-8i64..9, -20i64..21), 0..6)
        .prop_map(|terms| Laurent::from_terms(terms.into_iter().map(|(d, c)| (d, BigInt::from(c)))))
}

fn property_suites() -> Outcome {
    let e = |e: ktate_core::Error| e.to_string();
    for (p, n) in ranges() {
        let sides = [
            (borel_homology_closed(p, n).map_err(e)?, Direction::AtZero),
            (borel_cohomology_closed(p, n).map_err(e)?, Direction::AtInfinity),
        ];
        for (r, dir) in sides {
            for (sym, m) in r.decomposition.terms() {
                let table = m.expand(dir, -20, 50).map_err(e)?;
                ensure(table.is_nonnegative(), || format!("{sym} at p={p} n={n} ({dir:?})"))?;
            }
        }
    }
    for p in [2u32, 3, 5] {
        let base = 30 + 8 * (i64::from(p) - 1);
        for (a, b) in [(ScrM, ScrM), (ScrM, ScrN), (ScrM, Hmod)] {
            let small = (resolution_of(a, p, base).map_err(e)?, resolution_of(b, p, base).map_err(e)?);
            let big = (resolution_of(a, p, base + 20).map_err(e)?, resolution_of(b, p, base + 20).map_err(e)?);
            for j in 0..=2 {
                let x = tor_with(&small.0, &small.1, j, 0, 30).map_err(e)?;
                let y = tor_with(&big.0, &big.1, j, 0, 30).map_err(e)?;
                ensure(x == y, || format!("p={p} Tor{j}({a},{b}) moves with the bound"))?;
            }
        }
    }
    let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let mut runner = TestRunner::new_with_rng(Config { cases: 1000, failure_persistence: None, ..Config::default() }, rng);
    let s = (laurent_strategy(), laurent_strategy(), laurent_strategy());
    runner
        .run(&s, |(a, b, c)| {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            let den = &Laurent::one() - &Laurent::from_dense(1, &[1]);
            if !b.is_zero() {
                let x = RatFn::new(a.clone(), den.clone());
                let y = RatFn::new(&a * &b, &den * &b);
                prop_assert_eq!(&x, &y);
                prop_assert_eq!(x.expand(Direction::AtZero, -10, 10).unwrap(), y.expand(Direction::AtZero, -10, 10).unwrap());
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("Bruner-Greenlees reconciliation, r = 2..10", bruner_greenlees, Some(Duration::from_secs(5))),
        ("recursion equals closed form", recursion_matches_closed, Some(Duration::from_secs(5))),
        ("Tor oracle reproduces the tensor table", oracle_lemmas, Some(Duration::from_secs(30))),
        ("Tate consistency", tate_consistency, None),
        ("duality of the H multiplicities", duality, None),
        ("coefficients of k ∧ BZ/2", coefficient_benchmark, None),
        ("degenerate and trivial cases", degenerate_cases, None),
        ("nonnegativity, truncation stability, ring laws", property_suites, None),
    ];
    let mut all = true;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let took = start.elapsed();
        if let (Ok(()), Some(b)) = (&outcome, budget) {
            if took > b {
                outcome = Err(format!("took {took:?}, budget {b:?}"));
            }
        }
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({took:.2?})", i + 1),
            Err(why) => {
                all = false;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
