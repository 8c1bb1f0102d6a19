use serde::{Deserialize, Serialize};

use ktate_core::bg::{bg_vs_ours, identities};
use ktate_core::borel::{
    borel_cohomology_closed, borel_cohomology_recursive, borel_homology_closed,
    borel_homology_recursive,
};
use ktate_core::grmod::{is_prime, specialize_p2_report, ModuleSymbol};
use ktate_core::resolve::verify_table_row;
use ktate_core::tate::{consistency_check, tptt_f, ttt_f};
use ktate_core::Direction;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub p_max: u32,
    /// Largest rank at `p = 2`.
    pub n_max_two: u32,
    /// Largest rank at odd primes.
    pub n_max_odd: u32,
    pub lo: i64,
    pub hi: i64,
    pub r_max: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            p_max: 5,
            n_max_two: 6,
            n_max_odd: 4,
            lo: -20,
            hi: 40,
            r_max: 10,
        }
    }
}

impl VerifyOptions {
    fn primes(&self) -> Vec<u32> {
        (2..=self.p_max).filter(|p| is_prime(*p)).collect()
    }

    fn n_max(&self, p: u32) -> u32 {
        if p == 2 {
            self.n_max_two
        } else {
            self.n_max_odd
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Suite {
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suites: Vec<Suite>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }
}

struct Tally {
    name: &'static str,
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn outcome<T, E: std::fmt::Display>(&mut self, r: Result<T, E>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{}: {e}", what()));
                None
            }
        }
    }

    fn finish(self) -> Suite {
        Suite {
            name: self.name.to_string(),
            passed: self.failures.is_empty(),
            checks: self.checks,
            failures: self.failures,
        }
    }
}

fn specialize_p2() -> Suite {
    let mut t = Tally::new("specialize_p2");
    for (rule, ok) in specialize_p2_report() {
        t.check(ok, || format!("rule {rule} differs from its p=2 form"));
    }
    t.finish()
}

fn table_rows(o: &VerifyOptions) -> Suite {
    let mut t = Tally::new("table_rows");
    for p in o.primes() {
        for (a, b) in [(ModuleSymbol::ScrM, ModuleSymbol::ScrM), (ModuleSymbol::ScrM, ModuleSymbol::Hmod)] {
            let what = || format!("{a} ∧ {b} at p={p} on [{}, {}]", o.lo, o.hi);
            if let Some(ok) = t.outcome(verify_table_row(a, b, p, o.lo, o.hi), what) {
                t.check(ok, what);
            }
        }
    }
    t.finish()
}

fn recursion(o: &VerifyOptions) -> Suite {
    let mut t = Tally::new("recursion_vs_closed");
    for p in o.primes() {
        for n in 0..=o.n_max(p) {
            let hr = borel_homology_recursive(p, n).map(|r| r.decomposition);
            let hc = borel_homology_closed(p, n).map(|r| r.decomposition);
            let cr = borel_cohomology_recursive(p, n).map(|r| r.decomposition);
            let cc = borel_cohomology_closed(p, n).map(|r| r.decomposition);
            t.check(hr.is_ok() && hr == hc, || format!("homology p={p} n={n}"));
            t.check(cr.is_ok() && cr == cc, || format!("cohomology p={p} n={n}"));
        }
    }
    t.finish()
}

fn duality(o: &VerifyOptions) -> Suite {
    let mut t = Tally::new("duality");
    for p in o.primes() {
        for n in 0..=o.n_max(p) {
            let (Ok(h), Ok(c)) = (borel_homology_closed(p, n), borel_cohomology_closed(p, n)) else {
                t.check(false, || format!("p={p} n={n}: no decomposition"));
                continue;
            };
            t.check(
                c.get(ModuleSymbol::Hmod) == h.get(ModuleSymbol::Hmod).inverse_variable(),
                || format!("p={p} n={n}"),
            );
        }
    }
    t.finish()
}

fn nonnegativity(o: &VerifyOptions) -> Suite {
    let mut t = Tally::new("nonnegativity");
    for p in o.primes() {
        for n in 0..=o.n_max(p) {
            let sides = [
                (borel_homology_closed(p, n), Direction::AtZero),
                (borel_cohomology_closed(p, n), Direction::AtInfinity),
            ];
            for (r, dir) in sides {
                let Some(r) = t.outcome(r, || format!("p={p} n={n}")) else { continue };
                for (sym, m) in r.decomposition.terms() {
                    let table = m.expand(dir, o.lo, o.hi);
                    let what = || format!("{sym} at p={p} n={n} ({dir:?})");
                    if let Some(table) = t.outcome(table, what) {
                        t.check(table.is_nonnegative(), what);
                    }
                }
            }
        }
    }
    t.finish()
}

fn tate(o: &VerifyOptions) -> Suite {
    let mut t = Tally::new("tate_consistency");
    for p in o.primes() {
        for n in 0..=o.n_max(p) {
            t.check(consistency_check(p, n), || format!("p={p} n={n}"));
        }
    }
    if o.p_max >= 2 {
        for n in 0..=o.n_max_two {
            t.check(ttt_f(n) == tptt_f(2, n), || format!("general f at p=2, n={n}"));
        }
    }
    t.finish()
}

fn bg(o: &VerifyOptions) -> Suite {
    let mut t = Tally::new("bruner_greenlees");
    for r in 2..=o.r_max {
        if let Some(ok) = t.outcome(bg_vs_ours(r), || format!("r={r}")) {
            t.check(ok, || format!("r={r}: shifted sum differs from ours"));
        }
        if let Some(ids) = t.outcome(identities(r), || format!("r={r}")) {
            for id in ids {
                t.check(id.holds, || format!("r={r}: {}", id.name));
            }
        }
    }
    t.finish()
}

/// Runs every identity suite. Failures are reported, never raised.
pub fn verify_all(o: &VerifyOptions) -> VerifyReport {
    VerifyReport {
        suites: vec![
            specialize_p2(),
            table_rows(o),
            recursion(o),
            duality(o),
            nonnegativity(o),
            tate(o),
            bg(o),
        ],
    }
}
