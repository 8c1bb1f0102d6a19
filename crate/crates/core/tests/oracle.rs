use ktate_core::grmod::ModuleSymbol::{self, *};
use ktate_core::resolve::{
    coefficient_groups, resolution_of, tor, tor_with, verify_table_row, wedge_homotopy,
    GradedAbelianGroup, GroupPiece,
};
use ktate_core::{BigInt, RatFn};

fn h_multiplicity(num: RatFn, e: i64) -> Vec<(ModuleSymbol, RatFn)> {
    let den = RatFn::geometric_inverse(e);
    vec![(Hmod, num * den.clone() * den)]
}

fn same(a: &GradedAbelianGroup, b: &GradedAbelianGroup, lo: i64, hi: i64) {
    for d in lo..=hi {
        assert_eq!(a.get(d), b.get(d), "degree {d}");
    }
}

#[test]
fn tor_one_of_m_with_m_is_m_shifted_by_two() {
    let t = tor(ScrM, ScrM, 1, 2, 0, 12).unwrap();
    for i in 0..=5 {
        assert_eq!(t.get(2 * i + 2), GroupPiece::cyclic(1u64 << i), "degree {}", 2 * i + 2);
    }
    let m2 = coefficient_groups(ScrM, 2, -2, 10).unwrap().shift(2);
    same(&t, &m2, 0, 12);
}

#[test]
fn tor_one_of_m_with_n_vanishes() {
    assert!(tor(ScrM, ScrN, 1, 2, 0, 12).unwrap().is_zero());
    assert!(tor(ScrN, ScrN, 1, 2, 0, 12).unwrap().is_zero());
}

#[test]
fn n_tensor_n() {
    let t = tor(ScrN, ScrN, 0, 2, 0, 8).unwrap();
    let mut blocks = h_multiplicity(RatFn::w(2), 2);
    blocks.push((ScrN, RatFn::one()));
    same(&t, &wedge_homotopy(&blocks, 2, 0, 8).unwrap(), 0, 8);
    assert_eq!(t.get(6).free, 1);
    assert_eq!(t.get(6).torsion, vec![BigInt::from(2); 3]);
}

#[test]
fn tensor_products_at_two() {
    let mn = tor(ScrM, ScrN, 0, 2, 0, 20).unwrap();
    same(&mn, &wedge_homotopy(&h_multiplicity(RatFn::w(2), 2), 2, 0, 20).unwrap(), 0, 20);
    let mm = tor(ScrM, ScrM, 0, 2, 0, 20).unwrap();
    same(&mm, &wedge_homotopy(&h_multiplicity(RatFn::w(4), 2), 2, 0, 20).unwrap(), 0, 20);
}

#[test]
fn odd_primes() {
    for p in [3u32, 5] {
        let e = 2 * (i64::from(p) - 1);
        let hi = 24;
        // M carries the shift 2(2 - p), so M ⊗ N sits 2(2 - p) below the unshifted count
        let shift = 2 * (2 - i64::from(p));
        let nn = tor(ScrN, ScrN, 0, p, 0, hi).unwrap();
        let mut blocks = h_multiplicity(RatFn::w(e), e);
        blocks.push((ScrN, RatFn::one()));
        same(&nn, &wedge_homotopy(&blocks, p, 0, hi).unwrap(), 0, hi);
        let mn = tor(ScrM, ScrN, 0, p, 0, hi).unwrap();
        same(&mn, &wedge_homotopy(&h_multiplicity(RatFn::w(e + shift), e), p, 0, hi).unwrap(), 0, hi);
        let mm = tor(ScrM, ScrM, 0, p, 0, hi).unwrap();
        same(&mm, &wedge_homotopy(&h_multiplicity(RatFn::w(4), e), p, 0, hi).unwrap(), 0, hi);
        let mm1 = tor(ScrM, ScrM, 1, p, 0, hi).unwrap();
        same(&mm1, &coefficient_groups(ScrM, p, -2, hi - 2).unwrap().shift(2), 0, hi);
        assert!(tor(ScrM, ScrN, 1, p, 0, hi).unwrap().is_zero());
        assert!(tor(ScrN, ScrN, 1, p, 0, hi).unwrap().is_zero());
    }
}

#[test]
fn tor_two_vanishes_and_tor_is_symmetric() {
    let pairs = [(ScrM, ScrM), (ScrM, ScrN), (ScrN, ScrN), (ScrM, Hmod), (ScrN, Hmod), (FreeK, Hmod)];
    for p in [2u32, 3] {
        for (a, b) in pairs {
            assert!(tor(a, b, 2, p, 0, 16).unwrap().is_zero(), "{a} {b} p={p}");
            for j in 0..2 {
                assert_eq!(tor(a, b, j, p, 0, 16).unwrap(), tor(b, a, j, p, 0, 16).unwrap());
            }
        }
    }
}

#[test]
fn table_rows_match_the_oracle() {
    assert!(verify_table_row(ScrM, ScrM, 2, 0, 16).unwrap());
    assert!(verify_table_row(ScrM, Hmod, 2, 0, 16).unwrap());
    assert!(verify_table_row(ScrM, ScrM, 3, 0, 24).unwrap());
    assert!(verify_table_row(ScrM, Hmod, 3, 0, 24).unwrap());
    assert!(verify_table_row(ScrM, ScrM, 5, 0, 24).unwrap());
}

#[test]
fn truncation_stability() {
    for p in [2u32, 3] {
        for (a, b) in [(ScrM, ScrM), (ScrN, ScrM), (ScrM, Hmod)] {
            let base = 16 + 8 * (i64::from(p) - 1);
            let small = (resolution_of(a, p, base).unwrap(), resolution_of(b, p, base).unwrap());
            let big = (resolution_of(a, p, base + 14).unwrap(), resolution_of(b, p, base + 14).unwrap());
            for j in 0..=2 {
                assert_eq!(
                    tor_with(&small.0, &small.1, j, 0, 16).unwrap(),
                    tor_with(&big.0, &big.1, j, 0, 16).unwrap()
                );
            }
        }
    }
}
