use proptest::prelude::*;

use twisthh_core::arith::{gcd, prime_divisors};
use twisthh_core::catalog::{builtin_cover, builtin_group, data_cover};
use twisthh_core::{
    all_twists, hh0_dim, hh1_dim, CentralExtension, Decomposer, FieldSpec, SectionChoice, TwistedAlgebra,
};

fn oracle_matches(ext: &CentralExtension, p: u64) {
    for i in 0..ext.m() {
        let a = TwistedAlgebra::new(ext, i, p).unwrap();
        assert!(a.satisfies_cocycle_identity());
        assert_eq!(a.hh1_oracle(256).unwrap(), hh1_dim(ext, i, p).unwrap().dim, "i={i} p={p}");
        assert_eq!(a.center_dim(), hh0_dim(ext, i), "i={i} p={p}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn cyclic_covers(n in 2usize..=36, m_pick in 0usize..8, p_pick in 0usize..4) {
        let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
        let m = divisors[m_pick % divisors.len()];
        let primes: Vec<u64> = prime_divisors(n as u64).into_iter().filter(|&p| gcd(p, m as u64) == 1).collect();
        prop_assume!(!primes.is_empty());
        let p = primes[p_pick % primes.len()];
        let ext = builtin_cover(&format!("C{n}/{m}")).unwrap();
        oracle_matches(&ext, p);
    }
}

#[test]
fn nonabelian_covers() {
    for (name, p) in [("Q8", 3), ("SL23", 3), ("SL25", 3), ("SL25", 5)] {
        oracle_matches(&builtin_cover(name).unwrap(), p);
    }
    for (name, p) in [("S3", 2), ("S3", 3), ("S4", 2), ("S4", 3), ("Q8", 2)] {
        oracle_matches(&CentralExtension::trivial(builtin_group(name).unwrap()), p);
    }
}

#[test]
fn section_choice_is_irrelevant() {
    let base = builtin_cover("SL27").unwrap();
    let cover = base.cover_arc().clone();
    let other = CentralExtension::with_section(cover, base.z(), SectionChoice::GreatestIndex).unwrap();
    for p in [3, 7] {
        assert_eq!(all_twists(&base, p).unwrap().dims(), all_twists(&other, p).unwrap().dims());
    }
}

#[test]
fn extending_scalars_keeps_dimensions() {
    let ext = builtin_cover("SL25").unwrap();
    let dec = Decomposer::new(&ext);
    let small = FieldSpec::new(3, 2).unwrap();
    let big = FieldSpec::with_degree(3, 2, 2).unwrap();
    for i in 0..2 {
        assert_eq!(dec.hh1_over(&small, i).unwrap().dim, dec.hh1_over(&big, i).unwrap().dim);
    }
}

#[test]
fn a7_covers() {
    for (name, p, dims) in
        [("2A7", 5, vec![1, 1]), ("2A7", 7, vec![2, 2]), ("3A7", 5, vec![1, 1, 1]), ("3A7", 7, vec![2, 2, 2])]
    {
        let s = all_twists(&data_cover(name).unwrap(), p).unwrap();
        assert_eq!(s.dims(), dims, "{name} p={p}");
        assert!(s.sum_rule && s.symmetry);
    }
}
