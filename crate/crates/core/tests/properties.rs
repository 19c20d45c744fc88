use std::sync::Arc;

use proptest::prelude::*;
use sigmat::catalog;
use sigmat::psigmat::{replay_witness, Analysis};
use sigmat::residuals::{induces_power_automorphisms, induces_power_automorphisms_via_subgroups, sigma_nilpotent_residual};
use sigmat::sigma::{complete_hall_sigma_sets, is_sigma_nilpotent};
use sigmat::{FiniteGroup, Lattice, Perm, SigmaPartition};

fn perm_strategy(degree: usize) -> impl Strategy<Value = Perm> {
    Just((0..degree as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v.into_iter().map(|x| x as usize).collect()).unwrap())
}

fn group_strategy() -> impl Strategy<Value = FiniteGroup> {
    (2usize..=5)
        .prop_flat_map(|d| prop::collection::vec(perm_strategy(d), 1..=2).prop_map(move |g| (d, g)))
        .prop_map(|(d, gens)| FiniteGroup::from_permutations(d, &gens, 200).unwrap())
}

fn sigma_strategy() -> impl Strategy<Value = SigmaPartition> {
    prop::sample::select(vec!["*", "2|*", "3|*", "2,3|*", "2|3|*", "2,5|3|*", "3,5|*", "sigma0"])
        .prop_map(|s| s.parse().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lagrange_and_lattice_shape(g in group_strategy()) {
        prop_assert!(g.check_associativity());
        let lat = Lattice::new(Arc::new(g));
        let n = lat.group().order();
        for h in lat.ids() {
            prop_assert_eq!(n % lat.order_of(h), 0);
        }
        prop_assert_eq!(lat.order_of(lat.trivial()), 1);
        prop_assert_eq!(lat.order_of(lat.whole()), n);
    }

    #[test]
    fn deciders_are_consistent(g in group_strategy(), s in sigma_strategy()) {
        let lat = Lattice::new(Arc::new(g));
        let an = Analysis::new(&lat, &s);
        let whole = lat.whole();
        let brute = an.psigmat_bruteforce();
        let crit = an.psigmat_subnormal_criterion();
        prop_assert!(replay_witness(&lat, &s, &brute));
        prop_assert!(replay_witness(&lat, &s, &crit));
        if !complete_hall_sigma_sets(&lat, whole, &s).is_empty() {
            prop_assert_eq!(brute.value, crit.value);
        }
        if an.special_psigmat().is_some() {
            prop_assert!(brute.value);
        }
        for a in lat.ids() {
            if an.is_sigma_quasinormal(a, whole).is_some() {
                prop_assert!(an.is_sigma_subnormal(a, whole).is_some());
            }
            if lat.is_normal(a) && an.is_soluble() {
                prop_assert!(an.is_sigma_quasinormal(a, whole).is_some());
            }
        }
    }

    #[test]
    fn residual_quotient_is_sigma_nilpotent(g in group_strategy(), s in sigma_strategy()) {
        let lat = Lattice::new(Arc::new(g));
        let d = sigma_nilpotent_residual(&lat, &s);
        prop_assert!(lat.is_normal(d));
        prop_assert!(is_sigma_nilpotent(&lat.quotient_group(d).unwrap().group, &s));
        prop_assert_eq!(d == lat.trivial(), is_sigma_nilpotent(lat.group(), &s));
    }

    #[test]
    fn power_automorphism_routes_agree(g in group_strategy()) {
        let lat = Lattice::new(Arc::new(g));
        for d in lat.normal_subgroups() {
            prop_assert_eq!(
                induces_power_automorphisms(&lat, lat.whole(), d).unwrap(),
                induces_power_automorphisms_via_subgroups(&lat, lat.whole(), d).unwrap()
            );
        }
    }

    #[test]
    fn sigma_spec_roundtrip(s in sigma_strategy()) {
        let again: SigmaPartition = s.to_string().parse().unwrap();
        prop_assert_eq!(again, s);
    }
}

#[test]
fn builders_pass_invariants() {
    for e in catalog::bundled_corpus().unwrap() {
        assert!(e.group.check_associativity(), "{}", e.key);
        assert_eq!(e.group.mul(0, 0), 0);
    }
}
