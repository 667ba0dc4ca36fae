use negstat_core::qanalog::{q_binomial, q_multinomial};
use negstat_core::*;
use proptest::prelude::*;

fn signed_perm(max_n: usize) -> impl Strategy<Value = SignedPermutation> {
    (1..=max_n).prop_flat_map(signed_perm_of)
}

fn pair_of_same_rank(
    max_n: usize,
) -> impl Strategy<Value = (SignedPermutation, SignedPermutation, SignedPermutation)> {
    (1..=max_n).prop_flat_map(|n| (signed_perm_of(n), signed_perm_of(n), signed_perm_of(n)))
}

fn signed_perm_of(n: usize) -> impl Strategy<Value = SignedPermutation> {
    (
        Just((1..=n as i32).collect::<Vec<_>>()).prop_shuffle(),
        proptest::collection::vec(any::<bool>(), n),
    )
        .prop_map(|(values, signs)| {
            let window = values
                .into_iter()
                .zip(signs)
                .map(|(v, neg)| if neg { -v } else { v })
                .collect();
            SignedPermutation::new(window).unwrap()
        })
}

proptest! {
    #[test]
    fn group_axioms((a, b, c) in pair_of_same_rank(9)) {
        let id = SignedPermutation::identity(a.rank());
        prop_assert_eq!(a.compose(&a.inverse()).unwrap(), id.clone());
        prop_assert_eq!(a.inverse().compose(&a).unwrap(), id.clone());
        prop_assert_eq!(a.inverse().inverse(), a.clone());
        prop_assert_eq!(a.compose(&id).unwrap(), a.clone());
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(a.compose(&b).unwrap().inverse(), b.inverse().compose(&a.inverse()).unwrap());
        // D_n is closed under products
        prop_assert_eq!(
            a.compose(&b).unwrap().is_even_signed(),
            a.is_even_signed() == b.is_even_signed()
        );
    }

    #[test]
    fn display_parse_round_trip(p in signed_perm(12)) {
        prop_assert_eq!(p.to_string().parse::<SignedPermutation>().unwrap(), p);
    }

    #[test]
    fn negative_statistic_relations(p in signed_perm(10)) {
        let s = statistics(&p);
        let neg_sum: u32 = p.window().iter().filter(|&&v| v < 0).map(|v| v.unsigned_abs()).sum();
        prop_assert_eq!(s.n1 + s.n2, neg_sum);
        prop_assert_eq!(s.nmaj, s.maj + s.n1 + s.n2);
        prop_assert_eq!(s.ndes, s.des + s.n1);
        prop_assert_eq!(s.dmaj, s.maj + s.n2);
        prop_assert_eq!(s.ddes as i64, s.des as i64 + s.n1 as i64 + s.epsilon as i64);
        prop_assert_eq!(s.len_b, s.inv + s.n1 + s.n2);
        prop_assert_eq!(s.len_d, s.inv + s.n2);
        prop_assert_eq!(fmaj(&p), 2 * s.maj + s.n1);
        prop_assert_eq!(s.nmaj, s.ndes_multiset.iter().sum::<u32>());
        prop_assert_eq!(s.dmaj, s.ddes_multiset.iter().sum::<u32>());
    }

    #[test]
    fn lengths_are_inverse_invariant(p in signed_perm(10)) {
        let (s, t) = (statistics(&p), statistics(&p.inverse()));
        prop_assert_eq!(s.len_b, t.len_b);
        prop_assert_eq!(s.inv + s.n2, t.inv + t.n2);
    }

    #[test]
    fn quotient_factorization_is_length_additive(p in signed_perm(10)) {
        for group in [Group::B, Group::D] {
            if !group.contains(&p) {
                continue;
            }
            let (u, sigma) = factor_quotient(&p, group).unwrap();
            prop_assert!(u.is_increasing() && sigma.is_unsigned() && group.contains(&u));
            prop_assert_eq!(u.compose(&sigma).unwrap(), p.clone());
            let (su, ss, sp) = (statistics(&u), statistics(&sigma), statistics(&p));
            prop_assert_eq!(sp.len_b, su.len_b + ss.inv);
            prop_assert_eq!(sp.len_d, su.len_d + ss.inv);
            prop_assert_eq!((sp.maj, sp.des, sp.inv), (ss.maj, ss.des, ss.inv));
            prop_assert_eq!((sp.n1, sp.n2), (su.n1, su.n2));
        }
    }

    #[test]
    fn bar_map_is_an_involution(p in signed_perm(10)) {
        prop_assert_eq!(bar_map(&bar_map(&p)), p.clone());
        prop_assert_ne!(bar_map(&p).is_even_signed(), p.is_even_signed());
    }

    #[test]
    fn descent_set_text_round_trip(n in 1usize..12, mask in any::<u64>()) {
        let m = DescentSet::from_mask(n, mask & ((1 << n) - 1));
        prop_assert_eq!(DescentSet::parse(n, &m.to_string()).unwrap(), m.clone());
        prop_assert_eq!(m.parts().iter().sum::<usize>(), n);
    }

    #[test]
    fn q_binomial_symmetry_and_specialization(n in 0u32..14, k in 0u32..14) {
        prop_assume!(k <= n);
        prop_assert_eq!(q_binomial(n, k), q_binomial(n, n - k));
        let at_one = q_binomial(n, k).specialize_one(Var::Q).constant_term();
        let plain: u64 = (1..=k as u64).fold(1, |acc, i| acc * (n as u64 - k as u64 + i) / i);
        prop_assert_eq!(at_one, plain.into());
    }

    #[test]
    fn q_multinomial_at_one(parts in proptest::collection::vec(0u32..4, 1..5)) {
        let n: u32 = parts.iter().sum();
        let fact = |k: u32| (1..=k as u64).product::<u64>();
        let plain = fact(n) / parts.iter().map(|&a| fact(a)).product::<u64>();
        let m = q_multinomial(n, &parts).unwrap();
        prop_assert!(m.is_nonnegative());
        prop_assert_eq!(m.specialize_one(Var::Q).constant_term(), plain.into());
    }

    #[test]
    fn shuffle_counts(n in 1usize..7, mask in any::<u64>()) {
        let m = DescentSet::from_mask(n, mask & ((1 << n) - 1));
        for (_, block) in descent_class_blocks_b(&m) {
            let expanded: Vec<_> = expand_shuffles(&block).collect();
            prop_assert_eq!(expanded.len() as u128, block.count());
            let mut sorted = expanded.clone();
            sorted.sort();
            sorted.dedup();
            prop_assert_eq!(sorted.len(), expanded.len());
        }
    }
}
