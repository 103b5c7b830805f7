use chanadv::hmm::{advantage_bound, advantage_objective, ordentlich_bound, true_rate_bracket, HmmParams};
use chanadv::info::{binary_entropy, Channel, Probability};
use chanadv::listdecode::{map_list_state, success_indicator_properties, BlockCode};
use chanadv::ordering::{
    eta_ln_bec_over_bsc, eta_ln_bsc_over_bec, eta_mc_bec_over_bsc, eta_mc_bsc_over_bec, eta_mc_generic,
    SimplexSearch,
};
use proptest::prelude::*;

fn pr(x: f64) -> Probability {
    Probability::new(x).unwrap()
}

#[test]
fn generic_search_matches_closed_form_on_grid() {
    let mut worst: f64 = 0.0;
    for i in 1..=20 {
        for j in 1..=20 {
            let (p, q) = (i as f64 * 0.025 - 0.0125, j as f64 * 0.05 - 0.025);
            let generic = eta_mc_generic(&Channel::bsc(pr(p)), &Channel::bec(pr(q)), SimplexSearch::default()).unwrap();
            let closed = eta_mc_bsc_over_bec(pr(p), pr(q)).unwrap();
            worst = worst.max((generic - closed).abs());
            let generic = eta_mc_generic(&Channel::bec(pr(q)), &Channel::bsc(pr(p)), SimplexSearch::default()).unwrap();
            worst = worst.max((generic - eta_mc_bec_over_bsc(pr(p), pr(q))).abs());
        }
    }
    assert!(worst <= 1e-4, "max deviation {worst}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn advantages_are_ordered_and_bounded(p in 0.0f64..=1.0, q in 0.0f64..=1.0) {
        let (pp, qq) = (pr(p), pr(q));
        let mc = eta_mc_bsc_over_bec(pp, qq).unwrap();
        let ln = eta_ln_bsc_over_bec(pp, qq).unwrap();
        let mc_rev = eta_mc_bec_over_bsc(pp, qq);
        let ln_rev = eta_ln_bec_over_bsc(pp, qq).unwrap();
        prop_assert!(ln >= mc - 1e-10 && ln_rev >= mc_rev - 1e-10);
        for v in [mc, ln, mc_rev, ln_rev] {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        // Never below the capacity gap, never above the dominated capacity.
        let (c_bsc, c_bec) = (1.0 - binary_entropy(p), 1.0 - q);
        prop_assert!(mc >= c_bec - c_bsc - 1e-12 && mc <= c_bec + 1e-12);
        prop_assert!(mc_rev >= c_bsc - c_bec - 1e-12 && mc_rev <= c_bsc + 1e-12);
    }

    #[test]
    fn more_capable_advantage_nonincreasing_in_q(p in 0.001f64..0.5, q in 0.0f64..0.99, dq in 0.0f64..0.01) {
        let a = eta_mc_bsc_over_bec(pr(p), pr(q)).unwrap();
        let b = eta_mc_bsc_over_bec(pr(p), pr(q + dq)).unwrap();
        prop_assert!(b <= a + 1e-12);
    }

    #[test]
    fn entropy_rate_bounds_are_consistent(q in 0.01f64..0.49, alpha in 0.01f64..0.49) {
        let params = HmmParams::new(q, alpha).unwrap();
        let (adv, gamma) = advantage_bound(params).unwrap();
        let ord = ordentlich_bound(params).unwrap();
        let at_natural = advantage_objective(params, params.natural_gamma()).unwrap();
        prop_assert!(adv >= at_natural - 1e-12);
        prop_assert!((0.0..1.0).contains(&gamma));
        let floor = binary_entropy(alpha) - 1e-12;
        prop_assert!(adv >= floor && adv <= 1.0 + 1e-12);
        prop_assert!(ord >= floor && ord <= 1.0 + 1e-12);
        let b = true_rate_bracket(params, 12).unwrap();
        // Both ends sum 2^n rounded terms; once converged they agree to rounding.
        prop_assert!(b.lower <= b.upper + 1e-12);
        prop_assert!(adv <= b.upper + 1e-9);
    }

    #[test]
    fn random_linear_codes_satisfy_decoder_properties(
        n in 3usize..=9,
        rows in prop::collection::vec(any::<u64>(), 1..=4),
        list in 1usize..=4,
        alpha in prop::sample::select(vec![0.2, 0.25, 0.5, 1.0]),
    ) {
        let mask = (1u64 << n) - 1;
        let code = BlockCode::linear(n, rows.iter().map(|r| r & mask).collect(), vec![]).unwrap();
        prop_assume!(list <= code.len());
        let report = success_indicator_properties(&code, list, alpha).unwrap();
        prop_assert!(report.all_hold(), "{:?}", report.first_failure());
    }

    #[test]
    fn decoder_state_structure(y in 0u64..128, list in 1usize..=16) {
        let code = BlockCode::hamming74();
        let s = map_list_state(&code, y, list).unwrap();
        prop_assert!(s.s1.len() < list && list <= s.s1.len() + s.s2.len());
        prop_assert!(s.w >= 1 && s.w <= s.s2.len());
        prop_assert_eq!(s.profile.iter().sum::<usize>(), code.len());
        let far = s.s1.iter().map(|c| (c ^ y).count_ones()).max();
        prop_assert!(far.is_none_or(|d| d < s.d_star));
    }
}
