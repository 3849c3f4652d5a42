mod common;

use cascade_seq::model::{
    assortment_revenue, priced_sequence_revenue, sequence_revenue, DisplaySequence,
};
use cascade_seq::oracle::{exact_pa, exact_pb_grid, simulate, simulate_priced, PriceGrid};
use cascade_seq::sequencer::pricing_ratio;
use cascade_seq::{solve_pricing, solve_sequencing};
use common::{fixed, fixed_catalog, priced_catalog};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn oracle_dominates_the_solver(c in fixed_catalog(1, 6, 3)) {
        let (seq, best) = exact_pa(&c).unwrap();
        prop_assert!((sequence_revenue(&seq, &c).unwrap() - best).abs() <= 1e-12);
        prop_assert!(solve_sequencing(&c, 0.5, 0.1).unwrap().revenue <= best + 1e-12);
    }

    #[test]
    fn full_browsing_optimum_is_the_mnl_optimum(
        spec in prop::collection::vec((0.1..10.0f64, 0.1..5.0f64), 1..7),
    ) {
        let always: Vec<_> = spec.iter().map(|&(a, b)| (a, b, 1.0)).collect();
        let c = fixed(&always, always.len());
        let (_, best) = exact_pa(&c).unwrap();
        let ids: Vec<_> = c.ids().collect();
        let mnl = (1u32..1 << ids.len())
            .map(|m| {
                let set: Vec<_> = ids.iter().enumerate().filter(|(k, _)| m & (1 << k) != 0).map(|(_, &id)| id).collect();
                assortment_revenue(&set, &c).unwrap()
            })
            .fold(0.0, f64::max);
        prop_assert!((best - mnl).abs() <= 1e-9);
        // some revenue-ordered set is optimal
        let mut by_alpha = c.products().to_vec();
        by_alpha.sort_by(|a, b| b.alpha.total_cmp(&a.alpha));
        let threshold = (1..=by_alpha.len())
            .map(|k| {
                let set: Vec<_> = by_alpha[..k].iter().map(|p| p.id).collect();
                assortment_revenue(&set, &c).unwrap()
            })
            .fold(0.0, f64::max);
        prop_assert!((threshold - mnl).abs() <= 1e-9);
    }

    #[test]
    fn simulation_tracks_the_closed_form(c in fixed_catalog(1, 5, 5), seed in any::<u64>()) {
        let seq = DisplaySequence::new(c.ids().take(c.display_budget()).collect()).unwrap();
        let r = simulate(&seq, &c, 100_000, seed).unwrap();
        let f = sequence_revenue(&seq, &c).unwrap();
        // 6 standard errors keeps spurious proptest failures negligible
        prop_assert!((r.empirical_revenue - f).abs() <= 6.0 * r.std_error + 1e-12);
    }

    #[test]
    fn pricing_meets_its_guarantee(c in priced_catalog(1, 4, 2)) {
        let grid = PriceGrid::default_for(&c, 11).unwrap();
        let best = exact_pb_grid(&c, &grid).unwrap();
        prop_assert!(
            (priced_sequence_revenue(&best.sequence, &best.prices, &c).unwrap() - best.revenue).abs() <= 1e-12
        );
        let r = solve_pricing(&c, 0.5, 0.1).unwrap();
        prop_assert!(r.revenue >= pricing_ratio(0.5, 0.1) * (best.revenue - best.grid_error_bound) - 1e-9);
        let sim = simulate_priced(&r.sequence, r.prices.as_ref().unwrap(), &c, 20_000, 1).unwrap();
        prop_assert!((sim.empirical_revenue - r.revenue).abs() <= 6.0 * sim.std_error + 1e-12);
    }
}
