use proptest::prelude::*;
use semi_hilbert::adjoint::admits_a_adjoint;
use semi_hilbert::catalog::{find, Hypothesis};
use semi_hilbert::{AFrame, DEFAULT_RANK_TOL};
use semi_hilbert_harness::fuzz::{child_seed, generate_trial, run_trial};
use semi_hilbert_harness::generate::{gen_biased, gen_compatible, gen_psd, Bias};
use semi_hilbert_harness::{FuzzConfig, Instance, RankPolicy};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psd_has_requested_rank(n in 1usize..=7, rank_frac in 0.0f64..=1.0, seed: u64) {
        let rank = (rank_frac * n as f64).round() as usize;
        let a = gen_psd(n, rank, seed).unwrap();
        let f = AFrame::new(&a, DEFAULT_RANK_TOL).unwrap();
        prop_assert_eq!(f.rank(), rank);
        prop_assert_eq!(gen_psd(n, rank, seed).unwrap(), a);
    }

    #[test]
    fn every_generated_operator_admits(n in 1usize..=6, rank_frac in 0.0f64..=1.0, seed: u64) {
        let rank = (rank_frac * n as f64).round() as usize;
        let f = AFrame::new(&gen_psd(n, rank, seed).unwrap(), DEFAULT_RANK_TOL).unwrap();
        prop_assert!(admits_a_adjoint(&f, &gen_compatible(&f, seed ^ 1)).unwrap());
        for bias in [Bias::Nilpotent, Bias::Normal] {
            prop_assert!(admits_a_adjoint(&f, &gen_biased(&f, bias, seed).unwrap()).unwrap());
        }
    }

    #[test]
    fn instances_round_trip(master: u64, i in 0usize..1000) {
        let cfg = FuzzConfig { master_seed: master, ..FuzzConfig::default() };
        let t = generate_trial(&cfg, i).unwrap();
        prop_assert_eq!(t.seed, child_seed(master, i as u64));
        let back = Instance::from_json(&t.instance.to_json().unwrap()).unwrap();
        back.validate().unwrap();
        prop_assert_eq!(back, t.instance);
    }
}

#[test]
fn singular_trials_skip_strict_checks() {
    let cfg = FuzzConfig { rank_policy: RankPolicy::DegenerateHeavy, n_min: 2, n_max: 5, master_seed: 3, ..FuzzConfig::default() };
    for i in 0..20 {
        let t = generate_trial(&cfg, i).unwrap();
        assert!(!t.frame.strictly_positive());
        for row in run_trial(&cfg, i) {
            let h = find(&row.check_id).unwrap().hypothesis;
            if matches!(h, Hypothesis::StrictlyPositive | Hypothesis::StrictlyPositiveNonzero) {
                assert!(row.skipped && row.pass, "{row:?}");
            }
            assert!(!row.is_violation(), "{row:?}");
        }
    }
}
