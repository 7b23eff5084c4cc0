use proptest::prelude::*;
use telecut::cutting::CutAllocation;
use telecut::experiments::{
    breakeven_efficiency, compare, emit_results, find_crossover, find_threshold, greedy_schedule, run_cut_sweep,
    run_remote_sweep, shots_to_reach, write_curves_csv, LinkChoice, OutputFormat, Summary, SweepConfig,
    ThresholdStatus,
};
use telecut::metrics::{FidelityCurve, SweepParameter};
use telecut::noise::{FidelityConvention, NoisePlacement};

fn remote_curve(grid: Vec<f64>, values: Vec<f64>) -> FidelityCurve {
    FidelityCurve::new(SweepParameter::NAdd, 3, grid, values).unwrap()
}

fn shots_curve(size: usize, grid: Vec<f64>, values: Vec<f64>) -> FidelityCurve {
    FidelityCurve::new(SweepParameter::NShots, size, grid, values).unwrap()
}

#[test]
fn default_config_is_valid() {
    let cfg = SweepConfig::default();
    cfg.validate().unwrap();
    let shots = cfg.n_shots_values();
    assert_eq!((shots[0], *shots.last().unwrap()), (10, 10_000));
    assert!(shots.windows(2).all(|w| w[0] < w[1]));
    let n_add = cfg.n_add_values();
    assert_eq!(n_add.len(), 30);
    assert!((n_add[0] - 1e-4).abs() < 1e-18 && (n_add[29] - 1.0).abs() < 1e-12);
}

#[test]
fn config_parsing() {
    let cfg = SweepConfig::from_toml_str(
        "ghz_sizes = [2, 4]\nseed = 7\nfidelity_convention = \"average\"\nnoise_placement = \"exhaustive\"\ncut_allocation = \"sampled\"\nn_shots_grid = [10, 100]\n",
    )
    .unwrap();
    assert_eq!(cfg.ghz_sizes, vec![2, 4]);
    assert_eq!(cfg.seed, 7);
    assert_eq!(cfg.fidelity_convention, FidelityConvention::Average);
    assert_eq!(cfg.noise_placement, NoisePlacement::Exhaustive);
    assert_eq!(cfg.cut_allocation, CutAllocation::Sampled);
    assert_eq!(cfg.n_shots_values(), vec![10, 100]);
    assert_eq!(cfg.repetitions, SweepConfig::default().repetitions);
    assert_eq!(SweepConfig::from_toml_str("").unwrap(), SweepConfig::default());
}

#[test]
fn config_rejects_bad_input() {
    assert!(SweepConfig::from_toml_str("unknown_key = 1").is_err());
    assert!(SweepConfig::from_toml_str("ghz_sizes = [1]").is_err());
    assert!(SweepConfig::from_toml_str("ghz_sizes = []").is_err());
    assert!(SweepConfig::from_toml_str("n_add_grid = [0.1, 0.01]").is_err());
    assert!(SweepConfig::from_toml_str("n_shots_grid = [0, 10]").is_err());
    assert!(SweepConfig::from_toml_str("repetitions = 0").is_err());
    assert!(SweepConfig::from_toml_str("gate_fidelity_2q = 1.5").is_err());
    assert!(SweepConfig::from_toml_str("eta = 2.0").is_err());
    assert!(SweepConfig::from_toml_str("fidelity_convention = \"bogus\"").is_err());
}

#[test]
fn threshold_examples() {
    let r = remote_curve(vec![1e-3, 1e-2, 1e-1, 1.0], vec![0.95, 0.9, 0.6, 0.3]);
    let above = find_threshold(&r, 0.97, 20);
    assert_eq!((above.status, above.n_add_threshold), (ThresholdStatus::AboveRange, None));
    let below = find_threshold(&r, 0.1, 20);
    assert_eq!((below.status, below.n_add_threshold), (ThresholdStatus::BelowRange, None));
    let exact = find_threshold(&r, 0.9, 200);
    assert_eq!((exact.status, exact.n_add_threshold), (ThresholdStatus::InRange, Some(1e-2)));
    let mid = find_threshold(&r, 0.75, 500);
    assert!((mid.n_add_threshold.unwrap() - 10f64.powf(-1.5)).abs() < 1e-12);
    assert_eq!((mid.ghz_size, mid.n_shots, mid.cut_fidelity), (3, 500, 0.75));
    let bumpy = remote_curve(vec![1e-3, 1e-2, 1e-1, 1.0], vec![0.9, 0.7, 0.8, 0.5]);
    let amb = find_threshold(&bumpy, 0.75, 20);
    assert_eq!(amb.status, ThresholdStatus::Ambiguous);
    assert_eq!(amb.crossings.len(), 3);
    assert_eq!(amb.n_add_threshold, Some(amb.crossings[0]));
}

#[test]
fn crossover_examples() {
    let flat = FidelityCurve::new(SweepParameter::NAdd, 2, vec![1e-4, 1e-3, 1e-2], vec![1.0; 3]).unwrap();
    let cut = shots_curve(2, vec![10.0, 100.0, 1000.0], vec![0.8, 0.95, 0.999]);
    let x = find_crossover(&[flat], std::slice::from_ref(&cut), 1e-3);
    assert_eq!((x[0].plateau_fidelity, x[0].n_shots), (1.0, None));
    let noisy = FidelityCurve::new(SweepParameter::NAdd, 2, vec![1e-4, 1e-3, 1e-2], vec![0.97, 0.96, 0.5]).unwrap();
    let x = find_crossover(&[noisy], &[cut], 1e-3);
    assert_eq!((x[0].plateau_fidelity, x[0].n_shots), (0.97, Some(1000)));
}

#[test]
fn shots_to_reach_interpolates_in_log_space() {
    let c = shots_curve(2, vec![10.0, 100.0, 1000.0], vec![0.8, 0.85, 0.95]);
    assert!((shots_to_reach(&c, 0.9).unwrap() - 10f64.powf(2.5)).abs() < 1e-9);
    assert_eq!(shots_to_reach(&c, 0.5), Some(10.0));
    assert_eq!(shots_to_reach(&c, 0.99), None);
}

#[test]
fn greedy_all_cut_when_remote_is_worthless() {
    let plan = greedy_schedule(3, 100, &|_| 0.5, &[0.0; 3], &[true; 3], &[]).unwrap();
    let shots: Vec<u64> = plan.decisions.iter().map(|d| d.shots).collect();
    assert_eq!(shots, vec![33, 33, 34]);
    assert!(plan.decisions.iter().all(|d| d.choice == LinkChoice::Cut && !d.escalated));
    assert_eq!(plan.remaining, 0);
}

#[test]
fn greedy_all_remote_when_links_are_perfect() {
    let plan = greedy_schedule(4, 400, &|_| 0.99, &[1.0; 4], &[true; 4], &[10, 100]).unwrap();
    assert!(plan.decisions.iter().all(|d| d.choice == LinkChoice::Remote && d.shots == 0));
    assert_eq!(plan.remaining, 400);
}

#[test]
fn greedy_feasible_escalation() {
    let f_cut = |s: u64| if s >= 250 { 0.99 } else { 0.8 };
    let plan = greedy_schedule(3, 600, &f_cut, &[0.95, 0.5, 0.5], &[false, true, true], &[100, 250, 500]).unwrap();
    let d = &plan.decisions[0];
    assert_eq!((d.choice, d.tentative_shots, d.shots, d.escalated, d.infeasible), (LinkChoice::Cut, 200, 250, true, false));
    assert_eq!(d.remaining_after, 350);
    assert_eq!((plan.decisions[1].shots, plan.decisions[2].shots), (175, 175));
    assert_eq!(plan.remaining, 0);
}

#[test]
fn greedy_rejects_bad_input() {
    assert!(greedy_schedule(0, 10, &|_| 1.0, &[], &[], &[]).is_err());
    assert!(greedy_schedule(3, 2, &|_| 1.0, &[0.5; 3], &[true; 3], &[]).is_err());
    assert!(greedy_schedule(2, 10, &|_| 1.0, &[0.5; 3], &[true; 2], &[]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn greedy_conserves_budget(
        f_remote in prop::collection::vec(0.0f64..1.0, 1..8),
        bell_bits in any::<u8>(),
        extra in 0u64..5000,
        grid in prop::collection::vec(1u64..3000, 0..6),
        slope in 0.01f64..0.2,
    ) {
        let n = f_remote.len();
        let s_total = n as u64 + extra;
        let bell: Vec<bool> = (0..n).map(|i| bell_bits >> i & 1 == 1).collect();
        let f_cut = move |s: u64| 1.0 - (-slope * (s as f64).sqrt()).exp();
        let plan = greedy_schedule(n, s_total, &f_cut, &f_remote, &bell, &grid).unwrap();
        prop_assert_eq!(plan.decisions.len(), n);
        prop_assert_eq!(s_total - plan.spent(), plan.remaining);
        prop_assert!(plan.spent() <= s_total);
        let mut left = s_total;
        for d in &plan.decisions {
            left -= d.shots;
            prop_assert_eq!(d.remaining_after, left);
            if d.choice == LinkChoice::Remote {
                prop_assert_eq!(d.shots, 0);
            }
        }
    }
}

#[test]
fn breakeven_is_one_third() {
    for n in 1..=8u32 {
        let eta = breakeven_efficiency(n);
        assert!((eta - 1.0 / 3.0).abs() < 1e-12);
        assert!((9f64.powi(n as i32) * eta.powi(2 * n as i32) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn empty_sweep_writes_header_only_csv() {
    let mut buf = Vec::new();
    write_curves_csv(&mut buf, &[]).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap(), "ghz_size,param_name,param_value,fidelity,stderr,n_seeds\n");
}

#[test]
fn json_summary_round_trips() {
    let r = remote_curve(vec![1e-3, 1e-2, 1e-1], vec![0.95, 0.9, 0.6]);
    let plan = greedy_schedule(2, 100, &|_| 0.9, &[0.5, 0.95], &[true, true], &[]).unwrap();
    let summary = Summary {
        config: Some(SweepConfig::default()),
        thresholds: vec![find_threshold(&r, 0.75, 20)],
        crossovers: find_crossover(std::slice::from_ref(&r), &[shots_curve(3, vec![10.0, 100.0], vec![0.5, 0.99])], 1e-3),
        shot_thresholds: vec![],
        plan: Some(plan),
        derivatives: vec![],
    };
    let dir = std::env::temp_dir().join(format!("telecut-json-{}", std::process::id()));
    let paths = emit_results(&dir, "summary", &[r], &summary, &[OutputFormat::Json, OutputFormat::Csv]).unwrap();
    let text = std::fs::read_to_string(&paths[0]).unwrap();
    let generic: serde_json::Value = serde_json::from_str(&text).unwrap();
    let threshold = generic["thresholds"][0]["n_add_threshold"].as_f64().unwrap();
    assert_eq!(threshold, summary.thresholds[0].n_add_threshold.unwrap());
    assert_eq!(generic["plan"]["remaining"].as_u64(), Some(50));
    let back: Summary = serde_json::from_value(generic).unwrap();
    assert_eq!(back, summary);
    let csv = std::fs::read_to_string(&paths[1]).unwrap();
    assert_eq!(csv.lines().count(), 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

fn small_config() -> SweepConfig {
    SweepConfig {
        n_add_grid: Some(vec![1e-4, 1e-3, 1e-2, 0.04, 0.1, 0.3, 1.0]),
        n_shots_grid: Some(vec![10, 100, 1000, 10_000]),
        repetitions: 8,
        ..SweepConfig::default()
    }
}

#[test]
fn remote_sweep_near_ideal_link() {
    let cfg = SweepConfig {
        gate_fidelity_1q: 1.0,
        gate_fidelity_2q: 1.0,
        n_add_grid: Some(vec![1e-4]),
        ..SweepConfig::default()
    };
    for c in run_remote_sweep(&cfg).unwrap() {
        assert!(c.values[0] > 0.999, "size {}: {}", c.ghz_size, c.values[0]);
    }
}

#[test]
fn remote_sweep_trends() {
    let curves = run_remote_sweep(&SweepConfig::default()).unwrap();
    let at = |size: usize| curves.iter().find(|c| c.ghz_size == size).unwrap().interpolate_log(0.1);
    assert!(at(5) < at(2));
    for c in &curves {
        // Non-increasing down to the minimum; the diagonal-only fidelity
        // recovers slightly at the largest N_add.
        let (imin, fmin) = c.values.iter().copied().enumerate().fold((0, 2.0), |a, (i, v)| if v < a.1 { (i, v) } else { a });
        assert!(c.values[..=imin].windows(2).all(|w| w[1] <= w[0]), "size {}", c.ghz_size);
        assert!(c.values[imin..].iter().all(|&v| v - fmin < 0.005), "size {}", c.ghz_size);
        assert_eq!(c.n_seeds, 0);
    }
}

#[test]
fn sampled_remote_arm_tracks_exact() {
    let exact = run_remote_sweep(&small_config()).unwrap();
    let sampled = run_remote_sweep(&SweepConfig { remote_shots: 20_000, ..small_config() }).unwrap();
    for (e, s) in exact.iter().zip(&sampled) {
        assert_eq!(s.n_seeds, 8);
        for i in 0..e.len() {
            assert!((e.values[i] - s.values[i]).abs() < 0.01, "size {} point {i}", e.ghz_size);
        }
    }
    assert_eq!(sampled, run_remote_sweep(&SweepConfig { remote_shots: 20_000, ..small_config() }).unwrap());
}

#[test]
fn cut_sweep_improves_with_shots_and_is_deterministic() {
    let cfg = small_config();
    let curves = run_cut_sweep(&cfg).unwrap();
    for c in &curves {
        assert!(c.values.windows(2).all(|w| w[1] >= w[0] - 0.01), "size {}: {:?}", c.ghz_size, c.values);
        assert!(c.stderr.iter().all(|&s| s >= 0.0));
    }
    assert_eq!(curves, run_cut_sweep(&cfg).unwrap());
    let other = run_cut_sweep(&SweepConfig { seed: cfg.seed + 1, ..cfg.clone() }).unwrap();
    assert_ne!(curves, other);
}

#[test]
fn sampled_allocation_is_much_noisier() {
    let cfg = SweepConfig { ghz_sizes: vec![4], n_shots_grid: Some(vec![1000]), repetitions: 4, ..SweepConfig::default() };
    let stratified = run_cut_sweep(&cfg).unwrap()[0].values[0];
    let sampled =
        run_cut_sweep(&SweepConfig { cut_allocation: CutAllocation::Sampled, ..cfg }).unwrap()[0].values[0];
    assert!(sampled < stratified, "{sampled} vs {stratified}");
}

#[test]
fn thresholds_do_not_grow_with_budget() {
    let report = compare(&SweepConfig::default()).unwrap();
    for size in 2..=5 {
        let t: Vec<f64> = report
            .thresholds
            .iter()
            .filter(|r| r.ghz_size == size)
            .filter_map(|r| r.n_add_threshold)
            .collect();
        assert!(t.windows(2).all(|w| w[1] <= w[0] * 1.1), "size {size}: {t:?}");
    }
}
