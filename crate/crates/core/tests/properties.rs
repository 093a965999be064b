use cooling_core::{
    apply_flip, dyck_decompose, enumerate_flips, parse_configuration, run_cooling, Configuration,
    CoolingState, FlipClass, Letter, RunOptions, Sign, VariantParams,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bridge() -> impl Strategy<Value = Configuration> {
    (1usize..=24)
        .prop_flat_map(|n| {
            Just(
                vec![Letter::One; n]
                    .into_iter()
                    .chain(vec![Letter::Two; n])
                    .collect::<Vec<_>>(),
            )
            .prop_shuffle()
        })
        .prop_map(|v| Configuration::from_letters(v).unwrap())
}

fn heights(w: &Configuration) -> Vec<i64> {
    let mut h = vec![0i64];
    for l in w.letters() {
        let last = *h.last().unwrap();
        h.push(last + if *l == Letter::One { 1 } else { -1 });
    }
    h
}

/// Maximal runs of path vertices on one side of each level, trimmed to runs
/// with at least one step.
fn brute_factors(w: &Configuration) -> Vec<(usize, usize, i64, Sign)> {
    let h = heights(w);
    let (lo, hi) = (*h.iter().min().unwrap(), *h.iter().max().unwrap());
    let mut out = Vec::new();
    let mut runs = |level: i64, sign: Sign, inside: &dyn Fn(i64) -> bool| {
        let mut k = 0;
        while k < h.len() {
            if !inside(h[k]) {
                k += 1;
                continue;
            }
            let a = k;
            while k + 1 < h.len() && inside(h[k + 1]) {
                k += 1;
            }
            if k > a {
                out.push((a, k, level, sign));
            }
            k += 1;
        }
    };
    for level in 0..=hi {
        runs(level, Sign::Positive, &|x| x >= level);
    }
    for level in lo..=0 {
        runs(level, Sign::Negative, &|x| x <= level);
    }
    out.sort_by_key(|f| (f.0, f.2.abs(), f.1));
    out
}

fn brute_energy(w: &Configuration) -> usize {
    w.letters().windows(2).filter(|p| p[0] == p[1]).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn text_round_trip(w in bridge()) {
        let text = w.to_string();
        prop_assert_eq!(parse_configuration(&text).unwrap(), w.clone());
        prop_assert_eq!(text.len(), w.len());
    }

    #[test]
    fn decomposition_matches_brute_force(w in bridge()) {
        let mut got: Vec<_> = dyck_decompose(&w)
            .into_iter()
            .map(|f| (f.start, f.end, f.height, f.sign))
            .collect();
        got.sort_by_key(|f| (f.0, f.2.abs(), f.1));
        prop_assert_eq!(got, brute_factors(&w));
    }

    #[test]
    fn factor_ones_and_nesting(w in bridge()) {
        let factors = dyck_decompose(&w);
        let text = w.to_string();
        for f in &factors {
            prop_assert_eq!(f.ones, text[f.start..f.end].matches('1').count());
            prop_assert_eq!(f.len() % 2, 0);
        }
        for a in &factors {
            for b in &factors {
                let disjoint = a.end <= b.start || b.end <= a.start;
                let nested = a.contains(b) || b.contains(a);
                prop_assert!(disjoint || nested || a.end == b.start || b.end == a.start);
            }
        }
    }

    #[test]
    fn phi_is_sum_over_factors(w in bridge(), alpha in 0.05f64..0.95) {
        let p = VariantParams::new(alpha).unwrap();
        let direct: f64 = dyck_decompose(&w).iter().map(|f| (1.0 + f.ones as f64).powf(alpha)).sum();
        let phi = cooling_core::variant_phi(&w, p).unwrap();
        prop_assert!((phi - direct).abs() < 1e-9 * direct.max(1.0));
    }

    #[test]
    fn volume_is_trapezoid_area(w in bridge()) {
        let h = heights(&w);
        let twice: i64 = h.windows(2).map(|p| p[0].abs() + p[1].abs()).sum();
        prop_assert_eq!(w.volume().doubled() as i64, twice);
        prop_assert_eq!(twice % 2, 0);
    }

    #[test]
    fn energy_matches_count(w in bridge()) {
        prop_assert_eq!(w.energy(), brute_energy(&w));
        prop_assert_eq!(w.is_ground_state(), brute_energy(&w) == 0);
    }

    #[test]
    fn flips_are_involutions(w in bridge()) {
        for f in enumerate_flips(&w) {
            let next = apply_flip(&w, f.position).unwrap();
            prop_assert_eq!(
                next.energy() as i64 - w.energy() as i64,
                f.delta_e as i64
            );
            let back = apply_flip(&next, f.position).unwrap();
            prop_assert_eq!(&back, &w);
            let reverse = enumerate_flips(&next)
                .into_iter()
                .find(|g| g.position == f.position)
                .unwrap();
            prop_assert_eq!(reverse.delta_e, -f.delta_e);
            prop_assert_eq!(f.class() == FlipClass::Forbidden, f.delta_e > 0);
            prop_assert_eq!(f.class() == FlipClass::Reversible, f.delta_e == 0);
        }
    }

    #[test]
    fn incremental_state_tracks_recomputation(w in bridge(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut state = CoolingState::new(w);
        while state.energy() > 0 {
            let before = state.energy();
            state.step(&mut rng).unwrap();
            prop_assert!(state.energy() <= before);
            prop_assert_eq!(state.energy(), brute_energy(state.config()));
            let fresh: Vec<usize> = enumerate_flips(state.config())
                .into_iter()
                .filter(|f| f.delta_e <= 0)
                .map(|f| f.position)
                .collect();
            prop_assert_eq!(state.allowed_positions(), fresh);
        }
        prop_assert!(state.step(&mut rng).is_none());
    }

    #[test]
    fn traced_energy_never_increases(w in bridge(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let opts = RunOptions { trace: Some(VariantParams::new(0.5).unwrap()), ..RunOptions::default() };
        let run = run_cooling(&w, &mut rng, opts).unwrap();
        let trace = run.trace.unwrap();
        prop_assert_eq!(trace.len() as u64, run.steps + 1);
        prop_assert!(trace.windows(2).all(|p| p[1].energy <= p[0].energy));
        prop_assert_eq!(trace.last().unwrap().energy, 0);
        prop_assert!(run.final_config.is_ground_state());
    }
}
