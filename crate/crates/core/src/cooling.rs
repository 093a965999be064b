//! The cooling Markov chain and the unrestricted melt walk.
//!
//! [`CoolingState`] keeps the energy and the set of allowed flips up to date
//! incrementally, so a step costs O(1) regardless of the word length.

use rand::Rng;
use serde::Serialize;

use crate::dyck::{variant_phi, VariantParams};
use crate::error::{Error, Result};
use crate::flip::local_delta;
use crate::word::{Configuration, Letter};

/// Default guard on the number of cooling steps.
pub const DEFAULT_STEP_CAP: u64 = 10_000_000_000;

/// Set of small integers with O(1) insert, remove, membership and uniform
/// sampling.
#[derive(Debug, Clone)]
pub struct AllowedSet {
    /// dense[..len] holds the members in arbitrary order
    dense: Vec<usize>,
    /// slot[e] is the index of e in dense, or NONE
    slot: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl AllowedSet {
    pub fn with_capacity(universe: usize) -> Self {
        AllowedSet {
            dense: Vec::with_capacity(universe),
            slot: vec![NONE; universe],
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.dense.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.dense.is_empty()
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        self.slot[e] != NONE
    }

    #[inline]
    pub fn insert(&mut self, e: usize) {
        if self.slot[e] == NONE {
            self.slot[e] = self.dense.len();
            self.dense.push(e);
        }
    }

    #[inline]
    pub fn remove(&mut self, e: usize) {
        let at = self.slot[e];
        if at == NONE {
            return;
        }
        let last = self.dense.pop().expect("slot marks a member");
        if last != e {
            self.dense[at] = last;
            self.slot[last] = at;
        }
        self.slot[e] = NONE;
    }

    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<usize> {
        if self.dense.is_empty() {
            None
        } else {
            Some(self.dense[rng.gen_range(0..self.dense.len())])
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.dense.iter().copied()
    }

    /// Members in increasing order.
    pub fn sorted(&self) -> Vec<usize> {
        let mut v = self.dense.clone();
        v.sort_unstable();
        v
    }
}

/// A configuration under the cooling process, with cached energy and the set
/// of allowed flips (stored as 0-based left indices).
#[derive(Debug, Clone)]
pub struct CoolingState {
    config: Configuration,
    energy: usize,
    allowed: AllowedSet,
}

#[inline]
fn is_allowed_at(letters: &[Letter], j: usize) -> bool {
    letters[j] != letters[j + 1] && local_delta(letters, j) <= 0
}

impl CoolingState {
    pub fn new(config: Configuration) -> Self {
        let letters = config.letters();
        let slots = letters.len().saturating_sub(1);
        let mut allowed = AllowedSet::with_capacity(slots);
        for j in 0..slots {
            if is_allowed_at(letters, j) {
                allowed.insert(j);
            }
        }
        let energy = config.energy();
        CoolingState {
            config,
            energy,
            allowed,
        }
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn into_config(self) -> Configuration {
        self.config
    }

    pub fn energy(&self) -> usize {
        self.energy
    }

    pub fn allowed(&self) -> &AllowedSet {
        &self.allowed
    }

    /// 1-based positions of the allowed flips, sorted.
    pub fn allowed_positions(&self) -> Vec<usize> {
        self.allowed.sorted().into_iter().map(|j| j + 1).collect()
    }

    /// Performs one step of the cooling process. Returns the 1-based position
    /// flipped, or `None` when the state is a ground state (fixed point).
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Option<usize> {
        if self.energy == 0 {
            return None;
        }
        let j = self
            .allowed
            .sample(rng)
            .expect("a configuration with a mismatch always has a non-increasing flip");
        self.flip_at(j);
        Some(j + 1)
    }

    /// Applies the flip with 0-based left index `j`, which must be allowed.
    fn flip_at(&mut self, j: usize) {
        let letters = self.config.letters_mut();
        let delta = local_delta(letters, j);
        debug_assert!(delta <= 0);
        letters.swap(j, j + 1);
        self.energy = (self.energy as i64 + delta as i64) as usize;

        let lo = j.saturating_sub(2);
        let hi = (j + 2).min(letters.len() - 2);
        for k in lo..=hi {
            if is_allowed_at(letters, k) {
                self.allowed.insert(k);
            } else {
                self.allowed.remove(k);
            }
        }
    }

    /// Recomputes energy and allowed set from scratch and compares them with
    /// the cached values.
    pub fn is_consistent(&self) -> bool {
        let fresh = CoolingState::new(self.config.clone());
        fresh.energy == self.energy && fresh.allowed.sorted() == self.allowed.sorted()
    }
}

/// Functional form of [`CoolingState::step`].
pub fn cooling_step<R: Rng + ?Sized>(mut state: CoolingState, rng: &mut R) -> CoolingState {
    state.step(rng);
    state
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceEntry {
    pub energy: usize,
    pub phi: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub step_cap: u64,
    /// When set, record `(E, phi_alpha)` after every step.
    pub trace: Option<VariantParams>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            step_cap: DEFAULT_STEP_CAP,
            trace: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoolingRun {
    /// Convergence time T.
    pub steps: u64,
    pub final_config: Configuration,
    /// Entries for t = 0..=T when tracing.
    pub trace: Option<Vec<TraceEntry>>,
}

/// Runs the cooling process from `w0` until the energy reaches zero.
pub fn run_cooling<R: Rng + ?Sized>(
    w0: &Configuration,
    rng: &mut R,
    options: RunOptions,
) -> Result<CoolingRun> {
    let mut state = CoolingState::new(w0.clone());
    let record = |s: &CoolingState, p: VariantParams| TraceEntry {
        energy: s.energy(),
        phi: variant_phi(s.config(), p).unwrap_or(0.0),
    };
    let mut trace = options.trace.map(|p| vec![record(&state, p)]);
    let mut steps = 0u64;
    while state.energy() > 0 {
        if steps >= options.step_cap {
            return Err(Error::StepCapExceeded {
                cap: options.step_cap,
            });
        }
        state.step(rng);
        steps += 1;
        if let (Some(t), Some(p)) = (trace.as_mut(), options.trace) {
            t.push(record(&state, p));
        }
    }
    Ok(CoolingRun {
        steps,
        final_config: state.into_config(),
        trace,
    })
}

/// Convergence time only, with the default step cap.
pub fn convergence_time<R: Rng + ?Sized>(w0: &Configuration, rng: &mut R) -> Result<u64> {
    run_cooling(w0, rng, RunOptions::default()).map(|r| r.steps)
}

/// One step of the unrestricted flip walk: a uniformly chosen flip among all
/// positions with different letters, forbidden ones included.
pub fn melt_step<R: Rng + ?Sized>(w: &Configuration, rng: &mut R) -> Result<Configuration> {
    if w.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    let positions: Vec<usize> = w
        .letters()
        .windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] != p[1])
        .map(|(j, _)| j)
        .collect();
    let j = positions[rng.gen_range(0..positions.len())];
    let mut out = w.clone();
    out.letters_mut().swap(j, j + 1);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn allowed_set_ops() {
        let mut s = AllowedSet::with_capacity(5);
        s.insert(3);
        s.insert(1);
        s.insert(3);
        assert_eq!(s.len(), 2);
        s.remove(3);
        assert!(!s.contains(3));
        assert!(s.contains(1));
        s.remove(3);
        assert_eq!(s.sorted(), vec![1]);
        s.remove(1);
        assert!(s.is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(s.sample(&mut rng), None);
    }

    #[test]
    fn ground_state_is_fixed() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for word in ["1212", "12", "21", "212121"] {
            let s = CoolingState::new(w(word));
            let after = cooling_step(s, &mut rng);
            assert_eq!(after.config(), &w(word));
            assert_eq!(after.energy(), 0);
        }
    }

    #[test]
    fn ground_states_of_length_four_or_more_have_no_allowed_flip() {
        assert!(CoolingState::new(w("1212")).allowed().is_empty());
        assert_eq!(CoolingState::new(w("12")).allowed_positions(), vec![1]);
    }

    #[test]
    fn forced_step() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = cooling_step(CoolingState::new(w("1122")), &mut rng);
        assert_eq!(s.config(), &w("1212"));
        assert_eq!(s.energy(), 0);
        assert!(s.is_consistent());
    }

    #[test]
    fn two_way_step() {
        let s = CoolingState::new(w("112122"));
        assert_eq!(s.allowed_positions(), vec![2, 4]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen = std::collections::BTreeMap::new();
        for _ in 0..2000 {
            let next = cooling_step(s.clone(), &mut rng);
            *seen.entry(next.config().to_string()).or_insert(0) += 1;
        }
        assert_eq!(seen.len(), 2);
        assert!(seen["121122"] > 850 && seen["112212"] > 850);
    }

    #[test]
    fn run_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        assert_eq!(convergence_time(&w("1212"), &mut rng).unwrap(), 0);
        for _ in 0..20 {
            assert_eq!(convergence_time(&w("1122"), &mut rng).unwrap(), 1);
            assert_eq!(convergence_time(&w("1221"), &mut rng).unwrap(), 1);
        }
        assert_eq!(convergence_time(&w("12"), &mut rng).unwrap(), 0);
    }

    #[test]
    fn step_cap_is_reported() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let opts = RunOptions {
            step_cap: 3,
            trace: None,
        };
        let err = run_cooling(&Configuration::staircase(10), &mut rng, opts).unwrap_err();
        assert_eq!(err, Error::StepCapExceeded { cap: 3 });
    }

    #[test]
    fn trace_is_monotone_in_energy() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let opts = RunOptions {
            trace: Some(VariantParams::new(0.5).unwrap()),
            ..RunOptions::default()
        };
        let run = run_cooling(&Configuration::staircase(8), &mut rng, opts).unwrap();
        let trace = run.trace.unwrap();
        assert_eq!(trace.len() as u64, run.steps + 1);
        assert!(trace.windows(2).all(|p| p[1].energy <= p[0].energy));
        assert_eq!(trace.last().unwrap().energy, 0);
        assert_eq!(trace[0].energy, 14);
        assert!(run.final_config.is_ground_state());
    }

    #[test]
    fn melt_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert_eq!(melt_step(&w("1122"), &mut rng).unwrap(), w("1212"));
        assert_eq!(melt_step(&w("12"), &mut rng).unwrap(), w("21"));
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..200 {
            seen.insert(melt_step(&w("1212"), &mut rng).unwrap().to_string());
        }
        let expected: std::collections::BTreeSet<_> = ["2112", "1122", "1221"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(seen, expected);
        assert!(melt_step(&Configuration::empty(), &mut rng).is_err());
    }
}
