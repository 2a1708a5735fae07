use std::path::PathBuf;
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::{verify_berge_certificate, BergeCertificate};
use crate::hamiltonicity::SearchConfig;
use crate::hypergraph::{ColoredHypergraph, Params};
use crate::r4::{r4_find, R4Config, MIN_N};
use crate::search::{generic_search, shadow_search, ShadowSearch};
use crate::shadow::build_shadow;

use super::brute::{brute_force_exists, BruteVerdict, MAX_BRUTE_N};
use super::generators::{generate, Generator};

#[derive(Debug, Clone)]
pub struct StressConfig {
    pub params: Params,
    pub generator: Generator,
    pub trials: u64,
    pub master_seed: u64,
    pub budget: u64,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
    /// Where counterexample colorings are written.
    pub reproducer_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: u64,
    pub seed: u64,
    /// The coloring in the text format.
    pub coloring: String,
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub params: Params,
    pub generator: String,
    pub seed: u64,
    pub trials: u64,
    pub successes: u64,
    pub unresolved: u64,
    pub counterexamples: Vec<Counterexample>,
    pub errors: Vec<String>,
    pub wall_time_s: f64,
}

impl TrialReport {
    pub fn summary(&self) -> String {
        let p = &self.params;
        format!(
            "r={} t={} c={} n={} generator={} seed={} trials={} successes={} unresolved={} counterexamples={} errors={} time={:.2}s",
            p.r,
            p.t,
            p.c,
            p.n,
            self.generator,
            self.seed,
            self.trials,
            self.successes,
            self.unresolved,
            self.counterexamples.len(),
            self.errors.len(),
            self.wall_time_s
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrialOutcome {
    Success(BergeCertificate),
    Unresolved,
    /// Exhaustive search proved that no certificate exists.
    Counterexample,
}

/// Seed of trial `index`: the first output of stream `index` of a ChaCha
/// generator keyed by the master seed.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng.next_u64()
}

/// Shadow tight cycle first; then the `K_n^4` construction when it applies;
/// then the exhaustive oracle for small `n`, or a budgeted search otherwise.
pub fn run_trial(h: &ColoredHypergraph, t: usize, cfg: &SearchConfig) -> TrialOutcome {
    let checked = |cert: BergeCertificate| {
        if verify_berge_certificate(&cert, h, t).is_pass() {
            TrialOutcome::Success(cert)
        } else {
            log::error!("search returned a certificate the verifier rejects");
            TrialOutcome::Unresolved
        }
    };
    let mut log = Vec::new();
    if let Ok(s) = build_shadow(h, t) {
        if let ShadowSearch::Found(cert) = shadow_search(h, &s, cfg, &mut log) {
            return checked(cert);
        }
    }
    if h.r() == 4 && h.c() == 3 && t == 2 && h.n() >= MIN_N {
        let r4 = R4Config { search: *cfg, reproducer_dir: None };
        if let Ok((cert, _)) = r4_find(h, &r4) {
            return checked(cert);
        }
    }
    if h.n() <= MAX_BRUTE_N {
        return match brute_force_exists(h, t) {
            Ok(BruteVerdict::Found(cert)) => checked(cert),
            Ok(BruteVerdict::ProvenNone) => TrialOutcome::Counterexample,
            Err(_) => TrialOutcome::Unresolved,
        };
    }
    match generic_search(h, t, cfg, &mut log) {
        crate::search::GenericOutcome::Found(cert) => checked(cert),
        crate::search::GenericOutcome::Unresolved => TrialOutcome::Unresolved,
    }
}

enum Tally {
    Success,
    Unresolved,
    Counterexample(Counterexample),
    Error(String),
}

/// Runs `cfg.trials` seeded trials in parallel. The report depends only on
/// the configuration (apart from wall time and file paths).
pub fn stress_theorem(cfg: &StressConfig) -> TrialReport {
    let start = Instant::now();
    let search = SearchConfig { budget: cfg.budget, ..SearchConfig::default() };
    let one = |i: u64| -> Tally {
        let seed = trial_seed(cfg.master_seed, i);
        let h = match generate(cfg.generator, &cfg.params, seed) {
            Ok(h) => h,
            Err(e) => return Tally::Error(format!("trial {i}: {e}")),
        };
        match run_trial(&h, cfg.params.t, &SearchConfig { seed, ..search }) {
            TrialOutcome::Success(_) => Tally::Success,
            TrialOutcome::Unresolved => Tally::Unresolved,
            TrialOutcome::Counterexample => {
                let coloring = h.to_text();
                let path = cfg.reproducer_dir.as_ref().and_then(|dir| {
                    let p = dir.join(format!("counterexample-{i}-{seed:016x}.txt"));
                    match std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&p, &coloring)) {
                        Ok(()) => Some(p),
                        Err(e) => {
                            log::error!("cannot write {}: {e}", p.display());
                            None
                        }
                    }
                });
                Tally::Counterexample(Counterexample { trial: i, seed, coloring, path })
            }
        }
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().expect("thread pool");
    let tallies: Vec<Tally> = pool.install(|| (0..cfg.trials).into_par_iter().map(one).collect());

    let mut report = TrialReport {
        params: cfg.params,
        generator: cfg.generator.to_string(),
        seed: cfg.master_seed,
        trials: cfg.trials,
        successes: 0,
        unresolved: 0,
        counterexamples: vec![],
        errors: vec![],
        wall_time_s: 0.0,
    };
    for t in tallies {
        match t {
            Tally::Success => report.successes += 1,
            Tally::Unresolved => report.unresolved += 1,
            Tally::Counterexample(c) => report.counterexamples.push(c),
            Tally::Error(e) => report.errors.push(e),
        }
    }
    report.wall_time_s = start.elapsed().as_secs_f64();
    report
}
