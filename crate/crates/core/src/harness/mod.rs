//! Stress-testing: coloring generators, an exhaustive existence oracle for
//! small instances, and seeded parallel trial runs.

mod brute;
mod generators;
mod stress;

pub use brute::{brute_force_exists, BruteError, BruteVerdict, MAX_BRUTE_N};
pub use generators::{generate, structured_colorings, Generator, GeneratorError};
pub use stress::{run_trial, stress_theorem, trial_seed, Counterexample, StressConfig, TrialOutcome, TrialReport};
