//! Hamiltonicity: degree conditions, Hamiltonian cycle and path search, and
//! monochromatic tight cycles in shadow multi-colorings.
//!
//! Every search reports `NotFound` only after an exhaustive search; running
//! out of budget is reported separately as `BudgetExhausted`.

mod cycle;
mod graph;
mod tight;

pub use cycle::{
    find_hamiltonian_cycle, find_hamiltonian_cycle_with, find_hamiltonian_path, HamOutcome, PathOutcome,
    SearchConfig, DEFAULT_BUDGET,
};
pub use graph::{chvatal_holds, chvatal_violation, ChvatalError, DegreeSequence, SimpleGraph};
pub use tight::{find_mono_ham_tight_cycle, find_mono_ham_tight_cycle_with, good_pair_graph, TightOutcome};
