//! Monochromatic Hamiltonian Berge-cycles in edge-colored complete uniform
//! hypergraphs: colorings, shadow multi-colorings, certificate extraction,
//! Hamiltonicity search, the constructive algorithm for 3-colored `K_n^4`,
//! and a stress-testing harness.

pub mod berge_extract;
pub mod certificate;
pub mod cli;
pub mod hamiltonicity;
pub mod harness;
pub mod hypergraph;
pub mod matching;
pub mod r4;
pub mod search;
pub mod shadow;
pub mod subset;
