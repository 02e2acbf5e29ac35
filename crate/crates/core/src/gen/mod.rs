//! Instance generators: fixed examples, reduction gadgets and random corpora.

pub mod cnf;
pub mod figures;
pub mod partition;
pub mod paths;
pub mod pop_lower;
pub mod random;
pub mod sat;

pub use cnf::{CnfFormula, Literal};
pub use figures::{gen_fig1, gen_unbounded_pop};
pub use partition::{gen_partition, PartitionInput, PartitionLayout};
pub use paths::{disjoint_paths_binary_starts, gen_disjoint_paths};
pub use pop_lower::gen_pop_lower;
pub use random::{gen_random, RandomParams};
pub use sat::{gen_3sat_gadget, gen_3sat_grid};
