//! Instance generators for the lower-bound constructions.

pub mod degree;
pub mod erbds;
pub mod or_poly;
pub mod primesat;
pub mod rbds;
pub mod tree;

pub use degree::gen_degree_d_composition;
pub use erbds::{erbds_to_csp, gen_erbds_cross, Census, DegreeAudit, ErbdsGraph};
pub use or_poly::or_polynomial_mod_p;
pub use primesat::{find_prime_ap, gen_primesat_from_cnf, prime_count_satisfies, PrimeSatInstance};
pub use rbds::{solve_erbds, solve_rbds, solve_semi_erbds, BipartiteGraph, RbdsInstance};
pub use tree::{gen_tree_gadget, ModLinearSystem};
