//! Exact Waring ranks of monomials and of sums of pairwise coprime monomials,
//! generic ranks, maximum-rank constructions, and exhaustive checks of the
//! inequalities relating them.

pub mod coprime_sums;
pub mod error;
pub mod exact_math;
pub mod monomials;
pub mod rank_tables;
pub mod verify;

pub use coprime_sums::{
    enumerate_coprime_sums, greedy_construction, r_max_star, r_max_star_oracle,
    r_max_star_with_witness, sum_rank, CoprimeSum,
};
pub use error::{Result, WaringError};
pub use exact_math::{binomial, ceil_div, ratio_compare, Natural, Ratio};
pub use monomials::{
    enumerate_monomials, max_rank_monomial, r_max, r_max_with_witness, waring_rank, Mode,
    Monomial,
};
pub use rank_tables::{
    generic_rank, known_examples, rank_add_powers, upper_bounds, KnownExample, RankRecord,
    RecordKind, Witness,
};
