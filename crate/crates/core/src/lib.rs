//! Symmetry breaking on trees: distinguishing colorings, fixing sets and
//! paint cost spectra of perfect k-ary trees and k-podes, a brute-force
//! oracle for small trees, and distinct-column-sum permutation matrices.

pub mod canon;
pub mod cli;
pub mod colorings;
pub mod dcs;
pub mod error;
pub mod oracle;
pub mod spectrum;
pub mod symmetry;
pub mod tree;

pub use canon::{canonical_code, canonical_codes, CanonicalCode};
pub use colorings::{
    almost_efficient_variants, frugal_coloring, k_distinguishing_coloring, kpode_equality_coloring,
    middle_coloring, middle_depth3_family, SchemeId,
};
pub use dcs::{general_dcs, lemma_rows, verify_dcs, OrderedValues, RowPermutedMatrix};
pub use error::{Error, Result};
pub use oracle::{
    cost_number, min_colors, min_paint_cost, spectrum_oracle, OracleBudget, PaintCost, SearchOrder,
};
pub use spectrum::{spectrum_closed, SpectrumReport};
pub use symmetry::{
    automorphism_count, fixing_number_bruteforce, is_distinguishing, is_fixing_set,
    minimum_fixing_set, AutomorphismReport, FixingSearch,
};
pub use tree::{Coloring, Tree, TreeJson, TreeShape};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

/// Spectrum with unbounded integers.
pub type Spectrum = SpectrumReport<BigUint>;
/// Spectrum in machine words; closed forms fail with an overflow error once
/// the values leave `u64`.
pub type Spectrum64 = SpectrumReport<u64>;

pub type IntValues = OrderedValues<i64>;
pub type BigIntValues = OrderedValues<BigInt>;
pub type RationalValues = OrderedValues<BigRational>;

pub type IntMatrix = RowPermutedMatrix<i64>;
pub type BigIntMatrix = RowPermutedMatrix<BigInt>;
pub type RationalMatrix = RowPermutedMatrix<BigRational>;
