//! Normalized homogeneous weight: the character-sum formula, which works on
//! every Frobenius ring, and the rank-based closed forms for products of
//! matrix rings over fields.

mod combinatorics;
mod weights;

pub use combinatorics::{
    alpha, cauchy_identity_check, gaussian, s_count, weight_matrix_rank, weight_rank_profile,
    RankEntry, RankProfile,
};
pub use weights::{
    has_zero_weight_nonzero, homogeneous_weights, matrix_rank, rank_profile,
    socle_weight_consistency, weight_table, weight_via_characters, weights_from_rank_profiles,
    WeightTable,
};
