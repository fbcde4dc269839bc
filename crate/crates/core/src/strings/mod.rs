//! Fractal string families: exact length sequences, ball-level unfolding,
//! self-similarity checks and the Cantor-set digit characterization.

mod cantor;
mod desc;
mod unfold;

pub use cantor::{all_digits_even, cantor_set_membership, homeomorphism_map, real_point, Membership};
pub use desc::{
    make_base_p_real, make_cantor_2, make_cantor_p, make_euler, make_harmonic, make_rational_dim,
    make_smith, DescriptorDoc, Family, FractalStringDesc, KeptSet, Lattice, LengthTerm, Warning,
    World,
};
pub use unfold::{
    adelic_approx, max_feasible_depth, selfsimilar_check, unfold, unfold_ball_count, unfold_counts,
    unfold_from, AdelicApprox, AdelicComponent, GenerationUnfold, UnfoldCounts, MAX_BALLS,
};
