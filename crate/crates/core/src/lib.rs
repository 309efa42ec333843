//! Spaces of cone-angle polygons and the signature of their area Hermitian form.
//!
//! For curvature data `κ = (κ₁, …, κₙ)` with `0 < κ_i < 2π`, the space P(κ) is the
//! set of `(z₁, …, z_{2n}) ∈ ℂ^{2n}` with `z₁ = 0` and
//! `e^{iκ_i}(z_{2i−1} − z_{2i}) = z_{2i+1} − z_{2i}`. It has complex dimension
//! `n − 1` and carries the area form `⟨z, w⟩ = (i/4) Σ (z_j w̄_{j+1} − z_{j+1} w̄_j)`.
//!
//! The crate computes the signature of that form three ways (numerical inertia
//! of the Gram matrix, the closed form `(p(κ), q(κ))`, and a recursive split
//! along the special vector `X`) and implements the cut-glue and reversal maps
//! between these spaces.

pub mod areaform;
pub mod curvature;
pub mod error;
pub mod families;
pub mod polyspace;
pub mod transforms;

pub use areaform::{area_pairing, gram, inertia, numeric_signature, GramMatrix, Inertia};
pub use curvature::{
    closed_form_signature, epsilon, p_of, parse_curvature, permute, q_of, Angle, AngleTuple,
    CurvatureData, PartialSumLedger, Signature,
};
pub use error::{Error, Result};
pub use polyspace::{
    is_member, is_simple, random_element, realize, solve_even_coords, standard_basis, Basis,
    PolygonRealization, PolygonVector,
};
pub use transforms::{
    allpi_signature, cut_glue, cut_glue_matrix, embed_merged, recursive_signature, reverse,
    special_x, GeneralizedCurvatureData, LinearMapMatrix,
};

pub use num_complex::Complex64;
