//! Weight modules and the operators acting on them.

pub mod cover;
pub mod gamma;
pub mod omega;
pub mod submodule;
pub mod verma;
pub mod window;

pub use cover::{cover_weight_dim, CoverDim};
pub use gamma::{GammaModule, GammaVector, WeylModule, WeylOp, WeylVector};
pub use omega::{minimal_annihilating_m, omega_apply, omega_bracket_identity, OmegaIdentityReport, OmegaVariant};
pub use submodule::{reducibility_sweep, submodule_search, InvariantSubspace, SubmoduleReport};
pub use verma::{verma_basis, verma_weight_dims, VermaModule, VermaVector};
pub use window::{window_matrix, window_matrix_env, Window, WindowedOperator};
