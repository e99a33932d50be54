//! Resolutions: minimal projective and injective resolutions, coinduction
//! coresolutions, injectivity tests and the coinduced filtration.

mod simple;
pub use simple::{
    head, indecomposable_projectives, radical_basis, radical_submodule, simples, IndecProjective,
};

mod projres;
pub use projres::{minimal_injective_resolution, ProjGen, ProjectiveResolution};

mod coresolve;
pub use coresolve::{
    a_injective_concave_resolution, concave_resolution, convex_resolution, coresolution_step,
    fifi_filtration, injectivity_test, CoStep, CoindResolution, FifiLayer,
};
