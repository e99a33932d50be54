mod module;
mod sub;

pub use module::{adapt, coregular_left, regular_module, BlockKey, Module, RawModule};
pub use sub::{block_rank, image, is_module_map, kernel, GradedSubspace, Quo, Sub};
#[allow(unused_imports)]
pub(crate) use sub::{apply_local, echelon_coords, split_blocks};
mod coind;
pub use coind::{coinduce, induce, Coinduction, From};
mod hom;
pub use hom::{
    find_isomorphism, hom_layout, hom_space, hom_total_dim, is_invertible_blockwise, shift_range,
    HomSpace, HOM_UNKNOWN_CAP,
};
mod sfun;
pub use sfun::{check_dual, coregular, dual_maps, s_zero, tensor_over_a, Coregular, SModule};
mod json;
pub use json::{module_from_json, module_to_json, ModuleJson, Side};
mod random;
pub use random::{
    base_character, module_panel, peirce_projective, random_module, random_quotient, rng_from_seed,
};

#[cfg(test)]
mod tests;
