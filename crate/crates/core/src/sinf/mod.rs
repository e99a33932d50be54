//! Ext, Tor, semi-infinite Ext, the derived functor `S` and the
//! Hom-through-subcategory engine.

mod ext;
mod isomom;
mod routes;
mod semi;
mod table;
mod through;

pub use ext::{
    ext, ext_degree_total, ext_from_complex, ext_from_complex_with, ext_with, injective_side, s_derived, tor,
    tor_left_route,
};
pub use isomom::{check_isomom, frobenius_iso, pairing_rank, IsomomReport};
pub use routes::{hom_route, tensor_route};
pub use semi::{semi_infinite_ext, SemiInfinite, MAX_DEPTH};
pub use through::{hom_through, THROUGH_EXTRA_STEPS};
pub use table::{Entry, ExtTable, ResultDoc, Window};

#[cfg(test)]
mod tests;
