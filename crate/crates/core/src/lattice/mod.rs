//! Integer linear algebra, finitely generated abelian groups and Gale duality.

pub mod gale;
pub mod group;
pub mod matrix;
pub mod smith;

pub use gale::*;
pub use group::*;
pub use matrix::{reduce_mod_hermite, IntegerMatrix};
pub use smith::{kernel_basis, rank, smith_normal_form, solve_integer, SmithForm};
