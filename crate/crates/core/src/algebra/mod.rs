pub mod finite;
pub mod free_product;
pub mod group;

pub use finite::{validate_finite_group, FiniteGroup};
pub use free_product::{FreeProduct, Syllable};
pub use group::{Elem, Group, GroupHom};
