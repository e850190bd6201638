//! Exact verification of Mermin's pentagram proof of the
//! Kochen-Specker theorem in its parity, colouring, presheaf and root-system
//! forms, plus a classifier for empirical models on the
//! Abramsky-Brandenburger contextuality hierarchy.
//!
//! Everything is exact: rationals, Gaussian rationals, GF(2). No floating
//! point is used anywhere.

pub mod builtin;
pub mod exactkernel;
pub mod hilbert;
pub mod parity;
pub mod pauli;
pub mod presheaf;
pub mod roots;
pub mod scenario;
