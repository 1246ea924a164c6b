//! Exact computations with nilpotent orbits, sheets, affine vertex algebras,
//! Slodowy slices and W-algebras of classical simple Lie algebras.

pub mod error;
pub mod linalg;
pub mod rational;
pub mod upoly;

pub mod liealg;
pub mod orbits;
pub mod rootdata;
pub mod symalg;
pub mod affine;
pub mod slodowy;
pub mod charvar;
pub mod walg;
pub mod weylmap;

pub use error::{Error, Result};
pub use rational::Q;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/roots.md")]
    mod roots {}
    #[doc = include_str!("../../../book/src/orbits.md")]
    mod orbits {}
    #[doc = include_str!("../../../book/src/singular.md")]
    mod singular {}
    #[doc = include_str!("../../../book/src/slices.md")]
    mod slices {}
    #[doc = include_str!("../../../book/src/zero-loci.md")]
    mod zero_loci {}
    #[doc = include_str!("../../../book/src/walg.md")]
    mod walg {}
    #[doc = include_str!("../../../book/src/weyl.md")]
    mod weyl {}
}
