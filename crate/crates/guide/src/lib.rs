//! The book's chapters, compiled as doctests so every snippet stays
//! runnable. Nothing here is meant to be used as a library.

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/surfaces.md")]
pub mod surfaces {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/chains.md")]
pub mod chains {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/computing.md")]
pub mod computing {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/certificates.md")]
pub mod certificates {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/linear-algebra.md")]
pub mod linear_algebra {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
pub mod readme {}
