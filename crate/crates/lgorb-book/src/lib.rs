//! Doctest shell for the guide: each chapter's code blocks run as tests here.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/getting-started.md")]
pub mod getting_started {}

#[doc = include_str!("../../../book/src/cyclotomic-numbers.md")]
pub mod cyclotomic_numbers {}

#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}

#[doc = include_str!("../../../book/src/sectors.md")]
pub mod sectors {}

#[doc = include_str!("../../../book/src/products.md")]
pub mod products {}

#[doc = include_str!("../../../book/src/invariants.md")]
pub mod invariants {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}

#[doc = include_str!("../../../book/src/comparisons.md")]
pub mod comparisons {}

#[doc = include_str!("../../../book/src/surfaces.md")]
pub mod surfaces {}

#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
