//! Runs every code block of the guide in `book/src` as a doc-test.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/permutations.md")]
pub mod permutations {}

#[doc = include_str!("../../../book/src/fourier.md")]
pub mod fourier {}

#[doc = include_str!("../../../book/src/irreps.md")]
pub mod irreps {}

#[doc = include_str!("../../../book/src/strategies.md")]
pub mod strategies {}

#[doc = include_str!("../../../book/src/xu-group.md")]
pub mod xu_group {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
