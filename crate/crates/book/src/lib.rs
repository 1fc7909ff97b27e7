//! Compiles the guide's code blocks as doc-tests, one module per chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/circuits.md")]
pub mod circuits {}
#[doc = include_str!("../../../book/src/simulation.md")]
pub mod simulation {}
#[doc = include_str!("../../../book/src/noise.md")]
pub mod noise {}
#[doc = include_str!("../../../book/src/routing.md")]
pub mod routing {}
#[doc = include_str!("../../../book/src/chsh.md")]
pub mod chsh {}
#[doc = include_str!("../../../book/src/ghz.md")]
pub mod ghz {}
#[doc = include_str!("../../../book/src/qft.md")]
pub mod qft {}
#[doc = include_str!("../../../book/src/grover.md")]
pub mod grover {}
#[doc = include_str!("../../../book/src/qaoa.md")]
pub mod qaoa {}
#[doc = include_str!("../../../book/src/harness.md")]
pub mod harness {}
