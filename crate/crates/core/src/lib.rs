//! Growth of monomial algebras of infinite words, their commutator Lie
//! algebras and the convolution algebras of the associated subshift
//! groupoids, computed exactly at finite truncation.
//!
//! The modules follow the chain
//! word → factor language → monomial algebra → commutator Lie algebra →
//! groupoid convolution algebra → q-dimension estimates:
//!
//! * [`words`]: word sources, factor languages, binary reduction, bi-infinite extension
//! * [`regularize`]: growth series, the preorder `≼`, the regularizing transform
//! * [`monomial`]: the monomial algebra `A_w`
//! * [`liecomm`]: graded dimensions of `[A_w, A_w]`
//! * [`groupoid`]: finite-support arithmetic in `F[𝔊_w]`
//! * [`qdim`]: the `Φ^q_α` hierarchy and q-dimension estimates

pub mod error;
pub mod groupoid;
pub mod liecomm;
pub mod linalg;
pub mod monomial;
pub mod par;
pub mod qdim;
pub mod real;
pub mod regularize;
pub mod words;

pub use error::{Error, Result};
pub use par::Exec;
pub use real::Real;
