//! q-extensions of generalized Bernoulli numbers and polynomials, the
//! complex q-L-functions they are special values of, and the p-adic
//! function `L_{p,q}^{(h)}(s, t | chi)` interpolating them, together with
//! its derivative at `s = 0` and the q-deformed Diamond log-gamma function.
//!
//! The crate is `no_std` (with `alloc`); IO and the CLI live in `qlp`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod archimedean;
pub mod character;
pub mod domain;
pub mod error;
pub mod gamma;
pub mod jet;
pub mod padic;
pub mod padic_l;
pub mod qbernoulli;
pub mod series;
pub mod volkenborn;

pub use error::{Error, Result};
pub use jet::SJet;
pub use character::{twist, DirichletCharacter, TwistedCharacter};
pub use domain::{ComplexDomain, PadicDomain, QParam, QSource, ValueDomain};
pub use padic_l::LpContext;
pub use padic::{PadicNumber, PrecisionPolicy};
