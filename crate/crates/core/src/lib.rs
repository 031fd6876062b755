pub mod cartan;
pub mod csm;
pub mod error;
pub mod fk;
pub mod harness;
pub mod nilhecke;
pub mod poly;
pub mod rootpoly;
pub mod schubert;
pub mod weyl;
pub mod wordalg;

pub use cartan::{CartanData, Coroot, Root};
pub use error::{Error, Result};
pub use poly::{Monomial, Poly, Rational};
pub use rootpoly::RootPoly;
pub use weyl::{WeylElem, WeylGroup, Word};
