pub mod diffop;
pub mod error;
pub mod extensions;
pub mod families;
pub mod numverify;
pub mod ratpoly;
pub mod report;
pub mod superalg;

pub use error::{Error, Result};
pub use ratpoly::{rat, Poly, RatFunc, Rational};
