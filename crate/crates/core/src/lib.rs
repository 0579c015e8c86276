//! Exact q-series arithmetic and quasi-particle basis enumeration for the
//! principally specialized characters of Verma and standard
//! `sl2`-hat modules.
//!
//! Characters are computed three ways and compared coefficient by
//! coefficient:
//!
//! * product sides ([`characters::standard_char_product`], [`characters::grr_product`]),
//! * fermionic sum sides ([`characters::standard_char_sum`], [`characters::grr_sum`]),
//! * direct enumeration of quasi-particle monomials ([`combinat::qp_count_series`],
//!   [`combinat::qp_enumerate`]).
//!
//! A match at truncation order `N` is evidence up to `q^N`, not a proof.
//!
//! With the default `parallel` feature the independent pieces of work
//! (charge types, summation tuples, suite items) are spread over the rayon
//! global pool. Without it everything runs sequentially and produces
//! identical output.

pub mod characters;
pub mod combinat;
mod error;
pub mod liealg;
pub mod par;
pub mod qseries;
pub mod verify;

pub use error::{Error, Result};
pub use qseries::TruncatedSeries;
