//! Exact computation with finite-field exponential sums.
//!
//! The crate is organised bottom-up:
//!
//! * [`gf`]: finite fields GF(p^f) with canonical models, embeddings, trace, norm, dlog.
//! * [`cyclo`]: exact cyclotomic integers in Z[ζ_M].
//! * [`charsum`]: additive and multiplicative characters, Gauss sums, Stickelberger values.
//! * [`tracefn`]: the trace-function families and the identities relating them.
//! * [`moments`]: Artin–Schreier reduction and second moments.
//! * [`weilgrp`]: matrix groups by closure and total Weil character values.
//! * [`hyperg`]: symbolic hypergeometric parameter arithmetic.
//! * [`suite`]: verification suites producing machine-readable reports.

pub mod arith;
pub mod charsum;
pub mod cyclo;
pub mod error;
pub mod gf;
pub mod hyperg;
pub mod moments;
pub mod suite;
pub mod tracefn;
pub mod weilgrp;

pub use charsum::{gauss_sum, AddChar, MultChar};
pub use cyclo::{ClearingFactor, ClearingKind, CycInt};
pub use error::{Error, Result};
pub use gf::{make_field, FieldElem, FieldSpec};
