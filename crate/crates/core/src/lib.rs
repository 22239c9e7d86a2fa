//! Non-vanishing of the modules `A_q(λ)` attached to an Arthur packet of `U(p,q)`.
//!
//! Two independent deciders are provided:
//!
//! * [`criterion`]: linear inequalities on the parameter `p` over the
//!   admissible arrangements of the segments (and a reduced form that only
//!   looks at neighbouring segments);
//! * [`tableau`]: the signed-tableau construction followed by Trapa's
//!   reduction to a ν-antitableau, or to zero.
//!
//! [`padic`] maps real parameters to extended multi-segments, and [`packet`]
//! enumerates whole packets.

pub mod arrangements;
pub mod criterion;
pub mod error;
pub mod halfint;
pub mod packet;
pub mod padic;
pub mod segment;
pub mod sign;
pub mod tableau;
pub mod transition;

#[cfg(test)]
mod testutil;

pub use arrangements::{Permutation, DEFAULT_MAX_R};
pub use criterion::{Condition, Verdict, Witness};
pub use error::{Error, ErrorClass, Result};
pub use halfint::HalfInt;
pub use segment::{GoodParityParameter, RangeLabel, Relation, Segment};
pub use sign::Sign;
pub use transition::ParamVector;
