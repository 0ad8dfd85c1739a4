//! Routing versus network coding for multiple unicast sessions.
//!
//! The crate is organised around one shared instance model and five
//! consumers of it:
//!
//! * [`instance`]: unicast and gap instances, validation, distances, JSON.
//! * [`flow`]: hop-bounded concurrent flow (multiplicative weights and an
//!   exact rational LP) together with dual certificates.
//! * [`route`]: rounding of fractional flows to paths and packet scheduling.
//! * [`certificate`]: moving cuts, padded decompositions and the dual to
//!   moving-cut pipeline that lower-bounds every coding protocol.
//! * [`protocol`]: a synchronous round simulator over GF(2) with linear
//!   coding traces, composition along graph products and pipelining.
//! * [`gap`]: the base instance, colored high-girth bipartite graphs, the
//!   graph product and the parameter recurrences.

pub mod certificate;
pub mod flow;
pub mod gap;
pub mod gf2;
pub mod instance;
pub mod protocol;
pub mod ratio;
pub mod report;
pub mod route;
pub mod seed;

pub use instance::{EdgeId, GapInstance, GapParams, NodeId, Path, UnicastInstance};
pub use ratio::Ratio;
