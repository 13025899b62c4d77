//! Finite workbench for Ramsey properties of M-sets, G-sets and unary algebras
//! through comonads and their coalgebras.
//!
//! Every infinite object (ω, the free monoid, `X^M` for infinite `X`) is
//! replaced by an explicit finite truncation whose size is part of the input.

pub mod bigramsey;
pub mod chains;
pub mod comonad;
pub mod embed;
pub mod error;
pub mod expansion;
pub mod forests;
pub mod monoid;
pub mod mset;
pub mod ramsey;
pub mod transport;

pub use chains::{Chain, ChainEmbedding};
pub use embed::Structure;
pub use error::{Error, Result};
pub use monoid::{FiniteMonoid, MonoidLike, WordTruncation};
pub use mset::{MSet, MSetMorphism, OrderedMSet, UnaryAlgebra};
pub use ramsey::{ArrowStatus, ArrowVerdict};
pub use transport::LexLift;
