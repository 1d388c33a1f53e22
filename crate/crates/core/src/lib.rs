//! Combinatorics of twisted parabolic orbits in finite Weyl groups and the
//! closure order on the pieces of partial flag varieties they index.

mod bits;
pub mod oracle;
pub mod pieces;
pub mod rootsys;
pub mod twist;
pub mod weyl;

pub use bits::BitMatrix;
pub use oracle::{OracleError, OracleReport};
pub use pieces::{ClosurePoset, PieceError, PieceRecord, Stratification, TwistedSequence};
pub use rootsys::{CartanDatum, Family, Root, RootSystem, RootSystemError};
pub use twist::{DiagramAutomorphism, Partition, Reduction, Twist, TwistClass, TwistError, TwistedOrbit};
pub use weyl::{CosetKind, ElemId, Group, Side, Subset, WeylElement, WeylError, Word};
