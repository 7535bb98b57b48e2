//! Framed quotient algebras `k[x]/((x^i) + I)` and linear algebra on them.

mod echelon;
mod frame;
mod link;

pub use echelon::{kernel, Echelon, SparseVec};
pub use frame::{FrameSpec, MembershipCertificate, QuotientFrame, DEFAULT_BASIS_CAP};
pub use link::Linkage;
