//! Exact polyhedral geometry of metrics embeddable in the real line with
//! unit minimum separation.
//!
//! The crate covers the embedding map `M`, the centered permutahedron and
//! its normal fan, the decomposition of the separated line metrics into
//! translated simplicial cones, and the unbounded edges of
//! `cl(Q_n) = P_n + C_n`: a combinatorial classifier, exhaustive certificate
//! verifiers, a certificate synthesizer, and an independent LP oracle.
//!
//! Everything is computed over exact rationals.

pub mod certificates;
pub mod edge_theory;
pub mod error;
pub mod exhaust;
pub mod line_metrics;
pub mod perm;
pub mod permutahedron;
pub mod oracle;
pub mod rat;
pub mod simplex;
pub mod symmat;
pub mod word;

pub use error::{Error, Result};
pub use perm::Perm;
pub use rat::Rat;
pub use symmat::SymZMat;
pub use word::Word;
