//! Bridge-number bounds for virtual and welded knots given by Gauss diagrams.
//!
//! Upper bounds come from the diagrams themselves and from bounded searches
//! over Reidemeister moves (plus the forbidden overpass for welded knots).
//! Lower bounds come from elementary ideals of the knot group, the reduced
//! virtual knot group and their mirrors, and from Gaussian parity
//! projection.

pub mod foxcalc;
pub mod gauss;
pub mod ideals;
pub mod parity;
pub mod present;
pub mod report;
pub mod rmoves;
pub mod search;

pub use gauss::{CanonicalKey, ChordId, DiagramError, Endpoint, GaussDiagram, Role, Sign};
pub use report::{compute_report, revalidate, BoundCertificate, CertificateKind, InvariantReport};
pub use rmoves::{apply_move, enumerate_moves, MoveBounds, MoveError, MoveInstance, MoveKind, MoveSet};
