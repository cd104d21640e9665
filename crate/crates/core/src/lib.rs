//! Finite-scale constructions on triangulated lamination windows:
//! subdivision and retraction, finite relations and their skeleta,
//! envelopes and disk filtrations, piles, developments onto the flat
//! torus, and a discrete Dirichlet solver.

pub mod complex;
pub mod cover;
pub mod covering;
pub mod envelope;
pub mod filtration;
pub mod generators;
pub mod geometry;
pub mod instance;
pub mod linalg;
pub mod pile;
pub mod relations;
pub mod subdivide;
pub mod svg;
pub mod uniformize;

pub use complex::{
    boundary, build_complex, classify_leaf, components, disk_certificate, euler_characteristic, BoundaryCycle,
    ComplexError, DiskCertificate, LeafKind, Region, TriId, Triangle, TriangulatedComplex, Vertex, VertexId,
};
pub use geometry::Point;
pub use relations::{check_filtration, induced_relation, Filtration, FiltrationReport, FinitePartition, RelationError};
