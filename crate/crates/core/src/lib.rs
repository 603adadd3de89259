//! Rank invariants of multi-parameter sublevel filtrations on simplicial
//! complexes, and the approximate matching distance between them.
//!
//! The crate is organized as:
//!
//! * [`mesh`]: complexes with vector-valued vertex functions, VOFF I/O,
//!   barycentric subdivision.
//! * [`interp`]: the linear and axis-wise interpolants, behind a
//!   name-addressable [`Interpolant`](interp::Interpolant) registry.
//! * [`filtration`]: sublevel complexes, scalar reductions along admissible
//!   lines, the critical cone set and its finite representative set Λ.
//! * [`persistence`]: boundary-matrix reduction over Z_p, persistence
//!   diagrams, one-parameter and multi-parameter rank queries.
//! * [`matchdist`]: bottleneck distance between diagrams and the grid sweep
//!   over admissible lines with a certified tolerance.
//! * [`experiments`]: random Fourier datasets on the circle and torus,
//!   interpolation error statistics, the subdivision aliasing protocol.

pub mod corpus;
pub mod experiments;
pub mod filtration;
pub mod interp;
pub mod matchdist;
pub mod mesh;
pub mod persistence;

pub use filtration::{lambda_set, sublevel};
pub use interp::{Interpolant, InterpolantRegistry};
pub use matchdist::{approx_matching_distance, AdmissiblePair, DistanceOptions, DistanceResult};
pub use mesh::{load_voff, save_voff, MeshWithFunction};
pub use persistence::{compute_diagrams, FieldPrime, PersistenceDiagram};
