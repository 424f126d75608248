//! Construction of Killing spinors by parallel transport, holonomy tests, and
//! the Gauduchon–Tod parameter search.

pub mod basis;
pub mod group;
pub mod search;
pub mod transport;

pub use basis::{killing_basis, killing_basis_with_tol, killing_residual, KillingBasis, FLATNESS_TOL};
pub use group::{GroupArc, GroupModel, GroupPoint};
pub use search::{find_gt_parameters, GtParameters, SearchOptions, SearchOutcome};
pub use transport::{arc_matrix, integrate_arc, loop_holonomy, path_matrix, transport_arc, Holonomy};
