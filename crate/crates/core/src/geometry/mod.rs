//! Point configurations, cones, and regular subdivisions.

mod cone;
mod config;
mod region;
mod subdivision;
mod volume;
mod weight;

pub use cone::{cone_faces, cone_facets, polytope_facets, vertex_flags, ConeFacet};
pub use config::{Configuration, LatticeTransform};
pub use region::u_region_contains;
pub use subdivision::{
    gamma_a, sign_criterion, refine_to_triangulation, refines, regular_subdivision, t_infinity, t_zero,
    t_zero_direct, Cell, Subdivision,
};
pub use volume::normalized_volume;
pub use weight::{lex_cmp, LexWeight};
