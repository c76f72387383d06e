//! Catalog spaces, charts, points, morphisms and subvariety presentations.

mod map;
mod presentation;
pub mod solve;
mod space;

pub use map::HomogMap;
pub use presentation::{designated_variable, transition_point, PresentationKind, SmoothnessReport, SubvarietyPresentation};
pub use solve::{common_zero, solve_points, Decision};
pub use space::{hom_var, inverse_name, AmbientPoint, AmbientSpace, Chart, Factor};
