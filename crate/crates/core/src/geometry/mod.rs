//! Projective points, zero loci, sections, lines and components.

mod components;
pub(crate) mod count;
mod ideal;
mod lines;
mod points;
mod sections;
mod singular;

pub use components::component_search;
pub use count::{count_points, points_over_extension, rational_points};
pub use ideal::{
    eval_monomials, evaluation_matrix, fq_general_check, ideal_degree_part, GeneralityVerdict,
};
pub use lines::{lines_on_surface, Line};
pub use points::{enumerate_points, projective_space_size, ProjPoint, DEFAULT_POINT_BUDGET};
pub use sections::{hyperplane_section, section_scan, SectionScan};
pub use singular::{singular_points, SingularLevel, SingularityReport};
