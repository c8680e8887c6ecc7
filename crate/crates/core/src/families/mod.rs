//! Constructors, classifiers and searches for the surface families.
mod cubic;
mod delpezzo;
mod hypersurfaces;

pub use cubic::{
    cayley_salmon_c12, cayley_salmon_screened, classify_cubic, random_cubic_search,
    sample_cayley_salmon_input, ClassificationResult, CubicVerdict, SearchConfig, SearchHit,
};
pub use delpezzo::{
    default_orbit, del_pezzo4_fixture, del_pezzo6, frobenius_orbit, geometric_witness_dp6,
    sample_orbit, FrobeniusOrbit, WitnessCodeword,
};
pub use hypersurfaces::{random_form, shioda_surface, van_luijk_surface};
