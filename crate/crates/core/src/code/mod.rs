//! Evaluation codes, minimum distance and weight distributions.

mod bz;
mod equivalence;
pub(crate) mod small;
mod sweep;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::geometry::{evaluation_matrix, ProjPoint, DEFAULT_POINT_BUDGET};
use crate::linalg::Matrix;
use crate::poly::monomials_of_degree;
use crate::surface::Surface;

pub use equivalence::{
    apply_projective_transform, equivalence_evidence, EquivalenceEvidence, MonomialWitness,
};
pub use small::SMALL_FIELD_LIMIT;
pub use sweep::{weight_enumerator, WeightEnumerator};

/// A linear code given by a reduced generator matrix.
#[derive(Clone, Debug)]
pub struct LinearCode {
    generator: Matrix,
    provenance: Vec<ProjPoint>,
    degree: Option<u32>,
    surface_ref: Option<String>,
}

impl LinearCode {
    /// The row space of `m`, reduced. Zero rows are dropped.
    pub fn from_generator(m: &Matrix) -> Result<Self> {
        let (generator, _) = m.row_basis();
        if generator.rows() == 0 {
            return Err(Error::DegenerateInput("zero code".into()));
        }
        Ok(LinearCode {
            generator,
            provenance: Vec::new(),
            degree: None,
            surface_ref: None,
        })
    }

    /// Evaluations of all degree-`s` monomials at `points`, reduced.
    pub fn from_points(field: &FiniteField, points: Vec<ProjPoint>, s: u32) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let monos = monomials_of_degree(points[0].dim() + 1, s);
        let mut code = Self::from_generator(&evaluation_matrix(field, &monos, &points))?;
        code.provenance = points;
        code.degree = Some(s);
        Ok(code)
    }

    pub fn with_surface_ref(mut self, r: impl Into<String>) -> Self {
        self.surface_ref = Some(r.into());
        self
    }

    pub fn field(&self) -> &FiniteField {
        self.generator.field()
    }

    pub fn len(&self) -> usize {
        self.generator.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    /// Column labels; empty for codes built from a bare matrix.
    pub fn provenance(&self) -> &[ProjPoint] {
        &self.provenance
    }

    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn surface_ref(&self) -> Option<&str> {
        self.surface_ref.as_deref()
    }

    pub fn encode(&self, message: &[Elem]) -> Vec<Elem> {
        self.generator.left_mul_vec(message)
    }

    pub fn contains(&self, word: &[Elem]) -> bool {
        word.len() == self.len() && self.generator.row_space_contains(word)
    }
}

/// The code of degree-`s` forms on the rational points of `surface`.
pub fn build_code(surface: &Surface, s: u32) -> Result<LinearCode> {
    let points = surface.rational_points(DEFAULT_POINT_BUDGET)?;
    LinearCode::from_points(surface.field(), points, s)
}

pub fn weight(word: &[Elem]) -> usize {
    word.iter().filter(|c| !c.is_zero()).count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Exhaustive,
    InformationSet,
    Auto,
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "isd" | "information-set" => Ok(Strategy::InformationSet),
            "auto" => Ok(Strategy::Auto),
            _ => Err(Error::InvalidArgument(format!("unknown strategy {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exhaustive,
    InformationSet,
    GeometricWitness,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::InformationSet => "information-set",
            Method::GeometricWitness => "geometric-witness",
        })
    }
}

/// Auto strategy threshold on `q^k`.
pub const AUTO_EXHAUSTIVE_LIMIT: u128 = 100_000_000;

#[derive(Clone, Debug)]
pub struct DistanceOptions {
    pub strategy: Strategy,
    /// Maximum number of codewords enumerated.
    pub budget: u128,
    pub seed: u64,
    /// Random information sets tried before the deterministic search.
    pub random_sets: u64,
    /// Message weight enumerated per random information set.
    pub random_weight: usize,
    /// A known codeword seeding the upper bound.
    pub hint: Option<Vec<Elem>>,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            strategy: Strategy::Auto,
            budget: 1_000_000_000,
            seed: 0,
            random_sets: 0,
            random_weight: 2,
            hint: None,
        }
    }
}

/// Certified bounds `lower <= d <= upper`, with a codeword of weight `upper`.
#[derive(Clone, Debug, Serialize)]
pub struct DistanceResult {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub witness: Vec<Elem>,
    pub method: Method,
    /// Codewords enumerated.
    pub work: u128,
}

impl DistanceResult {
    pub fn contains(&self, d: usize) -> bool {
        self.lower <= d && d <= self.upper
    }
}

pub fn min_distance(code: &LinearCode, opts: &DistanceOptions) -> Result<DistanceResult> {
    let q = code.field().order() as u128;
    let affordable = sweep::projective_messages(q as u64, code.dimension()) <= opts.budget;
    // An unaffordable sweep degrades to the interval-reporting search.
    let exhaustive = affordable
        && match opts.strategy {
            Strategy::Exhaustive => true,
            Strategy::InformationSet => false,
            Strategy::Auto => q
                .checked_pow(code.dimension() as u32)
                .is_some_and(|v| v <= AUTO_EXHAUSTIVE_LIMIT),
        };
    if let Some(h) = &opts.hint {
        if weight(h) == 0 || !code.contains(h) {
            return Err(Error::InvalidArgument(
                "hint is not a nonzero codeword".into(),
            ));
        }
    }
    let res = if exhaustive {
        let sw = sweep::sweep(code, opts.budget)?;
        DistanceResult {
            lower: sw.min_weight,
            upper: sw.min_weight,
            exact: true,
            witness: sw.witness,
            method: Method::Exhaustive,
            work: sw.work,
        }
    } else {
        bz::search(code, opts)?
    };
    debug_assert_eq!(weight(&res.witness), res.upper);
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{default_orbit, del_pezzo4_fixture, del_pezzo6};

    #[test]
    fn plane_code_dimensions() {
        let f = FiniteField::new(7, 1).unwrap();
        let c = build_code(&Surface::plane(&f), 1).unwrap();
        assert_eq!((c.len(), c.dimension()), (57, 3));
        let d = min_distance(&c, &DistanceOptions::default()).unwrap();
        assert_eq!((d.lower, d.upper), (49, 49));
    }

    #[test]
    fn identity_code_has_distance_one() {
        let f = FiniteField::new(7, 1).unwrap();
        let c = LinearCode::from_generator(&Matrix::identity(&f, 3)).unwrap();
        for strategy in [Strategy::Exhaustive, Strategy::InformationSet] {
            let d = min_distance(
                &c,
                &DistanceOptions {
                    strategy,
                    ..Default::default()
                },
            )
            .unwrap();
            assert!(d.exact);
            assert_eq!(d.upper, 1);
        }
    }

    #[test]
    fn dp4_fixture_distance() {
        let c = build_code(&del_pezzo4_fixture().unwrap(), 1).unwrap();
        assert_eq!((c.len(), c.dimension()), (57, 5));
        let d = min_distance(&c, &DistanceOptions::default()).unwrap();
        assert_eq!(d.upper, 44);
        assert!(c.contains(&d.witness));
    }

    #[test]
    fn dp6_q7_s2_dimension() {
        let f = FiniteField::new(7, 1).unwrap();
        let s = del_pezzo6(&default_orbit(&f).unwrap()).unwrap();
        let c = build_code(&s, 2).unwrap();
        assert_eq!((c.len(), c.dimension()), (57, 19));
    }

    #[test]
    fn strategies_agree_on_dp6_s1() {
        let f = FiniteField::new(7, 1).unwrap();
        let c = build_code(&del_pezzo6(&default_orbit(&f).unwrap()).unwrap(), 1).unwrap();
        let ex = min_distance(
            &c,
            &DistanceOptions {
                strategy: Strategy::Exhaustive,
                ..Default::default()
            },
        )
        .unwrap();
        let isd = min_distance(
            &c,
            &DistanceOptions {
                strategy: Strategy::InformationSet,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(ex.upper, 41);
        assert!(isd.exact);
        assert_eq!(isd.upper, 41);
    }
}
