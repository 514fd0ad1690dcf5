use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown Cartan type: {0}")]
    UnknownType(String),
    #[error("inconsistent marking: {0}")]
    InconsistentMarking(String),
    #[error("weight is not in the root lattice: {0}")]
    NotInRootLattice(String),
    #[error("height {height} exceeds cutoff {cutoff}")]
    CutoffExceeded { height: i64, cutoff: i64 },
    #[error("point is not on the hyperplane H({root}, {level})")]
    NotOnHyperplane { root: String, level: i64 },
    #[error("null space has dimension {0}, expected 1")]
    NullSpaceDimensionUnexpected(usize),
    #[error("deformed Gram matrix is singular over the function field")]
    SingularOverFunctionField,
    #[error("t-degree cap {0} exceeded")]
    DegreeCapExceeded(usize),
    #[error("deformation direction lies on a wall through the base point: {0}")]
    DegenerateDirection(String),
    #[error("segment leaves the Weyl chamber: {0}")]
    ChamberCrossing(String),
    #[error("point lies on several reducibility hyperplanes: {0}")]
    MultipleHyperplanes(String),
    #[error("weight is not antidominant: {0}")]
    NotAntidominant(String),
    #[error("weight is not regular: {0}")]
    NotRegular(String),
    #[error("element is not in the integral Weyl group: {0}")]
    IntegralityMismatch(String),
    #[error("group of order {0} is too large for the Hecke oracle")]
    GroupTooLarge(usize),
    #[error("weight is not in the Wallach region: {0}")]
    NotInWallachRegion(String),
    #[error("could not perturb path off codimension-2 strata")]
    UnresolvablePerturbation,
    #[error("characters have different anchors")]
    AnchorMismatch,
    #[error("resource guard: {0}")]
    ResourceGuard(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
