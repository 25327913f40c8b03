use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operation is only defined over prime fields")]
    UnsupportedForRationals,

    #[error("Lie point has a = 0 (plane or point at infinity)")]
    AtInfinity,
    #[error("line is parallel to the xy plane (p01 = 0)")]
    ParallelToXY,
    #[error("Pluecker point does not describe a Heisenberg line")]
    NotHeisenberg,
    #[error("point does not lie on the Heisenberg variety")]
    NotInHeisenberg,
    #[error("Pluecker point is not in the image of the Lie quadric map")]
    NotInImage,

    #[error("spheres are not in contact")]
    NotInContact,
    #[error("spheres are identical")]
    IdenticalSpheres,
    #[error("invalid pencil key: {0}")]
    InvalidPencilKey(String),
    #[error("two spheres of the triple are in contact")]
    PairInContact,
    #[error("the contact constraints of the triple have rank below 3")]
    DegenerateTriple,
    #[error("sphere is not a member of the conic")]
    NotOnConic,

    #[error("pencil direction must satisfy u^2 + v^2 + w^2 = s^2 with s != 0")]
    BadPencilDirection,
    #[error("radius must be nonzero")]
    ZeroRadius,
    #[error("sphere of zero radius in an incidence census")]
    ZeroRadiusSphere,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
