use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported type {0}; supported: A1, A2, A3, B2, B3, C3, G2")]
    UnsupportedType(String),

    #[error("elements belong to different root data")]
    DatumMismatch,

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("alcove coordinates are incompatible: {0}")]
    IncompatibleCoords(String),

    #[error("point is not special: pairing with coroot #{0} is not integral")]
    NotSpecial(usize),

    #[error("Kazhdan-Lusztig degree bound violated at pair ({0}, {1})")]
    DegreeBound(String, String),

    #[error("negative coefficient in P[{0}, {1}]: {2}")]
    NegativeCoefficient(String, String, String),

    #[error("canonical left cell of cell {0} is ambiguous: found {1} all-dominant left cells")]
    AmbiguousCanonical(usize, usize),

    #[error("missing orbit table for type {0}")]
    MissingTable(String),

    #[error("orbit/Levi pairing mismatch: record has {0:?}, model has {1:?}")]
    LeviMismatch(Option<Vec<usize>>, Vec<usize>),

    #[error("{0}")]
    Invalid(String),
}
