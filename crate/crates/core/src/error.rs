use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error(
        "matrix is not Hermitian: entries ({row}, {col}) and ({col}, {row}) differ by {residual:e}"
    )]
    NotHermitian {
        row: usize,
        col: usize,
        residual: f64,
    },

    #[error("not a density matrix: {0}")]
    InvalidDensity(String),

    #[error("not a probability vector: {0}")]
    InvalidSimplex(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("outside the quatrit moduli space: discriminant {disc} < 0")]
    OutsideQuatritModuli { disc: f64 },

    #[error("outside the qubit-pair moduli space: {0}")]
    OutsidePairModuli(String),

    #[error("phase point does not match kernel: {0}")]
    KindMismatch(String),

    #[error("unknown figure `{0}`")]
    UnknownFigure(String),
}
