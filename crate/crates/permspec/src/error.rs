use thiserror::Error;

/// Errors produced by parsers, constructors and verifiers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("spectrum is empty")]
    EmptySpectrum,

    #[error("non-finite entry at index {0}")]
    NonFinite(usize),

    #[error("spectrum has no real entry to serve as the Perron value")]
    NoRealPerron,

    #[error("spectrum is not closed under complex conjugation: {0}")]
    NotConjugateClosed(String),

    #[error("conjugate-pair ordering not achievable: {0}")]
    PairingNotAchievable(String),

    #[error("construction inapplicable: {0}")]
    Inapplicable(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("vector is not an eigenvector: relative residual {residual:.3e} exceeds {tol:.3e}")]
    NotAnEigenvector { residual: f64, tol: f64 },

    #[error("eigenvector matrix is rank deficient (Gram determinant {0:.3e})")]
    RankDeficient(f64),

    #[error("matrix is not orthonormal: max deviation {0:.3e}")]
    NotOrthonormal(f64),

    #[error("matrix is not symmetric: max asymmetry {0:.3e}")]
    NotSymmetric(f64),

    #[error("imaginary residue {0:.3e} exceeds tolerance; input spectrum is not conjugate closed")]
    ImaginaryResidue(f64),

    #[error("circulant coefficient c[{index}] = {value:.6e} is genuinely negative")]
    NegativeCoefficient { index: usize, value: f64 },

    #[error("verification failed: {0}")]
    CertificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
