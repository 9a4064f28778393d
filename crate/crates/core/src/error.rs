use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// s² = 1: the quarter period diverges and the caller must use the
    /// hyperbolic limit forms instead.
    #[error("degenerate elliptic modulus (s² = 1): {0}")]
    DegenerateModulus(String),

    /// The requested point is a zero of a denominator of the classical path.
    #[error("singular point at lattice argument {lattice_arg} (quarter period {quarter_period})")]
    SingularPoint {
        lattice_arg: f64,
        quarter_period: f64,
    },

    #[error("no instanton of size L = {size}: {reason}")]
    NoInstanton { size: f64, reason: String },

    #[error("quadrature did not converge: achieved {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("root finder failed: {0}")]
    RootFinding(String),

    #[error("ODE integration failed: {0}")]
    Ode(String),

    #[error("eigenvalue solver failed: {0}")]
    Eigen(String),

    #[error(
        "determinant routes disagree: spectral {spectral:e}, Gelfand-Yaglom {gelfand_yaglom:e} \
         (relative gap {gap:.3e} > {tolerance:e})"
    )]
    MethodsDisagree {
        spectral: f64,
        gelfand_yaglom: f64,
        gap: f64,
        tolerance: f64,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
