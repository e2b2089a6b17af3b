use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument outside its domain: {0}")]
    Domain(String),
    #[error("degenerate crossing: {0}")]
    DegenerateCrossing(String),
    #[error("curve is not regular: {0}")]
    NonRegular(String),
    #[error("crossing strands have equal height at crossing {index} (|z(s) - z(t)| = {gap:e})")]
    ZCollision { index: usize, gap: f64 },
    #[error("series is not monic (leading coefficient {0})")]
    NotMonic(f64),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("interpolation system is singular (condition number {condition:e})")]
    SingularSystem { condition: f64 },
    #[error("series is not liftable: V_{index} has coefficient {coeff:e} but ε({}) = 0", index + 1)]
    Unliftable { index: usize, coeff: f64 },
    #[error("R1 has {count} extra root(s) inside (-2, 2): {roots:?}")]
    ExtraCrossings { count: usize, roots: Vec<f64> },
    #[error("unknown builtin curve `{0}` (expected k3, k5, k7 or k9)")]
    UnknownName(String),
    #[error("crossing parameter {param} outside render range [{lo}, {hi}]")]
    BadRange { param: f64, lo: f64, hi: f64 },
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::DegenerateCrossing(_) => "DegenerateCrossing",
            Error::NonRegular(_) => "NonRegular",
            Error::ZCollision { .. } => "ZCollision",
            Error::NotMonic(_) => "NotMonic",
            Error::BadInput(_) => "BadInput",
            Error::SingularSystem { .. } => "SingularSystem",
            Error::Unliftable { .. } => "Unliftable",
            Error::ExtraCrossings { .. } => "ExtraCrossings",
            Error::UnknownName(_) => "UnknownName",
            Error::BadRange { .. } => "BadRange",
        }
    }

    /// Errors caused by the geometry of a valid input rather than by the
    /// input being malformed.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self,
            Error::DegenerateCrossing(_)
                | Error::NonRegular(_)
                | Error::ZCollision { .. }
                | Error::SingularSystem { .. }
                | Error::ExtraCrossings { .. }
        )
    }
}
