use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("all coordinates vanish")]
    ZeroVector,
    #[error("chart anchors coincide")]
    AnchorsCoincide,
    #[error("chart anchors are not collinear (residual {0:.3e})")]
    AnchorsNotCollinear(f64),
    #[error("point is on the quadric Phi2 = 0")]
    OnQuadric,
    #[error("point is on the cubic Phi3 = 0")]
    OnCubic,
    #[error("point is not on the quadric")]
    NotOnQuadric,
    #[error("ruling matrix vanishes")]
    RankZero,
    #[error("map is indeterminate at this point")]
    Indeterminate,
    #[error("basic equivariant vanishes identically here")]
    Degenerate,
    #[error("tau matrix is singular at v")]
    SingularTau,
    #[error("K parameters are degenerate (t_K ~ 0 or K2 ~ 0)")]
    DegenerateK,
    #[error("point is on the parametrized quadric Phi2K = 0")]
    OnQuadricK,
    #[error("reduction fails: b2 or b3 vanishes")]
    DegenerateReduction,
    #[error("Mobius regularization failed after {0} attempts")]
    RegularizationFailed(usize),
    #[error("iteration did not converge after {restarts} restarts")]
    NoConvergence { restarts: usize },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("unknown descriptor `{0}`")]
    UnknownDescriptor(String),
    #[error("bad indices for `{0}`")]
    BadIndices(String),
    #[error("plane is not invariant under the map (residual {0:.3e})")]
    PlaneNotInvariant(f64),
    #[error("curve is not invariant under the map (residual {0:.3e})")]
    CurveNotInvariant(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
