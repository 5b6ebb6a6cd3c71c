use thiserror::Error;

/// Every failure the library reports. [`Error::name`] gives the stable
/// identifier printed by the command-line tool.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("schema error at {path}: {msg}")]
    SchemaError { path: String, msg: String },
    #[error("duplicate id {0}")]
    DuplicateId(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown triangle {0}")]
    UnknownTriangle(String),
    #[error("triangle {0} repeats a vertex")]
    DegenerateTriangle(String),
    #[error("not a valid constrained triangulation: {}", .0.join("; "))]
    InvalidTriangulation(Vec<String>),
    #[error("not a dissection: {0}")]
    NotADissection(String),
    #[error("not a generalized dissection: {0}")]
    NotAGeneralizedDissection(String),
    #[error("constraints {0} and {1} share two or more vertices")]
    Reducible(String, String),
    #[error("peeling stuck: every remaining interior vertex has valence at least 6")]
    PeelingStuck,
    #[error("not a drawing order: vertex {0} has negative freedom")]
    NotDrawingOrder(String),
    #[error("constraint lines through {0} are identically parallel")]
    IdenticallyParallel(String),
    #[error("denominator vanishes at vertex {0}")]
    DenominatorVanishes(String),
    #[error("no generic drawing found after {0} attempts")]
    DrawabilityUndecided(usize),
    #[error("area variety is not a hypersurface ({0} generators after substitution)")]
    NotHyper(usize),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("sigma^d + p has an odd coefficient")]
    NotMod2,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("triangulation has constraints; an honest one is required")]
    NotHonest,
    #[error("frame corners are collinear")]
    DegenerateFrame,
    #[error("unknown corpus entry {0}")]
    UnknownCorpusEntry(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::SchemaError { .. } => "SchemaError",
            Error::DuplicateId(_) => "DuplicateId",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::UnknownTriangle(_) => "UnknownTriangle",
            Error::DegenerateTriangle(_) => "DegenerateTriangle",
            Error::InvalidTriangulation(_) => "InvalidTriangulation",
            Error::NotADissection(_) => "NotADissection",
            Error::NotAGeneralizedDissection(_) => "NotAGeneralizedDissection",
            Error::Reducible(..) => "Reducible",
            Error::PeelingStuck => "PeelingStuck",
            Error::NotDrawingOrder(_) => "NotDrawingOrder",
            Error::IdenticallyParallel(_) => "IdenticallyParallel",
            Error::DenominatorVanishes(_) => "DenominatorVanishes",
            Error::DrawabilityUndecided(_) => "DrawabilityUndecided",
            Error::NotHyper(_) => "NotHyper",
            Error::VerificationFailed(_) => "VerificationFailed",
            Error::NotMod2 => "NotMod2",
            Error::NotHomogeneous => "NotHomogeneous",
            Error::NotHonest => "NotHonest",
            Error::DegenerateFrame => "DegenerateFrame",
            Error::UnknownCorpusEntry(_) => "UnknownCorpusEntry",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
