use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse group label `{0}`")]
    GroupLabel(String),

    #[error("family {family} needs n >= {min}, got {n}")]
    Order { family: String, n: u32, min: u32 },

    #[error("{0} is a continuous group and has no finite element list")]
    Continuous(String),

    #[error("cannot parse irrep label `{0}`")]
    IrrepLabel(String),

    #[error("irrep {irrep} does not restrict to {group}: {reason}")]
    IrrepMismatch {
        irrep: String,
        group: String,
        reason: String,
    },

    #[error("no closed form is tabulated for {group} in {irrep}")]
    NoClosedForm { group: String, irrep: String },

    #[error("{group} needs an explicit invariant basis rather than tesseral labels")]
    NonTesseral { group: String },

    #[error("character sum {value} for {group} in {irrep} is not an integer")]
    NonInteger {
        group: String,
        irrep: String,
        value: f64,
    },

    #[error("coefficient vector is zero")]
    ZeroVector,

    #[error("bad coefficient vector: {0}")]
    Coefficients(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}
