use num_bigint::BigInt;
use thiserror::Error;

use crate::lattice::Weight;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: &'static str },

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("invalid fundamental module index {0}, expected 1 or 2")]
    InvalidModuleIndex(u32),

    #[error("negative multiplicity {mult} extracted at {weight}")]
    NegativeMultiplicity { weight: Weight, mult: BigInt },

    #[error("series is not Weyl invariant at {0}")]
    NotWeylInvariant(Weight),

    #[error("reconstruction from extracted multiplicities differs at {0}")]
    Reconstruction(Weight),

    #[error("degenerate fan step at {0}: zero leading coefficient")]
    DegenerateFan(Weight),

    #[error("{family} is not an integer at p={p}: {value}")]
    NonIntegral {
        family: String,
        p: u32,
        value: String,
    },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("polynomiality violated: {0}")]
    Polynomiality(String),

    #[error("malformed data: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
