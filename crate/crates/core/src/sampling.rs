//! Deterministic sampling used by every randomized check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactnum::SparseVec;
use crate::scalar::Scalar;

pub const DEFAULT_SEED: u64 = 20071011;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small random rational p/q with |p| <= 5 and 1 <= q <= 3.
pub fn random_scalar<T: Scalar, R: Rng>(rng: &mut R) -> T {
    T::from_frac(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

pub fn random_vector<T: Scalar, R: Rng>(rng: &mut R, dim: usize) -> SparseVec<T> {
    SparseVec::from_pairs((0..dim).map(|i| (i, random_scalar::<T, R>(rng))))
}

/// How an identity check enumerates its inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Full,
    Sampled(usize),
}

impl std::str::FromStr for CheckMode {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s.trim() {
            "full" => Ok(CheckMode::Full),
            other => other
                .strip_prefix("sampled=")
                .and_then(|n| n.parse().ok())
                .map(CheckMode::Sampled)
                .ok_or_else(|| crate::Error::Parse(format!("bad mode '{other}' (expected full or sampled=<count>)"))),
        }
    }
}

impl std::fmt::Display for CheckMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckMode::Full => f.write_str("full"),
            CheckMode::Sampled(n) => write!(f, "sampled={n}"),
        }
    }
}
