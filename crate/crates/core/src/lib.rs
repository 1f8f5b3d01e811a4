//! Digital signatures from automorphisms of the Boolean-reduced polynomial
//! algebra `Z[x_1, ..., x_n] / (x_i^2 - x_i)`.
//!
//! The private key is an automorphism `phi` that permutes the Boolean cube;
//! the public key is three sparse polynomials together with their images
//! under `phi`. Because `phi` permutes the cube, a polynomial and its image
//! are positive on the same number of Boolean tuples. Verification
//! estimates those counts by Monte Carlo sampling.
//!
//! Arithmetic is generic over the coefficient type (see [`Coefficient`]).
//! The aliases below fix the common choices: `i64` with overflow
//! detection, `i128`, and unbounded [`BigInt`](num_bigint::BigInt).
//!
//! ```
//! use boolsig::{keygen, sign, verify, SchemeParams};
//! use rand::SeedableRng;
//! use rand_chacha::ChaCha20Rng;
//!
//! let params: SchemeParams = "n=10".parse().unwrap();
//! let mut rng = ChaCha20Rng::seed_from_u64(7);
//! let (sk, pk) = keygen::<i64, _>(&params, &mut rng).unwrap();
//! let sig = sign(&sk, b"message", &mut rng).unwrap();
//! let report = verify(&pk, b"message", &sig, &mut rng).unwrap();
//! assert!(report.accepted());
//! ```

pub mod analysis;
pub mod automorphism;
pub mod counting;
mod error;
pub mod hash;
pub mod params;
pub mod poly;
pub mod sampling;
pub mod scalar;
pub mod scheme;
pub mod text;

pub use automorphism::{is_indicator, Automorphism};
pub use counting::{
    estimate_partitioned, estimate_positive_proportion, exact_counts, exact_positive_count,
    required_trials, CubeFunction, Estimate, McConfig, SignCounts,
};
pub use error::{Error, Result};
pub use hash::{digest_to_poly, encode_digest, hash_message, Digest256};
pub use params::{SchemeParams, Trials};
pub use poly::{BooleanTuple, Monomial, Polynomial};
pub use sampling::{sample_automorphism, sample_g, sample_sparse, triangular, Direction};
pub use scalar::Coefficient;
pub use scheme::{
    keygen, message_polynomial, sign, sign_with_indicator, verify, verify_with_threads,
    Challenge, Decision, PrivateKey, PublicKey, Signature, VerifyReport,
};

/// Polynomial with `i64` coefficients; overflow is reported, not wrapped.
pub type Poly = Polynomial<i64>;
/// Polynomial with `i128` coefficients.
pub type WidePoly = Polynomial<i128>;
/// Polynomial with unbounded coefficients.
pub type BigPoly = Polynomial<num_bigint::BigInt>;

pub type Automorphism64 = Automorphism<i64>;
pub type BigAutomorphism = Automorphism<num_bigint::BigInt>;

pub type PublicKey64 = PublicKey<i64>;
pub type PrivateKey64 = PrivateKey<i64>;
pub type Signature64 = Signature<i64>;
