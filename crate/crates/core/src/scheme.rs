//! Key generation, signing and verification.
//!
//! The public key holds three sparse polynomials `P_i` and their images
//! `phi(P_i)`; the private key is `phi`. A signature of `m` is the image of
//! the message polynomial `Q` under `phi` extended to one more variable by
//! a fresh random indicator. The verifier draws a random challenge `u` in
//! four variables and compares the positive proportions of
//! `R = u(P_1, P_2, P_3, Q)` and `S = u(phi(P_1), phi(P_2), phi(P_3), sig)`,
//! which agree exactly whenever `S` is an automorphic image of `R`.

use std::fmt;
use std::fmt::Write as _;

use rand::Rng;

use crate::automorphism::Automorphism;
use crate::counting::{estimate_partitioned, exact_counts, CubeFunction};
use crate::error::{Error, Result};
use crate::hash::{encode_digest, hash_message};
use crate::params::{allowed_difference, SchemeParams, Trials};
use crate::poly::{Monomial, Polynomial};
use crate::sampling::{sample_automorphism, sample_g, sample_sparse};
use crate::scalar::Coefficient;
use crate::text::{parse_block, split_blocks, write_polynomial, Block};

/// Number of public polynomial pairs.
pub const PUBLIC_PAIRS: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct PublicKey<C> {
    pub params: SchemeParams,
    pub p: [Polynomial<C>; PUBLIC_PAIRS],
    pub phi_p: [Polynomial<C>; PUBLIC_PAIRS],
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrivateKey<C> {
    pub params: SchemeParams,
    pub phi: Automorphism<C>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature<C> {
    pub sig: Polynomial<C>,
}

/// Generates a key pair: the public polynomials first, then `phi`.
pub fn keygen<C, R>(params: &SchemeParams, rng: &mut R) -> Result<(PrivateKey<C>, PublicKey<C>)>
where
    C: Coefficient,
    R: Rng + ?Sized,
{
    params.validate()?;
    let p: [Polynomial<C>; PUBLIC_PAIRS] = [
        sample_sparse(params, params.n, rng)?,
        sample_sparse(params, params.n, rng)?,
        sample_sparse(params, params.n, rng)?,
    ];
    let phi = sample_automorphism(params, rng)?;
    let phi_p = [phi.apply(&p[0])?, phi.apply(&p[1])?, phi.apply(&p[2])?];
    Ok((
        PrivateKey { params: *params, phi },
        PublicKey { params: *params, p, phi_p },
    ))
}

/// The polynomial `Q` in `n + 1` variables derived from the message digest.
pub fn message_polynomial<C: Coefficient>(params: &SchemeParams, message: &[u8]) -> Result<Polynomial<C>> {
    encode_digest(&hash_message(message), params.signature_nvars())
}

/// Signs with a fresh random indicator `r` on `x_1..x_n`.
pub fn sign<C, R>(priv_key: &PrivateKey<C>, message: &[u8], rng: &mut R) -> Result<Signature<C>>
where
    C: Coefficient,
    R: Rng + ?Sized,
{
    let params = &priv_key.params;
    let r = sample_g(params.n, Monomial::ONE, params, rng)?;
    sign_with_indicator(priv_key, message, &r)
}

/// Signs with a caller-chosen indicator `r` on `x_1..x_n`.
pub fn sign_with_indicator<C: Coefficient>(
    priv_key: &PrivateKey<C>,
    message: &[u8],
    r: &Polynomial<C>,
) -> Result<Signature<C>> {
    let q = message_polynomial(&priv_key.params, message)?;
    let extended = priv_key.phi.extend_for_signing(r)?;
    Ok(Signature { sig: extended.apply(&q)? })
}

/// Random multilinear `u(x, y, z, t)` with coefficients in `{-2, ..., 2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Challenge<C> {
    pub u: Polynomial<C>,
}

impl<C: Coefficient> Challenge<C> {
    pub const NVARS: usize = 4;

    /// Draws the 16 coefficients independently and uniformly, in ascending
    /// monomial order, redrawing if all of them are zero.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let terms: Vec<_> = (0..16u64)
                .map(|bits| (Monomial::from_bits(bits), C::from_small(rng.gen_range(-2i64..=2))))
                .collect();
            let u = Polynomial::from_terms(Self::NVARS, terms).expect("four variables");
            if !u.is_zero() {
                return Challenge { u };
            }
        }
    }

    pub fn new(u: Polynomial<C>) -> Result<Self> {
        if u.nvars() != Self::NVARS {
            return Err(Error::Dimension { expected: Self::NVARS, found: u.nvars() });
        }
        let two = C::from_small(2);
        if u.terms().iter().any(|(_, c)| *c > two || *c < -two.clone()) {
            return Err(Error::InvalidParams("challenge coefficients must lie in -2..=2".into()));
        }
        Ok(Challenge { u })
    }

    /// `u(operands)` kept unexpanded and evaluated pointwise.
    pub fn bind<'a>(&'a self, operands: [&'a Polynomial<C>; 4]) -> Result<BoundChallenge<'a, C>> {
        let nvars = operands[0].nvars();
        if let Some(p) = operands.iter().find(|p| p.nvars() != nvars) {
            return Err(Error::Dimension { expected: nvars, found: p.nvars() });
        }
        Ok(BoundChallenge { u: &self.u, operands, nvars })
    }

    /// `u(operands)` expanded in the algebra. Only practical at small sizes.
    pub fn expand(&self, operands: &[Polynomial<C>; 4]) -> Result<Polynomial<C>> {
        self.u.substitute(operands)
    }
}

/// A challenge with its four operands; evaluating at a vertex evaluates
/// the operands there and feeds the values to `u`.
#[derive(Clone, Copy, Debug)]
pub struct BoundChallenge<'a, C> {
    u: &'a Polynomial<C>,
    operands: [&'a Polynomial<C>; 4],
    nvars: usize,
}

impl<C: Coefficient> CubeFunction<C> for BoundChallenge<'_, C> {
    fn nvars(&self) -> usize {
        self.nvars
    }

    fn value(&self, bits: u64) -> Result<C> {
        let point = [
            self.operands[0].evaluate_bits(bits)?,
            self.operands[1].evaluate_bits(bits)?,
            self.operands[2].evaluate_bits(bits)?,
            self.operands[3].evaluate_bits(bits)?,
        ];
        self.u.evaluate_at(&point)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Accept,
    Reject,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Accept => "accept",
            Decision::Reject => "reject",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport<C> {
    pub challenge: Challenge<C>,
    /// Tuples examined per polynomial.
    pub trials: u64,
    pub positives_r: u64,
    pub positives_s: u64,
    pub allowed_difference: u64,
    pub decision: Decision,
}

impl<C> VerifyReport<C> {
    pub fn p_r(&self) -> f64 {
        self.positives_r as f64 / self.trials as f64
    }

    pub fn p_s(&self) -> f64 {
        self.positives_s as f64 / self.trials as f64
    }

    pub fn difference(&self) -> u64 {
        self.positives_r.abs_diff(self.positives_s)
    }

    /// The decision the same counts would get under another threshold.
    pub fn decide_with_threshold(&self, threshold: f64) -> Decision {
        if self.difference() <= allowed_difference(threshold, self.trials) {
            Decision::Accept
        } else {
            Decision::Reject
        }
    }

    pub fn accepted(&self) -> bool {
        self.decision == Decision::Accept
    }
}

/// Verifies on one thread.
pub fn verify<C, R>(
    pub_key: &PublicKey<C>,
    message: &[u8],
    signature: &Signature<C>,
    rng: &mut R,
) -> Result<VerifyReport<C>>
where
    C: Coefficient,
    R: Rng + ?Sized,
{
    verify_with_threads(pub_key, message, signature, rng, 1)
}

/// Verifies, splitting each Monte Carlo count over `threads` workers.
///
/// `R` and `S` are sampled on independent tuples. The challenge and the
/// two sampling seeds are drawn from `rng` in that order.
pub fn verify_with_threads<C, R>(
    pub_key: &PublicKey<C>,
    message: &[u8],
    signature: &Signature<C>,
    rng: &mut R,
    threads: usize,
) -> Result<VerifyReport<C>>
where
    C: Coefficient,
    R: Rng + ?Sized,
{
    let params = &pub_key.params;
    let width = params.signature_nvars();
    if signature.sig.nvars() != width {
        return Err(Error::MalformedSignature(format!(
            "signature has {} variables, expected {width}",
            signature.sig.nvars()
        )));
    }
    pub_key.check_shape()?;

    let q = message_polynomial::<C>(params, message)?;
    let widen = |p: &Polynomial<C>| p.widen(width);
    let p = [widen(&pub_key.p[0])?, widen(&pub_key.p[1])?, widen(&pub_key.p[2])?];
    let phi_p = [widen(&pub_key.phi_p[0])?, widen(&pub_key.phi_p[1])?, widen(&pub_key.phi_p[2])?];

    let challenge = Challenge::sample(rng);
    let r = challenge.bind([&p[0], &p[1], &p[2], &q])?;
    let s = challenge.bind([&phi_p[0], &phi_p[1], &phi_p[2], &signature.sig])?;

    let (trials, positives_r, positives_s) = match params.trials {
        Trials::Sampled(n) => {
            let seed_r: u64 = rng.gen();
            let seed_s: u64 = rng.gen();
            let est_r = estimate_partitioned(&r, n, seed_r, threads)?;
            let est_s = estimate_partitioned(&s, n, seed_s, threads)?;
            (n, est_r.positives, est_s.positives)
        }
        Trials::Exhaustive => {
            let cr = exact_counts(&r)?;
            let cs = exact_counts(&s)?;
            (cr.total(), cr.positive, cs.positive)
        }
    };

    let mut report = VerifyReport {
        challenge,
        trials,
        positives_r,
        positives_s,
        allowed_difference: allowed_difference(params.threshold, trials),
        decision: Decision::Reject,
    };
    report.decision = report.decide_with_threshold(params.threshold);
    Ok(report)
}

impl<C: Coefficient> PublicKey<C> {
    fn check_shape(&self) -> Result<()> {
        let n = self.params.n;
        for p in self.p.iter().chain(&self.phi_p) {
            if p.nvars() != n {
                return Err(Error::Dimension { expected: n, found: p.nvars() });
            }
        }
        Ok(())
    }

    /// Params line followed by the blocks `P_1..P_3, phi(P_1)..phi(P_3)`.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.params);
        for p in self.p.iter().chain(&self.phi_p) {
            out.push('\n');
            write_polynomial(&mut out, p);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let blocks = split_blocks(text);
        let (params, rest) = parse_params_block(&blocks)?;
        if rest.len() != 2 * PUBLIC_PAIRS {
            return Err(Error::parse(
                rest.last().map_or(1, |b| b.first_line),
                format!("expected {} polynomial blocks, found {}", 2 * PUBLIC_PAIRS, rest.len()),
            ));
        }
        let mut polys = Vec::with_capacity(rest.len());
        for block in rest {
            let p: Polynomial<C> = parse_block(block)?;
            if p.nvars() != params.n {
                return Err(Error::parse(
                    block.first_line,
                    format!("polynomial has nvars={}, expected {}", p.nvars(), params.n),
                ));
            }
            polys.push(p);
        }
        let mut it = polys.into_iter();
        let mut take3 = || -> [Polynomial<C>; 3] {
            [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()]
        };
        let p = take3();
        let phi_p = take3();
        Ok(PublicKey { params, p, phi_p })
    }
}

impl<C: Coefficient> PrivateKey<C> {
    /// Params line followed by the automorphism serialization.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.params);
        out.push('\n');
        out.push_str(&self.phi.to_text());
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let blocks = split_blocks(text);
        let (params, rest) = parse_params_block(&blocks)?;
        let phi = Automorphism::from_blocks(rest)?;
        if phi.nvars() != params.n {
            return Err(Error::parse(
                rest[0].first_line,
                format!("automorphism has {} variables, expected {}", phi.nvars(), params.n),
            ));
        }
        Ok(PrivateKey { params, phi })
    }
}

impl<C: Coefficient> Signature<C> {
    pub fn to_text(&self) -> String {
        crate::text::polynomial_to_text(&self.sig)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        crate::text::polynomial_from_text(text).map(|sig| Signature { sig })
    }
}

fn parse_params_block<'a, 'b>(blocks: &'b [Block<'a>]) -> Result<(SchemeParams, &'b [Block<'a>])> {
    let (head, rest) = blocks
        .split_first()
        .ok_or_else(|| Error::parse(1, "empty key file"))?;
    if head.lines.len() != 1 {
        return Err(Error::parse(head.first_line + 1, "parameter line must stand alone"));
    }
    let params: SchemeParams = head.lines[0]
        .parse()
        .map_err(|e: Error| Error::parse(head.first_line, e.to_string()))?;
    Ok((params, rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::exact_positive_count;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    type C = i64;

    fn rng(seed: u64) -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(seed)
    }

    fn small_keys(seed: u64) -> (PrivateKey<C>, PublicKey<C>) {
        keygen(&SchemeParams::test_profile(8), &mut rng(seed)).unwrap()
    }

    #[test]
    fn keygen_shapes() {
        let (sk, pk) = keygen::<C, _>(&SchemeParams::default(), &mut rng(1)).unwrap();
        assert_eq!(sk.phi.nvars(), 31);
        for p in &pk.p {
            assert_eq!(p.len(), 3);
            assert!(p.degree() <= 3);
            assert!(p.terms().iter().all(|(_, c)| *c == 1 || *c == -1));
        }
        for (p, q) in pk.p.iter().zip(&pk.phi_p) {
            assert_eq!(&sk.phi.apply(p).unwrap(), q);
        }
    }

    #[test]
    fn keygen_is_reproducible() {
        assert_eq!(small_keys(3), small_keys(3));
        assert_ne!(small_keys(3).1, small_keys(4).1);
    }

    #[test]
    fn zero_indicator_signature_is_widened_image() {
        let (sk, _) = small_keys(5);
        let sig = sign_with_indicator(&sk, b"msg", &Polynomial::zero(8)).unwrap();
        let q = message_polynomial::<C>(&sk.params, b"msg").unwrap();
        let widened = Automorphism::from_images_unchecked(
            sk.phi.images().iter().map(|p| p.widen(9).unwrap()).chain([Polynomial::var(9, 9).unwrap()]).collect(),
        )
        .unwrap();
        assert_eq!(sig.sig, widened.apply(&q).unwrap());
    }

    #[test]
    fn exhaustive_honest_signatures_match_exactly() {
        for seed in 0..10 {
            let (sk, pk) = small_keys(seed);
            let sig = sign(&sk, b"hello", &mut rng(100 + seed)).unwrap();
            let q = message_polynomial::<C>(&sk.params, b"hello").unwrap();
            assert_eq!(exact_positive_count(&q).unwrap(), exact_positive_count(&sig.sig).unwrap());
            let report = verify(&pk, b"hello", &sig, &mut rng(200 + seed)).unwrap();
            assert_eq!(report.positives_r, report.positives_s);
            assert_eq!(report.trials, 512);
            assert!(report.accepted());
        }
    }

    #[test]
    fn verify_rejects_wrong_width() {
        let (_, pk) = small_keys(6);
        let bad = Signature { sig: Polynomial::<C>::zero(8) };
        assert!(matches!(
            verify(&pk, b"m", &bad, &mut rng(0)),
            Err(Error::MalformedSignature(_))
        ));
    }

    #[test]
    fn challenge_sampling() {
        let mut r = rng(7);
        for _ in 0..200 {
            let ch = Challenge::<C>::sample(&mut r);
            assert_eq!(ch.u.nvars(), 4);
            assert!(!ch.u.is_zero());
            assert!(ch.u.len() <= 16);
            assert!(ch.u.terms().iter().all(|(_, c)| (-2..=2).contains(c)));
        }
        assert!(Challenge::new(Polynomial::<C>::constant(4, 3)).is_err());
        assert!(Challenge::new(Polynomial::<C>::constant(3, 1)).is_err());
    }

    #[test]
    fn bound_challenge_matches_expansion() {
        let (_, pk) = small_keys(8);
        let q = message_polynomial::<C>(&pk.params, b"x").unwrap();
        let ops = [
            pk.p[0].widen(9).unwrap(),
            pk.p[1].widen(9).unwrap(),
            pk.p[2].widen(9).unwrap(),
            q,
        ];
        let ch = Challenge::<C>::sample(&mut rng(9));
        let bound = ch.bind([&ops[0], &ops[1], &ops[2], &ops[3]]).unwrap();
        let expanded = ch.expand(&ops).unwrap();
        for t in 0..512 {
            assert_eq!(bound.value(t).unwrap(), expanded.evaluate_bits(t).unwrap());
        }
    }

    #[test]
    fn threshold_monotone() {
        let (sk, pk) = keygen::<C, _>(&SchemeParams { n: 10, ..SchemeParams::default() }, &mut rng(10)).unwrap();
        let (other, _) = keygen::<C, _>(&SchemeParams { n: 10, ..SchemeParams::default() }, &mut rng(11)).unwrap();
        let forged = sign(&PrivateKey { params: sk.params, phi: other.phi }, b"m", &mut rng(12)).unwrap();
        let report = verify(&pk, b"m", &forged, &mut rng(13)).unwrap();
        let mut accepted = false;
        for k in 1..100 {
            let eps = k as f64 / 100.0;
            let now = report.decide_with_threshold(eps) == Decision::Accept;
            assert!(!accepted || now, "acceptance lost when raising threshold to {eps}");
            accepted = now;
        }
        assert!(accepted);
    }

    #[test]
    fn key_files_round_trip() {
        let (sk, pk) = small_keys(14);
        assert_eq!(PublicKey::<C>::from_text(&pk.to_text()).unwrap(), pk);
        assert_eq!(PrivateKey::<C>::from_text(&sk.to_text()).unwrap(), sk);
        let sig = sign(&sk, b"m", &mut rng(15)).unwrap();
        assert_eq!(Signature::<C>::from_text(&sig.to_text()).unwrap(), sig);
    }

    #[test]
    fn key_file_errors() {
        let (sk, pk) = small_keys(16);
        let text = pk.to_text();
        let truncated = &text[..text.len() / 2];
        assert!(PublicKey::<C>::from_text(truncated).is_err());
        let text = sk.to_text();
        let cut = text.rfind("\n\n").unwrap();
        assert!(PrivateKey::<C>::from_text(&text[..cut]).is_err());
        assert!(PublicKey::<C>::from_text("").is_err());
        assert!(PublicKey::<C>::from_text("n=8 bogus=1\n").is_err());
    }
}
