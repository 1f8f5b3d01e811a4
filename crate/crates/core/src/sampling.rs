//! Random generation of public polynomials, indicator polynomials and
//! private automorphisms.
//!
//! Every sampler takes the random source as an argument. Pass a seeded
//! [`ChaCha20Rng`](rand_chacha::ChaCha20Rng) for reproducible output; all
//! index draws go through `u32` so seeded results do not depend on the
//! platform word size.

use rand::Rng;

use crate::automorphism::Automorphism;
use crate::error::{Error, Result};
use crate::params::SchemeParams;
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Coefficient;

const MAX_RESAMPLES: usize = 1000;

fn pick_index<R: Rng + ?Sized>(rng: &mut R, len: usize) -> usize {
    debug_assert!(len > 0 && len <= u32::MAX as usize);
    rng.gen_range(0..len as u32) as usize
}

/// Chooses `count` distinct elements of `pool` (partial Fisher-Yates).
fn choose_distinct<R: Rng + ?Sized>(rng: &mut R, pool: &[usize], count: usize) -> Vec<usize> {
    let mut pool = pool.to_vec();
    for i in 0..count {
        let j = i + pick_index(rng, pool.len() - i);
        pool.swap(i, j);
    }
    pool.truncate(count);
    pool
}

fn coin<R: Rng + ?Sized>(rng: &mut R) -> bool {
    rng.gen::<bool>()
}

fn random_monomial<R: Rng + ?Sized>(rng: &mut R, pool: &[usize], max_degree: usize) -> Monomial {
    let degree = 1 + pick_index(rng, max_degree.min(pool.len()));
    Monomial::from_vars(choose_distinct(rng, pool, degree))
}

/// A polynomial with exactly `params.t` distinct monomials, each of degree
/// uniform in `1..=params.b` over distinct variables, with coefficients
/// `+1` or `-1`.
pub fn sample_sparse<C, R>(params: &SchemeParams, nvars: usize, rng: &mut R) -> Result<Polynomial<C>>
where
    C: Coefficient,
    R: Rng + ?Sized,
{
    if params.b == 0 || nvars < params.b {
        return Err(Error::InvalidParams(format!(
            "b = {} needs 1 <= b <= nvars = {nvars}",
            params.b
        )));
    }
    let pool: Vec<usize> = (1..=nvars).collect();
    let mut monomials: Vec<Monomial> = Vec::with_capacity(params.t);
    let mut attempts = 0;
    while monomials.len() < params.t {
        let m = random_monomial(rng, &pool, params.b);
        if monomials.contains(&m) {
            attempts += 1;
            if attempts > MAX_RESAMPLES * params.t {
                return Err(Error::Sampling(format!(
                    "could not find {} distinct monomials",
                    params.t
                )));
            }
            continue;
        }
        monomials.push(m);
    }
    let terms = monomials.into_iter().map(|m| {
        let c = if coin(rng) { C::one() } else { -C::one() };
        (m, c)
    });
    Polynomial::from_terms(nvars, terms)
}

/// Samples an indicator polynomial (0/1-valued on the cube) that involves
/// none of the variables in `excluded`.
///
/// Starting from a random monomial `M` of degree at most `params.d`, each
/// of the `params.r` rounds replaces the accumulated product `P` by `1 - P`
/// with probability 1/2 and then multiplies by `x_i` or `1 - x_i` for a
/// fresh allowed variable `x_i`. Rounds stop early when no fresh variable
/// is left.
pub fn sample_g<C, R>(
    nvars: usize,
    excluded: Monomial,
    params: &SchemeParams,
    rng: &mut R,
) -> Result<Polynomial<C>>
where
    C: Coefficient,
    R: Rng + ?Sized,
{
    let allowed: Vec<usize> = (1..=nvars).filter(|&v| !excluded.contains(v)).collect();
    if allowed.is_empty() {
        return Err(Error::Sampling("every variable is excluded".into()));
    }
    for _ in 0..MAX_RESAMPLES {
        let seed = random_monomial(rng, &allowed, params.d);
        let mut used = seed;
        let mut acc = Polynomial::monomial(nvars, seed, C::one())?;
        for _ in 0..params.r {
            if coin(rng) {
                acc = acc.complement()?;
            }
            let fresh: Vec<usize> = allowed.iter().copied().filter(|&v| !used.contains(v)).collect();
            if fresh.is_empty() {
                break;
            }
            let v = fresh[pick_index(rng, fresh.len())];
            used = used.mul(Monomial::var(v));
            let x = Polynomial::var(nvars, v)?;
            let factor = if coin(rng) { x } else { x.complement()? };
            acc = acc.mul(&factor)?;
        }
        if !acc.is_zero() {
            return Ok(acc);
        }
    }
    Err(Error::Sampling("indicator sampler kept producing zero".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `x_k`'s generator avoids every `x_j` with `j <= k`.
    Up,
    /// `x_k`'s generator avoids every `x_j` with `j >= k`.
    Down,
}

/// A triangular automorphism: each `x_k` (ascending for `Up`, descending
/// for `Down`) is fixed with probability 1/2 and otherwise sent to
/// `x_k + h - 2 x_k h` for a fresh indicator `h` on the allowed side.
/// When no variable is allowed, `x_k` stays fixed.
pub fn triangular<C, R>(
    direction: Direction,
    nvars: usize,
    params: &SchemeParams,
    rng: &mut R,
) -> Result<Automorphism<C>>
where
    C: Coefficient,
    R: Rng + ?Sized,
{
    let mut images = Automorphism::<C>::identity(nvars).images().to_vec();
    let order: Box<dyn Iterator<Item = usize>> = match direction {
        Direction::Up => Box::new(1..=nvars),
        Direction::Down => Box::new((1..=nvars).rev()),
    };
    for k in order {
        if coin(rng) {
            continue;
        }
        let excluded = match direction {
            Direction::Up => Monomial::from_vars(1..=k),
            Direction::Down => Monomial::from_vars(k..=nvars),
        };
        if excluded.degree() as usize == nvars {
            continue;
        }
        let h = sample_g(nvars, excluded, params, rng)?;
        let xk = &images[k - 1];
        let twice = xk.mul(&h)?.scale(&C::from_small(2))?;
        images[k - 1] = xk.add(&h)?.sub(&twice)?;
    }
    Automorphism::from_images_unchecked(images)
}

/// A uniformly random permutation of `1..=nvars`, 1-based.
pub fn random_permutation<R: Rng + ?Sized>(nvars: usize, rng: &mut R) -> Vec<usize> {
    let mut perm: Vec<usize> = (1..=nvars).collect();
    for i in (1..nvars).rev() {
        let j = pick_index(rng, i + 1);
        perm.swap(i, j);
    }
    perm
}

/// The private automorphism `pi . beta . alpha`: an upper triangular map
/// applied first, then a lower triangular map, then a variable permutation.
pub fn sample_automorphism<C, R>(params: &SchemeParams, rng: &mut R) -> Result<Automorphism<C>>
where
    C: Coefficient,
    R: Rng + ?Sized,
{
    let n = params.n;
    let alpha = triangular(Direction::Up, n, params, rng)?;
    let beta = triangular(Direction::Down, n, params, rng)?;
    let pi = Automorphism::permutation(&random_permutation(n, rng))?;
    Automorphism::compose(&pi, &Automorphism::compose(&beta, &alpha)?)
}
