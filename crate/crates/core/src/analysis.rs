//! Size accounting and the linearization-attack dimension.
//!
//! Sizes follow a simple bit budget: 5 bits per variable occurrence (enough
//! to name one of 32 variables) plus 3 bits per monomial for its
//! coefficient. Occurrences of a 32nd variable are charged the same 5 bits.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::One;

use crate::automorphism::Automorphism;
use crate::poly::Polynomial;
use crate::scalar::Coefficient;
use crate::scheme::{PrivateKey, PublicKey, Signature};

pub const BITS_PER_VARIABLE: u64 = 5;
pub const BITS_PER_MONOMIAL: u64 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SizeReport {
    pub variable_occurrences: u64,
    pub monomial_count: u64,
    pub bits: u64,
    /// `bits / 8 / 1000`.
    pub kilobytes: f64,
}

impl SizeReport {
    fn from_counts(variable_occurrences: u64, monomial_count: u64) -> Self {
        let bits = variable_occurrences * BITS_PER_VARIABLE + monomial_count * BITS_PER_MONOMIAL;
        SizeReport { variable_occurrences, monomial_count, bits, kilobytes: bits as f64 / 8000.0 }
    }

    /// Aligned `key: value` lines.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "variable occurrences : {}", self.variable_occurrences);
        let _ = writeln!(out, "monomials            : {}", self.monomial_count);
        let _ = writeln!(out, "bits                 : {}", self.bits);
        let _ = writeln!(out, "kilobytes            : {:.3}", self.kilobytes);
        out
    }

    /// Space-separated `key=value` record.
    pub fn render_record(&self) -> String {
        format!(
            "variable_occurrences={} monomials={} bits={} kilobytes={:.3}",
            self.variable_occurrences, self.monomial_count, self.bits, self.kilobytes
        )
    }
}

pub fn measure<'a, C, I>(polys: I) -> SizeReport
where
    C: Coefficient,
    I: IntoIterator<Item = &'a Polynomial<C>>,
{
    let (vars, monos) = polys
        .into_iter()
        .fold((0, 0), |(v, m), p| (v + p.variable_occurrences(), m + p.len() as u64));
    SizeReport::from_counts(vars, monos)
}

pub fn measure_signature<C: Coefficient>(sig: &Signature<C>) -> SizeReport {
    measure([&sig.sig])
}

/// All six public polynomials.
pub fn measure_public_key<C: Coefficient>(pk: &PublicKey<C>) -> SizeReport {
    measure(pk.p.iter().chain(&pk.phi_p))
}

pub fn measure_automorphism<C: Coefficient>(phi: &Automorphism<C>) -> SizeReport {
    measure(phi.images())
}

pub fn measure_private_key<C: Coefficient>(sk: &PrivateKey<C>) -> SizeReport {
    measure_automorphism(&sk.phi)
}

/// Number of monomials of degree at most `max_degree` in `nvars`
/// commuting variables, `C(nvars + max_degree, max_degree)`.
pub fn attack_dimension(nvars: u64, max_degree: u64) -> BigUint {
    binomial(BigUint::from(nvars + max_degree), BigUint::from(max_degree))
}

/// Number of monomials of degree exactly `degree`,
/// `C(nvars + degree - 1, degree)`.
pub fn exact_degree_monomials(nvars: u64, degree: u64) -> BigUint {
    if nvars == 0 {
        return if degree == 0 { BigUint::one() } else { BigUint::default() };
    }
    binomial(BigUint::from(nvars + degree - 1), BigUint::from(degree))
}

/// Both candidate counts for the linear-algebra attack. The usual quoted
/// figure for 31 variables and degree 27 is `C(57, 30)`, which is the
/// exact-degree count; the degree-at-most count is `C(58, 27)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttackDimensionReport {
    pub nvars: u64,
    pub max_degree: u64,
    pub at_most: BigUint,
    pub exactly: BigUint,
}

impl AttackDimensionReport {
    pub fn new(nvars: u64, max_degree: u64) -> Self {
        AttackDimensionReport {
            nvars,
            max_degree,
            at_most: attack_dimension(nvars, max_degree),
            exactly: exact_degree_monomials(nvars, max_degree),
        }
    }

    /// `log2` of the degree-at-most count.
    pub fn log2_at_most(&self) -> f64 {
        big_log2(&self.at_most)
    }

    pub fn log2_exactly(&self) -> f64 {
        big_log2(&self.exactly)
    }

    pub fn render_text(&self) -> String {
        let (n, d) = (self.nvars, self.max_degree);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "degree <= {d} in {n} vars : C({}, {}) = {} (~2^{:.2})",
            n + d,
            d,
            self.at_most,
            self.log2_at_most()
        );
        let _ = writeln!(
            out,
            "degree == {d} in {n} vars : C({}, {}) = {} (~2^{:.2})",
            (n + d).saturating_sub(1),
            d,
            self.exactly,
            self.log2_exactly()
        );
        out
    }

    pub fn render_record(&self) -> String {
        format!(
            "nvars={} max_degree={} at_most={} exactly={}",
            self.nvars, self.max_degree, self.at_most, self.exactly
        )
    }
}

fn big_log2(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    // top 53 bits carry all the precision an f64 can hold
    let shift = bits.saturating_sub(53);
    let top = (v >> shift).to_u64_digits().first().copied().unwrap_or(0) as f64;
    top.log2() + shift as f64
}
