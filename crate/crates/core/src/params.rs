//! Scheme parameters and their one-line text form.

use std::fmt;
use std::str::FromStr;

use crate::counting::EXACT_COUNT_MAX_VARS;
use crate::error::{Error, Result};
use crate::poly::MAX_VARS;

/// How positive proportions are measured during verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trials {
    /// Monte Carlo with this many uniform tuples per polynomial.
    Sampled(u64),
    /// Enumerate every tuple. Only for small variable counts.
    Exhaustive,
}

impl fmt::Display for Trials {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trials::Sampled(n) => write!(f, "{n}"),
            Trials::Exhaustive => f.write_str("exhaustive"),
        }
    }
}

impl FromStr for Trials {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "exhaustive" {
            return Ok(Trials::Exhaustive);
        }
        s.parse()
            .map(Trials::Sampled)
            .map_err(|_| Error::InvalidParams(format!("invalid trial count `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchemeParams {
    /// Number of variables of the key polynomials; signatures use `n + 1`.
    pub n: usize,
    /// Terms per public polynomial.
    pub t: usize,
    /// Maximum monomial degree in the public polynomials.
    pub b: usize,
    /// Maximum degree of the seed monomial when sampling indicators.
    pub d: usize,
    /// Multiplication rounds when sampling indicators.
    pub r: usize,
    pub trials: Trials,
    /// Accepted gap between the two positive proportions.
    pub threshold: f64,
}

impl Default for SchemeParams {
    /// `n=31 t=3 b=3 d=2 r=1 trials=3000 threshold=0.03`.
    fn default() -> Self {
        SchemeParams {
            n: 31,
            t: 3,
            b: 3,
            d: 2,
            r: 1,
            trials: Trials::Sampled(3000),
            threshold: 0.03,
        }
    }
}

impl SchemeParams {
    /// Reduced profile on `n` variables with exhaustive counting, so every
    /// count is exact.
    pub fn test_profile(n: usize) -> Self {
        SchemeParams { n, trials: Trials::Exhaustive, ..SchemeParams::default() }
    }

    /// Number of variables of messages and signatures.
    pub fn signature_nvars(&self) -> usize {
        self.n + 1
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParams(msg));
        if self.n < 4 {
            return fail(format!("n = {} must be at least 4", self.n));
        }
        if self.n + 1 > MAX_VARS {
            return fail(format!("n = {} leaves no room for the signing variable", self.n));
        }
        if self.b == 0 || self.b > self.n {
            return fail(format!("b = {} must lie in 1..={}", self.b, self.n));
        }
        if !(1..=2).contains(&self.d) {
            return fail(format!("d = {} must be 1 or 2", self.d));
        }
        if self.t == 0 {
            return fail("t must be at least 1".into());
        }
        if self.r == 0 {
            return fail("r must be at least 1".into());
        }
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return fail(format!("threshold {} must lie strictly between 0 and 1", self.threshold));
        }
        match self.trials {
            Trials::Sampled(0) => return fail("trials must be at least 1".into()),
            Trials::Exhaustive if self.signature_nvars() > EXACT_COUNT_MAX_VARS => {
                return fail(format!(
                    "exhaustive counting needs n + 1 <= {EXACT_COUNT_MAX_VARS}"
                ));
            }
            _ => {}
        }
        if (self.t as u128) > monomial_pool(self.n, self.b) {
            return fail(format!(
                "t = {} exceeds the number of distinct monomials of degree 1..={}",
                self.t, self.b
            ));
        }
        Ok(())
    }

    /// Tuples examined per polynomial during verification.
    pub fn trial_count(&self) -> u64 {
        match self.trials {
            Trials::Sampled(n) => n,
            Trials::Exhaustive => 1u64 << self.signature_nvars(),
        }
    }

    /// Largest accepted difference between the two positive counts,
    /// `floor(threshold * trials)`.
    pub fn allowed_difference(&self) -> u64 {
        allowed_difference(self.threshold, self.trial_count())
    }
}

pub(crate) fn allowed_difference(threshold: f64, trials: u64) -> u64 {
    // products like 0.03 * 3000 land a hair below the integer
    (threshold * trials as f64 + 1e-9).floor() as u64
}

/// Number of square-free monomials of degree 1..=b in n variables.
fn monomial_pool(n: usize, b: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    for k in 1..=b {
        binom = binom * (n - k + 1) as u128 / k as u128;
        total = total.saturating_add(binom);
    }
    total
}

impl fmt::Display for SchemeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} t={} b={} d={} r={} trials={} threshold={}",
            self.n, self.t, self.b, self.d, self.r, self.trials, self.threshold
        )
    }
}

impl FromStr for SchemeParams {
    type Err = Error;

    /// Parses `key=value` pairs separated by spaces or commas. Missing keys
    /// keep their default. The presets `default` and `test` may lead the
    /// list; `test` is the 8-variable exhaustive profile.
    fn from_str(s: &str) -> Result<Self> {
        let mut params = SchemeParams::default();
        for (i, item) in s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|item| !item.is_empty())
            .enumerate()
        {
            match item {
                "default" if i == 0 => continue,
                "test" if i == 0 => {
                    params = SchemeParams::test_profile(8);
                    continue;
                }
                _ => {}
            }
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidParams(format!("expected key=value, found `{item}`")))?;
            let int = || {
                value
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidParams(format!("invalid value for {key}: `{value}`")))
            };
            match key {
                "n" => params.n = int()?,
                "t" => params.t = int()?,
                "b" => params.b = int()?,
                "d" => params.d = int()?,
                "r" => params.r = int()?,
                "trials" => params.trials = value.parse()?,
                "threshold" => {
                    params.threshold = value.parse().map_err(|_| {
                        Error::InvalidParams(format!("invalid threshold `{value}`"))
                    })?
                }
                _ => return Err(Error::InvalidParams(format!("unknown parameter `{key}`"))),
            }
        }
        params.validate()?;
        Ok(params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_suggested_values() {
        let p = SchemeParams::default();
        assert_eq!(p.to_string(), "n=31 t=3 b=3 d=2 r=1 trials=3000 threshold=0.03");
        assert!(p.validate().is_ok());
        assert_eq!(p.allowed_difference(), 90);
    }

    #[test]
    fn text_round_trip() {
        for text in [
            "n=31 t=3 b=3 d=2 r=1 trials=3000 threshold=0.03",
            "n=8 t=2 b=2 d=1 r=2 trials=exhaustive threshold=0.05",
        ] {
            let p: SchemeParams = text.parse().unwrap();
            assert_eq!(p.to_string(), text);
        }
    }

    #[test]
    fn partial_and_preset_forms() {
        let p: SchemeParams = "n=8".parse().unwrap();
        assert_eq!(p.n, 8);
        assert_eq!(p.trials, Trials::Sampled(3000));
        let p: SchemeParams = "test,n=10".parse().unwrap();
        assert_eq!(p.n, 10);
        assert_eq!(p.trials, Trials::Exhaustive);
        assert_eq!(p.trial_count(), 1 << 11);
        let p: SchemeParams = "default".parse().unwrap();
        assert_eq!(p, SchemeParams::default());
    }

    #[test]
    fn rejects_invalid() {
        for text in [
            "n=3",
            "n=64",
            "b=0",
            "b=40",
            "d=3",
            "d=0",
            "t=0",
            "r=0",
            "threshold=0",
            "threshold=1",
            "trials=0",
            "trials=exhaustive",
            "n=4,b=1,t=5",
            "q=1",
            "n",
            "n=abc",
            "test,default",
        ] {
            assert!(text.parse::<SchemeParams>().is_err(), "accepted {text}");
        }
    }

    #[test]
    fn allowed_difference_floors() {
        assert_eq!(allowed_difference(0.03, 3000), 90);
        assert_eq!(allowed_difference(0.03, 100), 3);
        assert_eq!(allowed_difference(0.03, 99), 2);
        assert_eq!(allowed_difference(0.1, 10), 1);
    }
}
