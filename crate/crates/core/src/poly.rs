//! Sparse multilinear integer polynomials modulo `x_i^2 - x_i`.
//!
//! Every element of the Boolean-reduced algebra has a unique multilinear
//! representative, so a monomial is just a set of variables. Sets are
//! stored as a `u64` bit mask with bit `i - 1` standing for `x_i`; the
//! product of two monomials is the union of their masks.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Coefficient;

/// Largest supported number of variables.
pub const MAX_VARS: usize = 64;

fn width_mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// A square-free monomial. The empty set is the constant monomial `1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    /// The monomial `x_index` (1-based).
    ///
    /// # Panics
    /// If `index` is not in `1..=64`.
    pub fn var(index: usize) -> Self {
        assert!(
            (1..=MAX_VARS).contains(&index),
            "variable index {index} outside 1..=64"
        );
        Monomial(1 << (index - 1))
    }

    pub const fn from_bits(bits: u64) -> Self {
        Monomial(bits)
    }

    /// Builds a monomial from 1-based variable indices; repeats collapse.
    pub fn from_vars<I: IntoIterator<Item = usize>>(vars: I) -> Self {
        vars.into_iter()
            .fold(Monomial::ONE, |m, v| m.mul(Monomial::var(v)))
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        (1..=MAX_VARS).contains(&index) && self.0 & (1 << (index - 1)) != 0
    }

    /// Product in the Boolean-reduced algebra: `x_i * x_i = x_i`.
    #[allow(clippy::should_implement_trait)]
    pub const fn mul(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }

    /// Highest variable index present, or 0 for the constant monomial.
    pub const fn max_var(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// True when every variable of the monomial is 1 in `tuple`.
    pub const fn is_satisfied_by(self, tuple: u64) -> bool {
        self.0 & !tuple == 0
    }

    /// Ascending 1-based variable indices.
    pub fn vars(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i + 1)
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, v) in self.vars().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

/// A point of the Boolean cube `{0,1}^width`; bit `i - 1` holds `x_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BooleanTuple {
    bits: u64,
    width: usize,
}

impl BooleanTuple {
    pub fn new(bits: u64, width: usize) -> Result<Self> {
        if width > MAX_VARS {
            return Err(Error::Capacity { nvars: width, max: MAX_VARS });
        }
        if bits & !width_mask(width) != 0 {
            return Err(Error::Dimension {
                expected: width,
                found: 64 - bits.leading_zeros() as usize,
            });
        }
        Ok(BooleanTuple { bits, width })
    }

    /// Builds a tuple from `values[i] = x_{i+1}`.
    pub fn from_bools(values: &[bool]) -> Result<Self> {
        let bits = values
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i));
        BooleanTuple::new(bits, values.len())
    }

    pub const fn bits(&self) -> u64 {
        self.bits
    }

    pub const fn width(&self) -> usize {
        self.width
    }

    /// Value of `x_index` (1-based).
    pub fn get(&self, index: usize) -> bool {
        (1..=self.width).contains(&index) && self.bits & (1 << (index - 1)) != 0
    }

    /// Every tuple of the given width, in ascending bit order.
    ///
    /// # Panics
    /// If `width >= 64`.
    pub fn all(width: usize) -> impl Iterator<Item = BooleanTuple> {
        assert!(width < 64, "cannot enumerate 2^{width} tuples");
        (0..1u64 << width).map(move |bits| BooleanTuple { bits, width })
    }
}

/// An element of the Boolean-reduced integer polynomial algebra in
/// `nvars` variables.
///
/// Terms are kept sorted by ascending monomial bit mask with no zero
/// coefficients, so structural equality is algebraic equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    nvars: usize,
    terms: Vec<(Monomial, C)>,
}

type Accumulator<C> = HashMap<Monomial, C>;

fn accumulate<C: Coefficient>(acc: &mut Accumulator<C>, m: Monomial, c: C) -> Result<()> {
    match acc.get_mut(&m) {
        Some(existing) => {
            *existing = existing.checked_add(&c).ok_or(Error::Overflow)?;
        }
        None => {
            acc.insert(m, c);
        }
    }
    Ok(())
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial_unchecked(nvars, Monomial::ONE, c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    /// The polynomial `x_index`.
    pub fn var(nvars: usize, index: usize) -> Result<Self> {
        if index == 0 || index > nvars {
            return Err(Error::VariableOutOfRange { index, nvars });
        }
        Ok(Self::monomial_unchecked(nvars, Monomial::var(index), C::one()))
    }

    /// The single term `c * m`.
    pub fn monomial(nvars: usize, m: Monomial, c: C) -> Result<Self> {
        check_monomial(nvars, m)?;
        Ok(Self::monomial_unchecked(nvars, m, c))
    }

    fn monomial_unchecked(nvars: usize, m: Monomial, c: C) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a polynomial from arbitrary terms, combining repeated
    /// monomials and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, C)>,
    {
        if nvars > MAX_VARS {
            return Err(Error::Capacity { nvars, max: MAX_VARS });
        }
        let mut acc = Accumulator::new();
        for (m, c) in terms {
            check_monomial(nvars, m)?;
            accumulate(&mut acc, m, c)?;
        }
        Ok(Self::from_accumulator(nvars, acc))
    }

    fn from_accumulator(nvars: usize, acc: Accumulator<C>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|(m, _)| *m);
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in canonical (ascending monomial) order.
    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    #[allow(clippy::len_without_is_empty)] // `is_zero` plays that role
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum monomial degree; 0 for constants and the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn coefficient(&self, m: Monomial) -> C {
        match self.terms.binary_search_by_key(&m, |(t, _)| *t) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(),
        }
    }

    /// Union of the variables of every term.
    pub fn support(&self) -> Monomial {
        self.terms
            .iter()
            .fold(Monomial::ONE, |acc, (m, _)| acc.mul(*m))
    }

    pub fn depends_on(&self, index: usize) -> bool {
        self.support().contains(index)
    }

    /// Total number of variable occurrences summed over all terms.
    pub fn variable_occurrences(&self) -> u64 {
        self.terms.iter().map(|(m, _)| u64::from(m.degree())).sum()
    }

    /// Reinterprets the polynomial in a larger ambient variable count.
    pub fn widen(&self, nvars: usize) -> Result<Self> {
        if nvars < self.nvars {
            return Err(Error::Dimension { expected: self.nvars, found: nvars });
        }
        if nvars > MAX_VARS {
            return Err(Error::Capacity { nvars, max: MAX_VARS });
        }
        Ok(Polynomial { nvars, terms: self.terms.clone() })
    }

    fn check_same_nvars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_nvars(other)?;
        // merge of two sorted term lists
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Less => {
                    terms.push((*ma, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    terms.push((*mb, cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca.checked_add(cb).ok_or(Error::Overflow)?;
                    if !c.is_zero() {
                        terms.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial { nvars: self.nvars, terms })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// `1 - self`.
    pub fn complement(&self) -> Result<Self> {
        Self::one(self.nvars).sub(self)
    }

    pub fn scale(&self, c: &C) -> Result<Self> {
        if c.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| a.checked_mul(c).map(|v| (*m, v)).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(Polynomial { nvars: self.nvars, terms })
    }

    /// Product in the Boolean-reduced algebra.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_nvars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let mut acc = Accumulator::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca.checked_mul(cb).ok_or(Error::Overflow)?;
                accumulate(&mut acc, ma.mul(*mb), c)?;
            }
        }
        Ok(Self::from_accumulator(self.nvars, acc))
    }

    /// Value on a Boolean tuple: the sum of coefficients of the monomials
    /// whose variables are all set.
    pub fn evaluate(&self, tuple: &BooleanTuple) -> Result<C> {
        if tuple.width() != self.nvars {
            return Err(Error::Dimension { expected: self.nvars, found: tuple.width() });
        }
        self.evaluate_bits(tuple.bits())
    }

    /// Like [`evaluate`](Self::evaluate) without the width check; bits
    /// above `nvars` are ignored since no monomial mentions them.
    pub fn evaluate_bits(&self, bits: u64) -> Result<C> {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            if m.is_satisfied_by(bits) {
                acc = acc.checked_add(c).ok_or(Error::Overflow)?;
            }
        }
        Ok(acc)
    }

    /// Value of the multilinear representative at an arbitrary integer
    /// point, `point[i] = x_{i+1}`.
    pub fn evaluate_at(&self, point: &[C]) -> Result<C> {
        if point.len() != self.nvars {
            return Err(Error::Dimension { expected: self.nvars, found: point.len() });
        }
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for v in m.vars() {
                term = term.checked_mul(&point[v - 1]).ok_or(Error::Overflow)?;
            }
            acc = acc.checked_add(&term).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    /// Replaces every `x_i` by `images[i - 1]` and reduces.
    ///
    /// The images must share one variable count, which becomes the
    /// variable count of the result.
    pub fn substitute(&self, images: &[Polynomial<C>]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::Dimension { expected: self.nvars, found: images.len() });
        }
        let Some(first) = images.first() else {
            // no variables: only a constant can be present
            return Ok(self.clone());
        };
        let target = first.nvars;
        for img in images {
            if img.nvars != target {
                return Err(Error::Dimension { expected: target, found: img.nvars });
            }
        }

        let mut acc = Accumulator::new();
        for (m, c) in &self.terms {
            let mut product = Self::constant(target, c.clone());
            for v in m.vars() {
                if product.is_zero() {
                    break;
                }
                product = product.mul(&images[v - 1])?;
            }
            for (pm, pc) in product.terms {
                accumulate(&mut acc, pm, pc)?;
            }
        }
        Ok(Self::from_accumulator(target, acc))
    }

    /// True iff `self * self == self`, i.e. the polynomial only takes the
    /// values 0 and 1 on the cube.
    pub fn is_idempotent(&self) -> Result<bool> {
        Ok(self.mul(self)? == *self)
    }

    /// Converts the coefficients to another coefficient type.
    pub fn convert<D: Coefficient>(&self) -> Result<Polynomial<D>>
    where
        C: TryInto<D>,
    {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| c.clone().try_into().map(|d| (*m, d)).map_err(|_| Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(Polynomial { nvars: self.nvars, terms })
    }
}

fn check_monomial(nvars: usize, m: Monomial) -> Result<()> {
    if m.max_var() > nvars {
        return Err(Error::VariableOutOfRange { index: m.max_var(), nvars });
    }
    Ok(())
}

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}
