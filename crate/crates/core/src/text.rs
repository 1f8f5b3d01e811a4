//! Canonical text encoding shared by every file format.
//!
//! A polynomial block is a header line `nvars=<k>` followed by one line per
//! term, `<coefficient>:<comma-separated ascending indices>`, in canonical
//! term order. Multi-polynomial files separate blocks with blank lines.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, MAX_VARS};
use crate::scalar::Coefficient;

/// Serializes a polynomial as one block (trailing newline included).
pub fn polynomial_to_text<C: Coefficient>(p: &Polynomial<C>) -> String {
    let mut out = String::new();
    write_polynomial(&mut out, p);
    out
}

pub(crate) fn write_polynomial<C: Coefficient>(out: &mut String, p: &Polynomial<C>) {
    let _ = writeln!(out, "nvars={}", p.nvars());
    for (m, c) in p.terms() {
        let _ = write!(out, "{c}:");
        for (k, v) in m.vars().enumerate() {
            if k > 0 {
                out.push(',');
            }
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
}

/// Parses exactly one polynomial block.
pub fn polynomial_from_text<C: Coefficient>(text: &str) -> Result<Polynomial<C>> {
    let blocks = split_blocks(text);
    match blocks.as_slice() {
        [block] => parse_block(block),
        [] => Err(Error::parse(1, "empty input")),
        [_, second, ..] => Err(Error::parse(second.first_line, "expected a single polynomial block")),
    }
}

/// A run of consecutive non-blank lines.
#[derive(Debug, Clone)]
pub(crate) struct Block<'a> {
    /// 1-based line number of the first line.
    pub first_line: usize,
    pub lines: Vec<&'a str>,
}

pub(crate) fn split_blocks(text: &str) -> Vec<Block<'_>> {
    let mut blocks = Vec::new();
    let mut current: Option<Block<'_>> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            if let Some(b) = current.take() {
                blocks.push(b);
            }
            continue;
        }
        current
            .get_or_insert_with(|| Block { first_line: i + 1, lines: Vec::new() })
            .lines
            .push(line);
    }
    blocks.extend(current);
    blocks
}

pub(crate) fn parse_nvars_header(line: &str, line_no: usize) -> Result<usize> {
    let value = line
        .strip_prefix("nvars=")
        .ok_or_else(|| Error::parse(line_no, format!("expected `nvars=<k>`, found `{line}`")))?;
    let nvars: usize = value
        .parse()
        .map_err(|_| Error::parse(line_no, format!("invalid variable count `{value}`")))?;
    if nvars > MAX_VARS {
        return Err(Error::parse(line_no, format!("variable count {nvars} exceeds {MAX_VARS}")));
    }
    Ok(nvars)
}

pub(crate) fn parse_block<C: Coefficient>(block: &Block<'_>) -> Result<Polynomial<C>> {
    let (header, body) = block
        .lines
        .split_first()
        .ok_or_else(|| Error::parse(block.first_line, "empty block"))?;
    let nvars = parse_nvars_header(header, block.first_line)?;

    let mut terms = Vec::with_capacity(body.len());
    let mut previous: Option<Monomial> = None;
    for (offset, line) in body.iter().enumerate() {
        let line_no = block.first_line + 1 + offset;
        let (coef, vars) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(line_no, "expected `<coefficient>:<indices>`"))?;
        let c: C = coef
            .trim()
            .parse()
            .map_err(|_| Error::parse(line_no, format!("invalid coefficient `{coef}`")))?;
        if c.is_zero() {
            return Err(Error::parse(line_no, "zero coefficient in canonical form"));
        }
        let m = parse_indices(vars, nvars, line_no)?;
        if previous.is_some_and(|p| p >= m) {
            return Err(Error::parse(line_no, "terms are not in ascending canonical order"));
        }
        previous = Some(m);
        terms.push((m, c));
    }
    Polynomial::from_terms(nvars, terms)
}

fn parse_indices(field: &str, nvars: usize, line_no: usize) -> Result<Monomial> {
    let field = field.trim();
    if field.is_empty() {
        return Ok(Monomial::ONE);
    }
    let mut m = Monomial::ONE;
    let mut last = 0;
    for part in field.split(',') {
        let v: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::parse(line_no, format!("invalid variable index `{part}`")))?;
        if v == 0 || v > nvars {
            return Err(Error::parse(line_no, format!("variable index {v} outside 1..={nvars}")));
        }
        if v <= last {
            return Err(Error::parse(line_no, "variable indices must be strictly ascending"));
        }
        last = v;
        m = m.mul(Monomial::var(v));
    }
    Ok(m)
}
