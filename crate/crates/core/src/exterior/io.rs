//! The four-form text format.
//!
//! ```text
//! # comments and blank lines are ignored
//! field: Fp 11
//! 1 2 3 4 : 1
//! 5 6 7 8 : -3/2
//! ```
//!
//! Indices are 1-based and strictly increasing; coefficients are integers or fractions.
//! Repeated index sets add up. Any other line is rejected.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::Zero;

use super::{AltTensor, MultiIndex, Variance};
use crate::field::Field;
use crate::{Error, Result};

/// The field declared in a four-form file header.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Q,
    Fp(u64),
}

impl FieldSpec {
    pub fn label(self) -> String {
        match self {
            FieldSpec::Q => "Q".into(),
            FieldSpec::Fp(p) => format!("Fp {p}"),
        }
    }
}

/// A parsed four-form file: the declared field and rational coefficients on 0-based index
/// sets of size 4 in an 8-dimensional space.
#[derive(Clone, Debug, PartialEq)]
pub struct FormFile {
    pub field: FieldSpec,
    pub entries: Vec<(MultiIndex, BigRational)>,
}

impl FormFile {
    /// The form over `F`. Fails when a denominator is not invertible in `F`.
    pub fn to_four_form<F: Field>(&self) -> Result<AltTensor<F>> {
        let mut terms = Vec::with_capacity(self.entries.len());
        for (i, c) in &self.entries {
            let x = F::from_rational(c).ok_or_else(|| Error::Parse(format!("coefficient {c} of {i:?} is not defined over {}", F::label())))?;
            terms.push((*i, x));
        }
        Ok(AltTensor::from_terms(8, 4, Variance::Vector, terms))
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: num_bigint::BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Parses the four-form text format.
pub fn parse_form_file(text: &str) -> Result<FormFile> {
    let mut field = None;
    let mut entries = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| Error::Parse(format!("line {}: {msg}: {raw:?}", lineno + 1));
        if let Some(rest) = line.strip_prefix("field:") {
            if field.is_some() {
                return Err(bad("duplicate field header"));
            }
            let parts: Vec<&str> = rest.split_whitespace().collect();
            field = Some(match parts.as_slice() {
                ["Q"] => FieldSpec::Q,
                ["Fp", p] => FieldSpec::Fp(p.parse().map_err(|_| bad("bad prime"))?),
                _ => return Err(bad("unknown field")),
            });
            continue;
        }
        if field.is_none() {
            return Err(bad("coefficient line before the field header"));
        }
        let (idx, coeff) = line.split_once(':').ok_or_else(|| bad("expected `i j k l : coeff`"))?;
        let idx: Vec<usize> = idx.split_whitespace().map(|t| t.parse::<usize>()).collect::<std::result::Result<_, _>>().map_err(|_| bad("bad index"))?;
        if idx.len() != 4 || idx.iter().any(|&i| !(1..=8).contains(&i)) || idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad("indices must be four strictly increasing values in 1..8"));
        }
        let c = parse_rational(coeff.trim()).ok_or_else(|| bad("bad coefficient"))?;
        let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        entries.push((MultiIndex::from_slice(&zero_based)?, c));
    }
    let field = field.ok_or_else(|| Error::Parse("missing field header".into()))?;
    Ok(FormFile { field, entries })
}

/// Writes a form in the text format, one line per nonzero coefficient.
pub fn format_form<F: Field>(header: FieldSpec, v: &AltTensor<F>) -> String {
    let mut out = format!("field: {}\n", header.label());
    for (i, c) in v.terms() {
        let idx: Vec<String> = i.indices().iter().map(|x| (x + 1).to_string()).collect();
        let c = match c.to_json() {
            serde_json::Value::String(s) => s,
            other => other.to_string(),
        };
        let _ = writeln!(out, "{} : {}", idx.join(" "), c);
    }
    out
}
