//! Wedge patterns such as `∧²U₄∧∧²V + ∧³V∧U₁`, and the subspaces of `∧^k V` they span at
//! a given flag.
//!
//! Textual syntax: terms separated by `+`, factors by whitespace or `∧`; a factor is `V` or
//! `U<d>` (the flag member of dimension `d`), optionally raised to an exterior power with
//! `^k`. Example: `U4^2 V^2 + V^3 U1`.

use std::fmt;
use std::str::FromStr;

use super::{subsets, wedge, wedge_vectors, AltTensor, Flag, Subspace, Variance};
use crate::field::Field;
use crate::{Error, Result};

/// A factor of a wedge-pattern term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Member {
    /// The whole ambient space.
    Whole,
    /// The flag member of the given dimension.
    Dim(usize),
}

/// A formal sum of products of exterior powers of flag members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgePattern {
    terms: Vec<Vec<(Member, usize)>>,
}

impl WedgePattern {
    pub fn new(terms: Vec<Vec<(Member, usize)>>) -> Result<Self> {
        let degrees: Vec<usize> = terms.iter().map(|t| t.iter().map(|(_, a)| a).sum()).collect();
        if degrees.is_empty() || degrees.iter().any(|&d| d != degrees[0]) {
            return Err(Error::Parse(format!("pattern terms have inconsistent degrees {degrees:?}")));
        }
        if terms.iter().flatten().any(|(_, a)| *a == 0) {
            return Err(Error::Parse("zero exterior power in a pattern".into()));
        }
        Ok(WedgePattern { terms })
    }

    pub fn degree(&self) -> usize {
        self.terms[0].iter().map(|(_, a)| a).sum()
    }

    pub fn terms(&self) -> &[Vec<(Member, usize)>] {
        &self.terms
    }

    /// Flag-member dimensions referenced by the pattern.
    pub fn dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .terms
            .iter()
            .flatten()
            .filter_map(|(m, _)| match m {
                Member::Dim(d) => Some(*d),
                Member::Whole => None,
            })
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The span of the pattern at `flag`, as a subspace of the dense `∧^k` coordinates.
    pub fn subspace<F: Field>(&self, flag: &Flag<F>) -> Result<Subspace<F>> {
        let n = flag.ambient();
        let k = self.degree();
        if k > n {
            return Err(Error::Dimension(format!("pattern degree {k} exceeds ambient dimension {n}")));
        }
        let mut gens: Vec<Vec<F>> = Vec::new();
        for term in &self.terms {
            let mut partial = vec![AltTensor::from_terms(n, 0, Variance::Vector, [(super::MultiIndex(0), F::one())])];
            for &(member, a) in term {
                let factor = factor_generators(member, a, flag, n)?;
                let mut next = Vec::new();
                for p in &partial {
                    for f in &factor {
                        let w = wedge(p, f)?;
                        if !w.is_zero() {
                            next.push(w);
                        }
                    }
                }
                partial = next;
            }
            gens.extend(partial.iter().filter(|t| t.degree() == k).map(AltTensor::to_dense));
        }
        Ok(Subspace::span(subsets(n, k).len(), &gens))
    }
}

fn factor_generators<F: Field>(member: Member, a: usize, flag: &Flag<F>, n: usize) -> Result<Vec<AltTensor<F>>> {
    match member {
        Member::Whole => Ok(subsets(n, a).into_iter().map(|i| AltTensor::from_terms(n, a, Variance::Vector, [(i, F::one())])).collect()),
        Member::Dim(d) => {
            let w = flag.of_dim(d).ok_or_else(|| Error::Precondition(format!("flag has no member of dimension {d}")))?;
            let basis = w.basis();
            Ok(subsets(basis.len(), a)
                .into_iter()
                .map(|s| {
                    let vecs: Vec<&[F]> = s.indices().into_iter().map(|i| basis[i].as_slice()).collect();
                    wedge_vectors(&vecs, n, Variance::Vector)
                })
                .collect())
        }
    }
}

impl fmt::Display for WedgePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                t.iter()
                    .map(|(m, a)| {
                        let name = match m {
                            Member::Whole => "V".to_string(),
                            Member::Dim(d) => format!("U{d}"),
                        };
                        if *a == 1 {
                            name
                        } else {
                            format!("{name}^{a}")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl FromStr for WedgePattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for term in s.split('+') {
            let mut factors = Vec::new();
            for tok in term.split(|c: char| c.is_whitespace() || c == '∧').filter(|t| !t.is_empty()) {
                let (name, power) = match tok.split_once('^') {
                    Some((n, p)) => (n, p.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?),
                    None => (tok, 1),
                };
                let member = if name == "V" {
                    Member::Whole
                } else if let Some(d) = name.strip_prefix('U') {
                    Member::Dim(d.parse().map_err(|_| Error::Parse(format!("bad member {name:?}")))?)
                } else {
                    return Err(Error::Parse(format!("unknown factor {tok:?}")));
                };
                factors.push((member, power));
            }
            if factors.is_empty() {
                return Err(Error::Parse("empty term in pattern".into()));
            }
            terms.push(factors);
        }
        WedgePattern::new(terms)
    }
}

/// Whether the four-form (or any vector-type tensor) lies in the pattern's span at `flag`.
pub fn flag_condition_check<F: Field>(v: &AltTensor<F>, flag: &Flag<F>, pattern: &WedgePattern) -> Result<bool> {
    if v.degree() != pattern.degree() {
        return Err(Error::Dimension(format!("tensor degree {} differs from pattern degree {}", v.degree(), pattern.degree())));
    }
    Ok(pattern.subspace(flag)?.contains(&v.to_dense()))
}
