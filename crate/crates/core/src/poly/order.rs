use std::cmp::Ordering;
use std::fmt;

use super::Monomial;
use crate::error::{Error, Result};

/// Positive integer weights `w_i` for the variables, with an optional expected
/// weighted degree (the `d` of a type `(w_1, …, w_n; d)`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightSystem {
    weights: Vec<u32>,
    degree: Option<u64>,
}

impl WeightSystem {
    pub fn new(weights: Vec<u32>, degree: Option<u64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("no weights given".into()));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidWeights("weights must be at least 1".into()));
        }
        if degree == Some(0) {
            return Err(Error::InvalidWeights("degree must be positive".into()));
        }
        Ok(WeightSystem { weights, degree })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn degree(&self) -> Option<u64> {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(u32::to_string).collect();
        match self.degree {
            Some(d) => write!(f, "({}; {d})", ws.join(", ")),
            None => write!(f, "({})", ws.join(", ")),
        }
    }
}

/// Degree-compatible monomial orderings with reverse-lexicographic tie break.
///
/// Global kinds make every variable larger than `1`; local kinds make `1`
/// larger than every variable, so the leading term of a germ is one of its
/// lowest-degree terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    DegRevLex,
    #[default]
    NegDegRevLex,
    WeightedRevLex(WeightSystem),
    NegWeightedRevLex(WeightSystem),
}

/// `a > b` in revlex iff the last nonzero entry of `a - b` is negative.
fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn is_local(&self) -> bool {
        matches!(
            self,
            MonomialOrder::NegDegRevLex | MonomialOrder::NegWeightedRevLex(_)
        )
    }

    pub fn is_global(&self) -> bool {
        !self.is_local()
    }

    pub fn weights(&self) -> Option<&WeightSystem> {
        match self {
            MonomialOrder::WeightedRevLex(w) | MonomialOrder::NegWeightedRevLex(w) => Some(w),
            _ => None,
        }
    }

    /// Total or weighted degree, whichever the ordering grades by.
    pub fn degree(&self, m: &Monomial) -> u64 {
        self.degree_of(m.exponents())
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_exponents(a.exponents(), b.exponents())
    }

    pub(crate) fn degree_of(&self, e: &[u32]) -> u64 {
        match self.weights() {
            Some(w) => e
                .iter()
                .zip(w.weights())
                .map(|(&a, &b)| u64::from(a) * u64::from(b))
                .sum(),
            None => e.iter().map(|&a| u64::from(a)).sum(),
        }
    }

    pub(crate) fn cmp_exponents(&self, a: &[u32], b: &[u32]) -> Ordering {
        let by_degree = self.degree_of(a).cmp(&self.degree_of(b));
        let by_degree = if self.is_local() {
            by_degree.reverse()
        } else {
            by_degree
        };
        by_degree.then_with(|| revlex(a, b))
    }

    pub(crate) fn check_arity(&self, nvars: usize) -> Result<()> {
        match self.weights() {
            Some(w) if w.len() != nvars => Err(Error::InvalidWeights(format!(
                "{} weights for {nvars} variables",
                w.len()
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::DegRevLex => f.write_str("global-degrevlex"),
            MonomialOrder::NegDegRevLex => f.write_str("local-negdegrevlex"),
            MonomialOrder::WeightedRevLex(w) => write!(f, "weighted-global{w}"),
            MonomialOrder::NegWeightedRevLex(w) => write!(f, "weighted-local{w}"),
        }
    }
}
