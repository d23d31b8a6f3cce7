//! Truncated power-series curves `γ: (C, 0) → (C^n, 0)` and the valuation
//! criterion for integral dependence.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

pub const DEFAULT_TRUNCATION: u32 = 50;

/// A power series in `s` known exactly below `s^trunc`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries<C> {
    coeffs: BTreeMap<u32, C>,
    trunc: u32,
}

/// Order of vanishing of a truncated series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(u32),
    /// No term below the truncation order is nonzero.
    AtLeast(u32),
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(k) => write!(f, "{k}"),
            Valuation::AtLeast(k) => write!(f, ">={k}"),
        }
    }
}

impl<C: Scalar> TruncatedSeries<C> {
    pub fn zero(trunc: u32) -> Result<Self> {
        if trunc == 0 {
            return Err(Error::InvalidArgument(
                "truncation order must be positive".into(),
            ));
        }
        Ok(TruncatedSeries {
            coeffs: BTreeMap::new(),
            trunc,
        })
    }

    /// Drops zero coefficients and exponents at or above `trunc`; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (u32, C)>>(terms: I, trunc: u32) -> Result<Self> {
        let mut out = Self::zero(trunc)?;
        for (e, c) in terms {
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Reads a univariate polynomial (in the ring's only variable) as a series.
    pub fn from_polynomial(p: &Polynomial<C>, trunc: u32) -> Result<Self> {
        if p.ring().nvars() != 1 {
            return Err(Error::InvalidArgument(format!(
                "series components must be univariate, found ring {}",
                p.ring()
            )));
        }
        Self::from_terms(p.terms().map(|(m, c)| (m.exponents()[0], c.clone())), trunc)
    }

    pub fn constant(c: C, trunc: u32) -> Result<Self> {
        Self::from_terms([(0, c)], trunc)
    }

    fn add_term(&mut self, e: u32, c: C) {
        if e >= self.trunc || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(C::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn coeff(&self, e: u32) -> C {
        self.coeffs.get(&e).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &C)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.keys().next() {
            Some(&k) => Valuation::Finite(k),
            None => Valuation::AtLeast(self.trunc),
        }
    }

    fn check_trunc(&self, other: &Self) -> Result<()> {
        if self.trunc == other.trunc {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "truncation orders differ ({} vs {})",
                self.trunc, other.trunc
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_trunc(other)?;
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_trunc(other)?;
        let mut out = Self::zero(self.trunc)?;
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if a + b >= self.trunc {
                    break;
                }
                out.add_term(a + b, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = TruncatedSeries {
            coeffs: BTreeMap::new(),
            trunc: self.trunc,
        };
        for (e, a) in &self.coeffs {
            out.add_term(*e, a.clone() * c.clone());
        }
        out
    }
}

impl<C: Scalar> fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.coeffs {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = abs.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => f.write_str("s")?,
                (1, false) => write!(f, "{abs}*s")?,
                (_, true) => write!(f, "s^{e}")?,
                (_, false) => write!(f, "{abs}*s^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(s^{})", self.trunc)
    }
}

impl<C: Scalar> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A curve germ through the origin, one truncated series per coordinate.
#[derive(Clone, PartialEq, Eq)]
pub struct ArcCurve<C> {
    components: Vec<TruncatedSeries<C>>,
    trunc: u32,
}

impl<C: Scalar> ArcCurve<C> {
    pub fn new(components: Vec<TruncatedSeries<C>>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::InvalidArgument(
                "an arc needs at least one component".into(),
            ));
        };
        let trunc = first.trunc;
        for (i, c) in components.iter().enumerate() {
            if c.trunc != trunc {
                return Err(Error::InvalidArgument(format!(
                    "component {i} has truncation {} but component 0 has {trunc}",
                    c.trunc
                )));
            }
            if !c.coeff(0).is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "component {i} does not vanish at s = 0"
                )));
            }
        }
        Ok(ArcCurve { components, trunc })
    }

    /// Builds an arc from univariate polynomials in `s`.
    pub fn from_polynomials(components: &[Polynomial<C>], trunc: u32) -> Result<Self> {
        Self::new(
            components
                .iter()
                .map(|p| TruncatedSeries::from_polynomial(p, trunc))
                .collect::<Result<_>>()?,
        )
    }

    pub fn components(&self) -> &[TruncatedSeries<C>] {
        &self.components
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }
}

impl<C: Scalar> fmt::Display for ArcCurve<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let s = c.to_string();
                s[..s.len() - format!(" + O(s^{})", self.trunc).len()].to_string()
            })
            .collect();
        write!(f, "({}) trunc {}", parts.join(", "), self.trunc)
    }
}

impl<C: Scalar> fmt::Debug for ArcCurve<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `p ∘ γ`, exact below `s^trunc`.
pub fn compose_poly_arc<C: Scalar>(
    p: &Polynomial<C>,
    arc: &ArcCurve<C>,
) -> Result<TruncatedSeries<C>> {
    let n = p.ring().nvars();
    if arc.dim() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: arc.dim(),
        });
    }
    let trunc = arc.trunc;
    let one = TruncatedSeries::constant(C::one(), trunc)?;
    let mut powers: Vec<Vec<TruncatedSeries<C>>> = vec![vec![one.clone()]; n];
    let mut out = TruncatedSeries::zero(trunc)?;
    for (m, c) in p.terms() {
        let mut term = one.clone();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = powers[i]
                    .last()
                    .expect("nonempty")
                    .mul(&arc.components[i])?;
                powers[i].push(next);
            }
            term = term.mul(&powers[i][e as usize])?;
            if term.is_zero() {
                break;
            }
        }
        out = out.add(&term.scale(c))?;
    }
    Ok(out)
}

/// Result of one side of the criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Holds,
    Fails,
    /// Undecidable at the current truncation.
    Indeterminate,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Holds => "holds",
            Outcome::Fails => "fails",
            Outcome::Indeterminate => "indeterminate",
        })
    }
}

/// Comparison of `ν(h∘γ)` with `inf_i ν(g_i∘γ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationTest {
    /// `ν(h∘γ) > inf`.
    pub strict: Outcome,
    /// `ν(h∘γ) ≥ inf`.
    pub weak: Outcome,
    pub h_value: Valuation,
    pub values: Vec<Valuation>,
    pub infimum: Valuation,
    /// Generators whose series vanished below the truncation order when the
    /// outcome could not be decided; raising `trunc` may resolve them.
    pub indeterminate_generators: Vec<usize>,
}

pub fn valuation_criterion_test<C: Scalar>(
    h: &Polynomial<C>,
    gens: &[Polynomial<C>],
    arc: &ArcCurve<C>,
) -> Result<ValuationTest> {
    if gens.is_empty() {
        return Err(Error::InvalidArgument("the generator list is empty".into()));
    }
    let h_value = compose_poly_arc(h, arc)?.valuation();
    let values = gens
        .iter()
        .map(|g| Ok(compose_poly_arc(g, arc)?.valuation()))
        .collect::<Result<Vec<_>>>()?;
    let infimum = values
        .iter()
        .filter_map(|v| match v {
            Valuation::Finite(k) => Some(*k),
            Valuation::AtLeast(_) => None,
        })
        .min()
        .map_or(Valuation::AtLeast(arc.trunc), Valuation::Finite);

    // a finite valuation is always below the truncation order, so any
    // `AtLeast` value exceeds every finite one
    let (strict, weak) = match (h_value, infimum) {
        (Valuation::Finite(k), Valuation::Finite(m)) => (bool_outcome(k > m), bool_outcome(k >= m)),
        (Valuation::AtLeast(_), Valuation::Finite(_)) => (Outcome::Holds, Outcome::Holds),
        (Valuation::Finite(_), Valuation::AtLeast(_)) => (Outcome::Fails, Outcome::Fails),
        (Valuation::AtLeast(_), Valuation::AtLeast(_)) => {
            (Outcome::Indeterminate, Outcome::Indeterminate)
        }
    };
    let indeterminate_generators = if strict == Outcome::Indeterminate {
        (0..values.len()).collect()
    } else {
        Vec::new()
    };
    Ok(ValuationTest {
        strict,
        weak,
        h_value,
        values,
        infimum,
        indeterminate_generators,
    })
}

fn bool_outcome(b: bool) -> Outcome {
    if b {
        Outcome::Holds
    } else {
        Outcome::Fails
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, PolyRing};
    use crate::Rational;
    use std::sync::Arc;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn series(terms: &[(u32, i64)], trunc: u32) -> TruncatedSeries<Rational> {
        TruncatedSeries::from_terms(terms.iter().map(|&(e, c)| (e, q(c))), trunc).unwrap()
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Polynomial<Rational> {
        parse_polynomial(s, r).unwrap()
    }

    fn example_arc(trunc: u32) -> ArcCurve<Rational> {
        ArcCurve::new(vec![
            series(&[(1, 1)], trunc),
            series(&[(2, -1)], trunc),
            series(&[], trunc),
            series(&[], trunc),
        ])
        .unwrap()
    }

    #[test]
    fn series_arithmetic() {
        let a = series(&[(1, 1), (2, 3)], 5);
        let b = series(&[(1, 2), (3, -1)], 5);
        assert_eq!(a.mul(&b).unwrap(), series(&[(2, 2), (3, 6), (4, -1)], 5));
        assert_eq!(a.add(&b).unwrap(), series(&[(1, 3), (2, 3), (3, -1)], 5));
        assert_eq!(a.add(&a.scale(&q(-1))).unwrap(), series(&[], 5));
        assert!(a.add(&series(&[], 6)).is_err());
        assert_eq!(series(&[(7, 1)], 5), series(&[], 5));
        assert_eq!(a.to_string(), "s + 3*s^2 + O(s^5)");
    }

    #[test]
    fn valuations() {
        assert_eq!(series(&[], 50).valuation(), Valuation::AtLeast(50));
        assert_eq!(
            series(&[(3, 2), (4, 1)], 50).valuation(),
            Valuation::Finite(3)
        );
    }

    #[test]
    fn composition() {
        let r = PolyRing::new(&["x", "y", "z"])
            .unwrap()
            .with_deformation_parameter()
            .unwrap();
        let g = example_arc(50);
        assert_eq!(
            compose_poly_arc(&p(&r, "x^2"), &g).unwrap(),
            series(&[(2, 1)], 50)
        );
        assert!(compose_poly_arc(&p(&r, "4*x^2 + 4*y"), &g)
            .unwrap()
            .is_zero());
        assert_eq!(
            compose_poly_arc(&p(&r, "7"), &g).unwrap(),
            series(&[(0, 7)], 50)
        );
        assert_eq!(
            compose_poly_arc(&p(&r, "x^7"), &example_arc(5)).unwrap(),
            series(&[], 5)
        );
        let r2 = PolyRing::new(&["x", "y"]).unwrap();
        assert_eq!(
            compose_poly_arc(&p(&r2, "x"), &g),
            Err(Error::ArityMismatch {
                expected: 2,
                found: 4
            })
        );
    }

    #[test]
    fn arc_validation() {
        assert!(ArcCurve::new(vec![series(&[(0, 1)], 10)]).is_err());
        assert!(ArcCurve::new(vec![series(&[(1, 1)], 10), series(&[(1, 1)], 11)]).is_err());
        assert!(ArcCurve::<Rational>::new(vec![]).is_err());
        assert_eq!(example_arc(50).to_string(), "(s, -s^2, 0, 0) trunc 50");
    }

    fn derived_generators(r: &Arc<PolyRing>, a: i64) -> [Polynomial<Rational>; 4] {
        [
            format!("4*({a}+t)*x^2 + 4*y"),
            "2*z".to_string(),
            format!("2*({a}+t)*x^3 + 6*({a}+t)*x*y - 4*x*y"),
            format!("2*({a}+t)*x*z"),
        ]
        .map(|s| p(r, &s))
    }

    fn witness_arc(a: i64) -> ArcCurve<Rational> {
        let t = 50;
        ArcCurve::new(vec![
            series(&[(1, 1)], t),
            series(&[(2, -a)], t),
            series(&[], t),
            series(&[], t),
        ])
        .unwrap()
    }

    #[test]
    fn weak_failure_on_witness_arc() {
        let r = PolyRing::new(&["x", "y", "z"])
            .unwrap()
            .with_deformation_parameter()
            .unwrap();
        let res =
            valuation_criterion_test(&p(&r, "x^2"), &derived_generators(&r, 2), &witness_arc(2))
                .unwrap();
        assert_eq!(res.h_value, Valuation::Finite(2));
        assert_eq!(
            res.values,
            [
                Valuation::AtLeast(50),
                Valuation::AtLeast(50),
                Valuation::Finite(3),
                Valuation::AtLeast(50)
            ]
        );
        assert_eq!(res.infimum, Valuation::Finite(3));
        assert_eq!((res.strict, res.weak), (Outcome::Fails, Outcome::Fails));

        // at a = 1 every generator vanishes to the truncation order along the arc
        let res =
            valuation_criterion_test(&p(&r, "x^2"), &derived_generators(&r, 1), &witness_arc(1))
                .unwrap();
        assert!(res.values.iter().all(|v| *v == Valuation::AtLeast(50)));
        assert_eq!((res.strict, res.weak), (Outcome::Fails, Outcome::Fails));
    }

    #[test]
    fn equality_case() {
        let r = PolyRing::new(&["x", "y"])
            .unwrap()
            .with_deformation_parameter()
            .unwrap();
        let gens = [
            "10*x^5 + 6*y^2 + 10*t*x^5",
            "10*x^4*y + 6*x^2*y + 10*t*x^4*y",
        ]
        .map(|s| p(&r, s));
        let alpha = ArcCurve::new(vec![
            series(&[(1, 1)], 50),
            series(&[], 50),
            series(&[], 50),
        ])
        .unwrap();
        let res = valuation_criterion_test(&p(&r, "x^5"), &gens, &alpha).unwrap();
        assert_eq!(res.h_value, Valuation::Finite(5));
        assert_eq!(res.infimum, Valuation::Finite(5));
        assert_eq!((res.strict, res.weak), (Outcome::Fails, Outcome::Holds));
    }

    #[test]
    fn zero_h_and_indeterminacy() {
        let r = PolyRing::new(&["x"]).unwrap();
        let g = ArcCurve::new(vec![series(&[(1, 1)], 10)]).unwrap();
        let res = valuation_criterion_test(&p(&r, "0"), &[p(&r, "x^3")], &g).unwrap();
        assert_eq!((res.strict, res.weak), (Outcome::Holds, Outcome::Holds));
        let res = valuation_criterion_test(&p(&r, "x^12"), &[p(&r, "x^11")], &g).unwrap();
        assert_eq!(
            (res.strict, res.weak),
            (Outcome::Indeterminate, Outcome::Indeterminate)
        );
        assert_eq!(res.indeterminate_generators, [0]);
        let res = valuation_criterion_test(&p(&r, "x^2"), &[p(&r, "x^11")], &g).unwrap();
        assert_eq!((res.strict, res.weak), (Outcome::Fails, Outcome::Fails));
    }
}
