//! One-parameter deformations `F(x, t) = f_t(x)` of a germ `f = f_0` and the
//! relative conditions (1_r)–(6_r) on them.
//!
//! Statements about "small t" are evaluated at a finite [`SampleSet`] of exact
//! parameter values, and statements about "every curve" at a supplied list of
//! arcs. Refutations are conclusive; everything else is evidence.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::arcs::{valuation_criterion_test, ArcCurve, Outcome, ValuationTest};
use crate::error::{Error, Result};
use crate::invariants::{
    apply_vector_field, bruce_roberts_number, bruce_roberts_number_at, Count, LocalOptions,
    VarietyGerm, VectorField,
};
use crate::poly::{standard_basis, MonomialOrder, PolyRing, Polynomial, DEFORMATION_PARAMETER};
use crate::scalar::Scalar;

pub const DEFAULT_KMAX: u32 = 12;

/// A deformation `F` over the variables of `base_ring` plus `t`, optionally
/// depending on named symbolic parameters that must be given values before
/// any computation.
#[derive(Clone)]
pub struct Deformation<C> {
    base_ring: Arc<PolyRing>,
    ring: Arc<PolyRing>,
    raw: Polynomial<C>,
    params: BTreeMap<String, Option<C>>,
}

impl<C: Scalar> std::fmt::Debug for Deformation<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Deformation")
            .field("family", &self.raw.to_string())
            .field("params", &self.params)
            .finish()
    }
}

impl<C: Scalar> Deformation<C> {
    /// `family` must live in `base_ring` extended by `t`.
    pub fn new(base_ring: &Arc<PolyRing>, family: Polynomial<C>) -> Result<Self> {
        Self::with_parameters(base_ring, family, Vec::new())
    }

    /// `family` must live in `base_ring` extended by `t` and then by the
    /// parameter names, in the given order.
    pub fn with_parameters(
        base_ring: &Arc<PolyRing>,
        family: Polynomial<C>,
        params: Vec<(String, Option<C>)>,
    ) -> Result<Self> {
        let mut extra = vec![DEFORMATION_PARAMETER.to_string()];
        extra.extend(params.iter().map(|(n, _)| n.clone()));
        let full = base_ring.extend(&extra)?;
        if family.ring() != &full {
            return Err(Error::RingMismatch);
        }
        let d = Deformation {
            base_ring: base_ring.clone(),
            ring: base_ring.with_deformation_parameter()?,
            raw: family,
            params: params.into_iter().collect(),
        };
        if d.params.values().all(Option::is_some) {
            d.family()?;
        }
        Ok(d)
    }

    pub fn base_ring(&self) -> &Arc<PolyRing> {
        &self.base_ring
    }

    /// The ring of `F`: base variables followed by `t`.
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn parameters(&self) -> &BTreeMap<String, Option<C>> {
        &self.params
    }

    pub fn set_parameter(&mut self, name: &str, value: C) -> Result<()> {
        match self.params.get_mut(name) {
            Some(slot) => {
                *slot = Some(value);
                self.family()?;
                Ok(())
            }
            None => Err(Error::InvalidArgument(format!(
                "unknown parameter `{name}`"
            ))),
        }
    }

    /// `F(x, t)` with every parameter replaced by its value.
    pub fn family(&self) -> Result<Polynomial<C>> {
        let mut values = BTreeMap::new();
        for (name, v) in &self.params {
            match v {
                Some(v) => values.insert(name.clone(), v.clone()),
                None => return Err(Error::UninstantiatedParameter(name.clone())),
            };
        }
        let f = self.raw.substitute_values(&self.ring, &values)?;
        let at_origin: BTreeMap<String, C> = self
            .base_ring
            .vars()
            .iter()
            .map(|v| (v.clone(), C::zero()))
            .collect();
        let rest = f.substitute_values(&self.ring, &at_origin)?;
        if !rest.is_zero() {
            return Err(Error::NonzeroConstantTerm {
                constant: rest.to_string(),
            });
        }
        Ok(f)
    }

    /// `f_{t0}` as a polynomial in the base variables.
    pub fn specialize(&self, t0: &C) -> Result<Polynomial<C>> {
        let values = BTreeMap::from([(DEFORMATION_PARAMETER.to_string(), t0.clone())]);
        self.family()?.substitute_values(&self.base_ring, &values)
    }

    /// `f_0`.
    pub fn base(&self) -> Result<Polynomial<C>> {
        self.specialize(&C::zero())
    }

    /// `∂F/∂t`.
    pub fn t_derivative(&self) -> Result<Polynomial<C>> {
        Ok(self.family()?.derivative(self.base_ring.nvars()))
    }

    /// Generators `dF(ξ_i)` of `J_F(Θ_V)` in the ring of `F`, where `dF` only
    /// differentiates in the base variables.
    pub fn relative_jacobian(&self, v: &VarietyGerm<C>) -> Result<Vec<Polynomial<C>>> {
        if v.ring() != &self.base_ring {
            return Err(Error::RingMismatch);
        }
        let f = self.family()?;
        let none = BTreeMap::new();
        v.fields()
            .iter()
            .map(|xi| {
                let mut comps = xi
                    .components()
                    .iter()
                    .map(|c| c.substitute(&self.ring, &none))
                    .collect::<Result<Vec<_>>>()?;
                comps.push(Polynomial::zero(&self.ring));
                apply_vector_field(&f, &VectorField::new(&self.ring, comps)?)
            })
            .collect()
    }
}

/// Exact parameter values standing in for "t small".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet<C> {
    values: Vec<C>,
}

impl<C: Scalar> SampleSet<C> {
    pub fn new(values: Vec<C>) -> Result<Self> {
        if !values.iter().any(|v| v.is_zero()) {
            return Err(Error::InvalidSamples("0 must be among the samples".into()));
        }
        for (i, v) in values.iter().enumerate() {
            if values[..i].contains(v) {
                return Err(Error::InvalidSamples(format!("duplicate sample {v}")));
            }
        }
        Ok(SampleSet { values })
    }

    pub fn values(&self) -> &[C] {
        &self.values
    }
}

impl<C: Scalar> Default for SampleSet<C> {
    /// `{0, 1/7, 1/11, 1/2}`.
    fn default() -> Self {
        let frac = |d: i64| C::from_ratio(&1.into(), &d.into()).expect("small literal");
        SampleSet {
            values: vec![C::zero(), frac(7), frac(11), frac(2)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constancy<C> {
    /// All sample values equal and finite.
    pub constant: bool,
    /// `(t, μ_BR(V, f_t))` in sample order.
    pub values: Vec<(C, Count)>,
}

/// `μ_BR(V, f_t)` at the origin for every sample `t`.
pub fn mu_br_constancy<C: Scalar>(
    d: &Deformation<C>,
    v: &VarietyGerm<C>,
    samples: &SampleSet<C>,
    opts: &LocalOptions,
) -> Result<Constancy<C>> {
    let values = samples
        .values
        .par_iter()
        .map(|t| Ok((t.clone(), bruce_roberts_number(&d.specialize(t)?, v, opts)?)))
        .collect::<Result<Vec<_>>>()?;
    let constant = values[0].1.is_finite() && values.iter().all(|(_, c)| *c == values[0].1);
    Ok(Constancy { constant, values })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitReport<C> {
    /// The value at the origin dropped below the base value.
    pub split: bool,
    pub local_at_origin: Count,
    pub base_value: u64,
    /// Local values at the supplied off-origin points, in input order.
    pub accounted: Vec<(Vec<C>, Count)>,
    /// Origin plus supplied points; `None` without supplied points.
    pub accounted_sum: Option<Count>,
    /// Whether the sum equals the base value; `None` without supplied points.
    pub conserved: Option<bool>,
}

/// Compares `μ_BR(V, f_{t0})` at the origin with `μ_BR(V, f_0)`, optionally
/// adding the local values at candidate points of the polar curve.
pub fn polar_split_check<C: Scalar>(
    d: &Deformation<C>,
    v: &VarietyGerm<C>,
    t0: &C,
    extra_points: &[Vec<C>],
    opts: &LocalOptions,
) -> Result<SplitReport<C>> {
    if t0.is_zero() {
        return Err(Error::InvalidArgument("t0 must be nonzero".into()));
    }
    let base_value = match bruce_roberts_number(&d.base()?, v, opts)? {
        Count::Finite(n) => n,
        Count::Infinite => return Err(Error::InfiniteBase),
    };
    let ft = d.specialize(t0)?;
    let local_at_origin = bruce_roberts_number(&ft, v, opts)?;
    let split = matches!(local_at_origin, Count::Finite(n) if n < base_value);
    let accounted = extra_points
        .par_iter()
        .map(|p| Ok((p.clone(), bruce_roberts_number_at(&ft, v, p, opts)?)))
        .collect::<Result<Vec<_>>>()?;
    let (accounted_sum, conserved) = if extra_points.is_empty() {
        (None, None)
    } else {
        let sum = std::iter::once(local_at_origin)
            .chain(accounted.iter().map(|(_, c)| *c))
            .try_fold(0u64, |acc, c| c.finite().map(|n| acc + n));
        match sum {
            Some(s) => (Some(Count::Finite(s)), Some(s == base_value)),
            None => (Some(Count::Infinite), Some(false)),
        }
    };
    Ok(SplitReport {
        split,
        local_at_origin,
        base_value,
        accounted,
        accounted_sum,
        conserved,
    })
}

/// Outcome of a radical membership test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadicalMembership {
    /// `h^k` lies in the ideal of the local ring.
    Member {
        witness_power: u32,
    },
    /// `1 ∈ ⟨gens, 1 − y·h⟩` in the polynomial ring.
    MemberByRabinowitsch,
    NotMemberUpToKmax,
}

impl RadicalMembership {
    pub fn is_member(self) -> bool {
        !matches!(self, RadicalMembership::NotMemberUpToKmax)
    }
}

/// Tests `h ∈ √⟨gens⟩`: first powers `h^k`, `k ≤ kmax`, in the local ring,
/// then the Rabinowitsch trick in the polynomial ring. `fresh` names the
/// auxiliary variable; by default an unused name is chosen.
pub fn radical_membership<C: Scalar>(
    h: &Polynomial<C>,
    gens: &[Polynomial<C>],
    kmax: u32,
    fresh: Option<&str>,
) -> Result<RadicalMembership> {
    if kmax == 0 {
        return Err(Error::InvalidArgument("kmax must be at least 1".into()));
    }
    let ring = h.ring();
    if gens.iter().any(|g| g.ring() != ring) {
        return Err(Error::RingMismatch);
    }
    let gens: Vec<Polynomial<C>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if h.is_zero() {
        return Ok(RadicalMembership::Member { witness_power: 1 });
    }
    if gens.is_empty() {
        return Ok(RadicalMembership::NotMemberUpToKmax);
    }
    let local = standard_basis(&gens, &MonomialOrder::NegDegRevLex)?;
    let mut power = h.clone();
    for k in 1..=kmax {
        if local.contains(&power)? {
            return Ok(RadicalMembership::Member { witness_power: k });
        }
        power = power.checked_mul(h)?;
    }

    let name = match fresh {
        Some(n) => n.to_string(),
        None => {
            let mut candidates =
                std::iter::once("y".to_string()).chain((0..).map(|i| format!("y{i}")));
            candidates
                .find(|c| ring.index_of(c).is_none())
                .expect("infinite candidates")
        }
    };
    let big = ring.extend(&[name.as_str()])?;
    let none = BTreeMap::new();
    let mut lifted = gens
        .iter()
        .map(|g| g.substitute(&big, &none))
        .collect::<Result<Vec<_>>>()?;
    let y = Polynomial::var(&big, ring.nvars());
    lifted.push(&Polynomial::one(&big) - &(&y * &h.substitute(&big, &none)?));
    let gb = standard_basis(&lifted, &MonomialOrder::DegRevLex)?;
    Ok(if gb.is_unit_ideal() {
        RadicalMembership::MemberByRabinowitsch
    } else {
        RadicalMembership::NotMemberUpToKmax
    })
}

/// Status of a condition quantified over all curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcStatus {
    /// The indexed arc violates the inequality.
    RefutedWithWitness {
        arc: usize,
    },
    /// Refuted because a condition it implies is refuted.
    RefutedByImplication {
        witness_arc: usize,
    },
    ConsistentWithSuppliedArcs,
}

impl ArcStatus {
    pub fn is_refuted(self) -> bool {
        !matches!(self, ArcStatus::ConsistentWithSuppliedArcs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcCondition {
    pub status: ArcStatus,
    pub arcs_tested: usize,
    /// Arcs whose outcome was undecidable at their truncation order.
    pub indeterminate_arcs: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct ConditionReport<C> {
    /// (1_r): `μ_BR` constant over the samples.
    pub mu_br_constant: bool,
    /// (2_r): strict valuation inequality on every supplied arc.
    pub strict_valuation: ArcCondition,
    /// (3_r): weak valuation inequality on every supplied arc.
    pub weak_valuation: ArcCondition,
    /// (4_r): `∂F/∂t` integral over `J_F(Θ_V)`; equivalent to (3_r).
    pub integral_closure: ArcCondition,
    /// (5_r): `∂F/∂t ∈ √J_F(Θ_V)`.
    pub radical: bool,
    /// (6_r): no splitting of the polar curve at `t0`.
    pub polar_no_split: bool,
    pub constancy: Constancy<C>,
    pub arc_tests: Vec<ValuationTest>,
    pub radical_result: RadicalMembership,
    pub split: SplitReport<C>,
    pub ideal: Vec<Polynomial<C>>,
}

impl<C: Scalar> std::fmt::Debug for ConditionReport<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConditionReport")
            .field("mu_br_constant", &self.mu_br_constant)
            .field("strict_valuation", &self.strict_valuation)
            .field("weak_valuation", &self.weak_valuation)
            .field("integral_closure", &self.integral_closure)
            .field("radical", &self.radical)
            .field("polar_no_split", &self.polar_no_split)
            .field("constancy", &self.constancy)
            .field("arc_tests", &self.arc_tests)
            .field("radical_result", &self.radical_result)
            .field("split", &self.split)
            .field("ideal", &self.ideal)
            .finish()
    }
}

fn arc_condition(
    tests: &[ValuationTest],
    pick: impl Fn(&ValuationTest) -> Outcome,
) -> ArcCondition {
    let status = tests
        .iter()
        .position(|t| pick(t) == Outcome::Fails)
        .map_or(ArcStatus::ConsistentWithSuppliedArcs, |arc| {
            ArcStatus::RefutedWithWitness { arc }
        });
    let indeterminate_arcs = tests
        .iter()
        .enumerate()
        .filter(|(_, t)| pick(t) == Outcome::Indeterminate)
        .map(|(i, _)| i)
        .collect();
    ArcCondition {
        status,
        arcs_tested: tests.len(),
        indeterminate_arcs,
    }
}

/// Evaluates all six conditions. Arcs live in the ring of `F` (base
/// variables, then `t`).
pub fn condition_report<C: Scalar>(
    d: &Deformation<C>,
    v: &VarietyGerm<C>,
    samples: &SampleSet<C>,
    arcs: &[ArcCurve<C>],
    t0: &C,
    kmax: u32,
    opts: &LocalOptions,
) -> Result<ConditionReport<C>> {
    let constancy = mu_br_constancy(d, v, samples, opts)?;
    let ideal = d.relative_jacobian(v)?;
    let h = d.t_derivative()?;
    let arc_tests = arcs
        .par_iter()
        .map(|g| valuation_criterion_test(&h, &ideal, g))
        .collect::<Result<Vec<_>>>()?;
    let radical_result = radical_membership(&h, &ideal, kmax, None)?;
    let split = polar_split_check(d, v, t0, &[], opts)?;

    let mut strict_valuation = arc_condition(&arc_tests, |t| t.strict);
    let weak_valuation = arc_condition(&arc_tests, |t| t.weak);
    // (2_r) ⇒ (3_r) ⇔ (4_r)
    if let (ArcStatus::RefutedWithWitness { arc }, false) =
        (weak_valuation.status, strict_valuation.status.is_refuted())
    {
        strict_valuation.status = ArcStatus::RefutedByImplication { witness_arc: arc };
    }
    let integral_closure = weak_valuation.clone();

    Ok(ConditionReport {
        mu_br_constant: constancy.constant,
        strict_valuation,
        weak_valuation,
        integral_closure,
        radical: radical_result.is_member(),
        polar_no_split: !split.split,
        constancy,
        arc_tests,
        radical_result,
        split,
        ideal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::{TruncatedSeries, Valuation};
    use crate::poly::parse_polynomial;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Polynomial<Rational> {
        parse_polynomial(s, r).unwrap()
    }

    fn field(r: &Arc<PolyRing>, comps: &[&str]) -> VectorField<Rational> {
        VectorField::new(r, comps.iter().map(|c| p(r, c)).collect()).unwrap()
    }

    fn deformation(vars: &[&str], family: &str) -> Deformation<Rational> {
        let r = PolyRing::new(vars).unwrap();
        let f = p(&r.with_deformation_parameter().unwrap(), family);
        Deformation::new(&r, f).unwrap()
    }

    fn cusp(r: &Arc<PolyRing>) -> VarietyGerm<Rational> {
        VarietyGerm::new(
            r,
            vec![p(r, "x^3 - y^2")],
            vec![field(r, &["2*x", "3*y"]), field(r, &["2*y", "3*x^2"])],
        )
        .unwrap()
    }

    fn opts() -> LocalOptions {
        LocalOptions::default()
    }

    fn arc(parts: &[&[(u32, i64)]]) -> ArcCurve<Rational> {
        ArcCurve::new(
            parts
                .iter()
                .map(|ts| {
                    TruncatedSeries::from_terms(ts.iter().map(|&(e, c)| (e, q(c, 1))), 50).unwrap()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn specialization() {
        let d = deformation(&["x", "y"], "y^2 + x^4 + t*x^5");
        assert_eq!(d.base().unwrap(), p(d.base_ring(), "y^2 + x^4"));
        let d = deformation(&["x", "y"], "x^5 + y^2 + t*x^5");
        assert_eq!(
            d.specialize(&q(1, 1)).unwrap(),
            p(d.base_ring(), "2*x^5 + y^2")
        );
        let d = deformation(&["x", "y", "z"], "x*y + t*z");
        assert_eq!(
            d.specialize(&q(1, 5)).unwrap(),
            p(d.base_ring(), "x*y + 1/5*z")
        );
        assert_eq!(d.t_derivative().unwrap(), p(d.ring(), "z"));
    }

    #[test]
    fn parameters_must_be_instantiated() {
        let r = PolyRing::new(&["x", "y"]).unwrap();
        let full = r.extend(&["t", "a"]).unwrap();
        let mut d =
            Deformation::with_parameters(&r, p(&full, "y + (a + t)*x^2"), vec![("a".into(), None)])
                .unwrap();
        assert_eq!(
            d.specialize(&q(0, 1)),
            Err(Error::UninstantiatedParameter("a".into()))
        );
        d.set_parameter("a", q(2, 1)).unwrap();
        assert_eq!(d.base().unwrap(), p(&r, "y + 2*x^2"));
        assert!(d.set_parameter("b", q(1, 1)).is_err());
    }

    #[test]
    fn deformation_must_vanish_at_origin() {
        let r = PolyRing::new(&["x"]).unwrap();
        let f = p(&r.with_deformation_parameter().unwrap(), "x^2 + t");
        assert!(matches!(
            Deformation::new(&r, f),
            Err(Error::NonzeroConstantTerm { .. })
        ));
    }

    #[test]
    fn sample_sets() {
        assert!(SampleSet::new(vec![q(1, 2)]).is_err());
        assert!(SampleSet::new(vec![q(0, 1), q(1, 2), q(2, 4)]).is_err());
        let s = SampleSet::<Rational>::default();
        assert_eq!(s.values(), [q(0, 1), q(1, 7), q(1, 11), q(1, 2)]);
    }

    #[test]
    fn cusp_family_constancy() {
        let d = deformation(&["x", "y"], "y^2 + x^4 + t*x^5");
        let v = cusp(d.base_ring());
        let s = SampleSet::new(vec![q(0, 1), q(1, 3), q(1, 2)]).unwrap();
        let c = mu_br_constancy(&d, &v, &s, &opts()).unwrap();
        assert!(c.constant);
        assert!(c.values.iter().all(|(_, n)| *n == Count::Finite(8)));
        let split = polar_split_check(&d, &v, &q(1, 3), &[], &opts()).unwrap();
        assert!(!split.split);
        assert_eq!(
            (split.local_at_origin, split.base_value),
            (Count::Finite(8), 8)
        );
    }

    #[test]
    fn trivial_family() {
        let d = deformation(&["x", "y"], "y^2 + x^4");
        let v = cusp(d.base_ring());
        assert!(
            mu_br_constancy(&d, &v, &SampleSet::default(), &opts())
                .unwrap()
                .constant
        );
        assert!(
            !polar_split_check(&d, &v, &q(1, 2), &[], &opts())
                .unwrap()
                .split
        );
    }

    fn smooth_codim_two() -> (Deformation<Rational>, VarietyGerm<Rational>) {
        let d = deformation(
            &["x1", "x2", "x3", "x4"],
            "x1^2 + x2^2 + x3^2 + x4^2 + t*x1",
        );
        let r = d.base_ring().clone();
        let fields = [
            ["x1", "0", "0", "0"],
            ["0", "x2", "0", "0"],
            ["x2", "0", "0", "0"],
            ["0", "x1", "0", "0"],
            ["0", "0", "1", "0"],
            ["0", "0", "0", "1"],
        ]
        .iter()
        .map(|c| field(&r, c))
        .collect();
        let v = VarietyGerm::new(&r, vec![p(&r, "x1"), p(&r, "x2")], fields).unwrap();
        (d, v)
    }

    #[test]
    fn conservation_fails_on_smooth_codim_two() {
        let (d, v) = smooth_codim_two();
        let s = SampleSet::new(vec![q(0, 1), q(1, 2)]).unwrap();
        let c = mu_br_constancy(&d, &v, &s, &opts()).unwrap();
        assert!(!c.constant);
        assert_eq!(
            c.values.iter().map(|(_, n)| *n).collect::<Vec<_>>(),
            [Count::Finite(3), Count::Finite(1)]
        );
        let pt = vec![q(-1, 4), q(0, 1), q(0, 1), q(0, 1)];
        let r = polar_split_check(&d, &v, &q(1, 2), &[pt], &opts()).unwrap();
        assert!(r.split);
        assert_eq!(r.local_at_origin, Count::Finite(1));
        assert_eq!(r.base_value, 3);
        assert_eq!(r.accounted[0].1, Count::Finite(1));
        assert_eq!(r.accounted_sum, Some(Count::Finite(2)));
        assert_eq!(r.conserved, Some(false));
        assert!(polar_split_check(&d, &v, &q(0, 1), &[], &opts()).is_err());
    }

    #[test]
    fn radicals() {
        let r = PolyRing::new(&["x", "y"]).unwrap();
        assert_eq!(
            radical_membership(&p(&r, "x"), &[p(&r, "x^2")], 12, None),
            Ok(RadicalMembership::Member { witness_power: 2 })
        );
        assert_eq!(
            radical_membership(&p(&r, "y"), &[p(&r, "x")], 12, None),
            Ok(RadicalMembership::NotMemberUpToKmax)
        );
        // locally a unit multiple, so only the global test sees it
        assert_eq!(
            radical_membership(&p(&r, "x"), &[p(&r, "x^3 + x^2*y")], 1, None),
            Ok(RadicalMembership::NotMemberUpToKmax)
        );
        assert_eq!(
            radical_membership(&p(&r, "x*(x + y)"), &[p(&r, "x^3 + x^2*y")], 1, None),
            Ok(RadicalMembership::MemberByRabinowitsch)
        );
        assert_eq!(
            radical_membership(&p(&r, "x"), &[p(&r, "y")], 1, Some("x")),
            Err(Error::NameCollision("x".into()))
        );
    }

    #[test]
    fn relative_jacobian_matches_hand_expansion() {
        let d = deformation(&["x", "y"], "x^5 + y^2 + t*x^5");
        let v = cusp(d.base_ring());
        let gens = d.relative_jacobian(&v).unwrap();
        assert_eq!(gens[0], p(d.ring(), "10*x^5 + 6*y^2 + 10*t*x^5"));
        assert_eq!(gens[1], p(d.ring(), "10*x^4*y + 6*x^2*y + 10*t*x^4*y"));
    }

    #[test]
    fn report_on_cusp_family() {
        let d = deformation(&["x", "y"], "y^2 + x^4 + t*x^5");
        let v = cusp(d.base_ring());
        let arcs = [
            arc(&[&[(1, 1)], &[(2, 1)], &[]]),
            arc(&[&[(1, 1)], &[(3, 1)], &[]]),
            arc(&[&[(2, 1)], &[(1, 1)], &[]]),
            arc(&[&[(1, 1)], &[], &[(1, 1)]]),
        ];
        let rep =
            condition_report(&d, &v, &SampleSet::default(), &arcs, &q(1, 7), 12, &opts()).unwrap();
        assert!(rep.mu_br_constant);
        assert_eq!(
            rep.strict_valuation.status,
            ArcStatus::ConsistentWithSuppliedArcs
        );
        assert_eq!(
            rep.weak_valuation.status,
            ArcStatus::ConsistentWithSuppliedArcs
        );
        assert!(rep.radical);
        assert!(rep.polar_no_split);
        assert_eq!(rep.arc_tests[0].h_value, Valuation::Finite(5));
        assert_eq!(rep.arc_tests[0].infimum, Valuation::Finite(4));
    }

    #[test]
    fn report_propagates_weak_refutation() {
        let r = PolyRing::new(&["x", "y", "z"]).unwrap();
        let full = r.extend(&["t", "a"]).unwrap();
        let d = Deformation::with_parameters(
            &r,
            p(&full, "y + (a + t)*x^2"),
            vec![("a".into(), Some(q(2, 1)))],
        )
        .unwrap();
        let phi = p(&r, "2*x^2*y^2 + y^3 - z^2 + x^4*y");
        let fields = [
            ["2*x", "4*y", "6*z"],
            ["0", "2*z", "x^4 + 4*x^2*y + 3*y^2"],
            ["x^2 + 3*y", "-4*x*y", "0"],
            ["z", "0", "2*x^3*y + 2*x*y^2"],
        ]
        .iter()
        .map(|c| field(&r, c))
        .collect();
        let v = VarietyGerm::new(&r, vec![phi], fields).unwrap();
        let witness = arc(&[&[(1, 1)], &[(2, -2)], &[], &[]]);
        let rep = condition_report(
            &d,
            &v,
            &SampleSet::default(),
            &[witness],
            &q(1, 7),
            12,
            &opts(),
        )
        .unwrap();
        assert!(rep.mu_br_constant);
        assert!(rep
            .constancy
            .values
            .iter()
            .all(|(_, c)| *c == Count::Finite(3)));
        assert_eq!(
            rep.weak_valuation.status,
            ArcStatus::RefutedWithWitness { arc: 0 }
        );
        assert_eq!(
            rep.integral_closure.status,
            ArcStatus::RefutedWithWitness { arc: 0 }
        );
        assert!(rep.strict_valuation.status.is_refuted());
        assert_eq!(
            rep.radical_result,
            RadicalMembership::Member { witness_power: 2 }
        );
        assert!(rep.polar_no_split);
    }
}
