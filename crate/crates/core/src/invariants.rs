//! Singularity invariants of germs at the origin: Milnor number,
//! multiplicity, Bruce–Roberts number relative to supplied tangent vector
//! fields, and the Lê number of a function on a hypersurface.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{
    quotient_dimension, standard_basis, MonomialOrder, PolyRing, Polynomial, QuotientDim,
    WeightSystem, DEFAULT_DIM_BOUND,
};
use crate::scalar::Scalar;

/// A finite dimension or `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Count {
    Finite(u64),
    Infinite,
}

impl Count {
    pub fn finite(self) -> Option<u64> {
        match self {
            Count::Finite(n) => Some(n),
            Count::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Count::Finite(_))
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite => f.write_str("infinite"),
        }
    }
}

/// Settings for local dimension counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalOptions {
    /// Must be a local ordering.
    pub order: MonomialOrder,
    pub dim_bound: u64,
}

impl Default for LocalOptions {
    fn default() -> Self {
        LocalOptions {
            order: MonomialOrder::NegDegRevLex,
            dim_bound: DEFAULT_DIM_BOUND,
        }
    }
}

/// `dim_C O_n / ⟨gens⟩` in the local ring at the origin. Zero generators are
/// dropped; the zero ideal has infinite colength.
pub fn local_dimension<C: Scalar>(
    ring: &Arc<PolyRing>,
    gens: &[Polynomial<C>],
    opts: &LocalOptions,
) -> Result<Count> {
    if !opts.order.is_local() {
        return Err(Error::InvalidArgument(format!(
            "{} is not a local ordering",
            opts.order
        )));
    }
    let gens: Vec<Polynomial<C>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Ok(if ring.nvars() == 0 {
            Count::Finite(1)
        } else {
            Count::Infinite
        });
    }
    let sb = standard_basis(&gens, &opts.order)?;
    match quotient_dimension(&sb, opts.dim_bound) {
        QuotientDim::Finite(n) => Ok(Count::Finite(n)),
        QuotientDim::Infinite => Ok(Count::Infinite),
        QuotientDim::ExceedsBound => Err(Error::BoundExceeded {
            bound: opts.dim_bound,
        }),
    }
}

/// An `n`-tuple of polynomials, read as `Σ ξ_j ∂/∂x_j`.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField<C> {
    components: Vec<Polynomial<C>>,
}

impl<C: Scalar> VectorField<C> {
    pub fn new(ring: &Arc<PolyRing>, components: Vec<Polynomial<C>>) -> Result<Self> {
        if components.len() != ring.nvars() {
            return Err(Error::ComponentCount {
                expected: ring.nvars(),
                found: components.len(),
            });
        }
        if components.iter().any(|c| c.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(VectorField { components })
    }

    /// `∂/∂x_i`.
    pub fn coordinate(ring: &Arc<PolyRing>, i: usize) -> Self {
        let components = (0..ring.nvars())
            .map(|j| {
                if i == j {
                    Polynomial::one(ring)
                } else {
                    Polynomial::zero(ring)
                }
            })
            .collect();
        VectorField { components }
    }

    pub fn components(&self) -> &[Polynomial<C>] {
        &self.components
    }

    /// Applies the same variable substitution to every component.
    pub fn substitute(
        &self,
        target: &Arc<PolyRing>,
        assignment: &BTreeMap<String, Polynomial<C>>,
    ) -> Result<Self> {
        let components = self
            .components
            .iter()
            .map(|c| c.substitute(target, assignment))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorField { components })
    }
}

impl<C: Scalar> fmt::Debug for VectorField<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Scalar> fmt::Display for VectorField<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The germ `(V, 0)` given by its equations together with supplied
/// generators of `Θ_V`, the module of vector fields tangent to `V`.
///
/// Every generator is checked for tangency against every equation on
/// construction. An empty equation list means `V` is the whole space.
#[derive(Clone)]
pub struct VarietyGerm<C> {
    ring: Arc<PolyRing>,
    equations: Vec<Polynomial<C>>,
    fields: Vec<VectorField<C>>,
}

impl<C: Scalar> VarietyGerm<C> {
    pub fn new(
        ring: &Arc<PolyRing>,
        equations: Vec<Polynomial<C>>,
        fields: Vec<VectorField<C>>,
    ) -> Result<Self> {
        if equations.iter().any(|e| e.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        for (index, xi) in fields.iter().enumerate() {
            if xi.components.len() != ring.nvars() {
                return Err(Error::ComponentCount {
                    expected: ring.nvars(),
                    found: xi.components.len(),
                });
            }
            if let Some(equation) = first_non_tangent(&equations, xi)? {
                return Err(Error::NotTangent { index, equation });
            }
        }
        Ok(VarietyGerm {
            ring: ring.clone(),
            equations,
            fields,
        })
    }

    /// `V = C^n`, with `Θ_V` generated by the coordinate fields.
    pub fn whole_space(ring: &Arc<PolyRing>) -> Self {
        let fields = (0..ring.nvars())
            .map(|i| VectorField::coordinate(ring, i))
            .collect();
        VarietyGerm {
            ring: ring.clone(),
            equations: Vec::new(),
            fields,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn equations(&self) -> &[Polynomial<C>] {
        &self.equations
    }

    pub fn fields(&self) -> &[VectorField<C>] {
        &self.fields
    }

    /// The same variety and fields in coordinates centred at `point`
    /// (`x ↦ x + point`). Tangency is preserved by translation.
    pub fn translate(&self, point: &[C]) -> Result<Self> {
        let shift = translation(&self.ring, point)?;
        let equations = self
            .equations
            .iter()
            .map(|e| e.substitute(&self.ring, &shift))
            .collect::<Result<Vec<_>>>()?;
        let fields = self
            .fields
            .iter()
            .map(|xi| xi.substitute(&self.ring, &shift))
            .collect::<Result<Vec<_>>>()?;
        Ok(VarietyGerm {
            ring: self.ring.clone(),
            equations,
            fields,
        })
    }
}

impl<C: Scalar> fmt::Debug for VarietyGerm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VarietyGerm")
            .field("ring", &self.ring)
            .field("equations", &self.equations)
            .field("fields", &self.fields)
            .finish()
    }
}

fn translation<C: Scalar>(
    ring: &Arc<PolyRing>,
    point: &[C],
) -> Result<BTreeMap<String, Polynomial<C>>> {
    if point.len() != ring.nvars() {
        return Err(Error::InvalidArgument(format!(
            "point has {} coordinates, ring has {} variables",
            point.len(),
            ring.nvars()
        )));
    }
    Ok(ring
        .vars()
        .iter()
        .zip(point)
        .enumerate()
        .map(|(i, (name, c))| {
            (
                name.clone(),
                &Polynomial::var(ring, i) + &Polynomial::constant(ring, c.clone()),
            )
        })
        .collect())
}

fn first_non_tangent<C: Scalar>(
    equations: &[Polynomial<C>],
    xi: &VectorField<C>,
) -> Result<Option<usize>> {
    let eqs: Vec<Polynomial<C>> = equations.iter().filter(|e| !e.is_zero()).cloned().collect();
    if eqs.is_empty() {
        return Ok(None);
    }
    let gb = standard_basis(&eqs, &MonomialOrder::DegRevLex)?;
    for (j, e) in equations.iter().enumerate() {
        if !gb.contains(&apply_vector_field(e, xi)?)? {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// The `n` partial derivatives, zeros included.
pub fn jacobian_ideal<C: Scalar>(f: &Polynomial<C>) -> Vec<Polynomial<C>> {
    (0..f.ring().nvars()).map(|i| f.derivative(i)).collect()
}

fn require_vanishing<C: Scalar>(f: &Polynomial<C>) -> Result<()> {
    let c = f.constant_term();
    if c.is_zero() {
        Ok(())
    } else {
        Err(Error::NonzeroConstantTerm {
            constant: c.to_string(),
        })
    }
}

/// `μ(f) = dim O_n / J_f`; infinite for non-isolated singularities.
pub fn milnor_number<C: Scalar>(f: &Polynomial<C>, opts: &LocalOptions) -> Result<Count> {
    require_vanishing(f)?;
    local_dimension(f.ring(), &jacobian_ideal(f), opts)
}

/// Lowest total degree in the expansion of `f`.
pub fn multiplicity<C: Scalar>(f: &Polynomial<C>) -> Result<u64> {
    f.min_degree().ok_or(Error::ZeroPolynomial("multiplicity"))
}

/// `df(ξ) = Σ_j ∂f/∂x_j · ξ_j`.
pub fn apply_vector_field<C: Scalar>(
    f: &Polynomial<C>,
    xi: &VectorField<C>,
) -> Result<Polynomial<C>> {
    let n = f.ring().nvars();
    if xi.components.len() != n {
        return Err(Error::ComponentCount {
            expected: n,
            found: xi.components.len(),
        });
    }
    let mut out = Polynomial::zero(f.ring());
    for (j, c) in xi.components.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let d = f.derivative(j);
        if !d.is_zero() {
            out = out.checked_add(&d.checked_mul(c)?)?;
        }
    }
    Ok(out)
}

/// `ξ(Φ) ∈ ⟨Φ⟩` in the polynomial ring.
pub fn check_tangency<C: Scalar>(phi: &Polynomial<C>, xi: &VectorField<C>) -> Result<bool> {
    if phi.is_zero() {
        return Err(Error::ZeroPolynomial("tangency equation"));
    }
    Ok(first_non_tangent(std::slice::from_ref(phi), xi)?.is_none())
}

/// Generators `df(ξ_1), …, df(ξ_p)` of `J_f(Θ_V)`, zeros included.
pub fn bruce_roberts_ideal<C: Scalar>(
    f: &Polynomial<C>,
    v: &VarietyGerm<C>,
) -> Result<Vec<Polynomial<C>>> {
    if f.ring() != &v.ring {
        return Err(Error::RingMismatch);
    }
    v.fields
        .iter()
        .map(|xi| apply_vector_field(f, xi))
        .collect()
}

/// `μ_BR(V, f) = dim O_n / J_f(Θ_V)`; infinite iff `f` is not finitely
/// determined with respect to `V`-preserving coordinate changes.
pub fn bruce_roberts_number<C: Scalar>(
    f: &Polynomial<C>,
    v: &VarietyGerm<C>,
    opts: &LocalOptions,
) -> Result<Count> {
    require_vanishing(f)?;
    local_dimension(f.ring(), &bruce_roberts_ideal(f, v)?, opts)
}

/// `μ_BR(V, f, p)`: the Bruce–Roberts number of the germ of `f` at `point`.
pub fn bruce_roberts_number_at<C: Scalar>(
    f: &Polynomial<C>,
    v: &VarietyGerm<C>,
    point: &[C],
    opts: &LocalOptions,
) -> Result<Count> {
    let shift = translation(f.ring(), point)?;
    let moved = f.substitute(f.ring(), &shift)?;
    let moved = &moved - &Polynomial::constant(f.ring(), moved.constant_term());
    bruce_roberts_number(&moved, &v.translate(point)?, opts)
}

/// 2×2 minors of the Jacobian matrix of `(phi, f)`.
pub fn jacobian_minors<C: Scalar>(
    phi: &Polynomial<C>,
    f: &Polynomial<C>,
) -> Result<Vec<Polynomial<C>>> {
    if phi.ring() != f.ring() {
        return Err(Error::RingMismatch);
    }
    let dphi = jacobian_ideal(phi);
    let df = jacobian_ideal(f);
    let n = dphi.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(&(&dphi[i] * &df[j]) - &(&dphi[j] * &df[i]));
        }
    }
    Ok(out)
}

/// Lê number `μ_L(f)` of `f` on the hypersurface `{phi = 0}`, i.e. the
/// Milnor number of the complete intersection `{phi = f = 0}`, computed
/// through `μ(phi) + μ(phi, f) = dim O_n / ⟨phi, 2×2 minors of Jac(phi, f)⟩`.
pub fn le_milnor_number<C: Scalar>(
    phi: &Polynomial<C>,
    f: &Polynomial<C>,
    opts: &LocalOptions,
) -> Result<Count> {
    require_vanishing(phi)?;
    require_vanishing(f)?;
    let mu_phi = match milnor_number(phi, opts)? {
        Count::Finite(n) => n,
        Count::Infinite => return Err(Error::NonIsolated("the variety equation")),
    };
    let mut gens = vec![phi.clone()];
    gens.extend(jacobian_minors(phi, f)?);
    Ok(match local_dimension(phi.ring(), &gens, opts)? {
        Count::Finite(total) => Count::Finite(total.checked_sub(mu_phi).ok_or_else(|| {
            Error::InvalidArgument(
                "minor-ideal colength below the Milnor number; not an ICIS".into(),
            )
        })?),
        Count::Infinite => Count::Infinite,
    })
}

/// Outcome of a quasihomogeneity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quasihomogeneity {
    Yes { degree: u64 },
    No,
}

/// Whether every monomial of `f` has the same weighted degree (and, when the
/// weight system carries one, that it equals the prescribed degree).
pub fn is_quasihomogeneous<C: Scalar>(
    f: &Polynomial<C>,
    w: &WeightSystem,
) -> Result<Quasihomogeneity> {
    if w.len() != f.ring().nvars() {
        return Err(Error::InvalidWeights(format!(
            "{} weights for {} variables",
            w.len(),
            f.ring().nvars()
        )));
    }
    let mut degrees = f.terms().map(|(m, _)| m.weighted_degree(w.weights()));
    let Some(d) = degrees.next() else {
        return Err(Error::ZeroPolynomial("quasihomogeneity"));
    };
    if degrees.any(|e| e != d) || w.degree().is_some_and(|wd| wd != d) {
        return Ok(Quasihomogeneity::No);
    }
    Ok(Quasihomogeneity::Yes { degree: d })
}
