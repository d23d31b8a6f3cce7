//! Standard bases and normal forms.
//!
//! Global orderings use Buchberger's algorithm with the product and chain
//! criteria. Local orderings use Mora's tangent cone algorithm: the weak
//! normal form picks the reducer of minimal écart and lets the current
//! remainder join the reducer set whenever its écart is smaller than the
//! chosen reducer's. Its result `h` satisfies `u·f - h ∈ I` for some unit `u`
//! of the local ring. Once the leading ideal has finite colength, terms past
//! its highest corner lie in the ideal and are dropped.
//!
//! On positive-dimensional local ideals the weak normal form can grow
//! coefficients without bound. The tangent cone computation therefore runs
//! under a budget, and past it falls back to Lazard's method: homogenize with
//! an extra variable `x0`, compute a Gröbner basis for a degree-compatible
//! ordering and set `x0 = 1`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use super::{Monomial, MonomialOrder, PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default cap on the number of standard monomials counted.
pub const DEFAULT_DIM_BOUND: u64 = 10_000;

trait TermOrder {
    fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering;
    fn degree(&self, m: &Monomial) -> u64;
}

impl TermOrder for MonomialOrder {
    fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        MonomialOrder::cmp(self, a, b)
    }

    fn degree(&self, m: &Monomial) -> u64 {
        MonomialOrder::degree(self, m)
    }
}

/// Ordering on `K[x, x0]` (homogenizing variable last): total degree first,
/// then the local ordering on the `x`-part.
struct Homogenized<'a>(&'a MonomialOrder);

impl TermOrder for Homogenized<'_> {
    fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        let n = ea.len() - 1;
        self.degree(a)
            .cmp(&self.degree(b))
            .then_with(|| self.0.cmp_exponents(&ea[..n], &eb[..n]))
    }

    fn degree(&self, m: &Monomial) -> u64 {
        let e = m.exponents();
        let n = e.len() - 1;
        self.0.degree_of(&e[..n]) + u64::from(e[n])
    }
}

/// Terms in ascending order under the active ordering; the leading term is
/// last.
#[derive(Clone, Debug)]
struct Sorted<C> {
    terms: Vec<(Monomial, C)>,
}

impl<C: Scalar> Sorted<C> {
    fn from_poly(p: &Polynomial<C>, order: &impl TermOrder) -> Self {
        let mut terms: Vec<(Monomial, C)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Sorted { terms }
    }

    fn to_poly(&self, ring: &Arc<PolyRing>) -> Polynomial<C> {
        Polynomial::from_terms(ring, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero").0
    }

    fn lc(&self) -> &C {
        &self.terms.last().expect("nonzero").1
    }

    fn ecart(&self, order: &impl TermOrder) -> u64 {
        let top = self
            .terms
            .iter()
            .map(|(m, _)| order.degree(m))
            .max()
            .unwrap_or(0);
        top.saturating_sub(order.degree(self.lm()))
    }

    fn make_monic(&mut self) {
        if self.is_zero() {
            return;
        }
        let inv = C::one() / self.lc().clone();
        if inv.is_one() {
            return;
        }
        for (_, c) in &mut self.terms {
            *c = c.clone() * inv.clone();
        }
    }

    /// `self - coef * shift * other`, merged in ascending order.
    fn sub_mul(
        &self,
        coef: &C,
        shift: &Monomial,
        other: &Sorted<C>,
        order: &impl TermOrder,
    ) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(m, c)| (m.mul(shift), c.clone() * coef.clone()))
            .peekable();
        loop {
            let step = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            };
            match step {
                Ordering::Less => out.push(a.next().unwrap().clone()),
                Ordering::Greater => {
                    let (m, c) = b.next().unwrap();
                    out.push((m, -c));
                }
                Ordering::Equal => {
                    let (m, ca) = a.next().unwrap().clone();
                    let (_, cb) = b.next().unwrap();
                    let c = ca - cb;
                    if !c.is_zero() {
                        out.push((m, c));
                    }
                }
            }
        }
        Sorted { terms: out }
    }

    /// Cancels the leading term of `self` against `g`, whose leading monomial
    /// must divide it.
    fn reduce_lead(&self, g: &Sorted<C>, order: &impl TermOrder) -> Self {
        let shift = g.lm().quotient_of(self.lm());
        let coef = self.lc().clone() / g.lc().clone();
        self.sub_mul(&coef, &shift, g, order)
    }
}

/// Full division remainder for global orderings: no term of the result is
/// divisible by a leading monomial of `basis`.
fn division_remainder<C: Scalar>(
    f: Sorted<C>,
    basis: &[Sorted<C>],
    order: &impl TermOrder,
) -> Sorted<C> {
    let mut h = f;
    let mut rem: Vec<(Monomial, C)> = Vec::new();
    while !h.is_zero() {
        match basis.iter().find(|g| g.lm().divides(h.lm())) {
            Some(g) => h = h.reduce_lead(g, order),
            None => rem.push(h.terms.pop().unwrap()),
        }
    }
    rem.reverse();
    Sorted { terms: rem }
}

/// Limits on a single weak normal form: reduction steps and coefficient
/// height in bits.
#[derive(Clone, Copy)]
struct Budget {
    steps: usize,
    height: u64,
}

impl Budget {
    const UNLIMITED: Budget = Budget {
        steps: usize::MAX,
        height: u64::MAX,
    };
    const TANGENT_CONE: Budget = Budget {
        steps: 20_000,
        height: 1024,
    };
}

/// Mora's weak normal form with écart-minimal reducer selection; ties go to
/// the lowest index (basis elements first, then remainders added on the way).
///
/// With a highest corner `k`, every monomial of degree at least `k` lies in
/// the ideal, and such terms are discarded as they appear.
fn mora_normal_form<C: Scalar>(
    f: Sorted<C>,
    basis: &[Sorted<C>],
    ecarts: &[u64],
    order: &MonomialOrder,
    corner: Option<u64>,
    budget: Budget,
) -> Option<Sorted<C>> {
    let truncate = |h: &mut Sorted<C>| {
        if let Some(k) = corner {
            h.terms.retain(|(m, _)| order.degree(m) < k);
        }
    };
    let mut h = f;
    truncate(&mut h);
    let mut extra: Vec<(Sorted<C>, u64)> = Vec::new();
    for _ in 0..budget.steps {
        if h.is_zero() {
            return Some(h);
        }
        if h.terms.iter().any(|(_, c)| c.height() > budget.height) {
            return None;
        }
        let lm = h.lm();
        let mut best: Option<(u64, usize)> = None;
        let candidates = basis
            .iter()
            .zip(ecarts.iter().copied())
            .chain(extra.iter().map(|(g, e)| (g, *e)))
            .enumerate();
        for (k, (g, e)) in candidates {
            if g.lm().divides(lm) && best.is_none_or(|(be, _)| e < be) {
                best = Some((e, k));
                if e == 0 {
                    break;
                }
            }
        }
        let Some((ge, k)) = best else {
            return Some(h);
        };
        let he = h.ecart(order);
        let reduced = if k < basis.len() {
            h.reduce_lead(&basis[k], order)
        } else {
            h.reduce_lead(&extra[k - basis.len()].0, order)
        };
        if ge > he {
            extra.push((h, he));
        }
        h = reduced;
        truncate(&mut h);
    }
    None
}

/// Smallest `k` such that every monomial of degree at least `k` is divisible
/// by one of `leading`, if the standard monomials are finite in number and
/// few enough to enumerate.
fn highest_corner(leading: &[Monomial], nvars: usize, order: &MonomialOrder) -> Option<u64> {
    let mut top: Option<u64> = None;
    let done = for_each_standard_monomial(leading, nvars, 1_000_000, |m| {
        let d = order.degree(m);
        top = Some(top.map_or(d, |t| t.max(d)));
    });
    match done {
        QuotientDim::Finite(_) => Some(top.map_or(0, |t| t + 1)),
        _ => None,
    }
}

/// Minimal generators of the monomial ideal of all monomials of degree at
/// least `k`.
fn corner_generators(nvars: usize, k: u64, order: &MonomialOrder) -> Vec<Monomial> {
    fn rec(i: usize, e: &mut Vec<u32>, k: u64, order: &MonomialOrder, out: &mut Vec<Monomial>) {
        let d = order.degree_of(e);
        if d >= k {
            let minimal = (0..e.len()).all(|j| {
                if e[j] == 0 {
                    return true;
                }
                e[j] -= 1;
                let below = order.degree_of(e) < k;
                e[j] += 1;
                below
            });
            if minimal {
                out.push(Monomial::from_exponents(e.clone()));
            }
            return;
        }
        if i == e.len() {
            return;
        }
        loop {
            rec(i + 1, e, k, order, out);
            if order.degree_of(e) >= k {
                break;
            }
            e[i] += 1;
        }
        e[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, &mut vec![0; nvars], k, order, &mut out);
    out
}

fn corner_of<C: Scalar>(basis: &[Sorted<C>], nvars: usize, order: &MonomialOrder) -> Option<u64> {
    if !order.is_local() {
        return None;
    }
    let leading: Vec<Monomial> = basis.iter().map(|g| g.lm().clone()).collect();
    highest_corner(&leading, nvars, order)
}

fn reduce<C: Scalar>(
    f: Sorted<C>,
    basis: &[Sorted<C>],
    ecarts: &[u64],
    order: &MonomialOrder,
    corner: Option<u64>,
) -> Sorted<C> {
    if order.is_local() {
        mora_normal_form(f, basis, ecarts, order, corner, Budget::UNLIMITED).expect("unbounded")
    } else {
        division_remainder(f, basis, order)
    }
}

fn spoly<C: Scalar>(f: &Sorted<C>, g: &Sorted<C>, order: &impl TermOrder) -> Sorted<C> {
    let lcm = f.lm().lcm(g.lm());
    let sf = f.lm().quotient_of(&lcm);
    let sg = g.lm().quotient_of(&lcm);
    let zero = Sorted { terms: Vec::new() };
    // (lcm/lm f)·f/lc(f) - (lcm/lm g)·g/lc(g)
    let a = zero.sub_mul(&(-(C::one() / f.lc().clone())), &sf, f, order);
    a.sub_mul(&(C::one() / g.lc().clone()), &sg, g, order)
}

fn validate<C: Scalar>(polys: &[Polynomial<C>]) -> Result<Arc<PolyRing>> {
    let ring = polys
        .first()
        .map(|p| p.ring().clone())
        .ok_or(Error::InvalidArgument(
            "an ideal needs at least one nonzero generator".into(),
        ))?;
    for (index, p) in polys.iter().enumerate() {
        if p.ring() != &ring {
            return Err(Error::RingMismatch);
        }
        if p.is_zero() {
            return Err(Error::ZeroGenerator { index });
        }
    }
    Ok(ring)
}

/// Normal form of `p` with respect to `basis`.
///
/// Global orderings give the fully reduced division remainder. Local
/// orderings give Mora's weak normal form, which is zero iff `p` lies in the
/// ideal of the local ring provided `basis` is a standard basis.
pub fn normal_form<C: Scalar>(
    p: &Polynomial<C>,
    basis: &[Polynomial<C>],
    order: &MonomialOrder,
) -> Result<Polynomial<C>> {
    order.check_arity(p.ring().nvars())?;
    if !basis.is_empty() {
        let ring = validate(basis)?;
        if &ring != p.ring() {
            return Err(Error::RingMismatch);
        }
    }
    let sorted: Vec<Sorted<C>> = basis.iter().map(|g| Sorted::from_poly(g, order)).collect();
    let ecarts: Vec<u64> = sorted.iter().map(|g| g.ecart(order)).collect();
    let corner = corner_of(&sorted, p.ring().nvars(), order);
    Ok(reduce(Sorted::from_poly(p, order), &sorted, &ecarts, order, corner).to_poly(p.ring()))
}

/// A completed standard basis together with the generators it was built from.
#[derive(Clone)]
pub struct StandardBasis<C> {
    ring: Arc<PolyRing>,
    order: MonomialOrder,
    generators: Vec<Polynomial<C>>,
    basis: Vec<Polynomial<C>>,
    sorted: Vec<Sorted<C>>,
    ecarts: Vec<u64>,
    corner: Option<u64>,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Buchberger's algorithm with the product and chain criteria. Input
/// elements must be monic; the output is a Gröbner basis, not yet minimal.
///
/// After each new element, `augment` may return further monic generators,
/// which join the basis as if they had been part of the input.
fn buchberger<C: Scalar, O: TermOrder>(
    gens: Vec<Sorted<C>>,
    order: &O,
    mut augment: impl FnMut(&[Sorted<C>]) -> Vec<Sorted<C>>,
) -> Vec<Sorted<C>> {
    let mut basis: Vec<Sorted<C>> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let push = |h: Sorted<C>,
                basis: &mut Vec<Sorted<C>>,
                pairs: &mut Vec<Pair>,
                pending: &mut HashSet<(usize, usize)>| {
        let j = basis.len();
        for (i, g) in basis.iter().enumerate() {
            if g.lm().is_coprime(h.lm()) {
                continue;
            }
            pairs.push(Pair {
                i,
                j,
                lcm: g.lm().lcm(h.lm()),
            });
            pending.insert((i, j));
        }
        basis.push(h);
    };

    for g in gens {
        push(g, &mut basis, &mut pairs, &mut pending);
    }
    for g in augment(&basis) {
        push(g, &mut basis, &mut pairs, &mut pending);
    }

    while !pairs.is_empty() {
        let pick = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                order
                    .cmp(&pa.lcm, &pb.lcm)
                    .then((pa.j, pa.i).cmp(&(pb.j, pb.i)))
            })
            .unwrap();
        let Pair { i, j, lcm } = pairs.swap_remove(pick);
        pending.remove(&(i, j));

        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let s = spoly(&basis[i], &basis[j], order);
        let mut h = division_remainder(s, &basis, order);
        if !h.is_zero() {
            h.make_monic();
            push(h, &mut basis, &mut pairs, &mut pending);
            for g in augment(&basis) {
                push(g, &mut basis, &mut pairs, &mut pending);
            }
        }
    }
    basis
}

/// Drops elements whose leading monomial is divisible by another's.
fn minimalize<C: Scalar>(basis: Vec<Sorted<C>>) -> Vec<Sorted<C>> {
    let keep: Vec<bool> = (0..basis.len())
        .map(|k| {
            !(0..basis.len()).any(|l| {
                l != k
                    && basis[l].lm().divides(basis[k].lm())
                    && (basis[l].lm() != basis[k].lm() || l < k)
            })
        })
        .collect();
    basis
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(g, _)| g)
        .collect()
}

/// Lazard's method: a Gröbner basis of the homogenized generators under
/// [`Homogenized`] dehomogenizes to a standard basis for the local ordering.
fn lazard<C: Scalar>(gens: &[Polynomial<C>], order: &MonomialOrder) -> Vec<Sorted<C>> {
    let hom = Homogenized(order);
    let lifted: Vec<Sorted<C>> = gens
        .iter()
        .map(|g| {
            let top = g.terms().map(|(m, _)| order.degree(m)).max().unwrap_or(0);
            let terms = g.terms().map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.push((top - order.degree(m)) as u32);
                (Monomial::from_exponents(e), c.clone())
            });
            let mut terms: Vec<(Monomial, C)> = terms.collect();
            terms.sort_by(|a, b| hom.cmp(&a.0, &b.0));
            let mut s = Sorted { terms };
            s.make_monic();
            s
        })
        .collect();
    // Once the leading monomials cover every monomial of degree >= k, those
    // monomials lie in the local ideal and are added as generators.
    let nvars = gens[0].ring().nvars();
    let mut corner: Option<u64> = None;
    let mut seen = 0;
    let augment = |basis: &[Sorted<C>]| {
        if basis.len() == seen {
            return Vec::new();
        }
        seen = basis.len();
        let leading: Vec<Monomial> = basis
            .iter()
            .map(|g| {
                let e = g.lm().exponents();
                Monomial::from_exponents(e[..nvars].to_vec())
            })
            .collect();
        let Some(k) = highest_corner(&leading, nvars, order) else {
            return Vec::new();
        };
        if corner.is_some_and(|c| c <= k) {
            return Vec::new();
        }
        corner = Some(k);
        corner_generators(nvars, k, order)
            .into_iter()
            .filter(|m| !leading.iter().any(|l| l.divides(m)))
            .map(|m| {
                let mut e = m.exponents().to_vec();
                e.push(0);
                Sorted {
                    terms: vec![(Monomial::from_exponents(e), C::one())],
                }
            })
            .collect()
    };
    let gb = buchberger(lifted, &hom, augment);
    let lowered = gb
        .into_iter()
        .map(|g| {
            let mut terms: Vec<(Monomial, C)> = g
                .terms
                .into_iter()
                .map(|(m, c)| {
                    let e = m.exponents();
                    (Monomial::from_exponents(e[..e.len() - 1].to_vec()), c)
                })
                .collect();
            terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
            let mut s = Sorted { terms };
            s.make_monic();
            s
        })
        .collect();
    minimalize(lowered)
}

/// Mora's tangent cone algorithm. Pairs are taken by degree of the lcm, and
/// once a highest corner is known every reduction discards terms beyond it.
/// Gives up with `None` once a reduction exceeds `budget`.
fn mora<C: Scalar>(
    gens: &[Polynomial<C>],
    order: &MonomialOrder,
    budget: Budget,
) -> Option<Vec<Sorted<C>>> {
    let nvars = gens[0].ring().nvars();
    let mut basis: Vec<Sorted<C>> = Vec::new();
    let mut ecarts: Vec<u64> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut corner: Option<u64> = None;

    let push =
        |h: Sorted<C>, basis: &mut Vec<Sorted<C>>, ecarts: &mut Vec<u64>, pairs: &mut Vec<Pair>| {
            let j = basis.len();
            for (i, g) in basis.iter().enumerate() {
                pairs.push(Pair {
                    i,
                    j,
                    lcm: g.lm().lcm(h.lm()),
                });
            }
            ecarts.push(h.ecart(order));
            basis.push(h);
        };

    for g in gens {
        let mut s = Sorted::from_poly(g, order);
        s.make_monic();
        push(s, &mut basis, &mut ecarts, &mut pairs);
    }

    while !pairs.is_empty() {
        let pick = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                order
                    .degree(&pa.lcm)
                    .cmp(&order.degree(&pb.lcm))
                    .then((pa.j, pa.i).cmp(&(pb.j, pb.i)))
            })
            .unwrap();
        let Pair { i, j, lcm } = pairs.swap_remove(pick);
        if corner.is_some_and(|k| order.degree(&lcm) >= k) {
            continue;
        }
        let s = spoly(&basis[i], &basis[j], order);
        let mut h = mora_normal_form(s, &basis, &ecarts, order, corner, budget)?;
        if !h.is_zero() {
            h.make_monic();
            push(h, &mut basis, &mut ecarts, &mut pairs);
            let found = corner_of(&basis, nvars, order);
            if found.is_some() && (corner.is_none() || found < corner) {
                corner = found;
                if let Some(k) = corner {
                    for g in &mut basis {
                        g.terms.retain(|(m, _)| order.degree(m) < k);
                    }
                    basis.retain(|g| !g.is_zero());
                    // indices shift; rebuild the pair list
                    ecarts = basis.iter().map(|g| g.ecart(order)).collect();
                    pairs.clear();
                    for b in 1..basis.len() {
                        for a in 0..b {
                            pairs.push(Pair {
                                i: a,
                                j: b,
                                lcm: basis[a].lm().lcm(basis[b].lm()),
                            });
                        }
                    }
                }
            }
        }
    }
    if let Some(k) = corner {
        for m in corner_generators(nvars, k, order) {
            basis.push(Sorted {
                terms: vec![(m, C::one())],
            });
        }
    }
    Some(minimalize(basis))
}

/// Computes a standard basis of the ideal generated by `gens`.
///
/// Global orderings run Buchberger's algorithm and return the reduced, monic
/// Gröbner basis. Local orderings run Mora's tangent cone algorithm, and
/// switch to Lazard's homogenization if a weak normal form runs away; either
/// way the result is a minimal, monic standard basis. The output is
/// deterministic for a fixed input order.
pub fn standard_basis<C: Scalar>(
    gens: &[Polynomial<C>],
    order: &MonomialOrder,
) -> Result<StandardBasis<C>> {
    let ring = validate(gens)?;
    order.check_arity(ring.nvars())?;

    let mut sorted = if order.is_local() {
        mora(gens, order, Budget::TANGENT_CONE).unwrap_or_else(|| lazard(gens, order))
    } else {
        let monic = gens
            .iter()
            .map(|g| {
                let mut s = Sorted::from_poly(g, order);
                s.make_monic();
                s
            })
            .collect();
        let mut sorted = minimalize(buchberger(monic, order, |_| Vec::new()));
        // tail-reduce into the reduced Gröbner basis
        for k in 0..sorted.len() {
            let others: Vec<Sorted<C>> = sorted
                .iter()
                .enumerate()
                .filter(|(l, _)| *l != k)
                .map(|(_, g)| g.clone())
                .collect();
            let mut lead = sorted[k].clone();
            let top = lead.terms.pop().unwrap();
            let mut tail = division_remainder(lead, &others, order);
            tail.terms.push(top);
            tail.make_monic();
            sorted[k] = tail;
        }
        sorted
    };
    // present in descending order of leading monomials
    sorted.sort_by(|a, b| order.cmp(b.lm(), a.lm()));

    let ecarts = sorted.iter().map(|g| g.ecart(order)).collect();
    let corner = corner_of(&sorted, ring.nvars(), order);
    Ok(StandardBasis {
        basis: sorted.iter().map(|g| g.to_poly(&ring)).collect(),
        ring,
        order: order.clone(),
        generators: gens.to_vec(),
        sorted,
        ecarts,
        corner,
    })
}

impl<C: Scalar> std::fmt::Debug for StandardBasis<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StandardBasis")
            .field("order", &self.order)
            .field("basis", &self.basis)
            .finish()
    }
}

impl<C: Scalar> StandardBasis<C> {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Polynomial<C>] {
        &self.generators
    }

    pub fn basis(&self) -> &[Polynomial<C>] {
        &self.basis
    }

    /// Minimal generators of the leading ideal.
    pub fn leading_ideal(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|g| g.lm().clone()).collect()
    }

    /// `true` when the ideal is the whole ring (contains a unit).
    pub fn is_unit_ideal(&self) -> bool {
        self.sorted.iter().any(|g| g.lm().is_one())
    }

    pub fn normal_form(&self, p: &Polynomial<C>) -> Result<Polynomial<C>> {
        if p.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        Ok(reduce(
            Sorted::from_poly(p, &self.order),
            &self.sorted,
            &self.ecarts,
            &self.order,
            self.corner,
        )
        .to_poly(&self.ring))
    }

    /// Ideal membership. For local orderings this compares leading ideals:
    /// `p` lies in the local ideal iff adjoining it leaves the leading ideal
    /// unchanged.
    pub fn contains(&self, p: &Polynomial<C>) -> Result<bool> {
        if p.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if p.is_zero() {
            return Ok(true);
        }
        if !self.order.is_local() {
            return Ok(self.normal_form(p)?.is_zero());
        }
        if self.is_unit_ideal() {
            return Ok(true);
        }
        if !p.constant_term().is_zero() {
            // a unit of the local ring
            return Ok(false);
        }
        let mut gens = self.basis.clone();
        gens.push(p.clone());
        let bigger = standard_basis(&gens, &self.order)?;
        Ok(bigger
            .sorted
            .iter()
            .all(|g| self.sorted.iter().any(|h| h.lm().divides(g.lm()))))
    }

    /// Checks the defining criterion directly: every pair reduces to zero.
    pub fn verify(&self) -> bool {
        let n = self.sorted.len();
        for i in 0..n {
            for j in i + 1..n {
                let s = spoly(&self.sorted[i], &self.sorted[j], &self.order);
                if !reduce(s, &self.sorted, &self.ecarts, &self.order, self.corner).is_zero() {
                    return false;
                }
            }
        }
        self.generators
            .iter()
            .all(|g| self.contains(g).unwrap_or(false))
    }
}

/// `true` iff `p` reduces to zero against the basis.
pub fn ideal_membership<C: Scalar>(p: &Polynomial<C>, sb: &StandardBasis<C>) -> Result<bool> {
    sb.contains(p)
}

/// Outcome of counting standard monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientDim {
    Finite(u64),
    Infinite,
    ExceedsBound,
}

/// Number of monomials outside the leading ideal.
///
/// Finite iff every variable has a pure power among the leading monomials.
/// Standard monomials form an order ideal, so they are enumerated depth-first
/// one variable at a time, cutting a branch as soon as its monomial is
/// divisible by a leading monomial.
pub fn quotient_dimension<C: Scalar>(sb: &StandardBasis<C>, bound: u64) -> QuotientDim {
    let leading = sb.leading_ideal();
    count_standard_monomials(&leading, sb.ring.nvars(), bound)
}

pub(crate) fn count_standard_monomials(
    leading: &[Monomial],
    nvars: usize,
    bound: u64,
) -> QuotientDim {
    for_each_standard_monomial(leading, nvars, bound, |_| {})
}

/// Visits the monomials outside the leading ideal, giving up once more than
/// `bound` have been seen.
fn for_each_standard_monomial(
    leading: &[Monomial],
    nvars: usize,
    bound: u64,
    mut visit: impl FnMut(&Monomial),
) -> QuotientDim {
    if leading.iter().any(Monomial::is_one) {
        return QuotientDim::Finite(0);
    }
    for v in 0..nvars {
        if !leading
            .iter()
            .any(|m| matches!(m.pure_power(), Some((i, _)) if i == v))
        {
            return QuotientDim::Infinite;
        }
    }
    struct Walk<'a, F> {
        leading: &'a [Monomial],
        count: u64,
        bound: u64,
        visit: F,
    }
    impl<F: FnMut(&Monomial)> Walk<'_, F> {
        fn run(&mut self, var: usize, exps: &mut Vec<u32>) -> bool {
            loop {
                let m = Monomial::from_exponents(exps.clone());
                if self.leading.iter().any(|l| l.divides(&m)) {
                    break;
                }
                if var + 1 == exps.len() {
                    self.count += 1;
                    if self.count > self.bound {
                        return false;
                    }
                    (self.visit)(&m);
                } else if !self.run(var + 1, exps) {
                    return false;
                }
                exps[var] += 1;
            }
            exps[var] = 0;
            true
        }
    }
    if nvars == 0 {
        visit(&Monomial::one(0));
        return QuotientDim::Finite(1);
    }
    let mut walk = Walk {
        leading,
        count: 0,
        bound,
        visit,
    };
    let mut exps = vec![0; nvars];
    if walk.run(0, &mut exps) {
        QuotientDim::Finite(walk.count)
    } else {
        QuotientDim::ExceedsBound
    }
}
