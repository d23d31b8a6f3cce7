use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Monomial, MonomialOrder, PolyRing};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sparse polynomial with exact coefficients.
///
/// Terms are kept in a map from exponent vector to nonzero coefficient, so two
/// polynomials over the same ring are equal iff their term maps are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<C> {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: C) -> Self {
        Self::from_terms(ring, [(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, C::one())
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::from_terms(ring, [(Monomial::var(ring.nvars(), i), C::one())])
    }

    /// Sums the given terms, dropping anything that cancels.
    pub fn from_terms<I>(ring: &Arc<PolyRing>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
    {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(
                m.nvars(),
                ring.nvars(),
                "monomial arity does not match ring"
            );
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in the canonical (raw lexicographic) storage order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one(self.ring.nvars()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Smallest total degree of a term; `None` for zero.
    pub fn min_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Terms sorted in descending order under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    /// The order-maximal term.
    pub fn leading_term(&self, order: &MonomialOrder) -> Result<(Monomial, C)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial("leading term"))
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        // square-and-multiply
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    /// Multiplies by the monomial `m`.
    pub fn shift(&self, m: &Monomial) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a.clone()))
                .collect(),
        }
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.exponents_mut()[i] -= 1;
            out.add_term(d, c.clone() * C::from_integer(i64::from(e)));
        }
        out
    }

    /// Re-expresses the polynomial in `target`, sending each variable to the
    /// image given in `assignment` (by name), or else to the variable of the
    /// same name in `target`.
    pub fn substitute(
        &self,
        target: &Arc<PolyRing>,
        assignment: &BTreeMap<String, Polynomial<C>>,
    ) -> Result<Self> {
        let mut images = Vec::with_capacity(self.ring.nvars());
        for name in self.ring.vars() {
            let image = match assignment.get(name) {
                Some(p) => {
                    if p.ring != *target {
                        return Err(Error::RingMismatch);
                    }
                    p.clone()
                }
                None => match target.index_of(name) {
                    Some(j) => Polynomial::var(target, j),
                    None => {
                        return Err(Error::InvalidArgument(format!(
                            "variable `{name}` has no image in {target}"
                        )))
                    }
                },
            };
            images.push(image);
        }
        Ok(self.compose(target, &images))
    }

    /// Same as [`Polynomial::substitute`] with constant images.
    pub fn substitute_values(
        &self,
        target: &Arc<PolyRing>,
        values: &BTreeMap<String, C>,
    ) -> Result<Self> {
        let assignment = values
            .iter()
            .map(|(k, v)| (k.clone(), Polynomial::constant(target, v.clone())))
            .collect();
        self.substitute(target, &assignment)
    }

    /// Evaluates at polynomials `images[i]` for variable `i`.
    pub(crate) fn compose(&self, target: &Arc<PolyRing>, images: &[Polynomial<C>]) -> Self {
        let mut powers: Vec<Vec<Polynomial<C>>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            for (mm, cc) in term.terms {
                out.add_term(mm, cc);
            }
        }
        out
    }

    /// Canonical text with terms in descending order under `order`.
    pub fn to_string_with(&self, order: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.display(self.ring.vars()).to_string();
            if m.is_one() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{abs}*{mono}"));
            }
        }
        s
    }
}

impl<C: Scalar> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&MonomialOrder::DegRevLex))
    }
}

impl<C: Scalar> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self} in {})", self.ring)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<C: Scalar> $trait<&Polynomial<C>> for &Polynomial<C> {
            type Output = Polynomial<C>;
            /// Panics if the operands live in different rings.
            fn $method(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                self.$checked(rhs).expect("polynomial ring mismatch")
            }
        }
        impl<C: Scalar> $trait<Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<C: Scalar> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        self.scale(&-C::one())
    }
}

impl<C: Scalar> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(&["x", "y"]).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring();
        let x = Polynomial::<Rational>::var(&r, 0);
        let y = Polynomial::<Rational>::var(&r, 1);
        assert!((&x + &(-&x)).is_zero());
        assert_eq!(&(&x + &y) * &(&x - &y), &(&x * &x) - &(&y * &y));
        let one = Polynomial::one(&r);
        let cube = (&x + &one).pow(3);
        // repeated multiplication oracle
        let mut rep = Polynomial::one(&r);
        for _ in 0..3 {
            rep = &rep * &(&x + &one);
        }
        assert_eq!(cube, rep);
        assert_eq!(cube.to_string(), "x^3 + 3*x^2 + 3*x + 1");
        assert!(x.pow(0) == one);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Polynomial::<Rational>::var(&ring(), 0);
        let other = PolyRing::new(&["x", "z"]).unwrap();
        let b = Polynomial::<Rational>::var(&other, 0);
        assert_eq!(a.checked_add(&b), Err(Error::RingMismatch));
        assert_eq!(a.checked_mul(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn leading_terms_under_each_order() {
        let r = ring();
        let p = Polynomial::from_terms(
            &r,
            [
                (Monomial::from_exponents(vec![3, 0]), q(1, 1)),
                (Monomial::from_exponents(vec![0, 2]), q(-1, 1)),
            ],
        );
        let (m, c) = p.leading_term(&MonomialOrder::DegRevLex).unwrap();
        assert_eq!((m.exponents(), c), (&[3, 0][..], q(1, 1)));
        let (m, c) = p.leading_term(&MonomialOrder::NegDegRevLex).unwrap();
        assert_eq!((m.exponents(), c), (&[0, 2][..], q(-1, 1)));
        assert!(Polynomial::<Rational>::zero(&r)
            .leading_term(&MonomialOrder::DegRevLex)
            .is_err());
    }

    #[test]
    fn substitution_translates() {
        let r = PolyRing::new(&["x"]).unwrap();
        let x = Polynomial::<Rational>::var(&r, 0);
        let shift = &x - &Polynomial::constant(&r, q(1, 4));
        let img = BTreeMap::from([("x".to_string(), shift)]);
        let p = x.pow(2).substitute(&r, &img).unwrap();
        // (x - 1/4)^2 = x^2 - x/2 + 1/16
        assert_eq!(p.to_string(), "x^2 - 1/2*x + 1/16");
        assert_eq!(x.substitute(&r, &BTreeMap::new()).unwrap(), x);
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let r = ring();
        let c = Polynomial::constant(&r, q(5, 1));
        assert!(c.derivative(0).is_zero() && c.derivative(1).is_zero());
    }
}
