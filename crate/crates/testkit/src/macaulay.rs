//! Dimension of `K[x]/(I + m^d)` by exact linear algebra on truncated jets.
//!
//! The quotient is spanned by monomials of degree `< d`; the ideal part is
//! spanned by the products `x^a·g` truncated below degree `d`. Its dimension
//! is the number of monomials minus the rank of those products.
//!
//! If two consecutive truncations agree, `m^d ⊆ I + m^{d+1}`, so Nakayama
//! gives `m^d ⊆ I` in the local ring and the value is the local dimension.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use relsing::{Monomial, Polynomial, Rational};

fn monomials_below(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if d > 0 {
        rec(0, d - 1, &mut cur, &mut out);
    }
    out
}

type Row = BTreeMap<usize, Rational>;

/// Incremental row echelon form over sparse rows.
#[derive(Default)]
struct Echelon {
    pivots: HashMap<usize, Row>,
}

impl Echelon {
    fn insert(&mut self, mut row: Row) {
        while let Some((&col, lead)) = row.iter().next() {
            let Some(pivot) = self.pivots.get(&col) else {
                let inv = Rational::from_integer(1.into()) / lead.clone();
                for v in row.values_mut() {
                    *v = v.clone() * inv.clone();
                }
                self.pivots.insert(col, row);
                return;
            };
            let factor = lead.clone();
            for (c, v) in pivot {
                let entry = row.entry(*c).or_insert_with(Rational::zero);
                *entry = entry.clone() - factor.clone() * v.clone();
                if entry.is_zero() {
                    row.remove(c);
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// `dim K[x]/(I + m^d)`.
pub fn truncated_dimension(gens: &[Polynomial], nvars: usize, d: u32) -> u64 {
    let monos = monomials_below(nvars, d);
    let index: HashMap<&[u32], usize> = monos
        .iter()
        .enumerate()
        .map(|(i, m)| (m.as_slice(), i))
        .collect();
    let mut ech = Echelon::default();
    for g in gens {
        let Some(ord) = g.min_degree() else { continue };
        if ord >= u64::from(d) {
            continue;
        }
        for shift in monomials_below(nvars, d - ord as u32) {
            let shift = Monomial::from_exponents(shift);
            let mut row = Row::new();
            for (m, c) in g.terms() {
                let prod = m.mul(&shift);
                if prod.degree() < u64::from(d) {
                    row.insert(index[prod.exponents()], c.clone());
                }
            }
            if !row.is_empty() {
                ech.insert(row);
            }
        }
    }
    (monos.len() - ech.rank()) as u64
}

/// Local dimension of `⟨gens⟩`, found by raising `d` until two consecutive
/// truncations agree; `None` if that does not happen for `d <= max_d`.
pub fn local_dimension(gens: &[Polynomial], nvars: usize, max_d: u32) -> Option<u64> {
    let mut prev = truncated_dimension(gens, nvars, 1);
    for d in 2..=max_d {
        let cur = truncated_dimension(gens, nvars, d);
        if cur == prev {
            return Some(cur);
        }
        prev = cur;
    }
    None
}
