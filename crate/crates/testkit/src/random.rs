//! Random polynomials, ideals, germs and coordinate changes.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use relsing::invariants::milnor_number;
use relsing::{Count, LocalOptions, Monomial, PolyRing, Polynomial, Rational};

const NAMES: [&str; 3] = ["x", "y", "z"];

pub fn ring(nvars: usize) -> Arc<PolyRing> {
    PolyRing::new(&NAMES[..nvars]).expect("valid names")
}

pub fn small_rational<R: Rng>(rng: &mut R, max: i64) -> Rational {
    let n = loop {
        let n = rng.gen_range(-max..=max);
        if n != 0 {
            break n;
        }
    };
    let d = rng.gen_range(1..=3);
    Rational::new(n.into(), d.into())
}

fn exponents<R: Rng>(rng: &mut R, nvars: usize, degree: u32) -> Vec<u32> {
    let mut e = vec![0; nvars];
    for _ in 0..degree {
        e[rng.gen_range(0..nvars)] += 1;
    }
    e
}

/// Sum of `1..=max_terms` terms with degrees in `min_deg..=max_deg`.
pub fn polynomial<R: Rng>(
    rng: &mut R,
    ring: &Arc<PolyRing>,
    min_deg: u32,
    max_deg: u32,
    max_terms: usize,
) -> Polynomial {
    let n = ring.nvars();
    let count = rng.gen_range(1..=max_terms);
    let terms = (0..count).map(|_| {
        let deg = rng.gen_range(min_deg..=max_deg);
        (
            Monomial::from_exponents(exponents(rng, n, deg)),
            small_rational(rng, 5),
        )
    });
    Polynomial::from_terms(ring, terms.collect::<Vec<_>>())
}

/// An ideal with at most three nonzero generators of degree at most four in
/// at most three variables. Constant terms are rare so that most instances
/// live at the origin.
pub fn local_ideal<R: Rng>(rng: &mut R) -> (Arc<PolyRing>, Vec<Polynomial>) {
    let r = ring(rng.gen_range(1..=3));
    let count = rng.gen_range(1..=3);
    let gens = (0..count)
        .map(|_| loop {
            let min = if rng.gen_bool(0.05) { 0 } else { 1 };
            let p = polynomial(rng, &r, min, 4, 4);
            if !p.is_zero() {
                break p;
            }
        })
        .collect();
    (r, gens)
}

/// `x_i^{d_i}` for each variable, with `2 <= d_i <= max_deg`.
pub fn pure_powers<R: Rng>(rng: &mut R, ring: &Arc<PolyRing>, max_deg: u32) -> Vec<Polynomial> {
    (0..ring.nvars())
        .map(|i| {
            let mut e = vec![0; ring.nvars()];
            e[i] = rng.gen_range(2..=max_deg);
            Polynomial::from_terms(
                ring,
                [(
                    Monomial::from_exponents(e),
                    Rational::from_integer(1.into()),
                )],
            )
        })
        .collect()
}

/// A germ of degree at most five with an isolated singularity at the origin:
/// pure powers plus random terms, retried until the Milnor number is finite.
pub fn isolated_germ<R: Rng>(rng: &mut R, nvars: usize) -> Polynomial {
    let r = ring(nvars);
    loop {
        let mut terms = Vec::new();
        for i in 0..nvars {
            let mut e = vec![0; nvars];
            e[i] = rng.gen_range(2..=5);
            terms.push((Monomial::from_exponents(e), small_rational(rng, 3)));
        }
        let f = Polynomial::from_terms(&r, terms);
        let f = &f + &polynomial(rng, &r, 2, 5, 3);
        if f.min_degree().is_some_and(|d| d >= 2)
            && matches!(
                milnor_number(&f, &LocalOptions::default()),
                Ok(Count::Finite(_))
            )
        {
            return f;
        }
    }
}

fn determinant(m: &[Vec<Rational>]) -> Rational {
    match m.len() {
        1 => m[0][0].clone(),
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<Rational>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].clone() * determinant(&minor);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .fold(Rational::from_integer(0.into()), |a, b| a + b),
    }
}

/// Random invertible matrix with small integer entries.
pub fn invertible_matrix<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<Rational>> {
    loop {
        let m: Vec<Vec<Rational>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| Rational::from_integer(rng.gen_range(-2..=2).into()))
                    .collect()
            })
            .collect();
        if determinant(&m) != Rational::from_integer(0.into()) {
            return m;
        }
    }
}

/// `f(A·x)`.
pub fn linear_change(f: &Polynomial, a: &[Vec<Rational>]) -> Polynomial {
    let r = f.ring();
    let images: BTreeMap<String, Polynomial> = r
        .vars()
        .iter()
        .zip(a)
        .map(|(name, row)| {
            let terms = row.iter().enumerate().map(|(j, c)| {
                let mut e = vec![0; r.nvars()];
                e[j] = 1;
                (Monomial::from_exponents(e), c.clone())
            });
            (
                name.clone(),
                Polynomial::from_terms(r, terms.collect::<Vec<_>>()),
            )
        })
        .collect();
    f.substitute(r, &images).expect("same ring")
}
