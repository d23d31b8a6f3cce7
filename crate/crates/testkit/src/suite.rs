//! One randomized check per property. Each returns `Err` with a description
//! of the counterexample.

use rand::Rng;
use relsing::invariants::{bruce_roberts_number, local_dimension, milnor_number};
use relsing::poly::{normal_form, standard_basis};
use relsing::{Count, LocalOptions, Monomial, MonomialOrder, Polynomial, VarietyGerm};

use crate::{macaulay, random};

fn with_max_ideal(gens: &[Polynomial], nvars: usize, d: u32) -> Vec<Polynomial> {
    let r = gens[0].ring();
    let mut out = gens.to_vec();
    let mut exps = vec![0u32; nvars];
    fn rec(
        i: usize,
        left: u32,
        exps: &mut Vec<u32>,
        out: &mut Vec<Polynomial>,
        r: &std::sync::Arc<relsing::PolyRing>,
    ) {
        if i + 1 == exps.len() {
            exps[i] = left;
            let m = Monomial::from_exponents(exps.clone());
            out.push(Polynomial::from_terms(
                r,
                [(m, relsing::Rational::from_integer(1.into()))],
            ));
            exps[i] = 0;
            return;
        }
        for e in 0..=left {
            exps[i] = e;
            rec(i + 1, left - e, exps, out, r);
        }
        exps[i] = 0;
    }
    rec(0, d, &mut exps, &mut out, r);
    out
}

/// Local quotient dimension against the Macaulay-matrix oracle.
///
/// Finite answers must be reproduced by the oracle's stabilized value.
/// Infinite answers must show strict growth of the truncations up to a cap,
/// and at the cap the truncated ideal `I + m^d` must agree exactly.
pub fn quotient_dimension<R: Rng>(rng: &mut R) -> Result<(), String> {
    let (r, gens) = random::local_ideal(rng);
    let n = r.nvars();
    let opts = LocalOptions::default();
    let ctx = || format!("ideal {gens:?} in {r}");
    let value = local_dimension(&r, &gens, &opts).map_err(|e| format!("{}: {e}", ctx()))?;
    match value {
        Count::Finite(mu) => {
            let oracle = macaulay::local_dimension(&gens, n, mu as u32 + 2);
            if oracle != Some(mu) {
                return Err(format!(
                    "{}: standard basis gives {mu}, oracle {oracle:?}",
                    ctx()
                ));
            }
        }
        Count::Infinite => {
            let cap = [0, 10, 7, 5][n];
            let mut prev = macaulay::truncated_dimension(&gens, n, 1);
            for d in 2..=cap {
                let cur = macaulay::truncated_dimension(&gens, n, d);
                if cur <= prev {
                    return Err(format!(
                        "{}: infinite, but truncations stabilize at {cur}",
                        ctx()
                    ));
                }
                prev = cur;
            }
            let bigger = with_max_ideal(&gens, n, cap);
            let truncated = local_dimension(&r, &bigger, &opts).map_err(|e| e.to_string())?;
            if truncated != Count::Finite(prev) {
                return Err(format!(
                    "{}: I + m^{cap} gives {truncated}, oracle {prev}",
                    ctx()
                ));
            }
        }
    }
    Ok(())
}

/// Milnor number under an invertible linear change of coordinates.
pub fn milnor_invariance<R: Rng>(rng: &mut R) -> Result<(), String> {
    let n = rng.gen_range(1..=3);
    let f = random::isolated_germ(rng, n);
    let a = random::invertible_matrix(rng, n);
    let g = random::linear_change(&f, &a);
    let opts = LocalOptions::default();
    let (mf, mg) = (milnor_number(&f, &opts), milnor_number(&g, &opts));
    if mf != mg {
        return Err(format!("mu({f}) = {mf:?} but mu({g}) = {mg:?}"));
    }
    Ok(())
}

/// Normal forms are idempotent. Global normal forms are linear. The local
/// weak normal form is only determined up to a unit factor, so for local
/// orderings the checks are scaling equivariance, `I + ⟨p⟩ = I + ⟨NF(p)⟩`,
/// vanishing exactly on members, and membership of combinations of members.
/// Local instances have finite colength: the weak normal form may need
/// exponentially many steps on positive-dimensional local ideals.
pub fn normal_form_laws<R: Rng>(rng: &mut R) -> Result<(), String> {
    let (r, mut gens) = random::local_ideal(rng);
    let order = if rng.gen_bool(0.5) {
        MonomialOrder::DegRevLex
    } else {
        MonomialOrder::NegDegRevLex
    };
    if order.is_local() {
        gens.extend(random::pure_powers(rng, &r, 6));
    }
    let sb = standard_basis(&gens, &order).map_err(|e| e.to_string())?;
    let p = random::polynomial(rng, &r, 0, 4, 5);
    let q = random::polynomial(rng, &r, 0, 4, 5);
    let (a, b) = (
        random::small_rational(rng, 4),
        random::small_rational(rng, 4),
    );
    let combo = &p.scale(&a) + &q.scale(&b);
    let nf = |x: &Polynomial| sb.normal_form(x).map_err(|e| e.to_string());
    let ctx = || format!("{order} basis {:?}, p = {p}, q = {q}", sb.basis());

    let np = nf(&p)?;
    if nf(&np)? != np {
        return Err(format!("{}: not idempotent", ctx()));
    }
    if order.is_global() {
        let lhs = nf(&combo)?;
        let rhs = &nf(&p)?.scale(&a) + &nf(&q)?.scale(&b);
        if lhs != rhs {
            return Err(format!("{}: not linear", ctx()));
        }
        if normal_form(&p, sb.basis(), &order).map_err(|e| e.to_string())? != np {
            return Err(format!(
                "{}: free function disagrees with the basis method",
                ctx()
            ));
        }
    } else {
        if nf(&p.scale(&a))? != np.scale(&a) {
            return Err(format!("{}: not equivariant under scaling", ctx()));
        }
        for x in [&p, &q, &combo] {
            let member = sb.contains(x).map_err(|e| e.to_string())?;
            if member != nf(x)?.is_zero() {
                return Err(format!(
                    "{}: membership of {x} disagrees with its normal form",
                    ctx()
                ));
            }
        }
        // u·p - NF(p) ∈ I for a unit u, so p and NF(p) generate the same
        // ideal together with I
        let with = |x: &Polynomial| {
            let mut g = gens.clone();
            if !x.is_zero() {
                g.push(x.clone());
            }
            standard_basis(&g, &order).map_err(|e| e.to_string())
        };
        let (ip, inp) = (with(&p)?, with(&np)?);
        if !ip.contains(&np).map_err(|e| e.to_string())?
            || !inp.contains(&p).map_err(|e| e.to_string())?
        {
            return Err(format!("{}: I + <p> differs from I + <NF(p)>", ctx()));
        }
        let sum = &(&p * &gens[0]).scale(&a) + &(&q * &gens[gens.len() - 1]).scale(&b);
        if !sb.contains(&sum).map_err(|e| e.to_string())? {
            return Err(format!("{}: combination of members is not a member", ctx()));
        }
        return Ok(());
    }
    let member = &p * &gens[0];
    if !nf(&member)?.is_zero() {
        return Err(format!(
            "{}: multiple of a generator has nonzero normal form",
            ctx()
        ));
    }
    Ok(())
}

/// With all coordinate fields the Bruce–Roberts number is the Milnor number.
pub fn bruce_roberts_coordinate_fields<R: Rng>(rng: &mut R) -> Result<(), String> {
    let n = rng.gen_range(1..=3);
    let f = random::isolated_germ(rng, n);
    let v = VarietyGerm::whole_space(f.ring());
    let opts = LocalOptions::default();
    let (br, mu) = (
        bruce_roberts_number(&f, &v, &opts),
        milnor_number(&f, &opts),
    );
    if br != mu {
        return Err(format!("f = {f}: mu_BR {br:?}, mu {mu:?}"));
    }
    Ok(())
}
