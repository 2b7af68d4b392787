//! Minimal strong Gröbner bases over the integers and the leading
//! coefficient invariant built from them.

use std::cmp::Ordering;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{lcm, Integer};
use crate::error::{Error, Result};
use crate::poly::{Polynomial, PowerProduct, TermOrdering};

/// A minimal strong Gröbner basis over ℤ: positive leading coefficients,
/// no leading monomial dividing another, sorted by increasing leading term
/// and then by leading coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct StrongGb {
    ordering: TermOrdering,
    elements: Vec<Polynomial<Integer>>,
}

impl StrongGb {
    pub fn ordering(&self) -> &TermOrdering {
        &self.ordering
    }

    pub fn elements(&self) -> &[Polynomial<Integer>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Whether the leading monomial of `f` is divisible by the leading
    /// monomial of some basis element.
    pub fn lm_divisible(&self, f: &Polynomial<Integer>) -> bool {
        let f = f.resorted(&self.ordering);
        if f.is_zero() {
            return true;
        }
        self.elements.iter().any(|g| lm_divides(g, f.lt(), f.lc()))
    }
}

fn lm_divides(g: &Polynomial<Integer>, t: &PowerProduct, c: &Integer) -> bool {
    g.lt().divides(t) && c.is_multiple_of(g.lc())
}

fn positive(f: Polynomial<Integer>) -> Polynomial<Integer> {
    if !f.is_zero() && f.lc().is_negative() {
        f.neg()
    } else {
        f
    }
}

/// Top-reduces `h` by Euclidean division of leading coefficients: while some
/// element's leading term divides `LT(h)` and its leading coefficient does not
/// exceed `LC(h)`, replace `LC(h)` by its remainder. Among applicable reducers
/// the smallest leading coefficient wins, then the smallest leading term,
/// then the earliest position.
fn top_reduce(mut h: Polynomial<Integer>, basis: &[Polynomial<Integer>], ord: &TermOrdering) -> Polynomial<Integer> {
    loop {
        h = positive(h);
        if h.is_zero() {
            return h;
        }
        let (t, c) = (h.lt().clone(), h.lc().clone());
        let mut best: Option<usize> = None;
        for (k, g) in basis.iter().enumerate() {
            if !g.lt().divides(&t) || g.lc() > &c {
                continue;
            }
            let better = match best {
                None => true,
                Some(b) => {
                    let gb = &basis[b];
                    g.lc().cmp(gb.lc()).then_with(|| ord.cmp(g.lt(), gb.lt())) == Ordering::Less
                }
            };
            if better {
                best = Some(k);
            }
        }
        let Some(k) = best else { return h };
        let g = &basis[k];
        let q = c.div_floor(g.lc());
        let m = t.checked_div(g.lt()).expect("divides");
        h = h.sub_mul_term(&q, &m, g, ord);
    }
}

/// Removes tail terms divisible by some leading monomial.
fn tail_reduce(f: &Polynomial<Integer>, others: &[&Polynomial<Integer>], ord: &TermOrdering) -> Polynomial<Integer> {
    let mut h = f.clone();
    let mut k = 1;
    while k < h.len() {
        let (t, c) = h.terms()[k].clone();
        match others.iter().find(|g| lm_divides(g, &t, &c)) {
            Some(g) => {
                let q = &c / g.lc();
                let m = t.checked_div(g.lt()).expect("divides");
                h = h.sub_mul_term(&q, &m, g, ord);
                // terms above position k are untouched; re-examine position k
            }
            None => k += 1,
        }
    }
    h
}

fn s_and_g_polys(
    f: &Polynomial<Integer>,
    g: &Polynomial<Integer>,
    ord: &TermOrdering,
) -> (Option<Polynomial<Integer>>, Option<Polynomial<Integer>>) {
    let (a, b) = (f.lc(), g.lc());
    let l = f.lt().lcm(g.lt());
    let mf = l.checked_div(f.lt()).unwrap();
    let mg = l.checked_div(g.lt()).unwrap();
    let s = if f.lt().is_coprime(g.lt()) && a.gcd(b).is_one() {
        None
    } else {
        let c = lcm(a, b);
        Some(f.mul_term(&(&c / a), &mf).sub(&g.mul_term(&(&c / b), &mg), ord))
    };
    let gpoly = if a.is_multiple_of(b) || b.is_multiple_of(a) {
        None
    } else {
        let e = a.extended_gcd(b);
        Some(f.mul_term(&e.x, &mf).add(&g.mul_term(&e.y, &mg), ord))
    };
    (s, gpoly)
}

/// A minimal strong σ-Gröbner basis of the ideal generated by `gens` in
/// `ℤ[x1, ..., xn]`. The completion adds S-polynomials and gcd-polynomials of
/// every pair; the result is minimalized, tail-reduced by divisibility and
/// given positive leading coefficients.
pub fn strong_gb(gens: &[Polynomial<Integer>], ord: &TermOrdering) -> Result<StrongGb> {
    strong_gb_with_budget(gens, ord, None)
}

pub fn strong_gb_with_budget(gens: &[Polynomial<Integer>], ord: &TermOrdering, max_reductions: Option<u64>) -> Result<StrongGb> {
    let mut basis: Vec<Polynomial<Integer>> = Vec::new();
    let mut pairs: Vec<(usize, usize, PowerProduct)> = Vec::new();
    let mut pending: Vec<Polynomial<Integer>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.resorted(ord)).collect();
    pending.sort_by(|a, b| ord.cmp(a.lt(), b.lt()));
    pending.reverse();
    let mut reductions = 0u64;

    loop {
        while let Some(f) = pending.pop() {
            reductions += 1;
            if max_reductions.is_some_and(|m| reductions > m) {
                return Err(Error::Budget(format!("more than {m} reductions", m = reductions - 1)));
            }
            let h = top_reduce(f, &basis, ord);
            if h.is_zero() {
                continue;
            }
            let n = basis.len();
            for i in 0..n {
                pairs.push((i, n, basis[i].lt().lcm(h.lt())));
            }
            basis.push(h);
        }
        let best = (0..pairs.len()).min_by(|&a, &b| {
            ord.cmp(&pairs[a].2, &pairs[b].2).then((pairs[a].0, pairs[a].1).cmp(&(pairs[b].0, pairs[b].1)))
        });
        let Some(best) = best else { break };
        let (i, j, _) = pairs.swap_remove(best);
        let (s, g) = s_and_g_polys(&basis[i], &basis[j], ord);
        // gcd-polynomials first: they lower leading coefficients sooner
        pending.extend(s);
        pending.extend(g);
    }

    // Drop elements whose leading monomial is divisible by another's; for
    // equal leading monomials keep the earliest.
    let mut keep: Vec<usize> = Vec::new();
    for k in 0..basis.len() {
        let redundant = (0..basis.len()).any(|o| {
            o != k && lm_divides(&basis[o], basis[k].lt(), basis[k].lc())
                && !(basis[o].lt() == basis[k].lt() && basis[o].lc() == basis[k].lc() && o > k)
        });
        if !redundant {
            keep.push(k);
        }
    }
    let kept: Vec<Polynomial<Integer>> = keep.iter().map(|&k| basis[k].clone()).collect();
    let mut elements: Vec<Polynomial<Integer>> = (0..kept.len())
        .map(|k| {
            let others: Vec<&Polynomial<Integer>> = kept.iter().enumerate().filter(|(o, _)| *o != k).map(|(_, g)| g).collect();
            positive(tail_reduce(&kept[k], &others, ord))
        })
        .collect();
    elements.sort_by(|a, b| ord.cmp(a.lt(), b.lt()).then_with(|| a.lc().cmp(b.lc())));
    Ok(StrongGb { ordering: ord.clone(), elements })
}

/// Least common multiple of the leading coefficients, taken positive.
pub fn lcm_sigma(polys: &[Polynomial<Integer>], ord: &TermOrdering) -> Result<Integer> {
    polys.iter().try_fold(Integer::one(), |acc, f| {
        let f = f.resorted(ord);
        let (_, c) = f.leading()?;
        Ok(lcm(&acc, &c.abs()))
    })
}

/// The leading monomials `(LT, LC)` of a minimal strong basis, sorted by
/// increasing leading term. This set depends only on the ideal.
pub fn leading_monomial_set(gb: &StrongGb) -> Vec<(PowerProduct, Integer)> {
    gb.elements.iter().map(|g| (g.lt().clone(), g.lc().clone())).collect()
}

/// The leading monomial set rendered as `c*t` strings, e.g. `2*x`.
pub fn format_leading_monomials(gb: &StrongGb, names: &[String]) -> Vec<String> {
    leading_monomial_set(gb)
        .iter()
        .map(|(t, c)| {
            if c.is_one() {
                t.format(names)
            } else if t.is_one() {
                c.to_string()
            } else {
                format!("{}*{}", c, t.format(names))
            }
        })
        .collect()
}

impl StrongGb {
    pub fn lcm_sigma(&self) -> Integer {
        self.elements.iter().fold(Integer::one(), |acc, g| lcm(&acc, g.lc()))
    }
}

/// Random combination helper used by strongness checks: `Σ c_i m_i g_i`.
pub fn combine(gens: &[Polynomial<Integer>], multipliers: &[(Integer, PowerProduct)], ord: &TermOrdering) -> Polynomial<Integer> {
    let nvars = gens.first().map(|g| g.nvars()).unwrap_or(0);
    gens.iter().zip(multipliers).fold(Polynomial::zero(nvars), |acc, (g, (c, m))| {
        if c.is_zero() {
            acc
        } else {
            acc.add(&g.resorted(ord).mul_term(c, m), ord)
        }
    })
}
