//! Buchberger's algorithm over coefficient fields: normal forms, reduced
//! Gröbner bases, minimal leading terms and representations of basis
//! elements in terms of the input generators.

use std::cmp::Ordering;

use crate::arith::{Integer, Rational};
use crate::coeff::{Coeff, FieldCoeff, Fp};
use crate::error::{Error, Result};
use crate::poly::{den_of_set, Polynomial, PowerProduct, TermOrdering};

/// Limits on the work a single basis computation may do.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbBudget {
    /// Maximum number of S-pair reductions.
    pub max_reductions: Option<u64>,
}

/// The reduced Gröbner basis of an ideal: monic elements sorted by
/// increasing leading term.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedGb<C> {
    ordering: TermOrdering,
    elements: Vec<Polynomial<C>>,
}

impl<C: FieldCoeff> ReducedGb<C> {
    pub fn ordering(&self) -> &TermOrdering {
        &self.ordering
    }

    pub fn elements(&self) -> &[Polynomial<C>] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Polynomial<C>> {
        self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].lt().is_one()
    }

    /// The minimal generators of the leading term ideal, increasing.
    pub fn min_lt(&self) -> Vec<PowerProduct> {
        self.elements.iter().map(|g| g.lt().clone()).collect()
    }

    pub fn normal_form(&self, f: &Polynomial<C>) -> Polynomial<C> {
        normal_form(&f.resorted(&self.ordering), &self.elements, &self.ordering)
    }

    pub fn contains(&self, f: &Polynomial<C>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Wraps polynomials already known to form a reduced basis.
    pub(crate) fn from_reduced_unchecked(ordering: TermOrdering, mut elements: Vec<Polynomial<C>>) -> Self {
        elements.sort_by(|a, b| ordering.cmp(a.lt(), b.lt()));
        ReducedGb { ordering, elements }
    }
}

impl ReducedGb<Rational> {
    /// Lcm of all coefficient denominators of the basis.
    pub fn den(&self) -> Integer {
        den_of_set(&self.elements)
    }

    /// Reduces every element modulo `p`. When `p` does not divide the
    /// denominator the images form the reduced basis of the ideal they generate.
    pub fn reduce_mod_p(&self, p: u64) -> Result<ReducedGb<Fp>> {
        let elements = self.elements.iter().map(|g| g.reduce_mod_p(p)).collect::<Result<Vec<_>>>()?;
        Ok(ReducedGb { ordering: self.ordering.clone(), elements })
    }
}

/// Cofactor matrix with `G = F * M`: `columns[j][i]` is the coefficient of
/// the `i`-th generator in the `j`-th basis element.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    pub columns: Vec<Vec<Polynomial<Rational>>>,
}

fn find_reducer<C: Coeff>(t: &PowerProduct, basis: &[&Polynomial<C>], ord: &TermOrdering) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, g) in basis.iter().enumerate() {
        if g.lt().divides(t) && best.is_none_or(|b| ord.cmp(g.lt(), basis[b].lt()) == Ordering::Less) {
            best = Some(k);
        }
    }
    best
}

/// Fully reduces `f` by `basis`, optionally carrying a cofactor trace.
/// Among applicable reducers the one with the smallest leading term is used,
/// ties going to the earliest in the list.
fn reduce_traced<C: FieldCoeff>(
    f: &Polynomial<C>,
    basis: &[&Polynomial<C>],
    ord: &TermOrdering,
    mut trace: Option<(&mut Vec<Polynomial<C>>, &[&Vec<Polynomial<C>>])>,
) -> Polynomial<C> {
    let nvars = f.nvars();
    let mut done: Vec<(PowerProduct, C)> = Vec::new();
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (t, c) = {
            let (t, c) = rest.leading().expect("nonzero");
            (t.clone(), c.clone())
        };
        match find_reducer(&t, basis, ord) {
            Some(k) => {
                let g = basis[k];
                let factor = c.mul_ref(&g.lc().inv());
                let m = t.checked_div(g.lt()).expect("reducer divides");
                rest = rest.sub_mul_term(&factor, &m, g, ord);
                if let Some((cof, basis_cofs)) = trace.as_mut() {
                    for (a, b) in cof.iter_mut().zip(basis_cofs[k].iter()) {
                        *a = a.sub_mul_term(&factor, &m, b, ord);
                    }
                }
            }
            None => {
                let mut terms = rest.into_terms();
                let head = terms.remove(0);
                done.push(head);
                rest = Polynomial::from_sorted_terms(nvars, terms);
            }
        }
    }
    Polynomial::from_sorted_terms(nvars, done)
}

/// Normal form of `f` with respect to `basis` (terms of `f` sorted under `ord`).
pub fn normal_form<C: FieldCoeff>(f: &Polynomial<C>, basis: &[Polynomial<C>], ord: &TermOrdering) -> Polynomial<C> {
    let refs: Vec<&Polynomial<C>> = basis.iter().filter(|g| !g.is_zero()).collect();
    reduce_traced(f, &refs, ord, None)
}

pub fn s_polynomial<C: FieldCoeff>(f: &Polynomial<C>, g: &Polynomial<C>, ord: &TermOrdering) -> Polynomial<C> {
    let l = f.lt().lcm(g.lt());
    let a = f.mul_term(&f.lc().inv(), &l.checked_div(f.lt()).unwrap());
    let b = g.mul_term(&g.lc().inv(), &l.checked_div(g.lt()).unwrap());
    a.sub(&b, ord)
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis<C: FieldCoeff>(basis: &[Polynomial<C>], ord: &TermOrdering) -> bool {
    let basis: Vec<Polynomial<C>> = basis.iter().filter(|g| !g.is_zero()).map(|g| g.resorted(ord)).collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if basis[i].lt().is_coprime(basis[j].lt()) {
                continue;
            }
            if !normal_form(&s_polynomial(&basis[i], &basis[j], ord), &basis, ord).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Whether `basis` is reduced: monic, and no term of any element divisible
/// by the leading term of another.
pub fn is_reduced<C: FieldCoeff>(basis: &[Polynomial<C>], ord: &TermOrdering) -> bool {
    let basis: Vec<Polynomial<C>> = basis.iter().map(|g| g.resorted(ord)).collect();
    basis.iter().enumerate().all(|(i, g)| {
        !g.is_zero()
            && g.lc().is_one()
            && basis
                .iter()
                .enumerate()
                .all(|(j, h)| i == j || g.terms().iter().all(|(t, _)| !h.lt().divides(t)))
    })
}

struct Pair {
    i: usize,
    j: usize,
    lcm: PowerProduct,
}

struct Engine<'a, C> {
    ord: &'a TermOrdering,
    polys: Vec<Polynomial<C>>,
    traces: Option<Vec<Vec<Polynomial<C>>>>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<'a, C: FieldCoeff> Engine<'a, C> {
    fn reduce(&self, f: &Polynomial<C>, trace: Option<&mut Vec<Polynomial<C>>>) -> Polynomial<C> {
        let basis: Vec<&Polynomial<C>> = self.active.iter().map(|&k| &self.polys[k]).collect();
        match (trace, &self.traces) {
            (Some(cof), Some(all)) => {
                let cofs: Vec<&Vec<Polynomial<C>>> = self.active.iter().map(|&k| &all[k]).collect();
                reduce_traced(f, &basis, self.ord, Some((cof, &cofs)))
            }
            _ => reduce_traced(f, &basis, self.ord, None),
        }
    }

    /// Gebauer–Möller update for a new basis element.
    fn update(&mut self, h: Polynomial<C>, trace: Option<Vec<Polynomial<C>>>) {
        let hi = self.polys.len();
        let ht = h.lt().clone();
        self.polys.push(h);
        if let (Some(all), Some(t)) = (self.traces.as_mut(), trace) {
            all.push(t);
        }
        let lt = |k: usize, polys: &Vec<Polynomial<C>>| polys[k].lt().clone();

        let mut candidates: Vec<(usize, PowerProduct)> =
            self.active.iter().map(|&g| (g, ht.lcm(self.polys[g].lt()))).collect();
        let mut kept: Vec<(usize, PowerProduct)> = Vec::new();
        while !candidates.is_empty() {
            let (g1, l1) = candidates.remove(0);
            let coprime = ht.is_coprime(&lt(g1, &self.polys));
            let dominated = candidates.iter().chain(kept.iter()).any(|(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                kept.push((g1, l1));
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !ht.is_coprime(&lt(*g, &self.polys)))
            .map(|(g, l)| Pair { i: g, j: hi, lcm: l })
            .collect();

        let polys = &self.polys;
        self.pairs.retain(|p| {
            !ht.divides(&p.lcm) || ht.lcm(polys[p.i].lt()) == p.lcm || ht.lcm(polys[p.j].lt()) == p.lcm
        });
        self.pairs.extend(new_pairs);

        let polys = &self.polys;
        self.active.retain(|&g| !ht.divides(polys[g].lt()));
        self.active.push(hi);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let ord = self.ord;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            ord.cmp(&pa.lcm, &pb.lcm).then((pa.i, pa.j).cmp(&(pb.i, pb.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }
}

fn run_buchberger<C: FieldCoeff>(
    gens: &[Polynomial<C>],
    ord: &TermOrdering,
    budget: GbBudget,
    traced: bool,
) -> Result<(Vec<Polynomial<C>>, Option<Vec<Vec<Polynomial<C>>>>, u64)> {
    let m = gens.len();
    let mut inputs: Vec<(usize, Polynomial<C>)> =
        gens.iter().enumerate().filter(|(_, g)| !g.is_zero()).map(|(k, g)| (k, g.resorted(ord))).collect();
    let nvars = match gens.first() {
        Some(g) => g.nvars(),
        None => return Ok((Vec::new(), traced.then(Vec::new), 0)),
    };
    inputs.sort_by(|a, b| ord.cmp(a.1.lt(), b.1.lt()));

    let mut engine = Engine { ord, polys: Vec::new(), traces: traced.then(Vec::new), active: Vec::new(), pairs: Vec::new() };

    for (k, g) in inputs {
        let mut cof = traced.then(|| {
            let mut v = vec![Polynomial::zero(nvars); m];
            v[k] = Polynomial::constant(nvars, g.lc().one_like());
            v
        });
        let h = engine.reduce(&g, cof.as_mut());
        if h.is_zero() {
            continue;
        }
        let inv = h.lc().inv();
        let cof = cof.map(|c| c.into_iter().map(|p| p.scale(&inv)).collect());
        engine.update(h.scale(&inv), cof);
    }

    let mut reductions = 0u64;
    while let Some(pair) = engine.next_pair() {
        reductions += 1;
        if budget.max_reductions.is_some_and(|max| reductions > max) {
            return Err(Error::Budget(format!("more than {} S-pair reductions", reductions - 1)));
        }
        let (f, g) = (&engine.polys[pair.i], &engine.polys[pair.j]);
        let mf = pair.lcm.checked_div(f.lt()).unwrap();
        let mg = pair.lcm.checked_div(g.lt()).unwrap();
        let one = f.lc().one_like();
        let s = f.mul_term(&one, &mf).sub(&g.mul_term(&one, &mg), ord);
        let mut cof = engine.traces.as_ref().map(|all| {
            all[pair.i]
                .iter()
                .zip(&all[pair.j])
                .map(|(a, b)| a.mul_term(&one, &mf).sub(&b.mul_term(&one, &mg), ord))
                .collect::<Vec<_>>()
        });
        let h = engine.reduce(&s, cof.as_mut());
        if h.is_zero() {
            continue;
        }
        let inv = h.lc().inv();
        let cof = cof.map(|c| c.into_iter().map(|p| p.scale(&inv)).collect());
        engine.update(h.scale(&inv), cof);
    }

    // Minimalize, then interreduce.
    let mut minimal: Vec<usize> = Vec::new();
    for &k in &engine.active {
        let t = engine.polys[k].lt();
        let redundant = engine.active.iter().any(|&o| {
            o != k && engine.polys[o].lt().divides(t) && (engine.polys[o].lt() != t || o < k)
        });
        if !redundant {
            minimal.push(k);
        }
    }
    minimal.sort_by(|&a, &b| ord.cmp(engine.polys[a].lt(), engine.polys[b].lt()));

    let mut out = Vec::with_capacity(minimal.len());
    let mut out_traces = traced.then(Vec::new);
    for &k in &minimal {
        let others: Vec<&Polynomial<C>> = minimal.iter().filter(|&&o| o != k).map(|&o| &engine.polys[o]).collect();
        let g = &engine.polys[k];
        let mut cof = engine.traces.as_ref().map(|all| all[k].clone());
        let reduced = match (&engine.traces, cof.as_mut()) {
            (Some(all), Some(c)) => {
                let other_cofs: Vec<&Vec<Polynomial<C>>> = minimal.iter().filter(|&&o| o != k).map(|&o| &all[o]).collect();
                reduce_traced(g, &others, ord, Some((c, &other_cofs)))
            }
            _ => reduce_traced(g, &others, ord, None),
        };
        let inv = reduced.lc().inv();
        out.push(reduced.scale(&inv));
        if let (Some(ts), Some(c)) = (out_traces.as_mut(), cof) {
            ts.push(c.into_iter().map(|p| p.scale(&inv)).collect());
        }
    }
    Ok((out, out_traces, reductions))
}

/// The reduced Gröbner basis of the ideal generated by `gens` under `ord`.
pub fn buchberger_reduced<C: FieldCoeff>(gens: &[Polynomial<C>], ord: &TermOrdering) -> ReducedGb<C> {
    buchberger_with_budget(gens, ord, GbBudget::default()).expect("unbounded budget")
}

pub fn buchberger_with_budget<C: FieldCoeff>(gens: &[Polynomial<C>], ord: &TermOrdering, budget: GbBudget) -> Result<ReducedGb<C>> {
    Ok(buchberger_counted(gens, ord, budget)?.0)
}

/// Like [`buchberger_with_budget`], also returning the number of S-pair reductions done.
pub fn buchberger_counted<C: FieldCoeff>(
    gens: &[Polynomial<C>],
    ord: &TermOrdering,
    budget: GbBudget,
) -> Result<(ReducedGb<C>, u64)> {
    let (elements, _, reductions) = run_buchberger(gens, ord, budget, false)?;
    Ok((ReducedGb { ordering: ord.clone(), elements }, reductions))
}

/// Leading terms of the reduced basis: the minimal generators of `LT(I)`.
pub fn min_lt<C: FieldCoeff>(gb: &ReducedGb<C>) -> Vec<PowerProduct> {
    gb.min_lt()
}

/// Expresses each element of `gb` in terms of `gens` by replaying a traced
/// Buchberger run on `gens`.
pub fn represent(gb: &ReducedGb<Rational>, gens: &[Polynomial<Rational>]) -> Result<Representation> {
    let ord = gb.ordering();
    let (elements, traces, _) = run_buchberger(gens, ord, GbBudget::default(), true)?;
    let traces = traces.expect("traced run");
    if elements != gb.elements {
        return Err(Error::NotInIdeal);
    }
    Ok(Representation { columns: traces })
}

/// Checks `G = F * M` exactly.
pub fn check_representation(
    gb: &ReducedGb<Rational>,
    gens: &[Polynomial<Rational>],
    rep: &Representation,
) -> bool {
    let ord = gb.ordering();
    rep.columns.len() == gb.len()
        && rep.columns.iter().zip(gb.elements()).all(|(col, g)| {
            let nvars = g.nvars();
            let combo = col
                .iter()
                .zip(gens)
                .fold(Polynomial::zero(nvars), |acc, (c, f)| acc.add(&c.mul(&f.resorted(ord), ord), ord));
            &combo == g
        })
}
