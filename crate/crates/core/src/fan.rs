//! Gröbner fan enumeration restricted to the positive orthant: every reduced
//! basis of an ideal of `QQ[x1, ..., xn]` together with its cone of weights,
//! the universal denominator and the ordering-free reduction modulo a prime.
//!
//! Cones are found by flipping facets: a point in the relative interior of a
//! facet is located by exact Fourier–Motzkin elimination, and the neighbour's
//! basis is recomputed under the weight ordering `[w; -v; degrevlex]`.

use std::collections::{BTreeSet, HashMap};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{lcm, Integer, Rational};
use crate::coeff::Fp;
use crate::error::{Error, Result};
use crate::groebner::{buchberger_counted, GbBudget, ReducedGb};
use crate::poly::{Ideal, Polynomial, TermOrdering};
use crate::primes::{check_prime, same_ideal};

/// Limits for fan enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FanBudget {
    pub max_cones: usize,
    /// S-pair reductions summed over all basis computations.
    pub max_reductions: u64,
}

impl Default for FanBudget {
    fn default() -> Self {
        FanBudget { max_cones: 2000, max_reductions: 1_000_000 }
    }
}

impl FanBudget {
    /// Reads `MGB_BUDGET=cones[,reductions]`, falling back to the defaults.
    pub fn from_env() -> Result<Self> {
        match std::env::var("MGB_BUDGET") {
            Ok(v) => Self::parse(&v),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut budget = Self::default();
        let mut parts = text.split(',').map(str::trim);
        let bad = || Error::InvalidArgument(format!("budget {text:?} is not of the form cones[,reductions]"));
        if let Some(c) = parts.next().filter(|s| !s.is_empty()) {
            budget.max_cones = c.parse().map_err(|_| bad())?;
        }
        if let Some(r) = parts.next().filter(|s| !s.is_empty()) {
            budget.max_reductions = r.parse().map_err(|_| bad())?;
        }
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(budget)
    }
}

/// A facet of a cone that meets the open positive orthant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    /// Inner normal: the cone lies in `normal . w >= 0`.
    pub normal: Vec<Integer>,
    /// A strictly positive integer point in the relative interior of the facet.
    pub point: Vec<Integer>,
}

/// A reduced Gröbner basis with its marked leading terms and weight cone.
#[derive(Clone, Debug)]
pub struct MarkedGb {
    basis: ReducedGb<Rational>,
    inequalities: Vec<Vec<Integer>>,
    interior: Vec<Integer>,
    key: String,
}

impl MarkedGb {
    pub fn new(basis: ReducedGb<Rational>) -> Result<Self> {
        let inequalities = cone_inequalities(&basis);
        let n = basis.ordering().nvars();
        let interior = integer_point(&[], &inequalities, n)
            .ok_or_else(|| Error::InvalidArgument("marked basis has an empty cone".into()))?;
        let key = marked_key(&basis);
        Ok(MarkedGb { basis, inequalities, interior, key })
    }

    pub fn basis(&self) -> &ReducedGb<Rational> {
        &self.basis
    }

    /// Primitive vectors `exp(LT(g)) - exp(t)` for every non-leading term `t`.
    pub fn inequalities(&self) -> &[Vec<Integer>] {
        &self.inequalities
    }

    /// A strictly positive integer weight in the interior of the cone.
    pub fn interior_point(&self) -> &[Integer] {
        &self.interior
    }

    /// Canonical serialization of the marked basis.
    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn den(&self) -> Integer {
        self.basis.den()
    }

    /// Whether `w` satisfies every cone inequality.
    pub fn contains_weight(&self, w: &[Integer]) -> bool {
        self.inequalities.iter().all(|v| !dot(v, w).is_negative())
    }

    /// Facets meeting the open positive orthant, each with a relative interior point.
    pub fn facets(&self) -> Vec<Facet> {
        let n = self.basis.ordering().nvars();
        self.inequalities
            .iter()
            .enumerate()
            .filter_map(|(k, v)| {
                let others: Vec<Vec<Integer>> =
                    self.inequalities.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, u)| u.clone()).collect();
                integer_point(std::slice::from_ref(v), &others, n).map(|point| Facet { normal: v.clone(), point })
            })
            .collect()
    }
}

/// The Gröbner fan: cones in discovery order and the facet-flip graph.
#[derive(Clone, Debug)]
pub struct Fan {
    pub cones: Vec<MarkedGb>,
    /// `adjacency[i]` lists the cones reached by flipping a facet of cone `i`.
    pub adjacency: Vec<BTreeSet<usize>>,
    /// S-pair reductions spent.
    pub reductions: u64,
}

impl Fan {
    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn universal_denominator(&self) -> Integer {
        self.cones.iter().fold(Integer::one(), |acc, c| lcm(&acc, &c.den()))
    }

    /// The cone whose basis is the given marked basis, if enumerated.
    pub fn find(&self, basis: &ReducedGb<Rational>) -> Option<usize> {
        let key = marked_key(basis);
        self.cones.iter().position(|c| c.key == key)
    }
}

fn dot(v: &[Integer], w: &[Integer]) -> Integer {
    v.iter().zip(w).map(|(a, b)| a * b).sum()
}

fn primitive(v: Vec<Integer>) -> Vec<Integer> {
    let g = v.iter().fold(Integer::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

fn cone_inequalities(basis: &ReducedGb<Rational>) -> Vec<Vec<Integer>> {
    let mut set = BTreeSet::new();
    for g in basis.elements() {
        let lead = g.lt().exponents();
        for (t, _) in &g.terms()[1..] {
            let v: Vec<Integer> =
                lead.iter().zip(t.exponents()).map(|(&a, &b)| Integer::from(a) - Integer::from(b)).collect();
            set.insert(primitive(v));
        }
    }
    set.into_iter().collect()
}

fn marked_key(basis: &ReducedGb<Rational>) -> String {
    let mut parts: Vec<String> = basis
        .elements()
        .iter()
        .map(|g| {
            let mut terms: Vec<(&[u32], &Rational)> = g.terms().iter().map(|(t, c)| (t.exponents(), c)).collect();
            terms.sort_by(|a, b| a.0.cmp(b.0));
            let body: Vec<String> = terms.iter().map(|(e, c)| format!("{e:?}:{c}")).collect();
            format!("{:?}|{}", g.lt().exponents(), body.join(" "))
        })
        .collect();
    parts.sort();
    parts.join(";")
}

/// Constraint `a . x >= b`.
type Constraint = (Vec<Rational>, Rational);

/// Scales so the first nonzero coefficient has absolute value one.
fn normalize((a, b): Constraint) -> Constraint {
    match a.iter().find(|c| !c.is_zero()) {
        Some(c) => {
            let s = c.abs();
            (a.iter().map(|x| x / &s).collect(), b / s)
        }
        None => (a, b),
    }
}

/// Finds a rational point satisfying every `a . x >= b`, by Fourier–Motzkin
/// elimination of the last variable and back-substitution. Integer values are
/// preferred when the feasible interval contains one.
fn fm_solve(n: usize, cons: Vec<Constraint>) -> Option<Vec<Rational>> {
    let mut best: HashMap<Vec<Rational>, Rational> = HashMap::new();
    for c in cons {
        let (a, b) = normalize(c);
        if a.iter().all(|x| x.is_zero()) {
            if b.is_positive() {
                return None;
            }
            continue;
        }
        let slot = best.entry(a).or_insert_with(|| b.clone());
        if b > *slot {
            *slot = b;
        }
    }
    let cons: Vec<Constraint> = best.into_iter().collect();
    if n == 0 {
        return Some(Vec::new());
    }
    let k = n - 1;
    let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for c in cons {
        match c.0[k].cmp(&Rational::zero()) {
            std::cmp::Ordering::Greater => lower.push(c),
            std::cmp::Ordering::Less => upper.push(c),
            std::cmp::Ordering::Equal => rest.push((c.0[..k].to_vec(), c.1)),
        }
    }
    for (al, bl) in &lower {
        for (au, bu) in &upper {
            let (sl, su) = (al[k].clone(), -au[k].clone());
            let a: Vec<Rational> = (0..k).map(|i| &al[i] * &su + &au[i] * &sl).collect();
            rest.push((a, bl * &su + bu * &sl));
        }
    }
    let mut x = fm_solve(k, rest)?;
    let bound = |(a, b): &Constraint| {
        let partial: Rational = a[..k].iter().zip(&x).map(|(c, v)| c * v).sum();
        (b - partial) / &a[k]
    };
    let lo = lower.iter().map(bound).max();
    let hi = upper.iter().map(bound).min();
    let v = match (lo, hi) {
        (Some(l), Some(h)) => {
            let c = l.ceil();
            if c <= h {
                c
            } else {
                (l + h) / Rational::from_integer(Integer::from(2))
            }
        }
        (Some(l), None) => l.ceil(),
        (None, Some(h)) => h.floor(),
        (None, None) => Rational::zero(),
    };
    x.push(v);
    Some(x)
}

/// A strictly positive integer point `w` with `e . w = 0` for every `e` in
/// `equalities` and `u . w > 0` for every `u` in `strict`.
fn integer_point(equalities: &[Vec<Integer>], strict: &[Vec<Integer>], n: usize) -> Option<Vec<Integer>> {
    let to_q = |v: &[Integer]| v.iter().map(|x| Rational::from_integer(x.clone())).collect::<Vec<_>>();
    let mut cons: Vec<Constraint> = strict.iter().map(|u| (to_q(u), Rational::one())).collect();
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        cons.push((e, Rational::one()));
    }
    // Substitute each equality away, remembering how to recover the pivot.
    let mut subs: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut eqs: Vec<Vec<Rational>> = equalities.iter().map(|e| to_q(e)).collect();
    while let Some(e) = eqs.pop() {
        let Some(k) = e.iter().position(|c| !c.is_zero()) else { continue };
        // x_k = sum_j r_j x_j
        let r: Vec<Rational> = e.iter().enumerate().map(|(j, c)| if j == k { Rational::zero() } else { -c / &e[k] }).collect();
        let apply = |a: &mut Vec<Rational>| {
            let ak = std::mem::replace(&mut a[k], Rational::zero());
            for (aj, rj) in a.iter_mut().zip(&r) {
                *aj += &ak * rj;
            }
        };
        for (a, _) in cons.iter_mut() {
            apply(a);
        }
        for other in eqs.iter_mut() {
            apply(other);
        }
        subs.push((k, r));
    }
    let mut x = fm_solve(n, cons)?;
    for (k, r) in subs.iter().rev() {
        x[*k] = r.iter().zip(&x).map(|(a, b)| a * b).sum();
    }
    let den = x.iter().fold(Integer::one(), |acc, q| lcm(&acc, q.denom()));
    let w: Vec<Integer> = x.iter().map(|q| (q * Rational::from_integer(den.clone())).to_integer()).collect();
    Some(primitive(w))
}

/// The ordering refining `w` by `-normal`, i.e. the side of the facet away from the cone.
fn flip_ordering(facet: &Facet) -> Result<TermOrdering> {
    let tie: Vec<Integer> = facet.normal.iter().map(|x| -x).collect();
    TermOrdering::weighted(&facet.point, &tie)
}

/// Enumerates the Gröbner fan of `ideal` with the default budget.
pub fn enumerate_fan(ideal: &Ideal<Rational>) -> Result<Fan> {
    enumerate_fan_with_budget(ideal, FanBudget::default())
}

/// Breadth-first facet-flip traversal from the degrevlex cone. Each level's
/// flips run in parallel; insertion into the visited set is sequential, so
/// the cone numbering is deterministic.
pub fn enumerate_fan_with_budget(ideal: &Ideal<Rational>, budget: FanBudget) -> Result<Fan> {
    if ideal.is_zero() {
        return Err(Error::InvalidArgument("the zero ideal has no Gröbner fan".into()));
    }
    let n = ideal.nvars();
    let spent = AtomicU64::new(0);
    let compute = |gens: &[Polynomial<Rational>], ord: &TermOrdering| -> Result<ReducedGb<Rational>> {
        let used = spent.load(AtomicOrdering::SeqCst);
        let remaining = budget.max_reductions.saturating_sub(used);
        let (gb, r) = buchberger_counted(gens, ord, GbBudget { max_reductions: Some(remaining) })?;
        spent.fetch_add(r, AtomicOrdering::SeqCst);
        Ok(gb)
    };
    let partial = |cones: usize, reason: String| Error::PartialFan { cones, reason };

    let seed = compute(ideal.gens(), &TermOrdering::degrevlex(n)).map_err(|e| partial(0, e.to_string()))?;
    let seed = MarkedGb::new(seed)?;
    let mut index: HashMap<String, usize> = HashMap::new();
    index.insert(seed.key.clone(), 0);
    let mut cones = vec![seed];
    let mut adjacency = vec![BTreeSet::new()];
    let mut frontier = vec![0usize];

    while !frontier.is_empty() {
        let results: Vec<(usize, Result<Vec<ReducedGb<Rational>>>)> = frontier
            .par_iter()
            .map(|&i| {
                let cone = &cones[i];
                let flipped = cone
                    .facets()
                    .iter()
                    .map(|f| compute(cone.basis.elements(), &flip_ordering(f)?))
                    .collect::<Result<Vec<_>>>();
                (i, flipped)
            })
            .collect();
        let mut next = Vec::new();
        for (i, flipped) in results {
            let flipped = flipped.map_err(|e| partial(cones.len(), e.to_string()))?;
            for gb in flipped {
                let key = marked_key(&gb);
                let j = match index.get(&key) {
                    Some(&j) => j,
                    None => {
                        if cones.len() >= budget.max_cones {
                            return Err(partial(cones.len(), format!("more than {} cones", budget.max_cones)));
                        }
                        let j = cones.len();
                        index.insert(key, j);
                        cones.push(MarkedGb::new(gb)?);
                        adjacency.push(BTreeSet::new());
                        next.push(j);
                        j
                    }
                };
                if j != i {
                    adjacency[i].insert(j);
                }
            }
        }
        frontier = next;
    }
    Ok(Fan { cones, adjacency, reductions: spent.load(AtomicOrdering::SeqCst) })
}

/// `Δ(I)`: the lcm of the denominators of all reduced bases of `ideal`.
pub fn universal_denominator(ideal: &Ideal<Rational>) -> Result<Integer> {
    Ok(enumerate_fan(ideal)?.universal_denominator())
}

/// `I_p`: the reduction of the ideal modulo `p`, generated by the image of the
/// seed cone's basis. With `verify`, checks that every cone's image generates
/// the same ideal.
pub fn reduction_universal(fan: &Fan, p: u64, verify: bool) -> Result<ReducedGb<Fp>> {
    check_prime(p)?;
    let delta = fan.universal_denominator();
    if delta.is_multiple_of(&Integer::from(p)) {
        return Err(Error::DividesUniversalDenominator { p, delta });
    }
    let seed = fan.cones.first().ok_or_else(|| Error::InvalidArgument("empty fan".into()))?;
    let image = seed.basis.reduce_mod_p(p)?;
    if verify {
        let ord = image.ordering().clone();
        for cone in &fan.cones[1..] {
            let other = cone.basis.reduce_mod_p(p)?;
            if !same_ideal(other.elements(), image.elements(), &ord) {
                return Err(Error::InvalidArgument(format!("reductions modulo {p} of two cones differ")));
            }
        }
    }
    Ok(image)
}
