//! Ordered tuples of leading terms and their lexicographic comparison.

use std::cmp::Ordering;

use crate::coeff::{Coeff, FieldCoeff};
use crate::error::{Error, Result};
use crate::groebner::buchberger_reduced;
use crate::poly::{Polynomial, PowerProduct, TermOrdering};

/// Outcome of comparing two tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TupleOrder {
    /// The first tuple is strictly smaller.
    Precedes,
    Equal,
    /// The first tuple is strictly larger.
    Follows,
}

/// An interreduced tuple of power products, strictly increasing under its ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LtTuple {
    ordering: TermOrdering,
    entries: Vec<PowerProduct>,
}

impl LtTuple {
    /// Interreduces `terms` and sorts them under `ord`.
    pub fn new(ord: &TermOrdering, terms: &[PowerProduct]) -> Self {
        let mut entries = interreduce(terms);
        entries.sort_by(|a, b| ord.cmp(a, b));
        LtTuple { ordering: ord.clone(), entries }
    }

    pub fn ordering(&self) -> &TermOrdering {
        &self.ordering
    }

    pub fn entries(&self) -> &[PowerProduct] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Bracketed text form, e.g. `[z^3, y^3, x^2*y]`.
    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self.entries.iter().map(|t| t.format(names)).collect();
        format!("[{}]", parts.join(", "))
    }

    /// Compares `self` with `other`; see [`precedes`].
    pub fn compare(&self, other: &LtTuple) -> Result<TupleOrder> {
        precedes(self, other)
    }

    /// Total order for sorting and maximum search; panics on mixed orderings.
    pub fn cmp_tuples(&self, other: &LtTuple) -> Ordering {
        match precedes(self, other).expect("tuples share an ordering") {
            TupleOrder::Precedes => Ordering::Less,
            TupleOrder::Equal => Ordering::Equal,
            TupleOrder::Follows => Ordering::Greater,
        }
    }
}

/// The power products of `terms` not divisible by a different element,
/// deduplicated, in first-occurrence order.
pub fn interreduce(terms: &[PowerProduct]) -> Vec<PowerProduct> {
    let mut out: Vec<PowerProduct> = Vec::new();
    for t in terms {
        if out.contains(t) {
            continue;
        }
        if terms.iter().any(|s| s != t && s.divides(t)) {
            continue;
        }
        out.push(t.clone());
    }
    out
}

/// The tuple of the interreduced leading terms of `polys`.
pub fn os_of_polys<C: Coeff>(polys: &[Polynomial<C>], ord: &TermOrdering) -> Result<LtTuple> {
    let mut lts = Vec::with_capacity(polys.len());
    for f in polys {
        let f = f.resorted(ord);
        lts.push(f.leading()?.0.clone());
    }
    Ok(LtTuple::new(ord, &lts))
}

/// The tuple of minimal leading terms of the ideal generated by `gens`.
pub fn os_of_ideal<C: FieldCoeff>(gens: &[Polynomial<C>], ord: &TermOrdering) -> LtTuple {
    let gb = buchberger_reduced(gens, ord);
    LtTuple { ordering: ord.clone(), entries: gb.min_lt() }
}

/// Entrywise lexicographic comparison; the end of a tuple acts as an entry
/// larger than every power product, so a proper extension precedes its prefix.
pub fn precedes(a: &LtTuple, b: &LtTuple) -> Result<TupleOrder> {
    if a.ordering != b.ordering {
        return Err(Error::OrderingMismatch(format!("{:?}", a.ordering.kind()), format!("{:?}", b.ordering.kind())));
    }
    let ord = &a.ordering;
    for k in 0.. {
        match (a.entries.get(k), b.entries.get(k)) {
            (None, None) => return Ok(TupleOrder::Equal),
            (Some(_), None) => return Ok(TupleOrder::Precedes),
            (None, Some(_)) => return Ok(TupleOrder::Follows),
            (Some(s), Some(t)) => match ord.cmp(s, t) {
                Ordering::Less => return Ok(TupleOrder::Precedes),
                Ordering::Greater => return Ok(TupleOrder::Follows),
                Ordering::Equal => {}
            },
        }
    }
    unreachable!()
}

/// A certificate that the tuple of a set of power products precedes a given tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// The smallest element of the set not divisible by any tuple entry.
    pub t_min: PowerProduct,
    /// Smallest admissible index (1-based): the first entry larger than `t_min`.
    pub k_min: usize,
    /// Largest admissible index (1-based) for `t_min`.
    pub k_max: usize,
}

/// Looks for `t'` in `set` and an index `k` such that the first `k - 1`
/// entries of `tuple` lie in `set`, the `k`-th entry exceeds `t'`, and `t'`
/// is divisible by no entry. Returns the smallest such `t'` with its range of
/// admissible indices.
pub fn lessthan_witness(tuple: &LtTuple, set: &[PowerProduct]) -> Option<Witness> {
    let ord = &tuple.ordering;
    let t = &tuple.entries;
    let mut candidates: Vec<&PowerProduct> = set.iter().filter(|s| t.iter().all(|ti| !ti.divides(s))).collect();
    candidates.sort_by(|a, b| ord.cmp(a, b));
    candidates.dedup();
    // only the smallest candidate can qualify: any larger one has a smaller or equal first exceeding entry
    let t_min = (*candidates.first()?).clone();
    let j = t.iter().position(|ti| ord.gt(ti, &t_min))?;
    if !t[..j].iter().all(|ti| set.contains(ti)) {
        return None;
    }
    let mut k_max = j;
    while k_max + 1 < t.len() && set.contains(&t[k_max]) {
        k_max += 1;
    }
    Some(Witness { t_min, k_min: j + 1, k_max: k_max + 1 })
}
