use std::cmp::Ordering;
use std::collections::HashMap;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{PowerProduct, TermOrdering};
use crate::arith::{lcm, Integer, Rational};
use crate::coeff::{Coeff, FieldCoeff, Fp};
use crate::error::{Error, Result};

/// A multivariate polynomial stored as terms sorted strictly decreasing
/// under the ordering supplied when it was built. Operations that merge
/// term lists take that ordering again; callers keep it consistent.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C> {
    nvars: usize,
    terms: Vec<(PowerProduct, C)>,
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(PowerProduct::one(nvars), c)
    }

    pub fn monomial(pp: PowerProduct, c: C) -> Self {
        let nvars = pp.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(pp, c)] }
    }

    /// Builds a polynomial from arbitrary terms: like terms are combined,
    /// zeros dropped, and the result sorted under `ord`.
    pub fn from_terms(nvars: usize, terms: Vec<(PowerProduct, C)>, ord: &TermOrdering) -> Self {
        let mut index: HashMap<PowerProduct, usize> = HashMap::new();
        let mut merged: Vec<(PowerProduct, C)> = Vec::with_capacity(terms.len());
        for (pp, c) in terms {
            debug_assert_eq!(pp.nvars(), nvars);
            match index.get(&pp) {
                Some(&i) => merged[i].1 = merged[i].1.add_ref(&c),
                None => {
                    index.insert(pp.clone(), merged.len());
                    merged.push((pp, c));
                }
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        merged.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Polynomial { nvars, terms: merged }
    }

    /// Wraps terms already sorted strictly decreasing under the active ordering.
    pub(crate) fn from_sorted_terms(nvars: usize, terms: Vec<(PowerProduct, C)>) -> Self {
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(PowerProduct, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(PowerProduct, C)> {
        self.terms
    }

    /// Leading power product and leading coefficient.
    pub fn leading(&self) -> Result<(&PowerProduct, &C)> {
        self.terms.first().map(|(t, c)| (t, c)).ok_or(Error::ZeroPolynomial)
    }

    /// Leading power product; panics on the zero polynomial.
    pub fn lt(&self) -> &PowerProduct {
        &self.terms[0].0
    }

    /// Leading coefficient; panics on the zero polynomial.
    pub fn lc(&self) -> &C {
        &self.terms[0].1
    }

    pub fn coeff_of(&self, pp: &PowerProduct) -> Option<&C> {
        self.terms.iter().find(|(t, _)| t == pp).map(|(_, c)| c)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(t, _)| t.degree()).max().unwrap_or(0)
    }

    /// Re-sorts the terms for a different ordering.
    pub fn resort(&mut self, ord: &TermOrdering) {
        self.terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    }

    pub fn resorted(&self, ord: &TermOrdering) -> Self {
        let mut p = self.clone();
        p.resort(ord);
        p
    }

    pub fn neg(&self) -> Self {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(t, c)| (t.clone(), c.neg_ref())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.clone(), a.mul_ref(c))).filter(|(_, a)| !a.is_zero()).collect(),
        }
    }

    /// `c * pp * self`; term order is preserved because orderings are multiplicative.
    pub fn mul_term(&self, c: &C, pp: &PowerProduct) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(pp), a.mul_ref(c)))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self, ord: &TermOrdering) -> Self {
        self.combine(other, ord, false)
    }

    pub fn sub(&self, other: &Self, ord: &TermOrdering) -> Self {
        self.combine(other, ord, true)
    }

    fn combine(&self, other: &Self, ord: &TermOrdering, subtract: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match ord.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if subtract { b[j].1.neg_ref() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract { a[i].1.sub_ref(&b[j].1) } else { a[i].1.add_ref(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(t, c)| (t.clone(), if subtract { c.neg_ref() } else { c.clone() })));
        Polynomial { nvars: self.nvars, terms: out }
    }

    /// `self - c * pp * g`, merged in one pass.
    pub fn sub_mul_term(&self, c: &C, pp: &PowerProduct, g: &Self, ord: &TermOrdering) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let a = &self.terms;
        let mut i = 0;
        let mut pending: Option<(PowerProduct, C)> = None;
        let mut g_iter = g.terms.iter();
        loop {
            if pending.is_none() {
                pending = g_iter.next().map(|(t, b)| (t.mul(pp), b.mul_ref(c)));
            }
            let Some((gt, gc)) = pending.as_ref() else { break };
            if i >= a.len() {
                out.push((gt.clone(), gc.neg_ref()));
                pending = None;
                continue;
            }
            match ord.cmp(&a[i].0, gt) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((gt.clone(), gc.neg_ref()));
                    pending = None;
                }
                Ordering::Equal => {
                    let v = a[i].1.sub_ref(gc);
                    if !v.is_zero() {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    pending = None;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        Polynomial { nvars: self.nvars, terms: out }
    }

    pub fn mul(&self, other: &Self, ord: &TermOrdering) -> Self {
        let mut acc = Self::zero(self.nvars);
        for (t, c) in &other.terms {
            acc = acc.add(&self.mul_term(c, t), ord);
        }
        acc
    }

    pub fn pow(&self, e: u32, ord: &TermOrdering) -> Self {
        let mut acc = match self.terms.first() {
            Some((_, c)) => Self::constant(self.nvars, c.one_like()),
            None if e == 0 => panic!("0^0 has no coefficient domain witness"),
            None => return Self::zero(self.nvars),
        };
        for _ in 0..e {
            acc = acc.mul(self, ord);
        }
        acc
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, c)| (t.clone(), f(c))).filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Canonical text form, e.g. `x^2*y - 3/5*x + 1`.
    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (t, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative_display();
            let abs = if negative { c.neg_ref() } else { c.clone() };
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if t.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&t.format(names));
            } else {
                out.push_str(&format!("{}*{}", abs, t.format(names)));
            }
        }
        out
    }
}

impl<C: FieldCoeff> Polynomial<C> {
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }
}

impl Polynomial<Rational> {
    /// Least common multiple of the coefficient denominators; `den(0) = 1`.
    pub fn den(&self) -> Integer {
        self.terms.iter().fold(Integer::one(), |acc, (_, c)| lcm(&acc, c.denom()))
    }

    /// Primitive integral part: `f * den(f)` divided by its integer content,
    /// signed so that the leading coefficient is positive.
    pub fn prim(&self) -> Result<Polynomial<Integer>> {
        let (_, lc) = self.leading()?;
        let den = Rational::from_integer(self.den());
        let ints: Vec<(PowerProduct, Integer)> = self.terms.iter().map(|(t, c)| (t.clone(), (c * &den).to_integer())).collect();
        let content = ints.iter().fold(Integer::zero(), |acc, (_, c)| acc.gcd(c));
        let sign = if lc.is_negative() { -Integer::one() } else { Integer::one() };
        let divisor = content * sign;
        Ok(Polynomial { nvars: self.nvars, terms: ints.into_iter().map(|(t, c)| (t, c / &divisor)).collect() })
    }

    /// Image under reduction modulo `p`; fails when `p` divides a denominator.
    pub fn reduce_mod_p(&self, p: u64) -> Result<Polynomial<Fp>> {
        let pb = Integer::from(p);
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, c) in &self.terms {
            if Zero::is_zero(&(c.denom() % &pb)) {
                return Err(Error::BadPrimeForInput { p, den: self.den() });
            }
            let v = crate::arith::rational_mod_u64(c, p).expect("denominator is invertible");
            if v != 0 {
                terms.push((t.clone(), Fp::new(v, p)));
            }
        }
        Ok(Polynomial { nvars: self.nvars, terms })
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| One::is_one(c.denom()))
    }
}

impl Polynomial<Integer> {
    /// Gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> Integer {
        self.terms.iter().fold(Integer::zero(), |acc, (_, c)| acc.gcd(c))
    }

    pub fn to_rational(&self) -> Polynomial<Rational> {
        self.map_coeffs(|c| Rational::from_integer(c.clone()))
    }

    pub fn reduce_mod_p(&self, p: u64) -> Polynomial<Fp> {
        let pb = Integer::from(p);
        self.map_coeffs(|c| {
            let r = c.mod_floor(&pb);
            Fp::new(num_traits::ToPrimitive::to_u64(&r).expect("residue fits"), p)
        })
    }
}

/// Least common multiple of `den(f)` over a set of polynomials; `den(∅) = 1`.
pub fn den_of_set(polys: &[Polynomial<Rational>]) -> Integer {
    polys.iter().fold(Integer::one(), |acc, f| lcm(&acc, &f.den()))
}

/// Reduces every polynomial of a set modulo `p`.
pub fn reduce_set_mod_p(polys: &[Polynomial<Rational>], p: u64) -> Result<Vec<Polynomial<Fp>>> {
    polys.iter().map(|f| f.reduce_mod_p(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    fn q(terms: &[(i64, i64, &[u32])], ord: &TermOrdering) -> Polynomial<Rational> {
        let n = terms[0].2.len();
        Polynomial::from_terms(n, terms.iter().map(|(a, b, e)| (PowerProduct::new(e.iter().copied()), rat(*a, *b))).collect(), ord)
    }

    #[test]
    fn leading_data() {
        let drl = TermOrdering::degrevlex(2);
        let f = Polynomial::from_terms(
            2,
            vec![(PowerProduct::new([2, 0]), int(6)), (PowerProduct::new([0, 2]), int(-35))],
            &drl,
        );
        let (t, c) = f.leading().unwrap();
        assert_eq!((t.clone(), c.clone()), (PowerProduct::new([2, 0]), int(6)));

        let c = Polynomial::constant(2, rat(5, 3));
        assert_eq!(c.leading().unwrap().0, &PowerProduct::one(2));

        let drl3 = TermOrdering::degrevlex(3);
        let g = q(&[(2, 1, &[0, 1, 0]), (-1, 1, &[0, 0, 1])], &drl3);
        assert_eq!(g.leading().unwrap(), (&PowerProduct::new([0, 1, 0]), &rat(2, 1)));
        assert_eq!(Polynomial::<Rational>::zero(2).leading(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn den_and_prim() {
        let ord = TermOrdering::degrevlex(3);
        let f = q(&[(2, 1, &[1, 0, 0]), (4, 3, &[0, 0, 0])], &ord);
        assert_eq!(f.den(), int(3));
        let p = f.prim().unwrap();
        assert_eq!(p.format(&names(&["x", "y", "z"])), "3*x + 2");

        assert_eq!(Polynomial::<Rational>::zero(3).den(), int(1));
        let g1 = q(&[(1, 1, &[1, 0, 0]), (-1, 2, &[0, 0, 0])], &ord);
        let g2 = q(&[(1, 1, &[0, 1, 0]), (-1, 3, &[0, 0, 0])], &ord);
        // lcm of the per-polynomial denominators 2 and 3
        assert_eq!(den_of_set(&[g1, g2]), int(6));

        let h = q(&[(1, 1, &[1, 0, 0]), (-1, 4, &[0, 0, 1])], &ord);
        assert_eq!(h.prim().unwrap().format(&names(&["x", "y", "z"])), "4*x - z");
        let s = q(&[(1, 1, &[1, 0, 0]), (1, 1, &[0, 1, 0])], &ord);
        assert_eq!(s.prim().unwrap().format(&names(&["x", "y", "z"])), "x + y");
        assert_eq!(Polynomial::<Rational>::zero(3).prim(), Err(Error::ZeroPolynomial));
        let neg = q(&[(-2, 1, &[1, 0, 0]), (1, 1, &[0, 0, 0])], &ord);
        assert_eq!(neg.prim().unwrap().format(&names(&["x", "y", "z"])), "2*x - 1");
    }

    #[test]
    fn reduction_mod_p() {
        let ord = TermOrdering::degrevlex(1);
        let f = q(&[(1, 1, &[1]), (-1, 2, &[0])], &ord);
        let f5 = f.reduce_mod_p(5).unwrap();
        assert_eq!(f5.terms()[1].1.value(), 2);
        assert_eq!(f5.format(&names(&["x"])), "x + 2");
        assert!(matches!(f.reduce_mod_p(2), Err(Error::BadPrimeForInput { p: 2, .. })));
        assert!(Polynomial::<Rational>::zero(1).reduce_mod_p(7).unwrap().is_zero());
    }

    #[test]
    fn arithmetic() {
        let ord = TermOrdering::degrevlex(2);
        let n = names(&["x", "y"]);
        let x = q(&[(1, 1, &[1, 0])], &ord);
        let y = q(&[(1, 1, &[0, 1])], &ord);
        let s = x.add(&y, &ord);
        let d = x.sub(&y, &ord);
        assert_eq!(s.mul(&d, &ord).format(&n), "x^2 - y^2");
        assert_eq!(s.pow(2, &ord).format(&n), "x^2 + 2*x*y + y^2");
        assert!(s.sub(&s, &ord).is_zero());
        let r = s.sub_mul_term(&rat(1, 1), &PowerProduct::new([1, 0]), &d, &ord);
        assert_eq!(r.format(&n), "-x^2 + x*y + x + y");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = Polynomial<Rational>> {
            proptest::collection::vec(((-9i64..10), (1i64..7), proptest::collection::vec(0u32..3, 2)), 0..5).prop_map(|ts| {
                Polynomial::from_terms(
                    2,
                    ts.into_iter().map(|(a, b, e)| (PowerProduct::new(e), rat(a, b))).collect(),
                    &TermOrdering::degrevlex(2),
                )
            })
        }

        proptest! {
            #[test]
            fn prim_content_one_and_scale_invariant(f in poly(), a in -5i64..6, b in 1i64..6) {
                prop_assume!(!f.is_zero() && a != 0);
                let p = f.prim().unwrap();
                prop_assert!(p.content() == int(1));
                prop_assert!(p.lc() > &int(0));
                prop_assert_eq!(f.scale(&rat(a, b)).prim().unwrap(), p);
            }

            #[test]
            fn den_is_minimal(f in poly()) {
                let d = f.den();
                let scaled = f.scale(&Rational::from_integer(d.clone()));
                prop_assert!(scaled.is_integral());
                for (prime, _) in crate::arith::factorize(&d) {
                    let smaller = f.scale(&Rational::from_integer(&d / &prime));
                    prop_assert!(!smaller.is_integral());
                }
            }

            #[test]
            fn reduction_is_a_ring_homomorphism(f in poly(), g in poly(), p in prop::sample::select(vec![7u64, 11, 13])) {
                let ord = TermOrdering::degrevlex(2);
                let (fp, gp) = (f.reduce_mod_p(p).unwrap(), g.reduce_mod_p(p).unwrap());
                prop_assert_eq!(f.mul(&g, &ord).reduce_mod_p(p).unwrap(), fp.mul(&gp, &ord));
                prop_assert_eq!(f.add(&g, &ord).reduce_mod_p(p).unwrap(), fp.add(&gp, &ord));
            }
        }
    }
}
