use std::cmp::Ordering;

use num_integer::Integer as _;
use num_traits::{ToPrimitive, Zero};

use super::PowerProduct;
use crate::arith::{Integer, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrderingKind {
    Lex,
    DegLex,
    DegRevLex,
    /// Elimination ordering for the listed indeterminates.
    Elim(Vec<usize>),
    Matrix,
}

/// A term ordering on power products in `nvars` indeterminates; index 0 is
/// the largest indeterminate.
///
/// `Elim` and `Matrix` orderings are evaluated through integer weight rows:
/// `t > s` iff the first row with `row . (t - s) != 0` gives a positive value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrdering {
    nvars: usize,
    kind: OrderingKind,
    rows: Vec<Vec<i64>>,
}

fn degrevlex_rows(nvars: usize, vars: &[usize]) -> Vec<Vec<i64>> {
    if vars.is_empty() {
        return Vec::new();
    }
    let mut rows = Vec::with_capacity(vars.len());
    let mut degree = vec![0; nvars];
    for &v in vars {
        degree[v] = 1;
    }
    rows.push(degree);
    for &v in vars.iter().skip(1).rev() {
        let mut row = vec![0; nvars];
        row[v] = -1;
        rows.push(row);
    }
    rows
}

fn rank(rows: &[Vec<i64>], nvars: usize) -> usize {
    let mut m: Vec<Vec<Rational>> =
        rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(Integer::from(v))).collect()).collect();
    let mut rank = 0;
    for col in 0..nvars {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = &m[r][col] / &m[rank][col];
                for c in col..nvars {
                    let sub = &factor * &m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl TermOrdering {
    pub fn lex(nvars: usize) -> Self {
        TermOrdering { nvars, kind: OrderingKind::Lex, rows: Vec::new() }
    }

    pub fn deglex(nvars: usize) -> Self {
        TermOrdering { nvars, kind: OrderingKind::DegLex, rows: Vec::new() }
    }

    pub fn degrevlex(nvars: usize) -> Self {
        TermOrdering { nvars, kind: OrderingKind::DegRevLex, rows: Vec::new() }
    }

    /// Elimination ordering for `block`: first the total degree in the block,
    /// then degrevlex on the remaining indeterminates, then degrevlex on the block.
    pub fn elim(nvars: usize, block: &[usize]) -> Result<Self> {
        let mut block: Vec<usize> = block.to_vec();
        block.sort_unstable();
        block.dedup();
        if block.is_empty() || block.iter().any(|&i| i >= nvars) {
            return Err(Error::Ordering(format!("invalid elimination block {block:?} for {nvars} indeterminates")));
        }
        let rest: Vec<usize> = (0..nvars).filter(|i| !block.contains(i)).collect();
        let mut rows = Vec::new();
        let mut indicator = vec![0; nvars];
        for &i in &block {
            indicator[i] = 1;
        }
        rows.push(indicator);
        rows.extend(degrevlex_rows(nvars, &rest));
        rows.extend(degrevlex_rows(nvars, &block));
        Ok(TermOrdering { nvars, kind: OrderingKind::Elim(block), rows })
    }

    /// Matrix ordering from rational weight rows; each row is scaled to a
    /// primitive integer row (positive scaling does not change the ordering).
    pub fn matrix(rows: &[Vec<Rational>]) -> Result<Self> {
        let int_rows = rows
            .iter()
            .map(|row| {
                let den = row.iter().fold(Integer::from(1), |acc, q| acc.lcm(q.denom()));
                let ints: Vec<Integer> = row.iter().map(|q| (q * Rational::from_integer(den.clone())).to_integer()).collect();
                let g = ints.iter().fold(Integer::zero(), |acc, v| acc.gcd(v));
                ints.iter()
                    .map(|v| {
                        let v = if g.is_zero() { v.clone() } else { v / &g };
                        v.to_i64().ok_or_else(|| Error::Ordering(format!("weight {v} does not fit in 64 bits")))
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::matrix_int(int_rows)
    }

    pub fn matrix_int(rows: Vec<Vec<i64>>) -> Result<Self> {
        let nvars = rows.first().map(|r| r.len()).ok_or_else(|| Error::Ordering("empty weight matrix".into()))?;
        if rows.iter().any(|r| r.len() != nvars) {
            return Err(Error::Ordering("weight rows have different lengths".into()));
        }
        if rank(&rows, nvars) != nvars {
            return Err(Error::Ordering("weight matrix does not have full rank".into()));
        }
        for col in 0..nvars {
            let first = rows.iter().map(|r| r[col]).find(|&v| v != 0);
            if first.is_none_or(|v| v < 0) {
                return Err(Error::Ordering(format!("indeterminate {col} is not greater than 1")));
            }
        }
        Ok(TermOrdering { nvars, kind: OrderingKind::Matrix, rows })
    }

    /// The ordering refining the weight `w`, broken by the weight `tie`, then by degrevlex.
    pub fn weighted(w: &[Integer], tie: &[Integer]) -> Result<Self> {
        let to_row = |v: &[Integer]| {
            let g = v.iter().fold(Integer::zero(), |acc, x| acc.gcd(x));
            v.iter()
                .map(|x| {
                    let x = if g.is_zero() { x.clone() } else { x / &g };
                    x.to_i64().ok_or_else(|| Error::Ordering(format!("weight {x} does not fit in 64 bits")))
                })
                .collect::<Result<Vec<i64>>>()
        };
        let n = w.len();
        let mut rows = vec![to_row(w)?, to_row(tie)?];
        rows.extend(degrevlex_rows(n, &(0..n).collect::<Vec<_>>()));
        Self::matrix_int(rows)
    }

    /// Text form accepted by the input grammar, e.g. `elim(x,y)`.
    pub fn describe(&self, names: &[String]) -> String {
        match &self.kind {
            OrderingKind::Lex => "lex".to_string(),
            OrderingKind::DegLex => "deglex".to_string(),
            OrderingKind::DegRevLex => "degrevlex".to_string(),
            OrderingKind::Elim(block) => {
                format!("elim({})", block.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join(","))
            }
            OrderingKind::Matrix => {
                let rows: Vec<String> = self
                    .rows
                    .iter()
                    .map(|r| format!("[{}]", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
                    .collect();
                format!("matrix({})", rows.join(","))
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn kind(&self) -> &OrderingKind {
        &self.kind
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Compares two power products, rejecting arity mismatches.
    pub fn compare(&self, t: &PowerProduct, s: &PowerProduct) -> Result<Ordering> {
        for pp in [t, s] {
            if pp.nvars() != self.nvars {
                return Err(Error::ArityMismatch { expected: self.nvars, got: pp.nvars() });
            }
        }
        Ok(self.cmp(t, s))
    }

    /// Unchecked comparison used on hot paths.
    pub fn cmp(&self, t: &PowerProduct, s: &PowerProduct) -> Ordering {
        let a = t.exponents();
        let b = s.exponents();
        match &self.kind {
            OrderingKind::Lex => a.cmp(b),
            OrderingKind::DegLex => t.degree().cmp(&s.degree()).then_with(|| a.cmp(b)),
            OrderingKind::DegRevLex => t.degree().cmp(&s.degree()).then_with(|| {
                for (x, y) in a.iter().zip(b).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
            OrderingKind::Elim(_) | OrderingKind::Matrix => {
                for row in &self.rows {
                    let d: i128 = row.iter().zip(a.iter().zip(b)).map(|(&w, (&x, &y))| w as i128 * (x as i128 - y as i128)).sum();
                    if d != 0 {
                        return if d > 0 { Ordering::Greater } else { Ordering::Less };
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn gt(&self, t: &PowerProduct, s: &PowerProduct) -> bool {
        self.cmp(t, s) == Ordering::Greater
    }

    pub fn lt(&self, t: &PowerProduct, s: &PowerProduct) -> bool {
        self.cmp(t, s) == Ordering::Less
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(e: &[u32]) -> PowerProduct {
        PowerProduct::new(e.iter().copied())
    }

    /// All power products of total degree `d` in `n` indeterminates.
    fn monomials_of_degree(n: usize, d: u32) -> Vec<PowerProduct> {
        if n == 1 {
            return vec![pp(&[d])];
        }
        let mut out = Vec::new();
        for a in 0..=d {
            for rest in monomials_of_degree(n - 1, d - a) {
                let mut e = vec![a];
                e.extend_from_slice(rest.exponents());
                out.push(pp(&e));
            }
        }
        out
    }

    /// Definitional degrevlex rule: higher degree wins; on ties the last
    /// nonzero entry of exp(t) - exp(s) is negative.
    fn degrevlex_rule(t: &PowerProduct, s: &PowerProduct) -> Ordering {
        if t.degree() != s.degree() {
            return t.degree().cmp(&s.degree());
        }
        let diff: Vec<i64> = t.exponents().iter().zip(s.exponents()).map(|(&a, &b)| a as i64 - b as i64).collect();
        match diff.iter().rev().find(|&&d| d != 0) {
            None => Ordering::Equal,
            Some(&d) if d < 0 => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    #[test]
    fn degrevlex_matches_definition_on_degree_three() {
        let ord = TermOrdering::degrevlex(3);
        let mons = monomials_of_degree(3, 3);
        for t in &mons {
            for s in &mons {
                assert_eq!(ord.cmp(t, s), degrevlex_rule(t, s));
            }
        }
        assert_eq!(ord.compare(&pp(&[1, 1, 1]), &pp(&[3, 0, 0])).unwrap(), Ordering::Less);
    }

    #[test]
    fn reflexive_and_lex_examples() {
        for ord in [TermOrdering::lex(3), TermOrdering::deglex(3), TermOrdering::degrevlex(3)] {
            assert_eq!(ord.cmp(&pp(&[1, 2, 3]), &pp(&[1, 2, 3])), Ordering::Equal);
        }
        let lex = TermOrdering::lex(3);
        assert_eq!(lex.cmp(&pp(&[0, 0, 26]), &pp(&[0, 1, 0])), Ordering::Less);
        assert!(lex.compare(&pp(&[1, 0]), &pp(&[1, 0, 0])).is_err());
    }

    #[test]
    fn matrix_degrevlex_agrees_with_builtin() {
        let n = 3;
        let m = TermOrdering::matrix_int(degrevlex_rows(n, &[0, 1, 2])).unwrap();
        let drl = TermOrdering::degrevlex(n);
        let mons: Vec<PowerProduct> = (0..4).flat_map(|d| monomials_of_degree(n, d)).collect();
        for t in &mons {
            for s in &mons {
                assert_eq!(m.cmp(t, s), drl.cmp(t, s));
            }
        }
    }

    #[test]
    fn elimination_block_dominates() {
        // x, y, z, w, s, t with block {s, t}
        let ord = TermOrdering::elim(6, &[4, 5]).unwrap();
        let s = pp(&[0, 0, 0, 0, 1, 0]);
        let x5 = pp(&[5, 0, 0, 0, 0, 0]);
        assert!(ord.gt(&s, &x5));
        // ty < sy < tx < sx
        let ty = pp(&[0, 1, 0, 0, 0, 1]);
        let sy = pp(&[0, 1, 0, 0, 1, 0]);
        let tx = pp(&[1, 0, 0, 0, 0, 1]);
        let sx = pp(&[1, 0, 0, 0, 1, 0]);
        assert!(ord.lt(&ty, &sy) && ord.lt(&sy, &tx) && ord.lt(&tx, &sx));
    }

    #[test]
    fn matrix_validation() {
        assert!(TermOrdering::matrix_int(vec![vec![1, 1], vec![1, 1]]).is_err());
        assert!(TermOrdering::matrix_int(vec![vec![-1, 1], vec![0, 1]]).is_err());
        let q = |n: i64, d: i64| Rational::new(Integer::from(n), Integer::from(d));
        let ord = TermOrdering::matrix(&[vec![q(1, 2), q(1, 3)], vec![q(0, 1), q(-1, 1)]]).unwrap();
        assert_eq!(ord.rows()[0], vec![3, 2]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn orderings() -> Vec<TermOrdering> {
            vec![
                TermOrdering::lex(3),
                TermOrdering::deglex(3),
                TermOrdering::degrevlex(3),
                TermOrdering::elim(3, &[1]).unwrap(),
                TermOrdering::matrix_int(vec![vec![2, 1, 5], vec![0, 1, 0], vec![0, 0, 1]]).unwrap(),
            ]
        }

        fn exps() -> impl Strategy<Value = PowerProduct> {
            proptest::collection::vec(0u32..6, 3).prop_map(|v| PowerProduct::new(v))
        }

        proptest! {
            #[test]
            fn multiplicative(t in exps(), s in exps(), u in exps()) {
                for ord in orderings() {
                    if ord.cmp(&t, &s) == Ordering::Greater {
                        prop_assert_eq!(ord.cmp(&t.mul(&u), &s.mul(&u)), Ordering::Greater);
                    }
                }
            }

            #[test]
            fn one_is_minimal(t in exps()) {
                prop_assume!(!t.is_one());
                for ord in orderings() {
                    prop_assert_eq!(ord.cmp(&t, &PowerProduct::one(3)), Ordering::Greater);
                }
            }

            #[test]
            fn antisymmetric(t in exps(), s in exps()) {
                for ord in orderings() {
                    prop_assert_eq!(ord.cmp(&t, &s), ord.cmp(&s, &t).reverse());
                    prop_assert_eq!(ord.cmp(&t, &s) == Ordering::Equal, t == s);
                }
            }
        }
    }
}
