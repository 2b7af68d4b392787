#![allow(dead_code)]

use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use modp_ideals::io::{parse_monomials, parse_polys};
use modp_ideals::tuples::LtTuple;
use modp_ideals::{Polynomial, PowerProduct, Rational, TermOrdering};
use num_traits::Zero;
use rand::Rng;

pub fn names(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|s| s.to_string()).collect()
}

pub fn polys(text: &str, names: &[String], ord: &TermOrdering) -> Vec<Polynomial<Rational>> {
    parse_polys(text, names, ord).expect("valid polynomials")
}

pub fn fmt<C: modp_ideals::Coeff>(ps: &[Polynomial<C>], names: &[String]) -> Vec<String> {
    ps.iter().map(|g| g.format(names)).collect()
}

pub fn sorted(mut v: Vec<String>) -> Vec<String> {
    v.sort();
    v
}

pub fn terms(text: &str, names: &[String]) -> Vec<PowerProduct> {
    parse_monomials(text, names).expect("valid power products")
}

pub fn tuple(text: &str, names: &[String], ord: &TermOrdering) -> LtTuple {
    LtTuple::new(ord, &terms(text, names))
}

pub fn data(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data").join(file)
}

pub fn primes_below(n: u64) -> Vec<u64> {
    (2..n).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// A random nonzero polynomial with at most `max_terms` terms of total degree
/// at most `max_deg` and small rational coefficients.
pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, max_deg: u32, max_terms: usize, ord: &TermOrdering) -> Polynomial<Rational> {
    loop {
        let k = rng.gen_range(1..=max_terms);
        let mut ts = Vec::with_capacity(k);
        for _ in 0..k {
            let deg = rng.gen_range(0..=max_deg);
            let mut e = vec![0u32; nvars];
            for _ in 0..deg {
                e[rng.gen_range(0..nvars)] += 1;
            }
            let num: i64 = rng.gen_range(-9..=9);
            let den: i64 = rng.gen_range(1..=6);
            if num != 0 {
                ts.push((PowerProduct::new(e), Rational::new(num.into(), den.into())));
            }
        }
        let f = Polynomial::from_terms(nvars, ts, ord);
        if !f.is_zero() && f.terms().iter().all(|(_, c)| !c.is_zero()) {
            return f;
        }
    }
}

/// Random generators: 2 or 3 indeterminates, 1 to 3 generators of degree at most 4.
pub fn random_ideal<R: Rng>(rng: &mut R) -> (usize, Vec<Polynomial<Rational>>) {
    let n = rng.gen_range(2..=3);
    let ord = TermOrdering::degrevlex(n);
    let m = rng.gen_range(1..=3);
    (n, (0..m).map(|_| random_poly(rng, n, 4, 3, &ord)).collect())
}

/// Collects named checks and prints one summary line on stderr, bypassing
/// the test harness capture so the line shows up in plain `cargo test` output.
pub struct Report {
    label: String,
    start: Instant,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Report {
    pub fn new(label: &str) -> Self {
        Report { label: label.to_string(), start: Instant::now(), failures: Vec::new(), notes: Vec::new() }
    }

    pub fn check(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    pub fn check_eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.failures.push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    pub fn note(&mut self, text: String) {
        self.notes.push(text);
    }

    /// Prints the summary and panics when any check failed or time ran out.
    pub fn finish(mut self, limit: Duration) {
        let elapsed = self.start.elapsed();
        if elapsed > limit {
            self.failures.push(format!("took {:.2?}, limit {:.0?}", elapsed, limit));
        }
        let status = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!("{}: {status} in {:.2?}", self.label, elapsed);
        if !self.notes.is_empty() {
            line.push_str(&format!(" ({})", self.notes.join("; ")));
        }
        for f in &self.failures {
            line.push_str(&format!("\n    failed: {f}"));
        }
        let _ = writeln!(std::io::stderr(), "{line}");
        assert!(self.failures.is_empty(), "{line}");
    }
}
