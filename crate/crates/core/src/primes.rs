//! Classification of primes for an ideal of `QQ[x1, ..., xn]`: σ-denominators,
//! σ-good and σ-bad primes, reductions modulo p, Pauer-lucky primes, the
//! radical identity, and modular certification of τ-bad primes.

use std::collections::HashMap;
use std::sync::Mutex;

use num_integer::Integer as _;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{is_prime_u64, rad, Integer, Rational};
use crate::coeff::Fp;
use crate::error::{Error, Result};
use crate::groebner::{buchberger_reduced, ReducedGb};
use crate::poly::{Ideal, Polynomial, TermOrdering};
use crate::strong::strong_gb;
use crate::tuples::{os_of_ideal, LtTuple, TupleOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrimeStatus {
    SigmaGood,
    SigmaBad,
    PauerLucky,
    NotPauerLucky,
    TauBadCertified,
    Undecided,
}

impl PrimeStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            PrimeStatus::SigmaGood => "SIGMA_GOOD",
            PrimeStatus::SigmaBad => "SIGMA_BAD",
            PrimeStatus::PauerLucky => "PAUER_LUCKY",
            PrimeStatus::NotPauerLucky => "NOT_PAUER_LUCKY",
            PrimeStatus::TauBadCertified => "TAU_BAD_CERTIFIED",
            PrimeStatus::Undecided => "UNDECIDED",
        }
    }
}

/// What justifies a verdict.
#[derive(Clone, Debug, PartialEq)]
pub enum Evidence {
    /// The σ-denominator, and for bad primes the first basis element whose
    /// denominator the prime divides.
    Denominator { den: Integer, element: Option<usize> },
    /// The lcm of leading coefficients of a minimal strong basis, and an
    /// element whose leading coefficient the prime divides.
    LeadingCoefficients { lcm: Integer, offending: Option<Integer> },
    /// A prime's τ-tuple, and the larger tuple of another prime when certified.
    Tuples { tuple: LtTuple, beaten_by: Option<LtTuple> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrimeVerdict {
    pub prime: u64,
    pub status: PrimeStatus,
    pub evidence: Evidence,
}

impl PrimeVerdict {
    pub fn to_json(&self, names: &[String]) -> Value {
        let mut v = json!({ "prime": self.prime.to_string(), "status": self.status.as_str() });
        let obj = v.as_object_mut().expect("object");
        match &self.evidence {
            Evidence::Denominator { den, element } => {
                obj.insert("den".into(), Value::String(den.to_string()));
                if let Some(e) = element {
                    obj.insert("element".into(), Value::String(e.to_string()));
                }
            }
            Evidence::LeadingCoefficients { lcm, offending } => {
                obj.insert("lcm".into(), Value::String(lcm.to_string()));
                if let Some(c) = offending {
                    obj.insert("leading_coefficient".into(), Value::String(c.to_string()));
                }
            }
            Evidence::Tuples { tuple, beaten_by } => {
                obj.insert("tuple".into(), Value::String(tuple.format(names)));
                if let Some(b) = beaten_by {
                    obj.insert("beaten_by".into(), Value::String(b.format(names)));
                }
            }
        }
        v
    }
}

/// `I_(p,σ)`: the ideal over 𝔽_p generated by the reduced σ-basis images.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionIdeal {
    pub prime: u64,
    pub basis: ReducedGb<Fp>,
}

impl ReductionIdeal {
    pub fn ordering(&self) -> &TermOrdering {
        self.basis.ordering()
    }

    pub fn generators(&self) -> &[Polynomial<Fp>] {
        self.basis.elements()
    }

    /// Whether the images form the reduced basis of the ideal they generate,
    /// which also makes the minimal leading terms agree with those over ℚ.
    pub fn check_reduced(&self) -> bool {
        buchberger_reduced(self.basis.elements(), self.basis.ordering()) == self.basis
    }
}

/// Result of comparing `rad(den(G_σ))` with `rad(lcm_σ⟨prim(G_σ)⟩)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadCheck {
    pub rad_den: Integer,
    pub rad_lcm: Integer,
    pub equal: bool,
}

pub fn check_prime(p: u64) -> Result<()> {
    if p >= 1 << 63 || !is_prime_u64(p) {
        return Err(Error::NotPrime(Integer::from(p)));
    }
    Ok(())
}

/// An ideal over ℚ with memoized reduced bases and prime tuples.
pub struct IdealAnalysis {
    ideal: Ideal<Rational>,
    bases: Mutex<HashMap<TermOrdering, ReducedGb<Rational>>>,
    tuples: Mutex<HashMap<(u64, TermOrdering, TermOrdering), LtTuple>>,
}

impl IdealAnalysis {
    pub fn new(ideal: Ideal<Rational>) -> Self {
        IdealAnalysis { ideal, bases: Mutex::new(HashMap::new()), tuples: Mutex::new(HashMap::new()) }
    }

    pub fn from_gens(nvars: usize, gens: Vec<Polynomial<Rational>>) -> Result<Self> {
        Ok(Self::new(Ideal::new(nvars, gens)?))
    }

    pub fn ideal(&self) -> &Ideal<Rational> {
        &self.ideal
    }

    fn check_ordering(&self, ord: &TermOrdering) -> Result<()> {
        if ord.nvars() != self.ideal.nvars() {
            return Err(Error::ArityMismatch { expected: self.ideal.nvars(), got: ord.nvars() });
        }
        Ok(())
    }

    /// The reduced σ-basis over ℚ, computed once per ordering.
    pub fn reduced_gb(&self, sigma: &TermOrdering) -> Result<ReducedGb<Rational>> {
        self.check_ordering(sigma)?;
        if let Some(gb) = self.bases.lock().expect("cache").get(sigma) {
            return Ok(gb.clone());
        }
        let gb = buchberger_reduced(self.ideal.gens(), sigma);
        self.bases.lock().expect("cache").insert(sigma.clone(), gb.clone());
        Ok(gb)
    }

    /// `den_σ(I)`: the denominator of the reduced σ-basis.
    pub fn den_sigma(&self, sigma: &TermOrdering) -> Result<Integer> {
        Ok(self.reduced_gb(sigma)?.den())
    }

    pub fn classify_prime(&self, sigma: &TermOrdering, p: u64) -> Result<PrimeVerdict> {
        check_prime(p)?;
        let gb = self.reduced_gb(sigma)?;
        let den = gb.den();
        let pb = Integer::from(p);
        let element = gb.elements().iter().position(|g| g.den().is_multiple_of(&pb));
        let status = if element.is_some() { PrimeStatus::SigmaBad } else { PrimeStatus::SigmaGood };
        Ok(PrimeVerdict { prime: p, status, evidence: Evidence::Denominator { den, element } })
    }

    /// `I_(p,σ)`; fails with [`Error::SigmaBad`] when `p` divides `den_σ(I)`.
    pub fn reduction(&self, sigma: &TermOrdering, p: u64) -> Result<ReductionIdeal> {
        check_prime(p)?;
        let gb = self.reduced_gb(sigma)?;
        let den = gb.den();
        if den.is_multiple_of(&Integer::from(p)) {
            return Err(Error::SigmaBad { p, ordering: format!("{:?}", sigma.kind()), den });
        }
        Ok(ReductionIdeal { prime: p, basis: gb.reduce_mod_p(p)? })
    }

    /// `O_τ(I_(p,σ))`, memoized by `(p, σ, τ)`.
    pub fn tau_tuple(&self, sigma: &TermOrdering, tau: &TermOrdering, p: u64) -> Result<LtTuple> {
        self.check_ordering(tau)?;
        let key = (p, sigma.clone(), tau.clone());
        if let Some(t) = self.tuples.lock().expect("cache").get(&key) {
            return Ok(t.clone());
        }
        let red = self.reduction(sigma, p)?;
        let t = os_of_ideal(red.generators(), tau);
        self.tuples.lock().expect("cache").insert(key, t.clone());
        Ok(t)
    }

    /// Compares the τ-tuples of `I_(p,σ)` across `primes`. Primes whose tuple
    /// precedes the largest tuple seen are certified τ-bad; primes holding the
    /// largest tuple stay undecided.
    pub fn detect_tau_bad(&self, sigma: &TermOrdering, tau: &TermOrdering, primes: &[u64]) -> Result<Vec<PrimeVerdict>> {
        self.reduced_gb(sigma)?;
        let tuples: Vec<LtTuple> =
            primes.par_iter().map(|&p| self.tau_tuple(sigma, tau, p)).collect::<Result<Vec<_>>>()?;
        Ok(certify(primes, &tuples))
    }

    /// Checks `rad(den(G_σ)) = rad(lcm_σ⟨prim(G_σ)⟩)`.
    pub fn check_rad_identity(&self, sigma: &TermOrdering) -> Result<RadCheck> {
        if self.ideal.is_zero() {
            return Err(Error::InvalidArgument("the zero ideal has no reduced basis elements".into()));
        }
        let gb = self.reduced_gb(sigma)?;
        let prims = gb.elements().iter().map(|g| g.prim()).collect::<Result<Vec<_>>>()?;
        let strong = strong_gb(&prims, sigma)?;
        let rad_den = rad(&gb.den())?;
        let rad_lcm = rad(&strong.lcm_sigma())?;
        let equal = rad_den == rad_lcm;
        Ok(RadCheck { rad_den, rad_lcm, equal })
    }
}

/// Folds tuples into verdicts against the largest tuple.
pub fn certify(primes: &[u64], tuples: &[LtTuple]) -> Vec<PrimeVerdict> {
    let best = tuples.iter().max_by(|a, b| a.cmp_tuples(b));
    primes
        .iter()
        .zip(tuples)
        .map(|(&p, t)| {
            let best = best.expect("nonempty");
            let beaten = crate::tuples::precedes(t, best).expect("same ordering") == TupleOrder::Precedes;
            PrimeVerdict {
                prime: p,
                status: if beaten { PrimeStatus::TauBadCertified } else { PrimeStatus::Undecided },
                evidence: Evidence::Tuples { tuple: t.clone(), beaten_by: beaten.then(|| best.clone()) },
            }
        })
        .collect()
}

/// Pauer-luckiness of `p` for integer generators: `p` must not divide the
/// leading coefficient of any element of a minimal strong basis.
pub fn pauer_lucky(gens: &[Polynomial<Integer>], sigma: &TermOrdering, p: u64) -> Result<PrimeVerdict> {
    check_prime(p)?;
    if gens.iter().any(|g| g.is_zero()) {
        return Err(Error::ZeroPolynomial);
    }
    let gb = strong_gb(gens, sigma)?;
    let pb = Integer::from(p);
    let offending = gb.elements().iter().map(|g| g.lc().clone()).find(|c| c.is_multiple_of(&pb));
    let status = if offending.is_some() { PrimeStatus::NotPauerLucky } else { PrimeStatus::PauerLucky };
    Ok(PrimeVerdict { prime: p, status, evidence: Evidence::LeadingCoefficients { lcm: gb.lcm_sigma(), offending } })
}

/// Whether two generating sets over 𝔽_p generate the same ideal.
pub fn same_ideal(a: &[Polynomial<Fp>], b: &[Polynomial<Fp>], ord: &TermOrdering) -> bool {
    buchberger_reduced(a, ord) == buchberger_reduced(b, ord)
}

/// Whether `⟨small⟩ ⊆ ⟨big⟩` over 𝔽_p.
pub fn contained_in(small: &[Polynomial<Fp>], big: &[Polynomial<Fp>], ord: &TermOrdering) -> bool {
    let gb = buchberger_reduced(big, ord);
    small.iter().all(|f| gb.contains(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::io::parse_polys;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn analysis(text: &str, n: &[String]) -> IdealAnalysis {
        let ord = TermOrdering::degrevlex(n.len());
        IdealAnalysis::from_gens(n.len(), parse_polys(text, n, &ord).unwrap()).unwrap()
    }

    #[test]
    fn denominators_depend_on_ordering() {
        let n = names(&["x", "y"]);
        let a = analysis("x + 2*y", &n);
        assert_eq!(a.den_sigma(&TermOrdering::lex(2)).unwrap(), int(1));
        let y_first = TermOrdering::matrix_int(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(a.den_sigma(&y_first).unwrap(), int(2));
    }

    #[test]
    fn classification_and_reduction() {
        let n = names(&["x", "y", "z"]);
        let ord = TermOrdering::degrevlex(3);
        let a = analysis("2*x - y, 2*y - z", &n);
        assert_eq!(a.den_sigma(&ord).unwrap(), int(4));
        assert_eq!(a.classify_prime(&ord, 3).unwrap().status, PrimeStatus::SigmaGood);
        assert_eq!(a.classify_prime(&ord, 2).unwrap().status, PrimeStatus::SigmaBad);
        assert!(matches!(a.reduction(&ord, 2), Err(Error::SigmaBad { .. })));
        assert!(matches!(a.classify_prime(&ord, 4), Err(Error::NotPrime(_))));
        let rc = a.check_rad_identity(&ord).unwrap();
        assert_eq!((rc.rad_den, rc.rad_lcm, rc.equal), (int(2), int(2), true));

        let s = analysis("x + 2*z, x + 2*y", &n);
        let red = s.reduction(&ord, 2).unwrap();
        assert!(red.check_reduced());
        let text: Vec<String> = red.generators().iter().map(|g| g.format(&n)).collect();
        assert_eq!(text, vec!["y + z", "x"]);
        let f2: Vec<Polynomial<Fp>> = s.ideal().gens().iter().map(|f| f.reduce_mod_p(2).unwrap()).collect();
        assert!(contained_in(&f2, red.generators(), &ord));
        assert!(!contained_in(red.generators(), &f2, &ord));
    }

    #[test]
    fn pauer_luckiness() {
        let n = names(&["x", "y"]);
        let ord = TermOrdering::degrevlex(2);
        let f: Vec<Polynomial<Integer>> = parse_polys("x^2*y - 7/2*y, x*y^2 - 3/5*x", &n, &ord)
            .unwrap()
            .iter()
            .map(|f| f.prim().unwrap())
            .collect();
        assert_eq!(pauer_lucky(&f, &ord, 7).unwrap().status, PrimeStatus::NotPauerLucky);
        let a = analysis("x^2*y - 7/2*y, x*y^2 - 3/5*x", &n);
        assert_eq!(a.classify_prime(&ord, 7).unwrap().status, PrimeStatus::SigmaGood);
        let rc = a.check_rad_identity(&ord).unwrap();
        assert_eq!((rc.rad_den, rc.rad_lcm), (int(30), int(30)));
        let mono: Vec<Polynomial<Integer>> =
            parse_polys("x^2, y^3", &n, &ord).unwrap().iter().map(|f| f.prim().unwrap()).collect();
        assert_eq!(pauer_lucky(&mono, &ord, 5).unwrap().status, PrimeStatus::PauerLucky);
    }

    #[test]
    fn single_prime_is_undecided() {
        let n = names(&["x", "y"]);
        let a = analysis("x^2 - y, y^2 - 3", &n);
        let ord = TermOrdering::degrevlex(2);
        let v = a.detect_tau_bad(&ord, &TermOrdering::lex(2), &[5]).unwrap();
        assert_eq!(v[0].status, PrimeStatus::Undecided);
        let j = v[0].to_json(&n);
        assert_eq!(j["status"], "UNDECIDED");
        assert_eq!(j["prime"], "5");
    }
}
