//! Modular computation of reduced Gröbner bases over ℚ: per-prime τ-bases of
//! `I_(p,σ)`, filtering by leading-term tuples, Chinese remaindering,
//! rational reconstruction and verification.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{crt_pair, random_prime, rational_reconstruct, Integer, Rational};
use crate::coeff::Fp;
use crate::error::{Error, Result};
use crate::groebner::{buchberger_reduced, is_groebner_basis, is_reduced, normal_form, ReducedGb};
use crate::poly::{Polynomial, PowerProduct, TermOrdering};
use crate::primes::{Evidence, IdealAnalysis, PrimeStatus, PrimeVerdict};
use crate::tuples::LtTuple;

/// The reduced τ-basis of `I_(p,σ)` for one prime.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularRun {
    pub prime: u64,
    pub basis: ReducedGb<Fp>,
    pub tuple: LtTuple,
}

/// Computes the reduced τ-basis of `I_(p,σ)`; fails when `p` is σ-bad.
pub fn run_prime(analysis: &IdealAnalysis, sigma: &TermOrdering, tau: &TermOrdering, p: u64) -> Result<ModularRun> {
    let red = analysis.reduction(sigma, p)?;
    let basis = buchberger_reduced(red.generators(), tau);
    let tuple = LtTuple::new(tau, &basis.min_lt());
    Ok(ModularRun { prime: p, basis, tuple })
}

/// A run rejected because a larger tuple was seen.
#[derive(Clone, Debug, PartialEq)]
pub struct Rejection {
    pub run: ModularRun,
    pub beaten_by: LtTuple,
}

impl Rejection {
    pub fn verdict(&self) -> PrimeVerdict {
        PrimeVerdict {
            prime: self.run.prime,
            status: PrimeStatus::TauBadCertified,
            evidence: Evidence::Tuples { tuple: self.run.tuple.clone(), beaten_by: Some(self.beaten_by.clone()) },
        }
    }
}

/// Keeps the runs holding the largest tuple; every other run is certified
/// τ-bad by that tuple.
pub fn filter_runs(runs: Vec<ModularRun>) -> (Vec<ModularRun>, Vec<Rejection>) {
    let Some(best) = runs.iter().map(|r| r.tuple.clone()).max_by(|a, b| a.cmp_tuples(b)) else {
        return (Vec::new(), Vec::new());
    };
    let (kept, rejected): (Vec<_>, Vec<_>) = runs.into_iter().partition(|r| r.tuple == best);
    let rejected = rejected.into_iter().map(|run| Rejection { run, beaten_by: best.clone() }).collect();
    (kept, rejected)
}

/// Coefficients combined by the Chinese remainder theorem over runs sharing one tuple.
#[derive(Clone, Debug)]
pub struct LiftState {
    tuple: LtTuple,
    modulus: Integer,
    primes: Vec<u64>,
    /// Residues keyed by basis element index and power product; absent means zero.
    table: Vec<HashMap<PowerProduct, Integer>>,
}

impl LiftState {
    pub fn new(run: &ModularRun) -> Self {
        let table = run
            .basis
            .elements()
            .iter()
            .map(|g| g.terms().iter().map(|(t, c)| (t.clone(), Integer::from(c.value()))).collect())
            .collect();
        LiftState { tuple: run.tuple.clone(), modulus: Integer::from(run.prime), primes: vec![run.prime], table }
    }

    pub fn tuple(&self) -> &LtTuple {
        &self.tuple
    }

    pub fn modulus(&self) -> &Integer {
        &self.modulus
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Adds a run with the committed tuple.
    pub fn add(&mut self, run: &ModularRun) -> Result<()> {
        if run.tuple != self.tuple {
            return Err(Error::TupleMismatch);
        }
        let p = Integer::from(run.prime);
        for (slot, g) in self.table.iter_mut().zip(run.basis.elements()) {
            let mut residues: HashMap<&PowerProduct, Integer> =
                g.terms().iter().map(|(t, c)| (t, Integer::from(c.value()))).collect();
            for (t, r) in slot.iter_mut() {
                let r2 = residues.remove(t).unwrap_or_default();
                *r = crt_pair(r, &self.modulus, &r2, &p)?.0;
            }
            for (t, r2) in residues {
                let r = crt_pair(&Integer::default(), &self.modulus, &r2, &p)?.0;
                slot.insert(t.clone(), r);
            }
        }
        self.modulus *= &p;
        self.primes.push(run.prime);
        Ok(())
    }

    /// Reconstructs rational coefficients; `None` when some coefficient
    /// exceeds the reconstruction bound of the current modulus.
    pub fn reconstruct(&self) -> Option<Vec<Polynomial<Rational>>> {
        let ord = self.tuple.ordering();
        let nvars = ord.nvars();
        self.table
            .iter()
            .map(|slot| {
                let terms = slot
                    .iter()
                    .map(|(t, r)| Some((t.clone(), rational_reconstruct(r, &self.modulus)?)))
                    .collect::<Option<Vec<_>>>()?;
                Some(Polynomial::from_terms(nvars, terms, ord))
            })
            .collect()
    }
}

/// Lifts runs sharing one tuple to a candidate basis over ℚ, or `None` when
/// more primes are needed.
pub fn lift_and_reconstruct(kept: &[ModularRun]) -> Result<Option<Vec<Polynomial<Rational>>>> {
    let (first, rest) = kept.split_first().ok_or_else(|| Error::InvalidArgument("no runs to lift".into()))?;
    let mut state = LiftState::new(first);
    for run in rest {
        state.add(run)?;
    }
    Ok(state.reconstruct())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// Generator membership plus the Gröbner and reducedness checks.
    Cheap,
    /// Additionally compares with a directly computed basis over ℚ.
    Full,
}

/// Whether `candidate` is the reduced τ-basis of `⟨gens⟩`: every generator
/// reduces to zero, the candidate is reduced and all its S-polynomials reduce
/// to zero; in full mode every candidate element also reduces to zero against
/// a directly computed τ-basis.
pub fn verify_candidate(
    candidate: &[Polynomial<Rational>],
    gens: &[Polynomial<Rational>],
    tau: &TermOrdering,
    mode: VerifyMode,
) -> bool {
    let cand: Vec<Polynomial<Rational>> = candidate.iter().map(|g| g.resorted(tau)).collect();
    if cand.iter().any(|g| g.is_zero()) {
        return false;
    }
    if !gens.iter().all(|f| normal_form(&f.resorted(tau), &cand, tau).is_zero()) {
        return false;
    }
    if !is_reduced(&cand, tau) || !is_groebner_basis(&cand, tau) {
        return false;
    }
    match mode {
        VerifyMode::Cheap => true,
        VerifyMode::Full => {
            let direct = buchberger_reduced(gens, tau);
            cand.iter().all(|g| direct.contains(g)) && direct.len() == cand.len()
        }
    }
}

/// Settings for [`modular_gb`].
#[derive(Clone, Debug)]
pub struct ModularConfig {
    pub prime_bits: u32,
    pub max_primes: usize,
    pub verify: VerifyMode,
    pub seed: u64,
    /// Runs computed concurrently per round.
    pub batch: usize,
}

impl Default for ModularConfig {
    fn default() -> Self {
        ModularConfig { prime_bits: 31, max_primes: 64, verify: VerifyMode::Cheap, seed: 0, batch: 4 }
    }
}

/// Result of the modular pipeline with its prime ledger.
#[derive(Clone, Debug)]
pub struct ModularOutcome {
    pub basis: ReducedGb<Rational>,
    pub tuple: LtTuple,
    /// Primes whose images were combined into the basis.
    pub used: Vec<u64>,
    /// Primes certified τ-bad, with their tuples.
    pub rejected: Vec<PrimeVerdict>,
    /// Primes skipped because they divide the σ-denominator.
    pub sigma_bad: Vec<u64>,
    pub reconstructions: usize,
}

/// Computes the reduced τ-basis of the ideal by working modulo random primes.
///
/// Runs are folded in the order the primes were drawn. A run whose tuple
/// precedes the committed one is certified bad; a run whose tuple is larger
/// certifies every committed prime bad and restarts the lift. Reconstruction
/// is attempted once three runs agree and after every two further runs; a
/// reconstructed candidate must also lie in the ideal, checked against the
/// reduced σ-basis.
pub fn modular_gb(
    analysis: &IdealAnalysis,
    sigma: &TermOrdering,
    tau: &TermOrdering,
    config: &ModularConfig,
) -> Result<ModularOutcome> {
    let gens = analysis.ideal().gens();
    let sigma_gb = analysis.reduced_gb(sigma)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut seen = std::collections::HashSet::new();
    let mut state: Option<LiftState> = None;
    let mut rejected = Vec::new();
    let mut sigma_bad = Vec::new();
    let mut reconstructions = 0;
    let mut drawn = 0;

    while drawn < config.max_primes {
        let mut batch = Vec::new();
        while batch.len() < config.batch.max(1) && drawn < config.max_primes {
            let p = random_prime(config.prime_bits, &mut rng);
            if seen.insert(p) {
                batch.push(p);
                drawn += 1;
            } else if seen.len() as u128 >= 1u128 << (config.prime_bits - 1) {
                break;
            }
        }
        if batch.is_empty() {
            break;
        }
        let runs: Vec<Result<ModularRun>> = batch.par_iter().map(|&p| run_prime(analysis, sigma, tau, p)).collect();
        for (p, run) in batch.iter().zip(runs) {
            let run = match run {
                Ok(run) => run,
                Err(Error::SigmaBad { .. }) => {
                    sigma_bad.push(*p);
                    continue;
                }
                Err(e) => return Err(e),
            };
            let order = state.as_ref().map(|s| s.tuple().cmp_tuples(&run.tuple));
            match order {
                None => state = Some(LiftState::new(&run)),
                Some(std::cmp::Ordering::Greater) => {
                    let beaten_by = state.as_ref().expect("committed").tuple().clone();
                    rejected.push(Rejection { run, beaten_by }.verdict());
                    continue;
                }
                Some(std::cmp::Ordering::Less) => {
                    let old = state.replace(LiftState::new(&run)).expect("committed");
                    for &q in old.primes() {
                        rejected.push(PrimeVerdict {
                            prime: q,
                            status: PrimeStatus::TauBadCertified,
                            evidence: Evidence::Tuples { tuple: old.tuple().clone(), beaten_by: Some(run.tuple.clone()) },
                        });
                    }
                }
                Some(std::cmp::Ordering::Equal) => state.as_mut().expect("committed").add(&run)?,
            }
            let st = state.as_ref().expect("committed");
            let support = st.primes().len();
            if support >= 3 && (support - 3) % 2 == 0 {
                reconstructions += 1;
                if let Some(candidate) = st.reconstruct() {
                    let in_ideal = candidate.iter().all(|g| sigma_gb.contains(g));
                    if in_ideal && verify_candidate(&candidate, gens, tau, config.verify) {
                        return Ok(ModularOutcome {
                            basis: ReducedGb::from_reduced_unchecked(tau.clone(), candidate),
                            tuple: st.tuple().clone(),
                            used: st.primes().to_vec(),
                            rejected,
                            sigma_bad,
                            reconstructions,
                        });
                    }
                }
            }
        }
    }
    Err(Error::OutOfPrimes { used: drawn })
}
