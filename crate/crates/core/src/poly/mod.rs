//! Power products, term orderings and sparse multivariate polynomials.

mod ordering;
mod polynomial;
mod power_product;

pub use ordering::{OrderingKind, TermOrdering};
pub use polynomial::{den_of_set, reduce_set_mod_p, Polynomial};
pub use power_product::{Exponents, PowerProduct};

use crate::coeff::Coeff;
use crate::error::{Error, Result};

/// An ideal given by generators; zero generators are dropped on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal<C> {
    nvars: usize,
    gens: Vec<Polynomial<C>>,
}

impl<C: Coeff> Ideal<C> {
    pub fn new(nvars: usize, gens: Vec<Polynomial<C>>) -> Result<Self> {
        if let Some(bad) = gens.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::ArityMismatch { expected: nvars, got: bad.nvars() });
        }
        Ok(Ideal { nvars, gens: gens.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn zero(nvars: usize) -> Self {
        Ideal { nvars, gens: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Polynomial<C>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }
}
