use smallvec::SmallVec;

pub type Exponents = SmallVec<[u32; 6]>;

/// A power product `x1^a1 * ... * xn^an`, stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PowerProduct(Exponents);

impl PowerProduct {
    pub fn new<I: IntoIterator<Item = u32>>(exponents: I) -> Self {
        PowerProduct(exponents.into_iter().collect())
    }

    pub fn one(nvars: usize) -> Self {
        PowerProduct(SmallVec::from_elem(0, nvars))
    }

    /// The indeterminate with index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = SmallVec::from_elem(0, nvars);
        e[i] = 1;
        PowerProduct(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &PowerProduct) -> PowerProduct {
        debug_assert_eq!(self.nvars(), other.nvars());
        PowerProduct(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &PowerProduct) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &PowerProduct) -> Option<PowerProduct> {
        if !other.divides(self) {
            return None;
        }
        Some(PowerProduct(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &PowerProduct) -> PowerProduct {
        PowerProduct(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &PowerProduct) -> PowerProduct {
        PowerProduct(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &PowerProduct) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Renders the power product with the given indeterminate names, e.g. `x^2*y`.
    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}
