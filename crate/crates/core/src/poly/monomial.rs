use std::cmp::Ordering;
use std::fmt;

/// Exponent vector over a fixed set of variables `x1..xn`.
///
/// Ordered graded-lexicographically: total degree first, then by exponent of
/// `x1`, `x2`, … (larger exponent of the earlier variable is larger).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// The variable `x_{index+1}` (zero-based index).
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// `Some(i)` if this is a pure power `x_i^a` with `a > 0`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut it = self.support();
        let first = it.next()?;
        it.next().is_none().then_some(first)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = Monomial::new(vec![2, 0, 0]);
        let b = Monomial::new(vec![0, 1, 1]);
        let c = Monomial::new(vec![0, 0, 3]);
        assert!(c > a && a > b);
        assert!(Monomial::var(3, 0) > Monomial::var(3, 1));
        assert!(Monomial::one(3) < Monomial::var(3, 2));
    }

    #[test]
    fn division_and_lcm() {
        let a = Monomial::new(vec![1, 2, 0]);
        let b = Monomial::new(vec![2, 2, 1]);
        assert!(a.divides(&b));
        assert_eq!(a.divide_into(&b), Some(Monomial::new(vec![1, 0, 1])));
        assert_eq!(b.divide_into(&a), None);
        assert_eq!(a.lcm(&Monomial::new(vec![0, 3, 1])), Monomial::new(vec![1, 3, 1]));
        assert!(Monomial::var(3, 0).is_coprime(&Monomial::var(3, 2)));
        assert_eq!(Monomial::new(vec![0, 4, 0]).pure_power_var(), Some(1));
        assert_eq!(a.pure_power_var(), None);
        assert_eq!(a.to_string(), "x1*x2^2");
    }
}
