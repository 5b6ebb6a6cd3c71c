use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub(crate) type Exps = SmallVec<[u16; 16]>;

/// Exponent vector of a monomial, aligned with the owning polynomial's
/// variable list.
///
/// The `Ord` impl is graded lexicographic (total degree first, then the
/// first variable dominates). Polynomials are stored sorted by it, so the
/// reverse iteration order is exactly the canonical rendering order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, var: usize) -> u16 {
        self.exps[var]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if exact.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other
                .exps
                .iter()
                .zip(self.exps.iter())
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub(crate) fn set_exp(&mut self, var: usize, e: u16) {
        self.exps[var] = e;
    }

    /// Re-index into a new variable list; `map[i]` is the position of old
    /// variable `i` in the new list.
    pub(crate) fn embed(&self, map: &[usize], nvars: usize) -> Monomial {
        let mut out = Monomial::one(nvars);
        for (i, &e) in self.exps.iter().enumerate() {
            out.exps[map[i]] += e;
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.as_slice().cmp(other.exps.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x2 = Monomial::from_exponents(&[2, 0]);
        let xy = Monomial::from_exponents(&[1, 1]);
        let y3 = Monomial::from_exponents(&[0, 3]);
        assert!(x2 > xy);
        assert!(y3 > x2);
        assert!(Monomial::one(2) < xy);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_exponents(&[1, 2, 0]);
        let b = Monomial::from_exponents(&[2, 1, 1]);
        assert!(!a.divides(&b));
        assert_eq!(a.lcm(&b), Monomial::from_exponents(&[2, 2, 1]));
        let c = a.lcm(&b);
        assert_eq!(a.quotient_of(&c), Some(Monomial::from_exponents(&[1, 0, 1])));
        assert!(Monomial::from_exponents(&[1, 0]).is_coprime(&Monomial::from_exponents(&[0, 4])));
    }
}
