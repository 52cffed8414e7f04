//! Monomials over a fixed, ordered generator list.
//!
//! A monomial is an exponent vector whose length equals the generator count
//! of the algebra it lives in. Ordering is graded lexicographic with respect
//! to the generator list: lower total degree first, then (within one degree)
//! the monomial using an earlier generator more heavily comes first. Sorting
//! therefore lists `1, X, Y, X*Y` for `k[X,Y]`, which is the order bases are
//! enumerated and serialized in.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Monomial {
        Monomial(exponents)
    }

    /// The empty product `1` over `width` generators.
    pub fn unit(width: usize) -> Monomial {
        Monomial(vec![0; width])
    }

    /// The `index`-th generator as a monomial.
    pub fn generator(width: usize, index: usize) -> Monomial {
        let mut e = vec![0; width];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.width(), other.width());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divisible_by(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.width(), other.width());
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// Exponent of a single generator.
    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    /// True when the monomial is a power of exactly the `index`-th generator.
    pub fn is_pure_power_of(&self, index: usize) -> bool {
        self.0[index] > 0
            && self
                .0
                .iter()
                .enumerate()
                .all(|(i, &e)| i == index || e == 0)
    }

    pub fn display(&self, names: &[String]) -> String {
        debug_assert_eq!(names.len(), self.width());
        if self.is_unit() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (name, &e) in names.iter().zip(&self.0) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        debug_assert_eq!(self.width(), other.width());
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(&other.0) {
            // Heavier use of an earlier generator sorts first.
            match b.cmp(a) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "g{}", i + 1)?;
            } else {
                write!(f, "g{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn graded_lex_order_lists_unit_first() {
        let mut v = vec![m(&[1, 1]), m(&[0, 1]), m(&[0, 0]), m(&[1, 0])];
        v.sort();
        assert_eq!(v, vec![m(&[0, 0]), m(&[1, 0]), m(&[0, 1]), m(&[1, 1])]);
    }

    #[test]
    fn degree_breaks_ties_before_lex() {
        // X^2 (degree 2) comes after Y (degree 1).
        assert!(m(&[0, 1]) < m(&[2, 0]));
        // Within degree 2, X^2 < X*Y < Y^2.
        let mut v = vec![m(&[0, 2]), m(&[2, 0]), m(&[1, 1])];
        v.sort();
        assert_eq!(v, vec![m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]);
    }

    #[test]
    fn divisibility_is_componentwise() {
        assert!(m(&[2, 1]).divisible_by(&m(&[1, 1])));
        assert!(!m(&[2, 0]).divisible_by(&m(&[1, 1])));
    }

    #[test]
    fn display_uses_generator_names() {
        let names = vec!["X".to_string(), "Y".to_string()];
        assert_eq!(m(&[0, 0]).display(&names), "1");
        assert_eq!(m(&[2, 1]).display(&names), "X^2*Y");
    }
}
