//! Finite permutations with signs.
//!
//! Stored as 0-based image vectors: `images[u]` is where position `u` goes.
//! Degree-n alternation and the boundary combinatorics both consume these,
//! so the sign is computed exactly (inversion count) and enumeration is
//! provided for the exhaustive small-n law checks.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[u]` = image of `u`; must be a bijection on `0..len`.
    pub fn new(images: Vec<usize>) -> Option<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(Permutation { images })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Swap of two positions, identity elsewhere.
    pub fn transposition(n: usize, a: usize, b: usize) -> Permutation {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, u: usize) -> usize {
        self.images[u]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (u, &v) in self.images.iter().enumerate() {
            images[v] = u;
        }
        Permutation { images }
    }

    /// `self` after `first`: apply `first`, then `self`.
    pub fn after(&self, first: &Permutation) -> Permutation {
        debug_assert_eq!(self.len(), first.len());
        Permutation {
            images: first.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    /// Signature: +1 for even, -1 for odd, by inversion count.
    pub fn sign(&self) -> i64 {
        let mut inversions = 0usize;
        for i in 0..self.images.len() {
            for j in i + 1..self.images.len() {
                if self.images[i] > self.images[j] {
                    inversions += 1;
                }
            }
        }
        if inversions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All n! permutations in lexicographic image order.
    pub fn enumerate(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn extend(
            n: usize,
            current: &mut Vec<usize>,
            used: &mut Vec<bool>,
            out: &mut Vec<Permutation>,
        ) {
            if current.len() == n {
                out.push(Permutation {
                    images: current.clone(),
                });
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    current.push(v);
                    extend(n, current, used, out);
                    current.pop();
                    used[v] = false;
                }
            }
        }
        extend(n, &mut current, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .images
            .iter()
            .map(|v| (v + 1).to_string())
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_are_multiplicative() {
        for a in Permutation::enumerate(4) {
            for b in Permutation::enumerate(4) {
                assert_eq!(a.after(&b).sign(), a.sign() * b.sign());
            }
        }
    }

    #[test]
    fn transpositions_are_odd() {
        assert_eq!(Permutation::transposition(3, 0, 2).sign(), -1);
        assert_eq!(Permutation::identity(5).sign(), 1);
    }

    #[test]
    fn inverse_round_trips() {
        let p = Permutation::new(vec![2, 0, 3, 1]).unwrap();
        assert_eq!(p.after(&p.inverse()), Permutation::identity(4));
        assert_eq!(p.inverse().after(&p), Permutation::identity(4));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_none());
        assert!(Permutation::new(vec![0, 2]).is_none());
    }

    #[test]
    fn enumeration_counts_factorials() {
        assert_eq!(Permutation::enumerate(0).len(), 1);
        assert_eq!(Permutation::enumerate(4).len(), 24);
    }
}
