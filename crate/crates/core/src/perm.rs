//! Permutations on `{0, .., degree-1}` stored by their image arrays.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `0..degree`; `images[i]` is the image of point `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn new(images: Vec<u16>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if (x as usize) >= n || seen[x as usize] {
                return Err(Error::InvalidPermutation(images, n));
            }
            seen[x as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u16).collect() }
    }

    /// Build from disjoint-cycle notation; points absent from `cycles` are fixed.
    pub fn from_cycles(degree: usize, cycles: &[&[u16]]) -> Result<Self> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p as usize >= degree {
                    return Err(Error::InvalidPermutation(vec![p], degree));
                }
                images[p as usize] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    /// `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u16;
        }
        Permutation { images }
    }

    /// Conjugate of `other` by `self`: `self * other * self^-1`.
    pub fn conjugate(&self, other: &Self) -> Self {
        self.compose(other).compose(&self.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u16 == x)
    }

    /// Multiplicative order, via lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut order: u64 = 1;
        for i in 0..n {
            if !seen[i] {
                let mut len: u64 = 0;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = self.images[j] as usize;
                    len += 1;
                }
                order = num_integer::lcm(order, len);
            }
        }
        order
    }

    /// Disjoint cycles of length > 1, each rotated to start at its least point.
    pub fn cycles(&self) -> Vec<Vec<u16>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if !seen[i] {
                let mut cyc = Vec::new();
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    cyc.push(j as u16);
                    j = self.images[j] as usize;
                }
                if cyc.len() > 1 {
                    out.push(cyc);
                }
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        for cyc in cycles {
            write!(f, "(")?;
            for (k, p) in cyc.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_first() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // (a*b)(1) = a(b(1)) = a(2) = 2
        assert_eq!(a.compose(&b).apply(1), 2);
    }

    #[test]
    fn identity_and_inverse() {
        let c = Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        assert!(c.compose(&c.inverse()).is_identity());
        assert_eq!(c.order(), 5);
        assert_eq!(Permutation::identity(4).order(), 1);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3]).is_err());
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let g = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        let x = Permutation::from_cycles(4, &[&[1, 2]]).unwrap();
        // x (0 1) x^-1 = (0 2)
        assert_eq!(x.conjugate(&g), Permutation::from_cycles(4, &[&[0, 2]]).unwrap());
    }

    #[test]
    fn display_uses_cycles() {
        let g = Permutation::from_cycles(5, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(g.to_string(), "(0 1 2)(3 4)");
        assert_eq!(Permutation::identity(3).to_string(), "e");
    }
}
