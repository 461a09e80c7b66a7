//! Permutations of `{0, …, n-1}` stored as image arrays.
//!
//! Composition is right-to-left: `a.compose(&b)` maps `x` to `a(b(x))`.

use std::fmt;

use crate::error::{CoreError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// Validates that `images` is a bijection on `0..images.len()`.
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(CoreError::MalformedPermutation(format!(
                    "image {x} out of range for degree {n}"
                )));
            }
            if seen[x] {
                return Err(CoreError::MalformedPermutation(format!(
                    "image {x} repeated"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Permutation { images }
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from disjoint or overlapping cycles; cycles are
    /// applied right to left like any other product.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut acc = Permutation::identity(degree);
        for cycle in cycles.iter().rev() {
            let mut c = Permutation::identity(degree);
            for (i, &p) in cycle.iter().enumerate() {
                if p as usize >= degree {
                    return Err(CoreError::MalformedPermutation(format!(
                        "point {p} out of range for degree {degree}"
                    )));
                }
                let q = cycle[(i + 1) % cycle.len()];
                c.images[p as usize] = q;
            }
            let c = Permutation::new(c.images)?;
            acc = c.compose(&acc);
        }
        Ok(acc)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn into_images(self) -> Vec<u32> {
        self.images
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn compose(&self, rhs: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), rhs.degree());
        Permutation {
            images: rhs.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Pads with fixed points up to `degree`.
    pub fn extended(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.images.len() as u32..degree as u32);
        Permutation { images }
    }

    /// Nontrivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Parses one generator in cycle notation, e.g. `[(0,1),(2,3)]`,
    /// `(0,1)(2,3)` or `()` for the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Permutation> {
        let text = text.trim();
        let text = text
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .unwrap_or(text);
        let mut cycles = Vec::new();
        let mut rest = text;
        loop {
            rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
            if rest.is_empty() {
                break;
            }
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| CoreError::Parse(format!("expected '(' in {text:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| CoreError::Parse(format!("unbalanced '(' in {text:?}")))?;
            let inner = &body[..close];
            let points = inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u32>()
                        .map_err(|_| CoreError::Parse(format!("bad point {s:?} in {text:?}")))
                })
                .collect::<Result<Vec<u32>>>()?;
            let mut distinct = points.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() != points.len() {
                return Err(CoreError::MalformedPermutation(format!(
                    "repeated point in cycle ({inner})"
                )));
            }
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = &body[close + 1..];
        }
        Permutation::from_cycles(degree, &cycles)
    }

    /// Parses a generator list: generators separated by `;`.
    pub fn parse_list(degree: usize, text: &str) -> Result<Vec<Permutation>> {
        text.split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| Permutation::parse_cycles(degree, s))
            .collect()
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with comma-separated entries; identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn compose_applies_right_factor_first() {
        let a = Permutation::new(vec![1, 0, 2]).unwrap();
        let b = Permutation::new(vec![1, 2, 0]).unwrap();
        // a(b(0)) = a(1) = 0
        assert_eq!(a.compose(&b).images(), &[0, 2, 1]);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn cycle_parsing() {
        let p = Permutation::parse_cycles(4, "[(0,1),(2,3)]").unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 2]);
        let q = Permutation::parse_cycles(4, "(0,1,2,3)").unwrap();
        assert_eq!(q.images(), &[1, 2, 3, 0]);
        assert!(Permutation::parse_cycles(4, "()").unwrap().is_identity());
        let list = Permutation::parse_list(4, "[(0,1),(2,3)];[(0,2),(1,3)]").unwrap();
        assert_eq!(list.len(), 2);
        assert!(Permutation::parse_cycles(4, "(0,5)").is_err());
        assert!(Permutation::parse_cycles(4, "(0,1").is_err());
        assert!(Permutation::parse_cycles(4, "(0,0)").is_err());
    }

    proptest! {
        #[test]
        fn cycle_notation_round_trips(mut v in Just((0..9u32).collect::<Vec<_>>()).prop_shuffle()) {
            let p = Permutation::new(std::mem::take(&mut v)).unwrap();
            let q = Permutation::parse_cycles(9, &p.to_string()).unwrap();
            prop_assert_eq!(p, q);
        }

        #[test]
        fn inverse_is_two_sided(v in Just((0..7u32).collect::<Vec<_>>()).prop_shuffle()) {
            let p = Permutation::new(v).unwrap();
            prop_assert!(p.compose(&p.inverse()).is_identity());
            prop_assert!(p.inverse().compose(&p).is_identity());
        }
    }
}
