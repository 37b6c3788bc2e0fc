use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `1..=n` in cycle notation, stored canonically: each cycle
/// starts at its maximum and cycles are sorted by decreasing maximum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclePermutation {
    n: usize,
    cycles: Vec<Vec<usize>>,
}

impl CyclePermutation {
    /// Validates that the cycles partition `1..=n` and canonicalizes them.
    pub fn new(n: usize, cycles: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for cycle in &cycles {
            if cycle.is_empty() {
                return Err(Error::InvalidCycles("empty cycle".into()));
            }
            for &e in cycle {
                if e == 0 || e > n {
                    return Err(Error::InvalidCycles(format!("element {e} outside 1..={n}")));
                }
                if std::mem::replace(&mut seen[e], true) {
                    return Err(Error::InvalidCycles(format!("element {e} repeated")));
                }
            }
        }
        if let Some(missing) = (1..=n).find(|&e| !seen[e]) {
            return Err(Error::InvalidCycles(format!("element {missing} missing")));
        }
        let mut cycles: Vec<Vec<usize>> = cycles
            .into_iter()
            .map(|mut c| {
                let pos = c.iter().enumerate().max_by_key(|(_, &v)| v).map(|(i, _)| i).expect("nonempty");
                c.rotate_left(pos);
                c
            })
            .collect();
        cycles.sort_by(|a, b| b[0].cmp(&a[0]));
        Ok(Self { n, cycles })
    }

    pub fn identity(n: usize) -> Self {
        Self { n, cycles: (1..=n).rev().map(|e| vec![e]).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Cycles, max-first, in decreasing order of maxima.
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// One-line image vector: `image[i - 1]` is where `i` goes.
    pub fn images(&self) -> Vec<usize> {
        let mut image = vec![0; self.n];
        for c in &self.cycles {
            for (i, &e) in c.iter().enumerate() {
                image[e - 1] = c[(i + 1) % c.len()];
            }
        }
        image
    }

    /// Parses `(5)(412)(3)` or, for `n >= 10`, space-separated cycle entries
    /// such as `(10 3)(9 1 2)...`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidCycles(format!("{text:?}: {reason}"));
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let inner_start = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = inner_start.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let inner = inner_start[..close].trim();
            let mut cycle = Vec::new();
            for token in inner.split_whitespace() {
                if !token.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad("non-digit in cycle"));
                }
                if token.len() > 1 && n <= 9 {
                    cycle.extend(token.bytes().map(|b| (b - b'0') as usize));
                } else {
                    cycle.push(token.parse().map_err(|_| bad("number too large"))?);
                }
            }
            cycles.push(cycle);
            rest = inner_start[close + 1..].trim_start();
        }
        Self::new(n, cycles)
    }
}

impl fmt::Display for CyclePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n <= 9 { "" } else { " " };
        for c in &self.cycles {
            let body: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(sep))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let p = CyclePermutation::new(5, vec![vec![3], vec![1, 2, 4], vec![5]]).unwrap();
        assert_eq!(p.to_string(), "(5)(412)(3)");
        assert_eq!(CyclePermutation::parse("(5)(412)(3)", 5).unwrap(), p);
        assert_eq!(p.images(), vec![2, 4, 3, 1, 5]);
    }

    #[test]
    fn wide_permutations_use_spaces() {
        let p = CyclePermutation::new(10, vec![vec![1, 10], (2..=9).collect()]).unwrap();
        assert_eq!(p.to_string(), "(10 1)(9 2 3 4 5 6 7 8)");
        assert_eq!(CyclePermutation::parse(&p.to_string(), 10).unwrap(), p);
    }

    #[test]
    fn rejects_bad_cycles() {
        assert!(CyclePermutation::new(3, vec![vec![1, 2]]).is_err());
        assert!(CyclePermutation::new(2, vec![vec![1, 2], vec![2]]).is_err());
        assert!(CyclePermutation::new(2, vec![vec![1, 3]]).is_err());
        assert!(CyclePermutation::parse("(12", 2).is_err());
        assert!(CyclePermutation::parse("12", 2).is_err());
    }
}
