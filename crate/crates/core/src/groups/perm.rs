use std::fmt;

use crate::error::{Error, Result};
use crate::numkernel::{CMatrix, C64};

/// A bijection on `{0..M-1}`; `images[i] = g·i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Input(format!(
                    "images {images:?} are not a bijection on 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles on `degree` points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::Input(format!(
                        "cycle entry {a} out of range for degree {degree}"
                    )));
                }
                if touched[a] {
                    return Err(Error::Input(format!("point {a} appears in two cycles")));
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// Permutation matrix with `P[g·j, j] = 1`, so `P e_j = e_{g·j}`.
    pub fn to_matrix(&self) -> CMatrix {
        let n = self.degree();
        let mut p = CMatrix::zeros(n, n);
        for (j, &i) in self.images.iter().enumerate() {
            p[(i, j)] = C64::new(1.0, 0.0);
        }
        p
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Parses cycle notation (`"(0 1 2)(3 4)"`, `"()"`) or a space-separated
    /// image list (`"1 2 0"`). Cycle notation needs `degree` unless the largest
    /// moved point fixes it.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('(') {
            let mut cycles = Vec::new();
            let mut rest = t;
            while !rest.is_empty() {
                let open = rest
                    .strip_prefix('(')
                    .ok_or_else(|| Error::Parse(format!("expected '(' in `{text}`")))?;
                let close = open
                    .find(')')
                    .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{text}`")))?;
                let body = &open[..close];
                let cycle = body
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad point `{s}` in `{text}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if !cycle.is_empty() {
                    cycles.push(cycle);
                }
                rest = open[close + 1..].trim_start();
            }
            let needed = cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
            let degree = degree.unwrap_or(needed);
            if degree < needed {
                return Err(Error::Input(format!(
                    "cycle point {} exceeds degree {degree}",
                    needed - 1
                )));
            }
            Self::from_cycles(degree, &cycles)
        } else {
            let images = t
                .split_whitespace()
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad image `{s}` in `{text}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if let Some(d) = degree {
                if d != images.len() {
                    return Err(Error::Input(format!(
                        "image list has {} entries, expected {d}",
                        images.len()
                    )));
                }
            }
            Self::new(images)
        }
    }
}

impl fmt::Display for Permutation {
    /// Disjoint-cycle notation with fixed points omitted; identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}
