//! Permutations in cycle notation.
//!
//! Points are 1-based in text and 0-based in memory. Composition is
//! left-to-right: `a.then(&b)` applies `a` first.

use std::fmt;

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from 0-based images, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::MalformedPermutation(format!(
                    "images {images:?} are not a bijection on 0..{}",
                    images.len()
                )));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)` or `()` on `degree` points.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, Error> {
        let bad = |msg: String| Error::MalformedPermutation(format!("{text:?}: {msg}"));
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| bad("expected '('".into()))?;
            let close = body.find(')').ok_or_else(|| bad("unclosed cycle".into()))?;
            let points = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    let p: usize = t.parse().map_err(|_| bad(format!("bad point {t:?}")))?;
                    if p == 0 || p > degree {
                        return Err(bad(format!("point {p} outside 1..={degree}")));
                    }
                    Ok(p - 1)
                })
                .collect::<Result<Vec<_>, _>>()?;
            for &p in &points {
                if touched[p] {
                    return Err(bad(format!("point {} repeated", p + 1)));
                }
                touched[p] = true;
            }
            for (k, &p) in points.iter().enumerate() {
                images[p] = points[(k + 1) % points.len()];
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p = Perm::parse_cycles("(1 2)(3 4 5)", 5).unwrap();
        assert_eq!(p.to_string(), "(1 2)(3 4 5)");
        assert_eq!(Perm::parse_cycles("()", 3).unwrap(), Perm::identity(3));
        assert_eq!(Perm::parse_cycles("", 2).unwrap(), Perm::identity(2));
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::parse_cycles("(1 2)", 3).unwrap();
        let b = Perm::parse_cycles("(1 2 3)", 3).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.then(&b).image(0), 2);
        assert!(a.then(&a.inverse()).is_identity());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Perm::parse_cycles("(1 4)", 3).is_err());
        assert!(Perm::parse_cycles("(1 2)(2 3)", 3).is_err());
        assert!(Perm::parse_cycles("(1 x)", 3).is_err());
        assert!(Perm::parse_cycles("(1 2", 3).is_err());
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
    }
}
