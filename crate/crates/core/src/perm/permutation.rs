use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, ..., degree - 1}`.
///
/// Products compose left to right: `a.mul(&b)` applies `a` first, so
/// `i^(ab) = (i^a)^b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Parses cycle notation such as `"(0 1 2)(3 4)"`; `"()"` is the identity.
    /// Points inside a cycle may be separated by spaces or commas.
    pub fn from_cycles(s: &str, degree: usize) -> Result<Self> {
        let cycles = parse_cycles(s)?;
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in &cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {a} exceeds degree {degree} in `{s}`"
                    )));
                }
                if touched[a] {
                    return Err(Error::InvalidPermutation(format!("point {a} repeated in `{s}`")));
                }
                touched[a] = true;
                images[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::new(images)
    }

    /// Largest point mentioned in a cycle string, plus one.
    pub fn cycles_min_degree(s: &str) -> Result<usize> {
        Ok(parse_cycles(s)?
            .iter()
            .flatten()
            .max()
            .map_or(0, |&m| m + 1))
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inv(&self) -> Permutation {
        let mut out = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            out[j as usize] = i as u32;
        }
        Permutation { images: out }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `g^-1 self g`.
    pub fn conj(&self, g: &Permutation) -> Permutation {
        g.inv().mul(self).mul(g)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
        a.inv().mul(&b.inv()).mul(a).mul(b)
    }

    #[inline]
    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .zip(&other.images)
            .all(|(&a, &b)| other.images[a as usize] == self.images[b as usize])
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.image(start);
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.image(j);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &j)| i as u32 != j)
    }

    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                format!("({})", pts.join(" "))
            })
            .collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let bad = |msg: &str| Error::InvalidPermutation(format!("{msg} in `{s}`"));
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(bad("expected `(`"));
        };
        let close = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let inner = &body[..close];
        let pts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| bad("non-numeric point")))
            .collect::<Result<Vec<_>>>()?;
        if !pts.is_empty() {
            out.push(pts);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_round_trip() {
        let p = Permutation::from_cycles("(0 1 2)(3 4)", 6).unwrap();
        assert_eq!(p.images(), vec![1, 2, 0, 4, 3, 5]);
        assert_eq!(p.to_cycle_string(), "(0 1 2)(3 4)");
        assert_eq!(p.order(), 6);
        assert_eq!(Permutation::from_cycles("()", 3).unwrap(), Permutation::identity(3));
        assert_eq!(Permutation::from_cycles("(0,1)", 2).unwrap().images(), vec![1, 0]);
        assert_eq!(Permutation::cycles_min_degree("(0 4)(2 3)").unwrap(), 5);
    }

    #[test]
    fn rejects_malformed() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::from_cycles("(0 1", 3).is_err());
        assert!(Permutation::from_cycles("(0 5)", 3).is_err());
        assert!(Permutation::from_cycles("(0 1)(1 2)", 3).is_err());
        assert!(Permutation::from_cycles("0 1", 3).is_err());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Permutation::from_cycles("(0 1)", 3).unwrap();
        let b = Permutation::from_cycles("(1 2)", 3).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.mul(&b).image(0), 2);
        assert_eq!(a.mul(&b), Permutation::from_cycles("(0 2 1)", 3).unwrap());
        let c = Permutation::from_cycles("(0 1 2)", 3).unwrap();
        assert_eq!(c.pow(2), Permutation::from_cycles("(0 2 1)", 3).unwrap());
        assert_eq!(c.pow(-1), c.inv());
        assert!(c.mul(&c.inv()).is_identity());
        assert!(!a.commutes_with(&b));
        assert!(c.commutes_with(&c.pow(2)));
        assert_eq!(
            Permutation::commutator(&a, &b).order(),
            3,
            "commutator of two transpositions in S3"
        );
    }
}
