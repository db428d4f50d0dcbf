//! Base and strong generating set via Schreier-Sims.
//!
//! A seeded random phase sifts random walk elements to collect most strong
//! generators cheaply, then a deterministic pass sifts every Schreier
//! generator of every level until none fails. The result does not depend on
//! the randomness, only the running time does.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Permutation;
use crate::error::{Error, Result};

/// Seed of the random phase.
pub const SCHREIER_SIMS_SEED: u64 = 0x5C4E_1E55;

#[derive(Debug, Clone)]
struct Level {
    point: usize,
    /// Points of the basic orbit in discovery order.
    orbit: Vec<usize>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Permutation>>,
    generators: Vec<Permutation>,
}

#[derive(Debug, Clone)]
pub(crate) struct StabChain {
    degree: usize,
    base: Vec<usize>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    pub(crate) fn build(degree: usize, generators: &[Permutation]) -> StabChain {
        let mut chain = StabChain {
            degree,
            base: Vec::new(),
            strong: Vec::new(),
            levels: Vec::new(),
        };
        for g in generators {
            if !g.is_identity() && !chain.strong.contains(g) {
                chain.add_strong(g.clone());
            }
        }
        chain.rebuild_levels();
        if chain.strong.is_empty() {
            return chain;
        }

        let mut rng = ChaCha8Rng::seed_from_u64(SCHREIER_SIMS_SEED);
        let mut walk = Permutation::identity(degree);
        let mut quiet = 0;
        for _ in 0..400 {
            if quiet >= 24 {
                break;
            }
            let steps = rng.gen_range(1..=6);
            for _ in 0..steps {
                let g = &generators[rng.gen_range(0..generators.len())];
                walk = walk.mul(g);
            }
            let (residue, _) = chain.sift(&walk, 0);
            if residue.is_identity() {
                quiet += 1;
            } else {
                quiet = 0;
                chain.add_strong(residue);
                chain.rebuild_levels();
            }
        }

        while let Some(residue) = chain.failing_schreier_generator() {
            chain.add_strong(residue);
            chain.rebuild_levels();
        }
        chain
    }

    fn add_strong(&mut self, g: Permutation) {
        if self.base.iter().all(|&b| g.image(b) == b) {
            let p = g.first_moved().expect("strong generators are not the identity");
            self.base.push(p);
        }
        self.strong.push(g);
    }

    fn rebuild_levels(&mut self) {
        self.levels.clear();
        for (i, &point) in self.base.iter().enumerate() {
            let generators: Vec<Permutation> = self
                .strong
                .iter()
                .filter(|g| self.base[..i].iter().all(|&b| g.image(b) == b))
                .cloned()
                .collect();
            let mut transversal = vec![None; self.degree];
            transversal[point] = Some(Permutation::identity(self.degree));
            let mut orbit = vec![point];
            let mut head = 0;
            while head < orbit.len() {
                let b = orbit[head];
                head += 1;
                for g in &generators {
                    let c = g.image(b);
                    if transversal[c].is_none() {
                        let u = transversal[b].as_ref().unwrap().mul(g);
                        transversal[c] = Some(u);
                        orbit.push(c);
                    }
                }
            }
            self.levels.push(Level {
                point,
                orbit,
                transversal,
                generators,
            });
        }
    }

    /// Strips `g` through the levels from `start`; returns the residue and
    /// the level where sifting stopped (`levels.len()` on completion).
    pub(crate) fn sift(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut g = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let b = g.image(level.point);
            match &level.transversal[b] {
                Some(u) => g = g.mul(&u.inv()),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    fn failing_schreier_generator(&self) -> Option<Permutation> {
        for (i, level) in self.levels.iter().enumerate().rev() {
            for &b in &level.orbit {
                let ub = level.transversal[b].as_ref().unwrap();
                for s in &level.generators {
                    let c = s.image(b);
                    let uc = level.transversal[c].as_ref().unwrap();
                    let schreier = ub.mul(s).mul(&uc.inv());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, _) = self.sift(&schreier, i + 1);
                    if !residue.is_identity() {
                        return Some(residue);
                    }
                }
            }
        }
        None
    }

    pub(crate) fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    pub(crate) fn order(&self) -> Result<u128> {
        self.levels.iter().try_fold(1u128, |acc, l| {
            acc.checked_mul(l.orbit.len() as u128).ok_or(Error::OrderOverflow)
        })
    }

    pub(crate) fn base(&self) -> &[usize] {
        &self.base
    }

    pub(crate) fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub(crate) fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }
}
