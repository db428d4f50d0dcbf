//! Invariant subspaces of matrix modules.
//!
//! The randomized path draws algebra elements (random words in the
//! generators with random scalar coefficients), spins up null vectors, and
//! certifies irreducibility with Norton's criterion on the module and its
//! transpose. Small modules can instead be split by spinning every 1-dim
//! subspace.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::GaloisField;
use crate::matrix::{Matrix, Subspace};

/// Default seed for the random algebra elements.
pub const MEATAXE_SEED: u64 = 0x3EA7_A8E5;

/// Default number of algebra elements tried before giving up.
pub const MEATAXE_BUDGET: usize = 200;

/// Null spaces with at most this many vectors are searched exhaustively.
const KERNEL_SCAN_LIMIT: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeataxeConfig {
    pub seed: u64,
    pub budget: usize,
    /// Allow the exhaustive fallback for dim <= 6 over fields of order <= 4.
    pub exhaustive_fallback: bool,
}

impl Default for MeataxeConfig {
    fn default() -> Self {
        MeataxeConfig {
            seed: MEATAXE_SEED,
            budget: MEATAXE_BUDGET,
            exhaustive_fallback: true,
        }
    }
}

/// Outcome of one splitting attempt.
#[derive(Debug, Clone)]
pub enum Split {
    Irreducible,
    Proper(Subspace),
}

/// Semi-echelon basis used while spinning.
struct Spinner<'a> {
    field: &'a GaloisField,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl<'a> Spinner<'a> {
    fn new(field: &'a GaloisField) -> Self {
        Spinner {
            field,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Reduces `v` against the basis; returns it if it is new.
    fn insert(&mut self, mut v: Vec<u32>) -> Option<Vec<u32>> {
        let f = self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                let nc = f.neg(c);
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = f.add(*x, f.mul(nc, r));
                    }
                }
            }
        }
        let p = v.iter().position(|&c| c != 0)?;
        let inv = f.inv(v[p]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.rows.push(v.clone());
        self.pivots.push(p);
        Some(v)
    }
}

/// Smallest subspace containing `seeds` and invariant under `gens`.
pub fn spin(field: &GaloisField, dim: usize, gens: &[Matrix], seeds: &[Vec<u32>]) -> Subspace {
    let mut sp = Spinner::new(field);
    let mut queue: Vec<Vec<u32>> = Vec::new();
    for s in seeds {
        if let Some(v) = sp.insert(s.clone()) {
            queue.push(v);
        }
    }
    let mut head = 0;
    while head < queue.len() && sp.rows.len() < dim {
        let v = queue[head].clone();
        head += 1;
        for g in gens {
            if let Some(w) = sp.insert(g.apply_row(&v)) {
                queue.push(w);
            }
        }
    }
    let data: Vec<u32> = sp.rows.into_iter().flatten().collect();
    let rows = data.len() / dim.max(1);
    Subspace::from_spanning(&Matrix::from_codes(field, rows, dim, data).expect("spin rows"))
}

/// Nonzero vectors of `space` with leading coefficient 1.
fn normalized_vectors(space: &Subspace) -> Vec<Vec<u32>> {
    let f = space.field();
    let q = f.order() as u64;
    let k = space.dim();
    let n = space.ambient_dim();
    let mut out = Vec::new();
    let total = q.pow(k as u32);
    for code in 1..total {
        let mut coeffs = Vec::with_capacity(k);
        let mut rest = code;
        for _ in 0..k {
            coeffs.push((rest % q) as u32);
            rest /= q;
        }
        if coeffs.iter().rev().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        let mut v = vec![0u32; n];
        for (i, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (x, &b) in v.iter_mut().zip(space.basis().row(i)) {
                *x = f.add(*x, f.mul(c, b));
            }
        }
        out.push(v);
    }
    out
}

fn random_algebra_element(field: &GaloisField, dim: usize, gens: &[Matrix], rng: &mut ChaCha8Rng) -> Matrix {
    let q = field.order();
    let mut theta = Matrix::identity(field, dim).scale(rng.gen_range(0..q));
    for _ in 0..3 {
        let len = rng.gen_range(1..=4);
        let mut word = gens[rng.gen_range(0..gens.len())].clone();
        for _ in 1..len {
            word = word.mul(&gens[rng.gen_range(0..gens.len())]).expect("square");
        }
        theta = theta.add(&word.scale(rng.gen_range(1..q))).expect("square");
    }
    theta
}

/// Randomized split with Norton certification and optional exhaustive fallback.
pub fn meataxe_split(
    field: &GaloisField,
    dim: usize,
    gens: &[Matrix],
    rng: &mut ChaCha8Rng,
    config: &MeataxeConfig,
) -> Result<Split> {
    if dim <= 1 {
        return Ok(Split::Irreducible);
    }
    if gens.is_empty() {
        let mut e0 = vec![0u32; dim];
        e0[0] = 1;
        return Ok(Split::Proper(spin(field, dim, gens, &[e0])));
    }
    let transposes: Vec<Matrix> = gens.iter().map(Matrix::transpose).collect();
    let q = field.order() as u64;
    for _ in 0..config.budget {
        let theta = random_algebra_element(field, dim, gens, rng);
        let left = theta.left_kernel();
        if left.is_zero() {
            continue;
        }
        let nullity = left.dim();
        let scan = if nullity == 1 {
            vec![left.basis().row(0).to_vec()]
        } else if q.saturating_pow(nullity as u32) <= KERNEL_SCAN_LIMIT {
            normalized_vectors(&left)
        } else {
            let s = spin(field, dim, gens, &[left.basis().row(0).to_vec()]);
            if !s.is_full() {
                return Ok(Split::Proper(s));
            }
            continue;
        };
        for v in &scan {
            let s = spin(field, dim, gens, std::slice::from_ref(v));
            if !s.is_full() {
                return Ok(Split::Proper(s));
            }
        }
        let right = theta.echelonize().kernel;
        let dual_scan = if nullity == 1 {
            vec![right.basis().row(0).to_vec()]
        } else {
            normalized_vectors(&right)
        };
        for w in &dual_scan {
            let s = spin(field, dim, &transposes, std::slice::from_ref(w));
            if !s.is_full() {
                return Ok(Split::Proper(s.annihilator()));
            }
        }
        return Ok(Split::Irreducible);
    }
    if config.exhaustive_fallback && dim <= 6 && field.order() <= 4 {
        return Ok(exhaustive_split(field, dim, gens));
    }
    Err(Error::MeataxeBudget(config.budget))
}

/// Spins every 1-dim subspace; complete but exponential in `dim`.
pub fn exhaustive_split(field: &GaloisField, dim: usize, gens: &[Matrix]) -> Split {
    if dim <= 1 {
        return Split::Irreducible;
    }
    for v in normalized_vectors(&Subspace::full(field, dim)) {
        let s = spin(field, dim, gens, &[v]);
        if !s.is_full() {
            return Split::Proper(s);
        }
    }
    Split::Irreducible
}

/// Action on an invariant subspace and on the quotient by it.
pub(crate) fn sub_and_quotient(w: &Subspace, gens: &[Matrix]) -> (Vec<Matrix>, Vec<Matrix>, Matrix, Matrix) {
    let f = w.field();
    let m = w.ambient_dim();
    let k = w.dim();
    let pivots = w.pivots();
    let non_pivots: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    let mut complement = Matrix::zero(f, m - k, m);
    for (i, &c) in non_pivots.iter().enumerate() {
        complement.set(i, c, 1);
    }
    let mut subs = Vec::with_capacity(gens.len());
    let mut quots = Vec::with_capacity(gens.len());
    for g in gens {
        let mut sub = Matrix::zero(f, k, k);
        for i in 0..k {
            let img = g.apply_row(w.basis().row(i));
            let coords = w.coordinates(&img).expect("subspace is invariant");
            for (j, c) in coords.into_iter().enumerate() {
                sub.set(i, j, c);
            }
        }
        let mut quot = Matrix::zero(f, m - k, m - k);
        for i in 0..m - k {
            let img = w.reduce(&g.apply_row(complement.row(i)));
            for (j, &c) in non_pivots.iter().enumerate() {
                quot.set(i, j, img[c]);
            }
        }
        subs.push(sub);
        quots.push(quot);
    }
    (subs, quots, w.basis().clone(), complement)
}
