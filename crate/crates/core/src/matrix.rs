//! Dense matrices and echelonized subspaces over a [`GaloisField`].
//!
//! Vectors are rows. A module element `v` is acted on as `v * rho(g)`, so the
//! fixed space of `g` is the left kernel of `rho(g) - I` and `[g, V]` is the
//! row space of `rho(g) - I`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{FieldElem, GaloisField};

/// Largest module dimension accepted by the representation layer.
pub const MAX_DIM: usize = 128;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: GaloisField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Binary operations accepted by [`Matrix::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatOp {
    Mul,
    Add,
    Sub,
    Tensor,
}

impl Matrix {
    pub fn zero(field: &GaloisField, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &GaloisField, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from raw field codes.
    pub fn from_codes(field: &GaloisField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&c| c >= field.order()) {
            return Err(Error::Parse(format!("entry code {bad} outside {field:?}")));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from integer rows, reduced into the prime field.
    pub fn from_ints(field: &GaloisField, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&x| field.from_int(x)).collect();
        Ok(Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    /// Permutation matrix with `e_i * P = e_{perm[i]}`.
    pub fn permutation(field: &GaloisField, images: &[usize]) -> Self {
        let n = images.len();
        let mut m = Self::zero(field, n, n);
        for (i, &j) in images.iter().enumerate() {
            m.data[i * n + j] = 1;
        }
        m
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entry(&self, r: usize, c: usize) -> FieldElem {
        self.field.elem(self.get(r, c))
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn codes(&self) -> &[u32] {
        &self.data
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.get(i, j) == if i == j { 1 } else { 0 })
            })
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn arith(&self, other: &Matrix, op: MatOp) -> Result<Matrix> {
        match op {
            MatOp::Mul => self.mul(other),
            MatOp::Add => self.add(other),
            MatOp::Sub => self.sub(other),
            MatOp::Tensor => self.tensor(other),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                let orow = other.row(t);
                let base = i * other.cols;
                for (j, &b) in orow.iter().enumerate() {
                    if b != 0 {
                        let cur = out.data[base + j];
                        out.data[base + j] = f.add(cur, f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Matrix, op: impl Fn(u32, u32) -> u32) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| op(a, b)).collect();
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        let f = self.field.clone();
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        let f = self.field.clone();
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    /// Kronecker product.
    pub fn tensor(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let f = &self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zero(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> Matrix {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = out.get(i, i);
            out.set(i, i, self.field.sub(v, 1));
        }
        out
    }

    /// Stacks the rows of `other` below `self`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::Shape(format!("stacking {} and {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut out = vec![0u32; self.cols];
        for (t, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in self.row(t).iter().enumerate() {
                if b != 0 {
                    out[j] = f.add(out[j], f.mul(a, b));
                }
            }
        }
        out
    }

    /// Reduces a copy to RREF; returns it with the pivot columns.
    fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            if inv != 1 {
                for j in c..m.cols {
                    let v = m.get(r, j);
                    m.set(r, j, f.mul(v, inv));
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                let nf = f.neg(factor);
                for j in c..m.cols {
                    let pv = m.get(r, j);
                    if pv != 0 {
                        let v = m.get(i, j);
                        m.set(i, j, f.add(v, f.mul(nf, pv)));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank, row space, and right kernel `{v : self * v^T = 0}`.
    pub fn echelonize(&self) -> Echelon {
        let (basis, pivots) = self.rref();
        let rank = pivots.len();
        let kernel = kernel_from_rref(&basis, &pivots);
        Echelon {
            rank,
            row_space: Subspace {
                ambient: self.cols,
                basis,
                pivots,
            },
            kernel,
        }
    }

    /// `{v : v * self = 0}`.
    pub fn left_kernel(&self) -> Subspace {
        self.transpose().echelonize().kernel
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::from_spanning(self)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Matrix::zero(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Shape("matrix is singular".into()));
        }
        let mut out = Matrix::zero(f, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, red.get(i, n + j));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Rows as integer-or-coefficient JSON-friendly nested vectors.
    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[", self.field)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = self.row(i).iter().map(|&c| self.field.display(c)).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        write!(f, "]")
    }
}

fn kernel_from_rref(rref: &Matrix, pivots: &[usize]) -> Subspace {
    let f = rref.field();
    let n = rref.cols;
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut basis = Matrix::zero(f, free.len(), n);
    for (row, &fc) in free.iter().enumerate() {
        basis.set(row, fc, 1);
        for (pr, &pc) in pivots.iter().enumerate() {
            let v = rref.get(pr, fc);
            if v != 0 {
                basis.set(row, pc, f.neg(v));
            }
        }
    }
    Subspace::from_spanning(&basis)
}

/// Output of [`Matrix::echelonize`].
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rank: usize,
    pub row_space: Subspace,
    pub kernel: Subspace,
}

/// A subspace of `F^n` held by its reduced row echelon basis.
#[derive(Clone)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

/// Binary operations accepted by [`Subspace::op`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceOp {
    Intersect,
    Sum,
    Contains,
}

/// Result of [`Subspace::op`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubspaceOpResult {
    Space(Subspace),
    Bool(bool),
}

impl Subspace {
    pub fn zero(field: &GaloisField, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zero(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &GaloisField, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the rows of `m`.
    pub fn from_spanning(m: &Matrix) -> Self {
        let (basis, pivots) = m.rref();
        Subspace {
            ambient: m.cols,
            basis,
            pivots,
        }
    }

    pub fn from_rows(field: &GaloisField, ambient: usize, rows: &[Vec<u32>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != ambient) {
            return Err(Error::Shape("row length differs from ambient dimension".into()));
        }
        let data = rows.iter().flatten().copied().collect();
        Ok(Self::from_spanning(&Matrix::from_codes(field, rows.len(), ambient, data)?))
    }

    pub fn field(&self) -> &GaloisField {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn op(&self, other: &Subspace, op: SubspaceOp) -> Result<SubspaceOpResult> {
        Ok(match op {
            SubspaceOp::Intersect => SubspaceOpResult::Space(self.intersect(other)?),
            SubspaceOp::Sum => SubspaceOpResult::Space(self.sum(other)?),
            SubspaceOp::Contains => SubspaceOpResult::Bool(self.contains(other)?),
        })
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(Subspace::from_spanning(&self.basis.stack(&other.basis)?))
    }

    /// Annihilator `{u : B u^T = 0}` for the basis `B`.
    pub fn annihilator(&self) -> Subspace {
        kernel_from_rref(&self.basis, &self.pivots)
    }

    /// Vectors satisfying the constraints of both annihilators.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let constraints = self.annihilator().basis.stack(&other.annihilator().basis)?;
        Ok(constraints.echelonize().kernel)
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&c| c == 0)
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        Ok((0..other.dim()).all(|i| self.contains_vector(other.basis.row(i))))
    }

    /// Residue of `v` after clearing the pivot columns.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut out = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            let nc = f.neg(c);
            for (j, &b) in self.basis.row(r).iter().enumerate() {
                if b != 0 {
                    out[j] = f.add(out[j], f.mul(nc, b));
                }
            }
        }
        out
    }

    /// Coordinates of a member vector in the echelon basis.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    /// Whether `v * m` stays inside the subspace for every basis row.
    pub fn is_invariant(&self, m: &Matrix) -> bool {
        (0..self.dim()).all(|i| self.contains_vector(&m.apply_row(self.basis.row(i))))
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: {:?})", self.dim(), self.ambient, self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> GaloisField {
        GaloisField::new(p, 1).unwrap()
    }

    fn random_matrix(f: &GaloisField, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let data = (0..r * c).map(|_| rng.gen_range(0..f.order())).collect();
        Matrix::from_codes(f, r, c, data).unwrap()
    }

    #[test]
    fn rank_one_over_gf2() {
        let f = gf(2);
        let m = Matrix::from_ints(&f, &[vec![1, 1], vec![1, 1]]).unwrap();
        let e = m.echelonize();
        assert_eq!(e.rank, 1);
        assert_eq!(e.kernel, Subspace::from_rows(&f, 2, &[vec![1, 1]]).unwrap());
    }

    #[test]
    fn identity_has_zero_kernel() {
        let f = gf(7);
        let e = Matrix::identity(&f, 3).echelonize();
        assert_eq!(e.rank, 3);
        assert!(e.kernel.is_zero());
        assert!(e.row_space.is_full());
    }

    #[test]
    fn three_cycle_on_standard_s3_module() {
        // Basis e0-e2, e1-e2 of the sum-zero plane; (0 1 2) sends
        // e0-e2 -> e1-e0 = -b0 + b1 and e1-e2 -> e2-e0 = -b0.
        let f = gf(7);
        let rho = Matrix::from_ints(&f, &[vec![-1, 1], vec![-1, 0]]).unwrap();
        let e = rho.minus_identity().echelonize();
        assert_eq!(e.rank, 2);
        assert!(e.kernel.is_zero());
        assert!(rho.minus_identity().left_kernel().is_zero());
    }

    #[test]
    fn subspace_lattice_spot_values() {
        let f = gf(5);
        let a = Subspace::from_rows(&f, 2, &[vec![1, 0]]).unwrap();
        let b = Subspace::from_rows(&f, 2, &[vec![0, 1]]).unwrap();
        assert!(a.intersect(&b).unwrap().is_zero());
        assert!(a.sum(&b).unwrap().is_full());
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.op(&b, SubspaceOp::Contains).unwrap(), SubspaceOpResult::Bool(false));
        let c = Subspace::zero(&f, 3);
        assert_eq!(a.sum(&c).unwrap_err(), Error::AmbientMismatch(2, 3));
    }

    #[test]
    fn matrix_arithmetic_spot_values() {
        let f = gf(7);
        let i2 = Matrix::identity(&f, 2);
        let i3 = Matrix::identity(&f, 3);
        assert_eq!(i2.tensor(&i3).unwrap(), Matrix::identity(&f, 6));

        let c = Matrix::permutation(&f, &[1, 2, 0]);
        assert_eq!(c.mul(&c).unwrap(), Matrix::permutation(&f, &[2, 0, 1]));

        let f2 = gf(2);
        let u = Matrix::from_ints(&f2, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert!(u.mul(&u).unwrap().is_identity());

        assert!(matches!(i2.mul(&i3), Err(Error::Shape(_))));
        assert!(matches!(i2.add(&i3), Err(Error::Shape(_))));
    }

    #[test]
    fn inverse_round_trip() {
        let f = gf(7);
        let m = Matrix::from_ints(&f, &[vec![2, 1, 0], vec![0, 3, 1], vec![1, 0, 4]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let s = Matrix::from_ints(&f, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(s.inverse().is_err());
    }

    #[test]
    fn canonical_form_ignores_spanning_set() {
        let f = gf(3);
        let a = Subspace::from_rows(&f, 3, &[vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        let b = Subspace::from_rows(&f, 3, &[vec![1, 0, 1], vec![1, 1, 2], vec![2, 1, 0]]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn modular_law_on_random_subspaces() {
        let f = gf(3);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let a = Subspace::from_spanning(&random_matrix(&f, 3, 6, &mut rng));
            let b = Subspace::from_spanning(&random_matrix(&f, 4, 6, &mut rng));
            let s = a.sum(&b).unwrap();
            let i = a.intersect(&b).unwrap();
            assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
            assert!(a.contains(&i).unwrap() && b.contains(&i).unwrap());
            assert!(s.contains(&a).unwrap() && s.contains(&b).unwrap());
        }
    }

    #[test]
    fn extension_field_linear_algebra() {
        let f = GaloisField::new(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let m = random_matrix(&f, 4, 4, &mut rng);
            let e = m.echelonize();
            assert_eq!(e.rank + e.kernel.dim(), 4);
            for i in 0..e.kernel.dim() {
                let v = e.kernel.basis().row(i);
                assert!(m.transpose().apply_row(v).iter().all(|&c| c == 0));
            }
            if m.is_invertible() {
                assert!(m.mul(&m.inverse().unwrap()).unwrap().is_identity());
            }
        }
    }

    proptest! {
        #[test]
        fn rank_nullity(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 7]), r in 1usize..7, c in 1usize..7) {
            let f = gf(p);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_matrix(&f, r, c, &mut rng);
            let e = m.echelonize();
            prop_assert_eq!(e.rank + e.kernel.dim(), c);
            prop_assert_eq!(e.row_space.dim(), e.rank);
            for i in 0..e.kernel.dim() {
                let v = e.kernel.basis().row(i);
                prop_assert!(m.transpose().apply_row(v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn rank_of_product_is_bounded(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 7])) {
            let f = gf(p);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(&f, 5, 4, &mut rng);
            let b = random_matrix(&f, 4, 6, &mut rng);
            let ab = a.mul(&b).unwrap();
            prop_assert!(ab.rank() <= a.rank().min(b.rank()));
        }

        #[test]
        fn invertible_means_full_rank(seed in any::<u64>()) {
            let f = gf(7);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_matrix(&f, 4, 4, &mut rng);
            if let Ok(inv) = m.inverse() {
                let e = m.echelonize();
                prop_assert_eq!(e.rank, 4);
                prop_assert!(e.kernel.is_zero());
                prop_assert!(inv.mul(&m).unwrap().is_identity());
            }
        }
    }
}
