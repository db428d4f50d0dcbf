//! Matrix representations of permutation groups over finite fields.

pub mod meataxe;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use meataxe::{MeataxeConfig, Split, MEATAXE_BUDGET, MEATAXE_SEED};

use crate::error::{Error, Result};
use crate::gf::GaloisField;
use crate::matrix::{Matrix, Subspace, MAX_DIM};
use crate::perm::{Coset, PermGroup, Permutation};

/// A homomorphism from a permutation group into invertible matrices, acting
/// on row vectors from the right.
pub struct Representation {
    group: PermGroup,
    field: GaloisField,
    dim: usize,
    gen_images: Vec<Matrix>,
    /// Matrix of every group element, by enumeration index.
    table: Vec<Matrix>,
    fixed_dims: OnceLock<Vec<usize>>,
}

impl Representation {
    /// Builds the element table by walking the Cayley graph; any two paths
    /// to the same permutation must give the same matrix.
    pub fn new(group: PermGroup, field: GaloisField, gen_images: Vec<Matrix>) -> Result<Self> {
        if gen_images.len() != group.generators().len() {
            return Err(Error::Shape(format!(
                "{} generator images for {} generators",
                gen_images.len(),
                group.generators().len()
            )));
        }
        let dim = match gen_images.first() {
            Some(m) => m.rows(),
            None => {
                return Err(Error::Shape(
                    "a group without generators needs an explicit dimension".into(),
                ))
            }
        };
        Self::with_dim(group, field, dim, gen_images)
    }

    pub fn with_dim(group: PermGroup, field: GaloisField, dim: usize, gen_images: Vec<Matrix>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Shape("module dimension must be positive".into()));
        }
        if dim > MAX_DIM {
            return Err(Error::DimensionCap(dim));
        }
        if gen_images.len() != group.generators().len() {
            return Err(Error::Shape(format!(
                "{} generator images for {} generators",
                gen_images.len(),
                group.generators().len()
            )));
        }
        for (i, m) in gen_images.iter().enumerate() {
            if m.field() != &field {
                return Err(Error::FieldMismatch);
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Shape(format!(
                    "generator image {i} is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_invertible() {
                return Err(Error::Shape(format!("generator image {i} is singular")));
            }
        }
        let elements = group.table()?;
        let n = elements.len();
        let mut table: Vec<Option<Matrix>> = vec![None; n];
        table[0] = Some(Matrix::identity(&field, dim));
        for i in 0..n {
            let here = table[i].clone().expect("BFS order reaches every element");
            for (s, img) in group.generators().iter().zip(&gen_images) {
                let target = elements
                    .index_of(&elements.elements()[i].mul(s))
                    .expect("group is closed");
                let product = here.mul(img)?;
                match &table[target] {
                    Some(existing) if *existing != product => {
                        return Err(Error::NotHomomorphism(format!(
                            "two words for {} give different matrices",
                            elements.elements()[target]
                        )));
                    }
                    Some(_) => {}
                    None => table[target] = Some(product),
                }
            }
        }
        Ok(Representation {
            group,
            field,
            dim,
            gen_images,
            table: table.into_iter().map(|m| m.expect("all reached")).collect(),
            fixed_dims: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gen_images(&self) -> &[Matrix] {
        &self.gen_images
    }

    fn index(&self, x: &Permutation) -> Result<usize> {
        self.group
            .index_of(x)?
            .ok_or_else(|| Error::NotMember(x.to_cycle_string()))
    }

    pub fn matrix_of(&self, x: &Permutation) -> Result<&Matrix> {
        Ok(&self.table[self.index(x)?])
    }

    pub fn matrix_at(&self, index: usize) -> &Matrix {
        &self.table[index]
    }

    /// `C_V(x)`: the left kernel of `rho(x) - I`.
    pub fn fixed_space(&self, x: &Permutation) -> Result<Subspace> {
        Ok(self.matrix_of(x)?.minus_identity().left_kernel())
    }

    /// `[x, V]`: the row space of `rho(x) - I`.
    pub fn commutator_space(&self, x: &Permutation) -> Result<Subspace> {
        Ok(self.matrix_of(x)?.minus_identity().row_space())
    }

    /// `dim C_V(g)` for every element, by enumeration index.
    pub fn fixed_dims(&self) -> &[usize] {
        self.fixed_dims.get_or_init(|| {
            self.table
                .iter()
                .map(|m| self.dim - m.minus_identity().rank())
                .collect()
        })
    }

    pub fn fixed_dim(&self, x: &Permutation) -> Result<usize> {
        Ok(self.fixed_dims()[self.index(x)?])
    }

    fn subgroup_images(&self, h: &PermGroup) -> Result<Vec<Matrix>> {
        if !h.is_subgroup_of(&self.group) {
            return Err(Error::NotSubgroup(format!("{h:?}")));
        }
        h.generators()
            .iter()
            .map(|g| self.matrix_of(g).cloned())
            .collect()
    }

    /// `(C_V(H), [H, V])` from the generators of `h`.
    pub fn group_subspaces(&self, h: &PermGroup) -> Result<(Subspace, Subspace)> {
        let images = self.subgroup_images(h)?;
        Ok(subspaces_of(&self.field, self.dim, &images))
    }

    pub fn composition_series(&self, h: &PermGroup, config: &MeataxeConfig) -> Result<CompositionSeriesV> {
        let images = self.subgroup_images(h)?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        composition_series_of(&self.field, self.dim, &images, &mut |f, d, g| {
            meataxe::meataxe_split(f, d, g, &mut rng, config)
        })
    }

    /// Composition series found by spinning every 1-dim subspace.
    pub fn composition_series_exhaustive(&self, h: &PermGroup) -> Result<CompositionSeriesV> {
        let images = self.subgroup_images(h)?;
        composition_series_of(&self.field, self.dim, &images, &mut |f, d, g| {
            Ok(meataxe::exhaustive_split(f, d, g))
        })
    }

    pub fn count_trivial_factors(&self, h: &PermGroup, config: &MeataxeConfig) -> Result<usize> {
        Ok(self.composition_series(h, config)?.trivial_count())
    }

    /// Mean of `dim C_V(s)` over the coset, as an exact fraction.
    pub fn avgdim(&self, coset: &Coset) -> Result<AvgDim> {
        if !coset.subgroup.is_subgroup_of(&self.group) {
            return Err(Error::NotSubgroup(format!("{:?}", coset.subgroup)));
        }
        self.group.require_member(&coset.rep)?;
        let dims = self.fixed_dims();
        let mut total = 0u64;
        let mut count = 0u64;
        for s in coset.elements()? {
            total += dims[self.index(&s)?] as u64;
            count += 1;
        }
        Ok(AvgDim { total, count })
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation(dim {} over {:?} of {:?})", self.dim, self.field, self.group)
    }
}

/// Fixed space and commutator space of the group generated by `images`.
pub fn subspaces_of(field: &GaloisField, dim: usize, images: &[Matrix]) -> (Subspace, Subspace) {
    let mut fixed = Subspace::full(field, dim);
    let mut comm = Subspace::zero(field, dim);
    for m in images {
        let d = m.minus_identity();
        fixed = fixed.intersect(&d.left_kernel()).expect("same ambient");
        comm = comm.sum(&d.row_space()).expect("same ambient");
    }
    (fixed, comm)
}

/// An exact mean `total / count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvgDim {
    pub total: u64,
    pub count: u64,
}

impl AvgDim {
    pub fn ratio(&self) -> Ratio<u64> {
        Ratio::new(self.total, self.count)
    }
}

impl fmt::Display for AvgDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.total, self.count)
    }
}

/// A composition series `0 = W_0 < ... < W_r = V` of a restricted module.
#[derive(Debug, Clone)]
pub struct CompositionSeriesV {
    /// `W_1, ..., W_r` (the zero subspace is implicit).
    pub flags: Vec<Subspace>,
    pub factor_dims: Vec<usize>,
    pub factor_trivial: Vec<bool>,
    /// Generator action on each factor.
    pub factor_actions: Vec<Vec<Matrix>>,
}

impl CompositionSeriesV {
    pub fn trivial_count(&self) -> usize {
        self.factor_trivial.iter().filter(|&&t| t).count()
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    /// Isomorphism-invariant fingerprints of the factors, sorted.
    pub fn factor_signatures(&self) -> Vec<FactorSignature> {
        let mut v: Vec<FactorSignature> = self
            .factor_dims
            .iter()
            .zip(&self.factor_trivial)
            .zip(&self.factor_actions)
            .map(|((&d, &t), gens)| FactorSignature::new(d, t, gens))
            .collect();
        v.sort();
        v
    }
}

/// Dimension, triviality, and the trace multiset over the generated matrix group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FactorSignature {
    pub dim: usize,
    pub trivial: bool,
    pub image_order: usize,
    pub traces: BTreeMap<u32, usize>,
}

impl FactorSignature {
    fn new(dim: usize, trivial: bool, gens: &[Matrix]) -> Self {
        let field = gens.first().map(|g| g.field().clone());
        let mut traces = BTreeMap::new();
        let mut image_order = 1;
        if let Some(field) = field {
            let mut seen = std::collections::HashSet::new();
            let id = Matrix::identity(&field, dim);
            let mut queue = vec![id.clone()];
            seen.insert(id.codes().to_vec());
            let mut head = 0;
            while head < queue.len() {
                let m = queue[head].clone();
                head += 1;
                for g in gens {
                    let next = m.mul(g).expect("square");
                    if seen.insert(next.codes().to_vec()) {
                        queue.push(next);
                    }
                }
            }
            image_order = queue.len();
            for m in &queue {
                let t = (0..dim).fold(0, |acc, i| field.add(acc, m.get(i, i)));
                *traces.entry(t).or_insert(0) += 1;
            }
        } else {
            traces.insert(dim as u32, 1);
        }
        FactorSignature {
            dim,
            trivial,
            image_order,
            traces,
        }
    }
}

type Splitter<'a> = dyn FnMut(&GaloisField, usize, &[Matrix]) -> Result<Split> + 'a;

fn composition_series_of(
    field: &GaloisField,
    dim: usize,
    images: &[Matrix],
    split: &mut Splitter<'_>,
) -> Result<CompositionSeriesV> {
    let mut out = CompositionSeriesV {
        flags: Vec::new(),
        factor_dims: Vec::new(),
        factor_trivial: Vec::new(),
        factor_actions: Vec::new(),
    };
    let lower = Subspace::zero(field, dim);
    let basis = Matrix::identity(field, dim);
    refine(field, lower, basis, images.to_vec(), split, &mut out)?;
    Ok(out)
}

/// Refines the subquotient `(lower + rowspan(basis)) / lower`, on which the
/// generators act by `gens` in the coordinates given by `basis`.
fn refine(
    field: &GaloisField,
    lower: Subspace,
    basis: Matrix,
    gens: Vec<Matrix>,
    split: &mut Splitter<'_>,
    out: &mut CompositionSeriesV,
) -> Result<()> {
    let m = basis.rows();
    match split(field, m, &gens)? {
        Split::Irreducible => {
            let upper = lower.sum(&basis.row_space())?;
            let trivial = m == 1 && gens.iter().all(Matrix::is_identity);
            out.flags.push(upper);
            out.factor_dims.push(m);
            out.factor_trivial.push(trivial);
            out.factor_actions.push(gens);
            Ok(())
        }
        Split::Proper(w) => {
            let (subs, quots, sub_basis, complement) = meataxe::sub_and_quotient(&w, &gens);
            let sub_in_v = sub_basis.mul(&basis)?;
            let quot_in_v = complement.mul(&basis)?;
            let middle = lower.sum(&sub_in_v.row_space())?;
            refine(field, lower, sub_in_v, subs, split, out)?;
            refine(field, middle, quot_in_v, quots, split, out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perms;

    fn gf(p: u64) -> GaloisField {
        GaloisField::new(p, 1).unwrap()
    }

    fn s3() -> PermGroup {
        PermGroup::new(3, perms(3, &["(0 1 2)", "(0 1)"]).unwrap()).unwrap()
    }

    /// Sum-zero plane with basis e0-e2, e1-e2.
    fn s3_standard(p: u64) -> Representation {
        let f = gf(p);
        let c = Matrix::from_ints(&f, &[vec![-1, 1], vec![-1, 0]]).unwrap();
        let t = Matrix::from_ints(&f, &[vec![0, 1], vec![1, 0]]).unwrap();
        Representation::new(s3(), f, vec![c, t]).unwrap()
    }

    fn cyclic(n: usize) -> PermGroup {
        let cycle: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let s = format!("({})", cycle.join(" "));
        PermGroup::new(n, perms(n, &[s.as_str()]).unwrap()).unwrap()
    }

    #[test]
    fn rep_create_spot_cases() {
        let f5 = gf(5);
        let one = Matrix::identity(&f5, 1);
        assert!(Representation::new(s3(), f5, vec![one.clone(), one]).is_ok());

        let f7 = gf(7);
        let ok = Representation::new(cyclic(3), f7.clone(), vec![Matrix::from_ints(&f7, &[vec![2]]).unwrap()]);
        assert!(ok.is_ok());
        let bad = Representation::new(cyclic(3), f7.clone(), vec![Matrix::from_ints(&f7, &[vec![3]]).unwrap()]);
        assert!(matches!(bad, Err(Error::NotHomomorphism(_))));

        let singular = Representation::new(cyclic(3), f7.clone(), vec![Matrix::from_ints(&f7, &[vec![0]]).unwrap()]);
        assert!(matches!(singular, Err(Error::Shape(_))));
        assert!(matches!(
            Representation::new(s3(), f7.clone(), vec![Matrix::identity(&f7, 2)]),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn fixed_spaces() {
        let rep = s3_standard(7);
        let g = rep.group().clone();
        assert!(rep.fixed_space(&g.identity()).unwrap().is_full());
        let c = Permutation::from_cycles("(0 1 2)", 3).unwrap();
        assert_eq!(rep.fixed_space(&c).unwrap().dim(), 0);
        let t = Permutation::from_cycles("(0 1)", 3).unwrap();
        assert_eq!(rep.fixed_space(&t).unwrap().dim(), 1);
        for x in g.enumerate().unwrap() {
            let fixed = rep.fixed_space(x).unwrap().dim();
            let comm = rep.commutator_space(x).unwrap().dim();
            assert_eq!(fixed + comm, rep.dim());
            assert_eq!(fixed, rep.fixed_dim(x).unwrap());
        }
        let outside = Permutation::from_cycles("(0 1)", 4).unwrap();
        assert!(rep.fixed_space(&outside).is_err());
    }

    #[test]
    fn group_subspace_spot_cases() {
        let rep = s3_standard(7);
        let trivial = PermGroup::trivial(3);
        let (fixed, comm) = rep.group_subspaces(&trivial).unwrap();
        assert!(fixed.is_full() && comm.is_zero());

        let a3 = rep.group().derived_subgroup().unwrap();
        let (fixed, comm) = rep.group_subspaces(&a3).unwrap();
        assert!(fixed.is_zero() && comm.is_full());

        let f5 = gf(5);
        let one = Matrix::identity(&f5, 1);
        let triv = Representation::new(s3(), f5, vec![one.clone(), one]).unwrap();
        let (fixed, comm) = triv.group_subspaces(&a3).unwrap();
        assert!(fixed.is_full() && comm.is_zero());

        let foreign = PermGroup::new(3, perms(3, &["(0 1)"]).unwrap()).unwrap();
        let c2 = cyclic(2);
        assert!(rep.group_subspaces(&foreign).is_ok());
        assert!(matches!(rep.group_subspaces(&c2), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn composition_series_spot_cases() {
        let f2 = gf(2);
        let swap = Matrix::from_ints(&f2, &[vec![0, 1], vec![1, 0]]).unwrap();
        let c2 = cyclic(2);
        let reg = Representation::new(c2.clone(), f2.clone(), vec![swap]).unwrap();
        let cs = reg.composition_series(&c2, &MeataxeConfig::default()).unwrap();
        assert_eq!(cs.factor_dims, vec![1, 1]);
        assert_eq!(cs.factor_trivial, vec![true, true]);
        assert_eq!(cs.flags[0], Subspace::from_rows(&f2, 2, &[vec![1, 1]]).unwrap());
        assert_eq!(reg.count_trivial_factors(&c2, &MeataxeConfig::default()).unwrap(), 2);

        let rep = s3_standard(7);
        let a3 = rep.group().derived_subgroup().unwrap();
        let cs = rep.composition_series(&a3, &MeataxeConfig::default()).unwrap();
        assert_eq!(cs.factor_dims, vec![1, 1]);
        assert_eq!(cs.trivial_count(), 0);
        let full = rep.composition_series(rep.group(), &MeataxeConfig::default()).unwrap();
        assert_eq!(full.factor_dims, vec![2]);

        let f5 = gf(5);
        let one = Matrix::identity(&f5, 1);
        let triv = Representation::new(s3(), f5, vec![one.clone(), one]).unwrap();
        let cs = triv.composition_series(triv.group(), &MeataxeConfig::default()).unwrap();
        assert_eq!(cs.factor_trivial, vec![true]);
    }

    #[test]
    fn flags_are_invariant_and_increasing() {
        let f3 = gf(3);
        // Regular module of S3 over GF(3): 6-dim, many non-split extensions.
        let g = s3();
        let elems = g.enumerate().unwrap().to_vec();
        let images: Vec<Matrix> = g
            .generators()
            .iter()
            .map(|s| {
                let img: Vec<usize> = elems
                    .iter()
                    .map(|e| g.index_of(&e.mul(s)).unwrap().unwrap())
                    .collect();
                Matrix::permutation(&f3, &img)
            })
            .collect();
        let rep = Representation::new(g.clone(), f3, images).unwrap();
        let cs = rep.composition_series(&g, &MeataxeConfig::default()).unwrap();
        assert_eq!(cs.factor_dims.iter().sum::<usize>(), 6);
        for (i, w) in cs.flags.iter().enumerate() {
            for m in rep.gen_images() {
                assert!(w.is_invariant(m));
            }
            if i > 0 {
                assert!(w.contains(&cs.flags[i - 1]).unwrap());
                assert_eq!(w.dim(), cs.flags[i - 1].dim() + cs.factor_dims[i]);
            }
        }
        // Over GF(3) every composition factor of the S3 regular module is 1-dim.
        assert_eq!(cs.factor_dims, vec![1; 6]);
        assert_eq!(cs.trivial_count(), 3);
        let ex = rep.composition_series_exhaustive(&g).unwrap();
        assert_eq!(ex.factor_signatures(), cs.factor_signatures());
    }

    #[test]
    fn avgdim_spot_values() {
        let f7 = gf(7);
        let c3 = cyclic(3);
        let rep = Representation::new(c3.clone(), f7.clone(), vec![Matrix::from_ints(&f7, &[vec![2]]).unwrap()]).unwrap();
        let a = rep.avgdim(&Coset::new(c3.clone(), c3.identity())).unwrap();
        assert_eq!(a, AvgDim { total: 1, count: 3 });
        assert_eq!(a.ratio(), Ratio::new(1, 3));

        let rep = s3_standard(7);
        let a3 = rep.group().derived_subgroup().unwrap();
        let t = Permutation::from_cycles("(0 1)", 3).unwrap();
        let a = rep.avgdim(&Coset::new(a3.clone(), t)).unwrap();
        assert_eq!(a.to_string(), "3/3");
        assert_eq!(a.ratio(), Ratio::from_integer(1));
        let a = rep.avgdim(&Coset::new(a3, rep.group().identity())).unwrap();
        assert_eq!(a.ratio(), Ratio::new(2, 3));
    }

    #[test]
    fn avgdim_partitions_over_cosets() {
        let rep = s3_standard(5);
        let g = rep.group().clone();
        let whole = rep.avgdim(&Coset::new(g.clone(), g.identity())).unwrap();
        let a3 = g.derived_subgroup().unwrap();
        let q = g.quotient(&a3).unwrap();
        let mut total = 0;
        let mut count = 0;
        for r in 0..q.index() {
            let rep_elem = q.lift(&q.group().enumerate().unwrap()[r]);
            let part = rep.avgdim(&Coset::new(a3.clone(), rep_elem)).unwrap();
            total += part.total;
            count += part.count;
        }
        assert_eq!(AvgDim { total, count }, whole);
    }
}
