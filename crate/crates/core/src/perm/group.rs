use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::chain::StabChain;
use super::Permutation;
use crate::error::{Error, Result};
use crate::gf::smallest_prime_factor;

/// Default cap on full element enumeration.
pub const DEFAULT_ENUM_CAP: usize = 200_000;

/// A permutation group held by generators and a stabilizer chain.
///
/// Cloning is cheap; the element table and class data are computed at most
/// once and shared between clones.
#[derive(Clone)]
pub struct PermGroup(Arc<GroupInner>);

struct GroupInner {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: u128,
    enum_cap: usize,
    elements: OnceLock<ElementTable>,
    classes: OnceLock<ClassData>,
}

/// All elements in breadth-first Cayley graph order, with a reverse index.
pub struct ElementTable {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl ElementTable {
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Conjugacy classes ordered by the enumeration index of their first member.
#[derive(Debug, Clone)]
pub struct ClassData {
    pub class_reps: Vec<Permutation>,
    pub class_sizes: Vec<u128>,
    pub centralizer_orders: Vec<u128>,
    /// Class number of each element, by enumeration index.
    pub class_of: Vec<usize>,
    /// Enumeration indices of each class, ascending.
    pub members: Vec<Vec<usize>>,
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.class_reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_reps.is_empty()
    }
}

impl PermGroup {
    /// `<gens>` acting on `degree` points.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_cap(degree, generators, DEFAULT_ENUM_CAP)
    }

    pub fn with_cap(degree: usize, generators: Vec<Permutation>, enum_cap: usize) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let chain = StabChain::build(degree, &generators);
        let order = chain.order()?;
        Ok(PermGroup(Arc::new(GroupInner {
            degree,
            generators,
            chain,
            order,
            enum_cap,
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        })))
    }

    /// Builds from generators that must share a degree.
    pub fn from_generators(generators: Vec<Permutation>) -> Result<Self> {
        let degree = generators
            .first()
            .map(Permutation::degree)
            .ok_or_else(|| Error::InvalidPermutation("no generators and no degree".into()))?;
        Self::new(degree, generators)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("trivial group")
    }

    /// A subgroup with the same degree and enumeration cap.
    pub fn subgroup(&self, generators: Vec<Permutation>) -> Result<PermGroup> {
        PermGroup::with_cap(self.degree(), generators, self.enum_cap())
    }

    /// Same group with a different enumeration cap.
    pub fn set_enum_cap(&self, cap: usize) -> PermGroup {
        PermGroup::with_cap(self.degree(), self.generators().to_vec(), cap)
            .expect("generators already validated")
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.0.generators
    }

    pub fn order(&self) -> u128 {
        self.0.order
    }

    pub fn enum_cap(&self) -> usize {
        self.0.enum_cap
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree())
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn base(&self) -> &[usize] {
        self.0.chain.base()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        self.0.chain.strong_generators()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.0.chain.transversal_sizes()
    }

    /// Membership by sifting.
    pub fn contains(&self, g: &Permutation) -> bool {
        self.0.chain.contains(g)
    }

    pub fn require_member(&self, g: &Permutation) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::NotMember(g.to_cycle_string()))
        }
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree() == other.degree() && self.generators().iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Conjugates of the generators by the ambient generators stay inside.
    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        self.is_subgroup_of(ambient)
            && ambient
                .generators()
                .iter()
                .all(|g| self.generators().iter().all(|h| self.contains(&h.conj(g))))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    fn check_cap(&self) -> Result<()> {
        if self.order() > self.enum_cap() as u128 {
            return Err(Error::EnumerationCap {
                order: self.order(),
                cap: self.enum_cap(),
            });
        }
        Ok(())
    }

    /// Element table, built on first use.
    pub fn table(&self) -> Result<&ElementTable> {
        self.check_cap()?;
        Ok(self.0.elements.get_or_init(|| self.bfs_elements()))
    }

    pub fn enumerate(&self) -> Result<&[Permutation]> {
        Ok(self.table()?.elements())
    }

    pub fn index_of(&self, g: &Permutation) -> Result<Option<usize>> {
        Ok(self.table()?.index_of(g))
    }

    fn bfs_elements(&self) -> ElementTable {
        let id = self.identity();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::with_capacity(self.order() as usize);
        index.insert(id, 0);
        let mut head = 0;
        while head < elements.len() {
            for s in self.generators() {
                let next = elements[head].mul(s);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
            head += 1;
        }
        debug_assert_eq!(elements.len() as u128, self.order());
        ElementTable { elements, index }
    }

    /// Orbits of the element table under conjugation by the generators.
    pub fn conjugacy_classes(&self) -> Result<&ClassData> {
        let table = self.table()?;
        Ok(self.0.classes.get_or_init(|| {
            let n = table.len();
            let gens: Vec<(Permutation, Permutation)> = self
                .generators()
                .iter()
                .map(|g| (g.inv(), g.clone()))
                .collect();
            let mut class_of = vec![usize::MAX; n];
            let mut members = Vec::new();
            for start in 0..n {
                if class_of[start] != usize::MAX {
                    continue;
                }
                let c = members.len();
                class_of[start] = c;
                let mut orbit = vec![start];
                let mut head = 0;
                while head < orbit.len() {
                    let x = &table.elements[orbit[head]];
                    head += 1;
                    for (gi, g) in &gens {
                        let y = gi.mul(x).mul(g);
                        let j = table.index[&y];
                        if class_of[j] == usize::MAX {
                            class_of[j] = c;
                            orbit.push(j);
                        }
                    }
                }
                orbit.sort_unstable();
                members.push(orbit);
            }
            let order = self.order();
            let class_sizes: Vec<u128> = members.iter().map(|m| m.len() as u128).collect();
            ClassData {
                class_reps: members.iter().map(|m| table.elements[m[0]].clone()).collect(),
                centralizer_orders: class_sizes.iter().map(|s| order / s).collect(),
                class_sizes,
                class_of,
                members,
            }
        }))
    }

    /// Number of conjugacy classes.
    pub fn class_number(&self) -> Result<usize> {
        Ok(self.conjugacy_classes()?.len())
    }

    /// Counts the elements commuting with `x`.
    pub fn centralizer_order(&self, x: &Permutation) -> Result<u128> {
        self.require_member(x)?;
        let elements = self.enumerate()?;
        Ok(elements.iter().filter(|g| g.commutes_with(x)).count() as u128)
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<PermGroup> {
        for s in seeds {
            self.require_member(s)?;
        }
        let mut gens: Vec<Permutation> = Vec::new();
        for s in seeds {
            if !s.is_identity() && !gens.contains(s) {
                gens.push(s.clone());
            }
        }
        let mut closure = self.subgroup(gens.clone())?;
        let mut next = 0;
        while next < gens.len() {
            let h = gens[next].clone();
            next += 1;
            for g in self.generators() {
                let c = h.conj(g);
                if !closure.contains(&c) {
                    gens.push(c);
                    closure = self.subgroup(gens.clone())?;
                }
            }
        }
        Ok(closure)
    }

    /// Normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        let gens = self.generators();
        let mut comms = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let c = Permutation::commutator(a, b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// Elements whose normal closure is a p-group generate `F(G)`.
    pub fn fitting_subgroup(&self) -> Result<PermGroup> {
        let classes = self.conjugacy_classes()?;
        let mut seeds = Vec::new();
        for rep in &classes.class_reps {
            if rep.is_identity() {
                continue;
            }
            let ncl = self.normal_closure(std::slice::from_ref(rep))?;
            if is_prime_power(ncl.order()) {
                seeds.push(rep.clone());
            }
        }
        self.normal_closure(&seeds)
    }

    pub fn center(&self) -> Result<PermGroup> {
        let classes = self.conjugacy_classes()?;
        let central: Vec<Permutation> = classes
            .class_reps
            .iter()
            .zip(&classes.class_sizes)
            .filter(|(r, &s)| s == 1 && !r.is_identity())
            .map(|(r, _)| r.clone())
            .collect();
        self.subgroup(central)
    }

    /// `true` when `G` has no normal subgroups besides 1 and itself.
    pub fn is_simple(&self) -> Result<bool> {
        if self.is_trivial() {
            return Ok(false);
        }
        let classes = self.conjugacy_classes()?;
        for rep in &classes.class_reps {
            if !rep.is_identity() && self.normal_closure(std::slice::from_ref(rep))?.order() != self.order() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Action of `G` on the right cosets of the normal subgroup `n`.
    pub fn quotient(&self, n: &PermGroup) -> Result<Quotient> {
        Quotient::new(self, n)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(order {}, degree {}, gens {:?})", self.order(), self.degree(), self.generators())
    }
}

pub fn is_prime_power(n: u128) -> bool {
    match smallest_prime_factor(n) {
        None => false,
        Some(p) => {
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            m == 1
        }
    }
}

/// A right coset `N * rep`.
#[derive(Debug, Clone)]
pub struct Coset {
    pub subgroup: PermGroup,
    pub rep: Permutation,
}

impl Coset {
    pub fn new(subgroup: PermGroup, rep: Permutation) -> Self {
        Coset { subgroup, rep }
    }

    pub fn len(&self) -> u128 {
        self.subgroup.order()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `n * rep` for `n` in enumeration order of the subgroup.
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        Ok(self.subgroup.enumerate()?.iter().map(|n| n.mul(&self.rep)).collect())
    }
}

/// `G / N` as the permutation action of `G` on the right cosets of `N`.
///
/// Point `i` of the image group is the `i`-th coset in order of first
/// appearance in the enumeration of `G`; point 0 is `N` itself. When `N` is
/// trivial the image is `G` itself.
pub struct Quotient {
    ambient: PermGroup,
    kernel: PermGroup,
    image: PermGroup,
    /// Coset number of each element of `G`, by enumeration index.
    coset_of: Vec<usize>,
    /// Enumeration index of the first element of each coset.
    coset_reps: Vec<usize>,
    trivial_kernel: bool,
}

impl Quotient {
    fn new(g: &PermGroup, n: &PermGroup) -> Result<Quotient> {
        if !n.is_normal_in(g) {
            return Err(Error::NotNormal(format!("{n:?} in {g:?}")));
        }
        let table = g.table()?;
        if n.is_trivial() {
            return Ok(Quotient {
                ambient: g.clone(),
                kernel: n.clone(),
                image: g.clone(),
                coset_of: (0..table.len()).collect(),
                coset_reps: (0..table.len()).collect(),
                trivial_kernel: true,
            });
        }
        let n_elems = n.enumerate()?;
        let mut coset_of = vec![usize::MAX; table.len()];
        let mut coset_reps = Vec::new();
        for i in 0..table.len() {
            if coset_of[i] != usize::MAX {
                continue;
            }
            let c = coset_reps.len();
            coset_reps.push(i);
            let x = &table.elements[i];
            for m in n_elems {
                let j = table.index[&m.mul(x)];
                coset_of[j] = c;
            }
        }
        let degree = coset_reps.len();
        let mut images = Vec::with_capacity(g.generators().len());
        for s in g.generators() {
            let img: Vec<usize> = coset_reps
                .iter()
                .map(|&r| coset_of[table.index[&table.elements[r].mul(s)]])
                .collect();
            images.push(Permutation::new(img)?);
        }
        let image = PermGroup::with_cap(degree, images, g.enum_cap())?;
        Ok(Quotient {
            ambient: g.clone(),
            kernel: n.clone(),
            image,
            coset_of,
            coset_reps,
            trivial_kernel: false,
        })
    }

    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn kernel(&self) -> &PermGroup {
        &self.kernel
    }

    /// The image group `G/N`.
    pub fn group(&self) -> &PermGroup {
        &self.image
    }

    pub fn coset_table(&self) -> &[usize] {
        &self.coset_of
    }

    pub fn index(&self) -> usize {
        self.coset_reps.len()
    }

    /// Image of the element with enumeration index `i`.
    pub fn image_of_index(&self, i: usize) -> Permutation {
        let table = self.ambient.table().expect("enumerated at construction");
        if self.trivial_kernel {
            return table.elements[i].clone();
        }
        let x = &table.elements[i];
        let img: Vec<usize> = self
            .coset_reps
            .iter()
            .map(|&r| self.coset_of[table.index[&table.elements[r].mul(x)]])
            .collect();
        Permutation::new(img).expect("coset action is a permutation")
    }

    pub fn image_of(&self, g: &Permutation) -> Result<Permutation> {
        let i = self
            .ambient
            .index_of(g)?
            .ok_or_else(|| Error::NotMember(g.to_cycle_string()))?;
        Ok(self.image_of_index(i))
    }

    /// Some element of `G` mapping to `q`.
    pub fn lift(&self, q: &Permutation) -> Permutation {
        let table = self.ambient.table().expect("enumerated at construction");
        if self.trivial_kernel {
            return q.clone();
        }
        table.elements[self.coset_reps[q.image(0)]].clone()
    }

    /// Full preimage of a subgroup of the image.
    pub fn preimage(&self, sub: &PermGroup) -> Result<PermGroup> {
        let mut gens: Vec<Permutation> = self.kernel.generators().to_vec();
        gens.extend(sub.generators().iter().map(|q| self.lift(q)));
        self.ambient.subgroup(gens)
    }

    /// Image of a subgroup of `G`.
    pub fn image_subgroup(&self, sub: &PermGroup) -> Result<PermGroup> {
        let gens = sub
            .generators()
            .iter()
            .map(|g| self.image_of(g))
            .collect::<Result<Vec<_>>>()?;
        self.image.subgroup(gens)
    }
}
