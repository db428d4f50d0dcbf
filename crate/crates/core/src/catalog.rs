//! Deterministic witness groups and modules, with their expected outcomes.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chief::{self, ChiefSeries};
use crate::error::{Error, Result};
use crate::gf::{is_prime, smallest_prime_factor, GaloisField};
use crate::matrix::Matrix;
use crate::metrics::{self, CheckResult, Status, SCOTT_SEED, SCOTT_TRIALS};
use crate::module::{MeataxeConfig, Representation};
use crate::perm::{PermGroup, Permutation};

/// Stock entry ids, in sweep order.
pub const SWEEP_IDS: &[&str] = &[
    "cyclic_2",
    "cyclic_3",
    "cyclic_5",
    "elem_abelian_2",
    "elem_abelian_3",
    "dihedral_4",
    "dihedral_6",
    "symmetric_3",
    "symmetric_4",
    "symmetric_5",
    "alternating_4",
    "alternating_5",
    "alternating_6",
    "quaternion",
    "s3xc2",
    "sl2_4",
    "sl2_8",
    "extraspecial_3_1",
    "extraspecial_3_2",
    "a5_wreath_c2",
];

/// Check families selectable from the command line.
pub const CHECK_FAMILIES: &[(&str, &[&str])] = &[
    ("t1", &["t1"]),
    ("cor1", &["cor1"]),
    ("t2", &["t2", "t2-amgm", "coset-classes", "coset-classes-km", "km-041"]),
    ("t3", &["t3", "cor2", "t3-pointwise"]),
    ("cor2", &["cor2"]),
    ("bfc", &["t4", "t5", "t6", "cor3", "cor6"]),
    ("gen", &["gen"]),
    ("scott", &["scott"]),
    ("spectrum", &["sl2-spectrum"]),
];

/// Expands family names into check ids; unknown names are taken as ids.
pub fn expand_checks(names: &[String]) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for name in names {
        match CHECK_FAMILIES.iter().find(|(f, _)| f == name) {
            Some((_, ids)) => out.extend(ids.iter().map(|s| s.to_string())),
            None => {
                out.insert(name.clone());
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub check_id: String,
    pub outcome: Status,
    /// `Some(true)`: every result must report equality.
    pub equality: Option<bool>,
}

impl Expected {
    fn pass(check_id: &str) -> Self {
        Expected {
            check_id: check_id.into(),
            outcome: Status::Pass,
            equality: None,
        }
    }
}

#[derive(Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub family: String,
    pub params: BTreeMap<String, u64>,
    pub group: PermGroup,
    pub rep: Option<Arc<Representation>>,
    pub designated_normal: Option<PermGroup>,
    pub expected: Vec<Expected>,
    /// Run the generation search with `N` = the designated normal subgroup
    /// and this coset generator.
    pub generation: Option<Permutation>,
}

impl std::fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CatalogEntry")
            .field("id", &self.id)
            .field("order", &self.group.order())
            .field("dim", &self.rep.as_ref().map(|r| r.dim()))
            .finish()
    }
}

fn param(params: &BTreeMap<String, u64>, key: &str) -> Result<u64> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| Error::CatalogParams(format!("missing parameter `{key}`")))
}

fn params(pairs: &[(&str, u64)]) -> BTreeMap<String, u64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// `GF(q)` for a prime power `q`.
pub fn field_of_order(q: u64) -> Result<GaloisField> {
    let p = smallest_prime_factor(q as u128).ok_or_else(|| Error::CatalogParams(format!("q = {q}")))? as u64;
    let mut k = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(Error::CatalogParams(format!("{q} is not a prime power")));
    }
    GaloisField::new(p, k)
}

fn cycle(points: impl IntoIterator<Item = usize>) -> String {
    let pts: Vec<String> = points.into_iter().map(|i| i.to_string()).collect();
    format!("({})", pts.join(" "))
}

fn perm(s: &str, degree: usize) -> Result<Permutation> {
    Permutation::from_cycles(s, degree)
}

fn require_root(field: &GaloisField, n: u64) -> Result<u32> {
    field
        .root_of_unity(n)
        .ok_or_else(|| Error::CatalogParams(format!("{field:?} has no primitive {n}-th root of unity")))
}

/// Zero-sum module on each block of a block system: basis `e_j - e_last`
/// per block. `g` must permute the blocks.
fn block_deleted_matrix(field: &GaloisField, blocks: &[Vec<usize>], g: &Permutation) -> Result<Matrix> {
    let mut coord: HashMap<usize, usize> = HashMap::new();
    let mut last_of: HashMap<usize, usize> = HashMap::new();
    let mut basis = Vec::new();
    for b in blocks {
        let last = *b.last().expect("nonempty block");
        for &pt in b {
            last_of.insert(pt, last);
        }
        for &pt in &b[..b.len() - 1] {
            coord.insert(pt, basis.len());
            basis.push((pt, last));
        }
    }
    let dim = basis.len();
    let mut m = Matrix::zero(field, dim, dim);
    let minus = field.from_int(-1);
    for (row, &(a, b)) in basis.iter().enumerate() {
        let (ia, ib) = (g.image(a), g.image(b));
        if last_of[&ia] != last_of[&ib] {
            return Err(Error::CatalogParams("permutation does not preserve the blocks".into()));
        }
        // e_ia - e_ib = (e_ia - e_last) - (e_ib - e_last)
        if let Some(&c) = coord.get(&ia) {
            m.set(row, c, field.add(m.get(row, c), 1));
        }
        if let Some(&c) = coord.get(&ib) {
            m.set(row, c, field.add(m.get(row, c), minus));
        }
    }
    Ok(m)
}

fn deleted_rep(group: &PermGroup, field: &GaloisField, blocks: &[Vec<usize>]) -> Result<Representation> {
    let images = group
        .generators()
        .iter()
        .map(|g| block_deleted_matrix(field, blocks, g))
        .collect::<Result<Vec<_>>>()?;
    Representation::new(group.clone(), field.clone(), images)
}

/// The regular permutation model of a finite matrix group, with the
/// generators mapped back to their matrices.
pub fn regular_model(gens: &[Matrix]) -> Result<(PermGroup, Vec<Matrix>)> {
    let first = gens.first().ok_or_else(|| Error::CatalogParams("no generators".into()))?;
    let field = first.field().clone();
    let id = Matrix::identity(&field, first.rows());
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut elems = vec![id.clone()];
    index.insert(id.codes().to_vec(), 0);
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head].clone();
        head += 1;
        for g in gens {
            let y = x.mul(g)?;
            if !index.contains_key(y.codes()) {
                if elems.len() >= 100_000 {
                    return Err(Error::Cap("matrix group larger than 100000".into()));
                }
                index.insert(y.codes().to_vec(), elems.len());
                elems.push(y);
            }
        }
    }
    let perms = gens
        .iter()
        .map(|g| {
            let img: Vec<usize> = elems
                .iter()
                .map(|x| index[x.mul(g).expect("square").codes()])
                .collect();
            Permutation::new(img)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((PermGroup::new(elems.len(), perms)?, gens.to_vec()))
}

/// Permutation action of a 2x2 matrix on the projective line over `field`:
/// point `a` is `[1, a]` and point `q` is `[0, 1]`; rows act on the right.
fn projective_action(field: &GaloisField, m: &Matrix) -> Result<Permutation> {
    let q = field.order() as usize;
    let normalize = |x: u32, y: u32| -> usize {
        if x == 0 {
            q
        } else {
            field.mul(y, field.inv(x).expect("nonzero")) as usize
        }
    };
    let img: Vec<usize> = (0..=q)
        .map(|pt| {
            let (x, y) = if pt == q { (0, 1) } else { (1, pt as u32) };
            let nx = field.add(field.mul(x, m.get(0, 0)), field.mul(y, m.get(1, 0)));
            let ny = field.add(field.mul(x, m.get(0, 1)), field.mul(y, m.get(1, 1)));
            normalize(nx, ny)
        })
        .collect();
    Permutation::new(img)
}

struct Built {
    group: PermGroup,
    rep: Option<Representation>,
    normal: Option<PermGroup>,
    equality: bool,
    generation: Option<Permutation>,
}

fn build_cyclic(p: u64, q: u64) -> Result<Built> {
    if !is_prime(p) {
        return Err(Error::CatalogParams(format!("p = {p} is not prime")));
    }
    let field = field_of_order(q)?;
    let omega = require_root(&field, p)?;
    let n = p as usize;
    let group = PermGroup::new(n, vec![perm(&cycle(0..n), n)?])?;
    let m = Matrix::from_codes(&field, 1, 1, vec![omega])?;
    let rep = Representation::new(group.clone(), field, vec![m])?;
    Ok(Built {
        normal: Some(group.clone()),
        group,
        rep: Some(rep),
        equality: true,
        generation: None,
    })
}

fn build_elem_abelian(p: u64, q: u64) -> Result<Built> {
    if !is_prime(p) {
        return Err(Error::CatalogParams(format!("p = {p} is not prime")));
    }
    let field = field_of_order(q)?;
    let omega = require_root(&field, p)?;
    let n = p as usize;
    let group = PermGroup::new(2 * n, vec![perm(&cycle(0..n), 2 * n)?, perm(&cycle(n..2 * n), 2 * n)?])?;
    let chars: Vec<(u64, u64)> = (0..p).flat_map(|a| (0..p).map(move |b| (a, b))).skip(1).collect();
    let dim = chars.len();
    let mut g1 = Matrix::zero(&field, dim, dim);
    let mut g2 = Matrix::zero(&field, dim, dim);
    for (i, &(a, b)) in chars.iter().enumerate() {
        g1.set(i, i, field.pow(omega, a));
        g2.set(i, i, field.pow(omega, b));
    }
    let rep = Representation::new(group.clone(), field, vec![g1, g2])?;
    Ok(Built {
        normal: Some(group.clone()),
        group,
        rep: Some(rep),
        equality: false,
        generation: None,
    })
}

fn build_dihedral(n: u64, q: u64) -> Result<Built> {
    if n < 3 {
        return Err(Error::CatalogParams("dihedral needs n >= 3".into()));
    }
    let field = field_of_order(q)?;
    let omega = require_root(&field, n)?;
    let d = n as usize;
    let rot = perm(&cycle(0..d), d)?;
    let refl = Permutation::new((0..d).map(|i| (d - i) % d).collect())?;
    let group = PermGroup::new(d, vec![rot.clone(), refl])?;
    let mut r = Matrix::zero(&field, 2, 2);
    r.set(0, 0, omega);
    r.set(1, 1, field.inv(omega)?);
    let s = Matrix::from_ints(&field, &[vec![0, 1], vec![1, 0]])?;
    let rep = Representation::new(group.clone(), field, vec![r, s])?;
    Ok(Built {
        normal: Some(group.subgroup(vec![rot])?),
        group,
        rep: Some(rep),
        equality: false,
        generation: None,
    })
}

fn build_symmetric(n: u64, q: u64) -> Result<Built> {
    if n < 3 {
        return Err(Error::CatalogParams("symmetric needs n >= 3".into()));
    }
    let field = field_of_order(q)?;
    if n % field.p() as u64 == 0 {
        return Err(Error::CatalogParams("characteristic divides the degree".into()));
    }
    let d = n as usize;
    let group = PermGroup::new(d, vec![perm(&cycle(0..d), d)?, perm("(0 1)", d)?])?;
    let rep = deleted_rep(&group, &field, &[(0..d).collect()])?;
    let normal = if n == 4 {
        group.subgroup(vec![perm("(0 1)(2 3)", 4)?, perm("(0 2)(1 3)", 4)?])?
    } else {
        group.derived_subgroup()?
    };
    let generation = (n == 5).then(|| perm("(0 1)", d)).transpose()?;
    Ok(Built {
        normal: Some(normal),
        group,
        rep: Some(rep),
        equality: false,
        generation,
    })
}

fn build_alternating(n: u64, q: u64) -> Result<Built> {
    if n < 4 {
        return Err(Error::CatalogParams("alternating needs n >= 4".into()));
    }
    let field = field_of_order(q)?;
    if n % field.p() as u64 == 0 {
        return Err(Error::CatalogParams("characteristic divides the degree".into()));
    }
    let d = n as usize;
    let long = if d % 2 == 1 { cycle(0..d) } else { cycle(1..d) };
    let group = PermGroup::new(d, vec![perm(&long, d)?, perm("(0 1 2)", d)?])?;
    let rep = deleted_rep(&group, &field, &[(0..d).collect()])?;
    let normal = if n == 4 {
        group.subgroup(vec![perm("(0 1)(2 3)", 4)?, perm("(0 2)(1 3)", 4)?])?
    } else {
        group.clone()
    };
    let generation = (n >= 5).then(|| group.identity());
    Ok(Built {
        normal: Some(normal),
        group,
        rep: Some(rep),
        equality: false,
        generation,
    })
}

fn build_quaternion(q: u64) -> Result<Built> {
    let field = field_of_order(q)?;
    if field.p() == 2 {
        return Err(Error::CatalogParams("quaternion module needs odd characteristic".into()));
    }
    let i = Matrix::from_ints(&field, &[vec![0, -1], vec![1, 0]])?;
    // j with j^2 = -1 and ij = -ji; over GF(3) this is [[1,1],[1,-1]].
    let (a, b) = find_sum_of_squares(&field)?;
    let j = Matrix::from_codes(&field, 2, 2, vec![a, b, b, field.neg(a)])?;
    let (group, images) = regular_model(&[i, j])?;
    if group.order() != 8 {
        return Err(Error::CatalogParams("quaternion construction failed".into()));
    }
    let rep = Representation::new(group.clone(), field, images)?;
    Ok(Built {
        normal: Some(group.center()?),
        group,
        rep: Some(rep),
        equality: false,
        generation: None,
    })
}

/// `a, b` with `a^2 + b^2 = -1`, least in code order.
fn find_sum_of_squares(field: &GaloisField) -> Result<(u32, u32)> {
    let target = field.from_int(-1);
    for a in 0..field.order() {
        for b in 0..field.order() {
            if field.add(field.mul(a, a), field.mul(b, b)) == target {
                return Ok((a, b));
            }
        }
    }
    Err(Error::CatalogParams("no solution of a^2 + b^2 = -1".into()))
}

fn build_s3xc2(q: u64) -> Result<Built> {
    let field = field_of_order(q)?;
    if field.p() <= 3 {
        return Err(Error::CatalogParams("S3 x C2 module needs characteristic > 3".into()));
    }
    let group = PermGroup::new(5, vec![perm("(0 1 2)", 5)?, perm("(0 1)", 5)?, perm("(3 4)", 5)?])?;
    let c = Matrix::from_ints(&field, &[vec![-1, 1], vec![-1, 0]])?;
    let t = Matrix::from_ints(&field, &[vec![0, 1], vec![1, 0]])?;
    let z = Matrix::identity(&field, 2).scale(field.from_int(-1));
    let rep = Representation::new(group.clone(), field, vec![c, t, z])?;
    Ok(Built {
        normal: Some(group.subgroup(vec![perm("(3 4)", 5)?])?),
        group,
        rep: Some(rep),
        equality: false,
        generation: None,
    })
}

fn build_sl2(q: u64) -> Result<Built> {
    let field = field_of_order(q)?;
    if field.p() != 2 || q <= 2 {
        return Err(Error::CatalogParams("sl2_q needs q = 2^e > 2".into()));
    }
    let w = field.primitive_element();
    let u = Matrix::from_ints(&field, &[vec![1, 1], vec![0, 1]])?;
    let mut d = Matrix::zero(&field, 2, 2);
    d.set(0, 0, w);
    d.set(1, 1, field.inv(w)?);
    let s = Matrix::from_ints(&field, &[vec![0, 1], vec![1, 0]])?;
    let mats = vec![u, d, s];
    let perms = mats
        .iter()
        .map(|m| projective_action(&field, m))
        .collect::<Result<Vec<_>>>()?;
    let group = PermGroup::new(q as usize + 1, perms)?;
    let expected = (q as u128) * (q as u128 * q as u128 - 1);
    if group.order() != expected {
        return Err(Error::CatalogParams(format!("SL(2,{q}) model has order {}", group.order())));
    }
    let rep = Representation::new(group.clone(), field, mats)?;
    Ok(Built {
        normal: Some(group.clone()),
        group,
        rep: Some(rep),
        equality: false,
        generation: None,
    })
}

/// Heisenberg construction on `GF(q)^(p^a)`: coordinate shifts `X_k` and
/// diagonal `Z_k = diag(omega^(x_k))`, realized by the regular action.
fn build_extraspecial(p: u64, a: u64, q: u64) -> Result<Built> {
    if !is_prime(p) || p == 2 {
        return Err(Error::CatalogParams("extraspecial needs an odd prime p".into()));
    }
    if !(1..=2).contains(&a) {
        return Err(Error::CatalogParams("extraspecial supports a in {1, 2}".into()));
    }
    let field = field_of_order(q)?;
    if (q - 1) % p != 0 {
        return Err(Error::CatalogParams(format!("q = {q} is not 1 mod {p}")));
    }
    let omega = require_root(&field, p)?;
    let pu = p as usize;
    let dim = pu.pow(a as u32);
    // Basis index x = sum x_k p^k.
    let digit = |x: usize, k: usize| (x / pu.pow(k as u32)) % pu;
    let mut gens = Vec::new();
    for k in 0..a as usize {
        let mut shift = Matrix::zero(&field, dim, dim);
        for x in 0..dim {
            let y = x - digit(x, k) * pu.pow(k as u32) + ((digit(x, k) + 1) % pu) * pu.pow(k as u32);
            shift.set(x, y, 1);
        }
        let mut diag = Matrix::zero(&field, dim, dim);
        for x in 0..dim {
            diag.set(x, x, field.pow(omega, digit(x, k) as u64));
        }
        gens.push(shift);
        gens.push(diag);
    }
    let (group, images) = regular_model(&gens)?;
    let order = (p as u128).pow(1 + 2 * a as u32);
    if group.order() != order {
        return Err(Error::CatalogParams(format!("Heisenberg group has order {}", group.order())));
    }
    let rep = Representation::new(group.clone(), field, images)?;
    Ok(Built {
        normal: Some(group.center()?),
        group,
        rep: Some(rep),
        equality: a == 1,
        generation: None,
    })
}

fn build_a5_wreath(q: u64) -> Result<Built> {
    let field = field_of_order(q)?;
    if field.p() == 5 {
        return Err(Error::CatalogParams("characteristic divides the block size".into()));
    }
    let group = PermGroup::new(
        10,
        vec![
            perm("(0 1 2 3 4)", 10)?,
            perm("(0 1 2)", 10)?,
            perm("(0 5)(1 6)(2 7)(3 8)(4 9)", 10)?,
        ],
    )?;
    let blocks = [(0..5).collect::<Vec<_>>(), (5..10).collect()];
    let rep = deleted_rep(&group, &field, &blocks)?;
    let base = group.subgroup(vec![
        perm("(0 1 2 3 4)", 10)?,
        perm("(0 1 2)", 10)?,
        perm("(5 6 7 8 9)", 10)?,
        perm("(5 6 7)", 10)?,
    ])?;
    Ok(Built {
        normal: Some(base),
        group,
        rep: Some(rep),
        equality: false,
        generation: None,
    })
}

/// Builds a family member. Families: `cyclic_p {p,q}`, `elem_abelian {p,q}`,
/// `dihedral {n,q}`, `symmetric {n,q}`, `alternating {n,q}`,
/// `quaternion {q}`, `s3xc2 {q}`, `sl2_q {q}`, `extraspecial {p,a,q}`,
/// `a5_wreath {q}`. A stock id from [`SWEEP_IDS`] may be passed with empty
/// params.
pub fn build_entry(id: &str, params_in: &BTreeMap<String, u64>) -> Result<CatalogEntry> {
    let (family, params) = if params_in.is_empty() {
        stock_params(id)?
    } else {
        (id.to_string(), params_in.clone())
    };
    let p = |k: &str| param(&params, k);
    let built = match family.as_str() {
        "cyclic_p" => build_cyclic(p("p")?, p("q")?)?,
        "elem_abelian" => build_elem_abelian(p("p")?, p("q")?)?,
        "dihedral" => build_dihedral(p("n")?, p("q")?)?,
        "symmetric" => build_symmetric(p("n")?, p("q")?)?,
        "alternating" => build_alternating(p("n")?, p("q")?)?,
        "quaternion" => build_quaternion(p("q")?)?,
        "s3xc2" => build_s3xc2(p("q")?)?,
        "sl2_q" => build_sl2(p("q")?)?,
        "extraspecial" => build_extraspecial(p("p")?, p("a")?, p("q")?)?,
        "a5_wreath" => build_a5_wreath(p("q")?)?,
        _ => return Err(Error::UnknownEntry(id.to_string())),
    };
    let entry_id = if params_in.is_empty() {
        id.to_string()
    } else {
        let ps: Vec<String> = params.iter().map(|(k, v)| format!("{k}{v}")).collect();
        format!("{family}[{}]", ps.join(","))
    };
    finish(entry_id, family, params, built)
}

fn stock_params(id: &str) -> Result<(String, BTreeMap<String, u64>)> {
    let (family, ps): (&str, Vec<(&str, u64)>) = match id {
        "cyclic_2" => ("cyclic_p", vec![("p", 2), ("q", 3)]),
        "cyclic_3" => ("cyclic_p", vec![("p", 3), ("q", 7)]),
        "cyclic_5" => ("cyclic_p", vec![("p", 5), ("q", 11)]),
        "elem_abelian_2" => ("elem_abelian", vec![("p", 2), ("q", 3)]),
        "elem_abelian_3" => ("elem_abelian", vec![("p", 3), ("q", 7)]),
        "dihedral_4" => ("dihedral", vec![("n", 4), ("q", 5)]),
        "dihedral_6" => ("dihedral", vec![("n", 6), ("q", 7)]),
        "symmetric_3" => ("symmetric", vec![("n", 3), ("q", 7)]),
        "symmetric_4" => ("symmetric", vec![("n", 4), ("q", 5)]),
        "symmetric_5" => ("symmetric", vec![("n", 5), ("q", 7)]),
        "alternating_4" => ("alternating", vec![("n", 4), ("q", 5)]),
        "alternating_5" => ("alternating", vec![("n", 5), ("q", 7)]),
        "alternating_6" => ("alternating", vec![("n", 6), ("q", 7)]),
        "quaternion" => ("quaternion", vec![("q", 3)]),
        "s3xc2" => ("s3xc2", vec![("q", 7)]),
        "sl2_4" => ("sl2_q", vec![("q", 4)]),
        "sl2_8" => ("sl2_q", vec![("q", 8)]),
        "extraspecial_3_1" => ("extraspecial", vec![("p", 3), ("a", 1), ("q", 7)]),
        "extraspecial_3_2" => ("extraspecial", vec![("p", 3), ("a", 2), ("q", 7)]),
        "a5_wreath_c2" => ("a5_wreath", vec![("q", 7)]),
        _ => return Err(Error::UnknownEntry(id.to_string())),
    };
    Ok((family.to_string(), params(&ps)))
}

fn finish(id: String, family: String, params: BTreeMap<String, u64>, b: Built) -> Result<CatalogEntry> {
    let config = MeataxeConfig::default();
    if let (Some(rep), Some(n)) = (&b.rep, &b.normal) {
        let trivial = rep.count_trivial_factors(n, &config)?;
        if trivial != 0 {
            return Err(Error::CatalogParams(format!(
                "{id}: designated normal subgroup has {trivial} trivial composition factors"
            )));
        }
    }
    let g = &b.group;
    let mut expected = vec![Expected::pass("t3"), Expected::pass("cor2"), Expected::pass("t3-pointwise")];
    if !g.is_abelian() {
        expected.extend(["t4", "t5", "t6", "cor3", "cor6"].map(Expected::pass));
    }
    if b.rep.is_some() {
        expected.push(Expected {
            check_id: "t1".into(),
            outcome: Status::Pass,
            equality: b.equality.then_some(true),
        });
        expected.push(Expected::pass("cor1"));
        expected.push(Expected::pass("scott"));
    }
    if b.generation.is_some() {
        expected.push(Expected::pass("gen"));
    }
    if family == "sl2_q" {
        expected.push(Expected::pass("sl2-spectrum"));
    }
    Ok(CatalogEntry {
        id,
        family,
        params,
        group: b.group,
        rep: b.rep.map(Arc::new),
        designated_normal: b.normal,
        expected,
        generation: b.generation,
    })
}

/// Every stock entry, in [`SWEEP_IDS`] order.
pub fn catalog_sweep() -> Result<Vec<CatalogEntry>> {
    SWEEP_IDS.iter().map(|id| build_entry(id, &BTreeMap::new())).collect()
}

/// Orders of the centralizers of non-identity elements.
pub fn centralizer_spectrum(g: &PermGroup) -> Result<BTreeSet<u128>> {
    let classes = g.conjugacy_classes()?;
    Ok(classes
        .class_reps
        .iter()
        .zip(&classes.centralizer_orders)
        .filter(|(r, _)| !r.is_identity())
        .map(|(_, &c)| c)
        .collect())
}

/// Normal subgroups tried for the `t1` coset bound: the designated one, `G`, `G'`,
/// the minimal normal subgroups and `F(G)`, without repeats.
pub fn normal_candidates(entry: &CatalogEntry) -> Result<Vec<PermGroup>> {
    let g = &entry.group;
    let mut cands: Vec<PermGroup> = entry.designated_normal.iter().cloned().collect();
    cands.push(g.clone());
    cands.push(g.derived_subgroup()?);
    if !g.is_trivial() {
        cands.extend(chief::minimal_normal_subgroups(g)?);
    }
    cands.push(g.fitting_subgroup()?);
    let mut out: Vec<PermGroup> = Vec::new();
    for c in cands {
        if !c.is_trivial() && !out.iter().any(|o| o.same_group(&c)) {
            out.push(c);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub meataxe: MeataxeConfig,
    pub scott_trials: usize,
    pub scott_seed: u64,
    /// Check ids to run; `None` runs everything.
    pub checks: Option<BTreeSet<String>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            meataxe: MeataxeConfig::default(),
            scott_trials: SCOTT_TRIALS,
            scott_seed: SCOTT_SEED,
            checks: None,
        }
    }
}

impl VerifyOptions {
    fn wants(&self, ids: &[&str]) -> bool {
        match &self.checks {
            None => true,
            Some(set) => ids.iter().any(|id| set.contains(*id)),
        }
    }
}

/// Runs every selected checker on an entry. Results are prefixed with the
/// entry id and sorted.
pub fn verify_entry(entry: &CatalogEntry, opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let g = &entry.group;
    let mut out: Vec<CheckResult> = Vec::new();
    let series: Option<ChiefSeries> = if opts.wants(&["t2", "t2-amgm", "coset-classes", "coset-classes-km", "km-041", "t3", "cor2", "t3-pointwise", "t4", "t5", "t6", "cor3", "cor6"]) && !g.is_trivial() {
        Some(chief::chief_series(g)?)
    } else {
        None
    };
    if let Some(series) = &series {
        if opts.wants(&["t3", "cor2", "t3-pointwise"]) {
            out.extend(metrics::check_t3_cor2_with(g, series)?);
        }
        if !g.is_abelian() && opts.wants(&["t4", "t5", "t6", "cor3", "cor6"]) {
            out.extend(metrics::check_bfc_with(g, None, series)?);
        }
        if opts.wants(&["t2", "t2-amgm", "coset-classes", "coset-classes-km", "km-041"]) {
            out.extend(metrics::check_nonabelian_factors(series)?);
        }
    }
    if let (Some(x), Some(n), true) = (&entry.generation, &entry.designated_normal, opts.wants(&["gen"])) {
        out.push(metrics::search_generation(g, n, x)?);
    }
    if entry.family == "sl2_q" && opts.wants(&["sl2-spectrum"]) {
        let q = entry.params["q"] as u128;
        let got = centralizer_spectrum(g)?;
        let want: BTreeSet<u128> = [q - 1, q, q + 1].into_iter().collect();
        out.push(CheckResult::identity(
            "sl2-spectrum",
            format!("|G|={}", g.order()),
            format!("{got:?}"),
            format!("{want:?}"),
        ));
    }
    if let Some(rep) = &entry.rep {
        if opts.wants(&["t1", "cor1"]) {
            for n in normal_candidates(entry)? {
                let designated = entry.designated_normal.as_ref().is_some_and(|d| d.same_group(&n));
                if !designated && rep.count_trivial_factors(&n, &opts.meataxe)? > 0 {
                    continue;
                }
                if opts.wants(&["t1"]) {
                    out.extend(metrics::check_t1_cosets(rep, &n, &opts.meataxe)?);
                }
                if opts.wants(&["cor1"]) {
                    for x in metrics::right_coset_reps(g, &n)? {
                        out.push(metrics::check_cor1(rep, &n, &x, &opts.meataxe)?);
                    }
                }
            }
        }
        if opts.wants(&["scott"]) {
            out.push(metrics::scott_harness(rep, opts.scott_trials, opts.scott_seed)?);
        }
    }
    let mut out: Vec<CheckResult> = out
        .into_iter()
        .filter(|r| opts.checks.as_ref().map_or(true, |s| s.contains(&r.check_id)))
        .map(|r| r.prefixed(&entry.id))
        .collect();
    metrics::sort_results(&mut out);
    Ok(out)
}

/// Expected records not reproduced by `results`.
pub fn expected_mismatches(entry: &CatalogEntry, results: &[CheckResult]) -> Vec<String> {
    let mut bad = Vec::new();
    for e in &entry.expected {
        let hits: Vec<&CheckResult> = results.iter().filter(|r| r.check_id == e.check_id).collect();
        if hits.is_empty() {
            bad.push(format!("{}: no `{}` result", entry.id, e.check_id));
        }
        for r in hits {
            if r.status != e.outcome {
                bad.push(format!("{}: `{}` is {} on {}", entry.id, e.check_id, r.status, r.instance));
            }
            if let Some(eq) = e.equality {
                if r.equality != Some(eq) {
                    bad.push(format!("{}: `{}` equality {:?} on {}", entry.id, e.check_id, r.equality, r.instance));
                }
            }
        }
    }
    bad
}
