//! Centralizer means and the inequality checkers.
//!
//! Every checker returns [`CheckResult`]s. Comparisons are exact whenever the
//! inequality is polynomial in integer data; irrational exponents fall back
//! to a log-domain comparison with a relative tolerance of `1e-9`, where a
//! margin inside the tolerance band is reported as inconclusive.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chief::{self, ChiefSeries};
use crate::error::{Error, Result};
use crate::gf::smallest_prime_factor;
use crate::module::{subspaces_of, MeataxeConfig, Representation};
use crate::perm::{Coset, PermGroup, Permutation};

/// Relative tolerance for log-domain comparisons.
pub const LOG_TOLERANCE: f64 = 1e-9;

/// Bit budget for exact big-integer confirmation.
pub const EXACT_BIT_BUDGET: f64 = 8e6;

/// Exact products of centralizer orders are kept up to this many bits.
pub const PRODUCT_BIT_BUDGET: f64 = 1e6;

/// `t3` is confirmed exactly up to this group order.
pub const T3_EXACT_ORDER: u128 = 2000;

/// Largest minimal normal subgroup for the generation count.
pub const GENERATION_CAP: u128 = 10_000;

/// Default number of random triples per module in the Scott harness.
pub const SCOTT_TRIALS: usize = 1000;

/// Default seed for the Scott harness.
pub const SCOTT_SEED: u64 = 0x5C07_7157;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    ExactRational,
    ExactBigint,
    LogDomain,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::ExactRational => "exact-rational",
            Mode::ExactBigint => "exact-bigint",
            Mode::LogDomain => "log-domain",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Inconclusive,
    HypothesisFailed,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::HypothesisFailed => "hypothesis-failed",
        })
    }
}

/// The relation asserted between `lhs` and `rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "=")]
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Eq => "=",
        })
    }
}

impl Relation {
    fn holds(self, ord: Ordering) -> bool {
        match self {
            Relation::Le => ord != Ordering::Greater,
            Relation::Lt => ord == Ordering::Less,
            Relation::Eq => ord == Ordering::Equal,
        }
    }
}

/// One checked inequality (or identity) on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
    /// `rhs - lhs`.
    pub margin: String,
    pub mode: Mode,
    pub relation: Relation,
    pub status: Status,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equality: Option<bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub witnesses: BTreeMap<String, String>,
}

impl CheckResult {
    fn blank(check_id: &str, instance: String, mode: Mode, relation: Relation) -> Self {
        CheckResult {
            check_id: check_id.to_string(),
            instance,
            lhs: String::new(),
            rhs: String::new(),
            margin: String::new(),
            mode,
            relation,
            status: Status::Inconclusive,
            passed: false,
            equality: None,
            witnesses: BTreeMap::new(),
        }
    }

    fn set_status(&mut self, status: Status) {
        self.status = status;
        self.passed = status == Status::Pass;
    }

    pub fn hypothesis_failed(check_id: &str, instance: String, reason: impl Into<String>) -> Self {
        let mut r = Self::blank(check_id, instance, Mode::ExactRational, Relation::Le);
        r.set_status(Status::HypothesisFailed);
        r.witnesses.insert("hypothesis".into(), reason.into());
        r
    }

    pub fn exact_rational(check_id: &str, instance: String, lhs: &BigRational, rhs: &BigRational, rel: Relation) -> Self {
        let mut r = Self::blank(check_id, instance, Mode::ExactRational, rel);
        let ord = lhs.cmp(rhs);
        r.lhs = lhs.to_string();
        r.rhs = rhs.to_string();
        r.margin = (rhs - lhs).to_string();
        r.equality = Some(ord == Ordering::Equal);
        r.set_status(if rel.holds(ord) { Status::Pass } else { Status::Fail });
        r
    }

    pub fn exact_bigint(check_id: &str, instance: String, lhs: &BigUint, rhs: &BigUint, rel: Relation) -> Self {
        let mut r = Self::blank(check_id, instance, Mode::ExactBigint, rel);
        let ord = lhs.cmp(rhs);
        r.lhs = lhs.to_string();
        r.rhs = rhs.to_string();
        r.margin = (BigInt::from(rhs.clone()) - BigInt::from(lhs.clone())).to_string();
        r.equality = Some(ord == Ordering::Equal);
        r.set_status(if rel.holds(ord) { Status::Pass } else { Status::Fail });
        r
    }

    /// Compares `exp(ln_lhs)` with `exp(ln_rhs)`. When `exact` carries the
    /// ordering of an equivalent integer form, that ordering decides.
    pub fn log_domain(
        check_id: &str,
        instance: String,
        ln_lhs: f64,
        ln_rhs: f64,
        rel: Relation,
        exact: Option<Ordering>,
    ) -> Self {
        let mode = if exact.is_some() { Mode::ExactBigint } else { Mode::LogDomain };
        let mut r = Self::blank(check_id, instance, mode, rel);
        r.lhs = fmt_exp(ln_lhs);
        r.rhs = fmt_exp(ln_rhs);
        let relative = 1.0 - (ln_lhs - ln_rhs).exp();
        r.margin = if ln_lhs.max(ln_rhs) < 700.0 {
            fmt_f64(ln_rhs.exp() - ln_lhs.exp())
        } else {
            format!("{} (relative)", fmt_f64(relative))
        };
        r.witnesses.insert("relative_margin".into(), format!("{relative:.3e}"));
        let status = match exact {
            Some(ord) => {
                r.equality = Some(ord == Ordering::Equal);
                if rel.holds(ord) {
                    Status::Pass
                } else {
                    Status::Fail
                }
            }
            None if relative > LOG_TOLERANCE => Status::Pass,
            None if relative < -LOG_TOLERANCE => Status::Fail,
            None => Status::Inconclusive,
        };
        r.set_status(status);
        r
    }

    /// Passes iff the two descriptions coincide.
    pub fn identity(check_id: &str, instance: String, lhs: String, rhs: String) -> Self {
        let mut r = Self::blank(check_id, instance, Mode::ExactRational, Relation::Eq);
        let eq = lhs == rhs;
        r.lhs = lhs;
        r.rhs = rhs;
        r.margin = if eq { "0" } else { "mismatch" }.into();
        r.equality = Some(eq);
        r.set_status(if eq { Status::Pass } else { Status::Fail });
        r
    }

    pub fn witness(mut self, key: &str, value: impl ToString) -> Self {
        self.witnesses.insert(key.to_string(), value.to_string());
        self
    }

    fn lhs_text(mut self, s: impl ToString) -> Self {
        self.lhs = s.to_string();
        self
    }

    fn margin_text(mut self, s: impl ToString) -> Self {
        self.margin = s.to_string();
        self
    }

    fn rhs_text(mut self, s: impl ToString) -> Self {
        self.rhs = s.to_string();
        self
    }

    /// Prepends a label (such as a catalog id) to the instance description.
    pub fn prefixed(mut self, label: &str) -> Self {
        self.instance = format!("{label}: {}", self.instance);
        self
    }
}

fn fmt_f64(x: f64) -> String {
    if x != 0.0 && (x.abs() >= 1e12 || x.abs() < 1e-6) {
        return format!("{x:.12e}");
    }
    // About 15 significant digits.
    let decimals = (14 - x.abs().log10().floor().max(0.0) as i32).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn fmt_exp(ln: f64) -> String {
    if ln < 700.0 {
        fmt_f64(ln.exp())
    } else {
        format!("exp({})", fmt_f64(ln))
    }
}

fn big(n: u128) -> BigUint {
    BigUint::from(n)
}

fn rat(n: u128, d: u128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Natural logarithm of a big integer.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn ln_rat(x: &BigRational) -> f64 {
    let n = x.numer().magnitude();
    let d = x.denom().magnitude();
    ln_big(n) - ln_big(d)
}

fn pow(base: u128, e: u128) -> BigUint {
    Pow::pow(big(base), BigUint::from(e))
}

fn group_label(g: &PermGroup) -> String {
    format!("|G|={}", g.order())
}

fn module_label(rep: &Representation) -> String {
    format!("|G|={} V=dim {} over {:?}", rep.group().order(), rep.dim(), rep.field())
}

/// Right coset representatives of `n` in `g`, in order of first appearance.
pub fn right_coset_reps(g: &PermGroup, n: &PermGroup) -> Result<Vec<Permutation>> {
    if !n.is_subgroup_of(g) {
        return Err(Error::NotSubgroup(format!("{n:?} in {g:?}")));
    }
    let table = g.table()?;
    let n_elems = n.enumerate()?;
    let mut seen = vec![false; table.len()];
    let mut reps = Vec::new();
    for (i, x) in table.elements().iter().enumerate() {
        if seen[i] {
            continue;
        }
        reps.push(x.clone());
        for m in n_elems {
            seen[table.index_of(&m.mul(x)).expect("closed")] = true;
        }
    }
    Ok(reps)
}

// --------------------------------------------------------------------------
// t1, cor1: fixed-space dimension on cosets

struct T1Setup {
    p: u128,
    fixed_n_dim: usize,
}

fn t1_setup(rep: &Representation, n: &PermGroup, config: &MeataxeConfig) -> Result<std::result::Result<T1Setup, String>> {
    let g = rep.group();
    if !n.is_subgroup_of(g) {
        return Err(Error::NotSubgroup(format!("{n:?}")));
    }
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal(format!("{n:?}")));
    }
    let Some(p) = smallest_prime_factor(g.order()) else {
        return Ok(Err("trivial group has no prime divisor".into()));
    };
    let trivial = rep.count_trivial_factors(n, config)?;
    if trivial > 0 {
        return Ok(Err(format!("{trivial} trivial composition factors under N")));
    }
    let (fixed, _) = rep.group_subspaces(n)?;
    Ok(Ok(T1Setup {
        p,
        fixed_n_dim: fixed.dim(),
    }))
}

fn t1_result(rep: &Representation, n: &PermGroup, g: &Permutation, setup: &T1Setup) -> Result<CheckResult> {
    let avg = rep.avgdim(&Coset::new(n.clone(), g.clone()))?;
    let instance = format!("{} |N|={} coset N{}", module_label(rep), n.order(), g);
    let lhs = rat(avg.total as u128, avg.count as u128);
    let rhs = rat(rep.dim() as u128, setup.p);
    let mut r = CheckResult::exact_rational("t1", instance, &lhs, &rhs, Relation::Le)
        .witness("avgdim", avg)
        .witness("p", setup.p)
        .witness("fixed_dim_of_n", setup.fixed_n_dim);
    // No trivial composition factor forces C_V(N) = 0.
    if setup.fixed_n_dim != 0 {
        r.set_status(Status::Fail);
    }
    Ok(r)
}

/// `t1`: `avgdim(N g, V) <= dim V / p` on the coset `N g`.
pub fn check_t1(rep: &Representation, n: &PermGroup, g: &Permutation, config: &MeataxeConfig) -> Result<CheckResult> {
    rep.group().require_member(g)?;
    match t1_setup(rep, n, config)? {
        Ok(setup) => t1_result(rep, n, g, &setup),
        Err(reason) => Ok(CheckResult::hypothesis_failed(
            "t1",
            format!("{} |N|={} coset N{}", module_label(rep), n.order(), g),
            reason,
        )),
    }
}

/// `t1` on every right coset of `n`.
pub fn check_t1_cosets(rep: &Representation, n: &PermGroup, config: &MeataxeConfig) -> Result<Vec<CheckResult>> {
    match t1_setup(rep, n, config)? {
        Ok(setup) => right_coset_reps(rep.group(), n)?
            .iter()
            .map(|g| t1_result(rep, n, g, &setup))
            .collect(),
        Err(reason) => Ok(vec![CheckResult::hypothesis_failed(
            "t1",
            format!("{} |N|={}", module_label(rep), n.order()),
            reason,
        )]),
    }
}

/// `cor1`: a witness in `Nx` with `dim C_V(g) <= dim V / p` and one in
/// `N` with strict inequality.
pub fn check_cor1(rep: &Representation, n: &PermGroup, x: &Permutation, config: &MeataxeConfig) -> Result<CheckResult> {
    rep.group().require_member(x)?;
    let instance = format!("{} |N|={} coset N{}", module_label(rep), n.order(), x);
    let setup = match t1_setup(rep, n, config)? {
        Ok(s) => s,
        Err(reason) => return Ok(CheckResult::hypothesis_failed("cor1", instance, reason)),
    };
    let dim = rep.dim() as u128;
    let min_over = |coset: Coset| -> Result<(usize, Permutation)> {
        let mut best: Option<(usize, Permutation)> = None;
        for s in coset.elements()? {
            let d = rep.fixed_dim(&s)?;
            if best.as_ref().map_or(true, |(b, _)| d < *b) {
                best = Some((d, s));
            }
        }
        Ok(best.expect("cosets are nonempty"))
    };
    let (d_coset, w_coset) = min_over(Coset::new(n.clone(), x.clone()))?;
    let (d_n, w_n) = min_over(Coset::new(n.clone(), rep.group().identity()))?;
    let first = (d_coset as u128) * setup.p <= dim;
    let second = (d_n as u128) * setup.p < dim;
    let mut r = CheckResult::exact_rational(
        "cor1",
        instance,
        &rat(d_coset as u128, 1),
        &rat(dim, setup.p),
        Relation::Le,
    )
    .witness("coset_witness", &w_coset)
    .witness("coset_witness_dim", d_coset)
    .witness("strict_witness", &w_n)
    .witness("strict_witness_dim", d_n);
    if !(first && second) {
        r.set_status(Status::Fail);
    }
    Ok(r)
}

// --------------------------------------------------------------------------
// Centralizer means on chief factors

/// Centralizer orders `|C_M(s)|` over a coset `M s`.
#[derive(Debug, Clone)]
pub struct CentralizerMeans {
    pub sizes: Vec<u64>,
    pub m_order: u128,
    pub sum: BigUint,
    pub ln_geom: f64,
    /// `prod |C_M(s)|`, when it fits the bit budget.
    pub product: Option<BigUint>,
}

impl CentralizerMeans {
    pub fn count(&self) -> u64 {
        self.sizes.len() as u64
    }

    pub fn avg(&self) -> BigRational {
        BigRational::new(BigInt::from(self.sum.clone()), BigInt::from(self.count()))
    }

    pub fn geom(&self) -> f64 {
        self.ln_geom.exp()
    }

    pub fn max(&self) -> u64 {
        self.sizes.iter().copied().max().unwrap_or(1)
    }
}

/// Arithmetic and geometric means of `|C_M(s)|` over `s` in `M rep`, where
/// `M` is normal in `ambient` and acts by conjugation.
pub fn geom_avg(ambient: &PermGroup, m: &PermGroup, rep: &Permutation) -> Result<CentralizerMeans> {
    ambient.require_member(rep)?;
    if !m.is_subgroup_of(ambient) {
        return Err(Error::NotSubgroup(format!("{m:?}")));
    }
    let m_elems = m.enumerate()?;
    let coset = Coset::new(m.clone(), rep.clone()).elements()?;
    let sizes: Vec<u64> = coset
        .iter()
        .map(|s| m_elems.iter().filter(|x| x.commutes_with(s)).count() as u64)
        .collect();
    let sum: BigUint = sizes.iter().map(|&s| BigUint::from(s)).sum();
    let ln_geom = sizes.iter().map(|&s| (s as f64).ln()).sum::<f64>() / sizes.len() as f64;
    let bits = sizes.len() as f64 * (m.order() as f64).log2();
    let product = (bits <= PRODUCT_BIT_BUDGET).then(|| sizes.iter().map(|&s| BigUint::from(s)).product());
    Ok(CentralizerMeans {
        sizes,
        m_order: m.order(),
        sum,
        ln_geom,
        product,
    })
}

fn is_minimal_normal(ambient: &PermGroup, m: &PermGroup) -> Result<bool> {
    if m.is_trivial() || !m.is_normal_in(ambient) {
        return Ok(false);
    }
    let classes = ambient.conjugacy_classes()?;
    for r in &classes.class_reps {
        if !r.is_identity() && m.contains(r) && ambient.normal_closure(std::slice::from_ref(r))?.order() != m.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn t2_results(ambient: &PermGroup, m: &PermGroup, r: &Permutation, instance: String) -> Result<Vec<CheckResult>> {
    let means = geom_avg(ambient, m, r)?;
    let count = big(means.count() as u128);
    let lhs = &means.sum * &means.sum;
    let rhs = &count * &count * big(means.m_order);
    let avg = means.avg();
    let ln_avg = ln_rat(&avg);
    let ln_m = (means.m_order as f64).ln();
    let max = means.max();
    let main = CheckResult::exact_bigint("t2", instance.clone(), &lhs, &rhs, Relation::Le)
        .lhs_text(&avg)
        .rhs_text(fmt_f64((means.m_order as f64).sqrt()))
        .margin_text(fmt_f64((means.m_order as f64).sqrt() - avg.to_f64().unwrap_or(f64::NAN)))
        .witness("sum_sq", &lhs)
        .witness("count_sq_m", &rhs)
        .witness("max_centralizer", max)
        .witness("max_sq_le_m", (max as u128) * (max as u128) <= means.m_order)
        .witness("observed_exponent", fmt_f64(ln_avg / ln_m));
    let amgm_exact = means.product.as_ref().and_then(|prod| {
        let n = means.count() as u32;
        let bits = n as f64 * (means.sum.bits() as f64);
        (bits <= EXACT_BIT_BUDGET).then(|| {
            let l = prod * Pow::pow(&count, n);
            let r = Pow::pow(&means.sum, n);
            l.cmp(&r)
        })
    });
    let amgm = CheckResult::log_domain("t2-amgm", instance, means.ln_geom, ln_avg, Relation::Le, amgm_exact)
        .rhs_text(&avg);
    Ok(vec![main, amgm])
}

/// `t2` on the coset `X g` for a non-abelian chief factor `X/Y`:
/// `geom <= avg <= |X/Y|^(1/2)`.
pub fn check_t2(g: &PermGroup, x: &PermGroup, y: &PermGroup, rep_elem: &Permutation) -> Result<Vec<CheckResult>> {
    g.require_member(rep_elem)?;
    let instance = format!("{} |X/Y|={} coset X{}", group_label(g), x.order() / y.order().max(1), rep_elem);
    if !y.is_subgroup_of(x) || !x.is_normal_in(g) || !y.is_normal_in(g) {
        return Ok(vec![CheckResult::hypothesis_failed("t2", instance, "Y < X must both be normal in G")]);
    }
    let q = g.quotient(y)?;
    let m = q.image_subgroup(x)?;
    if !is_minimal_normal(q.group(), &m)? {
        return Ok(vec![CheckResult::hypothesis_failed("t2", instance, "X/Y is not a chief factor")]);
    }
    if m.is_abelian() {
        return Ok(vec![CheckResult::hypothesis_failed("t2", instance, "X/Y is abelian")]);
    }
    let r = q.image_of(rep_elem)?;
    t2_results(q.group(), &m, &r, instance)
}

/// Orbit count of `M` acting by conjugation on `M rep`, and the checks that
/// it equals the centralizer mean and is at most `k(M)`.
pub fn coset_class_identity(ambient: &PermGroup, m: &PermGroup, rep: &Permutation) -> Result<Vec<CheckResult>> {
    let instance = format!("|M|={} coset M{}", m.order(), rep);
    let means = geom_avg(ambient, m, rep)?;
    let coset = Coset::new(m.clone(), rep.clone()).elements()?;
    let index: HashMap<&Permutation, usize> = coset.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let conj: Vec<(Permutation, Permutation)> = m.generators().iter().map(|h| (h.inv(), h.clone())).collect();
    let mut seen = vec![false; coset.len()];
    let mut orbits = 0u128;
    for start in 0..coset.len() {
        if seen[start] {
            continue;
        }
        orbits += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for (hi, h) in &conj {
                let j = index[&hi.mul(&coset[i]).mul(h)];
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    let km = m.class_number()? as u128;
    let mut out = vec![
        CheckResult::exact_rational("coset-classes", instance.clone(), &means.avg(), &rat(orbits, 1), Relation::Eq)
            .witness("orbits", orbits),
        CheckResult::exact_bigint("coset-classes-km", instance.clone(), &big(orbits), &big(km), Relation::Le),
    ];
    if !m.is_abelian() && m.is_simple()? {
        let exact = Pow::pow(big(km), 100u32).cmp(&Pow::pow(big(m.order()), 41u32));
        out.push(
            CheckResult::log_domain(
                "km-041",
                instance,
                (km as f64).ln(),
                0.41 * (m.order() as f64).ln(),
                Relation::Le,
                None,
            )
            .lhs_text(km)
            .witness("exact_k100_le_m41", exact != Ordering::Greater),
        );
    }
    Ok(out)
}

/// `t2` and the coset class identities on every coset of every
/// non-abelian chief factor of the series.
pub fn check_nonabelian_factors(series: &ChiefSeries) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (level, f) in series.factors.iter().enumerate() {
        if f.is_abelian {
            continue;
        }
        let ambient = f.quotient.group();
        for r in right_coset_reps(ambient, &f.factor)? {
            let lifted = f.quotient.lift(&r);
            let instance = format!(
                "{} level {} |X/Y|={} coset X{}",
                group_label(&series.group),
                level,
                f.order,
                lifted
            );
            out.extend(t2_results(ambient, &f.factor, &r, instance.clone())?);
            for c in coset_class_identity(ambient, &f.factor, &r)? {
                let mut c = c;
                c.instance = format!("{instance} ({})", c.instance);
                out.push(c);
            }
        }
    }
    Ok(out)
}

// --------------------------------------------------------------------------
// t3, cor2: centralizer products against ccf and ncf

/// Prime used in the `ncf` exponent: the smallest prime dividing
/// `|G/F(G)|`, falling back to the smallest prime of `|G|` when `G` is
/// nilpotent (then `ncf = 1` and the exponent is irrelevant).
pub fn ncf_prime(g: &PermGroup) -> Result<Option<u128>> {
    let f = g.fitting_subgroup()?;
    Ok(smallest_prime_factor(g.order() / f.order()).or_else(|| smallest_prime_factor(g.order())))
}

pub fn check_t3_cor2(g: &PermGroup) -> Result<Vec<CheckResult>> {
    let series = chief::chief_series(g)?;
    check_t3_cor2_with(g, &series)
}

pub fn check_t3_cor2_with(g: &PermGroup, series: &ChiefSeries) -> Result<Vec<CheckResult>> {
    let instance = group_label(g);
    let order = g.order();
    let Some(p) = ncf_prime(g)? else {
        return Ok(vec![CheckResult::hypothesis_failed("t3", instance, "trivial group")]);
    };
    let classes = g.conjugacy_classes()?;
    let (ccf, ncf) = series.ccf_ncf();

    let ln_prod_c: f64 = classes
        .class_sizes
        .iter()
        .zip(&classes.centralizer_orders)
        .map(|(&s, &c)| s as f64 * (c as f64).ln())
        .sum();
    let ln_prod_cl: f64 = classes.class_sizes.iter().map(|&s| s as f64 * (s as f64).ln()).sum();

    // t3: (prod |C|)^(1/|G|) <= ccf * ncf^(1/p).
    let ln_lhs = ln_prod_c / order as f64;
    let ln_rhs = (ccf as f64).ln() + (ncf as f64).ln() / p as f64;
    let exact = (order <= T3_EXACT_ORDER).then(|| {
        let prod: BigUint = classes
            .class_sizes
            .iter()
            .zip(&classes.centralizer_orders)
            .map(|(&s, &c)| pow(c, s))
            .product();
        if ncf == 1 {
            prod.cmp(&pow(ccf, order))
        } else {
            Pow::pow(prod, p as u32).cmp(&(pow(ccf, p * order) * pow(ncf, order)))
        }
    });
    let t3 = CheckResult::log_domain("t3", instance.clone(), ln_lhs, ln_rhs, Relation::Le, exact)
        .witness("ccf", ccf)
        .witness("ncf", ncf)
        .witness("p", p);

    // cor2: ncf^((p-1)|G|) <= (prod |cl|)^p.
    let ln_cor_rhs = ln_prod_cl * p as f64 / ((p - 1) as f64 * order as f64);
    let bits = ((p - 1) as f64 * order as f64 * (ncf as f64).log2()).max(p as f64 * ln_prod_cl / std::f64::consts::LN_2);
    let cor_exact = (bits <= EXACT_BIT_BUDGET).then(|| {
        let prod: BigUint = classes.class_sizes.iter().map(|&s| pow(s, s)).product();
        pow(ncf, (p - 1) * order).cmp(&Pow::pow(prod, p as u32))
    });
    let cor2 = CheckResult::log_domain("cor2", instance.clone(), (ncf as f64).ln(), ln_cor_rhs, Relation::Le, cor_exact)
        .lhs_text(ncf)
        .witness("p", p);

    // Pointwise: |C_G(g)| <= ccf * prod over non-central factors |C_{X/Y}(g)|.
    let mut worst: Option<(BigInt, u128, BigUint, Permutation)> = None;
    let mut holds = true;
    for (rep, &c) in classes.class_reps.iter().zip(&classes.centralizer_orders) {
        let mut bound = big(ccf);
        for f in series.factors.iter().filter(|f| !f.is_central) {
            bound *= big(f.fixed_points(rep)?);
        }
        holds &= big(c) <= bound;
        let slack = BigInt::from(bound.clone()) - BigInt::from(c);
        if worst.as_ref().map_or(true, |(s, ..)| slack < *s) {
            worst = Some((slack, c, bound, rep.clone()));
        }
    }
    let (_, c, bound, rep) = worst.expect("at least the identity class");
    let mut pointwise = CheckResult::exact_bigint("t3-pointwise", instance, &big(c), &bound, Relation::Le)
        .witness("element", &rep)
        .witness("classes_checked", classes.len());
    if !holds {
        pointwise.set_status(Status::Fail);
    }
    Ok(vec![t3, cor2, pointwise])
}

// --------------------------------------------------------------------------
// BFC bounds

/// Number of distinct commutators `[x, y]`.
///
/// The commutator set is a union of classes, and `[r^h, y] = [r, y']^h`, so
/// it is the union of the classes meeting `r^(-1) cl(r)` over class
/// representatives `r`.
pub fn commutator_count(g: &PermGroup) -> Result<u128> {
    let table = g.table()?;
    let classes = g.conjugacy_classes()?;
    let mut hit = vec![false; classes.len()];
    for (rep, members) in classes.class_reps.iter().zip(&classes.members) {
        let ri = rep.inv();
        for &j in members {
            let c = ri.mul(&table.elements()[j]);
            hit[classes.class_of[table.index_of(&c).expect("closed")]] = true;
        }
    }
    Ok(hit
        .iter()
        .zip(&classes.class_sizes)
        .filter(|(h, _)| **h)
        .map(|(_, &s)| s)
        .sum())
}

/// `value < base^((7 + log2 base) / 2)`.
fn log_exponent_check(check_id: &str, instance: String, value: u128, base: u128) -> CheckResult {
    let log2b = (base as f64).log2();
    let ln_rhs = (7.0 + log2b) / 2.0 * (base as f64).ln();
    let ln_lhs = (value as f64).ln();
    let exact = if base.is_power_of_two() {
        let e = base.trailing_zeros() as u128;
        Some(big(value).cmp(&pow(2, e * (7 + e) / 2)))
    } else {
        // floor(log2 b) < log2 b < floor + 1 brackets the bound:
        // value^2 < b^(7+floor) proves it, value^2 >= b^(8+floor) refutes it.
        let fl = 127 - base.leading_zeros() as u128;
        let sq = big(value) * big(value);
        if sq < pow(base, 7 + fl) {
            Some(Ordering::Less)
        } else if sq >= pow(base, 8 + fl) {
            Some(Ordering::Greater)
        } else {
            None
        }
    };
    CheckResult::log_domain(check_id, instance, ln_lhs, ln_rhs, Relation::Lt, exact).lhs_text(value)
}

/// BFC invariants of a finite non-abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfcData {
    pub n: u128,
    pub ncf: u128,
    pub derived_order: u128,
    pub m: u128,
    pub fitting_classes: usize,
}

pub fn bfc_data(g: &PermGroup, series: &ChiefSeries) -> Result<BfcData> {
    let classes = g.conjugacy_classes()?;
    Ok(BfcData {
        n: classes.class_sizes.iter().copied().max().unwrap_or(1),
        ncf: series.ccf_ncf().1,
        derived_order: g.derived_subgroup()?.order(),
        m: commutator_count(g)?,
        fitting_classes: g.fitting_subgroup()?.class_number()?,
    })
}

pub fn check_bfc(g: &PermGroup, d_hint: Option<usize>) -> Result<Vec<CheckResult>> {
    let series = chief::chief_series(g)?;
    check_bfc_with(g, d_hint, &series)
}

pub fn check_bfc_with(g: &PermGroup, d_hint: Option<usize>, series: &ChiefSeries) -> Result<Vec<CheckResult>> {
    let instance = group_label(g);
    if g.is_abelian() {
        return Ok(vec![CheckResult::hypothesis_failed("bfc", instance, "abelian group (n = 1)")]);
    }
    let data = bfc_data(g, series)?;
    let n = data.n;
    let p = ncf_prime(g)?.expect("non-abelian group");
    let d = d_hint.unwrap_or(g.generators().len()) as u128;

    // t4: ncf < n^(p/(p-1)), i.e. ncf^(p-1) < n^p; and n^(p/(p-1)) <= n^2.
    let t4 = CheckResult::log_domain(
        "t4",
        instance.clone(),
        (data.ncf as f64).ln(),
        p as f64 / (p - 1) as f64 * (n as f64).ln(),
        Relation::Lt,
        Some(pow(data.ncf, p - 1).cmp(&pow(n, p))),
    )
    .lhs_text(data.ncf)
    .witness("n", n)
    .witness("p", p)
    .witness("n2", n * n);

    let t5 = log_exponent_check("t5", instance.clone(), data.derived_order, n).witness("n", n);

    let t6 = CheckResult::exact_bigint(
        "t6",
        instance.clone(),
        &big(g.order()),
        &(big(n) * big(n) * big(data.fitting_classes as u128)),
        Relation::Lt,
    )
    .witness("n", n)
    .witness("k_fitting", data.fitting_classes);

    let cor3 = CheckResult::exact_bigint(
        "cor3",
        instance.clone(),
        &big(data.derived_order),
        &pow(n, 3 * d + 2),
        Relation::Le,
    )
    .witness("d", d);

    let cor6 = log_exponent_check("cor6", instance, data.derived_order, data.m).witness("m", data.m);
    Ok(vec![t4, t5, t6, cor3, cor6])
}

// --------------------------------------------------------------------------
// Generation

fn generation_hypotheses(g: &PermGroup, n: &PermGroup, x: &Permutation, s: &Permutation) -> Result<std::result::Result<(), String>> {
    if !n.is_subgroup_of(g) || !n.is_normal_in(g) {
        return Ok(Err("N is not normal in G".into()));
    }
    if n.order() > GENERATION_CAP {
        return Err(Error::Cap(format!("|N| = {} exceeds {}", n.order(), GENERATION_CAP)));
    }
    if !is_minimal_normal(g, n)? {
        return Ok(Err("N is not a minimal normal subgroup".into()));
    }
    if n.is_abelian() {
        return Ok(Err("N is abelian".into()));
    }
    let mut gens = n.generators().to_vec();
    gens.push(x.clone());
    if g.subgroup(gens)?.order() != g.order() {
        return Ok(Err("G/N is not generated by xN".into()));
    }
    if !n.contains(s) || s.is_identity() {
        return Ok(Err("s is not a nontrivial element of N".into()));
    }
    if !n.normal_closure(std::slice::from_ref(s))?.is_simple()? {
        return Ok(Err("s does not lie in a simple factor of N".into()));
    }
    Ok(Ok(()))
}

/// Number of `g` in `N x` with `<g, s> = G`.
pub fn generation_count(g: &PermGroup, n: &PermGroup, x: &Permutation, s: &Permutation) -> Result<u128> {
    let mut count = 0;
    for y in Coset::new(n.clone(), x.clone()).elements()? {
        if PermGroup::new(g.degree(), vec![y, s.clone()])?.order() == g.order() {
            count += 1;
        }
    }
    Ok(count)
}

/// More than half of `N x` generates `G` together with `s`.
pub fn check_generation(g: &PermGroup, n: &PermGroup, x: &Permutation, s: &Permutation) -> Result<CheckResult> {
    g.require_member(x)?;
    g.require_member(s)?;
    let instance = format!("{} |N|={} x={} s={}", group_label(g), n.order(), x, s);
    if let Err(reason) = generation_hypotheses(g, n, x, s)? {
        return Ok(CheckResult::hypothesis_failed("gen", instance, reason));
    }
    let count = generation_count(g, n, x, s)?;
    Ok(
        CheckResult::exact_rational("gen", instance, &rat(n.order(), 2), &rat(count, 1), Relation::Lt)
            .witness("count", count)
            .witness("coset_size", n.order())
            .witness("s", s),
    )
}

/// Tries every class representative `s` of a simple factor `L1` of `N` and
/// returns the result with the largest count.
pub fn search_generation(g: &PermGroup, n: &PermGroup, x: &Permutation) -> Result<CheckResult> {
    let l1 = if n.is_simple()? {
        n.clone()
    } else {
        chief::minimal_normal_subgroups(n)?.remove(0)
    };
    let mut best: Option<(u128, CheckResult)> = None;
    let mut tried = 0;
    for s in &l1.conjugacy_classes()?.class_reps {
        if s.is_identity() {
            continue;
        }
        tried += 1;
        let r = check_generation(g, n, x, s)?;
        if r.status == Status::HypothesisFailed {
            return Ok(r);
        }
        let count: u128 = r.witnesses["count"].parse().expect("numeric count");
        if best.as_ref().map_or(true, |(c, _)| count > *c) {
            best = Some((count, r));
        }
    }
    let (_, r) = best.ok_or_else(|| Error::Hypothesis("L1 is trivial".into()))?;
    Ok(r.witness("s_tried", tried))
}

// --------------------------------------------------------------------------
// Scott's Lemma

/// Slacks of the two forms for the triple `(g1, g2, (g1 g2)^-1)`:
/// `sum dim[g_i,V] - (dim V + dim[H,V] - dim C_V(H))` and
/// `dim V + dim C_V(H) + dim V/[H,V] - sum dim C_V(g_i)`.
pub fn scott_slacks(rep: &Representation, g1: &Permutation, g2: &Permutation) -> Result<(i64, i64)> {
    let g3 = g1.mul(g2).inv();
    let dim = rep.dim() as i64;
    let fixed: Vec<i64> = [g1, g2, &g3]
        .iter()
        .map(|x| rep.fixed_dim(x).map(|d| d as i64))
        .collect::<Result<_>>()?;
    let images = [rep.matrix_of(g1)?.clone(), rep.matrix_of(g2)?.clone()];
    let (fix_h, comm_h) = subspaces_of(rep.field(), rep.dim(), &images);
    let (fh, ch) = (fix_h.dim() as i64, comm_h.dim() as i64);
    let comm_sum: i64 = fixed.iter().map(|f| dim - f).sum();
    let fixed_sum: i64 = fixed.iter().sum();
    Ok((comm_sum - (dim + ch - fh), dim + fh + (dim - ch) - fixed_sum))
}

/// Checks both forms of Scott's Lemma on seeded random triples.
pub fn scott_harness(rep: &Representation, trials: usize, seed: u64) -> Result<CheckResult> {
    let elements = rep.group().enumerate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = (0usize, 0usize);
    let mut worst: Option<(i64, i64, Permutation, Permutation)> = None;
    for _ in 0..trials {
        let g1 = &elements[rng.gen_range(0..elements.len())];
        let g2 = &elements[rng.gen_range(0..elements.len())];
        let (a, b) = scott_slacks(rep, g1, g2)?;
        violations.0 += usize::from(a < 0);
        violations.1 += usize::from(b < 0);
        if worst.as_ref().map_or(true, |w| a.min(b) < w.0.min(w.1)) {
            worst = Some((a, b, g1.clone(), g2.clone()));
        }
    }
    let instance = format!("{} trials={} seed={:#x}", module_label(rep), trials, seed);
    let (a, b, g1, g2) = worst.unwrap_or((0, 0, rep.group().identity(), rep.group().identity()));
    let mut r = CheckResult::exact_rational("scott", instance, &rat(0, 1), &BigRational::from_integer(BigInt::from(a.min(b))), Relation::Le)
        .lhs_text("0")
        .witness("min_slack_sum_form", a)
        .witness("min_slack_restated_form", b)
        .witness("violations_sum_form", violations.0)
        .witness("violations_restated_form", violations.1)
        .witness("worst_g1", &g1)
        .witness("worst_g2", &g2)
        .witness("trials", trials);
    r.margin = a.min(b).to_string();
    r.rhs = a.min(b).to_string();
    if violations != (0, 0) {
        r.set_status(Status::Fail);
    }
    Ok(r)
}

/// Sorts results by check id, then instance.
pub fn sort_results(results: &mut [CheckResult]) {
    results.sort_by(|a, b| a.check_id.cmp(&b.check_id).then_with(|| a.instance.cmp(&b.instance)));
}
