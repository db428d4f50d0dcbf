//! The ten acceptance criteria, one pass/fail line each.

use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use fpl_core::catalog::{self, CatalogEntry};
use fpl_core::chief::{self, TieBreak};
use fpl_core::gf::GaloisField;
use fpl_core::matrix::Matrix;
use fpl_core::metrics::{self, CheckResult, Mode};
use fpl_core::module::{MeataxeConfig, Representation};
use fpl_core::perm::{perms, PermGroup, Permutation};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))
}

fn entry<'a>(cat: &'a [CatalogEntry], id: &str) -> &'a CatalogEntry {
    cat.iter().find(|e| e.id == id).unwrap()
}

fn all_pass(results: &[CheckResult]) -> Result<(), String> {
    match results.iter().find(|r| !r.passed) {
        Some(r) => Err(format!("{} failed on {}: {} vs {}", r.check_id, r.instance, r.lhs, r.rhs)),
        None => Ok(()),
    }
}

fn coset_bound_sweep(cat: &[CatalogEntry]) -> Outcome {
    let start = Instant::now();
    let config = MeataxeConfig::default();
    let mut instances = 0;
    for e in cat {
        let Some(rep) = &e.rep else { continue };
        for n in catalog::normal_candidates(e).map_err(|x| x.to_string())? {
            if rep.count_trivial_factors(&n, &config).map_err(|x| x.to_string())? > 0 {
                continue;
            }
            let results = metrics::check_t1_cosets(rep, &n, &config).map_err(|x| x.to_string())?;
            ensure(results.iter().all(|r| r.mode == Mode::ExactRational), || "non-exact t1 result".into())?;
            all_pass(&results)?;
            instances += results.len();
        }
    }
    ensure(instances >= 20, || format!("only {instances} instances"))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{instances} cosets, {:.2?}", start.elapsed()))
}

fn equality_regression(cat: &[CatalogEntry]) -> Outcome {
    let config = MeataxeConfig::default();
    let es = entry(cat, "extraspecial_3_1");
    let rep = es.rep.as_ref().unwrap();
    let z = es.group.center().unwrap();
    ensure(z.order() == 3, || "center is not of order 3".into())?;
    let results = metrics::check_t1_cosets(rep, &z, &config).map_err(|e| e.to_string())?;
    ensure(results.len() == 9, || format!("{} cosets", results.len()))?;
    for r in &results {
        ensure(r.passed && r.lhs == "1" && r.equality == Some(true), || format!("{r:?}"))?;
    }
    let c5 = entry(cat, "cyclic_5");
    let rep = c5.rep.as_ref().unwrap();
    let r = metrics::check_t1(rep, &c5.group, &c5.group.identity(), &config).map_err(|e| e.to_string())?;
    ensure(r.lhs == "1/5" && r.rhs == "1/5" && r.equality == Some(true), || format!("{r:?}"))?;
    Ok("9 cosets at 1; C5 at 1/5".into())
}

fn scott(cat: &[CatalogEntry]) -> Outcome {
    let start = Instant::now();
    let mut trials = 0;
    for e in cat {
        let Some(rep) = &e.rep else { continue };
        let r = metrics::scott_harness(rep, metrics::SCOTT_TRIALS, metrics::SCOTT_SEED).map_err(|x| x.to_string())?;
        ensure(
            r.witnesses["violations_sum_form"] == "0" && r.witnesses["violations_restated_form"] == "0" && r.passed,
            || format!("{}: {r:?}", e.id),
        )?;
        trials += metrics::SCOTT_TRIALS;
    }
    ensure(trials >= 1000, || format!("{trials} trials"))?;
    within(start, Duration::from_secs(30))?;
    Ok(format!("{trials} triples, {:.2?}", start.elapsed()))
}

fn chief_factor_means(cat: &[CatalogEntry]) -> Outcome {
    let mut checked = 0;
    for id in ["alternating_5", "symmetric_5", "a5_wreath_c2"] {
        let e = entry(cat, id);
        let series = chief::chief_series(&e.group).map_err(|x| x.to_string())?;
        let results = metrics::check_nonabelian_factors(&series).map_err(|x| x.to_string())?;
        all_pass(&results)?;
        for r in results.iter().filter(|r| r.check_id == "t2") {
            ensure(r.mode == Mode::ExactBigint, || format!("{id}: t2 not exact"))?;
            checked += 1;
        }
        ensure(results.iter().any(|r| r.check_id == "coset-classes"), || format!("{id}: no class identity"))?;
        if id == "a5_wreath_c2" {
            let swap = results
                .iter()
                .find(|r| r.check_id == "t2" && r.instance.contains("(0 5)"))
                .ok_or("no swap coset")?;
            ensure(swap.witnesses["max_sq_le_m"] == "true", || "swap coset centralizer above |M|^(1/2)".into())?;
        }
    }
    let a5 = &entry(cat, "alternating_5").group;
    let km = metrics::coset_class_identity(a5, a5, &a5.identity()).map_err(|x| x.to_string())?;
    let k41 = km.iter().find(|r| r.check_id == "km-041").ok_or("no k(M) bound")?;
    let rel: f64 = k41.witnesses["relative_margin"].parse().unwrap();
    ensure(k41.mode == Mode::LogDomain && k41.passed && k41.lhs == "5" && rel > 1e-9, || format!("{k41:?}"))?;
    Ok(format!("{checked} cosets; k(A5) = 5 <= {}", k41.rhs))
}

fn sl2_spectrum(cat: &[CatalogEntry]) -> Outcome {
    let g = &entry(cat, "sl2_4").group;
    ensure(g.order() == 60, || "SL(2,4) order".into())?;
    let orders = catalog::centralizer_spectrum(g).map_err(|x| x.to_string())?;
    ensure(orders == BTreeSet::from([3, 4, 5]), || format!("{orders:?}"))?;
    Ok(format!("{orders:?}"))
}

fn centralizer_products(cat: &[CatalogEntry]) -> Outcome {
    let mut groups = 0;
    for e in cat.iter().filter(|e| e.group.order() <= 2000) {
        let results = metrics::check_t3_cor2(&e.group).map_err(|x| x.to_string())?;
        all_pass(&results)?;
        let t3 = &results[0];
        ensure(t3.check_id == "t3" && t3.mode == Mode::ExactBigint, || format!("{}: {t3:?}", e.id))?;
        groups += 1;
    }
    let s3 = &entry(cat, "symmetric_3").group;
    let r = metrics::check_t3_cor2(s3).map_err(|x| x.to_string())?;
    let lhs: f64 = r[0].lhs.parse().unwrap();
    let rhs: f64 = r[0].rhs.parse().unwrap();
    let margin: f64 = r[0].margin.parse().unwrap();
    ensure((lhs - 432f64.powf(1.0 / 6.0)).abs() < 1e-9, || format!("lhs {lhs}"))?;
    ensure((rhs - 2.0 * 3f64.sqrt()).abs() < 1e-9, || format!("rhs {rhs}"))?;
    ensure(margin > 0.7, || format!("margin {margin}"))?;
    let cor2_rhs: f64 = r[1].rhs.parse().unwrap();
    ensure(r[1].lhs == "3" && (cor2_rhs - 108f64.cbrt()).abs() < 1e-9, || format!("{:?}", r[1]))?;
    Ok(format!("{groups} groups exact; S3 margin {margin:.4}"))
}

fn bfc(cat: &[CatalogEntry]) -> Outcome {
    let mut groups = 0;
    for e in cat.iter().filter(|e| !e.group.is_abelian()) {
        let results = metrics::check_bfc(&e.group, None).map_err(|x| x.to_string())?;
        ensure(results.len() == 5, || format!("{}: {} results", e.id, results.len()))?;
        all_pass(&results)?;
        groups += 1;
    }
    let s3 = &entry(cat, "symmetric_3").group;
    let d = metrics::bfc_data(s3, &chief::chief_series(s3).unwrap()).unwrap();
    ensure((d.n, d.ncf, d.derived_order, d.m) == (3, 3, 3, 3), || format!("{d:?}"))?;
    let a5 = &entry(cat, "alternating_5").group;
    let r = metrics::check_bfc(a5, None).unwrap();
    let t6 = r.iter().find(|r| r.check_id == "t6").unwrap();
    ensure(t6.lhs == "60" && t6.rhs == "400" && t6.witnesses["k_fitting"] == "1", || format!("{t6:?}"))?;
    Ok(format!("{groups} non-abelian groups"))
}

/// Size of `<a, b>` by closing under right multiplication.
fn closure_order(a: &Permutation, b: &Permutation) -> usize {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let id = Permutation::identity(a.degree());
    seen.insert(id.clone());
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in [a, b] {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.len()
}

fn oracle_count(g: &PermGroup, n: &PermGroup, x: &Permutation, s: &Permutation) -> u128 {
    n.enumerate()
        .unwrap()
        .iter()
        .filter(|m| closure_order(&m.mul(x), s) as u128 == g.order())
        .count() as u128
}

fn generation(cat: &[CatalogEntry]) -> Outcome {
    let start = Instant::now();
    let a5 = &entry(cat, "alternating_5").group;
    let mut a5_best = 0;
    for s in &a5.conjugacy_classes().unwrap().class_reps {
        if s.is_identity() {
            continue;
        }
        let r = metrics::check_generation(a5, a5, &a5.identity(), s).map_err(|x| x.to_string())?;
        let count: u128 = r.witnesses["count"].parse().unwrap();
        ensure(count == oracle_count(a5, a5, &a5.identity(), s), || format!("A5 oracle mismatch at {s}"))?;
        a5_best = a5_best.max(count);
    }
    ensure(a5_best == 50, || format!("A5 best count {a5_best}"))?;

    let s5e = entry(cat, "symmetric_5");
    let (s5, n) = (&s5e.group, s5e.designated_normal.as_ref().unwrap());
    let x = Permutation::from_cycles("(0 1)", 5).unwrap();
    let mut s5_best = 0;
    for s in &n.conjugacy_classes().unwrap().class_reps {
        if s.is_identity() {
            continue;
        }
        let r = metrics::check_generation(s5, n, &x, s).map_err(|x| x.to_string())?;
        let count: u128 = r.witnesses["count"].parse().unwrap();
        ensure(count == oracle_count(s5, n, &x, s), || format!("S5 oracle mismatch at {s}"))?;
        s5_best = s5_best.max(count);
    }
    ensure(s5_best > 30, || format!("S5 best count {s5_best}"))?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("A5 {a5_best} > 30, S5 {s5_best} > 30, {:.2?}", start.elapsed()))
}

fn field(q: u64) -> GaloisField {
    catalog::field_of_order(q).unwrap()
}

fn regular_rep(g: &PermGroup, f: &GaloisField) -> Representation {
    let elems = g.enumerate().unwrap();
    let images = g
        .generators()
        .iter()
        .map(|s| {
            let img: Vec<usize> = elems.iter().map(|e| g.index_of(&e.mul(s)).unwrap().unwrap()).collect();
            Matrix::permutation(f, &img)
        })
        .collect();
    Representation::new(g.clone(), f.clone(), images).unwrap()
}

fn permutation_rep(g: &PermGroup, f: &GaloisField) -> Representation {
    let images = g.generators().iter().map(|s| Matrix::permutation(f, &s.images())).collect();
    Representation::new(g.clone(), f.clone(), images).unwrap()
}

fn group(degree: usize, cycles: &[&str]) -> PermGroup {
    PermGroup::new(degree, perms(degree, cycles).unwrap()).unwrap()
}

fn meataxe_oracle(cat: &[CatalogEntry]) -> Outcome {
    let c2 = group(2, &["(0 1)"]);
    let s3 = group(3, &["(0 1 2)", "(0 1)"]);
    let s4 = group(4, &["(0 1 2 3)", "(0 1)"]);
    let a4 = group(4, &["(0 1 2)", "(1 2 3)"]);
    let c3 = group(3, &["(0 1 2)"]);
    let v4 = group(4, &["(0 1)", "(2 3)"]);
    let mut corpus: Vec<Representation> = vec![
        regular_rep(&c2, &field(2)),
        regular_rep(&c3, &field(2)),
        regular_rep(&c3, &field(4)),
        regular_rep(&v4, &field(3)),
        regular_rep(&s3, &field(2)),
        regular_rep(&s3, &field(3)),
        regular_rep(&s3, &field(4)),
        permutation_rep(&s3, &field(2)),
        permutation_rep(&s4, &field(2)),
        permutation_rep(&s4, &field(3)),
        permutation_rep(&a4, &field(2)),
        permutation_rep(&a4, &field(4)),
        permutation_rep(&group(6, &["(0 1 2 3 4 5)", "(0 1)"]), &field(3)),
        permutation_rep(&group(5, &["(0 1 2 3 4)", "(0 1 2)"]), &field(2)),
    ];
    let mut from_catalog = 0;
    for e in cat {
        if let Some(rep) = &e.rep {
            if rep.dim() <= 6 && rep.field().order() <= 4 {
                from_catalog += 1;
                let rebuilt = Representation::new(e.group.clone(), rep.field().clone(), rep.gen_images().to_vec()).unwrap();
                corpus.push(rebuilt);
            }
        }
    }
    let config = MeataxeConfig {
        exhaustive_fallback: false,
        ..MeataxeConfig::default()
    };
    let mut compared = 0;
    for rep in &corpus {
        assert!(rep.dim() <= 6 && rep.field().order() <= 4);
        let g = rep.group().clone();
        let mut subs = vec![g.clone(), PermGroup::trivial(g.degree())];
        subs.push(g.derived_subgroup().unwrap());
        if !g.is_trivial() {
            subs.extend(chief::minimal_normal_subgroups(&g).unwrap());
        }
        for h in subs {
            let fast = rep.composition_series(&h, &config).map_err(|x| x.to_string())?;
            let slow = rep.composition_series_exhaustive(&h).map_err(|x| x.to_string())?;
            ensure(fast.factor_signatures() == slow.factor_signatures(), || {
                format!("dim {} over {:?}, |H| = {}", rep.dim(), rep.field(), h.order())
            })?;
            compared += 1;
        }
    }
    let reg = regular_rep(&c2, &field(2));
    let n = reg.count_trivial_factors(&c2, &MeataxeConfig::default()).unwrap();
    ensure(n == 2, || format!("C2 regular over GF(2): {n} trivial factors"))?;
    Ok(format!("{compared} restrictions of {} modules ({from_catalog} from the catalog)", corpus.len()))
}

fn structural(cat: &[CatalogEntry]) -> Outcome {
    for e in cat {
        let g = &e.group;
        let classes = g.conjugacy_classes().unwrap();
        let burnside: u128 = g.enumerate().unwrap().iter().map(|x| g.centralizer_order(x).unwrap()).sum();
        ensure(burnside == classes.len() as u128 * g.order(), || format!("{}: Burnside", e.id))?;

        let first = chief::chief_series_with(g, TieBreak::First).unwrap();
        let last = chief::chief_series_with(g, TieBreak::Last).unwrap();
        let (ccf, ncf) = first.ccf_ncf();
        ensure(ccf * ncf == g.order(), || format!("{}: ccf*ncf", e.id))?;
        ensure(last.ccf_ncf() == (ccf, ncf), || format!("{}: tie-break changes (ccf, ncf)", e.id))?;
        ensure(last.signature() == first.signature(), || format!("{}: tie-break changes factors", e.id))?;

        let fit = g.fitting_subgroup().unwrap();
        for f in first.factors.iter().chain(&last.factors) {
            ensure(
                chief::commutators_inside(fit.generators(), f.upper.generators(), &f.lower),
                || format!("{}: F(G) moves a chief factor", e.id),
            )?;
        }
    }
    Ok(format!("{} groups", cat.len()))
}

fn main() {
    let cat = catalog::catalog_sweep().expect("catalog builds");
    let criteria: [(&str, fn(&[CatalogEntry]) -> Outcome); 10] = [
        ("t1 coset bound sweep", coset_bound_sweep),
        ("equality regression", equality_regression),
        ("Scott's Lemma harness", scott),
        ("t2 means and coset class identities", chief_factor_means),
        ("SL(2,4) centralizer spectrum", sl2_spectrum),
        ("t3 and cor2 centralizer products", centralizer_products),
        ("BFC suite", bfc),
        ("generation count", generation),
        ("Meataxe against exhaustive spin-up", meataxe_oracle),
        ("structural invariants", structural),
    ];
    let mut failures = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(|| run(&cat))).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2}: pass  {name} ({detail})", i + 1),
            Err(why) => {
                println!("criterion {:>2}: FAIL  {name} ({why})", i + 1);
                failures.push(i + 1);
            }
        }
    }
    if !failures.is_empty() {
        eprintln!("failed criteria: {failures:?}");
        std::process::exit(1);
    }
}
