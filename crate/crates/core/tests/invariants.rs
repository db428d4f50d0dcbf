use std::collections::BTreeMap;

use fpl_core::catalog::{self, CatalogEntry};
use fpl_core::chief;
use fpl_core::metrics::{self, Mode};
use fpl_core::module::MeataxeConfig;
use fpl_core::perm::Coset;
use fpl_core::Error;

fn sweep() -> Vec<CatalogEntry> {
    catalog::catalog_sweep().unwrap()
}

fn params(pairs: &[(&str, u64)]) -> BTreeMap<String, u64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[test]
fn sweep_shape() {
    let cat = sweep();
    assert!(cat.len() >= 15);
    let orders: BTreeMap<&str, u128> = cat.iter().map(|e| (e.id.as_str(), e.group.order())).collect();
    let expect = [
        ("cyclic_2", 2),
        ("cyclic_5", 5),
        ("elem_abelian_3", 9),
        ("dihedral_4", 8),
        ("dihedral_6", 12),
        ("symmetric_5", 120),
        ("alternating_4", 12),
        ("alternating_6", 360),
        ("quaternion", 8),
        ("s3xc2", 12),
        ("sl2_4", 60),
        ("sl2_8", 504),
        ("extraspecial_3_1", 27),
        ("extraspecial_3_2", 243),
        ("a5_wreath_c2", 7200),
    ];
    for (id, order) in expect {
        assert_eq!(orders[id], order, "{id}");
    }
    let config = MeataxeConfig::default();
    for e in &cat {
        if let (Some(rep), Some(n)) = (&e.rep, &e.designated_normal) {
            assert_eq!(rep.count_trivial_factors(n, &config).unwrap(), 0, "{}", e.id);
            assert!(n.is_normal_in(&e.group));
        }
    }
}

#[test]
fn s3xc2_has_two_minimal_normal_subgroups() {
    let e = catalog::build_entry("s3xc2", &BTreeMap::new()).unwrap();
    let mins = chief::minimal_normal_subgroups(&e.group).unwrap();
    let orders: Vec<u128> = mins.iter().map(|m| m.order()).collect();
    assert_eq!(orders.len(), 2);
    assert!(orders.contains(&2) && orders.contains(&3));
}

#[test]
fn rank_nullity_per_element() {
    for e in sweep() {
        let Some(rep) = &e.rep else { continue };
        for x in e.group.enumerate().unwrap() {
            let f = rep.fixed_space(x).unwrap().dim();
            let c = rep.commutator_space(x).unwrap().dim();
            assert_eq!(f + c, rep.dim(), "{}", e.id);
        }
    }
}

#[test]
fn extraspecial_structure() {
    for (id, a) in [("extraspecial_3_1", 1u32), ("extraspecial_3_2", 2)] {
        let e = catalog::build_entry(id, &BTreeMap::new()).unwrap();
        let g = &e.group;
        assert_eq!(g.order(), 3u128.pow(1 + 2 * a));
        let z = g.center().unwrap();
        assert_eq!(z.order(), 3);
        assert!(g.derived_subgroup().unwrap().same_group(&z));
        assert!(g.enumerate().unwrap().iter().all(|x| 3 % x.order() == 0));
        let rep = e.rep.as_ref().unwrap();
        assert_eq!(rep.dim(), 3usize.pow(a));
        let cs = rep.composition_series(g, &MeataxeConfig::default()).unwrap();
        assert_eq!(cs.factor_dims, vec![rep.dim()]);
        for x in g.enumerate().unwrap() {
            let d = rep.fixed_dim(x).unwrap();
            if x.is_identity() {
                assert_eq!(d, rep.dim());
            } else if z.contains(x) {
                assert_eq!(d, 0);
            } else {
                assert_eq!(d, rep.dim() / 3);
            }
        }
    }
}

#[test]
fn extraspecial_a2_equality_outcome() {
    let e = catalog::build_entry("extraspecial_3_2", &BTreeMap::new()).unwrap();
    let rep = e.rep.as_ref().unwrap();
    let z = e.designated_normal.as_ref().unwrap();
    let results = metrics::check_t1_cosets(rep, z, &MeataxeConfig::default()).unwrap();
    assert_eq!(results.len(), 81);
    assert!(results.iter().all(|r| r.passed && r.equality == Some(true) && r.lhs == "3"));
}

#[test]
fn nilpotent_groups_have_no_noncentral_factors() {
    for e in sweep() {
        let g = &e.group;
        let fit = g.fitting_subgroup().unwrap();
        let series = chief::chief_series(g).unwrap();
        if fit.same_group(g) {
            assert_eq!(series.ccf_ncf().1, 1, "{}", e.id);
        }
    }
}

#[test]
fn full_group_equality_exactly_for_cyclic_and_extraspecial() {
    let config = MeataxeConfig::default();
    let mut equal = Vec::new();
    for e in sweep() {
        let Some(rep) = &e.rep else { continue };
        let g = &e.group;
        let irreducible = rep.composition_series(g, &config).unwrap().len() == 1;
        if !irreducible {
            continue;
        }
        let r = metrics::check_t1(rep, g, &g.identity(), &config).unwrap();
        assert!(r.passed, "{}", e.id);
        if r.equality == Some(true) {
            equal.push(e.id.clone());
        }
    }
    assert_eq!(
        equal,
        ["cyclic_2", "cyclic_3", "cyclic_5", "extraspecial_3_1", "extraspecial_3_2"]
    );
}

#[test]
fn elementary_abelian_equality_is_recorded() {
    for id in ["elem_abelian_2", "elem_abelian_3"] {
        let e = catalog::build_entry(id, &BTreeMap::new()).unwrap();
        let rep = e.rep.as_ref().unwrap();
        let avg = rep.avgdim(&Coset::new(e.group.clone(), e.group.identity())).unwrap();
        let p = if id.ends_with('2') { 2 } else { 3 };
        assert_eq!(avg.ratio() * p, num_rational::Ratio::from_integer(rep.dim() as u64));
    }
}

#[test]
fn t1_pass_implies_cor1_pass() {
    let config = MeataxeConfig::default();
    for e in sweep() {
        let Some(rep) = &e.rep else { continue };
        let n = e.designated_normal.as_ref().unwrap();
        for x in metrics::right_coset_reps(&e.group, n).unwrap() {
            let t1 = metrics::check_t1(rep, n, &x, &config).unwrap();
            let cor1 = metrics::check_cor1(rep, n, &x, &config).unwrap();
            assert!(!t1.passed || cor1.passed, "{} coset {x}", e.id);
        }
    }
}

#[test]
fn amgm_on_every_nonabelian_factor_coset() {
    for e in sweep() {
        let series = chief::chief_series(&e.group).unwrap();
        for r in metrics::check_nonabelian_factors(&series).unwrap() {
            if r.check_id == "t2-amgm" {
                assert!(r.passed && r.mode == Mode::ExactBigint, "{r:?}");
            }
        }
    }
}

#[test]
fn sl2_matches_alternating_5() {
    let sl = catalog::build_entry("sl2_4", &BTreeMap::new()).unwrap();
    let a5 = catalog::build_entry("alternating_5", &BTreeMap::new()).unwrap();
    assert_eq!(sl.group.order(), a5.group.order());
    assert!(sl.group.is_simple().unwrap());
    let sizes = |e: &CatalogEntry| {
        let mut v = e.group.conjugacy_classes().unwrap().class_sizes.clone();
        v.sort();
        v
    };
    assert_eq!(sizes(&sl), sizes(&a5));
}

#[test]
fn parameterized_entries() {
    let e = catalog::build_entry("cyclic_p", &params(&[("p", 7), ("q", 29)])).unwrap();
    assert_eq!(e.group.order(), 7);
    assert_eq!(e.id, "cyclic_p[p7,q29]");
    let e = catalog::build_entry("extraspecial", &params(&[("p", 3), ("a", 1), ("q", 4)])).unwrap();
    assert_eq!(e.rep.as_ref().unwrap().field().order(), 4);

    let bad = [
        ("extraspecial", params(&[("p", 2), ("a", 1), ("q", 3)])),
        ("extraspecial", params(&[("p", 3), ("a", 1), ("q", 5)])),
        ("extraspecial", params(&[("p", 3), ("a", 3), ("q", 7)])),
        ("cyclic_p", params(&[("p", 5), ("q", 7)])),
        ("sl2_q", params(&[("q", 9)])),
        ("symmetric", params(&[("n", 5), ("q", 5)])),
        ("cyclic_p", params(&[("p", 5)])),
    ];
    for (fam, ps) in bad {
        assert!(matches!(catalog::build_entry(fam, &ps), Err(Error::CatalogParams(_))), "{fam} {ps:?}");
    }
    assert!(matches!(catalog::build_entry("nope", &BTreeMap::new()), Err(Error::UnknownEntry(_))));
}

#[test]
fn a6_generation_search_passes() {
    let e = catalog::build_entry("alternating_6", &BTreeMap::new()).unwrap();
    let g = &e.group;
    let r = metrics::search_generation(g, g, &g.identity()).unwrap();
    assert!(r.passed, "{r:?}");
    let s = fpl_core::Permutation::from_cycles(&r.witnesses["s"], 6).unwrap();
    assert!(s.order() == 5 || s.order() == 4, "{s}");
}
