use std::time::Instant;

use fpl_core::catalog::{self, VerifyOptions};

#[test]
fn every_expected_record_is_reproduced() {
    let opts = VerifyOptions::default();
    let mut bad = Vec::new();
    let mut total = 0;
    for entry in catalog::catalog_sweep().unwrap() {
        let t = Instant::now();
        let results = catalog::verify_entry(&entry, &opts).unwrap();
        eprintln!("{:<18} {:>5} results {:>8.2?}", entry.id, results.len(), t.elapsed());
        total += results.len();
        bad.extend(catalog::expected_mismatches(&entry, &results));
        bad.extend(results.iter().filter(|r| !r.passed).map(|r| format!("{r:?}")));
    }
    assert!(bad.is_empty(), "{bad:#?}");
    assert!(total >= 60);
}
