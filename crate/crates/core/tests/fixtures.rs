use std::path::PathBuf;

use kneser::construct::{table3_packing, table3_rows};
use serde_json::Value;

fn fixture() -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/table3.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn table3_json_matches_embedded_families() {
    let doc = fixture();
    let families = doc["families"].as_array().unwrap();
    assert_eq!(families.len(), table3_rows().count());
    for (entry, r) in families.iter().zip(table3_rows()) {
        assert_eq!(entry["r"], r);
        assert_eq!(entry["n"], 3 * r - 3);
        let sets: Vec<Vec<u32>> = serde_json::from_value(entry["sets"].clone()).unwrap();
        assert_eq!(sets, table3_packing(r).unwrap().to_sets(), "r = {r}");
    }
}

#[test]
fn table3_checksum() {
    // sum over rows of r * sum of (set index + 1) * (element sum)
    let mut sum: u64 = 0;
    for r in table3_rows() {
        for (i, set) in table3_packing(r).unwrap().to_sets().iter().enumerate() {
            sum += r as u64 * (i as u64 + 1) * set.iter().map(|&x| x as u64).sum::<u64>();
        }
    }
    assert_eq!(sum, EXPECTED_CHECKSUM);
}

const EXPECTED_CHECKSUM: u64 = 56893;
