use std::collections::BTreeSet;
use std::fs;

use inttree_core::search::{run_search, CatalogRecord, SearchConfig, SearchCursor};
use inttree_core::tree::Shard;

fn codes(path: &std::path::Path) -> Vec<String> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| {
            let rec: CatalogRecord = serde_json::from_str(l).unwrap();
            assert!(rec.verify());
            rec.code.to_string()
        })
        .collect()
}

#[test]
fn interrupted_search_resumes_without_duplicates() {
    let dir = tempfile::tempdir().unwrap();
    let whole_out = dir.path().join("whole.jsonl");
    let mut config = SearchConfig::new(11);
    config.out = Some(whole_out.clone());
    run_search(&config, &mut std::io::sink()).unwrap();
    let whole = codes(&whole_out);
    assert!(!whole.is_empty());

    let out = dir.path().join("resumed.jsonl");
    let cursor = dir.path().join("cursor.json");
    let mut config = SearchConfig::new(11);
    config.out = Some(out.clone());
    config.resume = Some(cursor.clone());
    config.checkpoint_every = 37;
    let mut limit = 150;
    loop {
        config.stop_after = Some(limit);
        run_search(&config, &mut std::io::sink()).unwrap();
        if SearchCursor::load(&cursor).unwrap().done {
            break;
        }
        limit += 150;
    }
    assert_eq!(codes(&out), whole);
}

#[test]
fn shards_partition_the_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let mut all = BTreeSet::new();
    let mut total = 0;
    for i in 0..3 {
        let out = dir.path().join(format!("shard{i}.jsonl"));
        let mut config = SearchConfig::new(10);
        config.filter.integral_only = true;
        config.shard = Shard::new(i, 3).unwrap();
        config.out = Some(out.clone());
        run_search(&config, &mut std::io::sink()).unwrap();
        let c = codes(&out);
        total += c.len();
        all.extend(c);
    }
    assert_eq!(total, all.len());
    let mut whole = Vec::new();
    let mut config = SearchConfig::new(10);
    config.filter.integral_only = true;
    run_search(&config, &mut whole).unwrap();
    let whole: BTreeSet<String> = String::from_utf8(whole)
        .unwrap()
        .lines()
        .map(|l| {
            serde_json::from_str::<CatalogRecord>(l)
                .unwrap()
                .code
                .to_string()
        })
        .collect();
    assert_eq!(all, whole);
}
