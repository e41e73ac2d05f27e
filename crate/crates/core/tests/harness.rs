use blockpath::format::parse_edge_list;
use blockpath::harness::{
    run_campaign, Appended, Campaign, CampaignKind, Query, ScanReport, Store,
};
use blockpath::pattern::contains;
use blockpath::{chromatic_number, BlockPattern, Mode};

#[test]
fn report_schema_fields() {
    let c = Campaign::new(CampaignKind::TheoremT33, 2, 5, 6).sampled(20, 3);
    let r = run_campaign(&c).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json_line()).unwrap();
    for key in ["v", "kind", "k", "n", "mode", "strategy", "seed", "tested", "chi_hist", "counterexamples", "failures", "ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["v"], 1);
    assert_eq!(v["kind"], "theorem_t33");
    assert_eq!(v["strategy"], "sampled");
    assert_eq!(v["seed"], 3);
}

#[test]
fn bound_probe_counterexamples_reverify() {
    let r = run_campaign(&Campaign::new(CampaignKind::BoundProbe, 2, 1, 5)).unwrap();
    assert!(r.failures.is_empty());
    assert!(!r.counterexamples.is_empty());
    let p = BlockPattern::p3(1, 2, 1).unwrap();
    for cx in &r.counterexamples {
        let g = parse_edge_list(&cx.dg).unwrap();
        assert_eq!(chromatic_number(&g).unwrap().chi, cx.chi);
        assert!(contains(&g, &p).is_none());
        assert_eq!(cx.missing, p.to_string());
    }
    // Every 5-chromatic digraph on five vertices is a tournament and holds
    // the path.
    assert!(r.counterexamples.iter().all(|c| c.chi <= 4));
}

#[test]
fn general_mode_dedupe_campaign() {
    let c = Campaign::new(CampaignKind::ConjectureC32, 1, 1, 4).mode(Mode::General).dedupe();
    let r = run_campaign(&c).unwrap();
    assert!(r.is_clean());
    assert!(r.tested > 0);
}

#[test]
fn store_round_trip_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let store = Store::new(dir.path().join("runs.jsonl"));
    let c = Campaign::new(CampaignKind::TheoremT31, 1, 5, 6).tournaments();
    let r = run_campaign(&c).unwrap();
    assert_eq!(store.append(&r).unwrap(), Appended::New);
    let again = run_campaign(&c).unwrap();
    assert_eq!(store.append(&again).unwrap(), Appended::Duplicate);
    let q = Query {
        kind: Some(CampaignKind::TheoremT31),
        k: Some(1),
        ..Query::default()
    };
    let got: Vec<ScanReport> = store.query(&q).unwrap().reports;
    assert_eq!(got.len(), 2);
    assert_eq!(got[0].without_wall_time(), again.without_wall_time());
}
