//! End-to-end corpus pipeline: load, label, downsample, measure.

use std::collections::BTreeSet;
use std::io::Write;

use corpus_tools::{
    corpus_metrics, downsample_eval, downsample_train, empirical_parity, label_attribute,
    load_corpus, paired_empirical_td, save_corpus, wordlists, QuestionSelector,
};
use equity_metrics::TestFunction;

fn fixture_jsonl() -> String {
    let mut lines = Vec::new();
    // Four image groups with two dialogues each: unanimous female wording,
    // unanimous male wording, mixed, and ungendered.
    lines.push(r#"{"id":"f1","context":"imgA","turns":["is she on the left?","yes","is the girl smiling?","no"]}"#);
    lines.push(r#"{"id":"f2","context":"imgA","turns":["is the woman seated?","yes"]}"#);
    lines.push(r#"{"id":"m1","context":"imgB","turns":["is he tall?","no"]}"#);
    lines.push(r#"{"id":"m2","context":"imgB","turns":["is the guy wearing a hat?","yes"]}"#);
    lines.push(r#"{"id":"x1","context":"imgC","turns":["is she there?","yes"]}"#);
    lines.push(r#"{"id":"x2","context":"imgC","turns":["is it a person?","yes"]}"#);
    lines.push(r#"{"id":"n1","context":"imgD","turns":["is it red?","no"]}"#);
    lines.push(r#"{"id":"n2","context":"imgD","turns":["is it a ball?","yes"]}"#);
    let mut text = lines.join("\n");
    text.push('\n');
    text
}

#[test]
fn label_then_audit_flows_through() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(fixture_jsonl().as_bytes()).unwrap();
    let corpus = load_corpus(file.path()).unwrap();

    let corpus = label_attribute(
        &corpus,
        "F",
        &wordlists::builtin_identifier("F").unwrap(),
    )
    .unwrap();
    let corpus = label_attribute(
        &corpus,
        "M",
        &wordlists::builtin_identifier("M").unwrap(),
    )
    .unwrap();

    // Consensus rule: only imgA is female-unanimous, only imgB male-unanimous.
    let by_id = |id: &str| corpus.records().iter().find(|r| r.id == id).unwrap();
    assert_eq!(by_id("f1").label("F"), Some(1));
    assert_eq!(by_id("f2").label("F"), Some(1));
    assert_eq!(by_id("x1").label("F"), Some(0), "mixed group zeroes out");
    assert_eq!(by_id("m1").label("M"), Some(1));
    assert_eq!(by_id("n1").label("F"), Some(0));

    // In the consensus regime every labeled-1 record verbalizes the attribute.
    let v_f = wordlists::builtin_identifier("F").unwrap();
    for record in corpus.records() {
        if record.label("F") == Some(1) {
            assert_eq!(v_f.eval(&record.joined_turns()).unwrap(), 1);
        }
    }

    let score = TestFunction::identifier(v_f);
    let audit = empirical_parity(&corpus, "F", &score, 0.5).unwrap();
    // Labeled-1 records score |1 - 1| = 0; the mixed group's "is she there?"
    // record scores |0 - 1| = 1 among six labeled-0 records.
    assert_eq!(audit.count_a1, 2);
    assert_eq!(audit.count_a0, 6);
    assert_eq!(audit.parity.expectation_a1, 0.0);
    assert!((audit.parity.expectation_a0 - 1.0 / 6.0).abs() < 1e-15);

    let td = paired_empirical_td(&corpus, &corpus, "F", &score).unwrap();
    assert_eq!(td, 0.0);
}

#[test]
fn downsamplers_balance_and_write_byte_identical_files() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(fixture_jsonl().as_bytes()).unwrap();
    let corpus = load_corpus(file.path()).unwrap();
    let corpus = label_attribute(&corpus, "F", &wordlists::builtin_identifier("F").unwrap())
        .unwrap();
    let corpus = label_attribute(&corpus, "M", &wordlists::builtin_identifier("M").unwrap())
        .unwrap();

    let train =
        downsample_train(&corpus, &["F".to_string(), "M".to_string()], 41).unwrap();
    let train_ids: BTreeSet<&str> = train.records().iter().map(|r| r.id.as_str()).collect();
    assert_eq!(
        train_ids,
        ["f1", "f2", "m1", "m2"].into_iter().collect(),
        "one female group and one male group survive"
    );

    let eval = downsample_eval(&corpus, "F", 17).unwrap();
    let ones = eval
        .records()
        .iter()
        .filter(|r| r.label("F") == Some(1))
        .map(|r| &r.context)
        .collect::<BTreeSet<_>>();
    let zeros = eval
        .records()
        .iter()
        .filter(|r| r.label("F") == Some(0))
        .map(|r| &r.context)
        .collect::<BTreeSet<_>>();
    assert_eq!(ones.len(), zeros.len());

    let out_a = tempfile::NamedTempFile::new().unwrap();
    let out_b = tempfile::NamedTempFile::new().unwrap();
    save_corpus(
        &downsample_eval(&corpus, "F", 17).unwrap(),
        out_a.path(),
    )
    .unwrap();
    save_corpus(
        &downsample_eval(&corpus, "F", 17).unwrap(),
        out_b.path(),
    )
    .unwrap();
    assert_eq!(
        std::fs::read(out_a.path()).unwrap(),
        std::fs::read(out_b.path()).unwrap()
    );

    let metrics = corpus_metrics(&corpus, QuestionSelector::OddTurns).unwrap();
    assert!(metrics.ldiv > 0.0 && metrics.ldiv <= 1.0);
    assert!(metrics.qdiv > 0.0 && metrics.qdiv <= 1.0);
}
