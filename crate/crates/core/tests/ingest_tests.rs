mod common;

use common::*;
use lexkb_core::ingest::{parse_corpus, serialize_corpus, ParseOptions};
use lexkb_core::kb::RelationKind;
use lexkb_core::{LexError, Pos};

#[test]
fn existence_sample_counts() {
    let kb = load_kb("existence.kbt");
    let stats = kb.stats();
    assert_eq!(stats.heads, 1);
    assert_eq!(stats.paragraphs, 1);
    assert_eq!(stats.groups, 15);

    let head = kb.get_head(1).unwrap();
    assert_eq!(head.address.head_name, "Existence");
    assert_eq!(head.address.class_num, 1);
    let paragraph = &head.paragraphs[0];
    assert_eq!(paragraph.sense.pos, Pos::Noun);
    let crefs: Vec<u32> = paragraph
        .groups
        .iter()
        .flat_map(|g| g.relations.iter())
        .filter(|r| r.kind == RelationKind::CrossReference)
        .map(|r| r.target_head)
        .collect();
    assert_eq!(
        crefs,
        vec![965, 360, 115, 119, 121, 189, 147, 164, 469, 449]
    );
}

#[test]
fn dangling_cross_references_warn_but_load() {
    let kb = load_kb("existence.kbt");
    // None of the ten targets exist in the sample.
    assert_eq!(kb.warnings().len(), 10);
}

#[test]
fn fixture_corpus_serialization_is_byte_identical() {
    for name in [
        "feline.kbt",
        "einstein.kbt",
        "quiz.kbt",
        "daily.kbt",
        "decrement.kbt",
        "existence.kbt",
    ] {
        let text = fixture_text(name);
        let kb = parse_corpus(&text, ParseOptions::default()).unwrap();
        let serialized = serialize_corpus(&kb);
        assert_eq!(serialized, text, "{name} does not round-trip");
        let reparsed = parse_corpus(&serialized, ParseOptions::default()).unwrap();
        assert_eq!(serialize_corpus(&reparsed), serialized);
    }
}

#[test]
fn parse_is_deterministic() {
    let text = fixture_text("feline.kbt");
    let a = serialize_corpus(&parse_corpus(&text, ParseOptions::default()).unwrap());
    let b = serialize_corpus(&parse_corpus(&text, ParseOptions::default()).unwrap());
    assert_eq!(a, b);
}

#[test]
fn lenient_mode_skips_noisy_group_with_warning() {
    let src = "\
#class 1 | A
#section 1 | S
#headgroup 1
#head 1 | H
#pos N.
#para word
word; other
bad | char; noise
";
    let kb = parse_corpus(src, ParseOptions::default()).unwrap();
    assert_eq!(kb.stats().groups, 1);
    assert_eq!(kb.warnings().len(), 1);
    assert!(kb.warnings()[0].contains("skipped group"));
}

#[test]
fn strict_mode_fails_on_noise() {
    let src = "\
#class 1 | A
#section 1 | S
#headgroup 1
#head 1 | H
#pos N.
#para word
word; other
bad | char; noise
";
    let err = parse_corpus(src, ParseOptions { strict: true }).unwrap_err();
    assert!(matches!(err, LexError::Parse { line: 8, .. }));
}

#[test]
fn keyword_must_open_first_group() {
    let src = "\
#class 1 | A
#section 1 | S
#headgroup 1
#head 1 | H
#pos N.
#para word
something else; word
";
    assert!(matches!(
        parse_corpus(src, ParseOptions::default()),
        Err(LexError::Structure { .. })
    ));
}

#[test]
fn pos_blocks_must_follow_canonical_order() {
    let src = "\
#class 1 | A
#section 1 | S
#headgroup 1
#head 1 | H
#pos VB.
#para go
go; leave
#pos N.
#para thing
thing; object
";
    assert!(matches!(
        parse_corpus(src, ParseOptions::default()),
        Err(LexError::Structure { .. })
    ));
}

#[test]
fn duplicate_keyword_within_pos_is_rejected() {
    let src = "\
#class 1 | A
#section 1 | S
#headgroup 1
#head 1 | H
#pos N.
#para word
word; other
#para word
word; third
";
    assert!(matches!(
        parse_corpus(src, ParseOptions::default()),
        Err(LexError::Structure { .. })
    ));
}

#[test]
fn or_abbreviation_expands_at_ingest() {
    let src = "\
#class 1 | A
#section 1 | S
#headgroup 1
#head 1 | H
#pos VB.
#para drop a brick
drop a brick or clanger
";
    let kb = parse_corpus(src, ParseOptions::default()).unwrap();
    let head = kb.get_head(1).unwrap();
    let words: Vec<&str> = head.paragraphs[0]
        .all_words()
        .map(|w| w.text.as_str())
        .collect();
    assert_eq!(words, vec!["drop a brick", "drop a clanger"]);
}

#[test]
fn initial_abbreviation_expands_at_ingest() {
    let src = "\
#class 1 | A
#section 1 | S
#headgroup 1
#head 1 | H
#pos N.
#para weasel word
weasel word; loan w.; nonce w.
";
    let kb = parse_corpus(src, ParseOptions::default()).unwrap();
    let head = kb.get_head(1).unwrap();
    let words: Vec<&str> = head.paragraphs[0]
        .all_words()
        .map(|w| w.text.as_str())
        .collect();
    assert_eq!(words, vec!["weasel word", "loan word", "nonce word"]);
}

#[test]
fn undefined_headgroup_member_warns() {
    let src = "\
#class 1 | A
#section 1 | S
#headgroup 1,2
#head 1 | H
#pos N.
#para word
word; other
";
    let kb = parse_corpus(src, ParseOptions::default()).unwrap();
    assert!(kb.warnings().iter().any(|w| w.contains("never defined")));
}

#[test]
fn headgroup_cannot_span_sections() {
    let src = "\
#class 1 | A
#section 1 | S1
#headgroup 5,6
#head 5 | H5
#pos N.
#para five
five; cinq
#section 2 | S2
#headgroup 5,6
#head 6 | H6
#pos N.
#para six
six; sechs
";
    assert!(matches!(
        parse_corpus(src, ParseOptions::default()),
        Err(LexError::Structure { .. })
    ));
}

#[test]
fn named_then_empty_subsection_round_trips() {
    let src = "\
#class 1 | A
#section 1 | S
#subsection Named
#headgroup 1
#head 1 | First
#pos N.
#para one
one; un
#subsection
#headgroup 2
#head 2 | Second
#pos N.
#para two
two; deux
";
    let kb = parse_corpus(src, ParseOptions::default()).unwrap();
    assert_eq!(kb.get_head(1).unwrap().address.subsection_name, "Named");
    assert_eq!(kb.get_head(2).unwrap().address.subsection_name, "");
    let serialized = serialize_corpus(&kb);
    assert_eq!(serialized, src);
}
