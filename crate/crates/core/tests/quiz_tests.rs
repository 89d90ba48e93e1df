mod common;

use common::*;
use lexkb_core::quiz::{
    answer, correlate, parse_question_file, pearson, phrase_distance, render_text, run_quiz,
    JudgmentDataset, Question, ScoringMode, Verdict,
};
use lexkb_core::similarity::{Rational, Similarity};
use lexkb_core::LexError;

fn quiz_questions(name: &str) -> Vec<Question> {
    parse_question_file(&fixture_text(name)).unwrap()
}

const TEN_QUESTION_REPORT: &str = include_str!("goldens/quiz_ten.txt");

#[test]
fn ode_question_selects_poem() {
    let (kb, index) = load_kb_index("quiz.kbt");
    let sim = Similarity::new(&kb, &index);
    let question = Question {
        problem: "ode".into(),
        choices: vec![
            "poem".into(),
            "heavy debt".into(),
            "sweet smell".into(),
            "surprise".into(),
        ],
        answer_index: 0,
    };
    let result = answer(&sim, &question, ScoringMode::default());
    assert_eq!(result.chosen, Some(0));
    assert!(matches!(result.verdict, Verdict::Correct));
}

#[test]
fn problem_identical_to_choice_wins_at_distance_zero() {
    let (kb, index) = load_kb_index("quiz.kbt");
    let sim = Similarity::new(&kb, &index);
    let question = Question {
        problem: "poem".into(),
        choices: vec!["poem".into(), "drama".into(), "smell".into(), "debt".into()],
        answer_index: 0,
    };
    let result = answer(&sim, &question, ScoringMode::default());
    assert_eq!(result.chosen, Some(0));
    assert!(matches!(result.verdict, Verdict::Correct));
}

#[test]
fn ten_question_report_is_byte_exact() {
    let (kb, index) = load_kb_index("quiz.kbt");
    let sim = Similarity::new(&kb, &index);
    let questions = quiz_questions("questions_ten.txt");
    assert_eq!(questions.len(), 10);
    let result = run_quiz(&sim, &questions, ScoringMode::default());
    assert_eq!(render_text(&result), TEN_QUESTION_REPORT);
    assert_eq!(result.correct, 6);
    assert_eq!(result.incorrect, 3);
    assert_eq!(result.ties_broken, 1);
    assert_eq!(result.ties_lost, 1);
    assert_eq!(result.residual_ties, 1);
    assert_eq!(result.questions_not_found, 1);
    assert_eq!(result.answer_words_not_found, 1);
    assert_eq!(result.other_words_not_found, 2);
    assert_eq!(result.score, Rational::new(6, 1));
    assert!((result.percent() - 60.0).abs() < 1e-12);
}

#[test]
fn verdicts_partition_the_question_count() {
    let (kb, index) = load_kb_index("quiz.kbt");
    let sim = Similarity::new(&kb, &index);
    let questions = quiz_questions("questions_ten.txt");
    let result = run_quiz(&sim, &questions, ScoringMode::default());
    assert_eq!(
        result.correct + result.incorrect + result.partial_ties + result.questions_not_found,
        result.question_count()
    );
}

#[test]
fn three_question_fixture_verdicts() {
    let (kb, index) = load_kb_index("quiz.kbt");
    let sim = Similarity::new(&kb, &index);
    let questions = quiz_questions("questions_three.txt");
    let result = run_quiz(&sim, &questions, ScoringMode::default());
    let verdicts: Vec<&Verdict> = result.results.iter().map(|r| &r.verdict).collect();
    assert!(matches!(verdicts[0], Verdict::Correct));
    assert!(matches!(verdicts[1], Verdict::Incorrect));
    assert!(matches!(verdicts[2], Verdict::QuestionNotFound));
    assert_eq!(result.score, Rational::new(1, 1));
}

#[test]
fn partial_credit_assigns_half_third_quarter() {
    let (kb, index) = load_kb_index("quiz.kbt");
    let sim = Similarity::new(&kb, &index);
    let questions = quiz_questions("questions_ties.txt");
    let result = run_quiz(&sim, &questions, ScoringMode::PartialCredit);
    let scores: Vec<Rational> = result
        .results
        .iter()
        .map(|r| match &r.verdict {
            Verdict::Tie { score, .. } => *score,
            other => panic!("expected tie, got {other:?}"),
        })
        .collect();
    assert_eq!(
        scores,
        vec![
            Rational::new(1, 2),
            Rational::new(1, 3),
            Rational::new(1, 4)
        ]
    );
    assert_eq!(result.score, Rational::new(13, 12));
    assert_eq!(result.partial_ties, 3);
    let text = render_text(&result);
    assert!(text.contains("Final score: 1.08/3. 0 ties broken, 0 ties lost."));
}

#[test]
fn default_mode_matches_zero_tie_bookkeeping() {
    // Path-count tie-breaking leaves no partial scores, so the score is
    // an integer count of correct answers.
    let (kb, index) = load_kb_index("quiz.kbt");
    let sim = Similarity::new(&kb, &index);
    let questions = quiz_questions("questions_ten.txt");
    let result = run_quiz(&sim, &questions, ScoringMode::default());
    assert_eq!(result.partial_ties, 0);
    assert!(result.score.is_integer());
}

#[test]
fn phrase_distance_equals_distance_for_single_indexed_word() {
    let (kb, index) = load_kb_index("quiz.kbt");
    let sim = Similarity::new(&kb, &index);
    assert_eq!(phrase_distance(&sim, "ode", "poem"), 2);
    assert_eq!(
        phrase_distance(&sim, "ode", "poem"),
        sim.distance("ode", "poem").unwrap()
    );
}

#[test]
fn phrase_distance_skips_and_to_be() {
    let (kb, index) = load_kb_index("quiz.kbt");
    let sim = Similarity::new(&kb, &index);
    assert_eq!(phrase_distance(&sim, "climb", "rise and fall"), 0);
    assert_eq!(phrase_distance(&sim, "spur", "to urge"), 0);
    // Nothing comparable is left once the skip tokens go.
    assert_eq!(phrase_distance(&sim, "climb", "to be"), 16);
}

#[test]
fn empty_question_file_is_an_error() {
    assert!(matches!(
        parse_question_file("# only a comment\n"),
        Err(LexError::Parse { .. })
    ));
}

#[test]
fn correlate_linear_and_anti_linear() {
    let (kb, index) = load_kb_index("quiz.kbt");
    let sim = Similarity::new(&kb, &index);
    // Same-group pairs score 16, cross-class pairs 0: similarity tracks
    // the synthetic judgments exactly (r = 1) or inversely (r = -1).
    let linear = JudgmentDataset {
        rows: vec![
            ("poem".into(), "verse".into(), 4.0),
            ("ode".into(), "debt".into(), 1.0),
            ("poem".into(), "smell".into(), 1.0),
            ("ode".into(), "lyric".into(), 4.0),
        ],
    };
    let report = correlate(&sim, &linear).unwrap();
    assert!((report.r - 1.0).abs() < 1e-12);

    let anti = JudgmentDataset {
        rows: vec![
            ("poem".into(), "verse".into(), 1.0),
            ("ode".into(), "debt".into(), 4.0),
            ("poem".into(), "smell".into(), 4.0),
            ("ode".into(), "lyric".into(), 1.0),
        ],
    };
    let report = correlate(&sim, &anti).unwrap();
    assert!((report.r + 1.0).abs() < 1e-12);
}

#[test]
fn correlate_counts_missing_pairs_and_scores_them_zero() {
    let (kb, index) = load_kb_index("quiz.kbt");
    let sim = Similarity::new(&kb, &index);
    let dataset = JudgmentDataset {
        rows: vec![
            ("poem".into(), "verse".into(), 4.0),
            ("qwzzk".into(), "poem".into(), 2.0),
            ("ode".into(), "drama".into(), 1.0),
        ],
    };
    let report = correlate(&sim, &dataset).unwrap();
    assert_eq!(report.pairs_not_found, 1);
    assert_eq!(
        report.not_found,
        vec![("qwzzk".to_string(), "poem".to_string())]
    );
}

#[test]
fn five_row_set_matches_direct_formula() {
    let (kb, index) = load_kb_index("quiz.kbt");
    let sim = Similarity::new(&kb, &index);
    let rows = vec![
        ("poem".into(), "verse".into(), 3.9),
        ("ode".into(), "lyric".into(), 3.5),
        ("poem".into(), "debt".into(), 1.2),
        ("ode".into(), "smell".into(), 0.3),
        ("climb".into(), "rise".into(), 3.7),
    ];
    let dataset = JudgmentDataset { rows: rows.clone() };
    let report = correlate(&sim, &dataset).unwrap();

    // Independent direct-formula evaluation.
    let xs: Vec<f64> = rows
        .iter()
        .map(|(a, b, _)| sim.sim1(a, b).unwrap() as f64)
        .collect();
    let ys: Vec<f64> = rows.iter().map(|(_, _, s)| *s).collect();
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let syy: f64 = ys.iter().map(|y| y * y).sum();
    let expected = (n * sxy - sx * sy) / ((n * sxx - sx * sx).sqrt() * (n * syy - sy * sy).sqrt());
    assert!((report.r - expected).abs() < 1e-12);
}

#[test]
fn correlation_is_invariant_under_affine_transform_and_axis_order() {
    let xs = [1.0, 4.0, 2.0, 8.0, 5.0];
    let ys = [2.0, 3.0, 1.0, 9.0, 4.0];
    let r = pearson(&xs, &ys).unwrap();
    let scaled: Vec<f64> = ys.iter().map(|y| 3.0 * y + 7.0).collect();
    assert!((pearson(&xs, &scaled).unwrap() - r).abs() < 1e-12);
    assert!((pearson(&ys, &xs).unwrap() - r).abs() < 1e-12);
}

#[test]
fn judgment_dataset_parses_csv() {
    let dataset = JudgmentDataset::from_csv(&fixture_text("judgments_linear.csv")).unwrap();
    assert_eq!(dataset.rows.len(), 3);
    assert_eq!(dataset.rows[0].0, "alpha");
    assert!(JudgmentDataset::from_csv("a,b\n").is_err());
}

#[test]
fn answer_is_invariant_under_similarity_transform() {
    // argmin distance = argmax sim1 = argmax sim2 over any candidate set:
    // replacing the comparison metric never changes the winning choice.
    let (kb, index) = load_kb_index("quiz.kbt");
    let sim = Similarity::new(&kb, &index);
    let questions = quiz_questions("questions_ten.txt");
    for question in &questions {
        let result = answer(&sim, question, ScoringMode::default());
        if result.chosen.is_none() {
            continue;
        }
        let lengths: Vec<u32> = result
            .choices
            .iter()
            .map(|c| match c.outcome {
                lexkb_core::quiz::ChoiceOutcome::Found { length, .. } => length,
                lexkb_core::quiz::ChoiceOutcome::NotFound => 17,
            })
            .collect();
        let argmin_d: Vec<usize> = {
            let min = *lengths.iter().min().unwrap();
            (0..lengths.len()).filter(|&i| lengths[i] == min).collect()
        };
        let sim1: Vec<i64> = lengths.iter().map(|&d| 16 - d as i64).collect();
        let argmax_s1: Vec<usize> = {
            let max = *sim1.iter().max().unwrap();
            (0..sim1.len()).filter(|&i| sim1[i] == max).collect()
        };
        let sim2: Vec<Rational> = lengths
            .iter()
            .map(|&d| Rational::new(1, 1 + d as i64))
            .collect();
        let argmax_s2: Vec<usize> = {
            let max = *sim2.iter().max().unwrap();
            (0..sim2.len()).filter(|&i| sim2[i] == max).collect()
        };
        assert_eq!(argmin_d, argmax_s1);
        assert_eq!(argmin_d, argmax_s2);
        assert!(argmin_d.contains(&result.chosen.unwrap()));
    }
}
