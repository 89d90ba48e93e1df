//! Multiple-choice synonym-question solver and the human-judgment
//! correlation evaluator.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use crate::error::{LexError, Result};
use crate::kb::fold;
use crate::pos::Pos;
use crate::similarity::{Rational, Similarity, MAX_DISTANCE};

/// Distance assigned to a choice with nothing in the index: worse than
/// any real distance so it can never win, while keeping the bookkeeping
/// simple.
const NOT_FOUND_DISTANCE: u32 = MAX_DISTANCE + 1;

/// Phrase tokens ignored when a choice phrase is decomposed.
const SKIP_TOKENS: [&str; 3] = ["and", "to", "be"];

#[derive(Debug, Clone, Serialize)]
pub struct Question {
    pub problem: String,
    pub choices: Vec<String>,
    /// Index of the key; the shipped files put the key first.
    pub answer_index: usize,
}

/// Parses a question file: one `problem | c1 | c2 | c3 | c4` per line,
/// `#` comments allowed.
pub fn parse_question_file(text: &str) -> Result<Vec<Question>> {
    let mut questions = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<String> = line.split('|').map(|f| f.trim().to_string()).collect();
        if fields.len() != 5 || fields.iter().any(|f| f.is_empty()) {
            return Err(LexError::Parse {
                line: idx + 1,
                msg: "expected `problem | c1 | c2 | c3 | c4`".to_string(),
            });
        }
        questions.push(Question {
            problem: fields[0].clone(),
            choices: fields[1..].to_vec(),
            answer_index: 0,
        });
    }
    if questions.is_empty() {
        return Err(LexError::Parse {
            line: 0,
            msg: "question file contains no questions".to_string(),
        });
    }
    Ok(questions)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScoringMode {
    /// Break distance ties by the number of shortest paths; residual ties
    /// fall to the earliest-listed choice.
    #[default]
    PathCountTieBreak,
    /// No path-count tie-break; a k-way distance tie containing the key
    /// scores 1/k.
    PartialCredit,
}

#[derive(Debug, Clone, Serialize)]
pub enum ChoiceOutcome {
    Found {
        length: u32,
        path_count: usize,
        problem_pos: Pos,
        choice_pos: Pos,
    },
    NotFound,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChoiceReport {
    pub text: String,
    pub outcome: ChoiceOutcome,
}

#[derive(Debug, Clone, Serialize)]
pub enum Verdict {
    Correct,
    Incorrect,
    /// Partial-credit mode: k choices tied at the shortest distance, the
    /// key among them.
    Tie {
        k: usize,
        #[serde(serialize_with = "serialize_rational")]
        score: Rational,
    },
    QuestionNotFound,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuestionResult {
    pub question: Question,
    pub choices: Vec<ChoiceReport>,
    pub chosen: Option<usize>,
    pub verdict: Verdict,
    /// A distance tie was resolved by path count.
    pub tie_broken: bool,
    /// Distance and path count both tied; the earliest choice was taken.
    pub residual_tie: bool,
}

#[derive(Debug, Default, Serialize)]
pub struct QuizResult {
    pub results: Vec<QuestionResult>,
    pub correct: usize,
    pub incorrect: usize,
    pub ties_broken: usize,
    pub ties_lost: usize,
    pub residual_ties: usize,
    pub partial_ties: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub score: Rational,
    pub questions_not_found: usize,
    pub answer_words_not_found: usize,
    pub other_words_not_found: usize,
    pub not_found_problems: Vec<String>,
    pub not_found_answers: Vec<String>,
    pub not_found_others: Vec<String>,
}

fn serialize_rational<S: serde::Serializer>(
    r: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(*r.numer() as f64 / *r.denom() as f64)
}

impl QuizResult {
    pub fn question_count(&self) -> usize {
        self.results.len()
    }

    pub fn percent(&self) -> f64 {
        if self.results.is_empty() {
            return 0.0;
        }
        let score = *self.score.numer() as f64 / *self.score.denom() as f64;
        100.0 * score / self.results.len() as f64
    }
}

/// Evaluation of one choice against the problem word.
fn evaluate_choice(sim: &Similarity<'_>, problem: &str, choice: &str) -> ChoiceOutcome {
    if let Ok(set) = sim.all_paths(problem, choice, None) {
        let best = set.min_path();
        return ChoiceOutcome::Found {
            length: set.min_length,
            path_count: set.min_path_count,
            problem_pos: best.ref1.sense.pos,
            choice_pos: best.ref2.sense.pos,
        };
    }
    // Unit lookup failed: decompose the phrase, ignoring the conjunction
    // "and", the preposition "to" and the verb "be".
    let mut best: Option<(u32, usize, Pos, Pos)> = None;
    for token in choice.split_whitespace() {
        let token = token.trim_matches(|c: char| !c.is_alphanumeric() && c != '-' && c != '\'');
        if token.is_empty() || SKIP_TOKENS.contains(&fold(token).as_str()) {
            continue;
        }
        if let Ok(set) = sim.all_paths(problem, token, None) {
            let min = set.min_length;
            let path = set.min_path();
            let candidate = (
                min,
                set.min_path_count,
                path.ref1.sense.pos,
                path.ref2.sense.pos,
            );
            best = match best {
                Some(cur) if cur.0 <= min => Some(cur),
                _ => Some(candidate),
            };
        }
    }
    match best {
        Some((length, path_count, problem_pos, choice_pos)) => ChoiceOutcome::Found {
            length,
            path_count,
            problem_pos,
            choice_pos,
        },
        None => ChoiceOutcome::NotFound,
    }
}

/// The shortest distance between a problem word and a phrase that is not
/// in the index as a unit: the minimum over the phrase's individual
/// words, skipping "and", "to" and "be". A phrase with nothing indexed
/// scores the maximum distance.
pub fn phrase_distance(sim: &Similarity<'_>, problem: &str, phrase: &str) -> u32 {
    match evaluate_choice(sim, problem, phrase) {
        ChoiceOutcome::Found { length, .. } => length,
        ChoiceOutcome::NotFound => MAX_DISTANCE,
    }
}

/// Answers one question: shortest distance wins, ties broken by the most
/// shortest-length paths, residual ties by listing order.
pub fn answer(sim: &Similarity<'_>, question: &Question, mode: ScoringMode) -> QuestionResult {
    if sim.index().lookup(&question.problem).is_empty() {
        return QuestionResult {
            question: question.clone(),
            choices: Vec::new(),
            chosen: None,
            verdict: Verdict::QuestionNotFound,
            tie_broken: false,
            residual_tie: false,
        };
    }

    let choices: Vec<ChoiceReport> = question
        .choices
        .iter()
        .map(|c| ChoiceReport {
            text: c.clone(),
            outcome: evaluate_choice(sim, &question.problem, c),
        })
        .collect();

    let lengths: Vec<u32> = choices
        .iter()
        .map(|c| match c.outcome {
            ChoiceOutcome::Found { length, .. } => length,
            ChoiceOutcome::NotFound => NOT_FOUND_DISTANCE,
        })
        .collect();
    let min = *lengths.iter().min().expect("four choices");

    if min == NOT_FOUND_DISTANCE {
        return QuestionResult {
            question: question.clone(),
            choices,
            chosen: None,
            verdict: Verdict::Incorrect,
            tie_broken: false,
            residual_tie: false,
        };
    }

    let tied: Vec<usize> = (0..choices.len()).filter(|&i| lengths[i] == min).collect();

    let (chosen, verdict, tie_broken, residual_tie) = if tied.len() == 1 {
        let chosen = tied[0];
        let verdict = if chosen == question.answer_index {
            Verdict::Correct
        } else {
            Verdict::Incorrect
        };
        (chosen, verdict, false, false)
    } else {
        match mode {
            ScoringMode::PartialCredit => {
                let chosen = tied[0];
                let verdict = if tied.contains(&question.answer_index) {
                    Verdict::Tie {
                        k: tied.len(),
                        score: Rational::new(1, tied.len() as i64),
                    }
                } else {
                    Verdict::Incorrect
                };
                (chosen, verdict, false, false)
            }
            ScoringMode::PathCountTieBreak => {
                let count_of = |i: usize| match choices[i].outcome {
                    ChoiceOutcome::Found { path_count, .. } => path_count,
                    ChoiceOutcome::NotFound => 0,
                };
                let max_count = tied.iter().map(|&i| count_of(i)).max().unwrap();
                let best: Vec<usize> = tied
                    .iter()
                    .copied()
                    .filter(|&i| count_of(i) == max_count)
                    .collect();
                let chosen = best[0];
                let verdict = if chosen == question.answer_index {
                    Verdict::Correct
                } else {
                    Verdict::Incorrect
                };
                (chosen, verdict, best.len() == 1, best.len() > 1)
            }
        }
    };

    QuestionResult {
        question: question.clone(),
        choices,
        chosen: Some(chosen),
        verdict,
        tie_broken,
        residual_tie,
    }
}

/// Runs a whole question set and aggregates the bookkeeping.
pub fn run_quiz(sim: &Similarity<'_>, questions: &[Question], mode: ScoringMode) -> QuizResult {
    let mut out = QuizResult {
        score: Rational::new(0, 1),
        ..QuizResult::default()
    };
    for question in questions {
        let result = answer(sim, question, mode);
        match &result.verdict {
            Verdict::Correct => {
                out.correct += 1;
                out.score += Rational::new(1, 1);
                if result.tie_broken {
                    out.ties_broken += 1;
                }
            }
            Verdict::Incorrect => {
                out.incorrect += 1;
                if result.tie_broken {
                    out.ties_lost += 1;
                }
            }
            Verdict::Tie { score, .. } => {
                out.partial_ties += 1;
                out.score += *score;
            }
            Verdict::QuestionNotFound => {
                out.questions_not_found += 1;
                out.not_found_problems.push(question.problem.clone());
            }
        }
        if result.residual_tie {
            out.residual_ties += 1;
        }
        for (i, choice) in result.choices.iter().enumerate() {
            if matches!(choice.outcome, ChoiceOutcome::NotFound) {
                if i == question.answer_index {
                    out.answer_words_not_found += 1;
                    out.not_found_answers.push(choice.text.clone());
                } else {
                    out.other_words_not_found += 1;
                    out.not_found_others.push(choice.text.clone());
                }
            }
        }
        out.results.push(result);
    }
    out
}

/// Formats a score: whole numbers plain, fractions to two decimals with a
/// trailing zero trimmed (63, 17.5, 62.33).
pub fn format_score(r: Rational) -> String {
    let value = *r.numer() as f64 / *r.denom() as f64;
    if r.is_integer() {
        return format!("{}", r.numer());
    }
    let mut s = format!("{value:.2}");
    if s.ends_with('0') {
        s.pop();
    }
    s
}

/// Text report in the printed output shape: per-choice path lines, the
/// verdict, and the summary footer.
pub fn render_text(result: &QuizResult) -> String {
    let mut out = String::new();
    for (qi, r) in result.results.iter().enumerate() {
        let _ = writeln!(out, "Question {}", qi + 1);
        let _ = writeln!(out);
        let mut fields = vec![r.question.problem.clone()];
        fields.extend(r.question.choices.iter().cloned());
        let _ = writeln!(out, "{}", fields.join(" | "));
        if matches!(r.verdict, Verdict::QuestionNotFound) {
            let _ = writeln!(
                out,
                "{} (PROBLEM) not found in the index!!",
                r.question.problem
            );
            let _ = writeln!(out);
            continue;
        }
        for (i, choice) in r.choices.iter().enumerate() {
            match &choice.outcome {
                ChoiceOutcome::Found {
                    length,
                    path_count,
                    problem_pos,
                    choice_pos,
                } => {
                    let _ = writeln!(
                        out,
                        "{} {} to {} {}, length = {}, {} path(s) of this length",
                        r.question.problem,
                        problem_pos,
                        choice.text,
                        choice_pos,
                        length,
                        path_count
                    );
                }
                ChoiceOutcome::NotFound => {
                    if i == r.question.answer_index {
                        let _ = writeln!(out, "{} (ANSWER) is NOT IN THE INDEX", choice.text);
                    } else {
                        let _ = writeln!(out, "{} is NOT IN THE INDEX", choice.text);
                    }
                }
            }
        }
        if let Some(chosen) = r.chosen {
            let _ = writeln!(
                out,
                "Roget thinks that {} means {}",
                r.question.problem, r.question.choices[chosen]
            );
        }
        match &r.verdict {
            Verdict::Correct => {
                if r.tie_broken {
                    let _ = writeln!(out, "TIE BROKEN");
                }
                let _ = writeln!(out, "CORRECT");
            }
            Verdict::Incorrect => {
                if r.tie_broken {
                    let _ = writeln!(out, "TIE LOST");
                }
                let _ = writeln!(out, "INCORRECT");
            }
            Verdict::Tie { k, score } => {
                let _ = writeln!(out, "TIE: {k} words tied for the shortest distance");
                let _ = writeln!(out, "PARTIAL SCORE: 1/{}", score.denom());
            }
            Verdict::QuestionNotFound => {}
        }
        let _ = writeln!(out);
    }

    let _ = writeln!(
        out,
        "Final score: {}/{}. {} ties broken, {} ties lost.",
        format_score(result.score),
        result.question_count(),
        result.ties_broken,
        result.ties_lost
    );
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "Question word not in index: {} times.",
        result.questions_not_found
    );
    let _ = writeln!(
        out,
        "Answer word not in index: {} times.",
        result.answer_words_not_found
    );
    let _ = writeln!(
        out,
        "Other word not in index: {} times.",
        result.other_words_not_found
    );
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "The following question words were not found in Roget: [{}]",
        result.not_found_problems.join(", ")
    );
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "The following answer words were not found in Roget: [{}]",
        result.not_found_answers.join(", ")
    );
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "Other words that were not found in Roget: [{}]",
        result.not_found_others.join(", ")
    );
    out
}

/// JSON summary of a quiz run.
pub fn render_json(result: &QuizResult) -> serde_json::Value {
    json!({
        "questions": result.results.iter().map(|r| {
            json!({
                "problem": r.question.problem,
                "choices": r.question.choices,
                "chosen": r.chosen,
                "verdict": match &r.verdict {
                    Verdict::Correct => "correct",
                    Verdict::Incorrect => "incorrect",
                    Verdict::Tie { .. } => "tie",
                    Verdict::QuestionNotFound => "question_not_found",
                },
                "tie_broken": r.tie_broken,
                "residual_tie": r.residual_tie,
            })
        }).collect::<Vec<_>>(),
        "correct": result.correct,
        "incorrect": result.incorrect,
        "ties_broken": result.ties_broken,
        "ties_lost": result.ties_lost,
        "residual_ties": result.residual_ties,
        "partial_ties": result.partial_ties,
        "score": *result.score.numer() as f64 / *result.score.denom() as f64,
        "percent": result.percent(),
        "questions_not_found": result.questions_not_found,
        "answer_words_not_found": result.answer_words_not_found,
        "other_words_not_found": result.other_words_not_found,
    })
}

/// Word-pair rows with human similarity judgments.
#[derive(Debug, Clone, Default)]
pub struct JudgmentDataset {
    pub rows: Vec<(String, String, f64)>,
}

impl JudgmentDataset {
    /// Parses CSV rows `word1,word2,score`; `#` comments allowed.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(|f| f.trim()).collect();
            let parsed = if fields.len() == 3 {
                fields[2]
                    .parse::<f64>()
                    .ok()
                    .map(|s| (fields[0], fields[1], s))
            } else {
                None
            };
            match parsed {
                Some((w1, w2, score)) if !w1.is_empty() && !w2.is_empty() => {
                    rows.push((w1.to_string(), w2.to_string(), score));
                }
                _ => {
                    return Err(LexError::Parse {
                        line: idx + 1,
                        msg: "expected `word1,word2,score`".to_string(),
                    })
                }
            }
        }
        Ok(JudgmentDataset { rows })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorrelationReport {
    pub r: f64,
    pub pairs: usize,
    pub pairs_not_found: usize,
    pub not_found: Vec<(String, String)>,
}

/// Pearson product-moment correlation between two samples.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        cov += (x - mean_x) * (y - mean_y);
        var_x += (x - mean_x) * (x - mean_x);
        var_y += (y - mean_y) * (y - mean_y);
    }
    if var_x == 0.0 || var_y == 0.0 {
        return Err(LexError::UndefinedCorrelation(
            "zero variance on one axis".to_string(),
        ));
    }
    Ok(cov / (var_x.sqrt() * var_y.sqrt()))
}

/// Correlates the similarity of each pair with the human judgments. Pairs
/// with either word missing from the index score zero similarity and are
/// counted separately.
pub fn correlate(sim: &Similarity<'_>, dataset: &JudgmentDataset) -> Result<CorrelationReport> {
    if dataset.rows.len() < 3 {
        return Err(LexError::Config(
            "correlation needs at least 3 rows".to_string(),
        ));
    }
    let mut xs = Vec::with_capacity(dataset.rows.len());
    let mut ys = Vec::with_capacity(dataset.rows.len());
    let mut not_found = Vec::new();
    for (w1, w2, human) in &dataset.rows {
        let value = match sim.sim1(w1, w2) {
            Ok(v) => v as f64,
            Err(_) => {
                not_found.push((w1.clone(), w2.clone()));
                0.0
            }
        };
        xs.push(value);
        ys.push(*human);
    }
    Ok(CorrelationReport {
        r: pearson(&xs, &ys)?,
        pairs: dataset.rows.len(),
        pairs_not_found: not_found.len(),
        not_found,
    })
}
