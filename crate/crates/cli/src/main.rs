//! Command-line front end: ingest, lookup, distance, paths, quiz,
//! chains, align and stats over a knowledge-base directory.

use std::fs;
use std::io::{BufRead, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use lexkb_core::align::{
    align_word, build_mininets, label_paragraph, merge_mininets, AlignOptions, SynsetDump, Weights,
};
use lexkb_core::chains::{build_chains, render_chains, render_chains_json, ChainScoreTable};
use lexkb_core::index::{Index, IndexOptions, LexicalData};
use lexkb_core::ingest::{parse_corpus, ParseOptions};
use lexkb_core::quiz::{parse_question_file, render_json, render_text, run_quiz, ScoringMode};
use lexkb_core::similarity::{render_path_listing, Similarity};
use lexkb_core::{KnowledgeBase, LexError, Paragraph, Pos};

#[derive(Parser)]
#[command(name = "lexkb", version, about = "Lexical knowledge-base engine")]
struct Cli {
    /// Knowledge-base directory holding .kbt corpus files.
    /// Defaults to $LEXKB_HOME.
    #[arg(long, global = true)]
    kb: Option<PathBuf>,

    /// Directory with the word lists (ambr.tsv, stoplist.txt, exc/).
    #[arg(long, global = true, default_value = "data")]
    data: PathBuf,

    /// Output format.
    #[arg(long, global = true, default_value = "text", value_parser = ["text", "json"])]
    format: String,

    /// Restrict queries to one part-of-speech.
    #[arg(long, global = true, value_parser = ["N.", "ADJ.", "VB.", "ADV.", "INT."])]
    pos: Option<String>,

    /// Do not index two-word phrases under their constituent words.
    #[arg(long, global = true)]
    no_phrase_split: bool,

    /// Menu-driven interaction on stdin.
    #[arg(long, global = true)]
    interactive: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a corpus file, reporting counts and warnings.
    Ingest(IngestArgs),
    /// Look up a word or phrase and display its paragraphs.
    Lookup { word: String },
    /// Shortest taxonomy distance between two words or phrases.
    Distance { word1: String, word2: String },
    /// Every taxonomy path between two words or phrases.
    Paths { word1: String, word2: String },
    /// Answer a multiple-choice synonym question file.
    Quiz(QuizArgs),
    /// Build lexical chains over a text file.
    Chains { file: PathBuf },
    /// Align words to an external synset network.
    Align(AlignArgs),
    /// Census of the loaded knowledge base.
    Stats,
}

#[derive(Args)]
struct IngestArgs {
    file: PathBuf,
    /// Fail on noisy input instead of skipping it with a warning.
    #[arg(long)]
    strict: bool,
    /// Emit head/paragraph/group/word counts.
    #[arg(long)]
    stats: bool,
}

#[derive(Args)]
struct QuizArgs {
    file: PathBuf,
    /// Score k-way distance ties as 1/k instead of breaking them by path
    /// count.
    #[arg(long)]
    partial_credit: bool,
}

#[derive(Args)]
struct AlignArgs {
    /// Word to align; use --file for a batch of words.
    word: Option<String>,
    /// File with one word per line.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Synset network dump.
    #[arg(long)]
    dump: PathBuf,
    /// Emit the full score matrix instead of the global maximum.
    #[arg(long)]
    all_cells: bool,
    /// Keep only the lowest (head, synset) cell on ties.
    #[arg(long)]
    one_best: bool,
    /// Also print each aligned paragraph with relation labels.
    #[arg(long)]
    label: bool,
}

fn read_file(path: &Path) -> Result<String, LexError> {
    fs::read_to_string(path).map_err(|e| LexError::io(path.display().to_string(), e))
}

fn exit_code_for(err: &LexError) -> u8 {
    match err {
        LexError::WordNotFound { .. }
        | LexError::HeadNotFound(_)
        | LexError::DanglingReference(_)
        | LexError::WordNotInParagraph { .. } => 1,
        _ => 2,
    }
}

struct Engine {
    kb: KnowledgeBase,
    index: Index,
}

impl Engine {
    fn load(cli: &Cli) -> Result<Engine, LexError> {
        let kb_dir = cli
            .kb
            .clone()
            .or_else(|| std::env::var_os("LEXKB_HOME").map(PathBuf::from))
            .ok_or_else(|| {
                LexError::Config("no knowledge base: pass --kb DIR or set LEXKB_HOME".into())
            })?;
        let mut sources: Vec<PathBuf> = fs::read_dir(&kb_dir)
            .map_err(|e| LexError::io(kb_dir.display().to_string(), e))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "kbt"))
            .collect();
        sources.sort();
        if sources.is_empty() {
            return Err(LexError::Config(format!(
                "no .kbt corpus files in {}",
                kb_dir.display()
            )));
        }
        let mut text = String::new();
        for path in &sources {
            text.push_str(&read_file(path)?);
        }
        let kb = parse_corpus(&text, ParseOptions::default())?;
        for warning in kb.warnings() {
            eprintln!("warning: {warning}");
        }
        let data = LexicalData::from_dir(&cli.data)?;
        let index = Index::build(
            &kb,
            data,
            IndexOptions {
                phrase_split: !cli.no_phrase_split,
            },
        );
        Ok(Engine { kb, index })
    }

    fn sim(&self) -> Similarity<'_> {
        Similarity::new(&self.kb, &self.index)
    }
}

fn pos_filter(cli: &Cli) -> Option<Pos> {
    cli.pos
        .as_deref()
        .map(|p| p.parse().expect("validated by clap"))
}

/// Renders one paragraph on one line, groups joined by semicolons, the
/// group at `highlight` wrapped in `**`.
fn render_paragraph(paragraph: &Paragraph, highlight: Option<usize>) -> String {
    let groups: Vec<String> = paragraph
        .groups
        .iter()
        .enumerate()
        .map(|(gi, group)| {
            let rendered = lexkb_core::align::render_group(group);
            if highlight == Some(gi) {
                format!("**{rendered}**")
            } else {
                rendered
            }
        })
        .collect();
    format!(
        "{} {}\n{}",
        paragraph.sense.pos,
        paragraph.sense.keyword,
        groups.join("; ")
    )
}

fn cmd_lookup(cli: &Cli, engine: &Engine, word: &str) -> Result<(), LexError> {
    let hits = match pos_filter(cli) {
        Some(pos) => engine.index.lookup_pos(word, pos),
        None => engine.index.lookup(word),
    };
    if hits.is_empty() {
        return Err(LexError::WordNotFound {
            word: word.to_string(),
        });
    }
    let expansions = engine.index.expansions(word);
    let forms: Vec<&str> = expansions.iter().map(|s| s.as_str()).collect();
    if cli.format == "json" {
        let entries: Vec<serde_json::Value> = hits
            .iter()
            .map(|hit| {
                let paragraph = engine.kb.resolve(&hit.reference.sense).unwrap();
                json!({
                    "surface": hit.surface,
                    "keyword": hit.reference.sense.keyword,
                    "head": hit.reference.sense.head_num,
                    "pos": hit.reference.sense.pos.label(),
                    "group": paragraph.locate_any(&forms),
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({ "word": word, "references": entries })).unwrap()
        );
        return Ok(());
    }
    println!("** {word} **");
    for (i, hit) in hits.iter().enumerate() {
        println!("{}. {}", i + 1, hit.reference);
    }
    for hit in &hits {
        let paragraph = engine.kb.resolve(&hit.reference.sense)?;
        let highlight = paragraph.locate_any(&forms);
        println!();
        println!("===== Head {} =====", hit.reference.sense.head_num);
        println!("{}", render_paragraph(paragraph, highlight));
    }
    Ok(())
}

fn cmd_distance(cli: &Cli, engine: &Engine, w1: &str, w2: &str) -> Result<(), LexError> {
    let set = engine.sim().all_paths(w1, w2, pos_filter(cli))?;
    if cli.format == "json" {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "word1": w1, "word2": w2,
                "distance": set.min_length,
                "min_path_count": set.min_path_count,
            }))
            .unwrap()
        );
    } else {
        println!("{}", set.min_length);
    }
    Ok(())
}

fn cmd_paths(cli: &Cli, engine: &Engine, w1: &str, w2: &str) -> Result<(), LexError> {
    let set = engine.sim().all_paths(w1, w2, pos_filter(cli))?;
    if cli.format == "json" {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "word1": set.word1,
                "word2": set.word2,
                "min_length": set.min_length,
                "min_path_count": set.min_path_count,
                "paths": set.paths.iter().map(|p| json!({
                    "ref1": p.ref1.to_string(),
                    "ref2": p.ref2.to_string(),
                    "length": p.length,
                    "chain": p.chain,
                })).collect::<Vec<_>>(),
            }))
            .unwrap()
        );
    } else {
        print!("{}", render_path_listing(&set));
    }
    Ok(())
}

fn cmd_quiz(cli: &Cli, engine: &Engine, args: &QuizArgs) -> Result<(), LexError> {
    let questions = parse_question_file(&read_file(&args.file)?)?;
    let mode = if args.partial_credit {
        ScoringMode::PartialCredit
    } else {
        ScoringMode::PathCountTieBreak
    };
    let result = run_quiz(&engine.sim(), &questions, mode);
    if cli.format == "json" {
        println!(
            "{}",
            serde_json::to_string_pretty(&render_json(&result)).unwrap()
        );
    } else {
        print!("{}", render_text(&result));
    }
    Ok(())
}

fn cmd_chains(cli: &Cli, engine: &Engine, file: &Path) -> Result<(), LexError> {
    let text = read_file(file)?;
    let table = ChainScoreTable::default();
    let (finals, stats) = build_chains(&text, &engine.index, &table);
    if cli.format == "json" {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "candidates": stats.candidates,
                "chains": render_chains_json(&finals),
            }))
            .unwrap()
        );
    } else {
        print!("{}", render_chains(&finals));
    }
    Ok(())
}

fn cmd_align(cli: &Cli, engine: &Engine, args: &AlignArgs) -> Result<(), LexError> {
    let dump = SynsetDump::parse(&read_file(&args.dump)?)?;
    let mut words: Vec<String> = Vec::new();
    if let Some(word) = &args.word {
        words.push(word.clone());
    }
    if let Some(file) = &args.file {
        words.extend(
            read_file(file)?
                .lines()
                .map(|l| l.trim().to_string())
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
        );
    }
    if words.is_empty() {
        return Err(LexError::Config("align needs a word or --file".into()));
    }
    let opts = AlignOptions {
        all_cells: args.all_cells,
        one_best: args.one_best,
    };
    let mut rows = Vec::new();
    for word in &words {
        let cells = align_word(
            word,
            &engine.kb,
            &engine.index,
            &dump,
            Weights::default(),
            opts,
        )?;
        if cells.is_empty() {
            eprintln!("note: no alignment for {word:?}");
        }
        for cell in cells {
            rows.push((word.clone(), cell));
        }
    }
    if cli.format == "json" {
        let value: Vec<serde_json::Value> = rows
            .iter()
            .map(|(word, cell)| {
                json!({
                    "word": word,
                    "head": cell.sense.head_num,
                    "keyword": cell.sense.keyword,
                    "pos": cell.sense.pos.label(),
                    "synset": cell.synset_id,
                    "score": cell.score,
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        for (word, cell) in &rows {
            println!(
                "{word}\t{}\t{}\t{}\t{}\t{}",
                cell.sense.head_num,
                cell.sense.keyword,
                cell.sense.pos.label(),
                cell.synset_id,
                cell.score
            );
        }
    }
    if args.label {
        let data = engine.index.data();
        for (word, cell) in &rows {
            let paragraph = engine.kb.resolve(&cell.sense)?;
            let nets = build_mininets(word, &dump, None);
            if let Some(merged) = merge_mininets(&nets) {
                let labels = label_paragraph(paragraph, &merged, &data.morph);
                println!();
                print!(
                    "{}",
                    lexkb_core::align::render_labeled_paragraph(paragraph, &labels)
                );
            }
        }
    }
    Ok(())
}

fn cmd_stats(cli: &Cli, engine: &Engine) -> Result<(), LexError> {
    let stats = engine.kb.stats();
    if cli.format == "json" {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "classes": stats.classes,
                "sections": stats.sections,
                "heads": stats.heads,
                "paragraphs": stats.paragraphs,
                "groups": stats.groups,
                "words": stats.words,
                "index_entries": engine.index.entry_count(),
                "index_references": engine.index.reference_count(),
            }))
            .unwrap()
        );
    } else {
        println!("classes: {}", stats.classes);
        println!("sections: {}", stats.sections);
        println!("heads: {}", stats.heads);
        println!("paragraphs: {}", stats.paragraphs);
        println!("semicolon groups: {}", stats.groups);
        println!("words and phrases: {}", stats.words);
        println!("index entries: {}", engine.index.entry_count());
        println!("index references: {}", engine.index.reference_count());
    }
    Ok(())
}

fn cmd_ingest(cli: &Cli, args: &IngestArgs) -> Result<(), LexError> {
    let text = read_file(&args.file)?;
    let kb = parse_corpus(
        &text,
        ParseOptions {
            strict: args.strict,
        },
    )?;
    let stats = kb.stats();
    if cli.format == "json" {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "file": args.file.display().to_string(),
                "heads": stats.heads,
                "paragraphs": stats.paragraphs,
                "groups": stats.groups,
                "words": stats.words,
                "warnings": kb.warnings(),
            }))
            .unwrap()
        );
        return Ok(());
    }
    println!("loaded {}", args.file.display());
    if args.stats {
        println!("heads: {}", stats.heads);
        println!("paragraphs: {}", stats.paragraphs);
        println!("semicolon groups: {}", stats.groups);
        println!("words and phrases: {}", stats.words);
    }
    for warning in kb.warnings() {
        println!("warning: {warning}");
    }
    println!(
        "ok: {} heads, {} warnings",
        stats.heads,
        kb.warnings().len()
    );
    Ok(())
}

fn interactive_loop(cli: &Cli, engine: &Engine) -> Result<(), LexError> {
    let stdin = std::io::stdin();
    let mut lines = stdin.lock().lines();
    let mut prompt = |msg: &str| -> Option<String> {
        print!("{msg}");
        std::io::stdout().flush().ok();
        lines
            .next()
            .and_then(|l| l.ok())
            .map(|l| l.trim().to_string())
    };
    loop {
        println!();
        println!("      LEXKB THESAURUS");
        println!();
        println!("1.  Look up a word or phrase");
        println!("2.  Look up a pair of words or phrases");
        println!("3.  Quit");
        println!();
        let Some(choice) = prompt("- ") else { break };
        match choice.as_str() {
            "1" => {
                let Some(word) = prompt("Enter a word or phrase: ") else {
                    break;
                };
                let hits = engine.index.lookup(&word);
                if hits.is_empty() {
                    println!("{word:?} is not in the index");
                    continue;
                }
                println!("** {word} **");
                for (i, hit) in hits.iter().enumerate() {
                    println!("{}. {}", i + 1, hit.reference);
                }
                let Some(number) = prompt("Enter the number of the reference to be looked up: ")
                else {
                    break;
                };
                let Ok(pick) = number.parse::<usize>() else {
                    continue;
                };
                if pick == 0 || pick > hits.len() {
                    continue;
                }
                let hit = &hits[pick - 1];
                let paragraph = engine.kb.resolve(&hit.reference.sense)?;
                let expansions = engine.index.expansions(&word);
                let forms: Vec<&str> = expansions.iter().map(|s| s.as_str()).collect();
                let highlight = paragraph.locate_any(&forms);
                println!("===== Head {} =====", hit.reference.sense.head_num);
                println!("{}", render_paragraph(paragraph, highlight));
                if let Some(gi) = highlight {
                    println!(
                        "SG: {}",
                        lexkb_core::align::render_group(&paragraph.groups[gi])
                    );
                }
            }
            "2" => {
                let Some(w1) = prompt("Enter a word or phrase: ") else {
                    break;
                };
                let Some(w2) = prompt("Enter a second word or phrase: ") else {
                    break;
                };
                match engine.sim().all_paths(&w1, &w2, pos_filter(cli)) {
                    Ok(set) => print!("{}", render_path_listing(&set)),
                    Err(e) => println!("{e}"),
                }
            }
            "3" | "q" | "quit" => break,
            _ => {}
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), LexError> {
    if let Some(Command::Ingest(args)) = &cli.command {
        return cmd_ingest(cli, args);
    }
    let engine = Engine::load(cli)?;
    match &cli.command {
        Some(Command::Lookup { word }) => cmd_lookup(cli, &engine, word),
        Some(Command::Distance { word1, word2 }) => cmd_distance(cli, &engine, word1, word2),
        Some(Command::Paths { word1, word2 }) => cmd_paths(cli, &engine, word1, word2),
        Some(Command::Quiz(args)) => cmd_quiz(cli, &engine, args),
        Some(Command::Chains { file }) => cmd_chains(cli, &engine, file),
        Some(Command::Align(args)) => cmd_align(cli, &engine, args),
        Some(Command::Stats) => cmd_stats(cli, &engine),
        Some(Command::Ingest(_)) => unreachable!(),
        None => {
            if cli.interactive || std::io::stdin().is_terminal() {
                interactive_loop(cli, &engine)
            } else {
                Err(LexError::Config("no subcommand; see --help".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
