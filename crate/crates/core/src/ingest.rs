//! Parser for the normalized line-oriented corpus format, the matching
//! canonical serializer, and the lexical-material normalization helpers
//! that run before anything is loaded.
//!
//! Grammar (UTF-8, one element per line, `|` as field separator):
//!
//! ```text
//! #class <num> | <name>
//! #section <num> | <name>
//! #subsection <name>            (optional; empties allowed)
//! #headgroup <num>[,<num>[,<num>]]
//! #head <num> | <name>
//! #pos <N.|ADJ.|VB.|ADV.|INT.>
//! #para <keyword>
//! <word-or-phrase>[; <word-or-phrase>]*
//! @cref <head-num> | <keyword>
//! @see <head-num> | <keyword>
//! @tag <word> | <derog|e|tdmk|vulg>
//! ```

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{LexError, Result};
use crate::kb::{
    fold, ClassInfo, ExplicitRelation, GroupWord, Head, KnowledgeBase, Paragraph, RelationKind,
    SectionInfo, SemicolonGroup, SenseKey, StyleTag, TaxonomyAddress,
};
use crate::pos::Pos;

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Fail on noisy input instead of skipping it with a warning.
    pub strict: bool,
}

/// Expands the space-saving conventions of the source material inside one
/// semicolon-group text. Two conventions are handled: `X or Y` with a
/// shared carrier ("drop a brick or clanger") and the initial-plus-period
/// abbreviation ("weasel word, loan w., nonce w."). Returns the expanded
/// text and any warnings for abbreviations left verbatim.
pub fn expand_abbreviations(group_text: &str) -> (String, Vec<String>) {
    let sep = if group_text.contains(';') { ';' } else { ',' };
    expand_abbreviations_sep(group_text, sep)
}

fn expand_abbreviations_sep(group_text: &str, sep: char) -> (String, Vec<String>) {
    let mut warnings = Vec::new();
    let items: Vec<&str> = group_text.split(sep).map(|s| s.trim()).collect();

    let mut expanded: Vec<String> = Vec::new();
    for item in items {
        if let Some((left, right)) = item.split_once(" or ") {
            let left = left.trim();
            let right = right.trim();
            let left_words: Vec<&str> = left.split_whitespace().collect();
            if left_words.len() >= 2 && !right.is_empty() && !right.contains(' ') {
                let alt = right.strip_prefix('-').unwrap_or(right);
                let carrier = left_words[..left_words.len() - 1].join(" ");
                expanded.push(left.to_string());
                expanded.push(format!("{carrier} {alt}"));
                continue;
            }
        }
        expanded.push(item.to_string());
    }

    for i in 0..expanded.len() {
        let tokens: Vec<String> = expanded[i].split_whitespace().map(String::from).collect();
        let mut rebuilt: Vec<String> = Vec::new();
        for (t, token) in tokens.iter().enumerate() {
            let is_initial = token.len() == 2
                && token.ends_with('.')
                && token.chars().next().is_some_and(|c| c.is_alphabetic());
            if !is_initial {
                rebuilt.push(token.clone());
                continue;
            }
            let initial = token.chars().next().unwrap().to_lowercase().next().unwrap();
            // Nearest preceding full word with the same initial: earlier
            // tokens of this item first, then earlier items, scanning
            // backwards.
            let mut found = None;
            for prev in rebuilt[..t.min(rebuilt.len())].iter().rev() {
                if prev.len() > 1
                    && !prev.ends_with('.')
                    && prev.chars().next().unwrap().to_lowercase().next() == Some(initial)
                {
                    found = Some(prev.clone());
                    break;
                }
            }
            if found.is_none() {
                for prev_item in expanded[..i].iter().rev() {
                    for w in prev_item.split_whitespace().rev() {
                        if w.len() > 1
                            && !w.ends_with('.')
                            && w.chars().next().unwrap().to_lowercase().next() == Some(initial)
                        {
                            found = Some(w.to_string());
                            break;
                        }
                    }
                    if found.is_some() {
                        break;
                    }
                }
            }
            match found {
                Some(full) => rebuilt.push(full),
                None => {
                    warnings.push(format!(
                        "unexpandable abbreviation {token:?} in {group_text:?}"
                    ));
                    rebuilt.push(token.clone());
                }
            }
        }
        expanded[i] = rebuilt.join(" ");
    }

    (expanded.join(&format!("{sep} ")), warnings)
}

struct Parser<'a> {
    opts: ParseOptions,
    kb: KnowledgeBase,
    declared_groups: Vec<(Vec<u32>, usize)>,
    group_of_head: BTreeMap<u32, Vec<u32>>,
    group_context: BTreeMap<u32, (u32, u32, String)>,
    defined_heads: BTreeSet<u32>,
    cur_class: Option<u32>,
    cur_section: Option<u32>,
    cur_subsection: String,
    cur_group: Option<Vec<u32>>,
    cur_head: Option<HeadBuilder>,
    source: &'a str,
}

struct HeadBuilder {
    address: TaxonomyAddress,
    paragraphs: Vec<Paragraph>,
    cur_pos: Option<Pos>,
    cur_para: Option<ParaBuilder>,
    declared_line: usize,
}

struct ParaBuilder {
    keyword: String,
    pos: Pos,
    groups: Vec<SemicolonGroup>,
    declared_line: usize,
}

fn err_parse(line: usize, msg: impl Into<String>) -> LexError {
    LexError::Parse {
        line,
        msg: msg.into(),
    }
}

fn err_struct(line: usize, msg: impl Into<String>) -> LexError {
    LexError::Structure {
        line,
        msg: msg.into(),
    }
}

fn split_fields(rest: &str, n: usize, line: usize, what: &str) -> Result<Vec<String>> {
    let fields: Vec<String> = rest.splitn(n, '|').map(|f| f.trim().to_string()).collect();
    if fields.len() != n || fields.iter().any(|f| f.is_empty()) {
        return Err(err_parse(
            line,
            format!("expected `{what}` with {n} `|`-separated fields"),
        ));
    }
    Ok(fields)
}

impl<'a> Parser<'a> {
    fn new(source: &'a str, opts: ParseOptions) -> Self {
        Parser {
            opts,
            kb: KnowledgeBase::default(),
            declared_groups: Vec::new(),
            group_of_head: BTreeMap::new(),
            group_context: BTreeMap::new(),
            defined_heads: BTreeSet::new(),
            cur_class: None,
            cur_section: None,
            cur_subsection: String::new(),
            cur_group: None,
            cur_head: None,
            source,
        }
    }

    fn warn(&mut self, msg: String) {
        self.kb.warnings.push(msg);
    }

    fn run(mut self) -> Result<KnowledgeBase> {
        let lines: Vec<&str> = self.source.lines().collect();
        for (idx, raw) in lines.iter().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim_end();
            if line.trim().is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                self.directive(rest, line_no)?;
            } else if let Some(rest) = line.strip_prefix('@') {
                self.annotation(rest, line_no)?;
            } else {
                self.group_line(line, line_no)?;
            }
        }
        self.finish_head()?;
        if self.kb.heads.is_empty() {
            return Err(LexError::EmptyKb);
        }
        for (group, line) in std::mem::take(&mut self.declared_groups) {
            for num in &group {
                if !self.defined_heads.contains(num) {
                    if self.opts.strict {
                        return Err(err_struct(
                            line,
                            format!("head group member {num} is never defined"),
                        ));
                    }
                    self.warn(format!(
                        "head group member {num} declared at line {line} is never defined"
                    ));
                }
            }
        }
        self.kb.validate_relations();
        Ok(self.kb)
    }

    fn directive(&mut self, rest: &str, line: usize) -> Result<()> {
        let (tag, rest) = match rest.split_once(char::is_whitespace) {
            Some((t, r)) => (t, r.trim()),
            None => (rest.trim(), ""),
        };
        match tag {
            "class" => {
                self.finish_head()?;
                let f = split_fields(rest, 2, line, "#class <num> | <name>")?;
                let num: u32 = f[0]
                    .parse()
                    .map_err(|_| err_parse(line, "class number must be an integer"))?;
                if !(1..=8).contains(&num) {
                    return Err(err_struct(line, format!("class number {num} outside 1..8")));
                }
                if self.kb.classes.iter().any(|c| c.num == num) {
                    return Err(err_struct(line, format!("class {num} declared twice")));
                }
                self.kb.classes.push(ClassInfo {
                    num,
                    name: f[1].clone(),
                });
                self.cur_class = Some(num);
                self.cur_section = None;
                self.cur_subsection.clear();
                self.cur_group = None;
            }
            "section" => {
                self.finish_head()?;
                let class = self
                    .cur_class
                    .ok_or_else(|| err_parse(line, "#section before any #class"))?;
                let f = split_fields(rest, 2, line, "#section <num> | <name>")?;
                let num: u32 = f[0]
                    .parse()
                    .map_err(|_| err_parse(line, "section number must be an integer"))?;
                if self.kb.sections.iter().any(|s| s.num == num) {
                    return Err(err_struct(line, format!("section {num} declared twice")));
                }
                self.kb.sections.push(SectionInfo {
                    class_num: class,
                    num,
                    name: f[1].clone(),
                });
                self.cur_section = Some(num);
                self.cur_subsection.clear();
                self.cur_group = None;
            }
            "subsection" => {
                self.finish_head()?;
                if self.cur_section.is_none() {
                    return Err(err_parse(line, "#subsection before any #section"));
                }
                self.cur_subsection = rest.to_string();
                self.cur_group = None;
            }
            "headgroup" => {
                self.finish_head()?;
                if self.cur_section.is_none() {
                    return Err(err_parse(line, "#headgroup before any #section"));
                }
                let nums: Vec<u32> = rest
                    .split(',')
                    .map(|n| n.trim().parse::<u32>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| err_parse(line, "expected `#headgroup <num>[,<num>[,<num>]]`"))?;
                if nums.is_empty() || nums.len() > 3 {
                    return Err(err_struct(line, "head group must have 1 to 3 members"));
                }
                if nums.windows(2).any(|w| w[1] != w[0] + 1) {
                    return Err(err_struct(
                        line,
                        "head group members must be consecutive head numbers",
                    ));
                }
                let context = (
                    self.cur_class.unwrap(),
                    self.cur_section.unwrap(),
                    self.cur_subsection.clone(),
                );
                for n in &nums {
                    if let Some(prev) = self.group_of_head.get(n) {
                        if prev != &nums {
                            return Err(err_struct(
                                line,
                                format!("head {n} already belongs to head group {prev:?}"),
                            ));
                        }
                    }
                    if let Some(prev) = self.group_context.get(n) {
                        if prev != &context {
                            return Err(err_struct(
                                line,
                                format!(
                                    "head group {nums:?} re-declared under a different taxonomy position"
                                ),
                            ));
                        }
                    }
                    self.group_of_head.insert(*n, nums.clone());
                    self.group_context.insert(*n, context.clone());
                }
                self.declared_groups.push((nums.clone(), line));
                self.cur_group = Some(nums);
            }
            "head" => {
                self.finish_head()?;
                let group = self
                    .cur_group
                    .clone()
                    .ok_or_else(|| err_parse(line, "#head before any #headgroup"))?;
                let f = split_fields(rest, 2, line, "#head <num> | <name>")?;
                let num: u32 = f[0]
                    .parse()
                    .map_err(|_| err_parse(line, "head number must be an integer"))?;
                if num == 0 {
                    return Err(err_struct(line, "head numbers are positive"));
                }
                if !group.contains(&num) {
                    return Err(err_struct(
                        line,
                        format!("head {num} is not a member of the current head group {group:?}"),
                    ));
                }
                if self.defined_heads.contains(&num) {
                    return Err(err_struct(line, format!("head {num} defined twice")));
                }
                let class_num = self.cur_class.unwrap();
                let section_num = self.cur_section.unwrap();
                let class_name = self
                    .kb
                    .class_name(class_num)
                    .unwrap_or_default()
                    .to_string();
                let section_name = self
                    .kb
                    .sections
                    .iter()
                    .find(|s| s.num == section_num)
                    .map(|s| s.name.clone())
                    .unwrap_or_default();
                self.defined_heads.insert(num);
                self.cur_head = Some(HeadBuilder {
                    address: TaxonomyAddress {
                        class_num,
                        class_name,
                        section_num,
                        section_name,
                        subsection_name: self.cur_subsection.clone(),
                        headgroup: group,
                        head_num: num,
                        head_name: f[1].clone(),
                    },
                    paragraphs: Vec::new(),
                    cur_pos: None,
                    cur_para: None,
                    declared_line: line,
                });
            }
            "pos" => {
                let head = self
                    .cur_head
                    .as_mut()
                    .ok_or_else(|| err_parse(line, "#pos before any #head"))?;
                Self::close_para(head, line)?;
                let pos: Pos = rest.parse().map_err(|_| {
                    err_parse(
                        line,
                        format!("expected #pos N.|ADJ.|VB.|ADV.|INT., got {rest:?}"),
                    )
                })?;
                if let Some(prev) = head.cur_pos {
                    if pos.order() <= prev.order() {
                        return Err(err_struct(
                            line,
                            format!(
                                "part-of-speech {pos} out of order after {prev}; blocks follow N., ADJ., VB., ADV., INT."
                            ),
                        ));
                    }
                }
                head.cur_pos = Some(pos);
            }
            "para" => {
                let head = self
                    .cur_head
                    .as_mut()
                    .ok_or_else(|| err_parse(line, "#para before any #head"))?;
                Self::close_para(head, line)?;
                let pos = head
                    .cur_pos
                    .ok_or_else(|| err_parse(line, "#para before any #pos"))?;
                if rest.is_empty() || rest.contains('|') {
                    return Err(err_parse(line, "expected `#para <keyword>`"));
                }
                let keyword = rest.to_string();
                if head
                    .paragraphs
                    .iter()
                    .any(|p| p.sense.pos == pos && fold(&p.sense.keyword) == fold(&keyword))
                {
                    return Err(err_struct(
                        line,
                        format!(
                            "keyword {keyword:?} repeats within head {} {pos}",
                            head.address.head_num
                        ),
                    ));
                }
                head.cur_para = Some(ParaBuilder {
                    keyword,
                    pos,
                    groups: Vec::new(),
                    declared_line: line,
                });
            }
            other => {
                return Err(err_parse(line, format!("unknown directive #{other}")));
            }
        }
        Ok(())
    }

    fn group_line(&mut self, line_text: &str, line: usize) -> Result<()> {
        let head = self
            .cur_head
            .as_mut()
            .ok_or_else(|| err_parse(line, "semicolon group outside any #head"))?;
        let para = head
            .cur_para
            .as_mut()
            .ok_or_else(|| err_parse(line, "semicolon group outside any #para"))?;

        let (expanded, expand_warnings) = expand_abbreviations_sep(line_text, ';');
        for w in &expand_warnings {
            if self.opts.strict {
                return Err(err_parse(line, w.clone()));
            }
        }

        let mut words = Vec::new();
        let mut bad = None;
        for item in expanded.split(';') {
            let item = item.trim();
            if item.is_empty() {
                bad = Some("empty word in semicolon group".to_string());
                continue;
            }
            if item.contains('|') || item.chars().any(|c| c.is_control()) {
                bad = Some(format!("bad characters in {item:?}"));
                continue;
            }
            words.push(GroupWord::new(item));
        }
        if let Some(reason) = bad {
            if self.opts.strict {
                return Err(err_parse(line, reason));
            }
            self.kb
                .warnings
                .push(format!("line {line}: skipped group: {reason}"));
            return Ok(());
        }
        if words.is_empty() {
            if self.opts.strict {
                return Err(err_parse(line, "semicolon group has no words"));
            }
            self.kb
                .warnings
                .push(format!("line {line}: skipped empty group"));
            return Ok(());
        }
        let mut warnings = expand_warnings
            .into_iter()
            .map(|w| format!("line {line}: {w}"))
            .collect::<Vec<_>>();
        self.kb.warnings.append(&mut warnings);
        para.groups.push(SemicolonGroup {
            words,
            relations: Vec::new(),
        });
        Ok(())
    }

    fn annotation(&mut self, rest: &str, line: usize) -> Result<()> {
        let (tag, rest) = rest
            .split_once(char::is_whitespace)
            .map(|(t, r)| (t, r.trim()))
            .ok_or_else(|| err_parse(line, "expected @cref, @see or @tag with arguments"))?;
        let strict = self.opts.strict;
        let head = self
            .cur_head
            .as_mut()
            .ok_or_else(|| err_parse(line, "annotation outside any #head"))?;
        let para = head
            .cur_para
            .as_mut()
            .ok_or_else(|| err_parse(line, "annotation outside any #para"))?;
        let group = match para.groups.last_mut() {
            Some(g) => g,
            None => {
                return Err(err_parse(
                    line,
                    "annotation must follow a semicolon-group line",
                ))
            }
        };
        match tag {
            "cref" | "see" => {
                let f = split_fields(rest, 2, line, "@cref <head-num> | <keyword>")?;
                let target: u32 = f[0]
                    .parse()
                    .map_err(|_| err_parse(line, "reference head number must be an integer"))?;
                group.relations.push(ExplicitRelation {
                    kind: if tag == "cref" {
                        RelationKind::CrossReference
                    } else {
                        RelationKind::See
                    },
                    target_head: target,
                    target_keyword: f[1].clone(),
                });
            }
            "tag" => {
                let f = split_fields(rest, 2, line, "@tag <word> | <tag>")?;
                let style = StyleTag::parse(&f[1])
                    .ok_or_else(|| err_parse(line, format!("unknown style tag {:?}", f[1])))?;
                let folded = fold(&f[0]);
                match group.words.iter_mut().find(|w| w.folded == folded) {
                    Some(word) => word.tag = Some(style),
                    None if strict => {
                        return Err(err_parse(
                            line,
                            format!("@tag word {:?} not in preceding group", f[0]),
                        ))
                    }
                    None => self.kb.warnings.push(format!(
                        "line {line}: @tag word {:?} not in preceding group",
                        f[0]
                    )),
                }
            }
            other => return Err(err_parse(line, format!("unknown annotation @{other}"))),
        }
        Ok(())
    }

    fn close_para(head: &mut HeadBuilder, line: usize) -> Result<()> {
        if let Some(para) = head.cur_para.take() {
            if para.groups.is_empty() {
                return Err(err_struct(
                    para.declared_line,
                    format!("paragraph {:?} has no semicolon groups", para.keyword),
                ));
            }
            let first = &para.groups[0].words[0];
            if first.folded != fold(&para.keyword) {
                return Err(err_struct(
                    para.declared_line,
                    format!(
                        "keyword {:?} must open the first semicolon group (found {:?})",
                        para.keyword, first.text
                    ),
                ));
            }
            head.paragraphs.push(Paragraph {
                sense: SenseKey::new(head.address.head_num, para.keyword, para.pos),
                groups: para.groups,
            });
        }
        let _ = line;
        Ok(())
    }

    fn finish_head(&mut self) -> Result<()> {
        if let Some(mut head) = self.cur_head.take() {
            let line = head.declared_line;
            Self::close_para(&mut head, line)?;
            if head.paragraphs.is_empty() {
                return Err(err_struct(
                    head.declared_line,
                    format!("head {} has no paragraphs", head.address.head_num),
                ));
            }
            self.kb.heads.insert(
                head.address.head_num,
                Head {
                    address: head.address,
                    paragraphs: head.paragraphs,
                },
            );
        }
        Ok(())
    }
}

/// Parses the normalized corpus format into a validated knowledge base.
pub fn parse_corpus(input: &str, opts: ParseOptions) -> Result<KnowledgeBase> {
    Parser::new(input, opts).run()
}

/// Canonical serialization of a knowledge base back into the corpus
/// format. Parsing the output reproduces the same knowledge base, and
/// serializing that parse is byte-identical.
pub fn serialize_corpus(kb: &KnowledgeBase) -> String {
    let mut out = String::new();
    for class in &kb.classes {
        out.push_str(&format!("#class {} | {}\n", class.num, class.name));
        for section in kb.sections.iter().filter(|s| s.class_num == class.num) {
            out.push_str(&format!("#section {} | {}\n", section.num, section.name));
            let mut cur_subsection: Option<&str> = Some("");
            let mut cur_group: Option<&[u32]> = None;
            for head in kb
                .heads
                .values()
                .filter(|h| h.address.section_num == section.num)
            {
                let addr = &head.address;
                if cur_subsection != Some(addr.subsection_name.as_str()) {
                    if addr.subsection_name.is_empty() {
                        out.push_str("#subsection\n");
                    } else {
                        out.push_str(&format!("#subsection {}\n", addr.subsection_name));
                    }
                    cur_subsection = Some(addr.subsection_name.as_str());
                    cur_group = None;
                }
                if cur_group != Some(addr.headgroup.as_slice()) {
                    let nums: Vec<String> = addr.headgroup.iter().map(|n| n.to_string()).collect();
                    out.push_str(&format!("#headgroup {}\n", nums.join(",")));
                    cur_group = Some(addr.headgroup.as_slice());
                }
                out.push_str(&format!("#head {} | {}\n", addr.head_num, addr.head_name));
                for pos in Pos::ALL {
                    let paragraphs: Vec<&Paragraph> = head.paragraphs_for(pos).collect();
                    if paragraphs.is_empty() {
                        continue;
                    }
                    out.push_str(&format!("#pos {}\n", pos.label()));
                    for para in paragraphs {
                        out.push_str(&format!("#para {}\n", para.sense.keyword));
                        for group in &para.groups {
                            let words: Vec<&str> =
                                group.words.iter().map(|w| w.text.as_str()).collect();
                            out.push_str(&words.join("; "));
                            out.push('\n');
                            for rel in &group.relations {
                                let tag = match rel.kind {
                                    RelationKind::CrossReference => "cref",
                                    RelationKind::See => "see",
                                };
                                out.push_str(&format!(
                                    "@{tag} {} | {}\n",
                                    rel.target_head, rel.target_keyword
                                ));
                            }
                            for word in &group.words {
                                if let Some(tag) = word.tag {
                                    out.push_str(&format!(
                                        "@tag {} | {}\n",
                                        word.text,
                                        tag.label()
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}
