//! The `.isg` text format.
//!
//! ```text
//! semigroup Z2z
//! table 3 zero 0
//! 0 0 0
//! 0 1 2
//! 0 2 1
//! ```
//!
//! or, by generators on `m` points (`_` marks an undefined image):
//!
//! ```text
//! semigroup I2
//! points 2
//! gen a = 1 0
//! gen b = 0 _
//! ```
//!
//! `#` starts a comment and blank lines are ignored.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::Result;
use crate::semigroup::{InverseSemigroup, PartialMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("syntax error: expected {0}")]
    Syntax(String),
    #[error("out of range: {0}")]
    Range(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecBody {
    Table { n: usize, zero: usize, rows: Vec<Vec<usize>> },
    Generators { degree: usize, gens: Vec<(String, Vec<Option<usize>>)> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupSpec {
    pub name: String,
    pub body: SpecBody,
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    col: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    end_col: usize,
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (col, (byte, ch)) in content.char_indices().enumerate() {
            if ch.is_whitespace() {
                if let Some((s_byte, s_col)) = start.take() {
                    tokens.push(Token { text: &content[s_byte..byte], col: s_col + 1 });
                }
            } else if start.is_none() {
                start = Some((byte, col));
            }
        }
        if let Some((s_byte, s_col)) = start {
            tokens.push(Token { text: &content[s_byte..], col: s_col + 1 });
        }
        if !tokens.is_empty() {
            lines.push(Line { number: i + 1, tokens, end_col: content.chars().count() + 1 });
        }
    }
    lines
}

struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn next_line(&mut self, expected: &str) -> std::result::Result<&Line<'a>, ParseError> {
        match self.lines.get(self.pos) {
            Some(_) => {
                self.pos += 1;
                Ok(&self.lines[self.pos - 1])
            }
            None => Err(ParseError {
                line: self.last_line + 1,
                col: 1,
                kind: ParseErrorKind::Syntax(expected.to_string()),
            }),
        }
    }
}

fn syntax(line: usize, col: usize, expected: &str) -> ParseError {
    ParseError { line, col, kind: ParseErrorKind::Syntax(expected.to_string()) }
}

fn expect_keyword(line: &Line<'_>, idx: usize, word: &str) -> std::result::Result<(), ParseError> {
    match line.tokens.get(idx) {
        Some(t) if t.text == word => Ok(()),
        Some(t) => Err(syntax(line.number, t.col, &format!("`{word}`"))),
        None => Err(syntax(line.number, line.end_col, &format!("`{word}`"))),
    }
}

fn expect_number(line: &Line<'_>, idx: usize, what: &str) -> std::result::Result<usize, ParseError> {
    match line.tokens.get(idx) {
        Some(t) => t.text.parse().map_err(|_| syntax(line.number, t.col, what)),
        None => Err(syntax(line.number, line.end_col, what)),
    }
}

fn expect_end(line: &Line<'_>, idx: usize) -> std::result::Result<(), ParseError> {
    match line.tokens.get(idx) {
        Some(t) => Err(syntax(line.number, t.col, "end of line")),
        None => Ok(()),
    }
}

pub fn parse_spec(text: &str) -> std::result::Result<SemigroupSpec, ParseError> {
    let lines = tokenize(text);
    let last_line = text.lines().count();
    let mut cur = Cursor { lines, pos: 0, last_line };

    let header = cur.next_line("`semigroup <name>`")?;
    expect_keyword(header, 0, "semigroup")?;
    let name = header
        .tokens
        .get(1)
        .ok_or_else(|| syntax(header.number, header.end_col, "a name"))?
        .text
        .to_string();
    expect_end(header, 2)?;

    let mode = cur.next_line("`table` or `points`")?;
    let body = match mode.tokens[0].text {
        "table" => {
            let n = expect_number(mode, 1, "table size")?;
            expect_keyword(mode, 2, "zero")?;
            let zero = expect_number(mode, 3, "zero index")?;
            expect_end(mode, 4)?;
            let (number, col) = (mode.number, mode.tokens[1].col);
            if n == 0 {
                return Err(ParseError { line: number, col, kind: ParseErrorKind::Range("table size must be positive".into()) });
            }
            if zero >= n {
                let col = mode.tokens[3].col;
                return Err(ParseError {
                    line: number,
                    col,
                    kind: ParseErrorKind::Range(format!("zero {zero} not below {n}")),
                });
            }
            let mut rows = Vec::with_capacity(n);
            for _ in 0..n {
                let line = cur.next_line("a table row")?;
                let mut row = Vec::with_capacity(n);
                for i in 0..n {
                    let value = expect_number(line, i, "a table entry")?;
                    if value >= n {
                        return Err(ParseError {
                            line: line.number,
                            col: line.tokens[i].col,
                            kind: ParseErrorKind::Range(format!("entry {value} not below {n}")),
                        });
                    }
                    row.push(value);
                }
                expect_end(line, n)?;
                rows.push(row);
            }
            SpecBody::Table { n, zero, rows }
        }
        "points" => {
            let degree = expect_number(mode, 1, "number of points")?;
            expect_end(mode, 2)?;
            let mut gens: Vec<(String, Vec<Option<usize>>)> = Vec::new();
            let mut names = HashSet::new();
            while cur.pos < cur.lines.len() {
                let line = cur.next_line("`gen`")?;
                expect_keyword(line, 0, "gen")?;
                let name_tok = line.tokens.get(1).ok_or_else(|| syntax(line.number, line.end_col, "a generator name"))?;
                if name_tok.text == "=" {
                    return Err(syntax(line.number, name_tok.col, "a generator name"));
                }
                expect_keyword(line, 2, "=")?;
                let mut images = Vec::with_capacity(degree);
                for i in 0..degree {
                    let tok = line
                        .tokens
                        .get(3 + i)
                        .ok_or_else(|| syntax(line.number, line.end_col, "an image or `_`"))?;
                    if tok.text == "_" {
                        images.push(None);
                        continue;
                    }
                    let y: usize = tok.text.parse().map_err(|_| syntax(line.number, tok.col, "an image or `_`"))?;
                    if y >= degree {
                        return Err(ParseError {
                            line: line.number,
                            col: tok.col,
                            kind: ParseErrorKind::Range(format!("image {y} not below {degree}")),
                        });
                    }
                    images.push(Some(y));
                }
                expect_end(line, 3 + degree)?;
                if !names.insert(name_tok.text) {
                    return Err(ParseError {
                        line: line.number,
                        col: name_tok.col,
                        kind: ParseErrorKind::DuplicateName(name_tok.text.to_string()),
                    });
                }
                gens.push((name_tok.text.to_string(), images));
            }
            SpecBody::Generators { degree, gens }
        }
        _ => return Err(syntax(mode.number, mode.tokens[0].col, "`table` or `points`")),
    };
    if let Some(extra) = cur.lines.get(cur.pos) {
        return Err(syntax(extra.number, extra.tokens[0].col, "end of input"));
    }
    Ok(SemigroupSpec { name, body })
}

/// Renders `spec` so that [`parse_spec`] gives it back.
pub fn print_spec(spec: &SemigroupSpec) -> String {
    let mut out = format!("semigroup {}\n", spec.name);
    match &spec.body {
        SpecBody::Table { n, zero, rows } => {
            writeln!(out, "table {n} zero {zero}").unwrap();
            for row in rows {
                let cells: Vec<String> = row.iter().map(usize::to_string).collect();
                writeln!(out, "{}", cells.join(" ")).unwrap();
            }
        }
        SpecBody::Generators { degree, gens } => {
            writeln!(out, "points {degree}").unwrap();
            for (name, images) in gens {
                write!(out, "gen {name} =").unwrap();
                for y in images {
                    match y {
                        Some(y) => write!(out, " {y}").unwrap(),
                        None => out.push_str(" _"),
                    }
                }
                out.push('\n');
            }
        }
    }
    out
}

impl SemigroupSpec {
    pub fn build(&self) -> Result<InverseSemigroup> {
        self.build_capped(None)
    }

    /// Like [`build`](Self::build), with a limit on the size of a generated closure.
    pub fn build_capped(&self, cap: Option<usize>) -> Result<InverseSemigroup> {
        match &self.body {
            SpecBody::Table { zero, rows, .. } => InverseSemigroup::from_table(rows, *zero),
            SpecBody::Generators { degree, gens } => {
                let maps: Vec<PartialMap> = gens.iter().map(|(_, images)| PartialMap::new(images.clone())).collect();
                Ok(InverseSemigroup::from_partial_maps_capped(*degree, &maps, cap)?.0)
            }
        }
    }

    /// Table form of an already built semigroup.
    pub fn from_semigroup(name: &str, s: &InverseSemigroup) -> Self {
        SemigroupSpec {
            name: name.to_string(),
            body: SpecBody::Table { n: s.len(), zero: s.zero(), rows: s.rows() },
        }
    }
}

/// `.isg` table text for `s`, used in reproducer dumps.
pub fn table_dump(s: &InverseSemigroup) -> String {
    print_spec(&SemigroupSpec::from_semigroup("reproducer", s))
}
