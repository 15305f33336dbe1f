//! Text format for chamber links: grammar, parser with positioned
//! diagnostics, canonical serializer, and the shipped corpus files.
//!
//! ```text
//! link      := "link" IDENT "{" chamber+ "}"
//! chamber   := "chamber" "{" piece* "}"
//! piece     := span | turn | clasp | circle
//! span      := "span" INT "->" INT ";"
//! turn      := "turn" ("bottom" | "top") "(" INT "," INT ")" ";"
//! clasp     := ("whitehead" | "squareknot" | "antoine")
//!              "top" "(" INT "," INT ")" "bottom" "(" INT "," INT ")" ";"
//! circle    := "circle" ";"
//! ```
//!
//! `#` starts a comment running to end of line; whitespace is free-form;
//! chambers are cyclic in listed order.

use std::fmt;

use thiserror::Error;

use crate::catalog::{ChamberContent, ClaspKind, Piece, Side};
use crate::link::{ChamberLink, InvalidLink, Violation};

/// A source text plus where it came from, for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceDocument {
    pub text: String,
    pub origin: String,
}

impl SourceDocument {
    pub fn from_text(text: impl Into<String>) -> Self {
        SourceDocument {
            text: text.into(),
            origin: "<memory>".into(),
        }
    }

    pub fn from_file(path: impl Into<String>, text: impl Into<String>) -> Self {
        SourceDocument {
            text: text.into(),
            origin: path.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

/// Stable diagnostic identifiers; scripts may match on these.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticCode {
    Syntax,
    IntRange,
    PairDegenerate,
    SlotReused,
    SlotGap,
    ProfileMismatch,
    NonUniform,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::Syntax => "E_SYNTAX",
            DiagnosticCode::IntRange => "E_INT_RANGE",
            DiagnosticCode::PairDegenerate => "E_PAIR_DEGENERATE",
            DiagnosticCode::SlotReused => "E_SLOT_REUSED",
            DiagnosticCode::SlotGap => "E_SLOT_GAP",
            DiagnosticCode::ProfileMismatch => "E_PROFILE_MISMATCH",
            DiagnosticCode::NonUniform => "W_NON_UNIFORM",
        }
    }
}

/// One parser or validation message with its source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub severity: Severity,
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub code: DiagnosticCode,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(
            f,
            "{kind}[{}] {}:{}: {}",
            self.code.as_str(),
            self.line,
            self.column,
            self.message
        )
    }
}

/// A parsed link together with its declared name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDocument {
    pub name: String,
    pub link: ChamberLink,
}

impl LinkDocument {
    pub fn emit(&self) -> String {
        emit(&self.name, &self.link).expect("parsed documents are valid")
    }
}

/// Parser output: a document when no errors occurred, plus every
/// diagnostic (warnings may accompany a successful parse).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseOutcome {
    pub document: Option<LinkDocument>,
    pub diagnostics: Vec<ParseDiagnostic>,
}

impl ParseOutcome {
    pub fn into_result(self) -> Result<LinkDocument, Vec<ParseDiagnostic>> {
        match self.document {
            Some(document) => Ok(document),
            None => Err(self.diagnostics),
        }
    }

    pub fn errors(&self) -> impl Iterator<Item = &ParseDiagnostic> {
        self.diagnostics
            .iter()
            .filter(|d| d.severity == Severity::Error)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("unknown corpus name: {0}")]
    UnknownName(String),
    #[error("corpus file failed to parse: {0:?}")]
    Parse(Vec<ParseDiagnostic>),
}

// ── Lexer ───────────────────────────────────────────────────────────────

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokenKind {
    Ident(String),
    Int(usize),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Semi,
    Arrow,
    Eof,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Ident(name) => format!("`{name}`"),
            TokenKind::Int(value) => format!("`{value}`"),
            TokenKind::LBrace => "`{`".into(),
            TokenKind::RBrace => "`}`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Semi => "`;`".into(),
            TokenKind::Arrow => "`->`".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Token {
    kind: TokenKind,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseDiagnostic> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1usize;
    let mut column = 1usize;

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else if c.is_some() {
                column += 1;
            }
            c
        }};
    }

    loop {
        let (start_line, start_column) = (line, column);
        let Some(&c) = chars.peek() else {
            tokens.push(Token {
                kind: TokenKind::Eof,
                line,
                column,
            });
            return Ok(tokens);
        };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump!();
            }
            continue;
        }
        let kind = match c {
            '{' => {
                bump!();
                TokenKind::LBrace
            }
            '}' => {
                bump!();
                TokenKind::RBrace
            }
            '(' => {
                bump!();
                TokenKind::LParen
            }
            ')' => {
                bump!();
                TokenKind::RParen
            }
            ',' => {
                bump!();
                TokenKind::Comma
            }
            ';' => {
                bump!();
                TokenKind::Semi
            }
            '-' => {
                bump!();
                if chars.peek() == Some(&'>') {
                    bump!();
                    TokenKind::Arrow
                } else {
                    return Err(syntax_error(start_line, start_column, "expected `->`"));
                }
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                match digits.parse::<usize>() {
                    Ok(value) if value <= 1_000_000 => TokenKind::Int(value),
                    _ => {
                        return Err(ParseDiagnostic {
                            severity: Severity::Error,
                            line: start_line,
                            column: start_column,
                            message: format!("integer `{digits}` is out of range"),
                            code: DiagnosticCode::IntRange,
                        })
                    }
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                TokenKind::Ident(name)
            }
            other => {
                return Err(syntax_error(
                    start_line,
                    start_column,
                    &format!("unexpected character `{other}`"),
                ))
            }
        };
        tokens.push(Token {
            kind,
            line: start_line,
            column: start_column,
        });
    }
}

fn syntax_error(line: usize, column: usize, message: &str) -> ParseDiagnostic {
    ParseDiagnostic {
        severity: Severity::Error,
        line,
        column,
        message: message.into(),
        code: DiagnosticCode::Syntax,
    }
}

// ── Parser ──────────────────────────────────────────────────────────────

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

/// Slot value together with the token that carried it.
type SlotToken = (usize, Token);

/// Pieces of one chamber plus source positions for diagnostics: the
/// `chamber` keyword, and per side a map from slot to the token that
/// introduced it.
struct ChamberSource {
    content: ChamberContent,
    line: usize,
    column: usize,
    slot_positions: Vec<(Side, usize, usize, usize)>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Token {
        let token = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        token
    }

    fn expect(&mut self, kind: &TokenKind, what: &str) -> Result<Token, ParseDiagnostic> {
        if &self.peek().kind == kind {
            Ok(self.advance())
        } else {
            let token = self.peek();
            Err(syntax_error(
                token.line,
                token.column,
                &format!("expected {what}, found {}", token.kind.describe()),
            ))
        }
    }

    fn expect_int(&mut self) -> Result<SlotToken, ParseDiagnostic> {
        match self.peek().kind.clone() {
            TokenKind::Int(value) => Ok((value, self.advance())),
            other => {
                let token = self.peek();
                Err(syntax_error(
                    token.line,
                    token.column,
                    &format!("expected slot index, found {}", other.describe()),
                ))
            }
        }
    }

    fn expect_keyword(&mut self, keyword: &str) -> Result<Token, ParseDiagnostic> {
        match &self.peek().kind {
            TokenKind::Ident(name) if name == keyword => Ok(self.advance()),
            other => {
                let describe = other.describe();
                let token = self.peek();
                Err(syntax_error(
                    token.line,
                    token.column,
                    &format!("expected `{keyword}`, found {describe}"),
                ))
            }
        }
    }

    fn parse_pair(&mut self) -> Result<(SlotToken, SlotToken), ParseDiagnostic> {
        self.expect(&TokenKind::LParen, "`(`")?;
        let first = self.expect_int()?;
        self.expect(&TokenKind::Comma, "`,`")?;
        let second = self.expect_int()?;
        self.expect(&TokenKind::RParen, "`)`")?;
        Ok((first, second))
    }

    fn parse_chamber(&mut self) -> Result<ChamberSource, ParseDiagnostic> {
        let keyword = self.expect_keyword("chamber")?;
        self.expect(&TokenKind::LBrace, "`{`")?;
        let mut pieces = Vec::new();
        let mut slot_positions = Vec::new();
        loop {
            let token = self.peek().clone();
            match &token.kind {
                TokenKind::RBrace => {
                    self.advance();
                    break;
                }
                TokenKind::Ident(name) => match name.as_str() {
                    "span" => {
                        self.advance();
                        let (bottom, bt) = self.expect_int()?;
                        self.expect(&TokenKind::Arrow, "`->`")?;
                        let (top, tt) = self.expect_int()?;
                        self.expect(&TokenKind::Semi, "`;`")?;
                        slot_positions.push((Side::Bottom, bottom, bt.line, bt.column));
                        slot_positions.push((Side::Top, top, tt.line, tt.column));
                        pieces.push(Piece::span(bottom, top));
                    }
                    "turn" => {
                        self.advance();
                        let side_token = self.advance();
                        let side = match &side_token.kind {
                            TokenKind::Ident(s) if s == "bottom" => Side::Bottom,
                            TokenKind::Ident(s) if s == "top" => Side::Top,
                            other => {
                                return Err(syntax_error(
                                    side_token.line,
                                    side_token.column,
                                    &format!(
                                        "expected `bottom` or `top`, found {}",
                                        other.describe()
                                    ),
                                ))
                            }
                        };
                        let ((a, at), (b, bt)) = self.parse_pair()?;
                        self.expect(&TokenKind::Semi, "`;`")?;
                        slot_positions.push((side, a, at.line, at.column));
                        slot_positions.push((side, b, bt.line, bt.column));
                        pieces.push(Piece::turn(side, (a, b)));
                    }
                    "whitehead" | "squareknot" | "antoine" => {
                        let kind = match name.as_str() {
                            "whitehead" => ClaspKind::Whitehead,
                            "squareknot" => ClaspKind::SquareKnot,
                            _ => ClaspKind::Antoine,
                        };
                        self.advance();
                        self.expect_keyword("top")?;
                        let ((t0, t0t), (t1, t1t)) = self.parse_pair()?;
                        self.expect_keyword("bottom")?;
                        let ((b0, b0t), (b1, b1t)) = self.parse_pair()?;
                        self.expect(&TokenKind::Semi, "`;`")?;
                        slot_positions.push((Side::Top, t0, t0t.line, t0t.column));
                        slot_positions.push((Side::Top, t1, t1t.line, t1t.column));
                        slot_positions.push((Side::Bottom, b0, b0t.line, b0t.column));
                        slot_positions.push((Side::Bottom, b1, b1t.line, b1t.column));
                        pieces.push(Piece::clasp(kind, (t0, t1), (b0, b1)));
                    }
                    "circle" => {
                        self.advance();
                        self.expect(&TokenKind::Semi, "`;`")?;
                        pieces.push(Piece::Circle);
                    }
                    other => {
                        return Err(syntax_error(
                            token.line,
                            token.column,
                            &format!("unknown piece keyword `{other}`"),
                        ))
                    }
                },
                other => {
                    return Err(syntax_error(
                        token.line,
                        token.column,
                        &format!("expected a piece or `}}`, found {}", other.describe()),
                    ))
                }
            }
        }
        Ok(ChamberSource {
            content: ChamberContent::new(pieces),
            line: keyword.line,
            column: keyword.column,
            slot_positions,
        })
    }

    fn parse_link(&mut self) -> Result<(String, Vec<ChamberSource>), ParseDiagnostic> {
        self.expect_keyword("link")?;
        let name_token = self.advance();
        let name = match name_token.kind {
            TokenKind::Ident(name) => name,
            other => {
                return Err(syntax_error(
                    name_token.line,
                    name_token.column,
                    &format!("expected link name, found {}", other.describe()),
                ))
            }
        };
        self.expect(&TokenKind::LBrace, "`{`")?;
        let mut chambers = Vec::new();
        loop {
            match &self.peek().kind {
                TokenKind::RBrace => {
                    let token = self.peek().clone();
                    if chambers.is_empty() {
                        return Err(syntax_error(
                            token.line,
                            token.column,
                            "a link needs at least one chamber",
                        ));
                    }
                    self.advance();
                    break;
                }
                _ => chambers.push(self.parse_chamber()?),
            }
        }
        self.expect(&TokenKind::Eof, "end of input")?;
        Ok((name, chambers))
    }
}

/// Parse a document. Structural violations in an otherwise well-formed
/// text become positioned error diagnostics; non-uniform disc counts are
/// only a warning.
pub fn parse(doc: &SourceDocument) -> ParseOutcome {
    let tokens = match lex(&doc.text) {
        Ok(tokens) => tokens,
        Err(diagnostic) => {
            return ParseOutcome {
                document: None,
                diagnostics: vec![diagnostic],
            }
        }
    };
    let mut parser = Parser { tokens, pos: 0 };
    let (name, chambers) = match parser.parse_link() {
        Ok(parsed) => parsed,
        Err(diagnostic) => {
            return ParseOutcome {
                document: None,
                diagnostics: vec![diagnostic],
            }
        }
    };

    let link = ChamberLink::new(chambers.iter().map(|c| c.content.clone()).collect());
    let report = link.validate();
    let mut diagnostics = Vec::new();
    for violation in &report.violations {
        diagnostics.push(violation_diagnostic(violation, &chambers));
    }
    if !report.uniform && report.violations.is_empty() {
        diagnostics.push(ParseDiagnostic {
            severity: Severity::Warning,
            line: chambers[0].line,
            column: chambers[0].column,
            message: format!(
                "disc crossing counts are not uniform: {:?}; the link is representable but cannot certify",
                report.disc_counts
            ),
            code: DiagnosticCode::NonUniform,
        });
    }

    let document = if diagnostics.iter().any(|d| d.severity == Severity::Error) {
        None
    } else {
        Some(LinkDocument { name, link })
    };
    ParseOutcome {
        document,
        diagnostics,
    }
}

fn violation_diagnostic(violation: &Violation, chambers: &[ChamberSource]) -> ParseDiagnostic {
    let slot_position = |chamber: usize, side: Side, slot: usize| {
        chambers[chamber]
            .slot_positions
            .iter()
            .find(|(s, v, _, _)| *s == side && *v == slot)
            .map(|&(_, _, line, column)| (line, column))
            .unwrap_or((chambers[chamber].line, chambers[chamber].column))
    };
    match *violation {
        Violation::ProfileMismatch {
            disc,
            below_top,
            above_bottom,
        } => {
            let m = chambers.len();
            let above = (disc + 1) % m;
            let source = &chambers[above];
            ParseDiagnostic {
                severity: Severity::Error,
                line: source.line,
                column: source.column,
                message: format!(
                    "chamber {}: bottom uses {above_bottom} slots but disc {disc} carries {below_top} crossings from chamber {}",
                    above + 1,
                    disc + 1,
                ),
                code: DiagnosticCode::ProfileMismatch,
            }
        }
        Violation::DegeneratePair { chamber, side, slot } => {
            let (line, column) = slot_position(chamber, side, slot);
            ParseDiagnostic {
                severity: Severity::Error,
                line,
                column,
                message: format!(
                    "chamber {}: pair endpoints must be distinct, slot {slot} repeats",
                    chamber + 1
                ),
                code: DiagnosticCode::PairDegenerate,
            }
        }
        Violation::SlotReused { chamber, side, slot } => {
            let (line, column) = slot_position(chamber, side, slot);
            ParseDiagnostic {
                severity: Severity::Error,
                line,
                column,
                message: format!(
                    "chamber {}: {} slot {slot} is used by more than one endpoint",
                    chamber + 1,
                    side_name(side)
                ),
                code: DiagnosticCode::SlotReused,
            }
        }
        Violation::SlotGap { chamber, side, missing } => ParseDiagnostic {
            severity: Severity::Error,
            line: chambers[chamber].line,
            column: chambers[chamber].column,
            message: format!(
                "chamber {}: {} slots must be dense from 0, slot {missing} is unused",
                chamber + 1,
                side_name(side)
            ),
            code: DiagnosticCode::SlotGap,
        },
    }
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Bottom => "bottom",
        Side::Top => "top",
    }
}

// ── Serializer ──────────────────────────────────────────────────────────

/// Canonical text for a valid link: fixed casing, one piece per line in
/// catalog order, two-space indentation, LF endings.
pub fn emit(name: &str, link: &ChamberLink) -> Result<String, InvalidLink> {
    link.ensure_valid()?;
    let mut out = String::new();
    out.push_str("link ");
    out.push_str(name);
    out.push_str(" {\n");
    for chamber in link.chambers() {
        out.push_str("  chamber {\n");
        for piece in chamber.pieces() {
            out.push_str("    ");
            match *piece {
                Piece::Clasp {
                    kind,
                    top_pair,
                    bottom_pair,
                } => {
                    let keyword = match kind {
                        ClaspKind::Whitehead => "whitehead",
                        ClaspKind::SquareKnot => "squareknot",
                        ClaspKind::Antoine => "antoine",
                    };
                    out.push_str(&format!(
                        "{keyword} top({},{}) bottom({},{});",
                        top_pair.0, top_pair.1, bottom_pair.0, bottom_pair.1
                    ));
                }
                Piece::Span { bottom, top } => {
                    out.push_str(&format!("span {bottom} -> {top};"));
                }
                Piece::Turn { side, pair } => {
                    out.push_str(&format!("turn {}({},{});", side_name(side), pair.0, pair.1));
                }
                Piece::Circle => out.push_str("circle;"),
            }
            out.push('\n');
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    Ok(out)
}

// ── Corpus ──────────────────────────────────────────────────────────────

/// Canonical source text of one shipped corpus entry.
pub fn corpus_source(name: &str) -> Option<&'static str> {
    match name {
        "whitehead" => Some(include_str!("../corpus/whitehead.cld")),
        "bing" => Some(include_str!("../corpus/bing.cld")),
        "antoine" => Some(include_str!("../corpus/antoine.cld")),
        "algebraic2" => Some(include_str!("../corpus/algebraic2.cld")),
        "mcmillan4" => Some(include_str!("../corpus/mcmillan4.cld")),
        "knotted3" => Some(include_str!("../corpus/knotted3.cld")),
        "gabai" => Some(include_str!("../corpus/gabai.cld")),
        "complicated" => Some(include_str!("../corpus/complicated.cld")),
        _ => None,
    }
}

/// Parse one shipped corpus entry. The shipped text is the canonical
/// form of the equally named builder, which a test enforces.
pub fn load_corpus(name: &str) -> Result<ChamberLink, CorpusError> {
    let source = corpus_source(name).ok_or_else(|| CorpusError::UnknownName(name.into()))?;
    let doc = SourceDocument::from_file(format!("corpus/{name}.cld"), source);
    parse(&doc)
        .into_result()
        .map(|document| document.link)
        .map_err(CorpusError::Parse)
}
