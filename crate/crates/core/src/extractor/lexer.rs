//! Tolerant C tokenizer.
//!
//! Works on raw bytes. Comments are dropped, string and char literals are
//! atomic, and every preprocessor directive (with its backslash
//! continuations joined) becomes a single token. Bytes >= 0x80 outside
//! literals separate tokens and are otherwise ignored.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TokenKind {
    Identifier,
    Punctuation,
    NumberLiteral,
    StringLiteral,
    CharLiteral,
    PreprocessorLine,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub file: Arc<Path>,
    /// 1-based line of the first character.
    pub line: u32,
}

impl Token {
    pub fn is_punct(&self, p: &str) -> bool {
        self.kind == TokenKind::Punctuation && self.text == p
    }

    pub fn is_identifier(&self) -> bool {
        self.kind == TokenKind::Identifier
    }
}

/// Non-fatal scanning problem. Scanning always continues.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub file: String,
    pub line: u32,
    pub message: String,
}

impl Diagnostic {
    pub(crate) fn new(file: &Path, line: u32, message: impl Into<String>) -> Self {
        Diagnostic {
            file: file.display().to_string(),
            line,
            message: message.into(),
        }
    }
}

// Longest first within each leading byte; maximal munch picks the first hit.
const PUNCTUATORS: &[&str] = &[
    "<<=", ">>=", "...", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||", "+=",
    "-=", "*=", "/=", "%=", "&=", "|=", "^=", "##",
];

/// Splits `source` into tokens.
///
/// Unterminated block comments and literals produce a diagnostic and
/// scanning resumes on the line after the one where they started.
pub fn tokenize(source: &[u8], file: &Path) -> (Vec<Token>, Vec<Diagnostic>) {
    let file: Arc<Path> = Arc::from(file);
    let mut lexer = Lexer {
        src: source,
        pos: 0,
        line: 1,
        line_start: true,
        file,
        tokens: Vec::new(),
        diagnostics: Vec::new(),
    };
    lexer.run();
    (lexer.tokens, lexer.diagnostics)
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: u32,
    /// Only whitespace seen since the last newline.
    line_start: bool,
    file: Arc<Path>,
    tokens: Vec<Token>,
    diagnostics: Vec<Diagnostic>,
}

fn is_ident_start(b: u8) -> bool {
    b.is_ascii_alphabetic() || b == b'_'
}

fn is_ident_continue(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

impl<'a> Lexer<'a> {
    fn peek(&self, off: usize) -> Option<u8> {
        self.src.get(self.pos + off).copied()
    }

    fn push(&mut self, kind: TokenKind, text: String, line: u32) {
        self.tokens.push(Token {
            kind,
            text,
            file: Arc::clone(&self.file),
            line,
        });
    }

    fn diag(&mut self, line: u32, message: &str) {
        self.diagnostics
            .push(Diagnostic::new(&self.file, line, message));
    }

    /// Moves to the first byte after the newline that ends `line`.
    fn resume_after_line(&mut self, start: usize, line: u32) {
        let mut p = start;
        while p < self.src.len() && self.src[p] != b'\n' {
            p += 1;
        }
        self.pos = (p + 1).min(self.src.len());
        self.line = line + 1;
        self.line_start = true;
    }

    fn run(&mut self) {
        while let Some(b) = self.peek(0) {
            match b {
                b'\n' => {
                    self.pos += 1;
                    self.line += 1;
                    self.line_start = true;
                }
                b' ' | b'\t' | b'\r' | 0x0b | 0x0c => self.pos += 1,
                b'\\' if self.continuation_len(self.pos) > 0 => {
                    self.pos += self.continuation_len(self.pos);
                    self.line += 1;
                }
                b'/' if self.peek(1) == Some(b'/') => self.skip_line_comment(),
                b'/' if self.peek(1) == Some(b'*') => {
                    if !self.skip_block_comment() {
                        continue;
                    }
                }
                b'#' if self.line_start => self.directive(),
                b'"' | b'\'' => {
                    self.line_start = false;
                    self.literal(self.pos, self.pos);
                }
                _ if is_ident_start(b) => {
                    self.line_start = false;
                    self.identifier();
                }
                _ if b.is_ascii_digit()
                    || (b == b'.' && self.peek(1).is_some_and(|c| c.is_ascii_digit())) =>
                {
                    self.line_start = false;
                    self.number();
                }
                _ if !(0x20..0x7f).contains(&b) => self.pos += 1,
                _ => {
                    self.line_start = false;
                    self.punctuation();
                }
            }
        }
    }

    /// Length of a backslash-newline sequence at `p` (0 if none).
    fn continuation_len(&self, p: usize) -> usize {
        if self.src.get(p) != Some(&b'\\') {
            return 0;
        }
        match (self.src.get(p + 1), self.src.get(p + 2)) {
            (Some(b'\n'), _) => 2,
            (Some(b'\r'), Some(b'\n')) => 3,
            _ => 0,
        }
    }

    fn skip_line_comment(&mut self) {
        while let Some(b) = self.peek(0) {
            if b == b'\n' {
                return;
            }
            let cont = self.continuation_len(self.pos);
            if cont > 0 {
                self.pos += cont;
                self.line += 1;
            } else {
                self.pos += 1;
            }
        }
    }

    /// Returns false when the comment is unterminated (position already
    /// moved to the line after the comment start).
    fn skip_block_comment(&mut self) -> bool {
        let start = self.pos;
        let start_line = self.line;
        let mut p = self.pos + 2;
        let mut line = self.line;
        while p + 1 < self.src.len() {
            if self.src[p] == b'*' && self.src[p + 1] == b'/' {
                self.pos = p + 2;
                self.line = line;
                return true;
            }
            if self.src[p] == b'\n' {
                line += 1;
            }
            p += 1;
        }
        self.diag(start_line, "unterminated block comment");
        self.resume_after_line(start, start_line);
        false
    }

    fn identifier(&mut self) {
        let start = self.pos;
        while self.peek(0).is_some_and(is_ident_continue) {
            self.pos += 1;
        }
        let text = &self.src[start..self.pos];
        // Encoding prefixes glue onto the literal that follows.
        if matches!(text, b"L" | b"u" | b"U" | b"u8")
            && matches!(self.peek(0), Some(b'"') | Some(b'\''))
        {
            self.literal(start, self.pos);
            return;
        }
        let line = self.line;
        self.push(TokenKind::Identifier, ascii(text), line);
    }

    fn number(&mut self) {
        let start = self.pos;
        while let Some(b) = self.peek(0) {
            let exponent_sign = (b == b'+' || b == b'-')
                && matches!(self.src[self.pos - 1], b'e' | b'E' | b'p' | b'P');
            if is_ident_continue(b) || b == b'.' || exponent_sign {
                self.pos += 1;
            } else {
                break;
            }
        }
        let line = self.line;
        self.push(
            TokenKind::NumberLiteral,
            ascii(&self.src[start..self.pos]),
            line,
        );
    }

    /// Scans a quoted literal whose opening quote is at `quote`; `start` may
    /// precede it when an encoding prefix is present.
    fn literal(&mut self, start: usize, quote: usize) {
        let delim = self.src[quote];
        let line = self.line;
        let mut p = quote + 1;
        let mut lines = 0;
        loop {
            match self.src.get(p) {
                None | Some(b'\n') => {
                    let what = if delim == b'"' { "string" } else { "char" };
                    self.diag(line, &format!("unterminated {what} literal"));
                    self.resume_after_line(quote, line);
                    return;
                }
                Some(b'\\') => {
                    let cont = self.continuation_len(p);
                    if cont > 0 {
                        p += cont;
                        lines += 1;
                    } else {
                        p += 2;
                    }
                }
                Some(&b) if b == delim => {
                    p += 1;
                    break;
                }
                Some(_) => p += 1,
            }
        }
        let kind = if delim == b'"' {
            TokenKind::StringLiteral
        } else {
            TokenKind::CharLiteral
        };
        let text = String::from_utf8_lossy(&self.src[start..p.min(self.src.len())]).into_owned();
        self.pos = p.min(self.src.len());
        self.line += lines;
        self.push(kind, text, line);
    }

    /// A directive runs to the first newline not preceded by a backslash.
    /// Comments inside it are dropped (and may span lines).
    fn directive(&mut self) {
        let line = self.line;
        let mut text: Vec<u8> = Vec::new();
        while let Some(b) = self.peek(0) {
            match b {
                b'\n' => break,
                b'\\' if self.continuation_len(self.pos) > 0 => {
                    self.pos += self.continuation_len(self.pos);
                    self.line += 1;
                }
                b'/' if self.peek(1) == Some(b'/') => self.skip_line_comment(),
                b'/' if self.peek(1) == Some(b'*') => {
                    if !self.skip_block_comment() {
                        // Already advanced past the directive's line.
                        break;
                    }
                    text.push(b' ');
                }
                b'"' | b'\'' => {
                    let start = self.pos;
                    let mut p = self.pos + 1;
                    while let Some(&c) = self.src.get(p) {
                        if c == b'\\' && p + 1 < self.src.len() && self.src[p + 1] != b'\n' {
                            p += 2;
                            continue;
                        }
                        if c == b'\n' {
                            break;
                        }
                        p += 1;
                        if c == b {
                            break;
                        }
                    }
                    let p = p.min(self.src.len());
                    text.extend_from_slice(&self.src[start..p]);
                    self.pos = p;
                }
                _ => {
                    text.push(b);
                    self.pos += 1;
                }
            }
        }
        let trimmed = String::from_utf8_lossy(&text).trim_end().to_string();
        self.push(TokenKind::PreprocessorLine, trimmed, line);
        self.line_start = true;
    }

    fn punctuation(&mut self) {
        let line = self.line;
        let rest = &self.src[self.pos..];
        for p in PUNCTUATORS {
            if rest.starts_with(p.as_bytes()) {
                self.pos += p.len();
                self.push(TokenKind::Punctuation, (*p).to_string(), line);
                return;
            }
        }
        let b = self.src[self.pos];
        self.pos += 1;
        self.push(TokenKind::Punctuation, (b as char).to_string(), line);
    }
}

fn ascii(bytes: &[u8]) -> String {
    // Callers only pass ASCII ranges.
    String::from_utf8_lossy(bytes).into_owned()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex(src: &str) -> Vec<(TokenKind, String)> {
        let (toks, _) = tokenize(src.as_bytes(), Path::new("t.c"));
        toks.into_iter().map(|t| (t.kind, t.text)).collect()
    }

    fn texts(src: &str) -> Vec<String> {
        lex(src).into_iter().map(|(_, t)| t).collect()
    }

    #[test]
    fn block_comment_is_elided() {
        use TokenKind::*;
        assert_eq!(
            lex("/* x */ foo(1);"),
            vec![
                (Identifier, "foo".into()),
                (Punctuation, "(".into()),
                (NumberLiteral, "1".into()),
                (Punctuation, ")".into()),
                (Punctuation, ";".into()),
            ]
        );
    }

    #[test]
    fn string_literal_is_atomic() {
        assert_eq!(
            lex("\"a(b)\""),
            vec![(TokenKind::StringLiteral, "\"a(b)\"".into())]
        );
        assert_eq!(texts(r#"x = "a\"b(" ;"#), vec!["x", "=", r#""a\"b(""#, ";"]);
    }

    #[test]
    fn directive_is_one_token() {
        use TokenKind::*;
        assert_eq!(
            lex("#define CALL foo()\nbar();"),
            vec![
                (PreprocessorLine, "#define CALL foo()".into()),
                (Identifier, "bar".into()),
                (Punctuation, "(".into()),
                (Punctuation, ")".into()),
                (Punctuation, ";".into()),
            ]
        );
    }

    #[test]
    fn directive_continuations_join() {
        let toks = lex("  #define M(a) \\\n  g(a)\nh();");
        assert_eq!(toks[0].0, TokenKind::PreprocessorLine);
        assert!(toks[0].1.contains("g(a)"));
        assert_eq!(toks[1], (TokenKind::Identifier, "h".into()));
    }

    #[test]
    fn comments_inside_directive_are_dropped() {
        let toks = lex("#define A 1 /* spans\n two lines */ \nx");
        assert_eq!(toks.len(), 2);
        assert!(!toks[0].1.contains("spans"));
        assert_eq!(toks[1].1, "x");
    }

    #[test]
    fn hash_not_at_line_start_is_punctuation() {
        assert_eq!(texts("a # b"), vec!["a", "#", "b"]);
    }

    #[test]
    fn line_comment_and_line_numbers() {
        let (toks, _) = tokenize(b"a // c(\nb\n\n/* \n */ c", Path::new("t.c"));
        let lines: Vec<u32> = toks.iter().map(|t| t.line).collect();
        assert_eq!(lines, vec![1, 2, 5]);
    }

    #[test]
    fn multi_char_punctuators() {
        assert_eq!(
            texts("p->f(x)... a<<=b ++c"),
            vec!["p", "->", "f", "(", "x", ")", "...", "a", "<<=", "b", "++", "c"]
        );
    }

    #[test]
    fn numbers_with_exponents_and_suffixes() {
        assert_eq!(
            texts("1e-5 0x1fUL .5f 3"),
            vec!["1e-5", "0x1fUL", ".5f", "3"]
        );
    }

    #[test]
    fn char_literals() {
        assert_eq!(
            lex("'(' '\\''"),
            vec![
                (TokenKind::CharLiteral, "'('".into()),
                (TokenKind::CharLiteral, "'\\''".into())
            ]
        );
    }

    #[test]
    fn prefixed_literals() {
        assert_eq!(
            lex("L\"x(\""),
            vec![(TokenKind::StringLiteral, "L\"x(\"".into())]
        );
    }

    #[test]
    fn unterminated_block_comment_resumes_next_line() {
        let (toks, diags) = tokenize(b"a /* never closed\nb c", Path::new("t.c"));
        let t: Vec<_> = toks.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(t, vec!["a", "b", "c"]);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].line, 1);
        assert!(diags[0].message.contains("block comment"));
    }

    #[test]
    fn unterminated_string_resumes_next_line() {
        let (toks, diags) = tokenize(b"x = \"oops (\nf();", Path::new("t.c"));
        let t: Vec<_> = toks.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(t, vec!["x", "=", "f", "(", ")", ";"]);
        assert_eq!(diags.len(), 1);
        assert_eq!(toks[2].line, 2);
    }

    #[test]
    fn high_bytes_separate_identifiers() {
        let (toks, _) = tokenize(b"ab\xe9cd /* caf\xe9 */ \"\xe9\"", Path::new("t.c"));
        assert_eq!(toks.len(), 3);
        assert_eq!(toks[0].text, "ab");
        assert_eq!(toks[1].text, "cd");
        assert_eq!(toks[2].kind, TokenKind::StringLiteral);
    }

    #[test]
    fn backslash_newline_outside_directive() {
        assert_eq!(texts("a\\\nb"), vec!["a", "b"]);
    }
}
