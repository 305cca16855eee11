//! Definition and call recognition over a token stream.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use super::lexer::{Diagnostic, Token, TokenKind};

/// Words that may precede `(` but never name a procedure: every C99/C11
/// keyword plus the usual GNU spellings.
pub const RESERVED: &[&str] = &[
    "if",
    "for",
    "while",
    "switch",
    "return",
    "sizeof",
    "do",
    "else",
    "goto",
    "case",
    "default",
    "typedef",
    "struct",
    "union",
    "enum",
    "auto",
    "break",
    "char",
    "const",
    "continue",
    "double",
    "extern",
    "float",
    "inline",
    "int",
    "long",
    "register",
    "restrict",
    "short",
    "signed",
    "static",
    "unsigned",
    "void",
    "volatile",
    "_Alignas",
    "_Alignof",
    "_Atomic",
    "_Bool",
    "_Complex",
    "_Generic",
    "_Imaginary",
    "_Noreturn",
    "_Static_assert",
    "_Thread_local",
    "asm",
    "__asm",
    "__asm__",
    "typeof",
    "__typeof",
    "__typeof__",
    "__attribute",
    "__attribute__",
    "__alignof",
    "__alignof__",
    "__extension__",
    "__inline",
    "__inline__",
    "__volatile__",
    "__const",
    "__const__",
    "__restrict",
    "__restrict__",
    "__signed__",
];

pub fn is_reserved(word: &str) -> bool {
    RESERVED.contains(&word)
}

/// Maximum number of tokens between `)` and `{` accepted as K&R parameter
/// declarations.
const KR_LOOKAHEAD: usize = 64;

/// A procedure definition found in one file. `node_id` is assigned when the
/// corpus is merged into a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcedureDef {
    pub name: String,
    pub file: PathBuf,
    pub start_line: u32,
    pub end_line: u32,
    pub node_id: Option<usize>,
    /// Token index range of the body, braces excluded.
    pub body: std::ops::Range<usize>,
}

/// Aggregated call occurrences from one definition. `caller` is an index into
/// whatever definition list the records were produced for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CallRecord {
    pub caller: usize,
    pub callee_name: String,
    pub count: u64,
}

/// Finds every procedure definition at brace depth zero.
///
/// Recognized shape: `name ( ... ) {`, or `name ( ... ) decls ; {` for K&R
/// parameter declarations. Definitions whose body never closes are dropped
/// and reported.
pub fn extract_definitions(tokens: &[Token]) -> (Vec<ProcedureDef>, Vec<Diagnostic>) {
    // Directives are invisible to the structure scan.
    let idx: Vec<usize> = tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.kind != TokenKind::PreprocessorLine)
        .map(|(i, _)| i)
        .collect();
    let tok = |k: usize| &tokens[idx[k]];

    let mut defs = Vec::new();
    let mut diags = Vec::new();
    let file = tokens
        .first()
        .map(|t| t.file.to_path_buf())
        .unwrap_or_default();

    let mut depth: usize = 0;
    let mut k = 0;
    while k < idx.len() {
        let t = tok(k);
        if t.is_punct("{") {
            depth += 1;
            k += 1;
            continue;
        }
        if t.is_punct("}") {
            if depth == 0 {
                diags.push(Diagnostic::new(&file, t.line, "unbalanced '}'"));
            } else {
                depth -= 1;
            }
            k += 1;
            continue;
        }
        if depth > 0 || !is_candidate_name(tokens, &idx, k) {
            k += 1;
            continue;
        }
        let Some(open_brace) = definition_body_start(tokens, &idx, k) else {
            k += 1;
            continue;
        };
        match matching_brace(tokens, &idx, open_brace) {
            Some(close) => {
                defs.push(ProcedureDef {
                    name: t.text.clone(),
                    file: t.file.to_path_buf(),
                    start_line: t.line,
                    end_line: tok(close).line,
                    node_id: None,
                    body: idx[open_brace] + 1..idx[close],
                });
                k = close + 1;
            }
            None => {
                diags.push(Diagnostic::new(
                    &file,
                    tok(open_brace).line,
                    format!("unbalanced braces: body of '{}' never closes", t.text),
                ));
                break;
            }
        }
    }
    (defs, diags)
}

fn is_candidate_name(tokens: &[Token], idx: &[usize], k: usize) -> bool {
    let t = &tokens[idx[k]];
    if !t.is_identifier() || is_reserved(&t.text) {
        return false;
    }
    if k > 0 {
        let prev = &tokens[idx[k - 1]];
        if prev.is_punct(".") || prev.is_punct("->") {
            return false;
        }
    }
    idx.get(k + 1).is_some_and(|&j| tokens[j].is_punct("("))
}

/// Given a candidate name at `k`, returns the position (in `idx`) of the `{`
/// that opens its body, if the shape matches a definition.
fn definition_body_start(tokens: &[Token], idx: &[usize], k: usize) -> Option<usize> {
    let tok = |p: usize| &tokens[idx[p]];
    // Matching ')' of the parameter list.
    let mut depth = 0usize;
    let mut p = k + 1;
    let close = loop {
        let t = tokens.get(*idx.get(p)?)?;
        if t.is_punct("(") {
            depth += 1;
        } else if t.is_punct(")") {
            depth -= 1;
            if depth == 0 {
                break p;
            }
        } else if t.is_punct("{") || t.is_punct("}") || t.is_punct(";") {
            return None;
        }
        p += 1;
    };
    let next = close + 1;
    if next >= idx.len() {
        return None;
    }
    if tok(next).is_punct("{") {
        return Some(next);
    }
    // K&R: declarations ending in ';' directly before '{'.
    if !tok(next).is_identifier() {
        return None;
    }
    let mut q = next;
    while q < idx.len() && q - next < KR_LOOKAHEAD {
        let t = tok(q);
        if t.is_punct("{") {
            return tok(q - 1).is_punct(";").then_some(q);
        }
        let allowed = match t.kind {
            TokenKind::Identifier | TokenKind::NumberLiteral => true,
            TokenKind::Punctuation => {
                matches!(t.text.as_str(), "*" | "," | ";" | "[" | "]" | "(" | ")")
            }
            _ => false,
        };
        if !allowed {
            return None;
        }
        q += 1;
    }
    None
}

fn matching_brace(tokens: &[Token], idx: &[usize], open: usize) -> Option<usize> {
    let mut depth = 0usize;
    for (p, &i) in idx.iter().enumerate().skip(open) {
        let t = &tokens[i];
        if t.is_punct("{") {
            depth += 1;
        } else if t.is_punct("}") {
            depth -= 1;
            if depth == 0 {
                return Some(p);
            }
        }
    }
    None
}

/// Collects the direct calls in a body: every non-reserved identifier
/// immediately followed by `(`, unless it is a member access (`.`/`->`).
/// Occurrences are aggregated per callee name, every occurrence counted.
pub fn extract_calls(caller: usize, body_tokens: &[Token]) -> Vec<CallRecord> {
    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    let significant: Vec<&Token> = body_tokens
        .iter()
        .filter(|t| t.kind != TokenKind::PreprocessorLine)
        .collect();
    for (k, t) in significant.iter().enumerate() {
        if !t.is_identifier() || is_reserved(&t.text) {
            continue;
        }
        if !significant.get(k + 1).is_some_and(|n| n.is_punct("(")) {
            continue;
        }
        if k > 0 && (significant[k - 1].is_punct(".") || significant[k - 1].is_punct("->")) {
            continue;
        }
        *counts.entry(t.text.as_str()).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .map(|(name, count)| CallRecord {
            caller,
            callee_name: name.to_string(),
            count,
        })
        .collect()
}

/// Everything extracted from one source file.
#[derive(Debug, Clone, Default)]
pub struct FileProcedures {
    pub path: PathBuf,
    pub definitions: Vec<ProcedureDef>,
    /// `caller` indexes into `definitions`.
    pub calls: Vec<CallRecord>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Tokenizes one file and extracts its definitions and their calls.
pub fn scan_source(source: &[u8], path: &Path) -> FileProcedures {
    let (tokens, mut diagnostics) = super::lexer::tokenize(source, path);
    let (definitions, def_diags) = extract_definitions(&tokens);
    diagnostics.extend(def_diags);
    let calls = definitions
        .iter()
        .enumerate()
        .flat_map(|(i, d)| extract_calls(i, &tokens[d.body.clone()]))
        .collect();
    FileProcedures {
        path: path.to_path_buf(),
        definitions,
        calls,
        diagnostics,
    }
}
