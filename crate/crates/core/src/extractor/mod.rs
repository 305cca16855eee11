//! Procedure call network extraction from C sources by lexical scanning.
//!
//! The pipeline is [`tokenize`] → [`extract_definitions`] →
//! [`extract_calls`], folded over a source tree by [`build_pcn`].
//! No preprocessing happens: directives are single opaque tokens, so macro
//! bodies contribute neither definitions nor calls.

mod corpus;
mod lexer;
mod procedures;

pub use corpus::{
    build_pcn, build_pcn_with_table, ExtractionReport, ExtractorConfig, ProcedureTable, Scope,
};
pub use lexer::{tokenize, Diagnostic, Token, TokenKind};
pub use procedures::{
    extract_calls, extract_definitions, is_reserved, scan_source, CallRecord, FileProcedures,
    ProcedureDef, RESERVED,
};
