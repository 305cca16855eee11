use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use pcn::extractor::{
    build_pcn, is_reserved, scan_source, tokenize, ExtractorConfig, Scope, TokenKind,
};
use pcn::Error;
use proptest::prelude::*;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/corpus")
        .join(name)
}

#[test]
fn toy_kernel() {
    let (g, rep) = build_pcn(&corpus("toy"), &ExtractorConfig::default()).unwrap();
    assert_eq!(g.names(), ["f", "g"]);
    assert_eq!(g.edges().len(), 1);
    assert_eq!(g.multiplicity(0, 1), 1);
    assert!(rep.unresolved_calls.is_empty());
    assert_eq!(rep.files_scanned, 2);
}

#[test]
fn trap_corpus_has_no_false_definitions() {
    let (g, rep) = build_pcn(&corpus("traps"), &ExtractorConfig::default()).unwrap();
    assert_eq!(
        g.names(),
        ["real_one", "die", "helper", "name_of", "knr_style"]
    );
    let edges: Vec<(&str, &str)> = g
        .edges()
        .iter()
        .map(|e| (g.name(e.src), g.name(e.dst)))
        .collect();
    assert_eq!(edges, [("knr_style", "real_one"), ("knr_style", "helper")]);
    assert!(rep.diagnostics.is_empty(), "{:?}", rep.diagnostics);
}

#[test]
fn header_only_scan_is_an_empty_corpus() {
    let cfg = ExtractorConfig {
        extensions: vec!["h".into()],
        ..Default::default()
    };
    assert!(matches!(
        build_pcn(&corpus("traps"), &cfg),
        Err(Error::EmptyCorpus(_))
    ));
}

#[test]
fn missing_root() {
    let err = build_pcn(
        Path::new("/definitely/not/here"),
        &ExtractorConfig::default(),
    )
    .unwrap_err();
    assert!(matches!(err, Error::CorpusNotFound(_)));
}

#[test]
fn external_calls_are_unresolved() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("a.c"),
        "void f(void) { undefined_lib(); undefined_lib(1); }\n",
    )
    .unwrap();
    let (g, rep) = build_pcn(dir.path(), &ExtractorConfig::default()).unwrap();
    assert_eq!(g.node_count(), 1);
    assert!(g.edges().is_empty());
    assert_eq!(
        rep.unresolved_calls,
        BTreeMap::from([("undefined_lib".to_string(), 2)])
    );
}

#[test]
fn file_scope_keeps_statics_apart() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("a.c"),
        "static int init(void) { }\nint a(void) { init(); }\n",
    )
    .unwrap();
    std::fs::write(
        dir.path().join("b.c"),
        "static int init(void) { }\nint b(void) { init(); }\n",
    )
    .unwrap();
    let (global, _) = build_pcn(dir.path(), &ExtractorConfig::default()).unwrap();
    assert_eq!(global.node_count(), 3);
    let cfg = ExtractorConfig {
        scope: Scope::File,
        ..Default::default()
    };
    let (local, _) = build_pcn(dir.path(), &cfg).unwrap();
    assert_eq!(local.node_count(), 4);
    assert_eq!(local.edges().len(), 2);
    assert!(local.edges().iter().all(|e| e.src != e.dst));
}

const KEYWORDS: &[&str] = &[
    "if", "while", "for", "switch", "return", "sizeof", "do", "else",
];
const PUNCT: &[&str] = &[
    "(", ")", "{", "}", ";", ",", "->", "++", "<<=", "*", "&&", "!", "[", "]", "?", ":",
];

fn arb_plain_token() -> impl Strategy<Value = String> {
    prop_oneof![
        "[a-zA-Z_][a-zA-Z0-9_]{0,8}",
        "[0-9]{1,5}",
        "0x[0-9a-f]{1,4}",
        prop::sample::select(PUNCT).prop_map(String::from),
        prop::sample::select(KEYWORDS).prop_map(String::from),
    ]
}

/// A small C file: definitions with bodies calling defined and external
/// names, wrapped in keyword clutter.
#[derive(Debug, Clone)]
struct Program {
    defs: Vec<(usize, Vec<usize>)>,
}

const NAMES: &[&str] = &[
    "alpha", "beta", "gamma", "delta", "ext_one", "ext_two", "epsilon",
];

fn arb_program() -> impl Strategy<Value = Program> {
    prop::collection::vec(
        (0..4usize, prop::collection::vec(0..NAMES.len(), 0..6)),
        1..6,
    )
    .prop_map(|defs| Program { defs })
}

impl Program {
    fn source(&self) -> String {
        let mut s = String::from("#include <x.h>\n");
        for (def, calls) in &self.defs {
            s.push_str(&format!(
                "static int {}(int x)\n{{\n\tif (x) {{\n",
                NAMES[*def]
            ));
            for &c in calls {
                s.push_str(&format!("\t\twhile (x--) {}(x);\n", NAMES[c]));
            }
            s.push_str("\t}\n\treturn sizeof(x);\n}\n\n");
        }
        s
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn tokenizer_round_trip(words in prop::collection::vec(arb_plain_token(), 0..60)) {
        let text = words.join(" ");
        let (tokens, diags) = tokenize(text.as_bytes(), Path::new("t.c"));
        prop_assert!(diags.is_empty());
        let joined = tokens.iter().map(|t| t.text.as_str()).collect::<Vec<_>>().join(" ");
        let (again, _) = tokenize(joined.as_bytes(), Path::new("t.c"));
        let key = |ts: &[pcn::extractor::Token]| ts.iter().map(|t| (t.kind, t.text.clone())).collect::<Vec<_>>();
        prop_assert_eq!(key(&tokens), key(&again));
        prop_assert!(tokens.iter().all(|t| t.kind != TokenKind::StringLiteral));
    }

    #[test]
    fn generated_corpus_properties(files in prop::collection::vec(arb_program(), 1..4)) {
        let dir = tempfile::tempdir().unwrap();
        for (i, p) in files.iter().enumerate() {
            std::fs::write(dir.path().join(format!("f{i}.c")), p.source()).unwrap();
        }
        let cfg = ExtractorConfig::default();
        let (g, rep) = build_pcn(dir.path(), &cfg).unwrap();

        // Conservation.
        let unresolved: u64 = rep.unresolved_calls.values().sum();
        prop_assert_eq!(rep.calls_total, g.total_calls() + unresolved);
        prop_assert_eq!(rep.resolved_calls, g.total_calls());

        // Expected graph, computed directly from the generator.
        let mut defined: Vec<&str> = Vec::new();
        for p in &files {
            for (d, _) in &p.defs {
                if !defined.contains(&NAMES[*d]) {
                    defined.push(NAMES[*d]);
                }
            }
        }
        prop_assert_eq!(g.names(), defined.as_slice());
        let mut expected: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for p in &files {
            for (d, calls) in &p.defs {
                for &c in calls {
                    if let Some(dst) = defined.iter().position(|n| *n == NAMES[c]) {
                        let src = defined.iter().position(|n| *n == NAMES[*d]).unwrap();
                        *expected.entry((src, dst)).or_default() += 1;
                    }
                }
            }
        }
        let got: BTreeMap<(usize, usize), u64> = g.edges().iter().map(|e| ((e.src, e.dst), e.multiplicity)).collect();
        prop_assert_eq!(got, expected);

        // Nothing reserved leaks through.
        prop_assert!(g.names().iter().all(|n| !is_reserved(n)));
        prop_assert!(rep.unresolved_calls.keys().all(|n| !is_reserved(n)));

        // Determinism.
        let (g2, rep2) = build_pcn(dir.path(), &cfg).unwrap();
        prop_assert_eq!(g, g2);
        prop_assert_eq!(rep, rep2);
    }

    #[test]
    fn keywords_never_become_procedures(words in prop::collection::vec(arb_plain_token(), 0..80)) {
        let text = words.join(" ");
        let fp = scan_source(text.as_bytes(), Path::new("k.c"));
        prop_assert!(fp.definitions.iter().all(|d| !is_reserved(&d.name)));
        prop_assert!(fp.calls.iter().all(|c| !is_reserved(&c.callee_name)));
    }
}

#[test]
fn creation_order_does_not_matter() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let files = [
        ("z.c", "int z(void) { a(); }\n"),
        ("a.c", "int a(void) { m(); z(); }\n"),
        ("m/m.c", "int m(void) { a(); }\n"),
    ];
    for (name, text) in files {
        std::fs::create_dir_all(a.path().join(name).parent().unwrap()).unwrap();
        std::fs::write(a.path().join(name), text).unwrap();
    }
    for (name, text) in files.iter().rev() {
        std::fs::create_dir_all(b.path().join(name).parent().unwrap()).unwrap();
        std::fs::write(b.path().join(name), text).unwrap();
    }
    let (ga, _) = build_pcn(a.path(), &ExtractorConfig::default()).unwrap();
    let (gb, _) = build_pcn(b.path(), &ExtractorConfig::default()).unwrap();
    assert_eq!(ga, gb);
    assert_eq!(ga.names(), ["a", "m", "z"]);
}
