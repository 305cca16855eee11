use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use walkdir::WalkDir;

use super::lexer::Diagnostic;
use super::procedures::{scan_source, FileProcedures, ProcedureDef};
use crate::error::{Error, Result};
use crate::graph::CallGraph;

/// How procedure identity is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    /// One node per name across the whole tree.
    #[default]
    Global,
    /// One node per (file, name). Calls resolve to the same file first, then
    /// to the first definition of that name in path order.
    File,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractorConfig {
    /// File extensions to scan, without the dot.
    pub extensions: Vec<String>,
    pub scope: Scope,
}

impl Default for ExtractorConfig {
    fn default() -> Self {
        ExtractorConfig {
            extensions: vec!["c".into(), "h".into()],
            scope: Scope::Global,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtractionReport {
    pub files_scanned: usize,
    /// Nodes in the graph (after merging).
    pub procedures_found: usize,
    /// Definitions seen before merging.
    pub definitions_found: usize,
    pub calls_total: u64,
    pub resolved_calls: u64,
    pub unresolved_calls: BTreeMap<String, u64>,
    pub diagnostics: Vec<Diagnostic>,
}

/// The graph's node table: one entry per node with every definition merged
/// into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcedureTable {
    pub procedures: Vec<ProcedureDef>,
}

/// Scans every matching file under `root` and builds the procedure call
/// network.
pub fn build_pcn(root: &Path, config: &ExtractorConfig) -> Result<(CallGraph, ExtractionReport)> {
    let (g, report, _) = build_pcn_with_table(root, config)?;
    Ok((g, report))
}

/// [`build_pcn`] that also returns the first definition site of each node.
pub fn build_pcn_with_table(
    root: &Path,
    config: &ExtractorConfig,
) -> Result<(CallGraph, ExtractionReport, ProcedureTable)> {
    if !root.exists() {
        return Err(Error::CorpusNotFound(root.to_path_buf()));
    }
    let files = source_files(root, config)?;
    let scanned: Vec<FileProcedures> = files
        .par_iter()
        .map(|path| {
            let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
            let rel = path.strip_prefix(root).unwrap_or(path);
            Ok(scan_source(&bytes, rel))
        })
        .collect::<Result<_>>()?;
    merge(root, scanned, config.scope, files.len())
}

fn source_files(root: &Path, config: &ExtractorConfig) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in WalkDir::new(root).follow_links(false) {
        let entry = entry.map_err(|e| {
            let path = e.path().unwrap_or(root).to_path_buf();
            Error::io(path, e.into())
        })?;
        if !entry.file_type().is_file() {
            continue;
        }
        let matches = entry
            .path()
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|ext| config.extensions.iter().any(|x| x == ext));
        if matches {
            files.push(entry.into_path());
        }
    }
    files.sort();
    Ok(files)
}

fn node_label(scope: Scope, def: &ProcedureDef) -> String {
    match scope {
        Scope::Global => def.name.clone(),
        Scope::File => format!("{}:{}", def.file.display(), def.name),
    }
}

/// Sequential fold over files in path order; node ids follow first
/// definition order.
fn merge(
    root: &Path,
    scanned: Vec<FileProcedures>,
    scope: Scope,
    files_scanned: usize,
) -> Result<(CallGraph, ExtractionReport, ProcedureTable)> {
    let mut labels: Vec<String> = Vec::new();
    let mut table: Vec<ProcedureDef> = Vec::new();
    let mut by_label: HashMap<String, usize> = HashMap::new();
    // name -> first node defining it, for resolution
    let mut by_name: HashMap<String, usize> = HashMap::new();
    // per file: name -> node
    let mut local: Vec<HashMap<String, usize>> = Vec::with_capacity(scanned.len());
    // per file: definition index -> node
    let mut def_nodes: Vec<Vec<usize>> = Vec::with_capacity(scanned.len());
    let mut definitions_found = 0;

    for file in &scanned {
        let mut local_names = HashMap::new();
        let mut nodes = Vec::with_capacity(file.definitions.len());
        for def in &file.definitions {
            definitions_found += 1;
            let label = node_label(scope, def);
            let id = *by_label.entry(label.clone()).or_insert_with(|| {
                labels.push(label);
                let mut d = def.clone();
                d.node_id = Some(table.len());
                table.push(d);
                table.len() - 1
            });
            by_name.entry(def.name.clone()).or_insert(id);
            local_names.entry(def.name.clone()).or_insert(id);
            nodes.push(id);
        }
        local.push(local_names);
        def_nodes.push(nodes);
    }

    if labels.is_empty() {
        return Err(Error::EmptyCorpus(root.to_path_buf()));
    }

    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    let mut unresolved: BTreeMap<String, u64> = BTreeMap::new();
    let mut calls_total = 0u64;
    let mut resolved_calls = 0u64;
    let mut diagnostics = Vec::new();
    for (f, file) in scanned.iter().enumerate() {
        for call in &file.calls {
            calls_total += call.count;
            let caller = def_nodes[f][call.caller];
            let callee = match scope {
                Scope::Global => by_name.get(&call.callee_name),
                Scope::File => local[f]
                    .get(&call.callee_name)
                    .or_else(|| by_name.get(&call.callee_name)),
            };
            match callee {
                Some(&callee) => {
                    resolved_calls += call.count;
                    edges.push((caller, callee, call.count));
                }
                None => *unresolved.entry(call.callee_name.clone()).or_insert(0) += call.count,
            }
        }
        diagnostics.extend(file.diagnostics.iter().cloned());
    }

    let graph = CallGraph::from_edges(labels, edges)?;
    let report = ExtractionReport {
        files_scanned,
        procedures_found: graph.node_count(),
        definitions_found,
        calls_total,
        resolved_calls,
        unresolved_calls: unresolved,
        diagnostics,
    };
    Ok((graph, report, ProcedureTable { procedures: table }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    fn corpus(files: &[(&str, &str)]) -> tempfile::TempDir {
        let dir = tempfile::tempdir().unwrap();
        for (name, body) in files {
            let p = dir.path().join(name);
            fs::create_dir_all(p.parent().unwrap()).unwrap();
            fs::write(p, body).unwrap();
        }
        dir
    }

    #[test]
    fn toy_two_file_corpus() {
        let dir = corpus(&[("a.c", "int f(void) { g(); }"), ("b.c", "int g(void) { }")]);
        let (g, r) = build_pcn(dir.path(), &ExtractorConfig::default()).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.names(), &["f".to_string(), "g".to_string()]);
        assert_eq!(g.multiplicity(0, 1), 1);
        assert!(r.unresolved_calls.is_empty());
        assert_eq!(r.files_scanned, 2);
    }

    #[test]
    fn external_calls_are_unresolved() {
        let dir = corpus(&[("a.c", "int f(void) { undefined_lib(); }")]);
        let (g, r) = build_pcn(dir.path(), &ExtractorConfig::default()).unwrap();
        assert_eq!(g.node_count(), 1);
        assert!(g.edges().is_empty());
        assert_eq!(r.unresolved_calls.get("undefined_lib"), Some(&1));
        assert_eq!(r.calls_total, 1);
    }

    #[test]
    fn missing_and_empty_corpus() {
        let err = build_pcn(
            Path::new("/definitely/not/here"),
            &ExtractorConfig::default(),
        );
        assert!(matches!(err, Err(Error::CorpusNotFound(_))));
        let dir = corpus(&[("x.c", "int x;"), ("notes.txt", "int f(){}")]);
        let err = build_pcn(dir.path(), &ExtractorConfig::default());
        assert!(matches!(err, Err(Error::EmptyCorpus(_))));
        assert!(err.unwrap_err().to_string().contains("empty corpus"));
    }

    #[test]
    fn same_name_merges_globally_and_splits_per_file() {
        let dir = corpus(&[
            (
                "a.c",
                "static int init(void) { } int main(void) { init(); }",
            ),
            (
                "b.c",
                "static int init(void) { helper(); } int helper(void) { init(); }",
            ),
        ]);
        let (g, _) = build_pcn(dir.path(), &ExtractorConfig::default()).unwrap();
        assert_eq!(g.node_count(), 3);
        let init = g.node_id("init").unwrap();
        let helper = g.node_id("helper").unwrap();
        assert_eq!(g.multiplicity(init, helper), 1);
        assert_eq!(g.multiplicity(helper, init), 1);

        let cfg = ExtractorConfig {
            scope: Scope::File,
            ..Default::default()
        };
        let (g, _) = build_pcn(dir.path(), &cfg).unwrap();
        assert_eq!(g.node_count(), 4);
        let a_init = g.node_id("a.c:init").unwrap();
        let b_init = g.node_id("b.c:init").unwrap();
        let main = g.node_id("a.c:main").unwrap();
        let helper = g.node_id("b.c:helper").unwrap();
        assert_eq!(g.multiplicity(main, a_init), 1);
        assert_eq!(g.multiplicity(helper, b_init), 1);
        assert_eq!(g.multiplicity(helper, a_init), 0);
    }

    #[test]
    fn extension_filter() {
        let dir = corpus(&[
            ("a.c", "int f(void) { }"),
            ("b.h", "static inline int g(void) { f(); }"),
        ]);
        let only_c = ExtractorConfig {
            extensions: vec!["c".into()],
            ..Default::default()
        };
        assert_eq!(build_pcn(dir.path(), &only_c).unwrap().0.node_count(), 1);
        assert_eq!(
            build_pcn(dir.path(), &ExtractorConfig::default())
                .unwrap()
                .0
                .node_count(),
            2
        );
    }

    #[test]
    fn conservation_of_calls() {
        let dir = corpus(&[
            ("a.c", "int f(void) { g(); g(); printf(\"x\"); f(); }"),
            ("b.c", "int g(void) { memcpy(a, b, 1); f(); }"),
        ]);
        let (g, r) = build_pcn(dir.path(), &ExtractorConfig::default()).unwrap();
        let unresolved: u64 = r.unresolved_calls.values().sum();
        assert_eq!(r.calls_total, g.total_calls() + unresolved);
        assert_eq!(r.resolved_calls, g.total_calls());
        assert_eq!(g.multiplicity(0, 0), 1);
    }
}
