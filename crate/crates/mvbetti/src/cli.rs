//! Command-line front end: parse a space description, run a pipeline,
//! report Betti numbers.
//!
//! The input is a line-oriented text file:
//!
//! ```text
//! # comments run to end of line
//! vertex a                # declare a vertex label
//! simplex a b c           # declare a simplex (faces are added for you)
//! subcomplex Name {       # a named subcomplex of the space
//!   simplex a b           #   generators, closed under faces
//!   all-containing a      #   or the closed star of a vertex
//! }
//! cover 0 = Name, Other   # an explicit cover for an index path
//! ```
//!
//! Index paths address the recursion's intersection indices: `0` is the
//! whole space, `0/A.B` the intersection of cover elements `A` and `B` of
//! the root cover, and so on. Paths without an explicit `cover` line fall
//! back to vertex-star covers.
//!
//! Five pipelines share this input:
//!
//! * `oracle` — direct simplicial cohomology of the whole space;
//! * `nerve` — cohomology of the nerve of the root cover;
//! * `betti01` — the first two Betti numbers from a depth-3 nerve;
//! * `mv` — the one-level Mayer–Vietoris double complex of the root cover;
//! * `recursive` — the full recursive tower over the index DAG.
//!
//! The result is a deterministic key–value record on standard output
//! (`--machine` switches to one line of JSON, `--out` redirects to a
//! file); wall-clock time and warnings go to standard error so that
//! identical inputs produce byte-identical output. `--verify` reruns the
//! oracle and appends an agreement verdict; a disagreement exits with
//! code 2, other errors with 1.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use thiserror::Error;

use crate::admissible::{
    build_dag, dag_stats, AdmissibleDag, AdmissibleError, CoverPart, CoverSupplier,
    ExplicitCovers, StarCovers,
};
use crate::mvrecursion::{betti_from_store, build_store, MComplexStore, MvError};
use crate::nerve::{betti_via_nerve, betti_zero_one, NerveData, NerveError};
use crate::simplicial::{
    mv_double_complex, simplicial_cohomology, star_cover, SimplicialComplex, SimplicialError,
    SubcomplexRef,
};

/// Which computation to run on the parsed input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Pipeline {
    /// Direct simplicial cohomology of the whole space.
    Oracle,
    /// Cohomology of the nerve of the root cover.
    Nerve,
    /// First two Betti numbers from a depth-3 nerve.
    Betti01,
    /// One-level Mayer–Vietoris double complex of the root cover.
    Mv,
    /// The recursive tower over the admissible index DAG.
    Recursive,
}

impl Pipeline {
    fn name(self) -> &'static str {
        match self {
            Pipeline::Oracle => "oracle",
            Pipeline::Nerve => "nerve",
            Pipeline::Betti01 => "betti01",
            Pipeline::Mv => "mv",
            Pipeline::Recursive => "recursive",
        }
    }
}

/// Where covers come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoverMode {
    /// Closed vertex stars everywhere.
    Star,
    /// `cover` lines from the input file, stars where absent.
    Explicit,
}

/// One invocation: input, pipeline, and output options.
#[derive(Debug, Parser)]
#[command(
    name = "mvbetti",
    about = "Betti numbers of simplicial complexes via recursive Mayer-Vietoris towers"
)]
pub struct JobSpec {
    /// Input file describing the complex, subcomplexes, and covers.
    pub input: PathBuf,
    /// Computation to run.
    #[arg(long, value_enum, default_value_t = Pipeline::Recursive)]
    pub pipeline: Pipeline,
    /// How many Betti numbers beyond the zeroth to compute.
    #[arg(long, default_value_t = 1)]
    pub ell: usize,
    /// Where covers come from.
    #[arg(long, value_enum, default_value_t = CoverMode::Star)]
    pub cover: CoverMode,
    /// Also run the direct-cohomology oracle and report agreement.
    #[arg(long)]
    pub verify: bool,
    /// Dump every index's double complex (recursive pipeline).
    #[arg(long = "show-complex")]
    pub show_complex: bool,
    /// Emit the record as one line of JSON.
    #[arg(long)]
    pub machine: bool,
    /// Write the record to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Errors from parsing input files or running pipelines.
#[derive(Debug, Error)]
pub enum CliError {
    /// A malformed input line.
    #[error("line {line}: {message}")]
    Parse {
        /// 1-based line number.
        line: usize,
        /// What went wrong.
        message: String,
    },
    /// The chosen pipeline needs an explicit root cover the file lacks.
    #[error("no `cover 0 = ...` line in the input, but --cover explicit was given")]
    MissingRootCover,
    /// Reading the input file failed.
    #[error("reading input: {0}")]
    Io(#[from] std::io::Error),
    /// An error from complex construction.
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    /// An error from the nerve pipeline.
    #[error(transparent)]
    Nerve(#[from] NerveError),
    /// An error from DAG construction.
    #[error(transparent)]
    Admissible(#[from] AdmissibleError),
    /// An error from the recursive tower.
    #[error(transparent)]
    Mv(#[from] MvError),
    /// An error from double-complex assembly.
    #[error(transparent)]
    DoubleComplex(#[from] crate::doublecomplex::DoubleComplexError),
}

/// A parsed input file.
#[derive(Debug)]
pub struct ParsedInput {
    /// The ambient complex.
    pub complex: Arc<SimplicialComplex>,
    /// Named subcomplexes, in declaration order under their names.
    pub named: BTreeMap<String, SubcomplexRef>,
    /// Explicit covers by index path (empty when the file has none).
    pub covers: BTreeMap<String, Vec<CoverPart>>,
    /// Simplices the face closure added beyond those listed.
    pub closure_added: usize,
}

/// Parses the line-oriented input format. See the module docs for the
/// grammar. Face closure is applied automatically; the number of
/// simplices it adds is reported in the result for the caller to warn
/// about.
pub fn parse_input(text: &str) -> Result<ParsedInput, CliError> {
    struct SubDecl {
        name: String,
        generators: Vec<Vec<String>>,
        stars: Vec<String>,
        line: usize,
    }

    let mut labels: Vec<String> = Vec::new();
    let mut maximal: Vec<(usize, Vec<String>)> = Vec::new();
    let mut subs: Vec<SubDecl> = Vec::new();
    let mut cover_lines: Vec<(usize, String, Vec<String>)> = Vec::new();
    let mut open: Option<SubDecl> = None;

    let err = |line: usize, message: String| CliError::Parse { line, message };

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if let Some(sub) = open.as_mut() {
            match tokens[0] {
                "}" => {
                    if tokens.len() != 1 {
                        return Err(err(line_no, "`}` must stand alone".into()));
                    }
                    let done = open.take().expect("block is open");
                    if subs.iter().any(|s| s.name == done.name) {
                        return Err(err(
                            done.line,
                            format!("duplicate subcomplex name `{}`", done.name),
                        ));
                    }
                    subs.push(done);
                }
                "simplex" => {
                    if tokens.len() < 2 {
                        return Err(err(line_no, "`simplex` needs at least one vertex".into()));
                    }
                    sub.generators
                        .push(tokens[1..].iter().map(|s| s.to_string()).collect());
                }
                "all-containing" => {
                    if tokens.len() != 2 {
                        return Err(err(
                            line_no,
                            "`all-containing` needs exactly one vertex".into(),
                        ));
                    }
                    sub.stars.push(tokens[1].to_string());
                }
                other => {
                    return Err(err(
                        line_no,
                        format!("unexpected `{other}` inside subcomplex block"),
                    ));
                }
            }
            continue;
        }
        match tokens[0] {
            "vertex" => {
                if tokens.len() != 2 {
                    return Err(err(line_no, "`vertex` needs exactly one label".into()));
                }
                labels.push(tokens[1].to_string());
            }
            "simplex" => {
                if tokens.len() < 2 {
                    return Err(err(line_no, "`simplex` needs at least one vertex".into()));
                }
                maximal.push((line_no, tokens[1..].iter().map(|s| s.to_string()).collect()));
            }
            "subcomplex" => {
                if tokens.len() != 3 || tokens[2] != "{" {
                    return Err(err(
                        line_no,
                        "expected `subcomplex <name> {` opening a block".into(),
                    ));
                }
                open = Some(SubDecl {
                    name: tokens[1].to_string(),
                    generators: Vec::new(),
                    stars: Vec::new(),
                    line: line_no,
                });
            }
            "cover" => {
                let Some((lhs, rhs)) = line.split_once('=') else {
                    return Err(err(line_no, "expected `cover <path> = <names>`".into()));
                };
                let lhs: Vec<&str> = lhs.split_whitespace().collect();
                if lhs.len() != 2 {
                    return Err(err(line_no, "expected `cover <path> = <names>`".into()));
                }
                let path = lhs[1].to_string();
                if cover_lines.iter().any(|(_, p, _)| *p == path) {
                    return Err(err(line_no, format!("duplicate cover for path `{path}`")));
                }
                let names: Vec<String> = rhs
                    .split(',')
                    .map(|n| n.trim().to_string())
                    .filter(|n| !n.is_empty())
                    .collect();
                if names.is_empty() {
                    return Err(err(line_no, "cover needs at least one part name".into()));
                }
                cover_lines.push((line_no, path, names));
            }
            other => {
                return Err(err(line_no, format!("unrecognized directive `{other}`")));
            }
        }
    }
    if let Some(sub) = open {
        return Err(err(
            sub.line,
            format!("subcomplex `{}` is never closed with `}}`", sub.name),
        ));
    }

    let declared: BTreeSet<Vec<String>> = labels
        .iter()
        .map(|l| vec![l.clone()])
        .chain(maximal.iter().map(|(_, m)| {
            let mut v = m.clone();
            v.sort_unstable();
            v
        }))
        .collect();
    let declared_count = declared.len();
    let complex = SimplicialComplex::from_maximal(
        labels,
        maximal.into_iter().map(|(_, m)| m).collect(),
    )?
    .into_shared();
    let whole = complex.as_whole();
    let closure_added = whole.members().len() - declared_count;

    let all_stars: BTreeMap<String, SubcomplexRef> =
        star_cover(&whole).into_iter().collect();
    let mut named = BTreeMap::new();
    for sub in subs {
        let mut parts: Vec<SubcomplexRef> = Vec::new();
        if !sub.generators.is_empty() {
            parts.push(SubcomplexRef::closure_of(&complex, &sub.generators)?);
        }
        for v in &sub.stars {
            let star = all_stars.get(v).ok_or_else(|| {
                err(sub.line, format!("`all-containing {v}`: unknown vertex"))
            })?;
            parts.push(star.clone());
        }
        let set = crate::simplicial::union_of(&complex, &parts.iter().collect::<Vec<_>>())?;
        named.insert(sub.name, set);
    }

    let mut covers = BTreeMap::new();
    for (line_no, path, names) in cover_lines {
        let mut parts = Vec::with_capacity(names.len());
        for name in names {
            let set = named
                .get(&name)
                .ok_or_else(|| err(line_no, format!("unknown subcomplex `{name}` in cover")))?
                .clone();
            parts.push(CoverPart { key: name, set });
        }
        covers.insert(path, parts);
    }

    Ok(ParsedInput {
        complex,
        named,
        covers,
        closure_added,
    })
}

/// Everything one pipeline run produces before formatting.
struct Outcome {
    betti: Vec<usize>,
    dag: Option<crate::admissible::DagStats>,
    dump: Option<String>,
    warnings: Vec<String>,
    /// `Some(oracle)` when verification ran and disagreed.
    mismatch: Option<Vec<usize>>,
    verify_line: Option<String>,
}

/// The root cover as labeled parts, honoring the cover mode.
fn root_parts(
    parsed: &ParsedInput,
    mode: CoverMode,
) -> Result<Vec<(String, SubcomplexRef)>, CliError> {
    match mode {
        CoverMode::Star => Ok(star_cover(&parsed.complex.as_whole())),
        CoverMode::Explicit => parsed
            .covers
            .get("0")
            .map(|parts| {
                parts
                    .iter()
                    .map(|p| (p.key.clone(), p.set.clone()))
                    .collect()
            })
            .ok_or(CliError::MissingRootCover),
    }
}

/// Renders every sheet of the store in index order: location, spot
/// dimensions, and each differential as integer-fraction rows.
fn render_dump(dag: &AdmissibleDag, store: &MComplexStore) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    for sheet in store.sheets() {
        let idx = dag.index(sheet.id);
        writeln!(
            out,
            "== index {} path {} level {} factors {:?}",
            idx.id, idx.path, idx.level, idx.factors
        )
        .expect("string writes never fail");
        let spots: Vec<_> = sheet.dc.spots().collect();
        let dims: Vec<String> = spots
            .iter()
            .map(|((p, q), d)| format!("({p},{q})={d}"))
            .collect();
        writeln!(out, "dims: {}", dims.join(" ")).expect("string writes never fail");
        for ((p, q), _) in &spots {
            let h = sheet.dc.horizontal(*p, *q);
            if h.rows() > 0 && h.cols() > 0 {
                writeln!(out, "horizontal ({p},{q}):\n{h}").expect("string writes never fail");
            }
            let v = sheet.dc.vertical(*p, *q);
            if v.rows() > 0 && v.cols() > 0 {
                writeln!(out, "vertical ({p},{q}):\n{v}").expect("string writes never fail");
            }
        }
    }
    out
}

/// Runs the recursive pipeline with whichever supplier the mode picks.
fn run_recursive<C: CoverSupplier>(
    whole: SubcomplexRef,
    ell: usize,
    supplier: &C,
    want_dump: bool,
) -> Result<(Vec<usize>, crate::admissible::DagStats, Option<String>), CliError> {
    let dag = build_dag(whole, ell, supplier)?;
    let store = build_store(&dag)?;
    let betti = betti_from_store(&dag, &store)?;
    let dump = want_dump.then(|| render_dump(&dag, &store));
    Ok((betti, dag_stats(&dag), dump))
}

fn execute(job: &JobSpec) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(&job.input)?;
    let parsed = parse_input(&text)?;
    let mut warnings = Vec::new();
    if parsed.closure_added > 0 {
        warnings.push(format!(
            "face closure added {} simplices beyond those listed",
            parsed.closure_added
        ));
    }
    let whole = parsed.complex.as_whole();

    let (betti, dag, dump) = match job.pipeline {
        Pipeline::Oracle => {
            let oracle = simplicial_cohomology(&whole);
            let betti = (0..=job.ell)
                .map(|i| oracle.get(i).copied().unwrap_or(0))
                .collect();
            (betti, None, None)
        }
        Pipeline::Nerve => {
            let parts = root_parts(&parsed, job.cover)?;
            let depth = (job.ell + 2).min(parts.len().max(1));
            let nd = NerveData::populate(parts, depth)?;
            (betti_via_nerve(&nd, job.ell)?, None, None)
        }
        Pipeline::Betti01 => {
            let parts = root_parts(&parsed, job.cover)?;
            let depth = 3.min(parts.len().max(1));
            let nd = NerveData::populate(parts, depth)?;
            let (b0, b1) = betti_zero_one(&nd)?;
            (vec![b0, b1], None, None)
        }
        Pipeline::Mv => {
            let parts = root_parts(&parsed, job.cover)?;
            let sets: Vec<SubcomplexRef> = parts.into_iter().map(|(_, s)| s).collect();
            let dc = mv_double_complex(&whole, &sets)?;
            let tot = dc.total_complex()?;
            let betti = (0..=job.ell as i64).map(|i| tot.cohomology_at(i)).collect();
            (betti, None, None)
        }
        Pipeline::Recursive => {
            let (betti, stats, dump) = match job.cover {
                CoverMode::Star => {
                    run_recursive(whole.clone(), job.ell, &StarCovers, job.show_complex)?
                }
                CoverMode::Explicit => {
                    let covers = ExplicitCovers::new(parsed.covers.clone());
                    run_recursive(whole.clone(), job.ell, &covers, job.show_complex)?
                }
            };
            (betti, Some(stats), dump)
        }
    };
    if job.show_complex && dump.is_none() {
        warnings.push("show-complex: nothing to dump for this pipeline".to_string());
    }

    let mut mismatch = None;
    let mut verify_line = None;
    if job.verify {
        let oracle = simplicial_cohomology(&whole);
        let expected: Vec<usize> = (0..betti.len())
            .map(|i| oracle.get(i).copied().unwrap_or(0))
            .collect();
        if betti == expected {
            verify_line = Some("agree".to_string());
        } else {
            verify_line = Some(format!("mismatch (oracle {})", render_list(&expected)));
            mismatch = Some(expected);
        }
    }

    Ok(Outcome {
        betti,
        dag,
        dump,
        warnings,
        mismatch,
        verify_line,
    })
}

fn render_list(xs: &[usize]) -> String {
    let inner: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", inner.join(", "))
}

/// The deterministic result record, human or machine form.
fn render_record(job: &JobSpec, outcome: &Outcome) -> String {
    if job.machine {
        let mut obj = serde_json::Map::new();
        obj.insert("pipeline".into(), job.pipeline.name().into());
        obj.insert("ell".into(), job.ell.into());
        obj.insert(
            "betti".into(),
            serde_json::Value::Array(outcome.betti.iter().map(|&b| b.into()).collect()),
        );
        if let Some(stats) = &outcome.dag {
            let mut dag = serde_json::Map::new();
            dag.insert(
                "levels".into(),
                serde_json::Value::Array(
                    stats.per_level.iter().map(|&n| n.into()).collect(),
                ),
            );
            dag.insert("total".into(), stats.total.into());
            dag.insert("max_cover".into(), stats.max_cover.into());
            obj.insert("dag".into(), serde_json::Value::Object(dag));
        }
        if let Some(v) = &outcome.verify_line {
            let verdict = if outcome.mismatch.is_none() {
                "agree"
            } else {
                "mismatch"
            };
            obj.insert("verify".into(), verdict.into());
            if outcome.mismatch.is_some() {
                obj.insert("verify_detail".into(), v.as_str().into());
            }
        }
        let mut line = serde_json::Value::Object(obj).to_string();
        line.push('\n');
        return line;
    }
    let mut out = String::new();
    out.push_str(&format!("pipeline: {}\n", job.pipeline.name()));
    out.push_str(&format!("ell: {}\n", job.ell));
    out.push_str(&format!("betti: {}\n", render_list(&outcome.betti)));
    if let Some(stats) = &outcome.dag {
        out.push_str(&format!("dag-levels: {}\n", render_list(&stats.per_level)));
        out.push_str(&format!("dag-total: {}\n", stats.total));
        out.push_str(&format!("dag-max-cover: {}\n", stats.max_cover));
    }
    if let Some(v) = &outcome.verify_line {
        out.push_str(&format!("verify: {v}\n"));
    }
    if let Some(dump) = &outcome.dump {
        out.push_str(dump);
    }
    out
}

/// Runs a job end to end: execute, write the record, report timing.
/// Returns the process exit code: 0 on success, 1 on error, 2 when
/// `--verify` found a disagreement.
pub fn run(job: &JobSpec) -> u8 {
    let started = Instant::now();
    let outcome = match execute(job) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    let record = render_record(job, &outcome);
    let write_result = match &job.out {
        Some(path) => std::fs::write(path, &record),
        None => {
            print!("{record}");
            Ok(())
        }
    };
    if let Err(e) = write_result {
        eprintln!("error: writing output: {e}");
        return 1;
    }
    eprintln!("wall-ms: {}", started.elapsed().as_millis());
    if outcome.mismatch.is_some() {
        2
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const OCTAHEDRON_FILE: &str = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../data/octahedron-explicit-covers.txt"
    );

    fn parse_file(path: &str) -> ParsedInput {
        parse_input(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    /// The bundled octahedron file: 6 vertices, 12 edges, 8 triangles.
    #[test]
    fn bundled_octahedron_file_parses_to_expected_counts() {
        let parsed = parse_file(OCTAHEDRON_FILE);
        let whole = parsed.complex.as_whole();
        let count_dim = |d: usize| whole.members().iter().filter(|s| s.len() == d + 1).count();
        assert_eq!(count_dim(0), 6);
        assert_eq!(count_dim(1), 12);
        assert_eq!(count_dim(2), 8);
        assert_eq!(parsed.named.len(), 6);
        assert_eq!(parsed.covers.len(), 9);
        // The file lists triangles only, so closure added the 12 edges.
        assert_eq!(parsed.closure_added, 12);
    }

    /// A single declared vertex gives a one-point complex.
    #[test]
    fn single_vertex_file_parses() {
        let parsed = parse_input("vertex a\n").unwrap();
        assert_eq!(parsed.complex.as_whole().members().len(), 1);
        assert_eq!(parsed.closure_added, 0);
    }

    /// An edge whose endpoint is never declared is rejected.
    #[test]
    fn missing_endpoint_is_rejected() {
        let err = parse_input("vertex a\nsimplex a b\n").unwrap_err();
        assert!(matches!(
            err,
            CliError::Simplicial(SimplicialError::UnknownLabel { .. })
        ));
    }

    /// Unknown directives report their line number.
    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_input("vertex a\n\nsimplx a\n").unwrap_err();
        let CliError::Parse { line, .. } = err else {
            panic!("expected a parse error, got {err}");
        };
        assert_eq!(line, 3);
    }

    /// Duplicate subcomplex names are rejected.
    #[test]
    fn duplicate_subcomplex_names_are_rejected() {
        let text = "vertex a\nsubcomplex S {\nsimplex a\n}\nsubcomplex S {\nsimplex a\n}\n";
        let err = parse_input(text).unwrap_err();
        assert!(matches!(err, CliError::Parse { .. }), "got {err}");
    }

    /// `all-containing` produces the closed vertex star.
    #[test]
    fn all_containing_is_the_closed_star() {
        let parsed = parse_file(OCTAHEDRON_FILE);
        let whole = parsed.complex.as_whole();
        let stars: BTreeMap<String, SubcomplexRef> = star_cover(&whole).into_iter().collect();
        assert_eq!(parsed.named["H1"], stars["u"]);
        assert_eq!(parsed.named["H2"], stars["w"]);
    }

    /// Covers naming unknown subcomplexes are rejected with the line.
    #[test]
    fn cover_with_unknown_name_is_rejected() {
        let err = parse_input("vertex a\ncover 0 = Nope\n").unwrap_err();
        let CliError::Parse { line, message } = err else {
            panic!("expected a parse error, got {err}");
        };
        assert_eq!(line, 2);
        assert!(message.contains("Nope"));
    }

    /// An unclosed subcomplex block is an error at its opening line.
    #[test]
    fn unclosed_block_is_rejected() {
        let err = parse_input("vertex a\nsubcomplex S {\nsimplex a\n").unwrap_err();
        let CliError::Parse { line, .. } = err else {
            panic!("expected a parse error, got {err}");
        };
        assert_eq!(line, 2);
    }

    /// The explicit covers in the bundled file drive the recursion to the
    /// sphere's Betti numbers.
    #[test]
    fn bundled_octahedron_runs_recursive_pipeline() {
        let parsed = parse_file(OCTAHEDRON_FILE);
        let covers = ExplicitCovers::new(parsed.covers.clone());
        let b =
            crate::mvrecursion::betti(parsed.complex.as_whole(), 2, &covers).unwrap();
        assert_eq!(b, vec![1, 0, 1]);
    }
}
