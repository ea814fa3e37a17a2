//! `raagp` - command-line front end for the toolkit. One verb per module
//! capability, stable text and JSON output, structured one-line errors on
//! stderr in JSON mode.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use raagp_core::classification::{classify, ClassificationReport, Verdict};
use raagp_core::cohomology::cohomology_report;
use raagp_core::error::Error;
use raagp_core::fixtures;
use raagp_core::gog::{dirac_decompose, tree_kernel_rank, DecompositionTree, GraphOfGroups};
use raagp_core::graph::{GraphFormat, SimplicialGraph};
use raagp_core::presentation::{
    exponent_character, is_prime, pro_p_abelian_invariants, raag_presentation, tietze_reduce,
    GroupPresentation, ModPCharacter,
};
use raagp_core::random::{random_graph, seeded_rng};
use raagp_core::recognition::{chordality, ChordalityCertificate, ForbiddenKind};
use raagp_core::schreier::reidemeister_schreier;

#[derive(Parser)]
#[command(
    name = "raagp",
    version,
    about = "Decide graph-characterized properties of right-angled Artin pro-p groups, \
             with machine-checkable certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    /// One edge per line as label-label; bare lines declare isolated vertices.
    Edge,
    /// {"vertices":[...],"edges":[["u","v"],...]}
    Json,
}

#[derive(Args)]
struct CommonOpts {
    /// Input file, or '-' for stdin.
    #[arg(default_value = "-")]
    input: String,
    /// Graph input format (autodetected when omitted: '{' starts JSON).
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Prime p for presentation-level computations. Graph-level verdicts do
    /// not depend on it.
    #[arg(short = 'p', long = "prime", default_value_t = raagp_core::DEFAULT_PRIME)]
    prime: u64,
    /// Emit JSON on stdout (and one-line JSON errors on stderr).
    #[arg(long)]
    json: bool,
    /// Vertex cap for the exponential enumerations (cliques, separators).
    #[arg(long, default_value_t = raagp_core::DEFAULT_VERTEX_CAP as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    /// Seed for the randomized consistency pass of paper-fixtures.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Full classification report: construction tree or forbidden witness,
    /// the six equivalent property flags, universal Koszulity and coherence.
    Classify(CommonOpts),
    /// Elementary-type construction expression of the graph group.
    Construct(CommonOpts),
    /// Chordality certificate: perfect elimination ordering or chordless cycle.
    Chordal(CommonOpts),
    /// Clique-separator decomposition tree of a chordal graph.
    Decompose(CommonOpts),
    /// Graded Betti numbers, Poincare polynomial and Euler characteristic.
    Cohomology(CommonOpts),
    /// Right-angled Artin presentation of the graph group.
    Presentation(CommonOpts),
    /// Pro-p abelian invariants of a presentation (input: presentation JSON).
    Abelianize(CommonOpts),
    /// Kernel presentation for a mod-p character by Reidemeister-Schreier
    /// rewriting (input: presentation JSON).
    Subgroup {
        #[command(flatten)]
        common: CommonOpts,
        /// Character JSON {"p":..,"assignments":{..}}; defaults to the
        /// all-ones exponent character at -p.
        #[arg(long)]
        character: Option<String>,
        /// Skip the Tietze cleanup of the rewritten presentation.
        #[arg(long)]
        raw: bool,
    },
    /// Rank of the exponent-sum kernel of a tree, with the removal trace.
    #[command(name = "tree-rank")]
    TreeRank(CommonOpts),
    /// Fundamental-group presentation of a graph of groups (input: graph-of-
    /// groups JSON).
    Fundamental(CommonOpts),
    /// Re-run the bundled fixture computations and report ok/FAIL per check.
    #[command(name = "paper-fixtures")]
    PaperFixtures(CommonOpts),
}

struct Failure {
    kind: String,
    message: String,
    detail: Option<serde_json::Value>,
}

impl Failure {
    fn new(kind: &str, message: impl Into<String>) -> Self {
        Failure { kind: kind.into(), message: message.into(), detail: None }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::Syntax { .. } => "syntax",
            Error::LoopEdge { .. } => "loop_edge",
            Error::DuplicateEdge { .. } => "duplicate_edge",
            Error::DuplicateVertex(_) => "duplicate_vertex",
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::InvalidLabel(_) => "invalid_label",
            Error::EmptyGraph => "empty_graph",
            Error::Disconnected => "disconnected",
            Error::AboveCap { .. } => "above_cap",
            Error::NotATree(_) => "not_a_tree",
            Error::NotChordal(_) => "not_chordal",
            Error::NotPrime(_) => "not_prime",
            Error::UndeclaredGenerator(_) => "undeclared_generator",
            Error::InvalidPresentation(_) => "invalid_presentation",
            Error::InvalidCharacter(_) => "invalid_character",
            Error::NonSurjectiveCharacter => "non_surjective_character",
            Error::ExponentOverflow => "exponent_overflow",
            Error::InvalidGraphOfGroups(_) => "invalid_graph_of_groups",
        };
        let detail = match &e {
            Error::NotChordal(cert) => Some(serde_json::to_value(cert).expect("serializable")),
            _ => None,
        };
        Failure { kind: kind.into(), message: e.to_string(), detail }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_mode = match &cli.command {
        Command::Classify(c)
        | Command::Construct(c)
        | Command::Chordal(c)
        | Command::Decompose(c)
        | Command::Cohomology(c)
        | Command::Presentation(c)
        | Command::Abelianize(c)
        | Command::TreeRank(c)
        | Command::Fundamental(c)
        | Command::PaperFixtures(c)
        | Command::Subgroup { common: c, .. } => c.json,
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if json_mode {
                let mut doc = json!({"error": f.message, "kind": f.kind});
                if let Some(detail) = f.detail {
                    doc["detail"] = detail;
                }
                eprintln!("{doc}");
            } else {
                eprintln!("error: {}", f.message);
                if let Some(detail) = &f.detail {
                    eprintln!("detail: {detail}");
                }
            }
            ExitCode::from(1)
        }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::new("io", format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::new("io", format!("cannot read {path}: {e}")))
    }
}

fn load_graph(opts: &CommonOpts) -> Result<SimplicialGraph, Failure> {
    let text = read_input(&opts.input)?;
    let format = match opts.format {
        Some(FormatArg::Edge) => GraphFormat::EdgeList,
        Some(FormatArg::Json) => GraphFormat::Json,
        None => {
            if text.trim_start().starts_with('{') {
                GraphFormat::Json
            } else {
                GraphFormat::EdgeList
            }
        }
    };
    Ok(SimplicialGraph::parse(&text, format)?)
}

fn check_prime(p: u64) -> Result<(), Failure> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p).into())
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Classify(opts) => {
            check_prime(opts.prime)?;
            let g = load_graph(&opts)?;
            let report = classify(&g);
            if opts.json {
                println!("{}", report.to_json_string());
            } else {
                print!("{}", render_classification(&report));
            }
            Ok(())
        }
        Command::Construct(opts) => {
            let g = load_graph(&opts)?;
            let report = classify(&g);
            match (report.verdict, report.construction, report.forbidden_cert) {
                (Verdict::ElementaryType, Some(tree), _) => {
                    if opts.json {
                        println!(
                            "{}",
                            json!({"expression": tree.expression(), "tree": tree})
                        );
                    } else {
                        println!("{}", tree.expression());
                    }
                    Ok(())
                }
                (Verdict::ElementaryType, None, _) => {
                    // Empty graph: the trivial group has no construction tree.
                    Err(Failure::new("empty_graph", "the empty graph has no construction tree"))
                }
                (Verdict::Forbidden, _, Some(cert)) => Err(Failure {
                    kind: "forbidden".into(),
                    message: format!(
                        "no elementary-type construction: induced {} on ({})",
                        kind_name(cert.kind),
                        cert.witness.join(", ")
                    ),
                    detail: Some(serde_json::to_value(&cert).expect("serializable")),
                }),
                _ => unreachable!("classification reports carry their witness"),
            }
        }
        Command::Chordal(opts) => {
            let g = load_graph(&opts)?;
            let cert = chordality(&g);
            if opts.json {
                println!("{}", serde_json::to_string(&cert).expect("serializable"));
            } else {
                match &cert {
                    ChordalityCertificate::Chordal { peo } => {
                        println!("chordal");
                        println!("peo: {}", peo.join(" "));
                    }
                    ChordalityCertificate::NotChordal { chordless_cycle } => {
                        println!("not chordal");
                        println!("chordless cycle: {}", chordless_cycle.join(" "));
                    }
                }
            }
            Ok(())
        }
        Command::Decompose(opts) => {
            let g = load_graph(&opts)?;
            if g.vertex_count() > opts.cap as usize {
                return Err(
                    Error::AboveCap { vertices: g.vertex_count(), cap: opts.cap as usize }.into()
                );
            }
            let tree = dirac_decompose(&g)?;
            if opts.json {
                println!("{}", serde_json::to_string(&tree).expect("serializable"));
            } else {
                print!("{}", render_decomposition(&tree, 0));
            }
            Ok(())
        }
        Command::Cohomology(opts) => {
            let g = load_graph(&opts)?;
            let report = cohomology_report(&g, opts.cap as usize)?;
            if opts.json {
                println!("{}", serde_json::to_string(&report).expect("serializable"));
            } else {
                let betti: Vec<String> = report.betti.iter().map(u64::to_string).collect();
                println!("betti: {}", betti.join(" "));
                let poly: Vec<String> = report
                    .poincare
                    .iter()
                    .enumerate()
                    .map(|(n, b)| match n {
                        0 => b.to_string(),
                        1 => format!("{b}*t"),
                        _ => format!("{b}*t^{n}"),
                    })
                    .collect();
                println!("poincare: {}", poly.join(" + "));
                println!("euler: {}", report.euler);
                println!("clique dimension: {}", report.clique_dim);
                println!("note: dimensions are independent of the prime p");
            }
            Ok(())
        }
        Command::Presentation(opts) => {
            let g = load_graph(&opts)?;
            let pres = raag_presentation(&g);
            emit_presentation(&pres, opts.json);
            Ok(())
        }
        Command::Abelianize(opts) => {
            check_prime(opts.prime)?;
            let text = read_input(&opts.input)?;
            let pres = GroupPresentation::parse_json(&text, Some(opts.prime))?;
            let inv = pro_p_abelian_invariants(&pres, opts.prime)?;
            if opts.json {
                println!("{}", serde_json::to_string(&inv).expect("serializable"));
            } else {
                println!("free rank: {}", inv.free_rank);
                println!("torsion exponents: {:?}", inv.torsion);
                println!("isomorphism type: {inv}");
            }
            Ok(())
        }
        Command::Subgroup { common: opts, character, raw } => {
            let from_file = match &character {
                Some(path) => Some(ModPCharacter::parse_json(&read_input(path)?)?),
                None => None,
            };
            // The character file pins the prime; otherwise -p governs.
            let p = from_file.as_ref().map_or(opts.prime, |c| c.p);
            check_prime(p)?;
            let text = read_input(&opts.input)?;
            let pres = GroupPresentation::parse_json(&text, Some(p))?;
            let chi = match from_file {
                Some(c) => c,
                // Default: the exponent character, every generator to 1.
                None => ModPCharacter::new(p, pres.generators().iter().map(|g| (g.clone(), 1i64)))?,
            };
            let kernel = reidemeister_schreier(&pres, &chi)?;
            let kernel = if raw { kernel } else { tietze_reduce(&kernel)? };
            emit_presentation(&kernel, opts.json);
            Ok(())
        }
        Command::TreeRank(opts) => {
            let g = load_graph(&opts)?;
            let result = tree_kernel_rank(&g)?;
            if opts.json {
                println!("{}", serde_json::to_string(&result).expect("serializable"));
            } else {
                println!("rank: {}", result.rank);
                println!("removed pending vertices: {}", result.trace.join(" "));
            }
            Ok(())
        }
        Command::Fundamental(opts) => {
            check_prime(opts.prime)?;
            let text = read_input(&opts.input)?;
            let gog = GraphOfGroups::parse_json(&text, Some(opts.prime))?;
            let pres = gog.fundamental_presentation()?;
            emit_presentation(&pres, opts.json);
            Ok(())
        }
        Command::PaperFixtures(opts) => paper_fixtures(&opts),
    }
}

fn kind_name(kind: ForbiddenKind) -> &'static str {
    match kind {
        ForbiddenKind::Square => "square",
        ForbiddenKind::Path4 => "path4",
    }
}

fn emit_presentation(pres: &GroupPresentation, json: bool) {
    if json {
        println!("{}", pres.to_json_string());
    } else {
        println!("{pres}");
    }
}

fn render_classification(report: &ClassificationReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "graph: {} vertices, {} edges\n",
        report.graph_summary.vertices.len(),
        report.graph_summary.edge_count
    ));
    match report.verdict {
        Verdict::ElementaryType => {
            out.push_str("verdict: elementary type\n");
            if let Some(tree) = &report.construction {
                out.push_str(&format!("construction: {}\n", tree.expression()));
            }
        }
        Verdict::Forbidden => {
            out.push_str("verdict: forbidden\n");
            if let Some(cert) = &report.forbidden_cert {
                out.push_str(&format!(
                    "witness: induced {} on ({})\n",
                    kind_name(cert.kind),
                    cert.witness.join(", ")
                ));
            }
        }
    }
    for flag in &report.equivalent_properties {
        out.push_str(&format!("{}: {}\n", flag.name, flag.holds));
    }
    out.push_str(&format!("universally_koszul: {}\n", report.universally_koszul));
    out.push_str(&format!("coherent: {}\n", report.coherent));
    match &report.chordality_cert {
        ChordalityCertificate::Chordal { peo } => {
            out.push_str(&format!("chordality: chordal, peo: {}\n", peo.join(" ")));
        }
        ChordalityCertificate::NotChordal { chordless_cycle } => {
            out.push_str(&format!(
                "chordality: not chordal, chordless cycle: {}\n",
                chordless_cycle.join(" ")
            ));
        }
    }
    out.push_str("note: all verdicts are independent of the prime p\n");
    out
}

fn render_decomposition(tree: &DecompositionTree, depth: usize) -> String {
    let pad = "  ".repeat(depth);
    match tree {
        DecompositionTree::CompleteLeaf { cover } => format!("{pad}leaf {cover}\n"),
        DecompositionTree::Amalgam { left, right, separator } => {
            let mut out = format!("{pad}amalgam over {separator}\n");
            out.push_str(&render_decomposition(left, depth + 1));
            out.push_str(&render_decomposition(right, depth + 1));
            out
        }
    }
}

/// Re-runs the bundled fixture computations. Prints one line per check and
/// exits nonzero if any fails.
fn paper_fixtures(opts: &CommonOpts) -> Result<(), Failure> {
    let mut checks: Vec<(String, Result<(), String>)> = Vec::new();

    for p in [2u64, 3, 5, 7] {
        let name = format!("v-abelianization-p{p}");
        let result = pro_p_abelian_invariants(&fixtures::v_presentation(p), p)
            .map_err(|e| e.to_string())
            .and_then(|inv| {
                if inv.free_rank == 3 && inv.torsion == [1] {
                    Ok(())
                } else {
                    Err(format!("got free rank {} torsion {:?}", inv.free_rank, inv.torsion))
                }
            });
        checks.push((name, result));
    }

    checks.push((
        "classify-l3".into(),
        {
            let report = classify(&fixtures::l3());
            let cert = report.forbidden_cert.as_ref();
            if report.verdict == Verdict::Forbidden
                && cert.map(|c| c.kind) == Some(ForbiddenKind::Path4)
                && cert.map(|c| &c.witness) == Some(&["x".into(), "y".into(), "z".into(), "w".into()])
                && report.coherent
                && !report.universally_koszul
            {
                Ok(())
            } else {
                Err("unexpected report".into())
            }
        },
    ));
    checks.push((
        "classify-c4".into(),
        {
            let report = classify(&fixtures::c4());
            if report.verdict == Verdict::Forbidden
                && report.forbidden_cert.as_ref().map(|c| c.kind) == Some(ForbiddenKind::Square)
                && !report.coherent
            {
                Ok(())
            } else {
                Err("unexpected report".into())
            }
        },
    ));
    for n in 1..=6usize {
        checks.push((
            format!("classify-k{n}"),
            {
                let g = fixtures::complete(n);
                let report = classify(&g);
                match (report.verdict, &report.construction) {
                    (Verdict::ElementaryType, Some(tree)) => tree
                        .check(&g)
                        .map_err(|e| e.to_string())
                        .and_then(|()| {
                            if tree.consumed_vertices().len() == n {
                                Ok(())
                            } else {
                                Err("wrong node count".into())
                            }
                        }),
                    _ => Err("expected elementary type".into()),
                }
            },
        ));
    }

    for (name, g, expect_chordal) in [
        ("chordal-c4", fixtures::c4(), false),
        ("chordal-l3", fixtures::l3(), true),
        ("chordal-kite", fixtures::kite(), true),
        ("chordal-path8", fixtures::path(8), true),
    ] {
        let cert = chordality(&g);
        let result = if cert.is_chordal() == expect_chordal {
            cert.check(&g).map_err(|e| e.to_string())
        } else {
            Err("wrong verdict".into())
        };
        checks.push((name.into(), result));
    }

    for n in 2..=8usize {
        checks.push((
            format!("tree-rank-path{n}"),
            tree_kernel_rank(&fixtures::path(n))
                .map_err(|e| e.to_string())
                .and_then(|r| {
                    if r.rank == n - 1 {
                        Ok(())
                    } else {
                        Err(format!("got rank {}", r.rank))
                    }
                }),
        ));
    }

    for p in [2u64, 3, 5] {
        for n in 1usize..=3 {
            let name = format!("schreier-free-p{p}-n{n}");
            let gens: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
            let result = (|| -> Result<(), String> {
                let free = GroupPresentation::new(gens.clone(), vec![])
                    .map_err(|e| e.to_string())?;
                let chi = ModPCharacter::new(
                    p,
                    gens.iter().enumerate().map(|(i, g)| (g.clone(), i64::from(i == 0))),
                )
                .map_err(|e| e.to_string())?;
                let kernel = reidemeister_schreier(&free, &chi).map_err(|e| e.to_string())?;
                if kernel.generator_count() == p as usize * (n - 1) + 1
                    && kernel.relators().is_empty()
                {
                    Ok(())
                } else {
                    Err(format!("got {} generators", kernel.generator_count()))
                }
            })();
            checks.push((name, result));
        }
    }

    for p in [2u64, 3, 5] {
        let name = format!("kernel-cross-check-p{p}");
        let result = (|| -> Result<(), String> {
            let ambient = raag_presentation(&fixtures::l3());
            let chi = fixtures::l3_character(p).map_err(|e| e.to_string())?;
            let rewritten = reidemeister_schreier(&ambient, &chi).map_err(|e| e.to_string())?;
            let cleaned = tietze_reduce(&rewritten).map_err(|e| e.to_string())?;
            if cleaned.generator_count() as u64 != 2 * p + 2 {
                return Err(format!("cleanup kept {} generators", cleaned.generator_count()));
            }
            let a = pro_p_abelian_invariants(&rewritten, p).map_err(|e| e.to_string())?;
            let gog = fixtures::u_graph_of_groups(p)
                .fundamental_presentation()
                .map_err(|e| e.to_string())?;
            let b = pro_p_abelian_invariants(&gog, p).map_err(|e| e.to_string())?;
            if a == b {
                Ok(())
            } else {
                Err(format!("rewriting gave {a}, decomposition gave {b}"))
            }
        })();
        checks.push((name, result));
    }

    for p in [2u64, 3, 5] {
        let name = format!("h-kernel-is-v-p{p}");
        let result = (|| -> Result<(), String> {
            let chi = fixtures::h_character(p).map_err(|e| e.to_string())?;
            let kernel = reidemeister_schreier(&fixtures::h_presentation(), &chi)
                .map_err(|e| e.to_string())?;
            let got = pro_p_abelian_invariants(&kernel, p).map_err(|e| e.to_string())?;
            let expected = pro_p_abelian_invariants(&fixtures::v_presentation(p), p)
                .map_err(|e| e.to_string())?;
            if got == expected {
                Ok(())
            } else {
                Err(format!("kernel abelianization {got} differs from V {expected}"))
            }
        })();
        checks.push((name, result));
    }

    for (name, g) in [
        ("dirac-kite", fixtures::kite()),
        ("dirac-path3", fixtures::path(3)),
        ("dirac-k4", fixtures::complete(4)),
    ] {
        let result = dirac_decompose(&g)
            .map_err(|e| e.to_string())
            .and_then(|t| t.check(&g).map_err(|e| e.to_string()));
        checks.push((name.into(), result));
    }

    checks.push((
        "cohomology-fixtures".into(),
        (|| -> Result<(), String> {
            for (g, betti, euler) in [
                (fixtures::complete(3), vec![1u64, 3, 3, 1], 0i64),
                (fixtures::c4(), vec![1, 4, 4], 1),
                (fixtures::l3(), vec![1, 4, 3], 0),
            ] {
                let r = cohomology_report(&g, 64).map_err(|e| e.to_string())?;
                if r.betti != betti || r.euler != euler {
                    return Err(format!("got betti {:?} euler {}", r.betti, r.euler));
                }
            }
            Ok(())
        })(),
    ));

    checks.push((
        format!("random-consistency-seed{}", opts.seed),
        (|| -> Result<(), String> {
            let mut rng = seeded_rng(opts.seed);
            for round in 0..50usize {
                let n = 1 + round % 10;
                let g = random_graph(&mut rng, n, 0.4);
                let pres = raag_presentation(&g);
                let report = cohomology_report(&g, 64).map_err(|e| e.to_string())?;
                if report.betti[1] as usize != pres.generator_count()
                    || report.betti.get(2).copied().unwrap_or(0) as usize != pres.relator_count()
                {
                    return Err(format!("betti mismatch on round {round}"));
                }
                let chi = exponent_character(&g, 2).map_err(|e| e.to_string())?;
                chi.validate_on(&pres).map_err(|e| e.to_string())?;
                let inv = pro_p_abelian_invariants(&pres, 2).map_err(|e| e.to_string())?;
                if inv.free_rank != n || !inv.torsion.is_empty() {
                    return Err(format!("abelianization mismatch on round {round}"));
                }
            }
            Ok(())
        })(),
    ));

    let mut all_ok = true;
    if opts.json {
        let results: Vec<serde_json::Value> = checks
            .iter()
            .map(|(name, r)| match r {
                Ok(()) => json!({"name": name, "ok": true}),
                Err(msg) => {
                    all_ok = false;
                    json!({"name": name, "ok": false, "message": msg})
                }
            })
            .collect();
        println!("{}", json!({"results": results, "all_ok": all_ok}));
    } else {
        for (name, r) in &checks {
            match r {
                Ok(()) => println!("ok {name}"),
                Err(msg) => {
                    all_ok = false;
                    println!("FAIL {name}: {msg}");
                }
            }
        }
        println!(
            "{} of {} checks passed",
            checks.iter().filter(|(_, r)| r.is_ok()).count(),
            checks.len()
        );
    }
    if all_ok {
        Ok(())
    } else {
        Err(Failure::new("fixtures", "one or more fixture checks failed"))
    }
}
