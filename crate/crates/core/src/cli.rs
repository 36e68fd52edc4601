//! Command-line front end: ingestion, transforms, computation, reporting.
//!
//! Subcommands: `compute`, `validate`, `oracle`, `transform`, `examples`.
//! Exit codes: 0 success, 2 parse errors, 3 validation errors, 4 internal
//! invariant violations. Transform flags apply left to right in the order
//! they appear on the command line.

use std::collections::BTreeMap;
use std::fs;

use clap::{Arg, ArgAction, ArgMatches, Command};

use crate::builtins;
use crate::chains::build_ic_complex;
use crate::coefficients::{CoefficientSystem, Mode, RingSpec};
use crate::complex::{FilteredComplex, Graph1, Simplex};
use crate::error::{Error, Result};
use crate::homology::{
    intersection_homology, les_check, relative_intersection_homology, HomologyResult,
};
use crate::json::{
    matrix_strings, AttachingRowJson, ChainDumpDegreeJson, CoefficientsJson, ComplexJson, LesJson,
    ResultJson, ValidationJson,
};
use crate::linalg::Integers;
use crate::localcalc;
use crate::perversity::Perversity;

pub fn cli_command() -> Command {
    let source_args = |cmd: Command| -> Command {
        cmd.arg(
            Arg::new("builtin")
                .long("builtin")
                .value_name("NAME")
                .help("named example complex (see `ih examples`)"),
        )
        .arg(
            Arg::new("file")
                .long("file")
                .value_name("PATH")
                .help("complex JSON file"),
        )
    };
    let transform_args = |cmd: Command| -> Command {
        cmd.arg(
            Arg::new("cone")
                .long("cone")
                .action(ArgAction::Count)
                .help("closed cone"),
        )
        .arg(
            Arg::new("suspend")
                .long("suspend")
                .action(ArgAction::Count)
                .help("suspension"),
        )
        .arg(
            Arg::new("subdivide")
                .long("subdivide")
                .action(ArgAction::Count)
                .help("barycentric subdivision"),
        )
        .arg(
            Arg::new("product-circle")
                .long("product-circle")
                .action(ArgAction::Count)
                .help("product with a 3-cycle circle"),
        )
        .arg(
            Arg::new("mark")
                .long("mark")
                .value_name("V,V,...")
                .action(ArgAction::Append)
                .help("move the listed vertices to filtration level 0"),
        )
    };
    let output_arg = |cmd: Command| -> Command {
        cmd.arg(
            Arg::new("output")
                .long("output")
                .value_name("FORMAT")
                .value_parser(["table", "json"])
                .default_value("table"),
        )
    };

    Command::new("ih")
        .about("intersection homology of filtered simplicial complexes, exactly")
        .subcommand_required(true)
        .arg_required_else_help(true)
        .subcommand(output_arg(transform_args(source_args(
            Command::new("compute")
                .about("compute (relative) intersection homology")
                .arg(
                    Arg::new("perversity")
                        .long("perversity")
                        .value_name("SPEC")
                        .required(true)
                        .help(
                            "comma list \"0,0,1\" or zero|lower-middle|upper-middle|top|gm-super",
                        ),
                )
                .arg(
                    Arg::new("coefficients")
                        .long("coefficients")
                        .value_name("RING|PATH")
                        .default_value("Z")
                        .help("Z, Q, Fp:<p>, or a coefficient-spec JSON file"),
                )
                .arg(
                    Arg::new("mode")
                        .long("mode")
                        .value_name("MODE")
                        .value_parser(["g0", "full"])
                        .default_value("g0"),
                )
                .arg(
                    Arg::new("rank")
                        .long("rank")
                        .value_name("N")
                        .default_value("1")
                        .value_parser(clap::value_parser!(usize)),
                )
                .arg(
                    Arg::new("relative")
                        .long("relative")
                        .value_name("JSON|PATH")
                        .help("subcomplex generators as a JSON list of vertex lists"),
                )
                .arg(
                    Arg::new("les")
                        .long("les")
                        .action(ArgAction::SetTrue)
                        .help("also verify the long exact sequence of the pair"),
                )
                .arg(
                    Arg::new("dump-chains")
                        .long("dump-chains")
                        .value_name("PATH")
                        .help("write the per-degree chain bases and boundaries as JSON"),
                ),
        ))))
        .subcommand(output_arg(transform_args(source_args(
            Command::new("validate").about("structural pseudomanifold checks"),
        ))))
        .subcommand(
            Command::new("oracle")
                .about("closed-form computation tables")
                .subcommand_required(true)
                .subcommand(output_arg(
                    Command::new("cone")
                        .about("cone formulas against the chain-level computation")
                        .arg(
                            Arg::new("link")
                                .long("link")
                                .value_name("NAME|PATH")
                                .required(true),
                        )
                        .arg(
                            Arg::new("perversity")
                                .long("perversity")
                                .value_name("SPEC")
                                .required(true),
                        )
                        .arg(
                            Arg::new("n")
                                .long("n")
                                .value_name("N")
                                .value_parser(clap::value_parser!(usize))
                                .help("filtered dimension of the cone (default: link dim + 1)"),
                        )
                        .arg(
                            Arg::new("ring")
                                .long("ring")
                                .value_name("RING")
                                .default_value("Z"),
                        ),
                ))
                .subcommand(output_arg(
                    Command::new("attaching")
                        .about("distinguished vs deleted neighborhood comparison")
                        .arg(
                            Arg::new("link")
                                .long("link")
                                .value_name("NAME|PATH")
                                .required(true),
                        )
                        .arg(
                            Arg::new("perversity")
                                .long("perversity")
                                .value_name("SPEC")
                                .required(true),
                        )
                        .arg(
                            Arg::new("n")
                                .long("n")
                                .value_name("N")
                                .required(true)
                                .value_parser(clap::value_parser!(usize)),
                        )
                        .arg(
                            Arg::new("codim")
                                .long("codim")
                                .value_name("K")
                                .required(true)
                                .value_parser(clap::value_parser!(usize)),
                        )
                        .arg(
                            Arg::new("ring")
                                .long("ring")
                                .value_name("RING")
                                .default_value("Z"),
                        ),
                )),
        )
        .subcommand(transform_args(source_args(
            Command::new("transform")
                .about("apply transforms and emit the complex as JSON")
                .arg(Arg::new("out").long("out").value_name("PATH")),
        )))
        .subcommand(
            Command::new("examples")
                .about("list builtin complexes")
                .arg(Arg::new("emit").long("emit").value_name("NAME")),
        )
}

/// Entry point; returns the process exit code.
pub fn run(args: &[String]) -> i32 {
    let cmd = cli_command();
    let matches = match cmd.try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match matches.subcommand() {
        Some(("compute", m)) => cmd_compute(m, args),
        Some(("validate", m)) => cmd_validate(m, args),
        Some(("oracle", m)) => cmd_oracle(m),
        Some(("transform", m)) => cmd_transform(m, args),
        Some(("examples", m)) => cmd_examples(m),
        _ => unreachable!("subcommand required"),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn load_source(m: &ArgMatches) -> Result<FilteredComplex> {
    match (m.get_one::<String>("builtin"), m.get_one::<String>("file")) {
        (Some(name), None) => builtins::builtin(name),
        (None, Some(path)) => {
            let text =
                fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            ComplexJson::parse(&text)
        }
        (Some(_), Some(_)) => Err(Error::Parse("give either --builtin or --file".into())),
        (None, None) => Err(Error::Parse("a complex source is required".into())),
    }
}

/// Ordered transform list, reconstructed from the raw argument vector so
/// that interleavings like `--cone --mark 0 --cone` apply left to right.
fn transform_sequence(args: &[String]) -> Result<Vec<Transform>> {
    let mut out = Vec::new();
    let mut it = args.iter().peekable();
    while let Some(arg) = it.next() {
        let (flag, inline) = match arg.split_once('=') {
            Some((f, v)) => (f, Some(v.to_string())),
            None => (arg.as_str(), None),
        };
        match flag {
            "--cone" => out.push(Transform::Cone),
            "--suspend" => out.push(Transform::Suspend),
            "--subdivide" => out.push(Transform::Subdivide),
            "--product-circle" => out.push(Transform::ProductCircle),
            "--mark" => {
                let value = match inline {
                    Some(v) => v,
                    None => it
                        .next()
                        .ok_or_else(|| Error::Parse("--mark needs a vertex list".into()))?
                        .clone(),
                };
                let vs: std::result::Result<Vec<u32>, _> =
                    value.split(',').map(|t| t.trim().parse::<u32>()).collect();
                out.push(Transform::Mark(vs.map_err(|_| {
                    Error::Parse(format!("bad vertex list {value:?}"))
                })?));
            }
            _ => {}
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Transform {
    Cone,
    Suspend,
    Subdivide,
    ProductCircle,
    Mark(Vec<u32>),
}

fn apply_transforms(x: FilteredComplex, transforms: &[Transform]) -> Result<FilteredComplex> {
    let mut x = x;
    for t in transforms {
        x = match t {
            Transform::Cone => x.cone(),
            Transform::Suspend => x.suspension()?,
            Transform::Subdivide => x.barycentric_subdivide(),
            Transform::ProductCircle => x.product_with_graph(&Graph1::cycle(3)?)?,
            Transform::Mark(vs) => x.mark_points(vs)?,
        };
    }
    Ok(x)
}

fn load_coefficients(m: &ArgMatches, x: &FilteredComplex) -> Result<CoefficientSystem> {
    let spec = m.get_one::<String>("coefficients").expect("default");
    if spec.ends_with(".json") || std::path::Path::new(spec).is_file() {
        let text = fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
        return CoefficientsJson::parse(&text, x);
    }
    let ring = RingSpec::parse(spec)?;
    let mode = Mode::parse(m.get_one::<String>("mode").expect("default"))?;
    let rank = *m.get_one::<usize>("rank").expect("default");
    CoefficientSystem::constant(ring, mode, rank)
}

fn load_relative(m: &ArgMatches, x: &FilteredComplex) -> Result<Option<FilteredComplex>> {
    let Some(spec) = m.get_one::<String>("relative") else {
        return Ok(None);
    };
    let text = if std::path::Path::new(spec).is_file() {
        fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?
    } else {
        spec.clone()
    };
    let lists: Vec<Vec<u32>> =
        serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let gens: Result<Vec<Simplex>> = lists.into_iter().map(Simplex::new).collect();
    Ok(Some(x.subcomplex(&gens?)?))
}

fn ring_symbol(ring: RingSpec) -> String {
    match ring {
        RingSpec::Integers => "Z".into(),
        RingSpec::Rationals => "Q".into(),
        RingSpec::PrimeField(p) => format!("F{p}"),
    }
}

fn degree_text(ring: RingSpec, d: &crate::homology::DegreeHomology) -> String {
    let sym = ring_symbol(ring);
    let mut parts = Vec::new();
    match d.betti {
        0 => {}
        1 => parts.push(sym.clone()),
        b => parts.push(format!("{sym}^{b}")),
    }
    for t in &d.torsion {
        parts.push(format!("Z/{t}"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn print_homology_table(
    h: &HomologyResult,
    x: &FilteredComplex,
    p: &Perversity,
    sys: &CoefficientSystem,
    relative: bool,
) {
    println!(
        "complex: {} simplices, formal dimension {}, chi = {}",
        x.len(),
        x.formal_dim(),
        x.euler_characteristic()
    );
    println!(
        "perversity: ({}) [{}]   mode: {}   ring: {}   rank: {}{}",
        p,
        match p.kind() {
            crate::perversity::PerversityKind::Traditional => "traditional",
            crate::perversity::PerversityKind::Super => "super",
            crate::perversity::PerversityKind::Loose => "loose",
        },
        sys.mode().label(),
        sys.ring().label(),
        sys.rank(),
        if relative { "   relative" } else { "" }
    );
    for (i, d) in h.degrees().iter().enumerate() {
        println!("IH_{i} = {}", degree_text(sys.ring(), d));
    }
}

fn cmd_compute(m: &ArgMatches, raw_args: &[String]) -> Result<()> {
    let x = apply_transforms(load_source(m)?, &transform_sequence(raw_args)?)?;
    let sys = load_coefficients(m, &x)?;
    let p = Perversity::parse(
        m.get_one::<String>("perversity").expect("required"),
        x.formal_dim(),
    )?;
    let relative = load_relative(m, &x)?;

    let h = match &relative {
        Some(a) => relative_intersection_homology(&x, a, &p, &sys)?,
        None => intersection_homology(&x, &p, &sys)?,
    };

    if let Some(path) = m.get_one::<String>("dump-chains") {
        dump_chains(path, &x, &p, &sys)?;
    }

    let les = if m.get_flag("les") {
        let a = relative
            .clone()
            .unwrap_or_else(|| FilteredComplex::empty(x.formal_dim()));
        Some(les_check(&x, &a, &p, &sys)?)
    } else {
        None
    };

    match m.get_one::<String>("output").map(String::as_str) {
        Some("json") => {
            let mut value =
                serde_json::to_value(ResultJson::new(&h, &x, &p, &sys, relative.is_some()))
                    .expect("serialization");
            if let Some(report) = &les {
                value["les"] = serde_json::to_value(LesJson::new(report)).expect("serialization");
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("serialization")
            );
        }
        _ => {
            print_homology_table(&h, &x, &p, &sys, relative.is_some());
            if let Some(report) = &les {
                println!(
                    "long exact sequence: {} ({})",
                    if report.all_exact() {
                        "exact"
                    } else {
                        "NOT EXACT"
                    },
                    if report.rank_only {
                        "rank check over Q"
                    } else {
                        "full check"
                    }
                );
            }
        }
    }
    Ok(())
}

fn dump_chains(
    path: &str,
    x: &FilteredComplex,
    p: &Perversity,
    sys: &CoefficientSystem,
) -> Result<()> {
    // the audit dump is integer-exact; other rings reuse the same support
    let icc = build_ic_complex(&Integers, x, p, sys)?;
    let mut degrees = Vec::new();
    for i in 0..=icc.top_degree() {
        let deg = icc.degree(i).unwrap();
        degrees.push(ChainDumpDegreeJson {
            degree: i,
            allowable: deg
                .ambient
                .allowable_simplices()
                .into_iter()
                .map(|idx| deg.ambient.simplices[idx].vertices().to_vec())
                .collect(),
            basis: matrix_strings(&deg.basis),
            boundary: matrix_strings(&deg.boundary),
        });
    }
    let text = serde_json::to_string_pretty(&degrees).expect("serialization");
    fs::write(path, text).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    Ok(())
}

fn cmd_validate(m: &ArgMatches, raw_args: &[String]) -> Result<()> {
    let x = apply_transforms(load_source(m)?, &transform_sequence(raw_args)?)?;
    let report = x.validate_pseudomanifold();
    let json = ValidationJson::new(&report);
    match m.get_one::<String>("output").map(String::as_str) {
        Some("json") => println!(
            "{}",
            serde_json::to_string_pretty(&json).expect("serialization")
        ),
        _ => {
            let line = |name: &str, ok: bool| {
                println!("{name}: {}", if ok { "pass" } else { "FAIL" });
            };
            line("no codimension-one stratum", json.no_codim_one_stratum);
            line("dimensionally homogeneous", json.dimensionally_homogeneous);
            line("regular facets two-sided", json.two_sided_facets);
            line("regular part dense", json.regular_part_dense);
            println!("link recursion: not checked");
            for (kind, items) in &json.offenders {
                println!("offenders [{kind}]: {}", items.join(" "));
            }
        }
    }
    if report.all_pass() {
        Ok(())
    } else {
        std::process::exit(3);
    }
}

fn cmd_oracle(m: &ArgMatches) -> Result<()> {
    match m.subcommand() {
        Some(("cone", m)) => cmd_oracle_cone(m),
        Some(("attaching", m)) => cmd_oracle_attaching(m),
        _ => unreachable!("subcommand required"),
    }
}

fn load_link(m: &ArgMatches) -> Result<FilteredComplex> {
    let spec = m.get_one::<String>("link").expect("required");
    if std::path::Path::new(spec).is_file() {
        let text = fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
        ComplexJson::parse(&text)
    } else {
        builtins::builtin(spec)
    }
}

#[derive(serde::Serialize)]
struct ConeOracleRow {
    degree: usize,
    compact_formula: crate::json::DegreeJson,
    compact_chain: crate::json::DegreeJson,
    compact_match: bool,
    closed_formula: crate::json::DegreeJson,
    closed_chain_relative: crate::json::DegreeJson,
    closed_match: bool,
}

fn cmd_oracle_cone(m: &ArgMatches) -> Result<()> {
    let link = load_link(m)?;
    let ring = RingSpec::parse(m.get_one::<String>("ring").expect("default"))?;
    let n = match m.get_one::<usize>("n") {
        Some(&n) => n,
        None => link.formal_dim() + 1,
    };
    if n != link.formal_dim() + 1 {
        return Err(Error::Parse(format!(
            "n = {n} does not match the cone on this link (expected {})",
            link.formal_dim() + 1
        )));
    }
    let p = Perversity::parse(m.get_one::<String>("perversity").expect("required"), n)?;
    p.ensure_covers(n)?;
    let sys = CoefficientSystem::constant(ring, Mode::G0, 1)?;

    let ih_link = intersection_homology(&link, &p, &sys)?;
    let cone = link.cone();
    let ih_cone = intersection_homology(&cone, &p, &sys)?;
    let base_gens: Vec<Simplex> = link.simplices().map(|(s, _)| s.clone()).collect();
    let base = cone.subcomplex(&base_gens)?;
    let ih_rel = relative_intersection_homology(&cone, &base, &p, &sys)?;

    let compact = localcalc::cone_compact(&ih_link, n, &p)?;
    let closed = localcalc::cone_closed_support(&ih_link, n, &p)?;

    let top = [
        compact.top_degree(),
        closed.top_degree(),
        ih_cone.top_degree(),
        ih_rel.top_degree(),
    ]
    .into_iter()
    .max()
    .unwrap();
    let rows: Vec<ConeOracleRow> = (0..=top)
        .map(|i| ConeOracleRow {
            degree: i,
            compact_formula: crate::json::DegreeJson {
                i,
                betti: compact.degree(i).betti,
                torsion: compact
                    .degree(i)
                    .torsion
                    .iter()
                    .map(|t| t.to_string())
                    .collect(),
            },
            compact_chain: crate::json::DegreeJson {
                i,
                betti: ih_cone.degree(i).betti,
                torsion: ih_cone
                    .degree(i)
                    .torsion
                    .iter()
                    .map(|t| t.to_string())
                    .collect(),
            },
            compact_match: compact.degree(i) == ih_cone.degree(i),
            closed_formula: crate::json::DegreeJson {
                i,
                betti: closed.degree(i).betti,
                torsion: closed
                    .degree(i)
                    .torsion
                    .iter()
                    .map(|t| t.to_string())
                    .collect(),
            },
            closed_chain_relative: crate::json::DegreeJson {
                i,
                betti: ih_rel.degree(i).betti,
                torsion: ih_rel
                    .degree(i)
                    .torsion
                    .iter()
                    .map(|t| t.to_string())
                    .collect(),
            },
            closed_match: closed.degree(i) == ih_rel.degree(i),
        })
        .collect();

    match m.get_one::<String>("output").map(String::as_str) {
        Some("json") => {
            let value = serde_json::json!({
                "link": crate::json::ComplexStatsJson::new(&link),
                "n": n,
                "perversity": p.values(),
                "ring": ring.label(),
                "rows": rows,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("serialization")
            );
        }
        _ => {
            println!(
                "cone formulas for link of dimension {} (n = {n}, perversity ({p}), ring {})",
                link.formal_dim(),
                ring.label()
            );
            println!(
                "{:<7} {:<22} {:<22} {:<8} {:<22} {:<22} {:<8}",
                "degree",
                "compact formula",
                "compact chain",
                "match",
                "closed formula",
                "relative chain",
                "match"
            );
            for r in &rows {
                println!(
                    "{:<7} {:<22} {:<22} {:<8} {:<22} {:<22} {:<8}",
                    r.degree,
                    degree_text(ring, &compact.degree(r.degree)),
                    degree_text(ring, &ih_cone.degree(r.degree)),
                    r.compact_match,
                    degree_text(ring, &closed.degree(r.degree)),
                    degree_text(ring, &ih_rel.degree(r.degree)),
                    r.closed_match,
                );
            }
        }
    }
    Ok(())
}

fn cmd_oracle_attaching(m: &ArgMatches) -> Result<()> {
    let link = load_link(m)?;
    let ring = RingSpec::parse(m.get_one::<String>("ring").expect("default"))?;
    let n = *m.get_one::<usize>("n").expect("required");
    let codim = *m.get_one::<usize>("codim").expect("required");
    let p = Perversity::parse(
        m.get_one::<String>("perversity").expect("required"),
        n.max(codim),
    )?;
    let sys = CoefficientSystem::constant(ring, Mode::G0, 1)?;
    let ih_link = intersection_homology(&link, &p, &sys)?;
    let rows = localcalc::local_attaching_profile(&ih_link, n, codim, &p)?;

    match m.get_one::<String>("output").map(String::as_str) {
        Some("json") => {
            let value = serde_json::json!({
                "link": crate::json::ComplexStatsJson::new(&link),
                "n": n,
                "codim": codim,
                "perversity": p.values(),
                "ring": ring.label(),
                "rows": rows.iter().map(AttachingRowJson::new).collect::<Vec<_>>(),
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("serialization")
            );
        }
        _ => {
            println!(
                "attaching profile: n = {n}, codimension {codim}, perversity ({p}), ring {}",
                ring.label()
            );
            println!(
                "{:<7} {:<22} {:<22} {:<13} {:<7}",
                "degree", "neighborhood", "deleted", "iso expected", "agrees"
            );
            for r in &rows {
                println!(
                    "{:<7} {:<22} {:<22} {:<13} {:<7}",
                    r.degree,
                    degree_text(ring, &r.neighborhood),
                    degree_text(ring, &r.deleted),
                    r.iso_expected,
                    r.agrees
                );
            }
        }
    }
    Ok(())
}

fn cmd_transform(m: &ArgMatches, raw_args: &[String]) -> Result<()> {
    let x = apply_transforms(load_source(m)?, &transform_sequence(raw_args)?)?;
    let text = ComplexJson::render(&x);
    match m.get_one::<String>("out") {
        Some(path) => fs::write(path, text).map_err(|e| Error::Parse(format!("{path}: {e}")))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn cmd_examples(m: &ArgMatches) -> Result<()> {
    if let Some(name) = m.get_one::<String>("emit") {
        let x = builtins::builtin(name)?;
        println!("{}", ComplexJson::render(&x));
        return Ok(());
    }
    let mut rows: BTreeMap<&str, String> = BTreeMap::new();
    for name in builtins::NAMES {
        let x = builtins::builtin(name)?;
        rows.insert(
            name,
            format!(
                "{} simplices, formal dim {}, chi {}",
                x.len(),
                x.formal_dim(),
                x.euler_characteristic()
            ),
        );
    }
    for (name, stats) in rows {
        println!("{name:<14} {stats}");
    }
    Ok(())
}
