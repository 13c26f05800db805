//! Command-line front end: builds the catalog objects and emits JSON or
//! LaTeX reports from one shared report tree.

use clap::{Parser, Subcommand, ValueEnum};
use kleinian::catalog;
use kleinian::cbh::{commutativity_witness, flatness_check, spherical_dims, CbhAlgebra};
use kleinian::deform::{quotient_action, universal_deformation};
use kleinian::exact::Rat;
use kleinian::fold::{diagram_automorphisms, enumerate_group, fold, mckay, root_system};
use kleinian::grp::{build_group, normal_pair, GroupSpec};
use kleinian::klein::{build_kleinian, lift_psi, socle_map};
use kleinian::par::Mode;
use kleinian::report::Report;
use kleinian::verify;
use num::Zero;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "kleinian", version, about = "Exact Kleinian singularities, deformations, folds and CBH algebras")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Emit::Json)]
    emit: Emit,
    /// Seed for randomized checks (printed in verify reports)
    #[arg(long, global = true, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Group structure: order, classes, character table, McKay type
    Group { spec: String },
    /// Invariant ring: generators, relation, Milnor basis, socle
    Kleinian { spec: String },
    /// Universal deformation of the invariant ring
    Deform { spec: String },
    /// Universal deformation of a normal pair
    Pair {
        #[arg(long)]
        g1: String,
        #[arg(long)]
        g2: String,
    },
    /// McKay diagram and (for a pair) the fold with its parameter group H
    Fold {
        spec: Option<String>,
        #[arg(long)]
        g1: Option<String>,
        #[arg(long)]
        g2: Option<String>,
    },
    /// Truncated CBH algebra: spherical dimensions, flatness, commutativity
    Cbh {
        spec: String,
        #[arg(long, default_value_t = 6)]
        degree: u32,
        /// Parameters name=value (t1, t2, ..., z); rationals like 3/2
        #[arg(long, value_delimiter = ',')]
        param: Vec<String>,
        /// Keep the parameter base symbolic
        #[arg(long)]
        formal: bool,
    },
    /// Run acceptance criteria; nonzero exit on any failure
    Verify {
        /// all, table, derivations, socle, goldens, fold, cbh, infra
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// List the built-in catalog
    Catalog,
}

fn parse_spec(s: &str) -> Result<GroupSpec, String> {
    GroupSpec::parse(s).map_err(|e| e.to_string())
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    let mut it = s.splitn(2, '/');
    let num: i64 = it
        .next()
        .unwrap()
        .trim()
        .parse()
        .map_err(|_| format!("bad rational: {s}"))?;
    let den: i64 = match it.next() {
        Some(d) => d.trim().parse().map_err(|_| format!("bad rational: {s}"))?,
        None => 1,
    };
    if den == 0 {
        return Err(format!("zero denominator: {s}"));
    }
    Ok(Rat::new(num.into(), den.into()))
}

fn group_report(spec: GroupSpec) -> Report {
    let g = build_group(spec);
    let mk = mckay(&g);
    let classes = Report::Table {
        headers: vec!["class".into(), "size".into(), "representative".into()],
        rows: (0..g.num_classes())
            .map(|k| {
                let rep = g.classes[k][0];
                let m = &g.elements[rep];
                vec![
                    Report::Int(k as i64),
                    Report::Int(g.class_size(k) as i64),
                    Report::math(format!("[[{}, {}], [{}, {}]]", m[0], m[1], m[2], m[3])),
                ]
            })
            .collect(),
    };
    let chars = Report::Table {
        headers: (0..g.num_classes()).map(|k| format!("C{}", k)).collect(),
        rows: g
            .char_table
            .iter()
            .map(|row| row.iter().map(|c| Report::math(c.to_string())).collect())
            .collect(),
    };
    Report::section(
        &format!("group {}", spec),
        vec![
            ("order", Report::Int(g.order() as i64)),
            ("mckay_type", Report::text(format!("{}", mk.dynkin))),
            ("classes", classes),
            ("character_table", chars),
        ],
    )
}

fn kleinian_report(spec: GroupSpec) -> Report {
    let k = build_kleinian(&build_group(spec)).expect("supported group");
    Report::section(
        &format!("kleinian {}", spec),
        vec![
            (
                "generator_degrees",
                Report::List(k.ring.weights.iter().map(|&w| Report::Int(w as i64)).collect()),
            ),
            (
                "generators",
                Report::List(k.gens.iter().map(|p| Report::math(p.to_string())).collect()),
            ),
            ("relation", Report::math(k.relation.to_string())),
            (
                "milnor_basis",
                Report::List(
                    k.milnor_basis
                        .iter()
                        .map(|m| Report::math(format!("{:?}", m)))
                        .collect(),
                ),
            ),
            ("socle", Report::math(format!("{:?}", k.socle))),
        ],
    )
}

fn deform_report(spec: GroupSpec) -> Report {
    let k = build_kleinian(&build_group(spec)).expect("supported group");
    let d = universal_deformation(&k);
    Report::section(
        &format!("deform {}", spec),
        vec![
            ("parameters", Report::Int(d.nparams as i64)),
            (
                "parameter_weights",
                Report::List(
                    d.ring.weights[3..]
                        .iter()
                        .map(|&w| Report::Int(w as i64))
                        .collect(),
                ),
            ),
            ("big_f", Report::math(d.big_f.to_string())),
        ],
    )
}

fn pair_report(s1: GroupSpec, s2: GroupSpec) -> Result<Report, String> {
    let pair = normal_pair(s1, s2).map_err(|e| e.to_string())?;
    let k1 = build_kleinian(&pair.g1).map_err(|e| e.to_string())?;
    let k2 = build_kleinian(&pair.g2).map_err(|e| e.to_string())?;
    let lift = lift_psi(&k2, &k1).map_err(|e| e.to_string())?;
    let qa = quotient_action(&pair, &k1).map_err(|e| e.to_string())?;
    let alpha = socle_map(&pair, &k1, &k2, &lift).map_err(|e| e.to_string())?;
    let pd = kleinian::deform::pair_universal_deformation(&pair, &k1, &k2, &lift)
        .map_err(|e| e.to_string())?;
    let ideal = Report::List(
        qa.ideal_gens
            .iter()
            .map(|v| {
                Report::math(
                    v.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(j, c)| format!("{} * a{}", c, j))
                        .collect::<Vec<_>>()
                        .join(" + "),
                )
            })
            .collect(),
    );
    Ok(Report::section(
        &format!("pair {} < {}", s1, s2),
        vec![
            ("quotient_order", Report::Int(pair.quotient_order() as i64)),
            ("alpha", Report::math(alpha.to_string())),
            ("cofactor", Report::math(lift.cofactor.to_string())),
            ("ideal", ideal),
            ("f_reduced", Report::math(pd.f_red.to_string())),
            (
                "embedding",
                Report::List(
                    pd.embedding
                        .iter()
                        .map(|p| Report::math(p.to_string()))
                        .collect(),
                ),
            ),
            ("big_f2", Report::math(pd.big_f2.to_string())),
        ],
    ))
}

fn fold_report(s1: Option<GroupSpec>, pair_spec: Option<(GroupSpec, GroupSpec)>) -> Result<Report, String> {
    let (base, perms, title) = match (s1, pair_spec) {
        (Some(s), None) => {
            let g = build_group(s);
            (mckay(&g), vec![(0..0).collect()], format!("fold {}", s))
        }
        (None, Some((a, b))) => {
            let pair = normal_pair(a, b).map_err(|e| e.to_string())?;
            let mk = mckay(&pair.g1);
            let perms = diagram_automorphisms(&pair, &mk);
            (mk, perms, format!("fold {} < {}", a, b))
        }
        _ => return Err("fold takes either a group or --g1/--g2".into()),
    };
    let mut items = vec![
        ("diagram", Report::text(format!("{}", base.dynkin))),
        (
            "cartan",
            Report::List(
                base.cartan
                    .iter()
                    .map(|row| {
                        Report::List(row.iter().map(|&x| Report::Int(x)).collect())
                    })
                    .collect(),
            ),
        ),
    ];
    if perms.iter().any(|p| !p.is_empty()) {
        let rs = root_system(&base.cartan);
        let fd = fold(&rs, &perms);
        let h = enumerate_group(&fd.h_generators);
        items.push((
            "automorphisms",
            Report::List(
                perms
                    .iter()
                    .map(|p| Report::text(format!("{:?}", p)))
                    .collect(),
            ),
        ));
        items.push(("folded_type", Report::text(format!("{}", fd.folded_type))));
        items.push(("folded_roots", Report::Int(fd.folded_roots.len() as i64)));
        items.push(("h_order", Report::Int(h.len() as i64)));
    }
    Ok(Report::Section {
        title,
        items: items.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
    })
}

fn cbh_report(
    spec: GroupSpec,
    degree: u32,
    params: &[String],
    formal: bool,
) -> Result<Report, String> {
    let g = build_group(spec);
    let nt = g.num_classes() - 1;
    if formal {
        let alg = CbhAlgebra::generic(&g, degree);
        let e = alg.e();
        let c_id = alg.c[g.identity()].clone();
        return Ok(Report::section(
            &format!("cbh {} (formal)", spec),
            vec![
                ("degree", Report::Int(degree as i64)),
                ("parameters", Report::Int(nt as i64 + 1)),
                ("c_at_identity", Report::math(c_id.to_string())),
                ("idempotent_terms", Report::Int(e.terms.len() as i64)),
            ],
        ));
    }
    let mut t = vec![Rat::zero(); nt];
    let mut z = Rat::zero();
    for p in params {
        let (name, value) = p
            .split_once('=')
            .ok_or_else(|| format!("expected name=value: {p}"))?;
        let value = parse_rat(value)?;
        if name.trim() == "z" {
            z = value;
        } else if let Some(k) = name.trim().strip_prefix('t').and_then(|x| x.parse::<usize>().ok())
        {
            if k == 0 || k > nt {
                return Err(format!("parameter {name} out of range (1..={nt})"));
            }
            t[k - 1] = value;
        } else {
            return Err(format!("unknown parameter: {name}"));
        }
    }
    let alg = CbhAlgebra::specialized(&g, degree, &t, &z);
    let dims = spherical_dims(&alg, degree);
    let flat = flatness_check(&alg, degree);
    let witness = commutativity_witness(&alg, degree);
    Ok(Report::section(
        &format!("cbh {}", spec),
        vec![
            ("degree", Report::Int(degree as i64)),
            (
                "spherical_dims",
                Report::List(dims.iter().map(|&d| Report::Int(d as i64)).collect()),
            ),
            ("flat", Report::Bool(flat)),
            ("commutative", Report::Bool(witness.is_none())),
            (
                "witness",
                Report::text(match witness {
                    Some((a, b)) => format!("[{:?}, {:?}] != 0", a, b),
                    None => "none".into(),
                }),
            ),
        ],
    ))
}

fn catalog_report() -> Report {
    Report::Table {
        headers: vec!["name".into(), "operations".into()],
        rows: catalog::entries()
            .into_iter()
            .map(|e| {
                vec![
                    Report::text(e.name),
                    Report::text(e.operations.join(", ")),
                ]
            })
            .collect(),
    }
}

fn verify_report(suite: &str, seed: u64, mode: Mode) -> Result<(Report, bool), String> {
    let ids = verify::suite_ids(suite).ok_or_else(|| format!("unknown suite: {suite}"))?;
    let results = verify::run_suite(&ids, seed, mode);
    let all = results.iter().all(|r| r.passed);
    for r in &results {
        eprintln!(
            "[{}] criterion {}: {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.name
        );
    }
    let items: Vec<(String, Report)> = std::iter::once((
        "seed".to_string(),
        Report::Int(seed as i64),
    ))
    .chain(results.into_iter().map(|r| {
        (
            format!("criterion_{:02}", r.id),
            Report::Section {
                title: r.name.to_string(),
                items: vec![
                    ("passed".into(), Report::Bool(r.passed)),
                    ("details".into(), r.details),
                ],
            },
        )
    }))
    .collect();
    Ok((
        Report::Section {
            title: format!("verify ({suite})"),
            items,
        },
        all,
    ))
}

fn emit(report: &Report, how: Emit) {
    use std::io::Write;
    let text = match how {
        Emit::Json => serde_json::to_string_pretty(&report.to_json()).unwrap(),
        Emit::Latex => report.to_latex(),
    };
    // ignore broken pipes (e.g. piping into head)
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(n) = std::env::var("KLEINIAN_WORKERS") {
        if let Ok(n) = n.parse::<usize>() {
            kleinian::par::set_workers(n);
        }
    }
    let mode = Mode::from_env();
    let result: Result<(Report, bool), String> = match &cli.command {
        Command::Group { spec } => parse_spec(spec).map(|s| (group_report(s), true)),
        Command::Kleinian { spec } => parse_spec(spec).map(|s| (kleinian_report(s), true)),
        Command::Deform { spec } => parse_spec(spec).map(|s| (deform_report(s), true)),
        Command::Pair { g1, g2 } => parse_spec(g1)
            .and_then(|a| parse_spec(g2).map(|b| (a, b)))
            .and_then(|(a, b)| pair_report(a, b))
            .map(|r| (r, true)),
        Command::Fold { spec, g1, g2 } => {
            let single = match spec {
                Some(s) => Some(match parse_spec(s) {
                    Ok(x) => x,
                    Err(e) => return fail(&e),
                }),
                None => None,
            };
            let pair_spec = match (g1, g2) {
                (Some(a), Some(b)) => match (parse_spec(a), parse_spec(b)) {
                    (Ok(x), Ok(y)) => Some((x, y)),
                    _ => return fail("bad group spec"),
                },
                _ => None,
            };
            fold_report(single, pair_spec).map(|r| (r, true))
        }
        Command::Cbh {
            spec,
            degree,
            param,
            formal,
        } => parse_spec(spec).and_then(|s| cbh_report(s, *degree, param, *formal).map(|r| (r, true))),
        Command::Verify { suite } => verify_report(suite, cli.seed, mode),
        Command::Catalog => Ok((catalog_report(), true)),
    };
    match result {
        Ok((report, passed)) => {
            emit(&report, cli.emit);
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => fail(&e),
    }
}

fn fail(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::FAILURE
}
