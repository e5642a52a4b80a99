use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use isotropy::axial::{little_group, published_little_group, AxialIrrep};
use isotropy::criteria::{historical_little_groups, massive_little_groups, ChainCoverage};
use isotropy::oracle::canonical::{canonicalize, diagonalize_l2};
use isotropy::oracle::detect::{detect_symmetry, DetectOptions, SymmetryReport, SYMMETRY_TOL};
use isotropy::oracle::projector::invariant_vectors;
use isotropy::tables::{self, Table};
use isotropy::verify::{self, VerifyScope};
use isotropy::{CoeffVector, Error, GroupId, Irrep, Parity};

mod output;

use output::{Failure, Output};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Criterion {
    Massive,
    Michel,
    Ig,
}

#[derive(Parser, Debug)]
#[command(name = "isotropy", version, about = "Little groups of SO(3), O(3) and axial-group irreps")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Residual tolerance for symmetry detection.
    #[arg(long, global = true, default_value_t = SYMMETRY_TOL)]
    tol: f64,
    /// Largest n in Cn, Dn, ... when building subgroup lattices.
    #[arg(long, global = true)]
    nmax: Option<u32>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiplicity of the identity irrep of GROUP in IRREP.
    Subduce { group: String, irrep: String },
    /// Little groups of an irrep of SO3, O3 or an axial group.
    Littlegroups {
        parent: String,
        #[arg(long, conflicts_with = "l")]
        irrep: Option<String>,
        /// Every irrep of this degree (both parities for O3).
        #[arg(long)]
        l: Option<u32>,
        #[arg(long, value_enum, default_value_t = Criterion::Massive)]
        criterion: Criterion,
    },
    /// Reproduce one of the reference tables (1 to 5).
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        number: u8,
        #[arg(long)]
        lmax: Option<u32>,
    },
    /// Detect the symmetry group of a coefficient vector (JSON file or `-`).
    Symmetry {
        file: String,
        /// Ignore parity and search rotations only.
        #[arg(long)]
        proper: bool,
    },
    /// Rotate a coefficient vector into canonical form.
    Canonicalize {
        file: String,
        /// For l = 2, diagonalise the quadratic form instead.
        #[arg(long)]
        diagonal: bool,
    },
    /// Orthonormal basis of the vectors of IRREP fixed by GROUP.
    Invariants { group: String, irrep: String },
    /// Run the verification sweep.
    Verify {
        #[arg(long)]
        tables: bool,
        #[arg(long)]
        criteria: bool,
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 6)]
        lmax: u32,
    },
}

fn read_input(file: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if file == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::parse(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(file).map_err(|e| Failure::parse(format!("{file}: {e}")))?;
    }
    Ok(text)
}

fn read_vector(file: &str) -> Result<CoeffVector, Failure> {
    let a = CoeffVector::from_json(&read_input(file)?)?;
    if a.norm() == 0.0 {
        return Err(Error::ZeroVector.into());
    }
    Ok(a)
}

fn is_axial(g: GroupId) -> bool {
    matches!(g, GroupId::CINF | GroupId::CINFH | GroupId::CINFV | GroupId::DINF | GroupId::DINFH)
}

fn parse_irrep(parent: GroupId, label: &str) -> Result<Irrep, Failure> {
    if is_axial(parent) && !label.contains(':') {
        return Ok(Irrep::Axial(format!("{parent}:{label}").parse()?));
    }
    Ok(label.parse()?)
}

fn subduce_cmd(group: &str, irrep: &str) -> Result<Output, Failure> {
    let g: GroupId = group.parse()?;
    let irrep: Irrep = irrep.parse()?;
    let (c, method, trace) = verify::subduce_with_provenance(g, &irrep)?;
    let agree = trace.map_or(true, |t| t == c);
    if !agree {
        return Err(Error::Consistency(format!(
            "closed form gives {c} but the trace gives {} for {g} in {irrep}",
            trace.unwrap_or_default()
        ))
        .into());
    }
    let check = match trace {
        Some(_) => "trace agrees",
        None => "no closed form",
    };
    Ok(Output {
        text: format!("{c}\n{method}; {check}\n"),
        json: json!({ "group": g, "irrep": irrep, "c": c, "method": method, "trace": trace }),
        table: Some(Table {
            title: String::new(),
            header: vec!["group".into(), "irrep".into(), "c".into(), "method".into()],
            rows: vec![vec![g.to_string(), irrep.to_string(), c.to_string(), method.into()]],
        }),
    })
}

fn irreps_for(parent: GroupId, irrep: Option<&str>, l: Option<u32>) -> Result<Vec<Irrep>, Failure> {
    if let Some(label) = irrep {
        return Ok(vec![parse_irrep(parent, label)?]);
    }
    let l = l.ok_or_else(|| Failure::parse("give --irrep or --l"))?;
    Ok(match parent {
        GroupId::SO3 => vec![Irrep::so3(l)],
        GroupId::O3 => vec![Irrep::o3(l, Parity::Even), Irrep::o3(l, Parity::Odd)],
        g if is_axial(g) => AxialIrrep::all(g, l).into_iter().map(Irrep::Axial).collect(),
        g => return Err(Failure::parse(format!("{g} is not SO3, O3 or an axial group"))),
    })
}

fn littlegroups_cmd(
    parent: &str,
    irrep: Option<&str>,
    l: Option<u32>,
    criterion: Criterion,
    n_max: Option<u32>,
) -> Result<Output, Failure> {
    let parent: GroupId = parent.parse()?;
    let irreps = irreps_for(parent, irrep, l)?;
    let mut text = String::new();
    let mut json_out = Vec::new();
    let mut rows = Vec::new();
    for irrep in &irreps {
        if let Irrep::Axial(a) = irrep {
            let r = little_group(a)?;
            let published = published_little_group(a)?;
            text.push_str(&format!("{irrep}: {} (dim {})\n", r.little_group, r.vector_dim));
            if published != r {
                text.push_str(&format!(
                    "  published: {} (dim {})\n",
                    published.little_group, published.vector_dim
                ));
            }
            json_out.push(json!({ "irrep": irrep, "little_group": r.little_group,
                "vector_dim": r.vector_dim, "published": published.little_group }));
            rows.push(vec![
                irrep.to_string(),
                r.little_group.to_string(),
                String::new(),
                String::new(),
                String::new(),
                r.vector_dim.to_string(),
                String::new(),
            ]);
            continue;
        }
        if irrep.parent() != parent {
            return Err(Failure::parse(format!("{irrep} is not an irrep of {parent}")));
        }
        text.push_str(&format!("{irrep}\n"));
        if criterion != Criterion::Massive {
            let groups = historical_little_groups(irrep, criterion == Criterion::Ig, ChainCoverage::AnyChain, n_max)?;
            for g in &groups {
                text.push_str(&format!("  {g}\n"));
                rows.push(vec![irrep.to_string(), g.to_string(), String::new(), String::new(), String::new(), String::new(), String::new()]);
            }
            json_out.push(json!({ "irrep": irrep, "little_groups": groups }));
            continue;
        }
        let entries = massive_little_groups(irrep, n_max)?;
        let name_w = entries.iter().map(|e| e.group.to_string().len()).max().unwrap_or(1);
        for e in &entries {
            let reps = e
                .rep_vector
                .as_ref()
                .map(|v| v.iter().map(|t| format!("Z{t}")).collect::<Vec<_>>().join(" "))
                .unwrap_or_else(|| "-".into());
            text.push_str(&format!(
                "  {:<name_w$}  c={:<3} f0={} fm={:<3} dim={:<3} {reps}\n",
                e.group.to_string(),
                e.c,
                e.f0,
                e.fm,
                e.stratum_dim
            ));
            rows.push(vec![
                irrep.to_string(),
                e.group.to_string(),
                e.c.to_string(),
                e.f0.to_string(),
                e.fm.to_string(),
                e.stratum_dim.to_string(),
                reps,
            ]);
        }
        json_out.push(json!({ "irrep": irrep, "little_groups": entries }));
    }
    Ok(Output {
        text,
        json: Value::Array(json_out),
        table: Some(Table {
            title: String::new(),
            header: ["irrep", "group", "c", "f0", "fm", "dim", "rep_vector"].map(String::from).to_vec(),
            rows,
        }),
    })
}

fn table_cmd(number: u8, lmax: Option<u32>, n_max: Option<u32>) -> Result<Output, Failure> {
    let t = match number {
        1 => tables::emit_so3_rules(lmax.unwrap_or(12), n_max.unwrap_or(6))?,
        2 => tables::emit_o3_odd_rules(lmax.unwrap_or(12), n_max.unwrap_or(6))?,
        3 => tables::emit_frequency_table()?,
        4 => tables::emit_so3_table(lmax.unwrap_or(4))?,
        _ => tables::emit_o3_table(lmax.unwrap_or(9))?,
    };
    Ok(Output::from_table(t))
}

fn render_report(r: &SymmetryReport) -> String {
    let (axis, angle) = isotropy::catalog::axis_angle(&r.orientation);
    let mut s = format!(
        "group: {}\norientation: axis ({:.6}, {:.6}, {:.6}) angle {:.6}\n",
        r.group, axis.x, axis.y, axis.z, angle
    );
    s.push_str(&format!(
        "witnesses: {} elements, max residual {:.2e}\n",
        r.witnesses.len(),
        r.max_residual()
    ));
    for w in r.witnesses.iter().take(if r.witnesses.len() <= 24 { usize::MAX } else { 0 }) {
        s.push_str(&format!(
            "  {:<10} axis ({:+.6}, {:+.6}, {:+.6})  residual {:.2e}\n",
            w.element, w.axis[0], w.axis[1], w.axis[2], w.residual
        ));
    }
    for w in &r.warnings {
        s.push_str(&format!("warning: {w}\n"));
    }
    s
}

fn symmetry_cmd(file: &str, proper: bool, tol: f64) -> Result<Output, Failure> {
    let a = read_vector(file)?;
    let opts = DetectOptions {
        tol,
        proper_only: proper,
        ..DetectOptions::default()
    };
    let r = detect_symmetry(&a, &opts)?;
    Ok(Output {
        text: render_report(&r),
        json: serde_json::to_value(&r).expect("report serialises"),
        table: None,
    })
}

fn rows(m: &impl std::ops::Index<(usize, usize), Output = f64>) -> Vec<[f64; 3]> {
    (0..3).map(|i| [m[(i, 0)], m[(i, 1)], m[(i, 2)]]).collect()
}

fn canonicalize_cmd(file: &str, diagonal: bool, seed: u64) -> Result<Output, Failure> {
    let a = read_vector(file)?;
    if diagonal {
        let d = diagonalize_l2(&a)?;
        let text = format!(
            "eigenvalues: {:.10} {:.10} {:.10}{}\nvector: {}\n",
            d.eigenvalues[0],
            d.eigenvalues[1],
            d.eigenvalues[2],
            if d.uniaxial { " (uniaxial)" } else { "" },
            d.vector.to_json()
        );
        return Ok(Output {
            text,
            json: json!({ "rotation": rows(&d.rotation), "eigenvalues": d.eigenvalues,
                "uniaxial": d.uniaxial, "vector": d.vector.to_json() }),
            table: None,
        });
    }
    let c = canonicalize(&a, seed)?;
    let text = format!(
        "euler (zyz): {:.10} {:.10} {:.10}\nresidual: {:.2e}\nvector: {}\n",
        c.euler[0],
        c.euler[1],
        c.euler[2],
        c.residual,
        c.vector.to_json()
    );
    Ok(Output {
        text,
        json: json!({ "rotation": rows(&c.rotation), "euler": c.euler,
            "residual": c.residual, "vector": c.vector.to_json() }),
        table: None,
    })
}

fn invariants_cmd(group: &str, irrep: &str) -> Result<Output, Failure> {
    let g: GroupId = group.parse()?;
    let irrep: Irrep = irrep.parse()?;
    let Some(l) = irrep.degree() else {
        return Err(Failure::parse("invariant vectors need an SO3 or O3 irrep"));
    };
    let c = isotropy::subduce(g, &irrep)?;
    let basis: Vec<CoeffVector> = invariant_vectors(g, l, irrep.parity())?
        .into_iter()
        .map(|mut v| {
            v.coeffs.apply(|x| {
                if x.abs() < 1e-12 {
                    *x = 0.0
                }
            });
            v
        })
        .collect();
    if basis.len() as u32 != c {
        return Err(Error::Consistency(format!(
            "projector rank {} differs from subduction frequency {c} for {g} in {irrep}",
            basis.len()
        ))
        .into());
    }
    let mut text = format!("{g} in {irrep}: {c} invariant(s)\n");
    for v in &basis {
        text.push_str(&format!("  {}\n", v.to_json()));
    }
    Ok(Output {
        text,
        json: json!({ "group": g, "irrep": irrep, "c": c,
            "basis": basis.iter().map(CoeffVector::to_json).collect::<Vec<_>>() }),
        table: None,
    })
}

fn verify_cmd(scope: VerifyScope) -> (Output, bool) {
    let report = verify::run(&scope);
    let mut text = String::new();
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!("{status}  {:<8} {}", c.suite, c.name));
        if !c.detail.is_empty() {
            text.push_str(&format!("  ({})", c.detail));
        }
        text.push('\n');
    }
    let ledgered = report.mismatches.iter().filter(|m| m.ledger.is_some()).count();
    text.push_str(&format!(
        "{} checks, {} ledgered table discrepancies\n",
        report.checks.len(),
        ledgered
    ));
    let rows = report
        .checks
        .iter()
        .map(|c| vec![c.suite.clone(), c.name.clone(), c.passed.to_string(), c.detail.clone()])
        .collect();
    let ok = report.passed();
    let out = Output {
        text,
        json: serde_json::to_value(&report).expect("report serialises"),
        table: Some(Table {
            title: String::new(),
            header: ["suite", "check", "passed", "detail"].map(String::from).to_vec(),
            rows,
        }),
    };
    (out, ok)
}

fn run(cli: Cli) -> Result<(Output, bool), Failure> {
    let out = match cli.command {
        Command::Subduce { group, irrep } => subduce_cmd(&group, &irrep)?,
        Command::Littlegroups {
            parent,
            irrep,
            l,
            criterion,
        } => littlegroups_cmd(&parent, irrep.as_deref(), l, criterion, cli.nmax)?,
        Command::Table { number, lmax } => table_cmd(number, lmax, cli.nmax)?,
        Command::Symmetry { file, proper } => symmetry_cmd(&file, proper, cli.tol)?,
        Command::Canonicalize { file, diagonal } => canonicalize_cmd(&file, diagonal, cli.seed)?,
        Command::Invariants { group, irrep } => invariants_cmd(&group, &irrep)?,
        Command::Verify {
            tables,
            criteria,
            oracle,
            lmax,
        } => {
            let all = !(tables || criteria || oracle);
            return Ok(verify_cmd(VerifyScope {
                tables: tables || all,
                criteria: criteria || all,
                oracle: oracle || all,
                l_max: lmax,
                seed: cli.seed,
            }));
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok((out, ok)) => match out.render(format) {
            Ok(s) => {
                print!("{s}");
                ExitCode::from(if ok { 0 } else { 1 })
            }
            Err(f) => f.report(),
        },
        Err(f) => f.report(),
    }
}
