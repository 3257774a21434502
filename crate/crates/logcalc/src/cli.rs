//! Command-line verbs; each one parses input, calls the library and renders the result.

use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use logcalc_core::intertwiner::fixtures::generic;
use logcalc_core::intertwiner::{
    a_r, omega_r, shift, solve_fusion_space, x_t, x_t_via_homs, x_t_via_vandermonde, Axiom, Constraint, FusionWindow, IntertwinerError,
    IntertwinerTable, JacobiWindow,
};
use logcalc_core::logseries::{apply_diffop, SeriesError};
use logcalc_core::mobius::catalog::{jordan_block, sl2_irrep, trivial};
use logcalc_core::mobius::{conj_identity_check, ConjIdentity, Module};
use logcalc_core::report::{Check, Report};
use logcalc_core::scalars::configure_lattice;
use logcalc_core::substitution::{subst_scaled_exp, subst_x_exp_y, subst_x_inverse, subst_x_plus_y, subst_xy};
use logcalc_core::suites::{self, SuiteOptions};
use logcalc_core::{LogSeries, Var};
use thiserror::Error;

use crate::files::{self, FileError, FusionFile, IntertwinerFile, ReportData, SCHEMA};
use crate::fuzz::fuzz_roundtrip;
use crate::parse::{parse_exponent, parse_scalar, parse_series, ParseError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    File(#[from] FileError),
    #[error("{0}")]
    Series(#[from] SeriesError),
    #[error("{0}")]
    Intertwiner(#[from] IntertwinerError),
    #[error("{0}")]
    Usage(String),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "logcalc", version, about = "Exact logarithmic formal calculus and logarithmic intertwining operators")]
pub struct Cli {
    /// Output format; data-producing verbs default to json, the rest to text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Exponent lattice bound L (exponents lie in (1/L)Z); must be even.
    #[arg(long, global = true, default_value_t = 12)]
    pub lattice: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse an expression and print its canonical form.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Apply (p(x) d/dx)^times to an expression.
    Diff {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value = "x")]
        var: String,
        #[arg(long, default_value_t = 1)]
        times: u32,
        /// Laurent polynomial p(x) multiplying d/dx.
        #[arg(long, default_value = "1")]
        op: String,
    },
    /// Substitute into the argument of an expression.
    Subst {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum)]
        kind: SubstKind,
        #[arg(long, default_value = "x")]
        var: String,
        /// The new variable for shift, scale and product.
        #[arg(long = "with", default_value = "y")]
        with: String,
        /// Truncation order in the new variable.
        #[arg(long, default_value_t = 4)]
        order: u32,
        /// zeta = q*Pi for --kind exp.
        #[arg(long)]
        zeta: Option<String>,
    },
    /// Run a check suite.
    Check {
        #[command(subcommand)]
        suite: CheckSuite,
    },
    /// Build a new intertwining operator from a stored one.
    Derive {
        #[command(subcommand)]
        op: DeriveOp,
    },
    /// Solve for spaces of intertwining operators.
    Solve {
        #[command(subcommand)]
        what: SolveWhat,
    },
    /// Re-encode data files and compare bytes; optionally fuzz the expression printer and parser.
    Roundtrip {
        files: Vec<String>,
        /// Number of random expressions to print and parse back.
        #[arg(long)]
        fuzz: Option<u32>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SubstKind {
    /// f(x + y)
    Shift,
    /// f(x e^y)
    Scale,
    /// f(xy)
    Product,
    /// f(1/x)
    Inverse,
    /// f(e^zeta x)
    Exp,
}

#[derive(Subcommand, Debug)]
pub enum CheckSuite {
    /// Taylor and scaling theorems on random series.
    Taylor {
        #[arg(long, default_value_t = 8)]
        order: u32,
        #[arg(long, default_value_t = 200)]
        samples: u32,
    },
    /// The combinatorial identity for k <= kmax.
    Comb {
        #[arg(long, default_value_t = 10)]
        kmax: u32,
    },
    /// The Lubell identity and its per-k refinement.
    Lubell {
        #[arg(long, default_value_t = 6)]
        nmax: u32,
        #[arg(long, default_value_t = 4)]
        jmax: u32,
    },
    /// Structure of solutions of (x d/dx - a)^m f = 0.
    Ode {
        #[arg(long, default_value_t = 100)]
        samples: u32,
    },
    /// Operator identities on seeded or given modules.
    Modules {
        /// Module files (or catalog specs); seeded modules when absent.
        files: Vec<String>,
        #[arg(long, default_value_t = 5)]
        count: u32,
        #[arg(long, default_value_t = 10)]
        order: u32,
    },
    /// Axioms and derived identities of a stored operator, or of the built-in solver tables.
    Intertwiner {
        file: Option<String>,
        #[command(flatten)]
        axioms: AxiomArgs,
    },
    /// Every suite with default sizes.
    All,
}

#[derive(Args, Debug, Clone)]
pub struct AxiomArgs {
    /// auto, full, l0, all, or a comma-separated list of axiom ids.
    #[arg(long, default_value = "auto")]
    pub axioms: String,
}

#[derive(Subcommand, Debug)]
pub enum DeriveOp {
    /// Omega_r: swap the two inputs.
    Omega {
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        file: String,
    },
    /// A_r: pass to the contragredient of the output.
    Ar {
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        file: String,
    },
    /// X_t: the log-power derivative operator.
    Xt {
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum, default_value = "direct")]
        route: XtRoute,
        file: String,
    },
    /// Y_[s1,s2,s3].
    Shift {
        /// Three integers s1,s2,s3.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        s: Vec<i64>,
        file: String,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum XtRoute {
    Direct,
    Homs,
    Vandermonde,
}

#[derive(Subcommand, Debug)]
pub enum SolveWhat {
    /// Basis of the space of intertwining operators of type (W3; W1 W2).
    Fusion {
        /// W1 W2 W3 as module files or catalog specs (@trivial, @jordan:H:SIZE, @sl2:DIM).
        #[arg(long, num_args = 3, required = true)]
        modules: Vec<String>,
        /// Largest log power allowed.
        #[arg(long, default_value_t = 1)]
        max_log: u32,
        /// Comma-separated exponents n; defaults to h1 + h2 - h3 - 1 over all weights.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[command(flatten)]
        axioms: AxiomArgs,
        /// Vertex table imposing the windowed Jacobi identity.
        #[arg(long)]
        vertex: Option<String>,
        /// Print one basis element (an index) or the generic combination ("generic") as a data file.
        #[arg(long)]
        emit: Option<String>,
    },
}

/// Load a module from a file or a catalog spec.
pub fn load_module(spec: &str) -> Result<Module, CliError> {
    if let Some(rest) = spec.strip_prefix('@') {
        let parts: Vec<&str> = rest.split(':').collect();
        let bad = || CliError::Usage(format!("unknown catalog module '{spec}'; use @trivial, @jordan:H:SIZE or @sl2:DIM"));
        return match parts.as_slice() {
            ["trivial"] => Ok(trivial("V")),
            ["jordan", h, size] => {
                let size: usize = size.parse().map_err(|_| bad())?;
                if size == 0 || size > 8 {
                    return Err(bad());
                }
                Ok(jordan_block(&format!("J({h},{size})"), parse_exponent(h)?, size))
            }
            ["sl2", d] => {
                let d: usize = d.parse().map_err(|_| bad())?;
                if d == 0 || d > 8 {
                    return Err(bad());
                }
                Ok(sl2_irrep(&format!("S{d}"), d))
            }
            _ => Err(bad()),
        };
    }
    Ok(files::parse_module(&files::read_text(spec)?)?)
}

fn axiom_set(spec: &str, t: &IntertwinerTable) -> Result<Vec<Axiom>, CliError> {
    let full = || Axiom::FULL.to_vec();
    Ok(match spec {
        "auto" => {
            if [t.w1(), t.w2(), t.w3()].iter().all(|m| m.is_full_sl2()) {
                full()
            } else {
                Axiom::L0_TYPE.to_vec()
            }
        }
        "full" => full(),
        "l0" => Axiom::L0_TYPE.to_vec(),
        "all" => {
            let mut v = full();
            v.extend([Axiom::Sl2Alt(-1), Axiom::Sl2Alt(0), Axiom::Sl2Alt(1), Axiom::L0Derivative, Axiom::Weight]);
            v
        }
        list => list
            .split(',')
            .map(|s| Axiom::parse(s.trim()).ok_or_else(|| CliError::Usage(format!("unknown axiom '{s}'"))))
            .collect::<Result<_, _>>()?,
    })
}

fn render_report(rep: &Report, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => write!(out, "{}", files::to_canonical(&ReportData::from(rep)))?,
        Format::Text => {
            writeln!(out, "suite {}", rep.title)?;
            let width = rep.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
            for c in &rep.checks {
                let mark = if c.pass { "PASS" } else { "FAIL" };
                let detail = if c.detail.is_empty() { String::new() } else { format!("  ({})", c.detail) };
                writeln!(out, "  {mark}  {:<width$}  {}{detail}", c.id, c.name)?;
                if let (false, Some(w)) = (c.pass, &c.witness) {
                    writeln!(out, "        witness: {w}")?;
                }
            }
            let passed = rep.checks.iter().filter(|c| c.pass).count();
            writeln!(out, "{passed}/{} checks passed", rep.checks.len())?;
        }
    }
    Ok(())
}

fn render_series(f: &LogSeries, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Text => writeln!(out, "{f}")?,
        Format::Json => {
            let v = serde_json::json!({ "series": f.to_string(), "terms": f.len() });
            write!(out, "{}", files::to_canonical(&v))?;
        }
    }
    Ok(())
}

fn table_text(t: &IntertwinerTable) -> String {
    let mut s = format!("type ({}; {} {}), {} modes\n", t.w3().name(), t.w1().name(), t.w2().name(), t.len());
    for (k, v) in t.modes() {
        let dense: Vec<String> = (0..t.w3().dim()).map(|c| v.get(c).to_string()).collect();
        s.push_str(&format!("  {k} = [{}]\n", dense.join(", ")));
    }
    s
}

fn render_table(t: &IntertwinerTable, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => write!(out, "{}", files::table_json(t))?,
        Format::Text => write!(out, "{}", table_text(t))?,
    }
    Ok(())
}

fn load_table(path: &str) -> Result<IntertwinerTable, CliError> {
    Ok(files::parse_table(&files::read_text(path)?)?)
}

fn module_ids() -> Vec<ConjIdentity> {
    let mut ids = Vec::new();
    for j in -1..=1 {
        ids.push(ConjIdentity::XL0Lj(j));
        ids.push(ConjIdentity::XL0ExpLj(j));
    }
    ids.extend([ConjIdentity::ExpLm1, ConjIdentity::ExpL0, ConjIdentity::ExpL1, ConjIdentity::OneMinusX, ConjIdentity::NilpotentCommutes]);
    for r in -2..=1 {
        ids.push(ConjIdentity::InverseRel(r));
        ids.push(ConjIdentity::XtoInverse(r));
    }
    ids
}

fn given_modules_report(mods: &[Module], order: u32) -> Result<Report, CliError> {
    let mut rep = Report::new("modules");
    for m in mods {
        for which in module_ids() {
            if which.needs_full_sl2() && !m.is_full_sl2() {
                continue;
            }
            let c = conj_identity_check(m, which, order)?;
            rep.push(Check { detail: format!("{}, order {order}", m.name()), ..c });
        }
    }
    Ok(rep)
}

/// Run a parsed command; `Ok(true)` when every check passed.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    configure_lattice(cli.lattice).map_err(|e| CliError::Usage(e.to_string()))?;
    let text_default = cli.format.unwrap_or(Format::Text);
    let data_default = cli.format.unwrap_or(Format::Json);
    match &cli.command {
        Command::Eval { expr } => {
            render_series(&parse_series(expr)?, text_default, out)?;
            Ok(true)
        }
        Command::Diff { expr, var, times, op } => {
            let x = Var::new(var);
            let p = parse_series(op)?;
            let mut f = parse_series(expr)?;
            for _ in 0..*times {
                f = apply_diffop(&f, &p, &x)?;
            }
            render_series(&f, text_default, out)?;
            Ok(true)
        }
        Command::Subst { expr, kind, var, with, order, zeta } => {
            let f = parse_series(expr)?;
            let (x, y) = (Var::new(var), Var::new(with));
            let g = match kind {
                SubstKind::Shift => subst_x_plus_y(&f, &x, &y, *order)?,
                SubstKind::Scale => subst_x_exp_y(&f, &x, &y, *order)?,
                SubstKind::Product => subst_xy(&f, &x, &y)?,
                SubstKind::Inverse => subst_x_inverse(&f, &x)?,
                SubstKind::Exp => {
                    let z = zeta.as_deref().ok_or_else(|| CliError::Usage("--kind exp needs --zeta".into()))?;
                    subst_scaled_exp(&f, &x, &parse_scalar(z)?)?
                }
            };
            render_series(&g, text_default, out)?;
            Ok(true)
        }
        Command::Check { suite } => {
            let rep = check(suite, cli.seed)?;
            render_report(&rep, text_default, out)?;
            Ok(rep.passed())
        }
        Command::Derive { op } => {
            let t = match op {
                DeriveOp::Omega { r, file } => omega_r(&load_table(file)?, *r)?,
                DeriveOp::Ar { r, file } => a_r(&load_table(file)?, *r)?,
                DeriveOp::Xt { t, route, file } => {
                    let y = load_table(file)?;
                    match route {
                        XtRoute::Direct => x_t(&y, *t),
                        XtRoute::Homs => x_t_via_homs(&y, *t),
                        XtRoute::Vandermonde => x_t_via_vandermonde(&y, *t)?,
                    }
                }
                DeriveOp::Shift { s, file } => {
                    let s: [i64; 3] = s.as_slice().try_into().map_err(|_| CliError::Usage("--s takes three integers".into()))?;
                    shift(&load_table(file)?, s)?
                }
            };
            render_table(&t, data_default, out)?;
            Ok(true)
        }
        Command::Solve { what: SolveWhat::Fusion { modules, max_log, window, axioms, vertex, emit } } => {
            let m: Vec<Module> = modules.iter().map(|s| load_module(s)).collect::<Result<_, _>>()?;
            let (w1, w2, w3) = (Arc::new(m[0].clone()), Arc::new(m[1].clone()), Arc::new(m[2].clone()));
            let win = match window {
                None => FusionWindow::derived(&w1, &w2, &w3, *max_log),
                Some(list) => FusionWindow {
                    exponents: list.split(',').map(|s| parse_exponent(s.trim())).collect::<Result<_, _>>()?,
                    max_log: *max_log,
                },
            };
            let probe = IntertwinerTable::new(w1.clone(), w2.clone(), w3.clone());
            let mut cons: Vec<Constraint> = axiom_set(&axioms.axioms, &probe)?.into_iter().map(Constraint::Axiom).collect();
            if let Some(path) = vertex {
                let vt = files::parse_vertex(&files::read_text(path)?, [w1.dim(), w2.dim(), w3.dim()])?;
                vt.validate([&*w1, &*w2, &*w3])?;
                cons.push(Constraint::Jacobi(vt, JacobiWindow::default()));
            }
            let fs = solve_fusion_space(w1, w2, w3, &win, &cons)?;
            if let Some(which) = emit {
                let t = if which == "generic" {
                    generic(&fs).ok_or_else(|| CliError::Usage("the solution space is zero".into()))?
                } else {
                    let b: usize =
                        which.parse().map_err(|_| CliError::Usage(format!("--emit takes an index or 'generic', got '{which}'")))?;
                    fs.basis.get(b).cloned().ok_or_else(|| CliError::Usage(format!("basis has {} elements", fs.dim())))?
                };
                render_table(&t, data_default, out)?;
                return Ok(true);
            }
            match text_default {
                Format::Json => {
                    let f = FusionFile {
                        schema: SCHEMA.into(),
                        dim: fs.dim(),
                        unknowns: fs.unknowns,
                        equations: fs.equations,
                        rank: fs.rank,
                        basis: fs.basis.iter().map(IntertwinerFile::from_table).collect(),
                    };
                    write!(out, "{}", files::to_canonical(&f))?;
                }
                Format::Text => {
                    writeln!(out, "dimension {} ({} unknowns, {} equations, rank {})", fs.dim(), fs.unknowns, fs.equations, fs.rank)?;
                    for (b, t) in fs.basis.iter().enumerate() {
                        write!(out, "basis {b}: {}", table_text(t))?;
                    }
                }
            }
            Ok(true)
        }
        Command::Roundtrip { files: paths, fuzz } => {
            let mut rep = Report::new("roundtrip");
            for p in paths {
                let text = files::read_text(p)?;
                let again = files::reencode(&text)?;
                let first = text.lines().zip(again.lines()).position(|(a, b)| a != b);
                let witness = (text != again).then(|| match first {
                    Some(l) => format!("line {} differs", l + 1),
                    None => format!("lengths {} vs {}", text.len(), again.len()),
                });
                let name = Path::new(p).file_name().map_or(p.clone(), |n| n.to_string_lossy().into_owned());
                rep.push(
                    Check::new(&format!("file:{name}"), "byte-identical re-encoding", text == again, format!("{} bytes", text.len()))
                        .with_witness(witness),
                );
            }
            if let Some(n) = fuzz {
                let r = fuzz_roundtrip(*n, cli.seed);
                rep.push(
                    Check::new("fuzz", "parse(print(f)) = f", r.is_ok(), format!("{n} expressions, seed {}", cli.seed))
                        .with_witness(r.err()),
                );
            }
            if rep.checks.is_empty() {
                return Err(CliError::Usage("nothing to do: give files or --fuzz".into()));
            }
            render_report(&rep, text_default, out)?;
            Ok(rep.passed())
        }
    }
}

fn check(suite: &CheckSuite, seed: u64) -> Result<Report, CliError> {
    Ok(match suite {
        CheckSuite::Taylor { order, samples } => suites::taylor_suite(*samples, *order, seed)?,
        CheckSuite::Comb { kmax } => suites::comb_suite(*kmax),
        CheckSuite::Lubell { nmax, jmax } => suites::lubell_suite(*nmax, *jmax),
        CheckSuite::Ode { samples } => suites::ode_suite(*samples, seed),
        CheckSuite::Modules { files, count, order } => {
            if files.is_empty() {
                suites::module_suite(seed, *count, *order)?
            } else {
                let mods: Vec<Module> = files.iter().map(|f| load_module(f)).collect::<Result<_, _>>()?;
                given_modules_report(&mods, *order)?
            }
        }
        CheckSuite::Intertwiner { file: None, .. } => suites::intertwiner_suite(),
        CheckSuite::Intertwiner { file: Some(path), axioms } => {
            let t = load_table(path)?;
            let ax = axiom_set(&axioms.axioms, &t)?;
            suites::table_suite(&[(t, &ax[..])])
        }
        CheckSuite::All => suites::check_all(&SuiteOptions { seed, ..SuiteOptions::default() })?,
    })
}
