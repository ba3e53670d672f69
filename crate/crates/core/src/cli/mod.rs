//! Command-line front end: roots, spectrum, potential, exact, dist and verify.
//!
//! Exit codes: 0 success, 1 invariant failure (verify), 2 usage or parse error,
//! 3 domain or structural error from the core.

pub mod render;
mod verify;

use crate::algebraization::canonical_operator;
use crate::distributional::{assemble_distribution, verify_fourier_condition, FourierReport, OrderResidual};
use crate::error::Error;
use crate::exact_j_half::{gauge_residues, log_grid, residual_profile, Branch, PCTParams};
use crate::exactmath::{format_rational, parse_rational, to_f64, Rational};
use crate::qes::{self, schrodinger_potential};
use crate::weierstrass::{r_to_w, roots_from_invariants, EllipticInvariants};
use clap::{Args, Parser, Subcommand, ValueEnum};
use render::{approx, cell_complex, cell_f64, cell_rational, cell_surd, complex, rational, surd, Table};
use serde_json::{json, Value};
use std::ffi::OsString;

#[derive(Parser, Debug)]
#[command(name = "halphen", version, about = "Spectra, potentials, exact and distributional solutions of the radial Brioschi-Halphen operator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the rendered output to this path instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// Seed for the randomized invariant suites.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Args, Debug, Clone)]
pub struct InvariantArgs {
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub g2: Rational,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub g3: Rational,
}

impl InvariantArgs {
    fn invariants(&self) -> EllipticInvariants {
        EllipticInvariants::new(self.g2.clone(), self.g3.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Exactmath,
    Weierstrass,
    Algebraization,
    Qes,
    Exact,
    Dist,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Roots of 4r^3 - g2 r - g3.
    Roots {
        #[command(flatten)]
        inv: InvariantArgs,
    },
    /// Accessory parameters, eigenpolynomials and residuals for degree n.
    Spectrum {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        inv: InvariantArgs,
    },
    /// Schrodinger potential of the canonical operator on an r-grid.
    Potential {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        inv: InvariantArgs,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true, default_value = "0")]
        b: Rational,
        #[arg(long, allow_hyphen_values = true)]
        r_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        r_max: f64,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Exact j = 1/2 wave function and its residual on a logarithmic grid.
    Exact {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true, default_value = "1")]
        g2: Rational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true, default_value = "0")]
        g3: Rational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true, default_value = "1")]
        b: Rational,
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long, default_value_t = 2)]
        nu: u32,
        #[arg(long, default_value_t = 1)]
        gamma: u32,
        #[arg(long, value_enum, default_value_t = BranchArg::Minus)]
        branch: BranchArg,
        #[arg(long, default_value_t = 2.0)]
        r_min: f64,
        #[arg(long, default_value_t = 1000.0)]
        r_max: f64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Delta-series coefficients for n = -2s and the Fourier-side check.
    Dist {
        #[arg(long)]
        s: u32,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true, default_value = "0")]
        q: Rational,
        #[arg(long, value_parser = rational_arg, default_value = "1/2")]
        k2: Rational,
        #[arg(long, default_value_t = 12)]
        kmax: usize,
    },
    /// Runs the invariant suites and collects the discrepancy report.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Rendered {
    json: Value,
    table: Table,
    default: Format,
    failed: bool,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 2,
        _ => 3,
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.to_string();
            return if e.use_stderr() {
                Output { code: 2, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    log::debug!("parsed {:?}", cli.command);
    let rendered = match dispatch(&cli) {
        Ok(r) => r,
        Err(e) => {
            log::debug!("command failed: {e}");
            return Output { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") };
        }
    };
    let text = match cli.format.unwrap_or(rendered.default) {
        Format::Json => serde_json::to_string_pretty(&rendered.json).expect("serializable") + "\n",
        Format::Csv => rendered.table.to_csv(),
        Format::Table => rendered.table.to_text(),
    };
    let code = if rendered.failed { 1 } else { 0 };
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Output { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Output { code: 3, stdout: String::new(), stderr: format!("error: cannot write {}: {e}\n", path.display()) },
        },
        None => Output { code, stdout: text, stderr: String::new() },
    }
}

fn dispatch(cli: &Cli) -> crate::Result<Rendered> {
    match &cli.command {
        Command::Roots { inv } => cmd_roots(&inv.invariants()),
        Command::Spectrum { n, inv } => cmd_spectrum(*n, &inv.invariants()),
        Command::Potential { n, inv, b, r_min, r_max, samples } => {
            cmd_potential(*n, &inv.invariants(), b, *r_min, *r_max, *samples)
        }
        Command::Exact { g2, g3, b, m, nu, gamma, branch, r_min, r_max, samples } => {
            let branch = match branch {
                BranchArg::Plus => Branch::Plus,
                BranchArg::Minus => Branch::Minus,
            };
            let params = PCTParams::new(*nu, *gamma, *m, b.clone(), branch, EllipticInvariants::new(g2.clone(), g3.clone()))?;
            cmd_exact(&params, *r_min, *r_max, *samples)
        }
        Command::Dist { s, q, k2, kmax } => cmd_dist(*s, q, k2, *kmax),
        Command::Verify { suite } => verify::cmd_verify(*suite, cli.seed),
    }
}

fn cmd_roots(inv: &EllipticInvariants) -> crate::Result<Rendered> {
    let triple = roots_from_invariants(inv);
    let mut table = Table::new(&["index", "re", "im", "exact"]);
    let mut roots = Vec::new();
    for (i, e) in triple.e.iter().enumerate() {
        let z = e.to_c64();
        let (re, im) = match e.as_exact() {
            Some(q) => (rational(&q.re), rational(&q.im)),
            None => (approx(z.re), approx(z.im)),
        };
        roots.push(json!({"re": re, "im": im, "exact": e.is_exact()}));
        let (cre, cim) = match e.as_exact() {
            Some(q) => (cell_rational(&q.re), cell_rational(&q.im)),
            None => (cell_f64(z.re), cell_f64(z.im)),
        };
        table.push(vec![(i + 1).to_string(), cre, cim, e.is_exact().to_string()]);
    }
    let json = json!({
        "g2": rational(&inv.g2),
        "g3": rational(&inv.g3),
        "discriminant": rational(&inv.discriminant()),
        "roots": roots,
        "ordering": "descending-real",
    });
    Ok(Rendered { json, table, default: Format::Json, failed: false })
}

fn cmd_spectrum(n: usize, inv: &EllipticInvariants) -> crate::Result<Rendered> {
    let sols = qes::solve(n, inv)?;
    let mut table = Table::new(&["B", "multiplicity", "exact", "residual_norm", "coeffs"]);
    let mut b_values = Vec::new();
    let mut solutions = Vec::new();
    for sol in &sols {
        for _ in 0..sol.multiplicity {
            b_values.push(complex(&sol.b));
        }
        let (eta, exponents) = match &sol.gauge {
            Some(g) => {
                let j = &sol.j;
                let eta: Vec<Value> = match &g.exact_eta {
                    Some(e) => e.iter().map(rational).collect(),
                    None => g.eta.iter().map(|&x| approx(x)).collect(),
                };
                let exps: Vec<Value> = match &g.exact_eta {
                    Some(e) => e.iter().map(|x| rational(&(x - j / Rational::from_integer(2.into())))).collect(),
                    None => g.eta.iter().map(|&x| approx(x - to_f64(j) / 2.0)).collect(),
                };
                (Value::Array(eta), Value::Array(exps))
            }
            None => (Value::Null, Value::Null),
        };
        solutions.push(json!({
            "B": complex(&sol.b),
            "multiplicity": sol.multiplicity,
            "coeffs": sol.coefficients.iter().map(complex).collect::<Vec<_>>(),
            "residual_norm": approx(sol.residual_norm),
            "eta": eta,
            "exponents": exponents,
        }));
        let coeffs: Vec<String> = sol.coefficients.iter().map(cell_complex).collect();
        table.push(vec![
            cell_complex(&sol.b),
            sol.multiplicity.to_string(),
            sol.b.is_exact().to_string(),
            cell_f64(sol.residual_norm),
            coeffs.join(";"),
        ]);
    }
    let json = json!({
        "n": n,
        "g2": rational(&inv.g2),
        "g3": rational(&inv.g3),
        "B_values": b_values,
        "solutions": solutions,
        "discrepancies": render::discrepancies("qes", &qes::discrepancies()),
    });
    Ok(Rendered { json, table, default: Format::Json, failed: false })
}

fn linear_grid(lo: f64, hi: f64, count: usize) -> crate::Result<Vec<f64>> {
    if count == 0 || !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain(format!("need a finite range r-min <= r-max and samples >= 1, got [{lo}, {hi}] with {count}")));
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect())
}

fn cmd_potential(n: usize, inv: &EllipticInvariants, b: &Rational, r_min: f64, r_max: f64, samples: usize) -> crate::Result<Rendered> {
    let j = Rational::new((n as i64).into(), 2.into());
    let op = canonical_operator(&j, &inv.g2, &inv.g3, b);
    let mut table = Table::new(&["r", "w", "V_general", "V_paper", "diff"]);
    let mut rows = Vec::new();
    for r in linear_grid(r_min, r_max, samples)? {
        let w = r_to_w(r, inv)?;
        let general = schrodinger_potential(&op, r)?;
        let paper = qes::printed_potential(&j, inv, to_f64(b), r)?;
        let diff = paper - general;
        table.push([r, w, general, paper, diff].map(cell_f64).to_vec());
        rows.push(json!({"r": approx(r), "w": approx(w), "v_general": approx(general), "v_paper": approx(paper), "diff": approx(diff)}));
    }
    let json = json!({"n": n, "j": rational(&j), "g2": rational(&inv.g2), "g3": rational(&inv.g3), "B": rational(b), "rows": rows});
    Ok(Rendered { json, table, default: Format::Csv, failed: false })
}

fn cmd_exact(params: &PCTParams, r_min: f64, r_max: f64, samples: usize) -> crate::Result<Rendered> {
    if !(r_min > 0.0 && r_min <= r_max) || samples == 0 {
        return Err(Error::Domain(format!("need 0 < r-min <= r-max and samples >= 1, got [{r_min}, {r_max}] with {samples}")));
    }
    let k = params.k()?;
    let residues = gauge_residues(&params.inv)?;
    let grid = log_grid(r_min, r_max, samples);
    let profile = residual_profile(params, &grid)?;
    let mut table = Table::new(&["r", "w_plus", "R", "residual"]);
    let mut rows = Vec::new();
    for s in &profile {
        let w = (k * s.r).exp();
        table.push([s.r, w, s.value, s.residual].map(cell_f64).to_vec());
        rows.push(json!({"r": approx(s.r), "w": approx(w), "wavefunction": approx(s.value), "residual": approx(s.residual), "relative_residual": approx(s.relative)}));
    }
    let nu: Vec<Value> = match &residues.exact {
        Some(e) => e.iter().map(rational).collect(),
        None => residues.nu.iter().map(|&x| approx(x)).collect(),
    };
    let json = json!({
        "g2": rational(&params.inv.g2),
        "g3": rational(&params.inv.g3),
        "B": rational(&params.b),
        "m": params.m,
        "nu": params.nu,
        "gamma": params.gamma,
        "branch": params.branch,
        "k": approx(k),
        "residues": nu,
        "rows": rows,
    });
    Ok(Rendered { json, table, default: Format::Csv, failed: false })
}

fn cmd_dist(s: u32, q: &Rational, k2: &Rational, kmax: usize) -> crate::Result<Rendered> {
    let exp = assemble_distribution(s, q, k2, kmax)?;
    let report = verify_fourier_condition(&exp)?;
    let mut table = Table::new(&["k", "m", "numerator", "denominator", "value"]);
    let mut terms = Vec::new();
    for t in &exp.terms {
        for (k, a) in t.series.coeffs.iter().enumerate() {
            let (num, den) = if a.is_rational() {
                (a.a.numer().to_string(), a.a.denom().to_string())
            } else {
                (cell_surd(a), "1".to_string())
            };
            table.push(vec![k.to_string(), t.series.m.to_string(), num, den, cell_f64(a.to_f64())]);
        }
        terms.push(json!({
            "m": t.series.m,
            "p": t.p,
            "weight": rational(&t.weight),
            "k0": t.series.k0,
            "coeffs": t.series.coeffs.iter().map(surd).collect::<Vec<_>>(),
        }));
    }
    let json = json!({
        "s": s,
        "n": exp.n,
        "q": rational(q),
        "k2": rational(k2),
        "truncation": kmax,
        "floor_n1": exp.weights.floor_n1,
        "n1": format_rational(&exp.weights.exponents[0]),
        "terms": terms,
        "total": exp.total().into_iter().map(approx).collect::<Vec<_>>(),
        "fourier": fourier_json(&report),
    });
    Ok(Rendered { json, table, default: Format::Csv, failed: false })
}

fn fourier_json(report: &FourierReport) -> Value {
    let orders = |rs: &[OrderResidual]| -> Vec<Value> {
        rs.iter()
            .map(|r| json!({"order": r.order, "residual": approx(r.residual), "exact_zero": r.exact_zero}))
            .collect()
    };
    let terms: Vec<Value> = report
        .terms
        .iter()
        .map(|t| {
            json!({
                "m": t.m,
                "k0": t.k0,
                "interior": orders(&t.interior),
                "initial": orders(&t.initial),
                "boundary": orders(&t.boundary),
                "first_nonzero_interior": t.first_nonzero_interior,
            })
        })
        .collect();
    json!({"terms": terms, "max_interior": approx(report.max_interior), "all_interior_zero": report.all_interior_zero})
}
