//! Command-line frontend: measures, bound verification, coefficient
//! optimization, lattice discovery, sector/staircase reports, the recursive
//! totally-positive sequence, and full table verification.

use clap::{Parser, Subcommand};
use rmeasure::auxfun::{parse_aux, AuxFunction, WeightKind, DEFAULT_EPS};
use rmeasure::intpoly::{parse, IntPolynomial};
use rmeasure::roots::measure;
use rmeasure::siplp::{semi_infinite_optimize, ControlSet};
use rmeasure::{discovery, sector, smythseq, tables};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

/// Value comparisons against 4-decimal table entries: one unit in the last
/// printed place (entries are truncated, not rounded).
const PRINT_TOL: f64 = 1e-4;

#[derive(Parser)]
#[command(name = "rmeasure", version, about = "Certified lower bounds for conjugate-sum measures of algebraic integers")]
struct Cli {
    /// Decimal digits used when rendering reals.
    #[arg(long, global = true, default_value_t = 6)]
    digits: usize,
    /// Export the embedded data tables into this directory, then run the command (if any).
    #[arg(long, global = true, value_name = "DIR")]
    dump_tables: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Degree, trace, R-measure, Mahler measure and sector data of a polynomial.
    Measure {
        /// Polynomial text like "x^2-3x+1", or a path to a file containing one.
        input: String,
    },
    /// Load an auxiliary function and certify its global-minimum bound.
    Verify {
        /// Path to an .aux file; embedded names like "tables/theorem2.aux" also resolve.
        input: String,
        /// Re-evaluate on the sector ray at this angle (degrees) instead of the file's weight.
        #[arg(long)]
        theta: Option<f64>,
        /// Fail (exit 1) unless the certified minimum reaches this value.
        #[arg(long)]
        expect: Option<f64>,
    },
    /// Re-optimize the coefficients of an auxiliary function by semi-infinite LP.
    Optimize {
        /// Path to an .aux file; embedded names also resolve.
        input: String,
        /// Optimize on the sector ray at this angle (degrees) instead of the file's weight.
        #[arg(long)]
        theta: Option<f64>,
        /// Convergence gap tolerance.
        #[arg(long, default_value_t = 1e-6)]
        gap_tol: f64,
    },
    /// Grow an auxiliary function from the seed by lattice-reduction discovery.
    Discover {
        /// Number of discovery steps.
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// Lattice dimension schedule, cycled.
        #[arg(long, value_delimiter = ',', default_values_t = vec![5usize, 10, 15])]
        k: Vec<usize>,
        /// Discover on the sector ray at this angle (degrees) instead of the half-line.
        #[arg(long)]
        theta: Option<f64>,
    },
    /// Sector report: envelope and staircase at an angle, or all nine intervals.
    Sector {
        /// Angle in degrees; omitted = verify every interval.
        #[arg(long)]
        theta: Option<f64>,
    },
    /// The recursive totally-positive sequence: one row per level 0..=n.
    Smyth {
        #[arg(long, default_value_t = 12)]
        n: u32,
    },
    /// Run the verification suite for one embedded table.
    Tables {
        /// 1 = certified intervals, 2 = half-line function, 3 = sector functions.
        #[arg(long)]
        which: u8,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(dir) = &cli.dump_tables {
        if let Err(e) = dump_tables(dir) {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
        if cli.command.is_none() {
            return ExitCode::from(EXIT_OK);
        }
    }
    let Some(cmd) = cli.command else {
        eprintln!("error: no command given (try --help)");
        return ExitCode::from(EXIT_INPUT);
    };
    let code = match cmd {
        Command::Measure { input } => cmd_measure(&input, cli.digits),
        Command::Verify {
            input,
            theta,
            expect,
        } => cmd_verify(&input, theta, expect, cli.digits),
        Command::Optimize {
            input,
            theta,
            gap_tol,
        } => cmd_optimize(&input, theta, gap_tol, cli.digits),
        Command::Discover { steps, k, theta } => cmd_discover(steps, &k, theta, cli.digits),
        Command::Sector { theta } => cmd_sector(theta, cli.digits),
        Command::Smyth { n } => cmd_smyth(n, cli.digits),
        Command::Tables { which } => cmd_tables(which, cli.digits),
    };
    ExitCode::from(code)
}

fn dump_tables(dir: &std::path::Path) -> std::io::Result<()> {
    for (rel, body) in tables::embedded_files() {
        let path = dir.join(rel);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        std::fs::write(&path, body)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

/// Polynomial argument: file contents if the argument names a readable file,
/// otherwise the argument itself.
fn load_poly(input: &str) -> Result<IntPolynomial, String> {
    let text = match std::fs::read_to_string(input) {
        Ok(s) => s.trim().to_string(),
        Err(_) => input.to_string(),
    };
    parse(&text).map_err(|e| format!("cannot parse polynomial {input:?}: {e}"))
}

/// Aux argument: disk file first, then the embedded tables by name
/// ("tables/f2.aux", "f2.aux", "theorem2.aux", ...).
fn load_aux(input: &str) -> Result<AuxFunction, String> {
    let text = match std::fs::read_to_string(input) {
        Ok(s) => s,
        Err(io) => {
            let hit = tables::embedded_files()
                .into_iter()
                .find(|(rel, _)| *rel == input || rel.ends_with(&format!("/{input}")));
            match hit {
                Some((_, body)) => body.to_string(),
                None => return Err(format!("cannot open {input:?}: {io}")),
            }
        }
    };
    parse_aux(&text).map_err(|e| format!("cannot parse auxiliary function {input:?}: {e}"))
}

fn reweight(f: &AuxFunction, theta: Option<f64>) -> AuxFunction {
    match theta {
        None => f.clone(),
        Some(t) if t.abs() < 1e-9 => AuxFunction {
            weight: WeightKind::PositiveReal,
            terms: f.terms.clone(),
        },
        Some(t) => AuxFunction {
            weight: WeightKind::sector(t),
            terms: f.terms.clone(),
        },
    }
}

fn cmd_measure(input: &str, digits: usize) -> u8 {
    let p = match load_poly(input) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let m = match measure(&p) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    println!("polynomial        {p}");
    println!("degree            {}", m.degree);
    println!("monic             {}", m.monic);
    println!("trace             {:.digits$}", m.trace);
    println!("abs trace         {:.digits$}", m.abs_trace);
    println!("R-measure         {:.digits$}", m.r_measure);
    println!("abs R-measure r   {:.digits$}", m.abs_r);
    println!("Mahler measure    {:.digits$}", m.mahler);
    println!("totally positive  {}", m.totally_positive);
    println!("sector half-angle {:.digits$} deg", m.sector_half_angle);
    if m.zero_root {
        println!("zero root         flagged (0 is a root)");
    }
    EXIT_OK
}

fn cmd_verify(input: &str, theta: Option<f64>, expect: Option<f64>, digits: usize) -> u8 {
    let f = match load_aux(input) {
        Ok(f) => reweight(&f, theta),
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let (bound, exceptions) = match f.certified_bound() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let min = f.global_min(DEFAULT_EPS, None).expect("bound above implies minimum");
    println!("terms       {}", f.terms.len());
    println!("t value     {:.digits$}", f.t_value());
    println!("certified m {:.digits$}", bound);
    println!("local minima (x, f(x)):");
    for (x, v) in &min.minima {
        println!("  {:.digits$}\t{:.digits$}", x, v);
    }
    println!("exceptions (irreducible factors, with their r):");
    for q in &exceptions {
        match measure(q) {
            Ok(m) => println!("  {q}\tr = {:.digits$}", m.abs_r),
            Err(_) => println!("  {q}\tr = (constant)"),
        }
    }
    if let Some(e) = expect {
        if bound >= e - PRINT_TOL {
            println!("expect {:.digits$}: pass", e);
        } else {
            println!("expect {:.digits$}: FAIL (certified m = {:.digits$})", e, bound);
            return EXIT_FAIL;
        }
    }
    EXIT_OK
}

fn cmd_optimize(input: &str, theta: Option<f64>, gap_tol: f64, digits: usize) -> u8 {
    let f = match load_aux(input) {
        Ok(f) => reweight(&f, theta),
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let polys: Vec<IntPolynomial> = f
        .terms
        .iter()
        .filter(|t| t.poly.degree() >= 1)
        .map(|t| t.poly.clone())
        .collect();
    let cap = f.domain_cap();
    let seed = ControlSet::seed_grid(cap, 40, 20);
    let out = match semi_infinite_optimize(&polys, &f.weight, Some(seed), gap_tol) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAIL;
        }
    };
    print!("{}", out.trace.render_tsv());
    println!("converged  {}", out.trace.converged);
    println!("final m'   {:.digits$}", out.bound);
    println!("coefficients:");
    for (p, c) in polys.iter().zip(&out.lp.coeffs) {
        println!("  {:.digits$}\t{p}", c);
    }
    EXIT_OK
}

fn cmd_discover(steps: usize, k: &[usize], theta: Option<f64>, digits: usize) -> u8 {
    let weight = match theta {
        None => WeightKind::PositiveReal,
        Some(t) if t.abs() < 1e-9 => WeightKind::PositiveReal,
        Some(t) => WeightKind::sector(t),
    };
    let state = match discovery::run(weight, steps, k) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAIL;
        }
    };
    for line in &state.log {
        println!("{line}");
    }
    println!("final m_lower {:.digits$}", state.m_lower);
    println!("polynomials:");
    for (p, c) in state.polys.iter().zip(&state.coeffs) {
        println!("  {:.digits$}\t{p}", c);
    }
    EXIT_OK
}

fn cmd_sector(theta: Option<f64>, digits: usize) -> u8 {
    let pool = match sector::table1_pool() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAIL;
        }
    };
    match theta {
        Some(t) => {
            let env = match sector::f_envelope(t) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_FAIL;
                }
            };
            println!("theta      {:.digits$} deg", t);
            println!("envelope f {:.digits$}", env);
            match sector::g_theta(t, &pool) {
                Some(g) => println!("staircase g {:.digits$}", g),
                None => println!("staircase g (no pool entry fits this sector)"),
            }
            EXIT_OK
        }
        None => verify_table1(&pool, digits),
    }
}

fn verify_table1(pool: &sector::StaircasePool, digits: usize) -> u8 {
    let mut failures = 0;
    for row in sector::table1_rows() {
        let report = match sector::verify_interval(row, pool) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("row {}: error: {e}", row.index);
                failures += 1;
                continue;
            }
        };
        let ok = report.ok();
        println!(
            "row {} [{:.4}, {:.4}) c = {:.4}: {}",
            row.index,
            row.theta_lo,
            row.theta_hi,
            row.c_value,
            if ok { "pass" } else { "FAIL" }
        );
        for c in &report.checks {
            println!("  {}\t{}\t{}", if c.ok { "ok " } else { "BAD" }, c.name, c.detail);
        }
        if !ok {
            failures += 1;
        }
    }
    let _ = digits;
    if failures == 0 {
        println!("9/9 rows pass");
        EXIT_OK
    } else {
        println!("{failures}/9 rows FAILED");
        EXIT_FAIL
    }
}

fn cmd_smyth(n: u32, digits: usize) -> u8 {
    println!("n\tdegree\ttrace\tr\tbound\tok");
    let mut all_ok = true;
    for lv in 0..=n {
        let level = match smythseq::level(lv) {
            Ok(l) => l,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_INPUT;
            }
        };
        let (r, bound, ok) = smythseq::r_bound_of(&level);
        let degree = 1u64 << lv;
        let trace = (1u64 << (lv + 1)) - 1;
        let dist_ok = lv < 2 || smythseq::distribution_of(&level).ok;
        let ok = ok && dist_ok;
        all_ok &= ok;
        println!("{lv}\t{degree}\t{trace}\t{:.digits$}\t{:.digits$}\t{ok}", r, bound);
    }
    if all_ok {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn cmd_tables(which: u8, digits: usize) -> u8 {
    match which {
        1 => {
            let pool = match sector::table1_pool() {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_FAIL;
                }
            };
            verify_table1(&pool, digits)
        }
        2 => verify_table2(digits),
        3 => verify_table3(digits),
        _ => {
            eprintln!("error: --which must be 1, 2 or 3");
            EXIT_INPUT
        }
    }
}

/// Half-line bound: certified m >= 1.6165 and the six exception
/// polynomials reproduce their published r values.
fn verify_table2(digits: usize) -> u8 {
    let f = tables::theorem2();
    let (bound, _) = match f.certified_bound() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAIL;
        }
    };
    let mut ok = bound >= 1.6165;
    println!(
        "certified m = {:.digits$} (target 1.6165): {}",
        bound,
        if ok { "pass" } else { "FAIL" }
    );
    let remark: [(&str, f64); 6] = [
        ("x-1", 0.0),
        ("x^2-3x+1", 1.3090),
        ("x^3-5x^2+6x-1", 1.6006),
        ("x^4-7x^3+13x^2-7x+1", 1.5570),
        ("x^4-7x^3+14x^2-8x+1", 1.5413),
        ("x^6-11x^5+43x^4-73x^3+53x^2-15x+1", 1.6130),
    ];
    for (text, want) in remark {
        let p = parse(text).expect("remark polynomial");
        let m = measure(&p).expect("remark measure");
        let row_ok = (m.abs_r - want).abs() <= PRINT_TOL && m.abs_r < bound;
        ok &= row_ok;
        println!(
            "exception {text}: r = {:.digits$} (printed {want}): {}",
            m.abs_r,
            if row_ok { "pass" } else { "FAIL" }
        );
    }
    if ok {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

/// Sector functions: each f_i reaches the interval value c_i at the right
/// endpoint of its interval (c(theta) is non-increasing, so the bound
/// propagates left over the whole interval).
fn verify_table3(digits: usize) -> u8 {
    let mut ok = true;
    for row in sector::table1_rows() {
        let theta = row.theta_hi - 1e-3;
        let v = match sector::f_i(row.index, theta) {
            Ok(v) => v,
            Err(e) => {
                eprintln!("f_{}: error: {e}", row.index);
                ok = false;
                continue;
            }
        };
        let row_ok = v >= row.c_value - PRINT_TOL;
        ok &= row_ok;
        println!(
            "f_{} at {:.4} deg: min = {:.digits$} (target {:.4}): {}",
            row.index,
            theta,
            v,
            row.c_value,
            if row_ok { "pass" } else { "FAIL" }
        );
    }
    if ok {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}
