//! Batch command-line surface.
//!
//! Exit codes: 0 on success, 1 when a computation guard refuses the input,
//! 2 on validation or usage errors. Output is byte-identical for identical
//! inputs and flags; rationals print as `p/q` and decimals are derived.

use crate::arcs::{builtin_scenario, Scenario, BUILTIN_SCENARIOS};
use crate::asym::{
    breve_series, builtin_spec, coefficient_asymptotic, sep_vs_ns_order, singularity_data,
    PhiSpec, BUILTIN_SPECS,
};
use crate::error::{Error, Result};
use crate::frequency::{frequency, frequency_counting_estimate};
use crate::integrate::{integrate_polynomial, SimplexDomain};
use crate::lattice::{count_lattice_points, norbury_ratio};
use crate::poly::MultiPoly;
use crate::rational::{format_rational, int, rat, to_decimal, Rational};
use crate::report::ReportRecord;
use crate::scenario_io::{parse_phispec_str, parse_scenario};
use crate::tau::TauEngine;
use crate::volume::{kontsevich_polynomial, main_term_polynomial};
use clap::{Args, Parser, Subcommand};
use num::Zero;
use std::collections::BTreeMap;
use std::path::PathBuf;

/// Environment variable naming the directory for the on-disk cache of
/// intersection numbers.
pub const CACHE_DIR_ENV: &str = "CURVEFREQ_CACHE_DIR";

#[derive(Parser)]
#[command(
    name = "curvefreq",
    about = "Exact frequencies of closed curves on surfaces and their large-genus orders",
    version
)]
struct Cli {
    /// Worker count accepted for interface stability; every computation is
    /// deterministic and independent of it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Report wall-clock time on standard error.
    #[arg(long, global = true)]
    timings: bool,
    /// Also write the machine-readable part of the output to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Intersection numbers <tau_{d_1} ... tau_{d_n}>_g.
    Tau(TauArgs),
    /// Volume polynomials V_{g,n}.
    Volume(VolumeArgs),
    /// Exact frequency of a scenario.
    Freq(FreqArgs),
    /// Transformed-series coefficients and singularity data of a chart
    /// family.
    Asym(AsymArgs),
    /// Integral metric ribbon-graph counts.
    Lattice(LatticeArgs),
    /// Asymptotic order table at a fixed self-intersection number.
    Table(TableArgs),
    /// Reproduce every worked rational value of the reference computations.
    AppendixCheck,
}

#[derive(Args)]
struct TauArgs {
    #[arg(long)]
    g: u32,
    /// Comma-separated indices d1,d2,...
    #[arg(long, value_delimiter = ',', required = true)]
    d: Vec<u32>,
    /// Also print the large-genus main term and the ratio to it.
    #[arg(long)]
    compare: bool,
    /// Lift the default complexity guards (g <= 30, n <= 12).
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args)]
struct VolumeArgs {
    #[arg(long)]
    g: u32,
    #[arg(long)]
    n: usize,
    /// Print the large-genus comparison polynomial instead.
    #[arg(long)]
    main_term: bool,
}

#[derive(Args)]
struct FreqArgs {
    /// `builtin:<name>` or a path to a scenario file.
    #[arg(long)]
    scenario: String,
    /// Also run the finite-L counting estimate.
    #[arg(long)]
    estimate: Option<u64>,
}

#[derive(Args)]
struct AsymArgs {
    /// `builtin:<name>` or a path to a chart-family file.
    #[arg(long)]
    spec: String,
    /// Largest coefficient index to report.
    #[arg(long = "N", default_value_t = 20)]
    max_n: u64,
}

#[derive(Args)]
struct LatticeArgs {
    #[arg(long)]
    g: u32,
    #[arg(long)]
    n: usize,
    /// Boundary lengths b1,b2,...
    #[arg(long, value_delimiter = ',')]
    b: Vec<i64>,
    /// Compare against the volume approximation at scales of (2,...,2).
    #[arg(long)]
    norbury: bool,
    #[arg(long, value_delimiter = ',')]
    scales: Vec<i64>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    k: u64,
}

/// Entry point returning the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if cli.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return 2;
    }
    let start = std::time::Instant::now();
    let mut out = String::new();
    let result = dispatch(&cli, &mut out);
    if cli.timings {
        eprintln!("elapsed_ms: {}", start.elapsed().as_millis());
    }
    match result {
        Ok(machine) => {
            print!("{out}");
            if let (Some(path), Some(machine)) = (&cli.out, machine) {
                if let Err(e) = std::fs::write(path, machine) {
                    eprintln!("error writing {}: {e}", path.display());
                    return 1;
                }
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Guard(_) | Error::Io(_) => 1,
                _ => 2,
            }
        }
    }
}

fn engine_with_cache(allow_large: bool) -> (TauEngine, Option<PathBuf>) {
    let engine = if allow_large {
        TauEngine::with_guards(u32::MAX, usize::MAX)
    } else {
        TauEngine::new()
    };
    let cache_path = std::env::var_os(CACHE_DIR_ENV).map(|dir| PathBuf::from(dir).join("tau.cache"));
    if let Some(path) = &cache_path {
        if path.exists() {
            if let Err(e) = engine.load_cache(path) {
                eprintln!("warning: ignoring unreadable cache {}: {e}", path.display());
            }
        }
    }
    (engine, cache_path)
}

fn save_cache(engine: &TauEngine, cache_path: &Option<PathBuf>) {
    if let Some(path) = cache_path {
        if let Some(dir) = path.parent() {
            let _ = std::fs::create_dir_all(dir);
        }
        if let Err(e) = engine.save_cache(path) {
            eprintln!("warning: could not write cache {}: {e}", path.display());
        }
    }
}

fn dispatch(cli: &Cli, out: &mut String) -> Result<Option<String>> {
    match &cli.command {
        Command::Tau(args) => cmd_tau(args, out),
        Command::Volume(args) => cmd_volume(args, out),
        Command::Freq(args) => cmd_freq(args, out),
        Command::Asym(args) => cmd_asym(args, out),
        Command::Lattice(args) => cmd_lattice(args, out),
        Command::Table(args) => cmd_table(args, out),
        Command::AppendixCheck => cmd_appendix_check(out),
    }
}

fn push_line(out: &mut String, line: impl AsRef<str>) {
    out.push_str(line.as_ref());
    out.push('\n');
}

fn cmd_tau(args: &TauArgs, out: &mut String) -> Result<Option<String>> {
    let (engine, cache_path) = engine_with_cache(args.allow_large);
    let value = engine.tau(args.g, &args.d)?;
    push_line(out, format_rational(&value));
    let mut record = ReportRecord::new("tau");
    record.input("g", args.g);
    record.input(
        "d",
        args.d
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    record.value("tau", &value);
    if args.compare {
        let main = engine.main_term(args.g, &args.d)?;
        push_line(out, format!("main term = {}", format_rational(&main)));
        let ratio = &value / &main;
        push_line(out, format!("ratio = {}", to_decimal(&ratio, 20)));
        record.value("main_term", &main);
        record.value("ratio", &ratio);
    }
    save_cache(&engine, &cache_path);
    Ok(Some(record.to_json()))
}

fn polynomial_json(p: &MultiPoly) -> String {
    let mut terms = BTreeMap::new();
    for (exps, coeff) in p.terms() {
        let key = exps
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",");
        terms.insert(key, format_rational(coeff));
    }
    let doc = serde_json::json!({
        "variables": p.variables(),
        "terms": terms,
    });
    serde_json::to_string_pretty(&doc).expect("polynomial serializes")
}

fn cmd_volume(args: &VolumeArgs, out: &mut String) -> Result<Option<String>> {
    let names: Vec<String> = (1..=args.n).map(|i| format!("b{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let p = if args.main_term {
        main_term_polynomial(args.g, &refs)?
    } else {
        let (engine, cache_path) = engine_with_cache(false);
        let p = kontsevich_polynomial(&engine, args.g, &refs)?;
        save_cache(&engine, &cache_path);
        p
    };
    for (exps, coeff) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        let monomial = names
            .iter()
            .zip(exps)
            .map(|(v, e)| format!("{v}^{e}"))
            .collect::<Vec<_>>()
            .join("*");
        push_line(out, format!("{} * {}", format_rational(coeff), monomial));
    }
    let json = polynomial_json(&p);
    push_line(out, &json);
    Ok(Some(json))
}

fn load_scenario(source: &str) -> Result<Scenario> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return builtin_scenario(name);
    }
    let (scenario, warnings) = parse_scenario(std::path::Path::new(source))?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    Ok(scenario)
}

fn cmd_freq(args: &FreqArgs, out: &mut String) -> Result<Option<String>> {
    let scenario = load_scenario(&args.scenario)?;
    let (engine, cache_path) = engine_with_cache(false);
    let result = frequency(&engine, &scenario)?;
    push_line(out, format!("scenario: {}", result.scenario));
    push_line(
        out,
        format!("prefactor: {}", format_rational(&result.prefactor)),
    );
    for (chart, value) in &result.contributions {
        push_line(out, format!("  {chart}: {}", format_rational(value)));
    }
    push_line(
        out,
        format!(
            "total: {} (= {})",
            format_rational(&result.total),
            to_decimal(&result.total, 20)
        ),
    );
    let mut record = ReportRecord::new("freq");
    record.input("scenario", &result.scenario);
    record.value("prefactor", &result.prefactor);
    for (chart, value) in &result.contributions {
        record.value(chart, value);
    }
    record.value("total", &result.total);
    if let Some(l) = args.estimate {
        let estimate = frequency_counting_estimate(&scenario, l)?;
        push_line(
            out,
            format!(
                "estimate at L = {l}: {} (= {})",
                format_rational(&estimate),
                to_decimal(&estimate, 20)
            ),
        );
        record.input("estimate_L", l);
        record.value("estimate", &estimate);
    }
    save_cache(&engine, &cache_path);
    Ok(Some(record.to_json()))
}

fn load_spec(source: &str) -> Result<PhiSpec> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return builtin_spec(name);
    }
    let text = std::fs::read_to_string(source)?;
    parse_phispec_str(&text)
}

fn cmd_asym(args: &AsymArgs, out: &mut String) -> Result<Option<String>> {
    let spec = load_spec(&args.spec)?;
    let series = breve_series(&spec, args.max_n as usize);
    push_line(out, "N,exact,main_term,ratio");
    let mut csv = String::from("N,exact,main_term,ratio\n");
    for big_n in 0..=args.max_n {
        let exact = series.coefficient(big_n as usize);
        let main = coefficient_asymptotic(&spec, big_n)?;
        let main_str = if main.log_power == 0 {
            format_rational(&main.value)
        } else {
            format!(
                "{}*(log N)^{}",
                format_rational(&main.value),
                main.log_power
            )
        };
        // The ratio is the one numerical column: exact arithmetic first,
        // a logarithm factor last.
        let ratio = if main.value.is_zero() {
            String::new()
        } else {
            let base = &exact / &main.value;
            let approx: f64 = rational_to_f64(&base)
                / (big_n.max(2) as f64).ln().powi(main.log_power as i32);
            format!("{approx:.12}")
        };
        let line = format!("{big_n},{},{main_str},{ratio}", format_rational(&exact));
        push_line(out, &line);
        csv.push_str(&line);
        csv.push('\n');
    }
    if spec.r() > 0 {
        let data = singularity_data(&spec)?;
        let doc = serde_json::json!({
            "spec": spec.name,
            "iota0": data.iota0,
            "mu0": data.mu0,
            "leading": format_rational(&data.leading),
            "parity": if data.odd { "odd" } else { "even" },
        });
        let json = serde_json::to_string_pretty(&doc).expect("singularity data serializes");
        push_line(out, &json);
    }
    Ok(Some(csv))
}

fn rational_to_f64(x: &Rational) -> f64 {
    // Split into quotient and remainder to stay accurate for large values.
    let (q, r) = num::Integer::div_rem(x.numer(), x.denom());
    let qf: f64 = q.to_string().parse().unwrap_or(f64::NAN);
    let rf = Rational::new(r, x.denom().clone());
    let rf64: f64 = {
        let scaled = (&rf * int(1i64 << 53)).trunc();
        let s: f64 = scaled.numer().to_string().parse().unwrap_or(0.0);
        s / (1i64 << 53) as f64
    };
    qf + rf64
}

fn cmd_lattice(args: &LatticeArgs, out: &mut String) -> Result<Option<String>> {
    let mut csv = String::new();
    if args.norbury {
        let scales = if args.scales.is_empty() {
            vec![1, 2, 3]
        } else {
            args.scales.clone()
        };
        let (engine, cache_path) = engine_with_cache(false);
        push_line(out, "scale,count,approx,ratio");
        csv.push_str("scale,count,approx,ratio\n");
        for &scale in &scales {
            let (count, approx) = norbury_ratio(&engine, args.g, args.n, scale)?;
            let ratio = if approx.is_zero() {
                String::new()
            } else {
                to_decimal(&(&count / &approx), 12)
            };
            let line = format!(
                "{scale},{},{},{ratio}",
                format_rational(&count),
                format_rational(&approx)
            );
            push_line(out, &line);
            csv.push_str(&line);
            csv.push('\n');
        }
        save_cache(&engine, &cache_path);
    } else {
        if args.b.len() != args.n {
            return Err(Error::Domain(format!(
                "--b needs {} entries for n = {}",
                args.n, args.n
            )));
        }
        let count = count_lattice_points(args.g, args.n, &args.b)?;
        push_line(out, "b,count");
        let b_str = args
            .b
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let line = format!("{b_str},{}", format_rational(&count));
        push_line(out, &line);
        csv.push_str("b,count\n");
        csv.push_str(&line);
        csv.push('\n');
    }
    Ok(Some(csv))
}

fn cmd_table(args: &TableArgs, out: &mut String) -> Result<Option<String>> {
    let table = sep_vs_ns_order(args.k);
    push_line(out, format!("K = {}", table.k));
    push_line(out, "local type | iota0 | mu0 | chi | order");
    for row in &table.rows {
        push_line(
            out,
            format!(
                "{} | {} | {} | {} | {}",
                row.label, row.iota0, row.mu0, row.chi, row.order
            ),
        );
    }
    push_line(out, format!("total frequency order: {}", table.total));
    push_line(out, format!("separating/non-separating: {}", table.sep_over_ns));
    Ok(Some(out.clone()))
}

fn appendix_values(engine: &TauEngine) -> Result<Vec<(String, Rational, Rational)>> {
    let mut checks: Vec<(String, Rational, Rational)> = Vec::new();
    let mut add = |name: &str, got: Rational, want: Rational| {
        checks.push((name.to_string(), got, want));
    };

    // Volume polynomials.
    let v03 = kontsevich_polynomial(engine, 0, &["b1", "b2", "b3"])?;
    add("V_{0,3}", v03.coefficient(&[]), int(1));
    let v11 = kontsevich_polynomial(engine, 1, &["b"])?;
    add("V_{1,1} b^2 coefficient", v11.coefficient(&[2]), rat(1, 48));
    let v12 = kontsevich_polynomial(engine, 1, &["b1", "b2"])?;
    add("V_{1,2} b1^4 coefficient", v12.coefficient(&[4, 0]), rat(1, 192));
    add("V_{1,2} b1^2 b2^2 coefficient", v12.coefficient(&[2, 2]), rat(1, 96));

    // Chart integrals of the figure-eight, no identifications.
    let noflip = builtin_scenario("genus2-figure8-noflip")?;
    let r = frequency(engine, &noflip)?;
    add("pants integral alpha1", r.contributions[0].1.clone(), rat(1, 180));
    add("pants integral alpha2", r.contributions[1].1.clone(), rat(1, 1440));
    add("pants integral alpha3", r.contributions[2].1.clone(), rat(1, 1440));
    add("pants integral alpha4", r.contributions[3].1.clone(), rat(1, 288));
    add("figure-eight, no flip", r.total.clone(), rat(1, 48));

    let flip13 = builtin_scenario("genus2-figure8-flip13")?;
    let r13 = frequency(engine, &flip13)?;
    add("slice integral alpha1, flip 1-3", r13.contributions[0].1.clone(), rat(1, 9216));
    add("slice integral alpha4, flip 1-3", r13.contributions[3].1.clone(), rat(1, 4608));
    add("figure-eight, flip 1-3", r13.total.clone(), rat(1, 3072));

    let flip12 = builtin_scenario("genus2-figure8-flip12")?;
    let r12 = frequency(engine, &flip12)?;
    add(
        "slice integral alpha1, flip 1-2",
        r12.contributions[0].1.clone(),
        rat(7, 174960),
    );
    add(
        "slice integral alpha3, flip 1-2",
        r12.contributions[2].1.clone(),
        rat(131, 2799360),
    );
    add("figure-eight, flip 1-2", r12.total.clone(), rat(1, 2880));

    // Simple curves.
    let ns = frequency(engine, &builtin_scenario("genus2-simple-ns")?)?.total;
    let sep = frequency(engine, &builtin_scenario("genus2-simple-sep")?)?.total;
    add("simple non-separating", ns.clone(), rat(1, 576));
    add("simple separating", sep.clone(), rat(1, 27648));
    add("separating/non-separating", &sep / &ns, rat(1, 48));
    let total_simple = &ns + &sep;
    add("total simple", total_simple.clone(), rat(49, 27648));
    let total_fig8 = &r.total + &r13.total + &r12.total;
    add("total figure-eight", total_fig8.clone(), rat(991, 46080));
    add("simple/figure-eight", total_simple / total_fig8, rat(245, 2973));
    Ok(checks)
}

fn cmd_appendix_check(out: &mut String) -> Result<Option<String>> {
    let (engine, cache_path) = engine_with_cache(false);
    let checks = appendix_values(&engine)?;
    let mut all_ok = true;
    let mut csv = String::from("name,value,expected,status\n");
    for (name, got, want) in &checks {
        let ok = got == want;
        all_ok &= ok;
        let status = if ok { "PASS" } else { "FAIL" };
        push_line(
            out,
            format!("{status} {name} = {}", format_rational(got)),
        );
        csv.push_str(&format!(
            "{name},{},{},{status}\n",
            format_rational(got),
            format_rational(want)
        ));
    }
    push_line(
        out,
        format!(
            "{} of {} values reproduced",
            checks.iter().filter(|(_, g, w)| g == w).count(),
            checks.len()
        ),
    );
    save_cache(&engine, &cache_path);
    if !all_ok {
        // Print what we have, then fail.
        print!("{out}");
        out.clear();
        return Err(Error::Domain("appendix values not reproduced".into()));
    }
    Ok(Some(csv))
}

/// Names accepted by `--scenario builtin:...` and `--spec builtin:...`.
pub fn builtin_names() -> (Vec<&'static str>, Vec<&'static str>) {
    (BUILTIN_SCENARIOS.to_vec(), BUILTIN_SPECS.to_vec())
}

/// Convenience used by documentation examples: the exact chart integral of
/// a polynomial over `{w . x <= 1}`.
pub fn integrate_over_simplex(
    p: &MultiPoly,
    vars: &[&str],
    weights: &[i64],
) -> Result<Rational> {
    let domain = SimplexDomain::new(
        vars.iter().map(|s| s.to_string()).collect(),
        weights.iter().map(|&w| int(w)).collect(),
    )?;
    integrate_polynomial(p, &domain)
}
