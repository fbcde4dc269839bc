//! Command-line front end. Every subcommand renders to a string first, so
//! output is identical whether it goes to stdout or `--out`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{
    artin_whaples_product, expansion, fmt_rational, parse_rational, rational_to_f64, valuations, Prime,
};
use crate::strings::{
    adelic_approx, cantor_set_membership, selfsimilar_check, unfold, DescriptorDoc, Family,
    FractalStringDesc, Membership, Warning,
};
use crate::tube::{
    average_content_closed, average_content_numeric, nonmeasurability_witness, volume_series,
    wave_table, Grid, Smoothing, DEFAULT_SERIES_N,
};
use crate::zeta::{
    adelic_partial_product, euler_partial_product, euler_partial_product_exact, euler_riemann_partial,
    euler_riemann_partial_exact, veneziano_amplitude, zeta_of, AdelicFamily, GeometricZeta,
};

#[derive(Debug, Parser)]
#[command(name = "padic-strings", version, about = "Exact p-adic, real and adelic fractal strings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format (each subcommand has its own default).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// A string descriptor, from a JSON file or inline flags.
#[derive(Debug, Clone, Default, Args)]
pub struct DescArgs {
    /// JSON descriptor file `{family, p, m, k, S, diagonal, world}`.
    #[arg(long, conflicts_with_all = ["family", "p", "m", "k", "diagonal", "kept"])]
    pub spec: Option<PathBuf>,
    #[arg(long, value_parser = parse_family)]
    pub family: Option<Family>,
    #[arg(long)]
    pub p: Option<u64>,
    /// Block length (rational) or base (smith).
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub diagonal: bool,
    /// Explicit recursing blocks, comma separated.
    #[arg(long = "S", value_delimiter = ',')]
    pub kept: Option<Vec<u64>>,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|_| {
        "expected one of rational, cantor-p, cantor-2, smith, base-p-real, euler, harmonic".to_string()
    })
}

impl DescArgs {
    pub fn resolve(&self) -> Result<FractalStringDesc> {
        if let Some(path) = &self.spec {
            return FractalStringDesc::load(path);
        }
        let doc = DescriptorDoc {
            family: Some(self.family.ok_or_else(|| Error::arg("give --spec FILE or --family"))?),
            p: self.p,
            m: self.m,
            k: self.k,
            s: self.kept.clone(),
            diagonal: self.diagonal,
            world: None,
        };
        doc.build()
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension, period, residue, total length and average content.
    Info(DescOnly),
    /// Complex dimensions with imaginary part in a window.
    Dims {
        #[command(flatten)]
        desc: DescArgs,
        #[arg(long, allow_hyphen_values = true, default_value_t = -10.0)]
        tmin: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 10.0)]
        tmax: f64,
    },
    /// Tube volumes on a log grid, by the direct sum and the pole series.
    Tube {
        #[command(flatten)]
        desc: DescArgs,
        /// `log:lo:hi:n`
        #[arg(long, default_value = "log:1e-4:1:50")]
        grid: Grid,
        #[arg(long = "series-n", default_value_t = DEFAULT_SERIES_N)]
        series_n: usize,
        #[arg(long, default_value = "cesaro")]
        smoothing: Smoothing,
    },
    /// Average Minkowski content and the nonmeasurability witness.
    Content {
        #[command(flatten)]
        desc: DescArgs,
        #[arg(long)]
        m0: Option<u32>,
        #[arg(long)]
        periods: Option<u32>,
    },
    /// Partial adelic products over primes up to `pmax`.
    Adelic {
        /// `l-half` or `cantor-smith`
        #[arg(long)]
        family: AdelicFamilyArg,
        /// Smith base for `cantor-smith`.
        #[arg(long, default_value_t = 3)]
        m: u64,
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long)]
        pmax: u64,
    },
    /// Truncated Euler products `prod_{p <= pmax} sum_{j <= J} p^-js`.
    Euler {
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        /// Imaginary part of `s`.
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        t: f64,
        #[arg(long)]
        pmax: u64,
        #[arg(long)]
        j: u32,
        /// Square the product (Euler string times harmonic string).
        #[arg(long)]
        riemann: bool,
    },
    /// Product of all absolute values of a rational.
    Artin {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// p-adic digits of a rational.
    Digits {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Depth-n membership in the p-adic Cantor set.
    Membership {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Ball-level unfolding of a p-adic string.
    Unfold {
        #[command(flatten)]
        desc: DescArgs,
        #[arg(long = "G")]
        g: u32,
        /// List every kept ball.
        #[arg(long)]
        list: bool,
    },
    /// Self-similarity of a string, or of the adelic approximation with `--primes`.
    Selfsim {
        #[command(flatten)]
        desc: DescArgs,
        #[arg(long = "G")]
        g: u32,
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
    },
    /// Local Veneziano amplitude.
    Veneziano {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
    },
}

#[derive(Debug, Args)]
pub struct DescOnly {
    #[command(flatten)]
    pub desc: DescArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AdelicFamilyArg {
    LHalf,
    CantorSmith,
}

/// `{:.16e}`: 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.into());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn prime(p: u64) -> Result<Prime> {
    Prime::new(p)
}

fn rational(s: &str) -> Result<BigRational> {
    parse_rational(s)
}

#[derive(Debug, Serialize)]
struct Info {
    family: Family,
    name: String,
    warnings: Vec<Warning>,
    #[serde(rename = "D")]
    d: Option<f64>,
    #[serde(rename = "D_exact")]
    d_exact: Option<String>,
    period: Option<f64>,
    residue: Option<f64>,
    residue_exact: Option<String>,
    total_length: Option<String>,
    m_av: Option<f64>,
}

fn info(desc: &FractalStringDesc) -> Result<Info> {
    let lattice = match zeta_of(desc) {
        GeometricZeta::Lattice(z) => Some(z),
        _ => None,
    };
    let dim = lattice.as_ref().map(|z| z.dimension());
    let res = lattice.as_ref().map(|z| z.residue());
    let m_av = if desc.is_nonarchimedean() && !desc.is_degenerate() {
        Some(average_content_closed(desc)?.value)
    } else {
        None
    };
    Ok(Info {
        family: desc.family(),
        name: desc.to_string(),
        warnings: desc.warnings().to_vec(),
        d: dim.as_ref().map(|d| d.value),
        d_exact: dim.map(|d| d.exact.to_string()),
        period: lattice.as_ref().map(|z| z.period()),
        residue: res.as_ref().map(|r| r.value),
        residue_exact: res.map(|r| r.to_string()),
        total_length: desc.total_length().map(|t| fmt_rational(&t)),
        m_av,
    })
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

fn text_info(i: &Info) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| out.push_str(&format!("{k}: {v}\n"));
    line("family", i.family.to_string());
    line("name", i.name.clone());
    for w in &i.warnings {
        line("warning", serde_json::to_value(w).map(|v| v.as_str().unwrap_or_default().to_string()).unwrap_or_default());
    }
    line("D", format!("{} ({})", opt(i.d), i.d_exact.clone().unwrap_or_default()));
    line("period", opt(i.period));
    line("residue", format!("{} ({})", opt(i.residue), i.residue_exact.clone().unwrap_or_default()));
    line("total_length", i.total_length.clone().unwrap_or_else(|| "divergent".into()));
    line("m_av", opt(i.m_av));
    out
}

#[derive(Debug, Serialize)]
struct TubeRow {
    ln_eps: f64,
    eps: f64,
    #[serde(rename = "V")]
    v: f64,
    ratio: f64,
    #[serde(rename = "V_series")]
    v_series: Option<f64>,
    rel_err: Option<f64>,
    jump: bool,
}

fn tube_rows(desc: &FractalStringDesc, grid: &Grid, n: usize, smoothing: Smoothing) -> Result<Vec<TubeRow>> {
    wave_table(desc, grid)?
        .into_iter()
        .map(|s| {
            let series = if s.jump {
                None
            } else {
                Some(volume_series(desc, s.eps, n, smoothing)?.value)
            };
            Ok(TubeRow {
                ln_eps: s.ln_eps,
                eps: s.eps,
                v: s.v,
                ratio: s.ratio,
                rel_err: series.map(|x| ((x - s.v) / s.v).abs()),
                v_series: series,
                jump: s.jump,
            })
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct EulerOut {
    s: [f64; 2],
    pmax: u64,
    j: u32,
    riemann: bool,
    exact: Option<String>,
    re: f64,
    im: f64,
}

#[derive(Debug, Serialize)]
struct ArtinOut {
    x: String,
    product: String,
    valuations: Vec<(String, f64)>,
}

#[derive(Debug, Serialize)]
struct UnfoldOut {
    name: String,
    generations: u32,
    kept_counts: Vec<usize>,
    kept_measure: String,
    residual_measure: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    balls: Option<Vec<String>>,
}

/// Runs a parsed command and returns the rendered output.
pub fn execute(cli: &Cli) -> Result<String> {
    let fmt = cli.format;
    match &cli.command {
        Command::Info(DescOnly { desc }) => {
            let i = info(&desc.resolve()?)?;
            match fmt.unwrap_or(Format::Json) {
                Format::Json => json(&i),
                Format::Text => Ok(text_info(&i)),
                Format::Csv => csv_table(
                    &["family", "name", "D", "D_exact", "period", "residue", "total_length", "m_av"],
                    &[vec![
                        i.family.to_string(),
                        i.name.clone(),
                        opt(i.d),
                        i.d_exact.clone().unwrap_or_default(),
                        opt(i.period),
                        opt(i.residue),
                        i.total_length.clone().unwrap_or_default(),
                        opt(i.m_av),
                    ]],
                ),
            }
        }
        Command::Dims { desc, tmin, tmax } => {
            let d = desc.resolve()?;
            let z = zeta_of(&d);
            let dims = z.closed_form()?.complex_dimensions(*tmin, *tmax);
            match fmt.unwrap_or(Format::Csv) {
                Format::Json => json(&dims),
                Format::Csv => csv_table(
                    &["n", "re", "im"],
                    &dims
                        .iter()
                        .map(|c| {
                            let w = c.value();
                            vec![c.index.to_string(), fmt_f64(w.re), fmt_f64(w.im)]
                        })
                        .collect::<Vec<_>>(),
                ),
                Format::Text => Ok(dims.iter().map(|c| format!("{c}\n")).collect()),
            }
        }
        Command::Tube { desc, grid, series_n, smoothing } => {
            let rows = tube_rows(&desc.resolve()?, grid, *series_n, *smoothing)?;
            match fmt.unwrap_or(Format::Csv) {
                Format::Json => json(&rows),
                Format::Csv | Format::Text => csv_table(
                    &["ln_eps", "eps", "V", "ratio", "V_series", "rel_err", "jump"],
                    &rows
                        .iter()
                        .map(|r| {
                            vec![
                                fmt_f64(r.ln_eps),
                                fmt_f64(r.eps),
                                fmt_f64(r.v),
                                fmt_f64(r.ratio),
                                opt(r.v_series),
                                opt(r.rel_err),
                                if r.jump { "jump".into() } else { String::new() },
                            ]
                        })
                        .collect::<Vec<_>>(),
                ),
            }
        }
        Command::Content { desc, m0, periods } => {
            let d = desc.resolve()?;
            let mut report = nonmeasurability_witness(&d)?;
            if m0.is_some() || periods.is_some() {
                let n = average_content_numeric(
                    &d,
                    m0.unwrap_or(crate::tube::REPORT_M0),
                    periods.unwrap_or(crate::tube::REPORT_PERIODS),
                )?;
                report.m_av_numeric = n.value;
            }
            match fmt.unwrap_or(Format::Json) {
                Format::Json => json(&report),
                Format::Csv => csv_table(
                    &["m_av_closed", "m_av_numeric", "sup", "inf", "ratio", "verdict"],
                    &[vec![
                        fmt_f64(report.m_av_closed),
                        fmt_f64(report.m_av_numeric),
                        fmt_f64(report.sup),
                        fmt_f64(report.inf),
                        fmt_f64(report.ratio),
                        report.verdict.to_string(),
                    ]],
                ),
                Format::Text => Ok(format!(
                    "m_av_closed: {}\nm_av_numeric: {}\nsup: {} ({})\ninf: {} ({})\nratio: {} ({})\nverdict: {}\n",
                    fmt_f64(report.m_av_closed),
                    fmt_f64(report.m_av_numeric),
                    fmt_f64(report.sup),
                    fmt_rational(&report.sup_exact),
                    fmt_f64(report.inf),
                    fmt_rational(&report.inf_exact),
                    fmt_f64(report.ratio),
                    fmt_rational(&report.ratio_exact),
                    report.verdict
                )),
            }
        }
        Command::Adelic { family, m, s, pmax } => {
            let fam = match family {
                AdelicFamilyArg::LHalf => AdelicFamily::LHalf,
                AdelicFamilyArg::CantorSmith => AdelicFamily::CantorSmith { m: *m },
            };
            let a = adelic_partial_product(fam, *s, *pmax)?;
            let value = match &a.exact {
                Some(e) => fmt_rational(e),
                None => fmt_f64(a.value()),
            };
            match fmt.unwrap_or(Format::Text) {
                Format::Json => json(&a),
                Format::Text => Ok(format!("{value} {}\n", a.trend)),
                Format::Csv => csv_table(
                    &["s", "pmax", "value", "log_abs", "slope", "trend"],
                    &[vec![
                        fmt_f64(a.s),
                        a.pmax.to_string(),
                        value,
                        fmt_f64(a.log_abs),
                        fmt_f64(a.slope),
                        a.trend.to_string(),
                    ]],
                ),
            }
        }
        Command::Euler { s, t, pmax, j, riemann } => {
            let integer = *t == 0.0 && s.fract() == 0.0 && s.abs() <= 64.0;
            let exact = integer.then(|| {
                let s = *s as i64;
                if *riemann {
                    euler_riemann_partial_exact(s, *pmax, *j)
                } else {
                    euler_partial_product_exact(s, *pmax, *j)
                }
            });
            let z = Complex64::new(*s, *t);
            let v = match &exact {
                Some(e) => Complex64::new(rational_to_f64(e), 0.0),
                None if *riemann => euler_riemann_partial(z, *pmax, *j),
                None => euler_partial_product(z, *pmax, *j),
            };
            let out = EulerOut {
                s: [*s, *t],
                pmax: *pmax,
                j: *j,
                riemann: *riemann,
                exact: exact.as_ref().map(fmt_rational),
                re: v.re,
                im: v.im,
            };
            match fmt.unwrap_or(Format::Text) {
                Format::Json => json(&out),
                Format::Text => Ok(match &out.exact {
                    Some(e) => format!("{e}\n"),
                    None => format!("{} {}\n", fmt_f64(v.re), fmt_f64(v.im)),
                }),
                Format::Csv => csv_table(
                    &["exact", "re", "im"],
                    &[vec![out.exact.clone().unwrap_or_default(), fmt_f64(v.re), fmt_f64(v.im)]],
                ),
            }
        }
        Command::Artin { x } => {
            let v = rational(x)?;
            let product = fmt_rational(&artin_whaples_product(&v)?);
            let out = ArtinOut { x: fmt_rational(&v), product, valuations: valuations(&v)? };
            match fmt.unwrap_or(Format::Text) {
                Format::Json => json(&out),
                Format::Text => Ok(format!("{}\n", out.product)),
                Format::Csv => csv_table(
                    &["place", "log_abs"],
                    &out.valuations.iter().map(|(k, v)| vec![k.clone(), fmt_f64(*v)]).collect::<Vec<_>>(),
                ),
            }
        }
        Command::Digits { x, p, n } => {
            let d = expansion(&rational(x)?, prime(*p)?, *n)?;
            match fmt.unwrap_or(Format::Text) {
                Format::Json => json(&d),
                Format::Text => Ok(format!(
                    "start {}: {}\n",
                    d.start,
                    d.digits.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
                )),
                Format::Csv => csv_table(
                    &["exponent", "digit"],
                    &d.digits
                        .iter()
                        .enumerate()
                        .map(|(j, v)| vec![(d.start + j as i64).to_string(), v.to_string()])
                        .collect::<Vec<_>>(),
                ),
            }
        }
        Command::Membership { x, p, n } => {
            let m = cantor_set_membership(&rational(x)?, prime(*p)?, *n)?;
            let text = match m {
                Membership::In => "in".to_string(),
                Membership::OutAt(j) => format!("out at digit {j}"),
            };
            match fmt.unwrap_or(Format::Text) {
                Format::Json => json(&m),
                Format::Text => Ok(text + "\n"),
                Format::Csv => csv_table(&["membership"], &[vec![text]]),
            }
        }
        Command::Unfold { desc, g, list } => {
            let d = desc.resolve()?;
            let u = unfold(&d, *g)?;
            let out = UnfoldOut {
                name: d.to_string(),
                generations: u.generations,
                kept_counts: u.kept_counts(),
                kept_measure: fmt_rational(&u.kept_measure()),
                residual_measure: fmt_rational(&u.residual_measure()),
                balls: list.then(|| u.all_kept().iter().map(ToString::to_string).collect()),
            };
            match fmt.unwrap_or(Format::Text) {
                Format::Json => json(&out),
                Format::Csv => csv_table(
                    &["generation", "balls"],
                    &out.kept_counts
                        .iter()
                        .enumerate()
                        .map(|(i, c)| vec![(i + 1).to_string(), c.to_string()])
                        .collect::<Vec<_>>(),
                ),
                Format::Text => {
                    let mut s = String::new();
                    for (i, c) in out.kept_counts.iter().enumerate() {
                        s.push_str(&format!("generation {}: {c} balls\n", i + 1));
                    }
                    s.push_str(&format!("kept measure: {}\n", out.kept_measure));
                    s.push_str(&format!("residual measure: {}\n", out.residual_measure));
                    for b in out.balls.iter().flatten() {
                        s.push_str(&format!("{b}\n"));
                    }
                    Ok(s)
                }
            }
        }
        Command::Selfsim { desc, g, primes } => match primes {
            Some(ps) => {
                let ps = ps.iter().map(|&p| prime(p)).collect::<Result<Vec<_>>>()?;
                let a = adelic_approx(&ps, *g)?;
                let rows: Vec<Vec<String>> = a
                    .components
                    .iter()
                    .map(|c| vec![c.p.to_string(), c.self_similar.to_string(), fmt_rational(&c.unfold.residual_measure())])
                    .collect();
                match fmt.unwrap_or(Format::Text) {
                    Format::Json => json(&serde_json::json!({
                        "primes": a.components.iter().map(|c| c.p.get()).collect::<Vec<_>>(),
                        "self_similar": a.components.iter().map(|c| c.self_similar).collect::<Vec<_>>(),
                        "all_self_similar": a.all_self_similar(),
                        "residual_product": fmt_rational(&a.residual_product),
                    })),
                    Format::Csv => csv_table(&["p", "self_similar", "residual_measure"], &rows),
                    Format::Text => {
                        let mut s: String = rows.iter().map(|r| format!("CS_{}: {} (residual {})\n", r[0], r[1], r[2])).collect();
                        s.push_str(&format!("{} (residual product {})\n", a.all_self_similar(), fmt_rational(&a.residual_product)));
                        Ok(s)
                    }
                }
            }
            None => {
                let d = desc.resolve()?;
                let ok = selfsimilar_check(&d, *g)?;
                match fmt.unwrap_or(Format::Text) {
                    Format::Json => json(&serde_json::json!({ "name": d.to_string(), "G": g, "self_similar": ok })),
                    Format::Csv => csv_table(&["name", "G", "self_similar"], &[vec![d.to_string(), g.to_string(), ok.to_string()]]),
                    Format::Text => Ok(format!("{ok}\n")),
                }
            }
        },
        Command::Veneziano { p, a, b } => {
            let v = veneziano_amplitude(prime(*p)?, *a, *b)?;
            match fmt.unwrap_or(Format::Text) {
                Format::Json => json(&serde_json::json!({ "p": p, "a": a, "b": b, "amplitude": v })),
                Format::Csv => csv_table(&["p", "a", "b", "amplitude"], &[vec![p.to_string(), fmt_f64(*a), fmt_f64(*b), fmt_f64(v)]]),
                Format::Text => Ok(format!("{}\n", fmt_f64(v))),
            }
        }
    }
}

/// Parses `args` (including the program name), runs, writes the output and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = execute(&cli).and_then(|text| match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(Error::from),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(Error::from)
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <Format as ValueEnum>::from_str(s, true).map_err(|_| Error::arg(format!("unknown format {s:?}")))
    }
}
