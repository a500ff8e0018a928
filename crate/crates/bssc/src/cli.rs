//! Command-line surface: codebook export, encoding, decoding, simulation,
//! sweeps, and the self-test.
//!
//! Exit codes: 0 on success, 2 on configuration errors (including flag and
//! input-file problems), 3 on decode failures. Output files are written to
//! a temporary sibling and renamed into place, so failures never leave a
//! partial file behind.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::codebook::{codebook_size, write_codebook_csv, BsscParams, ExportKind};
use crate::decoder::{decode_multi, decode_noiseless, ReceivedSignal};
use crate::error::{Error, Result};
use crate::sim::{
    run_trials, write_stats_csv, CodebookKind, DecoderKind, TrialConfig, TrialStats,
};

#[derive(Parser)]
#[command(
    name = "bssc",
    version,
    about = "Binary subspace chirp codebooks: export, encode, decode, simulate"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a codebook as CSV.
    Codebook {
        /// Dimension exponent; codewords live in 2^m dimensions.
        #[arg(long)]
        m: usize,
        /// Which codebook: the full parametrized family or its full-rank
        /// (binary chirp) slice.
        #[arg(long, default_value = "bssc")]
        kind: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print one codeword as `index,re,im` lines, all 2^m rows.
    Encode {
        #[arg(long)]
        m: usize,
        /// Codeword id in `0..codebook_size(m)`.
        #[arg(long)]
        id: u64,
    },
    /// Reconstruct codewords from a received vector, printed as JSON lines.
    Decode {
        #[arg(long)]
        m: usize,
        /// Input CSV of `index,re,im` rows, one per dimension.
        #[arg(long = "in")]
        input: PathBuf,
        /// Number of superposed users; omitted means exact single-codeword
        /// decoding.
        #[arg(long)]
        users: Option<usize>,
    },
    /// Run one Monte-Carlo configuration and write a stats row.
    Simulate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        users: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "bssc")]
        codebook: String,
        #[arg(long, default_value = "structured")]
        decoder: String,
        /// Complex noise variance per dimension (0 = noiseless).
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[arg(long)]
        out: PathBuf,
        /// Measure wall-clock decode time. Off by default so output bytes
        /// are reproducible run to run.
        #[arg(long)]
        timing: bool,
        /// `csv` writes the stats table; `svg` additionally writes a chart
        /// next to it.
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Run a grid of configurations from a key=value spec file.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        timing: bool,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Run the exhaustive small-dimension invariant suite.
    Selftest,
}

/// Entry point: parses arguments, dispatches, and maps errors to exit
/// codes.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    if let Ok(threads) = std::env::var("BSSC_THREADS") {
        if let Ok(count) = threads.parse::<usize>() {
            if count >= 1 {
                // Ignore failure: the global pool may already exist.
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(count)
                    .build_global();
            }
        }
    }
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // clap renders help/version through the error path too.
            let _ = err.print();
            return if err.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(err @ Error::DecodeFailure(_)) => {
            eprintln!("error: {err}");
            3
        }
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Codebook { m, kind, out } => cmd_codebook(m, &kind, &out),
        Command::Encode { m, id } => cmd_encode(m, id),
        Command::Decode { m, input, users } => cmd_decode(m, &input, users),
        Command::Simulate {
            m,
            users,
            trials,
            seed,
            codebook,
            decoder,
            noise,
            out,
            timing,
            format,
        } => {
            let mut cfg = TrialConfig::new(m, users, trials, seed);
            cfg.codebook = CodebookKind::parse(&codebook)?;
            cfg.decoder = DecoderKind::parse(&decoder)?;
            cfg.noise_variance = noise;
            cfg.measure_time = timing;
            validate_dim(m)?;
            let stats = run_trials(&cfg)?;
            let rows = vec![(cfg, stats)];
            write_stats_outputs(&rows, &out, &format)
        }
        Command::Sweep {
            spec,
            out,
            timing,
            format,
        } => cmd_sweep(&spec, &out, timing, &format),
        Command::Selftest => cmd_selftest(),
    }
}

fn validate_dim(m: usize) -> Result<()> {
    if m == 0 || m > 16 {
        return Err(Error::Config(format!("m must be in 1..=16, got {m}")));
    }
    Ok(())
}

/// Writes bytes to a sibling temp file and renames into place.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::Config(format!("not a writable path: {}", path.display())))?;
    let mut tmp = PathBuf::from(dir.unwrap_or(Path::new(".")));
    tmp.push(format!(".{}.tmp-{}", file_name.to_string_lossy(), std::process::id()));
    fs::write(&tmp, bytes).map_err(|e| {
        Error::Config(format!("cannot write output {}: {e}", path.display()))
    })?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Error::Config(format!("cannot move output into {}: {e}", path.display()))
    })
}

fn cmd_codebook(m: usize, kind: &str, out: &Path) -> Result<()> {
    validate_dim(m)?;
    let kind = match kind {
        "bssc" => ExportKind::Bssc,
        "bc" => ExportKind::Bc,
        other => return Err(Error::Config(format!("unknown codebook kind '{other}'"))),
    };
    if m > 4 {
        // 2^m * sum over labels explodes quickly; the CSV is a desk-scale
        // artifact.
        return Err(Error::Resource(format!(
            "codebook export supports m <= 4 ({} rows at m=4)",
            codebook_size(4)
        )));
    }
    let mut buf = Vec::new();
    write_codebook_csv(m, kind, &mut buf)?;
    write_atomic(out, &buf)
}

fn cmd_encode(m: usize, id: u64) -> Result<()> {
    validate_dim(m)?;
    let params = BsscParams::from_id(m, id)
        .map_err(|_| Error::Config(format!("id {id} out of range: codebook_size({m}) = {}", codebook_size(m))))?;
    let vector = params.codeword().to_complex();
    let mut out = String::new();
    for (index, z) in vector.iter().enumerate() {
        writeln!(out, "{},{},{}", index, z.re, z.im).expect("string write");
    }
    print!("{out}");
    Ok(())
}

fn read_signal_csv(m: usize, path: &Path) -> Result<ReceivedSignal> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read input {}: {e}", path.display())))?;
    let n = 1usize << m;
    let mut samples = vec![None; n];
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Config(format!(
                "malformed input line {}: expected index,re,im",
                line_no + 1
            )));
        }
        let index: usize = fields[0]
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("bad index on line {}", line_no + 1)))?;
        let re: f64 = fields[1]
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("bad re value on line {}", line_no + 1)))?;
        let im: f64 = fields[2]
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("bad im value on line {}", line_no + 1)))?;
        if index >= n {
            return Err(Error::Config(format!(
                "index {index} out of range for m={m} on line {}",
                line_no + 1
            )));
        }
        if samples[index].replace(Complex64::new(re, im)).is_some() {
            return Err(Error::Config(format!("duplicate index {index} in input")));
        }
    }
    let samples: Vec<Complex64> = samples
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::Config(format!("missing index {i} in input"))))
        .collect::<Result<_>>()?;
    ReceivedSignal::new(samples)
}

#[derive(Serialize)]
struct RecoveredLine {
    id: u64,
    m: usize,
    r: usize,
    i_mask: usize,
    h_free_bits: u64,
    s_r_bits: u64,
    b: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    coeff_re: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coeff_im: Option<f64>,
}

fn recovered_line(params: &BsscParams, coeff: Option<Complex64>) -> RecoveredLine {
    RecoveredLine {
        id: params.id(),
        m: params.ambient_dim(),
        r: params.rank(),
        i_mask: params.label().subspace().leading_mask(),
        h_free_bits: params.label().subspace().cell_bits(),
        s_r_bits: params.label().form_bits(),
        b: params.selector().index(),
        coeff_re: coeff.map(|h| h.re),
        coeff_im: coeff.map(|h| h.im),
    }
}

fn cmd_decode(m: usize, input: &Path, users: Option<usize>) -> Result<()> {
    validate_dim(m)?;
    let signal = read_signal_csv(m, input)?;
    match users {
        None => {
            let params = decode_noiseless(&signal)?;
            let line = serde_json::to_string(&recovered_line(&params, None))
                .expect("serializable struct");
            println!("{line}");
        }
        Some(count) => {
            let result = decode_multi(&signal, count)?;
            for (params, coeff) in result.recovered.iter().zip(&result.coefficients) {
                let line = serde_json::to_string(&recovered_line(params, Some(*coeff)))
                    .expect("serializable struct");
                println!("{line}");
            }
        }
    }
    Ok(())
}

fn write_stats_outputs(
    rows: &[(TrialConfig, TrialStats)],
    out: &Path,
    format: &str,
) -> Result<()> {
    let mut buf = Vec::new();
    write_stats_csv(rows, &mut buf)?;
    write_atomic(out, &buf)?;
    match format {
        "csv" => Ok(()),
        "svg" => {
            let svg = render_error_rate_svg(rows);
            let chart_path = out.with_extension("svg");
            write_atomic(&chart_path, svg.as_bytes())
        }
        other => Err(Error::Config(format!("unknown format '{other}'"))),
    }
}

/// Parses the sweep grid: `key = v1,v2,...` lines, `#` comments. Keys `m`,
/// `users`, `trials`, `seed` are required (lists allowed); `codebook`,
/// `decoder`, `noise` default to `bssc`, `structured`, `0`. The grid is the
/// cartesian product in that key order.
fn parse_sweep_spec(text: &str) -> Result<Vec<TrialConfig>> {
    let mut values: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, rest)) = line.split_once('=') else {
            return Err(Error::Config(format!(
                "sweep line {} is not key = value",
                line_no + 1
            )));
        };
        let key = key.trim().to_string();
        let list: Vec<String> = rest.split(',').map(|v| v.trim().to_string()).collect();
        if !matches!(
            key.as_str(),
            "m" | "users" | "trials" | "seed" | "codebook" | "decoder" | "noise"
        ) {
            return Err(Error::Config(format!("unknown sweep key '{key}'")));
        }
        if values.insert(key.clone(), list).is_some() {
            return Err(Error::Config(format!("duplicate sweep key '{key}'")));
        }
    }
    for required in ["m", "users", "trials", "seed"] {
        if !values.contains_key(required) {
            return Err(Error::Config(format!("sweep spec is missing '{required}'")));
        }
    }
    let get = |key: &str, default: &str| -> Vec<String> {
        values
            .get(key)
            .cloned()
            .unwrap_or_else(|| vec![default.to_string()])
    };
    let parse_usize = |v: &str| -> Result<usize> {
        v.parse()
            .map_err(|_| Error::Config(format!("bad integer '{v}' in sweep spec")))
    };
    let parse_u64 = |v: &str| -> Result<u64> {
        v.parse()
            .map_err(|_| Error::Config(format!("bad integer '{v}' in sweep spec")))
    };

    let mut configs = Vec::new();
    for m in get("m", "") {
        for users in get("users", "") {
            for trials in get("trials", "") {
                for seed in get("seed", "") {
                    for codebook in get("codebook", "bssc") {
                        for decoder in get("decoder", "structured") {
                            for noise in get("noise", "0") {
                                let mut cfg = TrialConfig::new(
                                    parse_usize(&m)?,
                                    parse_usize(&users)?,
                                    parse_u64(&trials)?,
                                    parse_u64(&seed)?,
                                );
                                cfg.codebook = CodebookKind::parse(&codebook)?;
                                cfg.decoder = DecoderKind::parse(&decoder)?;
                                cfg.noise_variance = noise.parse().map_err(|_| {
                                    Error::Config(format!("bad noise value '{noise}'"))
                                })?;
                                configs.push(cfg);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(configs)
}

fn cmd_sweep(spec: &Path, out: &Path, timing: bool, format: &str) -> Result<()> {
    let text = fs::read_to_string(spec)
        .map_err(|e| Error::Config(format!("cannot read sweep spec {}: {e}", spec.display())))?;
    let mut configs = parse_sweep_spec(&text)?;
    if configs.is_empty() {
        return Err(Error::Config("sweep spec produced no configurations".into()));
    }
    for cfg in configs.iter_mut() {
        cfg.measure_time = timing;
    }
    let mut rows = Vec::new();
    let mut failures = 0usize;
    for (cfg, result) in crate::sim::sweep(&configs) {
        match result {
            Ok(stats) => rows.push((cfg, stats)),
            Err(err) => {
                failures += 1;
                eprintln!(
                    "warning: sweep row (m={}, L={}, {}, {}) failed: {err}",
                    cfg.m,
                    cfg.users,
                    cfg.codebook.name(),
                    cfg.decoder.name()
                );
            }
        }
    }
    if rows.is_empty() {
        return Err(Error::Config(format!("all {failures} sweep rows failed")));
    }
    write_stats_outputs(&rows, out, format)
}

/// Renders a self-contained SVG line chart of per-user error probability
/// against the number of active users, log-scale on the vertical axis, one
/// polyline per (codebook, decoder, m) series. Zero rates are clamped to
/// half the resolution floor `1/(2 * users_total)` so they stay visible on
/// the log axis.
pub fn render_error_rate_svg(rows: &[(TrialConfig, TrialStats)]) -> String {
    const WIDTH: f64 = 800.0;
    const HEIGHT: f64 = 600.0;
    const LEFT: f64 = 80.0;
    const RIGHT: f64 = 780.0;
    const TOP: f64 = 40.0;
    const BOTTOM: f64 = 540.0;
    const PALETTE: [&str; 8] = [
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#e377c2",
    ];

    let multiple_m = {
        let mut ms: Vec<usize> = rows.iter().map(|(c, _)| c.m).collect();
        ms.sort_unstable();
        ms.dedup();
        ms.len() > 1
    };
    let series_key = |cfg: &TrialConfig| -> String {
        if multiple_m {
            format!("{}/{} m={}", cfg.codebook.name(), cfg.decoder.name(), cfg.m)
        } else {
            format!("{}/{}", cfg.codebook.name(), cfg.decoder.name())
        }
    };

    let mut series: BTreeMap<String, Vec<(usize, f64, u64)>> = BTreeMap::new();
    for (cfg, stats) in rows {
        series.entry(series_key(cfg)).or_default().push((
            cfg.users,
            stats.per_user_error_prob,
            stats.users_total,
        ));
    }
    for points in series.values_mut() {
        points.sort_unstable_by_key(|&(users, _, _)| users);
    }

    let floor = rows
        .iter()
        .map(|(_, s)| 0.5 / s.users_total.max(1) as f64)
        .fold(f64::INFINITY, f64::min)
        .min(0.5)
        .max(1e-12);
    let clamp = |p: f64| if p > 0.0 { p } else { floor };
    let y_min_log = floor.log10().floor();
    let y_max_log = 0.0;
    let (l_min, l_max) = rows.iter().fold((usize::MAX, 0usize), |(lo, hi), (c, _)| {
        (lo.min(c.users), hi.max(c.users))
    });
    let x_of = |users: usize| -> f64 {
        if l_max == l_min {
            (LEFT + RIGHT) / 2.0
        } else {
            LEFT + (RIGHT - LEFT) * (users - l_min) as f64 / (l_max - l_min) as f64
        }
    };
    let y_of = |p: f64| -> f64 {
        let logp = clamp(p).log10().clamp(y_min_log, y_max_log);
        BOTTOM - (BOTTOM - TOP) * (logp - y_min_log) / (y_max_log - y_min_log).max(1e-9)
    };

    let mut svg = String::new();
    let _ = write!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = write!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = write!(
        svg,
        r#"<text x="{}" y="20" font-family="sans-serif" font-size="16" text-anchor="middle">Per-user error probability vs active users</text>"#,
        (LEFT + RIGHT) / 2.0
    );

    // Axes and decade grid.
    let _ = write!(
        svg,
        r#"<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{BOTTOM}" stroke="black"/>"#
    );
    let _ = write!(
        svg,
        r#"<line x1="{LEFT}" y1="{BOTTOM}" x2="{RIGHT}" y2="{BOTTOM}" stroke="black"/>"#
    );
    let mut decade = y_min_log as i64;
    while decade <= y_max_log as i64 {
        let y = y_of(10f64.powi(decade as i32));
        let _ = write!(
            svg,
            r##"<line x1="{LEFT}" y1="{y:.1}" x2="{RIGHT}" y2="{y:.1}" stroke="#dddddd"/>"##
        );
        let _ = write!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="end">1e{decade}</text>"#,
            LEFT - 8.0,
            y + 4.0
        );
        decade += 1;
    }
    let mut users_ticks: Vec<usize> = rows.iter().map(|(c, _)| c.users).collect();
    users_ticks.sort_unstable();
    users_ticks.dedup();
    for users in &users_ticks {
        let x = x_of(*users);
        let _ = write!(
            svg,
            r#"<line x1="{x:.1}" y1="{BOTTOM}" x2="{x:.1}" y2="{}" stroke="black"/>"#,
            BOTTOM + 6.0
        );
        let _ = write!(
            svg,
            r#"<text x="{x:.1}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{users}</text>"#,
            BOTTOM + 22.0
        );
    }
    let _ = write!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle">active users L</text>"#,
        (LEFT + RIGHT) / 2.0,
        BOTTOM + 44.0
    );

    // Series.
    for (index, (name, points)) in series.iter().enumerate() {
        let color = PALETTE[index % PALETTE.len()];
        let path: Vec<String> = points
            .iter()
            .map(|&(users, p, _)| format!("{:.1},{:.1}", x_of(users), y_of(p)))
            .collect();
        if path.len() > 1 {
            let _ = write!(
                svg,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
                path.join(" ")
            );
        }
        for &(users, p, _) in points {
            let _ = write!(
                svg,
                r#"<circle cx="{:.1}" cy="{:.1}" r="4" fill="{color}"/>"#,
                x_of(users),
                y_of(p)
            );
        }
        let legend_y = TOP + 18.0 * index as f64;
        let _ = write!(
            svg,
            r#"<rect x="{}" y="{:.1}" width="12" height="12" fill="{color}"/>"#,
            RIGHT - 180.0,
            legend_y
        );
        let _ = write!(
            svg,
            r#"<text x="{}" y="{:.1}" font-family="sans-serif" font-size="12">{name}</text>"#,
            RIGHT - 162.0,
            legend_y + 10.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// The exhaustive small-dimension invariant suite behind `selftest`: each
/// group prints one pass/fail line; any failure flips the exit code.
fn cmd_selftest() -> Result<()> {
    use crate::clifford::CliffordOp;
    use crate::pauli::StabilizerGroup;
    use crate::symplectic::CosetLabel;

    let mut all_ok = true;
    let mut report = |name: &str, ok: bool, detail: String| {
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        all_ok &= ok;
    };

    // Stabilizer fixed points, m <= 3.
    {
        let mut checked = 0usize;
        let mut ok = true;
        for m in 1..=3usize {
            for label in CosetLabel::enumerate(m) {
                let group = StabilizerGroup::for_label(&label);
                ok &= group.generators_commute()
                    && group.has_full_rank()
                    && !group.contains_minus_identity();
                let elements = group.elements();
                for b in 0..1usize << m {
                    let params = BsscParams::new(
                        label.clone(),
                        crate::gf2::BitVec::from_index(b, m),
                    )?;
                    let word = params.codeword();
                    ok &= elements
                        .iter()
                        .all(|e| word.eigen_sign_under(e).is_some());
                    checked += 1;
                }
            }
        }
        report(
            "stabilizer-fixed-points",
            ok,
            format!("{checked} codewords, all 2^m elements each, m <= 3"),
        );
    }

    // Symplectic image of the synthesis operator matches the coset
    // representative, m <= 3.
    {
        let mut ok = true;
        let mut checked = 0usize;
        for m in 1..=3usize {
            for label in CosetLabel::enumerate(m) {
                let image = CliffordOp::synthesis_operator(&label).symplectic_image()?;
                ok &= image == label.representative();
                checked += 1;
            }
        }
        report(
            "clifford-symplectic-consistency",
            ok,
            format!("{checked} labels, m <= 3"),
        );
    }

    // Exhaustive coherence at m = 2 and 3.
    {
        let mut ok = true;
        let mut details = Vec::new();
        for m in 2..=3usize {
            let words: Vec<crate::codebook::Codeword> =
                BsscParams::enumerate(m).map(|p| p.codeword()).collect();
            let mut max_num = 0u128;
            let mut max_den = 0u32;
            for i in 0..words.len() {
                for j in (i + 1)..words.len() {
                    let ip = words[i].inner(&words[j]);
                    let (num, den) = ip.abs_sqr();
                    // compare num/2^den > max_num/2^max_den
                    if num << max_den > max_num << den {
                        max_num = num;
                        max_den = den;
                    }
                }
            }
            let exactly_half = max_num << 1 == 1u128 << max_den;
            ok &= exactly_half;
            details.push(format!(
                "m={m}: max |ip|^2 = {max_num}/2^{max_den}{}",
                if exactly_half { " = 1/2" } else { " (expected 1/2)" }
            ));
        }
        report("coherence", ok, details.join("; "));
    }

    // Exact decode round trip, m <= 3.
    {
        let mut ok = true;
        let mut checked = 0usize;
        for m in 1..=3usize {
            for params in BsscParams::enumerate(m) {
                let signal = ReceivedSignal::new(params.codeword().to_complex())?;
                ok &= decode_noiseless(&signal).map(|got| got == params).unwrap_or(false);
                checked += 1;
            }
        }
        report("decode-round-trip", ok, format!("{checked} codewords, m <= 3"));
    }

    if all_ok {
        Ok(())
    } else {
        Err(Error::Config("selftest failed".into()))
    }
}
