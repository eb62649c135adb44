use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tritile::constructor::triquadratic;
use tritile::numtheory::{classify_admissible, derive_tile, solve_tiling_equation, tiling_exists, Existence, TileSpec};
use tritile::quadfield::{tile_angles, QFNum};
use tritile::render::{sig10, to_pstricks, to_svg, ColorMode, RenderStyle};
use tritile::search::{boundary_search, Emit, SearchConfig, SearchStatus};
use tritile::tiling::{analyze, io, AnalysisReport, Tiling, TilingError};

#[derive(Parser)]
#[command(name = "tritile", version, about = "Tilings of a triangle by congruent tiles with 3α + 2β = π")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve M² + N = 2K² and report tiles, admissibility and existence.
    Solve {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Table of solvability, admissibility and existence for lo ≤ N ≤ hi.
    Scan {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        lo: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        hi: u64,
    },
    /// Build the triquadratic tiling for (M, K) and write it as JSON.
    Build {
        m: u64,
        k: u64,
        #[arg(short = 'o', long = "output")]
        out: PathBuf,
    },
    /// Validate a tiling file and run every analysis on it.
    Verify {
        file: PathBuf,
        #[arg(long)]
        report: bool,
        #[arg(long)]
        json: bool,
    },
    /// Search for boundary tilings of ABC for each solution of N.
    Search {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Enumerate all boundary tilings instead of stopping at the first.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        emit_dir: Option<PathBuf>,
        /// Worker threads; TRITILE_THREADS overrides.
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Also write up to this many abandoned partial tilings.
        #[arg(long, default_value_t = 0)]
        record_rejected: usize,
        #[arg(long)]
        json: bool,
    },
    /// Draw a tiling file as SVG or pstricks.
    Render {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = ColorBy::Component)]
        color_by: ColorBy,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ColorBy {
    Component,
    Sign,
    Uniform,
    Region,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Pstricks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Exit {
    Success = 0,
    Negative = 1,
    Usage = 2,
    Invariant = 3,
}

fn exact(q: &QFNum) -> String {
    format!("{} ({})", q.serialize(), sig10(q.to_f64()))
}

fn shape(s: [u64; 3]) -> String {
    format!("{}-{}-{}", s[0], s[1], s[2])
}

fn factor_text(n: u64) -> String {
    let f = tritile::numtheory::factorize(n);
    if f.is_empty() {
        return "1".into();
    }
    f.iter().map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") }).collect::<Vec<_>>().join(" * ")
}

fn solution_json(spec: &TileSpec) -> Value {
    let ang = tile_angles(spec);
    json!({
        "M": spec.m(),
        "K": spec.k(),
        "D": spec.radicand(),
        "K_divides_M2": spec.divisible,
        "J": spec.j,
        "a": spec.a.to_string(),
        "b": spec.b.to_string(),
        "c": spec.c.to_string(),
        "tile_shape": spec.tile_shape_int,
        "abc_shape": spec.abc_shape_int,
        "cos_half_alpha": ang.cos_half_alpha.serialize(),
        "cos_alpha": ang.cos_alpha.serialize(),
        "alpha_deg": ang.alpha_deg,
        "beta_deg": ang.beta_deg,
        "gamma_deg": ang.gamma_deg,
    })
}

fn cmd_solve(n: u64, as_json: bool) -> Exit {
    let sols = solve_tiling_equation(n);
    let adm = classify_admissible(n);
    let exists = tiling_exists(n);
    if as_json {
        let doc = json!({
            "N": n,
            "admissible": adm.admissible,
            "factorization": adm.factorization,
            "offending_primes": adm.offending_primes,
            "solutions": sols.iter().map(|s| solution_json(&derive_tile(*s))).collect::<Vec<_>>(),
            "tiling_exists": matches!(exists, Existence::Yes(_)),
            "witness": match exists { Existence::Yes(s) => json!({"M": s.m, "K": s.k}), Existence::No => Value::Null },
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json value"));
    } else {
        println!("N = {n} = {}", factor_text(n));
        println!(
            "admissible: {}{}",
            if adm.admissible { "yes" } else { "no" },
            if adm.offending_primes.is_empty() {
                String::new()
            } else {
                format!(" (odd power of {:?})", adm.offending_primes)
            }
        );
        if sols.is_empty() {
            println!("no solutions of M^2 + N = 2K^2 with M^2 < N");
        }
        for s in &sols {
            let spec = derive_tile(*s);
            let ang = tile_angles(&spec);
            println!("solution M={} K={} D={}", s.m, s.k, spec.radicand());
            println!("  tile (a, b, c) = ({}, {}, {})", spec.a, spec.b, spec.c);
            println!("  tile shape {}  ABC shape {}", shape(spec.tile_shape_int), shape(spec.abc_shape_int));
            match spec.j {
                Some(j) => println!("  K divides M^2 (J = {j})"),
                None => println!("  K does not divide M^2"),
            }
            println!("  cos(alpha/2) = {}", exact(&ang.cos_half_alpha));
            println!("  cos(alpha)   = {}", exact(&ang.cos_alpha));
            println!(
                "  alpha = {} deg, beta = {} deg, gamma = {} deg",
                sig10(ang.alpha_deg),
                sig10(ang.beta_deg),
                sig10(ang.gamma_deg)
            );
        }
        match exists {
            Existence::Yes(s) => println!("verdict: an N-tiling exists (triquadratic, M={} K={})", s.m, s.k),
            Existence::No => println!("verdict: no N-tiling"),
        }
    }
    match exists {
        Existence::Yes(_) => Exit::Success,
        Existence::No => Exit::Negative,
    }
}

fn scan_note(n: u64) -> &'static str {
    match n {
        14 | 17 => "solvable and admissible; ruled out by the search and the small-N argument, not by prime form",
        _ => "",
    }
}

fn cmd_scan(lo: u64, hi: u64) -> Result<Exit> {
    if lo > hi {
        bail!("empty range {lo}..{hi}");
    }
    println!("{:>8}  {:<24} {:<10} {:<6} note", "N", "solutions (M,K)", "admissible", "exists");
    for n in lo..=hi {
        let sols = solve_tiling_equation(n);
        let adm = classify_admissible(n).admissible;
        let exists = matches!(tiling_exists(n), Existence::Yes(_));
        let list = sols.iter().map(|s| format!("({},{})", s.m, s.k)).collect::<Vec<_>>().join(" ");
        println!(
            "{:>8}  {:<24} {:<10} {:<6} {}",
            n,
            if list.is_empty() { "-".into() } else { list },
            if adm { "yes" } else { "no" },
            if exists { "yes" } else { "no" },
            scan_note(n)
        );
    }
    Ok(Exit::Success)
}

fn invariant_exit(r: &AnalysisReport) -> Exit {
    if !r.validation.passed {
        Exit::Negative
    } else if !r.invariant_failures.is_empty() {
        Exit::Invariant
    } else {
        Exit::Success
    }
}

fn cmd_build(m: u64, k: u64, out: &Path) -> Result<Exit> {
    let t = match triquadratic(m, k) {
        Ok(t) => t,
        Err(e @ TilingError::NotDivisible { .. }) => {
            println!("{e}: no triquadratic tiling for M={m} K={k}");
            return Ok(Exit::Negative);
        }
        Err(e) => bail!("{e}"),
    };
    let r = analyze(&t);
    if !r.ok() {
        println!("constructed tiling failed checks:");
        print_failures(&r);
        return Ok(Exit::Invariant);
    }
    fs::write(out, io::to_json(&t)).with_context(|| format!("writing {}", out.display()))?;
    println!("N={} M={m} K={k}: {} tiles written to {}; validation passed", t.spec.n(), t.tiles.len(), out.display());
    Ok(Exit::Success)
}

fn load(file: &Path) -> Result<Tiling> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    io::from_json(&text).with_context(|| format!("parsing {}", file.display()))
}

fn print_failures(r: &AnalysisReport) {
    for f in &r.validation.failures {
        println!("  FAIL {:?} tiles {:?} {}", f.kind, f.tiles, f.location);
    }
    for f in &r.invariant_failures {
        println!("  INVARIANT {}: {}", f.check, f.detail);
    }
}

fn print_report(t: &Tiling, r: &AnalysisReport) {
    if let Some(c) = &r.census {
        println!(
            "census: {} vertices, centers {}, (3,2,0) {}, (6,4,0) {}, (4,3,1) {}, center identity {}",
            c.vertices.len(),
            c.n_centers,
            c.n_320,
            c.n_640,
            c.n_431,
            if c.center_identity_holds() { "holds" } else { "FAILS" }
        );
    }
    if let Some(s) = &r.signs {
        println!(
            "signs: M_signed = {}, M(a+b+c) = X - Y + Z {}",
            s.m_signed,
            if s.perimeter_identity_holds(t) { "holds" } else { "FAILS" }
        );
    }
    if let Some(d) = &r.d_matrix {
        for (row, name) in d.rows.iter().zip(["X", "Y", "Z"]) {
            println!("d-matrix {name}: {:?}", row);
        }
    }
    if let Some(c) = &r.components {
        println!("components: {}", c.components.len());
        for (i, comp) in c.components.iter().enumerate() {
            println!("  #{i} type {:?}: {} tiles, edges (a, b, c) along {:?}", comp.kind, comp.tiles.len(), comp.edge_directions);
        }
        if !c.out_of_sync.is_empty() {
            println!("  out of sync: {:?}", c.out_of_sync);
        }
    }
    let essential: Vec<_> = r.segments.iter().filter(|s| s.essential).collect();
    println!("segments: {} maximal, {} essential", r.segments.len(), essential.len());
    for s in essential {
        let (p, q) = &s.endpoints;
        println!(
            "  ({}, {}) - ({}, {}): {}",
            sig10(p.x.to_f64()),
            sig10(p.y.to_f64()),
            sig10(q.x.to_f64()),
            sig10(q.y.to_f64()),
            s.relation_text()
        );
    }
    if let Some(sp) = &r.special {
        println!(
            "special vertices: {} centers, {} stars, {} suspicious edges",
            sp.centers.len(),
            sp.stars.len(),
            sp.suspicious_edges.len()
        );
    }
}

fn cmd_verify(file: &Path, report: bool, as_json: bool) -> Result<Exit> {
    let t = load(file)?;
    let r = analyze(&t);
    if as_json {
        println!("{}", serde_json::to_string_pretty(&r).context("serializing report")?);
        return Ok(invariant_exit(&r));
    }
    println!(
        "N={} M={} K={}: {} tiles{}; validation {}",
        t.spec.n(),
        t.spec.m(),
        t.spec.k(),
        t.tiles.len(),
        if t.partial { " (partial)" } else { "" },
        if r.validation.passed { "passed" } else { "FAILED" }
    );
    if !r.validation.passed && !r.validation.area_deficit2.is_zero() {
        println!("  area deficit (doubled): {}", exact(&r.validation.area_deficit2));
    }
    print_failures(&r);
    if report && r.validation.passed {
        print_report(&t, &r);
    }
    Ok(invariant_exit(&r))
}

fn threads(flag: usize) -> Result<usize> {
    match std::env::var("TRITILE_THREADS") {
        Ok(v) => v.trim().parse::<usize>().with_context(|| format!("TRITILE_THREADS={v}")),
        Err(_) => Ok(flag),
    }
    .map(|n| n.max(1))
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    n: u64,
    max_nodes: Option<u64>,
    all: bool,
    emit_dir: Option<&Path>,
    threads_flag: usize,
    record_rejected: usize,
    as_json: bool,
) -> Result<Exit> {
    let sols = solve_tiling_equation(n);
    if sols.is_empty() {
        if as_json {
            println!("{}", json!({"N": n, "solutions": []}));
        } else {
            println!("N={n}: no solutions of M^2 + N = 2K^2, so no tile to search with");
        }
        return Ok(Exit::Negative);
    }
    if let Some(dir) = emit_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let config = SearchConfig {
        max_nodes,
        emit: if all { Emit::All } else { Emit::First },
        record_rejected,
        threads: threads(threads_flag)?,
    };
    let mut any_found = false;
    let mut any_inconclusive = false;
    let mut docs = Vec::new();
    for s in sols {
        let spec = derive_tile(s);
        let out = boundary_search(&spec, &config);
        any_found |= !out.found.is_empty();
        any_inconclusive |= out.status == SearchStatus::NodeLimit && out.found.is_empty();
        let status = match out.status {
            SearchStatus::Exhausted => "search space exhausted",
            SearchStatus::NodeLimit => "node limit reached",
            SearchStatus::StoppedAtFirst => "stopped at first",
        };
        let st = &out.stats;
        if !as_json {
            println!(
                "N={n} M={} K={} tile {} ABC {}: {} boundary tilings found ({status})",
                s.m,
                s.k,
                shape(spec.tile_shape_int),
                shape(spec.abc_shape_int),
                out.found.len()
            );
            println!(
                "  nodes {} placements {} backtracks {} rejected: length {} angle {} overlap {}",
                st.nodes, st.placements_tried, st.backtracks, st.rejected_length, st.rejected_angle, st.rejected_overlap
            );
        }
        if let Some(dir) = emit_dir {
            for (i, t) in out.found.iter().enumerate() {
                let p = dir.join(format!("found-N{n}-M{}-K{}-{:04}.json", s.m, s.k, i + 1));
                fs::write(&p, io::to_json(t)).with_context(|| format!("writing {}", p.display()))?;
            }
            for (i, t) in out.rejected.iter().enumerate() {
                let p = dir.join(format!("rejected-N{n}-M{}-K{}-{:04}.json", s.m, s.k, i + 1));
                fs::write(&p, io::to_json(t)).with_context(|| format!("writing {}", p.display()))?;
            }
        }
        docs.push(json!({
            "M": s.m,
            "K": s.k,
            "found": out.found.len(),
            "rejected_recorded": out.rejected.len(),
            "status": out.status,
            "stats": out.stats,
        }));
    }
    if as_json {
        println!("{}", serde_json::to_string_pretty(&json!({"N": n, "config": config, "solutions": docs}))?);
    } else if !any_found && any_inconclusive {
        println!("inconclusive: the node limit was reached before the search space was exhausted");
    }
    Ok(if any_found || any_inconclusive { Exit::Success } else { Exit::Negative })
}

fn cmd_render(file: &Path, out: &Path, color_by: ColorBy, format: Format, scale: f64) -> Result<Exit> {
    let t = load(file)?;
    let style = RenderStyle {
        color_mode: match color_by {
            ColorBy::Component => ColorMode::ByComponent,
            ColorBy::Sign => ColorMode::BySign,
            ColorBy::Uniform => ColorMode::Uniform,
            ColorBy::Region => ColorMode::ByRegion,
        },
        scale,
        ..Default::default()
    };
    let text = match format {
        Format::Svg => to_svg(&t, &style)?,
        Format::Pstricks => to_pstricks(&t, &style)?,
    };
    if let Some(note) = text.lines().find(|l| l.contains("warning:")) {
        eprintln!("{}", note.trim_start_matches("<!-- ").trim_start_matches("% ").trim_end_matches(" -->"));
    }
    fs::write(out, text).with_context(|| format!("writing {}", out.display()))?;
    println!("{} tiles drawn to {}", t.tiles.len(), out.display());
    Ok(Exit::Success)
}

fn run(cli: Cli) -> Result<Exit> {
    match cli.cmd {
        Cmd::Solve { n, json } => Ok(cmd_solve(n, json)),
        Cmd::Scan { lo, hi } => cmd_scan(lo, hi),
        Cmd::Build { m, k, out } => cmd_build(m, k, &out),
        Cmd::Verify { file, report, json } => cmd_verify(&file, report, json),
        Cmd::Search { n, max_nodes, all, emit_dir, threads, record_rejected, json } => {
            cmd_search(n, max_nodes, all, emit_dir.as_deref(), threads, record_rejected, json)
        }
        Cmd::Render { file, out, color_by, format, scale } => cmd_render(&file, &out, color_by, format, scale),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(Exit::Usage as u8)
        }
    }
}
