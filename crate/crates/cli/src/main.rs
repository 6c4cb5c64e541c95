use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use pbody::functional::{
    c2p_with_error, default_abs_tol, fp, fp_decide, verify_extremal_consistency,
};
use pbody::movements::{convexity_audit, reduce_to_triangle, Endpoint, StepKind};
use pbody::polygon::PolygonJson;
use pbody::random::{random_lps, random_polygon, rng, DEFAULT_SEED};
use pbody::render::{check_nested, extremal_curves, render_svg};
use pbody::{GeomError, PExponent, Polygon};

/// Slack allowed above c₂,ₚ before an inequality violation is reported.
const SHARPNESS_TOL: f64 = 1e-7;
/// Tolerance of the area-convexity audit along random parameter systems.
const LPS_AUDIT_TOL: f64 = 1e-9;
/// Support comparison tolerance for the rendered curves.
const NESTING_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(
    name = "pbody",
    version,
    about = "Firey p-sums, the functional F_p and its planar constant"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the sharp planar constant c₂,ₚ.
    Constant {
        #[arg(long)]
        p: PExponent,
        #[arg(long)]
        abs_tol: Option<f64>,
    },
    /// Evaluate F_p on a polygon read from JSON.
    Fp {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: PExponent,
        #[arg(long, default_value_t = 1e-9)]
        rel_tol: f64,
    },
    /// Tabulate c₂,ₚ and two independent area computations over a p grid.
    Sweep {
        #[arg(long, default_value = "1")]
        p_min: PExponent,
        #[arg(long, default_value = "inf")]
        p_max: PExponent,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long, default_value_t = 1e-6)]
        rel_tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce a polygon to a triangle with a vertex at the origin.
    Reduce {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: PExponent,
        #[arg(long, default_value_t = 1e-8)]
        rel_tol: f64,
    },
    /// Draw the boundaries of T +_p (−T) for the unit triangle T as SVG.
    Render {
        #[arg(long, value_delimiter = ',', default_value = "1,1.5,2,15,inf")]
        p: Vec<PExponent>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the randomized property checks.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, env = "PBODY_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, value_delimiter = ',', default_value = "1,2,inf")]
    p: Vec<PExponent>,
    #[arg(long, default_value_t = 1e-9)]
    rel_tol: f64,
    /// Check only this polygon instead of random ones.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("inequality violated: {0}")]
    Violation(String),
    #[error("property check failed: {0}")]
    Property(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => 1,
            CliError::Violation(_) => 3,
            CliError::Property(_) => 5,
            CliError::Geom(e) => match e {
                GeomError::OriginOutside
                | GeomError::OriginNotInterior
                | GeomError::NegativeSupport { .. }
                | GeomError::NotReducible(_)
                | GeomError::DegenerateInput(_)
                | GeomError::InvalidExponent(_)
                | GeomError::InvalidArgument(_)
                | GeomError::SingularMatrix(_)
                | GeomError::DirectionMismatch
                | GeomError::OutOfInterval { .. } => 4,
                _ => 2,
            },
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Constant { p, abs_tol } => cmd_constant(p, abs_tol),
        Command::Fp { input, p, rel_tol } => cmd_fp(&input, p, rel_tol),
        Command::Sweep {
            p_min,
            p_max,
            steps,
            rel_tol,
            out,
        } => cmd_sweep(p_min, p_max, steps, rel_tol, out.as_deref()),
        Command::Reduce { input, p, rel_tol } => cmd_reduce(&input, p, rel_tol),
        Command::Render { p, out } => cmd_render(&p, out.as_deref()),
        Command::Verify(args) => cmd_verify(&args),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn read_polygon(path: &Path) -> CliResult<Polygon> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    PolygonJson::parse(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn write_or_return(out: Option<&Path>, text: String) -> CliResult<String> {
    match out {
        Some(path) => {
            fs::write(path, &text)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn polygon_literal(p: &Polygon) -> String {
    let parts: Vec<String> = p
        .vertices()
        .iter()
        .map(|v| format!("[{}, {}]", v.x, v.y))
        .collect();
    format!("[{}]", parts.join(", "))
}

fn cmd_constant(p: PExponent, abs_tol: Option<f64>) -> CliResult<String> {
    let tol = abs_tol.unwrap_or_else(|| default_abs_tol(p));
    let (value, err) = c2p_with_error(p, tol)?;
    Ok(format!("p = {p}\nc2p = {value}\nerror_bound = {err:e}\n"))
}

fn cmd_fp(input: &Path, p: PExponent, rel_tol: f64) -> CliResult<String> {
    let k = read_polygon(input)?;
    let r = fp(&k, p, rel_tol)?;
    let mut s = String::new();
    let _ = writeln!(s, "p = {p}");
    let _ = writeln!(s, "body_area = {}", r.body_area);
    let _ = writeln!(
        s,
        "pdiff_area = [{}, {}]",
        r.pdiff_area.lower, r.pdiff_area.upper
    );
    let _ = writeln!(s, "samples = {}", r.pdiff_area.samples);
    let _ = writeln!(s, "fp = {}", r.fp);
    let _ = writeln!(s, "fp_bracket = [{}, {}]", r.fp_lower, r.fp_upper);
    let _ = writeln!(s, "c2p = {}", r.c2p);
    let _ = writeln!(s, "slack = {}", r.slack);
    let _ = writeln!(s, "converged = {}", r.converged);
    if r.fp_lower > r.c2p + SHARPNESS_TOL {
        print!("{s}");
        return Err(CliError::Violation(format!(
            "F_p lower bound {} exceeds c2p = {}",
            r.fp_lower, r.c2p
        )));
    }
    Ok(s)
}

/// `steps` equally spaced finite exponents, plus p = ∞ when `p_max` is
/// infinite (the finite part then ends at max(20, 2·p_min)).
fn sweep_grid(p_min: PExponent, p_max: PExponent, steps: usize) -> CliResult<Vec<PExponent>> {
    let lo = match p_min {
        PExponent::Finite(v) => v,
        PExponent::Infinite => {
            return Err(GeomError::InvalidArgument("p_min must be finite".into()).into())
        }
    };
    let hi = match p_max {
        PExponent::Finite(v) if v > lo => v,
        PExponent::Finite(v) => {
            return Err(
                GeomError::InvalidArgument(format!("need p_min < p_max, got {lo} and {v}")).into(),
            )
        }
        PExponent::Infinite if lo < 20.0 => 20.0,
        PExponent::Infinite => 2.0 * lo,
    };
    if steps < 2 {
        return Err(GeomError::InvalidArgument("steps must be at least 2".into()).into());
    }
    let mut grid: Vec<PExponent> = (0..steps)
        .map(|i| {
            let v = if i == steps - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (steps - 1) as f64
            };
            PExponent::Finite(v)
        })
        .collect();
    if p_max.is_infinite() {
        grid.push(PExponent::Infinite);
    }
    Ok(grid)
}

fn cmd_sweep(
    p_min: PExponent,
    p_max: PExponent,
    steps: usize,
    rel_tol: f64,
    out: Option<&Path>,
) -> CliResult<String> {
    let grid = sweep_grid(p_min, p_max, steps)?;
    let mut csv = String::from("p,c2p,fp_extremal_quadrature,fp_extremal_bracket,deviation\n");
    for p in grid {
        let r = verify_extremal_consistency(p, rel_tol)?;
        let _ = writeln!(
            csv,
            "{},{:.16e},{:.16e},{:.16e},{:.16e}",
            p, r.quadrature, r.closed_form, r.generic, r.max_deviation
        );
    }
    write_or_return(out, csv)
}

fn cmd_reduce(input: &Path, p: PExponent, rel_tol: f64) -> CliResult<String> {
    let k = read_polygon(input)?;
    let r = reduce_to_triangle(&k, p, rel_tol)?;
    let mut s = String::new();
    let _ = writeln!(s, "p = {p}");
    let _ = writeln!(s, "input_vertices = {}", k.len());
    let _ = writeln!(s, "step,movement,vertex,t0,t1,fp_start,fp_t0,fp_t1,chosen");
    for st in &r.trace {
        let (kind, vertex) = match st.kind {
            StepKind::CapShear { vertex } => ("shear", vertex.to_string()),
            StepKind::Translate { .. } => ("translate", "-".to_string()),
            StepKind::Slide { .. } => ("slide", "-".to_string()),
        };
        let chosen = match st.chosen {
            Endpoint::Start => "t0",
            Endpoint::End => "t1",
        };
        let _ = writeln!(
            s,
            "{},{kind},{vertex},{},{},{},{},{},{chosen}",
            st.index, st.t0, st.t1, st.fp_start, st.fp_t0, st.fp_t1
        );
    }
    let _ = writeln!(s, "final_triangle = {}", polygon_literal(&r.triangle));
    let chain: Vec<String> = std::iter::once(r.fp_input)
        .chain(r.trace.iter().map(|st| match st.chosen {
            Endpoint::Start => st.fp_t0,
            Endpoint::End => st.fp_t1,
        }))
        .map(|v| v.to_string())
        .collect();
    let _ = writeln!(s, "fp_chain = {}", chain.join(" -> "));
    let _ = writeln!(s, "fp_final = {}", r.fp_final);
    let _ = writeln!(s, "tolerance = {:e}", r.tolerance);
    Ok(s)
}

fn cmd_render(ps: &[PExponent], out: Option<&Path>) -> CliResult<String> {
    let curves = extremal_curves(ps)?;
    check_nested(&curves, NESTING_TOL)?;
    write_or_return(out, render_svg(&curves))
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: usize,
    worst: f64,
}

impl Tally {
    fn new() -> Self {
        Tally {
            worst: f64::NEG_INFINITY,
            ..Default::default()
        }
    }

    /// Records a margin that should be ≤ 0.
    fn record(&mut self, margin: f64) {
        self.checked += 1;
        self.worst = self.worst.max(margin);
        if margin > 0.0 {
            self.failures += 1;
        }
    }

    fn line(&self, name: &str) -> String {
        format!(
            "{} {name}: {} checks, {} failures, worst margin {:e}\n",
            if self.failures == 0 { "PASS" } else { "FAIL" },
            self.checked,
            self.failures,
            self.worst
        )
    }
}

fn cmd_verify(a: &VerifyArgs) -> CliResult<String> {
    if a.count == 0 {
        return Err(GeomError::InvalidArgument("count must be at least 1".into()).into());
    }
    let mut ps = a.p.clone();
    ps.sort();
    ps.dedup();
    let consts: Vec<f64> = ps
        .iter()
        .map(|&p| c2p_with_error(p, default_abs_tol(p)).map(|r| r.0))
        .collect::<Result<_, _>>()?;

    let polygons: Vec<Polygon> = match &a.input {
        Some(path) => vec![read_polygon(path)?],
        None => {
            let mut r = rng(a.seed);
            (0..a.count)
                .map(|i| random_polygon(&mut r, 3 + i % 10))
                .collect()
        }
    };

    let mut sharp = Tally::new();
    let mut mono = Tally::new();
    for k in &polygons {
        let mut prev_upper: Option<f64> = None;
        for (&p, &c) in ps.iter().zip(&consts) {
            // refine only until both comparisons are decided
            let bound = prev_upper.map_or(c + SHARPNESS_TOL, |u| u.min(c + SHARPNESS_TOL));
            let r = fp_decide(k, p, bound, a.rel_tol)?;
            sharp.record(r.fp_lower - (c + SHARPNESS_TOL));
            // F_p is nonincreasing in p
            if let Some(u) = prev_upper {
                mono.record(r.fp_lower - u - 1e-12);
            }
            prev_upper = Some(r.fp_upper);
        }
    }
    let mut cmono = Tally::new();
    for w in consts.windows(2) {
        cmono.record(w[1] - w[0] - 1e-9);
    }
    for &c in &consts {
        cmono.record((4.0 - c).max(c - 6.0));
    }

    let mut conv = Tally::new();
    if a.input.is_none() {
        let mut r = rng(a.seed ^ 0x5eed);
        for i in 0..a.count.min(200) {
            let s = random_lps(&mut r, 3 + i % 8);
            let values: Vec<(f64, f64)> = (0..64)
                .map(|j| -1.0 + 2.0 * j as f64 / 63.0)
                .map(|t| s.body_at(t).map(|b| (t, b.area())))
                .collect::<Result<_, _>>()?;
            let audit = convexity_audit(&values, LPS_AUDIT_TOL)?;
            conv.record(audit.worst_violation - LPS_AUDIT_TOL);
        }
    }

    let mut s = String::new();
    let plist: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
    let _ = writeln!(
        s,
        "seed = {}, bodies = {}, p = {}",
        a.seed,
        polygons.len(),
        plist.join(",")
    );
    s.push_str(&sharp.line("sharpness F_p <= c2p + 1e-7"));
    s.push_str(&mono.line("F_p nonincreasing in p"));
    s.push_str(&cmono.line("c2p nonincreasing, within [4, 6]"));
    if a.input.is_none() {
        s.push_str(&conv.line("LPS area convexity"));
    }
    let failed = [&sharp, &mono, &cmono, &conv]
        .iter()
        .any(|t| t.failures > 0);
    if failed {
        print!("{s}");
        return Err(CliError::Property("see summary above".into()));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinite_sweep_grid_ends_at_twenty_then_infinity() {
        let g = sweep_grid(PExponent::ONE, PExponent::Infinite, 20).unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!(g[0], PExponent::ONE);
        assert_eq!(g[1], PExponent::Finite(2.0));
        assert_eq!(g[19], PExponent::Finite(20.0));
        assert_eq!(g[20], PExponent::Infinite);
    }

    #[test]
    fn finite_sweep_grid() {
        let g = sweep_grid(PExponent::Finite(2.0), PExponent::Finite(3.0), 3).unwrap();
        assert_eq!(
            g,
            vec![
                PExponent::Finite(2.0),
                PExponent::Finite(2.5),
                PExponent::Finite(3.0)
            ]
        );
        assert!(sweep_grid(PExponent::Finite(3.0), PExponent::Finite(2.0), 3).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Geom(GeomError::OriginOutside).code(), 4);
        assert_eq!(
            CliError::Geom(GeomError::QuadratureFailure {
                estimate: 1.0,
                tolerance: 0.1
            })
            .code(),
            2
        );
        assert_eq!(CliError::Io(String::new()).code(), 1);
    }
}
