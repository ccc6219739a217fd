use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dsdeform::config::{ConfigError, RunConfig};
use dsdeform::report::RunReport;
use dsdeform::{EXIT_CHECK_FAILURE, EXIT_CONFIG_ERROR, EXIT_PASS};
use dsdeform_core::car_fock::{FockOperator, OneParticleModel};
use dsdeform_core::deformation::{Cutoff, DeformationContext};
use dsdeform_core::linalg::{C64, ONE, ZERO};
use dsdeform_core::rng;
use dsdeform_core::spin_group::{
    abelian_commutativity_residual, boost_base, boost_cover, covering_hom, AbelianSubgroup, LorentzMatrix5,
};
use dsdeform_core::suites::{cutoff_name, lie, oracle_residual, ORACLE_EPSILONS};
use dsdeform_core::wedges::{inclusion_rigidity_probe, random_lorentz, RigidityVerdict, Wedge};

#[derive(Parser)]
#[command(name = "dsdeform", version, about = "Warped-convolution deformation workbench on de Sitter space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a report.
    Verify(VerifyArgs),
    /// Print covering-map and Lie-algebra computations.
    Group(GroupArgs),
    /// Probe wedge-inclusion rigidity on random wedge pairs.
    Wedges(WedgeArgs),
    /// Dump the warped matrix of one generator.
    Deform(DeformArgs),
    /// Compare the regularized oscillatory integral with the closed form.
    Oracle(OracleArgs),
    /// Render a JSON report as a table.
    Report(ReportArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct ModelArgs {
    /// JSON run configuration; omitted fields take their defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed, overriding the configuration.
    #[arg(long)]
    seed: Option<u64>,
}

impl ModelArgs {
    fn load(&self) -> Result<RunConfig, ConfigError> {
        let mut c = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(seed) = self.seed {
            c.seed = seed;
        }
        Ok(c)
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Suites to run, in order (repeatable or comma separated).
    #[arg(long = "suite", value_delimiter = ',')]
    suites: Vec<String>,
    /// Deformation parameters (comma separated).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    kappa: Vec<f64>,
    /// Directory for report.json / report.csv; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct GroupArgs {
    /// Boost parameter of the covering-map comparison.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    t: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    s: f64,
}

#[derive(Args)]
struct WedgeArgs {
    #[arg(long, default_value_t = 200)]
    pairs: usize,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = dsdeform::config::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct DeformArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// `b:<i>` selfdual basis field, `psi:<mode>`, `psidag:<mode>`,
    /// `e:<charge>` sector projector, `y`, `z`, `j` or `r`.
    #[arg(long)]
    generator: String,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    kappa: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CutoffArg {
    Gaussian,
    RaisedCosine,
    Both,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    kappa: f64,
    /// Regulator values (comma separated).
    #[arg(long, value_delimiter = ',')]
    eps: Vec<f64>,
    #[arg(long, value_enum, default_value = "both")]
    cutoff: CutoffArg,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct ReportArgs {
    /// A report.json written by `verify`.
    input: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Group(a) => group(a).map(|()| EXIT_PASS),
        Command::Wedges(a) => wedges(a),
        Command::Deform(a) => deform(a).map(|()| EXIT_PASS),
        Command::Oracle(a) => oracle(a).map(|()| EXIT_PASS),
        Command::Report(a) => report(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_CONFIG_ERROR)
        }
    }
}

fn verify(a: VerifyArgs) -> anyhow::Result<u8> {
    let mut config = a.model.load()?;
    if !a.suites.is_empty() {
        config.suites = a.suites;
    }
    if !a.kappa.is_empty() {
        config.deformation.kappa = a.kappa;
    }
    if a.out.is_some() {
        config.output = a.out;
    }
    let report = dsdeform::run(&config, |s, secs| {
        let failed = s.checks.iter().filter(|c| !c.pass).count();
        eprintln!(
            "{} {:<14} {} checks, {failed} failed [{secs:.2}s]",
            if s.pass { "PASS" } else { "FAIL" },
            s.name,
            s.checks.len()
        );
    })?;
    match &config.output {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            fs::write(dir.join("report.json"), report.to_json()? + "\n")?;
            if a.format == Format::Csv {
                report.write_csv(fs::File::create(dir.join("report.csv"))?)?;
            }
            eprintln!("wrote {}", dir.display());
        }
        None => match a.format {
            Format::Json => emit(&report.to_json()?)?,
            Format::Csv => quiet_pipe(report.write_csv(std::io::stdout().lock()).map_err(Into::into))?,
        },
    }
    Ok(if report.pass { EXIT_PASS } else { EXIT_CHECK_FAILURE })
}

/// Treats a closed stdout (e.g. piped into `head`) as success.
fn quiet_pipe(r: anyhow::Result<()>) -> anyhow::Result<()> {
    match r {
        Err(e) if is_broken_pipe(&e) => Ok(()),
        other => other,
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
            || c.downcast_ref::<csv::Error>().is_some_and(|ce| matches!(ce.kind(), csv::ErrorKind::Io(io) if io.kind() == std::io::ErrorKind::BrokenPipe))
    })
}

fn emit(text: &str) -> anyhow::Result<()> {
    quiet_pipe(writeln!(std::io::stdout().lock(), "{text}").map_err(Into::into))
}

fn mat5(m: &LorentzMatrix5) -> Value {
    json!(m.0)
}

fn group(a: GroupArgs) -> anyhow::Result<()> {
    let cover = boost_cover(a.t);
    let quats: Vec<Vec<[f64; 4]>> = (0..2)
        .map(|i| (0..2).map(|j| {
            let q = cover.matrix().entries[i][j];
            [q.w, q.x, q.y, q.z]
        }).collect())
        .collect();
    let pi = covering_hom(&cover);
    let base = boost_base(a.t);
    let flows: serde_json::Map<String, Value> = AbelianSubgroup::ALL
        .iter()
        .map(|sg| (format!("{sg:?}"), json!(abelian_commutativity_residual(*sg, a.t, a.s))))
        .collect();
    let lie_reports: Vec<Value> = lie(dsdeform::config::DEFAULT_SEED)
        .iter()
        .map(|r| json!({"name": r.name, "residual": r.max_residual, "pass": r.pass}))
        .collect();
    let out = json!({
        "t": a.t,
        "s": a.s,
        "boost_cover": quats,
        "covering_hom": mat5(&pi),
        "boost_base": mat5(&base),
        "covering_residual": pi.max_diff(&base),
        "abelian_commutativity_residuals": flows,
        "lie": lie_reports,
    });
    emit(&serde_json::to_string_pretty(&out)?)?;
    Ok(())
}

fn wedges(a: WedgeArgs) -> anyhow::Result<u8> {
    let mut r = rng::substream(a.seed, "wedge-pairs");
    let mut rows = Vec::new();
    let (mut witnesses, mut inconclusive) = (0usize, 0usize);
    for i in 0..a.pairs {
        let w1 = Wedge::origin().transformed(&random_lorentz(&mut r));
        let w2 = Wedge::origin().transformed(&random_lorentz(&mut r));
        let verdict = inclusion_rigidity_probe(&w1, &w2, a.samples, a.seed.wrapping_add(i as u64 + 1));
        let row = match verdict {
            RigidityVerdict::Equal => json!({"pair": i, "verdict": "equal"}),
            RigidityVerdict::Witness(x) => {
                witnesses += 1;
                json!({"pair": i, "verdict": "witness", "point": x.0})
            }
            RigidityVerdict::Inconclusive => {
                inconclusive += 1;
                json!({"pair": i, "verdict": "inconclusive"})
            }
        };
        rows.push(row);
    }
    let out = json!({
        "seed": a.seed,
        "samples": a.samples,
        "pairs": a.pairs,
        "witnesses": witnesses,
        "inconclusive": inconclusive,
        "probes": rows,
    });
    emit(&serde_json::to_string_pretty(&out)?)?;
    Ok(if inconclusive == 0 { EXIT_PASS } else { EXIT_CHECK_FAILURE })
}

fn parse_generator(model: &OneParticleModel, spec: &str) -> anyhow::Result<FockOperator> {
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let index = || -> anyhow::Result<usize> { arg.parse().with_context(|| format!("generator index in '{spec}'")) };
    let mode_unit = |i: usize, n: usize| -> anyhow::Result<Vec<C64>> {
        if i >= n {
            bail!("index {i} out of range 0..{n}");
        }
        let mut v = vec![ZERO; n];
        v[i] = ONE;
        Ok(v)
    };
    Ok(match kind.to_ascii_lowercase().as_str() {
        "b" => model.field_b(&mode_unit(index()?, model.selfdual_dim())?)?,
        "psi" => model.spinor(&mode_unit(index()?, model.modes())?)?,
        "psidag" => model.cospinor(&mode_unit(index()?, model.modes())?)?,
        "e" => model.charge_projector(arg.parse().with_context(|| format!("charge in '{spec}'"))?),
        "y" => model.grading_y(),
        "z" => model.twist_z(),
        "j" => model.reflection_j()?,
        "r" => model.rotation_r()?,
        _ => return Err(anyhow!("unknown generator '{spec}'")),
    })
}

fn complex_rows(f: &FockOperator) -> Vec<Vec<[f64; 2]>> {
    let m = f.matrix();
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
}

fn deform(a: DeformArgs) -> anyhow::Result<()> {
    let config = a.model.load()?;
    let model = config.validate()?;
    if !a.kappa.is_finite() {
        return Err(ConfigError::NonFiniteKappa(a.kappa).into());
    }
    let f = parse_generator(&model, &a.generator)?;
    let warped = DeformationContext::new(&model, a.kappa).warp(&f);
    let out = json!({
        "generator": a.generator,
        "kappa": a.kappa,
        "dim": warped.dim(),
        "charge_shifts": f.shifts(),
        "matrix": complex_rows(&warped),
    });
    emit(&serde_json::to_string(&out)?)?;
    Ok(())
}

fn oracle(a: OracleArgs) -> anyhow::Result<()> {
    let config = a.model.load()?;
    let model = config.validate()?;
    if !a.kappa.is_finite() {
        return Err(ConfigError::NonFiniteKappa(a.kappa).into());
    }
    let eps = if a.eps.is_empty() { ORACLE_EPSILONS.to_vec() } else { a.eps };
    let cutoffs: &[Cutoff] = match a.cutoff {
        CutoffArg::Gaussian => &[Cutoff::Gaussian],
        CutoffArg::RaisedCosine => &[Cutoff::RaisedCosine],
        CutoffArg::Both => &[Cutoff::Gaussian, Cutoff::RaisedCosine],
    };
    let mut rows = Vec::new();
    for &c in cutoffs {
        for &e in &eps {
            rows.push((cutoff_name(c), e, oracle_residual(&model, a.kappa, e, c)?));
        }
    }
    match a.format {
        Format::Json => {
            let v: Vec<Value> =
                rows.iter().map(|(c, e, r)| json!({"cutoff": c, "eps": e, "kappa": a.kappa, "residual": r})).collect();
            emit(&serde_json::to_string_pretty(&v)?)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout().lock());
            let written: csv::Result<()> = (|| {
                w.write_record(["cutoff", "eps", "kappa", "residual"])?;
                for (c, e, r) in rows {
                    w.write_record([c.to_string(), e.to_string(), a.kappa.to_string(), format!("{r:e}")])?;
                }
                Ok(w.flush()?)
            })();
            quiet_pipe(written.map_err(Into::into))?;
        }
    }
    Ok(())
}

fn read_report(path: &Path) -> anyhow::Result<RunReport> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn report(a: ReportArgs) -> anyhow::Result<u8> {
    let r = read_report(&a.input)?;
    emit(r.to_table().trim_end())?;
    Ok(if r.pass { EXIT_PASS } else { EXIT_CHECK_FAILURE })
}
