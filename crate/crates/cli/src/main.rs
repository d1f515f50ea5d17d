//! `embedcount` command-line front end.
//!
//! Tables go to standard output as CSV, single results as one line of JSON.
//! Exit status: 0 on success, 1 on invalid input, 2 on a verification mismatch.

mod parse;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use embedcount::counting::{
    auto_realize, count_in_env, multiplicity_bound, solvable, solvable_coarse,
};
use embedcount::extension::{canonicalize, iso_types};
use embedcount::oracle::desk::{desk_environments, desk_targets, run_desk, DeskConfig};
use embedcount::oracle::groups::verify_group_axioms;
use embedcount::oracle::report::{verify_counts, Status, VerificationReport};
use embedcount::oracle::solutions::enum_solutions;
use embedcount::{
    Count, Environment, EnvironmentSpec, ExtensionGroup, ExtensionSpec, ModuleElement, ModuleShape,
    PrimePower, Submodule,
};

use parse::{parse_shape, parse_vector};

#[derive(Parser)]
#[command(
    name = "embedcount",
    about = "Count solutions of embedding problems with elementary p-abelian kernel"
)]
struct Cli {
    /// Aligned columns instead of CSV
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Context {
    /// The prime p
    #[arg(long)]
    p: u32,
    /// Exponent n of the cyclic group Z/p^n
    #[arg(long)]
    n: u32,
}

#[derive(Args, Clone)]
struct Target {
    /// Environment JSON file
    #[arg(long)]
    env: PathBuf,
    /// Shape of the kernel, e.g. `1^2,3`
    #[arg(long)]
    module: String,
    /// Type of the target: lambda of a non-split extension, or p^n for split
    #[arg(long)]
    mu: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Desk,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// List the isomorphism types of extensions with a given kernel shape,
    /// or canonicalize one extension with --c
    Classify {
        #[command(flatten)]
        ctx: Context,
        /// Shape of the kernel, e.g. `1^2,3`
        #[arg(long)]
        shape: String,
        /// Canonicalize this cocycle coefficient vector instead of listing types
        #[arg(long)]
        c: Option<String>,
    },
    /// Build G(A, c) and report its order, canonical form and census
    Group {
        #[command(flatten)]
        ctx: Context,
        /// Shape of the kernel, e.g. `1^2,3`
        #[arg(long)]
        shape: String,
        /// Cocycle coefficient vector, one entry per block; empty for the split group
        #[arg(long, default_value = "")]
        c: String,
        /// Include the element-order census
        #[arg(long)]
        census: bool,
        /// Include the canonical form
        #[arg(long)]
        canonical: bool,
        /// Check the group axioms on the full multiplication table
        #[arg(long)]
        certify: bool,
    },
    /// Number of solutions over an environment
    Count {
        #[command(flatten)]
        target: Target,
        /// Confirm the count by enumeration
        #[arg(long)]
        certify: bool,
    },
    /// Solvability over an environment
    Solve {
        #[command(flatten)]
        target: Target,
    },
    /// List the solutions over a finite environment
    Enumerate {
        #[command(flatten)]
        target: Target,
        /// Stop after this many solutions
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Compare closed-form counts with enumeration
    Verify {
        /// Run a whole suite instead of a single case
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        /// Environment JSON file for a single case
        #[arg(long)]
        env: Option<PathBuf>,
        /// Shape of the kernel for a single case
        #[arg(long)]
        module: Option<String>,
        /// Type of the target, required with --env
        #[arg(long)]
        mu: Option<u32>,
        /// Override the per-context bound on dim J for the desk suite
        #[arg(long)]
        max_dim: Option<u32>,
        /// Seed of the random suite
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of cases in the random suite
        #[arg(long, default_value_t = 200)]
        samples: u32,
    },
    /// Automatic realization target of (S, lambda)
    Realize {
        #[command(flatten)]
        ctx: Context,
        /// Shape of the kernel S
        #[arg(long)]
        shape: String,
        /// Type lambda of the non-split extension
        #[arg(long)]
        lambda: u32,
    },
    /// Lower bound on the number of realizing extensions
    Bound {
        #[command(flatten)]
        ctx: Context,
        /// Shape of the kernel S
        #[arg(long)]
        shape: String,
        /// Type lambda of the non-split extension
        #[arg(long)]
        lambda: u32,
        /// Exponent k of the bound p^k, at most rk(S)
        #[arg(long)]
        k: u32,
    },
    /// Sweep targets over one environment: CSV `module,mu,solvable,count`
    Table {
        #[arg(long)]
        env: PathBuf,
        /// `maxdim:N` or a `;`-separated list of shapes
        #[arg(long)]
        sweep: String,
        /// Add a `certified` column checked by enumeration
        #[arg(long)]
        certify: bool,
    },
}

enum Failure {
    Invalid(String),
    Mismatch(String),
}

impl From<embedcount::Error> for Failure {
    fn from(e: embedcount::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure::Invalid(e)
    }
}

impl From<&str> for Failure {
    fn from(e: &str) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Out {
    human: bool,
    buf: Vec<u8>,
}

impl Out {
    fn line(&mut self, s: &str) {
        self.buf.extend_from_slice(s.as_bytes());
        self.buf.push(b'\n');
    }

    fn json(&mut self, v: serde_json::Value) {
        if self.human {
            self.line(&serde_json::to_string_pretty(&v).expect("json"));
        } else {
            self.line(&v.to_string());
        }
    }

    fn table(&mut self, header: &[&str], rows: &[Vec<String>]) {
        if self.human {
            let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for r in rows {
                for (w, c) in width.iter_mut().zip(r) {
                    *w = (*w).max(c.len());
                }
            }
            let fmt = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&width)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            self.line(&fmt(header.to_vec()));
            for r in rows {
                self.line(&fmt(r.iter().map(String::as_str).collect()));
            }
        } else {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header).expect("csv");
            for r in rows {
                w.write_record(r).expect("csv");
            }
            self.buf.extend(w.into_inner().expect("csv"));
        }
    }
}

fn context(ctx: &Context) -> Result<PrimePower, Failure> {
    Ok(PrimePower::new(ctx.p, ctx.n)?)
}

fn load_env(path: &PathBuf) -> Result<EnvironmentSpec, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Ok(EnvironmentSpec::from_json(&text)?)
}

fn count_json(c: &Count) -> serde_json::Value {
    json!(c.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out {
        human: cli.human,
        buf: Vec::new(),
    };
    let res = run(cli.command, &mut out);
    std::io::stdout().write_all(&out.buf).expect("stdout");
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch(m)) => {
            eprintln!("mismatch: {m}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command, out: &mut Out) -> Outcome {
    match cmd {
        Command::Classify { ctx, shape, c } => classify(&ctx, &shape, c.as_deref(), out),
        Command::Group {
            ctx,
            shape,
            c,
            census,
            canonical,
            certify,
        } => group(&ctx, &shape, &c, census, canonical, certify, out),
        Command::Count { target, certify } => count(&target, certify, out),
        Command::Solve { target } => {
            let spec = load_env(&target.env)?;
            let m = parse_shape(&target.module, &spec.pp)?;
            out.json(json!({
                "solvable": solvable(&spec, &m, target.mu)?,
                "solvable_coarse": solvable_coarse(&spec, &m, target.mu)?,
            }));
            Ok(())
        }
        Command::Enumerate { target, limit } => enumerate(&target, limit, out),
        Command::Verify {
            suite,
            env,
            module,
            mu,
            max_dim,
            seed,
            samples,
        } => verify(suite, env, module, mu, max_dim, seed, samples, out),
        Command::Realize { ctx, shape, lambda } => {
            let pp = context(&ctx)?;
            let s = parse_shape(&shape, &pp)?;
            let t = auto_realize(&s, lambda, &pp)?;
            out.json(json!({ "shape": t.shape.to_string(), "lambda": t.lambda }));
            Ok(())
        }
        Command::Bound {
            ctx,
            shape,
            lambda,
            k,
        } => {
            let pp = context(&ctx)?;
            let s = parse_shape(&shape, &pp)?;
            let b = multiplicity_bound(&s, lambda, k, &pp)?;
            out.json(json!({
                "bound": b.bound.to_string(),
                "excluded_form": b.excluded_form,
                "within_free_rank": b.within_free_rank,
            }));
            Ok(())
        }
        Command::Table {
            env,
            sweep,
            certify,
        } => table(&env, &sweep, certify, out),
    }
}

fn classify(ctx: &Context, shape: &str, c: Option<&str>, out: &mut Out) -> Outcome {
    let pp = context(ctx)?;
    let s = parse_shape(shape, &pp)?;
    if let Some(c) = c {
        let spec = ExtensionSpec::new(pp, s, parse_vector(c, pp.p())?)?;
        let t = canonicalize(&spec);
        out.json(
            json!({ "shape": t.shape.to_string(), "lambda": t.lambda, "split": t.is_split(&pp) }),
        );
        return Ok(());
    }
    s.validate(&pp)?;
    let rows: Vec<Vec<String>> = iso_types(&pp, &s)
        .into_iter()
        .map(|t| {
            let kind = if t.is_split(&pp) { "split" } else { "nonsplit" };
            vec![kind.to_string(), t.shape.to_string(), t.lambda.to_string()]
        })
        .collect();
    out.table(&["type", "shape", "lambda"], &rows);
    Ok(())
}

fn group(
    ctx: &Context,
    shape: &str,
    c: &str,
    census: bool,
    canonical: bool,
    certify: bool,
    out: &mut Out,
) -> Outcome {
    let pp = context(ctx)?;
    let s = parse_shape(shape, &pp)?;
    let mut coeffs = parse_vector(c, pp.p())?;
    if coeffs.is_empty() {
        coeffs = vec![0; s.rank() as usize];
    }
    let spec = ExtensionSpec::new(pp, s, coeffs)?;
    let g = ExtensionGroup::build(&spec)?;
    let mut v = json!({ "order": g.order() });
    if canonical {
        let t = canonicalize(&spec);
        v["canonical"] =
            json!({ "shape": t.shape.to_string(), "lambda": t.lambda, "split": t.is_split(&pp) });
    }
    if census {
        let c: BTreeMap<String, u64> = g
            .order_census()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        v["census"] = json!(c);
    }
    if certify {
        let r = verify_group_axioms(&g)?;
        v["axioms"] = json!(r.all());
        out.json(v);
        if !r.all() {
            return Err(Failure::Mismatch(format!("group axioms fail: {r:?}")));
        }
        return Ok(());
    }
    out.json(v);
    Ok(())
}

fn count(target: &Target, certify: bool, out: &mut Out) -> Outcome {
    let spec = load_env(&target.env)?;
    let m = parse_shape(&target.module, &spec.pp)?;
    let c = count_in_env(&spec, &m, target.mu)?;
    let mut v = json!({ "count": count_json(&c), "solvable": solvable(&spec, &m, target.mu)? });
    if certify {
        let env = Environment::build(&spec)?;
        let found = enum_solutions(&env, &env.j(), &m, target.mu)?.len() as u64;
        v["oracle"] = json!(found.to_string());
        let ok = c == Count::from(found);
        v["certified"] = json!(ok);
        out.json(v);
        if !ok {
            return Err(Failure::Mismatch(format!(
                "closed form {c} but {found} solutions enumerated"
            )));
        }
        return Ok(());
    }
    out.json(v);
    Ok(())
}

fn enumerate(target: &Target, limit: Option<usize>, out: &mut Out) -> Outcome {
    let spec = load_env(&target.env)?;
    let m = parse_shape(&target.module, &spec.pp)?;
    let env = Environment::build(&spec)?;
    let sols = enum_solutions(&env, &env.j(), &m, target.mu)?;
    let mut rows = Vec::new();
    for (i, u) in sols.iter().take(limit.unwrap_or(usize::MAX)).enumerate() {
        let (_, gens) = u.decompose()?;
        rows.push(vec![i.to_string(), render_generators(&gens)]);
    }
    out.table(&["solution", "generators"], &rows);
    Ok(())
}

/// Generators as coordinate strings separated by `|`.
fn render_generators(gens: &[ModuleElement]) -> String {
    gens.iter()
        .map(|g| {
            g.coords
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("|")
}

fn report_row(r: &VerificationReport) -> Vec<String> {
    let status = match r.status {
        Status::Match => "match",
        Status::Mismatch => "mismatch",
    };
    vec![
        r.case.clone(),
        r.closed_form.to_string(),
        r.enumerated.to_string(),
        status.to_string(),
    ]
}

#[allow(clippy::too_many_arguments)]
fn verify(
    suite: Option<Suite>,
    env: Option<PathBuf>,
    module: Option<String>,
    mu: Option<u32>,
    max_dim: Option<u32>,
    seed: u64,
    samples: u32,
    out: &mut Out,
) -> Outcome {
    let mut rows = Vec::new();
    let mut mismatches = 0u64;
    match (suite, env) {
        (Some(Suite::Desk), None) => {
            let mut cfg = DeskConfig::standard();
            if let Some(d) = max_dim {
                for c in cfg.contexts.iter_mut() {
                    c.2 = d;
                }
            }
            run_desk(&cfg, |_, _, _, r| {
                if r.status == Status::Mismatch {
                    mismatches += 1;
                }
                rows.push(report_row(r));
            })?;
        }
        (Some(Suite::Random), None) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let specs: Vec<EnvironmentSpec> = [(2u32, 2u32, 7u32), (3, 1, 6), (3, 2, 6)]
                .iter()
                .flat_map(|&(p, n, d)| {
                    desk_environments(PrimePower::new(p, n).expect("context"), d)
                })
                .collect();
            for _ in 0..samples {
                let spec = &specs[rng.gen_range(0..specs.len())];
                let env = Environment::build(spec)?;
                let a = random_submodule(&env, &mut rng)?;
                let targets = desk_targets(&spec.pp, a.dim() as u32);
                let (m, mu) = &targets[rng.gen_range(0..targets.len())];
                let r = verify_counts(&env, &a, m, *mu)?;
                if r.status == Status::Mismatch {
                    mismatches += 1;
                }
                rows.push(report_row(&r));
            }
        }
        (None, Some(path)) => {
            let spec = load_env(&path)?;
            let module = module.ok_or("--module is required with --env")?;
            let mu = mu.ok_or("--mu is required with --env")?;
            let m = parse_shape(&module, &spec.pp)?;
            let env = Environment::build(&spec)?;
            let r = verify_counts(&env, &env.j(), &m, mu)?;
            if r.status == Status::Mismatch {
                mismatches += 1;
            }
            rows.push(report_row(&r));
        }
        _ => {
            return Err(Failure::Invalid(
                "give exactly one of --suite or --env".into(),
            ))
        }
    }
    let cases = rows.len();
    out.table(&["case", "closed_form", "enumerated", "status"], &rows);
    out.line(&format!("cases,{cases},mismatches,{mismatches}"));
    if mismatches > 0 {
        return Err(Failure::Mismatch(format!(
            "{mismatches} of {cases} cases disagree"
        )));
    }
    Ok(())
}

fn random_submodule(env: &Environment, rng: &mut ChaCha8Rng) -> Result<Submodule, Failure> {
    let m = env.module();
    let p = m.field().p() as u16;
    let k = rng.gen_range(1..=3);
    let gens: Vec<ModuleElement> = (0..k)
        .map(|_| ModuleElement::new((0..m.dim()).map(|_| rng.gen_range(0..p)).collect()))
        .collect();
    Ok(Submodule::span(m.clone(), &gens)?)
}

fn sweep_targets(sweep: &str, pp: &PrimePower) -> Result<Vec<(ModuleShape, u32)>, Failure> {
    if let Some(d) = sweep.trim().strip_prefix("maxdim:") {
        let d: u32 = d
            .trim()
            .parse()
            .map_err(|_| format!("malformed sweep bound '{d}'"))?;
        return Ok(desk_targets(pp, d));
    }
    let mut out = Vec::new();
    for part in sweep.split(';').filter(|s| !s.trim().is_empty()) {
        let m = parse_shape(part, pp)?;
        let mut mus: Vec<u32> = m
            .lengths()
            .into_iter()
            .filter(|&l| l < pp.order())
            .collect();
        mus.dedup();
        mus.push(pp.order());
        out.extend(mus.into_iter().map(|mu| (m.clone(), mu)));
    }
    Ok(out)
}

fn table(path: &PathBuf, sweep: &str, certify: bool, out: &mut Out) -> Outcome {
    let spec = load_env(path)?;
    let targets = sweep_targets(sweep, &spec.pp)?;
    let env = if certify {
        Some(Environment::build(&spec)?)
    } else {
        None
    };
    let mut rows = Vec::new();
    let mut mismatches = 0;
    for (m, mu) in &targets {
        let c = count_in_env(&spec, m, *mu)?;
        let mut row = vec![
            m.to_string(),
            mu.to_string(),
            solvable(&spec, m, *mu)?.to_string(),
            c.to_string(),
        ];
        if let Some(env) = &env {
            let found = enum_solutions(env, &env.j(), m, *mu)?.len() as u64;
            let ok = c == Count::from(found);
            if !ok {
                mismatches += 1;
            }
            row.push(ok.to_string());
        }
        rows.push(row);
    }
    if certify {
        out.table(&["module", "mu", "solvable", "count", "certified"], &rows);
    } else {
        out.table(&["module", "mu", "solvable", "count"], &rows);
    }
    if mismatches > 0 {
        return Err(Failure::Mismatch(format!(
            "{mismatches} counts disagree with enumeration"
        )));
    }
    Ok(())
}
