use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use axiswise::experiments::{
    parse_off, principal_measure, run_aliasing_protocol, run_experiment, CoefficientMode,
    DatasetRegistry, ExperimentConfig,
};
use axiswise::matchdist::line_diagrams;
use axiswise::mesh::{barycentric_subdivide_times, parse_voff, write_voff, DEFAULT_PRECISION};
use axiswise::persistence::discrete_rank_invariants;
use axiswise::{
    approx_matching_distance, lambda_set, load_voff, AdmissiblePair, DistanceOptions, FieldPrime,
    InterpolantRegistry, MeshWithFunction,
};

#[derive(Parser)]
#[command(name = "axiswise", version, about = "Rank invariants and matching distances of bi-filtered meshes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Barycentric subdivision with interpolated values.
    Subdivide {
        input: PathBuf,
        #[arg(long, default_value = "axiswise")]
        mode: String,
        #[arg(long, default_value_t = 1)]
        times: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Rescale every component to span [0, 1].
    Normalize {
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Rank of H_q(K_alpha) -> H_q(K_beta).
    Rank {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        beta: Vec<f64>,
        /// All degrees up to the mesh dimension when omitted.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value_t = FieldPrime::DEFAULT)]
        prime: u32,
    },
    /// Print the representative set as CSV.
    Lambda { input: PathBuf },
    /// Persistence diagrams along one admissible line.
    Diagram {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        pair: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0,1")]
        degrees: Vec<usize>,
        #[arg(long, default_value_t = FieldPrime::DEFAULT)]
        prime: u32,
    },
    /// Approximate matching distance between two meshes.
    Dist {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        opts: SweepArgs,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Interpolation error statistics on a random dataset.
    Experiment {
        dataset: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Levels, as a list `4,6,9` or a range `2..9`.
        #[arg(long = "Ns", default_value = "2..9")]
        levels: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        independent_coeffs: bool,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Distances before and after subdivision, per tolerance.
    Aliasing {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        opts: SweepArgs,
        #[arg(long, value_delimiter = ',', default_value = "1.125,0.5625,0.28125")]
        epsilons: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measuring function computed from the embedding of an OFF or VOFF mesh.
    Measure {
        input: PathBuf,
        #[arg(long, default_value = "principal")]
        measure: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    degrees: Vec<usize>,
    #[arg(long, default_value_t = FieldPrime::DEFAULT)]
    prime: u32,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    allow_unnormalized: bool,
}

impl SweepArgs {
    fn options(&self, epsilon: f64) -> DistanceOptions {
        DistanceOptions {
            degrees: self.degrees.clone(),
            prime: self.prime,
            threads: self.threads,
            allow_unnormalized: self.allow_unnormalized,
            ..DistanceOptions::new(epsilon)
        }
    }
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Subdivide {
            input,
            mode,
            times,
            out,
        } => {
            let registry = InterpolantRegistry::builtin();
            let interp = registry.get(&mode).ok_or_else(|| {
                let known: Vec<_> = registry.names().collect();
                anyhow!("unknown mode {mode:?} (known: {})", known.join(", "))
            })?;
            let mesh = load(&input)?;
            let sub = barycentric_subdivide_times(&mesh, interp, times)?;
            emit(out.as_deref(), &write_voff(&sub))
        }
        Command::Normalize { input, out } => {
            let mesh = load(&input)?.normalized()?;
            emit(out.as_deref(), &write_voff(&mesh))
        }
        Command::Rank {
            input,
            alpha,
            beta,
            degree,
            prime,
        } => {
            let mesh = load(&input)?;
            let field = FieldPrime::new(prime)?;
            let top = degree.unwrap_or(mesh.complex().dim());
            let ranks = discrete_rank_invariants(&mesh, &alpha, &beta, top, &field)?;
            let mut s = String::from("degree,rank\n");
            for (q, r) in ranks.iter().enumerate() {
                if degree.map_or(true, |d| d == q) {
                    s.push_str(&format!("{q},{r}\n"));
                }
            }
            emit(None, &s)
        }
        Command::Lambda { input } => {
            let mesh = load(&input)?;
            let k = mesh.k();
            let header: Vec<String> = (1..=k).map(|i| format!("lambda_{i}")).collect();
            let mut s = header.join(",") + "\n";
            for p in lambda_set(&mesh) {
                let row: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                s.push_str(&row.join(","));
                s.push('\n');
            }
            emit(None, &s)
        }
        Command::Diagram {
            input,
            pair,
            degrees,
            prime,
        } => {
            let &[a, b] = pair.as_slice() else {
                bail!("--pair takes two values a,b");
            };
            let mesh = load(&input)?;
            let field = FieldPrime::new(prime)?;
            let pair = AdmissiblePair::from_ab(a, b)?;
            let top = degrees.iter().copied().max().unwrap_or(0);
            let diagrams = line_diagrams(&mesh, &pair, top, &field)?;
            let mut s = String::from("degree,birth,death\n");
            for &q in &degrees {
                let d = &diagrams[q];
                for &(b, e) in &d.pairs {
                    s.push_str(&format!("{q},{b},{e}\n"));
                }
                for &b in &d.essential {
                    s.push_str(&format!("{q},{b},inf\n"));
                }
            }
            emit(None, &s)
        }
        Command::Dist {
            a,
            b,
            opts,
            epsilon,
            trace,
            output,
        } => {
            let (ma, mb) = (load(&a)?, load(&b)?);
            let options = DistanceOptions {
                trace: trace.is_some(),
                ..opts.options(epsilon)
            };
            let res = approx_matching_distance(&ma, &mb, &options)?;
            if let Some(path) = trace {
                let mut s = String::from("a,b,degree,d1,rescaled\n");
                for t in &res.trace {
                    s.push_str(&format!("{},{},{},{},{}\n", t.a, t.b, t.degree, t.d1, t.rescaled));
                }
                write_file(&path, &s)?;
            }
            let mut s = String::from("degree,dtilde,epsilon,argmax_a,argmax_b\n");
            for d in &res.per_degree {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    d.degree, d.value, res.epsilon, d.argmax.0, d.argmax.1
                ));
            }
            s.push_str(&format!(
                "all,{},{},{},{}\n",
                res.value, res.epsilon, res.argmax.0, res.argmax.1
            ));
            if !res.certified {
                eprintln!("warning: inputs are not normalized, the error bound does not apply");
            }
            emit(output.as_deref(), &s)
        }
        Command::Experiment {
            dataset,
            samples,
            levels,
            seed,
            out,
            independent_coeffs,
            threads,
        } => {
            let registry = DatasetRegistry::builtin();
            let dataset = registry.get(&dataset)?;
            let config = ExperimentConfig {
                samples,
                levels: parse_levels(&levels)?,
                seed,
                mode: if independent_coeffs {
                    CoefficientMode::Independent
                } else {
                    CoefficientMode::Literal
                },
                threads,
            };
            let report = run_experiment(dataset, &config)?;
            emit(out.as_deref(), &report.to_csv())
        }
        Command::Aliasing {
            a,
            b,
            opts,
            epsilons,
            out,
        } => {
            let (ma, mb) = (load(&a)?, load(&b)?);
            let first = *epsilons.first().context("no tolerance given")?;
            let table = run_aliasing_protocol(&ma, &mb, &epsilons, &opts.options(first))?;
            emit(out.as_deref(), &table.to_csv())
        }
        Command::Measure {
            input,
            measure,
            out,
        } => {
            if measure != "principal" {
                bail!("unknown measure {measure:?} (known: principal)");
            }
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let complex = if text.trim_start().starts_with("VOFF") {
                parse_voff(&text, DEFAULT_PRECISION)?.shared_complex().as_ref().clone()
            } else {
                parse_off(&text)?
            };
            let function = principal_measure(&complex)?;
            let mesh = MeshWithFunction::new(complex, function)?;
            emit(out.as_deref(), &write_voff(&mesh))
        }
    }
}

fn load(path: &Path) -> Result<MeshWithFunction> {
    load_voff(path).with_context(|| format!("loading {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// `4,6,9` or an inclusive range `2..9`.
fn parse_levels(spec: &str) -> Result<Vec<u32>> {
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: u32 = lo.trim().parse().context("range start")?;
        let hi: u32 = hi.trim().trim_start_matches('=').parse().context("range end")?;
        if lo > hi {
            bail!("empty level range {spec}");
        }
        return Ok((lo..=hi).collect());
    }
    spec.split(',')
        .map(|t| t.trim().parse::<u32>().with_context(|| format!("bad level {t:?}")))
        .collect()
}
