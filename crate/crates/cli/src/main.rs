//! Command-line front end for election distances, census, correlation,
//! compass verification, intrinsic paths and election maps.

mod config;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use electodist::analysis::{
    borda_realizable, compass_distance_computed, compass_distance_formula, correlation_from_distances,
    count_equivalence_classes, emdpos_intrinsic_path, enumerate_anecs, l1pos_intrinsic_path,
    majority_realizable_bruteforce, pair_distances, recover_election, CensusReport, CorrelationReport,
};
use electodist::election::{parse_election, serialize_election, BordaVector, CompassKind, MajorityMatrix, PositionMatrix};
use electodist::map::{distance_matrix, embed, export_map, MapFormat};
use electodist::metrics::{distance_with, DistanceOptions, MetricKind};
use electodist::Election;
use serde::Serialize;

use config::{ExperimentConfig, Overrides};

#[derive(Parser)]
#[command(name = "electodist", version, about = "Distances between ordinal elections")]
struct Cli {
    /// Worker threads for parallel distance evaluation.
    #[arg(long, global = true, env = "ELECTODIST_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct ConfigArgs {
    /// Experiment config (JSON).
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated metric names; replaces the config's list.
    #[arg(long, value_delimiter = ',')]
    metrics: Option<Vec<MetricKind>>,
    #[arg(long)]
    output: Option<PathBuf>,
}

impl ConfigArgs {
    fn load(&self) -> Result<ExperimentConfig> {
        ExperimentConfig::load(
            &self.config,
            &Overrides {
                m: self.m,
                n: self.n,
                seed: self.seed,
                metrics: self.metrics.clone(),
                output: self.output.clone(),
            },
        )
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample the configured dataset into election files plus a manifest.
    Generate(ConfigArgs),
    /// Distance between two election files.
    Distance {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        metric: MetricKind,
        /// Print the value with its optimal matchings as JSON.
        #[arg(long)]
        witness: bool,
    },
    /// Equivalence-class counts over all elections of a given size.
    Census {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Correlations between a baseline metric and the others.
    Correlate {
        #[arg(long, conflicts_with = "census_m")]
        config: Option<PathBuf>,
        /// Use every election of this size (up to isomorphism) instead of a config.
        #[arg(long, requires = "census_n")]
        census_m: Option<usize>,
        #[arg(long, requires = "census_m")]
        census_n: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        metrics: Option<Vec<MetricKind>>,
        #[arg(long, default_value = "swap")]
        baseline: MetricKind,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Distance matrices, embeddings and SVG maps for each configured metric.
    Map(ConfigArgs),
    /// Compare computed compass distances with their closed forms.
    VerifyCompass {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        metrics: Option<Vec<MetricKind>>,
    },
    /// Unit-step path between two elections under a positionwise metric.
    Path {
        a: PathBuf,
        b: PathBuf,
        /// l1pos or emdpos.
        #[arg(long)]
        metric: MetricKind,
        /// Directory for one election file per step.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Search for an election with a given aggregate.
    #[command(subcommand)]
    Realizable(Realizable),
}

#[derive(Subcommand)]
enum Realizable {
    /// Borda score vector, e.g. --scores 3,5,1.
    Borda {
        #[arg(long, value_delimiter = ',', required = true)]
        scores: Vec<u64>,
        #[arg(long)]
        n: usize,
    },
    /// Majority matrix given as a JSON array of rows.
    Majority {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Position matrix given as a JSON array of rows (row = position).
    Position {
        #[arg(long)]
        matrix: PathBuf,
    },
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            bail!("--threads must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let out = run(cli.command)?;
    print!("{out}");
    Ok(())
}

fn read_election(path: &Path) -> Result<Election> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_election(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_rows(path: &Path) -> Result<Vec<Vec<u64>>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn realized(e: Option<Election>) -> String {
    match e {
        Some(e) => format!("realizable\n{}", serialize_election(&e)),
        None => "not realizable\n".into(),
    }
}

#[derive(Serialize)]
struct ManifestEntry {
    id: String,
    class: String,
    file: String,
}

#[derive(Serialize)]
struct Manifest {
    m: usize,
    n: usize,
    seed: u64,
    elections: Vec<ManifestEntry>,
}

/// Runs one command and returns its standard output.
fn run(command: Command) -> Result<String> {
    let mut out = String::new();
    match command {
        Command::Generate(args) => {
            let cfg = args.load()?;
            let items = cfg.build()?;
            fs::create_dir_all(&cfg.output).with_context(|| format!("creating {}", cfg.output.display()))?;
            let mut entries = Vec::new();
            for item in &items {
                let file = format!("{}.txt", item.id);
                fs::write(cfg.output.join(&file), serialize_election(&item.election))?;
                entries.push(ManifestEntry { id: item.id.clone(), class: item.class.clone(), file });
            }
            let manifest = Manifest { m: cfg.m, n: cfg.n, seed: cfg.seed, elections: entries };
            let path = cfg.output.join("manifest.json");
            fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")?;
            eprintln!("wrote {} elections to {}", items.len(), cfg.output.display());
            writeln!(out, "{}", path.display())?;
        }
        Command::Distance { a, b, metric, witness } => {
            let (ea, eb) = (read_election(&a)?, read_election(&b)?);
            let d = distance_with(&ea, &eb, metric, &DistanceOptions::default())?;
            if witness {
                writeln!(out, "{}", serde_json::to_string(&d)?)?;
            } else {
                writeln!(out, "{}", d.value)?;
            }
        }
        Command::Census { m, n } => {
            let r = count_equivalence_classes(m, n)?;
            writeln!(out, "{}", CensusReport::CSV_HEADER)?;
            writeln!(out, "{}", r.csv_row())?;
        }
        Command::Correlate { config, census_m, census_n, metrics, baseline, seed } => {
            let (data, metrics) = match (config, census_m, census_n) {
                (Some(path), None, None) => {
                    let cfg = ExperimentConfig::load(&path, &Overrides { seed, metrics, ..Default::default() })?;
                    let data: Vec<Election> = cfg.build()?.into_iter().map(|i| i.election).collect();
                    (data, cfg.metrics)
                }
                (None, Some(m), Some(n)) => (enumerate_anecs(m, n)?, metrics.unwrap_or_else(|| MetricKind::ALL.to_vec())),
                _ => bail!("give either --config or both --census-m and --census-n"),
            };
            eprintln!("{} elections, {} pairs", data.len(), data.len() * data.len().saturating_sub(1) / 2);
            let opts = DistanceOptions::default();
            let base = pair_distances(&data, baseline, &opts)?;
            writeln!(out, "{}", CorrelationReport::CSV_HEADER)?;
            for k in metrics.into_iter().filter(|&k| k != baseline) {
                eprintln!("computing {k}");
                let other = pair_distances(&data, k, &opts)?;
                writeln!(out, "{}", correlation_from_distances(baseline, &base, k, &other)?.csv_row())?;
            }
        }
        Command::Map(args) => {
            let cfg = args.load()?;
            let items = cfg.build()?;
            fs::create_dir_all(&cfg.output).with_context(|| format!("creating {}", cfg.output.display()))?;
            let labels: Vec<String> = items.iter().map(|i| i.id.clone()).collect();
            let classes: Vec<String> = items.iter().map(|i| i.class.clone()).collect();
            let data: Vec<Election> = items.into_iter().map(|i| i.election).collect();
            for &k in &cfg.metrics {
                eprintln!("computing {k} distances for {} elections", data.len());
                let dm = distance_matrix(labels.clone(), &data, k, &cfg.options)?;
                let stem = k.short_name();
                let dist_path = cfg.output.join(format!("distances-{stem}.csv"));
                fs::write(&dist_path, dm.to_csv())?;
                let e = embed(&dm, &cfg.layout);
                eprintln!("{k} layout stress {:.4}", e.stress);
                let csv = cfg.output.join(format!("map-{stem}.csv"));
                let svg = cfg.output.join(format!("map-{stem}.svg"));
                export_map(&e, &classes, MapFormat::Csv, &csv)?;
                export_map(&e, &classes, MapFormat::Svg, &svg)?;
                for p in [dist_path, csv, svg] {
                    writeln!(out, "{}", p.display())?;
                }
            }
        }
        Command::VerifyCompass { m, n, metrics } => {
            for c in CompassKind::ALL {
                c.check(m, n)?;
            }
            writeln!(out, "metric,pair,computed,formula,printed,status")?;
            let mut failed = 0;
            for k in metrics.unwrap_or_else(|| MetricKind::ALL.to_vec()) {
                for (i, &a) in CompassKind::ALL.iter().enumerate() {
                    for &b in &CompassKind::ALL[i + 1..] {
                        let f = compass_distance_formula(k, (a, b), m, n)?;
                        let v = compass_distance_computed(k, (a, b), m, n)?;
                        let ok = f.value.admits(v);
                        failed += usize::from(!ok);
                        let printed = f.printed.map(|p| p.to_string()).unwrap_or_default();
                        writeln!(
                            out,
                            "{k},{a}-{b},{v},{},{printed},{}",
                            f.value,
                            if ok { "PASS" } else { "FAIL" }
                        )?;
                    }
                }
            }
            if failed > 0 {
                print!("{out}");
                bail!("{failed} compass cells disagree with their formulas");
            }
        }
        Command::Path { a, b, metric, output } => {
            let (ea, eb) = (read_election(&a)?, read_election(&b)?);
            let path = match metric {
                MetricKind::L1Positionwise => l1pos_intrinsic_path(&ea, &eb)?,
                MetricKind::EmdPositionwise => emdpos_intrinsic_path(&ea, &eb)?,
                other => bail!("paths are built for l1pos and emdpos, not {other}"),
            };
            let elections = path.elections()?;
            writeln!(out, "step,distance,cumulative")?;
            writeln!(out, "0,0,0")?;
            let opts = DistanceOptions::default();
            let mut total = 0;
            for (i, w) in elections.windows(2).enumerate() {
                let s = distance_with(&w[0], &w[1], metric, &opts)?.value;
                total += s;
                writeln!(out, "{},{s},{total}", i + 1)?;
            }
            if let Some(dir) = output {
                fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                for (i, e) in elections.iter().enumerate() {
                    fs::write(dir.join(format!("step{i:04}.txt")), serialize_election(e))?;
                }
            }
        }
        Command::Realizable(r) => match r {
            Realizable::Borda { scores, n } => out.push_str(&realized(borda_realizable(&BordaVector(scores), n)?)),
            Realizable::Majority { matrix, n } => {
                let mm = MajorityMatrix::from_rows(read_rows(&matrix)?, n as u64)?;
                out.push_str(&realized(majority_realizable_bruteforce(&mm, n)?));
            }
            Realizable::Position { matrix } => {
                let p = PositionMatrix::from_rows(read_rows(&matrix)?)?;
                out.push_str(&realized(Some(recover_election(&p)?)));
            }
        },
    }
    Ok(out)
}
