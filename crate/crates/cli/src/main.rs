use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use dsc_core::class_xd::Classifier;
use dsc_core::complex::DEFAULT_SIMPLEX_CAP;
use dsc_core::connection::{check_all, connection_matrix_capped, hydrogen_report, log_derivative_report, DEFAULT_CONNECTION_CAP};
use dsc_core::curvature::{curvature_report, gauss_bonnet_check, generalized_handshake_check, non_flat_vertices};
use dsc_core::experiment::{roots_experiment, search_exhaustive, search_sampling, DEFAULT_SEARCH_MAX_N};
use dsc_core::generate::{self, Kind};
use dsc_core::io::{complex_to_json, graph_to_json, parse_input_capped, Input};
use dsc_core::operator::{ds_invariant_functionals, eigen_functionals, operator_matrix, perron_vector};
use dsc_core::refine::barycentric_capped;
use dsc_core::report::analyze;
use dsc_core::wu::{bivariate_f_function, f_matrix, wu_characteristic, wu_gauss_bonnet_check};
use dsc_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(CoreError::CapExceeded { .. } | CoreError::BudgetExhausted { .. } | CoreError::NumericFailure { .. }) => 3,
            CliError::Core(CoreError::Inconsistent(_)) => 4,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Exact computations on simplicial complexes and graphs.
///
/// Input files are JSON: {"facets": [[0,1,2], ...]} for a complex or
/// {"vertices": [...], "edges": [[a,b], ...]} for a graph (read as its
/// Whitney complex). DSC_CAP_SIMPLICES overrides the simplex-count caps.
#[derive(Parser)]
#[command(name = "dsc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// f-vector, h-vector, symmetry, class and root report.
    Analyze {
        input: PathBuf,
        #[arg(long)]
        csv: bool,
    },
    /// Write a generated graph or complex.
    ///
    /// Kinds: cross_polytope D, cycle N, complete N, icosahedron, moebius,
    /// star N, wheel N, erdos_renyi N P, random_sphere D STEPS, sun CYCLE
    /// HAIRS, hair_sphere, projective_plane, random_complex N FACETS DIM.
    Generate {
        kind: String,
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Barycentric or edge refinement.
    Refine {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "barycentric")]
        mode: RefineMode,
        /// Edge to refine, as "a,b".
        #[arg(long)]
        edge: Option<String>,
        /// Number of random edge refinements.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Refinement operator on f-vectors of dimension at most DIM.
    Operator {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        matrix: bool,
        #[arg(long)]
        functionals: bool,
        #[arg(long)]
        invariants: bool,
        #[arg(long)]
        perron: bool,
        /// f-vector to push through the operator, comma separated.
        #[arg(long)]
        apply: Option<String>,
        #[arg(long, default_value_t = 1)]
        times: usize,
        #[arg(long)]
        json: bool,
    },
    /// Curvature polynomials and Levitt curvatures.
    Curvature {
        input: PathBuf,
        #[arg(long)]
        csv: bool,
    },
    /// Recursive class checks through unit spheres.
    Classify {
        input: PathBuf,
        #[arg(long)]
        dim: Option<i64>,
        #[arg(long, value_enum, default_value = "xd")]
        kind: ClassKind,
    },
    /// Connection matrix, Green function and their identities.
    Connection {
        input: PathBuf,
        /// Print the Green function grid instead of the report.
        #[arg(long)]
        green: bool,
        /// Print the connection matrix grid instead of the report.
        #[arg(long)]
        matrix: bool,
    },
    /// f-matrix and Wu characteristic.
    Wu {
        input: PathBuf,
        #[arg(long)]
        csv: bool,
    },
    /// Roots of f-functions along repeated Barycentric refinement.
    ExperimentRoots {
        /// Start from a random sphere of this dimension.
        #[arg(long)]
        dim: Option<usize>,
        /// Edge refinements applied to the starting cross-polytope.
        #[arg(long, default_value_t = 0)]
        steps: usize,
        /// Start from this f-vector instead, e.g. "8,12,6".
        #[arg(long)]
        f_vector: Option<String>,
        /// Start from a complex or graph file instead.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        refinements: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output prefix: writes PREFIX.csv and PREFIX.svg.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Frequency of the Dehn-Sommerville symmetry among graphs.
    ExperimentSearch {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Enumerate every graph on n <= 7 vertices.
        #[arg(long)]
        exhaustive: bool,
        /// CSV of hits; the JSON record goes to stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RefineMode {
    Barycentric,
    Edge,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassKind {
    Xd,
    Sphere,
    Manifold,
    Variety,
    Contractible,
}

fn simplex_cap() -> Result<Option<u128>> {
    match std::env::var("DSC_CAP_SIMPLICES") {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("DSC_CAP_SIMPLICES: not a number: {s:?}"))),
        Err(_) => Ok(None),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn load(path: &Path) -> Result<Input> {
    let cap = simplex_cap()?.unwrap_or(DEFAULT_SIMPLEX_CAP);
    parse_input_capped(&read(path)?, cap).map_err(|e| match e {
        CoreError::InvalidInput(m) => CliError::Core(CoreError::InvalidInput(format!("{}: {m}", path.display()))),
        other => other.into(),
    })
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.into(), source }),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| CliError::Usage(format!("{what}: bad entry {x:?}"))))
        .collect()
}

fn require_graph(input: &Input, what: &str) -> Result<dsc_core::graph::Graph> {
    input
        .whitney_graph()
        .ok_or_else(|| CliError::Core(CoreError::InvalidInput(format!("{what} needs a graph or a Whitney complex"))))
}

fn grid(rows: &[Vec<BigInt>]) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(BigInt::to_string).collect()).collect();
    let w = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|r| r.iter().map(|c| format!("{c:>w$}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze { input, csv } => {
            let report = analyze(&load(&input)?, &Classifier::default());
            emit(&if csv { report.to_csv() } else { pretty(&report) }, None)
        }
        Command::Generate { kind, params, seed, output } => {
            let g: Input = Kind::parse(&kind, &params)?.generate(seed)?.into();
            emit(&g.to_json(), output.as_deref())
        }
        Command::Refine { input, mode, edge, random, seed, output } => {
            let input = load(&input)?;
            let text = match mode {
                RefineMode::Barycentric => {
                    let cap = simplex_cap()?.unwrap_or(DEFAULT_SIMPLEX_CAP);
                    complex_to_json(&barycentric_capped(&input.complex(), cap)?)
                }
                RefineMode::Edge => {
                    let mut g = require_graph(&input, "edge refinement")?;
                    match (edge, random) {
                        (Some(e), None) => {
                            let ab: Vec<u32> = parse_list(&e, "--edge")?;
                            let [a, b] = ab[..] else {
                                return Err(CliError::Usage("--edge takes two vertices \"a,b\"".into()));
                            };
                            g = g.edge_refine(a, b)?.0;
                        }
                        (None, Some(k)) => g = generate::random_edge_refinements(&g, k, seed)?,
                        _ => return Err(CliError::Usage("edge mode needs exactly one of --edge a,b or --random k".into())),
                    }
                    graph_to_json(&g)
                }
            };
            emit(&text, output.as_deref())
        }
        Command::Operator { dim, matrix, functionals, invariants, perron, apply, times, json } => {
            let a = operator_matrix(dim)?;
            let mut out = serde_json::Map::new();
            let mut text = Vec::new();
            let none = !(matrix || functionals || invariants || perron || apply.is_some());
            if matrix || none {
                out.insert("matrix".into(), serde_json::to_value(&a).expect("serializable")["matrix"].clone());
                text.push(format!("A (d = {dim}):\n{}", grid(&a.matrix)));
            }
            for (on, name, list) in [
                (functionals, "functionals", functionals.then(|| eigen_functionals(dim)).transpose()?),
                (invariants, "invariants", invariants.then(|| ds_invariant_functionals(dim)).transpose()?),
            ] {
                if let (true, Some(list)) = (on, list) {
                    out.insert(name.into(), serde_json::to_value(&list).expect("serializable"));
                    let coeffs: Vec<Vec<BigInt>> = list.iter().map(|f| f.coefficients.clone()).collect();
                    let rows: Vec<String> = list
                        .iter()
                        .zip(grid(&coeffs).lines())
                        .map(|(f, line)| format!("{:>8}  {line}", format!("λ={}", f.eigenvalue)))
                        .collect();
                    text.push(format!("{name}:\n{}", rows.join("\n")));
                }
            }
            if perron {
                let v = perron_vector(dim)?;
                out.insert("perron".into(), v.iter().map(|x| x.to_string()).collect::<Vec<_>>().into());
                text.push(format!("perron:\n{}", grid(&[v])));
            }
            if let Some(f) = apply {
                let mut f: Vec<BigInt> = parse_list(&f, "--apply")?;
                let mut seq = vec![f.clone()];
                for _ in 0..times {
                    f = a.apply(&f)?;
                    seq.push(f.clone());
                }
                out.insert(
                    "apply".into(),
                    seq.iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>().into(),
                );
                text.push(format!("apply:\n{}", grid(&seq)));
            }
            emit(&if json { pretty(&out) } else { text.join("\n\n") }, None)
        }
        Command::Curvature { input, csv } => {
            let g = require_graph(&load(&input)?, "curvature")?;
            let r = curvature_report(&g);
            if csv {
                return emit(&r.to_csv(), None);
            }
            let mut v = r.to_json();
            let chi = g.whitney().euler_characteristic();
            v["euler_characteristic"] = chi.into();
            v["gauss_bonnet"] = gauss_bonnet_check(&g).into();
            v["levitt_sum_is_chi"] = (r.levitt_total() == dsc_core::rational::q(chi)).into();
            v["handshake"] = generalized_handshake_check(&g).into();
            v["non_flat_vertices"] = non_flat_vertices(&g).into();
            emit(&pretty(&v), None)
        }
        Command::Classify { input, dim, kind } => {
            let input = load(&input)?;
            let g = require_graph(&input, "classification")?;
            let d = dim.unwrap_or_else(|| input.complex().dimension());
            let c = Classifier::default();
            let v = match kind {
                ClassKind::Xd => serde_json::to_value(c.in_class_xd(&g, d)?).expect("serializable"),
                ClassKind::Sphere => serde_json::json!({ "verdict": c.is_sphere(&g, d)? }),
                ClassKind::Manifold => serde_json::json!({ "verdict": c.is_manifold(&g, d)? }),
                ClassKind::Variety => serde_json::json!({ "verdict": c.is_variety(&g, d)? }),
                ClassKind::Contractible => serde_json::json!({ "verdict": c.is_contractible(&g)? }),
            };
            emit(&pretty(&serde_json::json!({ "dimension": d, "result": v })), None)
        }
        Command::Connection { input, green, matrix } => {
            let c = load(&input)?.complex();
            let cap = simplex_cap()?.unwrap_or(DEFAULT_CONNECTION_CAP);
            let l = connection_matrix_capped(&c, cap)?;
            if matrix {
                return emit(&l.to_text(), None);
            }
            let g = l.green()?;
            if green {
                return emit(&g.to_text(), None);
            }
            let v = serde_json::json!({
                "checks": check_all(&c)?,
                "hydrogen": hydrogen_report(&c)?,
                "log_derivative": log_derivative_report(&c)?,
                "energy": g.energy().to_string(),
                "euler_characteristic": c.euler_characteristic(),
            });
            emit(&pretty(&v), None)
        }
        Command::Wu { input, csv } => {
            let input = load(&input)?;
            let c = input.complex();
            let m = f_matrix(&c)?;
            if csv {
                return emit(&m.to_csv(), None);
            }
            let mut v = serde_json::json!({
                "f_matrix": m.entries,
                "wu_characteristic": wu_characteristic(&c)?,
                "f_function": bivariate_f_function(&c)?,
            });
            if let Some(g) = input.whitney_graph() {
                v["gauss_bonnet"] = wu_gauss_bonnet_check(&g)?.into();
            }
            emit(&pretty(&v), None)
        }
        Command::ExperimentRoots { dim, steps, f_vector, input, refinements, seed, output } => {
            let mut params = BTreeMap::from([
                ("refinements".to_string(), refinements.to_string()),
                ("seed".to_string(), seed.to_string()),
            ]);
            let f: Vec<BigInt> = match (dim, f_vector, input) {
                (Some(d), None, None) => {
                    params.insert("dim".into(), d.to_string());
                    params.insert("steps".into(), steps.to_string());
                    generate::random_sphere(d, steps, seed)?.clique_f_vector().into_iter().map(BigInt::from).collect()
                }
                (None, Some(f), None) => {
                    params.insert("f_vector".into(), f.clone());
                    parse_list(&f, "--f-vector")?
                }
                (None, None, Some(p)) => {
                    params.insert("input".into(), p.display().to_string());
                    load(&p)?.complex().f_vector().iter().map(|&x| BigInt::from(x)).collect()
                }
                _ => return Err(CliError::Usage("give exactly one of --dim, --f-vector, --input".into())),
            };
            let e = roots_experiment(&f, refinements, params)?;
            if let Some(prefix) = output {
                emit(&e.to_csv(), Some(&prefix.with_extension("csv")))?;
                emit(&e.to_svg(), Some(&prefix.with_extension("svg")))?;
            }
            emit(&pretty(&e), None)
        }
        Command::ExperimentSearch { n, p, trials, seed, exhaustive, output } => {
            let r = if exhaustive { search_exhaustive(n)? } else { search_sampling(n, p, trials, seed, DEFAULT_SEARCH_MAX_N)? };
            if let Some(path) = output {
                emit(&r.to_csv(), Some(&path))?;
            }
            emit(&pretty(&r), None)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dsc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
