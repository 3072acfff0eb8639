use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use hsimplex_core::bench::{run_bench, BenchConfig};
use hsimplex_core::verify::{run_suite, Suite, SuiteConfig};
use hsimplex_core::{
    area_factors, det_oracle, signed_area_direct, svg, volume_direct, volume_factored,
    CurveSimplexSpec, Error, ExactMatrix, HRequest, Nodes, Poly, Strategy, DEFAULT_NAIVE_CAP,
};

/// Environment variable overriding the naive enumeration cap.
const CAP_ENV: &str = "HSIMPLEX_NAIVE_CAP";

#[derive(Parser, Debug)]
#[command(name = "hsimplex", version)]
#[command(about = "Exact complete symmetric polynomials, alternants and curve-simplex volumes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate h_d at the given values.
    H {
        #[arg(long)]
        d: usize,
        /// Comma-separated rational literals, e.g. 1,-2,3/4
        #[arg(long, allow_hyphen_values = true)]
        vars: String,
        /// naive, recurrence or closed (closed_form)
        #[arg(long, default_value = "recurrence")]
        method: String,
    },
    /// Area of the triangle on the graph of a polynomial.
    Area {
        /// Coefficients a_0,a_1,...,a_N
        #[arg(long, allow_hyphen_values = true, required_unless_present = "spec")]
        poly: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "spec")]
        nodes: Option<String>,
        /// JSON file {"poly": [...], "nodes": [...]}, or - for stdin
        #[arg(long, conflicts_with_all = ["poly", "nodes"])]
        spec: Option<PathBuf>,
    },
    /// Determinant and volumes for points on the polynomial space curve.
    Volume {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "spec")]
        poly: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "spec")]
        nodes: Option<String>,
        #[arg(long, conflicts_with_all = ["poly", "nodes"])]
        spec: Option<PathBuf>,
        /// Print only the signed determinant.
        #[arg(long)]
        signed: bool,
        /// Take det from elimination instead of the factored form.
        #[arg(long)]
        direct: bool,
    },
    /// Determinant of a matrix read as JSON {"n": .., "entries": [..]} from stdin.
    Det,
    /// Run a seeded randomized identity suite.
    Verify {
        /// Suite name, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Inclusive node-count range, LO..HI
        #[arg(long)]
        n_range: Option<String>,
        /// Inclusive range of the suite's degree parameter, LO..HI
        #[arg(long)]
        d_range: Option<String>,
    },
    /// Time the h_d strategies and print CSV.
    Bench {
        #[arg(long, default_value = "2,3,4,6")]
        n_list: String,
        #[arg(long, default_value = "1,8,16,32,64")]
        d_list: String,
        #[arg(long, default_value = "naive,recurrence,closed_form")]
        methods: String,
        #[arg(long, default_value_t = 20)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write an SVG picture of the triangle on the curve.
    Svg {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        nodes: String,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    /// exit 1
    Verification,
    /// exit 2
    Usage(String),
    /// exit 3
    Domain(String),
    /// exit 4
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification => 1,
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 3,
            Failure::Io(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_domain() {
            Failure::Domain(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn naive_cap() -> Result<u128, Failure> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            usage(format!(
                "{CAP_ENV} must be a nonnegative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_NAIVE_CAP),
    }
}

fn parse_range(text: &str) -> Result<(usize, usize), Failure> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| usage(format!("range must look like LO..HI, got {text:?}")))?;
    let lo = lo
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad range start in {text:?}")))?;
    let hi = hi
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad range end in {text:?}")))?;
    Ok((lo, hi))
}

fn parse_usize_list(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| usage(format!("bad integer {t:?} in {text:?}")))
        })
        .collect()
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(e.to_string()))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
    }
}

fn load_spec(
    poly: Option<String>,
    nodes: Option<String>,
    spec: Option<PathBuf>,
) -> Result<(Poly, Nodes), Failure> {
    if let Some(path) = spec {
        let text = read_input(&path)?;
        let spec: CurveSimplexSpec = serde_json::from_str(&text).map_err(usage)?;
        return Ok((spec.poly, spec.nodes));
    }
    let poly: Poly = poly.unwrap_or_default().parse()?;
    let nodes: Nodes = nodes.unwrap_or_default().parse()?;
    Ok((poly, nodes))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::H { d, vars, method } => {
            let nodes: Nodes = vars.parse()?;
            let strategy: Strategy = method.parse().map_err(usage)?;
            let value = HRequest::new(d, nodes, strategy)
                .with_cap(naive_cap()?)
                .evaluate()?;
            println!("{value}");
        }
        Command::Area { poly, nodes, spec } => {
            let (poly, nodes) = load_spec(poly, nodes, spec)?;
            let factors = area_factors(&poly, &nodes)?;
            let signed = signed_area_direct(&poly, &nodes)?;
            let out = json!({
                "area": factors.area,
                "differences": factors.differences,
                "h_sum": factors.h_sum,
                "signed_area": signed,
            });
            println!("{out}");
        }
        Command::Volume {
            poly,
            nodes,
            spec,
            signed,
            direct,
        } => {
            let (poly, nodes) = load_spec(poly, nodes, spec)?;
            let spec = CurveSimplexSpec::new(poly, nodes)?;
            let result = if direct {
                volume_direct(&spec)
            } else {
                volume_factored(&spec)
            };
            if signed {
                println!("{}", result.det);
            } else {
                let out = json!({
                    "det": result.det,
                    "difference_product": result.factored.difference_product,
                    "h_sum": result.factored.h_sum,
                    "parallelepiped_volume": result.parallelepiped_volume,
                    "simplex_volume": result.simplex_volume,
                });
                println!("{out}");
            }
        }
        Command::Det => {
            let text = read_input(&PathBuf::from("-"))?;
            let m: ExactMatrix = serde_json::from_str(&text).map_err(usage)?;
            println!("{}", det_oracle(&m));
        }
        Command::Verify {
            suite,
            trials,
            seed,
            n_range,
            d_range,
        } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse().map_err(usage)?]
            };
            let n_range = n_range.as_deref().map(parse_range).transpose()?;
            let d_range = d_range.as_deref().map(parse_range).transpose()?;
            if suites.len() > 1 && (n_range.is_some() || d_range.is_some()) {
                return Err(usage("--n-range and --d-range need a single --suite"));
            }
            let mut failed = false;
            for suite in suites {
                let mut config = SuiteConfig::defaults(suite, seed);
                if let Some(t) = trials {
                    config.trials = t;
                }
                if let Some(r) = n_range {
                    config.n_range = r;
                }
                if let Some(r) = d_range {
                    config.d_range = r;
                }
                let report = run_suite(suite, &config).map_err(usage)?;
                failed |= !report.passed();
                println!("{}", report.to_json_line());
            }
            if failed {
                return Err(Failure::Verification);
            }
        }
        Command::Bench {
            n_list,
            d_list,
            methods,
            runs,
            seed,
        } => {
            let strategies = methods
                .split(',')
                .map(|m| m.trim().parse::<Strategy>().map_err(usage))
                .collect::<Result<Vec<_>, _>>()?;
            let config = BenchConfig {
                n_list: parse_usize_list(&n_list)?,
                d_list: parse_usize_list(&d_list)?,
                strategies,
                runs,
                naive_cap: naive_cap()?,
                seed,
            };
            let outcome = run_bench(&config).map_err(usage)?;
            for (strategy, n, d) in &outcome.skipped {
                eprintln!("skipping {strategy} at n={n} d={d}: over the naive enumeration cap");
            }
            print!("{}", outcome.to_csv());
        }
        Command::Svg { poly, nodes, out } => {
            let poly: Poly = poly.parse()?;
            let nodes: Nodes = nodes.parse()?;
            let text = svg::render_triangle(&poly, &nodes)?;
            std::fs::write(&out, text)
                .map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Verification => {}
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Domain(msg) => eprintln!("error: precondition violated: {msg}"),
                Failure::Io(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(failure.code())
        }
    }
}
