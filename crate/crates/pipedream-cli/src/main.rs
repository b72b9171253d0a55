//! `pipedream` — inspect permutations, enumerate and render RC-graphs,
//! tabulate pattern coefficients, and run the verification suites.
//!
//! Exit codes: 0 success, 1 failed check (or internal engine error),
//! 2 usage/parse error, 3 enumeration budget exceeded.  The environment
//! variable `PIPEDREAM_BUDGET` overrides the enumeration cap.

use clap::{Args, Parser, Subcommand, ValueEnum};
use pipedream::perm::{self, Permutation};
use pipedream::render::{self, Format, RenderSpec};
use pipedream::verify::{self, SuiteOptions};
use pipedream::{rcgraph, schubert, Error};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "pipedream", version, about = "RC-graphs of permutations: enumeration, \
    coefficients, rendering, and exhaustive verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a permutation: code, inversions, Rothe diagram, pattern counts.
    Info {
        /// One-line notation, e.g. "1432" or "10,3,1,2,4,5,6,7,8,9".
        w: String,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Stream every RC-graph of a permutation in discovery order.
    Enumerate {
        w: String,
        #[command(flatten)]
        render: RenderArgs,
    },
    /// Print the number of RC-graphs of a permutation.
    Nu {
        w: String,
        /// Recount via the Macdonald weight identity and fail on mismatch.
        #[arg(long)]
        check_oracle: bool,
    },
    /// Print the pattern-coefficient table up to size n.
    Coeffs {
        n: usize,
        /// Skip patterns whose coefficient is zero.
        #[arg(long)]
        nonzero_only: bool,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Print the per-size maximum coefficient and its achievers as CSV.
    TableMax { n: usize },
    /// Run a verification suite over S_n.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Symmetric-group size to sweep (fixture suites ignore it).
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Split the sweep into this many shards.
        #[arg(long, default_value_t = 1)]
        shards: usize,
        /// Which shard this invocation runs.
        #[arg(long, default_value_t = 0)]
        shard_id: usize,
        /// Directory for checkpoint files.
        #[arg(long)]
        checkpoint_dir: Option<PathBuf>,
        /// Continue from the stored checkpoint.
        #[arg(long)]
        resume: bool,
        /// Write the reports as JSON to this path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Render one RC-graph of a permutation.
    Render {
        w: String,
        /// "bottom", "top", or a 0-based index in discovery order.
        #[arg(default_value = "bottom")]
        which: String,
        #[command(flatten)]
        render: RenderArgs,
    },
}

#[derive(Args, Clone)]
struct RenderArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Ascii)]
    format: FormatArg,
    /// Draw the strand wiring (tikz/svg).
    #[arg(long)]
    show_strands: bool,
    /// Cell side length in SVG pixels / TikZ points.
    #[arg(long, default_value_t = 24.0)]
    cell_size: f64,
}

#[derive(ValueEnum, Clone, Copy)]
enum FormatArg {
    Ascii,
    Tikz,
    Svg,
    Json,
}

#[derive(ValueEnum, Clone, Copy)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy)]
enum Suite {
    All,
    Bound,
    Chain,
    Connectivity,
    Confluence,
    Closure,
    Catalan,
    Conjecture,
    Witnesses,
}

impl RenderArgs {
    fn spec(&self) -> RenderSpec {
        RenderSpec {
            format: match self.format {
                FormatArg::Ascii => Format::Ascii,
                FormatArg::Tikz => Format::Tikz,
                FormatArg::Svg => Format::Svg,
                FormatArg::Json => Format::Json,
            },
            show_strands: self.show_strands,
            cell_size: self.cell_size,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

/// Maps library errors onto the documented exit codes.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::BudgetExceeded { .. } => 3,
        Error::EmptyInput
        | Error::BadToken(_)
        | Error::NotABijection(..)
        | Error::TooLarge(_)
        | Error::NonCanonicalPattern(_)
        | Error::IndexOutOfRange { .. }
        | Error::BadJson(_)
        | Error::BadShard { .. } => 2,
        _ => 1,
    }
}

fn run(command: Command) -> pipedream::Result<ExitCode> {
    match command {
        Command::Info { w, json } => cmd_info(&w, json),
        Command::Enumerate { w, render } => cmd_enumerate(&w, &render),
        Command::Nu { w, check_oracle } => cmd_nu(&w, check_oracle),
        Command::Coeffs { n, nonzero_only, format } => cmd_coeffs(n, nonzero_only, format),
        Command::TableMax { n } => cmd_table_max(n),
        Command::Verify { suite, n, shards, shard_id, checkpoint_dir, resume, report } => {
            let opts = SuiteOptions { shards, shard_id, checkpoint_dir, resume };
            cmd_verify(suite, n, &opts, report.as_deref())
        }
        Command::Render { w, which, render } => cmd_render(&w, &which, &render),
    }
}

/// Grid side the user's raw notation suggests: the token count, so that
/// trailing fixed points (e.g. "123") still draw their full square.
fn requested_grid(text: &str) -> usize {
    if text.contains(',') {
        text.split(',').count()
    } else {
        text.chars().filter(|c| c.is_ascii_digit()).count()
    }
}

fn cmd_info(text: &str, json: bool) -> pipedream::Result<ExitCode> {
    let w = Permutation::parse(text)?;
    let p132 = perm::count_pattern(&Permutation::parse("132")?, &w)?;
    let p1432 = perm::count_pattern(&Permutation::parse("1432")?, &w)?;
    let rothe: Vec<(usize, usize)> = w.rothe_diagram().iter().collect();
    if json {
        let value = serde_json::json!({
            "w": w.window(),
            "code": w.lehmer_code(),
            "inversions": w.length(),
            "rothe_diagram": rothe,
            "layered": perm::is_layered(&w),
            "p_132": p132,
            "p_1432": p1432,
        });
        println!("{}", serde_json::to_string_pretty(&value).expect("static shape"));
    } else {
        println!("w = {w}");
        println!("code = {:?}", w.lehmer_code());
        println!("inversions = {}", w.length());
        println!("rothe diagram = {rothe:?}");
        println!("layered = {}", perm::is_layered(&w));
        println!("p_132 = {p132}");
        println!("p_1432 = {p1432}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(text: &str, args: &RenderArgs) -> pipedream::Result<ExitCode> {
    let w = Permutation::parse(text)?;
    let grid = requested_grid(text);
    let spec = args.spec();
    let graphs = rcgraph::enumerate_all(&w)?;
    for d in &graphs {
        print!("{}", render::render(d, &spec, grid));
        if matches!(spec.format, Format::Ascii) {
            println!();
        }
    }
    println!("count = {}", graphs.len());
    Ok(ExitCode::SUCCESS)
}

fn cmd_nu(text: &str, check_oracle: bool) -> pipedream::Result<ExitCode> {
    let w = Permutation::parse(text)?;
    let count = schubert::nu(&w)?;
    println!("{count}");
    if check_oracle {
        let oracle = schubert::nu_macdonald_oracle(&w)?;
        if oracle != count {
            eprintln!("enumeration found {count} graphs but the Macdonald oracle says {oracle}");
            return Ok(ExitCode::from(1));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_coeffs(n: usize, nonzero_only: bool, format: TableFormat) -> pipedream::Result<ExitCode> {
    let table = schubert::build_coefficients(n)?;
    // Canonical patterns in (size, window) order; the table stores only
    // nonzero entries, so zeros are filled back in unless suppressed.
    let mut rows: Vec<(Permutation, i64)> = Vec::new();
    for m in 3..=n {
        for window in perm::windows(m).filter(|window| window[m - 1] != m) {
            let u = Permutation::from_window(window).expect("window is a bijection");
            let c = table.get(&u);
            if c != 0 || !nonzero_only {
                rows.push((u, c));
            }
        }
    }
    match format {
        TableFormat::Csv => {
            println!("pattern,c");
            for (u, c) in rows {
                println!("{u},{c}");
            }
        }
        TableFormat::Json => {
            let mut map = serde_json::Map::new();
            for (u, c) in rows {
                map.insert(u.to_string(), serde_json::Value::from(c));
            }
            let value = serde_json::Value::Object(map);
            println!("{}", serde_json::to_string_pretty(&value).expect("static shape"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_table_max(n: usize) -> pipedream::Result<ExitCode> {
    let table = schubert::build_coefficients(n)?;
    print!("{}", table.to_csv());
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    suite: Suite,
    n: usize,
    opts: &SuiteOptions,
    report_path: Option<&std::path::Path>,
) -> pipedream::Result<ExitCode> {
    let reports = match suite {
        Suite::All => verify::run_all(n, opts)?,
        Suite::Bound => vec![verify::check_lower_bound_sharded(n, opts)?],
        Suite::Chain => vec![verify::check_chain_count_sharded(n, opts)?],
        Suite::Connectivity => vec![verify::check_connectivity_sharded(n, opts)?],
        Suite::Confluence => vec![verify::check_confluence_sharded(n, opts)?],
        Suite::Closure => vec![verify::check_low_order_closure()?],
        Suite::Catalan => vec![verify::check_catalan(n.max(2))?],
        Suite::Conjecture => vec![verify::check_nonnegative_sharded(n, opts)?],
        Suite::Witnesses => vec![verify::check_witnesses_sharded(n, opts)?],
    };
    let mut all_passed = true;
    for r in &reports {
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {} n={}: {} tested, {} failures ({} ms)",
            r.check,
            r.n,
            r.tested,
            r.failures.len(),
            r.wall_ms
        );
        for f in r.failures.iter().take(10) {
            println!("  {:?}: {}", f.window, f.detail);
        }
        all_passed &= r.passed();
    }
    if let Some(path) = report_path {
        let text = serde_json::to_string_pretty(&reports).expect("static shape");
        std::fs::write(path, text).map_err(|err| Error::CheckpointIo(err.to_string()))?;
    }
    Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_render(text: &str, which: &str, args: &RenderArgs) -> pipedream::Result<ExitCode> {
    let w = Permutation::parse(text)?;
    let grid = requested_grid(text);
    let d = match which {
        "bottom" => rcgraph::bottom(&w)?,
        "top" => rcgraph::top(&w)?,
        _ => {
            let index: usize =
                which.parse().map_err(|_| Error::BadToken(which.to_string()))?;
            let graphs = rcgraph::enumerate_all(&w)?;
            let count = graphs.len();
            graphs
                .into_iter()
                .nth(index)
                .ok_or(Error::IndexOutOfRange { index, count })?
        }
    };
    print!("{}", render::render(&d, &args.spec(), grid));
    Ok(ExitCode::SUCCESS)
}
