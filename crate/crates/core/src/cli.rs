//! Command-line interface. Every subcommand prints JSON unless asked for
//! DOT, CSV or a plain-text summary.
//!
//! Exit codes: 0 on success, 1 on usage or domain errors, 2 when a search
//! budget runs out.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::colorings::{kpode_equality_coloring, SchemeId};
use crate::dcs::{general_dcs, verify_dcs, OrderedValues};
use crate::error::{Error, Result};
use crate::oracle::{self, OracleBudget};
use crate::spectrum::{exact, spectrum_closed, SpectrumReport};
use crate::symmetry::{self, automorphism_count_with_cap, is_distinguishing, FixingSearch};
use crate::tree::{Coloring, Tree, TreeJson};

/// DOT fill colors for color ids `0..12`.
pub const DOT_PALETTE: [&str; 12] = [
    "white", "black", "green", "cyan", "red", "blue", "yellow", "magenta", "orange", "gray",
    "brown", "purple",
];

#[derive(Parser, Debug)]
#[command(
    name = "symspec",
    version,
    about = "Distinguishing colorings and paint cost spectra of trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a perfect k-ary tree or a k-pode.
    Tree {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// Color a perfect k-ary tree with one of the construction schemes.
    Color {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        scheme: Scheme,
        /// Also write the coloring (with its tree) to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        summary: bool,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// Check whether a coloring is distinguishing.
    Verify {
        /// Tree file; optional when the coloring file embeds its tree.
        #[arg(long)]
        tree: Option<PathBuf>,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Paint cost spectrum of T_k^n.
    Spectrum {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        /// Compute by exhaustive search instead of the closed forms.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        summary: bool,
    },
    /// Exhaustive searches on small trees.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
    /// Distinct permutations of a value tuple with distinct column sums.
    Dcs {
        /// Comma-separated distinct integers.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        values: Vec<BigInt>,
        #[arg(long)]
        rows: u64,
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Build a k-pode, optionally with the two-color equal-arm coloring.
    Kpode {
        #[arg(long, value_delimiter = ',', required = true)]
        arms: Vec<usize>,
        /// Paint cost d of the coloring; needs d + 1 arms of equal length.
        #[arg(long)]
        equality_coloring: Option<usize>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
}

#[derive(Subcommand, Debug)]
enum OracleQuery {
    /// Minimum paint cost with at most --colors colors.
    PaintCost {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long)]
        colors: u32,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Smallest color class over distinguishing colorings using exactly
    /// --colors colors.
    CostNumber {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long)]
        colors: u32,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Fixing number and a minimum fixing set.
    Fixing {
        #[command(flatten)]
        target: TargetArgs,
        /// Search over all vertices instead of degree-one vertices.
        #[arg(long)]
        all_vertices: bool,
        /// Largest candidate pool to search.
        #[arg(long, default_value_t = symmetry::DEFAULT_MAX_FIXING_CANDIDATES)]
        max_candidates: usize,
    },
}

#[derive(Args, Debug)]
struct ShapeArgs {
    #[arg(long, conflicts_with = "arms")]
    k: Option<usize>,
    #[arg(long, conflicts_with = "arms")]
    n: Option<usize>,
    /// Comma-separated arm lengths of a k-pode.
    #[arg(long, value_delimiter = ',')]
    arms: Option<Vec<usize>>,
}

#[derive(Args, Debug)]
struct TargetArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    /// Tree file, instead of --k/--n or --arms.
    #[arg(long, conflicts_with_all = ["k", "n", "arms"])]
    tree: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Cap on candidate colorings (default 10^8, or SYMSPEC_BUDGET).
    #[arg(long)]
    budget: Option<u64>,
    /// Most special vertices the paint cost search tries.
    #[arg(long)]
    slots: Option<usize>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Scheme {
    Dist,
    Middle,
    Frugal,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum TableFormat {
    Json,
    Csv,
}

/// Coloring file: the coloring plus, optionally, the tree it colors.
#[derive(Serialize, Deserialize)]
struct ColoringFile {
    palette_size: u32,
    colors: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tree: Option<TreeJson>,
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
            0
        }
        Err(CliError::Lib(e @ Error::BudgetExceeded { .. })) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(CliError::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(CliError::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn dispatch(command: Command) -> CliResult<String> {
    match command {
        Command::Tree { shape, format } => {
            let tree = build_tree(&shape)?;
            Ok(match format {
                GraphFormat::Json => {
                    pretty(&serde_json::to_value(tree.to_json()).expect("tree json"))
                }
                GraphFormat::Dot => to_dot(&tree, None),
            })
        }
        Command::Color {
            k,
            n,
            scheme,
            out,
            summary,
            format,
        } => {
            let id = match scheme {
                Scheme::Dist => SchemeId::KDist,
                Scheme::Middle => SchemeId::Middle,
                Scheme::Frugal => SchemeId::Frugal,
            };
            let (tree, coloring) = id.build(k, n)?;
            let file = ColoringFile {
                palette_size: coloring.palette_size(),
                colors: coloring.colors().to_vec(),
                tree: Some(tree.to_json()),
            };
            if let Some(path) = out {
                let text = serde_json::to_string(&file).expect("coloring json");
                std::fs::write(&path, text)
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            if summary {
                let mut s = String::new();
                let name = scheme.to_possible_value().expect("named scheme");
                let _ = writeln!(s, "scheme: {}", name.get_name());
                let _ = writeln!(s, "tree: T_{k}^{n} ({} vertices)", tree.vertex_count());
                let _ = writeln!(s, "palette: {}", coloring.palette_size());
                let _ = writeln!(s, "paint_cost: {}", coloring.paint_cost());
                let _ = write!(
                    s,
                    "distinguishing: {}",
                    is_distinguishing(&tree, &coloring)?
                );
                return Ok(s);
            }
            Ok(match format {
                GraphFormat::Json => pretty(&serde_json::to_value(&file).expect("coloring json")),
                GraphFormat::Dot => to_dot(&tree, Some(&coloring)),
            })
        }
        Command::Verify { tree, coloring } => {
            let file: ColoringFile = read_json(&coloring)?;
            let tree_json = match tree {
                Some(path) => read_json::<TreeJson>(&path)?,
                None => file
                    .tree
                    .clone()
                    .ok_or_else(|| Error::domain("the coloring file has no tree; pass --tree"))?,
            };
            let tree = Tree::from_json(&tree_json)?;
            let coloring = Coloring::new(file.palette_size, file.colors)?;
            let report = automorphism_count_with_cap(&tree, Some(&coloring), 0)?;
            Ok(pretty(&json!({
                "distinguishing": report.is_trivial(),
                "automorphisms": exact(&report.count),
                "vertices": tree.vertex_count(),
                "palette_size": coloring.palette_size(),
                "paint_cost": coloring.paint_cost(),
            })))
        }
        Command::Spectrum {
            k,
            n,
            oracle: use_oracle,
            jobs,
            summary,
        } => {
            let report: SpectrumReport<BigUint> = if use_oracle {
                let tree = Tree::perfect(k as usize, n as usize)?;
                let budget = OracleBudget {
                    jobs,
                    ..OracleBudget::from_env()?
                };
                oracle::spectrum_oracle(&tree, &budget)?.convert()
            } else {
                spectrum_closed(k, n)?
            };
            Ok(if summary {
                format!(
                    "spectrum: {}\nratio: {}/{}",
                    report.display_spectrum(),
                    report.ratio.numer(),
                    report.ratio.denom()
                )
            } else {
                pretty(&report.to_json())
            })
        }
        Command::Oracle { query } => run_oracle(query),
        Command::Dcs {
            values,
            rows,
            verify,
            format,
        } => {
            let ordered = OrderedValues::new(values)?;
            let matrix = general_dcs(&ordered, rows)?;
            let table = matrix.rows();
            let sums = matrix.column_sums();
            let verified = verify.then(|| verify_dcs(&table, ordered.original()));
            Ok(match format {
                TableFormat::Json => {
                    let mut v = json!({
                        "values": ordered.original().iter().map(exact).collect::<Vec<_>>(),
                        "rows": table
                            .iter()
                            .map(|r| r.iter().map(exact).collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                        "permutations": matrix
                            .row_permutations()
                            .iter()
                            .map(|p| p.iter().map(|i| i + 1).collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                        "column_sums": sums.iter().map(exact).collect::<Vec<_>>(),
                    });
                    if let Some(ok) = verified {
                        v["verified"] = json!(ok);
                    }
                    pretty(&v)
                }
                TableFormat::Csv => {
                    let join = |r: &[BigInt]| {
                        r.iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(",")
                    };
                    let mut s: Vec<String> = table.iter().map(|r| join(r)).collect();
                    s.push(format!("# column sums: {}", join(&sums)));
                    if let Some(ok) = verified {
                        s.push(format!("# verified: {ok}"));
                    }
                    s.join("\n")
                }
            })
        }
        Command::Kpode {
            arms,
            equality_coloring,
            format,
        } => {
            let Some(d) = equality_coloring else {
                let tree = Tree::kpode(&arms)?;
                return Ok(match format {
                    GraphFormat::Json => {
                        pretty(&serde_json::to_value(tree.to_json()).expect("tree json"))
                    }
                    GraphFormat::Dot => to_dot(&tree, None),
                });
            };
            let t = arms[0];
            if arms.len() != d + 1 || arms.iter().any(|&a| a != t) {
                return Err(Error::domain(format!(
                    "the equality coloring with d = {d} needs {} arms of equal length",
                    d + 1
                ))
                .into());
            }
            let (tree, coloring) = kpode_equality_coloring(d, t)?;
            Ok(match format {
                GraphFormat::Json => pretty(&json!({
                    "palette_size": coloring.palette_size(),
                    "colors": coloring.colors(),
                    "tree": tree.to_json(),
                    "paint_cost": coloring.paint_cost(),
                    "distinguishing": is_distinguishing(&tree, &coloring)?,
                })),
                GraphFormat::Dot => to_dot(&tree, Some(&coloring)),
            })
        }
    }
}

fn run_oracle(query: OracleQuery) -> CliResult<String> {
    match query {
        OracleQuery::PaintCost {
            target,
            colors,
            budget,
        } => {
            let tree = target_tree(&target)?;
            let budget = make_budget(&budget)?;
            let result = oracle::min_paint_cost(&tree, colors, &budget)?;
            Ok(pretty(&json!({
                "colors": colors,
                "paint_cost": result.cost,
                "witness": result.witness,
            })))
        }
        OracleQuery::CostNumber {
            target,
            colors,
            budget,
        } => {
            let tree = target_tree(&target)?;
            let budget = make_budget(&budget)?;
            let (value, witness) = oracle::cost_number(&tree, colors, &budget)?;
            Ok(pretty(&json!({
                "colors": colors,
                "cost_number": value,
                "witness": witness,
            })))
        }
        OracleQuery::Fixing {
            target,
            all_vertices,
            max_candidates,
        } => {
            let tree = target_tree(&target)?;
            let search = FixingSearch {
                pool: if all_vertices {
                    symmetry::CandidatePool::AllVertices
                } else {
                    symmetry::CandidatePool::Leaves
                },
                max_candidates,
            };
            let set = symmetry::minimum_fixing_set(&tree, &search)?;
            Ok(pretty(&json!({
                "fixing_number": set.len(),
                "fixing_set": set,
            })))
        }
    }
}

fn make_budget(args: &BudgetArgs) -> CliResult<OracleBudget> {
    let mut budget = OracleBudget::from_env()?;
    if let Some(b) = args.budget {
        budget.max_candidate_colorings = b;
    }
    if let Some(s) = args.slots {
        budget.max_special_slots = s;
    }
    if let Some(t) = args.time_limit {
        budget.time_limit = Some(
            Duration::try_from_secs_f64(t)
                .map_err(|_| Error::domain(format!("invalid time limit {t}")))?,
        );
    }
    budget.jobs = args.jobs;
    budget.validate()?;
    Ok(budget)
}

fn build_tree(shape: &ShapeArgs) -> Result<Tree> {
    match (shape.k, shape.n, &shape.arms) {
        (Some(k), Some(n), None) => Tree::perfect(k, n),
        (None, None, Some(arms)) => Tree::kpode(arms),
        _ => Err(Error::domain(
            "give either --k and --n, --arms, or a tree file",
        )),
    }
}

fn target_tree(target: &TargetArgs) -> CliResult<Tree> {
    match &target.tree {
        Some(path) => Ok(Tree::from_json(&read_json::<TreeJson>(path)?)?),
        None => Ok(build_tree(&target.shape)?),
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &PathBuf) -> CliResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

/// Undirected DOT graph. Vertices are filled from [`DOT_PALETTE`]; colors
/// past the palette are drawn light gray with their number as label.
pub fn to_dot(tree: &Tree, coloring: Option<&Coloring>) -> String {
    let mut s =
        String::from("graph T {\n  node [shape=circle, style=filled, label=\"\", width=0.25];\n");
    for v in 0..tree.vertex_count() {
        let c = coloring.map_or(0, |c| c.color(v)) as usize;
        match DOT_PALETTE.get(c) {
            Some(fill) => {
                let _ = writeln!(s, "  v{v} [fillcolor={fill}];");
            }
            None => {
                let _ = writeln!(s, "  v{v} [fillcolor=lightgray, label=\"{c}\"];");
            }
        }
    }
    for v in 1..tree.vertex_count() {
        if let Some(p) = tree.parent(v) {
            let _ = writeln!(s, "  v{p} -- v{v};");
        }
    }
    s.push('}');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("symspec").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn spectrum_json() {
        let (code, out, _) = call(&["spectrum", "--k", "3", "--n", "2"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["costs_rle"], json!([[8, 1], [6, 4]]));
        assert_eq!(v["ratio"], json!([4, 5]));
    }

    #[test]
    fn frugal_summary() {
        let (code, out, _) = call(&[
            "color",
            "--k",
            "3",
            "--n",
            "3",
            "--scheme",
            "frugal",
            "--summary",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("paint_cost: 18"), "{out}");
        assert!(out.contains("palette: 5"), "{out}");
        assert!(out.contains("distinguishing: true"), "{out}");
    }

    #[test]
    fn dcs_three_rows() {
        let (code, out, _) = call(&["dcs", "--values", "3,2,1", "--rows", "3", "--verify"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["column_sums"], json!([7, 6, 5]));
        assert_eq!(v["verified"], json!(true));
    }

    #[test]
    fn dcs_csv_and_negative_values() {
        let (code, out, _) = call(&[
            "dcs", "--values", "-1,5,2", "--rows", "2", "--format", "csv",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 3);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            call(&["color", "--k", "1", "--n", "2", "--scheme", "dist"]).0,
            1
        );
        assert_eq!(call(&["no-such-command"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
        assert_eq!(
            call(&[
                "oracle",
                "paint-cost",
                "--k",
                "2",
                "--n",
                "3",
                "--colors",
                "2",
                "--slots",
                "3"
            ])
            .0,
            2
        );
        assert_eq!(call(&["dcs", "--values", "1,1,2", "--rows", "1"]).0, 1);
    }

    #[test]
    fn oracle_commands() {
        let (code, out, _) = call(&[
            "oracle",
            "paint-cost",
            "--k",
            "2",
            "--n",
            "2",
            "--colors",
            "3",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["paint_cost"], json!(2));
        assert_eq!(v["witness"]["palette_size"], json!(3));

        let (_, out, _) = call(&[
            "oracle",
            "cost-number",
            "--k",
            "3",
            "--n",
            "1",
            "--colors",
            "3",
        ]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["cost_number"], json!(1));

        let (_, out, _) = call(&["oracle", "fixing", "--arms", "1,2,2"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["fixing_number"], json!(1));
    }

    #[test]
    fn kpode_equality_output() {
        let (code, out, _) = call(&["kpode", "--arms", "3,3,3", "--equality-coloring", "2"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["paint_cost"], json!(2));
        assert_eq!(v["distinguishing"], json!(true));
        assert_eq!(
            call(&["kpode", "--arms", "3,2,3", "--equality-coloring", "2"]).0,
            1
        );
    }

    #[test]
    fn dot_output() {
        let (code, out, _) = call(&[
            "color", "--k", "2", "--n", "1", "--scheme", "dist", "--format", "dot",
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("graph T {"));
        assert!(out.contains("v0 [fillcolor=white]"));
        assert!(out.contains("v1 [fillcolor=black]"));
        assert!(out.contains("v0 -- v2;"));
    }

    #[test]
    fn dot_numbers_colors_past_palette() {
        let t = Tree::kpode(&[7, 7]).unwrap();
        let c = Coloring::new(15, (0..15).collect()).unwrap();
        let dot = to_dot(&t, Some(&c));
        assert!(dot.contains("v14 [fillcolor=lightgray, label=\"14\"]"));
        assert!(dot.contains("v11 [fillcolor=purple]"));
    }
}
