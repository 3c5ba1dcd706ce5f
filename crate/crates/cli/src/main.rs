//! `spectra`: class counts, tables, grid algebra and identity checks.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 leaf guard exceeded,
//! 4 brute-force budget exceeded, 5 internal cross-check mismatch.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use spectra_core::quasigroup::{run_oracle, Element, BRUTE_FORCE_BUDGET};
use spectra_core::relations::{classes_with_limit, count_classes_with, leaf_key};
use spectra_core::tables::{run_request, TableFormat, TableRequest};
use spectra_core::{
    coatoms, consequence, CountOptions, Error, Grid, IdentitySpec, LinearQuasigroup, RelationSpec,
    SatisfactionMethod, TextStyle,
};

#[derive(Parser)]
#[command(
    name = "spectra",
    version,
    about = "Associative spectra of linear quasigroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the classes of all n-leaf trees under a relation.
    Count {
        #[command(flatten)]
        relation: RelationArgs,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        work: WorkArgs,
    },
    /// List the classes of all n-leaf trees under a relation.
    Classes {
        #[command(flatten)]
        relation: RelationArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Reproduce one of the four count tables.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        table: u8,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        work: WorkArgs,
    },
    /// Subgroups of Z x Z.
    Grid {
        #[command(subcommand)]
        op: GridOp,
        /// Emit JSON instead of text.
        #[arg(long, global = true)]
        json: bool,
    },
    /// Bracketing identities in linear quasigroups.
    Identity {
        #[command(subcommand)]
        op: IdentityOp,
    },
    /// Cross-check brute force, closed form and grid containment.
    Oracle {
        /// Bracketing size.
        #[arg(long)]
        n: usize,
        /// Largest modulus; every m in 2..=M with all unit pairs is tried.
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = BRUTE_FORCE_BUDGET)]
        budget: u128,
    },
}

#[derive(Args)]
struct WorkArgs {
    /// Largest leaf count to enumerate.
    #[arg(long, default_value_t = 14)]
    max_n: usize,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationKind {
    #[value(name = "D")]
    D,
    #[value(name = "L")]
    L,
    #[value(name = "R")]
    R,
    #[value(name = "LR")]
    Lr,
    #[value(name = "abm", alias = "ABM")]
    Abm,
    #[value(name = "grid", alias = "GRID")]
    Grid,
}

#[derive(Args)]
struct RelationArgs {
    #[arg(long, value_enum)]
    relation: RelationKind,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    l: Option<u64>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    m: Option<i64>,
    /// Grid generators "r1,s1;r2,s2;...".
    #[arg(long, allow_hyphen_values = true)]
    gens: Option<String>,
}

#[derive(Subcommand)]
enum GridOp {
    /// Canonical form of the span of the generators.
    Canonical {
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
    },
    /// Membership of a point "r,s".
    Contains {
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Intersection of two grids.
    Meet {
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
        #[arg(long, allow_hyphen_values = true)]
        other: String,
    },
    /// Sum of two grids.
    Join {
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
        #[arg(long, allow_hyphen_values = true)]
        other: String,
    },
    /// Invariant factors of the quotient of Z x Z by a rank-2 grid.
    Quotient {
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
    },
    /// The grids of prime index p.
    Coatoms {
        #[arg(long)]
        p: u64,
    },
    /// Two trees whose depth differences span the grid.
    Treealise {
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
    },
}

#[derive(Subcommand)]
enum IdentityOp {
    /// Does the quasigroup satisfy lhs ≈ rhs?
    Check {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        /// Components "m:a,b;m:a,b;...".
        #[arg(long)]
        quasigroup: String,
        #[arg(long, default_value_t = BRUTE_FORCE_BUDGET)]
        budget: u128,
    },
    /// Does every linear quasigroup satisfying the first identity satisfy the second?
    Consequence {
        #[arg(long)]
        from_lhs: String,
        #[arg(long)]
        from_rhs: String,
        #[arg(long)]
        to_lhs: String,
        #[arg(long)]
        to_rhs: String,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::GuardExceeded { .. } => 3,
            Error::BudgetExceeded { .. } => 4,
            Error::InternalMismatch(_) => 5,
            _ => 2,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        msg: msg.into(),
    }
}

type CliResult = Result<(), Failure>;

impl RelationArgs {
    fn spec(&self) -> Result<RelationSpec, Failure> {
        let need = |v: Option<u64>, flag: &str| {
            v.ok_or_else(|| usage(format!("--relation needs --{flag}")))
        };
        let need_i = |v: Option<i64>, flag: &str| {
            v.ok_or_else(|| usage(format!("--relation abm needs --{flag}")))
        };
        Ok(match self.relation {
            RelationKind::D => RelationSpec::D(need(self.k, "k")?),
            RelationKind::L => RelationSpec::L(need(self.k, "k")?),
            RelationKind::R => RelationSpec::R(need(self.k, "k")?),
            RelationKind::Lr => RelationSpec::LR(need(self.k, "k")?, need(self.l, "l")?),
            RelationKind::Abm => RelationSpec::Abm(
                need_i(self.a, "a")?,
                need_i(self.b, "b")?,
                need_i(self.m, "m")?,
            ),
            RelationKind::Grid => {
                let gens = self
                    .gens
                    .as_deref()
                    .ok_or_else(|| usage("--relation grid needs --gens"))?;
                RelationSpec::Grid(gens.parse()?)
            }
        })
    }
}

fn parse_point(text: &str) -> Result<(i64, i64), Failure> {
    let bad = || usage(format!("bad point {text:?}, want r,s"));
    let (r, s) = text.split_once(',').ok_or_else(bad)?;
    Ok((
        r.trim().parse().map_err(|_| bad())?,
        s.trim().parse().map_err(|_| bad())?,
    ))
}

fn grid_json(g: &Grid) -> serde_json::Value {
    json!({ "grid": g.to_string(), "dimension": g.dimension(), "index": g.index().to_string() })
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Count { relation, n, work } => {
            let spec = relation.spec()?;
            let opts = CountOptions {
                max_leaves: work.max_n,
                threads: work.threads,
            };
            println!("{}", count_classes_with(n, &spec, &opts)?);
        }
        Command::Classes { relation, n, max_n } => {
            let spec = relation.spec()?;
            for class in classes_with_limit(n, &spec, max_n)? {
                let key = leaf_key(&class[0], &spec);
                let members: Vec<String> = class.iter().map(|t| t.to_string()).collect();
                println!("{} :: {:?}", members.join(" "), key.0);
            }
        }
        Command::Table {
            table,
            format,
            work,
        } => {
            let format = match format {
                Format::Csv => TableFormat::Csv,
                Format::Json => TableFormat::Json,
            };
            let opts = CountOptions {
                max_leaves: work.max_n,
                threads: work.threads,
            };
            let req = TableRequest {
                table,
                max_n: work.max_n,
                format,
            };
            print!("{}", run_request(&req, &opts)?);
        }
        Command::Grid { op, json } => grid(op, json)?,
        Command::Identity { op } => identity(op)?,
        Command::Oracle { n, m, budget } => {
            let report = run_oracle(n, m, budget)?;
            if let Some(bad) = report.mismatches.first() {
                println!(
                    "MISMATCH: {} on {}: brute force {}, closed form {}, grid {}",
                    bad.identity, bad.quasigroup, bad.brute_force, bad.closed_form, bad.grid
                );
                if let Some(w) = &bad.counterexample {
                    println!("counterexample: {}", format_assignment(w));
                }
                return Err(Failure {
                    code: 5,
                    msg: format!("{} mismatches", report.mismatches.len()),
                });
            }
            println!(
                "OK: {} unit pairs × {} bracketing pairs, all agree",
                report.unit_pairs, report.bracketing_pairs
            );
        }
    }
    Ok(())
}

fn grid(op: GridOp, as_json: bool) -> CliResult {
    // each operation yields a text rendering and a JSON rendering
    let (text, value) = match op {
        GridOp::Canonical { gens } => {
            let g: Grid = gens.parse()?;
            (g.to_string(), grid_json(&g))
        }
        GridOp::Contains { gens, point } => {
            let g: Grid = gens.parse()?;
            let p = parse_point(&point)?;
            let inside = g.contains(p);
            (
                inside.to_string(),
                json!({ "grid": g.to_string(), "point": [p.0, p.1], "contains": inside }),
            )
        }
        GridOp::Meet { gens, other } => {
            let r = gens.parse::<Grid>()?.meet(&other.parse()?);
            (r.to_string(), grid_json(&r))
        }
        GridOp::Join { gens, other } => {
            let r = gens.parse::<Grid>()?.join(&other.parse()?);
            (r.to_string(), grid_json(&r))
        }
        GridOp::Quotient { gens } => {
            let (d1, d2) = gens.parse::<Grid>()?.quotient_invariants()?;
            (format!("Z_{d1} x Z_{d2}"), json!({ "d1": d1, "d2": d2 }))
        }
        GridOp::Coatoms { p } => {
            let list = coatoms(p)?;
            let text: Vec<String> = list.iter().map(|g| g.to_string()).collect();
            (
                text.join("\n"),
                json!(list.iter().map(grid_json).collect::<Vec<_>>()),
            )
        }
        GridOp::Treealise { gens } => {
            let g: Grid = gens.parse()?;
            let t = g.treealise()?;
            if !t.verified {
                return Err(Failure {
                    code: 5,
                    msg: format!("treealisation of {g} failed to round-trip"),
                });
            }
            let tree = |x: &spectra_core::BinaryTree| {
                json!({
                    "leaves": x.leaf_count(),
                    "variables": x.format(TextStyle::Variables),
                    "structure_bits": x.format(TextStyle::StructureBits),
                })
            };
            let text = format!(
                "grid: {g}\np={} q={} r={} s={} leaves={}\nT : {}\n    {}\nT': {}\n    {}\nround-trip: OK",
                t.p,
                t.q,
                t.r,
                t.s,
                t.left.leaf_count(),
                t.left.format(TextStyle::Variables),
                t.left.format(TextStyle::StructureBits),
                t.right.format(TextStyle::Variables),
                t.right.format(TextStyle::StructureBits),
            );
            let value = json!({
                "grid": g.to_string(),
                "p": t.p, "q": t.q, "r": t.r, "s": t.s,
                "left": tree(&t.left),
                "right": tree(&t.right),
                "round_trip": t.verified,
            });
            (text, value)
        }
    };
    if as_json {
        println!("{value}");
    } else {
        println!("{text}");
    }
    Ok(())
}

fn format_assignment(xs: &[Element]) -> String {
    let parts: Vec<String> = xs
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let v: Vec<String> = x.iter().map(|c| c.to_string()).collect();
            format!(
                "x{}={}",
                i + 1,
                if v.len() == 1 {
                    v[0].clone()
                } else {
                    format!("({})", v.join(","))
                }
            )
        })
        .collect();
    parts.join(" ")
}

fn identity(op: IdentityOp) -> CliResult {
    match op {
        IdentityOp::Check {
            lhs,
            rhs,
            quasigroup,
            budget,
        } => {
            let id = IdentitySpec::parse(&lhs, &rhs)?;
            let q: LinearQuasigroup = quasigroup.parse()?;
            let verdict = q.satisfies_cross_checked(&id, budget)?;
            println!("{verdict}");
            println!("identity: {id}");
            println!("fine spectrum grid: {}", q.fine_spectrum_grid());
            println!("difference span: {}", id.span());
            match q.brute_force_witness(&id, budget) {
                Ok(Some(w)) => println!("counterexample: {}", format_assignment(&w)),
                Ok(None) => println!("brute force: holds on all assignments"),
                Err(Error::BudgetExceeded { needed, .. }) => {
                    println!("brute force: skipped ({needed} assignments exceed the budget)")
                }
                Err(e) => return Err(e.into()),
            }
            debug_assert_eq!(verdict, q.satisfies(&id, SatisfactionMethod::ClosedForm)?);
        }
        IdentityOp::Consequence {
            from_lhs,
            from_rhs,
            to_lhs,
            to_rhs,
        } => {
            let from = IdentitySpec::parse(&from_lhs, &from_rhs)?;
            let to = IdentitySpec::parse(&to_lhs, &to_rhs)?;
            let c = consequence(&from, &to);
            println!("{}", c.holds);
            println!("from span: {}", c.from_grid);
            println!("to span: {}", c.to_grid);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
