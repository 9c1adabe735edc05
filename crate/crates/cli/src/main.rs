use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use arithmetree::arithmetic::{self, decompose};
use arithmetree::checks::{self, CheckReport};
use arithmetree::geometry::{self, Canopy, CoordMap, ExportFormat, GeometryError};
use arithmetree::tamari::{self, TamariError};
use arithmetree::{ParseError, Tree, TreeSet};

const CHECK_CAP: usize = 6;
const ENUM_CAP: usize = tamari::DEFAULT_CAP;

/// Exact arithmetic of planar binary trees.
///
/// Trees are written `.` for the leaf and `(l r)` for a node. Wherever a
/// tree is expected an integer `n` may be given instead, meaning the set of
/// all trees of degree `n`.
#[derive(Parser)]
#[command(name = "arithmetree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all trees of a degree in canonical order.
    Enum {
        degree: usize,
        #[command(flatten)]
        cap: EnumCap,
        #[arg(long)]
        json: bool,
    },
    /// t + s.
    Add(Binary),
    /// The left half t -| s.
    Left(Binary),
    /// The right half t |- s.
    Right(Binary),
    /// The product t x s.
    Mul(Binary),
    /// All trees between a and b in the Tamari order.
    Interval {
        a: String,
        b: String,
        #[command(flatten)]
        cap: EnumCap,
        #[arg(long)]
        json: bool,
    },
    /// The Hasse diagram of the Tamari order on one degree.
    Poset {
        degree: usize,
        #[command(flatten)]
        cap: EnumCap,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Integer coordinates of every tree of a degree.
    Coords {
        map: MapArg,
        degree: usize,
        #[command(flatten)]
        cap: EnumCap,
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        #[arg(long)]
        json: bool,
    },
    /// The canopy sign word of a tree.
    Canopy { tree: String },
    /// The largest tree with a given canopy, e.g. `section -+`.
    Section {
        #[arg(allow_hyphen_values = true)]
        signs: String,
    },
    /// Write a tree as a word in copies of 1.
    Decompose { tree: String },
    /// Run a verification sweep and print a pass/fail report.
    Check {
        suite: Suite,
        /// Largest total degree swept.
        #[arg(long, default_value_t = CHECK_CAP)]
        max_degree: usize,
        /// Refuse --max-degree above this.
        #[arg(long, default_value_t = CHECK_CAP)]
        cap: usize,
    },
}

#[derive(Args)]
struct Binary {
    t: String,
    s: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EnumCap {
    /// Refuse degrees above this.
    #[arg(long, default_value_t = ENUM_CAP)]
    cap: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    Tamari,
    Loday,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Relations,
    Theorem,
    Multiplication,
    Dendriform,
    Geometry,
    Hypercube,
    All,
}

enum Failure {
    Check(String),
    Usage(String),
    Parse(String),
    Cap { degree: usize, cap: usize },
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Parse(_) => 3,
            Failure::Cap { .. } => 4,
            Failure::Other(_) => 5,
        }
    }
}

impl From<TamariError> for Failure {
    fn from(e: TamariError) -> Failure {
        match e {
            TamariError::CapExceeded { degree, cap } => Failure::Cap { degree, cap },
            e => Failure::Other(e.to_string()),
        }
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Failure {
        match e {
            GeometryError::Tamari(e) => e.into(),
            e @ GeometryError::InvalidSign(_) => Failure::Parse(e.to_string()),
            e => Failure::Other(e.to_string()),
        }
    }
}

fn check_cap(degree: usize, cap: usize) -> Result<(), Failure> {
    if degree > cap {
        Err(Failure::Cap { degree, cap })
    } else {
        Ok(())
    }
}

fn parse_tree(text: &str) -> Result<Tree, Failure> {
    Tree::parse(text).map_err(|err: ParseError| {
        Failure::Parse(match err.position() {
            Some(pos) => format!("cannot parse {text:?}: {err} (column {})", pos + 1),
            None => format!("cannot parse {text:?}: {err}"),
        })
    })
}

fn parse_operand(text: &str) -> Result<TreeSet, Failure> {
    match text.trim().parse::<usize>() {
        Ok(n) => {
            check_cap(n, ENUM_CAP)?;
            Ok(arithmetic::embed(n))
        }
        Err(_) => parse_tree(text).map(TreeSet::singleton),
    }
}

fn single_tree(text: &str) -> Result<Tree, Failure> {
    let set = parse_operand(text)?;
    match set.len() {
        1 => Ok(set.first().expect("one member").clone()),
        n => Err(Failure::Usage(format!(
            "{text} stands for {n} trees, expected one"
        ))),
    }
}

fn lines<'a>(trees: impl IntoIterator<Item = &'a Tree>) -> String {
    trees.into_iter().fold(String::new(), |mut out, t| {
        writeln!(out, "{t}").expect("write to string");
        out
    })
}

fn set_output(set: &TreeSet, json: bool) -> String {
    if json {
        set.to_json() + "\n"
    } else {
        lines(set)
    }
}

fn binary(b: &Binary, op: fn(&TreeSet, &TreeSet) -> TreeSet) -> Result<String, Failure> {
    let (t, s) = (parse_operand(&b.t)?, parse_operand(&b.s)?);
    Ok(set_output(&op(&t, &s), b.json))
}

fn run_check(suite: Suite, k: usize) -> Vec<CheckReport> {
    let one = |s: Suite| match s {
        Suite::Relations => checks::relations(k, 3, 200),
        Suite::Theorem => checks::theorem(k),
        Suite::Multiplication => checks::multiplication(k),
        Suite::Dendriform => checks::dendriform(k, 100),
        Suite::Geometry => checks::geometry(k),
        Suite::Hypercube => checks::hypercube(k.saturating_sub(1)),
        Suite::All => unreachable!(),
    };
    match suite {
        Suite::All => [
            Suite::Relations,
            Suite::Theorem,
            Suite::Multiplication,
            Suite::Dendriform,
            Suite::Geometry,
            Suite::Hypercube,
        ]
        .into_iter()
        .map(one)
        .collect(),
        s => vec![one(s)],
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Enum { degree, cap, json } => {
            check_cap(degree, cap.cap)?;
            Ok(set_output(&TreeSet::all_of_degree(degree), json))
        }
        Command::Add(b) => binary(&b, arithmetic::sum),
        Command::Left(b) => binary(&b, arithmetic::op_left),
        Command::Right(b) => binary(&b, arithmetic::op_right),
        Command::Mul(b) => binary(&b, arithmetic::multiply),
        Command::Interval { a, b, cap, json } => {
            let (a, b) = (single_tree(&a)?, single_tree(&b)?);
            Ok(set_output(&tamari::interval_capped(&a, &b, cap.cap)?, json))
        }
        Command::Poset {
            degree, cap, json, ..
        } => {
            let h = tamari::hasse_capped(degree, cap.cap)?;
            Ok(if json { h.to_json() + "\n" } else { h.to_dot() })
        }
        Command::Coords {
            map,
            degree,
            cap,
            json,
            ..
        } => {
            check_cap(degree, cap.cap)?;
            let map = match map {
                MapArg::Tamari => CoordMap::Tamari,
                MapArg::Loday => CoordMap::Loday,
            };
            let format = if json {
                ExportFormat::Json
            } else {
                ExportFormat::Csv
            };
            Ok(geometry::export_coords(degree, map, format)?)
        }
        Command::Canopy { tree } => Ok(format!("{}\n", geometry::canopy(&single_tree(&tree)?)?)),
        Command::Section { signs } => {
            let c: Canopy = signs.parse()?;
            Ok(format!("{}\n", geometry::section(&c)?))
        }
        Command::Decompose { tree } => {
            let word =
                decompose(&single_tree(&tree)?).map_err(|e| Failure::Other(e.to_string()))?;
            Ok(format!("{word}\n"))
        }
        Command::Check {
            suite,
            max_degree,
            cap,
        } => {
            check_cap(max_degree, cap)?;
            let reports = run_check(suite, max_degree);
            let out: String = reports.iter().map(ToString::to_string).collect();
            if reports.iter().all(CheckReport::passed) {
                Ok(out)
            } else {
                Err(Failure::Check(out))
            }
        }
    }
}

fn main() -> ExitCode {
    let mut argv: Vec<String> = std::env::args().collect();
    // `section --` would otherwise read as the end-of-options marker
    if argv.len() == 3 && argv[1] == "section" && argv[2] == "--" {
        argv.insert(2, "--".into());
    }
    let cli = Cli::parse_from(argv);
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Check(report) => {
                    print!("{report}");
                    eprintln!("error: check failed");
                }
                Failure::Usage(msg) | Failure::Parse(msg) | Failure::Other(msg) => {
                    eprintln!("error: {msg}")
                }
                Failure::Cap { degree, cap } => {
                    eprintln!("error: degree {degree} exceeds the cap {cap}; raise it with --cap")
                }
            }
            ExitCode::from(f.code())
        }
    }
}
