//! The `rellaws` command line.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::enumerate::{
    count_all, count_normal, enumerate_all, enumerate_normal, vector_census, VectorCensus,
};
use crate::error::Result;
use crate::golden::{self, Check};
use crate::lawmine::{self, mine_with_stats, read_laws_csv, write_laws_csv, write_laws_text, Law};
use crate::property::{classify_kinds, property_vector, PropertyId};
use crate::redundancy::{entails, star_redundant, ClauseSet};
use crate::relation::Relation;
use crate::witness::{
    export_dot, find_witness, min_universe, LiteralConjunction, SearchMode, DEFAULT_RESTARTS,
};

pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable naming the census cache directory.
pub const CACHE_ENV: &str = "RELLAWS_CACHE";

#[derive(Parser, Debug)]
#[command(
    name = "rellaws",
    version,
    about = "Properties of finite binary relations and the laws between them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the properties, vector and kinds of a relation file
    Props { file: PathBuf },
    /// Number of relations on N elements (closed form)
    Count {
        #[arg(long)]
        n: usize,
        /// Count normal forms only
        #[arg(long)]
        pruned: bool,
    },
    /// Enumerate all relations on N elements and write their vector census
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pruned: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Mine laws from a census file
    Mine {
        #[arg(long)]
        census: PathBuf,
        #[arg(long, default_value_t = lawmine::DEFAULT_MAX_LEVEL)]
        max_level: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Flag laws entailed by the other laws of a CSV law file
    Star {
        #[arg(long)]
        laws: PathBuf,
    },
    /// Find a relation on N elements with the given properties
    Witness {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        literals: Literals,
        /// Randomized local search instead of exhaustive search
        #[arg(long)]
        heuristic: bool,
        #[arg(long, default_value_t = 0, requires = "heuristic")]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_RESTARTS, requires = "heuristic")]
        restarts: u64,
        /// Print the witness as a Graphviz digraph
        #[arg(long)]
        dot: bool,
    },
    /// Smallest universe admitting a witness
    Mincard {
        #[command(flatten)]
        literals: Literals,
        #[arg(long)]
        max: usize,
    },
    /// Recompute the reference numbers and report differences
    Verify {
        /// Recompute the n=5 censuses and run the full mine
        #[arg(long)]
        deep: bool,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Args, Debug)]
struct Literals {
    /// Properties that must hold
    #[arg(long, value_delimiter = ',')]
    require: Vec<PropertyId>,
    /// Properties that must fail
    #[arg(long, value_delimiter = ',')]
    forbid: Vec<PropertyId>,
}

impl Literals {
    fn conjunction(&self) -> Result<LiteralConjunction> {
        LiteralConjunction::new(self.require.iter().copied(), self.forbid.iter().copied())
    }
}

/// Runs one invocation; `args` includes the program name. Returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Props { file } => {
            let r: Relation = fs::read_to_string(&file)?.parse()?;
            props(&r, out)?;
        }
        Command::Count { n, pruned } => {
            let count = if pruned {
                count_normal(n)?
            } else {
                count_all(n)?
            };
            writeln!(out, "{count}")?;
        }
        Command::Census {
            n,
            pruned,
            out: path,
        } => {
            let census = vector_census(n, pruned)?;
            write_census(&census, &path)?;
            writeln!(
                out,
                "n={n} pruned={} relations={} inhabited={}",
                pruned as u8,
                census.total(),
                census.counts.len()
            )?;
        }
        Command::Mine {
            census,
            max_level,
            csv,
        } => {
            let census = read_census(&census)?;
            let laws = lawmine::mine(&census, max_level)?;
            if csv {
                write_laws_csv(&laws, None, out)?;
            } else {
                write_laws_text(&laws, out)?;
            }
        }
        Command::Star { laws } => {
            let laws = read_laws_csv(File::open(&laws)?)?;
            let set = ClauseSet::new(laws)?;
            let flags = star_redundant(&set);
            write_laws_csv(set.laws(), Some(&flags), out)?;
        }
        Command::Witness {
            n,
            literals,
            heuristic,
            seed,
            restarts,
            dot,
        } => {
            let q = literals.conjunction()?;
            let mode = if heuristic {
                SearchMode::Heuristic { seed, restarts }
            } else {
                SearchMode::Exhaustive
            };
            match find_witness(n, &q, mode)? {
                Some(w) if dot => write!(out, "{}", export_dot(&w, None)?)?,
                Some(w) => write!(out, "{w}")?,
                None if heuristic => writeln!(out, "none found (search budget exhausted)")?,
                None => writeln!(out, "none (no relation on {n} elements qualifies)")?,
            }
        }
        Command::Mincard { literals, max } => match min_universe(&literals.conjunction()?, max)? {
            Some(n) => writeln!(out, "{n}")?,
            None => writeln!(out, "none up to {max}")?,
        },
        Command::Verify { deep, csv } => return verify(deep, csv, out, err),
    }
    Ok(0)
}

fn props(r: &Relation, out: &mut dyn Write) -> Result<()> {
    let v = property_vector(r);
    let holding: Vec<&str> = PropertyId::ALL
        .iter()
        .filter(|&&p| crate::property::holds(r, p))
        .map(|p| p.name())
        .collect();
    let kinds: Vec<String> = classify_kinds(r).iter().map(|k| format!("{k:?}")).collect();
    writeln!(out, "n={}", r.card())?;
    writeln!(out, "vector={v:06x}")?;
    writeln!(out, "properties: {}", holding.join(" "))?;
    writeln!(out, "kinds: {}", kinds.join(" "))?;
    Ok(())
}

fn read_census(path: &Path) -> Result<VectorCensus> {
    VectorCensus::read_from(BufReader::new(File::open(path)?))
}

fn write_census(census: &VectorCensus, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    census.write_to(&mut w)?;
    w.flush()?;
    Ok(())
}

/// `$RELLAWS_CACHE`, or `rellaws` under the system temporary directory.
pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("rellaws"))
}

pub fn cache_path(dir: &Path, n: usize, pruned: bool) -> PathBuf {
    dir.join(format!("census-v1-n{n}-pruned{}.txt", pruned as u8))
}

/// The cached census for `(n, pruned)` if one is present and readable.
pub fn load_cached(dir: &Path, n: usize, pruned: bool) -> Option<VectorCensus> {
    read_census(&cache_path(dir, n, pruned))
        .ok()
        .filter(|c| c.n == n && c.pruned == pruned)
}

pub fn store_cached(dir: &Path, census: &VectorCensus) -> Result<()> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, census.n, census.pruned);
    let tmp = path.with_extension("tmp");
    write_census(census, &tmp)?;
    fs::rename(tmp, path)?;
    Ok(())
}

const TABLE_SAME_KEYS: &str = "n=5 inhabited vectors, all vs normal forms";
const TABLE_REDUNDANCY: &str = "redundancy spot checks";

fn verify(deep: bool, csv: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let mut checks = Vec::new();

    let mut enumerated = Vec::new();
    for n in 1..=4 {
        enumerated.push((n, enumerate_all(n, |_| {})?, enumerate_normal(n, |_| {})?));
    }
    checks.extend(golden::check_relation_counts(&enumerated));

    let dir = cache_dir();
    let mut censuses = Vec::new();
    for pruned in [false, true] {
        let census = if deep {
            let c = vector_census(5, pruned)?;
            if let Err(e) = store_cached(&dir, &c) {
                writeln!(
                    err,
                    "warning: could not cache census in {}: {e}",
                    dir.display()
                )?;
            }
            Some(c)
        } else {
            let c = load_cached(&dir, 5, pruned);
            if c.is_none() {
                writeln!(
                    err,
                    "note: no cached n=5 census (pruned={}) in {}; skipped (use --deep)",
                    pruned as u8,
                    dir.display()
                )?;
            }
            c
        };
        if let Some(c) = census {
            checks.extend(golden::check_property_census(&c.property_counts()));
            censuses.push(c);
        }
    }
    if let Some(all) = censuses.iter().find(|c| !c.pruned) {
        checks.extend(golden::check_split(all));
    }
    if let [a, b] = &censuses[..] {
        let same = a.counts.keys().eq(b.counts.keys());
        checks.push(check(TABLE_SAME_KEYS, "key sets equal", true, same));
    }

    if deep {
        let all = censuses.iter().find(|c| !c.pruned).expect("computed above");
        let report = mine_with_stats(all, crate::property::MINED_COUNT)?;
        checks.extend(golden::check_level_stats(&report.levels));
        checks.extend(golden::check_laws(&report.laws));
        checks.extend(redundancy_checks(&report.laws));
    }

    report(&checks, csv, out)?;
    Ok(if checks.iter().all(Check::passed) {
        0
    } else {
        EXIT_MISMATCH
    })
}

fn check(table: &'static str, cell: &str, expected: impl ToString, actual: impl ToString) -> Check {
    Check {
        table,
        cell: cell.to_string(),
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

fn redundancy_checks(laws: &[Law]) -> Vec<Check> {
    let by_seq = |s: usize| laws.iter().find(|l| l.seq == s).cloned();
    let mut out = Vec::new();
    for (target, premises) in [(44, [39, 46]), (239, [242, 71])] {
        let cell = format!("{target:03} from {:03}, {:03}", premises[0], premises[1]);
        let got = match (by_seq(target), by_seq(premises[0]), by_seq(premises[1])) {
            (Some(t), Some(a), Some(b)) => entails(&[a, b], &t).to_string(),
            _ => "law missing".to_string(),
        };
        out.push(check(TABLE_REDUNDANCY, &cell, true, got));
    }
    let got = match by_seq(6) {
        Some(t) => {
            let others: Vec<Law> = laws.iter().filter(|l| l.seq != 6).cloned().collect();
            entails(&others, &t).to_string()
        }
        None => "law missing".to_string(),
    };
    out.push(check(TABLE_REDUNDANCY, "006 from all others", false, got));
    out
}

fn report(checks: &[Check], csv: bool, out: &mut dyn Write) -> Result<()> {
    if csv {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["table", "cell", "expected", "actual", "pass"])?;
        for c in checks {
            let pass = if c.passed() { "1" } else { "0" };
            w.write_record([c.table, &c.cell, &c.expected, &c.actual, pass])?;
        }
        w.flush()?;
        return Ok(());
    }
    let mut tables: Vec<&str> = Vec::new();
    for c in checks {
        if !tables.contains(&c.table) {
            tables.push(c.table);
        }
    }
    for table in tables {
        let rows: Vec<&Check> = checks.iter().filter(|c| c.table == table).collect();
        let bad: Vec<&&Check> = rows.iter().filter(|c| !c.passed()).collect();
        let verdict = if bad.is_empty() { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "{verdict} {table}: {}/{} cells match",
            rows.len() - bad.len(),
            rows.len()
        )?;
        for c in bad {
            writeln!(out, "  {c}")?;
        }
    }
    Ok(())
}
