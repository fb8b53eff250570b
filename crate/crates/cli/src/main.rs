use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qcluster::charcalc::{verify_abelian_sequences, Window};
use qcluster::coulomb::{
    self, build_registry, fit_gl1_convention, fit_loop_shift, initial_commutations, initial_seed_gl2, verify_gl1,
    verify_relations, verify_twist_duality, InstanceReport, Status, Suite,
};
use qcluster::graph::{explore, twist};
use qcluster::pairs::{enumerate_box, orbit_count_bruteforce};
use qcluster::{CoulombError, QuantumSeed};

#[derive(Parser)]
#[command(name = "qcluster", version, about = "Exact quantum cluster algebra checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Gl1,
    Gl2,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Case {
    Abelian,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the verification suites and print a JSON report.
    Verify {
        #[arg(value_enum)]
        target: Target,
        #[arg(long, default_value_t = 2)]
        ell_window: i64,
        #[arg(long, default_value_t = 5)]
        depth: usize,
    },
    /// Apply mutations (1-based indices) to a seed file.
    Mutate {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Breadth-first exchange graph up to a depth.
    Explore {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Twist an acyclic seed by its source sequence.
    Twist {
        #[arg(long)]
        seed: PathBuf,
    },
    /// Truncated character checks.
    Char {
        #[arg(long, value_enum)]
        case: Case,
        #[arg(long)]
        window: i64,
    },
    /// Dominant pairs in a box.
    Pairs {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, allow_hyphen_values = true)]
        hi: i64,
    },
}

/// Usage or format error: exit status 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

struct Record {
    name: String,
    anchor: String,
    parameters: Value,
    status: Status,
    details: Value,
}

impl Record {
    fn new(name: &str, anchor: &str, parameters: Value, ok: bool, details: Value) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            parameters,
            status: if ok { Status::Pass } else { Status::Fail },
            details,
        }
    }

    fn error(name: &str, anchor: &str, parameters: Value, e: &CoulombError) -> Self {
        let status = match e {
            CoulombError::Coverage(_) => Status::Skip,
            _ => Status::Fail,
        };
        Self {
            name: name.into(),
            anchor: anchor.into(),
            parameters,
            status,
            details: json!({"error": e.to_string()}),
        }
    }

    fn from_instance(suite: &str, i: &InstanceReport) -> Self {
        Self {
            name: format!("{suite}/{}", i.name),
            anchor: i.family.clone(),
            parameters: json!(i.params),
            status: i.status,
            details: i.to_json(),
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "anchor": self.anchor,
            "parameters": self.parameters,
            "status": self.status.as_str(),
            "details": self.details,
        })
    }
}

fn report(command: &[String], records: &[Record]) -> (Value, u8) {
    let count = |s: Status| records.iter().filter(|r| r.status == s).count();
    let exit = if count(Status::Fail) == 0 { 0 } else { 1 };
    let v = json!({
        "command": command,
        "records": records.iter().map(Record::to_json).collect::<Vec<_>>(),
        "summary": {"pass": count(Status::Pass), "fail": count(Status::Fail), "skip": count(Status::Skip)},
        "exit_status": exit,
    });
    (v, exit)
}

fn verify_gl2(ell_window: i64, depth: usize, out: &mut Vec<Record>) {
    let seed = initial_seed_gl2();
    let c = seed.check_compatibility();
    out.push(Record::new(
        "compatibility",
        "seed",
        json!({}),
        c.ok && c.d == Some(-2),
        json!({"d": c.d, "product": c.product}),
    ));
    match fit_loop_shift(&seed, &initial_commutations()) {
        Ok(sigma) => out.push(Record::new(
            "loop-shift",
            "commutation",
            json!({}),
            true,
            json!({"sigma": sigma, "s": sigma / 2}),
        )),
        Err(e) => out.push(Record::error("loop-shift", "commutation", json!({}), &e)),
    }
    let params = json!({"depth": depth, "ell_window": ell_window});
    let reg = match build_registry(depth, ell_window + 1) {
        Ok(r) => {
            out.push(Record::new("registry", "registry", params.clone(), true, r.to_json()));
            r
        }
        Err(e) => {
            out.push(Record::error("registry", "registry", params, &e));
            return;
        }
    };
    for suite in Suite::GL2 {
        match verify_relations(&reg, suite, ell_window) {
            Ok(rep) => out.extend(rep.instances.iter().map(|i| Record::from_instance(suite.name(), i))),
            Err(e) => out.push(Record::error(suite.name(), suite.name(), params.clone(), &e)),
        }
    }
    let window = ell_window.min(1);
    let p = json!({"pattern_window": window});
    match verify_twist_duality(&reg, window) {
        Ok(d) => out.push(Record::new("twist-duality", "twist", p, d.ok(), d.to_json())),
        Err(e) => out.push(Record::error("twist-duality", "twist", p, &e)),
    }
    // depth-3 strip labels reach |l| = 4
    let inv_depth = depth.min(3);
    let p = json!({"depth": inv_depth, "registry_window": 4});
    match build_registry(depth.max(inv_depth), 4).and_then(|r| coulomb::inventory_against_registry(&r, &seed, inv_depth)) {
        Ok(r) => out.push(Record::new("inventory", "exchange-graph", p, r.ok(), r.to_json())),
        Err(e) => out.push(Record::error("inventory", "exchange-graph", p, &e)),
    }
    let p = json!({"depth": depth});
    match coulomb::positivity(&seed, depth) {
        Ok(r) => out.push(Record::new("positivity", "positivity", p, r.ok(), r.to_json())),
        Err(e) => out.push(Record::error("positivity", "positivity", p, &e)),
    }
}

fn verify_gl1_all(out: &mut Vec<Record>) {
    let window = 20;
    let p = json!({"window": window});
    let offset = match Window::symmetric(window)
        .map_err(CoulombError::from)
        .and_then(|w| Ok(verify_abelian_sequences(w)?))
    {
        Ok(r) => {
            out.push(Record::new("characters", "abelian-characters", p, r.all_ok(), r.to_json()));
            r.loop_offset()
        }
        Err(e) => {
            out.push(Record::error("characters", "abelian-characters", p, &e));
            return;
        }
    };
    let conv = match fit_gl1_convention(offset) {
        Ok(c) => {
            out.push(Record::new("gl1-convention", "abelian", json!({"loop_offset": offset}), true, c.to_json()));
            c
        }
        Err(e) => {
            out.push(Record::error("gl1-convention", "abelian", json!({"loop_offset": offset}), &e));
            return;
        }
    };
    match verify_gl1(&conv) {
        Ok(rep) => out.extend(rep.instances.iter().map(|i| Record::from_instance("abelian", i))),
        Err(e) => out.push(Record::error("abelian", "abelian", json!({}), &e)),
    }
}

fn read_seed(path: &Path) -> Result<QuantumSeed, Usage> {
    let text = fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    Ok(QuantumSeed::from_json(&v)?)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn write_or_print(out: Option<&Path>, v: &Value) -> Result<(), Usage> {
    match out {
        Some(p) => fs::write(p, pretty(v) + "\n").map_err(|e| Usage(format!("{}: {e}", p.display()))),
        None => {
            println!("{}", pretty(v));
            Ok(())
        }
    }
}

fn run(cli: Cli, argv: &[String]) -> Result<u8, Usage> {
    match cli.cmd {
        Cmd::Verify {
            target,
            ell_window,
            depth,
        } => {
            if ell_window < 0 {
                return Err(Usage("--ell-window must be non-negative".into()));
            }
            let mut records = Vec::new();
            if matches!(target, Target::Gl1 | Target::All) {
                verify_gl1_all(&mut records);
            }
            if matches!(target, Target::Gl2 | Target::All) {
                verify_gl2(ell_window, depth, &mut records);
            }
            let (v, code) = report(argv, &records);
            println!("{}", pretty(&v));
            Ok(code)
        }
        Cmd::Mutate { seed, at, out } => {
            let mut s = read_seed(&seed)?;
            let m = s.mutable_count();
            if let Some(&bad) = at.iter().find(|&&k| k == 0 || k > m) {
                return Err(Usage(format!("index {bad} outside 1..={m}")));
            }
            let mut lines = Vec::new();
            for &k in &at {
                let binomial = s.exchange_binomial(k - 1)?;
                let old = s.labels()[k - 1].clone();
                s = s.mutate(k - 1)?;
                lines.push(format!("mu_{k}: {} * {old} = {binomial}", s.labels()[k - 1]));
            }
            match &out {
                Some(p) => {
                    write_or_print(Some(p), &s.to_json())?;
                    for l in lines {
                        println!("{l}");
                    }
                }
                None => {
                    for l in lines {
                        eprintln!("{l}");
                    }
                    write_or_print(None, &s.to_json())?;
                }
            }
            Ok(0)
        }
        Cmd::Explore { seed, depth, out } => {
            let s = read_seed(&seed)?;
            let g = explore(&s, depth)?;
            let summary = json!({
                "depth": depth,
                "nodes": g.node_count(),
                "level_sizes": g.level_sizes(),
            });
            if let Some(p) = &out {
                write_or_print(Some(p), &g.to_json())?;
            }
            println!("{}", pretty(&summary));
            Ok(0)
        }
        Cmd::Twist { seed } => {
            let s = read_seed(&seed)?;
            let (t, seq) = twist(&s)?;
            let v = json!({
                "sequence": seq.iter().map(|k| k + 1).collect::<Vec<_>>(),
                "seed": t.to_json(),
            });
            println!("{}", pretty(&v));
            Ok(0)
        }
        Cmd::Char {
            case: Case::Abelian,
            window,
        } => {
            let r = verify_abelian_sequences(Window::symmetric(window)?)?;
            println!("{}", pretty(&r.to_json()));
            Ok(if r.all_ok() { 0 } else { 1 })
        }
        Cmd::Pairs { n, lo, hi } => {
            let pairs = enumerate_box(n, lo, hi)?;
            let brute = orbit_count_bruteforce(n, lo, hi).ok();
            let ok = brute.is_none_or(|b| b == pairs.len() as u128);
            let v = json!({
                "n": n,
                "lo": lo,
                "hi": hi,
                "count": pairs.len(),
                "bruteforce": brute.map(|b| b.to_string()),
                "pairs": pairs.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            });
            println!("{}", pretty(&v));
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    match run(cli, &argv[1..]) {
        Ok(code) => ExitCode::from(code),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
