use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use heiscat::daha::{sample_points, verify_lemma_wow, wow_values};
use heiscat::diagram_engine::{bubble, morphism_expr, parse_morphism, relations, word_string};
use heiscat::group_algebra::verify_trivial_split;
use heiscat::thick_karoubi::{verify_invrel, verify_t3};
use heiscat::{Error, FockState, HeisElem, Partition};

#[derive(Parser)]
#[command(name = "heiscat", about = "Heisenberg category computations with exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Central charge k.
    #[arg(long, global = true, allow_hyphen_values = true)]
    charge: Option<i64>,
    /// Degree bound for the isomorphism solver.
    #[arg(long, global = true, default_value_t = 4)]
    degree: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the JSON here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normal form of a diagram expression.
    Normalize { expr: String },
    /// Whether two diagram expressions have the same normal form.
    Equal { lhs: String, rhs: String },
    /// Product in the Heisenberg ring.
    Ringmul { lhs: String, rhs: String },
    /// The coproduct into charges `l` and `m`.
    Delta {
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        expr: String,
    },
    /// Action on a Fock space with `l` basic and `m` dual factors.
    Fock {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: usize,
        expr: String,
        /// Partitions separated by `;`, e.g. `[1];[]`. Defaults to the vacuum.
        #[arg(long)]
        state: Option<String>,
    },
    /// Value of a dotted bubble in Sym.
    Bubble {
        #[arg(long, allow_hyphen_values = true)]
        dots: i64,
        /// Clockwise instead of counterclockwise.
        #[arg(long)]
        cw: bool,
    },
    /// Defining and derived relation suites.
    Relations,
    /// Isomorphism `H_m^+ ⊗ E_n^- ≅ ⊕ E_{n-r}^- ⊗ H_{m-r}^+`.
    T3 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Inversion relation at the given charge.
    Invrel,
    /// Symmetrizer identities at seeded rational points.
    Wow {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        points: usize,
    },
    /// Trivial idempotent splitting in the colored block algebra.
    Trivial {
        #[arg(long)]
        n: usize,
    },
}

fn charge(c: &Common) -> Result<i64, Error> {
    c.charge.ok_or_else(|| Error::Domain("--charge is required".into()))
}

fn status(ok: bool) -> Value {
    json!(if ok { "verified" } else { "failed" })
}

fn fock_state(l: usize, m: usize, s: Option<&str>) -> Result<FockState, Error> {
    let Some(s) = s else { return Ok(FockState::vacuum(l, m)) };
    let parts = s.split(';').map(|p| p.trim().parse::<Partition>()).collect::<Result<Vec<_>, _>>()?;
    FockState::basis(l, m, parts)
}

/// The JSON report and whether the result is a success.
fn run(cli: &Cli) -> Result<(Value, bool), Error> {
    let c = &cli.common;
    Ok(match &cli.cmd {
        Cmd::Normalize { expr } => {
            let k = charge(c)?;
            let m = parse_morphism(expr, k)?;
            let v = json!({
                "charge": k,
                "source": word_string(&m.source),
                "target": word_string(&m.target),
                "normal_form": m.to_json(),
                "expr": morphism_expr(&m),
            });
            (v, true)
        }
        Cmd::Equal { lhs, rhs } => {
            let k = charge(c)?;
            let a = parse_morphism(lhs, k)?;
            let b = parse_morphism(rhs, k)?;
            let eq = a.equal(&b)?;
            (json!({ "charge": k, "equal": eq }), eq)
        }
        Cmd::Ringmul { lhs, rhs } => {
            let k = charge(c)?;
            let p = HeisElem::parse(lhs, k)?.mul(&HeisElem::parse(rhs, k)?)?;
            (json!({ "product": p.to_json(), "text": p.to_string() }), true)
        }
        Cmd::Delta { l, m, expr } => {
            let k = charge(c)?;
            let d = HeisElem::parse(expr, k)?.delta_lm(*l, *m)?;
            (json!({ "coproduct": d.to_json() }), true)
        }
        Cmd::Fock { l, m, expr, state } => {
            let k = charge(c)?;
            let v = fock_state(*l, *m, state.as_deref())?;
            let w = HeisElem::parse(expr, k)?.fock_act(&v)?;
            (json!({ "result": w.to_json() }), true)
        }
        Cmd::Bubble { dots, cw } => {
            let k = charge(c)?;
            let f = bubble(!cw, *dots, k);
            (json!({ "charge": k, "value": f.to_json(), "text": f.to_string() }), true)
        }
        Cmd::Relations => {
            let k = charge(c)?;
            let all: Vec<(String, bool, &str)> = relations::defining_suite(k)
                .into_iter()
                .map(|(n, ok)| (n, ok, "defining"))
                .chain(relations::derived_suite(k).into_iter().map(|(n, ok)| (n, ok, "derived")))
                .collect();
            let ok = all.iter().all(|r| r.1);
            let items: Vec<Value> = all.iter().map(|(n, p, s)| json!({ "relation": n, "suite": s, "pass": p })).collect();
            (json!({ "charge": k, "status": status(ok), "relations": items }), ok)
        }
        Cmd::T3 { m, n } => {
            let k = charge(c)?;
            let r = verify_t3(*m, *n, k, c.degree)?;
            let ok = r.ok && r.classes_match;
            (r.to_json(), ok)
        }
        Cmd::Invrel => {
            let k = charge(c)?;
            let r = verify_invrel(k, c.degree)?;
            let ok = r.ok && r.classes_match;
            (r.to_json(), ok)
        }
        Cmd::Wow { r, n, points } => {
            let pts = sample_points(*n, *points, c.seed);
            let ok = verify_lemma_wow(*r, *n, &pts)?;
            let vals = pts
                .iter()
                .map(|p| {
                    let (a, b) = wow_values(*r, *n, p)?;
                    Ok(json!({ "point": p.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "plus": a.to_string(), "minus": b.to_string() }))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            (json!({ "r": r, "n": n, "seed": c.seed, "status": status(ok), "values": vals }), ok)
        }
        Cmd::Trivial { n } => {
            let ok = verify_trivial_split(*n);
            (json!({ "n": n, "status": status(ok) }), ok)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (v, code) = match run(&cli) {
        Ok((v, ok)) => (v, if ok { 0 } else { 1 }),
        Err(e) => (json!({ "error": e.to_string() }), 2),
    };
    let text = if cli.common.pretty { serde_json::to_string_pretty(&v) } else { serde_json::to_string(&v) }.unwrap();
    match &cli.common.output {
        Some(p) => {
            if let Err(e) = fs::write(p, text + "\n") {
                eprintln!("heiscat: {}", e);
                return ExitCode::from(2);
            }
        }
        None => {
            let _ = writeln!(io::stdout(), "{}", text);
        }
    }
    ExitCode::from(code)
}
