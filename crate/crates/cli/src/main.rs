//! `cohen`: command-line access to Cohen algebras and groups, the tensor-algebra
//! realisation and the self-check suites.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cohen_core::algebra::{basis, parse_element};
use cohen_core::group::{descend, is_member_h, is_member_h_l, is_member_h_lk, lift_h, shape_caveats, MembershipReport};
use cohen_core::lcs::{lcs_quotient_basis, lcs_rank, pairing_matrix};
use cohen_core::tensor::rigidity::natural_maps;
use cohen_core::tensor::{gamma_submodule, lie_submodule, parse_input, primitives_basis, theta_eval, Slot};
use cohen_core::verify::{self, Suite};
use cohen_core::{
    AlgebraElement, Caveat, Execution, FreeModule, GroupElement, Monomial, RingSpec, Shape, WindowConvention,
};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "cohen",
    version,
    about = "Exact computations in Cohen algebras and Cohen groups"
)]
struct Cli {
    /// Coefficient ring: `z` or `zmod:m`.
    #[arg(long, global = true, default_value = "z")]
    ring: RingSpec,
    /// Emit `{command, inputs, result, caveats}` as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Run data-parallel loops on a thread pool or on the calling thread.
    #[arg(long, global = true, default_value = "parallel")]
    exec: Execution,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Basis monomials of degree `t` in `A_n[k]`.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        t: usize,
    },
    /// Canonical form of a group word in the algebra.
    Expand {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        word: String,
    },
    /// Whether all given words are equal in `K_n(k)`; exit 1 if not.
    Eq {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(required = true, num_args = 2..)]
        words: Vec<String>,
    },
    /// Membership in `H_n`, `H_n^(l)` or `H_n^(l),(k)`; exit 1 if not a member.
    Member {
        #[arg(long, value_enum)]
        kind: MemberKind,
        /// `n` in `H_n`; the word lives on `l n` generators for the windowed kinds.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        l: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Window projection convention: `verbatim` or `block`.
        #[arg(long, default_value = "verbatim")]
        shift: WindowConvention,
        word: String,
    },
    /// Lift `α ∈ H_level` with trivial faces to `H_n`.
    Lift {
        #[arg(long)]
        level: usize,
        #[arg(long)]
        n: usize,
        word: String,
    },
    /// Evaluate `θ_n(a)` on an input `z_1 (x) ... (x) z_n`.
    Eval {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Dimension of `V`; defaults to the length of the input vectors.
        #[arg(long)]
        dim: Option<usize>,
        /// Read the element as a group word and evaluate its canonical form.
        #[arg(long)]
        word: bool,
        element: String,
        input: String,
    },
    /// Ranks of the modules attached to `n`.
    Ranks {
        #[arg(long, value_enum)]
        what: RankKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Degree; all degrees when omitted.
        #[arg(long)]
        t: Option<usize>,
        /// Dimension of `V` for `primitives` and `natural`.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Run a self-check suite (or `all`); exit 1 if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MemberKind {
    Hn,
    Hln,
    Hlkn,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum RankKind {
    Lie,
    Basis,
    Gamma,
    Primitives,
    Lcs,
    Pairing,
    Natural,
}

struct Outcome {
    command: &'static str,
    inputs: Value,
    text: String,
    result: Value,
    caveats: Vec<Caveat>,
    /// The answer to a yes/no question, when there is one.
    verdict: Option<bool>,
}

type CliResult<T> = Result<T, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn shape(ring: RingSpec, n: usize, k: usize) -> CliResult<Shape> {
    Shape::new(ring, n, k).map_err(err)
}

fn monomial_text(shape: Shape, m: &Monomial) -> String {
    AlgebraElement::from_monomial(shape, m.clone(), 1)
        .map(|a| a.to_string())
        .unwrap_or_default()
}

fn membership(report: &MembershipReport) -> (String, Value) {
    let mut text = report.member.to_string();
    for f in &report.failures {
        text.push_str(&format!("\n  {f}"));
    }
    (text, json!({ "member": report.member, "failures": report.failures }))
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    let ring = cli.ring;
    let exec = cli.exec;
    match &cli.command {
        Command::Basis { n, k, t } => {
            let sh = shape(ring, *n, *k)?;
            let monomials: Vec<String> = basis(*n, *k, *t).iter().map(|m| monomial_text(sh, m)).collect();
            let mut text = monomials.join("\n");
            if !text.is_empty() {
                text.push('\n');
            }
            text.push_str(&format!("count: {}", monomials.len()));
            Ok(Outcome {
                command: "basis",
                inputs: json!({ "ring": ring.to_string(), "n": n, "k": k, "t": t }),
                text,
                result: json!({ "monomials": monomials, "count": monomials.len() }),
                caveats: Vec::new(),
                verdict: None,
            })
        }
        Command::Expand { n, k, word } => {
            let g = GroupElement::parse(shape(ring, *n, *k)?, word).map_err(err)?;
            let canon = g.canon().to_string();
            Ok(Outcome {
                command: "expand",
                inputs: json!({ "ring": ring.to_string(), "n": n, "k": k, "word": word }),
                text: canon.clone(),
                result: json!({ "word": g.word().to_string(), "canon": canon }),
                caveats: g.caveats(),
                verdict: None,
            })
        }
        Command::Eq { n, k, words } => {
            let sh = shape(ring, *n, *k)?;
            let gs = words
                .iter()
                .map(|w| GroupElement::parse(sh, w).map_err(err))
                .collect::<CliResult<Vec<_>>>()?;
            let equal = gs.windows(2).all(|p| p[0] == p[1]);
            let canons: Vec<String> = gs.iter().map(|g| g.canon().to_string()).collect();
            Ok(Outcome {
                command: "eq",
                inputs: json!({ "ring": ring.to_string(), "n": n, "k": k, "words": words }),
                text: equal.to_string(),
                result: json!({ "equal": equal, "canons": canons }),
                caveats: shape_caveats(&sh),
                verdict: Some(equal),
            })
        }
        Command::Member {
            kind,
            n,
            l,
            k,
            shift,
            word,
        } => {
            let total = match kind {
                MemberKind::Hn => *n,
                MemberKind::Hln | MemberKind::Hlkn => l * n,
            };
            let block = if matches!(kind, MemberKind::Hlkn) { *k } else { 1 };
            let g = GroupElement::parse(shape(ring, total, block)?, word).map_err(err)?;
            let report = match kind {
                MemberKind::Hn => is_member_h(&g),
                MemberKind::Hln => is_member_h_l(&g, *l, *shift),
                MemberKind::Hlkn => is_member_h_lk(&g, *l, *k, *shift),
            }
            .map_err(err)?;
            let (text, result) = membership(&report);
            Ok(Outcome {
                command: "member",
                inputs: json!({
                    "ring": ring.to_string(), "kind": format!("{kind:?}").to_lowercase(),
                    "n": n, "l": l, "k": block, "shift": shift.to_string(), "word": word,
                }),
                text,
                result,
                caveats: report.caveats.clone(),
                verdict: Some(report.member),
            })
        }
        Command::Lift { level, n, word } => {
            let alpha = GroupElement::parse(shape(ring, *level, 1)?, word).map_err(err)?;
            let lifted = lift_h(&alpha, *n).map_err(err)?;
            let member = is_member_h(&lifted).map_err(err)?.member;
            let back = descend(&lifted, *level).map_err(err)?;
            let projects_back = back == alpha;
            let text = format!(
                "{}\ncanon: {}\nmember: {member}\nprojects back: {projects_back}",
                lifted.word(),
                lifted.canon()
            );
            Ok(Outcome {
                command: "lift",
                inputs: json!({ "ring": ring.to_string(), "level": level, "n": n, "word": word }),
                text,
                result: json!({
                    "word": lifted.word().to_string(), "canon": lifted.canon().to_string(),
                    "member": member, "projects_back": projects_back,
                }),
                caveats: lifted.caveats(),
                verdict: None,
            })
        }
        Command::Eval {
            n,
            k,
            dim,
            word,
            element,
            input,
        } => {
            let sh = shape(ring, *n, *k)?;
            let (a, caveats) = if *word {
                let g = GroupElement::parse(sh, element).map_err(err)?;
                let c = g.caveats();
                (g.into_canon(), c)
            } else {
                (parse_element(sh, element).map_err(err)?, Vec::new())
            };
            let z = parse_input(input).map_err(err)?;
            let inferred = z.slots.iter().find_map(|s| match s {
                Slot::Vector(v) => Some(v.len()),
                Slot::Unit => None,
            });
            let m = dim.or(inferred).unwrap_or(1);
            let module = FreeModule::new(ring, m).map_err(err)?;
            let out = theta_eval(&a, &module, &z).map_err(err)?.to_string();
            Ok(Outcome {
                command: "eval",
                inputs: json!({
                    "ring": ring.to_string(), "n": n, "k": k, "dim": m,
                    "element": a.to_string(), "input": z.to_string(),
                }),
                text: out.clone(),
                result: json!({ "value": out }),
                caveats,
                verdict: None,
            })
        }
        Command::Ranks { what, n, k, t, dim } => ranks(ring, *what, *n, *k, *t, *dim, exec),
        Command::Verify { suite, seed } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse::<Suite>().map_err(err)?]
            };
            let reports: Vec<_> = suites.iter().map(|&s| verify::run(s, *seed, exec)).collect();
            let passed = reports.iter().all(|r| r.passed());
            let mut text: String = reports.iter().map(ToString::to_string).collect();
            text.push_str(if passed {
                "all checks passed"
            } else {
                "some checks failed"
            });
            let result: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "suite": r.suite.name(),
                        "passed": r.passed(),
                        "checks": r.checks.iter().map(|c| json!({
                            "name": c.name, "passed": c.passed, "detail": c.detail,
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(Outcome {
                command: "verify",
                inputs: json!({ "suite": suite, "seed": seed }),
                text,
                result: json!({ "passed": passed, "suites": result }),
                caveats: Vec::new(),
                verdict: Some(passed),
            })
        }
    }
}

fn ranks(
    ring: RingSpec,
    what: RankKind,
    n: usize,
    k: usize,
    t: Option<usize>,
    dim: Option<usize>,
    exec: Execution,
) -> CliResult<Outcome> {
    let degrees: Vec<usize> = match t {
        Some(t) => vec![t],
        None => (0..=n / k.max(1)).collect(),
    };
    let single = |v: usize| (v.to_string(), json!({ "rank": v }));
    let table = |f: &dyn Fn(usize) -> CliResult<usize>| -> CliResult<(String, Value)> {
        if let Some(t) = t {
            return Ok(single(f(t)?));
        }
        let mut rows = Vec::new();
        let mut text = Vec::new();
        for &d in &degrees {
            let v = f(d)?;
            text.push(format!("t={d}: {v}"));
            rows.push(json!({ "t": d, "rank": v }));
        }
        Ok((text.join("\n"), json!({ "ranks": rows })))
    };
    let (text, result) = match what {
        RankKind::Lie => single(lie_submodule(ring, n).map_err(err)?.rank().map_err(err)?),
        RankKind::Gamma => single(gamma_submodule(ring, n).map_err(err)?.rank().map_err(err)?),
        RankKind::Basis => table(&|d| Ok(basis(n, k, d).len()))?,
        RankKind::Lcs => table(&|d| lcs_rank(n, k, d, ring).map_err(err))?,
        RankKind::Primitives => {
            let module = FreeModule::new(ring, dim.unwrap_or(n)).map_err(err)?;
            let q = t.unwrap_or(n);
            single(primitives_basis(module, q).map_err(err)?.rank().map_err(err)?)
        }
        RankKind::Pairing => {
            let rows: Vec<(usize, usize, bool)> = degrees
                .iter()
                .filter(|&&d| d >= 1)
                .map(|&d| {
                    let m = pairing_matrix(n, k, d).map_err(err)?;
                    Ok((d, lcs_quotient_basis(n, k, d).len(), m.is_identity()))
                })
                .collect::<CliResult<_>>()?;
            let text: Vec<String> = rows
                .iter()
                .map(|(d, c, id)| format!("t={d}: {c} brackets, identity: {id}"))
                .collect();
            let json_rows: Vec<Value> = rows
                .iter()
                .map(|(d, c, id)| json!({ "t": d, "size": c, "identity": id }))
                .collect();
            (text.join("\n"), json!({ "pairing": json_rows }))
        }
        RankKind::Natural => {
            let p = t.unwrap_or(n);
            let r = natural_maps(ring, dim.unwrap_or(n.max(p).max(1)), n, p, exec).map_err(err)?;
            (
                r.natural_rank.to_string(),
                json!({
                    "rank": r.natural_rank,
                    "place_permutation_rank": r.place_permutation_rank,
                    "permutation_equivariant_rank": r.permutation_equivariant_rank,
                    "matches_place_permutations": r.matches_place_permutations,
                }),
            )
        }
    };
    Ok(Outcome {
        command: "ranks",
        inputs: json!({ "ring": ring.to_string(), "what": format!("{what:?}").to_lowercase(), "n": n, "k": k, "t": t, "dim": dim }),
        text,
        result,
        caveats: Vec::new(),
        verdict: None,
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Basis { .. } => "basis",
        Command::Expand { .. } => "expand",
        Command::Eq { .. } => "eq",
        Command::Member { .. } => "member",
        Command::Lift { .. } => "lift",
        Command::Eval { .. } => "eval",
        Command::Ranks { .. } => "ranks",
        Command::Verify { .. } => "verify",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let caveats: Vec<&str> = out.caveats.iter().map(Caveat::name).collect();
            if cli.json {
                let doc = json!({
                    "command": out.command,
                    "inputs": out.inputs,
                    "result": out.result,
                    "caveats": caveats,
                });
                println!("{doc}");
            } else {
                println!("{}", out.text);
                for c in &caveats {
                    eprintln!("caveat: {c}");
                }
            }
            match out.verdict {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(msg) => {
            if cli.json {
                let doc = json!({
                    "command": command_name(&cli.command),
                    "inputs": Value::Null,
                    "result": { "error": msg },
                    "caveats": Vec::<&str>::new(),
                });
                println!("{doc}");
            }
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
