//! `twisted`: command-line front end for twisted-core.
//!
//! Exit status: 0 on success, 1 on a domain error or a failed check,
//! 2 on a usage error. `THREADS` caps the worker pool for sweeps.

use std::fmt::Write as _;
use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use twisted_core::basis::SignedBasis;
use twisted_core::certificates::{
    certify_all_generators, certify_generator_commutator, certify_negroot_split, certify_normal_closure, level_assignments,
    parse_certificates, verify_certificate, Certificate,
};
use twisted_core::commutator::{commutator_agrees, commutator_closed_form};
use twisted_core::congruence::{kernel_factor_utv, level_of_word, torus_level_test, u_factor, v_factor};
use twisted_core::elements::{conj_by_w, conjugation_holds};
use twisted_core::fold::{ClassId, Folded};
use twisted_core::rep::{Rep, RepKind};
use twisted_core::ring::conditions::check_conditions;
use twisted_core::sweep::{commutator_sweep, conjugation_sweep};
use twisted_core::word::{evaluate, param_strings, parse_word, Letter, Node, Param, Word};
use twisted_core::{Error, Ring, ThetaIdeal};

#[derive(Parser)]
#[command(name = "twisted", version, about = "Exact computation in twisted Chevalley groups over finite rings")]
struct Cli {
    /// Emit JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum RepArg {
    Adjoint,
    Natural,
}

impl RepArg {
    fn kind(self) -> RepKind {
        match self {
            RepArg::Adjoint => RepKind::Adjoint,
            RepArg::Natural => RepKind::Natural,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepKind {
    Commutators,
    Conjugation,
    Certificates,
}

#[derive(Subcommand)]
enum Cmd {
    /// Class table of the folded root system.
    Fold { system: String, order: String },
    /// Signs `eps_a` and structure constants of the Chevalley basis.
    Basis { system: String, order: String },
    /// Closed form of `[x_[a](t), x_[b](u)]`, checked against matrices.
    Comm {
        system: String,
        order: String,
        ring: String,
        class_a: String,
        t: String,
        class_b: String,
        u: String,
        #[arg(long, value_enum, default_value = "adjoint")]
        rep: RepArg,
    },
    /// Closed form of `w_[a](t) L w_[a](t)^-1` for a letter `L`.
    Conj {
        system: String,
        order: String,
        ring: String,
        class_a: String,
        t: String,
        /// Target letter, e.g. `(x [1,0,0] 1+x)`.
        letter: String,
        #[arg(long, value_enum, default_value = "adjoint")]
        rep: RepArg,
    },
    /// Factors the matrix of a word in `U_sigma(R)` (or `U^-` with `--negative`).
    Ufactor {
        system: String,
        order: String,
        ring: String,
        word: String,
        #[arg(long)]
        negative: bool,
        #[arg(long, value_enum, default_value = "natural")]
        rep: RepArg,
    },
    /// Factors a word of the principal congruence subgroup as `U(J) T(J) U^-(J)`.
    Utv {
        system: String,
        order: String,
        ring: String,
        word: String,
        /// Generator of the level ideal (repeatable).
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        #[arg(long, value_enum, default_value = "natural")]
        rep: RepArg,
    },
    /// Level ideal of a word: the ideal generated by the entries of `pi_ad(g) - 1`.
    Level { system: String, order: String, ring: String, word: String },
    /// Emits certificates.
    Certify {
        #[command(subcommand)]
        what: CertifyCmd,
    },
    /// Verifies a certificate file over a ring, for every level assignment.
    Verify {
        file: String,
        ring: String,
        /// Generator of the level ideal (repeatable); default: the whole ring.
        #[arg(long = "gen")]
        gens: Vec<String>,
        /// Assignments per certificate beyond which a sample is used.
        #[arg(long, default_value_t = 200)]
        cap: usize,
        #[arg(long, value_enum, default_value = "adjoint")]
        rep: RepArg,
    },
    /// Batch checks of closed forms and certificates.
    Sweep {
        #[arg(value_enum)]
        kind: SweepKind,
        system: String,
        order: String,
        ring: String,
        /// Random samples per pair type when exhaustive checking is too large.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Largest number of parameter combinations checked exhaustively.
        #[arg(long, default_value_t = 6561)]
        cap: usize,
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[arg(long, value_enum, default_value = "adjoint")]
        rep: RepArg,
    },
    /// Builds a ring and reports the conditions on its maximal ideals.
    CheckRing { descriptor: String },
    /// Evaluates a word to its matrix.
    Eval {
        system: String,
        order: String,
        ring: String,
        word: String,
        #[arg(long, value_enum, default_value = "natural")]
        rep: RepArg,
    },
}

#[derive(Subcommand)]
enum CertifyCmd {
    /// Commutator certificates for `x_[a](u)`, `u` in a level.
    Generators {
        system: String,
        order: String,
        /// Only this class.
        #[arg(long)]
        class: Option<String>,
    },
    /// `x_{-[a]}(u) = [x_{-[a]-[g]}(u1), x_[g](u2)] h'`.
    Split {
        system: String,
        order: String,
        ring: String,
        class: String,
        /// Parameter `u`, comma separated for an `A2` class.
        u: String,
        companion: String,
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        #[arg(long, value_enum, default_value = "natural")]
        rep: RepArg,
    },
    /// Normal closure of `x_[a](z)` with transfer certificates.
    Closure {
        system: String,
        order: String,
        ring: String,
        class: String,
        z: String,
        #[arg(long, value_enum, default_value = "natural")]
        rep: RepArg,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
    /// A check ran and failed; the report was already printed.
    Failed,
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Domain(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(arg: &str, e: impl std::fmt::Display) -> CliResult<T> {
    Err(CliError::Usage(format!("invalid {arg}: {e}")))
}

fn ring_arg(text: &str) -> CliResult<Arc<Ring>> {
    Ring::make(text).or_else(|e| usage("ring", e))
}

fn rep_arg(system: &str, order: &str, kind: RepKind) -> CliResult<Rep> {
    let basis = SignedBasis::parse(system, order).or_else(|e| usage("system/order", e))?;
    Rep::new(basis, kind).or_else(|e| usage("representation", e))
}

fn class_arg(folded: &Folded, text: &str) -> CliResult<ClassId> {
    folded.parse_class(text).or_else(|e| usage("class", e))
}

fn word_arg(folded: &Folded, ring: &Ring, text: &str) -> CliResult<Word> {
    let w = parse_word(text, folded).or_else(|e| usage("word", e))?;
    w.instantiate(folded, ring, &|_| None).or_else(|e| usage("word", e))
}

/// `x` letter parameter for class `c` given as comma-separated expressions.
fn param_arg(folded: &Folded, ring: &Ring, c: ClassId, text: &str) -> CliResult<Param> {
    let root = folded.system().format(folded.class(c).base());
    match word_arg(folded, ring, &format!("(x {root} {text})"))? {
        Node::L(l) => Ok(l.p),
        _ => usage("parameter", text),
    }
}

fn ideal_arg(ring: &Arc<Ring>, gens: &[String]) -> CliResult<ThetaIdeal> {
    if gens.is_empty() {
        return Ok(ThetaIdeal::whole(ring));
    }
    let g = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>, _>>().or_else(|e| usage("ideal generator", e))?;
    Ok(ThetaIdeal::new(ring, &g))
}

struct Out {
    json: bool,
    text: String,
    value: Value,
}

impl Out {
    fn new(json: bool) -> Out {
        Out { json, text: String::new(), value: Value::Null }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn emit(&self) {
        let body = if self.json { serde_json::to_string_pretty(&self.value).expect("json") + "\n" } else { self.text.clone() };
        // a closed pipe (e.g. `| head`) is not an error
        let _ = std::io::stdout().lock().write_all(body.as_bytes());
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = std::env::var("THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let mut out = Out::new(cli.json);
    let r = run(cli.cmd, &mut out);
    out.emit();
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed) => ExitCode::from(1),
        Err(CliError::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd, out: &mut Out) -> CliResult<()> {
    match cmd {
        Cmd::Fold { system, order } => fold(&system, &order, out),
        Cmd::Basis { system, order } => basis(&system, &order, out),
        Cmd::Comm { system, order, ring, class_a, t, class_b, u, rep } => {
            comm(&system, &order, &ring, [&class_a, &t, &class_b, &u], rep.kind(), out)
        }
        Cmd::Conj { system, order, ring, class_a, t, letter, rep } => {
            conj(&system, &order, &ring, &class_a, &t, &letter, rep.kind(), out)
        }
        Cmd::Ufactor { system, order, ring, word, negative, rep } => {
            ufactor(&system, &order, &ring, &word, negative, rep.kind(), out)
        }
        Cmd::Utv { system, order, ring, word, gens, rep } => utv(&system, &order, &ring, &word, &gens, rep.kind(), out),
        Cmd::Level { system, order, ring, word } => {
            let rep = rep_arg(&system, &order, RepKind::Adjoint)?;
            let ring = ring_arg(&ring)?;
            let w = word_arg(rep.folded(), &ring, &word)?;
            let level = level_of_word(rep.basis(), &ring, &w)?;
            out.line(format!("level: {}", level.describe()));
            out.line(format!("size: {}", level.size()));
            out.value = json!({ "level": level.describe(), "size": level.size() });
            Ok(())
        }
        Cmd::Certify { what } => certify(what, out),
        Cmd::Verify { file, ring, gens, cap, rep } => verify(&file, &ring, &gens, cap, rep.kind(), out),
        Cmd::Sweep { kind, system, order, ring, samples, cap, gens, rep } => {
            sweep(kind, &system, &order, &ring, samples, cap, &gens, rep.kind(), out)
        }
        Cmd::CheckRing { descriptor } => {
            let ring = ring_arg(&descriptor)?;
            let report = check_conditions(&ring);
            out.line(format!("ring: {}", ring.descriptor()));
            out.line(format!("size: {}", ring.size()));
            out.line(format!("theta order: {}", ring.theta_order()));
            out.line(format!("fixed subring size: {}", ring.fixed_subring().len()));
            out.line(format!("maximal ideals: {}", report.maximal_ideals.len()));
            for m in &report.maximal_ideals {
                out.line(format!("  ({}) size {}, fixed map onto: {}", m.generators.join(", "), m.size, m.fixed_map_onto));
            }
            let opt = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
            out.line(format!("A1 fixed lifting: {}", opt(report.a1_fixed)));
            out.line(format!("A1 pair lifting: {}", opt(report.a1_pairs)));
            out.line(format!("A1 order-3 lifting: {}", opt(report.a1_order3)));
            out.line(format!("A2 condition: {}", report.a2));
            out.value = json!({ "size": ring.size(), "report": report });
            Ok(())
        }
        Cmd::Eval { system, order, ring, word, rep } => {
            let rep = rep_arg(&system, &order, rep.kind())?;
            let ring = ring_arg(&ring)?;
            let w = word_arg(rep.folded(), &ring, &word)?;
            let m = evaluate(&rep, &ring, &w)?;
            out.text.push_str(&m.dump());
            out.value = json!({ "dim": m.dim(), "rows": matrix_rows(&ring, &m) });
            Ok(())
        }
    }
}

fn matrix_rows(ring: &Ring, m: &twisted_core::matrix::Mat) -> Vec<Vec<String>> {
    (0..m.dim()).map(|i| (0..m.dim()).map(|j| ring.format(m.get(i, j))).collect()).collect()
}

fn fold(system: &str, order: &str, out: &mut Out) -> CliResult<()> {
    let folded = Folded::parse(system, order).or_else(|e| usage("system/order", e))?;
    let (long, short) = folded.length_types();
    let sys = folded.system();
    out.line(format!("system: {}", folded.name()));
    out.line(format!("folded type: {} ({})", folded.type_name(), folded.tilde_name()));
    match short {
        Some(s) => out.line(format!("long classes: {}, short classes: {}", long.label(), s.label())),
        None => out.line(format!("classes: {}", long.label())),
    }
    out.line(format!("classes: {} ({} positive)", folded.classes().len(), folded.positive_classes().len()));
    out.line("class  type   length  height  members");
    let mut rows = Vec::new();
    for c in folded.positive_classes().iter().chain(folded.negative_classes()) {
        let len = if short.is_none() { "-" } else if folded.is_long(c.id) { "long" } else { "short" };
        out.line(format!("{:<6} {:<6} {:<7} {:<7} {}", c.id.0, c.kind.label(), len, c.height, folded.format_class(c.id)));
        rows.push(json!({
            "id": c.id.0,
            "type": c.kind.label(),
            "length": len,
            "height": c.height,
            "members": c.orbit.iter().map(|&r| sys.format(r)).collect::<Vec<_>>(),
        }));
    }
    let census: Vec<Value> = folded.census().iter().map(|(t, n)| json!({ "tag": t.label(), "pairs": n })).collect();
    let census_text: Vec<String> = folded.census().iter().map(|(t, n)| format!("{}:{n}", t.label())).collect();
    out.line(format!("pair types: {}", census_text.join(" ")));
    out.value = json!({
        "system": folded.name(),
        "folded_type": folded.type_name(),
        "tilde_type": folded.tilde_name(),
        "long": long.label(),
        "short": short.map(|s| s.label()),
        "classes": rows,
        "pair_types": census,
    });
    Ok(())
}

fn basis(system: &str, order: &str, out: &mut Out) -> CliResult<()> {
    let b = SignedBasis::parse(system, order).or_else(|e| usage("system/order", e))?;
    let sys = b.sys();
    out.line(format!("system: {}", b.folded().name()));
    out.line("root eps");
    let mut eps = Vec::new();
    for r in sys.roots() {
        out.line(format!("{} {:+}", sys.format(r), b.eps(r)));
        eps.push(json!({ "root": sys.format(r), "eps": b.eps(r) }));
    }
    out.line("structure constants [X_a, X_b] = N X_(a+b), positive a < b");
    let mut ns = Vec::new();
    let pos: Vec<_> = sys.positive_roots().collect();
    for (i, &a) in pos.iter().enumerate() {
        for &c in &pos[i + 1..] {
            if let Some(s) = sys.add(a, c) {
                let n = b.n(a, c);
                out.line(format!("{} {} -> {} {:+}", sys.format(a), sys.format(c), sys.format(s), n));
                ns.push(json!({ "a": sys.format(a), "b": sys.format(c), "n": n }));
            }
        }
    }
    out.value = json!({ "system": b.folded().name(), "eps": eps, "structure_constants": ns });
    Ok(())
}

fn comm(system: &str, order: &str, ring: &str, args: [&String; 4], kind: RepKind, out: &mut Out) -> CliResult<()> {
    let rep = rep_arg(system, order, kind)?;
    let ring = ring_arg(ring)?;
    let folded = rep.folded().clone();
    let a = class_arg(&folded, args[0])?;
    let b = class_arg(&folded, args[2])?;
    let t = param_arg(&folded, &ring, a, args[1])?;
    let u = param_arg(&folded, &ring, b, args[3])?;
    let (ra, rb) = (folded.class(a).base(), folded.class(b).base());
    let cf = commutator_closed_form(rep.basis(), &ring, ra, &t, rb, &u)?;
    let ok = commutator_agrees(&rep, &ring, ra, &t, rb, &u)?;
    let w = cf.to_word();
    out.line(format!("pair type: {}", cf.pair_type.tag.label()));
    out.line(format!("factors: {}", w.format(&folded, &ring)));
    out.line(format!("oracle: {}", if ok { "ok" } else { "MISMATCH" }));
    out.value = json!({
        "pair_type": cf.pair_type.tag.label(),
        "factors": cf.factors.iter().map(|l| letter_json(&folded, &ring, l)).collect::<Vec<_>>(),
        "word": w.format(&folded, &ring),
        "oracle": ok,
    });
    if ok {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn letter_json(folded: &Folded, ring: &Ring, l: &Letter<Param>) -> Value {
    json!({ "kind": l.kind.label(), "root": folded.system().format(l.root), "param": param_strings(ring, &l.p) })
}

#[allow(clippy::too_many_arguments)]
fn conj(system: &str, order: &str, ring: &str, class_a: &str, t: &str, letter: &str, kind: RepKind, out: &mut Out) -> CliResult<()> {
    let rep = rep_arg(system, order, kind)?;
    let ring = ring_arg(ring)?;
    let folded = rep.folded().clone();
    let a = class_arg(&folded, class_a)?;
    let t = ring.parse(t).or_else(|e| usage("t", e))?;
    let Node::L(target) = word_arg(&folded, &ring, letter)? else { return usage("letter", "expected a single letter") };
    let ra = folded.class(a).base();
    let img = conj_by_w(&rep, &ring, ra, t, &target)?;
    let ok = conjugation_holds(&rep, &ring, &Word::w(ra, Param::S(t)), &target, &img)?;
    let iw = Node::L(img.clone());
    out.line(format!("image: {}", iw.format(&folded, &ring)));
    out.line(format!("oracle: {}", if ok { "ok" } else { "MISMATCH" }));
    out.value = json!({ "image": letter_json(&folded, &ring, &img), "oracle": ok });
    if ok {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn ufactor(system: &str, order: &str, ring: &str, word: &str, negative: bool, kind: RepKind, out: &mut Out) -> CliResult<()> {
    let rep = rep_arg(system, order, kind)?;
    let ring = ring_arg(ring)?;
    let folded = rep.folded().clone();
    let w = word_arg(&folded, &ring, word)?;
    let m = evaluate(&rep, &ring, &w)?;
    let f = if negative { v_factor(&rep, &ring, &m)? } else { u_factor(&rep, &ring, &m)? };
    let fw = f.to_word(&folded);
    out.line(format!("factorization: {}", fw.format(&folded, &ring)));
    out.value = json!({
        "negative": negative,
        "factors": f.nontrivial().map(|(c, p)| json!({ "class": folded.format_class(*c), "param": param_strings(&ring, p) })).collect::<Vec<_>>(),
        "word": fw.format(&folded, &ring),
    });
    Ok(())
}

fn utv(system: &str, order: &str, ring: &str, word: &str, gens: &[String], kind: RepKind, out: &mut Out) -> CliResult<()> {
    let rep = rep_arg(system, order, kind)?;
    let ring = ring_arg(ring)?;
    let ideal = ideal_arg(&ring, gens)?;
    let folded = rep.folded().clone();
    let w = word_arg(&folded, &ring, word)?;
    let m = evaluate(&rep, &ring, &w)?;
    let f = kernel_factor_utv(&rep, &ring, &m, &ideal)?;
    let (weights, roots) = torus_level_test(&rep, &ring, &f.chi, &ideal)?;
    let chi: Vec<String> = f.chi.values.iter().map(|&v| ring.format(v)).collect();
    out.line(format!("level: {}", ideal.describe()));
    out.line(format!("u: {}", f.u.to_word(&folded).format(&folded, &ring)));
    out.line(format!("chi: [{}]", chi.join(", ")));
    out.line(format!("v: {}", f.v.to_word(&folded).format(&folded, &ring)));
    out.line(format!("torus test: weights {weights}, roots {roots}"));
    out.value = json!({
        "level": ideal.describe(),
        "u": f.u.to_word(&folded).format(&folded, &ring),
        "chi": chi,
        "v": f.v.to_word(&folded).format(&folded, &ring),
        "torus_weights": weights,
        "torus_roots": roots,
    });
    Ok(())
}

fn cert_json(folded: &Folded, c: &Certificate) -> Value {
    json!({
        "system": c.system,
        "order": c.order,
        "lhs": c.lhs.format(folded),
        "rhs": c.rhs.format(folded),
        "provenance": c.provenance,
    })
}

fn certify(what: CertifyCmd, out: &mut Out) -> CliResult<()> {
    match what {
        CertifyCmd::Generators { system, order, class } => {
            let b = SignedBasis::parse(&system, &order).or_else(|e| usage("system/order", e))?;
            let folded = b.folded().clone();
            let certs = match class {
                Some(c) => vec![certify_generator_commutator(&b, class_arg(&folded, &c)?)?],
                None => certify_all_generators(&b)?,
            };
            for c in &certs {
                out.text.push_str(&c.to_text(&folded));
            }
            out.value = json!({ "certificates": certs.iter().map(|c| cert_json(&folded, c)).collect::<Vec<_>>() });
            Ok(())
        }
        CertifyCmd::Split { system, order, ring, class, u, companion, gens, rep } => {
            let rep = rep_arg(&system, &order, rep.kind())?;
            let ring = ring_arg(&ring)?;
            let ideal = ideal_arg(&ring, &gens)?;
            let folded = rep.folded().clone();
            let a = class_arg(&folded, &class)?;
            let g = class_arg(&folded, &companion)?;
            let u = param_arg(&folded, &ring, a, &u)?;
            let cert = certify_negroot_split(&rep, &ring, &ideal, a, &u, g)?;
            out.text.push_str(&cert.to_text(&folded));
            out.value = json!({ "certificates": [cert_json(&folded, &cert)] });
            Ok(())
        }
        CertifyCmd::Closure { system, order, ring, class, z, rep } => {
            let rep = rep_arg(&system, &order, rep.kind())?;
            let ring = ring_arg(&ring)?;
            let folded = rep.folded().clone();
            let a = class_arg(&folded, &class)?;
            let z = param_arg(&folded, &ring, a, &z)?;
            let nc = certify_normal_closure(&rep, &ring, a, &z)?;
            out.line(format!("# displayed ideal: {}", nc.displayed.describe()));
            out.line(format!("# reached ideal: {}", nc.reached.describe()));
            for (c, got, want) in &nc.sizes {
                out.line(format!("# class {}: {got}/{want}", folded.format_class(*c)));
            }
            out.line(format!("# complete: {}", nc.complete()));
            for c in &nc.transfers {
                out.text.push_str(&c.to_text(&folded));
            }
            out.value = json!({
                "displayed": nc.displayed.describe(),
                "reached": nc.reached.describe(),
                "complete": nc.complete(),
                "classes": nc.sizes.iter().map(|(c, g, w)| json!({ "class": folded.format_class(*c), "reached": g, "size": w })).collect::<Vec<_>>(),
                "certificates": nc.transfers.iter().map(|c| cert_json(&folded, c)).collect::<Vec<_>>(),
            });
            if nc.complete() {
                Ok(())
            } else {
                Err(CliError::Failed)
            }
        }
    }
}

fn verify(file: &str, ring: &str, gens: &[String], cap: usize, kind: RepKind, out: &mut Out) -> CliResult<()> {
    let text = std::fs::read_to_string(file).or_else(|e| usage("file", e))?;
    let certs = parse_certificates(&text).or_else(|e| usage("certificate file", e))?;
    let ring = ring_arg(ring)?;
    let ideal = ideal_arg(&ring, gens)?;
    let mut reps: Vec<((String, String), Rep)> = Vec::new();
    let mut all_ok = true;
    let mut rows = Vec::new();
    for (i, c) in certs.iter().enumerate() {
        let key = (c.system.clone(), c.order.clone());
        if !reps.iter().any(|(k, _)| *k == key) {
            reps.push((key.clone(), rep_arg(&c.system, &c.order, kind)?));
        }
        let rep = &reps.iter().find(|(k, _)| *k == key).expect("inserted").1;
        let envs = level_assignments(c, rep.folded(), &ideal, cap, 11)?;
        let mut failed = None;
        for env in &envs {
            if !verify_certificate(c, rep, &ring, env)? {
                failed = Some(env.iter().map(|(n, v)| format!("{n}={}", ring.format(*v))).collect::<Vec<_>>().join(" "));
                break;
            }
        }
        let ok = failed.is_none();
        all_ok &= ok;
        let mut line = format!("{i:>3} {} {} assignments", if ok { "ok  " } else { "FAIL" }, envs.len());
        if let Some(f) = &failed {
            let _ = write!(line, " (fails at {f})");
        }
        let _ = write!(line, " | {}", c.provenance);
        out.line(line);
        rows.push(json!({ "index": i, "ok": ok, "assignments": envs.len(), "failure": failed, "provenance": c.provenance }));
    }
    out.line(format!("verdict: {} ({} certificates)", if all_ok { "ok" } else { "FAIL" }, certs.len()));
    out.value = json!({ "ok": all_ok, "certificates": rows });
    if all_ok {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    kind: SweepKind,
    system: &str,
    order: &str,
    ring: &str,
    samples: usize,
    cap: usize,
    gens: &[String],
    rk: RepKind,
    out: &mut Out,
) -> CliResult<()> {
    let rep = rep_arg(system, order, rk)?;
    let ring = ring_arg(ring)?;
    let folded = rep.folded().clone();
    let ok = match kind {
        SweepKind::Commutators => {
            let tags = commutator_sweep(&rep, &ring, cap, samples, 7)?;
            out.line("tag    pairs  instances  mode        failures");
            for t in &tags {
                let mode = if t.exhaustive { "exhaustive" } else { "sampled" };
                out.line(format!("{:<6} {:<6} {:<10} {:<11} {}", t.tag, t.pairs, t.instances, mode, t.failures));
                if let Some(f) = &t.first_failure {
                    out.line(format!("  first failure: {f}"));
                }
            }
            let ok = tags.iter().all(|t| t.failures == 0);
            out.value = json!({ "ok": ok, "tags": tags });
            ok
        }
        SweepKind::Conjugation => {
            let r = conjugation_sweep(&rep, &ring, usize::MAX, samples.clamp(1, 16), 7)?;
            out.line(format!("class pairs: {}", r.class_pairs));
            out.line(format!("instances: {}", r.instances));
            out.line(format!("failures: {}", r.failures));
            if let Some(f) = &r.first_failure {
                out.line(format!("first failure: {f}"));
            }
            let ok = r.failures == 0;
            out.value = json!({ "ok": ok, "report": r });
            ok
        }
        SweepKind::Certificates => {
            let ideal = ideal_arg(&ring, gens)?;
            let certs = certify_all_generators(rep.basis())?;
            let mut ok = true;
            let mut rows = Vec::new();
            for c in &certs {
                let envs = level_assignments(c, &folded, &ideal, cap.min(samples.max(1)), 11)?;
                let mut good = true;
                for env in &envs {
                    good &= verify_certificate(c, &rep, &ring, env)?;
                }
                ok &= good;
                let (cl, _) = c.target(&folded).expect("single letter");
                out.line(format!("{:<24} {} {} assignments", folded.format_class(cl), if good { "ok  " } else { "FAIL" }, envs.len()));
                rows.push(json!({ "class": folded.format_class(cl), "ok": good, "assignments": envs.len() }));
            }
            out.value = json!({ "ok": ok, "level": ideal.describe(), "classes": rows });
            ok
        }
    };
    out.line(format!("verdict: {}", if ok { "ok" } else { "FAIL" }));
    if ok {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}
