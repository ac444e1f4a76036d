use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use maxcomm::algebra::{laffey_bound, radical};
use maxcomm::centralizer::{commutant, is_maximal_commutative};
use maxcomm::error::{AlgebraError, CentralizerError, NormalFormError};
use maxcomm::io::{matrix_to_json, parse_algebra_doc, parse_matrices_doc, parse_rep_doc, parse_triple_doc};
use maxcomm::normal_form::{
    appendix_replay, appendix_replay_zero_nx, pencil_cubic, triple_normal_form, AppendixReport,
};
use maxcomm::verify::{
    case_by_id, case_table, laffey_note, render_case_text, render_text, verify_all, verify_case, Verdict,
    VerifyOptions, DEFAULT_INSTANCES, DEFAULT_VERIFY_ATTEMPTS,
};
use maxcomm::{Field, FieldElement, Matrix, ModuleRep};

#[derive(Parser)]
#[command(
    name = "maxcomm",
    version,
    about = "Exact commutant and endomorphism computations for commutative matrix algebras"
)]
struct Cli {
    /// Coefficient field, `Q` or `fp:<p>`. Overrides the field named in input files.
    #[arg(long, global = true, value_parser = parse_field_arg)]
    field: Option<Field>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long, env = "MAXCOMM_SEED", default_value_t = 0)]
    seed: u64,

    /// Sampled modules per (class, filtration) pair.
    #[arg(long, default_value_t = DEFAULT_INSTANCES)]
    instances: usize,

    /// Sampler attempts per instance.
    #[arg(long, default_value_t = DEFAULT_VERIFY_ATTEMPTS)]
    attempts: u64,

    /// Include wall-clock times in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Basis of the commutant of a list of matrices.
    Centralizer { file: PathBuf },
    /// Whether the algebra generated by commuting matrices is maximal commutative.
    Maximal { file: PathBuf },
    /// Jacobson radical of an algebra given by a presentation.
    Radical { file: PathBuf },
    /// Hilbert–Samuel type of a local algebra.
    HsType { file: PathBuf },
    /// Radical filtration vector of a module.
    Filtration { file: PathBuf },
    /// Socle of a module.
    Socle { file: PathBuf },
    /// Reduce a triple of 2x3 matrices to the canonical form.
    NormalForm { file: PathBuf },
    /// Replay the block computation for class 16 with filtration (2,3,1).
    AppendixReplay {
        /// Replace N_x by zero (yields a non-faithful module).
        #[arg(long)]
        zero_nx: bool,
    },
    /// Run one case of the analysis.
    VerifyCase {
        case_id: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run every case and summarize.
    VerifyAll {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Evaluate the general lower bound on dim A for M_n.
    Laffey {
        #[arg(value_parser = clap::value_parser!(u64).range(1..=1_000_000))]
        n: u64,
    },
}

fn parse_field_arg(s: &str) -> Result<Field, String> {
    s.parse::<Field>().map_err(|e| e.to_string())
}

/// What a subcommand produced.
struct Report {
    json: Value,
    text: String,
    status: u8,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, status: 0 }
    }

    fn negative(json: Value, text: String) -> Self {
        Report { json, text, status: 1 }
    }
}

/// Malformed input: reported on stderr with exit status 2.
struct Malformed(String);

impl<E: std::fmt::Display> From<E> for Malformed {
    fn from(e: E) -> Self {
        Malformed(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Malformed> {
    std::fs::read_to_string(path).map_err(|e| Malformed(format!("{}: {e}", path.display())))
}

fn with_path<T, E: std::fmt::Display>(path: &Path, r: Result<T, E>) -> Result<T, Malformed> {
    r.map_err(|e| Malformed(format!("{}: {e}", path.display())))
}

fn vector_json(v: &[FieldElement]) -> Value {
    Value::Array(v.iter().map(|e| Value::String(e.to_string())).collect())
}

fn vector_text(v: &[FieldElement]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn matrix_text(m: &Matrix, indent: &str) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{indent}[{}]", row.join(" "));
    }
    out
}

fn centralizer(path: &Path, field: Option<Field>) -> Result<Report, Malformed> {
    let doc = with_path(path, parse_matrices_doc(&read(path)?, field))?;
    let c = if doc.matrices.is_empty() {
        commutant(&[Matrix::identity(doc.field, doc.n)])
    } else {
        commutant(&doc.matrices)
    };
    let c = with_path(path, c)?;
    let mut text = format!("commutant dim = {}\n", c.dim());
    for (i, b) in c.basis().iter().enumerate() {
        let _ = writeln!(text, "basis[{i}]:");
        text.push_str(&matrix_text(b, "  "));
    }
    let json = json!({
        "field": doc.field.to_string(),
        "n": doc.n,
        "dim": c.dim(),
        "basis": c.basis().iter().map(matrix_to_json).collect::<Vec<_>>(),
    });
    Ok(Report::ok(json, text))
}

fn maximal(path: &Path, field: Option<Field>) -> Result<Report, Malformed> {
    let doc = with_path(path, parse_matrices_doc(&read(path)?, field))?;
    match is_maximal_commutative(doc.field, doc.n, &doc.matrices) {
        Ok(v) if v.maximal => Ok(Report::ok(
            json!({"maximal": true, "algebra_dim": v.algebra_dim, "commutant_dim": v.commutant_dim}),
            format!("maximal, dim {}\n", v.algebra_dim),
        )),
        Ok(v) => {
            let w = v.witness.as_ref().expect("witness when not maximal");
            let mut text = format!(
                "not maximal: algebra dim {}, commutant dim {}\nwitness (commutant basis element {}):\n",
                v.algebra_dim,
                v.commutant_dim,
                v.witness_index.unwrap_or(0)
            );
            text.push_str(&matrix_text(w, "  "));
            Ok(Report::negative(
                json!({
                    "maximal": false,
                    "algebra_dim": v.algebra_dim,
                    "commutant_dim": v.commutant_dim,
                    "witness_index": v.witness_index,
                    "witness": matrix_to_json(w),
                }),
                text,
            ))
        }
        Err(e @ CentralizerError::NotCommutative(..)) => Ok(Report::negative(
            json!({"maximal": false, "error": e.to_string()}),
            format!("not commutative: {e}\n"),
        )),
        Err(e) => Err(Malformed(format!("{}: {e}", path.display()))),
    }
}

fn radical_cmd(path: &Path, field: Option<Field>) -> Result<Report, Malformed> {
    let (_, a) = with_path(path, parse_algebra_doc(&read(path)?, field))?;
    let j = radical(&a);
    let elems: Vec<String> = j.vectors().iter().map(|v| a.format_element(v)).collect();
    let mut text = format!("radical dim = {} (algebra dim {})\n", j.dim(), a.dim());
    for e in &elems {
        let _ = writeln!(text, "  {e}");
    }
    let _ = writeln!(text, "local: {}", a.is_local());
    Ok(Report::ok(
        json!({
            "algebra_dim": a.dim(),
            "radical_dim": j.dim(),
            "local": a.is_local(),
            "basis": elems,
            "coordinates": j.vectors().iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
        }),
        text,
    ))
}

fn hs_type(path: &Path, field: Option<Field>) -> Result<Report, Malformed> {
    let (_, a) = with_path(path, parse_algebra_doc(&read(path)?, field))?;
    match a.hilbert_samuel() {
        Ok(t) => {
            let parts: Vec<String> = t.iter().map(usize::to_string).collect();
            Ok(Report::ok(
                json!({"local": true, "type": t}),
                format!("type ({})\n", parts.join(",")),
            ))
        }
        Err(e @ AlgebraError::NotLocal { .. }) => Ok(Report::negative(
            json!({"local": false, "error": e.to_string()}),
            format!("{e}\n"),
        )),
        Err(e) => Err(Malformed(format!("{}: {e}", path.display()))),
    }
}

fn load_rep(path: &Path, field: Option<Field>) -> Result<ModuleRep, Malformed> {
    let rep = with_path(path, parse_rep_doc(&read(path)?, field))?;
    if !rep.validate() {
        return Err(Malformed(format!(
            "{}: images do not satisfy the multiplication of the algebra",
            path.display()
        )));
    }
    Ok(rep)
}

fn filtration(path: &Path, field: Option<Field>) -> Result<Report, Malformed> {
    let rep = load_rep(path, field)?;
    match rep.filtration() {
        Ok(f) => Ok(Report::ok(
            json!({"filtration": f, "faithful": rep.is_faithful(), "n": rep.n()}),
            format!("filtration {f}\nfaithful: {}\n", rep.is_faithful()),
        )),
        Err(e) => Ok(Report::negative(json!({"error": e.to_string()}), format!("{e}\n"))),
    }
}

fn socle(path: &Path, field: Option<Field>) -> Result<Report, Malformed> {
    let rep = load_rep(path, field)?;
    match rep.socle() {
        Ok(s) => {
            let mut text = format!("socle dim = {}\n", s.dim());
            for v in s.basis() {
                let _ = writeln!(text, "  {}", vector_text(v));
            }
            Ok(Report::ok(
                json!({"dim": s.dim(), "basis": s.basis().iter().map(|v| vector_json(v)).collect::<Vec<_>>()}),
                text,
            ))
        }
        Err(e) => Ok(Report::negative(json!({"error": e.to_string()}), format!("{e}\n"))),
    }
}

fn normal_form(path: &Path, field: Option<Field>) -> Result<Report, Malformed> {
    let t = with_path(path, parse_triple_doc(&read(path)?, field))?;
    match triple_normal_form(&t) {
        Ok((canonical, change)) => {
            let mut text = String::from("normal form:\n");
            for (name, m) in ["Lx", "Ly", "Lz"].iter().zip(&canonical) {
                let _ = writeln!(text, " {name}:");
                text.push_str(&matrix_text(m, "  "));
            }
            let _ = writeln!(text, "base change P^-1 (top layer):");
            text.push_str(&matrix_text(&change.layers[0], "  "));
            let _ = writeln!(text, "base change Q (middle layer):");
            text.push_str(&matrix_text(&change.layers[1], "  "));
            let _ = writeln!(text, "generator mix G:");
            text.push_str(&matrix_text(&change.mix, "  "));
            Ok(Report::ok(
                json!({
                    "canonical": true,
                    "normal_form": canonical.iter().map(matrix_to_json).collect::<Vec<_>>(),
                    "layers": change.layers.iter().map(matrix_to_json).collect::<Vec<_>>(),
                    "mix": matrix_to_json(&change.mix),
                }),
                text,
            ))
        }
        Err(NormalFormError::Malformed(m)) => Err(Malformed(format!("{}: {m}", path.display()))),
        Err(e) => {
            let c = pencil_cubic(&t);
            Ok(Report::negative(
                json!({"canonical": false, "error": e.to_string(), "pencil_cubic": vector_json(&c)}),
                format!(
                    "{e}\npencil cubic coefficients (s^3, s^2 t, s t^2, t^3): {}\n",
                    vector_text(&c)
                ),
            ))
        }
    }
}

fn appendix(field: Field, zero_nx: bool) -> Report {
    let r: AppendixReport = if zero_nx {
        appendix_replay_zero_nx(field)
    } else {
        appendix_replay(field)
    };
    let mut text = format!("appendix replay over {}\n", r.field);
    let _ = writeln!(text, "valid module: {}", r.valid_module);
    let _ = writeln!(text, "faithful: {}", r.faithful);
    let _ = writeln!(text, "x^2 acts nontrivially: {}", r.x_squared_acts);
    for c in &r.identities {
        let _ = writeln!(text, "  {:<10} {}", c.name, if c.holds { "holds" } else { "FAILS" });
    }
    let _ = writeln!(
        text,
        "free parameters (r, t2, t3, W, U11..U22) are coordinates: {}",
        r.free_parameters
    );
    let _ = writeln!(text, "dim = {}", r.structured_dim);
    let _ = writeln!(
        text,
        "generic commutant dim = {}, same space: {}",
        r.oracle_dim, r.oracles_agree
    );
    for n in &r.notes {
        let _ = writeln!(text, "note: {n}");
    }
    let _ = writeln!(text, "{}", if r.passed() { "PASS" } else { "FAIL" });
    let status = if r.passed() { 0 } else { 1 };
    Report {
        json: serde_json::to_value(&r).expect("serializable"),
        text,
        status,
    }
}

fn options(field: Field, run: &RunArgs) -> VerifyOptions {
    VerifyOptions {
        field,
        seed: run.seed,
        instances: run.instances,
        attempts: run.attempts,
        timing: run.timing,
    }
}

fn verify_case_cmd(field: Field, id: &str, run: &RunArgs) -> Result<Report, Malformed> {
    let Some(case) = case_by_id(field, id) else {
        let ids: Vec<String> = case_table(field).into_iter().map(|c| c.id).collect();
        return Err(Malformed(format!("unknown case `{id}` (known: {})", ids.join(", "))));
    };
    let r = verify_case(&case, &options(field, run));
    let status = if r.verdict == Verdict::Pass { 0 } else { 1 };
    Ok(Report {
        json: serde_json::to_value(&r).expect("serializable"),
        text: render_case_text(&r),
        status,
    })
}

fn verify_all_cmd(field: Field, run: &RunArgs) -> Report {
    let r = verify_all(&options(field, run));
    let status = if r.summary.all_pass { 0 } else { 1 };
    Report {
        json: serde_json::to_value(&r).expect("serializable"),
        text: render_text(&r),
        status,
    }
}

fn laffey(n: u64) -> Report {
    let b = laffey_bound(n);
    let mut text = format!("{} ≈ {:.4}\n", b.expression, b.approximation);
    let _ = writeln!(text, "implied bound: dim A ≥ {}", b.implied_min_dim);
    let note = (n == 6).then(|| laffey_note(&b));
    if let Some(note) = &note {
        let _ = writeln!(text, "note: {note}");
    }
    let mut json = serde_json::to_value(&b).expect("serializable");
    if let Some(note) = note {
        json["note"] = Value::String(note);
    }
    Report::ok(json, text)
}

fn run(cli: &Cli) -> Result<Report, Malformed> {
    let field = cli.field;
    let default_field = field.unwrap_or(Field::Rationals);
    match &cli.command {
        Command::Centralizer { file } => centralizer(file, field),
        Command::Maximal { file } => maximal(file, field),
        Command::Radical { file } => radical_cmd(file, field),
        Command::HsType { file } => hs_type(file, field),
        Command::Filtration { file } => filtration(file, field),
        Command::Socle { file } => socle(file, field),
        Command::NormalForm { file } => normal_form(file, field),
        Command::AppendixReplay { zero_nx } => Ok(appendix(default_field, *zero_nx)),
        Command::VerifyCase { case_id, run } => verify_case_cmd(default_field, case_id, run),
        Command::VerifyAll { run } => Ok(verify_all_cmd(default_field, run)),
        Command::Laffey { n } => Ok(laffey(*n)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(Field::Prime(p)) = cli.field {
        eprintln!(
            "warning: computing over F_{p}; the case analysis is stated for fields of characteristic 0 \
             and results in small characteristic may differ"
        );
    }
    let report = match run(&cli) {
        Ok(r) => r,
        Err(Malformed(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let body = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => report.text,
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(report.status)
}
