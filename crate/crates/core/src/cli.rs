//! The `qform` command-line front end.
//!
//! Every command reads a form document (JSON, see `docs/form-spec.schema.json`)
//! and writes one JSON document with sorted keys, or a flat table with
//! `--format table`.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldDesc, Scalar};
use crate::form::{diagonalize, invariants, QuadraticForm};
use crate::motive::{
    affine_motive_equiv, motivic_equiv_projective, phi_affine_reduced, phi_projective,
    recover_invariants, Verdict,
};
use crate::oracle::{bf_witt_index, exhaustive_theorem_check, SearchBudget};
use crate::witt::{affine_shells, profile, shells, witt_decompose, ExtensionFamily};

const FAMILY_HELP: &str = "Extension family members, comma separated (Q, R, Q_p, F_p^d, kbar). \
Defaults: Q -> {Q, R, Q_2, Q_p for p dividing an entry, kbar}; F_p -> degrees {1, 2}; \
R -> {R, kbar}; Q_p -> {Q_p, kbar}.";

#[derive(Debug, Parser)]
#[command(name = "qform", version, about = "Quadratic forms, Witt indices and their Tate-motive invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, clap::Args)]
pub struct FormArgs {
    /// Form document as JSON; read from stdin when absent or `-`.
    #[arg(long)]
    pub form: Option<String>,
    #[arg(long, help = FAMILY_HELP, value_delimiter = ',')]
    pub family: Option<Vec<String>>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// dim, det, det±, Hasse invariants, signature, discriminant.
    Invariants(FormArgs),
    /// Witt index and anisotropic kernel.
    Witt(FormArgs),
    /// (i_W(q_E), i_W(q'_E)) over the family.
    Profile(FormArgs),
    /// Shells of the projective quadric and of the affine chain.
    Shells(FormArgs),
    /// Φ-line of the reduced affine quadric motive, with the recovered invariants.
    Phi {
        #[command(flatten)]
        args: FormArgs,
        /// Restrict to one member.
        #[arg(long)]
        member: Option<String>,
    },
    /// Φ of the projective quadric motive per member.
    Motive {
        #[command(flatten)]
        args: FormArgs,
        #[arg(long)]
        member: Option<String>,
    },
    /// Projective motivic equivalence of two forms.
    Equiv {
        #[command(flatten)]
        args: FormArgs,
        /// Second form document.
        #[arg(long)]
        other: String,
    },
    /// Isometry from affine-quadric motives.
    AffineEquiv {
        #[command(flatten)]
        args: FormArgs,
        #[arg(long)]
        other: String,
    },
    /// Oracle agreement and the exhaustive finite-field check.
    Selftest {
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
    },
}

/// Field part of a form document.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
}

/// A form as read from JSON: exactly one of `diag` and `gram`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpecDocument {
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diag: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Vec<String>>,
}

impl FormSpecDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("form document: {e}")))
    }

    /// The document describing `q` by its diagonal.
    pub fn from_form(q: &QuadraticForm) -> Self {
        let field = match q.field() {
            FieldDesc::Rationals => FieldSpec { kind: "Q".into(), p: None, degree: None },
            FieldDesc::Reals => FieldSpec { kind: "R".into(), p: None, degree: None },
            FieldDesc::Padic(p) => FieldSpec { kind: "Qp".into(), p: Some(p), degree: None },
            FieldDesc::Finite { p, degree } => FieldSpec {
                kind: "Fp".into(),
                p: Some(p),
                degree: (degree > 1).then_some(degree),
            },
            FieldDesc::AlgebraicClosure => FieldSpec { kind: "kbar".into(), p: None, degree: None },
        };
        FormSpecDocument {
            field,
            diag: Some(q.diag().iter().map(|a| Value::String(a.to_string())).collect()),
            gram: None,
            family: None,
        }
    }

    pub fn field(&self) -> Result<FieldDesc> {
        let need_p = || {
            self.field.p.ok_or_else(|| Error::Parse(format!("field kind {} needs \"p\"", self.field.kind)))
        };
        match self.field.kind.as_str() {
            "Q" => Ok(FieldDesc::Rationals),
            "R" => Ok(FieldDesc::Reals),
            "Qp" => FieldDesc::padic(need_p()?),
            "Fp" => FieldDesc::finite_extension(need_p()?, self.field.degree.unwrap_or(1)),
            other => Err(Error::Parse(format!("unknown field kind `{other}`"))),
        }
    }

    pub fn form(&self) -> Result<QuadraticForm> {
        let field = self.field()?;
        match (&self.diag, &self.gram) {
            (Some(d), None) => QuadraticForm::new(field, d.iter().map(scalar).collect::<Result<_>>()?),
            (None, Some(g)) => {
                let gram = g
                    .iter()
                    .map(|row| row.iter().map(scalar).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                diagonalize(&gram, field)
            }
            _ => Err(Error::Parse("exactly one of \"diag\" and \"gram\" is required".into())),
        }
    }
}

fn scalar(v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string().parse(),
        Value::String(s) => s.parse(),
        other => Err(Error::Parse(format!("entry {other} is not an integer or \"a/b\" string"))),
    }
}

fn read_document(arg: Option<&str>) -> Result<String> {
    match arg {
        Some(text) if text != "-" => Ok(text.to_string()),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
            Ok(buf)
        }
    }
}

struct Loaded {
    form: QuadraticForm,
    family: ExtensionFamily,
}

fn family_for(names: Option<&Vec<String>>, forms: &[&QuadraticForm]) -> Result<ExtensionFamily> {
    match names {
        None => ExtensionFamily::default_for(forms),
        Some(names) => {
            let members = names.iter().map(|s| FieldDesc::parse_member(s)).collect::<Result<Vec<_>>>()?;
            ExtensionFamily::new(forms[0].field(), members)
        }
    }
}

fn load(args: &FormArgs, text: &str) -> Result<Loaded> {
    let doc = FormSpecDocument::parse(text)?;
    let form = doc.form()?;
    let names = args.family.as_ref().or(doc.family.as_ref());
    let family = family_for(names, &[&form])?;
    Ok(Loaded { form, family })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn members_to_run(fam: &ExtensionFamily, member: Option<&String>) -> Result<Vec<FieldDesc>> {
    match member {
        None => Ok(fam.members().to_vec()),
        Some(m) => {
            let m = FieldDesc::parse_member(m)?;
            if !m.extends(&fam.base()) {
                return Err(Error::UnknownExtension(m.to_string(), fam.base().to_string()));
            }
            Ok(vec![m])
        }
    }
}

/// Runs a parsed command, returning the exit code and the output document.
pub fn run(cli: &Cli) -> (i32, Value) {
    match execute(&cli.command) {
        Ok((code, doc)) => (code, doc),
        Err(e) => {
            let code = if matches!(e, Error::InvariantViolation(_)) { 3 } else { 2 };
            (code, json!({ "error": e.to_string() }))
        }
    }
}

fn execute(command: &Command) -> Result<(i32, Value)> {
    match command {
        Command::Invariants(a) => {
            let l = load(a, &read_document(a.form.as_deref())?)?;
            Ok((0, to_value(&invariants(&l.form))))
        }
        Command::Witt(a) => {
            let l = load(a, &read_document(a.form.as_deref())?)?;
            let w = witt_decompose(&l.form);
            Ok((
                0,
                json!({
                    "witt_index": w.witt_index,
                    "kernel_dim": w.kernel.dim(),
                    "kernel": to_value(&FormSpecDocument::from_form(&w.kernel)),
                    "kernel_invariants": to_value(&w.kernel_invariants),
                }),
            ))
        }
        Command::Profile(a) => {
            let l = load(a, &read_document(a.form.as_deref())?)?;
            let p = profile(&l.form, &l.family)?;
            Ok((
                0,
                json!({
                    "family": to_value(&l.family.members()),
                    "profile": to_value(&p.entries),
                    "splitting_pattern": p.splitting_pattern(),
                }),
            ))
        }
        Command::Shells(a) => {
            let l = load(a, &read_document(a.form.as_deref())?)?;
            Ok((
                0,
                json!({
                    "family": to_value(&l.family.members()),
                    "shells": to_value(&shells(&l.form, &l.family)?.shells),
                    "affine": to_value(&affine_shells(&l.form, &l.family)?),
                }),
            ))
        }
        Command::Phi { args, member } => {
            let l = load(args, &read_document(args.form.as_deref())?)?;
            let split = l.family.split_member().expect("validated family has a split member");
            let split_line = phi_affine_reduced(&l.form, &split)?;
            let rows = members_to_run(&l.family, member.as_ref())?
                .into_iter()
                .map(|m| {
                    let line = phi_affine_reduced(&l.form, &m)?;
                    let rec = recover_invariants(split_line, line)?;
                    Ok(json!({
                        "member": m.to_string(),
                        "line": to_value(&line),
                        "text": line.to_string(),
                        "recovered": to_value(&rec),
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((0, json!({ "family": to_value(&l.family.members()), "lines": rows })))
        }
        Command::Motive { args, member } => {
            let l = load(args, &read_document(args.form.as_deref())?)?;
            let rows = members_to_run(&l.family, member.as_ref())?
                .into_iter()
                .map(|m| {
                    let space = phi_projective(&l.form, &m)?;
                    Ok(json!({
                        "member": m.to_string(),
                        "lines": to_value(&space.lines()),
                        "rank": space.rank(),
                        "text": space.to_string(),
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((0, json!({ "family": to_value(&l.family.members()), "motives": rows })))
        }
        Command::Equiv { args, other } | Command::AffineEquiv { args, other } => {
            let first = FormSpecDocument::parse(&read_document(args.form.as_deref())?)?;
            let second = FormSpecDocument::parse(other)?;
            let (q, p) = (first.form()?, second.form()?);
            let names = args.family.as_ref().or(first.family.as_ref());
            let fam = family_for(names, &[&q, &p])?;
            let verdict = if matches!(command, Command::Equiv { .. }) {
                motivic_equiv_projective(&q, &p, &fam)?
            } else {
                affine_motive_equiv(&q, &p, &fam)?
            };
            let code = if matches!(verdict, Verdict::Distinguished { .. }) { 1 } else { 0 };
            Ok((code, json!({ "family": to_value(&fam.members()), "result": to_value(&verdict) })))
        }
        Command::Selftest { p, max_dim } => selftest(*p, *max_dim),
    }
}

fn selftest(p: u64, max_dim: usize) -> Result<(i32, Value)> {
    let budget = SearchBudget::default();
    let field = FieldDesc::finite(p)?;
    let mut checked = 0usize;
    let mut disagreements = Vec::new();
    for dim in 0..=max_dim.min(4) {
        let mut entries = vec![1i64; dim];
        loop {
            let q = QuadraticForm::from_ints(field, &entries)?;
            checked += 1;
            let (lib, bf) = (witt_decompose(&q).witt_index, bf_witt_index(&q, &budget)?);
            if lib != bf {
                disagreements.push(format!("{q}: engine {lib}, brute force {bf}"));
            }
            // Next non-decreasing tuple with entries in 1..p.
            let Some(i) = (0..dim).rev().find(|&i| entries[i] < p as i64 - 1) else { break };
            let v = entries[i] + 1;
            entries[i..].iter_mut().for_each(|x| *x = v);
        }
    }
    let report = exhaustive_theorem_check(p, max_dim)?;
    let ok = disagreements.is_empty() && report.holds();
    let doc = json!({
        "oracle_agreement": { "forms": checked, "disagreements": disagreements },
        "exhaustive": to_value(&report),
        "ok": ok,
    });
    Ok((if ok { 0 } else { 3 }, doc))
}

/// One `path<TAB>value` row per scalar leaf.
pub fn render_table(doc: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&p, x, out);
                }
            }
            Value::Array(a) if !a.is_empty() => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            Value::String(s) => out.push_str(&format!("{prefix}\t{s}\n")),
            other => out.push_str(&format!("{prefix}\t{other}\n")),
        }
    }
    let mut out = String::new();
    walk("", doc, &mut out);
    out
}

pub fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Table => render_table(doc),
    }
}

/// Entry point shared by the binary: parse, run, emit, return the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (code, doc) = run(&cli);
    let text = render(&doc, cli.format);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("qform: cannot write output: {e}");
        return 2;
    }
    if code == 2 || code == 3 {
        if let Some(msg) = doc.get("error").and_then(Value::as_str) {
            eprintln!("qform: {msg}");
        }
    }
    code
}
