//! Subcommand implementations.

use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use ternary_invariants::expr::Expr;
use ternary_invariants::harmonic::{
    equivariant_spanning_set, harmonic_decompose, scale_table, slice_basis, ScaleEntry,
};
use ternary_invariants::invariants::{
    equivalent, evaluate_invariants, quad_invariants, reconstruct as reconstruct_form,
};
use ternary_invariants::rewrite::{quartic_aux_rewrite, rewrite_invariant, verify_rewrite_seeded};
use ternary_invariants::{
    EquivariantSignature, InvariantError, InvariantVector, QuadraticInvariants, RationalExpr,
    Relation, TernaryForm,
};

use crate::error::CliError;
use crate::mesh::{write_mtl, MeshSample};

/// Appends a line to a command's output buffer.
macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {{
        let _ = writeln!($out, $($arg)*);
    }};
}

/// Reads a form from JSON (`{"degree", "coefficients"}`) or from polynomial text.
pub fn load_form(path: &Path, expected_degree: Option<u32>) -> Result<TernaryForm, CliError> {
    let text = read(path)?;
    let form = if text.trim_start().starts_with('{') {
        serde_json::from_str(&text).map_err(|e| input(path, e))?
    } else {
        TernaryForm::parse(text.trim()).map_err(|e| input(path, e))?
    };
    if let Some(d) = expected_degree {
        if d != form.degree() {
            return Err(CliError::Usage(format!(
                "{}: --degree {d} does not match the form's degree {}",
                path.display(),
                form.degree()
            )));
        }
    }
    Ok(form)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn input(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Input {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

fn print_json(out: &mut String, value: &impl Serialize) -> Result<(), CliError> {
    let s = serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(e.to_string()))?;
    emit!(out, "{s}");
    Ok(())
}

fn check_form_degree(degree: u32) -> Result<u32, CliError> {
    if degree < 4 || degree % 2 == 1 {
        return Err(CliError::Usage(format!(
            "degree must be even and at least 4, got {degree}"
        )));
    }
    Ok(degree / 2)
}

#[derive(Serialize)]
struct BasisElement<'a> {
    i: usize,
    j: usize,
    zeta: u8,
    xi: u8,
    form: &'a TernaryForm,
}

#[derive(Serialize)]
struct BasisDump<'a> {
    degree: u32,
    family: &'static str,
    signature: &'a EquivariantSignature,
    elements: Vec<BasisElement<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    relation: Option<Relation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    independent: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scale_table: Option<Vec<ScaleEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    w_infinity: Option<&'a TernaryForm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quadratic_index: Option<usize>,
}

fn elements<'a>(
    triples: &'a [[TernaryForm; 3]],
    sig: &EquivariantSignature,
) -> Vec<BasisElement<'a>> {
    let mut out = Vec::new();
    for (j, triple) in triples.iter().enumerate() {
        let (zeta, xi) = sig.get(j);
        for (i, form) in triple.iter().enumerate() {
            out.push(BasisElement {
                i: i + 1,
                j,
                zeta,
                xi,
                form,
            });
        }
    }
    out
}

pub fn basis(degree: u32, slice: bool, text: bool, out: &mut String) -> Result<(), CliError> {
    let d = check_form_degree(degree)?;
    let harmonic = |e| CliError::Invariant(InvariantError::Harmonic(e));
    let spanning;
    let basis;
    let dump = if slice {
        basis = slice_basis(d).map_err(harmonic)?;
        BasisDump {
            degree,
            family: "w",
            signature: &basis.signature,
            elements: elements(&basis.elements, &basis.signature),
            relation: None,
            independent: None,
            scale_table: None,
            w_infinity: basis.w_infinity.as_ref(),
            quadratic_index: Some(basis.quadratic_index),
        }
    } else {
        spanning = equivariant_spanning_set(d).map_err(harmonic)?;
        BasisDump {
            degree,
            family: "u",
            signature: &spanning.signature,
            elements: elements(&spanning.elements, &spanning.signature),
            relation: Some(spanning.relation),
            independent: Some(spanning.independent().len()),
            scale_table: if d <= 4 {
                Some(scale_table(d).map_err(harmonic)?)
            } else {
                None
            },
            w_infinity: None,
            quadratic_index: None,
        }
    };
    if !text {
        return print_json(out, &dump);
    }
    emit!(
        out,
        "{} family, degree {degree}, {} elements",
        dump.family,
        dump.elements.len()
    );
    if let (Some(r), Some(n)) = (dump.relation, dump.independent) {
        emit!(out, "relation {r:?}, {n} independent");
    }
    if let Some(q) = dump.quadratic_index {
        emit!(out, "quadratic block j = {q}");
    }
    for e in &dump.elements {
        emit!(
            out,
            "{}[{},{}] (zeta {}, xi {}) = {}",
            dump.family,
            e.i,
            e.j,
            e.zeta,
            e.xi,
            e.form
        );
    }
    if let Some(w) = dump.w_infinity {
        emit!(out, "w[inf] = {w}");
    }
    for s in dump.scale_table.iter().flatten() {
        emit!(out, "scale u[{},{}] = {}", s.i, s.j, s.scale);
    }
    Ok(())
}

pub fn decompose(
    path: &Path,
    degree: Option<u32>,
    text: bool,
    out: &mut String,
) -> Result<(), CliError> {
    let form = load_form(path, degree)?;
    let h =
        harmonic_decompose(&form).map_err(|e| CliError::Invariant(InvariantError::Harmonic(e)))?;
    if !text {
        return print_json(out, &h);
    }
    let d = h.half_degree;
    for (n, hk) in h.harmonics.iter().enumerate() {
        emit!(out, "h{} = {hk}", 2 * (d - n as u32));
    }
    emit!(out, "v' = {}", h.quadratic_part);
    Ok(())
}

/// Invariants of one form: exact `e1, e2, e3` in degree 2, the generators otherwise.
#[derive(Serialize)]
#[serde(untagged)]
enum Evaluation {
    Quadratic {
        degree: u32,
        #[serde(flatten)]
        values: QuadraticInvariants,
    },
    General(InvariantVector<f64>),
}

impl Evaluation {
    fn of(form: &TernaryForm, tol: f64) -> Result<Self, CliError> {
        if form.degree() == 2 {
            let values = quad_invariants(form)?;
            return Ok(Evaluation::Quadratic { degree: 2, values });
        }
        Ok(Evaluation::General(evaluate_invariants(form, tol)?))
    }

    fn print_text(&self, out: &mut String) {
        match self {
            Evaluation::Quadratic { values, .. } => {
                emit!(out, "e1 = {}", values.e1);
                emit!(out, "e2 = {}", values.e2);
                emit!(out, "e3 = {}", values.e3);
            }
            Evaluation::General(mu) => {
                for (i, x) in mu.p0.iter().enumerate() {
                    emit!(out, "p[{}][0] = {x:e}", i + 1);
                }
                for (j, t) in mu.p.iter().enumerate() {
                    for (i, x) in t.iter().enumerate() {
                        emit!(out, "p[{}][{}] = {x:e}", i + 1, j + 1);
                    }
                }
                if let Some(x) = mu.p_infinity {
                    emit!(out, "p[inf] = {x:e}");
                }
            }
        }
    }
}

#[derive(Serialize)]
struct FileReport {
    file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariants: Option<Evaluation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip)]
    code: u8,
}

pub fn invariants(
    path: &Path,
    degree: Option<u32>,
    tol: f64,
    text: bool,
    out: &mut String,
) -> Result<(), CliError> {
    if !path.is_dir() {
        let e = Evaluation::of(&load_form(path, degree)?, tol)?;
        if text {
            e.print_text(out);
            return Ok(());
        }
        return print_json(out, &e);
    }
    let mut files: Vec<PathBuf> = fs::read_dir(path)
        .map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    let reports: Vec<FileReport> = files
        .par_iter()
        .map(|f| {
            let file = f.display().to_string();
            match load_form(f, degree).and_then(|v| Evaluation::of(&v, tol)) {
                Ok(e) => FileReport {
                    file,
                    invariants: Some(e),
                    error: None,
                    code: 0,
                },
                Err(e) => FileReport {
                    file,
                    invariants: None,
                    error: Some(e.to_string()),
                    code: e.exit_code(),
                },
            }
        })
        .collect();
    if text {
        for r in &reports {
            emit!(out, "# {}", r.file);
            match (&r.invariants, &r.error) {
                (Some(e), _) => e.print_text(out),
                (None, Some(msg)) => emit!(out, "error: {msg}"),
                (None, None) => {}
            }
        }
    } else {
        print_json(out, &reports)?;
    }
    let failed: Vec<&FileReport> = reports.iter().filter(|r| r.code != 0).collect();
    match failed.first() {
        None => Ok(()),
        Some(first) => Err(CliError::Reported(
            format!(
                "{} of {} files failed; first: {}",
                failed.len(),
                reports.len(),
                first.file
            ),
            first.code,
        )),
    }
}

pub fn equiv(
    first: &Path,
    second: &Path,
    tol: f64,
    json: bool,
    out: &mut String,
) -> Result<(), CliError> {
    let v = load_form(first, None)?;
    let w = load_form(second, Some(v.degree()))?;
    let verdict = equivalent(&v, &w, tol)?;
    if json {
        #[derive(Serialize)]
        struct Verdict {
            verdict: ternary_invariants::Equivalence,
        }
        return print_json(out, &Verdict { verdict });
    }
    let s = serde_json::to_value(verdict).map_err(|e| CliError::Usage(e.to_string()))?;
    emit!(out, "{}", s.as_str().unwrap_or_default());
    Ok(())
}

pub fn reconstruct(path: &Path, text: bool, out: &mut String) -> Result<(), CliError> {
    let mu: InvariantVector<f64> =
        serde_json::from_str(&read(path)?).map_err(|e| input(path, e))?;
    let form = reconstruct_form(&mu)?;
    if text {
        emit!(out, "{form}");
        return Ok(());
    }
    print_json(out, &form)
}

pub struct RewriteOptions<'a> {
    pub text: &'a str,
    pub degree: u32,
    pub aux: bool,
    pub compact: bool,
    pub samples: usize,
    pub seed: u64,
    pub json: bool,
}

#[derive(Serialize)]
struct RewriteReport {
    input: String,
    expression: String,
    compact: String,
    ast: Expr,
    rule_applications: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

pub fn rewrite(o: &RewriteOptions, out: &mut String) -> Result<(), CliError> {
    let d = check_form_degree(o.degree)?;
    if o.aux && d != 2 {
        return Err(CliError::Usage("--aux applies to degree 4 only".into()));
    }
    let e = RationalExpr::parse_for_degree(o.text, d)?;
    let r = if o.aux {
        quartic_aux_rewrite(&e)?
    } else {
        rewrite_invariant(&e, d)?
    };
    let verified =
        (o.samples > 0).then(|| verify_rewrite_seeded(&e, &r.expr, d, o.samples, o.seed));
    if o.json {
        print_json(
            out,
            &RewriteReport {
                input: e.to_string(),
                expression: r.expr.to_string(),
                compact: r.compact.to_string(),
                ast: r.expr.to_expr(),
                rule_applications: r.rule_applications,
                verified,
            },
        )?;
    } else {
        emit!(out, "{}", if o.compact { &r.compact } else { &r.expr });
    }
    match verified {
        Some(false) => Err(CliError::Verification(format!(
            "rewrite disagrees with the input at random slice points (seed {:#x})",
            o.seed
        ))),
        _ => Ok(()),
    }
}

pub fn render(path: &Path, subdiv: u32, output: &Path) -> Result<(), CliError> {
    let form = load_form(path, None)?;
    let mesh = MeshSample::sample(&form.to_numeric(), subdiv);
    let mtl = output.with_extension("mtl");
    let io_err = |p: &Path| {
        let p = p.to_path_buf();
        move |source| CliError::Io { path: p, source }
    };
    let mut w = BufWriter::new(File::create(&mtl).map_err(io_err(&mtl))?);
    write_mtl(&mut w)
        .and_then(|_| w.flush())
        .map_err(io_err(&mtl))?;
    let lib = mtl.file_name().map(|n| n.to_string_lossy().into_owned());
    let mut w = BufWriter::new(File::create(output).map_err(io_err(output))?);
    mesh.write_obj(&mut w, lib.as_deref())
        .and_then(|_| w.flush())
        .map_err(io_err(output))?;
    eprintln!(
        "wrote {} vertices and {} faces to {}",
        mesh.vertices.len(),
        mesh.faces.len(),
        output.display()
    );
    Ok(())
}
