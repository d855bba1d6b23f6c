//! One function per subcommand, each producing a JSON report.

use std::path::Path;

use cuntz_core::classify::{disjoint, equivalent, irreducible, permutative, SPECTRUM_TOL};
use cuntz_core::exact::Surd;
use cuntz_core::fincorr::classify;
use cuntz_core::linalg::{identity, max_abs, to_c64};
use cuntz_core::scalar::Scalar;
use cuntz_core::walsh::basis_words;
use cuntz_core::wire::{matrix_rows, pairs, MatrixWire};
use cuntz_core::{AtomicRepDescriptor, FilterBank, FiniteWord, HadamardTriple, MatrixTuple, StepFunction, WalshMatrix};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::{parse, read_input, CliError, Command, Common, Format};

type Dispatched = (Value, Option<String>, Format);

/// Longest words in the measure table of `analyze-fincorr`.
const MEASURE_TABLE_LEN: usize = 3;
/// Slice elements per cycle used for the Fourier orthogonality check.
const FOURIER_SAMPLE: usize = 8;

fn invalid(e: cuntz_core::Error) -> CliError {
    CliError::Validation(e.to_string())
}

fn value(v: impl Serialize) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn origin(p: &Path) -> String {
    p.display().to_string()
}

macro_rules! with_radicand {
    ($r:expr, $f:ident($($arg:expr),*)) => {
        match $r {
            2 => $f::<2>($($arg),*),
            3 => $f::<3>($($arg),*),
            5 => $f::<5>($($arg),*),
            6 => $f::<6>($($arg),*),
            7 => $f::<7>($($arg),*),
            r => Err(CliError::Validation(format!("--exact supports radicands 2, 3, 5, 6, 7; input needs √{r}"))),
        }
    };
}

fn no_radicand() -> CliError {
    CliError::Validation("--exact: entries are not recognisable as elements of Q(i, √R)".into())
}

fn not_representable() -> CliError {
    invalid(cuntz_core::Error::NotRepresentable("input entries".into()))
}

fn string_rows<const R: u64>(m: &DMatrix<Surd<R>>) -> Vec<Vec<String>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)].to_string()).collect()).collect()
}

fn words_up_to(n: usize, max_len: usize) -> Result<Vec<FiniteWord>, CliError> {
    let mut out = Vec::new();
    for len in 0..=max_len {
        out.extend(FiniteWord::all_of_length(n, len).map_err(invalid)?);
    }
    Ok(out)
}

pub(crate) fn dispatch(cmd: &Command) -> Result<Dispatched, CliError> {
    match cmd {
        Command::AnalyzeFincorr { input, common, cutoff, max_period } => fincorr(input, common, *cutoff, *max_period),
        Command::AnalyzeQmf { input, common, cutoff, max_period } => qmf(input, common, *cutoff, *max_period),
        Command::HadamardSpectrum { input, common, bound, depth } => hadamard(input, common, *bound, *depth),
        Command::Walsh { input, common, max_len } => walsh(input, common, *max_len),
        Command::Compare { first, second, common } => compare(first, second, common),
        Command::EncodeWord { input, lambdas, common } => encode_word(input, lambdas, common),
    }
}

fn request(subcommand: &str, inputs: &[&Path], common: &Common, extra: Value) -> Value {
    let mut r = json!({
        "subcommand": subcommand,
        "inputs": inputs.iter().map(|p| origin(p)).collect::<Vec<_>>(),
        "tol": common.tol,
        "exact": common.exact,
    });
    if let (Value::Object(r), Value::Object(extra)) = (&mut r, extra) {
        r.extend(extra);
    }
    r
}

fn fincorr(input: &Path, common: &Common, cutoff: usize, max_period: Option<usize>) -> Result<Dispatched, CliError> {
    let t: MatrixTuple = parse(&read_input(input)?, &origin(input))?;
    let req = request("analyze-fincorr", &[input], common, json!({"cutoff": cutoff, "max_period": max_period}));
    let validation = t.validate(common.tol);
    if !validation.valid {
        let report = json!({"request": req, "validation": validation});
        let msg = format!("Σ Z_l† Z_l deviates from the identity by {:.3e}", validation.deviation);
        return Ok((report, Some(msg), common.format));
    }
    let classification = classify(&t, common.tol, cutoff, max_period).map_err(invalid)?;
    let measures = words_up_to(t.alphabet_size(), MEASURE_TABLE_LEN)?
        .iter()
        .map(|w| Ok(json!({"word": w.to_string(), "measure": matrix_rows(&t.cylinder_measure(w).map_err(invalid)?)})))
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut report = json!({
        "request": req,
        "validation": validation,
        "descriptor": classification.descriptor,
        "classification": classification,
        "measure_table": measures,
    });
    if common.exact {
        let r = t.radicand_hint().ok_or_else(no_radicand)?;
        report["exact"] = with_radicand!(r, fincorr_exact(&t))?;
    }
    Ok((report, None, common.format))
}

fn fincorr_exact<const R: u64>(t: &MatrixTuple) -> Result<Value, CliError> {
    let e = t.to_exact::<R>().ok_or_else(not_representable)?;
    let measures = words_up_to(t.alphabet_size(), MEASURE_TABLE_LEN)?
        .iter()
        .map(|w| Ok(json!({"word": w.to_string(), "measure": string_rows(&e.cylinder_measure(w).map_err(invalid)?)})))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(json!({"radicand": R, "valid": e.validate(0.0).valid, "measure_table": measures}))
}

fn qmf(input: &Path, common: &Common, cutoff: usize, max_period: Option<usize>) -> Result<Dispatched, CliError> {
    let bank: FilterBank = parse(&read_input(input)?, &origin(input))?;
    let req = request("analyze-qmf", &[input], common, json!({"cutoff": cutoff, "max_period": max_period}));
    let check = bank.qmf_check(common.tol);
    if !check.ok {
        let msg = format!("QMF identity fails at {} (i, j, exponent) triples", check.violations.len());
        return Ok((json!({"request": req, "qmf": check}), Some(msg), common.format));
    }
    let certificates = bank.monomial_atom_search(common.tol);
    let certified: Vec<Value> = certificates
        .iter()
        .map(|c| {
            let mut v = value(c);
            v["verified"] = Value::Bool(bank.verify_certificate(c));
            v
        })
        .collect();
    let seed = std::iter::once(0).chain(certificates.iter().map(|c| c.d)).collect();
    let exponents = bank.invariant_exponent_set(&seed);
    let compressed = bank.compress_to_exponents(&exponents).map_err(invalid)?;
    let classification = classify(&compressed, common.tol, cutoff, max_period).map_err(invalid)?;
    let descriptor = bank.descriptor(&certificates).map_err(invalid)?;
    let agree = equivalent(&descriptor, &classification.descriptor, SPECTRUM_TOL).map_err(invalid)?;
    let mut report = json!({
        "request": req,
        "qmf": check,
        "low_pass": bank.low_pass_check(common.tol),
        "certificates": certified,
        "exponent_set": exponents,
        "classification": classification,
        "descriptor": descriptor,
        "pipelines_agree": agree,
    });
    if common.exact {
        let r = bank.radicand_hint().ok_or_else(no_radicand)?;
        report["exact"] = with_radicand!(r, qmf_exact(&bank, &descriptor))?;
    }
    Ok((report, None, common.format))
}

fn qmf_exact<const R: u64>(bank: &FilterBank, float: &AtomicRepDescriptor) -> Result<Value, CliError> {
    let e = bank.to_exact::<R>().ok_or_else(not_representable)?;
    let certificates = e.monomial_atom_search(0.0);
    let certified: Vec<Value> = certificates
        .iter()
        .map(|c| json!({"cycle": c.cycle.to_string(), "d": c.d, "lambda": c.lambda.to_string(), "verified": e.verify_certificate(c)}))
        .collect();
    let descriptor = e.descriptor(&certificates).map_err(invalid)?;
    Ok(json!({
        "radicand": R,
        "qmf": e.qmf_check(0.0).ok,
        "low_pass": e.low_pass_check(0.0),
        "certificates": certified,
        "agrees_with_float": equivalent(&descriptor, float, SPECTRUM_TOL).map_err(invalid)?,
    }))
}

#[derive(Deserialize)]
struct TripleInput {
    #[serde(rename = "R")]
    r: i64,
    #[serde(rename = "B")]
    b: Vec<i64>,
    #[serde(rename = "L")]
    l: Vec<i64>,
}

fn read_triple(input: &Path) -> Result<HadamardTriple, CliError> {
    let w: TripleInput = parse(&read_input(input)?, &origin(input))?;
    HadamardTriple::new(w.r, w.b, w.l).map_err(invalid)
}

fn hadamard(input: &Path, common: &Common, bound: i64, depth: u32) -> Result<Dispatched, CliError> {
    let triple = read_triple(input)?;
    let req = request("hadamard-spectrum", &[input], common, json!({"bound": bound, "depth": depth}));
    let check = triple.hadamard_check();
    if !check.unitary {
        let msg = format!("(1/√N)(e^(2πi b l / R)) is not unitary (defect {:.3e})", check.defect);
        return Ok((json!({"request": req, "check": check}), Some(msg), common.format));
    }
    let cycles = triple.extreme_cycle_search().map_err(invalid)?;
    let mut entries = Vec::new();
    for cycle in &cycles {
        let integer = cycle.points.iter().all(|p| p.is_integer());
        let mut entry = json!({"cycle": cycle, "integer": integer});
        if integer {
            let slice = triple.lambda_set(cycle, bound).map_err(invalid)?;
            let encodings = slice
                .elements
                .iter()
                .map(|&l| {
                    let w = triple.encode(l).map_err(invalid)?;
                    Ok(json!({"lambda": l, "word": w, "text": w.to_string()}))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let sample = &slice.elements[..slice.elements.len().min(FOURIER_SAMPLE)];
            let mut worst = 0.0f64;
            for (i, &a) in sample.iter().enumerate() {
                for &b in &sample[i + 1..] {
                    worst = worst.max(triple.fourier_orthogonality(a, b, depth));
                }
            }
            entry["slice"] = json!({"bound": slice.bound, "elements": slice.elements});
            entry["encodings"] = Value::Array(encodings);
            entry["max_fourier_overlap"] = json!(worst);
        }
        entries.push(entry);
    }
    let descriptor = triple.descriptor().map_err(invalid)?;
    let report = json!({"request": req, "check": check, "cycles": entries, "descriptor": descriptor});
    Ok((report, None, common.format))
}

#[derive(Deserialize)]
struct WalshInput {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "A")]
    a: MatrixWire,
}

fn read_walsh(input: &Path, tol: f64) -> Result<WalshMatrix, CliError> {
    let w: WalshInput = parse(&read_input(input)?, &origin(input))?;
    let entries = w
        .a
        .entries(w.n, w.n)
        .ok_or_else(|| CliError::Input(format!("{}: at A: expected a {n}×{n} matrix", origin(input), n = w.n)))?;
    WalshMatrix::new(DMatrix::from_row_slice(w.n, w.n, &entries), tol).map_err(invalid)
}

/// Largest entry of `S_i* S_j f − δ_ij f` and `Σ_i S_i S_i* f − f` over the
/// indicators `f` of the level-`level` intervals.
fn cuntz_defect<T: Scalar>(w: &WalshMatrix<T>, level: u32) -> Result<Vec<StepFunction<T>>, CliError> {
    let n = w.alphabet_size();
    let size = n.pow(level);
    let mut defects = Vec::new();
    for k in 0..size {
        let values = (0..size).map(|j| if j == k { T::one() } else { T::zero() }).collect();
        let f = StepFunction::new(n, values).map_err(invalid)?;
        let mut sum = StepFunction::constant(n, T::zero()).map_err(invalid)?;
        for i in 0..n {
            let adj = w.apply_s_adjoint(i, &f).map_err(invalid)?;
            sum = sum.sum(&w.apply_s(i, &adj).map_err(invalid)?);
            for j in 0..n {
                let v = w.apply_s_adjoint(i, &w.apply_s(j, &f).map_err(invalid)?).map_err(invalid)?;
                defects.push(if i == j { v.difference(&f) } else { v });
            }
        }
        defects.push(sum.difference(&f));
    }
    Ok(defects)
}

fn largest(defects: &[StepFunction<Complex64>]) -> f64 {
    defects.iter().flat_map(|f| f.values().iter().map(|v| v.norm())).fold(0.0, f64::max)
}

fn walsh(input: &Path, common: &Common, max_len: usize) -> Result<Dispatched, CliError> {
    let w = read_walsh(input, common.tol)?;
    let n = w.alphabet_size();
    let req = request("walsh", &[input], common, json!({"max_len": max_len}));
    let words = basis_words(n, max_len).map_err(invalid)?;
    let gram = w.gram_check(&words).map_err(invalid)?;
    let gram_deviation = max_abs(&(gram - identity::<Complex64>(words.len())));
    let level = max_len as u32 + 1;
    let cuntz = largest(&cuntz_defect(&w, level)?);
    let descriptor = w.descriptor().map_err(invalid)?;
    let compressed = classify(&w.compressed_tuple().map_err(invalid)?, common.tol, 8, None).map_err(invalid)?;
    let filters: Vec<Value> =
        w.build_filters().iter().map(|f| json!({"level": f.level(), "values": pairs(f.values())})).collect();
    let mut report = json!({
        "request": req,
        "matrix": matrix_rows(w.matrix()),
        "filters": filters,
        "basis_words": words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "gram": {"size": words.len(), "deviation": gram_deviation, "identity": gram_deviation <= common.tol},
        "cuntz_relations": {"level": level, "deviation": cuntz, "hold": cuntz <= common.tol},
        "descriptor": descriptor,
        "permutative": permutative(&descriptor, SPECTRUM_TOL),
        "equivalent_to_compressed": equivalent(&descriptor, &compressed.descriptor, SPECTRUM_TOL).map_err(invalid)?,
        "compressed_classification": compressed,
    });
    if common.exact {
        let r = w.radicand_hint().ok_or_else(no_radicand)?;
        report["exact"] = with_radicand!(r, walsh_exact(&w, &words, level))?;
    }
    Ok((report, None, common.format))
}

fn walsh_exact<const R: u64>(w: &WalshMatrix, words: &[FiniteWord], level: u32) -> Result<Value, CliError> {
    let e = w.to_exact::<R>().map_err(invalid)?;
    let gram = e.gram_check(words).map_err(invalid)?;
    let defects = cuntz_defect(&e, level)?;
    let float = w.descriptor().map_err(invalid)?;
    let exact = e.descriptor().map_err(invalid)?;
    Ok(json!({
        "radicand": R,
        "gram_identity": gram == identity::<Surd<R>>(words.len()),
        "cuntz_relations_hold": defects.iter().all(StepFunction::is_zero),
        "filters": e.build_filters().iter().map(|f| f.values().iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "agrees_with_float": equivalent(&exact, &float, SPECTRUM_TOL).map_err(invalid)? && max_abs(&(to_c64(e.matrix()) - w.matrix())) < 1e-12,
    }))
}

fn read_descriptor(path: &Path) -> Result<AtomicRepDescriptor, CliError> {
    let text = read_input(path)?;
    let v: Value = parse(&text, &origin(path))?;
    let v = match v {
        Value::Object(mut o) if o.contains_key("descriptor") => o.remove("descriptor").unwrap_or(Value::Null),
        other => other,
    };
    serde_path_to_error::deserialize(v).map_err(|e| {
        let at = e.path().to_string();
        CliError::Input(format!("{}: descriptor at {at}: {}", origin(path), e.into_inner()))
    })
}

fn compare(first: &Path, second: &Path, common: &Common) -> Result<Dispatched, CliError> {
    if first.as_os_str() == "-" && second.as_os_str() == "-" {
        return Err(CliError::Input("only one of the two inputs can be standard input".into()));
    }
    let a = read_descriptor(first)?;
    let b = read_descriptor(second)?;
    let report = json!({
        "request": request("compare", &[first, second], common, json!({})),
        "equivalent": equivalent(&a, &b, common.tol.max(SPECTRUM_TOL)).map_err(invalid)?,
        "disjoint": disjoint(&a, &b).map_err(invalid)?,
        "irreducible": [irreducible(&a), irreducible(&b)],
        "descriptors": [a, b],
    });
    Ok((report, None, common.format))
}

fn encode_word(input: &Path, lambdas: &[i64], common: &Common) -> Result<Dispatched, CliError> {
    let triple = read_triple(input)?;
    let entries: Vec<Value> = lambdas
        .iter()
        .map(|&l| match triple.encode(l) {
            Ok(w) => json!({"lambda": l, "word": w, "text": w.to_string()}),
            Err(e) => json!({"lambda": l, "error": e.to_string()}),
        })
        .collect();
    let req = request("encode-word", &[input], common, json!({"lambdas": lambdas}));
    Ok((json!({"request": req, "encodings": entries}), None, common.format))
}
