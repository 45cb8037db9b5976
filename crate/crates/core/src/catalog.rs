//! Built-in rings and loops, and the TOML spec-file format.
//!
//! A spec file looks like this:
//!
//! ```toml
//! name = "cp1"
//! n = 1
//!
//! [lattice]
//! omega = ["1"]
//! chern = [2]
//!
//! [[basis]]
//! name = "[M]"
//! degree = 2
//!
//! [[basis]]
//! name = "pt"
//! degree = 0
//!
//! [[classical]]
//! pair = ["[M]", "[M]"]
//! result = ["[M]"]
//!
//! [[classical]]
//! pair = ["[M]", "pt"]
//! result = ["pt"]
//!
//! [[quantum]]
//! gamma = [1]
//! pair = ["pt", "pt"]
//! result = ["[M]"]
//!
//! [[loop]]
//! name = "rotation"
//! maslov = 1
//! terms = [{ class = "pt", gamma = [0] }]
//! ```
//!
//! Each unordered pair is listed once; the loader fills in the mirrored
//! entry. Quantum and loop γ's are raw π₂ coordinates, projected to Γ on
//! load. Unknown keys are rejected.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::gamma::{GammaElement, GammaGroup, SphereClassLattice};
use crate::num::{format_rational, parse_rational, rat, Rational};
use crate::quantum::{
    BasisClass, ClassVector, GWTable, HomologyBasis, QhElement, RingSpec, ValidationReport, Violation, ViolationKind,
};
use crate::seidel::{LoopElement, SeidelError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown builtin `{0}` (expected cp1, cp2, cp1xcp1[:lambda] or f2-as-s2xs2[:lambda])")]
    UnknownBuiltin(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error("validation failed:\n{0}")]
    Validation(ValidationReport),
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
}

/// A ring together with its catalogued loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecBundle {
    pub spec: Arc<RingSpec>,
    pub loops: Vec<LoopElement>,
}

impl SpecBundle {
    pub fn loop_named(&self, name: &str) -> Option<&LoopElement> {
        self.loops.iter().find(|l| l.name() == name)
    }
}

pub const BUILTIN_NAMES: [&str; 4] = ["cp1", "cp2", "cp1xcp1", "f2-as-s2xs2"];

fn classes(list: &[(&str, i64)]) -> Vec<BasisClass> {
    list.iter()
        .map(|&(name, degree)| BasisClass {
            name: name.to_string(),
            degree,
        })
        .collect()
}

fn group(omega: Vec<Rational>, chern: Vec<i64>) -> Arc<GammaGroup> {
    Arc::new(GammaGroup::build(
        SphereClassLattice::new(omega, chern).expect("matching lengths"),
    ))
}

fn finish(name: &str, g: Arc<GammaGroup>, basis: HomologyBasis, table: GWTable) -> Arc<RingSpec> {
    let spec = RingSpec::new(name, g, basis, table).expect("builtin table is well formed");
    debug_assert!(spec.validate().is_valid(), "{}", spec.validate());
    Arc::new(spec)
}

fn unit_rows(table: &mut GWTable, fundamental: usize, size: usize) {
    for a in 0..size {
        table.set_classical(fundamental, a, ClassVector::new([a]));
    }
}

/// CP¹ with ω(L) = 1 and the rotation loop.
pub fn cp1() -> SpecBundle {
    let g = group(vec![rat(1)], vec![2]);
    let basis = HomologyBasis::new(classes(&[("[M]", 2), ("pt", 0)]), 1).expect("valid basis");
    let mut table = GWTable::default();
    unit_rows(&mut table, 0, 2);
    table.push_quantum(g.generator(0), 1, 1, ClassVector::new([0]));
    let spec = finish("cp1", g.clone(), basis, table);
    let q = spec.monomial(1, g.zero());
    let rotation = LoopElement::new("rotation", spec.clone(), q, 1).expect("deg pt = 2 - 2");
    SpecBundle {
        spec,
        loops: vec![rotation],
    }
}

/// CP² with ω(L) = 1 and the rotation loop about a line.
pub fn cp2() -> SpecBundle {
    let g = group(vec![rat(1)], vec![3]);
    let basis = HomologyBasis::new(classes(&[("[M]", 4), ("line", 2), ("pt", 0)]), 2).expect("valid basis");
    let mut table = GWTable::default();
    unit_rows(&mut table, 0, 3);
    table.set_classical(1, 1, ClassVector::new([2]));
    let l = g.generator(0);
    table.push_quantum(l.clone(), 1, 2, ClassVector::new([0]));
    table.push_quantum(l, 2, 2, ClassVector::new([1]));
    let spec = finish("cp2", g.clone(), basis, table);
    let q = spec.monomial(1, g.zero());
    let rotation = LoopElement::new("rotation", spec.clone(), q, 1).expect("deg line = 4 - 2");
    SpecBundle {
        spec,
        loops: vec![rotation],
    }
}

fn check_lambda(lambda: &Rational) -> Result<(), CatalogError> {
    if *lambda > rat(1) {
        Ok(())
    } else {
        Err(CatalogError::BadParameter(format!(
            "lambda must exceed 1, got {}",
            format_rational(lambda)
        )))
    }
}

fn s2xs2_ring(name: &str, lambda: &Rational) -> Arc<RingSpec> {
    let g = group(vec![*lambda, rat(1)], vec![2, 2]);
    let basis = HomologyBasis::new(classes(&[("[M]", 4), ("a", 2), ("b", 2), ("pt", 0)]), 2).expect("valid basis");
    let mut table = GWTable::default();
    unit_rows(&mut table, 0, 4);
    table.set_classical(1, 2, ClassVector::new([3]));
    let (a, b) = (g.generator(0), g.generator(1));
    let ab = a.plus(&b);
    table.push_quantum(b.clone(), 1, 1, ClassVector::new([0]));
    table.push_quantum(a.clone(), 2, 2, ClassVector::new([0]));
    table.push_quantum(b, 1, 3, ClassVector::new([2]));
    table.push_quantum(a, 2, 3, ClassVector::new([1]));
    table.push_quantum(ab, 3, 3, ClassVector::new([0]));
    finish(name, g, basis, table)
}

/// CP¹×CP¹ with ω(a) = λ and ω(b) = 1.
pub fn cp1xcp1(lambda: &Rational) -> Result<SpecBundle, CatalogError> {
    check_lambda(lambda)?;
    let spec = s2xs2_ring(&format!("cp1xcp1:{}", format_rational(lambda)), lambda);
    Ok(SpecBundle { spec, loops: vec![] })
}

/// The same ring viewed as the one-point blow-up family, with its circle
/// action whose Seidel element is x̄⁺ = ā + b̄.
pub fn f2_as_s2xs2(lambda: &Rational) -> Result<SpecBundle, CatalogError> {
    check_lambda(lambda)?;
    let spec = s2xs2_ring(&format!("f2-as-s2xs2:{}", format_rational(lambda)), lambda);
    let zero = spec.gamma().zero();
    let q = QhElement::from_terms(
        spec.gamma().clone(),
        [(1, zero.clone()), (2, zero)],
        crate::num::Energy::Infinite,
    );
    let circle = LoopElement::new("circle-action", spec.clone(), q, 1).expect("deg x+ = 4 - 2");
    Ok(SpecBundle {
        spec,
        loops: vec![circle],
    })
}

/// x⁺ = a + b in the CP¹×CP¹ group.
pub fn x_plus(spec: &RingSpec) -> GammaElement {
    let g = spec.gamma();
    g.generator(0).plus(&g.generator(1))
}

/// x⁻ = a − b in the CP¹×CP¹ group.
pub fn x_minus(spec: &RingSpec) -> GammaElement {
    let g = spec.gamma();
    g.generator(0).plus(&g.generator(1).negated())
}

/// A ring with only classical products: H_*(S²×S²) with c₁ = 0 on a
/// rank-one Γ. Q⁺ is closed and the minimal Chern number is 0.
pub fn classical_only() -> SpecBundle {
    let g = group(vec![rat(1)], vec![0]);
    let basis = HomologyBasis::new(classes(&[("[M]", 4), ("a", 2), ("b", 2), ("pt", 0)]), 2).expect("valid basis");
    let mut table = GWTable::default();
    unit_rows(&mut table, 0, 4);
    table.set_classical(1, 2, ClassVector::new([3]));
    SpecBundle {
        spec: finish("classical-s2xs2", g, basis, table),
        loops: vec![],
    }
}

/// Resolves `cp1`, `cp2`, `cp1xcp1[:λ]` and `f2-as-s2xs2[:λ]`; λ defaults to 2.
pub fn builtin(name: &str) -> Result<SpecBundle, CatalogError> {
    let (base, param) = match name.split_once(':') {
        Some((b, p)) => (b, Some(p)),
        None => (name, None),
    };
    let lambda = || -> Result<Rational, CatalogError> {
        match param {
            None => Ok(rat(2)),
            Some(p) => parse_rational(p).map_err(|e| CatalogError::BadParameter(e.to_string())),
        }
    };
    match base {
        "cp1" | "cp2" if param.is_some() => Err(CatalogError::BadParameter(format!("`{base}` takes no parameter"))),
        "cp1" => Ok(cp1()),
        "cp2" => Ok(cp2()),
        "cp1xcp1" => cp1xcp1(&lambda()?),
        "f2-as-s2xs2" => f2_as_s2xs2(&lambda()?),
        _ => Err(CatalogError::UnknownBuiltin(name.to_string())),
    }
}

/// A builtin name, or otherwise a path to a spec file.
pub fn resolve(arg: &str) -> Result<SpecBundle, CatalogError> {
    match builtin(arg) {
        Err(CatalogError::UnknownBuiltin(_)) if Path::new(arg).exists() => load_spec_file(arg),
        other => other,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    name: String,
    n: u32,
    lattice: LatticeFile,
    basis: Vec<BasisFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    classical: Vec<ClassicalFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    quantum: Vec<QuantumFile>,
    #[serde(default, rename = "loop", skip_serializing_if = "Vec::is_empty")]
    loops: Vec<LoopFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeFile {
    omega: Vec<String>,
    chern: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisFile {
    name: String,
    degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassicalFile {
    pair: [String; 2],
    result: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuantumFile {
    gamma: Vec<i64>,
    pair: [String; 2],
    result: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LoopFile {
    name: String,
    maslov: i64,
    terms: Vec<TermFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermFile {
    class: String,
    gamma: Vec<i64>,
}

fn field_error(field: String, message: impl Into<String>) -> CatalogError {
    CatalogError::Field {
        field,
        message: message.into(),
    }
}

pub fn load_spec_file(path: impl AsRef<Path>) -> Result<SpecBundle, CatalogError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    load_spec_str(&text)
}

pub fn load_spec_str(text: &str) -> Result<SpecBundle, CatalogError> {
    let file: SpecFile = toml::from_str(text).map_err(|e| CatalogError::Parse(e.to_string().trim_end().to_string()))?;
    build(file)
}

fn build(file: SpecFile) -> Result<SpecBundle, CatalogError> {
    let omega = file
        .lattice
        .omega
        .iter()
        .enumerate()
        .map(|(i, w)| parse_rational(w).map_err(|e| field_error(format!("lattice.omega[{i}]"), e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let lattice = SphereClassLattice::new(omega, file.lattice.chern.clone())
        .map_err(|e| field_error("lattice".into(), e.to_string()))?;
    let g = Arc::new(GammaGroup::build(lattice));

    let basis = HomologyBasis::new(
        file.basis
            .iter()
            .map(|b| BasisClass {
                name: b.name.clone(),
                degree: b.degree,
            })
            .collect(),
        file.n,
    )
    .map_err(|e| field_error("basis".into(), e.to_string()))?;
    let index = |field: String, name: &str| -> Result<usize, CatalogError> {
        basis
            .index_of(name)
            .ok_or_else(|| field_error(field, format!("unknown class `{name}`")))
    };
    let vector = |field: String, names: &[String]| -> Result<ClassVector, CatalogError> {
        let mut out = ClassVector::zero();
        for (k, n) in names.iter().enumerate() {
            out = out.add(&ClassVector::new([index(format!("{field}[{k}]"), n)?]));
        }
        Ok(out)
    };
    let raw_gamma = |field: String, raw: &[i64]| -> Result<GammaElement, CatalogError> {
        g.project(raw).map_err(|e| field_error(field, e.to_string()))
    };

    let mut extra = Vec::new();
    let mut table = GWTable::default();
    for (k, c) in file.classical.iter().enumerate() {
        let at = format!("classical[{k}]");
        let i = index(format!("{at}.pair[0]"), &c.pair[0])?;
        let j = index(format!("{at}.pair[1]"), &c.pair[1])?;
        let value = vector(format!("{at}.result"), &c.result)?;
        if table.classical.contains_key(&(i, j)) {
            extra.push(Violation {
                kind: ViolationKind::Duplicate,
                location: at,
                message: format!("product {} * {} listed more than once", c.pair[0], c.pair[1]),
            });
            continue;
        }
        table.set_classical(i, j, value);
    }
    for (k, q) in file.quantum.iter().enumerate() {
        let at = format!("quantum[{k}]");
        let gamma = raw_gamma(format!("{at}.gamma"), &q.gamma)?;
        let i = index(format!("{at}.pair[0]"), &q.pair[0])?;
        let j = index(format!("{at}.pair[1]"), &q.pair[1])?;
        let value = vector(format!("{at}.result"), &q.result)?;
        table.push_quantum(gamma, i, j, value);
    }
    let spec = RingSpec::new(file.name.clone(), g.clone(), basis.clone(), table)
        .map_err(|e| field_error("table".into(), e.to_string()))?;
    let mut report = spec.validate();
    report.violations.extend(extra);
    let spec = Arc::new(spec);

    let mut loops = Vec::new();
    for (k, l) in file.loops.iter().enumerate() {
        let at = format!("loop[{k}]");
        let mut terms = Vec::new();
        for (t, term) in l.terms.iter().enumerate() {
            let class = index(format!("{at}.terms[{t}].class"), &term.class)?;
            terms.push((class, raw_gamma(format!("{at}.terms[{t}].gamma"), &term.gamma)?));
        }
        let q = QhElement::from_terms(g.clone(), terms, crate::num::Energy::Infinite);
        match LoopElement::new(l.name.clone(), spec.clone(), q, l.maslov) {
            Ok(elem) => loops.push(elem),
            Err(SeidelError::DegreeMismatch { expected, got, .. }) => report.violations.push(Violation {
                kind: ViolationKind::LoopDegree,
                location: format!("{at} `{}`", l.name),
                message: format!("q has degree {got}, but 2n - 2I = {expected}"),
            }),
            Err(e) => return Err(field_error(at, e.to_string())),
        }
    }
    if !report.is_valid() {
        return Err(CatalogError::Validation(report));
    }
    Ok(SpecBundle { spec, loops })
}

fn names(spec: &RingSpec, v: &ClassVector) -> Vec<String> {
    v.iter().map(|k| spec.basis().name(k).to_string()).collect()
}

fn to_file(bundle: &SpecBundle) -> Result<SpecFile, CatalogError> {
    let spec = &bundle.spec;
    let g = spec.gamma();
    let lift = |gamma: &GammaElement| g.lift(gamma).map_err(|e| field_error("gamma".into(), e.to_string()));
    let table = spec.table();
    let name = |i: usize| spec.basis().name(i).to_string();

    let classical = table
        .classical
        .iter()
        .filter(|(&(i, j), v)| i <= j && !v.is_zero())
        .map(|(&(i, j), v)| ClassicalFile {
            pair: [name(i), name(j)],
            result: names(spec, v),
        })
        .collect();
    let mut quantum = Vec::new();
    for e in table.quantum.iter().filter(|e| e.pair.0 <= e.pair.1) {
        quantum.push(QuantumFile {
            gamma: lift(&e.gamma)?,
            pair: [name(e.pair.0), name(e.pair.1)],
            result: names(spec, &e.value),
        });
    }
    let mut loops = Vec::new();
    for l in &bundle.loops {
        let mut terms = Vec::new();
        for t in l.q().terms() {
            terms.push(TermFile {
                class: name(t.class),
                gamma: lift(t.mono.gamma())?,
            });
        }
        loops.push(LoopFile {
            name: l.name().to_string(),
            maslov: l.maslov(),
            terms,
        });
    }
    let source = g.source();
    Ok(SpecFile {
        name: spec.name().to_string(),
        n: spec.n(),
        lattice: LatticeFile {
            omega: source.omega().iter().map(format_rational).collect(),
            chern: source.chern().to_vec(),
        },
        basis: spec
            .basis()
            .classes()
            .iter()
            .map(|c| BasisFile {
                name: c.name.clone(),
                degree: c.degree,
            })
            .collect(),
        classical,
        quantum,
        loops,
    })
}

/// Canonical text of a spec file; loading it gives back an equal bundle.
pub fn serialize_spec(bundle: &SpecBundle) -> Result<String, CatalogError> {
    let file = to_file(bundle)?;
    toml::to_string(&file).map_err(|e| CatalogError::Parse(e.to_string()))
}

/// Summary lines used by `seidel check` and `seidel info`.
pub fn describe(bundle: &SpecBundle) -> BTreeMap<&'static str, String> {
    let spec = &bundle.spec;
    let g = spec.gamma();
    let mut out = BTreeMap::new();
    out.insert("name", spec.name().to_string());
    out.insert("n", spec.n().to_string());
    out.insert("basis", spec.basis().classes().iter().map(|c| format!("{}:{}", c.name, c.degree)).collect::<Vec<_>>().join(" "));
    out.insert("gamma_rank", g.rank().to_string());
    out.insert(
        "omega",
        g.omega_canonical().iter().map(format_rational).collect::<Vec<_>>().join(","),
    );
    out.insert(
        "chern",
        g.chern_canonical().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
    );
    out.insert("minimal_chern", g.minimal_chern().to_string());
    out.insert("wplus", g.check_wplus(spec.n()).to_string());
    out.insert("q_plus_closed", spec.q_plus_closed().to_string());
    out.insert("quantum_entries", spec.table().quantum.len().to_string());
    out.insert(
        "loops",
        bundle.loops.iter().map(|l| l.name().to_string()).collect::<Vec<_>>().join(","),
    );
    out
}
