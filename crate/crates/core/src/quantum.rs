//! Quantum homology QH_*(M, ω) with Z/2 coefficients: the homology basis,
//! the Gromov–Witten structure-constant table, ring elements and the
//! quantum intersection product.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;

use crate::gamma::{GammaElement, GammaGroup};
use crate::novikov::{product_cutoff, toggle, Monomial, NovikovSeries};
use crate::num::{format_rational, Energy, Rational};

pub const FUNDAMENTAL_CLASS: &str = "[M]";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuantumError {
    #[error("invalid homology basis: {0}")]
    Basis(String),
    #[error("malformed table: {0}")]
    Table(String),
    #[error("element does not belong to ring `{0}`")]
    SpecMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisClass {
    pub name: String,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomologyBasis {
    classes: Vec<BasisClass>,
    n: u32,
    fundamental: usize,
}

fn valid_class_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '<' | '>' | '+' | '@' | '(' | ')' | ',' | '"'))
}

impl HomologyBasis {
    pub fn new(classes: Vec<BasisClass>, n: u32) -> Result<Self, QuantumError> {
        let top = 2 * i64::from(n);
        let mut seen = BTreeSet::new();
        for c in &classes {
            if !valid_class_name(&c.name) {
                return Err(QuantumError::Basis(format!("bad class name `{}`", c.name)));
            }
            if !seen.insert(c.name.as_str()) {
                return Err(QuantumError::Basis(format!("duplicate class name `{}`", c.name)));
            }
            if c.degree < 0 || c.degree > top {
                return Err(QuantumError::Basis(format!(
                    "class `{}` has degree {} outside [0, {top}]",
                    c.name, c.degree
                )));
            }
        }
        let tops: Vec<usize> = (0..classes.len()).filter(|&i| classes[i].degree == top).collect();
        if tops.len() != 1 {
            return Err(QuantumError::Basis(format!(
                "expected exactly one class of degree {top}, found {}",
                tops.len()
            )));
        }
        let fundamental = tops[0];
        if classes[fundamental].name != FUNDAMENTAL_CLASS {
            return Err(QuantumError::Basis(format!(
                "the class of degree {top} must be named `{FUNDAMENTAL_CLASS}`"
            )));
        }
        Ok(HomologyBasis { classes, n, fundamental })
    }

    pub fn classes(&self) -> &[BasisClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn fundamental(&self) -> usize {
        self.fundamental
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.classes[i].degree
    }

    pub fn name(&self, i: usize) -> &str {
        &self.classes[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    /// The unique degree-zero class, when there is exactly one.
    pub fn point(&self) -> Option<usize> {
        let mut it = (0..self.len()).filter(|&i| self.classes[i].degree == 0);
        match (it.next(), it.next()) {
            (Some(i), None) => Some(i),
            _ => None,
        }
    }
}

/// A Z/2 vector over the homology basis, stored as its support.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassVector(BTreeSet<usize>);

impl ClassVector {
    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut set = BTreeSet::new();
        for i in indices {
            toggle(&mut set, i);
        }
        ClassVector(set)
    }

    pub fn zero() -> Self {
        ClassVector(BTreeSet::new())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &ClassVector) -> ClassVector {
        ClassVector(self.0.symmetric_difference(&other.0).copied().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumEntry {
    pub gamma: GammaElement,
    pub pair: (usize, usize),
    pub value: ClassVector,
}

/// Structure constants: the classical intersection products and the
/// quantum corrections a_i ∗_γ a_j for ω(γ) > 0. Absent entries are zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GWTable {
    pub classical: BTreeMap<(usize, usize), ClassVector>,
    pub quantum: Vec<QuantumEntry>,
}

impl GWTable {
    /// Inserts a classical product in both orders.
    pub fn set_classical(&mut self, i: usize, j: usize, value: ClassVector) {
        self.classical.insert((i, j), value.clone());
        self.classical.insert((j, i), value);
    }

    /// Inserts a quantum correction in both orders.
    pub fn push_quantum(&mut self, gamma: GammaElement, i: usize, j: usize, value: ClassVector) {
        self.quantum.push(QuantumEntry {
            gamma: gamma.clone(),
            pair: (i, j),
            value: value.clone(),
        });
        if i != j {
            self.quantum.push(QuantumEntry {
                gamma,
                pair: (j, i),
                value,
            });
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Contribution {
    shift: Monomial,
    classes: Vec<usize>,
}

/// Complete description of one quantum homology ring.
#[derive(Debug, Clone)]
pub struct RingSpec {
    name: String,
    n: u32,
    gamma: Arc<GammaGroup>,
    basis: HomologyBasis,
    table: GWTable,
    lookup: Vec<Vec<Vec<Contribution>>>,
    min_shift: Option<Rational>,
}

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.n == other.n
            && self.gamma == other.gamma
            && self.basis == other.basis
            && self.table == other.table
    }
}

impl Eq for RingSpec {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    DegreeLaw,
    Symmetry,
    Positivity,
    UnitRow,
    Duplicate,
    LoopDegree,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::DegreeLaw => "degree law",
            ViolationKind::Symmetry => "symmetry",
            ViolationKind::Positivity => "positivity",
            ViolationKind::UnitRow => "unit row",
            ViolationKind::Duplicate => "duplicate entry",
            ViolationKind::LoopDegree => "loop grading",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub location: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violation at {}: {}", self.kind, self.location, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Degree of an element of QH_*.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QhDegree {
    Homogeneous(i64),
    /// The zero element is homogeneous of every degree.
    Any,
    NotHomogeneous,
}

impl QhDegree {
    pub fn value(self) -> Option<i64> {
        match self {
            QhDegree::Homogeneous(d) => Some(d),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub class: usize,
    pub mono: Monomial,
}

/// A finite sum of `class ⊗ ⟨γ⟩` with a shared validity cutoff.
#[derive(Clone, PartialEq, Eq)]
pub struct QhElement {
    group: Arc<GammaGroup>,
    terms: BTreeSet<Term>,
    cutoff: Energy,
}

impl fmt::Debug for QhElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("QhElement(")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "#{}{}", t.class, t.mono.gamma())?;
        }
        write!(f, " @E={})", self.cutoff)
    }
}

fn same_group(a: &Arc<GammaGroup>, b: &Arc<GammaGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl QhElement {
    pub fn zero(group: Arc<GammaGroup>) -> Self {
        QhElement {
            group,
            terms: BTreeSet::new(),
            cutoff: Energy::Infinite,
        }
    }

    /// Builds an element from `(class, γ)` pairs; repeats cancel mod 2.
    pub fn from_terms<I>(group: Arc<GammaGroup>, terms: I, cutoff: Energy) -> Self
    where
        I: IntoIterator<Item = (usize, GammaElement)>,
    {
        let mut set = BTreeSet::new();
        for (class, g) in terms {
            let mono = Monomial::new(&group, g);
            if cutoff.admits(mono.omega()) {
                toggle(&mut set, Term { class, mono });
            }
        }
        QhElement {
            group,
            terms: set,
            cutoff,
        }
    }

    pub(crate) fn from_term_set(group: Arc<GammaGroup>, terms: BTreeSet<Term>, cutoff: Energy) -> Self {
        let terms = match &cutoff {
            Energy::Infinite => terms,
            Energy::Finite(e) => terms.into_iter().filter(|t| t.mono.omega() <= e).collect(),
        };
        QhElement { group, terms, cutoff }
    }

    /// `class ⊗ ⟨γ⟩`, exact.
    pub fn basis_monomial(group: Arc<GammaGroup>, class: usize, gamma: GammaElement) -> Self {
        Self::from_terms(group, [(class, gamma)], Energy::Infinite)
    }

    /// `class ⊗ series`.
    pub fn from_series(class: usize, series: &NovikovSeries) -> Self {
        QhElement {
            group: series.group().clone(),
            terms: series
                .monomials()
                .map(|m| Term {
                    class,
                    mono: m.clone(),
                })
                .collect(),
            cutoff: series.cutoff().clone(),
        }
    }

    pub fn group(&self) -> &Arc<GammaGroup> {
        &self.group
    }

    pub fn cutoff(&self) -> &Energy {
        &self.cutoff
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn valuation(&self) -> Energy {
        self.terms
            .iter()
            .map(|t| t.mono.omega())
            .min()
            .map(|w| Energy::Finite(*w))
            .unwrap_or(Energy::Infinite)
    }

    /// The Λ-coefficient of one basis class.
    pub fn component(&self, class: usize) -> NovikovSeries {
        let monos = self
            .terms
            .iter()
            .filter(|t| t.class == class)
            .map(|t| t.mono.clone())
            .collect();
        NovikovSeries::from_monomials(self.group.clone(), monos, self.cutoff.clone())
    }

    pub fn components(&self) -> BTreeMap<usize, NovikovSeries> {
        let classes: BTreeSet<usize> = self.terms.iter().map(|t| t.class).collect();
        classes.into_iter().map(|c| (c, self.component(c))).collect()
    }

    fn check_group(&self, other: &Self) -> Result<(), QuantumError> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(QuantumError::SpecMismatch("elements over different groups".into()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, QuantumError> {
        self.check_group(other)?;
        let mut terms = self.terms.clone();
        for t in &other.terms {
            toggle(&mut terms, t.clone());
        }
        Ok(Self::from_term_set(
            self.group.clone(),
            terms,
            self.cutoff.clone().min(other.cutoff.clone()),
        ))
    }

    /// Module action of the monomial ⟨γ⟩.
    pub fn shift(&self, gamma: &GammaElement) -> Self {
        let by = Monomial::new(&self.group, gamma.clone());
        QhElement {
            group: self.group.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    class: t.class,
                    mono: t.mono.times(&by),
                })
                .collect(),
            cutoff: self.cutoff.shifted(by.omega()),
        }
    }

    /// Module action of a Novikov series.
    pub fn scalar_mul(&self, lambda: &NovikovSeries) -> Result<Self, QuantumError> {
        if !same_group(&self.group, lambda.group()) {
            return Err(QuantumError::SpecMismatch("scalar over a different group".into()));
        }
        let cutoff = product_cutoff(&self.cutoff, &self.valuation(), lambda.cutoff(), &lambda.valuation());
        let mut terms = BTreeSet::new();
        for t in &self.terms {
            for m in lambda.monomials() {
                let mono = t.mono.times(m);
                if cutoff.admits(mono.omega()) {
                    toggle(
                        &mut terms,
                        Term {
                            class: t.class,
                            mono,
                        },
                    );
                }
            }
        }
        Ok(QhElement {
            group: self.group.clone(),
            terms,
            cutoff,
        })
    }

    pub fn truncate(&self, e: &Energy) -> Self {
        Self::from_term_set(self.group.clone(), self.terms.clone(), self.cutoff.clone().min(e.clone()))
    }

    pub fn agrees_below(&self, other: &Self, e: &Energy) -> bool {
        let low = |x: &Self| -> Vec<Term> { x.terms.iter().filter(|t| e.admits(t.mono.omega())).cloned().collect() };
        low(self) == low(other)
    }

    /// Equality below the smaller cutoff.
    pub fn agrees(&self, other: &Self) -> bool {
        let e = self.cutoff.clone().min(other.cutoff.clone());
        self.agrees_below(other, &e)
    }
}

impl RingSpec {
    /// Assembles a ring. Structural problems (indices out of range, γ of
    /// the wrong rank) are errors; semantic invariants are checked by
    /// [`RingSpec::validate`].
    pub fn new(
        name: impl Into<String>,
        gamma: Arc<GammaGroup>,
        basis: HomologyBasis,
        mut table: GWTable,
    ) -> Result<Self, QuantumError> {
        table.quantum.sort();
        let b = basis.len();
        let check_vec = |v: &ClassVector, at: &str| -> Result<(), QuantumError> {
            match v.iter().find(|&k| k >= b) {
                Some(k) => Err(QuantumError::Table(format!("{at}: class index {k} out of range"))),
                None => Ok(()),
            }
        };
        for (&(i, j), v) in &table.classical {
            if i >= b || j >= b {
                return Err(QuantumError::Table(format!("classical entry ({i}, {j}) out of range")));
            }
            check_vec(v, &format!("classical entry ({i}, {j})"))?;
        }
        for e in &table.quantum {
            let (i, j) = e.pair;
            if i >= b || j >= b {
                return Err(QuantumError::Table(format!("quantum entry ({i}, {j}) out of range")));
            }
            if e.gamma.coords().len() != gamma.rank() {
                return Err(QuantumError::Table(format!(
                    "quantum entry ({i}, {j}): γ {} has rank {}, group has rank {}",
                    e.gamma,
                    e.gamma.coords().len(),
                    gamma.rank()
                )));
            }
            check_vec(&e.value, &format!("quantum entry ({i}, {j})"))?;
        }

        let mut lookup: Vec<Vec<Vec<Contribution>>> = vec![vec![Vec::new(); b]; b];
        let mut min_shift: Option<Rational> = None;
        let mut note_shift = |w: &Rational| {
            min_shift = Some(match min_shift {
                Some(m) if m <= *w => m,
                _ => *w,
            });
        };
        for (&(i, j), v) in &table.classical {
            if v.is_zero() {
                continue;
            }
            let shift = Monomial::new(&gamma, gamma.zero());
            note_shift(shift.omega());
            lookup[i][j].push(Contribution {
                shift,
                classes: v.iter().collect(),
            });
        }
        for e in &table.quantum {
            if e.value.is_zero() {
                continue;
            }
            let shift = Monomial::new(&gamma, e.gamma.clone());
            note_shift(shift.omega());
            lookup[e.pair.0][e.pair.1].push(Contribution {
                shift,
                classes: e.value.iter().collect(),
            });
        }
        Ok(RingSpec {
            name: name.into(),
            n: basis.n(),
            gamma,
            basis,
            table,
            lookup,
            min_shift,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dimension(&self) -> i64 {
        2 * i64::from(self.n)
    }

    pub fn gamma(&self) -> &Arc<GammaGroup> {
        &self.gamma
    }

    pub fn basis(&self) -> &HomologyBasis {
        &self.basis
    }

    pub fn table(&self) -> &GWTable {
        &self.table
    }

    pub fn fundamental(&self) -> usize {
        self.basis.fundamental()
    }

    pub fn class_label(&self, i: usize) -> String {
        self.basis.name(i).to_string()
    }

    /// Checks every table invariant and reports each violation.
    pub fn validate(&self) -> ValidationReport {
        let mut out = Vec::new();
        let top = self.dimension();
        let b = self.basis.len();
        let m = self.fundamental();
        let name = |i: usize| self.basis.name(i).to_string();
        let deg = |i: usize| self.basis.degree(i);

        for (&(i, j), v) in &self.table.classical {
            let expected = deg(i) + deg(j) - top;
            for k in v.iter() {
                if deg(k) != expected {
                    out.push(Violation {
                        kind: ViolationKind::DegreeLaw,
                        location: format!("classical {} * {}", name(i), name(j)),
                        message: format!("component {} has degree {}, expected {expected}", name(k), deg(k)),
                    });
                }
            }
            let mirrored = self.table.classical.get(&(j, i)).cloned().unwrap_or_default();
            if i < j && mirrored != *v {
                out.push(Violation {
                    kind: ViolationKind::Symmetry,
                    location: format!("classical {} * {}", name(i), name(j)),
                    message: format!("differs from {} * {}", name(j), name(i)),
                });
            }
        }
        for (&(i, j), v) in &self.table.classical {
            if i > j && !v.is_zero() && !self.table.classical.contains_key(&(j, i)) {
                out.push(Violation {
                    kind: ViolationKind::Symmetry,
                    location: format!("classical {} * {}", name(i), name(j)),
                    message: format!("{} * {} is missing", name(j), name(i)),
                });
            }
        }

        let mut quantum: BTreeMap<(GammaElement, usize, usize), ClassVector> = BTreeMap::new();
        for e in &self.table.quantum {
            let (i, j) = e.pair;
            let at = format!("quantum {} *_{} {}", name(i), e.gamma, name(j));
            let (w, c1) = (self.gamma.omega(&e.gamma), self.gamma.chern(&e.gamma));
            if !w.is_positive() {
                out.push(Violation {
                    kind: ViolationKind::Positivity,
                    location: at.clone(),
                    message: format!("omega(gamma) = {} is not positive", format_rational(&w)),
                });
            }
            let expected = deg(i) + deg(j) - top + 2 * c1;
            for k in e.value.iter() {
                if deg(k) != expected {
                    out.push(Violation {
                        kind: ViolationKind::DegreeLaw,
                        location: at.clone(),
                        message: format!("component {} has degree {}, expected {expected}", name(k), deg(k)),
                    });
                }
            }
            if (i == m || j == m) && !e.value.is_zero() {
                out.push(Violation {
                    kind: ViolationKind::UnitRow,
                    location: at.clone(),
                    message: format!("{FUNDAMENTAL_CLASS} has a quantum correction"),
                });
            }
            if quantum.insert((e.gamma.clone(), i, j), e.value.clone()).is_some() {
                out.push(Violation {
                    kind: ViolationKind::Duplicate,
                    location: at,
                    message: "entry listed more than once".into(),
                });
            }
        }
        for ((g, i, j), v) in &quantum {
            let mirrored = quantum.get(&(g.clone(), *j, *i)).cloned().unwrap_or_default();
            if i < j && mirrored != *v || i > j && v != &mirrored && !quantum.contains_key(&(g.clone(), *j, *i)) {
                out.push(Violation {
                    kind: ViolationKind::Symmetry,
                    location: format!("quantum {} *_{} {}", name(*i), g, name(*j)),
                    message: format!("differs from {} *_{} {}", name(*j), g, name(*i)),
                });
            }
        }

        for a in 0..b {
            let got = self.table.classical.get(&(m, a)).cloned().unwrap_or_default();
            if got != ClassVector::new([a]) {
                out.push(Violation {
                    kind: ViolationKind::UnitRow,
                    location: format!("classical {FUNDAMENTAL_CLASS} * {}", name(a)),
                    message: format!("expected {}", name(a)),
                });
            }
        }
        ValidationReport { violations: out }
    }

    fn check_element(&self, x: &QhElement) -> Result<(), QuantumError> {
        if !same_group(&self.gamma, &x.group) {
            return Err(QuantumError::SpecMismatch(self.name.clone()));
        }
        if x.terms.iter().any(|t| t.class >= self.basis.len()) {
            return Err(QuantumError::SpecMismatch(self.name.clone()));
        }
        Ok(())
    }

    /// The quantum intersection product, extended bilinearly.
    pub fn product(&self, x: &QhElement, y: &QhElement) -> Result<QhElement, QuantumError> {
        self.check_element(x)?;
        self.check_element(y)?;
        let cutoff = match &self.min_shift {
            None => Energy::Infinite,
            Some(shift) => product_cutoff(&x.cutoff, &x.valuation(), &y.cutoff, &y.valuation()).shifted(shift),
        };
        let mut terms = BTreeSet::new();
        for s in &x.terms {
            for t in &y.terms {
                let base = s.mono.times(&t.mono);
                for c in &self.lookup[s.class][t.class] {
                    let mono = base.times(&c.shift);
                    if !cutoff.admits(mono.omega()) {
                        continue;
                    }
                    for &k in &c.classes {
                        toggle(
                            &mut terms,
                            Term {
                                class: k,
                                mono: mono.clone(),
                            },
                        );
                    }
                }
            }
        }
        Ok(QhElement {
            group: self.gamma.clone(),
            terms,
            cutoff,
        })
    }

    /// The unit e = [M] ⊗ ⟨0⟩.
    pub fn unit(&self) -> QhElement {
        QhElement::basis_monomial(self.gamma.clone(), self.fundamental(), self.gamma.zero())
    }

    pub fn monomial(&self, class: usize, gamma: GammaElement) -> QhElement {
        QhElement::basis_monomial(self.gamma.clone(), class, gamma)
    }

    /// Degree of one term: deg(class) − 2c₁(γ).
    pub fn term_degree(&self, class: usize, gamma: &GammaElement) -> i64 {
        self.basis.degree(class) - 2 * self.gamma.chern(gamma)
    }

    pub fn degree(&self, x: &QhElement) -> QhDegree {
        let mut degrees = x.terms.iter().map(|t| self.term_degree(t.class, t.mono.gamma()));
        let Some(first) = degrees.next() else {
            return QhDegree::Any;
        };
        if degrees.all(|d| d == first) {
            QhDegree::Homogeneous(first)
        } else {
            QhDegree::NotHomogeneous
        }
    }

    /// Classical pairing: the point-class coefficient of `u · a`.
    fn pairing(&self, u: &ClassVector, a: usize) -> bool {
        let Some(pt) = self.basis.point() else {
            return false;
        };
        u.iter().fold(false, |acc, k| {
            let prod = self.table.classical.get(&(k, a)).cloned().unwrap_or_default();
            acc ^ prod.contains(pt)
        })
    }

    /// a1 ∗_γ a2 as a class vector (γ = 0 is the classical product).
    pub fn structure_constant(&self, a1: usize, a2: usize, gamma: &GammaElement) -> ClassVector {
        if gamma.is_zero() {
            return self.table.classical.get(&(a1, a2)).cloned().unwrap_or_default();
        }
        self.table
            .quantum
            .iter()
            .filter(|e| e.pair == (a1, a2) && &e.gamma == gamma)
            .fold(ClassVector::zero(), |acc, e| acc.add(&e.value))
    }

    /// Φ̃_γ(a1, a2, a3) = (a1 ∗_γ a2) · a3.
    pub fn tilde_phi(&self, a1: usize, a2: usize, a3: usize, gamma: &GammaElement) -> bool {
        self.pairing(&self.structure_constant(a1, a2, gamma), a3)
    }

    /// Whether Q⁺ = ⊕_{i<2n} H_i ⊗ Λ is closed under ∗, checked on the table.
    pub fn q_plus_closed(&self) -> bool {
        let top = self.dimension();
        let m = self.fundamental();
        let low = |i: usize| self.basis.degree(i) < top;
        let classical_ok = self
            .table
            .classical
            .iter()
            .all(|(&(i, j), v)| !(low(i) && low(j) && v.contains(m)));
        let quantum_ok = self
            .table
            .quantum
            .iter()
            .all(|e| !(low(e.pair.0) && low(e.pair.1) && e.value.contains(m)));
        classical_ok && quantum_ok
    }

    pub fn render(&self, x: &QhElement) -> String {
        let mut out = String::new();
        if x.terms.is_empty() {
            out.push('0');
        }
        for (i, t) in x.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            out.push_str(self.basis.name(t.class));
            out.push_str(&t.mono.gamma().to_string());
        }
        if let Energy::Finite(e) = &x.cutoff {
            out.push_str(" @E=");
            out.push_str(&format_rational(e));
        }
        out
    }
}

/// Free-function form of [`RingSpec::product`].
pub fn qh_product(s: &RingSpec, x: &QhElement, y: &QhElement) -> Result<QhElement, QuantumError> {
    s.product(x, y)
}
