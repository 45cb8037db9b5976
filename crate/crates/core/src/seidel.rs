//! Units of quantum homology and the calculus of Seidel elements.
//!
//! Inversion works over the group ring Z/2[Γ]: multiplication by a
//! homogeneous `x` is a square matrix whose entries are homogeneous, so
//! each nonzero entry has a unique lowest-energy monomial and is a unit of
//! the completed Novikov ring. Fraction-free elimination decides the rank
//! exactly, and back-substitution divides by the pivots with geometric
//! series cut off at a working energy.

use std::fmt;
use std::sync::Arc;

use crate::gamma::{maslov_from_section, section_translate, GammaElement, SectionClass};
use crate::novikov::{NovikovError, NovikovSeries};
use crate::num::{format_rational, Energy, Rational};
use crate::quantum::{ClassVector, QhDegree, QhElement, QuantumError, RingSpec};

use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeidelError {
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("the zero element has no inverse")]
    ZeroElement,
    #[error("loop `{name}`: q has degree {got}, expected 2n - 2I = {expected}")]
    DegreeMismatch { name: String, expected: i64, got: String },
    #[error("loops belong to different rings")]
    SpecMismatch,
    #[error("Q+ is not closed under the quantum product in `{0}`")]
    QPlusNotClosed(String),
    #[error("cutoff too small to decide whether power {power} lies in the image of tau")]
    CutoffTooSmall { power: u32 },
    #[error("classical inverse needs a nonzero [M]-component")]
    ClassicalNotInvertible,
    #[error("inverse check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error(transparent)]
    Novikov(#[from] NovikovError),
}

/// Why the equation x ∗ y = e has no solution: a Λ-combination of the
/// component equations whose left side vanishes and whose right side does
/// not, the lowest energy of that right side, and the rank of the system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub level: Rational,
    pub functional: Vec<(usize, NovikovSeries)>,
    pub rank: usize,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvertOutcome {
    Inverse(QhElement),
    NotInvertible(Witness),
    /// The input's own cutoff cannot certify the answer up to `requested`.
    Undetermined { requested: Energy, achieved: Energy },
}

impl InvertOutcome {
    pub fn inverse(&self) -> Option<&QhElement> {
        match self {
            InvertOutcome::Inverse(y) => Some(y),
            _ => None,
        }
    }
}

fn is_exact_zero(s: &NovikovSeries) -> bool {
    s.is_empty() && s.is_exact()
}

/// Inverse in the classical intersection ring by the Neumann series of
/// the nilpotent part.
pub fn classical_inverse(s: &RingSpec, h: &ClassVector) -> Result<ClassVector, SeidelError> {
    let m = s.fundamental();
    if !h.contains(m) {
        return Err(SeidelError::ClassicalNotInvertible);
    }
    let unit = ClassVector::new([m]);
    let nil = h.add(&unit);
    let mul = |u: &ClassVector, v: &ClassVector| -> ClassVector {
        let mut out = ClassVector::zero();
        for i in u.iter() {
            for j in v.iter() {
                out = out.add(&s.structure_constant(i, j, &s.gamma().zero()));
            }
        }
        out
    };
    let mut result = unit.clone();
    let mut power = unit;
    // degrees drop by at least one step per factor, so b steps suffice
    for _ in 0..s.basis().len() {
        power = mul(&power, &nil);
        if power.is_zero() {
            break;
        }
        result = result.add(&power);
    }
    Ok(result)
}

struct Row {
    m: Vec<NovikovSeries>,
    rhs: NovikovSeries,
    t: Vec<NovikovSeries>,
}

impl Row {
    /// `p·self + a·other`, with the entry at `col` cancelled exactly.
    fn combine(&self, p: &NovikovSeries, a: &NovikovSeries, other: &Row, col: usize) -> Result<Row, NovikovError> {
        let mix = |u: &NovikovSeries, v: &NovikovSeries| -> Result<NovikovSeries, NovikovError> {
            p.mul(u)?.add(&a.mul(v)?)
        };
        let mut m = Vec::with_capacity(self.m.len());
        for (j, (u, v)) in self.m.iter().zip(&other.m).enumerate() {
            m.push(if j == col {
                NovikovSeries::zero(p.group().clone())
            } else {
                mix(u, v)?
            });
        }
        let t = self
            .t
            .iter()
            .zip(&other.t)
            .map(|(u, v)| mix(u, v))
            .collect::<Result<_, _>>()?;
        Ok(Row {
            m,
            rhs: mix(&self.rhs, &other.rhs)?,
            t,
        })
    }
}

/// 1/d in the completed ring, valid up to energy about `w − ω(lead)`.
fn unit_inverse(d: &NovikovSeries, w: &Rational) -> Result<NovikovSeries, NovikovError> {
    let lead = d.monomials().next().expect("pivot is nonzero").gamma().clone();
    let neg = lead.negated();
    Ok(d.shift(&neg).geom_inverse(w)?.shift(&neg))
}

/// Solves x ∗ y = e up to energy `e_cut`.
pub fn invert(s: &RingSpec, x: &QhElement, e_cut: &Rational) -> Result<InvertOutcome, SeidelError> {
    match s.degree(x) {
        QhDegree::NotHomogeneous => return Err(SeidelError::NotHomogeneous),
        QhDegree::Any if x.cutoff().is_finite() => {
            return Ok(InvertOutcome::Undetermined {
                requested: Energy::Finite(*e_cut),
                achieved: x.cutoff().clone(),
            })
        }
        QhDegree::Any => return Err(SeidelError::ZeroElement),
        QhDegree::Homogeneous(_) => {}
    }
    let group = s.gamma().clone();
    let b = s.basis().len();
    let zero = || NovikovSeries::zero(group.clone());
    let one = || NovikovSeries::one(group.clone());

    // column j of the matrix is x ∗ (class j)
    let mut columns = Vec::with_capacity(b);
    for j in 0..b {
        columns.push(s.product(x, &s.monomial(j, group.zero()))?);
    }
    let mut rows: Vec<Row> = (0..b)
        .map(|i| Row {
            m: columns.iter().map(|c| c.component(i)).collect(),
            rhs: if i == s.fundamental() { one() } else { zero() },
            t: (0..b).map(|k| if k == i { one() } else { zero() }).collect(),
        })
        .collect();

    let undetermined = |achieved: Energy| InvertOutcome::Undetermined {
        requested: Energy::Finite(*e_cut),
        achieved,
    };

    let mut used = vec![false; b];
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..b {
        let candidate = (0..b)
            .filter(|&r| !used[r] && !rows[r].m[col].is_empty())
            .min_by_key(|&r| (rows[r].m[col].len(), r));
        let Some(p) = candidate else {
            if let Some(r) = (0..b).find(|&r| !used[r] && !is_exact_zero(&rows[r].m[col])) {
                return Ok(undetermined(rows[r].m[col].cutoff().clone()));
            }
            continue;
        };
        used[p] = true;
        pivots.push((p, col));
        let pv = rows[p].m[col].clone();
        for r in 0..b {
            if used[r] || is_exact_zero(&rows[r].m[col]) {
                continue;
            }
            let a = rows[r].m[col].clone();
            rows[r] = rows[r].combine(&pv, &a, &rows[p], col)?;
        }
    }

    if pivots.len() < b {
        let mut best: Option<usize> = None;
        let mut unknown: Option<Energy> = None;
        for r in (0..b).filter(|&r| !used[r]) {
            let rhs = &rows[r].rhs;
            if rhs.is_empty() {
                if !rhs.is_exact() {
                    unknown = Some(rhs.cutoff().clone());
                }
                continue;
            }
            if best.is_none_or(|q| rhs.valuation() < rows[q].rhs.valuation()) {
                best = Some(r);
            }
        }
        return match (best, unknown) {
            (Some(r), _) => {
                let row = &rows[r];
                let level = *row.rhs.valuation().finite().expect("nonempty");
                let functional = row
                    .t
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_empty())
                    .map(|(k, c)| (k, c.clone()))
                    .collect();
                Ok(InvertOutcome::NotInvertible(Witness {
                    level,
                    functional,
                    rank: pivots.len(),
                    size: b,
                }))
            }
            (None, Some(c)) => Ok(undetermined(c)),
            (None, None) => Err(SeidelError::Inconsistent("singular system without obstruction".into())),
        };
    }

    let target = Energy::Finite(*e_cut);
    let mut w = *e_cut;
    let mut last: Option<Energy> = None;
    for _ in 0..32 {
        let mut y: Vec<NovikovSeries> = vec![zero(); b];
        for &(r, c) in pivots.iter().rev() {
            let bound = Energy::Finite(w);
            let mut acc = rows[r].rhs.truncate(&bound);
            for &(_, c2) in &pivots {
                if c2 != c && !is_exact_zero(&rows[r].m[c2]) {
                    acc = acc.add(&rows[r].m[c2].mul(&y[c2])?)?;
                }
            }
            let inv = unit_inverse(&rows[r].m[c], &w)?;
            y[c] = acc.mul(&inv)?.truncate(&bound);
        }
        let achieved = y.iter().map(|v| v.cutoff().clone()).min().unwrap_or(Energy::Infinite);
        if achieved >= target {
            let terms = y
                .iter()
                .enumerate()
                .flat_map(|(j, v)| v.gammas().map(move |g| (j, g.clone())).collect::<Vec<_>>());
            let inverse = QhElement::from_terms(group.clone(), terms, target.clone());
            let check = s.product(x, &inverse)?;
            let bound = check.cutoff().clone().min(target.clone());
            if !check.agrees_below(&s.unit(), &bound) {
                return Err(SeidelError::Inconsistent(format!(
                    "x * y = {} below {bound}",
                    s.render(&check)
                )));
            }
            return Ok(InvertOutcome::Inverse(inverse));
        }
        if last.as_ref().is_some_and(|l| *l >= achieved) {
            return Ok(undetermined(achieved));
        }
        let Energy::Finite(a) = achieved else { unreachable!() };
        w += *e_cut - a;
        last = Some(Energy::Finite(a));
    }
    Ok(undetermined(last.unwrap_or(Energy::zero())))
}

/// τ(γ) = [M] ⊗ ⟨γ⟩.
pub fn tau(s: &RingSpec, gamma: &GammaElement) -> QhElement {
    s.monomial(s.fundamental(), gamma.clone())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TauImage {
    Yes(GammaElement),
    No(String),
    Undetermined,
}

/// Whether `x` is of the form [M] ⊗ ⟨γ⟩.
pub fn in_tau_image(s: &RingSpec, x: &QhElement) -> TauImage {
    let m = s.fundamental();
    if let Some(t) = x.terms().find(|t| t.class != m) {
        return TauImage::No(format!("has a {} component", s.basis().name(t.class)));
    }
    match x.len() {
        0 if x.cutoff().is_finite() => TauImage::Undetermined,
        0 => TauImage::No("zero".into()),
        1 => {
            let t = x.terms().next().expect("one term");
            if x.cutoff() > &Energy::Finite(*t.mono.omega()) {
                TauImage::Yes(t.mono.gamma().clone())
            } else {
                TauImage::Undetermined
            }
        }
        k => TauImage::No(format!("{k} monomials")),
    }
}

/// A lifted Hamiltonian loop recorded by its Seidel element and Maslov
/// index; `deg q = 2n − 2I` is enforced on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopElement {
    name: String,
    spec: Arc<RingSpec>,
    q: QhElement,
    maslov: i64,
}

impl LoopElement {
    pub fn new(name: impl Into<String>, spec: Arc<RingSpec>, q: QhElement, maslov: i64) -> Result<Self, SeidelError> {
        let name = name.into();
        let expected = spec.dimension() - 2 * maslov;
        let got = match spec.degree(&q) {
            QhDegree::Homogeneous(d) if d == expected => None,
            QhDegree::Homogeneous(d) => Some(d.to_string()),
            QhDegree::Any if q.cutoff().is_finite() => None,
            QhDegree::Any => Some("undefined (q = 0)".into()),
            QhDegree::NotHomogeneous => Some("mixed".into()),
        };
        if let Some(got) = got {
            return Err(SeidelError::DegreeMismatch { name, expected, got });
        }
        Ok(LoopElement { name, spec, q, maslov })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn q(&self) -> &QhElement {
        &self.q
    }

    pub fn maslov(&self) -> i64 {
        self.maslov
    }

    pub fn truncate(&self, e: &Energy) -> LoopElement {
        LoopElement {
            q: self.q.truncate(e),
            ..self.clone()
        }
    }
}

fn same_spec(a: &Arc<RingSpec>, b: &Arc<RingSpec>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Multiplication by q(g, g̃).
pub fn seidel_apply(s: &RingSpec, l: &LoopElement, b: &QhElement) -> Result<QhElement, SeidelError> {
    if *l.spec.as_ref() != *s {
        return Err(SeidelError::SpecMismatch);
    }
    Ok(s.product(&l.q, b)?)
}

pub fn compose_loops(l1: &LoopElement, l2: &LoopElement) -> Result<LoopElement, SeidelError> {
    if !same_spec(&l1.spec, &l2.spec) {
        return Err(SeidelError::SpecMismatch);
    }
    let q = l1.spec.product(&l1.q, &l2.q)?;
    LoopElement::new(
        format!("{}*{}", l1.name, l2.name),
        l1.spec.clone(),
        q,
        l1.maslov + l2.maslov,
    )
}

/// The m-th power of a loop, truncated at `e` after every step.
pub fn loop_power(l: &LoopElement, m: u32, e: &Rational) -> Result<LoopElement, SeidelError> {
    assert!(m >= 1, "loop powers start at 1");
    let bound = Energy::Finite(*e);
    let base = l.truncate(&bound);
    let mut acc = base.clone();
    for _ in 1..m {
        acc = compose_loops(&acc, &base)?.truncate(&bound);
    }
    acc.name = if m == 1 { l.name.clone() } else { format!("{}^{m}", l.name) };
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderBound {
    /// The first power whose Seidel element lies in τ(Γ); consistent
    /// with, not proof of, the loop having that order.
    FirstTauPower(u32, GammaElement),
    /// No power up to K lies in τ(Γ), so [g]^k ≠ 1 for 1 ≤ k ≤ K.
    NoneUpTo(u32),
}

impl fmt::Display for OrderBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderBound::FirstTauPower(k, g) => write!(f, "first tau power at k = {k} with gamma = {g}"),
            OrderBound::NoneUpTo(k) => write!(f, "no tau power up to k = {k}"),
        }
    }
}

pub fn order_lower_bound(l: &LoopElement, max: u32, e: &Rational) -> Result<OrderBound, SeidelError> {
    let bound = Energy::Finite(*e);
    let base = l.truncate(&bound);
    let mut power = base.clone();
    for k in 1..=max {
        if k > 1 {
            power = compose_loops(&power, &base)?.truncate(&bound);
        }
        match in_tau_image(&l.spec, &power.q) {
            TauImage::Yes(g) => return Ok(OrderBound::FirstTauPower(k, g)),
            TauImage::No(_) => {}
            TauImage::Undetermined => return Err(SeidelError::CutoffTooSmall { power: k }),
        }
    }
    Ok(OrderBound::NoneUpTo(max))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Obstruction {
    Obstructed,
    NotObstructed,
}

/// For rings where Q⁺ is closed, homogeneous units have degree ≡ 2n
/// modulo 2N; anything else is obstructed.
pub fn degree_obstruction(s: &RingSpec, x: &QhElement) -> Result<Obstruction, SeidelError> {
    if !s.q_plus_closed() {
        return Err(SeidelError::QPlusNotClosed(s.name().to_string()));
    }
    let d = match s.degree(x) {
        QhDegree::Homogeneous(d) => d,
        QhDegree::Any => return Err(SeidelError::ZeroElement),
        QhDegree::NotHomogeneous => return Err(SeidelError::NotHomogeneous),
    };
    let top = s.dimension();
    let modulus = 2 * s.gamma().minimal_chern();
    let obstructed = if modulus == 0 {
        d != top
    } else {
        (d - top).rem_euclid(modulus) != 0
    };
    Ok(if obstructed {
        Obstruction::Obstructed
    } else {
        Obstruction::NotObstructed
    })
}

/// The constant loop with the lift translated by γ: q = ⟨γ⟩ · e, with
/// Maslov index read off from the translated trivial section.
pub fn identity_lift(spec: &Arc<RingSpec>, gamma: &GammaElement) -> Result<LoopElement, SeidelError> {
    let group = spec.gamma().clone();
    let trivial = SectionClass::new(group, Rational::zero(), 0);
    let section = section_translate(&trivial, &gamma.negated()).map_err(|e| SeidelError::Inconsistent(e.to_string()))?;
    let q = spec.unit().shift(gamma);
    LoopElement::new(format!("id{gamma}"), spec.clone(), q, maslov_from_section(&section))
}

/// The constant loop with its trivial lift.
pub fn identity_loop(spec: &Arc<RingSpec>) -> LoopElement {
    identity_lift(spec, &spec.gamma().zero()).expect("the unit has degree 2n")
}

pub fn describe_witness(s: &RingSpec, w: &Witness) -> String {
    let parts: Vec<String> = w
        .functional
        .iter()
        .map(|(k, c)| format!("({c})*{}", s.basis().name(*k)))
        .collect();
    format!(
        "level {} (rank {}/{}, functional {})",
        format_rational(&w.level),
        w.rank,
        w.size,
        parts.join(" + ")
    )
}
