//! The coefficient group Γ: sphere classes modulo the joint kernel of the
//! area and first-Chern functionals, plus the Γ-torsor of section classes.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::intlattice::{integer_kernel, solve_rational};
use crate::num::{format_rational, gcd_all, lcm_denominators, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GammaError {
    #[error("lattice functionals have lengths {omega} (omega) and {chern} (chern)")]
    LengthMismatch { omega: usize, chern: usize },
    #[error("element has {got} coordinates, group has rank {expected}")]
    GroupMismatch { expected: usize, got: usize },
    #[error("sections belong to different groups")]
    DifferentGroups,
    #[error("no γ with ω(γ) = {area} and c1(γ) = {chern}")]
    NoSuchGamma { area: String, chern: i64 },
}

/// Generators of π₂(M) with their symplectic areas and Chern numbers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SphereClassLattice {
    omega: Vec<Rational>,
    chern: Vec<i64>,
}

impl SphereClassLattice {
    pub fn new(omega: Vec<Rational>, chern: Vec<i64>) -> Result<Self, GammaError> {
        if omega.len() != chern.len() {
            return Err(GammaError::LengthMismatch {
                omega: omega.len(),
                chern: chern.len(),
            });
        }
        Ok(SphereClassLattice { omega, chern })
    }

    pub fn rank(&self) -> usize {
        self.omega.len()
    }

    pub fn omega(&self) -> &[Rational] {
        &self.omega
    }

    pub fn chern(&self) -> &[i64] {
        &self.chern
    }

    /// The two functionals as integer rows, ω scaled by the lcm of its
    /// denominators.
    fn integer_rows(&self) -> Vec<Vec<i128>> {
        let scale = lcm_denominators(&self.omega);
        let omega_row = self
            .omega
            .iter()
            .map(|w| (w * Rational::from_integer(scale)).to_integer())
            .collect();
        let chern_row = self.chern.iter().map(|&c| i128::from(c)).collect();
        vec![omega_row, chern_row]
    }
}

/// Γ = Z^r / K with K = ker ω ∩ ker c₁, in canonical coordinates.
///
/// The projection rows are the Hermite basis of the integer annihilator of
/// K, so canonical coordinates are the raw ones whenever K is trivial, and
/// the canonical rank is at most two.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GammaGroup {
    source: SphereClassLattice,
    kernel_basis: Vec<Vec<i64>>,
    projection: Vec<Vec<i64>>,
    omega_canonical: Vec<Rational>,
    chern_canonical: Vec<i64>,
}

/// A point of Γ in canonical coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaElement(Vec<i64>);

impl GammaElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    #[cfg(test)]
    pub(crate) fn from_coords_unchecked(coords: Vec<i64>) -> Self {
        GammaElement(coords)
    }

    pub fn plus(&self, other: &GammaElement) -> GammaElement {
        debug_assert_eq!(self.0.len(), other.0.len());
        GammaElement(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn negated(&self) -> GammaElement {
        GammaElement(self.0.iter().map(|a| -a).collect())
    }

    pub fn scaled(&self, k: i64) -> GammaElement {
        GammaElement(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(">")
    }
}

fn to_i64(v: i128) -> i64 {
    i64::try_from(v).expect("lattice coordinate exceeds i64")
}

impl GammaGroup {
    /// Builds the canonical quotient of a sphere-class lattice.
    pub fn build(lattice: SphereClassLattice) -> GammaGroup {
        let r = lattice.rank();
        let rows = lattice.integer_rows();
        let kernel = integer_kernel(&rows, r);
        // annihilator of the (saturated) kernel: the saturation of the row
        // space of the functionals
        let projection = integer_kernel(&kernel, r);
        let rank = projection.len();

        // ω = ω'·P and c₁ = c₁'·P, solved over Q (P has full row rank)
        let transpose: Vec<Vec<Rational>> = (0..r)
            .map(|c| {
                projection
                    .iter()
                    .map(|row| Rational::from_integer(row[c]))
                    .collect()
            })
            .collect();
        let omega_canonical = solve_rational(&transpose, lattice.omega(), rank)
            .expect("ω vanishes on the kernel");
        let chern_rhs: Vec<Rational> = lattice
            .chern()
            .iter()
            .map(|&c| Rational::from_integer(i128::from(c)))
            .collect();
        let chern_canonical = solve_rational(&transpose, &chern_rhs, rank)
            .expect("c1 vanishes on the kernel")
            .into_iter()
            .map(|c| {
                debug_assert!(c.is_integer());
                to_i64(c.to_integer())
            })
            .collect();

        GammaGroup {
            source: lattice,
            kernel_basis: kernel
                .into_iter()
                .map(|v| v.into_iter().map(to_i64).collect())
                .collect(),
            projection: projection
                .into_iter()
                .map(|v| v.into_iter().map(to_i64).collect())
                .collect(),
            omega_canonical,
            chern_canonical,
        }
    }

    pub fn source(&self) -> &SphereClassLattice {
        &self.source
    }

    pub fn kernel_basis(&self) -> &[Vec<i64>] {
        &self.kernel_basis
    }

    /// Rows are functionals on raw coordinates; one row per canonical
    /// coordinate.
    pub fn projection(&self) -> &[Vec<i64>] {
        &self.projection
    }

    pub fn rank(&self) -> usize {
        self.projection.len()
    }

    pub fn omega_canonical(&self) -> &[Rational] {
        &self.omega_canonical
    }

    pub fn chern_canonical(&self) -> &[i64] {
        &self.chern_canonical
    }

    pub fn zero(&self) -> GammaElement {
        GammaElement(vec![0; self.rank()])
    }

    pub fn element(&self, coords: Vec<i64>) -> Result<GammaElement, GammaError> {
        self.check(&coords)?;
        Ok(GammaElement(coords))
    }

    /// Canonical unit vector `j`.
    pub fn generator(&self, j: usize) -> GammaElement {
        let mut v = vec![0; self.rank()];
        v[j] = 1;
        GammaElement(v)
    }

    fn check(&self, coords: &[i64]) -> Result<(), GammaError> {
        if coords.len() != self.rank() {
            return Err(GammaError::GroupMismatch {
                expected: self.rank(),
                got: coords.len(),
            });
        }
        Ok(())
    }

    /// Image of a raw π₂ vector in canonical coordinates.
    pub fn project(&self, raw: &[i64]) -> Result<GammaElement, GammaError> {
        if raw.len() != self.source.rank() {
            return Err(GammaError::GroupMismatch {
                expected: self.source.rank(),
                got: raw.len(),
            });
        }
        Ok(GammaElement(
            self.projection
                .iter()
                .map(|row| row.iter().zip(raw).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }

    /// A raw π₂ vector projecting to `g`. The projection rows span a
    /// saturated lattice, so an integral preimage always exists.
    pub fn lift(&self, g: &GammaElement) -> Result<Vec<i64>, GammaError> {
        self.check(&g.0)?;
        let r = self.source.rank();
        let k = self.rank();
        // rows of [Pᵀ | I], reduced: V·Pᵀ = [H; 0] with V unimodular
        let mut mat: Vec<Vec<i128>> = (0..r)
            .map(|c| {
                let mut line: Vec<i128> = self.projection.iter().map(|row| i128::from(row[c])).collect();
                line.extend((0..r).map(|j| i128::from(j == c)));
                line
            })
            .collect();
        let pivots = crate::intlattice::echelonize(&mut mat, k);
        debug_assert_eq!(pivots.len(), k);
        // P·Vᵀ = [Hᵀ | 0]; solve Hᵀ z = g
        let ht: Vec<Vec<Rational>> = (0..k)
            .map(|i| (0..k).map(|j| Rational::from_integer(mat[j][i])).collect())
            .collect();
        let rhs: Vec<Rational> = g.0.iter().map(|&v| Rational::from_integer(i128::from(v))).collect();
        let z = solve_rational(&ht, &rhs, k).expect("projection has full row rank");
        let mut raw = vec![0i128; r];
        for (zi, row) in z.iter().zip(&mat) {
            let zi = zi.to_integer();
            for (slot, v) in raw.iter_mut().zip(&row[k..]) {
                *slot += zi * v;
            }
        }
        Ok(raw.into_iter().map(to_i64).collect())
    }

    pub fn add(&self, a: &GammaElement, b: &GammaElement) -> Result<GammaElement, GammaError> {
        self.check(&a.0)?;
        self.check(&b.0)?;
        Ok(a.plus(b))
    }

    pub fn negate(&self, a: &GammaElement) -> Result<GammaElement, GammaError> {
        self.check(&a.0)?;
        Ok(a.negated())
    }

    pub fn sub(&self, a: &GammaElement, b: &GammaElement) -> Result<GammaElement, GammaError> {
        self.add(a, &self.negate(b)?)
    }

    pub fn omega(&self, a: &GammaElement) -> Rational {
        debug_assert_eq!(a.0.len(), self.rank());
        self.omega_canonical
            .iter()
            .zip(&a.0)
            .map(|(w, &c)| w * Rational::from_integer(i128::from(c)))
            .sum()
    }

    pub fn chern(&self, a: &GammaElement) -> i64 {
        debug_assert_eq!(a.0.len(), self.rank());
        self.chern_canonical.iter().zip(&a.0).map(|(c, x)| c * x).sum()
    }

    pub fn eval_functionals(&self, a: &GammaElement) -> Result<(Rational, i64), GammaError> {
        self.check(&a.0)?;
        Ok((self.omega(a), self.chern(a)))
    }

    /// N ≥ 0 with c₁(Γ) = N·Z.
    pub fn minimal_chern(&self) -> i64 {
        gcd_all(self.chern_canonical.iter().copied())
    }

    pub fn check_wplus(&self, n: u32) -> WPlus {
        if let Some(lambda) = self.monotonicity_constant() {
            if !lambda.is_negative() {
                return WPlus::HoldsByA { lambda };
            }
        }
        if self.chern_canonical.iter().all(|&c| c == 0) {
            return WPlus::HoldsByB;
        }
        let n_min = self.minimal_chern();
        if n_min >= i64::from(n) - 1 {
            return WPlus::HoldsByC { minimal_chern: n_min };
        }
        WPlus::Fails
    }

    /// λ with ω = λ·c₁ on Γ, if one exists.
    fn monotonicity_constant(&self) -> Option<Rational> {
        let lambda = match self.chern_canonical.iter().position(|&c| c != 0) {
            Some(j) => self.omega_canonical[j] / Rational::from_integer(i128::from(self.chern_canonical[j])),
            None => Rational::zero(),
        };
        self.omega_canonical
            .iter()
            .zip(&self.chern_canonical)
            .all(|(w, &c)| *w == lambda * Rational::from_integer(i128::from(c)))
            .then_some(lambda)
    }

    /// The unique γ with the given area and Chern number, if any.
    pub fn solve(&self, area: &Rational, chern: i64) -> Result<GammaElement, GammaError> {
        let none = || GammaError::NoSuchGamma {
            area: format_rational(area),
            chern,
        };
        let rank = self.rank();
        let a = vec![
            self.omega_canonical.clone(),
            self.chern_canonical
                .iter()
                .map(|&c| Rational::from_integer(i128::from(c)))
                .collect(),
        ];
        let b = [*area, Rational::from_integer(i128::from(chern))];
        let x = solve_rational(&a, &b, rank).ok_or_else(none)?;
        if !x.iter().all(|v| v.is_integer()) {
            return Err(none());
        }
        Ok(GammaElement(x.into_iter().map(|v| to_i64(v.to_integer())).collect()))
    }
}

/// Which clause of the semipositivity assumption (W⁺) holds first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WPlus {
    /// ω = λ·c₁ on π₂ with λ ≥ 0.
    HoldsByA { lambda: Rational },
    /// c₁ vanishes on π₂.
    HoldsByB,
    /// N ≥ n − 1.
    HoldsByC { minimal_chern: i64 },
    Fails,
}

impl fmt::Display for WPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WPlus::HoldsByA { lambda } => write!(f, "holds (a): omega = {} c1", format_rational(lambda)),
            WPlus::HoldsByB => f.write_str("holds (b): c1 = 0"),
            WPlus::HoldsByC { minimal_chern } => write!(f, "holds (c): N = {minimal_chern} >= n - 1"),
            WPlus::Fails => f.write_str("fails"),
        }
    }
}

/// A Γ-equivalence class of sections, recorded by its area and vertical
/// Chern number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionClass {
    pub area: Rational,
    pub chern: i64,
    pub group: Arc<GammaGroup>,
}

impl SectionClass {
    pub fn new(group: Arc<GammaGroup>, area: Rational, chern: i64) -> Self {
        SectionClass { area, chern, group }
    }
}

fn same_group(a: &Arc<GammaGroup>, b: &Arc<GammaGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// The unique γ with `s1 = γ + s0`.
pub fn section_diff(s1: &SectionClass, s0: &SectionClass) -> Result<GammaElement, GammaError> {
    if !same_group(&s1.group, &s0.group) {
        return Err(GammaError::DifferentGroups);
    }
    s1.group.solve(&(s1.area - s0.area), s1.chern - s0.chern)
}

pub fn section_translate(s0: &SectionClass, gamma: &GammaElement) -> Result<SectionClass, GammaError> {
    let (w, c) = s0.group.eval_functionals(gamma)?;
    Ok(SectionClass {
        area: s0.area + w,
        chern: s0.chern + c,
        group: s0.group.clone(),
    })
}

/// Maslov index of the lift normalised by this section class: I = −c₁.
pub fn maslov_from_section(s: &SectionClass) -> i64 {
    -s.chern
}
