//! Energy-truncated arithmetic in the Novikov ring Λ over Z/2.
//!
//! A [`NovikovSeries`] is a finite set of monomials ⟨γ⟩ (coefficients are
//! Z/2, so presence means coefficient one) together with a cutoff `E`: the
//! series is an exact representative of a ring element for all terms with
//! ω(γ) ≤ E and says nothing above it. Every operation computes the best
//! cutoff it can prove from its inputs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::gamma::{GammaElement, GammaGroup};
use crate::num::{Energy, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NovikovError {
    #[error("series belong to different groups")]
    GroupMismatch,
    #[error("series is not of the form <0> + (positive energy part): {0}")]
    NotUnital(String),
}

/// ⟨γ⟩ tagged with its energy; ordered by energy, then by coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    omega: Rational,
    gamma: GammaElement,
}

impl Monomial {
    pub fn new(group: &GammaGroup, gamma: GammaElement) -> Self {
        Monomial {
            omega: group.omega(&gamma),
            gamma,
        }
    }

    pub fn omega(&self) -> &Rational {
        &self.omega
    }

    pub fn gamma(&self) -> &GammaElement {
        &self.gamma
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial {
            omega: self.omega + other.omega,
            gamma: self.gamma.plus(&other.gamma),
        }
    }

    pub(crate) fn zero(group: &GammaGroup) -> Monomial {
        Monomial {
            omega: Rational::zero(),
            gamma: group.zero(),
        }
    }
}

/// Adds `m` to a Z/2 support set.
pub(crate) fn toggle<T: Ord>(set: &mut BTreeSet<T>, m: T) {
    if !set.remove(&m) {
        set.insert(m);
    }
}

/// Cutoff of a product whose factors have the given cutoffs and valuations.
///
/// The unknown tail of `x` lies strictly above `ex`, so its products with
/// `y` lie above `ex + min(vy, ey)`; symmetrically for `y`.
pub(crate) fn product_cutoff(ex: &Energy, vx: &Energy, ey: &Energy, vy: &Energy) -> Energy {
    let lower_x = vx.clone().min(ex.clone());
    let lower_y = vy.clone().min(ey.clone());
    (ex + &lower_y).min(ey + &lower_x)
}

#[derive(Clone, PartialEq, Eq)]
pub struct NovikovSeries {
    group: Arc<GammaGroup>,
    terms: BTreeSet<Monomial>,
    cutoff: Energy,
}

impl fmt::Debug for NovikovSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NovikovSeries({self})")
    }
}

fn same_group(a: &Arc<GammaGroup>, b: &Arc<GammaGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl NovikovSeries {
    /// Builds a series from γ's, cancelling repeats mod 2 and dropping
    /// anything above the cutoff.
    pub fn from_gammas<I>(group: Arc<GammaGroup>, gammas: I, cutoff: Energy) -> Self
    where
        I: IntoIterator<Item = GammaElement>,
    {
        let mut terms = BTreeSet::new();
        for g in gammas {
            let m = Monomial::new(&group, g);
            if cutoff.admits(&m.omega) {
                toggle(&mut terms, m);
            }
        }
        NovikovSeries { group, terms, cutoff }
    }

    pub(crate) fn from_monomials(group: Arc<GammaGroup>, terms: BTreeSet<Monomial>, cutoff: Energy) -> Self {
        let terms = match &cutoff {
            Energy::Infinite => terms,
            Energy::Finite(e) => terms.into_iter().filter(|m| &m.omega <= e).collect(),
        };
        NovikovSeries { group, terms, cutoff }
    }

    pub fn zero(group: Arc<GammaGroup>) -> Self {
        NovikovSeries {
            group,
            terms: BTreeSet::new(),
            cutoff: Energy::Infinite,
        }
    }

    /// ⟨0⟩, the unit of Λ.
    pub fn one(group: Arc<GammaGroup>) -> Self {
        let zero = group.zero();
        Self::monomial(group, zero)
    }

    pub fn monomial(group: Arc<GammaGroup>, gamma: GammaElement) -> Self {
        Self::from_gammas(group, [gamma], Energy::Infinite)
    }

    pub fn group(&self) -> &Arc<GammaGroup> {
        &self.group
    }

    pub fn cutoff(&self) -> &Energy {
        &self.cutoff
    }

    pub fn is_exact(&self) -> bool {
        !self.cutoff.is_finite()
    }

    /// Known support in display order.
    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn gammas(&self) -> impl Iterator<Item = &GammaElement> {
        self.terms.iter().map(|m| &m.gamma)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// No known terms (the element may still be nonzero above the cutoff).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, gamma: &GammaElement) -> bool {
        let m = Monomial::new(&self.group, gamma.clone());
        self.terms.contains(&m)
    }

    /// Minimum energy of the known support; `+∞` when empty.
    pub fn valuation(&self) -> Energy {
        self.terms
            .first()
            .map(|m| Energy::Finite(m.omega))
            .unwrap_or(Energy::Infinite)
    }

    fn check_group(&self, other: &Self) -> Result<(), NovikovError> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(NovikovError::GroupMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, NovikovError> {
        self.check_group(other)?;
        let cutoff = self.cutoff.clone().min(other.cutoff.clone());
        let mut terms = self.terms.clone();
        for m in &other.terms {
            toggle(&mut terms, m.clone());
        }
        Ok(Self::from_monomials(self.group.clone(), terms, cutoff))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, NovikovError> {
        self.check_group(other)?;
        let cutoff = product_cutoff(&self.cutoff, &self.valuation(), &other.cutoff, &other.valuation());
        let mut terms = BTreeSet::new();
        for a in &self.terms {
            for b in &other.terms {
                let m = a.times(b);
                if cutoff.admits(&m.omega) {
                    toggle(&mut terms, m);
                }
            }
        }
        Ok(NovikovSeries {
            group: self.group.clone(),
            terms,
            cutoff,
        })
    }

    /// Multiplication by the monomial ⟨γ⟩.
    pub fn shift(&self, gamma: &GammaElement) -> Self {
        let by = Monomial::new(&self.group, gamma.clone());
        NovikovSeries {
            group: self.group.clone(),
            terms: self.terms.iter().map(|m| m.times(&by)).collect(),
            cutoff: self.cutoff.shifted(&by.omega),
        }
    }

    /// Forgets everything above `e`; the cutoff becomes `min(cutoff, e)`.
    pub fn truncate(&self, e: &Energy) -> Self {
        let cutoff = self.cutoff.clone().min(e.clone());
        Self::from_monomials(self.group.clone(), self.terms.clone(), cutoff)
    }

    /// Equality of the known parts at or below `e`.
    pub fn agrees_below(&self, other: &Self, e: &Energy) -> bool {
        let low = |s: &Self| -> Vec<Monomial> { s.terms.iter().filter(|m| e.admits(&m.omega)).cloned().collect() };
        low(self) == low(other)
    }

    /// Equality below the smaller of the two cutoffs.
    pub fn agrees(&self, other: &Self) -> bool {
        let e = self.cutoff.clone().min(other.cutoff.clone());
        self.agrees_below(other, &e)
    }

    /// Splits by Λ-degree k = −2c₁(γ); each part keeps the cutoff.
    pub fn grade(&self) -> BTreeMap<i64, NovikovSeries> {
        let mut parts: BTreeMap<i64, BTreeSet<Monomial>> = BTreeMap::new();
        for m in &self.terms {
            let k = -2 * self.group.chern(&m.gamma);
            parts.entry(k).or_default().insert(m.clone());
        }
        parts
            .into_iter()
            .map(|(k, terms)| {
                (
                    k,
                    NovikovSeries {
                        group: self.group.clone(),
                        terms,
                        cutoff: self.cutoff.clone(),
                    },
                )
            })
            .collect()
    }

    /// Σₖ nᵏ for `self = ⟨0⟩ + n`, valid up to energy `e`.
    pub fn geom_inverse(&self, e: &Rational) -> Result<Self, NovikovError> {
        let unit = Monomial::zero(&self.group);
        if !self.terms.contains(&unit) {
            return Err(NovikovError::NotUnital(format!("{self}")));
        }
        let mut rest = self.terms.clone();
        rest.remove(&unit);
        if rest.first().is_some_and(|m| !m.omega.is_positive()) {
            return Err(NovikovError::NotUnital(format!("{self}")));
        }
        let n = NovikovSeries {
            group: self.group.clone(),
            terms: rest,
            cutoff: self.cutoff.clone(),
        };
        let bound = Energy::Finite(*e);
        let mut result = Self::one(self.group.clone()).truncate(&bound);
        let mut power = Self::one(self.group.clone());
        loop {
            power = power.mul(&n)?.truncate(&bound);
            result = result.add(&power)?;
            if power.is_empty() {
                break;
            }
        }
        Ok(result)
    }
}

impl fmt::Display for NovikovSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", m.gamma)?;
        }
        if let Energy::Finite(e) = &self.cutoff {
            write!(f, " @E={}", crate::num::format_rational(e))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::SphereClassLattice;
    use crate::num::{rat, rat2};

    fn s2xs2() -> Arc<GammaGroup> {
        Arc::new(GammaGroup::build(
            SphereClassLattice::new(vec![rat(2), rat(1)], vec![2, 2]).unwrap(),
        ))
    }

    fn g(v: &[i64]) -> GammaElement {
        GammaElement::from_coords_unchecked(v.to_vec())
    }

    fn series(group: &Arc<GammaGroup>, gammas: &[&[i64]], cutoff: Energy) -> NovikovSeries {
        NovikovSeries::from_gammas(group.clone(), gammas.iter().map(|v| g(v)), cutoff)
    }

    const XM: &[i64] = &[1, -1];

    #[test]
    fn characteristic_two_addition() {
        let grp = s2xs2();
        let x = series(&grp, &[&[0, 0], XM], Energy::Finite(rat(3)));
        let sum = x.add(&x).unwrap();
        assert!(sum.is_empty());
        assert_eq!(sum.cutoff(), &Energy::Finite(rat(3)));
        let one = NovikovSeries::one(grp.clone());
        let xm = series(&grp, &[XM], Energy::Infinite);
        assert_eq!(one.add(&xm).unwrap().to_string(), "<0,0> + <1,-1>");
    }

    #[test]
    fn addition_takes_min_cutoff() {
        let grp = s2xs2();
        let x = series(&grp, &[&[0, 0], XM], Energy::Finite(rat(5)));
        let y = series(&grp, &[&[0, 0]], Energy::Finite(rat(1)));
        let s = x.add(&y).unwrap();
        assert_eq!(s.to_string(), "<1,-1> @E=1");
    }

    #[test]
    fn monomial_products() {
        let grp = s2xs2();
        let a = NovikovSeries::monomial(grp.clone(), g(&[1, 0]));
        let b = NovikovSeries::monomial(grp.clone(), g(&[0, 1]));
        assert_eq!(a.mul(&b).unwrap(), NovikovSeries::monomial(grp.clone(), g(&[1, 1])));

        let binom = series(&grp, &[&[0, 0], XM], Energy::Infinite);
        let sq = binom.mul(&binom).unwrap();
        assert_eq!(sq, series(&grp, &[&[0, 0], &[2, -2]], Energy::Infinite));
        let cube = sq.mul(&binom).unwrap();
        assert_eq!(
            cube,
            series(&grp, &[&[0, 0], XM, &[2, -2], &[3, -3]], Energy::Infinite)
        );
    }

    #[test]
    fn valuations() {
        let grp = s2xs2();
        assert_eq!(NovikovSeries::zero(grp.clone()).valuation(), Energy::Infinite);
        let binom = series(&grp, &[&[0, 0], XM], Energy::Infinite);
        assert_eq!(binom.valuation(), Energy::zero());
        let nb = series(&grp, &[&[0, -1]], Energy::Infinite);
        assert_eq!(nb.valuation(), Energy::Finite(rat(-1)));
    }

    #[test]
    fn grading() {
        let grp = s2xs2();
        let one = NovikovSeries::one(grp.clone());
        let parts = one.grade();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&0], one);
        let mixed = series(&grp, &[XM, &[1, 0]], Energy::Infinite);
        let parts = mixed.grade();
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![-4, 0]);
        assert_eq!(parts[&0], series(&grp, &[XM], Energy::Infinite));
        assert_eq!(parts[&-4], series(&grp, &[&[1, 0]], Energy::Infinite));
        assert!(NovikovSeries::zero(grp).grade().is_empty());
    }

    #[test]
    fn geometric_inverse_examples() {
        let grp = s2xs2();
        let one = NovikovSeries::one(grp.clone());
        assert_eq!(one.geom_inverse(&rat(4)).unwrap().to_string(), "<0,0> @E=4");

        let u = series(&grp, &[&[0, 0], XM], Energy::Infinite);
        let inv = u.geom_inverse(&rat2(5, 2)).unwrap();
        assert_eq!(inv.to_string(), "<0,0> + <1,-1> + <2,-2> @E=5/2");

        let u = series(&grp, &[&[0, 0], &[1, 0], &[0, 1]], Energy::Infinite);
        let inv = u.geom_inverse(&rat(2)).unwrap();
        assert_eq!(inv.to_string(), "<0,0> + <0,1> + <0,2> + <1,0> @E=2");
        let back = inv.mul(&u).unwrap();
        assert!(back.agrees_below(&one, &Energy::Finite(rat(2))));
    }

    #[test]
    fn geometric_inverse_rejects_non_units() {
        let grp = s2xs2();
        let no_unit = series(&grp, &[XM], Energy::Infinite);
        assert!(matches!(no_unit.geom_inverse(&rat(2)), Err(NovikovError::NotUnital(_))));
        let negative = series(&grp, &[&[0, 0], &[0, -1]], Energy::Infinite);
        assert!(negative.geom_inverse(&rat(2)).is_err());
        // ω(2b − a) = 0: not strictly positive
        let flat = series(&grp, &[&[0, 0], &[-1, 2]], Energy::Infinite);
        assert!(flat.geom_inverse(&rat(2)).is_err());
    }

    #[test]
    fn truncated_inputs_limit_the_inverse() {
        let grp = s2xs2();
        let u = series(&grp, &[&[0, 0], XM], Energy::Finite(rat2(3, 2)));
        let inv = u.geom_inverse(&rat(10)).unwrap();
        assert_eq!(inv.cutoff(), &Energy::Finite(rat2(3, 2)));
        assert_eq!(inv.to_string(), "<0,0> + <1,-1> @E=3/2");
    }

    #[test]
    fn zero_with_finite_cutoff_is_not_exact_zero() {
        let grp = s2xs2();
        let unknown = NovikovSeries::zero(grp.clone()).truncate(&Energy::Finite(rat(2)));
        let one = NovikovSeries::one(grp.clone());
        let p = one.mul(&unknown).unwrap();
        assert_eq!(p.cutoff(), &Energy::Finite(rat(2)));
        let exact = NovikovSeries::zero(grp.clone()).mul(&unknown).unwrap();
        assert_eq!(exact.cutoff(), &Energy::Infinite);
    }

    #[test]
    fn group_mismatch_is_reported() {
        let a = s2xs2();
        let b = Arc::new(GammaGroup::build(SphereClassLattice::new(vec![rat(1)], vec![3]).unwrap()));
        let x = NovikovSeries::one(a);
        let y = NovikovSeries::one(b);
        assert_eq!(x.add(&y), Err(NovikovError::GroupMismatch));
        assert_eq!(x.mul(&y), Err(NovikovError::GroupMismatch));
    }
}
