//! Seeded random elements for property checks.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gamma::{GammaElement, GammaGroup};
use crate::num::{Energy, Rational};
use crate::quantum::{QhElement, RingSpec};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform γ with canonical coordinates in [−bound, bound].
pub fn random_gamma<R: Rng>(g: &GammaGroup, rng: &mut R, bound: i64) -> GammaElement {
    let coords = (0..g.rank()).map(|_| rng.gen_range(-bound..=bound)).collect();
    g.element(coords).expect("rank matches")
}

/// Rejection sampling in the box [−3, 3]^r'; falls back to the box's
/// minimal-energy corner when `e` is out of reach.
fn gamma_below<R: Rng>(g: &GammaGroup, rng: &mut R, e: &Rational) -> GammaElement {
    for _ in 0..10_000 {
        let gamma = random_gamma(g, rng, 3);
        if g.omega(&gamma) <= *e {
            return gamma;
        }
    }
    let coords = g
        .omega_canonical()
        .iter()
        .map(|w| if *w > Rational::from_integer(0) { -3 } else { 3 })
        .collect();
    g.element(coords).expect("rank matches")
}

/// Up to `max_terms` random terms with energies at most `e`; exact.
pub fn random_element<R: Rng>(s: &RingSpec, rng: &mut R, max_terms: usize, e: &Rational) -> QhElement {
    let count = rng.gen_range(0..=max_terms);
    let terms: Vec<_> = (0..count)
        .map(|_| (rng.gen_range(0..s.basis().len()), gamma_below(s.gamma(), rng, e)))
        .collect();
    QhElement::from_terms(s.gamma().clone(), terms, Energy::Infinite)
}

/// A nonzero homogeneous element of degree `degree`, or `None` when the
/// sampler finds no admissible term.
pub fn random_homogeneous<R: Rng>(
    s: &RingSpec,
    rng: &mut R,
    degree: i64,
    max_terms: usize,
    e: &Rational,
) -> Option<QhElement> {
    let mut terms = Vec::new();
    let wanted = rng.gen_range(1..=max_terms.max(1));
    for _ in 0..200 * wanted {
        if terms.len() == wanted {
            break;
        }
        let class = rng.gen_range(0..s.basis().len());
        let gamma = gamma_below(s.gamma(), rng, e);
        if s.term_degree(class, &gamma) == degree && !terms.contains(&(class, gamma.clone())) {
            terms.push((class, gamma));
        }
    }
    (!terms.is_empty()).then(|| QhElement::from_terms(s.gamma().clone(), terms, Energy::Infinite))
}

/// A uniformly chosen degree among those reachable by a term with energy
/// at most `e`.
pub fn random_term_degree<R: Rng>(s: &RingSpec, rng: &mut R, e: &Rational) -> i64 {
    let class = rng.gen_range(0..s.basis().len());
    let gamma = gamma_below(s.gamma(), rng, e);
    s.term_degree(class, &gamma)
}

/// A series with up to `max_terms` monomials whose energies lie in
/// [lo, hi], exact.
pub fn random_series<R: Rng>(
    g: &std::sync::Arc<GammaGroup>,
    rng: &mut R,
    max_terms: usize,
    lo: &Rational,
    hi: &Rational,
) -> crate::novikov::NovikovSeries {
    let count = rng.gen_range(0..=max_terms);
    let mut gammas = Vec::new();
    let mut attempts = 0;
    while gammas.len() < count && attempts < 10_000 {
        attempts += 1;
        let gamma = random_gamma(g, rng, 3);
        let w = g.omega(&gamma);
        if *lo <= w && w <= *hi && !gammas.contains(&gamma) {
            gammas.push(gamma);
        }
    }
    crate::novikov::NovikovSeries::from_gammas(g.clone(), gammas, Energy::Infinite)
}

/// A random rational in [lo, hi] with denominator dividing `den`.
pub fn random_rational<R: Rng>(rng: &mut R, lo: i64, hi: i64, den: i64) -> Rational {
    let n = rng.gen_range(lo * den..=hi * den);
    Rational::new(i128::from(n), i128::from(den))
}
