//! Named verification suites. Each check compares a computed value with
//! an independently constructed expectation; the CLI only renders the
//! reports.

use std::fmt;
use std::sync::Arc;

use crate::catalog::{self, x_minus, x_plus, SpecBundle};
use crate::gamma::GammaElement;
use crate::novikov::NovikovSeries;
use crate::num::{format_rational, rat, rat2, Energy, Rational};
use crate::quantum::{GWTable, QhDegree, QhElement, RingSpec};
use crate::sample::{self, random_element, random_gamma, random_homogeneous, SampleRng};
use crate::seidel::{
    compose_loops, degree_obstruction, identity_lift, in_tau_image, invert, loop_power, order_lower_bound,
    seidel_apply, tau, InvertOutcome, LoopElement, Obstruction, OrderBound, TauImage,
};

pub const DEFAULT_SEED: u64 = 1;

pub const SUITES: [&str; 10] = [
    "quantum-relation",
    "q-powers",
    "geometric-inverse",
    "grassmannian",
    "infinite-order",
    "grading",
    "identity-loop",
    "obstruction",
    "ring-axioms",
    "truncation",
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            checks: Vec::new(),
        }
    }

    fn check(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            label: label.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records `computed == expected`, showing both on failure.
    fn expect_eq<T: PartialEq + fmt::Display>(&mut self, label: impl Into<String>, computed: T, expected: T) {
        let passed = computed == expected;
        let detail = if passed {
            computed.to_string()
        } else {
            format!("got {computed}, expected {expected}")
        };
        self.check(label, passed, detail);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

pub fn run_suite(name: &str, seed: u64) -> Result<Vec<SuiteReport>, UnknownSuite> {
    if name == "all" {
        // suites are independent and seeded separately; join in list order
        return Ok(std::thread::scope(|scope| {
            let handles: Vec<_> = SUITES.iter().map(|s| scope.spawn(move || run_one(s, seed))).collect();
            handles.into_iter().map(|h| h.join().expect("suite panicked")).collect()
        }));
    }
    if !SUITES.contains(&name) {
        return Err(UnknownSuite(name.to_string()));
    }
    Ok(vec![run_one(name, seed)])
}

fn run_one(name: &str, seed: u64) -> SuiteReport {
    let mut rng = sample::rng(seed);
    match name {
        "quantum-relation" => quantum_relation(),
        "q-powers" => q_powers(),
        "geometric-inverse" => geometric_inverse(),
        "grassmannian" => grassmannian(),
        "infinite-order" => infinite_order(),
        "grading" => grading(&mut rng),
        "identity-loop" => identity_loop(&mut rng),
        "obstruction" => obstruction(&mut rng),
        "ring-axioms" => ring_axioms(seed),
        "truncation" => truncation(&mut rng),
        _ => unreachable!("suite list is checked by the caller"),
    }
}

fn s2xs2(lambda: Rational) -> SpecBundle {
    catalog::f2_as_s2xs2(&lambda).expect("lambda > 1")
}

fn show(s: &RingSpec, x: &QhElement) -> Shown {
    Shown(s.render(x))
}

/// Rendered element, compared by text.
#[derive(PartialEq)]
struct Shown(String);

impl fmt::Display for Shown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Binomial coefficient parity by Lucas' theorem.
fn binomial_is_odd(m: u64, j: u64) -> bool {
    j & m == j
}

/// `class ⊗ ⟨base⟩(⟨0⟩ + ⟨x⁻⟩)^m`, expanded term by term mod 2.
fn binomial_element(s: &RingSpec, classes: &[usize], base: &GammaElement, m: u64, cutoff: Energy) -> QhElement {
    let xm = x_minus(s);
    let mut terms = Vec::new();
    for j in 0..=m {
        if binomial_is_odd(m, j) {
            let g = base.plus(&xm.scaled(j as i64));
            for &c in classes {
                terms.push((c, g.clone()));
            }
        }
    }
    QhElement::from_terms(s.gamma().clone(), terms, cutoff)
}

fn quantum_relation() -> SuiteReport {
    let mut r = SuiteReport::new("quantum-relation");
    let bundle = s2xs2(rat(2));
    let s = &bundle.spec;
    let g = s.gamma();
    let (a, b) = (g.generator(0), g.generator(1));
    let cut = Energy::Finite(rat(10));
    let xp = QhElement::from_terms(g.clone(), [(1, g.zero()), (2, g.zero())], cut.clone());
    let sq = s.product(&xp, &xp).expect("same ring").truncate(&cut);
    // ½(x⁺ − x⁻) = b and ½(x⁺ + x⁻) = a
    let half_diff = x_plus(s).plus(&x_minus(s).negated()).coords().iter().map(|c| c / 2).collect::<Vec<_>>();
    let half_sum = x_plus(s).plus(&x_minus(s)).coords().iter().map(|c| c / 2).collect::<Vec<_>>();
    let expected = QhElement::from_terms(
        g.clone(),
        [
            (0, g.element(half_diff).expect("rank 2")),
            (0, g.element(half_sum).expect("rank 2")),
        ],
        cut.clone(),
    );
    r.expect_eq("(x+ (x) <0>)^2 = [M] (x) (<b> + <a>) at E=10", show(s, &sq), show(s, &expected));

    let abar = s.monomial(1, g.zero());
    let a_sq = s.product(&abar, &abar).expect("same ring");
    r.expect_eq("a * a = [M]<b>", show(s, &a_sq), show(s, &tau(s, &b)));
    let bbar = s.monomial(2, g.zero());
    let b_sq = s.product(&bbar, &bbar).expect("same ring");
    r.expect_eq("b * b = [M]<a>", show(s, &b_sq), show(s, &tau(s, &a)));
    r.expect_eq("tilde-phi_b(a, a, pt) = 1", s.tilde_phi(1, 1, 3, &b), true);
    r.expect_eq("tilde-phi_0(a, a, [M]) = 0", s.tilde_phi(1, 1, 0, &g.zero()), false);
    r.expect_eq("Q+ is not closed", s.q_plus_closed(), false);

    for lambda in [rat2(3, 2), rat(2), rat(5)] {
        let bundle = s2xs2(lambda);
        let s = &bundle.spec;
        r.expect_eq(
            format!("omega(x-) = lambda - 1 at lambda = {}", format_rational(&lambda)),
            format_rational(&s.gamma().omega(&x_minus(s))),
            format_rational(&(lambda - rat(1))),
        );
    }
    r
}

fn q_powers() -> SuiteReport {
    let mut r = SuiteReport::new("q-powers");
    let bundle = s2xs2(rat(2));
    let s = &bundle.spec;
    let circle = bundle.loop_named("circle-action").expect("catalogued");
    let e = rat(12);
    let b = s.gamma().generator(1);
    for m in 1..=6u64 {
        let base = b.scaled(m as i64);
        let even = loop_power(circle, 2 * m as u32, &e).expect("powers compose");
        let expected = binomial_element(s, &[0], &base, m, Energy::Finite(e));
        r.expect_eq(format!("q(g^{}) = [M]<{m}b>(1 + x-)^{m}", 2 * m), show(s, even.q()), show(s, &expected));
        r.expect_eq(format!("I(g^{}) = {}", 2 * m, 2 * m), even.maslov(), 2 * m as i64);

        let odd = loop_power(circle, 2 * m as u32 + 1, &e).expect("powers compose");
        let expected = binomial_element(s, &[1, 2], &base, m, Energy::Finite(e));
        r.expect_eq(
            format!("q(g^{}) = x+<{m}b>(1 + x-)^{m}", 2 * m + 1),
            show(s, odd.q()),
            show(s, &expected),
        );
    }
    let g4 = loop_power(circle, 4, &rat(10)).expect("powers compose");
    let expected = QhElement::from_terms(
        s.gamma().clone(),
        [(0, b.scaled(2)), (0, b.scaled(2).plus(&x_minus(s).scaled(2)))],
        Energy::Finite(rat(10)),
    );
    r.expect_eq("q(g^4) = [M]<2b>(<0> + <2x->) at E=10", show(s, g4.q()), show(s, &expected));
    let one = loop_power(circle, 1, &e).expect("m = 1");
    r.expect_eq(
        "first power is the loop itself",
        show(s, one.q()),
        show(s, &circle.q().truncate(&Energy::Finite(e))),
    );
    r
}

fn geometric_inverse() -> SuiteReport {
    let mut r = SuiteReport::new("geometric-inverse");
    let bundle = s2xs2(rat(2));
    let s = &bundle.spec;
    let g = s.gamma();
    let e = rat2(9, 2);
    let cut = Energy::Finite(e);
    let xp = QhElement::from_terms(g.clone(), [(1, g.zero()), (2, g.zero())], Energy::Infinite);
    let minus_b = g.generator(1).negated();
    // x+ (x) <-b> (<0> + <x-> + <2x-> + ...) up to energy E
    let mut terms = Vec::new();
    for k in 0..20 {
        let gamma = minus_b.plus(&x_minus(s).scaled(k));
        if g.omega(&gamma) <= e {
            terms.push((1, gamma.clone()));
            terms.push((2, gamma));
        }
    }
    let expected = QhElement::from_terms(g.clone(), terms, cut.clone());
    match invert(s, &xp, &e) {
        Ok(InvertOutcome::Inverse(y)) => {
            r.expect_eq("inverse of x+ at E=9/2", show(s, &y), show(s, &expected));
            let back = s.product(&xp, &y).expect("same ring");
            r.check(
                "x+ * inverse = e below E",
                back.agrees_below(&s.unit(), &cut) && back.cutoff() >= &cut,
                s.render(&back),
            );
        }
        other => r.check("inverse of x+ at E=9/2", false, format!("{other:?}")),
    }

    let cp1 = catalog::cp1();
    let s1 = &cp1.spec;
    let l = s1.gamma().generator(0);
    let pt = s1.monomial(1, s1.gamma().zero());
    match invert(s1, &pt, &rat(2)) {
        Ok(InvertOutcome::Inverse(y)) => {
            let expected = QhElement::from_terms(s1.gamma().clone(), [(1, l.negated())], Energy::Finite(rat(2)));
            r.expect_eq("cp1: pt^-1 = pt<-L>", show(s1, &y), show(s1, &expected));
        }
        other => r.check("cp1: pt^-1 = pt<-L>", false, format!("{other:?}")),
    }
    match invert(s1, &s1.unit(), &rat(3)) {
        Ok(InvertOutcome::Inverse(y)) => r.expect_eq(
            "e^-1 = e",
            show(s1, &y),
            show(s1, &s1.unit().truncate(&Energy::Finite(rat(3)))),
        ),
        other => r.check("e^-1 = e", false, format!("{other:?}")),
    }

    let u = NovikovSeries::from_gammas(g.clone(), [g.zero(), x_minus(s)], Energy::Infinite);
    let inv = u.geom_inverse(&rat2(5, 2)).expect("unital");
    let expected =
        NovikovSeries::from_gammas(g.clone(), (0..3).map(|k| x_minus(s).scaled(k)), Energy::Finite(rat2(5, 2)));
    r.expect_eq("(<0> + <x->)^-1 at E=5/2", inv.to_string(), expected.to_string());
    r
}

fn grassmannian() -> SuiteReport {
    let mut r = SuiteReport::new("grassmannian");
    for (bundle, k) in [(catalog::cp1(), 2u32), (catalog::cp2(), 3u32)] {
        let s = &bundle.spec;
        let name = s.name().to_string();
        let rotation = bundle.loop_named("rotation").expect("catalogued");
        let mut acc = rotation.q().clone();
        for _ in 1..k {
            acc = s.product(&acc, rotation.q()).expect("same ring");
        }
        let l = s.gamma().generator(0);
        r.expect_eq(
            format!("{name}: ({} (x) <0>)^{k} = tau(L)", s.basis().name(rotation.q().terms().next().expect("one term").class)),
            show(s, &acc),
            show(s, &tau(s, &l)),
        );
        let p = loop_power(rotation, k, &rat(10)).expect("powers compose");
        r.expect_eq(
            format!("{name}: rotation^{k} lies in tau(Gamma) with gamma = L"),
            format!("{:?}", in_tau_image(s, p.q())),
            format!("{:?}", TauImage::Yes(l.clone())),
        );
        r.expect_eq(format!("{name}: I(rotation^{k}) = {k}"), p.maslov(), i64::from(k));
    }
    let cp2 = catalog::cp2();
    let s = &cp2.spec;
    let line = s.monomial(1, s.gamma().zero());
    let pt = s.monomial(2, s.gamma().zero());
    r.expect_eq(
        "cp2: line * pt = [M]<L>",
        show(s, &s.product(&line, &pt).expect("same ring")),
        show(s, &tau(s, &s.gamma().generator(0))),
    );
    r
}

fn infinite_order() -> SuiteReport {
    let mut r = SuiteReport::new("infinite-order");
    let bundle = s2xs2(rat(2));
    let circle = bundle.loop_named("circle-action").expect("catalogued");
    let verdict = order_lower_bound(circle, 20, &rat(25));
    r.expect_eq(
        "S2xS2 circle action: no tau power up to 20 at E=25",
        format!("{verdict:?}"),
        format!("{:?}", Ok::<_, ()>(OrderBound::NoneUpTo(20))),
    );
    for (bundle, k) in [(catalog::cp1(), 2), (catalog::cp2(), 3)] {
        let rotation = bundle.loop_named("rotation").expect("catalogued");
        let l = bundle.spec.gamma().generator(0);
        let verdict = order_lower_bound(rotation, 5, &rat(6));
        r.expect_eq(
            format!("{} rotation: first tau power at k = {k}", bundle.spec.name()),
            format!("{verdict:?}"),
            format!("{:?}", Ok::<_, ()>(OrderBound::FirstTauPower(k, l))),
        );
    }
    let cp1 = catalog::cp1();
    let l = cp1.spec.gamma().generator(0);
    let id = identity_lift(&cp1.spec, &l).expect("identity lift");
    let verdict = order_lower_bound(&id, 3, &rat(6));
    r.expect_eq(
        "identity with gamma = L: first tau power at k = 1",
        format!("{verdict:?}"),
        format!("{:?}", Ok::<_, ()>(OrderBound::FirstTauPower(1, l))),
    );
    // a No verdict never flips when the cutoff grows
    for e in [rat(25), rat(30), rat(40)] {
        let p = loop_power(circle, 6, &e).expect("powers compose");
        r.check(
            format!("q(g^6) is not in tau(Gamma) at E={}", format_rational(&e)),
            matches!(in_tau_image(&bundle.spec, p.q()), TauImage::No(_)),
            bundle.spec.render(p.q()),
        );
    }
    r
}

fn catalog_bundles() -> Vec<SpecBundle> {
    vec![catalog::cp1(), catalog::cp2(), s2xs2(rat(2)), catalog::cp1xcp1(&rat(2)).expect("lambda > 1")]
}

fn grading_holds(l: &LoopElement) -> bool {
    let s = l.spec();
    match s.degree(l.q()) {
        QhDegree::Homogeneous(d) => d == s.dimension() - 2 * l.maslov(),
        QhDegree::Any => l.q().cutoff().is_finite(),
        QhDegree::NotHomogeneous => false,
    }
}

fn grading(rng: &mut SampleRng) -> SuiteReport {
    use rand::Rng;
    let mut r = SuiteReport::new("grading");
    let bundles = catalog_bundles();
    for b in &bundles {
        for l in &b.loops {
            r.check(
                format!("{} {}: deg q = 2n - 2I", b.spec.name(), l.name()),
                grading_holds(l),
                format!("deg {:?}, I = {}", b.spec.degree(l.q()), l.maslov()),
            );
        }
    }
    let cut = Energy::Finite(rat(8));
    let mut failures = Vec::new();
    for trial in 0..100 {
        let b = &bundles[rng.gen_range(0..bundles.len())];
        let mut generators: Vec<LoopElement> = b.loops.clone();
        let gamma = random_gamma(b.spec.gamma(), rng, 2);
        generators.push(identity_lift(&b.spec, &gamma).expect("identity lift"));
        let pick = |rng: &mut SampleRng| generators[rng.gen_range(0..generators.len())].truncate(&cut);
        let mut acc = pick(rng);
        for _ in 0..rng.gen_range(1..4) {
            let next = pick(rng);
            match compose_loops(&acc, &next) {
                Ok(l) => acc = l.truncate(&cut),
                Err(e) => {
                    failures.push(format!("trial {trial}: {e}"));
                    break;
                }
            }
        }
        if !grading_holds(&acc) {
            failures.push(format!("trial {trial}: {}", acc.name()));
        }
    }
    r.check(
        "100 random compositions keep deg q = 2n - 2I",
        failures.is_empty(),
        failures.first().cloned().unwrap_or_else(|| "100/100".into()),
    );

    let cp1 = catalog::cp1();
    let rotation = cp1.loop_named("rotation").expect("catalogued");
    let l = cp1.spec.gamma().generator(0);
    let shifted = compose_loops(rotation, &identity_lift(&cp1.spec, &l).expect("identity lift")).expect("composes");
    r.expect_eq(
        "rotation composed with (Id, L): q = pt<L>, I = 1 + c1(L)",
        format!("{} I={}", cp1.spec.render(shifted.q()), shifted.maslov()),
        format!("pt<1> I={}", 1 + cp1.spec.gamma().chern(&l)),
    );
    r
}

fn identity_loop(rng: &mut SampleRng) -> SuiteReport {
    let mut r = SuiteReport::new("identity-loop");
    let bundles = catalog_bundles();
    let mut bad = Vec::new();
    for i in 0..50 {
        let b = &bundles[i % bundles.len()];
        let gamma = random_gamma(b.spec.gamma(), rng, 3);
        let lift = identity_lift(&b.spec, &gamma).expect("identity lift");
        if lift.q() != &tau(&b.spec, &gamma) || lift.maslov() != b.spec.gamma().chern(&gamma) {
            bad.push(format!("{} {gamma}", b.spec.name()));
        }
    }
    r.check(
        "q(Id, gamma) = tau(gamma) for 50 random gamma",
        bad.is_empty(),
        bad.first().cloned().unwrap_or_else(|| "50/50".into()),
    );

    let mut bad = Vec::new();
    for i in 0..100 {
        let b = &bundles[i % bundles.len()];
        let s = &b.spec;
        let g1 = random_gamma(s.gamma(), rng, 3);
        let g2 = random_gamma(s.gamma(), rng, 3);
        let lhs = s.product(&tau(s, &g1), &tau(s, &g2)).expect("same ring");
        let rhs = tau(s, &g1.plus(&g2));
        let injective = (tau(s, &g1) == tau(s, &g2)) == (g1 == g2);
        if lhs != rhs || !injective {
            bad.push(format!("{} {g1} {g2}", s.name()));
        }
    }
    r.check(
        "tau(g) * tau(g') = tau(g + g') and tau is injective, 100 pairs",
        bad.is_empty(),
        bad.first().cloned().unwrap_or_else(|| "100/100".into()),
    );

    let mut bad = Vec::new();
    for i in 0..20 {
        let b = &bundles[i % bundles.len()];
        let s = &b.spec;
        let gamma = random_gamma(s.gamma(), rng, 2);
        let x = random_element(s, rng, 4, &rat(4));
        let lift = identity_lift(s, &gamma).expect("identity lift");
        let applied = seidel_apply(s, &lift, &x).expect("same ring");
        if applied != x.shift(&gamma) {
            bad.push(format!("{} {gamma}", s.name()));
        }
        let trivial = identity_lift(s, &s.gamma().zero()).expect("identity lift");
        if seidel_apply(s, &trivial, &x).expect("same ring") != x {
            bad.push(format!("{} trivial lift", s.name()));
        }
    }
    r.check(
        "the (Id, gamma) operator is multiplication by <gamma>",
        bad.is_empty(),
        bad.first().cloned().unwrap_or_else(|| "20/20".into()),
    );
    r
}

/// The CP² intersection ring with no quantum corrections.
pub fn classical_cp2() -> SpecBundle {
    let cp2 = catalog::cp2();
    let s = &cp2.spec;
    let table = GWTable {
        classical: s.table().classical.clone(),
        quantum: vec![],
    };
    let spec = RingSpec::new("classical-cp2", s.gamma().clone(), s.basis().clone(), table).expect("well formed");
    SpecBundle {
        spec: Arc::new(spec),
        loops: vec![],
    }
}

fn obstruction(rng: &mut SampleRng) -> SuiteReport {
    use rand::Rng;
    let mut r = SuiteReport::new("obstruction");
    for bundle in [catalog::classical_only(), classical_cp2()] {
        let s = &bundle.spec;
        let name = s.name().to_string();
        r.expect_eq(format!("{name}: Q+ is closed"), s.q_plus_closed(), true);
        r.check(format!("{name}: validates"), s.validate().is_valid(), s.validate().to_string());
        let n_min = s.gamma().minimal_chern();
        let top = s.dimension();
        let obstructed_degree = |d: i64| if n_min == 0 { d != top } else { (d - top).rem_euclid(2 * n_min) != 0 };

        let mut found = 0;
        let mut bad = Vec::new();
        let mut attempts = 0;
        while found < 50 && attempts < 5000 {
            attempts += 1;
            let d = sample::random_term_degree(s, rng, &rat(6));
            if !obstructed_degree(d) {
                continue;
            }
            let terms = rng.gen_range(1..=4);
            let Some(x) = random_homogeneous(s, rng, d, terms, &rat(6)) else {
                continue;
            };
            found += 1;
            let verdict = degree_obstruction(s, &x);
            let outcome = invert(s, &x, &rat(6));
            let ok = matches!(verdict, Ok(Obstruction::Obstructed))
                && matches!(&outcome, Ok(InvertOutcome::NotInvertible(w)) if w.level == rat(0));
            if !ok {
                bad.push(format!("{} -> {verdict:?}, {outcome:?}", s.render(&x)));
            }
        }
        r.check(
            format!("{name}: 50 obstructed elements are not invertible, level-0 witness"),
            found == 50 && bad.is_empty(),
            bad.first().cloned().unwrap_or_else(|| format!("{found}/50")),
        );
        r.expect_eq(
            format!("{name}: e is not obstructed"),
            format!("{:?}", degree_obstruction(s, &s.unit())),
            format!("{:?}", Ok::<_, ()>(Obstruction::NotObstructed)),
        );
    }
    let cp1 = catalog::cp1();
    r.check(
        "cp1: precondition (Q+ closed) is enforced",
        degree_obstruction(&cp1.spec, &cp1.spec.unit()).is_err(),
        "",
    );
    r
}

/// Outcome of [`axiom_suite`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub samples: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Unit, strict commutativity, associativity and Λ-linearity below the
/// common cutoff, and the degree law on homogeneous samples.
pub fn axiom_suite(s: &RingSpec, samples: usize, e: &Rational, seed: u64) -> AxiomReport {
    use rand::Rng;
    let mut rng = sample::rng(seed);
    let cut = Energy::Finite(*e);
    let unit = s.unit();
    let mut failures = Vec::new();
    let mul = |x: &QhElement, y: &QhElement| s.product(x, y).expect("same ring");
    for i in 0..samples {
        let x = random_element(s, &mut rng, 4, e).truncate(&cut);
        let y = random_element(s, &mut rng, 4, e).truncate(&cut);
        let z = random_element(s, &mut rng, 4, e).truncate(&cut);
        let render = |v: &QhElement| s.render(v);
        if mul(&unit, &x) != x || mul(&x, &unit) != x {
            failures.push(format!("sample {i}: unit fails on {}", render(&x)));
        }
        if mul(&x, &y) != mul(&y, &x) {
            failures.push(format!("sample {i}: {} and {} do not commute", render(&x), render(&y)));
        }
        let left = mul(&mul(&x, &y), &z);
        let right = mul(&x, &mul(&y, &z));
        if !left.agrees(&right) {
            failures.push(format!(
                "sample {i}: associativity fails for {}, {}, {}",
                render(&x),
                render(&y),
                render(&z)
            ));
        }
        let gamma = random_gamma(s.gamma(), &mut rng, 2);
        if !mul(&x.shift(&gamma), &y).agrees(&mul(&x, &y).shift(&gamma)) {
            failures.push(format!("sample {i}: not Lambda-linear in {gamma}"));
        }
        let dx = sample::random_term_degree(s, &mut rng, e);
        let dy = sample::random_term_degree(s, &mut rng, e);
        let terms = rng.gen_range(1..=3);
        if let (Some(hx), Some(hy)) = (
            random_homogeneous(s, &mut rng, dx, terms, e),
            random_homogeneous(s, &mut rng, dy, terms, e),
        ) {
            let p = mul(&hx, &hy);
            let ok = match s.degree(&p) {
                QhDegree::Homogeneous(d) => d == dx + dy - s.dimension(),
                QhDegree::Any => true,
                QhDegree::NotHomogeneous => false,
            };
            if !ok {
                failures.push(format!("sample {i}: degree law fails for {} * {}", render(&hx), render(&hy)));
            }
        }
    }
    AxiomReport { samples, failures }
}

fn ring_axioms(seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("ring-axioms");
    let mut bundles = catalog_bundles();
    bundles.push(catalog::classical_only());
    let reports: Vec<AxiomReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = bundles
            .iter()
            .map(|b| scope.spawn(move || axiom_suite(&b.spec, 200, &rat(6), seed)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("axiom suite panicked")).collect()
    });
    for (b, report) in bundles.iter().zip(reports) {
        r.check(
            format!("{}: 200 samples at E=6", b.spec.name()),
            report.passed(),
            report.failures.first().cloned().unwrap_or_else(|| "200/200".into()),
        );
        r.check(
            format!("{}: table validates", b.spec.name()),
            b.spec.validate().is_valid(),
            b.spec.validate().to_string(),
        );
    }
    r
}

fn truncation(rng: &mut SampleRng) -> SuiteReport {
    let mut r = SuiteReport::new("truncation");
    let bundle = s2xs2(rat(2));
    let s = &bundle.spec;
    let g = s.gamma();
    let mut bad = Vec::new();
    for i in 0..500 {
        let x = sample::random_series(g, rng, 6, &rat(-3), &rat(3));
        let y = sample::random_series(g, rng, 6, &rat(-3), &rat(3));
        let ex = Energy::Finite(sample::random_rational(rng, -3, 4, 2));
        let ey = Energy::Finite(sample::random_rational(rng, -3, 4, 2));
        let full = x.mul(&y).expect("same group");
        let cut = x.truncate(&ex).mul(&y.truncate(&ey)).expect("same group");
        if !cut.agrees_below(&full, cut.cutoff()) {
            bad.push(format!("sample {i}: ({x}) * ({y}) with cutoffs {ex}, {ey} gives {cut}"));
        }
    }
    r.check(
        "500 truncated series products agree below their cutoff",
        bad.is_empty(),
        bad.first().cloned().unwrap_or_else(|| "500/500".into()),
    );

    let mut bad = Vec::new();
    for (i, b) in catalog_bundles().iter().enumerate().cycle().take(200) {
        let s = &b.spec;
        let x = random_element(s, rng, 4, &rat(3));
        let y = random_element(s, rng, 4, &rat(3));
        let ex = Energy::Finite(sample::random_rational(rng, -1, 4, 2));
        let ey = Energy::Finite(sample::random_rational(rng, -1, 4, 2));
        let full = s.product(&x, &y).expect("same ring");
        let cut = s.product(&x.truncate(&ex), &y.truncate(&ey)).expect("same ring");
        if !cut.agrees_below(&full, cut.cutoff()) {
            bad.push(format!("{i}: {} * {} at {ex}, {ey}", s.render(&x), s.render(&y)));
        }
    }
    r.check(
        "200 truncated quantum products agree below their cutoff",
        bad.is_empty(),
        bad.first().cloned().unwrap_or_else(|| "200/200".into()),
    );
    r
}
