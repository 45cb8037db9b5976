//! The builtin quantum tables against an independent dense model: every
//! degree-admissible table is enumerated, and associativity on basis
//! triples (with the divisor axiom where associativity alone leaves a
//! choice) must single out the catalogued one.

use seidel_core::catalog;
use seidel_core::num::{rat, Energy};
use seidel_core::quantum::{QhElement, RingSpec};

/// Elements over Z/2[Γ] with Γ ⊆ Z² and exponents in [0, 5), as a bitset
/// indexed by `class * 25 + i * 5 + j`.
type Dense = u128;

const SIDE: usize = 5;

fn bit(class: usize, i: usize, j: usize) -> Dense {
    1 << (class * SIDE * SIDE + i * SIDE + j)
}

fn support(mut x: Dense) -> impl Iterator<Item = (usize, usize, usize)> {
    std::iter::from_fn(move || {
        (x != 0).then(|| {
            let k = x.trailing_zeros() as usize;
            x &= x - 1;
            (k / 25, k / 5 % 5, k % 5)
        })
    })
}

fn shift(x: Dense, di: usize, dj: usize) -> Dense {
    support(x).fold(0, |acc, (c, i, j)| {
        assert!(i + di < SIDE && j + dj < SIDE, "exponent overflow");
        acc ^ bit(c, i + di, j + dj)
    })
}

struct Table {
    size: usize,
    entries: Vec<Vec<Dense>>,
}

impl Table {
    fn classical(size: usize, rows: &[(usize, usize, usize)]) -> Self {
        let mut entries = vec![vec![0; size]; size];
        for a in 0..size {
            entries[0][a] = bit(a, 0, 0);
            entries[a][0] = bit(a, 0, 0);
        }
        for &(x, y, z) in rows {
            entries[x][y] ^= bit(z, 0, 0);
            if x != y {
                entries[y][x] ^= bit(z, 0, 0);
            }
        }
        Table { size, entries }
    }

    fn toggle(&mut self, x: usize, y: usize, gamma: (usize, usize), z: usize) {
        self.entries[x][y] ^= bit(z, gamma.0, gamma.1);
        if x != y {
            self.entries[y][x] ^= bit(z, gamma.0, gamma.1);
        }
    }

    fn mul(&self, x: Dense, y: Dense) -> Dense {
        let mut out = 0;
        for (c1, i1, j1) in support(x) {
            for (c2, i2, j2) in support(y) {
                out ^= shift(self.entries[c1][c2], i1 + i2, j1 + j2);
            }
        }
        out
    }

    fn associative(&self) -> bool {
        let basis: Vec<Dense> = (0..self.size).map(|c| bit(c, 0, 0)).collect();
        for &x in &basis {
            for &y in &basis {
                let xy = self.mul(x, y);
                for &z in &basis {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn to_element(s: &RingSpec, x: Dense) -> QhElement {
    let g = s.gamma();
    let gen = |k: usize, e: usize| if k < g.rank() { g.generator(k).scaled(e as i64) } else { g.zero() };
    let terms = support(x).map(|(c, i, j)| (c, gen(0, i).plus(&gen(1, j))));
    QhElement::from_terms(g.clone(), terms, Energy::Infinite)
}

fn agrees_with_library(s: &RingSpec, t: &Table) {
    for x in 0..t.size {
        for y in 0..t.size {
            let lib = s.product(&to_element(s, bit(x, 0, 0)), &to_element(s, bit(y, 0, 0))).unwrap();
            assert_eq!(lib, to_element(s, t.mul(bit(x, 0, 0), bit(y, 0, 0))), "{x} * {y}");
        }
    }
}

// CP²: [M] = 0, line = 1, pt = 2; Γ = Z·L with L stored in the i exponent.
#[test]
fn cp2_table_is_the_only_nontrivial_associative_one() {
    let candidates = [(1, 2, 0), (2, 2, 1)];
    let mut survivors = Vec::new();
    for mask in 0..1u32 << candidates.len() {
        let mut t = Table::classical(3, &[(1, 1, 2)]);
        for (k, &(x, y, z)) in candidates.iter().enumerate() {
            if mask >> k & 1 == 1 {
                t.toggle(x, y, (1, 0), z);
            }
        }
        if t.associative() {
            survivors.push(mask);
        }
    }
    assert_eq!(survivors, vec![0b00, 0b11]);

    let mut ours = Table::classical(3, &[(1, 1, 2)]);
    ours.toggle(1, 2, (1, 0), 0);
    ours.toggle(2, 2, (1, 0), 1);
    agrees_with_library(&catalog::cp2().spec, &ours);

    // line³ = [M]<L>
    let line = bit(1, 0, 0);
    assert_eq!(ours.mul(ours.mul(line, line), line), bit(0, 1, 0));
}

// CP¹×CP¹: [M] = 0, a = 1, b = 2, pt = 3; γ = i·a + j·b.
#[test]
fn cp1xcp1_table_is_pinned_by_associativity_and_divisor_axiom() {
    let mut candidates = vec![(1, 2, (1, 0), 0), (1, 2, (0, 1), 0)];
    for x in [1, 2] {
        for g in [(1, 0), (0, 1)] {
            for z in [1, 2] {
                candidates.push((x, 3, g, z));
            }
        }
    }
    candidates.push((3, 3, (1, 0), 3));
    candidates.push((3, 3, (0, 1), 3));
    for g in [(2, 0), (1, 1), (0, 2)] {
        candidates.push((3, 3, g, 0));
    }
    assert_eq!(candidates.len(), 15);

    let base = || {
        let mut t = Table::classical(4, &[(1, 2, 3)]);
        // a * a = [M]<b> and b * b = [M]<a> are given
        t.toggle(1, 1, (0, 1), 0);
        t.toggle(2, 2, (1, 0), 0);
        t
    };
    let mut survivors = Vec::new();
    for mask in 0..1u32 << candidates.len() {
        let mut t = base();
        for (k, &(x, y, g, z)) in candidates.iter().enumerate() {
            if mask >> k & 1 == 1 {
                t.toggle(x, y, g, z);
            }
        }
        if t.associative() {
            survivors.push(t);
        }
    }
    assert_eq!(survivors.len(), 4);
    // Divisor axiom mod 2: a divisor D can only appear in a γ-entry when
    // D·γ is odd, and a·(i, j) = j, b·(i, j) = i.
    let divisor_ok = |t: &Table| {
        (0..4).all(|y| {
            support(t.entries[1][y]).all(|(_, i, j)| i + j == 0 || j % 2 == 1)
                && support(t.entries[2][y]).all(|(_, i, j)| i + j == 0 || i % 2 == 1)
        })
    };
    let survivors: Vec<&Table> = survivors.iter().filter(|t| divisor_ok(t)).collect();
    assert_eq!(survivors.len(), 1);
    let ours = survivors[0];

    let mut expected = base();
    expected.toggle(1, 3, (0, 1), 2);
    expected.toggle(2, 3, (1, 0), 1);
    expected.toggle(3, 3, (1, 1), 0);
    assert_eq!(ours.entries, expected.entries);

    for lambda in [rat(2), rat(5)] {
        agrees_with_library(&catalog::cp1xcp1(&lambda).unwrap().spec, ours);
    }

    // (a + b)² = [M]<b> + [M]<a>
    let x = bit(1, 0, 0) ^ bit(2, 0, 0);
    assert_eq!(ours.mul(x, x), bit(0, 0, 1) ^ bit(0, 1, 0));
}

#[test]
fn cp1_table_agrees_with_dense_model() {
    let mut t = Table::classical(2, &[]);
    t.toggle(1, 1, (1, 0), 0);
    assert!(t.associative());
    agrees_with_library(&catalog::cp1().spec, &t);
}
