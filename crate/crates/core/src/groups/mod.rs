//! Fully enumerated finite groups. Elements are canonical fixed-width byte
//! encodings; index 0 is the identity and the remaining indices are sorted by
//! encoding, so element numbering is reproducible across runs.

mod construct;
pub mod rep;
pub mod spec;

pub use construct::heis3_order2_automorphism_count;
pub use spec::{parse_spec, prime_power_u64, GroupSpec};

use std::collections::HashSet;
use std::sync::OnceLock;

use num_integer::Integer;

use crate::PcgError;
use rep::Rep;

/// Default cap on the number of enumerated elements.
pub const DEFAULT_CAP: u64 = 100_000;

/// Groups up to this order store a dense multiplication table.
const DENSE_TABLE_LIMIT: usize = 2000;

/// An enumerated finite group with multiplication, identity and inversion on
/// element indices.
#[derive(Debug)]
pub struct FiniteGroup {
    label: String,
    rep: Rep,
    width: usize,
    /// Concatenated canonical encodings; element i occupies
    /// `elems[i*width .. (i+1)*width]`. Index 0 is the identity; the rest are
    /// sorted lexicographically.
    elems: Vec<u8>,
    n: usize,
    inv: Vec<u32>,
    generators: Vec<u32>,
    table: Option<Vec<u32>>,
    orders: OnceLock<Vec<u64>>,
}

/// Builds the group described by `spec`, enumerating elements by closure from
/// generators. Fails if the known order formula exceeds `cap`.
pub fn build_group(spec: &GroupSpec, cap: u64) -> Result<FiniteGroup, PcgError> {
    let expected = spec.order();
    if expected > cap as u128 {
        return Err(PcgError::CapExceeded {
            order: expected,
            cap,
        });
    }
    let (rep, gens) = construct::rep_and_generators(spec)?;
    FiniteGroup::from_parts(spec.to_string(), rep, gens, expected, cap)
}

impl FiniteGroup {
    pub(crate) fn from_parts(
        label: String,
        rep: Rep,
        gens: Vec<Vec<u8>>,
        expected_order: u128,
        cap: u64,
    ) -> Result<FiniteGroup, PcgError> {
        let width = rep.width();
        let identity = rep.identity();
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        seen.insert(identity.clone());
        let mut frontier = vec![identity.clone()];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = rep.mul(&x, g);
                if !seen.contains(&y) {
                    if seen.len() as u64 >= cap {
                        return Err(PcgError::CapExceeded {
                            order: seen.len() as u128 + 1,
                            cap,
                        });
                    }
                    seen.insert(y.clone());
                    frontier.push(y);
                }
            }
        }
        let mut sorted: Vec<Vec<u8>> = seen.into_iter().filter(|e| *e != identity).collect();
        sorted.sort_unstable();
        let n = sorted.len() + 1;
        assert_eq!(
            n as u128, expected_order,
            "enumerated order of {label} disagrees with the family formula"
        );
        let mut elems = Vec::with_capacity(n * width);
        elems.extend_from_slice(&identity);
        for e in &sorted {
            elems.extend_from_slice(e);
        }
        let mut group = FiniteGroup {
            label,
            rep,
            width,
            elems,
            n,
            inv: Vec::new(),
            generators: Vec::new(),
            table: None,
            orders: OnceLock::new(),
        };
        group.inv = (0..n as u32)
            .map(|i| {
                let inv_enc = group.rep.inv(group.element(i));
                group.index_of(&inv_enc).expect("inverse stays in the group")
            })
            .collect();
        group.generators = gens
            .iter()
            .map(|g| group.index_of(g).expect("generator is a group element"))
            .collect();
        group.generators.sort_unstable();
        group.generators.dedup();
        if n <= DENSE_TABLE_LIMIT {
            let mut table = vec![0u32; n * n];
            for i in 0..n as u32 {
                for j in 0..n as u32 {
                    let prod = group.rep.mul(group.element(i), group.element(j));
                    table[i as usize * n + j as usize] =
                        group.index_of(&prod).expect("closure");
                }
            }
            group.table = Some(table);
        }
        Ok(group)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> u64 {
        self.n as u64
    }

    pub(crate) fn width(&self) -> usize {
        self.width
    }

    pub(crate) fn rep(&self) -> &Rep {
        &self.rep
    }

    pub fn identity_index(&self) -> u32 {
        0
    }

    /// Indices of the generators used for enumeration.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Canonical encoding of element `i`.
    pub fn element(&self, i: u32) -> &[u8] {
        &self.elems[i as usize * self.width..(i as usize + 1) * self.width]
    }

    pub fn index_of(&self, enc: &[u8]) -> Option<u32> {
        if enc == self.element(0) {
            return Some(0);
        }
        let mut lo = 1usize;
        let mut hi = self.n;
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.element(mid as u32).cmp(enc) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Equal => return Some(mid as u32),
                std::cmp::Ordering::Greater => hi = mid,
            }
        }
        None
    }

    pub fn mul(&self, i: u32, j: u32) -> u32 {
        if let Some(t) = &self.table {
            return t[i as usize * self.n + j as usize];
        }
        let prod = self.rep.mul(self.element(i), self.element(j));
        self.index_of(&prod).expect("closure")
    }

    pub fn inv(&self, i: u32) -> u32 {
        self.inv[i as usize]
    }

    pub fn pow(&self, x: u32, mut e: u64) -> u32 {
        let mut base = x;
        let mut acc = 0u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn render_element(&self, i: u32) -> String {
        self.rep.render(self.element(i))
    }

    /// Orders of all elements, computed once by walking power cycles: a walk
    /// of `<x>` yields the order of every power of x at once.
    pub fn orders(&self) -> &[u64] {
        self.orders.get_or_init(|| {
            let mut orders = vec![0u64; self.n];
            orders[0] = 1;
            for x in 0..self.n as u32 {
                if orders[x as usize] != 0 {
                    continue;
                }
                let mut cycle = vec![x];
                let mut cur = x;
                loop {
                    cur = self.mul(cur, x);
                    if cur == 0 {
                        break;
                    }
                    cycle.push(cur);
                }
                let len = cycle.len() as u64 + 1; // include the identity step
                for (t, &y) in cycle.iter().enumerate() {
                    if orders[y as usize] == 0 {
                        orders[y as usize] = len / len.gcd(&(t as u64 + 1));
                    }
                }
            }
            orders
        })
    }

    /// Least `t >= 1` with `x^t = identity`.
    pub fn element_order(&self, x: u32) -> u64 {
        self.orders()[x as usize]
    }

    /// `<x>` as a sorted set of element indices.
    pub fn cyclic_subgroup(&self, x: u32) -> Vec<u32> {
        let mut members = vec![0u32];
        let mut cur = x;
        while cur != 0 {
            members.push(cur);
            cur = self.mul(cur, x);
        }
        members.sort_unstable();
        members
    }

    /// The conjugacy class of `x` (orbit under conjugation by generators).
    pub fn conjugacy_class(&self, x: u32) -> Vec<u32> {
        let mut seen = HashSet::new();
        seen.insert(x);
        let mut frontier = vec![x];
        while let Some(z) = frontier.pop() {
            for &g in &self.generators {
                let y = self.mul(self.mul(g, z), self.inv(g));
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        let mut out: Vec<u32> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// True iff some `t` conjugates `x` to `y`.
    pub fn are_conjugate(&self, x: u32, y: u32) -> bool {
        if x == y {
            return true;
        }
        if self.element_order(x) != self.element_order(y) {
            return false;
        }
        self.conjugacy_class(x).binary_search(&y).is_ok()
    }

    /// Nilpotency via the elementary characterization: every pair of elements
    /// of coprime order commutes.
    pub fn is_nilpotent(&self) -> bool {
        let orders = self.orders();
        for i in 1..self.n as u32 {
            for j in (i + 1)..self.n as u32 {
                if orders[i as usize].gcd(&orders[j as usize]) == 1
                    && self.mul(i, j) != self.mul(j, i)
                {
                    return false;
                }
            }
        }
        true
    }

    /// All maximal cyclic subgroups, plus whether every pairwise intersection
    /// is trivial. `<x>` is maximal iff no power cycle of a higher-order
    /// element passes through x.
    pub fn maximal_cyclic_subgroups(&self) -> MaximalCyclics {
        let orders = self.orders();
        let mut dominated = vec![false; self.n];
        for y in 0..self.n as u32 {
            let oy = orders[y as usize];
            let mut cur = y;
            loop {
                if orders[cur as usize] < oy {
                    dominated[cur as usize] = true;
                }
                cur = self.mul(cur, y);
                if cur == y {
                    break;
                }
            }
        }
        let mut distinct: HashSet<Vec<u32>> = HashSet::new();
        for x in 0..self.n as u32 {
            if !dominated[x as usize] {
                distinct.insert(self.cyclic_subgroup(x));
            }
        }
        let mut subgroups: Vec<Vec<u32>> = distinct.into_iter().collect();
        subgroups.sort_unstable();
        // Trivial pairwise intersections iff no non-identity element appears
        // in two of them.
        let mut membership = vec![0u8; self.n];
        let mut pairwise_trivial = true;
        for s in &subgroups {
            for &m in s {
                if m == 0 {
                    continue;
                }
                membership[m as usize] += 1;
                if membership[m as usize] > 1 {
                    pairwise_trivial = false;
                }
            }
        }
        MaximalCyclics {
            subgroups,
            pairwise_trivial,
        }
    }
}

/// Result of [`FiniteGroup::maximal_cyclic_subgroups`].
#[derive(Debug, Clone)]
pub struct MaximalCyclics {
    /// Sorted member lists of each maximal cyclic subgroup.
    pub subgroups: Vec<Vec<u32>>,
    /// True iff any two distinct maximal cyclic subgroups intersect in the
    /// identity alone.
    pub pairwise_trivial: bool,
}

impl MaximalCyclics {
    /// The multiset of subgroup orders, sorted.
    pub fn orders(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.subgroups.iter().map(|s| s.len() as u64).collect();
        v.sort_unstable();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn build(text: &str) -> FiniteGroup {
        build_group(&parse_spec(text).unwrap(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn orders_match_family_formulas() {
        for (text, order) in [
            ("cyclic:1", 1),
            ("cyclic:12", 12),
            ("dihedral:6", 12),
            ("sym:5", 120),
            ("alt:5", 60),
            ("alt:2", 1),
            ("heis3", 27),
            ("heis3_c2:0", 54),
            ("psl2:4", 60),
            ("psl2:5", 60),
            ("psl2:7", 168),
            ("psl2:9", 360),
            ("sl3:2", 168),
            ("dp(cyclic:4,cyclic:6)", 24),
            ("sd(7,6,3)", 42),
        ] {
            assert_eq!(build(text).order(), order, "{text}");
        }
    }

    #[test]
    fn m11_closure_reaches_7920() {
        let g = build("m11");
        assert_eq!(g.order(), 7920);
        // The 11-cycle generator has order 11.
        let eleven = g
            .generators()
            .iter()
            .copied()
            .find(|&x| g.element_order(x) == 11);
        assert!(eleven.is_some());
    }

    #[test]
    fn group_axioms_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for text in [
            "cyclic:24",
            "dihedral:9",
            "sym:5",
            "alt:6",
            "heis3",
            "heis3_c2:3",
            "psl2:8",
            "psl2:9",
            "dp(cyclic:4,sym:3)",
            "sd(7,6,3)",
        ] {
            let g = build(text);
            let n = g.order() as u32;
            let e = g.identity_index();
            for x in 0..n {
                assert_eq!(g.mul(e, x), x);
                assert_eq!(g.mul(x, e), x);
                assert_eq!(g.mul(x, g.inv(x)), e);
                assert_eq!(g.mul(g.inv(x), x), e);
            }
            for _ in 0..10_000 {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                let c = rng.gen_range(0..n);
                assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
            }
            // Lagrange.
            for x in 0..n {
                assert_eq!(g.order() % g.element_order(x), 0);
            }
        }
    }

    #[test]
    fn element_order_examples() {
        let c12 = build("cyclic:12");
        assert_eq!(c12.element_order(c12.identity_index()), 1);
        // Elements of cyclic:12 are a^i at index i.
        assert_eq!(c12.element_order(3), 4);
        let m11 = build("m11");
        let orders: std::collections::BTreeSet<u64> =
            (0..m11.order() as u32).map(|x| m11.element_order(x)).collect();
        assert_eq!(orders, [1, 2, 3, 4, 5, 6, 8, 11].into_iter().collect());
    }

    #[test]
    fn cyclic_subgroup_examples() {
        let c6 = build("cyclic:6");
        assert_eq!(c6.cyclic_subgroup(c6.identity_index()), vec![0]);
        assert_eq!(c6.cyclic_subgroup(1).len(), 6);
        assert_eq!(c6.cyclic_subgroup(2).len(), 3);
    }

    #[test]
    fn conjugacy_in_sym4() {
        let s4 = build("sym:4");
        // Cycle count distinguishes transpositions from double transpositions.
        let cycles = |x: u32| s4.render_element(x).matches('(').count();
        let transpositions: Vec<u32> = (0..s4.order() as u32)
            .filter(|&x| s4.element_order(x) == 2 && cycles(x) == 1)
            .collect();
        let doubles: Vec<u32> = (0..s4.order() as u32)
            .filter(|&x| s4.element_order(x) == 2 && cycles(x) == 2)
            .collect();
        assert_eq!(transpositions.len(), 6);
        assert_eq!(doubles.len(), 3);
        assert!(s4.are_conjugate(transpositions[0], transpositions[0]));
        assert!(s4.are_conjugate(transpositions[0], transpositions[5]));
        assert!(!s4.are_conjugate(doubles[0], transpositions[0]));
    }

    #[test]
    fn nilpotency_examples() {
        assert!(build("cyclic:12").is_nilpotent());
        assert!(!build("dihedral:6").is_nilpotent());
        assert!(build("heis3").is_nilpotent());
        assert!(build("dp(cyclic:4,cyclic:6)").is_nilpotent());
        assert!(!build("sym:3").is_nilpotent());
    }

    #[test]
    fn maximal_cyclics_examples() {
        let s5 = build("sym:5");
        let mc = s5.maximal_cyclic_subgroups();
        let orders: std::collections::BTreeSet<u64> = mc.orders().into_iter().collect();
        assert_eq!(orders, [4, 5, 6].into_iter().collect());
        assert!(mc.pairwise_trivial);

        let c6 = build("cyclic:6");
        let mc = c6.maximal_cyclic_subgroups();
        assert_eq!(mc.subgroups.len(), 1);
        assert_eq!(mc.subgroups[0].len(), 6);

        let d6 = build("dihedral:6");
        let mc = d6.maximal_cyclic_subgroups();
        let orders: std::collections::BTreeSet<u64> = mc.orders().into_iter().collect();
        assert_eq!(orders, [2, 6].into_iter().collect());
        assert!(mc.pairwise_trivial);
    }

    #[test]
    fn psl27_and_sl32_share_order_statistics() {
        let a = build("psl2:7");
        let b = build("sl3:2");
        assert_eq!(a.order(), 168);
        assert_eq!(b.order(), 168);
        let stats = |g: &FiniteGroup| {
            let mut v: Vec<u64> = (0..g.order() as u32).map(|x| g.element_order(x)).collect();
            v.sort_unstable();
            v
        };
        assert_eq!(stats(&a), stats(&b));
    }

    #[test]
    fn heis3_has_45_order2_automorphisms() {
        // 9 lifts of -I plus 36 lifts of the reflections of GL(2,3).
        assert_eq!(heis3_order2_automorphism_count(), 45);
    }

    #[test]
    fn cap_is_enforced() {
        let spec = parse_spec("sym:9").unwrap();
        match build_group(&spec, DEFAULT_CAP) {
            Err(PcgError::CapExceeded { order, .. }) => assert_eq!(order, 362880),
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn canonical_indexing_is_deterministic() {
        let a = build("psl2:5");
        let b = build("psl2:5");
        for i in 0..a.order() as u32 {
            assert_eq!(a.element(i), b.element(i));
        }
    }
}
