//! Classifiers for the power-cograph property. Every group-level theorem is
//! an executable check, each cross-checkable against the brute-force route
//! (build the graph, run cograph recognition).

mod family;
mod table;

pub use family::{classify_spec, family_row, family_sweep, FamilyRow, NumberReport};
pub use table::{simple_verdict_table, TableRow};

use std::collections::{HashMap, HashSet};

use crate::cograph::{decompose, Cotree, Recognition};
use crate::groups::FiniteGroup;
use crate::numtheory::{is_prime_u64, trial_factor_u64, Nat, NicenessClass};
use crate::powergraph::{derived_graph, p2_restriction, power_graph, DerivedKind};
use crate::PcgError;

/// Which route produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Brute,
    Criterion,
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Route::Brute => write!(f, "brute"),
            Route::Criterion => write!(f, "criterion"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictTag {
    IsCograph,
    NotCograph,
    Unknown,
}

impl std::fmt::Display for VerdictTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerdictTag::IsCograph => write!(f, "IsCograph"),
            VerdictTag::NotCograph => write!(f, "NotCograph"),
            VerdictTag::Unknown => write!(f, "Unknown"),
        }
    }
}

/// An induced P4 in the power graph, in group-element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupP4 {
    pub elements: [u32; 4],
}

/// Elements g, h of orders pr and pq (p, q, r prime, p != q) with g^r = h^q,
/// and g^p outside <h^p> whenever q = r. Their existence is equivalent to the
/// power graph not being a cograph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairWitness {
    pub g: u32,
    pub h: u32,
    pub p: u64,
    pub q: u64,
    pub r: u64,
}

#[derive(Debug, Clone)]
pub enum Evidence {
    /// Cotree of the order-restricted power graph (brute IsCograph).
    Cotree(Cotree),
    /// Induced path mapped back to group elements (brute NotCograph).
    P4(GroupP4),
    /// Minimal-pair witness (criterion NotCograph on a built group).
    Pair(PairWitness),
    /// The offending derived number with its factorization class
    /// (criterion NotCograph from parameters alone).
    NonNice {
        label: String,
        value: Nat,
        class: NicenessClass,
    },
    Reason(String),
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub tag: VerdictTag,
    pub evidence: Evidence,
    pub route: Route,
}

impl Verdict {
    pub fn criterion(tag: VerdictTag, evidence: Evidence) -> Verdict {
        Verdict {
            tag,
            evidence,
            route: Route::Criterion,
        }
    }

    /// One-line rendering of the evidence.
    pub fn evidence_text(&self, group: Option<&FiniteGroup>) -> String {
        match &self.evidence {
            Evidence::Cotree(t) => format!("cotree with {} leaves", t.leaf_count()),
            Evidence::P4(w) => {
                let names: Vec<String> = w
                    .elements
                    .iter()
                    .map(|&e| match group {
                        Some(g) => g.render_element(e),
                        None => e.to_string(),
                    })
                    .collect();
                format!("induced path {}", names.join(" ~ "))
            }
            Evidence::Pair(w) => {
                let name = |e: u32| match group {
                    Some(g) => g.render_element(e),
                    None => e.to_string(),
                };
                format!(
                    "pair g={} h={} with p={} q={} r={}",
                    name(w.g),
                    name(w.h),
                    w.p,
                    w.q,
                    w.r
                )
            }
            Evidence::NonNice { label, value, class } => {
                format!("{label} = {value} is {class}")
            }
            Evidence::Reason(r) => r.clone(),
        }
    }
}

/// Brute-force route: build the induced power graph on elements whose order
/// has at most two prime factors (a cograph iff the full power graph is one)
/// and run recognition on it.
pub fn pcg_bruteforce(g: &FiniteGroup) -> Verdict {
    let restricted = p2_restriction(g);
    if restricted.vertex_count() == 0 {
        return Verdict {
            tag: VerdictTag::IsCograph,
            evidence: Evidence::Reason("no elements of qualifying order".into()),
            route: Route::Brute,
        };
    }
    match decompose(&restricted) {
        Recognition::Cograph(t) => Verdict {
            tag: VerdictTag::IsCograph,
            evidence: Evidence::Cotree(t),
            route: Route::Brute,
        },
        Recognition::NotCograph(w) => {
            let labels = restricted.labels().expect("restriction carries labels");
            Verdict {
                tag: VerdictTag::NotCograph,
                evidence: Evidence::P4(GroupP4 {
                    elements: w.vertices().map(|v| labels[v as usize] as u32),
                }),
                route: Route::Brute,
            }
        }
    }
}

/// True iff every element order is a prime power.
pub fn is_eppo(g: &FiniteGroup) -> bool {
    g.orders().iter().all(|&o| {
        o == 1 || trial_factor_u64(o).expect("element order is small").len() == 1
    })
}

/// The three equivalent conditions: (a) every element has prime power order,
/// (b) the Gruenberg-Kegel graph has no edges, (c) power graph = enhanced
/// power graph. When they hold, the power graph is additionally confirmed to
/// be a cograph by the brute route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EppoReport {
    pub eppo: bool,
    pub gk_edgeless: bool,
    pub power_equals_enhanced: bool,
    /// Set when the conditions hold: brute-force confirmation of the cograph
    /// consequence.
    pub pcg_confirmed: Option<bool>,
}

impl EppoReport {
    pub fn holds(&self) -> bool {
        self.eppo
    }
}

/// Evaluates the three conditions and insists they agree; disagreement (or a
/// failed cograph consequence) is an internal defect, never a verdict.
pub fn eppo_equivalences(g: &FiniteGroup) -> Result<EppoReport, PcgError> {
    let eppo = is_eppo(g);
    let gk_edgeless = derived_graph(g, DerivedKind::Gk).edge_count() == 0;
    let power_equals_enhanced = {
        let p = power_graph(g);
        let e = derived_graph(g, DerivedKind::Enhanced);
        p == e
    };
    if eppo != gk_edgeless || eppo != power_equals_enhanced {
        return Err(PcgError::Internal(format!(
            "equivalent conditions disagree on {}: eppo={eppo} gk_edgeless={gk_edgeless} power=enhanced={power_equals_enhanced}",
            g.label()
        )));
    }
    let pcg_confirmed = if eppo {
        let verdict = pcg_bruteforce(g);
        if verdict.tag != VerdictTag::IsCograph {
            return Err(PcgError::Internal(format!(
                "{} satisfies the prime-power-order conditions but its power graph is not a cograph",
                g.label()
            )));
        }
        Some(true)
    } else {
        None
    };
    Ok(EppoReport {
        eppo,
        gk_edgeless,
        power_equals_enhanced,
        pcg_confirmed,
    })
}

/// Prime pair (u, v) when o = u * v with u <= v (counting multiplicity).
fn two_prime_split(o: u64) -> Option<(u64, u64)> {
    let f = trial_factor_u64(o)?;
    match f.as_slice() {
        [(p, 2)] => Some((*p, *p)),
        [(p, 1), (q, 1)] => Some((*p, *q)),
        _ => None,
    }
}

/// Searches for the element pair whose existence is equivalent to the power
/// graph containing an induced P4. The search is deterministic: ascending
/// element index for g, then ascending h.
pub fn minimal_pair_search(g: &FiniteGroup) -> Option<PairWitness> {
    let n = g.order() as u32;
    let orders = g.orders();
    // Bucket candidate h elements by (h^q, p) where o(h) = p*q, p != q.
    let mut buckets: HashMap<(u32, u64), Vec<(u32, u64)>> = HashMap::new();
    for h in 0..n {
        if let Some((u, v)) = two_prime_split(orders[h as usize]) {
            if u == v {
                continue; // h needs two distinct primes
            }
            buckets.entry((g.pow(h, v), u)).or_default().push((h, v));
            buckets.entry((g.pow(h, u), v)).or_default().push((h, u));
        }
    }
    for cand_g in 0..n {
        let Some((u, v)) = two_prime_split(orders[cand_g as usize]) else {
            continue;
        };
        let assignments: &[(u64, u64)] = if u == v { &[(u, u)] } else { &[(u, v), (v, u)] };
        let mut best: Option<PairWitness> = None;
        for &(p, r) in assignments {
            let z = g.pow(cand_g, r);
            let Some(list) = buckets.get(&(z, p)) else {
                continue;
            };
            for &(h, q) in list {
                if q == r {
                    // Condition (b): g^p must lie outside <h^p>.
                    let gp = g.pow(cand_g, p);
                    let hp_sub = g.cyclic_subgroup(g.pow(h, p));
                    if hp_sub.binary_search(&gp).is_ok() {
                        continue;
                    }
                }
                if best.map_or(true, |b| h < b.h) {
                    best = Some(PairWitness {
                        g: cand_g,
                        h,
                        p,
                        q,
                        r,
                    });
                }
                break; // lists are ascending in h
            }
        }
        if best.is_some() {
            return best;
        }
    }
    None
}

/// Re-verifies every condition of a pair witness, independently of how it
/// was found.
pub fn verify_pair_witness(g: &FiniteGroup, w: &PairWitness) -> bool {
    let PairWitness { g: ge, h, p, q, r } = *w;
    if !is_prime_u64(p) || !is_prime_u64(q) || !is_prime_u64(r) || p == q {
        return false;
    }
    if g.element_order(ge) != p * r || g.element_order(h) != p * q {
        return false;
    }
    if g.pow(ge, r) != g.pow(h, q) {
        return false;
    }
    if q == r {
        let gp = g.pow(ge, p);
        let hp_sub = g.cyclic_subgroup(g.pow(h, p));
        if hp_sub.binary_search(&gp).is_ok() {
            return false;
        }
    }
    true
}

/// True iff the group has an element a of order 4 and b of order 6 with a^2
/// conjugate to b^3 (a sufficient condition for not being a power-cograph
/// group).
pub fn four_six_test(g: &FiniteGroup) -> bool {
    let orders = g.orders();
    let cubes_of_order6: HashSet<u32> = (0..g.order() as u32)
        .filter(|&b| orders[b as usize] == 6)
        .map(|b| g.pow(b, 3))
        .collect();
    if cubes_of_order6.is_empty() {
        return false;
    }
    let squares_of_order4: HashSet<u32> = (0..g.order() as u32)
        .filter(|&a| orders[a as usize] == 4)
        .map(|a| g.pow(a, 2))
        .collect();
    for &x in &squares_of_order4 {
        let class = g.conjugacy_class(x);
        if class.iter().any(|c| cubes_of_order6.contains(c)) {
            return true;
        }
    }
    false
}

/// Verdict for a nilpotent group: a cograph iff the order is a prime power,
/// or the group is cyclic of order pq for distinct primes p, q. Rejects
/// non-nilpotent input. NotCograph verdicts carry a minimal-pair witness.
pub fn classify_nilpotent(g: &FiniteGroup) -> Result<Verdict, PcgError> {
    if !g.is_nilpotent() {
        return Err(PcgError::InvalidParameter(format!(
            "{} is not nilpotent",
            g.label()
        )));
    }
    let n = g.order();
    if n == 1 {
        return Ok(Verdict::criterion(
            VerdictTag::IsCograph,
            Evidence::Reason("trivial group".into()),
        ));
    }
    let factors = trial_factor_u64(n).expect("group order is small");
    if factors.len() == 1 {
        return Ok(Verdict::criterion(
            VerdictTag::IsCograph,
            Evidence::Reason(format!(
                "nilpotent of prime power order {} = {}^{}",
                n, factors[0].0, factors[0].1
            )),
        ));
    }
    let is_cpq = factors.len() == 2
        && factors.iter().all(|&(_, e)| e == 1)
        && (0..n as u32).any(|x| g.element_order(x) == n);
    if is_cpq {
        return Ok(Verdict::criterion(
            VerdictTag::IsCograph,
            Evidence::Reason(format!(
                "cyclic of order {} = {} * {}",
                n, factors[0].0, factors[1].0
            )),
        ));
    }
    let witness = minimal_pair_search(g).ok_or_else(|| {
        PcgError::Internal(format!(
            "nilpotent group {} must contain a minimal pair but none was found",
            g.label()
        ))
    })?;
    Ok(Verdict::criterion(
        VerdictTag::NotCograph,
        Evidence::Pair(witness),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_group, parse_spec, DEFAULT_CAP};

    fn build(text: &str) -> FiniteGroup {
        build_group(&parse_spec(text).unwrap(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(pcg_bruteforce(&build("sym:5")).tag, VerdictTag::IsCograph);
        assert_eq!(pcg_bruteforce(&build("sym:6")).tag, VerdictTag::NotCograph);
        assert_eq!(
            pcg_bruteforce(&build("dp(cyclic:4,cyclic:6)")).tag,
            VerdictTag::NotCograph
        );
        assert_eq!(pcg_bruteforce(&build("cyclic:1")).tag, VerdictTag::IsCograph);
    }

    #[test]
    fn bruteforce_not_cograph_witness_is_a_real_path() {
        let g = build("sym:6");
        let verdict = pcg_bruteforce(&g);
        let Evidence::P4(w) = &verdict.evidence else {
            panic!("expected a P4 witness");
        };
        // Re-verify against the full power graph.
        let pg = power_graph(&g);
        let [a, b, c, d] = w.elements.map(|e| e as usize);
        assert!(pg.has_edge(a, b) && pg.has_edge(b, c) && pg.has_edge(c, d));
        assert!(!pg.has_edge(a, c) && !pg.has_edge(a, d) && !pg.has_edge(b, d));
    }

    #[test]
    fn eppo_examples() {
        assert!(is_eppo(&build("alt:5")));
        assert!(!is_eppo(&build("cyclic:6")));
        assert!(is_eppo(&build("sym:4")));
    }

    #[test]
    fn eppo_equivalences_examples() {
        let r = eppo_equivalences(&build("alt:6")).unwrap();
        assert!(r.holds());
        assert_eq!(r.pcg_confirmed, Some(true));

        let r = eppo_equivalences(&build("cyclic:15")).unwrap();
        assert!(!r.eppo && !r.gk_edgeless && !r.power_equals_enhanced);

        let r = eppo_equivalences(&build("m11")).unwrap();
        assert!(!r.holds());
    }

    #[test]
    fn minimal_pair_in_cyclic_12() {
        let g = build("cyclic:12");
        let w = minimal_pair_search(&g).expect("C12 is not a power-cograph group");
        assert!(verify_pair_witness(&g, &w));
        // Elements of cyclic:12 are a^i at index i: the first witness is
        // g = a^3 (order 4), h = a^2 (order 6) with p=2, q=3, r=2.
        assert_eq!((w.g, w.h, w.p, w.q, w.r), (3, 2, 2, 3, 2));
    }

    #[test]
    fn minimal_pair_absent_in_dihedral_6() {
        assert_eq!(minimal_pair_search(&build("dihedral:6")), None);
    }

    #[test]
    fn minimal_pair_in_cyclic_30_has_three_distinct_primes() {
        let g = build("cyclic:30");
        let w = minimal_pair_search(&g).expect("C30 is not a power-cograph group");
        assert!(verify_pair_witness(&g, &w));
        assert!(w.p != w.q && w.q != w.r && w.p != w.r);
    }

    #[test]
    fn minimal_pair_iff_brute_on_small_groups() {
        for text in [
            "cyclic:12",
            "cyclic:30",
            "cyclic:8",
            "cyclic:15",
            "dihedral:6",
            "dihedral:12",
            "sym:4",
            "sym:5",
            "sym:6",
            "alt:5",
            "heis3_c2:0",
            "sd(7,6,3)",
            "dp(cyclic:4,cyclic:6)",
        ] {
            let g = build(text);
            let brute_not = pcg_bruteforce(&g).tag == VerdictTag::NotCograph;
            let pair = minimal_pair_search(&g);
            assert_eq!(pair.is_some(), brute_not, "{text}");
            if let Some(w) = pair {
                assert!(verify_pair_witness(&g, &w), "{text}");
            }
        }
    }

    #[test]
    fn four_six_examples() {
        assert!(four_six_test(&build("m11")));
        assert!(!four_six_test(&build("sym:5")));
        assert!(four_six_test(&build("alt:7")));
    }

    #[test]
    fn nilpotent_classification() {
        assert_eq!(
            classify_nilpotent(&build("cyclic:15")).unwrap().tag,
            VerdictTag::IsCograph
        );
        let v = classify_nilpotent(&build("cyclic:12")).unwrap();
        assert_eq!(v.tag, VerdictTag::NotCograph);
        assert!(matches!(v.evidence, Evidence::Pair(_)));
        assert_eq!(
            classify_nilpotent(&build("heis3")).unwrap().tag,
            VerdictTag::IsCograph
        );
        assert!(classify_nilpotent(&build("sym:3")).is_err());
    }
}
