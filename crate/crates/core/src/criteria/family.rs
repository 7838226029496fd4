//! Parameter-level classification: each group family's verdict is computed
//! purely from derived numbers and their niceness classes, with Unknown
//! propagating upward only when a factorization budget runs out.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::criteria::{minimal_pair_search, Evidence, Verdict, VerdictTag};
use crate::groups::{build_group, GroupSpec};
use crate::numtheory::{classify_nice, is_prime_u64, perfect_power, Nat, NicenessClass};
use crate::PcgError;

/// A derived number and its classification, as shown in family tables.
#[derive(Debug, Clone)]
pub struct NumberReport {
    pub label: String,
    pub value: Nat,
    pub class: NicenessClass,
}

/// One row of a family sweep.
#[derive(Debug, Clone)]
pub struct FamilyRow {
    pub param: u64,
    pub numbers: Vec<NumberReport>,
    pub verdict: VerdictTag,
    pub note: Option<String>,
}

/// Verdict from a set of classified numbers: any definitive "neither" forces
/// NotCograph even if other numbers stayed unknown; Unknown only when nothing
/// is definitive.
fn verdict_from_numbers(numbers: &[NumberReport]) -> VerdictTag {
    if numbers
        .iter()
        .any(|n| matches!(n.class, NicenessClass::Neither))
    {
        VerdictTag::NotCograph
    } else if numbers
        .iter()
        .any(|n| matches!(n.class, NicenessClass::Unknown { .. }))
    {
        VerdictTag::Unknown
    } else {
        VerdictTag::IsCograph
    }
}

fn classify_numbers(
    raw: Vec<(&str, Nat)>,
    budget: u64,
) -> (Vec<NumberReport>, VerdictTag) {
    // Numbers equal to 1 impose no constraint (the corresponding cyclic
    // subgroup is trivial) and are dropped.
    let numbers: Vec<NumberReport> = raw
        .into_iter()
        .filter(|(_, v)| !v.is_one())
        .map(|(label, value)| {
            let class = classify_nice(&value, budget);
            NumberReport {
                label: label.to_string(),
                value,
                class,
            }
        })
        .collect();
    let verdict = verdict_from_numbers(&numbers);
    (numbers, verdict)
}

fn numeric_evidence(numbers: &[NumberReport], verdict: VerdictTag) -> Evidence {
    match verdict {
        VerdictTag::NotCograph => {
            let bad = numbers
                .iter()
                .find(|n| matches!(n.class, NicenessClass::Neither))
                .expect("a NotCograph numeric verdict names its offender");
            Evidence::NonNice {
                label: bad.label.clone(),
                value: bad.value.clone(),
                class: bad.class.clone(),
            }
        }
        VerdictTag::Unknown => {
            let pending: Vec<String> = numbers
                .iter()
                .filter(|n| matches!(n.class, NicenessClass::Unknown { .. }))
                .map(|n| format!("{} = {}", n.label, n.value))
                .collect();
            Evidence::Reason(format!(
                "factorization budget exhausted on {}",
                pending.join(", ")
            ))
        }
        VerdictTag::IsCograph => {
            let parts: Vec<String> = numbers
                .iter()
                .map(|n| format!("{} = {} is {}", n.label, n.value, n.class))
                .collect();
            Evidence::Reason(if parts.is_empty() {
                "no constraints".to_string()
            } else {
                parts.join("; ")
            })
        }
    }
}

fn numeric_verdict(raw: Vec<(&str, Nat)>, budget: u64) -> Verdict {
    let (numbers, tag) = classify_numbers(raw, budget);
    Verdict::criterion(tag, numeric_evidence(&numbers, tag))
}

/// Numbers constraining PSL(2, q): (q-1)/2 and (q+1)/2 for odd q, q-1 and
/// q+1 for even q (the orders of the large maximal cyclic subgroups).
fn psl2_numbers(q: &BigUint) -> Vec<(&'static str, Nat)> {
    if (q % 2u32).is_one() {
        vec![
            ("(q-1)/2", (q - 1u32) / 2u32),
            ("(q+1)/2", (q + 1u32) / 2u32),
        ]
    } else {
        vec![("q-1", q - 1u32), ("q+1", q + 1u32)]
    }
}

/// Numbers constraining Sz(q), q = 2^(2e+1): the orders q-1, q-sqrt(2q)+1,
/// q+sqrt(2q)+1 of the odd maximal cyclic subgroups (pairwise coprime).
fn suzuki_numbers(e: u64) -> Vec<(&'static str, Nat)> {
    let q = BigUint::one() << (2 * e + 1);
    let s = BigUint::one() << (e + 1);
    vec![
        ("q-1", &q - 1u32),
        ("q-sqrt(2q)+1", &q - &s + 1u32),
        ("q+sqrt(2q)+1", &q + &s + 1u32),
    ]
}

/// `n` as a prime power `(p, k)` when it is one; handles values above u64 as
/// "no" (every such order arising here is divisible by several primes).
fn prime_power_of(n: u128) -> Option<(u64, u32)> {
    let n = u64::try_from(n).ok()?;
    if n < 2 {
        return None;
    }
    if is_prime_u64(n) {
        return Some((n, 1));
    }
    let (base, k) = perfect_power(&BigUint::from(n))?;
    let base = base.to_u64()?;
    is_prime_u64(base).then_some((base, k))
}

/// What the direct-product criterion needs to know about a factor.
struct Summary {
    order: u128,
    /// `Some((p, n))` when the group is the nonabelian semidirect product of
    /// C_p (p prime) by a faithfully acting cyclic C_n.
    semidirect: Option<(u64, u64)>,
}

fn summarize(spec: &GroupSpec) -> Summary {
    let order = spec.order();
    let semidirect = match spec {
        GroupSpec::Sd { p, n, .. } if *n >= 2 => Some((*p, *n)),
        GroupSpec::Dihedral(m) if *m >= 3 && is_prime_u64(*m) => Some((*m, 2)),
        GroupSpec::Sym(3) => Some((3, 2)),
        _ => None,
    };
    Summary { order, semidirect }
}

/// The direct-product trichotomy: G x H is a power-cograph group iff
/// (a) both orders are powers of one prime, (b) both orders are distinct
/// primes, or (c) one factor is C_q and the other is a nonabelian
/// C_p x| C_{q^m} acting faithfully.
fn classify_dp(a: &GroupSpec, b: &GroupSpec, budget: u64, cap: u64) -> Result<Verdict, PcgError> {
    let sa = summarize(a);
    let sb = summarize(b);
    if sa.order == 1 {
        return classify_spec(b, budget, cap);
    }
    if sb.order == 1 {
        return classify_spec(a, budget, cap);
    }
    let ppa = prime_power_of(sa.order);
    let ppb = prime_power_of(sb.order);
    if let (Some((pa, _)), Some((pb, _))) = (ppa, ppb) {
        if pa == pb {
            return Ok(Verdict::criterion(
                VerdictTag::IsCograph,
                Evidence::Reason(format!(
                    "both factor orders are powers of {pa}, so the product is a {pa}-group"
                )),
            ));
        }
        if ppa.unwrap().1 == 1 && ppb.unwrap().1 == 1 {
            return Ok(Verdict::criterion(
                VerdictTag::IsCograph,
                Evidence::Reason(format!(
                    "cyclic factors of distinct prime orders {pa} and {pb}"
                )),
            ));
        }
    }
    // Case (c): C_q times a nonabelian C_p x| C_{q^m}.
    for (x, y) in [(&sa, &sb), (&sb, &sa)] {
        let Some((q, 1)) = prime_power_of(x.order) else {
            continue;
        };
        if let Some((p, n)) = y.semidirect {
            if let Some((base, _)) = prime_power_of(n as u128) {
                if base == q && p != q {
                    return Ok(Verdict::criterion(
                        VerdictTag::IsCograph,
                        Evidence::Reason(format!(
                            "C_{q} times the nonabelian C_{p} x| C_{n} with {n} a power of {q} dividing {p}-1"
                        )),
                    ));
                }
            }
        }
    }
    Ok(Verdict::criterion(
        VerdictTag::NotCograph,
        Evidence::Reason(format!(
            "factors of orders {} and {} fit none of: same-prime powers, distinct primes, \
             C_q times a faithful nonabelian C_p x| C_(q^m)",
            sa.order, sb.order
        )),
    ))
}

/// Theorem-level (criterion route) classification of a group spec, computed
/// from parameters where a family criterion exists. Only `heis3_c2` needs its
/// (order 54) group built, for the minimal-pair criterion.
pub fn classify_spec(spec: &GroupSpec, budget: u64, cap: u64) -> Result<Verdict, PcgError> {
    match spec {
        GroupSpec::Cyclic(1) => Ok(Verdict::criterion(
            VerdictTag::IsCograph,
            Evidence::Reason("trivial group".into()),
        )),
        GroupSpec::Cyclic(n) => Ok(numeric_verdict(vec![("n", BigUint::from(*n))], budget)),
        GroupSpec::Dihedral(m) => Ok(numeric_verdict(vec![("m", BigUint::from(*m))], budget)),
        GroupSpec::Sym(n) => Ok(if *n <= 5 {
            Verdict::criterion(
                VerdictTag::IsCograph,
                Evidence::Reason(format!(
                    "maximal cyclic subgroups of sym:{n} intersect trivially and have orders \
                     that are prime powers or products of two distinct primes"
                )),
            )
        } else {
            Verdict::criterion(
                VerdictTag::NotCograph,
                Evidence::Reason(
                    "(1 2 3)(4 5) ~ (4 5) ~ (2 3 6)(4 5) ~ (2 6 3) is an induced path".into(),
                ),
            )
        }),
        GroupSpec::Alt(n) => Ok(if *n <= 6 {
            Verdict::criterion(
                VerdictTag::IsCograph,
                Evidence::Reason(if *n <= 3 {
                    "cyclic of order 1 or 3".to_string()
                } else {
                    format!("every element of alt:{n} has prime power order")
                }),
            )
        } else {
            Verdict::criterion(
                VerdictTag::NotCograph,
                Evidence::Reason(
                    "a = (1 2 3 4) and b = (1 3)(2 4)(5 6 7) have orders 4 and 6 with a^2 = b^3"
                        .into(),
                ),
            )
        }),
        GroupSpec::Heis3 => Ok(Verdict::criterion(
            VerdictTag::IsCograph,
            Evidence::Reason("3-group of order 27".into()),
        )),
        GroupSpec::Heis3C2(_) => {
            let g = build_group(spec, cap)?;
            Ok(match minimal_pair_search(&g) {
                None => Verdict::criterion(
                    VerdictTag::IsCograph,
                    Evidence::Reason(
                        "no pair of elements of orders pr and pq with g^r = h^q exists".into(),
                    ),
                ),
                Some(w) => Verdict::criterion(VerdictTag::NotCograph, Evidence::Pair(w)),
            })
        }
        GroupSpec::M11 => Ok(Verdict::criterion(
            VerdictTag::NotCograph,
            Evidence::Reason(
                "contains elements a, b of orders 4 and 6 with a^2 = b^3".into(),
            ),
        )),
        GroupSpec::Psl2(q) => {
            if *q < 4 {
                return Err(PcgError::InvalidParameter(format!(
                    "psl2:{q} is not simple; the parameter criterion applies for q >= 4"
                )));
            }
            Ok(numeric_verdict(psl2_numbers(&BigUint::from(*q)), budget))
        }
        GroupSpec::Psl3(q) => Ok(match q {
            2 | 4 => Verdict::criterion(
                VerdictTag::IsCograph,
                Evidence::Reason(format!(
                    "every element of psl3:{q} has prime power order (its prime graph is edgeless)"
                )),
            ),
            _ => Verdict::criterion(
                VerdictTag::NotCograph,
                Evidence::Reason(format!(
                    "an induced path exists in every quotient of SL(3,{q}) by scalars \
                     (orders 4/6 for odd q; orders 2, 2p, 2p, p with p > 3 dividing q-1 for even q)"
                )),
            ),
        }),
        GroupSpec::Sl3(q) => match q {
            2 => Ok(Verdict::criterion(
                VerdictTag::IsCograph,
                Evidence::Reason("sl3:2 = psl3:2, whose prime graph is edgeless".into()),
            )),
            4 => Err(PcgError::Unsupported(
                "no parameter-level criterion decides sl3:4; run the brute route".into(),
            )),
            _ => Ok(Verdict::criterion(
                VerdictTag::NotCograph,
                Evidence::Reason(format!(
                    "an induced path exists in every quotient of SL(3,{q}) by scalars, \
                     including the trivial quotient"
                )),
            )),
        },
        GroupSpec::Dp(a, b) => classify_dp(a, b, budget, cap),
        GroupSpec::Sd { p, n, .. } => {
            if *n == 1 {
                return Ok(Verdict::criterion(
                    VerdictTag::IsCograph,
                    Evidence::Reason(format!("cyclic of prime order {p}")),
                ));
            }
            // Frobenius: maximal cyclic subgroups have orders p and n and
            // intersect trivially, so only n constrains the verdict.
            Ok(numeric_verdict(vec![("n", BigUint::from(*n))], budget))
        }
    }
}

/// One row of a family table.
pub fn family_row(family: &str, param: u64, budget: u64) -> Result<FamilyRow, PcgError> {
    match family {
        "psl2-char2" => {
            if param == 0 || param > 1024 {
                return Err(PcgError::InvalidParameter(
                    "psl2-char2 takes d with 1 <= d <= 1024".into(),
                ));
            }
            let q = BigUint::one() << param;
            let (numbers, verdict) = classify_numbers(psl2_numbers(&q), budget);
            let note = (param == 1)
                .then(|| "q-1 = 1 imposes no constraint; PSL(2,2) is not simple".to_string());
            Ok(FamilyRow {
                param,
                numbers,
                verdict,
                note,
            })
        }
        "suzuki" => {
            if param == 0 || param > 512 {
                return Err(PcgError::InvalidParameter(
                    "suzuki takes e with 1 <= e <= 512 (q = 2^(2e+1))".into(),
                ));
            }
            let (numbers, verdict) = classify_numbers(suzuki_numbers(param), budget);
            Ok(FamilyRow {
                param,
                numbers,
                verdict,
                note: None,
            })
        }
        "dihedral" => {
            if param < 2 {
                return Err(PcgError::InvalidParameter(
                    "dihedral takes m >= 2".into(),
                ));
            }
            let (numbers, verdict) =
                classify_numbers(vec![("m", BigUint::from(param))], budget);
            Ok(FamilyRow {
                param,
                numbers,
                verdict,
                note: None,
            })
        }
        "cyclic" => {
            if param == 0 {
                return Err(PcgError::InvalidParameter("cyclic takes n >= 1".into()));
            }
            if param == 1 {
                return Ok(FamilyRow {
                    param,
                    numbers: Vec::new(),
                    verdict: VerdictTag::IsCograph,
                    note: Some("trivial group".to_string()),
                });
            }
            let (numbers, verdict) =
                classify_numbers(vec![("n", BigUint::from(param))], budget);
            Ok(FamilyRow {
                param,
                numbers,
                verdict,
                note: None,
            })
        }
        "sym" => Ok(FamilyRow {
            param,
            numbers: Vec::new(),
            verdict: if param <= 5 {
                VerdictTag::IsCograph
            } else {
                VerdictTag::NotCograph
            },
            note: None,
        }),
        "alt" => Ok(FamilyRow {
            param,
            numbers: Vec::new(),
            verdict: if param <= 6 {
                VerdictTag::IsCograph
            } else {
                VerdictTag::NotCograph
            },
            note: None,
        }),
        other => Err(PcgError::InvalidParameter(format!(
            "unknown family '{other}' (expected psl2-char2, suzuki, dihedral, cyclic, sym or alt)"
        ))),
    }
}

fn family_param_range(family: &str, max: u64) -> std::ops::RangeInclusive<u64> {
    match family {
        "dihedral" => 2..=max,
        _ => 1..=max,
    }
}

/// Applies the family criterion over `param <= max`, one worker per
/// parameter, rows sorted by parameter.
pub fn family_sweep(family: &str, max: u64, budget: u64) -> Result<Vec<FamilyRow>, PcgError> {
    // Validate the family name on the smallest parameter first.
    let range = family_param_range(family, max);
    let first = *range.start();
    if first > max {
        return Ok(Vec::new());
    }
    family_row(family, first, 1)?;
    let mut rows = range
        .into_par_iter()
        .map(|param| family_row(family, param, budget))
        .collect::<Result<Vec<_>, _>>()?;
    rows.sort_by_key(|r| r.param);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_spec;
    use crate::numtheory::DEFAULT_BUDGET;

    const BUDGET: u64 = 100_000;
    const CAP: u64 = 100_000;

    fn classify(text: &str) -> Verdict {
        classify_spec(&parse_spec(text).unwrap(), BUDGET, CAP).unwrap()
    }

    #[test]
    fn cyclic_and_dihedral_criteria() {
        assert_eq!(classify("cyclic:15").tag, VerdictTag::IsCograph);
        assert_eq!(classify("cyclic:12").tag, VerdictTag::NotCograph);
        assert_eq!(classify("cyclic:1").tag, VerdictTag::IsCograph);
        assert_eq!(classify("dihedral:30").tag, VerdictTag::NotCograph);
        assert_eq!(classify("dihedral:9").tag, VerdictTag::IsCograph);
        assert_eq!(classify("dihedral:6").tag, VerdictTag::IsCograph);
    }

    #[test]
    fn sym_alt_thresholds() {
        assert_eq!(classify("sym:5").tag, VerdictTag::IsCograph);
        assert_eq!(classify("sym:6").tag, VerdictTag::NotCograph);
        assert_eq!(classify("alt:6").tag, VerdictTag::IsCograph);
        assert_eq!(classify("alt:7").tag, VerdictTag::NotCograph);
    }

    #[test]
    fn psl2_criterion_examples() {
        // q = 5: (q-1)/2 = 2 and (q+1)/2 = 3, both prime.
        assert_eq!(classify("psl2:5").tag, VerdictTag::IsCograph);
        // q = 64: 63 = 3^2 * 7 is neither.
        assert_eq!(classify("psl2:64").tag, VerdictTag::NotCograph);
        assert_eq!(classify("psl2:23").tag, VerdictTag::NotCograph); // 12 = 2^2*3
        assert_eq!(classify("psl2:27").tag, VerdictTag::IsCograph); // 13, 14
        assert!(classify_spec(&parse_spec("psl2:2").unwrap(), BUDGET, CAP).is_err());
    }

    #[test]
    fn psl3_and_sl3_criteria() {
        assert_eq!(classify("psl3:2").tag, VerdictTag::IsCograph);
        assert_eq!(classify("psl3:4").tag, VerdictTag::IsCograph);
        assert_eq!(classify("psl3:3").tag, VerdictTag::NotCograph);
        assert_eq!(classify("psl3:5").tag, VerdictTag::NotCograph);
        assert_eq!(classify("sl3:2").tag, VerdictTag::IsCograph);
        assert_eq!(classify("sl3:3").tag, VerdictTag::NotCograph);
        assert!(matches!(
            classify_spec(&parse_spec("sl3:4").unwrap(), BUDGET, CAP),
            Err(PcgError::Unsupported(_))
        ));
    }

    #[test]
    fn sd_criterion() {
        assert_eq!(classify("sd(7,6,3)").tag, VerdictTag::IsCograph);
        assert_eq!(classify("sd(7,2,6)").tag, VerdictTag::IsCograph);
        // n = 12 = 2^2 * 3 is neither, so C_13 x| C_12 is not a PCG group.
        assert_eq!(classify("sd(13,12,2)").tag, VerdictTag::NotCograph);
    }

    #[test]
    fn dp_trichotomy() {
        // (a) powers of the same prime.
        assert_eq!(classify("dp(cyclic:4,cyclic:8)").tag, VerdictTag::IsCograph);
        assert_eq!(classify("dp(heis3,cyclic:3)").tag, VerdictTag::IsCograph);
        // (b) distinct primes.
        assert_eq!(classify("dp(cyclic:2,cyclic:3)").tag, VerdictTag::IsCograph);
        assert_eq!(classify("dp(cyclic:7,cyclic:11)").tag, VerdictTag::IsCograph);
        // (c) C_q times C_p x| C_{q^m}.
        assert_eq!(classify("dp(cyclic:2,sd(7,2,6))").tag, VerdictTag::IsCograph);
        assert_eq!(classify("dp(cyclic:2,sd(5,4,2))").tag, VerdictTag::IsCograph);
        assert_eq!(classify("dp(cyclic:3,sd(7,3,2))").tag, VerdictTag::IsCograph);
        assert_eq!(classify("dp(cyclic:2,dihedral:5)").tag, VerdictTag::IsCograph);
        assert_eq!(classify("dp(cyclic:2,sym:3)").tag, VerdictTag::IsCograph);
        // None of the cases.
        assert_eq!(classify("dp(cyclic:4,cyclic:6)").tag, VerdictTag::NotCograph);
        assert_eq!(classify("dp(cyclic:2,sd(7,3,2))").tag, VerdictTag::NotCograph);
        assert_eq!(classify("dp(cyclic:2,sd(7,6,3))").tag, VerdictTag::NotCograph);
        assert_eq!(classify("dp(cyclic:3,alt:4)").tag, VerdictTag::NotCograph);
        // Trivial factors defer to the other component.
        assert_eq!(classify("dp(cyclic:1,cyclic:12)").tag, VerdictTag::NotCograph);
        assert_eq!(classify("dp(cyclic:1,sym:5)").tag, VerdictTag::IsCograph);
    }

    #[test]
    fn suzuki_rows() {
        // e = 1 (q = 8): 7, 5, 13 all prime.
        let row = family_row("suzuki", 1, BUDGET).unwrap();
        assert_eq!(row.verdict, VerdictTag::IsCograph);
        assert_eq!(row.numbers.len(), 3);
        let values: Vec<u64> = row
            .numbers
            .iter()
            .map(|n| n.value.to_u64().unwrap())
            .collect();
        assert_eq!(values, vec![7, 5, 13]);
    }

    #[test]
    fn psl2_char2_small_sweep() {
        let rows = family_sweep("psl2-char2", 10, DEFAULT_BUDGET).unwrap();
        let is_list: Vec<u64> = rows
            .iter()
            .filter(|r| r.verdict == VerdictTag::IsCograph)
            .map(|r| r.param)
            .collect();
        assert_eq!(is_list, vec![1, 2, 3, 4, 5, 7]);
        assert!(rows.iter().all(|r| r.verdict != VerdictTag::Unknown));
        assert!(rows[0].note.is_some());
    }

    #[test]
    fn dihedral_sweep_first_failure_is_12() {
        let rows = family_sweep("dihedral", 12, BUDGET).unwrap();
        let not_list: Vec<u64> = rows
            .iter()
            .filter(|r| r.verdict == VerdictTag::NotCograph)
            .map(|r| r.param)
            .collect();
        assert_eq!(not_list, vec![12]);
    }

    #[test]
    fn unknown_family_is_rejected() {
        assert!(family_row("ree", 1, BUDGET).is_err());
        assert!(family_sweep("nope", 5, BUDGET).is_err());
    }
}
