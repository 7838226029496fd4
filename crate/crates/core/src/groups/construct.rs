//! Generators and representations for every constructor of the spec
//! mini-language, plus the brute-force search for order-2 automorphisms of
//! the Heisenberg group of order 27.

use std::sync::{Arc, OnceLock};

use crate::field::{field_build, FieldCtx, FieldElement};
use crate::groups::rep::Rep;
use crate::groups::spec::{prime_power_u64, GroupSpec};
use crate::groups::FiniteGroup;
use crate::PcgError;

fn perm_from_cycles(degree: usize, cycles: &[&[u8]]) -> Vec<u8> {
    let mut img: Vec<u8> = (0..degree as u8).collect();
    for cycle in cycles {
        for w in 0..cycle.len() {
            img[cycle[w] as usize] = cycle[(w + 1) % cycle.len()];
        }
    }
    img
}

fn transvection(dim: usize, r: usize, s: usize, a: FieldElement) -> Vec<FieldElement> {
    let mut m = vec![FieldElement::ZERO; dim * dim];
    for i in 0..dim {
        m[i * dim + i] = FieldElement::ONE;
    }
    m[r * dim + s] = a;
    m
}

fn encode_matrix(m: &[FieldElement]) -> Vec<u8> {
    let mut out = Vec::with_capacity(m.len() * 2);
    for e in m {
        out.extend_from_slice(&e.0.to_be_bytes());
    }
    out
}

/// Scalars lambda with lambda^dim = 1, ascending (so 1 comes first).
fn det_one_scalars(field: &FieldCtx, dim: u64) -> Vec<FieldElement> {
    field
        .elements()
        .filter(|&a| !a.is_zero() && field.pow(a, dim) == FieldElement::ONE)
        .collect()
}

fn matrix_group(
    q: u64,
    dim: usize,
    projective: bool,
) -> Result<(Rep, Vec<Vec<u8>>), PcgError> {
    let (p, k) = prime_power_u64(q).expect("validated at parse time");
    let field = Arc::new(field_build(p, k)?);
    let scalars = if projective {
        det_one_scalars(&field, dim as u64)
    } else {
        vec![FieldElement::ONE]
    };
    // Transvections I + x^i E_{rs} generate SL(dim, q).
    let mut gens = Vec::new();
    for r in 0..dim {
        for s in 0..dim {
            if r == s {
                continue;
            }
            for i in 0..k {
                let a = field.element(p.pow(i));
                gens.push(encode_matrix(&transvection(&field, dim, r, s, a)));
            }
        }
    }
    Ok((
        Rep::Matrix {
            field,
            dim,
            scalars,
        },
        gens,
    ))
}

/// Modular inverse of `k` modulo `m` (requires gcd(k, m) = 1).
fn inv_mod(k: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (k % m) as i128);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    assert_eq!(r, 1, "not invertible");
    ((t % m as i128 + m as i128) % m as i128) as u64
}

fn twisted(m: u64, n: u64, k: u64) -> (Rep, Vec<Vec<u8>>) {
    let rep = Rep::Twisted {
        m,
        n,
        c: inv_mod(k, m),
    };
    let enc = |i: u64, j: u64| {
        let mut out = Vec::with_capacity(8);
        out.extend_from_slice(&(i as u32).to_be_bytes());
        out.extend_from_slice(&(j as u32).to_be_bytes());
        out
    };
    let gens = vec![enc(1 % m, 0), enc(0, 1 % n)];
    (rep, gens)
}

fn heis3_rep_and_gens() -> Result<(Rep, Vec<Vec<u8>>), PcgError> {
    let field = Arc::new(field_build(3, 1)?);
    let one = FieldElement::ONE;
    let x = transvection(&field, 3, 0, 1, one);
    let y = transvection(&field, 3, 1, 2, one);
    Ok((
        Rep::Matrix {
            field,
            dim: 3,
            scalars: vec![FieldElement::ONE],
        },
        vec![encode_matrix(&x), encode_matrix(&y)],
    ))
}

struct Heis3Autos {
    base: Arc<FiniteGroup>,
    gens: Vec<Vec<u8>>,
    autos: Vec<Arc<Vec<u32>>>,
}

fn heis3_autos() -> &'static Heis3Autos {
    static CACHE: OnceLock<Heis3Autos> = OnceLock::new();
    CACHE.get_or_init(|| {
        let (rep, gens) = heis3_rep_and_gens().unwrap();
        let base = Arc::new(
            FiniteGroup::from_parts("heis3".to_string(), rep, gens.clone(), 27, 100_000)
                .unwrap(),
        );
        let autos = order2_automorphisms(&base, &gens)
            .into_iter()
            .map(Arc::new)
            .collect();
        Heis3Autos { base, gens, autos }
    })
}

/// Number of order-2 automorphisms of the order-27 Heisenberg group.
pub fn heis3_order2_automorphism_count() -> usize {
    heis3_autos().autos.len()
}

/// All automorphisms phi with phi^2 = id, phi != id, of a 2-generated group,
/// as permutations of element indices, sorted lexicographically. Candidate
/// generator images are tried exhaustively and each candidate map is verified
/// to be multiplicative on every pair.
fn order2_automorphisms(g: &FiniteGroup, gens: &[Vec<u8>]) -> Vec<Vec<u32>> {
    let n = g.order() as usize;
    let gen_idx: Vec<u32> = gens.iter().map(|e| g.index_of(e).unwrap()).collect();
    assert_eq!(gen_idx.len(), 2);
    // Spanning tree: each non-identity element reached as parent * generator.
    let id = g.identity_index();
    let mut parent: Vec<Option<(u32, usize)>> = vec![None; n];
    let mut visit_order = vec![id];
    let mut seen = vec![false; n];
    seen[id as usize] = true;
    let mut head = 0;
    while head < visit_order.len() {
        let w = visit_order[head];
        head += 1;
        for (gi, &gidx) in gen_idx.iter().enumerate() {
            let t = g.mul(w, gidx);
            if !seen[t as usize] {
                seen[t as usize] = true;
                parent[t as usize] = Some((w, gi));
                visit_order.push(t);
            }
        }
    }
    let orders: Vec<u64> = (0..n as u32).map(|i| g.element_order(i)).collect();
    let mut result = Vec::new();
    for a in 0..n as u32 {
        if orders[a as usize] != orders[gen_idx[0] as usize] {
            continue;
        }
        for b in 0..n as u32 {
            if orders[b as usize] != orders[gen_idx[1] as usize] {
                continue;
            }
            let images = [a, b];
            let mut phi = vec![u32::MAX; n];
            phi[id as usize] = id;
            for &t in visit_order.iter().skip(1) {
                let (w, gi) = parent[t as usize].unwrap();
                phi[t as usize] = g.mul(phi[w as usize], images[gi]);
            }
            // Bijective?
            let mut hit = vec![false; n];
            if phi.iter().any(|&v| std::mem::replace(&mut hit[v as usize], true)) {
                continue;
            }
            // Multiplicative on all pairs?
            let hom = (0..n as u32).all(|x| {
                (0..n as u32).all(|y| {
                    phi[g.mul(x, y) as usize] == g.mul(phi[x as usize], phi[y as usize])
                })
            });
            if !hom {
                continue;
            }
            // Involution, not the identity map?
            let is_id = (0..n as u32).all(|x| phi[x as usize] == x);
            let is_inv = (0..n as u32).all(|x| phi[phi[x as usize] as usize] == x);
            if is_inv && !is_id {
                result.push(phi);
            }
        }
    }
    result.sort();
    result.dedup();
    result
}

pub(crate) fn rep_and_generators(spec: &GroupSpec) -> Result<(Rep, Vec<Vec<u8>>), PcgError> {
    match spec {
        GroupSpec::Cyclic(n) => Ok(twisted(*n, 1, 1)),
        GroupSpec::Dihedral(m) => Ok(twisted(*m, 2, m - 1)),
        GroupSpec::Sym(n) => {
            let d = *n as usize;
            let rep = Rep::Perm { degree: d };
            let gens = if d >= 2 {
                let cycle: Vec<u8> = (0..d as u8).collect();
                vec![
                    perm_from_cycles(d, &[&[0, 1]]),
                    perm_from_cycles(d, &[&cycle]),
                ]
            } else {
                Vec::new()
            };
            Ok((rep, gens))
        }
        GroupSpec::Alt(n) => {
            let d = *n as usize;
            let rep = Rep::Perm { degree: d };
            let gens = (2..d)
                .map(|i| perm_from_cycles(d, &[&[0, 1, i as u8]]))
                .collect();
            Ok((rep, gens))
        }
        GroupSpec::Heis3 => heis3_rep_and_gens(),
        GroupSpec::Heis3C2(j) => {
            let cache = heis3_autos();
            let aut = cache
                .autos
                .get(*j as usize)
                .ok_or_else(|| {
                    PcgError::InvalidParameter(format!(
                        "heis3_c2:{j} out of range (only {} order-2 automorphisms)",
                        cache.autos.len()
                    ))
                })?
                .clone();
            let rep = Rep::SemidirectC2 {
                base: cache.base.clone(),
                aut,
            };
            let mut gens: Vec<Vec<u8>> = cache
                .gens
                .iter()
                .map(|g| {
                    let mut v = g.clone();
                    v.push(0);
                    v
                })
                .collect();
            let mut flip = cache.base.element(cache.base.identity_index()).to_vec();
            flip.push(1);
            gens.push(flip);
            Ok((rep, gens))
        }
        GroupSpec::M11 => {
            let d = 11;
            let rep = Rep::Perm { degree: d };
            let cycle: Vec<u8> = (0..11).collect();
            // Standard generators: an 11-cycle and (3,7,11,8)(4,10,5,6) in
            // 1-based points.
            let gens = vec![
                perm_from_cycles(d, &[&cycle]),
                perm_from_cycles(d, &[&[2, 6, 10, 7], &[3, 9, 4, 5]]),
            ];
            Ok((rep, gens))
        }
        GroupSpec::Psl2(q) => matrix_group(*q, 2, true),
        GroupSpec::Psl3(q) => matrix_group(*q, 3, true),
        GroupSpec::Sl3(q) => matrix_group(*q, 3, false),
        GroupSpec::Dp(a, b) => {
            let (ra, gens_a) = rep_and_generators(a)?;
            let (rb, gens_b) = rep_and_generators(b)?;
            let ida = ra.identity();
            let idb = rb.identity();
            let mut gens = Vec::new();
            for g in &gens_a {
                let mut v = g.clone();
                v.extend_from_slice(&idb);
                gens.push(v);
            }
            for g in &gens_b {
                let mut v = ida.clone();
                v.extend_from_slice(g);
                gens.push(v);
            }
            Ok((
                Rep::Product {
                    left: Box::new(ra),
                    right: Box::new(rb),
                },
                gens,
            ))
        }
        GroupSpec::Sd { p, n, k } => Ok(twisted(*p, *n, *k)),
    }
}
