//! Raw group operations on canonical element encodings. Every element of a
//! built group is a fixed-width byte string; two encodings are byte-equal iff
//! the group elements are equal. Projective matrix classes are canonicalized
//! to the lexicographically least encoding among the allowed scalar multiples.

use std::sync::Arc;

use crate::field::{FieldCtx, FieldElement};
use crate::groups::FiniteGroup;

/// How a group's elements are encoded and multiplied.
#[derive(Debug, Clone)]
pub enum Rep {
    /// Image vector of a permutation of `0..degree`, one byte per point.
    Perm { degree: usize },
    /// `dim x dim` matrix over `field`, row-major, two big-endian bytes per
    /// entry. `scalars` lists the scalar values identified with 1 (always
    /// containing 1; larger for projective quotients).
    Matrix {
        field: Arc<FieldCtx>,
        dim: usize,
        scalars: Vec<FieldElement>,
    },
    /// `a^i b^j` in `<a, b : a^m = b^n = 1, b^-1 a b = a^k>`, encoded as two
    /// big-endian u32s. `c = k^-1 mod m`, so that
    /// `(i1,j1)(i2,j2) = (i1 + i2 c^j1, j1 + j2)`.
    Twisted { m: u64, n: u64, c: u64 },
    /// Direct product; encoding is the concatenation of the components.
    Product { left: Box<Rep>, right: Box<Rep> },
    /// `base x| C2` twisted by an order-2 automorphism of `base`, given as a
    /// permutation of the base element indices. Encoding: base bytes + 1 byte.
    SemidirectC2 {
        base: Arc<FiniteGroup>,
        aut: Arc<Vec<u32>>,
    },
}

impl Rep {
    /// Encoding width in bytes (constant per group).
    pub fn width(&self) -> usize {
        match self {
            Rep::Perm { degree } => *degree,
            Rep::Matrix { dim, .. } => dim * dim * 2,
            Rep::Twisted { .. } => 8,
            Rep::Product { left, right } => left.width() + right.width(),
            Rep::SemidirectC2 { base, .. } => base.width() + 1,
        }
    }

    pub fn identity(&self) -> Vec<u8> {
        match self {
            Rep::Perm { degree } => (0..*degree as u8).collect(),
            Rep::Matrix { dim, .. } => {
                let mut m = vec![FieldElement::ZERO; dim * dim];
                for i in 0..*dim {
                    m[i * dim + i] = FieldElement::ONE;
                }
                encode_matrix(&m)
            }
            Rep::Twisted { .. } => vec![0; 8],
            Rep::Product { left, right } => {
                let mut out = left.identity();
                out.extend_from_slice(&right.identity());
                out
            }
            Rep::SemidirectC2 { base, .. } => {
                let mut out = base.element(base.identity_index()).to_vec();
                out.push(0);
                out
            }
        }
    }

    pub fn mul(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        match self {
            Rep::Perm { degree } => (0..*degree).map(|i| a[b[i] as usize]).collect(),
            Rep::Matrix {
                field,
                dim,
                scalars,
            } => {
                let ma = decode_matrix(a);
                let mb = decode_matrix(b);
                let d = *dim;
                let mut out = vec![FieldElement::ZERO; d * d];
                for i in 0..d {
                    for j in 0..d {
                        let mut acc = FieldElement::ZERO;
                        for l in 0..d {
                            acc = field.add(acc, field.mul(ma[i * d + l], mb[l * d + j]));
                        }
                        out[i * d + j] = acc;
                    }
                }
                canonical_matrix(field, &mut out, scalars);
                encode_matrix(&out)
            }
            Rep::Twisted { m, n, c } => {
                let (i1, j1) = decode_pair(a);
                let (i2, j2) = decode_pair(b);
                let twist = pow_mod(*c, j1, *m);
                let i = (i1 + i2 % m * twist) % m;
                let j = (j1 + j2) % n;
                encode_pair(i, j)
            }
            Rep::Product { left, right } => {
                let w = left.width();
                let mut out = left.mul(&a[..w], &b[..w]);
                out.extend_from_slice(&right.mul(&a[w..], &b[w..]));
                out
            }
            Rep::SemidirectC2 { base, aut } => {
                let w = base.width();
                let (h1, t1) = (&a[..w], a[w]);
                let (h2, t2) = (&b[..w], b[w]);
                let h2_twisted = if t1 == 1 {
                    let idx = base.index_of(h2).expect("element of base group");
                    base.element(aut[idx as usize]).to_vec()
                } else {
                    h2.to_vec()
                };
                let mut out = base.rep().mul(h1, &h2_twisted);
                out.push(t1 ^ t2);
                out
            }
        }
    }

    pub fn inv(&self, a: &[u8]) -> Vec<u8> {
        match self {
            Rep::Perm { degree } => {
                let mut out = vec![0u8; *degree];
                for (i, &img) in a.iter().enumerate() {
                    out[img as usize] = i as u8;
                }
                out
            }
            Rep::Matrix {
                field,
                dim,
                scalars,
            } => {
                let m = decode_matrix(a);
                // Representatives always have determinant 1, so the inverse
                // is the adjugate.
                let mut out = adjugate(field, &m, *dim);
                canonical_matrix(field, &mut out, scalars);
                encode_matrix(&out)
            }
            Rep::Twisted { m, n, c } => {
                let (i, j) = decode_pair(a);
                let jinv = (n - j) % n;
                let iinv = (m - i) % m * pow_mod(*c, jinv, *m) % m;
                encode_pair(iinv, jinv)
            }
            Rep::Product { left, right } => {
                let w = left.width();
                let mut out = left.inv(&a[..w]);
                out.extend_from_slice(&right.inv(&a[w..]));
                out
            }
            Rep::SemidirectC2 { base, aut } => {
                let w = base.width();
                let hinv = base.rep().inv(&a[..w]);
                let t = a[w];
                let mut out = if t == 1 {
                    let idx = base.index_of(&hinv).expect("element of base group");
                    base.element(aut[idx as usize]).to_vec()
                } else {
                    hinv
                };
                out.push(t);
                out
            }
        }
    }

    /// Human-readable rendering of an encoded element.
    pub fn render(&self, a: &[u8]) -> String {
        match self {
            Rep::Perm { degree } => render_perm(a, *degree),
            Rep::Matrix { dim, .. } => {
                let m = decode_matrix(a);
                let rows: Vec<String> = (0..*dim)
                    .map(|i| {
                        let entries: Vec<String> =
                            (0..*dim).map(|j| m[i * dim + j].0.to_string()).collect();
                        format!("[{}]", entries.join(","))
                    })
                    .collect();
                format!("[{}]", rows.join(","))
            }
            Rep::Twisted { .. } => {
                let (i, j) = decode_pair(a);
                format!("(a^{i} b^{j})")
            }
            Rep::Product { left, right } => {
                let w = left.width();
                format!("({} | {})", left.render(&a[..w]), right.render(&a[w..]))
            }
            Rep::SemidirectC2 { base, .. } => {
                let w = base.width();
                format!("({}; t^{})", base.rep().render(&a[..w]), a[w])
            }
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn decode_pair(a: &[u8]) -> (u64, u64) {
    let i = u32::from_be_bytes(a[0..4].try_into().unwrap()) as u64;
    let j = u32::from_be_bytes(a[4..8].try_into().unwrap()) as u64;
    (i, j)
}

fn encode_pair(i: u64, j: u64) -> Vec<u8> {
    let mut out = Vec::with_capacity(8);
    out.extend_from_slice(&(i as u32).to_be_bytes());
    out.extend_from_slice(&(j as u32).to_be_bytes());
    out
}

fn decode_matrix(a: &[u8]) -> Vec<FieldElement> {
    a.chunks_exact(2)
        .map(|c| FieldElement(u16::from_be_bytes([c[0], c[1]])))
        .collect()
}

fn encode_matrix(m: &[FieldElement]) -> Vec<u8> {
    let mut out = Vec::with_capacity(m.len() * 2);
    for e in m {
        out.extend_from_slice(&e.0.to_be_bytes());
    }
    out
}

/// Replaces `m` with the lexicographically least of its allowed scalar
/// multiples. Big-endian entry encoding makes byte order agree with value
/// order, so comparing entry vectors suffices.
fn canonical_matrix(field: &FieldCtx, m: &mut Vec<FieldElement>, scalars: &[FieldElement]) {
    if scalars.len() <= 1 {
        return;
    }
    let mut best = m.clone();
    for &s in &scalars[1..] {
        let candidate: Vec<FieldElement> = m.iter().map(|&e| field.mul(s, e)).collect();
        if candidate < best {
            best = candidate;
        }
    }
    *m = best;
}

fn adjugate(field: &FieldCtx, m: &[FieldElement], dim: usize) -> Vec<FieldElement> {
    let f = field;
    match dim {
        1 => vec![FieldElement::ONE],
        2 => vec![m[3], f.neg(m[1]), f.neg(m[2]), m[0]],
        3 => {
            let minor = |r0: usize, c0: usize, r1: usize, c1: usize| {
                f.sub(f.mul(m[r0 * 3 + c0], m[r1 * 3 + c1]), f.mul(m[r0 * 3 + c1], m[r1 * 3 + c0]))
            };
            // Cofactor expansion, transposed.
            vec![
                minor(1, 1, 2, 2),
                f.neg(minor(0, 1, 2, 2)),
                minor(0, 1, 1, 2),
                f.neg(minor(1, 0, 2, 2)),
                minor(0, 0, 2, 2),
                f.neg(minor(0, 0, 1, 2)),
                minor(1, 0, 2, 1),
                f.neg(minor(0, 0, 2, 1)),
                minor(0, 0, 1, 1),
            ]
        }
        _ => unreachable!("only dimensions 1..=3 are constructed"),
    }
}

fn render_perm(a: &[u8], degree: usize) -> String {
    let mut seen = vec![false; degree];
    let mut out = String::new();
    for start in 0..degree {
        if seen[start] || a[start] as usize == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut cur = a[start] as usize;
        while cur != start {
            seen[cur] = true;
            cycle.push(cur);
            cur = a[cur] as usize;
        }
        out.push('(');
        out.push_str(
            &cycle
                .iter()
                .map(|x| (x + 1).to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
