//! Static verdicts for the simple-group families that are never
//! power-cograph groups. These verdicts are carried as data (the groups are
//! not constructed element by element); each row records the mathematical
//! reason.

use crate::criteria::VerdictTag;

/// One row of the static verdict table.
#[derive(Debug, Clone, Copy)]
pub struct TableRow {
    pub family: &'static str,
    pub condition: &'static str,
    pub verdict: VerdictTag,
    pub reason: &'static str,
}

/// Families whose power graph is never a cograph, with the structural reason.
pub fn simple_verdict_table() -> &'static [TableRow] {
    const ROWS: &[TableRow] = &[
        TableRow {
            family: "psu3",
            condition: "q a prime power, q > 2 (q = 2 is not simple)",
            verdict: VerdictTag::NotCograph,
            reason: "for odd q a cyclic subgroup of order (q^2-1)/gcd(q+1,3) forces both q-1 and \
                     (q+1)/gcd(q+1,3) to be powers of 2, which fails beyond q in {3,5}, and those \
                     two groups contain elements of order 12 resp. a copy of alt:7; for even q >= 4 \
                     an explicit induced 4-path exists (q = 8 instead has elements of orders 4 and 6 \
                     with conjugate square and cube)",
        },
        TableRow {
            family: "ree",
            condition: "q = 3^(2e+1), e >= 1",
            verdict: VerdictTag::NotCograph,
            reason: "an involution centralizer C2 x PSL(2,q) contains C2 x C_((q±1)/2); the numbers \
                     (q±1)/2 have opposite parity, cannot both be prime, and a power of 2 among them \
                     would solve x^2 - y^n = 1 nontrivially, which is impossible",
        },
        TableRow {
            family: "psp4",
            condition: "q a prime power, q >= 2 (q = 2 is not simple)",
            verdict: VerdictTag::NotCograph,
            reason: "contains a direct (q even) or central (q odd) product of two SL(2,q)-type \
                     subgroups, giving a product of cyclic groups of orders q-1 and q+1 that fits \
                     no admissible direct-product shape; the small survivors fail directly \
                     (PSp(4,3) has elements of order 12, PSp(4,4) has the order-4/order-6 pair)",
        },
        TableRow {
            family: "psu4",
            condition: "q a prime power",
            verdict: VerdictTag::NotCograph,
            reason: "contains psp4:q, and psu4:2 = psp4:3",
        },
        TableRow {
            family: "psu5",
            condition: "q a prime power",
            verdict: VerdictTag::NotCograph,
            reason: "contains psu4:q",
        },
        TableRow {
            family: "g2",
            condition: "q a prime power, q >= 2 (q = 2 is not simple)",
            verdict: VerdictTag::NotCograph,
            reason: "contains SL(3,q) or SU(3,q), hence psl3:q or psu3:q, neither of which is a \
                     power-cograph group except psl3 with q in {2,4}; g2:2 contains psu3:3 with \
                     index 2",
        },
        TableRow {
            family: "2f4",
            condition: "q = 2^(2e+1) (including the Tits group at q = 2)",
            verdict: VerdictTag::NotCograph,
            reason: "2F4(2) has elements of orders 4 and 6 with conjugate square and cube, and \
                     2F4(2^d) contains 2F4(2) for all odd d",
        },
        TableRow {
            family: "3d4",
            condition: "q a prime power",
            verdict: VerdictTag::NotCograph,
            reason: "contains g2:q",
        },
        TableRow {
            family: "higher-rank",
            condition: "any simple group of Lie type of rank >= 3",
            verdict: VerdictTag::NotCograph,
            reason: "a Levi factor supplies a quotient of SL(3,q) by scalars, which settles every \
                     q outside {2,4}; over those fields PSL(4,2) = alt:8, PSp(6,2) has the \
                     order-4/order-6 pair, PSL(4,4) contains PSL(4,2), PSp(6,4) contains PSp(6,2), \
                     and the rank-3 orthogonal/unitary groups contain psp4:2 or psp4:4",
        },
        TableRow {
            family: "sporadic",
            condition: "all 26 sporadic groups",
            verdict: VerdictTag::NotCograph,
            reason: "m11 has elements a, b of orders 4 and 6 with a^2 = b^3 and embeds in all but \
                     seven sporadic groups; the rest contain one of D3 x D5 (J1), alt:7 (M22), \
                     alt:4 x alt:5 (J2), C3 x alt:6 (J3), sym:7 (He), alt:8 (Ru), or \
                     PSL(2,19):C2 (Th), none of which is a power-cograph group",
        },
    ];
    ROWS
}
