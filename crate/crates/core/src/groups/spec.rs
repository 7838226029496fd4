//! The group-construction mini-language:
//! `cyclic:N | dihedral:M | sym:N | alt:N | heis3 | heis3_c2:J | m11 |
//!  psl2:Q | psl3:Q | sl3:Q | dp(SPEC,SPEC) | sd(P,N,K)`
//! with decimal parameters and insignificant whitespace. Parameters are
//! validated while parsing.

use std::fmt;

use crate::numtheory::is_prime_u64;
use crate::PcgError;

/// A validated term describing how to build a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    Dihedral(u64),
    Sym(u32),
    Alt(u32),
    Heis3,
    /// Semidirect product of the Heisenberg group of order 27 by C2, acting
    /// through the `j`-th order-2 automorphism (sorted canonically).
    Heis3C2(u32),
    M11,
    Psl2(u64),
    Psl3(u64),
    Sl3(u64),
    Dp(Box<GroupSpec>, Box<GroupSpec>),
    /// `<a, b : a^p = 1, b^n = 1, b^-1 a b = a^k>` with k of multiplicative
    /// order n mod p.
    Sd { p: u64, n: u64, k: u64 },
}

/// Writes `n` as `(p, k)` with p prime and `n = p^k`, if possible.
pub fn prime_power_u64(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = n;
    for d in 2..=u64::MAX {
        if d * d > n {
            break;
        }
        if n % d == 0 {
            p = d;
            break;
        }
    }
    let mut rest = n;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Multiplicative order of `k` modulo prime `p` (requires gcd(k, p) = 1).
pub fn mult_order_mod(k: u64, p: u64) -> u64 {
    let mut acc = k % p;
    let mut t = 1u64;
    while acc != 1 {
        acc = acc * k % p;
        t += 1;
    }
    t
}

impl GroupSpec {
    /// Expected group order (saturating; the builder cross-checks the
    /// enumeration against this).
    pub fn order(&self) -> u128 {
        fn factorial(n: u32) -> u128 {
            (2..=n as u128).fold(1u128, |a, b| a.saturating_mul(b))
        }
        match self {
            GroupSpec::Cyclic(n) => *n as u128,
            GroupSpec::Dihedral(m) => 2 * *m as u128,
            GroupSpec::Sym(n) => factorial(*n),
            GroupSpec::Alt(n) => (factorial(*n) / 2).max(1),
            GroupSpec::Heis3 => 27,
            GroupSpec::Heis3C2(_) => 54,
            GroupSpec::M11 => 7920,
            GroupSpec::Psl2(q) => {
                let q = *q as u128;
                q * (q - 1) * (q + 1) / if q % 2 == 0 { 1 } else { 2 }
            }
            GroupSpec::Psl3(q) => {
                let q = *q as u128;
                let sl = q.pow(3) * (q.pow(3) - 1) * (q.pow(2) - 1);
                sl / if (q - 1) % 3 == 0 { 3 } else { 1 }
            }
            GroupSpec::Sl3(q) => {
                let q = *q as u128;
                q.pow(3) * (q.pow(3) - 1) * (q.pow(2) - 1)
            }
            GroupSpec::Dp(a, b) => a.order().saturating_mul(b.order()),
            GroupSpec::Sd { p, n, .. } => *p as u128 * *n as u128,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(m) => write!(f, "dihedral:{m}"),
            GroupSpec::Sym(n) => write!(f, "sym:{n}"),
            GroupSpec::Alt(n) => write!(f, "alt:{n}"),
            GroupSpec::Heis3 => write!(f, "heis3"),
            GroupSpec::Heis3C2(j) => write!(f, "heis3_c2:{j}"),
            GroupSpec::M11 => write!(f, "m11"),
            GroupSpec::Psl2(q) => write!(f, "psl2:{q}"),
            GroupSpec::Psl3(q) => write!(f, "psl3:{q}"),
            GroupSpec::Sl3(q) => write!(f, "sl3:{q}"),
            GroupSpec::Dp(a, b) => write!(f, "dp({a},{b})"),
            GroupSpec::Sd { p, n, k } => write!(f, "sd({p},{n},{k})"),
        }
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> PcgError {
        PcgError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), PcgError> {
        self.skip_ws();
        if self.pos < self.text.len() && self.text[self.pos] == c {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String, PcgError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len()
            && (self.text[self.pos].is_ascii_alphanumeric() || self.text[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a constructor name"));
        }
        Ok(std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn number(&mut self) -> Result<u64, PcgError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a decimal number"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| {
                self.pos = start;
                self.err("number out of range")
            })
    }

    fn param(&mut self) -> Result<u64, PcgError> {
        self.expect(b':')?;
        self.number()
    }

    fn spec(&mut self) -> Result<GroupSpec, PcgError> {
        let name_pos = {
            self.skip_ws();
            self.pos
        };
        let name = self.ident()?;
        let reject = |pos: usize, msg: String| PcgError::Parse { pos, msg };
        match name.as_str() {
            "cyclic" => {
                let n = self.param()?;
                if n == 0 {
                    return Err(reject(name_pos, "cyclic:N requires N >= 1".into()));
                }
                Ok(GroupSpec::Cyclic(n))
            }
            "dihedral" => {
                let m = self.param()?;
                if m < 2 {
                    return Err(reject(name_pos, "dihedral:M requires M >= 2".into()));
                }
                Ok(GroupSpec::Dihedral(m))
            }
            "sym" => {
                let n = self.param()?;
                if !(1..=64).contains(&n) {
                    return Err(reject(name_pos, "sym:N requires 1 <= N <= 64".into()));
                }
                Ok(GroupSpec::Sym(n as u32))
            }
            "alt" => {
                let n = self.param()?;
                if !(1..=64).contains(&n) {
                    return Err(reject(name_pos, "alt:N requires 1 <= N <= 64".into()));
                }
                Ok(GroupSpec::Alt(n as u32))
            }
            "heis3" => Ok(GroupSpec::Heis3),
            "heis3_c2" => {
                let j = self.param()?;
                let count = super::construct::heis3_order2_automorphism_count() as u64;
                if j >= count {
                    return Err(reject(
                        name_pos,
                        format!("heis3_c2:J requires J < {count} (the number of order-2 automorphisms)"),
                    ));
                }
                Ok(GroupSpec::Heis3C2(j as u32))
            }
            "m11" => Ok(GroupSpec::M11),
            "psl2" | "psl3" | "sl3" => {
                let q = self.param()?;
                match prime_power_u64(q) {
                    Some((p, k)) if k <= 8 && q <= 1 << 16 => {
                        let _ = (p, k);
                        Ok(match name.as_str() {
                            "psl2" => GroupSpec::Psl2(q),
                            "psl3" => GroupSpec::Psl3(q),
                            _ => GroupSpec::Sl3(q),
                        })
                    }
                    _ => Err(reject(
                        name_pos,
                        format!("{name}:Q requires Q a prime power p^k with k <= 8 and Q <= 65536"),
                    )),
                }
            }
            "dp" => {
                self.expect(b'(')?;
                let a = self.spec()?;
                self.expect(b',')?;
                let b = self.spec()?;
                self.expect(b')')?;
                Ok(GroupSpec::Dp(Box::new(a), Box::new(b)))
            }
            "sd" => {
                self.expect(b'(')?;
                let p = self.number()?;
                self.expect(b',')?;
                let n = self.number()?;
                self.expect(b',')?;
                let k = self.number()?;
                self.expect(b')')?;
                if !is_prime_u64(p) {
                    return Err(reject(name_pos, format!("sd(P,N,K): P = {p} is not prime")));
                }
                if n == 0 || (p - 1) % n != 0 {
                    return Err(reject(
                        name_pos,
                        format!("sd(P,N,K): N = {n} must divide P-1 = {}", p - 1),
                    ));
                }
                if k == 0 || k >= p {
                    return Err(reject(
                        name_pos,
                        format!("sd(P,N,K): K = {k} must satisfy 1 <= K < P"),
                    ));
                }
                let ord = mult_order_mod(k, p);
                if ord != n {
                    return Err(reject(
                        name_pos,
                        format!("sd(P,N,K): K = {k} has multiplicative order {ord} mod {p}, not {n}"),
                    ));
                }
                Ok(GroupSpec::Sd { p, n, k })
            }
            other => Err(reject(name_pos, format!("unknown constructor '{other}'"))),
        }
    }
}

/// Parses a group spec, reporting the byte position of any error.
pub fn parse_spec(text: &str) -> Result<GroupSpec, PcgError> {
    let mut parser = Parser {
        text: text.as_bytes(),
        pos: 0,
    };
    let spec = parser.spec()?;
    parser.skip_ws();
    if parser.pos != parser.text.len() {
        return Err(parser.err("trailing input after spec"));
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        assert_eq!(parse_spec("dihedral:6").unwrap(), GroupSpec::Dihedral(6));
        assert_eq!(
            parse_spec("dp(cyclic:4,cyclic:6)").unwrap(),
            GroupSpec::Dp(
                Box::new(GroupSpec::Cyclic(4)),
                Box::new(GroupSpec::Cyclic(6))
            )
        );
        // 3 has multiplicative order 6 mod 7: the order-42 Frobenius group.
        assert_eq!(
            parse_spec("sd(7,6,3)").unwrap(),
            GroupSpec::Sd { p: 7, n: 6, k: 3 }
        );
        // Whitespace is insignificant.
        assert_eq!(
            parse_spec(" dp( cyclic : 4 , sym : 3 ) ").unwrap(),
            GroupSpec::Dp(Box::new(GroupSpec::Cyclic(4)), Box::new(GroupSpec::Sym(3)))
        );
    }

    #[test]
    fn rejects_invalid() {
        // 2 has order 3 mod 7, not 6.
        let err = parse_spec("sd(7,6,2)").unwrap_err();
        assert!(err.to_string().contains("order 3"));
        assert!(parse_spec("frobenius:7").is_err());
        assert!(parse_spec("cyclic").is_err());
        assert!(parse_spec("cyclic:0").is_err());
        assert!(parse_spec("psl2:6").is_err());
        assert!(parse_spec("dp(cyclic:2)").is_err());
        assert!(parse_spec("sym:5 junk").is_err());
        // Errors carry a position.
        match parse_spec("dp(cyclic:2,nope:3)") {
            Err(PcgError::Parse { pos, .. }) => assert_eq!(pos, 13),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn order_formulas() {
        assert_eq!(parse_spec("sym:5").unwrap().order(), 120);
        assert_eq!(parse_spec("m11").unwrap().order(), 7920);
        assert_eq!(parse_spec("psl3:4").unwrap().order(), 20160);
        assert_eq!(parse_spec("psl2:7").unwrap().order(), 168);
        assert_eq!(parse_spec("psl2:8").unwrap().order(), 504);
        assert_eq!(parse_spec("sl3:2").unwrap().order(), 168);
        assert_eq!(parse_spec("dp(cyclic:4,cyclic:6)").unwrap().order(), 24);
        assert_eq!(parse_spec("sd(7,6,3)").unwrap().order(), 42);
    }

    #[test]
    fn display_round_trip() {
        for text in [
            "cyclic:12",
            "dihedral:6",
            "sym:5",
            "alt:7",
            "heis3",
            "heis3_c2:0",
            "m11",
            "psl2:9",
            "psl3:4",
            "sl3:2",
            "dp(cyclic:4,dp(cyclic:2,cyclic:3))",
            "sd(7,6,3)",
        ] {
            let spec = parse_spec(text).unwrap();
            assert_eq!(spec.to_string(), text);
            assert_eq!(parse_spec(&spec.to_string()).unwrap(), spec);
        }
    }
}
