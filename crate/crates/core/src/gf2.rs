//! Payloads over the two-element field: concrete bits and symbolic linear
//! combinations of source symbols.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::topology::{SessionId, SessionKind};

/// A value carried by a transmission. Addition is XOR-like: associative,
/// commutative, and `v + v == zero`.
pub trait Payload: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn is_zero(&self) -> bool;
    /// Text form used by trace serialization.
    fn encode(&self) -> String;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Bit(pub bool);

impl Bit {
    pub const ZERO: Bit = Bit(false);
    pub const ONE: Bit = Bit(true);
}

impl Add for Bit {
    type Output = Bit;
    // addition in GF(2) is xor
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Bit) -> Bit {
        Bit(self.0 ^ rhs.0)
    }
}

impl AddAssign for Bit {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Bit) {
        self.0 ^= rhs.0;
    }
}

impl Payload for Bit {
    fn zero() -> Self {
        Bit::ZERO
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += *other;
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn encode(&self) -> String {
        format!("{:x}", u8::from(self.0))
    }
}

/// One source symbol: session stream at a slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymbolTerm {
    pub session: SessionId,
    pub time: i64,
}

impl SymbolTerm {
    pub const fn new(session: SessionId, time: i64) -> Self {
        Self { session, time }
    }
}

impl fmt::Display for SymbolTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.session, self.time)
    }
}

impl FromStr for SymbolTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::InvalidParameter(format!("malformed term `{s}`"));
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let time = rest
            .strip_suffix(')')
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        let mut chars = head.chars();
        let kind = chars
            .next()
            .and_then(SessionKind::from_letter)
            .ok_or_else(bad)?;
        let index = chars.as_str().parse().map_err(|_| bad())?;
        Ok(SymbolTerm::new(SessionId::new(kind, index), time))
    }
}

/// GF(2) linear combination of source symbols, stored as a sorted set of
/// terms. Terms at slot `<= 0` are zero and never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct LinComb {
    terms: Vec<SymbolTerm>,
}

impl LinComb {
    pub fn new() -> Self {
        Self::default()
    }

    /// Single-symbol combination; empty when `time <= 0`.
    pub fn term(session: SessionId, time: i64) -> Self {
        if time <= 0 {
            return Self::default();
        }
        Self {
            terms: vec![SymbolTerm::new(session, time)],
        }
    }

    pub fn from_terms<I: IntoIterator<Item = SymbolTerm>>(terms: I) -> Self {
        terms.into_iter().fold(Self::default(), |mut acc, t| {
            acc += Self::term(t.session, t.time);
            acc
        })
    }

    pub fn terms(&self) -> &[SymbolTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, t: &SymbolTerm) -> bool {
        self.terms.binary_search(t).is_ok()
    }

    /// Evaluates against concrete streams.
    pub fn eval<F: FnMut(SessionId, i64) -> Bit>(&self, mut stream: F) -> Bit {
        self.terms
            .iter()
            .fold(Bit::ZERO, |acc, t| acc + stream(t.session, t.time))
    }

    fn symmetric_difference(a: &[SymbolTerm], b: &[SymbolTerm]) -> Vec<SymbolTerm> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        out
    }
}

impl AddAssign<&LinComb> for LinComb {
    fn add_assign(&mut self, rhs: &LinComb) {
        if rhs.terms.is_empty() {
            return;
        }
        self.terms = Self::symmetric_difference(&self.terms, &rhs.terms);
    }
}

impl AddAssign for LinComb {
    fn add_assign(&mut self, rhs: LinComb) {
        *self += &rhs;
    }
}

impl Add for LinComb {
    type Output = LinComb;
    fn add(mut self, rhs: LinComb) -> LinComb {
        self += &rhs;
        self
    }
}

impl<'a> Add<&'a LinComb> for &'a LinComb {
    type Output = LinComb;
    fn add(self, rhs: &'a LinComb) -> LinComb {
        LinComb {
            terms: LinComb::symmetric_difference(&self.terms, &rhs.terms),
        }
    }
}

impl Payload for LinComb {
    fn zero() -> Self {
        Self::default()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn encode(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, t) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str("+")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for LinComb {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "0" {
            return Ok(Self::default());
        }
        let terms = s
            .split('+')
            .map(str::parse)
            .collect::<Result<Vec<SymbolTerm>, _>>()?;
        Ok(Self::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sid(kind: SessionKind, i: u32) -> SessionId {
        SessionId::new(kind, i)
    }

    fn arb_term() -> impl Strategy<Value = SymbolTerm> {
        (0..3u8, 1..5u32, -2..8i64).prop_map(|(k, i, t)| {
            let kind = [SessionKind::X, SessionKind::Y, SessionKind::Z][k as usize];
            SymbolTerm::new(sid(kind, i), t)
        })
    }

    fn arb_comb() -> impl Strategy<Value = LinComb> {
        prop::collection::vec(arb_term(), 0..12).prop_map(LinComb::from_terms)
    }

    #[test]
    fn nonpositive_times_vanish() {
        assert!(LinComb::term(sid(SessionKind::Z, 3), 0).is_empty());
        assert!(LinComb::term(sid(SessionKind::Z, 3), -4).is_empty());
        assert_eq!(LinComb::term(sid(SessionKind::X, 1), 1).len(), 1);
    }

    #[test]
    fn text_form() {
        let c = LinComb::from_terms([
            SymbolTerm::new(sid(SessionKind::Y, 2), 5),
            SymbolTerm::new(sid(SessionKind::X, 1), 3),
        ]);
        assert_eq!(c.to_string(), "x1(3)+y2(5)");
        assert_eq!(c.to_string().parse::<LinComb>().unwrap(), c);
        assert_eq!(LinComb::new().to_string(), "0");
        assert_eq!(Bit::ONE.encode(), "1");
        assert!("q1(2)".parse::<LinComb>().is_err());
    }

    proptest! {
        #[test]
        fn self_inverse(a in arb_comb()) {
            prop_assert!((&a + &a).is_empty());
        }

        #[test]
        fn commutative_associative(a in arb_comb(), b in arb_comb(), c in arb_comb()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &LinComb::new(), a.clone());
        }

        #[test]
        fn canonical(a in arb_comb()) {
            prop_assert!(a.terms().iter().all(|t| t.time >= 1));
            prop_assert!(a.terms().windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(a.to_string().parse::<LinComb>().unwrap(), a);
        }

        #[test]
        fn evaluation_is_homomorphic(a in arb_comb(), b in arb_comb(), seed in any::<u64>()) {
            let stream = |s: SessionId, t: i64| {
                let h = seed ^ (u64::from(s.index) << 32) ^ (t as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
                    ^ (s.kind as u64) << 48;
                Bit(h.count_ones() % 2 == 1)
            };
            prop_assert_eq!((&a + &b).eval(stream), a.eval(stream) + b.eval(stream));
        }
    }
}
