use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One entry of a triangle-group signature: a finite order `>= 2`, or a cusp.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entry {
    Finite(u64),
    Infinite,
}

impl Entry {
    pub fn finite(self) -> Option<u64> {
        match self {
            Entry::Finite(s) => Some(s),
            Entry::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Entry::Infinite
    }

    fn reciprocal(self) -> Ratio<u64> {
        match self {
            Entry::Finite(s) => Ratio::new(1, s),
            Entry::Infinite => Ratio::from_integer(0),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Finite(s) => write!(f, "{s}"),
            Entry::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Entry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t, "inf" | "infinity" | "∞") {
            return Ok(Entry::Infinite);
        }
        t.parse::<u64>()
            .map(Entry::Finite)
            .map_err(|_| Error::InvalidSignature(format!("entry {s:?} is neither an integer nor `inf`")))
    }
}

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Entry::Finite(v) => s.serialize_u64(*v),
            Entry::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Entry::Finite(v)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// A hyperbolic signature `(p, q, r)`, kept in the order the user gave it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub p: Entry,
    pub q: Entry,
    pub r: Entry,
}

impl Signature {
    pub fn entries(&self) -> [Entry; 3] {
        [self.p, self.q, self.r]
    }

    pub fn finite_entries(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries().into_iter().filter_map(Entry::finite)
    }

    /// Least common multiple of the finite entries, 1 if there are none.
    pub fn level(&self) -> u64 {
        self.finite_entries().fold(1, |acc, s| acc.lcm(&s))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.p, self.q, self.r)
    }
}

/// Accepts the triple iff `1/p + 1/q + 1/r < 1` (with `1/inf = 0`).
pub fn validate_signature(p: Entry, q: Entry, r: Entry) -> Result<Signature> {
    for e in [p, q, r] {
        if let Entry::Finite(s) = e {
            if s < 2 {
                return Err(Error::InvalidSignature(format!(
                    "entry {s} must be at least 2"
                )));
            }
        }
    }
    let sum = p.reciprocal() + q.reciprocal() + r.reciprocal();
    if sum >= Ratio::from_integer(1) {
        return Err(Error::InvalidSignature(format!(
            "({p}, {q}, {r}) is not hyperbolic: 1/p + 1/q + 1/r = {sum}"
        )));
    }
    Ok(Signature { p, q, r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Entry::{Finite as F, Infinite as I};

    #[test]
    fn hyperbolic_and_not() {
        assert!(validate_signature(F(2), F(3), F(7)).is_ok());
        assert!(validate_signature(I, I, I).is_ok());
        assert!(validate_signature(F(2), F(3), I).is_ok());
        assert!(matches!(
            validate_signature(F(2), F(3), F(6)),
            Err(Error::InvalidSignature(_))
        ));
        assert!(validate_signature(F(2), F(2), F(50)).is_err());
        assert!(validate_signature(F(3), F(3), F(3)).is_err());
        assert!(validate_signature(F(1), F(7), F(7)).is_err());
        assert_eq!(validate_signature(F(2), F(3), F(6)).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn order_is_preserved() {
        let s = validate_signature(F(7), F(2), F(3)).unwrap();
        assert_eq!(s.entries(), [F(7), F(2), F(3)]);
        assert_eq!(s.level(), 42);
        assert_eq!(validate_signature(I, I, I).unwrap().level(), 1);
    }

    #[test]
    fn parse_and_json() {
        assert_eq!("inf".parse::<Entry>().unwrap(), I);
        assert_eq!("12".parse::<Entry>().unwrap(), F(12));
        assert!("x".parse::<Entry>().is_err());
        let s = validate_signature(F(2), F(3), I).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"p":2,"q":3,"r":"inf"}"#);
        assert_eq!(serde_json::from_str::<Signature>(&j).unwrap(), s);
    }
}
