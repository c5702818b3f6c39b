use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A p-adic valuation. The valuation of zero is [`Valuation::Infinite`].
///
/// The derived ordering puts every finite value below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl From<u64> for Valuation {
    fn from(v: u64) -> Self {
        Valuation::Finite(v)
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl Add<u64> for Valuation {
    type Output = Valuation;

    fn add(self, rhs: u64) -> Valuation {
        self + Valuation::Finite(rhs)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Valuation {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "inf" {
            Ok(Valuation::Infinite)
        } else {
            s.parse().map(Valuation::Finite)
        }
    }
}

// Finite values serialize as JSON numbers, infinity as the string "inf".
impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => serializer.serialize_u64(*v),
            Valuation::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u64),
            Str(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Num(v) => Ok(Valuation::Finite(v)),
            Repr::Str(s) if s == "inf" => Ok(Valuation::Infinite),
            Repr::Str(s) => Err(serde::de::Error::custom(format!("bad valuation {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_absorbs() {
        assert_eq!(Valuation::Infinite + 3, Valuation::Infinite);
        assert_eq!(Valuation::Finite(2) + Valuation::Infinite, Valuation::Infinite);
        assert_eq!(Valuation::Finite(2) + 3, Valuation::Finite(5));
        assert!(Valuation::Finite(u64::MAX) < Valuation::Infinite);
    }

    #[test]
    fn text_and_json_forms() {
        assert_eq!(Valuation::Infinite.to_string(), "inf");
        assert_eq!("inf".parse::<Valuation>().unwrap(), Valuation::Infinite);
        assert_eq!("7".parse::<Valuation>().unwrap(), Valuation::Finite(7));
        let js = serde_json::to_string(&[Valuation::Finite(4), Valuation::Infinite]).unwrap();
        assert_eq!(js, r#"[4,"inf"]"#);
        let back: Vec<Valuation> = serde_json::from_str(&js).unwrap();
        assert_eq!(back, vec![Valuation::Finite(4), Valuation::Infinite]);
    }
}
