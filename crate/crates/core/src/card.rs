//! Cardinalities that may be countably infinite.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A finite count or `ℵ0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Card {
    Fin(u64),
    Aleph0,
}

impl Card {
    pub fn is_finite(self) -> bool {
        matches!(self, Card::Fin(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Card::Fin(n) => Some(n),
            Card::Aleph0 => None,
        }
    }

    /// `self - n`; infinite minus finite stays infinite. Saturates at zero.
    pub fn minus(self, n: u64) -> Card {
        match self {
            Card::Fin(m) => Card::Fin(m.saturating_sub(n)),
            Card::Aleph0 => Card::Aleph0,
        }
    }

    pub fn plus(self, other: Card) -> Card {
        match (self, other) {
            (Card::Fin(a), Card::Fin(b)) => Card::Fin(a + b),
            _ => Card::Aleph0,
        }
    }
}

impl From<u64> for Card {
    fn from(n: u64) -> Self {
        Card::Fin(n)
    }
}

impl From<usize> for Card {
    fn from(n: usize) -> Self {
        Card::Fin(n as u64)
    }
}

impl Ord for Card {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Card::Fin(a), Card::Fin(b)) => a.cmp(b),
            (Card::Fin(_), Card::Aleph0) => Ordering::Less,
            (Card::Aleph0, Card::Fin(_)) => Ordering::Greater,
            (Card::Aleph0, Card::Aleph0) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Card {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Card::Fin(n) => write!(f, "{n}"),
            Card::Aleph0 => f.write_str("aleph0"),
        }
    }
}

// Serialized as a bare integer or the string "aleph0".
impl Serialize for Card {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Card::Fin(n) => s.serialize_u64(*n),
            Card::Aleph0 => s.serialize_str("aleph0"),
        }
    }
}

impl<'de> Deserialize<'de> for Card {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct CardVisitor;

        impl Visitor<'_> for CardVisitor {
            type Value = Card;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a nonnegative integer or \"aleph0\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Card, E> {
                Ok(Card::Fin(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Card, E> {
                u64::try_from(v)
                    .map(Card::Fin)
                    .map_err(|_| E::custom("cardinality must be nonnegative"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Card, E> {
                match v {
                    "aleph0" | "Aleph0" | "ℵ0" => Ok(Card::Aleph0),
                    other => Err(E::custom(format!("unknown cardinality {other:?}"))),
                }
            }
        }

        d.deserialize_any(CardVisitor)
    }
}
