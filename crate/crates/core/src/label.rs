//! Structured vertex labels.
//!
//! Every vertex produced by the functors in this crate is named by a label
//! built from the vertices it came from: `T` tags a vertex with a bit, `S`
//! wraps one or two vertices in a set, and the graph product pairs two
//! vertices. Iterating the functors therefore never needs a renaming table.
//!
//! Labels are totally ordered (`Atom < Tagged < Set < Pair`, then
//! lexicographically by contents) and every collection in the crate is kept
//! in that order.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Characters with a meaning in the textual label syntax.
const RESERVED: &[char] = &['{', '}', '(', ')', ',', '~'];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("atom token must be nonempty")]
    EmptyAtom,
    #[error("atom token {0:?} contains whitespace or one of {{ }} ( ) , ~")]
    BadAtom(String),
    #[error("a set label holds one or two distinct labels, got {0}")]
    BadSetSize(usize),
    #[error("cannot parse label {text:?}: {reason}")]
    Syntax { text: String, reason: String },
}

/// One element of `{0, 1}`, the monoid `(Z/2, xor, 0)` behind the pendant-edge monad.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub const ALL: [Bit; 2] = [Bit::Zero, Bit::One];

    pub fn xor(self, other: Bit) -> Bit {
        if self == other {
            Bit::Zero
        } else {
            Bit::One
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Bit::Zero => 0,
            Bit::One => 1,
        }
    }
}

/// A set of one or two distinct labels, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelSet(Vec<VertexLabel>);

impl LabelSet {
    pub fn singleton(label: VertexLabel) -> LabelSet {
        LabelSet(vec![label])
    }

    /// The unordered pair `{a, b}`; fails when `a == b`.
    pub fn pair(a: VertexLabel, b: VertexLabel) -> Result<LabelSet, LabelError> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(LabelSet(vec![a, b])),
            std::cmp::Ordering::Greater => Ok(LabelSet(vec![b, a])),
            std::cmp::Ordering::Equal => Err(LabelError::BadSetSize(1)),
        }
    }

    /// Builds a set from arbitrary elements; duplicates are an error, not merged.
    pub fn from_elems(mut elems: Vec<VertexLabel>) -> Result<LabelSet, LabelError> {
        elems.sort();
        let n = elems.len();
        elems.dedup();
        if elems.len() != n || !(1..=2).contains(&n) {
            return Err(LabelError::BadSetSize(n));
        }
        Ok(LabelSet(elems))
    }

    pub fn elems(&self) -> &[VertexLabel] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexLabel {
    Atom(Arc<str>),
    Tagged(Box<VertexLabel>, Bit),
    Set(LabelSet),
    Pair(Box<VertexLabel>, Box<VertexLabel>),
}

impl VertexLabel {
    pub fn atom(token: &str) -> Result<VertexLabel, LabelError> {
        if token.is_empty() {
            return Err(LabelError::EmptyAtom);
        }
        if token.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c)) {
            return Err(LabelError::BadAtom(token.to_owned()));
        }
        Ok(VertexLabel::Atom(token.into()))
    }

    pub fn tagged(base: VertexLabel, bit: Bit) -> VertexLabel {
        VertexLabel::Tagged(Box::new(base), bit)
    }

    pub fn singleton(elem: VertexLabel) -> VertexLabel {
        VertexLabel::Set(LabelSet::singleton(elem))
    }

    pub fn pair_set(a: VertexLabel, b: VertexLabel) -> Result<VertexLabel, LabelError> {
        LabelSet::pair(a, b).map(VertexLabel::Set)
    }

    pub fn pair(left: VertexLabel, right: VertexLabel) -> VertexLabel {
        VertexLabel::Pair(Box::new(left), Box::new(right))
    }

    pub fn as_set(&self) -> Option<&LabelSet> {
        match self {
            VertexLabel::Set(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_tagged(&self) -> Option<(&VertexLabel, Bit)> {
        match self {
            VertexLabel::Tagged(base, bit) => Some((base, *bit)),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&VertexLabel, &VertexLabel)> {
        match self {
            VertexLabel::Pair(l, r) => Some((l, r)),
            _ => None,
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Atom(t) => f.write_str(t),
            VertexLabel::Tagged(base, bit) => write!(f, "{}~{}", base, bit.as_u8()),
            VertexLabel::Set(s) => {
                f.write_str("{")?;
                for (i, e) in s.elems().iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str("}")
            }
            VertexLabel::Pair(l, r) => write!(f, "({l},{r})"),
        }
    }
}

/// Recursive-descent parser for the textual form produced by `Display`.
struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, reason: impl Into<String>) -> LabelError {
        LabelError::Syntax {
            text: self.text.to_owned(),
            reason: reason.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), LabelError> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}' at byte {}", self.pos)))
        }
    }

    fn label(&mut self) -> Result<VertexLabel, LabelError> {
        let mut label = match self.peek() {
            Some('{') => {
                self.pos += 1;
                let mut elems = vec![self.label()?];
                if self.peek() == Some(',') {
                    self.pos += 1;
                    elems.push(self.label()?);
                }
                self.expect('}')?;
                VertexLabel::Set(LabelSet::from_elems(elems)?)
            }
            Some('(') => {
                self.pos += 1;
                let left = self.label()?;
                self.expect(',')?;
                let right = self.label()?;
                self.expect(')')?;
                VertexLabel::pair(left, right)
            }
            _ => {
                let rest = &self.text[self.pos..];
                let len = rest
                    .find(|c: char| c.is_whitespace() || RESERVED.contains(&c))
                    .unwrap_or(rest.len());
                if len == 0 {
                    return Err(self.err(format!("expected a label at byte {}", self.pos)));
                }
                self.pos += len;
                VertexLabel::atom(&rest[..len])?
            }
        };
        while self.peek() == Some('~') {
            self.pos += 1;
            let bit = match self.peek() {
                Some('0') => Bit::Zero,
                Some('1') => Bit::One,
                _ => return Err(self.err(format!("expected 0 or 1 after '~' at byte {}", self.pos))),
            };
            self.pos += 1;
            label = VertexLabel::tagged(label, bit);
        }
        Ok(label)
    }
}

impl FromStr for VertexLabel {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { text: s, pos: 0 };
        let label = p.label()?;
        if p.pos != s.len() {
            return Err(p.err(format!("trailing input at byte {}", p.pos)));
        }
        Ok(label)
    }
}

impl Serialize for VertexLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for atoms in tests and fixtures. Panics on an invalid token.
pub fn atom(token: &str) -> VertexLabel {
    VertexLabel::atom(token).expect("valid atom token")
}
