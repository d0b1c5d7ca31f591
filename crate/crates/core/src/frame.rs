use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default upper bound on the frame size; dense storage needs `2^n` slots.
pub const DEFAULT_FRAME_CAP: usize = 12;

/// A finite frame of discernment with ordered, distinct element labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    names: Arc<[String]>,
}

impl Frame {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_cap(names, DEFAULT_FRAME_CAP)
    }

    pub fn with_cap<I, S>(names: I, cap: usize) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyFrame);
        }
        // Bitmasks are u32; the hard ceiling is independent of the configured cap.
        if names.len() > cap || names.len() > 30 {
            return Err(Error::FrameTooLarge { size: names.len(), cap });
        }
        let mut seen = HashSet::new();
        for name in &names {
            if name.trim().is_empty() || name.contains(char::is_whitespace) {
                return Err(Error::EmptyLabel);
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateLabel(name.clone()));
            }
        }
        Ok(Self { names: names.into() })
    }

    /// Frame with generated labels `a`, `b`, ... (or `e0`, `e1`, ... past 26).
    pub fn anonymous(size: usize) -> Result<Self> {
        let names: Vec<String> = if size <= 26 {
            (0..size).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
        } else {
            (0..size).map(|i| format!("e{i}")).collect()
        };
        Self::with_cap(names, size.max(DEFAULT_FRAME_CAP))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Number of subsets, `2^n`.
    pub fn power_set_size(&self) -> usize {
        1 << self.len()
    }

    pub fn full(&self) -> Subset {
        Subset((1u32 << self.len()) - 1)
    }

    pub fn contains(&self, subset: Subset) -> bool {
        subset.0 & !self.full().0 == 0
    }

    pub fn check(&self, subset: Subset) -> Result<Subset> {
        if self.contains(subset) {
            Ok(subset)
        } else {
            Err(Error::SubsetOutOfFrame(subset))
        }
    }

    pub fn complement(&self, subset: Subset) -> Subset {
        Subset(subset.0 ^ self.full().0)
    }

    pub fn element(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// The subset made of the named elements.
    pub fn subset<I, S>(&self, names: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        names.into_iter().try_fold(Subset::EMPTY, |acc, name| {
            Ok(acc.union(Subset::singleton(self.element(name.as_ref())?)))
        })
    }

    /// Parses a whitespace-separated subset key such as `"x z"`.
    pub fn parse_key(&self, key: &str) -> Result<Subset> {
        self.subset(key.split_whitespace())
    }

    /// Canonical key: element names in frame order, space-joined.
    pub fn key(&self, subset: Subset) -> String {
        subset
            .elements()
            .filter_map(|i| self.names.get(i).map(String::as_str))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// All nonempty subsets in ascending bitmask order.
    pub fn nonempty_subsets(&self) -> impl Iterator<Item = Subset> {
        (1..=self.full().0).map(Subset)
    }

    /// All subsets including the empty set.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..=self.full().0).map(Subset)
    }
}

/// A subset of a frame encoded as a bitmask; bit `i` is element `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn singleton(element: usize) -> Self {
        Subset(1 << element)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & other.0 == self.0
    }

    pub fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub fn contains_element(self, element: usize) -> bool {
        self.0 >> element & 1 == 1
    }

    /// Element indices in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1)
    }

    /// Nonempty subsets of `self` in ascending bitmask order.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        (1..=full).filter(move |b| b & full == *b).map(Subset)
    }

    /// Subsets of `self` including the empty set, ascending.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        std::iter::once(Subset::EMPTY).chain(self.nonempty_subsets())
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.elements().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_round_trip_in_frame_order() {
        let frame = Frame::new(["x", "y", "z"]).unwrap();
        let xz = frame.parse_key("z  x").unwrap();
        assert_eq!(xz, Subset(0b101));
        assert_eq!(frame.key(xz), "x z");
        assert_eq!(frame.complement(xz), Subset(0b010));
        assert_eq!(frame.parse_key("").unwrap(), Subset::EMPTY);
    }

    #[test]
    fn rejects_bad_frames() {
        assert_eq!(Frame::new(Vec::<String>::new()), Err(Error::EmptyFrame));
        assert_eq!(
            Frame::new(["x", "x"]),
            Err(Error::DuplicateLabel("x".into()))
        );
        assert_eq!(Frame::new(["x", ""]), Err(Error::EmptyLabel));
        assert!(matches!(
            Frame::anonymous(13).and_then(|f| Frame::new(f.names().to_vec())),
            Err(Error::FrameTooLarge { size: 13, cap: 12 })
        ));
        assert!(Frame::with_cap(Frame::anonymous(14).unwrap().names().to_vec(), 14).is_ok());
        assert!(matches!(
            Frame::new(["x"]).unwrap().parse_key("q"),
            Err(Error::UnknownElement(_))
        ));
    }

    #[test]
    fn subset_enumeration() {
        let a = Subset(0b101);
        let subs: Vec<_> = a.nonempty_subsets().map(Subset::bits).collect();
        assert_eq!(subs, vec![1, 4, 5]);
        assert_eq!(a.subsets().count(), 4);
        assert!(Subset(0b001).is_subset_of(a));
        assert!(!Subset(0b010).is_subset_of(a));
        assert_eq!(a.to_string(), "{0,2}");
    }
}
