use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Hard cap on ground-set size: element sets are single machine words.
pub const MAX_ELEMENTS: usize = 64;

/// An ordered set of distinct element labels.
///
/// The construction order is canonical: it fixes the element indexing
/// `0..size-1` used by every bitmask in the crate. Ground sets are
/// shared behind an [`Arc`] so that element sets can carry their
/// universe around cheaply.
#[derive(Debug, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Arc::new(GroundSet { labels }))
    }

    /// Ground set labeled `1..=n`.
    pub fn numbered(n: usize) -> Result<Arc<Self>> {
        Self::new((1..=n).map(|i| i.to_string()))
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn contains_label(&self, label: &str) -> bool {
        self.index_of(label).is_some()
    }

    /// Bitmask with every element present.
    pub fn full_bits(&self) -> u64 {
        if self.labels.is_empty() {
            0
        } else {
            u64::MAX >> (64 - self.labels.len())
        }
    }

    /// Two ground sets are interchangeable when they list the same labels
    /// in the same order.
    pub fn same_universe(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || self.labels == other.labels
    }
}

/// A subset of a ground set, stored as a bitmask over the canonical
/// element indexing. All set algebra is exact.
#[derive(Clone)]
pub struct ElementSet {
    ground: Arc<GroundSet>,
    bits: u64,
}

impl ElementSet {
    pub fn empty(ground: &Arc<GroundSet>) -> Self {
        ElementSet { ground: Arc::clone(ground), bits: 0 }
    }

    pub fn full(ground: &Arc<GroundSet>) -> Self {
        ElementSet { ground: Arc::clone(ground), bits: ground.full_bits() }
    }

    /// Build a set from a bitmask. Bits outside the universe are rejected.
    pub fn from_bits(ground: &Arc<GroundSet>, bits: u64) -> Result<Self> {
        if bits & !ground.full_bits() != 0 {
            return Err(Error::UniverseMismatch);
        }
        Ok(ElementSet { ground: Arc::clone(ground), bits })
    }

    pub(crate) fn from_bits_unchecked(ground: &Arc<GroundSet>, bits: u64) -> Self {
        debug_assert_eq!(bits & !ground.full_bits(), 0);
        ElementSet { ground: Arc::clone(ground), bits }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(ground: &Arc<GroundSet>, idx: I) -> Result<Self> {
        let mut bits = 0u64;
        for i in idx {
            if i >= ground.size() {
                return Err(Error::UniverseMismatch);
            }
            bits |= 1 << i;
        }
        Ok(ElementSet { ground: Arc::clone(ground), bits })
    }

    pub fn from_labels<I, S>(ground: &Arc<GroundSet>, labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut bits = 0u64;
        for l in labels {
            let l = l.as_ref();
            match ground.index_of(l) {
                Some(i) => bits |= 1 << i,
                None => return Err(Error::UnknownLabel(l.to_string())),
            }
        }
        Ok(ElementSet { ground: Arc::clone(ground), bits })
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains_index(&self, i: usize) -> bool {
        i < self.ground.size() && self.bits & (1 << i) != 0
    }

    pub fn contains_label(&self, label: &str) -> bool {
        self.ground.index_of(label).is_some_and(|i| self.contains_index(i))
    }

    fn check_same_universe(&self, other: &ElementSet) {
        assert!(
            self.ground.same_universe(&other.ground),
            "element sets over different ground sets"
        );
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        self.check_same_universe(other);
        ElementSet { ground: Arc::clone(&self.ground), bits: self.bits | other.bits }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        self.check_same_universe(other);
        ElementSet { ground: Arc::clone(&self.ground), bits: self.bits & other.bits }
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        self.check_same_universe(other);
        ElementSet { ground: Arc::clone(&self.ground), bits: self.bits & !other.bits }
    }

    pub fn complement(&self) -> ElementSet {
        ElementSet { ground: Arc::clone(&self.ground), bits: self.ground.full_bits() & !self.bits }
    }

    pub fn with_index(&self, i: usize) -> ElementSet {
        assert!(i < self.ground.size());
        ElementSet { ground: Arc::clone(&self.ground), bits: self.bits | (1 << i) }
    }

    pub fn without_index(&self, i: usize) -> ElementSet {
        ElementSet { ground: Arc::clone(&self.ground), bits: self.bits & !(1 << i) }
    }

    pub fn is_subset_of(&self, other: &ElementSet) -> bool {
        self.check_same_universe(other);
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint_from(&self, other: &ElementSet) -> bool {
        self.check_same_universe(other);
        self.bits & other.bits == 0
    }

    /// Indices of the members, ascending.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.ground.size()).filter(move |i| self.bits & (1 << i) != 0)
    }

    /// Labels of the members, in ground-set order.
    pub fn label_vec(&self) -> Vec<String> {
        self.indices().map(|i| self.ground.label(i).to_string()).collect()
    }
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.ground.same_universe(&other.ground) && self.bits == other.bits
    }
}

impl Eq for ElementSet {}

impl std::hash::Hash for ElementSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.ground.label(i))?;
        }
        write!(f, "}}")
    }
}
