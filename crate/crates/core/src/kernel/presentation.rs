use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::{ElementSet, GroundSet};

/// A matroid given by its cyclic flats and their ranks.
///
/// This is the canonical representation everywhere in the crate: every
/// construction ultimately materializes one of these. The constructor
/// only enforces syntactic well-formedness (distinct sets over the right
/// universe); whether the entries actually satisfy the cyclic-flat
/// axioms is the business of [`crate::axioms::check_z_axioms`].
///
/// Entries are kept sorted by bitmask value, which is the canonical
/// order used by all enumerations.
#[derive(Clone, PartialEq, Eq)]
pub struct CyclicFlatPresentation {
    ground: Arc<GroundSet>,
    entries: Vec<(u64, u32)>,
}

impl CyclicFlatPresentation {
    pub fn new<I>(ground: Arc<GroundSet>, flats: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ElementSet, u32)>,
    {
        let mut entries = Vec::new();
        for (set, rank) in flats {
            if !set.ground().same_universe(&ground) {
                return Err(Error::UniverseMismatch);
            }
            entries.push((set.bits(), rank));
        }
        entries.sort_unstable_by_key(|&(bits, _)| bits);
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                let dup = ElementSet::from_bits_unchecked(&ground, w[0].0);
                return Err(Error::DuplicateFlat(dup.to_string()));
            }
        }
        Ok(CyclicFlatPresentation { ground, entries })
    }

    pub(crate) fn from_raw(ground: Arc<GroundSet>, mut entries: Vec<(u64, u32)>) -> Self {
        entries.sort_unstable_by_key(|&(bits, _)| bits);
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        CyclicFlatPresentation { ground, entries }
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in canonical (bitmask) order.
    pub fn iter(&self) -> impl Iterator<Item = (ElementSet, u32)> + '_ {
        self.entries
            .iter()
            .map(move |&(bits, rank)| (ElementSet::from_bits_unchecked(&self.ground, bits), rank))
    }

    pub(crate) fn raw_entries(&self) -> &[(u64, u32)] {
        &self.entries
    }

    /// Rank of `set` if it is listed as a cyclic flat.
    pub fn rank_of_member(&self, set: &ElementSet) -> Option<u32> {
        if !set.ground().same_universe(&self.ground) {
            return None;
        }
        self.rank_of_bits(set.bits())
    }

    pub(crate) fn rank_of_bits(&self, bits: u64) -> Option<u32> {
        self.entries
            .binary_search_by_key(&bits, |&(b, _)| b)
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn contains_set(&self, set: &ElementSet) -> bool {
        self.rank_of_member(set).is_some()
    }

    /// The members minimal under inclusion. A lattice has exactly one.
    pub(crate) fn minimal_members(&self) -> Vec<u64> {
        self.entries
            .iter()
            .map(|&(b, _)| b)
            .filter(|&b| !self.entries.iter().any(|&(c, _)| c != b && c & !b == 0))
            .collect()
    }

    /// Least member under inclusion, when one exists.
    pub(crate) fn least_member(&self) -> Option<(u64, u32)> {
        let minimal = self.minimal_members();
        match minimal[..] {
            [b] if self.entries.iter().all(|&(c, _)| b & !c == 0) => {
                Some((b, self.rank_of_bits(b).unwrap()))
            }
            _ => None,
        }
    }
}

impl fmt::Debug for CyclicFlatPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_list();
        for (set, rank) in self.iter() {
            d.entry(&format_args!("{set}:{rank}"));
        }
        d.finish()
    }
}
