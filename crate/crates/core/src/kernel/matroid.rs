use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::kernel::flats::{enumerate_flats, is_cyclic_under, FlatLattice};
use crate::kernel::{CyclicFlatPresentation, ElementSet, GroundSet};

/// A validated cyclic-flat presentation together with its derived
/// structure: the rank oracle, closure operator, flats, circuits and
/// minors.
///
/// Values are immutable after construction; internal caches are
/// synchronized, so a `Matroid` can be queried from several threads.
pub struct Matroid {
    pres: CyclicFlatPresentation,
    rank: u32,
    loops: u64,
    rank_memo: Mutex<HashMap<u64, u32>>,
    closure_memo: Mutex<HashMap<u64, u64>>,
    lattice: OnceLock<FlatLattice>,
}

impl Matroid {
    /// Validate a presentation against the cyclic-flat axioms and build
    /// the matroid it determines.
    pub fn from_presentation(pres: CyclicFlatPresentation) -> Result<Self> {
        if let Err(violations) = crate::axioms::check_z_axioms(&pres) {
            return Err(Error::InvalidPresentation(violations));
        }
        let loops = pres
            .least_member()
            .expect("validated presentation has a least member")
            .0;
        let mut m = Matroid {
            pres,
            rank: 0,
            loops,
            rank_memo: Mutex::new(HashMap::new()),
            closure_memo: Mutex::new(HashMap::new()),
            lattice: OnceLock::new(),
        };
        m.rank = m.rank_bits(m.ground().full_bits());
        Ok(m)
    }

    /// Build a matroid from an arbitrary rank oracle by materializing
    /// its cyclic flats. The oracle must be a genuine matroid rank
    /// function; the axiom validation inside `from_presentation` is the
    /// safety net.
    pub fn from_rank_fn<F>(ground: Arc<GroundSet>, mut rank: F) -> Result<Self>
    where
        F: FnMut(u64) -> u32,
    {
        let pres = presentation_from_rank_fn(ground, &mut rank);
        Self::from_presentation(pres)
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        self.pres.ground()
    }

    pub fn size(&self) -> usize {
        self.ground().size()
    }

    pub fn presentation(&self) -> &CyclicFlatPresentation {
        &self.pres
    }

    /// Rank of the whole ground set.
    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// The least cyclic flat: the set of loops.
    pub fn loops(&self) -> ElementSet {
        ElementSet::from_bits_unchecked(self.ground(), self.loops)
    }

    pub fn ground_set(&self) -> ElementSet {
        ElementSet::full(self.ground())
    }

    fn check_universe(&self, x: &ElementSet) -> Result<()> {
        if x.ground().same_universe(self.ground()) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    /// Matroid rank of `x`: `min { r(Z) + |x - Z| }` over the cyclic
    /// flats `Z` of the presentation.
    pub fn rank_of(&self, x: &ElementSet) -> Result<u32> {
        self.check_universe(x)?;
        Ok(self.rank_bits(x.bits()))
    }

    pub(crate) fn rank_bits(&self, bits: u64) -> u32 {
        if let Some(&r) = self.rank_memo.lock().unwrap().get(&bits) {
            return r;
        }
        let r = self
            .pres
            .raw_entries()
            .iter()
            .map(|&(z, rz)| rz + (bits & !z).count_ones())
            .min()
            .expect("presentation is nonempty");
        self.rank_memo.lock().unwrap().insert(bits, r);
        r
    }

    /// Smallest flat containing `x`.
    pub fn closure(&self, x: &ElementSet) -> Result<ElementSet> {
        self.check_universe(x)?;
        Ok(ElementSet::from_bits_unchecked(self.ground(), self.closure_bits(x.bits())))
    }

    pub(crate) fn closure_bits(&self, bits: u64) -> u64 {
        if let Some(&c) = self.closure_memo.lock().unwrap().get(&bits) {
            return c;
        }
        let r = self.rank_bits(bits);
        let mut cl = bits;
        for i in 0..self.size() {
            let e = 1u64 << i;
            if cl & e == 0 && self.rank_bits(bits | e) == r {
                cl |= e;
            }
        }
        self.closure_memo.lock().unwrap().insert(bits, cl);
        cl
    }

    pub fn is_flat(&self, x: &ElementSet) -> Result<bool> {
        self.check_universe(x)?;
        Ok(self.closure_bits(x.bits()) == x.bits())
    }

    pub fn is_independent(&self, x: &ElementSet) -> Result<bool> {
        self.check_universe(x)?;
        Ok(self.rank_bits(x.bits()) == x.len() as u32)
    }

    /// A set is cyclic when it is a union of circuits, equivalently when
    /// the restriction to it has no coloop.
    pub fn is_cyclic(&self, x: &ElementSet) -> Result<bool> {
        self.check_universe(x)?;
        Ok(is_cyclic_under(x.bits(), &mut |b| self.rank_bits(b)))
    }

    /// All circuits, in canonical (bitmask) order.
    pub fn circuits(&self) -> Vec<ElementSet> {
        let n = self.size();
        let mut out: Vec<u64> = Vec::new();
        let max_size = (self.rank as usize + 1).min(n);
        let mut combo = CombinationIter::new(n, max_size);
        while let Some(bits) = combo.next() {
            let k = bits.count_ones();
            if self.rank_bits(bits) >= k {
                continue;
            }
            let minimal = (0..n)
                .filter(|&i| bits & (1 << i) != 0)
                .all(|i| self.rank_bits(bits & !(1 << i)) == k - 1);
            if minimal {
                out.push(bits);
            }
        }
        out.sort_unstable();
        out.into_iter()
            .map(|b| ElementSet::from_bits_unchecked(self.ground(), b))
            .collect()
    }

    pub(crate) fn lattice(&self) -> &FlatLattice {
        self.lattice
            .get_or_init(|| FlatLattice::build(self.size(), self.ground().full_bits(), &mut |b| self.rank_bits(b)))
    }

    /// All flats, in canonical (bitmask) order.
    pub fn all_flats(&self) -> Vec<ElementSet> {
        let mut bits: Vec<u64> = self.lattice().flats().to_vec();
        bits.sort_unstable();
        bits.into_iter()
            .map(|b| ElementSet::from_bits_unchecked(self.ground(), b))
            .collect()
    }

    /// All flats of rank `k`, in canonical order.
    pub fn flats_of_rank(&self, k: u32) -> Result<Vec<ElementSet>> {
        if k > self.rank {
            return Err(Error::RankOutOfRange { rank: k, max: self.rank });
        }
        Ok(self
            .lattice()
            .flats_of_rank(k)
            .map(|b| ElementSet::from_bits_unchecked(self.ground(), b))
            .collect())
    }

    /// Flats of rank `rank() - 1`. Empty for rank-0 matroids.
    pub fn hyperplanes(&self) -> Vec<ElementSet> {
        match self.rank.checked_sub(1) {
            Some(k) => self.flats_of_rank(k).unwrap(),
            None => Vec::new(),
        }
    }

    /// Rank-2 flats.
    pub fn lines(&self) -> Vec<ElementSet> {
        if self.rank < 2 {
            return Vec::new();
        }
        self.flats_of_rank(2).unwrap()
    }

    /// Rank-3 flats.
    pub fn planes(&self) -> Vec<ElementSet> {
        if self.rank < 3 {
            return Vec::new();
        }
        self.flats_of_rank(3).unwrap()
    }

    /// Recompute the cyclic flats and their ranks from the rank oracle.
    /// Round-trips to `presentation()` on every valid matroid.
    pub fn cyclic_flats_from_oracle(&self) -> CyclicFlatPresentation {
        presentation_from_rank_fn(Arc::clone(self.ground()), &mut |b| self.rank_bits(b))
    }

    /// Restriction to `x`, as a matroid on the labels of `x` (ground
    /// order preserved).
    pub fn restriction(&self, x: &ElementSet) -> Result<Matroid> {
        self.check_universe(x)?;
        let old_idx: Vec<usize> = x.indices().collect();
        let ground = GroundSet::new(old_idx.iter().map(|&i| self.ground().label(i)))?;
        Matroid::from_rank_fn(ground, |sub| {
            let mut bits = 0u64;
            for (new, &old) in old_idx.iter().enumerate() {
                if sub & (1 << new) != 0 {
                    bits |= 1 << old;
                }
            }
            self.rank_bits(bits)
        })
    }

    /// Contraction by `x`, as a matroid on the complementary labels.
    pub fn contraction(&self, x: &ElementSet) -> Result<Matroid> {
        self.check_universe(x)?;
        let rx = self.rank_bits(x.bits());
        let keep: Vec<usize> = x.complement().indices().collect();
        let ground = GroundSet::new(keep.iter().map(|&i| self.ground().label(i)))?;
        Matroid::from_rank_fn(ground, |sub| {
            let mut bits = x.bits();
            for (new, &old) in keep.iter().enumerate() {
                if sub & (1 << new) != 0 {
                    bits |= 1 << old;
                }
            }
            self.rank_bits(bits) - rx
        })
    }

    /// Deletion of `x`: restriction to its complement.
    pub fn deletion(&self, x: &ElementSet) -> Result<Matroid> {
        self.restriction(&x.complement())
    }

    /// Equality as labeled matroids, independent of ground-set order.
    pub fn same_labeled_matroid(&self, other: &Matroid) -> bool {
        let mine = self.ground().labels();
        let theirs = other.ground().labels();
        if mine.len() != theirs.len() {
            return false;
        }
        if mine == theirs {
            return self.pres == other.pres;
        }
        // Same label set, possibly in a different order: remap.
        let mut map = Vec::with_capacity(theirs.len());
        for l in theirs {
            match self.ground().index_of(l) {
                Some(i) => map.push(i),
                None => return false,
            }
        }
        let mut remapped: Vec<(u64, u32)> = other
            .pres
            .raw_entries()
            .iter()
            .map(|&(bits, rank)| {
                let mut b = 0u64;
                for (j, &i) in map.iter().enumerate() {
                    if bits & (1 << j) != 0 {
                        b |= 1 << i;
                    }
                }
                (b, rank)
            })
            .collect();
        remapped.sort_unstable_by_key(|&(b, _)| b);
        remapped == self.pres.raw_entries()
    }
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        Matroid {
            pres: self.pres.clone(),
            rank: self.rank,
            loops: self.loops,
            rank_memo: Mutex::new(HashMap::new()),
            closure_memo: Mutex::new(HashMap::new()),
            lattice: OnceLock::new(),
        }
    }
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground().labels() == other.ground().labels() && self.pres == other.pres
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("ground", &self.ground().labels())
            .field("rank", &self.rank)
            .field("cyclic_flats", &self.pres)
            .finish()
    }
}

/// Materialize the cyclic flats (with ranks) of the matroid defined by
/// `rank` over `ground`.
pub fn presentation_from_rank_fn<F>(ground: Arc<GroundSet>, rank: &mut F) -> CyclicFlatPresentation
where
    F: FnMut(u64) -> u32,
{
    let flats = enumerate_flats(ground.size(), ground.full_bits(), rank);
    let entries: Vec<(u64, u32)> = flats
        .into_iter()
        .filter(|&(bits, _)| is_cyclic_under(bits, rank))
        .collect();
    CyclicFlatPresentation::from_raw(ground, entries)
}

/// Iterator over all subsets of `{0..n-1}` of size `1..=max_size`, in
/// size-major order. Used for circuit enumeration.
struct CombinationIter {
    n: usize,
    max_size: usize,
    k: usize,
    current: Vec<usize>,
    started: bool,
}

impl CombinationIter {
    fn new(n: usize, max_size: usize) -> Self {
        CombinationIter { n, max_size, k: 1, current: Vec::new(), started: false }
    }

    fn next(&mut self) -> Option<u64> {
        loop {
            if self.k > self.max_size || self.k > self.n {
                return None;
            }
            if !self.started {
                self.current = (0..self.k).collect();
                self.started = true;
                return Some(bits_of(&self.current));
            }
            // advance the k-combination in lexicographic order
            let k = self.k;
            let mut i = k;
            loop {
                if i == 0 {
                    self.k += 1;
                    self.started = false;
                    break;
                }
                i -= 1;
                if self.current[i] < self.n - (k - i) {
                    self.current[i] += 1;
                    for j in i + 1..k {
                        self.current[j] = self.current[j - 1] + 1;
                    }
                    return Some(bits_of(&self.current));
                }
            }
        }
    }
}

fn bits_of(indices: &[usize]) -> u64 {
    indices.iter().fold(0u64, |acc, &i| acc | (1 << i))
}
