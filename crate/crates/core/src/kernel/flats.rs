use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

/// The full flat lattice of a matroid, indexed for the modular-pair and
/// meet lookups that modular-cut machinery leans on.
///
/// Flats are closed under intersection, so the meet of two flats is
/// their set intersection; joins go through the closure operator.
pub(crate) struct FlatLattice {
    /// Flat bitmasks in ascending bitmask order.
    flats: Vec<u64>,
    ranks: Vec<u32>,
    index: HashMap<u64, u32>,
    by_rank: Vec<Vec<u32>>,
    tables: OnceLock<PairTables>,
    union_ranks: OnceLock<Vec<u32>>,
}

pub(crate) struct PairTables {
    /// Strict supersets of each flat (indices).
    pub supersets: Vec<Vec<u32>>,
    /// For each flat `f`, the incomparable modular pairs `(i, j)` whose
    /// meet is exactly `f`.
    pub meet_pairs: Vec<Vec<(u32, u32)>>,
}

impl FlatLattice {
    pub fn build<F>(n: usize, full: u64, rank: &mut F) -> Self
    where
        F: FnMut(u64) -> u32,
    {
        let flats = enumerate_flats(n, full, rank);
        let mut lat = FlatLattice {
            flats: Vec::with_capacity(flats.len()),
            ranks: Vec::with_capacity(flats.len()),
            index: HashMap::with_capacity(flats.len()),
            by_rank: Vec::new(),
            tables: OnceLock::new(),
            union_ranks: OnceLock::new(),
        };
        let top_rank = flats.iter().map(|&(_, r)| r).max().unwrap_or(0);
        lat.by_rank = vec![Vec::new(); top_rank as usize + 1];
        for (i, &(bits, r)) in flats.iter().enumerate() {
            lat.flats.push(bits);
            lat.ranks.push(r);
            lat.index.insert(bits, i as u32);
            lat.by_rank[r as usize].push(i as u32);
        }
        lat
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn flats(&self) -> &[u64] {
        &self.flats
    }

    pub fn bits(&self, i: u32) -> u64 {
        self.flats[i as usize]
    }

    pub fn rank(&self, i: u32) -> u32 {
        self.ranks[i as usize]
    }

    pub fn index_of(&self, bits: u64) -> Option<u32> {
        self.index.get(&bits).copied()
    }

    pub fn flats_of_rank(&self, k: u32) -> impl Iterator<Item = u64> + '_ {
        self.by_rank
            .get(k as usize)
            .into_iter()
            .flatten()
            .map(move |&i| self.flats[i as usize])
    }

    /// Meet of two flats: their intersection (always a flat).
    pub fn meet(&self, i: u32, j: u32) -> u32 {
        self.index[&(self.flats[i as usize] & self.flats[j as usize])]
    }

    /// Rank of the union of flats `i` and `j`, via the cached table.
    pub fn union_rank<F>(&self, i: u32, j: u32, rank: &mut F) -> u32
    where
        F: FnMut(u64) -> u32,
    {
        let table = self.union_ranks.get_or_init(|| {
            let f = self.flats.len();
            let mut t = vec![0u32; f * f];
            for a in 0..f {
                for b in a..f {
                    let r = rank(self.flats[a] | self.flats[b]);
                    t[a * f + b] = r;
                    t[b * f + a] = r;
                }
            }
            t
        });
        table[i as usize * self.flats.len() + j as usize]
    }

    /// `(x, y)` is a modular pair when `r(x) + r(y) = r(x ∪ y) + r(x ∩ y)`.
    pub fn is_modular_pair<F>(&self, i: u32, j: u32, rank: &mut F) -> bool
    where
        F: FnMut(u64) -> u32,
    {
        self.ranks[i as usize] + self.ranks[j as usize]
            == self.union_rank(i, j, rank) + self.ranks[self.meet(i, j) as usize]
    }

    pub fn pair_tables<F>(&self, rank: &mut F) -> &PairTables
    where
        F: FnMut(u64) -> u32,
    {
        if self.tables.get().is_none() {
            let f = self.flats.len();
            let mut supersets: Vec<Vec<u32>> = vec![Vec::new(); f];
            for i in 0..f {
                for j in 0..f {
                    if i != j && self.flats[i] & !self.flats[j] == 0 {
                        supersets[i].push(j as u32);
                    }
                }
            }
            let mut meet_pairs: Vec<Vec<(u32, u32)>> = vec![Vec::new(); f];
            for i in 0..f {
                for j in i + 1..f {
                    let (bi, bj) = (self.flats[i], self.flats[j]);
                    if bi & !bj == 0 || bj & !bi == 0 {
                        continue; // comparable: meet is one of the pair
                    }
                    if self.is_modular_pair(i as u32, j as u32, rank) {
                        let m = self.meet(i as u32, j as u32);
                        meet_pairs[m as usize].push((i as u32, j as u32));
                    }
                }
            }
            let _ = self.tables.set(PairTables { supersets, meet_pairs });
        }
        self.tables.get().unwrap()
    }
}

/// Enumerate all flats (with ranks) of the matroid defined by `rank`,
/// walking up the lattice one covering step at a time.
pub(crate) fn enumerate_flats<F>(n: usize, full: u64, rank: &mut F) -> Vec<(u64, u32)>
where
    F: FnMut(u64) -> u32,
{
    let closure = |bits: u64, rank: &mut F| -> u64 {
        let r = rank(bits);
        let mut cl = bits;
        for i in 0..n {
            let e = 1u64 << i;
            if cl & e == 0 && rank(bits | e) == r {
                cl |= e;
            }
        }
        cl
    };

    let bottom = closure(0, rank);
    let mut all: Vec<(u64, u32)> = vec![(bottom, rank(bottom))];
    let mut seen: HashSet<u64> = HashSet::from([bottom]);
    let mut level: Vec<u64> = vec![bottom];
    while !level.is_empty() {
        let mut next: Vec<u64> = Vec::new();
        for &f in &level {
            let mut rest = full & !f;
            while rest != 0 {
                let e = rest & rest.wrapping_neg();
                rest ^= e;
                let g = closure(f | e, rank);
                if seen.insert(g) {
                    all.push((g, rank(g)));
                    next.push(g);
                }
            }
        }
        level = next;
    }
    all.sort_unstable_by_key(|&(bits, _)| bits);
    all
}

/// A set is cyclic when no element of it is a coloop of the restriction:
/// removing any single element leaves the rank unchanged.
pub(crate) fn is_cyclic_under<F>(bits: u64, rank: &mut F) -> bool
where
    F: FnMut(u64) -> u32,
{
    let r = rank(bits);
    let mut rest = bits;
    while rest != 0 {
        let e = rest & rest.wrapping_neg();
        rest ^= e;
        if rank(bits & !e) != r {
            return false;
        }
    }
    true
}
