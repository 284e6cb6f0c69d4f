//! Modular pairs, modular cuts, minimal modular cuts (forced closures),
//! and single-element extensions.
//!
//! A modular cut is an up-closed family of flats closed under meets of
//! modular pairs; it is exactly the datum classifying a single-element
//! extension. The extension adds `e` with
//! `e ∈ cl'(X)  ⇔  cl(X) ∈ cut`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::{ElementSet, GroundSet, Matroid};

/// A validated modular cut of a host matroid. Members are stored as an
/// explicit flat set in canonical (bitmask) order.
#[derive(Clone, PartialEq, Eq)]
pub struct ModularCut {
    host: Matroid,
    members: Vec<u64>,
}

impl ModularCut {
    /// Validate `flats` as a modular cut of `m`.
    pub fn new(m: &Matroid, flats: &[ElementSet]) -> Result<Self> {
        if let Some(reason) = modular_cut_failure(m, flats)? {
            return Err(Error::NotAModularCut(reason));
        }
        let mut members: Vec<u64> = flats.iter().map(ElementSet::bits).collect();
        members.sort_unstable();
        members.dedup();
        Ok(ModularCut { host: m.clone(), members })
    }

    pub(crate) fn from_sorted_bits(host: &Matroid, members: Vec<u64>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        ModularCut { host: host.clone(), members }
    }

    pub fn host(&self) -> &Matroid {
        &self.host
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in canonical order.
    pub fn members(&self) -> Vec<ElementSet> {
        self.members
            .iter()
            .map(|&b| ElementSet::from_bits_unchecked(self.host.ground(), b))
            .collect()
    }

    pub fn contains(&self, f: &ElementSet) -> bool {
        f.ground().same_universe(self.host.ground()) && self.contains_bits(f.bits())
    }

    pub(crate) fn contains_bits(&self, bits: u64) -> bool {
        self.members.binary_search(&bits).is_ok()
    }

    pub(crate) fn member_bits(&self) -> &[u64] {
        &self.members
    }
}

impl std::fmt::Debug for ModularCut {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

/// `(x, y)` is a modular pair of flats when
/// `r(x) + r(y) = r(x ∪ y) + r(x ∩ y)`.
pub fn is_modular_pair(m: &Matroid, x: &ElementSet, y: &ElementSet) -> Result<bool> {
    for s in [x, y] {
        if !m.is_flat(s)? {
            return Err(Error::NotAFlat(s.to_string()));
        }
    }
    Ok(m.rank_of(x)? + m.rank_of(y)?
        == m.rank_bits(x.bits() | y.bits()) + m.rank_bits(x.bits() & y.bits()))
}

/// True when every pair of flats is modular.
pub fn is_modular_matroid(m: &Matroid) -> bool {
    let lat = m.lattice();
    let mut rank = |b| m.rank_bits(b);
    for i in 0..lat.len() as u32 {
        for j in i + 1..lat.len() as u32 {
            if !lat.is_modular_pair(i, j, &mut rank) {
                return false;
            }
        }
    }
    true
}

/// Check the modular-cut conditions on an explicit collection of flats.
pub fn is_modular_cut(m: &Matroid, flats: &[ElementSet]) -> Result<bool> {
    Ok(modular_cut_failure(m, flats)?.is_none())
}

/// `None` when `flats` is a modular cut, otherwise the reason it is not.
fn modular_cut_failure(m: &Matroid, flats: &[ElementSet]) -> Result<Option<String>> {
    let lat = m.lattice();
    let mut idx = Vec::with_capacity(flats.len());
    for f in flats {
        if !f.ground().same_universe(m.ground()) {
            return Err(Error::UniverseMismatch);
        }
        match lat.index_of(f.bits()) {
            Some(i) => idx.push(i),
            None => return Err(Error::NotAFlat(f.to_string())),
        }
    }
    let mut chosen = vec![false; lat.len()];
    for &i in &idx {
        chosen[i as usize] = true;
    }
    let mut rank = |b| m.rank_bits(b);
    // filter: up-closed under taking superset flats
    for &i in &idx {
        for g in 0..lat.len() as u32 {
            if !chosen[g as usize] && lat.bits(i) & !lat.bits(g) == 0 && lat.bits(i) != lat.bits(g) {
                return Ok(Some(format!(
                    "not up-closed: contains {} but not its superset flat {}",
                    ElementSet::from_bits_unchecked(m.ground(), lat.bits(i)),
                    ElementSet::from_bits_unchecked(m.ground(), lat.bits(g)),
                )));
            }
        }
    }
    // closed under meets of modular pairs
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            let (i, j) = (idx[a], idx[b]);
            if lat.is_modular_pair(i, j, &mut rank) {
                let meet = lat.meet(i, j);
                if !chosen[meet as usize] {
                    return Ok(Some(format!(
                        "modular pair ({}, {}) has meet {} outside the collection",
                        ElementSet::from_bits_unchecked(m.ground(), lat.bits(i)),
                        ElementSet::from_bits_unchecked(m.ground(), lat.bits(j)),
                        ElementSet::from_bits_unchecked(m.ground(), lat.bits(meet)),
                    )));
                }
            }
        }
    }
    Ok(None)
}

/// The least modular cut containing `seeds`: close the generated filter
/// under meets of modular pairs until a fixpoint. Exists because modular
/// cuts are closed under intersection.
pub fn forced_closure(m: &Matroid, seeds: &[ElementSet]) -> Result<ModularCut> {
    let lat = m.lattice();
    let mut seed_idx = Vec::with_capacity(seeds.len());
    for f in seeds {
        if !f.ground().same_universe(m.ground()) {
            return Err(Error::UniverseMismatch);
        }
        match lat.index_of(f.bits()) {
            Some(i) => seed_idx.push(i),
            None => return Err(Error::NotAFlat(f.to_string())),
        }
    }
    let mut rank = |b| m.rank_bits(b);
    let mut chosen = vec![false; lat.len()];
    let mut queue: Vec<u32> = Vec::new();
    let add_with_filter = |i: u32, chosen: &mut Vec<bool>, queue: &mut Vec<u32>| {
        for g in 0..lat.len() as u32 {
            if !chosen[g as usize] && lat.bits(i) & !lat.bits(g) == 0 {
                chosen[g as usize] = true;
                queue.push(g);
            }
        }
    };
    for &i in &seed_idx {
        add_with_filter(i, &mut chosen, &mut queue);
    }
    while let Some(i) = queue.pop() {
        for j in 0..lat.len() as u32 {
            if !chosen[j as usize] || j == i {
                continue;
            }
            if lat.is_modular_pair(i, j, &mut rank) {
                let meet = lat.meet(i, j);
                if !chosen[meet as usize] {
                    add_with_filter(meet, &mut chosen, &mut queue);
                }
            }
        }
    }
    let mut members: Vec<u64> = (0..lat.len())
        .filter(|&i| chosen[i])
        .map(|i| lat.bits(i as u32))
        .collect();
    members.sort_unstable();
    let cut = ModularCut::from_sorted_bits(m, members);
    debug_assert!(is_modular_cut(m, &cut.members()).unwrap());
    Ok(cut)
}

/// Single-element extension of `m` by the modular cut `cut`.
///
/// The result is materialized as a cyclic-flat presentation; restricting
/// it back to the old ground set recovers `m` exactly.
pub fn extend(m: &Matroid, cut: &ModularCut, label: &str) -> Result<Matroid> {
    if cut.host() != m {
        return Err(Error::HostMismatch);
    }
    if m.ground().contains_label(label) {
        return Err(Error::LabelCollision(label.to_string()));
    }
    let n = m.size();
    let mut labels: Vec<String> = m.ground().labels().to_vec();
    labels.push(label.to_string());
    let ground = GroundSet::new(labels)?;
    let e = 1u64 << n;
    Matroid::from_rank_fn(ground, |bits| {
        if bits & e == 0 {
            m.rank_bits(bits)
        } else {
            let x = bits & !e;
            let in_cut = cut.contains_bits(m.closure_bits(x));
            m.rank_bits(x) + u32::from(!in_cut)
        }
    })
}

/// Extension by the principal cut of `f`: all flats containing `f`.
/// Adds a point freely on `f`.
pub fn principal_extension(m: &Matroid, f: &ElementSet, label: &str) -> Result<Matroid> {
    let cut = principal_cut(m, f)?;
    extend(m, &cut, label)
}

/// The filter of all flats containing `f`, which is always a modular cut.
pub fn principal_cut(m: &Matroid, f: &ElementSet) -> Result<ModularCut> {
    if !f.ground().same_universe(m.ground()) {
        return Err(Error::UniverseMismatch);
    }
    if !m.is_flat(f)? {
        return Err(Error::NotAFlat(f.to_string()));
    }
    let lat = m.lattice();
    let members: Vec<u64> = lat
        .flats()
        .iter()
        .copied()
        .filter(|&g| f.bits() & !g == 0)
        .collect();
    Ok(ModularCut::from_sorted_bits(m, members))
}

/// Ensure the flat `f` is cyclic, adding one point freely on it if
/// necessary. Returns the (possibly extended) matroid and the
/// corresponding (possibly enlarged) flat.
pub fn make_cyclic(m: &Matroid, f: &ElementSet) -> Result<(Matroid, ElementSet)> {
    if !m.is_flat(f)? {
        return Err(Error::NotAFlat(f.to_string()));
    }
    if m.is_cyclic(f)? {
        return Ok((m.clone(), f.clone()));
    }
    let label = fresh_labels(m.ground(), "x", 1).pop().unwrap();
    let ext = principal_extension(m, f, &label)?;
    let mut labels = f.label_vec();
    labels.push(label);
    let enlarged = ElementSet::from_labels(ext.ground(), &labels)?;
    debug_assert!(ext.is_cyclic(&enlarged).unwrap() && ext.is_flat(&enlarged).unwrap());
    Ok((ext, enlarged))
}

/// Iterate `r - 2` single-element extensions on the modular cuts
/// generated by two disjoint hyperplanes, producing the extension `M_P`
/// together with the added set `P`: an independent set of size `r - 2`
/// inside `cl(h) ∩ cl(h2)`.
pub fn build_m_p(m: &Matroid, h: &ElementSet, h2: &ElementSet) -> Result<(Matroid, ElementSet)> {
    check_disjoint_hyperplanes(m, h, h2)?;
    let r = m.rank();
    let labels = fresh_labels(m.ground(), "p", (r - 2) as usize);
    let mut current = m.clone();
    // Ground sets only ever grow by appending, so the bitmasks of h and
    // h2 keep meaning the same elements in every extension.
    let (hb, h2b) = (h.bits(), h2.bits());
    for label in &labels {
        let g = current.ground();
        let cl_h = ElementSet::from_bits_unchecked(g, current.closure_bits(hb));
        let cl_h2 = ElementSet::from_bits_unchecked(g, current.closure_bits(h2b));
        let full = ElementSet::full(g);
        let flats = [cl_h, cl_h2, full];
        assert!(
            is_modular_cut(&current, &flats)?,
            "generating set {{cl(h), cl(h2), E}} must stay a modular cut at every step"
        );
        let cut = ModularCut::new(&current, &flats)?;
        current = extend(&current, &cut, label)?;
    }
    let p = ElementSet::from_labels(current.ground(), &labels)?;
    debug_assert_eq!(current.rank_of(&p).unwrap(), r - 2);
    debug_assert!(p.bits() & !current.closure_bits(hb) == 0);
    debug_assert!(p.bits() & !current.closure_bits(h2b) == 0);
    Ok((current, p))
}

pub(crate) fn check_disjoint_hyperplanes(m: &Matroid, h: &ElementSet, h2: &ElementSet) -> Result<()> {
    if m.rank() < 3 {
        return Err(Error::Precondition(format!(
            "matroid rank is {}, need at least 3",
            m.rank()
        )));
    }
    for s in [h, h2] {
        if !m.is_flat(s)? || m.rank_of(s)? != m.rank() - 1 {
            return Err(Error::Precondition(format!("{s} is not a hyperplane")));
        }
    }
    if !h.is_disjoint_from(h2) {
        return Err(Error::Precondition(format!("hyperplanes {h} and {h2} are not disjoint")));
    }
    Ok(())
}

/// Deterministic fresh labels `prefix1, prefix2, ...`, skipping any that
/// collide with existing ground-set labels.
pub(crate) fn fresh_labels(ground: &Arc<GroundSet>, prefix: &str, count: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(count);
    let mut k = 1usize;
    while out.len() < count {
        let candidate = format!("{prefix}{k}");
        if !ground.contains_label(&candidate) {
            out.push(candidate);
        }
        k += 1;
    }
    out
}

/// Enumerate every modular cut of `m`, in canonical order (member lists
/// compared lexicographically). Intended for desk-scale matroids; this
/// is the brute-force oracle behind the amalgam search.
pub fn enumerate_modular_cuts(m: &Matroid) -> Vec<ModularCut> {
    let mut budget = u64::MAX;
    enumerate_modular_cuts_constrained(m, &[], &[], &mut budget)
        .expect("unbounded enumeration cannot exhaust its budget")
}

/// Enumeration restricted to cuts containing every flat of
/// `required_in` and avoiding every flat of `required_out`. Each search
/// node consumes budget; `None` is returned when it runs out.
pub(crate) fn enumerate_modular_cuts_constrained(
    m: &Matroid,
    required_in: &[u64],
    required_out: &[u64],
    budget: &mut u64,
) -> Option<Vec<ModularCut>> {
    let lat = m.lattice();
    let f = lat.len();
    let mut rank = |b| m.rank_bits(b);
    let tables = lat.pair_tables(&mut rank);

    // Every admissible cut contains the whole forced closure of the
    // required members, so seed the search with it; contradictions with
    // required_out surface here instead of at the bottom of the tree.
    let seeds: Vec<ElementSet> = required_in
        .iter()
        .map(|&bits| ElementSet::from_bits_unchecked(m.ground(), bits))
        .collect();
    let seed_cut = forced_closure(m, &seeds).expect("required_in must be flats");
    let mut forced_in = vec![false; f];
    for member in seed_cut.member_bits() {
        forced_in[lat.index_of(*member).unwrap() as usize] = true;
    }
    let mut forced_out = vec![false; f];
    for &bits in required_out {
        let i = lat.index_of(bits).expect("required_out must be flats") as usize;
        if forced_in[i] {
            return Some(Vec::new()); // contradictory requirements: no cuts
        }
        forced_out[i] = true;
    }

    // Pairs whose meet is excluded can never be jointly included.
    let mut conflicts: Vec<Vec<u32>> = vec![Vec::new(); f];
    for mi in 0..f {
        if forced_out[mi] {
            for &(a, b) in &tables.meet_pairs[mi] {
                if forced_in[a as usize] && forced_in[b as usize] {
                    return Some(Vec::new()); // forced members already clash
                }
                conflicts[a as usize].push(b);
                conflicts[b as usize].push(a);
            }
        }
    }

    // Process flats top-down: every strict superset of a flat is decided
    // before the flat itself, so both branch-feasibility checks are
    // exact at decision time.
    let mut order: Vec<u32> = (0..f as u32).collect();
    order.sort_unstable_by_key(|&i| (std::cmp::Reverse(lat.rank(i)), lat.bits(i)));

    struct Dfs<'a> {
        order: &'a [u32],
        supersets: &'a [Vec<u32>],
        meet_pairs: &'a [Vec<(u32, u32)>],
        forced_in: &'a [bool],
        forced_out: &'a [bool],
        conflicts: &'a [Vec<u32>],
        chosen: Vec<bool>,
        cuts: Vec<Vec<u32>>,
        budget: u64,
    }

    impl Dfs<'_> {
        fn run(&mut self, pos: usize) -> bool {
            if self.budget == 0 {
                return false;
            }
            self.budget -= 1;
            if pos == self.order.len() {
                let members: Vec<u32> = (0..self.chosen.len() as u32)
                    .filter(|&i| self.chosen[i as usize])
                    .collect();
                self.cuts.push(members);
                return true;
            }
            let i = self.order[pos] as usize;
            // exclude: no modular pair already chosen may meet at i
            if !self.forced_in[i] {
                let ok = self.meet_pairs[i]
                    .iter()
                    .all(|&(a, b)| !(self.chosen[a as usize] && self.chosen[b as usize]));
                if ok && !self.run(pos + 1) {
                    return false;
                }
            }
            // include: every strict superset must already be in, and no
            // chosen partner may meet i in an excluded flat
            if !self.forced_out[i] {
                let ok = self.supersets[i].iter().all(|&g| self.chosen[g as usize])
                    && self.conflicts[i].iter().all(|&j| !self.chosen[j as usize]);
                if ok {
                    self.chosen[i] = true;
                    if !self.run(pos + 1) {
                        return false;
                    }
                    self.chosen[i] = false;
                }
            }
            true
        }
    }

    let mut dfs = Dfs {
        order: &order,
        supersets: &tables.supersets,
        meet_pairs: &tables.meet_pairs,
        forced_in: &forced_in,
        forced_out: &forced_out,
        conflicts: &conflicts,
        chosen: vec![false; f],
        cuts: Vec::new(),
        budget: *budget,
    };
    let completed = dfs.run(0);
    *budget = dfs.budget;
    if !completed {
        return None;
    }
    let mut cuts: Vec<Vec<u64>> = dfs
        .cuts
        .into_iter()
        .map(|members| {
            let mut bits: Vec<u64> = members.into_iter().map(|i| lat.bits(i)).collect();
            bits.sort_unstable();
            bits
        })
        .collect();
    cuts.sort_unstable();
    Some(cuts.into_iter().map(|bits| ModularCut::from_sorted_bits(m, bits)).collect())
}
