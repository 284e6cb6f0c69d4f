//! Shared test oracles, deliberately independent of the library's
//! implementation paths:
//!
//! * rank via the independence characterization `X independent ⇔
//!   |X ∩ Z| ≤ r(Z) for every presented cyclic flat Z` (the library
//!   computes ranks by the min-formula instead);
//! * matroids enumerated from scratch as basis families with the
//!   exchange check;
//! * modular cuts enumerated as raw up-sets filtered by definition;
//! * rank-axiom checking of arbitrary oracles by exhaustive subsets.

#![allow(dead_code)]

use std::sync::Arc;

use matroid_core::kernel::{CyclicFlatPresentation, ElementSet, GroundSet, Matroid};
use matroid_core::modcuts::{is_modular_cut, ModularCut};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn ground(n: usize) -> Arc<GroundSet> {
    GroundSet::numbered(n).unwrap()
}

pub fn set(m: &Matroid, labels: &[&str]) -> ElementSet {
    ElementSet::from_labels(m.ground(), labels.iter().copied()).unwrap()
}

pub fn bits_of(labels_len: usize) -> u64 {
    if labels_len == 0 {
        0
    } else {
        u64::MAX >> (64 - labels_len)
    }
}

/// Independence test straight from the presentation: `X` is independent
/// exactly when `|X ∩ Z| ≤ r(Z)` for every presented cyclic flat.
pub fn oracle_independent(entries: &[(u64, u32)], x: u64) -> bool {
    entries.iter().all(|&(z, rz)| (x & z).count_ones() <= rz)
}

/// Rank as the size of the largest independent subset, by exhaustive
/// subset search. Exponential in `|x|`; test matroids are tiny.
pub fn oracle_rank(entries: &[(u64, u32)], x: u64) -> u32 {
    let members: Vec<u64> = (0..64).filter(|i| x & (1 << i) != 0).map(|i| 1u64 << i).collect();
    let mut best = 0;
    for pick in 0u64..(1 << members.len()) {
        let subset = members
            .iter()
            .enumerate()
            .filter(|(k, _)| pick & (1 << k) != 0)
            .fold(0u64, |acc, (_, &b)| acc | b);
        if subset.count_ones() > best && oracle_independent(entries, subset) {
            best = subset.count_ones();
        }
    }
    best
}

pub fn presentation_entries(p: &CyclicFlatPresentation) -> Vec<(u64, u32)> {
    p.iter().map(|(s, r)| (s.bits(), r)).collect()
}

/// Closure by brute force over all supersets: the smallest superset
/// whose rank equals the rank of `x` and which is rank-maximal in the
/// one-element sense.
pub fn oracle_closure(entries: &[(u64, u32)], n: usize, x: u64) -> u64 {
    let r = oracle_rank(entries, x);
    let mut cl = x;
    for i in 0..n {
        let e = 1u64 << i;
        if cl & e == 0 && oracle_rank(entries, x | e) == r {
            cl |= e;
        }
    }
    cl
}

/// All (flat, rank) pairs of a rank table over `n` elements, by the
/// closure fixed-point definition.
pub fn flats_of_table(n: usize, rank: &[u32]) -> Vec<(u64, u32)> {
    let full = bits_of(n);
    let mut out = Vec::new();
    'next: for x in 0u64..=full {
        for i in 0..n {
            let e = 1u64 << i;
            if x & e == 0 && rank[(x | e) as usize] == rank[x as usize] {
                continue 'next;
            }
        }
        out.push((x, rank[x as usize]));
    }
    out
}

/// Cyclic sets of a rank table: removing any single element keeps rank.
pub fn is_cyclic_in_table(rank: &[u32], x: u64) -> bool {
    (0..64)
        .filter(|i| x & (1 << i) != 0)
        .all(|i| rank[(x & !(1 << i)) as usize] == rank[x as usize])
}

pub fn cyclic_flats_of_table(n: usize, rank: &[u32]) -> Vec<(u64, u32)> {
    flats_of_table(n, rank)
        .into_iter()
        .filter(|&(x, _)| is_cyclic_in_table(rank, x))
        .collect()
}

/// Exhaustive rank-axiom check of an arbitrary rank table: zero on the
/// empty set, unit increase, monotonicity, and submodularity over all
/// subset pairs.
pub fn satisfies_rank_axioms(n: usize, rank: &[u32]) -> bool {
    let full = bits_of(n);
    if rank[0] != 0 {
        return false;
    }
    for x in 0u64..=full {
        for i in 0..n {
            let e = 1u64 << i;
            if x & e == 0 {
                let up = rank[(x | e) as usize];
                if up < rank[x as usize] || up > rank[x as usize] + 1 {
                    return false;
                }
            }
        }
    }
    for x in 0u64..=full {
        for y in x..=full {
            if rank[x as usize] + rank[y as usize]
                < rank[(x | y) as usize] + rank[(x & y) as usize]
            {
                return false;
            }
        }
    }
    true
}

/// Rank table of the matroid whose bases are `bases` (all of size `k`):
/// `r(X) = max |X ∩ B|`.
pub fn rank_table_from_bases(n: usize, bases: &[u64]) -> Vec<u32> {
    let full = bits_of(n);
    (0u64..=full)
        .map(|x| bases.iter().map(|&b| (x & b).count_ones()).max().unwrap_or(0))
        .collect()
}

/// Basis-exchange check: for all B1, B2 and x ∈ B1 - B2 there is
/// y ∈ B2 - B1 with B1 - x + y a basis.
pub fn is_basis_family(bases: &[u64]) -> bool {
    if bases.is_empty() {
        return false;
    }
    for &b1 in bases {
        for &b2 in bases {
            let mut moving = b1 & !b2;
            while moving != 0 {
                let x = moving & moving.wrapping_neg();
                moving ^= x;
                let mut candidates = b2 & !b1;
                let mut found = false;
                while candidates != 0 {
                    let y = candidates & candidates.wrapping_neg();
                    candidates ^= y;
                    if bases.contains(&((b1 & !x) | y)) {
                        found = true;
                        break;
                    }
                }
                if !found {
                    return false;
                }
            }
        }
    }
    true
}

fn k_subsets(n: usize, k: usize) -> Vec<u64> {
    let full = bits_of(n);
    (0u64..=full).filter(|x| x.count_ones() as usize == k).collect()
}

/// Every labeled matroid on `n` elements, as rank tables, enumerated
/// from scratch by filtering all base families with the exchange
/// property. Feasible for `n <= 5`.
pub fn all_labeled_matroids(n: usize) -> Vec<Vec<u32>> {
    assert!(n <= 5, "base-family enumeration explodes past 5 elements");
    let mut tables = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for k in 0..=n {
        let universe = k_subsets(n, k);
        for pick in 1u64..(1 << universe.len()) {
            let family: Vec<u64> = universe
                .iter()
                .enumerate()
                .filter(|(i, _)| pick & (1 << i) != 0)
                .map(|(_, &b)| b)
                .collect();
            if is_basis_family(&family) {
                let table = rank_table_from_bases(n, &family);
                if seen.insert(table.clone()) {
                    tables.push(table);
                }
            }
        }
    }
    tables
}

/// The presentation of a rank table, using the oracle definitions only.
pub fn presentation_of_table(n: usize, rank: &[u32]) -> CyclicFlatPresentation {
    let g = ground(n);
    let entries: Vec<(ElementSet, u32)> = cyclic_flats_of_table(n, rank)
        .into_iter()
        .map(|(bits, r)| (ElementSet::from_bits(&g, bits).unwrap(), r))
        .collect();
    CyclicFlatPresentation::new(g, entries).unwrap()
}

/// All modular cuts by brute force: enumerate every up-closed family of
/// flats recursively and keep those the library's definitional check
/// accepts. Only for matroids with few flats.
pub fn naive_modular_cuts(m: &Matroid) -> Vec<Vec<ElementSet>> {
    let flats = m.all_flats();
    assert!(flats.len() <= 24, "naive up-set enumeration needs a small flat lattice");
    // order flats by descending rank so supersets come first
    let mut order: Vec<usize> = (0..flats.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(m.rank_of(&flats[i]).unwrap()));

    let mut cuts = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    enumerate_upsets(m, &flats, &order, 0, &mut chosen, &mut cuts);
    cuts.sort_by_key(|cut| cut.iter().map(ElementSet::bits).collect::<Vec<_>>());
    cuts
}

fn enumerate_upsets(
    m: &Matroid,
    flats: &[ElementSet],
    order: &[usize],
    pos: usize,
    chosen: &mut Vec<usize>,
    cuts: &mut Vec<Vec<ElementSet>>,
) {
    if pos == order.len() {
        let mut family: Vec<ElementSet> = chosen.iter().map(|&i| flats[i].clone()).collect();
        family.sort_by_key(ElementSet::bits);
        if is_modular_cut(m, &family).unwrap() {
            cuts.push(family);
        }
        return;
    }
    let i = order[pos];
    // exclude
    enumerate_upsets(m, flats, order, pos + 1, chosen, cuts);
    // include only when every superset flat is already in
    let ok = chosen
        .iter()
        .map(|&j| &flats[j])
        .filter(|g| flats[i].is_subset_of(g))
        .count()
        == flats.iter().filter(|g| flats[i].is_subset_of(g) && flats[i] != **g).count();
    if ok {
        chosen.push(i);
        enumerate_upsets(m, flats, order, pos + 1, chosen, cuts);
        chosen.pop();
    }
}

pub fn cut_member_bits(cut: &ModularCut) -> Vec<u64> {
    cut.members().iter().map(ElementSet::bits).collect()
}

/// Independent amalgam decision: search directly for a rank table on
/// the union ground set satisfying the matroid axioms and agreeing with
/// both restrictions. Monotonicity and unit increase are enforced by
/// value bounds; submodularity by the local triple condition
/// `r(X) + r(X-e-f) <= r(X-e) + r(X-f)`, which together with the bounds
/// implies full submodularity.
pub fn exists_amalgam_bruteforce(n1: &Matroid, n2: &Matroid) -> bool {
    let mut labels: Vec<String> = n1.ground().labels().to_vec();
    for l in n2.ground().labels() {
        if !labels.contains(l) {
            labels.push(l.clone());
        }
    }
    let n = labels.len();
    assert!(n <= 16, "brute-force table search wants a small union");
    let mut fixed: Vec<Option<u32>> = vec![None; 1 << n];
    for m in [n1, n2] {
        let map: Vec<usize> = m
            .ground()
            .labels()
            .iter()
            .map(|l| labels.iter().position(|u| u == l).unwrap())
            .collect();
        for bits in 0u64..(1 << m.size()) {
            let mut union_bits = 0u64;
            for (i, &u) in map.iter().enumerate() {
                if bits & (1 << i) != 0 {
                    union_bits |= 1 << u;
                }
            }
            let r = m.rank_of(&ElementSet::from_bits(m.ground(), bits).unwrap()).unwrap();
            // overlapping assignments agree because the restrictions do
            fixed[union_bits as usize] = Some(r);
        }
    }
    let mut order: Vec<u64> = (0..(1u64 << n)).collect();
    order.sort_unstable_by_key(|&x| (x.count_ones(), x));
    let mut table: Vec<Option<u32>> = vec![None; 1 << n];
    search_tables(&order, 0, &fixed, &mut table, n)
}

fn search_tables(
    order: &[u64],
    pos: usize,
    fixed: &[Option<u32>],
    table: &mut Vec<Option<u32>>,
    n: usize,
) -> bool {
    let Some(&x) = order.get(pos) else { return true };
    let (mut lo, mut hi) = (0u32, if x == 0 { 0 } else { n as u32 });
    let mut members = Vec::new();
    for e in 0..n {
        let bit = 1u64 << e;
        if x & bit != 0 {
            members.push(e);
            let below = table[(x & !bit) as usize].unwrap();
            lo = lo.max(below);
            hi = hi.min(below + 1);
        }
    }
    if let Some(v) = fixed[x as usize] {
        if v < lo || v > hi {
            return false;
        }
        lo = v;
        hi = v;
    }
    'candidate: for v in lo..=hi {
        for (a, &e) in members.iter().enumerate() {
            for &f in &members[a + 1..] {
                let re = table[(x & !(1 << e)) as usize].unwrap();
                let rf = table[(x & !(1 << f)) as usize].unwrap();
                let ref_ = table[(x & !(1 << e) & !(1 << f)) as usize].unwrap();
                if v + ref_ > re + rf {
                    continue 'candidate;
                }
            }
        }
        table[x as usize] = Some(v);
        if search_tables(order, pos + 1, fixed, table, n) {
            return true;
        }
        table[x as usize] = None;
    }
    false
}

/// Small matroids (at most 7 elements) whose flat lattices are tiny
/// enough for the naive up-set oracle: uniforms of assorted ranks plus
/// a loop extension and a parallel extension.
pub fn small_test_matroids() -> Vec<Matroid> {
    use matroid_core::constructions::uniform;
    use matroid_core::modcuts::extend;

    let loopy = {
        let m = uniform(2, 3).unwrap();
        let all = m.all_flats();
        let cut = ModularCut::new(&m, &all).unwrap();
        extend(&m, &cut, "z").unwrap()
    };
    let parallel = {
        let m = uniform(2, 3).unwrap();
        let point = ElementSet::from_labels(m.ground(), ["1"]).unwrap();
        let cut = ModularCut::new(
            &m,
            &m.all_flats().into_iter().filter(|f| point.is_subset_of(f)).collect::<Vec<_>>(),
        )
        .unwrap();
        extend(&m, &cut, "z").unwrap()
    };
    vec![
        uniform(0, 2).unwrap(),
        uniform(1, 3).unwrap(),
        uniform(2, 3).unwrap(),
        uniform(2, 4).unwrap(),
        uniform(3, 4).unwrap(),
        uniform(2, 5).unwrap(),
        uniform(3, 5).unwrap(),
        uniform(2, 7).unwrap(),
        loopy,
        parallel,
    ]
}

/// Random valid matroid on at most `max_n` elements: a uniform seed
/// followed by random single-element principal extensions (free points,
/// points on flats, parallel points, loops all arise).
pub fn random_matroid(rng: &mut ChaCha8Rng, max_n: usize) -> Matroid {
    use matroid_core::constructions::uniform;
    use matroid_core::modcuts::principal_extension;

    let n0 = rng.gen_range(1..=3usize);
    let r0 = rng.gen_range(0..=n0 as u32);
    let mut m = uniform(r0, n0).unwrap();
    let max_n = max_n.min(7);
    let target = rng.gen_range(n0..=max_n);
    let mut next_label = 100;
    while m.size() < target {
        let flats = m.all_flats();
        let f = &flats[rng.gen_range(0..flats.len())];
        m = principal_extension(&m, f, &next_label.to_string()).unwrap();
        next_label += 1;
    }
    m
}
