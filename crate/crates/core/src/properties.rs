//! The bundle condition, the intersection property, and the
//! two-disjoint-lines filter construction that connects them in rank 4.
//!
//! "Line" always means a rank-2 flat (two-element independent flats
//! included); two lines are coplanar when their union has rank at most
//! 3, and no three of four lines are coplanar when every triple has
//! union of full rank 4.

use crate::error::{Error, Result};
use crate::kernel::{ElementSet, Matroid};
use crate::modcuts::{forced_closure, is_modular_cut, is_modular_pair, ModularCut};

/// Four lines in a rank-4 matroid with no three coplanar, of which
/// exactly five of the six pairs are coplanar: a bundle-condition
/// counterexample.
#[derive(Clone, Debug)]
pub struct LineQuadruple {
    pub lines: [ElementSet; 4],
    /// Index pairs (into `lines`) that are coplanar; always five.
    pub coplanar_pairs: Vec<(usize, usize)>,
    /// The one pair that is not.
    pub noncoplanar_pair: (usize, usize),
}

#[derive(Clone, Debug)]
pub enum BundleCheck {
    Holds,
    Counterexample(LineQuadruple),
}

impl BundleCheck {
    pub fn holds(&self) -> bool {
        matches!(self, BundleCheck::Holds)
    }
}

/// Search all quadruples of lines with no three coplanar for one with
/// exactly five coplanar pairs. Returns the first counterexample in
/// canonical order, or `Holds`.
pub fn bundle_condition_holds(m: &Matroid) -> Result<BundleCheck> {
    if m.rank() != 4 {
        return Err(Error::Precondition(format!(
            "bundle condition is a rank-4 notion; matroid has rank {}",
            m.rank()
        )));
    }
    let lines = m.lines();
    let k = lines.len();
    let coplanar = |i: usize, j: usize| m.rank_bits(lines[i].bits() | lines[j].bits()) <= 3;
    let triple_rank =
        |i: usize, j: usize, l: usize| m.rank_bits(lines[i].bits() | lines[j].bits() | lines[l].bits());

    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                if triple_rank(a, b, c) < 4 {
                    continue;
                }
                for d in c + 1..k {
                    if triple_rank(a, b, d) < 4 || triple_rank(a, c, d) < 4 || triple_rank(b, c, d) < 4
                    {
                        continue;
                    }
                    let idx = [a, b, c, d];
                    let mut coplanar_pairs = Vec::with_capacity(6);
                    let mut missing = Vec::with_capacity(1);
                    for s in 0..4 {
                        for t in s + 1..4 {
                            if coplanar(idx[s], idx[t]) {
                                coplanar_pairs.push((s, t));
                            } else {
                                missing.push((s, t));
                            }
                        }
                    }
                    if coplanar_pairs.len() == 5 {
                        return Ok(BundleCheck::Counterexample(LineQuadruple {
                            lines: [
                                lines[a].clone(),
                                lines[b].clone(),
                                lines[c].clone(),
                                lines[d].clone(),
                            ],
                            coplanar_pairs,
                            noncoplanar_pair: missing[0],
                        }));
                    }
                }
            }
        }
    }
    Ok(BundleCheck::Holds)
}

/// All unordered non-modular pairs of flats, in canonical order.
/// Comparable pairs and pairs involving the top flat are modular and
/// are skipped outright.
pub fn non_modular_flat_pairs(m: &Matroid) -> Vec<(ElementSet, ElementSet)> {
    let lat = m.lattice();
    let full = m.ground().full_bits();
    let mut rank = |b| m.rank_bits(b);
    let mut out = Vec::new();
    for i in 0..lat.len() as u32 {
        if lat.bits(i) == full {
            continue;
        }
        for j in i + 1..lat.len() as u32 {
            let (bi, bj) = (lat.bits(i), lat.bits(j));
            if bj == full || bi & !bj == 0 || bj & !bi == 0 {
                continue;
            }
            if !lat.is_modular_pair(i, j, &mut rank) {
                out.push((
                    ElementSet::from_bits_unchecked(m.ground(), bi),
                    ElementSet::from_bits_unchecked(m.ground(), bj),
                ));
            }
        }
    }
    out
}

/// For a non-modular pair of flats `(x, y)`, the minimal modular cut
/// containing both decides everything: if it avoids `x ∩ y` it is a
/// witness for the intersection property on this pair, and if it
/// contains `x ∩ y` then so does every modular cut containing `x` and
/// `y`, so no witness exists.
pub fn intersection_property_witness(
    m: &Matroid,
    x: &ElementSet,
    y: &ElementSet,
) -> Result<Option<ModularCut>> {
    if is_modular_pair(m, x, y)? {
        return Err(Error::Precondition(format!("({x}, {y}) is a modular pair")));
    }
    let cut = forced_closure(m, &[x.clone(), y.clone()])?;
    let meet = x.intersection(y);
    if cut.contains(&meet) {
        return Ok(None);
    }
    // soundness of every returned witness
    assert!(cut.contains(x) && cut.contains(y));
    assert!(!cut.contains(&meet));
    assert!(is_modular_cut(m, &cut.members())?);
    Ok(Some(cut))
}

#[derive(Clone, Debug)]
pub struct IntersectionPropertyReport {
    pub holds: bool,
    pub pairs_checked: usize,
    /// Non-modular pairs with no separating modular cut.
    pub failing: Vec<(ElementSet, ElementSet)>,
}

/// Check the intersection property: every non-modular pair of flats
/// admits a modular cut containing both but not their intersection.
pub fn intersection_property_holds(m: &Matroid) -> IntersectionPropertyReport {
    let pairs = non_modular_flat_pairs(m);
    let mut failing = Vec::new();
    for (x, y) in &pairs {
        let witness = intersection_property_witness(m, x, y)
            .expect("pairs come from non_modular_flat_pairs");
        if witness.is_none() {
            failing.push((x.clone(), y.clone()));
        }
    }
    IntersectionPropertyReport { holds: failing.is_empty(), pairs_checked: pairs.len(), failing }
}

/// The line family of the two-disjoint-lines construction.
#[derive(Clone, Debug)]
pub struct LSet {
    /// The plane spanned by the two lines.
    pub p_plane: ElementSet,
    pub l1: ElementSet,
    pub l2: ElementSet,
    /// Lines not inside the plane, coplanar with both `l1` and `l2`.
    pub lines_outside: Vec<ElementSet>,
    /// Lines inside the plane coplanar with at least one outside line.
    pub lines_inside: Vec<ElementSet>,
    /// The whole family, deduplicated, canonical order.
    pub all: Vec<ElementSet>,
}

/// Verification outcome for the construction; every box must be true
/// for the generated filter to witness the intersection property on
/// `(l1, l2)`.
#[derive(Clone, Debug)]
pub struct LConstructionReport {
    pub lset: LSet,
    /// (a) all outside lines pairwise coplanar
    pub outside_pairwise_coplanar: bool,
    /// (b) inside lines coplanar with every outside line
    pub inside_coplanar_with_outside: bool,
    /// (c) any line in two distinct planes with two family members is a member
    pub closed_under_two_planes: bool,
    pub pairwise_disjoint: bool,
    pub filter_is_modular_cut: bool,
    /// The generated filter avoids `cl(∅)`.
    pub excludes_bottom: bool,
    /// Flats containing at least one family member.
    pub filter: Vec<ElementSet>,
    /// The filter as a validated cut, when it is one.
    pub cut: Option<ModularCut>,
}

impl LConstructionReport {
    pub fn all_ok(&self) -> bool {
        self.outside_pairwise_coplanar
            && self.inside_coplanar_with_outside
            && self.closed_under_two_planes
            && self.pairwise_disjoint
            && self.filter_is_modular_cut
            && self.excludes_bottom
    }
}

/// Run the construction for disjoint coplanar lines `l1`, `l2` in a
/// rank-4 matroid satisfying the bundle condition, and verify all of
/// its claimed properties on this instance.
pub fn l_construction(m: &Matroid, l1: &ElementSet, l2: &ElementSet) -> Result<LConstructionReport> {
    if m.rank() != 4 {
        return Err(Error::Precondition(format!("need rank 4, have {}", m.rank())));
    }
    if !bundle_condition_holds(m)?.holds() {
        return Err(Error::Precondition("matroid fails the bundle condition".into()));
    }
    for l in [l1, l2] {
        if !m.is_flat(l)? || m.rank_of(l)? != 2 {
            return Err(Error::Precondition(format!("{l} is not a line")));
        }
    }
    if !l1.is_disjoint_from(l2) {
        return Err(Error::Precondition(format!("lines {l1} and {l2} are not disjoint")));
    }
    if m.rank_bits(l1.bits() | l2.bits()) != 3 {
        return Err(Error::Precondition(format!("lines {l1} and {l2} are not coplanar")));
    }

    let p_plane = m.closure(&l1.union(l2))?;
    let lines = m.lines();
    let coplanar = |a: &ElementSet, b: &ElementSet| m.rank_bits(a.bits() | b.bits()) <= 3;

    let lines_outside: Vec<ElementSet> = lines
        .iter()
        .filter(|l| !l.is_subset_of(&p_plane) && coplanar(l, l1) && coplanar(l, l2))
        .cloned()
        .collect();
    let lines_inside: Vec<ElementSet> = lines
        .iter()
        .filter(|l| l.is_subset_of(&p_plane) && lines_outside.iter().any(|o| coplanar(l, o)))
        .cloned()
        .collect();

    let mut all_bits: Vec<u64> = [l1.bits(), l2.bits()]
        .into_iter()
        .chain(lines_outside.iter().map(ElementSet::bits))
        .chain(lines_inside.iter().map(ElementSet::bits))
        .collect();
    all_bits.sort_unstable();
    all_bits.dedup();
    let all: Vec<ElementSet> = all_bits
        .iter()
        .map(|&b| ElementSet::from_bits_unchecked(m.ground(), b))
        .collect();

    let outside_pairwise_coplanar = lines_outside
        .iter()
        .enumerate()
        .all(|(i, a)| lines_outside[i + 1..].iter().all(|b| coplanar(a, b)));
    let inside_coplanar_with_outside = lines_inside
        .iter()
        .all(|a| lines_outside.iter().all(|b| coplanar(a, b)));

    // (c): a line lying in two distinct planes through members of the
    // family must itself be a member.
    let mut closed_under_two_planes = true;
    'outer: for l in &lines {
        if all_bits.binary_search(&l.bits()).is_ok() {
            continue;
        }
        let mut planes_seen: Vec<u64> = Vec::new();
        for g in &all {
            if coplanar(l, g) {
                let plane = m.closure_bits(l.bits() | g.bits());
                if !planes_seen.contains(&plane) {
                    planes_seen.push(plane);
                    if planes_seen.len() >= 2 {
                        closed_under_two_planes = false;
                        break 'outer;
                    }
                }
            }
        }
    }

    let pairwise_disjoint = all
        .iter()
        .enumerate()
        .all(|(i, a)| all[i + 1..].iter().all(|b| a.is_disjoint_from(b)));

    let filter: Vec<ElementSet> = m
        .all_flats()
        .into_iter()
        .filter(|f| all.iter().any(|l| l.is_subset_of(f)))
        .collect();
    let filter_is_modular_cut = is_modular_cut(m, &filter)?;
    let excludes_bottom = !filter.iter().any(|f| f == &m.loops());
    let cut = if filter_is_modular_cut {
        Some(ModularCut::new(m, &filter)?)
    } else {
        None
    };

    Ok(LConstructionReport {
        lset: LSet {
            p_plane,
            l1: l1.clone(),
            l2: l2.clone(),
            lines_outside,
            lines_inside,
            all,
        },
        outside_pairwise_coplanar,
        inside_coplanar_with_outside,
        closed_under_two_planes,
        pairwise_disjoint,
        filter_is_modular_cut,
        excludes_bottom,
        filter,
        cut,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{uniform, vamos};

    #[test]
    fn vamos_fails_the_bundle_condition() {
        let v = vamos();
        let BundleCheck::Counterexample(q) = bundle_condition_holds(&v).unwrap() else {
            panic!("vamos should fail the bundle condition");
        };
        let labels: Vec<Vec<String>> = q.lines.iter().map(ElementSet::label_vec).collect();
        assert_eq!(labels, [["a", "a'"], ["b", "b'"], ["c", "c'"], ["d", "d'"]]);
        assert_eq!(q.coplanar_pairs.len(), 5);
        assert_eq!(q.noncoplanar_pair, (0, 3));
    }

    #[test]
    fn u48_satisfies_the_bundle_condition_vacuously() {
        assert!(bundle_condition_holds(&uniform(4, 8).unwrap()).unwrap().holds());
    }

    #[test]
    fn bundle_needs_rank_four() {
        assert!(bundle_condition_holds(&uniform(3, 4).unwrap()).is_err());
    }

    #[test]
    fn u34_non_modular_pairs_are_the_disjoint_line_pairs() {
        let m = uniform(3, 4).unwrap();
        let pairs = non_modular_flat_pairs(&m);
        // {1,2}/{3,4}, {1,3}/{2,4}, {1,4}/{2,3}
        assert_eq!(pairs.len(), 3);
        let set = |labels: &[&str]| {
            ElementSet::from_labels(m.ground(), labels.iter().copied()).unwrap()
        };
        assert!(pairs.contains(&(set(&["1", "2"]), set(&["3", "4"]))));
    }

    #[test]
    fn u34_witness_is_the_three_flat_cut() {
        let m = uniform(3, 4).unwrap();
        let set = |labels: &[&str]| {
            ElementSet::from_labels(m.ground(), labels.iter().copied()).unwrap()
        };
        let cut = intersection_property_witness(&m, &set(&["1", "2"]), &set(&["3", "4"]))
            .unwrap()
            .expect("witness exists");
        assert_eq!(cut.members(), vec![set(&["1", "2"]), set(&["3", "4"]), set(&["1", "2", "3", "4"])]);
        // modular input pair is rejected
        assert!(intersection_property_witness(&m, &set(&["1"]), &set(&["2"])).is_err());
    }

    #[test]
    fn vamos_non_modular_line_pairs_are_the_coplanar_ones() {
        // Disjoint lines are non-modular exactly when coplanar:
        // ({a,a'},{b,b'}) spans only the plane (2+2 > 3+0), while
        // ({a,a'},{d,d'}) spans everything (2+2 = 4+0) and is modular.
        let v = vamos();
        let set = |labels: &[&str]| {
            ElementSet::from_labels(v.ground(), labels.iter().copied()).unwrap()
        };
        let pairs = non_modular_flat_pairs(&v);
        assert!(pairs.contains(&(set(&["a", "a'"]), set(&["b", "b'"]))));
        assert!(!pairs.contains(&(set(&["a", "a'"]), set(&["d", "d'"]))));
        assert!(is_modular_pair(&v, &set(&["a", "a'"]), &set(&["d", "d'"])).unwrap());
    }
}
