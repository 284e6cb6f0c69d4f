//! Validation of candidate cyclic-flat presentations.
//!
//! A collection of sets with integer ranks presents a matroid exactly
//! when it satisfies:
//!
//! * (Z0) the sets form a lattice under inclusion;
//! * (Z1) the least set has rank 0;
//! * (Z2) `0 < r(Y) - r(X) < |Y - X|` whenever `X ⊊ Y`;
//! * (Z3) for incomparable `X, Y`:
//!   `r(X) + r(Y) ≥ r(X ∨ Y) + r(X ∧ Y) + |(X ∩ Y) - (X ∧ Y)|`.
//!
//! The validator reports every violation, not just the first, in a
//! canonical order, so its output is usable in golden tests.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{CyclicFlatPresentation, ElementSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum AxiomKind {
    Duplicate,
    Z0,
    Z1,
    Z2,
    Z3,
}

/// One failed axiom instance: which axiom, on which set(s), and the
/// instantiated condition that failed.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomViolation {
    pub axiom: AxiomKind,
    #[serde(serialize_with = "serialize_sets")]
    pub sets: Vec<ElementSet>,
    pub detail: String,
}

fn serialize_sets<S: serde::Serializer>(sets: &[ElementSet], s: S) -> std::result::Result<S::Ok, S::Error> {
    let labels: Vec<Vec<String>> = sets.iter().map(ElementSet::label_vec).collect();
    labels.serialize(s)
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?})", self.axiom)?;
        for s in &self.sets {
            write!(f, " {s}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

/// Check a presentation against (Z0)-(Z3). `Ok(())` means valid;
/// otherwise every violation is returned.
pub fn check_z_axioms(p: &CyclicFlatPresentation) -> std::result::Result<(), Vec<AxiomViolation>> {
    let entries: Vec<(ElementSet, u32)> = p.iter().collect();
    check_z_axioms_entries(&entries)
}

/// Same check on raw (set, rank) pairs, which additionally catches
/// duplicate sets (a `CyclicFlatPresentation` cannot hold them).
pub fn check_z_axioms_entries(
    entries: &[(ElementSet, u32)],
) -> std::result::Result<(), Vec<AxiomViolation>> {
    let mut violations = Vec::new();
    let mut unique: Vec<(ElementSet, u32)> = Vec::new();
    for (set, rank) in entries {
        if unique.iter().any(|(s, _)| s == set) {
            violations.push(AxiomViolation {
                axiom: AxiomKind::Duplicate,
                sets: vec![set.clone()],
                detail: "set listed more than once".into(),
            });
        } else {
            unique.push((set.clone(), *rank));
        }
    }
    unique.sort_unstable_by_key(|(s, _)| s.bits());

    if unique.is_empty() {
        violations.push(AxiomViolation {
            axiom: AxiomKind::Z0,
            sets: vec![],
            detail: "empty collection has no least element".into(),
        });
        return Err(violations);
    }

    let rank_of = |bits: u64| unique.iter().find(|(s, _)| s.bits() == bits).map(|&(_, r)| r);

    // (Z0): every pair needs a least upper bound and a greatest lower
    // bound within the collection.
    for i in 0..unique.len() {
        for j in i + 1..unique.len() {
            let (x, y) = (&unique[i].0, &unique[j].0);
            if x.is_subset_of(y) || y.is_subset_of(x) {
                continue;
            }
            if join_bits(&unique, x.bits(), y.bits()).is_none() {
                violations.push(AxiomViolation {
                    axiom: AxiomKind::Z0,
                    sets: vec![x.clone(), y.clone()],
                    detail: "pair has no least upper bound in the collection".into(),
                });
            }
            if meet_bits(&unique, x.bits(), y.bits()).is_none() {
                violations.push(AxiomViolation {
                    axiom: AxiomKind::Z0,
                    sets: vec![x.clone(), y.clone()],
                    detail: "pair has no greatest lower bound in the collection".into(),
                });
            }
        }
    }

    // (Z1): the least member, when there is one, must have rank 0.
    let least = unique
        .iter()
        .find(|(s, _)| unique.iter().all(|(t, _)| s.is_subset_of(t)));
    if let Some((bottom, r0)) = least {
        if *r0 != 0 {
            violations.push(AxiomViolation {
                axiom: AxiomKind::Z1,
                sets: vec![bottom.clone()],
                detail: format!("least element has rank {r0}, expected 0"),
            });
        }
    }

    // (Z2): strict rank increase, strictly slower than cardinality.
    for i in 0..unique.len() {
        for j in 0..unique.len() {
            let ((x, rx), (y, ry)) = (&unique[i], &unique[j]);
            if x == y || !x.is_subset_of(y) {
                continue;
            }
            let diff = i64::from(*ry) - i64::from(*rx);
            let gap = y.difference(x).len() as i64;
            if diff <= 0 || diff >= gap {
                violations.push(AxiomViolation {
                    axiom: AxiomKind::Z2,
                    sets: vec![x.clone(), y.clone()],
                    detail: format!("needs 0 < r(Y)-r(X) < |Y-X|, got r(Y)-r(X) = {diff}, |Y-X| = {gap}"),
                });
            }
        }
    }

    // (Z3): the semimodular inequality on incomparable pairs whose join
    // and meet exist.
    for i in 0..unique.len() {
        for j in i + 1..unique.len() {
            let ((x, rx), (y, ry)) = (&unique[i], &unique[j]);
            if x.is_subset_of(y) || y.is_subset_of(x) {
                continue;
            }
            let (Some(join), Some(meet)) = (
                join_bits(&unique, x.bits(), y.bits()),
                meet_bits(&unique, x.bits(), y.bits()),
            ) else {
                continue; // already a Z0 violation
            };
            let lhs = i64::from(*rx) + i64::from(*ry);
            let cap = (x.bits() & y.bits() & !meet).count_ones() as i64;
            let rhs = i64::from(rank_of(join).unwrap()) + i64::from(rank_of(meet).unwrap()) + cap;
            if lhs < rhs {
                violations.push(AxiomViolation {
                    axiom: AxiomKind::Z3,
                    sets: vec![x.clone(), y.clone()],
                    detail: format!(
                        "needs r(X)+r(Y) >= r(X∨Y)+r(X∧Y)+|(X∩Y)-(X∧Y)|, got {lhs} < {rhs}"
                    ),
                });
            }
        }
    }

    violations.sort_by(|a, b| {
        let key = |v: &AxiomViolation| {
            (
                v.axiom,
                v.sets.first().map_or(0, ElementSet::bits),
                v.sets.get(1).map_or(0, ElementSet::bits),
            )
        };
        key(a).cmp(&key(b))
    });
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

fn join_bits(entries: &[(ElementSet, u32)], x: u64, y: u64) -> Option<u64> {
    let target = x | y;
    let ubs: Vec<u64> = entries
        .iter()
        .map(|(s, _)| s.bits())
        .filter(|&b| target & !b == 0)
        .collect();
    ubs.iter().copied().find(|&b| ubs.iter().all(|&c| b & !c == 0))
}

fn meet_bits(entries: &[(ElementSet, u32)], x: u64, y: u64) -> Option<u64> {
    let target = x & y;
    let lbs: Vec<u64> = entries
        .iter()
        .map(|(s, _)| s.bits())
        .filter(|&b| b & !target == 0)
        .collect();
    lbs.iter().copied().find(|&b| lbs.iter().all(|&c| c & !b == 0))
}

/// Least member of the presentation containing `x ∪ y`.
pub fn lattice_join(
    p: &CyclicFlatPresentation,
    x: &ElementSet,
    y: &ElementSet,
) -> Result<ElementSet> {
    lattice_bound(p, x, y, true)
}

/// Greatest member of the presentation contained in `x ∩ y`.
pub fn lattice_meet(
    p: &CyclicFlatPresentation,
    x: &ElementSet,
    y: &ElementSet,
) -> Result<ElementSet> {
    lattice_bound(p, x, y, false)
}

fn lattice_bound(
    p: &CyclicFlatPresentation,
    x: &ElementSet,
    y: &ElementSet,
    upper: bool,
) -> Result<ElementSet> {
    for s in [x, y] {
        if !p.contains_set(s) {
            return Err(Error::NotACyclicFlat(s.to_string()));
        }
    }
    let entries: Vec<(ElementSet, u32)> = p.iter().collect();
    let bound = if upper {
        join_bits(&entries, x.bits(), y.bits())
    } else {
        meet_bits(&entries, x.bits(), y.bits())
    };
    match bound {
        Some(b) => Ok(ElementSet::from_bits_unchecked(p.ground(), b)),
        None => Err(Error::Precondition(
            "presentation is not a lattice: pair has no bound".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::GroundSet;

    fn pres(labels: &[&str], flats: &[(&[&str], u32)]) -> CyclicFlatPresentation {
        let g = GroundSet::new(labels.iter().copied()).unwrap();
        CyclicFlatPresentation::new(
            std::sync::Arc::clone(&g),
            flats
                .iter()
                .map(|(set, r)| (ElementSet::from_labels(&g, set.iter().copied()).unwrap(), *r)),
        )
        .unwrap()
    }

    #[test]
    fn uniform_presentation_is_valid() {
        let p = pres(&["1", "2", "3", "4"], &[(&[], 0), (&["1", "2", "3", "4"], 3)]);
        assert!(check_z_axioms(&p).is_ok());
    }

    #[test]
    fn missing_join_is_a_z0_violation() {
        let p = pres(&["1", "2", "3", "4"], &[(&[], 0), (&["1", "2"], 1), (&["3", "4"], 1)]);
        let violations = check_z_axioms(&p).unwrap_err();
        assert!(violations
            .iter()
            .any(|v| v.axiom == AxiomKind::Z0 && v.detail.contains("least upper bound")));
    }

    #[test]
    fn least_element_needs_rank_zero() {
        let p = pres(&["1", "2", "3"], &[(&["1"], 1), (&["1", "2", "3"], 2)]);
        let violations = check_z_axioms(&p).unwrap_err();
        assert!(violations.iter().any(|v| v.axiom == AxiomKind::Z1));
    }

    #[test]
    fn rank_jump_is_a_z2_violation() {
        // {} -> E jumps by |E|, not strictly less.
        let p = pres(&["1", "2"], &[(&[], 0), (&["1", "2"], 2)]);
        let violations = check_z_axioms(&p).unwrap_err();
        assert!(violations.iter().any(|v| v.axiom == AxiomKind::Z2));
    }

    #[test]
    fn duplicates_reported_on_raw_entries() {
        let g = GroundSet::new(["1", "2"]).unwrap();
        let e = ElementSet::empty(&g);
        let full = ElementSet::full(&g);
        let entries = vec![(e.clone(), 0), (full.clone(), 1), (full, 1)];
        let violations = check_z_axioms_entries(&entries).unwrap_err();
        assert!(violations.iter().any(|v| v.axiom == AxiomKind::Duplicate));
    }

    #[test]
    fn join_meet_on_validated_lattice() {
        let p = pres(
            &["1", "2", "3", "4", "5"],
            &[(&[], 0), (&["1", "2", "3"], 2), (&["1", "4", "5"], 2), (&["1", "2", "3", "4", "5"], 3)],
        );
        assert!(check_z_axioms(&p).is_ok());
        let g = p.ground().clone();
        let x = ElementSet::from_labels(&g, ["1", "2", "3"]).unwrap();
        let y = ElementSet::from_labels(&g, ["1", "4", "5"]).unwrap();
        assert_eq!(lattice_join(&p, &x, &y).unwrap(), ElementSet::full(&g));
        assert_eq!(lattice_meet(&p, &x, &y).unwrap(), ElementSet::empty(&g));
        assert_eq!(lattice_join(&p, &x, &x).unwrap(), x);
        let z = ElementSet::from_labels(&g, ["1"]).unwrap();
        assert!(matches!(lattice_join(&p, &x, &z), Err(Error::NotACyclicFlat(_))));
    }
}
