//! Amalgam existence search and non-stickiness certificates.
//!
//! The search is complete: an amalgam restricted to `E(n1)` plus the
//! first `k` new elements is a `k`-step chain of single-element
//! extensions of `n1`, and the search walks exactly those chains,
//! pruning every extension whose trace on `E(n2)` disagrees with `n2`.
//!
//! The certificates replay the forcing arguments: each step names a
//! modular pair of flats of the constructed matroid whose meet every
//! admissible modular cut is then forced to contain.

use serde::Serialize;

use crate::constructions::{build_n_planes, IpConstruction, PlanesConstruction};
use crate::error::{Error, Result};
use crate::kernel::{ElementSet, Matroid};
use crate::modcuts::{
    build_m_p, enumerate_modular_cuts_constrained, extend, forced_closure, is_modular_pair,
};

/// Two matroids that agree on their common ground set.
#[derive(Clone, Debug)]
pub struct AmalgamProblem {
    n1: Matroid,
    n2: Matroid,
    common: Vec<String>,
}

impl AmalgamProblem {
    /// Validates that the restrictions of `n1` and `n2` to the common
    /// label set are equal as labeled matroids.
    pub fn new(n1: Matroid, n2: Matroid) -> Result<Self> {
        let common: Vec<String> = n1
            .ground()
            .labels()
            .iter()
            .filter(|l| n2.ground().contains_label(l))
            .cloned()
            .collect();
        let r1 = n1.restriction(&ElementSet::from_labels(n1.ground(), &common)?)?;
        let r2 = n2.restriction(&ElementSet::from_labels(n2.ground(), &common)?)?;
        if !r1.same_labeled_matroid(&r2) {
            return Err(Error::Precondition(
                "restrictions to the common ground set differ".into(),
            ));
        }
        Ok(AmalgamProblem { n1, n2, common })
    }

    pub fn n1(&self) -> &Matroid {
        &self.n1
    }

    pub fn n2(&self) -> &Matroid {
        &self.n2
    }

    pub fn common_labels(&self) -> &[String] {
        &self.common
    }
}

#[derive(Debug)]
pub enum AmalgamOutcome {
    /// A matroid on `E(n1) ∪ E(n2)` restricting to both inputs.
    Amalgam(Matroid),
    /// No amalgam exists (the search is complete).
    None,
    /// The node budget ran out before the search finished.
    BudgetExceeded { explored: u64 },
}

pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

/// Depth-first search over extension chains of `n1` by the elements of
/// `E(n2) - E(n1)`, in `n2`'s ground order. At each step the modular
/// cuts of the current matroid are enumerated and filtered by the exact
/// trace conditions `cl(Y) ∈ cut ⇔ r_{n2}(Y ∪ e) = r_{n2}(Y)`, which
/// are necessary and sufficient for the extension to stay consistent
/// with `n2`.
pub fn has_amalgam(p: &AmalgamProblem, budget: u64) -> AmalgamOutcome {
    let missing: Vec<String> = p
        .n2
        .ground()
        .labels()
        .iter()
        .filter(|l| !p.n1.ground().contains_label(l))
        .cloned()
        .collect();
    let mut remaining = budget;
    match search(&p.n1, &p.n2, &missing, &mut remaining) {
        SearchResult::Found(m) => {
            let e1 = ElementSet::from_labels(m.ground(), p.n1.ground().labels()).unwrap();
            let e2 = ElementSet::from_labels(m.ground(), p.n2.ground().labels()).unwrap();
            assert!(m.restriction(&e1).unwrap().same_labeled_matroid(&p.n1));
            assert!(m.restriction(&e2).unwrap().same_labeled_matroid(&p.n2));
            AmalgamOutcome::Amalgam(m)
        }
        SearchResult::Exhausted => AmalgamOutcome::None,
        SearchResult::OutOfBudget => AmalgamOutcome::BudgetExceeded { explored: budget - remaining },
    }
}

enum SearchResult {
    Found(Matroid),
    Exhausted,
    OutOfBudget,
}

fn search(cur: &Matroid, n2: &Matroid, missing: &[String], budget: &mut u64) -> SearchResult {
    let Some(label) = missing.first() else {
        return SearchResult::Found(cur.clone());
    };
    if *budget == 0 {
        return SearchResult::OutOfBudget;
    }
    *budget -= 1;

    // Trace conditions on the common part decide flat membership in the
    // cut for every closure of a common subset.
    let shared: Vec<(usize, usize)> = n2
        .ground()
        .labels()
        .iter()
        .enumerate()
        .filter_map(|(j, l)| cur.ground().index_of(l).map(|i| (i, j)))
        .collect();
    let e_idx = n2.ground().index_of(label).expect("missing label comes from n2");
    let mut required_in: Vec<u64> = Vec::new();
    let mut required_out: Vec<u64> = Vec::new();
    for subset in 0u64..(1 << shared.len()) {
        let mut cur_bits = 0u64;
        let mut n2_bits = 0u64;
        for (k, &(i, j)) in shared.iter().enumerate() {
            if subset & (1 << k) != 0 {
                cur_bits |= 1 << i;
                n2_bits |= 1 << j;
            }
        }
        let flat = cur.closure_bits(cur_bits);
        let stays = n2.rank_bits(n2_bits | (1 << e_idx)) == n2.rank_bits(n2_bits);
        if stays {
            required_in.push(flat);
        } else {
            required_out.push(flat);
        }
    }
    required_in.sort_unstable();
    required_in.dedup();
    required_out.sort_unstable();
    required_out.dedup();
    if required_in.iter().any(|f| required_out.binary_search(f).is_ok()) {
        return SearchResult::Exhausted; // contradictory trace: no extension fits
    }

    let Some(cuts) = enumerate_modular_cuts_constrained(cur, &required_in, &required_out, budget)
    else {
        return SearchResult::OutOfBudget;
    };
    for cut in cuts {
        if *budget == 0 {
            return SearchResult::OutOfBudget;
        }
        *budget -= 1;
        let child = extend(cur, &cut, label).expect("fresh label extension");
        match search(&child, n2, &missing[1..], budget) {
            SearchResult::Exhausted => continue,
            done => return done,
        }
    }
    SearchResult::Exhausted
}

/// One step of a forcing chain: a modular pair of flats already forced
/// into every admissible cut, whose meet is then forced as well.
#[derive(Clone, Debug, Serialize)]
pub struct ForcingStep {
    #[serde(serialize_with = "crate::amalgam::serialize_set")]
    pub left: ElementSet,
    #[serde(serialize_with = "crate::amalgam::serialize_set")]
    pub right: ElementSet,
    #[serde(serialize_with = "crate::amalgam::serialize_set")]
    pub meet: ElementSet,
}

pub(crate) fn serialize_set<S: serde::Serializer>(
    set: &ElementSet,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    set.label_vec().serialize(s)
}

/// Verify a forcing chain against its host: starting from the filter of
/// the seeds, each step's pair must already be in the cut, must be a
/// modular pair, and must meet exactly in the claimed flat, which then
/// joins the cut (with its filter).
pub fn replay_chain(host: &Matroid, seeds: &[ElementSet], chain: &[ForcingStep]) -> Result<()> {
    let mut members: Vec<u64> = Vec::new();
    let add_filter = |flat: &ElementSet, members: &mut Vec<u64>| -> Result<()> {
        if !host.is_flat(flat)? {
            return Err(Error::Certificate(format!("{flat} is not a flat of the host")));
        }
        for g in host.all_flats() {
            if flat.is_subset_of(&g) && !members.contains(&g.bits()) {
                members.push(g.bits());
            }
        }
        Ok(())
    };
    for seed in seeds {
        add_filter(seed, &mut members)?;
    }
    for step in chain {
        for side in [&step.left, &step.right] {
            if !members.contains(&side.bits()) {
                return Err(Error::Certificate(format!(
                    "{side} is not yet forced when its step fires"
                )));
            }
        }
        if !is_modular_pair(host, &step.left, &step.right)? {
            return Err(Error::Certificate(format!(
                "({}, {}) is not a modular pair",
                step.left, step.right
            )));
        }
        let meet = step.left.intersection(&step.right);
        if meet != step.meet {
            return Err(Error::Certificate(format!(
                "({}, {}) meets in {meet}, certificate claims {}",
                step.left, step.right, step.meet
            )));
        }
        add_filter(&step.meet, &mut members)?;
    }
    Ok(())
}

/// Certificate that a matroid with two disjoint hyperplanes is not
/// sticky, following the two-extension argument at rank 3 or 4.
#[derive(Clone, Debug, Serialize)]
pub struct NonstickyCertificate {
    pub rank: u32,
    /// Seeds forced into every admissible cut: the closures of the two
    /// hyperplanes in `N`.
    #[serde(serialize_with = "serialize_sets")]
    pub seeds: Vec<ElementSet>,
    pub chain: Vec<ForcingStep>,
    pub conclusion: NonstickyConclusion,
    /// Agreement with the complete amalgam search, when it was run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search_agrees: Option<bool>,
}

fn serialize_sets<S: serde::Serializer>(
    sets: &[ElementSet],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    sets.iter().map(ElementSet::label_vec).collect::<Vec<_>>().serialize(s)
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind")]
pub enum NonstickyConclusion {
    /// Rank 3: every admissible cut contains the bottom flat, so the
    /// glued point would be a loop, against `r(P) = 1`.
    LoopForced { r_mp_p: u32 },
    /// Rank 4: the semimodular bound `2(r-1) ≥ (r+1) + r(P)` caps
    /// `r(P)` strictly below its value in `M_P`.
    RankBound { lhs: u32, rhs_base: u32, p_rank_bound: u32, r_mp_p: u32 },
}

/// Build `M_P` and `N` from two disjoint hyperplanes and certify that
/// they have no amalgam. Certificate failure is a hard error: it would
/// falsify the construction on this instance.
pub fn verify_nonsticky_planes(
    m: &Matroid,
    h: &ElementSet,
    h2: &ElementSet,
) -> Result<(PlanesConstruction, Matroid, ElementSet, NonstickyCertificate)> {
    let r = m.rank();
    if r != 3 && r != 4 {
        return Err(Error::Precondition(format!(
            "certificates cover ranks 3 and 4; matroid has rank {r}"
        )));
    }
    let (m_p, p_set) = build_m_p(m, h, h2)?;
    let c = build_n_planes(m, h, h2)?;
    let n = &c.n;

    // In M_P the glued set sits in both hyperplane closures with full
    // independent rank; these are the facts an amalgam would import.
    let r_mp_p = m_p.rank_of(&p_set)?;
    certify(r_mp_p == r - 2, || format!("r(P) = {r_mp_p}, expected {}", r - 2))?;
    for hyp in [h, h2] {
        let cl = m_p.closure_bits(hyp.bits());
        certify(p_set.bits() & !cl == 0, || {
            format!("P is not inside the closure of {hyp} in M_P")
        })?;
    }

    let seeds = vec![c.h1.clone(), c.h2.clone()];
    let pair = |x: &ElementSet, y: &ElementSet| x.union(y);
    let (certificate, search_agrees);
    if r == 3 {
        let chain = vec![
            ForcingStep {
                left: pair(&c.h1, &c.a_set),
                right: pair(&c.h2, &c.a_set),
                meet: c.a_set.clone(),
            },
            ForcingStep {
                left: pair(&c.h1, &c.b_set),
                right: pair(&c.h2, &c.b_set),
                meet: c.b_set.clone(),
            },
            ForcingStep { left: c.a_set.clone(), right: c.b_set.clone(), meet: n.loops() },
        ];
        replay_chain(n, &seeds, &chain)?;
        let forced = forced_closure(n, &seeds)?;
        certify(forced.contains(&n.loops()), || {
            "forced closure of {H1, H2} misses the bottom flat".to_string()
        })?;
        // the complete search must agree when the union stays desk-scale
        search_agrees = if n.size() + p_set.len() <= 12 {
            let problem = AmalgamProblem::new(n.clone(), m_p.clone())?;
            Some(matches!(has_amalgam(&problem, DEFAULT_SEARCH_BUDGET), AmalgamOutcome::None))
        } else {
            None
        };
        certificate = NonstickyCertificate {
            rank: r,
            seeds,
            chain,
            conclusion: NonstickyConclusion::LoopForced { r_mp_p },
            search_agrees,
        };
        certify(certificate.search_agrees != Some(false), || {
            "amalgam search disagrees with the loop-forcing certificate".to_string()
        })?;
    } else {
        // Rank 4: force P into cl(A) and cl(B) through the two modular
        // pairs, then cap r(P) by semimodularity:
        //   r(A∪P) + r(B∪P) ≥ r(A∪B∪P) + r(P)
        //   2(r-1)          ≥ (r+1)     + r(P).
        let chain = vec![
            ForcingStep {
                left: pair(&c.h1, &c.a_set),
                right: pair(&c.h2, &c.a_set),
                meet: c.a_set.clone(),
            },
            ForcingStep {
                left: pair(&c.h1, &c.b_set),
                right: pair(&c.h2, &c.b_set),
                meet: c.b_set.clone(),
            },
        ];
        replay_chain(n, &seeds, &chain)?;
        certify(n.rank_of(&c.a_set)? == r - 1, || "r(A) should be r-1 in N".to_string())?;
        certify(n.rank_of(&c.b_set)? == r - 1, || "r(B) should be r-1 in N".to_string())?;
        certify(n.rank_of(&c.a_set.union(&c.b_set))? == r + 1, || {
            "r(A∪B) should be r+1 in N".to_string()
        })?;
        let lhs = 2 * (r - 1);
        let rhs_base = r + 1;
        let p_rank_bound = lhs - rhs_base; // r - 3
        certify(p_rank_bound < r_mp_p, || {
            format!("bound r(P) ≤ {p_rank_bound} fails to contradict r(P) = {r_mp_p}")
        })?;
        certificate = NonstickyCertificate {
            rank: r,
            seeds,
            chain,
            conclusion: NonstickyConclusion::RankBound { lhs, rhs_base, p_rank_bound, r_mp_p },
            search_agrees: None,
        };
    }
    Ok((c, m_p, p_set, certificate))
}

/// Certificate that in the line-hyperplane extension `N`, any extension
/// point lying in both `cl(ℓ)` and `cl(H')` is forced to be a loop, so
/// `N` keeps the closures of `ℓ` and `H'` disjoint in every loopless
/// extension.
#[derive(Clone, Debug, Serialize)]
pub struct LoopCertificate {
    #[serde(serialize_with = "serialize_sets")]
    pub seeds: Vec<ElementSet>,
    pub chain: Vec<ForcingStep>,
    pub n_loopless: bool,
    pub forced_closure_contains_bottom: bool,
}

/// Verify the four-step forcing chain of the line-hyperplane argument:
/// `D_1` (via `(D_1∪ℓ, D_1∪H')`), `D_2`, then `A` (via `(D_1, D_2)`),
/// then the bottom flat (via `(A, ℓ)`).
pub fn verify_loop_argument(c: &IpConstruction) -> Result<LoopCertificate> {
    let n = &c.n;
    let seeds = vec![c.line.clone(), c.h_prime.clone()];
    let chain = vec![
        ForcingStep {
            left: c.d1.union(&c.line),
            right: c.d1.union(&c.h_prime),
            meet: c.d1.clone(),
        },
        ForcingStep {
            left: c.d2.union(&c.line),
            right: c.d2.union(&c.h_prime),
            meet: c.d2.clone(),
        },
        ForcingStep { left: c.d1.clone(), right: c.d2.clone(), meet: c.a_set.clone() },
        ForcingStep { left: c.a_set.clone(), right: c.line.clone(), meet: n.loops() },
    ];
    replay_chain(n, &seeds, &chain)?;
    let n_loopless = n.loops().is_empty();
    certify(n_loopless, || "N must be loopless".to_string())?;
    let forced = forced_closure(n, &seeds)?;
    let forced_closure_contains_bottom = forced.contains(&n.loops());
    certify(forced_closure_contains_bottom, || {
        "forced closure of {cl(ℓ), H'} misses the bottom flat".to_string()
    })?;
    Ok(LoopCertificate { seeds, chain, n_loopless, forced_closure_contains_bottom })
}

fn certify(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Certificate(msg()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::uniform;
    use crate::modcuts::ModularCut;

    #[test]
    fn restriction_of_itself_is_an_amalgam() {
        let m = uniform(3, 5).unwrap();
        let sub = ElementSet::from_labels(m.ground(), ["1", "2", "3"]).unwrap();
        let n2 = m.restriction(&sub).unwrap();
        let p = AmalgamProblem::new(m.clone(), n2).unwrap();
        match has_amalgam(&p, DEFAULT_SEARCH_BUDGET) {
            AmalgamOutcome::Amalgam(a) => assert_eq!(a, m),
            other => panic!("expected amalgam, got {other:?}"),
        }
    }

    #[test]
    fn two_free_extensions_of_u23_glue() {
        let base = uniform(2, 3).unwrap();
        let full = ElementSet::full(base.ground());
        let free = ModularCut::new(&base, &[full]).unwrap();
        let n1 = extend(&base, &free, "q").unwrap();
        let n2 = extend(&base, &free, "s").unwrap();
        let p = AmalgamProblem::new(n1.clone(), n2.clone()).unwrap();
        match has_amalgam(&p, DEFAULT_SEARCH_BUDGET) {
            AmalgamOutcome::Amalgam(a) => {
                assert_eq!(a.size(), 5);
                let r1 = a
                    .restriction(&ElementSet::from_labels(a.ground(), n1.ground().labels()).unwrap())
                    .unwrap();
                assert!(r1.same_labeled_matroid(&n1));
            }
            other => panic!("expected amalgam, got {other:?}"),
        }
    }

    #[test]
    fn mismatched_restrictions_are_rejected() {
        let n1 = uniform(2, 3).unwrap();
        let n2 = uniform(1, 3).unwrap();
        assert!(AmalgamProblem::new(n1, n2).is_err());
    }

    #[test]
    fn budget_exhaustion_reports() {
        let base = uniform(2, 3).unwrap();
        let full = ElementSet::full(base.ground());
        let free = ModularCut::new(&base, &[full]).unwrap();
        let n1 = extend(&base, &free, "q").unwrap();
        let n2 = extend(&base, &free, "s").unwrap();
        let p = AmalgamProblem::new(n1, n2).unwrap();
        assert!(matches!(has_amalgam(&p, 1), AmalgamOutcome::BudgetExceeded { .. }));
    }
}
