//! Named builders for the matroids the other modules study: uniform
//! matroids, the Vámos matroid, the two-hyperplane extension `N` used
//! against stickiness, the line-hyperplane extension used for the
//! intersection-property argument, and the rank-5 column matroid.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::{CyclicFlatPresentation, ElementSet, GroundSet, Matroid};
use crate::linear;
use crate::modcuts::{check_disjoint_hyperplanes, make_cyclic, principal_extension};

/// The uniform matroid `U_{r,n}` on labels `1..=n`.
pub fn uniform(r: u32, n: usize) -> Result<Matroid> {
    let ground = GroundSet::numbered(n)?;
    uniform_on(ground, r)
}

/// Uniform matroid of rank `r` on an arbitrary ground set.
pub fn uniform_on(ground: Arc<GroundSet>, r: u32) -> Result<Matroid> {
    let n = ground.size();
    if r as usize > n {
        return Err(Error::Precondition(format!("uniform rank {r} exceeds ground size {n}")));
    }
    let empty = ElementSet::empty(&ground);
    let full = ElementSet::full(&ground);
    let entries: Vec<(ElementSet, u32)> = if n == 0 || r as usize == n {
        vec![(empty, 0)] // free matroid: no circuits
    } else if r == 0 {
        vec![(full, 0)] // everything is a loop
    } else {
        vec![(empty, 0), (full, r)]
    };
    Matroid::from_presentation(CyclicFlatPresentation::new(ground, entries)?)
}

/// The Vámos matroid: rank 4 on `{a,a',b,b',c,c',d,d'}`, whose proper
/// nonempty cyclic flats are the five pair-union 4-sets other than
/// `{a,a',d,d'}`, all of rank 3.
pub fn vamos() -> Matroid {
    let ground = GroundSet::new(["a", "a'", "b", "b'", "c", "c'", "d", "d'"])
        .expect("vamos labels are distinct");
    let set = |labels: &[&str]| ElementSet::from_labels(&ground, labels.iter().copied()).unwrap();
    let mut entries = vec![(ElementSet::empty(&ground), 0), (ElementSet::full(&ground), 4)];
    for quad in [
        ["a", "a'", "b", "b'"],
        ["a", "a'", "c", "c'"],
        ["b", "b'", "c", "c'"],
        ["b", "b'", "d", "d'"],
        ["c", "c'", "d", "d'"],
    ] {
        entries.push((set(&quad), 3));
    }
    Matroid::from_presentation(CyclicFlatPresentation::new(ground, entries).unwrap())
        .expect("the Vámos presentation satisfies the axioms")
}

/// The data of the two-hyperplane extension: `M'` is `M` with the two
/// hyperplanes made cyclic, and `N` extends `M'` by fresh sets `A` and
/// `B` so that `H_i ∪ A`, `H_i ∪ B` are cyclic hyperplanes of `N`.
///
/// All stored sets live on `n`'s ground set.
#[derive(Clone, Debug)]
pub struct PlanesConstruction {
    pub base: Matroid,
    pub m_prime: Matroid,
    pub h1: ElementSet,
    pub h2: ElementSet,
    pub a_set: ElementSet,
    pub b_set: ElementSet,
    pub n: Matroid,
}

/// Build `N` from a matroid with two disjoint hyperplanes `h`, `h2`:
/// make both cyclic (free point each, if needed), pick fresh
/// `(r-1)`-sets `A` and `B`, and adjoin the cyclic flats
/// `E(M') ∪ A ∪ B` (rank `r+1`) and `H_1 ∪ A`, `H_1 ∪ B`, `H_2 ∪ A`,
/// `H_2 ∪ B` (rank `r`). The resulting presentation is validated
/// against the axioms.
pub fn build_n_planes(m: &Matroid, h: &ElementSet, h2: &ElementSet) -> Result<PlanesConstruction> {
    check_disjoint_hyperplanes(m, h, h2)?;
    let r = m.rank();

    let (m1, h1c) = make_cyclic(m, h)?;
    let h2_in_m1 = ElementSet::from_bits_unchecked(m1.ground(), h2.bits());
    let (m_prime, h2c) = make_cyclic(&m1, &h2_in_m1)?;
    let h1c = ElementSet::from_bits_unchecked(m_prime.ground(), h1c.bits());

    let mut taken: Vec<String> = m_prime.ground().labels().to_vec();
    let a_labels = fresh_named(&mut taken, "a", (r - 1) as usize);
    let b_labels = fresh_named(&mut taken, "b", (r - 1) as usize);

    let mut labels = m_prime.ground().labels().to_vec();
    labels.extend(a_labels.iter().cloned());
    labels.extend(b_labels.iter().cloned());
    let ground = GroundSet::new(labels)?;

    let a_set = ElementSet::from_labels(&ground, &a_labels)?;
    let b_set = ElementSet::from_labels(&ground, &b_labels)?;
    let h1 = ElementSet::from_labels(&ground, &h1c.label_vec())?;
    let h2n = ElementSet::from_labels(&ground, &h2c.label_vec())?;

    let mut entries: Vec<(ElementSet, u32)> = m_prime
        .presentation()
        .iter()
        .map(|(set, rank)| (ElementSet::from_labels(&ground, &set.label_vec()).unwrap(), rank))
        .collect();
    entries.push((ElementSet::full(&ground), r + 1));
    for (hflat, fresh) in [(&h1, &a_set), (&h1, &b_set), (&h2n, &a_set), (&h2n, &b_set)] {
        entries.push((hflat.union(fresh), r));
    }

    let n = Matroid::from_presentation(CyclicFlatPresentation::new(ground, entries)?)?;
    Ok(PlanesConstruction {
        base: m.clone(),
        m_prime,
        h1,
        h2: h2n,
        a_set,
        b_set,
        n,
    })
}

/// The data of the line-hyperplane extension: `M'` is `M` with the line
/// made cyclic and `A` added freely to `H`; `N` extends `M'` by the
/// fresh parts of `D_1` and `D_2`.
///
/// All stored sets live on `n`'s ground set.
#[derive(Clone, Debug)]
pub struct IpConstruction {
    pub base: Matroid,
    pub m_prime: Matroid,
    pub line: ElementSet,
    pub h_prime: ElementSet,
    pub a_set: ElementSet,
    pub d1: ElementSet,
    pub d2: ElementSet,
    pub n: Matroid,
}

/// Build `N` from a rank-`r` matroid (`r >= 4`) with a line and a
/// hyperplane that are disjoint: make the line cyclic if necessary, add
/// `r-3` fresh points freely to `h` (giving `H' = h ∪ A`), pick
/// `(r-1)`-element supersets `D_1, D_2` of `A` with fresh remainders,
/// and adjoin `E(M') ∪ D_1 ∪ D_2` (rank `r+1`) and `D_1 ∪ H'`,
/// `D_1 ∪ ℓ`, `D_2 ∪ H'`, `D_2 ∪ ℓ` (rank `r`).
pub fn build_n_ip(m: &Matroid, line: &ElementSet, h: &ElementSet) -> Result<IpConstruction> {
    let r = m.rank();
    if r < 4 {
        return Err(Error::Precondition(format!("matroid rank is {r}, need at least 4")));
    }
    if !m.is_flat(line)? || m.rank_of(line)? != 2 {
        return Err(Error::Precondition(format!("{line} is not a line")));
    }
    if !m.is_flat(h)? || m.rank_of(h)? != r - 1 {
        return Err(Error::Precondition(format!("{h} is not a hyperplane")));
    }
    if !line.is_disjoint_from(h) {
        return Err(Error::Precondition(format!("line {line} meets hyperplane {h}")));
    }

    // The adjoined set D_1 ∪ ℓ is listed as a cyclic flat, so ℓ itself
    // must be cyclic; add a free point on it when it is not.
    let (m1, line_c) = make_cyclic(m, line)?;

    // Add A freely to h, one point at a time.
    let mut taken: Vec<String> = m1.ground().labels().to_vec();
    let a_labels = fresh_named(&mut taken, "a", (r - 3) as usize);
    let mut m_prime = m1;
    let mut h_cur = h.bits();
    for label in &a_labels {
        let flat = ElementSet::from_bits_unchecked(m_prime.ground(), h_cur);
        let next = principal_extension(&m_prime, &flat, label)?;
        h_cur |= 1 << (next.size() - 1);
        m_prime = next;
    }

    let d1_rest = fresh_named(&mut taken, "d1_", 2);
    let d2_rest = fresh_named(&mut taken, "d2_", 2);

    let mut labels = m_prime.ground().labels().to_vec();
    labels.extend(d1_rest.iter().cloned());
    labels.extend(d2_rest.iter().cloned());
    let ground = GroundSet::new(labels)?;

    let a_set = ElementSet::from_labels(&ground, &a_labels)?;
    let d1 = a_set.union(&ElementSet::from_labels(&ground, &d1_rest)?);
    let d2 = a_set.union(&ElementSet::from_labels(&ground, &d2_rest)?);
    let line_n = ElementSet::from_labels(&ground, &line_c.label_vec())?;
    let h_prime = ElementSet::from_labels(&ground, &h.label_vec())?.union(&a_set);

    let mut entries: Vec<(ElementSet, u32)> = m_prime
        .presentation()
        .iter()
        .map(|(set, rank)| (ElementSet::from_labels(&ground, &set.label_vec()).unwrap(), rank))
        .collect();
    entries.push((ElementSet::full(&ground), r + 1));
    for (d, other) in [(&d1, &h_prime), (&d1, &line_n), (&d2, &h_prime), (&d2, &line_n)] {
        entries.push((d.union(other), r));
    }

    let n = Matroid::from_presentation(CyclicFlatPresentation::new(ground, entries)?)?;
    Ok(IpConstruction {
        base: m.clone(),
        m_prime,
        line: line_n,
        h_prime,
        a_set,
        d1,
        d2,
        n,
    })
}

/// The rank-5 column matroid of the built-in 5×11 matrix, with the
/// `d1`, `d2`, `d3`, `l4` column groups available from
/// [`linear::counterexample_matrix`].
pub fn counterexample_rank5() -> Matroid {
    linear::column_matroid(&linear::counterexample_matrix())
        .expect("counterexample matrix defines a matroid")
}

/// Deterministic fresh labels `prefix1, prefix2, ...` avoiding `taken`;
/// appends its picks to `taken` so successive calls stay disjoint.
fn fresh_named(taken: &mut Vec<String>, prefix: &str, count: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(count);
    let mut k = 1usize;
    while out.len() < count {
        let candidate = format!("{prefix}{k}");
        if !taken.contains(&candidate) {
            taken.push(candidate.clone());
            out.push(candidate);
        }
        k += 1;
    }
    out
}
