use serde_json::json;

use crate::io::{set_to_value, Check, Report};
use crate::kernel::{ElementSet, Matroid};
use crate::linear::matrix::{column_matroid, ExactMatrix};
use crate::properties;

/// The exact 5×11 matrix over ℚ whose column matroid refutes the
/// claimed hyperplane criterion for the intersection property. Columns
/// come in four groups: three planes `d1`, `d2`, `d3` and a line `l4`.
pub fn counterexample_matrix() -> ExactMatrix {
    let labels = [
        "d1_1", "d1_2", "d1_3", "d2_1", "d2_2", "d2_3", "d3_1", "d3_2", "d3_3", "l4_1", "l4_2",
    ];
    let columns: Vec<Vec<i64>> = vec![
        vec![0, 1, 2, 0, 0],
        vec![0, 1, 3, 0, 0],
        vec![1, 1, 4, 0, 0],
        vec![0, 0, 0, 1, 2],
        vec![0, 0, 0, 1, 3],
        vec![1, 0, 0, 1, 4],
        vec![0, 0, 1, 2, 0],
        vec![0, 0, 1, 3, 0],
        vec![1, 0, 1, 4, 0],
        vec![1, 1, 1, 1, 1],
        vec![0, 1, 1, 1, 1],
    ];
    let groups = [
        ("d1", vec!["d1_1", "d1_2", "d1_3"]),
        ("d2", vec!["d2_1", "d2_2", "d2_3"]),
        ("d3", vec!["d3_1", "d3_2", "d3_3"]),
        ("l4", vec!["l4_1", "l4_2"]),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.into_iter().map(String::from).collect()))
    .collect();
    ExactMatrix::from_integers(labels, columns)
        .and_then(|a| a.with_groups(groups))
        .expect("built-in matrix is well-formed")
}

/// Columns of `a` satisfying an entry predicate, as a set in `m`.
fn columns_where(a: &ExactMatrix, m: &Matroid, pred: impl Fn(&[num_rational::BigRational]) -> bool) -> ElementSet {
    let mut labels = Vec::new();
    for i in 0..a.cols() {
        let col = a.rational_column(i).expect("counterexample matrix is rational");
        if pred(col) {
            labels.push(a.labels()[i].clone());
        }
    }
    ElementSet::from_labels(m.ground(), &labels).expect("labels come from the ground set")
}

/// Rerun all seven checks on the rank-5 counterexample: the group
/// ranks, the five hyperplanes realized as column-entry conditions,
/// the spanning union, distinctness, and the intersection property.
pub fn verify_counterexample() -> Report {
    let a = counterexample_matrix();
    let m = column_matroid(&a).expect("counterexample matrix is a matroid");
    let d1 = a.group_set(&m, "d1").unwrap();
    let d2 = a.group_set(&m, "d2").unwrap();
    let d3 = a.group_set(&m, "d3").unwrap();
    let l4 = a.group_set(&m, "l4").unwrap();

    let mut checks = vec![
        Check::compare("rank(M)", 5, m.rank()),
        Check::compare("rank(d1)", 3, m.rank_of(&d1).unwrap()),
        Check::compare("rank(d2)", 3, m.rank_of(&d2).unwrap()),
        Check::compare("rank(d3)", 3, m.rank_of(&d3).unwrap()),
        Check::compare("rank(l4)", 2, m.rank_of(&l4).unwrap()),
    ];

    // The five hyperplanes, each described twice: as a closure and as a
    // column-entry condition. They must agree as sets, with rank 4.
    let described: [(&str, ElementSet, ElementSet); 5] = [
        (
            "cl(d1 ∪ l4) = columns with last two entries equal",
            m.closure(&d1.union(&l4)).unwrap(),
            columns_where(&a, &m, |col| col[3] == col[4]),
        ),
        (
            "cl(d2 ∪ l4) = columns with second and third entries equal",
            m.closure(&d2.union(&l4)).unwrap(),
            columns_where(&a, &m, |col| col[1] == col[2]),
        ),
        (
            "cl(d3 ∪ l4) = columns with second and last entries equal",
            m.closure(&d3.union(&l4)).unwrap(),
            columns_where(&a, &m, |col| col[1] == col[4]),
        ),
        (
            "cl(d1 ∪ d3) = columns with last entry zero",
            m.closure(&d1.union(&d3)).unwrap(),
            columns_where(&a, &m, |col| col[4] == num_rational::BigRational::from_integer(0.into())),
        ),
        (
            "cl(d2 ∪ d3) = columns with second entry zero",
            m.closure(&d2.union(&d3)).unwrap(),
            columns_where(&a, &m, |col| col[1] == num_rational::BigRational::from_integer(0.into())),
        ),
    ];
    for (name, closure, condition) in &described {
        checks.push(Check::compare(*name, set_to_value(condition), set_to_value(closure)));
        checks.push(Check::compare(format!("rank of {name}"), 4, m.rank_of(closure).unwrap()));
    }

    checks.push(Check::compare("rank(d1 ∪ d2) spans", 5, m.rank_of(&d1.union(&d2)).unwrap()));

    let mut distinct: Vec<u64> = described.iter().map(|(_, cl, _)| cl.bits()).collect();
    distinct.sort_unstable();
    distinct.dedup();
    checks.push(Check::compare("five distinct hyperplanes", 5, distinct.len() as u32));

    let ip = properties::intersection_property_holds(&m);
    checks.push(Check::compare("intersection property", true, ip.holds));

    let witnesses = json!({
        "hyperplanes": described.iter().map(|(_, cl, _)| set_to_value(cl)).collect::<Vec<_>>(),
        "non_modular_pairs_checked": ip.pairs_checked,
    });
    Report::new("verify-counterexample", checks).with_witnesses(witnesses)
}
