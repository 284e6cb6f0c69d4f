use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::kernel::{ElementSet, GroundSet, Matroid};
use crate::linear::field::{check_prime, column_rank, FieldSpec, Fp};

/// A matrix with exact entries over ℚ or GF(p), defining a matroid on
/// its columns. Column labels double as matroid element labels; named
/// column groups tag distinguished subsets.
#[derive(Clone, Debug)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    labels: Vec<String>,
    columns: Columns,
    groups: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug)]
enum Columns {
    Rational(Vec<Vec<BigRational>>),
    Prime(Vec<Vec<u64>>),
}

impl ExactMatrix {
    pub fn rational<L, S>(labels: L, columns: Vec<Vec<BigRational>>) -> Result<Self>
    where
        L: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let rows = Self::common_height(&labels, columns.len(), columns.iter().map(Vec::len))?;
        Ok(ExactMatrix {
            field: FieldSpec::Rational,
            rows,
            labels,
            columns: Columns::Rational(columns),
            groups: BTreeMap::new(),
        })
    }

    /// Convenience constructor for integer matrices over ℚ.
    pub fn from_integers<L, S>(labels: L, columns: Vec<Vec<i64>>) -> Result<Self>
    where
        L: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let columns = columns
            .into_iter()
            .map(|col| col.into_iter().map(|v| BigRational::from_integer(v.into())).collect())
            .collect();
        Self::rational(labels, columns)
    }

    pub fn prime_field<L, S>(p: u64, labels: L, columns: Vec<Vec<u64>>) -> Result<Self>
    where
        L: IntoIterator<Item = S>,
        S: Into<String>,
    {
        check_prime(p)?;
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let rows = Self::common_height(&labels, columns.len(), columns.iter().map(Vec::len))?;
        let columns = columns
            .into_iter()
            .map(|col| col.into_iter().map(|v| v % p).collect())
            .collect();
        Ok(ExactMatrix {
            field: FieldSpec::Prime(p),
            rows,
            labels,
            columns: Columns::Prime(columns),
            groups: BTreeMap::new(),
        })
    }

    fn common_height(
        labels: &[String],
        cols: usize,
        heights: impl Iterator<Item = usize>,
    ) -> Result<usize> {
        if labels.len() != cols {
            return Err(Error::Format {
                what: "matrix",
                detail: format!("{} labels for {cols} columns", labels.len()),
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut rows = None;
        for h in heights {
            match rows {
                None => rows = Some(h),
                Some(r) if r != h => {
                    return Err(Error::Format {
                        what: "matrix",
                        detail: "columns have differing heights".into(),
                    })
                }
                _ => {}
            }
        }
        Ok(rows.unwrap_or(0))
    }

    pub fn with_groups(mut self, groups: BTreeMap<String, Vec<String>>) -> Result<Self> {
        for (name, members) in &groups {
            for l in members {
                if !self.labels.contains(l) {
                    return Err(Error::Format {
                        what: "matrix",
                        detail: format!("group `{name}` names unknown column `{l}`"),
                    });
                }
            }
        }
        self.groups = groups;
        Ok(self)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn groups(&self) -> &BTreeMap<String, Vec<String>> {
        &self.groups
    }

    pub fn rational_column(&self, i: usize) -> Option<&[BigRational]> {
        match &self.columns {
            Columns::Rational(cols) => Some(&cols[i]),
            Columns::Prime(_) => None,
        }
    }

    pub fn prime_column(&self, i: usize) -> Option<&[u64]> {
        match &self.columns {
            Columns::Prime(cols) => Some(&cols[i]),
            Columns::Rational(_) => None,
        }
    }

    pub fn entry_strings(&self, i: usize) -> Vec<String> {
        match &self.columns {
            Columns::Rational(cols) => cols[i].iter().map(super::field::rational_to_string).collect(),
            Columns::Prime(cols) => cols[i].iter().map(u64::to_string).collect(),
        }
    }

    /// Rank of the column submatrix selected by `bits`, by exact
    /// Gaussian elimination.
    pub fn rank_of_bits(&self, bits: u64) -> u32 {
        let pick = |i: usize| bits & (1 << i) != 0;
        match &self.columns {
            Columns::Rational(cols) => {
                let mut sel: Vec<Vec<BigRational>> = (0..cols.len())
                    .filter(|&i| pick(i))
                    .map(|i| cols[i].clone())
                    .collect();
                column_rank(&mut sel, self.rows)
            }
            Columns::Prime(cols) => {
                let p = match self.field {
                    FieldSpec::Prime(p) => p,
                    FieldSpec::Rational => unreachable!(),
                };
                let mut sel: Vec<Vec<Fp>> = (0..cols.len())
                    .filter(|&i| pick(i))
                    .map(|i| cols[i].iter().map(|&v| Fp::new(v, p)).collect())
                    .collect();
                column_rank(&mut sel, self.rows)
            }
        }
    }

    pub fn rank(&self) -> u32 {
        self.rank_of_bits(if self.cols() == 0 { 0 } else { u64::MAX >> (64 - self.cols()) })
    }

    /// The labels of a named group as an element set of `m`.
    pub fn group_set(&self, m: &Matroid, name: &str) -> Result<ElementSet> {
        let members = self.groups.get(name).ok_or_else(|| Error::Format {
            what: "matrix",
            detail: format!("no column group named `{name}`"),
        })?;
        ElementSet::from_labels(m.ground(), members)
    }
}

/// The matroid realized by the columns of `a`: rank of a set is the rank
/// of the corresponding column submatrix.
pub fn column_matroid(a: &ExactMatrix) -> Result<Matroid> {
    if a.cols() > crate::kernel::MAX_ELEMENTS {
        return Err(Error::GroundSetTooLarge(a.cols()));
    }
    let ground = GroundSet::new(a.labels().iter().cloned())?;
    let mut memo: HashMap<u64, u32> = HashMap::new();
    Matroid::from_rank_fn(ground, |bits| {
        *memo.entry(bits).or_insert_with(|| a.rank_of_bits(bits))
    })
}
