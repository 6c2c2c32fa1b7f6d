//! Sparse reduced row-echelon bases over exact rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::lincomb::{LinComb, Rational};

/// A subspace held in reduced row-echelon form.
///
/// Each row is keyed by its pivot (its largest key), has pivot coefficient 1,
/// and has zero coefficient on every other pivot. Alongside each row we keep
/// its expression as a combination of the inserted vectors.
#[derive(Clone, Debug)]
pub struct RowBasis<K: Ord + Clone> {
    rows: BTreeMap<K, (LinComb<K>, LinComb<usize>)>,
}

impl<K: Ord + Clone> Default for RowBasis<K> {
    fn default() -> Self {
        RowBasis { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> RowBasis<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after eliminating every pivot, with the combination
    /// of stored rows that was subtracted folded into `combo`.
    pub fn reduce(&self, mut v: LinComb<K>, mut combo: LinComb<usize>) -> (LinComb<K>, LinComb<usize>) {
        for (pivot, (row, row_combo)) in &self.rows {
            let c = v.coeff(pivot);
            if !c.is_zero() {
                v -= &row.scale(&c);
                combo -= &row_combo.scale(&c);
            }
        }
        (v, combo)
    }

    pub fn contains(&self, v: &LinComb<K>) -> bool {
        self.reduce(v.clone(), LinComb::zero()).0.is_zero()
    }

    /// Inserts `v` (known as input vector `tag`). Returns false when `v` is
    /// already in the span.
    pub fn insert(&mut self, v: LinComb<K>, tag: usize) -> bool {
        let (rem, combo) = self.reduce(v, LinComb::basis(tag));
        let Some((pivot, lead)) = rem.leading().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = Rational::one() / lead;
        let row = rem.scale(&inv);
        let combo = combo.scale(&inv);
        for (other, other_combo) in self.rows.values_mut() {
            let c = other.coeff(&pivot);
            if !c.is_zero() {
                *other -= &row.scale(&c);
                *other_combo -= &combo.scale(&c);
            }
        }
        self.rows.insert(pivot, (row, combo));
        true
    }

    /// Rows in descending pivot order, with their input combinations.
    pub fn rows(&self) -> impl Iterator<Item = (&LinComb<K>, &LinComb<usize>)> + '_ {
        self.rows.values().rev().map(|(r, c)| (r, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincomb::int;

    fn v(terms: &[(u32, i64)]) -> LinComb<u32> {
        terms.iter().map(|&(k, c)| (k, int(c))).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut rb = RowBasis::new();
        assert!(rb.insert(v(&[(1, 1), (2, 1)]), 0));
        assert!(rb.insert(v(&[(2, 1), (3, 2)]), 1));
        assert!(!rb.insert(v(&[(1, 2), (2, 4), (3, 4)]), 2));
        assert_eq!(rb.dimension(), 2);
        assert!(rb.contains(&v(&[(1, -1), (3, 2)])));
        assert!(!rb.contains(&v(&[(1, 1)])));
    }

    #[test]
    fn combinations_reproduce_rows() {
        let inputs = [v(&[(1, 2), (2, 3)]), v(&[(2, 1), (3, 5)]), v(&[(1, 1), (3, 7)])];
        let mut rb = RowBasis::new();
        for (k, x) in inputs.iter().enumerate() {
            rb.insert(x.clone(), k);
        }
        for (row, combo) in rb.rows() {
            let mut rebuilt = LinComb::zero();
            for (k, c) in combo.iter() {
                rebuilt += &inputs[*k].scale(c);
            }
            assert_eq!(&rebuilt, row);
        }
    }
}
