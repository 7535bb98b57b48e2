//! Sparse row echelon forms over a field.

use std::collections::{BTreeMap, HashMap};

use crate::arith::{Coeff, Domain};

/// Sparse vector as `(column, nonzero value)` pairs with strictly increasing
/// columns.
pub type SparseVec = Vec<(usize, Coeff)>;

/// Rows with pairwise distinct pivots, each row monic at its pivot (the
/// smallest column it touches).
#[derive(Clone, Debug)]
pub struct Echelon {
    domain: Domain,
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(domain: Domain) -> Self {
        Echelon {
            domain,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Rows sorted by pivot column.
    pub fn rows(&self) -> Vec<&SparseVec> {
        let mut out: Vec<&SparseVec> = self.rows.iter().collect();
        out.sort_by_key(|r| r[0].0);
        out
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.pivot_row.keys().copied().collect();
        out.sort_unstable();
        out
    }

    /// Remainder of `v` after eliminating every pivot column. The remainder
    /// is unique: two remainders differ by a row-space element with no pivot
    /// entry, which must be zero.
    pub fn reduce(&self, v: &[(usize, Coeff)]) -> SparseVec {
        let d = self.domain;
        let mut acc: BTreeMap<usize, Coeff> = v.iter().cloned().collect();
        let mut cursor = 0usize;
        loop {
            let hit = acc
                .range(cursor..)
                .find(|(c, _)| self.pivot_row.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((col, factor)) = hit else { break };
            for (c, x) in &self.rows[self.pivot_row[&col]] {
                let delta = d.mul(&factor, x);
                match acc.get_mut(c) {
                    Some(slot) => {
                        *slot = d.sub(slot, &delta);
                        if slot.is_zero() {
                            acc.remove(c);
                        }
                    }
                    None => {
                        acc.insert(*c, d.neg(&delta));
                    }
                }
            }
            cursor = col + 1;
        }
        acc.into_iter().collect()
    }

    /// Adds `v` to the row space. Returns `true` if the rank grew.
    pub fn insert(&mut self, v: &[(usize, Coeff)]) -> bool {
        let r = self.reduce(v);
        let Some((col, lead)) = r.first().cloned() else {
            return false;
        };
        let d = self.domain;
        let inv = d.inv(&lead).expect("nonzero pivot in a field");
        let row: SparseVec = r.into_iter().map(|(c, x)| (c, d.mul(&x, &inv))).collect();
        self.pivot_row.insert(col, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&self, v: &[(usize, Coeff)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Back-substitutes so every pivot column is zero outside its own row.
    pub fn into_reduced(mut self) -> Self {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i][0].0));
        for i in order {
            let row = std::mem::take(&mut self.rows[i]);
            let (head, tail) = row.split_first().expect("rows are nonzero");
            // only columns past the pivot need clearing
            let mut reduced = vec![head.clone()];
            let pivot = head.0;
            self.pivot_row.remove(&pivot);
            reduced.extend(self.reduce(tail));
            self.pivot_row.insert(pivot, i);
            self.rows[i] = reduced;
        }
        self
    }
}

/// Basis of the kernel of the linear map whose images of the standard basis
/// vectors `0..images.len()` are given, computed by eliminating `[image | e_i]`
/// with the image columns first.
pub fn kernel(domain: Domain, images: &[SparseVec], image_dim: usize) -> Vec<SparseVec> {
    let mut ech = Echelon::new(domain);
    for (i, img) in images.iter().enumerate() {
        let mut row = img.clone();
        row.push((image_dim + i, domain.one()));
        ech.insert(&row);
    }
    let ech = ech.into_reduced();
    ech.rows()
        .into_iter()
        .filter(|r| r[0].0 >= image_dim)
        .map(|r| r.iter().map(|(c, x)| (c - image_dim, x.clone())).collect())
        .collect()
}
