//! Sparse exact linear algebra over `Q` for the large, very sparse systems
//! produced by the jet engine.
//!
//! Columns are first split into connected components (two columns are linked
//! when some row touches both); each block is then brought to echelon form
//! independently. The kernel basis is the canonical one (a 1 in each free
//! column, 0 in the others), so it does not depend on how blocks are split
//! or in which order rows arrive.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::scalar::Rational;

pub type SparseRow = Vec<(usize, Rational)>;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Adds a row; duplicate columns are summed and zeros dropped. Empty rows are skipped.
    pub fn push_row<I>(&mut self, entries: I)
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.cols, "column {c} out of range {}", self.cols);
            *acc.entry(c).or_insert_with(Rational::zero) += v;
        }
        let row: SparseRow = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        self.rows
            .iter()
            .map(|row| {
                let mut acc = Rational::zero();
                for (c, v) in row {
                    if !x[*c].is_zero() {
                        acc += v * &x[*c];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn annihilates(&self, x: &[Rational]) -> bool {
        self.mul_vec(x).iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.blocks().iter().map(|b| b.echelon().len()).sum()
    }

    /// Canonical kernel basis ordered by free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut out: Vec<(usize, Vec<Rational>)> = Vec::new();
        for block in self.blocks() {
            let pivots = block.echelon();
            for (free, local) in block.kernel(&pivots) {
                let mut v = vec![Rational::zero(); self.cols];
                for (k, val) in local.into_iter().enumerate() {
                    if !val.is_zero() {
                        v[block.columns[k]] = val;
                    }
                }
                out.push((block.columns[free], v));
            }
        }
        out.sort_by_key(|(c, _)| *c);
        out.into_iter().map(|(_, v)| v).collect()
    }

    fn blocks(&self) -> Vec<Block> {
        let mut parent: Vec<usize> = (0..self.cols).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for row in &self.rows {
            let first = find(&mut parent, row[0].0);
            for (c, _) in &row[1..] {
                let r = find(&mut parent, *c);
                if r != first {
                    parent[r] = first;
                }
            }
        }
        let mut by_root: BTreeMap<usize, Block> = BTreeMap::new();
        for c in 0..self.cols {
            let r = find(&mut parent, c);
            by_root.entry(r).or_default().columns.push(c);
        }
        let mut local_of = vec![0usize; self.cols];
        for block in by_root.values() {
            for (k, &c) in block.columns.iter().enumerate() {
                local_of[c] = k;
            }
        }
        for row in &self.rows {
            let r = find(&mut parent, row[0].0);
            let local: SparseRow = row.iter().map(|(c, v)| (local_of[*c], v.clone())).collect();
            by_root.get_mut(&r).expect("block of row").rows.push(local);
        }
        by_root.into_values().collect()
    }
}

#[derive(Default)]
struct Block {
    columns: Vec<usize>,
    rows: Vec<SparseRow>,
}

impl Block {
    /// Echelon form: map from leading column to a row whose leading entry is 1.
    fn echelon(&self) -> BTreeMap<usize, SparseRow> {
        let mut order: Vec<&SparseRow> = self.rows.iter().collect();
        order.sort_by_key(|r| (r.len(), r[0].0));
        let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for row in order {
            let mut cur = row.clone();
            while let Some((lead, coeff)) = cur.first().cloned() {
                match pivots.get(&lead) {
                    Some(p) => cur = axpy(&cur, &coeff, p),
                    None => {
                        let inv = Rational::one() / &coeff;
                        for e in cur.iter_mut() {
                            e.1 *= &inv;
                        }
                        pivots.insert(lead, cur);
                        break;
                    }
                }
                if pivots.len() == self.columns.len() {
                    break;
                }
            }
        }
        pivots
    }

    fn kernel(&self, pivots: &BTreeMap<usize, SparseRow>) -> Vec<(usize, Vec<Rational>)> {
        let ncols = self.columns.len();
        let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains_key(c)).collect();
        free.into_iter()
            .map(|f| {
                let mut x = vec![Rational::zero(); ncols];
                x[f] = Rational::one();
                for (&p, row) in pivots.iter().rev() {
                    let mut acc = Rational::zero();
                    for (c, v) in &row[1..] {
                        if !x[*c].is_zero() {
                            acc -= v * &x[*c];
                        }
                    }
                    x[p] = acc;
                }
                (f, x)
            })
            .collect()
    }
}

/// `a - s * b` for sparse rows.
fn axpy(a: &SparseRow, s: &Rational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, -(s * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - s * &b[j].1;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
