//! Small dense matrices with polynomial entries.

use std::fmt;

use super::field::Field;
use super::mpoly::{MPoly, Var};
use super::nf::NFElem;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MPoly>,
}

/// Row indices, column indices and the value of a minor.
pub type Minor = ((Vec<usize>, Vec<usize>), MPoly);

/// Rank together with the row and column indices of a nonzero minor of
/// that size.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RankWitness {
    pub rank: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl RingMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<MPoly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RingMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<MPoly>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidInput("ragged rows".into()));
        }
        Self::new(n, m, rows.into_iter().flatten().collect())
    }

    pub fn from_scalars(rows: Vec<Vec<NFElem>>) -> Result<Self> {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(MPoly::constant).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n * n).map(|k| MPoly::from_int(i64::from(k / n == k % n))).collect();
        RingMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[MPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map(&self, f: impl Fn(&MPoly) -> MPoly) -> Self {
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn specialize_m(&self, m_value: &NFElem) -> Self {
        self.map(|p| p.specialize(&[(Var::M, m_value.clone())]))
    }

    pub fn swap_rows(&self, a: usize, b: usize) -> Self {
        let mut out = self.clone();
        for j in 0..self.cols {
            out.entries.swap(a * self.cols + j, b * self.cols + j);
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RingMatrix {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        RingMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> Result<MPoly> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.det_rec(&idx, &idx))
    }

    fn det_rec(&self, rows: &[usize], cols: &[usize]) -> MPoly {
        match rows.len() {
            0 => MPoly::from_int(1),
            1 => self.get(rows[0], cols[0]).clone(),
            2 => {
                let (a, b) = (self.get(rows[0], cols[0]), self.get(rows[0], cols[1]));
                let (c, d) = (self.get(rows[1], cols[0]), self.get(rows[1], cols[1]));
                &(a * d) - &(b * c)
            }
            _ => {
                let mut acc = MPoly::zero();
                for (k, &j) in cols.iter().enumerate() {
                    let e = self.get(rows[0], j);
                    if e.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
                    let minor = &self.det_rec(&rows[1..], &rest) * e;
                    acc = if k % 2 == 0 { &acc + &minor } else { &acc - &minor };
                }
                acc
            }
        }
    }

    pub fn is_scalar(&self) -> bool {
        self.entries.iter().all(|e| e.as_constant().is_some())
    }

    fn scalar_rows(&self) -> Option<Vec<Vec<NFElem>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(MPoly::as_constant).collect())
            .collect()
    }

    /// Rank over Q(r) after specializing m, or over Q(r)(m) when `m_value`
    /// is `None` and entries involve m. In the symbolic case a minor counts
    /// as nonzero iff it is a nonzero polynomial.
    pub fn rank(&self, m_value: Option<&NFElem>) -> RankWitness {
        let mat = match m_value {
            Some(v) => self.specialize_m(v),
            None => self.clone(),
        };
        match mat.scalar_rows() {
            Some(rows) => scalar_rank(rows),
            None => mat.minor_rank(),
        }
    }

    fn minor_rank(&self) -> RankWitness {
        for k in (1..=self.rows.min(self.cols)).rev() {
            for rs in combinations(self.rows, k) {
                for cs in combinations(self.cols, k) {
                    if !self.det_rec(&rs, &cs).is_zero() {
                        return RankWitness {
                            rank: k,
                            rows: rs,
                            cols: cs,
                        };
                    }
                }
            }
        }
        RankWitness {
            rank: 0,
            rows: vec![],
            cols: vec![],
        }
    }

    /// All k×k minors, in lexicographic order of (rows, cols).
    pub fn minors(&self, k: usize) -> Vec<Minor> {
        let mut out = Vec::new();
        for rs in combinations(self.rows, k) {
            for cs in combinations(self.cols, k) {
                let d = self.det_rec(&rs, &cs);
                out.push(((rs.clone(), cs), d));
            }
        }
        out
    }

    /// Basis of the right kernel over Q(r); entries must be constants.
    pub fn kernel(&self) -> Result<Vec<Vec<NFElem>>> {
        let rows = self
            .scalar_rows()
            .ok_or_else(|| Error::InvalidInput("kernel needs scalar entries".into()))?;
        Ok(kernel_basis(rows, self.cols))
    }
}

impl fmt::Display for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Gauss–Jordan elimination; returns the reduced rows and pivot columns.
fn rref<F: Field>(mut rows: Vec<Vec<F>>, cols: usize) -> (Vec<Vec<F>>, Vec<(usize, usize)>) {
    // (original row index, pivot column)
    let mut order: Vec<usize> = (0..rows.len()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        order.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        rows[r] = rows[r].iter().map(|v| v.mul(&inv)).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (a, b) in rows[i].iter_mut().zip(pivot_row.iter()) {
                    *a = a.sub(&f.mul(b));
                }
            }
        }
        pivots.push((order[r], c));
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (rows, pivots)
}

fn scalar_rank(rows: Vec<Vec<NFElem>>) -> RankWitness {
    let cols = rows.first().map_or(0, Vec::len);
    let (_, pivots) = rref(rows, cols);
    let mut rs: Vec<usize> = pivots.iter().map(|p| p.0).collect();
    rs.sort_unstable();
    RankWitness {
        rank: pivots.len(),
        rows: rs,
        cols: pivots.iter().map(|p| p.1).collect(),
    }
}

pub fn kernel_basis<F: Field>(rows: Vec<Vec<F>>, cols: usize) -> Vec<Vec<F>> {
    let (reduced, pivots) = rref(rows, cols);
    let pivot_cols: Vec<usize> = pivots.iter().map(|p| p.1).collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (k, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = reduced[k][free].neg();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parser::parse_poly;

    fn p(s: &str) -> MPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn identity_det_and_rank() {
        assert_eq!(RingMatrix::identity(3).det().unwrap(), MPoly::from_int(1));
        assert_eq!(RingMatrix::identity(4).rank(None).rank, 4);
    }

    #[test]
    fn two_by_two_det() {
        let mat = RingMatrix::from_rows(vec![vec![p("X"), p("Y")], vec![p("Z"), p("T")]]).unwrap();
        assert_eq!(mat.det().unwrap(), p("X*T - Y*Z"));
    }

    #[test]
    fn non_square_rejected() {
        let mat = RingMatrix::new(2, 3, vec![MPoly::zero(); 6]).unwrap();
        assert_eq!(mat.det(), Err(Error::NonSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn zero_matrix_rank() {
        let mat = RingMatrix::new(3, 4, vec![MPoly::zero(); 12]).unwrap();
        assert_eq!(mat.rank(None).rank, 0);
    }

    #[test]
    fn symbolic_rank_uses_minors() {
        // rows proportional over Q(r)(m)
        let mat = RingMatrix::from_rows(vec![vec![p("m"), p("1")], vec![p("m^2"), p("m")]]).unwrap();
        assert_eq!(mat.rank(None).rank, 1);
        assert_eq!(mat.rank(Some(&NFElem::from_int(3))).rank, 1);
        let mat = RingMatrix::from_rows(vec![vec![p("m"), p("1")], vec![p("1"), p("m")]]).unwrap();
        assert_eq!(mat.rank(None).rank, 2);
        assert_eq!(mat.rank(Some(&NFElem::from_int(1))).rank, 1);
    }

    #[test]
    fn kernel_of_singular_matrix() {
        let mat = RingMatrix::from_scalars(vec![
            vec![NFElem::from_int(1), NFElem::from_int(2)],
            vec![NFElem::from_int(2), NFElem::from_int(4)],
        ])
        .unwrap();
        let k = mat.kernel().unwrap();
        assert_eq!(k, vec![vec![NFElem::from_int(-2), NFElem::from_int(1)]]);
    }

    #[test]
    fn rank_witness_minor_is_nonzero() {
        let mat = RingMatrix::from_scalars(vec![
            vec![NFElem::from_int(0), NFElem::from_int(0), NFElem::from_int(1)],
            vec![NFElem::from_int(0), NFElem::from_int(0), NFElem::from_int(2)],
            vec![NFElem::from_int(1), NFElem::from_int(0), NFElem::from_int(0)],
        ])
        .unwrap();
        let w = mat.rank(None);
        assert_eq!(w.rank, 2);
        assert!(!mat.submatrix(&w.rows, &w.cols).det().unwrap().is_zero());
    }
}
