use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A dense integer matrix.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.get(k, j);
                    out.data[i * other.cols + j] += prod;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Applies one unimodular operation in place.
    pub fn apply(&mut self, op: &SnfOp) {
        match op {
            SnfOp::SwapRows(a, b) => {
                for j in 0..self.cols {
                    self.data.swap(a * self.cols + j, b * self.cols + j);
                }
            }
            SnfOp::SwapCols(a, b) => {
                for i in 0..self.rows {
                    self.data.swap(i * self.cols + a, i * self.cols + b);
                }
            }
            SnfOp::AddRow { from, to, factor } => {
                for j in 0..self.cols {
                    let v = self.get(*from, j) * factor;
                    self.data[to * self.cols + j] += v;
                }
            }
            SnfOp::AddCol { from, to, factor } => {
                for i in 0..self.rows {
                    let v = self.get(i, *from) * factor;
                    self.data[i * self.cols + to] += v;
                }
            }
            SnfOp::NegateRow(a) => {
                for j in 0..self.cols {
                    let v = -self.get(*a, j);
                    self.set(*a, j, v);
                }
            }
        }
    }

    /// True when only diagonal entries are non-zero.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }
}

/// An elementary unimodular row or column operation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum SnfOp {
    SwapRows(usize, usize),
    SwapCols(usize, usize),
    /// `row[to] += factor * row[from]`
    AddRow { from: usize, to: usize, factor: BigInt },
    /// `col[to] += factor * col[from]`
    AddCol { from: usize, to: usize, factor: BigInt },
    NegateRow(usize),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SmithForm {
    /// Non-zero invariant factors `d1 | d2 | ...`, all positive.
    pub factors: Vec<BigInt>,
    /// Operations turning the input into `diag(factors)`.
    pub ops: Vec<SnfOp>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// Replays the operations on `m` and checks that the result is the
    /// diagonal matrix of the factors.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let mut work = m.clone();
        for op in &self.ops {
            let ok = match op {
                SnfOp::SwapRows(a, b) | SnfOp::AddRow { from: a, to: b, .. } => {
                    *a < work.rows && *b < work.rows && !(matches!(op, SnfOp::AddRow { .. }) && a == b)
                }
                SnfOp::SwapCols(a, b) | SnfOp::AddCol { from: a, to: b, .. } => {
                    *a < work.cols && *b < work.cols && !(matches!(op, SnfOp::AddCol { .. }) && a == b)
                }
                SnfOp::NegateRow(a) => *a < work.rows,
            };
            if !ok {
                return false;
            }
            work.apply(op);
        }
        if !work.is_diagonal() || self.factors.len() > work.rows.min(work.cols) {
            return false;
        }
        let diag_ok = (0..work.rows.min(work.cols)).all(|i| match self.factors.get(i) {
            Some(d) => work.get(i, i) == d,
            None => work.get(i, i).is_zero(),
        });
        let chain_ok = self.factors.iter().all(Signed::is_positive)
            && self.factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
        diag_ok && chain_ok
    }
}

/// Smith normal form by repeated least-absolute-value pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a = m.clone();
    let mut ops = Vec::new();
    let mut factors = Vec::new();
    let mut record = |a: &mut IntMatrix, op: SnfOp| {
        a.apply(&op);
        ops.push(op);
    };
    let n = a.rows.min(a.cols);
    for t in 0..n {
        // least non-zero entry of the trailing block
        let Some((pi, pj)) = least_entry(&a, t, (t..a.rows).flat_map(|i| (t..a.cols).map(move |j| (i, j)))) else {
            break;
        };
        if pi != t {
            record(&mut a, SnfOp::SwapRows(pi, t));
        }
        if pj != t {
            record(&mut a, SnfOp::SwapCols(pj, t));
        }
        loop {
            let mut dirty = false;
            for i in t + 1..a.rows {
                if !a.get(i, t).is_zero() {
                    let q = a.get(i, t).div_floor(a.get(t, t));
                    record(&mut a, SnfOp::AddRow { from: t, to: i, factor: -q });
                    dirty |= !a.get(i, t).is_zero();
                }
            }
            for j in t + 1..a.cols {
                if !a.get(t, j).is_zero() {
                    let q = a.get(t, j).div_floor(a.get(t, t));
                    record(&mut a, SnfOp::AddCol { from: t, to: j, factor: -q });
                    dirty |= !a.get(t, j).is_zero();
                }
            }
            if dirty {
                let line = (t..a.rows).map(|i| (i, t)).chain((t + 1..a.cols).map(|j| (t, j)));
                let (pi, pj) = least_entry(&a, t, line).expect("non-zero remainder");
                if pi != t {
                    record(&mut a, SnfOp::SwapRows(pi, t));
                }
                if pj != t {
                    record(&mut a, SnfOp::SwapCols(pj, t));
                }
                continue;
            }
            let pivot = a.get(t, t).clone();
            let bad = (t + 1..a.rows).find(|&i| (t + 1..a.cols).any(|j| !(a.get(i, j) % &pivot).is_zero()));
            match bad {
                Some(i) => record(&mut a, SnfOp::AddRow { from: i, to: t, factor: BigInt::one() }),
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            record(&mut a, SnfOp::NegateRow(t));
        }
        factors.push(a.get(t, t).clone());
    }
    SmithForm { factors, ops }
}

fn least_entry(a: &IntMatrix, _t: usize, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    cells.filter(|&(i, j)| !a.get(i, j).is_zero()).min_by(|&(i, j), &(k, l)| {
        a.get(i, j).abs().cmp(&a.get(k, l).abs()).then((i, j).cmp(&(k, l)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: &[Vec<i64>]) -> Vec<i64> {
        let m = IntMatrix::from_rows(rows);
        let s = smith_normal_form(&m);
        assert!(s.verify(&m));
        s.factors.iter().map(|d| i64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(factors(&[vec![1, 2], vec![3, 4]]), vec![1, 2]);
        assert_eq!(factors(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(factors(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), vec![1, 1, 1]);
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
    }

    #[test]
    fn tampered_ops_fail() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let mut s = smith_normal_form(&m);
        s.ops.pop();
        assert!(!s.verify(&m));
    }
}
