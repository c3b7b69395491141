//! Dense matrices over the integers and their Smith normal form.
//!
//! Everything here is exact: entries are arbitrary-precision integers and
//! every transformation is tracked together with its inverse, so callers can
//! move between the original and the diagonal coordinates in both directions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must have the
    /// same length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, v) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
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
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        self.data[i * self.cols + j] = v;
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += self.get(i, j) * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Columns `range` as a new matrix.
    pub fn select_columns(&self, cols: impl IntoIterator<Item = usize>) -> IntegerMatrix {
        let cols: Vec<usize> = cols.into_iter().collect();
        let mut out = Self::zeros(self.rows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                out.data[i * out.cols + jj] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: impl IntoIterator<Item = usize>) -> IntegerMatrix {
        let rows: Vec<usize> = rows.into_iter().collect();
        let mut out = Self::zeros(rows.len(), self.cols);
        for (ii, &i) in rows.iter().enumerate() {
            out.data[ii * self.cols..(ii + 1) * self.cols]
                .clone_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        out
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_i64()).collect())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let add = s * k;
                self.data[dst * self.cols + j] += add;
            }
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let add = s * k;
                self.data[i * self.cols + dst] += add;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal, its nonzero
/// entries positive and each dividing the next.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// The nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Tracks the working matrix together with both transforms and their inverses.
struct Reducer {
    a: IntegerMatrix,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[dst] += k row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row(dst, src, k);
        self.u.add_row(dst, src, k);
        self.u_inv.add_col(src, dst, &-k);
    }

    /// col[dst] += k col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col(dst, src, k);
        self.v.add_col(dst, src, k);
        self.v_inv.add_row(src, dst, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        // negating column i of u_inv
        for r in 0..self.u_inv.rows {
            let v = self.u_inv.at_mut(r, i);
            *v = -std::mem::take(v);
        }
    }

    /// Smallest nonzero |entry| in the trailing block, row-major tiebreak.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let v = self.a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let mag = v.abs();
                if best.as_ref().is_none_or(|(_, _, b)| mag < *b) {
                    best = Some((i, j, mag));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows, m.cols);
    let mut r = Reducer {
        a: m.clone(),
        u: IntegerMatrix::identity(rows),
        u_inv: IntegerMatrix::identity(rows),
        v: IntegerMatrix::identity(cols),
        v_inv: IntegerMatrix::identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = r.pivot(t) else { break };
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);
        loop {
            // clear column t below the pivot and row t right of it
            let p = r.a.get(t, t).clone();
            for i in t + 1..rows {
                if !r.a.get(i, t).is_zero() {
                    let q = r.a.get(i, t).div_floor(&p);
                    r.add_row(i, t, &-q);
                }
            }
            for j in t + 1..cols {
                if !r.a.get(t, j).is_zero() {
                    let q = r.a.get(t, j).div_floor(&p);
                    r.add_col(j, t, &-q);
                }
            }
            // a remainder smaller than the pivot becomes the new pivot
            let mut smaller: Option<(bool, usize, BigInt)> = None;
            for i in t + 1..rows {
                let v = r.a.get(i, t);
                if !v.is_zero() && smaller.as_ref().is_none_or(|(_, _, b)| v.abs() < *b) {
                    smaller = Some((true, i, v.abs()));
                }
            }
            for j in t + 1..cols {
                let v = r.a.get(t, j);
                if !v.is_zero() && smaller.as_ref().is_none_or(|(_, _, b)| v.abs() < *b) {
                    smaller = Some((false, j, v.abs()));
                }
            }
            if let Some((is_row, k, _)) = smaller {
                if is_row {
                    r.swap_rows(t, k);
                } else {
                    r.swap_cols(t, k);
                }
                continue;
            }
            // divisibility of the trailing block
            let p = r.a.get(t, t).clone();
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !r.a.get(i, j).is_multiple_of(&p) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => r.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if r.a.get(t, t).is_negative() {
            r.negate_row(t);
        }
        t += 1;
    }
    SmithDecomposition { d: r.a, u: r.u, u_inv: r.u_inv, v: r.v, v_inv: r.v_inv, rank: t }
}

/// Basis of the integer kernel `{x : m x = 0}`, as matrix columns.
pub fn integer_kernel(m: &IntegerMatrix) -> IntegerMatrix {
    let snf = smith_normal_form(m);
    snf.v.select_columns(snf.rank..m.cols)
}

/// An integer solution of `m x = b`, if one exists.
pub fn solve_integer(m: &IntegerMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(m.rows, b.len());
    let snf = smith_normal_form(m);
    let ub = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); m.cols];
    for (i, val) in ub.iter().enumerate() {
        if i < snf.rank {
            let d = snf.d.get(i, i);
            if !val.is_multiple_of(d) {
                return None;
            }
            y[i] = val / d;
        } else if !val.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// A basis (as columns) of the submodule spanned by the columns of `m`.
pub fn column_span_basis(m: &IntegerMatrix) -> IntegerMatrix {
    let snf = smith_normal_form(m);
    let mut cols = Vec::with_capacity(snf.rank);
    for i in 0..snf.rank {
        let d = snf.d.get(i, i);
        cols.push(snf.u_inv.column(i).into_iter().map(|x| x * d).collect::<Vec<_>>());
    }
    IntegerMatrix::from_columns(m.rows, &cols)
}

/// True when the columns of `m` generate all of `Z^rows`.
pub fn is_surjective(m: &IntegerMatrix) -> bool {
    let snf = smith_normal_form(m);
    snf.rank == m.rows && snf.invariant_factors().iter().all(|d| d.is_one())
}

/// Inverse of a unimodular square matrix.
pub fn unimodular_inverse(m: &IntegerMatrix) -> Option<IntegerMatrix> {
    if m.rows != m.cols {
        return None;
    }
    let snf = smith_normal_form(m);
    if snf.rank != m.rows || !snf.invariant_factors().iter().all(|d| d.is_one()) {
        return None;
    }
    // u m v = I  =>  m^{-1} = v u
    Some(snf.v.mul(&snf.u))
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntegerMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a.get(k, k).is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntegerMatrix) -> SmithDecomposition {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntegerMatrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntegerMatrix::identity(m.cols()));
        s
    }

    #[test]
    fn identity_is_its_own_normal_form() {
        let s = check(&IntegerMatrix::identity(2));
        assert_eq!(s.d, IntegerMatrix::identity(2));
    }

    #[test]
    fn hand_reduced_example() {
        // rows: (2,4),(2,6) -> subtract row0 -> (2,4),(0,2) -> clear col -> diag(2,2)
        let s = check(&IntegerMatrix::from_rows(&[[2, 4], [2, 6]]));
        assert_eq!(s.d, IntegerMatrix::from_rows(&[[2, 0], [0, 2]]));
    }

    #[test]
    fn zero_matrix() {
        let s = check(&IntegerMatrix::zeros(3, 2));
        assert!(s.d.is_zero());
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn divisibility_is_enforced() {
        let s = check(&IntegerMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn solving_and_kernels() {
        let m = IntegerMatrix::from_rows(&[[1, 2, 3], [4, 5, 6]]);
        let k = integer_kernel(&m);
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
        let b = vec![BigInt::from(6), BigInt::from(15)];
        let x = solve_integer(&m, &b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert!(solve_integer(&IntegerMatrix::from_rows(&[[2]]), &[BigInt::from(3)]).is_none());
    }

    #[test]
    fn bareiss_determinant() {
        let m = IntegerMatrix::from_rows(&[[2, -1, 0], [1, 3, 2], [0, 5, -4]]);
        assert_eq!(determinant(&m), BigInt::from(-48));
        let inv = unimodular_inverse(&IntegerMatrix::from_rows(&[[2, 1], [1, 1]])).unwrap();
        assert_eq!(inv, IntegerMatrix::from_rows(&[[1, -1], [-1, 2]]));
    }
}
