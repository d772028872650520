//! Exact integer matrices and the lattice normal forms used throughout.
//!
//! Everything here is over Z with arbitrary-precision entries; the torus
//! enters only through callers that reduce mod q. Row convention: lattices
//! are spanned by the rows of a generator matrix.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith::divisors;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        assert!(rows > 0 && cols > 0, "matrix must be non-empty");
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn diag(entries: &[BigInt]) -> IntMatrix {
        let mut m = IntMatrix::zero(entries.len(), entries.len());
        for (i, v) in entries.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn diag_i64(entries: &[i64]) -> IntMatrix {
        IntMatrix::diag(&entries.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>())
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<IntMatrix> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::DimensionMismatch("matrix must be non-empty".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let mut m = IntMatrix::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        Ok(m)
    }

    pub fn from_bigint_rows(rows: Vec<Vec<BigInt>>) -> Result<IntMatrix> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::DimensionMismatch("matrix must be non-empty".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.rows && j < self.cols);
        i * self.cols + j
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        let k = self.idx(i, j);
        self.data[k] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self[(i, j)].clone());
            }
        }
        out
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self[(i, j)].is_zero()))
    }

    /// Rows of `self` with column `j` removed. Requires at least two columns.
    pub fn delete_col(&self, j: usize) -> Result<IntMatrix> {
        if j >= self.cols {
            return Err(Error::DimensionMismatch(format!(
                "column {j} out of range for {} columns",
                self.cols
            )));
        }
        if self.cols < 2 {
            return Err(Error::DimensionMismatch("cannot delete the only column".into()));
        }
        let mut out = IntMatrix::zero(self.rows, self.cols - 1);
        for i in 0..self.rows {
            let mut c = 0;
            for jj in 0..self.cols {
                if jj != j {
                    out.set(i, c, self[(i, jj)].clone());
                    c += 1;
                }
            }
        }
        Ok(out)
    }

    /// Vertical concatenation; all blocks must share a column count.
    pub fn vstack(blocks: &[&IntMatrix]) -> Result<IntMatrix> {
        if blocks.is_empty() {
            return Err(Error::DimensionMismatch("nothing to stack".into()));
        }
        let cols = blocks[0].cols;
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::DimensionMismatch("stacked blocks differ in width".into()));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend_from_slice(&b.data);
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a * &rhs[(k, j)];
                    let t = out.idx(i, j);
                    let cur = std::mem::take(&mut out.data[t]);
                    out.data[t] = cur + add;
                }
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, k: &BigInt) -> IntMatrix {
        let mut out = self.clone();
        for v in &mut out.data {
            let cur = std::mem::take(v);
            *v = cur * k;
        }
        out
    }

    /// Fraction-free Gaussian elimination (Bareiss); exact.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut w = self.data.clone();
        let at = |i: usize, j: usize| i * n + j;
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if w[at(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !w[at(i, k)].is_zero()) {
                    Some(p) => {
                        for j in 0..n {
                            w.swap(at(k, j), at(p, j));
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &w[at(i, j)] * &w[at(k, k)] - &w[at(i, k)] * &w[at(k, j)];
                    debug_assert!((&num % &prev).is_zero());
                    w[at(i, j)] = num / &prev;
                }
                w[at(i, k)] = BigInt::zero();
            }
            prev = w[at(k, k)].clone();
        }
        let d = w[at(n - 1, n - 1)].clone();
        Ok(if sign < 0 { -d } else { d })
    }

    fn minor_det(&self, skip_row: usize, skip_col: usize) -> Result<BigInt> {
        let n = self.rows;
        if n == 1 {
            return Ok(BigInt::one());
        }
        let mut rows = Vec::with_capacity(n - 1);
        for i in 0..n {
            if i == skip_row {
                continue;
            }
            let mut r = Vec::with_capacity(n - 1);
            for j in 0..n {
                if j != skip_col {
                    r.push(self[(i, j)].clone());
                }
            }
            rows.push(r);
        }
        IntMatrix::from_bigint_rows(rows)?.det()
    }

    /// Adjugate: `self * adj = det * I`.
    pub fn adjugate(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("adjugate of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut out = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let m = self.minor_det(j, i)?;
                out.set(i, j, if (i + j) % 2 == 0 { m } else { -m });
            }
        }
        Ok(out)
    }

    /// Exact inverse of a matrix with determinant ±1.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        let det = self.det()?;
        if det.abs() != BigInt::one() {
            return Err(Error::InvalidParams(format!("matrix with determinant {det} is not unimodular")));
        }
        let adj = self.adjugate()?;
        Ok(if det.is_negative() { adj.scaled(&BigInt::from(-1)) } else { adj })
    }

    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut r = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                r.push(
                    i64::try_from(&self[(i, j)])
                        .map_err(|_| Error::Overflow(format!("matrix entry {} exceeds i64", self[(i, j)])))?,
                );
            }
            out.push(r);
        }
        Ok(out)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let (x, y) = (self.idx(a, j), self.idx(b, j));
            self.data.swap(x, y);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let (x, y) = (self.idx(i, a), self.idx(i, b));
            self.data.swap(x, y);
        }
    }

    pub(crate) fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let k = self.idx(r, j);
            let v = std::mem::take(&mut self.data[k]);
            self.data[k] = -v;
        }
    }

    /// row_i -= f * row_k
    pub(crate) fn row_sub_scaled(&mut self, i: usize, k: usize, f: &BigInt) {
        debug_assert_ne!(i, k);
        for j in 0..self.cols {
            let sub = f * &self.data[self.idx(k, j)];
            let t = self.idx(i, j);
            let cur = std::mem::take(&mut self.data[t]);
            self.data[t] = cur - sub;
        }
    }

    /// col_j -= f * col_k
    pub(crate) fn col_sub_scaled(&mut self, j: usize, k: usize, f: &BigInt) {
        debug_assert_ne!(j, k);
        for i in 0..self.rows {
            let sub = f * &self.data[self.idx(i, k)];
            let t = self.idx(i, j);
            let cur = std::mem::take(&mut self.data[t]);
            self.data[t] = cur - sub;
        }
    }

    /// row_dst += row_src
    pub(crate) fn row_add(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        for j in 0..self.cols {
            let add = self.data[self.idx(src, j)].clone();
            let t = self.idx(dst, j);
            let cur = std::mem::take(&mut self.data[t]);
            self.data[t] = cur + add;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[self.idx(i, j)]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.data_as_rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.data_as_rows();
        let width = rows
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for r in &rows {
            write!(f, "[")?;
            for (j, v) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", v.to_string())?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl IntMatrix {
    fn data_as_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error as _;
        let rows = self
            .to_i64_rows()
            .map_err(|_| S::Error::custom("matrix entry exceeds i64"))?;
        rows.serialize(s)
    }
}

/// Row-style Hermite normal form: `u * m == h` with `u` unimodular, `h` in
/// echelon form with positive pivots and entries above each pivot reduced
/// into `[0, pivot)`. Zero rows sink to the bottom.
pub struct HnfResult {
    pub h: IntMatrix,
    pub u: IntMatrix,
}

pub fn hnf(m: &IntMatrix) -> HnfResult {
    let (rn, cn) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rn);
    let mut r = 0;
    for c in 0..cn {
        if r == rn {
            break;
        }
        loop {
            let piv = (r..rn)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()).then(a.cmp(&b)));
            let Some(p) = piv else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            if h[(r, c)].is_negative() {
                h.negate_row(r);
                u.negate_row(r);
            }
            let mut clean = true;
            for i in r + 1..rn {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let f = h[(i, c)].div_floor(&h[(r, c)]);
                if !f.is_zero() {
                    h.row_sub_scaled(i, r, &f);
                    u.row_sub_scaled(i, r, &f);
                }
                if !h[(i, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        for i in 0..r {
            let f = h[(i, c)].div_floor(&h[(r, c)]);
            if !f.is_zero() {
                h.row_sub_scaled(i, r, &f);
                u.row_sub_scaled(i, r, &f);
            }
        }
        r += 1;
    }
    HnfResult { h, u }
}

/// Smith normal form: `u * m * v == d` with `u`, `v` unimodular and `d`
/// diagonal, nonnegative, each entry dividing the next.
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

pub fn snf(m: &IntMatrix) -> SnfResult {
    let (rn, cn) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rn);
    let mut v = IntMatrix::identity(cn);
    for k in 0..rn.min(cn) {
        'pivot: loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..rn {
                for j in k..cn {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    best = match best {
                        None => Some((i, j)),
                        Some(b) if d[(i, j)].abs() < d[b].abs() => Some((i, j)),
                        Some(b) => Some(b),
                    };
                }
            }
            let Some((pi, pj)) = best else { break 'pivot };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);
            if d[(k, k)].is_negative() {
                d.negate_row(k);
                u.negate_row(k);
            }
            let mut dirty = false;
            for i in k + 1..rn {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let f = d[(i, k)].div_floor(&d[(k, k)]);
                if !f.is_zero() {
                    d.row_sub_scaled(i, k, &f);
                    u.row_sub_scaled(i, k, &f);
                }
                if !d[(i, k)].is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..cn {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let f = d[(k, j)].div_floor(&d[(k, k)]);
                if !f.is_zero() {
                    d.col_sub_scaled(j, k, &f);
                    v.col_sub_scaled(j, k, &f);
                }
                if !d[(k, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }
            let piv = d[(k, k)].clone();
            for i in k + 1..rn {
                for j in k + 1..cn {
                    if !d[(i, j)].mod_floor(&piv).is_zero() {
                        d.row_add(k, i);
                        u.row_add(k, i);
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
    }
    SnfResult { d, u, v }
}

/// Invariant-factor chain of `m` (diagonal of its Smith form).
pub fn invariant_chain(m: &IntMatrix) -> Vec<BigInt> {
    snf(m).d.diagonal()
}

/// Whether `a` and `b` differ by unimodular row and column transformations.
pub fn gamma_equivalent(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.rows() == b.rows() && a.cols() == b.cols() && invariant_chain(a) == invariant_chain(b)
}

/// `q * m^{-1}` when it is an integer matrix (exact, via the adjugate).
pub fn q_inverse(m: &IntMatrix, q: i64) -> Result<IntMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("q-inverse of a non-square matrix".into()));
    }
    if q < 1 {
        return Err(Error::InvalidParams(format!("modulus q = {q} must be positive")));
    }
    let det = m.det()?;
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let adj = m.adjugate()?;
    let qb = BigInt::from(q);
    let n = m.rows();
    let mut out = IntMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let num = &qb * &adj[(i, j)];
            let (quo, rem) = num.div_rem(&det);
            if !rem.is_zero() {
                return Err(Error::NotIntegral(format!(
                    "q*M^-1 has a non-integer entry at ({}, {}): the rows do not span a lattice containing q*Z^n",
                    i + 1,
                    j + 1
                )));
            }
            out.set(i, j, quo);
        }
    }
    debug_assert_eq!(m.mul(&out).unwrap(), IntMatrix::identity(n).scaled(&qb));
    Ok(out)
}

/// Solve `y * h = v` exactly for square upper-triangular nonsingular `h`.
pub fn solve_left_upper(h: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = h.rows();
    debug_assert!(h.is_square() && v.len() == n && h.is_upper_triangular());
    let mut y = vec![BigInt::zero(); n];
    for j in 0..n {
        let mut acc = v[j].clone();
        for i in 0..j {
            acc -= &y[i] * &h[(i, j)];
        }
        if h[(j, j)].is_zero() {
            return None;
        }
        let (quo, rem) = acc.div_rem(&h[(j, j)]);
        if !rem.is_zero() {
            return None;
        }
        y[j] = quo;
    }
    Some(y)
}

/// Reduce every off-diagonal entry of an upper-triangular matrix with
/// constant diagonal `side = 2e+1` into `[-e, e]` by row operations.
pub(crate) fn reduce_upper(m: &mut IntMatrix, side: &BigInt, e: i64) {
    let n = m.rows();
    let eb = BigInt::from(e);
    for i in 0..n {
        for j in i + 1..n {
            let f = (&m[(i, j)] + &eb).div_floor(side);
            if !f.is_zero() {
                m.row_sub_scaled(i, j, &f);
            }
        }
    }
}

fn bidiagonal_search(chain: &[BigInt], side: &BigInt) -> Option<IntMatrix> {
    let n = chain.len();
    debug_assert!(n >= 2);
    let side_small = i64::try_from(side).ok()?;
    if side_small > 1_000_000 {
        return None;
    }
    // Proper divisors of an odd side never exceed side/3 <= e, so every
    // candidate superdiagonal is already reduced.
    let mut cand: Vec<i64> = vec![0];
    cand.extend(divisors(side_small).into_iter().filter(|&d| d != side_small));
    let slots = n - 1;
    let total = (cand.len() as u128).checked_pow(slots as u32)?;
    if total > 200_000 {
        return None;
    }
    let mut idx = vec![0usize; slots];
    loop {
        let mut b = IntMatrix::zero(n, n);
        for i in 0..n {
            b.set(i, i, side.clone());
        }
        for (s, &ci) in idx.iter().enumerate() {
            b.set(s, s + 1, BigInt::from(cand[ci]));
        }
        if invariant_chain(&b) == chain {
            return Some(b);
        }
        let mut pos = slots;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < cand.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn chain_representative(chain: &[BigInt], side: &BigInt, e: i64) -> Result<IntMatrix> {
    let n = chain.len();
    if n == 1 {
        if &chain[0] != side {
            return Err(Error::Internal("1x1 chain must equal 2e+1".into()));
        }
        return Ok(IntMatrix::diag(&[side.clone()]));
    }
    if let Some(found) = bidiagonal_search(chain, side) {
        return Ok(found);
    }
    // No bidiagonal matrix has this chain (or the search is out of budget).
    // Split diag(chain) as diag(d1, dn, d3..d_{n-1}, d2), turn the (d1, dn)
    // block into [[side, d1], [0, d1*dn/side]] and fold the tail recursively.
    let d1 = chain[0].clone();
    let dn = &chain[n - 1];
    let (x, rx) = dn.div_rem(side);
    if !rx.is_zero() {
        return Err(Error::Internal("chain is not compatible with side 2e+1".into()));
    }
    let mut rest: Vec<BigInt> = Vec::with_capacity(n - 1);
    rest.push(&d1 * &x);
    if n >= 3 {
        rest.extend_from_slice(&chain[2..n - 1]);
        rest.push(chain[1].clone());
    }
    let d0 = IntMatrix::diag(&rest);
    let s0 = snf(&d0);
    let rec_chain = s0.d.diagonal();
    let b0 = chain_representative(&rec_chain, side, e)?;
    let s1 = snf(&b0);
    if s1.d != s0.d {
        return Err(Error::Internal("recursive normal forms disagree".into()));
    }
    // b0 = s1.u^-1 * s0.u * d0 * s0.v * s1.v^-1, so columns of d0 map
    // through col_map = s0.v * s1.v^-1 and the first-row coupling
    // (d1, 0, ..., 0) becomes d1 * (first row of col_map).
    let col_map = s0.v.mul(&s1.v.unimodular_inverse()?)?;
    let mut out = IntMatrix::zero(n, n);
    out.set(0, 0, side.clone());
    for j in 0..n - 1 {
        out.set(0, j + 1, &d1 * &col_map[(0, j)]);
    }
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            out.set(i + 1, j + 1, b0[(i, j)].clone());
        }
    }
    reduce_upper(&mut out, side, e);
    Ok(out)
}

/// Canonical reduced representative of the unimodular-equivalence class of
/// `m`, which must have determinant ±(2e+1)^n.
///
/// The result is upper triangular with constant diagonal 2e+1 and
/// off-diagonal entries in `[-e, e]`. Whenever some bidiagonal matrix of
/// that shape has the same invariant chain, the lexicographically smallest
/// superdiagonal (over {0} and the proper divisors of 2e+1) is returned;
/// some chains admit no bidiagonal representative at all (the smallest is
/// (1, 27, 27) for side 9), and those fall back to a dense reduced
/// representative. Equivalence with the input is re-verified before
/// returning.
pub fn bidiagonal_reduction(m: &IntMatrix, e: i64) -> Result<IntMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("reduction of a non-square matrix".into()));
    }
    if e < 0 {
        return Err(Error::InvalidParams("radius e must be nonnegative".into()));
    }
    let side_small = (2i64)
        .checked_mul(e)
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::Overflow("2e+1 exceeds i64".into()))?;
    let side = BigInt::from(side_small);
    let n = m.rows();
    let det = m.det()?;
    let target = num_traits::pow(side.clone(), n);
    if det.abs() != target {
        return Err(Error::InvalidParams(format!(
            "determinant {det} is not ±(2e+1)^n = {target}"
        )));
    }
    let chain = invariant_chain(m);
    let out = chain_representative(&chain, &side, e)?;
    if invariant_chain(&out) != chain {
        return Err(Error::Internal("reduced representative is not equivalent to the input".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn chain_i64(mat: &IntMatrix) -> Vec<i64> {
        invariant_chain(mat)
            .iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn hnf_example() {
        let a = m(&[vec![2, 3], vec![9, 0], vec![0, 9]]);
        let r = hnf(&a);
        assert_eq!(r.h, m(&[vec![1, 6], vec![0, 9], vec![0, 0]]));
        assert_eq!(r.u.mul(&a).unwrap(), r.h);
        assert_eq!(r.u.det().unwrap().abs(), BigInt::from(1));
    }

    #[test]
    fn hnf_canonicalizes_signs_and_residues() {
        let a = m(&[vec![-3, 5], vec![0, -7]]);
        let r = hnf(&a);
        assert_eq!(r.h, m(&[vec![3, 2], vec![0, 7]]));
        assert_eq!(r.u.mul(&a).unwrap(), r.h);
    }

    #[test]
    fn snf_example() {
        let a = m(&[vec![3, 2], vec![0, 3]]);
        let r = snf(&a);
        assert_eq!(r.d, m(&[vec![1, 0], vec![0, 9]]));
        assert_eq!(r.u.mul(&a).unwrap().mul(&r.v).unwrap(), r.d);
        assert_eq!(r.u.det().unwrap().abs(), BigInt::from(1));
        assert_eq!(r.v.det().unwrap().abs(), BigInt::from(1));
    }

    #[test]
    fn snf_divisibility_fixup() {
        let a = IntMatrix::diag_i64(&[4, 6]);
        assert_eq!(chain_i64(&a), vec![2, 12]);
    }

    #[test]
    fn snf_rectangular() {
        let a = m(&[vec![2, 4, 4]]);
        let r = snf(&a);
        assert_eq!(r.d, m(&[vec![2, 0, 0]]));
    }

    #[test]
    fn bareiss_det() {
        let a = m(&[
            vec![1, 3, 0, 0],
            vec![0, 0, 1, 3],
            vec![3, 0, 1, 0],
            vec![0, 0, 3, 0],
        ]);
        assert_eq!(a.det().unwrap(), BigInt::from(-81));
    }

    #[test]
    fn q_inverse_example() {
        let a = m(&[vec![3, 2], vec![0, 3]]);
        assert_eq!(q_inverse(&a, 9).unwrap(), m(&[vec![3, -2], vec![0, 3]]));
    }

    #[test]
    fn q_inverse_rejects_non_integral() {
        let a = m(&[vec![2, 0], vec![0, 1]]);
        assert!(matches!(q_inverse(&a, 9), Err(Error::NotIntegral(_))));
    }

    #[test]
    fn q_inverse_rejects_singular() {
        let a = m(&[vec![1, 1], vec![1, 1]]);
        assert!(matches!(q_inverse(&a, 9), Err(Error::SingularMatrix)));
    }

    #[test]
    fn unimodular_inverse_round_trip() {
        let a = m(&[vec![0, 1], vec![1, -3]]);
        let inv = a.unimodular_inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), IntMatrix::identity(2));
    }

    #[test]
    fn solve_left_upper_membership() {
        let h = m(&[vec![1, 6], vec![0, 9]]);
        let v = [BigInt::from(2), BigInt::from(3)];
        let y = solve_left_upper(&h, &v).unwrap();
        assert_eq!(y, vec![BigInt::from(2), BigInt::from(-1)]);
        let v2 = [BigInt::from(0), BigInt::from(5)];
        assert!(solve_left_upper(&h, &v2).is_none());
    }

    #[test]
    fn reduction_2x2() {
        let a = m(&[vec![3, 2], vec![0, 3]]);
        let r = bidiagonal_reduction(&a, 1).unwrap();
        assert_eq!(r, m(&[vec![3, 1], vec![0, 3]]));
    }

    #[test]
    fn reduction_finds_bidiagonal_3x3() {
        // chain (1, 3, 243) over side 9
        let a = m(&[vec![9, 1, 0], vec![0, 9, 3], vec![0, 0, 9]]);
        assert_eq!(chain_i64(&a), vec![1, 3, 243]);
        let r = bidiagonal_reduction(&a, 4).unwrap();
        assert_eq!(r, a);
        // chain (1, 1, 27) over side 3
        let b = m(&[vec![3, 1, 0], vec![0, 3, 1], vec![0, 0, 3]]);
        assert_eq!(chain_i64(&b), vec![1, 1, 27]);
        assert_eq!(bidiagonal_reduction(&b, 1).unwrap(), b);
    }

    #[test]
    fn reduction_falls_back_when_no_bidiagonal_exists() {
        // No bidiagonal matrix with diagonal 9 has chain (1, 27, 27): the
        // middle determinantal divisor would force gcd(9, s1, s2) > 1.
        let a = m(&[vec![9, 3, 1], vec![0, 9, 3], vec![0, 0, 9]]);
        assert_eq!(chain_i64(&a), vec![1, 27, 27]);
        let r = bidiagonal_reduction(&a, 4).unwrap();
        assert_eq!(chain_i64(&r), vec![1, 27, 27]);
        assert!(r.is_upper_triangular());
        for i in 0..3 {
            assert_eq!(r[(i, i)], BigInt::from(9));
            for j in i + 1..3 {
                assert!(r[(i, j)].abs() <= BigInt::from(4));
            }
        }
        assert!(gamma_equivalent(&a, &r));
        assert_eq!(bidiagonal_reduction(&a, 4).unwrap(), r);
    }

    #[test]
    fn reduction_rejects_wrong_determinant() {
        let a = m(&[vec![3, 0], vec![0, 5]]);
        assert!(matches!(bidiagonal_reduction(&a, 1), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn gamma_equivalence_by_chain() {
        let a = m(&[vec![3, 1], vec![0, 3]]);
        let b = m(&[vec![1, 0], vec![0, 9]]);
        assert!(gamma_equivalent(&a, &b));
        let c = m(&[vec![3, 0], vec![0, 3]]);
        assert!(!gamma_equivalent(&a, &c));
    }
}
