//! Dense bit-packed linear algebra over GF(2).
//!
//! Vectors and matrix rows are packed least-significant-bit first into `u64`
//! words, so bit `i` lives in word `i / 64` at position `i % 64`. Bits beyond
//! the logical length are always zero; every mutating operation preserves
//! that, which lets equality and hashing work on the raw words.
//!
//! Matrices act on column vectors: `M · v` has bit `i` equal to the parity of
//! `row_i & v`, and `A · B` means "apply `B`, then `A`".

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[inline]
fn tail_mask(bits: usize) -> u64 {
    match bits % WORD_BITS {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The `i`-th standard basis vector.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Builds a vector whose bit `i` is bit `i` of `value`. Handy for
    /// enumerating all vectors of a small space.
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= WORD_BITS, "from_u64 supports at most 64 bits");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = value & tail_mask(len);
        }
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Inverse of [`BitVector::from_u64`] for vectors of at most 64 bits.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= WORD_BITS, "to_u64 supports at most 64 bits");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD_BITS + w.trailing_zeros() as usize)
    }

    /// Indices of set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * WORD_BITS + t)
            })
        })
    }

    /// In-place addition (XOR).
    pub fn add_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn add(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Standard dot product `Σ xᵢyᵢ` mod 2.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "vector length mismatch");
        dot_words(&self.words, &other.words)
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// The sub-vector of bits `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        assert!(start + len <= self.len);
        let mut out = BitVector::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        let mut v = BitVector { len, words };
        if let Some(last) = v.words.last_mut() {
            *last &= tail_mask(len);
        }
        v
    }
}

#[inline]
fn dot_words(a: &[u64], b: &[u64]) -> bool {
    a.iter()
        .zip(b)
        .fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones())
        & 1
        == 1
}

/// Lexicographic order on the bit string (bit 0 first, `0 < 1`), then length.
impl Ord for BitVector {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let bit = diff.trailing_zeros();
                return if (a >> bit) & 1 == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({})", self.to_bit_string())
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut v = BitVector::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::parse(
                        1,
                        format!("unexpected character {other:?} in bit string"),
                    ))
                }
            }
        }
        Ok(v)
    }
}

/// A dense `rows × cols` matrix over GF(2), stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has the wrong length");
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    /// The matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has the wrong length");
            for i in c.ones() {
                m.set(i, j, true);
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        (self.data[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        let idx = i * self.stride + j / WORD_BITS;
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(i).to_vec())
    }

    pub fn column(&self, j: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn row_vectors(&self) -> Vec<BitVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn columns(&self) -> Vec<BitVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row(i).ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Entry-wise sum.
    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        Ok(out)
    }

    /// `self + Id`; over GF(2) this is also `self − Id`.
    pub fn add_identity(&self) -> BitMatrix {
        assert!(self.is_square(), "add_identity needs a square matrix");
        let mut out = self.clone();
        for i in 0..self.rows {
            let idx = i * self.stride + i / WORD_BITS;
            out.data[idx] ^= 1u64 << (i % WORD_BITS);
        }
        out
    }

    /// Matrix product `self · other`.
    pub fn multiply(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let dst = i * out.stride;
            for (kw, &word) in self.row_words(i).iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let k = kw * WORD_BITS + word.trailing_zeros() as usize;
                    word &= word - 1;
                    let src = k * other.stride;
                    for w in 0..out.stride {
                        out.data[dst + w] ^= other.data[src + w];
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(self.cols, v.len(), "matrix/vector dimension mismatch");
        let mut out = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            if dot_words(self.row_words(i), v.words()) {
                out.set(i, true);
            }
        }
        out
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn block_diag(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in self.row(i).ones() {
                out.set(i, j, true);
            }
        }
        for i in 0..other.rows {
            for j in other.row(i).ones() {
                out.set(self.rows + i, self.cols + j, true);
            }
        }
        out
    }

    fn reduce(&self, rhs: Option<&BitVector>) -> Echelon {
        let mut rows: Vec<Vec<u64>> = (0..self.rows).map(|i| self.row_words(i).to_vec()).collect();
        let mut rhs: Vec<bool> = match rhs {
            Some(v) => (0..self.rows).map(|i| v.get(i)).collect(),
            None => vec![false; self.rows],
        };
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let (w, mask) = (col / WORD_BITS, 1u64 << (col % WORD_BITS));
            let Some(p) = (r..self.rows).find(|&i| rows[i][w] & mask != 0) else {
                continue;
            };
            rows.swap(r, p);
            rhs.swap(r, p);
            let pivot_row = rows[r].clone();
            let pivot_rhs = rhs[r];
            for i in 0..self.rows {
                if i != r && rows[i][w] & mask != 0 {
                    for (a, b) in rows[i].iter_mut().zip(&pivot_row) {
                        *a ^= b;
                    }
                    rhs[i] ^= pivot_rhs;
                }
            }
            pivots.push(col);
            r += 1;
        }
        Echelon { rows, rhs, pivots }
    }

    /// Row rank over GF(2).
    pub fn rank(&self) -> usize {
        self.reduce(None).pivots.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// A solution of `self · x = v`, or `None` when `v` lies outside the
    /// image. Free variables are always set to zero, so the answer is a
    /// deterministic function of the inputs.
    pub fn solve(&self, v: &BitVector) -> Result<Option<BitVector>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        let ech = self.reduce(Some(v));
        if ech.rhs[ech.pivots.len()..].iter().any(|&b| b) {
            return Ok(None);
        }
        let mut x = BitVector::zeros(self.cols);
        for (r, &col) in ech.pivots.iter().enumerate() {
            if ech.rhs[r] {
                x.set(col, true);
            }
        }
        Ok(Some(x))
    }

    /// Basis of the null space, one vector per free column in increasing
    /// column order.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let ech = self.reduce(None);
        let mut is_pivot = vec![false; self.cols];
        for &c in &ech.pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVector::unit(self.cols, f);
                let (w, mask) = (f / WORD_BITS, 1u64 << (f % WORD_BITS));
                for (r, &pc) in ech.pivots.iter().enumerate() {
                    if ech.rows[r][w] & mask != 0 {
                        v.set(pc, true);
                    }
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<BitMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut columns = Vec::with_capacity(n);
        for j in 0..n {
            columns.push(self.solve(&BitVector::unit(n, j)).ok()??);
        }
        Some(BitMatrix::from_columns(n, &columns))
    }

    /// Row-major bit string of all entries.
    pub fn to_bit_string(&self) -> String {
        (0..self.rows)
            .map(|i| self.row(i).to_bit_string())
            .collect()
    }

    /// Renders the matrix text format: `rows cols` followed by one line of
    /// bits per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            s.push_str(&self.row(i).to_bit_string());
            s.push('\n');
        }
        s
    }

    /// Parses the matrix text format. Blank lines are ignored.
    pub fn from_text(text: &str) -> Result<BitMatrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty matrix text"))?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let parse_dim = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::parse(hline + 1, format!("invalid dimension {s:?}")))
        };
        let [r, c] = dims.as_slice() else {
            return Err(Error::parse(hline + 1, "header must be `rows cols`"));
        };
        let (rows, cols) = (parse_dim(r)?, parse_dim(c)?);
        let mut m = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            let (ln, line) = lines.next().ok_or_else(|| {
                Error::parse(hline + 2 + i, format!("expected {rows} rows, found {i}"))
            })?;
            let row = parse_bits(line, ln + 1)?;
            if row.len() != cols {
                return Err(Error::parse(
                    ln + 1,
                    format!("row has {} bits, expected {cols}", row.len()),
                ));
            }
            m.row_words_mut(i).copy_from_slice(row.words());
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln + 1, "trailing content after matrix rows"));
        }
        Ok(m)
    }
}

/// Parses a `{0,1}` string, reporting `line` on failure.
pub(crate) fn parse_bits(s: &str, line: usize) -> Result<BitVector> {
    s.parse::<BitVector>().map_err(|e| match e {
        Error::Parse { message, .. } => Error::Parse { line, message },
        other => other,
    })
}

struct Echelon {
    rows: Vec<Vec<u64>>,
    rhs: Vec<bool>,
    pivots: Vec<usize>,
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&self.row(i).to_bit_string())?;
        }
        f.write_str("]")
    }
}

/// Row-major lexicographic order on the entries, then shape.
impl Ord for BitMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        (0..self.rows.min(other.rows))
            .map(|i| self.row(i).cmp(&other.row(i)))
            .find(|o| o.is_ne())
            .unwrap_or_else(|| (self.rows, self.cols).cmp(&(other.rows, other.cols)))
    }
}

impl PartialOrd for BitMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&str]) -> BitMatrix {
        let vs: Vec<BitVector> = rows.iter().map(|r| r.parse().unwrap()).collect();
        BitMatrix::from_rows(vs.first().map_or(0, |v| v.len()), &vs)
    }

    fn v(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(4).rank(), 4);
        assert_eq!(BitMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(m(&["11", "11"]).rank(), 1);
    }

    #[test]
    fn multiply_examples() {
        let a = m(&["101", "011", "110"]);
        assert_eq!(a.multiply(&BitMatrix::identity(3)).unwrap(), a);
        let swap = m(&["01", "10"]);
        assert_eq!(swap.multiply(&swap).unwrap(), BitMatrix::identity(2));
        assert!(a.multiply(&BitMatrix::zeros(3, 2)).unwrap().is_zero());
        assert!(matches!(
            a.multiply(&BitMatrix::zeros(2, 2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn solve_examples() {
        assert_eq!(
            BitMatrix::identity(3).solve(&v("101")).unwrap(),
            Some(v("101"))
        );
        assert_eq!(BitMatrix::zeros(2, 2).solve(&v("10")).unwrap(), None);
        // Of the inputs 00, 10, 01, 11 only 10 and 01 hit (1,1); zero free
        // variables selects 10.
        assert_eq!(m(&["11", "11"]).solve(&v("11")).unwrap(), Some(v("10")));
        assert!(BitMatrix::identity(2).solve(&v("1")).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert!(BitMatrix::identity(3).kernel_basis().is_empty());
        let k = BitMatrix::zeros(3, 3).kernel_basis();
        assert_eq!(k, vec![v("100"), v("010"), v("001")]);
        assert_eq!(m(&["11", "11"]).kernel_basis(), vec![v("11")]);
    }

    #[test]
    fn ordering_is_lexicographic_on_bit_strings() {
        let mut xs = [v("011"), v("100"), v("001"), v("010")];
        xs.sort();
        let s: Vec<String> = xs.iter().map(|x| x.to_bit_string()).collect();
        assert_eq!(s, ["001", "010", "011", "100"]);
    }

    #[test]
    fn text_format_round_trip_and_errors() {
        let a = m(&["101", "011"]);
        assert_eq!(a.to_text(), "2 3\n101\n011\n");
        assert_eq!(BitMatrix::from_text(&a.to_text()).unwrap(), a);
        assert!(BitMatrix::from_text("2 2\n01\n").unwrap_err().is_parse());
        assert!(BitMatrix::from_text("2 2\n01\n1x\n")
            .unwrap_err()
            .is_parse());
        assert!(BitMatrix::from_text("1 2\n011\n").unwrap_err().is_parse());
        assert_eq!(
            BitMatrix::from_text("0 0\n").unwrap(),
            BitMatrix::identity(0)
        );
    }

    #[test]
    fn wide_vectors_cross_word_boundaries() {
        let n = 130;
        let mut a = BitMatrix::identity(n);
        a.set(0, 129, true);
        a.set(64, 3, true);
        let inv = a.inverse().unwrap();
        assert_eq!(a.multiply(&inv).unwrap(), BitMatrix::identity(n));
        let x = BitVector::unit(n, 129);
        assert_eq!(a.mul_vec(&x).ones().collect::<Vec<_>>(), vec![0, 129]);
    }

    #[test]
    fn rank_nullity_exhaustive_up_to_4x4() {
        for rows in 1..=4usize {
            for cols in 1..=4usize {
                for bits in 0u64..(1 << (rows * cols)) {
                    let mut a = BitMatrix::zeros(rows, cols);
                    for k in 0..rows * cols {
                        if bits >> k & 1 == 1 {
                            a.set(k / cols, k % cols, true);
                        }
                    }
                    let kernel = a.kernel_basis();
                    assert_eq!(a.rank() + kernel.len(), cols);
                    assert!(kernel.iter().all(|k| a.mul_vec(k).is_zero()));
                }
            }
        }
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = BitMatrix> {
        prop::collection::vec(any::<bool>(), rows * cols).prop_map(move |bits| {
            let mut a = BitMatrix::zeros(rows, cols);
            for (k, b) in bits.into_iter().enumerate() {
                a.set(k / cols, k % cols, b);
            }
            a
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_random(a in (1usize..80, 1usize..80).prop_flat_map(|(r, c)| arb_matrix(r, c))) {
            prop_assert_eq!(a.rank() + a.kernel_basis().len(), a.cols());
            prop_assert!(a.rank() <= a.rows().min(a.cols()));
        }

        #[test]
        fn solve_recovers_images(
            (a, x) in (1usize..70, 1usize..70).prop_flat_map(|(r, c)| {
                (arb_matrix(r, c), prop::collection::vec(any::<bool>(), c))
            })
        ) {
            let x = BitVector::from_bits(&x);
            let b = a.mul_vec(&x);
            let y = a.solve(&b).unwrap().expect("image vector must be solvable");
            prop_assert_eq!(a.mul_vec(&y), b);
        }

        #[test]
        fn multiply_is_associative(
            (a, b, c) in (1usize..20, 1usize..20, 1usize..20, 1usize..20)
                .prop_flat_map(|(p, q, r, s)| (arb_matrix(p, q), arb_matrix(q, r), arb_matrix(r, s)))
        ) {
            let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
            let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            prop_assert_eq!(BitMatrix::identity(a.rows()).multiply(&a).unwrap(), a.clone());
            prop_assert_eq!(a.multiply(&BitMatrix::identity(a.cols())).unwrap(), a);
        }
    }
}
