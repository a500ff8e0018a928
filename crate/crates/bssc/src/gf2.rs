//! Bit-packed linear algebra over GF(2).
//!
//! Vectors and matrices are packed into machine words (one word per column),
//! so products, ranks and echelon forms reduce to word-parallel XOR. Ambient
//! dimensions up to 32 bits are supported, which covers every caller in this
//! crate (vectors of length `m <= 16` and symplectic vectors of length `2m`).
//!
//! Index convention: position `i` of a vector of length `n` is stored in word
//! bit `n - 1 - i`, so the packed word read as an unsigned integer equals the
//! big-endian integer image `sum_i v_i * 2^(n-1-i)`. This matches the tensor
//! ordering used for signal indices elsewhere in the crate.

use std::fmt;

use crate::error::{Error, Result};

/// A binary vector of fixed length `len <= 32`, packed into one word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    bits: u32,
    len: u8,
}

impl BitVec {
    /// The zero vector of the given length.
    pub fn zeros(len: usize) -> Self {
        assert!(len <= 32, "BitVec supports length <= 32, got {len}");
        BitVec { bits: 0, len: len as u8 }
    }

    /// Builds a vector from its big-endian integer image.
    pub fn from_index(index: usize, len: usize) -> Self {
        assert!(len <= 32);
        assert!(len == 32 || index < (1usize << len), "index {index} out of range for length {len}");
        BitVec { bits: index as u32, len: len as u8 }
    }

    /// Builds a vector from explicit 0/1 entries, position 0 first.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            debug_assert!(b <= 1);
            v.set(i, b == 1);
        }
        v
    }

    /// Standard basis vector with a 1 at `pos`.
    pub fn standard_basis(len: usize, pos: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(pos, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn get(&self, pos: usize) -> bool {
        debug_assert!(pos < self.len());
        (self.bits >> (self.len() - 1 - pos)) & 1 == 1
    }

    pub fn set(&mut self, pos: usize, value: bool) {
        debug_assert!(pos < self.len());
        let mask = 1u32 << (self.len() - 1 - pos);
        if value {
            self.bits |= mask;
        } else {
            self.bits &= !mask;
        }
    }

    /// Big-endian integer image of the vector.
    pub fn index(&self) -> usize {
        self.bits as usize
    }

    /// Hamming weight.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Sum over GF(2), i.e. bitwise XOR.
    pub fn xor(&self, other: &BitVec) -> BitVec {
        debug_assert_eq!(self.len, other.len);
        BitVec { bits: self.bits ^ other.bits, len: self.len }
    }

    /// Inner product over GF(2): parity of the overlap.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        (self.bits & other.bits).count_ones() & 1 == 1
    }

    /// Overlap size over the integers, i.e. `sum_i a_i b_i` without reduction.
    pub fn overlap(&self, other: &BitVec) -> u32 {
        debug_assert_eq!(self.len, other.len);
        (self.bits & other.bits).count_ones()
    }

    /// New vector made of the entries at `positions`, in the given order.
    pub fn select(&self, positions: &[usize]) -> BitVec {
        let mut out = BitVec::zeros(positions.len());
        for (k, &p) in positions.iter().enumerate() {
            out.set(k, self.get(p));
        }
        out
    }

    /// Concatenation `[self | tail]`.
    pub fn concat(&self, tail: &BitVec) -> BitVec {
        let len = self.len() + tail.len();
        assert!(len <= 32);
        BitVec {
            bits: (self.bits << tail.len()) | tail.bits,
            len: len as u8,
        }
    }

    /// The first `n` entries.
    pub fn head(&self, n: usize) -> BitVec {
        debug_assert!(n <= self.len());
        BitVec {
            bits: if n == 0 { 0 } else { self.bits >> (self.len() - n) },
            len: n as u8,
        }
    }

    /// The last `n` entries.
    pub fn tail(&self, n: usize) -> BitVec {
        debug_assert!(n <= self.len());
        BitVec {
            bits: if n == 0 { 0 } else { self.bits & (u32::MAX >> (32 - n)) },
            len: n as u8,
        }
    }

    /// Iterator over entries as booleans, position 0 first.
    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A binary matrix with column-major packed storage, one word per column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMat {
    rows: usize,
    cols: Vec<u32>,
}

impl BitMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows <= 32);
        BitMat { rows, cols: vec![0; cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_columns(columns: &[BitVec]) -> Self {
        let rows = columns.first().map_or(0, BitVec::len);
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            m.cols[j] = c.bits;
        }
        m
    }

    pub fn from_rows(rows: &[BitVec]) -> Self {
        let cols = rows.first().map_or(0, BitVec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            for j in 0..cols {
                m.set(i, j, r.get(j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        debug_assert!(row < self.rows && col < self.cols());
        (self.cols[col] >> (self.rows - 1 - row)) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        debug_assert!(row < self.rows && col < self.cols());
        let mask = 1u32 << (self.rows - 1 - row);
        if value {
            self.cols[col] |= mask;
        } else {
            self.cols[col] &= !mask;
        }
    }

    pub fn column(&self, col: usize) -> BitVec {
        BitVec { bits: self.cols[col], len: self.rows as u8 }
    }

    pub fn row(&self, row: usize) -> BitVec {
        let mut v = BitVec::zeros(self.cols());
        for j in 0..self.cols() {
            v.set(j, self.get(row, j));
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|&c| c == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.rows {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Matrix-vector product over GF(2).
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        debug_assert_eq!(self.cols(), v.len());
        let mut acc = 0u32;
        for j in 0..self.cols() {
            if v.get(j) {
                acc ^= self.cols[j];
            }
        }
        BitVec { bits: acc, len: self.rows as u8 }
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, rhs: &BitMat) -> BitMat {
        assert_eq!(self.cols(), rhs.rows, "inner dimension mismatch");
        let mut out = BitMat::zeros(self.rows, rhs.cols());
        for j in 0..rhs.cols() {
            out.cols[j] = self.mul_vec(&rhs.column(j)).bits;
        }
        out
    }

    /// Sum over GF(2).
    pub fn add(&self, rhs: &BitMat) -> BitMat {
        assert_eq!((self.rows, self.cols()), (rhs.rows, rhs.cols()));
        BitMat {
            rows: self.rows,
            cols: self.cols.iter().zip(&rhs.cols).map(|(a, b)| a ^ b).collect(),
        }
    }

    pub fn transpose(&self) -> BitMat {
        let mut out = BitMat::zeros(self.cols(), self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols() {
                if self.get(i, j) {
                    out.set(j, i, true);
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &BitMat) -> BitMat {
        assert_eq!(self.rows, rhs.rows);
        let mut cols = self.cols.clone();
        cols.extend_from_slice(&rhs.cols);
        BitMat { rows: self.rows, cols }
    }

    /// The submatrix formed by the rows at `positions`, in the given order.
    pub fn select_rows(&self, positions: &[usize]) -> BitMat {
        let mut out = BitMat::zeros(positions.len(), self.cols());
        for (i, &p) in positions.iter().enumerate() {
            for j in 0..self.cols() {
                if self.get(p, j) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<u32> = (0..self.rows).map(|i| self.row(i).bits).collect();
        row_reduce(&mut rows, self.cols()).len()
    }

    /// Inverse over GF(2), or `None` when singular.
    pub fn inverse(&self) -> Option<BitMat> {
        if self.rows != self.cols() {
            return None;
        }
        let n = self.rows;
        // Gauss-Jordan on [self | I] stored as row words of width 2n.
        let mut aug: Vec<u64> = (0..n)
            .map(|i| {
                let left = self.row(i).bits as u64;
                (left << n) | (1u64 << (n - 1 - i))
            })
            .collect();
        for col in 0..n {
            let bit = 1u64 << (2 * n - 1 - col);
            let pivot = (col..n).find(|&i| aug[i] & bit != 0)?;
            aug.swap(col, pivot);
            for i in 0..n {
                if i != col && aug[i] & bit != 0 {
                    aug[i] ^= aug[col];
                }
            }
        }
        let mut inv = BitMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if (aug[i] >> (n - 1 - j)) & 1 == 1 {
                    inv.set(i, j, true);
                }
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols() && self.rank() == self.rows
    }

    /// Evaluates `v^T M v mod 4` with the binary entries of `v` lifted to
    /// integers; `v` is given by its big-endian integer image.
    pub fn quadratic_form_mod4(&self, v: usize) -> u8 {
        debug_assert_eq!(self.rows, self.cols());
        let n = self.rows;
        let mut exp = 0u32;
        for i in 0..n {
            if (v >> (n - 1 - i)) & 1 == 0 {
                continue;
            }
            for j in 0..n {
                if (v >> (n - 1 - j)) & 1 == 1 && self.get(i, j) {
                    exp += 1;
                }
            }
        }
        (exp % 4) as u8
    }

    /// Renders the matrix as rows of '0'/'1' characters, one row per line.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            for j in 0..self.cols() {
                s.push(if self.get(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for BitMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMat({}x{}):\n{}", self.rows, self.cols(), self.render())
    }
}

/// Row reduction to reduced echelon form on packed row words of width `width`.
/// Bit `width - 1 - j` of a word is entry `j`. Returns the nonzero rows with
/// their pivot columns, pivots ascending.
fn row_reduce(rows: &mut [u32], width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..width {
        let bit = 1u32 << (width - 1 - col);
        let Some(found) = (next..rows.len()).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(next, found);
        for i in 0..rows.len() {
            if i != next && rows[i] & bit != 0 {
                rows[i] ^= rows[next];
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    pivots
}

/// An `r`-dimensional subspace of GF(2)^m with its canonical echelon basis,
/// leading positions, dual basis, and invertible completion.
///
/// The basis is in column reduced echelon form: column `j` has its first
/// nonzero entry at the `j`-th leading position, and the leading rows carry
/// an identity block. The dual basis spans the orthogonal complement, and the
/// completion extends the basis columns with identity columns at the
/// non-leading positions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinarySubspace {
    ambient: usize,
    leading: Vec<usize>,
    basis: BitMat,
    dual_basis: BitMat,
    completion: BitMat,
    completion_inv_t: BitMat,
}

impl BinarySubspace {
    /// Canonicalizes the span of `generators` inside GF(2)^m.
    ///
    /// Returns the subspace with its column reduced echelon basis; all
    /// generators must have length `m`.
    pub fn from_generators(m: usize, generators: &[BitVec]) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.len() != m) {
            return Err(Error::Dimension(format!(
                "generator of length {} in ambient dimension {m}",
                bad.len()
            )));
        }
        let mut rows: Vec<u32> = generators.iter().map(|g| g.bits).collect();
        let pivots = row_reduce(&mut rows, m);
        let basis_cols: Vec<BitVec> = rows[..pivots.len()]
            .iter()
            .map(|&w| BitVec { bits: w, len: m as u8 })
            .collect();
        Ok(Self::from_echelon(m, pivots, &basis_cols))
    }

    /// The zero subspace of GF(2)^m.
    pub fn zero(m: usize) -> Self {
        Self::from_echelon(m, Vec::new(), &[])
    }

    /// The full space GF(2)^m.
    pub fn full(m: usize) -> Self {
        let cols: Vec<BitVec> = (0..m).map(|i| BitVec::standard_basis(m, i)).collect();
        Self::from_echelon(m, (0..m).collect(), &cols)
    }

    /// Assembles the subspace from leading positions and echelon basis
    /// columns. `basis_cols[j]` must have its pivot at `leading[j]`.
    fn from_echelon(m: usize, leading: Vec<usize>, basis_cols: &[BitVec]) -> Self {
        let r = leading.len();
        let co_leading: Vec<usize> = (0..m).filter(|i| !leading.contains(i)).collect();
        let basis = BitMat::from_columns(basis_cols);
        let basis = if r == 0 { BitMat::zeros(m, 0) } else { basis };

        // Dual basis: identity block at the non-leading rows, and the
        // transposed free block at the leading rows.
        let mut dual = BitMat::zeros(m, m - r);
        for (k, &p) in co_leading.iter().enumerate() {
            dual.set(p, k, true);
            for (j, &q) in leading.iter().enumerate() {
                if basis.get(p, j) {
                    dual.set(q, k, true);
                }
            }
        }

        let mut completion = BitMat::zeros(m, m);
        let mut completion_inv_t = BitMat::zeros(m, m);
        for j in 0..r {
            for i in 0..m {
                if basis.get(i, j) {
                    completion.set(i, j, true);
                }
            }
            completion_inv_t.set(leading[j], j, true);
        }
        for (k, &p) in co_leading.iter().enumerate() {
            completion.set(p, r + k, true);
            for i in 0..m {
                if dual.get(i, k) {
                    completion_inv_t.set(i, r + k, true);
                }
            }
        }

        let sub = BinarySubspace {
            ambient: m,
            leading,
            basis,
            dual_basis: dual,
            completion,
            completion_inv_t,
        };
        debug_assert!(sub.check_identities());
        sub
    }

    fn check_identities(&self) -> bool {
        let id_sel = self.identity_at_leading();
        let id_co = self.identity_at_co_leading();
        id_sel.transpose().mul(&self.basis) == BitMat::identity(self.rank())
            && id_sel.transpose().mul(&id_co) == BitMat::zeros(self.rank(), self.ambient - self.rank())
            && self.dual_basis.transpose().mul(&id_co)
                == BitMat::identity(self.ambient - self.rank())
            && self.basis.transpose().mul(&self.dual_basis)
                == BitMat::zeros(self.rank(), self.ambient - self.rank())
            && self.completion.mul(&self.completion_inv_t.transpose()) == BitMat::identity(self.ambient)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.leading.len()
    }

    /// Leading positions, ascending, 0-based.
    pub fn leading(&self) -> &[usize] {
        &self.leading
    }

    /// Non-leading positions, ascending, 0-based.
    pub fn co_leading(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.leading.contains(i)).collect()
    }

    /// Leading set as a bitmask over positions, big-endian like `BitVec`.
    pub fn leading_mask(&self) -> usize {
        let mut v = BitVec::zeros(self.ambient);
        for &p in &self.leading {
            v.set(p, true);
        }
        v.index()
    }

    /// The free-entry counter of the echelon basis within its leading-set
    /// cell, matching the enumeration order of [`grassmannian`].
    pub fn cell_bits(&self) -> u64 {
        let slots = free_slots(self.ambient, &self.leading);
        let mut bits = 0u64;
        for (t, &(j, row)) in slots.iter().enumerate() {
            if self.basis.get(row, j) {
                bits |= 1 << t;
            }
        }
        bits
    }

    /// The echelon basis, `m x r`.
    pub fn basis(&self) -> &BitMat {
        &self.basis
    }

    /// The constructed dual basis, `m x (m - r)`, orthogonal to the basis.
    pub fn dual_basis(&self) -> &BitMat {
        &self.dual_basis
    }

    /// The invertible completion `[basis | identity at non-leading]`.
    pub fn completion(&self) -> &BitMat {
        &self.completion
    }

    /// Transposed inverse of the completion.
    pub fn completion_inv_t(&self) -> &BitMat {
        &self.completion_inv_t
    }

    /// Inverse of the completion.
    pub fn completion_inv(&self) -> BitMat {
        self.completion_inv_t.transpose()
    }

    /// The `m x r` selector of identity columns at the leading positions.
    pub fn identity_at_leading(&self) -> BitMat {
        let mut m = BitMat::zeros(self.ambient, self.rank());
        for (j, &p) in self.leading.iter().enumerate() {
            m.set(p, j, true);
        }
        m
    }

    /// The `m x (m - r)` selector of identity columns at the non-leading
    /// positions.
    pub fn identity_at_co_leading(&self) -> BitMat {
        let co = self.co_leading();
        let mut m = BitMat::zeros(self.ambient, co.len());
        for (j, &p) in co.iter().enumerate() {
            m.set(p, j, true);
        }
        m
    }

    /// The dual subspace, canonicalized.
    pub fn dual(&self) -> BinarySubspace {
        let cols: Vec<BitVec> = (0..self.dual_basis.cols())
            .map(|j| self.dual_basis.column(j))
            .collect();
        Self::from_generators(self.ambient, &cols).expect("dual basis has ambient length")
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        // v is in the span iff it is orthogonal to the dual basis.
        (0..self.dual_basis.cols()).all(|j| !self.dual_basis.column(j).dot(v))
    }

    /// All `2^r` elements, ordered by coordinate vector.
    pub fn elements(&self) -> Vec<BitVec> {
        let r = self.rank();
        (0..1usize << r)
            .map(|t| self.basis.mul_vec(&BitVec::from_index(t, r)))
            .collect()
    }

    /// Coordinates of a member vector: the entries at the leading positions.
    pub fn coordinates(&self, v: &BitVec) -> BitVec {
        v.select(&self.leading)
    }
}

impl fmt::Debug for BinarySubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BinarySubspace(m={}, r={}, leading={:?}):\n{}",
            self.ambient,
            self.rank(),
            self.leading,
            self.basis.render()
        )
    }
}

/// All solutions of `A x = c` over GF(2), enumerated deterministically.
///
/// When `A` has full row rank `m - r` the solution set is a coset of size
/// `2^r`, listed with the homogeneous part cycling fastest in coordinate
/// order. An inconsistent system is an error, which distinguishes it from a
/// consistent system with a unique solution.
pub fn solve_affine(a: &BitMat, c: &BitVec) -> Result<Vec<BitVec>> {
    if a.rows() != c.len() {
        return Err(Error::Dimension(format!(
            "system has {} equations but rhs has length {}",
            a.rows(),
            c.len()
        )));
    }
    let n = a.cols();
    // Eliminate on [A | c] packed as row words of width n + 1.
    let mut rows: Vec<u32> = (0..a.rows())
        .map(|i| (a.row(i).bits << 1) | u32::from(c.get(i)))
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..n {
        let bit = 1u32 << (n - col);
        let Some(found) = (next..rows.len()).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(next, found);
        for i in 0..rows.len() {
            if i != next && rows[i] & bit != 0 {
                rows[i] ^= rows[next];
            }
        }
        pivots.push(col);
        next += 1;
    }
    if rows[next..].iter().any(|&w| w & 1 != 0) {
        return Err(Error::Inconsistent);
    }

    let mut particular = BitVec::zeros(n);
    for (k, &p) in pivots.iter().enumerate() {
        particular.set(p, rows[k] & 1 == 1);
    }
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    // Basis of the kernel: one vector per free column.
    let kernel: Vec<BitVec> = free
        .iter()
        .map(|&j| {
            let mut v = BitVec::zeros(n);
            v.set(j, true);
            let bit = 1u32 << (n - j);
            for (k, &p) in pivots.iter().enumerate() {
                if rows[k] & bit != 0 {
                    v.set(p, true);
                }
            }
            v
        })
        .collect();

    let mut out = Vec::with_capacity(1 << kernel.len());
    for t in 0..1usize << kernel.len() {
        let mut x = particular;
        for (k, kv) in kernel.iter().enumerate() {
            if (t >> (kernel.len() - 1 - k)) & 1 == 1 {
                x = x.xor(kv);
            }
        }
        out.push(x);
    }
    Ok(out)
}

/// The Gaussian binomial coefficient `[m, r]_2`: the number of
/// `r`-dimensional subspaces of GF(2)^m.
pub fn gaussian_binomial(m: usize, r: usize) -> u64 {
    if r > m {
        return 0;
    }
    // Product formula (2^m - 2^k) / (2^r - 2^k); exact in u128 for m <= 16.
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for k in 0..r {
        num *= (1u128 << m) - (1u128 << k);
        den *= (1u128 << r) - (1u128 << k);
    }
    (num / den) as u64
}

/// Lexicographically ordered `r`-subsets of `{0, .., m-1}`.
fn leading_sets(m: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(r);
    fn go(m: usize, r: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == r {
            out.push(current.clone());
            return;
        }
        for i in start..m {
            current.push(i);
            go(m, r, i + 1, current, out);
            current.pop();
        }
    }
    go(m, r, 0, &mut current, &mut out);
    out
}

/// Free entry slots of the echelon form for a leading set: pairs
/// `(column, row)` with the row non-leading and below the column's pivot,
/// ordered by column then row.
fn free_slots(m: usize, leading: &[usize]) -> Vec<(usize, usize)> {
    let mut slots = Vec::new();
    for (j, &p) in leading.iter().enumerate() {
        for row in (p + 1)..m {
            if !leading.contains(&row) {
                slots.push((j, row));
            }
        }
    }
    slots
}

fn subspace_from_cell(m: usize, leading: &[usize], free_bits: usize) -> BinarySubspace {
    let slots = free_slots(m, leading);
    let mut cols: Vec<BitVec> = leading
        .iter()
        .map(|&p| BitVec::standard_basis(m, p))
        .collect();
    for (t, &(j, row)) in slots.iter().enumerate() {
        if (free_bits >> t) & 1 == 1 {
            cols[j].set(row, true);
        }
    }
    BinarySubspace::from_echelon(m, leading.to_vec(), &cols)
}

/// Enumerates the Grassmannian of `r`-dimensional subspaces of GF(2)^m in a
/// deterministic order: lexicographic by leading set, then by free entry
/// bits read as a counter (bit `t` of the counter fills the `t`-th free slot
/// in column-then-row order).
pub fn grassmannian(m: usize, r: usize) -> Result<impl Iterator<Item = BinarySubspace>> {
    if r > m {
        return Err(Error::Domain(format!("rank {r} exceeds ambient dimension {m}")));
    }
    let sets = leading_sets(m, r);
    Ok(sets.into_iter().flat_map(move |leading| {
        let n_free = free_slots(m, &leading).len();
        (0..1usize << n_free).map(move |bits| subspace_from_cell(m, &leading, bits))
    }))
}

/// Number of free entry bits for each leading set of `grassmannian(m, r)`,
/// in enumeration order. Used for indexed access into the enumeration.
fn cell_sizes(m: usize, r: usize) -> Vec<(Vec<usize>, usize)> {
    leading_sets(m, r)
        .into_iter()
        .map(|l| {
            let n = free_slots(m, &l).len();
            (l, n)
        })
        .collect()
}

/// The `index`-th subspace of `grassmannian(m, r)` without full enumeration.
pub fn subspace_at(m: usize, r: usize, index: u64) -> Result<BinarySubspace> {
    let mut rest = index;
    for (leading, n_free) in cell_sizes(m, r) {
        let cell = 1u64 << n_free;
        if rest < cell {
            return Ok(subspace_from_cell(m, &leading, rest as usize));
        }
        rest -= cell;
    }
    Err(Error::Domain(format!(
        "subspace index {index} out of range for G({m},{r};2)"
    )))
}

/// Position of a canonical subspace inside `grassmannian(m, r)`.
pub fn subspace_index(sub: &BinarySubspace) -> u64 {
    let m = sub.ambient_dim();
    let r = sub.rank();
    let mut offset = 0u64;
    for (leading, n_free) in cell_sizes(m, r) {
        if leading == sub.leading() {
            return offset + sub.cell_bits();
        }
        offset += 1u64 << n_free;
    }
    unreachable!("canonical subspace not found in its own Grassmannian");
}
