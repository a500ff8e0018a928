//! Structured Clifford operators with O(N) to O(N log N) vector action.
//!
//! Operators are kept as ordered lists of primitive factors (basis
//! permutations, quartic diagonals, partial Hadamards, and sign patterns);
//! a dense `N x N` form exists only as a small-`m` oracle for tests and for
//! reading off the induced symplectic action. Global phase is not tracked
//! across factors: the group is projective and all downstream comparisons
//! are projective too.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gf2::{BitMat, BitVec};
use crate::pauli::{rotate_quarter_turns, Pauli};
use crate::symplectic::{CosetLabel, SymplecticMatrix};

/// Indicator that two vectors agree on their last `m - r` coordinates:
/// the product of `1 + v_i + w_i` over the tail positions, over GF(2).
pub fn tails_agree(v: &BitVec, w: &BitVec, r: usize) -> bool {
    debug_assert_eq!(v.len(), w.len());
    let tail = v.len() - r;
    v.tail(tail) == w.tail(tail)
}

/// A primitive unitary factor.
#[derive(Clone, Debug)]
pub enum CliffordFactor {
    /// `e_v -> e_(P^T v)` for invertible `P`: an index permutation.
    BasisPermutation(BitMat),
    /// `diag(i^(v^T S v mod 4))` for symmetric `S`, integer-lifted exponent.
    QuarticDiagonal(BitMat),
    /// Normalized Hadamard on the first `r` tensor positions.
    PartialHadamard(usize),
    /// `I_(2^r) (x) sigma_z^(x)(m-r)`: sign flip on odd-parity tails.
    SignPattern(usize),
}

/// A Clifford operator as an ordered product of primitive factors;
/// `factors[0]` is the leftmost factor, so application runs right-to-left.
#[derive(Clone, Debug)]
pub struct CliffordOp {
    m: usize,
    factors: Vec<CliffordFactor>,
}

impl CliffordOp {
    pub fn new(m: usize, factors: Vec<CliffordFactor>) -> Result<Self> {
        for f in &factors {
            match f {
                CliffordFactor::BasisPermutation(p) => {
                    if p.rows() != m || p.cols() != m {
                        return Err(Error::Dimension("permutation factor must be m x m".into()));
                    }
                    if !p.is_invertible() {
                        return Err(Error::Singular);
                    }
                }
                CliffordFactor::QuarticDiagonal(s) => {
                    if s.rows() != m || !s.is_symmetric() {
                        return Err(Error::Domain(
                            "quartic diagonal factor needs a symmetric m x m matrix".into(),
                        ));
                    }
                }
                CliffordFactor::PartialHadamard(r) | CliffordFactor::SignPattern(r) => {
                    if *r > m {
                        return Err(Error::Domain(format!("factor rank {r} exceeds {m}")));
                    }
                }
            }
        }
        Ok(CliffordOp { m, factors })
    }

    pub fn identity(m: usize) -> Self {
        CliffordOp { m, factors: Vec::new() }
    }

    /// The synthesis operator of a coset label,
    /// `G_D(P^T) G_U(S) G_Omega(r) Z(m, r)`: its columns are exactly the
    /// codewords sharing the label, including the per-column sign carried by
    /// the trailing sign pattern.
    pub fn synthesis_operator(label: &CosetLabel) -> Self {
        let r = label.rank();
        CliffordOp {
            m: label.ambient_dim(),
            factors: vec![
                CliffordFactor::BasisPermutation(label.subspace().completion().transpose()),
                CliffordFactor::QuarticDiagonal(label.embedded_form()),
                CliffordFactor::PartialHadamard(r),
                CliffordFactor::SignPattern(r),
            ],
        }
    }

    pub fn num_positions(&self) -> usize {
        self.m
    }

    pub fn factors(&self) -> &[CliffordFactor] {
        &self.factors
    }

    /// Operator product: `self` applied after `rhs`.
    pub fn mul(&self, rhs: &CliffordOp) -> CliffordOp {
        assert_eq!(self.m, rhs.m);
        let mut factors = self.factors.clone();
        factors.extend(rhs.factors.iter().cloned());
        CliffordOp { m: self.m, factors }
    }

    /// Applies the operator to a vector of length `2^m`, rightmost factor
    /// first.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), 1 << self.m, "vector length must be 2^m");
        let mut v = x.to_vec();
        for f in self.factors.iter().rev() {
            apply_factor(self.m, f, &mut v);
        }
        v
    }

    /// Materializes the operator column by column. Limited to `m <= 5`:
    /// nothing outside tests and the symplectic-image probe needs it.
    pub fn dense(&self) -> Result<Vec<Vec<Complex64>>> {
        if self.m > 5 {
            return Err(Error::Resource(format!(
                "dense materialization limited to m <= 5, got m = {}",
                self.m
            )));
        }
        let n = 1usize << self.m;
        let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for v in 0..n {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[v] = Complex64::new(1.0, 0.0);
            let image = self.apply(&e);
            for w in 0..n {
                out[w][v] = image[w];
            }
        }
        Ok(out)
    }

    /// The symplectic action induced by conjugation: the matrix whose `i`-th
    /// row is `c_i` where `G E(e_i) G^dag = +/- E(c_i)`.
    ///
    /// Composition reverses under this map: the image of `a.mul(&b)` is
    /// `image(b) * image(a)`, because the symplectic matrices act on row
    /// vectors from the right. Uses the dense form, so `m <= 5`.
    pub fn symplectic_image(&self) -> Result<SymplecticMatrix> {
        let m = self.m;
        let n = 1usize << m;
        let g = self.dense()?;
        let mut g_dag = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for i in 0..n {
            for j in 0..n {
                g_dag[i][j] = g[j][i].conj();
            }
        }
        let mut rows = Vec::with_capacity(2 * m);
        for i in 0..2 * m {
            let (a, b) = if i < m {
                (BitVec::standard_basis(m, i), BitVec::zeros(m))
            } else {
                (BitVec::zeros(m), BitVec::standard_basis(m, i - m))
            };
            let pauli = Pauli::e_normalized(a, b);
            let conjugated = conjugate_dense(&g, &g_dag, &pauli);
            let c = identify_pauli(m, &conjugated)?;
            rows.push(c);
        }
        let mat = BitMat::from_rows(&rows);
        SymplecticMatrix::from_matrix(mat)
    }
}

fn apply_factor(m: usize, factor: &CliffordFactor, v: &mut Vec<Complex64>) {
    let n = v.len();
    match factor {
        CliffordFactor::BasisPermutation(p) => {
            // e_v -> e_(P^T v): entry at index(P^T v) comes from index(v).
            let cols: Vec<u32> = (0..m).map(|j| p.column(j).index() as u32).collect();
            let mut out = vec![Complex64::new(0.0, 0.0); n];
            for (idx, &value) in v.iter().enumerate() {
                let mut target = 0usize;
                for (j, &col) in cols.iter().enumerate() {
                    if (col & idx as u32).count_ones() & 1 == 1 {
                        target |= 1 << (m - 1 - j);
                    }
                }
                out[target] = value;
            }
            *v = out;
        }
        CliffordFactor::QuarticDiagonal(s) => {
            for (idx, value) in v.iter_mut().enumerate() {
                *value = rotate_quarter_turns(*value, s.quadratic_form_mod4(idx));
            }
        }
        CliffordFactor::PartialHadamard(r) => {
            // Butterflies on the r most significant index bits.
            for i in 0..*r {
                let h = 1usize << (m - 1 - i);
                let mut base = 0;
                while base < n {
                    for j in base..base + h {
                        let x = v[j];
                        let y = v[j + h];
                        v[j] = x + y;
                        v[j + h] = x - y;
                    }
                    base += 2 * h;
                }
            }
            let norm = (1.0 / (1u64 << r) as f64).sqrt();
            for value in v.iter_mut() {
                *value *= norm;
            }
        }
        CliffordFactor::SignPattern(r) => {
            let tail_mask = (1usize << (m - r)) - 1;
            for (idx, value) in v.iter_mut().enumerate() {
                if (idx & tail_mask).count_ones() & 1 == 1 {
                    *value = -*value;
                }
            }
        }
    }
}

fn conjugate_dense(
    g: &[Vec<Complex64>],
    g_dag: &[Vec<Complex64>],
    p: &Pauli,
) -> Vec<Vec<Complex64>> {
    let n = g.len();
    // E acts on columns of G^dag in O(N^2), then one dense product.
    let mut e_gdag = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for j in 0..n {
        let col: Vec<Complex64> = (0..n).map(|i| g_dag[i][j]).collect();
        let image = p.apply(&col);
        for i in 0..n {
            e_gdag[i][j] = image[i];
        }
    }
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            let gik = g[i][k];
            if gik.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += gik * e_gdag[k][j];
            }
        }
    }
    out
}

/// Recognizes a dense matrix as `+/- E(c, d)` and returns the row vector
/// `(c, d)`; errors when the matrix is not a signed Pauli.
fn identify_pauli(m: usize, mat: &[Vec<Complex64>]) -> Result<BitVec> {
    let n = 1usize << m;
    let tol = 1e-9;
    let not_pauli = || Error::Domain("conjugate of a basis Pauli is not a Pauli".into());

    let mut c = None;
    for (w, row) in mat.iter().enumerate() {
        if row[0].norm() > tol {
            if c.is_some() {
                return Err(not_pauli());
            }
            c = Some(w);
        }
    }
    let c = c.ok_or_else(not_pauli)?;
    let mut d = 0usize;
    for j in 0..m {
        let fj = 1usize << (m - 1 - j);
        let ratio = mat[c ^ fj][fj] / mat[c][0];
        if (ratio - Complex64::new(-1.0, 0.0)).norm() < tol {
            d |= fj;
        } else if (ratio - Complex64::new(1.0, 0.0)).norm() > tol {
            return Err(not_pauli());
        }
    }

    let e = Pauli::e_normalized(BitVec::from_index(c, m), BitVec::from_index(d, m));
    let mut basis = vec![Complex64::new(0.0, 0.0); n];
    basis[0] = Complex64::new(1.0, 0.0);
    let reference = e.apply(&basis)[c];
    let sign = mat[c][0] / reference;
    if (sign.norm() - 1.0).abs() > tol || sign.im.abs() > tol {
        return Err(not_pauli());
    }
    // Full verification against the signed Pauli.
    for v in 0..n {
        let mut ev = vec![Complex64::new(0.0, 0.0); n];
        ev[v] = Complex64::new(1.0, 0.0);
        let col = e.apply(&ev);
        for w in 0..n {
            if (mat[w][v] - sign * col[w]).norm() > tol {
                return Err(not_pauli());
            }
        }
    }
    Ok(BitVec::from_index(c, m).concat(&BitVec::from_index(d, m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BinarySubspace;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn from_cols(cols: &[&[u8]]) -> BitMat {
        let v: Vec<BitVec> = cols.iter().map(|col| BitVec::from_bits(col)).collect();
        BitMat::from_columns(&v)
    }

    fn approx_eq(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() < tol)
    }

    fn basis_vector(n: usize, v: usize) -> Vec<Complex64> {
        let mut e = vec![c(0.0, 0.0); n];
        e[v] = c(1.0, 0.0);
        e
    }

    fn random_op(m: usize, rng: &mut StdRng) -> CliffordOp {
        let n_factors = rng.random_range(1..=4);
        let factors = (0..n_factors)
            .map(|_| match rng.random_range(0..4) {
                0 => {
                    // random invertible matrix by rejection
                    loop {
                        let mut p = BitMat::zeros(m, m);
                        for i in 0..m {
                            for j in 0..m {
                                p.set(i, j, rng.random::<bool>());
                            }
                        }
                        if p.is_invertible() {
                            break CliffordFactor::BasisPermutation(p);
                        }
                    }
                }
                1 => {
                    let mut s = BitMat::zeros(m, m);
                    for i in 0..m {
                        for j in i..m {
                            let bit = rng.random::<bool>();
                            s.set(i, j, bit);
                            s.set(j, i, bit);
                        }
                    }
                    CliffordFactor::QuarticDiagonal(s)
                }
                2 => CliffordFactor::PartialHadamard(rng.random_range(0..=m)),
                _ => CliffordFactor::SignPattern(rng.random_range(0..=m)),
            })
            .collect();
        CliffordOp::new(m, factors).unwrap()
    }

    #[test]
    fn tails_agree_examples() {
        let m2 = |bits: &[u8]| BitVec::from_bits(bits);
        assert!(tails_agree(&m2(&[0, 1]), &m2(&[1, 1]), 2), "empty tail");
        assert!(!tails_agree(&m2(&[0, 0]), &m2(&[0, 1]), 1));
        assert!(tails_agree(&m2(&[1, 0]), &m2(&[0, 0]), 1));
        assert!(!tails_agree(
            &BitVec::from_bits(&[0, 1, 1]),
            &BitVec::from_bits(&[0, 0, 1]),
            1
        ));
    }

    #[test]
    fn full_hadamard_flattens_delta() {
        for m in 1..=4usize {
            let n = 1usize << m;
            let op = CliffordOp::new(m, vec![CliffordFactor::PartialHadamard(m)]).unwrap();
            let flat = op.apply(&basis_vector(n, 0));
            let expected = vec![c(1.0 / (n as f64).sqrt(), 0.0); n];
            assert!(approx_eq(&flat, &expected, 1e-12));
        }
    }

    #[test]
    fn quartic_diagonal_m1() {
        let mut s = BitMat::zeros(1, 1);
        s.set(0, 0, true);
        let op = CliffordOp::new(1, vec![CliffordFactor::QuarticDiagonal(s)]).unwrap();
        let x = vec![c(1.0, 0.0), c(1.0, 0.0)];
        let y = op.apply(&x);
        assert!(approx_eq(&y, &[c(1.0, 0.0), c(0.0, 1.0)], 1e-15));
    }

    #[test]
    fn basis_permutation_worked_example() {
        // P with columns (1,0) and (1,1) sends indices 0,1,2,3 to 0,1,3,2.
        let p = from_cols(&[&[1, 0], &[1, 1]]);
        let op = CliffordOp::new(2, vec![CliffordFactor::BasisPermutation(p)]).unwrap();
        let images: Vec<usize> = (0..4)
            .map(|v| {
                let y = op.apply(&basis_vector(4, v));
                (0..4).find(|&w| y[w].norm() > 0.5).unwrap()
            })
            .collect();
        assert_eq!(images, vec![0, 1, 3, 2]);
    }

    #[test]
    fn dense_identity_and_hadamard() {
        let id = CliffordOp::identity(2).dense().unwrap();
        for (i, row) in id.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((z - c(expected, 0.0)).norm() < 1e-15);
            }
        }
        let h = CliffordOp::new(1, vec![CliffordFactor::PartialHadamard(1)])
            .unwrap()
            .dense()
            .unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(approx_eq(&h[0], &[c(s, 0.0), c(s, 0.0)], 1e-15));
        assert!(approx_eq(&h[1], &[c(s, 0.0), c(-s, 0.0)], 1e-15));
    }

    #[test]
    fn dense_rejects_large_m() {
        let op = CliffordOp::identity(6);
        assert!(matches!(op.dense(), Err(Error::Resource(_))));
    }

    #[test]
    fn hadamard_sign_pattern_closed_form() {
        // dense(G_Omega(r) Z(m,r)) = (-1)^(v.w) [tails agree] / sqrt(2^r).
        for m in 1..=4usize {
            for r in 0..=m {
                let op = CliffordOp::new(
                    m,
                    vec![
                        CliffordFactor::PartialHadamard(r),
                        CliffordFactor::SignPattern(r),
                    ],
                )
                .unwrap();
                let dense = op.dense().unwrap();
                let scale = 1.0 / ((1u64 << r) as f64).sqrt();
                let n = 1usize << m;
                for v in 0..n {
                    for w in 0..n {
                        let vv = BitVec::from_index(v, m);
                        let wv = BitVec::from_index(w, m);
                        let mut expected = 0.0;
                        if tails_agree(&vv, &wv, r) {
                            expected = if (v & w).count_ones() % 2 == 0 { scale } else { -scale };
                        }
                        assert!(
                            (dense[v][w] - c(expected, 0.0)).norm() < 1e-12,
                            "m={m} r={r} v={v} w={w}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn random_ops_are_unitary_and_structured_apply_matches_dense() {
        let mut rng = StdRng::seed_from_u64(23);
        for m in 1..=4usize {
            let n = 1usize << m;
            for _ in 0..13 {
                let op = random_op(m, &mut rng);
                let dense = op.dense().unwrap();
                // G^dag G = I.
                for i in 0..n {
                    for j in 0..n {
                        let dot: Complex64 =
                            (0..n).map(|k| dense[k][i].conj() * dense[k][j]).sum();
                        let expected = if i == j { 1.0 } else { 0.0 };
                        assert!(
                            (dot - c(expected, 0.0)).norm() < 1e-12,
                            "not unitary at m={m}"
                        );
                    }
                }
                // Structured apply equals dense times x.
                let x: Vec<Complex64> = (0..n)
                    .map(|_| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                    .collect();
                let fast = op.apply(&x);
                let slow: Vec<Complex64> = (0..n)
                    .map(|w| (0..n).map(|v| dense[w][v] * x[v]).sum())
                    .collect();
                assert!(approx_eq(&fast, &slow, 1e-12));
            }
        }
    }

    #[test]
    fn symplectic_image_of_generators() {
        // Permutation factor maps to the block-diagonal generator.
        let p = from_cols(&[&[1, 0], &[1, 1]]);
        let op = CliffordOp::new(2, vec![CliffordFactor::BasisPermutation(p.clone())]).unwrap();
        assert_eq!(
            op.symplectic_image().unwrap(),
            SymplecticMatrix::linear(&p).unwrap()
        );

        // Quartic diagonal maps to the shear.
        let s = from_cols(&[&[1, 1], &[1, 0]]);
        let op = CliffordOp::new(2, vec![CliffordFactor::QuarticDiagonal(s.clone())]).unwrap();
        assert_eq!(
            op.symplectic_image().unwrap(),
            SymplecticMatrix::shear(&s).unwrap()
        );

        // Full Hadamard swaps the halves.
        for m in 1..=3usize {
            let op = CliffordOp::new(m, vec![CliffordFactor::PartialHadamard(m)]).unwrap();
            assert_eq!(
                op.symplectic_image().unwrap(),
                SymplecticMatrix::partial_swap(m, m).unwrap()
            );
        }

        // The sign pattern is a Pauli: symplectic image is the identity.
        let op = CliffordOp::new(2, vec![CliffordFactor::SignPattern(1)]).unwrap();
        assert_eq!(op.symplectic_image().unwrap(), SymplecticMatrix::identity(2));
    }

    #[test]
    fn symplectic_image_reverses_composition() {
        let mut rng = StdRng::seed_from_u64(31);
        for m in 1..=3usize {
            for _ in 0..8 {
                let op1 = random_op(m, &mut rng);
                let op2 = random_op(m, &mut rng);
                let image = op1.mul(&op2).symplectic_image().unwrap();
                let expected = op2
                    .symplectic_image()
                    .unwrap()
                    .mul(&op1.symplectic_image().unwrap());
                assert_eq!(image, expected);
            }
        }
    }

    #[test]
    fn synthesis_operator_image_matches_label_action() {
        // The induced symplectic action of the synthesis operator is
        // swap * shear * linear(P^T), i.e. the label's coset representative.
        for m in 1..=2usize {
            for label in CosetLabel::enumerate(m) {
                let op = CliffordOp::synthesis_operator(&label);
                let image = op.symplectic_image().unwrap();
                assert_eq!(image, label.representative(), "label {label:?}");
            }
        }
    }

    #[test]
    fn rejects_invalid_factors() {
        let singular = from_cols(&[&[1, 1], &[1, 1]]);
        assert!(CliffordOp::new(2, vec![CliffordFactor::BasisPermutation(singular)]).is_err());
        let asym = from_cols(&[&[0, 0], &[1, 0]]);
        assert!(CliffordOp::new(2, vec![CliffordFactor::QuarticDiagonal(asym)]).is_err());
        assert!(CliffordOp::new(2, vec![CliffordFactor::PartialHadamard(3)]).is_err());
    }

    #[test]
    fn rank_zero_label_has_identity_like_columns() {
        let label = CosetLabel::new(BinarySubspace::zero(2), BitMat::zeros(0, 0)).unwrap();
        let op = CliffordOp::synthesis_operator(&label);
        let dense = op.dense().unwrap();
        for v in 0..4usize {
            for w in 0..4usize {
                let mag = dense[w][v].norm();
                let expected = if v == w { 1.0 } else { 0.0 };
                assert!((mag - expected).abs() < 1e-12);
            }
        }
    }
}
