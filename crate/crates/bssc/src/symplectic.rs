//! The binary symplectic group Sp(2m;2) in Bruhat-generator form.
//!
//! Elements act on row vectors `(a, b)` of length `2m` from the right and
//! preserve the symplectic form `<(a,b),(c,d)> = b.c + a.d`. Only the forward
//! constructions are provided: the block-diagonal and upper-unipotent
//! generators, the rank-`r` partial swap, and the canonical representative of
//! a right coset modulo the subgroup generated by the first two. Decomposing
//! an arbitrary symplectic matrix into Bruhat factors is not needed anywhere
//! in this crate and is intentionally absent.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{gaussian_binomial, grassmannian, subspace_at, subspace_index, BinarySubspace, BitMat, BitVec};

/// The symplectic bilinear form of two length-`2m` vectors.
pub fn symplectic_inner(c1: &BitVec, c2: &BitVec) -> bool {
    assert_eq!(c1.len(), c2.len(), "symplectic form needs equal lengths");
    assert_eq!(c1.len() % 2, 0, "symplectic vectors have even length");
    let m = c1.len() / 2;
    c1.tail(m).dot(&c2.head(m)) ^ c1.head(m).dot(&c2.tail(m))
}

/// The Gram matrix of the symplectic form: `[[0, I], [I, 0]]`.
pub fn form_matrix(m: usize) -> BitMat {
    let zero = BitMat::zeros(m, m);
    let id = BitMat::identity(m);
    assemble_blocks(&zero, &id, &id, &zero)
}

fn assemble_blocks(ul: &BitMat, ur: &BitMat, ll: &BitMat, lr: &BitMat) -> BitMat {
    let m = ul.rows();
    let mut out = BitMat::zeros(2 * m, 2 * m);
    for i in 0..m {
        for j in 0..m {
            if ul.get(i, j) {
                out.set(i, j, true);
            }
            if ur.get(i, j) {
                out.set(i, j + m, true);
            }
            if ll.get(i, j) {
                out.set(i + m, j, true);
            }
            if lr.get(i, j) {
                out.set(i + m, j + m, true);
            }
        }
    }
    out
}

/// The diagonal projector with `I_r` in the upper-left corner and 0 elsewhere.
fn identity_truncated(m: usize, r: usize) -> BitMat {
    let mut out = BitMat::zeros(m, m);
    for i in 0..r {
        out.set(i, i, true);
    }
    out
}

/// An element of Sp(2m;2).
#[derive(Clone, PartialEq, Eq)]
pub struct SymplecticMatrix {
    m: usize,
    mat: BitMat,
}

impl SymplecticMatrix {
    pub fn identity(m: usize) -> Self {
        SymplecticMatrix { m, mat: BitMat::identity(2 * m) }
    }

    /// Wraps an explicit `2m x 2m` matrix, validating that it preserves the
    /// form.
    pub fn from_matrix(mat: BitMat) -> Result<Self> {
        if mat.rows() != mat.cols() || mat.rows() % 2 != 0 {
            return Err(Error::Dimension("symplectic matrices are 2m x 2m".into()));
        }
        let f = SymplecticMatrix { m: mat.rows() / 2, mat };
        if !f.preserves_form() {
            return Err(Error::Domain("matrix does not preserve the symplectic form".into()));
        }
        Ok(f)
    }

    /// The block-diagonal element `[[P, 0], [0, P^-T]]` for invertible `P`.
    pub fn linear(p: &BitMat) -> Result<Self> {
        let m = p.rows();
        if p.cols() != m {
            return Err(Error::Dimension("linear generator needs a square matrix".into()));
        }
        let Some(p_inv) = p.inverse() else {
            return Err(Error::Singular);
        };
        let zero = BitMat::zeros(m, m);
        Ok(SymplecticMatrix {
            m,
            mat: assemble_blocks(p, &zero, &zero, &p_inv.transpose()),
        })
    }

    /// The upper-unipotent element `[[I, S], [0, I]]` for symmetric `S`.
    pub fn shear(s: &BitMat) -> Result<Self> {
        if !s.is_symmetric() {
            return Err(Error::Domain("shear generator needs a symmetric matrix".into()));
        }
        let m = s.rows();
        let zero = BitMat::zeros(m, m);
        let id = BitMat::identity(m);
        Ok(SymplecticMatrix { m, mat: assemble_blocks(&id, s, &zero, &id) })
    }

    /// The involutory partial swap exchanging the first `r` coordinate pairs.
    pub fn partial_swap(m: usize, r: usize) -> Result<Self> {
        if r > m {
            return Err(Error::Domain(format!("swap rank {r} exceeds dimension {m}")));
        }
        let on = identity_truncated(m, r);
        let off = identity_truncated(m, r).add(&BitMat::identity(m));
        Ok(SymplecticMatrix { m, mat: assemble_blocks(&off, &on, &on, &off) })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn matrix(&self) -> &BitMat {
        &self.mat
    }

    pub fn mul(&self, rhs: &SymplecticMatrix) -> SymplecticMatrix {
        assert_eq!(self.m, rhs.m);
        SymplecticMatrix { m: self.m, mat: self.mat.mul(&rhs.mat) }
    }

    /// Inverse via the form: `F^-1 = Omega F^T Omega`.
    pub fn inverse(&self) -> SymplecticMatrix {
        let om = form_matrix(self.m);
        SymplecticMatrix { m: self.m, mat: om.mul(&self.mat.transpose()).mul(&om) }
    }

    /// Image `c^T F` of a row vector under right action.
    pub fn row_action(&self, c: &BitVec) -> BitVec {
        assert_eq!(c.len(), 2 * self.m);
        self.mat.transpose().mul_vec(c)
    }

    /// Whether the matrix preserves the symplectic form.
    pub fn preserves_form(&self) -> bool {
        let om = form_matrix(self.m);
        self.mat.mul(&om).mul(&self.mat.transpose()) == om
    }
}

impl fmt::Debug for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymplecticMatrix(m={}):\n{}", self.m, self.mat.render())
    }
}

/// Label of a coset of Sp(2m;2) modulo the subgroup of products of linear
/// and shear generators: a rank, a subspace, and a symmetric form on the
/// subspace coordinates. Labels biject with maximal stabilizers and with
/// codeword-set classes downstream.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CosetLabel {
    subspace: BinarySubspace,
    quad_form: BitMat,
}

impl CosetLabel {
    pub fn new(subspace: BinarySubspace, quad_form: BitMat) -> Result<Self> {
        let r = subspace.rank();
        if quad_form.rows() != r || quad_form.cols() != r {
            return Err(Error::Dimension(format!(
                "quadratic form is {}x{} for rank {r}",
                quad_form.rows(),
                quad_form.cols()
            )));
        }
        if !quad_form.is_symmetric() {
            return Err(Error::Domain("quadratic form must be symmetric".into()));
        }
        Ok(CosetLabel { subspace, quad_form })
    }

    pub fn ambient_dim(&self) -> usize {
        self.subspace.ambient_dim()
    }

    pub fn rank(&self) -> usize {
        self.subspace.rank()
    }

    pub fn subspace(&self) -> &BinarySubspace {
        &self.subspace
    }

    /// The symmetric `r x r` form `S_r`.
    pub fn quad_form(&self) -> &BitMat {
        &self.quad_form
    }

    /// `S_r` embedded in the upper-left corner of an `m x m` matrix.
    pub fn embedded_form(&self) -> BitMat {
        let m = self.ambient_dim();
        let mut out = BitMat::zeros(m, m);
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                if self.quad_form.get(i, j) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    /// Upper-triangle bits of `S_r` as a counter: bit `t` is the `t`-th pair
    /// `(i, j)`, `i <= j`, ordered by `i` then `j`.
    pub fn form_bits(&self) -> u64 {
        let r = self.rank();
        let mut bits = 0u64;
        let mut t = 0;
        for i in 0..r {
            for j in i..r {
                if self.quad_form.get(i, j) {
                    bits |= 1 << t;
                }
                t += 1;
            }
        }
        bits
    }

    pub fn form_from_bits(r: usize, bits: u64) -> BitMat {
        let mut s = BitMat::zeros(r, r);
        let mut t = 0;
        for i in 0..r {
            for j in i..r {
                if (bits >> t) & 1 == 1 {
                    s.set(i, j, true);
                    s.set(j, i, true);
                }
                t += 1;
            }
        }
        s
    }

    /// Number of coset labels for one rank: `[m, r]_2 * 2^(r(r+1)/2)`.
    pub fn count_for_rank(m: usize, r: usize) -> u64 {
        gaussian_binomial(m, r) << (r * (r + 1) / 2)
    }

    /// Total number of coset labels over all ranks.
    pub fn count(m: usize) -> u64 {
        (0..=m).map(|r| Self::count_for_rank(m, r)).sum()
    }

    /// Enumerates every label exactly once: rank ascending, then subspace in
    /// Grassmannian order, then form bits as a counter.
    pub fn enumerate(m: usize) -> impl Iterator<Item = CosetLabel> {
        (0..=m).flat_map(move |r| {
            grassmannian(m, r)
                .expect("rank in range")
                .flat_map(move |sub| {
                    (0..1u64 << (r * (r + 1) / 2)).map(move |bits| CosetLabel {
                        subspace: sub.clone(),
                        quad_form: Self::form_from_bits(r, bits),
                    })
                })
        })
    }

    /// The label at `index` in enumeration order, without full enumeration.
    pub fn at_index(m: usize, index: u64) -> Result<CosetLabel> {
        let mut rest = index;
        for r in 0..=m {
            let block = Self::count_for_rank(m, r);
            if rest < block {
                let forms = 1u64 << (r * (r + 1) / 2);
                let sub = subspace_at(m, r, rest / forms)?;
                return Ok(CosetLabel {
                    subspace: sub,
                    quad_form: Self::form_from_bits(r, rest % forms),
                });
            }
            rest -= block;
        }
        Err(Error::Domain(format!("coset index {index} out of range for m={m}")))
    }

    /// Position of this label in enumeration order.
    pub fn index(&self) -> u64 {
        let m = self.ambient_dim();
        let r = self.rank();
        let before: u64 = (0..r).map(|k| Self::count_for_rank(m, k)).sum();
        let forms = 1u64 << (r * (r + 1) / 2);
        before + subspace_index(&self.subspace) * forms + self.form_bits()
    }

    /// The canonical representative of the labelled coset: the product of
    /// the rank-`r` partial swap, the shear of the embedded form, and the
    /// linear generator of the transposed completion.
    ///
    /// The subgroup of linear-shear products multiplies representatives on
    /// the left. In this order the last `m` rows of the representative are
    /// `[I_(m|r) P^T | (I_(m|r) S + I_(m|-r)) P^-1]`, the generator matrix of
    /// the label's maximal stabilizer, which is exactly the coset invariant:
    /// distinct labels give distinct row spaces. The completion enters
    /// transposed because it is stored with the subspace basis in its
    /// columns while the group acts on row vectors.
    pub fn representative(&self) -> SymplecticMatrix {
        let m = self.ambient_dim();
        let f_lin = SymplecticMatrix::linear(&self.subspace.completion().transpose())
            .expect("completion is invertible");
        let f_shear = SymplecticMatrix::shear(&self.embedded_form()).expect("form is symmetric");
        let f_swap = SymplecticMatrix::partial_swap(m, self.rank()).expect("rank in range");
        f_swap.mul(&f_shear).mul(&f_lin)
    }
}

impl fmt::Debug for CosetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CosetLabel(m={}, r={}, leading={:?}, form_bits={})",
            self.ambient_dim(),
            self.rank(),
            self.subspace.leading(),
            self.form_bits()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(bits: &[u8]) -> BitVec {
        BitVec::from_bits(bits)
    }

    /// Matrix written as a list of columns, matching the packed layout.
    fn from_cols(cols: &[&[u8]]) -> BitMat {
        let v: Vec<BitVec> = cols.iter().map(|c| BitVec::from_bits(c)).collect();
        BitMat::from_columns(&v)
    }

    #[test]
    fn linear_of_identity_is_identity() {
        let f = SymplecticMatrix::linear(&BitMat::identity(3)).unwrap();
        assert_eq!(f, SymplecticMatrix::identity(3));
    }

    #[test]
    fn linear_lower_right_block_is_transposed_inverse() {
        let p = from_cols(&[&[1, 0], &[1, 1]]);
        let f = SymplecticMatrix::linear(&p).unwrap();
        let expected = from_cols(&[&[1, 1], &[0, 1]]);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(f.matrix().get(2 + i, 2 + j), expected.get(i, j));
            }
        }
        assert!(f.preserves_form());
    }

    #[test]
    fn linear_is_a_homomorphism() {
        let p1 = from_cols(&[&[1, 1], &[0, 1]]);
        let p2 = from_cols(&[&[0, 1], &[1, 0]]);
        let lhs = SymplecticMatrix::linear(&p1)
            .unwrap()
            .mul(&SymplecticMatrix::linear(&p2).unwrap());
        let rhs = SymplecticMatrix::linear(&p1.mul(&p2)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn linear_rejects_singular() {
        let p = from_cols(&[&[1, 1], &[1, 1]]);
        assert!(matches!(SymplecticMatrix::linear(&p), Err(Error::Singular)));
    }

    #[test]
    fn shear_is_additive_and_validates() {
        let zero = BitMat::zeros(2, 2);
        assert_eq!(
            SymplecticMatrix::shear(&zero).unwrap(),
            SymplecticMatrix::identity(2)
        );
        let s1 = from_cols(&[&[1, 1], &[1, 0]]);
        let s2 = from_cols(&[&[0, 1], &[1, 1]]);
        let lhs = SymplecticMatrix::shear(&s1)
            .unwrap()
            .mul(&SymplecticMatrix::shear(&s2).unwrap());
        assert_eq!(lhs, SymplecticMatrix::shear(&s1.add(&s2)).unwrap());

        let asym = from_cols(&[&[0, 0], &[1, 0]]);
        assert!(SymplecticMatrix::shear(&asym).is_err());

        // m=1, S=[1]: the 2x2 unipotent preserves the form.
        let s = from_cols(&[&[1]]);
        let f = SymplecticMatrix::shear(&s).unwrap();
        assert_eq!(f.matrix().render(), "11\n01\n");
        assert!(f.preserves_form());
    }

    #[test]
    fn partial_swap_examples() {
        assert_eq!(
            SymplecticMatrix::partial_swap(2, 0).unwrap(),
            SymplecticMatrix::identity(2)
        );
        let f = SymplecticMatrix::partial_swap(1, 1).unwrap();
        assert_eq!(f.matrix().render(), "01\n10\n");
        for m in 1..=3 {
            for r in 0..=m {
                let f = SymplecticMatrix::partial_swap(m, r).unwrap();
                assert_eq!(f.mul(&f), SymplecticMatrix::identity(m), "involution");
                assert!(f.preserves_form());
            }
        }
        assert!(SymplecticMatrix::partial_swap(2, 3).is_err());
    }

    #[test]
    fn representative_examples() {
        // r = 0: every factor is trivial.
        let label = CosetLabel::new(BinarySubspace::zero(2), BitMat::zeros(0, 0)).unwrap();
        assert_eq!(label.representative(), SymplecticMatrix::identity(2));

        // m=1, r=1, S=[0]: only the swap survives.
        let label = CosetLabel::new(BinarySubspace::full(1), BitMat::zeros(1, 1)).unwrap();
        assert_eq!(label.representative().matrix().render(), "01\n10\n");

        // m=2, r=1, H = span{[1,1]}, S=[1]: product of the three factors.
        let sub = BinarySubspace::from_generators(2, &[bv(&[1, 1])]).unwrap();
        let mut s = BitMat::zeros(1, 1);
        s.set(0, 0, true);
        let label = CosetLabel::new(sub.clone(), s.clone()).unwrap();
        let rep = label.representative();
        assert!(rep.preserves_form());
        let by_hand = SymplecticMatrix::partial_swap(2, 1)
            .unwrap()
            .mul(&SymplecticMatrix::shear(&label.embedded_form()).unwrap())
            .mul(&SymplecticMatrix::linear(&sub.completion().transpose()).unwrap());
        assert_eq!(rep, by_hand);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(CosetLabel::count(1), 3);
        assert_eq!(CosetLabel::count(2), 15);
        assert_eq!(CosetLabel::count(3), 135);
        for m in 1..=3 {
            assert_eq!(CosetLabel::enumerate(m).count() as u64, CosetLabel::count(m));
        }
    }

    #[test]
    fn enumeration_round_trips_through_index() {
        for m in 1..=3 {
            for (i, label) in CosetLabel::enumerate(m).enumerate() {
                assert_eq!(label.index(), i as u64);
                assert_eq!(CosetLabel::at_index(m, i as u64).unwrap(), label);
            }
        }
    }

    #[test]
    fn every_representative_preserves_the_form() {
        for m in 1..=3 {
            for label in CosetLabel::enumerate(m) {
                assert!(label.representative().preserves_form());
            }
        }
    }

    #[test]
    fn representatives_lie_in_distinct_cosets() {
        // The subgroup of linear*shear products at m=2 has 6 * 8 elements.
        // It multiplies representatives on the left, so distinct labels
        // F1, F2 must have F1 F2^-1 outside it. The label count 15 equals
        // |Sp(4;2)| / 48 = 720 / 48, so distinctness means the labels
        // exhaust the quotient.
        let m = 2;
        let mut subgroup = Vec::new();
        for p_bits in 0..16u32 {
            let mut p = BitMat::zeros(m, m);
            for i in 0..m {
                for j in 0..m {
                    if (p_bits >> (i * m + j)) & 1 == 1 {
                        p.set(i, j, true);
                    }
                }
            }
            if !p.is_invertible() {
                continue;
            }
            for s_bits in 0..8u64 {
                let s = CosetLabel::form_from_bits(m, s_bits);
                let el = SymplecticMatrix::linear(&p)
                    .unwrap()
                    .mul(&SymplecticMatrix::shear(&s).unwrap());
                if !subgroup.contains(&el) {
                    subgroup.push(el);
                }
            }
        }
        assert_eq!(subgroup.len(), 48);

        let labels: Vec<CosetLabel> = CosetLabel::enumerate(m).collect();
        for (i, l1) in labels.iter().enumerate() {
            for l2 in labels.iter().skip(i + 1) {
                let quot = l1.representative().mul(&l2.representative().inverse());
                assert!(
                    !subgroup.contains(&quot),
                    "labels {l1:?} and {l2:?} share a coset"
                );
            }
        }
    }

    #[test]
    fn inner_product_examples() {
        // m=1: <(1,0),(0,1)> = 1.
        assert!(symplectic_inner(&bv(&[1, 0]), &bv(&[0, 1])));
        // Alternating: <c, c> = 0.
        for bits in 0..16 {
            let c = BitVec::from_index(bits, 4);
            assert!(!symplectic_inner(&c, &c));
        }
        // m=2: <(10,01),(01,10)> = 0.
        assert!(!symplectic_inner(&bv(&[1, 0, 0, 1]), &bv(&[0, 1, 1, 0])));
    }

    #[test]
    fn inverse_agrees_with_matrix_inverse() {
        for label in CosetLabel::enumerate(2) {
            let f = label.representative();
            let inv = f.inverse();
            assert_eq!(f.mul(&inv), SymplecticMatrix::identity(2));
        }
    }
}
