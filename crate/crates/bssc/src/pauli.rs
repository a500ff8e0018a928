//! Heisenberg-Weyl (Pauli) operators on `C^(2^m)` with O(N) vector action.
//!
//! An operator is stored as `i^k D(a, b)` where `D(a, b)` is the tensor
//! product of single-position `sigma_x^a_i sigma_z^b_i` factors and `k` is a
//! phase exponent modulo 4. The E-normalization `E(a, b) = i^(a.b) D(a, b)`
//! (dot product over the integers, exponent modulo 4) is the one used for
//! stabilizer bookkeeping: it makes "the group contains -I" a checkable
//! phase condition. No `N x N` matrix is ever materialized outside of test
//! oracles.

use num_complex::Complex64;

use crate::gf2::{BitMat, BitVec};
use crate::symplectic::{symplectic_inner, CosetLabel};

/// `i^k` times a complex number, exactly.
pub(crate) fn rotate_quarter_turns(z: Complex64, k: u8) -> Complex64 {
    match k & 3 {
        0 => z,
        1 => Complex64::new(-z.im, z.re),
        2 => -z,
        _ => Complex64::new(z.im, -z.re),
    }
}

/// A Heisenberg-Weyl element `i^phase * D(a, b)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pauli {
    a: BitVec,
    b: BitVec,
    phase: u8,
}

impl Pauli {
    /// The bare displacement `D(a, b)` with zero phase.
    pub fn displacement(a: BitVec, b: BitVec) -> Self {
        assert_eq!(a.len(), b.len(), "displacement parts must have equal length");
        Pauli { a, b, phase: 0 }
    }

    /// The E-normalized element `E(a, b) = i^(a.b) D(a, b)`.
    pub fn e_normalized(a: BitVec, b: BitVec) -> Self {
        assert_eq!(a.len(), b.len());
        let phase = (a.overlap(&b) % 4) as u8;
        Pauli { a, b, phase }
    }

    pub fn identity(m: usize) -> Self {
        Pauli {
            a: BitVec::zeros(m),
            b: BitVec::zeros(m),
            phase: 0,
        }
    }

    pub fn num_positions(&self) -> usize {
        self.a.len()
    }

    pub fn x_part(&self) -> &BitVec {
        &self.a
    }

    pub fn z_part(&self) -> &BitVec {
        &self.b
    }

    /// Phase exponent `k` of `i^k D(a, b)`, in `{0, 1, 2, 3}`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn is_diagonal(&self) -> bool {
        self.a.is_zero()
    }

    /// The symplectic row vector `(a, b)` of length `2m`.
    pub fn row_vector(&self) -> BitVec {
        self.a.concat(&self.b)
    }

    /// Product with the displacement sign rule
    /// `D(a,b) D(c,d) = (-1)^(b.c) D(a+c, b+d)` folded into the phase.
    pub fn mul(&self, rhs: &Pauli) -> Pauli {
        assert_eq!(self.num_positions(), rhs.num_positions(), "dimension mismatch");
        let sign = u8::from(self.b.dot(&rhs.a)) * 2;
        Pauli {
            a: self.a.xor(&rhs.a),
            b: self.b.xor(&rhs.b),
            phase: (self.phase + rhs.phase + sign) & 3,
        }
    }

    /// Two elements commute iff their row vectors are symplectically
    /// orthogonal.
    pub fn commutes_with(&self, rhs: &Pauli) -> bool {
        !symplectic_inner(&self.row_vector(), &rhs.row_vector())
    }

    /// Applies the operator to a vector of length `2^m` in O(N):
    /// `(i^k D(a,b) x)(w) = i^k (-1)^((w+a).b) x(w+a)`.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let m = self.num_positions();
        assert_eq!(x.len(), 1 << m, "vector length must be 2^m");
        let a = self.a.index();
        let b = self.b.index();
        (0..x.len())
            .map(|w| {
                let src = w ^ a;
                let sign = (src & b).count_ones() & 1;
                rotate_quarter_turns(x[src], self.phase + 2 * sign as u8)
            })
            .collect()
    }
}

impl std::fmt::Debug for Pauli {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "i^{} D({}, {})", self.phase, self.a, self.b)
    }
}

/// In-place unnormalized Walsh-Hadamard transform:
/// `y(u) = sum_v (-1)^(u.v) x(v)`. Applying it twice multiplies by `N`.
///
/// Panics if the length is not a power of two.
pub fn wht_inplace(x: &mut [Complex64]) {
    let n = x.len();
    assert!(n.is_power_of_two(), "transform length must be a power of two");
    let mut h = 1;
    while h < n {
        let mut i = 0;
        while i < n {
            for j in i..i + h {
                let u = x[j];
                let v = x[j + h];
                x[j] = u + v;
                x[j + h] = u - v;
            }
            i += 2 * h;
        }
        h *= 2;
    }
}

/// Out-of-place unnormalized Walsh-Hadamard transform.
pub fn wht(x: &[Complex64]) -> Vec<Complex64> {
    let mut y = x.to_vec();
    wht_inplace(&mut y);
    y
}

/// The Pauli statistics of a signal for one shift: the length-`2^m` vector
/// `y -> s^dag E(shift, y) s`, computed with one pointwise product and one
/// Walsh-Hadamard transform.
pub fn pauli_spectrum(s: &[Complex64], shift: &BitVec) -> Vec<Complex64> {
    let m = shift.len();
    assert_eq!(s.len(), 1 << m, "signal length must be 2^m");
    let a = shift.index();
    let mut t: Vec<Complex64> = (0..s.len()).map(|v| s[v ^ a].conj() * s[v]).collect();
    wht_inplace(&mut t);
    for (y, value) in t.iter_mut().enumerate() {
        let k = ((a & y).count_ones() % 4) as u8;
        *value = rotate_quarter_turns(*value, k);
    }
    t
}

/// A maximal stabilizer: `m` commuting E-normalized generators whose row
/// vectors are linearly independent. The full group is the set of ordered
/// products over generator subsets.
#[derive(Clone, Debug)]
pub struct StabilizerGroup {
    m: usize,
    generators: Vec<Pauli>,
}

impl StabilizerGroup {
    /// The maximal stabilizer whose joint eigenbasis is the codeword set of
    /// a coset label: one generator `E(h_i, I_I S_r f_i)` per subspace basis
    /// column `h_i`, plus the diagonal `E(0, dual column)` for each dual
    /// basis column.
    pub fn for_label(label: &CosetLabel) -> Self {
        let m = label.ambient_dim();
        let r = label.rank();
        let sub = label.subspace();
        let mut generators = Vec::with_capacity(m);
        for i in 0..r {
            let a = sub.basis().column(i);
            let mut b = BitVec::zeros(m);
            for j in 0..r {
                if label.quad_form().get(j, i) {
                    b.set(sub.leading()[j], true);
                }
            }
            generators.push(Pauli::e_normalized(a, b));
        }
        for t in 0..(m - r) {
            let b = sub.dual_basis().column(t);
            generators.push(Pauli::e_normalized(BitVec::zeros(m), b));
        }
        StabilizerGroup { m, generators }
    }

    pub fn num_positions(&self) -> usize {
        self.m
    }

    pub fn generators(&self) -> &[Pauli] {
        &self.generators
    }

    /// The element indexed by a generator-selection vector: the product of
    /// the selected generators in ascending order.
    pub fn element(&self, selector: &BitVec) -> Pauli {
        debug_assert_eq!(selector.len(), self.generators.len());
        let mut acc = Pauli::identity(self.m);
        for (i, gen) in self.generators.iter().enumerate() {
            if selector.get(i) {
                acc = acc.mul(gen);
            }
        }
        acc
    }

    /// All `2^m` group elements, ordered by selector.
    pub fn elements(&self) -> Vec<Pauli> {
        (0..1usize << self.generators.len())
            .map(|t| self.element(&BitVec::from_index(t, self.generators.len())))
            .collect()
    }

    pub fn generators_commute(&self) -> bool {
        for (i, g1) in self.generators.iter().enumerate() {
            for g2 in self.generators.iter().skip(i + 1) {
                if !g1.commutes_with(g2) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether the stacked `[A | B]` generator matrix has full row rank.
    pub fn has_full_rank(&self) -> bool {
        let rows: Vec<BitVec> = self.generators.iter().map(Pauli::row_vector).collect();
        BitMat::from_rows(&rows).rank() == self.generators.len()
    }

    /// Whether the generated group contains `-I`, checked by exhausting the
    /// `2^m` products with exact phase bookkeeping.
    pub fn contains_minus_identity(&self) -> bool {
        self.elements()
            .iter()
            .any(|p| p.x_part().is_zero() && p.z_part().is_zero() && p.phase() != 0)
    }

    /// Number of distinct displacement (off-diagonal direction) patterns in
    /// the group, counting the zero pattern: a rank-`r` label yields `2^r`,
    /// splitting the group into displacement classes of `2^(m-r)` diagonal
    /// elements each.
    pub fn displacement_pattern_count(&self) -> usize {
        let mut patterns: Vec<usize> = self
            .elements()
            .iter()
            .map(|p| p.x_part().index())
            .collect();
        patterns.sort_unstable();
        patterns.dedup();
        patterns.len()
    }

    /// Number of diagonal elements in the group.
    pub fn diagonal_count(&self) -> usize {
        self.elements().iter().filter(|p| p.is_diagonal()).count()
    }
}
