//! Binary subspace chirp codewords: exact synthesis, codebook enumeration
//! and indexing, and the binary-chirp and random baselines.
//!
//! A codeword is indexed by a coset label `(r, H, S_r)` and a selector
//! `b in GF(2)^m`, and is stored exactly: a support coset of `2^r` ambient
//! indices, one phase exponent modulo 4 per support entry, a global sign,
//! and the implied amplitude `2^(-r/2)`. Complex floating-point vectors
//! exist only at the channel boundary, so coherence and recovery statements
//! stay exact.

use std::cmp::Ordering;
use std::io::Write;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::clifford::CliffordOp;
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::pauli::{rotate_quarter_turns, Pauli};
use crate::symplectic::CosetLabel;

/// The parameters naming one codeword: a coset label and the selector `b`
/// choosing a column of the label's synthesis operator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BsscParams {
    label: CosetLabel,
    selector: BitVec,
}

impl BsscParams {
    pub fn new(label: CosetLabel, selector: BitVec) -> Result<Self> {
        if selector.len() != label.ambient_dim() {
            return Err(Error::Dimension(format!(
                "selector length {} for ambient dimension {}",
                selector.len(),
                label.ambient_dim()
            )));
        }
        Ok(BsscParams { label, selector })
    }

    pub fn ambient_dim(&self) -> usize {
        self.label.ambient_dim()
    }

    pub fn rank(&self) -> usize {
        self.label.rank()
    }

    pub fn label(&self) -> &CosetLabel {
        &self.label
    }

    pub fn selector(&self) -> &BitVec {
        &self.selector
    }

    /// First `r` selector bits: the linear phase of the embedded chirp.
    pub fn linear_bits(&self) -> BitVec {
        self.selector.head(self.rank())
    }

    /// Last `m - r` selector bits: which dual coset carries the support.
    pub fn coset_bits(&self) -> BitVec {
        self.selector.tail(self.ambient_dim() - self.rank())
    }

    /// Codebook index: `label_index * 2^m + selector`. The id space is
    /// 64-bit, which covers `m <= 9`; larger dimensions still synthesize
    /// and decode, they just have no dense integer indexing.
    pub fn id(&self) -> u64 {
        debug_assert!(self.ambient_dim() <= MAX_INDEXED_DIM);
        (self.label.index() << self.ambient_dim()) | self.selector.index() as u64
    }

    pub fn from_id(m: usize, id: u64) -> Result<Self> {
        if m > MAX_INDEXED_DIM {
            return Err(Error::Domain(format!(
                "codebook indexing supports m <= {MAX_INDEXED_DIM}, got {m}"
            )));
        }
        if id >= codebook_size(m) {
            return Err(Error::Domain(format!("codeword id {id} out of range for m={m}")));
        }
        let label = CosetLabel::at_index(m, id >> m)?;
        let selector = BitVec::from_index((id & ((1 << m) - 1)) as usize, m);
        Ok(BsscParams { label, selector })
    }

    /// Every codeword exactly once: labels in enumeration order, then the
    /// selector as a counter.
    pub fn enumerate(m: usize) -> impl Iterator<Item = BsscParams> {
        CosetLabel::enumerate(m).flat_map(move |label| {
            (0..1usize << m).map(move |b| BsscParams {
                label: label.clone(),
                selector: BitVec::from_index(b, m),
            })
        })
    }

    /// The exact codeword for these parameters.
    pub fn codeword(&self) -> Codeword {
        Codeword::synthesize(self)
    }
}

/// Largest dimension exponent with a dense 64-bit codeword index space;
/// the count at `m = 10` already exceeds `2^64`.
pub const MAX_INDEXED_DIM: usize = 9;

/// Total number of codewords: `2^m * sum_r [m, r]_2 2^(r(r+1)/2)`.
///
/// Panics above [`MAX_INDEXED_DIM`], where the count overflows `u64`.
pub fn codebook_size(m: usize) -> u64 {
    assert!(
        m <= MAX_INDEXED_DIM,
        "codebook counting supports m <= {MAX_INDEXED_DIM}, got {m}"
    );
    CosetLabel::count(m) << m
}

/// Number of full-rank (binary chirp) codewords: `2^(m(m+3)/2)`.
pub fn bc_size(m: usize) -> u64 {
    CosetLabel::count_for_rank(m, m) << m
}

/// Global codeword ids of the full-rank slice, which sits at the end of the
/// enumeration because labels are ordered by ascending rank.
pub fn bc_id_range(m: usize) -> std::ops::Range<u64> {
    (codebook_size(m) - bc_size(m))..codebook_size(m)
}

/// An exact codeword: `2^r` support indices in ascending ambient order, a
/// phase exponent modulo 4 for each, a global sign, and amplitude
/// `2^(-r/2)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Codeword {
    m: usize,
    rank: usize,
    support: Vec<u32>,
    phases: Vec<u8>,
    sign: i8,
}

impl Codeword {
    /// Synthesizes the codeword by the on-support chirp formula: the support
    /// solves `dual^T a = coset_bits`, and the entry at the support point
    /// with subspace coordinates `x` is
    /// `sign * i^(x^T S_r x + 2 linear_bits.x) / sqrt(2^r)`.
    pub fn synthesize(params: &BsscParams) -> Codeword {
        let m = params.ambient_dim();
        let r = params.rank();
        let sub = params.label().subspace();
        let s_r = params.label().quad_form();
        let linear = params.linear_bits();
        let base = sub
            .identity_at_co_leading()
            .mul_vec(&params.coset_bits());

        let mut entries: Vec<(u32, u8)> = (0..1usize << r)
            .map(|xi| {
                let x = BitVec::from_index(xi, r);
                let point = base.xor(&sub.basis().mul_vec(&x));
                let exp = (s_r.quadratic_form_mod4(xi) + 2 * u8::from(linear.dot(&x))) & 3;
                (point.index() as u32, exp)
            })
            .collect();
        entries.sort_unstable_by_key(|&(idx, _)| idx);

        Codeword {
            m,
            rank: r,
            support: entries.iter().map(|&(idx, _)| idx).collect(),
            phases: entries.iter().map(|&(_, exp)| exp).collect(),
            sign: if params.coset_bits().weight() % 2 == 0 { 1 } else { -1 },
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Support indices, ascending.
    pub fn support(&self) -> &[u32] {
        &self.support
    }

    /// Phase exponents parallel to [`Self::support`], excluding the global
    /// sign.
    pub fn phases(&self) -> &[u8] {
        &self.phases
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn amplitude(&self) -> f64 {
        (1.0 / (1u64 << self.rank) as f64).sqrt()
    }

    /// Support entries with the sign folded into the exponent, ascending by
    /// index. Every nonzero entry is `i^exp / sqrt(2^r)`.
    pub fn entries_exact(&self) -> Vec<(u32, u8)> {
        let fold = if self.sign < 0 { 2 } else { 0 };
        self.support
            .iter()
            .zip(&self.phases)
            .map(|(&idx, &exp)| (idx, (exp + fold) & 3))
            .collect()
    }

    /// The codeword as a complex vector of length `2^m`.
    pub fn to_complex(&self) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); 1 << self.m];
        let amp = self.amplitude() * f64::from(self.sign);
        for (&idx, &exp) in self.support.iter().zip(&self.phases) {
            out[idx as usize] = rotate_quarter_turns(Complex64::new(amp, 0.0), exp);
        }
        out
    }

    /// Exact inner product `<self, other>` over the support intersection.
    pub fn inner(&self, other: &Codeword) -> ExactInner {
        assert_eq!(self.m, other.m, "inner product needs equal dimensions");
        let lhs = self.entries_exact();
        let rhs = other.entries_exact();
        let (mut i, mut j) = (0, 0);
        let (mut re, mut im) = (0i64, 0i64);
        while i < lhs.len() && j < rhs.len() {
            match lhs[i].0.cmp(&rhs[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    // conj(i^e1) * i^e2 = i^(e2 - e1 mod 4)
                    match (rhs[j].1 + 4 - lhs[i].1) & 3 {
                        0 => re += 1,
                        1 => im += 1,
                        2 => re -= 1,
                        _ => im -= 1,
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        ExactInner {
            re,
            im,
            scale_log2: (self.rank + other.rank) as u32,
        }
    }

    /// The exact image of the codeword under a Heisenberg-Weyl element, as
    /// folded support entries.
    pub fn pauli_image_exact(&self, p: &Pauli) -> Vec<(u32, u8)> {
        debug_assert_eq!(p.num_positions(), self.m);
        let a = p.x_part().index() as u32;
        let b = p.z_part().index() as u32;
        let mut out: Vec<(u32, u8)> = self
            .entries_exact()
            .into_iter()
            .map(|(idx, exp)| {
                let target = idx ^ a;
                let sign = 2 * ((idx & b).count_ones() & 1) as u8;
                (target, (exp + p.phase() + sign) & 3)
            })
            .collect();
        out.sort_unstable_by_key(|&(idx, _)| idx);
        out
    }

    /// If the operator maps the codeword exactly to `+/-` itself, the sign;
    /// otherwise `None`.
    pub fn eigen_sign_under(&self, p: &Pauli) -> Option<i8> {
        let own = self.entries_exact();
        let image = self.pauli_image_exact(p);
        let mut sign = None;
        for ((idx_a, exp_a), (idx_b, exp_b)) in own.iter().zip(&image) {
            if idx_a != idx_b {
                return None;
            }
            let delta = (exp_b + 4 - exp_a) & 3;
            let s = match delta {
                0 => 1,
                2 => -1,
                _ => return None,
            };
            match sign {
                None => sign = Some(s),
                Some(prev) if prev != s => return None,
                _ => {}
            }
        }
        sign
    }
}

/// An exact Gaussian-integer inner product with dyadic scale:
/// the value is `(re + i im) / sqrt(2^scale_log2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactInner {
    re: i64,
    im: i64,
    scale_log2: u32,
}

impl ExactInner {
    pub fn re_raw(&self) -> i64 {
        self.re
    }

    pub fn im_raw(&self) -> i64 {
        self.im
    }

    pub fn scale_log2(&self) -> u32 {
        self.scale_log2
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    /// `|<.,.>|^2` as an exact rational `num / 2^den_log2`.
    pub fn abs_sqr(&self) -> (u128, u32) {
        let num = (self.re as i128 * self.re as i128 + self.im as i128 * self.im as i128) as u128;
        (num, self.scale_log2)
    }

    /// Compares `|<.,.>|^2` with the rational `num / 2^den_log2`, exactly.
    pub fn abs_sqr_cmp(&self, num: u128, den_log2: u32) -> Ordering {
        let (own_num, own_den) = self.abs_sqr();
        (own_num << den_log2).cmp(&(num << own_den))
    }

    pub fn as_complex(&self) -> Complex64 {
        let scale = (1.0 / (1u128 << self.scale_log2) as f64).sqrt();
        Complex64::new(self.re as f64 * scale, self.im as f64 * scale)
    }
}

/// Column `b` of the label's synthesis operator, computed by structured
/// application to the basis vector. Works for any `m`; agrees with
/// [`Codeword::synthesize`] exactly, sign included.
pub fn synthesize_via_clifford(params: &BsscParams) -> Vec<Complex64> {
    let n = 1usize << params.ambient_dim();
    let mut e = vec![Complex64::new(0.0, 0.0); n];
    e[params.selector().index()] = Complex64::new(1.0, 0.0);
    CliffordOp::synthesis_operator(params.label()).apply(&e)
}

/// The full-rank (binary chirp) slice of the codebook as complex vectors,
/// in enumeration order.
pub fn bc_codebook(m: usize) -> Vec<Vec<Complex64>> {
    bc_id_range(m)
        .map(|id| {
            BsscParams::from_id(m, id)
                .expect("id in range")
                .codeword()
                .to_complex()
        })
        .collect()
}

/// A reproducible random codebook: rows are i.i.d. circular complex Gaussian
/// vectors normalized to unit length.
pub fn random_codebook(m: usize, size: u64, seed: u64) -> Vec<Vec<Complex64>> {
    let n = 1usize << m;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    (0..size)
        .map(|_| {
            let mut v: Vec<Complex64> = (0..n)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex64::new(re, im)
                })
                .collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in v.iter_mut() {
                *z /= norm;
            }
            v
        })
        .collect()
}

/// Which parametrized codebook to export.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportKind {
    Bssc,
    Bc,
}

/// Writes the codebook as CSV, one row per codeword, with LF line endings.
///
/// Columns: the codeword id, `m`, the rank, the leading-set bitmask, the
/// echelon free-entry bits, the upper-triangle bits of `S_r`, the selector,
/// then the support indices and per-entry phase exponents (global sign
/// folded in) as `;`-joined lists.
pub fn write_codebook_csv<W: Write>(m: usize, kind: ExportKind, out: &mut W) -> Result<()> {
    writeln!(
        out,
        "id,m,r,i_mask,h_free_bits,s_r_bits,b,support_indices,phase_exponents"
    )?;
    let ids = match kind {
        ExportKind::Bssc => 0..codebook_size(m),
        ExportKind::Bc => bc_id_range(m),
    };
    for id in ids {
        let params = BsscParams::from_id(m, id)?;
        let word = params.codeword();
        let entries = word.entries_exact();
        let support: Vec<String> = entries.iter().map(|&(idx, _)| idx.to_string()).collect();
        let phases: Vec<String> = entries.iter().map(|&(_, exp)| exp.to_string()).collect();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            id,
            m,
            params.rank(),
            params.label().subspace().leading_mask(),
            params.label().subspace().cell_bits(),
            params.label().form_bits(),
            params.selector().index(),
            support.join(";"),
            phases.join(";"),
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BinarySubspace;
    use crate::pauli::StabilizerGroup;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn approx_eq(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() < tol)
    }

    fn params(m: usize, gens: &[&[u8]], s_bits: u64, b: usize) -> BsscParams {
        let vecs: Vec<BitVec> = gens.iter().map(|g| BitVec::from_bits(g)).collect();
        let sub = BinarySubspace::from_generators(m, &vecs).unwrap();
        let r = sub.rank();
        let label = CosetLabel::new(sub, CosetLabel::form_from_bits(r, s_bits)).unwrap();
        BsscParams::new(label, BitVec::from_index(b, m)).unwrap()
    }

    #[test]
    fn hadamard_columns_at_m1() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let w0 = params(1, &[&[1]], 0, 0).codeword().to_complex();
        assert!(approx_eq(&w0, &[c(s, 0.0), c(s, 0.0)], 1e-15));
        let w1 = params(1, &[&[1]], 0, 1).codeword().to_complex();
        assert!(approx_eq(&w1, &[c(s, 0.0), c(-s, 0.0)], 1e-15));
        // Quadratic phase S = [1].
        let w_chirp = params(1, &[&[1]], 1, 0).codeword().to_complex();
        assert!(approx_eq(&w_chirp, &[c(s, 0.0), c(0.0, s)], 1e-15));
    }

    #[test]
    fn worked_rank_one_codeword_at_m2() {
        let word = params(2, &[&[1, 0]], 0, 0).codeword();
        assert_eq!(word.support(), &[0, 2]);
        assert_eq!(word.phases(), &[0, 0]);
        assert_eq!(word.sign(), 1);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [c(s, 0.0), c(0.0, 0.0), c(s, 0.0), c(0.0, 0.0)];
        assert!(approx_eq(&word.to_complex(), &expected, 1e-15));
    }

    #[test]
    fn rank_zero_codewords_are_signed_point_masses() {
        let w = params(3, &[], 0, 0b101).codeword();
        assert_eq!(w.support(), &[0b101]);
        assert_eq!(w.sign(), 1, "even-weight selector keeps the sign");
        let w = params(3, &[], 0, 0b100).codeword();
        assert_eq!(w.sign(), -1);
        assert_eq!(w.entries_exact(), vec![(0b100, 2)]);
    }

    #[test]
    fn clifford_column_equals_direct_synthesis_exactly() {
        for m in 1..=3usize {
            for p in BsscParams::enumerate(m) {
                let direct = p.codeword().to_complex();
                let column = synthesize_via_clifford(&p);
                assert!(
                    approx_eq(&direct, &column, 1e-12),
                    "m={m} id={} differ",
                    p.id()
                );
            }
        }
    }

    #[test]
    fn codebook_sizes_and_bc_slice() {
        assert_eq!(codebook_size(1), 6);
        assert_eq!(codebook_size(2), 60);
        assert_eq!(codebook_size(3), 1080);
        assert_eq!(bc_size(2), 32);
        assert_eq!(bc_size(3), 512);
        assert_eq!(BsscParams::enumerate(2).count() as u64, 60);
        assert_eq!(BsscParams::enumerate(3).count() as u64, 1080);
        // Every id in the BC range has full rank and the slice is exactly
        // the binary chirps.
        for id in bc_id_range(2) {
            assert_eq!(BsscParams::from_id(2, id).unwrap().rank(), 2);
        }
        let ratio = |m: usize| codebook_size(m) as f64 / bc_size(m) as f64;
        assert!((ratio(2) - 1.875).abs() < 1e-12);
        assert!(ratio(5) > 2.30 && ratio(5) < 2.32);
        assert!(ratio(4) < ratio(5) && ratio(5) < ratio(6));
    }

    #[test]
    fn id_codec_round_trips() {
        for m in 1..=3usize {
            for (i, p) in BsscParams::enumerate(m).enumerate() {
                assert_eq!(p.id(), i as u64);
                assert_eq!(BsscParams::from_id(m, i as u64).unwrap(), p);
            }
        }
        assert!(BsscParams::from_id(2, 60).is_err());
    }

    #[test]
    fn inner_product_examples() {
        // Unit norm.
        let w = params(2, &[&[1, 0]], 0, 0).codeword();
        let self_ip = w.inner(&w);
        assert_eq!(self_ip.abs_sqr_cmp(1, 0), Ordering::Equal);

        // Rank-2 flat chirp against the rank-1 codeword: |ip|^2 = 1/2.
        let flat = params(2, &[&[1, 0], &[0, 1]], 0, 0).codeword();
        let ip = flat.inner(&w);
        assert_eq!(ip.abs_sqr_cmp(1, 1), Ordering::Equal);
        assert!((ip.as_complex().norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);

        // Same label, selectors 00 vs 10: orthogonal columns.
        let w2 = params(2, &[&[1, 0]], 0, 0b10).codeword();
        assert!(w.inner(&w2).is_zero());
    }

    #[test]
    fn supports_are_cosets_with_exact_magnitudes() {
        for m in 1..=3usize {
            for p in BsscParams::enumerate(m) {
                let w = p.codeword();
                assert_eq!(w.support().len(), 1 << p.rank());
                let v = w.to_complex();
                let norm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
                assert!((norm_sqr - 1.0).abs() < 1e-12);
                let expect = 1.0 / (1u64 << p.rank()) as f64;
                for &idx in w.support() {
                    assert!((v[idx as usize].norm_sqr() - expect).abs() < 1e-12);
                }
                // Support solves dual^T a = coset_bits.
                let dual = p.label().subspace().dual_basis();
                for &idx in w.support() {
                    let a = BitVec::from_index(idx as usize, m);
                    assert_eq!(dual.transpose().mul_vec(&a), p.coset_bits());
                }
            }
        }
    }

    #[test]
    fn stabilizer_fixes_every_codeword_up_to_sign() {
        for m in 1..=3usize {
            for label in CosetLabel::enumerate(m) {
                let group = StabilizerGroup::for_label(&label);
                let elements = group.elements();
                let mut sign_patterns = Vec::new();
                for b in 0..1usize << m {
                    let p = BsscParams::new(label.clone(), BitVec::from_index(b, m)).unwrap();
                    let w = p.codeword();
                    let pattern: Vec<i8> = elements
                        .iter()
                        .map(|e| {
                            w.eigen_sign_under(e).unwrap_or_else(|| {
                                panic!("element {e:?} does not fix codeword {b} of {label:?}")
                            })
                        })
                        .collect();
                    sign_patterns.push(pattern);
                }
                // The sign pattern over the group distinguishes the 2^m
                // codewords sharing the label.
                sign_patterns.sort();
                let before = sign_patterns.len();
                sign_patterns.dedup();
                assert_eq!(sign_patterns.len(), before);
            }
        }
    }

    #[test]
    fn corrupting_a_phase_breaks_the_stabilizer_check() {
        let p = params(2, &[&[1, 0]], 0, 0);
        let mut w = p.codeword();
        w.phases[1] = (w.phases[1] + 1) & 3;
        let group = StabilizerGroup::for_label(p.label());
        let fixed = group
            .elements()
            .iter()
            .all(|e| w.eigen_sign_under(e).is_some());
        assert!(!fixed, "fault injection must be caught");
    }

    #[test]
    fn restricted_support_is_an_embedded_chirp() {
        // Reading a rank-r codeword along its support in coordinate order
        // reproduces the 2^r-dimensional full-rank chirp with the same
        // quadratic form and linear bits, up to the global sign. Both sides
        // come from the structured Clifford path.
        for m in 1..=3usize {
            for p in BsscParams::enumerate(m) {
                let r = p.rank();
                if r == 0 {
                    continue;
                }
                let big = synthesize_via_clifford(&p);
                let sub = p.label().subspace();
                let base = sub.identity_at_co_leading().mul_vec(&p.coset_bits());

                let small_label = CosetLabel::new(
                    BinarySubspace::full(r),
                    p.label().quad_form().clone(),
                )
                .unwrap();
                let small_params =
                    BsscParams::new(small_label, p.linear_bits()).unwrap();
                let small = synthesize_via_clifford(&small_params);

                let sign = f64::from(p.codeword().sign());
                for xi in 0..1usize << r {
                    let x = BitVec::from_index(xi, r);
                    let point = base.xor(&sub.basis().mul_vec(&x));
                    let lhs = big[point.index()];
                    let rhs = small[xi] * sign;
                    assert!((lhs - rhs).norm() < 1e-12, "m={m} id={} x={xi}", p.id());
                }
            }
        }
    }

    #[test]
    fn bc_codebook_is_flat_and_random_codebook_is_reproducible() {
        let bc = bc_codebook(2);
        assert_eq!(bc.len(), 32);
        for v in &bc {
            for z in v {
                assert!((z.norm() - 0.5).abs() < 1e-12);
            }
        }
        let a = random_codebook(3, 10, 99);
        let b = random_codebook(3, 10, 99);
        assert_eq!(a, b);
        let c = random_codebook(3, 10, 100);
        assert_ne!(a, c);
        for v in &a {
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn csv_header_and_worked_row() {
        let mut buf = Vec::new();
        write_codebook_csv(2, ExportKind::Bssc, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 61);
        assert_eq!(
            lines[0],
            "id,m,r,i_mask,h_free_bits,s_r_bits,b,support_indices,phase_exponents"
        );
        // The worked rank-1 codeword (1,0,1,0)/sqrt(2) is the first rank-1
        // row: label index 1, selector 0, id 4.
        assert_eq!(lines[5], "4,2,1,2,0,0,0,0;2,0;0");
    }

    proptest! {
        #[test]
        fn prop_projective_identity_and_coherence_bound(m in 1usize..=4, seed in any::<u64>()) {
            let size = codebook_size(m);
            let id1 = seed % size;
            let id2 = seed.wrapping_mul(0x9e3779b97f4a7c15) % size;
            let w1 = BsscParams::from_id(m, id1).unwrap().codeword();
            let w2 = BsscParams::from_id(m, id2).unwrap().codeword();
            let ip = w1.inner(&w2);
            if id1 == id2 {
                prop_assert_eq!(ip.abs_sqr_cmp(1, 0), Ordering::Equal);
            } else {
                // Distinct codewords never exceed coherence 1/sqrt(2).
                prop_assert_ne!(ip.abs_sqr_cmp(1, 1), Ordering::Greater);
            }
        }

        #[test]
        fn prop_selector_splits(m in 1usize..=4, seed in any::<u64>()) {
            let id = seed % codebook_size(m);
            let p = BsscParams::from_id(m, id).unwrap();
            let joined = p.linear_bits().concat(&p.coset_bits());
            prop_assert_eq!(joined, *p.selector());
        }
    }
}
