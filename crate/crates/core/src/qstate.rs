//! Dense state vectors over a register of labeled two-level systems.
//!
//! # Basis and bit order
//!
//! Every qubit is a photon (`0` = |L⟩, `1` = |R⟩) or a three-level atom of
//! which only the two ground states take part (`0` = |g_L⟩, `1` = |g_R⟩).
//! Qubit `i` of the register addresses bit `i` of the amplitude index, least
//! significant first: in a register `[a1, a2]` the amplitude of |L⟩_a1 |R⟩_a2
//! lives at index `0b10 = 2`. Newly appended qubits take the next higher bit.
//!
//! After every public operation the amplitude vector has unit norm to within
//! 1e-12. Collapse prunes amplitudes below 1e-12 in modulus to exact zero.

use alloc::{
    string::{String, ToString},
    vec,
    vec::Vec,
};
use core::f64::consts::FRAC_1_SQRT_2;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;
use rand::Rng;

use crate::{Error, Result};

/// Largest register allowed unless a caller raises it (2^26 amplitudes is 1 GiB).
pub const DEFAULT_MAX_QUBITS: usize = 26;

/// Amplitudes smaller than this after a collapse are set to zero.
pub const PRUNE_EPS: f64 = 1e-12;

const UNITARY_TOL: f64 = 1e-10;
const COLLAPSED_TOL: f64 = 1e-10;
const ZERO_PROB: f64 = PRUNE_EPS * PRUNE_EPS;

pub type Gate1 = [[Complex64; 2]; 2];

const fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub const IDENTITY: Gate1 = [[re(1.0), re(0.0)], [re(0.0), re(1.0)]];

/// Half-wave plate / atomic Hadamard: |0⟩ → (|0⟩+|1⟩)/√2, |1⟩ → (|0⟩−|1⟩)/√2.
pub const HADAMARD: Gate1 = [[re(FRAC_1_SQRT_2), re(FRAC_1_SQRT_2)], [re(FRAC_1_SQRT_2), re(-FRAC_1_SQRT_2)]];

/// Bit flip |L⟩ ↔ |R⟩.
pub const PAULI_X: Gate1 = [[re(0.0), re(1.0)], [re(1.0), re(0.0)]];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QubitKind {
    Photon,
    Atom,
}

/// A named two-level system. Labels are unique within a register.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QubitId {
    kind: QubitKind,
    label: String,
}

impl QubitId {
    pub fn photon(label: impl Into<String>) -> Self {
        Self { kind: QubitKind::Photon, label: label.into() }
    }

    pub fn atom(label: impl Into<String>) -> Self {
        Self { kind: QubitKind::Atom, label: label.into() }
    }

    pub fn kind(&self) -> QubitKind {
        self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            QubitKind::Photon => write!(f, "{}", self.label),
            QubitKind::Atom => write!(f, "atom {}", self.label),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    pub qubit: QubitId,
    pub outcome: u8,
    /// Born probability of `outcome` before the collapse.
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    register: Vec<QubitId>,
    amps: Vec<Complex64>,
    max_qubits: usize,
}

fn check_unique(register: &[QubitId]) -> Result<()> {
    for (i, q) in register.iter().enumerate() {
        if register[..i].iter().any(|p| p.label == q.label) {
            return Err(Error::DuplicateLabel(q.label.clone()));
        }
    }
    Ok(())
}

fn check_cap(size: usize, max: usize) -> Result<()> {
    if size > max {
        return Err(Error::CapExceeded { requested: size, max });
    }
    Ok(())
}

impl StateVector {
    /// Computational basis state |bits⟩; `bits[i]` is the value of `qubits[i]`.
    pub fn init_register(qubits: Vec<QubitId>, bits: &[u8]) -> Result<Self> {
        Self::init_register_capped(qubits, bits, DEFAULT_MAX_QUBITS)
    }

    pub fn init_register_capped(qubits: Vec<QubitId>, bits: &[u8], max_qubits: usize) -> Result<Self> {
        if bits.len() != qubits.len() {
            return Err(Error::LengthMismatch { expected: qubits.len(), actual: bits.len() });
        }
        check_unique(&qubits)?;
        check_cap(qubits.len(), max_qubits)?;
        let index = bits.iter().enumerate().fold(0usize, |acc, (i, &b)| acc | (usize::from(b != 0) << i));
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits.len()];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { register: qubits, amps, max_qubits })
    }

    /// Wrap an explicit amplitude vector. The vector must already be normalized
    /// to within 1e-9; it is then rescaled to exact unit norm.
    pub fn from_amplitudes(qubits: Vec<QubitId>, amps: Vec<Complex64>, max_qubits: usize) -> Result<Self> {
        check_unique(&qubits)?;
        check_cap(qubits.len(), max_qubits)?;
        let expected = 1usize << qubits.len();
        if amps.len() != expected {
            return Err(Error::LengthMismatch { expected, actual: amps.len() });
        }
        let mut state = Self { register: qubits, amps, max_qubits };
        let n2 = state.norm_sqr();
        if (n2 - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized(n2));
        }
        state.renormalize();
        Ok(state)
    }

    pub fn register(&self) -> &[QubitId] {
        &self.register
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn num_qubits(&self) -> usize {
        self.register.len()
    }

    pub fn max_qubits(&self) -> usize {
        self.max_qubits
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn position(&self, q: &QubitId) -> Result<usize> {
        self.register.iter().position(|p| p == q).ok_or_else(|| Error::UnknownQubit(q.label.clone()))
    }

    pub fn contains(&self, q: &QubitId) -> bool {
        self.register.contains(q)
    }

    fn renormalize(&mut self) {
        let n = Float::sqrt(self.norm_sqr());
        if n > 0.0 && n != 1.0 {
            let inv = 1.0 / n;
            self.amps.iter_mut().for_each(|a| *a *= inv);
        }
    }

    /// Append `q` prepared in basis state `bit`, as the new most significant qubit.
    pub fn append(&mut self, q: QubitId, bit: u8) -> Result<()> {
        if self.register.iter().any(|p| p.label == q.label) {
            return Err(Error::DuplicateLabel(q.label));
        }
        check_cap(self.register.len() + 1, self.max_qubits)?;
        let old = self.amps.len();
        let zero = Complex64::new(0.0, 0.0);
        if bit == 0 {
            self.amps.resize(2 * old, zero);
        } else {
            let mut amps = vec![zero; old];
            amps.extend_from_slice(&self.amps);
            self.amps = amps;
        }
        self.register.push(q);
        Ok(())
    }

    /// |self⟩ ⊗ |other⟩, with `other`'s qubits taking the higher bits.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let mut register = self.register.clone();
        register.extend(other.register.iter().cloned());
        check_unique(&register)?;
        let max_qubits = self.max_qubits.min(other.max_qubits);
        check_cap(register.len(), max_qubits)?;
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for b in &other.amps {
            amps.extend(self.amps.iter().map(|a| a * b));
        }
        Ok(StateVector { register, amps, max_qubits })
    }

    /// Apply a single-qubit unitary `u` (row = output bit, column = input bit).
    pub fn apply_1q(&mut self, q: &QubitId, u: &Gate1) -> Result<()> {
        let deviation = unitarity_deviation(u);
        if deviation > UNITARY_TOL {
            return Err(Error::NonUnitary { deviation });
        }
        let stride = 1usize << self.position(q)?;
        for block in self.amps.chunks_exact_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a0, *a1);
                *a0 = u[0][0] * x + u[0][1] * y;
                *a1 = u[1][0] * x + u[1][1] * y;
            }
        }
        Ok(())
    }

    /// Multiply each amplitude by `d[bit(q1) + 2 * bit(q2)]`.
    ///
    /// Entries must have modulus in (0, 1]. A non-unimodular diagonal models a
    /// lossy reflection conditioned on the photon surviving, so the state is
    /// renormalized afterwards.
    pub fn apply_diag2(&mut self, q1: &QubitId, q2: &QubitId, d: &[Complex64; 4]) -> Result<()> {
        let p1 = self.position(q1)?;
        let p2 = self.position(q2)?;
        if p1 == p2 {
            return Err(Error::AliasedQubits(q1.label.clone()));
        }
        let mut unimodular = true;
        for (index, entry) in d.iter().enumerate() {
            let modulus = entry.norm();
            if !(modulus > 0.0 && modulus <= 1.0 + 1e-12) {
                return Err(Error::BadDiagonal { index, modulus });
            }
            unimodular &= (modulus - 1.0).abs() <= 1e-12;
        }
        for (i, a) in self.amps.iter_mut().enumerate() {
            *a *= d[((i >> p1) & 1) | (((i >> p2) & 1) << 1)];
        }
        if !unimodular {
            self.renormalize();
        }
        Ok(())
    }

    /// Born probability that `q` reads `1`.
    pub fn probability_one(&self, q: &QubitId) -> Result<f64> {
        let mask = 1usize << self.position(q)?;
        Ok(self.amps.iter().enumerate().filter(|(i, _)| i & mask != 0).map(|(_, a)| a.norm_sqr()).sum())
    }

    fn collapse(&mut self, pos: usize, outcome: u8, probability: f64) {
        let mask = 1usize << pos;
        let want = if outcome == 0 { 0 } else { mask };
        let scale = 1.0 / Float::sqrt(probability);
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & mask != want {
                *a = Complex64::new(0.0, 0.0);
            } else {
                *a *= scale;
                if a.norm() < PRUNE_EPS {
                    *a = Complex64::new(0.0, 0.0);
                }
            }
        }
        self.renormalize();
    }

    /// Measure `q` in the computational basis, sampling with `rng`.
    pub fn measure<R: Rng + ?Sized>(&mut self, q: &QubitId, rng: &mut R) -> Result<MeasurementRecord> {
        let pos = self.position(q)?;
        let mut p1 = self.probability_one(q)?;
        if p1 < ZERO_PROB {
            p1 = 0.0;
        } else if p1 > 1.0 - ZERO_PROB {
            p1 = 1.0;
        }
        let u: f64 = rng.gen();
        let outcome = u8::from(u < p1);
        let probability = if outcome == 1 { p1 } else { 1.0 - p1 };
        self.collapse(pos, outcome, probability);
        Ok(MeasurementRecord { qubit: q.clone(), outcome, probability })
    }

    /// Project `q` onto `outcome` and renormalize; returns the prior probability.
    pub fn postselect(&mut self, q: &QubitId, outcome: u8) -> Result<f64> {
        let pos = self.position(q)?;
        let p1 = self.probability_one(q)?;
        let probability = if outcome == 0 { 1.0 - p1 } else { p1 };
        if probability < ZERO_PROB {
            return Err(Error::ZeroProbability { label: q.label.clone(), outcome });
        }
        self.collapse(pos, outcome, probability);
        Ok(probability)
    }

    /// Remove a qubit that sits in a definite basis state.
    pub fn drop_qubit(&mut self, q: &QubitId) -> Result<()> {
        let pos = self.position(q)?;
        let p_one = self.probability_one(q)?;
        let bit = if p_one <= COLLAPSED_TOL {
            0
        } else if p_one >= 1.0 - COLLAPSED_TOL {
            1
        } else {
            return Err(Error::NotCollapsed { label: q.label.clone(), p_one });
        };
        let low = (1usize << pos) - 1;
        let half = self.amps.len() / 2;
        let amps = (0..half).map(|j| self.amps[(j & low) | (bit << pos) | ((j & !low) << 1)]).collect();
        self.amps = amps;
        self.register.remove(pos);
        self.renormalize();
        Ok(())
    }

    /// ⟨self|other⟩. Both states must carry the same register in the same order.
    pub fn overlap(&self, other: &StateVector) -> Result<Complex64> {
        if self.register != other.register {
            return Err(Error::RegisterMismatch);
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// ‖(⟨reference| ⊗ 1) |self⟩‖², where `reference` lives on a subset of
    /// this register. Equals |⟨reference|self⟩|² when the registers coincide.
    pub fn projection_weight(&self, reference: &StateVector) -> Result<f64> {
        let positions = reference.register.iter().map(|q| self.position(q)).collect::<Result<Vec<_>>>()?;
        let sub_mask = positions.iter().fold(0usize, |m, p| m | (1 << p));
        let rest: Vec<usize> = (0..self.register.len()).filter(|p| sub_mask & (1 << p) == 0).collect();
        let mut acc = vec![Complex64::new(0.0, 0.0); 1 << rest.len()];
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            let sub = positions.iter().enumerate().fold(0usize, |s, (k, p)| s | (((i >> p) & 1) << k));
            let r = rest.iter().enumerate().fold(0usize, |s, (k, p)| s | (((i >> p) & 1) << k));
            acc[r] += reference.amps[sub].conj() * a;
        }
        Ok(acc.iter().map(|c| c.norm_sqr()).sum())
    }

    /// Labels of the register, mostly for diagnostics.
    pub fn labels(&self) -> Vec<String> {
        self.register.iter().map(|q| q.label.to_string()).collect()
    }
}

fn unitarity_deviation(u: &Gate1) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            let dot: Complex64 = (0..2).map(|k| u[k][i].conj() * u[k][j]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    fn photon(l: &str) -> QubitId {
        QubitId::photon(l)
    }

    #[test]
    fn init_basis_states() {
        let s = StateVector::init_register(vec![photon("a1")], &[0]).unwrap();
        assert_eq!(s.amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0)]);

        let s = StateVector::init_register(vec![QubitId::atom("5")], &[0]).unwrap();
        assert!(close(s.amplitudes()[0], c(1.0, 0.0)));

        // a1 = 0, a2 = 1 -> index 0b10
        let s = StateVector::init_register(vec![photon("a1"), photon("a2")], &[0, 1]).unwrap();
        for (i, a) in s.amplitudes().iter().enumerate() {
            assert_eq!(a.re, if i == 2 { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn init_errors() {
        assert_eq!(
            StateVector::init_register(vec![photon("a1"), QubitId::atom("a1")], &[0, 0]),
            Err(Error::DuplicateLabel("a1".into()))
        );
        assert_eq!(
            StateVector::init_register(vec![photon("a1")], &[0, 1]),
            Err(Error::LengthMismatch { expected: 1, actual: 2 })
        );
        let qubits: Vec<_> = (0..5).map(|i| QubitId::photon(alloc::format!("q{i}"))).collect();
        assert_eq!(
            StateVector::init_register_capped(qubits, &[0; 5], 4),
            Err(Error::CapExceeded { requested: 5, max: 4 })
        );
    }

    #[test]
    fn hadamard_on_basis() {
        let h = FRAC_1_SQRT_2;
        let mut s = StateVector::init_register(vec![photon("a1")], &[0]).unwrap();
        s.apply_1q(&photon("a1"), &HADAMARD).unwrap();
        assert!(close(s.amplitudes()[0], c(h, 0.0)) && close(s.amplitudes()[1], c(h, 0.0)));

        let mut s = StateVector::init_register(vec![photon("a1")], &[1]).unwrap();
        s.apply_1q(&photon("a1"), &HADAMARD).unwrap();
        assert!(close(s.amplitudes()[0], c(h, 0.0)) && close(s.amplitudes()[1], c(-h, 0.0)));

        let before = s.clone();
        s.apply_1q(&photon("a1"), &IDENTITY).unwrap();
        assert_eq!(s, before);
    }

    #[test]
    fn apply_1q_errors() {
        let mut s = StateVector::init_register(vec![photon("a1")], &[0]).unwrap();
        let bad = [[c(1.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
        assert!(matches!(s.apply_1q(&photon("a1"), &bad), Err(Error::NonUnitary { .. })));
        assert_eq!(s.apply_1q(&photon("zz"), &HADAMARD), Err(Error::UnknownQubit("zz".into())));
    }

    #[test]
    fn faraday_diagonal_on_pairs() {
        let d = [c(-1.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(-1.0, 0.0)];
        let (p, a) = (photon("a1"), QubitId::atom("1"));

        let mut s = StateVector::init_register(vec![p.clone(), a.clone()], &[0, 0]).unwrap();
        s.apply_diag2(&p, &a, &d).unwrap();
        assert!(close(s.amplitudes()[0], c(-1.0, 0.0)));

        let mut s = StateVector::init_register(vec![p.clone(), a.clone()], &[1, 0]).unwrap();
        s.apply_diag2(&p, &a, &d).unwrap();
        assert!(close(s.amplitudes()[1], c(0.0, 1.0)));

        let mut s = StateVector::init_register(vec![p.clone(), a.clone()], &[1, 1]).unwrap();
        s.apply_1q(&p, &HADAMARD).unwrap();
        let before = s.clone();
        s.apply_diag2(&p, &a, &[c(1.0, 0.0); 4]).unwrap();
        assert_eq!(s, before);
    }

    #[test]
    fn diag2_errors() {
        let (p, a) = (photon("a1"), QubitId::atom("1"));
        let mut s = StateVector::init_register(vec![p.clone(), a.clone()], &[0, 0]).unwrap();
        let zero = [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)];
        assert!(matches!(s.apply_diag2(&p, &a, &zero), Err(Error::BadDiagonal { index: 0, .. })));
        assert_eq!(s.apply_diag2(&p, &p, &[c(1.0, 0.0); 4]), Err(Error::AliasedQubits("a1".into())));
    }

    #[test]
    fn lossy_diagonal_renormalizes() {
        let (p, a) = (photon("a1"), QubitId::atom("1"));
        let mut s = StateVector::init_register(vec![p.clone(), a.clone()], &[0, 0]).unwrap();
        s.apply_1q(&p, &HADAMARD).unwrap();
        s.apply_diag2(&p, &a, &[c(0.5, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        assert!((s.probability_one(&p).unwrap() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn measure_basis_and_plus() {
        let q = photon("a1");
        let mut rng = rng_from_seed(1);
        let mut s = StateVector::init_register(vec![q.clone()], &[0]).unwrap();
        let rec = s.measure(&q, &mut rng).unwrap();
        assert_eq!((rec.outcome, rec.probability), (0, 1.0));

        let mut seen = [0usize; 2];
        for seed in 0..200 {
            let mut s = StateVector::init_register(vec![q.clone()], &[0]).unwrap();
            s.apply_1q(&q, &HADAMARD).unwrap();
            let rec = s.measure(&q, &mut rng_from_seed(seed)).unwrap();
            assert!((rec.probability - 0.5).abs() < 1e-12);
            seen[rec.outcome as usize] += 1;
            assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        }
        assert!(seen[0] > 0 && seen[1] > 0);
    }

    #[test]
    fn measurement_is_seed_deterministic() {
        let q = photon("a1");
        let run = |seed| {
            let mut s = StateVector::init_register(vec![q.clone()], &[0]).unwrap();
            s.apply_1q(&q, &HADAMARD).unwrap();
            s.measure(&q, &mut rng_from_seed(seed)).unwrap().outcome
        };
        for seed in 0..20 {
            assert_eq!(run(seed), run(seed));
        }
    }

    fn bell_pair() -> StateVector {
        let amps = vec![c(FRAC_1_SQRT_2, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(FRAC_1_SQRT_2, 0.0)];
        StateVector::from_amplitudes(vec![photon("a1"), photon("a2")], amps, DEFAULT_MAX_QUBITS).unwrap()
    }

    #[test]
    fn drop_after_measure() {
        let psi = bell_pair();
        let mut s = psi.clone();
        s.append(QubitId::atom("1"), 0).unwrap();
        s.drop_qubit(&QubitId::atom("1")).unwrap();
        assert_eq!(s, psi);

        let mut s = bell_pair();
        assert!(matches!(s.drop_qubit(&photon("a1")), Err(Error::NotCollapsed { .. })));
        s.measure(&photon("a1"), &mut rng_from_seed(3)).unwrap();
        s.drop_qubit(&photon("a1")).unwrap();
        assert_eq!(s.num_qubits(), 1);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn drop_preserves_marginals_of_three_qubits() {
        // Brute-force marginals of a generic 3-qubit state after measuring qubit 2.
        let qs = vec![photon("a1"), photon("a2"), photon("a3")];
        let raw: Vec<Complex64> = (0..8).map(|i| c(0.1 + i as f64, 0.3 * i as f64 - 0.5)).collect();
        let n: f64 = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let s0 = StateVector::from_amplitudes(qs.clone(), raw.iter().map(|a| a / n).collect(), 26).unwrap();
        let mut s = s0.clone();
        let rec = s.measure(&qs[2], &mut rng_from_seed(11)).unwrap();
        let before = [s.probability_one(&qs[0]).unwrap(), s.probability_one(&qs[1]).unwrap()];
        // oracle: conditional marginals straight from the original amplitudes
        let sel: Vec<usize> = (0..8).filter(|i| (i >> 2) & 1 == rec.outcome as usize).collect();
        let tot: f64 = sel.iter().map(|&i| s0.amplitudes()[i].norm_sqr()).sum();
        for (k, b) in before.iter().enumerate() {
            let p: f64 = sel.iter().filter(|&&i| (i >> k) & 1 == 1).map(|&i| s0.amplitudes()[i].norm_sqr()).sum();
            assert!((p / tot - b).abs() < 1e-12);
        }
        s.drop_qubit(&qs[2]).unwrap();
        assert!((s.probability_one(&qs[0]).unwrap() - before[0]).abs() < 1e-12);
        assert!((s.probability_one(&qs[1]).unwrap() - before[1]).abs() < 1e-12);
    }

    #[test]
    fn overlaps() {
        let l = StateVector::init_register(vec![photon("a1")], &[0]).unwrap();
        let r = StateVector::init_register(vec![photon("a1")], &[1]).unwrap();
        assert!(close(l.overlap(&l).unwrap(), c(1.0, 0.0)));
        assert!(close(l.overlap(&r).unwrap(), c(0.0, 0.0)));
        let other = StateVector::init_register(vec![photon("b1")], &[0]).unwrap();
        assert_eq!(l.overlap(&other), Err(Error::RegisterMismatch));
    }

    #[test]
    fn projection_weight_on_subsystem() {
        let psi = bell_pair();
        let l = StateVector::init_register(vec![photon("a2")], &[0]).unwrap();
        assert!((psi.projection_weight(&l).unwrap() - 0.5).abs() < 1e-12);
        assert!((psi.projection_weight(&psi).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tensor_and_append_order() {
        let a = StateVector::init_register(vec![photon("a1")], &[1]).unwrap();
        let b = StateVector::init_register(vec![photon("b1")], &[0]).unwrap();
        let ab = a.tensor(&b).unwrap();
        assert_eq!(ab.amplitudes()[1], c(1.0, 0.0));
        let mut a2 = a.clone();
        a2.append(photon("b1"), 1).unwrap();
        assert_eq!(a2.amplitudes()[3], c(1.0, 0.0));
    }

    #[test]
    fn postselect_zero_probability() {
        let q = photon("a1");
        let mut s = StateVector::init_register(vec![q.clone()], &[0]).unwrap();
        assert!(matches!(s.postselect(&q, 1), Err(Error::ZeroProbability { .. })));
        assert_eq!(s.postselect(&q, 0).unwrap(), 1.0);
    }
}
