//! Bell, GHZ and concatenated-GHZ states in the circular-polarization basis.
//!
//! # Labels
//!
//! A C-GHZ state on `n` logic qubits of `m` photons each is
//! (⊗_j GHZ_m^{s_j} + sign · ⊗_j GHZ_m^{−s_j}) / √2, where logic qubit `j`
//! carries GHZ⁻ in the first branch iff bit `j` of the pattern is set. Swapping
//! the branches gives the same state up to a global phase, so the pattern is
//! stored with bit 0 cleared.
//!
//! The group index `k` (1-based) is obtained from the representative whose
//! *last* logic qubit is GHZ⁺: `k − 1 = Σ_{j<n−1} (b_j ⊕ b_{n−1}) 2^j`. This
//! numbering gives Φ₂ = φ⁻φ⁺…φ⁺, Φ₃ = φ⁺φ⁻φ⁺…φ⁺ and Φ_{2^{n−1}} = φ⁺…φ⁺φ⁻,
//! and coincides with the parity signature read as a Gray code (see
//! [`crate::protocol::decode_group`]).
//!
//! # Register layout
//!
//! Logic qubit `j` owns photons `j·m … j·m + m − 1`, labeled with the letter
//! `a + j` followed by the 1-based physical index: `a1, a2, b1, b2, …`.

use alloc::{
    format,
    string::{String, ToString},
    vec,
    vec::Vec,
};
use core::f64::consts::FRAC_1_SQRT_2;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
use num_traits::Float;

use crate::qstate::{QubitId, StateVector, DEFAULT_MAX_QUBITS};
use crate::{Error, Result};

/// Largest logic-qubit count the label type can hold.
pub const MAX_LOGIC_QUBITS: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `Minus` iff `bit` is set.
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

/// Label of mode `physical` (1-based) of logic qubit `logic` (0-based), e.g. `b2`.
pub fn mode_label(logic: usize, physical: usize) -> String {
    let letter = char::from(b'a' + logic as u8);
    format!("{letter}{physical}")
}

/// Photon register of an (n, m) C-GHZ state, logic-major.
pub fn logic_register(n: usize, m: usize) -> Vec<QubitId> {
    (0..n).flat_map(|j| (1..=m).map(move |p| QubitId::photon(mode_label(j, p)))).collect()
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Two-photon Bell state on modes `a1`, `a2`.
pub fn bell(kind: BellKind) -> StateVector {
    let h = FRAC_1_SQRT_2;
    let z = 0.0;
    // index = bit(a1) + 2 bit(a2): LL, RL, LR, RR
    let amps = match kind {
        BellKind::PhiPlus => [h, z, z, h],
        BellKind::PhiMinus => [h, z, z, -h],
        BellKind::PsiPlus => [z, h, h, z],
        BellKind::PsiMinus => [z, -h, h, z],
    };
    StateVector::from_amplitudes(logic_register(1, 2), amps.iter().map(|&a| c(a)).collect(), DEFAULT_MAX_QUBITS)
        .expect("Bell states are normalized")
}

/// (|L⟩^{⊗m} ± |R⟩^{⊗m}) / √2 on modes `a1 … am`.
pub fn ghz(sign: Sign, m: usize) -> Result<StateVector> {
    if m < 2 {
        return Err(Error::InvalidLabel(format!("GHZ needs m >= 2, got {m}")));
    }
    if m > DEFAULT_MAX_QUBITS {
        return Err(Error::CapExceeded { requested: m, max: DEFAULT_MAX_QUBITS });
    }
    let mut amps = vec![c(0.0); 1 << m];
    amps[0] = c(FRAC_1_SQRT_2);
    amps[(1 << m) - 1] = c(sign.factor() * FRAC_1_SQRT_2);
    StateVector::from_amplitudes(logic_register(1, m), amps, DEFAULT_MAX_QUBITS)
}

/// Identifies one of the 2^n C-GHZ states with `m` photons per logic qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CghzLabel {
    n: usize,
    m: usize,
    pattern: u32,
    sign: Sign,
}

impl CghzLabel {
    pub fn new(n: usize, m: usize, pattern: u32, sign: Sign) -> Result<Self> {
        check_shape(n, m)?;
        if pattern >> n != 0 {
            return Err(Error::InvalidLabel(format!("pattern {pattern:#b} has more than {n} bits")));
        }
        if pattern & 1 != 0 {
            return Err(Error::InvalidLabel("pattern bit of the first logic qubit must be 0".into()));
        }
        Ok(Self { n, m, pattern, sign })
    }

    /// Label from any representative pattern, complementing it if bit 0 is set.
    pub fn canonical(n: usize, m: usize, pattern: u32, sign: Sign) -> Result<Self> {
        check_shape(n, m)?;
        let mask = full_mask(n);
        let pattern = if pattern & 1 != 0 { !pattern & mask } else { pattern & mask };
        Self::new(n, m, pattern, sign)
    }

    pub fn from_k(n: usize, m: usize, k: usize, sign: Sign) -> Result<Self> {
        check_shape(n, m)?;
        let groups = 1usize << (n - 1);
        if k == 0 || k > groups {
            return Err(Error::InvalidLabel(format!("k = {k} outside 1..={groups}")));
        }
        // representative with the last logic qubit cleared
        let rep = (k - 1) as u32;
        Self::canonical(n, m, rep, sign)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Bit `j` set iff logic qubit `j` is GHZ⁻ in the first branch; bit 0 is clear.
    pub fn pattern(&self) -> u32 {
        self.pattern
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn pattern_bit(&self, j: usize) -> bool {
        (self.pattern >> j) & 1 == 1
    }

    pub fn k(&self) -> usize {
        let last = if self.pattern_bit(self.n - 1) { full_mask(self.n) } else { 0 };
        let rep = (self.pattern ^ last) & full_mask(self.n - 1);
        rep as usize + 1
    }

    /// Same state with a different physical-qubit count.
    pub fn with_m(&self, m: usize) -> Result<Self> {
        Self::new(self.n, m, self.pattern, self.sign)
    }

    /// Text form `k±`, e.g. `2-`.
    pub fn text(&self) -> String {
        format!("{}{}", self.k(), self.sign)
    }

    /// Parse the `k±` form for the given shape.
    pub fn parse(text: &str, n: usize, m: usize) -> Result<Self> {
        let text = text.trim();
        let err = || Error::ParseLabel(text.to_string());
        let (digits, sign) = match text.char_indices().last() {
            Some((i, '+')) => (&text[..i], Sign::Plus),
            Some((i, '-')) => (&text[..i], Sign::Minus),
            _ => return Err(err()),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let k = usize::from_str(digits).map_err(|_| err())?;
        Self::from_k(n, m, k, sign)
    }
}

impl fmt::Display for CghzLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.k(), self.sign)
    }
}

fn full_mask(bits: usize) -> u32 {
    if bits >= 32 {
        u32::MAX
    } else {
        (1u32 << bits) - 1
    }
}

fn check_shape(n: usize, m: usize) -> Result<()> {
    if !(2..=MAX_LOGIC_QUBITS).contains(&n) {
        return Err(Error::InvalidLabel(format!("n = {n} outside 2..={MAX_LOGIC_QUBITS}")));
    }
    if m < 2 {
        return Err(Error::InvalidLabel(format!("m = {m} must be at least 2")));
    }
    Ok(())
}

/// All 2^n labels, ordered by k then `+` before `-`.
pub fn enumerate_labels(n: usize, m: usize) -> Result<Vec<CghzLabel>> {
    check_shape(n, m)?;
    let mut labels = Vec::with_capacity(1 << n);
    for k in 1..=(1usize << (n - 1)) {
        for sign in [Sign::Plus, Sign::Minus] {
            labels.push(CghzLabel::from_k(n, m, k, sign)?);
        }
    }
    Ok(labels)
}

pub fn cghz(label: &CghzLabel) -> Result<StateVector> {
    cghz_capped(label, DEFAULT_MAX_QUBITS)
}

pub fn cghz_capped(label: &CghzLabel, max_qubits: usize) -> Result<StateVector> {
    let (n, m) = (label.n, label.m);
    let size = n * m;
    if size > max_qubits {
        return Err(Error::CapExceeded { requested: size, max: max_qubits });
    }
    let block = (1usize << m) - 1;
    let b = label.pattern;
    let not_b = !b & full_mask(n);
    let norm = FRAC_1_SQRT_2 * Float::sqrt(Float::powi(0.5f64, n as i32));
    let mut amps = vec![c(0.0); 1 << size];
    for x in 0u32..(1 << n) {
        let first = if (x & b).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
        let second = if (x & not_b).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
        let amp = norm * (first + label.sign.factor() * second);
        if amp == 0.0 {
            continue;
        }
        let index = (0..n).filter(|j| (x >> j) & 1 == 1).fold(0usize, |acc, j| acc | (block << (j * m)));
        amps[index] = c(amp);
    }
    StateVector::from_amplitudes(logic_register(n, m), amps, max_qubits)
}

/// Find the C-GHZ label whose state matches `state` with |overlap| ≥ 1 − 1e-9.
pub fn identify(state: &StateVector, n: usize, m: usize) -> Result<CghzLabel> {
    if state.register() != logic_register(n, m).as_slice() {
        return Err(Error::ShapeMismatch(format!("expected the ({n}, {m}) photon register")));
    }
    let mut best = 0.0f64;
    for label in enumerate_labels(n, m)? {
        let reference = cghz_capped(&label, state.max_qubits().max(n * m))?;
        let ov = reference.overlap(state)?.norm();
        if ov >= 1.0 - 1e-9 {
            return Ok(label);
        }
        best = best.max(ov);
    }
    Err(Error::NotInFamily { best_overlap: best })
}
