//! The two-step C-GHZ analyzer.
//!
//! 1. **m-reduction.** The last m − 2 photons of every logic qubit go through a
//!    half-wave plate and are measured. An odd number of |R⟩ outcomes toggles
//!    that logic qubit between GHZ⁺ and GHZ⁻, which is recorded in the
//!    [`PauliFrame`]. What remains is an (n, 2) C-GHZ state.
//! 2. **Parity step.** All 2n photons pass a half-wave plate (φ⁺ → φ⁺,
//!    φ⁻ → ψ⁺). Atom `j` (in (|g_L⟩+|g_R⟩)/√2) reflects the row-1 photons of
//!    logic qubits j and j+1, atom `j_2` the row-2 photons. After an atomic
//!    Hadamard, |g_R⟩ means even parity and |g_L⟩ odd. Comparing atom j with
//!    atom j_2 yields d_j = b_j ⊕ b_{j+1}, which fixes the group.
//! 3. **Sign step.** The row-2 photons are left in (|u⟩ ± |ū⟩)/√2. They pass a
//!    half-wave plate and reflect in turn off one more atom in |g_L⟩; the
//!    readout separates the two signs. Whether the residual sign equals the
//!    input sign depends on the parity outcomes; [`SignCalibrator`] learns that
//!    dependence by simulating the `+` member of the group.
//!
//! Atoms are created, measured and removed one at a time, so the live
//! register never exceeds 2n + 1 qubits after the reduction. All Faraday gates
//! are diagonal and commute, so this ordering does not change any statistics.

use alloc::{
    collections::BTreeMap,
    format,
    string::{String, ToString},
    vec,
    vec::Vec,
};
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use num_traits::Float;
use rand::Rng;
use spin::RwLock;

use crate::cavity::{faraday_diag, FaradayPhases};
use crate::qstate::{QubitId, StateVector, DEFAULT_MAX_QUBITS, HADAMARD, PAULI_X};
use crate::rng::{rng_from_seed, SimRng};
use crate::states::{cghz_capped, identify, logic_register, mode_label, CghzLabel, Sign};
use crate::{Error, Result};

/// Photon of logic qubit `logic` (0-based) in row `row` (1 or 2), e.g. `b2`.
pub fn photon(logic: usize, row: usize) -> QubitId {
    QubitId::photon(mode_label(logic, row))
}

/// Parity-step atom `pair + 1` (row 1) or `(pair + 1)_2` (row 2).
pub fn parity_atom(pair: usize, row: usize) -> QubitId {
    if row == 1 {
        QubitId::atom(format!("{}", pair + 1))
    } else {
        QubitId::atom(format!("{}_2", pair + 1))
    }
}

/// The single sign-step atom, named after the logic-qubit count.
pub fn sign_atom(n: usize) -> QubitId {
    QubitId::atom(format!("{n}"))
}

/// Render outcome bits as a string of `0`/`1`.
pub fn bitstring(bits: &[u8]) -> String {
    bits.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
}

/// Raw parity-step outcomes: atoms 1 … n−1, then 1_2 … (n−1)_2.
/// Outcome 0 is |g_L⟩ and 1 is |g_R⟩.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParitySignature {
    n: usize,
    raw: Vec<u8>,
}

impl ParitySignature {
    pub fn new(n: usize, raw: Vec<u8>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidLabel(format!("n = {n} must be at least 2")));
        }
        if raw.len() != 2 * (n - 1) {
            return Err(Error::LengthMismatch { expected: 2 * (n - 1), actual: raw.len() });
        }
        if raw.iter().any(|&b| b > 1) {
            return Err(Error::InvalidLabel("signature bits must be 0 or 1".into()));
        }
        Ok(Self { n, raw })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn raw(&self) -> &[u8] {
        &self.raw
    }

    /// Outcome of parity atom `pair` in `row`.
    pub fn outcome(&self, pair: usize, row: usize) -> u8 {
        self.raw[(row - 1) * (self.n - 1) + pair]
    }

    /// d_j = 1 iff atoms j and j_2 disagree.
    pub fn d(&self) -> Vec<u8> {
        (0..self.n - 1).map(|j| self.outcome(j, 1) ^ self.outcome(j, 2)).collect()
    }
}

/// Deferred corrections implied by measurement outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PauliFrame {
    /// One bit per logic qubit: odd |R⟩ count during the m-reduction.
    pub flips: Vec<bool>,
    /// Residual sign differs from the input sign for this signature.
    pub sign_flip: bool,
}

impl PauliFrame {
    pub fn flip_mask(&self) -> u32 {
        self.flips.iter().enumerate().fold(0u32, |m, (j, &f)| m | (u32::from(f) << j))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReadoutMode {
    /// Interact with the sign atom and compare against propagated references.
    Cavity,
    /// Measure the row-2 photons after the half-wave plates; even parity is `+`.
    Oracle,
}

/// Detection efficiencies; a missed click aborts the run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detectors {
    pub eta_p: f64,
    pub eta_a: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisConfig {
    pub phases: FaradayPhases,
    pub mode: ReadoutMode,
    /// Flip row-2 photons onto |L…L⟩ ± |R…R⟩ before the sign step.
    pub bit_flip_pass: bool,
    pub max_qubits: usize,
    pub detectors: Option<Detectors>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            phases: FaradayPhases::ideal(),
            mode: ReadoutMode::Cavity,
            bit_flip_pass: false,
            max_qubits: DEFAULT_MAX_QUBITS,
            detectors: None,
        }
    }
}

/// Result of the m-reduction.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduction {
    pub frame: PauliFrame,
    /// Per logic qubit, the outcomes of its photons 3 … m.
    pub outcomes: Vec<Vec<u8>>,
    pub detections: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub n: usize,
    pub m: usize,
    pub input: Option<CghzLabel>,
    pub identified: CghzLabel,
    pub signature: ParitySignature,
    pub reduction_outcomes: Vec<Vec<u8>>,
    pub readout: Sign,
    pub frame: PauliFrame,
    pub seed: u64,
    /// State norm after input preparation, reduction, parity step and sign step.
    pub norms: Vec<f64>,
}

impl AnalysisReport {
    pub fn correct(&self) -> bool {
        self.input == Some(self.identified)
    }
}

/// Outcome of a run under a detector model.
#[derive(Debug, Clone, PartialEq)]
pub enum RunOutcome {
    Completed(AnalysisReport),
    /// A photon or atom detector failed to click.
    Lost,
}

#[derive(Clone, Copy)]
enum Detector {
    Photon,
    Atom,
}

/// Returns false if the detector misses. Draws nothing without a model.
fn clicks(detectors: Option<&Detectors>, which: Detector, rng: &mut SimRng) -> bool {
    match detectors {
        None => true,
        Some(d) => {
            let eta = match which {
                Detector::Photon => d.eta_p,
                Detector::Atom => d.eta_a,
            };
            rng.gen::<f64>() < eta
        }
    }
}

fn expect_register(state: &StateVector, n: usize, m: usize) -> Result<()> {
    if state.register() != logic_register(n, m).as_slice() {
        return Err(Error::ShapeMismatch(format!("expected the {}-photon register of an ({n}, {m}) state", n * m)));
    }
    Ok(())
}

/// Reduce an (n, m) C-GHZ register to (n, 2) by measuring photons 3 … m of
/// every logic qubit after a half-wave plate.
pub fn reduce_m(state: &mut StateVector, n: usize, m: usize, rng: &mut SimRng) -> Result<Reduction> {
    Ok(reduce_m_with(state, n, m, rng, None)?.expect("no detector model"))
}

fn reduce_m_with(
    state: &mut StateVector,
    n: usize,
    m: usize,
    rng: &mut SimRng,
    detectors: Option<&Detectors>,
) -> Result<Option<Reduction>> {
    if m < 2 {
        return Err(Error::InvalidLabel(format!("m = {m} must be at least 2")));
    }
    expect_register(state, n, m)?;
    let mut frame = PauliFrame { flips: vec![false; n], sign_flip: false };
    let mut outcomes = vec![Vec::new(); n];
    for (j, (seen, flip)) in outcomes.iter_mut().zip(frame.flips.iter_mut()).enumerate() {
        for p in 3..=m {
            let q = QubitId::photon(mode_label(j, p));
            state.apply_1q(&q, &HADAMARD)?;
            if !clicks(detectors, Detector::Photon, rng) {
                return Ok(None);
            }
            let rec = state.measure(&q, rng)?;
            state.drop_qubit(&q)?;
            seen.push(rec.outcome);
            *flip ^= rec.outcome == 1;
        }
    }
    Ok(Some(Reduction { frame, outcomes, detections: n * (m - 2) }))
}

/// Faraday gate list of the parity step as (photon, atom) pairs, in the
/// default order: atom 1, 1_2, 2, 2_2, …, each with its two photons.
pub fn parity_gates(n: usize) -> Vec<(QubitId, QubitId)> {
    let mut gates = Vec::with_capacity(4 * (n - 1));
    for j in 0..n - 1 {
        for row in 1..=2 {
            gates.push((photon(j, row), parity_atom(j, row)));
            gates.push((photon(j + 1, row), parity_atom(j, row)));
        }
    }
    gates
}

fn parity_atoms_in_order(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n - 1).flat_map(|j| [(j, 1), (j, 2)])
}

fn hadamard_all_photons(state: &mut StateVector, n: usize) -> Result<()> {
    for j in 0..n {
        for row in 1..=2 {
            state.apply_1q(&photon(j, row), &HADAMARD)?;
        }
    }
    Ok(())
}

/// Joint photon–atom state of the parity step just before the atomic
/// Hadamards, with every atom kept in the register (1, 1_2, 2, 2_2, …).
///
/// `order`, when given, is a permutation of [`parity_gates`] indices fixing
/// the order in which the Faraday gates are applied.
pub fn parity_interactions(
    state: &StateVector,
    n: usize,
    ph: &FaradayPhases,
    order: Option<&[usize]>,
) -> Result<StateVector> {
    expect_register(state, n, 2)?;
    let mut joint = state.clone();
    hadamard_all_photons(&mut joint, n)?;
    for (j, row) in parity_atoms_in_order(n) {
        let atom = parity_atom(j, row);
        joint.append(atom.clone(), 0)?;
        joint.apply_1q(&atom, &HADAMARD)?;
    }
    let gates = parity_gates(n);
    let default_order: Vec<usize> = (0..gates.len()).collect();
    let order = order.unwrap_or(&default_order);
    let mut seen = vec![false; gates.len()];
    if order.len() != gates.len() || order.iter().any(|&i| i >= gates.len() || core::mem::replace(&mut seen[i], true)) {
        return Err(Error::ShapeMismatch("gate order is not a permutation".into()));
    }
    let d = faraday_diag(ph);
    for &i in order {
        let (p, a) = &gates[i];
        joint.apply_diag2(p, a, &d)?;
    }
    Ok(joint)
}

/// Drives the parity step one atom at a time. `resolve` produces the outcome of
/// each atom (by sampling or post-selection); `None` aborts the run.
fn run_parity_step(
    state: &mut StateVector,
    n: usize,
    ph: &FaradayPhases,
    mut resolve: impl FnMut(&mut StateVector, &QubitId, usize) -> Result<Option<u8>>,
) -> Result<Option<ParitySignature>> {
    expect_register(state, n, 2)?;
    hadamard_all_photons(state, n)?;
    let d = faraday_diag(ph);
    let mut raw = vec![0u8; 2 * (n - 1)];
    for (j, row) in parity_atoms_in_order(n) {
        let atom = parity_atom(j, row);
        state.append(atom.clone(), 0)?;
        state.apply_1q(&atom, &HADAMARD)?;
        state.apply_diag2(&photon(j, row), &atom, &d)?;
        state.apply_diag2(&photon(j + 1, row), &atom, &d)?;
        state.apply_1q(&atom, &HADAMARD)?;
        let slot = (row - 1) * (n - 1) + j;
        match resolve(state, &atom, slot)? {
            Some(outcome) => raw[slot] = outcome,
            None => return Ok(None),
        }
        state.drop_qubit(&atom)?;
    }
    ParitySignature::new(n, raw).map(Some)
}

/// Parity step on an (n, 2) register. Leaves the 2n photons collapsed.
pub fn step1(state: &mut StateVector, n: usize, ph: &FaradayPhases, rng: &mut SimRng) -> Result<ParitySignature> {
    Ok(step1_with(state, n, ph, rng, None)?.expect("no detector model"))
}

fn step1_with(
    state: &mut StateVector,
    n: usize,
    ph: &FaradayPhases,
    rng: &mut SimRng,
    detectors: Option<&Detectors>,
) -> Result<Option<ParitySignature>> {
    run_parity_step(state, n, ph, |s, atom, _| {
        if !clicks(detectors, Detector::Atom, rng) {
            return Ok(None);
        }
        Ok(Some(s.measure(atom, rng)?.outcome))
    })
}

/// Pattern b (bit 0 clear) reconstructed from the signature:
/// b_{j+1} = b_j ⊕ d_j.
pub fn decode_pattern(sig: &ParitySignature) -> u32 {
    let mut b = 0u32;
    let mut bit = 0u32;
    for (j, dj) in sig.d().into_iter().enumerate() {
        bit ^= u32::from(dj);
        b |= bit << (j + 1);
    }
    b
}

/// Group index k identified by the signature.
pub fn decode_group(sig: &ParitySignature) -> usize {
    CghzLabel::new(sig.n, 2, decode_pattern(sig), Sign::Plus).expect("decoded pattern has bit 0 clear").k()
}

/// Row-2 bit string u (bit 0 clear) such that the row-2 photons sit in
/// (|u⟩ ± |ū⟩)/√2, read off the row-2 atoms (|g_L⟩ = odd parity).
pub fn row2_pattern(sig: &ParitySignature) -> u32 {
    let mut u = 0u32;
    let mut bit = 0u32;
    for j in 0..sig.n - 1 {
        bit ^= u32::from(sig.outcome(j, 2) == 0);
        u |= bit << (j + 1);
    }
    u
}

fn row2_register(n: usize) -> Vec<QubitId> {
    (0..n).map(|j| photon(j, 2)).collect()
}

/// (|u⟩ + sign |ū⟩)/√2 on the row-2 photons followed by the sign atom in |g_L⟩.
fn row2_reference(n: usize, u: u32, sign: Sign) -> Result<StateVector> {
    let mut register = row2_register(n);
    register.push(sign_atom(n));
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << (n + 1)];
    let mask = (1u32 << n) - 1;
    amps[u as usize] += FRAC_1_SQRT_2;
    amps[(!u & mask) as usize] += sign.factor() * FRAC_1_SQRT_2;
    StateVector::from_amplitudes(register, amps, DEFAULT_MAX_QUBITS)
}

/// The sign-step optics: half-wave plates on row 2, then each row-2 photon in
/// turn reflects off the sign atom.
fn sign_step_optics(state: &mut StateVector, n: usize, ph: &FaradayPhases) -> Result<()> {
    let d = faraday_diag(ph);
    for j in 0..n {
        state.apply_1q(&photon(j, 2), &HADAMARD)?;
    }
    let atom = sign_atom(n);
    for j in 0..n {
        state.apply_diag2(&photon(j, 2), &atom, &d)?;
    }
    Ok(())
}

fn apply_bit_flips(state: &mut StateVector, n: usize, u: u32) -> Result<()> {
    for j in 0..n {
        if (u >> j) & 1 == 1 {
            state.apply_1q(&photon(j, 2), &PAULI_X)?;
        }
    }
    Ok(())
}

/// Projection weights of the post-interaction state onto the propagated `+`
/// and `−` references. Leaves the sign atom in the register.
fn cavity_weights(
    state: &mut StateVector,
    n: usize,
    sig: &ParitySignature,
    ph: &FaradayPhases,
    bit_flip_pass: bool,
) -> Result<[f64; 2]> {
    let mut u = row2_pattern(sig);
    if bit_flip_pass {
        apply_bit_flips(state, n, u)?;
        u = 0;
    }
    state.append(sign_atom(n), 0)?;
    sign_step_optics(state, n, ph)?;
    let mut weights = [0.0; 2];
    for (w, sign) in weights.iter_mut().zip([Sign::Plus, Sign::Minus]) {
        let mut reference = row2_reference(n, u, sign)?;
        sign_step_optics(&mut reference, n, ph)?;
        *w = state.projection_weight(&reference)?;
    }
    Ok(weights)
}

/// Sign step on the 2n photons left by [`step1`]; returns the residual sign.
/// Everything touched (row-2 photons, sign atom) is measured and dropped.
pub fn step2(
    state: &mut StateVector,
    sig: &ParitySignature,
    ph: &FaradayPhases,
    mode: ReadoutMode,
    bit_flip_pass: bool,
    rng: &mut SimRng,
) -> Result<Sign> {
    Ok(step2_with(state, sig, ph, mode, bit_flip_pass, rng, None)?.expect("no detector model"))
}

fn step2_with(
    state: &mut StateVector,
    sig: &ParitySignature,
    ph: &FaradayPhases,
    mode: ReadoutMode,
    bit_flip_pass: bool,
    rng: &mut SimRng,
    detectors: Option<&Detectors>,
) -> Result<Option<Sign>> {
    let n = sig.n;
    expect_register(state, n, 2)?;
    let readout = match mode {
        ReadoutMode::Cavity => {
            let [plus, minus] = cavity_weights(state, n, sig, ph, bit_flip_pass)?;
            if !clicks(detectors, Detector::Atom, rng) {
                return Ok(None);
            }
            let atom = sign_atom(n);
            state.measure(&atom, rng)?;
            state.drop_qubit(&atom)?;
            for j in 0..n {
                let q = photon(j, 2);
                state.measure(&q, rng)?;
                state.drop_qubit(&q)?;
            }
            if minus > plus {
                Sign::Minus
            } else {
                Sign::Plus
            }
        }
        ReadoutMode::Oracle => {
            if bit_flip_pass {
                apply_bit_flips(state, n, row2_pattern(sig))?;
            }
            let mut parity = 0u8;
            for j in 0..n {
                let q = photon(j, 2);
                state.apply_1q(&q, &HADAMARD)?;
                parity ^= state.measure(&q, rng)?.outcome;
                state.drop_qubit(&q)?;
            }
            if !clicks(detectors, Detector::Atom, rng) {
                return Ok(None);
            }
            Sign::from_bit(parity == 1)
        }
    };
    Ok(Some(readout))
}

/// Brute-force sign calibration: push the `+` member of the signature's group
/// through a parity step post-selected on `sig` and through the ideal sign
/// step. Returns true when that readout is `−`.
pub fn calibrate_sign(sig: &ParitySignature) -> Result<bool> {
    let n = sig.n;
    let label = CghzLabel::new(n, 2, decode_pattern(sig), Sign::Plus)?;
    let mut state = cghz_capped(&label, DEFAULT_MAX_QUBITS)?;
    let ideal = FaradayPhases::ideal();
    run_parity_step(&mut state, n, &ideal, |s, atom, slot| match s.postselect(atom, sig.raw[slot]) {
        Ok(_) => Ok(Some(sig.raw[slot])),
        Err(Error::ZeroProbability { .. }) => Err(Error::UnreachableSignature),
        Err(e) => Err(e),
    })?;
    let [plus, minus] = cavity_weights(&mut state, n, sig, &ideal, false)?;
    Ok(minus > plus)
}

/// Memoized [`calibrate_sign`]. Lookups take a shared lock; only a miss takes
/// the write lock.
#[derive(Debug, Default)]
pub struct SignCalibrator {
    table: RwLock<BTreeMap<ParitySignature, bool>>,
}

impl SignCalibrator {
    pub const fn new() -> Self {
        Self { table: RwLock::new(BTreeMap::new()) }
    }

    pub fn sign_flip(&self, sig: &ParitySignature) -> Result<bool> {
        if let Some(&flip) = self.table.read().get(sig) {
            return Ok(flip);
        }
        let flip = calibrate_sign(sig)?;
        self.table.write().insert(sig.clone(), flip);
        Ok(flip)
    }

    pub fn len(&self) -> usize {
        self.table.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Analyze the C-GHZ state named by `input`.
pub fn analyze(
    input: &CghzLabel,
    config: &AnalysisConfig,
    calibrator: &SignCalibrator,
    seed: u64,
) -> Result<AnalysisReport> {
    let config = AnalysisConfig { detectors: None, ..*config };
    match run(input, &config, calibrator, seed)? {
        RunOutcome::Completed(report) => Ok(report),
        RunOutcome::Lost => unreachable!("ideal detectors never miss"),
    }
}

/// Analyze an explicit state, which must match one of the (n, m) C-GHZ states
/// to within 1e-9 in overlap.
pub fn analyze_state(
    state: StateVector,
    n: usize,
    m: usize,
    config: &AnalysisConfig,
    calibrator: &SignCalibrator,
    seed: u64,
) -> Result<AnalysisReport> {
    let input = identify(&state, n, m)?;
    let config = AnalysisConfig { detectors: None, ..*config };
    match run_on(state, Some(input), n, m, &config, calibrator, seed)? {
        RunOutcome::Completed(report) => Ok(report),
        RunOutcome::Lost => unreachable!("ideal detectors never miss"),
    }
}

/// Full pipeline honoring `config.detectors`.
pub fn run(input: &CghzLabel, config: &AnalysisConfig, calibrator: &SignCalibrator, seed: u64) -> Result<RunOutcome> {
    let state = cghz_capped(input, config.max_qubits)?;
    run_on(state, Some(*input), input.n(), input.m(), config, calibrator, seed)
}

fn run_on(
    mut state: StateVector,
    input: Option<CghzLabel>,
    n: usize,
    m: usize,
    config: &AnalysisConfig,
    calibrator: &SignCalibrator,
    seed: u64,
) -> Result<RunOutcome> {
    let mut rng = rng_from_seed(seed);
    let detectors = config.detectors.as_ref();
    let norm = |s: &StateVector| Float::sqrt(s.norm_sqr());
    let mut norms = vec![norm(&state)];

    let Some(reduction) = reduce_m_with(&mut state, n, m, &mut rng, detectors)? else {
        return Ok(RunOutcome::Lost);
    };
    norms.push(norm(&state));

    let Some(signature) = step1_with(&mut state, n, &config.phases, &mut rng, detectors)? else {
        return Ok(RunOutcome::Lost);
    };
    norms.push(norm(&state));
    let reduced_pattern = decode_pattern(&signature);

    let Some(readout) =
        step2_with(&mut state, &signature, &config.phases, config.mode, config.bit_flip_pass, &mut rng, detectors)?
    else {
        return Ok(RunOutcome::Lost);
    };
    norms.push(norm(&state));

    let sign_flip = calibrator.sign_flip(&signature)?;
    let mut frame = reduction.frame;
    frame.sign_flip = sign_flip;
    let sign = Sign::from_bit(readout.is_minus() ^ sign_flip);
    let identified = CghzLabel::canonical(n, m, reduced_pattern ^ frame.flip_mask(), sign)?;

    Ok(RunOutcome::Completed(AnalysisReport {
        n,
        m,
        input,
        identified,
        signature,
        reduction_outcomes: reduction.outcomes,
        readout,
        frame,
        seed,
        norms,
    }))
}

impl AnalysisReport {
    pub fn signature_raw(&self) -> String {
        bitstring(self.signature.raw())
    }

    pub fn signature_d(&self) -> String {
        bitstring(&self.signature.d())
    }

    pub fn input_text(&self) -> Option<String> {
        self.input.map(|l| l.text())
    }

    pub fn reduction_text(&self) -> Vec<String> {
        self.reduction_outcomes.iter().map(|o| bitstring(o)).collect()
    }

    pub fn readout_text(&self) -> String {
        self.readout.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{cghz, enumerate_labels, ghz};

    fn sig(n: usize, raw: &[u8]) -> ParitySignature {
        ParitySignature::new(n, raw.to_vec()).unwrap()
    }

    #[test]
    fn decode_examples() {
        // d = 00, 10, 11 for n = 3 (raw = row-1 atoms then row-2 atoms)
        assert_eq!(decode_group(&sig(3, &[1, 1, 1, 1])), 1);
        assert_eq!(decode_group(&sig(3, &[1, 0, 0, 0])), 2);
        assert_eq!(decode_group(&sig(3, &[1, 1, 0, 0])), 3);
        assert_eq!(decode_group(&sig(3, &[0, 1, 0, 0])), 4);
    }

    #[test]
    fn decode_is_a_gray_code() {
        // d read with d_1 least significant equals gray(k - 1)
        for n in 2..=6 {
            for raw_bits in 0u32..(1 << (2 * (n - 1))) {
                let raw: Vec<u8> = (0..2 * (n - 1)).map(|i| ((raw_bits >> i) & 1) as u8).collect();
                let s = sig(n, &raw);
                let d = s.d().iter().enumerate().fold(0usize, |v, (j, &b)| v | (usize::from(b) << j));
                let k = decode_group(&s);
                let i = k - 1;
                assert_eq!(d, i ^ (i >> 1));
            }
        }
    }

    #[test]
    fn signature_validation() {
        assert!(ParitySignature::new(3, vec![0, 1, 0]).is_err());
        assert!(ParitySignature::new(3, vec![0, 1, 0, 2]).is_err());
        assert_eq!(sig(3, &[1, 0, 1, 1]).d(), vec![0, 1]);
    }

    #[test]
    fn reduce_m_is_identity_for_pairs() {
        let label = CghzLabel::new(3, 2, 0b010, Sign::Minus).unwrap();
        let mut s = cghz(&label).unwrap();
        let before = s.clone();
        let red = reduce_m(&mut s, 3, 2, &mut rng_from_seed(0)).unwrap();
        assert_eq!(s, before);
        assert_eq!(red.detections, 0);
        assert_eq!(red.frame.flips, vec![false; 3]);
    }

    #[test]
    fn ghz3_even_outcome_leaves_phi() {
        for sign in [Sign::Plus, Sign::Minus] {
            for seed in 0..20 {
                let mut s = ghz(sign, 3).unwrap();
                let q = QubitId::photon("a3");
                s.apply_1q(&q, &HADAMARD).unwrap();
                let rec = s.measure(&q, &mut rng_from_seed(seed)).unwrap();
                s.drop_qubit(&q).unwrap();
                let want = if rec.outcome == 0 { sign } else { sign.flipped() };
                let target = ghz(want, 2).unwrap();
                assert!((s.overlap(&target).unwrap().norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn reduced_state_matches_frame() {
        for m in 3..=4 {
            for label in enumerate_labels(3, m).unwrap() {
                for seed in 0..10 {
                    let mut s = cghz(&label).unwrap();
                    let red = reduce_m(&mut s, 3, m, &mut rng_from_seed(seed)).unwrap();
                    assert_eq!(red.detections, 3 * (m - 2));
                    let reduced =
                        CghzLabel::canonical(3, 2, label.pattern() ^ red.frame.flip_mask(), label.sign()).unwrap();
                    let ov = cghz(&reduced).unwrap().overlap(&s).unwrap();
                    assert!((ov.norm() - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn phi1_pairs_always_agree() {
        for sign in [Sign::Plus, Sign::Minus] {
            let label = CghzLabel::new(3, 2, 0, sign).unwrap();
            for seed in 0..50 {
                let mut s = cghz(&label).unwrap();
                let sg = step1(&mut s, 3, &FaradayPhases::ideal(), &mut rng_from_seed(seed)).unwrap();
                assert_eq!(sg.d(), vec![0, 0]);
            }
            let phi2 = CghzLabel::from_k(3, 2, 2, sign).unwrap();
            for seed in 0..50 {
                let mut s = cghz(&phi2).unwrap();
                let sg = step1(&mut s, 3, &FaradayPhases::ideal(), &mut rng_from_seed(seed)).unwrap();
                assert_eq!(sg.d(), vec![1, 0]);
            }
        }
    }

    #[test]
    fn canonical_residual_reads_its_sign() {
        // Row-2 photons in (|LLL⟩ ± |RRR⟩)/√2, row 1 in a product state.
        let sig = sig(3, &[1, 1, 1, 1]);
        for sign in [Sign::Plus, Sign::Minus] {
            for mode in [ReadoutMode::Cavity, ReadoutMode::Oracle] {
                let mut amps = vec![Complex64::new(0.0, 0.0); 64];
                // register a1 a2 b1 b2 c1 c2: row-2 bits at 1, 3, 5
                amps[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
                amps[0b101010] = Complex64::new(sign.factor() * FRAC_1_SQRT_2, 0.0);
                let mut s = StateVector::from_amplitudes(logic_register(3, 2), amps, 26).unwrap();
                let r = step2(&mut s, &sig, &FaradayPhases::ideal(), mode, false, &mut rng_from_seed(5)).unwrap();
                assert_eq!(r, sign);
                assert_eq!(s.num_qubits(), 3);
            }
        }
    }

    #[test]
    fn calibration_examples() {
        assert!(!calibrate_sign(&sig(3, &[1, 1, 1, 1])).unwrap());
        // outcomes listed as atoms 1, 1_2, 2, 2_2
        assert!(calibrate_sign(&sig(3, &[1, 0, 1, 0])).unwrap());
    }

    #[test]
    fn calibrator_memoizes() {
        let cal = SignCalibrator::new();
        let s = sig(3, &[0, 1, 1, 0]);
        let first = cal.sign_flip(&s).unwrap();
        assert_eq!(cal.len(), 1);
        assert_eq!(cal.sign_flip(&s).unwrap(), first);
        assert_eq!(cal.len(), 1);
    }

    #[test]
    fn analyze_small_examples() {
        let cal = SignCalibrator::new();
        let cfg = AnalysisConfig::default();
        for (text, n) in [("1+", 3), ("2-", 3), ("2-", 2)] {
            let label = CghzLabel::parse(text, n, 2).unwrap();
            for seed in 0..25 {
                let rep = analyze(&label, &cfg, &cal, seed).unwrap();
                assert_eq!(rep.identified, label);
                assert!(rep.norms.iter().all(|x| (x - 1.0).abs() < 1e-12));
            }
        }
    }

    #[test]
    fn analyze_state_rejects_outsiders() {
        let cal = SignCalibrator::new();
        let product = StateVector::init_register(logic_register(2, 2), &[0, 1, 0, 0]).unwrap();
        let err = analyze_state(product, 2, 2, &AnalysisConfig::default(), &cal, 0).unwrap_err();
        assert!(matches!(err, Error::NotInFamily { .. }));
    }

    #[test]
    fn shape_is_checked() {
        let label = CghzLabel::new(3, 3, 0, Sign::Plus).unwrap();
        let mut s = cghz(&label).unwrap();
        let err = step1(&mut s, 3, &FaradayPhases::ideal(), &mut rng_from_seed(0)).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch(_)));
        assert!(matches!(reduce_m(&mut s, 3, 2, &mut rng_from_seed(0)), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn cap_exceeded_is_reported() {
        let label = CghzLabel::new(4, 3, 0, Sign::Plus).unwrap();
        let cfg = AnalysisConfig { max_qubits: 10, ..AnalysisConfig::default() };
        let err = analyze(&label, &cfg, &SignCalibrator::new(), 0).unwrap_err();
        assert_eq!(err, Error::CapExceeded { requested: 12, max: 10 });
    }
}
