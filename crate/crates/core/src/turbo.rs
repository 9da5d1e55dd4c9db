//! Encoded blocks and serial turbo concatenation.
//!
//! A block runs an encoder for `T` frames. The initial memory qubits enter as
//! `|0⟩` ancillas and the final memory is transmitted after the last frame, so
//! a block has `T·n + m` physical qubits. A turbo code feeds the outer block's
//! physical qubits through an interleaver into the inner encoder's logical
//! qubits.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::encoder::{logical_of, syndrome_of, ConvolutionalEncoder, FrameLegs, FrameSyndrome, LogicalLabel};
use crate::error::{Error, Result};
use crate::symplectic::{packed, pauli_to_decimal, PauliOperator};

pub use crate::spectrum::min_distance_scaling;

/// Permutation of qubit positions: position `j` moves to `perm[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interleaver {
    perm: Vec<usize>,
    inv: Vec<usize>,
}

impl Interleaver {
    pub fn identity(size: usize) -> Self {
        Self {
            perm: (0..size).collect(),
            inv: (0..size).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(size: usize, rng: &mut R) -> Self {
        let mut perm: Vec<usize> = (0..size).collect();
        perm.shuffle(rng);
        Self::from_perm(perm).expect("shuffle yields a bijection")
    }

    pub fn from_perm(perm: Vec<usize>) -> Result<Self> {
        let mut inv = vec![usize::MAX; perm.len()];
        for (j, &p) in perm.iter().enumerate() {
            if p >= perm.len() || inv[p] != usize::MAX {
                return Err(Error::Signature("interleaver is not a permutation".into()));
            }
            inv[p] = j;
        }
        Ok(Self { perm, inv })
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Position that qubit `j` moves to.
    pub fn forward(&self, j: usize) -> usize {
        self.perm[j]
    }

    /// Position that ends up at `i`.
    pub fn backward(&self, i: usize) -> usize {
        self.inv[i]
    }

    pub fn apply(&self, p: &PauliOperator) -> PauliOperator {
        assert_eq!(p.len(), self.size(), "interleaver size mismatch");
        let mut out = PauliOperator::identity(p.len());
        for j in 0..p.len() {
            out.set(self.perm[j], p.get(j));
        }
        out
    }

    pub fn invert(&self, p: &PauliOperator) -> PauliOperator {
        assert_eq!(p.len(), self.size(), "interleaver size mismatch");
        let mut out = PauliOperator::identity(p.len());
        for i in 0..p.len() {
            out.set(self.inv[i], p.get(i));
        }
        out
    }
}

/// Syndrome of one encoded block.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlockSyndrome {
    pub frames: Vec<FrameSyndrome>,
    /// X mask of the initial memory qubits (they start as `|0⟩`).
    pub memory: u64,
}

impl BlockSyndrome {
    pub fn is_zero(&self) -> bool {
        self.memory == 0
            && self
                .frames
                .iter()
                .all(|f| f.ancilla == 0 && f.ebit_x == 0 && f.ebit_z == 0)
    }

    /// XORs Bob-side ebit errors (frame-major, leg order) into the Bell outcomes.
    pub fn apply_ebit_noise(&mut self, c: usize, bob: &PauliOperator) {
        assert_eq!(bob.len(), c * self.frames.len(), "ebit error length mismatch");
        for (t, f) in self.frames.iter_mut().enumerate() {
            let d = pauli_to_decimal(&bob.slice(t * c, c)).expect("ebit leg fits");
            f.ebit_x ^= packed::x_bits(d, c);
            f.ebit_z ^= packed::z_bits(d, c);
        }
    }
}

/// Leg decomposition of a block error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub initial_memory: PauliOperator,
    pub frames: Vec<FrameLegs>,
}

impl BlockDecomposition {
    pub fn syndrome(&self) -> BlockSyndrome {
        let d = pauli_to_decimal(&self.initial_memory).expect("memory fits");
        BlockSyndrome {
            frames: self.frames.iter().map(syndrome_of).collect(),
            memory: packed::x_bits(d, self.initial_memory.len()),
        }
    }

    pub fn labels(&self) -> Vec<LogicalLabel> {
        self.frames.iter().map(logical_of).collect()
    }

    /// The logical-qubit legs of all frames, concatenated.
    pub fn logical_stream(&self) -> PauliOperator {
        PauliOperator::concat(self.frames.iter().map(|f| &f.logical))
    }
}

/// An encoder run for a fixed number of frames.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCode {
    pub encoder: ConvolutionalEncoder,
    pub frames: usize,
}

impl BlockCode {
    pub fn new(encoder: ConvolutionalEncoder, frames: usize) -> Self {
        Self { encoder, frames }
    }

    pub fn physical_len(&self) -> usize {
        let s = self.encoder.signature();
        self.frames * s.n() + s.m
    }

    pub fn logical_qubits(&self) -> usize {
        self.frames * self.encoder.signature().k_q
    }

    pub fn ebits(&self) -> usize {
        self.frames * self.encoder.signature().c
    }

    /// Maps input content to the transmitted block.
    pub fn encode(&self, initial_memory: &PauliOperator, frames: &[FrameLegs]) -> Result<PauliOperator> {
        if frames.len() != self.frames {
            return Err(Error::Dimension {
                expected: self.frames,
                found: frames.len(),
            });
        }
        let (stream, last) = self.encoder.encode_stream(frames, initial_memory)?;
        Ok(PauliOperator::concat([&stream, &last]))
    }

    pub fn invert(&self, error: &PauliOperator) -> Result<BlockDecomposition> {
        let s = self.encoder.signature();
        if error.len() != self.physical_len() {
            return Err(Error::Dimension {
                expected: self.physical_len(),
                found: error.len(),
            });
        }
        let body = self.frames * s.n();
        let (frames, initial_memory) = self
            .encoder
            .invert_stream(&error.slice(0, body), &error.slice(body, s.m))?;
        Ok(BlockDecomposition {
            initial_memory,
            frames,
        })
    }
}

/// Per-frame rate accounting of a concatenation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rates {
    /// `(k_out / n_out)(k_in / n_in)`.
    pub quantum: f64,
    /// `(c_out k_in / n_out + c_in) / n_in`.
    pub entanglement: f64,
}

impl Rates {
    pub fn catalytic(&self) -> f64 {
        self.quantum - self.entanglement
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TurboCode {
    pub outer: BlockCode,
    pub inner: BlockCode,
    pub interleaver: Interleaver,
}

/// Syndromes of both stages.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TurboSyndrome {
    pub inner: BlockSyndrome,
    pub outer: BlockSyndrome,
}

impl TurboSyndrome {
    pub fn is_zero(&self) -> bool {
        self.inner.is_zero() && self.outer.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TurboInversion {
    pub syndrome: TurboSyndrome,
    /// Outer logical label per outer frame.
    pub labels: Vec<LogicalLabel>,
}

/// Inner frames needed to carry an outer block of `frames_outer` frames.
pub fn inner_frames(outer: &ConvolutionalEncoder, inner: &ConvolutionalEncoder, frames_outer: usize) -> Result<usize> {
    let so = outer.signature();
    let si = inner.signature();
    if si.k_c != 0 {
        return Err(Error::Signature("the inner encoder cannot carry cbits".into()));
    }
    let outer_qubits = frames_outer * so.n() + so.m;
    if si.k_q == 0 || !outer_qubits.is_multiple_of(si.k_q) {
        return Err(Error::Divisibility {
            outer_qubits,
            inner_logical: si.k_q,
        });
    }
    Ok(outer_qubits / si.k_q)
}

impl TurboCode {
    pub fn new(
        outer: ConvolutionalEncoder,
        inner: ConvolutionalEncoder,
        frames_outer: usize,
        interleaver: Interleaver,
    ) -> Result<Self> {
        let frames_inner = inner_frames(&outer, &inner, frames_outer)?;
        let outer = BlockCode::new(outer, frames_outer);
        let inner = BlockCode::new(inner, frames_inner);
        if interleaver.size() != outer.physical_len() {
            return Err(Error::Dimension {
                expected: outer.physical_len(),
                found: interleaver.size(),
            });
        }
        Ok(Self {
            outer,
            inner,
            interleaver,
        })
    }

    /// Concatenation through a uniformly random interleaver.
    pub fn build<R: Rng + ?Sized>(
        outer: ConvolutionalEncoder,
        inner: ConvolutionalEncoder,
        frames_outer: usize,
        rng: &mut R,
    ) -> Result<Self> {
        inner_frames(&outer, &inner, frames_outer)?;
        let size = frames_outer * outer.signature().n() + outer.signature().m;
        let interleaver = Interleaver::random(size, rng);
        Self::new(outer, inner, frames_outer, interleaver)
    }

    /// Physical qubits `N` of the whole code.
    pub fn physical_len(&self) -> usize {
        self.inner.physical_len()
    }

    pub fn logical_qubits(&self) -> usize {
        self.outer.logical_qubits()
    }

    /// Ebits consumed by both stages, inner first.
    pub fn ebits(&self) -> usize {
        self.inner.ebits() + self.outer.ebits()
    }

    pub fn rates(&self) -> Rates {
        rates(&self.outer.encoder, &self.inner.encoder)
    }

    pub fn invert(&self, error: &PauliOperator) -> Result<TurboInversion> {
        let inner = self.inner.invert(error)?;
        let mid = self.interleaver.invert(&inner.logical_stream());
        let outer = self.outer.invert(&mid)?;
        Ok(TurboInversion {
            syndrome: TurboSyndrome {
                inner: inner.syndrome(),
                outer: outer.syndrome(),
            },
            labels: outer.labels(),
        })
    }

    /// XORs Bob-side errors into the Bell outcomes: the first
    /// `inner.ebits()` qubits of `bob` belong to the inner stage.
    pub fn apply_ebit_noise(&self, syndrome: &mut TurboSyndrome, bob: &PauliOperator) {
        let ci = self.inner.encoder.signature().c;
        let co = self.outer.encoder.signature().c;
        let split = self.inner.ebits();
        syndrome.inner.apply_ebit_noise(ci, &bob.slice(0, split));
        syndrome.outer.apply_ebit_noise(co, &bob.slice(split, bob.len() - split));
    }
}

pub fn rates(outer: &ConvolutionalEncoder, inner: &ConvolutionalEncoder) -> Rates {
    let (so, si) = (outer.signature(), inner.signature());
    let (ko, no, co) = (so.k_q as f64, so.n() as f64, so.c as f64);
    let (ki, ni, ci) = (si.k_q as f64, si.n() as f64, si.c as f64);
    Rates {
        quantum: (ko / no) * (ki / ni),
        entanglement: (co * ki / no + ci) / ni,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::bundled;
    use crate::encoder::ResourceSignature;
    use crate::symplectic::{symplectic_product, Pauli};
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn code(outer: &str, inner: &str, frames: usize, seed: u64) -> TurboCode {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        TurboCode::build(bundled(outer).unwrap(), bundled(inner).unwrap(), frames, &mut rng).unwrap()
    }

    #[test]
    fn published_rates() {
        let r = rates(&bundled("pto1r").unwrap(), &bundled("pto1r").unwrap());
        assert_abs_diff_eq!(r.quantum, 1.0 / 9.0, epsilon = 1e-12);
        let r = rates(&bundled("pto3r").unwrap(), &bundled("pto3r").unwrap());
        assert_abs_diff_eq!(r.quantum, 1.0 / 4.0, epsilon = 1e-12);
        let r = rates(&bundled("pto1rea").unwrap(), &bundled("pto1rea").unwrap());
        assert_abs_diff_eq!(r.entanglement, 8.0 / 9.0, epsilon = 1e-12);
        // outer with the rate-1/2 unassisted signature
        let outer = bundled("pto3r").unwrap();
        for (inner, q, e) in [
            ("table1-02", 1.0 / 3.0, 1.0 / 3.0),
            ("table1-07", 1.0 / 4.0, 1.0 / 4.0),
            ("table1-04", 2.0 / 5.0, 1.0 / 5.0),
            ("table1-08", 3.0 / 7.0, 1.0 / 7.0),
            ("table1-09", 4.0 / 9.0, 1.0 / 9.0),
        ] {
            let r = rates(&outer, &bundled(inner).unwrap());
            assert_abs_diff_eq!(r.quantum, q, epsilon = 1e-12);
            assert_abs_diff_eq!(r.entanglement, e, epsilon = 1e-12);
        }
    }

    #[test]
    fn divisibility() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        // 2 outer frames of table1-02 give 2·3 + 3 = 9 qubits; k_in = 2
        let err = TurboCode::build(bundled("table1-02").unwrap(), bundled("table1-02").unwrap(), 2, &mut rng)
            .unwrap_err();
        assert_eq!(err, Error::Divisibility { outer_qubits: 9, inner_logical: 2 });
        let err = TurboCode::build(bundled("pto1r").unwrap(), bundled("cea-m5").unwrap(), 2, &mut rng)
            .unwrap_err();
        assert!(matches!(err, Error::Signature(_)));
    }

    #[test]
    fn interleaver_preserves_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let il = Interleaver::random(40, &mut rng);
            let a = PauliOperator::random(40, &mut rng);
            let b = PauliOperator::random(40, &mut rng);
            let (fa, fb) = (il.apply(&a), il.apply(&b));
            assert_eq!(fa.weight(), a.weight());
            assert_eq!(symplectic_product(&fa, &fb).unwrap(), symplectic_product(&a, &b).unwrap());
            assert_eq!(il.invert(&fa), a);
        }
        assert!(Interleaver::from_perm(vec![0, 0]).is_err());
    }

    #[test]
    fn identity_error() {
        let c = code("pto1rea", "pto1rea", 3, 1);
        let inv = c.invert(&PauliOperator::identity(c.physical_len())).unwrap();
        assert!(inv.syndrome.is_zero());
        assert!(inv.labels.iter().all(|l| l.is_identity()));
        assert_eq!(c.logical_qubits(), 3);
        // outer 3·3 + 3 = 12 qubits → 12 inner frames of 3 plus 3 memory
        assert_eq!(c.physical_len(), 39);
    }

    #[test]
    fn single_qubit_errors_are_detected_when_fully_assisted() {
        let c = code("pto1rea", "pto1rea", 3, 2);
        let n = c.physical_len();
        for q in 0..n {
            for p in [Pauli::X, Pauli::Y, Pauli::Z] {
                let inv = c.invert(&PauliOperator::single(n, q, p)).unwrap();
                assert!(!inv.syndrome.is_zero(), "{p:?} on qubit {q} is silent");
            }
        }
    }

    #[test]
    fn inversion_composes_from_blocks() {
        let c = code("pto3r", "pto3rea", 4, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..1000 {
            let e = PauliOperator::random(c.physical_len(), &mut rng);
            let got = c.invert(&e).unwrap();
            let inner = c.inner.encoder.invert_stream(
                &e.slice(0, c.inner.frames * 2),
                &e.slice(c.inner.frames * 2, 4),
            ).unwrap().0;
            let logical = PauliOperator::concat(inner.iter().map(|f| &f.logical));
            let mid = c.interleaver.invert(&logical);
            let outer = c.outer.encoder.invert_stream(
                &mid.slice(0, c.outer.frames * 2),
                &mid.slice(c.outer.frames * 2, 4),
            ).unwrap().0;
            let labels: Vec<LogicalLabel> = outer.iter().map(logical_of).collect();
            assert_eq!(got.labels, labels);
        }
    }

    #[test]
    fn encode_then_invert_block() {
        let enc = bundled("pto1r").unwrap();
        let sig: ResourceSignature = *enc.signature();
        let block = BlockCode::new(enc, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let frames: Vec<FrameLegs> = (0..5)
            .map(|_| {
                let mut f = FrameLegs::identity(&sig);
                f.logical = PauliOperator::random(1, &mut rng);
                f.ancilla = PauliOperator::random(2, &mut rng);
                f
            })
            .collect();
        let m0 = PauliOperator::random(3, &mut rng);
        let e = block.encode(&m0, &frames).unwrap();
        assert_eq!(e.len(), block.physical_len());
        let d = block.invert(&e).unwrap();
        assert_eq!(d.frames, frames);
        assert_eq!(d.initial_memory, m0);
    }

    #[test]
    fn ebit_noise_flips_bell_outcomes() {
        let c = code("pto1rea", "pto1rea", 3, 5);
        let mut s = c.invert(&PauliOperator::identity(c.physical_len())).unwrap().syndrome;
        let mut bob = PauliOperator::identity(c.ebits());
        bob.set(0, Pauli::Y);
        c.apply_ebit_noise(&mut s, &bob);
        assert_eq!((s.inner.frames[0].ebit_x, s.inner.frames[0].ebit_z), (0b10, 0b10));
    }
}
