//! Convolutional seed transformations with typed input legs.
//!
//! A frame's input is `(memory : logical : ancilla : ebit : cbit : gauge)` and
//! its output `(memory' : physical)`. Internally every frame-sized operator is
//! packed into one `u64` in the decimal layout of [`crate::symplectic`].

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symplectic::{
    decimal_to_pauli, packed, pauli_to_decimal, Pauli, PauliOperator, SymplecticMatrix,
    MAX_DECIMAL_QUBITS,
};

/// Leg counts of a seed transformation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResourceSignature {
    pub m: usize,
    pub k_q: usize,
    pub a: usize,
    pub c: usize,
    pub k_c: usize,
    pub g: usize,
}

/// Input legs in frame order, after memory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Leg {
    Logical,
    Ancilla,
    Ebit,
    Cbit,
    Gauge,
}

impl Leg {
    pub const ORDER: [Leg; 5] = [Leg::Logical, Leg::Ancilla, Leg::Ebit, Leg::Cbit, Leg::Gauge];
}

impl ResourceSignature {
    pub fn new(m: usize, k_q: usize, a: usize, c: usize, k_c: usize, g: usize) -> Result<Self> {
        let sig = Self { m, k_q, a, c, k_c, g };
        sig.validate()?;
        Ok(sig)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n() == 0 {
            return Err(Error::Signature("a frame needs at least one physical qubit".into()));
        }
        if self.total() > MAX_DECIMAL_QUBITS {
            return Err(Error::TooManyQubits {
                qubits: self.total(),
                max: MAX_DECIMAL_QUBITS,
            });
        }
        Ok(())
    }

    /// Physical qubits per frame.
    pub fn n(&self) -> usize {
        self.k_q + self.a + self.c + self.k_c + self.g
    }

    /// Qubits the seed acts on.
    pub fn total(&self) -> usize {
        self.m + self.n()
    }

    pub fn width(&self, leg: Leg) -> usize {
        match leg {
            Leg::Logical => self.k_q,
            Leg::Ancilla => self.a,
            Leg::Ebit => self.c,
            Leg::Cbit => self.k_c,
            Leg::Gauge => self.g,
        }
    }

    /// Offset of a leg within the seed's input, memory first.
    pub fn offset(&self, leg: Leg) -> usize {
        let mut at = self.m;
        for l in Leg::ORDER {
            if l == leg {
                return at;
            }
            at += self.width(l);
        }
        unreachable!()
    }

    /// Number of distinct logical labels per frame: `4^k_q · 2^k_c`.
    pub fn label_count(&self) -> usize {
        1 << (2 * self.k_q + self.k_c)
    }
}

impl fmt::Display for ResourceSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m={} k_q={} a={} c={} k_c={} g={}",
            self.m, self.k_q, self.a, self.c, self.k_c, self.g
        )
    }
}

/// One frame's content on the non-memory input legs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrameLegs {
    pub logical: PauliOperator,
    pub ancilla: PauliOperator,
    pub ebit: PauliOperator,
    pub cbit: PauliOperator,
    pub gauge: PauliOperator,
}

impl FrameLegs {
    pub fn identity(sig: &ResourceSignature) -> Self {
        Self {
            logical: PauliOperator::identity(sig.k_q),
            ancilla: PauliOperator::identity(sig.a),
            ebit: PauliOperator::identity(sig.c),
            cbit: PauliOperator::identity(sig.k_c),
            gauge: PauliOperator::identity(sig.g),
        }
    }

    pub fn leg(&self, leg: Leg) -> &PauliOperator {
        match leg {
            Leg::Logical => &self.logical,
            Leg::Ancilla => &self.ancilla,
            Leg::Ebit => &self.ebit,
            Leg::Cbit => &self.cbit,
            Leg::Gauge => &self.gauge,
        }
    }

    fn check(&self, sig: &ResourceSignature) -> Result<()> {
        for leg in Leg::ORDER {
            let (expected, found) = (sig.width(leg), self.leg(leg).len());
            if expected != found {
                return Err(Error::Dimension { expected, found });
            }
        }
        Ok(())
    }

    /// Packs the legs (without memory) into the decimal layout.
    pub fn pack(&self) -> u64 {
        let mut v = 0u64;
        let mut width = 0;
        for leg in Leg::ORDER {
            let op = self.leg(leg);
            // widths were validated against MAX_DECIMAL_QUBITS
            let d = pauli_to_decimal(op).expect("leg fits in a word");
            v = packed::join(v, width, d, op.len());
            width += op.len();
        }
        v
    }

    pub fn unpack(v: u64, sig: &ResourceSignature) -> Self {
        let mut rest = v;
        let mut width = sig.n();
        let mut parts = Vec::with_capacity(5);
        for leg in Leg::ORDER {
            let w = sig.width(leg);
            let (hi, lo) = packed::split(rest, width, w);
            parts.push(decimal_to_pauli(hi, w).expect("leg fits in a word"));
            rest = lo;
            width -= w;
        }
        let mut it = parts.into_iter();
        Self {
            logical: it.next().unwrap(),
            ancilla: it.next().unwrap(),
            ebit: it.next().unwrap(),
            cbit: it.next().unwrap(),
            gauge: it.next().unwrap(),
        }
    }
}

/// Measurement outcomes of one frame.
///
/// Bit masks use the packed convention: leg qubit `i` of a `w`-qubit leg is
/// bit `w - 1 - i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct FrameSyndrome {
    /// `s_i`: ancilla `i` carries X or Y.
    pub ancilla: u64,
    /// `e_{i,x}`: X component on ebit `i`.
    pub ebit_x: u64,
    /// `e_{i,z}`: Z component on ebit `i`.
    pub ebit_z: u64,
}

/// Logical content of one frame: a Pauli on the logical qubits and an X-only
/// pattern on the cbits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LogicalLabel {
    /// Packed `k_q`-qubit operator.
    pub qubits: u64,
    /// X mask over the `k_c` cbits.
    pub cbits: u64,
}

impl LogicalLabel {
    pub const IDENTITY: LogicalLabel = LogicalLabel { qubits: 0, cbits: 0 };

    pub fn weight(&self, sig: &ResourceSignature) -> u32 {
        packed::weight(self.qubits, sig.k_q) + self.cbits.count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.qubits == 0 && self.cbits == 0
    }

    /// Dense index in `0 .. sig.label_count()`.
    pub fn index(&self, sig: &ResourceSignature) -> usize {
        ((self.qubits as usize) << sig.k_c) | self.cbits as usize
    }

    pub fn from_index(index: usize, sig: &ResourceSignature) -> Self {
        Self {
            qubits: (index >> sig.k_c) as u64,
            cbits: (index & ((1 << sig.k_c) - 1)) as u64,
        }
    }

    /// Decimal of `(L_q : L_c^x)` read as one `(k_q + k_c)`-qubit operator.
    pub fn decimal(&self, sig: &ResourceSignature) -> u64 {
        packed::join(self.qubits, sig.k_q, self.cbits, sig.k_c)
    }

    pub fn display(&self, sig: &ResourceSignature) -> String {
        let q = decimal_to_pauli(self.qubits, sig.k_q).expect("label fits");
        let c = decimal_to_pauli(self.cbits, sig.k_c).expect("label fits");
        if sig.k_c == 0 {
            q.to_string()
        } else {
            format!("{q}:{c}")
        }
    }
}

pub fn syndrome_of(legs: &FrameLegs) -> FrameSyndrome {
    let x = |op: &PauliOperator| packed::x_bits(pauli_to_decimal(op).unwrap(), op.len());
    let z = |op: &PauliOperator| packed::z_bits(pauli_to_decimal(op).unwrap(), op.len());
    FrameSyndrome {
        ancilla: x(&legs.ancilla),
        ebit_x: x(&legs.ebit),
        ebit_z: z(&legs.ebit),
    }
}

/// Drops ancilla, ebit, cbit-Z and gauge content.
pub fn logical_of(legs: &FrameLegs) -> LogicalLabel {
    let cb = pauli_to_decimal(&legs.cbit).unwrap();
    LogicalLabel {
        qubits: pauli_to_decimal(&legs.logical).unwrap(),
        cbits: packed::x_bits(cb, legs.cbit.len()),
    }
}

/// A seed transformation together with its leg signature.
#[derive(Clone, PartialEq, Eq)]
pub struct ConvolutionalEncoder {
    sig: ResourceSignature,
    seed: SymplecticMatrix,
    rows: Vec<u64>,
    inv_rows: Vec<u64>,
}

impl fmt::Debug for ConvolutionalEncoder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConvolutionalEncoder({}, {:?})", self.sig, self.rows)
    }
}

fn apply_rows(rows: &[u64], n: usize, v: u64) -> u64 {
    let mut out = 0;
    let mut bits = v;
    // bit 2n-1-i selects row i
    while bits != 0 {
        let b = bits.trailing_zeros() as usize;
        out ^= rows[2 * n - 1 - b];
        bits &= bits - 1;
    }
    out
}

impl ConvolutionalEncoder {
    pub fn new(sig: ResourceSignature, seed: SymplecticMatrix) -> Result<Self> {
        sig.validate()?;
        if seed.qubits() != sig.total() {
            return Err(Error::Dimension {
                expected: sig.total(),
                found: seed.qubits(),
            });
        }
        let rows = seed.to_decimals()?;
        let inv_rows = seed.inverse().to_decimals()?;
        Ok(Self {
            sig,
            seed,
            rows,
            inv_rows,
        })
    }

    /// Builds an encoder from `2N` row decimals (images of `Z_1..Z_N, X_1..X_N`).
    pub fn load(sig: ResourceSignature, decimals: &[u64]) -> Result<Self> {
        sig.validate()?;
        let seed = SymplecticMatrix::from_decimals(sig.total(), decimals)?;
        Self::new(sig, seed)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref()).map_err(|e| Error::Parse {
            line: 0,
            message: format!("{}: {e}", path.as_ref().display()),
        })?;
        text.parse()
    }

    pub fn signature(&self) -> &ResourceSignature {
        &self.sig
    }

    pub fn seed(&self) -> &SymplecticMatrix {
        &self.seed
    }

    pub fn decimals(&self) -> &[u64] {
        &self.rows
    }

    /// Seed action on a packed `(memory : legs)` operator.
    #[inline]
    pub fn apply_packed(&self, v: u64) -> u64 {
        apply_rows(&self.rows, self.sig.total(), v)
    }

    /// Inverse seed action on a packed `(memory' : physical)` operator.
    #[inline]
    pub fn invert_packed(&self, v: u64) -> u64 {
        apply_rows(&self.inv_rows, self.sig.total(), v)
    }

    /// One frame: `(memory : legs) -> (memory', physical)`, all packed.
    #[inline]
    pub fn step_packed(&self, memory: u64, legs: u64) -> (u64, u64) {
        let out = self.apply_packed(packed::join(memory, self.sig.m, legs, self.sig.n()));
        packed::split(out, self.sig.total(), self.sig.m)
    }

    /// Inverse frame: `(memory', physical) -> (memory, legs)`, all packed.
    #[inline]
    pub fn unstep_packed(&self, next_memory: u64, physical: u64) -> (u64, u64) {
        let v = self.invert_packed(packed::join(next_memory, self.sig.m, physical, self.sig.n()));
        packed::split(v, self.sig.total(), self.sig.m)
    }

    /// Encodes a stream frame by frame starting from `initial_memory`.
    ///
    /// Returns the physical stream (`frames.len() · n` qubits) and the final
    /// memory.
    pub fn encode_stream(
        &self,
        frames: &[FrameLegs],
        initial_memory: &PauliOperator,
    ) -> Result<(PauliOperator, PauliOperator)> {
        let (m, n) = (self.sig.m, self.sig.n());
        if initial_memory.len() != m {
            return Err(Error::Dimension {
                expected: m,
                found: initial_memory.len(),
            });
        }
        let mut memory = pauli_to_decimal(initial_memory)?;
        let mut physical = PauliOperator::identity(frames.len() * n);
        for (t, frame) in frames.iter().enumerate() {
            frame.check(&self.sig)?;
            let (next, p) = self.step_packed(memory, frame.pack());
            physical.write(t * n, &decimal_to_pauli(p, n)?);
            memory = next;
        }
        Ok((physical, decimal_to_pauli(memory, m)?))
    }

    /// Undoes [`encode_stream`](Self::encode_stream) given the final memory.
    ///
    /// Returns the per-frame leg decomposition and the initial memory.
    pub fn invert_stream(
        &self,
        physical: &PauliOperator,
        final_memory: &PauliOperator,
    ) -> Result<(Vec<FrameLegs>, PauliOperator)> {
        let (m, n) = (self.sig.m, self.sig.n());
        if !physical.len().is_multiple_of(n) {
            return Err(Error::FrameMisalignment {
                len: physical.len(),
                frame: n,
            });
        }
        if final_memory.len() != m {
            return Err(Error::Dimension {
                expected: m,
                found: final_memory.len(),
            });
        }
        let frames = physical.len() / n;
        let mut memory = pauli_to_decimal(final_memory)?;
        let mut out = vec![FrameLegs::identity(&self.sig); frames];
        for t in (0..frames).rev() {
            let p = pauli_to_decimal(&physical.slice(t * n, n))?;
            let (prev, legs) = self.unstep_packed(memory, p);
            out[t] = FrameLegs::unpack(legs, &self.sig);
            memory = prev;
        }
        Ok((out, decimal_to_pauli(memory, m)?))
    }

    /// Same matrix with the legs relabelled; `m` and `n` must be unchanged.
    pub fn substitute_resources(&self, sig: ResourceSignature) -> Result<Self> {
        if sig.m != self.sig.m || sig.n() != self.sig.n() {
            return Err(Error::Signature(format!(
                "cannot relabel {} as {}: memory and frame size must match",
                self.sig, sig
            )));
        }
        Ok(Self {
            sig,
            ..self.clone()
        })
    }

    /// Serializes to the text format read by [`FromStr`].
    pub fn to_text(&self) -> String {
        let s = &self.sig;
        let rows: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        format!(
            "# m k_q a c k_c g\n{} {} {} {} {} {}\n{}\n",
            s.m,
            s.k_q,
            s.a,
            s.c,
            s.k_c,
            s.g,
            rows.join(" ")
        )
    }

    /// Row `i` as a Pauli string, for display.
    pub fn row_string(&self, i: usize) -> String {
        decimal_to_pauli(self.rows[i], self.sig.total())
            .map(|p| p.to_string())
            .unwrap_or_default()
    }

    /// Image of the single-qubit `pauli` on input qubit `qubit`.
    pub fn image(&self, qubit: usize, pauli: Pauli) -> u64 {
        let n = self.sig.total();
        let mut out = 0;
        if pauli.z() {
            out ^= self.rows[qubit];
        }
        if pauli.x() {
            out ^= self.rows[n + qubit];
        }
        out
    }
}

/// Text format: a header `m k_q a c k_c g` (trailing zeros may be omitted),
/// then `2N` row decimals. Commas, braces and `#` comments are ignored.
impl FromStr for ConvolutionalEncoder {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut header: Option<(usize, Vec<usize>)> = None;
        let mut values: Vec<(usize, u64)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = body
                .split(|c: char| c.is_whitespace() || c == ',' || c == '{' || c == '}')
                .filter(|t| !t.is_empty())
                .collect();
            if tokens.is_empty() {
                continue;
            }
            if header.is_none() {
                let counts = tokens
                    .iter()
                    .map(|t| {
                        t.parse::<usize>().map_err(|_| Error::Parse {
                            line,
                            message: format!("bad leg count {t:?}"),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                if counts.len() < 2 || counts.len() > 6 {
                    return Err(Error::Parse {
                        line,
                        message: format!(
                            "header needs 2 to 6 leg counts (m k_q a c k_c g), found {}",
                            counts.len()
                        ),
                    });
                }
                header = Some((line, counts));
                continue;
            }
            for t in tokens {
                let v = t.parse::<u64>().map_err(|_| Error::Parse {
                    line,
                    message: format!("bad row value {t:?}"),
                })?;
                values.push((line, v));
            }
        }
        let (hline, mut counts) = header.ok_or(Error::Parse {
            line: 0,
            message: "empty encoder file".into(),
        })?;
        counts.resize(6, 0);
        let sig = ResourceSignature {
            m: counts[0],
            k_q: counts[1],
            a: counts[2],
            c: counts[3],
            k_c: counts[4],
            g: counts[5],
        };
        sig.validate().map_err(|e| Error::Parse {
            line: hline,
            message: e.to_string(),
        })?;
        let big_n = sig.total();
        if values.len() != 2 * big_n {
            return Err(Error::RowCount {
                expected: 2 * big_n,
                found: values.len(),
            });
        }
        for &(line, v) in &values {
            if v >> (2 * big_n) != 0 {
                return Err(Error::Parse {
                    line,
                    message: format!("value {v} does not fit on {big_n} qubits"),
                });
            }
        }
        let decimals: Vec<u64> = values.into_iter().map(|(_, v)| v).collect();
        Self::load(sig, &decimals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::sample_symplectic;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn example() -> ConvolutionalEncoder {
        ConvolutionalEncoder::load(
            ResourceSignature::new(1, 1, 0, 1, 0, 0).unwrap(),
            &[33, 29, 30, 7, 45, 47],
        )
        .unwrap()
    }

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn random_legs(sig: &ResourceSignature, rng: &mut ChaCha8Rng) -> FrameLegs {
        FrameLegs {
            logical: PauliOperator::random(sig.k_q, rng),
            ancilla: PauliOperator::random(sig.a, rng),
            ebit: PauliOperator::random(sig.c, rng),
            cbit: PauliOperator::random(sig.k_c, rng),
            gauge: PauliOperator::random(sig.g, rng),
        }
    }

    #[test]
    fn parses_text_with_decorations() {
        let enc: ConvolutionalEncoder = "# example\n1 1 0 1\n{33, 29, 30,\n 7, 45, 47}\n"
            .parse()
            .unwrap();
        assert_eq!(enc, example());
        assert_eq!(enc.to_text().parse::<ConvolutionalEncoder>().unwrap(), enc);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = "1 1 0 1\n33 29 30\n7 4x5 47\n"
            .parse::<ConvolutionalEncoder>()
            .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = "1 1 0 1\n33 29 30 7 45\n".parse::<ConvolutionalEncoder>().unwrap_err();
        assert_eq!(err, Error::RowCount { expected: 6, found: 5 });
        let err = "1 1 0 1\n33 29 30 7 45 46\n".parse::<ConvolutionalEncoder>().unwrap_err();
        assert!(matches!(err, Error::NotSymplectic { .. }));
    }

    #[test]
    fn identity_rows_load() {
        let sig = ResourceSignature::new(1, 1, 1, 0, 0, 0).unwrap();
        let id = SymplecticMatrix::identity(3).to_decimals().unwrap();
        let enc = ConvolutionalEncoder::load(sig, &id).unwrap();
        assert_eq!(enc.apply_packed(45), 45);
    }

    #[test]
    fn pto1r_loads() {
        let sig = ResourceSignature::new(3, 1, 2, 0, 0, 0).unwrap();
        ConvolutionalEncoder::load(
            sig,
            &[1355, 2847, 558, 2107, 3330, 739, 2009, 286, 473, 1669, 1979, 189],
        )
        .unwrap();
    }

    #[test]
    fn logical_z_emits_xzy() {
        let enc = example();
        let mut legs = FrameLegs::identity(enc.signature());
        legs.logical = p("Z");
        let (phys, mem) = enc.encode_stream(&[legs], &p("I")).unwrap();
        assert_eq!(mem, p("X"));
        assert_eq!(phys, p("ZY"));
    }

    #[test]
    fn two_frame_walk() {
        // Z on the logical leg from memory I, then nothing
        let enc = example();
        let mut first = FrameLegs::identity(enc.signature());
        first.logical = p("Z");
        let idle = FrameLegs::identity(enc.signature());
        let (phys, _) = enc
            .encode_stream(&[first, idle.clone(), idle], &p("I"))
            .unwrap();
        assert_eq!(phys.slice(0, 2), p("ZY"));
        assert!(phys.weight() > 2);
    }

    #[test]
    fn y_on_second_physical_qubit() {
        // brute force: find the unique input producing (I : IY)
        let enc = example();
        let target = pauli_to_decimal(&p("IIY")).unwrap();
        let pre: Vec<u64> = (0..64).filter(|&v| enc.apply_packed(v) == target).collect();
        assert_eq!(pre.len(), 1);
        assert_eq!(enc.invert_packed(target), pre[0]);
        assert_eq!(decimal_to_pauli(pre[0], 3).unwrap(), p("YIX"));
    }

    #[test]
    fn pto1r_weight_one_matches_matrix_inverse() {
        let sig = ResourceSignature::new(3, 1, 2, 0, 0, 0).unwrap();
        let enc = ConvolutionalEncoder::load(
            sig,
            &[1355, 2847, 558, 2107, 3330, 739, 2009, 286, 473, 1669, 1979, 189],
        )
        .unwrap();
        let inv = enc.seed().inverse();
        for q in 3..6 {
            for pa in [Pauli::X, Pauli::Y, Pauli::Z] {
                let e = PauliOperator::single(6, q, pa);
                let via_stream = {
                    let (legs, mem) = enc
                        .invert_stream(&e.slice(3, 3), &PauliOperator::identity(3))
                        .unwrap();
                    let mut full = PauliOperator::identity(6);
                    full.write(0, &mem);
                    full.write(3, &legs[0].logical);
                    full.write(4, &legs[0].ancilla);
                    full
                };
                assert_eq!(via_stream, inv.apply(&e).unwrap());
            }
        }
    }

    #[test]
    fn bell_table() {
        let sig = ResourceSignature::new(0, 0, 0, 4, 0, 0).unwrap();
        let mut legs = FrameLegs::identity(&sig);
        legs.ebit = p("IZXY");
        let s = syndrome_of(&legs);
        assert_eq!((s.ebit_x, s.ebit_z), (0b0011, 0b0101));
        let zero = FrameLegs::identity(&sig);
        assert_eq!(syndrome_of(&zero), FrameSyndrome::default());
        assert!(logical_of(&zero).is_identity());
    }

    #[test]
    fn label_ignores_degenerate_parts() {
        let sig = ResourceSignature::new(0, 2, 2, 1, 2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let a = random_legs(&sig, &mut rng);
            let mut b = a.clone();
            b.ancilla ^= &PauliOperator::random(sig.a, &mut rng).z_part();
            b.cbit ^= &PauliOperator::random(sig.k_c, &mut rng).z_part();
            b.gauge = PauliOperator::random(sig.g, &mut rng);
            assert_eq!(syndrome_of(&a), syndrome_of(&b));
            assert_eq!(logical_of(&a), logical_of(&b));
        }
    }

    #[test]
    fn substitution() {
        let sig = ResourceSignature::new(3, 1, 2, 0, 0, 0).unwrap();
        let r = ConvolutionalEncoder::load(
            sig,
            &[1355, 2847, 558, 2107, 3330, 739, 2009, 286, 473, 1669, 1979, 189],
        )
        .unwrap();
        let ea = r
            .substitute_resources(ResourceSignature::new(3, 1, 0, 2, 0, 0).unwrap())
            .unwrap();
        assert_eq!(ea.decimals(), r.decimals());
        assert_eq!(ea.substitute_resources(sig).unwrap(), r);
        assert_eq!(r.substitute_resources(sig).unwrap(), r);
        assert!(r
            .substitute_resources(ResourceSignature::new(3, 1, 1, 0, 0, 0).unwrap())
            .is_err());
    }

    #[test]
    fn misaligned_stream() {
        let enc = example();
        let err = enc
            .invert_stream(&PauliOperator::identity(5), &p("I"))
            .unwrap_err();
        assert_eq!(err, Error::FrameMisalignment { len: 5, frame: 2 });
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn encode_then_invert(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sig = ResourceSignature::new(2, 1, 1, 1, 1, 1).unwrap();
            let enc = ConvolutionalEncoder::new(sig, sample_symplectic(sig.total(), &mut rng)).unwrap();
            let frames: Vec<FrameLegs> = (0..10).map(|_| random_legs(&sig, &mut rng)).collect();
            let m0 = PauliOperator::random(2, &mut rng);
            let (phys, mt) = enc.encode_stream(&frames, &m0).unwrap();
            let (back, m_back) = enc.invert_stream(&phys, &mt).unwrap();
            prop_assert_eq!(back, frames);
            prop_assert_eq!(m_back, m0);
        }
    }
}
