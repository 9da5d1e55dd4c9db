//! Phase-free Pauli operators and symplectic matrices over GF(2).
//!
//! A Pauli operator on `n` qubits is stored as a pair of bit vectors `(z, x)`.
//! The decimal codec reads the `2n`-bit string `[z_1 .. z_n | x_1 .. x_n]`
//! with `z_1` as the most significant bit, so `ZIX` is `[100|001]` = 33.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// Widest operator the decimal codec handles (`2n` bits must fit in a `u64`).
pub const MAX_DECIMAL_QUBITS: usize = 32;

/// Single-qubit Pauli; the discriminant is `(z << 1) | x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I = 0,
    X = 1,
    Z = 2,
    Y = 3,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Z, Pauli::Y];

    pub fn from_bits(z: bool, x: bool) -> Self {
        Self::from_index(((z as usize) << 1) | x as usize)
    }

    pub fn from_index(index: usize) -> Self {
        match index & 3 {
            0 => Pauli::I,
            1 => Pauli::X,
            2 => Pauli::Z,
            _ => Pauli::Y,
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn z(self) -> bool {
        self as u8 & 2 != 0
    }

    #[inline]
    pub fn x(self) -> bool {
        self as u8 & 1 != 0
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Z => 'Z',
            Pauli::Y => 'Y',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' | 'i' | '_' => Some(Pauli::I),
            'X' | 'x' => Some(Pauli::X),
            'Y' | 'y' => Some(Pauli::Y),
            'Z' | 'z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

impl BitXor for Pauli {
    type Output = Pauli;

    fn bitxor(self, rhs: Pauli) -> Pauli {
        Pauli::from_index(self.index() ^ rhs.index())
    }
}

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// An `n`-qubit Pauli operator with global phase dropped.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    z: Vec<u64>,
    x: Vec<u64>,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            z: vec![0; words_for(n)],
            x: vec![0; words_for(n)],
        }
    }

    pub fn from_paulis(paulis: &[Pauli]) -> Self {
        let mut p = Self::identity(paulis.len());
        for (i, &q) in paulis.iter().enumerate() {
            p.set(i, q);
        }
        p
    }

    /// Single non-identity factor `pauli` on qubit `qubit`.
    pub fn single(n: usize, qubit: usize, pauli: Pauli) -> Self {
        let mut p = Self::identity(n);
        p.set(qubit, pauli);
        p
    }

    /// Uniformly random operator (each of the `4^n` equally likely).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut p = Self::identity(n);
        for w in 0..p.z.len() {
            p.z[w] = rng.gen();
            p.x[w] = rng.gen();
        }
        p.clear_tail();
        p
    }

    fn clear_tail(&mut self) {
        let rem = self.n % 64;
        if rem != 0 {
            let mask = (1u64 << rem) - 1;
            if let Some(w) = self.z.last_mut() {
                *w &= mask;
            }
            if let Some(w) = self.x.last_mut() {
                *w &= mask;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, qubit: usize) -> Pauli {
        debug_assert!(qubit < self.n);
        let (w, b) = (qubit / 64, qubit % 64);
        Pauli::from_bits((self.z[w] >> b) & 1 == 1, (self.x[w] >> b) & 1 == 1)
    }

    #[inline]
    pub fn set(&mut self, qubit: usize, pauli: Pauli) {
        debug_assert!(qubit < self.n);
        let (w, b) = (qubit / 64, qubit % 64);
        let bit = 1u64 << b;
        self.z[w] = (self.z[w] & !bit) | ((pauli.z() as u64) << b);
        self.x[w] = (self.x[w] & !bit) | ((pauli.x() as u64) << b);
    }

    pub fn weight(&self) -> usize {
        self.z
            .iter()
            .zip(&self.x)
            .map(|(z, x)| (z | x).count_ones() as usize)
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.z.iter().chain(&self.x).all(|&w| w == 0)
    }

    /// Keeps only the Z component (`Z` for `Z` and `Y`).
    pub fn z_part(&self) -> Self {
        Self {
            n: self.n,
            z: self.z.clone(),
            x: vec![0; self.x.len()],
        }
    }

    /// Keeps only the X component (`X` for `X` and `Y`).
    pub fn x_part(&self) -> Self {
        Self {
            n: self.n,
            z: vec![0; self.z.len()],
            x: self.x.clone(),
        }
    }

    /// Exchanges the Z and X components qubit-wise (Hadamard conjugation).
    pub fn swap_zx(&self) -> Self {
        Self {
            n: self.n,
            z: self.x.clone(),
            x: self.z.clone(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Pauli> + '_ {
        (0..self.n).map(move |i| self.get(i))
    }

    /// Qubits `start .. start + len` as a new operator.
    pub fn slice(&self, start: usize, len: usize) -> Self {
        assert!(start + len <= self.n, "slice out of bounds");
        let mut out = Self::identity(len);
        for i in 0..len {
            out.set(i, self.get(start + i));
        }
        out
    }

    /// Tensor product of the parts in order.
    pub fn concat<'a, I>(parts: I) -> Self
    where
        I: IntoIterator<Item = &'a PauliOperator>,
    {
        let parts: Vec<&PauliOperator> = parts.into_iter().collect();
        let n = parts.iter().map(|p| p.n).sum();
        let mut out = Self::identity(n);
        let mut at = 0;
        for p in parts {
            for i in 0..p.n {
                out.set(at + i, p.get(i));
            }
            at += p.n;
        }
        out
    }

    /// Overwrites qubits `start ..` with `part`.
    pub fn write(&mut self, start: usize, part: &PauliOperator) {
        assert!(start + part.n <= self.n, "write out of bounds");
        for i in 0..part.n {
            self.set(start + i, part.get(i));
        }
    }

    pub fn try_xor(&self, other: &PauliOperator) -> Result<PauliOperator> {
        check_len(self.n, other.n)?;
        Ok(self ^ other)
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::Dimension { expected, found });
    }
    Ok(())
}

impl BitXorAssign<&PauliOperator> for PauliOperator {
    fn bitxor_assign(&mut self, rhs: &PauliOperator) {
        assert_eq!(self.n, rhs.n, "xor of operators on different qubit counts");
        for (a, b) in self.z.iter_mut().zip(&rhs.z) {
            *a ^= b;
        }
        for (a, b) in self.x.iter_mut().zip(&rhs.x) {
            *a ^= b;
        }
    }
}

impl BitXor<&PauliOperator> for &PauliOperator {
    type Output = PauliOperator;

    fn bitxor(self, rhs: &PauliOperator) -> PauliOperator {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 0 {
            return f.write_str("-");
        }
        for p in self.iter() {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOperator({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let paulis = s
            .chars()
            .enumerate()
            .map(|(i, c)| {
                Pauli::from_char(c).ok_or_else(|| Error::Parse {
                    line: 1,
                    message: format!("invalid Pauli character {c:?} at position {i}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_paulis(&paulis))
    }
}

/// Returns `true` iff `a` and `b` anticommute.
pub fn symplectic_product(a: &PauliOperator, b: &PauliOperator) -> Result<bool> {
    check_len(a.n, b.n)?;
    Ok(symplectic_product_unchecked(a, b))
}

fn symplectic_product_unchecked(a: &PauliOperator, b: &PauliOperator) -> bool {
    let mut acc = 0u32;
    for w in 0..a.z.len() {
        acc ^= ((a.z[w] & b.x[w]) ^ (a.x[w] & b.z[w])).count_ones();
    }
    acc & 1 == 1
}

pub fn pauli_to_decimal(p: &PauliOperator) -> Result<u64> {
    if p.n > MAX_DECIMAL_QUBITS {
        return Err(Error::TooManyQubits {
            qubits: p.n,
            max: MAX_DECIMAL_QUBITS,
        });
    }
    let mut v = 0u64;
    for (i, q) in p.iter().enumerate() {
        v = packed::set(v, p.n, i, q);
    }
    Ok(v)
}

pub fn decimal_to_pauli(value: u64, n: usize) -> Result<PauliOperator> {
    if n > MAX_DECIMAL_QUBITS {
        return Err(Error::TooManyQubits {
            qubits: n,
            max: MAX_DECIMAL_QUBITS,
        });
    }
    if 2 * n < 64 && value >> (2 * n) != 0 {
        return Err(Error::DecimalRange { value, qubits: n });
    }
    let mut p = PauliOperator::identity(n);
    for i in 0..n {
        p.set(i, packed::get(value, n, i));
    }
    Ok(p)
}

/// Operators on at most 32 qubits packed into one `u64` in the decimal layout.
pub mod packed {
    use super::Pauli;

    #[inline]
    pub fn mask(n: usize) -> u64 {
        if n >= 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }

    #[inline]
    pub fn get(v: u64, n: usize, i: usize) -> Pauli {
        let z = (v >> (2 * n - 1 - i)) & 1;
        let x = (v >> (n - 1 - i)) & 1;
        Pauli::from_index(((z << 1) | x) as usize)
    }

    /// Sets qubit `i` of an operator whose qubit `i` is currently identity.
    #[inline]
    pub fn set(v: u64, n: usize, i: usize, p: Pauli) -> u64 {
        v | ((p.z() as u64) << (2 * n - 1 - i)) | ((p.x() as u64) << (n - 1 - i))
    }

    #[inline]
    pub fn weight(v: u64, n: usize) -> u32 {
        (((v >> n) | v) & mask(n)).count_ones()
    }

    /// Splits an `n`-qubit operator into its first `at` qubits and the rest.
    #[inline]
    pub fn split(v: u64, n: usize, at: usize) -> (u64, u64) {
        let rest = n - at;
        let z = v >> n;
        let x = v & mask(n);
        let hi = ((z >> rest) << at) | (x >> rest);
        let lo = ((z & mask(rest)) << rest) | (x & mask(rest));
        (hi, lo)
    }

    /// Inverse of [`split`].
    #[inline]
    pub fn join(hi: u64, hi_n: usize, lo: u64, lo_n: usize) -> u64 {
        let n = hi_n + lo_n;
        let z = ((hi >> hi_n) << lo_n) | (lo >> lo_n);
        let x = ((hi & mask(hi_n)) << lo_n) | (lo & mask(lo_n));
        (z << n) | x
    }

    #[inline]
    pub fn z_bits(v: u64, n: usize) -> u64 {
        v >> n
    }

    #[inline]
    pub fn x_bits(v: u64, n: usize) -> u64 {
        v & mask(n)
    }
}

/// Binary symplectic matrix on `n` qubits.
///
/// Row `i < n` is the image of `Z_{i+1}`, row `n + i` the image of `X_{i+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymplecticMatrix {
    n: usize,
    rows: Vec<PauliOperator>,
}

impl SymplecticMatrix {
    pub fn identity(n: usize) -> Self {
        let mut rows = Vec::with_capacity(2 * n);
        for i in 0..n {
            rows.push(PauliOperator::single(n, i, Pauli::Z));
        }
        for i in 0..n {
            rows.push(PauliOperator::single(n, i, Pauli::X));
        }
        Self { n, rows }
    }

    /// Validates the symplectic form and builds the matrix.
    pub fn from_rows(rows: Vec<PauliOperator>) -> Result<Self> {
        if !rows.len().is_multiple_of(2) {
            return Err(Error::RowCount {
                expected: rows.len() + 1,
                found: rows.len(),
            });
        }
        let n = rows.len() / 2;
        for r in &rows {
            check_len(n, r.len())?;
        }
        let m = Self { n, rows };
        if let Some((first, second)) = m.form_violation() {
            return Err(Error::NotSymplectic { first, second });
        }
        Ok(m)
    }

    pub fn from_decimals(n: usize, values: &[u64]) -> Result<Self> {
        if values.len() != 2 * n {
            return Err(Error::RowCount {
                expected: 2 * n,
                found: values.len(),
            });
        }
        let rows = values
            .iter()
            .map(|&v| decimal_to_pauli(v, n))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn to_decimals(&self) -> Result<Vec<u64>> {
        self.rows.iter().map(pauli_to_decimal).collect()
    }

    /// First row pair whose product disagrees with the input basis, if any.
    pub fn form_violation(&self) -> Option<(usize, usize)> {
        let n = self.n;
        for i in 0..2 * n {
            for j in i + 1..2 * n {
                let expected = j == i + n;
                if symplectic_product_unchecked(&self.rows[i], &self.rows[j]) != expected {
                    return Some((i, j));
                }
            }
        }
        None
    }

    #[inline]
    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[PauliOperator] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &PauliOperator {
        &self.rows[i]
    }

    pub fn image_of_z(&self, qubit: usize) -> &PauliOperator {
        &self.rows[qubit]
    }

    pub fn image_of_x(&self, qubit: usize) -> &PauliOperator {
        &self.rows[self.n + qubit]
    }

    pub fn apply(&self, p: &PauliOperator) -> Result<PauliOperator> {
        check_len(self.n, p.len())?;
        let mut out = PauliOperator::identity(self.n);
        for (i, q) in p.iter().enumerate() {
            if q.z() {
                out ^= &self.rows[i];
            }
            if q.x() {
                out ^= &self.rows[self.n + i];
            }
        }
        Ok(out)
    }

    /// `Λ Mᵀ Λ`, where `Λ` swaps the z and x halves.
    pub fn inverse(&self) -> Self {
        let n = self.n;
        let swap = |k: usize| if k < n { k + n } else { k - n };
        let bit = |row: &PauliOperator, col: usize| {
            if col < n {
                row.get(col).z()
            } else {
                row.get(col - n).x()
            }
        };
        let mut rows = vec![PauliOperator::identity(n); 2 * n];
        for (i, row) in rows.iter_mut().enumerate() {
            for j in 0..2 * n {
                if bit(&self.rows[swap(j)], swap(i)) {
                    let q = j % n;
                    let cur = row.get(q);
                    let add = if j < n { Pauli::Z } else { Pauli::X };
                    row.set(q, cur ^ add);
                }
            }
        }
        Self { n, rows }
    }

    /// `M₂ ∘ M₁`: apply `self` first, then `next`.
    pub fn then(&self, next: &SymplecticMatrix) -> Result<SymplecticMatrix> {
        check_len(self.n, next.n)?;
        let rows = self
            .rows
            .iter()
            .map(|r| next.apply(r))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n: self.n, rows })
    }

    /// The matrix conjugated by a Hadamard on every qubit (X and Z exchanged).
    pub fn hadamard_conjugate(&self) -> Self {
        let n = self.n;
        let mut rows = Vec::with_capacity(2 * n);
        for i in 0..2 * n {
            let src = if i < n { i + n } else { i - n };
            rows.push(self.rows[src].swap_zx());
        }
        Self { n, rows }
    }
}

impl fmt::Debug for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "SymplecticMatrix{{{}}}", rows.join(", "))
    }
}

/// Uniformly random element of the binary symplectic group on `2n` bits.
///
/// Builds a symplectic basis pair by pair: `e_k` is uniform over the nonzero
/// vectors of the complement of the pairs chosen so far, and `f_k` uniform over
/// that complement subject to `<e_k, f_k> = 1`.
pub fn sample_symplectic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SymplecticMatrix {
    let mut es: Vec<PauliOperator> = Vec::with_capacity(n);
    let mut fs: Vec<PauliOperator> = Vec::with_capacity(n);

    // Uniform on the complement: the projection has equal-size fibres.
    let project = |v: &mut PauliOperator, es: &[PauliOperator], fs: &[PauliOperator]| {
        let snapshot = v.clone();
        for (e, f) in es.iter().zip(fs) {
            if symplectic_product_unchecked(&snapshot, f) {
                *v ^= e;
            }
            if symplectic_product_unchecked(&snapshot, e) {
                *v ^= f;
            }
        }
    };

    for _ in 0..n {
        let e = loop {
            let mut v = PauliOperator::random(n, rng);
            project(&mut v, &es, &fs);
            if !v.is_identity() {
                break v;
            }
        };
        let f = loop {
            let mut v = PauliOperator::random(n, rng);
            project(&mut v, &es, &fs);
            if symplectic_product_unchecked(&e, &v) {
                break v;
            }
        };
        es.push(e);
        fs.push(f);
    }

    let mut rows = es;
    rows.extend(fs);
    SymplecticMatrix { n, rows }
}
