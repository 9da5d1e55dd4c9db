//! Depolarizing channel sampling and hashing bounds.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symplectic::{Pauli, PauliOperator};

/// Depolarizing noise on transmitted qubits and on Bob's ebit halves.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelModel {
    pub p: f64,
    pub p_ebit: f64,
}

fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::Probability { name, value });
    }
    Ok(())
}

impl ChannelModel {
    pub fn new(p: f64, p_ebit: f64) -> Result<Self> {
        check_probability("p", p)?;
        check_probability("p_ebit", p_ebit)?;
        Ok(Self { p, p_ebit })
    }

    pub fn depolarizing(p: f64) -> Result<Self> {
        Self::new(p, 0.0)
    }

    /// Single-qubit distribution indexed by [`Pauli::index`].
    pub fn qubit_prior(&self) -> [f64; 4] {
        single_qubit_prior(self.p)
    }

    pub fn ebit_prior(&self) -> [f64; 4] {
        single_qubit_prior(self.p_ebit)
    }

    pub fn sample_error<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> PauliOperator {
        sample_depolarizing(self.p, n, rng)
    }

    /// Errors on Bob's halves of `c_total` ebits.
    pub fn sample_ebit_error<R: Rng + ?Sized>(&self, c_total: usize, rng: &mut R) -> PauliOperator {
        sample_depolarizing(self.p_ebit, c_total, rng)
    }
}

pub fn single_qubit_prior(p: f64) -> [f64; 4] {
    [1.0 - p, p / 3.0, p / 3.0, p / 3.0]
}

fn sample_depolarizing<R: Rng + ?Sized>(p: f64, n: usize, rng: &mut R) -> PauliOperator {
    let mut e = PauliOperator::identity(n);
    if p == 0.0 {
        return e;
    }
    for i in 0..n {
        let u: f64 = rng.gen();
        if u < p {
            let which = ((u / p) * 3.0) as usize;
            e.set(i, [Pauli::X, Pauli::Y, Pauli::Z][which.min(2)]);
        }
    }
    e
}

/// Binary entropy in bits, `H₂(0) = H₂(1) = 0`.
pub fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

/// `H₂(p) + p log₂ 3`, the entropy of the depolarizing distribution.
pub fn depolarizing_entropy(p: f64) -> f64 {
    binary_entropy(p) + p * 3f64.log2()
}

pub fn hashing_q(p: f64) -> Result<f64> {
    check_probability("p", p)?;
    Ok(1.0 - depolarizing_entropy(p))
}

pub fn hashing_ea(p: f64) -> Result<f64> {
    check_probability("p", p)?;
    Ok(1.0 - 0.5 * depolarizing_entropy(p))
}

/// Entanglement consumed per channel use by the father protocol.
pub fn father_ebit_rate(p: f64) -> Result<f64> {
    check_probability("p", p)?;
    Ok(0.5 * depolarizing_entropy(p))
}

/// Largest `p` at which the hashing bound still reaches `rate`.
///
/// Both bounds decrease on `[0, 3/4]`, so bisection on that branch is exact
/// to the tolerance.
pub fn noise_limit(rate: f64, assisted: bool) -> Result<f64> {
    if !(rate > 0.0 && rate < 1.0) {
        return Err(Error::RateOutOfRange(rate));
    }
    let f = |p: f64| {
        if assisted {
            1.0 - 0.5 * depolarizing_entropy(p)
        } else {
            1.0 - depolarizing_entropy(p)
        }
    };
    let (mut lo, mut hi) = (0.0f64, 0.75f64);
    if f(hi) >= rate {
        return Ok(hi);
    }
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if f(mid) >= rate {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_noise_is_identity() {
        let m = ChannelModel::depolarizing(0.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(m.sample_error(1000, &mut rng).is_identity());
    }

    #[test]
    fn full_noise_is_balanced() {
        let m = ChannelModel::depolarizing(1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let e = m.sample_error(100_000, &mut rng);
        let mut counts = [0usize; 4];
        for q in e.iter() {
            counts[q.index()] += 1;
        }
        assert_eq!(counts[0], 0);
        let sd = (100_000.0f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
        for c in &counts[1..] {
            assert!((*c as f64 - 100_000.0 / 3.0).abs() < 3.0 * sd, "{counts:?}");
        }
    }

    #[test]
    fn identity_fraction() {
        let m = ChannelModel::depolarizing(0.1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let e = m.sample_error(100_000, &mut rng);
        let frac = 1.0 - e.weight() as f64 / 100_000.0;
        let sd = (0.9f64 * 0.1 / 100_000.0).sqrt();
        assert!((frac - 0.9).abs() < 3.0 * sd);
    }

    #[test]
    fn rejects_bad_probabilities() {
        assert!(ChannelModel::new(1.5, 0.0).is_err());
        assert!(ChannelModel::new(0.1, -0.1).is_err());
        assert!(hashing_q(-0.01).is_err());
        assert!(noise_limit(1.0, false).is_err());
    }

    #[test]
    fn bounds_at_zero() {
        assert_eq!(hashing_q(0.0).unwrap(), 1.0);
        assert_eq!(hashing_ea(0.0).unwrap(), 1.0);
    }

    #[test]
    fn noise_limits() {
        assert_abs_diff_eq!(noise_limit(1.0 / 4.0, false).unwrap(), 0.12689, epsilon = 1e-4);
        assert_abs_diff_eq!(noise_limit(1.0 / 9.0, false).unwrap(), 0.16028, epsilon = 1e-4);
        assert_abs_diff_eq!(noise_limit(1.0 / 4.0, true).unwrap(), 0.35454, epsilon = 1e-4);
        assert_abs_diff_eq!(noise_limit(1.0 / 9.0, true).unwrap(), 0.49088, epsilon = 1e-4);
        assert!(noise_limit(1.0 - 1e-9, false).unwrap() < 1e-6);
    }

    #[test]
    fn inverse_and_identities() {
        for i in 1..100 {
            let r = i as f64 / 100.0;
            for assisted in [false, true] {
                let p = noise_limit(r, assisted).unwrap();
                let back = if assisted { hashing_ea(p) } else { hashing_q(p) }.unwrap();
                assert_abs_diff_eq!(back, r, epsilon = 1e-6);
            }
        }
        for i in 0..=100 {
            let p = i as f64 / 100.0;
            let (q, ea, f) = (hashing_q(p).unwrap(), hashing_ea(p).unwrap(), father_ebit_rate(p).unwrap());
            assert_abs_diff_eq!(ea + f, 1.0, epsilon = 1e-12);
            assert!(ea - q >= 0.0);
            assert_abs_diff_eq!(ea - q, f, epsilon = 1e-12);
        }
    }
}
