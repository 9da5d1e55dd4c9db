//! Soft-input soft-output trellis decoding and the iterative turbo decoder.
//!
//! The hidden chain is the memory state between frames. A transition at frame
//! `t` is any input whose syndrome-visible parts match frame `t`'s syndrome;
//! ancilla-Z, cbit-Z and gauge content are summed over. Probabilities are kept
//! in the linear domain and renormalized after every frame.

use crate::channel::ChannelModel;
use crate::encoder::{logical_of, ConvolutionalEncoder, FrameLegs, Leg, LogicalLabel, ResourceSignature};
use crate::error::{Error, Result};
use crate::symplectic::{packed, Pauli};
use crate::turbo::{BlockCode, BlockDecomposition, BlockSyndrome, TurboCode, TurboSyndrome};

/// Largest frame for which the per-frame `4^n` emission table is built.
pub const MAX_FRAME_QUBITS: usize = 10;

pub const DEFAULT_MAX_ITERATIONS: usize = 12;

const UNIFORM: [f64; 4] = [0.25; 4];

/// Soft inputs of one block.
#[derive(Clone, Debug)]
pub struct SisoInput<'a> {
    pub syndrome: &'a BlockSyndrome,
    /// One distribution per physical qubit of the block, indexed by [`Pauli::index`].
    pub physical_priors: &'a [[f64; 4]],
    /// One distribution per logical qubit; `None` is uniform.
    pub logical_priors: Option<&'a [[f64; 4]]>,
    /// Distribution of Bob-side ebit errors; `None` trusts the Bell outcomes.
    pub ebit_prior: Option<[f64; 4]>,
}

#[derive(Clone, Debug)]
pub struct SisoOutput {
    /// Per frame, posterior over labels by [`LogicalLabel::index`].
    pub label_posteriors: Vec<Vec<f64>>,
    /// Per logical qubit, the posterior with its own prior left out.
    pub logical_extrinsic: Vec<[f64; 4]>,
    /// Per physical qubit, the posterior with its own prior left out.
    pub physical_extrinsic: Vec<[f64; 4]>,
    /// Per-frame maximum a posteriori labels.
    pub hard: Vec<LogicalLabel>,
}

/// One enumerated non-memory input.
#[derive(Clone, Copy, Debug)]
struct Choice {
    legs: u64,
    logical: u64,
    cbits: u64,
    ebit: u64,
}

/// Inputs whose syndrome-visible parts are zero; the frame's syndrome is
/// added on top by linearity.
fn free_choices(sig: &ResourceSignature, ebits_free: bool) -> Vec<Choice> {
    let n = sig.n();
    let mut out = vec![Choice {
        legs: 0,
        logical: 0,
        cbits: 0,
        ebit: 0,
    }];
    let mut expand = |leg: Leg, paulis: &[Pauli]| {
        let off = sig.offset(leg) - sig.m;
        let w = sig.width(leg);
        for q in 0..w {
            let mut next = Vec::with_capacity(out.len() * paulis.len());
            for c in &out {
                for &p in paulis {
                    let mut d = *c;
                    d.legs = packed::set(d.legs, n, off + q, p);
                    match leg {
                        Leg::Logical => d.logical = packed::set(d.logical, w, q, p),
                        Leg::Cbit => d.cbits |= (p.x() as u64) << (w - 1 - q),
                        Leg::Ebit => d.ebit = packed::set(d.ebit, w, q, p),
                        _ => {}
                    }
                    next.push(d);
                }
            }
            out = next;
        }
    };
    expand(Leg::Logical, &Pauli::ALL);
    expand(Leg::Ancilla, &[Pauli::I, Pauli::Z]);
    if ebits_free {
        expand(Leg::Ebit, &Pauli::ALL);
    }
    expand(Leg::Cbit, &Pauli::ALL);
    expand(Leg::Gauge, &Pauli::ALL);
    out
}

fn join_legs(parts: &[(u64, usize)]) -> u64 {
    let mut v = 0;
    let mut w = 0;
    for &(p, pw) in parts {
        v = packed::join(v, w, p, pw);
        w += pw;
    }
    v
}

/// `Π_q prior_q(P_q)` for every `P` on `priors.len()` qubits.
fn product_table(priors: &[[f64; 4]]) -> Vec<f64> {
    let n = priors.len();
    let mut table = vec![0.0; 1 << (2 * n)];
    for (p, slot) in table.iter_mut().enumerate() {
        let mut v = 1.0;
        for (q, pr) in priors.iter().enumerate() {
            v *= pr[packed::get(p as u64, n, q).index()];
        }
        *slot = v;
    }
    table
}

/// `ext_q(x) = Σ_{P: P_q = x} mass[P] Π_{j≠q} prior_j(P_j)`, normalized.
fn exclusion(mass: &[f64], priors: &[[f64; 4]]) -> Result<Vec<[f64; 4]>> {
    let n = priors.len();
    let mut out = vec![[0.0; 4]; n];
    for (p, &m) in mass.iter().enumerate() {
        if m == 0.0 {
            continue;
        }
        let paulis: Vec<usize> = (0..n).map(|q| packed::get(p as u64, n, q).index()).collect();
        for q in 0..n {
            let mut v = m;
            for (j, pr) in priors.iter().enumerate() {
                if j != q {
                    v *= pr[paulis[j]];
                }
            }
            out[q][paulis[q]] += v;
        }
    }
    for d in &mut out {
        normalize(d)?;
    }
    Ok(out)
}

fn normalize(d: &mut [f64]) -> Result<f64> {
    let s: f64 = d.iter().sum();
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::DecodeFailure("zero total likelihood".into()));
    }
    d.iter_mut().for_each(|v| *v /= s);
    Ok(s)
}

/// Forward-backward decoding of one block.
pub fn siso_decode(block: &BlockCode, input: &SisoInput<'_>) -> Result<SisoOutput> {
    let enc: &ConvolutionalEncoder = &block.encoder;
    let sig = *enc.signature();
    let (m, n, big_n) = (sig.m, sig.n(), sig.total());
    let frames = block.frames;
    if n > MAX_FRAME_QUBITS {
        return Err(Error::TooManyQubits {
            qubits: n,
            max: MAX_FRAME_QUBITS,
        });
    }
    if input.physical_priors.len() != block.physical_len() {
        return Err(Error::Dimension {
            expected: block.physical_len(),
            found: input.physical_priors.len(),
        });
    }
    if input.syndrome.frames.len() != frames {
        return Err(Error::Dimension {
            expected: frames,
            found: input.syndrome.frames.len(),
        });
    }
    let logical_priors: Vec<[f64; 4]> = match input.logical_priors {
        Some(lp) => {
            if lp.len() != block.logical_qubits() {
                return Err(Error::Dimension {
                    expected: block.logical_qubits(),
                    found: lp.len(),
                });
            }
            lp.to_vec()
        }
        None => vec![UNIFORM; block.logical_qubits()],
    };

    let states = 1usize << (2 * m);
    let ebits_free = input.ebit_prior.is_some() && sig.c > 0;
    let choices = free_choices(&sig, ebits_free);
    let split = |v: u64| packed::split(v, big_n, m);
    let mem_img: Vec<(u64, u64)> = (0..states as u64)
        .map(|s| split(enc.apply_packed(packed::join(s, m, 0, n))))
        .collect();
    let choice_img: Vec<(u64, u64)> = choices
        .iter()
        .map(|c| split(enc.apply_packed(packed::join(0, m, c.legs, n))))
        .collect();

    let kq = sig.k_q;
    let label_count = sig.label_count();
    let lq_count = 1usize << (2 * kq);
    let mut weights = vec![0.0; choices.len()];
    let mut weights_no_logical = vec![0.0; choices.len()];
    let mut syn_img = vec![(0u64, 0u64); frames];
    let mut gammas: Vec<Vec<f64>> = Vec::with_capacity(frames);

    // per-frame tables
    let frame_tables = |t: usize, weights: &mut [f64], weights_nl: &mut [f64]| -> (u64, u64) {
        let fs = &input.syndrome.frames[t];
        let ebit_fixed = if ebits_free {
            0
        } else {
            (fs.ebit_z << sig.c) | fs.ebit_x
        };
        let base = join_legs(&[
            (0, sig.k_q),
            (fs.ancilla, sig.a),
            (ebit_fixed, sig.c),
            (0, sig.k_c),
            (0, sig.g),
        ]);
        let lp = &logical_priors[t * kq..(t + 1) * kq];
        let lp_table = product_table(lp);
        let observed = (fs.ebit_z << sig.c) | fs.ebit_x;
        for (i, c) in choices.iter().enumerate() {
            let mut w = 1.0;
            if ebits_free {
                let prior = input.ebit_prior.expect("ebits_free implies a prior");
                let bob = c.ebit ^ observed;
                for q in 0..sig.c {
                    w *= prior[packed::get(bob, sig.c, q).index()];
                }
            }
            weights_nl[i] = w;
            weights[i] = w * lp_table[c.logical as usize];
        }
        split(enc.apply_packed(packed::join(0, m, base, n)))
    };

    for t in 0..frames {
        gammas.push(product_table(&input.physical_priors[t * n..(t + 1) * n]));
    }
    let tail_priors = &input.physical_priors[frames * n..];
    let beta_end = product_table(tail_priors);

    // forward
    let mut alpha = vec![0.0; (frames + 1) * states];
    let mem_mask = packed::mask(m);
    for s in 0..states {
        if packed::x_bits(s as u64, m) == input.syndrome.memory & mem_mask {
            alpha[s] = 1.0;
        }
    }
    normalize(&mut alpha[..states])?;
    let mut frame_weights: Vec<(Vec<f64>, Vec<f64>)> = Vec::with_capacity(frames);
    for t in 0..frames {
        syn_img[t] = frame_tables(t, &mut weights, &mut weights_no_logical);
        frame_weights.push((weights.clone(), weights_no_logical.clone()));
        let (sm, sp) = syn_img[t];
        let gamma = &gammas[t];
        let (cur, next) = alpha.split_at_mut((t + 1) * states);
        let cur = &cur[t * states..];
        let next = &mut next[..states];
        for (s, &a) in cur.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let (bm, bp) = mem_img[s];
            for (i, &(cm, cp)) in choice_img.iter().enumerate() {
                let w = weights[i];
                if w == 0.0 {
                    continue;
                }
                let to = (bm ^ cm ^ sm) as usize;
                let p = (bp ^ cp ^ sp) as usize;
                next[to] += a * w * gamma[p];
            }
        }
        normalize(next)?;
    }

    // backward
    let mut beta = vec![0.0; (frames + 1) * states];
    beta[frames * states..].copy_from_slice(&beta_end);
    let end_total: f64 = alpha[frames * states..]
        .iter()
        .zip(&beta_end)
        .map(|(a, b)| a * b)
        .sum();
    if !(end_total > 0.0) {
        return Err(Error::DecodeFailure("syndrome is inconsistent with the priors".into()));
    }
    normalize(&mut beta[frames * states..])?;
    for t in (0..frames).rev() {
        let (sm, sp) = syn_img[t];
        let gamma = &gammas[t];
        let w = &frame_weights[t].0;
        let (cur, next) = beta.split_at_mut((t + 1) * states);
        let cur = &mut cur[t * states..];
        for (s, slot) in cur.iter_mut().enumerate() {
            let (bm, bp) = mem_img[s];
            let mut acc = 0.0;
            for (i, &(cm, cp)) in choice_img.iter().enumerate() {
                if w[i] == 0.0 {
                    continue;
                }
                let to = (bm ^ cm ^ sm) as usize;
                let p = (bp ^ cp ^ sp) as usize;
                acc += w[i] * gamma[p] * next[to];
            }
            *slot = acc;
        }
        normalize(cur)?;
    }

    // posteriors and extrinsics
    let mut label_posteriors = Vec::with_capacity(frames);
    let mut logical_extrinsic = Vec::with_capacity(frames * kq);
    let mut physical_extrinsic = Vec::with_capacity(block.physical_len());
    let mut hard = Vec::with_capacity(frames);
    let mut phys_mass = vec![0.0; 1 << (2 * n)];
    let mut lq_mass = vec![0.0; lq_count];
    for t in 0..frames {
        let (sm, sp) = syn_img[t];
        let gamma = &gammas[t];
        let (w, wnl) = &frame_weights[t];
        let a_t = &alpha[t * states..(t + 1) * states];
        let b_next = &beta[(t + 1) * states..(t + 2) * states];
        let mut labels = vec![0.0; label_count];
        phys_mass.iter_mut().for_each(|v| *v = 0.0);
        lq_mass.iter_mut().for_each(|v| *v = 0.0);
        for (s, &a) in a_t.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let (bm, bp) = mem_img[s];
            for (i, &(cm, cp)) in choice_img.iter().enumerate() {
                if wnl[i] == 0.0 {
                    continue;
                }
                let to = (bm ^ cm ^ sm) as usize;
                let p = (bp ^ cp ^ sp) as usize;
                let ab = a * b_next[to];
                if ab == 0.0 {
                    continue;
                }
                phys_mass[p] += ab * w[i];
                let agb = ab * gamma[p];
                lq_mass[choices[i].logical as usize] += agb * wnl[i];
                let c = &choices[i];
                labels[((c.logical as usize) << sig.k_c) | c.cbits as usize] += agb * w[i];
            }
        }
        normalize(&mut labels)?;
        hard.push(argmax_label(&labels, &sig));
        label_posteriors.push(labels);
        if kq > 0 {
            logical_extrinsic.extend(exclusion(&lq_mass, &logical_priors[t * kq..(t + 1) * kq])?);
        }
        physical_extrinsic.extend(exclusion(&phys_mass, &input.physical_priors[t * n..(t + 1) * n])?);
    }
    if m > 0 {
        let a_end = &alpha[frames * states..];
        physical_extrinsic.extend(exclusion(a_end, tail_priors)?);
    }

    Ok(SisoOutput {
        label_posteriors,
        logical_extrinsic,
        physical_extrinsic,
        hard,
    })
}

/// Most likely label; near-ties go to the smallest decimal.
fn argmax_label(post: &[f64], sig: &ResourceSignature) -> LogicalLabel {
    let max = post.iter().cloned().fold(f64::MIN, f64::max);
    (0..post.len())
        .filter(|&i| post[i] >= max * (1.0 - 1e-12))
        .map(|i| LogicalLabel::from_index(i, sig))
        .min_by_key(|l| l.decimal(sig))
        .expect("posterior is nonempty")
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeResult {
    pub labels: Vec<LogicalLabel>,
    pub iterations: usize,
    pub converged: bool,
    /// Per outer frame, the winning label's posterior probability.
    pub max_posteriors: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecoderConfig {
    pub max_iterations: usize,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        Self {
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

/// Iterative decoding: inner stage first, undamped extrinsic exchange, stop
/// when the outer hard decision repeats.
pub fn turbo_decode(
    code: &TurboCode,
    syndrome: &TurboSyndrome,
    channel: &ChannelModel,
    config: DecoderConfig,
) -> Result<DecodeResult> {
    let channel_priors = vec![channel.qubit_prior(); code.physical_len()];
    let ebit_prior = (channel.p_ebit > 0.0).then(|| channel.ebit_prior());
    let mid = code.outer.physical_len();
    let il = &code.interleaver;
    let mut inner_logical = vec![UNIFORM; mid];
    let mut previous: Option<Vec<LogicalLabel>> = None;
    let mut last = None;
    for it in 1..=config.max_iterations.max(1) {
        let inner = siso_decode(
            &code.inner,
            &SisoInput {
                syndrome: &syndrome.inner,
                physical_priors: &channel_priors,
                logical_priors: Some(&inner_logical),
                ebit_prior,
            },
        )?;
        let outer_priors: Vec<[f64; 4]> = (0..mid)
            .map(|j| inner.logical_extrinsic[il.forward(j)])
            .collect();
        let outer = siso_decode(
            &code.outer,
            &SisoInput {
                syndrome: &syndrome.outer,
                physical_priors: &outer_priors,
                logical_priors: None,
                ebit_prior,
            },
        )?;
        for j in 0..mid {
            inner_logical[il.forward(j)] = outer.physical_extrinsic[j];
        }
        let max_posteriors = outer
            .hard
            .iter()
            .zip(&outer.label_posteriors)
            .map(|(l, post)| post[l.index(code.outer.encoder.signature())])
            .collect();
        let converged = previous.as_ref() == Some(&outer.hard);
        previous = Some(outer.hard.clone());
        let result = DecodeResult {
            labels: outer.hard,
            iterations: it,
            converged,
            max_posteriors,
        };
        if converged {
            return Ok(result);
        }
        last = Some(result);
    }
    Ok(last.expect("at least one iteration runs"))
}

/// Success iff the estimate equals the true label in every frame.
pub fn judge(result: &DecodeResult, truth: &[LogicalLabel]) -> bool {
    result.labels == truth
}

/// Exhaustive Bayes over every `(memory, legs)` input of a one-frame block;
/// an independent check of [`siso_decode`].
///
/// Supports `2N ≤ 24`; with an ebit prior it also sums over every Bob-side
/// error on the frame's ebits.
pub fn siso_oracle(block: &BlockCode, input: &SisoInput<'_>) -> Result<SisoOutput> {
    let sig = *block.encoder.signature();
    let big_n = sig.total();
    if block.frames != 1 {
        return Err(Error::Dimension { expected: 1, found: block.frames });
    }
    if big_n > 12 {
        return Err(Error::TooManyQubits { qubits: big_n, max: 12 });
    }
    if input.physical_priors.len() != block.physical_len() {
        return Err(Error::Dimension {
            expected: block.physical_len(),
            found: input.physical_priors.len(),
        });
    }
    let uniform = vec![UNIFORM; sig.k_q];
    let logical = input.logical_priors.unwrap_or(&uniform);
    let n_phys = block.physical_len();
    let mut labels = vec![0.0; sig.label_count()];
    let mut lext = vec![[0.0; 4]; sig.k_q];
    let mut pext = vec![[0.0; 4]; n_phys];
    for v in 0..(1u64 << (2 * big_n)) {
        let (mem, rest) = packed::split(v, big_n, sig.m);
        let legs = FrameLegs::unpack(rest, &sig);
        let d = BlockDecomposition {
            initial_memory: crate::symplectic::decimal_to_pauli(mem, sig.m)?,
            frames: vec![legs.clone()],
        };
        let base = d.syndrome();
        let ebit_weight: f64 = match input.ebit_prior {
            None => (&base == input.syndrome) as u8 as f64,
            Some(prior) => (0..1u64 << (2 * sig.c))
                .filter_map(|b| {
                    let bob = crate::symplectic::decimal_to_pauli(b, sig.c).ok()?;
                    let mut seen = base.clone();
                    seen.apply_ebit_noise(sig.c, &bob);
                    (&seen == input.syndrome)
                        .then(|| bob.iter().map(|q| prior[q.index()]).product::<f64>())
                })
                .sum(),
        };
        if ebit_weight == 0.0 {
            continue;
        }
        // the block transmits the frame's physical qubits, then the final memory
        let out = block.encoder.apply_packed(v);
        let (mem_out, phys) = packed::split(out, big_n, sig.m);
        let e: Vec<usize> = (0..sig.n())
            .map(|q| packed::get(phys, sig.n(), q).index())
            .chain((0..sig.m).map(|q| packed::get(mem_out, sig.m, q).index()))
            .collect();
        let factors: Vec<f64> = e
            .iter()
            .enumerate()
            .map(|(q, &i)| input.physical_priors[q][i])
            .chain((0..sig.k_q).map(|q| logical[q][legs.logical.get(q).index()]))
            .chain([ebit_weight])
            .collect();
        let leave_out = |skip: usize| -> f64 {
            factors.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, f)| f).product()
        };
        let all: f64 = factors.iter().product();
        labels[logical_of(&legs).index(&sig)] += all;
        for (q, &i) in e.iter().enumerate() {
            pext[q][i] += leave_out(q);
        }
        for q in 0..sig.k_q {
            lext[q][legs.logical.get(q).index()] += leave_out(n_phys + q);
        }
    }
    let total: f64 = labels.iter().sum();
    if total <= 0.0 {
        return Err(Error::DecodeFailure("syndrome has zero likelihood".into()));
    }
    let norm = |d: &mut [f64]| {
        let s: f64 = d.iter().sum();
        if s > 0.0 {
            d.iter_mut().for_each(|v| *v /= s);
        }
    };
    norm(&mut labels);
    lext.iter_mut().for_each(|d| norm(d));
    pext.iter_mut().for_each(|d| norm(d));
    let hard = vec![argmax_label(&labels, &sig)];
    Ok(SisoOutput {
        label_posteriors: vec![labels],
        logical_extrinsic: lext,
        physical_extrinsic: pext,
        hard,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::single_qubit_prior;
    use crate::data::bundled;
    use crate::symplectic::PauliOperator;
    use crate::turbo::Interleaver;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_priors(n: usize, rng: &mut ChaCha8Rng) -> Vec<[f64; 4]> {
        (0..n)
            .map(|_| {
                let mut d = [0.0; 4];
                for v in &mut d {
                    *v = rng.gen_range(0.05..1.0);
                }
                let s: f64 = d.iter().sum();
                d.map(|v| v / s)
            })
            .collect()
    }

    fn check_against_bayes(name: &str, seed: u64, ebit_prior: Option<[f64; 4]>) {
        let enc = bundled(name).unwrap();
        let sig = *enc.signature();
        let block = BlockCode::new(enc, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..5 {
            let e = PauliOperator::random(block.physical_len(), &mut rng);
            let syndrome = block.invert(&e).unwrap().syndrome();
            let phys = random_priors(block.physical_len(), &mut rng);
            let logical = random_priors(sig.k_q, &mut rng);
            let out = siso_decode(
                &block,
                &SisoInput {
                    syndrome: &syndrome,
                    physical_priors: &phys,
                    logical_priors: Some(&logical),
                    ebit_prior,
                },
            )
            .unwrap();
            let bayes = siso_oracle(
                &block,
                &SisoInput {
                    syndrome: &syndrome,
                    physical_priors: &phys,
                    logical_priors: Some(&logical),
                    ebit_prior,
                },
            )
            .unwrap();
            assert_eq!(out.hard, bayes.hard);
            let (labels, lext, pext) = (&bayes.label_posteriors[0], &bayes.logical_extrinsic, &bayes.physical_extrinsic);
            for (a, b) in out.label_posteriors[0].iter().zip(labels) {
                assert!((a - b).abs() < 1e-10, "{name}: {a} vs {b}");
            }
            for (a, b) in out.logical_extrinsic.iter().zip(lext) {
                for k in 0..4 {
                    assert!((a[k] - b[k]).abs() < 1e-10, "{name}: logical {a:?} vs {b:?}");
                }
            }
            for (a, b) in out.physical_extrinsic.iter().zip(pext) {
                for k in 0..4 {
                    assert!((a[k] - b[k]).abs() < 1e-10, "{name}: physical {a:?} vs {b:?}");
                }
            }
        }
    }

    #[test]
    fn single_frame_matches_bayes() {
        for (i, name) in ["table1-01", "table1-05", "table1-06", "table1-07", "pto1r"].iter().enumerate() {
            check_against_bayes(name, i as u64, None);
        }
    }

    #[test]
    fn noisy_ebits_match_bayes() {
        for (i, name) in ["table1-01", "table1-06", "pto1rea"].iter().enumerate() {
            check_against_bayes(name, 10 + i as u64, Some(single_qubit_prior(0.2)));
        }
    }

    #[test]
    fn zero_syndrome_zero_noise_is_identity() {
        let block = BlockCode::new(bundled("table1-01").unwrap(), 6);
        let syndrome = block.invert(&PauliOperator::identity(block.physical_len())).unwrap().syndrome();
        let phys = vec![single_qubit_prior(0.0); block.physical_len()];
        let out = siso_decode(
            &block,
            &SisoInput {
                syndrome: &syndrome,
                physical_priors: &phys,
                logical_priors: None,
                ebit_prior: None,
            },
        )
        .unwrap();
        for post in &out.label_posteriors {
            assert!((post[0] - 1.0).abs() < 1e-12);
            assert!((post.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
        assert!(out.hard.iter().all(|l| l.is_identity()));
    }

    #[test]
    fn inconsistent_syndrome_fails_cleanly() {
        let block = BlockCode::new(bundled("pto1r").unwrap(), 4);
        let mut syndrome = block.invert(&PauliOperator::identity(block.physical_len())).unwrap().syndrome();
        syndrome.frames[1].ancilla = 0b11;
        let phys = vec![single_qubit_prior(0.0); block.physical_len()];
        let err = siso_decode(
            &block,
            &SisoInput {
                syndrome: &syndrome,
                physical_priors: &phys,
                logical_priors: None,
                ebit_prior: None,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::DecodeFailure(_)));
    }

    #[test]
    fn noiseless_turbo_trial() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let code = TurboCode::build(bundled("pto1rea").unwrap(), bundled("pto1rea").unwrap(), 4, &mut rng).unwrap();
        let inv = code.invert(&PauliOperator::identity(code.physical_len())).unwrap();
        let ch = ChannelModel::depolarizing(0.0).unwrap();
        let r = turbo_decode(&code, &inv.syndrome, &ch, DecoderConfig::default()).unwrap();
        assert!(judge(&r, &inv.labels));
        assert!(r.converged && r.iterations <= 2);
    }

    #[test]
    fn judge_compares_every_frame() {
        let sig = *bundled("pto1r").unwrap().signature();
        let truth = vec![LogicalLabel::IDENTITY; 3];
        let mut r = DecodeResult {
            labels: truth.clone(),
            iterations: 1,
            converged: true,
            max_posteriors: vec![1.0; 3],
        };
        assert!(judge(&r, &truth));
        r.labels[1] = LogicalLabel::from_index(2, &sig);
        assert!(!judge(&r, &truth));
    }

    #[test]
    fn ebit_noise_likelihood_reduces_to_fixed_outcome() {
        let block = BlockCode::new(bundled("table1-01").unwrap(), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let e = PauliOperator::random(block.physical_len(), &mut rng);
        let syndrome = block.invert(&e).unwrap().syndrome();
        let phys = random_priors(block.physical_len(), &mut rng);
        let run = |prior| {
            siso_decode(
                &block,
                &SisoInput {
                    syndrome: &syndrome,
                    physical_priors: &phys,
                    logical_priors: None,
                    ebit_prior: prior,
                },
            )
            .unwrap()
        };
        let fixed = run(None);
        let noisy = run(Some(single_qubit_prior(0.0)));
        for (a, b) in fixed.label_posteriors.iter().zip(&noisy.label_posteriors) {
            for (x, y) in a.iter().zip(b) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn identity_interleaver_code_decodes_weight_one() {
        let outer = bundled("pto1rea").unwrap();
        let inner = bundled("pto1rea").unwrap();
        let code = TurboCode::new(outer, inner, 2, Interleaver::identity(9)).unwrap();
        let ch = ChannelModel::depolarizing(0.01).unwrap();
        let n = code.physical_len();
        for q in 0..n {
            let inv = code.invert(&PauliOperator::single(n, q, Pauli::Y)).unwrap();
            let r = turbo_decode(&code, &inv.syndrome, &ch, DecoderConfig::default()).unwrap();
            assert!(judge(&r, &inv.labels), "Y on {q}");
        }
    }
}
