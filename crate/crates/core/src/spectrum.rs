//! Distance spectra from truncated powers of the weight adjacency matrix.
//!
//! `F(w)` counts paths of physical weight `w` that leave a vertex on a
//! zero-physical-weight cycle and end at one, never using an edge that lies
//! on such a cycle. Coefficients are exact (`u128` with checked arithmetic).

use std::collections::BTreeMap;
use std::ops::Index;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::state_diagram::StateDiagram;

/// Polynomial in `x` truncated above degree `W`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightPolynomial {
    coeffs: Vec<u128>,
}

impl WeightPolynomial {
    pub fn zero(max_degree: usize) -> Self {
        Self {
            coeffs: vec![0; max_degree + 1],
        }
    }

    pub fn one(max_degree: usize) -> Self {
        let mut p = Self::zero(max_degree);
        p.coeffs[0] = 1;
        p
    }

    /// `count · x^degree` (zero if `degree` exceeds the truncation).
    pub fn monomial(max_degree: usize, degree: usize, count: u128) -> Self {
        let mut p = Self::zero(max_degree);
        if degree <= max_degree {
            p.coeffs[degree] = count;
        }
        p
    }

    pub fn from_coeffs(coeffs: Vec<u128>) -> Self {
        assert!(!coeffs.is_empty(), "a polynomial keeps at least degree 0");
        Self { coeffs }
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_assign_checked(other)?;
        Ok(out)
    }

    pub fn add_assign_checked(&mut self, other: &Self) -> Result<()> {
        assert_eq!(self.coeffs.len(), other.coeffs.len(), "truncation degrees differ");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = a.checked_add(*b).ok_or(Error::Overflow)?;
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.coeffs.len(), other.coeffs.len(), "truncation degrees differ");
        let w = self.max_degree();
        let mut out = Self::zero(w);
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in other.coeffs[..=w - i].iter().enumerate() {
                let t = a.checked_mul(b).ok_or(Error::Overflow)?;
                out.coeffs[i + j] = out.coeffs[i + j].checked_add(t).ok_or(Error::Overflow)?;
            }
        }
        Ok(out)
    }
}

impl Index<usize> for WeightPolynomial {
    type Output = u128;

    fn index(&self, i: usize) -> &u128 {
        &self.coeffs[i]
    }
}

/// Parallel edges of one `(from, to, weight)` class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Group {
    from: u32,
    to: u32,
    weight: u32,
    count: u128,
    logical: bool,
}

/// Sparse weight adjacency matrix with zero-cycle edges removed.
#[derive(Clone, Debug)]
pub struct WeightAdjacency {
    vertices: usize,
    max_degree: usize,
    zero_cycle: Vec<usize>,
    groups: Vec<Group>,
}

impl WeightAdjacency {
    pub fn new(d: &StateDiagram, max_degree: usize) -> Self {
        let comps = d.zero_components();
        let mut map: BTreeMap<(u32, u32, u32, bool), u128> = BTreeMap::new();
        for e in d.edges() {
            if comps.edge_on_cycle(e) || e.phys_weight as usize > max_degree {
                continue;
            }
            *map.entry((e.from, e.to, e.phys_weight as u32, e.log_weight > 0))
                .or_default() += 1;
        }
        let groups = map
            .into_iter()
            .map(|((from, to, weight, logical), count)| Group {
                from,
                to,
                weight,
                count,
                logical,
            })
            .collect();
        Self {
            vertices: d.vertex_count(),
            max_degree,
            zero_cycle: (0..d.vertex_count()).filter(|&v| comps.on_cycle(v)).collect(),
            groups,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn zero_cycle_vertices(&self) -> &[usize] {
        &self.zero_cycle
    }

    /// Entry `(i, j)`: sum of `x^{phys_weight}` over the kept edges `i -> j`.
    pub fn entry(&self, i: usize, j: usize) -> WeightPolynomial {
        let mut p = WeightPolynomial::zero(self.max_degree);
        for g in self
            .groups
            .iter()
            .filter(|g| g.from as usize == i && g.to as usize == j)
        {
            p.coeffs[g.weight as usize] += g.count;
        }
        p
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SpectrumOptions {
    /// Sum only `A + A² + … + A^L`; `None` sums until the series terminates.
    pub max_powers: Option<usize>,
    /// Subtract the paths whose edges all carry zero logical weight.
    pub positive_logical_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceSpectrum {
    /// `counts[w] = F(w)` for `w = 0 ..= W`.
    pub counts: Vec<u128>,
    pub free_distance: Option<usize>,
}

impl DistanceSpectrum {
    fn from_counts(counts: Vec<u128>) -> Self {
        let free_distance = counts.iter().position(|&c| c > 0);
        Self {
            counts,
            free_distance,
        }
    }

    pub fn max_degree(&self) -> usize {
        self.counts.len() - 1
    }
}

pub fn weight_adjacency(d: &StateDiagram, max_degree: usize) -> WeightAdjacency {
    WeightAdjacency::new(d, max_degree)
}

pub fn distance_spectrum(d: &StateDiagram, max_degree: usize) -> Result<DistanceSpectrum> {
    distance_spectrum_with(d, max_degree, SpectrumOptions::default())
}

pub fn free_distance(d: &StateDiagram, max_degree: usize) -> Result<Option<usize>> {
    Ok(distance_spectrum(d, max_degree)?.free_distance)
}

pub fn distance_spectrum_with(
    d: &StateDiagram,
    max_degree: usize,
    opts: SpectrumOptions,
) -> Result<DistanceSpectrum> {
    let adj = WeightAdjacency::new(d, max_degree);
    spectrum_from_adjacency(&adj, opts)
}

pub fn spectrum_from_adjacency(adj: &WeightAdjacency, opts: SpectrumOptions) -> Result<DistanceSpectrum> {
    let all = power_sum(adj, &adj.groups, opts.max_powers)?;
    let counts = if opts.positive_logical_only {
        let zero_logical: Vec<Group> = adj.groups.iter().filter(|g| !g.logical).copied().collect();
        let b0 = power_sum(adj, &zero_logical, opts.max_powers)?;
        all.iter().zip(&b0).map(|(a, b)| a - b).collect()
    } else {
        all
    };
    Ok(DistanceSpectrum::from_counts(counts))
}

/// `Σ_{u,v ∈ Z} [x^w] Σ_i (A^i)(u, v)` by vector propagation from each `u`.
fn power_sum(adj: &WeightAdjacency, groups: &[Group], max_powers: Option<usize>) -> Result<Vec<u128>> {
    let w_max = adj.max_degree;
    let v = adj.vertices;
    let guard = v * (w_max + 1) + 1;
    let mut is_target = vec![false; v];
    for &z in &adj.zero_cycle {
        is_target[z] = true;
    }

    let per_start = adj
        .zero_cycle
        .par_iter()
        .map(|&u| -> Result<Vec<u128>> {
            let mut total = vec![0u128; w_max + 1];
            let mut cur = vec![0u128; v * (w_max + 1)];
            let mut next = vec![0u128; v * (w_max + 1)];
            cur[u * (w_max + 1)] = 1;
            let mut steps = 0usize;
            loop {
                if let Some(l) = max_powers {
                    if steps == l {
                        break;
                    }
                } else if steps > guard {
                    return Err(Error::NonStabilizing { iterations: steps });
                }
                steps += 1;
                next.iter_mut().for_each(|c| *c = 0);
                let mut any = false;
                for g in groups {
                    let src = g.from as usize * (w_max + 1);
                    let dst = g.to as usize * (w_max + 1);
                    let wt = g.weight as usize;
                    for deg in 0..=w_max - wt {
                        let c = cur[src + deg];
                        if c != 0 {
                            let add = c.checked_mul(g.count).ok_or(Error::Overflow)?;
                            let slot = &mut next[dst + deg + wt];
                            *slot = slot.checked_add(add).ok_or(Error::Overflow)?;
                            any = true;
                        }
                    }
                }
                if !any {
                    break;
                }
                for (z, _) in is_target.iter().enumerate().filter(|(_, &t)| t) {
                    let row = &next[z * (w_max + 1)..(z + 1) * (w_max + 1)];
                    for (t, &c) in total.iter_mut().zip(row) {
                        *t = t.checked_add(c).ok_or(Error::Overflow)?;
                    }
                }
                std::mem::swap(&mut cur, &mut next);
            }
            Ok(total)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut out = vec![0u128; w_max + 1];
    for part in per_start {
        for (o, c) in out.iter_mut().zip(part) {
            *o = o.checked_add(c).ok_or(Error::Overflow)?;
        }
    }
    Ok(out)
}

/// Default number of search nodes the oracle may visit.
pub const ORACLE_BUDGET: u64 = 50_000_000;

/// Depth-first path enumeration; an independent check of [`distance_spectrum_with`].
///
/// Walks every admissible path of physical weight at most `W` edge by edge,
/// merging parallel edges of equal `(to, weight, logical)` into one branch
/// carrying their multiplicity.
pub fn spectrum_oracle(
    d: &StateDiagram,
    max_degree: usize,
    opts: SpectrumOptions,
    budget: u64,
) -> Result<DistanceSpectrum> {
    let comps = d.zero_components();
    let v = d.vertex_count();
    let mut out_edges: Vec<BTreeMap<(u32, u32, bool), u128>> = vec![BTreeMap::new(); v];
    for e in d.edges() {
        if comps.edge_on_cycle(e) || e.phys_weight as usize > max_degree {
            continue;
        }
        *out_edges[e.from as usize]
            .entry((e.to, e.phys_weight as u32, e.log_weight > 0))
            .or_default() += 1;
    }
    let out_edges: Vec<Vec<(usize, usize, bool, u128)>> = out_edges
        .into_iter()
        .map(|m| {
            m.into_iter()
                .map(|((to, w, l), c)| (to as usize, w as usize, l, c))
                .collect()
        })
        .collect();
    let targets: Vec<bool> = (0..v).map(|u| comps.on_cycle(u)).collect();

    struct Walk<'a> {
        out: &'a [Vec<(usize, usize, bool, u128)>],
        targets: &'a [bool],
        w_max: usize,
        opts: SpectrumOptions,
        counts: Vec<u128>,
        visited: u64,
        budget: u64,
    }

    impl Walk<'_> {
        fn go(&mut self, at: usize, weight: usize, len: usize, logical: bool, mult: u128) -> Result<()> {
            if let Some(l) = self.opts.max_powers {
                if len == l {
                    return Ok(());
                }
            }
            for i in 0..self.out[at].len() {
                let (to, w, l, c) = self.out[at][i];
                if weight + w > self.w_max {
                    continue;
                }
                self.visited += 1;
                if self.visited > self.budget {
                    return Err(Error::OracleBudget { budget: self.budget });
                }
                let m = mult.checked_mul(c).ok_or(Error::Overflow)?;
                let lg = logical || l;
                if self.targets[to] && (lg || !self.opts.positive_logical_only) {
                    let slot = &mut self.counts[weight + w];
                    *slot = slot.checked_add(m).ok_or(Error::Overflow)?;
                }
                self.go(to, weight + w, len + 1, lg, m)?;
            }
            Ok(())
        }
    }

    let mut walk = Walk {
        out: &out_edges,
        targets: &targets,
        w_max: max_degree,
        opts,
        counts: vec![0; max_degree + 1],
        visited: 0,
        budget,
    };
    for u in (0..v).filter(|&u| targets[u]) {
        walk.go(u, 0, 0, false, 1)?;
    }
    Ok(DistanceSpectrum::from_counts(walk.counts))
}

/// Exponent `(d* − 2) / d*` of the minimum-distance growth `N^{(d*−2)/d*}`,
/// as a reduced fraction.
pub fn min_distance_scaling(outer_free_distance: usize) -> Result<(usize, usize)> {
    if outer_free_distance < 2 {
        return Err(Error::Signature(format!(
            "free distance {outer_free_distance} is below 2"
        )));
    }
    let (num, den) = (outer_free_distance - 2, outer_free_distance);
    let g = gcd(num, den);
    Ok((num / g, den / g))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
