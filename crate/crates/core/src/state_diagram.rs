//! State diagrams of encoders and their structural properties.
//!
//! Vertices are memory Paulis indexed by their decimal value. There is one
//! edge per admissible frame input: any logical Pauli, ancillas restricted to
//! `{I, Z}`, ebits fixed to identity, any cbit and gauge Pauli.

use rayon::prelude::*;
use serde::Serialize;

use crate::encoder::{ConvolutionalEncoder, Leg, LogicalLabel, ResourceSignature};
use crate::error::{Error, Result};
use crate::symplectic::{packed, Pauli};

/// Default cap on materialized edges.
pub const DEFAULT_EDGE_BUDGET: u128 = 1 << 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: u32,
    pub to: u32,
    /// Packed non-memory input legs.
    pub input: u64,
    /// Packed `n`-qubit physical output.
    pub physical: u64,
    pub phys_weight: u8,
    pub log_weight: u8,
}

#[derive(Clone, Debug)]
pub struct StateDiagram {
    sig: ResourceSignature,
    vertices: usize,
    out_degree: usize,
    edges: Vec<Edge>,
}

/// Input legs enumerated per vertex, in a fixed order.
pub fn admissible_inputs(sig: &ResourceSignature) -> Vec<u64> {
    let n = sig.n();
    let mut out = vec![0u64];
    let push_choices = |out: &mut Vec<u64>, leg: Leg, paulis: &[Pauli]| {
        let off = sig.offset(leg) - sig.m;
        for q in 0..sig.width(leg) {
            let mut next = Vec::with_capacity(out.len() * paulis.len());
            for &v in out.iter() {
                for &p in paulis {
                    next.push(packed::set(v, n, off + q, p));
                }
            }
            *out = next;
        }
    };
    push_choices(&mut out, Leg::Logical, &Pauli::ALL);
    push_choices(&mut out, Leg::Ancilla, &[Pauli::I, Pauli::Z]);
    push_choices(&mut out, Leg::Cbit, &Pauli::ALL);
    push_choices(&mut out, Leg::Gauge, &Pauli::ALL);
    out
}

/// Logical label carried by packed input legs.
pub fn label_of_input(sig: &ResourceSignature, input: u64) -> LogicalLabel {
    let n = sig.n();
    let (qubits, rest) = packed::split(input, n, sig.k_q);
    let rest_n = n - sig.k_q;
    let skip = sig.a + sig.c;
    let (_, rest) = packed::split(rest, rest_n, skip);
    let (cbit, _) = packed::split(rest, rest_n - skip, sig.k_c);
    LogicalLabel {
        qubits,
        cbits: packed::x_bits(cbit, sig.k_c),
    }
}

impl StateDiagram {
    pub fn build(enc: &ConvolutionalEncoder) -> Result<Self> {
        Self::build_with_budget(enc, DEFAULT_EDGE_BUDGET)
    }

    pub fn build_with_budget(enc: &ConvolutionalEncoder, budget: u128) -> Result<Self> {
        let sig = *enc.signature();
        let (m, n, big_n) = (sig.m, sig.n(), sig.total());
        let degree_bits = 2 * sig.k_q + sig.a + 2 * sig.k_c + 2 * sig.g;
        let edge_count = 1u128 << (2 * m + degree_bits).min(127);
        if 2 * m + degree_bits > 100 || edge_count > budget {
            return Err(Error::MemoryBudget {
                memory: m,
                edges: edge_count,
                budget,
            });
        }
        let vertices = 1usize << (2 * m);
        let inputs = admissible_inputs(&sig);
        let input_images: Vec<u64> = inputs
            .iter()
            .map(|&v| enc.apply_packed(packed::join(0, m, v, n)))
            .collect();
        let input_log: Vec<u8> = inputs
            .iter()
            .map(|&v| label_of_input(&sig, v).weight(&sig) as u8)
            .collect();
        let edges: Vec<Edge> = (0..vertices)
            .into_par_iter()
            .flat_map_iter(|mem| {
                let base = enc.apply_packed(packed::join(mem as u64, m, 0, n));
                let inputs = &inputs;
                let input_images = &input_images;
                let input_log = &input_log;
                (0..inputs.len()).map(move |j| {
                    let out = base ^ input_images[j];
                    let (to, physical) = packed::split(out, big_n, m);
                    Edge {
                        from: mem as u32,
                        to: to as u32,
                        input: inputs[j],
                        physical,
                        phys_weight: packed::weight(physical, n) as u8,
                        log_weight: input_log[j],
                    }
                })
            })
            .collect();
        Ok(Self {
            sig,
            vertices,
            out_degree: inputs.len(),
            edges,
        })
    }

    /// Diagram from an explicit edge list, for hand-built graphs.
    pub fn from_edges(sig: ResourceSignature, vertices: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_by_key(|e| e.from);
        let out_degree = edges.len().checked_div(vertices).unwrap_or(0);
        Self {
            sig,
            vertices,
            out_degree,
            edges,
        }
    }

    pub fn signature(&self) -> &ResourceSignature {
        &self.sig
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Out-degree of every vertex of a built diagram.
    pub fn out_degree(&self) -> usize {
        self.out_degree
    }

    pub fn edges_from(&self, v: usize) -> &[Edge] {
        let lo = self.edges.partition_point(|e| (e.from as usize) < v);
        let hi = self.edges.partition_point(|e| (e.from as usize) <= v);
        &self.edges[lo..hi]
    }

    /// The unique edge for a fully specified input.
    pub fn transition(&self, from: usize, input: u64) -> Option<&Edge> {
        self.edges_from(from).iter().find(|e| e.input == input)
    }

    pub fn label(&self, e: &Edge) -> LogicalLabel {
        label_of_input(&self.sig, e.input)
    }

    /// Strongly connected components of the physical-weight-zero subgraph.
    pub fn zero_components(&self) -> Components {
        Components::of(self.vertices, self.edges.iter().filter(|e| e.phys_weight == 0))
    }

    pub fn zero_cycle_vertices(&self) -> Vec<usize> {
        let comps = self.zero_components();
        (0..self.vertices).filter(|&v| comps.on_cycle(v)).collect()
    }

    pub fn check_non_catastrophic(&self) -> (bool, Option<Edge>) {
        let comps = self.zero_components();
        let witness = self
            .edges
            .iter()
            .find(|e| comps.edge_on_cycle(e) && e.log_weight > 0)
            .copied();
        (witness.is_none(), witness)
    }

    /// `(recursive, quasi_recursive, witness)`.
    ///
    /// A weight-one logical first edge leaving a zero-cycle vertex must not
    /// lead, through zero-logical edges, to a zero-physical zero-logical cycle.
    /// The quasi variant only follows the undecorated continuation.
    pub fn check_recursive(&self) -> (bool, bool, Option<Edge>) {
        let comps = self.zero_components();
        let v = self.vertices;

        let c0 = Components::of(
            v,
            self.edges
                .iter()
                .filter(|e| e.phys_weight == 0 && e.log_weight == 0),
        );
        let mut reach = vec![false; v];
        let mut stack: Vec<usize> = (0..v).filter(|&u| c0.on_cycle(u)).collect();
        for &u in &stack {
            reach[u] = true;
        }
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); v];
        for e in self.edges.iter().filter(|e| e.log_weight == 0) {
            rev[e.to as usize].push(e.from);
        }
        while let Some(u) = stack.pop() {
            for &w in &rev[u] {
                if !reach[w as usize] {
                    reach[w as usize] = true;
                    stack.push(w as usize);
                }
            }
        }

        let first_edges = self
            .edges
            .iter()
            .filter(|e| comps.on_cycle(e.from as usize) && e.log_weight == 1)
            .filter(|e| !comps.edge_on_cycle(e));

        let mut recursive_witness = None;
        for e in first_edges.clone() {
            if reach[e.to as usize] {
                recursive_witness = Some(*e);
                break;
            }
        }

        // undecorated continuation: all-identity input from every vertex
        let next: Vec<&Edge> = (0..v)
            .map(|u| self.transition(u, 0).expect("identity input is admissible"))
            .collect();
        let n = self.sig.n();
        let lo = self.sig.offset(Leg::Logical) - self.sig.m;
        let logical_single = |input: u64| {
            (0..self.sig.k_q).any(|q| {
                Pauli::ALL[1..]
                    .iter()
                    .any(|&p| packed::set(0, n, lo + q, p) == input)
            })
        };
        let mut quasi_witness = None;
        for e in first_edges.filter(|e| logical_single(e.input)) {
            let mut seen = vec![usize::MAX; v];
            let mut u = e.to as usize;
            let mut step = 0;
            while seen[u] == usize::MAX {
                seen[u] = step;
                step += 1;
                u = next[u].to as usize;
            }
            let start = u;
            let mut all_zero = true;
            loop {
                if next[u].phys_weight != 0 {
                    all_zero = false;
                    break;
                }
                u = next[u].to as usize;
                if u == start {
                    break;
                }
            }
            if all_zero {
                quasi_witness = Some(*e);
                break;
            }
        }

        let recursive = recursive_witness.is_none();
        let quasi = quasi_witness.is_none();
        (recursive, quasi, recursive_witness.or(quasi_witness))
    }

    pub fn properties(&self) -> PropertyReport {
        let (non_catastrophic, cat_witness) = self.check_non_catastrophic();
        let (recursive, quasi_recursive, rec_witness) = self.check_recursive();
        let witness = cat_witness.or(rec_witness).map(|e| WitnessEdge {
            from: e.from,
            to: e.to,
            input: e.input,
            physical: e.physical,
            phys_weight: e.phys_weight,
            log_weight: e.log_weight,
        });
        PropertyReport {
            non_catastrophic,
            quasi_recursive,
            recursive,
            zero_cycle_vertices: self.zero_cycle_vertices().into_iter().map(|v| v as u64).collect(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessEdge {
    pub from: u32,
    pub to: u32,
    pub input: u64,
    pub physical: u64,
    pub phys_weight: u8,
    pub log_weight: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub non_catastrophic: bool,
    pub quasi_recursive: bool,
    pub recursive: bool,
    /// Memory decimals of vertices on zero-physical-weight cycles.
    pub zero_cycle_vertices: Vec<u64>,
    /// First offending edge: catastrophic loop edge, else the first edge of a
    /// finite weight-one response.
    pub witness: Option<WitnessEdge>,
}

/// Strongly connected components with cycle membership.
#[derive(Clone, Debug)]
pub struct Components {
    comp: Vec<u32>,
    cyclic: Vec<bool>,
}

impl Components {
    /// Iterative Tarjan over the given edge subset.
    pub fn of<'a>(vertices: usize, edges: impl Iterator<Item = &'a Edge>) -> Self {
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); vertices];
        let mut self_loop = vec![false; vertices];
        for e in edges {
            if e.from == e.to {
                self_loop[e.from as usize] = true;
            } else {
                adj[e.from as usize].push(e.to);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }

        const UNSEEN: u32 = u32::MAX;
        let mut index = vec![UNSEEN; vertices];
        let mut low = vec![0u32; vertices];
        let mut on_stack = vec![false; vertices];
        let mut comp = vec![UNSEEN; vertices];
        let mut sizes: Vec<u32> = Vec::new();
        let mut stack: Vec<u32> = Vec::new();
        let mut call: Vec<(u32, usize)> = Vec::new();
        let mut counter = 0u32;

        for root in 0..vertices {
            if index[root] != UNSEEN {
                continue;
            }
            call.push((root as u32, 0));
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root as u32);
            on_stack[root] = true;
            while let Some(&mut (u, ref mut i)) = call.last_mut() {
                let u = u as usize;
                if *i < adj[u].len() {
                    let w = adj[u][*i] as usize;
                    *i += 1;
                    if index[w] == UNSEEN {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w as u32);
                        on_stack[w] = true;
                        call.push((w as u32, 0));
                    } else if on_stack[w] {
                        low[u] = low[u].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        let p = parent as usize;
                        low[p] = low[p].min(low[u]);
                    }
                    if low[u] == index[u] {
                        let id = sizes.len() as u32;
                        let mut size = 0;
                        loop {
                            let w = stack.pop().expect("tarjan stack") as usize;
                            on_stack[w] = false;
                            comp[w] = id;
                            size += 1;
                            if w == u {
                                break;
                            }
                        }
                        sizes.push(size);
                    }
                }
            }
        }
        let cyclic = (0..vertices)
            .map(|v| sizes[comp[v] as usize] > 1 || self_loop[v])
            .collect();
        Self { comp, cyclic }
    }

    pub fn component(&self, v: usize) -> u32 {
        self.comp[v]
    }

    pub fn on_cycle(&self, v: usize) -> bool {
        self.cyclic[v]
    }

    /// Whether a zero-physical-weight edge closes a cycle of the subgraph.
    pub fn edge_on_cycle(&self, e: &Edge) -> bool {
        e.phys_weight == 0 && self.comp[e.from as usize] == self.comp[e.to as usize]
    }
}
