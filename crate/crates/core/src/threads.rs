//! Forbidden and permitted threads, cycles, combinatorial boundary
//! components and AAG invariants.
//!
//! Every vertex carries two incoming and two outgoing *ports*; real arrows
//! occupy some of them and the rest are empty. The relations at a vertex
//! pair incoming ports with outgoing ports: the forbidden pairing matches
//! `alpha` with `beta` when `beta alpha` is a relation, and the permitted
//! pairing is the complementary matching. A *slot* `(v, i)` is the pair
//! formed by incoming port `i` and its partner, so each vertex has exactly
//! two forbidden and two permitted slots. Threads are maximal chains of
//! slots linked by arrows; a slot whose ports are both empty is a trivial
//! thread.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{ArrowIdx, GradedGentleAlgebra, VertexIdx};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ThreadKind {
    Forbidden,
    Permitted,
}

/// A slot: vertex plus incoming port index (0 or 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub vertex: VertexIdx,
    pub port: usize,
}

impl Slot {
    /// Dense index `2 * vertex + port`.
    pub fn index(self) -> usize {
        2 * self.vertex + self.port
    }

    pub fn from_index(i: usize) -> Slot {
        Slot {
            vertex: i / 2,
            port: i % 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct VertexPorts {
    ins: [Option<ArrowIdx>; 2],
    outs: [Option<ArrowIdx>; 2],
    /// Forbidden partner (outgoing port) of each incoming port.
    forbidden_out: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thread {
    pub kind: ThreadKind,
    /// Slots visited, from the source end to the target end.
    pub slots: Vec<Slot>,
    /// Arrows `alpha_1, alpha_2, ...` in path order (the path is written
    /// right to left as `... alpha_2 alpha_1`).
    pub arrows: Vec<ArrowIdx>,
    pub grading: i64,
}

impl Thread {
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> VertexIdx {
        self.slots[0].vertex
    }

    pub fn target(&self) -> VertexIdx {
        self.slots[self.slots.len() - 1].vertex
    }

    /// Right-to-left word such as `c.b.a`, or `e4` for the idempotent at
    /// vertex `4`.
    pub fn label(&self, alg: &GradedGentleAlgebra) -> String {
        if self.is_trivial() {
            format!("e{}", alg.quiver().vertex_name(self.slots[0].vertex))
        } else {
            path_label(alg, &self.arrows)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclePath {
    pub kind: ThreadKind,
    pub arrows: Vec<ArrowIdx>,
    pub slots: Vec<Slot>,
    pub winding: i64,
}

impl CyclePath {
    pub fn label(&self, alg: &GradedGentleAlgebra) -> String {
        path_label(alg, &self.arrows)
    }
}

fn path_label(alg: &GradedGentleAlgebra, arrows: &[ArrowIdx]) -> String {
    arrows
        .iter()
        .rev()
        .map(|&a| alg.quiver().arrow(a).name.as_str())
        .collect::<Vec<_>>()
        .join(".")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComponentType {
    /// Alternating cycle of forbidden and permitted threads.
    I,
    /// A permitted cycle.
    II,
    /// A forbidden cycle.
    IIPrime,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryComponent {
    pub ty: ComponentType,
    /// Forbidden threads `f_1, ..., f_n` (type I only).
    pub forbidden: Vec<usize>,
    /// Permitted threads `p_1, ..., p_n`, `p_i` starting where `f_i` starts.
    pub permitted: Vec<usize>,
    /// Index into the permitted or forbidden cycle list (types II / II').
    pub cycle: Option<usize>,
    pub stops: usize,
    pub winding: i64,
}

/// AAG invariant: sorted multiset of pairs `(n, n - w)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AagInvariant(pub Vec<(i64, i64)>);

impl AagInvariant {
    pub fn from_pairs(mut pairs: Vec<(i64, i64)>) -> Self {
        pairs.sort_unstable();
        AagInvariant(pairs)
    }

    pub fn pairs(&self) -> &[(i64, i64)] {
        &self.0
    }

    /// `sum (n_i - m_i + 2)`, which equals `4 - 4g` for smooth algebras.
    pub fn genus_sum(&self) -> i64 {
        self.0.iter().map(|&(n, m)| n - m + 2).sum()
    }
}

/// Threads and cycles of both kinds for one algebra.
#[derive(Clone, Debug)]
pub struct ThreadSystem {
    ports: Vec<VertexPorts>,
    arrow_in_port: Vec<usize>,
    arrow_out_port: Vec<usize>,
    forbidden: Vec<Thread>,
    permitted: Vec<Thread>,
    forbidden_cycles: Vec<CyclePath>,
    permitted_cycles: Vec<CyclePath>,
    /// For each slot index, the thread (`Ok`) or cycle (`Err`) through it,
    /// and the position along it.
    forbidden_at: Vec<(Result<usize, usize>, usize)>,
    permitted_at: Vec<(Result<usize, usize>, usize)>,
}

impl ThreadSystem {
    pub fn new(alg: &GradedGentleAlgebra) -> Self {
        let q = alg.quiver();
        let n = q.vertex_count();
        let mut arrow_in_port = vec![0; q.arrow_count()];
        let mut arrow_out_port = vec![0; q.arrow_count()];
        let mut ports = Vec::with_capacity(n);
        for v in 0..n {
            let mut ins = [None; 2];
            let mut outs = [None; 2];
            for (i, a) in q.incoming(v).into_iter().enumerate() {
                ins[i] = Some(a);
                arrow_in_port[a] = i;
            }
            for (j, a) in q.outgoing(v).into_iter().enumerate() {
                outs[j] = Some(a);
                arrow_out_port[a] = j;
            }
            let forbidden_out = pair_ports(alg, &ins, &outs);
            ports.push(VertexPorts {
                ins,
                outs,
                forbidden_out,
            });
        }

        let mut sys = ThreadSystem {
            ports,
            arrow_in_port,
            arrow_out_port,
            forbidden: Vec::new(),
            permitted: Vec::new(),
            forbidden_cycles: Vec::new(),
            permitted_cycles: Vec::new(),
            forbidden_at: Vec::new(),
            permitted_at: Vec::new(),
        };
        for kind in [ThreadKind::Forbidden, ThreadKind::Permitted] {
            let (threads, cycles, at) = sys.trace(alg, kind);
            match kind {
                ThreadKind::Forbidden => {
                    sys.forbidden = threads;
                    sys.forbidden_cycles = cycles;
                    sys.forbidden_at = at;
                }
                ThreadKind::Permitted => {
                    sys.permitted = threads;
                    sys.permitted_cycles = cycles;
                    sys.permitted_at = at;
                }
            }
        }
        sys
    }

    fn out_port(&self, kind: ThreadKind, slot: Slot) -> usize {
        let f = self.ports[slot.vertex].forbidden_out[slot.port];
        match kind {
            ThreadKind::Forbidden => f,
            ThreadKind::Permitted => 1 - f,
        }
    }

    /// The slot of `kind` at `v` whose outgoing port is `out`.
    fn slot_with_out(&self, kind: ThreadKind, v: VertexIdx, out: usize) -> Slot {
        let port = (0..2)
            .find(|&i| self.out_port(kind, Slot { vertex: v, port: i }) == out)
            .expect("pairing is a bijection");
        Slot { vertex: v, port }
    }

    fn next(&self, alg: &GradedGentleAlgebra, kind: ThreadKind, slot: Slot) -> Option<(ArrowIdx, Slot)> {
        let beta = self.ports[slot.vertex].outs[self.out_port(kind, slot)]?;
        let t = alg.quiver().arrow(beta).target;
        Some((
            beta,
            Slot {
                vertex: t,
                port: self.arrow_in_port[beta],
            },
        ))
    }

    #[allow(clippy::type_complexity)]
    fn trace(
        &self,
        alg: &GradedGentleAlgebra,
        kind: ThreadKind,
    ) -> (Vec<Thread>, Vec<CyclePath>, Vec<(Result<usize, usize>, usize)>) {
        let n = self.ports.len();
        let mut at: Vec<Option<(Result<usize, usize>, usize)>> = vec![None; 2 * n];
        let mut threads = Vec::new();
        for v in 0..n {
            for port in 0..2 {
                if self.ports[v].ins[port].is_some() {
                    continue;
                }
                let mut slot = Slot { vertex: v, port };
                let mut slots = vec![slot];
                let mut arrows = Vec::new();
                while let Some((beta, next)) = self.next(alg, kind, slot) {
                    arrows.push(beta);
                    slots.push(next);
                    slot = next;
                }
                for (pos, s) in slots.iter().enumerate() {
                    at[s.index()] = Some((Ok(threads.len()), pos));
                }
                let sum: i64 = arrows.iter().map(|&a| alg.degree(a)).sum();
                let grading = match kind {
                    // |f| = sum - (n - 2) with n = number of vertices visited
                    ThreadKind::Forbidden => sum - (slots.len() as i64 - 2),
                    ThreadKind::Permitted => -sum,
                };
                threads.push(Thread {
                    kind,
                    slots,
                    arrows,
                    grading,
                });
            }
        }
        let mut cycles = Vec::new();
        for start in 0..2 * n {
            if at[start].is_some() {
                continue;
            }
            let mut slot = Slot::from_index(start);
            let mut slots = Vec::new();
            let mut arrows = Vec::new();
            loop {
                slots.push(slot);
                let (beta, next) = self
                    .next(alg, kind, slot)
                    .expect("slots off every thread lie on cycles");
                arrows.push(beta);
                slot = next;
                if slot.index() == start {
                    break;
                }
            }
            for (pos, s) in slots.iter().enumerate() {
                at[s.index()] = Some((Err(cycles.len()), pos));
            }
            let sum: i64 = arrows.iter().map(|&a| alg.degree(a)).sum();
            let winding = match kind {
                ThreadKind::Forbidden => sum - arrows.len() as i64,
                ThreadKind::Permitted => -sum,
            };
            cycles.push(CyclePath {
                kind,
                arrows,
                slots,
                winding,
            });
        }
        let at = at.into_iter().map(|x| x.expect("every slot covered")).collect();
        (threads, cycles, at)
    }

    pub fn forbidden_threads(&self) -> &[Thread] {
        &self.forbidden
    }

    pub fn permitted_threads(&self) -> &[Thread] {
        &self.permitted
    }

    pub fn forbidden_cycles(&self) -> &[CyclePath] {
        &self.forbidden_cycles
    }

    pub fn permitted_cycles(&self) -> &[CyclePath] {
        &self.permitted_cycles
    }

    pub fn threads(&self, kind: ThreadKind) -> &[Thread] {
        match kind {
            ThreadKind::Forbidden => &self.forbidden,
            ThreadKind::Permitted => &self.permitted,
        }
    }

    pub fn cycles(&self, kind: ThreadKind) -> &[CyclePath] {
        match kind {
            ThreadKind::Forbidden => &self.forbidden_cycles,
            ThreadKind::Permitted => &self.permitted_cycles,
        }
    }

    /// Thread (`Ok`) or cycle (`Err`) of `kind` through `slot`, with the
    /// position of the slot along it.
    pub fn occupant(&self, kind: ThreadKind, slot: Slot) -> (Result<usize, usize>, usize) {
        match kind {
            ThreadKind::Forbidden => self.forbidden_at[slot.index()],
            ThreadKind::Permitted => self.permitted_at[slot.index()],
        }
    }

    /// Outgoing port used by `arrow` at its source.
    pub fn out_port_of(&self, arrow: ArrowIdx) -> usize {
        self.arrow_out_port[arrow]
    }

    pub fn in_port_of(&self, arrow: ArrowIdx) -> usize {
        self.arrow_in_port[arrow]
    }

    pub fn is_smooth(&self) -> bool {
        self.forbidden_cycles.is_empty()
    }

    pub fn is_proper(&self) -> bool {
        self.permitted_cycles.is_empty()
    }

    /// A forbidden cycle, if one exists.
    pub fn smoothness_witness(&self) -> Option<&CyclePath> {
        self.forbidden_cycles.first()
    }

    /// A permitted cycle, if one exists.
    pub fn properness_witness(&self) -> Option<&CyclePath> {
        self.permitted_cycles.first()
    }

    /// Partition of all threads and cycles into combinatorial boundary
    /// components.
    ///
    /// Starting from a forbidden thread `f`, its empty incoming port is
    /// shared with exactly one permitted thread `p`, which therefore starts
    /// at `s(f)` with a different first arrow; the empty outgoing port at the
    /// end of `p` is shared with exactly one forbidden thread ending at
    /// `t(p)` with a different last arrow. Following these shared ports
    /// yields the alternating sequences with condition (star) built in.
    pub fn boundary_components(&self) -> Vec<BoundaryComponent> {
        let mut out = Vec::new();
        let mut seen = vec![false; self.forbidden.len()];
        for f0 in 0..self.forbidden.len() {
            if seen[f0] {
                continue;
            }
            let (mut fs, mut ps) = (Vec::new(), Vec::new());
            let mut f = f0;
            loop {
                seen[f] = true;
                fs.push(f);
                let start = self.forbidden[f].slots[0];
                // permitted slot sharing the empty incoming port
                let p = match self.permitted_at[start.index()] {
                    (Ok(p), 0) => p,
                    other => unreachable!("empty in-port must start a permitted thread: {other:?}"),
                };
                ps.push(p);
                let end = *self.permitted[p].slots.last().expect("nonempty");
                let empty_out = self.out_port(ThreadKind::Permitted, end);
                let fslot = self.slot_with_out(ThreadKind::Forbidden, end.vertex, empty_out);
                f = match self.forbidden_at[fslot.index()] {
                    (Ok(g), pos) if pos + 1 == self.forbidden[g].slots.len() => g,
                    other => unreachable!("empty out-port must end a forbidden thread: {other:?}"),
                };
                if f == f0 {
                    break;
                }
            }
            let winding = fs.iter().map(|&f| self.forbidden[f].grading).sum::<i64>()
                + ps.iter().map(|&p| self.permitted[p].grading).sum::<i64>();
            out.push(BoundaryComponent {
                ty: ComponentType::I,
                stops: fs.len(),
                forbidden: fs,
                permitted: ps,
                cycle: None,
                winding,
            });
        }
        for (i, c) in self.permitted_cycles.iter().enumerate() {
            out.push(BoundaryComponent {
                ty: ComponentType::II,
                forbidden: vec![],
                permitted: vec![],
                cycle: Some(i),
                stops: 0,
                winding: c.winding,
            });
        }
        for (i, c) in self.forbidden_cycles.iter().enumerate() {
            out.push(BoundaryComponent {
                ty: ComponentType::IIPrime,
                forbidden: vec![],
                permitted: vec![],
                cycle: Some(i),
                stops: 0,
                winding: c.winding,
            });
        }
        out
    }

    pub fn aag_invariants(&self) -> AagInvariant {
        AagInvariant::from_pairs(
            self.boundary_components()
                .iter()
                .map(|b| (b.stops as i64, b.stops as i64 - b.winding))
                .collect(),
        )
    }
}

/// Forbidden pairing at one vertex: the outgoing partner of each incoming
/// port. Relations force pairs, non-relations among real arrows force the
/// complementary pair, and a vertex without constraints uses the identity.
fn pair_ports(
    alg: &GradedGentleAlgebra,
    ins: &[Option<ArrowIdx>; 2],
    outs: &[Option<ArrowIdx>; 2],
) -> [usize; 2] {
    let mut forced: Option<[usize; 2]> = None;
    for i in 0..2 {
        for j in 0..2 {
            if let (Some(alpha), Some(beta)) = (ins[i], outs[j]) {
                let m = if alg.is_relation(beta, alpha) {
                    if j == i {
                        [0, 1]
                    } else {
                        [1, 0]
                    }
                } else if j == i {
                    [1, 0]
                } else {
                    [0, 1]
                };
                if let Some(prev) = forced {
                    debug_assert_eq!(prev, m, "gentle axioms guarantee a consistent pairing");
                }
                forced = Some(m);
            }
        }
    }
    forced.unwrap_or([0, 1])
}

/// Convenience wrapper.
pub fn aag_invariants(alg: &GradedGentleAlgebra) -> AagInvariant {
    ThreadSystem::new(alg).aag_invariants()
}

pub fn boundary_components(alg: &GradedGentleAlgebra) -> Vec<BoundaryComponent> {
    ThreadSystem::new(alg).boundary_components()
}

/// Number of incidences of each vertex with threads and cycles of `kind`,
/// counted with multiplicity.
pub fn incidence_counts(sys: &ThreadSystem, kind: ThreadKind, vertices: usize) -> Vec<usize> {
    let mut counts = vec![0; vertices];
    for t in sys.threads(kind) {
        for s in &t.slots {
            counts[s.vertex] += 1;
        }
    }
    for c in sys.cycles(kind) {
        for s in &c.slots {
            counts[s.vertex] += 1;
        }
    }
    counts
}

/// Labels of all threads of `kind`, sorted.
pub fn thread_labels(alg: &GradedGentleAlgebra, sys: &ThreadSystem, kind: ThreadKind) -> Vec<String> {
    let mut v: Vec<String> = sys.threads(kind).iter().map(|t| t.label(alg)).collect();
    v.sort();
    v
}

/// Multiset of `(stops, winding)` over components, sorted.
pub fn component_signature(components: &[BoundaryComponent]) -> Vec<(usize, i64)> {
    let mut m: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    for c in components {
        *m.entry((c.stops, c.winding)).or_default() += 1;
    }
    m.into_iter()
        .flat_map(|(k, n)| std::iter::repeat_n(k, n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{validate_gentle, RawAlgebra, RawArrow};

    fn alg(vertices: &[&str], arrows: &[(&str, &str, &str, i64)], rels: &[(&str, &str)]) -> GradedGentleAlgebra {
        validate_gentle(&RawAlgebra {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|&(n, s, t, d)| RawArrow {
                    name: n.into(),
                    source: s.into(),
                    target: t.into(),
                    degree: d,
                })
                .collect(),
            relations: rels.iter().map(|&(b, a)| (b.into(), a.into())).collect(),
        })
        .unwrap()
    }

    fn loop_alg(relation: bool, d: i64) -> GradedGentleAlgebra {
        let rels: &[(&str, &str)] = if relation { &[("l", "l")] } else { &[] };
        alg(&["v"], &[("l", "v", "v", d)], rels)
    }

    #[test]
    fn single_vertex_has_two_trivial_threads_of_each_kind() {
        let a = alg(&["v"], &[], &[]);
        let sys = ThreadSystem::new(&a);
        assert_eq!(thread_labels(&a, &sys, ThreadKind::Forbidden), ["ev", "ev"]);
        assert_eq!(thread_labels(&a, &sys, ThreadKind::Permitted), ["ev", "ev"]);
        let comps = sys.boundary_components();
        assert_eq!(comps.len(), 1);
        assert_eq!((comps[0].stops, comps[0].winding), (2, 2));
        assert!(sys.is_proper() && sys.is_smooth());
    }

    #[test]
    fn loop_in_ideal_is_a_forbidden_cycle() {
        let a = loop_alg(true, 0);
        let sys = ThreadSystem::new(&a);
        assert!(!sys.is_smooth());
        assert_eq!(sys.smoothness_witness().unwrap().arrows, vec![0]);
        assert!(sys.is_proper());
        let types: Vec<_> = sys.boundary_components().iter().map(|c| c.ty).collect();
        assert!(types.contains(&ComponentType::IIPrime));
    }

    #[test]
    fn free_loop_gives_annulus_components() {
        let a = loop_alg(false, 3);
        let sys = ThreadSystem::new(&a);
        assert!(sys.is_smooth());
        assert!(!sys.is_proper());
        assert_eq!(sys.properness_witness().unwrap().arrows, vec![0]);
        let comps = sys.boundary_components();
        let mut sig: Vec<_> = comps.iter().map(|c| (c.ty, c.stops, c.winding)).collect();
        sig.sort_by_key(|x| x.1);
        assert_eq!(sig, vec![(ComponentType::II, 0, -3), (ComponentType::I, 1, 3)]);
        let c = comps.iter().find(|c| c.ty == ComponentType::I).unwrap();
        assert_eq!(sys.forbidden_threads()[c.forbidden[0]].label(&a), "l");
        assert_eq!(sys.permitted_threads()[c.permitted[0]].label(&a), "ev");
    }

    #[test]
    fn a2_aag() {
        let a = alg(&["1", "2"], &[("x", "1", "2", 0)], &[]);
        let aag = aag_invariants(&a);
        assert_eq!(aag.pairs(), &[(3, 1)]);
        assert_eq!(aag.genus_sum(), 4);
    }

    #[test]
    fn gradings_of_trivial_threads() {
        let a = alg(&["1", "2"], &[("x", "1", "2", 5)], &[]);
        let sys = ThreadSystem::new(&a);
        for t in sys.forbidden_threads() {
            if t.is_trivial() {
                assert_eq!(t.grading, 1);
            } else {
                assert_eq!(t.grading, 5);
            }
        }
        for t in sys.permitted_threads() {
            assert_eq!(t.grading, if t.is_trivial() { 0 } else { -5 });
        }
    }
}
