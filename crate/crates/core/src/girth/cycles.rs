use std::collections::hash_map::Entry as MapEntry;
use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;

use super::{check_cap, CycleWitness};
use crate::error::Result;
use crate::matrix::ExponentMatrix;

/// Finite entries of an exponent matrix viewed as edges of the base graph
/// (block rows and block columns as vertices). Edge ids follow row-major
/// order, so comparing ids compares positions lexicographically.
struct BaseGraph {
    edges: Vec<Edge>,
    by_row: Vec<Vec<u32>>,
    by_col: Vec<Vec<u32>>,
    lift: u32,
}

#[derive(Clone, Copy)]
struct Edge {
    row: u32,
    col: u32,
    shift: u32,
}

impl BaseGraph {
    fn new(e: &ExponentMatrix) -> Self {
        let mut edges = Vec::new();
        let mut by_row = vec![Vec::new(); e.rows()];
        let mut by_col = vec![Vec::new(); e.cols()];
        for (i, j) in e.finite_positions() {
            let id = edges.len() as u32;
            edges.push(Edge {
                row: i as u32,
                col: j as u32,
                shift: e.get(i, j).expect("finite position"),
            });
            by_row[i].push(id);
            by_col[j].push(id);
        }
        Self {
            edges,
            by_row,
            by_col,
            lift: e.lift(),
        }
    }
}

/// A half-walk state: the last edge used and the running alternating sum.
#[derive(Clone, Copy)]
struct State {
    edge: u32,
    sum: u32,
    parent: u32,
}

const ROOT: u32 = u32::MAX;

/// Layers of deduplicated half-walk states leaving the anchor's row.
struct HalfWalks {
    layers: Vec<Vec<State>>,
}

impl HalfWalks {
    fn new(first: Vec<State>) -> Self {
        Self {
            layers: vec![first],
        }
    }

    /// Extends by one step. Steps alternate row-to-column (`+shift`) and
    /// column-to-row (`-shift`); the new step must differ from the previous
    /// edge and may only use edges at or after the anchor.
    fn extend(&mut self, g: &BaseGraph, anchor: u32) {
        let depth = self.layers.len(); // number of steps taken so far
        let at_column = depth % 2 == 1;
        let p = g.lift;
        let prev = self.layers.last().expect("non-empty");
        let mut seen: HashSet<(u32, u32)> = HashSet::with_capacity(prev.len() * 4);
        let mut next = Vec::new();
        for (idx, st) in prev.iter().enumerate() {
            let last = g.edges[st.edge as usize];
            let incident = if at_column {
                &g.by_col[last.col as usize]
            } else {
                &g.by_row[last.row as usize]
            };
            for &f in incident {
                if f == st.edge || f < anchor {
                    continue;
                }
                let shift = g.edges[f as usize].shift;
                let sum = if at_column {
                    (st.sum + p - shift) % p
                } else {
                    (st.sum + shift) % p
                };
                if seen.insert((f, sum)) {
                    next.push(State {
                        edge: f,
                        sum,
                        parent: idx as u32,
                    });
                }
            }
        }
        self.layers.push(next);
    }

    fn trace(&self, depth: usize, mut idx: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(depth);
        for layer in self.layers[..depth].iter().rev() {
            let st = layer[idx as usize];
            out.push(st.edge);
            idx = st.parent;
        }
        debug_assert_eq!(idx, ROOT);
        out.reverse();
        out
    }
}

fn end_vertex(g: &BaseGraph, edge: u32, steps: usize) -> u32 {
    let e = g.edges[edge as usize];
    if steps % 2 == 1 {
        e.col
    } else {
        e.row
    }
}

/// Shortest zero-sum closed walk whose lexicographically smallest position
/// is `anchor`, traversed from the anchor's row, of length at most
/// `limit`.
fn search_anchor(g: &BaseGraph, anchor: u32, limit: &AtomicU32) -> Option<Vec<u32>> {
    let a = g.edges[anchor as usize];
    let mut forward = HalfWalks::new(vec![State {
        edge: anchor,
        sum: a.shift,
        parent: ROOT,
    }]);
    let mut backward = HalfWalks::new(
        g.by_row[a.row as usize]
            .iter()
            .filter(|&&f| f > anchor)
            .map(|&f| State {
                edge: f,
                sum: g.edges[f as usize].shift,
                parent: ROOT,
            })
            .collect(),
    );
    if backward.layers[0].is_empty() {
        return None;
    }
    let mut half = 1;
    loop {
        half += 1;
        if 2 * half as u32 > limit.load(Ordering::Relaxed) {
            return None;
        }
        forward.extend(g, anchor);
        backward.extend(g, anchor);
        let fwd = &forward.layers[half - 1];
        let bwd = &backward.layers[half - 1];
        if fwd.is_empty() || bwd.is_empty() {
            return None;
        }
        // (end vertex, sum) -> up to two backward states with distinct last edges
        let mut meet: HashMap<(u32, u32), (u32, Option<u32>)> = HashMap::with_capacity(bwd.len());
        for (idx, st) in bwd.iter().enumerate() {
            let key = (end_vertex(g, st.edge, half), st.sum);
            match meet.entry(key) {
                MapEntry::Vacant(v) => {
                    v.insert((idx as u32, None));
                }
                MapEntry::Occupied(mut o) => {
                    let slot = o.get_mut();
                    if slot.1.is_none() && bwd[slot.0 as usize].edge != st.edge {
                        slot.1 = Some(idx as u32);
                    }
                }
            }
        }
        for (fidx, st) in fwd.iter().enumerate() {
            let key = (end_vertex(g, st.edge, half), st.sum);
            let Some(&(b0, b1)) = meet.get(&key) else {
                continue;
            };
            let bidx = if bwd[b0 as usize].edge != st.edge {
                b0
            } else if let Some(b1) = b1 {
                b1
            } else {
                continue;
            };
            let mut walk = forward.trace(half, fidx as u32);
            let mut back = backward.trace(half, bidx);
            back.reverse();
            walk.extend(back);
            limit.fetch_min(walk.len() as u32, Ordering::Relaxed);
            return Some(walk);
        }
    }
}

/// Shortest cycle of `H(E, P)` of length at most `cap`, as a witness in
/// exponent-matrix coordinates. Anchors are searched in parallel; the result
/// is the shortest cycle with the smallest anchor, independent of thread
/// count.
pub fn shortest_cycle(e: &ExponentMatrix, cap: u32) -> Result<Option<CycleWitness>> {
    check_cap(cap)?;
    let g = BaseGraph::new(e);
    let limit = AtomicU32::new(cap);
    let found: Vec<(usize, u32, Vec<u32>)> = (0..g.edges.len() as u32)
        .into_par_iter()
        .filter_map(|anchor| {
            search_anchor(&g, anchor, &limit).map(|w| (w.len(), anchor, w))
        })
        .collect();
    let best = found.into_iter().min_by_key(|(len, anchor, _)| (*len, *anchor));
    Ok(best.map(|(_, _, walk)| {
        let mut sum = 0i64;
        let positions = walk
            .iter()
            .enumerate()
            .map(|(k, &id)| {
                let edge = g.edges[id as usize];
                let v = edge.shift as i64;
                sum += if k % 2 == 0 { v } else { -v };
                (edge.row as usize, edge.col as usize)
            })
            .collect();
        CycleWitness {
            positions,
            alternating_sum: sum,
        }
    }))
}
