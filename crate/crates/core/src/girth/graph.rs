use rayon::prelude::*;

use super::{check_cap, GirthResult};
use crate::error::Result;
use crate::matrix::SparseBinaryMatrix;

const UNSEEN: u32 = u32::MAX;

/// Girth of the Tanner graph of `h` by breadth-first search from every
/// vertex, exploring at most `cap / 2` levels.
pub fn girth_graph(h: &SparseBinaryMatrix, cap: u32) -> Result<GirthResult> {
    check_cap(cap)?;
    let checks = h.rows();
    let total = checks + h.cols();
    // vertices: checks first, then variables
    let adjacency: Vec<Vec<u32>> = (0..total)
        .map(|v| {
            if v < checks {
                h.row(v).iter().map(|&c| (checks + c) as u32).collect()
            } else {
                h.col(v - checks).iter().map(|&r| r as u32).collect()
            }
        })
        .collect();

    let best = (0..total)
        .into_par_iter()
        .map_init(
            || Bfs::new(total),
            |bfs, root| bfs.shortest_cycle_through(&adjacency, root as u32, cap),
        )
        .flatten()
        .min();
    Ok(match best {
        Some(value) => GirthResult::Exact { value },
        None => GirthResult::ExceedsCap { cap },
    })
}

struct Bfs {
    dist: Vec<u32>,
    parent: Vec<u32>,
    touched: Vec<u32>,
}

impl Bfs {
    fn new(n: usize) -> Self {
        Self {
            dist: vec![UNSEEN; n],
            parent: vec![UNSEEN; n],
            touched: Vec::new(),
        }
    }

    /// Length of the shortest cycle closed by the BFS tree from `root`,
    /// if at most `cap`. The minimum over all roots is the girth.
    fn shortest_cycle_through(&mut self, adj: &[Vec<u32>], root: u32, cap: u32) -> Option<u32> {
        for &v in &self.touched {
            self.dist[v as usize] = UNSEEN;
            self.parent[v as usize] = UNSEEN;
        }
        self.touched.clear();

        let mut best: Option<u32> = None;
        self.dist[root as usize] = 0;
        self.touched.push(root);
        let mut head = 0;
        while head < self.touched.len() {
            let u = self.touched[head];
            head += 1;
            let du = self.dist[u as usize];
            let bound = best.unwrap_or(cap + 1);
            // any cycle found from here is at least 2 * du + 1 long
            if 2 * du + 1 >= bound || 2 * du >= cap {
                break;
            }
            for &w in &adj[u as usize] {
                if w == self.parent[u as usize] {
                    continue;
                }
                let dw = self.dist[w as usize];
                if dw == UNSEEN {
                    self.dist[w as usize] = du + 1;
                    self.parent[w as usize] = u;
                    self.touched.push(w);
                } else {
                    let len = du + dw + 1;
                    if len <= cap && best.is_none_or(|b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
        best
    }
}
