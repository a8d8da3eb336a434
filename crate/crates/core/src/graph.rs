//! Small directed-graph helpers over dense `usize` node ids.
//!
//! Most questions about quadratic monomial algebras reduce to walks in a
//! "letter graph": nodes are arrows, and an edge `a -> b` means the word may
//! continue from `a` to `b` (the pair is in the relation set, outside it, or
//! in some subset of it, depending on the question).

use std::collections::VecDeque;

pub(crate) struct LetterGraph {
    succ: Vec<Vec<usize>>,
}

impl LetterGraph {
    pub(crate) fn new(nodes: usize) -> Self {
        LetterGraph {
            succ: vec![Vec::new(); nodes],
        }
    }

    pub(crate) fn add_edge(&mut self, from: usize, to: usize) {
        self.succ[from].push(to);
    }

    pub(crate) fn len(&self) -> usize {
        self.succ.len()
    }

    pub(crate) fn successors(&self, node: usize) -> &[usize] {
        &self.succ[node]
    }

    fn reversed(&self) -> LetterGraph {
        let mut rev = LetterGraph::new(self.len());
        for (from, outs) in self.succ.iter().enumerate() {
            for &to in outs {
                rev.add_edge(to, from);
            }
        }
        rev
    }

    pub(crate) fn reachable_from(&self, starts: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::new();
        for s in starts {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &w in &self.succ[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Nodes lying on some walk from a start node to an end node.
    pub(crate) fn useful(
        &self,
        starts: impl IntoIterator<Item = usize>,
        ends: impl IntoIterator<Item = usize>,
    ) -> Vec<bool> {
        let fwd = self.reachable_from(starts);
        let bwd = self.reversed().reachable_from(ends);
        fwd.iter().zip(bwd).map(|(a, b)| *a && b).collect()
    }

    /// Returns a directed cycle (as a node sequence, first node not repeated)
    /// inside the node subset `allowed`, if one exists.
    pub(crate) fn find_cycle(&self, allowed: &[bool]) -> Option<Vec<usize>> {
        const WHITE: u8 = 0;
        const GREY: u8 = 1;
        const BLACK: u8 = 2;
        let mut colour = vec![WHITE; self.len()];
        for root in 0..self.len() {
            if !allowed[root] || colour[root] != WHITE {
                continue;
            }
            // iterative DFS; stack holds (node, next successor index)
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            colour[root] = GREY;
            while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
                if let Some(&w) = self.succ[v].get(*idx) {
                    *idx += 1;
                    if !allowed[w] {
                        continue;
                    }
                    match colour[w] {
                        WHITE => {
                            colour[w] = GREY;
                            stack.push((w, 0));
                        }
                        GREY => {
                            let pos = stack.iter().position(|&(u, _)| u == w).unwrap();
                            return Some(stack[pos..].iter().map(|&(u, _)| u).collect());
                        }
                        _ => {}
                    }
                } else {
                    colour[v] = BLACK;
                    stack.pop();
                }
            }
        }
        None
    }

    /// Shortest walk (by node count) from any start to `target`, inclusive.
    pub(crate) fn shortest_walk(
        &self,
        starts: impl IntoIterator<Item = usize>,
        target: impl Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        let mut prev: Vec<Option<usize>> = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::new();
        for s in starts {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            if target(v) {
                let mut walk = vec![v];
                let mut cur = v;
                while let Some(p) = prev[cur] {
                    walk.push(p);
                    cur = p;
                }
                walk.reverse();
                return Some(walk);
            }
            for &w in &self.succ[v] {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

/// Outcome of a maximum-weight walk search with node weights.
pub(crate) enum MaxWalk {
    /// No walk from a start to an end exists.
    Empty,
    /// Maximum total weight and a walk attaining it.
    Bounded(i64, Vec<usize>),
    /// A positive-weight cycle lies on a start-to-end walk.
    PositiveCycle(Vec<usize>),
}

/// Bellman-Ford over node weights, restricted to nodes on start-to-end walks.
pub(crate) fn max_weight_walk(
    graph: &LetterGraph,
    weight: &[i64],
    starts: &[usize],
    ends: &[usize],
) -> MaxWalk {
    let n = graph.len();
    let useful = graph.useful(starts.iter().copied(), ends.iter().copied());
    let mut is_end = vec![false; n];
    for &e in ends {
        is_end[e] = true;
    }
    let mut best: Vec<Option<i64>> = vec![None; n];
    let mut prev: Vec<Option<usize>> = vec![None; n];
    for &s in starts {
        if useful[s] && best[s].is_none_or(|b| b < weight[s]) {
            best[s] = Some(weight[s]);
            prev[s] = None;
        }
    }
    let mut last_relaxed = None;
    for _round in 0..=n {
        last_relaxed = None;
        for v in 0..n {
            let Some(bv) = best[v] else { continue };
            for &w in graph.successors(v) {
                if !useful[w] {
                    continue;
                }
                let cand = bv + weight[w];
                if best[w].is_none_or(|b| cand > b) {
                    best[w] = Some(cand);
                    prev[w] = Some(v);
                    last_relaxed = Some(w);
                }
            }
        }
        if last_relaxed.is_none() {
            break;
        }
    }
    if let Some(mut v) = last_relaxed {
        // still relaxing after n rounds: walk back into the cycle
        for _ in 0..n {
            v = prev[v].expect("relaxed node has a predecessor");
        }
        let mut cycle = vec![v];
        let mut cur = prev[v].unwrap();
        while cur != v {
            cycle.push(cur);
            cur = prev[cur].unwrap();
        }
        cycle.reverse();
        return MaxWalk::PositiveCycle(cycle);
    }
    let mut top: Option<(i64, usize)> = None;
    for v in 0..n {
        if let (true, Some(b)) = (is_end[v], best[v]) {
            if top.is_none_or(|(t, _)| b > t) {
                top = Some((b, v));
            }
        }
    }
    match top {
        None => MaxWalk::Empty,
        Some((total, end)) => {
            let mut walk = vec![end];
            let mut cur = end;
            while let Some(p) = prev[cur] {
                walk.push(p);
                cur = p;
            }
            walk.reverse();
            MaxWalk::Bounded(total, walk)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_self_loop_cycle() {
        let mut g = LetterGraph::new(2);
        g.add_edge(0, 1);
        g.add_edge(1, 1);
        assert_eq!(g.find_cycle(&[true, true]), Some(vec![1]));
        assert_eq!(g.find_cycle(&[true, false]), None);
    }

    #[test]
    fn max_walk_detects_positive_cycle() {
        let mut g = LetterGraph::new(3);
        g.add_edge(0, 1);
        g.add_edge(1, 0);
        g.add_edge(1, 2);
        match max_weight_walk(&g, &[1, 0, 0], &[0], &[2]) {
            MaxWalk::PositiveCycle(c) => assert_eq!(c.len(), 2),
            _ => panic!("expected a positive cycle"),
        }
        match max_weight_walk(&g, &[-1, 0, 5], &[0], &[2]) {
            MaxWalk::Bounded(w, walk) => {
                assert_eq!(w, 4);
                assert_eq!(walk, vec![0, 1, 2]);
            }
            _ => panic!("expected a bounded walk"),
        }
    }
}
