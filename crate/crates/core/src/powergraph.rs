//! Power graphs and their relatives, on packed bit-matrix adjacency:
//! the directed and undirected power graph, the reduced power graph, the
//! enhanced power graph, the Gruenberg–Kegel (prime) graph, the edge-count
//! formula, and the restriction to elements of small composite order.

use crate::groups::FiniteGroup;
use crate::numtheory::{big_omega, totient, trial_factor_u64};

/// Undirected graph with packed bit rows. Vertices may carry labels (group
/// element indices, or primes for the Gruenberg–Kegel graph).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    labels: Option<Vec<u64>>,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
            labels: None,
        }
    }

    pub fn with_labels(n: usize, labels: Vec<u64>) -> Graph {
        assert_eq!(labels.len(), n);
        let mut g = Graph::new(n);
        g.labels = Some(labels);
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        assert!(i != j, "no loops");
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
        self.bits[j * self.words + i / 64] |= 1 << (i % 64);
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> u64 {
        let total: u64 = self.bits.iter().map(|w| w.count_ones() as u64).sum();
        total / 2
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.row(i).iter().enumerate() {
            let mut word = word;
            while word != 0 {
                let b = word.trailing_zeros() as usize;
                out.push(w * 64 + b);
                word &= word - 1;
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == (self.n as u64 * (self.n as u64 - 1)) / 2
    }

    /// Connected with every degree even (the Euler-circuit condition).
    pub fn is_eulerian(&self) -> bool {
        self.is_connected() && (0..self.n).all(|i| self.degree(i) % 2 == 0)
    }

    /// True iff every edge of `self` is an edge of `other` (same vertex set).
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        assert_eq!(self.n, other.n);
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & !b == 0)
    }

    /// DOT output; `graph G { ... }`. Vertices with labels get label attrs.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        if let Some(labels) = &self.labels {
            for (i, l) in labels.iter().enumerate() {
                out.push_str(&format!("  {i} [label=\"{l}\"];\n"));
            }
        }
        for i in 0..self.n {
            for j in self.neighbors(i) {
                if j > i {
                    out.push_str(&format!("  {i} -- {j};\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Line format: vertex count, then one hex string per adjacency row
    /// (column j lives in hex digit j/4, most significant bit first).
    pub fn to_hex(&self) -> String {
        let digits = self.n.div_ceil(4);
        let mut out = format!("{}\n", self.n);
        for i in 0..self.n {
            let row = self.row(i);
            let mut line = String::with_capacity(digits);
            for d in 0..digits {
                let mut nibble = 0u8;
                for b in 0..4 {
                    let j = d * 4 + b;
                    if j < self.n && row[j / 64] >> (j % 64) & 1 == 1 {
                        nibble |= 1 << (3 - b);
                    }
                }
                line.push(char::from_digit(nibble as u32, 16).unwrap());
            }
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

/// Directed graph on packed bit rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Digraph {
    pub fn new(n: usize) -> Digraph {
        let words = n.div_ceil(64);
        Digraph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn add_arc(&mut self, from: usize, to: usize) {
        assert!(from != to, "no loops");
        self.bits[from * self.words + to / 64] |= 1 << (to % 64);
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        from != to && self.bits[from * self.words + to / 64] >> (to % 64) & 1 == 1
    }

    pub fn arc_count(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn out_neighbors(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.bits[i * self.words..(i + 1) * self.words]
            .iter()
            .enumerate()
        {
            let mut word = word;
            while word != 0 {
                let b = word.trailing_zeros() as usize;
                out.push(w * 64 + b);
                word &= word - 1;
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        for i in 0..self.n {
            for j in self.out_neighbors(i) {
                out.push_str(&format!("  {i} -> {j};\n"));
            }
        }
        out.push_str("}\n");
        out
    }

    /// Same row layout as [`Graph::to_hex`], rows being out-arc vectors.
    pub fn to_hex(&self) -> String {
        let digits = self.n.div_ceil(4);
        let mut out = format!("{}\n", self.n);
        for i in 0..self.n {
            let row = &self.bits[i * self.words..(i + 1) * self.words];
            let mut line = String::with_capacity(digits);
            for d in 0..digits {
                let mut nibble = 0u8;
                for b in 0..4 {
                    let j = d * 4 + b;
                    if j < self.n && row[j / 64] >> (j % 64) & 1 == 1 {
                        nibble |= 1 << (3 - b);
                    }
                }
                line.push(char::from_digit(nibble as u32, 16).unwrap());
            }
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    /// Symmetrization.
    pub fn to_undirected(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for i in 0..self.n {
            for j in self.out_neighbors(i) {
                g.add_edge(i, j);
            }
        }
        g
    }
}

/// Arc x -> y iff x != y and y is a power of x; built by walking each
/// element's power cycle.
pub fn directed_power_graph(g: &FiniteGroup) -> Digraph {
    let n = g.order() as usize;
    let mut d = Digraph::new(n);
    for x in 0..n as u32 {
        let mut cur = g.mul(x, x);
        while cur != x {
            d.add_arc(x as usize, cur as usize);
            cur = g.mul(cur, x);
        }
    }
    d
}

/// The undirected power graph P(G): x ~ y iff one is a power of the other.
pub fn power_graph(g: &FiniteGroup) -> Graph {
    let n = g.order() as usize;
    let mut pg = Graph::new(n);
    for x in 0..n as u32 {
        let mut cur = g.mul(x, x);
        while cur != x {
            pg.add_edge(x as usize, cur as usize);
            cur = g.mul(cur, x);
        }
    }
    pg
}

/// Graph variants derived from the power graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivedKind {
    /// P(G) minus the identity vertex.
    Reduced,
    /// x ~ y iff both lie in a common cyclic subgroup.
    Enhanced,
    /// Vertices are the primes dividing |G|; p ~ q iff some element order is
    /// divisible by pq.
    Gk,
}

pub fn derived_graph(g: &FiniteGroup, kind: DerivedKind) -> Graph {
    match kind {
        DerivedKind::Reduced => {
            let pg = power_graph(g);
            let n = g.order() as usize;
            let labels: Vec<u64> = (1..n as u64).collect();
            let mut out = Graph::with_labels(n - 1, labels);
            for i in 1..n {
                for j in pg.neighbors(i) {
                    if j > i {
                        out.add_edge(i - 1, j - 1);
                    }
                }
            }
            out
        }
        DerivedKind::Enhanced => {
            let n = g.order() as usize;
            let mut out = Graph::new(n);
            for sub in &g.maximal_cyclic_subgroups().subgroups {
                for (ai, &a) in sub.iter().enumerate() {
                    for &b in &sub[ai + 1..] {
                        out.add_edge(a as usize, b as usize);
                    }
                }
            }
            out
        }
        DerivedKind::Gk => {
            let order_primes: Vec<u64> = trial_factor_u64(g.order())
                .expect("group order is small")
                .into_iter()
                .map(|(p, _)| p)
                .collect();
            let index_of = |p: u64| order_primes.iter().position(|&x| x == p).unwrap();
            let mut out = Graph::with_labels(order_primes.len(), order_primes.clone());
            let mut seen_orders = std::collections::HashSet::new();
            for x in 0..g.order() as u32 {
                let o = g.element_order(x);
                if !seen_orders.insert(o) {
                    continue;
                }
                let ps: Vec<u64> = trial_factor_u64(o)
                    .expect("element order is small")
                    .into_iter()
                    .map(|(p, _)| p)
                    .collect();
                for (i, &p) in ps.iter().enumerate() {
                    for &q in &ps[i + 1..] {
                        out.add_edge(index_of(p), index_of(q));
                    }
                }
            }
            out
        }
    }
}

/// The closed-form edge count of P(G):
/// `|E| = (1/2) * sum over a in G of (2 o(a) - phi(o(a)) - 1)`.
pub fn edge_count_formula(g: &FiniteGroup) -> u64 {
    let sum: u64 = g
        .orders()
        .iter()
        .map(|&o| 2 * o - totient(o).expect("element order factors by trial division") - 1)
        .sum();
    sum / 2
}

/// Induced subgraph of P(G) on the non-identity elements whose order is prime
/// or a product of two (not necessarily distinct) primes. Vertex labels map
/// back to group element indices.
pub fn p2_restriction(g: &FiniteGroup) -> Graph {
    let n = g.order() as usize;
    let orders = g.orders();
    let qualifies: Vec<bool> = (0..n)
        .map(|x| {
            x != 0 && matches!(big_omega(orders[x]).expect("element order is small"), 1 | 2)
        })
        .collect();
    let vertices: Vec<u32> = (0..n as u32).filter(|&x| qualifies[x as usize]).collect();
    let mut position = vec![usize::MAX; n];
    for (i, &v) in vertices.iter().enumerate() {
        position[v as usize] = i;
    }
    let labels: Vec<u64> = vertices.iter().map(|&v| v as u64).collect();
    let mut out = Graph::with_labels(vertices.len(), labels);
    for &x in &vertices {
        let mut cur = g.mul(x, x);
        while cur != x {
            if qualifies[cur as usize] {
                out.add_edge(position[x as usize], position[cur as usize]);
            }
            cur = g.mul(cur, x);
        }
    }
    out
}
