//! Cograph recognition with certificates. `decompose` returns a cotree when
//! the graph is a cograph and an induced-P4 witness otherwise; `find_p4` is
//! the independent exhaustive oracle; `cotree_eval` checks a certificate by
//! rebuilding the graph it encodes.

use crate::powergraph::Graph;
use crate::PcgError;

/// Internal cotree node kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    /// Disjoint union of the children.
    Union,
    /// Union plus all edges between different children.
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Leaf(u32),
    Inner { kind: NodeKind, children: Vec<u32> },
}

/// Certificate that a graph is a cograph: leaves are vertex ids, internal
/// nodes alternate Union/Join along every root-to-leaf path and have at
/// least two children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cotree {
    nodes: Vec<Node>,
    root: u32,
}

/// Four vertices inducing a path a - b - c - d (exactly the edges ab, bc, cd).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct P4Witness {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl P4Witness {
    pub fn vertices(&self) -> [u32; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Checks against the bit matrix that the four vertices are distinct and
    /// induce exactly the path edges.
    pub fn validate(&self, g: &Graph) -> bool {
        let [a, b, c, d] = self.vertices().map(|v| v as usize);
        let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
        distinct
            && g.has_edge(a, b)
            && g.has_edge(b, c)
            && g.has_edge(c, d)
            && !g.has_edge(a, c)
            && !g.has_edge(a, d)
            && !g.has_edge(b, d)
    }
}

/// Outcome of cograph recognition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognition {
    Cograph(Cotree),
    NotCograph(P4Witness),
}

impl Recognition {
    pub fn is_cograph(&self) -> bool {
        matches!(self, Recognition::Cograph(_))
    }
}

fn word_count(n: usize) -> usize {
    n.div_ceil(64)
}

fn set_bit(bits: &mut [u64], i: u32) {
    bits[i as usize / 64] |= 1 << (i % 64);
}

fn clear_bit(bits: &mut [u64], i: u32) {
    bits[i as usize / 64] &= !(1 << (i % 64));
}

fn get_bit(bits: &[u64], i: u32) -> bool {
    bits[i as usize / 64] >> (i % 64) & 1 == 1
}

fn iter_bits(bits: &[u64]) -> impl Iterator<Item = u32> + '_ {
    bits.iter().enumerate().flat_map(|(w, &word)| {
        std::iter::successors(Some(word), |&x| Some(x & (x - 1)))
            .take_while(|&x| x != 0)
            .map(move |x| w as u32 * 64 + x.trailing_zeros())
    })
}

/// Connected components of the subgraph induced on `set`, in ascending order
/// of their least vertex; with `complement`, components of the complement
/// graph instead (discovered without materializing it).
fn components(g: &Graph, set: &[u32], complement: bool) -> Vec<Vec<u32>> {
    let words = word_count(g.vertex_count());
    let mut remaining = vec![0u64; words];
    for &v in set {
        set_bit(&mut remaining, v);
    }
    let mut out = Vec::new();
    let mut scratch = vec![0u64; words];
    for &start in set {
        if !get_bit(&remaining, start) {
            continue;
        }
        clear_bit(&mut remaining, start);
        let mut comp = vec![start];
        let mut queue = vec![start];
        while let Some(u) = queue.pop() {
            let row = g.row(u as usize);
            for w in 0..words {
                scratch[w] = if complement {
                    remaining[w] & !row[w]
                } else {
                    remaining[w] & row[w]
                };
            }
            for v in iter_bits(&scratch).collect::<Vec<_>>() {
                clear_bit(&mut remaining, v);
                comp.push(v);
                queue.push(v);
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Lexicographically least induced P4 within `set` (all vertices if `set`
/// covers the graph): scan ordered triples (a, b, c) with ab, bc edges and
/// ac a non-edge, then take the least valid d from a bitset intersection.
fn find_p4_in(g: &Graph, set: &[u32]) -> Option<P4Witness> {
    let words = word_count(g.vertex_count());
    let mut in_set = vec![0u64; words];
    for &v in set {
        set_bit(&mut in_set, v);
    }
    let mut b_cands = vec![0u64; words];
    let mut c_cands = vec![0u64; words];
    let mut d_cands = vec![0u64; words];
    for &a in set {
        let row_a = g.row(a as usize);
        for w in 0..words {
            b_cands[w] = row_a[w] & in_set[w];
        }
        for b in iter_bits(&b_cands).collect::<Vec<_>>() {
            let row_b = g.row(b as usize);
            for w in 0..words {
                c_cands[w] = row_b[w] & in_set[w] & !row_a[w];
            }
            clear_bit(&mut c_cands, a);
            for c in iter_bits(&c_cands).collect::<Vec<_>>() {
                let row_c = g.row(c as usize);
                for w in 0..words {
                    d_cands[w] = row_c[w] & in_set[w] & !row_a[w] & !row_b[w];
                }
                clear_bit(&mut d_cands, b);
                if let Some(d) = iter_bits(&d_cands).next() {
                    return Some(P4Witness { a, b, c, d });
                }
            }
        }
    }
    None
}

/// Exhaustive induced-P4 search over the whole graph; the independent oracle
/// for `decompose`. Returns the lexicographically least witness.
pub fn find_p4(g: &Graph) -> Option<P4Witness> {
    let all: Vec<u32> = (0..g.vertex_count() as u32).collect();
    find_p4_in(g, &all)
}

fn rec(g: &Graph, set: Vec<u32>, nodes: &mut Vec<Node>) -> Result<u32, P4Witness> {
    if set.len() == 1 {
        nodes.push(Node::Leaf(set[0]));
        return Ok(nodes.len() as u32 - 1);
    }
    let comps = components(g, &set, false);
    if comps.len() > 1 {
        let mut children = Vec::with_capacity(comps.len());
        for comp in comps {
            children.push(rec(g, comp, nodes)?);
        }
        nodes.push(Node::Inner {
            kind: NodeKind::Union,
            children,
        });
        return Ok(nodes.len() as u32 - 1);
    }
    let cocomps = components(g, &set, true);
    if cocomps.len() > 1 {
        let mut children = Vec::with_capacity(cocomps.len());
        for comp in cocomps {
            children.push(rec(g, comp, nodes)?);
        }
        nodes.push(Node::Inner {
            kind: NodeKind::Join,
            children,
        });
        return Ok(nodes.len() as u32 - 1);
    }
    // Connected and co-connected on >= 2 vertices: a P4 must exist.
    Err(find_p4_in(g, &set).expect("connected co-connected graph contains an induced P4"))
}

/// Recursive cograph decomposition: disconnected graphs split into a Union,
/// graphs with disconnected complement into a Join, single vertices are
/// leaves, and anything else yields an induced-P4 witness.
pub fn decompose(g: &Graph) -> Recognition {
    assert!(g.vertex_count() >= 1, "decompose requires a vertex");
    let mut nodes = Vec::new();
    let all: Vec<u32> = (0..g.vertex_count() as u32).collect();
    match rec(g, all, &mut nodes) {
        Ok(root) => Recognition::Cograph(Cotree { nodes, root }),
        Err(w) => Recognition::NotCograph(w),
    }
}

impl Cotree {
    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn node(&self, i: u32) -> &Node {
        &self.nodes[i as usize]
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, Node::Leaf(_)))
            .count()
    }

    /// Nested parenthesized text: `U(...)`, `J(...)`, leaves as integers.
    pub fn to_text(&self) -> String {
        fn go(t: &Cotree, i: u32, out: &mut String) {
            match t.node(i) {
                Node::Leaf(v) => out.push_str(&v.to_string()),
                Node::Inner { kind, children } => {
                    out.push(match kind {
                        NodeKind::Union => 'U',
                        NodeKind::Join => 'J',
                    });
                    out.push('(');
                    for (idx, &c) in children.iter().enumerate() {
                        if idx > 0 {
                            out.push(',');
                        }
                        go(t, c, out);
                    }
                    out.push(')');
                }
            }
        }
        let mut out = String::new();
        go(self, self.root, &mut out);
        out
    }
}

/// Rebuilds the graph a cotree encodes, verifying the certificate shape:
/// arity >= 2, strict Union/Join alternation, each node used once, and leaf
/// labels forming exactly 0..n-1.
pub fn cotree_eval(t: &Cotree) -> Result<Graph, PcgError> {
    fn go(
        t: &Cotree,
        i: u32,
        parent: Option<NodeKind>,
        visited: &mut [bool],
        edges: &mut Vec<(u32, u32)>,
    ) -> Result<Vec<u32>, PcgError> {
        if std::mem::replace(&mut visited[i as usize], true) {
            return Err(PcgError::Internal("cotree node used twice".into()));
        }
        match t.node(i) {
            Node::Leaf(v) => Ok(vec![*v]),
            Node::Inner { kind, children } => {
                if children.len() < 2 {
                    return Err(PcgError::Internal(
                        "cotree internal node with fewer than 2 children".into(),
                    ));
                }
                if parent == Some(*kind) {
                    return Err(PcgError::Internal(
                        "cotree labels must alternate along root-to-leaf paths".into(),
                    ));
                }
                let mut leaf_sets = Vec::with_capacity(children.len());
                for &c in children {
                    leaf_sets.push(go(t, c, Some(*kind), visited, edges)?);
                }
                if *kind == NodeKind::Join {
                    for (ai, sa) in leaf_sets.iter().enumerate() {
                        for sb in &leaf_sets[ai + 1..] {
                            for &u in sa {
                                for &v in sb {
                                    edges.push((u, v));
                                }
                            }
                        }
                    }
                }
                Ok(leaf_sets.into_iter().flatten().collect())
            }
        }
    }
    let mut visited = vec![false; t.nodes.len()];
    let mut edges = Vec::new();
    let leaves = go(t, t.root, None, &mut visited, &mut edges)?;
    let n = leaves.len();
    let mut seen = vec![false; n];
    for &v in &leaves {
        if v as usize >= n || std::mem::replace(&mut seen[v as usize], true) {
            return Err(PcgError::Internal(
                "cotree leaves must form exactly the vertex set".into(),
            ));
        }
    }
    let mut g = Graph::new(n);
    for (u, v) in edges {
        g.add_edge(u as usize, v as usize);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 0..n - 1 {
            g.add_edge(i, i + 1);
        }
        g
    }

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    fn complement(g: &Graph) -> Graph {
        let n = g.vertex_count();
        let mut out = Graph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if !g.has_edge(i, j) {
                    out.add_edge(i, j);
                }
            }
        }
        out
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut g = Graph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    #[test]
    fn single_vertex_is_a_leaf() {
        match decompose(&Graph::new(1)) {
            Recognition::Cograph(t) => assert_eq!(t.to_text(), "0"),
            _ => panic!("single vertex must be a cograph"),
        }
    }

    #[test]
    fn p4_is_its_own_witness() {
        match decompose(&path(4)) {
            Recognition::NotCograph(w) => {
                assert_eq!(w.vertices(), [0, 1, 2, 3]);
                assert!(w.validate(&path(4)));
            }
            _ => panic!("P4 is not a cograph"),
        }
        assert_eq!(find_p4(&path(4)), Some(P4Witness { a: 0, b: 1, c: 2, d: 3 }));
    }

    #[test]
    fn four_cycle_decomposes_as_join_of_unions() {
        // C4 = 0-1-2-3-0; complement is the perfect matching {02, 13}.
        let mut c4 = Graph::new(4);
        c4.add_edge(0, 1);
        c4.add_edge(1, 2);
        c4.add_edge(2, 3);
        c4.add_edge(3, 0);
        match decompose(&c4) {
            Recognition::Cograph(t) => {
                assert_eq!(t.to_text(), "J(U(0,2),U(1,3))");
                assert_eq!(cotree_eval(&t).unwrap(), c4);
            }
            _ => panic!("C4 is a cograph"),
        }
    }

    #[test]
    fn complete_graph_has_no_p4() {
        assert_eq!(find_p4(&complete(5)), None);
        assert!(decompose(&complete(5)).is_cograph());
    }

    #[test]
    fn eval_rejects_malformed_cotrees() {
        // Union directly under Union violates alternation.
        let bad = Cotree {
            nodes: vec![
                Node::Leaf(0),
                Node::Leaf(1),
                Node::Inner {
                    kind: NodeKind::Union,
                    children: vec![0, 1],
                },
                Node::Leaf(2),
                Node::Inner {
                    kind: NodeKind::Union,
                    children: vec![2, 3],
                },
            ],
            root: 4,
        };
        assert!(cotree_eval(&bad).is_err());
        // Arity 1 violates the shape.
        let bad = Cotree {
            nodes: vec![
                Node::Leaf(0),
                Node::Inner {
                    kind: NodeKind::Join,
                    children: vec![0],
                },
            ],
            root: 1,
        };
        assert!(cotree_eval(&bad).is_err());
    }

    #[test]
    fn join_of_two_leaves_is_an_edge() {
        let t = Cotree {
            nodes: vec![
                Node::Leaf(0),
                Node::Leaf(1),
                Node::Inner {
                    kind: NodeKind::Join,
                    children: vec![0, 1],
                },
            ],
            root: 2,
        };
        let g = cotree_eval(&t).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn oracle_agreement_and_round_trip_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xc09a);
        for trial in 0..600 {
            let n = rng.gen_range(1..=12);
            let p = [0.2, 0.5, 0.8][trial % 3];
            let g = random_graph(&mut rng, n, p);
            let oracle = find_p4(&g);
            match decompose(&g) {
                Recognition::Cograph(t) => {
                    assert_eq!(oracle, None, "decompose said cograph, oracle found a P4");
                    assert_eq!(cotree_eval(&t).unwrap(), g, "round trip");
                }
                Recognition::NotCograph(w) => {
                    assert!(oracle.is_some(), "oracle missed a P4");
                    assert!(w.validate(&g), "witness must induce a path");
                }
            }
            // Cographs are closed under complementation.
            assert_eq!(
                decompose(&g).is_cograph(),
                decompose(&complement(&g)).is_cograph()
            );
        }
    }

    #[test]
    fn witnesses_are_lexicographically_least() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x1e);
        for _ in 0..300 {
            let n = rng.gen_range(4..=10);
            let g = random_graph(&mut rng, n, 0.5);
            if let Some(w) = find_p4(&g) {
                // No valid ordered witness tuple can be lexicographically
                // smaller.
                let mut best: Option<[u32; 4]> = None;
                for a in 0..n as u32 {
                    for b in 0..n as u32 {
                        for c in 0..n as u32 {
                            for d in 0..n as u32 {
                                let cand = P4Witness { a, b, c, d };
                                if cand.validate(&g)
                                    && best.map_or(true, |x| cand.vertices() < x)
                                {
                                    best = Some(cand.vertices());
                                }
                            }
                        }
                    }
                }
                assert_eq!(Some(w.vertices()), best);
            }
        }
    }
}
