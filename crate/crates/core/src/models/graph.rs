//! Undirected graphs, factor graphs and the BFS metrics used by the theory.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Read access to an undirected graph's adjacency lists.
pub trait Adjacency {
    fn vertex_count(&self) -> usize;
    fn neighbors(&self, v: usize) -> &[usize];
}

/// Simple undirected graph on vertices `0..p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovGraph {
    p: usize,
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl MarkovGraph {
    pub fn empty(p: usize) -> Self {
        MarkovGraph {
            p,
            edges: BTreeSet::new(),
            adj: vec![Vec::new(); p],
        }
    }

    /// Builds a graph, rejecting self-loops, duplicates and out-of-range endpoints.
    pub fn new(p: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = MarkovGraph::empty(p);
        for (u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(Error::argument(format!("duplicate edge {{{u}, {v}}}")));
            }
        }
        Ok(g)
    }

    /// Adds `{u, v}`; returns `false` when the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        if u == v {
            return Err(Error::argument(format!("self-loop at vertex {u}")));
        }
        let hi = u.max(v);
        if hi >= self.p {
            return Err(Error::Bounds {
                index: hi,
                p: self.p,
            });
        }
        let key = (u.min(v), hi);
        if !self.edges.insert(key) {
            return Ok(false);
        }
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a];
            let pos = list.binary_search(&b).unwrap_err();
            list.insert(pos, b);
        }
        Ok(true)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.p == 0 || bfs_distances(self, 0).iter().all(Option::is_some)
    }

    /// Same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        MarkovGraph::new(self.p, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Graphviz DOT text. `names`, when given, label the vertices.
    pub fn to_dot(&self, names: Option<&[String]>) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.p {
            match names.and_then(|n| n.get(v)) {
                Some(name) => {
                    let _ = writeln!(out, "  {v} [label=\"{}\"];", name.replace('"', "\\\""));
                }
                None => {
                    let _ = writeln!(out, "  {v};");
                }
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    /// Edge-list text: a `p` header line then one `u v` pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.p);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (_, header) = lines.next().ok_or_else(|| Error::Parse {
            row: 1,
            message: "missing vertex-count header".into(),
        })?;
        let p: usize = header.trim().parse().map_err(|_| Error::Parse {
            row: 1,
            message: format!("bad vertex count {header:?}"),
        })?;
        let mut edges = Vec::new();
        for (i, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::Parse {
                    row: i + 1,
                    message: format!("bad vertex {s:?}"),
                })
            };
            if parts.len() != 2 {
                return Err(Error::Parse {
                    row: i + 1,
                    message: format!("expected `u v`, found {line:?}"),
                });
            }
            edges.push((parse(parts[0])?, parse(parts[1])?));
        }
        MarkovGraph::new(p, edges)
    }

    pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_edge_list(&text)
    }
}

impl Adjacency for MarkovGraph {
    fn vertex_count(&self) -> usize {
        self.p
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }
}

/// Bipartite variable/clique graph: vertices `0..p` are variables and
/// `p..p+c` are the maximal cliques of the source graph.
#[derive(Debug, Clone)]
pub struct FactorGraph {
    p: usize,
    cliques: Vec<Vec<usize>>,
    adj: Vec<Vec<usize>>,
}

impl FactorGraph {
    pub fn variable_count(&self) -> usize {
        self.p
    }

    pub fn cliques(&self) -> &[Vec<usize>] {
        &self.cliques
    }

    /// Factor-graph vertex id of clique `c`.
    pub fn clique_vertex(&self, c: usize) -> usize {
        self.p + c
    }

    /// All `(variable, clique vertex)` incidences.
    pub fn incidences(&self) -> Vec<(usize, usize)> {
        self.cliques
            .iter()
            .enumerate()
            .flat_map(|(c, members)| members.iter().map(move |v| (*v, self.p + c)))
            .collect()
    }
}

impl Adjacency for FactorGraph {
    fn vertex_count(&self) -> usize {
        self.p + self.cliques.len()
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }
}

/// Builds the factor graph of `g` from its maximal cliques. Isolated vertices
/// form singleton cliques.
pub fn factor_graph(g: &MarkovGraph) -> FactorGraph {
    let cliques = maximal_cliques(g);
    let p = g.p();
    let mut adj = vec![Vec::new(); p + cliques.len()];
    for (c, members) in cliques.iter().enumerate() {
        for v in members {
            adj[*v].push(p + c);
            adj[p + c].push(*v);
        }
    }
    FactorGraph { p, cliques, adj }
}

/// Maximal cliques by Bron–Kerbosch with Tomita pivoting. Each clique is
/// sorted; the list is sorted lexicographically.
pub fn maximal_cliques(g: &MarkovGraph) -> Vec<Vec<usize>> {
    fn expand(
        g: &MarkovGraph,
        r: &mut Vec<usize>,
        mut p: BTreeSet<usize>,
        mut x: BTreeSet<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|u| g.neighbors(*u).iter().filter(|w| p.contains(w)).count())
            .expect("p is nonempty");
        let candidates: Vec<usize> = p
            .iter()
            .copied()
            .filter(|v| !g.has_edge(pivot, *v))
            .collect();
        for v in candidates {
            let nv: BTreeSet<usize> = g.neighbors(v).iter().copied().collect();
            r.push(v);
            expand(
                g,
                r,
                p.intersection(&nv).copied().collect(),
                x.intersection(&nv).copied().collect(),
                out,
            );
            r.pop();
            p.remove(&v);
            x.insert(v);
        }
    }

    let mut out = Vec::new();
    expand(
        g,
        &mut Vec::new(),
        (0..g.p()).collect(),
        BTreeSet::new(),
        &mut out,
    );
    out.sort();
    out
}

/// Hop distances from `src`; `None` marks unreachable vertices.
pub fn bfs_distances<G: Adjacency + ?Sized>(g: &G, src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have a distance");
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Shortest-path hop count between `u` and `v`, `None` if disconnected.
pub fn graph_distance<G: Adjacency + ?Sized>(g: &G, u: usize, v: usize) -> Option<usize> {
    bfs_distances(g, u)[v]
}

/// Length of the shortest cycle, `None` for forests.
///
/// One BFS per root; a non-tree edge `(u, w)` closes a cycle of length at most
/// `d(u) + d(w) + 1`, and the minimum over all roots is exact.
pub fn girth<G: Adjacency + ?Sized>(g: &G) -> Option<usize> {
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        let mut queue = VecDeque::from([root]);
        'bfs: while let Some(u) = queue.pop_front() {
            if let Some(b) = best {
                if 2 * dist[u] >= b {
                    break 'bfs;
                }
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}
