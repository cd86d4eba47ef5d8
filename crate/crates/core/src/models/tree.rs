//! Exact inference on tree-structured Ising models by sum-product.
//!
//! Used where trees are too large for dense enumeration (complete ternary
//! trees of depth 3 already have 40 vertices).

use super::graph::{girth, Adjacency};
use super::ising::IsingModel;
use crate::error::{Error, Result};

/// Rooted view of a tree Ising model.
#[derive(Debug, Clone)]
pub struct RootedTree<'a> {
    model: &'a IsingModel,
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    // vertices in BFS order from the root
    order: Vec<usize>,
}

impl<'a> RootedTree<'a> {
    /// Roots the connected tree `model` at `root`.
    pub fn new(model: &'a IsingModel, root: usize) -> Result<Self> {
        let p = model.p();
        if root >= p {
            return Err(Error::Bounds { index: root, p });
        }
        if girth(model.graph()).is_some() || !model.graph().is_connected() {
            return Err(Error::argument(
                "tree inference needs a connected acyclic graph",
            ));
        }
        let mut parent = vec![None; p];
        let mut children = vec![Vec::new(); p];
        let mut order = vec![root];
        let mut seen = vec![false; p];
        seen[root] = true;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in model.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    children[u].push(w);
                    order.push(w);
                }
            }
        }
        Ok(RootedTree {
            model,
            root,
            parent,
            children,
            order,
        })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn model(&self) -> &IsingModel {
        self.model
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Vertices without children (the root counts only when it is alone).
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.model.p())
            .filter(|v| self.children[*v].is_empty())
            .collect()
    }

    /// Hop depth of every vertex.
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.model.p()];
        for &v in &self.order[1..] {
            depth[v] = depth[self.parent[v].expect("non-root")] + 1;
        }
        depth
    }

    /// Vertices in BFS order from the root.
    pub fn order(&self) -> &[usize] {
        &self.order
    }
}

/// `P(X_query = +1 | evidence)` on a tree, with evidence given as
/// `(vertex, spin)` pairs, spins in `{-1, +1}`.
pub fn tree_conditional_plus(
    model: &IsingModel,
    evidence: &[(usize, i8)],
    query: usize,
) -> Result<f64> {
    let tree = RootedTree::new(model, query)?;
    let p = model.p();
    // allowed[v] = (may be -1, may be +1)
    let mut allowed = vec![(true, true); p];
    for &(v, s) in evidence {
        if v >= p {
            return Err(Error::Bounds { index: v, p });
        }
        let a = &mut allowed[v];
        match s {
            1 => a.0 = false,
            -1 => a.1 = false,
            _ => return Err(Error::argument(format!("spin {s} is not -1 or +1"))),
        }
        if !a.0 && !a.1 {
            return Err(Error::argument(format!("contradictory evidence at {v}")));
        }
    }
    // belief[v] = unnormalised (b(-1), b(+1)) from v's subtree
    let mut belief = vec![(0.0, 0.0); p];
    for &u in tree.order().iter().rev() {
        let mut b = (
            if allowed[u].0 { 1.0 } else { 0.0 },
            if allowed[u].1 { 1.0 } else { 0.0 },
        );
        for &c in tree.children(u) {
            let t = model.theta(u, c).expect("tree edge");
            let (cm, cp) = belief[c];
            // message m(s_u) = Σ_{s_c} exp(θ s_u s_c) b_c(s_c)
            let m_minus = cm * t.exp() + cp * (-t).exp();
            let m_plus = cm * (-t).exp() + cp * t.exp();
            b.0 *= m_minus;
            b.1 *= m_plus;
        }
        let z = b.0 + b.1;
        if z == 0.0 {
            return Err(Error::argument("evidence has zero probability"));
        }
        belief[u] = (b.0 / z, b.1 / z);
    }
    Ok(belief[query].1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_conditional(model: &IsingModel, evidence: &[(usize, i8)], q: usize) -> f64 {
        let j = model.exact_joint().unwrap();
        let (mut num, mut den) = (0.0, 0.0);
        for (idx, pr) in j.probs().iter().enumerate() {
            let ok = evidence
                .iter()
                .all(|(v, s)| ((idx >> v) & 1 == 1) == (*s == 1));
            if ok {
                den += pr;
                if (idx >> q) & 1 == 1 {
                    num += pr;
                }
            }
        }
        num / den
    }

    #[test]
    fn matches_enumeration_on_small_tree() {
        let m = IsingModel::from_edges(
            6,
            &[
                (0, 1, 0.4),
                (0, 2, -0.6),
                (1, 3, 0.8),
                (1, 4, 0.2),
                (2, 5, 0.5),
            ],
        )
        .unwrap();
        let cases: [(&[(usize, i8)], usize); 4] = [
            (&[], 0),
            (&[(3, 1), (4, -1), (5, 1)], 0),
            (&[(0, 1), (5, -1)], 1),
            (&[(3, -1)], 2),
        ];
        for (ev, q) in cases {
            let a = tree_conditional_plus(&m, ev, q).unwrap();
            let b = brute_conditional(&m, ev, q);
            assert!((a - b).abs() < 1e-13, "{a} vs {b}");
        }
    }

    #[test]
    fn rejects_cycles() {
        let m = IsingModel::from_edges(3, &[(0, 1, 0.4), (1, 2, 0.4), (0, 2, 0.4)]).unwrap();
        assert!(tree_conditional_plus(&m, &[], 0).is_err());
    }

    #[test]
    fn rooted_structure() {
        let m = IsingModel::from_edges(4, &[(0, 1, 0.4), (0, 2, 0.4), (2, 3, 0.4)]).unwrap();
        let t = RootedTree::new(&m, 0).unwrap();
        assert_eq!(t.leaves(), vec![1, 3]);
        assert_eq!(t.depths(), vec![0, 1, 1, 2]);
        assert_eq!(t.parent(3), Some(2));
    }
}
