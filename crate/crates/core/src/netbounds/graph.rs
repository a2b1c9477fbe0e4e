use std::collections::HashMap;

use crate::activations::ActivationSpec;
use crate::matcore::DenseMatrix;

use super::{AttentionParams, NetError};

#[derive(Debug, Clone)]
pub enum NodeKind {
    /// Identity entry point; Lip 1.
    Input,
    Linear { weight_ref: String },
    Activation(ActivationSpec),
    /// User-supplied constant.
    ScalarLip(f64),
    /// `x + φ(x)` with a known `Lip[φ]`.
    ResidualGroup { inner_lip: f64 },
    Attention(Box<AttentionParams>),
}

#[derive(Debug, Clone)]
pub struct Node {
    pub id: String,
    pub kind: NodeKind,
}

impl Node {
    pub fn new(id: impl Into<String>, kind: NodeKind) -> Self {
        Self { id: id.into(), kind }
    }
}

/// Validated DAG with a unique source and sink.
#[derive(Debug, Clone)]
pub struct NetworkGraph {
    nodes: Vec<Node>,
    index: HashMap<String, usize>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    matrices: HashMap<String, DenseMatrix>,
    source: usize,
    sink: usize,
    topo: Vec<usize>,
}

impl NetworkGraph {
    pub fn new(
        nodes: Vec<Node>,
        edges: &[(String, String)],
        matrices: HashMap<String, DenseMatrix>,
        source: &str,
        sink: &str,
    ) -> Result<Self, NetError> {
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, node) in nodes.iter().enumerate() {
            if index.insert(node.id.clone(), i).is_some() {
                return Err(NetError::DuplicateNode(node.id.clone()));
            }
            match &node.kind {
                NodeKind::Linear { weight_ref } if !matrices.contains_key(weight_ref) => {
                    return Err(NetError::UnresolvedWeight {
                        node: node.id.clone(),
                        weight_ref: weight_ref.clone(),
                    });
                }
                NodeKind::ScalarLip(l) | NodeKind::ResidualGroup { inner_lip: l } if !(*l >= 0.0 && l.is_finite()) => {
                    return Err(NetError::InvalidLipschitz {
                        node: node.id.clone(),
                        value: *l,
                    });
                }
                _ => {}
            }
        }
        let lookup = |id: &str| index.get(id).copied().ok_or_else(|| NetError::UnknownNode(id.to_string()));
        let n = nodes.len();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for (a, b) in edges {
            let (ia, ib) = (lookup(a)?, lookup(b)?);
            if succ[ia].contains(&ib) {
                return Err(NetError::DuplicateEdge(a.clone(), b.clone()));
            }
            succ[ia].push(ib);
            pred[ib].push(ia);
        }
        let source = lookup(source)?;
        let sink = lookup(sink)?;
        let topo = topological_order(&succ, &pred).ok_or(NetError::CycleDetected)?;

        let sources: Vec<usize> = (0..n).filter(|&v| pred[v].is_empty()).collect();
        let sinks: Vec<usize> = (0..n).filter(|&v| succ[v].is_empty()).collect();
        if sources != [source] {
            return Err(NetError::InvalidEndpoints(format!(
                "source {:?} must be the only node without predecessors (found {:?})",
                nodes[source].id,
                sources.iter().map(|&v| nodes[v].id.as_str()).collect::<Vec<_>>()
            )));
        }
        if sinks != [sink] {
            return Err(NetError::InvalidEndpoints(format!(
                "sink {:?} must be the only node without successors (found {:?})",
                nodes[sink].id,
                sinks.iter().map(|&v| nodes[v].id.as_str()).collect::<Vec<_>>()
            )));
        }
        Ok(Self {
            nodes,
            index,
            succ,
            pred,
            matrices,
            source,
            sink,
            topo,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    pub fn position(&self, id: &str) -> Result<usize, NetError> {
        self.index.get(id).copied().ok_or_else(|| NetError::UnknownNode(id.to_string()))
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    pub fn predecessors(&self, i: usize) -> &[usize] {
        &self.pred[i]
    }

    pub fn matrix(&self, weight_ref: &str) -> Option<&DenseMatrix> {
        self.matrices.get(weight_ref)
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    /// Node indices in a topological order.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }
}

/// Kahn's algorithm; `None` when a cycle exists.
fn topological_order(succ: &[Vec<usize>], pred: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = succ.len();
    let mut indeg: Vec<usize> = pred.iter().map(Vec::len).collect();
    let mut stack: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in succ[v].iter().rev() {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}
