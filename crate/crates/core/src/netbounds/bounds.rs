use crate::activations::closed_form_lipschitz;
use crate::matcore::{singular_values, DenseMatrix};
use crate::specest::power_iteration;

use super::{attention_bound, residual_bound, NetError, NetworkGraph, NodeKind};

/// Path-count cap for [`path_enumeration_bound`].
pub const MAX_ENUMERATED_PATHS: usize = 10_000;

/// How spectral norms of linear nodes are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralMethod {
    /// Full SVD when both dimensions are at most 256, else 500 power steps with seed 0.
    Auto,
    FullSvd,
    Power { iters: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    PowerIteration { iters: usize, seed: u64 },
    UserSupplied,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeLip {
    pub id: String,
    pub lip: f64,
    pub provenance: Provenance,
}

fn spectral_norm(w: &DenseMatrix, method: SpectralMethod) -> Result<(f64, Provenance), NetError> {
    let method = match method {
        SpectralMethod::Auto if w.rows().max(w.cols()) <= 256 => SpectralMethod::FullSvd,
        SpectralMethod::Auto => SpectralMethod::Power { iters: 500, seed: 0 },
        m => m,
    };
    match method {
        SpectralMethod::Power { iters, seed } => {
            let est = power_iteration(w, iters, seed).map_err(|e| NetError::Estimation(e.to_string()))?;
            Ok((est.sigma_est, Provenance::PowerIteration { iters, seed }))
        }
        _ => Ok((singular_values(w)?[0], Provenance::ClosedForm)),
    }
}

pub fn node_lipschitz(g: &NetworkGraph, id: &str, method: SpectralMethod) -> Result<NodeLip, NetError> {
    let node = g.node(g.position(id)?);
    let (lip, provenance) = match &node.kind {
        NodeKind::Input => (1.0, Provenance::ClosedForm),
        NodeKind::Linear { weight_ref } => {
            let w = g.matrix(weight_ref).ok_or_else(|| NetError::UnresolvedWeight {
                node: node.id.clone(),
                weight_ref: weight_ref.clone(),
            })?;
            spectral_norm(w, method)?
        }
        NodeKind::Activation(a) => (closed_form_lipschitz(a), Provenance::ClosedForm),
        NodeKind::ScalarLip(l) => (*l, Provenance::UserSupplied),
        NodeKind::ResidualGroup { inner_lip } => (residual_bound(*inner_lip), Provenance::ClosedForm),
        NodeKind::Attention(p) => (attention_bound(p)?, Provenance::ClosedForm),
    };
    Ok(NodeLip {
        id: node.id.clone(),
        lip,
        provenance,
    })
}

fn all_lips(g: &NetworkGraph, method: SpectralMethod) -> Result<Vec<f64>, NetError> {
    g.nodes().iter().map(|n| node_lipschitz(g, &n.id, method).map(|l| l.lip)).collect()
}

/// Product of node constants along `chain`, which must follow graph edges.
pub fn product_bound(chain: &[&str], g: &NetworkGraph, method: SpectralMethod) -> Result<f64, NetError> {
    let idx: Vec<usize> = chain.iter().map(|id| g.position(id)).collect::<Result<_, _>>()?;
    for w in idx.windows(2) {
        if !g.successors(w[0]).contains(&w[1]) {
            return Err(NetError::NotAPath(g.node(w[0]).id.clone(), g.node(w[1]).id.clone()));
        }
    }
    let mut acc = 1.0;
    for id in chain {
        acc *= node_lipschitz(g, id, method)?.lip;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DagBound {
    pub bound: f64,
    /// `(id, S(id))` in topological order.
    pub per_node: Vec<(String, f64)>,
}

fn dag_dp(g: &NetworkGraph, lips: &[f64]) -> Vec<f64> {
    let mut s = vec![0.0; g.len()];
    for &v in g.topological_order() {
        s[v] = if v == g.source() {
            1.0
        } else {
            lips[v] * g.predecessors(v).iter().map(|&u| s[u]).sum::<f64>()
        };
    }
    s
}

/// Path-sum bound via `S(v) = Lip[h_v] Σ_{u→v} S(u)`, `S(source) = 1`.
pub fn dag_bound(g: &NetworkGraph, method: SpectralMethod) -> Result<DagBound, NetError> {
    let lips = all_lips(g, method)?;
    let s = dag_dp(g, &lips);
    Ok(DagBound {
        bound: s[g.sink()],
        per_node: g.topological_order().iter().map(|&v| (g.node(v).id.clone(), s[v])).collect(),
    })
}

/// Explicit sum over source→sink paths of node-constant products (source
/// excluded). `None` when there are more than [`MAX_ENUMERATED_PATHS`] paths.
pub fn path_enumeration_bound(g: &NetworkGraph, method: SpectralMethod) -> Result<Option<f64>, NetError> {
    let lips = all_lips(g, method)?;
    let mut total = 0.0;
    let mut paths = 0usize;
    // (node, product so far, next successor slot)
    let mut stack = vec![(g.source(), 1.0, 0usize)];
    while let Some(top) = stack.last_mut() {
        let (v, prod, slot) = *top;
        if v == g.sink() {
            total += prod;
            paths += 1;
            if paths > MAX_ENUMERATED_PATHS {
                return Ok(None);
            }
            stack.pop();
            continue;
        }
        match g.successors(v).get(slot) {
            Some(&w) => {
                top.2 += 1;
                stack.push((w, prod * lips[w], 0));
            }
            None => {
                stack.pop();
            }
        }
    }
    Ok(Some(total))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArticulationBound {
    pub bound: f64,
    pub cut_vertices: Vec<String>,
    /// One entry per segment between consecutive cuts; the last includes the sink.
    pub subdag_bounds: Vec<f64>,
}

fn reach(start: usize, next: impl Fn(usize) -> Vec<usize>, n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for w in next(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Articulation points of the undirected graph on `members` (iterative Tarjan).
fn articulation_points(adj: &[Vec<usize>], root: usize) -> Vec<bool> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut cut = vec![false; n];
    let mut timer = 0;
    disc[root] = timer;
    low[root] = timer;
    let mut root_children = 0;
    let mut stack = vec![(root, usize::MAX, 0usize)];
    while let Some(&mut (v, parent, ref mut slot)) = stack.last_mut() {
        if let Some(&w) = adj[v].get(*slot) {
            *slot += 1;
            if disc[w] == usize::MAX {
                timer += 1;
                disc[w] = timer;
                low[w] = timer;
                if v == root {
                    root_children += 1;
                }
                stack.push((w, v, 0));
            } else if w != parent {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if parent != usize::MAX {
                low[parent] = low[parent].min(low[v]);
                if parent != root && low[v] >= disc[parent] {
                    cut[parent] = true;
                }
            }
        }
    }
    cut[root] = root_children > 1;
    cut
}

/// Factors the path sum at cut vertices separating source from sink.
pub fn articulation_bound(g: &NetworkGraph, method: SpectralMethod) -> Result<ArticulationBound, NetError> {
    let lips = all_lips(g, method)?;
    let n = g.len();
    let fwd = reach(g.source(), |v| g.successors(v).to_vec(), n);
    let back = reach(g.sink(), |v| g.predecessors(v).to_vec(), n);
    let corridor: Vec<bool> = (0..n).map(|v| fwd[v] && back[v]).collect();

    let mut adj = vec![Vec::new(); n];
    for v in (0..n).filter(|&v| corridor[v]) {
        for &w in g.successors(v).iter().filter(|&&w| corridor[w]) {
            adj[v].push(w);
            adj[w].push(v);
        }
    }
    let cut = articulation_points(&adj, g.source());

    let topo = g.topological_order();
    let mut boundaries = vec![g.source()];
    boundaries.extend(
        topo.iter()
            .copied()
            .filter(|&v| corridor[v] && cut[v] && v != g.source() && v != g.sink()),
    );
    boundaries.push(g.sink());

    let mut pos = vec![0usize; n];
    for (i, &v) in topo.iter().enumerate() {
        pos[v] = i;
    }
    let mut s = vec![0.0; n];
    let mut subdag_bounds = Vec::with_capacity(boundaries.len() - 1);
    for seg in boundaries.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        s[a] = 1.0;
        let inside = |u: usize| corridor[u] && pos[u] >= pos[a] && pos[u] < pos[b];
        for &v in &topo[pos[a] + 1..pos[b]] {
            if corridor[v] {
                s[v] = lips[v] * g.predecessors(v).iter().filter(|&&u| inside(u)).map(|&u| s[u]).sum::<f64>();
            }
        }
        let into_b: f64 = g.predecessors(b).iter().filter(|&&u| inside(u)).map(|&u| s[u]).sum();
        subdag_bounds.push(if b == g.sink() { into_b * lips[b] } else { into_b });
    }
    let cuts = &boundaries[1..boundaries.len() - 1];
    let bound = subdag_bounds.iter().product::<f64>() * cuts.iter().map(|&c| lips[c]).product::<f64>();
    Ok(ArticulationBound {
        bound,
        cut_vertices: cuts.iter().map(|&c| g.node(c).id.clone()).collect(),
        subdag_bounds,
    })
}
