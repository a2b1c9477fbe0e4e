//! JSON network description.

use std::collections::HashMap;

use serde::Deserialize;

use lipkit::activations::ActivationSpec;
use lipkit::matcore::DenseMatrix;
use lipkit::netbounds::{AttentionParams, NetworkGraph, Node, NodeKind};

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkFile {
    pub nodes: Vec<NodeSpec>,
    pub edges: Vec<(String, String)>,
    #[serde(default)]
    pub matrices: HashMap<String, MatrixSpec>,
    pub source: String,
    pub sink: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeSpec {
    pub id: String,
    pub kind: String,
    pub weight_ref: Option<String>,
    pub activation: Option<String>,
    pub lip: Option<f64>,
    pub attention: Option<AttentionSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub rows: usize,
    pub cols: usize,
    /// Column-major entries.
    pub data: Vec<f64>,
}

/// Attention parameters; matrices are names in `matrices`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttentionSpec {
    #[serde(rename = "type")]
    pub kind: String,
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub h: Option<usize>,
    pub x_norm: Option<f64>,
    pub delta: Option<f64>,
    pub w_q: Option<String>,
    pub w_k: Option<String>,
    pub w_v: Option<String>,
    pub w_o: Option<String>,
    pub heads: Option<Vec<(String, String)>>,
    pub x: Option<String>,
}

fn field<T: Clone>(node: &str, name: &str, v: &Option<T>) -> Result<T, CliError> {
    v.clone()
        .ok_or_else(|| CliError::parse(format!("node {node:?}: missing field `{name}`")))
}

fn attention_params(
    node: &str,
    spec: &AttentionSpec,
    matrices: &HashMap<String, DenseMatrix>,
) -> Result<AttentionParams, CliError> {
    let mat = |name: &str, r: &Option<String>| -> Result<DenseMatrix, CliError> {
        let key = field(node, name, r)?;
        matrices
            .get(&key)
            .cloned()
            .ok_or_else(|| CliError::parse(format!("node {node:?}: field `{name}` refers to missing matrix {key:?}")))
    };
    let heads = || -> Result<Vec<(DenseMatrix, DenseMatrix)>, CliError> {
        field(node, "heads", &spec.heads)?
            .iter()
            .map(|(q, v)| Ok((mat("heads", &Some(q.clone()))?, mat("heads", &Some(v.clone()))?)))
            .collect()
    };
    Ok(match spec.kind.as_str() {
        "hu_local" => AttentionParams::HuLocal {
            n: field(node, "n", &spec.n)?,
            x_norm: field(node, "x_norm", &spec.x_norm)?,
            delta: field(node, "delta", &spec.delta)?,
            w_q: mat("w_q", &spec.w_q)?,
            w_k: mat("w_k", &spec.w_k)?,
            w_v: mat("w_v", &spec.w_v)?,
        },
        "kim_l2" | "kim_linf" => {
            let (n, d, h) = (field(node, "n", &spec.n)?, field(node, "d", &spec.d)?, field(node, "h", &spec.h)?);
            let (heads, w_o) = (heads()?, mat("w_o", &spec.w_o)?);
            if spec.kind == "kim_l2" {
                AttentionParams::KimL2 { n, d, h, heads, w_o }
            } else {
                AttentionParams::KimLinf { n, d, h, heads, w_o }
            }
        }
        "yudin" => AttentionParams::Yudin {
            x: mat("x", &spec.x)?,
            w_q: mat("w_q", &spec.w_q)?,
            w_k: mat("w_k", &spec.w_k)?,
            w_v: mat("w_v", &spec.w_v)?,
        },
        other => {
            return Err(CliError::parse(format!(
                "node {node:?}: field `attention.type` has unknown value {other:?}"
            )))
        }
    })
}

/// Parses and validates a network description.
pub fn parse_network(text: &str) -> Result<NetworkGraph, CliError> {
    let file: NetworkFile = serde_json::from_str(text).map_err(|e| CliError::parse(format!("network JSON: {e}")))?;
    let mut matrices = HashMap::new();
    for (name, m) in &file.matrices {
        let dm = DenseMatrix::from_col_major(m.rows, m.cols, m.data.clone())
            .map_err(|e| CliError::parse(format!("matrix {name:?}: field `data`: {e}")))?;
        matrices.insert(name.clone(), dm);
    }
    let mut nodes = Vec::with_capacity(file.nodes.len());
    for spec in &file.nodes {
        let id = spec.id.as_str();
        let kind = match spec.kind.as_str() {
            "input" => NodeKind::Input,
            "linear" => NodeKind::Linear {
                weight_ref: field(id, "weight_ref", &spec.weight_ref)?,
            },
            "activation" => {
                let name = field(id, "activation", &spec.activation)?;
                let act: ActivationSpec = name
                    .parse()
                    .map_err(|e| CliError::parse(format!("node {id:?}: field `activation`: {e}")))?;
                NodeKind::Activation(act)
            }
            "scalar_lip" => NodeKind::ScalarLip(field(id, "lip", &spec.lip)?),
            "residual_group" => NodeKind::ResidualGroup {
                inner_lip: field(id, "lip", &spec.lip)?,
            },
            "attention" => {
                let a = spec
                    .attention
                    .as_ref()
                    .ok_or_else(|| CliError::parse(format!("node {id:?}: missing field `attention`")))?;
                NodeKind::Attention(Box::new(attention_params(id, a, &matrices)?))
            }
            other => {
                return Err(CliError::parse(format!("node {id:?}: field `kind` has unknown value {other:?}")));
            }
        };
        nodes.push(Node::new(id, kind));
    }
    Ok(NetworkGraph::new(nodes, &file.edges, matrices, &file.source, &file.sink)?)
}
