//! Towers `K^0 ⊂ K^1 ⊂ … ⊂ K^r` in which each step is an extension by a
//! member of a fixed family of rooted pairs.
//!
//! Vertices of `K^{j-1}` are the first `v(K^{j-1})` vertices of `K^j`, and
//! `K^j` restricted to them must equal `K^{j-1}`.

use serde::{Deserialize, Serialize};

use super::RootedPair;
use crate::graph::Graph;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("malformed certificate at step {step}: {reason}")]
    Malformed { step: usize, reason: String },
    #[error("bad graph in tower: {0}")]
    Graph(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCertificate", into = "RawCertificate")]
pub struct ChainCertificate {
    pub tower: Vec<Graph>,
    /// Optional family index per step; empty means any member may match.
    pub pair_refs: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawCertificate {
    tower: Vec<String>,
    #[serde(default)]
    pair_refs: Vec<usize>,
}

impl TryFrom<RawCertificate> for ChainCertificate {
    type Error = ChainError;

    fn try_from(raw: RawCertificate) -> Result<Self, Self::Error> {
        let tower = raw
            .tower
            .iter()
            .map(|t| t.parse::<Graph>().map_err(|e| ChainError::Graph(e.to_string())))
            .collect::<Result<_, _>>()?;
        Ok(ChainCertificate {
            tower,
            pair_refs: raw.pair_refs,
        })
    }
}

impl From<ChainCertificate> for RawCertificate {
    fn from(c: ChainCertificate) -> Self {
        RawCertificate {
            tower: c.tower.iter().map(Graph::to_edge_list).collect(),
            pair_refs: c.pair_refs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub new_vertices: usize,
    pub new_edges: usize,
    pub matched: Option<usize>,
    /// `e_j·(α−ε) > v_j`, when a bound was supplied.
    pub inequality: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub steps: Vec<StepReport>,
    pub accepted: bool,
}

/// Checks every step of the tower against `family`; with `alpha_minus_eps`
/// also checks `e_j > v_j / (α−ε)` per step.
pub fn verify_chain(
    cert: &ChainCertificate,
    family: &[RootedPair],
    alpha_minus_eps: Option<&Rational>,
) -> Result<ChainReport, ChainError> {
    let steps = cert.tower.len().saturating_sub(1);
    if steps == 0 {
        return Err(ChainError::Malformed {
            step: 0,
            reason: "tower needs at least two graphs".into(),
        });
    }
    if !cert.pair_refs.is_empty() && cert.pair_refs.len() != steps {
        return Err(ChainError::Malformed {
            step: 0,
            reason: format!("{} pair refs for {steps} steps", cert.pair_refs.len()),
        });
    }
    if let Some(bad) = cert.pair_refs.iter().find(|&&i| i >= family.len()) {
        return Err(ChainError::Malformed {
            step: 0,
            reason: format!("pair ref {bad} outside family of {}", family.len()),
        });
    }
    if let Some(a) = alpha_minus_eps {
        if !a.is_positive() {
            return Err(ChainError::Malformed {
                step: 0,
                reason: format!("alpha - eps must be positive, got {a}"),
            });
        }
    }
    let mut reports = Vec::with_capacity(steps);
    for j in 1..=steps {
        let (old, new) = (&cert.tower[j - 1], &cert.tower[j]);
        let n0 = old.vertex_count();
        if new.vertex_count() <= n0 {
            return Err(ChainError::Malformed {
                step: j,
                reason: "no new vertices".into(),
            });
        }
        let prefix: Vec<usize> = (0..n0).collect();
        if new.induced(&prefix) != *old {
            return Err(ChainError::Malformed {
                step: j,
                reason: "previous graph is not the induced prefix".into(),
            });
        }
        let v = new.vertex_count() - n0;
        let e = new.edge_count() - old.edge_count();
        let candidates: Vec<usize> = if cert.pair_refs.is_empty() {
            (0..family.len()).collect()
        } else {
            vec![cert.pair_refs[j - 1]]
        };
        let matched = candidates
            .into_iter()
            .find(|&i| step_matches(old, new, &family[i]));
        let inequality = alpha_minus_eps.map(|a| {
            &Rational::from_integer(e as i64) * a > Rational::from_integer(v as i64)
        });
        reports.push(StepReport {
            new_vertices: v,
            new_edges: e,
            matched,
            inequality,
        });
    }
    let accepted = reports
        .iter()
        .all(|r| r.matched.is_some() && r.inequality != Some(false));
    Ok(ChainReport {
        steps: reports,
        accepted,
    })
}

/// Is `new` a `(K,T)`-extension of `old`: roots onto old vertices, the rest
/// onto the new vertices bijectively, edges outside `T` onto the new edges
/// and edges of `T` onto edges of `old`.
fn step_matches(old: &Graph, new: &Graph, kt: &RootedPair) -> bool {
    let n0 = old.vertex_count();
    let (kv, ke) = kt.stats();
    if kv != new.vertex_count() - n0 || ke != new.edge_count() - old.edge_count() {
        return false;
    }
    let mut order: Vec<usize> = kt.roots().to_vec();
    order.extend(kt.new_vertices());
    let mut phi = vec![usize::MAX; kt.big().vertex_count()];
    let mut used = vec![false; new.vertex_count()];
    assign(0, &order, kt, n0, new, &mut phi, &mut used)
}

fn assign(
    depth: usize,
    order: &[usize],
    kt: &RootedPair,
    n0: usize,
    new: &Graph,
    phi: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(depth) else {
        return true;
    };
    let range = if depth < kt.roots().len() {
        0..n0
    } else {
        n0..new.vertex_count()
    };
    for w in range {
        if used[w] {
            continue;
        }
        let fits = kt.big().neighbors(x).iter().all(|&y| {
            phi[y] == usize::MAX || new.has_edge(w, phi[y])
        });
        if !fits {
            continue;
        }
        phi[x] = w;
        used[w] = true;
        if assign(depth + 1, order, kt, n0, new, phi, used) {
            return true;
        }
        used[w] = false;
        phi[x] = usize::MAX;
    }
    false
}
