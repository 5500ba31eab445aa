//! α-safe pairs: `f_α(S,H) > 0` for every `S` with `H ⊂ S ⊆ G`.
//!
//! For a fixed vertex set `W ⊇ V(H)` the intermediate graphs `S` on `W` range
//! over edge sets between `E(H)` and `E(G[W])`; `f_α(S,H)` only decreases as
//! edges are added, so the induced `G[W]` is the worst case and the only one
//! that has to be tested. `W = V(H)` gives `S = H` itself (the roots span an
//! induced subgraph), which the strict inclusion excludes.

use super::{f_alpha_from_stats, ExtensionError, RootedPair};
use crate::rational::Rational;

pub const DEFAULT_SAFE_CAP: usize = 14;

pub fn is_alpha_safe(p: &RootedPair, alpha: &Rational) -> Result<bool, ExtensionError> {
    is_alpha_safe_with_cap(p, alpha, DEFAULT_SAFE_CAP)
}

pub fn is_alpha_safe_with_cap(
    p: &RootedPair,
    alpha: &Rational,
    cap: usize,
) -> Result<bool, ExtensionError> {
    if !alpha.is_positive() {
        return Err(ExtensionError::Domain(format!("alpha must be positive, got {alpha}")));
    }
    let n = p.big().vertex_count();
    if n > cap {
        return Err(ExtensionError::CapExceeded {
            what: "alpha-safe enumeration",
            size: n,
            cap,
        });
    }
    let free = p.new_vertices();
    let inside_h = p.big().edges_within(p.roots());
    let mut set = p.roots().to_vec();
    for mask in 1u32..(1u32 << free.len()) {
        set.truncate(p.roots().len());
        set.extend(
            free.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v),
        );
        let v = mask.count_ones() as usize;
        let e = p.big().edges_within(&set) - inside_h;
        if !f_alpha_from_stats(v, e, alpha).is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}
