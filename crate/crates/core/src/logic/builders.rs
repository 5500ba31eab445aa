//! The formulas NI, K, MK, D_l and property A.
//!
//! Each builder comes in two forms: `*_formula` takes the variable names to
//! use, `build_*` uses the default names `x1, x2, …` and `u1, …, uh`. Bound
//! variables introduced internally are drawn from a counter (`c7`, `w12`,
//! `y3`, …) and never clash with each other.

use super::Formula;

/// MK has one disjunct per permutation of `1..m`; larger `m` is refused.
pub const MK_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("{0}")]
    Domain(String),
}

#[derive(Default)]
struct Fresh(usize);

impl Fresh {
    fn next(&mut self, prefix: &str) -> String {
        self.0 += 1;
        format!("{prefix}{}", self.0)
    }
}

fn names(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

/// `NI(v1,…,vh)`: the variables are pairwise distinct.
pub fn ni_formula<S: AsRef<str>>(vars: &[S]) -> Formula {
    let mut parts = Vec::new();
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            parts.push(Formula::not(Formula::eq(vars[i].as_ref(), vars[j].as_ref())));
        }
    }
    Formula::And(parts)
}

/// `K(v1,…,vm)`: the variables form an `m`-clique.
pub fn k_formula<S: AsRef<str>>(vars: &[S]) -> Formula {
    let mut adj = Vec::new();
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            adj.push(Formula::adj(vars[i].as_ref(), vars[j].as_ref()));
        }
    }
    Formula::And(vec![ni_formula(vars), Formula::And(adj)])
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// `φ(x,y)`: `{x}` and `{y}` coincide or share at most one vertex.
fn phi<S: AsRef<str>>(xs: &[S], ys: &[String]) -> Formula {
    let m = xs.len();
    let same = permutations(m)
        .into_iter()
        .map(|sigma| {
            Formula::And(
                (0..m)
                    .map(|i| Formula::eq(xs[i].as_ref(), ys[sigma[i]].as_str()))
                    .collect(),
            )
        })
        .collect();
    let sparse = (0..m)
        .map(|i| {
            let mut parts = Vec::new();
            for (hat, x) in xs.iter().enumerate() {
                if hat == i {
                    continue;
                }
                for y in ys {
                    parts.push(Formula::not(Formula::eq(x.as_ref(), y.as_str())));
                }
            }
            Formula::And(parts)
        })
        .collect();
    Formula::Or(vec![Formula::Or(same), Formula::Or(sparse)])
}

fn mk_with<S: AsRef<str>>(xs: &[S], fresh: &mut Fresh) -> Result<Formula, BuildError> {
    let m = xs.len();
    if !(2..=MK_CAP).contains(&m) {
        return Err(BuildError::Domain(format!("MK needs 2 <= m <= {MK_CAP}, got {m}")));
    }
    let ys: Vec<String> = (0..m).map(|_| fresh.next("w")).collect();
    let body = Formula::implies(k_formula(&ys), phi(xs, &ys));
    Ok(Formula::And(vec![k_formula(xs), Formula::forall_all(&ys, body)]))
}

/// `MK(v1,…,vm)`: an `m`-clique meeting every other `m`-clique in at most one vertex.
pub fn mk_formula<S: AsRef<str>>(vars: &[S]) -> Result<Formula, BuildError> {
    mk_with(vars, &mut Fresh::default())
}

fn d_with(
    m: usize,
    l: usize,
    a: &str,
    b: &str,
    avoid: &[String],
    fresh: &mut Fresh,
) -> Result<Formula, BuildError> {
    if l == 1 {
        let extra: Vec<String> = (2..m).map(|_| fresh.next("c")).collect();
        let mut clique = vec![a.to_string(), b.to_string()];
        clique.extend(extra.iter().cloned());
        let mut all = clique.clone();
        all.extend(avoid.iter().cloned());
        let body = Formula::And(vec![mk_with(&clique, fresh)?, ni_formula(&all)]);
        return Ok(Formula::exists_all(&extra, body));
    }
    let y = fresh.next("y");
    // Each half avoids the accumulated list plus the far endpoint.
    let mut left_avoid = avoid.to_vec();
    left_avoid.push(b.to_string());
    let mut right_avoid = avoid.to_vec();
    right_avoid.push(a.to_string());
    let left = d_with(m, l / 2, a, &y, &left_avoid, fresh)?;
    let right = d_with(m, l.div_ceil(2), &y, b, &right_avoid, fresh)?;
    let mut guard = vec![a.to_string(), b.to_string(), y.clone()];
    guard.extend(avoid.iter().cloned());
    Ok(Formula::exists(
        y,
        Formula::And(vec![left, right, ni_formula(&guard)]),
    ))
}

/// `D_l(a, b, avoid…)`: implies an `m`-chain of length `l` from `a` to `b` missing `avoid`.
pub fn d_formula<S: AsRef<str>>(
    m: usize,
    l: usize,
    a: &str,
    b: &str,
    avoid: &[S],
) -> Result<Formula, BuildError> {
    if m < 2 {
        return Err(BuildError::Domain(format!("D needs m >= 2, got {m}")));
    }
    if l == 0 {
        return Err(BuildError::Domain("D needs l >= 1".into()));
    }
    let avoid: Vec<String> = avoid.iter().map(|s| s.as_ref().to_string()).collect();
    d_with(m, l, a, b, &avoid, &mut Fresh::default())
}

/// `NI(u1,…,uh)`.
pub fn build_ni(h: usize) -> Formula {
    ni_formula(&names("u", h))
}

/// `K(x1,…,xm)`.
pub fn build_k(m: usize) -> Result<Formula, BuildError> {
    if m < 2 {
        return Err(BuildError::Domain(format!("K needs m >= 2, got {m}")));
    }
    Ok(k_formula(&names("x", m)))
}

/// `MK(x1,…,xm)`.
pub fn build_mk(m: usize) -> Result<Formula, BuildError> {
    mk_formula(&names("x", m))
}

/// `D_l(x1, x2, u1,…,uh)`.
pub fn build_d(m: usize, l: usize, h: usize) -> Result<Formula, BuildError> {
    d_formula(m, l, "x1", "x2", &names("u", h))
}

/// Chain length used inside property A: `2^(k1-1) - 2` with `k1 = k - 10m + 8`.
pub fn property_a_l(m: usize, k: usize) -> Result<usize, BuildError> {
    if m < 2 {
        return Err(BuildError::Domain(format!("property A needs m >= 2, got {m}")));
    }
    if k + 5 < 10 * m {
        return Err(BuildError::Domain(format!(
            "property A needs k >= 10m - 5 = {}, got {k}",
            10 * m - 5
        )));
    }
    let k1 = k + 8 - 10 * m;
    if k1 > 40 {
        return Err(BuildError::Domain(format!("k1 = {k1} is too large to build")));
    }
    Ok((1usize << (k1 - 1)) - 2)
}

/// Property A for clique size `m` and depth budget `k`.
///
/// Variables: `x`, `y`, `y'`, `v{i}_{j}` and `u{i}_{j}` for `i` in 1..=4 and
/// `j` in 1..m. The avoid list of the `i`-th chain is `x, y, y'` followed by
/// `v`, `u` over `J = (({1..4} \ {i}) × {1..m-1}) ∪ ({i} × {1..m-2})`.
pub fn build_property_a(m: usize, k: usize) -> Result<Formula, BuildError> {
    let l = property_a_l(m, k)?;
    let v = |i: usize, j: usize| format!("v{i}_{j}");
    let u = |i: usize, j: usize| format!("u{i}_{j}");
    let mut outer = vec!["x".to_string(), "y".to_string(), "y'".to_string()];
    for i in 1..=4 {
        outer.extend((1..m).map(|j| v(i, j)));
    }
    for i in 1..=4 {
        outer.extend((1..m).map(|j| u(i, j)));
    }
    let mut fresh = Fresh::default();
    let mut parts = vec![ni_formula(&outer)];
    let mut cliques = Vec::new();
    for i in 1..=2 {
        let mut a = vec!["y".to_string()];
        a.extend((1..m).map(|j| u(i, j)));
        let mut b = vec!["y'".to_string()];
        b.extend((1..m).map(|j| u(i + 2, j)));
        cliques.push(Formula::And(vec![mk_with(&a, &mut fresh)?, mk_with(&b, &mut fresh)?]));
    }
    parts.push(Formula::And(cliques));
    let mut chains = Vec::new();
    for i in 1..=4 {
        let mut c = vec!["x".to_string()];
        c.extend((1..m).map(|j| v(i, j)));
        let mut avoid = vec!["x".to_string(), "y".to_string(), "y'".to_string()];
        for hat in 1..=4 {
            let top = if hat == i { m - 2 } else { m - 1 };
            for j in 1..=top {
                avoid.push(v(hat, j));
                avoid.push(u(hat, j));
            }
        }
        let d = d_with(m, l, &v(i, m - 1), &u(i, m - 1), &avoid, &mut fresh)?;
        chains.push(Formula::And(vec![mk_with(&c, &mut fresh)?, d]));
    }
    parts.push(Formula::And(chains));
    Ok(Formula::exists_all(&outer, Formula::And(parts)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ceil_log2(l: usize) -> usize {
        (usize::BITS - (l - 1).leading_zeros()) as usize * usize::from(l > 1)
    }

    #[test]
    fn ni_and_k_shapes() {
        assert_eq!(build_ni(0).to_string(), "(and)");
        assert_eq!(build_ni(3).quantifier_depth(), 0);
        assert_eq!(
            build_k(2).unwrap().to_string(),
            "(and (and (not (= x1 x2))) (and (adj x1 x2)))"
        );
        assert_eq!(build_ni(3).free_variables().len(), 3);
    }

    #[test]
    fn mk_depth_and_cap() {
        for m in 2..=4 {
            assert_eq!(build_mk(m).unwrap().quantifier_depth(), m);
        }
        assert!(build_mk(5).is_err());
        assert!(build_mk(1).is_err());
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn d_depth_formula() {
        for m in 2..=4 {
            for l in 1..=64 {
                let d = build_d(m, l, 0).unwrap();
                assert_eq!(d.quantifier_depth(), ceil_log2(l) + 2 * m - 2, "m={m} l={l}");
                let free: Vec<String> = d.free_variables().into_iter().collect();
                assert_eq!(free, ["x1", "x2"]);
            }
        }
        assert_eq!(build_d(2, 6, 0).unwrap().quantifier_depth(), 5);
        assert_eq!(build_d(3, 3, 2).unwrap().free_variables().len(), 4);
        assert!(build_d(2, 0, 0).is_err());
    }

    #[test]
    fn property_a_parameters() {
        assert_eq!(property_a_l(2, 15).unwrap(), 2);
        assert_eq!(property_a_l(2, 16).unwrap(), 6);
        assert!(property_a_l(2, 14).is_err());
        let a = build_property_a(2, 15).unwrap();
        assert!(a.is_sentence());
    }

    /// Depth as built is `3 + 8(m-1) + max(m, ceil(log2 l) + 2m - 2)`.
    #[test]
    fn property_a_depths() {
        for (m, k) in [(2, 15), (2, 16), (2, 17), (3, 25), (3, 26)] {
            let l = property_a_l(m, k).unwrap();
            let expected = 3 + 8 * (m - 1) + m.max(ceil_log2(l) + 2 * m - 2);
            assert_eq!(build_property_a(m, k).unwrap().quantifier_depth(), expected);
        }
        // When k1 >= 4 the depth is exactly k; when k1 = 3 it is k - 1.
        assert_eq!(build_property_a(2, 16).unwrap().quantifier_depth(), 16);
        assert_eq!(build_property_a(2, 15).unwrap().quantifier_depth(), 14);
        assert_eq!(build_property_a(3, 25).unwrap().quantifier_depth(), 24);
    }
}
