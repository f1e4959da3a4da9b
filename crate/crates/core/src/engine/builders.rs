//! Ready-made problems: projective spaces and Grassmannians of `F_1 + ... + F_n` (plus a trivial
//! line), with SL2^n acting factorwise.

use super::{FixedComponent, GroupDescriptor, LocalizationProblem};
use crate::error::{Error, Result};
use crate::euler::{GroupKind, Irrep, RepSum, SL2nIrrep};
use crate::field::FieldDescriptor;

fn sl2n_group(n: u32, field: &FieldDescriptor) -> Result<GroupDescriptor> {
    if n == 0 {
        return Err(Error::BadParameters("n must be at least 1".into()));
    }
    GroupDescriptor::new(GroupKind::SL2n(n), field.clone())
}

/// P^dim = P(F_1 + ... + F_n), or with an extra trivial line when dim = 2n.
pub fn build_projective_problem(dim: u32, n: u32, field: &FieldDescriptor) -> Result<LocalizationProblem> {
    let group = sl2n_group(n, field)?;
    let components = if dim + 1 == 2 * n {
        Vec::new()
    } else if dim == 2 * n {
        let normal = (1..=n as usize)
            .map(|i| Ok((Irrep::SL2n(SL2nIrrep::sym(1, i, n)?), 1)))
            .collect::<Result<Vec<_>>>()?;
        vec![FixedComponent::self_intersection("L", RepSum::new(group.kind, normal)?)]
    } else {
        return Err(Error::BadDimension(format!("P^{dim} with n = {n}: need dim 2n-1 or 2n")));
    };
    Ok(LocalizationProblem { group, components, multiplier: None })
}

/// All `r`-element subsets of `1..=n`, in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, r, &mut Vec::new(), &mut out);
    out
}

/// Gr(m, ambient) for ambient = 2n (`F_1 + ... + F_n`) or 2n + 1 (with a trivial line L).
///
/// Fixed points are the spans of r of the F_i, together with L when m is odd; the tangent space
/// `Hom(W, V/W)` splits into blocks `F_i^v (x) F_j = F_i (x) F_j`, plus `F_i` for `Hom(F_i, L)`
/// and `Hom(L, F_j)`.
pub fn build_grassmannian_problem(
    m: u32,
    ambient: u32,
    n: u32,
    field: &FieldDescriptor,
) -> Result<LocalizationProblem> {
    let group = sl2n_group(n, field)?;
    let with_line = if ambient == 2 * n {
        false
    } else if ambient == 2 * n + 1 {
        true
    } else {
        return Err(Error::BadParameters(format!("ambient dimension {ambient} for n = {n}")));
    };
    if m == 0 || m >= ambient {
        return Err(Error::BadParameters(format!("Gr({m}, {ambient})")));
    }
    let contains_line = m % 2 == 1;
    if contains_line && !with_line {
        return Ok(LocalizationProblem { group, components: Vec::new(), multiplier: None });
    }
    let r = (m / 2) as usize;
    let n_us = n as usize;
    let mut components = Vec::new();
    for chosen in subsets(n_us, r) {
        let rest: Vec<usize> = (1..=n_us).filter(|i| !chosen.contains(i)).collect();
        let mut normal = Vec::new();
        for &i in &chosen {
            for &j in &rest {
                normal.push((Irrep::SL2n(SL2nIrrep::tensor_pair(i, j, n)?), 1));
            }
        }
        if with_line {
            // Hom(F_i, L) when L is a quotient direction, Hom(L, F_j) when L lies in W.
            let extra = if contains_line { &rest } else { &chosen };
            for &i in extra {
                normal.push((Irrep::SL2n(SL2nIrrep::sym(1, i, n)?), 1));
            }
        }
        let mut id: Vec<String> = chosen.iter().map(|i| format!("F{i}")).collect();
        if contains_line {
            id.push("L".into());
        }
        let id = if id.is_empty() { "0".to_string() } else { id.join("+") };
        components.push(FixedComponent::self_intersection(id, RepSum::new(group.kind, normal)?));
    }
    Ok(LocalizationProblem { group, components, multiplier: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    #[test]
    fn component_counts() {
        assert_eq!(build_projective_problem(2, 1, &q()).unwrap().components.len(), 1);
        assert_eq!(build_projective_problem(1, 1, &q()).unwrap().components.len(), 0);
        assert!(matches!(build_projective_problem(3, 1, &q()), Err(Error::BadDimension(_))));
        assert_eq!(build_grassmannian_problem(2, 4, 2, &q()).unwrap().components.len(), 2);
        assert_eq!(build_grassmannian_problem(3, 4, 2, &q()).unwrap().components.len(), 0);
        assert_eq!(build_grassmannian_problem(3, 5, 2, &q()).unwrap().components.len(), 2);
        assert_eq!(build_grassmannian_problem(4, 8, 4, &q()).unwrap().components.len(), 6);
    }

    #[test]
    fn grassmannian_normal_ranks() {
        // dim Gr(m, N) = m (N - m).
        for (m, amb, n) in [(2, 4, 2), (2, 5, 2), (3, 5, 2), (4, 7, 3), (1, 7, 3)] {
            let p = build_grassmannian_problem(m, amb, n, &q()).unwrap();
            for c in &p.components {
                assert_eq!(c.normal.rank(), (m * (amb - m)) as u64, "Gr({m},{amb})");
            }
        }
    }
}
