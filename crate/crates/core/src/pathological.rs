//! A bracket on `span{x1^i x2^j (x1 x2 ∂_d)}` that fails the Jacobi identity.
//!
//! The operators `x1 x2 ∂_1` and `x1 x2 ∂_2` are treated as the
//! shift maps `x1^i x2^j ↦ x1^i x2^{j+1}` and `x1^i x2^j ↦ x1^{i+1} x2^j`
//! rather than as derivations, so the resulting rules do not come from a
//! commutator. The three case rules are applied exactly as written; the
//! mixed case with `∂_2` on the left follows by antisymmetry.

use crate::lincomb::{int, LinComb};

/// `x1^i x2^j (x1 x2 ∂_dir)`, `dir ∈ {1, 2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PathTerm {
    pub i: u32,
    pub j: u32,
    pub dir: u8,
}

impl PathTerm {
    pub fn new(i: u32, j: u32, dir: u8) -> Self {
        assert!(dir == 1 || dir == 2, "PathTerm direction must be 1 or 2");
        PathTerm { i, j, dir }
    }
}

impl std::fmt::Display for PathTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x1^{} x2^{} (x1 x2 D{})", self.i, self.j, self.dir)
    }
}

pub type PathElement = LinComb<PathTerm>;

pub fn pathological_bracket_terms(t1: PathTerm, t2: PathTerm) -> PathElement {
    let (i1, j1, i2, j2) = (t1.i as i64, t1.j as i64, t2.i as i64, t2.j as i64);
    match (t1.dir, t2.dir) {
        (1, 1) => PathElement::term(PathTerm::new(t1.i + t2.i, t1.j + t2.j + 1, 1), int(i2 - i1)),
        (1, 2) => {
            let mut out = PathElement::term(PathTerm::new(t1.i + t2.i, t1.j + t2.j + 1, 2), int(i2));
            out.add_term(PathTerm::new(t1.i + t2.i + 1, t1.j + t2.j, 1), int(-j1));
            out
        }
        (2, 1) => -pathological_bracket_terms(t2, t1),
        _ => PathElement::term(PathTerm::new(t1.i + t2.i + 1, t1.j + t2.j, 2), int(j2 - j1)),
    }
}

pub fn pathological_bracket(e1: &PathElement, e2: &PathElement) -> PathElement {
    let mut out = PathElement::zero();
    for (t1, c1) in e1.iter() {
        for (t2, c2) in e2.iter() {
            out += &pathological_bracket_terms(*t1, *t2).scale(&(c1 * c2));
        }
    }
    out
}

pub fn pathological_jacobi(e1: &PathElement, e2: &PathElement, e3: &PathElement) -> PathElement {
    let br = pathological_bracket;
    let mut out = br(&br(e1, e2), e3);
    out += &br(&br(e2, e3), e1);
    out += &br(&br(e3, e1), e2);
    out
}

/// All path terms with `i, j ≤ bound`, ascending.
pub fn path_terms_up_to(bound: u32) -> Vec<PathTerm> {
    let mut out = Vec::new();
    for i in 0..=bound {
        for j in 0..=bound {
            for dir in 1..=2 {
                out.push(PathTerm::new(i, j, dir));
            }
        }
    }
    out.sort();
    out
}

/// First triple (in lexicographic order of `(t1, t2, t3)`) with nonzero
/// Jacobi defect, together with the defect.
pub fn first_jacobi_counterexample(bound: u32) -> Option<([PathTerm; 3], PathElement)> {
    let terms = path_terms_up_to(bound);
    for &a in &terms {
        for &b in &terms {
            for &c in &terms {
                let defect = pathological_jacobi(
                    &PathElement::basis(a),
                    &PathElement::basis(b),
                    &PathElement::basis(c),
                );
                if !defect.is_zero() {
                    return Some(([a, b, c], defect));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_rule() {
        let out = pathological_bracket_terms(PathTerm::new(0, 0, 1), PathTerm::new(1, 0, 1));
        assert_eq!(out, PathElement::basis(PathTerm::new(1, 1, 1)));
    }

    #[test]
    fn self_bracket_vanishes() {
        for t in path_terms_up_to(2) {
            assert!(pathological_bracket_terms(t, t).is_zero(), "{t:?}");
        }
    }

    #[test]
    fn antisymmetric_by_construction() {
        for a in path_terms_up_to(2) {
            for b in path_terms_up_to(2) {
                let sum = pathological_bracket_terms(a, b) + pathological_bracket_terms(b, a);
                assert!(sum.is_zero(), "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn jacobi_fails_somewhere() {
        let (triple, defect) = first_jacobi_counterexample(2).expect("counterexample");
        assert!(!defect.is_zero());
        let recomputed = pathological_jacobi(
            &PathElement::basis(triple[0]),
            &PathElement::basis(triple[1]),
            &PathElement::basis(triple[2]),
        );
        assert_eq!(recomputed, defect);
    }
}
