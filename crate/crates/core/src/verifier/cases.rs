//! The trees that arise when a vertex `v` is added back to a nullity-2
//! forest `T - v` in the nullity-3 classification argument, and the
//! characteristic polynomials claimed for them.

use num_bigint::BigInt;

use crate::poly::IntPoly;
use crate::tree::{double_star, path, s_tree, Tree};

/// Disjoint union of `parts` after a fresh vertex 0; returns the edges and
/// the offset of each part.
fn union_with_hub(parts: &[Tree]) -> (usize, Vec<(usize, usize)>, Vec<usize>) {
    let mut edges = Vec::new();
    let mut offsets = Vec::new();
    let mut next = 1;
    for t in parts {
        offsets.push(next);
        edges.extend(t.edges().into_iter().map(|(u, w)| (u + next, w + next)));
        next += t.order();
    }
    (next, edges, offsets)
}

/// Joins a new vertex to `anchors[i]` in `parts[i]` and to one end of each of
/// `r` further copies of `P_2`.
fn hub_join(parts: &[(Tree, usize)], r: usize) -> Tree {
    let mut trees: Vec<Tree> = parts.iter().map(|(t, _)| t.clone()).collect();
    trees.extend(std::iter::repeat_with(|| path(2)).take(r));
    let (order, mut edges, offsets) = union_with_hub(&trees);
    for (i, &off) in offsets.iter().enumerate() {
        let anchor = parts.get(i).map_or(0, |&(_, a)| a);
        edges.push((0, off + anchor));
    }
    Tree::from_edges(order, &edges).expect("hub join is a tree")
}

/// `v_1`, the end of the first leg of `S(p)` and a vertex of degree 2.
const SPIDER_LEG_MIDDLE: usize = 0;

/// Case (i): `v` joined to a leg middle of `S(p)`, a leg middle of `S(q)`
/// and one end of each of `r` copies of `K_2`.
pub fn case_i_tree(p: usize, q: usize, r: usize) -> Tree {
    let sp = s_tree(&[p]).expect("nonempty");
    let sq = s_tree(&[q]).expect("nonempty");
    hub_join(&[(sp, SPIDER_LEG_MIDDLE), (sq, SPIDER_LEG_MIDDLE)], r)
}

/// Degree-2 vertex of `S(p, q)` next to which a leaf is added in the first
/// alternative of case (ii): `v_1`, the end of the `p`-side spine leg. With
/// a leaf on the `q` side the polynomial is the same with `p` and `q`
/// swapped.
pub const CASE_II_LEG_MIDDLE: usize = 0;

/// Case (ii), first alternative with `r = 0`: `S(p, q)` plus a leaf on a
/// leg middle.
pub fn case_ii_leaf_tree(p: usize, q: usize) -> Tree {
    let base = s_tree(&[p, q]).expect("nonempty");
    hub_join(&[(base, CASE_II_LEG_MIDDLE)], 0)
}

/// Case (ii), second alternative: `v` joined to `v_3`, the common neighbour
/// of the two central vertices of `S(p, q)`, and to `r` copies of `K_2`.
pub fn case_ii_hub_tree(p: usize, q: usize, r: usize) -> Tree {
    let base = s_tree(&[p, q]).expect("nonempty");
    hub_join(&[(base, 2)], r)
}

/// Case (iii): `v` joined to a degree-3 vertex of the double star `D(2, 2)`
/// and to `r` copies of `K_2`.
pub fn case_iii_tree(r: usize) -> Tree {
    let y = double_star(2, 2);
    let centre = (0..y.order())
        .find(|&v| y.degree(v) == 3)
        .expect("D(2,2) has centres");
    hub_join(&[(y, centre)], r)
}

fn big(n: usize) -> BigInt {
    BigInt::from(n)
}

fn xsq_minus(c: i64) -> IntPoly {
    IntPoly::even_quadratic(&c.into())
}

fn x_power(k: usize) -> IntPoly {
    IntPoly::monomial(1.into(), k)
}

/// `(y - 2)(y - p - 3)(y - q - 3) - 2y + q + 5`
pub fn case_ii_leaf_cubic(p: usize, q: usize) -> IntPoly {
    let y = |c: i64| IntPoly::from_i64s(&[-c, 1]);
    let (p, q) = (p as i64, q as i64);
    &(&(&y(2) * &y(p + 3)) * &y(q + 3)) + &IntPoly::from_i64s(&[q + 5, -2])
}

/// `x^3 (x^2 - 1)^(p+q) ((x^2-2)(x^2-p-3)(x^2-q-3) - 2x^2 + q + 5)`
pub fn case_ii_leaf_formula(p: usize, q: usize) -> IntPoly {
    &(&x_power(3) * &xsq_minus(1).pow((p + q) as u32))
        * &case_ii_leaf_cubic(p, q).substitute_square()
}

/// `g(y) = (y - a)(y - b)(y - c) - 3y + a + b + c - 2`
pub fn case_ii_hub_cubic(a: &BigInt, b: &BigInt, c: &BigInt) -> IntPoly {
    let lin = |k: &BigInt| IntPoly::linear(k);
    let tail = IntPoly::new(vec![a + b + c - 2, (-3).into()]);
    &(&(&lin(a) * &lin(b)) * &lin(c)) + &tail
}

/// `x^3 (x^2 - 1)^(a+b+c-8) g(x^2)` with `a = p + 3`, `b = q + 3`,
/// `c = r + 2`.
pub fn case_ii_hub_formula(p: usize, q: usize, r: usize) -> IntPoly {
    let (a, b, c) = (big(p + 3), big(q + 3), big(r + 2));
    let e = (p + q + r) as u32;
    &(&x_power(3) * &xsq_minus(1).pow(e)) * &case_ii_hub_cubic(&a, &b, &c).substitute_square()
}

/// `x^3 (x^2 - 1)^r (x^4 - (r + 6) x^2 + 4r + 6)`
pub fn case_iii_formula(r: usize) -> IntPoly {
    let r = r as i64;
    let quartic = IntPoly::from_i64s(&[4 * r + 6, 0, -(r + 6), 0, 1]);
    &(&x_power(3) * &xsq_minus(1).pow(r as u32)) * &quartic
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{char_poly, nullity_poly};

    #[test]
    fn case_trees_have_nullity_three() {
        for (p, q, r) in [(0, 0, 0), (1, 2, 0), (2, 1, 3), (0, 4, 1)] {
            for t in [
                case_i_tree(p, q, r),
                case_ii_leaf_tree(p, q),
                case_ii_hub_tree(p, q, r),
                case_iii_tree(r),
            ] {
                assert_eq!(nullity_poly(&t), 3, "{t:?}");
            }
        }
    }

    #[test]
    fn case_i_is_an_s_tree() {
        for (p, q, r) in [(0, 0, 0), (1, 2, 0), (3, 1, 2)] {
            assert!(case_i_tree(p, q, r).is_isomorphic(&s_tree(&[p, r, q]).unwrap()));
        }
    }

    #[test]
    fn formulas_match() {
        for p in 0..4 {
            for q in 0..4 {
                assert_eq!(
                    char_poly(&case_ii_leaf_tree(p, q)),
                    case_ii_leaf_formula(p, q),
                    "p={p} q={q}"
                );
                for r in 0..3 {
                    assert_eq!(
                        char_poly(&case_ii_hub_tree(p, q, r)),
                        case_ii_hub_formula(p, q, r)
                    );
                }
            }
        }
        for r in 0..5 {
            assert_eq!(char_poly(&case_iii_tree(r)), case_iii_formula(r));
        }
    }
}
