//! Certified eigenvalue inequalities: the lower bound for trees with pendant
//! paths attached, and the squared-eigenvalue shift under adding leaves to
//! one colour class.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{char_poly, SpectraError};
use crate::poly::{integer, isolate_kth_largest, shift, IntPoly, RootCounter};
use crate::tree::{attach_leaves, attach_pendants, AttachSpec, Tree};

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Exact root count or divisibility.
    Exact,
    /// Comparison of certified isolating intervals.
    Interval,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CourantWeylVerdict {
    pub index: usize,
    pub copies: usize,
    pub holds: bool,
    pub method: Method,
}

fn open_bounds(
    p: &IntPoly,
    k: usize,
    width: &BigRational,
) -> Result<(BigRational, BigRational), SpectraError> {
    let iv = isolate_kth_largest(p, k, width)?;
    Ok(match iv.exact {
        Some(x) => (x.clone(), x),
        None => (iv.lo, iv.hi),
    })
}

/// For `T' = T(v_1, ..., v_k; s_1 >= ... >= s_k)` certifies
/// `lambda_i(T') >= sqrt(s_i + 1) + lambda_n(T)` for every `i <= k`.
///
/// The bound comes from splitting `A(T')` into `A(T)` plus `k` disjoint
/// spiders, the `i`-th with largest eigenvalue `sqrt(s_i + 1)`. Trees have
/// symmetric spectra, so `lambda_n(T) = -lambda_1(T)`.
pub fn courant_weyl_check(
    tree: &Tree,
    spec: &AttachSpec,
) -> Result<Vec<CourantWeylVerdict>, SpectraError> {
    let spec = spec.sorted_desc();
    let grown = attach_pendants(tree, &spec)?;
    let phi_big = char_poly(&grown);
    let (_, q_big) = phi_big.even_part()?;
    let big_counter = if q_big.is_constant() {
        None
    } else {
        Some(RootCounter::new(&q_big)?)
    };
    let phi = char_poly(tree);
    let mut out = Vec::new();
    for (i, &(_, s)) in spec.entries().iter().enumerate() {
        let index = i + 1;
        let threshold = integer(s as u64 + 1);
        // lambda_i(T')^2 >= s_i + 1 already implies the bound
        let at_least = big_counter.as_ref().map_or(0, |c| {
            c.count_above(&threshold) + c.multiplicity_at(&threshold)
        });
        if at_least >= index {
            out.push(CourantWeylVerdict {
                index,
                copies: s,
                holds: true,
                method: Method::Exact,
            });
            continue;
        }
        let radicand = IntPoly::new(vec![-BigInt::from(s + 1), BigInt::zero(), BigInt::one()]);
        let mut decided = None;
        for e in (4..=64u32).step_by(4) {
            let width = BigRational::new(BigInt::one(), BigInt::one() << e);
            let (a_lo, a_hi) = open_bounds(&phi_big, index, &width)?;
            let (b_lo, b_hi) = open_bounds(&radicand, 1, &width)?;
            let (c_lo, c_hi) = open_bounds(&phi, 1, &width)?;
            if a_lo >= &b_hi - &c_lo {
                decided = Some(true);
            } else if a_hi < &b_lo - &c_hi {
                decided = Some(false);
            }
            if decided.is_some() {
                break;
            }
        }
        let holds = decided.ok_or(SpectraError::PrecisionExhausted(64))?;
        out.push(CourantWeylVerdict {
            index,
            copies: s,
            holds,
            method: Method::Interval,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftVerdict {
    pub holds: bool,
    /// Number of positive eigenvalues of the original tree.
    pub positive: usize,
    pub method: Method,
    /// Even part of the grown tree divided by the shifted even part of the
    /// original, when that division is exact.
    pub cofactor: Option<IntPoly>,
}

/// Adds `r` leaves to every vertex of `class` (one colour class of the
/// bipartition) and certifies that the `k` largest squared eigenvalues all
/// move up by exactly `r`, `k` being the number of positive eigenvalues.
pub fn squared_shift_check(
    tree: &Tree,
    class: &[usize],
    r: usize,
) -> Result<ShiftVerdict, SpectraError> {
    let mut wanted: Vec<usize> = class.to_vec();
    wanted.sort_unstable();
    let [c0, c1] = tree.bipartition();
    if wanted != c0 && wanted != c1 {
        return Err(SpectraError::InvalidBipartitionClass);
    }
    let (_, q) = char_poly(tree).even_part()?;
    let positive = q.degree().unwrap_or(0);
    if r == 0 {
        return Ok(ShiftVerdict {
            holds: true,
            positive,
            method: Method::Exact,
            cofactor: Some(IntPoly::one()),
        });
    }
    let grown = attach_leaves(tree, class, r)?;
    let (_, q_big) = char_poly(&grown).even_part()?;
    let shifted = shift(&q, &BigInt::from(r));
    if let Ok(cofactor) = q_big.exact_divide(&shifted) {
        // the remaining squared roots must not exceed r, which lies below
        // every shifted root
        let extra_above = if cofactor.is_constant() {
            0
        } else {
            RootCounter::new(&cofactor)?.count_above(&integer(r as u64))
        };
        if extra_above == 0 {
            return Ok(ShiftVerdict {
                holds: true,
                positive,
                method: Method::Exact,
                cofactor: Some(cofactor),
            });
        }
    }
    let holds = match_largest_roots(&shifted, &q_big, positive)?;
    Ok(ShiftVerdict {
        holds,
        positive,
        method: Method::Interval,
        cofactor: None,
    })
}

/// Whether the `k` largest roots of `a` and `b` coincide (with
/// multiplicity), certified through their common factor.
fn match_largest_roots(a: &IntPoly, b: &IntPoly, k: usize) -> Result<bool, SpectraError> {
    if k == 0 {
        return Ok(true);
    }
    let ca = RootCounter::new(a)?;
    let cb = RootCounter::new(b)?;
    if cb.total() < k || ca.total() < k {
        return Ok(false);
    }
    let common = a.gcd(b);
    if common.is_constant() {
        return Ok(false);
    }
    let cg = RootCounter::new(&common)?;
    for i in 1..=k {
        let mut matched = false;
        for e in (4..=64u32).step_by(4) {
            let width = BigRational::new(BigInt::one(), BigInt::one() << e);
            let ia = isolate_kth_largest(a, i, &width)?;
            let ib = isolate_kth_largest(b, i, &width)?;
            if ib.hi <= ia.lo || ia.hi <= ib.lo {
                return Ok(false);
            }
            let (lo, hi) = (
                ia.lo.clone().max(ib.lo.clone()),
                ia.hi.clone().min(ib.hi.clone()),
            );
            if ia.certified
                && ib.certified
                && cg.count_open(&lo, &hi).distinct == 1
                && ca.count_open(&lo, &hi).distinct == 1
                && cb.count_open(&lo, &hi).distinct == 1
            {
                matched = true;
                break;
            }
        }
        if !matched {
            return Err(SpectraError::PrecisionExhausted(64));
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{path, random_tree, star};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn spec(entries: Vec<(usize, usize)>) -> AttachSpec {
        AttachSpec::new(entries).unwrap()
    }

    #[test]
    fn courant_weyl_examples() {
        let v = courant_weyl_check(&path(1), &spec(vec![(0, 3)])).unwrap();
        assert!(v.iter().all(|c| c.holds));
        let v = courant_weyl_check(&path(2), &spec(vec![(0, 1)])).unwrap();
        assert!(v[0].holds);
        let base = path(6);
        for s in 1..=10 {
            let v = courant_weyl_check(&base, &spec(vec![(2, s), (4, 1)])).unwrap();
            assert_eq!(v.len(), 2);
            assert!(v.iter().all(|c| c.holds), "s={s}");
        }
    }

    #[test]
    fn courant_weyl_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..30 {
            let t = random_tree(rng.gen_range(1..=8), &mut rng);
            let k = rng.gen_range(1..=t.order().min(3));
            let mut vs: Vec<usize> = (0..t.order()).collect();
            vs.truncate(k);
            let entries = vs.into_iter().map(|v| (v, rng.gen_range(1..=4))).collect();
            let v = courant_weyl_check(&t, &spec(entries)).unwrap();
            assert!(v.iter().all(|c| c.holds));
        }
    }

    #[test]
    fn shift_examples() {
        // P2 with three leaves on one end is K_{1,4}
        let v = squared_shift_check(&path(2), &[0], 3).unwrap();
        assert!(v.holds);
        assert_eq!(v.method, Method::Exact);
        assert_eq!(v.cofactor, Some(IntPoly::one()));
        let v = squared_shift_check(&path(3), &[0, 2], 2).unwrap();
        assert!(v.holds);
        assert_eq!(v.cofactor, Some(IntPoly::from_i64s(&[-2, 1])));
        assert!(squared_shift_check(&path(2), &[0], 0).unwrap().holds);
        assert_eq!(
            squared_shift_check(&path(3), &[0, 1], 1),
            Err(SpectraError::InvalidBipartitionClass)
        );
    }

    #[test]
    fn shift_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..30 {
            let t = random_tree(rng.gen_range(2..=10), &mut rng);
            let side = t.bipartition()[rng.gen_range(0..2)].clone();
            let v = squared_shift_check(&t, &side, rng.gen_range(1..=6)).unwrap();
            assert!(v.holds, "{t:?}");
        }
        assert!(squared_shift_check(&star(3), &[0], 2).unwrap().holds);
    }

    #[test]
    fn largest_root_matching() {
        let a = IntPoly::from_i64s(&[-4, 0, 1]);
        let b = &a * &IntPoly::from_i64s(&[-1, 1]);
        assert!(match_largest_roots(&a, &b, 1).unwrap());
        let c = IntPoly::from_i64s(&[-5, 0, 1]);
        assert!(!match_largest_roots(&a, &c, 1).unwrap());
    }
}
