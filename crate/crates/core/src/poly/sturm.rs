//! Sturm chains and exact real-root counting over rational intervals.
//!
//! Counting with multiplicity goes through a ladder of square-free layers:
//! `P_1 = p`, `P_{i+1} = gcd(P_i, P_i')` and `Q_i = P_i / P_{i+1}`. A root of
//! multiplicity `m` in `p` is a simple root of exactly `Q_1, ..., Q_m`, so
//! summing the distinct counts of every layer gives the count with
//! multiplicity.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{IntPoly, PolyError};

/// Signed remainder sequence of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<IntPoly>,
}

impl SturmChain {
    /// Builds the chain `f, f', -rem(f, f'), ...` with every member reduced to
    /// its primitive part; positive rescaling keeps the sign pattern intact.
    pub fn new(f: &IntPoly) -> Self {
        let mut seq = vec![f.clone()];
        if f.is_constant() {
            return SturmChain { seq };
        }
        seq.push(f.derivative());
        loop {
            let n = seq.len();
            let (a, b) = (&seq[n - 2], &seq[n - 1]);
            if b.is_constant() {
                break;
            }
            let prem = a.pseudo_rem(b).expect("nonzero divisor");
            if prem.is_zero() {
                break;
            }
            // prem = lc(b)^(delta+1) * rem; we need -rem up to a positive factor.
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let lc_negative = b.leading().unwrap().is_negative();
            let flip = lc_negative && (delta + 1) % 2 == 1;
            let content = prem.content();
            let reduced = IntPoly::new(prem.coeffs().iter().map(|c| c / &content).collect());
            seq.push(if flip { reduced } else { -reduced });
        }
        SturmChain { seq }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    fn variations<I: Iterator<Item = Ordering>>(signs: I) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    fn sign_at_infinity(p: &IntPoly, positive: bool) -> Ordering {
        let lc_sign = p
            .leading()
            .map_or(Ordering::Equal, |c| c.cmp(&Zero::zero()));
        let odd = p.degree().unwrap_or(0) % 2 == 1;
        if positive || !odd {
            lc_sign
        } else {
            lc_sign.reverse()
        }
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(|p| Self::sign_at_infinity(p, false)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(|p| Self::sign_at_infinity(p, true)))
    }

    /// Number of distinct real roots `<= x`.
    pub fn count_le(&self, x: &BigRational) -> usize {
        self.variations_at_neg_inf() - self.variations_at(x)
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }

    /// Whether the chain's base polynomial vanishes at `x`.
    pub fn is_root(&self, x: &BigRational) -> bool {
        self.seq[0].sign_at(x) == Ordering::Equal
    }

    /// Distinct roots in the open interval `(lo, hi)`.
    pub fn count_open(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let upper = self.count_le(hi) - usize::from(self.is_root(hi));
        upper - self.count_le(lo)
    }
}

/// Root count in an open interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RootCount {
    pub with_multiplicity: usize,
    pub distinct: usize,
}

/// Multiplicity-aware root counter for a fixed nonzero polynomial.
#[derive(Clone, Debug)]
pub struct RootCounter {
    layers: Vec<SturmChain>,
}

impl RootCounter {
    pub fn new(p: &IntPoly) -> Result<Self, PolyError> {
        if p.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut layers = Vec::new();
        let mut current = p.primitive_part();
        while !current.is_constant() {
            let g = current.gcd(&current.derivative());
            let squarefree = current.exact_divide(&g)?;
            layers.push(SturmChain::new(&squarefree));
            current = g;
        }
        Ok(RootCounter { layers })
    }

    /// Real roots `<= x`, with multiplicity.
    pub fn count_le(&self, x: &BigRational) -> usize {
        self.layers.iter().map(|c| c.count_le(x)).sum()
    }

    /// Real roots strictly greater than `x`, with multiplicity.
    pub fn count_above(&self, x: &BigRational) -> usize {
        self.total() - self.count_le(x)
    }

    /// Number of real roots, with multiplicity.
    pub fn total(&self) -> usize {
        self.layers.iter().map(SturmChain::count_all).sum()
    }

    pub fn total_distinct(&self) -> usize {
        self.layers.first().map_or(0, SturmChain::count_all)
    }

    /// Multiplicity of `x` as a root (zero if it is not one).
    pub fn multiplicity_at(&self, x: &BigRational) -> usize {
        self.layers.iter().take_while(|c| c.is_root(x)).count()
    }

    pub fn count_open(&self, lo: &BigRational, hi: &BigRational) -> RootCount {
        RootCount {
            with_multiplicity: self.layers.iter().map(|c| c.count_open(lo, hi)).sum(),
            distinct: self.layers.first().map_or(0, |c| c.count_open(lo, hi)),
        }
    }
}

/// Exact number of real roots of `p` in the open interval `(lo, hi)`.
pub fn count_roots_open(
    p: &IntPoly,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<RootCount, PolyError> {
    if lo >= hi {
        return Err(PolyError::InvalidInterval);
    }
    Ok(RootCounter::new(p)?.count_open(lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn path4_has_two_roots_in_unit_interval() {
        let c = count_roots_open(&p(&[1, 0, -3, 0, 1]), &r(-1), &r(1)).unwrap();
        assert_eq!(c.with_multiplicity, 2);
    }

    #[test]
    fn endpoints_are_excluded() {
        let c = count_roots_open(&p(&[-1, 0, 1]), &r(-1), &r(1)).unwrap();
        assert_eq!(
            c,
            RootCount {
                with_multiplicity: 0,
                distinct: 0
            }
        );
    }

    #[test]
    fn multiplicity_versus_distinct() {
        let c = count_roots_open(&p(&[0, 0, 0, 1]), &r(-1), &r(1)).unwrap();
        assert_eq!(
            c,
            RootCount {
                with_multiplicity: 3,
                distinct: 1
            }
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(
            count_roots_open(&IntPoly::zero(), &r(0), &r(1)),
            Err(PolyError::ZeroPolynomial)
        ));
        assert!(matches!(
            count_roots_open(&p(&[1, 1]), &r(1), &r(1)),
            Err(PolyError::InvalidInterval)
        ));
    }

    #[test]
    fn negative_leading_coefficient() {
        // -(x-1)(x-2)(x-3)
        let f = -(&(&p(&[-1, 1]) * &p(&[-2, 1])) * &p(&[-3, 1]));
        let counter = RootCounter::new(&f).unwrap();
        assert_eq!(counter.total(), 3);
        assert_eq!(counter.count_open(&r(0), &r(3)).distinct, 2);
    }

    #[test]
    fn multiplicity_at_points() {
        // x^3 (x-1)^2 (x+2)
        let f = &(&p(&[0, 0, 0, 1]) * &p(&[1, -2, 1])) * &p(&[2, 1]);
        let counter = RootCounter::new(&f).unwrap();
        assert_eq!(counter.multiplicity_at(&r(0)), 3);
        assert_eq!(counter.multiplicity_at(&r(1)), 2);
        assert_eq!(counter.multiplicity_at(&r(-2)), 1);
        assert_eq!(counter.multiplicity_at(&r(5)), 0);
        assert_eq!(counter.total(), 6);
        assert_eq!(counter.count_above(&r(0)), 2);
    }
}
