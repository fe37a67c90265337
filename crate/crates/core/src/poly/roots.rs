use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::sturm::RootCounter;
use super::{IntPoly, PolyError};

/// Integer roots of a monic polynomial together with the part of it that has
/// no integer roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    /// Integer root to multiplicity.
    pub integer_roots: BTreeMap<BigInt, usize>,
    /// Monic cofactor with no integer roots.
    pub residual: IntPoly,
    pub is_integral: bool,
    /// Multiplicity of zero.
    pub nullity: usize,
}

impl SpectrumSummary {
    pub fn multiplicity(&self, root: &BigInt) -> usize {
        self.integer_roots.get(root).copied().unwrap_or(0)
    }

    /// `prod (x - k)^m * residual`
    pub fn reassemble(&self) -> IntPoly {
        self.integer_roots
            .iter()
            .map(|(k, &m)| IntPoly::linear(k).pow(m as u32))
            .product::<IntPoly>()
            * &self.residual
    }

    /// Factored form grouping symmetric pairs, largest root first, e.g.
    /// `x*(x^2-4)*(x^2-1)^2`.
    pub fn factored(&self) -> String {
        let mut parts = Vec::new();
        let power = |base: String, m: usize| {
            if m == 1 {
                base
            } else {
                format!("{base}^{m}")
            }
        };
        if self.nullity > 0 {
            parts.push(power("x".into(), self.nullity));
        }
        for (k, &m) in self
            .integer_roots
            .iter()
            .rev()
            .filter(|(k, _)| k.is_positive())
        {
            let neg = -k.clone();
            let m_neg = self.multiplicity(&neg);
            let paired = m.min(m_neg);
            if paired > 0 {
                parts.push(power(format!("(x^2-{})", k * k), paired));
            }
            if m > paired {
                parts.push(power(format!("(x-{k})"), m - paired));
            }
            if m_neg > paired {
                parts.push(power(format!("(x+{k})"), m_neg - paired));
            }
        }
        for (k, &m) in self.integer_roots.iter().filter(|(k, _)| k.is_negative()) {
            if self.multiplicity(&(-k.clone())) == 0 {
                parts.push(power(format!("(x+{})", -k.clone()), m));
            }
        }
        if !self.residual.is_constant() {
            parts.push(format!("({})", self.residual.to_pretty()));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Upper bound on the absolute value of every root of a monic polynomial,
/// `2 * max |a_(d-k)|^(1/k)` rounded up.
fn root_magnitude_bound(p: &IntPoly) -> BigInt {
    let d = p.degree().unwrap_or(0);
    let mut best = BigInt::zero();
    for k in 1..=d {
        let a = p.coeff(d - k).abs();
        if a.is_zero() {
            continue;
        }
        let root = a.nth_root(k as u32) + BigInt::one();
        if root > best {
            best = root;
        }
    }
    best * 2
}

/// Extracts every integer root with its multiplicity by trial exact division.
pub fn integer_roots(p: &IntPoly) -> Result<SpectrumSummary, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if !p.is_monic() {
        return Err(PolyError::NotMonic);
    }
    let nullity = p.valuation();
    let mut rest = p.shift_down(nullity);
    let mut roots = BTreeMap::new();
    if nullity > 0 {
        roots.insert(BigInt::zero(), nullity);
    }
    let constant = rest.coeff(0).abs();
    let bound = root_magnitude_bound(&rest).min(constant.clone());

    let mut try_candidate = |k: BigInt, rest: &mut IntPoly| {
        for cand in [k.clone(), -k] {
            let mut mult = 0;
            while !rest.is_constant() && rest.eval(&cand).is_zero() {
                *rest = rest
                    .exact_divide(&IntPoly::linear(&cand))
                    .expect("x - root divides after a zero evaluation");
                mult += 1;
            }
            if mult > 0 {
                roots.insert(cand, mult);
            }
        }
    };

    // Divisor enumeration is cheaper than a scan whenever sqrt(|c|) is
    // below the magnitude bound.
    let small_constant = constant
        .to_u64()
        .filter(|c| BigInt::from(c.isqrt() + 1) < bound);
    if let Some(c) = small_constant {
        let mut divisors = Vec::new();
        let mut i = 1u64;
        while i.saturating_mul(i) <= c {
            if c % i == 0 {
                divisors.push(i);
                if i != c / i {
                    divisors.push(c / i);
                }
            }
            i += 1;
        }
        divisors.sort_unstable();
        for d in divisors
            .into_iter()
            .map(BigInt::from)
            .filter(|d| *d <= bound)
        {
            try_candidate(d, &mut rest);
        }
    } else {
        let mut k = BigInt::one();
        while k <= bound && !rest.is_constant() {
            if (&constant % &k).is_zero() {
                try_candidate(k.clone(), &mut rest);
            }
            k += 1;
        }
    }
    let is_integral = rest.is_constant();
    Ok(SpectrumSummary {
        integer_roots: roots,
        residual: rest,
        is_integral,
        nullity,
    })
}

/// Open interval around one real root of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    /// Rank of the root, 1 for the largest, counted with multiplicity.
    pub index: usize,
    /// Exactly one distinct root lies in `(lo, hi)`.
    pub certified: bool,
    /// The root itself when it was detected to be an integer.
    pub exact: Option<BigRational>,
}

impl IsolatingInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo < x && x < &self.hi
    }
}

/// `1 + max |c_i / c_d|`; every real root lies strictly inside `(-B, B)`.
pub fn cauchy_bound(p: &IntPoly) -> BigRational {
    let lc = p.leading().cloned().unwrap_or_else(BigInt::one).abs();
    let max = p.coeffs()[..p.coeffs().len().saturating_sub(1)]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    BigRational::one() + BigRational::new(max, lc)
}

fn pinch(
    counter: &RootCounter,
    root: BigRational,
    index: usize,
    width: &BigRational,
) -> IsolatingInterval {
    let two = BigRational::from_integer(2.into());
    let mut half = width / &two;
    loop {
        let lo = &root - &half;
        let hi = &root + &half;
        if counter.count_open(&lo, &hi).distinct == 1 {
            return IsolatingInterval {
                lo,
                hi,
                index,
                certified: true,
                exact: Some(root),
            };
        }
        half /= &two;
    }
}

/// Certified interval of width at most `width` around the `k`-th largest real
/// root of `p` (roots ranked with multiplicity).
///
/// Integer roots are detected up front and returned as a pinch around the
/// exact value; everything else is found by Sturm-guided bisection starting
/// from the Cauchy bound.
pub fn isolate_kth_largest(
    p: &IntPoly,
    k: usize,
    width: &BigRational,
) -> Result<IsolatingInterval, PolyError> {
    if !width.is_positive() {
        return Err(PolyError::InvalidInterval);
    }
    let counter = RootCounter::new(p)?;
    let available = counter.total();
    if k == 0 || k > available {
        return Err(PolyError::RootIndexOutOfRange { k, available });
    }
    if p.is_monic() {
        let summary = integer_roots(p)?;
        for root in summary.integer_roots.keys() {
            let x = BigRational::from_integer(root.clone());
            let above = counter.count_above(&x);
            let mult = counter.multiplicity_at(&x);
            if above < k && k <= above + mult {
                return Ok(pinch(&counter, x, k, width));
            }
        }
    }
    let bound = cauchy_bound(p);
    let mut lo = -bound.clone();
    let mut hi = bound;
    let two = BigRational::from_integer(2.into());
    loop {
        if &(&hi - &lo) <= width && counter.count_open(&lo, &hi).distinct == 1 {
            return Ok(IsolatingInterval {
                lo,
                hi,
                index: k,
                certified: true,
                exact: None,
            });
        }
        let mid = (&lo + &hi) / &two;
        let above = counter.count_above(&mid);
        if above >= k {
            lo = mid;
        } else if above + counter.multiplicity_at(&mid) >= k {
            return Ok(pinch(&counter, mid, k, width));
        } else {
            hi = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn star_of_order_five() {
        // x^3 (x^2 - 4)
        let s = integer_roots(&p(&[0, 0, 0, -4, 0, 1])).unwrap();
        assert!(s.is_integral);
        assert_eq!(s.nullity, 3);
        assert_eq!(s.multiplicity(&2.into()), 1);
        assert_eq!(s.multiplicity(&(-2).into()), 1);
        assert_eq!(s.factored(), "x^3*(x^2-4)");
    }

    #[test]
    fn path4_has_no_integer_roots() {
        let f = p(&[1, 0, -3, 0, 1]);
        let s = integer_roots(&f).unwrap();
        assert!(!s.is_integral);
        assert!(s.integer_roots.is_empty());
        assert_eq!(s.residual, f);
    }

    #[test]
    fn spider_factorization() {
        // x (x^2 - 4) (x^2 - 1)^2
        let f = &(&IntPoly::x() * &p(&[-4, 0, 1])) * &p(&[-1, 0, 1]).pow(2);
        let s = integer_roots(&f).unwrap();
        assert!(s.is_integral);
        assert_eq!(s.multiplicity(&1.into()), 2);
        assert_eq!(s.multiplicity(&(-1).into()), 2);
        assert_eq!(s.multiplicity(&0.into()), 1);
        assert_eq!(s.reassemble(), f);
        assert_eq!(s.factored(), "x*(x^2-4)*(x^2-1)^2");
    }

    #[test]
    fn non_monic_rejected() {
        assert!(matches!(
            integer_roots(&p(&[1, 2])),
            Err(PolyError::NotMonic)
        ));
    }

    #[test]
    fn isolate_rational_and_irrational() {
        let i = isolate_kth_largest(&p(&[-4, 0, 1]), 1, &q(1, 8)).unwrap();
        assert!(i.contains(&q(2, 1)));
        assert_eq!(i.exact, Some(q(2, 1)));
        assert!(i.width() <= q(1, 8));

        let i = isolate_kth_largest(&p(&[-1, 0, 1]), 2, &q(1, 8)).unwrap();
        assert_eq!(i.exact, Some(q(-1, 1)));

        let i = isolate_kth_largest(&p(&[-5, 0, 1]), 1, &q(1, 64)).unwrap();
        assert!(i.certified);
        assert!(i.width() <= q(1, 64));
        assert!(&i.lo * &i.lo < q(5, 1) && &i.hi * &i.hi > q(5, 1), "{i:?}");
        // any interval of width 1/256 around sqrt(5) = 2.2360... sits in (2.23, 2.24)
        let i = isolate_kth_largest(&p(&[-5, 0, 1]), 1, &q(1, 256)).unwrap();
        assert!(i.lo > q(223, 100) && i.hi < q(224, 100), "{i:?}");
    }

    #[test]
    fn isolate_ranks_with_multiplicity() {
        // roots 3, 1, 1, -2
        let f = &(&p(&[-3, 1]) * &p(&[-1, 1]).pow(2)) * &p(&[2, 1]);
        for (k, want) in [(1, 3), (2, 1), (3, 1), (4, -2)] {
            let i = isolate_kth_largest(&f, k, &q(1, 4)).unwrap();
            assert_eq!(i.exact, Some(q(want, 1)), "k={k}");
        }
        assert!(matches!(
            isolate_kth_largest(&f, 5, &q(1, 4)),
            Err(PolyError::RootIndexOutOfRange { k: 5, available: 4 })
        ));
    }
}
