use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PolyError;

/// Dense univariate polynomial over the integers.
///
/// Coefficients are stored in ascending degree order and the vector never
/// carries trailing zeros, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `x - root`
    pub fn linear(root: &BigInt) -> Self {
        Self::new(vec![-root.clone(), BigInt::one()])
    }

    /// `x^2 - c`
    pub fn even_quadratic(c: &BigInt) -> Self {
        Self::new(vec![-c.clone(), BigInt::zero(), BigInt::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Power of `x` dividing the polynomial (zero for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides out `x^k`; the caller guarantees `k <= valuation()`.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(k <= self.valuation() || self.is_zero());
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides by the content and normalizes the leading coefficient to be
    /// positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Exact quotient `self / divisor` over the integers.
    pub fn exact_divide(&self, divisor: &IntPoly) -> Result<Self, PolyError> {
        let (q, r) = self.div_rem_integral(divisor)?;
        if !r.is_zero() {
            return Err(PolyError::NotDivisible);
        }
        Ok(q)
    }

    /// Long division requiring every step's leading quotient to be integral.
    fn div_rem_integral(&self, divisor: &IntPoly) -> Result<(Self, Self), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::ZeroPolynomial)?;
        let lc = divisor.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> Result<Self, PolyError> {
        let dd = d.degree().ok_or(PolyError::ZeroPolynomial)?;
        let lc = d.leading().expect("nonzero divisor").clone();
        let mut r = self.clone();
        let mut steps = 0usize;
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let lr = r.leading().expect("nonzero").clone();
            // r <- lc * r - lr * x^(rd-dd) * d
            let scaled = r.scale(&lc);
            let sub = d.scale(&lr).shift_up(rd - dd);
            r = &scaled - &sub;
            steps += 1;
        }
        // Bring the multiplier up to the textbook exponent so that sign
        // bookkeeping in callers is exact.
        let wanted = match self.degree() {
            Some(n) if n >= dd => n - dd + 1,
            _ => 0,
        };
        if wanted > steps {
            r = r.scale(&lc.pow((wanted - steps) as u32));
        }
        Ok(r)
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    pub fn gcd(&self, other: &IntPoly) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).expect("b nonzero").primitive_part();
            a = b;
            b = r;
        }
        a
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    /// Sign of the polynomial at a rational point, evaluated without
    /// fractions: `sum c_i p^i q^(d-i)` has the sign of `p(p/q)` for `q > 0`.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        let Some(d) = self.degree() else {
            return Ordering::Equal;
        };
        let num = x.numer();
        let den = x.denom();
        let mut den_pow = Vec::with_capacity(d + 1);
        den_pow.push(BigInt::one());
        for i in 1..=d {
            let next = &den_pow[i - 1] * den;
            den_pow.push(next);
        }
        let mut acc = self.coeffs[d].clone();
        for i in (0..d).rev() {
            acc = acc * num + &self.coeffs[i] * &den_pow[d - i];
        }
        acc.cmp(&BigInt::zero())
    }

    /// `p(x + c)` by repeated synthetic division.
    pub fn taylor_shift(&self, c: &BigInt) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        if n < 2 || c.is_zero() {
            return self.clone();
        }
        for i in 0..n - 1 {
            for j in (i..n - 1).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        Self::new(a)
    }

    /// `q(x^2)`
    pub fn substitute_square(&self) -> Self {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() * 2];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c.clone();
        }
        Self::new(coeffs)
    }

    /// Splits `p(x) = x^h * q(x^2)`.
    ///
    /// Fails when the odd-degree coefficients left after removing `x^h` are
    /// not all zero, which is what a spectrum that is not symmetric about
    /// zero looks like.
    pub fn even_part(&self) -> Result<(usize, IntPoly), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let h = self.valuation();
        let rest = &self.coeffs[h..];
        if rest.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return Err(PolyError::SymmetryViolation);
        }
        let q = rest.iter().step_by(2).cloned().collect();
        Ok((h, IntPoly::new(q)))
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// Human-readable descending form, e.g. `x^4 - 3x^2 + 1`.
    pub fn to_pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if i == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push('x'),
                _ => out.push_str(&format!("x^{i}")),
            }
        }
        out
    }
}

impl fmt::Display for IntPoly {
    /// Ascending coefficient list, comma separated: `-1,0,1` is `x^2 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self.to_pretty())
    }
}

impl FromStr for IntPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PolyError::Parse("empty coefficient list".into()));
        }
        s.split(',')
            .map(|tok| {
                let tok = tok.trim().replace('\u{2212}', "-");
                tok.parse::<BigInt>()
                    .map_err(|_| PolyError::Parse(format!("bad coefficient {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(IntPoly::new)
    }
}

impl Add<&IntPoly> for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        IntPoly::new(coeffs)
    }
}

impl Sub<&IntPoly> for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&IntPoly> for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::new(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl std::iter::Product for IntPoly {
    fn product<I: Iterator<Item = IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::one(), |acc, p| &acc * &p)
    }
}

impl<'a> std::iter::Product<&'a IntPoly> for IntPoly {
    fn product<I: Iterator<Item = &'a IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::one(), |acc, p| &acc * p)
    }
}

impl serde::Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for IntPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn square_of_x2_minus_1() {
        let a = p(&[-1, 0, 1]);
        assert_eq!(&a * &a, p(&[1, 0, -2, 0, 1]));
    }

    #[test]
    fn exact_division() {
        assert_eq!(
            p(&[0, -1, 0, 1]).exact_divide(&IntPoly::x()).unwrap(),
            p(&[-1, 0, 1])
        );
        assert!(matches!(
            p(&[-1, 0, 1]).exact_divide(&p(&[-2, 1])),
            Err(PolyError::NotDivisible)
        ));
        assert!(matches!(
            p(&[1, 1]).exact_divide(&IntPoly::zero()),
            Err(PolyError::ZeroPolynomial)
        ));
    }

    #[test]
    fn non_integral_quotient_is_rejected() {
        // (2x + 2) / (2x) would need a rational quotient step
        assert!(p(&[1, 3]).exact_divide(&p(&[0, 2])).is_err());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[5, 0, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(a.scale(&BigInt::from(-6)).gcd(&a), a);
    }

    #[test]
    fn taylor_shift_examples() {
        // q(y - r) for the three documented cases
        assert_eq!(p(&[-1, 1]).taylor_shift(&BigInt::from(-3)), p(&[-4, 1]));
        assert_eq!(
            p(&[0, 0, 1]).taylor_shift(&BigInt::from(-1)),
            p(&[1, -2, 1])
        );
        assert_eq!(
            p(&[1, -3, 1]).taylor_shift(&BigInt::from(2)),
            p(&[-1, 1, 1])
        );
    }

    #[test]
    fn even_part_examples() {
        assert_eq!(
            p(&[0, 0, 0, -4, 0, 1]).even_part().unwrap(),
            (3, p(&[-4, 1]))
        );
        assert_eq!(
            p(&[-4, 0, 9, 0, -6, 0, 1]).even_part().unwrap(),
            (0, p(&[-4, 9, -6, 1]))
        );
        assert_eq!(
            p(&[1, 0, -3, 0, 1]).even_part().unwrap(),
            (0, p(&[1, -3, 1]))
        );
        assert!(matches!(
            p(&[1, 1, 1]).even_part(),
            Err(PolyError::SymmetryViolation)
        ));
    }

    #[test]
    fn sign_at_rationals() {
        let q = p(&[-5, 0, 1]);
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(q.sign_at(&r(223, 100)), Ordering::Less);
        assert_eq!(q.sign_at(&r(224, 100)), Ordering::Greater);
        assert_eq!(p(&[-4, 0, 1]).sign_at(&r(-2, 1)), Ordering::Equal);
    }

    #[test]
    fn text_forms() {
        let q = p(&[-1, 0, 1]);
        assert_eq!(q.to_string(), "-1,0,1");
        assert_eq!("\u{2212}1,0,1".parse::<IntPoly>().unwrap(), q);
        assert_eq!(q.to_pretty(), "x^2 - 1");
        assert_eq!(p(&[1, 0, -3, 0, 1]).to_pretty(), "x^4 - 3x^2 + 1");
        assert!("1,,2".parse::<IntPoly>().is_err());
    }

    #[test]
    fn pseudo_remainder_multiplier() {
        // prem(x^2, 2x + 1) = 2^2 * x^2 mod (2x+1) = 1
        let r = p(&[0, 0, 1]).pseudo_rem(&p(&[1, 2])).unwrap();
        assert_eq!(r, p(&[1]));
    }
}
