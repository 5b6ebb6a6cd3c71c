use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::{divide_exact, gcd};
use super::poly::{unify_owned, MultiPoly, Vars};

/// Quotient of polynomials in lowest terms.
///
/// The denominator is always a primitive integer polynomial with positive
/// graded-lex leading coefficient, so equal functions compare equal
/// structurally.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = unify_owned(&num, &den);
        if num.is_zero() {
            let v = num.vars().clone();
            return Self::from_poly(MultiPoly::zero(&v));
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            (
                divide_exact(&num, &g).unwrap(),
                divide_exact(&den, &g).unwrap(),
            )
        };
        debug_assert!(
            den.is_constant() || gcd(&num, &den).is_constant(),
            "rational function not in lowest terms"
        );
        let (c, den) = den.primitive_part();
        RationalFunction {
            num: num.scale(&c.recip()),
            den,
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.vars());
        RationalFunction { num: p, den }
    }

    pub fn constant(vars: &Vars, c: BigRational) -> Self {
        Self::from_poly(MultiPoly::constant(vars, c))
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The polynomial, if the denominator is constant.
    pub fn as_poly(&self) -> Option<MultiPoly> {
        if self.den.is_constant() {
            Some(self.num.scale(&self.den.constant_term().recip()))
        } else {
            None
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.num.is_zero(), "reciprocal of zero");
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    /// Value at a point, or `None` where the denominator vanishes.
    pub fn eval(&self, values: &[BigRational]) -> Option<BigRational> {
        let d = self.den.eval(values);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(values) / d)
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Substitute rational functions for each variable.
    pub fn compose(&self, images: &[RationalFunction]) -> Self {
        let n = eval_poly_rf(&self.num, images);
        let d = eval_poly_rf(&self.den, images);
        &n / &d
    }
}

fn eval_poly_rf(p: &MultiPoly, images: &[RationalFunction]) -> RationalFunction {
    let target = images[0].vars().clone();
    let mut acc = RationalFunction::from_poly(MultiPoly::zero(&target));
    for (m, c) in p.terms() {
        let mut t = RationalFunction::constant(&target, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                t = &t * &images[i].pow(e as u32);
            }
        }
        acc = &acc + &t;
    }
    acc
}

impl From<MultiPoly> for RationalFunction {
    fn from(p: MultiPoly) -> Self {
        Self::from_poly(p)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &'a RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &'a RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &'a RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            let (z, _) = unify_owned(&self.num, &rhs.num);
            return RationalFunction::from_poly(MultiPoly::zero(z.vars()));
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &'a RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero");
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.constant_term().is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &MultiPoly| {
            if p.len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::vars;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &vars(&["w", "x"])).unwrap()
    }

    #[test]
    fn lowest_terms_and_normal_denominator() {
        let r = RationalFunction::new(p("w^2 - 1"), p("-2*w + 2"));
        assert_eq!(r.numerator(), &p("-1/2*w - 1/2"));
        assert_eq!(r.denominator(), &p("1"));
        let s = RationalFunction::new(p("1"), p("-4*w + 2"));
        assert_eq!(s.denominator(), &p("2*w - 1"));
        assert_eq!(s.numerator(), &p("-1/2"));
    }

    #[test]
    fn field_operations() {
        let a = RationalFunction::new(p("1"), p("w - 1"));
        let b = RationalFunction::new(p("w"), p("w - 1"));
        assert_eq!(&b - &a, RationalFunction::from_poly(p("1")));
        let c = &a * &RationalFunction::from_poly(p("w^2 - 1"));
        assert_eq!(c.as_poly(), Some(p("w + 1")));
        assert_eq!(&(&a / &b) * &b, a);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(a.eval(&[half.clone(), half]), Some(BigRational::from_integer((-2).into())));
        assert_eq!(a.eval(&[BigRational::one(), BigRational::zero()]), None);
    }

    #[test]
    fn display() {
        let r = RationalFunction::new(p("w^2"), p("2*w - 2"));
        assert_eq!(r.to_string(), "1/2*w^2/(w - 1)");
    }
}
