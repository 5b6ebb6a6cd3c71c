//! Signed triangle area over exact coordinate domains.

use num_rational::BigRational;

use super::poly::MultiPoly;
use super::ratfun::RationalFunction;

/// A point with exact rational coordinates.
pub type QPoint = (BigRational, BigRational);

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// Half the determinant of `[[1,1,1],[x1,x2,x3],[y1,y2,y3]]`.
pub fn triangle_area(a: &QPoint, b: &QPoint, c: &QPoint) -> BigRational {
    ((&b.0 - &a.0) * (&c.1 - &a.1) - (&c.0 - &a.0) * (&b.1 - &a.1)) * half()
}

/// Signed area of a triangle with polynomial coordinates.
pub fn triangle_area_poly(
    a: &(MultiPoly, MultiPoly),
    b: &(MultiPoly, MultiPoly),
    c: &(MultiPoly, MultiPoly),
) -> MultiPoly {
    let d = &(&(&b.0 - &a.0) * &(&c.1 - &a.1)) - &(&(&c.0 - &a.0) * &(&b.1 - &a.1));
    d.scale(&half())
}

/// Signed area of a triangle with rational-function coordinates.
pub fn triangle_area_rf(
    a: &(RationalFunction, RationalFunction),
    b: &(RationalFunction, RationalFunction),
    c: &(RationalFunction, RationalFunction),
) -> RationalFunction {
    let d = &(&(&b.0 - &a.0) * &(&c.1 - &a.1)) - &(&(&c.0 - &a.0) * &(&b.1 - &a.1));
    let h = RationalFunction::constant(d.vars(), half());
    &d * &h
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn pt(x: i64, y: i64) -> QPoint {
        (BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    #[test]
    fn unit_examples() {
        assert_eq!(triangle_area(&pt(0, 0), &pt(1, 0), &pt(0, 1)), half());
        assert_eq!(triangle_area(&pt(0, 0), &pt(0, 1), &pt(1, 0)), -half());
        assert!(triangle_area(&pt(0, 0), &pt(1, 1), &pt(2, 2)).is_zero());
    }

    #[test]
    fn polynomial_coordinates() {
        let v = crate::algebra::vars(&["x", "y"]);
        let c = |s: &str| MultiPoly::parse(s, &v).unwrap();
        let a = triangle_area_poly(&(c("0"), c("0")), &(c("1"), c("0")), &(c("x"), c("y")));
        assert_eq!(a.to_string(), "1/2*y");
    }
}
