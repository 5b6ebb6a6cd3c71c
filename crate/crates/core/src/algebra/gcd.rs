//! Multivariate gcd over Z (recursive primitive PRS) and exact division.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::{unify_owned, MultiPoly};

/// Coefficients of `p` viewed as a univariate polynomial in `var`, keyed by
/// the exponent of `var`. Coefficients keep the full variable list.
pub fn coefficients_in(p: &MultiPoly, var: usize) -> BTreeMap<u16, MultiPoly> {
    let mut out: BTreeMap<u16, MultiPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let e = m.exp(var);
        let mut rest = m.clone();
        rest.set_exp(var, 0);
        out.entry(e)
            .or_insert_with(|| MultiPoly::zero(p.vars()))
            .add_term(rest, c.clone());
    }
    out
}

fn var_power(p: &MultiPoly, var: usize, e: u16) -> Monomial {
    let mut m = Monomial::one(p.nvars());
    m.set_exp(var, e);
    m
}

/// Exact quotient `a / b`, or `None` if `b` does not divide `a`.
pub fn divide_exact(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    assert!(!b.is_zero(), "division by zero polynomial");
    let (a, b) = unify_owned(a, b);
    let (lm, lc) = {
        let (m, c) = b.leading_term().unwrap();
        (m.clone(), c.clone())
    };
    let mut rem = a;
    let mut quot = MultiPoly::zero(rem.vars());
    while let Some((m, c)) = rem.leading_term() {
        let q = lm.quotient_of(m)?;
        let k = c / &lc;
        rem = &rem - &b.mul_monomial(&q, &k);
        quot.add_term(q, k);
    }
    Some(quot)
}

fn first_var(p: &MultiPoly) -> Option<usize> {
    p.used_vars().first().copied()
}

/// Content of `p` with respect to `var`: the gcd of its coefficients.
pub fn content_in(p: &MultiPoly, var: usize) -> MultiPoly {
    let mut g = MultiPoly::zero(p.vars());
    for (_, c) in coefficients_in(p, var) {
        g = gcd(&g, &c);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

fn pseudo_remainder(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let db = b.degree_in(var);
    let lcb = coefficients_in(b, var).remove(&db).unwrap();
    let mut r = a.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let dr = r.degree_in(var);
        if dr < db {
            return r;
        }
        let lcr = coefficients_in(&r, var).remove(&dr).unwrap();
        let shift = var_power(&r, var, dr - db);
        let t = (&lcr * b).mul_monomial(&shift, &BigRational::one());
        r = &(&lcb * &r) - &t;
    }
}

fn primitive_in(p: &MultiPoly, var: usize) -> MultiPoly {
    let c = content_in(p, var);
    let q = divide_exact(p, &c).expect("content divides");
    q.primitive_part().1
}

/// Greatest common divisor, normalized to a primitive integer polynomial
/// with positive graded-lex leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.primitive_part().1;
    }
    if b.is_zero() {
        return a.primitive_part().1;
    }
    let (a, b) = unify_owned(a, b);
    let a = a.primitive_part().1;
    let b = b.primitive_part().1;
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.vars());
    }
    if a == b {
        return a;
    }
    let va = first_var(&a).unwrap();
    let vb = first_var(&b).unwrap();
    let var = va.min(vb);
    if a.degree_in(var) == 0 {
        return gcd(&a, &content_in(&b, var));
    }
    if b.degree_in(var) == 0 {
        return gcd(&content_in(&a, var), &b);
    }
    let ca = content_in(&a, var);
    let cb = content_in(&b, var);
    let c = gcd(&ca, &cb);
    let mut p = divide_exact(&a, &ca).unwrap().primitive_part().1;
    let mut q = divide_exact(&b, &cb).unwrap().primitive_part().1;
    if p.degree_in(var) < q.degree_in(var) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        let r = pseudo_remainder(&p, &q, var);
        p = q;
        if r.is_zero() {
            q = r;
        } else if r.degree_in(var) == 0 {
            p = MultiPoly::one(p.vars());
            q = MultiPoly::zero(p.vars());
        } else {
            q = primitive_in(&r, var);
        }
    }
    let g = if p.degree_in(var) == 0 {
        MultiPoly::one(p.vars())
    } else {
        primitive_in(&p, var)
    };
    (&c * &g).primitive_part().1
}

/// Least common multiple (primitive, positive leading coefficient).
pub fn lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero(a.vars());
    }
    let g = gcd(a, b);
    divide_exact(&(a * b), &g).unwrap().primitive_part().1
}

/// True if the polynomial is a nonzero rational constant.
pub fn is_unit(p: &MultiPoly) -> bool {
    p.is_constant() && !p.constant_term().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::vars;
    use proptest::prelude::*;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &vars(&["x", "y", "z"])).unwrap()
    }

    #[test]
    fn known_gcds() {
        assert_eq!(gcd(&p("x^2 - y^2"), &p("x^2 + 2*x*y + y^2")), p("x + y"));
        assert_eq!(gcd(&p("6*x*y"), &p("4*x^2")), p("x"));
        assert_eq!(gcd(&p("x + 1"), &p("y + 1")), p("1"));
        assert_eq!(
            gcd(&p("(x*z - y)*(x + y + z)^2"), &p("(x*z - y)*(x - 1)*(x + y + z)")),
            p("(x*z - y)*(x + y + z)")
        );
        assert_eq!(gcd(&p("-2*x + 2"), &p("0")), p("x - 1"));
    }

    #[test]
    fn exact_division() {
        assert_eq!(divide_exact(&p("x^3 - y^3"), &p("x - y")), Some(p("x^2 + x*y + y^2")));
        assert_eq!(divide_exact(&p("x^3 - y^3"), &p("x + y")), None);
        assert_eq!(divide_exact(&p("1/2*x*y"), &p("3*y")), Some(p("1/6*x")));
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((0u16..3, 0u16..3, 0u16..2, -3i64..4), 1..4).prop_map(|ts| {
            let v = vars(&["x", "y", "z"]);
            MultiPoly::from_terms(
                &v,
                ts.into_iter().map(|(a, b, c, k)| {
                    (Monomial::from_exponents(&[a, b, c]), BigRational::from_integer(k.into()))
                }),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn gcd_divides_and_is_maximal(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assume!(!c.is_zero());
            let ac = &a * &c;
            let bc = &b * &c;
            let g = gcd(&ac, &bc);
            if !ac.is_zero() {
                prop_assert!(divide_exact(&ac, &g).is_some());
            }
            if !bc.is_zero() {
                prop_assert!(divide_exact(&bc, &g).is_some());
            }
            if !(ac.is_zero() && bc.is_zero()) {
                prop_assert!(divide_exact(&g, &c).is_some(), "common factor lost: g={} c={}", g, c);
            }
        }

        #[test]
        fn exact_division_inverts_multiplication(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(divide_exact(&(&a * &b), &b), Some(a));
        }
    }
}
