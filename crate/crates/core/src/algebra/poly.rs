use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;

/// Shared, ordered variable list of a polynomial ring.
pub type Vars = Arc<[String]>;

pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Zero coefficients are never stored. Two polynomials over different
/// variable lists can be combined; the result lives over the union of the
/// lists (left operand's variables first).
#[derive(Clone)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn constant(vars: &Vars, c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn from_int(vars: &Vars, c: i64) -> Self {
        Self::constant(vars, BigRational::from_integer(BigInt::from(c)))
    }

    /// The variable at position `index`.
    pub fn var(vars: &Vars, index: usize) -> Self {
        let mut p = Self::zero(vars);
        p.terms
            .insert(Monomial::var(vars.len(), index), BigRational::one());
        p
    }

    /// The variable called `name`; panics if it is not in `vars`.
    pub fn named(vars: &Vars, name: &str) -> Self {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::var(vars, idx)
    }

    pub fn from_terms<I>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), vars.len(), "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The constant term (zero if absent).
    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&Monomial::one(self.nvars()))
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in canonical (graded-lex descending) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    /// Leading term under graded lex.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Total degree; the zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Indices of variables that actually occur.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.exp(i) > 0))
            .collect()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> MultiPoly {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.mul(m), v * c);
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(&self.vars);
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

    pub fn eval(&self, values: &[BigRational]) -> BigRational {
        assert_eq!(values.len(), self.nvars(), "evaluation arity mismatch");
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(values[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute `images[i]` for variable `i`. All images must share one
    /// variable list, which becomes the result's.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars(), "composition arity mismatch");
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(&target), p.clone()])
            .collect();
        let mut out = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Replace variable `var` by `value` (which must live over the same
    /// variable list).
    pub fn substitute(&self, var: usize, value: &MultiPoly) -> MultiPoly {
        let value = value
            .with_vars(&self.vars)
            .expect("substitute: foreign variables");
        let images: Vec<MultiPoly> = (0..self.nvars())
            .map(|i| {
                if i == var {
                    value.clone()
                } else {
                    MultiPoly::var(&self.vars, i)
                }
            })
            .collect();
        self.compose(&images)
    }

    /// Set the named variables to zero and drop them from the variable list.
    pub fn kill_vars(&self, names: &[&str]) -> MultiPoly {
        let keep: Vec<usize> = (0..self.nvars())
            .filter(|&i| !names.contains(&self.vars[i].as_str()))
            .collect();
        let new_vars: Vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let mut out = MultiPoly::zero(&new_vars);
        'terms: for (m, c) in &self.terms {
            let mut e = Vec::with_capacity(keep.len());
            for i in 0..self.nvars() {
                if keep.contains(&i) {
                    e.push(m.exp(i));
                } else if m.exp(i) > 0 {
                    continue 'terms;
                }
            }
            out.add_term(Monomial::from_exponents(&e), c.clone());
        }
        out
    }

    /// Re-express over `target`, which must contain every used variable.
    pub fn with_vars(&self, target: &Vars) -> Option<MultiPoly> {
        if Arc::ptr_eq(&self.vars, target) || self.vars[..] == target[..] {
            return Some(MultiPoly {
                vars: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let mut map = Vec::with_capacity(self.nvars());
        for (i, v) in self.vars.iter().enumerate() {
            match target.iter().position(|t| t == v) {
                Some(j) => map.push(j),
                None => {
                    if self.terms.keys().any(|m| m.exp(i) > 0) {
                        return None;
                    }
                    // unused variable: any slot works, exponent is zero
                    map.push(0);
                }
            }
        }
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            out.add_term(m.embed(&map, target.len()), c.clone());
        }
        Some(out)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Write `self = c * pp` with `pp` having coprime integer coefficients
    /// and a positive leading coefficient. Zero gives `(0, 0)`.
    pub fn primitive_part(&self) -> (BigRational, MultiPoly) {
        if self.is_zero() {
            return (BigRational::zero(), self.clone());
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.leading_coefficient().is_negative() {
            content = -content;
        }
        let pp = self.scale(&content.recip());
        (content, pp)
    }

    pub fn map_coefficients<F: Fn(&BigRational) -> BigRational>(&self, f: F) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Parse a polynomial in the canonical text format (also accepts
    /// parentheses and integer powers of parenthesised expressions).
    pub fn parse(text: &str, vars: &Vars) -> Result<MultiPoly, super::parse::ParseError> {
        super::parse::parse_poly(text, vars)
    }
}

fn unify<'a>(a: &'a MultiPoly, b: &'a MultiPoly) -> (Cow<'a, MultiPoly>, Cow<'a, MultiPoly>) {
    if Arc::ptr_eq(&a.vars, &b.vars) || a.vars[..] == b.vars[..] {
        return (Cow::Borrowed(a), Cow::Borrowed(b));
    }
    let mut names: Vec<String> = a.vars.to_vec();
    for v in b.vars.iter() {
        if !names.contains(v) {
            names.push(v.clone());
        }
    }
    if names.len() == a.vars.len() {
        let target = a.vars.clone();
        return (Cow::Borrowed(a), Cow::Owned(b.with_vars(&target).unwrap()));
    }
    let target: Vars = names.into();
    (
        Cow::Owned(a.with_vars(&target).unwrap()),
        Cow::Owned(b.with_vars(&target).unwrap()),
    )
}

/// Both operands over the union of their variable lists.
pub(crate) fn unify_owned(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
    let (x, y) = unify(a, b);
    (x.into_owned(), y.into_owned())
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = unify(self, other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let (a, b) = unify(self, rhs);
        let mut out = a.into_owned();
        for (m, c) in &b.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        let (a, b) = unify(self, rhs);
        let mut out = a.into_owned();
        for (m, c) in &b.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        let (a, b) = unify(self, rhs);
        let mut out = MultiPoly::zero(&a.vars);
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &'a MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical rendering: graded-lex descending, `*` between factors,
    /// `^` for powers, unit coefficients omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(fmt_rational(&abs));
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn canonical_rendering() {
        let v = vars(&["A", "C", "E"]);
        let a = MultiPoly::named(&v, "A");
        let c = MultiPoly::named(&v, "C");
        let e = MultiPoly::named(&v, "E");
        let s = &(&a + &c) + &e;
        let p = &s.pow(2) - &(&a * &c).scale_int(4);
        assert_eq!(p.to_string(), "A^2 - 2*A*C + 2*A*E + C^2 + 2*C*E + E^2");
        let h = &a.scale(&q(-1, 2)) + &MultiPoly::from_int(&v, 3);
        assert_eq!(h.to_string(), "-1/2*A + 3");
        assert_eq!(MultiPoly::zero(&v).to_string(), "0");
    }

    #[test]
    fn mixed_variable_lists_unify() {
        let x = MultiPoly::named(&vars(&["x"]), "x");
        let y = MultiPoly::named(&vars(&["y"]), "y");
        let s = &x + &y;
        assert_eq!(s.vars()[..], ["x".to_string(), "y".to_string()]);
        assert_eq!(&s - &y, x);
    }

    #[test]
    fn compose_and_eval() {
        let v = vars(&["x", "y"]);
        let x = MultiPoly::named(&v, "x");
        let y = MultiPoly::named(&v, "y");
        let p = &(&x * &x) - &y;
        // x -> y + 1, y -> x*y
        let c = p.compose(&[&y + &MultiPoly::one(&v), &x * &y]);
        let expected = &(&(&y * &y) + &y.scale_int(2)) + &(&MultiPoly::one(&v) - &(&x * &y));
        assert_eq!(c, expected);
        assert_eq!(p.eval(&[q(1, 2), q(3, 1)]), q(-11, 4));
    }

    #[test]
    fn kill_vars_drops_terms() {
        let v = vars(&["A", "B", "C"]);
        let p = MultiPoly::parse("A^2 + A*B + 2*C - B", &v).unwrap();
        let k = p.kill_vars(&["B"]);
        assert_eq!(k.vars().len(), 2);
        assert_eq!(k.to_string(), "A^2 + 2*C");
    }

    #[test]
    fn primitive_part_normalizes_sign_and_content() {
        let v = vars(&["x", "y"]);
        let p = MultiPoly::parse("-2/3*x + 4/9*y", &v).unwrap();
        let (c, pp) = p.primitive_part();
        assert_eq!(pp.to_string(), "3*x - 2*y");
        assert_eq!(c, q(-2, 9));
        assert_eq!(pp.scale(&c), p);
    }

    mod ring_axioms {
        use super::*;
        use proptest::prelude::*;

        fn sparse() -> impl Strategy<Value = MultiPoly> {
            (1usize..=5).prop_flat_map(|nv| {
                proptest::collection::vec(
                    (proptest::collection::vec(0u16..=4, nv), -5i64..6, 1i64..4),
                    0..6,
                )
                .prop_map(move |ts| {
                    let names: Vec<String> = (0..5).map(|i| format!("v{i}")).collect();
                    let v = vars(&names[..nv]);
                    MultiPoly::from_terms(
                        &v,
                        ts.into_iter()
                            .filter(|(e, _, _)| e.iter().map(|&x| x as u32).sum::<u32>() <= 4)
                            .map(|(e, n, d)| (Monomial::from_exponents(&e), q(n, d))),
                    )
                })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(100))]

            #[test]
            fn associativity_and_distributivity(a in sparse(), b in sparse(), c in sparse()) {
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert!((&a - &a).is_zero());
            }

            #[test]
            fn canonical_text_round_trips(a in sparse()) {
                let back = MultiPoly::parse(&a.to_string(), a.vars()).unwrap();
                prop_assert_eq!(back, a);
            }
        }
    }
}
