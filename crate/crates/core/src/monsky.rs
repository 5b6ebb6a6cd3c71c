//! Canonical Monsky polynomials, membership and identity checks, smallness
//! and positivity, and the diagonal family.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::gcd::divide_exact;
use crate::algebra::linear::solve;
use crate::algebra::{vars, Monomial, MultiPoly, RationalFunction, Vars};
use crate::areapoly::{congruent_to_sigma_power, sigma, AreaPolynomial};
use crate::error::{Error, Result};
use crate::model::ConstrainedTriangulation;
use crate::order::find_drawing_order;
use crate::param::{area_system, build_parameterization, AreaSystem};

/// `f = (σ^d + p)/2` and `f̃ = (σ^d − p)/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonskyPair {
    pub f: MultiPoly,
    pub f_tilde: MultiPoly,
    pub d: u32,
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

fn integral(p: &MultiPoly) -> bool {
    p.terms().all(|(_, c)| c.is_integer())
}

pub fn canonical_monsky(ap: &AreaPolynomial) -> Result<MonskyPair> {
    let s = sigma(ap.p.vars()).pow(ap.d);
    let plus = &s + &ap.p;
    let minus = &s - &ap.p;
    let f = plus.scale(&half());
    let f_tilde = minus.scale(&half());
    if !integral(&f) || !integral(&f_tilde) {
        return Err(Error::NotMod2);
    }
    Ok(MonskyPair { f, f_tilde, d: ap.d })
}

/// Whether `f0` is a Monsky polynomial for the triangulation with area
/// polynomial `p`: `2 f0 = σ^e + p q` with `q ≡ σ^(e−d)` mod 2, `e = deg f0`.
pub fn is_monsky_polynomial(f0: &MultiPoly, ap: &AreaPolynomial) -> Result<bool> {
    if !f0.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let Some(f0) = f0.with_vars(ap.p.vars()) else {
        return Ok(false);
    };
    let e = f0.degree();
    if e < ap.d || !integral(&f0) {
        return Ok(false);
    }
    let h = &f0.scale_int(2) - &sigma(ap.p.vars()).pow(e);
    let Some(q) = divide_exact(&h, &ap.p) else {
        return Ok(false);
    };
    Ok(integral(&q) && congruent_to_sigma_power(&q, e - ap.d))
}

/// Fixed-corner area system from the peeling drawing order.
pub fn fixed_area_system(ct: &ConstrainedTriangulation) -> Result<AreaSystem> {
    let order = find_drawing_order(ct)?;
    let par = build_parameterization(ct, &order, true)?;
    Ok(area_system(ct, &par))
}

/// Substitute the area functions into a polynomial in living-triangle
/// variables.
pub fn substitute_areas(f: &MultiPoly, sys: &AreaSystem) -> Result<RationalFunction> {
    let target = vars(&sys.ids);
    for v in f.used_vars() {
        let name = &f.vars()[v];
        if !sys.ids.contains(name) {
            return Err(Error::UnknownTriangle(name.clone()));
        }
    }
    let f = f.with_vars(&target).expect("variables checked");
    Ok(RationalFunction::from_poly(f).compose(&sys.w))
}

/// `2 f0(W) − 1` vanishes identically for the fixed-corner areas `W`.
pub fn verify_monsky_identity(f0: &MultiPoly, ct: &ConstrainedTriangulation) -> Result<bool> {
    let sys = fixed_area_system(ct)?;
    let v = substitute_areas(f0, &sys)?;
    let two = RationalFunction::constant(v.vars(), BigRational::from_integer(2.into()));
    let one = RationalFunction::constant(v.vars(), BigRational::one());
    Ok((&(&two * &v) - &one).is_zero())
}

/// Set the dead-triangle variables to zero.
pub fn restrict_to_living(f: &MultiPoly, dead: &[&str]) -> MultiPoly {
    f.kill_vars(dead)
}

/// `d! / Π e_i!` for the exponents of `m`.
pub fn multinomial(m: &Monomial) -> BigInt {
    let fact = |k: u32| (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
    let mut out = fact(m.degree());
    for &e in m.exponents() {
        out /= fact(e as u32);
    }
    out
}

/// Monomials of `p` whose coefficient exceeds the matching coefficient of
/// `σ^d` in absolute value.
pub fn is_small(p: &MultiPoly) -> (bool, Vec<Monomial>) {
    let bad: Vec<Monomial> = p
        .terms()
        .filter(|(m, c)| c.abs() > BigRational::from_integer(multinomial(m)))
        .map(|(m, _)| m.clone())
        .collect();
    (bad.is_empty(), bad)
}

/// Monomials with negative coefficient.
pub fn is_positive(f: &MultiPoly) -> (bool, Vec<Monomial>) {
    let bad: Vec<Monomial> = f
        .terms()
        .filter(|(_, c)| c.is_negative())
        .map(|(m, _)| m.clone())
        .collect();
    (bad.is_empty(), bad)
}

/// `p = p₊ − p₋`, and `t = (σ^d − p₊ − p₋)/2` when `p` is small.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPm {
    pub p_plus: MultiPoly,
    pub p_minus: MultiPoly,
    pub t: Option<MultiPoly>,
    pub small_witness: Option<Monomial>,
}

pub fn split_pm(ap: &AreaPolynomial) -> SplitPm {
    let v = ap.p.vars();
    let p_plus = MultiPoly::from_terms(v, ap.p.terms().filter(|(_, c)| c.is_positive()).map(|(m, c)| (m.clone(), c.clone())));
    let p_minus = MultiPoly::from_terms(v, ap.p.terms().filter(|(_, c)| c.is_negative()).map(|(m, c)| (m.clone(), -c)));
    let (small, bad) = is_small(&ap.p);
    let t = small.then(|| (&(&sigma(v).pow(ap.d) - &p_plus) - &p_minus).scale(&half()));
    SplitPm {
        p_plus,
        p_minus,
        t,
        small_witness: bad.into_iter().next(),
    }
}

/// The honest diagonal triangulation with `n` interior vertices.
pub fn diagonal_case(n: usize) -> ConstrainedTriangulation {
    crate::corpus::diagonal(n)
}

/// All monomials of degree `e` in `n` variables, in ascending order.
pub fn monomials_of_degree(n: usize, e: u32) -> Vec<Monomial> {
    fn go(n: usize, e: u32, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(e as u16);
            out.push(Monomial::from_exponents(prefix));
            prefix.pop();
            return;
        }
        for k in 0..=e {
            prefix.push(k as u16);
            go(n, e - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if e == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    go(n, e, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Rational solutions of `2 f(W) = 1` among homogeneous `f` of degree `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSearch {
    pub e: u32,
    /// One rational solution, if any.
    pub solution: Option<MultiPoly>,
    /// Dimension of the solution space.
    pub freedom: usize,
}

impl DegreeSearch {
    /// No integer Monsky polynomial of this degree exists: either no
    /// rational solution, or a unique one that is not integral.
    pub fn rules_out_integer_solutions(&self) -> bool {
        match &self.solution {
            None => true,
            Some(f) => self.freedom == 0 && !integral(f),
        }
    }
}

/// Solve `2 f(W) = 1` for homogeneous `f` of degree `e` by evaluating at
/// sampled parameter values. Inconsistency and uniqueness at the samples
/// are exact certificates; a unique solution is also checked symbolically.
pub fn search_degree(ct: &ConstrainedTriangulation, e: u32, seed: u64) -> Result<DegreeSearch> {
    let sys = fixed_area_system(ct)?;
    let n = sys.ids.len();
    let monos = monomials_of_degree(n, e);
    let np = sys.w.first().map_or(0, |w| w.vars().len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    while rows.len() < monos.len() + 8 {
        let point: Vec<BigRational> = (0..np)
            .map(|_| BigRational::new(rng.gen_range(-64i64..=64).into(), rng.gen_range(1i64..=16).into()))
            .collect();
        let Some(w) = sys.w.iter().map(|w| w.eval(&point)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let row: Vec<BigRational> = monos
            .iter()
            .map(|m| {
                m.exponents()
                    .iter()
                    .zip(&w)
                    .fold(BigRational::one(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k as usize))
            })
            .collect();
        rows.push(row);
    }
    let rhs = vec![half(); rows.len()];
    let target: Vars = vars(&sys.ids);
    let Some((x, rank)) = solve(rows, rhs) else {
        return Ok(DegreeSearch { e, solution: None, freedom: 0 });
    };
    let f = MultiPoly::from_terms(&target, monos.into_iter().zip(x));
    let freedom = n_choose_monomials(n, e) - rank;
    if freedom == 0 {
        let v = substitute_areas(&f, &sys)?;
        if v != RationalFunction::constant(v.vars(), half()) {
            return Err(Error::VerificationFailed("sampled solution is not an identity".into()));
        }
    }
    Ok(DegreeSearch {
        e,
        solution: Some(f),
        freedom,
    })
}

fn n_choose_monomials(n: usize, e: u32) -> usize {
    monomials_of_degree(n, e).len()
}

/// Whether `p` has an odd coefficient on every `A_i^d`.
pub fn leading_terms_odd(ap: &AreaPolynomial) -> bool {
    let n = ap.p.nvars();
    (0..n).all(|i| {
        let mut e = vec![0u16; n];
        e[i] = ap.d as u16;
        let c = ap.p.coefficient(&Monomial::from_exponents(&e));
        c.is_integer() && c.numer().is_odd()
    })
}
