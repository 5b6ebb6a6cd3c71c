//! The area polynomial: the defining equation of the closure of the image
//! of the area map, computed by elimination from a fixed-corner
//! parameterization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebra::{
    buchberger, eliminate_with, vars, EliminationOrder, Monomial, MultiPoly, RationalFunction, TermOrder, Vars,
};
use crate::error::{Error, Result};
use crate::model::ConstrainedTriangulation;
use crate::order::{find_drawing_order, DrawingOrder};
use crate::param::{area_system, build_parameterization, sample_generic_drawing, drawing_areas, AreaSystem};

/// Homogeneous integer polynomial in the living-triangle variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AreaPolynomial {
    pub p: MultiPoly,
    pub d: u32,
    /// `A_1^d`, whose coefficient is positive.
    pub sign_witness: Monomial,
}

impl AreaPolynomial {
    /// `σ = A_1 + ... + A_n` over the same variables.
    pub fn sigma(&self) -> MultiPoly {
        sigma(self.p.vars())
    }
}

pub fn sigma(v: &Vars) -> MultiPoly {
    let mut s = MultiPoly::zero(v);
    for i in 0..v.len() {
        s = &s + &MultiPoly::var(v, i);
    }
    s
}

/// Area polynomial using the peeling drawing order and a block
/// elimination order.
pub fn area_polynomial(ct: &ConstrainedTriangulation) -> Result<AreaPolynomial> {
    let order = find_drawing_order(ct)?;
    area_polynomial_with(ct, &order, EliminationOrder::Block)
}

/// Area polynomial from a given drawing order and elimination order.
pub fn area_polynomial_with(
    ct: &ConstrainedTriangulation,
    order: &DrawingOrder,
    how: EliminationOrder,
) -> Result<AreaPolynomial> {
    let par = build_parameterization(ct, order, true)?;
    let sys = area_system(ct, &par);
    let n = sys.ids.len();
    if n < 2 {
        return Err(Error::NotHyper(0));
    }

    // variables: area ids, then parameters and t under names that cannot clash
    let np = par.params.len();
    let mut names: Vec<String> = sys.ids.clone();
    let hidden: Vec<String> = (0..np).map(|i| format!("%{}", par.params[i])).collect();
    names.extend(hidden.iter().cloned());
    names.push("%t".into());
    let all = vars(&names);
    let images: Vec<MultiPoly> = (0..np).map(|i| MultiPoly::var(&all, n + i)).collect();
    let lift = |f: &MultiPoly| {
        if np == 0 {
            MultiPoly::constant(&all, f.constant_term())
        } else {
            f.compose(&images)
        }
    };

    let mut gens = Vec::new();
    let mut dens: Vec<MultiPoly> = Vec::new();
    for (j, w) in sys.w.iter().enumerate() {
        let num = lift(w.numerator());
        let den = lift(w.denominator());
        gens.push(&(&MultiPoly::var(&all, j) * &den) - &num);
        if !den.is_constant() && !dens.contains(&den) {
            dens.push(den);
        }
    }
    let mut drop: Vec<&str> = hidden.iter().map(String::as_str).collect();
    drop.push("%t");
    if !dens.is_empty() {
        let mut prod = MultiPoly::one(&all);
        for d in &dens {
            prod = &prod * d;
        }
        let t = MultiPoly::var(&all, n + np);
        gens.push(&(&t * &prod) - &MultiPoly::one(&all));
    }
    let elim = eliminate_with(&gens, &drop, how);

    // substitute A_n = 1 - (A_1 + ... + A_{n-1})
    let avars = vars(&sys.ids);
    let sub_vars = vars(&sys.ids[..n - 1]);
    let mut last = MultiPoly::one(&avars);
    for j in 0..n - 1 {
        last = &last - &MultiPoly::var(&avars, j);
    }
    let mut reduced = Vec::new();
    for g in &elim {
        let g = g.with_vars(&avars).expect("elimination keeps area variables");
        let s = g.substitute(n - 1, &last);
        let s = s.with_vars(&sub_vars).expect("last area variable substituted");
        if !s.is_zero() {
            reduced.push(s);
        }
    }
    let gb = if reduced.is_empty() {
        Vec::new()
    } else {
        buchberger(&reduced, &TermOrder::Grevlex).polys().to_vec()
    };
    if gb.len() != 1 {
        return Err(Error::NotHyper(gb.len()));
    }
    let qt = &gb[0];

    // re-homogenize with σ
    let dq = qt.degree();
    let s = sigma(&avars);
    let mut p = MultiPoly::zero(&avars);
    for (m, c) in qt.terms() {
        let mono = MultiPoly::from_terms(&sub_vars, [(m.clone(), c.clone())])
            .with_vars(&avars)
            .unwrap();
        p = &p + &(&mono * &s.pow(dq - m.degree()));
    }
    let (_, mut p) = p.primitive_part();
    let mut e = vec![0u16; n];
    e[0] = dq as u16;
    let witness = Monomial::from_exponents(&e);
    if p.coefficient(&witness).is_negative() {
        p = -&p;
    }
    let ap = AreaPolynomial {
        p,
        d: dq,
        sign_witness: witness,
    };
    verify(&ap, &sys)?;
    Ok(ap)
}

/// `p(W) = 0` identically and `p ≡ σ^d (mod 2)`.
fn verify(ap: &AreaPolynomial, sys: &AreaSystem) -> Result<()> {
    let value = RationalFunction::from_poly(ap.p.clone()).compose(&sys.w);
    if !value.is_zero() {
        return Err(Error::VerificationFailed(format!("p(W) = {value}")));
    }
    if !congruent_to_sigma_power(&ap.p, ap.d) {
        return Err(Error::VerificationFailed("p is not congruent to sigma^d mod 2".into()));
    }
    if ap.p.coefficient(&ap.sign_witness).is_zero() {
        return Err(Error::VerificationFailed("coefficient of A^d vanishes".into()));
    }
    Ok(())
}

/// Every coefficient of `p - σ^d` is an even integer.
pub fn congruent_to_sigma_power(p: &MultiPoly, d: u32) -> bool {
    let diff = p - &sigma(p.vars()).pow(d);
    let even = diff.terms().all(|(_, c)| c.is_integer() && c.numer().is_even());
    even
}

/// `p` vanishes at the living areas of `samples` sampled generic drawings.
pub fn verify_vanishing(ap: &AreaPolynomial, ct: &ConstrainedTriangulation, samples: u64, seed: u64) -> Result<bool> {
    for k in 0..samples {
        let d = sample_generic_drawing(ct, seed.wrapping_add(k))?;
        if !ap.p.eval(&drawing_areas(ct, &d.points)).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Value of `p` at all ones; nonzero rules out deformation to an
/// equidissection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub p_at_ones: BigInt,
    /// False when the value is nonzero.
    pub deformable_to_equal_areas: bool,
}

pub fn equidissection_obstruction(p: &MultiPoly) -> Obstruction {
    let ones = vec![BigRational::from_integer(1.into()); p.nvars()];
    let v = p.eval(&ones).to_integer();
    Obstruction {
        deformable_to_equal_areas: v.is_zero(),
        p_at_ones: v,
    }
}
