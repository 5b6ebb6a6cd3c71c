//! Buchberger's algorithm with sugar selection and Gebauer-Moeller pair
//! pruning, plus elimination ideals.
//!
//! Internally polynomials carry integer coefficients (fraction-free
//! reduction with periodic content removal) and are stored in ascending
//! term order so the leading term is the last element.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::poly::{unify_owned, MultiPoly, Vars};

/// Monomial order used by [`buchberger`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermOrder {
    /// Lexicographic, variables ranked in variable-list order.
    Lex,
    /// Graded reverse lexicographic.
    Grevlex,
    /// The named variables are greater than all others; grevlex inside
    /// each of the two blocks.
    Block(Vec<String>),
}

#[derive(Clone, Copy, Debug)]
enum Cmp {
    Lex,
    Grevlex,
    BlockGrevlex(usize),
}

fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl Cmp {
    fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match self {
            Cmp::Lex => a.cmp(b),
            Cmp::Grevlex => grevlex(a, b),
            Cmp::BlockGrevlex(k) => {
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }
}

#[derive(Clone)]
struct Term {
    m: Monomial,
    c: BigInt,
}

#[derive(Clone)]
struct Poly {
    terms: Vec<Term>,
    sugar: u32,
}

impl Poly {
    fn lead(&self) -> &Term {
        self.terms.last().expect("nonzero polynomial")
    }

    fn tail(&self) -> &[Term] {
        &self.terms[..self.terms.len() - 1]
    }
}

fn divmask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e > 0 {
            mask |= 1 << (i % 64);
        }
    }
    mask
}

fn content(terms: &[Term]) -> BigInt {
    let mut g = BigInt::zero();
    for t in terms {
        g = g.gcd(&t.c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// `a*p - b*m*q`, all inputs ascending.
fn lin_comb(a: &BigInt, p: &[Term], b: &BigInt, m: &Monomial, q: &[Term], ord: Cmp) -> Vec<Term> {
    let a_one = a.is_one();
    let mut out = Vec::with_capacity(p.len() + q.len());
    let mut i = 0;
    let mut j = 0;
    let mut mq: Option<Monomial> = None;
    while i < p.len() || j < q.len() {
        if j < q.len() && mq.is_none() {
            mq = Some(q[j].m.mul(m));
        }
        let order = match (i < p.len(), j < q.len()) {
            (true, true) => ord.cmp(&p[i].m, mq.as_ref().unwrap()),
            (true, false) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match order {
            Ordering::Less => {
                let c = if a_one { p[i].c.clone() } else { a * &p[i].c };
                out.push(Term {
                    m: p[i].m.clone(),
                    c,
                });
                i += 1;
            }
            Ordering::Greater => {
                out.push(Term {
                    m: mq.take().unwrap(),
                    c: -(b * &q[j].c),
                });
                j += 1;
            }
            Ordering::Equal => {
                let c = if a_one {
                    &p[i].c - b * &q[j].c
                } else {
                    a * &p[i].c - b * &q[j].c
                };
                let mm = mq.take().unwrap();
                if !c.is_zero() {
                    out.push(Term { m: mm, c });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn shift(p: &[Term], m: &Monomial) -> Vec<Term> {
    p.iter()
        .map(|t| Term {
            m: t.m.mul(m),
            c: t.c.clone(),
        })
        .collect()
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine {
    ord: Cmp,
    polys: Vec<Poly>,
    masks: Vec<u64>,
    basis: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn new(ord: Cmp) -> Self {
        Engine {
            ord,
            polys: Vec::new(),
            masks: Vec::new(),
            basis: Vec::new(),
            pairs: Vec::new(),
        }
    }

    fn find_divisor(&self, m: &Monomial, mask: u64, skip: Option<usize>) -> Option<usize> {
        self.basis.iter().copied().find(|&g| {
            Some(g) != skip
                && self.masks[g] & !mask == 0
                && self.polys[g].lead().m.divides(m)
        })
    }

    /// Fully reduce `f` against the current basis. Returns the primitive
    /// remainder and the factor `s` with `remainder = s * NF(f)`.
    fn normal_form(&self, f: Poly, skip: Option<usize>) -> (Poly, BigRational) {
        let mut p = f.terms;
        let mut sugar = f.sugar;
        let mut scale = BigRational::one();
        let mut r: Vec<Term> = Vec::new();
        let mut steps = 0u32;
        while let Some(t) = p.last() {
            let mask = divmask(&t.m);
            match self.find_divisor(&t.m, mask, skip) {
                Some(gi) => {
                    let g = &self.polys[gi];
                    let lt = g.lead();
                    let q = lt.m.quotient_of(&t.m).unwrap();
                    let gc = t.c.gcd(&lt.c);
                    let mut a = &lt.c / &gc;
                    let mut b = &t.c / &gc;
                    if a.is_negative() {
                        a = -a;
                        b = -b;
                    }
                    sugar = sugar.max(g.sugar + q.degree());
                    let n = p.len() - 1;
                    p = lin_comb(&a, &p[..n], &b, &q, g.tail(), self.ord);
                    if !a.is_one() {
                        for x in r.iter_mut() {
                            x.c *= &a;
                        }
                        scale *= BigRational::from_integer(a);
                    }
                    steps += 1;
                    if steps % 8 == 0 {
                        let c = content(&p).gcd(&content(&r));
                        if !c.is_zero() && !c.is_one() {
                            for x in p.iter_mut().chain(r.iter_mut()) {
                                x.c /= &c;
                            }
                            scale /= BigRational::from_integer(c);
                        }
                    }
                }
                None => r.push(p.pop().unwrap()),
            }
        }
        r.reverse();
        let c = content(&r);
        if !c.is_zero() {
            let c = if r.last().unwrap().c.is_negative() { -c } else { c };
            if !c.is_one() {
                for x in r.iter_mut() {
                    x.c /= &c;
                }
                scale /= BigRational::from_integer(c);
            }
        }
        (Poly { terms: r, sugar }, scale)
    }

    fn push(&mut self, p: Poly) -> usize {
        self.masks.push(divmask(&p.lead().m));
        self.polys.push(p);
        self.polys.len() - 1
    }

    /// Gebauer-Moeller update with new basis element `h`.
    fn update(&mut self, h: usize) {
        let lh = self.polys[h].lead().m.clone();
        let sh = self.polys[h].sugar;
        let cands: Vec<Pair> = self
            .basis
            .iter()
            .map(|&g| {
                let lg = &self.polys[g].lead().m;
                let lcm = lh.lcm(lg);
                let sugar = (sh + lcm.degree() - lh.degree())
                    .max(self.polys[g].sugar + lcm.degree() - lg.degree());
                Pair {
                    i: g,
                    j: h,
                    lcm,
                    sugar,
                }
            })
            .collect();
        let coprime = |p: &Pair, polys: &[Poly]| polys[p.i].lead().m.is_coprime(&lh);

        // chain criterion among new pairs
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            if coprime(&cands[a], &self.polys) {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if cands[b].lcm.divides(&cands[a].lcm)
                    && (cands[b].lcm != cands[a].lcm || b < a)
                {
                    keep[a] = false;
                    break;
                }
            }
        }
        // product criterion: drop coprime pairs, but let a coprime pair
        // first discard new pairs sharing its lcm
        let mut new_pairs = Vec::new();
        for (a, p) in cands.into_iter().enumerate() {
            if keep[a] && !coprime(&p, &self.polys) {
                new_pairs.push(p);
            }
        }

        // old pairs made redundant by h
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm)
                && polys[p.i].lead().m.lcm(&lh) != p.lcm
                && polys[p.j].lead().m.lcm(&lh) != p.lcm)
        });
        self.pairs.extend(new_pairs);

        self.basis.retain(|&g| !lh.divides(&polys[g].lead().m));
        self.basis.push(h);
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ord = self.ord;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let better = a.sugar < b.sugar
                || (a.sugar == b.sugar && ord.cmp(&a.lcm, &b.lcm) == Ordering::Less);
            if better {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, pair: &Pair) -> Poly {
        let f = &self.polys[pair.i];
        let g = &self.polys[pair.j];
        let mf = f.lead().m.quotient_of(&pair.lcm).unwrap();
        let mg = g.lead().m.quotient_of(&pair.lcm).unwrap();
        let gc = f.lead().c.gcd(&g.lead().c);
        let a = &g.lead().c / &gc;
        let b = &f.lead().c / &gc;
        let fs = shift(f.tail(), &mf);
        Poly {
            terms: lin_comb(&a, &fs, &b, &mg, g.tail(), self.ord),
            sugar: pair.sugar,
        }
    }

    fn add_generator(&mut self, f: Poly) {
        let (h, _) = self.normal_form(f, None);
        if !h.terms.is_empty() {
            let i = self.push(h);
            self.update(i);
        }
    }

    fn run(&mut self) {
        while let Some(pair) = self.select() {
            let s = self.spoly(&pair);
            if s.terms.is_empty() {
                continue;
            }
            let (h, _) = self.normal_form(s, None);
            if !h.terms.is_empty() {
                let i = self.push(h);
                self.update(i);
            }
        }
    }

    /// Interreduce the (already minimal) basis.
    fn reduced(&mut self) -> Vec<Poly> {
        let mut basis = self.basis.clone();
        let ord = self.ord;
        basis.sort_by(|&a, &b| ord.cmp(&self.polys[a].lead().m, &self.polys[b].lead().m));
        let mut out = Vec::with_capacity(basis.len());
        for &g in &basis {
            let (r, _) = self.normal_form(self.polys[g].clone(), Some(g));
            // lead term is irreducible by the others, so it survives
            out.push(r);
        }
        for (k, &g) in basis.iter().enumerate() {
            self.polys[g] = out[k].clone();
        }
        self.basis = basis;
        out
    }
}

/// Variable layout used internally for an order: `perm[k]` is the original
/// index of internal variable `k`.
fn layout(vars: &Vars, order: &TermOrder) -> (Vec<usize>, Cmp) {
    match order {
        TermOrder::Lex => ((0..vars.len()).collect(), Cmp::Lex),
        TermOrder::Grevlex => ((0..vars.len()).collect(), Cmp::Grevlex),
        TermOrder::Block(block) => {
            let mut perm: Vec<usize> = (0..vars.len())
                .filter(|&i| block.contains(&vars[i]))
                .collect();
            let k = perm.len();
            perm.extend((0..vars.len()).filter(|&i| !block.contains(&vars[i])));
            (perm, Cmp::BlockGrevlex(k))
        }
    }
}

fn to_internal(p: &MultiPoly, perm: &[usize], ord: Cmp) -> (Poly, BigInt) {
    let mut den = BigInt::one();
    for (_, c) in p.terms() {
        den = den.lcm(c.denom());
    }
    let mut terms: Vec<Term> = p
        .terms()
        .map(|(m, c)| {
            let e: Vec<u16> = perm.iter().map(|&i| m.exp(i)).collect();
            Term {
                m: Monomial::from_exponents(&e),
                c: (c * BigRational::from_integer(den.clone())).to_integer(),
            }
        })
        .collect();
    terms.sort_by(|a, b| ord.cmp(&a.m, &b.m));
    let sugar = p.degree();
    (Poly { terms, sugar }, den)
}

fn from_internal(p: &Poly, perm: &[usize], vars: &Vars) -> MultiPoly {
    MultiPoly::from_terms(
        vars,
        p.terms.iter().map(|t| {
            let mut e = vec![0u16; vars.len()];
            for (k, &i) in perm.iter().enumerate() {
                e[i] = t.m.exp(k);
            }
            (Monomial::from_exponents(&e), BigRational::from_integer(t.c.clone()))
        }),
    )
}

/// A reduced Groebner basis together with the order it was computed in.
pub struct GroebnerBasis {
    vars: Vars,
    order: TermOrder,
    perm: Vec<usize>,
    engine: Engine,
    polys: Vec<MultiPoly>,
}

impl GroebnerBasis {
    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    /// Basis elements, primitive over Z with positive leading coefficient,
    /// sorted by increasing leading monomial.
    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Leading monomial of each basis element, in the caller's variables.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.engine
            .basis
            .iter()
            .map(|&g| {
                let m = &self.engine.polys[g].lead().m;
                let mut e = vec![0u16; self.vars.len()];
                for (k, &i) in self.perm.iter().enumerate() {
                    e[i] = m.exp(k);
                }
                Monomial::from_exponents(&e)
            })
            .collect()
    }

    /// Normal form of `f` modulo the basis (exact, over Q).
    pub fn reduce(&self, f: &MultiPoly) -> MultiPoly {
        let f = f
            .with_vars(&self.vars)
            .expect("reduce: polynomial uses variables outside the basis ring");
        if f.is_zero() {
            return f;
        }
        let (p, den) = to_internal(&f, &self.perm, self.engine.ord);
        let (r, scale) = self.engine.normal_form(p, None);
        let r = from_internal(&r, &self.perm, &self.vars);
        r.scale(&(scale * BigRational::from_integer(den)).recip())
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.reduce(f).is_zero()
    }
}

/// Reduced Groebner basis of the ideal generated by `generators`.
pub fn buchberger(generators: &[MultiPoly], order: &TermOrder) -> GroebnerBasis {
    let mut vars: Vars = Vars::from(Vec::<String>::new());
    let mut gens: Vec<MultiPoly> = Vec::new();
    for g in generators {
        if gens.is_empty() {
            vars = g.vars().clone();
        }
        let (_, g2) = unify_owned(&MultiPoly::zero(&vars), g);
        vars = g2.vars().clone();
        gens.push(g2);
    }
    let gens: Vec<MultiPoly> = gens
        .iter()
        .map(|g| g.with_vars(&vars).unwrap())
        .filter(|g| !g.is_zero())
        .collect();
    let (perm, ord) = layout(&vars, order);
    let mut engine = Engine::new(ord);
    let mut internal: Vec<Poly> = gens
        .iter()
        .map(|g| to_internal(g, &perm, ord).0)
        .collect();
    internal.sort_by(|a, b| {
        a.sugar
            .cmp(&b.sugar)
            .then_with(|| ord.cmp(&a.lead().m, &b.lead().m))
    });
    for p in internal {
        engine.add_generator(p);
    }
    engine.run();
    let reduced = engine.reduced();
    let polys = reduced
        .iter()
        .map(|p| from_internal(p, &perm, &vars))
        .collect();
    GroebnerBasis {
        vars,
        order: order.clone(),
        perm,
        engine,
        polys,
    }
}

/// Which order drives an elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EliminationOrder {
    /// Block order, grevlex inside each block.
    #[default]
    Block,
    /// Pure lex with the dropped variables first.
    Lex,
}

/// Generators of the elimination ideal `I ∩ Q[kept vars]`, expressed over
/// the kept variables. The result is a reduced Groebner basis of that ideal.
pub fn eliminate(generators: &[MultiPoly], drop: &[&str]) -> Vec<MultiPoly> {
    eliminate_with(generators, drop, EliminationOrder::Block)
}

pub fn eliminate_with(
    generators: &[MultiPoly],
    drop: &[&str],
    how: EliminationOrder,
) -> Vec<MultiPoly> {
    let (gb, kept) = elimination_basis(generators, drop, how);
    let _ = kept;
    gb
}

fn elimination_basis(
    generators: &[MultiPoly],
    drop: &[&str],
    how: EliminationOrder,
) -> (Vec<MultiPoly>, Vars) {
    let mut all: Vec<String> = Vec::new();
    for g in generators {
        for v in g.vars().iter() {
            if !all.contains(v) {
                all.push(v.clone());
            }
        }
    }
    let kept: Vars = all
        .iter()
        .filter(|v| !drop.contains(&v.as_str()))
        .cloned()
        .collect();
    let gb = match how {
        EliminationOrder::Block => {
            let block: Vec<String> = drop.iter().map(|s| s.to_string()).collect();
            buchberger(generators, &TermOrder::Block(block))
        }
        EliminationOrder::Lex => {
            let mut order: Vec<String> = drop.iter().map(|s| s.to_string()).collect();
            order.extend(kept.iter().cloned());
            let ordered: Vars = order.into();
            let gens: Vec<MultiPoly> = generators
                .iter()
                .map(|g| g.with_vars(&ordered).unwrap())
                .collect();
            buchberger(&gens, &TermOrder::Lex)
        }
    };
    let out = gb
        .polys()
        .iter()
        .filter(|p| {
            p.used_vars()
                .iter()
                .all(|&i| !drop.contains(&p.vars()[i].as_str()))
        })
        .map(|p| p.with_vars(&kept).unwrap())
        .collect();
    (out, kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::vars;
    use proptest::prelude::*;

    fn ps(v: &Vars, xs: &[&str]) -> Vec<MultiPoly> {
        xs.iter().map(|s| MultiPoly::parse(s, v).unwrap()).collect()
    }

    fn strs(ps: &[MultiPoly]) -> Vec<String> {
        ps.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn trivial_bases() {
        let v = vars(&["x", "y"]);
        let gb = buchberger(&ps(&v, &["x", "y"]), &TermOrder::Lex);
        assert_eq!(strs(gb.polys()), ["y", "x"]);
        let gb = buchberger(&ps(&v, &["0"]), &TermOrder::Lex);
        assert!(gb.is_empty());
        let gb = buchberger(&ps(&v, &["2*x + 4", "3*x - 1"]), &TermOrder::Grevlex);
        assert_eq!(strs(gb.polys()), ["1"]);
    }

    #[test]
    fn hand_run_lex_basis() {
        let v = vars(&["x", "y"]);
        let gb = buchberger(&ps(&v, &["x^2 - 1", "x*y - 1"]), &TermOrder::Lex);
        assert_eq!(strs(gb.polys()), ["y^2 - 1", "x - y"]);
    }

    #[test]
    fn elimination_examples() {
        let v = vars(&["x", "A", "B"]);
        let e = eliminate(&ps(&v, &["A - x", "B - x^2"]), &["x"]);
        assert_eq!(strs(&e), ["A^2 - B"]);
        let e = eliminate(&ps(&v, &["A - x", "B - x", "x"]), &["x"]);
        assert_eq!(strs(&e), ["B", "A"]);
        for how in [EliminationOrder::Block, EliminationOrder::Lex] {
            let e = eliminate_with(&ps(&v, &["A - x^2", "B - x^3"]), &["x"], how);
            assert_eq!(e.len(), 1);
            let cusp = MultiPoly::parse("A^3 - B^2", e[0].vars()).unwrap();
            assert!(e[0] == cusp || e[0] == -&cusp, "{}", e[0]);
            // brute force: vanishes on (x^2, x^3) for sampled x
            for k in -10i64..10 {
                let x = BigRational::new(k.into(), 7.into());
                let a = &x * &x;
                let b = &a * &x;
                assert!(e[0].eval(&[a, b]).is_zero());
            }
        }
    }

    #[test]
    fn reduce_gives_exact_normal_form() {
        let v = vars(&["x", "y"]);
        let gb = buchberger(&ps(&v, &["2*x - y", "3*y^2 - 1"]), &TermOrder::Lex);
        let r = gb.reduce(&MultiPoly::parse("x^2 + y", &v).unwrap());
        // x = y/2, y^2 = 1/3
        assert_eq!(r, MultiPoly::parse("y + 1/12", &v).unwrap());
    }

    fn rand_poly(nv: usize) -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec(
            (proptest::collection::vec(0u16..3, nv), -4i64..5),
            1..4,
        )
        .prop_map(move |ts| {
            let names: Vec<String> = (0..nv).map(|i| format!("x{i}")).collect();
            let v = vars(&names);
            MultiPoly::from_terms(
                &v,
                ts.into_iter().map(|(e, c)| {
                    (Monomial::from_exponents(&e), BigRational::from_integer(c.into()))
                }),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn generators_reduce_to_zero(gens in proptest::collection::vec(rand_poly(3), 1..4)) {
            for order in [TermOrder::Grevlex, TermOrder::Lex, TermOrder::Block(vec!["x1".into()])] {
                let gb = buchberger(&gens, &order);
                for g in &gens {
                    prop_assert!(gb.contains(g), "{} not in {:?}", g, gb.polys());
                }
                // reducedness: no basis element has a term divisible by
                // another element's leading monomial
                let lms = gb.leading_monomials();
                for (i, p) in gb.polys().iter().enumerate() {
                    for (k, lm) in lms.iter().enumerate() {
                        if k == i { continue; }
                        let lm = lm.clone();
                        prop_assert!(p.terms().all(|(m, _)| !lm.divides(m)));
                    }
                }
            }
        }

        #[test]
        fn reduced_basis_is_canonical(gens in proptest::collection::vec(rand_poly(3), 1..4)) {
            // recomputing from a basis in another order gives the same result
            let lex = buchberger(&gens, &TermOrder::Lex);
            let via = buchberger(buchberger(&gens, &TermOrder::Grevlex).polys(), &TermOrder::Lex);
            prop_assert_eq!(strs(lex.polys()), strs(via.polys()));
        }
    }
}
