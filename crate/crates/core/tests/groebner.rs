mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{shipped, to_vector, two_sided_span, WordOracle, SHIPPED};
use skewpbw::geometry::random_polynomial;
use skewpbw::{
    divide, intersect_left, is_member_left, left_groebner, left_groebner_certified, monomial_divides,
    two_sided_saturate, Algebra, Budget, IdealStatus, Membership, MonomialOrder, Polynomial,
};

fn nonconstant(a: &Algebra, rng: &mut ChaCha8Rng, d: u32) -> Polynomial {
    loop {
        let g = random_polynomial(a, rng, d, 3);
        if !g.is_constant() {
            return g;
        }
    }
}

fn combination(a: &Algebra, rng: &mut ChaCha8Rng, gens: &[Polynomial], d: u32) -> Polynomial {
    gens.iter().fold(Polynomial::zero(), |acc, g| acc.add(&a.multiply(&random_polynomial(a, rng, d, 3), g)))
}

#[test]
fn division_identity_and_degree_bound() {
    for (k, name) in SHIPPED.iter().enumerate() {
        let a = shipped(name);
        let o = WordOracle::new(a.presentation());
        let order = MonomialOrder::Deglex;
        let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
        for _ in 0..500 {
            let f = random_polynomial(&a, &mut rng, 4, 4);
            let m = rng.gen_range(1..=3);
            let ds: Vec<Polynomial> = (0..m).map(|_| nonconstant(&a, &mut rng, 2)).collect();
            let r = divide(&a, &f, &ds, &order).unwrap();
            let mut sum = r.remainder.clone();
            for (q, d) in r.quotients.iter().zip(&ds) {
                sum = sum.add(&o.multiply(q, d));
            }
            assert_eq!(sum, f, "{name}");
            let lms: Vec<_> = ds.iter().map(|d| d.lm(&order).unwrap().clone()).collect();
            for (e, _) in r.remainder.terms() {
                assert!(lms.iter().all(|l| monomial_divides(l, e).is_none()), "{name}: remainder term divisible");
            }
            if let Some(lf) = f.lm(&order) {
                for (q, d) in r.quotients.iter().zip(&ds) {
                    if !q.is_zero() {
                        let lqd = q.lm(&order).unwrap().add(d.lm(&order).unwrap());
                        assert_ne!(order.cmp(&lqd, lf), std::cmp::Ordering::Greater, "{name}: degree bound");
                    }
                }
            }
        }
    }
}

#[test]
fn bases_are_sound_complete_and_characterizing() {
    let budget = Budget::default();
    let order = MonomialOrder::Deglex;
    for (k, name) in SHIPPED.iter().enumerate() {
        let a = shipped(name);
        let o = WordOracle::new(a.presentation());
        let mut rng = ChaCha8Rng::seed_from_u64(50 + k as u64);
        for _ in 0..15 {
            let gens: Vec<Polynomial> = (0..rng.gen_range(1..=2)).map(|_| nonconstant(&a, &mut rng, 2)).collect();
            let h = left_groebner_certified(&a, &gens, &order, budget).unwrap();
            let gb = match &h.status {
                IdealStatus::Proper(gb) => gb,
                IdealStatus::ImproperUnit { certificate } => {
                    let cof = certificate.as_ref().unwrap();
                    let one = cof.iter().zip(&gens).fold(Polynomial::zero(), |s, (c, g)| s.add(&o.multiply(c, g)));
                    assert_eq!(one, a.one(), "{name}: unit certificate");
                    continue;
                }
                IdealStatus::Unknown(_) => continue,
            };
            for (g, cof) in gb.elements.iter().zip(gb.certificates.as_ref().unwrap()) {
                let s = cof.iter().zip(&gens).fold(Polynomial::zero(), |s, (c, f)| s.add(&o.multiply(c, f)));
                assert_eq!(&s, g, "{name}: certificate");
            }
            let lms = gb.leading_monomials();
            for _ in 0..10 {
                let r = combination(&a, &mut rng, &gens, 2);
                assert_eq!(is_member_left(&a, &r, &h), Membership::Yes, "{name}: completeness");
                if let Some(l) = r.lm(&order) {
                    assert!(lms.iter().any(|m| monomial_divides(m, l).is_some()), "{name}: characterization");
                }
            }
        }
    }
}

#[test]
fn saturation_is_a_right_fixpoint() {
    let order = MonomialOrder::Deglex;
    for (k, name) in
        ["qplane_m1", "qplane_2", "qplane_gf5", "qplane_z3", "weyl3", "multiparam3", "twisted_gauss"].iter().enumerate()
    {
        let a = shipped(name);
        let mut rng = ChaCha8Rng::seed_from_u64(70 + k as u64);
        for _ in 0..10 {
            let gens = vec![nonconstant(&a, &mut rng, 2)];
            let h = two_sided_saturate(&a, &gens, &order, Budget::default()).unwrap();
            let Some(gb) = h.basis() else { continue };
            let mut mults: Vec<Polynomial> = (0..a.nvars()).map(|j| a.var(j)).collect();
            if a.is_twisted() {
                mults.push(a.constant(a.field().zeta().unwrap()));
            }
            for g in &gb.elements {
                for x in &mults {
                    let r = divide(&a, &a.multiply(g, x), &gb.elements, &order).unwrap();
                    assert!(r.remainder.is_zero(), "{name}: {} not closed", a.format(g));
                }
            }
        }
    }
}

#[test]
fn saturation_contains_the_brute_force_span() {
    let order = MonomialOrder::Deglex;
    for name in ["qplane_m1", "qplane_2", "weyl3", "witten"] {
        let a = shipped(name);
        let o = WordOracle::new(a.presentation());
        let mut rng = ChaCha8Rng::seed_from_u64(90);
        for _ in 0..5 {
            let gens = vec![nonconstant(&a, &mut rng, 1)];
            let h = two_sided_saturate(&a, &gens, &order, Budget::default()).unwrap();
            if h.is_unknown() {
                continue;
            }
            let span = two_sided_span(&o, a.field(), a.nvars(), &gens, 3);
            for v in span.basis() {
                let p = common::from_vector(&v);
                assert_eq!(is_member_left(&a, &p, &h), Membership::Yes, "{name}: {}", a.format(&p));
            }
            if span.contains(&to_vector(&a.one())) {
                assert!(h.is_unit(), "{name}");
            }
        }
    }
}

#[test]
fn intersections_lie_in_both_ideals() {
    let order = MonomialOrder::Deglex;
    let b = Budget::default();
    for (k, name) in ["commutative2", "qplane_2", "qplane_m1", "qplane_gf5"].iter().enumerate() {
        let a = shipped(name);
        let mut rng = ChaCha8Rng::seed_from_u64(110 + k as u64);
        for _ in 0..10 {
            let i = left_groebner(&a, &[nonconstant(&a, &mut rng, 1)], &order, b).unwrap();
            let j = left_groebner(&a, &[nonconstant(&a, &mut rng, 1)], &order, b).unwrap();
            let r = intersect_left(&a, &i, &j, b).unwrap();
            if !r.complete {
                continue;
            }
            for g in &r.generators {
                assert_eq!(is_member_left(&a, g, &i), Membership::Yes, "{name}");
                assert_eq!(is_member_left(&a, g, &j), Membership::Yes, "{name}");
            }
        }
    }
}

#[test]
fn orders_agree_on_membership() {
    let b = Budget::default();
    let a = shipped("qplane_z3");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let gens: Vec<Polynomial> = (0..2).map(|_| nonconstant(&a, &mut rng, 2)).collect();
        let h1 = left_groebner(&a, &gens, &MonomialOrder::Deglex, b).unwrap();
        let h2 = left_groebner(&a, &gens, &MonomialOrder::Degrevlex, b).unwrap();
        for _ in 0..5 {
            let f = if rng.gen_bool(0.5) {
                combination(&a, &mut rng, &gens, 1)
            } else {
                random_polynomial(&a, &mut rng, 3, 3)
            };
            let (m1, m2) = (is_member_left(&a, &f, &h1), is_member_left(&a, &f, &h2));
            if m1 != Membership::Unknown && m2 != Membership::Unknown {
                assert_eq!(m1, m2);
            }
        }
    }
}
