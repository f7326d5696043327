use super::*;
use crate::presentation::{load_presentation, Presentation};
use crate::scalar::{Field, FieldSpec};

fn q() -> Field {
    Field::new(FieldSpec::Rationals).unwrap()
}

fn plane(qv: i64) -> Algebra {
    let f = q();
    Algebra::new(Presentation::quantum_plane(f.clone(), f.from_int(qv)).unwrap())
}

fn comm2() -> Algebra {
    Algebra::new(Presentation::commutative(q(), &["x", "y"]).unwrap())
}

fn weyl3() -> Algebra {
    Algebra::new(
        load_presentation("field = \"Q\"\nvars = [\"x\", \"y\", \"z\"]\nrelations = [\"y*x = x*y - 1\"]\n").unwrap(),
    )
}

fn polys(a: &Algebra, s: &str) -> Vec<Polynomial> {
    crate::parse::parse_polynomial_list(s, a).unwrap()
}

#[test]
fn self_division_and_classical_division() {
    let a = comm2();
    let o = MonomialOrder::Deglex;
    let f = a.parse("x^2*y + 3*x - 1").unwrap();
    let r = divide(&a, &f, std::slice::from_ref(&f), &o).unwrap();
    assert_eq!(r.quotients, vec![a.one()]);
    assert!(r.remainder.is_zero());
    let r = divide(&a, &a.parse("x^2*y").unwrap(), &[a.var(0)], &o).unwrap();
    assert_eq!(a.format(&r.quotients[0]), "x*y");
    assert!(r.remainder.is_zero());
    assert!(matches!(divide(&a, &f, &[], &o), Err(Error::EmptyDivisors)));
    assert!(matches!(divide(&a, &f, &[Polynomial::zero()], &o), Err(Error::ZeroDivisor(0))));
}

#[test]
fn monomial_ideal_basis() {
    let a = comm2();
    let h = left_groebner(&a, &polys(&a, "x, y"), &MonomialOrder::Deglex, Budget::default()).unwrap();
    let gb = h.basis().unwrap();
    assert_eq!(gb.elements, polys(&a, "x, y"));
    assert_eq!(is_member_left(&a, &a.one(), &h), Membership::No);
}

#[test]
fn anticommuting_points_give_unit() {
    let a = plane(-1);
    let h = left_groebner(&a, &polys(&a, "x - 1, y - 1"), &MonomialOrder::Deglex, Budget::default()).unwrap();
    assert!(h.is_unit());
}

#[test]
fn weyl_left_ideal_is_whole_ring() {
    let a = weyl3();
    let gens = polys(&a, "x - 1, y, z");
    let h = left_groebner_certified(&a, &gens, &MonomialOrder::Deglex, Budget::default()).unwrap();
    let IdealStatus::ImproperUnit { certificate: Some(cof) } = &h.status else { panic!("{:?}", h.status) };
    let one = cof.iter().zip(&gens).fold(Polynomial::zero(), |acc, (c, g)| acc.add(&a.multiply(c, g)));
    assert_eq!(one, a.one());
    assert_eq!(is_member_left(&a, &a.one(), &h), Membership::Yes);
}

#[test]
fn certificates_reassemble() {
    let a = plane(2);
    let gens = polys(&a, "x^2 + y, x*y - 1");
    let h = left_groebner_certified(&a, &gens, &MonomialOrder::Deglex, Budget::default()).unwrap();
    match &h.status {
        IdealStatus::Proper(gb) => {
            let certs = gb.certificates.as_ref().unwrap();
            for (g, cof) in gb.elements.iter().zip(certs) {
                let s = cof.iter().zip(&gens).fold(Polynomial::zero(), |acc, (c, f)| acc.add(&a.multiply(c, f)));
                assert_eq!(&s, g);
            }
        }
        IdealStatus::ImproperUnit { certificate } => {
            let cof = certificate.as_ref().unwrap();
            let s = cof.iter().zip(&gens).fold(Polynomial::zero(), |acc, (c, f)| acc.add(&a.multiply(c, f)));
            assert_eq!(s, a.one());
        }
        IdealStatus::Unknown(w) => panic!("{w}"),
    }
}

#[test]
fn membership_of_left_multiple() {
    let a = plane(-1);
    let h = left_groebner(&a, &polys(&a, "y"), &MonomialOrder::Deglex, Budget::default()).unwrap();
    assert_eq!(is_member_left(&a, &a.parse("x^2*y").unwrap(), &h), Membership::Yes);
}

#[test]
fn saturation_examples() {
    for qv in [-1, 2, 3] {
        let a = plane(qv);
        let h = two_sided_saturate(&a, &polys(&a, "x, y"), &MonomialOrder::Deglex, Budget::default()).unwrap();
        assert_eq!(h.basis().unwrap().elements, polys(&a, "x, y"));
    }
    let a = plane(-1);
    let h = two_sided_saturate(&a, &polys(&a, "x - 1, y - 1"), &MonomialOrder::Deglex, Budget::default()).unwrap();
    assert!(h.is_unit());
    let h = two_sided_saturate(&a, &polys(&a, "x - 1, y"), &MonomialOrder::Deglex, Budget::default()).unwrap();
    assert_eq!(h.basis().unwrap().elements, polys(&a, "x - 1, y"));
    assert_eq!(is_member_left(&a, &a.var(0), &h), Membership::No);
}

#[test]
fn intersections() {
    let a = comm2();
    let b = Budget::default();
    let o = MonomialOrder::Deglex;
    let ix = left_groebner(&a, &polys(&a, "x"), &o, b).unwrap();
    let iy = left_groebner(&a, &polys(&a, "y"), &o, b).unwrap();
    let r = intersect_left(&a, &ix, &iy, b).unwrap();
    assert_eq!(r.generators, polys(&a, "x*y"));
    let f = polys(&a, "x^2 - y");
    let i_f = left_groebner(&a, &f, &o, b).unwrap();
    assert_eq!(intersect_left(&a, &i_f, &i_f, b).unwrap().generators, f);

    let p = plane(2);
    let ix = left_groebner(&p, &polys(&p, "x"), &o, b).unwrap();
    let iy = left_groebner(&p, &polys(&p, "y"), &o, b).unwrap();
    let r = intersect_left(&p, &ix, &iy, b).unwrap();
    assert!(r.complete && !r.generators.is_empty());
    for g in &r.generators {
        assert_eq!(is_member_left(&p, g, &ix), Membership::Yes);
        assert_eq!(is_member_left(&p, g, &iy), Membership::Yes);
    }
    let xy = p.parse("x*y").unwrap();
    let meet = left_groebner(&p, &r.generators, &o, b).unwrap();
    assert_eq!(is_member_left(&p, &xy, &meet), Membership::Yes);
}

#[test]
fn degree_budget_gives_unknown() {
    let a = comm2();
    let budget = Budget { max_degree: 2, ..Budget::default() };
    let h = left_groebner(&a, &polys(&a, "x^3 - y, x*y^2 - 1"), &MonomialOrder::Deglex, budget).unwrap();
    assert!(h.is_unknown());
    assert_eq!(is_member_left(&a, &a.var(0), &h), Membership::Unknown);
}

#[test]
fn incompatible_block_order_rejected() {
    let w = Algebra::new(
        load_presentation("field = \"Q\"\nvars = [\"x\", \"y\", \"z\"]\nrelations = [\"z*y = y*z + 2*x\"]\n").unwrap(),
    );
    let o = MonomialOrder::Block(vec![0]);
    assert!(left_groebner(&w, &[w.var(0)], &MonomialOrder::Block(vec![2]), Budget::default()).is_ok());
    assert!(left_groebner(&w, &[w.var(0)], &o, Budget::default()).is_err());
}
