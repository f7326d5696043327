mod common;

use proptest::prelude::*;

use common::{shipped, WordOracle, SHIPPED};
use skewpbw::{check_pbw_consistency, load_presentation, Algebra, Error};

#[test]
fn shipped_round_trip_and_consistency() {
    for name in SHIPPED {
        let a = shipped(name);
        let p = a.presentation();
        let back = load_presentation(&p.to_document()).unwrap();
        assert_eq!(&back, p, "{name}");
        assert_eq!(back.hash(), p.hash());
        let r = check_pbw_consistency(p, 4);
        assert!(r.consistent, "{name}: {:?}", r.failing_triple);
        assert!(p.classify().bijective, "{name}");
    }
}

#[test]
fn classification() {
    assert!(!shipped("witten").presentation().classify().quasi_commutative);
    assert!(shipped("multiparam3").presentation().classify().quasi_commutative);
    assert!(shipped("commutative2").presentation().classify().quasi_commutative);
    assert!(shipped("commutative2").presentation().is_commutative());
    assert!(!shipped("qplane_m1").presentation().is_commutative());
    assert!(shipped("twisted_gauss").presentation().is_twisted());
}

#[test]
fn multiparametric_constants() {
    let a = shipped("multiparam3");
    let f = a.field();
    let i = f.zeta().unwrap();
    let p = a.presentation();
    assert_eq!(p.relation(0, 1).c, &f.from_int(2) * &i);
    assert_eq!(p.relation(0, 2).c, &f.from_int(3) * &i);
    assert_eq!(p.relation(1, 2).c, i.neg());
}

#[test]
fn inconsistent_relations_are_reported() {
    let doc = "field = \"Q\"\nvars = [\"x\", \"y\", \"z\"]\nrelations = [\"y*x = x*y + z\", \"z*x = x*z\", \"z*y = 2*y*z\"]\n";
    let p = load_presentation(doc).unwrap();
    let r = check_pbw_consistency(&p, 3);
    assert!(!r.consistent);
    assert_eq!(r.failing_triple.unwrap(), ["x".to_string(), "y".to_string(), "z".to_string()]);
}

#[test]
fn malformed_documents() {
    let cases = [
        "field = \"Q\"\nvars = [\"x\", \"x\"]\nrelations = []\n",
        "field = \"Q\"\nvars = [\"x\", \"y\"]\nrelations = [\"x*y = y*x\"]\n",
        "field = \"Q\"\nvars = [\"x\", \"y\"]\nrelations = [\"y*x = x*y*x\"]\n",
        "field = \"Q\"\nvars = [\"x\", \"y\"]\nrelations = [\"y*x = 0\"]\n",
        "field = \"gf:6\"\nvars = [\"x\"]\nrelations = []\n",
        "field = \"Q(i)\"\nvars = [\"i\"]\nrelations = []\n",
        "field = \"Q\"\nvars = [\"x\"]\nrelations = []\nextra = 1\n",
        "field = \"gf:5\"\nvars = [\"x\", \"y\"]\nsigma = [\"conj\", \"id\"]\nrelations = []\n",
        "field = \"Q\"\nvars = [\"x\", \"y\"]\nrelations = [\"y*x = 2*x*y\", \"y*x = 3*x*y\"]\n",
    ];
    for doc in cases {
        assert!(load_presentation(doc).is_err(), "{doc}");
    }
    assert!(matches!(load_presentation("not toml ["), Err(Error::Presentation(_) | Error::Parse { .. })));
}

fn random_doc(c: [i64; 3], lower: [[i64; 4]; 3]) -> String {
    let names = ["x", "y", "z"];
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let mut rels = Vec::new();
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let mut rhs = format!("{}*{}*{}", c[k], names[i], names[j]);
        for (v, &a) in lower[k][..3].iter().enumerate() {
            if a != 0 {
                rhs.push_str(&format!(" + {a}*{}", names[v]));
            }
        }
        if lower[k][3] != 0 {
            rhs.push_str(&format!(" + {}", lower[k][3]));
        }
        rels.push(format!("\"{}*{} = {rhs}\"", names[j], names[i]));
    }
    format!("field = \"Q\"\nvars = [\"x\", \"y\", \"z\"]\nrelations = [{}]\n", rels.join(", "))
}

fn sparse() -> impl Strategy<Value = i64> {
    prop_oneof![4 => Just(0i64), 1 => -2i64..=2]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// The checker agrees with associativity of the word-rewriting oracle on
    /// the overlap z·y·x. Lower terms have degree ≤ 1, so every relation is
    /// admissible for deglex.
    #[test]
    fn consistency_matches_overlap_oracle(
        c in prop::array::uniform3(prop_oneof![Just(1i64), Just(-1), Just(2), Just(3)]),
        lower in prop::array::uniform3(prop::array::uniform4(sparse())),
    ) {
        let doc = random_doc(c, lower);
        let p = load_presentation(&doc).unwrap();
        let a = Algebra::new(p.clone());
        let o = WordOracle::new(&p);
        let (x, y, z) = (a.var(0), a.var(1), a.var(2));
        let assoc = o.multiply(&o.multiply(&z, &y), &x) == o.multiply(&z, &o.multiply(&y, &x));
        let r = check_pbw_consistency(&p, 0);
        prop_assert_eq!(r.consistent, assoc, "{}", doc);
    }
}
