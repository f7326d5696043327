//! Randomized checks of the algebraic-set / ideal-of-points correspondence,
//! restricted to a finite search domain.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skewpbw::geometry::random_polynomial;
use skewpbw::{Algebra, Budget, Geometry, Membership, Point, Polynomial, SearchDomain};

use super::{to_vector, two_sided_span, Span, WordOracle};

pub struct SuiteReport {
    pub instances: usize,
    pub violations: Vec<String>,
    pub skipped: usize,
}

fn members(geom: &Geometry, s: &[Polynomial], dom: &SearchDomain) -> Option<Vec<Point>> {
    let v = geom.vanishing_set(s, dom).unwrap();
    v.unknown().is_empty().then(|| v.points())
}

fn span_of(ps: &[Polynomial]) -> Span {
    let mut s = Span::new();
    for p in ps {
        s.insert(to_vector(p));
    }
    s
}

fn subset(rng: &mut ChaCha8Rng, pts: &[Point], max: usize) -> Vec<Point> {
    let k = rng.gen_range(1..=max.min(pts.len()));
    pts.choose_multiple(rng, k).cloned().collect()
}

/// Runs `instances` checks, cycling through the ten properties.
pub fn run(alg: &Algebra, dom: &SearchDomain, instances: usize, d: u32, seed: u64) -> SuiteReport {
    let geom = Geometry::new(alg.clone(), Budget::default());
    let oracle = WordOracle::new(alg.presentation());
    let field = alg.field();
    let n = alg.nvars();
    let pts = dom.points(field, n).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let mut skipped = 0;
    let rp = |rng: &mut ChaCha8Rng, deg: u32| random_polynomial(alg, rng, deg, 3);
    for k in 0..instances {
        let tag = k % 10;
        let bad = |msg: String| format!("instance {k} (property {tag}): {msg}");
        match tag {
            0 => {
                let (f, g) = (rp(&mut rng, 2), rp(&mut rng, 2));
                let sum = f.add(&g);
                for z in &pts {
                    if geom.is_root(&f, z).unwrap() == Membership::Yes
                        && geom.is_root(&g, z).unwrap() == Membership::Yes
                        && geom.is_root(&sum, z).unwrap() == Membership::No
                    {
                        violations.push(bad(format!("f+g not a root at {z:?}")));
                    }
                }
            }
            1 => {
                let (f, g, h) = (rp(&mut rng, 2), rp(&mut rng, 1), rp(&mut rng, 1));
                let gfh = alg.multiply(&alg.multiply(&g, &f), &h);
                let (Some(vf), Some(v)) = (members(&geom, &[f], dom), members(&geom, &[gfh], dom)) else {
                    skipped += 1;
                    continue;
                };
                if let Some(z) = vf.iter().find(|z| !v.contains(z)) {
                    violations.push(bad(format!("V(f) ⊄ V(gfh) at {z:?}")));
                }
            }
            2 => {
                let s = vec![rp(&mut rng, 2)];
                let mut t = s.clone();
                t.push(rp(&mut rng, 2));
                let (Some(vs), Some(vt)) = (members(&geom, &s, dom), members(&geom, &t, dom)) else {
                    skipped += 1;
                    continue;
                };
                if let Some(z) = vt.iter().find(|z| !vs.contains(z)) {
                    violations.push(bad(format!("V(T) ⊄ V(S) at {z:?}")));
                }
            }
            3 => {
                let s1 = vec![rp(&mut rng, 2)];
                let s2 = vec![rp(&mut rng, 2), rp(&mut rng, 1)];
                let both: Vec<Polynomial> = s1.iter().chain(&s2).cloned().collect();
                let (Some(a), Some(b), Some(c)) =
                    (members(&geom, &s1, dom), members(&geom, &s2, dom), members(&geom, &both, dom))
                else {
                    skipped += 1;
                    continue;
                };
                let meet: Vec<Point> = a.iter().filter(|z| b.contains(z)).cloned().collect();
                if meet != c {
                    violations.push(bad("V(S1 ∪ S2) ≠ V(S1) ∩ V(S2)".into()));
                }
            }
            4 => {
                let y = subset(&mut rng, &pts, 5);
                let x: Vec<Point> = y[..rng.gen_range(1..=y.len())].to_vec();
                let iy = geom.ideal_of_points(&y, d).unwrap();
                let ix = span_of(&geom.ideal_of_points(&x, d).unwrap());
                if iy.iter().any(|g| !ix.contains(&to_vector(g))) {
                    violations.push(bad("I(Y) ⊄ I(X) for X ⊆ Y".into()));
                }
            }
            5 => {
                let s = rp(&mut rng, d);
                let Some(v) = members(&geom, std::slice::from_ref(&s), dom) else {
                    skipped += 1;
                    continue;
                };
                let iv = span_of(&geom.ideal_of_points(&v, d).unwrap());
                if !iv.contains(&to_vector(&s)) {
                    violations.push(bad("generator outside I(V(S))".into()));
                }
            }
            6 => {
                let x = subset(&mut rng, &pts, 4);
                for g in geom.ideal_of_points(&x, d).unwrap() {
                    for z in &x {
                        if geom.is_root(&g, z).unwrap() != Membership::Yes {
                            violations.push(bad(format!("point {z:?} is not a root of I(X)")));
                        }
                    }
                }
            }
            7 => {
                let x = subset(&mut rng, &pts, 4);
                let ix = geom.ideal_of_points(&x, d).unwrap();
                let Some(y) = members(&geom, &ix, dom) else {
                    skipped += 1;
                    continue;
                };
                if x.iter().any(|z| !y.contains(z)) {
                    violations.push(bad("X ⊄ V(I(X))".into()));
                }
                let iy = geom.ideal_of_points(&y, d).unwrap();
                let (sx, sy) = (span_of(&ix), span_of(&iy));
                if sx.dim() != sy.dim() || iy.iter().any(|g| !sx.contains(&to_vector(g))) {
                    violations.push(bad("I(V(I(X))) ≠ I(X) in low degree".into()));
                }
            }
            8 => {
                let x = subset(&mut rng, &pts, 3);
                let y = subset(&mut rng, &pts, 3);
                let xy: Vec<Point> = x.iter().chain(&y).cloned().collect();
                let ix = geom.ideal_of_points(&x, d).unwrap();
                let iy = geom.ideal_of_points(&y, d).unwrap();
                let ixy = geom.ideal_of_points(&xy, d).unwrap();
                let (sx, sy) = (span_of(&ix), span_of(&iy));
                let mut sum = sx.clone();
                for g in &iy {
                    sum.insert(to_vector(g));
                }
                let meet_dim = sx.dim() + sy.dim() - sum.dim();
                let inside = ixy.iter().all(|g| sx.contains(&to_vector(g)) && sy.contains(&to_vector(g)));
                if !inside || ixy.len() != meet_dim {
                    violations.push(bad("I(X ∪ Y) ≠ I(X) ∩ I(Y) in low degree".into()));
                }
            }
            _ => {
                let z = pts.choose(&mut rng).unwrap().clone();
                let gens = skewpbw::geometry::point_generators(alg, &z).unwrap();
                let brute = two_sided_span(&oracle, field, n, &gens, d);
                let iz = geom.ideal_of_points(std::slice::from_ref(&z), d).unwrap();
                let same = brute.dim() == iz.len() && iz.iter().all(|g| brute.contains(&to_vector(g)));
                if !same {
                    violations.push(bad(format!(
                        "I({{Z}}) and ⟨Z⟩ differ in degree ≤ {d} at {z:?}: {} vs {}",
                        iz.len(),
                        brute.dim()
                    )));
                }
            }
        }
    }
    SuiteReport { instances, violations, skipped }
}
