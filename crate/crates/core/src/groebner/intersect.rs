use crate::algebra::{shift_polynomial, unshift_polynomial, Algebra};
use crate::error::{Error, Result};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;

use super::{left_groebner, Budget, IdealHandle, IdealStatus};

/// Generators of I ∩ J; `complete` is false when the elimination basis ran
/// out of budget, in which case the generators are members but may not
/// generate the whole intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersection {
    pub generators: Vec<Polynomial>,
    pub complete: bool,
}

/// I ∩ J for left ideals via a central auxiliary variable t: the t-free part
/// of A[t]·(t·I + (1 − t)·J) under an order eliminating t.
pub fn intersect_left(alg: &Algebra, i: &IdealHandle, j: &IdealHandle, budget: Budget) -> Result<Intersection> {
    for h in [i, j] {
        if h.is_unknown() {
            return Err(Error::UnknownIdeal("intersection needs resolved ideals".into()));
        }
    }
    if i.is_unit() {
        return Ok(Intersection { generators: gens_of(j), complete: true });
    }
    if j.is_unit() {
        return Ok(Intersection { generators: gens_of(i), complete: true });
    }
    let ext = alg.with_central_variable()?;
    let t = ext.var(0);
    let one_minus_t = ext.one().sub(&t);
    let mut gens = Vec::new();
    for f in gens_of(i) {
        gens.push(ext.multiply(&t, &shift_polynomial(&f, 1)));
    }
    for g in gens_of(j) {
        gens.push(ext.multiply(&one_minus_t, &shift_polynomial(&g, 1)));
    }
    let order = MonomialOrder::Block(vec![0]);
    let h = left_groebner(&ext, &gens, &order, budget)?;
    match h.status {
        IdealStatus::Proper(gb) => Ok(Intersection {
            generators: gb.elements.iter().filter(|g| g.is_free_of(&[0])).map(|g| unshift_polynomial(g, 1)).collect(),
            complete: true,
        }),
        IdealStatus::ImproperUnit { .. } => Err(Error::Invalid("intersection of proper ideals produced a unit".into())),
        IdealStatus::Unknown(_) => Ok(Intersection { generators: Vec::new(), complete: false }),
    }
}

fn gens_of(h: &IdealHandle) -> Vec<Polynomial> {
    match &h.status {
        IdealStatus::Proper(gb) => gb.elements.clone(),
        _ => h.generators.iter().filter(|g| !g.is_zero()).cloned().collect(),
    }
}
