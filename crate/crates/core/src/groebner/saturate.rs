use crate::algebra::Algebra;
use crate::error::Result;
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;

use super::{check_order, Budget, Completion, IdealHandle, IdealStatus, Sidedness};

/// Right multipliers that generate A as a ring over the left action: the
/// variables, plus the field generator when some σ moves it.
fn right_multipliers(alg: &Algebra) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = (0..alg.nvars()).map(|j| alg.var(j)).collect();
    if alg.is_twisted() {
        if let Some(z) = alg.field().zeta() {
            out.push(alg.constant(z));
        }
    }
    out
}

/// Left basis of the two-sided ideal generated by `gens`: completes, then
/// adjoins reduced right multiples g·x_j until nothing new appears.
pub fn two_sided_saturate(
    alg: &Algebra,
    gens: &[Polynomial],
    order: &MonomialOrder,
    budget: Budget,
) -> Result<IdealHandle> {
    check_order(alg, order)?;
    let mut c = Completion::new(alg, order.clone(), budget, None);
    for g in gens {
        c.insert(g, None);
    }
    c.run();
    let mults = right_multipliers(alg);
    let mut checked = 0;
    let mut rounds = 0;
    let mut exhausted = None;
    while c.unit.is_none() && c.incomplete.is_none() {
        let end = c.basis_len();
        if checked == end {
            break;
        }
        rounds += 1;
        if rounds > budget.max_rounds {
            exhausted = Some(format!("saturation round budget {} exhausted", budget.max_rounds));
            break;
        }
        let fresh: Vec<Polynomial> = c.basis[checked..end].to_vec();
        checked = end;
        for g in &fresh {
            for r in &mults {
                let h = if r.is_constant() { alg.mul_right_scalar(g, &r.terms()[0].1) } else { alg.multiply(g, r) };
                c.insert(&h, None);
                if c.unit.is_some() {
                    break;
                }
            }
        }
        c.run();
    }
    c.stats.rounds = rounds;
    let stats = c.stats.clone();
    let status = match exhausted {
        Some(why) if c.unit.is_none() => IdealStatus::Unknown(why),
        _ => c.into_status(),
    };
    Ok(IdealHandle { generators: gens.to_vec(), sidedness: Sidedness::TwoSided, status, stats })
}
