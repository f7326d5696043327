//! Division, left Gröbner bases, membership, two-sided saturation and
//! intersection of left ideals.

mod completion;
mod division;
mod intersect;
mod saturate;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::monomial::{Exponent, MonomialOrder};
use crate::poly::Polynomial;

pub use completion::{left_groebner, left_groebner_certified};
pub use division::{divide, normal_form, DivisionResult};
pub use intersect::{intersect_left, Intersection};
pub use saturate::two_sided_saturate;

pub(crate) use completion::Completion;
pub(crate) use division::Reducer;

/// Limits for completion and saturation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest total degree of an S-pair lcm that is still processed.
    pub max_degree: u32,
    pub max_pairs: usize,
    pub max_rounds: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_degree: 12, max_pairs: 100_000, max_rounds: 50 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sidedness {
    Left,
    TwoSided,
}

/// Three-valued answer for membership-type questions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Yes,
    No,
    Unknown,
}

impl Membership {
    pub fn from_bool(b: bool) -> Membership {
        if b {
            Membership::Yes
        } else {
            Membership::No
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Membership::Yes => "yes",
            Membership::No => "no",
            Membership::Unknown => "unknown",
        }
    }
}

/// A monic basis under `order`. `certificates[i][k]` is the left cofactor of
/// generator k in element i, when tracked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub elements: Vec<Polynomial>,
    pub reduced: bool,
    pub certificates: Option<Vec<Vec<Polynomial>>>,
}

impl GroebnerBasis {
    pub fn leading_monomials(&self) -> Vec<Exponent> {
        self.elements.iter().filter_map(|g| g.lm(&self.order).cloned()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealStatus {
    Proper(GroebnerBasis),
    /// A nonzero constant was derived; for left completions with tracking,
    /// the cofactors expressing 1 in the generators.
    ImproperUnit {
        certificate: Option<Vec<Polynomial>>,
    },
    Unknown(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionStats {
    pub pairs: usize,
    pub rounds: usize,
    pub max_degree_seen: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealHandle {
    pub generators: Vec<Polynomial>,
    pub sidedness: Sidedness,
    pub status: IdealStatus,
    pub stats: CompletionStats,
}

impl IdealHandle {
    pub fn is_proper(&self) -> bool {
        matches!(self.status, IdealStatus::Proper(_))
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.status, IdealStatus::ImproperUnit { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self.status, IdealStatus::Unknown(_))
    }

    pub fn basis(&self) -> Option<&GroebnerBasis> {
        match &self.status {
            IdealStatus::Proper(gb) => Some(gb),
            _ => None,
        }
    }

    pub fn status_str(&self) -> &'static str {
        match self.status {
            IdealStatus::Proper(_) => "proper",
            IdealStatus::ImproperUnit { .. } => "improper_unit",
            IdealStatus::Unknown(_) => "unknown",
        }
    }

    /// Structured document: presentation hash, order, elements, status.
    pub fn to_document(&self, alg: &Algebra, order: &MonomialOrder) -> serde_json::Value {
        let names = alg.names();
        let gens: Vec<String> = self.generators.iter().map(|g| alg.format(g)).collect();
        let mut doc = json!({
            "presentation_hash": alg.presentation().hash(),
            "order": order.describe(names),
            "sidedness": self.sidedness,
            "generators": gens,
            "status": self.status_str(),
            "stats": self.stats,
        });
        match &self.status {
            IdealStatus::Proper(gb) => {
                doc["elements"] = json!(gb.elements.iter().map(|g| alg.format(g)).collect::<Vec<_>>());
                doc["reduced"] = json!(gb.reduced);
                if let Some(certs) = &gb.certificates {
                    doc["certificates"] = json!(certs
                        .iter()
                        .map(|row| row.iter().map(|c| alg.format(c)).collect::<Vec<_>>())
                        .collect::<Vec<_>>());
                }
            }
            IdealStatus::ImproperUnit { certificate } => {
                doc["elements"] = json!(["1"]);
                if let Some(c) = certificate {
                    doc["certificates"] = json!([c.iter().map(|p| alg.format(p)).collect::<Vec<_>>()]);
                }
            }
            IdealStatus::Unknown(why) => {
                doc["reason"] = json!(why);
            }
        }
        doc
    }
}

/// Rejects orders under which some relation's lower terms would exceed the
/// monomial being rewritten; reduction would not terminate there.
pub fn check_order(alg: &Algebra, order: &MonomialOrder) -> Result<()> {
    if let MonomialOrder::Block(front) = order {
        let n = alg.nvars();
        if front.iter().any(|&v| v >= n) {
            return Err(Error::Invalid("block variable out of range".into()));
        }
        let p = alg.presentation();
        for j in 0..n {
            for i in 0..j {
                let top = Exponent::unit(n, i).add(&Exponent::unit(n, j));
                for (k, a) in p.relation(i, j).a.iter().enumerate() {
                    if !a.is_zero() && order.cmp(&Exponent::unit(n, k), &top) != std::cmp::Ordering::Less {
                        return Err(Error::Unsupported(format!(
                            "order {} is not compatible with the relation for {}*{}",
                            order.describe(alg.names()),
                            alg.names()[j],
                            alg.names()[i]
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// `f ∈ H`: yes iff the normal form modulo the basis vanishes.
pub fn is_member_left(alg: &Algebra, f: &Polynomial, h: &IdealHandle) -> Membership {
    match &h.status {
        IdealStatus::ImproperUnit { .. } => Membership::Yes,
        IdealStatus::Unknown(_) => Membership::Unknown,
        IdealStatus::Proper(gb) => Membership::from_bool(normal_form(alg, f, gb).is_zero()),
    }
}

#[cfg(test)]
mod tests;
