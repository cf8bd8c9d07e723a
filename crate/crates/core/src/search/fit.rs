use serde::Serialize;

use super::{AbcTriple, AbcdQuadruple, SearchError};
use crate::bounds;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FitBound {
    Thm1prelim,
    Thm1,
    Abcd,
}

pub enum FitInstance {
    Triple(AbcTriple),
    Quadruple(AbcdQuadruple),
}

impl From<AbcTriple> for FitInstance {
    fn from(t: AbcTriple) -> Self {
        FitInstance::Triple(t)
    }
}

impl From<AbcdQuadruple> for FitInstance {
    fn from(q: AbcdQuadruple) -> Self {
        FitInstance::Quadruple(q)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KappaFit {
    /// Smallest κ for which the bound holds on every admitted instance.
    pub kappa: f64,
    pub admitted: u64,
    /// Instances dropped because the bound's hypothesis fails.
    pub skipped: u64,
    /// First instance attaining `kappa`.
    pub argmax: String,
}

/// The empirical minimal κ for `bound` over `instances`: the largest
/// per-instance demand. For `thm1` and `abcd` only instances satisfying the
/// hypothesis at `tau` count; `tau` is ignored for `thm1prelim`.
pub fn kappa_fit<I>(instances: I, bound: FitBound, tau: f64) -> Result<KappaFit, SearchError>
where
    I: IntoIterator,
    I::Item: Into<FitInstance>,
{
    let mut best: Option<(f64, String)> = None;
    let (mut admitted, mut skipped) = (0u64, 0u64);
    for inst in instances {
        let inst = inst.into();
        let demand = match (bound, &inst) {
            (FitBound::Thm1prelim, FitInstance::Triple(t)) => {
                Some(bounds::kappa_demand_thm1prelim(t))
            }
            (FitBound::Thm1, FitInstance::Triple(t)) => bounds::kappa_demand_thm1(t, tau)?,
            (FitBound::Abcd, FitInstance::Quadruple(q)) => bounds::kappa_demand_abcd(q, tau)?,
            _ => return Err(SearchError::WrongInstanceKind(bound)),
        };
        let Some(demand) = demand else {
            skipped += 1;
            continue;
        };
        admitted += 1;
        if best.as_ref().map_or(true, |(k, _)| demand > *k) {
            let label = match &inst {
                FitInstance::Triple(t) => t.to_string(),
                FitInstance::Quadruple(q) => q.to_string(),
            };
            best = Some((demand, label));
        }
    }
    let (kappa, argmax) = best.ok_or(SearchError::EmptyInstances)?;
    Ok(KappaFit {
        kappa,
        admitted,
        skipped,
        argmax,
    })
}
