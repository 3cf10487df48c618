//! Holomorphic Poisson bivectors on a model and their cohomology.

use alloc::vec::Vec;

use crate::builders::NamedTerm;
use crate::cohomology::{total_cohomology, CohomologyTable};
use crate::error::Error;
use crate::exterior::{Element, Term, Universe};
use crate::model::FiniteDGA;
use crate::scalar::Scalar;
use crate::sparse::SparseVec;

/// Element of `u` from name lists; a missing twist means the identity.
pub fn named_element(u: &Universe, terms: &[NamedTerm]) -> Result<Element, Error> {
    let mut e = Element::zero();
    for t in terms {
        let names: Vec<&str> = t.word.iter().map(|s| s.as_str()).collect();
        let (neg, w) = u.word_from_names(&names)?;
        let twist = match &t.twist {
            Some(c) if c.dim() != u.n() => return Err(Error::Dimension { expected: u.n(), found: c.dim() }),
            Some(c) => c.clone(),
            None => u.identity_twist(),
        };
        e.add_term(Term::new(w, twist), if neg { -&t.coef } else { t.coef.clone() });
    }
    Ok(e)
}

#[derive(Clone, Debug)]
pub struct PoissonStructure {
    pub mu: SparseVec<Scalar>,
    /// column `i` is `[μ • e_i]`
    pub operator: Vec<SparseVec<Scalar>>,
}

/// Accepts `mu` when it has bidegree (2,0), `∂̄μ = 0` and `[μ•μ] = 0`.
pub fn verify_poisson(m: &FiniteDGA, mu: &Element) -> Result<PoissonStructure, Error> {
    let coords = m.coordinates(mu)?;
    if let Some(i) = coords.keys().find(|&&i| m.bigrade(i) != (2, 0)) {
        return Err(Error::Input(alloc::format!("{} is not of bidegree (2,0)", m.fmt_basis(*i))));
    }
    let d = m.apply_diff(&coords);
    if !d.is_empty() {
        return Err(Error::NotPoisson { condition: "dbar", residual: m.element(&d) });
    }
    let sq = m.apply_bracket(&coords, &coords)?;
    if !sq.is_empty() {
        return Err(Error::NotPoisson { condition: "bracket", residual: m.element(&sq) });
    }
    let mut operator = Vec::with_capacity(m.dim());
    for i in 0..m.dim() {
        let e: SparseVec<Scalar> = [(i, Scalar::one())].into_iter().collect();
        operator.push(m.apply_bracket(&coords, &e).map_err(|_| {
            Error::Structural(alloc::format!("[μ • {}] leaves the model", m.fmt_basis(i)))
        })?);
    }
    Ok(PoissonStructure { mu: coords, operator })
}

pub fn poisson_cohomology(m: &FiniteDGA, ps: &PoissonStructure) -> Result<CohomologyTable, Error> {
    total_cohomology(m, &ps.operator)
}

pub fn operator_is_zero(ps: &PoissonStructure) -> bool {
    ps.operator.iter().all(|c| c.is_empty())
}
