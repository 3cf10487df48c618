//! The Kuranishi recursion on a star-closed model and its obstruction ideal.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::builders::{check_condition_b, ManifoldSpec, ModelKind};
use crate::error::Error;
use crate::exterior::{Element, Kind};
use crate::hodge::HodgePackage;
use crate::linalg::PivotOrder;
use crate::model::{word_indices, FiniteDGA};
use crate::poly::{bilinear, Monomial, Poly, PolyVec};
use crate::scalar::Scalar;
use crate::sparse::{Echelon, SparseVec};

pub const DEFAULT_MAX_ORDER: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cutoff {
    /// the harmonic space is closed under the bracket, so `φ = φ₁`
    HarmonicClosure,
    /// `φ_r = 0` for `r > ν`, verified at `r = ν + 1`
    Nilpotency(usize),
    /// stopped at the given order without a certificate
    MaxOrder(usize),
}

impl Cutoff {
    pub fn as_str(&self) -> String {
        match self {
            Cutoff::HarmonicClosure => "harmonic-closure".into(),
            Cutoff::Nilpotency(n) => alloc::format!("nilpotency({n})"),
            Cutoff::MaxOrder(n) => alloc::format!("max-order({n})"),
        }
    }

    pub fn is_certified(&self) -> bool {
        !matches!(self, Cutoff::MaxOrder(_))
    }
}

#[derive(Clone, Debug)]
pub struct Parameter {
    pub name: String,
    pub alias: String,
    /// harmonic id of the carrier
    pub harmonic: usize,
    pub vector: SparseVec<Scalar>,
    pub bigrade: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct KuranishiResult {
    pub params: Vec<Parameter>,
    /// `φ_1, φ_2, …`
    pub orders: Vec<PolyVec>,
    pub phi: PolyVec,
    /// normalized, nonzero and distinct harmonic coefficients of `[φ•φ]` in degree 3
    pub obstructions: Vec<Poly>,
    pub cutoff: Cutoff,
    pub truncated: bool,
    /// `Some(true)` when the ideal is empty under a certificate
    pub smooth: Option<bool>,
}

impl KuranishiResult {
    pub fn names(&self) -> Vec<String> {
        self.params.iter().map(|p| p.name.clone()).collect()
    }

    pub fn aliases(&self) -> Vec<String> {
        self.params.iter().map(|p| p.alias.clone()).collect()
    }

    pub fn obstruction_strings(&self, aliased: bool) -> Vec<String> {
        let names = if aliased { self.aliases() } else { self.names() };
        self.obstructions.iter().map(|p| p.format(&names)).collect()
    }
}

/// Label of a generator name: vectors drop their leading letters, forms
/// become `b` followed by their digits.
fn label(name: &str, kind: Kind) -> String {
    let digits: String = name.chars().skip_while(|c| c.is_alphabetic()).filter(|c| c.is_ascii_digit()).collect();
    let body = if digits.is_empty() { name.to_string() } else { digits };
    if kind.is_vector() {
        body
    } else {
        alloc::format!("b{body}")
    }
}

/// `t` + vector labels + `^` + form labels.
pub fn alias_for(model: &FiniteDGA, i: usize) -> String {
    let u = model.universe();
    let mut vecs = String::new();
    let mut forms = String::new();
    for g in word_indices(model.term(i).word) {
        let gen = &u.generators()[g];
        if gen.kind.is_vector() {
            vecs.push_str(&label(&gen.name, gen.kind));
        } else {
            forms.push_str(&label(&gen.name, gen.kind));
        }
    }
    if forms.is_empty() {
        alloc::format!("t{vecs}")
    } else {
        alloc::format!("t{vecs}^{forms}")
    }
}

/// Which certificate applies to a spec, if any: the nilpotency step of the fiber
/// for nilmanifolds, and for splitting types when the full condition holds.
pub fn nilpotency_certificate(spec: &ManifoldSpec) -> Result<Option<usize>, Error> {
    match spec.kind {
        ModelKind::Nilmanifold => Ok(Some(nilpotency_step(spec))),
        ModelKind::Splitting | ModelKind::SymplecticSplitting => {
            if spec.m() <= 8 && check_condition_b(spec)?.holds {
                Ok(Some(nilpotency_step(spec)))
            } else {
                Ok(None)
            }
        }
        ModelKind::Parallelizable => Ok(None),
    }
}

/// Length of the lower central series of the fiber algebra (at least 1).
pub fn nilpotency_step(spec: &ManifoldSpec) -> usize {
    let m = spec.m();
    let table: BTreeMap<(usize, usize), SparseVec<Scalar>> = spec
        .brackets
        .iter()
        .flat_map(|(i, j, e)| {
            let v: SparseVec<Scalar> = e.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (*k, c.clone())).collect();
            let neg: SparseVec<Scalar> = v.iter().map(|(k, c)| (*k, -c)).collect();
            [((*i, *j), v), ((*j, *i), neg)]
        })
        .collect();
    let mut current: Vec<SparseVec<Scalar>> = (0..m).map(|i| [(i, Scalar::one())].into_iter().collect()).collect();
    let mut step = 0;
    while !current.is_empty() && step <= m {
        step += 1;
        let mut ech = Echelon::new(PivotOrder::Forward);
        let mut next = Vec::new();
        for i in 0..m {
            for v in &current {
                let mut w = SparseVec::new();
                for (j, c) in v {
                    if let Some(b) = table.get(&(i, *j)) {
                        crate::sparse::axpy(&mut w, c, b);
                    }
                }
                if let Some(r) = ech.insert(w) {
                    next.push(r);
                }
            }
        }
        current = next;
    }
    step.max(1)
}

struct Brackets<'a> {
    model: &'a FiniteDGA,
    cache: RefCell<BTreeMap<(usize, usize), SparseVec<Scalar>>>,
}

impl<'a> Brackets<'a> {
    fn new(model: &'a FiniteDGA) -> Self {
        Brackets { model, cache: RefCell::new(BTreeMap::new()) }
    }

    fn get(&self, i: usize, j: usize) -> Result<SparseVec<Scalar>, Error> {
        if let Some(v) = self.cache.borrow().get(&(i, j)) {
            return Ok(v.clone());
        }
        let v = self.model.bracket(i, j)?;
        self.cache.borrow_mut().insert((i, j), v.clone());
        Ok(v)
    }

    fn of(&self, a: &PolyVec, b: &PolyVec) -> Result<PolyVec, Error> {
        let err = RefCell::new(None);
        let out = bilinear(a, b, |i, j| match self.get(i, j) {
            Ok(v) => v,
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                SparseVec::new()
            }
        });
        match err.into_inner() {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }
}

/// Runs the recursion `φ_r = −½ Σ ∂̄*G[φ_s • φ_{r−s}]`, stopping at the first
/// applicable certificate or at `max_order`.
pub fn kuranishi_expand(
    pkg: &HodgePackage<'_>,
    nilpotency: Option<usize>,
    max_order: usize,
) -> Result<KuranishiResult, Error> {
    let model = pkg.model();
    let params: Vec<Parameter> = pkg
        .harmonic(2)
        .into_iter()
        .map(|(h, v)| {
            let lead = *v.keys().next().expect("nonzero harmonic vector");
            Parameter {
                name: alloc::format!("t[{}]", model.fmt_basis(lead)),
                alias: alias_for(model, lead),
                harmonic: h,
                vector: v.clone(),
                bigrade: model.bigrade(lead),
            }
        })
        .collect();
    let k = params.len();
    let brackets = Brackets::new(model);
    let mut phi1 = PolyVec::zero();
    for (i, p) in params.iter().enumerate() {
        phi1.add_scaled(&Monomial::var(k, i), &Scalar::one(), &p.vector);
    }

    let mut closed = true;
    'outer: for a in &params {
        for b in &params {
            let br = brackets.of(&vec_poly(k, &a.vector), &vec_poly(k, &b.vector))?;
            for v in br.terms.values() {
                if pkg.harmonic_projection(v) != *v {
                    closed = false;
                    break 'outer;
                }
            }
        }
    }

    let mut orders = alloc::vec![phi1];
    let half = Scalar::rat(-1, 2);
    let step = |orders: &Vec<PolyVec>| -> Result<PolyVec, Error> {
        let r = orders.len() + 1;
        let mut acc = PolyVec::zero();
        for s in 1..r {
            let b = brackets.of(&orders[s - 1], &orders[r - s - 1])?;
            acc = acc.add(&b);
        }
        Ok(acc.map(|v| pkg.adjoint(&pkg.green(v))).scale(&half))
    };
    let (cutoff, truncated) = if closed {
        (Cutoff::HarmonicClosure, false)
    } else if let Some(nu) = nilpotency {
        while orders.len() < nu {
            let next = step(&orders)?;
            orders.push(next);
        }
        let extra = step(&orders)?;
        if !extra.is_zero() {
            return Err(Error::Structural(alloc::format!(
                "nilpotency bound {nu} violated: φ_{} ≠ 0",
                nu + 1
            )));
        }
        (Cutoff::Nilpotency(nu), false)
    } else {
        while orders.len() < max_order.max(1) {
            let next = step(&orders)?;
            orders.push(next);
        }
        (Cutoff::MaxOrder(max_order), true)
    };
    while orders.last().is_some_and(|o| o.is_zero()) && orders.len() > 1 {
        orders.pop();
    }
    let mut phi = PolyVec::zero();
    for o in &orders {
        phi = phi.add(o);
    }
    let mut sq = brackets.of(&phi, &phi)?;
    if truncated {
        // only terms up to order N+1 are exact
        let top = orders.len() as u32 + 1;
        sq.terms.retain(|m, _| m.degree() <= top);
    }
    let coeffs = sq.map(|v| pkg.harmonic_coefficients(v));
    let mut obstructions = Vec::new();
    for (h, _) in pkg.harmonic(3) {
        let p = coeffs.component(h);
        if !p.is_zero() {
            let p = p.normalized();
            if !obstructions.contains(&p) {
                obstructions.push(p);
            }
        }
    }
    let smooth = if truncated { None } else { Some(obstructions.is_empty()) };
    Ok(KuranishiResult { params, orders, phi, obstructions, cutoff, truncated, smooth })
}

fn vec_poly(k: usize, v: &SparseVec<Scalar>) -> PolyVec {
    let mut p = PolyVec::zero();
    p.add_scaled(&Monomial::one(k), &Scalar::one(), v);
    p
}

/// The obstruction polynomials.
pub fn obstruction_ideal(r: &KuranishiResult) -> &[Poly] {
    &r.obstructions
}

/// Keeps only parameters carried by `(1,1)` classes (vector ⊗ (0,1)-form) and
/// sets the rest to zero.
pub fn restrict_classical(r: &KuranishiResult) -> KuranishiResult {
    let zero: Vec<usize> = r.params.iter().enumerate().filter(|(_, p)| p.bigrade != (1, 1)).map(|(i, _)| i).collect();
    let orders: Vec<PolyVec> = r.orders.iter().map(|o| o.restrict_zero(&zero)).collect();
    let phi = r.phi.restrict_zero(&zero);
    let mut obstructions: Vec<Poly> = Vec::new();
    for p in r.obstructions.iter().map(|p| p.restrict_zero(&zero)).filter(|p| !p.is_zero()) {
        let p = p.normalized();
        if !obstructions.contains(&p) {
            obstructions.push(p);
        }
    }
    let smooth = if r.truncated { None } else { Some(obstructions.is_empty()) };
    KuranishiResult {
        params: r.params.clone(),
        orders,
        phi,
        obstructions,
        cutoff: r.cutoff.clone(),
        truncated: r.truncated,
        smooth,
    }
}

/// `R = ∂̄φ + ½[φ•φ] − ½H[φ•φ]`.
pub fn mc_residual(pkg: &HodgePackage<'_>, r: &KuranishiResult) -> Result<PolyVec, Error> {
    let model = pkg.model();
    let brackets = Brackets::new(model);
    let sq = brackets.of(&r.phi, &r.phi)?;
    let half = Scalar::rat(1, 2);
    let d = r.phi.map(|v| model.apply_diff(v));
    let h = sq.map(|v| pkg.harmonic_projection(v));
    Ok(d.add(&sq.scale(&half)).add(&h.scale(&-&half)))
}

/// Whether every coordinate of `v` lies in the ideal generated by `gens`,
/// tested by linear algebra on all multiples up to the degree of `v`.
pub fn in_ideal(v: &PolyVec, gens: &[Poly], vars: usize) -> bool {
    let coords = v.support();
    if coords.is_empty() {
        return true;
    }
    let top = v.max_degree().unwrap_or(0);
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut ech = Echelon::new(PivotOrder::Forward);
    let id = |m: &Monomial, index: &mut BTreeMap<Monomial, usize>| {
        let n = index.len();
        *index.entry(m.clone()).or_insert(n)
    };
    for g in gens {
        let gd = g.total_degree().unwrap_or(0);
        if gd > top {
            continue;
        }
        for d in 0..=(top - gd) {
            for m in Monomial::all_of_degree(vars, d) {
                let mut row = SparseVec::new();
                for (gm, c) in g.terms() {
                    let key = id(&gm.mul(&m), &mut index);
                    row.insert(key, c.clone());
                }
                ech.insert(row);
            }
        }
    }
    coords.into_iter().all(|c| {
        let p = v.component(c);
        let mut row = SparseVec::new();
        for (m, x) in p.terms() {
            let key = id(m, &mut index);
            row.insert(key, x.clone());
        }
        ech.contains(&row)
    })
}

#[derive(Clone, Debug)]
pub struct FrameEntry {
    pub label: String,
    pub deformation: Element,
}

/// `E + i_E ε` for the frame of `L`: duals of the (0,1)-forms and of the vectors.
pub fn deform_frame(model: &FiniteDGA, eps: &Element) -> Result<Vec<FrameEntry>, Error> {
    if eps.terms().any(|(t, _)| crate::exterior::degree(t.word) != 2) {
        return Err(Error::Input("deformation must have degree 2".into()));
    }
    let u = model.universe();
    let mut out = Vec::new();
    for kind in [Kind::Covector01, Kind::Vector10] {
        for g in word_indices(u.mask_of(kind)) {
            out.push(FrameEntry {
                label: alloc::format!("dual({})", u.generators()[g].name),
                deformation: eps.contract(g),
            });
        }
    }
    Ok(out)
}
