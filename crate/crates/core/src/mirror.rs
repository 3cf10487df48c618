//! Comparison of the complex-side model `C` with the symplectic model `A` of a
//! pseudo-Kähler splitting solvmanifold `ℂⁿ ⋉ ℂ^{2d}`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::builders::{
    anti_form, base_vector, build_splitting_c, build_symplectic_models, dual_form_name, mask_list, subsets,
    ConditionReport, ManifoldSpec, ModelKind, SymplecticModels,
};
use crate::character::Character;
use crate::error::Error;
use crate::exterior::Word;
use crate::model::FiniteDGA;

/// Above this many basis vectors the bracket is certified by constant
/// coordinate coefficients instead of pairwise evaluation.
pub const PAIRWISE_BRACKET_LIMIT: usize = 400;

/// Fiber sizes up to this use the materialized models.
pub const FULL_MODEL_FIBER_LIMIT: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MirrorPath {
    /// both models built, differentials and brackets evaluated
    Full,
    /// survivors counted per index quadruple, structures certified by constant twists
    Structural,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorReport {
    pub matched: bool,
    pub path: MirrorPath,
    /// 1-based `(J', J'', L', L'')` where exactly one of the two characters is trivial
    pub quadruple: Option<[Vec<usize>; 4]>,
    pub witness: Option<String>,
    pub quadruples_checked: usize,
    /// degree dimensions of `C` (complex side)
    pub dims_left: Vec<usize>,
    /// degree dimensions of `A` (symplectic side)
    pub dims_right: Vec<usize>,
    /// `A` word to `C` word; fiber parts only on the structural path
    pub map: Vec<(String, String)>,
}

struct Layout {
    n: usize,
    d: usize,
    beta: Vec<Character>,
    alpha: Vec<Character>,
}

fn layout(spec: &ManifoldSpec) -> Result<Layout, Error> {
    if spec.kind != ModelKind::SymplecticSplitting {
        return Err(Error::Input(alloc::format!("mirror needs a symplectic spec, got {}", spec.kind.as_str())));
    }
    if !spec.brackets.is_empty() {
        return Err(Error::Unsupported("mirror comparison needs an abelian fiber".into()));
    }
    let m = spec.fiber.len();
    if !m.is_multiple_of(2) {
        return Err(Error::Assumption("fiber dimension must be even".into()));
    }
    let d = m / 2;
    for i in 0..d {
        let a = &spec.fiber[i].alpha;
        if !a.is_real() {
            return Err(Error::Assumption(alloc::format!("character of {} is not real", spec.fiber[i].name)));
        }
        if spec.fiber[d + i].alpha != a.inv() {
            return Err(Error::Assumption(alloc::format!(
                "{} must carry the inverse character of {}",
                spec.fiber[d + i].name,
                spec.fiber[i].name
            )));
        }
    }
    Ok(Layout {
        n: spec.n,
        d,
        alpha: (0..d).map(|i| spec.fiber[i].alpha.clone()).collect(),
        beta: (0..d).map(|i| spec.fiber[i].alpha.unitary_part()).collect(),
    })
}

fn quad_char(n: usize, chars: &[Character], q: [u64; 4]) -> Character {
    let mut c = Character::identity(n);
    for (k, sign) in [(0, 1), (1, -1), (2, 1), (3, -1)] {
        for i in mask_list(q[k]) {
            c = c.mul_unchecked(&chars[i].pow(sign));
        }
    }
    c
}

fn one_based(mask: u64) -> Vec<usize> {
    mask_list(mask).into_iter().map(|i| i + 1).collect()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn add_fiber_degree(dims: &mut Vec<usize>, n: usize, f: usize) {
    for k in 0..=2 * n {
        let deg = f + k;
        if dims.len() <= deg {
            dims.resize(deg + 1, 0);
        }
        dims[deg] += binomial(2 * n, k);
    }
}

fn names(spec: &ManifoldSpec, d: usize, q: [u64; 4], symplectic: bool) -> String {
    let w = |i: usize| spec.fiber[i].name.clone();
    let mut parts: Vec<String> = Vec::new();
    if symplectic {
        parts.extend(mask_list(q[0]).into_iter().map(|i| dual_form_name(&w(i))));
        parts.extend(mask_list(q[1]).into_iter().map(|i| dual_form_name(&w(d + i))));
        parts.extend(mask_list(q[2]).into_iter().map(|i| dual_form_name(&alloc::format!("{}b", w(i)))));
        parts.extend(mask_list(q[3]).into_iter().map(|i| dual_form_name(&alloc::format!("{}b", w(d + i)))));
    } else {
        parts.extend(mask_list(q[1]).into_iter().map(w));
        parts.extend(mask_list(q[0]).into_iter().map(|i| w(d + i)));
        parts.extend(mask_list(q[2]).into_iter().map(|i| anti_form(&w(i))));
        parts.extend(mask_list(q[3]).into_iter().map(|i| anti_form(&w(d + i))));
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("∧")
    }
}

/// For all `J, L ⊂ [m]`: `β_J⁻¹γ_L` trivial iff `α_J ᾱ_L⁻¹` trivial.
pub fn smss_hypothesis(spec: &ManifoldSpec) -> Result<ConditionReport, Error> {
    let m = spec.fiber.len();
    let mut checked = 0;
    for j in subsets(m) {
        for l in subsets(m) {
            let (jl, ll) = (mask_list(j), mask_list(l));
            checked += 1;
            let mut a = Character::identity(spec.n);
            for &i in &jl {
                a = a.mul_unchecked(&spec.fiber[i].alpha);
            }
            for &i in &ll {
                a = a.mul_unchecked(&spec.fiber[i].alpha.conj().inv());
            }
            if spec.oracle.is_trivial(&spec.c_condition(&jl, &ll))? != spec.oracle.is_trivial(&a)? {
                let one = |v: Vec<usize>| v.into_iter().map(|i| i + 1).collect();
                return Ok(ConditionReport { holds: false, witness: Some((one(jl), one(ll))), checked });
            }
        }
    }
    Ok(ConditionReport { holds: true, witness: None, checked })
}

/// Compares `C` and `A` for a pseudo-Kähler spec, picking the full or the
/// structural path by fiber size.
pub fn mirror_compare(spec: &ManifoldSpec) -> Result<MirrorReport, Error> {
    if spec.fiber.len() <= FULL_MODEL_FIBER_LIMIT {
        let c = build_splitting_c(spec)?;
        let s = build_symplectic_models(spec)?;
        mirror_compare_models(spec, &c, &s)
    } else {
        compare(spec, None)
    }
}

/// Full comparison on materialized models.
pub fn mirror_compare_models(spec: &ManifoldSpec, c: &FiniteDGA, s: &SymplecticModels) -> Result<MirrorReport, Error> {
    compare(spec, Some((c, s)))
}

fn compare(spec: &ManifoldSpec, models: Option<(&FiniteDGA, &SymplecticModels)>) -> Result<MirrorReport, Error> {
    let lay = layout(spec)?;
    let (n, d) = (lay.n, lay.d);
    let mut report = MirrorReport {
        matched: false,
        path: if models.is_some() { MirrorPath::Full } else { MirrorPath::Structural },
        quadruple: None,
        witness: None,
        quadruples_checked: 0,
        dims_left: Vec::new(),
        dims_right: Vec::new(),
        map: Vec::new(),
    };
    let mut fiber_pairs = Vec::new();
    let mut twists_trivial = true;
    for q0 in subsets(d) {
        for q1 in subsets(d) {
            for q2 in subsets(d) {
                for q3 in subsets(d) {
                    let q = [q0, q1, q2, q3];
                    report.quadruples_checked += 1;
                    let b = spec.oracle.is_trivial(&quad_char(n, &lay.beta, q))?;
                    let a = spec.oracle.is_trivial(&quad_char(n, &lay.alpha, q))?;
                    if a != b && report.quadruple.is_none() {
                        report.quadruple = Some(q.map(one_based));
                        report.witness = Some(alloc::format!(
                            "β-word {} but α-word {} at J'={:?} J''={:?} L'={:?} L''={:?}",
                            if b { "trivial" } else { "nontrivial" },
                            if a { "trivial" } else { "nontrivial" },
                            one_based(q0),
                            one_based(q1),
                            one_based(q2),
                            one_based(q3)
                        ));
                    }
                    let f = [q0, q1, q2, q3].iter().map(|x| x.count_ones() as usize).sum();
                    if a {
                        add_fiber_degree(&mut report.dims_right, n, f);
                        fiber_pairs.push(q);
                    }
                    // the C word with W1_{J''}, W2_{J'}, w̄1_{L'}, w̄2_{L''}
                    let jset: Vec<usize> = mask_list(q1).into_iter().chain(mask_list(q0).into_iter().map(|i| d + i)).collect();
                    let lset: Vec<usize> = mask_list(q2).into_iter().chain(mask_list(q3).into_iter().map(|i| d + i)).collect();
                    if spec.oracle.is_trivial(&spec.c_condition(&jset, &lset))? {
                        add_fiber_degree(&mut report.dims_left, n, f);
                        if !spec.c_twist(&jset, &lset).is_identity() {
                            twists_trivial = false;
                        }
                    }
                }
            }
        }
    }
    let top = report.dims_left.len().max(report.dims_right.len());
    report.dims_left.resize(top, 0);
    report.dims_right.resize(top, 0);
    if report.quadruple.is_some() {
        return Ok(report);
    }

    match models {
        Some((c, s)) => {
            if c.degree_dims() != report.dims_left || s.a.degree_dims() != report.dims_right {
                return Err(Error::Structural("model dimensions disagree with the survivor count".into()));
            }
            if !c.has_zero_differential() {
                report.witness = Some("∂̄ ≠ 0 on C".into());
                return Ok(report);
            }
            if !s.a.has_zero_differential() {
                report.witness = Some("d ≠ 0 on A".into());
                return Ok(report);
            }
            let c_flat = if c.dim() <= PAIRWISE_BRACKET_LIMIT { c.bracket_is_trivial()? } else { twists_trivial };
            if !c_flat {
                report.witness = Some("bracket on C is nonzero".into());
                return Ok(report);
            }
            if s.d.dim() <= PAIRWISE_BRACKET_LIMIT && !s.d.bracket_is_trivial()? {
                report.witness = Some("bracket on A is nonzero".into());
                return Ok(report);
            }
            report.map = word_map(spec, n, d, c, s)?;
        }
        None => {
            // constant coordinate coefficients on an abelian group: ∂̄ and the bracket vanish
            if !twists_trivial {
                report.witness = Some("a surviving C word has a non-constant coefficient".into());
                return Ok(report);
            }
            report.map = fiber_pairs.iter().map(|q| (names(spec, d, *q, true), names(spec, d, *q, false))).collect();
        }
    }
    if report.dims_left != report.dims_right {
        report.witness = Some(alloc::format!(
            "degree dimensions differ: {:?} vs {:?}",
            report.dims_left,
            report.dims_right
        ));
        return Ok(report);
    }
    report.matched = true;
    Ok(report)
}

/// Sends every `A` basis word to its `C` word, swapping the `W1`/`W2` vector parts.
fn word_map(
    spec: &ManifoldSpec,
    n: usize,
    d: usize,
    c: &FiniteDGA,
    s: &SymplecticModels,
) -> Result<Vec<(String, String)>, Error> {
    let au = s.a.universe();
    let cu = c.universe();
    let mut gen_map: BTreeMap<usize, usize> = BTreeMap::new();
    let lookup = |ua: &str, uc: &str, gen_map: &mut BTreeMap<usize, usize>| -> Result<(), Error> {
        let a = au.index_of(&dual_form_name(ua)).ok_or_else(|| Error::Structural(alloc::format!("missing {ua}")))?;
        let b = cu.index_of(uc).ok_or_else(|| Error::Structural(alloc::format!("missing {uc}")))?;
        gen_map.insert(a, b);
        Ok(())
    };
    for k in 0..n {
        let z = base_vector(k);
        lookup(&z, &z, &mut gen_map)?;
        lookup(&alloc::format!("{z}b"), &anti_form(&z), &mut gen_map)?;
    }
    for f in 0..2 * d {
        let name = &spec.fiber[f].name;
        let swapped = &spec.fiber[if f < d { f + d } else { f - d }].name;
        lookup(name, swapped, &mut gen_map)?;
        lookup(&alloc::format!("{name}b"), &anti_form(name), &mut gen_map)?;
    }
    let c_index: BTreeMap<Word, usize> = (0..c.dim()).map(|i| (c.term(i).word, i)).collect();
    let mut hit = alloc::vec![false; c.dim()];
    let mut out = Vec::with_capacity(s.a.dim());
    for i in 0..s.a.dim() {
        let w = s.a.term(i).word;
        let target: Word = crate::model::word_indices(w).into_iter().fold(0, |acc, g| acc | 1 << gen_map[&g]);
        let j = *c_index
            .get(&target)
            .ok_or_else(|| Error::Structural(alloc::format!("{} has no image in C", s.a.fmt_basis(i))))?;
        if core::mem::replace(&mut hit[j], true) {
            return Err(Error::Structural(alloc::format!("{} is hit twice", c.fmt_basis(j))));
        }
        out.push((au.fmt_word(w), cu.fmt_word(target)));
    }
    if hit.iter().any(|h| !h) {
        return Err(Error::Structural("word map is not onto C".into()));
    }
    Ok(out)
}
