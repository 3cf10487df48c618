//! Model construction from a manifold description, and the lattice conditions.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::character::{Character, TrivialityOracle};
use crate::error::Error;
use crate::exterior::{wedge_words, DiffMode, Element, Kind, Term, Universe, UniverseBuilder, Word};
use crate::linalg::{Matrix, PivotOrder};
use crate::model::{word_indices, FiniteDGA, Flavor};
use crate::scalar::Scalar;
use crate::sparse::{self, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Nilmanifold,
    Splitting,
    Parallelizable,
    SymplecticSplitting,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Nilmanifold => "nilmanifold",
            ModelKind::Splitting => "splitting",
            ModelKind::Parallelizable => "parallelizable",
            ModelKind::SymplecticSplitting => "symplectic-splitting",
        }
    }
}

impl core::str::FromStr for ModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "nilmanifold" => ModelKind::Nilmanifold,
            "splitting" => ModelKind::Splitting,
            "parallelizable" => ModelKind::Parallelizable,
            "symplectic-splitting" => ModelKind::SymplecticSplitting,
            _ => return Err(Error::Input(alloc::format!("unknown kind {s:?}"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct FiberGenerator {
    pub name: String,
    pub alpha: Character,
}

/// A term of a bivector or form given by generator names.
#[derive(Clone, Debug)]
pub struct NamedTerm {
    pub word: Vec<String>,
    pub twist: Option<Character>,
    pub coef: Scalar,
}

#[derive(Clone, Debug)]
pub struct ManifoldSpec {
    pub name: String,
    pub kind: ModelKind,
    /// complex dimension of the abelian factor
    pub n: usize,
    pub fiber: Vec<FiberGenerator>,
    /// `[Y_i, Y_j] = Σ c Y_k` on fiber indices
    pub brackets: Vec<(usize, usize, Vec<(usize, Scalar)>)>,
    pub oracle: TrivialityOracle,
    pub assumptions: Vec<String>,
    pub omega: Option<Vec<NamedTerm>>,
    pub mu: Option<Vec<NamedTerm>>,
    pub params: BTreeMap<String, String>,
}

pub fn base_vector(k: usize) -> String {
    alloc::format!("Z{}", k + 1)
}

pub fn anti_form(name: &str) -> String {
    alloc::format!("{}b", name.to_lowercase())
}

pub fn holo_form(name: &str) -> String {
    name.to_lowercase()
}

impl ManifoldSpec {
    pub fn m(&self) -> usize {
        self.fiber.len()
    }

    /// Characters of the frame `X_1..X_n, Y_1..Y_m`.
    pub fn frame_characters(&self) -> Vec<Character> {
        let mut out: Vec<Character> = (0..self.n).map(|_| Character::identity(self.n)).collect();
        out.extend(self.fiber.iter().map(|f| f.alpha.clone()));
        out
    }

    pub fn frame_names(&self) -> Vec<String> {
        let mut out: Vec<String> = (0..self.n).map(base_vector).collect();
        out.extend(self.fiber.iter().map(|f| f.name.clone()));
        out
    }

    fn product(&self, set: &[usize], f: impl Fn(&Character) -> Character) -> Character {
        let mut c = Character::identity(self.n);
        for &j in set {
            c = c.mul_unchecked(&f(&self.fiber[j].alpha));
        }
        c
    }

    /// Checks dimensions, Jacobi, weight compatibility and the kind's assumptions.
    pub fn validate(&self) -> Result<(), Error> {
        for f in &self.fiber {
            if f.alpha.dim() != self.n {
                return Err(Error::Dimension { expected: self.n, found: f.alpha.dim() });
            }
        }
        if let Some(g) = self.oracle.generators().first() {
            if g.dim() != self.n {
                return Err(Error::Dimension { expected: self.n, found: g.dim() });
            }
        }
        let m = self.m();
        for (i, j, exp) in &self.brackets {
            for &x in [i, j].into_iter().chain(exp.iter().map(|(k, _)| k)) {
                if x >= m {
                    return Err(Error::Index { index: x, len: m });
                }
            }
            let aij = self.fiber[*i].alpha.mul_unchecked(&self.fiber[*j].alpha);
            for (k, c) in exp {
                if !c.is_zero() && self.fiber[*k].alpha != aij {
                    return Err(Error::Assumption(alloc::format!(
                        "the action does not preserve [{}, {}] → {}",
                        self.fiber[*i].name,
                        self.fiber[*j].name,
                        self.fiber[*k].name
                    )));
                }
            }
        }
        // Jacobi and d² = 0 come from building the universe
        self.polyvector_universe()?;
        let top = self.product(&(0..m).collect::<Vec<_>>(), Character::clone);
        match self.kind {
            ModelKind::Nilmanifold => {
                if let Some(f) = self.fiber.iter().find(|f| !f.alpha.is_identity()) {
                    return Err(Error::Assumption(alloc::format!(
                        "nilmanifold generator {} carries a nontrivial character",
                        f.name
                    )));
                }
            }
            ModelKind::Splitting | ModelKind::SymplecticSplitting => {
                if !top.is_identity() {
                    return Err(Error::Assumption(alloc::format!(
                        "product of all fiber characters is {top}, not 1"
                    )));
                }
                if self.kind == ModelKind::SymplecticSplitting {
                    if !self.brackets.iter().all(|(_, _, e)| e.iter().all(|(_, c)| c.is_zero())) {
                        return Err(Error::Unsupported("symplectic models need an abelian fiber".into()));
                    }
                    if let Some(f) = self.fiber.iter().find(|f| !f.alpha.is_real()) {
                        return Err(Error::Assumption(alloc::format!(
                            "character of {} is not real valued",
                            f.name
                        )));
                    }
                }
            }
            ModelKind::Parallelizable => {
                if let Some(f) = self.fiber.iter().find(|f| !f.alpha.is_holomorphic()) {
                    return Err(Error::Assumption(alloc::format!(
                        "character of {} is not holomorphic",
                        f.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Product frame `Z_k, Y_j` with their (0,1)-forms.
    pub fn polyvector_universe(&self) -> Result<Universe, Error> {
        let mut b = UniverseBuilder::new(self.n);
        let mut vec_ids = Vec::new();
        for k in 0..self.n {
            vec_ids.push(b.generator(base_vector(k), Kind::Vector10, Some((k, false)), None));
        }
        for f in &self.fiber {
            vec_ids.push(b.generator(f.name.clone(), Kind::Vector10, None, None));
        }
        for k in 0..self.n {
            b.generator(anti_form(&base_vector(k)), Kind::Covector01, None, Some(vec_ids[k]));
        }
        for (j, f) in self.fiber.iter().enumerate() {
            b.generator(anti_form(&f.name), Kind::Covector01, None, Some(vec_ids[self.n + j]));
        }
        for (i, j, exp) in &self.brackets {
            b.bracket(
                vec_ids[self.n + i],
                vec_ids[self.n + j],
                exp.iter().map(|(k, c)| (vec_ids[self.n + k], c.clone())).collect(),
            );
        }
        b.build()
    }

    /// Frame with (1,0)- and (0,1)-forms; vectors are kept only to carry the structure constants.
    pub fn form_universe(&self, mode: DiffMode) -> Result<Universe, Error> {
        let mut b = UniverseBuilder::new(self.n).mode(mode);
        let mut vec_ids = Vec::new();
        for k in 0..self.n {
            vec_ids.push(b.generator(base_vector(k), Kind::Vector10, Some((k, false)), None));
        }
        for f in &self.fiber {
            vec_ids.push(b.generator(f.name.clone(), Kind::Vector10, None, None));
        }
        let names = self.frame_names();
        for (i, name) in names.iter().enumerate() {
            b.generator(holo_form(name), Kind::Covector10, None, Some(vec_ids[i]));
        }
        for (i, name) in names.iter().enumerate() {
            b.generator(anti_form(name), Kind::Covector01, None, Some(vec_ids[i]));
        }
        for (i, j, exp) in &self.brackets {
            b.bracket(
                vec_ids[self.n + i],
                vec_ids[self.n + j],
                exp.iter().map(|(k, c)| (vec_ids[self.n + k], c.clone())).collect(),
            );
        }
        b.build()
    }

    fn beta(&self, j: usize) -> Character {
        self.fiber[j].alpha.unitary_part()
    }

    fn gamma(&self, j: usize) -> Character {
        self.fiber[j].alpha.conj().unitary_part()
    }

    /// `β_J⁻¹ γ_L`, the character deciding whether a polyvector word survives.
    pub fn c_condition(&self, jset: &[usize], lset: &[usize]) -> Character {
        let mut c = Character::identity(self.n);
        for &j in jset {
            c = c.mul_unchecked(&self.beta(j).inv());
        }
        for &l in lset {
            c = c.mul_unchecked(&self.gamma(l));
        }
        c
    }

    /// `α_J β_J⁻¹ ᾱ_L⁻¹ γ_L`, the twist of a surviving polyvector word.
    pub fn c_twist(&self, jset: &[usize], lset: &[usize]) -> Character {
        let mut c = Character::identity(self.n);
        for &j in jset {
            c = c.mul_unchecked(&self.fiber[j].alpha).mul_unchecked(&self.beta(j).inv());
        }
        for &l in lset {
            c = c.mul_unchecked(&self.fiber[l].alpha.conj().inv()).mul_unchecked(&self.gamma(l));
        }
        c
    }

    /// `β_J γ_L`, deciding whether a form word survives.
    pub fn b_condition(&self, jset: &[usize], lset: &[usize]) -> Character {
        let mut c = Character::identity(self.n);
        for &j in jset {
            c = c.mul_unchecked(&self.beta(j));
        }
        for &l in lset {
            c = c.mul_unchecked(&self.gamma(l));
        }
        c
    }

    /// `α_J⁻¹ β_J ᾱ_L⁻¹ γ_L`, the twist of a surviving form word.
    pub fn b_twist(&self, jset: &[usize], lset: &[usize]) -> Character {
        let mut c = Character::identity(self.n);
        for &j in jset {
            c = c.mul_unchecked(&self.fiber[j].alpha.inv()).mul_unchecked(&self.beta(j));
        }
        for &l in lset {
            c = c.mul_unchecked(&self.fiber[l].alpha.conj().inv()).mul_unchecked(&self.gamma(l));
        }
        c
    }

    fn meta(&self) -> Vec<(String, String)> {
        let mut out = alloc::vec![("kind".to_string(), self.kind.as_str().to_string())];
        for a in &self.assumptions {
            out.push(("assumption".to_string(), a.clone()));
        }
        out
    }
}

/// Subsets of `0..m` as bitmasks.
pub(crate) fn subsets(m: usize) -> impl Iterator<Item = u64> {
    0..(1u64 << m)
}

pub(crate) fn mask_list(mask: u64) -> Vec<usize> {
    word_indices(mask)
}

fn gen_mask(u: &Universe, names: &[String]) -> Result<Vec<usize>, Error> {
    names
        .iter()
        .map(|n| u.index_of(n).ok_or_else(|| Error::Structural(alloc::format!("missing generator {n}"))))
        .collect()
}

fn spread(ids: &[usize], mask: u64) -> Word {
    mask_list(mask).into_iter().fold(0, |w, i| w | 1 << ids[i])
}

/// Verifies that the top holomorphic form of the frame is closed.
fn canonical_frame(spec: &ManifoldSpec) -> Result<String, Error> {
    let u = spec.form_universe(DiffMode::DeRham)?;
    let names: Vec<String> = spec.frame_names().iter().map(|n| holo_form(n)).collect();
    let ids = gen_mask(&u, &names)?;
    let top: Word = ids.iter().fold(0, |w, i| w | 1 << i);
    let d = u.differential(&u.word(top))?;
    if !d.is_zero() {
        return Err(Error::Structural(alloc::format!(
            "canonical frame {} is not closed: d = {}",
            u.fmt_word(top),
            u.fmt_element(&d)
        )));
    }
    Ok(u.fmt_word(top))
}

fn polyvector_nu(spec: &ManifoldSpec, u: &Universe) -> Vec<Character> {
    let n = spec.n;
    let mut nu = alloc::vec![Character::identity(n); u.len()];
    for f in &spec.fiber {
        nu[u.index_of(&f.name).expect("fiber vector")] = f.alpha.clone();
        nu[u.index_of(&anti_form(&f.name)).expect("fiber form")] = f.alpha.conj().inv();
    }
    nu
}

fn form_nu(spec: &ManifoldSpec, u: &Universe) -> Vec<Character> {
    let n = spec.n;
    let mut nu = alloc::vec![Character::identity(n); u.len()];
    for f in &spec.fiber {
        nu[u.index_of(&f.name).expect("fiber vector")] = f.alpha.clone();
        nu[u.index_of(&holo_form(&f.name)).expect("fiber form")] = f.alpha.inv();
        nu[u.index_of(&anti_form(&f.name)).expect("fiber form")] = f.alpha.conj().inv();
    }
    nu
}

/// Polyvector model of `ℂⁿ × N` with all words untwisted.
pub fn build_nilmanifold_model(spec: &ManifoldSpec) -> Result<FiniteDGA, Error> {
    if spec.kind != ModelKind::Nilmanifold {
        return Err(Error::Input(alloc::format!("expected a nilmanifold, got {}", spec.kind.as_str())));
    }
    spec.validate()?;
    let frame = canonical_frame(spec)?;
    let u = spec.polyvector_universe()?;
    let terms: Vec<Term> = (0..(1u64 << u.len())).map(|w| Term::new(w, u.identity_twist())).collect();
    let nu = polyvector_nu(spec, &u);
    let mut m = FiniteDGA::new(alloc::format!("{}:dG", spec.name), Flavor::Polyvector, u, terms, nu)?;
    m.canonical_frame = Some(frame);
    m.metadata = spec.meta();
    Ok(m)
}

/// Chevalley–Eilenberg complex of the underlying real Lie algebra, complexified.
pub fn build_de_rham_model(spec: &ManifoldSpec) -> Result<FiniteDGA, Error> {
    if spec.fiber.iter().any(|f| !f.alpha.is_identity()) {
        return Err(Error::Unsupported("de Rham models are built for nilpotent tables only".into()));
    }
    let u = spec.form_universe(DiffMode::DeRham)?;
    let form_mask = u.mask_of(Kind::Covector10) | u.mask_of(Kind::Covector01);
    let ids = word_indices(form_mask);
    let terms: Vec<Term> =
        subsets(ids.len()).map(|s| Term::new(spread(&ids, s), u.identity_twist())).collect();
    let nu = form_nu(spec, &u);
    let mut m = FiniteDGA::new(alloc::format!("{}:CE", spec.name), Flavor::DeRham, u, terms, nu)?;
    m.metadata = spec.meta();
    Ok(m)
}

/// Enumerates `(I, J, K, L)` words of a splitting model.
fn splitting_words(
    spec: &ManifoldSpec,
    u: &Universe,
    first: &dyn Fn(&str) -> String,
    condition: &dyn Fn(&[usize], &[usize]) -> Character,
    twist: &dyn Fn(&[usize], &[usize]) -> Character,
) -> Result<Vec<Term>, Error> {
    let n = spec.n;
    let m = spec.m();
    let base_first = gen_mask(u, &(0..n).map(|k| first(&base_vector(k))).collect::<Vec<_>>())?;
    let fib_first = gen_mask(u, &spec.fiber.iter().map(|f| first(&f.name)).collect::<Vec<_>>())?;
    let base_anti = gen_mask(u, &(0..n).map(|k| anti_form(&base_vector(k))).collect::<Vec<_>>())?;
    let fib_anti = gen_mask(u, &spec.fiber.iter().map(|f| anti_form(&f.name)).collect::<Vec<_>>())?;
    let mut fiber_parts = Vec::new();
    for j in subsets(m) {
        for l in subsets(m) {
            let (jl, ll) = (mask_list(j), mask_list(l));
            if spec.oracle.is_trivial(&condition(&jl, &ll))? {
                fiber_parts.push((spread(&fib_first, j) | spread(&fib_anti, l), twist(&jl, &ll)));
            }
        }
    }
    let mut terms = Vec::new();
    for i in subsets(n) {
        for k in subsets(n) {
            let base = spread(&base_first, i) | spread(&base_anti, k);
            for (w, c) in &fiber_parts {
                terms.push(Term::new(base | w, c.clone()));
            }
        }
    }
    Ok(terms)
}

/// The form model `B` and the polyvector model `C` of a splitting-type solvmanifold.
pub fn build_splitting_models(spec: &ManifoldSpec) -> Result<(FiniteDGA, FiniteDGA), Error> {
    if !matches!(spec.kind, ModelKind::Splitting | ModelKind::SymplecticSplitting) {
        return Err(Error::Input(alloc::format!("expected a splitting spec, got {}", spec.kind.as_str())));
    }
    spec.validate()?;
    let frame = canonical_frame(spec)?;
    let bu = spec.form_universe(DiffMode::Dolbeault)?;
    let bterms = splitting_words(
        spec,
        &bu,
        &holo_form,
        &|j, l| spec.b_condition(j, l),
        &|j, l| spec.b_twist(j, l),
    )?;
    let bnu = form_nu(spec, &bu);
    let mut b = FiniteDGA::new(alloc::format!("{}:B", spec.name), Flavor::Dolbeault, bu, bterms, bnu)?;
    b.canonical_frame = Some(frame.clone());
    b.metadata = spec.meta();
    let c = build_splitting_c(spec)?;
    Ok((b, c))
}

/// Only the polyvector model `C`.
pub fn build_splitting_c(spec: &ManifoldSpec) -> Result<FiniteDGA, Error> {
    spec.validate()?;
    let frame = canonical_frame(spec)?;
    let cu = spec.polyvector_universe()?;
    let cterms = splitting_words(
        spec,
        &cu,
        &|s: &str| s.to_string(),
        &|j, l| spec.c_condition(j, l),
        &|j, l| spec.c_twist(j, l),
    )?;
    let cnu = polyvector_nu(spec, &cu);
    let mut c = FiniteDGA::new(alloc::format!("{}:C", spec.name), Flavor::Polyvector, cu, cterms, cnu)?;
    c.canonical_frame = Some(frame);
    c.metadata = spec.meta();
    Ok(c)
}

/// `B*` (anti-holomorphic forms) and `C* = ⋀𝔤_{1,0} ⊗ B*` of a complex parallelizable solvmanifold.
pub fn build_parallelizable_models(spec: &ManifoldSpec) -> Result<(FiniteDGA, FiniteDGA), Error> {
    if spec.kind != ModelKind::Parallelizable {
        return Err(Error::Input(alloc::format!("expected a parallelizable spec, got {}", spec.kind.as_str())));
    }
    spec.validate()?;
    let frame = canonical_frame(spec)?;
    let chars = spec.frame_characters();
    let names = spec.frame_names();
    let n_all = names.len();
    // surviving (0,q) parts: α_I⁻¹ dz̄_I with (ᾱ_I/α_I)|Γ = 1
    let mut survivors = Vec::new();
    for s in subsets(n_all) {
        let mut a = Character::identity(spec.n);
        for i in mask_list(s) {
            a = a.mul_unchecked(&chars[i]);
        }
        if spec.oracle.is_trivial(&a.conj().mul_unchecked(&a.inv()))? {
            survivors.push((s, a.inv()));
        }
    }
    let cu = spec.polyvector_universe()?;
    let vec_ids = gen_mask(&cu, &names)?;
    let form_ids = gen_mask(&cu, &names.iter().map(|n| anti_form(n)).collect::<Vec<_>>())?;
    let bterms: Vec<Term> = survivors.iter().map(|(s, c)| Term::new(spread(&form_ids, *s), c.clone())).collect();
    let nu = polyvector_nu(spec, &cu);
    let mut b = FiniteDGA::new(alloc::format!("{}:B", spec.name), Flavor::Polyvector, cu.clone(), bterms, nu.clone())?;
    b.metadata = spec.meta();
    let mut cterms = Vec::new();
    for p in subsets(n_all) {
        let mut a = Character::identity(spec.n);
        for i in mask_list(p) {
            a = a.mul_unchecked(&chars[i]);
        }
        for (s, c) in &survivors {
            cterms.push(Term::new(spread(&vec_ids, p) | spread(&form_ids, *s), a.mul_unchecked(c)));
        }
    }
    let mut c = FiniteDGA::new(alloc::format!("{}:C", spec.name), Flavor::Polyvector, cu, cterms, nu)?;
    c.canonical_frame = Some(frame);
    c.metadata = spec.meta();
    Ok((b, c))
}

/// Symplectic side of a splitting solvmanifold with abelian fiber.
#[derive(Clone, Debug)]
pub struct SymplecticModels {
    /// invariant-type forms `α_I x_I`, which are coordinate forms
    pub a: FiniteDGA,
    /// the polyvectors `α_I⁻¹ X_I`
    pub d: FiniteDGA,
    /// column `j`: image of `d`-basis vector `j` under `⋀ω♭`, in `a` coordinates
    pub transport: Vec<SparseVec<Scalar>>,
    inverse: Vec<SparseVec<Scalar>>,
}

impl SymplecticModels {
    pub fn to_forms(&self, v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        apply(&self.transport, v)
    }

    pub fn to_polyvectors(&self, v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        apply(&self.inverse, v)
    }

    /// `[a • b]_ω`: the polyvector bracket carried over through `ω`.
    pub fn bracket(&self, i: usize, j: usize) -> Result<SparseVec<Scalar>, Error> {
        let ei: SparseVec<Scalar> = [(i, Scalar::one())].into_iter().collect();
        let ej: SparseVec<Scalar> = [(j, Scalar::one())].into_iter().collect();
        let pi = self.to_polyvectors(&ei);
        let pj = self.to_polyvectors(&ej);
        let br = self.d.apply_bracket(&pi, &pj)?;
        Ok(self.to_forms(&br))
    }
}

fn apply(cols: &[SparseVec<Scalar>], v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
    let mut out = SparseVec::new();
    for (i, c) in v {
        sparse::axpy(&mut out, c, &cols[*i]);
    }
    out
}

/// Real coordinate directions of `ℂⁿ × ℂᵐ`: names and characters.
fn real_frame(spec: &ManifoldSpec) -> Vec<(String, Kind, Option<(usize, bool)>, Character)> {
    let n = spec.n;
    let mut out = Vec::new();
    for k in 0..n {
        out.push((base_vector(k), Kind::Vector10, Some((k, false)), Character::identity(n)));
    }
    for f in &spec.fiber {
        out.push((f.name.clone(), Kind::Vector10, None, f.alpha.clone()));
    }
    for k in 0..n {
        out.push((alloc::format!("{}b", base_vector(k)), Kind::Vector01, Some((k, true)), Character::identity(n)));
    }
    for f in &spec.fiber {
        out.push((alloc::format!("{}b", f.name), Kind::Vector01, None, f.alpha.conj()));
    }
    out
}

pub fn dual_form_name(vector: &str) -> String {
    alloc::format!("d{}", vector.to_lowercase())
}

/// The form model `A`, polyvector model `D` and `⋀ω♭` between them.
pub fn build_symplectic_models(spec: &ManifoldSpec) -> Result<SymplecticModels, Error> {
    if spec.kind != ModelKind::SymplecticSplitting {
        return Err(Error::Input(alloc::format!("expected a symplectic spec, got {}", spec.kind.as_str())));
    }
    spec.validate()?;
    let frame = real_frame(spec);
    let n = spec.n;
    let mut db = UniverseBuilder::new(n);
    for (name, kind, anchor, _) in &frame {
        db.generator(name.clone(), *kind, *anchor, None);
    }
    let du = db.build()?;
    let mut ab = UniverseBuilder::new(n).mode(DiffMode::DeRham);
    for (name, kind, _, _) in &frame {
        let k = if *kind == Kind::Vector10 { Kind::Covector10 } else { Kind::Covector01 };
        ab.generator(dual_form_name(name), k, None, None);
    }
    let au = ab.build()?;
    let r = frame.len();
    let mut dterms = Vec::new();
    for s in subsets(r) {
        let mut a = Character::identity(n);
        for i in mask_list(s) {
            a = a.mul_unchecked(&frame[i].3);
        }
        if spec.oracle.is_trivial(&a)? {
            dterms.push(Term::new(s, du.identity_twist()));
        }
    }
    let aterms: Vec<Term> = dterms.iter().map(|t| Term::new(t.word, au.identity_twist())).collect();
    let trivial = alloc::vec![Character::identity(n); r];
    let mut d = FiniteDGA::new(alloc::format!("{}:D", spec.name), Flavor::Polyvector, du, dterms, trivial.clone())?;
    let mut a = FiniteDGA::new(alloc::format!("{}:A", spec.name), Flavor::DeRham, au.clone(), aterms, trivial)?;
    d.metadata = spec.meta();
    a.metadata = spec.meta();

    let omega_terms = spec.omega.as_ref().ok_or_else(|| Error::Input("symplectic spec without omega".into()))?;
    let mut omega = Element::zero();
    for t in omega_terms {
        let names: Vec<&str> = t.word.iter().map(String::as_str).collect();
        let (neg, w) = au.word_from_names(&names)?;
        if crate::exterior::degree(w) != 2 {
            return Err(Error::Input("omega terms must be 2-forms".into()));
        }
        omega.add_term(Term::new(w, au.identity_twist()), if neg { -&t.coef } else { t.coef.clone() });
    }
    if a.coordinates(&omega).is_err() {
        return Err(Error::Assumption("omega does not lie in the invariant model A²".into()));
    }
    // ω♭ on generators: i_{∂_g} ω
    let mut flat = Vec::with_capacity(r);
    let mut gram = Matrix::<Scalar>::zeros(r, r);
    for g in 0..r {
        let img = omega.contract(g);
        for (t, c) in img.terms() {
            gram.set(t.word.trailing_zeros() as usize, g, c.clone());
        }
        flat.push(img);
    }
    if gram.rank_with(PivotOrder::Forward) < r {
        return Err(Error::Singular("omega is degenerate".into()));
    }
    let mut transport = Vec::with_capacity(d.dim());
    for i in 0..d.dim() {
        let mut img = au.word(0);
        for g in word_indices(d.term(i).word) {
            img = img.wedge(&flat[g]);
        }
        let v = a.coordinates(&img).map_err(|_| {
            Error::Escapes(alloc::format!("ω♭ of {}", d.fmt_basis(i)))
        })?;
        transport.push(v);
    }
    let inverse = invert_columns(&transport, a.dim())
        .ok_or_else(|| Error::Singular("⋀ω♭ is not invertible on the models".into()))?;
    Ok(SymplecticModels { a, d, transport, inverse })
}

/// Inverse of a square linear map given by columns, via augmented elimination.
fn invert_columns(cols: &[SparseVec<Scalar>], dim: usize) -> Option<Vec<SparseVec<Scalar>>> {
    if cols.len() != dim {
        return None;
    }
    // fast path: signed permutation with scalars
    let mut inv = alloc::vec![SparseVec::new(); dim];
    let mut monomial = true;
    for (j, c) in cols.iter().enumerate() {
        if c.len() != 1 {
            monomial = false;
            break;
        }
        let (i, x) = c.iter().next().expect("one entry");
        if !inv[*i].is_empty() {
            return None;
        }
        inv[*i].insert(j, x.inv()?);
    }
    if monomial {
        return Some(inv);
    }
    let mut m = Matrix::<Scalar>::zeros(dim, dim);
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c {
            m.set(*i, j, x.clone());
        }
    }
    let mi = m.inverse()?;
    Some((0..dim).map(|j| sparse::from_dense(&mi.col(j))).collect())
}

/// Outcome of a lattice condition check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub holds: bool,
    /// first violating index sets, 1-based, as `(J, L)` or `(I, [])`
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
    pub checked: usize,
}

fn sets_by_size(m: usize, r: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for j in subsets(m) {
        for l in subsets(m) {
            let (jl, ll) = (mask_list(j), mask_list(l));
            if jl.len() + ll.len() <= r {
                out.push((jl, ll));
            }
        }
    }
    out.sort_by(|a, b| (a.0.len() + a.1.len(), &a.0, &a.1).cmp(&(b.0.len() + b.1.len(), &b.0, &b.1)));
    out
}

/// For `|J|+|L| ≤ r`: `(β_J⁻¹γ_L)|Γ = 1` exactly when `α_J ᾱ_L⁻¹ = 1`.
pub fn check_condition_d(r: usize, spec: &ManifoldSpec) -> Result<ConditionReport, Error> {
    let mut checked = 0;
    for (jl, ll) in sets_by_size(spec.m(), r) {
        checked += 1;
        let lattice = spec.oracle.is_trivial(&spec.c_condition(&jl, &ll))?;
        let mut a = Character::identity(spec.n);
        for &j in &jl {
            a = a.mul_unchecked(&spec.fiber[j].alpha);
        }
        for &l in &ll {
            a = a.mul_unchecked(&spec.fiber[l].alpha.conj().inv());
        }
        if lattice != a.is_identity() {
            let one = |v: &[usize]| v.iter().map(|x| x + 1).collect();
            return Ok(ConditionReport { holds: false, witness: Some((one(&jl), one(&ll))), checked });
        }
    }
    Ok(ConditionReport { holds: true, witness: None, checked })
}

/// The full-strength version of the condition (all `J, L`) with lattice
/// triviality on both sides, which licenses the nilpotency cutoff.
pub fn check_condition_b(spec: &ManifoldSpec) -> Result<ConditionReport, Error> {
    let mut checked = 0;
    for (jl, ll) in sets_by_size(spec.m(), 2 * spec.m()) {
        checked += 1;
        let lhs = spec.oracle.is_trivial(&spec.c_condition(&jl, &ll))?;
        let mut a = Character::identity(spec.n);
        for &j in &jl {
            a = a.mul_unchecked(&spec.fiber[j].alpha);
        }
        for &l in &ll {
            a = a.mul_unchecked(&spec.fiber[l].alpha.conj().inv());
        }
        let rhs = match spec.oracle.is_trivial(&a) {
            Ok(b) => b,
            Err(Error::Unresolvable(_)) => a.is_identity(),
            Err(e) => return Err(e),
        };
        if lhs != rhs {
            let one = |v: &[usize]| v.iter().map(|x| x + 1).collect();
            return Ok(ConditionReport { holds: false, witness: Some((one(&jl), one(&ll))), checked });
        }
    }
    Ok(ConditionReport { holds: true, witness: None, checked })
}

/// For `|I| ≤ r` over the whole frame: `(ᾱ_I/α_I)|Γ = 1` exactly when `α_I = 1`.
pub fn check_condition_e(r: usize, spec: &ManifoldSpec) -> Result<ConditionReport, Error> {
    let chars = spec.frame_characters();
    let mut sets: Vec<Vec<usize>> =
        subsets(chars.len()).map(mask_list).filter(|s| s.len() <= r).collect();
    sets.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let mut checked = 0;
    for s in sets {
        checked += 1;
        let mut a = Character::identity(spec.n);
        for &i in &s {
            a = a.mul_unchecked(&chars[i]);
        }
        let lattice = spec.oracle.is_trivial(&a.conj().mul_unchecked(&a.inv()))?;
        if lattice != a.is_identity() {
            return Ok(ConditionReport {
                holds: false,
                witness: Some((s.iter().map(|x| x + 1).collect(), Vec::new())),
                checked,
            });
        }
    }
    Ok(ConditionReport { holds: true, witness: None, checked })
}

/// Pairing with the canonical frame, `C^{p,q} → B^{N−p,q}`:
/// `c·V∧F ↦ σ c·dual(V')∧F` with `dual(V)∧dual(V') = σ·top`.
pub fn duality_map(c: &FiniteDGA, b: &FiniteDGA, p: usize) -> Result<Vec<(usize, usize, Scalar)>, Error> {
    if c.canonical_frame.is_none() {
        return Err(Error::Unsupported("model has no canonical frame".into()));
    }
    let cu = c.universe();
    let bu = b.universe();
    let vmask = cu.mask_of(Kind::Vector10);
    let mut out = Vec::new();
    for i in 0..c.dim() {
        let t = c.term(i);
        if c.bigrade(i).0 != p {
            continue;
        }
        let v = t.word & vmask;
        let comp = vmask & !v;
        let sign = wedge_words(v, comp).map(|(neg, _)| neg).expect("disjoint");
        let mut w: Word = 0;
        for g in word_indices(comp) {
            let name = holo_form(&cu.generators()[g].name);
            w |= 1 << bu.index_of(&name).ok_or_else(|| Error::Structural(alloc::format!("no form {name}")))?;
        }
        // forms keep their names; product-frame order matches in both universes
        let mut names: Vec<&str> = Vec::new();
        for g in word_indices(t.word & !vmask) {
            names.push(cu.generators()[g].name.as_str());
        }
        let (neg_f, fw) = bu.word_from_names(&names)?;
        let (neg_w, word) = wedge_words(w, fw).expect("disjoint");
        let coef = if sign ^ neg_f ^ neg_w { Scalar::int(-1) } else { Scalar::one() };
        let target = Term::new(word, t.twist.clone());
        let j = b.index_of(&target).ok_or_else(|| {
            Error::Escapes(alloc::format!("dual of {} ({})", c.fmt_basis(i), bu.fmt_term(&target)))
        })?;
        out.push((i, j, coef));
    }
    Ok(out)
}
