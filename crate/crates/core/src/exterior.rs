//! Character-twisted wedge words: wedge, contraction, differential and bracket.
//!
//! Words are bitmasks over at most 64 degree-one generators; a set bit is a
//! factor and factors are ordered by generator index.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::character::Character;
use crate::error::Error;
use crate::scalar::Scalar;

pub type Word = u64;

pub const MAX_GENERATORS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Vector10,
    Vector01,
    Covector10,
    Covector01,
}

impl Kind {
    pub fn bidegree(self) -> (usize, usize) {
        match self {
            Kind::Vector10 | Kind::Covector10 => (1, 0),
            Kind::Vector01 | Kind::Covector01 => (0, 1),
        }
    }

    pub fn is_vector(self) -> bool {
        matches!(self, Kind::Vector10 | Kind::Vector01)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub kind: Kind,
    /// `(k, false)` acts on characters as `∂/∂z_k`, `(k, true)` as `∂/∂z̄_k`
    pub anchor: Option<(usize, bool)>,
    /// for covectors: the (1,0) vector whose structure constants give the differential
    pub partner: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffMode {
    Dolbeault,
    DeRham,
}

/// Generators, their bracket table and the differential on generators.
#[derive(Clone, Debug)]
pub struct Universe {
    n: usize,
    gens: Vec<Generator>,
    brackets: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
    diffs: Vec<Vec<(Word, Scalar)>>,
    anti_forms: Vec<Option<usize>>,
    holo_forms: Vec<Option<usize>>,
    mode: DiffMode,
}

pub struct UniverseBuilder {
    n: usize,
    gens: Vec<Generator>,
    brackets: Vec<(usize, usize, Vec<(usize, Scalar)>)>,
    mode: DiffMode,
}

impl UniverseBuilder {
    pub fn new(n: usize) -> Self {
        UniverseBuilder { n, gens: Vec::new(), brackets: Vec::new(), mode: DiffMode::Dolbeault }
    }

    pub fn mode(mut self, mode: DiffMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn generator(
        &mut self,
        name: impl Into<String>,
        kind: Kind,
        anchor: Option<(usize, bool)>,
        partner: Option<usize>,
    ) -> usize {
        self.gens.push(Generator { name: name.into(), kind, anchor, partner });
        self.gens.len() - 1
    }

    pub fn bracket(&mut self, i: usize, j: usize, expansion: Vec<(usize, Scalar)>) {
        self.brackets.push((i, j, expansion));
    }

    pub fn build(self) -> Result<Universe, Error> {
        let UniverseBuilder { n, gens, brackets, mode } = self;
        if gens.len() > MAX_GENERATORS {
            return Err(Error::Unsupported(alloc::format!(
                "{} generators exceed the limit of {MAX_GENERATORS}",
                gens.len()
            )));
        }
        let name = |i: usize| gens[i].name.clone();
        for (i, g) in gens.iter().enumerate() {
            if let Some((k, _)) = g.anchor {
                if k >= n || !g.kind.is_vector() {
                    return Err(Error::Structural(alloc::format!("bad anchor on {}", name(i))));
                }
            }
            if let Some(p) = g.partner {
                if g.kind.is_vector() || gens.get(p).map(|v| v.kind) != Some(Kind::Vector10) {
                    return Err(Error::Structural(alloc::format!("bad partner on {}", name(i))));
                }
            }
        }
        let mut table: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>> = BTreeMap::new();
        for (i, j, exp) in brackets {
            for &x in [i, j].iter().chain(exp.iter().map(|(k, _)| k)) {
                match gens.get(x) {
                    Some(g) if g.kind == Kind::Vector10 => {}
                    Some(g) => {
                        return Err(Error::Structural(alloc::format!(
                            "{} is not a (1,0) vector and cannot appear in the bracket table",
                            g.name
                        )))
                    }
                    None => return Err(Error::Index { index: x, len: gens.len() }),
                }
            }
            if i == j {
                if exp.iter().any(|(_, c)| !c.is_zero()) {
                    return Err(Error::Structural(alloc::format!(
                        "[{0},{0}] must vanish",
                        name(i)
                    )));
                }
                continue;
            }
            if gens[i].anchor.is_some() || gens[j].anchor.is_some() {
                return Err(Error::Structural(alloc::format!(
                    "abelian directions must be central: [{}, {}]",
                    name(i),
                    name(j)
                )));
            }
            let (a, b, s) = if i < j { (i, j, Scalar::one()) } else { (j, i, Scalar::int(-1)) };
            let entry = table.entry((a, b)).or_default();
            for (k, c) in exp {
                let v = entry.entry(k).or_insert_with(Scalar::zero);
                *v += &(&c * &s);
            }
        }
        let brackets: BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = table
            .into_iter()
            .map(|(k, m)| (k, m.into_iter().filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>()))
            .filter(|(_, v)| !v.is_empty())
            .collect();

        let mut u = Universe {
            n,
            gens,
            brackets,
            diffs: Vec::new(),
            anti_forms: alloc::vec![None; n],
            holo_forms: alloc::vec![None; n],
            mode,
        };
        u.check_jacobi()?;
        for (idx, g) in u.gens.iter().enumerate() {
            let Some(p) = g.partner else { continue };
            if let Some((k, false)) = u.gens[p].anchor {
                match g.kind {
                    Kind::Covector01 => u.anti_forms[k] = Some(idx),
                    Kind::Covector10 => u.holo_forms[k] = Some(idx),
                    _ => {}
                }
            }
        }
        let mut diffs = Vec::with_capacity(u.gens.len());
        for idx in 0..u.gens.len() {
            diffs.push(u.generator_differential(idx)?);
        }
        u.diffs = diffs;
        for idx in 0..u.gens.len() {
            let dd = u.differential(&u.differential(&u.word(1 << idx))?)?;
            if !dd.is_zero() {
                return Err(Error::Structural(alloc::format!(
                    "d∘d ≠ 0 on {}: {}",
                    u.gens[idx].name,
                    u.fmt_element(&dd)
                )));
            }
        }
        Ok(u)
    }
}

fn bit_positions(w: Word) -> impl Iterator<Item = usize> {
    let mut w = w;
    core::iter::from_fn(move || {
        if w == 0 {
            None
        } else {
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(t)
        }
    })
}

/// Sign and word of `a ∧ b`, or `None` when they share a factor.
pub fn wedge_words(a: Word, b: Word) -> Option<(bool, Word)> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    for y in bit_positions(b) {
        swaps += (a >> y >> 1).count_ones();
    }
    Some((swaps % 2 == 1, a | b))
}

/// Word with bit `g` removed and the sign of moving that factor to the front.
fn remove_factor(w: Word, g: usize) -> Option<(bool, Word)> {
    if w >> g & 1 == 0 {
        return None;
    }
    let before = (w & ((1u64 << g) - 1)).count_ones();
    Some((before % 2 == 1, w & !(1u64 << g)))
}

pub fn degree(w: Word) -> usize {
    w.count_ones() as usize
}

fn parity(k: usize) -> Scalar {
    if k.is_multiple_of(2) {
        Scalar::one()
    } else {
        Scalar::int(-1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub word: Word,
    pub twist: Character,
}

impl Term {
    pub fn new(word: Word, twist: Character) -> Self {
        Term { word, twist }
    }
}

/// Finite sum of twisted words with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct Element {
    terms: BTreeMap<Term, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn term(t: Term, c: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(t, c);
        e
    }

    pub fn monomial(word: Word, twist: Character, c: Scalar) -> Self {
        Self::term(Term::new(word, twist), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, t: &Term) -> Scalar {
        self.terms.get(t).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, t: Term, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Element) -> Element {
        let mut e = self.clone();
        e.add_assign(o);
        e
    }

    pub fn add_assign(&mut self, o: &Element) {
        for (t, c) in &o.terms {
            self.add_term(t.clone(), c.clone());
        }
    }

    pub fn sub(&self, o: &Element) -> Element {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    pub fn neg(&self) -> Element {
        self.scale(&Scalar::int(-1))
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(t, c)| (t.clone(), c * s)).collect() }
    }

    pub fn conj_coefficients(&self) -> Element {
        Element { terms: self.terms.iter().map(|(t, c)| (t.clone(), c.conj())).collect() }
    }

    /// Part of total degree `k`.
    pub fn degree_part(&self, k: usize) -> Element {
        Element {
            terms: self.terms.iter().filter(|(t, _)| degree(t.word) == k).map(|(t, c)| (t.clone(), c.clone())).collect(),
        }
    }

    pub fn is_homogeneous(&self, k: usize) -> bool {
        self.terms.keys().all(|t| degree(t.word) == k)
    }

    pub fn wedge(&self, o: &Element) -> Element {
        let mut out = Element::zero();
        for (ta, ca) in &self.terms {
            for (tb, cb) in &o.terms {
                let Some((neg, w)) = wedge_words(ta.word, tb.word) else { continue };
                let mut c = ca * cb;
                if neg {
                    c = -c;
                }
                out.add_term(Term::new(w, ta.twist.mul_unchecked(&tb.twist)), c);
            }
        }
        out
    }

    /// Interior product with the degree-one dual of generator `g`
    /// (removes the factor `g`, signed by its position).
    pub fn contract(&self, g: usize) -> Element {
        let mut out = Element::zero();
        for (t, c) in &self.terms {
            if let Some((neg, w)) = remove_factor(t.word, g) {
                out.add_term(Term::new(w, t.twist.clone()), if neg { -c } else { c.clone() });
            }
        }
        out
    }
}

impl Universe {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn mode(&self) -> DiffMode {
        self.mode
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn bracket_table(&self) -> &BTreeMap<(usize, usize), Vec<(usize, Scalar)>> {
        &self.brackets
    }

    pub fn generator_diff(&self, g: usize) -> &[(Word, Scalar)] {
        &self.diffs[g]
    }

    pub fn mask_of(&self, kind: Kind) -> Word {
        self.gens.iter().enumerate().filter(|(_, g)| g.kind == kind).fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn bidegree(&self, w: Word) -> (usize, usize) {
        bit_positions(w).fold((0, 0), |(p, q), i| {
            let (a, b) = self.gens[i].kind.bidegree();
            (p + a, q + b)
        })
    }

    /// Word from generator names in any order, with the sorting sign.
    pub fn word_from_names(&self, names: &[&str]) -> Result<(bool, Word), Error> {
        let mut w: Word = 0;
        let mut neg = false;
        for name in names {
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::Input(alloc::format!("unknown generator {name:?}")))?;
            let (s, nw) = wedge_words(w, 1 << i)
                .ok_or_else(|| Error::Input(alloc::format!("repeated generator {name:?}")))?;
            neg ^= s;
            w = nw;
        }
        Ok((neg, w))
    }

    pub fn identity_twist(&self) -> Character {
        Character::identity(self.n)
    }

    /// Untwisted basis word as an element.
    pub fn word(&self, w: Word) -> Element {
        Element::monomial(w, self.identity_twist(), Scalar::one())
    }

    pub fn word_names(&self, w: Word) -> Vec<&str> {
        bit_positions(w).map(|i| self.gens[i].name.as_str()).collect()
    }

    pub fn fmt_word(&self, w: Word) -> String {
        if w == 0 {
            return String::from("1");
        }
        self.word_names(w).join("∧")
    }

    pub fn fmt_term(&self, t: &Term) -> String {
        if t.twist.is_identity() {
            self.fmt_word(t.word)
        } else if t.word == 0 {
            alloc::format!("{}", t.twist)
        } else {
            alloc::format!("{}·{}", t.twist, self.fmt_word(t.word))
        }
    }

    pub fn fmt_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (k, (t, c)) in e.terms().enumerate() {
            let body = self.fmt_term(t);
            let coef = if c.is_one() {
                String::new()
            } else if *c == Scalar::int(-1) {
                String::from("-")
            } else if c.is_real() || c.re == crate::scalar::qi(0) {
                alloc::format!("{c} ")
            } else {
                alloc::format!("({c}) ")
            };
            if k > 0 {
                if let Some(rest) = coef.strip_prefix('-') {
                    s.push_str(" - ");
                    s.push_str(rest);
                } else {
                    s.push_str(" + ");
                    s.push_str(&coef);
                }
            } else {
                s.push_str(&coef);
            }
            s.push_str(&body);
        }
        s
    }

    fn check_jacobi(&self) -> Result<(), Error> {
        let vecs: Vec<usize> =
            (0..self.gens.len()).filter(|&i| self.gens[i].kind == Kind::Vector10).collect();
        for (ai, &a) in vecs.iter().enumerate() {
            for (bi, &b) in vecs.iter().enumerate().skip(ai + 1) {
                for &c in vecs.iter().skip(bi + 1) {
                    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        for (k, ck) in self.lie(x, y) {
                            for (m, cm) in self.lie(k, z) {
                                *acc.entry(m).or_insert_with(Scalar::zero) += &(&ck * &cm);
                            }
                        }
                    }
                    if acc.values().any(|v| !v.is_zero()) {
                        return Err(Error::Jacobi(
                            self.gens[a].name.clone(),
                            self.gens[b].name.clone(),
                            self.gens[c].name.clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// `[g_i, g_j]` on untwisted generators.
    pub fn lie(&self, i: usize, j: usize) -> Vec<(usize, Scalar)> {
        if i == j {
            return Vec::new();
        }
        let (a, b, neg) = if i < j { (i, j, false) } else { (j, i, true) };
        match self.brackets.get(&(a, b)) {
            None => Vec::new(),
            Some(v) => v.iter().map(|(k, c)| (*k, if neg { -c } else { c.clone() })).collect(),
        }
    }

    fn partner_form(&self, kind: Kind, vector: usize) -> Option<usize> {
        self.gens.iter().position(|g| g.kind == kind && g.partner == Some(vector))
    }

    fn generator_differential(&self, idx: usize) -> Result<Vec<(Word, Scalar)>, Error> {
        let g = &self.gens[idx];
        let conjugate = match g.kind {
            Kind::Covector01 => true,
            Kind::Covector10 if self.mode == DiffMode::DeRham => false,
            _ => return Ok(Vec::new()),
        };
        let Some(p) = g.partner else { return Ok(Vec::new()) };
        let mut out = Vec::new();
        for (&(a, b), exp) in &self.brackets {
            for (k, c) in exp {
                if *k != p {
                    continue;
                }
                let fa = self.partner_form(g.kind, a);
                let fb = self.partner_form(g.kind, b);
                let (Some(fa), Some(fb)) = (fa, fb) else {
                    return Err(Error::Structural(alloc::format!(
                        "differential of {} needs the forms dual to {} and {}",
                        g.name,
                        self.gens[a].name,
                        self.gens[b].name
                    )));
                };
                let (neg, w) = wedge_words(1 << fa, 1 << fb).expect("distinct forms");
                let mut coef = if conjugate { -c.conj() } else { -c.clone() };
                if neg {
                    coef = -coef;
                }
                out.push((w, coef));
            }
        }
        Ok(out)
    }

    /// Log-derivative of `c` along generator `g`.
    pub fn derivative(&self, g: usize, c: &Character) -> Scalar {
        match self.gens[g].anchor {
            Some((k, conj)) => {
                if conj {
                    c.anti[k].clone()
                } else {
                    c.holo[k].clone()
                }
            }
            None => Scalar::zero(),
        }
    }

    /// Odd derivation extending the generator differentials, with
    /// `d c = Σ b_k c dz̄_k` (plus `Σ a_k c dz_k` in de Rham mode).
    pub fn differential(&self, e: &Element) -> Result<Element, Error> {
        let mut out = Element::zero();
        for (t, c) in e.terms() {
            if t.twist.dim() != self.n {
                return Err(Error::Dimension { expected: self.n, found: t.twist.dim() });
            }
            for k in 0..self.n {
                for (conj, forms, w) in
                    [(true, &self.anti_forms, &t.twist.anti[k]), (false, &self.holo_forms, &t.twist.holo[k])]
                {
                    if w.is_zero() || (!conj && self.mode == DiffMode::Dolbeault) {
                        continue;
                    }
                    let f = forms[k].ok_or_else(|| {
                        Error::Structural(alloc::format!(
                            "no coordinate form to differentiate the twist {}",
                            t.twist
                        ))
                    })?;
                    if let Some((neg, nw)) = wedge_words(1 << f, t.word) {
                        let v = c * w;
                        out.add_term(Term::new(nw, t.twist.clone()), if neg { -v } else { v });
                    }
                }
            }
            for (pos, g) in bit_positions(t.word).enumerate() {
                if self.diffs[g].is_empty() {
                    continue;
                }
                let (_, rest) = remove_factor(t.word, g).expect("bit set");
                // d(g1..gk) = Σ (-1)^(i-1) g1..dg_i..gk; move g_i to the front first
                let sign = parity(pos);
                for (dw, dc) in &self.diffs[g] {
                    let Some((neg, nw)) = wedge_words(*dw, rest) else { continue };
                    let mut v = &(c * dc) * &sign;
                    if neg {
                        v = -v;
                    }
                    out.add_term(Term::new(nw, t.twist.clone()), v);
                }
            }
        }
        Ok(out)
    }

    /// Untwisted bracket of two words.
    fn bracket_words(&self, u: Word, v: Word) -> Vec<(Word, Scalar)> {
        let mut out = Vec::new();
        for (i, ui) in bit_positions(u).enumerate() {
            for (j, vj) in bit_positions(v).enumerate() {
                let lie = self.lie(ui, vj);
                if lie.is_empty() {
                    continue;
                }
                let (ni, ur) = remove_factor(u, ui).expect("bit");
                let (nj, vr) = remove_factor(v, vj).expect("bit");
                let _ = (ni, nj);
                let Some((nrest, rest)) = wedge_words(ur, vr) else { continue };
                // (-1)^(i+j) with 1-based positions equals (-1)^(i+j) with 0-based ones
                let mut sign = (i + j) % 2 == 1;
                sign ^= nrest;
                for (k, ck) in lie {
                    let Some((nk, w)) = wedge_words(1 << k, rest) else { continue };
                    let c = if sign ^ nk { -ck } else { ck };
                    out.push((w, c));
                }
            }
        }
        out
    }

    /// Graded bracket of degree −1 (Schouten–Nijenhuis extended by the
    /// character derivatives).
    pub fn schouten(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (ta, ca) in a.terms() {
            for (tb, cb) in b.terms() {
                self.schouten_terms(ta, tb, &(ca * cb), &mut out);
            }
        }
        out
    }

    fn schouten_terms(&self, ta: &Term, tb: &Term, coef: &Scalar, out: &mut Element) {
        let (u, v) = (ta.word, tb.word);
        let (k, l) = (degree(u), degree(v));
        let twist = ta.twist.mul_unchecked(&tb.twist);
        for (w, c) in self.bracket_words(u, v) {
            out.add_term(Term::new(w, twist.clone()), coef * &c);
        }
        // (-1)^(k-1) Σ_i (-1)^(i-1) λ_{u_i}(c2) U_î ∧ V
        if k > 0 {
            for (i, ui) in bit_positions(u).enumerate() {
                let lam = self.derivative(ui, &tb.twist);
                if lam.is_zero() {
                    continue;
                }
                let (_, ur) = remove_factor(u, ui).expect("bit");
                let Some((neg, w)) = wedge_words(ur, v) else { continue };
                let mut c = &(coef * &lam) * &parity(k - 1 + i);
                if neg {
                    c = -c;
                }
                out.add_term(Term::new(w, twist.clone()), c);
            }
        }
        // -(-1)^((k-1)(l-1)) (-1)^(l-1) Σ_j (-1)^(j-1) λ_{v_j}(c1) V_ĵ ∧ U
        if l > 0 {
            let km1 = k as i64 - 1;
            let e = (km1 * (l as i64 - 1)).rem_euclid(2) as usize + (l - 1) + 1;
            for (j, vj) in bit_positions(v).enumerate() {
                let lam = self.derivative(vj, &ta.twist);
                if lam.is_zero() {
                    continue;
                }
                let (_, vr) = remove_factor(v, vj).expect("bit");
                let Some((neg, w)) = wedge_words(vr, u) else { continue };
                let mut c = &(coef * &lam) * &parity(e + j);
                if neg {
                    c = -c;
                }
                out.add_term(Term::new(w, twist.clone()), c);
            }
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (t, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}·[{:#b}|{}]", t.word, t.twist)?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn heisenberg_times_c() -> Universe {
        let mut b = UniverseBuilder::new(0);
        let x = b.generator("X", Kind::Vector10, None, None);
        let y = b.generator("Y", Kind::Vector10, None, None);
        let z = b.generator("Z", Kind::Vector10, None, None);
        let w = b.generator("W", Kind::Vector10, None, None);
        for (name, p) in [("xb", x), ("yb", y), ("zb", z), ("wb", w)] {
            b.generator(name, Kind::Covector01, None, Some(p));
        }
        b.bracket(x, y, vec![(z, Scalar::one())]);
        b.build().unwrap()
    }

    fn nakamura_universe() -> Universe {
        let mut b = UniverseBuilder::new(1);
        let z1 = b.generator("Z1", Kind::Vector10, Some((0, false)), None);
        let z2 = b.generator("Z2", Kind::Vector10, None, None);
        let z3 = b.generator("Z3", Kind::Vector10, None, None);
        for (name, p) in [("z1b", z1), ("z2b", z2), ("z3b", z3)] {
            b.generator(name, Kind::Covector01, None, Some(p));
        }
        b.build().unwrap()
    }

    fn el(u: &Universe, names: &[&str]) -> Element {
        let (neg, w) = u.word_from_names(names).unwrap();
        let e = u.word(w);
        if neg {
            e.neg()
        } else {
            e
        }
    }

    #[test]
    fn wedge_signs() {
        let u = heisenberg_times_c();
        let xz = el(&u, &["X", "Z"]);
        let yw = el(&u, &["Y", "W"]);
        assert_eq!(xz.wedge(&yw), el(&u, &["X", "Y", "Z", "W"]).neg());
        let one = Element::monomial(0, u.identity_twist(), Scalar::one());
        assert_eq!(el(&u, &["X"]).wedge(&one), el(&u, &["X"]));
        let xb = el(&u, &["xb"]);
        assert!(xb.wedge(&xb).is_zero());
    }

    #[test]
    fn contraction_signs() {
        let u = heisenberg_times_c();
        let yb = u.index_of("yb").unwrap();
        let xb = u.index_of("xb").unwrap();
        // i(ȳ2 ∧ ȳ1) along the dual of ȳ1 with ȳ1 = xb, ȳ2 = yb
        let e = el(&u, &["yb", "xb"]);
        assert_eq!(e.contract(xb), el(&u, &["yb"]).neg());
        assert!(el(&u, &["xb"]).contract(yb).is_zero());
        assert_eq!(el(&u, &["xb"]).contract(xb), u.word(0));
    }

    #[test]
    fn heisenberg_structure() {
        let u = heisenberg_times_c();
        assert_eq!(u.schouten(&el(&u, &["X"]), &el(&u, &["Y"])), el(&u, &["Z"]));
        assert!(u.schouten(&el(&u, &["X"]), &el(&u, &["xb"])).is_zero());
        let dz = u.differential(&el(&u, &["zb"])).unwrap();
        assert_eq!(dz, el(&u, &["xb", "yb"]).neg());
        assert!(u.differential(&el(&u, &["X"])).unwrap().is_zero());
        // [X∧Y • X∧Y] = 2 X∧Y∧Z up to sign; nonzero either way
        let xy = el(&u, &["X", "Y"]);
        assert!(!u.schouten(&xy, &xy).is_zero());
    }

    #[test]
    fn twisted_degree_one_rule() {
        let u = nakamura_universe();
        let e = Character::exp_z(&[Scalar::one()]);
        let z1 = 1u64;
        let z2 = 2u64;
        // [Z1 • e^{z1} Z2] = e^{z1} Z2
        let a = Element::monomial(z1, u.identity_twist(), Scalar::one());
        let b = Element::monomial(z2, e.clone(), Scalar::one());
        assert_eq!(u.schouten(&a, &b), b);
        assert_eq!(u.schouten(&b, &a), b.neg());
        // ∂̄ of a twist with antiholomorphic weight
        let c = Element::monomial(0, e.conj(), Scalar::one());
        let z1b = u.index_of("z1b").unwrap();
        assert_eq!(u.differential(&c).unwrap(), Element::monomial(1 << z1b, e.conj(), Scalar::one()));
    }
}
