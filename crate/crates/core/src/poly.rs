//! Multivariate polynomials over `Scalar` and polynomial-coefficient vectors.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::linalg::Field;
use crate::scalar::Scalar;
use crate::sparse::{axpy, SparseVec};

/// Exponent vector; ordered lexicographically so `t1` outranks `t2`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(vars: usize) -> Self {
        Monomial(alloc::vec![0; vars])
    }

    pub fn var(vars: usize, i: usize) -> Self {
        let mut m = Self::one(vars);
        m.0[i] = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&o.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }

    pub fn format(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(alloc::format!("{}^{e}", names[i])),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// All monomials in `vars` variables of total degree `d`, in descending order.
    pub fn all_of_degree(vars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = alloc::vec![0u32; vars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if vars == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }
}

#[derive(Clone, PartialEq, Eq, Default, PartialOrd, Ord, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(vars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(vars), c);
        p
    }

    pub fn var(vars: usize, i: usize) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(vars, i), Scalar::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Scalar::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                p.add_term(m1.mul(m2), c1 * c2);
            }
        }
        p
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Largest monomial in lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Scaled so the lexicographically first monomial has coefficient 1.
    pub fn normalized(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    /// Sets the listed variables to zero.
    pub fn restrict_zero(&self, zero: &[usize]) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| zero.iter().all(|&i| m.0[i] == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = m.format(names);
            let neg = c.im.is_zero() && c.re < crate::scalar::qi(0);
            let mag = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let body = if mag.is_one() {
                mono
            } else if mono == "1" {
                paren(&mag).to_string()
            } else {
                alloc::format!("{}*{mono}", paren(&mag))
            };
            s.push_str(&body);
        }
        s
    }

    /// Parses sums of products such as `-t12*t^b1b3 + 2*t1^b1*t2^b3`.
    pub fn parse(text: &str, names: &[String]) -> Result<Poly, Error> {
        let vars = names.len();
        let bad = |m: &str| Error::Parse(alloc::format!("polynomial {text:?}: {m}"));
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Poly::zero();
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut depth = 0i32;
        for ch in t.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch);
                }
                ')' => {
                    depth -= 1;
                    cur.push(ch);
                }
                '+' | '-' if depth == 0 && !cur.is_empty() && !cur.ends_with('^') => {
                    chunks.push((neg, core::mem::take(&mut cur)));
                    neg = ch == '-';
                }
                '-' if depth == 0 && cur.is_empty() => neg = !neg,
                '+' if depth == 0 && cur.is_empty() => {}
                _ => cur.push(ch),
            }
        }
        if !cur.is_empty() {
            chunks.push((neg, cur));
        }
        for (neg, chunk) in chunks {
            let mut coef = if neg { Scalar::int(-1) } else { Scalar::one() };
            let mut mono = Monomial::one(vars);
            for factor in chunk.split('*') {
                if factor.is_empty() {
                    return Err(bad("empty factor"));
                }
                if let Some(i) = names.iter().position(|n| n == factor) {
                    mono.0[i] += 1;
                    continue;
                }
                if let Some((base, e)) = factor.rsplit_once('^') {
                    if let (Some(i), Ok(e)) = (names.iter().position(|n| n == base), e.parse::<u32>()) {
                        mono.0[i] += e;
                        continue;
                    }
                }
                let f = factor.trim_start_matches('(').trim_end_matches(')');
                let s: Scalar = f.parse().map_err(|_| bad(&alloc::format!("unknown factor {factor:?}")))?;
                coef = &coef * &s;
            }
            p.add_term(mono, coef);
        }
        Ok(p)
    }
}

fn paren(c: &Scalar) -> String {
    if !c.re.is_integer() || !c.im.is_integer() || (!c.im.is_zero() && !c.re.is_zero()) {
        alloc::format!("({c})")
    } else {
        c.to_string()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = self.terms.keys().next().map_or(0, |m| m.0.len());
        let names: Vec<String> = (0..vars).map(|i| alloc::format!("t{}", i + 1)).collect();
        f.write_str(&self.format(&names))
    }
}

/// Vector with polynomial coefficients: monomial to sparse coordinate vector.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct PolyVec {
    pub terms: BTreeMap<Monomial, SparseVec<Scalar>>,
}

impl PolyVec {
    pub fn zero() -> Self {
        PolyVec::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, m: &Monomial, c: &Scalar, v: &SparseVec<Scalar>) {
        let e = self.terms.entry(m.clone()).or_default();
        axpy(e, c, v);
        if e.is_empty() {
            self.terms.remove(m);
        }
    }

    pub fn add(&self, o: &PolyVec) -> PolyVec {
        let mut out = self.clone();
        for (m, v) in &o.terms {
            out.add_scaled(m, &Scalar::one(), v);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> PolyVec {
        let mut out = PolyVec::zero();
        for (m, v) in &self.terms {
            out.add_scaled(m, c, v);
        }
        out
    }

    /// Part of polynomial degree `d`.
    pub fn degree_part(&self, d: u32) -> PolyVec {
        PolyVec { terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, v)| (m.clone(), v.clone())).collect() }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Applies a linear map given on basis vectors.
    pub fn map(&self, f: impl Fn(&SparseVec<Scalar>) -> SparseVec<Scalar>) -> PolyVec {
        let mut out = PolyVec::zero();
        for (m, v) in &self.terms {
            let w = f(v);
            if !w.is_empty() {
                out.add_scaled(m, &Scalar::one(), &w);
            }
        }
        out
    }

    /// Coordinate `i` as a polynomial.
    pub fn component(&self, i: usize) -> Poly {
        let mut p = Poly::zero();
        for (m, v) in &self.terms {
            if let Some(c) = v.get(&i) {
                p.add_term(m.clone(), c.clone());
            }
        }
        p
    }

    pub fn support(&self) -> alloc::collections::BTreeSet<usize> {
        self.terms.values().flat_map(|v| v.keys().copied()).collect()
    }

    pub fn restrict_zero(&self, zero: &[usize]) -> PolyVec {
        PolyVec {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| zero.iter().all(|&i| m.0[i] == 0))
                .map(|(m, v)| (m.clone(), v.clone()))
                .collect(),
        }
    }
}

/// `Σ c_{ij} m_a m_b` for a bilinear map on coordinates.
pub fn bilinear(a: &PolyVec, b: &PolyVec, f: impl Fn(usize, usize) -> SparseVec<Scalar>) -> PolyVec {
    let mut out = PolyVec::zero();
    for (ma, va) in &a.terms {
        for (mb, vb) in &b.terms {
            let m = ma.mul(mb);
            let mut acc = SparseVec::new();
            for (i, ci) in va {
                for (j, cj) in vb {
                    let w = f(*i, *j);
                    if !w.is_empty() {
                        axpy(&mut acc, &ci.mul(cj), &w);
                    }
                }
            }
            if !acc.is_empty() {
                out.add_scaled(&m, &Scalar::one(), &acc);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(k: usize) -> Vec<String> {
        (1..=k).map(|i| alloc::format!("t{i}")).collect()
    }

    #[test]
    fn arithmetic() {
        let n = names(2);
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.add(&y).mul(&x.sub(&y));
        assert_eq!(p, Poly::parse("t1^2 - t2^2", &n).unwrap());
        assert_eq!(p.total_degree(), Some(2));
        assert_eq!(p.format(&n), "t1^2 - t2^2");
    }

    #[test]
    fn normalization_uses_lex_first() {
        let n = names(3);
        let p = Poly::parse("-2*t2*t3 + 4*t1*t3", &n).unwrap();
        assert_eq!(p.normalized(), Poly::parse("t1*t3 - 1/2*t2*t3", &n).unwrap());
        let q = Poly::parse("(1/2+i)*t1", &n).unwrap();
        assert_eq!(q.normalized(), Poly::var(3, 0));
    }

    #[test]
    fn parse_names_with_carets() {
        let n: Vec<String> = ["t12", "t1^b1", "t^b2b3"].iter().map(|s| s.to_string()).collect();
        let p = Poly::parse("t12*t1^b1 - 2*t^b2b3^2", &n).unwrap();
        assert_eq!(p.coefficient(&Monomial(alloc::vec![1, 1, 0])), Scalar::one());
        assert_eq!(p.coefficient(&Monomial(alloc::vec![0, 0, 2])), Scalar::int(-2));
    }

    #[test]
    fn monomials_of_degree() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(2, 0), alloc::vec![Monomial(alloc::vec![0, 0])]);
    }
}
