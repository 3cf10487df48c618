//! Characters of the abelian factor and the lattice-triviality oracle.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::linalg::Matrix;
use crate::scalar::{Scalar, Q};

/// `z ↦ exp(⟨a,z⟩ + ⟨b,z̄⟩)` with `a = holo`, `b = anti`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub holo: Vec<Scalar>,
    pub anti: Vec<Scalar>,
}

impl Character {
    pub fn identity(n: usize) -> Self {
        Character { holo: vec![Scalar::zero(); n], anti: vec![Scalar::zero(); n] }
    }

    pub fn new(holo: Vec<Scalar>, anti: Vec<Scalar>) -> Result<Self, Error> {
        if holo.len() != anti.len() {
            return Err(Error::Dimension { expected: holo.len(), found: anti.len() });
        }
        Ok(Character { holo, anti })
    }

    /// `exp(Σ k_j z_j)`.
    pub fn exp_z(k: &[Scalar]) -> Self {
        Character { holo: k.to_vec(), anti: vec![Scalar::zero(); k.len()] }
    }

    /// `exp(Σ k_j x_j)` with `x = (z + z̄)/2`.
    pub fn exp_x(k: &[Scalar]) -> Self {
        let half: Vec<Scalar> = k.iter().map(|c| c * &Scalar::rat(1, 2)).collect();
        Character { holo: half.clone(), anti: half }
    }

    /// `exp(i Σ k_j y_j)` with `y = (z - z̄)/2i`.
    pub fn exp_iy(k: &[Scalar]) -> Self {
        let half: Vec<Scalar> = k.iter().map(|c| c * &Scalar::rat(1, 2)).collect();
        let neg = half.iter().map(|c| -c).collect();
        Character { holo: half, anti: neg }
    }

    pub fn dim(&self) -> usize {
        self.holo.len()
    }

    pub fn is_identity(&self) -> bool {
        self.holo.iter().chain(self.anti.iter()).all(Scalar::is_zero)
    }

    pub fn is_holomorphic(&self) -> bool {
        self.anti.iter().all(Scalar::is_zero)
    }

    pub fn is_unitary(&self) -> bool {
        self.anti.iter().zip(&self.holo).all(|(b, a)| *b == -&a.conj())
    }

    /// Real valued: `b = conj(a)`, which for real weights means `a = b`.
    pub fn is_real(&self) -> bool {
        self.anti.iter().zip(&self.holo).all(|(b, a)| *b == a.conj())
    }

    fn check(&self, o: &Character) -> Result<(), Error> {
        if self.dim() != o.dim() {
            return Err(Error::Dimension { expected: self.dim(), found: o.dim() });
        }
        Ok(())
    }

    pub fn mul(&self, o: &Character) -> Result<Character, Error> {
        self.check(o)?;
        Ok(self.mul_unchecked(o))
    }

    pub(crate) fn mul_unchecked(&self, o: &Character) -> Character {
        Character {
            holo: self.holo.iter().zip(&o.holo).map(|(x, y)| x + y).collect(),
            anti: self.anti.iter().zip(&o.anti).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn inv(&self) -> Character {
        Character {
            holo: self.holo.iter().map(|x| -x).collect(),
            anti: self.anti.iter().map(|x| -x).collect(),
        }
    }

    pub fn div(&self, o: &Character) -> Result<Character, Error> {
        self.mul(&o.inv())
    }

    pub fn pow(&self, k: i64) -> Character {
        let s = Scalar::int(k);
        Character {
            holo: self.holo.iter().map(|x| x * &s).collect(),
            anti: self.anti.iter().map(|x| x * &s).collect(),
        }
    }

    /// Complex conjugate character `z ↦ conj(c(z))`.
    pub fn conj(&self) -> Character {
        Character {
            holo: self.anti.iter().map(Scalar::conj).collect(),
            anti: self.holo.iter().map(Scalar::conj).collect(),
        }
    }

    /// The unitary β with `c·β⁻¹` holomorphic.
    pub fn unitary_part(&self) -> Character {
        Character { holo: self.anti.iter().map(|b| -&b.conj()).collect(), anti: self.anti.clone() }
    }

    /// Weight of the character along `∂/∂z_k` (or `∂/∂z̄_k` when `conjugated`).
    pub fn log_derivative(&self, k: usize, conjugated: bool) -> Result<Scalar, Error> {
        let w = if conjugated { &self.anti } else { &self.holo };
        w.get(k).cloned().ok_or(Error::Index { index: k, len: w.len() })
    }

    /// Real coordinates `(Re a, Im a, Re b, Im b)` used for solving over generators.
    fn coords(&self) -> Vec<Q> {
        let mut v = Vec::with_capacity(4 * self.dim());
        for w in [&self.holo, &self.anti] {
            for x in w.iter() {
                v.push(x.re.clone());
                v.push(x.im.clone());
            }
        }
        v
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let mut s = String::new();
        for (w, bar) in [(&self.holo, ""), (&self.anti, "b")] {
            for (k, x) in w.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let coef = if x.is_one() {
                    String::new()
                } else if *x == Scalar::int(-1) {
                    String::from("-")
                } else if x.is_real() {
                    alloc::format!("{x}")
                } else {
                    alloc::format!("({x})")
                };
                let sign = if s.is_empty() || coef.starts_with('-') { "" } else { "+" };
                s.push_str(&alloc::format!("{sign}{coef}z{}{bar}", k + 1));
            }
        }
        write!(f, "exp({s})")
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// What the oracle knows per generator in rule-table mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// only the zero multiple is trivial on the lattice
    Never,
    /// every multiple is trivial
    Always,
    /// multiples of `k` are trivial (a root of unity of order `k`)
    Modulo(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleMode {
    /// the listed exponent vectors generate the trivial subgroup
    Sublattice { trivial: Vec<Vec<i64>> },
    RuleTable { rules: Vec<Rule> },
}

/// Decides `c|_Γ = 1` for characters in the integer span of declared generators.
#[derive(Clone, Debug)]
pub struct TrivialityOracle {
    generators: Vec<Character>,
    mode: OracleMode,
    // left inverse of the generator matrix over the real coordinates
    left_inverse: Matrix<Q>,
    gen_matrix: Matrix<Q>,
    // Hermite basis of the trivial subgroup (rows, positive pivots)
    hermite: Vec<Vec<BigInt>>,
}

impl TrivialityOracle {
    pub fn new(generators: Vec<Character>, mode: OracleMode) -> Result<Self, Error> {
        let r = generators.len();
        let n = generators.first().map(Character::dim).unwrap_or(0);
        if let Some(g) = generators.iter().find(|g| g.dim() != n) {
            return Err(Error::Dimension { expected: n, found: g.dim() });
        }
        let rows = 4 * n;
        let mut m = Matrix::zeros(rows, r);
        for (j, g) in generators.iter().enumerate() {
            for (i, x) in g.coords().into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        let left_inverse = m
            .left_inverse()
            .ok_or_else(|| Error::Oracle("declared generators are linearly dependent".into()))?;
        let lattice_rows: Vec<Vec<BigInt>> = match &mode {
            OracleMode::Sublattice { trivial } => {
                for v in trivial {
                    if v.len() != r {
                        return Err(Error::Oracle(alloc::format!(
                            "trivial vector {v:?} has length {}, expected {r}",
                            v.len()
                        )));
                    }
                }
                trivial.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect()
            }
            OracleMode::RuleTable { rules } => {
                if rules.len() != r {
                    return Err(Error::Oracle(alloc::format!(
                        "{} rules for {r} generators",
                        rules.len()
                    )));
                }
                let mut out = Vec::new();
                for (j, rule) in rules.iter().enumerate() {
                    let k = match rule {
                        Rule::Never => continue,
                        Rule::Always => 1u64,
                        Rule::Modulo(0) => {
                            return Err(Error::Oracle("modulus 0 in rule table".into()))
                        }
                        Rule::Modulo(k) => *k,
                    };
                    let mut v = vec![BigInt::zero(); r];
                    v[j] = BigInt::from(k);
                    out.push(v);
                }
                out
            }
        };
        let hermite = hermite_rows(lattice_rows, r);
        Ok(TrivialityOracle { generators, mode, left_inverse, gen_matrix: m, hermite })
    }

    /// Oracle with no generators: only the identity is decidable (and trivial).
    pub fn empty() -> Self {
        Self::new(Vec::new(), OracleMode::Sublattice { trivial: Vec::new() })
            .expect("empty oracle is valid")
    }

    pub fn generators(&self) -> &[Character] {
        &self.generators
    }

    pub fn mode(&self) -> &OracleMode {
        &self.mode
    }

    /// Integer exponents of `c` over the generators.
    pub fn exponents(&self, c: &Character) -> Result<Vec<BigInt>, Error> {
        let unresolved = || Error::Unresolvable(alloc::format!("{c}"));
        if self.generators.is_empty() {
            return if c.is_identity() { Ok(Vec::new()) } else { Err(unresolved()) };
        }
        if c.dim() != self.generators[0].dim() {
            return Err(Error::Dimension { expected: self.generators[0].dim(), found: c.dim() });
        }
        let v = c.coords();
        let k = self.left_inverse.mul_vec(&v);
        if self.gen_matrix.mul_vec(&k) != v {
            return Err(unresolved());
        }
        k.into_iter()
            .map(|x| if x.is_integer() { Ok(x.to_integer()) } else { Err(unresolved()) })
            .collect()
    }

    pub fn is_trivial(&self, c: &Character) -> Result<bool, Error> {
        if c.is_identity() {
            return Ok(true);
        }
        let mut e = self.exponents(c)?;
        for row in &self.hermite {
            let p = row.iter().position(|x| !x.is_zero()).expect("hermite rows are nonzero");
            let (quo, rem) = e[p].div_rem(&row[p]);
            if !rem.is_zero() {
                return Ok(false);
            }
            for (x, y) in e.iter_mut().zip(row) {
                *x -= &quo * y;
            }
        }
        Ok(e.iter().all(Zero::is_zero))
    }
}

/// Row echelon basis of the integer row lattice, pivots positive.
fn hermite_rows(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    for col in 0..ncols {
        loop {
            rows.retain(|r| r.iter().any(|x| !x.is_zero()));
            let mut live: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if live.is_empty() {
                break;
            }
            live.sort_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let piv = live[0];
            if live.len() == 1 {
                let mut r = rows.swap_remove(piv);
                if r[col].is_negative() {
                    r.iter_mut().for_each(|x| *x = -x.clone());
                }
                out.push(r);
                break;
            }
            let pr = rows[piv].clone();
            for &i in &live[1..] {
                let f = rows[i][col].div_floor(&pr[col]);
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
    }
    debug_assert!(out.iter().all(|r| r.iter().any(|x| !x.is_zero())));
    let _ = BigInt::one();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let a = Character::new(vec![s("1/2")], vec![s("2-i")]).unwrap();
        assert_eq!(a.mul(&Character::identity(1)).unwrap(), a);
    }

    #[test]
    fn nakamura_entries_cancel() {
        let e = Character::exp_z(&[Scalar::one()]);
        assert!(e.mul(&e.inv()).unwrap().is_identity());
    }

    #[test]
    fn x_weights_add() {
        let a = Character::exp_x(&[Scalar::int(1)]);
        let b = Character::exp_x(&[Scalar::int(2)]);
        assert_eq!(a.mul(&b).unwrap(), Character::exp_x(&[Scalar::int(3)]));
    }

    #[test]
    fn dimension_mismatch() {
        assert!(Character::identity(1).mul(&Character::identity(2)).is_err());
    }

    #[test]
    fn unitary_part_of_exp_x() {
        let a = Character::exp_x(&[Scalar::int(1)]);
        assert_eq!(a.unitary_part(), Character::exp_iy(&[Scalar::int(-1)]));
        assert!(Character::exp_z(&[Scalar::int(3)]).unitary_part().is_identity());
        let h = a.div(&a.unitary_part()).unwrap();
        assert!(h.is_holomorphic());
    }

    #[test]
    fn log_derivatives() {
        assert!(Character::identity(2).log_derivative(1, false).unwrap().is_zero());
        assert_eq!(Character::exp_z(&[Scalar::one()]).log_derivative(0, false).unwrap(), Scalar::one());
        assert_eq!(
            Character::exp_x(&[Scalar::int(3)]).log_derivative(0, false).unwrap(),
            Scalar::rat(3, 2)
        );
        assert!(Character::identity(1).log_derivative(1, false).is_err());
    }

    fn nakamura_oracle(trivial: Vec<Vec<i64>>) -> TrivialityOracle {
        let e = Character::exp_z(&[Scalar::one()]);
        let g = e.conj().div(&e).unwrap();
        TrivialityOracle::new(vec![g], OracleMode::Sublattice { trivial }).unwrap()
    }

    #[test]
    fn nakamura_oracles() {
        let e = Character::exp_z(&[Scalar::one()]);
        let g = e.conj().div(&e).unwrap();
        let generic = nakamura_oracle(vec![]);
        let pi = nakamura_oracle(vec![vec![1]]);
        assert!(generic.is_trivial(&Character::identity(1)).unwrap());
        assert!(!generic.is_trivial(&g).unwrap());
        assert!(pi.is_trivial(&g).unwrap());
        assert!(pi.is_trivial(&g.pow(-3)).unwrap());
        assert!(matches!(generic.is_trivial(&e), Err(Error::Unresolvable(_))));
    }

    #[test]
    fn sublattice_membership() {
        let g1 = Character::exp_iy(&[Scalar::one(), Scalar::zero()]);
        let g2 = Character::exp_iy(&[Scalar::zero(), Scalar::one()]);
        let o = TrivialityOracle::new(
            vec![g1.clone(), g2.clone()],
            OracleMode::Sublattice { trivial: vec![vec![2, 4], vec![0, 6]] },
        )
        .unwrap();
        assert!(o.is_trivial(&g1.pow(2).mul(&g2.pow(4)).unwrap()).unwrap());
        assert!(o.is_trivial(&g1.pow(2).mul(&g2.pow(-2)).unwrap()).unwrap());
        assert!(!o.is_trivial(&g2.pow(2)).unwrap());
        assert!(!o.is_trivial(&g1).unwrap());
        assert!(!o.is_trivial(&g2).unwrap());
        // half-integer exponent is outside the span
        assert!(o.is_trivial(&Character::exp_iy(&[Scalar::rat(1, 2), Scalar::zero()])).is_err());
    }

    #[test]
    fn rule_table() {
        let g = Character::exp_iy(&[Scalar::one()]);
        let o = TrivialityOracle::new(vec![g.clone()], OracleMode::RuleTable { rules: vec![Rule::Modulo(3)] })
            .unwrap();
        assert!(!o.is_trivial(&g.pow(2)).unwrap());
        assert!(o.is_trivial(&g.pow(-6)).unwrap());
        assert!(TrivialityOracle::new(vec![g], OracleMode::RuleTable { rules: vec![] }).is_err());
    }

    #[test]
    fn dependent_generators_rejected() {
        let g = Character::exp_iy(&[Scalar::one()]);
        let r = TrivialityOracle::new(vec![g.clone(), g.pow(2)], OracleMode::Sublattice { trivial: vec![] });
        assert!(matches!(r, Err(Error::Oracle(_))));
    }
}
