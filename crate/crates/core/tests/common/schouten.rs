//! Coordinate super-Schouten oracle on the π-case Nakamura model.
//!
//! Elements are e^{k z1} ξ_I η_K. ξ_i stands for ∂/∂z_i, η_k for dz̄_k (inert odd
//! symbols). Odd symbols are bits 0..2 (ξ) and 3..5 (η), ordered ξ before η.
//! [P,Q] = Σ_i (P ∂⃖_{ξi})(∂_{z_i} Q) − (−1)^{(|P|−1)(|Q|−1)} (Q ∂⃖_{ξi})(∂_{z_i} P).
//! Only z1 appears in exponents, so only i = 1 contributes ∂_z.

use std::collections::BTreeMap;

use gerst_core::Scalar;

use super::{rank, zeros, Pivot};

pub type Mono = (i64, u8);
pub type Poly = BTreeMap<Mono, i64>;

pub fn mul_words(a: u8, b: u8) -> Option<(i64, u8)> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0;
    for i in 0..6 {
        if a & (1 << i) != 0 {
            swaps += (b & ((1u8 << i) - 1)).count_ones();
        }
    }
    Some((if swaps % 2 == 0 { 1 } else { -1 }, a | b))
}

pub fn mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(k1, w1), c1) in p {
        for (&(k2, w2), c2) in q {
            if let Some((s, w)) = mul_words(w1, w2) {
                *out.entry((k1 + k2, w)).or_insert(0) += s * c1 * c2;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// right derivative by the odd symbol `i`
pub fn right_deriv(p: &Poly, i: u8) -> Poly {
    let mut out = Poly::new();
    for (&(k, w), c) in p {
        if w & (1 << i) == 0 {
            continue;
        }
        // symbols after i
        let after = (w >> (i + 1)).count_ones();
        let s = if after.is_multiple_of(2) { 1 } else { -1 };
        *out.entry((k, w & !(1 << i))).or_insert(0) += s * c;
    }
    out
}

pub fn dz1(p: &Poly) -> Poly {
    p.iter().filter(|(m, _)| m.0 != 0).map(|(&(k, w), c)| ((k, w), k * c)).collect()
}

pub fn schouten(p: &Poly, p_deg: u32, q: &Poly, q_deg: u32) -> Poly {
    let swap = if ((p_deg + 1) * (q_deg + 1)).is_multiple_of(2) { 1 } else { -1 };
    let a = mul(&right_deriv(p, 0), &dz1(q));
    let b = mul(&right_deriv(q, 0), &dz1(p));
    let mut out = a;
    for (m, c) in b {
        *out.entry(m).or_insert(0) -= swap * c;
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn nakamura_pi_oracle_dims() -> Vec<usize> {
    let wx = [0i64, 1, -1];
    let we = [0i64, -1, 1];
    let basis: Vec<Mono> = (0u8..64)
        .map(|w| {
            let k = (0..3).filter(|i| w & (1 << i) != 0).map(|i| wx[i]).sum::<i64>()
                + (0..3).filter(|i| w & (8 << i) != 0).map(|i| we[i]).sum::<i64>();
            (k, w)
        })
        .collect();
    let mu: Poly = [((1, 0b011), 1)].into_iter().collect();
    let mut rows: BTreeMap<usize, Vec<Vec<(usize, i64)>>> = BTreeMap::new();
    for &b in &basis {
        let q: Poly = [(b, 1)].into_iter().collect();
        let deg = b.1.count_ones();
        let mut col = Vec::new();
        for (m, c) in schouten(&mu, 2, &q, deg) {
            let i = basis.iter().position(|x| *x == m).expect("bracket leaves the basis");
            col.push((i, c));
        }
        rows.entry(deg as usize).or_default().push(col);
    }
    let count = |d: usize| basis.iter().filter(|b| b.1.count_ones() as usize == d).count();
    let rk: Vec<usize> = (0..=6)
        .map(|d| {
            let cols = &rows[&d];
            let mut m = zeros(64, cols.len());
            for (j, col) in cols.iter().enumerate() {
                for &(i, c) in col {
                    m[i][j] = Scalar::int(c);
                }
            }
            rank(&m, cols.len(), Pivot::LowFirst)
        })
        .collect();
    (0..=6).map(|d| count(d) - rk[d] - if d > 0 { rk[d - 1] } else { 0 }).collect()
}
