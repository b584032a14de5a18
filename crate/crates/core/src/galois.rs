//! Arithmetic in GF(4) = {0, 1, ω, ω²} with ω² = ω + 1, and projective
//! normalization of vectors in GF(4)⁴.
//!
//! Elements are 2-bit tags: `0b00 = 0`, `0b01 = 1`, `0b10 = ω`, `0b11 = ω²`.
//! With this encoding addition is XOR; multiplication goes through a table.

use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::Error;

const MUL: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
const INV: [u8; 4] = [0, 1, 3, 2];

/// Element of GF(4).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Gf4(u8);

impl Gf4 {
    pub const ZERO: Gf4 = Gf4(0);
    pub const ONE: Gf4 = Gf4(1);
    pub const OMEGA: Gf4 = Gf4(2);
    pub const OMEGA_SQ: Gf4 = Gf4(3);

    pub const ALL: [Gf4; 4] = [Gf4::ZERO, Gf4::ONE, Gf4::OMEGA, Gf4::OMEGA_SQ];
    pub const NONZERO: [Gf4; 3] = [Gf4::ONE, Gf4::OMEGA, Gf4::OMEGA_SQ];

    pub fn from_tag(tag: u8) -> Result<Gf4, Error> {
        if tag < 4 {
            Ok(Gf4(tag))
        } else {
            Err(Error::InvalidTag(tag))
        }
    }

    pub const fn tag(self) -> u8 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// True for the prime subfield GF(2) = {0, 1}.
    pub const fn in_prime_field(self) -> bool {
        self.0 < 2
    }

    /// Frobenius involution x ↦ x².
    pub const fn conj(self) -> Gf4 {
        Gf4(MUL[self.0 as usize][self.0 as usize])
    }

    pub fn inv(self) -> Option<Gf4> {
        if self.is_zero() {
            None
        } else {
            Some(Gf4(INV[self.0 as usize]))
        }
    }
}

impl Add for Gf4 {
    type Output = Gf4;

    // characteristic 2
    #[allow(clippy::suspicious_arithmetic_impl)]
    #[inline]
    fn add(self, rhs: Gf4) -> Gf4 {
        Gf4(self.0 ^ rhs.0)
    }
}

impl Mul for Gf4 {
    type Output = Gf4;

    #[inline]
    fn mul(self, rhs: Gf4) -> Gf4 {
        Gf4(MUL[self.0 as usize][rhs.0 as usize])
    }
}

impl fmt::Debug for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.0 {
            0 => "0",
            1 => "1",
            2 => "w",
            _ => "w2",
        };
        f.write_str(s)
    }
}

pub fn add(a: Gf4, b: Gf4) -> Gf4 {
    a + b
}

pub fn mul(a: Gf4, b: Gf4) -> Gf4 {
    a * b
}

pub fn conj(a: Gf4) -> Gf4 {
    a.conj()
}

/// A vector of GF(4)⁴.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector4(pub [Gf4; 4]);

impl Vector4 {
    pub const ZERO: Vector4 = Vector4([Gf4::ZERO; 4]);

    pub fn from_tags(tags: [u8; 4]) -> Result<Vector4, Error> {
        let mut v = [Gf4::ZERO; 4];
        for (slot, t) in v.iter_mut().zip(tags) {
            *slot = Gf4::from_tag(t)?;
        }
        Ok(Vector4(v))
    }

    pub fn tags(&self) -> [u8; 4] {
        self.0.map(Gf4::tag)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, k: Gf4) -> Vector4 {
        Vector4(self.0.map(|c| k * c))
    }

    pub fn conj(&self) -> Vector4 {
        Vector4(self.0.map(Gf4::conj))
    }

    /// Σ aᵢ bᵢ (bilinear, no conjugation).
    pub fn dot(&self, other: &Vector4) -> Gf4 {
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(Gf4::ZERO, |acc, (&a, &b)| acc + a * b)
    }

    /// All coordinates in GF(2).
    pub fn is_prime_rational(&self) -> bool {
        self.0.iter().all(|c| c.in_prime_field())
    }

    /// Every vector of GF(4)⁴ in lexicographic tag order.
    pub fn all() -> impl Iterator<Item = Vector4> {
        (0u8..=255).map(|bits| {
            Vector4([
                Gf4(bits >> 6 & 3),
                Gf4(bits >> 4 & 3),
                Gf4(bits >> 2 & 3),
                Gf4(bits & 3),
            ])
        })
    }
}

impl Add for Vector4 {
    type Output = Vector4;

    fn add(self, rhs: Vector4) -> Vector4 {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o = *o + r;
        }
        Vector4(out)
    }
}

impl fmt::Debug for Vector4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.0[0], self.0[1], self.0[2], self.0[3]
        )
    }
}

/// A point of PG(3,4): the canonical (leading-one) representative of a
/// nonzero vector up to scalars.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct ProjectivePoint {
    rep: Vector4,
}

impl ProjectivePoint {
    pub fn rep(&self) -> Vector4 {
        self.rep
    }
}

/// Scale `v` so that its first nonzero coordinate is 1.
pub fn normalize(v: Vector4) -> Result<ProjectivePoint, Error> {
    let lead =
        v.0.iter()
            .copied()
            .find(|c| !c.is_zero())
            .ok_or(Error::ZeroVector)?;
    let k = lead.inv().expect("nonzero lead");
    Ok(ProjectivePoint { rep: v.scale(k) })
}

/// Rank over GF(4) of a list of vectors (row reduction).
pub fn rank(vectors: &[Vector4]) -> usize {
    let mut rows: Vec<[Gf4; 4]> = vectors.iter().map(|v| v.0).collect();
    let mut r = 0;
    for col in 0..4 {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let k = rows[r][col].inv().unwrap();
        rows[r] = rows[r].map(|c| k * c);
        let pivot = rows[r];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col];
                for c in 0..4 {
                    row[c] = row[c] + f * pivot[c];
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Coordinates λ with `target = Σ λᵢ basis[i]`, or `None` if `basis` is singular.
pub fn solve(basis: &[Vector4; 4], target: Vector4) -> Option<[Gf4; 4]> {
    // Augmented 4x5 system, columns are the basis vectors.
    let mut m = [[Gf4::ZERO; 5]; 4];
    for (row, line) in m.iter_mut().enumerate() {
        for (col, b) in basis.iter().enumerate() {
            line[col] = b.0[row];
        }
        line[4] = target.0[row];
    }
    for col in 0..4 {
        let piv = (col..4).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, piv);
        let k = m[col][col].inv().unwrap();
        m[col] = m[col].map(|c| k * c);
        let pivot = m[col];
        for (i, row) in m.iter_mut().enumerate() {
            if i != col && !row[col].is_zero() {
                let f = row[col];
                for c in 0..5 {
                    row[c] = row[c] + f * pivot[c];
                }
            }
        }
    }
    Some([m[0][4], m[1][4], m[2][4], m[3][4]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    const W: Gf4 = Gf4::OMEGA;
    const W2: Gf4 = Gf4::OMEGA_SQ;

    #[test]
    fn addition_examples() {
        assert_eq!(add(W, W), Gf4::ZERO);
        assert_eq!(add(W, Gf4::ONE), W2);
        for x in Gf4::ALL {
            assert_eq!(add(Gf4::ZERO, x), x);
        }
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(mul(W, W), W2);
        assert_eq!(mul(W, W2), Gf4::ONE);
        for x in Gf4::ALL {
            assert_eq!(mul(Gf4::ONE, x), x);
        }
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(conj(W), W2);
        assert_eq!(conj(W2), W);
        assert_eq!(conj(Gf4::ONE), Gf4::ONE);
        for a in Gf4::ALL {
            assert_eq!(conj(conj(a)), a);
            assert_eq!(conj(a) == a, a.in_prime_field());
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for a in Gf4::ALL {
            assert_eq!(a + a, Gf4::ZERO);
            for b in Gf4::ALL {
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                for c in Gf4::ALL {
                    assert_eq!((a + b) + c, a + (b + c));
                    assert_eq!((a * b) * c, a * (b * c));
                    assert_eq!(a * (b + c), a * b + a * c);
                }
            }
            if !a.is_zero() {
                let inverses: Vec<_> = Gf4::ALL
                    .into_iter()
                    .filter(|&b| a * b == Gf4::ONE)
                    .collect();
                assert_eq!(inverses, vec![a.inv().unwrap()]);
            }
        }
        // ω² = ω + 1
        assert_eq!(W * W, W + Gf4::ONE);
    }

    #[test]
    fn normalize_examples() {
        let v = Vector4([Gf4::ZERO, W, W, Gf4::ZERO]);
        assert_eq!(
            normalize(v).unwrap().rep(),
            Vector4([Gf4::ZERO, Gf4::ONE, Gf4::ONE, Gf4::ZERO])
        );
        let e0 = Vector4([Gf4::ONE, Gf4::ZERO, Gf4::ZERO, Gf4::ZERO]);
        assert_eq!(normalize(e0).unwrap().rep(), e0);
        assert!(matches!(normalize(Vector4::ZERO), Err(Error::ZeroVector)));
    }

    #[test]
    fn eighty_five_projective_points() {
        let pts: BTreeSet<_> = Vector4::all()
            .filter(|v| !v.is_zero())
            .map(|v| normalize(v).unwrap())
            .collect();
        assert_eq!(pts.len(), 85);
    }

    #[test]
    fn rank_and_solve() {
        let e = |i: usize| {
            let mut v = [Gf4::ZERO; 4];
            v[i] = Gf4::ONE;
            Vector4(v)
        };
        assert_eq!(rank(&[e(0), e(1), e(0) + e(1)]), 2);
        assert_eq!(rank(&[e(0), e(1), e(2), e(3)]), 4);
        let target = e(0).scale(W) + e(3).scale(W2);
        assert_eq!(
            solve(&[e(0), e(1), e(2), e(3)], target),
            Some([W, Gf4::ZERO, Gf4::ZERO, W2])
        );
        assert_eq!(solve(&[e(0), e(0), e(2), e(3)], target), None);
    }

    fn vec4() -> impl Strategy<Value = Vector4> {
        prop::array::uniform4(0u8..4).prop_map(|t| Vector4::from_tags(t).unwrap())
    }

    proptest! {
        #[test]
        fn normalize_is_scale_invariant_and_idempotent(v in vec4(), k in 1u8..4) {
            prop_assume!(!v.is_zero());
            let p = normalize(v).unwrap();
            let scaled = v.scale(Gf4::from_tag(k).unwrap());
            prop_assert_eq!(normalize(scaled).unwrap(), p);
            prop_assert_eq!(normalize(p.rep()).unwrap(), p);
            let lead = p.rep().0.iter().copied().find(|c| !c.is_zero()).unwrap();
            prop_assert_eq!(lead, Gf4::ONE);
        }
    }
}
