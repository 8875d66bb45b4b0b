//! Exact Clifford algebra over the root span, and the canonical-triple
//! representation of Pin-group elements.
//!
//! The algebra is generated by an orthogonal basis u₁,…,u_n of the
//! reflection representation with u_i² = κ·Q_i (Q_i = ⟨u_i,u_i⟩ > 0,
//! κ ∈ {±1} a global convention fixed by calibration) and
//! u_i u_j = −u_j u_i.  Elements are stored on the monomial basis
//! u_S = u_{i₁}⋯u_{i_k} (S a bitmask, factors ascending).
//!
//! Every element of the Pin group — a product of unit vectors f_α = α/|α|
//! — is a *rational* Clifford element times a positive real square root:
//!     x = sign · √(scale²) · U,
//! with U rational and normalized to leading coefficient 1 (smallest
//! monomial mask), scale² a positive rational, and sign ∈ {±1}.  The triple
//! (U, scale², sign) is unique, hashable, and multiplies by pure rational
//! arithmetic, so the double cover is assembled without ever leaving ℚ.

use crate::exactnum::{exact_sqrt_rat, Rat};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Sparse Clifford element with rational coefficients on bitmask monomials.
pub type CliffordElt = BTreeMap<u32, Rat>;

#[derive(Clone, Debug)]
pub struct CliffordAlgebra {
    pub n: usize,
    /// Sign convention in u_i² = κ·Q_i.
    pub kappa: i8,
    /// Norms Q_i = ⟨u_i, u_i⟩ of the orthogonal basis, form scale included.
    pub q: Vec<Rat>,
}

impl CliffordAlgebra {
    pub fn new(kappa: i8, q: Vec<Rat>) -> Self {
        assert!(kappa == 1 || kappa == -1);
        assert!(q.iter().all(|x| x.is_positive()), "norms must be positive");
        assert!(q.len() <= 30, "bitmask monomial representation caps the rank");
        CliffordAlgebra { n: q.len(), kappa, q }
    }

    pub fn top_mask(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    /// Product of two basis monomials: u_S · u_T = coeff · u_R.
    pub fn mul_monomials(&self, s: u32, t: u32) -> (u32, Rat) {
        let mut cur = s;
        let mut coeff = Rat::one();
        let mut negative = false;
        let mut rest = t;
        while rest != 0 {
            let i = rest.trailing_zeros();
            rest &= rest - 1;
            // Move u_i leftward past the generators of `cur` above i.
            let higher = cur & !((1u32 << (i + 1)) - 1);
            if higher.count_ones() % 2 == 1 {
                negative = !negative;
            }
            let bit = 1u32 << i;
            if cur & bit != 0 {
                cur &= !bit;
                coeff *= &self.q[i as usize];
                if self.kappa < 0 {
                    negative = !negative;
                }
            } else {
                cur |= bit;
            }
        }
        if negative {
            coeff = -coeff;
        }
        (cur, coeff)
    }

    pub fn mul_elts(&self, a: &CliffordElt, b: &CliffordElt) -> CliffordElt {
        let mut out: CliffordElt = BTreeMap::new();
        for (&sa, ca) in a {
            for (&sb, cb) in b {
                let (mask, coeff) = self.mul_monomials(sa, sb);
                let term = ca * cb * coeff;
                let entry = out.entry(mask).or_insert_with(Rat::zero);
                *entry += term;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// Grade-1 element from coordinates in the orthogonal basis.
pub fn vector_elt(coords: &[Rat]) -> CliffordElt {
    coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (1u32 << i, c.clone()))
        .collect()
}

/// A Pin-group element in canonical form: sign · √(scale²) · unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PinElt {
    /// Rational part, leading (smallest-mask) coefficient normalized to 1.
    pub unit: CliffordElt,
    /// Square of the positive real scalar.
    pub scale2: Rat,
    /// ±1.
    pub sign: i8,
}

impl PinElt {
    pub fn identity() -> Self {
        PinElt {
            unit: BTreeMap::from([(0u32, Rat::one())]),
            scale2: Rat::one(),
            sign: 1,
        }
    }

    pub fn basis_vector(i: usize) -> Self {
        PinElt {
            unit: BTreeMap::from([(1u32 << i, Rat::one())]),
            scale2: Rat::one(),
            sign: 1,
        }
    }

    /// Canonicalize sign·√(scale²)·elt, normalizing the leading coefficient.
    pub fn from_parts(elt: CliffordElt, scale2: Rat, sign: i8) -> Self {
        assert!(!elt.is_empty(), "zero is not a Pin element");
        assert!(scale2.is_positive());
        let lead = elt.values().next().unwrap().clone();
        let mut sign = sign;
        if lead.is_negative() {
            sign = -sign;
        }
        let unit: CliffordElt = elt.iter().map(|(&m, c)| (m, c / &lead)).collect();
        PinElt {
            unit,
            scale2: scale2 * &lead * &lead,
            sign,
        }
    }

    pub fn mul(&self, alg: &CliffordAlgebra, other: &PinElt) -> PinElt {
        let prod = alg.mul_elts(&self.unit, &other.unit);
        PinElt::from_parts(prod, &self.scale2 * &other.scale2, self.sign * other.sign)
    }

    pub fn neg(&self) -> PinElt {
        PinElt {
            unit: self.unit.clone(),
            scale2: self.scale2.clone(),
            sign: -self.sign,
        }
    }

    /// Parity of the element; Pin elements are homogeneous in the ℤ/2
    /// grading (asserted).
    pub fn parity(&self) -> u32 {
        let p = self.unit.keys().next().unwrap().count_ones() % 2;
        debug_assert!(
            self.unit.keys().all(|m| m.count_ones() % 2 == p),
            "inhomogeneous Pin element"
        );
        p
    }

    /// Grading involution ε (u_i ↦ −u_i): ±x by homogeneity.
    pub fn grade_involution(&self) -> PinElt {
        if self.parity() == 1 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Reversal anti-automorphism: monomials of degree d pick up
    /// (−1)^{d(d−1)/2}.
    pub fn reversal(&self) -> PinElt {
        let elt: CliffordElt = self
            .unit
            .iter()
            .map(|(&m, c)| {
                let d = m.count_ones();
                let flip = (d * d.wrapping_sub(1) / 2) % 2 == 1;
                (m, if flip { -c.clone() } else { c.clone() })
            })
            .collect();
        PinElt::from_parts(elt, self.scale2.clone(), self.sign)
    }

    /// Group inverse: for a product of k unit vectors (f² = κ),
    /// x⁻¹ = κ^k · reversal(x).
    pub fn inverse(&self, alg: &CliffordAlgebra) -> PinElt {
        let rev = self.reversal();
        if alg.kappa < 0 && self.parity() == 1 {
            rev.neg()
        } else {
            rev
        }
    }

    /// ±1 if the two elements agree up to overall sign.
    pub fn ratio_sign(&self, other: &PinElt) -> Option<i8> {
        if self.unit == other.unit && self.scale2 == other.scale2 {
            Some(self.sign * other.sign)
        } else {
            None
        }
    }

    /// Coefficient of the empty monomial, as an exact real:
    /// sign · √(scale²) · unit_∅ represented by (rational, radicand) with
    /// value = rational·√radicand.
    pub fn coeff(&self, mask: u32) -> Option<(Rat, Rat)> {
        let c = self.unit.get(&mask)?;
        let mut r = c.clone();
        if self.sign < 0 {
            r = -r;
        }
        Some((r, self.scale2.clone()))
    }

    /// Extract a grade-1 element with rational coordinates; requires the
    /// scalar √(scale²) to be rational.
    pub fn as_vector(&self, n: usize) -> Option<Vec<Rat>> {
        let root = exact_sqrt_rat(&self.scale2)?;
        let mut v = vec![Rat::zero(); n];
        for (&m, c) in &self.unit {
            if m.count_ones() != 1 {
                return None;
            }
            let i = m.trailing_zeros() as usize;
            let mut x = c * &root;
            if self.sign < 0 {
                x = -x;
            }
            v[i] = x;
        }
        Some(v)
    }
}
