//! Crystallographic root systems in their standard rational realizations.
//!
//! Each supported type is realized inside an ambient ℚ^m with the standard
//! dot product: A_n on the sum-zero hyperplane of ℚ^{n+1}, B_n/C_n/D_n in
//! ℚ^n, G₂ on the sum-zero plane of ℚ³, F₄ in ℚ⁴.  The full root set is the
//! closure of the simple roots under the simple reflections
//! s_α(v) = v − (v, α∨)α, with coroots α∨ = 2α/⟨α,α⟩.
//!
//! The bilinear form used downstream (Clifford relations, Casimir norms,
//! ⟨s,s⟩ for nilpotent semisimple elements) is `scale · dot`; root and
//! coroot *vectors* are fixed lattice data computed at scale 1, so rescaling
//! the form moves every Casimir scalar covariantly without perturbing the
//! group.

use crate::exactnum::{rat_int, Rat};
use crate::linalg::{self, RatMat};
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Cartan series label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    G,
    F,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
            CartanType::G => "G",
            CartanType::F => "F",
        };
        write!(f, "{}", s)
    }
}

impl FromStr for CartanType {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(CartanType::A),
            "B" => Ok(CartanType::B),
            "C" => Ok(CartanType::C),
            "D" => Ok(CartanType::D),
            "G" => Ok(CartanType::G),
            "F" => Ok(CartanType::F),
            other => Err(RootError::UnknownType(other.to_string())),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("unknown Cartan type {0:?}")]
    UnknownType(String),
    #[error("unsupported type/rank combination {0}{1}")]
    UnsupportedRank(CartanType, usize),
    #[error("form scale must be positive, got {0}")]
    NonPositiveScale(String),
}

/// Parameter function c: W-invariant rational weights on roots, constant on
/// root-length orbits.  `long` applies to the longest orbit (and to every
/// root in the simply-laced case), `short` to the strictly shorter orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(with = "crate::exactnum::rat_pair")]
    pub long: Rat,
    #[serde(with = "crate::exactnum::rat_pair")]
    pub short: Rat,
}

impl Params {
    pub fn equal() -> Self {
        Params {
            long: Rat::one(),
            short: Rat::one(),
        }
    }

    pub fn two(long: Rat, short: Rat) -> Self {
        Params { long, short }
    }

    pub fn is_equal(&self) -> bool {
        self.long == self.short
    }
}

/// A realized root system with its form, Gram–Schmidt frame and coroots.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub cartan: CartanType,
    pub rank: usize,
    /// Dimension of the ambient rational space the roots are written in.
    pub ambient_dim: usize,
    /// Positive rational scale of the bilinear form: ⟨v,w⟩ = scale·(v·w).
    pub scale: Rat,
    roots: Vec<Vec<Rat>>,
    coroots: Vec<Vec<Rat>>,
    /// Integer coordinates of each root in the simple-root basis.
    simple_coords: Vec<Vec<Rat>>,
    positive: Vec<bool>,
    simple_idx: Vec<usize>,
    /// True when the root lies in the longest length orbit.
    long_root: Vec<bool>,
    ortho_basis: Vec<Vec<Rat>>,
    /// Standard-dot norms q_i of the orthogonal basis (unscaled).
    basis_norms_std: Vec<Rat>,
}

fn e(m: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); m];
    v[i] = Rat::one();
    v
}

fn simple_roots(cartan: CartanType, rank: usize) -> Option<(usize, Vec<Vec<Rat>>)> {
    match (cartan, rank) {
        (CartanType::A, n) if (1..=5).contains(&n) => {
            let m = n + 1;
            let simples = (0..n)
                .map(|i| linalg::axpy(&e(m, i), &Rat::one(), &e(m, i + 1)))
                .collect();
            Some((m, simples))
        }
        (CartanType::B, n) if (1..=4).contains(&n) => {
            let m = n;
            let mut simples: Vec<Vec<Rat>> = (0..n.saturating_sub(1))
                .map(|i| linalg::axpy(&e(m, i), &Rat::one(), &e(m, i + 1)))
                .collect();
            simples.push(e(m, n - 1));
            Some((m, simples))
        }
        (CartanType::C, n) if (3..=4).contains(&n) => {
            let m = n;
            let mut simples: Vec<Vec<Rat>> = (0..n - 1)
                .map(|i| linalg::axpy(&e(m, i), &Rat::one(), &e(m, i + 1)))
                .collect();
            simples.push(linalg::scale_vec(&e(m, n - 1), &rat_int(2)));
            Some((m, simples))
        }
        (CartanType::D, 4) => {
            let m = 4;
            let mut simples: Vec<Vec<Rat>> = (0..3)
                .map(|i| linalg::axpy(&e(m, i), &Rat::one(), &e(m, i + 1)))
                .collect();
            let mut last = e(m, 2);
            last[3] = Rat::one();
            simples.push(last);
            Some((m, simples))
        }
        (CartanType::G, 2) => {
            let m = 3;
            let a1 = linalg::axpy(&e(m, 0), &Rat::one(), &e(m, 1));
            let mut a2 = vec![rat_int(-2), Rat::one(), Rat::one()];
            a2.truncate(m);
            Some((m, vec![a1, a2]))
        }
        (CartanType::F, 4) => {
            let m = 4;
            let a1 = linalg::axpy(&e(m, 1), &Rat::one(), &e(m, 2));
            let a2 = linalg::axpy(&e(m, 2), &Rat::one(), &e(m, 3));
            let a3 = e(m, 3);
            let a4 = vec![
                Rat::new(1.into(), 2.into()),
                Rat::new((-1).into(), 2.into()),
                Rat::new((-1).into(), 2.into()),
                Rat::new((-1).into(), 2.into()),
            ];
            Some((m, vec![a1, a2, a3, a4]))
        }
        _ => None,
    }
}

/// Number of roots each supported system must produce; used as a build-time
/// cross-check on the closure generation.
fn expected_root_count(cartan: CartanType, rank: usize) -> usize {
    match cartan {
        CartanType::A => rank * (rank + 1),
        CartanType::B | CartanType::C => 2 * rank * rank,
        CartanType::D => 2 * rank * (rank - 1),
        CartanType::G => 12,
        CartanType::F => 48,
    }
}

/// Degrees of the basic invariants, giving |W| = ∏ dᵢ as an independent
/// order formula.
pub fn invariant_degrees(cartan: CartanType, rank: usize) -> Vec<usize> {
    match cartan {
        CartanType::A => (2..=rank + 1).collect(),
        CartanType::B | CartanType::C => (1..=rank).map(|i| 2 * i).collect(),
        CartanType::D => {
            let mut d: Vec<usize> = (1..rank).map(|i| 2 * i).collect();
            d.push(rank);
            d.sort_unstable();
            d
        }
        CartanType::G => vec![2, 6],
        CartanType::F => vec![2, 6, 8, 12],
    }
}

impl RootSystem {
    /// Build the root system at form scale 1.
    pub fn build(cartan: CartanType, rank: usize) -> Result<Self, RootError> {
        Self::build_scaled(cartan, rank, Rat::one())
    }

    /// Build with the bilinear form scaled by a positive rational `scale`.
    pub fn build_scaled(cartan: CartanType, rank: usize, scale: Rat) -> Result<Self, RootError> {
        if !scale.is_positive() {
            return Err(RootError::NonPositiveScale(crate::exactnum::rat_display(
                &scale,
            )));
        }
        let (ambient_dim, simples) =
            simple_roots(cartan, rank).ok_or(RootError::UnsupportedRank(cartan, rank))?;

        let coroot_of = |v: &[Rat]| -> Vec<Rat> {
            let n = linalg::dot(v, v);
            linalg::scale_vec(v, &(rat_int(2) / n))
        };
        let simple_coroots: Vec<Vec<Rat>> = simples.iter().map(|a| coroot_of(a)).collect();

        // Closure of the simple roots under the simple reflections.
        let mut roots: Vec<Vec<Rat>> = simples.clone();
        let mut frontier: Vec<Vec<Rat>> = simples.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for r in &frontier {
                for (a, av) in simples.iter().zip(simple_coroots.iter()) {
                    let c = linalg::dot(r, av);
                    let image = linalg::axpy(r, &c, a);
                    if !roots.contains(&image) {
                        roots.push(image.clone());
                        next.push(image);
                    }
                }
            }
            frontier = next;
        }
        assert_eq!(
            roots.len(),
            expected_root_count(cartan, rank),
            "closure produced the wrong number of {}{} roots",
            cartan,
            rank
        );

        // Integer coordinates in the simple basis, via the Gram matrix of the
        // simple roots.
        let gram = RatMat::from_rows(
            simples
                .iter()
                .map(|a| simples.iter().map(|b| linalg::dot(a, b)).collect())
                .collect(),
        );
        let mut with_coords: Vec<(Vec<Rat>, Vec<Rat>)> = roots
            .into_iter()
            .map(|r| {
                let rhs: Vec<Rat> = simples.iter().map(|a| linalg::dot(a, &r)).collect();
                let coords = gram.solve(&rhs).expect("simple-root Gram is invertible");
                assert!(
                    coords.iter().all(|c| c.denom().is_one()),
                    "root with non-integer simple coordinates"
                );
                (coords, r)
            })
            .collect();
        with_coords.sort_by(|a, b| a.0.cmp(&b.0));

        let simple_coords: Vec<Vec<Rat>> = with_coords.iter().map(|(c, _)| c.clone()).collect();
        let roots: Vec<Vec<Rat>> = with_coords.into_iter().map(|(_, r)| r).collect();
        let positive: Vec<bool> = simple_coords
            .iter()
            .map(|c| {
                let pos = c.iter().all(|x| !x.is_negative());
                let neg = c.iter().all(|x| !x.is_positive());
                assert!(pos ^ neg, "root neither positive nor negative");
                pos
            })
            .collect();
        assert_eq!(
            positive.iter().filter(|&&p| p).count() * 2,
            roots.len(),
            "positive roots are not half of all roots"
        );

        let simple_idx: Vec<usize> = simples
            .iter()
            .map(|a| roots.iter().position(|r| r == a).expect("simple root present"))
            .collect();
        let coroots: Vec<Vec<Rat>> = roots.iter().map(|r| coroot_of(r)).collect();
        let max_norm = roots
            .iter()
            .map(|r| linalg::dot(r, r))
            .max()
            .expect("nonempty root set");
        let long_root: Vec<bool> = roots.iter().map(|r| linalg::dot(r, r) == max_norm).collect();

        // Orthogonal frame of the span: the ambient standard basis when the
        // roots span everything, otherwise Gram–Schmidt over the simple roots.
        let (ortho_basis, basis_norms_std) = if rank == ambient_dim {
            (
                (0..rank).map(|i| e(ambient_dim, i)).collect::<Vec<_>>(),
                vec![Rat::one(); rank],
            )
        } else {
            let mut basis: Vec<Vec<Rat>> = Vec::with_capacity(rank);
            let mut norms: Vec<Rat> = Vec::with_capacity(rank);
            for a in &simples {
                let mut u = a.clone();
                for (b, q) in basis.iter().zip(norms.iter()) {
                    let c = linalg::dot(&u, b) / q;
                    u = linalg::axpy(&u, &c, b);
                }
                let q = linalg::dot(&u, &u);
                assert!(q.is_positive(), "degenerate Gram–Schmidt step");
                basis.push(u);
                norms.push(q);
            }
            (basis, norms)
        };

        Ok(RootSystem {
            cartan,
            rank,
            ambient_dim,
            scale,
            roots,
            coroots,
            simple_coords,
            positive,
            simple_idx,
            long_root,
            ortho_basis,
            basis_norms_std,
        })
    }

    pub fn roots(&self) -> &[Vec<Rat>] {
        &self.roots
    }

    pub fn coroot(&self, idx: usize) -> &[Rat] {
        &self.coroots[idx]
    }

    pub fn is_positive_root(&self, idx: usize) -> bool {
        self.positive[idx]
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(|&i| self.positive[i])
    }

    pub fn num_positive(&self) -> usize {
        self.positive.iter().filter(|&&p| p).count()
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple_idx
    }

    pub fn simple_root(&self, k: usize) -> &[Rat] {
        &self.roots[self.simple_idx[k]]
    }

    pub fn simple_coords(&self, idx: usize) -> &[Rat] {
        &self.simple_coords[idx]
    }

    pub fn is_long(&self, idx: usize) -> bool {
        self.long_root[idx]
    }

    /// Parameter value attached to a root by a parameter function.
    pub fn param(&self, params: &Params, idx: usize) -> Rat {
        if self.long_root[idx] {
            params.long.clone()
        } else {
            params.short.clone()
        }
    }

    /// Standard (unscaled) dot product.
    pub fn dot(&self, v: &[Rat], w: &[Rat]) -> Rat {
        linalg::dot(v, w)
    }

    /// The bilinear form ⟨v,w⟩ = scale · (v·w).
    pub fn inner(&self, v: &[Rat], w: &[Rat]) -> Rat {
        &self.scale * linalg::dot(v, w)
    }

    /// Index of a root vector, if present.
    pub fn root_index(&self, v: &[Rat]) -> Option<usize> {
        self.roots.iter().position(|r| r == v)
    }

    /// Reflection through root `idx`: v ↦ v − (v, α∨)α.
    pub fn reflect(&self, idx: usize, v: &[Rat]) -> Vec<Rat> {
        let c = linalg::dot(v, &self.coroots[idx]);
        linalg::axpy(v, &c, &self.roots[idx])
    }

    /// Ambient matrix of the reflection through root `idx`.
    pub fn reflection_matrix(&self, idx: usize) -> RatMat {
        let m = self.ambient_dim;
        let cols: Vec<Vec<Rat>> = (0..m).map(|j| self.reflect(idx, &e(m, j))).collect();
        RatMat::from_cols(&cols)
    }

    /// Matrices of the simple reflections, the generators handed to the
    /// group-closure machinery.
    pub fn simple_reflection_matrices(&self) -> Vec<RatMat> {
        self.simple_idx
            .iter()
            .map(|&i| self.reflection_matrix(i))
            .collect()
    }

    /// Orthogonal basis u_i of the root span.
    pub fn ortho_basis(&self) -> &[Vec<Rat>] {
        &self.ortho_basis
    }

    /// Unscaled norms q_i = u_i·u_i.
    pub fn basis_norms_std(&self) -> &[Rat] {
        &self.basis_norms_std
    }

    /// Scaled norms ⟨u_i,u_i⟩ entering the Clifford relations.
    pub fn basis_norms(&self) -> Vec<Rat> {
        self.basis_norms_std
            .iter()
            .map(|q| &self.scale * q)
            .collect()
    }

    /// Coordinates of an ambient vector in the orthogonal frame; valid for
    /// vectors lying in the root span.
    pub fn span_coords(&self, v: &[Rat]) -> Vec<Rat> {
        self.ortho_basis
            .iter()
            .zip(self.basis_norms_std.iter())
            .map(|(u, q)| linalg::dot(v, u) / q)
            .collect()
    }

    /// True when `v` lies in the span of the roots.
    pub fn in_span(&self, v: &[Rat]) -> bool {
        let coords = self.span_coords(v);
        let mut recon = vec![Rat::zero(); self.ambient_dim];
        for (c, u) in coords.iter().zip(self.ortho_basis.iter()) {
            for (r, x) in recon.iter_mut().zip(u.iter()) {
                *r += c * x;
            }
        }
        recon == v
    }

    /// Matrix of an ambient orthogonal map restricted to the root span, in
    /// the orthogonal frame.
    pub fn restrict_to_span(&self, w: &RatMat) -> RatMat {
        let n = self.rank;
        let mut m = RatMat::zeros(n, n);
        for j in 0..n {
            let img = w.mul_vec(&self.ortho_basis[j]);
            for i in 0..n {
                *m.at_mut(i, j) = linalg::dot(&img, &self.ortho_basis[i]) / &self.basis_norms_std[i];
            }
        }
        m
    }

    /// Order of the product of the simple reflections.
    pub fn coxeter_number(&self) -> usize {
        let mut prod = RatMat::identity(self.ambient_dim);
        for m in self.simple_reflection_matrices() {
            prod = prod.mul(&m);
        }
        let mut pow = prod.clone();
        let mut k = 1;
        while !pow.is_identity() {
            pow = pow.mul(&prod);
            k += 1;
            assert!(k <= 1000, "runaway Coxeter element order");
        }
        k
    }

    /// |W| from the invariant-degree product.
    pub fn weyl_order(&self) -> usize {
        invariant_degrees(self.cartan, self.rank).iter().product()
    }

    /// Distinct root norms (standard dot), ascending.
    pub fn root_norms(&self) -> Vec<Rat> {
        let mut norms: Vec<Rat> = Vec::new();
        for r in &self.roots {
            let n = linalg::dot(r, r);
            if !norms.contains(&n) {
                norms.push(n);
            }
        }
        norms.sort();
        norms
    }
}

/// The supported (type, rank) table.
pub fn supported_systems() -> Vec<(CartanType, usize)> {
    let mut v = Vec::new();
    for n in 1..=5 {
        v.push((CartanType::A, n));
    }
    for n in 2..=4 {
        v.push((CartanType::B, n));
    }
    for n in 3..=4 {
        v.push((CartanType::C, n));
    }
    v.push((CartanType::D, 4));
    v.push((CartanType::G, 2));
    v.push((CartanType::F, 4));
    v
}
