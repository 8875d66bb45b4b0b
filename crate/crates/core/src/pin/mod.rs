//! The double cover W̃ of a Weyl group inside the Pin group of its
//! reflection representation, and the spin (half-spin) characters.
//!
//! Each simple reflection s_α lifts to the unit vector f_α = α/|α| of the
//! Clifford algebra; products of the f's form a group W̃ with a central
//! element z = −1 and W̃/⟨z⟩ ≅ W via the twisted conjugation
//! p(x)(v) = ε(x)·v·x⁻¹.  The cover's multiplication is encoded by a ±1
//! cocycle c(w₁,w₂) defined by x_{w₁}x_{w₂} = c(w₁,w₂)·x_{w₁w₂} on the
//! canonical lifts; seeds c(·, s) against the generators are computed with
//! exact Clifford products and the rest of the table follows from the
//! recursion c(w₁, w₂'s) = c(w₂',s)·c(w₁,w₂')·c(w₁w₂',s).
//!
//! Characters that see z as −1 ("genuine" characters) include the spin
//! modules S±.  Their values need no spinor matrices: writing a lift in the
//! monomial basis, only the empty and the top monomial have nonzero trace,
//! so   χ_{S±}(x) = dim·(C_∅(x) ± τ·C_top(x))
//! with τ a fixed square root of (−1)^{n(n−1)/2}·κ^n·ΠQ_i.  For odd rank
//! the pair are characters of all of W̃ and differ by the sign twist; for
//! even rank they live on the even half W̃′ and are swapped by conjugation
//! with any odd element.  Since elliptic Weyl elements have determinant
//! (−1)^rank, the spin difference χ_{S⁺} − χ_{S⁻} is supported exactly
//! where the elliptic theory needs it.

pub mod clifford;

pub use clifford::{vector_elt, CliffordAlgebra, CliffordElt, PinElt};

use crate::exactnum::{rat, rat_int, CycNum, Rat};
use crate::fingroup::dixon::character_table;
use crate::fingroup::{CharacterTable, ClassFunction, FinGroup};
use crate::weyl::WeylGroup;
use crate::CoreError;
use num::One;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct PinCover {
    pub weyl: WeylGroup,
    pub alg: CliffordAlgebra,
    /// Canonical lift x_w of each Weyl element, in BFS word order.
    lifts: Vec<PinElt>,
    /// √(scale²) of each lift, as an exact cyclotomic number.
    lift_roots: Vec<CycNum>,
    /// ±1 cocycle, row-major over W×W.
    cocycle: Vec<i8>,
    /// W-element index of each simple generator.
    sgen: Vec<u32>,
    /// The cover W̃ of order 2|W|: index w + |W|·ε encodes (−1)^ε · x_w.
    pub cover: FinGroup,
    /// True when the Weyl element underlying a cover index is a rotation.
    even_w: Vec<bool>,
    /// Carrier of the spin characters: W̃ itself (odd rank) or its even
    /// half W̃′ (even rank).
    pub carrier: FinGroup,
    /// carrier index → cover index.
    pub carrier_fusion: Vec<u32>,
    carrier_back: Vec<u32>,
    pub carrier_table: CharacterTable,
    pub carrier_is_cover: bool,
    /// Carrier class of the central element z.
    pub z_class: usize,
    /// Rows of the carrier table with χ(z) = −χ(1).
    pub genuine_rows: Vec<usize>,
    /// dim S± and the square root τ entering the spin character formula.
    pub spin_dim: u64,
    pub tau: CycNum,
    pub chi_plus: ClassFunction,
    pub chi_minus: ClassFunction,
    /// Per elliptic Weyl class: the sign ε in
    /// diff(w̃)² = ε · (2/[W : p(carrier)]) · det(1 − w).
    pub diff_squared_signs: Vec<(usize, i8)>,
}

impl PinCover {
    pub fn build(weyl: WeylGroup, kappa: i8) -> Result<Self, CoreError> {
        let n = weyl.root_system.rank;
        let nw = weyl.group().order();
        let alg = CliffordAlgebra::new(kappa, weyl.root_system.basis_norms());

        // Lifts of the simple reflections: f_α = α/|α|.
        let mut gens = Vec::with_capacity(n);
        for k in 0..n {
            let alpha = weyl.root_system.simple_root(k).to_vec();
            let coords = weyl.root_system.span_coords(&alpha);
            let norm = weyl.root_system.inner(&alpha, &alpha);
            let f = PinElt::from_parts(vector_elt(&coords), Rat::one() / norm, 1);
            let sq = f.mul(&alg, &f);
            let kappa_elt = if kappa > 0 {
                PinElt::identity()
            } else {
                PinElt::identity().neg()
            };
            if sq != kappa_elt {
                return Err(CoreError::Check(format!(
                    "generator lift {} does not square to κ",
                    k
                )));
            }
            gens.push(f);
        }
        let sgen: Vec<u32> = weyl
            .root_system
            .simple_reflection_matrices()
            .iter()
            .map(|m| {
                weyl.mat
                    .index_of(m)
                    .expect("simple reflection is a group element")
            })
            .collect();

        // Canonical lifts along the BFS tree: one Clifford product each.
        let mut lifts = vec![PinElt::identity(); nw];
        for x in 1..nw {
            let (p, s) = weyl.mat.parents[x];
            lifts[x] = lifts[p as usize].mul(&alg, &gens[s as usize]);
        }
        let lift_roots: Vec<CycNum> = lifts
            .iter()
            .map(|x| CycNum::sqrt_rat(&x.scale2))
            .collect::<Result<_, _>>()?;

        // p ∘ lift = id, verified on every element: the twisted conjugation
        // ε(x)·u_j·x⁻¹ must reproduce the Weyl matrix on the root span.
        for x in 0..nw {
            let lift = &lifts[x];
            let eps = lift.grade_involution();
            let xinv = lift.inverse(&alg);
            if lift.mul(&alg, &xinv) != PinElt::identity() {
                return Err(CoreError::Check(format!("lift {} has a bad inverse", x)));
            }
            let expected = weyl
                .root_system
                .restrict_to_span(weyl.matrix(x as u32));
            for j in 0..n {
                let image = eps
                    .mul(&alg, &PinElt::basis_vector(j))
                    .mul(&alg, &xinv)
                    .as_vector(n)
                    .ok_or_else(|| {
                        CoreError::Check(format!("projection of lift {} is not linear", x))
                    })?;
                for i in 0..n {
                    if &image[i] != expected.at(i, j) {
                        return Err(CoreError::Check(format!(
                            "lift {} projects to the wrong Weyl element",
                            x
                        )));
                    }
                }
            }
        }

        // Cocycle seeds against the generators, then the full table by the
        // parent recursion.
        let mut seed = vec![0i8; nw * n];
        for v in 0..nw {
            for s in 0..n {
                let prod = lifts[v].mul(&alg, &gens[s]);
                let vs = weyl.group().mul(v as u32, sgen[s]) as usize;
                seed[v * n + s] = prod.ratio_sign(&lifts[vs]).ok_or_else(|| {
                    CoreError::Check("generator product escapes the canonical lifts".into())
                })?;
            }
        }
        let mut cocycle = vec![1i8; nw * nw];
        for w2 in 1..nw {
            let (p2, s) = weyl.mat.parents[w2];
            let p2 = p2 as usize;
            let s = s as usize;
            for w1 in 0..nw {
                let w1p2 = weyl.group().mul(w1 as u32, p2 as u32) as usize;
                cocycle[w1 * nw + w2] =
                    seed[p2 * n + s] * cocycle[w1 * nw + p2] * seed[w1p2 * n + s];
            }
        }

        // The cover W̃ as a multiplication table on 2|W| indices.
        let two = 2 * nw;
        let mut mult = vec![0u32; two * two];
        for i1 in 0..two {
            let (w1, e1) = (i1 % nw, i1 / nw);
            for i2 in 0..two {
                let (w2, e2) = (i2 % nw, i2 / nw);
                let w12 = weyl.group().mul(w1 as u32, w2 as u32) as usize;
                let mut e = e1 ^ e2;
                if cocycle[w1 * nw + w2] < 0 {
                    e ^= 1;
                }
                mult[i1 * two + i2] = (w12 + nw * e) as u32;
            }
        }
        let cover = FinGroup::from_mult_table(two, mult)?;

        let even_w: Vec<bool> = (0..nw)
            .map(|x| weyl.matrix(x as u32).det() == Rat::one())
            .collect();
        let carrier_is_cover = n % 2 == 1;
        let (carrier, carrier_fusion) = if carrier_is_cover {
            (cover.clone(), (0..two as u32).collect())
        } else {
            let elems: Vec<u32> = (0..two as u32)
                .filter(|&i| even_w[(i as usize) % nw])
                .collect();
            cover.subgroup(&elems)?
        };
        let mut carrier_back = vec![u32::MAX; two];
        for (i, &f) in carrier_fusion.iter().enumerate() {
            carrier_back[f as usize] = i as u32;
        }
        let carrier_table = character_table(&carrier)?;
        let z_class = carrier.class_of(carrier_back[nw]);
        let genuine_rows: Vec<usize> = (0..carrier_table.num_irreps())
            .filter(|&i| {
                let row = carrier_table.row(i);
                row.values[z_class] == row.values[0].scale(&rat(-1, 1))
            })
            .collect();

        // τ² = (−1)^{n(n−1)/2} κ^n ΠQ_i; dim S± = 2^{⌈n/2⌉−1}.
        let mut tau2: Rat = alg.q.iter().product();
        if (n * (n - 1) / 2) % 2 == 1 {
            tau2 = -tau2;
        }
        if kappa < 0 && n % 2 == 1 {
            tau2 = -tau2;
        }
        let mut tau = CycNum::sqrt_rat(&tau2)?;
        let spin_dim: u64 = 1 << ((n + 1) / 2 - 1).min(63);

        let mut pc = PinCover {
            weyl,
            alg,
            lifts,
            lift_roots,
            cocycle,
            sgen,
            cover,
            even_w,
            carrier,
            carrier_fusion,
            carrier_back,
            carrier_table,
            carrier_is_cover,
            z_class,
            genuine_rows,
            spin_dim,
            tau,
            chi_plus: ClassFunction::new(Vec::new()),
            chi_minus: ClassFunction::new(Vec::new()),
            diff_squared_signs: Vec::new(),
        };

        // Label S± deterministically: at the first elliptic Weyl class, the
        // spin difference must point into the closed upper half plane
        // (positive imaginary part, or real positive).
        let c0 = *pc
            .weyl
            .elliptic_classes()
            .first()
            .ok_or_else(|| CoreError::Check("no elliptic classes".into()))?;
        let w0 = pc.weyl.group().class_rep(c0);
        let probe = pc.diff_at(w0 as usize);
        if probe.is_zero() {
            return Err(CoreError::Check(
                "spin difference vanishes on an elliptic class".into(),
            ));
        }
        let imag_part = &probe - &probe.conj();
        let (re, im) = probe.float_shadow();
        let keep = if !imag_part.is_zero() {
            assert!(im.abs() > 1e-9, "float shadow too small to trust");
            im > 0.0
        } else {
            assert!(re.abs() > 1e-9, "float shadow too small to trust");
            re > 0.0
        };
        if !keep {
            tau = pc.tau.scale(&rat(-1, 1));
            pc.tau = tau;
        }

        // Spin characters as class functions on the carrier, with a full
        // class-constancy sweep.
        let build_spin = |pc: &PinCover, plus: bool| -> Result<ClassFunction, CoreError> {
            let values: Vec<CycNum> = (0..pc.carrier.num_classes())
                .map(|c| pc.spin_at(pc.carrier_fusion[pc.carrier.class_rep(c) as usize] as usize, plus))
                .collect();
            for y in 0..pc.carrier.order() as u32 {
                let v = pc.spin_at(pc.carrier_fusion[y as usize] as usize, plus);
                if v != values[pc.carrier.class_of(y)] {
                    return Err(CoreError::Check(
                        "spin character is not constant on a conjugacy class".into(),
                    ));
                }
            }
            Ok(ClassFunction::new(values))
        };
        pc.chi_plus = build_spin(&pc, true)?;
        pc.chi_minus = build_spin(&pc, false)?;

        // The pair must be genuine irreducible rows of the carrier table.
        for (name, chi) in [("S+", &pc.chi_plus), ("S-", &pc.chi_minus)] {
            let idx = pc.carrier_table.index_of(chi).ok_or_else(|| {
                CoreError::Check(format!("{} is not an irreducible character", name))
            })?;
            if !pc.genuine_rows.contains(&idx) {
                return Err(CoreError::Check(format!("{} is not genuine", name)));
            }
        }
        if pc.chi_plus == pc.chi_minus {
            return Err(CoreError::Check("spin pair is degenerate".into()));
        }

        // Odd rank: the pair differ by the sign twist.  Even rank: they are
        // swapped by conjugation with any odd lift.
        if carrier_is_cover {
            let sgn_p = pc.restrict_through_projection(pc.weyl.sgn());
            if pc.chi_minus != sgn_p.tensor(&pc.chi_plus) {
                return Err(CoreError::Check("sign twist does not swap S±".into()));
            }
        } else {
            let g0 = pc.sgen[0]; // an odd cover element
            let twisted = ClassFunction::new(
                (0..pc.carrier.num_classes())
                    .map(|c| {
                        let y = pc.carrier_fusion[pc.carrier.class_rep(c) as usize];
                        let conj = pc.cover.conjugate(g0, y);
                        pc.chi_plus.values[pc.carrier.class_of(pc.carrier_back[conj as usize])]
                            .clone()
                    })
                    .collect(),
            );
            if pc.chi_minus != twisted {
                return Err(CoreError::Check(
                    "odd conjugation does not swap S±".into(),
                ));
            }
        }

        // diff² = ε·(2/[W : p(carrier)])·det(1 − w) with ε = ±1 on every
        // elliptic class.
        let index_factor: Rat = if pc.carrier_is_cover {
            rat(2, 1)
        } else {
            Rat::one()
        };
        let mut signs = Vec::new();
        for &c in pc.weyl.elliptic_classes() {
            let w = pc.weyl.group().class_rep(c) as usize;
            let d = pc.diff_at(w);
            let d2 = (&d * &d)
                .to_rat()
                .ok_or_else(|| CoreError::Check("spin difference squared is irrational".into()))?;
            let expect = &index_factor * pc.weyl.det_one_minus(c);
            let eps = if d2 == expect {
                1i8
            } else if d2 == -expect.clone() {
                -1i8
            } else {
                return Err(CoreError::Check(format!(
                    "diff² = {} but ±(2/idx)·det(1−w) = {}",
                    crate::exactnum::rat_display(&d2),
                    crate::exactnum::rat_display(&expect)
                )));
            };
            signs.push((c, eps));
        }
        pc.diff_squared_signs = signs;

        Ok(pc)
    }

    /// Weyl element underlying a cover index.
    pub fn project(&self, cover_idx: u32) -> u32 {
        (cover_idx as usize % self.weyl.group().order()) as u32
    }

    /// Cover index of (−1)^ε · x_w.
    pub fn cover_index(&self, w: u32, negated: bool) -> u32 {
        (w as usize + if negated { self.weyl.group().order() } else { 0 }) as u32
    }

    /// Carrier index of a cover element, when it lies in the carrier.
    pub fn carrier_index(&self, cover_idx: u32) -> Option<u32> {
        let i = self.carrier_back[cover_idx as usize];
        (i != u32::MAX).then_some(i)
    }

    pub fn lift(&self, w: u32) -> &PinElt {
        &self.lifts[w as usize]
    }

    pub fn cocycle_value(&self, w1: u32, w2: u32) -> i8 {
        self.cocycle[w1 as usize * self.weyl.group().order() + w2 as usize]
    }

    /// Exact coefficient of a monomial in the cover element's Clifford
    /// expansion.
    pub fn monomial_coeff(&self, cover_idx: usize, mask: u32) -> CycNum {
        let nw = self.weyl.group().order();
        let (w, e) = (cover_idx % nw, cover_idx / nw);
        match self.lifts[w].unit.get(&mask) {
            None => CycNum::zero(),
            Some(c) => {
                let mut r = c.clone();
                if self.lifts[w].sign < 0 {
                    r = -r;
                }
                if e == 1 {
                    r = -r;
                }
                self.lift_roots[w].scale(&r)
            }
        }
    }

    /// χ_{S±} at a cover element (pointwise).
    pub fn spin_at(&self, cover_idx: usize, plus: bool) -> CycNum {
        let c0 = self.monomial_coeff(cover_idx, 0);
        let ct = self.monomial_coeff(cover_idx, self.alg.top_mask());
        let t = &self.tau * &ct;
        let inner = if plus { &c0 + &t } else { &c0 - &t };
        inner.scale(&rat_int(self.spin_dim as i64))
    }

    /// Spin difference χ_{S⁺} − χ_{S⁻} at the canonical lift x_w.
    pub fn diff_at(&self, w: usize) -> CycNum {
        let ct = self.monomial_coeff(w, self.alg.top_mask());
        (&self.tau * &ct).scale(&rat_int(2 * self.spin_dim as i64))
    }

    /// Spin difference as a class function on the carrier.
    pub fn diff_class_function(&self) -> ClassFunction {
        self.chi_plus.sub(&self.chi_minus)
    }

    /// Pull a Weyl class function back to the carrier through p.
    pub fn restrict_through_projection(&self, f: &ClassFunction) -> ClassFunction {
        ClassFunction::new(
            (0..self.carrier.num_classes())
                .map(|c| {
                    let y = self.carrier_fusion[self.carrier.class_rep(c) as usize];
                    f.value_on(self.weyl.group(), self.project(y)).clone()
                })
                .collect(),
        )
    }

    /// Locate a canonical-triple element inside the cover by scanning the
    /// lifts; bulk callers should use [`PinCover::lift_lookup`] instead.
    pub fn cover_index_of(&self, x: &PinElt) -> Option<u32> {
        let nw = self.weyl.group().order();
        for w in 0..nw {
            if let Some(s) = x.ratio_sign(&self.lifts[w]) {
                return Some(self.cover_index(w as u32, s < 0));
            }
        }
        None
    }

    /// Hash map from (unit, scale²) to the Weyl index of the lift, for bulk
    /// exact lookups.
    pub fn lift_lookup(&self) -> HashMap<(CliffordElt, Rat), u32> {
        self.lifts
            .iter()
            .enumerate()
            .map(|(w, x)| ((x.unit.clone(), x.scale2.clone()), w as u32))
            .collect()
    }

    pub fn lift_sign(&self, w: u32) -> i8 {
        self.lifts[w as usize].sign
    }

    /// Cover index of the canonical lift of the k-th simple reflection.
    pub fn generator_index(&self, k: usize) -> u32 {
        self.sgen[k]
    }

    /// The twist that exchanges the two halves of a spin pair: tensoring
    /// with sgn∘p when the carrier is the full cover, conjugation by an odd
    /// lift when it is the even half.  An involution on carrier table rows.
    pub fn partner_row(&self, row: usize) -> Result<usize, CoreError> {
        let chi = &self.carrier_table.rows[row];
        let twisted = if self.carrier_is_cover {
            self.restrict_through_projection(self.weyl.sgn()).tensor(chi)
        } else {
            let g0 = self.sgen[0];
            ClassFunction::new(
                (0..self.carrier.num_classes())
                    .map(|c| {
                        let y = self.carrier_fusion[self.carrier.class_rep(c) as usize];
                        let conj = self.cover.conjugate(g0, y);
                        chi.values[self.carrier.class_of(self.carrier_back[conj as usize])]
                            .clone()
                    })
                    .collect(),
            )
        };
        self.carrier_table
            .index_of(&twisted)
            .ok_or_else(|| CoreError::Check("twisted character is not a table row".into()))
    }

    /// True when the cover element maps to a rotation.
    pub fn is_even(&self, cover_idx: u32) -> bool {
        self.even_w[(cover_idx as usize) % self.weyl.group().order()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanType;

    fn build(ct: CartanType, n: usize) -> PinCover {
        let w = WeylGroup::build(ct, n).unwrap();
        PinCover::build(w, 1).unwrap()
    }

    #[test]
    fn rank_one_cover_splits_with_positive_kappa() {
        let pc = build(CartanType::A, 1);
        assert_eq!(pc.cover.order(), 4);
        // With f² = +1 every element squares to the identity.
        for x in 0..4u32 {
            assert!(pc.cover.element_order(x) <= 2);
        }
        assert_eq!(pc.genuine_rows.len(), 2);
        // Hand value: the lift f = u₁/√2 has spin difference 2.
        let s = pc.weyl.group().class_rep(pc.weyl.elliptic_classes()[0]);
        assert_eq!(pc.diff_at(s as usize), CycNum::from_rat(rat(2, 1)));
        assert_eq!(pc.spin_at(s as usize, true), CycNum::one());
        assert_eq!(pc.spin_at(s as usize, false), CycNum::from_rat(rat(-1, 1)));
    }

    #[test]
    fn rank_two_hyperoctahedral_cover_values() {
        let pc = build(CartanType::B, 2);
        assert_eq!(pc.cover.order(), 16);
        assert!(!pc.carrier_is_cover);
        assert_eq!(pc.carrier.order(), 8);
        // The even half is cyclic of order 8: a generator exists.
        let has_order_8 = (0..8u32).any(|x| pc.carrier.element_order(x) == 8);
        assert!(has_order_8);
        // Hand values: at the 90° rotation class, diff = i√2 = ζ₈ + ζ₈³
        // after labeling; at −1, diff = ±2i with det(1−w) = 4.
        let rot_class = pc
            .weyl
            .elliptic_classes()
            .iter()
            .copied()
            .find(|&c| pc.weyl.det_one_minus(c) == &rat(2, 1))
            .unwrap();
        let w = pc.weyl.group().class_rep(rot_class);
        let d = pc.diff_at(w as usize);
        let expect = &CycNum::root_of_unity(8, 1) + &CycNum::root_of_unity(8, 3);
        assert_eq!(d, expect);
        let minus_one_class = pc
            .weyl
            .elliptic_classes()
            .iter()
            .copied()
            .find(|&c| pc.weyl.det_one_minus(c) == &rat(4, 1))
            .unwrap();
        let w = pc.weyl.group().class_rep(minus_one_class);
        let d = pc.diff_at(w as usize);
        let d2 = (&d * &d).to_rat().unwrap();
        assert_eq!(d2, rat(-4, 1)); // (±2i)² = −4, ε = −1
        // The central lift of −I is u₁u₂ up to sign: top coefficient ±1.
        assert!(pc.lift(w).unit.contains_key(&0b11));
    }

    #[test]
    fn cocycle_satisfies_the_cocycle_identity_exhaustively() {
        for (ct, n) in [(CartanType::A, 2), (CartanType::B, 2)] {
            let pc = build(ct, n);
            let g = pc.weyl.group();
            let nw = g.order() as u32;
            for w1 in 0..nw {
                for w2 in 0..nw {
                    for w3 in 0..nw {
                        let lhs =
                            pc.cocycle_value(w1, w2) * pc.cocycle_value(g.mul(w1, w2), w3);
                        let rhs =
                            pc.cocycle_value(w2, w3) * pc.cocycle_value(w1, g.mul(w2, w3));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn cocycle_matches_clifford_products_exhaustively() {
        let pc = build(CartanType::B, 2);
        let g = pc.weyl.group();
        let nw = g.order() as u32;
        for w1 in 0..nw {
            for w2 in 0..nw {
                let prod = pc.lift(w1).mul(&pc.alg, pc.lift(w2));
                let target = pc.lift(g.mul(w1, w2));
                assert_eq!(
                    prod.ratio_sign(target),
                    Some(pc.cocycle_value(w1, w2)),
                    "cocycle mismatch at ({}, {})",
                    w1,
                    w2
                );
            }
        }
    }

    #[test]
    fn spin_characters_are_genuine_rows_odd_rank() {
        let pc = build(CartanType::A, 2);
        // n = 2 is even; use B3 for odd rank.
        assert!(!pc.carrier_is_cover);
        let pc3 = build(CartanType::B, 3);
        assert!(pc3.carrier_is_cover);
        assert_eq!(pc3.spin_dim, 2);
        let sgn_p = pc3.restrict_through_projection(pc3.weyl.sgn());
        assert_eq!(pc3.chi_minus, sgn_p.tensor(&pc3.chi_plus));
    }

    #[test]
    fn diff_squared_tracks_the_elliptic_determinant() {
        for (ct, n) in [
            (CartanType::A, 1),
            (CartanType::A, 2),
            (CartanType::B, 2),
            (CartanType::B, 3),
            (CartanType::G, 2),
            (CartanType::D, 4),
        ] {
            let pc = build(ct, n);
            let idx = if pc.carrier_is_cover { 2 } else { 1 };
            for &(c, eps) in &pc.diff_squared_signs {
                let w = pc.weyl.group().class_rep(c) as usize;
                let d = pc.diff_at(w);
                let d2 = (&d * &d).to_rat().unwrap();
                assert_eq!(d2, rat(eps as i64 * idx, 1) * pc.weyl.det_one_minus(c));
            }
        }
    }

    #[test]
    fn spin_values_are_scale_invariant() {
        let w1 = WeylGroup::build(CartanType::B, 2).unwrap();
        let w2 = WeylGroup::build_scaled(CartanType::B, 2, rat(3, 1)).unwrap();
        let p1 = PinCover::build(w1, 1).unwrap();
        let p2 = PinCover::build(w2, 1).unwrap();
        assert_eq!(p1.chi_plus, p2.chi_plus);
        assert_eq!(p1.chi_minus, p2.chi_minus);
        // τ itself scales: τ² picks up t^n.
        assert_eq!(
            p2.tau.norm_squared().to_rat().unwrap(),
            rat(9, 1) * p1.tau.norm_squared().to_rat().unwrap()
        );
    }

    #[test]
    fn even_rank_cover_refines_weyl_classes_coherently() {
        let pc = build(CartanType::G, 2);
        assert_eq!(pc.cover.order(), 24);
        assert_eq!(pc.carrier.order(), 12);
        // z is central of order 2 and genuine rows see it as −1.
        let z = pc.cover_index(0, true);
        assert_eq!(pc.cover.element_order(z), 2);
        for &i in &pc.genuine_rows {
            let row = pc.carrier_table.row(i);
            assert_eq!(row.values[pc.z_class], row.values[0].scale(&rat(-1, 1)));
        }
        // τ = i√3 for this geometry: τ² = −3.
        assert_eq!((&pc.tau * &pc.tau).to_rat().unwrap(), rat(-3, 1));
    }
}
