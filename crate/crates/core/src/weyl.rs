//! Weyl groups acting on their root systems: character tables, the sign
//! character, elliptic conjugacy classes, and the elliptic pairing.
//!
//! An element is elliptic when it fixes no nonzero vector of the reflection
//! representation V₀ (the span of the roots), i.e. det(1 − w)|_{V₀} ≠ 0.
//! The elliptic pairing
//!     e(f₁, f₂) = |W|⁻¹ Σ_w conj(f₁(w)) · det(1 − w)|_{V₀} · f₂(w)
//! is supported on elliptic classes; characters induced from proper
//! parabolic subgroups lie in its radical, and its rank equals the number
//! of elliptic classes.
//!
//! For the hyperoctahedral series the elliptic classes are indexed by
//! partitions λ ⊢ n via signed permutations all of whose cycles are
//! negative; symmetric-group character values are available independently
//! of the table through the Murnaghan–Nakayama rule, as a cross-check
//! oracle.

use crate::exactnum::{rat_int, CycNum, Rat};
use crate::fingroup::dixon::character_table;
use crate::fingroup::{CharacterTable, ClassFunction, FinGroup, MatrixGroup};
use crate::linalg::RatMat;
use crate::rootsys::{CartanType, RootSystem};
use crate::CoreError;
use num::{One, Zero};
use rayon::prelude::*;

#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub root_system: RootSystem,
    pub mat: MatrixGroup,
    pub table: CharacterTable,
    sgn: ClassFunction,
    /// Per class: det(1 − w) restricted to the root span.
    det1m: Vec<Rat>,
    elliptic: Vec<usize>,
}

impl WeylGroup {
    pub fn build(cartan: CartanType, rank: usize) -> Result<Self, CoreError> {
        Self::build_scaled(cartan, rank, Rat::one())
    }

    pub fn build_scaled(cartan: CartanType, rank: usize, scale: Rat) -> Result<Self, CoreError> {
        let rs = RootSystem::build_scaled(cartan, rank, scale)?;
        let mat = MatrixGroup::close(&rs.simple_reflection_matrices());
        assert_eq!(
            mat.group.order(),
            rs.weyl_order(),
            "reflection closure disagrees with the invariant-degree product"
        );
        let table = character_table(&mat.group)?;
        let sgn = ClassFunction::from_fn(&mat.group, |x| {
            CycNum::from_rat(mat.matrices[x as usize].det())
        });
        let det1m: Vec<Rat> = (0..mat.group.num_classes())
            .map(|c| {
                let w = &mat.matrices[mat.group.class_rep(c) as usize];
                let restricted = rs.restrict_to_span(w);
                RatMat::identity(rs.rank).sub(&restricted).det()
            })
            .collect();
        let elliptic: Vec<usize> = (0..det1m.len()).filter(|&c| !det1m[c].is_zero()).collect();
        Ok(WeylGroup {
            root_system: rs,
            mat,
            table,
            sgn,
            det1m,
            elliptic,
        })
    }

    pub fn group(&self) -> &FinGroup {
        &self.mat.group
    }

    pub fn matrix(&self, x: u32) -> &RatMat {
        &self.mat.matrices[x as usize]
    }

    pub fn sgn(&self) -> &ClassFunction {
        &self.sgn
    }

    pub fn det_one_minus(&self, class: usize) -> &Rat {
        &self.det1m[class]
    }

    pub fn elliptic_classes(&self) -> &[usize] {
        &self.elliptic
    }

    pub fn is_elliptic_class(&self, class: usize) -> bool {
        !self.det1m[class].is_zero()
    }

    /// Character of the reflection representation V₀.
    pub fn reflection_character(&self) -> ClassFunction {
        ClassFunction::from_fn(self.group(), |x| {
            CycNum::from_rat(self.root_system.restrict_to_span(self.matrix(x)).trace())
        })
    }

    /// Elliptic pairing of two class functions.
    pub fn elliptic_pairing(&self, f1: &ClassFunction, f2: &ClassFunction) -> CycNum {
        let g = self.group();
        let mut acc = CycNum::zero();
        for c in 0..g.num_classes() {
            if self.det1m[c].is_zero() {
                continue;
            }
            let weight = rat_int(g.class_size(c) as i64) * &self.det1m[c];
            let term = (&f1.values[c].conj() * &f2.values[c]).scale(&weight);
            acc = &acc + &term;
        }
        acc.scale(&Rat::new(1.into(), (g.order() as i64).into()))
    }

    /// Gram matrix of the elliptic pairing on the irreducible characters.
    /// Weyl-group characters are rational, so the entries are rational.
    pub fn elliptic_gram(&self) -> RatMat {
        let r = self.table.num_irreps();
        let rows: Vec<Vec<Rat>> = (0..r)
            .into_par_iter()
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let v =
                            self.elliptic_pairing(self.table.row(i), self.table.row(j));
                        v.to_rat().expect("Weyl characters pair rationally")
                    })
                    .collect()
            })
            .collect();
        RatMat::from_rows(rows)
    }

    /// Rank of the elliptic pairing on virtual characters.
    pub fn elliptic_rank(&self) -> usize {
        self.elliptic_gram().rank()
    }

    /// Signed cycle type of a class representative when the group acts by
    /// signed permutation matrices: (length, is_negative) per cycle, sorted
    /// long-to-short with negatives first on ties.
    pub fn class_cycle_type(&self, class: usize) -> Option<Vec<(usize, bool)>> {
        signed_cycles(self.matrix(self.group().class_rep(class)))
    }

    /// For the hyperoctahedral series: elliptic classes are exactly the
    /// signed permutations with all cycles negative; returns the partition
    /// (negative cycle lengths) indexing an elliptic class.
    pub fn elliptic_partition(&self, class: usize) -> Option<Vec<usize>> {
        let cycles = self.class_cycle_type(class)?;
        if !cycles.iter().all(|&(_, neg)| neg) {
            return None;
        }
        let mut parts: Vec<usize> = cycles.iter().map(|&(len, _)| len).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(parts)
    }

    /// Class index of the all-negative-cycles signed permutation w_λ with
    /// block lengths λ (hyperoctahedral series only).
    pub fn class_of_partition(&self, lambda: &[usize]) -> Option<usize> {
        let n = self.root_system.ambient_dim;
        if lambda.iter().sum::<usize>() != n {
            return None;
        }
        let m = negative_cycle_matrix(n, lambda);
        let x = self.mat.index_of(&m)?;
        Some(self.group().class_of(x))
    }
}

/// Block matrix of negative cycles: each part k sends e₁→e₂→…→e_k→−e₁ on
/// its own block of coordinates.
pub fn negative_cycle_matrix(n: usize, lambda: &[usize]) -> RatMat {
    assert_eq!(lambda.iter().sum::<usize>(), n);
    let mut cols = vec![vec![Rat::zero(); n]; n];
    let mut off = 0;
    for &k in lambda {
        for j in 0..k {
            let mut col = vec![Rat::zero(); n];
            if j + 1 < k {
                col[off + j + 1] = Rat::one();
            } else {
                col[off] = -Rat::one();
            }
            cols[off + j] = col;
        }
        off += k;
    }
    RatMat::from_cols(&cols)
}

/// Signed cycle decomposition of a matrix whose columns are ±eᵢ; `None`
/// if the matrix is not a signed permutation.
pub fn signed_cycles(m: &RatMat) -> Option<Vec<(usize, bool)>> {
    let n = m.nrows;
    if m.ncols != n {
        return None;
    }
    let mut perm = vec![usize::MAX; n];
    let mut sign = vec![false; n]; // true = negative entry
    for j in 0..n {
        let mut hit = None;
        for i in 0..n {
            let x = m.at(i, j);
            if x.is_zero() {
                continue;
            }
            if hit.is_some() {
                return None;
            }
            if x == &Rat::one() {
                hit = Some((i, false));
            } else if x == &(-Rat::one()) {
                hit = Some((i, true));
            } else {
                return None;
            }
        }
        let (i, s) = hit?;
        perm[j] = i;
        sign[j] = s;
    }
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut neg = false;
        let mut j = start;
        loop {
            seen[j] = true;
            len += 1;
            neg ^= sign[j];
            j = perm[j];
            if j == start {
                break;
            }
        }
        cycles.push((len, neg));
    }
    cycles.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
    Some(cycles)
}

/// Cycle type of a plain permutation matrix (all cycles positive), longest
/// first.
pub fn cycle_type(m: &RatMat) -> Option<Vec<usize>> {
    let cycles = signed_cycles(m)?;
    if cycles.iter().any(|&(_, neg)| neg) {
        return None;
    }
    Some(cycles.into_iter().map(|(len, _)| len).collect())
}

/// All partitions of n, parts descending, in descending lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Murnaghan–Nakayama rule: the symmetric-group character χ_λ evaluated at
/// cycle type μ, by recursive border-strip removal on the beta-number
/// encoding of λ.
pub fn mn_character(shape: &[usize], cycles: &[usize]) -> i64 {
    assert_eq!(
        shape.iter().sum::<usize>(),
        cycles.iter().sum::<usize>(),
        "character label and cycle type must partition the same n"
    );
    // Beta numbers: strictly decreasing λᵢ + (r−1−i).
    let r = shape.len();
    let mut betas: Vec<i64> = shape
        .iter()
        .enumerate()
        .map(|(i, &l)| l as i64 + (r - 1 - i) as i64)
        .collect();
    let mut parts: Vec<usize> = cycles.to_vec();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    fn rec(betas: &mut Vec<i64>, parts: &[usize]) -> i64 {
        let Some((&k, rest)) = parts.split_first() else {
            return 1;
        };
        let k = k as i64;
        let mut total = 0i64;
        for idx in 0..betas.len() {
            let b = betas[idx];
            let t = b - k;
            if t < 0 || betas.contains(&t) {
                continue;
            }
            let height = betas.iter().filter(|&&c| t < c && c < b).count();
            let sign = if height % 2 == 0 { 1 } else { -1 };
            betas[idx] = t;
            total += sign * rec(betas, rest);
            betas[idx] = b;
        }
        total
    }
    rec(&mut betas, &parts)
}

/// Symmetric-group irreducible character as a class function on a type-A
/// Weyl group, built from the Murnaghan–Nakayama rule alone.
pub fn sn_irrep(w: &WeylGroup, shape: &[usize]) -> ClassFunction {
    assert_eq!(w.root_system.cartan, CartanType::A);
    let n = w.root_system.ambient_dim;
    assert_eq!(shape.iter().sum::<usize>(), n);
    let values = (0..w.group().num_classes())
        .map(|c| {
            let ct = cycle_type(w.matrix(w.group().class_rep(c)))
                .expect("type-A Weyl matrices are permutations");
            CycNum::from_rat(rat_int(mn_character(shape, &ct)))
        })
        .collect();
    ClassFunction::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn rank_one_pairing_values() {
        let w = WeylGroup::build(CartanType::A, 1).unwrap();
        let triv = ClassFunction::trivial(w.group());
        let sgn = w.sgn().clone();
        assert_eq!(w.elliptic_pairing(&triv, &triv), CycNum::one());
        assert_eq!(
            w.elliptic_pairing(&triv, &sgn),
            CycNum::from_rat(rat(-1, 1))
        );
        assert_eq!(w.elliptic_pairing(&sgn, &sgn), CycNum::one());
        assert_eq!(w.elliptic_classes().len(), 1);
        assert_eq!(w.det_one_minus(w.elliptic_classes()[0]), &rat(2, 1));
    }

    #[test]
    fn parabolically_induced_characters_lie_in_the_radical() {
        let w = WeylGroup::build(CartanType::A, 2).unwrap();
        let g = w.group();
        let (h, fusion) = g.subgroup(&[0, 1]).unwrap();
        let ind = ClassFunction::trivial(&h).induced_to(g, &h, &fusion);
        for i in 0..w.table.num_irreps() {
            assert_eq!(
                w.elliptic_pairing(&ind, w.table.row(i)),
                CycNum::zero(),
                "induced class function must be elliptically null"
            );
        }
    }

    #[test]
    fn elliptic_rank_equals_number_of_elliptic_classes() {
        for (ct, n) in [
            (CartanType::A, 2),
            (CartanType::A, 3),
            (CartanType::B, 2),
            (CartanType::B, 3),
            (CartanType::C, 3),
            (CartanType::D, 4),
            (CartanType::G, 2),
        ] {
            let w = WeylGroup::build(ct, n).unwrap();
            assert_eq!(
                w.elliptic_rank(),
                w.elliptic_classes().len(),
                "{}{}",
                ct,
                n
            );
        }
    }

    #[test]
    fn symmetric_groups_have_one_elliptic_class() {
        for n in [2usize, 3, 4] {
            let w = WeylGroup::build(CartanType::A, n - 1).unwrap();
            assert_eq!(w.elliptic_classes().len(), 1);
            let c = w.elliptic_classes()[0];
            // The n-cycles: det(1 − w)|V₀ = n.
            assert_eq!(w.det_one_minus(c), &rat_int(n as i64));
            let ct = cycle_type(w.matrix(w.group().class_rep(c))).unwrap();
            assert_eq!(ct, vec![n]);
        }
    }

    #[test]
    fn hyperoctahedral_elliptic_classes_are_partitions() {
        for n in [2usize, 3] {
            let w = WeylGroup::build(CartanType::B, n).unwrap();
            let parts = partitions(n);
            assert_eq!(w.elliptic_classes().len(), parts.len());
            for lambda in &parts {
                let c = w.class_of_partition(lambda).unwrap();
                assert!(w.is_elliptic_class(c));
                assert_eq!(w.elliptic_partition(c).as_deref(), Some(lambda.as_slice()));
                // det(1 − w_λ) = 2^(number of parts)
                assert_eq!(
                    w.det_one_minus(c),
                    &rat_int(1i64 << lambda.len() as u32)
                );
            }
        }
    }

    #[test]
    fn determinant_route_agrees_with_characteristic_polynomial_route() {
        for (ct, n) in [(CartanType::A, 3), (CartanType::B, 3), (CartanType::G, 2)] {
            let w = WeylGroup::build(ct, n).unwrap();
            for c in 0..w.group().num_classes() {
                let m = w
                    .root_system
                    .restrict_to_span(w.matrix(w.group().class_rep(c)));
                // det(1 − w) = Σ_j (coefficients of det(λI − w)) at λ = 1
                let coeff_sum: Rat = m.charpoly().into_iter().sum();
                assert_eq!(&coeff_sum, w.det_one_minus(c));
            }
        }
    }

    #[test]
    fn partition_enumeration_is_deterministic() {
        let p5 = partitions(5);
        assert_eq!(p5.len(), 7);
        assert_eq!(p5.first().unwrap(), &vec![5]);
        assert_eq!(p5.last().unwrap(), &vec![1, 1, 1, 1, 1]);
        assert_eq!(partitions(6).len(), 11);
    }

    #[test]
    fn murnaghan_nakayama_oracle() {
        // Hand values in S₃.
        assert_eq!(mn_character(&[2, 1], &[3]), -1);
        assert_eq!(mn_character(&[2, 1], &[1, 1, 1]), 2);
        assert_eq!(mn_character(&[2, 1], &[2, 1]), 0);
        // Trivial and sign rows.
        assert_eq!(mn_character(&[4], &[2, 2]), 1);
        assert_eq!(mn_character(&[1, 1, 1, 1], &[2, 2]), 1);
        assert_eq!(mn_character(&[1, 1, 1, 1], &[2, 1, 1]), -1);
        // Hook length check: degree of (2,2) in S₄ is 2.
        assert_eq!(mn_character(&[2, 2], &[1, 1, 1, 1]), 2);
    }

    #[test]
    fn murnaghan_nakayama_rows_match_the_character_table() {
        let w = WeylGroup::build(CartanType::A, 3).unwrap();
        for shape in partitions(4) {
            let f = sn_irrep(&w, &shape);
            assert!(
                w.table.index_of(&f).is_some(),
                "shape {:?} is not an irreducible row",
                shape
            );
        }
    }

    #[test]
    fn elliptic_data_is_scale_invariant() {
        let w1 = WeylGroup::build(CartanType::B, 2).unwrap();
        let w2 = WeylGroup::build_scaled(CartanType::B, 2, rat(3, 1)).unwrap();
        for c in 0..w1.group().num_classes() {
            assert_eq!(w1.det_one_minus(c), w2.det_one_minus(c));
        }
        assert_eq!(w1.elliptic_classes(), w2.elliptic_classes());
    }
}
