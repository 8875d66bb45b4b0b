//! Finite groups as explicit multiplication tables, with conjugacy classes,
//! class functions, and exact character tables.
//!
//! Groups arrive in one of two ways: closure of a finite set of rational
//! matrices (Weyl groups), or a directly supplied multiplication table
//! (double covers assembled from a 2-cocycle).  Elements are dense indices
//! `0..order` with the identity always at index 0, so everything downstream
//! is table lookups.  Construction is deterministic: breadth-first closure
//! with each generation sorted by matrix entries, conjugacy classes ordered
//! by their smallest member.

use crate::exactnum::{lcm_u64, rat_int, CycNum, Rat};
use crate::linalg::RatMat;
use std::collections::HashMap;
use thiserror::Error;

pub mod dixon;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not a Latin square: {0}")]
    NotLatin(String),
    #[error("index 0 is not a two-sided identity")]
    BadIdentity,
    #[error("element {0} has no two-sided inverse")]
    BadInverse(u32),
    #[error("subset is not closed under multiplication")]
    NotClosed,
    #[error("subset does not contain the identity")]
    MissingIdentity,
    #[error("no prime p ≡ 1 (mod {0}) with p > {1} below the search bound")]
    NoSplittingPrime(u64, u64),
    #[error("eigenspace splitting stalled with a subspace of dimension {0}")]
    SplitStalled(usize),
    #[error("character table self-check failed: {0}")]
    TableCheck(String),
    #[error("class function is not a nonnegative integral combination of irreducibles: {0}")]
    NotACharacter(String),
}

/// A finite group presented by its full multiplication table.
#[derive(Clone, Debug)]
pub struct FinGroup {
    order: usize,
    /// Row-major: `mult[a*order + b]` = a·b.
    mult: Vec<u32>,
    inv: Vec<u32>,
    classes: Vec<Vec<u32>>,
    class_of: Vec<u32>,
}

impl FinGroup {
    /// Build from a multiplication table with the identity at index 0.
    pub fn from_mult_table(order: usize, mult: Vec<u32>) -> Result<Self, GroupError> {
        assert!(order >= 1);
        assert_eq!(mult.len(), order * order);
        assert!(mult.iter().all(|&x| (x as usize) < order));
        // Identity at 0.
        for x in 0..order {
            if mult[x] as usize != x || mult[x * order] as usize != x {
                return Err(GroupError::BadIdentity);
            }
        }
        // Latin square: rows and columns are permutations.
        let mut seen = vec![false; order];
        for a in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..order {
                let p = mult[a * order + b] as usize;
                if seen[p] {
                    return Err(GroupError::NotLatin(format!("row {}", a)));
                }
                seen[p] = true;
            }
        }
        for b in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for a in 0..order {
                let p = mult[a * order + b] as usize;
                if seen[p] {
                    return Err(GroupError::NotLatin(format!("column {}", b)));
                }
                seen[p] = true;
            }
        }
        // Two-sided inverses.
        let mut inv = vec![0u32; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| mult[a * order + b] == 0)
                .expect("Latin square row hits identity");
            if mult[b * order + a] != 0 {
                return Err(GroupError::BadInverse(a as u32));
            }
            inv[a] = b as u32;
        }
        let (classes, class_of) = conjugacy_classes(order, &mult, &inv);
        Ok(FinGroup {
            order,
            mult,
            inv,
            classes,
            class_of,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mult[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    #[inline]
    pub fn conjugate(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn power(&self, a: u32, k: i64) -> u32 {
        let (base, mut k) = if k < 0 { (self.inv(a), -k) } else { (a, k) };
        let mut acc = 0u32;
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1u64;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Exponent of the group: lcm of the element orders.
    pub fn exponent(&self) -> u64 {
        self.classes
            .iter()
            .map(|c| self.element_order(c[0]))
            .fold(1u64, lcm_u64)
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn class_of(&self, x: u32) -> usize {
        self.class_of[x as usize] as usize
    }

    /// Representative of a class: its smallest element.
    pub fn class_rep(&self, c: usize) -> u32 {
        self.classes[c][0]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    /// Class containing the inverses of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.class_of(self.inv(self.class_rep(c)))
    }

    /// Subgroup spanned by an explicit closed subset, together with the
    /// embedding `sub index → parent index`.
    pub fn subgroup(&self, elems: &[u32]) -> Result<(FinGroup, Vec<u32>), GroupError> {
        let mut fusion: Vec<u32> = elems.to_vec();
        fusion.sort_unstable();
        fusion.dedup();
        if fusion.first() != Some(&0) {
            return Err(GroupError::MissingIdentity);
        }
        let pos: HashMap<u32, u32> = fusion
            .iter()
            .enumerate()
            .map(|(i, &g)| (g, i as u32))
            .collect();
        let n = fusion.len();
        let mut mult = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let p = self.mul(fusion[i], fusion[j]);
                match pos.get(&p) {
                    Some(&k) => mult[i * n + j] = k,
                    None => return Err(GroupError::NotClosed),
                }
            }
        }
        Ok((FinGroup::from_mult_table(n, mult)?, fusion))
    }
}

fn conjugacy_classes(order: usize, mult: &[u32], inv: &[u32]) -> (Vec<Vec<u32>>, Vec<u32>) {
    let mut class_of = vec![u32::MAX; order];
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for x in 0..order as u32 {
        if class_of[x as usize] != u32::MAX {
            continue;
        }
        let c = classes.len() as u32;
        let mut orbit = Vec::new();
        for g in 0..order as u32 {
            let gx = mult[g as usize * order + x as usize];
            let y = mult[gx as usize * order + inv[g as usize] as usize];
            if class_of[y as usize] == u32::MAX {
                class_of[y as usize] = c;
                orbit.push(y);
            }
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }
    (classes, class_of)
}

/// A matrix group: the abstract table plus the realizing matrices and
/// shortest generator words (used to lift elements through covers).
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    pub group: FinGroup,
    pub matrices: Vec<RatMat>,
    /// Shortest word in the generators for each element; empty for the
    /// identity.  Deterministic: first discovery in sorted breadth-first
    /// order.
    pub words: Vec<Vec<u8>>,
    /// Breadth-first discovery edge of each non-identity element x:
    /// (earlier element p, generator s) with x = p·s.
    pub parents: Vec<(u32, u8)>,
}

impl MatrixGroup {
    /// Close a finite set of invertible rational matrices into a group.
    ///
    /// Breadth-first from the identity; each new generation is sorted by
    /// matrix entries before indices are assigned, so element numbering is
    /// a pure function of the generator list.
    pub fn close(gens: &[RatMat]) -> Self {
        assert!(!gens.is_empty(), "need at least one generator");
        let dim = gens[0].nrows;
        for g in gens {
            assert_eq!(g.nrows, dim);
            assert_eq!(g.ncols, dim);
        }
        let id = RatMat::identity(dim);
        let mut matrices: Vec<RatMat> = vec![id.clone()];
        let mut index: HashMap<RatMat, u32> = HashMap::new();
        index.insert(id, 0);
        // parent[x] = (earlier element, generator) with x = parent · gen.
        let mut parent: Vec<(u32, u8)> = vec![(0, 0)];
        let mut level: Vec<u32> = vec![0];
        while !level.is_empty() {
            let mut next: Vec<(RatMat, u32, u8)> = Vec::new();
            for &x in &level {
                for (s, gm) in gens.iter().enumerate() {
                    let m = matrices[x as usize].mul(gm);
                    if !index.contains_key(&m) && !next.iter().any(|(n, _, _)| n == &m) {
                        next.push((m, x, s as u8));
                    }
                }
            }
            next.sort_by(|a, b| a.0.cmp(&b.0));
            level = Vec::with_capacity(next.len());
            for (m, px, s) in next {
                let idx = matrices.len() as u32;
                index.insert(m.clone(), idx);
                matrices.push(m);
                parent.push((px, s));
                level.push(idx);
            }
            assert!(matrices.len() <= 5_000_000, "matrix closure runaway");
        }

        let n = matrices.len();
        // Right-multiplication-by-generator maps, then the full table by
        // peeling the last letter of each column's word: a·(p·s) = (a·p)·s.
        let rgen: Vec<Vec<u32>> = gens
            .iter()
            .map(|gm| {
                (0..n)
                    .map(|x| index[&matrices[x].mul(gm)])
                    .collect::<Vec<u32>>()
            })
            .collect();
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            mult[a * n] = a as u32;
            for b in 1..n {
                let (pb, s) = parent[b];
                let ap = mult[a * n + pb as usize];
                mult[a * n + b] = rgen[s as usize][ap as usize];
            }
        }
        let group = FinGroup::from_mult_table(n, mult).expect("matrix closure yields a group");

        let mut words: Vec<Vec<u8>> = vec![Vec::new(); n];
        for x in 1..n {
            let (p, s) = parent[x];
            let mut w = words[p as usize].clone();
            w.push(s);
            words[x] = w;
        }
        MatrixGroup {
            group,
            matrices,
            words,
            parents: parent,
        }
    }

    pub fn index_of(&self, m: &RatMat) -> Option<u32> {
        self.matrices.iter().position(|x| x == m).map(|i| i as u32)
    }
}

/// A class function with exact cyclotomic values, indexed by the conjugacy
/// classes of a fixed group.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    pub values: Vec<CycNum>,
}

impl ClassFunction {
    pub fn new(values: Vec<CycNum>) -> Self {
        ClassFunction { values }
    }

    pub fn trivial(g: &FinGroup) -> Self {
        ClassFunction {
            values: vec![CycNum::one(); g.num_classes()],
        }
    }

    pub fn from_fn(g: &FinGroup, f: impl Fn(u32) -> CycNum) -> Self {
        ClassFunction {
            values: g.classes().iter().map(|c| f(c[0])).collect(),
        }
    }

    pub fn value_on(&self, g: &FinGroup, x: u32) -> &CycNum {
        &self.values[g.class_of(x)]
    }

    /// Value at the identity (the degree, for a character).
    pub fn dim(&self) -> &CycNum {
        &self.values[0]
    }

    /// Hermitian inner product ⟨f₁,f₂⟩ = |G|⁻¹ Σ_g conj(f₁(g)) f₂(g),
    /// conjugate-linear in the first argument.
    pub fn inner(&self, g: &FinGroup, other: &ClassFunction) -> CycNum {
        let mut acc = CycNum::zero();
        for (c, (a, b)) in self.values.iter().zip(other.values.iter()).enumerate() {
            let term = (&a.conj() * b).scale(&rat_int(g.class_size(c) as i64));
            acc = &acc + &term;
        }
        acc.scale(&Rat::new(1.into(), (g.order() as i64).into()))
    }

    pub fn tensor(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().map(|a| a.scale(r)).collect(),
        }
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().map(|a| a.conj()).collect(),
        }
    }

    /// Restriction along an embedding H ↪ G given by `fusion`.
    pub fn restrict_to(&self, parent: &FinGroup, sub: &FinGroup, fusion: &[u32]) -> ClassFunction {
        ClassFunction {
            values: (0..sub.num_classes())
                .map(|c| self.value_on(parent, fusion[sub.class_rep(c) as usize]).clone())
                .collect(),
        }
    }

    /// Induction along an embedding H ↪ G:
    /// (Ind f)(g) = |H|⁻¹ Σ_{x∈G, x⁻¹gx∈H} f(x⁻¹gx).
    pub fn induced_to(&self, parent: &FinGroup, sub: &FinGroup, fusion: &[u32]) -> ClassFunction {
        let mut back = vec![u32::MAX; parent.order()];
        for (i, &g) in fusion.iter().enumerate() {
            back[g as usize] = i as u32;
        }
        let values = (0..parent.num_classes())
            .map(|c| {
                let g = parent.class_rep(c);
                let mut acc = CycNum::zero();
                for x in 0..parent.order() as u32 {
                    let y = parent.conjugate(parent.inv(x), g);
                    let h = back[y as usize];
                    if h != u32::MAX {
                        acc = &acc + self.value_on(sub, h);
                    }
                }
                acc.scale(&Rat::new(1.into(), (sub.order() as i64).into()))
            })
            .collect();
        ClassFunction { values }
    }

    pub fn norm_squared(&self, g: &FinGroup) -> CycNum {
        self.inner(g, self)
    }
}

/// An exact irreducible character table, rows sorted by degree and then by
/// value columns in a fixed common cyclotomic field.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub rows: Vec<ClassFunction>,
    pub degrees: Vec<u64>,
}

impl CharacterTable {
    pub fn num_irreps(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &ClassFunction {
        &self.rows[i]
    }

    pub fn index_of(&self, f: &ClassFunction) -> Option<usize> {
        self.rows.iter().position(|r| r == f)
    }

    /// Multiplicities ⟨χᵢ, f⟩ of each irreducible in a virtual character;
    /// errs if any multiplicity is not a rational integer.
    pub fn decompose(&self, g: &FinGroup, f: &ClassFunction) -> Result<Vec<i64>, GroupError> {
        self.rows
            .iter()
            .map(|chi| {
                let m = chi.inner(g, f);
                m.to_rat()
                    .filter(|r| r.is_integer())
                    .and_then(|r| i64::try_from(r.to_integer()).ok())
                    .ok_or_else(|| GroupError::NotACharacter(format!("multiplicity {}", m)))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::rootsys::{CartanType, RootSystem};

    fn weyl_group(ct: CartanType, n: usize) -> MatrixGroup {
        let rs = RootSystem::build(ct, n).unwrap();
        MatrixGroup::close(&rs.simple_reflection_matrices())
    }

    #[test]
    fn symmetric_group_on_three_letters() {
        let mg = weyl_group(CartanType::A, 2);
        let g = &mg.group;
        assert_eq!(g.order(), 6);
        assert_eq!(g.num_classes(), 3);
        let mut sizes: Vec<usize> = (0..3).map(|c| g.class_size(c)).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(g.exponent(), 6);
        // Identity is alone in class 0.
        assert_eq!(g.classes()[0], vec![0]);
    }

    #[test]
    fn words_reconstruct_the_matrices() {
        let mg = weyl_group(CartanType::B, 2);
        let rs = RootSystem::build(CartanType::B, 2).unwrap();
        let gens = rs.simple_reflection_matrices();
        for (x, w) in mg.words.iter().enumerate() {
            let mut m = RatMat::identity(2);
            for &s in w {
                m = m.mul(&gens[s as usize]);
            }
            assert_eq!(&m, &mg.matrices[x]);
        }
    }

    #[test]
    fn table_is_consistent_with_matrix_products() {
        let mg = weyl_group(CartanType::A, 2);
        let g = &mg.group;
        for a in 0..g.order() as u32 {
            for b in 0..g.order() as u32 {
                let prod = mg.matrices[a as usize].mul(&mg.matrices[b as usize]);
                assert_eq!(mg.index_of(&prod), Some(g.mul(a, b)));
            }
        }
    }

    #[test]
    fn weyl_group_orders_match_the_degree_product() {
        for (ct, n) in [
            (CartanType::A, 3),
            (CartanType::B, 3),
            (CartanType::C, 3),
            (CartanType::D, 4),
            (CartanType::G, 2),
        ] {
            let rs = RootSystem::build(ct, n).unwrap();
            let mg = MatrixGroup::close(&rs.simple_reflection_matrices());
            assert_eq!(mg.group.order(), rs.weyl_order(), "{}{}", ct, n);
        }
    }

    #[test]
    fn f4_weyl_group_has_order_1152_and_25_classes() {
        let mg = weyl_group(CartanType::F, 4);
        assert_eq!(mg.group.order(), 1152);
        assert_eq!(mg.group.num_classes(), 25);
    }

    #[test]
    fn powers_and_inverses() {
        let mg = weyl_group(CartanType::B, 2);
        let g = &mg.group;
        for a in 0..g.order() as u32 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            assert_eq!(g.power(a, -1), g.inv(a));
            assert_eq!(g.power(a, 0), 0);
            let o = g.element_order(a) as i64;
            assert_eq!(g.power(a, o), 0);
        }
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn subgroup_of_rotations_inside_the_triangle_group() {
        let mg = weyl_group(CartanType::A, 2);
        let g = &mg.group;
        // Even elements: determinant +1 matrices.
        let evens: Vec<u32> = (0..g.order() as u32)
            .filter(|&x| mg.matrices[x as usize].det() == rat(1, 1))
            .collect();
        let (h, fusion) = g.subgroup(&evens).unwrap();
        assert_eq!(h.order(), 3);
        assert_eq!(h.num_classes(), 3); // cyclic of order 3
        assert_eq!(fusion[0], 0);
        // Not closed: a reflection alone.
        assert!(g.subgroup(&[0, 1]).is_ok()); // order-2 subgroup is fine
        assert!(g.subgroup(&[0, 1, 3]).is_err());
    }

    #[test]
    fn bad_tables_are_rejected()  {
        // Identity not at 0.
        let t = vec![1u32, 0, 0, 1];
        assert!(matches!(
            FinGroup::from_mult_table(2, t),
            Err(GroupError::BadIdentity)
        ));
        // Not a Latin square.
        let t = vec![0u32, 1, 1, 1];
        assert!(FinGroup::from_mult_table(2, t).is_err());
    }

    #[test]
    fn class_function_algebra_on_the_triangle_group() {
        let mg = weyl_group(CartanType::A, 2);
        let g = &mg.group;
        let sgn = ClassFunction::from_fn(g, |x| {
            CycNum::from_rat(mg.matrices[x as usize].det())
        });
        let triv = ClassFunction::trivial(g);
        assert_eq!(sgn.tensor(&sgn), triv);
        assert_eq!(sgn.norm_squared(g), CycNum::one());
        assert_eq!(triv.inner(g, &sgn), CycNum::zero());

        // Frobenius reciprocity against the order-2 subgroup ⟨s₁⟩.
        let (h, fusion) = g.subgroup(&[0, 1]).unwrap();
        let triv_h = ClassFunction::trivial(&h);
        let ind = triv_h.induced_to(g, &h, &fusion);
        assert_eq!(ind.dim(), &CycNum::from_rat(rat(3, 1)));
        let res_sgn = sgn.restrict_to(g, &h, &fusion);
        assert_eq!(ind.inner(g, &sgn), triv_h.inner(&h, &res_sgn));
    }
}
