//! Exact irreducible character tables.
//!
//! The class sums span the center of the group algebra; their structure
//! constants give commuting integer matrices whose joint eigenlines over a
//! well-chosen finite field GF(p) are the central characters.  Splitting the
//! full space into those lines, reading degrees off the orthogonality
//! relation, and Fourier-inverting eigenvalue multiplicities turns each line
//! back into exact cyclotomic character values.  The prime is the smallest
//! p ≡ 1 (mod exponent) exceeding both 2√|G| and the class count, so all
//! needed roots of unity live in GF(p)* and eigenvalue scans stay valid.
//!
//! Every step is deterministic: smallest splitting prime, smallest primitive
//! root, eigenvalues scanned in ascending residue order, rows sorted by
//! degree then by value columns in the common cyclotomic field.

use super::{CharacterTable, ClassFunction, FinGroup, GroupError};
use crate::exactnum::{rat_int, CycNum};
use rayon::prelude::*;

// --- arithmetic in GF(p), p < 2³¹ ---

#[inline]
fn addm(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

#[inline]
fn subm(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    acc
}

fn invm(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powm(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut fs = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            fs.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        fs.push(n);
    }
    fs
}

/// Smallest prime p ≡ 1 (mod m) with p > lower.
fn splitting_prime(m: u64, lower: u64) -> Result<u64, GroupError> {
    let mut p = m + 1;
    while p < 100_000_000 {
        if p > lower && is_prime(p) {
            return Ok(p);
        }
        p += m;
    }
    Err(GroupError::NoSplittingPrime(m, lower))
}

/// Smallest primitive root modulo p.
fn primitive_root(p: u64) -> u64 {
    let qs = prime_factors(p - 1);
    (2..p)
        .find(|&w| qs.iter().all(|&q| powm(w, (p - 1) / q, p) != 1))
        .expect("GF(p)* is cyclic")
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

// --- dense row-major linear algebra over GF(p) ---

/// Reduced row echelon form; returns the pivot column of each surviving row.
fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(row, pr);
        let inv = invm(rows[row][col], p);
        for x in rows[row].iter_mut() {
            *x = mulm(*x, inv, p);
        }
        for r in 0..rows.len() {
            if r != row && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..ncols {
                    let t = mulm(f, rows[row][c], p);
                    rows[r][c] = subm(rows[r][c], t, p);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    rows.truncate(row);
    pivots
}

/// Basis of the kernel of a square matrix, via RREF; deterministic order
/// (ascending free column).
fn nullspace(mat: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let d = mat.len();
    let mut rows: Vec<Vec<u64>> = mat.to_vec();
    let pivots = rref(&mut rows, p);
    let mut is_pivot = vec![false; d];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for f in 0..d {
        if is_pivot[f] {
            continue;
        }
        let mut v = vec![0u64; d];
        v[f] = 1;
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = subm(0, rows[r][f], p);
        }
        basis.push(v);
    }
    basis
}

/// Characteristic polynomial coefficients (ascending powers) of a square
/// matrix over GF(p), via Newton's identities on power-sum traces; valid
/// because p exceeds the matrix dimension.
fn charpoly_gfp(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let d = a.len();
    assert!((d as u64) < p);
    let mut traces = vec![0u64; d + 1];
    let mut pw: Vec<Vec<u64>> = (0..d)
        .map(|i| (0..d).map(|j| u64::from(i == j)).collect())
        .collect();
    for k in 1..=d {
        // pw ← pw · a
        let mut next = vec![vec![0u64; d]; d];
        for i in 0..d {
            for l in 0..d {
                let x = pw[i][l];
                if x == 0 {
                    continue;
                }
                for j in 0..d {
                    next[i][j] = addm(next[i][j], mulm(x, a[l][j], p), p);
                }
            }
        }
        pw = next;
        traces[k] = (0..d).fold(0, |acc, i| addm(acc, pw[i][i], p));
    }
    // e_k = k⁻¹ Σ_{i=1..k} (−1)^{i−1} e_{k−i} s_i
    let mut e = vec![0u64; d + 1];
    e[0] = 1;
    for k in 1..=d {
        let mut acc = 0u64;
        for i in 1..=k {
            let term = mulm(e[k - i], traces[i], p);
            if i % 2 == 1 {
                acc = addm(acc, term, p);
            } else {
                acc = subm(acc, term, p);
            }
        }
        e[k] = mulm(acc, invm(k as u64, p), p);
    }
    // char(λ) = Σ_k (−1)^k e_k λ^{d−k}
    let mut coeffs = vec![0u64; d + 1];
    for k in 0..=d {
        let c = if k % 2 == 0 { e[k] } else { subm(0, e[k], p) };
        coeffs[d - k] = c;
    }
    coeffs
}

fn poly_eval(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0u64, |acc, &c| addm(mulm(acc, x, p), c, p))
}

/// The exact irreducible character table of a finite group.
pub fn character_table(g: &FinGroup) -> Result<CharacterTable, GroupError> {
    let n = g.order() as u64;
    let r = g.num_classes();
    let m = g.exponent();
    let p = splitting_prime(m, std::cmp::max(2 * isqrt(n) + 1, r as u64))?;

    // Class-sum structure matrices M_i[l][j] = #{x ∈ C_i : x⁻¹ z_j ∈ C_l},
    // acting on central characters with eigenvalue ω_i.
    let reps: Vec<u32> = (0..r).map(|c| g.class_rep(c)).collect();
    let class_matrix = |i: usize| -> Vec<Vec<u64>> {
        let mut mat = vec![vec![0u64; r]; r];
        for &x in &g.classes()[i] {
            let xi = g.inv(x);
            for (j, &zj) in reps.iter().enumerate() {
                let l = g.class_of(g.mul(xi, zj));
                mat[l][j] = addm(mat[l][j], 1, p);
            }
        }
        mat
    };

    // Joint eigenline splitting.  Subspaces are RREF row bases of GF(p)^r.
    let mut spaces: Vec<(Vec<Vec<u64>>, Vec<usize>)> = {
        let mut full: Vec<Vec<u64>> = (0..r)
            .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
            .collect();
        let piv = rref(&mut full, p);
        vec![(full, piv)]
    };
    for i in 1..r {
        if spaces.iter().all(|(b, _)| b.len() == 1) {
            break;
        }
        let mi = class_matrix(i);
        let apply = |v: &[u64]| -> Vec<u64> {
            (0..r)
                .map(|l| {
                    (0..r).fold(0u64, |acc, j| addm(acc, mulm(mi[l][j], v[j], p), p))
                })
                .collect()
        };
        let mut next_spaces = Vec::with_capacity(spaces.len());
        for (basis, pivots) in spaces {
            let d = basis.len();
            if d == 1 {
                next_spaces.push((basis, pivots));
                continue;
            }
            // Restriction of M_i to the subspace, in basis coordinates.
            let mut a = vec![vec![0u64; d]; d];
            for (k, b) in basis.iter().enumerate() {
                let w = apply(b);
                // Coordinates read off the pivot columns of the RREF basis.
                let coords: Vec<u64> = pivots.iter().map(|&c| w[c]).collect();
                // Invariance check: w must reconstruct exactly.
                for c in 0..r {
                    let recon = (0..d).fold(0u64, |acc, t| {
                        addm(acc, mulm(coords[t], basis[t][c], p), p)
                    });
                    if recon != w[c] % p {
                        return Err(GroupError::TableCheck(
                            "class matrix does not preserve a split subspace".into(),
                        ));
                    }
                }
                for t in 0..d {
                    a[t][k] = coords[t];
                }
            }
            let chi = charpoly_gfp(&a, p);
            let mut split_dim = 0usize;
            let mut pieces = Vec::new();
            for lam in 0..p {
                if poly_eval(&chi, lam, p) != 0 {
                    continue;
                }
                let mut shifted = a.clone();
                for t in 0..d {
                    shifted[t][t] = subm(shifted[t][t], lam, p);
                }
                let kernel = nullspace(&shifted, p);
                if kernel.is_empty() {
                    continue;
                }
                let mut amb: Vec<Vec<u64>> = kernel
                    .iter()
                    .map(|cv| {
                        (0..r)
                            .map(|c| {
                                (0..d).fold(0u64, |acc, t| {
                                    addm(acc, mulm(cv[t], basis[t][c], p), p)
                                })
                            })
                            .collect()
                    })
                    .collect();
                let piv = rref(&mut amb, p);
                split_dim += amb.len();
                pieces.push((amb, piv));
            }
            if split_dim != d {
                return Err(GroupError::SplitStalled(d));
            }
            next_spaces.extend(pieces);
        }
        spaces = next_spaces;
    }
    if let Some((b, _)) = spaces.iter().find(|(b, _)| b.len() != 1) {
        return Err(GroupError::SplitStalled(b.len()));
    }
    if spaces.len() != r {
        return Err(GroupError::SplitStalled(spaces.len()));
    }

    // Normalize each line to ω with ω(identity class) = 1; recover degrees
    // from Σ_l ω_l ω_{l*} / |C_l| = |G| / d².
    let class_sizes: Vec<u64> = (0..r).map(|c| g.class_size(c) as u64).collect();
    let inv_class: Vec<usize> = (0..r).map(|c| g.inverse_class(c)).collect();
    let mut raw: Vec<(u64, Vec<u64>)> = Vec::with_capacity(r);
    for (basis, _) in &spaces {
        let v = &basis[0];
        if v[0] == 0 {
            return Err(GroupError::TableCheck(
                "central character vanishes on the identity class".into(),
            ));
        }
        let s = invm(v[0], p);
        let omega: Vec<u64> = v.iter().map(|&x| mulm(x, s, p)).collect();
        let denom = (0..r).fold(0u64, |acc, l| {
            let t = mulm(omega[l], omega[inv_class[l]], p);
            addm(acc, mulm(t, invm(class_sizes[l], p), p), p)
        });
        if denom == 0 {
            return Err(GroupError::TableCheck("degenerate degree relation".into()));
        }
        let dsq = mulm(n % p, invm(denom, p), p);
        let deg = (1..=isqrt(n))
            .find(|&t| mulm(t % p, t % p, p) == dsq)
            .ok_or_else(|| GroupError::TableCheck("no integer degree matches".into()))?;
        raw.push((deg, omega));
    }

    // Fourier-invert eigenvalue multiplicities to exact cyclotomic values.
    let z = powm(primitive_root(p), (p - 1) / m, p);
    let zinv = invm(z, p);
    let orders: Vec<u64> = reps.iter().map(|&x| g.element_order(x)).collect();
    let power_class: Vec<Vec<usize>> = (0..r)
        .map(|l| {
            let o = orders[l];
            let mut cls = Vec::with_capacity(o as usize);
            let mut x = 0u32;
            for _ in 0..o {
                cls.push(g.class_of(x));
                x = g.mul(x, reps[l]);
            }
            cls
        })
        .collect();

    let mut rows: Vec<(u64, ClassFunction)> = raw
        .into_par_iter()
        .map(|(deg, omega)| {
            // χ(z_l) ≡ d·ω_l / |C_l| (mod p)
            let cvals: Vec<u64> = (0..r)
                .map(|l| mulm(mulm(deg % p, omega[l], p), invm(class_sizes[l], p), p))
                .collect();
            let mut values = Vec::with_capacity(r);
            for l in 0..r {
                let o = orders[l];
                let step = m / o;
                let oinv = invm(o, p);
                let mut chi = CycNum::zero();
                let mut musum = 0u64;
                for s in 0..o {
                    let mut acc = 0u64;
                    for (j, &cl) in power_class[l].iter().enumerate() {
                        let w = powm(zinv, step * s * j as u64, p);
                        acc = addm(acc, mulm(cvals[cl], w, p), p);
                    }
                    let mu = mulm(acc, oinv, p);
                    if mu > n {
                        return Err(GroupError::TableCheck(format!(
                            "eigenvalue multiplicity {} out of range",
                            mu
                        )));
                    }
                    musum += mu;
                    if mu != 0 {
                        chi = &chi
                            + &CycNum::root_of_unity(o as u32, s as i64)
                                .scale(&rat_int(mu as i64));
                    }
                }
                if musum != deg {
                    return Err(GroupError::TableCheck(
                        "eigenvalue multiplicities do not sum to the degree".into(),
                    ));
                }
                values.push(chi);
            }
            Ok((deg, ClassFunction::new(values)))
        })
        .collect::<Result<_, _>>()?;

    // Deterministic row order: degree, then value columns compared in the
    // common cyclotomic field of conductor m (canonicalized).
    let mc: u32 = if m % 4 == 2 { (m / 2) as u32 } else { m as u32 };
    rows.sort_by(|a, b| {
        a.0.cmp(&b.0).then_with(|| {
            for (x, y) in a.1.values.iter().zip(b.1.values.iter()) {
                let o = x.cmp_in(y, mc);
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
    });

    let degrees: Vec<u64> = rows.iter().map(|(d, _)| *d).collect();
    let table = CharacterTable {
        rows: rows.into_iter().map(|(_, f)| f).collect(),
        degrees,
    };
    verify_table(g, &table)?;
    Ok(table)
}

/// Exact self-checks: degrees in the first column, Σd² = |G|, d | |G|,
/// orthonormal rows, and closure under complex conjugation.
fn verify_table(g: &FinGroup, t: &CharacterTable) -> Result<(), GroupError> {
    let n = g.order() as u64;
    if t.rows.len() != g.num_classes() {
        return Err(GroupError::TableCheck("row count ≠ class count".into()));
    }
    let mut sumsq = 0u64;
    for (i, row) in t.rows.iter().enumerate() {
        let d = t.degrees[i];
        if row.dim() != &CycNum::from_rat(rat_int(d as i64)) {
            return Err(GroupError::TableCheck("first column ≠ degree".into()));
        }
        if n % d != 0 {
            return Err(GroupError::TableCheck(format!(
                "degree {} does not divide |G| = {}",
                d, n
            )));
        }
        sumsq += d * d;
    }
    if sumsq != n {
        return Err(GroupError::TableCheck(format!(
            "Σ d² = {} but |G| = {}",
            sumsq, n
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..t.rows.len())
        .flat_map(|i| (i..t.rows.len()).map(move |j| (i, j)))
        .collect();
    if let Some(err) = pairs
        .par_iter()
        .find_map_first(|&(i, j)| {
            let ip = t.rows[i].inner(g, &t.rows[j]);
            let expect = if i == j { CycNum::one() } else { CycNum::zero() };
            (ip != expect).then(|| {
                GroupError::TableCheck(format!("⟨χ_{}, χ_{}⟩ = {}", i, j, ip))
            })
        })
    {
        return Err(err);
    }
    for row in &t.rows {
        let c = row.conj();
        if t.index_of(&c).is_none() {
            return Err(GroupError::TableCheck(
                "table not closed under conjugation".into(),
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::fingroup::MatrixGroup;
    use crate::rootsys::{CartanType, RootSystem};

    fn weyl_table(ct: CartanType, n: usize) -> (FinGroup, CharacterTable) {
        let rs = RootSystem::build(ct, n).unwrap();
        let mg = MatrixGroup::close(&rs.simple_reflection_matrices());
        let t = character_table(&mg.group).unwrap();
        (mg.group, t)
    }

    #[test]
    fn gf_helpers() {
        assert_eq!(splitting_prime(6, 5).unwrap(), 7);
        assert_eq!(splitting_prime(48, 96).unwrap(), 97);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(invm(3, 7), 5);
        assert_eq!(isqrt(35), 5);
        assert_eq!(isqrt(36), 6);
        let a = vec![vec![2u64, 0], vec![0u64, 3]];
        // (λ−2)(λ−3) = λ² − 5λ + 6 over GF(7)
        assert_eq!(charpoly_gfp(&a, 7), vec![6, 2, 1]);
    }

    #[test]
    fn triangle_symmetry_group_table() {
        let (g, t) = weyl_table(CartanType::A, 2);
        assert_eq!(t.degrees, vec![1, 1, 2]);
        // The degree-2 row is the reflection character (2, 0, −1) with the
        // transposition class second (it contains element 1) and the
        // rotation class third.
        let refl = &t.rows[2];
        assert_eq!(refl.values[0], CycNum::from_rat(rat(2, 1)));
        assert_eq!(refl.values[1], CycNum::zero());
        assert_eq!(refl.values[2], CycNum::from_rat(rat(-1, 1)));
        // Decomposition of the regular character: every irreducible with
        // multiplicity equal to its degree.
        let mut reg = vec![CycNum::zero(); g.num_classes()];
        reg[0] = CycNum::from_rat(rat(6, 1));
        let reg = ClassFunction::new(reg);
        assert_eq!(t.decompose(&g, &reg).unwrap(), vec![1, 1, 2]);
    }

    #[test]
    fn cyclic_group_of_order_four() {
        // Multiplication table of ℤ/4.
        let mut mult = vec![0u32; 16];
        for a in 0..4u32 {
            for b in 0..4u32 {
                mult[(a * 4 + b) as usize] = (a + b) % 4;
            }
        }
        let g = FinGroup::from_mult_table(4, mult).unwrap();
        assert_eq!(g.exponent(), 4);
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1, 1]);
        // Some row takes the value i on the generator's class, and its
        // conjugate row is also present.
        let i_val = CycNum::root_of_unity(4, 1);
        let has_i = t.rows.iter().any(|row| row.values[1] == i_val);
        assert!(has_i);
        for row in &t.rows {
            assert!(t.index_of(&row.conj()).is_some());
        }
    }

    #[test]
    fn hyperoctahedral_rank_two_table() {
        let (_, t) = weyl_table(CartanType::B, 2);
        assert_eq!(t.degrees, vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn g2_weyl_table() {
        let (_, t) = weyl_table(CartanType::G, 2);
        assert_eq!(t.degrees, vec![1, 1, 1, 1, 2, 2]);
    }

    #[test]
    fn f4_weyl_table_has_25_rows() {
        let (g, t) = weyl_table(CartanType::F, 4);
        assert_eq!(g.order(), 1152);
        assert_eq!(t.num_irreps(), 25);
        assert_eq!(t.degrees.iter().map(|d| d * d).sum::<u64>(), 1152);
        assert_eq!(*t.degrees.iter().max().unwrap(), 16);
    }

    #[test]
    fn tables_are_deterministic() {
        let (_, t1) = weyl_table(CartanType::B, 3);
        let (_, t2) = weyl_table(CartanType::B, 3);
        assert_eq!(t1.degrees, t2.degrees);
        for (a, b) in t1.rows.iter().zip(t2.rows.iter()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn frobenius_reciprocity_through_the_table() {
        // Induce the sign of the parabolic ⟨s₁⟩ ≅ S₂ up to S₃ and decompose.
        let rs = RootSystem::build(CartanType::A, 2).unwrap();
        let mg = MatrixGroup::close(&rs.simple_reflection_matrices());
        let g = &mg.group;
        let (h, fusion) = g.subgroup(&[0, 1]).unwrap();
        let sgn_h = ClassFunction::new(vec![CycNum::one(), CycNum::from_rat(rat(-1, 1))]);
        let ind = sgn_h.induced_to(g, &h, &fusion);
        let t = character_table(g).unwrap();
        let mults = t.decompose(g, &ind).unwrap();
        assert_eq!(mults.iter().sum::<i64>(), 2);
        assert_eq!(mults.iter().zip(t.degrees.iter()).map(|(m, d)| *m as u64 * d).sum::<u64>(), 3);
    }
}
