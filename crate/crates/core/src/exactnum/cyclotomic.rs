//! Cyclotomic numbers as residues modulo the N-th cyclotomic polynomial.
//!
//! A [`CycNum`] is a vector of big-rational coefficients of length φ(N)
//! representing a polynomial in ζ_N of degree < φ(N), i.e. an element of
//! ℚ[x]/(Φ_N).  Arithmetic between values of different conductors lifts both
//! operands into ℚ(ζ_lcm).  Conductors are kept in the canonical form
//! N ≢ 2 (mod 4), and values that collapse to ℚ are detected and stored with
//! conductor 1, so rationality testing is a constant-time check.
//!
//! Square roots of squarefree integers are materialized through quadratic
//! Gauss sums: √p ∈ ℚ(ζ_p) for p ≡ 1 (mod 4), √p ∈ ℚ(ζ_{4p}) for
//! p ≡ 3 (mod 4), √2 = ζ₈ − ζ₈³, and multiplicative assembly for composite
//! radicands.  The branch is deterministic: every `sqrt_int(d)` with d > 0 is
//! real and positive under the embedding ζ_N ↦ exp(2πi/N), and
//! `sqrt_int(-d) = ζ₄ · sqrt_int(d)`.

use super::{
    euler_phi, factor_u64, lcm_u64, rat_display, squarefree_decompose_rat, Int, NumError, Rat,
};
use num::{One, Zero};
use serde::de::Error as DeError;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

fn cyclo_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<Int>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Int>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Exact long division of integer polynomials; panics unless the division is
/// exact and the divisor is monic.  Coefficients are ascending.
fn poly_div_exact_int(num: &[Int], den: &[Int]) -> Vec<Int> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false), "divisor must be monic");
    let mut rem: Vec<Int> = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![Int::zero(); nd - dd + 1];
    for i in (dd..=nd).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            let idx = i - dd + j;
            rem[idx] = &rem[idx] - &c * dc;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

/// The N-th cyclotomic polynomial Φ_N, ascending integer coefficients,
/// monic of degree φ(N).  Computed as (x^N − 1) / ∏_{d|N, d<N} Φ_d and
/// memoized process-wide.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<Int>> {
    assert!(n >= 1);
    if let Some(hit) = cyclo_cache().lock().unwrap().get(&n) {
        return hit.clone();
    }
    let result = if n == 1 {
        // x - 1
        Arc::new(vec![-Int::one(), Int::one()])
    } else {
        let mut num = vec![Int::zero(); n as usize + 1];
        num[0] = -Int::one();
        num[n as usize] = Int::one();
        let mut quot = num;
        for d in 1..n {
            if n % d == 0 {
                let phi_d = cyclotomic_poly(d);
                quot = poly_div_exact_int(&quot, &phi_d);
            }
        }
        Arc::new(quot)
    };
    cyclo_cache()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert(result)
        .clone()
}

/// An exact element of a cyclotomic field ℚ(ζ_N).
#[derive(Clone)]
pub struct CycNum {
    /// Conductor label of the ambient field; canonical form N ≢ 2 (mod 4),
    /// and N = 1 exactly when the value is rational.
    n: u32,
    /// Coefficients of 1, ζ_N, …, ζ_N^{φ(N)−1}; length φ(N).
    c: Vec<Rat>,
}

impl CycNum {
    /// Conductor of the field this value is currently expressed in.
    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Coefficient vector in the power basis of ζ_N.
    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn zero() -> Self {
        CycNum { n: 1, c: vec![Rat::zero()] }
    }

    pub fn one() -> Self {
        CycNum { n: 1, c: vec![Rat::one()] }
    }

    pub fn from_rat(r: Rat) -> Self {
        CycNum { n: 1, c: vec![r] }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rat(Rat::from_integer(Int::from(k)))
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.c[0].is_one()
    }

    /// The rational value when this number lies in ℚ.
    pub fn to_rat(&self) -> Option<Rat> {
        if self.n == 1 {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1
    }

    /// The primitive root of unity ζ_n^k, stored at its minimal conductor.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let k = k.rem_euclid(n as i64) as u32;
        if k == 0 {
            return Self::one();
        }
        let g = super::gcd_u64(n as u64, k as u64) as u32;
        let (mut n, mut k) = (n / g, k / g);
        let mut sign = false;
        if n % 2 == 0 && (n / 2) % 2 == 1 {
            // ζ_{2m} = −ζ_m^{(m+1)/2} for odd m; k is odd here since gcd(k, 2m) = 1.
            let m = n / 2;
            debug_assert!(k % 2 == 1);
            k = (k as u64 % m as u64 * ((m as u64 + 1) / 2) % m as u64) as u32;
            n = m;
            sign = true;
        }
        if n == 1 {
            return if sign { -Self::one() } else { Self::one() };
        }
        let mut dense = vec![Rat::zero(); k as usize + 1];
        dense[k as usize] = if sign { -Rat::one() } else { Rat::one() };
        Self::reduce(n, dense)
    }

    /// Reduce an arbitrary-degree dense polynomial in ζ_n modulo Φ_n and
    /// normalize the result.  `n` must already be canonical (≢ 2 mod 4).
    fn reduce(n: u32, mut dense: Vec<Rat>) -> Self {
        debug_assert!(n == 1 || n % 4 != 2);
        let deg = euler_phi(n as u64) as usize;
        let phi = cyclotomic_poly(n);
        // Long division by the monic Φ_n.
        let mut i = dense.len();
        while i > deg {
            i -= 1;
            let c = std::mem::replace(&mut dense[i], Rat::zero());
            if c.is_zero() {
                continue;
            }
            for (j, pc) in phi.iter().take(deg).enumerate() {
                if !pc.is_zero() {
                    let delta = &c * pc;
                    dense[i - deg + j] -= delta;
                }
            }
        }
        dense.resize(deg, Rat::zero());
        let mut out = CycNum { n, c: dense };
        out.detect_rational();
        out
    }

    /// Collapse to conductor 1 whenever every non-constant coefficient
    /// vanishes.
    fn detect_rational(&mut self) {
        if self.n != 1 && self.c[1..].iter().all(|x| x.is_zero()) {
            self.n = 1;
            self.c.truncate(1);
        }
    }

    /// Coefficient vector of this value inside ℚ(ζ_m); requires n | m.
    pub fn lift_coeffs(&self, m: u32) -> Vec<Rat> {
        assert!(m % self.n == 0, "lift target {} not a multiple of {}", m, self.n);
        if m == self.n {
            return self.c.clone();
        }
        let step = (m / self.n) as usize;
        let mut dense = vec![Rat::zero(); (self.c.len() - 1) * step + 1];
        for (k, coeff) in self.c.iter().enumerate() {
            if !coeff.is_zero() {
                dense[k * step] = coeff.clone();
            }
        }
        let lifted = Self::reduce(m, dense);
        let deg = euler_phi(m as u64) as usize;
        let mut c = lifted.c;
        c.resize(deg, Rat::zero());
        c
    }

    fn joint(a: &CycNum, b: &CycNum) -> (u32, Vec<Rat>, Vec<Rat>) {
        let m = lcm_u64(a.n as u64, b.n as u64) as u32;
        (m, a.lift_coeffs(m), b.lift_coeffs(m))
    }

    /// Galois twist ζ_n ↦ ζ_n^j for j coprime to n.
    pub fn galois(&self, j: u32) -> Self {
        if self.n == 1 {
            return self.clone();
        }
        assert_eq!(super::gcd_u64(self.n as u64, j as u64), 1);
        let mut dense = vec![Rat::zero(); (self.c.len() - 1) * j as usize + 1];
        for (k, coeff) in self.c.iter().enumerate() {
            if !coeff.is_zero() {
                let idx = (k as u64 * j as u64 % self.n as u64) as usize;
                if idx >= dense.len() {
                    dense.resize(idx + 1, Rat::zero());
                }
                dense[idx] += coeff;
            }
        }
        Self::reduce(self.n, dense)
    }

    /// Complex conjugation, ζ_N ↦ ζ_N^{N−1}.
    pub fn conj(&self) -> Self {
        if self.n == 1 {
            self.clone()
        } else {
            self.galois(self.n - 1)
        }
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// `self · conj(self)`; real and nonnegative under every embedding.
    pub fn norm_squared(&self) -> Self {
        self * &self.conj()
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Φ_N in ℚ[x].
    pub fn inv(&self) -> Result<Self, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        if self.n == 1 {
            return Ok(Self::from_rat(self.c[0].recip()));
        }
        let phi: Vec<Rat> = cyclotomic_poly(self.n)
            .iter()
            .map(|x| Rat::from_integer(x.clone()))
            .collect();
        // Extended Euclid: maintain r0, r1 and Bézout coefficients against self.
        let mut r0 = phi;
        let mut r1 = self.c.clone();
        trim(&mut r0);
        trim(&mut r1);
        let mut s0 = vec![Rat::zero()];
        let mut s1 = vec![Rat::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 = gcd (a nonzero constant since Φ_N is irreducible over ℚ).
        assert_eq!(r0.len(), 1, "cyclotomic polynomial must be coprime to nonzero residue");
        let inv_c = r0[0].recip();
        let coeffs: Vec<Rat> = s0.iter().map(|x| x * &inv_c).collect();
        Ok(Self::reduce(self.n, coeffs))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, NumError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Cheap scalar multiple by a rational.
    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        for c in &mut out.c {
            *c *= r;
        }
        out
    }

    /// √d for a squarefree integer d ≠ 0, assembled from quadratic Gauss
    /// sums.  Positive real for d > 0 under ζ_N ↦ exp(2πi/N); for d < 0 the
    /// value is ζ₄·√|d| (positive imaginary part).
    pub fn sqrt_int(d: i64) -> Result<Self, NumError> {
        if d == 0 {
            return Err(NumError::ZeroRadicand);
        }
        let mag = d.unsigned_abs();
        let fac = factor_u64(mag);
        if fac.iter().any(|&(_, e)| e > 1) {
            return Err(NumError::NotSquarefree(d));
        }
        let mut out = Self::one();
        for (p, _) in fac {
            out = &out * &Self::sqrt_prime(p as u32);
        }
        if d < 0 {
            out = &out * &Self::root_of_unity(4, 1);
        }
        Ok(out)
    }

    /// √p for a single prime, on the positive real branch.
    fn sqrt_prime(p: u32) -> Self {
        if p == 2 {
            // √2 = ζ₈ − ζ₈³.
            return &Self::root_of_unity(8, 1) - &Self::root_of_unity(8, 3);
        }
        // Quadratic Gauss sum g = Σ_a (a|p) ζ_p^a; g² = (−1)^((p−1)/2) p and
        // g = √p (p ≡ 1 mod 4) or g = i√p (p ≡ 3 mod 4) on the standard
        // embedding.
        let mut dense = vec![Rat::zero(); p as usize];
        for a in 1..p {
            let chi = legendre(a as u64, p as u64);
            dense[a as usize] = Rat::from_integer(Int::from(chi));
        }
        let g = Self::reduce(p, dense);
        if p % 4 == 1 {
            g
        } else {
            // √p = −ζ₄ · g.
            -&(&Self::root_of_unity(4, 1) * &g)
        }
    }

    /// √r for a rational r (0 allowed), via the squarefree decomposition
    /// r = s²·d.  Branch conventions follow [`CycNum::sqrt_int`].
    pub fn sqrt_rat(r: &Rat) -> Result<Self, NumError> {
        if r.is_zero() {
            return Ok(Self::zero());
        }
        let (s, d) = squarefree_decompose_rat(r)?;
        Ok(Self::sqrt_int(d)?.scale(&s))
    }

    /// Float shadow (re, im) under ζ_N ↦ exp(2πi/N).  Display/ordering aid
    /// only; never feeds back into exact arithmetic.
    pub fn float_shadow(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, coeff) in self.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let x = rat_to_f64(coeff);
            let theta = 2.0 * std::f64::consts::PI * k as f64 / self.n as f64;
            re += x * theta.cos();
            im += x * theta.sin();
        }
        (re, im)
    }

    /// Algebraic pretty form: rationals as `p/q`, pure quadratic values as
    /// `r√d` / `r·i√d`, anything else as a polynomial in ζ_N.
    pub fn pretty(&self) -> String {
        if let Some(r) = self.to_rat() {
            return rat_display(&r);
        }
        let sq = self * self;
        if let Some(q) = sq.to_rat() {
            if let Ok((s, d)) = squarefree_decompose_rat(&q) {
                // self = ± s·√d; fix the sign from the float shadow.
                let (re, im) = self.float_shadow();
                let positive = if d > 0 { re > 0.0 } else { im > 0.0 };
                let sign = if positive { "" } else { "-" };
                let mag = if s.is_one() { String::new() } else { format!("({})", rat_display(&s)) };
                let rad = if d > 0 {
                    format!("√{}", d)
                } else if d == -1 {
                    "i".to_string()
                } else {
                    format!("i√{}", -d)
                };
                return format!("{}{}{}", sign, mag, rad);
            }
        }
        let mut terms = Vec::new();
        for (k, coeff) in self.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let base = if k == 0 {
                rat_display(coeff)
            } else {
                let var = if k == 1 {
                    format!("ζ{}", self.n)
                } else {
                    format!("ζ{}^{}", self.n, k)
                };
                if coeff.is_one() {
                    var
                } else if (-coeff).is_one() {
                    format!("-{}", var)
                } else {
                    format!("{}·{}", rat_display(coeff), var)
                }
            };
            terms.push(base);
        }
        let mut out = String::new();
        for (i, t) in terms.iter().enumerate() {
            if i == 0 {
                out.push_str(t);
            } else if let Some(stripped) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        out
    }

    /// Deterministic comparison of two values expressed in a common field of
    /// conductor `m` (lexicographic on lifted coefficient vectors).  Callers
    /// sorting a collection must fix one `m` for the whole collection.
    pub fn cmp_in(&self, other: &Self, m: u32) -> Ordering {
        let a = self.lift_coeffs(m);
        let b = other.lift_coeffs(m);
        for (x, y) in a.iter().zip(b.iter()) {
            match x.cmp(y) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

fn rat_to_f64(r: &Rat) -> f64 {
    // Good enough for shadow purposes: convert through i128 when possible,
    // otherwise through string parsing.
    let num = r.numer();
    let den = r.denom();
    match (i128::try_from(num.clone()).ok(), i128::try_from(den.clone()).ok()) {
        (Some(n), Some(d)) => n as f64 / d as f64,
        _ => r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN)
            / r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN),
    }
}

fn legendre(a: u64, p: u64) -> i64 {
    // a^((p-1)/2) mod p via binary exponentiation.
    let mut base = a % p;
    let mut e = (p - 1) / 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else if acc == p - 1 {
        -1
    } else {
        0
    }
}

// --- dense ℚ[x] helpers for the extended Euclidean algorithm ---

fn trim(p: &mut Vec<Rat>) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = a.to_vec();
    out.resize(out.len().max(b.len()), Rat::zero());
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn poly_divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    assert!(!den.is_empty());
    let mut rem = num.to_vec();
    trim(&mut rem);
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - den.len() + 1];
    let lead = den.last().unwrap().recip();
    for i in (den.len() - 1..rem.len()).rev() {
        let c = &rem[i] * &lead;
        if c.is_zero() {
            continue;
        }
        quot[i - (den.len() - 1)] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            let idx = i - (den.len() - 1) + j;
            let delta = &c * dc;
            rem[idx] -= delta;
        }
    }
    trim(&mut rem);
    (quot, rem)
}

// --- operator impls ---

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.c == other.c;
        }
        let (_, a, b) = Self::joint(self, other);
        a == b
    }
}

impl Eq for CycNum {}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        let (m, mut a, b) = CycNum::joint(self, rhs);
        for (x, y) in a.iter_mut().zip(b.into_iter()) {
            *x += y;
        }
        let mut out = CycNum { n: m, c: a };
        out.detect_rational();
        out
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        let (m, mut a, b) = CycNum::joint(self, rhs);
        for (x, y) in a.iter_mut().zip(b.into_iter()) {
            *x -= y;
        }
        let mut out = CycNum { n: m, c: a };
        out.detect_rational();
        out
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.is_zero() || rhs.is_zero() {
            return CycNum::zero();
        }
        if self.n == 1 {
            return rhs.scale(&self.c[0]);
        }
        if rhs.n == 1 {
            return self.scale(&rhs.c[0]);
        }
        let (m, a, b) = CycNum::joint(self, rhs);
        CycNum::reduce(m, poly_mul(&a, &b))
    }
}

impl Div for &CycNum {
    type Output = CycNum;
    fn div(self, rhs: &CycNum) -> CycNum {
        self.checked_div(rhs)
            .expect("division by zero cyclotomic number")
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            n: self.n,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                $trait::$method(&self, &rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum(N={}, {})", self.n, self.pretty())
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::Error as SerError;
        let mut st = ser.serialize_struct("CycNum", 2)?;
        st.serialize_field("N", &self.n)?;
        let coeffs: Result<Vec<(serde_json::Number, serde_json::Number)>, String> = self
            .c
            .iter()
            .map(|r| {
                Ok((
                    super::rat_pair::number_from_int(r.numer())?,
                    super::rat_pair::number_from_int(r.denom())?,
                ))
            })
            .collect();
        st.serialize_field("coeffs", &coeffs.map_err(S::Error::custom)?)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(rename = "N")]
            n: u32,
            coeffs: Vec<(serde_json::Number, serde_json::Number)>,
        }
        let raw = Raw::deserialize(de)?;
        if raw.n == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        if raw.n != 1 && raw.n % 4 == 2 {
            return Err(D::Error::custom("conductor must satisfy N ≢ 2 (mod 4)"));
        }
        let deg = euler_phi(raw.n as u64) as usize;
        if raw.coeffs.len() != deg {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for conductor {}, got {}",
                deg,
                raw.n,
                raw.coeffs.len()
            )));
        }
        let mut c = Vec::with_capacity(deg);
        for (num, den) in &raw.coeffs {
            let num = super::rat_pair::int_from_number(num).map_err(D::Error::custom)?;
            let den = super::rat_pair::int_from_number(den).map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("coefficient with zero denominator"));
            }
            c.push(Rat::new(num, den));
        }
        let mut out = CycNum { n: raw.n, c };
        out.detect_rational();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;

    fn zeta(n: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(n, k)
    }

    #[test]
    fn cyclotomic_polynomials_match_known_forms() {
        let to_i64 = |v: &Arc<Vec<Int>>| -> Vec<i64> {
            v.iter().map(|x| i64::try_from(x.clone()).unwrap()).collect()
        };
        assert_eq!(to_i64(&cyclotomic_poly(1)), vec![-1, 1]);
        assert_eq!(to_i64(&cyclotomic_poly(8)), vec![1, 0, 0, 0, 1]);
        assert_eq!(to_i64(&cyclotomic_poly(9)), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(to_i64(&cyclotomic_poly(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(to_i64(&cyclotomic_poly(5)), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn primitive_cube_roots_sum_to_minus_one() {
        let sum = &zeta(3, 1) + &zeta(3, 2);
        assert_eq!(sum, CycNum::from_int(-1));
    }

    #[test]
    fn fourth_root_squares_to_minus_one() {
        assert_eq!(&zeta(4, 1) * &zeta(4, 1), CycNum::from_int(-1));
    }

    #[test]
    fn golden_ratio_product_identity() {
        // (ζ₅+ζ₅⁴)(ζ₅²+ζ₅³) expands to ζ₅+ζ₅²+ζ₅³+ζ₅⁴ = −1.
        let a = &zeta(5, 1) + &zeta(5, 4);
        let b = &zeta(5, 2) + &zeta(5, 3);
        assert_eq!(&a * &b, CycNum::from_int(-1));
    }

    #[test]
    fn sqrt_two_is_the_octic_combination() {
        let s = CycNum::sqrt_int(2).unwrap();
        assert_eq!(s, &zeta(8, 1) - &zeta(8, 3));
        assert_eq!(&s * &s, CycNum::from_int(2));
        let (re, im) = s.float_shadow();
        assert!((re - 2f64.sqrt()).abs() < 1e-12 && im.abs() < 1e-12);
    }

    #[test]
    fn sqrt_five_is_the_quadratic_gauss_sum() {
        let s = CycNum::sqrt_int(5).unwrap();
        let expect = &(&zeta(5, 1) + &zeta(5, 4)) - &(&zeta(5, 2) + &zeta(5, 3));
        assert_eq!(s, expect);
    }

    #[test]
    fn sqrt_squares_back_for_all_small_squarefree_radicands() {
        for d in -30i64..=30 {
            if d == 0 {
                continue;
            }
            let mag = d.unsigned_abs();
            if factor_u64(mag).iter().any(|&(_, e)| e > 1) {
                assert!(CycNum::sqrt_int(d).is_err());
                continue;
            }
            let s = CycNum::sqrt_int(d).unwrap();
            assert_eq!(&s * &s, CycNum::from_int(d), "sqrt({})² ≠ {}", d, d);
            let (re, im) = s.float_shadow();
            if d > 0 {
                assert!(re > 0.0 && im.abs() < 1e-9, "positive branch violated for {}", d);
            } else {
                assert!(im > 0.0 && re.abs() < 1e-9, "upper branch violated for {}", d);
            }
        }
    }

    #[test]
    fn sqrt_rat_handles_signs_and_squares() {
        let v = CycNum::sqrt_rat(&rat(9, 4)).unwrap();
        assert_eq!(v, CycNum::from_rat(rat(3, 2)));
        let v = CycNum::sqrt_rat(&rat(-3, 2)).unwrap();
        assert_eq!(&v * &v, CycNum::from_rat(rat(-3, 2)));
        assert!(CycNum::sqrt_rat(&rat(0, 1)).unwrap().is_zero());
    }

    #[test]
    fn mixed_conductor_arithmetic_round_trips() {
        let a = zeta(3, 1);
        let b = zeta(4, 1);
        let s = &a + &b;
        assert_eq!(&s - &b, a);
        assert_eq!(&s - &a, b);
        // ζ₅·ζ₅⁴ = 1 collapses to the rational field.
        let p = &zeta(5, 1) * &zeta(5, 4);
        assert!(p.is_rational());
        assert!(p.is_one());
    }

    #[test]
    fn inverses_multiply_to_one() {
        let a = &(&zeta(5, 1) + &CycNum::one()) * &zeta(8, 3);
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert!(CycNum::zero().inv().is_err());
    }

    #[test]
    fn conjugation_is_a_ring_involution() {
        let a = &zeta(12, 1) + &CycNum::from_rat(rat(2, 3));
        let b = &zeta(12, 5) - &zeta(3, 1);
        assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        assert_eq!(a.conj().conj(), a);
        assert_eq!(&zeta(7, 1) * &zeta(7, 1).conj(), CycNum::one());
        // norm of a root of unity is 1; norm of √5 is 5 (real value).
        let s5 = CycNum::sqrt_int(5).unwrap();
        assert!(s5.is_real());
        assert_eq!(s5.norm_squared(), CycNum::from_int(5));
        let im = CycNum::sqrt_int(-3).unwrap();
        assert!(!im.is_real());
        assert_eq!(im.norm_squared(), CycNum::from_int(3));
    }

    #[test]
    fn even_singly_divisible_conductors_are_normalized() {
        // ζ₆ = −ζ₃², so conductor 6 must never appear.
        let z6 = zeta(6, 1);
        assert_eq!(z6.conductor(), 3);
        assert_eq!(z6, -&zeta(3, 2));
        let z10 = zeta(10, 1);
        assert_eq!(z10.conductor(), 5);
        assert_eq!(z10.pow(10), CycNum::one());
        assert_eq!(z10.pow(5), CycNum::from_int(-1));
    }

    #[test]
    fn serde_round_trip_preserves_values() {
        let v = &CycNum::sqrt_int(6).unwrap().scale(&rat(7, 3)) + &zeta(8, 1);
        let js = serde_json::to_string(&v).unwrap();
        let back: CycNum = serde_json::from_str(&js).unwrap();
        assert_eq!(v, back);
        // A value with a numerator beyond u64 must survive exactly.
        let big = Rat::new(
            Int::parse_bytes(b"123456789012345678901234567890", 10).unwrap(),
            Int::from(7),
        );
        let v = CycNum::from_rat(big.clone());
        let js = serde_json::to_string(&v).unwrap();
        let back: CycNum = serde_json::from_str(&js).unwrap();
        assert_eq!(back.to_rat().unwrap(), big);
    }

    #[test]
    fn serialized_shape_matches_residue_schema() {
        let v = zeta(4, 1);
        let js: serde_json::Value = serde_json::to_value(&v).unwrap();
        assert_eq!(js["N"], serde_json::json!(4));
        assert_eq!(js["coeffs"], serde_json::json!([[0, 1], [1, 1]]));
    }

    #[test]
    fn pretty_forms_are_algebraic() {
        assert_eq!(CycNum::from_rat(rat(-3, 2)).pretty(), "-3/2");
        assert_eq!(CycNum::sqrt_int(2).unwrap().pretty(), "√2");
        assert_eq!(CycNum::sqrt_int(5).unwrap().scale(&rat(-1, 2)).pretty(), "-(1/2)√5");
        assert_eq!(CycNum::sqrt_int(-1).unwrap().pretty(), "i");
        assert_eq!(zeta(8, 1).pretty(), "ζ8");
    }

    #[test]
    fn ordering_in_a_common_field_is_consistent() {
        let vals = [zeta(3, 1), CycNum::one(), zeta(3, 2), CycNum::from_int(-2)];
        let mut sorted = vals.to_vec();
        sorted.sort_by(|a, b| a.cmp_in(b, 12));
        // Sorting twice from a rotated start yields the same order.
        let mut rotated: Vec<CycNum> = vals[2..].iter().chain(vals[..2].iter()).cloned().collect();
        rotated.sort_by(|a, b| a.cmp_in(b, 12));
        assert_eq!(sorted, rotated);
    }
}
