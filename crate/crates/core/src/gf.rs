//! Exact arithmetic in `F_p` and `F_{p^m} = F_p[x]/(f)`.
//!
//! Elements carry their polynomial representative, and `deg` means the degree
//! of that representative. The degree grading is what the whole construction
//! runs on: subgroups are cut out by `deg(t) <= k` conditions, so `deg(0)` is
//! defined as `-1` to make `deg(0) <= k` hold for every `k >= 0`.

use crate::error::{Error, Result};
use std::fmt::Write as _;
use std::sync::OnceLock;

/// Hard cap on the extension degree. Desk-scale runs use `m <= 6`.
pub const MAX_M: usize = 8;

/// An element of `F_{p^m}`, stored as coefficients of its representative,
/// lowest degree first. Coefficients above `m-1` are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FieldElem {
    c: [u8; MAX_M],
}

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem { c: [0; MAX_M] };

    /// Raw constructor; callers guarantee coefficients are reduced mod p.
    pub(crate) fn from_coeffs(c: [u8; MAX_M]) -> FieldElem {
        FieldElem { c }
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.c[i]
    }

    pub fn coeffs(&self) -> &[u8; MAX_M] {
        &self.c
    }

    /// Degree of the representative polynomial, with `deg(0) = -1`.
    pub fn deg(&self) -> i32 {
        for i in (0..MAX_M).rev() {
            if self.c[i] != 0 {
                return i as i32;
            }
        }
        -1
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0; MAX_M]
    }
}

/// Lazily built lookup tables for small fields; they turn `F_q` arithmetic
/// into array indexing inside the hot closure/enumeration loops.
struct Tables {
    mul: Vec<u32>,
    add: Vec<u32>,
    neg: Vec<u32>,
}

/// A concrete field `F_p[x]/(f)` with `f` monic irreducible of degree `m`.
pub struct FieldSpec {
    p: u16,
    m: usize,
    /// Monic modulus, lowest degree first, length `m + 1`.
    modulus: Vec<u8>,
    /// `x^k mod f` for `k = m .. 2m-1`.
    reduction: Vec<FieldElem>,
    q: u64,
    tables: OnceLock<Option<Tables>>,
}

/// Largest `q` for which mul/add tables are materialized (`q^2` entries each).
const TABLE_Q_LIMIT: u64 = 2500;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Builds `F_{p^m}` with the lexicographically smallest monic irreducible
    /// modulus (see [`find_irreducible`]).
    pub fn new(p: u16, m: usize) -> Result<FieldSpec> {
        let modulus = find_irreducible(p, m)?;
        FieldSpec::with_modulus(p, m, modulus)
    }

    /// Builds `F_{p^m}` with an explicit modulus; the modulus is verified
    /// monic and irreducible by exhaustive factor search.
    pub fn with_modulus(p: u16, m: usize, modulus: Vec<u8>) -> Result<FieldSpec> {
        if !is_prime(p as u64) {
            return Err(Error::domain(format!("p = {p} is not prime")));
        }
        if m == 0 || m > MAX_M {
            return Err(Error::domain(format!("extension degree m = {m} out of range 1..={MAX_M}")));
        }
        if modulus.len() != m + 1 || modulus[m] != 1 {
            return Err(Error::domain("modulus must be monic of degree m".to_string()));
        }
        if modulus.iter().any(|&c| c >= p as u8) {
            return Err(Error::domain("modulus coefficient out of range".to_string()));
        }
        if !poly_is_irreducible(p, &modulus) {
            return Err(Error::domain(format!(
                "modulus {} is reducible over F_{p}",
                poly_string(&modulus)
            )));
        }
        let mut spec = FieldSpec {
            p,
            m,
            modulus,
            reduction: Vec::new(),
            q: (p as u64).pow(m as u32),
            tables: OnceLock::new(),
        };
        spec.reduction = spec.build_reduction();
        Ok(spec)
    }

    /// `x^k mod f` for `k = m .. 2m-1`, the only powers schoolbook
    /// multiplication can produce before reduction.
    fn build_reduction(&self) -> Vec<FieldElem> {
        let p = self.p as u32;
        let m = self.m;
        let mut out = Vec::with_capacity(m);
        // x^m = -(f - x^m)
        let mut cur = [0u8; MAX_M];
        for i in 0..m {
            cur[i] = ((p - self.modulus[i] as u32) % p) as u8;
        }
        out.push(FieldElem { c: cur });
        for _ in 1..m {
            // multiply by x
            let mut next = [0u8; MAX_M];
            let top = cur[m - 1] as u32;
            for i in (1..m).rev() {
                next[i] = cur[i - 1];
            }
            next[0] = 0;
            if top != 0 {
                let base = &out[0];
                for i in 0..m {
                    next[i] = ((next[i] as u32 + top * base.c[i] as u32) % p) as u8;
                }
            }
            out.push(FieldElem { c: next });
            cur = next;
        }
        out
    }

    pub fn p(&self) -> u16 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    /// The HDX theorems ask for `p > 3`; smaller primes are allowed for
    /// enumeration experiments only.
    pub fn hdx_safe(&self) -> bool {
        self.p > 3
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    /// The scalar `n mod p`, embedded as a degree-0 element.
    pub fn from_int(&self, n: i64) -> FieldElem {
        let mut c = [0u8; MAX_M];
        c[0] = n.rem_euclid(self.p as i64) as u8;
        FieldElem { c }
    }

    /// `c * x^k`.
    pub fn monomial(&self, c: i64, k: usize) -> FieldElem {
        assert!(k < self.m, "monomial degree {k} >= m = {}", self.m);
        let mut out = [0u8; MAX_M];
        out[k] = c.rem_euclid(self.p as i64) as u8;
        FieldElem { c: out }
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.p as u16;
        let mut c = [0u8; MAX_M];
        for i in 0..self.m {
            let s = a.c[i] as u16 + b.c[i] as u16;
            c[i] = (if s >= p { s - p } else { s }) as u8;
        }
        FieldElem { c }
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let p = self.p as u8;
        let mut c = [0u8; MAX_M];
        for i in 0..self.m {
            c[i] = if a.c[i] == 0 { 0 } else { p - a.c[i] };
        }
        FieldElem { c }
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.p as u64;
        let m = self.m;
        let mut acc = [0u64; 2 * MAX_M];
        for i in 0..m {
            if a.c[i] == 0 {
                continue;
            }
            let ai = a.c[i] as u64;
            for j in 0..m {
                acc[i + j] += ai * b.c[j] as u64;
            }
        }
        let mut c = [0u8; MAX_M];
        for i in 0..m {
            c[i] = (acc[i] % p) as u8;
        }
        for k in m..(2 * m - 1) {
            let hi = acc[k] % p;
            if hi != 0 {
                let red = &self.reduction[k - m];
                for i in 0..m {
                    c[i] = ((c[i] as u64 + hi * red.c[i] as u64) % p) as u8;
                }
            }
        }
        FieldElem { c }
    }

    pub fn scale(&self, k: i64, a: FieldElem) -> FieldElem {
        self.mul(self.from_int(k), a)
    }

    /// Multiplicative inverse via extended Euclid on representatives.
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::domain("inverse of zero"));
        }
        let p = self.p as i64;
        // Work over Vec<i64> polys: (r0, s0) and (r1, s1) with si * a = ri mod f.
        let mut r0: Vec<i64> = self.modulus.iter().map(|&c| c as i64).collect();
        let mut r1: Vec<i64> = (0..self.m).map(|i| a.c[i] as i64).collect();
        trim(&mut r0);
        trim(&mut r1);
        let mut s0: Vec<i64> = vec![0];
        let mut s1: Vec<i64> = vec![1];
        while poly_deg(&r1) > 0 {
            let (qt, rem) = poly_divmod(p, &r0, &r1);
            let s2 = poly_sub(p, &s0, &poly_mul(p, &qt, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        if poly_deg(&r1) < 0 {
            return Err(Error::integrity("gcd with irreducible modulus was not 1".to_string()));
        }
        // r1 is a nonzero constant; divide s1 by it.
        let cinv = mod_inv(r1[0].rem_euclid(p), p);
        let mut c = [0u8; MAX_M];
        for (i, &co) in s1.iter().enumerate() {
            if i < self.m {
                c[i] = (co.rem_euclid(p) * cinv % p) as u8;
            }
        }
        Ok(FieldElem { c })
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut out = self.one();
        while e > 0 {
            if e & 1 == 1 {
                out = self.mul(out, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        out
    }

    /// Packs an element as `sum c_i p^i`; the inverse of [`FieldSpec::elem_from_index`].
    /// Elements of degree `<= k` pack below `p^(k+1)`, which is what the
    /// graded enumeration code relies on.
    pub fn elem_index(&self, a: FieldElem) -> u64 {
        let p = self.p as u64;
        let mut idx = 0;
        for i in (0..self.m).rev() {
            idx = idx * p + a.c[i] as u64;
        }
        idx
    }

    pub fn elem_from_index(&self, mut idx: u64) -> FieldElem {
        let p = self.p as u64;
        let mut c = [0u8; MAX_M];
        for slot in c.iter_mut().take(self.m) {
            *slot = (idx % p) as u8;
            idx /= p;
        }
        debug_assert_eq!(idx, 0);
        FieldElem { c }
    }

    /// Number of elements of degree at most `k`: `p^(min(k, m-1) + 1)`.
    pub fn count_up_to_degree(&self, k: i32) -> u64 {
        if k < 0 {
            1
        } else {
            let e = (k as usize).min(self.m - 1) + 1;
            (self.p as u64).pow(e as u32)
        }
    }

    /// All elements with `deg <= k`, in index order. `k = -1` yields `{0}`.
    pub fn elements_up_to_degree(&self, k: i32) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.count_up_to_degree(k)).map(move |i| self.elem_from_index(i))
    }

    fn tables(&self) -> Option<&Tables> {
        self.tables
            .get_or_init(|| {
                if self.q > TABLE_Q_LIMIT {
                    return None;
                }
                let q = self.q as usize;
                let mut mul = vec![0u32; q * q];
                let mut add = vec![0u32; q * q];
                let mut neg = vec![0u32; q];
                let elems: Vec<FieldElem> = (0..self.q).map(|i| self.elem_from_index(i)).collect();
                for (i, &a) in elems.iter().enumerate() {
                    neg[i] = self.elem_index(self.neg(a)) as u32;
                    for (j, &b) in elems.iter().enumerate() {
                        mul[i * q + j] = self.elem_index(self.mul(a, b)) as u32;
                        add[i * q + j] = self.elem_index(self.add(a, b)) as u32;
                    }
                }
                Some(Tables { mul, add, neg })
            })
            .as_ref()
    }

    /// Table-backed ops on packed indices; `None` if `q` is over the table cap.
    pub fn index_ops(&self) -> Option<IndexOps<'_>> {
        self.tables().map(|t| IndexOps { q: self.q as usize, t })
    }

    /// Comma-separated coefficients, lowest degree first: `3 + x^2` is `"3,0,1"`.
    pub fn elem_string(&self, a: FieldElem) -> String {
        let mut s = String::new();
        for i in 0..self.m {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{}", a.c[i]);
        }
        s
    }

    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let mut c = [0u8; MAX_M];
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() > self.m {
            return Err(Error::domain(format!("element has more than m = {} coefficients", self.m)));
        }
        for (i, part) in parts.iter().enumerate() {
            let v: u16 = part
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("bad coefficient {part:?}")))?;
            if v >= self.p {
                return Err(Error::domain(format!("coefficient {v} >= p = {}", self.p)));
            }
            c[i] = v as u8;
        }
        Ok(FieldElem { c })
    }

    pub fn modulus_string(&self) -> String {
        poly_string(&self.modulus)
    }
}

impl std::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}^{} mod {}", self.p, self.m, self.modulus_string())
    }
}

/// Packed-index arithmetic for small fields. Indices are `elem_index` values.
#[derive(Clone, Copy)]
pub struct IndexOps<'a> {
    q: usize,
    t: &'a Tables,
}

impl IndexOps<'_> {
    #[inline(always)]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.t.mul[a as usize * self.q + b as usize]
    }

    #[inline(always)]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.t.add[a as usize * self.q + b as usize]
    }

    #[inline(always)]
    pub fn neg(&self, a: u32) -> u32 {
        self.t.neg[a as usize]
    }
}

/// The lexicographically smallest monic irreducible of degree `m` over `F_p`,
/// comparing coefficient tuples from the highest degree down (equivalently,
/// smallest `sum c_i p^i`). Found by exhaustive search with trial division,
/// which is perfectly adequate at desk scale.
pub fn find_irreducible(p: u16, m: usize) -> Result<Vec<u8>> {
    if !is_prime(p as u64) {
        return Err(Error::domain(format!("p = {p} is not prime")));
    }
    if m == 0 || m > MAX_M {
        return Err(Error::domain(format!("extension degree m = {m} out of range 1..={MAX_M}")));
    }
    let total = (p as u64).pow(m as u32);
    for v in 0..total {
        let mut f = Vec::with_capacity(m + 1);
        let mut idx = v;
        for _ in 0..m {
            f.push((idx % p as u64) as u8);
            idx /= p as u64;
        }
        f.push(1);
        if poly_is_irreducible(p, &f) {
            return Ok(f);
        }
    }
    unreachable!("irreducibles of every degree exist");
}

/// Exhaustive factor search: `f` (monic, degree m) is irreducible iff no monic
/// polynomial of degree `1..=m/2` divides it.
pub fn poly_is_irreducible(p: u16, f: &[u8]) -> bool {
    let m = f.len() - 1;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let fi: Vec<i64> = f.iter().map(|&c| c as i64).collect();
    for d in 1..=(m / 2) {
        let count = (p as u64).pow(d as u32);
        for v in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut idx = v;
            for _ in 0..d {
                g.push((idx % p as u64) as i64);
                idx /= p as u64;
            }
            g.push(1);
            let (_, rem) = poly_divmod(p as i64, &fi, &g);
            if poly_deg(&rem) < 0 {
                return false;
            }
        }
    }
    true
}

fn poly_string(f: &[u8]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in f.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let t = match (i, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

// Dense i64 polynomial helpers (coefficients in [0, p), lowest degree first).

fn trim(f: &mut Vec<i64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn poly_deg(f: &[i64]) -> i32 {
    f.len() as i32 - 1
}

fn poly_mul(p: i64, a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    let mut out: Vec<i64> = out.into_iter().map(|c| c.rem_euclid(p)).collect();
    trim(&mut out);
    out
}

fn poly_sub(p: i64, a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len().max(b.len());
    let mut out = vec![0i64; n];
    for i in 0..n {
        let av = a.get(i).copied().unwrap_or(0);
        let bv = b.get(i).copied().unwrap_or(0);
        out[i] = (av - bv).rem_euclid(p);
    }
    trim(&mut out);
    out
}

fn mod_inv(a: i64, p: i64) -> i64 {
    // Fermat; p is prime and a != 0 mod p.
    let mut e = p - 2;
    let mut base = a.rem_euclid(p);
    let mut out = 1i64;
    while e > 0 {
        if e & 1 == 1 {
            out = out * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    out
}

fn poly_divmod(p: i64, a: &[i64], b: &[i64]) -> (Vec<i64>, Vec<i64>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = poly_deg(b);
    let mut rem: Vec<i64> = a.to_vec();
    trim(&mut rem);
    if poly_deg(&rem) < db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0i64; (poly_deg(&rem) - db + 1) as usize];
    let lead_inv = mod_inv(*b.last().unwrap(), p);
    while poly_deg(&rem) >= db {
        let shift = (poly_deg(&rem) - db) as usize;
        let coef = rem.last().unwrap() * lead_inv % p;
        quot[shift] = coef;
        for (i, &bc) in b.iter().enumerate() {
            rem[shift + i] = (rem[shift + i] - coef * bc).rem_euclid(p);
        }
        trim(&mut rem);
    }
    (quot, rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn smallest_irreducible_degree_one_is_x() {
        assert_eq!(find_irreducible(5, 1).unwrap(), vec![0, 1]);
    }

    #[test]
    fn smallest_irreducible_f5_degree_two() {
        // Oracle: a monic quadratic over F_5 is irreducible iff it has no
        // root. Squares mod 5 are {0,1,4}, so x^2 + 2 (needing -2 = 3 to be a
        // square) is irreducible while x^2, x^2+1, x^2+4x... candidates below
        // it by the value order are not.
        let squares: Vec<u64> = (0..5).map(|x| x * x % 5).collect();
        assert!(!squares.contains(&3));
        assert_eq!(find_irreducible(5, 2).unwrap(), vec![2, 0, 1]);
    }

    #[test]
    fn irreducible_f7_degree_three_has_no_linear_factor() {
        let f = find_irreducible(7, 3).unwrap();
        // Oracle: trial division by every monic linear polynomial.
        let fi: Vec<i64> = f.iter().map(|&c| c as i64).collect();
        for a in 0..7i64 {
            let g = vec![a, 1];
            let (_, rem) = poly_divmod(7, &fi, &g);
            assert!(poly_deg(&rem) >= 0, "x + {a} divides the claimed irreducible");
        }
    }

    #[test]
    fn x_squared_reduces() {
        // In F_5[x]/(x^2 + 2): x * x = -2 = 3.
        let f = FieldSpec::new(5, 2).unwrap();
        let x = f.monomial(1, 1);
        assert_eq!(f.mul(x, x), f.from_int(3));
    }

    #[test]
    fn additive_identity() {
        let f = FieldSpec::new(5, 3).unwrap();
        for i in 0..f.q() {
            let t = f.elem_from_index(i);
            assert_eq!(f.add(t, f.zero()), t);
        }
    }

    #[test]
    fn inverse_round_trips() {
        let f = FieldSpec::new(5, 4).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let t = f.elem_from_index(rng.gen_range(1..f.q()));
            let ti = f.inv(t).unwrap();
            assert_eq!(f.mul(t, ti), f.one(), "t = {}", f.elem_string(t));
        }
        assert!(f.inv(f.zero()).is_err());
    }

    #[test]
    fn degree_cap_law() {
        // |elements_up_to_degree(k)| = p^(min(k, m-1) + 1)
        let f = FieldSpec::new(5, 3).unwrap();
        assert_eq!(f.elements_up_to_degree(-1).count(), 1);
        assert_eq!(f.elements_up_to_degree(1).count(), 25);
        let g = FieldSpec::new(5, 2).unwrap();
        assert_eq!(g.elements_up_to_degree(3).count(), 25);
        for k in -1..4 {
            for t in f.elements_up_to_degree(k) {
                assert!(t.deg() <= k.max(0), "deg {} > {k}", t.deg());
            }
        }
    }

    #[test]
    fn degree_of_zero_is_minus_one() {
        assert_eq!(FieldElem::ZERO.deg(), -1);
    }

    #[test]
    fn serialization_round_trip() {
        let f = FieldSpec::new(5, 3).unwrap();
        let t = f.parse_elem("3,0,1").unwrap();
        assert_eq!(t.coeff(0), 3);
        assert_eq!(t.coeff(2), 1);
        assert_eq!(t.deg(), 2);
        assert_eq!(f.elem_string(t), "3,0,1");
    }

    #[test]
    fn index_ops_match_elementwise_ops() {
        let f = FieldSpec::new(5, 2).unwrap();
        let ops = f.index_ops().expect("q = 25 is table-sized");
        for a in 0..f.q() {
            for b in 0..f.q() {
                let (ea, eb) = (f.elem_from_index(a), f.elem_from_index(b));
                assert_eq!(ops.mul(a as u32, b as u32) as u64, f.elem_index(f.mul(ea, eb)));
                assert_eq!(ops.add(a as u32, b as u32) as u64, f.elem_index(f.add(ea, eb)));
            }
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 4 = (x+1)(x+4) over F_5.
        assert!(FieldSpec::with_modulus(5, 2, vec![4, 0, 1]).is_err());
        assert!(FieldSpec::with_modulus(4, 2, vec![2, 0, 1]).is_err());
    }

    proptest! {
        #[test]
        fn field_axioms_f49(ai in 0u64..49, bi in 0u64..49, ci in 0u64..49) {
            let f = FieldSpec::new(7, 2).unwrap();
            let (a, b, c) = (f.elem_from_index(ai), f.elem_from_index(bi), f.elem_from_index(ci));
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        }

        #[test]
        fn degree_laws(ai in 0u64..625, bi in 0u64..625) {
            let f = FieldSpec::new(5, 4).unwrap();
            let (a, b) = (f.elem_from_index(ai), f.elem_from_index(bi));
            prop_assert!(f.add(a, b).deg() <= a.deg().max(b.deg()));
            if !a.is_zero() && !b.is_zero() {
                prop_assert!(f.mul(a, b).deg() <= a.deg() + b.deg());
            }
        }
    }
}
