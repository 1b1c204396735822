//! Exact matrix realizations of `SL_n` (type `A_(n-1)`) and `Sp_4` (type
//! `B_2 ~ C_2`), used as ground truth for the symbolic Steinberg engine:
//! root-element matrices, full-group BFS enumeration at `m = 1`, centers,
//! adjoint quotients, and the peeling computation that pins every structure
//! constant.

use crate::error::{Error, Result};
use crate::gf::{FieldElem, FieldSpec};
use crate::rootsys::{self, Family, RootId, RootSystem};
use num_bigint::BigUint;
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RealKind {
    /// `SL_n`, realizing `A_(n-1)`.
    Sl(usize),
    /// `Sp_4` with the antidiagonal-block form, realizing `B_2 ~ C_2`.
    Sp4,
}

/// A matrix realization: the root system together with the matrix positions
/// of each root element `x_a(t) = I + t * N_a`.
pub struct Realization {
    kind: RealKind,
    rs: RootSystem,
    /// Per root id: the nonzero positions `(row, col, sign)` of `N_a`.
    positions: Vec<Vec<(usize, usize, i64)>>,
    n: usize,
}

impl Realization {
    pub fn sl(n: usize) -> Result<Realization> {
        if !(2..=5).contains(&n) {
            return Err(Error::domain(format!("SL_{n} realization out of supported range 2..=5")));
        }
        let rs = rootsys::build_root_system(Family::A, n - 1)?;
        let mut positions = vec![Vec::new(); rs.len()];
        for id in rs.ids() {
            let c = rs.root(id).coords();
            let i = c.iter().position(|&x| x == 2).expect("A-series root has a +2 entry");
            let j = c.iter().position(|&x| x == -2).expect("A-series root has a -2 entry");
            positions[id.0 as usize] = vec![(i, j, 1)];
        }
        Ok(Realization { kind: RealKind::Sl(n), rs, positions, n })
    }

    /// The `B_2` system realized inside `Sp_4`. The short/long swap between
    /// `B_2` and `C_2` is absorbed by the root correspondence
    /// `(x, y) -> (x + y, x - y)`.
    pub fn sp4() -> Result<Realization> {
        let rs = rootsys::build_root_system(Family::B, 2)?;
        let mut positions = vec![Vec::new(); rs.len()];
        for id in rs.ids() {
            let c = rs.root(id).coords();
            // C_2 coordinates of the image root, halved back to +-1/+-2 form.
            let (x, y) = ((c[0] + c[1]) / 2, (c[0] - c[1]) / 2);
            positions[id.0 as usize] = match (x, y) {
                (1, -1) => vec![(0, 1, 1), (3, 2, -1)],
                (-1, 1) => vec![(1, 0, 1), (2, 3, -1)],
                (1, 1) => vec![(0, 3, 1), (1, 2, 1)],
                (-1, -1) => vec![(3, 0, 1), (2, 1, 1)],
                (2, 0) => vec![(0, 2, 1)],
                (-2, 0) => vec![(2, 0, 1)],
                (0, 2) => vec![(1, 3, 1)],
                (0, -2) => vec![(3, 1, 1)],
                other => unreachable!("unexpected C2 root {other:?}"),
            };
        }
        Ok(Realization { kind: RealKind::Sp4, rs, positions, n: 4 })
    }

    pub fn from_name(name: &str) -> Result<Realization> {
        match name.to_ascii_lowercase().as_str() {
            "sl2" => Realization::sl(2),
            "sl3" => Realization::sl(3),
            "sl4" => Realization::sl(4),
            "sl5" => Realization::sl(5),
            "sp4" => Realization::sp4(),
            other => Err(Error::domain(format!("unknown realization {other:?}"))),
        }
    }

    pub fn kind(&self) -> RealKind {
        self.kind
    }

    pub fn name(&self) -> String {
        match self.kind {
            RealKind::Sl(n) => format!("sl{n}"),
            RealKind::Sp4 => "sp4".to_string(),
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// The unipotent root element `x_a(t)`.
    pub fn root_matrix(&self, spec: &FieldSpec, alpha: RootId, t: FieldElem) -> GroupMatrix {
        let mut m = GroupMatrix::identity(self.n);
        for &(r, c, sg) in &self.positions[alpha.0 as usize] {
            m.e[r * self.n + c] = if sg >= 0 { t } else { spec.neg(t) };
        }
        m
    }

    /// `n_a(t) = x_a(t) x_(-a)(-t^-1) x_a(t)` and `h_a(t) = n_a(t) n_a(-1)`.
    pub fn torus_elems(
        &self,
        spec: &FieldSpec,
        alpha: RootId,
        t: FieldElem,
    ) -> Result<(GroupMatrix, GroupMatrix)> {
        if t.is_zero() {
            return Err(Error::domain("torus element needs t != 0".to_string()));
        }
        let n_of = |t: FieldElem| -> Result<GroupMatrix> {
            let neg = self.rs.negate(alpha);
            let ti = spec.inv(t)?;
            let a = self.root_matrix(spec, alpha, t);
            let b = self.root_matrix(spec, neg, spec.neg(ti));
            Ok(a.mul(spec, &b).mul(spec, &self.root_matrix(spec, alpha, t)))
        };
        let n_t = n_of(t)?;
        let n_m1 = n_of(spec.neg(spec.one()))?;
        let h = n_t.mul(spec, &n_m1);
        Ok((n_t, h))
    }

    /// Membership test: `det = 1` for SL, the symplectic form for Sp4.
    pub fn is_member(&self, spec: &FieldSpec, g: &GroupMatrix) -> bool {
        match self.kind {
            RealKind::Sl(_) => g.det(spec) == spec.one(),
            RealKind::Sp4 => {
                let j = sp4_form(spec);
                let t = g.transpose();
                g.mul(spec, &j).mul(spec, &t).e == j.e
            }
        }
    }

    /// Every off-diagonal position belongs to at most one root; the peeling
    /// calibration relies on this.
    fn check_positions_disjoint(&self) {
        let mut seen: HashMap<(usize, usize), RootId> = HashMap::new();
        for id in self.rs.ids() {
            for &(r, c, _) in &self.positions[id.0 as usize] {
                if let Some(prev) = seen.insert((r, c), id) {
                    panic!("position ({r},{c}) shared by roots {prev:?} and {id:?}");
                }
            }
        }
    }
}

fn sp4_form(spec: &FieldSpec) -> GroupMatrix {
    let mut j = GroupMatrix::zero(4);
    j.set(0, 2, spec.one());
    j.set(1, 3, spec.one());
    j.set(2, 0, spec.neg(spec.one()));
    j.set(3, 1, spec.neg(spec.one()));
    j
}

/// A dense matrix over `F_(p^m)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupMatrix {
    n: usize,
    e: Vec<FieldElem>,
}

impl GroupMatrix {
    pub fn zero(n: usize) -> GroupMatrix {
        GroupMatrix { n, e: vec![FieldElem::ZERO; n * n] }
    }

    pub fn identity(n: usize) -> GroupMatrix {
        let mut m = GroupMatrix::zero(n);
        let mut one = [0u8; crate::gf::MAX_M];
        one[0] = 1;
        for i in 0..n {
            m.e[i * n + i] = FieldElem::from_coeffs(one);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.e[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.e[r * self.n + c] = v;
    }

    pub fn mul(&self, spec: &FieldSpec, other: &GroupMatrix) -> GroupMatrix {
        let n = self.n;
        let mut out = GroupMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.e[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.e[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.e[i * n + j];
                    out.e[i * n + j] = spec.add(cur, spec.mul(a, b));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> GroupMatrix {
        let n = self.n;
        let mut out = GroupMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.e[j * n + i] = self.e[i * n + j];
            }
        }
        out
    }

    pub fn det(&self, spec: &FieldSpec) -> FieldElem {
        let n = self.n;
        let mut a = self.e.clone();
        let mut det = spec.one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero());
            let Some(p) = pivot else { return FieldElem::ZERO };
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                }
                det = spec.neg(det);
            }
            let pv = a[col * n + col];
            det = spec.mul(det, pv);
            let pinv = spec.inv(pv).expect("pivot nonzero");
            for r in col + 1..n {
                let f = spec.mul(a[r * n + col], pinv);
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let sub = spec.mul(f, a[col * n + j]);
                    a[r * n + j] = spec.sub(a[r * n + j], sub);
                }
            }
        }
        det
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n;
        self.e.iter().enumerate().all(|(k, v)| {
            if k / n == k % n {
                v.deg() == 0 && v.coeff(0) == 1
            } else {
                v.is_zero()
            }
        })
    }

    /// Row-major byte serialization; canonical coset representatives are the
    /// minimum of these over the coset.
    pub fn byte_key(&self, spec: &FieldSpec) -> Vec<u8> {
        let m = spec.m();
        let mut out = Vec::with_capacity(self.e.len() * m);
        for v in &self.e {
            out.extend_from_slice(&v.coeffs()[..m]);
        }
        out
    }
}

/// A prime-field matrix in the packed representation the big enumerations
/// run on (`m = 1` only, `n <= 5`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct MatP {
    pub n: usize,
    pub e: [u8; 25],
}

impl MatP {
    pub fn identity(n: usize) -> MatP {
        let mut e = [0u8; 25];
        for i in 0..n {
            e[i * n + i] = 1;
        }
        MatP { n, e }
    }

    #[inline]
    pub fn mul(&self, other: &MatP, p: u16) -> MatP {
        let n = self.n;
        let mut e = [0u8; 25];
        for i in 0..n {
            for j in 0..n {
                let mut acc: u16 = 0;
                for k in 0..n {
                    acc += self.e[i * n + k] as u16 * other.e[k * n + j] as u16;
                }
                e[i * n + j] = (acc % p) as u8;
            }
        }
        MatP { n, e }
    }

    /// Big-endian row-major base-`p` packing, so numeric order equals
    /// lexicographic order on the serialized entries.
    #[inline]
    pub fn pack(&self, p: u16) -> u64 {
        let mut idx: u64 = 0;
        for k in 0..self.n * self.n {
            idx = idx * p as u64 + self.e[k] as u64;
        }
        idx
    }

    pub fn unpack(mut idx: u64, n: usize, p: u16) -> MatP {
        let mut e = [0u8; 25];
        for k in (0..n * n).rev() {
            e[k] = (idx % p as u64) as u8;
            idx /= p as u64;
        }
        MatP { n, e }
    }

    pub fn from_group_matrix(g: &GroupMatrix) -> MatP {
        assert!(g.n <= 5);
        let mut e = [0u8; 25];
        for k in 0..g.n * g.n {
            e[k] = g.e[k].coeff(0);
        }
        MatP { n: g.n, e }
    }

    pub fn to_group_matrix(&self, spec: &FieldSpec) -> GroupMatrix {
        let mut g = GroupMatrix::zero(self.n);
        for k in 0..self.n * self.n {
            g.e[k] = spec.from_int(self.e[k] as i64);
        }
        g
    }
}

/// Element lookup for an enumerated group: direct-indexed when the packed
/// space is small, hashed otherwise.
enum Lookup {
    Dense(Vec<u32>),
    Map(HashMap<u64, u32>),
}

/// A fully enumerated matrix group over `F_p`, element ids in BFS order.
pub struct GroupTable {
    pub p: u16,
    pub n: usize,
    /// Packed elements in discovery order; index = element id.
    pub elems: Vec<u64>,
    lookup: Lookup,
    /// The BFS generators: all `x_a(t)` with `t != 0`.
    pub gens: Vec<MatP>,
}

impl GroupTable {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn id_of(&self, packed: u64) -> Option<u32> {
        match &self.lookup {
            Lookup::Dense(v) => {
                let slot = v[packed as usize];
                (slot != u32::MAX).then_some(slot)
            }
            Lookup::Map(m) => m.get(&packed).copied(),
        }
    }

    pub fn mat(&self, id: u32) -> MatP {
        MatP::unpack(self.elems[id as usize], self.n, self.p)
    }
}

/// Default ceiling on enumerated group size.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// BFS closure of the root-element generators. Requires `m = 1`; refuses to
/// start when the order formula predicts a group over budget, and checks the
/// enumerated count against the formula afterwards.
pub fn enumerate_group(real: &Realization, spec: &FieldSpec, budget: u64) -> Result<GroupTable> {
    if spec.m() != 1 {
        return Err(Error::domain("full enumeration runs at m = 1 only".to_string()));
    }
    let predicted = predicted_order(real.rs.family(), real.rs.rank(), spec.p(), 1);
    if predicted > BigUint::from(budget) {
        return Err(Error::Resource {
            needed: (&predicted).try_into().unwrap_or(u64::MAX),
            budget,
            unit: "elements",
        });
    }
    let p = spec.p();
    let n = real.n;
    let mut gens = Vec::new();
    for id in real.rs.ids() {
        for t in 1..p {
            let g = real.root_matrix(spec, id, spec.from_int(t as i64));
            gens.push(MatP::from_group_matrix(&g));
        }
    }

    let space = (p as u64).checked_pow((n * n) as u32);
    let mut lookup = match space {
        Some(s) if s <= (1 << 28) => Lookup::Dense(vec![u32::MAX; s as usize]),
        _ => {
            let cap: usize = (&predicted).try_into().unwrap_or(usize::MAX);
            Lookup::Map(HashMap::with_capacity(cap + cap / 2))
        }
    };
    let mut elems: Vec<u64> = Vec::new();
    let id_packed = MatP::identity(n).pack(p);
    match &mut lookup {
        Lookup::Dense(v) => v[id_packed as usize] = 0,
        Lookup::Map(m) => {
            m.insert(id_packed, 0);
        }
    }
    elems.push(id_packed);
    let mut head = 0usize;
    while head < elems.len() {
        let cur = MatP::unpack(elems[head], n, p);
        head += 1;
        for g in &gens {
            let next = cur.mul(g, p);
            let key = next.pack(p);
            let fresh = match &mut lookup {
                Lookup::Dense(v) => {
                    if v[key as usize] == u32::MAX {
                        v[key as usize] = elems.len() as u32;
                        true
                    } else {
                        false
                    }
                }
                Lookup::Map(m) => match m.entry(key) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(elems.len() as u32);
                        true
                    }
                    std::collections::hash_map::Entry::Occupied(_) => false,
                },
            };
            if fresh {
                elems.push(key);
            }
        }
    }
    let table = GroupTable { p, n, elems, lookup, gens };
    if BigUint::from(table.len() as u64) != predicted {
        return Err(Error::integrity(format!(
            "enumerated {} elements of {}, order formula says {predicted}",
            table.len(),
            real.name()
        )));
    }
    Ok(table)
}

/// The classical order formula `q^N * prod(q^(d_i) - 1)` with `N` the number
/// of positive roots and `d_i` the degrees of the basic invariants.
pub fn predicted_order(family: Family, rank: usize, p: u16, m: usize) -> BigUint {
    let degrees: Vec<usize> = match family {
        Family::A => (2..=rank + 1).collect(),
        Family::B | Family::C => (1..=rank).map(|i| 2 * i).collect(),
        Family::D => {
            let mut v: Vec<usize> = (1..rank).map(|i| 2 * i).collect();
            v.push(rank);
            v
        }
        Family::G => vec![2, 6],
        Family::F => vec![2, 6, 8, 12],
        Family::E => match rank {
            6 => vec![2, 5, 6, 8, 9, 12],
            7 => vec![2, 6, 8, 10, 12, 14, 18],
            8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
            _ => unreachable!(),
        },
    };
    let q = BigUint::from(p as u64).pow(m as u32);
    let n_pos = (rootsys::classical_root_count(family, rank) / 2) as u32;
    let mut order = q.pow(n_pos);
    for d in degrees {
        order *= q.pow(d as u32) - BigUint::from(1u32);
    }
    order
}

/// The explicit center: scalars `w*I` with `w^n = 1` for `SL_n`, `{I, -I}`
/// for `Sp_4` in odd characteristic.
pub struct CenterDesc {
    pub elems: Vec<GroupMatrix>,
}

impl CenterDesc {
    pub fn order(&self) -> usize {
        self.elems.len()
    }
}

pub fn center(real: &Realization, spec: &FieldSpec) -> Result<CenterDesc> {
    let n = real.n;
    let mut elems = Vec::new();
    match real.kind {
        RealKind::Sl(_) => {
            for i in 1..spec.q() {
                let w = spec.elem_from_index(i);
                if spec.pow(w, n as u64) == spec.one() {
                    let mut z = GroupMatrix::zero(n);
                    for d in 0..n {
                        z.set(d, d, w);
                    }
                    elems.push(z);
                }
            }
        }
        RealKind::Sp4 => {
            elems.push(GroupMatrix::identity(n));
            if spec.p() != 2 {
                let mut z = GroupMatrix::zero(n);
                for d in 0..n {
                    z.set(d, d, spec.neg(spec.one()));
                }
                elems.push(z);
            }
        }
    }
    for z in &elems {
        for id in real.rs.ids() {
            let x = real.root_matrix(spec, id, spec.one());
            if z.mul(spec, &x) != x.mul(spec, z) {
                return Err(Error::integrity("claimed central element does not commute".to_string()));
            }
        }
    }
    let expected = match real.kind {
        RealKind::Sl(n) => gcd(n as u64, spec.q() - 1),
        RealKind::Sp4 => gcd(2, spec.q() - 1),
    };
    if elems.len() as u64 != expected {
        return Err(Error::integrity(format!(
            "center has {} elements, gcd formula says {expected}",
            elems.len()
        )));
    }
    Ok(CenterDesc { elems })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Canonical representative of `gZ`: the member with minimal byte key.
pub fn adjoint_canon(spec: &FieldSpec, g: &GroupMatrix, z: &CenterDesc) -> GroupMatrix {
    z.elems
        .iter()
        .map(|zz| g.mul(spec, zz))
        .min_by(|a, b| a.byte_key(spec).cmp(&b.byte_key(spec)))
        .expect("center is nonempty")
}

// --- Symbolic commutator peeling -----------------------------------------
//
// Structure constants are read off exactly by computing [x_a(t), x_b(u)]
// with formal t, u over F_p[t, u] and peeling one cone root at a time in
// increasing height order. Every root owns its matrix positions, so the
// entry at a root's position is exactly its normal-form coefficient once
// the lower roots are stripped.

type BiPoly = BTreeMap<(u8, u8), u16>;

fn bp_const(c: u16, p: u16) -> BiPoly {
    let mut b = BTreeMap::new();
    if c % p != 0 {
        b.insert((0, 0), c % p);
    }
    b
}

fn bp_add(a: &BiPoly, b: &BiPoly, p: u16) -> BiPoly {
    let mut out = a.clone();
    for (&k, &v) in b {
        let e = out.entry(k).or_insert(0);
        *e = (*e + v) % p;
        if *e == 0 {
            out.remove(&k);
        }
    }
    out
}

fn bp_mul(a: &BiPoly, b: &BiPoly, p: u16) -> BiPoly {
    let mut out = BTreeMap::new();
    for (&(i1, j1), &v1) in a {
        for (&(i2, j2), &v2) in b {
            let k = (i1 + i2, j1 + j2);
            let e = out.entry(k).or_insert(0u16);
            *e = (*e + v1 * v2 % p) % p;
            if *e == 0 {
                out.remove(&k);
            }
        }
    }
    out
}

fn bp_scale(a: &BiPoly, c: u16, p: u16) -> BiPoly {
    let mut out = BTreeMap::new();
    for (&k, &v) in a {
        let w = v * (c % p) % p;
        if w != 0 {
            out.insert(k, w);
        }
    }
    out
}

struct SymMatrix {
    n: usize,
    e: Vec<BiPoly>,
}

impl SymMatrix {
    fn identity(n: usize, p: u16) -> SymMatrix {
        let mut e = vec![BiPoly::new(); n * n];
        for i in 0..n {
            e[i * n + i] = bp_const(1, p);
        }
        SymMatrix { n, e }
    }

    fn mul(&self, other: &SymMatrix, p: u16) -> SymMatrix {
        let n = self.n;
        let mut e = vec![BiPoly::new(); n * n];
        for i in 0..n {
            for k in 0..n {
                if self.e[i * n + k].is_empty() {
                    continue;
                }
                for j in 0..n {
                    if other.e[k * n + j].is_empty() {
                        continue;
                    }
                    let prod = bp_mul(&self.e[i * n + k], &other.e[k * n + j], p);
                    e[i * n + j] = bp_add(&e[i * n + j], &prod, p);
                }
            }
        }
        SymMatrix { n, e }
    }

    fn is_identity(&self, p: u16) -> bool {
        let one = bp_const(1, p);
        self.e.iter().enumerate().all(|(k, v)| {
            if k / self.n == k % self.n {
                *v == one
            } else {
                v.is_empty()
            }
        })
    }
}

fn sym_root_matrix(real: &Realization, p: u16, alpha: RootId, arg: &BiPoly) -> SymMatrix {
    let mut m = SymMatrix::identity(real.n, p);
    for &(r, c, sg) in &real.positions[alpha.0 as usize] {
        m.e[r * real.n + c] = if sg >= 0 { arg.clone() } else { bp_scale(arg, p - 1, p) };
    }
    m
}

/// One structure-constant term: `x_target(c * t^a * u^b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeeledTerm {
    pub target: RootId,
    pub c: i64,
    pub a: u32,
    pub b: u32,
}

/// Exact structure constants of `[x_gamma(t), x_delta(u)]` in this
/// realization, from a formal matrix computation. `p` must be at least 7 so
/// the residues of the six legal constants stay distinct.
pub fn peel_commutator(
    real: &Realization,
    p: u16,
    gamma: RootId,
    delta: RootId,
) -> Result<Vec<PeeledTerm>> {
    if p < 7 {
        return Err(Error::domain("calibration needs p >= 7".to_string()));
    }
    real.check_positions_disjoint();
    let rs = &real.rs;
    if rs.negate(gamma) == delta {
        return Err(Error::domain("commutator of an opposite pair".to_string()));
    }
    let (cone, _) = rootsys::positive_cone(rs, gamma, delta)?;
    let interior: Vec<_> = cone.iter().filter(|c| c.i >= 1 && c.j >= 1).collect();

    let t: BiPoly = BTreeMap::from([((1u8, 0u8), 1u16)]);
    let u: BiPoly = BTreeMap::from([((0u8, 1u8), 1u16)]);
    let neg = |x: &BiPoly| bp_scale(x, p - 1, p);
    // [x, y] = x^-1 y^-1 x y with x = x_gamma(t), y = x_delta(u).
    let mut k = sym_root_matrix(real, p, gamma, &neg(&t))
        .mul(&sym_root_matrix(real, p, delta, &neg(&u)), p)
        .mul(&sym_root_matrix(real, p, gamma, &t), p)
        .mul(&sym_root_matrix(real, p, delta, &u), p);

    let mut terms = Vec::new();
    for cr in interior {
        let &(r, c, sg) = real.positions[cr.id.0 as usize]
            .first()
            .expect("every root has a matrix position");
        let entry = &k.e[r * real.n + c];
        let coeff_poly = if sg >= 0 { entry.clone() } else { bp_scale(entry, p - 1, p) };
        if coeff_poly.is_empty() {
            return Err(Error::integrity(format!(
                "structure constant vanished at cone root ({}, {})",
                cr.i, cr.j
            )));
        }
        if coeff_poly.len() != 1 {
            return Err(Error::integrity("peeled coefficient is not a monomial".to_string()));
        }
        let (&(a, b), &residue) = coeff_poly.iter().next().unwrap();
        if (a as i64, b as i64) != (cr.i, cr.j) {
            return Err(Error::integrity(format!(
                "peeled monomial t^{a} u^{b} disagrees with cone coordinates ({}, {})",
                cr.i, cr.j
            )));
        }
        let c_signed = if residue <= 3 {
            residue as i64
        } else if residue >= p - 3 {
            residue as i64 - p as i64
        } else {
            return Err(Error::integrity(format!("constant residue {residue} outside +-3")));
        };
        terms.push(PeeledTerm { target: cr.id, c: c_signed, a: a as u32, b: b as u32 });
        // Strip this factor: K <- x_target(-coeff) * K.
        let strip = sym_root_matrix(real, p, cr.id, &bp_scale(&coeff_poly, p - 1, p));
        k = strip.mul(&k, p);
    }
    if !k.is_identity(p) {
        return Err(Error::integrity(
            "residue after peeling all cone roots is not the identity".to_string(),
        ));
    }
    Ok(terms)
}
