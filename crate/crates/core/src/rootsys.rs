//! Irreducible root systems: construction, simple roots, heights, and the
//! special generating set `S = Pi ∪ {-(a_1 + ... + a_d)}`.
//!
//! Coordinates use the standard realizations (doubled across the board so the
//! half-integer roots of the E series become integral). All inner products
//! are exact integers; nothing here touches floating point.

use crate::error::{Error, Result};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::domain(format!("unknown family {other:?}"))),
        }
    }
}

/// Index of a root inside its `RootSystem`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RootId(pub u32);

/// A root: an integer coordinate vector under the global x2 scaling.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Root {
    coords: Vec<i64>,
}

impl Root {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Squared length (scaled by 4 relative to the textbook realization).
    pub fn norm2(&self) -> i64 {
        self.coords.iter().map(|&c| c * c).sum()
    }

    pub fn dot(&self, other: &Root) -> i64 {
        self.coords.iter().zip(&other.coords).map(|(&a, &b)| a * b).sum()
    }

    fn negated(&self) -> Root {
        Root { coords: self.coords.iter().map(|&c| -c).collect() }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The finite vector set `Phi` with a fixed simple set `Pi`.
pub struct RootSystem {
    family: Family,
    rank: usize,
    roots: Vec<Root>,
    index: HashMap<Vec<i64>, RootId>,
    simples: Vec<RootId>,
    /// Coefficients of each root over the simple basis; integral by
    /// construction, all-nonnegative or all-nonpositive.
    simple_coeffs: Vec<Vec<i64>>,
}

fn legal_pair(family: Family, rank: usize) -> bool {
    match family {
        Family::A => rank >= 1,
        Family::B => rank >= 2,
        Family::C => rank >= 3,
        Family::D => rank >= 4,
        Family::G => rank == 2,
        Family::F => rank == 4,
        Family::E => (6..=8).contains(&rank),
    }
}

/// Classical root counts, used as a cross-check on the reflection closure.
pub fn classical_root_count(family: Family, rank: usize) -> usize {
    let d = rank;
    match family {
        Family::A => d * (d + 1),
        Family::B | Family::C => 2 * d * d,
        Family::D => 2 * d * (d - 1),
        Family::G => 12,
        Family::F => 48,
        Family::E => match d {
            6 => 72,
            7 => 126,
            8 => 240,
            _ => unreachable!(),
        },
    }
}

/// Simple roots in the standard realizations, doubled.
fn simple_coords(family: Family, rank: usize) -> Vec<Vec<i64>> {
    let d = rank;
    let e = |n: usize, i: usize, v: i64| -> Vec<i64> {
        let mut x = vec![0i64; n];
        x[i] = v;
        x
    };
    let e2 = |n: usize, i: usize, vi: i64, j: usize, vj: i64| -> Vec<i64> {
        let mut x = vec![0i64; n];
        x[i] = vi;
        x[j] = vj;
        x
    };
    match family {
        // A_d in R^(d+1): a_i = e_i - e_(i+1).
        Family::A => (0..d).map(|i| e2(d + 1, i, 2, i + 1, -2)).collect(),
        Family::B => {
            let mut v: Vec<Vec<i64>> = (0..d - 1).map(|i| e2(d, i, 2, i + 1, -2)).collect();
            v.push(e(d, d - 1, 2));
            v
        }
        Family::C => {
            let mut v: Vec<Vec<i64>> = (0..d - 1).map(|i| e2(d, i, 2, i + 1, -2)).collect();
            v.push(e(d, d - 1, 4));
            v
        }
        Family::D => {
            let mut v: Vec<Vec<i64>> = (0..d - 1).map(|i| e2(d, i, 2, i + 1, -2)).collect();
            v.push(e2(d, d - 2, 2, d - 1, 2));
            v
        }
        // G2 in R^3 (the plane x+y+z = 0): short a_1, long a_2 at 150 degrees.
        Family::G => vec![vec![2, -2, 0], vec![-4, 2, 2]],
        // F4: two long then two short simples.
        Family::F => vec![
            vec![0, 2, -2, 0],
            vec![0, 0, 2, -2],
            vec![0, 0, 0, 2],
            vec![1, -1, -1, -1],
        ],
        // E6/E7/E8: leading subsets of the E8 simple set in R^8.
        Family::E => {
            let mut v = vec![
                vec![1, -1, -1, -1, -1, -1, -1, 1],
                vec![2, 2, 0, 0, 0, 0, 0, 0],
                vec![-2, 2, 0, 0, 0, 0, 0, 0],
                vec![0, -2, 2, 0, 0, 0, 0, 0],
                vec![0, 0, -2, 2, 0, 0, 0, 0],
                vec![0, 0, 0, -2, 2, 0, 0, 0],
                vec![0, 0, 0, 0, -2, 2, 0, 0],
                vec![0, 0, 0, 0, 0, -2, 2, 0],
            ];
            v.truncate(d);
            v
        }
    }
}

/// Builds the full root system by closing the simple set under the simple
/// reflections. Every structural invariant is checked on the way out.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem> {
    if !legal_pair(family, rank) {
        return Err(Error::domain(format!(
            "illegal root system {}_{rank}",
            family.letter()
        )));
    }
    let simples: Vec<Root> = simple_coords(family, rank)
        .into_iter()
        .map(|coords| Root { coords })
        .collect();

    let mut index: HashMap<Vec<i64>, RootId> = HashMap::new();
    let mut roots: Vec<Root> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for s in &simples {
        let id = RootId(roots.len() as u32);
        index.insert(s.coords.clone(), id);
        roots.push(s.clone());
        queue.push_back(id.0 as usize);
    }
    while let Some(i) = queue.pop_front() {
        for s in &simples {
            let r = &roots[i];
            let num = 2 * r.dot(s);
            let den = s.norm2();
            assert_eq!(num % den, 0, "Cartan integer must be integral");
            let k = num / den;
            let reflected: Vec<i64> = r
                .coords
                .iter()
                .zip(&s.coords)
                .map(|(&rc, &sc)| rc - k * sc)
                .collect();
            if !index.contains_key(&reflected) {
                let id = RootId(roots.len() as u32);
                index.insert(reflected.clone(), id);
                roots.push(Root { coords: reflected });
                queue.push_back(id.0 as usize);
            }
        }
    }

    let simple_ids: Vec<RootId> = simples.iter().map(|s| index[&s.coords]).collect();
    let mut rs = RootSystem {
        family,
        rank,
        roots,
        index,
        simples: simple_ids,
        simple_coeffs: Vec::new(),
    };
    rs.simple_coeffs = rs
        .roots
        .iter()
        .map(|r| {
            rs.coeffs_over(&rs.simples, r)
                .expect("every root lies in the simple span")
        })
        .collect();
    rs.check_invariants()?;
    Ok(rs)
}

impl RootSystem {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = RootId> {
        (0..self.roots.len() as u32).map(RootId)
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.roots[id.0 as usize]
    }

    pub fn simples(&self) -> &[RootId] {
        &self.simples
    }

    pub fn lookup(&self, coords: &[i64]) -> Option<RootId> {
        self.index.get(coords).copied()
    }

    pub fn negate(&self, id: RootId) -> RootId {
        self.lookup(&self.root(id).negated().coords)
            .expect("root systems are closed under negation")
    }

    /// `a + b` as a root, if it is one.
    pub fn sum(&self, a: RootId, b: RootId) -> Option<RootId> {
        let s: Vec<i64> = self
            .root(a)
            .coords
            .iter()
            .zip(&self.root(b).coords)
            .map(|(&x, &y)| x + y)
            .collect();
        self.lookup(&s)
    }

    /// `i*a + j*b` as a root, if it is one.
    pub fn combo(&self, a: RootId, i: i64, b: RootId, j: i64) -> Option<RootId> {
        let s: Vec<i64> = self
            .root(a)
            .coords
            .iter()
            .zip(&self.root(b).coords)
            .map(|(&x, &y)| i * x + j * y)
            .collect();
        self.lookup(&s)
    }

    /// Coefficients of the root over the fixed simple basis.
    pub fn simple_coeffs(&self, id: RootId) -> &[i64] {
        &self.simple_coeffs[id.0 as usize]
    }

    pub fn is_positive(&self, id: RootId) -> bool {
        self.simple_coeffs(id).iter().all(|&c| c >= 0)
    }

    /// Height over the simple basis: sum of |coefficients|.
    pub fn height(&self, id: RootId) -> i64 {
        self.simple_coeffs(id).iter().map(|&c| c.abs()).sum()
    }

    /// Exact integer coefficients of `gamma` over an independent root set, or
    /// `None` if `gamma` is outside the span or the coefficients are not
    /// integral.
    pub fn coeffs_over(&self, basis: &[RootId], gamma: &Root) -> Option<Vec<i64>> {
        let vecs: Vec<&Root> = basis.iter().map(|&b| self.root(b)).collect();
        let k = vecs.len();
        // Solve via the Gram system G x = b with exact Cramer determinants.
        let mut g = vec![vec![0i128; k]; k];
        let mut rhs = vec![0i128; k];
        for i in 0..k {
            rhs[i] = vecs[i].dot(gamma) as i128;
            for j in 0..k {
                g[i][j] = vecs[i].dot(vecs[j]) as i128;
            }
        }
        let det = det_i128(&g);
        if det == 0 {
            return None;
        }
        let mut coeffs = Vec::with_capacity(k);
        for col in 0..k {
            let mut gi = g.clone();
            for row in 0..k {
                gi[row][col] = rhs[row];
            }
            let di = det_i128(&gi);
            if di % det != 0 {
                return None;
            }
            coeffs.push((di / det) as i64);
        }
        // Confirm the solution reproduces gamma (it may be a least-squares
        // artifact when gamma is outside the span).
        let n = gamma.coords.len();
        for c in 0..n {
            let mut acc = 0i64;
            for (x, v) in coeffs.iter().zip(&vecs) {
                acc += x * v.coords[c];
            }
            if acc != gamma.coords[c] {
                return None;
            }
        }
        Some(coeffs)
    }

    /// Height of `gamma` against an arbitrary independent set.
    pub fn height_against(&self, basis: &[RootId], gamma: RootId) -> Option<i64> {
        self.coeffs_over(basis, self.root(gamma))
            .map(|cs| cs.iter().map(|&c| c.abs()).sum())
    }

    /// Rank of a set of roots, computed exactly.
    pub fn rank_of(&self, set: &[RootId]) -> usize {
        let mut m: Vec<Vec<i128>> = set
            .iter()
            .map(|&id| self.root(id).coords.iter().map(|&c| c as i128).collect())
            .collect();
        rank_i128(&mut m)
    }

    fn check_invariants(&self) -> Result<()> {
        let expected = classical_root_count(self.family, self.rank);
        if self.roots.len() != expected {
            return Err(Error::integrity(format!(
                "{}_{} produced {} roots, classical count is {expected}",
                self.family.letter(),
                self.rank,
                self.roots.len()
            )));
        }
        for id in self.ids() {
            let r = self.root(id);
            if self.lookup(&r.negated().coords).is_none() {
                return Err(Error::integrity(format!("{r} has no negative")));
            }
            // Only multiples of r in Phi are +-r.
            for other in self.ids() {
                if other == id {
                    continue;
                }
                let o = self.root(other);
                if r.dot(o) * r.dot(o) == r.norm2() * o.norm2() && o.coords != r.negated().coords {
                    return Err(Error::integrity(format!("{o} is a proper multiple of {r}")));
                }
            }
            // Closed under every reflection (not just the simple ones).
            for other in self.ids() {
                let o = self.root(other);
                let num = 2 * o.dot(r);
                let den = r.norm2();
                if num % den != 0 {
                    return Err(Error::integrity("non-integral Cartan pairing".to_string()));
                }
                let k = num / den;
                let reflected: Vec<i64> =
                    o.coords.iter().zip(&r.coords).map(|(&oc, &rc)| oc - k * rc).collect();
                if self.lookup(&reflected).is_none() {
                    return Err(Error::integrity(format!("reflection of {o} through {r} left Phi")));
                }
            }
            let cs = self.simple_coeffs(id);
            let pos = cs.iter().all(|&c| c >= 0);
            let neg = cs.iter().all(|&c| c <= 0);
            if !(pos || neg) {
                return Err(Error::integrity(format!("{r} has mixed simple coefficients")));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{} ({} roots)", self.family.letter(), self.rank, self.roots.len())
    }
}

/// The `rank + 1` roots whose deleted subsets define the coset-complex
/// subgroups. Every `rank`-subset is linearly independent.
#[derive(Clone, Debug)]
pub struct GeneratingSet {
    members: Vec<RootId>,
}

impl GeneratingSet {
    pub fn members(&self) -> &[RootId] {
        &self.members
    }

    pub fn without(&self, skip: RootId) -> Vec<RootId> {
        self.members.iter().copied().filter(|&m| m != skip).collect()
    }

    fn validate(rs: &RootSystem, members: Vec<RootId>) -> Result<GeneratingSet> {
        if members.len() != rs.rank() + 1 {
            return Err(Error::integrity("generating set must have rank+1 members".to_string()));
        }
        for skip in &members {
            let subset: Vec<RootId> = members.iter().copied().filter(|m| m != skip).collect();
            if rs.rank_of(&subset) != rs.rank() {
                return Err(Error::integrity(
                    "a rank-subset of the generating set is dependent".to_string(),
                ));
            }
        }
        Ok(GeneratingSet { members })
    }
}

/// The canonical choice `S = Pi ∪ {-(a_1 + ... + a_d)}`.
pub fn special_set(rs: &RootSystem) -> Result<GeneratingSet> {
    if rs.rank() < 2 {
        return Err(Error::domain("special set needs rank >= 2".to_string()));
    }
    let n = rs.root(rs.simples()[0]).coords().len();
    let mut sum = vec![0i64; n];
    for &s in rs.simples() {
        for (acc, &c) in sum.iter_mut().zip(rs.root(s).coords()) {
            *acc += c;
        }
    }
    let neg_sum: Vec<i64> = sum.iter().map(|&c| -c).collect();
    let last = rs
        .lookup(&neg_sum)
        .ok_or_else(|| Error::integrity("-(sum of simples) is not a root".to_string()))?;
    let mut members = rs.simples().to_vec();
    members.push(last);
    GeneratingSet::validate(rs, members)
}

/// The alternative rank-2 sets: `{a, b, -b-2a}` for B2 and
/// `{a, a+b, -2a-b}` for G2, with `a` the short simple root. These generate
/// the same groups but different subgroup shapes; the B2 one is the set
/// realized by the symplectic example subgroups.
pub fn alt_set(rs: &RootSystem) -> Result<GeneratingSet> {
    if rs.rank() != 2 {
        return Err(Error::domain("alternative sets are defined for rank 2".to_string()));
    }
    let (a, b) = {
        let s0 = rs.simples()[0];
        let s1 = rs.simples()[1];
        if rs.root(s0).norm2() < rs.root(s1).norm2() {
            (s0, s1)
        } else {
            (s1, s0)
        }
    };
    let members = match rs.family() {
        Family::B => {
            let last = rs
                .combo(a, -2, b, -1)
                .ok_or_else(|| Error::integrity("-b-2a is not a root".to_string()))?;
            vec![a, b, last]
        }
        Family::G => {
            let ab = rs.sum(a, b).ok_or_else(|| Error::integrity("a+b not a root".to_string()))?;
            let last = rs
                .combo(a, -2, b, -1)
                .ok_or_else(|| Error::integrity("-2a-b is not a root".to_string()))?;
            vec![a, ab, last]
        }
        _ => return Err(Error::domain("alternative set defined for B2 and G2 only".to_string())),
    };
    GeneratingSet::validate(rs, members)
}

/// True iff every root of `Phi` is an N-combination of `set`, computed by
/// closing `set` under root addition.
pub fn check_positive_span(rs: &RootSystem, set: &[RootId]) -> bool {
    let mut reached: HashSet<RootId> = set.iter().copied().collect();
    let mut queue: VecDeque<RootId> = reached.iter().copied().collect();
    while let Some(cur) = queue.pop_front() {
        for &s in set {
            if let Some(next) = rs.sum(cur, s) {
                if reached.insert(next) {
                    queue.push_back(next);
                }
            }
        }
    }
    reached.len() == rs.len()
}

/// Shape of the positive cone spanned by an independent pair, following the
/// four-case split of the rank-2 generation lemma (the last two shapes are
/// the ones the G2 link remark labels II and I).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConeCase {
    /// No positive combination is a root: the root subgroups commute.
    Commuting,
    /// `R' = {a+b}`.
    SumOnly,
    /// `R' = {a+b, 2a+b}` (up to orientation).
    B2,
    /// `R' = {a+b, 2a+b, a+2b}`; arises only inside G2.
    G2Five,
    /// `R' = {a+b, 2a+b, 3a+b, 3a+2b}` (up to orientation); the full G2 cone.
    G2Six,
}

/// A positive cone member: `i*a + j*b` with its coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConeRoot {
    pub i: i64,
    pub j: i64,
    pub id: RootId,
}

/// `{i*a + j*b in Phi : i, j >= 0, (i,j) != (0,0)}` plus its case label.
pub fn positive_cone(rs: &RootSystem, a: RootId, b: RootId) -> Result<(Vec<ConeRoot>, ConeCase)> {
    if rs.negate(a) == b {
        return Err(Error::domain("positive cone of an opposite pair".to_string()));
    }
    if a == b {
        return Err(Error::domain("positive cone needs two distinct roots".to_string()));
    }
    let mut cone = Vec::new();
    // Coefficients in a rank-2 root system never exceed 3.
    for i in 0..=4i64 {
        for j in 0..=4i64 {
            if i + j == 0 {
                continue;
            }
            if let Some(id) = rs.combo(a, i, b, j) {
                assert!(i <= 3 && j <= 3, "cone coefficient out of rank-2 range");
                cone.push(ConeRoot { i, j, id });
            }
        }
    }
    cone.sort_by_key(|c| (c.i + c.j, c.i));
    let inner: HashSet<(i64, i64)> =
        cone.iter().map(|c| (c.i, c.j)).filter(|&(i, j)| i >= 1 && j >= 1).collect();
    let case = match inner.len() {
        0 => ConeCase::Commuting,
        1 => ConeCase::SumOnly,
        2 => ConeCase::B2,
        3 => ConeCase::G2Five,
        4 => ConeCase::G2Six,
        n => return Err(Error::integrity(format!("cone with {n} interior roots"))),
    };
    Ok((cone, case))
}

/// Writes `gamma` as an ordered sum of elements of `A` whose every prefix sum
/// is a root. Backtracking over the candidates the inner-product argument
/// allows; the visited set keeps it linear in `|Phi|`.
pub fn prefix_decompose(rs: &RootSystem, gamma: RootId, set: &[RootId]) -> Result<Vec<RootId>> {
    fn go(
        rs: &RootSystem,
        target: RootId,
        set: &[RootId],
        dead: &mut HashSet<RootId>,
        depth: usize,
    ) -> Option<Vec<RootId>> {
        if depth > 8 * rs.len() {
            return None;
        }
        if set.contains(&target) {
            return Some(vec![target]);
        }
        if dead.contains(&target) {
            return None;
        }
        for &a in set {
            // Pick a in A with target . a > 0; then target - a is a root.
            if rs.root(target).dot(rs.root(a)) <= 0 {
                continue;
            }
            let rest: Vec<i64> = rs
                .root(target)
                .coords()
                .iter()
                .zip(rs.root(a).coords())
                .map(|(&t, &ac)| t - ac)
                .collect();
            if let Some(rest_id) = rs.lookup(&rest) {
                if let Some(mut seq) = go(rs, rest_id, set, dead, depth + 1) {
                    seq.push(a);
                    return Some(seq);
                }
            }
        }
        dead.insert(target);
        None
    }

    let mut dead = HashSet::new();
    let seq = go(rs, gamma, set, &mut dead, 0)
        .ok_or_else(|| Error::domain("gamma is not an N-combination of the set".to_string()))?;
    // Every prefix sum must be a root.
    let n = rs.root(gamma).coords().len();
    let mut acc = vec![0i64; n];
    for &s in &seq {
        for (a, &c) in acc.iter_mut().zip(rs.root(s).coords()) {
            *a += c;
        }
        assert!(rs.lookup(&acc).is_some(), "prefix sum left the root system");
    }
    assert_eq!(&acc[..], rs.root(gamma).coords());
    Ok(seq)
}

/// Writes `gamma = delta + eps` with both summands roots distinct from
/// `+-gamma`. Exists for every root once the rank is at least 2.
pub fn decompose_as_root_sum(rs: &RootSystem, gamma: RootId) -> Result<(RootId, RootId)> {
    if rs.rank() < 2 {
        return Err(Error::domain("root decomposition needs rank >= 2".to_string()));
    }
    let g = rs.root(gamma);
    let neg = rs.negate(gamma);
    for beta in rs.ids() {
        if beta == gamma || beta == neg {
            continue;
        }
        if g.dot(rs.root(beta)) <= 0 {
            continue;
        }
        let rest: Vec<i64> =
            g.coords().iter().zip(rs.root(beta).coords()).map(|(&a, &b)| a - b).collect();
        if let Some(rest_id) = rs.lookup(&rest) {
            return Ok((beta, rest_id));
        }
    }
    Err(Error::integrity("no decomposition found in an irreducible system of rank >= 2".to_string()))
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    // Fraction-free Bareiss elimination.
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let swap = (k + 1..n).find(|&r| a[r][k] != 0);
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn rank_i128(m: &mut [Vec<i128>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows).find(|&r| m[r][c] != 0);
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let (pc, rc) = (m[rank][c], m[r][c]);
                for j in 0..cols {
                    m[r][j] = m[r][j] * pc - m[rank][j] * rc;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_systems() -> Vec<RootSystem> {
        [
            (Family::A, 1),
            (Family::A, 2),
            (Family::A, 3),
            (Family::B, 2),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 4),
            (Family::G, 2),
            (Family::F, 4),
            (Family::E, 6),
            (Family::E, 7),
            (Family::E, 8),
        ]
        .into_iter()
        .map(|(f, d)| build_root_system(f, d).unwrap())
        .collect()
    }

    #[test]
    fn root_counts_match_the_classical_table() {
        // A2 has 6 roots, the B2 and G2 pictures show 8 and 12 arrows.
        assert_eq!(build_root_system(Family::A, 2).unwrap().len(), 6);
        assert_eq!(build_root_system(Family::B, 2).unwrap().len(), 8);
        assert_eq!(build_root_system(Family::G, 2).unwrap().len(), 12);
        for rs in all_systems() {
            assert_eq!(rs.len(), classical_root_count(rs.family(), rs.rank()));
        }
    }

    #[test]
    fn illegal_pairs_are_rejected() {
        assert!(build_root_system(Family::C, 2).is_err());
        assert!(build_root_system(Family::D, 3).is_err());
        assert!(build_root_system(Family::G, 3).is_err());
        assert!(build_root_system(Family::E, 9).is_err());
    }

    #[test]
    fn a2_roots_are_the_coordinate_differences() {
        let rs = build_root_system(Family::A, 2).unwrap();
        // All e_i - e_j, i != j, doubled, in R^3.
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let mut v = vec![0i64; 3];
                    v[i] = 2;
                    v[j] = -2;
                    assert!(rs.lookup(&v).is_some(), "missing 2(e_{i} - e_{j})");
                }
            }
        }
    }

    #[test]
    fn rootsum_fact_holds_exhaustively() {
        // a.b < 0 implies a+b in Phi ∪ {0}; a.b > 0 implies a-b in Phi ∪ {0}.
        for rs in all_systems() {
            for a in rs.ids() {
                for b in rs.ids() {
                    let dot = rs.root(a).dot(rs.root(b));
                    let sum: Vec<i64> = rs
                        .root(a)
                        .coords()
                        .iter()
                        .zip(rs.root(b).coords())
                        .map(|(&x, &y)| x + y)
                        .collect();
                    let diff: Vec<i64> = rs
                        .root(a)
                        .coords()
                        .iter()
                        .zip(rs.root(b).coords())
                        .map(|(&x, &y)| x - y)
                        .collect();
                    if dot < 0 {
                        assert!(
                            sum.iter().all(|&c| c == 0) || rs.lookup(&sum).is_some(),
                            "{:?}: {} + {} missing",
                            rs,
                            rs.root(a),
                            rs.root(b)
                        );
                    }
                    if dot > 0 {
                        assert!(diff.iter().all(|&c| c == 0) || rs.lookup(&diff).is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn special_set_shape() {
        let rs = build_root_system(Family::A, 2).unwrap();
        let s = special_set(&rs).unwrap();
        assert_eq!(s.members().len(), 3);
        // -(a1 + a2) is a root and is the last member.
        let last = s.members()[2];
        let expect: Vec<i64> = rs
            .root(rs.simples()[0])
            .coords()
            .iter()
            .zip(rs.root(rs.simples()[1]).coords())
            .map(|(&a, &b)| -(a + b))
            .collect();
        assert_eq!(rs.root(last).coords(), &expect[..]);
    }

    #[test]
    fn special_set_last_member_in_a_d_is_e_last_minus_e_first() {
        // With Pi = {e_i - e_(i+1)}, the extra member is e_d - e_1 (doubled,
        // in R^(d+1) with 1-based labels: 2(e_(d+1)-ish)).
        for d in 2..=4usize {
            let rs = build_root_system(Family::A, d).unwrap();
            let s = special_set(&rs).unwrap();
            let last = rs.root(s.members()[d]);
            let mut expect = vec![0i64; d + 1];
            expect[d] = 2;
            expect[0] = -2;
            assert_eq!(last.coords(), &expect[..]);
        }
    }

    #[test]
    fn special_set_exists_for_every_supported_family() {
        for rs in all_systems() {
            if rs.rank() < 2 {
                continue;
            }
            let s = special_set(&rs).unwrap();
            assert_eq!(s.members().len(), rs.rank() + 1);
            assert!(check_positive_span(&rs, s.members()), "{rs:?}");
            // Every rank-subset passes the rank test (validated in the
            // constructor, but assert the public surface too).
            for &skip in s.members() {
                assert_eq!(rs.rank_of(&s.without(skip)), rs.rank());
            }
        }
    }

    #[test]
    fn positive_span_checks() {
        let a2 = build_root_system(Family::A, 2).unwrap();
        let s = special_set(&a2).unwrap();
        assert!(check_positive_span(&a2, s.members()));
        assert!(!check_positive_span(&a2, a2.simples()));

        // In B2 one can take {a, b, -b-2a} with a the short simple root.
        let b2 = build_root_system(Family::B, 2).unwrap();
        let alt = alt_set(&b2).unwrap();
        assert!(check_positive_span(&b2, alt.members()));

        let g2 = build_root_system(Family::G, 2).unwrap();
        let galt = alt_set(&g2).unwrap();
        assert!(check_positive_span(&g2, galt.members()));
    }

    #[test]
    fn positive_cone_cases() {
        let a2 = build_root_system(Family::A, 2).unwrap();
        let (cone, case) = positive_cone(&a2, a2.simples()[0], a2.simples()[1]).unwrap();
        assert_eq!(case, ConeCase::SumOnly);
        assert_eq!(cone.len(), 3);

        let b2 = build_root_system(Family::B, 2).unwrap();
        let (short, long) = {
            let (s0, s1) = (b2.simples()[0], b2.simples()[1]);
            if b2.root(s0).norm2() < b2.root(s1).norm2() {
                (s0, s1)
            } else {
                (s1, s0)
            }
        };
        let (cone, case) = positive_cone(&b2, short, long).unwrap();
        assert_eq!(case, ConeCase::B2);
        // Positive roots a, b, a+b, 2a+b.
        assert_eq!(cone.len(), 4);
        assert!(cone.iter().any(|c| (c.i, c.j) == (2, 1)));

        // Orthogonal pair without a root sum.
        let e1_minus_e2 = b2.lookup(&[2, -2]).unwrap();
        let e1_plus_e2_neg = b2.lookup(&[-2, -2]).unwrap();
        let (cone, case) = positive_cone(&b2, e1_minus_e2, e1_plus_e2_neg).unwrap();
        assert_eq!(case, ConeCase::Commuting);
        assert_eq!(cone.len(), 2);

        assert!(positive_cone(&a2, a2.simples()[0], a2.negate(a2.simples()[0])).is_err());
    }

    #[test]
    fn g2_cone_cases() {
        let g2 = build_root_system(Family::G, 2).unwrap();
        let (short, long) = {
            let (s0, s1) = (g2.simples()[0], g2.simples()[1]);
            if g2.root(s0).norm2() < g2.root(s1).norm2() {
                (s0, s1)
            } else {
                (s1, s0)
            }
        };
        let (cone, case) = positive_cone(&g2, short, long).unwrap();
        assert_eq!(case, ConeCase::G2Six);
        assert_eq!(cone.len(), 6);

        // Short pair at 120 degrees: (a, a+b).
        let ab = g2.sum(short, long).unwrap();
        let (cone, case) = positive_cone(&g2, short, ab).unwrap();
        assert_eq!(case, ConeCase::G2Five);
        assert_eq!(cone.len(), 5);
    }

    #[test]
    fn positive_cone_matches_brute_force() {
        // The cone equals Phi ∩ {ia + jb : i,j in N} for every usable pair.
        for rs in [build_root_system(Family::B, 2).unwrap(), build_root_system(Family::G, 2).unwrap()]
        {
            for a in rs.ids() {
                for b in rs.ids() {
                    if a == b || rs.negate(a) == b {
                        continue;
                    }
                    let (cone, _) = positive_cone(&rs, a, b).unwrap();
                    let brute: Vec<(i64, i64)> = (0..=6)
                        .flat_map(|i| (0..=6).map(move |j| (i, j)))
                        .filter(|&(i, j)| i + j > 0 && rs.combo(a, i, b, j).is_some())
                        .collect();
                    assert_eq!(cone.len(), brute.len());
                }
            }
        }
    }

    #[test]
    fn prefix_decompose_examples() {
        let a2 = build_root_system(Family::A, 2).unwrap();
        let (a, b) = (a2.simples()[0], a2.simples()[1]);
        let ab = a2.sum(a, b).unwrap();
        let seq = prefix_decompose(&a2, ab, &[a, b]).unwrap();
        assert_eq!(seq.len(), 2);

        // Identity case.
        assert_eq!(prefix_decompose(&a2, a, &[a]).unwrap(), vec![a]);

        // 2a+b in B2: the only valid orderings keep prefixes inside Phi.
        let b2 = build_root_system(Family::B, 2).unwrap();
        let (short, long) = {
            let (s0, s1) = (b2.simples()[0], b2.simples()[1]);
            if b2.root(s0).norm2() < b2.root(s1).norm2() {
                (s0, s1)
            } else {
                (s1, s0)
            }
        };
        let target = b2.combo(short, 2, long, 1).unwrap();
        let seq = prefix_decompose(&b2, target, &[short, long]).unwrap();
        assert_eq!(seq.len(), 3);
        // Oracle: enumerate all orderings of {a, a, b} and collect the valid
        // ones; ours must be among them.
        let opts = [
            vec![short, long, short],
            vec![long, short, short],
            vec![short, short, long],
        ];
        let valid: Vec<&Vec<RootId>> = opts
            .iter()
            .filter(|perm| {
                let mut acc = vec![0i64; 2];
                perm.iter().all(|&s| {
                    for (x, &c) in acc.iter_mut().zip(b2.root(s).coords()) {
                        *x += c;
                    }
                    b2.lookup(&acc).is_some()
                })
            })
            .collect();
        assert!(!valid.is_empty());
        assert!(valid.iter().any(|v| v[..] == seq[..]));

        // Not in the N-span: a negative root against the simples.
        assert!(prefix_decompose(&a2, a2.negate(a), &[a, b]).is_err());
    }

    #[test]
    fn root_sum_decomposition() {
        let a2 = build_root_system(Family::A, 2).unwrap();
        let a1 = a2.simples()[0];
        let (d, e) = decompose_as_root_sum(&a2, a1).unwrap();
        // Validity, plus membership in the exhaustively computed set of
        // decompositions.
        let mut valid = Vec::new();
        for x in a2.ids() {
            for y in a2.ids() {
                if a2.sum(x, y) == Some(a1)
                    && ![x, y].contains(&a1)
                    && ![x, y].contains(&a2.negate(a1))
                {
                    valid.push((x, y));
                }
            }
        }
        assert!(valid.contains(&(d, e)));

        // Every root of B2 decomposes.
        let b2 = build_root_system(Family::B, 2).unwrap();
        for g in b2.ids() {
            let (d, e) = decompose_as_root_sum(&b2, g).unwrap();
            assert_eq!(b2.sum(d, e), Some(g));
        }

        let a1sys = build_root_system(Family::A, 1).unwrap();
        let first = a1sys.ids().next().unwrap();
        assert!(decompose_as_root_sum(&a1sys, first).is_err());
    }

    #[test]
    fn heights_over_simples() {
        let b2 = build_root_system(Family::B, 2).unwrap();
        let highest: i64 = b2.ids().map(|id| b2.height(id)).max().unwrap();
        assert_eq!(highest, 3); // 2a+b
        let g2 = build_root_system(Family::G, 2).unwrap();
        assert_eq!(g2.ids().map(|id| g2.height(id)).max().unwrap(), 5); // 3a+2b
    }
}
