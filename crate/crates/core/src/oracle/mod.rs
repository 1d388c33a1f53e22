//! Brute-force reference implementations.
//!
//! Everything here re-derives its answer from definitions: subgroups by
//! closure, cosets and orbits as explicit sets, minima by scanning. Nothing
//! is shared with the fast paths beyond the multiplication table, and none
//! of it is meant to be fast.

pub mod suite;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitMatrix;
use crate::pieces::{PieceError, TwistedSequence};
use crate::rootsys::{CartanDatum, Family};
use crate::twist::{Twist, TwistError};
use crate::weyl::{CosetKind, ElemId, Group, Side, Subset};

/// Longest reduced word the subword oracle will expand.
pub const MAX_SUBWORD_LENGTH: usize = 20;
/// Largest `J` the subset-scanning oracle will accept.
pub const MAX_SCAN_SUBSET: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} of size {size} exceeds the oracle limit {limit}")]
    TooExpensive {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("oracle found an inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Piece(#[from] PieceError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub got: String,
}

/// Outcome of one check. A check passed iff `failures` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub check_name: String,
    pub instances_checked: usize,
    pub failures: Vec<Failure>,
    /// Why part of the check was not run, if any of it was skipped.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl OracleReport {
    pub fn new(check_name: impl Into<String>) -> Self {
        OracleReport {
            check_name: check_name.into(),
            instances_checked: 0,
            failures: Vec::new(),
            note: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one instance, failing it unless `expected == got`.
    pub fn compare<T: PartialEq + std::fmt::Debug>(&mut self, input: impl FnOnce() -> String, expected: T, got: T) {
        self.instances_checked += 1;
        if expected != got {
            self.failures.push(Failure {
                input: input(),
                expected: format!("{expected:?}"),
                got: format!("{got:?}"),
            });
        }
    }

    pub fn fail(&mut self, input: String, expected: impl Into<String>, got: impl Into<String>) {
        self.failures.push(Failure {
            input,
            expected: expected.into(),
            got: got.into(),
        });
    }

    pub fn merge(&mut self, other: OracleReport) {
        self.instances_checked += other.instances_checked;
        self.failures.extend(other.failures);
        if other.note.is_some() && self.note.is_none() {
            self.note = other.note;
        }
    }
}

/// `|W|` from the closed formulas, independent of any enumeration.
pub fn expected_group_order(family: Family, rank: usize) -> u64 {
    let fact = |n: usize| (1..=n as u64).product::<u64>();
    match (family, rank) {
        (Family::A, n) => fact(n + 1),
        (Family::B | Family::C, n) => (1u64 << n) * fact(n),
        (Family::D, n) => (1u64 << (n - 1)) * fact(n),
        (Family::E, 6) => 51_840,
        (Family::E, 7) => 2_903_040,
        (Family::E, 8) => 696_729_600,
        (Family::F, 4) => 1_152,
        (Family::G, 2) => 12,
        (f, n) => panic!("no closed form for {f}{n}"),
    }
}

/// Positive roots grown by `alpha`-strings: `beta + alpha_i` is a root iff
/// `q = p - <beta, alpha_i^vee> > 0`, where `p` is how far the `alpha_i`-string
/// through `beta` extends downwards. Sorted lexicographically by coordinates.
pub fn positive_roots_by_strings(cartan: &CartanDatum) -> Vec<Vec<i32>> {
    let n = cartan.rank();
    let simple = |i: usize| {
        let mut c = vec![0; n];
        c[i] = 1;
        c
    };
    let mut found: BTreeSet<Vec<i32>> = (0..n).map(simple).collect();
    let mut layer: Vec<Vec<i32>> = (0..n).map(simple).collect();
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                let pairing: i32 = (0..n).map(|j| beta[j] * cartan.entry(i, j)).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if found.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        layer = next.into_iter().filter(|r| !found.contains(r)).collect();
        found.extend(layer.iter().cloned());
    }
    found.into_iter().collect()
}

fn compose(a: &[u8], b: &[u8]) -> Vec<u8> {
    b.iter().map(|&r| a[r as usize]).collect()
}

fn identity_perm(g: &Group) -> Vec<u8> {
    (0..g.root_system().num_roots() as u8).collect()
}

/// `u <= v` iff some subsequence of a fixed reduced word of `v` multiplies
/// to `u`; all `2^{l(v)}` subsequences are tried.
pub fn bruhat_oracle(g: &Group, u: ElemId, v: ElemId) -> Result<bool, OracleError> {
    let word = g.canonical_word(v);
    let l = word.len();
    if l > MAX_SUBWORD_LENGTH {
        return Err(OracleError::TooExpensive {
            what: "reduced word",
            size: l,
            limit: MAX_SUBWORD_LENGTH,
        });
    }
    let rs = g.root_system();
    let target = g.perm(u);
    for mask in 0u32..(1 << l) {
        let mut p = identity_perm(g);
        for (k, &a) in word.letters().iter().enumerate() {
            if mask >> k & 1 == 1 {
                p = compose(&p, rs.reflection_table(a as usize));
            }
        }
        if p == target {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The set of products of subsequences of a fixed reduced word of `v`, as
/// root permutations. Same set as `bruhat_oracle` ranges over, built one
/// letter at a time.
pub fn subword_products(g: &Group, v: ElemId) -> Result<HashSet<Vec<u8>>, OracleError> {
    let word = g.canonical_word(v);
    if word.len() > MAX_SUBWORD_LENGTH {
        return Err(OracleError::TooExpensive {
            what: "reduced word",
            size: word.len(),
            limit: MAX_SUBWORD_LENGTH,
        });
    }
    let rs = g.root_system();
    let mut set = HashSet::from([identity_perm(g)]);
    for &a in word.letters() {
        let extra: Vec<Vec<u8>> = set
            .iter()
            .map(|p| compose(p, rs.reflection_table(a as usize)))
            .collect();
        set.extend(extra);
    }
    Ok(set)
}

/// `W_J` as the closure of `{e}` under right multiplication by `s_j`, `j ∈ J`.
pub fn parabolic_subgroup(g: &Group, j: Subset) -> Vec<ElemId> {
    let mut seen = HashSet::from([g.identity()]);
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(w) = queue.pop_front() {
        for i in j.iter() {
            let x = g.multiply(w, g.simple(i));
            if seen.insert(x) {
                queue.push_back(x);
            }
        }
    }
    let mut out: Vec<ElemId> = seen.into_iter().collect();
    out.sort();
    out
}

fn unique_min(g: &Group, set: &[ElemId], what: &str) -> Result<ElemId, OracleError> {
    let min_len = set.iter().map(|&x| g.length(x)).min().expect("nonempty set");
    let mins: Vec<ElemId> = set.iter().copied().filter(|&x| g.length(x) == min_len).collect();
    match mins[..] {
        [m] => Ok(m),
        _ => Err(OracleError::Inconsistent(format!(
            "{what} has {} elements of minimal length",
            mins.len()
        ))),
    }
}

/// The shortest element of `w W_J` (right side) or `W_J w` (left side),
/// found by listing the coset.
pub fn coset_scan_min(g: &Group, w: ElemId, j: Subset, side: Side) -> Result<ElemId, OracleError> {
    let coset: Vec<ElemId> = parabolic_subgroup(g, j)
        .into_iter()
        .map(|x| match side {
            Side::Right => g.multiply(w, x),
            Side::Left => g.multiply(x, w),
        })
        .collect();
    unique_min(g, &coset, "coset")
}

/// `W_J w W_K` as a sorted list.
pub fn double_coset(g: &Group, j: Subset, w: ElemId, k: Subset) -> Vec<ElemId> {
    let wk = parabolic_subgroup(g, k);
    let mut set = BTreeSet::new();
    for x in parabolic_subgroup(g, j) {
        let xw = g.multiply(x, w);
        for &y in &wk {
            set.insert(g.multiply(xw, y));
        }
    }
    set.into_iter().collect()
}

/// `^J W^K`: the shortest element of every double coset.
pub fn double_coset_minima(g: &Group, j: Subset, k: Subset) -> Result<Vec<ElemId>, OracleError> {
    let mut covered = vec![false; g.order()];
    let mut out = Vec::new();
    for w in g.elements() {
        if covered[w.index()] {
            continue;
        }
        let dc = double_coset(g, j, w, k);
        for x in &dc {
            covered[x.index()] = true;
        }
        out.push(unique_min(g, &dc, "double coset")?);
    }
    out.sort();
    Ok(out)
}

/// `delta(x) y x^{-1}` for every `x ∈ W_J`, collected into a sorted set.
/// `delta(x)` is taken letter by letter from a reduced word of `x`.
pub fn twisted_orbit(tw: &Twist, y: ElemId, j: Subset) -> Vec<ElemId> {
    let g = tw.group();
    let set: BTreeSet<ElemId> = parabolic_subgroup(g, j)
        .into_iter()
        .map(|x| g.multiply(g.multiply(tw.delta_by_word(x), y), g.inverse(x)))
        .collect();
    set.into_iter().collect()
}

/// Elements of an orbit with no strictly smaller orbit member in Bruhat order.
pub fn bruhat_minimal(g: &Group, orbit: &[ElemId]) -> Vec<ElemId> {
    orbit
        .iter()
        .copied()
        .filter(|&v| !orbit.iter().any(|&u| u != v && g.bruhat_leq(u, v)))
        .collect()
}

/// Elements of an orbit of minimal length.
pub fn length_minimal(g: &Group, orbit: &[ElemId]) -> Vec<ElemId> {
    let m = orbit.iter().map(|&x| g.length(x)).min().unwrap_or(0);
    orbit.iter().copied().filter(|&x| g.length(x) == m).collect()
}

/// Whether `{w alpha_k : k ∈ K} = {alpha_j : j ∈ delta(K)}` as sets of roots.
fn ad_matches_delta(tw: &Twist, w: ElemId, k: Subset) -> bool {
    let g = tw.group();
    let rs = g.root_system();
    let images: BTreeSet<Vec<i32>> = k
        .iter()
        .map(|i| rs.root(g.apply(w, rs.simple_root(i))).coords().to_vec())
        .collect();
    let targets: BTreeSet<Vec<i32>> = tw
        .delta()
        .apply_set(k)
        .iter()
        .map(|i| rs.root(rs.simple_root(i)).coords().to_vec())
        .collect();
    images == targets
}

/// `max{K ⊆ J : Ad(w)(K) = delta(K)}` by scanning every subset of `J`. The
/// union of all valid subsets is checked to be valid itself, so the maximum
/// is unique.
pub fn i_j_delta_oracle(tw: &Twist, j: Subset, w: ElemId) -> Result<Subset, OracleError> {
    if j.len() > MAX_SCAN_SUBSET {
        return Err(OracleError::TooExpensive {
            what: "subset J",
            size: j.len(),
            limit: MAX_SCAN_SUBSET,
        });
    }
    let valid: Vec<Subset> = j.subsets().filter(|&k| ad_matches_delta(tw, w, k)).collect();
    let union = valid.iter().fold(Subset::EMPTY, |a, &b| a.union(b));
    if !ad_matches_delta(tw, w, union) {
        return Err(OracleError::Inconsistent(format!(
            "union {union} of valid subsets is not valid"
        )));
    }
    Ok(union)
}

/// Every sequence `(J_n, w_n)` satisfying
/// (a) `J_0 = J`;
/// (b) `J_n = J_{n-1} ∩ Ad(w_{n-1}) delta(J_{n-1})`;
/// (c) `w_n ∈ ^{J_n} W^{delta(J_n)}`;
/// (d) `w_n ∈ W_{J_n} w_{n-1} W_{delta(J_{n-1})}`;
/// with every admissible `w_n` branched on. Each sequence is listed up to
/// the first pair that repeats, which then repeats forever.
pub fn enumerate_t_sequences(tw: &Twist, j: Subset) -> Result<Vec<TwistedSequence>, OracleError> {
    let g = tw.group();
    let d = tw.delta();
    let depth_limit = 2 * g.rank() + 4;
    let mut minima: HashMap<Subset, HashSet<ElemId>> = HashMap::new();
    let mut minima_for = |k: Subset| -> Result<HashSet<ElemId>, OracleError> {
        if let Some(s) = minima.get(&k) {
            return Ok(s.clone());
        }
        let s: HashSet<ElemId> = double_coset_minima(g, k, d.apply_set(k))?.into_iter().collect();
        minima.insert(k, s.clone());
        Ok(s)
    };
    // Ad(w)(S) as a set of simple indices; roots not simple are dropped.
    let ad = |w: ElemId, s: Subset| {
        let rs = g.root_system();
        let mut out = Subset::EMPTY;
        for i in s.iter() {
            if let Some(t) = rs.simple_index_of(g.apply(w, rs.simple_root(i))) {
                out.insert(t);
            }
        }
        out
    };

    let mut done = Vec::new();
    let mut stack: Vec<Vec<(Subset, ElemId)>> = {
        let mut starts: Vec<ElemId> = minima_for(j)?.into_iter().collect();
        starts.sort();
        starts.into_iter().rev().map(|w| vec![(j, w)]).collect()
    };
    while let Some(steps) = stack.pop() {
        let (jp, wp) = *steps.last().unwrap();
        if steps.len() > depth_limit {
            return Err(OracleError::Inconsistent(format!(
                "sequence from J = {j} did not stabilize within {depth_limit} steps"
            )));
        }
        let jn = jp.intersection(ad(wp, d.apply_set(jp)));
        let admissible = minima_for(jn)?;
        let mut candidates: Vec<ElemId> = double_coset(g, jn, wp, d.apply_set(jp))
            .into_iter()
            .filter(|x| admissible.contains(x))
            .collect();
        candidates.sort();
        for wn in candidates.into_iter().rev() {
            if (jn, wn) == (jp, wp) {
                done.push(TwistedSequence {
                    j,
                    steps: steps.clone(),
                });
            } else {
                let mut next = steps.clone();
                next.push((jn, wn));
                stack.push(next);
            }
        }
    }
    Ok(done)
}

/// `<=_{J, delta}` on `W^J`, with the quantifier over `v' ∈ (W_J · w')_min`
/// read both ways.
#[derive(Debug, Clone)]
pub struct ClosureOracle {
    /// `W^J` in the global order; row and column indices refer to it.
    pub reps: Vec<ElemId>,
    /// `∃ v' ∃ v : v <= v'`.
    pub some: BitMatrix,
    /// `∀ v' ∃ v : v <= v'`.
    pub every: BitMatrix,
}

pub fn closure_oracle(tw: &Twist, j: Subset) -> Result<ClosureOracle, OracleError> {
    let g = tw.group();
    let reps: Vec<ElemId> = g
        .elements()
        .filter(|&w| coset_scan_min(g, w, j, Side::Right).is_ok_and(|m| m == w))
        .collect();
    let mins: Vec<Vec<ElemId>> = reps
        .iter()
        .map(|&w| length_minimal(g, &twisted_orbit(tw, w, j)))
        .collect();
    let n = reps.len();
    let mut some = BitMatrix::new(n);
    let mut every = BitMatrix::new(n);
    for b in 0..n {
        let below: Vec<HashSet<Vec<u8>>> = mins[b]
            .iter()
            .map(|&vp| subword_products(g, vp))
            .collect::<Result<_, _>>()?;
        for a in 0..n {
            let hit = |set: &HashSet<Vec<u8>>| mins[a].iter().any(|&v| set.contains(g.perm(v)));
            some.set(a, b, below.iter().any(hit));
            every.set(a, b, below.iter().all(hit));
        }
    }
    Ok(ClosureOracle { reps, some, every })
}

/// Irreducibility read off the proof: with `K = I(J, delta; w^{-1})`, the
/// coset `w W_K` lies in no `W_{J'}` for a `delta`-stable proper `J' ⊂ I`.
pub fn irreducible_oracle(tw: &Twist, j: Subset, w: ElemId) -> Result<bool, OracleError> {
    let g = tw.group();
    let full = Subset::full(g.rank());
    if j == full {
        return Err(PieceError::NotApplicable.into());
    }
    if !g.is_min_rep(w, CosetKind::Left(j)) {
        return Err(PieceError::NotLeftMinimal {
            word: g.format(w),
            j,
        }
        .into());
    }
    let k = i_j_delta_oracle(tw, j, g.inverse(w))?;
    let coset: Vec<ElemId> = parabolic_subgroup(g, k)
        .into_iter()
        .map(|x| g.multiply(w, x))
        .collect();
    for jp in Subset::all(g.rank()) {
        if jp == full || tw.delta().apply_set(jp) != jp {
            continue;
        }
        let sub: HashSet<ElemId> = parabolic_subgroup(g, jp).into_iter().collect();
        if coset.iter().all(|x| sub.contains(x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;
    use crate::twist::DiagramAutomorphism;

    fn group(label: &str) -> Group {
        Group::new(RootSystem::new(label.parse().unwrap()).unwrap()).unwrap()
    }

    fn twist<'g>(g: &'g Group, delta: &str) -> Twist<'g> {
        let d = DiagramAutomorphism::parse(delta, g.root_system().cartan()).unwrap();
        Twist::new(g, d).unwrap()
    }

    #[test]
    fn closed_form_orders() {
        assert_eq!(expected_group_order(Family::A, 3), 24);
        assert_eq!(expected_group_order(Family::B, 3), 48);
        assert_eq!(expected_group_order(Family::D, 4), 192);
        assert_eq!(expected_group_order(Family::E, 7), 2_903_040);
    }

    #[test]
    fn string_roots() {
        let g2: CartanDatum = "G2".parse().unwrap();
        assert_eq!(positive_roots_by_strings(&g2).len(), 6);
        let a2: CartanDatum = "A2".parse().unwrap();
        assert_eq!(positive_roots_by_strings(&a2), vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        let e8: CartanDatum = "E8".parse().unwrap();
        assert_eq!(positive_roots_by_strings(&e8).len(), 120);
    }

    #[test]
    fn bruhat_oracle_examples() {
        let g = group("A2");
        for v in g.elements() {
            assert!(bruhat_oracle(&g, g.identity(), v).unwrap());
            assert!(bruhat_oracle(&g, v, v).unwrap());
            let set = subword_products(&g, v).unwrap();
            for u in g.elements() {
                assert_eq!(bruhat_oracle(&g, u, v).unwrap(), g.bruhat_leq(u, v));
                assert_eq!(set.contains(g.perm(u)), g.bruhat_leq(u, v));
            }
        }
        let a1 = group("A1");
        assert!(bruhat_oracle(&a1, a1.identity(), a1.simple(0)).unwrap());
    }

    #[test]
    fn stabilizer_scan_examples() {
        let g = group("A2");
        let flip = twist(&g, "flip");
        let w = g.parse_element("1,2").unwrap();
        assert_eq!(i_j_delta_oracle(&flip, Subset::singleton(0), w).unwrap(), Subset::singleton(0));
        let id = twist(&g, "id");
        let j = Subset::full(2);
        assert_eq!(i_j_delta_oracle(&id, j, g.identity()).unwrap(), j);
    }

    #[test]
    fn sequence_enumeration_counts() {
        let g = group("A2");
        let id = twist(&g, "id");
        assert_eq!(enumerate_t_sequences(&id, Subset::EMPTY).unwrap().len(), 6);
        assert_eq!(enumerate_t_sequences(&id, Subset::singleton(0)).unwrap().len(), 3);
        let b2 = group("B2");
        let id = twist(&b2, "id");
        for j in Subset::all(2) {
            let n = b2.min_reps(CosetKind::Right(j)).len();
            assert_eq!(enumerate_t_sequences(&id, j).unwrap().len(), n);
        }
    }

    #[test]
    fn closure_oracle_examples() {
        let g = group("A2");
        let id = twist(&g, "id");
        let c = closure_oracle(&id, Subset::singleton(0)).unwrap();
        assert_eq!(c.reps.len(), 3);
        // a total order: exactly 6 related pairs among 3 nodes
        let count = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).filter(|&(a, b)| c.some.get(a, b)).count();
        assert_eq!(count, 6);
        assert_eq!(c.some, c.every);
        let flat = closure_oracle(&id, Subset::EMPTY).unwrap();
        for u in g.elements() {
            for v in g.elements() {
                assert_eq!(flat.some.get(u.index(), v.index()), g.bruhat_leq(u, v));
            }
        }
    }

    #[test]
    fn irreducibility_oracle_examples() {
        let g = group("A2");
        let flip = twist(&g, "flip");
        let j = Subset::singleton(0);
        assert!(!irreducible_oracle(&flip, j, g.identity()).unwrap());
        assert!(irreducible_oracle(&flip, j, g.simple(1)).unwrap());
        assert!(irreducible_oracle(&flip, Subset::full(2), g.identity()).is_err());
    }
}
