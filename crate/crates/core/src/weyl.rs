//! Weyl groups as permutation groups on roots.
//!
//! Every element is stored as the permutation it induces on the root index
//! set of a [`RootSystem`]; multiplication is composition and the length is
//! the number of positive roots sent to negative ones. A [`Group`] enumerates
//! the whole group once, in a fixed order (length, then lexicographically
//! smallest reduced word), and hands out [`ElemId`]s into that table.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::bits::BitMatrix;
use crate::rootsys::RootSystem;

/// Default ceiling on the group order accepted by [`Group::new`].
pub const DEFAULT_MAX_ELEMENTS: usize = 2_000_000;

/// Groups up to this order get a materialized Bruhat relation matrix;
/// larger ones answer Bruhat queries by descent recursion.
pub const BRUHAT_MATRIX_LIMIT: usize = 6000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("group order exceeds the element ceiling of {limit}")]
    TooLarge { limit: usize },
    #[error("elements act on {left} and {right} roots; they belong to different root systems")]
    MismatchedSystems { left: usize, right: usize },
    #[error("permutation is not an element of this Weyl group")]
    NotInGroup,
    #[error("invalid word `{0}`: expected `e` or comma-separated 1-based simple indices")]
    BadWord(String),
    #[error("simple index {letter} out of range 1..={rank}")]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("invalid subset `{0}`: expected comma-separated 1-based simple indices")]
    BadSubset(String),
}

/// Index of an element in a [`Group`] table. The identity is always 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemId(u32);

impl ElemId {
    pub const IDENTITY: ElemId = ElemId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        ElemId(i as u32)
    }
}

/// A subset of the simple indices `I`, as a bitmask (bit `i` is `alpha_{i+1}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u16);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u16) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn full(rank: usize) -> Self {
        Subset(((1u32 << rank) - 1) as u16)
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |&i| self.contains(i))
    }

    /// All subsets of `{0..rank}`, in increasing bitmask order.
    pub fn all(rank: usize) -> impl Iterator<Item = Subset> {
        (0..1u32 << rank).map(|b| Subset(b as u16))
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0 as u32;
        (0..=full)
            .filter(move |b| b & !full == 0)
            .map(|b| Subset(b as u16))
    }

    /// 1-based indices, for serialization.
    pub fn one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// Parses `"1,3"` (1-based); the empty string is the empty set.
    pub fn parse(s: &str, rank: usize) -> Result<Subset, WeylError> {
        let s = s.trim();
        let mut out = Subset::EMPTY;
        if s.is_empty() {
            return Ok(out);
        }
        for part in s.split(',') {
            let i: usize = part
                .trim()
                .parse()
                .map_err(|_| WeylError::BadSubset(s.to_string()))?;
            if i == 0 || i > rank {
                return Err(WeylError::LetterOutOfRange { letter: i, rank });
            }
            out.insert(i - 1);
        }
        Ok(out)
    }

    /// `"1,3"`, empty string for the empty set.
    pub fn to_list(self) -> String {
        self.one_based()
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_list())
    }
}

/// A word in the simple reflections, letters 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (k, &i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i as usize + 1)?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WeylError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "e" {
            return Ok(Word::default());
        }
        let bad = || WeylError::BadWord(s.to_string());
        let mut letters = Vec::new();
        for part in t.split(',') {
            let part = part.trim();
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let i: usize = part.parse().map_err(|_| bad())?;
            if i == 0 || i > u8::MAX as usize {
                return Err(bad());
            }
            letters.push((i - 1) as u8);
        }
        Ok(Word(letters))
    }
}

/// A Weyl group element as the permutation of root indices it induces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<u8>,
}

impl WeylElement {
    pub fn from_perm(perm: Vec<u8>) -> Self {
        WeylElement { perm }
    }

    pub fn perm(&self) -> &[u8] {
        &self.perm
    }

    /// Image of root `r`.
    pub fn apply(&self, r: usize) -> usize {
        self.perm[r] as usize
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &WeylElement) -> Result<WeylElement, WeylError> {
        if self.perm.len() != other.perm.len() {
            return Err(WeylError::MismatchedSystems {
                left: self.perm.len(),
                right: other.perm.len(),
            });
        }
        Ok(WeylElement {
            perm: other.perm.iter().map(|&r| self.perm[r as usize]).collect(),
        })
    }

    pub fn inverse(&self) -> WeylElement {
        let mut inv = vec![0u8; self.perm.len()];
        for (r, &image) in self.perm.iter().enumerate() {
            inv[image as usize] = r as u8;
        }
        WeylElement { perm: inv }
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        let np = self.perm.len() / 2;
        self.perm[..np].iter().filter(|&&r| r as usize >= np).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Cosets `W_J w`.
    Left,
    /// Cosets `w W_J`.
    Right,
}

/// Which family of minimal coset representatives to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetKind {
    /// `W^J`: minimal in `w W_J`.
    Right(Subset),
    /// `^J W`: minimal in `W_J w`.
    Left(Subset),
    /// `^J W^K`: minimal in `W_J w W_K`.
    Double { left: Subset, right: Subset },
}

/// The enumerated Weyl group of a root system.
#[derive(Debug)]
pub struct Group {
    rs: RootSystem,
    stride: usize,
    perms: Vec<u8>,
    lengths: Vec<u16>,
    inverse: Vec<ElemId>,
    lmul: Vec<Vec<ElemId>>,
    rmul: Vec<Vec<ElemId>>,
    lookup: HashMap<Box<[u8]>, ElemId>,
    reflections: OnceLock<Vec<ElemId>>,
    lower_covers: OnceLock<Vec<Vec<ElemId>>>,
    bruhat: OnceLock<Option<BitMatrix>>,
}

impl Group {
    pub fn new(rs: RootSystem) -> Result<Self, WeylError> {
        Self::with_ceiling(rs, DEFAULT_MAX_ELEMENTS)
    }

    pub fn with_ceiling(rs: RootSystem, limit: usize) -> Result<Self, WeylError> {
        let rank = rs.rank();
        let stride = rs.num_roots();

        // Breadth-first closure under left multiplication by simple reflections.
        let mut perms: Vec<Vec<u8>> = vec![(0..stride as u32).map(|r| r as u8).collect()];
        let mut index: HashMap<Vec<u8>, u32> = HashMap::new();
        index.insert(perms[0].clone(), 0);
        let mut lmul: Vec<Vec<u32>> = Vec::new();
        let mut lengths: Vec<u16> = vec![0];
        let mut k = 0;
        while k < perms.len() {
            let mut row = Vec::with_capacity(rank);
            for i in 0..rank {
                let table = rs.reflection_table(i);
                let image: Vec<u8> = perms[k].iter().map(|&r| table[r as usize]).collect();
                let id = match index.get(&image) {
                    Some(&id) => id,
                    None => {
                        if perms.len() >= limit {
                            return Err(WeylError::TooLarge { limit });
                        }
                        let id = perms.len() as u32;
                        lengths.push(WeylElement::from_perm(image.clone()).length() as u16);
                        index.insert(image.clone(), id);
                        perms.push(image);
                        id
                    }
                };
                row.push(id);
            }
            lmul.push(row);
            k += 1;
        }
        let order = perms.len();

        // Lexicographically smallest reduced word: peel off the smallest left descent.
        let words: Vec<Vec<u8>> = (0..order)
            .map(|start| {
                let mut w = start;
                let mut word = Vec::with_capacity(lengths[w] as usize);
                while lengths[w] > 0 {
                    let i = (0..rank)
                        .find(|&i| lengths[lmul[w][i] as usize] < lengths[w])
                        .expect("nonidentity element has a left descent");
                    word.push(i as u8);
                    w = lmul[w][i] as usize;
                }
                word
            })
            .collect();
        let mut sorted: Vec<usize> = (0..order).collect();
        sorted.sort_by(|&a, &b| lengths[a].cmp(&lengths[b]).then_with(|| words[a].cmp(&words[b])));
        let mut new_id = vec![0u32; order];
        for (new, &old) in sorted.iter().enumerate() {
            new_id[old] = new as u32;
        }

        let mut flat = Vec::with_capacity(order * stride);
        let mut lookup = HashMap::with_capacity(order);
        for (new, &old) in sorted.iter().enumerate() {
            flat.extend_from_slice(&perms[old]);
            lookup.insert(perms[old].clone().into_boxed_slice(), ElemId(new as u32));
        }
        drop(index);
        let lengths: Vec<u16> = sorted.iter().map(|&old| lengths[old]).collect();
        let lmul: Vec<Vec<ElemId>> = (0..rank)
            .map(|i| {
                sorted
                    .iter()
                    .map(|&old| ElemId(new_id[lmul[old][i] as usize]))
                    .collect()
            })
            .collect();

        let mut group = Group {
            rs,
            stride,
            perms: flat,
            lengths,
            inverse: Vec::new(),
            lmul,
            rmul: Vec::new(),
            lookup,
            reflections: OnceLock::new(),
            lower_covers: OnceLock::new(),
            bruhat: OnceLock::new(),
        };
        group.rmul = (0..rank)
            .map(|i| {
                let table = group.rs.reflection_table(i).to_vec();
                (0..order)
                    .map(|e| {
                        let p = group.perm(ElemId(e as u32));
                        let image: Vec<u8> = table.iter().map(|&r| p[r as usize]).collect();
                        group.lookup[image.as_slice()]
                    })
                    .collect()
            })
            .collect();
        group.inverse = (0..order)
            .map(|e| {
                let inv = WeylElement::from_perm(group.perm(ElemId(e as u32)).to_vec()).inverse();
                group.lookup[inv.perm()]
            })
            .collect();
        Ok(group)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn order(&self) -> usize {
        self.lengths.len()
    }

    pub fn identity(&self) -> ElemId {
        ElemId::IDENTITY
    }

    /// All elements in the global order.
    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        (0..self.order() as u32).map(ElemId)
    }

    pub fn perm(&self, e: ElemId) -> &[u8] {
        &self.perms[e.index() * self.stride..(e.index() + 1) * self.stride]
    }

    pub fn element(&self, e: ElemId) -> WeylElement {
        WeylElement::from_perm(self.perm(e).to_vec())
    }

    pub fn id_of(&self, w: &WeylElement) -> Result<ElemId, WeylError> {
        if w.perm().len() != self.stride {
            return Err(WeylError::MismatchedSystems {
                left: w.perm().len(),
                right: self.stride,
            });
        }
        self.lookup.get(w.perm()).copied().ok_or(WeylError::NotInGroup)
    }

    pub fn length(&self, e: ElemId) -> usize {
        self.lengths[e.index()] as usize
    }

    pub fn inverse(&self, e: ElemId) -> ElemId {
        self.inverse[e.index()]
    }

    pub fn multiply(&self, a: ElemId, b: ElemId) -> ElemId {
        let (pa, pb) = (self.perm(a), self.perm(b));
        let image: Vec<u8> = pb.iter().map(|&r| pa[r as usize]).collect();
        self.lookup[image.as_slice()]
    }

    /// The simple reflection `s_i`.
    pub fn simple(&self, i: usize) -> ElemId {
        self.lmul[i][0]
    }

    /// `s_i * w`.
    pub fn lmul(&self, i: usize, w: ElemId) -> ElemId {
        self.lmul[i][w.index()]
    }

    /// `w * s_i`.
    pub fn rmul(&self, w: ElemId, i: usize) -> ElemId {
        self.rmul[i][w.index()]
    }

    /// Root index of `w(alpha_r)`.
    pub fn apply(&self, w: ElemId, r: usize) -> usize {
        self.perm(w)[r] as usize
    }

    /// `l(w s_i) < l(w)`, i.e. `w alpha_i < 0`.
    pub fn is_right_descent(&self, w: ElemId, i: usize) -> bool {
        !self.rs.is_positive(self.apply(w, self.rs.simple_root(i)))
    }

    /// `l(s_i w) < l(w)`.
    pub fn is_left_descent(&self, w: ElemId, i: usize) -> bool {
        self.length(self.lmul(i, w)) < self.length(w)
    }

    /// Lexicographically smallest reduced word.
    pub fn canonical_word(&self, w: ElemId) -> Word {
        let mut w = w;
        let mut word = Vec::with_capacity(self.length(w));
        while self.length(w) > 0 {
            let i = (0..self.rank())
                .find(|&i| self.is_left_descent(w, i))
                .expect("nonidentity element has a left descent");
            word.push(i as u8);
            w = self.lmul(i, w);
        }
        Word(word)
    }

    /// Product of the letters of `word`; need not be reduced.
    pub fn from_word(&self, word: &Word) -> Result<ElemId, WeylError> {
        let mut w = self.identity();
        for &i in word.letters() {
            if i as usize >= self.rank() {
                return Err(WeylError::LetterOutOfRange {
                    letter: i as usize + 1,
                    rank: self.rank(),
                });
            }
            w = self.rmul(w, i as usize);
        }
        Ok(w)
    }

    pub fn parse_element(&self, s: &str) -> Result<ElemId, WeylError> {
        self.from_word(&s.parse()?)
    }

    pub fn format(&self, w: ElemId) -> String {
        self.canonical_word(w).to_string()
    }

    /// One element `s_beta` per positive root `beta`, indexed by root.
    pub fn reflections(&self) -> &[ElemId] {
        self.reflections.get_or_init(|| {
            let np = self.rs.num_positive();
            let mut out: Vec<Option<ElemId>> = vec![None; np];
            let mut missing = np;
            'outer: for w in self.elements() {
                for i in 0..self.rank() {
                    let beta = self.apply(w, self.rs.simple_root(i));
                    if beta < np && out[beta].is_none() {
                        let t = self.multiply(self.rmul(w, i), self.inverse(w));
                        out[beta] = Some(t);
                        missing -= 1;
                        if missing == 0 {
                            break 'outer;
                        }
                    }
                }
            }
            out.into_iter().map(|t| t.expect("every positive root is W-conjugate to a simple root")).collect()
        })
    }

    /// Elements `u` with `u` covered by `v` in the Bruhat order.
    pub fn lower_covers(&self, v: ElemId) -> &[ElemId] {
        &self.covers()[v.index()]
    }

    fn covers(&self) -> &Vec<Vec<ElemId>> {
        self.lower_covers.get_or_init(|| {
            let reflections = self.reflections();
            self.elements()
                .map(|v| {
                    let mut below: Vec<ElemId> = reflections
                        .iter()
                        .map(|&t| self.multiply(v, t))
                        .filter(|&u| self.length(u) + 1 == self.length(v))
                        .collect();
                    below.sort();
                    below
                })
                .collect()
        })
    }

    /// Covering pairs `(u, v)`, `u < v`, sorted.
    pub fn bruhat_cover_edges(&self) -> Vec<(ElemId, ElemId)> {
        let mut edges: Vec<(ElemId, ElemId)> = self
            .elements()
            .flat_map(|v| self.lower_covers(v).iter().map(move |&u| (u, v)))
            .collect();
        edges.sort();
        edges
    }

    /// Row `v` holds every `u <= v`. `None` for groups above the matrix limit.
    pub fn bruhat_matrix(&self) -> Option<&BitMatrix> {
        self.bruhat
            .get_or_init(|| {
                if self.order() > BRUHAT_MATRIX_LIMIT {
                    return None;
                }
                let mut m = BitMatrix::new(self.order());
                // elements are sorted by length, so covers come first
                for v in self.elements() {
                    m.set(v.index(), v.index(), true);
                    for &u in self.lower_covers(v) {
                        m.or_row_into(u.index(), v.index());
                    }
                }
                Some(m)
            })
            .as_ref()
    }

    pub fn bruhat_leq(&self, u: ElemId, v: ElemId) -> bool {
        match self.bruhat_matrix() {
            Some(m) => m.get(v.index(), u.index()),
            None => self.bruhat_leq_by_descents(u, v),
        }
    }

    /// Bruhat comparison by the lifting property: if `s v < v` then
    /// `u <= v` iff `s u <= s v` (when `s u < u`) or `u <= s v` (otherwise).
    pub fn bruhat_leq_by_descents(&self, mut u: ElemId, mut v: ElemId) -> bool {
        loop {
            if u == v || self.length(u) == 0 {
                return true;
            }
            if self.length(u) >= self.length(v) {
                return false;
            }
            let i = (0..self.rank())
                .find(|&i| self.is_left_descent(v, i))
                .expect("v is not the identity");
            if self.is_left_descent(u, i) {
                u = self.lmul(i, u);
            }
            v = self.lmul(i, v);
        }
    }

    /// `supp(w) = {i : s_i <= w}`, the letters of any reduced word of `w`.
    pub fn supp(&self, w: ElemId) -> Subset {
        let mut out = Subset::EMPTY;
        for i in 0..self.rank() {
            if self.bruhat_leq(self.simple(i), w) {
                out.insert(i);
            }
        }
        out
    }

    pub fn in_parabolic(&self, w: ElemId, j: Subset) -> bool {
        self.supp(w).is_subset_of(j)
    }

    /// Elements of `W_J`, in the global order.
    pub fn parabolic_elements(&self, j: Subset) -> Vec<ElemId> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![self.identity()];
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(w) = queue.pop_front() {
            for i in j.iter() {
                let x = self.rmul(w, i);
                if !seen[x.index()] {
                    seen[x.index()] = true;
                    out.push(x);
                    queue.push_back(x);
                }
            }
        }
        out.sort();
        out
    }

    /// `w` lies in `W^J` (no right descent in `J`).
    pub fn is_min_right(&self, w: ElemId, j: Subset) -> bool {
        j.iter().all(|i| !self.is_right_descent(w, i))
    }

    /// `w` lies in `^J W` (no left descent in `J`).
    pub fn is_min_left(&self, w: ElemId, j: Subset) -> bool {
        j.iter().all(|i| !self.is_left_descent(w, i))
    }

    pub fn is_min_rep(&self, w: ElemId, kind: CosetKind) -> bool {
        match kind {
            CosetKind::Right(j) => self.is_min_right(w, j),
            CosetKind::Left(j) => self.is_min_left(w, j),
            CosetKind::Double { left, right } => {
                self.is_min_left(w, left) && self.is_min_right(w, right)
            }
        }
    }

    /// Minimal coset representatives, in the global order.
    pub fn min_reps(&self, kind: CosetKind) -> Vec<ElemId> {
        self.elements().filter(|&w| self.is_min_rep(w, kind)).collect()
    }

    /// The minimal-length element of `w W_J` (right) or `W_J w` (left).
    pub fn min_coset_rep(&self, w: ElemId, j: Subset, side: Side) -> ElemId {
        let mut w = w;
        loop {
            let step = match side {
                Side::Right => j
                    .iter()
                    .find(|&i| self.is_right_descent(w, i))
                    .map(|i| self.rmul(w, i)),
                Side::Left => j
                    .iter()
                    .find(|&i| self.is_left_descent(w, i))
                    .map(|i| self.lmul(i, w)),
            };
            match step {
                Some(x) => w = x,
                None => return w,
            }
        }
    }

    /// The unique element of `^J W^K` in `W_J w W_K`.
    pub fn double_coset_rep(&self, w: ElemId, j: Subset, k: Subset) -> ElemId {
        let mut w = w;
        loop {
            if let Some(i) = j.iter().find(|&i| self.is_left_descent(w, i)) {
                w = self.lmul(i, w);
            } else if let Some(i) = k.iter().find(|&i| self.is_right_descent(w, i)) {
                w = self.rmul(w, i);
            } else {
                return w;
            }
        }
    }

    /// If `w alpha_i` is a simple root `alpha_j`, returns `j`.
    pub fn simple_image(&self, w: ElemId, i: usize) -> Option<usize> {
        self.rs
            .simple_index_of(self.apply(w, self.rs.simple_root(i)))
    }

    /// `Ad(w)(K) = {j : alpha_j = w alpha_k for some k in K}`.
    pub fn ad(&self, w: ElemId, k: Subset) -> Subset {
        let mut out = Subset::EMPTY;
        for i in k.iter() {
            if let Some(j) = self.simple_image(w, i) {
                out.insert(j);
            }
        }
        out
    }

    /// Root indices of `Phi_J` (roots supported on `J`).
    pub fn parabolic_roots(&self, j: Subset) -> Vec<usize> {
        (0..self.rs.num_roots())
            .filter(|&r| self.rs.root(r).support().all(|i| j.contains(i)))
            .collect()
    }

    /// Root indices of `Phi^+_J`.
    pub fn parabolic_positive_roots(&self, j: Subset) -> Vec<usize> {
        self.parabolic_roots(j)
            .into_iter()
            .filter(|&r| self.rs.is_positive(r))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(label: &str) -> Group {
        Group::new(RootSystem::new(label.parse().unwrap()).unwrap()).unwrap()
    }

    fn el(g: &Group, w: &str) -> ElemId {
        g.parse_element(w).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(group("A2").order(), 6);
        assert_eq!(group("B3").order(), 48);
        assert_eq!(group("D4").order(), 192);
    }

    #[test]
    fn a2_arithmetic() {
        let g = group("A2");
        let (e, s1) = (g.identity(), el(&g, "1"));
        let w0 = el(&g, "1,2,1");
        assert_eq!(g.multiply(e, w0), w0);
        assert_eq!(g.multiply(s1, s1), e);
        assert_eq!(g.length(w0), 3);
        assert_eq!(w0, el(&g, "2,1,2"));
        assert_eq!(g.canonical_word(w0).to_string(), "1,2,1");
        assert_eq!(g.canonical_word(e).to_string(), "e");
        assert_eq!(g.inverse(el(&g, "1,2")), el(&g, "2,1"));
        // non-reduced input is canonicalized
        assert_eq!(el(&g, "1,1,2"), el(&g, "2"));
    }

    #[test]
    fn b2_longest_word() {
        let g = group("B2");
        let w0 = g.elements().max_by_key(|&w| g.length(w)).unwrap();
        assert_eq!(g.canonical_word(w0).to_string(), "1,2,1,2");
    }

    #[test]
    fn word_parsing() {
        assert!("1,,2".parse::<Word>().is_err());
        assert!("a".parse::<Word>().is_err());
        assert!("0".parse::<Word>().is_err());
        assert_eq!("e".parse::<Word>().unwrap(), Word::default());
        let g = group("A2");
        assert_eq!(
            g.parse_element("3"),
            Err(WeylError::LetterOutOfRange { letter: 3, rank: 2 })
        );
    }

    #[test]
    fn mismatched_systems() {
        let a = group("A2").element(ElemId::from_index(1));
        let b = group("B2").element(ElemId::from_index(1));
        assert!(matches!(
            a.compose(&b),
            Err(WeylError::MismatchedSystems { .. })
        ));
        assert!(group("A3").id_of(&a).is_err());
    }

    #[test]
    fn bruhat_examples() {
        let g = group("A2");
        for w in g.elements() {
            assert!(g.bruhat_leq(g.identity(), w));
        }
        assert!(!g.bruhat_leq(el(&g, "1"), el(&g, "2")));
        assert!(g.bruhat_leq(el(&g, "2"), el(&g, "1,2")));
    }

    #[test]
    fn bruhat_matrix_matches_descent_recursion() {
        for label in ["A3", "B3", "G2"] {
            let g = group(label);
            for u in g.elements() {
                for v in g.elements() {
                    assert_eq!(g.bruhat_leq(u, v), g.bruhat_leq_by_descents(u, v));
                }
            }
        }
    }

    #[test]
    fn coset_reps_a2() {
        let g = group("A2");
        let j1 = Subset::singleton(0);
        let words = |v: Vec<ElemId>| v.into_iter().map(|w| g.format(w)).collect::<Vec<_>>();
        assert_eq!(words(g.min_reps(CosetKind::Right(j1))), ["e", "2", "1,2"]);
        assert_eq!(words(g.min_reps(CosetKind::Left(j1))), ["e", "2", "2,1"]);
        assert_eq!(g.min_reps(CosetKind::Right(Subset::EMPTY)).len(), 6);
        let j2 = Subset::singleton(1);
        assert_eq!(g.min_coset_rep(el(&g, "2,1"), j2, Side::Right), el(&g, "2,1"));
        assert_eq!(g.min_coset_rep(el(&g, "1,2,1"), j1, Side::Right), el(&g, "1,2"));
        assert_eq!(g.double_coset_rep(el(&g, "1,2,1"), j1, j1), el(&g, "2"));
        let w = el(&g, "1,2");
        assert_eq!(g.double_coset_rep(w, Subset::EMPTY, Subset::EMPTY), w);
    }

    #[test]
    fn subset_parsing() {
        assert_eq!(Subset::parse("", 3).unwrap(), Subset::EMPTY);
        assert_eq!(Subset::parse("1,3", 3).unwrap().to_list(), "1,3");
        assert!(Subset::parse("4", 3).is_err());
        assert!(Subset::parse("x", 3).is_err());
        assert_eq!(Subset::from_bits(0b101).subsets().count(), 4);
    }

    #[test]
    fn supp_matches_word_letters() {
        let g = group("B3");
        for w in g.elements() {
            let mut letters = Subset::EMPTY;
            for &i in g.canonical_word(w).letters() {
                letters.insert(i as usize);
            }
            assert_eq!(g.supp(w), letters);
        }
    }

    #[test]
    fn length_subadditive_and_reduced_concatenation() {
        for label in ["A3", "B3", "C3", "G2"] {
            let g = group(label);
            for u in g.elements() {
                for v in g.elements() {
                    let uv = g.multiply(u, v);
                    assert!(g.length(uv) <= g.length(u) + g.length(v));
                    let mut word = g.canonical_word(u).0;
                    word.extend(g.canonical_word(v).0);
                    let reduced = g.length(g.from_word(&Word(word.clone())).unwrap()) == word.len();
                    assert_eq!(g.length(uv) == g.length(u) + g.length(v), reduced);
                }
            }
        }
    }

    #[test]
    fn coset_reps_are_unique_minima() {
        let g = group("B3");
        for j in Subset::all(3) {
            let wj = g.parabolic_elements(j);
            for w in g.elements() {
                for side in [Side::Left, Side::Right] {
                    let rep = g.min_coset_rep(w, j, side);
                    let coset: Vec<ElemId> = wj
                        .iter()
                        .map(|&x| match side {
                            Side::Right => g.multiply(w, x),
                            Side::Left => g.multiply(x, w),
                        })
                        .collect();
                    assert!(coset.contains(&rep));
                    let min = coset.iter().map(|&x| g.length(x)).min().unwrap();
                    let minimal: Vec<_> = coset.iter().filter(|&&x| g.length(x) == min).collect();
                    assert_eq!(minimal, vec![&rep]);
                }
            }
            for &w in &g.min_reps(CosetKind::Right(j)) {
                for &x in &wj {
                    assert_eq!(g.length(g.multiply(w, x)), g.length(w) + g.length(x));
                }
            }
        }
    }
}
