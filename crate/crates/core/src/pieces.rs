//! Pieces of partial flag varieties, combinatorially.
//!
//! For `J ⊆ I` the pieces of the partial flag variety of type `J` are
//! labelled by `^J W`; the pieces of the variety of pairs are labelled by
//! `W^J`. The two labelings are exchanged by `w -> w^{-1}`, and every
//! [`PieceRecord`] carries both. Closure is governed by the order
//! `w <=_{J,delta} w'` on `W^J`: some element of `(W_J · w)_min` lies below
//! some (equivalently every) element of `(W_J · w')_min` in Bruhat order.

use thiserror::Error;

use crate::bits::BitMatrix;
use crate::twist::{Twist, TwistError};
use crate::weyl::{CosetKind, ElemId, Group, Side, Subset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PieceError {
    #[error("element {word} is not in W^J for J = {j}")]
    NotRightMinimal { word: String, j: Subset },
    #[error("element {word} is not in ^J W for J = {j}")]
    NotLeftMinimal { word: String, j: Subset },
    #[error("irreducibility criterion does not apply when J = I")]
    NotApplicable,
    #[error("invalid stabilizing sequence: {0}")]
    InvalidSequence(String),
    #[error(transparent)]
    Twist(#[from] TwistError),
}

/// The sequence `(J_n, w_n)` attached to an element of `W^J`, listed up to
/// and including the first pair that repeats forever.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistedSequence {
    pub j: Subset,
    pub steps: Vec<(Subset, ElemId)>,
}

impl TwistedSequence {
    pub fn stable_j(&self) -> Subset {
        self.steps.last().expect("sequences are nonempty").0
    }

    pub fn stable_w(&self) -> ElemId {
        self.steps.last().expect("sequences are nonempty").1
    }

    /// `J_n` for any `n`, constant past the listed steps.
    pub fn j_at(&self, n: usize) -> Subset {
        self.steps[n.min(self.steps.len() - 1)].0
    }
}

/// `J_n ∩ Ad(w_n) delta(J_n)`.
fn next_j(tw: &Twist, jn: Subset, wn: ElemId) -> Subset {
    jn.intersection(tw.group().ad(wn, tw.delta().apply_set(jn)))
}

/// Builds the sequence for `w ∈ W^J` by `w_n = min(w^{-1} W_{delta(J_n)})`
/// and `J_{n+1} = J_n ∩ Ad(w_n) delta(J_n)`.
pub fn sequence_for(tw: &Twist, j: Subset, w: ElemId) -> Result<TwistedSequence, PieceError> {
    let g = tw.group();
    if !g.is_min_right(w, j) {
        return Err(PieceError::NotRightMinimal {
            word: g.format(w),
            j,
        });
    }
    let winv = g.inverse(w);
    let rep = |jn: Subset| g.min_coset_rep(winv, tw.delta().apply_set(jn), Side::Right);
    let mut steps = Vec::new();
    let mut jn = j;
    let mut wn = rep(jn);
    loop {
        steps.push((jn, wn));
        let jnext = next_j(tw, jn, wn);
        let wnext = rep(jnext);
        if (jnext, wnext) == (jn, wn) {
            break;
        }
        if steps.len() > j.len() + 1 {
            return Err(PieceError::InvalidSequence(format!(
                "no stabilization after {} steps",
                steps.len()
            )));
        }
        jn = jnext;
        wn = wnext;
    }
    let seq = TwistedSequence { j, steps };
    check_sequence(tw, &seq)?;
    if seq.stable_w() != winv {
        return Err(PieceError::InvalidSequence(format!(
            "stable element {} differs from w^-1 = {}",
            g.format(seq.stable_w()),
            g.format(winv)
        )));
    }
    let k = tw.i_j_delta(j, w)?;
    if seq.stable_j() != k {
        return Err(PieceError::InvalidSequence(format!(
            "stable subset {} differs from I(J, delta; w) = {}",
            seq.stable_j(),
            k
        )));
    }
    Ok(seq)
}

/// Checks the defining conditions of a stabilizing sequence and that the
/// listed steps end at the stable pair.
pub fn check_sequence(tw: &Twist, seq: &TwistedSequence) -> Result<(), PieceError> {
    let g = tw.group();
    let d = tw.delta();
    let bad = |msg: String| Err(PieceError::InvalidSequence(msg));
    let Some(&(j0, _)) = seq.steps.first() else {
        return bad("empty sequence".into());
    };
    if j0 != seq.j {
        return bad(format!("J_0 = {j0} but J = {}", seq.j));
    }
    for (n, &(jn, wn)) in seq.steps.iter().enumerate() {
        let dj = d.apply_set(jn);
        if !g.is_min_rep(wn, CosetKind::Double { left: jn, right: dj }) {
            return bad(format!("w_{n} = {} is not in ^{{J_n}}W^{{delta(J_n)}}", g.format(wn)));
        }
        if n == 0 {
            continue;
        }
        let (jp, wp) = seq.steps[n - 1];
        if jn != next_j(tw, jp, wp) {
            return bad(format!("J_{n} = {jn} does not follow from step {}", n - 1));
        }
        if jn == jp {
            return bad(format!("J_{n} repeats before the end of the listed steps"));
        }
        let right = d.apply_set(jp);
        if g.double_coset_rep(wn, jn, right) != g.double_coset_rep(wp, jn, right) {
            return bad(format!(
                "w_{n} = {} is not in W_{{J_n}} w_{} W_{{delta(J_{})}}",
                g.format(wn),
                n - 1,
                n - 1
            ));
        }
    }
    let (jl, wl) = *seq.steps.last().unwrap();
    if next_j(tw, jl, wl) != jl {
        return bad("the last listed pair is not stable".into());
    }
    Ok(())
}

/// The label `w ∈ W^J` of a sequence: the inverse of its stable element.
pub fn sequence_to_label(tw: &Twist, seq: &TwistedSequence) -> Result<ElemId, PieceError> {
    check_sequence(tw, seq)?;
    let label = tw.group().inverse(seq.stable_w());
    if !tw.group().is_min_right(label, seq.j) {
        return Err(PieceError::InvalidSequence(format!(
            "label {} is not in W^J",
            tw.group().format(label)
        )));
    }
    Ok(label)
}

/// Metadata for the piece labelled by `index_w ∈ ^J W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceRecord {
    pub index_w: ElemId,
    pub inv_w: ElemId,
    /// `I(J, delta; inv_w)`.
    pub stabilizer_set: Subset,
    /// `(W_J · inv_w)_min`.
    pub orbit_min: Vec<ElemId>,
    /// `None` when `J = I`.
    pub irreducible: Option<bool>,
}

/// The closure order on the pieces `P_{J,w}`, `w ∈ ^J W`.
#[derive(Debug, Clone)]
pub struct ClosurePoset {
    pub j: Subset,
    pub nodes: Vec<PieceRecord>,
    leq: BitMatrix,
    /// Covering pairs `(smaller, larger)` as node indices.
    pub hasse: Vec<(usize, usize)>,
}

impl ClosurePoset {
    /// Whether piece `a` lies in the closure of piece `b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.get(a, b)
    }

    pub fn relation(&self) -> Vec<Vec<bool>> {
        self.leq.to_rows()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Transitive reduction of a partial order given as a relation matrix.
pub fn hasse_edges(leq: &BitMatrix) -> Vec<(usize, usize)> {
    let n = leq.size();
    let mut strict = leq.clone();
    for i in 0..n {
        strict.set(i, i, false);
    }
    // strict: row a = {c : a < c}; below: row b = {c : c < b}
    let below = strict.transpose();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if strict.get(a, b) && !strict.rows_intersect(a, &below, b) {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// The pieces for a fixed `J` and `delta`, with minimal orbit elements of
/// every `w ∈ W^J` precomputed.
#[derive(Debug)]
pub struct Stratification<'t, 'g> {
    twist: &'t Twist<'g>,
    j: Subset,
    reps: Vec<ElemId>,
    min_sets: Vec<Vec<ElemId>>,
    slot: Vec<u32>,
}

impl<'t, 'g> Stratification<'t, 'g> {
    pub fn new(twist: &'t Twist<'g>, j: Subset) -> Self {
        let g = twist.group();
        let reps = g.min_reps(CosetKind::Right(j));
        let mut slot = vec![u32::MAX; g.order()];
        for (k, w) in reps.iter().enumerate() {
            slot[w.index()] = k as u32;
        }
        let min_sets = reps
            .iter()
            .map(|&w| twist.orbit(w, j).min_elements)
            .collect();
        Stratification {
            twist,
            j,
            reps,
            min_sets,
            slot,
        }
    }

    pub fn twist(&self) -> &'t Twist<'g> {
        self.twist
    }

    pub fn j(&self) -> Subset {
        self.j
    }

    /// `W^J` in the global order.
    pub fn right_reps(&self) -> &[ElemId] {
        &self.reps
    }

    fn slot_of(&self, w: ElemId) -> Result<usize, PieceError> {
        match self.slot[w.index()] {
            u32::MAX => Err(PieceError::NotRightMinimal {
                word: self.twist.group().format(w),
                j: self.j,
            }),
            k => Ok(k as usize),
        }
    }

    /// `(W_J · w)_min` for `w ∈ W^J`.
    pub fn min_set(&self, w: ElemId) -> Result<&[ElemId], PieceError> {
        Ok(&self.min_sets[self.slot_of(w)?])
    }

    /// `w <=_{J,delta} other`. For `other ∈ W^J` one minimal element of its
    /// orbit is compared against; otherwise `other` itself is.
    pub fn leq(&self, w: ElemId, other: ElemId) -> Result<bool, PieceError> {
        let vs = self.min_set(w)?;
        let target = match self.slot[other.index()] {
            u32::MAX => other,
            k => self.min_sets[k as usize][0],
        };
        let g = self.twist.group();
        Ok(vs.iter().any(|&v| g.bruhat_leq(v, target)))
    }

    /// `w <=_{J,delta} other` evaluated against one chosen `v' ∈ (W_J · other)_min`.
    pub fn leq_against(&self, w: ElemId, v_prime: ElemId) -> Result<bool, PieceError> {
        let g = self.twist.group();
        Ok(self.min_set(w)?.iter().any(|&v| g.bruhat_leq(v, v_prime)))
    }

    pub fn record(&self, index_w: ElemId) -> Result<PieceRecord, PieceError> {
        let g = self.twist.group();
        if !g.is_min_left(index_w, self.j) {
            return Err(PieceError::NotLeftMinimal {
                word: g.format(index_w),
                j: self.j,
            });
        }
        let inv_w = g.inverse(index_w);
        let irreducible = match self.is_irreducible(index_w) {
            Ok(b) => Some(b),
            Err(PieceError::NotApplicable) => None,
            Err(e) => return Err(e),
        };
        Ok(PieceRecord {
            index_w,
            inv_w,
            stabilizer_set: self.twist.i_j_delta(self.j, inv_w)?,
            orbit_min: self.min_set(inv_w)?.to_vec(),
            irreducible,
        })
    }

    /// Nodes `^J W` in the global order; `a ⪯ b` iff `a^{-1} <=_{J,delta} b^{-1}`.
    pub fn closure_poset(&self) -> ClosurePoset {
        let g = self.twist.group();
        let labels = g.min_reps(CosetKind::Left(self.j));
        let nodes: Vec<PieceRecord> = labels
            .iter()
            .map(|&w| self.record(w).expect("label is in ^J W"))
            .collect();
        let n = nodes.len();
        let mut leq = BitMatrix::new(n);
        for (b, nb) in nodes.iter().enumerate() {
            let v_prime = nb.orbit_min[0];
            for (a, na) in nodes.iter().enumerate() {
                if na.orbit_min.iter().any(|&v| g.bruhat_leq(v, v_prime)) {
                    leq.set(a, b, true);
                }
            }
        }
        let hasse = hasse_edges(&leq);
        ClosurePoset {
            j: self.j,
            nodes,
            leq,
            hasse,
        }
    }

    /// Labels `w' ∈ ^J W` of the pieces in the closure of the piece of an
    /// arbitrary `w ∈ W`: those with `w'^{-1} <=_{J,delta} w^{-1}`.
    pub fn piece_closure(&self, w: ElemId) -> Vec<ElemId> {
        let g = self.twist.group();
        let winv = g.inverse(w);
        g.min_reps(CosetKind::Left(self.j))
            .into_iter()
            .filter(|&x| self.leq(g.inverse(x), winv).expect("inverse of ^J W is in W^J"))
            .collect()
    }

    /// Irreducibility of the piece labelled `w ∈ ^J W`: `supp_delta(w) = I`.
    pub fn is_irreducible(&self, w: ElemId) -> Result<bool, PieceError> {
        let g = self.twist.group();
        let full = Subset::full(g.rank());
        if self.j == full {
            return Err(PieceError::NotApplicable);
        }
        if !g.is_min_left(w, self.j) {
            return Err(PieceError::NotLeftMinimal {
                word: g.format(w),
                j: self.j,
            });
        }
        Ok(self.twist.supp_delta(w) == full)
    }
}

/// `J_1 = J ∩ Ad(w_1) K` with `w_1 = min(w W_K)`, for `w ∈ ^J W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Restriction {
    pub j1: Subset,
    pub w1: ElemId,
}

pub fn parabolic_restriction_type(
    g: &Group,
    j: Subset,
    k: Subset,
    w: ElemId,
) -> Result<Restriction, PieceError> {
    if !g.is_min_left(w, j) {
        return Err(PieceError::NotLeftMinimal {
            word: g.format(w),
            j,
        });
    }
    let w1 = g.min_coset_rep(w, k, Side::Right);
    Ok(Restriction {
        j1: j.intersection(g.ad(w1, k)),
        w1,
    })
}

/// `Phi_{J_1} = Phi_J ∩ w_1 Phi_K` as sets of roots.
pub fn levi_root_identity_holds(g: &Group, j: Subset, k: Subset, r: Restriction) -> bool {
    let lhs = g.parabolic_roots(r.j1);
    let mut rhs: Vec<usize> = g
        .parabolic_roots(k)
        .into_iter()
        .map(|x| g.apply(r.w1, x))
        .filter(|&x| g.root_system().root(x).support().all(|i| j.contains(i)))
        .collect();
    rhs.sort_unstable();
    lhs == rhs
}

/// Outcome of the root-level inclusion check for one `w ∈ W^J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootCheckReport {
    pub passed: bool,
    pub witnesses: Vec<String>,
}

/// Checks, with `(J_n, w_n)` the sequence of `w`,
/// `w(Phi^+_J - Phi_{J_1}) ⊆ Phi^+ - Phi_{delta(J)}` and, for `i >= 1`,
/// `w(Phi^+_{J_i} - Phi_{J_{i+1}}) ⊆ Phi^+_{delta(J_{i-1})} - Phi_{delta(J_i)}`.
pub fn unipotent_root_check(tw: &Twist, j: Subset, w: ElemId) -> Result<RootCheckReport, PieceError> {
    let g = tw.group();
    let rs = g.root_system();
    let d = tw.delta();
    let seq = sequence_for(tw, j, w)?;
    let supported = |r: usize, s: Subset| rs.root(r).support().all(|i| s.contains(i));
    let mut witnesses = Vec::new();

    let mut check = |i: usize, source: Subset, drop: Subset, allowed: Option<Subset>, forbidden: Subset| {
        for r in g.parabolic_positive_roots(source) {
            if supported(r, drop) {
                continue;
            }
            let image = g.apply(w, r);
            let ok = rs.is_positive(image)
                && allowed.is_none_or(|a| supported(image, a))
                && !supported(image, forbidden);
            if !ok {
                witnesses.push(format!(
                    "i={i}: root {:?} maps to {:?}",
                    rs.root(r).coords(),
                    rs.root(image).coords()
                ));
            }
        }
    };
    check(0, seq.j_at(0), seq.j_at(1), None, d.apply_set(seq.j_at(0)));
    for i in 1..seq.steps.len() {
        check(
            i,
            seq.j_at(i),
            seq.j_at(i + 1),
            Some(d.apply_set(seq.j_at(i - 1))),
            d.apply_set(seq.j_at(i)),
        );
    }
    Ok(RootCheckReport {
        passed: witnesses.is_empty(),
        witnesses,
    })
}
