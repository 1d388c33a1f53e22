//! Diagram automorphisms and the twisted conjugation action of `W_J` on `W`.
//!
//! For a diagram automorphism `delta` and `J ⊆ I`, `W_J` acts on `W` by
//! `x · y = delta(x) y x^{-1}`. This module computes the orbits of that
//! action and their minimal elements, the stabilizer type `I(J, delta; w)`,
//! the decomposition of `W` into the classes `[w]_J`, and the three
//! relations between elements of an orbit: the arrow relation (one step is
//! `w -> s_{delta(j)} w s_j` without length increase), strong conjugacy, and
//! cyclic-shift equivalence.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use thiserror::Error;

use crate::rootsys::{CartanDatum, Family};
use crate::weyl::{CosetKind, ElemId, Group, Side, Subset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwistError {
    #[error("`{0}` is not a permutation of the simple indices")]
    NotAPermutation(String),
    #[error("permutation {0} does not preserve the Cartan matrix")]
    NotCartanPreserving(String),
    #[error("type {cartan} has no diagram automorphism `{name}`")]
    Unavailable { name: String, cartan: String },
    #[error("element {0} is not in the parabolic subgroup W_J")]
    NotInParabolic(String),
    #[error("element {word} is not a minimal representative in W^J for J = {j}")]
    NotMinimal { word: String, j: Subset },
    #[error("simple index {} is not in J = {j}", .index + 1)]
    IndexNotInJ { index: usize, j: Subset },
    #[error("internal error: no distinguished factorization reachable from {0}")]
    SearchExhausted(String),
}

/// A permutation of the simple indices preserving the Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagramAutomorphism {
    images: Vec<u8>,
    name: String,
}

impl DiagramAutomorphism {
    pub fn identity(rank: usize) -> Self {
        DiagramAutomorphism {
            images: (0..rank as u8).collect(),
            name: "id".to_string(),
        }
    }

    /// `images[i]` is `delta(i)`, 0-based.
    pub fn from_images(cartan: &CartanDatum, images: Vec<usize>) -> Result<Self, TwistError> {
        let display = images
            .iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(",");
        let n = cartan.rank();
        let mut seen = vec![false; n];
        if images.len() != n {
            return Err(TwistError::NotAPermutation(display));
        }
        for &i in &images {
            if i >= n || seen[i] {
                return Err(TwistError::NotAPermutation(display));
            }
            seen[i] = true;
        }
        for i in 0..n {
            for j in 0..n {
                if cartan.entry(images[i], images[j]) != cartan.entry(i, j) {
                    return Err(TwistError::NotCartanPreserving(display));
                }
            }
        }
        let name = if images.iter().enumerate().all(|(i, &d)| i == d) {
            "id".to_string()
        } else {
            display
        };
        Ok(DiagramAutomorphism {
            images: images.into_iter().map(|i| i as u8).collect(),
            name,
        })
    }

    /// Parses `id`, `flip`, `tri`, `tri2`, or an explicit 1-based image
    /// list such as `3,2,1`.
    pub fn parse(text: &str, cartan: &CartanDatum) -> Result<Self, TwistError> {
        let text = text.trim();
        let n = cartan.rank();
        let unavailable = || TwistError::Unavailable {
            name: text.to_string(),
            cartan: cartan.to_string(),
        };
        let named = |images: Vec<usize>, name: &str| -> Result<Self, TwistError> {
            let mut d = Self::from_images(cartan, images)?;
            d.name = name.to_string();
            Ok(d)
        };
        match text.to_ascii_lowercase().as_str() {
            "id" => Ok(Self::identity(n)),
            "flip" => {
                let images: Vec<usize> = match cartan.family() {
                    Family::A if n >= 2 => (0..n).rev().collect(),
                    Family::D => {
                        let mut v: Vec<usize> = (0..n).collect();
                        v.swap(n - 2, n - 1);
                        v
                    }
                    Family::E if n == 6 => vec![5, 1, 4, 3, 2, 0],
                    _ => return Err(unavailable()),
                };
                named(images, "flip")
            }
            // 1 -> 3 -> 4 -> 1, node 2 fixed
            "tri" if cartan.family() == Family::D && n == 4 => named(vec![2, 1, 3, 0], "tri"),
            "tri2" if cartan.family() == Family::D && n == 4 => named(vec![3, 1, 0, 2], "tri2"),
            "tri" | "tri2" => Err(unavailable()),
            _ => {
                let mut images = Vec::with_capacity(n);
                for part in text.split(',') {
                    let i: usize = part
                        .trim()
                        .parse()
                        .map_err(|_| TwistError::NotAPermutation(text.to_string()))?;
                    if i == 0 {
                        return Err(TwistError::NotAPermutation(text.to_string()));
                    }
                    images.push(i - 1);
                }
                Self::from_images(cartan, images)
            }
        }
    }

    /// Every valid automorphism of the diagram, identity first.
    pub fn all(cartan: &CartanDatum) -> Vec<Self> {
        let mut out = vec![Self::identity(cartan.rank())];
        for name in ["flip", "tri", "tri2"] {
            if let Ok(d) = Self::parse(name, cartan) {
                out.push(d);
            }
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn apply_set(&self, s: Subset) -> Subset {
        let mut out = Subset::EMPTY;
        for i in s.iter() {
            out.insert(self.apply(i));
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &d)| i == d as usize)
    }

    pub fn is_stable(&self, s: Subset) -> bool {
        self.apply_set(s) == s
    }

    /// Smallest `delta`-stable superset of `s`.
    pub fn stable_closure(&self, s: Subset) -> Subset {
        let mut out = s;
        loop {
            let next = out.union(self.apply_set(out));
            if next == out {
                return out;
            }
            out = next;
        }
    }
}

impl fmt::Display for DiagramAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// One orbit of the twisted `W_J`-action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedOrbit {
    pub members: Vec<ElemId>,
    pub min_elements: Vec<ElemId>,
}

/// The class `[w]_J = W_J · (w W_K)` with `K = I(J, delta; w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistClass {
    pub base: ElemId,
    pub stabilizer_set: Subset,
    pub members: Vec<ElemId>,
}

/// A partition of the group into classes, each sorted, ordered by least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub classes: Vec<Vec<ElemId>>,
    pub class_of: Vec<usize>,
}

impl Partition {
    fn from_classes(mut classes: Vec<Vec<ElemId>>, order: usize) -> Self {
        for c in classes.iter_mut() {
            c.sort();
        }
        classes.sort_by_key(|c| c[0]);
        let mut class_of = vec![usize::MAX; order];
        for (k, c) in classes.iter().enumerate() {
            for &w in c {
                class_of[w.index()] = k;
            }
        }
        Partition { classes, class_of }
    }

    pub fn same_class(&self, a: ElemId, b: ElemId) -> bool {
        self.class_of[a.index()] == self.class_of[b.index()]
    }
}

/// Result of walking arrows from `start` to an element `distinguished * residual`
/// with `distinguished` in `W^J` and `residual` in `W_{I(J, delta; distinguished)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub start: ElemId,
    pub target: ElemId,
    pub distinguished: ElemId,
    pub residual: ElemId,
    /// `(j, next)` for each arrow step.
    pub path: Vec<(usize, ElemId)>,
}

/// A group together with a diagram automorphism.
#[derive(Debug)]
pub struct Twist<'g> {
    group: &'g Group,
    delta: DiagramAutomorphism,
    delta_elem: Vec<ElemId>,
}

impl<'g> Twist<'g> {
    pub fn new(group: &'g Group, delta: DiagramAutomorphism) -> Result<Self, TwistError> {
        let rs = group.root_system();
        // delta is checked against the Cartan matrix again in case it was
        // built for a different diagram of the same rank
        let delta = DiagramAutomorphism::from_images(
            rs.cartan(),
            (0..delta.rank()).map(|i| delta.apply(i)).collect(),
        )
        .map(|mut d| {
            d.name = delta.name.clone();
            d
        })?;
        let relabel: Vec<u8> = rs
            .roots()
            .iter()
            .map(|root| {
                let mut coords = vec![0; rs.rank()];
                for (i, &c) in root.coords().iter().enumerate() {
                    coords[delta.apply(i)] = c;
                }
                rs.index_of(&coords)
                    .expect("diagram automorphisms permute the roots") as u8
            })
            .collect();
        let delta_elem = group
            .elements()
            .map(|w| {
                let p = group.perm(w);
                let mut image = vec![0u8; p.len()];
                for (r, &pr) in p.iter().enumerate() {
                    image[relabel[r] as usize] = relabel[pr as usize];
                }
                group
                    .id_of(&crate::weyl::WeylElement::from_perm(image))
                    .expect("delta(w) is a group element")
            })
            .collect();
        Ok(Twist {
            group,
            delta,
            delta_elem,
        })
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn delta(&self) -> &DiagramAutomorphism {
        &self.delta
    }

    /// `delta(w)`: the root permutation of `w` conjugated by the root
    /// relabelling `alpha_i -> alpha_{delta(i)}`.
    pub fn delta_on_element(&self, w: ElemId) -> ElemId {
        self.delta_elem[w.index()]
    }

    /// `delta(w)` computed letter by letter on the canonical word.
    pub fn delta_by_word(&self, w: ElemId) -> ElemId {
        let g = self.group;
        g.canonical_word(w)
            .letters()
            .iter()
            .fold(g.identity(), |acc, &i| g.rmul(acc, self.delta.apply(i as usize)))
    }

    /// `x · y = delta(x) y x^{-1}` without checking `x ∈ W_J`.
    pub fn act(&self, x: ElemId, y: ElemId) -> ElemId {
        let g = self.group;
        g.multiply(g.multiply(self.delta_on_element(x), y), g.inverse(x))
    }

    pub fn twisted_conjugate(&self, x: ElemId, y: ElemId, j: Subset) -> Result<ElemId, TwistError> {
        if !self.group.in_parabolic(x, j) {
            return Err(TwistError::NotInParabolic(self.group.format(x)));
        }
        Ok(self.act(x, y))
    }

    /// `s_j · y = s_{delta(j)} y s_j`.
    pub fn generator_step(&self, j: usize, y: ElemId) -> ElemId {
        let g = self.group;
        g.lmul(self.delta.apply(j), g.rmul(y, j))
    }

    pub fn orbit(&self, y: ElemId, j: Subset) -> TwistedOrbit {
        let mut members = vec![y];
        let mut queue = VecDeque::from([y]);
        while let Some(w) = queue.pop_front() {
            for i in j.iter() {
                let x = self.generator_step(i, w);
                if !members.contains(&x) {
                    members.push(x);
                    queue.push_back(x);
                }
            }
        }
        self.finish_orbit(members)
    }

    fn finish_orbit(&self, mut members: Vec<ElemId>) -> TwistedOrbit {
        members.sort();
        let min_len = members.iter().map(|&w| self.group.length(w)).min().unwrap();
        let min_elements = members
            .iter()
            .copied()
            .filter(|&w| self.group.length(w) == min_len)
            .collect();
        TwistedOrbit {
            members,
            min_elements,
        }
    }

    /// All `W_J`-orbits on `W`, ordered by least member.
    pub fn orbits(&self, j: Subset) -> Vec<TwistedOrbit> {
        let g = self.group;
        let mut seen = vec![false; g.order()];
        let mut out = Vec::new();
        for y in g.elements() {
            if seen[y.index()] {
                continue;
            }
            seen[y.index()] = true;
            let mut members = vec![y];
            let mut k = 0;
            while k < members.len() {
                let w = members[k];
                for i in j.iter() {
                    let x = self.generator_step(i, w);
                    if !seen[x.index()] {
                        seen[x.index()] = true;
                        members.push(x);
                    }
                }
                k += 1;
            }
            out.push(self.finish_orbit(members));
        }
        out
    }

    /// `I(J, delta; w)`, the largest `K ⊆ J` with `Ad(w)(K) = delta(K)`.
    pub fn i_j_delta(&self, j: Subset, w: ElemId) -> Result<Subset, TwistError> {
        let g = self.group;
        if !g.is_min_right(w, j) {
            return Err(TwistError::NotMinimal {
                word: g.format(w),
                j,
            });
        }
        let mut k = j;
        loop {
            let target = self.delta.apply_set(k);
            let mut next = Subset::EMPTY;
            for i in k.iter() {
                if g.simple_image(w, i).is_some_and(|t| target.contains(t)) {
                    next.insert(i);
                }
            }
            if next == k {
                return Ok(k);
            }
            k = next;
        }
    }

    /// One class per `w ∈ W^J`.
    pub fn class_decomposition(&self, j: Subset) -> Vec<TwistClass> {
        let g = self.group;
        g.min_reps(CosetKind::Right(j))
            .into_iter()
            .map(|w| {
                let k = self.i_j_delta(j, w).expect("w is in W^J");
                let mut seen = HashSet::new();
                let mut members = Vec::new();
                for u in g.parabolic_elements(k) {
                    let start = g.multiply(w, u);
                    if seen.contains(&start) {
                        continue;
                    }
                    for x in self.orbit(start, j).members {
                        if seen.insert(x) {
                            members.push(x);
                        }
                    }
                }
                members.sort();
                TwistClass {
                    base: w,
                    stabilizer_set: k,
                    members,
                }
            })
            .collect()
    }

    /// `s_{delta(j)} w s_j` if its length does not exceed `l(w)`.
    pub fn arrow_step(&self, w: ElemId, j: usize, jset: Subset) -> Result<Option<ElemId>, TwistError> {
        if !jset.contains(j) {
            return Err(TwistError::IndexNotInJ { index: j, j: jset });
        }
        Ok(self.arrow_step_unchecked(w, j))
    }

    fn arrow_step_unchecked(&self, w: ElemId, j: usize) -> Option<ElemId> {
        let next = self.generator_step(j, w);
        (self.group.length(next) <= self.group.length(w)).then_some(next)
    }

    /// Arrow successors of `w`, strict length drops first.
    pub fn arrow_successors(&self, w: ElemId, j: Subset) -> Vec<(usize, ElemId)> {
        let mut out: Vec<(usize, ElemId)> = j
            .iter()
            .filter_map(|i| self.arrow_step_unchecked(w, i).map(|x| (i, x)))
            .collect();
        out.sort_by_key(|&(i, x)| (self.group.length(x), i));
        out
    }

    /// Whether `w ->_{J, delta} target`.
    pub fn arrow_reachable(&self, w: ElemId, target: ElemId, j: Subset) -> bool {
        let mut seen = HashSet::from([w]);
        let mut queue = VecDeque::from([w]);
        while let Some(u) = queue.pop_front() {
            if u == target {
                return true;
            }
            for (_, x) in self.arrow_successors(u, j) {
                if seen.insert(x) {
                    queue.push_back(x);
                }
            }
        }
        false
    }

    /// If `u = w1 v` with `w1 ∈ W^J` and `v ∈ W_{I(J, delta; w1)}`, returns `(w1, v)`.
    pub fn distinguished_factorization(&self, u: ElemId, j: Subset) -> Option<(ElemId, ElemId)> {
        let g = self.group;
        let w1 = g.min_coset_rep(u, j, Side::Right);
        let v = g.multiply(g.inverse(w1), u);
        let k = self.i_j_delta(j, w1).expect("w1 is in W^J");
        g.in_parabolic(v, k).then_some((w1, v))
    }

    /// Breadth-first search along arrows from `w` to an element of the form
    /// `w1 v` with `w1 ∈ W^J`, `v ∈ W_{I(J, delta; w1)}`.
    pub fn reduce_to_distinguished(&self, w: ElemId, j: Subset) -> Result<Reduction, TwistError> {
        let g = self.group;
        // arrow-reachable element -> (letter, predecessor)
        let mut parent: HashMap<ElemId, (usize, ElemId)> = HashMap::new();
        let mut queue = VecDeque::from([w]);
        while let Some(u) = queue.pop_front() {
            if let Some((w1, v)) = self.distinguished_factorization(u, j) {
                let mut path = Vec::new();
                let mut cur = u;
                while cur != w {
                    let (i, prev) = parent[&cur];
                    path.push((i, cur));
                    cur = prev;
                }
                path.reverse();
                return Ok(Reduction {
                    start: w,
                    target: u,
                    distinguished: w1,
                    residual: v,
                    path,
                });
            }
            for (i, x) in self.arrow_successors(u, j) {
                if x != w && !parent.contains_key(&x) {
                    parent.insert(x, (i, u));
                    queue.push_back(x);
                }
            }
        }
        Err(TwistError::SearchExhausted(g.format(w)))
    }

    /// Elements elementarily strongly `(J, delta)`-conjugate to `w`.
    pub fn elementary_partners(&self, w: ElemId, wj: &[ElemId]) -> Vec<ElemId> {
        let g = self.group;
        let lw = g.length(w);
        let mut out: Vec<ElemId> = wj
            .iter()
            .filter_map(|&x| {
                let dx = self.delta_on_element(x);
                let next = g.multiply(g.multiply(dx, w), g.inverse(x));
                if g.length(next) != lw {
                    return None;
                }
                let lx = g.length(x);
                let left = g.length(g.multiply(dx, w)) == lx + lw;
                let right = g.length(g.multiply(w, g.inverse(x))) == lx + lw;
                (left || right).then_some(next)
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn strongly_conjugate(&self, w: ElemId, other: ElemId, j: Subset) -> bool {
        let wj = self.group.parabolic_elements(j);
        let mut seen = vec![w];
        let mut queue = VecDeque::from([w]);
        while let Some(u) = queue.pop_front() {
            if u == other {
                return true;
            }
            for x in self.elementary_partners(u, &wj) {
                if !seen.contains(&x) {
                    seen.push(x);
                    queue.push_back(x);
                }
            }
        }
        false
    }

    /// Classes of `~_{J, delta}` on all of `W`.
    pub fn strong_conjugacy_classes(&self, j: Subset) -> Partition {
        let g = self.group;
        let wj = g.parabolic_elements(j);
        let mut parent: Vec<usize> = (0..g.order()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for w in g.elements() {
            for x in self.elementary_partners(w, &wj) {
                let (a, b) = (find(&mut parent, w.index()), find(&mut parent, x.index()));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut buckets: Vec<Vec<ElemId>> = vec![Vec::new(); g.order()];
        for w in g.elements() {
            let r = find(&mut parent, w.index());
            buckets[r].push(w);
        }
        Partition::from_classes(buckets.into_iter().filter(|b| !b.is_empty()).collect(), g.order())
    }

    /// Classes of `≈_{J, delta}`: strongly connected components of the arrow digraph.
    pub fn cyclic_shift_classes(&self, j: Subset) -> Partition {
        let g = self.group;
        let mut graph: DiGraph<ElemId, ()> = DiGraph::with_capacity(g.order(), g.order() * j.len());
        let nodes: Vec<_> = g.elements().map(|w| graph.add_node(w)).collect();
        for w in g.elements() {
            for (_, x) in self.arrow_successors(w, j) {
                graph.add_edge(nodes[w.index()], nodes[x.index()], ());
            }
        }
        let classes = tarjan_scc(&graph)
            .into_iter()
            .map(|c| c.into_iter().map(|n| graph[n]).collect())
            .collect();
        Partition::from_classes(classes, g.order())
    }

    /// Smallest `delta`-stable subset containing `supp(w)`.
    pub fn supp_delta(&self, w: ElemId) -> Subset {
        self.delta.stable_closure(self.group.supp(w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;

    fn group(label: &str) -> Group {
        Group::new(RootSystem::new(label.parse().unwrap()).unwrap()).unwrap()
    }

    fn twist<'g>(g: &'g Group, delta: &str) -> Twist<'g> {
        let d = DiagramAutomorphism::parse(delta, g.root_system().cartan()).unwrap();
        Twist::new(g, d).unwrap()
    }

    fn el(g: &Group, w: &str) -> ElemId {
        g.parse_element(w).unwrap()
    }

    fn words(g: &Group, v: &[ElemId]) -> Vec<String> {
        v.iter().map(|&w| g.format(w)).collect()
    }

    fn s(bits: u16) -> Subset {
        Subset::from_bits(bits)
    }

    #[test]
    fn parse_automorphisms() {
        let a3: CartanDatum = "A3".parse().unwrap();
        assert_eq!(DiagramAutomorphism::parse("flip", &a3).unwrap().apply(0), 2);
        assert!(DiagramAutomorphism::parse("3,2,1", &a3).is_ok());
        assert!(matches!(
            DiagramAutomorphism::parse("2,1,3", &a3),
            Err(TwistError::NotCartanPreserving(_))
        ));
        assert!(matches!(
            DiagramAutomorphism::parse("1,1,3", &a3),
            Err(TwistError::NotAPermutation(_))
        ));
        let b2: CartanDatum = "B2".parse().unwrap();
        assert!(DiagramAutomorphism::parse("2,1", &b2).is_err());
        assert!(DiagramAutomorphism::parse("flip", &b2).is_err());
        let d4: CartanDatum = "D4".parse().unwrap();
        assert_eq!(DiagramAutomorphism::all(&d4).len(), 4);
        let e6: CartanDatum = "E6".parse().unwrap();
        assert!(DiagramAutomorphism::parse("flip", &e6).is_ok());
        assert_eq!(DiagramAutomorphism::all(&"A1".parse().unwrap()).len(), 1);
    }

    #[test]
    fn delta_examples() {
        let g = group("A2");
        let t = twist(&g, "flip");
        assert_eq!(t.delta_on_element(el(&g, "1")), el(&g, "2"));
        let g3 = group("A3");
        let t3 = twist(&g3, "flip");
        assert_eq!(t3.delta_on_element(el(&g3, "1,2")), el(&g3, "3,2"));
        let id = twist(&g3, "id");
        for w in g3.elements() {
            assert_eq!(id.delta_on_element(w), w);
        }
    }

    #[test]
    fn delta_routes_agree() {
        for (label, deltas) in [("A3", vec!["flip"]), ("D4", vec!["flip", "tri", "tri2"]), ("A4", vec!["flip"])] {
            let g = group(label);
            for d in deltas {
                let t = twist(&g, d);
                for w in g.elements() {
                    assert_eq!(t.delta_on_element(w), t.delta_by_word(w));
                }
            }
        }
    }

    #[test]
    fn twisted_conjugate_examples() {
        let g = group("A2");
        let id = twist(&g, "id");
        let flip = twist(&g, "flip");
        let j = s(0b01);
        let y = el(&g, "1,2");
        assert_eq!(id.twisted_conjugate(g.identity(), y, j).unwrap(), y);
        assert_eq!(id.twisted_conjugate(el(&g, "1"), el(&g, "2"), j).unwrap(), el(&g, "1,2,1"));
        assert_eq!(flip.twisted_conjugate(el(&g, "1"), g.identity(), j).unwrap(), el(&g, "2,1"));
        assert!(id.twisted_conjugate(el(&g, "2"), y, j).is_err());
    }

    #[test]
    fn orbit_examples() {
        let g = group("A2");
        let t = twist(&g, "id");
        let j = s(0b01);
        let o = t.orbit(el(&g, "2"), Subset::EMPTY);
        assert_eq!(o.members, vec![el(&g, "2")]);
        let o = t.orbit(el(&g, "2"), j);
        assert_eq!(words(&g, &o.members), ["2", "1,2,1"]);
        assert_eq!(words(&g, &o.min_elements), ["2"]);
        let o = t.orbit(el(&g, "1,2"), j);
        assert_eq!(words(&g, &o.members), ["1,2", "2,1"]);
        assert_eq!(o.min_elements, o.members);
        let sizes: Vec<usize> = t.orbits(j).iter().map(|o| o.members.len()).collect();
        assert_eq!(sizes, [1, 1, 2, 2]);
    }

    #[test]
    fn i_j_delta_examples() {
        let g = group("A2");
        let (id, flip) = (twist(&g, "id"), twist(&g, "flip"));
        let j = s(0b01);
        assert_eq!(id.i_j_delta(j, g.identity()).unwrap(), j);
        assert_eq!(id.i_j_delta(j, el(&g, "1,2")).unwrap(), Subset::EMPTY);
        assert_eq!(flip.i_j_delta(j, el(&g, "1,2")).unwrap(), j);
        assert!(matches!(
            id.i_j_delta(j, el(&g, "1")),
            Err(TwistError::NotMinimal { .. })
        ));
    }

    #[test]
    fn class_decomposition_a2() {
        let g = group("A2");
        let t = twist(&g, "id");
        let classes = t.class_decomposition(s(0b01));
        let got: Vec<(String, Vec<String>)> = classes
            .iter()
            .map(|c| (g.format(c.base), words(&g, &c.members)))
            .collect();
        assert_eq!(
            got,
            vec![
                ("e".to_string(), vec!["e".to_string(), "1".to_string()]),
                ("2".to_string(), vec!["2".to_string(), "1,2,1".to_string()]),
                ("1,2".to_string(), vec!["1,2".to_string(), "2,1".to_string()]),
            ]
        );
        let singletons = t.class_decomposition(Subset::EMPTY);
        assert_eq!(singletons.len(), 6);
        assert!(singletons.iter().all(|c| c.members == vec![c.base]));
        // J = I: one class, computed by closure
        let full = t.class_decomposition(s(0b11));
        assert_eq!(full.len(), 1);
        assert_eq!(full[0].stabilizer_set, s(0b11));
        assert_eq!(full[0].members.len(), 6);
    }

    #[test]
    fn arrow_examples() {
        let g = group("A2");
        let t = twist(&g, "id");
        let i = s(0b11);
        assert_eq!(t.arrow_step(g.identity(), 0, i).unwrap(), Some(g.identity()));
        assert_eq!(t.arrow_step(el(&g, "1,2,1"), 0, i).unwrap(), Some(el(&g, "2")));
        assert_eq!(t.arrow_step(el(&g, "1,2"), 0, i).unwrap(), Some(el(&g, "2,1")));
        assert!(t.arrow_step(el(&g, "1,2"), 1, s(0b01)).is_err());
        // delta(j) != j from the identity: length goes up, no arrow
        let flip = twist(&g, "flip");
        assert_eq!(flip.arrow_step(g.identity(), 0, i).unwrap(), None);
    }

    #[test]
    fn reduction_examples() {
        let g = group("A2");
        let t = twist(&g, "id");
        let j = s(0b01);
        let r = t.reduce_to_distinguished(el(&g, "2"), j).unwrap();
        assert_eq!((r.distinguished, r.residual, r.path.len()), (el(&g, "2"), g.identity(), 0));
        let r = t.reduce_to_distinguished(el(&g, "1"), j).unwrap();
        assert_eq!((r.distinguished, r.residual), (g.identity(), el(&g, "1")));
        assert!(r.path.is_empty());
        let r = t.reduce_to_distinguished(el(&g, "1,2,1"), j).unwrap();
        let mut cur = r.start;
        for &(i, next) in &r.path {
            assert_eq!(t.arrow_step(cur, i, j).unwrap(), Some(next));
            cur = next;
        }
        assert_eq!(cur, g.multiply(r.distinguished, r.residual));
    }

    #[test]
    fn strong_conjugacy_examples() {
        let g = group("A2");
        let t = twist(&g, "id");
        let j = s(0b01);
        let (a, b) = (el(&g, "1,2"), el(&g, "2,1"));
        assert!(t.strongly_conjugate(a, a, j));
        assert!(t.strongly_conjugate(a, b, j));
        assert!(!t.strongly_conjugate(a, el(&g, "2"), j));
        let shift = t.cyclic_shift_classes(j);
        assert!(shift.same_class(a, b));
        let strong = t.strong_conjugacy_classes(j);
        assert!(strong.same_class(a, b));
    }

    #[test]
    fn supports() {
        let g = group("A2");
        let (id, flip) = (twist(&g, "id"), twist(&g, "flip"));
        assert_eq!(g.supp(g.identity()), Subset::EMPTY);
        assert_eq!(flip.supp_delta(el(&g, "1")), s(0b11));
        assert_eq!(id.supp_delta(el(&g, "1")), s(0b01));
        assert_eq!(id.supp_delta(el(&g, "1,2")), s(0b11));
    }

    #[test]
    fn action_axiom_exhaustive() {
        for (label, d) in [("A3", "flip"), ("B3", "id"), ("A3", "id")] {
            let g = group(label);
            let t = twist(&g, d);
            let j = s(0b011);
            let wj = g.parabolic_elements(j);
            for &x1 in &wj {
                for &x2 in &wj {
                    let x = g.multiply(x1, x2);
                    for y in g.elements() {
                        assert_eq!(t.act(x, y), t.act(x1, t.act(x2, y)));
                    }
                }
            }
        }
    }
}
