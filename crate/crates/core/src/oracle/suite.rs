//! Named agreement checks between the fast paths and the oracles, plus the
//! structural invariants of the stratification. Each check produces one
//! [`OracleReport`].

use std::collections::HashSet;
use std::fmt;

use super::{
    bruhat_minimal, closure_oracle, coset_scan_min, enumerate_t_sequences, expected_group_order,
    i_j_delta_oracle, irreducible_oracle, length_minimal, positive_roots_by_strings, subword_products,
    twisted_orbit, OracleError, OracleReport,
};
use crate::pieces::{
    levi_root_identity_holds, parabolic_restriction_type, sequence_for, sequence_to_label, unipotent_root_check,
    Stratification,
};
use crate::twist::Twist;
use crate::weyl::{CosetKind, ElemId, Group, Side, Subset, BRUHAT_MATRIX_LIMIT};

/// Groups larger than this skip the exponential oracles.
pub const ORACLE_ORDER_LIMIT: usize = 2_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    GroupOrder,
    RootStrings,
    BruhatSubwords,
    DeltaRoutes,
    CosetScan,
    OrbitScan,
    StabilizerScan,
    SequenceBijection,
    ClassPartition,
    OrbitMinimality,
    OrderAxioms,
    BruhatSpecialization,
    ArrowReduction,
    StrongConjugacy,
    RootInclusions,
    LeviRootIdentity,
    Irreducibility,
    Monotonicity,
}

impl Check {
    pub const ALL: [Check; 18] = [
        Check::GroupOrder,
        Check::RootStrings,
        Check::BruhatSubwords,
        Check::DeltaRoutes,
        Check::CosetScan,
        Check::OrbitScan,
        Check::StabilizerScan,
        Check::SequenceBijection,
        Check::ClassPartition,
        Check::OrbitMinimality,
        Check::OrderAxioms,
        Check::BruhatSpecialization,
        Check::ArrowReduction,
        Check::StrongConjugacy,
        Check::RootInclusions,
        Check::LeviRootIdentity,
        Check::Irreducibility,
        Check::Monotonicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::GroupOrder => "group-order",
            Check::RootStrings => "root-strings",
            Check::BruhatSubwords => "bruhat-subwords",
            Check::DeltaRoutes => "delta-routes",
            Check::CosetScan => "coset-scan",
            Check::OrbitScan => "orbit-scan",
            Check::StabilizerScan => "stabilizer-scan",
            Check::SequenceBijection => "sequence-bijection",
            Check::ClassPartition => "class-partition",
            Check::OrbitMinimality => "orbit-minimality",
            Check::OrderAxioms => "order-axioms",
            Check::BruhatSpecialization => "bruhat-specialization",
            Check::ArrowReduction => "arrow-reduction",
            Check::StrongConjugacy => "strong-conjugacy",
            Check::RootInclusions => "root-inclusions",
            Check::LeviRootIdentity => "levi-root-identity",
            Check::Irreducibility => "irreducibility",
            Check::Monotonicity => "monotonicity",
        }
    }

    /// Runs the check for every `J` in `js`; global checks ignore `js`.
    pub fn run(self, tw: &Twist, js: &[Subset]) -> OracleReport {
        let mut report = OracleReport::new(self.name());
        let global = match self {
            Check::GroupOrder => Some(group_order(tw)),
            Check::RootStrings => Some(root_strings(tw)),
            Check::BruhatSubwords => Some(bruhat_subwords(tw)),
            Check::DeltaRoutes => Some(delta_routes(tw)),
            Check::BruhatSpecialization => Some(bruhat_specialization(tw)),
            _ => None,
        };
        if let Some(r) = global {
            report.merge(r);
            return report;
        }
        for &j in js {
            let r = match self {
                Check::CosetScan => coset_scan(tw, j),
                Check::OrbitScan => orbit_scan(tw, j),
                Check::StabilizerScan => stabilizer_scan(tw, j),
                Check::SequenceBijection => sequence_bijection(tw, j),
                Check::ClassPartition => class_partition(tw, j),
                Check::OrbitMinimality => orbit_minimality(tw, j),
                Check::OrderAxioms => order_axioms(tw, j),
                Check::ArrowReduction => arrow_reduction(tw, j),
                Check::StrongConjugacy => strong_conjugacy(tw, j),
                Check::RootInclusions => root_inclusions(tw, j),
                Check::LeviRootIdentity => levi_root_identity(tw, j),
                Check::Irreducibility => irreducibility(tw, j),
                Check::Monotonicity => monotonicity(tw, j),
                _ => unreachable!("global checks return early"),
            };
            report.merge(r);
        }
        report
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Every check, in [`Check::ALL`] order.
pub fn run_suite(tw: &Twist, js: &[Subset]) -> Vec<OracleReport> {
    Check::ALL.iter().map(|c| c.run(tw, js)).collect()
}

/// Longest element length up to which the subword oracle is run over a whole group.
pub const SUBWORD_SUITE_LIMIT: usize = 16;

fn small(g: &Group) -> bool {
    g.order() <= ORACLE_ORDER_LIMIT
}

fn subwords_affordable(g: &Group) -> bool {
    small(g) && g.length(ElemId::from_index(g.order() - 1)) <= SUBWORD_SUITE_LIMIT
}

fn skipped(name: &str, why: impl Into<String>) -> OracleReport {
    let mut r = OracleReport::new(name);
    r.note = Some(why.into());
    r
}

fn oracle_failure(r: &mut OracleReport, input: String, e: OracleError) {
    r.instances_checked += 1;
    r.fail(input, "oracle result", e.to_string());
}

fn label(tw: &Twist, j: Subset) -> String {
    format!("{} delta={} J={}", tw.group().root_system().cartan(), tw.delta(), j)
}

fn group_order(tw: &Twist) -> OracleReport {
    let g = tw.group();
    let c = g.root_system().cartan();
    let mut r = OracleReport::new("group-order");
    r.compare(|| c.to_string(), expected_group_order(c.family(), c.rank()), g.order() as u64);
    r
}

fn root_strings(tw: &Twist) -> OracleReport {
    let rs = tw.group().root_system();
    let mut r = OracleReport::new("root-strings");
    let mut fast: Vec<Vec<i32>> = rs
        .roots()
        .iter()
        .filter(|x| x.is_positive())
        .map(|x| x.coords().to_vec())
        .collect();
    fast.sort();
    r.compare(|| rs.cartan().to_string(), positive_roots_by_strings(rs.cartan()), fast);
    r
}

fn bruhat_subwords(tw: &Twist) -> OracleReport {
    let g = tw.group();
    if !subwords_affordable(g) {
        return skipped("bruhat-subwords", "longest element too long for the subword oracle");
    }
    let mut r = OracleReport::new("bruhat-subwords");
    for v in g.elements() {
        let below = match subword_products(g, v) {
            Ok(s) => s,
            Err(e) => {
                oracle_failure(&mut r, g.format(v), e);
                continue;
            }
        };
        for u in g.elements() {
            let expected = below.contains(g.perm(u));
            r.compare(|| format!("{} <= {}", g.format(u), g.format(v)), expected, g.bruhat_leq(u, v));
            r.compare(
                || format!("{} <= {} by descents", g.format(u), g.format(v)),
                expected,
                g.bruhat_leq_by_descents(u, v),
            );
        }
    }
    r
}

fn delta_routes(tw: &Twist) -> OracleReport {
    let g = tw.group();
    let mut r = OracleReport::new("delta-routes");
    for w in g.elements() {
        r.compare(|| g.format(w), tw.delta_by_word(w), tw.delta_on_element(w));
    }
    r
}

fn coset_scan(tw: &Twist, j: Subset) -> OracleReport {
    let g = tw.group();
    let mut r = OracleReport::new("coset-scan");
    if !small(g) {
        r.note = Some("group too large for coset scans".into());
        return r;
    }
    for w in g.elements() {
        for side in [Side::Right, Side::Left] {
            match coset_scan_min(g, w, j, side) {
                Ok(m) => r.compare(
                    || format!("{} w={} {side:?}", label(tw, j), g.format(w)),
                    m,
                    g.min_coset_rep(w, j, side),
                ),
                Err(e) => oracle_failure(&mut r, g.format(w), e),
            }
        }
    }
    r
}

fn orbit_scan(tw: &Twist, j: Subset) -> OracleReport {
    let g = tw.group();
    let mut r = OracleReport::new("orbit-scan");
    if !small(g) {
        r.note = Some("group too large for orbit scans".into());
        return r;
    }
    for orbit in tw.orbits(j) {
        let lit = twisted_orbit(tw, orbit.members[0], j);
        let input = || format!("{} orbit of {}", label(tw, j), g.format(orbit.members[0]));
        r.compare(input, &lit, &orbit.members);
        r.compare(input, &length_minimal(g, &lit), &orbit.min_elements);
    }
    r
}

fn stabilizer_scan(tw: &Twist, j: Subset) -> OracleReport {
    let g = tw.group();
    let mut r = OracleReport::new("stabilizer-scan");
    for w in g.min_reps(CosetKind::Right(j)) {
        let input = || format!("{} w={}", label(tw, j), g.format(w));
        match (i_j_delta_oracle(tw, j, w), tw.i_j_delta(j, w)) {
            (Ok(a), Ok(b)) => r.compare(input, a, b),
            (Err(e), _) => oracle_failure(&mut r, input(), e),
            (_, Err(e)) => oracle_failure(&mut r, input(), e.into()),
        }
    }
    r
}

fn sequence_bijection(tw: &Twist, j: Subset) -> OracleReport {
    let g = tw.group();
    let mut r = OracleReport::new("sequence-bijection");
    if !small(g) {
        r.note = Some("group too large for sequence enumeration".into());
        return r;
    }
    let reps = g.min_reps(CosetKind::Right(j));
    let seqs = match enumerate_t_sequences(tw, j) {
        Ok(s) => s,
        Err(e) => {
            oracle_failure(&mut r, label(tw, j), e);
            return r;
        }
    };
    r.compare(|| format!("{} sequence count", label(tw, j)), reps.len(), seqs.len());
    let mut labels = HashSet::new();
    for seq in &seqs {
        let input = || format!("{} sequence {:?}", label(tw, j), seq.steps);
        match sequence_to_label(tw, seq) {
            Ok(w) => {
                r.compare(input, true, labels.insert(w));
                r.compare(input, Ok(seq.clone()), sequence_for(tw, j, w));
            }
            Err(e) => oracle_failure(&mut r, input(), e.into()),
        }
    }
    for w in reps {
        r.compare(|| format!("{} label {}", label(tw, j), g.format(w)), true, labels.contains(&w));
    }
    r
}

fn class_partition(tw: &Twist, j: Subset) -> OracleReport {
    let g = tw.group();
    let mut r = OracleReport::new("class-partition");
    let classes = tw.class_decomposition(j);
    let mut hits = vec![0usize; g.order()];
    for c in &classes {
        for &x in &c.members {
            hits[x.index()] += 1;
        }
    }
    for w in g.elements() {
        r.compare(|| format!("{} element {}", label(tw, j), g.format(w)), 1, hits[w.index()]);
    }
    r.compare(
        || format!("{} class count", label(tw, j)),
        g.min_reps(CosetKind::Right(j)).len(),
        classes.len(),
    );
    r
}

fn orbit_minimality(tw: &Twist, j: Subset) -> OracleReport {
    let g = tw.group();
    let mut r = OracleReport::new("orbit-minimality");
    for orbit in tw.orbits(j) {
        r.compare(
            || format!("{} orbit of {}", label(tw, j), g.format(orbit.members[0])),
            length_minimal(g, &orbit.members),
            bruhat_minimal(g, &orbit.members),
        );
    }
    r
}

fn order_axioms(tw: &Twist, j: Subset) -> OracleReport {
    let g = tw.group();
    let mut r = OracleReport::new("order-axioms");
    let st = Stratification::new(tw, j);
    let reps = st.right_reps().to_vec();
    let n = reps.len();
    let mut m = vec![vec![false; n]; n];
    for (b, &wb) in reps.iter().enumerate() {
        let mins = st.min_set(wb).expect("rep is in W^J");
        for (a, &wa) in reps.iter().enumerate() {
            let first = st.leq(wa, wb).expect("rep is in W^J");
            m[a][b] = first;
            for &vp in &mins[1..] {
                r.compare(
                    || format!("{} {} vs {} at v'={}", label(tw, j), g.format(wa), g.format(wb), g.format(vp)),
                    first,
                    st.leq_against(wa, vp).expect("rep is in W^J"),
                );
            }
        }
    }
    for a in 0..n {
        r.compare(|| format!("{} reflexive at {}", label(tw, j), g.format(reps[a])), true, m[a][a]);
        for b in 0..n {
            if a != b && m[a][b] && m[b][a] {
                r.fail(
                    format!("{} {} and {}", label(tw, j), g.format(reps[a]), g.format(reps[b])),
                    "antisymmetric",
                    "related both ways",
                );
            }
            if !m[a][b] {
                continue;
            }
            for c in 0..n {
                if m[b][c] && !m[a][c] {
                    r.fail(
                        format!(
                            "{} {} <= {} <= {}",
                            label(tw, j),
                            g.format(reps[a]),
                            g.format(reps[b]),
                            g.format(reps[c])
                        ),
                        "transitive",
                        "missing relation",
                    );
                }
            }
        }
        r.instances_checked += n;
    }
    if !subwords_affordable(g) {
        r.note = Some("longest element too long for the closure oracle".into());
        return r;
    }
    match closure_oracle(tw, j) {
        Ok(c) => {
            r.compare(|| format!("{} rep order", label(tw, j)), &c.reps, &reps);
            for a in 0..n {
                for b in 0..n {
                    let input = || format!("{} {} vs {}", label(tw, j), g.format(reps[a]), g.format(reps[b]));
                    r.compare(input, c.some.get(a, b), m[a][b]);
                    r.compare(input, c.every.get(a, b), m[a][b]);
                }
            }
        }
        Err(e) => oracle_failure(&mut r, label(tw, j), e),
    }
    r
}

fn bruhat_specialization(tw: &Twist) -> OracleReport {
    let g = tw.group();
    let mut r = OracleReport::new("bruhat-specialization");
    if g.order() > BRUHAT_MATRIX_LIMIT {
        r.note = Some(format!("|W| = {} exceeds the Bruhat matrix limit {BRUHAT_MATRIX_LIMIT}", g.order()));
        return r;
    }
    let poset = Stratification::new(tw, Subset::EMPTY).closure_poset();
    r.compare(|| "node count".into(), g.order(), poset.len());
    let ids: Vec<ElemId> = poset.nodes.iter().map(|n| n.index_w).collect();
    for (a, &u) in ids.iter().enumerate() {
        for (b, &v) in ids.iter().enumerate() {
            r.compare(
                || format!("{} {} vs {}", g.root_system().cartan(), g.format(u), g.format(v)),
                g.bruhat_leq(u, v),
                poset.leq(a, b),
            );
        }
    }
    r
}

fn arrow_reduction(tw: &Twist, j: Subset) -> OracleReport {
    let g = tw.group();
    let mut r = OracleReport::new("arrow-reduction");
    for w in g.elements() {
        r.instances_checked += 1;
        let input = || format!("{} w={}", label(tw, j), g.format(w));
        let red = match tw.reduce_to_distinguished(w, j) {
            Ok(x) => x,
            Err(e) => {
                r.fail(input(), "a reduction", e.to_string());
                continue;
            }
        };
        let mut cur = w;
        for &(i, next) in &red.path {
            let ok = j.contains(i) && tw.generator_step(i, cur) == next && g.length(next) <= g.length(cur);
            if !ok {
                r.fail(input(), "valid arrow step", format!("{} -> {} via {}", g.format(cur), g.format(next), i + 1));
            }
            cur = next;
        }
        let k = tw.i_j_delta(j, red.distinguished);
        let ok = cur == red.target
            && g.multiply(red.distinguished, red.residual) == red.target
            && g.is_min_right(red.distinguished, j)
            && k.is_ok_and(|k| g.in_parabolic(red.residual, k));
        if !ok {
            r.fail(
                input(),
                "target = w1 v with w1 in W^J and v in W_I(J,delta;w1)",
                format!("{} = {} * {}", g.format(red.target), g.format(red.distinguished), g.format(red.residual)),
            );
        }
    }
    r
}

fn strong_conjugacy(tw: &Twist, j: Subset) -> OracleReport {
    let g = tw.group();
    let mut r = OracleReport::new("strong-conjugacy");
    let strong = tw.strong_conjugacy_classes(j);
    let shift = tw.cyclic_shift_classes(j);
    for orbit in tw.orbits(j) {
        let meets = orbit.members.iter().any(|&x| g.is_min_right(x, j));
        let base = orbit.min_elements[0];
        for &v in &orbit.min_elements[1..] {
            let input = || format!("{} {} and {}", label(tw, j), g.format(base), g.format(v));
            r.compare(input, true, strong.same_class(base, v));
            if meets {
                r.compare(input, true, shift.same_class(base, v));
            }
        }
        r.instances_checked += 1;
    }
    r
}

fn root_inclusions(tw: &Twist, j: Subset) -> OracleReport {
    let g = tw.group();
    let mut r = OracleReport::new("root-inclusions");
    for w in g.min_reps(CosetKind::Right(j)) {
        r.instances_checked += 1;
        match unipotent_root_check(tw, j, w) {
            Ok(rep) if rep.passed => {}
            Ok(rep) => r.fail(format!("{} w={}", label(tw, j), g.format(w)), "inclusions hold", rep.witnesses.join("; ")),
            Err(e) => r.fail(format!("{} w={}", label(tw, j), g.format(w)), "a sequence", e.to_string()),
        }
    }
    r
}

fn levi_root_identity(tw: &Twist, j: Subset) -> OracleReport {
    let g = tw.group();
    let mut r = OracleReport::new("levi-root-identity");
    for k in Subset::all(g.rank()) {
        for w in g.min_reps(CosetKind::Left(j)) {
            let input = || format!("{} K={} w={}", label(tw, j), k, g.format(w));
            match parabolic_restriction_type(g, j, k, w) {
                Ok(res) => r.compare(input, true, levi_root_identity_holds(g, j, k, res)),
                Err(e) => {
                    r.instances_checked += 1;
                    r.fail(input(), "a restriction", e.to_string());
                }
            }
        }
    }
    r
}

fn irreducibility(tw: &Twist, j: Subset) -> OracleReport {
    let g = tw.group();
    let mut r = OracleReport::new("irreducibility");
    if j == Subset::full(g.rank()) {
        return r;
    }
    if !small(g) {
        r.note = Some("group too large for the irreducibility oracle".into());
        return r;
    }
    let st = Stratification::new(tw, j);
    for w in g.min_reps(CosetKind::Left(j)) {
        let input = || format!("{} w={}", label(tw, j), g.format(w));
        match (irreducible_oracle(tw, j, w), st.is_irreducible(w)) {
            (Ok(a), Ok(b)) => r.compare(input, a, b),
            (Err(e), _) => oracle_failure(&mut r, input(), e),
            (_, Err(e)) => oracle_failure(&mut r, input(), e.into()),
        }
    }
    r
}

fn monotonicity(tw: &Twist, j: Subset) -> OracleReport {
    let g = tw.group();
    let mut r = OracleReport::new("monotonicity");
    let poset = Stratification::new(tw, j).closure_poset();
    let len: Vec<usize> = poset.nodes.iter().map(|n| g.length(n.orbit_min[0])).collect();
    for a in 0..poset.len() {
        for b in 0..poset.len() {
            if poset.leq(a, b) {
                r.compare(
                    || {
                        format!(
                            "{} {} below {}",
                            label(tw, j),
                            g.format(poset.nodes[a].index_w),
                            g.format(poset.nodes[b].index_w)
                        )
                    },
                    true,
                    len[a] <= len[b],
                );
            }
        }
    }
    for &(a, b) in &poset.hasse {
        r.compare(|| format!("{} hasse edge {a}->{b}", label(tw, j)), true, a != b && poset.leq(a, b));
    }
    r
}
