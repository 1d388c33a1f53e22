//! Command handlers behind the `flagpieces` binary. Every handler returns its
//! full output as a string so the same code path serves the binary and the
//! tests.

use std::fmt::Write as _;

use flagpieces::oracle::suite::{Check, ORACLE_ORDER_LIMIT};
use flagpieces::oracle::OracleReport;
use flagpieces::pieces::sequence_for;
use flagpieces::weyl::DEFAULT_MAX_ELEMENTS;
use flagpieces::{
    CartanDatum, DiagramAutomorphism, ElemId, Group, PieceError, RootSystem, Stratification, Subset, Twist,
};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    Pieces,
    Poset,
    Orbits,
    Sequence,
    Closure,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Format {
    Json,
    Dot,
    #[default]
    Text,
}

/// A fully specified job, before validation against the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobConfig {
    pub cartan: String,
    pub delta: String,
    /// 1-based, comma-separated. `None` means "every J" for verify and `∅`
    /// for everything else.
    pub j: Option<String>,
    pub command: Command,
    pub w: Option<String>,
    pub format: Format,
    pub parallelism: usize,
    pub max_elements: usize,
}

impl JobConfig {
    pub fn new(cartan: &str, command: Command) -> Self {
        JobConfig {
            cartan: cartan.to_string(),
            delta: "id".to_string(),
            j: None,
            command,
            w: None,
            format: Format::Text,
            parallelism: 1,
            max_elements: DEFAULT_MAX_ELEMENTS,
        }
    }
}

/// Configuration problems; all map to exit status 2.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("--cartan: {0}")]
    Cartan(String),
    #[error("--delta: {0}")]
    Delta(String),
    #[error("--j: {0}")]
    Subset(String),
    #[error("--w: {0}")]
    Word(String),
    #[error("the {0} command needs --w")]
    MissingWord(&'static str),
    #[error("{0}")]
    Precondition(String),
    #[error("--format {format} is not available for {command}")]
    Format { format: &'static str, command: &'static str },
    #[error("--parallelism: {0}")]
    Parallelism(String),
}

/// Output text and exit status of a successful run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: 0 }
    }
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Pieces => "pieces",
        Command::Poset => "poset",
        Command::Orbits => "orbits",
        Command::Sequence => "sequence",
        Command::Closure => "closure",
        Command::Verify => "verify",
    }
}

pub fn run(cfg: &JobConfig) -> Result<Outcome, ConfigError> {
    let cartan: CartanDatum = cfg.cartan.parse().map_err(|e: flagpieces::RootSystemError| ConfigError::Cartan(e.to_string()))?;
    let rs = RootSystem::new(cartan).map_err(|e| ConfigError::Cartan(e.to_string()))?;
    let delta = DiagramAutomorphism::parse(&cfg.delta, rs.cartan()).map_err(|e| ConfigError::Delta(e.to_string()))?;
    let rank = rs.rank();
    let js: Vec<Subset> = match &cfg.j {
        Some(s) => vec![Subset::parse(s, rank).map_err(|e| ConfigError::Subset(e.to_string()))?],
        None if cfg.command == Command::Verify => Subset::all(rank).collect(),
        None => vec![Subset::EMPTY],
    };
    if cfg.format == Format::Dot && cfg.command != Command::Poset {
        return Err(ConfigError::Format {
            format: "dot",
            command: command_name(cfg.command),
        });
    }
    if cfg.parallelism == 0 {
        return Err(ConfigError::Parallelism("must be at least 1".into()));
    }
    let g = Group::with_ceiling(rs, cfg.max_elements).map_err(|e| ConfigError::Cartan(e.to_string()))?;
    let tw = Twist::new(&g, delta).map_err(|e| ConfigError::Delta(e.to_string()))?;
    let word = |name: &'static str| -> Result<ElemId, ConfigError> {
        let w = cfg.w.as_deref().ok_or(ConfigError::MissingWord(name))?;
        g.parse_element(w).map_err(|e| ConfigError::Word(e.to_string()))
    };
    let j = js[0];
    let ctx = Ctx { cfg, tw: &tw };
    match cfg.command {
        Command::Pieces => Ok(Outcome::ok(ctx.pieces(j))),
        Command::Poset => Ok(Outcome::ok(ctx.poset(j))),
        Command::Orbits => Ok(Outcome::ok(ctx.orbits(j))),
        Command::Sequence => ctx.sequence(j, word("sequence")?).map(Outcome::ok),
        Command::Closure => Ok(Outcome::ok(ctx.closure(j, word("closure")?))),
        Command::Verify => ctx.verify(&js),
    }
}

struct Ctx<'a, 'g> {
    cfg: &'a JobConfig,
    tw: &'a Twist<'g>,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

fn words(g: &Group, ws: &[ElemId]) -> Vec<String> {
    ws.iter().map(|&w| g.format(w)).collect()
}

#[derive(Serialize)]
struct PieceJson {
    word: String,
    length: usize,
    inverse: String,
    stabilizer: Vec<usize>,
    orbit_min: Vec<String>,
    irreducible: Option<bool>,
}

#[derive(Serialize)]
struct PiecesJson<'a> {
    cartan: String,
    delta: &'a str,
    #[serde(rename = "J")]
    j: Vec<usize>,
    pieces: Vec<PieceJson>,
}

#[derive(Serialize)]
struct NodeJson {
    id: usize,
    word: String,
    length: usize,
    stabilizer: Vec<usize>,
    irreducible: Option<bool>,
}

#[derive(Serialize)]
struct PosetJson<'a> {
    cartan: String,
    delta: &'a str,
    #[serde(rename = "J")]
    j: Vec<usize>,
    nodes: Vec<NodeJson>,
    hasse: Vec<[usize; 2]>,
}

#[derive(Serialize)]
struct OrbitJson {
    size: usize,
    members: Vec<String>,
    min_elements: Vec<String>,
    /// Members grouped into cyclic-shift classes.
    shift_classes: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct OrbitsJson<'a> {
    cartan: String,
    delta: &'a str,
    #[serde(rename = "J")]
    j: Vec<usize>,
    orbits: Vec<OrbitJson>,
}

#[derive(Serialize)]
struct StepJson {
    n: usize,
    #[serde(rename = "J")]
    j: Vec<usize>,
    w: String,
}

#[derive(Serialize)]
struct SequenceJson<'a> {
    cartan: String,
    delta: &'a str,
    #[serde(rename = "J")]
    j: Vec<usize>,
    w: String,
    steps: Vec<StepJson>,
}

#[derive(Serialize)]
struct ClosureJson<'a> {
    cartan: String,
    delta: &'a str,
    #[serde(rename = "J")]
    j: Vec<usize>,
    w: String,
    strata: Vec<String>,
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    cartan: String,
    delta: &'a str,
    passed: bool,
    checks: &'a [OracleReport],
}

fn irreducible_text(flag: Option<bool>) -> &'static str {
    match flag {
        Some(true) => "true",
        Some(false) => "false",
        None => "n/a: J=I",
    }
}

impl Ctx<'_, '_> {
    fn g(&self) -> &Group {
        self.tw.group()
    }

    fn cartan(&self) -> String {
        self.g().root_system().cartan().to_string()
    }

    fn header(&self, j: Subset) -> String {
        format!("# {} delta={} J={}\n", self.cartan(), self.cfg.delta, j)
    }

    fn pieces(&self, j: Subset) -> String {
        let g = self.g();
        let poset = Stratification::new(self.tw, j).closure_poset();
        if self.cfg.format == Format::Json {
            let pieces = poset
                .nodes
                .iter()
                .map(|n| PieceJson {
                    word: g.format(n.index_w),
                    length: g.length(n.index_w),
                    inverse: g.format(n.inv_w),
                    stabilizer: n.stabilizer_set.one_based(),
                    orbit_min: words(g, &n.orbit_min),
                    irreducible: n.irreducible,
                })
                .collect();
            return to_json(&PiecesJson {
                cartan: self.cartan(),
                delta: &self.cfg.delta,
                j: j.one_based(),
                pieces,
            });
        }
        let mut out = self.header(j);
        let _ = writeln!(out, "{} pieces", poset.len());
        for n in &poset.nodes {
            let _ = writeln!(
                out,
                "{}\tlength={}\tstabilizer={}\torbit_min=[{}]\tirreducible={}",
                g.format(n.index_w),
                g.length(n.index_w),
                n.stabilizer_set,
                words(g, &n.orbit_min).join(" "),
                irreducible_text(n.irreducible)
            );
        }
        out
    }

    fn poset(&self, j: Subset) -> String {
        let g = self.g();
        let poset = Stratification::new(self.tw, j).closure_poset();
        match self.cfg.format {
            Format::Json => {
                let nodes = poset
                    .nodes
                    .iter()
                    .enumerate()
                    .map(|(id, n)| NodeJson {
                        id,
                        word: g.format(n.index_w),
                        length: g.length(n.index_w),
                        stabilizer: n.stabilizer_set.one_based(),
                        irreducible: n.irreducible,
                    })
                    .collect();
                to_json(&PosetJson {
                    cartan: self.cartan(),
                    delta: &self.cfg.delta,
                    j: j.one_based(),
                    nodes,
                    hasse: poset.hasse.iter().map(|&(a, b)| [a, b]).collect(),
                })
            }
            Format::Dot => {
                let labels = words(g, &poset.nodes.iter().map(|n| n.index_w).collect::<Vec<_>>());
                let ranks: Vec<usize> = poset.nodes.iter().map(|n| g.length(n.orbit_min[0])).collect();
                render_dot(&labels, &ranks, &poset.hasse)
            }
            Format::Text => {
                let mut out = self.header(j);
                for (id, n) in poset.nodes.iter().enumerate() {
                    let _ = writeln!(out, "node {id}\t{}\tlength={}", g.format(n.index_w), g.length(n.index_w));
                }
                for &(a, b) in &poset.hasse {
                    let _ = writeln!(
                        out,
                        "edge {a} -> {b}\t{} < {}",
                        g.format(poset.nodes[a].index_w),
                        g.format(poset.nodes[b].index_w)
                    );
                }
                out
            }
        }
    }

    fn orbits(&self, j: Subset) -> String {
        let g = self.g();
        let shift = self.tw.cyclic_shift_classes(j);
        let orbits: Vec<OrbitJson> = self
            .tw
            .orbits(j)
            .into_iter()
            .map(|o| {
                let mut classes: Vec<Vec<ElemId>> = Vec::new();
                for &m in &o.members {
                    match classes.iter_mut().find(|c| shift.same_class(c[0], m)) {
                        Some(c) => c.push(m),
                        None => classes.push(vec![m]),
                    }
                }
                OrbitJson {
                    size: o.members.len(),
                    members: words(g, &o.members),
                    min_elements: words(g, &o.min_elements),
                    shift_classes: classes.iter().map(|c| words(g, c)).collect(),
                }
            })
            .collect();
        if self.cfg.format == Format::Json {
            return to_json(&OrbitsJson {
                cartan: self.cartan(),
                delta: &self.cfg.delta,
                j: j.one_based(),
                orbits,
            });
        }
        let mut out = self.header(j);
        let _ = writeln!(out, "{} orbits", orbits.len());
        for o in &orbits {
            let classes: Vec<String> = o.shift_classes.iter().map(|c| format!("{{{}}}", c.join(" "))).collect();
            let _ = writeln!(
                out,
                "size={}\tmembers=[{}]\tmin=[{}]\tshift_classes={}",
                o.size,
                o.members.join(" "),
                o.min_elements.join(" "),
                classes.join(" ")
            );
        }
        out
    }

    fn sequence(&self, j: Subset, w: ElemId) -> Result<String, ConfigError> {
        let g = self.g();
        let seq = sequence_for(self.tw, j, w).map_err(|e| match e {
            PieceError::NotRightMinimal { .. } => {
                ConfigError::Precondition(format!("sequence: w = {} is not in W^J for J = {j}", g.format(w)))
            }
            other => ConfigError::Precondition(other.to_string()),
        })?;
        if self.cfg.format == Format::Json {
            return Ok(to_json(&SequenceJson {
                cartan: self.cartan(),
                delta: &self.cfg.delta,
                j: j.one_based(),
                w: g.format(w),
                steps: seq
                    .steps
                    .iter()
                    .enumerate()
                    .map(|(n, &(jn, wn))| StepJson {
                        n,
                        j: jn.one_based(),
                        w: g.format(wn),
                    })
                    .collect(),
            }));
        }
        let mut out = self.header(j);
        let _ = writeln!(out, "n\tJ_n\tw_n");
        for (n, &(jn, wn)) in seq.steps.iter().enumerate() {
            let _ = writeln!(out, "{n}\t{jn}\t{}", g.format(wn));
        }
        Ok(out)
    }

    fn closure(&self, j: Subset, w: ElemId) -> String {
        let g = self.g();
        let strata = Stratification::new(self.tw, j).piece_closure(w);
        if self.cfg.format == Format::Json {
            return to_json(&ClosureJson {
                cartan: self.cartan(),
                delta: &self.cfg.delta,
                j: j.one_based(),
                w: g.format(w),
                strata: words(g, &strata),
            });
        }
        let mut out = self.header(j);
        for x in strata {
            let _ = writeln!(out, "{}", g.format(x));
        }
        out
    }

    fn verify(&self, js: &[Subset]) -> Result<Outcome, ConfigError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.cfg.parallelism)
            .build()
            .map_err(|e| ConfigError::Parallelism(e.to_string()))?;
        let reports = pool.install(|| verify_reports(self.tw, js));
        let passed = reports.iter().all(OracleReport::passed);
        let code = if passed { 0 } else { 1 };
        if self.cfg.format == Format::Json {
            let output = to_json(&VerifyJson {
                cartan: self.cartan(),
                delta: &self.cfg.delta,
                passed,
                checks: &reports,
            });
            return Ok(Outcome { output, code });
        }
        let mut out = format!("# {} delta={} verify over {} subsets J\n", self.cartan(), self.cfg.delta, js.len());
        if self.g().order() > ORACLE_ORDER_LIMIT {
            let _ = writeln!(out, "# |W| = {} > {ORACLE_ORDER_LIMIT}: exponential oracles skipped", self.g().order());
        }
        for r in &reports {
            let status = if r.passed() { "PASS" } else { "FAIL" };
            let _ = write!(out, "{status}\t{}\t{} instances", r.check_name, r.instances_checked);
            if !r.passed() {
                let _ = write!(out, ", {} failures", r.failures.len());
            }
            if let Some(note) = &r.note {
                let _ = write!(out, "\t({note})");
            }
            out.push('\n');
            for f in r.failures.iter().take(5) {
                let _ = writeln!(out, "  counterexample: {}: expected {}, got {}", f.input, f.expected, f.got);
            }
        }
        let _ = writeln!(out, "{}", if passed { "all checks passed" } else { "verification FAILED" });
        Ok(Outcome { output: out, code })
    }
}

/// Runs every check, parallel across checks and subsets; results are merged
/// in a fixed order so output does not depend on scheduling.
pub fn verify_reports(tw: &Twist, js: &[Subset]) -> Vec<OracleReport> {
    use rayon::prelude::*;
    let jobs: Vec<(Check, Vec<Subset>)> = Check::ALL
        .iter()
        .flat_map(|&c| {
            if is_global(c) {
                vec![(c, Vec::new())]
            } else {
                js.iter().map(|&j| (c, vec![j])).collect()
            }
        })
        .collect();
    let results: Vec<OracleReport> = jobs.par_iter().map(|(c, j)| c.run(tw, j)).collect();
    let mut merged: Vec<OracleReport> = Check::ALL.iter().map(|c| OracleReport::new(c.name())).collect();
    for ((c, _), r) in jobs.iter().zip(results) {
        let slot = Check::ALL.iter().position(|x| x == c).expect("known check");
        merged[slot].merge(r);
    }
    merged
}

fn is_global(c: Check) -> bool {
    matches!(
        c,
        Check::GroupOrder | Check::RootStrings | Check::BruhatSubwords | Check::DeltaRoutes | Check::BruhatSpecialization
    )
}

/// DOT for a Hasse diagram: edges point from the smaller element to the
/// larger, nodes are grouped into ranks by `ranks`.
pub fn render_dot(labels: &[String], ranks: &[usize], edges: &[(usize, usize)]) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, l) in labels.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{l}\"];");
    }
    let top = ranks.iter().copied().max().unwrap_or(0);
    for r in 0..=top {
        let members: Vec<String> = (0..labels.len()).filter(|&i| ranks[i] == r).map(|i| format!("n{i};")).collect();
        if !members.is_empty() {
            let _ = writeln!(out, "  {{ rank=same; {} }}", members.join(" "));
        }
    }
    for &(a, b) in edges {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

/// The Bruhat order of `W` as DOT, built from Bruhat covers directly.
pub fn bruhat_dot(g: &Group) -> String {
    let labels: Vec<String> = g.elements().map(|w| g.format(w)).collect();
    let ranks: Vec<usize> = g.elements().map(|w| g.length(w)).collect();
    let mut edges: Vec<(usize, usize)> = g.bruhat_cover_edges().into_iter().map(|(u, v)| (u.index(), v.index())).collect();
    edges.sort_unstable();
    render_dot(&labels, &ranks, &edges)
}
