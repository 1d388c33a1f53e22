//! Finite crystallographic root systems built from Cartan data.
//!
//! Roots are integer vectors in the basis of simple roots. Simple roots are
//! labelled with Bourbaki numbering; indices are 0-based in the API and
//! 1-based in every user-facing string.
//!
//! The Cartan matrix convention is `a[i][j] = <alpha_i^vee, alpha_j>`, so the
//! simple reflection acts by `s_i(beta) = beta - (sum_j c_j a[i][j]) alpha_i`
//! for `beta = sum_j c_j alpha_j`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Hard bound on the number of roots produced by the closure. E8 has 240.
const MAX_ROOTS: usize = 240;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("unknown Cartan type `{0}` (expected e.g. A3, B2, D4, E6, F4, G2)")]
    UnknownType(String),
    #[error("rank {rank} is out of range for type {family} ({bound})")]
    RankOutOfRange {
        family: Family,
        rank: usize,
        bound: &'static str,
    },
    #[error("Cartan matrix must be {rank}x{rank}")]
    DimensionMismatch { rank: usize },
    #[error("diagonal entry a[{}][{}] = {value}, expected 2", .index + 1, .index + 1)]
    Diagonal { index: usize, value: i32 },
    #[error("off-diagonal entry a[{}][{}] = {value} is positive", .i + 1, .j + 1)]
    PositiveOffDiagonal { i: usize, j: usize, value: i32 },
    #[error("a[{}][{}] and a[{}][{}] must vanish together", .i + 1, .j + 1, .j + 1, .i + 1)]
    AsymmetricZero { i: usize, j: usize },
    #[error("Cartan matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("Cartan matrix is not of finite type (symmetrization is not positive definite)")]
    NotFiniteType,
    #[error("Dynkin diagram is disconnected; only quasi-simple types are supported")]
    Disconnected,
    #[error("simple index {index} out of range for rank {rank}")]
    SimpleIndex { index: usize, rank: usize },
    #[error("root index {index} out of range ({count} roots)")]
    RootIndex { index: usize, count: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl Family {
    fn check_rank(self, rank: usize) -> Result<(), RootSystemError> {
        let (ok, bound) = match self {
            Family::A => (rank >= 1, "n >= 1"),
            Family::B | Family::C => (rank >= 2, "n >= 2"),
            Family::D => (rank >= 3, "n >= 3"),
            Family::E => ((6..=8).contains(&rank), "n in {6,7,8}"),
            Family::F => (rank == 4, "n = 4"),
            Family::G => (rank == 2, "n = 2"),
        };
        if ok {
            Ok(())
        } else {
            Err(RootSystemError::RankOutOfRange {
                family: self,
                rank,
                bound,
            })
        }
    }
}

/// Type label together with its Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    family: Family,
    rank: usize,
    matrix: Vec<Vec<i32>>,
}

impl CartanDatum {
    /// The standard Cartan matrix of the given type, Bourbaki labelling.
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        family.check_rank(rank)?;
        let n = rank;
        let mut a = vec![vec![0i32; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i32, aji: i32| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match family {
            Family::A => {
                for i in 0..n.saturating_sub(1) {
                    link(i, i + 1, -1, -1);
                }
            }
            Family::B => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1, -1);
                }
                // alpha_n short
                link(n - 2, n - 1, -1, -2);
            }
            Family::C => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1, -1);
                }
                // alpha_n long
                link(n - 2, n - 1, -2, -1);
            }
            Family::D => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1, -1);
                }
                link(n - 3, n - 1, -1, -1);
            }
            Family::E => {
                // 1-3-4-5-6(-7-8), 2 attached to 4
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                for i in 2..n - 1 {
                    link(i, i + 1, -1, -1);
                }
            }
            Family::F => {
                link(0, 1, -1, -1);
                // alpha_1, alpha_2 long; alpha_3, alpha_4 short
                link(1, 2, -1, -2);
                link(2, 3, -1, -1);
            }
            Family::G => {
                // alpha_1 short, alpha_2 long
                link(0, 1, -3, -1);
            }
        }
        Self::from_matrix(family, rank, a)
    }

    /// Validates an explicit Cartan matrix.
    pub fn from_matrix(
        family: Family,
        rank: usize,
        matrix: Vec<Vec<i32>>,
    ) -> Result<Self, RootSystemError> {
        family.check_rank(rank)?;
        if matrix.len() != rank || matrix.iter().any(|row| row.len() != rank) {
            return Err(RootSystemError::DimensionMismatch { rank });
        }
        for i in 0..rank {
            if matrix[i][i] != 2 {
                return Err(RootSystemError::Diagonal {
                    index: i,
                    value: matrix[i][i],
                });
            }
            for j in 0..rank {
                if i == j {
                    continue;
                }
                if matrix[i][j] > 0 {
                    return Err(RootSystemError::PositiveOffDiagonal {
                        i,
                        j,
                        value: matrix[i][j],
                    });
                }
                if (matrix[i][j] == 0) != (matrix[j][i] == 0) {
                    return Err(RootSystemError::AsymmetricZero { i, j });
                }
            }
        }
        let datum = CartanDatum {
            family,
            rank,
            matrix,
        };
        if !datum.is_connected() {
            return Err(RootSystemError::Disconnected);
        }
        let d = datum.symmetrizer()?;
        if !positive_definite(&datum.matrix, &d) {
            return Err(RootSystemError::NotFiniteType);
        }
        Ok(datum)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &[Vec<i32>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> i32 {
        self.matrix[i][j]
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.rank];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..self.rank {
                if !seen[j] && self.matrix[i][j] != 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Squared lengths `d_i = (alpha_i, alpha_i)` as coprime positive
    /// integers, satisfying `d_i a_ij = d_j a_ji`.
    pub fn symmetrizer(&self) -> Result<Vec<i64>, RootSystemError> {
        let n = self.rank;
        // rationals as (num, den)
        let mut d: Vec<Option<(i64, i64)>> = vec![None; n];
        d[0] = Some((1, 1));
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            let (p, q) = d[i].unwrap();
            for j in 0..n {
                let (aij, aji) = (self.matrix[i][j] as i64, self.matrix[j][i] as i64);
                if i == j || aij == 0 {
                    continue;
                }
                // d_j = d_i * a_ij / a_ji
                let (num, den) = reduce(p * aij, q * aji);
                match d[j] {
                    None => {
                        d[j] = Some((num, den));
                        stack.push(j);
                    }
                    Some(existing) if existing != (num, den) => {
                        return Err(RootSystemError::NotSymmetrizable)
                    }
                    Some(_) => {}
                }
            }
        }
        let d: Vec<(i64, i64)> = d.into_iter().map(|x| x.unwrap()).collect();
        let l = d.iter().fold(1, |acc, &(_, q)| lcm(acc, q));
        let ints: Vec<i64> = d.iter().map(|&(p, q)| p * (l / q)).collect();
        let g = ints.iter().fold(0, |acc, &x| gcd(acc, x));
        if ints.iter().any(|&x| x <= 0) {
            return Err(RootSystemError::NotSymmetrizable);
        }
        Ok(ints.into_iter().map(|x| x / g).collect())
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for CartanDatum {
    type Err = RootSystemError;

    /// Parses labels such as `A3`, `b2`, `E6`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let unknown = || RootSystemError::UnknownType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(unknown()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| unknown())?;
        CartanDatum::new(family, rank)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

fn reduce(num: i64, den: i64) -> (i64, i64) {
    let g = gcd(num, den).max(1);
    let s = if den < 0 { -1 } else { 1 };
    (s * num / g, s * den / g)
}

/// Sylvester's criterion on `S = diag(d) A`, by fraction-free elimination.
fn positive_definite(a: &[Vec<i32>], d: &[i64]) -> bool {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| d[i] as i128 * a[i][j] as i128).collect())
        .collect();
    let mut prev = 1i128;
    for k in 0..n {
        // m[k][k] is the k-th leading principal minor
        if m[k][k] <= 0 {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    true
}

/// A root as its coefficient vector in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    coords: Vec<i32>,
}

impl Root {
    pub fn coords(&self) -> &[i32] {
        &self.coords
    }

    pub fn height(&self) -> i32 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    /// Simple indices with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
    }
}

/// Full root system with its simple-reflection tables.
///
/// Roots `0..N` are the positive roots sorted by height and then by
/// coordinates; root `r + N` is `-root(r)`.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan: CartanDatum,
    sym: Vec<i64>,
    roots: Vec<Root>,
    index: HashMap<Vec<i32>, usize>,
    simple: Vec<usize>,
    reflect: Vec<Vec<u8>>,
}

impl RootSystem {
    pub fn new(cartan: CartanDatum) -> Result<Self, RootSystemError> {
        let n = cartan.rank;
        let sym = cartan.symmetrizer()?;
        let unit = |i: usize, sign: i32| {
            let mut v = vec![0; n];
            v[i] = sign;
            v
        };
        let mut seen: HashMap<Vec<i32>, ()> = HashMap::new();
        let mut queue: VecDeque<Vec<i32>> = VecDeque::new();
        for i in 0..n {
            for sign in [1, -1] {
                let v = unit(i, sign);
                seen.insert(v.clone(), ());
                queue.push_back(v);
            }
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let image = reflect_coords(&cartan, i, &beta);
                if !seen.contains_key(&image) {
                    if seen.len() >= MAX_ROOTS {
                        return Err(RootSystemError::NotFiniteType);
                    }
                    seen.insert(image.clone(), ());
                    queue.push_back(image);
                }
            }
        }
        let mut positive: Vec<Vec<i32>> = seen
            .into_keys()
            .filter(|v| v.iter().all(|&c| c >= 0))
            .collect();
        positive.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        let np = positive.len();
        let mut roots: Vec<Root> = positive
            .iter()
            .map(|c| Root { coords: c.clone() })
            .collect();
        roots.extend(positive.iter().map(|c| Root {
            coords: c.iter().map(|x| -x).collect(),
        }));
        let index: HashMap<Vec<i32>, usize> = roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.coords.clone(), k))
            .collect();
        let simple: Vec<usize> = (0..n).map(|i| index[&unit(i, 1)]).collect();
        let reflect: Vec<Vec<u8>> = (0..n)
            .map(|i| {
                roots
                    .iter()
                    .map(|r| index[&reflect_coords(&cartan, i, &r.coords)] as u8)
                    .collect()
            })
            .collect();
        debug_assert_eq!(roots.len(), 2 * np);
        Ok(RootSystem {
            cartan,
            sym,
            roots,
            index,
            simple,
            reflect,
        })
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, r: usize) -> &Root {
        &self.roots[r]
    }

    pub fn index_of(&self, coords: &[i32]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Root index of the simple root `alpha_i`.
    pub fn simple_root(&self, i: usize) -> usize {
        self.simple[i]
    }

    /// If root `r` is simple, its simple index.
    pub fn simple_index_of(&self, r: usize) -> Option<usize> {
        self.simple.iter().position(|&s| s == r)
    }

    pub fn is_positive(&self, r: usize) -> bool {
        r < self.num_positive()
    }

    pub fn negate(&self, r: usize) -> usize {
        let np = self.num_positive();
        (r + np) % (2 * np)
    }

    /// Index of `s_i(alpha_r)`.
    pub fn reflect(&self, i: usize, r: usize) -> Result<usize, RootSystemError> {
        self.check_simple(i)?;
        self.check_root(r)?;
        Ok(self.reflect[i][r] as usize)
    }

    /// Row `i` of the reflection table: `table[r]` is the index of `s_i(alpha_r)`.
    pub fn reflection_table(&self, i: usize) -> &[u8] {
        &self.reflect[i]
    }

    /// `<alpha_r, alpha_s^vee> = 2 (alpha_r, alpha_s) / (alpha_s, alpha_s)`.
    pub fn coroot_pairing(&self, r: usize, s: usize) -> Result<i32, RootSystemError> {
        self.check_root(r)?;
        self.check_root(s)?;
        let rs = self.doubled_form(r, s);
        let ss = self.doubled_form(s, s);
        Ok((2 * rs / ss) as i32)
    }

    /// `2 (alpha_r, alpha_s)` with `(alpha_i, alpha_i)` given by the symmetrizer.
    fn doubled_form(&self, r: usize, s: usize) -> i64 {
        let (x, y) = (&self.roots[r].coords, &self.roots[s].coords);
        let n = self.rank();
        let mut total = 0i64;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                total += x[i] as i64 * y[j] as i64 * self.sym[i] * self.cartan.matrix[i][j] as i64;
            }
        }
        total
    }

    fn check_simple(&self, i: usize) -> Result<(), RootSystemError> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(RootSystemError::SimpleIndex {
                index: i,
                rank: self.rank(),
            })
        }
    }

    fn check_root(&self, r: usize) -> Result<(), RootSystemError> {
        if r < self.num_roots() {
            Ok(())
        } else {
            Err(RootSystemError::RootIndex {
                index: r,
                count: self.num_roots(),
            })
        }
    }
}

fn reflect_coords(cartan: &CartanDatum, i: usize, beta: &[i32]) -> Vec<i32> {
    let pairing: i32 = beta
        .iter()
        .zip(&cartan.matrix[i])
        .map(|(c, a)| c * a)
        .sum();
    let mut out = beta.to_vec();
    out[i] -= pairing;
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(label: &str) -> RootSystem {
        RootSystem::new(label.parse().unwrap()).unwrap()
    }

    #[test]
    fn small_counts() {
        let a1 = rs("A1");
        assert_eq!((a1.num_roots(), a1.num_positive()), (2, 1));
        let a2 = rs("A2");
        assert_eq!(a2.num_positive(), 3);
        let coords: Vec<&[i32]> = a2.roots()[..3].iter().map(|r| r.coords()).collect();
        assert_eq!(coords, vec![&[0, 1][..], &[1, 0], &[1, 1]]);
        assert_eq!(rs("G2").num_roots(), 12);
        assert_eq!(rs("G2").num_positive(), 6);
    }

    #[test]
    fn a2_reflections() {
        let a2 = rs("A2");
        let a1 = a2.simple_root(0);
        let a2r = a2.simple_root(1);
        let sum = a2.index_of(&[1, 1]).unwrap();
        assert_eq!(a2.reflect(0, a1).unwrap(), a2.negate(a1));
        assert_eq!(a2.reflect(0, a2r).unwrap(), sum);
        assert_eq!(a2.reflect(1, sum).unwrap(), a1);
        assert!(a2.reflect(2, 0).is_err());
        assert!(a2.reflect(0, 6).is_err());
    }

    #[test]
    fn pairings() {
        let a2 = rs("A2");
        let (p, q) = (a2.simple_root(0), a2.simple_root(1));
        assert_eq!(a2.coroot_pairing(p, p).unwrap(), 2);
        assert_eq!(a2.coroot_pairing(p, q).unwrap(), -1);
        let g2 = rs("G2");
        let (short, long) = (g2.simple_root(0), g2.simple_root(1));
        assert_eq!(g2.coroot_pairing(long, short).unwrap(), -3);
        assert_eq!(g2.coroot_pairing(short, long).unwrap(), -1);
        let b2 = rs("B2");
        assert_eq!(b2.cartan().symmetrizer().unwrap(), vec![2, 1]);
    }

    #[test]
    fn rejects_bad_data() {
        assert!(matches!(
            "E5".parse::<CartanDatum>(),
            Err(RootSystemError::RankOutOfRange { .. })
        ));
        assert!(matches!(
            "X2".parse::<CartanDatum>(),
            Err(RootSystemError::UnknownType(_))
        ));
        // affine A1
        let affine = vec![vec![2, -2], vec![-2, 2]];
        assert_eq!(
            CartanDatum::from_matrix(Family::G, 2, affine),
            Err(RootSystemError::NotFiniteType)
        );
        let bad_diag = vec![vec![1, -1], vec![-1, 2]];
        assert!(matches!(
            CartanDatum::from_matrix(Family::G, 2, bad_diag),
            Err(RootSystemError::Diagonal { index: 0, value: 1 })
        ));
        let zero = vec![vec![2, 0], vec![-1, 2]];
        assert!(matches!(
            CartanDatum::from_matrix(Family::G, 2, zero),
            Err(RootSystemError::AsymmetricZero { .. })
        ));
        let split = vec![vec![2, 0], vec![0, 2]];
        assert_eq!(
            CartanDatum::from_matrix(Family::G, 2, split),
            Err(RootSystemError::Disconnected)
        );
    }

    #[test]
    fn reflections_involutive_and_sign_uniform() {
        for label in ["A4", "B3", "C3", "D4", "G2", "F4", "E6"] {
            let rs = rs(label);
            for i in 0..rs.rank() {
                for r in 0..rs.num_roots() {
                    let s = rs.reflect(i, r).unwrap();
                    assert_eq!(rs.reflect(i, s).unwrap(), r);
                }
            }
            for (r, root) in rs.roots().iter().enumerate() {
                let pos = root.coords().iter().all(|&c| c >= 0);
                let neg = root.coords().iter().all(|&c| c <= 0);
                assert!(pos ^ neg);
                assert_eq!(pos, rs.is_positive(r));
                assert_eq!(rs.root(rs.negate(r)).coords().iter().map(|c| -c).collect::<Vec<_>>(), root.coords());
            }
        }
    }
}
