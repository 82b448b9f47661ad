//! Finite crystallographic root systems in simple-root coordinates.
//!
//! Simple roots use Bourbaki numbering. Internally indices are 0-based; every
//! user-facing string (`"s1 s2"`, `--assoc 2,4`) is 1-based.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
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
    fn letter(self) -> char {
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

/// A simple Cartan type such as `B4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: u8,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        // 16 simple roots is the width of `SimpleSet`.
        if !ok || rank > 16 {
            return Err(Error::InvalidCartanType(format!(
                "{}{rank}",
                family.letter()
            )));
        }
        Ok(CartanType {
            family,
            rank: rank as u8,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    /// Symmetric Gram matrix of the simple roots, scaled so every entry is an
    /// integer and the shortest simple root has squared length 2.
    pub fn gram_matrix(&self) -> Vec<Vec<i32>> {
        let n = self.rank();
        let mut g = vec![vec![0i32; n]; n];
        let link = |g: &mut Vec<Vec<i32>>, i: usize, j: usize, v: i32| {
            g[i][j] = v;
            g[j][i] = v;
        };
        let diag = |g: &mut Vec<Vec<i32>>, v: i32| {
            for (i, row) in g.iter_mut().enumerate() {
                row[i] = v;
            }
        };
        match self.family {
            Family::A => {
                diag(&mut g, 2);
                for i in 0..n.saturating_sub(1) {
                    link(&mut g, i, i + 1, -1);
                }
            }
            Family::B => {
                diag(&mut g, 4);
                g[n - 1][n - 1] = 2;
                for i in 0..n - 1 {
                    link(&mut g, i, i + 1, -2);
                }
            }
            Family::C => {
                diag(&mut g, 2);
                g[n - 1][n - 1] = 4;
                for i in 0..n - 2 {
                    link(&mut g, i, i + 1, -1);
                }
                link(&mut g, n - 2, n - 1, -2);
            }
            Family::D => {
                diag(&mut g, 2);
                for i in 0..n - 2 {
                    link(&mut g, i, i + 1, -1);
                }
                link(&mut g, n - 3, n - 1, -1);
            }
            Family::E => {
                diag(&mut g, 2);
                link(&mut g, 0, 2, -1);
                link(&mut g, 1, 3, -1);
                for i in 2..n - 1 {
                    link(&mut g, i, i + 1, -1);
                }
            }
            Family::F => {
                g[0][0] = 4;
                g[1][1] = 4;
                g[2][2] = 2;
                g[3][3] = 2;
                link(&mut g, 0, 1, -2);
                link(&mut g, 1, 2, -2);
                link(&mut g, 2, 3, -1);
            }
            Family::G => {
                g[0][0] = 2;
                g[1][1] = 6;
                link(&mut g, 0, 1, -3);
            }
        }
        g
    }

    /// Order of the Weyl group, computed from the classical formulas.
    pub fn weyl_order(&self) -> u64 {
        let n = self.rank() as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidCartanType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .trim_start_matches(['_', '-'])
            .parse()
            .map_err(|_| Error::InvalidCartanType(s.to_string()))?;
        CartanType::new(family, rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A set of simple indices (0-based), stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SimpleSet(u16);

impl SimpleSet {
    pub const EMPTY: SimpleSet = SimpleSet(0);

    pub fn all(rank: usize) -> Self {
        SimpleSet(((1u32 << rank) - 1) as u16)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        SimpleSet(it.into_iter().fold(0u16, |m, i| m | (1 << i)))
    }

    /// Parse a 1-based list such as `"2,4"`.
    pub fn parse_one_based(s: &str, rank: usize) -> Result<Self> {
        let mut set = SimpleSet::EMPTY;
        for part in s.split([',', ' ']).filter(|p| !p.is_empty()) {
            let i: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParabolic(format!("bad index {part:?}")))?;
            if i == 0 || i > rank {
                return Err(Error::BadSimpleIndex { index: i, rank });
            }
            set = set.with(i - 1);
        }
        Ok(set)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 16 && self.0 & (1 << i) != 0
    }

    pub fn with(self, i: usize) -> Self {
        SimpleSet(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        SimpleSet(self.0 & !(1 << i))
    }

    pub fn union(self, o: SimpleSet) -> Self {
        SimpleSet(self.0 | o.0)
    }

    pub fn intersection(self, o: SimpleSet) -> Self {
        SimpleSet(self.0 & o.0)
    }

    pub fn difference(self, o: SimpleSet) -> Self {
        SimpleSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: SimpleSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |&i| self.contains(i))
    }

    /// 1-based indices, as shown to users.
    pub fn one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for SimpleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    coords: Box<[i32]>,
}

impl Root {
    pub fn new(coords: impl Into<Box<[i32]>>) -> Self {
        Root {
            coords: coords.into(),
        }
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        Root::new(c)
    }

    pub fn coords(&self) -> &[i32] {
        &self.coords
    }

    pub fn height(&self) -> i32 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0) && self.coords.iter().any(|&c| c > 0)
    }

    pub fn negated(&self) -> Root {
        Root::new(self.coords.iter().map(|c| -c).collect::<Vec<_>>())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.coords.iter().enumerate() {
            match c {
                0 => {}
                1 => terms.push(format!("a{}", i + 1)),
                -1 => terms.push(format!("-a{}", i + 1)),
                c => terms.push(format!("{c}a{}", i + 1)),
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+").replace("+-", "-"))
        }
    }
}

/// Positive roots of a simple type together with reflection tables.
///
/// Roots are addressed by id: `0..N` are the positive roots in the fixed
/// order (height, then coordinates descending, so simple root `i` has id
/// `i`), and `N + j` is the negative of positive root `j`.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    gram: Vec<Vec<i32>>,
    cartan: Vec<Vec<i32>>,
    positive: Vec<Root>,
    index: HashMap<Box<[i32]>, usize>,
    reflect: Vec<Vec<u16>>,
}

impl RootSystem {
    pub fn build(ct: CartanType) -> Self {
        let n = ct.rank();
        let gram = ct.gram_matrix();
        let cartan: Vec<Vec<i32>> = (0..n)
            .map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[i][i]).collect())
            .collect();

        let reflect_coords = |coords: &[i32], i: usize| -> Vec<i32> {
            let pairing: i32 = (0..n).map(|j| coords[j] * cartan[i][j]).sum();
            let mut out = coords.to_vec();
            out[i] -= pairing;
            out
        };

        let mut positive: Vec<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
        let mut seen: HashMap<Box<[i32]>, ()> =
            positive.iter().map(|r| (r.coords.clone(), ())).collect();
        let mut frontier = 0;
        while frontier < positive.len() {
            let beta = positive[frontier].clone();
            frontier += 1;
            for i in 0..n {
                let image = Root::new(reflect_coords(beta.coords(), i));
                if image.is_positive() && !seen.contains_key(&image.coords) {
                    seen.insert(image.coords.clone(), ());
                    positive.push(image);
                }
            }
        }
        positive.sort_by(|a, b| {
            a.height()
                .cmp(&b.height())
                .then_with(|| b.coords.cmp(&a.coords))
        });
        let index: HashMap<Box<[i32]>, usize> = positive
            .iter()
            .enumerate()
            .map(|(k, r)| (r.coords.clone(), k))
            .collect();

        let np = positive.len();
        let reflect = (0..n)
            .map(|i| {
                let mut table = vec![0u16; 2 * np];
                for (k, beta) in positive.iter().enumerate() {
                    let image = reflect_coords(beta.coords(), i);
                    let id = if let Some(&j) = index.get(image.as_slice()) {
                        j
                    } else {
                        let neg: Vec<i32> = image.iter().map(|c| -c).collect();
                        np + index[neg.as_slice()]
                    };
                    table[k] = id as u16;
                    table[k + np] = ((id + np) % (2 * np)) as u16;
                }
                table
            })
            .collect();

        RootSystem {
            cartan_type: ct,
            gram,
            cartan,
            positive,
            index,
            reflect,
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank()
    }

    /// `A[i][j] = <alpha_i^vee, alpha_j>`.
    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn gram_matrix(&self) -> &[Vec<i32>] {
        &self.gram
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn root(&self, id: usize) -> Root {
        let np = self.positive.len();
        if id < np {
            self.positive[id].clone()
        } else {
            self.positive[id - np].negated()
        }
    }

    /// Id of a root (positive or negative) given its coordinates.
    pub fn root_id(&self, coords: &[i32]) -> Option<usize> {
        if let Some(&k) = self.index.get(coords) {
            return Some(k);
        }
        let neg: Vec<i32> = coords.iter().map(|c| -c).collect();
        self.index
            .get(neg.as_slice())
            .map(|&k| k + self.positive.len())
    }

    pub fn positive_index(&self, beta: &Root) -> Result<usize> {
        self.index
            .get(beta.coords())
            .copied()
            .ok_or_else(|| Error::NotARoot(beta.to_string(), self.cartan_type.to_string()))
    }

    /// Image id of root `id` under the simple reflection `s_i`.
    #[inline]
    pub fn reflect_id(&self, i: usize, id: usize) -> usize {
        self.reflect[i][id] as usize
    }

    pub(crate) fn reflection_table(&self, i: usize) -> &[u16] {
        &self.reflect[i]
    }

    pub fn check_simple(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::BadSimpleIndex {
                index: i + 1,
                rank: self.rank(),
            })
        }
    }

    /// `n_{alpha beta}`: coefficient of simple root `alpha` in `beta`.
    pub fn expansion_multiplicity(&self, alpha: usize, beta: &Root) -> Result<u32> {
        self.check_simple(alpha)?;
        let k = self.positive_index(beta)?;
        Ok(self.positive[k].coords[alpha] as u32)
    }

    /// Positive roots using `alpha` at least `k` times.
    pub fn filter_roots(&self, alpha: usize, k: u32) -> Vec<Root> {
        self.positive
            .iter()
            .filter(|b| b.coords()[alpha] >= k as i32)
            .cloned()
            .collect()
    }

    /// Largest coefficient of `alpha` over all positive roots.
    pub fn max_multiplicity(&self, alpha: usize) -> u32 {
        self.positive
            .iter()
            .map(|b| b.coords()[alpha] as u32)
            .max()
            .unwrap_or(0)
    }

    /// Scaled squared length `(beta, beta)` of positive root `k`.
    pub fn norm2(&self, k: usize) -> i32 {
        let c = self.positive[k].coords();
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += c[i] * c[j] * self.gram[i][j];
            }
        }
        s
    }

    /// `<omega_i, beta^vee>` for positive root `k`.
    pub fn coroot_coefficient(&self, i: usize, k: usize) -> i64 {
        let num = self.positive[k].coords()[i] * self.gram[i][i];
        let den = self.norm2(k);
        debug_assert_eq!(num % den, 0);
        (num / den) as i64
    }
}
