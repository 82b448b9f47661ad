//! Deformations of the cup product on `H^*(G/P)`.
//!
//! To `w` in `W^P` and an associated simple root `alpha` attach the multiset
//! of multiplicities `n_{alpha,beta}` of `alpha` in the inverted roots
//! `beta > 0, w beta < 0`, keeping only nonzero entries. That multiset, the
//! [`ExponentProfile`], determines the deformation monomial of `w`; every
//! specialization used here is a degree computation on profiles:
//!
//! * `s = 1`: the `t_alpha`-degree is the sum of the entries;
//! * `s -> 0`: the `t_alpha`-degree is the number of entries, `l(w_alpha)`.
//!
//! A constant survives the Belkale-Kumar product (`bk`) when every `s = 1`
//! degree is additive, and survives `star0` when every `s -> 0` degree is.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{CartanType, RootSystem, SimpleSet};
use crate::schubert::{FlagVariety, StructureConstantTable};
use crate::weyl::{is_min_coset_rep, parabolic_decompose, Quotient, WeylElement, DEFAULT_BOUND};

/// Multisets of multiplicities, one per associated simple root.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentProfile {
    assoc: SimpleSet,
    // counts[a][k - 1]: number of entries equal to k for the a-th assoc root
    counts: Vec<Vec<u32>>,
}

impl ExponentProfile {
    fn compute(rs: &RootSystem, w: &WeylElement, assoc: SimpleSet) -> Self {
        let roots = rs.positive_roots();
        let counts = assoc
            .iter()
            .map(|alpha| {
                let mut c = vec![0u32; rs.max_multiplicity(alpha) as usize];
                for k in w.inversion_ids() {
                    let m = roots[k].coords()[alpha];
                    if m > 0 {
                        c[m as usize - 1] += 1;
                    }
                }
                c
            })
            .collect();
        ExponentProfile { assoc, counts }
    }

    pub fn assoc(&self) -> SimpleSet {
        self.assoc
    }

    fn slot(&self, alpha: usize) -> Result<usize> {
        if !self.assoc.contains(alpha) {
            return Err(Error::Precondition(format!(
                "s{} is not an associated root of {}",
                alpha + 1,
                self.assoc
            )));
        }
        Ok(self.assoc.iter().position(|a| a == alpha).unwrap())
    }

    /// Sorted entries of the multiset for `alpha`.
    pub fn multiset(&self, alpha: usize) -> Result<Vec<u32>> {
        let c = &self.counts[self.slot(alpha)?];
        Ok(c.iter()
            .enumerate()
            .flat_map(|(k, &n)| std::iter::repeat_n(k as u32 + 1, n as usize))
            .collect())
    }

    /// Number of entries equal to `k`, for each `k >= 1`.
    pub fn counts(&self, alpha: usize) -> Result<&[u32]> {
        Ok(&self.counts[self.slot(alpha)?])
    }

    /// Number of entries for `alpha`; equals `l(w_alpha)`.
    pub fn size(&self, alpha: usize) -> Result<u32> {
        Ok(self.counts[self.slot(alpha)?].iter().sum())
    }

    /// `t_alpha`-degree at `s = 1`.
    pub fn s1_degree(&self, alpha: usize) -> Result<u32> {
        Ok(self.counts[self.slot(alpha)?]
            .iter()
            .enumerate()
            .map(|(k, &n)| (k as u32 + 1) * n)
            .sum())
    }

    /// Number of entries `>= k`.
    pub fn filter_count(&self, alpha: usize, k: u32) -> Result<u32> {
        if k == 0 {
            return Err(Error::Precondition("filter level must be >= 1".into()));
        }
        Ok(self.counts[self.slot(alpha)?]
            .iter()
            .skip(k as usize - 1)
            .sum())
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|c| c.iter().all(|&n| n == 0))
    }
}

impl fmt::Display for ExponentProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .assoc
            .iter()
            .map(|a| {
                let m = self.multiset(a).unwrap();
                let m: Vec<String> = m.iter().map(|x| x.to_string()).collect();
                format!("a{}: {{{}}}", a + 1, m.join(","))
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Profile of `w` over the associated roots of `q`. Rejects `w` outside `W^P`.
pub fn f_profile(q: &Quotient, w: &WeylElement) -> Result<ExponentProfile> {
    let rs = q.root_system();
    if !is_min_coset_rep(w, q.levi()) {
        return Err(Error::NotMinimal(
            crate::notation::word_string(&w.reduced_word(rs)),
            q.levi().to_string(),
        ));
    }
    Ok(ExponentProfile::compute(rs, w, q.assoc()))
}

/// Number of inverted positive roots in which `alpha` occurs with
/// multiplicity at least `k`.
pub fn filter_count(rs: &RootSystem, w: &WeylElement, alpha: usize, k: u32) -> Result<u32> {
    rs.check_simple(alpha)?;
    if k == 0 {
        return Err(Error::Precondition("filter level must be >= 1".into()));
    }
    let roots = rs.positive_roots();
    Ok(w.inversion_ids()
        .filter(|&i| roots[i].coords()[alpha] >= k as i32)
        .count() as u32)
}

/// Exponent ledger of one associated root: profile of `w` minus those of
/// `u` and `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaLedger {
    /// 1-based simple root index.
    pub alpha: usize,
    /// `diff[k - 1]`: count difference of entries equal to `k`.
    pub diff: Vec<i64>,
    pub s1_degree: i64,
    pub s0_degree: i64,
}

impl AlphaLedger {
    /// Count differences of entries `>= k`, for `k = 1, 2, ..`.
    pub fn filter_diffs(&self) -> Vec<i64> {
        let mut out = self.diff.clone();
        for k in (0..out.len().saturating_sub(1)).rev() {
            out[k] += out[k + 1];
        }
        out
    }
}

/// A structure constant with its deformation exponents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformedCoefficient {
    pub c: u64,
    pub ledger: Vec<AlphaLedger>,
}

impl DeformedCoefficient {
    pub fn is_nonnegative(&self) -> bool {
        self.ledger
            .iter()
            .all(|l| l.filter_diffs().iter().all(|&d| d >= 0))
    }

    pub fn bk(&self) -> u64 {
        if self.ledger.iter().all(|l| l.s1_degree == 0) {
            self.c
        } else {
            0
        }
    }

    pub fn star0(&self) -> u64 {
        if self.ledger.iter().all(|l| l.s0_degree == 0) {
            self.c
        } else {
            0
        }
    }

    /// `s -> 0` for the roots in `limit`, `s = 1` for the others.
    pub fn mixed(&self, limit: SimpleSet) -> u64 {
        let ok = self.ledger.iter().all(|l| {
            if limit.contains(l.alpha - 1) {
                l.s0_degree == 0
            } else {
                l.s1_degree == 0
            }
        });
        if ok {
            self.c
        } else {
            0
        }
    }
}

fn ledger(pu: &ExponentProfile, pv: &ExponentProfile, pw: &ExponentProfile) -> Vec<AlphaLedger> {
    pw.assoc
        .iter()
        .zip(pw.counts.iter().zip(pu.counts.iter().zip(&pv.counts)))
        .map(|(alpha, (cw, (cu, cv)))| {
            let diff: Vec<i64> = (0..cw.len())
                .map(|k| cw[k] as i64 - cu[k] as i64 - cv[k] as i64)
                .collect();
            let s1_degree = diff
                .iter()
                .enumerate()
                .map(|(k, d)| (k as i64 + 1) * d)
                .sum();
            let s0_degree = diff.iter().sum();
            AlphaLedger {
                alpha: alpha + 1,
                diff,
                s1_degree,
                s0_degree,
            }
        })
        .collect()
}

/// Which product to expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductKind {
    Cup,
    Bk,
    Star0,
    /// `s -> 0` on the given associated roots, `s = 1` on the rest.
    Mixed(SimpleSet),
}

impl ProductKind {
    pub fn name(self) -> &'static str {
        match self {
            ProductKind::Cup => "cup",
            ProductKind::Bk => "bk",
            ProductKind::Star0 => "star0",
            ProductKind::Mixed(_) => "mixed",
        }
    }
}

/// Counting convention for nonzero constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// Ordered pairs `(u, v)`; the convention of the published counts.
    Ordered,
    /// Unordered pairs, `u <= v`.
    Unordered,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Ordered => "ordered",
            Convention::Unordered => "unordered",
        })
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ordered" => Ok(Convention::Ordered),
            "unordered" => Ok(Convention::Unordered),
            _ => Err(Error::Parse(
                s.into(),
                "expected ordered or unordered".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Counts {
    pub nonzero_cup: usize,
    pub nonzero_star0: usize,
    pub levi_movable: usize,
}

/// Nonzero counts under both conventions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub cartan_type: CartanType,
    /// 1-based associated roots.
    pub assoc: Vec<usize>,
    pub ordered: Counts,
    pub unordered: Counts,
}

impl ClassificationRecord {
    pub fn counts(&self, conv: Convention) -> Counts {
        match conv {
            Convention::Ordered => self.ordered,
            Convention::Unordered => self.unordered,
        }
    }

    pub fn to_json(&self, conv: Convention) -> serde_json::Value {
        let c = self.counts(conv);
        serde_json::json!({
            "type": self.cartan_type.to_string(),
            "assoc": self.assoc,
            "convention": conv.to_string(),
            "nonzero_cup": c.nonzero_cup,
            "nonzero_star0": c.nonzero_star0,
            "levi_movable": c.levi_movable,
        })
    }
}

/// One nonzero cup constant with its deformed values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeformedEntry {
    pub u: u32,
    pub v: u32,
    pub w: u32,
    pub c: u64,
    pub bk: u64,
    pub star0: u64,
}

/// A flag variety with its full cup table and all exponent profiles.
#[derive(Debug, Clone)]
pub struct Deformation {
    variety: FlagVariety,
    table: Arc<StructureConstantTable>,
    profiles: Vec<ExponentProfile>,
}

impl Deformation {
    pub fn new(variety: FlagVariety) -> Result<Self> {
        let table = variety.full_table()?;
        Deformation::from_table(variety, Arc::new(table))
    }

    pub fn from_table(variety: FlagVariety, table: Arc<StructureConstantTable>) -> Result<Self> {
        if table.quotient().len() != variety.quotient().len()
            || table.quotient().levi() != variety.quotient().levi()
        {
            return Err(Error::Precondition(
                "table does not match the flag variety".into(),
            ));
        }
        let q = variety.quotient();
        let rs = q.root_system();
        let profiles = q
            .elements()
            .iter()
            .map(|w| ExponentProfile::compute(rs, w, q.assoc()))
            .collect();
        Ok(Deformation {
            variety,
            table,
            profiles,
        })
    }

    pub fn variety(&self) -> &FlagVariety {
        &self.variety
    }

    pub fn quotient(&self) -> &Arc<Quotient> {
        self.variety.quotient()
    }

    pub fn table(&self) -> &Arc<StructureConstantTable> {
        &self.table
    }

    pub fn profile(&self, k: usize) -> &ExponentProfile {
        &self.profiles[k]
    }

    fn check(&self, ks: &[usize]) -> Result<()> {
        let n = self.profiles.len();
        match ks.iter().find(|&&k| k >= n) {
            Some(k) => Err(Error::Precondition(format!(
                "index {k} outside W^P (size {n})"
            ))),
            None => Ok(()),
        }
    }

    /// `c_{u,v}^w` together with its exponent ledger.
    pub fn coefficient(&self, u: usize, v: usize, w: usize) -> Result<DeformedCoefficient> {
        self.check(&[u, v, w])?;
        let (p, c) = (&self.profiles, self.table.get(u, v, w));
        Ok(DeformedCoefficient {
            c,
            ledger: ledger(&p[u], &p[v], &p[w]),
        })
    }

    pub fn bk_coefficient(&self, u: usize, v: usize, w: usize) -> Result<u64> {
        Ok(self.coefficient(u, v, w)?.bk())
    }

    pub fn star0_coefficient(&self, u: usize, v: usize, w: usize) -> Result<u64> {
        Ok(self.coefficient(u, v, w)?.star0())
    }

    pub fn mixed_coefficient(&self, u: usize, v: usize, w: usize, limit: SimpleSet) -> Result<u64> {
        self.check_limit(limit)?;
        Ok(self.coefficient(u, v, w)?.mixed(limit))
    }

    fn check_limit(&self, limit: SimpleSet) -> Result<()> {
        let assoc = self.quotient().assoc();
        if !limit.is_subset(assoc) {
            return Err(Error::Precondition(format!(
                "mixed set {limit} is not contained in the associated roots {assoc}"
            )));
        }
        Ok(())
    }

    pub fn value(&self, kind: ProductKind, u: usize, v: usize, w: usize) -> Result<u64> {
        let d = self.coefficient(u, v, w)?;
        Ok(match kind {
            ProductKind::Cup => d.c,
            ProductKind::Bk => d.bk(),
            ProductKind::Star0 => d.star0(),
            ProductKind::Mixed(a) => {
                self.check_limit(a)?;
                d.mixed(a)
            }
        })
    }

    /// Expansion of `sigma_u * sigma_v` in the chosen product.
    pub fn product(&self, kind: ProductKind, u: usize, v: usize) -> Result<Vec<(usize, u64)>> {
        self.check(&[u, v])?;
        let mut out = Vec::new();
        for (w, _) in self.table.product(u, v) {
            let c = self.value(kind, u, v, w)?;
            if c != 0 {
                out.push((w, c));
            }
        }
        Ok(out)
    }

    /// The first `(alpha, k)` (0-based root) at which the filter counts of
    /// `u` and `v` exceed that of `w`, if any.
    pub fn divisibility_check(&self, u: usize, v: usize, w: usize) -> Result<Option<(usize, u32)>> {
        let d = self.coefficient(u, v, w)?;
        for l in &d.ledger {
            if let Some(k) = l.filter_diffs().iter().position(|&x| x < 0) {
                return Ok(Some((l.alpha - 1, k as u32 + 1)));
            }
        }
        Ok(None)
    }

    /// Checks `l(u_alpha) + l(v_alpha) <= l(w_alpha)` for a nonzero constant;
    /// returns a violating root (0-based) if there is one.
    pub fn region_count_inequality(&self, u: usize, v: usize, w: usize) -> Result<Option<usize>> {
        let d = self.coefficient(u, v, w)?;
        if d.c == 0 {
            return Err(Error::Precondition("structure constant is zero".into()));
        }
        Ok(d.ledger
            .iter()
            .find(|l| l.s0_degree < 0)
            .map(|l| l.alpha - 1))
    }

    /// Every nonzero cup constant over unordered pairs, with `bk` and
    /// `star0` values.
    pub fn deformed_entries(&self) -> Vec<DeformedEntry> {
        self.table
            .entries()
            .par_iter()
            .map(|e| {
                let p = &self.profiles;
                let d = DeformedCoefficient {
                    c: e.c,
                    ledger: ledger(&p[e.u as usize], &p[e.v as usize], &p[e.w as usize]),
                };
                DeformedEntry {
                    u: e.u,
                    v: e.v,
                    w: e.w,
                    c: e.c,
                    bk: d.bk(),
                    star0: d.star0(),
                }
            })
            .collect()
    }

    pub fn classify(&self) -> ClassificationRecord {
        let (mut ordered, mut unordered) = (Counts::default(), Counts::default());
        for e in self.deformed_entries() {
            let mult = if e.u == e.v { 1 } else { 2 };
            for (counts, m) in [(&mut ordered, mult), (&mut unordered, 1)] {
                counts.nonzero_cup += m;
                counts.nonzero_star0 += m * (e.star0 != 0) as usize;
                counts.levi_movable += m * (e.bk != 0) as usize;
            }
        }
        ClassificationRecord {
            cartan_type: self.variety.cartan_type(),
            assoc: self.quotient().assoc().one_based(),
            ordered,
            unordered,
        }
    }

    /// Count of nonzero mixed constants over ordered pairs.
    pub fn count_mixed(&self, limit: SimpleSet) -> Result<usize> {
        self.check_limit(limit)?;
        let p = &self.profiles;
        Ok(self
            .table
            .entries()
            .par_iter()
            .filter(|e| {
                let d = DeformedCoefficient {
                    c: e.c,
                    ledger: ledger(&p[e.u as usize], &p[e.v as usize], &p[e.w as usize]),
                };
                d.mixed(limit) != 0
            })
            .map(|e| if e.u == e.v { 1 } else { 2 })
            .sum())
    }
}

/// Data attached to an intermediate parabolic `P ⊂ Q`: the cup table of
/// `G/Q` and of the fiber `Q/P`.
#[derive(Debug, Clone)]
pub struct QFactorization {
    p: Arc<Quotient>,
    q_levi: SimpleSet,
    base: Arc<StructureConstantTable>,
    fiber: Arc<StructureConstantTable>,
}

impl QFactorization {
    pub fn new(p: Arc<Quotient>, q_levi: SimpleSet) -> Result<Self> {
        let p_levi = p.levi();
        if !p_levi.is_subset(q_levi) || p_levi == q_levi {
            return Err(Error::Precondition(format!(
                "Q-levi {q_levi} must strictly contain P-levi {p_levi}"
            )));
        }
        let rs = p.root_system().clone();
        if !q_levi.is_subset(SimpleSet::all(rs.rank())) || q_levi == SimpleSet::all(rs.rank()) {
            return Err(Error::InvalidParabolic(format!(
                "Q-levi {q_levi} is not proper"
            )));
        }
        let base = Quotient::new(rs.clone(), q_levi, DEFAULT_BOUND)?;
        let fiber = Quotient::with_ambient(rs, q_levi, p_levi, DEFAULT_BOUND)?;
        let base = FlagVariety::from_quotient(Arc::new(base))?.full_table()?;
        let fiber = FlagVariety::from_quotient(Arc::new(fiber))?.full_table()?;
        Ok(QFactorization {
            p,
            q_levi,
            base: Arc::new(base),
            fiber: Arc::new(fiber),
        })
    }

    /// One factorization per maximal parabolic containing `P`.
    pub fn all_maximal(p: Arc<Quotient>) -> Result<Vec<Self>> {
        let rank = p.root_system().rank();
        p.assoc()
            .iter()
            .map(|alpha| QFactorization::new(p.clone(), SimpleSet::all(rank).without(alpha)))
            .collect()
    }

    pub fn q_levi(&self) -> SimpleSet {
        self.q_levi
    }

    pub fn base(&self) -> &Arc<StructureConstantTable> {
        &self.base
    }

    pub fn fiber(&self) -> &Arc<StructureConstantTable> {
        &self.fiber
    }

    /// `(index in G/Q, index in Q/P)` of the factors of `w = w' w''`.
    pub fn decompose(&self, k: usize) -> Result<(usize, usize)> {
        let rs = self.p.root_system();
        let (head, tail) = parabolic_decompose(rs, self.p.element(k), self.p.levi(), self.q_levi)?;
        Ok((
            self.base.quotient().require_index(&head)?,
            self.fiber.quotient().require_index(&tail)?,
        ))
    }

    /// Whether the triple `(u, v, w)` with `l(u) + l(v) + l(w) = dim G/P` and
    /// `c_{u,v}^{w^vee} != 0` is Q-factoring: its `G/Q` factors have
    /// complementary codimensions and a nonzero triple intersection.
    pub fn is_q_factoring(
        &self,
        table: &StructureConstantTable,
        u: usize,
        v: usize,
        w: usize,
    ) -> Result<bool> {
        let p = &self.p;
        if p.length(u) + p.length(v) + p.length(w) != p.dim() {
            return Err(Error::Precondition(
                "codimensions do not sum to dim G/P".into(),
            ));
        }
        if table.get(u, v, p.dual_index(w)) == 0 {
            return Err(Error::Precondition(
                "the triple intersection is zero".into(),
            ));
        }
        let (u1, _) = self.decompose(u)?;
        let (v1, _) = self.decompose(v)?;
        let (w1, _) = self.decompose(w)?;
        let b = self.base.quotient();
        if b.length(u1) + b.length(v1) + b.length(w1) != b.dim() {
            return Ok(false);
        }
        Ok(self.base.get(u1, v1, b.dual_index(w1)) != 0)
    }

    /// The two factors `c_{u',v'}^{w'}(G/Q)` and `c_{u'',v''}^{w''}(Q/P)`.
    pub fn factors(&self, u: usize, v: usize, w: usize) -> Result<(u64, u64)> {
        let (u1, u2) = self.decompose(u)?;
        let (v1, v2) = self.decompose(v)?;
        let (w1, w2) = self.decompose(w)?;
        Ok((self.base.get(u1, v1, w1), self.fiber.get(u2, v2, w2)))
    }

    /// Checks `a_{u,v}^w = c_{u',v'}^{w'} c_{u'',v''}^{w''}` for a triple with
    /// nonzero `star0` value.
    pub fn richmond_check(
        &self,
        deform: &Deformation,
        u: usize,
        v: usize,
        w: usize,
    ) -> Result<bool> {
        let a = deform.star0_coefficient(u, v, w)?;
        if a == 0 {
            return Err(Error::Precondition("star0 coefficient is zero".into()));
        }
        let (c1, c2) = self.factors(u, v, w)?;
        Ok(c1.checked_mul(c2) == Some(a))
    }
}
