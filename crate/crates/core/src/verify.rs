//! Exhaustive property suites over a [`Deformation`].
//!
//! Each suite returns a [`SuiteReport`]; a failed report carries the first
//! counterexample in index order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::deform::{filter_count, Deformation, ProductKind, QFactorization};
use crate::error::{Error, Result};
use crate::notation::word_string;
use crate::poly::EquivariantPolynomial;
use crate::rootsys::RootSystem;
use crate::schubert::{chevalley_multiply, structure_constants_pair, Restrictions};
use crate::weyl::{enumerate_group, project_w_alpha, WeylElement, DEFAULT_BOUND};

/// Quotients larger than this skip the polynomial cross-check.
pub const POLY_ORACLE_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Divisibility,
    Associativity,
    DegreeIdentity,
    RegionCount,
    Richmond,
    OracleEquivalence,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Divisibility,
        Suite::Associativity,
        Suite::DegreeIdentity,
        Suite::RegionCount,
        Suite::Richmond,
        Suite::OracleEquivalence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Divisibility => "divisibility",
            Suite::Associativity => "associativity",
            Suite::DegreeIdentity => "degree-identity",
            Suite::RegionCount => "region-count",
            Suite::Richmond => "richmond",
            Suite::OracleEquivalence => "oracle-equivalence",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(s.into(), "unknown verification suite".into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: usize,
    pub failure: Option<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "{}: pass ({} checks)", self.suite, self.checks)?,
            Some(why) => write!(
                f,
                "{}: FAIL after {} checks: {why}",
                self.suite, self.checks
            )?,
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}

fn report(suite: Suite, checks: usize, failure: Option<String>) -> SuiteReport {
    SuiteReport {
        suite,
        checks,
        failure,
        notes: Vec::new(),
    }
}

pub fn run_suite(d: &Deformation, suite: Suite) -> Result<SuiteReport> {
    match suite {
        Suite::Divisibility => divisibility(d),
        Suite::Associativity => associativity(d),
        Suite::DegreeIdentity => degree_identity(d.quotient().root_system()),
        Suite::RegionCount => region_count(d),
        Suite::Richmond => richmond(d),
        Suite::OracleEquivalence => oracle_equivalence(d),
    }
}

fn name(d: &Deformation, k: u32) -> String {
    word_string(d.quotient().word(k as usize))
}

fn triple(d: &Deformation, u: u32, v: u32, w: u32) -> String {
    format!(
        "(u, v, w) = ({}, {}, {})",
        name(d, u),
        name(d, v),
        name(d, w)
    )
}

/// Filter-count inequalities for every nonzero constant.
pub fn divisibility(d: &Deformation) -> Result<SuiteReport> {
    let entries = d.table().entries();
    for e in entries {
        if let Some((alpha, k)) = d.divisibility_check(e.u as usize, e.v as usize, e.w as usize)? {
            return Ok(report(
                Suite::Divisibility,
                entries.len(),
                Some(format!(
                    "{} violates the filter inequality at alpha = s{}, k = {k}",
                    triple(d, e.u, e.v, e.w),
                    alpha + 1
                )),
            ));
        }
    }
    Ok(report(Suite::Divisibility, entries.len(), None))
}

type Sparse = BTreeMap<usize, u128>;
type ProductMap = HashMap<(usize, usize), Vec<(usize, u64)>>;

fn product_map(d: &Deformation, kind: ProductKind) -> Result<ProductMap> {
    let mut m = ProductMap::new();
    for e in d.table().entries() {
        let (u, v, w) = (e.u as usize, e.v as usize, e.w as usize);
        let c = d.value(kind, u, v, w)?;
        if c != 0 {
            m.entry((u, v)).or_default().push((w, c));
        }
    }
    Ok(m)
}

fn times(m: &ProductMap, a: &Sparse, x: usize) -> Sparse {
    let mut out = Sparse::new();
    for (&w, &c) in a {
        let key = (w.min(x), w.max(x));
        for &(y, c2) in m.get(&key).map(|v| v.as_slice()).unwrap_or(&[]) {
            *out.entry(y).or_default() += c * c2 as u128;
        }
    }
    out
}

/// `(u v) x = u (v x)` for the cup, `star0` and `bk` tables.
pub fn associativity(d: &Deformation) -> Result<SuiteReport> {
    let q = d.quotient();
    let n = q.len();
    let dim = q.dim();
    let mut checks = 0;
    for kind in [ProductKind::Cup, ProductKind::Star0, ProductKind::Bk] {
        let m = product_map(d, kind)?;
        let single = |u: usize, v: usize| -> Sparse {
            m.get(&(u.min(v), u.max(v)))
                .map(|t| t.iter().map(|&(w, c)| (w, c as u128)).collect())
                .unwrap_or_default()
        };
        let bad: Option<(usize, usize, usize)> = (0..n)
            .into_par_iter()
            .map(|u| {
                for v in 0..n {
                    for x in 0..n {
                        if q.length(u) + q.length(v) + q.length(x) > dim {
                            continue;
                        }
                        let lhs = times(&m, &single(u, v), x);
                        let rhs = times(&m, &single(v, x), u);
                        if lhs != rhs {
                            return Some((u, v, x));
                        }
                    }
                }
                None
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .next();
        checks += n * n * n;
        if let Some((u, v, x)) = bad {
            return Ok(report(
                Suite::Associativity,
                checks,
                Some(format!(
                    "{} product: (s_u s_v) s_x != s_u (s_v s_x) for u = {}, v = {}, x = {}",
                    kind.name(),
                    name(d, u as u32),
                    name(d, v as u32),
                    name(d, x as u32)
                )),
            ));
        }
    }
    Ok(report(Suite::Associativity, checks, None))
}

/// `|{beta > 0 : w beta < 0, alpha in supp beta}| = l(w_alpha)` for every
/// `w` in the Weyl group and every simple root.
pub fn degree_identity(rs: &RootSystem) -> Result<SuiteReport> {
    let group = enumerate_group(rs, DEFAULT_BOUND)?;
    let bad = group
        .par_iter()
        .map(|w| -> Result<Option<String>> {
            for alpha in 0..rs.rank() {
                let size = filter_count(rs, w, alpha, 1)? as usize;
                let l = project_w_alpha(rs, w, alpha).length();
                if size != l {
                    return Ok(Some(format!(
                        "w = {}, alpha = s{}: {size} inverted roots contain alpha but l(w_alpha) = {l}",
                        word_string(&w.reduced_word(rs)),
                        alpha + 1
                    )));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(report(
        Suite::DegreeIdentity,
        group.len() * rs.rank(),
        bad.into_iter().flatten().next(),
    ))
}

/// `l(u_alpha) + l(v_alpha) <= l(w_alpha)` for every nonzero constant.
pub fn region_count(d: &Deformation) -> Result<SuiteReport> {
    let entries = d.table().entries();
    for e in entries {
        if let Some(alpha) = d.region_count_inequality(e.u as usize, e.v as usize, e.w as usize)? {
            return Ok(report(
                Suite::RegionCount,
                entries.len(),
                Some(format!(
                    "{}: l(u_alpha) + l(v_alpha) > l(w_alpha) for alpha = s{}",
                    triple(d, e.u, e.v, e.w),
                    alpha + 1
                )),
            ));
        }
    }
    Ok(report(Suite::RegionCount, entries.len(), None))
}

/// `a_{u,v}^w = c_{u',v'}^{w'}(G/Q) c_{u'',v''}^{w''}(Q/P)` for every
/// nonzero `star0` constant and every maximal `Q` containing `P`.
pub fn richmond(d: &Deformation) -> Result<SuiteReport> {
    let q = d.quotient();
    if q.assoc().len() < 2 {
        let mut r = report(Suite::Richmond, 0, None);
        r.notes
            .push("P is maximal: there is no intermediate parabolic".into());
        return Ok(r);
    }
    let facts = QFactorization::all_maximal(q.clone())?;
    let mut checks = 0;
    for e in d.table().ordered_entries() {
        let (u, v, w) = (e.u as usize, e.v as usize, e.w as usize);
        if d.star0_coefficient(u, v, w)? == 0 {
            continue;
        }
        for f in &facts {
            checks += 1;
            if !f.richmond_check(d, u, v, w)? {
                let (c1, c2) = f.factors(u, v, w)?;
                return Ok(report(
                    Suite::Richmond,
                    checks,
                    Some(format!(
                        "{} with Q-levi {}: a = {} but factors are {c1} * {c2}",
                        triple(d, e.u, e.v, e.w),
                        f.q_levi(),
                        e.c
                    )),
                ));
            }
        }
    }
    Ok(report(Suite::Richmond, checks, None))
}

/// The pair solve against Chevalley's formula, and (for small quotients)
/// the numeric engine against exact polynomial localization.
pub fn oracle_equivalence(d: &Deformation) -> Result<SuiteReport> {
    let q = d.quotient();
    let rs = q.root_system();
    let table = d.table();
    let mut checks = 0;
    let mut notes = Vec::new();
    for i in q.assoc().iter() {
        let si = q.require_index(&WeylElement::simple_reflection(rs, i)?)?;
        for w in 0..q.len() {
            checks += 1;
            let chev = chevalley_multiply(q, i, w)?;
            if chev != table.product(si, w) {
                return Ok(SuiteReport {
                    suite: Suite::OracleEquivalence,
                    checks,
                    failure: Some(format!(
                        "Chevalley formula disagrees for s{} * {}",
                        i + 1,
                        name(d, w as u32)
                    )),
                    notes,
                });
            }
        }
    }
    if q.len() <= POLY_ORACLE_LIMIT {
        let res = Restrictions::<EquivariantPolynomial>::compute(q)?;
        for u in 0..q.len() {
            for v in u..q.len() {
                checks += 1;
                if structure_constants_pair(q, &res, u, v)? != table.product(u, v) {
                    return Ok(SuiteReport {
                        suite: Suite::OracleEquivalence,
                        checks,
                        failure: Some(format!(
                            "polynomial localization disagrees for {} * {}",
                            name(d, u as u32),
                            name(d, v as u32)
                        )),
                        notes,
                    });
                }
            }
        }
    } else {
        notes.push(format!(
            "polynomial cross-check skipped: |W^P| = {} > {POLY_ORACLE_LIMIT}",
            q.len()
        ));
    }
    Ok(SuiteReport {
        suite: Suite::OracleEquivalence,
        checks,
        failure: None,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schubert::FlagVariety;

    #[test]
    fn suites_pass_on_small_cases() {
        for (t, a) in [("A3", "1,2,3"), ("B3", "1,3"), ("G2", "1,2")] {
            let d = Deformation::new(FlagVariety::parse(t, a).unwrap()).unwrap();
            for s in Suite::ALL {
                let r = run_suite(&d, s).unwrap();
                assert!(r.passed(), "{t} {a}: {r}");
            }
        }
    }

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}
