//! Schubert structure constants by equivariant localization.
//!
//! For `x, w` in `W^P` the restriction `sigma_x|_w` is computed with Billey's
//! subword formula. The product `sigma_u sigma_v = sum_x c^x sigma_x` in
//! equivariant cohomology is then solved for in Bruhat order:
//!
//! ```text
//! c^x = (sigma_u|_x sigma_v|_x - sum_{y < x} c^y sigma_y|_x) / sigma_x|_x
//! ```
//!
//! and the ordinary structure constants are the `c^x` with
//! `l(x) = l(u) + l(v)`. The solve is generic over [`LocalizationRing`]:
//! [`EquivariantPolynomial`] keeps the full equivariant classes, while
//! [`PrincipalValue`] keeps only their values at `a_i = 1`. Every quantity in
//! the recursion is an integer polynomial, so its value at an integer point is
//! an integer and the divisions stay exact; the top-degree coefficients are
//! constants and equal their values.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::EquivariantPolynomial;
use crate::rootsys::{CartanType, Root, RootSystem, SimpleSet};
use crate::weyl::{ParabolicData, Quotient, WeylElement, DEFAULT_BOUND};

/// Coefficient ring for localization values.
pub trait LocalizationRing: Clone + Send + Sync + fmt::Debug {
    fn zero(rank: usize) -> Self;
    fn one(rank: usize) -> Self;
    fn from_root(root: &Root) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Result<Self>;
    fn sub(&self, o: &Self) -> Result<Self>;
    fn mul(&self, o: &Self) -> Result<Self>;
    /// `Ok(None)` when the division is not exact.
    fn div_exact(&self, d: &Self) -> Result<Option<Self>>;
    /// Integer value of a degree-zero element.
    fn as_integer(&self) -> Option<i128>;
}

impl LocalizationRing for EquivariantPolynomial {
    fn zero(rank: usize) -> Self {
        EquivariantPolynomial::zero(rank)
    }
    fn one(rank: usize) -> Self {
        EquivariantPolynomial::one(rank)
    }
    fn from_root(root: &Root) -> Self {
        EquivariantPolynomial::linear(root.coords())
    }
    fn is_zero(&self) -> bool {
        EquivariantPolynomial::is_zero(self)
    }
    fn add(&self, o: &Self) -> Result<Self> {
        self.checked_add(o)
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        self.checked_sub(o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        self.checked_mul(o)
    }
    fn div_exact(&self, d: &Self) -> Result<Option<Self>> {
        EquivariantPolynomial::div_exact(self, d)
    }
    fn as_integer(&self) -> Option<i128> {
        self.as_constant()
    }
}

/// Value of an equivariant class at the point `a_1 = ... = a_n = 1`, where
/// every positive root evaluates to its height.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrincipalValue(pub i128);

fn overflow() -> Error {
    Error::Consistency("integer overflow in localization values".into())
}

impl LocalizationRing for PrincipalValue {
    fn zero(_: usize) -> Self {
        PrincipalValue(0)
    }
    fn one(_: usize) -> Self {
        PrincipalValue(1)
    }
    fn from_root(root: &Root) -> Self {
        PrincipalValue(root.height() as i128)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Result<Self> {
        self.0
            .checked_add(o.0)
            .map(PrincipalValue)
            .ok_or_else(overflow)
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        self.0
            .checked_sub(o.0)
            .map(PrincipalValue)
            .ok_or_else(overflow)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        self.0
            .checked_mul(o.0)
            .map(PrincipalValue)
            .ok_or_else(overflow)
    }
    fn div_exact(&self, d: &Self) -> Result<Option<Self>> {
        if d.0 == 0 {
            return Err(Error::Consistency("division by zero".into()));
        }
        Ok((self.0 % d.0 == 0).then(|| PrincipalValue(self.0 / d.0)))
    }
    fn as_integer(&self) -> Option<i128> {
        Some(self.0)
    }
}

/// Restriction `sigma_x|_v` by Billey's formula: the sum over subwords of
/// `word` (a reduced word for `v`) that are reduced words for `x`, of the
/// products of the roots `s_{a_1} ... s_{a_{j-1}}(alpha_{a_j})` at the chosen
/// positions.
pub fn billey_restriction(
    rs: &RootSystem,
    x: &WeylElement,
    v: &WeylElement,
    word: &[usize],
) -> Result<EquivariantPolynomial> {
    let check = WeylElement::from_reduced_word(rs, word)?;
    if &check != v {
        return Err(Error::Precondition("word does not spell v".into()));
    }
    if x.cartan_type() != v.cartan_type() {
        return Err(Error::MixedRootSystems(
            x.cartan_type().to_string(),
            v.cartan_type().to_string(),
        ));
    }
    let roots = word_roots(rs, word);
    // Subwords are assembled right to left; a partial product must stay
    // reduced, and the map holds every reachable partial product.
    let mut states: HashMap<WeylElement, EquivariantPolynomial> = HashMap::new();
    states.insert(
        WeylElement::identity(rs),
        EquivariantPolynomial::one(rs.rank()),
    );
    for j in (0..word.len()).rev() {
        let a = word[j];
        let r = EquivariantPolynomial::linear(roots[j].coords());
        let mut next = states.clone();
        for (z, val) in &states {
            if z.has_left_descent(a) {
                continue;
            }
            let y = z.left_mul_simple(rs, a);
            let add = val.checked_mul(&r)?;
            let slot = next
                .entry(y)
                .or_insert_with(|| EquivariantPolynomial::zero(rs.rank()));
            *slot = slot.checked_add(&add)?;
        }
        states = next;
    }
    Ok(states
        .remove(x)
        .unwrap_or_else(|| EquivariantPolynomial::zero(rs.rank())))
}

/// Roots `s_{a_1} ... s_{a_{j-1}}(alpha_{a_j})` along a reduced word.
fn word_roots(rs: &RootSystem, word: &[usize]) -> Vec<Root> {
    let mut prefix = WeylElement::identity(rs);
    word.iter()
        .map(|&a| {
            let r = rs.root(prefix.apply(a));
            prefix = prefix.right_mul_simple(rs, a);
            r
        })
        .collect()
}

/// All restrictions `sigma_x|_w` for `x, w` in a quotient.
#[derive(Debug, Clone)]
pub struct Restrictions<R> {
    n: usize,
    // dense[x * n + w] = sigma_x|_w
    dense: Vec<R>,
}

impl<R: LocalizationRing> Restrictions<R> {
    pub fn compute(q: &Quotient) -> Result<Self> {
        let rs = q.root_system();
        let n = q.len();
        let rank = rs.rank();
        let columns: Vec<Vec<R>> = (0..n)
            .into_par_iter()
            .map(|w| {
                let word = q.word(w);
                let roots = word_roots(rs, word);
                let mut state = vec![R::zero(rank); n];
                state[0] = R::one(rank);
                for j in (0..word.len()).rev() {
                    let a = word[j];
                    let r = R::from_root(&roots[j]);
                    // Targets are longer, hence later in the graded order;
                    // walking downwards never reuses a value updated this step.
                    for z in (0..n).rev() {
                        if state[z].is_zero() {
                            continue;
                        }
                        if let Some(&(_, y)) = q.up_edges(z).iter().find(|(i, _)| *i == a) {
                            let add = state[z].mul(&r)?;
                            state[y] = state[y].add(&add)?;
                        }
                    }
                }
                Ok(state)
            })
            .collect::<Result<_>>()?;
        let mut dense = vec![R::zero(rank); n * n];
        for (w, col) in columns.into_iter().enumerate() {
            for (x, val) in col.into_iter().enumerate() {
                dense[x * n + w] = val;
            }
        }
        Ok(Restrictions { n, dense })
    }

    /// `sigma_x|_w` by quotient index.
    #[inline]
    pub fn get(&self, x: usize, w: usize) -> &R {
        &self.dense[x * self.n + w]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

/// Equivariant structure constants `c_{u,v}^x` for all `x` with
/// `l(x) <= max_len`, as `(x, c)` pairs in graded order.
pub fn equivariant_product<R: LocalizationRing>(
    q: &Quotient,
    res: &Restrictions<R>,
    u: usize,
    v: usize,
    max_len: usize,
) -> Result<Vec<(usize, R)>> {
    let n = q.len();
    let mut coeff: Vec<Option<R>> = vec![None; n];
    let mut support: Vec<usize> = Vec::new();
    for x in 0..n {
        if q.length(x) > max_len {
            break;
        }
        let (ru, rv) = (res.get(u, x), res.get(v, x));
        // c^x vanishes unless u <= x and v <= x
        if ru.is_zero() || rv.is_zero() {
            continue;
        }
        let mut num = ru.mul(rv)?;
        for &y in &support {
            let ryx = res.get(y, x);
            if !ryx.is_zero() {
                let c = coeff[y].as_ref().expect("support entries are set");
                num = num.sub(&c.mul(ryx)?)?;
            }
        }
        if num.is_zero() {
            continue;
        }
        let c = num.div_exact(res.get(x, x))?.ok_or_else(|| {
            Error::Consistency(format!(
                "inexact division solving ({u},{v}) at {x}: {num:?} / {:?}",
                res.get(x, x)
            ))
        })?;
        if !c.is_zero() {
            coeff[x] = Some(c);
            support.push(x);
        }
    }
    Ok(support
        .into_iter()
        .map(|x| (x, coeff[x].take().unwrap()))
        .collect())
}

/// Ordinary structure constants `c_{u,v}^w` (`l(w) = l(u) + l(v)`).
pub fn structure_constants_pair<R: LocalizationRing>(
    q: &Quotient,
    res: &Restrictions<R>,
    u: usize,
    v: usize,
) -> Result<Vec<(usize, u64)>> {
    let target = q.length(u) + q.length(v);
    if target > q.dim() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (x, c) in equivariant_product(q, res, u, v, target)? {
        if q.length(x) != target {
            continue;
        }
        let value = c.as_integer().ok_or_else(|| {
            Error::Consistency(format!("top-degree coefficient {c:?} is not a constant"))
        })?;
        if value < 0 {
            return Err(Error::Consistency(format!(
                "negative structure constant {value} for ({u},{v},{x})"
            )));
        }
        out.push((x, value as u64));
    }
    Ok(out)
}

/// One nonzero structure constant, by quotient index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entry {
    pub u: u32,
    pub v: u32,
    pub w: u32,
    pub c: u64,
}

/// The nonzero `c_{u,v}^w` of a flag variety, stored once per unordered pair
/// (`u <= v` by index).
#[derive(Debug, Clone)]
pub struct StructureConstantTable {
    quotient: Arc<Quotient>,
    entries: Vec<Entry>,
    lookup: HashMap<(u32, u32, u32), u64>,
}

impl StructureConstantTable {
    pub fn from_entries(quotient: Arc<Quotient>, mut entries: Vec<Entry>) -> Result<Self> {
        for e in entries.iter_mut() {
            if e.u > e.v {
                std::mem::swap(&mut e.u, &mut e.v);
            }
            let n = quotient.len() as u32;
            if e.u >= n || e.v >= n || e.w >= n {
                return Err(Error::Consistency("table index out of range".into()));
            }
        }
        entries.sort();
        entries.dedup();
        let lookup = entries.iter().map(|e| ((e.u, e.v, e.w), e.c)).collect();
        Ok(StructureConstantTable {
            quotient,
            entries,
            lookup,
        })
    }

    pub fn quotient(&self) -> &Arc<Quotient> {
        &self.quotient
    }

    /// Entries with `u <= v`, sorted.
    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// All entries over ordered pairs `(u, v)`, sorted.
    pub fn ordered_entries(&self) -> Vec<Entry> {
        let mut out: Vec<Entry> = self
            .entries
            .iter()
            .flat_map(|e| {
                let swapped = Entry {
                    u: e.v,
                    v: e.u,
                    ..*e
                };
                if e.u == e.v {
                    vec![*e]
                } else {
                    vec![*e, swapped]
                }
            })
            .collect();
        out.sort();
        out
    }

    pub fn get(&self, u: usize, v: usize, w: usize) -> u64 {
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        self.lookup
            .get(&(a as u32, b as u32, w as u32))
            .copied()
            .unwrap_or(0)
    }

    /// Expansion of `sigma_u sigma_v` as `(w, c)` pairs.
    pub fn product(&self, u: usize, v: usize) -> Vec<(usize, u64)> {
        let (a, b) = (u.min(v) as u32, u.max(v) as u32);
        let start = self.entries.partition_point(|e| (e.u, e.v) < (a, b));
        self.entries[start..]
            .iter()
            .take_while(|e| (e.u, e.v) == (a, b))
            .map(|e| (e.w as usize, e.c))
            .collect()
    }

    pub fn count_unordered(&self) -> usize {
        self.entries.len()
    }

    pub fn count_ordered(&self) -> usize {
        self.entries
            .iter()
            .map(|e| if e.u == e.v { 1 } else { 2 })
            .sum()
    }
}

/// A flag variety `G/P` (or the flag variety of a Levi subgroup) together
/// with its localization data.
#[derive(Debug, Clone)]
pub struct FlagVariety {
    quotient: Arc<Quotient>,
    restrictions: Arc<Restrictions<PrincipalValue>>,
}

impl FlagVariety {
    pub fn new(ct: CartanType, pd: ParabolicData) -> Result<Self> {
        let rs = Arc::new(RootSystem::build(ct));
        let q = Quotient::for_parabolic(rs, pd, DEFAULT_BOUND)?;
        FlagVariety::from_quotient(Arc::new(q))
    }

    /// Parse `"B4"` and a 1-based associated-root list `"2,4"`.
    pub fn parse(ty: &str, assoc: &str) -> Result<Self> {
        let ct: CartanType = ty.parse()?;
        let assoc = SimpleSet::parse_one_based(assoc, ct.rank())?;
        FlagVariety::new(ct, ParabolicData::from_assoc(ct.rank(), assoc)?)
    }

    pub fn from_quotient(quotient: Arc<Quotient>) -> Result<Self> {
        let restrictions = Arc::new(Restrictions::compute(&quotient)?);
        Ok(FlagVariety {
            quotient,
            restrictions,
        })
    }

    pub fn quotient(&self) -> &Arc<Quotient> {
        &self.quotient
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        self.quotient.root_system()
    }

    pub fn cartan_type(&self) -> CartanType {
        self.root_system().cartan_type()
    }

    pub fn parabolic(&self) -> ParabolicData {
        ParabolicData {
            levi: self.quotient.levi(),
            assoc: self.quotient.assoc(),
        }
    }

    pub fn restrictions(&self) -> &Restrictions<PrincipalValue> {
        &self.restrictions
    }

    pub fn structure_constants_pair(&self, u: usize, v: usize) -> Result<Vec<(usize, u64)>> {
        structure_constants_pair(&self.quotient, &self.restrictions, u, v)
    }

    /// Every nonzero constant; pairs are solved in parallel on the current
    /// rayon pool and assembled in a fixed order.
    pub fn full_table(&self) -> Result<StructureConstantTable> {
        let q = &self.quotient;
        let n = q.len();
        let dim = q.dim();
        let rows: Vec<Vec<Entry>> = (0..n)
            .into_par_iter()
            .map(|u| {
                let mut row = Vec::new();
                for v in u..n {
                    if q.length(u) + q.length(v) > dim {
                        break;
                    }
                    for (w, c) in self.structure_constants_pair(u, v)? {
                        row.push(Entry {
                            u: u as u32,
                            v: v as u32,
                            w: w as u32,
                            c,
                        });
                    }
                }
                Ok(row)
            })
            .collect::<Result<_>>()?;
        StructureConstantTable::from_entries(q.clone(), rows.into_iter().flatten().collect())
    }
}

/// Chevalley's formula for `sigma_{s_i} sigma_w`:
/// `sum <omega_i, beta^vee> sigma_{w s_beta}` over positive roots `beta`
/// with `l(w s_beta) = l(w) + 1`.
pub fn chevalley_multiply(q: &Quotient, i: usize, w: usize) -> Result<Vec<(usize, u64)>> {
    let rs = q.root_system();
    rs.check_simple(i)?;
    if !q.assoc().contains(i) {
        return Err(Error::Precondition(format!(
            "s{} is not a Schubert class of this flag variety",
            i + 1
        )));
    }
    let x = q.element(w);
    let mut out = Vec::new();
    for k in 0..rs.num_positive() {
        let coeff = rs.coroot_coefficient(i, k);
        let y = x.mul(&WeylElement::reflection(rs, k))?;
        if y.length() != x.length() + 1 || coeff == 0 {
            continue;
        }
        let idx = q.index_of(&y).ok_or_else(|| {
            Error::Consistency("Chevalley term outside the quotient with nonzero weight".into())
        })?;
        out.push((idx, coeff as u64));
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::enumerate_group;

    fn quotient(t: &str, levi: &[usize]) -> Arc<Quotient> {
        let rs = Arc::new(RootSystem::build(t.parse().unwrap()));
        Arc::new(
            Quotient::new(
                rs,
                SimpleSet::from_indices(levi.iter().copied()),
                DEFAULT_BOUND,
            )
            .unwrap(),
        )
    }

    fn el(q: &Quotient, word: &[usize]) -> usize {
        let w = WeylElement::from_word(q.root_system(), word).unwrap();
        q.index_of(&w).unwrap()
    }

    #[test]
    fn billey_basics() {
        let rs = RootSystem::build("A1".parse().unwrap());
        let s1 = WeylElement::simple_reflection(&rs, 0).unwrap();
        let p = billey_restriction(&rs, &s1, &s1, &[0]).unwrap();
        assert_eq!(p, EquivariantPolynomial::linear(&[1]));

        let rs = RootSystem::build("A2".parse().unwrap());
        let s1 = WeylElement::simple_reflection(&rs, 0).unwrap();
        let s2 = WeylElement::simple_reflection(&rs, 1).unwrap();
        assert!(billey_restriction(&rs, &s1, &s2, &[1]).unwrap().is_zero());
        assert!(billey_restriction(&rs, &s1, &s1, &[0, 0]).is_err());
    }

    #[test]
    fn billey_diagonal_is_inversion_product() {
        let rs = RootSystem::build("B3".parse().unwrap());
        for w in enumerate_group(&rs, DEFAULT_BOUND).unwrap() {
            let word = w.reduced_word(&rs);
            let p = billey_restriction(&rs, &w, &w, &word).unwrap();
            let mut prod = EquivariantPolynomial::one(3);
            for b in w.inverse().inversions(&rs) {
                prod = prod
                    .checked_mul(&EquivariantPolynomial::linear(b.coords()))
                    .unwrap();
            }
            assert_eq!(p, prod);
        }
    }

    #[test]
    fn billey_word_independence_and_degree() {
        let rs = RootSystem::build("B3".parse().unwrap());
        let all = enumerate_group(&rs, DEFAULT_BOUND).unwrap();
        for v in all.iter().step_by(5) {
            let w1 = v.reduced_word(&rs);
            // a second reduced word, built from right descents
            let mut w2 = Vec::new();
            let mut t = v.clone();
            while !t.is_identity() {
                let i = (0..3).rev().find(|&i| t.has_right_descent(i)).unwrap();
                w2.push(i);
                t = t.right_mul_simple(&rs, i);
            }
            w2.reverse();
            for x in &all {
                let a = billey_restriction(&rs, x, v, &w1).unwrap();
                let b = billey_restriction(&rs, x, v, &w2).unwrap();
                assert_eq!(a, b);
                if !a.is_zero() {
                    assert_eq!(a.homogeneous_degree(), Some(x.length()));
                    assert!(a.terms().all(|(_, c)| c > 0));
                    assert!(crate::weyl::bruhat_leq(&rs, x, v));
                } else {
                    assert!(!crate::weyl::bruhat_leq(&rs, x, v));
                }
            }
        }
    }

    #[test]
    fn dense_restrictions_match_billey() {
        let q = quotient("B3", &[0]);
        let rs = q.root_system();
        let poly = Restrictions::<EquivariantPolynomial>::compute(&q).unwrap();
        let val = Restrictions::<PrincipalValue>::compute(&q).unwrap();
        for x in 0..q.len() {
            for w in 0..q.len() {
                let b = billey_restriction(rs, q.element(x), q.element(w), q.word(w)).unwrap();
                assert_eq!(poly.get(x, w), &b);
                assert_eq!(val.get(x, w).0, b.evaluate(&[1, 1, 1]).unwrap());
            }
        }
    }

    #[test]
    fn a2_products() {
        let q = quotient("A2", &[]);
        let fv = FlagVariety::from_quotient(q.clone()).unwrap();
        let (s1, s2) = (el(&q, &[0]), el(&q, &[1]));
        let s1s2 = el(&q, &[0, 1]);
        let s2s1 = el(&q, &[1, 0]);
        let mut p = fv.structure_constants_pair(s1, s2).unwrap();
        p.sort();
        let mut expect = vec![(s1s2, 1), (s2s1, 1)];
        expect.sort();
        assert_eq!(p, expect);
        assert_eq!(
            fv.structure_constants_pair(s1, s1).unwrap(),
            vec![(s2s1, 1)]
        );
        assert_eq!(chevalley_multiply(&q, 0, s1).unwrap(), vec![(s2s1, 1)]);
        assert_eq!(chevalley_multiply(&q, 0, 0).unwrap(), vec![(s1, 1)]);
    }

    #[test]
    fn identity_row() {
        let q = quotient("C3", &[1]);
        let fv = FlagVariety::from_quotient(q.clone()).unwrap();
        for v in 0..q.len() {
            assert_eq!(fv.structure_constants_pair(0, v).unwrap(), vec![(v, 1)]);
        }
    }

    #[test]
    fn polynomial_and_principal_routes_agree() {
        for (t, levi) in [("B3", vec![]), ("A3", vec![1]), ("G2", vec![])] {
            let q = quotient(t, &levi);
            let poly = Restrictions::<EquivariantPolynomial>::compute(&q).unwrap();
            let val = Restrictions::<PrincipalValue>::compute(&q).unwrap();
            let ones = vec![1i128; q.root_system().rank()];
            for u in 0..q.len() {
                for v in u..q.len() {
                    let lim = q.dim();
                    let a = equivariant_product(&q, &poly, u, v, lim).unwrap();
                    let b = equivariant_product(&q, &val, u, v, lim).unwrap();
                    let a_eval: Vec<(usize, i128)> = a
                        .iter()
                        .map(|(x, p)| (*x, p.evaluate(&ones).unwrap()))
                        .collect();
                    let b_eval: Vec<(usize, i128)> = b.iter().map(|(x, p)| (*x, p.0)).collect();
                    assert_eq!(a_eval, b_eval);
                    // equivariant constants are homogeneous of the right degree
                    for (x, p) in &a {
                        assert_eq!(
                            p.homogeneous_degree(),
                            Some(q.length(u) + q.length(v) - q.length(*x))
                        );
                    }
                    assert_eq!(
                        structure_constants_pair(&q, &poly, u, v).unwrap(),
                        structure_constants_pair(&q, &val, u, v).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn chevalley_needs_associated_root() {
        let q = quotient("B3", &[0]);
        assert!(chevalley_multiply(&q, 0, 0).is_err());
    }

    #[test]
    fn table_symmetry_and_lookup() {
        let q = quotient("B3", &[]);
        let fv = FlagVariety::from_quotient(q.clone()).unwrap();
        let t = fv.full_table().unwrap();
        for e in t.entries() {
            assert!(e.u <= e.v);
            assert_eq!(t.get(e.v as usize, e.u as usize, e.w as usize), e.c);
            let l = |k: u32| q.length(k as usize);
            assert_eq!(l(e.u) + l(e.v), l(e.w));
            assert!(l(e.w) <= q.dim());
        }
        assert_eq!(t.ordered_entries().len(), t.count_ordered());
        let mut p = t.product(3, 5);
        p.sort();
        let mut direct = fv.structure_constants_pair(3, 5).unwrap();
        direct.sort();
        assert_eq!(p, direct);
    }
}
