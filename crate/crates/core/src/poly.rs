//! Sparse multivariate polynomials with exact integer coefficients.
//!
//! Variables are the simple roots `a1..an`. Arithmetic is checked: any
//! coefficient overflow is reported as an error instead of wrapping.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

type Monomial = Box<[u16]>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EquivariantPolynomial {
    nvars: usize,
    // Keys compare lexicographically, so the last entry is the lex-leading term.
    terms: BTreeMap<Monomial, i128>,
}

fn overflow() -> Error {
    Error::Consistency("polynomial coefficient overflow".into())
}

impl EquivariantPolynomial {
    pub fn zero(nvars: usize) -> Self {
        EquivariantPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: i128) -> Self {
        let mut p = Self::zero(nvars);
        if c != 0 {
            p.terms.insert(vec![0; nvars].into(), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// The linear form `sum_i coords[i] * a_i`.
    pub fn linear(coords: &[i32]) -> Self {
        let n = coords.len();
        let mut p = Self::zero(n);
        for (i, &c) in coords.iter().enumerate() {
            if c != 0 {
                let mut m = vec![0u16; n];
                m[i] = 1;
                p.terms.insert(m.into(), c as i128);
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], i128)> {
        self.terms.iter().map(|(m, &c)| (&m[..], c))
    }

    pub fn coefficient(&self, exponents: &[u16]) -> i128 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    /// Degree if every term has the same total degree; `None` for zero or
    /// inhomogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self
            .terms
            .keys()
            .map(|m| m.iter().map(|&e| e as usize).sum::<usize>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    /// Constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<i128> {
        match self.terms.len() {
            0 => Some(0),
            1 => {
                let (m, &c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then_some(c)
            }
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: i128) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().checked_add(c).ok_or_else(overflow)?;
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (m, &c) in &o.terms {
            out.add_term(m.clone(), c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (m, &c) in &o.terms {
            out.add_term(m.clone(), c.checked_neg().ok_or_else(overflow)?)?;
        }
        Ok(out)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        let n = self.nvars.max(o.nvars);
        let mut out = Self::zero(n);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &o.terms {
                let m: Monomial = (0..n)
                    .map(|i| ma.get(i).copied().unwrap_or(0) + mb.get(i).copied().unwrap_or(0))
                    .collect();
                out.add_term(m, ca.checked_mul(cb).ok_or_else(overflow)?)?;
            }
        }
        Ok(out)
    }

    fn leading(&self) -> Option<(&Monomial, i128)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`
    /// in `Z[a1..an]`.
    pub fn div_exact(&self, d: &Self) -> Result<Option<Self>> {
        let Some((dm, dc)) = d.leading() else {
            return Err(Error::Consistency("division by zero polynomial".into()));
        };
        let dm = dm.clone();
        let n = self.nvars.max(d.nvars);
        let mut rem = self.clone();
        let mut quot = Self::zero(n);
        while let Some((lm, lc)) = rem.leading() {
            let divides =
                (0..n).all(|i| lm.get(i).copied().unwrap_or(0) >= dm.get(i).copied().unwrap_or(0));
            if !divides || lc % dc != 0 {
                return Ok(None);
            }
            let m: Monomial = (0..n)
                .map(|i| lm.get(i).copied().unwrap_or(0) - dm.get(i).copied().unwrap_or(0))
                .collect();
            let mut t = Self::zero(n);
            t.terms.insert(m.clone(), lc / dc);
            rem = rem.checked_sub(&t.checked_mul(d)?)?;
            quot.add_term(m, lc / dc)?;
        }
        Ok(Some(quot))
    }

    /// Value at an integer point.
    pub fn evaluate(&self, point: &[i128]) -> Result<i128> {
        let mut total: i128 = 0;
        for (m, &c) in &self.terms {
            let mut v = c;
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    v = v.checked_mul(point[i]).ok_or_else(overflow)?;
                }
            }
            total = total.checked_add(v).ok_or_else(overflow)?;
        }
        Ok(total)
    }
}

impl fmt::Debug for EquivariantPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for EquivariantPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, &c) in self.terms.iter().rev() {
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("a{}", i + 1)
                    } else {
                        format!("a{}^{e}", i + 1)
                    }
                })
                .collect();
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (vars.is_empty(), a) {
                (true, _) => write!(f, "{a}")?,
                (false, 1) => write!(f, "{}", vars.join("*"))?,
                (false, _) => write!(f, "{a}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lin(c: &[i32]) -> EquivariantPolynomial {
        EquivariantPolynomial::linear(c)
    }

    #[test]
    fn basic_arithmetic() {
        let a = lin(&[1, 0]);
        let b = lin(&[0, 1]);
        let s = a.checked_add(&b).unwrap();
        let sq = s.checked_mul(&s).unwrap();
        assert_eq!(sq.to_string(), "a1^2 + 2*a1*a2 + a2^2");
        assert_eq!(sq.homogeneous_degree(), Some(2));
        let diff = sq.checked_sub(&sq).unwrap();
        assert!(diff.is_zero());
        assert_eq!(diff.as_constant(), Some(0));
        assert_eq!(EquivariantPolynomial::constant(2, 7).as_constant(), Some(7));
        assert_eq!(sq.evaluate(&[1, 1]).unwrap(), 4);
    }

    #[test]
    fn exact_division() {
        let a = lin(&[1, 0]);
        let ab = lin(&[1, 2]);
        let p = a.checked_mul(&ab).unwrap();
        assert_eq!(p.div_exact(&ab).unwrap(), Some(a.clone()));
        assert_eq!(p.div_exact(&lin(&[0, 1])).unwrap(), None);
        assert_eq!(lin(&[1, 1]).div_exact(&lin(&[2, 0])).unwrap(), None);
    }

    #[test]
    fn overflow_is_an_error() {
        let big = EquivariantPolynomial::constant(1, i128::MAX);
        assert!(big.checked_add(&EquivariantPolynomial::one(1)).is_err());
        assert!(big
            .checked_mul(&EquivariantPolynomial::constant(1, 2))
            .is_err());
    }

    fn arb_poly() -> impl Strategy<Value = EquivariantPolynomial> {
        prop::collection::vec((0u16..3, 0u16..3, 0u16..3, -5i128..6), 0..6).prop_map(|ts| {
            let mut p = EquivariantPolynomial::zero(3);
            for (a, b, c, k) in ts {
                p.add_term(vec![a, b, c].into(), k).unwrap();
            }
            p
        })
    }

    proptest! {
        #[test]
        fn product_divides_back(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!q.is_zero());
            let pq = p.checked_mul(&q).unwrap();
            prop_assert_eq!(pq.div_exact(&q).unwrap(), Some(p.clone()));
            let pt = [2i128, -3, 5];
            prop_assert_eq!(pq.evaluate(&pt).unwrap(), p.evaluate(&pt).unwrap() * q.evaluate(&pt).unwrap());
        }
    }
}
