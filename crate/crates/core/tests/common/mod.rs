//! Test-only oracles, independent of the localization engine.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use flagdeform::{RootSystem, WeylElement};

/// Polynomial in x_1..x_n with integer coefficients.
pub type Poly = BTreeMap<Vec<u32>, i64>;

fn add_term(p: &mut Poly, m: Vec<u32>, c: i64) {
    let e = p.entry(m.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        p.remove(&m);
    }
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            add_term(&mut out, m, ca * cb);
        }
    }
    out
}

/// Divided difference `(f - s_i f) / (x_i - x_{i+1})`, 0-based `i`.
pub fn divided_difference(f: &Poly, i: usize) -> Poly {
    let mut out = Poly::new();
    for (m, &c) in f {
        let (a, b) = (m[i], m[i + 1]);
        let (hi, lo, sign) = if a > b { (a, b, 1) } else { (b, a, -1) };
        for j in 0..hi - lo {
            let mut t = m.clone();
            t[i] = hi - 1 - j;
            t[i + 1] = lo + j;
            add_term(&mut out, t, sign * c);
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Reduced word (0-based letters) of a one-line permutation.
pub fn reduced_word(w: &[usize]) -> Vec<usize> {
    let mut w = w.to_vec();
    let mut word = Vec::new();
    while let Some(i) = (0..w.len() - 1).find(|&i| w[i] > w[i + 1]) {
        w.swap(i, i + 1);
        word.push(i);
    }
    word.reverse();
    word
}

/// Schubert polynomials of S_n, keyed by one-line notation.
pub fn schubert_polynomials(n: usize) -> HashMap<Vec<usize>, Poly> {
    let w0: Vec<usize> = (1..=n).rev().collect();
    // S_{w0} = x_1^{n-1} x_2^{n-2} .. x_{n-1}
    let mut top = Poly::new();
    top.insert((0..n as u32).rev().collect(), 1);
    let mut out = HashMap::new();
    out.insert(w0.clone(), top);
    let mut frontier = vec![w0];
    while let Some(w) = frontier.pop() {
        let f = out[&w].clone();
        for i in 0..n - 1 {
            if w[i] > w[i + 1] {
                let mut v = w.clone();
                v.swap(i, i + 1);
                if !out.contains_key(&v) {
                    out.insert(v.clone(), divided_difference(&f, i));
                    frontier.push(v);
                }
            }
        }
    }
    out
}

/// `c_{u,v}^w` in `H^*(GL_n/B)` from Schubert polynomials: the constant term
/// of `d_w (S_u S_v)`.
pub fn schubert_product(
    polys: &HashMap<Vec<usize>, Poly>,
    u: &[usize],
    v: &[usize],
) -> BTreeMap<Vec<usize>, i64> {
    let prod = mul(&polys[u], &polys[v]);
    let mut out = BTreeMap::new();
    for w in polys.keys() {
        let mut f = prod.clone();
        for &i in reduced_word(w).iter().rev() {
            f = divided_difference(&f, i);
        }
        let zero = vec![0u32; u.len()];
        if let Some(&c) = f.get(&zero) {
            if c != 0 {
                out.insert(w.clone(), c);
            }
        }
    }
    out
}

pub fn element(rs: &RootSystem, one_line: &[usize]) -> WeylElement {
    WeylElement::from_word(rs, &reduced_word(one_line)).unwrap()
}
