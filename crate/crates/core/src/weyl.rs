//! Weyl group elements, parabolic quotients and Bruhat order.
//!
//! An element is stored by its action on the positive roots: `images[j]` is
//! the root id of `w(beta_j)`. This determines `w` (it contains the images of
//! the simple roots) and gives structural equality and hashing.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rootsys::{CartanType, Root, RootSystem, SimpleSet};

/// Default cap on enumerated group or quotient sizes.
pub const DEFAULT_BOUND: u64 = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    ty: CartanType,
    images: Box<[u16]>,
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement({}, l={})", self.ty, self.length())
    }
}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> Self {
        WeylElement {
            ty: rs.cartan_type(),
            images: (0..rs.num_positive() as u16).collect(),
        }
    }

    pub fn simple_reflection(rs: &RootSystem, i: usize) -> Result<Self> {
        rs.check_simple(i)?;
        let np = rs.num_positive();
        Ok(WeylElement {
            ty: rs.cartan_type(),
            images: rs.reflection_table(i)[..np].into(),
        })
    }

    /// Product `s_{w[0]} s_{w[1]} ...` of 0-based simple reflections.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        let mut w = WeylElement::identity(rs);
        for &i in word {
            rs.check_simple(i)?;
            w = w.right_mul_simple(rs, i);
        }
        Ok(w)
    }

    /// Reflection `s_beta` in positive root `k`.
    pub fn reflection(rs: &RootSystem, k: usize) -> WeylElement {
        let beta = rs.positive_roots()[k].coords().to_vec();
        let gram = rs.gram_matrix();
        let n = rs.rank();
        let bb = rs.norm2(k);
        let images = rs
            .positive_roots()
            .iter()
            .map(|g| {
                let gc = g.coords();
                let gb: i32 = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .map(|(i, j)| gc[i] * beta[j] * gram[i][j])
                    .sum();
                let pairing = 2 * gb / bb;
                let img: Vec<i32> = (0..n).map(|i| gc[i] - pairing * beta[i]).collect();
                rs.root_id(&img).expect("reflection permutes roots") as u16
            })
            .collect();
        WeylElement {
            ty: rs.cartan_type(),
            images,
        }
    }

    /// Like [`from_word`](Self::from_word) but rejects non-reduced words.
    pub fn from_reduced_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        let w = WeylElement::from_word(rs, word)?;
        if w.length() != word.len() {
            return Err(Error::NotReduced(word.iter().map(|i| i + 1).collect()));
        }
        Ok(w)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    fn np(&self) -> usize {
        self.images.len()
    }

    pub fn length(&self) -> usize {
        let np = self.np() as u16;
        self.images.iter().filter(|&&id| id >= np).count()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(j, &id)| j == id as usize)
    }

    /// Image of a root id (positive or negative).
    #[inline]
    pub fn apply(&self, id: usize) -> usize {
        let np = self.np();
        if id < np {
            self.images[id] as usize
        } else {
            let img = self.images[id - np] as usize;
            if img < np {
                img + np
            } else {
                img - np
            }
        }
    }

    /// Ids of positive roots `beta` with `w(beta)` negative.
    pub fn inversion_ids(&self) -> impl Iterator<Item = usize> + '_ {
        let np = self.np();
        self.images
            .iter()
            .enumerate()
            .filter(move |(_, &id)| id as usize >= np)
            .map(|(j, _)| j)
    }

    pub fn inversions(&self, rs: &RootSystem) -> Vec<Root> {
        self.inversion_ids().map(|j| rs.root(j)).collect()
    }

    fn check_same(&self, other: &WeylElement) -> Result<()> {
        if self.ty != other.ty {
            return Err(Error::MixedRootSystems(
                self.ty.to_string(),
                other.ty.to_string(),
            ));
        }
        Ok(())
    }

    /// Composition `self ∘ other`.
    pub fn mul(&self, other: &WeylElement) -> Result<WeylElement> {
        self.check_same(other)?;
        Ok(WeylElement {
            ty: self.ty,
            images: other
                .images
                .iter()
                .map(|&id| self.apply(id as usize) as u16)
                .collect(),
        })
    }

    pub fn inverse(&self) -> WeylElement {
        let np = self.np();
        let mut inv = vec![0u16; np];
        for (j, &id) in self.images.iter().enumerate() {
            let id = id as usize;
            if id < np {
                inv[id] = j as u16;
            } else {
                inv[id - np] = (j + np) as u16;
            }
        }
        WeylElement {
            ty: self.ty,
            images: inv.into(),
        }
    }

    /// `s_i w`
    pub fn left_mul_simple(&self, rs: &RootSystem, i: usize) -> WeylElement {
        let table = rs.reflection_table(i);
        WeylElement {
            ty: self.ty,
            images: self.images.iter().map(|&id| table[id as usize]).collect(),
        }
    }

    /// `w s_i`
    pub fn right_mul_simple(&self, rs: &RootSystem, i: usize) -> WeylElement {
        let table = rs.reflection_table(i);
        WeylElement {
            ty: self.ty,
            images: table[..self.np()]
                .iter()
                .map(|&id| self.apply(id as usize) as u16)
                .collect(),
        }
    }

    /// `l(w s_i) < l(w)`
    #[inline]
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.images[i] as usize >= self.np()
    }

    /// `l(s_i w) < l(w)`
    pub fn has_left_descent(&self, i: usize) -> bool {
        let target = (i + self.np()) as u16;
        self.images.contains(&target)
    }

    /// Images of the simple roots.
    pub fn simple_images(&self, rs: &RootSystem) -> Vec<Root> {
        (0..rs.rank()).map(|i| rs.root(self.apply(i))).collect()
    }

    /// Linear action on a vector in simple-root coordinates.
    pub fn act_coords(&self, rs: &RootSystem, coords: &[i32]) -> Vec<i32> {
        let mut out = vec![0; rs.rank()];
        for (i, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let img = rs.root(self.apply(i));
            for (o, x) in out.iter_mut().zip(img.coords()) {
                *o += c * x;
            }
        }
        out
    }

    /// Lexicographically first reduced word (0-based letters).
    pub fn reduced_word(&self, rs: &RootSystem) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.length());
        'outer: while !w.is_identity() {
            for i in 0..rs.rank() {
                if w.has_left_descent(i) {
                    word.push(i);
                    w = w.left_mul_simple(rs, i);
                    continue 'outer;
                }
            }
            unreachable!("non-identity element without a left descent");
        }
        word
    }
}

/// Longest element of the parabolic subgroup generated by `gens`.
pub fn longest_element(rs: &RootSystem, gens: SimpleSet) -> WeylElement {
    let mut w = WeylElement::identity(rs);
    'outer: loop {
        for i in gens.iter() {
            if !w.has_right_descent(i) {
                w = w.right_mul_simple(rs, i);
                continue 'outer;
            }
        }
        return w;
    }
}

/// True when `w` has no right descent in `levi`.
pub fn is_min_coset_rep(w: &WeylElement, levi: SimpleSet) -> bool {
    levi.iter().all(|i| !w.has_right_descent(i))
}

/// Shortest element of the coset `w W_levi`.
pub fn min_coset_rep(rs: &RootSystem, w: &WeylElement, levi: SimpleSet) -> WeylElement {
    let mut w = w.clone();
    'outer: loop {
        for i in levi.iter() {
            if w.has_right_descent(i) {
                w = w.right_mul_simple(rs, i);
                continue 'outer;
            }
        }
        return w;
    }
}

/// `w_alpha`: minimal representative of `w W_{P_alpha}`, where `P_alpha` is
/// the maximal parabolic omitting `alpha`.
pub fn project_w_alpha(rs: &RootSystem, w: &WeylElement, alpha: usize) -> WeylElement {
    min_coset_rep(rs, w, SimpleSet::all(rs.rank()).without(alpha))
}

/// Unique factorisation `w = w' w''` with `w'` minimal in `w W_Q` and
/// `w''` in `W^P ∩ W_Q`.
pub fn parabolic_decompose(
    rs: &RootSystem,
    w: &WeylElement,
    p_levi: SimpleSet,
    q_levi: SimpleSet,
) -> Result<(WeylElement, WeylElement)> {
    if !p_levi.is_subset(q_levi) {
        return Err(Error::Precondition(format!(
            "Q-levi {q_levi} must contain P-levi {p_levi}"
        )));
    }
    if !is_min_coset_rep(w, p_levi) {
        return Err(Error::NotMinimal(
            crate::notation::word_string(&w.reduced_word(rs)),
            p_levi.to_string(),
        ));
    }
    let head = min_coset_rep(rs, w, q_levi);
    let tail = head.inverse().mul(w)?;
    Ok((head, tail))
}

/// Bruhat order test, using the lifting property: if `w s < w` then
/// `u <= w` iff `min(u, u s) <= w s`.
pub fn bruhat_leq(rs: &RootSystem, u: &WeylElement, w: &WeylElement) -> bool {
    let mut u = u.clone();
    let mut w = w.clone();
    loop {
        let (lu, lw) = (u.length(), w.length());
        if lu > lw {
            return false;
        }
        if lu == 0 {
            return true;
        }
        if lu == lw {
            return u == w;
        }
        let i = (0..rs.rank())
            .find(|&i| w.has_right_descent(i))
            .expect("non-identity element has a right descent");
        w = w.right_mul_simple(rs, i);
        if u.has_right_descent(i) {
            u = u.right_mul_simple(rs, i);
        }
    }
}

/// All elements of `W`, graded by length (ties by reduced word).
pub fn enumerate_group(rs: &RootSystem, bound: u64) -> Result<Vec<WeylElement>> {
    let order = rs.cartan_type().weyl_order();
    if order > bound {
        return Err(Error::BoundExceeded {
            required: order,
            bound,
        });
    }
    let q = Quotient::new(Arc::new(rs.clone()), SimpleSet::EMPTY, bound)?;
    Ok(q.elements)
}

/// Levi and associated simple roots of a standard parabolic `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParabolicData {
    pub levi: SimpleSet,
    pub assoc: SimpleSet,
}

impl ParabolicData {
    /// Parabolic named by its associated simple roots (complement of the Levi).
    pub fn from_assoc(rank: usize, assoc: SimpleSet) -> Result<Self> {
        let all = SimpleSet::all(rank);
        if !assoc.is_subset(all) {
            return Err(Error::InvalidParabolic(format!(
                "{assoc} not within 1..{rank}"
            )));
        }
        if assoc.is_empty() {
            return Err(Error::InvalidParabolic(
                "no associated roots (P = G is a point)".into(),
            ));
        }
        Ok(ParabolicData {
            levi: all.difference(assoc),
            assoc,
        })
    }

    pub fn borel(rank: usize) -> Self {
        ParabolicData {
            levi: SimpleSet::EMPTY,
            assoc: SimpleSet::all(rank),
        }
    }

    pub fn is_maximal(&self) -> bool {
        self.assoc.len() == 1
    }
}

/// The minimal coset representatives `W_S^L` of `W_S / W_L` for `L ⊆ S`,
/// indexed and graded by length.
///
/// For `G/P`, `S` is every simple root and `L` is the Levi of `P`. A smaller
/// `S` gives the flag variety of a Levi subgroup.
#[derive(Debug, Clone)]
pub struct Quotient {
    rs: Arc<RootSystem>,
    ambient: SimpleSet,
    levi: SimpleSet,
    elements: Vec<WeylElement>,
    words: Vec<Vec<usize>>,
    index: HashMap<WeylElement, usize>,
    /// `up[x]` lists `(i, y)` with `y = s_i x` in the quotient and longer.
    up: Vec<Vec<(usize, usize)>>,
    w0: WeylElement,
    w0_levi: WeylElement,
}

impl Quotient {
    /// `W^P` for a parabolic of the whole group.
    pub fn for_parabolic(rs: Arc<RootSystem>, pd: ParabolicData, bound: u64) -> Result<Self> {
        let all = SimpleSet::all(rs.rank());
        Quotient::with_ambient(rs, all, pd.levi, bound)
    }

    pub fn new(rs: Arc<RootSystem>, levi: SimpleSet, bound: u64) -> Result<Self> {
        let all = SimpleSet::all(rs.rank());
        Quotient::with_ambient(rs, all, levi, bound)
    }

    pub fn with_ambient(
        rs: Arc<RootSystem>,
        ambient: SimpleSet,
        levi: SimpleSet,
        bound: u64,
    ) -> Result<Self> {
        if !ambient.is_subset(SimpleSet::all(rs.rank())) || !levi.is_subset(ambient) {
            return Err(Error::InvalidParabolic(format!(
                "levi {levi} must lie inside {ambient}"
            )));
        }
        let mut elements = vec![WeylElement::identity(&rs)];
        let mut index: HashMap<WeylElement, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut level = vec![0usize];
        while !level.is_empty() {
            let mut next = Vec::new();
            for &x in &level {
                for i in ambient.iter() {
                    let w = &elements[x];
                    if w.has_left_descent(i) {
                        continue;
                    }
                    let y = w.left_mul_simple(&rs, i);
                    if !is_min_coset_rep(&y, levi) || index.contains_key(&y) {
                        continue;
                    }
                    if elements.len() as u64 >= bound {
                        return Err(Error::BoundExceeded {
                            required: elements.len() as u64 + 1,
                            bound,
                        });
                    }
                    index.insert(y.clone(), elements.len());
                    next.push(elements.len());
                    elements.push(y);
                }
            }
            level = next;
        }

        let mut keyed: Vec<(usize, Vec<usize>, WeylElement)> = elements
            .into_iter()
            .map(|w| (w.length(), w.reduced_word(&rs), w))
            .collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let words: Vec<Vec<usize>> = keyed.iter().map(|k| k.1.clone()).collect();
        let elements: Vec<WeylElement> = keyed.into_iter().map(|k| k.2).collect();
        let index: HashMap<WeylElement, usize> = elements
            .iter()
            .enumerate()
            .map(|(k, w)| (w.clone(), k))
            .collect();

        let up = elements
            .iter()
            .map(|w| {
                ambient
                    .iter()
                    .filter(|&i| !w.has_left_descent(i))
                    .filter_map(|i| index.get(&w.left_mul_simple(&rs, i)).map(|&y| (i, y)))
                    .collect()
            })
            .collect();

        let w0 = longest_element(&rs, ambient);
        let w0_levi = longest_element(&rs, levi);
        Ok(Quotient {
            rs,
            ambient,
            levi,
            elements,
            words,
            index,
            up,
            w0,
            w0_levi,
        })
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn ambient(&self) -> SimpleSet {
        self.ambient
    }

    pub fn levi(&self) -> SimpleSet {
        self.levi
    }

    /// Associated simple roots: ambient minus Levi.
    pub fn assoc(&self) -> SimpleSet {
        self.ambient.difference(self.levi)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &WeylElement {
        &self.elements[k]
    }

    pub fn length(&self, k: usize) -> usize {
        self.words[k].len()
    }

    /// Reduced word of element `k` (0-based letters).
    pub fn word(&self, k: usize) -> &[usize] {
        &self.words[k]
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn require_index(&self, w: &WeylElement) -> Result<usize> {
        self.index_of(w).ok_or_else(|| {
            Error::NotMinimal(
                crate::notation::word_string(&w.reduced_word(&self.rs)),
                self.levi.to_string(),
            )
        })
    }

    pub(crate) fn up_edges(&self, k: usize) -> &[(usize, usize)] {
        &self.up[k]
    }

    /// Complex dimension of the flag variety: length of the longest element.
    pub fn dim(&self) -> usize {
        self.w0.length() - self.w0_levi.length()
    }

    pub fn longest(&self) -> &WeylElement {
        &self.w0
    }

    pub fn longest_levi(&self) -> &WeylElement {
        &self.w0_levi
    }

    /// `w^vee = w0 w w0^P`.
    pub fn dual(&self, w: &WeylElement) -> Result<WeylElement> {
        self.require_index(w)?;
        self.w0.mul(w)?.mul(&self.w0_levi)
    }

    pub fn dual_index(&self, k: usize) -> usize {
        let d = self
            .dual(&self.elements[k])
            .expect("quotient elements are minimal");
        self.index[&d]
    }
}
