//! Parsing and formatting of Weyl group elements.
//!
//! Two notations are supported:
//!
//! * reduced words, `"s1 s3 s2"` (1-based letters, `"e"` for the identity);
//! * windows: one-line permutations of `1..=n+1` for type `A_n`, and signed
//!   permutations of `1..=n` for types `B_n`, `C_n` and `D_n`.
//!
//! A window `[w(1), .., w(n)]` records the action `w(e_j) = ±e_{|w(j)|}` on
//! the standard basis. Under [`WindowConvention::Bourbaki`] the simple roots
//! are `e_i - e_{i+1}` and `e_n` (`2e_n` for C, `e_{n-1} + e_n` for D), so
//! `s_n` changes the sign of the last letter. [`WindowConvention::Mirrored`]
//! relabels `j -> n + 1 - j`: `s_n` changes the sign of the first letter and
//! `s_i` swaps the letters `n - i` and `n + 1 - i`. Bourbaki is the default;
//! with it the coefficient `a_{1324, 1-234}^{3-214}` of `B4/P_{2,4}` is 1.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rootsys::{Family, RootSystem};
use crate::weyl::WeylElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Notation {
    Word,
    Window,
}

impl FromStr for Notation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "word" | "reduced-word" => Ok(Notation::Word),
            "window" | "perm" | "signed" => Ok(Notation::Window),
            _ => Err(Error::Parse(s.into(), "expected word or window".into())),
        }
    }
}

impl fmt::Display for Notation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Notation::Word => write!(f, "word"),
            Notation::Window => write!(f, "window"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WindowConvention {
    Bourbaki,
    Mirrored,
}

impl WindowConvention {
    /// Convention used for signed-permutation windows throughout the crate.
    pub const DEFAULT: WindowConvention = WindowConvention::Bourbaki;

    pub fn describe(self, family: Family) -> &'static str {
        match (self, family) {
            (_, Family::A) => "one-line permutation, s_i swaps i and i+1",
            (WindowConvention::Bourbaki, _) => {
                "signed permutation window, s_i swaps i and i+1, s_n acts on the last letter"
            }
            (WindowConvention::Mirrored, _) => {
                "signed permutation window, s_i swaps n-i and n+1-i, s_n acts on the first letter"
            }
        }
    }
}

/// `"s1 s3 s2"`, or `"e"` for the empty word. Letters are 0-based.
pub fn word_string(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    word.iter()
        .map(|i| format!("s{}", i + 1))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parse `"s1 s3 s2"`, `"s1s3s2"` or `"e"` into a 0-based word.
pub fn parse_word(s: &str, rank: usize) -> Result<Vec<usize>> {
    let t = s.trim();
    if t.is_empty() || t == "e" || t == "id" || t == "1" && rank == 0 {
        return Ok(Vec::new());
    }
    let mut word = Vec::new();
    let mut chars = t.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            's' | 'S' => {
                let mut digits = String::new();
                while let Some(d) = chars.peek().copied().filter(|d| d.is_ascii_digit()) {
                    digits.push(d);
                    chars.next();
                }
                let i: usize = digits
                    .parse()
                    .map_err(|_| Error::Parse(s.into(), "letter without index".into()))?;
                if i == 0 || i > rank {
                    return Err(Error::Parse(s.into(), format!("letter s{i} out of range")));
                }
                word.push(i - 1);
            }
            ' ' | ',' | '*' | '.' | '[' | ']' => {}
            _ => return Err(Error::Parse(s.into(), format!("unexpected {c:?}"))),
        }
    }
    Ok(word)
}

fn window_len(rs: &RootSystem) -> Result<usize> {
    let ct = rs.cartan_type();
    match ct.family() {
        Family::A => Ok(ct.rank() + 1),
        Family::B | Family::C | Family::D => Ok(ct.rank()),
        _ => Err(Error::Parse(
            ct.to_string(),
            "window notation needs a classical type".into(),
        )),
    }
}

/// Action of the Bourbaki generator `s_i` (0-based) on a signed letter.
fn act_letter(family: Family, n: usize, i: usize, x: i32) -> i32 {
    let (sign, a) = (x.signum(), x.unsigned_abs() as usize);
    let last = i + 1 == n;
    match family {
        Family::B | Family::C if last => {
            if a == n {
                -x
            } else {
                x
            }
        }
        Family::D if last => {
            if a == n {
                -sign * (n as i32 - 1)
            } else if a == n - 1 {
                -sign * n as i32
            } else {
                x
            }
        }
        _ => {
            if a == i + 1 {
                sign * (i as i32 + 2)
            } else if a == i + 2 {
                sign * (i as i32 + 1)
            } else {
                x
            }
        }
    }
}

fn mirror(window: &[i32]) -> Vec<i32> {
    let n = window.len() as i32;
    (0..window.len())
        .map(|j| {
            let x = window[window.len() - 1 - j];
            x.signum() * (n + 1 - x.abs())
        })
        .collect()
}

/// Window of `w`.
pub fn window(rs: &RootSystem, w: &WeylElement, conv: WindowConvention) -> Result<Vec<i32>> {
    let m = window_len(rs)?;
    let family = rs.cartan_type().family();
    let word = w.reduced_word(rs);
    let bourbaki: Vec<i32> = (1..=m as i32)
        .map(|j| {
            word.iter()
                .rev()
                .fold(j, |x, &i| act_letter(family, rs.rank(), i, x))
        })
        .collect();
    Ok(match (family, conv) {
        (Family::A, _) | (_, WindowConvention::Bourbaki) => bourbaki,
        (_, WindowConvention::Mirrored) => mirror(&bourbaki),
    })
}

pub fn format_window(window: &[i32]) -> String {
    window
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn split_window(s: &str, m: usize) -> Result<Vec<i32>> {
    let cleaned: String = s
        .trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .chars()
        .collect();
    let tokens: Vec<&str> = cleaned
        .split([',', ' '])
        .filter(|t| !t.is_empty())
        .collect();
    let bad = |why: &str| Error::Parse(s.into(), why.into());
    if tokens.len() == 1 && m > 1 {
        // compact form: "1324", "1-234", or with a combining overline "12̄34"
        let mut out: Vec<i32> = Vec::new();
        let mut neg = false;
        for c in tokens[0].chars() {
            match c {
                '-' => neg = true,
                '\u{0304}' | '\u{0305}' => {
                    let last = out.last_mut().ok_or_else(|| bad("bar without letter"))?;
                    *last = -*last;
                }
                d if d.is_ascii_digit() => {
                    let v = d.to_digit(10).unwrap() as i32;
                    out.push(if neg { -v } else { v });
                    neg = false;
                }
                _ => return Err(bad("unexpected character")),
            }
        }
        return Ok(out);
    }
    tokens
        .iter()
        .map(|t| t.parse::<i32>().map_err(|_| bad("bad letter")))
        .collect()
}

/// Parse a window into an element.
pub fn parse_window(rs: &RootSystem, s: &str, conv: WindowConvention) -> Result<WeylElement> {
    let m = window_len(rs)?;
    let family = rs.cartan_type().family();
    let n = rs.rank();
    let mut win = split_window(s, m)?;
    if win.len() != m {
        return Err(Error::Parse(s.into(), format!("expected {m} letters")));
    }
    let mut seen = vec![false; m + 1];
    for &x in &win {
        let a = x.unsigned_abs() as usize;
        if a == 0 || a > m || seen[a] || (family == Family::A && x < 0) {
            return Err(Error::Parse(s.into(), "not a (signed) permutation".into()));
        }
        seen[a] = true;
    }
    if family == Family::D && win.iter().filter(|&&x| x < 0).count() % 2 == 1 {
        return Err(Error::Parse(
            s.into(),
            "type D needs an even number of sign changes".into(),
        ));
    }
    if family != Family::A && conv == WindowConvention::Mirrored {
        win = mirror(&win);
    }

    // Order on signed letters induced by positivity: 1 > 2 > .. > m > -m > .. > -1.
    let rank = |x: i32| if x > 0 { 2 * m as i32 + 1 - x } else { -x };
    // Strip right descents until the identity remains.
    let mut letters = Vec::new();
    'outer: loop {
        for i in 0..n {
            let last = i + 1 == n;
            let descent = match family {
                Family::B | Family::C if last => win[n - 1] < 0,
                Family::D if last => {
                    let (x, y) = (win[n - 2] as i64, win[n - 1] as i64);
                    (x + y) * x * y < 0
                }
                _ => rank(win[i]) < rank(win[i + 1]),
            };
            if descent {
                match family {
                    Family::B | Family::C if last => win[n - 1] = -win[n - 1],
                    Family::D if last => {
                        let (a, b) = (win[n - 2], win[n - 1]);
                        win[n - 2] = -b;
                        win[n - 1] = -a;
                    }
                    _ => win.swap(i, i + 1),
                }
                letters.push(i);
                continue 'outer;
            }
        }
        break;
    }
    letters.reverse();
    WeylElement::from_reduced_word(rs, &letters)
}

/// Format an element in the requested notation.
pub fn format_element(rs: &RootSystem, w: &WeylElement, notation: Notation) -> Result<String> {
    match notation {
        Notation::Word => Ok(word_string(&w.reduced_word(rs))),
        Notation::Window => Ok(format_window(&window(rs, w, WindowConvention::DEFAULT)?)),
    }
}

/// Parse an element. Strings containing `s` or equal to `e` are read as
/// reduced words; anything else as a window.
pub fn parse_element(rs: &RootSystem, s: &str) -> Result<WeylElement> {
    let t = s.trim();
    if t == "e" || t == "id" || t.contains(['s', 'S']) {
        let word = parse_word(t, rs.rank())?;
        WeylElement::from_word(rs, &word)
    } else {
        parse_window(rs, t, WindowConvention::DEFAULT)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{enumerate_group, DEFAULT_BOUND};

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s.parse().unwrap())
    }

    #[test]
    fn words() {
        assert_eq!(word_string(&[]), "e");
        assert_eq!(word_string(&[0, 2, 1]), "s1 s3 s2");
        assert_eq!(parse_word("s1 s3 s2", 3).unwrap(), vec![0, 2, 1]);
        assert_eq!(parse_word("s1s3s2", 3).unwrap(), vec![0, 2, 1]);
        assert!(parse_word("s4", 3).is_err());
        assert!(parse_word("x1", 3).is_err());
    }

    #[test]
    fn round_trip_all_classical() {
        for t in ["A3", "B4", "C3", "D4"] {
            let r = rs(t);
            for w in enumerate_group(&r, DEFAULT_BOUND).unwrap() {
                for conv in [WindowConvention::Bourbaki, WindowConvention::Mirrored] {
                    let win = window(&r, &w, conv).unwrap();
                    let back = parse_window(&r, &format_window(&win), conv).unwrap();
                    assert_eq!(back, w, "{t} {conv:?}");
                }
                for notation in [Notation::Word, Notation::Window] {
                    let s = format_element(&r, &w, notation).unwrap();
                    assert_eq!(parse_element(&r, &s).unwrap(), w);
                }
            }
        }
    }

    #[test]
    fn windows_match_root_action() {
        // w(e_j) computed through the linear action on 2e_j in root coordinates
        let r = rs("B3");
        let two_e = |j: usize| -> Vec<i32> { (0..3).map(|i| if i >= j { 2 } else { 0 }).collect() };
        for w in enumerate_group(&r, DEFAULT_BOUND).unwrap() {
            let win = window(&r, &w, WindowConvention::Bourbaki).unwrap();
            for (j, &target) in win.iter().enumerate() {
                let img = w.act_coords(&r, &two_e(j));
                let k = target.unsigned_abs() as usize - 1;
                let expect: Vec<i32> = two_e(k).iter().map(|c| c * target.signum()).collect();
                assert_eq!(img, expect);
            }
        }
    }

    #[test]
    fn compact_and_barred_forms() {
        let r = rs("B4");
        let a = parse_window(&r, "1-234", WindowConvention::Bourbaki).unwrap();
        let b = parse_window(&r, "12\u{0304}34", WindowConvention::Bourbaki).unwrap();
        let c = parse_window(&r, "[1, -2, 3, 4]", WindowConvention::Bourbaki).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert!(parse_window(&r, "1 1 3 4", WindowConvention::Bourbaki).is_err());
        assert!(parse_window(&r, "1 2 3", WindowConvention::Bourbaki).is_err());
        assert!(parse_window(&rs("D4"), "-1 2 3 4", WindowConvention::Bourbaki).is_err());
        assert!(parse_element(&rs("G2"), "1 2").is_err());
    }

    #[test]
    fn sign_change_letter() {
        let r = rs("B4");
        let s4 = WeylElement::simple_reflection(&r, 3).unwrap();
        assert_eq!(
            window(&r, &s4, WindowConvention::Bourbaki).unwrap(),
            vec![1, 2, 3, -4]
        );
        assert_eq!(
            window(&r, &s4, WindowConvention::Mirrored).unwrap(),
            vec![-1, 2, 3, 4]
        );
        let s1 = WeylElement::simple_reflection(&r, 0).unwrap();
        assert_eq!(
            window(&r, &s1, WindowConvention::Mirrored).unwrap(),
            vec![1, 2, 4, 3]
        );
    }
}
