//! Brute-force references shared by the integration tests. Nothing here
//! goes through the library's automata.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use regwin::automata::{Alphabet, Language};

pub const SIGMA: &str = "ab";

/// Corpus languages over `{a, b}`.
pub const CORPUS: &[&str] = &[
    "a*",
    "(aa)*",
    "(a|b)*a",
    "ba*",
    "(.a)*",
    "(ab)*",
    "ab|bab",
    "a|b|aa",
    "(a|b)*a|ba*",
    "a*|b*",
    "b(aa)*",
    "(a|b)*",
    "(aa)*b(aaa)*",
];

pub fn sigma() -> Alphabet {
    Alphabet::new(SIGMA.chars()).unwrap()
}

pub fn language(pattern: &str) -> Language {
    Language::from_regex(pattern, &sigma()).unwrap()
}

#[derive(Clone, Debug)]
enum Node {
    Eps,
    Any,
    Lit(char),
    Cat(Box<Node>, Box<Node>),
    Alt(Box<Node>, Box<Node>),
    Star(Box<Node>),
    Plus(Box<Node>),
    Opt(Box<Node>),
}

/// Backtracking-free matcher computing end-position sets.
#[derive(Clone, Debug)]
pub struct Matcher {
    root: Node,
}

impl Matcher {
    pub fn new(pattern: &str) -> Self {
        let chars: Vec<char> = pattern.chars().collect();
        let mut pos = 0;
        let root = Self::alt(&chars, &mut pos);
        assert_eq!(pos, chars.len(), "trailing input in {pattern}");
        Self { root }
    }

    fn alt(c: &[char], pos: &mut usize) -> Node {
        let mut node = Self::cat(c, pos);
        while c.get(*pos) == Some(&'|') {
            *pos += 1;
            node = Node::Alt(Box::new(node), Box::new(Self::cat(c, pos)));
        }
        node
    }

    fn cat(c: &[char], pos: &mut usize) -> Node {
        let mut node = Node::Eps;
        while let Some(&ch) = c.get(*pos) {
            if ch == '|' || ch == ')' {
                break;
            }
            let mut atom = match ch {
                '(' => {
                    *pos += 1;
                    let inner = Self::alt(c, pos);
                    assert_eq!(c.get(*pos), Some(&')'));
                    inner
                }
                '.' => Node::Any,
                _ => Node::Lit(ch),
            };
            *pos += 1;
            while let Some(&op) = c.get(*pos) {
                atom = match op {
                    '*' => Node::Star(Box::new(atom)),
                    '+' => Node::Plus(Box::new(atom)),
                    '?' => Node::Opt(Box::new(atom)),
                    _ => break,
                };
                *pos += 1;
            }
            node = Node::Cat(Box::new(node), Box::new(atom));
        }
        node
    }

    fn ends(node: &Node, w: &[char], starts: &BTreeSet<usize>) -> BTreeSet<usize> {
        match node {
            Node::Eps => starts.clone(),
            Node::Any => starts.iter().filter(|&&i| i < w.len()).map(|i| i + 1).collect(),
            Node::Lit(ch) => {
                starts.iter().filter(|&&i| w.get(i) == Some(ch)).map(|i| i + 1).collect()
            }
            Node::Cat(x, y) => Self::ends(y, w, &Self::ends(x, w, starts)),
            Node::Alt(x, y) => {
                let mut out = Self::ends(x, w, starts);
                out.extend(Self::ends(y, w, starts));
                out
            }
            Node::Star(x) | Node::Plus(x) => {
                let mut reached =
                    if matches!(node, Node::Star(_)) { starts.clone() } else { BTreeSet::new() };
                let mut frontier = starts.clone();
                loop {
                    let next: BTreeSet<usize> =
                        Self::ends(x, w, &frontier).difference(&reached).copied().collect();
                    if next.is_empty() {
                        break;
                    }
                    reached.extend(next.iter().copied());
                    frontier = next;
                }
                reached
            }
            Node::Opt(x) => {
                let mut out = starts.clone();
                out.extend(Self::ends(x, w, starts));
                out
            }
        }
    }

    pub fn matches(&self, word: &str) -> bool {
        let w: Vec<char> = word.chars().collect();
        Self::ends(&self.root, &w, &[0].into()).contains(&w.len())
    }
}

/// All words of length `n` over [`SIGMA`] in lexicographic order.
pub fn words(n: usize) -> Vec<String> {
    let letters: Vec<char> = SIGMA.chars().collect();
    let mut out = vec![String::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| letters.iter().map(move |&c| format!("{w}{c}")))
            .collect();
    }
    out
}

pub fn members(m: &Matcher, n: usize) -> Vec<String> {
    words(n).into_iter().filter(|w| m.matches(w)).collect()
}

pub fn hamming(u: &str, v: &str) -> usize {
    assert_eq!(u.len(), v.len());
    u.chars().zip(v.chars()).filter(|(x, y)| x != y).count()
}

/// Least `i` with `u[i..] == v[i..]`.
pub fn pdist(u: &str, v: &str) -> usize {
    assert_eq!(u.len(), v.len());
    (0..=u.len()).find(|&i| u[i..] == v[i..]).unwrap()
}

/// `None` stands for an empty slice of the language.
pub fn dist_to(w: &str, members: &[String]) -> Option<usize> {
    members.iter().map(|v| hamming(w, v)).min()
}

pub fn pdist_to(w: &str, members: &[String]) -> Option<usize> {
    members.iter().map(|v| pdist(w, v)).min()
}

/// Prefix distances to `L ∩ Σⁿ` answered through a suffix table.
pub struct SuffixIndex {
    n: usize,
    suffixes: HashSet<String>,
}

impl SuffixIndex {
    pub fn new(members: &[String], n: usize) -> Self {
        let mut suffixes = HashSet::new();
        for v in members {
            for i in 0..=v.len() {
                suffixes.insert(v[i..].to_string());
            }
        }
        Self { n, suffixes }
    }

    pub fn is_empty(&self) -> bool {
        self.suffixes.is_empty()
    }

    pub fn pdist(&self, w: &str) -> Option<usize> {
        if self.is_empty() {
            return None;
        }
        (0..=self.n).find(|&i| self.suffixes.contains(&w[i..]))
    }
}

/// Last `n` symbols of `pad^n · stream`.
pub fn last_n(stream: &str, n: usize, pad: char) -> String {
    let padded: String = std::iter::repeat_n(pad, n).chain(stream.chars()).collect();
    padded[padded.len() - n..].to_string()
}

pub fn encode(word: &str) -> Vec<usize> {
    sigma().encode(word).unwrap()
}

/// Least squares fit `y ≈ a + b·x`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let b = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    (my - b * mx, b)
}
