//! A small regex front end: literals, `.`, `|`, `*`, `+`, `?`, grouping and
//! `\` escapes. Patterns compile to an ε-free position (Glushkov) automaton.

use std::collections::BTreeSet;

use super::{Alphabet, Nfa, Symbol};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
enum Ast {
    Epsilon,
    /// One position matching any symbol of the set.
    Class(Vec<Symbol>),
    Concat(Vec<Ast>),
    Alt(Vec<Ast>),
    Star(Box<Ast>),
    Plus(Box<Ast>),
    Opt(Box<Ast>),
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn alt(&mut self) -> Result<Ast> {
        let mut branches = vec![self.concat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            branches.push(self.concat()?);
        }
        Ok(if branches.len() == 1 { branches.pop().unwrap() } else { Ast::Alt(branches) })
    }

    fn concat(&mut self) -> Result<Ast> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            parts.push(self.repeat()?);
        }
        Ok(match parts.len() {
            0 => Ast::Epsilon,
            1 => parts.pop().unwrap(),
            _ => Ast::Concat(parts),
        })
    }

    fn repeat(&mut self) -> Result<Ast> {
        let mut node = self.atom()?;
        while let Some(c) = self.peek() {
            node = match c {
                '*' => Ast::Star(Box::new(node)),
                '+' => Ast::Plus(Box::new(node)),
                '?' => Ast::Opt(Box::new(node)),
                _ => break,
            };
            self.pos += 1;
        }
        Ok(node)
    }

    fn atom(&mut self) -> Result<Ast> {
        let c = self.peek().ok_or_else(|| self.error("unexpected end of pattern"))?;
        match c {
            '(' => {
                self.pos += 1;
                let inner = self.alt()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            '.' => {
                self.pos += 1;
                Ok(Ast::Class(self.alphabet.symbols().collect()))
            }
            '*' | '+' | '?' => Err(self.error(format!("'{c}' has nothing to repeat"))),
            '\\' => {
                self.pos += 1;
                let lit = self.peek().ok_or_else(|| self.error("dangling escape"))?;
                self.literal(lit)
            }
            _ => self.literal(c),
        }
    }

    fn literal(&mut self, c: char) -> Result<Ast> {
        let code = self.alphabet.code(c)?;
        self.pos += 1;
        Ok(Ast::Class(vec![code]))
    }
}

/// Nullable flag plus first/last position sets of a subexpression.
struct Glushkov {
    nullable: bool,
    first: BTreeSet<usize>,
    last: BTreeSet<usize>,
}

struct Builder {
    labels: Vec<Vec<Symbol>>,
    follow: Vec<BTreeSet<usize>>,
}

impl Builder {
    fn visit(&mut self, ast: &Ast) -> Glushkov {
        match ast {
            Ast::Epsilon => Glushkov { nullable: true, first: BTreeSet::new(), last: BTreeSet::new() },
            Ast::Class(symbols) => {
                let p = self.labels.len();
                self.labels.push(symbols.clone());
                self.follow.push(BTreeSet::new());
                Glushkov { nullable: false, first: [p].into(), last: [p].into() }
            }
            Ast::Concat(parts) => {
                let mut acc =
                    Glushkov { nullable: true, first: BTreeSet::new(), last: BTreeSet::new() };
                for part in parts {
                    let g = self.visit(part);
                    for &l in &acc.last {
                        self.follow[l].extend(g.first.iter().copied());
                    }
                    if acc.nullable {
                        acc.first.extend(g.first.iter().copied());
                    }
                    if g.nullable {
                        acc.last.extend(g.last);
                    } else {
                        acc.last = g.last;
                    }
                    acc.nullable &= g.nullable;
                }
                acc
            }
            Ast::Alt(branches) => {
                let mut acc =
                    Glushkov { nullable: false, first: BTreeSet::new(), last: BTreeSet::new() };
                for b in branches {
                    let g = self.visit(b);
                    acc.nullable |= g.nullable;
                    acc.first.extend(g.first);
                    acc.last.extend(g.last);
                }
                acc
            }
            Ast::Star(inner) | Ast::Plus(inner) => {
                let mut g = self.visit(inner);
                for &l in &g.last {
                    self.follow[l].extend(g.first.iter().copied());
                }
                if matches!(ast, Ast::Star(_)) {
                    g.nullable = true;
                }
                g
            }
            Ast::Opt(inner) => {
                let mut g = self.visit(inner);
                g.nullable = true;
                g
            }
        }
    }
}

/// Compiles `pattern` over `alphabet` into an ε-free NFA.
///
/// State 0 is the unique initial state; state `i + 1` stands for position `i`.
pub fn parse_regex(pattern: &str, alphabet: &Alphabet) -> Result<Nfa> {
    let mut parser = Parser { chars: pattern.chars().collect(), pos: 0, alphabet };
    let ast = parser.alt()?;
    if parser.pos != parser.chars.len() {
        return Err(parser.error("unmatched ')'"));
    }
    let mut builder = Builder { labels: Vec::new(), follow: Vec::new() };
    let root = builder.visit(&ast);
    let mut nfa = Nfa::new(alphabet.clone(), builder.labels.len() + 1);
    nfa.add_initial(0)?;
    if root.nullable {
        nfa.add_final(0)?;
    }
    for &l in &root.last {
        nfa.add_final(l + 1)?;
    }
    let mut connect = |from: usize, targets: &BTreeSet<usize>| -> Result<()> {
        for &p in targets {
            for &a in &builder.labels[p] {
                nfa.add_transition(from, a, p + 1)?;
            }
        }
        Ok(())
    };
    connect(0, &root.first)?;
    for p in 0..builder.labels.len() {
        let follow = builder.follow[p].clone();
        connect(p + 1, &follow)?;
    }
    Ok(nfa)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma(s: &str) -> Alphabet {
        Alphabet::new(s.chars()).unwrap()
    }

    fn accepts(pattern: &str, alphabet: &str, word: &str) -> bool {
        let sigma = sigma(alphabet);
        let nfa = parse_regex(pattern, &sigma).unwrap();
        nfa.accepts(&sigma.encode(word).unwrap())
    }

    #[test]
    fn basic_operators() {
        assert!(accepts("a*", "ab", ""));
        assert!(accepts("a*", "ab", "aaa"));
        assert!(!accepts("a*", "ab", "ab"));
        assert!(accepts("(aa)*", "a", "aaaa"));
        assert!(!accepts("(aa)*", "a", "aaa"));
        assert!(accepts("ba*", "ab", "baaa"));
        assert!(!accepts("ba*", "ab", "aba"));
        assert!(accepts("a+b?", "ab", "aab"));
        assert!(!accepts("a+b?", "ab", "b"));
        assert!(accepts(".*a", "ab", "bba"));
        assert!(accepts("(|a)b", "ab", "b"));
        assert!(accepts("ab|b", "ab", "b"));
        assert!(accepts("\\a", "ab", "a"));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let s = sigma("ab");
        assert!(matches!(parse_regex("(ab", &s), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_regex("ab)", &s), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_regex("*a", &s), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_regex("a\\", &s), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn symbol_outside_alphabet() {
        assert!(matches!(parse_regex("ac", &sigma("ab")), Err(Error::UnknownSymbol('c'))));
    }

    #[test]
    fn determinized_a_star_has_live_state_and_sink() {
        let dfa = parse_regex("a*", &sigma("ab")).unwrap().determinize().unwrap();
        assert_eq!(dfa.minimize().num_states(), 2);
    }
}
