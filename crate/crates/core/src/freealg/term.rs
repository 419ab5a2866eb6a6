use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A basis element of one level of the underlying algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub symbol: Arc<str>,
    pub degree: usize,
    pub weight: usize,
}

impl Generator {
    pub fn new(symbol: &str, degree: usize, weight: usize) -> Self {
        Self { symbol: Arc::from(symbol), degree, weight }
    }
}

/// An iterated monomial: a generator, or a nonempty sorted multiset of terms.
///
/// Multisets are kept as sorted vectors with repeats, so a canonical term is
/// a unique representative of its monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Leaf(Generator),
    Node(Vec<Term>),
}

impl Term {
    pub fn leaf(g: Generator) -> Term {
        Term::Leaf(g)
    }

    /// Sorts the children and wraps them; fails on an empty multiset.
    pub fn node(mut children: Vec<Term>) -> Result<Term> {
        if children.is_empty() {
            return Err(Error::EmptyMultiset);
        }
        children.sort();
        Ok(Term::Node(children))
    }

    pub(crate) fn node_sorted(children: Vec<Term>) -> Term {
        debug_assert!(!children.is_empty() && children.windows(2).all(|w| w[0] <= w[1]));
        Term::Node(children)
    }

    /// Wraps `self` in `d` singleton layers.
    pub fn wrap(self, d: usize) -> Term {
        (0..d).fold(self, |t, _| Term::Node(vec![t]))
    }

    /// Recursively sorts every multiset.
    pub fn canonicalize(self) -> Result<Term> {
        match self {
            Term::Leaf(g) => Ok(Term::Leaf(g)),
            Term::Node(ch) => {
                let ch = ch.into_iter().map(Term::canonicalize).collect::<Result<Vec<_>>>()?;
                Term::node(ch)
            }
        }
    }

    pub fn is_canonical(&self) -> bool {
        match self {
            Term::Leaf(_) => true,
            Term::Node(ch) => {
                !ch.is_empty() && ch.windows(2).all(|w| w[0] <= w[1]) && ch.iter().all(Term::is_canonical)
            }
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Term::Leaf(_))
    }

    pub fn children(&self) -> &[Term] {
        match self {
            Term::Leaf(_) => &[],
            Term::Node(ch) => ch,
        }
    }

    /// Size of the top multiset; zero for a generator.
    pub fn top_size(&self) -> usize {
        self.children().len()
    }

    /// Length of the leftmost root-to-leaf path.
    pub fn depth(&self) -> usize {
        match self {
            Term::Leaf(_) => 0,
            Term::Node(ch) => 1 + ch[0].depth(),
        }
    }

    pub fn weight(&self) -> usize {
        match self {
            Term::Leaf(g) => g.weight,
            Term::Node(ch) => ch.iter().map(Term::weight).sum(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Term::Leaf(_) => 1,
            Term::Node(ch) => ch.iter().map(Term::leaf_count).sum(),
        }
    }

    /// All subterms at the given distance from the root.
    pub fn at_distance(&self, d: usize) -> Vec<&Term> {
        let mut out = Vec::new();
        fn go<'a>(t: &'a Term, d: usize, out: &mut Vec<&'a Term>) {
            if d == 0 {
                out.push(t);
            } else {
                for c in t.children() {
                    go(c, d - 1, out);
                }
            }
        }
        go(self, d, &mut out);
        out
    }

    /// True if some subterm at distance `d` has a top multiset of size at least `k`.
    pub fn some_node_at_least(&self, d: usize, k: usize) -> bool {
        if d == 0 {
            return self.top_size() >= k;
        }
        self.children().iter().any(|c| c.some_node_at_least(d - 1, k))
    }

    pub fn leaves(&self) -> Vec<&Generator> {
        let mut out = Vec::new();
        fn go<'a>(t: &'a Term, out: &mut Vec<&'a Generator>) {
            match t {
                Term::Leaf(g) => out.push(g),
                Term::Node(ch) => ch.iter().for_each(|c| go(c, out)),
            }
        }
        go(self, &mut out);
        out
    }

    /// Parses the rendering produced by `Display`, resolving leaf symbols with `lookup`.
    pub fn parse(s: &str, lookup: &dyn Fn(&str) -> Option<Generator>) -> Result<Term> {
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let t = parse_term(&chars, &mut pos, lookup)?;
        skip_ws(&chars, &mut pos);
        if pos != chars.len() {
            return Err(parse_err(pos, "trailing characters after term"));
        }
        Ok(t)
    }
}

fn parse_err(pos: usize, msg: &str) -> Error {
    Error::Parse { line: 1, col: pos + 1, msg: msg.to_string() }
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && chars[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn parse_term(chars: &[char], pos: &mut usize, lookup: &dyn Fn(&str) -> Option<Generator>) -> Result<Term> {
    skip_ws(chars, pos);
    if *pos >= chars.len() {
        return Err(parse_err(*pos, "unexpected end of term"));
    }
    if chars[*pos] == '{' {
        *pos += 1;
        let mut children = Vec::new();
        loop {
            skip_ws(chars, pos);
            if *pos < chars.len() && chars[*pos] == '}' {
                if children.is_empty() {
                    return Err(Error::EmptyMultiset);
                }
                *pos += 1;
                break;
            }
            children.push(parse_term(chars, pos, lookup)?);
            skip_ws(chars, pos);
            match chars.get(*pos) {
                Some(',') => *pos += 1,
                Some('}') => {}
                _ => return Err(parse_err(*pos, "expected `,` or `}`")),
            }
        }
        return Term::node(children);
    }
    let start = *pos;
    while *pos < chars.len() && !matches!(chars[*pos], '{' | '}' | ',') && !chars[*pos].is_whitespace() {
        *pos += 1;
    }
    if start == *pos {
        return Err(parse_err(start, "expected a symbol"));
    }
    let sym: String = chars[start..*pos].iter().collect();
    lookup(&sym)
        .map(Term::Leaf)
        .ok_or_else(|| parse_err(start, &format!("unknown symbol `{sym}`")))
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Leaf(g) => write!(f, "{}", g.symbol),
            Term::Node(ch) => {
                write!(f, "{{")?;
                for (k, c) in ch.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Term {
        Term::Leaf(Generator::new(s, 1, 1))
    }

    #[test]
    fn canonical_sorting() {
        let t = Term::node(vec![g("y"), g("x")]).unwrap();
        assert_eq!(t.to_string(), "{x,y}");
        let raw = Term::Node(vec![Term::Node(vec![g("y")]), Term::Node(vec![g("x")])]);
        let c = raw.canonicalize().unwrap();
        assert_eq!(c.to_string(), "{{x},{y}}");
        assert_eq!(c.clone().canonicalize().unwrap(), c);
    }

    #[test]
    fn empty_multiset_rejected() {
        assert_eq!(Term::node(vec![]), Err(Error::EmptyMultiset));
        assert_eq!(Term::Node(vec![]).canonicalize(), Err(Error::EmptyMultiset));
    }

    #[test]
    fn parse_round_trip() {
        let lookup = |s: &str| Some(Generator::new(s, 1, 1));
        let t = Term::parse("{{x0},{x1, x0}}", &lookup).unwrap();
        assert_eq!(t.to_string(), "{{x0},{x0,x1}}");
        assert_eq!(t.depth(), 2);
        assert_eq!(t.weight(), 3);
        assert!(Term::parse("{x,", &lookup).is_err());
        assert!(matches!(Term::parse("{}", &lookup), Err(Error::EmptyMultiset)));
    }
}
