//! Finite words and ultimately periodic (lasso) words over letter indices.

use std::fmt;

use crate::error::{Error, Result};

/// An ultimately periodic word `prefix · period^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LassoWord {
    pub prefix: Vec<usize>,
    pub period: Vec<usize>,
}

impl LassoWord {
    /// Panics if `period` is empty.
    pub fn new(prefix: Vec<usize>, period: Vec<usize>) -> Self {
        assert!(!period.is_empty(), "lasso period must be nonempty");
        LassoWord { prefix, period }
    }

    pub fn len(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Letter at position `i` of the infinite word.
    pub fn letter_at(&self, i: usize) -> usize {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.prefix.iter().chain(self.period.iter()).copied()
    }

    /// Same infinite word with the period rotated left by `by` positions.
    pub fn rotated(&self, by: usize) -> LassoWord {
        let by = by % self.period.len();
        let mut prefix = self.prefix.clone();
        prefix.extend_from_slice(&self.period[..by]);
        let mut period = self.period[by..].to_vec();
        period.extend_from_slice(&self.period[..by]);
        LassoWord { prefix, period }
    }

    /// Same infinite word written as `u v (v v)^ω`.
    pub fn unrolled(&self) -> LassoWord {
        let mut prefix = self.prefix.clone();
        prefix.extend_from_slice(&self.period);
        let mut period = self.period.clone();
        period.extend_from_slice(&self.period);
        LassoWord { prefix, period }
    }

    /// Renders as `u(v)` using the alphabet's letter names.
    pub fn display<'a>(&'a self, alphabet: &'a [String]) -> impl fmt::Display + 'a {
        DisplayLasso {
            word: self,
            alphabet,
        }
    }

    /// Parses `u(v)`. Single-character alphabets are read character by character;
    /// otherwise letters are separated by whitespace (`a1 a2 (a1)`) or matched greedily.
    pub fn parse(text: &str, alphabet: &[String]) -> Result<LassoWord> {
        let open = text
            .find('(')
            .ok_or_else(|| Error::Invalid(format!("lasso `{text}` lacks `(`")))?;
        let close = text
            .rfind(')')
            .filter(|&c| c > open && text[c + 1..].trim().is_empty())
            .ok_or_else(|| Error::Invalid(format!("lasso `{text}` lacks closing `)`")))?;
        let prefix = parse_letters(&text[..open], alphabet)?;
        let period = parse_letters(&text[open + 1..close], alphabet)?;
        if period.is_empty() {
            return Err(Error::Invalid(format!("lasso `{text}` has empty period")));
        }
        Ok(LassoWord { prefix, period })
    }
}

struct DisplayLasso<'a> {
    word: &'a LassoWord,
    alphabet: &'a [String],
}

impl fmt::Display for DisplayLasso<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.alphabet.iter().all(|l| l.chars().count() == 1) {
            ""
        } else {
            " "
        };
        let name = |l: usize| self.alphabet.get(l).map_or("?", |s| s.as_str());
        let prefix: Vec<&str> = self.word.prefix.iter().map(|&l| name(l)).collect();
        let period: Vec<&str> = self.word.period.iter().map(|&l| name(l)).collect();
        write!(f, "{}", prefix.join(sep))?;
        if !prefix.is_empty() && !sep.is_empty() {
            write!(f, " ")?;
        }
        write!(f, "({})", period.join(sep))
    }
}

/// Parses a finite word with the same letter conventions as [`LassoWord::parse`].
pub fn parse_letters(text: &str, alphabet: &[String]) -> Result<Vec<usize>> {
    let lookup = |tok: &str| {
        alphabet
            .iter()
            .position(|l| l == tok)
            .ok_or_else(|| Error::UnknownLetter(tok.to_string()))
    };
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    if text.contains(char::is_whitespace) {
        return text.split_whitespace().map(lookup).collect();
    }
    let mut out = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let best = alphabet
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.is_empty() && rest.starts_with(l.as_str()))
            .max_by_key(|(_, l)| l.len());
        match best {
            Some((i, l)) => {
                out.push(i);
                rest = &rest[l.len()..];
            }
            None => {
                let c: String = rest.chars().take(1).collect();
                return Err(Error::UnknownLetter(c));
            }
        }
    }
    Ok(out)
}

/// A counterexample: either a finite word or a lasso.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Word {
    Finite(Vec<usize>),
    Lasso(LassoWord),
}

impl Word {
    pub fn render(&self, alphabet: &[String]) -> String {
        match self {
            Word::Finite(w) => {
                if w.is_empty() {
                    "ε".to_string()
                } else {
                    let sep = if alphabet.iter().all(|l| l.chars().count() == 1) {
                        ""
                    } else {
                        " "
                    };
                    w.iter()
                        .map(|&l| alphabet.get(l).map_or("?", |s| s.as_str()))
                        .collect::<Vec<_>>()
                        .join(sep)
                }
            }
            Word::Lasso(l) => l.display(alphabet).to_string(),
        }
    }
}

/// All words of length exactly `len` over `letters` letters, in lexicographic order.
pub fn words_of_length(letters: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if letters == 0 && len > 0 {
        0
    } else {
        letters.checked_pow(len as u32).expect("word space too large")
    };
    (0..total).map(move |mut code| {
        let mut w = vec![0; len];
        for slot in w.iter_mut().rev() {
            *slot = code % letters;
            code /= letters;
        }
        w
    })
}

/// All words of length at most `max_len`, shortest first.
pub fn words_up_to(letters: usize, max_len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=max_len).flat_map(move |len| words_of_length(letters, len))
}

/// All lassos with `|prefix| + |period| ≤ bound`, ordered by total length, then
/// prefix length, then content.
pub fn lassos_up_to(letters: usize, bound: usize) -> impl Iterator<Item = LassoWord> {
    (1..=bound).flat_map(move |total| {
        (0..total).flat_map(move |plen| {
            words_of_length(letters, total).map(move |w| {
                let (prefix, period) = w.split_at(plen);
                LassoWord {
                    prefix: prefix.to_vec(),
                    period: period.to_vec(),
                }
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn parse_single_char_lasso() {
        let w = LassoWord::parse("ab(ba)", &ab()).unwrap();
        assert_eq!(w.prefix, vec![0, 1]);
        assert_eq!(w.period, vec![1, 0]);
        assert_eq!(w.display(&ab()).to_string(), "ab(ba)");
    }

    #[test]
    fn parse_multi_char_lasso() {
        let alpha: Vec<String> = ["a", "a1", "a2"].iter().map(|s| s.to_string()).collect();
        let w = LassoWord::parse("a a1 (a2)", &alpha).unwrap();
        assert_eq!(w, LassoWord::new(vec![0, 1], vec![2]));
        let greedy = LassoWord::parse("aa1(a2a)", &alpha).unwrap();
        assert_eq!(greedy, LassoWord::new(vec![0, 1], vec![2, 0]));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(LassoWord::parse("ab", &ab()).is_err());
        assert!(LassoWord::parse("a()", &ab()).is_err());
        assert!(matches!(
            LassoWord::parse("(c)", &ab()),
            Err(Error::UnknownLetter(_))
        ));
    }

    #[test]
    fn lasso_enumeration_order_and_count() {
        let all: Vec<_> = lassos_up_to(2, 3).collect();
        // sum over total length t of t * 2^t
        assert_eq!(all.len(), 2 + 2 * 4 + 3 * 8);
        assert_eq!(all[0], LassoWord::new(vec![], vec![0]));
        assert_eq!(all[1], LassoWord::new(vec![], vec![1]));
        assert_eq!(all[2], LassoWord::new(vec![], vec![0, 0]));
        assert_eq!(all[6], LassoWord::new(vec![0], vec![0]));
    }

    #[test]
    fn rotation_preserves_letters() {
        let w = LassoWord::new(vec![0], vec![0, 1, 1]);
        let r = w.rotated(1);
        for i in 0..20 {
            assert_eq!(w.letter_at(i), r.letter_at(i));
            assert_eq!(w.letter_at(i), w.unrolled().letter_at(i));
        }
    }
}
