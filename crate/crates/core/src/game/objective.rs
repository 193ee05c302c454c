//! Boolean combinations of max-even-parity atoms over color channels.

use std::fmt;

use crate::automaton::Ranks;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Objective {
    /// The largest color seen infinitely often on the channel is even.
    Atom(usize),
    Not(Box<Objective>),
    And(Vec<Objective>),
    Or(Vec<Objective>),
}

impl Objective {
    pub fn not(o: Objective) -> Objective {
        Objective::Not(Box::new(o))
    }

    /// Evaluates on the per-channel maxima of a set of color tuples.
    pub fn eval(&self, maxima: &[u32]) -> bool {
        match self {
            Objective::Atom(c) => maxima[*c].is_multiple_of(2),
            Objective::Not(o) => !o.eval(maxima),
            Objective::And(os) => os.iter().all(|o| o.eval(maxima)),
            Objective::Or(os) => os.iter().any(|o| o.eval(maxima)),
        }
    }

    /// Evaluates on a nonempty set of color tuples.
    pub fn eval_set<'a>(&self, tuples: impl IntoIterator<Item = &'a Ranks>) -> bool {
        let mut it = tuples.into_iter();
        let mut maxima: Ranks = it.next().expect("nonempty tuple set").clone();
        for t in it {
            for (m, &x) in maxima.iter_mut().zip(t.iter()) {
                *m = (*m).max(x);
            }
        }
        self.eval(&maxima)
    }

    /// Largest channel index mentioned.
    pub fn max_channel(&self) -> Option<usize> {
        match self {
            Objective::Atom(c) => Some(*c),
            Objective::Not(o) => o.max_channel(),
            Objective::And(os) | Objective::Or(os) => os.iter().filter_map(|o| o.max_channel()).max(),
        }
    }

    /// Parses prefix notation: `p0`, `(not X)`, `(and X Y ...)`, `(or X Y ...)`.
    pub fn parse(text: &str) -> Result<Objective, String> {
        let spaced = text.replace('(', " ( ").replace(')', " ) ");
        let toks: Vec<&str> = spaced.split_whitespace().collect();
        let mut pos = 0;
        let obj = parse_expr(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(format!("trailing input after objective: `{}`", toks[pos..].join(" ")));
        }
        Ok(obj)
    }
}

fn parse_expr(toks: &[&str], pos: &mut usize) -> Result<Objective, String> {
    let tok = *toks.get(*pos).ok_or("objective ended early")?;
    *pos += 1;
    if let Some(c) = tok.strip_prefix('p') {
        return c
            .parse()
            .map(Objective::Atom)
            .map_err(|_| format!("expected atom `p<channel>`, found `{tok}`"));
    }
    if tok != "(" {
        return Err(format!("expected `(` or `p<channel>`, found `{tok}`"));
    }
    let op = *toks.get(*pos).ok_or("objective ended early")?;
    *pos += 1;
    let mut args = Vec::new();
    while toks.get(*pos) != Some(&")") {
        if *pos >= toks.len() {
            return Err("missing `)` in objective".into());
        }
        args.push(parse_expr(toks, pos)?);
    }
    *pos += 1;
    match (op, args.len()) {
        ("not", 1) => Ok(Objective::not(args.pop().unwrap())),
        ("not", n) => Err(format!("`not` takes one argument, found {n}")),
        ("and", n) if n > 0 => Ok(Objective::And(args)),
        ("or", n) if n > 0 => Ok(Objective::Or(args)),
        _ => Err(format!("expected `not`, `and` or `or` with arguments, found `{op}`")),
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::Atom(c) => write!(f, "p{c}"),
            Objective::Not(o) => write!(f, "(not {o})"),
            Objective::And(os) | Objective::Or(os) => {
                f.write_str(if matches!(self, Objective::And(_)) { "(and" } else { "(or" })?;
                for o in os {
                    write!(f, " {o}")?;
                }
                f.write_str(")")
            }
        }
    }
}
