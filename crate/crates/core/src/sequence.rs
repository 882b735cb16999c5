//! Packing sequences and classes of packing sequences.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("packing sequence needs at least one term")]
    EmptyPrefix,
    #[error("terms must be positive")]
    NonPositive,
    #[error("terms must be non-decreasing (term {index} drops to {value})")]
    Decreasing { index: usize, value: u32 },
    #[error("cannot parse {0:?}: expected comma-separated positive integers ending in `const` or `inc`")]
    Syntax(String),
    #[error("pattern constraints cannot all hold in a non-decreasing sequence (at position {0})")]
    InfeasiblePattern(usize),
}

/// How terms continue past the explicit prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tail {
    /// `s_i = s_m` for `i > m`.
    Const,
    /// `s_i = s_m + (i - m)` for `i > m`.
    Inc,
}

/// A non-decreasing sequence of positive integers given by a finite prefix
/// and a tail rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PackingSequence {
    prefix: Vec<u32>,
    tail: Tail,
}

impl PackingSequence {
    pub fn new(prefix: Vec<u32>, tail: Tail) -> Result<Self, SequenceError> {
        if prefix.is_empty() {
            return Err(SequenceError::EmptyPrefix);
        }
        if prefix.contains(&0) {
            return Err(SequenceError::NonPositive);
        }
        if let Some(i) = (1..prefix.len()).find(|&i| prefix[i] < prefix[i - 1]) {
            return Err(SequenceError::Decreasing { index: i + 1, value: prefix[i] });
        }
        Ok(PackingSequence { prefix, tail })
    }

    /// `(k, k, k, ...)`, the sequence of k-distance colorings.
    pub fn constant(k: u32) -> Self {
        PackingSequence::new(vec![k], Tail::Const).expect("k must be positive")
    }

    /// `(1, 2, 3, ...)`, the sequence of packing colorings.
    pub fn packing() -> Self {
        PackingSequence::new(vec![1], Tail::Inc).unwrap()
    }

    pub fn prefix(&self) -> &[u32] {
        &self.prefix
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// The term `s_i`, 1-based.
    pub fn s(&self, i: usize) -> u32 {
        assert!(i >= 1, "packing sequences are indexed from 1");
        let m = self.prefix.len();
        if i <= m {
            return self.prefix[i - 1];
        }
        let last = self.prefix[m - 1];
        match self.tail {
            Tail::Const => last,
            Tail::Inc => last.saturating_add((i - m).min(u32::MAX as usize) as u32),
        }
    }

    /// `(s_1, ..., s_k)`.
    pub fn terms(&self, k: usize) -> Vec<u32> {
        (1..=k).map(|i| self.s(i)).collect()
    }
}

/// `s_at` on a sequence.
pub fn s_at(seq: &PackingSequence, i: usize) -> u32 {
    seq.s(i)
}

impl fmt::Display for PackingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.prefix {
            write!(f, "{t},")?;
        }
        match self.tail {
            Tail::Const => write!(f, "const"),
            Tail::Inc => write!(f, "inc"),
        }
    }
}

impl FromStr for PackingSequence {
    type Err = SequenceError;

    /// `"1,3,3,const"`, `"1,inc"`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let syntax = || SequenceError::Syntax(text.to_string());
        let tokens: Vec<&str> = text.split(',').map(str::trim).collect();
        let (last, terms) = tokens.split_last().ok_or_else(syntax)?;
        let tail = match *last {
            "const" => Tail::Const,
            "inc" => Tail::Inc,
            _ => return Err(syntax()),
        };
        let prefix = terms
            .iter()
            .map(|t| t.parse::<u32>().map_err(|_| syntax()))
            .collect::<Result<Vec<_>, _>>()?;
        PackingSequence::new(prefix, tail)
    }
}

impl Serialize for PackingSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constraint {
    Fixed(u32),
    AtLeast(u32),
}

impl Constraint {
    fn admits(self, value: u32) -> bool {
        match self {
            Constraint::Fixed(v) => value == v,
            Constraint::AtLeast(v) => value >= v,
        }
    }

    fn bound(self) -> u32 {
        match self {
            Constraint::Fixed(v) | Constraint::AtLeast(v) => v,
        }
    }
}

/// A class of packing sequences whose first terms are fixed or bounded
/// below, such as `{s_1 = 1, s_2 = 3, s_3 ≥ 4}`. Terms past the last
/// constraint are only required to keep the sequence non-decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequencePattern {
    constraints: Vec<Constraint>,
}

impl SequencePattern {
    pub fn new(constraints: Vec<Constraint>) -> Result<Self, SequenceError> {
        if constraints.is_empty() {
            return Err(SequenceError::EmptyPrefix);
        }
        if constraints.iter().any(|c| c.bound() == 0) {
            return Err(SequenceError::NonPositive);
        }
        let p = SequencePattern { constraints };
        p.minimal_terms()?;
        Ok(p)
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Smallest admissible values position by position.
    fn minimal_terms(&self) -> Result<Vec<u32>, SequenceError> {
        let mut out: Vec<u32> = Vec::with_capacity(self.constraints.len());
        for (i, c) in self.constraints.iter().enumerate() {
            let prev = out.last().copied().unwrap_or(1);
            let value = match *c {
                Constraint::Fixed(v) if v < prev => return Err(SequenceError::InfeasiblePattern(i + 1)),
                Constraint::Fixed(v) => v,
                Constraint::AtLeast(v) => v.max(prev),
            };
            out.push(value);
        }
        // A lower bound may overtake a later fixed value.
        for (i, c) in self.constraints.iter().enumerate() {
            if !c.admits(out[i]) {
                return Err(SequenceError::InfeasiblePattern(i + 1));
            }
        }
        Ok(out)
    }

    /// Membership test on the constrained positions. `depth` is accepted for
    /// symmetry with callers that think in prefix lengths; positions past the
    /// pattern are unconstrained, so any `depth` at or beyond the pattern
    /// length gives the same answer.
    pub fn matches(&self, seq: &PackingSequence, depth: usize) -> bool {
        debug_assert!(depth >= self.constraints.len());
        self.constraints.iter().enumerate().all(|(i, c)| c.admits(seq.s(i + 1)))
    }

    /// The least member (constant tail) and up to three deterministic
    /// perturbations that differ from it within the first `k` positions.
    pub fn representatives(&self, k: usize) -> Result<Vec<PackingSequence>, SequenceError> {
        let base = self.minimal_terms()?;
        let m = base.len();
        let mut out = vec![PackingSequence::new(base.clone(), Tail::Const)?];
        let mut push = |terms: Vec<u32>, tail: Tail| {
            let seq = PackingSequence::new(terms, tail).expect("perturbations stay monotone");
            debug_assert!(self.matches(&seq, m));
            if !out.contains(&seq) {
                out.push(seq);
            }
        };

        // Raise the first lower-bounded term by 3, capped by the next fixed term.
        if let Some(j) = self.constraints.iter().position(|c| matches!(c, Constraint::AtLeast(_))) {
            let cap = self.constraints[j + 1..]
                .iter()
                .find_map(|c| match c {
                    Constraint::Fixed(v) => Some(*v),
                    Constraint::AtLeast(_) => None,
                })
                .unwrap_or(u32::MAX);
            let raised = (base[j] + 3).min(cap);
            if raised > base[j] && j < k {
                let mut terms = base.clone();
                terms[j] = raised;
                for t in terms.iter_mut().skip(j + 1) {
                    *t = (*t).max(raised);
                }
                push(terms, Tail::Const);
            }
        }
        if m < k {
            push(base.clone(), Tail::Inc);
            let mut bumped = base.clone();
            bumped.push(base[m - 1] + 2);
            push(bumped, Tail::Const);
        }
        Ok(out)
    }
}

impl fmt::Display for SequencePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.constraints.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match c {
                Constraint::Fixed(v) => write!(f, "{v}")?,
                Constraint::AtLeast(v) => write!(f, ">={v}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for SequencePattern {
    type Err = SequenceError;

    /// `"1,3,>=4"`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let syntax = || SequenceError::Syntax(text.to_string());
        let constraints = text
            .split(',')
            .map(str::trim)
            .map(|t| match t.strip_prefix(">=") {
                Some(rest) => rest.trim().parse().map(Constraint::AtLeast).map_err(|_| syntax()),
                None => t.parse().map(Constraint::Fixed).map_err(|_| syntax()),
            })
            .collect::<Result<Vec<_>, _>>()?;
        SequencePattern::new(constraints)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> PackingSequence {
        s.parse().unwrap()
    }

    fn pat(s: &str) -> SequencePattern {
        s.parse().unwrap()
    }

    #[test]
    fn term_access() {
        assert_eq!(s_at(&seq("1,inc"), 5), 5);
        assert_eq!(s_at(&seq("2,2,2,const"), 9), 2);
        assert_eq!(s_at(&seq("1,3,const"), 2), 3);
        assert_eq!(seq("2,3,11,inc").terms(5), vec![2, 3, 11, 12, 13]);
        assert_eq!(PackingSequence::packing(), seq("1,inc"));
        assert_eq!(PackingSequence::constant(3).terms(4), vec![3, 3, 3, 3]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("1,2".parse::<PackingSequence>(), Err(SequenceError::Syntax(_))));
        assert!(matches!("const".parse::<PackingSequence>(), Err(SequenceError::EmptyPrefix)));
        assert!(matches!("0,const".parse::<PackingSequence>(), Err(SequenceError::NonPositive)));
        assert_eq!(
            "3,2,const".parse::<PackingSequence>(),
            Err(SequenceError::Decreasing { index: 2, value: 2 })
        );
        assert!(matches!("1,x,inc".parse::<PackingSequence>(), Err(SequenceError::Syntax(_))));
    }

    #[test]
    fn display_round_trips() {
        for s in ["1,3,3,const", "1,inc", "2,3,11,inc"] {
            assert_eq!(seq(s).to_string(), s);
        }
        assert_eq!(pat("1,3,>=4").to_string(), "1,3,>=4");
    }

    #[test]
    fn membership() {
        assert!(pat("1,1").matches(&seq("1,1,2,inc"), 2));
        assert!(pat("2,>=5").matches(&seq("2,5,const"), 2));
        assert!(!pat("1,3,3").matches(&seq("1,inc"), 3));
        assert!(pat(">=3").matches(&seq("4,inc"), 1));
    }

    #[test]
    fn infeasible_patterns() {
        assert_eq!("2,1".parse::<SequencePattern>(), Err(SequenceError::InfeasiblePattern(2)));
        assert_eq!(">=4,3".parse::<SequencePattern>(), Err(SequenceError::InfeasiblePattern(2)));
    }

    #[test]
    fn representative_sets() {
        let reps = pat("2,2,2").representatives(4).unwrap();
        assert_eq!(reps[0], seq("2,2,2,const"));
        let reps = pat("1,3,>=4").representatives(4).unwrap();
        assert!(reps.contains(&seq("1,3,4,const")));
        assert!(reps.contains(&seq("1,3,7,const")));
        let reps = pat("1,>=2,3").representatives(3).unwrap();
        assert!(reps.contains(&seq("1,2,3,const")));
        assert!(reps.contains(&seq("1,3,3,const")));
        let p = pat("1,>=2,3");
        for k in 1..6 {
            let reps = p.representatives(k).unwrap();
            assert!(!reps.is_empty() && reps.len() <= 4);
            assert!(reps.iter().all(|s| p.matches(s, 3)));
        }
    }
}
