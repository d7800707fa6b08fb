//! Letters, words and closed paths of the doubled cyclic quiver.

use std::fmt;

use rand::Rng;

use crate::error::{QuiverError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    X,
    Y,
}

/// `X_t : t+1 → t` or `Y_t : t → t+1`, indices mod `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub kind: Kind,
    pub t: usize,
}

impl Letter {
    pub fn x(t: usize) -> Self {
        Letter { kind: Kind::X, t }
    }

    pub fn y(t: usize) -> Self {
        Letter { kind: Kind::Y, t }
    }

    pub fn source(&self, m: usize) -> usize {
        match self.kind {
            Kind::X => (self.t + 1) % m,
            Kind::Y => self.t,
        }
    }

    pub fn target(&self, m: usize) -> usize {
        match self.kind {
            Kind::X => self.t,
            Kind::Y => (self.t + 1) % m,
        }
    }

    /// The letter leaving `v` in the given direction.
    pub fn from_vertex(kind: Kind, v: usize, m: usize) -> Self {
        match kind {
            Kind::X => Letter::x((v + m - 1) % m),
            Kind::Y => Letter::y(v),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::X => write!(f, "X{}", self.t),
            Kind::Y => write!(f, "Y{}", self.t),
        }
    }
}

/// Vertices visited by a word, read right to left: entry `s` is the vertex
/// reached after the rightmost `s` letters, starting from `start`.
pub fn walk(word: &[Letter], start: usize, m: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(word.len() + 1);
    let mut v = start;
    out.push(v);
    for a in word.iter().rev() {
        v = a.target(m);
        out.push(v);
    }
    out
}

/// Source of the rightmost letter, or `None` for the empty word.
pub fn start_of(word: &[Letter], m: usize) -> Option<usize> {
    word.last().map(|a| a.source(m))
}

/// Letters from a lattice path: `p` steps down from 0 followed by `q` steps up.
pub fn sorted_word(q: usize, p: usize, m: usize) -> Vec<Letter> {
    let mut applied = Vec::with_capacity(p + q);
    let mut v = 0;
    for _ in 0..p {
        let a = Letter::from_vertex(Kind::X, v, m);
        v = a.target(m);
        applied.push(a);
    }
    for _ in 0..q {
        let a = Letter::from_vertex(Kind::Y, v, m);
        v = a.target(m);
        applied.push(a);
    }
    applied.reverse();
    applied
}

/// A closed path at vertex 0; `letters[0]` is applied last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathWord {
    m: usize,
    letters: Vec<Letter>,
}

impl PathWord {
    pub fn new(m: usize, letters: Vec<Letter>) -> Result<Self> {
        validate(m, &letters)?;
        Ok(PathWord { m, letters })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `A^i C_k B^j` as a word.
    pub fn normal(m: usize, i: usize, j: usize, k: usize) -> Self {
        PathWord { m, letters: sorted_word(m * i + k, m * j + k, m) }
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn validate(m: usize, letters: &[Letter]) -> Result<()> {
    if m == 0 {
        return Err(QuiverError::Path("m must be positive".into()));
    }
    if letters.is_empty() {
        return Err(QuiverError::Path("empty path".into()));
    }
    if let Some((pos, a)) = letters.iter().enumerate().find(|(_, a)| a.t >= m) {
        return Err(QuiverError::Path(format!("token {pos} ({a}) has index out of range for m = {m}")));
    }
    for pos in 0..letters.len() - 1 {
        let (later, earlier) = (letters[pos], letters[pos + 1]);
        if earlier.target(m) != later.source(m) {
            return Err(QuiverError::Path(format!(
                "not composable at token {pos}: {later} starts at {} but {earlier} ends at {}",
                later.source(m),
                earlier.target(m)
            )));
        }
    }
    let first = letters[letters.len() - 1].source(m);
    let last = letters[0].target(m);
    if first != 0 || last != 0 {
        return Err(QuiverError::Path(format!("not closed at 0: starts at {first}, ends at {last}")));
    }
    Ok(())
}

/// Parses `"Y1 X1 Y1 Y0"`; the leftmost token is applied last.
pub fn parse_path(text: &str, m: usize) -> Result<PathWord> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(QuiverError::Path("empty path".into()));
    }
    let mut letters = Vec::with_capacity(tokens.len());
    for (pos, tok) in tokens.iter().enumerate() {
        let (head, tail) = tok.split_at(tok.chars().next().map_or(0, char::len_utf8));
        let kind = match head {
            "X" | "x" => Kind::X,
            "Y" | "y" => Kind::Y,
            _ => return Err(QuiverError::Path(format!("unknown token {tok:?} at position {pos}"))),
        };
        let t: usize =
            tail.parse().map_err(|_| QuiverError::Path(format!("unknown token {tok:?} at position {pos}")))?;
        letters.push(Letter { kind, t });
    }
    PathWord::new(m, letters)
}

/// Uniform random walk from 0 of random length in `1..=max_len`, retried
/// until it closes at 0.
pub fn random_closed_path<G: Rng + ?Sized>(rng: &mut G, m: usize, max_len: usize) -> PathWord {
    assert!(max_len >= 2 || (m == 1 && max_len >= 1), "no closed path of length ≤ {max_len}");
    loop {
        let len = rng.random_range(1..=max_len);
        let mut v = 0;
        let mut applied = Vec::with_capacity(len);
        for _ in 0..len {
            let kind = if rng.random_bool(0.5) { Kind::X } else { Kind::Y };
            let a = Letter::from_vertex(kind, v, m);
            v = a.target(m);
            applied.push(a);
        }
        if v == 0 {
            applied.reverse();
            return PathWord { m, letters: applied };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_c1_times_a() {
        let p = parse_path("Y1 X1 Y1 Y0", 2).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(walk(p.letters(), 0, 2), vec![0, 1, 0, 1, 0]);
    }

    #[test]
    fn parse_errors_in_order() {
        let msg = |s: &str, m| parse_path(s, m).unwrap_err().to_string();
        assert!(msg("", 2).contains("empty"));
        assert!(msg("  ", 2).contains("empty"));
        assert!(msg("Z1 Y0", 2).contains("unknown"));
        assert!(msg("Xa", 2).contains("unknown"));
        assert!(msg("X0 Y1", 2).contains("composable"));
        assert!(msg("X0 Y1", 3).contains("composable"));
        assert!(msg("Y0", 3).contains("not closed"));
        assert!(msg("Y5 X5", 3).contains("out of range"));
    }

    #[test]
    fn normal_words() {
        let a = PathWord::normal(3, 1, 0, 0);
        assert_eq!(a.to_string(), "Y2 Y1 Y0");
        let b = PathWord::normal(3, 0, 1, 0);
        assert_eq!(b.to_string(), "X0 X1 X2");
        let c = PathWord::normal(3, 0, 0, 1);
        assert_eq!(c.to_string(), "Y2 X2");
    }

    #[test]
    fn random_paths_are_closed() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for m in 1..4 {
            for _ in 0..50 {
                let p = random_closed_path(&mut rng, m, 10);
                assert!(PathWord::new(m, p.letters().to_vec()).is_ok());
            }
        }
    }
}
