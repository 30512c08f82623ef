//! Permutations of puncture labels and a deterministic Schreier–Sims engine.
//!
//! Labels are 1-based at the API boundary (`1..=n`), 0-based internally.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::params::Parity;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("point {0} appears more than once")]
    RepeatedPoint(usize),
    #[error("point {point} is outside 1..={degree}")]
    OutOfRange { point: usize, degree: usize },
    #[error("permutations act on different degrees ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("cannot parse cycle notation at byte {offset}: {reason}")]
    Parse { offset: usize, reason: &'static str },
    #[error("{parity} lemma requires an {parity} puncture count, got n = {n}")]
    ParityMismatch { n: usize, parity: Parity },
    #[error("the puncture count must be at least 1")]
    EmptyDegree,
}

/// A bijection of `{1, …, n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// `images[i-1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &p in images {
            if p == 0 || p > n {
                return Err(PermError::OutOfRange { point: p, degree: n });
            }
            if core::mem::replace(&mut seen[p - 1], true) {
                return Err(PermError::RepeatedPoint(p));
            }
            out.push(p - 1);
        }
        Ok(Self { images: out })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Result<Self, PermError> {
        let images: Vec<usize> = (1..=n).map(f).collect();
        Self::from_images(&images)
    }

    /// The permutation with exactly the given cycles; unlisted points are fixed.
    pub fn from_cycles<C: AsRef<[usize]>>(cycles: &[C], n: usize) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for &p in cycle {
                if p == 0 || p > n {
                    return Err(PermError::OutOfRange { point: p, degree: n });
                }
                if core::mem::replace(&mut used[p - 1], true) {
                    return Err(PermError::RepeatedPoint(p));
                }
            }
            for (idx, &p) in cycle.iter().enumerate() {
                let next = cycle[(idx + 1) % cycle.len()];
                images[p - 1] = next - 1;
            }
        }
        Ok(Self { images })
    }

    /// Parses cycle notation such as `"(1 5)(2 4)"` or `"(1,5)(2,4)"`.
    /// `"()"` and the empty string denote the identity.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self, PermError> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            match bytes[i] {
                b' ' | b'\t' | b'\n' => i += 1,
                b'(' => {
                    let close = text[i..].find(')').map(|j| i + j).ok_or(PermError::Parse {
                        offset: i,
                        reason: "unclosed '('",
                    })?;
                    let mut cycle = Vec::new();
                    let mut offset = i + 1;
                    for token in text[i + 1..close].split(|c: char| c == ',' || c.is_whitespace()) {
                        if !token.is_empty() {
                            let p = token.parse::<usize>().map_err(|_| PermError::Parse {
                                offset,
                                reason: "expected a positive integer",
                            })?;
                            cycle.push(p);
                        }
                        offset += token.len() + 1;
                    }
                    if !cycle.is_empty() {
                        cycles.push(cycle);
                    }
                    i = close + 1;
                }
                _ => {
                    return Err(PermError::Parse {
                        offset: i,
                        reason: "expected '('",
                    })
                }
            }
        }
        Self::from_cycles(&cycles, n)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based label `point`.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] + 1
    }

    pub(crate) fn apply0(&self, point: usize) -> usize {
        self.images[point]
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|p| p + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    fn compose_unchecked(&self, other: &Self) -> Self {
        Self {
            images: other.images.iter().map(|&p| self.images[p]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p] = i;
        }
        Self { images: inv }
    }

    /// Nontrivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }

    pub fn to_cycle_string(&self) -> String {
        use core::fmt::Write;
        let cycles = self.cycles();
        if cycles.is_empty() {
            return String::from("()");
        }
        let mut s = String::new();
        for cycle in cycles {
            s.push('(');
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    s.push(' ');
                }
                let _ = write!(s, "{p}");
            }
            s.push(')');
        }
        s
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self.to_cycle_string())
    }
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    /// `transversal[p]` maps the base point to `p`, if `p` is in the basic orbit.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize, n: usize) -> Self {
        let mut level = Self {
            base,
            gens: Vec::new(),
            transversal: vec![None; n],
            orbit: Vec::new(),
        };
        level.rebuild(n);
        level
    }

    fn rebuild(&mut self, n: usize) {
        self.transversal = vec![None; n];
        self.transversal[self.base] = Some(Permutation::identity(n));
        self.orbit = vec![self.base];
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for s in &self.gens {
                let q = s.apply0(p);
                if self.transversal[q].is_none() {
                    let u = s.compose_unchecked(self.transversal[p].as_ref().expect("orbit point"));
                    self.transversal[q] = Some(u);
                    self.orbit.push(q);
                }
            }
        }
    }
}

/// A base and strong generating set.
#[derive(Clone, Debug)]
pub struct Bsgs {
    degree: usize,
    levels: Vec<Level>,
}

impl Bsgs {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Base points, 1-based.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base + 1).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in &self.levels {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Group order, or `None` on `u128` overflow (only possible past degree 34).
    pub fn order(&self) -> Option<u128> {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    /// Exact membership test.
    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (residue, _) = strip(&self.levels, 0, p.clone());
        residue.is_identity()
    }
}

/// Sifts `h` through `levels[from..]`. Returns the residue and the index of
/// the level where sifting stopped (`levels.len()` if it passed every level).
fn strip(levels: &[Level], from: usize, mut h: Permutation) -> (Permutation, usize) {
    for (idx, level) in levels.iter().enumerate().skip(from) {
        let p = h.apply0(level.base);
        match &level.transversal[p] {
            Some(u) => h = u.inverse().compose_unchecked(&h),
            None => return (h, idx),
        }
    }
    (h, levels.len())
}

fn first_moved(p: &Permutation) -> Option<usize> {
    (0..p.degree()).find(|&i| p.apply0(i) != i)
}

/// Deterministic Schreier–Sims.
pub fn schreier_sims(degree: usize, gens: &[Permutation]) -> Result<Bsgs, PermError> {
    for g in gens {
        if g.degree() != degree {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
    }
    let mut levels: Vec<Level> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_identity()) {
        if !levels.iter().any(|l| g.apply0(l.base) != l.base) {
            let b = first_moved(g).expect("non-identity");
            levels.push(Level::new(b, degree));
        }
        levels[0].gens.push(g.clone());
    }
    if let Some(first) = levels.first_mut() {
        first.rebuild(degree);
    }
    // Level i generators must fix base points 0..i; a generator whose first
    // moved base point is at index j belongs to levels 0..=j.
    for i in 1..levels.len() {
        let prefix: Vec<usize> = levels[..i].iter().map(|l| l.base).collect();
        let gens: Vec<Permutation> = levels[0]
            .gens
            .iter()
            .filter(|g| prefix.iter().all(|&b| g.apply0(b) == b))
            .cloned()
            .collect();
        levels[i].gens = gens;
        levels[i].rebuild(degree);
    }

    let mut i = levels.len();
    while i > 0 {
        let level_idx = i - 1;
        let mut restarted = false;
        'schreier: for oi in 0..levels[level_idx].orbit.len() {
            let p = levels[level_idx].orbit[oi];
            for gi in 0..levels[level_idx].gens.len() {
                let level = &levels[level_idx];
                let s = &level.gens[gi];
                let u_p = level.transversal[p].as_ref().expect("orbit point");
                let q = s.apply0(p);
                let u_q = level.transversal[q].as_ref().expect("orbit is closed");
                let schreier_gen = u_q.inverse().compose_unchecked(&s.compose_unchecked(u_p));
                let (h, stop) = strip(&levels, level_idx + 1, schreier_gen);
                if h.is_identity() {
                    continue;
                }
                if stop == levels.len() {
                    let b = first_moved(&h).expect("non-identity residue");
                    levels.push(Level::new(b, degree));
                }
                for level in &mut levels[level_idx + 1..=stop] {
                    level.gens.push(h.clone());
                    level.rebuild(degree);
                }
                i = stop + 1;
                restarted = true;
                break 'schreier;
            }
        }
        if !restarted {
            i -= 1;
        }
    }
    Ok(Bsgs { degree, levels })
}

/// `n!`, or `None` on overflow.
pub fn factorial(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

fn involution_from_pairs(n: usize, pairs: impl Iterator<Item = (usize, usize)>) -> Result<Permutation, PermError> {
    let cycles: Vec<[usize; 2]> = pairs.filter(|(a, b)| a != b).map(|(a, b)| [a, b]).collect();
    Permutation::from_cycles(&cycles, n)
}

/// The three permutations of the terminal `Sym_n` lemma for the given
/// parity, read off the printed cycle formulas (`n = 2l+1` or `n = 2l`).
/// Empty index ranges contribute nothing.
pub fn lemma_generators(n: usize, parity: Parity) -> Result<[Permutation; 3], PermError> {
    if n == 0 {
        return Err(PermError::EmptyDegree);
    }
    if parity.matches(n) {
        let l = n / 2;
        // r1 = (1,n)(2,n-1)…, r2 = (2,n)(3,n-1)…, r3 = (2,n-1)(3,n-2)…
        let (r2_last, r3_last) = match parity {
            Parity::Odd => (l + 1, l),
            Parity::Even => (l, l),
        };
        let r1 = involution_from_pairs(n, (1..=l).map(|i| (i, n + 1 - i)))?;
        let r2 = involution_from_pairs(n, (2..=r2_last).map(|i| (i, n + 2 - i)))?;
        let r3 = involution_from_pairs(n, (2..=r3_last).map(|i| (i, n + 1 - i)))?;
        Ok([r1, r2, r3])
    } else {
        Err(PermError::ParityMismatch { n, parity })
    }
}

/// Whether the lemma's three permutations generate all of `Sym_n`.
pub fn symn_generated(n: usize, parity: Parity) -> Result<bool, PermError> {
    let gens = lemma_generators(n, parity)?;
    let bsgs = schreier_sims(n, &gens)?;
    Ok(bsgs.order() == factorial(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(c: &[&[usize]], n: usize) -> Permutation {
        Permutation::from_cycles(c, n).unwrap()
    }

    #[test]
    fn from_cycles_examples() {
        assert_eq!(cyc(&[&[1, 5], &[2, 4]], 5).images(), vec![5, 4, 3, 2, 1]);
        let empty: [&[usize]; 0] = [];
        assert!(Permutation::from_cycles(&empty, 3).unwrap().is_identity());
        assert_eq!(cyc(&[&[2, 5], &[3, 4]], 5).images(), vec![1, 5, 4, 3, 2]);
    }

    #[test]
    fn from_cycles_rejects_repeats_and_range() {
        assert_eq!(
            Permutation::from_cycles(&[[1, 2], [2, 3]], 3).unwrap_err(),
            PermError::RepeatedPoint(2)
        );
        assert!(matches!(
            Permutation::from_cycles(&[[1, 7]], 3).unwrap_err(),
            PermError::OutOfRange { point: 7, .. }
        ));
    }

    #[test]
    fn cycle_text_round_trip() {
        let p = Permutation::parse_cycles("(1 5)(2 4)", 5).unwrap();
        assert_eq!(p.to_cycle_string(), "(1 5)(2 4)");
        assert_eq!(Permutation::parse_cycles("(1,5)(2,4)", 5).unwrap(), p);
        assert!(Permutation::parse_cycles("()", 4).unwrap().is_identity());
        assert_eq!(Permutation::identity(4).to_cycle_string(), "()");
        assert!(Permutation::parse_cycles("(1 2", 4).is_err());
        assert!(Permutation::parse_cycles("1 2", 4).is_err());
        assert!(Permutation::parse_cycles("(1 x)", 4).is_err());
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let a = cyc(&[&[1, 2]], 3);
        let b = cyc(&[&[2, 3]], 3);
        // (a∘b)(2) = a(3) = 3
        assert_eq!(a.compose(&b).unwrap().apply(2), 3);
        assert!(a.compose(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn schreier_sims_examples() {
        let s5 = schreier_sims(5, &[cyc(&[&[1, 2]], 5), cyc(&[&[1, 2, 3, 4, 5]], 5)]).unwrap();
        assert_eq!(s5.order(), Some(120));
        let trivial = schreier_sims(5, &[Permutation::identity(5)]).unwrap();
        assert_eq!(trivial.order(), Some(1));
        let none = schreier_sims(3, &[]).unwrap();
        assert_eq!(none.order(), Some(1));
        assert!(none.contains(&Permutation::identity(3)));
    }

    #[test]
    fn schreier_sims_subgroup_membership() {
        // The Klein four-group inside Sym_4.
        let v4 = schreier_sims(4, &[cyc(&[&[1, 2], &[3, 4]], 4), cyc(&[&[1, 3], &[2, 4]], 4)]).unwrap();
        assert_eq!(v4.order(), Some(4));
        assert!(v4.contains(&cyc(&[&[1, 4], &[2, 3]], 4)));
        assert!(!v4.contains(&cyc(&[&[1, 2]], 4)));
        // Product of basic orbit lengths equals the order.
        let prod: usize = v4.basic_orbit_lengths().iter().product();
        assert_eq!(Some(prod as u128), v4.order());
        for s in v4.strong_generators() {
            assert!(v4.contains(&s));
        }
    }

    #[test]
    fn lemma_generators_at_five() {
        let [r1, r2, r3] = lemma_generators(5, Parity::Odd).unwrap();
        assert_eq!(r1, cyc(&[&[1, 5], &[2, 4]], 5));
        assert_eq!(r2, cyc(&[&[2, 5], &[3, 4]], 5));
        assert_eq!(r3, cyc(&[&[2, 4]], 5));
    }

    #[test]
    fn lemma_generators_even_small() {
        let [r1, r2, r3] = lemma_generators(2, Parity::Even).unwrap();
        assert_eq!(r1, cyc(&[&[1, 2]], 2));
        assert!(r2.is_identity() && r3.is_identity());
        let [r1, r2, r3] = lemma_generators(6, Parity::Even).unwrap();
        assert_eq!(r1, cyc(&[&[1, 6], &[2, 5], &[3, 4]], 6));
        assert_eq!(r2, cyc(&[&[2, 6], &[3, 5]], 6));
        assert_eq!(r3, cyc(&[&[2, 5], &[3, 4]], 6));
    }

    #[test]
    fn symn_parity_errors() {
        assert!(matches!(symn_generated(4, Parity::Odd), Err(PermError::ParityMismatch { .. })));
        assert!(matches!(symn_generated(0, Parity::Even), Err(PermError::EmptyDegree)));
        assert_eq!(symn_generated(1, Parity::Odd), Ok(true));
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), Some(1));
        assert_eq!(factorial(5), Some(120));
        assert!(factorial(34).is_some());
        assert!(factorial(35).is_none());
    }
}
