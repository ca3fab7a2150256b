use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A chain of points in the poset `r × s`. Maximal paths (shuffles) start at
/// `(0, 0)`, end at `(r, s)` and move one coordinate by one at each step.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePath {
    pub r: usize,
    pub s: usize,
    pub points: Vec<(usize, usize)>,
}

impl LatticePath {
    pub fn new(r: usize, s: usize, points: Vec<(usize, usize)>) -> Result<Self> {
        let ok = points.iter().all(|&(i, j)| i <= r && j <= s)
            && points.windows(2).all(|w| w[0] != w[1] && w[0].0 <= w[1].0 && w[0].1 <= w[1].1);
        if !ok {
            return Err(Error::Precondition("points do not form a strictly increasing chain".into()));
        }
        Ok(Self { r, s, points })
    }

    pub fn is_maximal(&self) -> bool {
        self.points.len() == self.r + self.s + 1
            && self.points.first() == Some(&(0, 0))
            && self.points.windows(2).all(|w| w[1].0 + w[1].1 == w[0].0 + w[0].1 + 1)
    }

    /// `i_0, ..., i_n`.
    pub fn i_sequence(&self) -> Vec<usize> {
        self.points.iter().map(|p| p.0).collect()
    }

    /// Whether step `t` (from point `t` to `t + 1`) moves the first
    /// coordinate.
    pub fn is_i_step(&self, t: usize) -> bool {
        self.points[t + 1].0 > self.points[t].0
    }

    /// The path through every point but the `t`-th.
    pub fn face(&self, t: usize) -> LatticePath {
        let mut points = self.points.clone();
        points.remove(t);
        Self { r: self.r, s: self.s, points }
    }

    /// Exchanges the two steps `k` and `k + 1`, which must differ.
    pub fn swap_corner(&self, k: usize) -> LatticePath {
        assert!(self.is_i_step(k) != self.is_i_step(k + 1), "steps {k} and {} are parallel", k + 1);
        let (i, j) = self.points[k];
        let mut points = self.points.clone();
        points[k + 1] = if self.is_i_step(k) { (i, j + 1) } else { (i + 1, j) };
        Self { r: self.r, s: self.s, points }
    }
}

/// All maximal paths from `(0, 0)` to `(r, s)`, in increasing lexicographic
/// order of their `i`-sequences.
pub fn shuffles(r: usize, s: usize) -> Vec<LatticePath> {
    let mut out = Vec::new();
    let mut points = vec![(0, 0)];
    extend(r, s, &mut points, &mut out);
    out
}

fn extend(r: usize, s: usize, points: &mut Vec<(usize, usize)>, out: &mut Vec<LatticePath>) {
    let (i, j) = *points.last().expect("paths start at the origin");
    if (i, j) == (r, s) {
        out.push(LatticePath { r, s, points: points.clone() });
        return;
    }
    // a step in j keeps the i-sequence smaller
    if j < s {
        points.push((i, j + 1));
        extend(r, s, points, out);
        points.pop();
    }
    if i < r {
        points.push((i + 1, j));
        extend(r, s, points, out);
        points.pop();
    }
}

/// `σ <= γ` when `i_t <= i'_t` at every position.
pub fn shuffle_leq(sigma: &LatticePath, gamma: &LatticePath) -> Result<bool> {
    if (sigma.r, sigma.s) != (gamma.r, gamma.s) || !sigma.is_maximal() || !gamma.is_maximal() {
        return Err(Error::Precondition("shuffles of different shapes are not comparable".into()));
    }
    Ok(sigma.points.iter().zip(&gamma.points).all(|(a, b)| a.0 <= b.0))
}

/// The path that goes up in `j` first, the least shuffle.
pub fn minimal_shuffle(r: usize, s: usize) -> LatticePath {
    let mut points: Vec<(usize, usize)> = (0..=s).map(|j| (0, j)).collect();
    points.extend((1..=r).map(|i| (i, s)));
    LatticePath { r, s, points }
}

/// The path that moves in `i` first, the greatest shuffle.
pub fn maximal_shuffle(r: usize, s: usize) -> LatticePath {
    let mut points: Vec<(usize, usize)> = (0..=r).map(|i| (i, 0)).collect();
    points.extend((1..=s).map(|j| (r, j)));
    LatticePath { r, s, points }
}

/// First `k` where the path turns `(i, j) -> (i, j+1) -> (i+1, j+1)`. Such a
/// corner exists exactly when the shuffle is not maximal.
pub fn find_descending_segment(sigma: &LatticePath) -> Option<usize> {
    (0..sigma.points.len().saturating_sub(2)).find(|&k| !sigma.is_i_step(k) && sigma.is_i_step(k + 1))
}

/// First `k` where the path turns `(i, j) -> (i+1, j) -> (i+1, j+1)`. Such a
/// corner exists exactly when the shuffle is not minimal.
pub fn find_ascending_segment(sigma: &LatticePath) -> Option<usize> {
    (0..sigma.points.len().saturating_sub(2)).find(|&k| sigma.is_i_step(k) && !sigma.is_i_step(k + 1))
}

/// Both coordinate projections of the chain are onto.
pub fn is_interior(points: &[(usize, usize)], r: usize, s: usize) -> bool {
    (0..=r).all(|i| points.iter().any(|p| p.0 == i)) && (0..=s).all(|j| points.iter().any(|p| p.1 == j))
}
