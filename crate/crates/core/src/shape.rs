//! Block index families: explicit finite lists and free-abelian lattices.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A block index: a named block of a finite family, or a lattice point of a
/// free abelian group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockIndex {
    Named(String),
    Lattice(Vec<i64>),
}

impl BlockIndex {
    pub fn named(s: impl Into<String>) -> BlockIndex {
        BlockIndex::Named(s.into())
    }

    pub fn lattice(v: impl Into<Vec<i64>>) -> BlockIndex {
        BlockIndex::Lattice(v.into())
    }

    /// Convenience for rank-one lattices.
    pub fn int(n: i64) -> BlockIndex {
        BlockIndex::Lattice(vec![n])
    }

    pub fn as_lattice(&self) -> Option<&[i64]> {
        match self {
            BlockIndex::Lattice(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for BlockIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockIndex::Named(s) => write!(f, "{s}"),
            BlockIndex::Lattice(v) => {
                if v.len() == 1 {
                    write!(f, "{}", v[0])
                } else {
                    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    write!(f, "({})", parts.join(","))
                }
            }
        }
    }
}

/// The index family of a block algebra together with its dimension rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockShape {
    /// Explicit ordered list of (index, dimension).
    Finite(Vec<(BlockIndex, usize)>),
    /// The lattice Z^rank with one-dimensional blocks.
    Lattice { rank: usize },
}

impl BlockShape {
    pub fn is_finite(&self) -> bool {
        matches!(self, BlockShape::Finite(_))
    }

    pub fn lattice_rank(&self) -> Option<usize> {
        match self {
            BlockShape::Lattice { rank } => Some(*rank),
            _ => None,
        }
    }

    /// Dimension of the block at `index`; errors on indices outside the
    /// family.
    pub fn dim(&self, index: &BlockIndex) -> Result<usize> {
        match (self, index) {
            (BlockShape::Finite(list), _) => list
                .iter()
                .find(|(i, _)| i == index)
                .map(|(_, d)| *d)
                .ok_or_else(|| Error::UnknownIndex(index.to_string())),
            (BlockShape::Lattice { rank }, BlockIndex::Lattice(v)) if v.len() == *rank => Ok(1),
            _ => Err(Error::UnknownIndex(index.to_string())),
        }
    }

    pub fn contains(&self, index: &BlockIndex) -> bool {
        self.dim(index).is_ok()
    }

    /// Deterministic enumeration of the family. Finite shapes iterate in the
    /// declared order; lattices iterate by graded max-norm, lexicographic
    /// within each shell, so any finite window is eventually covered.
    pub fn enumerate(&self) -> Box<dyn Iterator<Item = BlockIndex> + '_> {
        match self {
            BlockShape::Finite(list) => Box::new(list.iter().map(|(i, _)| i.clone())),
            BlockShape::Lattice { rank } => Box::new(LatticeEnum::new(*rank)),
        }
    }

    /// All indices of max-norm at most `radius` (finite shapes return the
    /// whole family).
    pub fn window(&self, radius: u64) -> Window {
        match self {
            BlockShape::Finite(list) => Window::new(list.iter().map(|(i, _)| i.clone())),
            BlockShape::Lattice { rank } => {
                Window::new(lattice_ball(*rank, radius as i64).into_iter().map(BlockIndex::Lattice))
            }
        }
    }

    /// Total dimension of a window: sum of squared block dimensions; this is
    /// the coordinate dimension of the windowed algebra.
    pub fn window_dim(&self, window: &Window) -> Result<usize> {
        let mut total = 0;
        for i in window.iter() {
            let d = self.dim(i)?;
            total += d * d;
        }
        Ok(total)
    }
}

fn lattice_ball(rank: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut points = vec![vec![]];
    for _ in 0..rank {
        let mut next = Vec::new();
        for p in &points {
            for x in -radius..=radius {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        points = next;
    }
    points.sort();
    points
}

struct LatticeEnum {
    rank: usize,
    radius: i64,
    shell: std::vec::IntoIter<Vec<i64>>,
}

impl LatticeEnum {
    fn new(rank: usize) -> LatticeEnum {
        LatticeEnum {
            rank,
            radius: 0,
            shell: vec![vec![0; rank]].into_iter(),
        }
    }
}

impl Iterator for LatticeEnum {
    type Item = BlockIndex;

    fn next(&mut self) -> Option<BlockIndex> {
        loop {
            if let Some(v) = self.shell.next() {
                return Some(BlockIndex::Lattice(v));
            }
            self.radius += 1;
            if self.rank == 0 {
                return None;
            }
            let r = self.radius;
            let mut shell: Vec<Vec<i64>> = lattice_ball(self.rank, r)
                .into_iter()
                .filter(|p| p.iter().map(|x| x.abs()).max().unwrap_or(0) == r)
                .collect();
            // absolute values first, nonnegative before negative: 0, 1, -1,
            // 2, -2, ... on the line
            shell.sort_by_key(|v| {
                (
                    v.iter().map(|x| x.abs()).collect::<Vec<_>>(),
                    v.iter().map(|x| i64::from(*x < 0)).collect::<Vec<_>>(),
                )
            });
            self.shell = shell.into_iter();
        }
    }
}

/// A finite probe window of block indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window(BTreeSet<BlockIndex>);

impl Window {
    pub fn new(indices: impl IntoIterator<Item = BlockIndex>) -> Window {
        Window(indices.into_iter().collect())
    }

    pub fn empty() -> Window {
        Window(BTreeSet::new())
    }

    pub fn singleton(i: BlockIndex) -> Window {
        Window([i].into_iter().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: &BlockIndex) -> bool {
        self.0.contains(i)
    }

    pub fn insert(&mut self, i: BlockIndex) -> bool {
        self.0.insert(i)
    }

    pub fn iter(&self) -> impl Iterator<Item = &BlockIndex> {
        self.0.iter()
    }

    pub fn union(&self, other: &Window) -> Window {
        Window(self.0.union(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &Window) -> Window {
        Window(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn is_subset(&self, other: &Window) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromIterator<BlockIndex> for Window {
    fn from_iter<T: IntoIterator<Item = BlockIndex>>(iter: T) -> Window {
        Window::new(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_enumeration_is_graded_and_deterministic() {
        let shape = BlockShape::Lattice { rank: 1 };
        let first: Vec<BlockIndex> = shape.enumerate().take(5).collect();
        assert_eq!(
            first,
            vec![
                BlockIndex::int(0),
                BlockIndex::int(1),
                BlockIndex::int(-1),
                BlockIndex::int(2),
                BlockIndex::int(-2),
            ]
        );
        let shape2 = BlockShape::Lattice { rank: 2 };
        let count_r1: usize = shape2
            .enumerate()
            .take_while(|i| {
                i.as_lattice()
                    .unwrap()
                    .iter()
                    .map(|x| x.abs())
                    .max()
                    .unwrap()
                    <= 1
            })
            .count();
        assert_eq!(count_r1, 9);
    }

    #[test]
    fn windows_and_dims() {
        let shape = BlockShape::Lattice { rank: 2 };
        let w = shape.window(1);
        assert_eq!(w.len(), 9);
        assert_eq!(shape.window_dim(&w).unwrap(), 9);

        let finite = BlockShape::Finite(vec![
            (BlockIndex::named("triv"), 1),
            (BlockIndex::named("sgn"), 1),
            (BlockIndex::named("std"), 2),
        ]);
        assert_eq!(finite.dim(&BlockIndex::named("std")).unwrap(), 2);
        assert!(finite.dim(&BlockIndex::named("missing")).is_err());
        assert_eq!(finite.window_dim(&finite.window(0)).unwrap(), 6);
    }
}
