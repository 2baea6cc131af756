use std::fmt;

use crate::{Error, Result};

/// Disjoint nonempty blocks covering the variables `0..n`.
///
/// Blocks are sorted internally and ordered by their smallest variable, so two
/// partitions with the same blocks are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    owner: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::Partition("empty block".into()));
            }
            for &v in b {
                if v >= n {
                    return Err(Error::Partition(format!("variable {v} outside universe of {n}")));
                }
                if owner[v] != usize::MAX {
                    return Err(Error::Partition(format!("variable {v} in two blocks")));
                }
                owner[v] = i;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::Partition(format!("variable {v} not covered")));
        }
        Ok(Partition { blocks, owner })
    }

    pub fn singletons(n: usize) -> Self {
        Partition { blocks: (0..n).map(|v| vec![v]).collect(), owner: (0..n).collect() }
    }

    pub fn unary(n: usize) -> Self {
        if n == 0 {
            return Partition { blocks: vec![], owner: vec![] };
        }
        Partition { blocks: vec![(0..n).collect()], owner: vec![0; n] }
    }

    /// Size of the variable universe.
    pub fn universe(&self) -> usize {
        self.owner.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_binary(&self) -> bool {
        self.blocks.len() == 2
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.owner[v]
    }

    fn same_universe(&self, other: &Partition) -> Result<()> {
        if self.universe() != other.universe() {
            return Err(Error::Partition(format!(
                "universes differ: {} vs {}",
                self.universe(),
                other.universe()
            )));
        }
        Ok(())
    }

    /// Nonempty pairwise intersections of blocks.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.same_universe(other)?;
        let mut cells: std::collections::BTreeMap<(usize, usize), Vec<usize>> = Default::default();
        for v in 0..self.universe() {
            cells.entry((self.owner[v], other.owner[v])).or_default().push(v);
        }
        Partition::new(self.universe(), cells.into_values().collect())
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        self.same_universe(other)?;
        Ok(self.blocks.iter().all(|b| b.iter().all(|&v| other.owner[v] == other.owner[b[0]])))
    }

    /// `⌈log₂ k⌉` binary partitions whose meet is `self`.
    ///
    /// Block `i` (in canonical order) gets index `i` in binary; the `j`-th output
    /// splits by the `j`-th most significant bit, zero side listed first.
    pub fn binary_reduction(&self) -> Result<Vec<Partition>> {
        let k = self.blocks.len();
        if k < 2 {
            return Err(Error::UnaryPartition);
        }
        let bits = usize::BITS - (k - 1).leading_zeros();
        (0..bits)
            .rev()
            .map(|bit| {
                let (mut zero, mut one) = (Vec::new(), Vec::new());
                for (i, b) in self.blocks.iter().enumerate() {
                    if i >> bit & 1 == 0 { &mut zero } else { &mut one }.extend_from_slice(b);
                }
                Partition::new(self.universe(), vec![zero, one])
            })
            .collect()
    }

    /// The partition with blocks `i` and `j` merged.
    pub fn merge(&self, i: usize, j: usize) -> Partition {
        let mut blocks = self.blocks.clone();
        let moved = std::mem::take(&mut blocks[j]);
        blocks[i].extend(moved);
        blocks.retain(|b| !b.is_empty());
        Partition::new(self.universe(), blocks).expect("merging keeps a partition")
    }

    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>, names: Option<&[String]>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{")?;
            for (j, v) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                match names.and_then(|n| n.get(*v)) {
                    Some(name) => write!(f, "{name}")?,
                    None => write!(f, "x{v}")?,
                }
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_overlap_and_gaps() {
        assert!(Partition::new(2, vec![vec![0], vec![0, 1]]).is_err());
        assert!(Partition::new(3, vec![vec![0], vec![1]]).is_err());
        assert!(Partition::new(2, vec![vec![0], vec![], vec![1]]).is_err());
    }

    #[test]
    fn canonical_block_order() {
        let a = Partition::new(3, vec![vec![2, 1], vec![0]]).unwrap();
        let b = Partition::new(3, vec![vec![0], vec![1, 2]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.block(1), &[1, 2]);
    }

    #[test]
    fn meet_of_two_splits() {
        let p1 = Partition::new(3, vec![vec![0], vec![1, 2]]).unwrap();
        let p2 = Partition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        assert_eq!(p1.meet(&p2).unwrap(), Partition::singletons(3));
        assert_eq!(p1.meet(&Partition::unary(3)).unwrap(), p1);
        assert!(p1.meet(&Partition::singletons(4)).is_err());
    }

    #[test]
    fn refinement() {
        let p = Partition::new(2, vec![vec![0, 1]]).unwrap();
        assert!(Partition::singletons(2).refines(&p).unwrap());
        assert!(!p.refines(&Partition::singletons(2)).unwrap());
        assert!(p.refines(&p).unwrap());
    }

    #[test]
    fn two_blocks_reduce_to_themselves() {
        let p = Partition::singletons(2);
        assert_eq!(p.binary_reduction().unwrap(), vec![p]);
        assert_eq!(Partition::unary(3).binary_reduction(), Err(Error::UnaryPartition));
    }

    #[test]
    fn merge_blocks() {
        let p = Partition::singletons(3).merge(0, 2);
        assert_eq!(p, Partition::new(3, vec![vec![0, 2], vec![1]]).unwrap());
    }
}
