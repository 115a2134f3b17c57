use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A subgroup as the sorted list of its element indices.
pub type Subgroup = Vec<usize>;

/// A finite p-group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    p: u8,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

impl GroupTable {
    /// Validates the table: latin square, identity, inverses, associativity,
    /// and order a power of `p`.
    pub fn new(p: u8, table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        crate::exactmath::Field::prime(p as u32)?;
        let mut m = n;
        while m % p as usize == 0 {
            m /= p as usize;
        }
        if m != 1 {
            return Err(Error::InvalidGroup(format!("order {n} is not a power of {p}")));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidGroup("table is not square".into()));
            }
            if row.iter().collect::<BTreeSet<_>>().len() != n {
                return Err(Error::InvalidGroup("table is not a latin square".into()));
            }
        }
        for j in 0..n {
            if (0..n).map(|i| table[i][j]).collect::<BTreeSet<_>>().len() != n {
                return Err(Error::InvalidGroup("table is not a latin square".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        let inverse: Vec<usize> = (0..n)
            .map(|g| (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvalidGroup("missing inverse".into()))?;
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| format!("g{i}")).collect());
        if labels.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: labels.len() });
        }
        Ok(GroupTable { p, table, identity, inverse, labels })
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    /// `(g,h) = g^{-1} h^{-1} g h`.
    pub fn comm(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(g), self.inv(h)), self.mul(g, h))
    }

    pub fn whole(&self) -> Subgroup {
        (0..self.order()).collect()
    }

    pub fn trivial(&self) -> Subgroup {
        vec![self.identity]
    }

    /// The subgroup generated by `gens`, by closure under multiplication.
    pub fn generate(&self, gens: impl IntoIterator<Item = usize>) -> Subgroup {
        let mut inside = vec![false; self.order()];
        inside[self.identity] = true;
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut queue = vec![self.identity];
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push(y);
                }
            }
        }
        (0..self.order()).filter(|&i| inside[i]).collect()
    }

    pub fn join(&self, a: &[usize], b: &[usize]) -> Subgroup {
        self.generate(a.iter().chain(b).copied())
    }

    /// `⟨(h,g) : h ∈ H, g ∈ G⟩`.
    pub fn commutator_with_whole(&self, h: &[usize]) -> Subgroup {
        let gens: BTreeSet<usize> = h.iter().flat_map(|&x| (0..self.order()).map(move |g| (x, g))).map(|(x, g)| self.comm(x, g)).collect();
        self.generate(gens)
    }

    /// `H^k = ⟨h^k : h ∈ H⟩`.
    pub fn power_subgroup(&self, h: &[usize], k: u64) -> Subgroup {
        let gens: BTreeSet<usize> = h.iter().map(|&x| self.pow(x, k)).collect();
        self.generate(gens)
    }

    pub fn contains(sub: &[usize], g: usize) -> bool {
        sub.binary_search(&g).is_ok()
    }

    pub fn is_subset(a: &[usize], b: &[usize]) -> bool {
        a.iter().all(|&x| Self::contains(b, x))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_tables() {
        assert!(GroupTable::new(2, vec![vec![0, 1], vec![1, 1]], None).is_err());
        assert!(GroupTable::new(2, vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]], None).is_err());
        assert!(GroupTable::new(3, vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]], None).is_ok());
    }
}
