use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A finite set `0..size` with one binary relation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Structure {
    rows: Vec<Vec<bool>>,
}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Structure({}; {:?})", self.size(), self.pairs())
    }
}

impl Structure {
    pub fn empty() -> Structure {
        Structure::default()
    }

    pub fn from_fn(size: usize, rel: impl Fn(usize, usize) -> bool) -> Structure {
        Structure {
            rows: (0..size)
                .map(|i| (0..size).map(|j| rel(i, j)).collect())
                .collect(),
        }
    }

    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Structure {
        let mut s = Structure::from_fn(size, |_, _| false);
        for &(i, j) in pairs {
            s.rows[i][j] = true;
        }
        s
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Structure {
        Structure::from_fn(n, |i, j| i < j)
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rel(&self, i: usize, j: usize) -> bool {
        self.rows[i][j]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.rows[i][j])
            .collect()
    }

    /// Induced substructure on `elems`, relabelled `0..elems.len()` in the
    /// given order.
    pub fn restrict(&self, elems: &[usize]) -> Structure {
        Structure::from_fn(elems.len(), |i, j| self.rows[elems[i]][elems[j]])
    }

    /// Adds one element with relations `out[i] = rel(new, i)`,
    /// `inn[i] = rel(i, new)` and `own = rel(new, new)`.
    pub fn push(&mut self, out: &[bool], inn: &[bool], own: bool) {
        let n = self.size();
        assert!(out.len() == n && inn.len() == n);
        for (row, &b) in self.rows.iter_mut().zip(inn) {
            row.push(b);
        }
        let mut row = out.to_vec();
        row.push(own);
        self.rows.push(row);
    }

    /// `map` is injective and preserves and reflects the relation.
    pub fn is_embedding_into(&self, other: &Structure, map: &[usize]) -> bool {
        if map.len() != self.size() || map.iter().any(|&y| y >= other.size()) {
            return false;
        }
        let mut seen = vec![false; other.size()];
        for &y in map {
            if std::mem::replace(&mut seen[y], true) {
                return false;
            }
        }
        (0..self.size()).all(|i| (0..self.size()).all(|j| self.rel(i, j) == other.rel(map[i], map[j])))
    }

    /// Relabelling by a permutation: element `i` becomes `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Structure {
        let mut inv = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        Structure::from_fn(self.size(), |i, j| self.rows[inv[i]][inv[j]])
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    size: usize,
    relation: Vec<(usize, usize)>,
}

impl Serialize for Structure {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire {
            size: self.size(),
            relation: self.pairs(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Structure {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        if let Some(&(i, j)) = w.relation.iter().find(|&&(i, j)| i >= w.size || j >= w.size) {
            return Err(serde::de::Error::custom(format!(
                "pair ({i}, {j}) outside carrier of size {}",
                w.size
            )));
        }
        Ok(Structure::from_pairs(w.size, &w.relation))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_and_restrict() {
        let mut s = Structure::chain(2);
        s.push(&[true, true], &[false, false], false);
        assert_eq!(s.size(), 3);
        // new element 2 sits below 0 and 1
        assert!(s.rel(2, 0) && !s.rel(0, 2));
        assert_eq!(s.restrict(&[2, 0, 1]), Structure::chain(3));
    }

    #[test]
    fn embeddings() {
        let c3 = Structure::chain(3);
        let c2 = Structure::chain(2);
        assert!(c2.is_embedding_into(&c3, &[0, 2]));
        assert!(!c2.is_embedding_into(&c3, &[2, 0]));
        assert!(!c2.is_embedding_into(&c3, &[1, 1]));
    }

    #[test]
    fn permute_round_trip() {
        let s = Structure::from_pairs(3, &[(0, 1), (1, 2)]);
        let p = s.permute(&[2, 0, 1]);
        assert!(s.is_embedding_into(&p, &[2, 0, 1]));
    }
}
