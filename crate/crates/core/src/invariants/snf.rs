//! Smith normal form over the integers with overflow-checked `i128` arithmetic.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::InvariantError;

/// A finitely generated abelian group `Z^rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with
/// `2 ≤ d₁ | d₂ | … | d_k`. Structural equality is isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    #[serde(rename = "rank")]
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z^rank ⊕ Z/n`, reading `Z/0` as `Z` and dropping `Z/1`.
    pub fn free_plus_cyclic(rank: usize, n: u64) -> Self {
        match n {
            0 => FinAbGroup::free(rank + 1),
            1 => FinAbGroup::free(rank),
            _ => FinAbGroup {
                free_rank: rank,
                torsion: vec![n],
            },
        }
    }

    /// Canonical group from the diagonal of any diagonalized presentation
    /// on `generators` generators (entries may be zero, one, or unsorted).
    pub fn from_diagonal(generators: usize, diagonal: &[u64]) -> Self {
        let mut free_rank = generators - diagonal.len();
        let mut primes: Vec<(u64, u32)> = Vec::new();
        let mut cyclic = Vec::new();
        for &d in diagonal {
            match d {
                0 => free_rank += 1,
                1 => {}
                d => cyclic.push(d),
            }
        }
        // Re-derive invariant factors through the prime-power decomposition
        // so that unsorted or non-chain inputs still come out canonical.
        for mut d in cyclic {
            let mut p = 2;
            while p * p <= d {
                let mut k = 0;
                while d % p == 0 {
                    d /= p;
                    k += 1;
                }
                if k > 0 {
                    primes.push((p, k));
                }
                p += 1;
            }
            if d > 1 {
                primes.push((d, 1));
            }
        }
        primes.sort_unstable();
        let mut by_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        for (p, k) in primes {
            match by_prime.last_mut() {
                Some((q, ks)) if *q == p => ks.push(k),
                _ => by_prime.push((p, vec![k])),
            }
        }
        let len = by_prime.iter().map(|(_, ks)| ks.len()).max().unwrap_or(0);
        let mut torsion = vec![1u64; len];
        for (p, mut ks) in by_prime {
            ks.sort_unstable_by(|a, b| b.cmp(a));
            for (i, k) in ks.into_iter().enumerate() {
                torsion[len - 1 - i] *= p.pow(k);
            }
        }
        FinAbGroup { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn overflow() -> InvariantError {
    InvariantError::Overflow
}

/// Nonzero diagonal entries (absolute values, divisibility chain) of the
/// Smith normal form of `m`.
pub fn smith_diagonal(m: &[Vec<i64>]) -> Result<Vec<u64>, InvariantError> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != cols) {
        return Err(InvariantError::Shape("ragged matrix".into()));
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // Pivot: smallest nonzero entry of the trailing block.
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| (a[i][j].unsigned_abs(), i, j))
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(a[t][t]);
                    for j in t..cols {
                        let sub = q.checked_mul(a[t][j]).ok_or_else(overflow)?;
                        a[i][j] = a[i][j].checked_sub(sub).ok_or_else(overflow)?;
                    }
                    if a[i][t] != 0 {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let sub = q.checked_mul(row[t]).ok_or_else(overflow)?;
                        row[j] = row[j].checked_sub(sub).ok_or_else(overflow)?;
                    }
                    if a[t][j] != 0 {
                        clean = false;
                    }
                }
            }
            if !clean {
                // A smaller remainder appeared in the pivot row or column.
                let (bi, bj) = (t..rows)
                    .map(|i| (i, t))
                    .chain((t + 1..cols).map(|j| (t, j)))
                    .filter(|&(i, j)| a[i][j] != 0)
                    .min_by_key(|&(i, j)| a[i][j].unsigned_abs())
                    .expect("pivot itself is nonzero");
                a.swap(t, bi);
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                continue;
            }
            // Enforce the divisibility chain.
            let p = a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] = a[t][j].checked_add(a[i][j]).ok_or_else(overflow)?;
                    }
                }
                None => break,
            }
        }
        let d = a[t][t].unsigned_abs();
        diag.push(u64::try_from(d).map_err(|_| overflow())?);
    }
    Ok(diag)
}

/// `Z^generators / ⟨relations⟩`, one relation per row.
pub fn cokernel(generators: usize, relations: &[Vec<i64>]) -> Result<FinAbGroup, InvariantError> {
    if relations.iter().any(|r| r.len() != generators) {
        return Err(InvariantError::Shape(format!(
            "relations must have {generators} entries"
        )));
    }
    let diag = smith_diagonal(relations)?;
    Ok(FinAbGroup::from_diagonal(generators, &diag))
}

/// Rank of an integer matrix.
pub fn rank(m: &[Vec<i64>]) -> Result<usize, InvariantError> {
    Ok(smith_diagonal(m)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_examples() {
        assert_eq!(
            smith_diagonal(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap(),
            vec![2, 6, 12]
        );
        assert_eq!(smith_diagonal(&[vec![2, 0], vec![0, 3]]).unwrap(), vec![1, 6]);
        assert_eq!(smith_diagonal(&[vec![0, 0], vec![0, 0]]).unwrap(), Vec::<u64>::new());
        assert!(smith_diagonal(&[]).unwrap().is_empty());
    }

    #[test]
    fn cokernels() {
        assert_eq!(cokernel(1, &[vec![2]]).unwrap(), FinAbGroup::free_plus_cyclic(0, 2));
        assert_eq!(cokernel(2, &[]).unwrap(), FinAbGroup::free(2));
        assert_eq!(cokernel(2, &[vec![1, 1]]).unwrap(), FinAbGroup::free(1));
        assert!(cokernel(2, &[vec![1]]).is_err());
    }

    #[test]
    fn canonical_from_diagonal() {
        let g = FinAbGroup::from_diagonal(4, &[6, 4, 0]);
        assert_eq!(g.free_rank, 2);
        assert_eq!(g.torsion, vec![2, 12]);
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/12");
        assert_eq!(FinAbGroup::trivial().to_string(), "0");
        assert_eq!(FinAbGroup::free_plus_cyclic(2, 0), FinAbGroup::free(3));
    }

    #[test]
    fn overflow_is_reported() {
        let big = i64::MAX;
        let m = vec![vec![big, big - 1], vec![big - 1, big - 2]];
        // Either exact or a clean overflow error; never a panic.
        let _ = smith_diagonal(&m);
    }
}
