use std::fmt;
use std::ops::Mul;

use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{FernError, Result};
use crate::exactlin::{RMatrix, Rational};

/// An element of the symmetric group `S_n`.
///
/// Stored 0-based; the public surface (one-line notation, JSON, cycle
/// notation) is 1-based. Composition is composition of functions:
/// `(u * w)(i) = u(w(i))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// From one-line notation with 1-based images, e.g. `[2, 1, 3]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(FernError::Validation(format!("{images:?} is not a permutation of 1..={n}")));
            }
            seen[x - 1] = true;
            zero_based.push(x - 1);
        }
        Ok(Permutation { images: zero_based })
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &x)| i == x)
        });
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// The simple transposition `s_k = (k k+1)`, `1 <= k < n`.
    pub fn simple(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(FernError::Domain(format!("no simple reflection s_{k} in S_{n}")));
        }
        let mut p = Self::identity(n);
        p.images.swap(k - 1, k);
        Ok(p)
    }

    /// Parses cycle notation such as `"(1 4)(2 3)"`; `"()"`, `"id"` or an
    /// empty string give the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let t = text.trim();
        let mut images: Vec<usize> = (0..n).collect();
        if t.is_empty() || t == "id" || t == "e" {
            return Ok(Permutation { images });
        }
        let bad = |msg: &str| FernError::Parse(format!("bad cycle notation {text:?}: {msg}"));
        let mut seen = vec![false; n];
        let mut rest = t;
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = open.find(')').ok_or_else(|| bad("missing ')'"))?;
            let body = &open[..close];
            let entries = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad("non-integer entry")))
                .collect::<Result<Vec<_>>>()?;
            for (k, &a) in entries.iter().enumerate() {
                if a == 0 || a > n {
                    return Err(bad("entry out of range"));
                }
                if seen[a - 1] {
                    return Err(bad("cycles are not disjoint"));
                }
                seen[a - 1] = true;
                let b = entries[(k + 1) % entries.len()];
                images[a - 1] = b - 1;
            }
            rest = open[close + 1..].trim_start();
        }
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `w(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(FernError::Domain(format!(
                "cannot compose permutations of sizes {} and {}",
                self.n(),
                other.n()
            )));
        }
        Ok(Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() })
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.n();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Disjoint cycles in 1-based labels, fixed points included, each cycle
    /// starting from its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Cycle notation without fixed points; the identity renders as `"()"`.
    pub fn cycle_notation(&self) -> String {
        let parts: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let items: Vec<String> = c.iter().map(usize::to_string).collect();
                format!("({})", items.join(" "))
            })
            .collect();
        if parts.is_empty() {
            "()".to_string()
        } else {
            parts.concat()
        }
    }

    /// Permutation matrix `P_w` with `P_w e_i = e_{w(i)}`, so that
    /// `P_u P_w = P_{uw}` and the columns of `P_w` span the flag `w·E`.
    pub fn matrix(&self) -> RMatrix {
        let n = self.n();
        let mut m = RMatrix::zeros(n, n);
        for (i, &x) in self.images.iter().enumerate() {
            m.set(x, i, Rational::one());
        }
        m
    }

    /// Recovers a permutation from a permutation matrix.
    pub fn from_matrix(m: &RMatrix) -> Result<Self> {
        let n = m.rows();
        if !m.is_square() {
            return Err(FernError::Dimension { expected: n, found: m.cols() });
        }
        let mut images = Vec::with_capacity(n);
        for c in 0..n {
            let col = m.column(c);
            let ones: Vec<usize> = (0..n).filter(|&r| col[r].is_one()).collect();
            let nonzero = col.iter().filter(|x| !num_traits::Zero::is_zero(*x)).count();
            if ones.len() != 1 || nonzero != 1 {
                return Err(FernError::Validation("not a permutation matrix".into()));
            }
            images.push(ones[0] + 1);
        }
        Self::from_one_line(&images)
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (0..n).collect();
        let mut out = vec![Permutation { images: cur.clone() }];
        loop {
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Permutation { images: cur.clone() });
        }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on size mismatch; use [`Permutation::compose`] for a checked
    /// product.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("permutation sizes differ")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.one_line().iter().map(usize::to_string).collect();
        write!(f, "[{}] {}", items.join(","), self.cycle_notation())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::from_one_line(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_line_validation() {
        assert!(Permutation::from_one_line(&[2, 1, 3]).is_ok());
        assert!(Permutation::from_one_line(&[2, 2, 3]).is_err());
        assert!(Permutation::from_one_line(&[0, 1]).is_err());
        assert!(Permutation::from_one_line(&[1, 4, 2]).is_err());
    }

    #[test]
    fn composition_is_function_composition() {
        let u = Permutation::from_one_line(&[2, 3, 1]).unwrap();
        let w = Permutation::from_one_line(&[1, 3, 2]).unwrap();
        let uw = &u * &w;
        for i in 1..=3 {
            assert_eq!(uw.image(i), u.image(w.image(i)));
        }
        assert_eq!(u.matrix().mul(&w.matrix()).unwrap(), uw.matrix());
        assert!((&u * &u.inverse()).is_identity());
    }

    #[test]
    fn cycle_notation_round_trip() {
        let p = Permutation::parse_cycles(4, "(1 4)(2 3)").unwrap();
        assert_eq!(p.one_line(), vec![4, 3, 2, 1]);
        assert_eq!(p.cycle_notation(), "(1 4)(2 3)");
        let c = Permutation::parse_cycles(3, "(3 2 1)").unwrap();
        assert_eq!(c.one_line(), vec![3, 1, 2]);
        assert_eq!(Permutation::parse_cycles(3, "()").unwrap(), Permutation::identity(3));
        assert!(Permutation::parse_cycles(3, "(1 2)(2 3)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 5)").is_err());
        assert!(Permutation::parse_cycles(3, "1 2").is_err());
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let all = Permutation::all(3);
        let lines: Vec<Vec<usize>> = all.iter().map(Permutation::one_line).collect();
        assert_eq!(
            lines,
            vec![vec![1, 2, 3], vec![1, 3, 2], vec![2, 1, 3], vec![2, 3, 1], vec![3, 1, 2], vec![3, 2, 1]]
        );
        assert_eq!(Permutation::all(5).len(), 120);
        assert_eq!(Permutation::all(1).len(), 1);
    }

    #[test]
    fn matrix_round_trip() {
        let p = Permutation::from_one_line(&[3, 1, 4, 2]).unwrap();
        assert_eq!(Permutation::from_matrix(&p.matrix()).unwrap(), p);
        assert!(Permutation::from_matrix(&RMatrix::from_ints(&[[1, 1], [0, 1]])).is_err());
    }

    #[test]
    fn json_is_one_based() {
        let p = Permutation::from_one_line(&[2, 1, 3]).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[2,1,3]");
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    }
}
