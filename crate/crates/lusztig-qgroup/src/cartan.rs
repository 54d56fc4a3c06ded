//! Simply-laced Cartan matrices (types A, D, E) and the small named cases
//! used throughout the verification suites.

use crate::error::{Error, Result};

/// A symmetric Cartan matrix with `a_ii = 2` and `a_ij` in `{0, -1}` off the
/// diagonal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartanMatrix {
    a: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self> {
        let n = a.len();
        if n == 0 {
            return Err(Error::InvalidArgument("empty Cartan matrix".into()));
        }
        for (i, row) in a.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidArgument("Cartan matrix is not square".into()));
            }
            if row[i] != 2 {
                return Err(Error::InvalidArgument(format!(
                    "diagonal entry a[{0}][{0}] = {1}, expected 2",
                    i, row[i]
                )));
            }
            for j in 0..n {
                if i != j {
                    if row[j] != 0 && row[j] != -1 {
                        return Err(Error::InvalidArgument(format!(
                            "off-diagonal entry a[{}][{}] = {} not in {{0, -1}}",
                            i, j, row[j]
                        )));
                    }
                    if row[j] != a[j][i] {
                        return Err(Error::InvalidArgument(format!(
                            "matrix not symmetric at ({}, {})",
                            i, j
                        )));
                    }
                }
            }
        }
        Ok(CartanMatrix { a })
    }

    /// Rank 1 (a single vertex).
    pub fn a1() -> Self {
        CartanMatrix { a: vec![vec![2]] }
    }

    /// Two disconnected vertices.
    pub fn a1_x_a1() -> Self {
        CartanMatrix { a: vec![vec![2, 0], vec![0, 2]] }
    }

    /// Two joined vertices.
    pub fn a2() -> Self {
        CartanMatrix { a: vec![vec![2, -1], vec![-1, 2]] }
    }

    /// The path on three vertices (used only to exercise the rank >= 3
    /// diagnostics).
    pub fn a3() -> Self {
        CartanMatrix { a: vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]] }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "A1" => Ok(Self::a1()),
            "A1xA1" => Ok(Self::a1_x_a1()),
            "A2" => Ok(Self::a2()),
            "A3" => Ok(Self::a3()),
            other => Err(Error::InvalidArgument(format!(
                "unknown Cartan type {:?} (expected A1, A1xA1, A2 or A3)",
                other
            ))),
        }
    }

    /// Parse a matrix from text: one row per line, whitespace-separated
    /// integer entries (comments start with `#`).
    pub fn from_rows_text(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row: Result<Vec<i64>> = line
                .split_whitespace()
                .map(|x| {
                    x.parse::<i64>().map_err(|_| {
                        Error::InvalidArgument(format!("bad matrix entry {:?}", x))
                    })
                })
                .collect();
            rows.push(row?);
        }
        Self::new(rows)
    }

    /// A named type, or the path of a matrix file.
    pub fn from_name_or_file(spec: &str) -> Result<Self> {
        match Self::from_name(spec) {
            Ok(m) => Ok(m),
            Err(name_err) => match std::fs::read_to_string(spec) {
                Ok(text) => Self::from_rows_text(&text),
                Err(_) => Err(name_err),
            },
        }
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    /// Whether the Dynkin graph is connected.
    pub fn is_connected(&self) -> bool {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut queue = vec![0usize];
        seen[0] = true;
        while let Some(i) = queue.pop() {
            for j in 0..n {
                if !seen[j] && self.a[i][j] == -1 {
                    seen[j] = true;
                    queue.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_matrices_validate() {
        for c in
            [CartanMatrix::a1(), CartanMatrix::a1_x_a1(), CartanMatrix::a2(), CartanMatrix::a3()]
        {
            CartanMatrix::new(c.a.clone()).unwrap();
        }
        assert!(CartanMatrix::a2().is_connected());
        assert!(!CartanMatrix::a1_x_a1().is_connected());
    }

    #[test]
    fn parses_matrix_text() {
        let m = CartanMatrix::from_rows_text("# a comment\n2 -1\n-1 2\n").unwrap();
        assert_eq!(m, CartanMatrix::a2());
        assert!(CartanMatrix::from_rows_text("2 x\n").is_err());
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(CartanMatrix::new(vec![vec![1]]).is_err());
        assert!(CartanMatrix::new(vec![vec![2, -1], vec![0, 2]]).is_err());
        assert!(CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]).is_err());
    }
}
