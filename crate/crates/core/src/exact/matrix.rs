//! Dense exact matrices over cyclotomic fields and Gaussian elimination.

use super::cyclo::CycloNum;

/// Dense matrix with CycloNum entries, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<CycloNum>,
}

/// Result of solving A x = b over the field.
#[derive(Debug, Clone)]
pub enum LinearSolution {
    Inconsistent,
    Solution {
        particular: Vec<CycloNum>,
        kernel: Vec<Vec<CycloNum>>,
    },
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![CycloNum::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, CycloNum::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycloNum>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        ExactMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNum {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycloNum) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CycloNum] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut m = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = &(a * b) + out.get(i, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[CycloNum]) -> Vec<CycloNum> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = CycloNum::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += &(a * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // find a pivot row
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.entries
                        .swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv().expect("pivot nonzero");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, c).is_zero() {
                    let factor = self.get(i, c).clone();
                    for j in c..self.cols {
                        let v = self.get(i, j) - &(&factor * self.get(r, j));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the null space of self.
    pub fn kernel(&self) -> Vec<Vec<CycloNum>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![CycloNum::zero(); self.cols];
            v[free] = CycloNum::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }
}

/// Solve A x = b exactly by Gaussian elimination over the field; returns a
/// particular solution and a full kernel basis, or Inconsistent.
pub fn solve_linear(a: &ExactMatrix, b: &[CycloNum]) -> LinearSolution {
    assert_eq!(a.rows, b.len(), "b length must equal A.rows");
    let mut aug = ExactMatrix::zero(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, a.cols, b[i].clone());
    }
    let pivots = aug.rref();
    if pivots.last() == Some(&a.cols) {
        return LinearSolution::Inconsistent;
    }
    let mut particular = vec![CycloNum::zero(); a.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        particular[pc] = aug.get(r, a.cols).clone();
    }
    let kernel = a.kernel();
    LinearSolution::Solution { particular, kernel }
}

impl serde::Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(k: i64) -> CycloNum {
        CycloNum::from_int(k)
    }

    #[test]
    fn identity_solve() {
        let a = ExactMatrix::identity(2);
        let b = vec![c(1), CycloNum::zeta(4)];
        match solve_linear(&a, &b) {
            LinearSolution::Solution { particular, kernel } => {
                assert_eq!(particular, b);
                assert!(kernel.is_empty());
            }
            _ => panic!("expected solution"),
        }
    }

    #[test]
    fn zero_matrix_kernel() {
        let a = ExactMatrix::zero(2, 2);
        let b = vec![c(0), c(0)];
        match solve_linear(&a, &b) {
            LinearSolution::Solution { kernel, .. } => assert_eq!(kernel.len(), 2),
            _ => panic!("expected solution"),
        }
    }

    #[test]
    fn inconsistent_system() {
        let a = ExactMatrix::from_rows(vec![vec![c(1), c(1)], vec![c(2), c(2)]]);
        let b = vec![c(1), c(3)];
        assert!(matches!(solve_linear(&a, &b), LinearSolution::Inconsistent));
    }

    #[test]
    fn solution_and_kernel_verify() {
        // rank-1 2x3 system with cyclotomic entries
        let z = CycloNum::zeta(3);
        let a = ExactMatrix::from_rows(vec![
            vec![c(1), z.clone(), c(2)],
            vec![c(2), &z + &z, c(4)],
        ]);
        let b = vec![z.clone(), &z + &z];
        match solve_linear(&a, &b) {
            LinearSolution::Solution { particular, kernel } => {
                assert_eq!(a.mul_vec(&particular), b);
                assert_eq!(kernel.len(), 2);
                for k in &kernel {
                    assert!(a.mul_vec(k).iter().all(|x| x.is_zero()));
                }
            }
            _ => panic!("expected solution"),
        }
    }
}
