//! Automorphisms of `Z^d` given by unimodular integer matrices, and the
//! absence of periodic points of small period.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Result, WanderingError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixSystem {
    pub name: String,
    rows: Vec<Vec<i64>>,
}

impl MatrixSystem {
    /// Requires a square matrix with determinant ±1.
    pub fn new(name: impl Into<String>, rows: Vec<Vec<i64>>) -> Result<Self> {
        let d = rows.len();
        if d == 0 || rows.iter().any(|r| r.len() != d) {
            return Err(WanderingError::BadMatrix("matrix must be square and non-empty".into()));
        }
        let m = to_big(&rows);
        let det = determinant(&m);
        if det.abs() != BigInt::one() {
            return Err(WanderingError::BadMatrix(format!("determinant {det} is not ±1")));
        }
        Ok(Self { name: name.into(), rows })
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Moduli of the eigenvalues, for 2×2 matrices.
    pub fn eigen_moduli(&self) -> Option<[f64; 2]> {
        if self.dim() != 2 {
            return None;
        }
        let [a, b] = [self.rows[0][0] as f64, self.rows[0][1] as f64];
        let [c, d] = [self.rows[1][0] as f64, self.rows[1][1] as f64];
        let (tr, det) = (a + d, a * d - b * c);
        let disc = tr * tr - 4.0 * det;
        Some(if disc >= 0.0 {
            let s = disc.sqrt();
            [((tr + s) / 2.0).abs(), ((tr - s) / 2.0).abs()]
        } else {
            let m = det.abs().sqrt();
            [m, m]
        })
    }

    /// Renders as `2 1; 1 1`.
    pub fn render(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// Parses `2 1; 1 1`.
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let rows = text
            .split(';')
            .map(|r| {
                r.split_whitespace()
                    .map(|v| {
                        v.parse::<i64>()
                            .map_err(|_| WanderingError::BadMatrix(format!("bad entry `{v}`")))
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, rows)
    }
}

fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Fraction-free Gaussian elimination.
pub(crate) fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixVerdict {
    /// `det(M^n - I)` for `n = 1..=n_max`.
    pub dets: Vec<BigInt>,
    /// The first period with a non-zero fixed vector, if any.
    pub first_periodic: Option<usize>,
    pub eigen_moduli: Option<[f64; 2]>,
}

impl MatrixVerdict {
    /// No non-zero point of period at most `n_max`.
    pub fn holds(&self) -> bool {
        self.first_periodic.is_none()
    }
}

/// `M^n - I` is singular exactly when a non-zero vector has period
/// dividing `n`.
pub fn matrix_no_periodics(m: &MatrixSystem, n_max: usize) -> MatrixVerdict {
    let base = to_big(m.rows());
    let mut power = base.clone();
    let mut dets = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        if n > 1 {
            power = mat_mul(&power, &base);
        }
        let mut shifted = power.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] -= 1;
        }
        dets.push(determinant(&shifted));
    }
    let first_periodic = dets.iter().position(Zero::is_zero).map(|i| i + 1);
    MatrixVerdict {
        dets,
        first_periodic,
        eigen_moduli: m.eigen_moduli(),
    }
}

#[cfg(test)]
mod tests {
    use super::super::z2_system;
    use super::*;

    fn lucas(n: usize) -> BigInt {
        let (mut a, mut b) = (BigInt::from(2), BigInt::from(1));
        for _ in 0..n {
            let c = &a + &b;
            a = std::mem::replace(&mut b, c);
        }
        a
    }

    #[test]
    fn cat_map_determinants_follow_lucas_numbers() {
        let v = matrix_no_periodics(&z2_system(), 50);
        assert!(v.holds());
        for (i, d) in v.dets.iter().enumerate() {
            let n = i + 1;
            assert_eq!(*d, BigInt::from(2) - lucas(2 * n), "n = {n}");
        }
        let [big, small] = v.eigen_moduli.unwrap();
        assert!((big * small - 1.0).abs() < 1e-12 && big > 1.0);
    }

    #[test]
    fn finite_order_matrices_have_periodic_points() {
        let rot = MatrixSystem::new("rot", vec![vec![0, -1], vec![1, 0]]).unwrap();
        assert_eq!(matrix_no_periodics(&rot, 10).first_periodic, Some(4));
        let swap = MatrixSystem::parse("swap", "0 1; 1 0").unwrap();
        assert_eq!(matrix_no_periodics(&swap, 10).first_periodic, Some(1));
        let shear = MatrixSystem::parse("shear", "1 1; 0 1").unwrap();
        assert_eq!(matrix_no_periodics(&shear, 3).first_periodic, Some(1));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = vec![vec![2, -3, 1], vec![2, 0, -1], vec![1, 4, 5]];
        assert_eq!(determinant(&to_big(&m)), BigInt::from(49));
        let m = vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]];
        assert_eq!(determinant(&to_big(&m)), BigInt::from(-1));
        assert!(MatrixSystem::parse("bad", "2 0; 0 1").is_err());
        assert!(MatrixSystem::parse("bad", "1 0 0; 0 1").is_err());
        assert_eq!(z2_system().render(), "2 1; 1 1");
    }
}
