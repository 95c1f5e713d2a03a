//! Exact linear algebra over arbitrary-precision rationals and integers.
//!
//! Every operation in this crate that touches geometry goes through the types
//! here; no floating point is involved anywhere in a decision.

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision integer scalar.
pub type Int = BigInt;

/// Arbitrary-precision rational scalar. Always stored reduced (gcd of
/// numerator and denominator is 1) with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("zero ray")]
    ZeroRay,
    #[error("not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("empty matrix")]
    EmptyMatrix,
}

pub fn int(x: i64) -> Int {
    Int::from(x)
}

pub fn rat(x: i64) -> Rational {
    Rational::from_integer(Int::from(x))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(Int::from(num), Int::from(den))
}

/// Column vector with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector {
    entries: Vec<Rational>,
}

impl RationalVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RationalVector { entries }
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        RationalVector {
            entries: entries.iter().map(|&x| rat(x)).collect(),
        }
    }

    pub fn from_bigints(entries: &[Int]) -> Self {
        RationalVector {
            entries: entries
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        RationalVector {
            entries: vec![Rational::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &Rational {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        RationalVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        RationalVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        RationalVector {
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalVector {
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn dot(&self, other: &Self) -> Rational {
        assert_eq!(self.dim(), other.dim());
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Clears denominators and divides by the content, i.e. returns the unique
    /// primitive integer vector spanning the same ray with the same direction.
    pub fn to_primitive_ray(&self) -> Result<Vec<Int>, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroRay);
        }
        let mut lcm = Int::one();
        for e in &self.entries {
            lcm = lcm.lcm(e.denom());
        }
        let ints: Vec<Int> = self
            .entries
            .iter()
            .map(|e| e.numer() * (&lcm / e.denom()))
            .collect();
        primitive(&ints)
    }
}

/// Divides an integer vector by the gcd of its entries. The direction is
/// preserved: the sign of the first nonzero entry is unchanged.
pub fn primitive(v: &[Int]) -> Result<Vec<Int>, ExactError> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return Err(ExactError::ZeroRay);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Flips a primitive vector if needed so its first nonzero entry is positive.
/// Both orientations of a line map to the same representative.
pub fn sign_canonical(v: &[Int]) -> Vec<Int> {
    for x in v {
        match x.sign() {
            Sign::Plus => return v.to_vec(),
            Sign::Minus => return v.iter().map(|y| -y).collect(),
            Sign::NoSign => continue,
        }
    }
    v.to_vec()
}

pub fn neg_ints(v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| -x).collect()
}

/// Row-major matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

/// Outcome of solving `A x = b` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Unique(RationalVector),
    Inconsistent,
    Underdetermined,
}

impl RationalMatrix {
    pub fn new(data: Vec<Vec<Rational>>) -> Result<Self, ExactError> {
        if data.is_empty() || data[0].is_empty() {
            return Err(ExactError::EmptyMatrix);
        }
        let cols = data[0].len();
        if data.iter().any(|r| r.len() != cols) {
            return Err(ExactError::DimensionMismatch("ragged rows".into()));
        }
        Ok(RationalMatrix {
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn from_ints(data: &[&[i64]]) -> Self {
        RationalMatrix::new(
            data.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
        .expect("nonempty literal matrix")
    }

    pub fn from_int_rows(rows: &[Vec<Int>]) -> Result<Self, ExactError> {
        RationalMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
                .collect(),
        )
    }

    /// Columns are the given vectors.
    pub fn from_columns(cols: &[RationalVector]) -> Result<Self, ExactError> {
        if cols.is_empty() || cols[0].dim() == 0 {
            return Err(ExactError::EmptyMatrix);
        }
        let dim = cols[0].dim();
        if cols.iter().any(|c| c.dim() != dim) {
            return Err(ExactError::DimensionMismatch("ragged columns".into()));
        }
        let data = (0..dim)
            .map(|i| cols.iter().map(|c| c.entry(i).clone()).collect())
            .collect();
        RationalMatrix::new(data)
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        RationalMatrix::new(data).expect("n >= 1 identity")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn row(&self, i: usize) -> RationalVector {
        RationalVector::new(self.data[i].clone())
    }

    pub fn column(&self, j: usize) -> RationalVector {
        RationalVector::new(self.data.iter().map(|r| r[j].clone()).collect())
    }

    pub fn transpose(&self) -> Self {
        let data = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.data[i][j].clone()).collect())
            .collect();
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        self.zip_entries(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.zip_entries(other, |a, b| a - b)
    }

    fn zip_entries(
        &self,
        other: &Self,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<Self, ExactError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(ExactError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
            .collect();
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Row-major bracket rendering, e.g. [[1, 0], [0, 1]].
    pub fn render(&self) -> String {
        let rows: Vec<String> = self
            .data
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.data[i][j] != self.data[j][i] {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul_vec(&self, v: &RationalVector) -> RationalVector {
        assert_eq!(self.cols, v.dim());
        RationalVector::new(
            self.data
                .iter()
                .map(|r| {
                    r.iter()
                        .zip(v.entries())
                        .map(|(a, b)| a * b)
                        .fold(Rational::zero(), |acc, x| acc + x)
                })
                .collect(),
        )
    }

    pub fn mul_mat(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let data = (0..self.rows)
            .map(|i| {
                (0..other.cols)
                    .map(|j| {
                        (0..self.cols)
                            .map(|k| &self.data[i][k] * &other.data[k][j])
                            .fold(Rational::zero(), |acc, x| acc + x)
                    })
                    .collect()
            })
            .collect();
        RationalMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    /// Determinant by fraction-exact Gaussian elimination. Square input only.
    pub fn det(&self) -> Result<Rational, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::DimensionMismatch(format!(
                "det of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r][col].is_zero());
            let Some(p) = pivot else {
                return Ok(Rational::zero());
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            det *= &m[col][col];
            let inv = m[col][col].clone();
            for r in (col + 1)..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = &m[r][col] / &inv;
                for c in col..n {
                    let sub = &factor * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
        Ok(det)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let mut rank = 0;
        let mut pivot_row = 0;
        for col in 0..self.cols {
            let Some(p) = (pivot_row..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(p, pivot_row);
            let inv = m[pivot_row][col].clone();
            for r in (pivot_row + 1)..self.rows {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = &m[r][col] / &inv;
                for c in col..self.cols {
                    let sub = &factor * &m[pivot_row][c];
                    m[r][c] -= sub;
                }
            }
            rank += 1;
            pivot_row += 1;
            if pivot_row == self.rows {
                break;
            }
        }
        rank
    }

    /// Exact inverse. Errors on non-square, returns None on singular input.
    pub fn inverse(&self) -> Result<Option<RationalMatrix>, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::DimensionMismatch("inverse of non-square".into()));
        }
        let n = self.rows;
        let mut m = self.data.clone();
        let mut inv = RationalMatrix::identity(n).data;
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Ok(None);
            };
            m.swap(p, col);
            inv.swap(p, col);
            let piv = m[col][col].clone();
            for c in 0..n {
                m[col][c] /= &piv;
                inv[col][c] /= &piv;
            }
            for r in 0..n {
                if r == col || m[r][col].is_zero() {
                    continue;
                }
                let factor = m[r][col].clone();
                for c in 0..n {
                    let sub = &factor * &m[col][c];
                    m[r][c] -= sub;
                    let sub = &factor * &inv[col][c];
                    inv[r][c] -= sub;
                }
            }
        }
        Ok(Some(RationalMatrix {
            rows: n,
            cols: n,
            data: inv,
        }))
    }
}

/// Sylvester's criterion: exact positive-definiteness via leading principal
/// minors. Errors on non-square or non-symmetric input.
pub fn is_positive_definite(m: &RationalMatrix) -> Result<bool, ExactError> {
    if !m.is_symmetric() {
        return Err(ExactError::NotSymmetric);
    }
    for k in 1..=m.rows() {
        let sub = RationalMatrix::new(
            (0..k)
                .map(|i| (0..k).map(|j| m.entry(i, j).clone()).collect())
                .collect(),
        )?;
        if sub.det()? <= Rational::zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Solves `A x = b` by exact Gaussian elimination, classifying the solution
/// set as unique, empty, or positive-dimensional.
pub fn solve_linear(a: &RationalMatrix, b: &RationalVector) -> Result<SolveOutcome, ExactError> {
    if a.rows() != b.dim() {
        return Err(ExactError::DimensionMismatch(format!(
            "matrix has {} rows, vector has {} entries",
            a.rows(),
            b.dim()
        )));
    }
    let rows = a.rows();
    let cols = a.cols();
    // Augmented matrix [A | b], reduced to row echelon form.
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut r: Vec<Rational> = (0..cols).map(|j| a.entry(i, j).clone()).collect();
            r.push(b.entry(i).clone());
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(p, pivot_row);
        let piv = m[pivot_row][col].clone();
        for c in col..=cols {
            m[pivot_row][c] /= &piv;
        }
        for r in 0..rows {
            if r == pivot_row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..=cols {
                let sub = &factor * &m[pivot_row][c];
                m[r][c] -= sub;
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    // A zero row with nonzero right-hand side means no solution.
    for r in pivot_row..rows {
        if !m[r][cols].is_zero() {
            return Ok(SolveOutcome::Inconsistent);
        }
    }
    if pivot_cols.len() < cols {
        return Ok(SolveOutcome::Underdetermined);
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &col) in pivot_cols.iter().enumerate() {
        x[col] = m[row][cols].clone();
    }
    Ok(SolveOutcome::Unique(RationalVector::new(x)))
}

/// Smith normal form invariant factors of an integer matrix, padded with
/// zeros to the number of columns. Nonzero factors are positive and listed in
/// divisibility order, so the list describes the cokernel as an abelian group:
/// one cyclic factor Z/d per nonzero d and one Z per trailing zero.
pub fn smith_invariants(matrix: &[Vec<Int>]) -> Result<Vec<Int>, ExactError> {
    if matrix.is_empty() || matrix[0].is_empty() {
        return Err(ExactError::EmptyMatrix);
    }
    let cols = matrix[0].len();
    if matrix.iter().any(|r| r.len() != cols) {
        return Err(ExactError::DimensionMismatch("ragged rows".into()));
    }
    let rows = matrix.len();
    let mut m: Vec<Vec<Int>> = matrix.to_vec();
    let mut invariants = Vec::new();
    let mut top = 0;
    while top < rows && top < cols {
        // Find a nonzero entry to pivot into position (top, top).
        let mut found = None;
        'search: for i in top..rows {
            for j in top..cols {
                if !m[i][j].is_zero() {
                    found = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = found else { break };
        m.swap(top, pi);
        for row in m.iter_mut() {
            row.swap(top, pj);
        }
        // Clear the pivot row and column with exact Euclidean steps; restart
        // whenever a remainder lands in the pivot position.
        loop {
            let mut dirty = false;
            for i in (top + 1)..rows {
                if m[i][top].is_zero() {
                    continue;
                }
                if m[i][top].is_multiple_of(&m[top][top]) {
                    let q = &m[i][top] / &m[top][top];
                    for j in top..cols {
                        let sub = &q * &m[top][j];
                        m[i][j] -= sub;
                    }
                } else {
                    let q = m[i][top].div_floor(&m[top][top]);
                    for j in top..cols {
                        let sub = &q * &m[top][j];
                        m[i][j] -= sub;
                    }
                    m.swap(top, i);
                    dirty = true;
                }
            }
            for j in (top + 1)..cols {
                if m[top][j].is_zero() {
                    continue;
                }
                if m[top][j].is_multiple_of(&m[top][top]) {
                    let q = &m[top][j] / &m[top][top];
                    for i in top..rows {
                        let sub = &q * &m[i][top];
                        m[i][j] -= sub;
                    }
                } else {
                    let q = m[top][j].div_floor(&m[top][top]);
                    for i in top..rows {
                        let sub = &q * &m[i][top];
                        m[i][j] -= sub;
                    }
                    for row in m.iter_mut() {
                        row.swap(top, j);
                    }
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        // Make the pivot divide every remaining entry (invariant factor
        // condition), folding offending entries into the pivot column.
        let mut divides_all = false;
        while !divides_all {
            divides_all = true;
            'outer: for i in (top + 1)..rows {
                for j in (top + 1)..cols {
                    if !m[i][j].is_multiple_of(&m[top][top]) {
                        for col in top..cols {
                            let add = m[i][col].clone();
                            m[top][col] += add;
                        }
                        divides_all = false;
                        break 'outer;
                    }
                }
            }
            if !divides_all {
                // Re-clear the pivot row after the fold.
                loop {
                    let mut dirty = false;
                    for j in (top + 1)..cols {
                        if m[top][j].is_zero() {
                            continue;
                        }
                        if m[top][j].is_multiple_of(&m[top][top]) {
                            let q = &m[top][j] / &m[top][top];
                            for i in top..rows {
                                let sub = &q * &m[i][top];
                                m[i][j] -= sub;
                            }
                        } else {
                            let q = m[top][j].div_floor(&m[top][top]);
                            for i in top..rows {
                                let sub = &q * &m[i][top];
                                m[i][j] -= sub;
                            }
                            for row in m.iter_mut() {
                                row.swap(top, j);
                            }
                            dirty = true;
                        }
                    }
                    for i in (top + 1)..rows {
                        if m[i][top].is_zero() {
                            continue;
                        }
                        if m[i][top].is_multiple_of(&m[top][top]) {
                            let q = &m[i][top] / &m[top][top];
                            for j in top..cols {
                                let sub = &q * &m[top][j];
                                m[i][j] -= sub;
                            }
                        } else {
                            let q = m[i][top].div_floor(&m[top][top]);
                            for j in top..cols {
                                let sub = &q * &m[top][j];
                                m[i][j] -= sub;
                            }
                            m.swap(top, i);
                            dirty = true;
                        }
                    }
                    if !dirty {
                        break;
                    }
                }
            }
        }
        invariants.push(m[top][top].abs());
        top += 1;
    }
    invariants.resize(cols, Int::zero());
    Ok(invariants)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_divides_by_gcd_and_keeps_direction() {
        assert_eq!(
            primitive(&[int(2), int(-4)]).unwrap(),
            vec![int(1), int(-2)]
        );
        assert_eq!(primitive(&[int(0), int(3)]).unwrap(), vec![int(0), int(1)]);
        assert_eq!(
            primitive(&[int(-6), int(-9)]).unwrap(),
            vec![int(-2), int(-3)]
        );
        assert_eq!(primitive(&[int(0), int(0)]), Err(ExactError::ZeroRay));
    }

    #[test]
    fn sign_canonical_picks_positive_leading_entry() {
        assert_eq!(
            sign_canonical(&[int(0), int(-1), int(2)]),
            vec![int(0), int(1), int(-2)]
        );
        assert_eq!(sign_canonical(&[int(1), int(-5)]), vec![int(1), int(-5)]);
    }

    #[test]
    fn positive_definite_by_leading_minors() {
        let m = RationalMatrix::from_ints(&[&[2, 1], &[1, 2]]);
        assert!(is_positive_definite(&m).unwrap());
        let m = RationalMatrix::from_ints(&[&[1, 2], &[2, 1]]);
        assert!(!is_positive_definite(&m).unwrap());
        let m = RationalMatrix::from_ints(&[&[1, 2], &[0, 1]]);
        assert_eq!(is_positive_definite(&m), Err(ExactError::NotSymmetric));
        // Positive semidefinite but singular is rejected.
        let m = RationalMatrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert!(!is_positive_definite(&m).unwrap());
    }

    #[test]
    fn solve_classifies_all_three_outcomes() {
        let a = RationalMatrix::from_ints(&[&[1, 0], &[0, 1]]);
        let b = RationalVector::from_ints(&[3, 4]);
        assert_eq!(
            solve_linear(&a, &b).unwrap(),
            SolveOutcome::Unique(RationalVector::from_ints(&[3, 4]))
        );
        let a = RationalMatrix::from_ints(&[&[1, 1], &[1, 1]]);
        let b = RationalVector::from_ints(&[1, 0]);
        assert_eq!(solve_linear(&a, &b).unwrap(), SolveOutcome::Inconsistent);
        let b = RationalVector::from_ints(&[1, 1]);
        assert_eq!(solve_linear(&a, &b).unwrap(), SolveOutcome::Underdetermined);
    }

    #[test]
    fn solve_with_fractions() {
        let a = RationalMatrix::from_ints(&[&[2, 3], &[1, -1]]);
        let b = RationalVector::from_ints(&[1, 2]);
        let SolveOutcome::Unique(x) = solve_linear(&a, &b).unwrap() else {
            panic!("unique expected");
        };
        assert_eq!(x.entries()[0], ratio(7, 5));
        assert_eq!(x.entries()[1], ratio(-3, 5));
    }

    #[test]
    fn smith_invariants_in_divisibility_order() {
        let m = vec![vec![int(2), int(0)], vec![int(0), int(3)]];
        assert_eq!(smith_invariants(&m).unwrap(), vec![int(1), int(6)]);
        let m = vec![vec![int(0), int(0)]];
        assert_eq!(smith_invariants(&m).unwrap(), vec![int(0), int(0)]);
        // Exponent-sum row of the braid relation in two generators.
        let m = vec![vec![int(1), int(-1)]];
        assert_eq!(smith_invariants(&m).unwrap(), vec![int(1), int(0)]);
        let m = vec![
            vec![int(2), int(4), int(4)],
            vec![int(-6), int(6), int(12)],
            vec![int(10), int(4), int(16)],
        ];
        // Known normal form of this classic example: diag(2, 2, 156).
        assert_eq!(
            smith_invariants(&m).unwrap(),
            vec![int(2), int(2), int(156)]
        );
    }

    #[test]
    fn determinant_and_inverse_are_exact() {
        let m = RationalMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.det().unwrap(), rat(-2));
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(m.mul_mat(&inv), RationalMatrix::identity(2));
        let singular = RationalMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().unwrap().is_none());
        assert_eq!(singular.rank(), 1);
    }
}
