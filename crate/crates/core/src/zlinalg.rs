//! Integer matrices, Smith normal form and homology of integer chain
//! complexes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A dense matrix of arbitrary-precision integers, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of `i64`; all rows must share one length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            for (j, &x) in r.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        Ok(m)
    }

    /// Builds a `rows × cols` matrix from `(row, col, value)` triplets;
    /// repeated positions are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, i64)]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols);
        for &(i, j, x) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::IndexOutOfRange {
                    index: if i >= rows { i } else { j },
                    lo: 0,
                    hi: if i >= rows { rows } else { cols }.saturating_sub(1),
                });
            }
            m[(i, j)] += BigInt::from(x);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Nonzero entries as `(row, col, value)`, row-major.
    pub fn triplets(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = &self[(i, j)];
                if !x.is_zero() {
                    out.push((i, j, x.clone()));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !v[j].is_zero())
                    .map(|j| &self[(i, j)] * &v[j])
                    .sum()
            })
            .collect())
    }

    /// The submatrix of rows `from..`.
    pub fn rows_from(&self, from: usize) -> Self {
        let rows = self.rows.saturating_sub(from);
        IntMatrix {
            rows,
            cols: self.cols,
            data: self.data[from.min(self.rows) * self.cols..].to_vec(),
        }
    }

    /// Whether all off-diagonal entries vanish.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * a[(n - 1, n - 1)].clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row_dst += q · row_src`.
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let x = &self[(src, j)] * q;
            if !x.is_zero() {
                self[(dst, j)] += x;
            }
        }
    }

    /// `col_dst += q · col_src`.
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let x = &self[(i, src)] * q;
            if !x.is_zero() {
                self[(i, dst)] += x;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let x = -std::mem::take(&mut self[(r, j)]);
            self[(r, j)] = x;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | ⋯`, all `d_i ≥ 0`. `v_inv` is `V⁻¹`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// The nonzero diagonal entries `d_1, …, d_rank`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal().into_iter().take(self.rank).collect()
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_row(dst, src, q);
        self.u.add_row(dst, src, q);
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_col(dst, src, q);
        self.v.add_col(dst, src, q);
        // V' = V·E with E = I + q·e_src·e_dstᵀ, so V'⁻¹ = E⁻¹·V⁻¹.
        self.v_inv.add_row(src, dst, &-q);
    }

    /// Moves the entry of least absolute value among `cells` to `(t, t)`.
    fn bring_min_to_pivot(&mut self, t: usize, cells: impl Iterator<Item = (usize, usize)>) -> bool {
        let best = cells
            .filter(|&(i, j)| !self.a[(i, j)].is_zero())
            .min_by(|&(i1, j1), &(i2, j2)| self.a[(i1, j1)].abs().cmp(&self.a[(i2, j2)].abs()));
        match best {
            Some((i, j)) => {
                self.swap_rows(t, i);
                self.swap_cols(t, j);
                true
            }
            None => false,
        }
    }
}

/// Smith normal form by elementary row and column operations, choosing
/// pivots of least absolute value. Deterministic for a fixed input.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut r = Reducer {
        a: a.clone(),
        u: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut rank = 0;
    for t in 0..m.min(n) {
        let sub = (t..m).flat_map(|i| (t..n).map(move |j| (i, j)));
        if !r.bring_min_to_pivot(t, sub) {
            break;
        }
        loop {
            let p = r.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if r.a[(i, t)].is_zero() {
                    continue;
                }
                let q = &r.a[(i, t)] / &p;
                if !q.is_zero() {
                    r.add_row(i, t, &-q);
                }
                clean &= r.a[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if r.a[(t, j)].is_zero() {
                    continue;
                }
                let q = &r.a[(t, j)] / &p;
                if !q.is_zero() {
                    r.add_col(j, t, &-q);
                }
                clean &= r.a[(t, j)].is_zero();
            }
            if !clean {
                // A remainder smaller than the pivot is left in row or
                // column t; make it the new pivot.
                let cross = (t..m).map(|i| (i, t)).chain((t + 1..n).map(|j| (t, j)));
                r.bring_min_to_pivot(t, cross);
                continue;
            }
            let bad_row = (t + 1..m).find(|&i| (t + 1..n).any(|j| !r.a[(i, j)].is_multiple_of(&p)));
            match bad_row {
                Some(i) => r.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if r.a[(t, t)].is_negative() {
            r.a.negate_row(t);
            r.u.negate_row(t);
        }
        rank += 1;
    }
    SmithForm {
        u: r.u,
        d: r.a,
        v: r.v,
        v_inv: r.v_inv,
        rank,
    }
}

/// Checks the Smith form contract: `U·A·V = D`, `D` diagonal with a
/// divisibility chain of non-negative entries, `|det U| = |det V| = 1` and
/// `V·V⁻¹ = I`. Returns a description of the first violation.
pub fn check_smith_form(a: &IntMatrix, s: &SmithForm) -> std::result::Result<(), String> {
    let uav = s.u.mul(a).and_then(|x| x.mul(&s.v)).map_err(|e| e.to_string())?;
    if uav != s.d {
        return Err("U·A·V differs from D".into());
    }
    if !s.d.is_diagonal() {
        return Err("D is not diagonal".into());
    }
    let diag = s.d.diagonal();
    if diag.iter().any(Signed::is_negative) {
        return Err("negative diagonal entry".into());
    }
    for w in diag.windows(2) {
        let ok = if w[0].is_zero() {
            w[1].is_zero()
        } else {
            w[1].is_multiple_of(&w[0])
        };
        if !ok {
            return Err(format!("divisibility fails: {} does not divide {}", w[0], w[1]));
        }
    }
    for (name, m) in [("U", &s.u), ("V", &s.v)] {
        let det = m.determinant().map_err(|e| e.to_string())?;
        if det.abs() != BigInt::one() {
            return Err(format!("det {name} = {det}"));
        }
    }
    let vv = s.v.mul(&s.v_inv).map_err(|e| e.to_string())?;
    if vv != IntMatrix::identity(s.v.rows()) {
        return Err("V·V⁻¹ is not the identity".into());
    }
    Ok(())
}

/// Coordinates of a homology class: free part and residues modulo the
/// torsion invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl HomologyClass {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }

    /// The free coordinates as machine integers, if they fit.
    pub fn free_i64(&self) -> Option<Vec<i64>> {
        self.free.iter().map(ToPrimitive::to_i64).collect()
    }
}

/// Homology of `C_{d+1} → C_d → C_{d-1}` in degree `d`, together with the
/// projection from cycles to coordinates.
#[derive(Debug, Clone)]
pub struct HomologySummary {
    degree: usize,
    boundary_in: IntMatrix,
    kernel_projection: IntMatrix,
    image_u: IntMatrix,
    image_factors: Vec<BigInt>,
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl HomologySummary {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Invariant factors `> 1` of the torsion subgroup, each dividing the
    /// next.
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Rank of the chain group `C_d`.
    pub fn chain_rank(&self) -> usize {
        self.boundary_in.cols()
    }

    /// Coordinates of the class of a cycle `z ∈ C_d`.
    pub fn coordinates(&self, z: &[BigInt]) -> Result<HomologyClass> {
        if z.len() != self.chain_rank() {
            return Err(Error::DimensionMismatch {
                expected: self.chain_rank(),
                found: z.len(),
            });
        }
        if self.boundary_in.mul_vec(z)?.iter().any(|x| !x.is_zero()) {
            return Err(Error::NotACycle(self.degree));
        }
        let y = self.kernel_projection.mul_vec(z)?;
        let u = self.image_u.mul_vec(&y)?;
        let s = self.image_factors.len();
        let torsion = self
            .image_factors
            .iter()
            .zip(&u)
            .filter(|(d, _)| **d > BigInt::one())
            .map(|(d, x)| x.mod_floor(d))
            .collect();
        Ok(HomologyClass {
            free: u[s..].to_vec(),
            torsion,
        })
    }

    pub fn coordinates_i64(&self, z: &[i64]) -> Result<HomologyClass> {
        let z: Vec<BigInt> = z.iter().map(|&x| BigInt::from(x)).collect();
        self.coordinates(&z)
    }
}

/// Homology in degree `d` from `∂_d : C_d → C_{d-1}` (`boundary_in`) and
/// `∂_{d+1} : C_{d+1} → C_d` (`boundary_out`).
pub fn homology_from_boundaries(
    degree: usize,
    boundary_in: &IntMatrix,
    boundary_out: &IntMatrix,
) -> Result<HomologySummary> {
    if boundary_in.cols() != boundary_out.rows() {
        return Err(Error::DimensionMismatch {
            expected: boundary_in.cols(),
            found: boundary_out.rows(),
        });
    }
    if !boundary_in.mul(boundary_out)?.is_zero() {
        return Err(Error::NotAComplex(degree));
    }
    let s1 = smith_normal_form(boundary_in);
    let kernel_projection = s1.v_inv.rows_from(s1.rank);
    let m = kernel_projection.mul(boundary_out)?;
    let s2 = smith_normal_form(&m);
    let image_factors = s2.invariant_factors();
    let free_rank = kernel_projection.rows() - s2.rank;
    let torsion = image_factors
        .iter()
        .filter(|d| **d > BigInt::one())
        .cloned()
        .collect();
    Ok(HomologySummary {
        degree,
        boundary_in: boundary_in.clone(),
        kernel_projection,
        image_u: s2.u,
        image_factors,
        free_rank,
        torsion,
    })
}
