//! Dense exact linear algebra: matrices, reduced row echelon form, kernels,
//! and canonical subspaces.

use crate::error::{Error, Result};
use crate::field::Field;

/// Dense row-major matrix over a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Output of [`rref_kernel`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrefKernel<F: Field> {
    pub rref: Mat<F>,
    pub rank: usize,
    pub kernel: Subspace<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Mat { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Build from rows; all rows must have length `cols`.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!("row {i} has length {}, expected {cols}", r.len())));
            }
            data.extend(r);
        }
        Ok(Mat { field: field.clone(), rows: nrows, cols, data })
    }

    pub fn from_i64(field: &F, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Self::from_rows(field, cols, rows)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn nrows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        let v = f.add(out.get(i, j), &f.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let f = &self.field;
        Ok((0..self.rows).map(|r| dot(f, self.row(r), v)).collect())
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("stacking {} and {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Mat { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Reduced row echelon form and pivot columns. Pivoting takes the
    /// leftmost nonzero column and the first nonzero row below the current
    /// pivot row, so the result is reproducible.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(r) = (pr..m.rows).find(|&r| !f.is_zero(m.get(r, c))) else {
                continue;
            };
            m.swap_rows(pr, r);
            let inv = f.inv(m.get(pr, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.get(pr, j), &inv);
                m.set(pr, j, v);
            }
            for r2 in 0..m.rows {
                if r2 == pr {
                    continue;
                }
                let factor = m.get(r2, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(r2, j), &f.mul(&factor, m.get(pr, j)));
                    m.set(r2, j, v);
                }
            }
            pivots.push(c);
            pr += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Right kernel {v : self·v = 0} inside F^cols.
    pub fn kernel(&self) -> Subspace<F> {
        if let Some(k) = modular_kernel(self) {
            return k;
        }
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots)
    }

    /// Span of the rows.
    pub fn row_space(&self) -> Subspace<F> {
        Subspace::from_rows_mat(self)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Self::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn format_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|x| self.field.format(x)).collect()).collect()
    }
}

fn kernel_from_rref<F: Field>(r: &Mat<F>, pivots: &[usize]) -> Subspace<F> {
    let f = &r.field;
    let free: Vec<usize> = (0..r.cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![f.zero(); r.cols];
        v[fc] = f.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(r.get(i, fc));
        }
        basis.push(v);
    }
    Subspace::span(f, r.cols, basis).expect("kernel vectors have ambient length")
}

const MOD_P: u64 = (1 << 61) - 1;

/// Kernel via elimination modulo a large prime followed by rational
/// reconstruction. The lifted vectors are checked exactly; since the rank
/// can only drop modulo p, a kernel of the same size that checks out over
/// the field is the whole kernel. Returns `None` when the field has no
/// modular image or the lift fails, and the caller falls back to exact
/// elimination.
fn modular_kernel<F: Field>(m: &Mat<F>) -> Option<Subspace<F>> {
    let f = &m.field;
    if m.rows * m.cols < 64 {
        return None;
    }
    let p = MOD_P;
    let mut a: Vec<u64> = m.data.iter().map(|x| f.modular_image(x, p)).collect::<Option<_>>()?;
    let (rows, cols) = (m.rows, m.cols);
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(r) = (pr..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if r != pr {
            for j in 0..cols {
                a.swap(r * cols + j, pr * cols + j);
            }
        }
        let inv = crate::field::modinv_u64(a[pr * cols + c], p)?;
        for j in c..cols {
            a[pr * cols + j] = mulm(a[pr * cols + j], inv);
        }
        for r2 in 0..rows {
            let fac = a[r2 * cols + c];
            if r2 == pr || fac == 0 {
                continue;
            }
            for j in c..cols {
                let t = mulm(fac, a[pr * cols + j]);
                a[r2 * cols + j] = (a[r2 * cols + j] + p - t) % p;
            }
        }
        pivots.push(c);
        pr += 1;
    }
    // Lift each kernel vector to integers (scaled by the lcm of the
    // reconstructed denominators) so the exact check stays in ℤ.
    let mut basis = Vec::new();
    for fc in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut frac = Vec::new();
        for (i, &pc) in pivots.iter().enumerate() {
            let x = a[i * cols + fc];
            if x != 0 {
                let (n, d) = crate::field::rational_reconstruct(x, p)?;
                frac.push((pc, n, d));
            }
        }
        let mut l: i64 = 1;
        for &(_, _, d) in &frac {
            l = l.checked_mul(d / num_integer::gcd(l, d))?;
        }
        let mut v = vec![f.zero(); cols];
        v[fc] = f.from_i64(l);
        for (pc, n, d) in frac {
            v[pc] = f.from_i64(n.checked_mul(l / d)?.checked_neg()?);
        }
        if (0..rows).any(|r| !f.is_zero(&dot(f, m.row(r), &v))) {
            return None;
        }
        basis.push(v);
    }
    Subspace::span(f, cols, basis).ok()
}

/// RREF, rank and right kernel of a nonempty matrix.
pub fn rref_kernel<F: Field>(m: &Mat<F>) -> Result<RrefKernel<F>> {
    if m.rows == 0 || m.cols == 0 {
        return Err(Error::EmptyMatrix);
    }
    let (rref, pivots) = m.rref();
    let kernel = kernel_from_rref(&rref, &pivots);
    Ok(RrefKernel { rank: pivots.len(), rref, kernel })
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        if !f.is_zero(x) && !f.is_zero(y) {
            acc = f.add(&acc, &f.mul(x, y));
        }
    }
    acc
}

/// Linear subspace of F^n, stored as its RREF basis. Equal subspaces have
/// equal values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field> {
    basis: Mat<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn span(field: &F, ambient: usize, vectors: Vec<Vec<F::Elem>>) -> Result<Self> {
        let m = Mat::from_rows(field, ambient, vectors)?;
        Ok(Self::from_rows_mat(&m))
    }

    pub fn from_rows_mat(m: &Mat<F>) -> Self {
        let (r, pivots) = m.rref();
        let k = pivots.len();
        let basis = Mat { field: r.field.clone(), rows: k, cols: r.cols, data: r.data[..k * r.cols].to_vec() };
        Subspace { basis, pivots }
    }

    /// From rows already in reduced row echelon form with the given pivots.
    pub(crate) fn from_rref_rows(field: &F, ambient: usize, rows: Vec<Vec<F::Elem>>, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(rows.len(), pivots.len());
        let basis = Mat::from_rows(field, ambient, rows).expect("rows of ambient length");
        Subspace { basis, pivots }
    }

    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace { basis: Mat::zeros(field, 0, ambient), pivots: vec![] }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Subspace { basis: Mat::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the listed standard basis vectors.
    pub fn coordinate(field: &F, ambient: usize, idx: &[usize]) -> Self {
        let vs = idx
            .iter()
            .map(|&i| {
                let mut v = vec![field.zero(); ambient];
                v[i] = field.one();
                v
            })
            .collect();
        Self::span(field, ambient, vs).expect("coordinate vectors")
    }

    pub fn from_i64(field: &F, ambient: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Ok(Self::from_rows_mat(&Mat::from_i64(field, ambient, rows)?))
    }

    pub fn field(&self) -> &F {
        &self.basis.field
    }
    pub fn ambient(&self) -> usize {
        self.basis.cols
    }
    pub fn dim(&self) -> usize {
        self.basis.rows
    }
    pub fn basis(&self) -> &Mat<F> {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn basis_vecs(&self) -> Vec<Vec<F::Elem>> {
        self.basis.row_vecs()
    }
    pub fn vector(&self, i: usize) -> &[F::Elem] {
        self.basis.row(i)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.ambient() != other.ambient() {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient(),
                other.ambient()
            )));
        }
        Ok(())
    }

    /// Remainder of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut out = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate().skip(pc) {
                if !f.is_zero(b) {
                    out[j] = f.sub(&out[j], &f.mul(&c, b));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let f = self.field();
        v.len() == self.ambient() && self.reduce(v).iter().all(|x| f.is_zero(x))
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        self.field() == other.field()
            && self.ambient() == other.ambient()
            && (0..other.dim()).all(|i| self.contains(other.vector(i)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self::from_rows_mat(&self.basis.stack(&other.basis)?))
    }

    /// Covectors vanishing on the subspace, as rows.
    pub fn annihilator(&self) -> Mat<F> {
        let f = self.field();
        if self.dim() == 0 {
            return Mat::identity(f, self.ambient());
        }
        let k = self.basis.kernel();
        k.basis
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = self.field();
        let eqs = self.annihilator().stack(&other.annihilator())?;
        if eqs.rows == 0 {
            return Ok(Self::full(f, self.ambient()));
        }
        Ok(eqs.kernel())
    }

    /// Standard basis indices completing this subspace to the whole space,
    /// chosen greedily in increasing order.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient()).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Coordinates of `v` in the RREF basis; `None` if `v` is not in the space.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c].clone()).collect())
    }

    /// Linear combination of basis vectors.
    pub fn combine(&self, coeffs: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut out = vec![f.zero(); self.ambient()];
        for (i, c) in coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate() {
                out[j] = f.add(&out[j], &f.mul(c, b));
            }
        }
        out
    }

    /// Image of the subspace under `v ↦ v·g` (rows times matrix).
    pub fn transform(&self, g: &Mat<F>) -> Result<Self> {
        Ok(Self::from_rows_mat(&self.basis.mul(g)?))
    }

    pub fn format_rows(&self) -> Vec<Vec<String>> {
        self.basis.format_rows()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn modular_kernel_agrees_with_exact() {
        let f = Rationals;
        let mut rng = crate::random::rng(5);
        for (rows, cols, rank) in [(12, 9, 6), (20, 15, 15), (9, 12, 4)] {
            let a = crate::random::matrix(&f, rows, rank, &mut rng);
            let b = crate::random::matrix(&f, rank, cols, &mut rng);
            let m = a.mul(&b).unwrap();
            let fast = modular_kernel(&m).expect("small entries lift");
            let (r, piv) = m.rref();
            assert_eq!(fast, kernel_from_rref(&r, &piv));
        }
        // Entries too large for reconstruction fall back.
        let big = Mat::from_rows(&f, 8, vec![(0..8).map(|i| f.from_i64(1 << 40) + f.from_i64(i)).collect(); 8]).unwrap();
        assert!(modular_kernel(&big).is_none());
        assert_eq!(big.kernel().dim(), 7);
    }

    #[test]
    fn identity_and_zero() {
        let f = Rationals;
        let r = rref_kernel(&Mat::identity(&f, 3)).unwrap();
        assert_eq!((r.rank, r.kernel.dim()), (3, 0));
        let r = rref_kernel(&Mat::zeros(&f, 2, 5)).unwrap();
        assert_eq!((r.rank, r.kernel.dim()), (0, 5));
        assert_eq!(rref_kernel(&Mat::<Rationals>::zeros(&f, 0, 3)), Err(Error::EmptyMatrix));
    }

    #[test]
    fn kernel_is_annihilated() {
        let f = Rationals;
        let m = Mat::from_i64(&f, 4, &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 1]]).unwrap();
        let r = rref_kernel(&m).unwrap();
        assert_eq!(r.rank, 2);
        assert_eq!(r.kernel.dim(), 2);
        for v in r.kernel.basis_vecs() {
            assert!(m.apply(&v).unwrap().iter().all(|x| f.is_zero(x)));
        }
    }

    #[test]
    fn meet_and_sum() {
        let f = Rationals;
        let a = Subspace::coordinate(&f, 5, &[0, 1]);
        let b = Subspace::coordinate(&f, 5, &[1, 2]);
        assert_eq!(a.meet(&b).unwrap(), Subspace::coordinate(&f, 5, &[1]));
        let c = Subspace::coordinate(&f, 5, &[2, 3]);
        assert_eq!(a.sum(&c).unwrap().dim(), 4);
        assert_eq!(a.meet(&c).unwrap().dim(), 0);
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = Mat::identity(&PrimeField::new(3).unwrap(), 2);
        let b = Mat::identity(&PrimeField::new(5).unwrap(), 2);
        assert_eq!(a.mul(&b), Err(Error::FieldMismatch));
        let sa = Subspace::full(&PrimeField::new(3).unwrap(), 2);
        let sb = Subspace::full(&PrimeField::new(5).unwrap(), 2);
        assert_eq!(sa.meet(&sb), Err(Error::FieldMismatch));
    }

    #[test]
    fn inverse_round_trip() {
        let f = Rationals;
        let m = Mat::from_i64(&f, 3, &[vec![2, 1, 0], vec![0, 1, 3], vec![1, 0, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Mat::identity(&f, 3));
        let sing = Mat::from_i64(&f, 2, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(sing.inverse().is_none());
    }
}
