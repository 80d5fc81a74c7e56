//! Homogeneous binary forms in (s,t), matrices of forms, minimal bases and
//! splitting types of bundles on the projective line.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Mat, Subspace};

/// A homogeneous form of degree `d`; `coeffs[i]` multiplies s^(d-i) t^i.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinForm<F: Field> {
    field: F,
    degree: usize,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> BinForm<F> {
    pub fn new(field: &F, degree: usize, coeffs: Vec<F::Elem>) -> Result<Self> {
        if coeffs.len() != degree + 1 {
            return Err(Error::InvalidInput(format!(
                "degree {degree} form needs {} coefficients, got {}",
                degree + 1,
                coeffs.len()
            )));
        }
        Ok(BinForm { field: field.clone(), degree, coeffs })
    }

    pub fn from_i64(field: &F, coeffs: &[i64]) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        let c = coeffs.iter().map(|&x| field.from_i64(x)).collect();
        BinForm { field: field.clone(), degree: coeffs.len() - 1, coeffs: c }
    }

    pub fn zero(field: &F, degree: usize) -> Self {
        BinForm { field: field.clone(), degree, coeffs: vec![field.zero(); degree + 1] }
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        BinForm { field: field.clone(), degree: 0, coeffs: vec![c] }
    }

    /// c · s^(d-i) t^i.
    pub fn monomial(field: &F, degree: usize, i: usize, c: F::Elem) -> Self {
        let mut f = Self::zero(field, degree);
        f.coeffs[i] = c;
        f
    }

    /// The linear form a·s + b·t.
    pub fn linear(field: &F, a: F::Elem, b: F::Elem) -> Self {
        BinForm { field: field.clone(), degree: 1, coeffs: vec![a, b] }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding forms of different degrees");
        let f = &self.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.add(a, b)).collect();
        BinForm { field: f.clone(), degree: self.degree, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        BinForm { field: f.clone(), degree: self.degree, coeffs: self.coeffs.iter().map(|a| f.mul(a, c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut out = vec![f.zero(); self.degree + other.degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !f.is_zero(b) {
                    out[i + j] = f.add(&out[i + j], &f.mul(a, b));
                }
            }
        }
        BinForm { field: f.clone(), degree: self.degree + other.degree, coeffs: out }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::constant(&self.field, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, s: &F::Elem, t: &F::Elem) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let term = f.mul(c, &f.mul(&f.pow(s, (self.degree - i) as u32), &f.pow(t, i as u32)));
            acc = f.add(&acc, &term);
        }
        acc
    }

    /// Substitute s ← a·s + b·t, t ← c·s + d·t, with `m = [[a, b], [c, d]]`.
    pub fn substitute(&self, m: &[[F::Elem; 2]; 2]) -> Self {
        let f = &self.field;
        let ls = Self::linear(f, m[0][0].clone(), m[0][1].clone());
        let lt = Self::linear(f, m[1][0].clone(), m[1][1].clone());
        let mut acc = Self::zero(f, self.degree);
        for (i, c) in self.coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            acc = acc.add(&ls.pow(self.degree - i).mul(&lt.pow(i)).scale(c));
        }
        acc
    }

    /// Exponent of the largest power of s dividing a nonzero form.
    fn s_multiplicity(&self) -> usize {
        let last = self.coeffs.iter().rposition(|c| !self.field.is_zero(c)).expect("nonzero form");
        self.degree - last
    }

    /// The polynomial f(1, t), coefficients ascending in t, trimmed.
    fn dehomogenize(&self) -> Vec<F::Elem> {
        let mut v = self.coeffs.clone();
        while v.len() > 1 && self.field.is_zero(v.last().unwrap()) {
            v.pop();
        }
        v
    }

    /// Exact division by a nonzero divisor; `None` if it does not divide.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let f = &self.field;
        if divisor.is_zero() || divisor.degree > self.degree {
            return None;
        }
        // Long division in the t-ascending coefficient order, starting from
        // the lowest nonzero coefficient of the divisor.
        let lead = divisor.coeffs.iter().position(|c| !f.is_zero(c)).unwrap();
        let inv = f.inv(&divisor.coeffs[lead]).unwrap();
        let qdeg = self.degree - divisor.degree;
        let mut rem = self.coeffs.clone();
        let mut q = vec![f.zero(); qdeg + 1];
        for i in 0..=qdeg {
            let c = rem[i + lead].clone();
            if f.is_zero(&c) {
                continue;
            }
            let k = f.mul(&c, &inv);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !f.is_zero(d) {
                    rem[i + j] = f.sub(&rem[i + j], &f.mul(&k, d));
                }
            }
            q[i] = k;
        }
        if rem.iter().all(|c| f.is_zero(c)) {
            Some(BinForm { field: f.clone(), degree: qdeg, coeffs: q })
        } else {
            None
        }
    }

    /// Scale so the first nonzero coefficient is 1.
    pub fn monic(&self) -> Self {
        let f = &self.field;
        match self.coeffs.iter().find(|c| !f.is_zero(c)) {
            None => self.clone(),
            Some(c) => self.scale(&f.inv(c).unwrap()),
        }
    }

    /// Whether the form vanishes at the point (s:t).
    pub fn vanishes_at(&self, s: &F::Elem, t: &F::Elem) -> bool {
        self.field.is_zero(&self.eval(s, t))
    }
}

fn poly_rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = f.inv(&b[db]).expect("trimmed divisor");
    while r.len() > db && !(r.len() == 1 && f.is_zero(&r[0])) {
        let k = f.mul(r.last().unwrap(), &inv);
        let shift = r.len() - 1 - db;
        for (j, c) in b.iter().enumerate() {
            r[shift + j] = f.sub(&r[shift + j], &f.mul(&k, c));
        }
        r.pop();
        while r.len() > 1 && f.is_zero(r.last().unwrap()) {
            r.pop();
        }
    }
    r
}

fn poly_gcd<F: Field>(f: &F, a: Vec<F::Elem>, b: Vec<F::Elem>) -> Vec<F::Elem> {
    let is_zero = |p: &[F::Elem]| p.iter().all(|c| f.is_zero(c));
    let (mut a, mut b) = (a, b);
    while !is_zero(&b) {
        let r = poly_rem(f, &a, &b);
        a = b;
        b = r;
    }
    a
}

/// Monic gcd of a list of forms; the zero form (degree 0 tag) if all are zero.
pub fn gcd_forms<F: Field>(field: &F, forms: &[BinForm<F>]) -> BinForm<F> {
    let nz: Vec<&BinForm<F>> = forms.iter().filter(|g| !g.is_zero()).collect();
    if nz.is_empty() {
        return BinForm::zero(field, 0);
    }
    let ms = nz.iter().map(|g| g.s_multiplicity()).min().unwrap();
    let mut g = nz[0].dehomogenize();
    for h in &nz[1..] {
        g = poly_gcd(field, g, h.dehomogenize());
    }
    // Homogenize g(t) and multiply by s^ms.
    let mut coeffs = g;
    coeffs.extend(std::iter::repeat(field.zero()).take(ms));
    BinForm { field: field.clone(), degree: coeffs.len() - 1, coeffs }.monic_last()
}

impl<F: Field> BinForm<F> {
    /// Scale so the coefficient of the highest t-power present is 1.
    fn monic_last(&self) -> Self {
        let f = &self.field;
        match self.coeffs.iter().rev().find(|c| !f.is_zero(c)) {
            None => self.clone(),
            Some(c) => self.scale(&f.inv(c).unwrap()),
        }
    }
}

impl<F: Field> fmt::Display for BinForm<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let (a, b) = (self.degree - i, i);
            let mut mon = Vec::new();
            if a > 0 {
                mon.push(if a == 1 { "s".to_string() } else { format!("s^{a}") });
            }
            if b > 0 {
                mon.push(if b == 1 { "t".to_string() } else { format!("t^{b}") });
            }
            let cs = f.format(c);
            terms.push(match (mon.is_empty(), cs.as_str()) {
                (true, _) => cs,
                (false, "1") => mon.join("*"),
                (false, "-1") => format!("-{}", mon.join("*")),
                _ => format!("{cs}*{}", mon.join("*")),
            });
        }
        if terms.is_empty() {
            write!(out, "0")
        } else {
            write!(out, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

/// JSON shape of a binary form: `{"deg": d, "coeffs": ["…", …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinFormJson {
    pub deg: usize,
    pub coeffs: Vec<String>,
}

impl<F: Field> BinForm<F> {
    pub fn to_json(&self) -> BinFormJson {
        BinFormJson { deg: self.degree, coeffs: self.coeffs.iter().map(|c| self.field.format(c)).collect() }
    }

    pub fn from_json(field: &F, j: &BinFormJson) -> Result<Self> {
        let coeffs = j.coeffs.iter().map(|c| field.parse(c)).collect::<Result<Vec<_>>>()?;
        Self::new(field, j.deg, coeffs)
    }
}

/// Nonincreasing list of line-bundle degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplittingType(Vec<i64>);

impl SplittingType {
    pub fn new(mut degrees: Vec<i64>) -> Self {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        SplittingType(degrees)
    }
    pub fn degrees(&self) -> &[i64] {
        &self.0
    }
    pub fn rank(&self) -> usize {
        self.0.len()
    }
    pub fn degree_sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// (h⁰, h¹) of the split bundle ⊕ O(dᵢ) on the projective line.
pub fn split_cohomology(t: &SplittingType) -> (u64, u64) {
    let h0 = t.0.iter().filter(|&&d| d >= 0).map(|&d| (d + 1) as u64).sum();
    let h1 = t.0.iter().filter(|&&d| d <= -2).map(|&d| (-d - 1) as u64).sum();
    (h0, h1)
}

/// Matrix whose entries are binary forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMat<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<Vec<BinForm<F>>>,
}

/// Output of [`PolyMat::minimal_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalBasis<F: Field> {
    /// Rows ordered by nondecreasing degree.
    pub basis: PolyMat<F>,
    pub indices: SplittingType,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    // Heap-free recursive generation with sign tracking.
    fn rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, sign: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        if rest.is_empty() {
            out.push((cur.clone(), sign));
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            rec(rest, cur, sign ^ (i % 2 == 1), out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..n).collect(), &mut Vec::new(), false, &mut out);
    out
}

/// Determinant of a square array of forms whose nonzero terms all have
/// degree `degree`.
fn det_forms<F: Field>(field: &F, m: &[Vec<&BinForm<F>>], degree: usize) -> BinForm<F> {
    let n = m.len();
    let mut acc = BinForm::zero(field, degree);
    'perm: for (perm, odd) in permutations(n) {
        let mut term: Option<BinForm<F>> = None;
        for (r, &c) in perm.iter().enumerate() {
            let e = m[r][c];
            if e.is_zero() {
                continue 'perm;
            }
            term = Some(match term {
                None => e.clone(),
                Some(t) => t.mul(e),
            });
        }
        let term = term.unwrap_or_else(|| BinForm::constant(field, field.one()));
        assert_eq!(term.degree(), degree, "inhomogeneous determinant");
        acc = if odd { acc.sub(&term) } else { acc.add(&term) };
    }
    acc
}

impl<F: Field> PolyMat<F> {
    pub fn new(field: &F, ncols: usize, rows: Vec<Vec<BinForm<F>>>) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {ncols}", r.len())));
            }
        }
        Ok(PolyMat { field: field.clone(), ncols, rows })
    }

    /// A row-homogeneous matrix from coefficient lists: `rows[r][c]` lists
    /// the coefficients of entry (r, c); all entries in a row share a degree.
    pub fn from_i64(field: &F, rows: &[Vec<Vec<i64>>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|c| BinForm::from_i64(field, c)).collect()).collect();
        let m = Self::new(field, ncols, rows)?;
        m.row_degrees()?;
        Ok(m)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }
    pub fn ncols(&self) -> usize {
        self.ncols
    }
    pub fn rows(&self) -> &[Vec<BinForm<F>>] {
        &self.rows
    }
    pub fn entry(&self, r: usize, c: usize) -> &BinForm<F> {
        &self.rows[r][c]
    }

    /// Common degree of each row; fails if a row mixes degrees among its
    /// nonzero entries or zero tags.
    pub fn row_degrees(&self) -> Result<Vec<usize>> {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let d = r.first().map_or(0, |e| e.degree());
                if r.iter().any(|e| e.degree() != d) {
                    Err(Error::InvalidInput(format!("row {i} is not homogeneous")))
                } else {
                    Ok(d)
                }
            })
            .collect()
    }

    /// Maximal minors (one per sorted column subset of size nrows).
    pub fn maximal_minors(&self) -> Result<Vec<(Vec<usize>, BinForm<F>)>> {
        let degs = self.row_degrees()?;
        let total: usize = degs.iter().sum();
        let r = self.nrows();
        Ok(subsets(self.ncols, r)
            .into_iter()
            .map(|cols| {
                let sub: Vec<Vec<&BinForm<F>>> =
                    self.rows.iter().map(|row| cols.iter().map(|&c| &row[c]).collect()).collect();
                let d = det_forms(&self.field, &sub, total);
                (cols, d)
            })
            .collect())
    }

    /// Evaluate every entry at (s:t).
    pub fn eval(&self, s: &F::Elem, t: &F::Elem) -> Mat<F> {
        let rows = self.rows.iter().map(|r| r.iter().map(|e| e.eval(s, t)).collect()).collect();
        Mat::from_rows(&self.field, self.ncols, rows).expect("rectangular")
    }

    pub fn substitute(&self, m: &[[F::Elem; 2]; 2]) -> Self {
        let rows = self.rows.iter().map(|r| r.iter().map(|e| e.substitute(m)).collect()).collect();
        PolyMat { field: self.field.clone(), ncols: self.ncols, rows }
    }

    /// Degree-e homogeneous row vectors flattened as coordinate
    /// `c·(e+1) + i` for coefficient i of column c.
    fn flatten(row: &[BinForm<F>], e: usize) -> Vec<F::Elem> {
        row.iter().flat_map(|x| {
            debug_assert_eq!(x.degree(), e);
            x.coeffs().iter().cloned()
        })
        .collect()
    }

    fn unflatten(field: &F, v: &[F::Elem], ncols: usize, e: usize) -> Vec<BinForm<F>> {
        (0..ncols).map(|c| BinForm::new(field, e, v[c * (e + 1)..(c + 1) * (e + 1)].to_vec()).unwrap()).collect()
    }

    /// Degree-e part of the saturation of the row module: all v with every
    /// (r+1)-minor of [self; v] identically zero.
    fn saturated_part(&self, minors: &[(Vec<usize>, BinForm<F>)], total: usize, e: usize) -> Subspace<F> {
        let f = &self.field;
        let r = self.nrows();
        let n = self.ncols;
        let unknowns = n * (e + 1);
        if r == n {
            return Subspace::full(f, unknowns);
        }
        let lookup = |cols: &[usize]| &minors.iter().find(|(c, _)| c == cols).expect("minor").1;
        let width = e + total + 1;
        let subs = subsets(n, r + 1);
        let mut m = Mat::zeros(f, subs.len() * width, unknowns);
        for (si, cset) in subs.iter().enumerate() {
            for j in 0..cset.len() {
                let rest: Vec<usize> = cset.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &c)| c).collect();
                let minor = lookup(&rest);
                // Expand along the appended row v: sign (-1)^(r + j) up to a global sign.
                let sign_neg = j % 2 == 1;
                for i in 0..=e {
                    for (l, mc) in minor.coeffs().iter().enumerate() {
                        if f.is_zero(mc) {
                            continue;
                        }
                        let row = si * width + i + l;
                        let col = cset[j] * (e + 1) + i;
                        let val = if sign_neg { f.neg(mc) } else { mc.clone() };
                        let cur = m.get(row, col).clone();
                        m.set(row, col, f.add(&cur, &val));
                    }
                }
            }
        }
        m.kernel()
    }

    /// Minimal basis of the saturated row module. The indices are the
    /// splitting degrees of the subbundle spanned by the rows.
    pub fn minimal_basis(&self) -> Result<MinimalBasis<F>> {
        let f = &self.field;
        let degs = self.row_degrees()?;
        let r = self.nrows();
        if r == 0 {
            return Err(Error::DegenerateFamily("no rows".into()));
        }
        let minors = self.maximal_minors()?;
        if minors.iter().all(|(_, m)| m.is_zero()) {
            return Err(Error::DegenerateFamily("rows are dependent over the function field".into()));
        }
        let total: usize = degs.iter().sum();
        let max_deg = *degs.iter().max().unwrap();
        let n = self.ncols;
        let mut gens: Vec<(usize, Vec<BinForm<F>>)> = Vec::new();
        for e in 0..=max_deg {
            let sat = self.saturated_part(&minors, total, e);
            let mut lower = Vec::new();
            for (k, g) in &gens {
                for i in 0..=(e - k) {
                    let mono = BinForm::monomial(f, e - k, i, f.one());
                    let row: Vec<BinForm<F>> = g.iter().map(|x| x.mul(&mono)).collect();
                    lower.push(Self::flatten(&row, e));
                }
            }
            let lower = Subspace::span(f, n * (e + 1), lower)?;
            let residues: Vec<Vec<F::Elem>> = sat.basis_vecs().iter().map(|v| lower.reduce(v)).collect();
            let fresh = Subspace::span(f, n * (e + 1), residues)?;
            for v in fresh.basis_vecs() {
                gens.push((e, Self::unflatten(f, &v, n, e)));
            }
            if gens.len() >= r {
                break;
            }
        }
        if gens.len() != r {
            return Err(Error::DegenerateFamily(format!("found {} generators for rank {r}", gens.len())));
        }
        let indices = SplittingType::new(gens.iter().map(|(k, _)| *k as i64).collect());
        let basis = PolyMat { field: f.clone(), ncols: n, rows: gens.into_iter().map(|(_, g)| g).collect() };
        Ok(MinimalBasis { basis, indices })
    }
}

/// Splitting type of the kernel of a surjective graded map
/// ⊕ O(source_degs[i]) → ⊕ O(target_degs[j]); entry (j, i) of `m` is the
/// component from source i to target j.
pub fn graded_kernel_splitting<F: Field>(
    m: &PolyMat<F>,
    source_degs: &[i64],
    target_degs: &[i64],
) -> Result<SplittingType> {
    let f = m.field();
    let (ns, nt) = (source_degs.len(), target_degs.len());
    if m.nrows() != nt || m.ncols() != ns {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, degrees give {nt}x{ns}",
            m.nrows(),
            m.ncols()
        )));
    }
    for j in 0..nt {
        for i in 0..ns {
            let e = m.entry(j, i);
            if !e.is_zero() && e.degree() as i64 != target_degs[j] - source_degs[i] {
                return Err(Error::InvalidInput(format!(
                    "entry ({j},{i}) has degree {}, expected {}",
                    e.degree(),
                    target_degs[j] - source_degs[i]
                )));
            }
        }
    }
    if nt == 0 {
        return Ok(SplittingType::new(source_degs.to_vec()));
    }
    if nt > ns {
        return Err(Error::NotLocallyFree);
    }
    // Surjectivity: the maximal minors have no common zero.
    let tsum: i64 = target_degs.iter().sum();
    let mut minors = Vec::new();
    for cols in subsets(ns, nt) {
        let deg = tsum - cols.iter().map(|&c| source_degs[c]).sum::<i64>();
        if deg < 0 {
            continue;
        }
        let sub: Vec<Vec<&BinForm<F>>> = (0..nt).map(|j| cols.iter().map(|&c| m.entry(j, c)).collect()).collect();
        minors.push(det_forms(f, &sub, deg as usize));
    }
    let g = gcd_forms(f, &minors);
    if g.is_zero() || g.degree() > 0 {
        return Err(Error::NotLocallyFree);
    }

    let rank = ns - nt;
    let ssum: i64 = source_degs.iter().sum();
    let kmax = *source_degs.iter().max().unwrap();
    let kmin = ssum - tsum - (rank as i64 - 1) * kmax;
    let h = |tw: i64| -> i64 {
        let src: Vec<usize> = (0..ns).filter(|&i| source_degs[i] + tw >= 0).collect();
        if src.is_empty() {
            return 0;
        }
        let offs: Vec<usize> = src
            .iter()
            .scan(0usize, |acc, &i| {
                let o = *acc;
                *acc += (source_degs[i] + tw + 1) as usize;
                Some(o)
            })
            .collect();
        let unknowns: usize = src.iter().map(|&i| (source_degs[i] + tw + 1) as usize).sum();
        let tgt: Vec<usize> = (0..nt).filter(|&j| target_degs[j] + tw >= 0).collect();
        let eqs: usize = tgt.iter().map(|&j| (target_degs[j] + tw + 1) as usize).sum();
        if eqs == 0 {
            return unknowns as i64;
        }
        let mut a = Mat::zeros(f, eqs, unknowns);
        let mut row0 = 0;
        for &j in &tgt {
            for (si, &i) in src.iter().enumerate() {
                let e = m.entry(j, i);
                if e.is_zero() {
                    continue;
                }
                let fdeg = (source_degs[i] + tw) as usize;
                for k in 0..=fdeg {
                    for (l, c) in e.coeffs().iter().enumerate() {
                        if !f.is_zero(c) {
                            a.set(row0 + k + l, offs[si] + k, c.clone());
                        }
                    }
                }
            }
            row0 += (target_degs[j] + tw + 1) as usize;
        }
        (unknowns - a.rank()) as i64
    };
    let lo = -kmax - 2;
    let hi = -kmin;
    let hv: Vec<i64> = (lo..=hi).map(h).collect();
    let hat = |tw: i64| hv[(tw - lo) as usize];
    let dh = |tw: i64| hat(tw) - hat(tw - 1);
    let mut degrees = Vec::new();
    for c in (kmin..=kmax).rev() {
        let mult = dh(-c) - dh(-c - 1);
        if mult < 0 {
            return Err(Error::NotLocallyFree);
        }
        degrees.extend(std::iter::repeat(c).take(mult as usize));
    }
    let st = SplittingType::new(degrees);
    if st.rank() != rank || st.degree_sum() != ssum - tsum {
        return Err(Error::NotLocallyFree);
    }
    Ok(st)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rationals, Q};

    fn f() -> Rationals {
        Rationals
    }
    fn bf(c: &[i64]) -> BinForm<Rationals> {
        BinForm::from_i64(&f(), c)
    }

    #[test]
    fn arithmetic_and_eval() {
        let a = bf(&[1, 1]); // s + t
        let b = bf(&[1, -1]); // s - t
        assert_eq!(a.mul(&b), bf(&[1, 0, -1]));
        assert_eq!(a.mul(&b).eval(&f().from_i64(3), &f().from_i64(2)), f().from_i64(5));
        assert_eq!(format!("{}", bf(&[1, -2, 0, 3])), "s^3 - 2*s^2*t + 3*t^3");
    }

    #[test]
    fn substitution_shift() {
        // s^2 under s <- s + t: s^2 + 2st + t^2
        let one = f().one();
        let zero = f().zero();
        let m = [[one.clone(), one.clone()], [zero, one]];
        assert_eq!(bf(&[1, 0, 0]).substitute(&m), bf(&[1, 2, 1]));
    }

    #[test]
    fn gcd_of_forms() {
        // s*t*(s+t) and t^2*(s+t): gcd t(s+t)
        let a = bf(&[0, 1, 1, 0]);
        let b = bf(&[0, 0, 1, 1]);
        let g = gcd_forms(&f(), &[a.clone(), b]);
        assert_eq!(g.degree(), 2);
        assert!(a.div_exact(&g).is_some());
        // s^2 and s t: gcd s
        let g = gcd_forms(&f(), &[bf(&[1, 0, 0]), bf(&[0, 1, 0])]);
        assert_eq!(g, bf(&[1, 0]));
        // coprime
        let g = gcd_forms(&f(), &[bf(&[1, 0]), bf(&[0, 1])]);
        assert_eq!(g.degree(), 0);
    }

    #[test]
    fn division() {
        let a = bf(&[1, 0, -1]);
        assert_eq!(a.div_exact(&bf(&[1, 1])), Some(bf(&[1, -1])));
        assert_eq!(a.div_exact(&bf(&[1, 2])), None);
    }

    #[test]
    fn minimal_basis_examples() {
        let m = PolyMat::from_i64(&f(), &[
            vec![vec![1], vec![0], vec![0], vec![0], vec![0]],
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![0, 0], vec![0, 0]],
        ])
        .unwrap();
        let mb = m.minimal_basis().unwrap();
        assert_eq!(mb.indices, SplittingType::new(vec![1, 0]));
        assert_eq!(mb.basis, m);

        let m = PolyMat::from_i64(&f(), &[
            vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 0], vec![0, 0]],
            vec![vec![1], vec![0], vec![0], vec![0], vec![0]],
        ]);
        // Rows of different degrees are fine; each row is homogeneous.
        let mb = m.unwrap().minimal_basis().unwrap();
        assert_eq!(mb.indices.degrees(), &[1, 0]);
        assert_eq!(mb.basis.rows()[1], vec![bf(&[0, 0]), bf(&[1, 0]), bf(&[0, 1]), bf(&[0, 0]), bf(&[0, 0])]);

        let m = PolyMat::from_i64(&f(), &[
            vec![vec![1, 0], vec![0, 1], vec![0, 0], vec![0, 0], vec![0, 0]],
            vec![vec![0, 0, 0], vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        ])
        .unwrap();
        assert_eq!(m.minimal_basis().unwrap().indices.degrees(), &[2, 1]);
    }

    #[test]
    fn minimal_basis_rejects_dependent_rows() {
        let m = PolyMat::from_i64(&f(), &[
            vec![vec![1, 0], vec![0, 1], vec![0, 0]],
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]],
        ])
        .unwrap();
        assert!(matches!(m.minimal_basis(), Err(Error::DegenerateFamily(_))));
    }

    #[test]
    fn minimal_basis_saturates_base_points() {
        // (1,0,0), (0, s^2, st): the second row is s·(0, s, t).
        let m = PolyMat::from_i64(&f(), &[
            vec![vec![1], vec![0], vec![0]],
            vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]],
        ])
        .unwrap();
        assert_eq!(m.minimal_basis().unwrap().indices.degrees(), &[1, 0]);
    }

    #[test]
    fn koszul_kernel() {
        let m = PolyMat::new(&f(), 2, vec![vec![bf(&[1, 0]), bf(&[0, 1])]]).unwrap();
        assert_eq!(graded_kernel_splitting(&m, &[-1, -1], &[0]).unwrap().degrees(), &[-2]);
    }

    /// Map (a2, a3, b2, b3) ↦ (a1·b2 − a2·b1 − b3, a1·b3 − a3·b1 − a2·b4 + a4·b2)
    /// for the pencil b1 = s, b4 = t; sources (0,0,1,1), targets (1,1).
    fn pencil_map(a1: i64, a4: i64) -> PolyMat<Rationals> {
        let z = || bf(&[0, 0]);
        let r1 = vec![bf(&[-1, 0]), z(), bf(&[a1]), bf(&[-1])];
        let r2 = vec![bf(&[0, -1]), bf(&[-1, 0]), bf(&[a4]), bf(&[a1])];
        PolyMat::new(&f(), 4, vec![r1, r2]).unwrap()
    }

    #[test]
    fn pencil_kernel_generic_and_special() {
        let src = [0, 0, 1, 1];
        let tgt = [1, 1];
        assert_eq!(graded_kernel_splitting(&pencil_map(0, 1), &src, &tgt).unwrap().degrees(), &[0, 0]);
        assert_eq!(graded_kernel_splitting(&pencil_map(1, -1), &src, &tgt).unwrap().degrees(), &[1, -1]);
    }

    #[test]
    fn non_surjective_map_is_rejected() {
        // (s, s): both minors vanish at s = 0.
        let m = PolyMat::new(&f(), 2, vec![vec![bf(&[1, 0]), bf(&[1, 0])]]).unwrap();
        assert_eq!(graded_kernel_splitting(&m, &[0, 0], &[1]), Err(Error::NotLocallyFree));
    }

    #[test]
    fn split_cohomology_examples() {
        assert_eq!(split_cohomology(&SplittingType::new(vec![0, 0, 1])), (4, 0));
        assert_eq!(split_cohomology(&SplittingType::new(vec![1, 1, -1])), (4, 0));
        assert_eq!(split_cohomology(&SplittingType::new(vec![-2])), (0, 1));
    }

    #[test]
    fn json_round_trip() {
        let a = BinForm::new(&f(), 1, vec![Q::new(1.into(), 2.into()), f().from_i64(-3)]).unwrap();
        let j = a.to_json();
        assert_eq!(j.coeffs, vec!["1/2", "-3"]);
        assert_eq!(BinForm::from_json(&f(), &j).unwrap(), a);
    }
}
