//! Rational curves of degree ≤ 3 in Gr(2,5), given parametrically as 2×5
//! matrices of binary forms (two rows spanning the line over each (s:t)).

use serde::{Deserialize, Serialize};

use crate::binform::{gcd_forms, BinForm, BinFormJson, PolyMat};
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::grassmann::{check_dim, covector_eval, wedge2, wedge4, PAIRS};
use crate::linalg::{Mat, Subspace};
use crate::random::{self, Rng};
use crate::sections::SectionModel;

/// Parameters at which injectivity is probed.
const PROBE_PARAMS: [(i64, i64); 10] = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (1, -2), (2, 1), (2, -1), (1, 3), (3, -1)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveKind {
    Line,
    ConeConic,
    ScrollConic,
    ConeCubic,
    ScrollCubic,
}

impl CurveKind {
    pub const ALL: [CurveKind; 5] =
        [CurveKind::Line, CurveKind::ConeConic, CurveKind::ScrollConic, CurveKind::ConeCubic, CurveKind::ScrollCubic];

    pub fn split(self) -> (usize, usize) {
        match self {
            CurveKind::Line => (0, 1),
            CurveKind::ConeConic => (0, 2),
            CurveKind::ScrollConic => (1, 1),
            CurveKind::ConeCubic => (0, 3),
            CurveKind::ScrollCubic => (1, 2),
        }
    }

    pub fn from_split(split: (usize, usize)) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.split() == split)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveClass {
    pub degree: usize,
    pub split: (usize, usize),
    pub kind: CurveKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxisResult<F: Field> {
    AxisLine(Subspace<F>),
    ConeWithVertex(Subspace<F>),
}

/// Input for [`scroll_curve`].
#[derive(Clone, Debug)]
pub enum CurveSpec<F: Field> {
    /// Lines joining a fixed point to a directrix curve.
    Cone { point: Vec<F::Elem>, directrix: Vec<BinForm<F>> },
    /// Lines joining corresponding points of two rows.
    Scroll { row0: Vec<BinForm<F>>, row1: Vec<BinForm<F>> },
}

/// A base-point-free family of lines of P⁴ over P¹, rows of degrees d₀ ≤ d₁.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFamily<F: Field> {
    mat: PolyMat<F>,
    d0: usize,
    d1: usize,
    pluecker: Vec<BinForm<F>>,
}

/// The ten Plücker minors of a 2×5 matrix of forms.
pub fn pluecker_forms<F: Field>(mat: &PolyMat<F>) -> Vec<BinForm<F>> {
    let a = &mat.rows()[0];
    let b = &mat.rows()[1];
    PAIRS.iter().map(|&(i, j)| a[i].mul(&b[j]).sub(&a[j].mul(&b[i]))).collect()
}

fn coefficient_vectors<F: Field>(forms: &[BinForm<F>]) -> Vec<Vec<F::Elem>> {
    let d = forms[0].degree();
    (0..=d).map(|k| forms.iter().map(|x| x.coeffs()[k].clone()).collect()).collect()
}

impl<F: Field> CurveFamily<F> {
    pub fn new(mat: PolyMat<F>) -> Result<Self> {
        if mat.nrows() != 2 || mat.ncols() != 5 {
            return Err(Error::DimensionMismatch(format!("family matrix is {}x{}, expected 2x5", mat.nrows(), mat.ncols())));
        }
        let degs = mat.row_degrees()?;
        let mat = if degs[0] > degs[1] {
            PolyMat::new(mat.field(), 5, vec![mat.rows()[1].clone(), mat.rows()[0].clone()])?
        } else {
            mat
        };
        let (d0, d1) = (degs[0].min(degs[1]), degs[0].max(degs[1]));
        let f = mat.field().clone();
        let pluecker = pluecker_forms(&mat);
        if pluecker.iter().all(|x| x.is_zero()) {
            return Err(Error::DegenerateFamily("rows are dependent".into()));
        }
        if gcd_forms(&f, &pluecker).degree() > 0 {
            return Err(Error::DegenerateFamily("Plücker minors share a root (base point)".into()));
        }
        if d0 + d1 == 0 {
            return Err(Error::DegenerateFamily("constant family".into()));
        }
        let mb = mat.minimal_basis()?;
        if mb.indices.degrees() != [d1 as i64, d0 as i64] {
            return Err(Error::DegenerateFamily("representation is not minimal".into()));
        }
        let fam = CurveFamily { mat, d0, d1, pluecker };
        fam.check_injective()?;
        Ok(fam)
    }

    pub fn from_rows(field: &F, row0: Vec<BinForm<F>>, row1: Vec<BinForm<F>>) -> Result<Self> {
        Self::new(PolyMat::new(field, 5, vec![row0, row1])?)
    }

    fn probe_points(&self) -> Vec<(F::Elem, F::Elem)> {
        let f = self.field();
        let mut seen: Vec<Vec<F::Elem>> = Vec::new();
        let mut out = Vec::new();
        for &(s, t) in &PROBE_PARAMS {
            let (s, t) = (f.from_i64(s), f.from_i64(t));
            let key = f.normalize_projective(&[s.clone(), t.clone()]);
            if key.iter().all(|x| f.is_zero(x)) || seen.contains(&key) {
                continue;
            }
            seen.push(key);
            out.push((s, t));
        }
        out
    }

    /// Distinct images at the probe parameters, plus an exact birationality
    /// test: at some probe point the fibre of the map has length one.
    fn check_injective(&self) -> Result<()> {
        let f = self.field();
        let pts = self.probe_points();
        let images: Vec<Vec<F::Elem>> = pts.iter().map(|(s, t)| self.pluecker_at(s, t)).collect();
        for i in 0..images.len() {
            for j in 0..i {
                if images[i] == images[j] {
                    return Err(Error::DegenerateFamily("two probe parameters give the same line".into()));
                }
            }
        }
        if self.degree() == 1 {
            return Ok(());
        }
        let birational = images.iter().any(|c| {
            let mut diffs = Vec::new();
            for i in 0..10 {
                for j in (i + 1)..10 {
                    diffs.push(self.pluecker[i].scale(&c[j]).sub(&self.pluecker[j].scale(&c[i])));
                }
            }
            gcd_forms(f, &diffs).degree() == 1
        });
        if birational {
            Ok(())
        } else {
            Err(Error::DegenerateFamily("map to the Grassmannian is a multiple cover".into()))
        }
    }

    pub fn field(&self) -> &F {
        self.mat.field()
    }
    pub fn matrix(&self) -> &PolyMat<F> {
        &self.mat
    }
    pub fn split(&self) -> (usize, usize) {
        (self.d0, self.d1)
    }
    pub fn degree(&self) -> usize {
        self.d0 + self.d1
    }
    pub fn pluecker(&self) -> &[BinForm<F>] {
        &self.pluecker
    }

    /// Degree of the Plücker form vector after dividing out the gcd.
    pub fn reduced_pluecker_degree(&self) -> usize {
        reduced_pluecker_degree(&self.mat)
    }

    /// Canonical Plücker vector of the line at (s:t).
    pub fn pluecker_at(&self, s: &F::Elem, t: &F::Elem) -> Vec<F::Elem> {
        let v: Vec<F::Elem> = self.pluecker.iter().map(|x| x.eval(s, t)).collect();
        self.field().normalize_projective(&v)
    }

    /// The line L(s:t) as a 2-dimensional subspace.
    pub fn line_at(&self, s: &F::Elem, t: &F::Elem) -> Subspace<F> {
        Subspace::from_rows_mat(&self.mat.eval(s, t))
    }

    pub fn reparametrize(&self, m: &[[F::Elem; 2]; 2]) -> Result<Self> {
        Self::new(self.mat.substitute(m))
    }

    pub fn classify(&self) -> Result<CurveClass> {
        let degree = self.degree();
        if degree > 3 {
            return Err(Error::OutOfScopeDegree(degree));
        }
        let kind = CurveKind::from_split((self.d0, self.d1)).ok_or(Error::OutOfScopeDegree(degree))?;
        debug_assert_eq!(self.reduced_pluecker_degree(), degree);
        Ok(CurveClass { degree, split: (self.d0, self.d1), kind })
    }

    /// The common point of all lines, if any.
    pub fn vertex(&self) -> Option<Subspace<F>> {
        let f = self.field();
        let d = self.degree();
        // v_a p_bc − v_b p_ac + v_c p_ab ≡ 0 for all a < b < c.
        let mut rows = Vec::new();
        let x = |i: usize, j: usize| &self.pluecker[crate::grassmann::pair_index(i, j)];
        for a in 0..5 {
            for b in (a + 1)..5 {
                for c in (b + 1)..5 {
                    for k in 0..=d {
                        let mut row = vec![f.zero(); 5];
                        row[a] = x(b, c).coeffs()[k].clone();
                        row[b] = f.neg(&x(a, c).coeffs()[k]);
                        row[c] = x(a, b).coeffs()[k].clone();
                        rows.push(row);
                    }
                }
            }
        }
        let ker = Mat::from_rows(f, 5, rows).expect("rows of length 5").kernel();
        match ker.dim() {
            0 => None,
            _ => Some(ker),
        }
    }

    /// The 3-space spanned by all lines of a conic family.
    pub fn envelope(&self) -> Result<Subspace<F>> {
        let degree = self.classify()?.degree;
        if degree != 2 {
            return Err(Error::WrongDegree { expected: 2, found: degree });
        }
        let mut vecs = Vec::new();
        for row in self.mat.rows() {
            vecs.extend(coefficient_vectors(row));
        }
        let span = Subspace::span(self.field(), 5, vecs)?;
        if span.dim() != 4 {
            return Err(Error::DegenerateConic(span.dim()));
        }
        Ok(span)
    }

    pub fn axis(&self) -> Result<AxisResult<F>> {
        let degree = self.classify()?.degree;
        if degree != 3 {
            return Err(Error::WrongDegree { expected: 3, found: degree });
        }
        if self.d0 == 0 {
            let v = self.vertex().ok_or_else(|| Error::DegenerateFamily("cone without vertex".into()))?;
            return Ok(AxisResult::ConeWithVertex(v));
        }
        let mb = self.mat.minimal_basis()?;
        let row = mb
            .basis
            .rows()
            .iter()
            .find(|r| r[0].degree() == 1)
            .ok_or_else(|| Error::DegenerateFamily("no degree-1 row".into()))?;
        let axis = Subspace::span(self.field(), 5, coefficient_vectors(row))?;
        check_dim(&axis, 2)?;
        assert!(meets_all(&axis, self)?, "axis must meet every line of the family");
        Ok(AxisResult::AxisLine(axis))
    }

    /// Every hyperplane of `sec` vanishes identically on the family.
    pub fn in_section(&self, sec: &SectionModel<F>) -> bool {
        curve_in_section(self, sec)
    }

    pub fn to_json(&self) -> CurveJson {
        CurveJson { rows: self.mat.rows().iter().map(|r| r.iter().map(|x| x.to_json()).collect()).collect() }
    }

    pub fn from_json(field: &F, j: &CurveJson) -> Result<Self> {
        if j.rows.len() != 2 {
            return Err(Error::InvalidInput(format!("curve needs 2 rows, got {}", j.rows.len())));
        }
        let rows = j
            .rows
            .iter()
            .map(|r| r.iter().map(|x| BinForm::from_json(field, x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(PolyMat::new(field, 5, rows)?)
    }
}

/// Degree of the gcd-reduced Plücker form vector of any 2×5 matrix of forms.
pub fn reduced_pluecker_degree<F: Field>(mat: &PolyMat<F>) -> usize {
    let p = pluecker_forms(mat);
    let g = gcd_forms(mat.field(), &p);
    p[0].degree() - g.degree()
}

/// Whether the fixed line `l` meets every line of the family.
pub fn meets_all<F: Field>(l: &Subspace<F>, c: &CurveFamily<F>) -> Result<bool> {
    check_dim(l, 2)?;
    let f = c.field();
    if l.field() != f {
        return Err(Error::FieldMismatch);
    }
    let pl = wedge2(f, l.vector(0), l.vector(1));
    Ok(coefficient_vectors(&c.pluecker).iter().all(|q| wedge4(f, &pl, q).iter().all(|x| f.is_zero(x))))
}

pub fn curve_in_section<F: Field>(c: &CurveFamily<F>, sec: &SectionModel<F>) -> bool {
    let f = c.field();
    let coeffs = coefficient_vectors(&c.pluecker);
    sec.hyperplanes().iter().all(|h| coeffs.iter().all(|q| f.is_zero(&covector_eval(f, h, q))))
}

pub fn scroll_curve<F: Field>(field: &F, spec: CurveSpec<F>) -> Result<CurveFamily<F>> {
    let (row0, row1) = match spec {
        CurveSpec::Cone { point, directrix } => {
            if point.len() != 5 {
                return Err(Error::DimensionMismatch("cone point must have 5 coordinates".into()));
            }
            (point.into_iter().map(|c| BinForm::constant(field, c)).collect::<Vec<_>>(), directrix)
        }
        CurveSpec::Scroll { row0, row1 } => (row0, row1),
    };
    if row0.len() != 5 || row1.len() != 5 {
        return Err(Error::DimensionMismatch("rows must have 5 entries".into()));
    }
    let d = row0[0].degree() + row1[0].degree();
    if d > 3 {
        return Err(Error::OutOfScopeDegree(d));
    }
    CurveFamily::from_rows(field, row0, row1)
}

/// JSON shape of a curve: `{"rows": [[BinForm×5],[BinForm×5]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub rows: Vec<Vec<BinFormJson>>,
}

fn form_from_vectors<F: Field>(f: &F, vecs: &[Vec<F::Elem>]) -> Vec<BinForm<F>> {
    let d = vecs.len() - 1;
    (0..5).map(|c| BinForm::new(f, d, vecs.iter().map(|v| v[c].clone()).collect()).unwrap()).collect()
}

/// A seeded random smooth family of the given kind over ℚ, presented in a
/// disguised (but still minimal) form: random row operations and a random
/// reparametrization are applied.
pub fn random_family(kind: CurveKind, rng: &mut Rng) -> CurveFamily<Rationals> {
    let f = Rationals;
    loop {
        let g = random::invertible(&f, 5, rng);
        let u: Vec<Vec<_>> = g.row_vecs();
        let (d0, d1) = kind.split();
        let row0 = form_from_vectors(&f, &u[0..=d0]);
        let row1 = form_from_vectors(&f, &u[d0 + 1..=d0 + 1 + d1]);
        let mut rows = vec![row0, row1];
        // Row operations preserving the module.
        if d0 == d1 {
            let m = random::invertible(&f, 2, rng);
            let mix = |i: usize| -> Vec<BinForm<Rationals>> {
                (0..5).map(|c| rows[0][c].scale(m.get(i, 0)).add(&rows[1][c].scale(m.get(i, 1)))).collect()
            };
            rows = vec![mix(0), mix(1)];
        } else {
            let coeffs = random::vector(&f, d1 - d0 + 1, rng);
            let h = BinForm::new(&f, d1 - d0, coeffs).unwrap();
            let r1: Vec<_> = (0..5).map(|c| rows[1][c].add(&rows[0][c].mul(&h))).collect();
            rows[1] = r1;
        }
        let Ok(mat) = PolyMat::new(&f, 5, rows) else { continue };
        let m = random::invertible(&f, 2, rng);
        let sub = [[m.get(0, 0).clone(), m.get(0, 1).clone()], [m.get(1, 0).clone(), m.get(1, 1).clone()]];
        if let Ok(c) = CurveFamily::new(mat.substitute(&sub)) {
            return c;
        }
    }
}
