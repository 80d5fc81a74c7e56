//! Linear sections of Gr(2,5) by up to four hyperplanes, and the fibre
//! computations on them: lines through a point, planes of lines, special
//! planes, induced conics, the linear span of lines meeting a fixed line,
//! and normal bundles of lines.

use serde::Serialize;

use crate::binform::{graded_kernel_splitting, BinForm, PolyMat, SplittingType};
use crate::curves::{curve_in_section, CurveFamily};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals, Q};
use crate::grassmann::{check_dim, covector_eval, pair_index, skew_restrict_all, wedge2, wedge2_matrix, SkewForm, PAIRS};
use crate::linalg::{Mat, Subspace};
use crate::poly::MPoly;

/// An ordered list of hyperplane covectors on ∧²C⁵ with their skew forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionModel<F: Field> {
    name: String,
    field: F,
    hyperplanes: Vec<Vec<F::Elem>>,
    forms: Vec<SkewForm<F>>,
}

/// Covector Σ c · p_ij from (i, j, c) triples.
pub fn covector<F: Field>(f: &F, terms: &[(usize, usize, i64)]) -> Vec<F::Elem> {
    let mut h = vec![f.zero(); 10];
    for &(i, j, c) in terms {
        let k = pair_index(i, j);
        let c = if i < j { f.from_i64(c) } else { f.from_i64(-c) };
        h[k] = f.add(&h[k], &c);
    }
    h
}

pub const PRESET_NAMES: [&str; 5] = ["Y6", "Y5", "Y4", "Y3", "Y2"];

impl<F: Field> SectionModel<F> {
    pub fn new(field: &F, name: impl Into<String>, hyperplanes: Vec<Vec<F::Elem>>) -> Result<Self> {
        if hyperplanes.len() > 4 {
            return Err(Error::InvalidInput(format!("{} hyperplanes; at most 4 are supported", hyperplanes.len())));
        }
        let forms = hyperplanes.iter().map(|h| SkewForm::from_covector(field, h)).collect::<Result<Vec<_>>>()?;
        Ok(SectionModel { name: name.into(), field: field.clone(), hyperplanes, forms })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn hyperplanes(&self) -> &[Vec<F::Elem>] {
        &self.hyperplanes
    }
    pub fn forms(&self) -> &[SkewForm<F>] {
        &self.forms
    }
    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }
    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// The section in new coordinates after v ↦ v·g on C⁵.
    pub fn transform(&self, g: &Mat<F>) -> Result<Self> {
        let hs = self.forms.iter().map(|w| w.transform(g).map(|w| w.to_covector())).collect::<Result<Vec<_>>>()?;
        Self::new(&self.field, format!("{}*g", self.name), hs)
    }

    /// Whether the 2-plane spanned by `a`, `b` lies in the section.
    pub fn contains_line(&self, a: &[F::Elem], b: &[F::Elem]) -> bool {
        let p = wedge2(&self.field, a, b);
        self.hyperplanes.iter().all(|h| self.field.is_zero(&covector_eval(&self.field, h, &p)))
    }

    pub fn format_hyperplanes(&self) -> Vec<Vec<String>> {
        self.hyperplanes.iter().map(|h| h.iter().map(|x| self.field.format(x)).collect()).collect()
    }
}

impl SectionModel<Rationals> {
    pub fn y6() -> Self {
        Self::new(&Rationals, "Y6", vec![]).unwrap()
    }
    pub fn y5() -> Self {
        Self::new(&Rationals, "Y5", vec![covector(&Rationals, &[(1, 2, 1), (0, 3, -1)])]).unwrap()
    }
    pub fn y4() -> Self {
        let mut h = Self::y5().hyperplanes;
        h.push(covector(&Rationals, &[(1, 3, 1), (2, 4, -1)]));
        Self::new(&Rationals, "Y4", h).unwrap()
    }
    pub fn y3() -> Self {
        let mut h = Self::y4().hyperplanes;
        h.push(covector(&Rationals, &[(1, 4, 1), (0, 2, -1)]));
        Self::new(&Rationals, "Y3", h).unwrap()
    }
    pub fn default_y2_h4() -> Vec<Q> {
        covector(&Rationals, &[(0, 1, 1), (3, 4, -1)])
    }
    pub fn y2(h4: Option<Vec<Q>>) -> Result<Self> {
        let h4 = h4.unwrap_or_else(Self::default_y2_h4);
        if h4.len() != 10 {
            return Err(Error::DimensionMismatch(format!("fourth covector has {} entries", h4.len())));
        }
        let mut h = Self::y3().hyperplanes;
        h.push(h4);
        Self::new(&Rationals, "Y2", h)
    }

    /// Preset by name; `y2_h4` overrides the fourth covector of Y2.
    pub fn preset(name: &str, y2_h4: Option<Vec<Q>>) -> Result<Self> {
        match name {
            "Y6" => Ok(Self::y6()),
            "Y5" => Ok(Self::y5()),
            "Y4" => Ok(Self::y4()),
            "Y3" => Ok(Self::y3()),
            "Y2" => Self::y2(y2_h4),
            _ => Err(Error::InvalidInput(format!("unknown section preset {name:?}"))),
        }
    }

    /// Reduction modulo p; fails if p divides a denominator.
    pub fn reduce_mod(&self, p: u32) -> Result<SectionModel<PrimeField>> {
        let fp = PrimeField::new(p as u64)?;
        let hs = self
            .hyperplanes
            .iter()
            .map(|h| h.iter().map(|x| fp.reduce(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        SectionModel::new(&fp, self.name.clone(), hs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FiberKind {
    Empty,
    UniquePoint,
    ProjSpace(usize),
    GrassmannFiber(usize, usize),
}

impl FiberKind {
    /// Dimension of the fibre as a variety; `None` when empty.
    pub fn dimension(self) -> Option<usize> {
        match self {
            FiberKind::Empty => None,
            FiberKind::UniquePoint => Some(0),
            FiberKind::ProjSpace(d) => Some(d),
            FiberKind::GrassmannFiber(a, b) => Some(a * (b - a)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport<F: Field> {
    pub k: usize,
    pub basis: Subspace<F>,
    pub interpretation: FiberKind,
}

/// W = {w : h(p ∧ w) = 0 for all h}.
pub fn vertex_kernel<F: Field>(p: &[F::Elem], sec: &SectionModel<F>) -> Subspace<F> {
    let f = sec.field();
    if sec.is_empty() {
        return Subspace::full(f, 5);
    }
    let rows = sec.forms().iter().map(|w| w.contract(p)).collect();
    Mat::from_rows(f, 5, rows).expect("rows of length 5").kernel()
}

fn check_field<F: Field>(v: &Subspace<F>, sec: &SectionModel<F>) -> Result<()> {
    if v.field() != sec.field() {
        Err(Error::FieldMismatch)
    } else {
        Ok(())
    }
}

/// Lines of the section with vertex p lying in σ₃,₀(p): they correspond to
/// 2-planes of W/⟨p⟩, with k = dim W/⟨p⟩.
pub fn vertex_fiber<F: Field>(p: &Subspace<F>, sec: &SectionModel<F>) -> Result<FiberReport<F>> {
    check_dim(p, 1)?;
    check_field(p, sec)?;
    let w = vertex_kernel(p.vector(0), sec);
    let k = w.dim() - 1;
    let interpretation = match k {
        0 | 1 => FiberKind::Empty,
        2 => FiberKind::UniquePoint,
        3 => FiberKind::ProjSpace(2),
        _ => FiberKind::GrassmannFiber(2, 4),
    };
    Ok(FiberReport { k, basis: w, interpretation })
}

/// Points of P(v3) that are vertices of a pencil in v3 lying in the section.
pub fn plane_fiber<F: Field>(v3: &Subspace<F>, sec: &SectionModel<F>) -> Result<FiberReport<F>> {
    check_dim(v3, 3)?;
    check_field(v3, sec)?;
    if sec.is_empty() {
        return Err(Error::InvalidInput("plane fibre needs at least one hyperplane".into()));
    }
    let r = skew_restrict_all(sec.forms(), v3)?;
    let k = r.kernel.dim();
    let interpretation = match k {
        0 => FiberKind::Empty,
        1 => FiberKind::UniquePoint,
        d => FiberKind::ProjSpace(d - 1),
    };
    Ok(FiberReport { k, basis: r.kernel, interpretation })
}

/// 3-spaces V₄ ⊇ y with h(y ∧ V₄) = 0: all V₄ with y ⊂ V₄ ⊆ W.
pub fn sigma31_planes_at<F: Field>(y: &Subspace<F>, sec: &SectionModel<F>) -> Result<FiberReport<F>> {
    check_dim(y, 1)?;
    check_field(y, sec)?;
    let w = vertex_kernel(y.vector(0), sec);
    let k = w.dim() - 1;
    let interpretation = match k {
        0..=2 => FiberKind::Empty,
        3 => FiberKind::UniquePoint,
        _ => FiberKind::GrassmannFiber(3, 4),
    };
    Ok(FiberReport { k, basis: w, interpretation })
}

/// Every section form vanishes on v3 (all lines in P(v3) lie in the section).
pub fn is_sigma22_plane<F: Field>(v3: &Subspace<F>, sec: &SectionModel<F>) -> Result<bool> {
    check_dim(v3, 3)?;
    check_field(v3, sec)?;
    Ok(sec.forms().iter().all(|w| w.gram(v3).is_zero()))
}

/// Restriction of the section covectors to ∧²v4, in the basis b_a ∧ b_b
/// (pairs 01, 02, 03, 12, 13, 23 of the RREF basis of v4).
pub fn envelope_restriction<F: Field>(v4: &Subspace<F>, sec: &SectionModel<F>) -> Result<Mat<F>> {
    check_dim(v4, 4)?;
    check_field(v4, sec)?;
    let f = sec.field();
    let basis: Vec<Vec<F::Elem>> = PAIRS4.iter().map(|&(a, b)| wedge2(f, v4.vector(a), v4.vector(b))).collect();
    let rows = sec.hyperplanes().iter().map(|h| basis.iter().map(|q| covector_eval(f, h, q)).collect()).collect();
    Mat::from_rows(f, 6, rows)
}

/// Index pairs of ∧² of a 4-dimensional space.
pub const PAIRS4: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicReport<F: Field> {
    /// Coefficients of x₀², x₀x₁, x₀x₂, x₁², x₁x₂, x₂².
    pub form: MPoly<F>,
    pub rank: usize,
    /// Rows: the three solution vectors in ∧²v4 coordinates (pairs of [`PAIRS4`]).
    pub solution_basis: Mat<F>,
}

fn gr24_quadric<F: Field>(f: &F, q: &[F::Elem]) -> F::Elem {
    // q01 q23 − q02 q13 + q03 q12
    let a = f.mul(&q[0], &q[5]);
    let b = f.mul(&q[1], &q[4]);
    let c = f.mul(&q[2], &q[3]);
    f.add(&f.sub(&a, &b), &c)
}

/// The conic cut on the lines of P(v4) by a three-hyperplane section: the
/// Gr(2,4) quadric restricted to the solution space of the covectors.
pub fn conic_in_envelope<F: Field>(v4: &Subspace<F>, sec: &SectionModel<F>) -> Result<ConicReport<F>> {
    if sec.len() != 3 {
        return Err(Error::InvalidInput(format!("conic needs a section by 3 hyperplanes, got {}", sec.len())));
    }
    let f = sec.field();
    let r = envelope_restriction(v4, sec)?;
    if r.rank() != 3 {
        return Err(Error::NonGenericEnvelope);
    }
    let ker = r.kernel();
    let k: Vec<Vec<F::Elem>> = ker.basis_vecs();
    let add = |a: &[F::Elem], b: &[F::Elem]| -> Vec<F::Elem> { a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect() };
    let mut terms = Vec::new();
    let mut sym = Mat::zeros(f, 3, 3);
    for i in 0..3 {
        for j in i..3 {
            let c = if i == j {
                gr24_quadric(f, &k[i])
            } else {
                let s = gr24_quadric(f, &add(&k[i], &k[j]));
                f.sub(&f.sub(&s, &gr24_quadric(f, &k[i])), &gr24_quadric(f, &k[j]))
            };
            let mut e = vec![0u32; 3];
            e[i] += 1;
            e[j] += 1;
            terms.push((c.clone(), e));
            // 2·(symmetric matrix) so no division is needed.
            if i == j {
                sym.set(i, i, f.add(&c, &c));
            } else {
                sym.set(i, j, c.clone());
                sym.set(j, i, c);
            }
        }
    }
    Ok(ConicReport { form: MPoly::from_terms(f, 3, terms), rank: sym.rank(), solution_basis: ker.basis().clone() })
}

/// The linear span of σ₂,₀(ℓ) inside ∧²C⁵ and its three defining quadrics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisLocusModel<F: Field> {
    pub line: Subspace<F>,
    /// Rows g₀..g₄: g₀, g₁ span ℓ, the rest complete a basis.
    pub frame: Mat<F>,
    /// Frame pairs (i, j) spanning the 7-dimensional span.
    pub span_pairs: Vec<(usize, usize)>,
    pub span: Subspace<F>,
    /// Quadrics in the ten Plücker coordinates cutting σ₂,₀(ℓ) out of its span.
    pub quadrics: Vec<MPoly<F>>,
    /// Section covectors evaluated on the frame basis of the span (one row per hyperplane).
    pub section_restrictions: Mat<F>,
}

/// Frame pairs outside the span of σ₂,₀(⟨g₀,g₁⟩).
const OFF_SPAN: [(usize, usize); 3] = [(2, 3), (2, 4), (3, 4)];

pub fn axis_locus_model<F: Field>(l: &Subspace<F>, sec: &SectionModel<F>) -> Result<AxisLocusModel<F>> {
    check_dim(l, 2)?;
    check_field(l, sec)?;
    let f = sec.field();
    let mut rows = l.basis_vecs();
    for i in l.complement_indices() {
        let mut e = vec![f.zero(); 5];
        e[i] = f.one();
        rows.push(e);
    }
    let frame = Mat::from_rows(f, 5, rows)?;
    let w = wedge2_matrix(&frame);
    let winv = w.inverse().expect("frame is invertible");
    let span_pairs: Vec<(usize, usize)> = PAIRS.iter().copied().filter(|p| !OFF_SPAN.contains(p)).collect();
    let span_rows: Vec<Vec<F::Elem>> = span_pairs.iter().map(|&(i, j)| w.row(pair_index(i, j)).to_vec()).collect();
    let span = Subspace::span(f, 10, span_rows.clone())?;
    // Frame coordinate y_ij as a linear form in the Plücker coordinates x.
    let y = |i: usize, j: usize| -> MPoly<F> {
        let col = pair_index(i, j);
        MPoly::linear(f, &(0..10).map(|r| winv.get(r, col).clone()).collect::<Vec<_>>())
    };
    let quadrics = [(2, 3), (2, 4), (3, 4)]
        .iter()
        .map(|&(a, b)| y(0, a).mul(&y(1, b)).sub(&y(0, b).mul(&y(1, a))))
        .collect();
    let restr_rows =
        sec.hyperplanes().iter().map(|h| span_rows.iter().map(|q| covector_eval(f, h, q)).collect()).collect();
    let section_restrictions = Mat::from_rows(f, 7, restr_rows)?;
    Ok(AxisLocusModel { line: l.clone(), frame, span_pairs, span, quadrics, section_restrictions })
}

impl<F: Field> AxisLocusModel<F> {
    /// The quadrics in span coordinates (the seven frame pairs), which do
    /// not depend on ℓ: minors of [[y02,y03,y04],[y12,y13,y14]].
    pub fn span_quadrics(&self) -> Vec<MPoly<F>> {
        let f = self.line.field();
        let idx = |i: usize, j: usize| self.span_pairs.iter().position(|&p| p == (i, j)).unwrap();
        let y = |i, j| MPoly::var(f, 7, idx(i, j));
        [(2, 3), (2, 4), (3, 4)].iter().map(|&(a, b)| y(0, a).mul(&y(1, b)).sub(&y(0, b).mul(&y(1, a)))).collect()
    }
}

/// A line of P⁴ as a pencil: vertex V₁ inside a plane V₃.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineFlag<F: Field> {
    pub vertex: Subspace<F>,
    pub plane: Subspace<F>,
}

impl<F: Field> LineFlag<F> {
    pub fn new(vertex: Subspace<F>, plane: Subspace<F>) -> Result<Self> {
        check_dim(&vertex, 1)?;
        check_dim(&plane, 3)?;
        if !plane.contains_subspace(&vertex) {
            return Err(Error::InvalidInput("vertex does not lie in the plane".into()));
        }
        Ok(LineFlag { vertex, plane })
    }

    /// Frame v₀ ∈ V₁, v₁,v₂ completing V₃, v₃,v₄ completing C⁵.
    pub fn frame(&self) -> [Vec<F::Elem>; 5] {
        let f = self.vertex.field();
        let v0 = self.vertex.vector(0).to_vec();
        let mut chosen = self.vertex.clone();
        let mut out = vec![v0];
        for i in 0..3 {
            let v = self.plane.vector(i);
            if !chosen.contains(v) {
                chosen = chosen.sum(&Subspace::span(f, 5, vec![v.to_vec()]).unwrap()).unwrap();
                out.push(v.to_vec());
            }
        }
        for i in 0..5 {
            let mut e = vec![f.zero(); 5];
            e[i] = f.one();
            if !chosen.contains(&e) {
                chosen = chosen.sum(&Subspace::span(f, 5, vec![e.clone()]).unwrap()).unwrap();
                out.push(e);
            }
        }
        out.try_into().expect("five frame vectors")
    }

    /// The pencil as a curve family with rows v₀ and s·v₁ + t·v₂.
    pub fn family(&self) -> Result<CurveFamily<F>> {
        let f = self.vertex.field();
        let [v0, v1, v2, _, _] = self.frame();
        let row0 = v0.iter().map(|c| BinForm::constant(f, c.clone())).collect();
        let row1 = (0..5).map(|c| BinForm::linear(f, v1[c].clone(), v2[c].clone())).collect();
        CurveFamily::from_rows(f, row0, row1)
    }
}

/// The differential of the section equations along the normal directions
/// of the line, as a graded map. Sources have degrees [1, 0, 0, 1, 1]:
/// moving the vertex inside V₃, moving the vertex along v₃ and v₄, and
/// tilting the plane towards v₃ and v₄. Targets are O(1), one per
/// hyperplane.
pub fn normal_bundle_map<F: Field>(z: &LineFlag<F>, sec: &SectionModel<F>) -> Result<PolyMat<F>> {
    check_field(&z.vertex, sec)?;
    let fam = z.family()?;
    if !curve_in_section(&fam, sec) {
        return Err(Error::NotInSection);
    }
    let f = sec.field();
    let v = z.frame();
    let rows = sec
        .forms()
        .iter()
        .map(|w| {
            let o = |i: usize, j: usize| w.pair(&v[i], &v[j]);
            vec![
                BinForm::constant(f, o(1, 2)),
                BinForm::linear(f, o(3, 1), o(3, 2)),
                BinForm::linear(f, o(4, 1), o(4, 2)),
                BinForm::constant(f, o(0, 3)),
                BinForm::constant(f, o(0, 4)),
            ]
        })
        .collect();
    PolyMat::new(f, 5, rows)
}

pub const NORMAL_SOURCE_DEGREES: [i64; 5] = [1, 0, 0, 1, 1];

/// Splitting type of the normal bundle of a line inside the section.
pub fn normal_bundle_splitting<F: Field>(z: &LineFlag<F>, sec: &SectionModel<F>) -> Result<SplittingType> {
    let m = normal_bundle_map(z, sec)?;
    let targets = vec![1; sec.len()];
    let st = graded_kernel_splitting(&m, &NORMAL_SOURCE_DEGREES, &targets)?;
    debug_assert_eq!(st.rank(), 5 - sec.len());
    debug_assert_eq!(st.degree_sum(), 3 - sec.len() as i64);
    Ok(st)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binform::split_cohomology;

    fn f() -> Rationals {
        Rationals
    }
    fn span(rows: &[Vec<i64>]) -> Subspace<Rationals> {
        Subspace::from_i64(&f(), 5, rows).unwrap()
    }
    fn pt(v: &[i64]) -> Subspace<Rationals> {
        span(&[v.to_vec()])
    }

    #[test]
    fn vertex_fiber_examples() {
        assert_eq!(vertex_fiber(&pt(&[3, 1, 4, 1, 5]), &SectionModel::y6()).unwrap().k, 4);
        let r = vertex_fiber(&pt(&[0, 1, 0, 0, 0]), &SectionModel::y4()).unwrap();
        assert_eq!((r.k, r.interpretation), (2, FiberKind::UniquePoint));
        assert_eq!(r.basis, Subspace::coordinate(&f(), 5, &[0, 1, 4]));
        let flag = LineFlag::new(pt(&[0, 1, 0, 0, 0]), r.basis.clone()).unwrap();
        assert!(curve_in_section(&flag.family().unwrap(), &SectionModel::y4()));
        let r = vertex_fiber(&pt(&[1, 0, 0, 0, 0]), &SectionModel::y4()).unwrap();
        assert_eq!((r.k, r.interpretation), (3, FiberKind::ProjSpace(2)));
    }

    #[test]
    fn plane_fiber_examples() {
        let r = plane_fiber(&Subspace::coordinate(&f(), 5, &[0, 1, 2]), &SectionModel::y5()).unwrap();
        assert_eq!(r.interpretation, FiberKind::UniquePoint);
        assert_eq!(r.basis, pt(&[1, 0, 0, 0, 0]));
        let pi = Subspace::coordinate(&f(), 5, &[0, 1, 4]);
        assert_eq!(plane_fiber(&pi, &SectionModel::y5()).unwrap().interpretation, FiberKind::ProjSpace(2));
        assert_eq!(plane_fiber(&pi, &SectionModel::y4()).unwrap().interpretation, FiberKind::ProjSpace(2));
        assert!(plane_fiber(&pi, &SectionModel::y6()).is_err());
    }

    #[test]
    fn sigma31_examples() {
        let r = sigma31_planes_at(&pt(&[0, 1, 0, 0, 0]), &SectionModel::y5()).unwrap();
        assert_eq!(r.interpretation, FiberKind::UniquePoint);
        assert_eq!(r.basis, Subspace::coordinate(&f(), 5, &[0, 1, 3, 4]));
        let r = sigma31_planes_at(&pt(&[0, 0, 0, 0, 1]), &SectionModel::y5()).unwrap();
        assert_eq!(r.interpretation, FiberKind::GrassmannFiber(3, 4));
        assert_eq!(r.interpretation.dimension(), Some(3));
        let r = sigma31_planes_at(&pt(&[1, 0, 0, 0, 0]), &SectionModel::y4()).unwrap();
        assert_eq!(r.interpretation, FiberKind::UniquePoint);
    }

    #[test]
    fn sigma22_examples() {
        let pi = Subspace::coordinate(&f(), 5, &[0, 1, 4]);
        assert!(is_sigma22_plane(&pi, &SectionModel::y4()).unwrap());
        assert!(!is_sigma22_plane(&Subspace::coordinate(&f(), 5, &[0, 1, 2]), &SectionModel::y4()).unwrap());
        assert!(is_sigma22_plane(&pi, &SectionModel::y5()).unwrap());
    }

    #[test]
    fn conic_of_coordinate_envelope() {
        let v4 = Subspace::coordinate(&f(), 5, &[0, 1, 2, 3]);
        let c = conic_in_envelope(&v4, &SectionModel::y3()).unwrap();
        assert_eq!(c.rank, 3);
        let names: Vec<String> = ["x0", "x1", "x2"].iter().map(|s| s.to_string()).collect();
        assert_eq!(c.form.format(&names), "x0*x2 + x1^2");
    }

    #[test]
    fn dependent_envelope_is_reported() {
        let sec = SectionModel::new(
            &f(),
            "custom",
            vec![covector(&f(), &[(0, 1, 1)]), covector(&f(), &[(0, 2, 1)]), covector(&f(), &[(3, 4, 1)])],
        )
        .unwrap();
        let v4 = Subspace::coordinate(&f(), 5, &[1, 2, 3, 4]);
        assert_eq!(conic_in_envelope(&v4, &sec), Err(Error::NonGenericEnvelope));
    }

    #[test]
    fn axis_model_of_coordinate_line() {
        let l = Subspace::coordinate(&f(), 5, &[0, 1]);
        let m = axis_locus_model(&l, &SectionModel::y3()).unwrap();
        assert_eq!(m.span.dim(), 7);
        let off: Vec<usize> = (0..10).filter(|&k| !m.span.contains(&unit(k))).collect();
        assert_eq!(off, vec![pair_index(2, 3), pair_index(2, 4), pair_index(3, 4)]);
        let names: Vec<String> = (0..10).map(crate::grassmann::pair_label).collect();
        let q: Vec<String> = m.quadrics.iter().map(|q| q.format(&names)).collect();
        assert_eq!(q, vec!["p02*p13 - p03*p12", "p02*p14 - p04*p12", "p03*p14 - p04*p13"]);
    }

    fn unit(k: usize) -> Vec<Q> {
        let mut v = vec![f().zero(); 10];
        v[k] = f().one();
        v
    }

    #[test]
    fn normal_bundles() {
        // The line with vertex e0 in ⟨e0,e1,e2⟩ lies in Y5.
        let z = LineFlag::new(pt(&[1, 0, 0, 0, 0]), Subspace::coordinate(&f(), 5, &[0, 1, 2])).unwrap();
        let st = normal_bundle_splitting(&z, &SectionModel::y5()).unwrap();
        assert_eq!(split_cohomology(&st), (6, 0));
        assert_eq!(normal_bundle_splitting(&z, &SectionModel::y6()).unwrap().degrees(), &[1, 1, 1, 0, 0]);
        let pi = Subspace::coordinate(&f(), 5, &[0, 1, 4]);
        let off = LineFlag::new(pt(&[1, 0, 0, 0, 1]), pi.clone()).unwrap();
        assert_eq!(normal_bundle_splitting(&off, &SectionModel::y4()).unwrap().degrees(), &[1, 0, 0]);
        let on = LineFlag::new(pt(&[1, 1, 0, 0, -1]), pi).unwrap();
        assert_eq!(normal_bundle_splitting(&on, &SectionModel::y4()).unwrap().degrees(), &[1, 1, -1]);
        let outside = LineFlag::new(pt(&[0, 1, 0, 0, 0]), Subspace::coordinate(&f(), 5, &[1, 2, 3])).unwrap();
        assert_eq!(normal_bundle_splitting(&outside, &SectionModel::y4()), Err(Error::NotInSection));
    }

    #[test]
    fn presets_and_reduction() {
        assert_eq!(SectionModel::y2(None).unwrap().len(), 4);
        assert!(SectionModel::preset("Y7", None).is_err());
        let half = vec![Q::new(1.into(), 2.into()); 10];
        let sec = SectionModel::new(&f(), "half", vec![half]).unwrap();
        assert_eq!(sec.reduce_mod(2), Err(Error::BadReduction(2)));
        assert!(sec.reduce_mod(3).is_ok());
    }
}
