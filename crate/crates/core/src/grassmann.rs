//! Plücker coordinates on Gr(2,5), incidence, skew forms attached to
//! hyperplanes of ∧²C⁵, and Schubert cycles for a fixed flag.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{dot, Mat, Subspace};
use crate::random::{self, Rng};

/// Index pairs of the Plücker coordinates, in coordinate order.
pub const PAIRS: [(usize, usize); 10] =
    [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

/// Position of p_ij (i ≠ j, either order) in the coordinate vector.
pub fn pair_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    PAIRS.iter().position(|&p| p == (a, b)).expect("indices below 5 and distinct")
}

pub fn pair_label(k: usize) -> String {
    let (i, j) = PAIRS[k];
    format!("p{i}{j}")
}

/// The 4-element index sets, ordered lexicographically; ∧⁴C⁵ coordinates.
pub const QUADS: [[usize; 4]; 5] = [[0, 1, 2, 3], [0, 1, 2, 4], [0, 1, 3, 4], [0, 2, 3, 4], [1, 2, 3, 4]];

/// Raw coordinates of a ∧ b: p_ij = a_i b_j − a_j b_i.
pub fn wedge2<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    PAIRS.iter().map(|&(i, j)| f.sub(&f.mul(&a[i], &b[j]), &f.mul(&a[j], &b[i]))).collect()
}

/// Raw coordinates of p ∧ q ∈ ∧⁴C⁵ for p, q ∈ ∧²C⁵.
pub fn wedge4<F: Field>(f: &F, p: &[F::Elem], q: &[F::Elem]) -> Vec<F::Elem> {
    let x = |v: &[F::Elem], i: usize, j: usize| v[pair_index(i, j)].clone();
    QUADS
        .iter()
        .map(|&[i, j, k, l]| {
            let terms = [
                (false, x(p, i, j), x(q, k, l)),
                (true, x(p, i, k), x(q, j, l)),
                (false, x(p, i, l), x(q, j, k)),
                (false, x(p, j, k), x(q, i, l)),
                (true, x(p, j, l), x(q, i, k)),
                (false, x(p, k, l), x(q, i, j)),
            ];
            terms.iter().fold(f.zero(), |acc, (neg, a, b)| {
                let m = f.mul(a, b);
                if *neg {
                    f.sub(&acc, &m)
                } else {
                    f.add(&acc, &m)
                }
            })
        })
        .collect()
}

/// The five Plücker quadrics p_ij p_kl − p_ik p_jl + p_il p_jk evaluated at v,
/// one per entry of [`QUADS`].
pub fn plucker_relations<F: Field>(f: &F, v: &[F::Elem]) -> Vec<F::Elem> {
    let x = |i: usize, j: usize| &v[pair_index(i, j)];
    QUADS
        .iter()
        .map(|&[i, j, k, l]| {
            let a = f.mul(x(i, j), x(k, l));
            let b = f.mul(x(i, k), x(j, l));
            let c = f.mul(x(i, l), x(j, k));
            f.add(&f.sub(&a, &b), &c)
        })
        .collect()
}

pub fn is_decomposable<F: Field>(f: &F, v: &[F::Elem]) -> bool {
    plucker_relations(f, v).iter().all(|x| f.is_zero(x))
}

/// A point of P(∧²C⁵), canonically scaled.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlueckerVector<F: Field> {
    field: F,
    coords: Vec<F::Elem>,
}

impl<F: Field> PlueckerVector<F> {
    pub fn new(field: &F, coords: Vec<F::Elem>) -> Result<Self> {
        if coords.len() != 10 {
            return Err(Error::DimensionMismatch(format!("{} Plücker coordinates", coords.len())));
        }
        if coords.iter().all(|c| field.is_zero(c)) {
            return Err(Error::InvalidInput("zero Plücker vector".into()));
        }
        Ok(PlueckerVector { field: field.clone(), coords: field.normalize_projective(&coords) })
    }

    pub fn coords(&self) -> &[F::Elem] {
        &self.coords
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn format(&self) -> Vec<String> {
        self.coords.iter().map(|c| self.field.format(c)).collect()
    }
}

fn expect_dim<F: Field>(v: &Subspace<F>, dim: usize) -> Result<()> {
    if v.ambient() != 5 {
        return Err(Error::DimensionMismatch(format!("ambient dimension {} instead of 5", v.ambient())));
    }
    if v.dim() != dim {
        return Err(Error::WrongDimension { expected: dim, found: v.dim() });
    }
    Ok(())
}

pub(crate) fn check_dim<F: Field>(v: &Subspace<F>, dim: usize) -> Result<()> {
    expect_dim(v, dim)
}

pub fn pluecker_embed<F: Field>(plane: &Subspace<F>) -> Result<PlueckerVector<F>> {
    expect_dim(plane, 2)?;
    let f = plane.field();
    PlueckerVector::new(f, wedge2(f, plane.vector(0), plane.vector(1)))
}

/// Recover the 2-plane of a decomposable vector.
pub fn pluecker_split<F: Field>(v: &PlueckerVector<F>) -> Result<Subspace<F>> {
    let f = &v.field;
    let c = &v.coords;
    if !is_decomposable(f, c) {
        return Err(Error::NotDecomposable);
    }
    let k = c.iter().position(|x| !f.is_zero(x)).expect("nonzero");
    let (i, j) = PAIRS[k];
    // u_m = p_im, w_m = p_jm satisfy u ∧ w = p_ij · v.
    let row = |a: usize| -> Vec<F::Elem> {
        (0..5)
            .map(|m| match m.cmp(&a) {
                std::cmp::Ordering::Equal => f.zero(),
                std::cmp::Ordering::Greater => c[pair_index(a, m)].clone(),
                std::cmp::Ordering::Less => f.neg(&c[pair_index(m, a)]),
            })
            .collect()
    };
    let s = Subspace::span(f, 5, vec![row(i), row(j)])?;
    debug_assert_eq!(s.dim(), 2);
    Ok(s)
}

/// Whether two lines of P⁴ meet.
pub fn lines_incident<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Result<bool> {
    expect_dim(a, 2)?;
    expect_dim(b, 2)?;
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let f = a.field();
    let p = wedge2(f, a.vector(0), a.vector(1));
    let q = wedge2(f, b.vector(0), b.vector(1));
    Ok(wedge4(f, &p, &q).iter().all(|x| f.is_zero(x)))
}

/// Value of a hyperplane covector on a vector of ∧²C⁵.
pub fn covector_eval<F: Field>(f: &F, h: &[F::Elem], p: &[F::Elem]) -> F::Elem {
    dot(f, h, p)
}

/// Induced action on ∧²: with the row convention v ↦ v·g on C⁵, a Plücker
/// vector transforms as p ↦ p·W where W is returned here.
pub fn wedge2_matrix<F: Field>(g: &Mat<F>) -> Mat<F> {
    let f = g.field();
    let mut w = Mat::zeros(f, 10, 10);
    for (r, &(i, j)) in PAIRS.iter().enumerate() {
        let row = wedge2(f, g.row(i), g.row(j));
        for (c, x) in row.into_iter().enumerate() {
            w.set(r, c, x);
        }
    }
    w
}

/// Antisymmetric bilinear form on C⁵.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewForm<F: Field> {
    omega: Mat<F>,
}

/// Rank and kernel of a skew form (or a family of them) restricted to a subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewRestriction<F: Field> {
    pub rank: usize,
    pub kernel: Subspace<F>,
}

impl<F: Field> SkewForm<F> {
    pub fn new(omega: Mat<F>) -> Result<Self> {
        let f = omega.field().clone();
        if omega.nrows() != 5 || omega.ncols() != 5 {
            return Err(Error::DimensionMismatch("skew form must be 5x5".into()));
        }
        for i in 0..5 {
            for j in 0..5 {
                if *omega.get(i, j) != f.neg(omega.get(j, i)) {
                    return Err(Error::InvalidInput("matrix is not antisymmetric".into()));
                }
            }
        }
        Ok(SkewForm { omega })
    }

    /// Ω with Ω_ij = h_ij for i < j and Ω_ji = −h_ij.
    pub fn from_covector(f: &F, h: &[F::Elem]) -> Result<Self> {
        if h.len() != 10 {
            return Err(Error::DimensionMismatch(format!("covector of length {}", h.len())));
        }
        let mut omega = Mat::zeros(f, 5, 5);
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            omega.set(i, j, h[k].clone());
            omega.set(j, i, f.neg(&h[k]));
        }
        Ok(SkewForm { omega })
    }

    pub fn to_covector(&self) -> Vec<F::Elem> {
        PAIRS.iter().map(|&(i, j)| self.omega.get(i, j).clone()).collect()
    }

    pub fn matrix(&self) -> &Mat<F> {
        &self.omega
    }

    pub fn field(&self) -> &F {
        self.omega.field()
    }

    /// xᵀ Ω y.
    pub fn pair(&self, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
        let f = self.field();
        let oy = self.omega.apply(y).expect("length 5");
        dot(f, x, &oy)
    }

    /// Gram matrix B Ω Bᵀ on the RREF basis B of `v`.
    pub fn gram(&self, v: &Subspace<F>) -> Mat<F> {
        let b = v.basis();
        b.mul(&self.omega).and_then(|m| m.mul(&b.transpose())).expect("compatible shapes")
    }

    /// Covector x ↦ Ω(p, x) as a row.
    pub fn contract(&self, p: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        (0..5).map(|j| dot(f, p, &(0..5).map(|i| self.omega.get(i, j).clone()).collect::<Vec<_>>())).collect()
    }

    /// Transform contragrediently to v ↦ v·g: the new form Ω' satisfies
    /// Ω'(x g, y g) = Ω(x, y).
    pub fn transform(&self, g: &Mat<F>) -> Result<Self> {
        let gi = g.inverse().ok_or_else(|| Error::InvalidInput("change of basis is singular".into()))?;
        let omega = gi.mul(&self.omega)?.mul(&gi.transpose())?;
        Ok(SkewForm { omega })
    }
}

pub fn hyperplane_to_skew<F: Field>(f: &F, h: &[F::Elem]) -> Result<SkewForm<F>> {
    SkewForm::from_covector(f, h)
}

/// Common kernel of several skew forms restricted to `v`, and the rank of
/// the stacked Gram matrices.
pub fn skew_restrict_all<F: Field>(forms: &[SkewForm<F>], v: &Subspace<F>) -> Result<SkewRestriction<F>> {
    let f = v.field();
    let k = v.dim();
    let mut stacked = Mat::zeros(f, 0, k);
    for form in forms {
        if form.field() != f {
            return Err(Error::FieldMismatch);
        }
        stacked = stacked.stack(&form.gram(v))?;
    }
    if k == 0 {
        return Ok(SkewRestriction { rank: 0, kernel: Subspace::zero(f, v.ambient()) });
    }
    let coords = stacked.kernel();
    let vecs = coords.basis_vecs().iter().map(|c| v.combine(c)).collect();
    Ok(SkewRestriction { rank: stacked.rank(), kernel: Subspace::span(f, v.ambient(), vecs)? })
}

pub fn skew_restrict<F: Field>(form: &SkewForm<F>, v: &Subspace<F>) -> Result<SkewRestriction<F>> {
    if v.ambient() != 5 {
        return Err(Error::DimensionMismatch("skew forms live on C^5".into()));
    }
    skew_restrict_all(std::slice::from_ref(form), v)
}

/// Incidence condition of a Schubert cycle relative to the standard flag
/// ⟨e₀⟩ ⊂ ⟨e₀,e₁⟩ ⊂ ⟨e₀,e₁,e₂⟩ ⊂ ⟨e₀,…,e₃⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FlagCondition {
    /// The line meets ⟨e₀,…,e_{k−1}⟩.
    Meets(usize),
    /// The line lies in ⟨e₀,…,e_{k−1}⟩.
    ContainedIn(usize),
    /// The line passes through e₀.
    ContainsPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SchubertDatum {
    pub label: (u32, u32),
    pub dim: u32,
    pub deg: u32,
    pub conditions: Vec<FlagCondition>,
}

impl SchubertDatum {
    pub fn name(&self) -> String {
        format!("sigma{}{}", self.label.0, self.label.1)
    }

    pub fn satisfies<F: Field>(&self, line: &Subspace<F>) -> bool {
        let f = line.field();
        self.conditions.iter().all(|c| match *c {
            FlagCondition::Meets(k) => {
                let flag = Subspace::coordinate(f, 5, &(0..k).collect::<Vec<_>>());
                line.meet(&flag).map(|m| m.dim() >= 1).unwrap_or(false)
            }
            FlagCondition::ContainedIn(k) => {
                Subspace::coordinate(f, 5, &(0..k).collect::<Vec<_>>()).contains_subspace(line)
            }
            FlagCondition::ContainsPoint => {
                let mut e0 = vec![f.zero(); 5];
                e0[0] = f.one();
                line.contains(&e0)
            }
        })
    }
}

/// The eight Schubert cycles of Gr(2,5) with their dimensions and degrees.
pub fn schubert_table() -> Vec<SchubertDatum> {
    use FlagCondition::*;
    let d = |a, b, dim, deg, conditions: Vec<FlagCondition>| SchubertDatum { label: (a, b), dim, deg, conditions };
    vec![
        d(1, 0, 5, 5, vec![Meets(3)]),
        d(2, 0, 4, 3, vec![Meets(2)]),
        d(1, 1, 4, 2, vec![ContainedIn(4)]),
        d(2, 1, 3, 2, vec![Meets(2), ContainedIn(4)]),
        d(3, 0, 3, 1, vec![ContainsPoint]),
        d(2, 2, 2, 1, vec![ContainedIn(3)]),
        d(3, 1, 2, 1, vec![ContainsPoint, ContainedIn(4)]),
        d(3, 2, 1, 1, vec![ContainsPoint, ContainedIn(3)]),
    ]
}

pub fn schubert_by_label(a: u32, b: u32) -> Option<SchubertDatum> {
    schubert_table().into_iter().find(|d| d.label == (a, b))
}

/// A random vector of ⟨e₀,…,e_{k−1}⟩.
fn vector_in<F: Field>(f: &F, k: usize, rng: &mut Rng) -> Vec<F::Elem> {
    let mut v = random::vector(f, k, rng);
    v.resize(5, f.zero());
    v
}

/// A random point of the cycle (generic within the cycle with high probability).
pub fn schubert_sample_with<F: Field>(f: &F, d: &SchubertDatum, rng: &mut Rng) -> Subspace<F> {
    let container = d
        .conditions
        .iter()
        .filter_map(|c| if let FlagCondition::ContainedIn(k) = c { Some(*k) } else { None })
        .min()
        .unwrap_or(5);
    loop {
        let u = if d.conditions.contains(&FlagCondition::ContainsPoint) {
            let mut e0 = vec![f.zero(); 5];
            e0[0] = f.one();
            e0
        } else {
            let k = d
                .conditions
                .iter()
                .filter_map(|c| if let FlagCondition::Meets(k) = c { Some(*k) } else { None })
                .min()
                .unwrap_or(container);
            vector_in(f, k, rng)
        };
        let w = vector_in(f, container, rng);
        let s = Subspace::span(f, 5, vec![u, w]).expect("length 5");
        if s.dim() == 2 && d.satisfies(&s) {
            return s;
        }
    }
}

pub fn schubert_sample(d: &SchubertDatum, seed: u64) -> Subspace<crate::field::Rationals> {
    schubert_sample_with(&crate::field::Rationals, d, &mut random::rng(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rationals, Q};

    fn f() -> Rationals {
        Rationals
    }
    fn qv(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| f().from_i64(x)).collect()
    }
    fn span(rows: &[Vec<i64>]) -> Subspace<Rationals> {
        Subspace::from_i64(&f(), 5, rows).unwrap()
    }

    #[test]
    fn embed_examples() {
        let l = span(&[vec![1, 0, 0, 0, 0], vec![0, 1, 0, 0, 0]]);
        assert_eq!(pluecker_embed(&l).unwrap().coords(), qv(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0]).as_slice());
        let l = span(&[vec![1, 0, 0, 0, 0], vec![0, 1, 1, 0, 0]]);
        assert_eq!(pluecker_embed(&l).unwrap().coords(), qv(&[1, 1, 0, 0, 0, 0, 0, 0, 0, 0]).as_slice());
        let p = span(&[vec![1, 0, 0, 0, 0]]);
        assert_eq!(pluecker_embed(&p), Err(Error::WrongDimension { expected: 2, found: 1 }));
    }

    #[test]
    fn split_examples() {
        let v = PlueckerVector::new(&f(), qv(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0])).unwrap();
        assert_eq!(pluecker_split(&v).unwrap(), span(&[vec![1, 0, 0, 0, 0], vec![0, 1, 0, 0, 0]]));
        let v = PlueckerVector::new(&f(), qv(&[1, 0, 0, 0, 0, 0, 0, 1, 0, 0])).unwrap();
        assert_eq!(pluecker_split(&v), Err(Error::NotDecomposable));
    }

    #[test]
    fn incidence_examples() {
        let a = span(&[vec![1, 0, 0, 0, 0], vec![0, 1, 0, 0, 0]]);
        let b = span(&[vec![1, 0, 0, 0, 0], vec![0, 0, 1, 0, 0]]);
        let c = span(&[vec![0, 0, 1, 0, 0], vec![0, 0, 0, 1, 0]]);
        assert!(lines_incident(&a, &b).unwrap());
        assert!(!lines_incident(&a, &c).unwrap());
    }

    #[test]
    fn skew_form_of_first_hyperplane() {
        let mut h = qv(&[0; 10]);
        h[pair_index(1, 2)] = f().from_i64(1);
        h[pair_index(0, 3)] = f().from_i64(-1);
        let w = hyperplane_to_skew(&f(), &h).unwrap();
        let full = skew_restrict(&w, &Subspace::full(&f(), 5)).unwrap();
        assert_eq!(full.rank, 4);
        assert_eq!(full.kernel, span(&[vec![0, 0, 0, 0, 1]]));
        let v4 = Subspace::coordinate(&f(), 5, &[0, 1, 2, 4]);
        assert_eq!(skew_restrict(&w, &v4).unwrap().rank, 2);
        let v3 = Subspace::coordinate(&f(), 5, &[0, 1, 4]);
        let r = skew_restrict(&w, &v3).unwrap();
        assert_eq!((r.rank, r.kernel.dim()), (0, 3));
        assert_eq!(w.to_covector(), h);
    }

    #[test]
    fn schubert_table_values() {
        let t = schubert_table();
        assert_eq!(t.len(), 8);
        let s20 = schubert_by_label(2, 0).unwrap();
        assert_eq!((s20.dim, s20.deg), (4, 3));
        let s11 = schubert_by_label(1, 1).unwrap();
        assert_eq!((s11.dim, s11.deg), (4, 2));
        let s30 = schubert_by_label(3, 0).unwrap();
        let e0 = qv(&[1, 0, 0, 0, 0]);
        for seed in 0..20 {
            let l = schubert_sample(&s30, seed);
            assert!(l.contains(&e0));
        }
    }
}
