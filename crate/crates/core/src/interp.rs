//! Interpolation of vanishing forms on sampled loci.
//!
//! A [`Sampler`] produces exact points on a locus from a seed; the forms of a
//! given degree vanishing at all of them are the kernel of the evaluation
//! matrix. Results are re-checked on a fresh batch drawn with another seed.

use rayon::prelude::*;
use serde::Serialize;

use crate::curves::CurveFamily;
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::grassmann::{pair_index, schubert_sample_with, wedge2, SchubertDatum, QUADS};
use crate::linalg::{dot, Mat, Subspace};
use crate::poly::{monomials, MPoly};
use crate::random::{self, Rng};
use crate::sections::SectionModel;

/// Seed offset for the confirmation batch.
const FRESH_SEED_XOR: u64 = 0x9e37_79b9_7f4a_7c15;

pub const MAX_DEGREE: u32 = 3;

#[derive(Clone, Debug)]
pub enum Locus<F: Field> {
    /// Plücker images of random 2-planes.
    Gr25,
    /// Lines meeting a fixed line.
    Sigma20(Subspace<F>),
    Schubert(SchubertDatum),
    Curve(CurveFamily<F>),
    /// Points spanning the kernel of a random combination of the section
    /// forms, restricted to the listed coordinates. These are the vertices
    /// with more lines than expected (a pencil) or of any line (a net).
    Degeneracy { section: SectionModel<F>, coords: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct Sampler<F: Field> {
    pub field: F,
    pub locus: Locus<F>,
    pub seed: u64,
}

pub const LOCUS_NAMES: [&str; 4] = ["sigma20", "c0", "y3-vertex", "gr25"];

impl Sampler<Rationals> {
    /// Named loci: lines meeting ⟨e₀,e₁⟩, the conic of special vertices of
    /// Y4 in the coordinates (0,1,4) of its plane, the vertex surface of Y3,
    /// and Gr(2,5) itself.
    pub fn named(name: &str, seed: u64) -> Result<Self> {
        let f = Rationals;
        let locus = match name {
            "sigma20" => Locus::Sigma20(Subspace::coordinate(&f, 5, &[0, 1])),
            "c0" => Locus::Degeneracy { section: SectionModel::y4(), coords: vec![0, 1, 4] },
            "y3-vertex" => Locus::Degeneracy { section: SectionModel::y3(), coords: (0..5).collect() },
            "gr25" => Locus::Gr25,
            _ => return Err(Error::InvalidInput(format!("unknown locus {name:?}"))),
        };
        Ok(Sampler { field: f, locus, seed })
    }
}

impl<F: Field> Sampler<F> {
    pub fn new(field: &F, locus: Locus<F>, seed: u64) -> Self {
        Sampler { field: field.clone(), locus, seed }
    }

    /// Number of homogeneous coordinates of the ambient space.
    pub fn nvars(&self) -> usize {
        match &self.locus {
            Locus::Degeneracy { coords, .. } => coords.len(),
            _ => 10,
        }
    }

    pub fn sample(&self, rng: &mut Rng) -> Result<Vec<F::Elem>> {
        let f = &self.field;
        Ok(match &self.locus {
            Locus::Gr25 => loop {
                let p = wedge2(f, &random::vector(f, 5, rng), &random::vector(f, 5, rng));
                if p.iter().any(|x| !f.is_zero(x)) {
                    break p;
                }
            },
            Locus::Sigma20(l) => loop {
                let u = l.combine(&random::vector(f, l.dim(), rng));
                let p = wedge2(f, &u, &random::vector(f, 5, rng));
                if p.iter().any(|x| !f.is_zero(x)) {
                    break p;
                }
            },
            Locus::Schubert(d) => {
                let v = schubert_sample_with(f, d, rng);
                wedge2(f, v.vector(0), v.vector(1))
            }
            Locus::Curve(c) => {
                let st = random::nonzero_vector(f, 2, rng);
                c.pluecker_at(&st[0], &st[1])
            }
            Locus::Degeneracy { section, coords } => {
                if section.is_empty() {
                    return Err(Error::InvalidInput("degeneracy locus needs a hyperplane".into()));
                }
                loop {
                    let c = random::nonzero_vector(f, section.len(), rng);
                    let mut m = Mat::zeros(f, 5, 5);
                    for (ci, w) in c.iter().zip(section.forms()) {
                        for i in 0..5 {
                            for j in 0..5 {
                                let x = f.add(m.get(i, j), &f.mul(ci, w.matrix().get(i, j)));
                                m.set(i, j, x);
                            }
                        }
                    }
                    let k = m.kernel();
                    if k.dim() != 1 {
                        continue;
                    }
                    let v = k.vector(0);
                    if (0..5).any(|i| !coords.contains(&i) && !f.is_zero(&v[i])) {
                        return Err(Error::InvalidInput("locus point has nonzero dropped coordinates".into()));
                    }
                    break coords.iter().map(|&i| v[i].clone()).collect();
                }
            }
        })
    }

    pub fn batch(&self, n: usize, seed: u64) -> Result<Vec<Vec<F::Elem>>> {
        let mut rng = random::rng(seed);
        (0..n).map(|_| self.sample(&mut rng)).collect()
    }
}

/// A space of homogeneous forms of one degree, stored as a canonical
/// subspace of coefficient vectors over the graded-lex monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpace<F: Field> {
    pub nvars: usize,
    pub degree: u32,
    pub space: Subspace<F>,
}

impl<F: Field> FormSpace<F> {
    pub fn from_forms(field: &F, nvars: usize, degree: u32, forms: &[MPoly<F>]) -> Result<Self> {
        let vecs = forms.iter().map(|p| p.coeff_vector(degree)).collect::<Result<Vec<_>>>()?;
        let space = Subspace::span(field, monomials(nvars, degree).len(), vecs)?;
        Ok(FormSpace { nvars, degree, space })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn forms(&self) -> Vec<MPoly<F>> {
        let f = self.space.field();
        (0..self.dim()).map(|i| MPoly::from_coeff_vector(f, self.nvars, self.degree, self.space.vector(i))).collect()
    }

    /// The degree-`e` part of the ideal generated by these forms.
    pub fn multiply_up(&self, e: u32) -> Result<Self> {
        if e < self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree as usize, found: e as usize });
        }
        let f = self.space.field();
        let mons = monomials(self.nvars, e - self.degree);
        let mut prods = Vec::new();
        for g in self.forms() {
            for m in &mons {
                prods.push(g.mul(&MPoly::from_terms(f, self.nvars, vec![(f.one(), m.clone())])));
            }
        }
        Self::from_forms(f, self.nvars, e, &prods)
    }
}

fn eval_monomials<F: Field>(f: &F, mons: &[Vec<u32>], x: &[F::Elem], d: u32) -> Vec<F::Elem> {
    let pows: Vec<Vec<F::Elem>> = x
        .iter()
        .map(|xi| {
            let mut v = vec![f.one()];
            for k in 0..d as usize {
                v.push(f.mul(&v[k], xi));
            }
            v
        })
        .collect();
    mons.iter()
        .map(|m| m.iter().enumerate().fold(f.one(), |acc, (i, &e)| f.mul(&acc, &pows[i][e as usize])))
        .collect()
}

/// Evaluation matrix: one row per point, one column per monomial.
pub fn evaluation_matrix<F: Field>(f: &F, nvars: usize, degree: u32, points: &[Vec<F::Elem>]) -> Mat<F> {
    let mons = monomials(nvars, degree);
    let rows: Vec<Vec<F::Elem>> = points.par_iter().map(|x| eval_monomials(f, &mons, x, degree)).collect();
    Mat::from_rows(f, mons.len(), rows).expect("rectangular")
}

/// Forms of degree `degree` vanishing on the sampled locus. With `modulo`,
/// returns a complement of the ideal generated by the known forms: the
/// residues of the vanishing forms that are not already implied.
pub fn vanishing_forms<F: Field>(s: &Sampler<F>, degree: u32, modulo: Option<&FormSpace<F>>) -> Result<FormSpace<F>> {
    if degree > MAX_DEGREE {
        return Err(Error::OutOfScopeDegree(degree as usize));
    }
    let f = &s.field;
    let n = s.nvars();
    let nmons = monomials(n, degree).len();
    let pts = s.batch(2 * nmons, s.seed)?;
    let kernel = evaluation_matrix(f, n, degree, &pts).kernel();

    confirm(f, n, degree, &kernel, &s.batch(4 * nmons, s.seed ^ FRESH_SEED_XOR)?)?;

    let space = match modulo {
        None => kernel,
        Some(known) => {
            if known.nvars != n {
                return Err(Error::DimensionMismatch(format!("known forms in {} variables, locus has {n}", known.nvars)));
            }
            let ideal = known.multiply_up(degree)?.space;
            let residues: Vec<Vec<F::Elem>> = kernel.basis_vecs().iter().map(|v| ideal.reduce(v)).collect();
            Subspace::span(f, nmons, residues)?
        }
    };
    Ok(FormSpace { nvars: n, degree, space })
}

/// Checks that every form of `kernel` vanishes on `points`.
pub fn confirm<F: Field>(f: &F, nvars: usize, degree: u32, kernel: &Subspace<F>, points: &[Vec<F::Elem>]) -> Result<()> {
    let check = evaluation_matrix(f, nvars, degree, points);
    let bad = (0..check.nrows())
        .filter(|&r| (0..kernel.dim()).any(|k| !f.is_zero(&dot(f, check.row(r), kernel.vector(k)))))
        .count();
    if bad > 0 {
        Err(Error::UnstableInterpolation(bad))
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Comparison {
    EqualSpan,
    /// The form space strictly contains the candidates' span.
    Contains,
    /// The form space is strictly contained in the candidates' span.
    ContainedIn,
    Mismatch,
}

pub fn ideal_compare<F: Field>(fs: &FormSpace<F>, candidates: &[MPoly<F>]) -> Result<Comparison> {
    let f = fs.space.field();
    let cand = FormSpace::from_forms(f, fs.nvars, fs.degree, candidates)?;
    let a = fs.space.contains_subspace(&cand.space);
    let b = cand.space.contains_subspace(&fs.space);
    Ok(match (a, b) {
        (true, true) => Comparison::EqualSpan,
        (true, false) => Comparison::Contains,
        (false, true) => Comparison::ContainedIn,
        (false, false) => Comparison::Mismatch,
    })
}

/// The five Plücker quadrics in p₀₁..p₃₄.
pub fn pluecker_quadrics<F: Field>(f: &F) -> Vec<MPoly<F>> {
    let x = |i: usize, j: usize| MPoly::var(f, 10, pair_index(i, j));
    QUADS
        .iter()
        .map(|&[i, j, k, l]| x(i, j).mul(&x(k, l)).sub(&x(i, k).mul(&x(j, l))).add(&x(i, l).mul(&x(j, k))))
        .collect()
}

fn cubic<F: Field>(f: &F, terms: &[(i64, [u32; 5])]) -> MPoly<F> {
    MPoly::from_terms(f, 5, terms.iter().map(|(c, e)| (f.from_i64(*c), e.to_vec())).collect())
}

/// Seven cubics in a₀..a₄ cutting out the vertices of lines on Y3.
pub fn vertex_locus_cubics<F: Field>(f: &F) -> Vec<MPoly<F>> {
    vec![
        cubic(f, &[(1, [0, 1, 1, 1, 0]), (1, [1, 0, 0, 2, 0]), (-1, [0, 0, 2, 0, 1]), (1, [0, 0, 0, 1, 2])]),
        cubic(f, &[(1, [0, 0, 3, 0, 0]), (-1, [0, 1, 0, 2, 0]), (-1, [0, 0, 1, 1, 1])]),
        cubic(f, &[(1, [0, 1, 2, 0, 0]), (1, [1, 0, 1, 1, 0]), (-1, [0, 1, 0, 1, 1])]),
        cubic(f, &[(1, [1, 0, 2, 0, 0]), (1, [0, 2, 0, 1, 0])]),
        cubic(f, &[(1, [0, 2, 1, 0, 0]), (1, [1, 1, 0, 1, 0]), (1, [1, 0, 1, 0, 1])]),
        cubic(f, &[(1, [1, 1, 1, 0, 0]), (1, [2, 0, 0, 1, 0]), (1, [0, 2, 0, 0, 1]), (1, [1, 0, 0, 0, 2])]),
        cubic(f, &[(1, [0, 3, 0, 0, 0]), (-1, [2, 0, 1, 0, 0]), (1, [1, 1, 0, 0, 1])]),
    ]
}

/// The 5×m matrix of linear forms in a₀..a₄ whose column h is Ωₕ·a, one
/// column per section form. A point is the vertex of a line in the section
/// iff this matrix has rank < m.
pub fn contraction_matrix<F: Field>(sec: &SectionModel<F>) -> Vec<Vec<MPoly<F>>> {
    let f = sec.field();
    (0..5)
        .map(|r| {
            sec.forms()
                .iter()
                .map(|w| MPoly::linear(f, &(0..5).map(|i| w.matrix().get(i, r).clone()).collect::<Vec<_>>()))
                .collect()
        })
        .collect()
}

fn det<F: Field>(f: &F, m: &[Vec<MPoly<F>>], nvars: usize) -> MPoly<F> {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = MPoly::zero(f, nvars);
    for c in 0..m.len() {
        let minor: Vec<Vec<MPoly<F>>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect()).collect();
        let t = m[0][c].mul(&det(f, &minor, nvars));
        acc = if c % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

/// All maximal minors of [`contraction_matrix`], rows in lexicographic order.
pub fn contraction_minors<F: Field>(sec: &SectionModel<F>) -> Vec<MPoly<F>> {
    let f = sec.field();
    let m = contraction_matrix(sec);
    let k = sec.len();
    let mut out = Vec::new();
    let mut rows: Vec<usize> = (0..k).collect();
    if k == 0 || k > 5 {
        return out;
    }
    loop {
        let sub: Vec<Vec<MPoly<F>>> = rows.iter().map(|&r| m[r].clone()).collect();
        out.push(det(f, &sub, 5));
        // next k-subset of 0..5
        let mut i = k;
        while i > 0 && rows[i - 1] == 5 - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        rows[i - 1] += 1;
        for j in i..k {
            rows[j] = rows[j - 1] + 1;
        }
    }
}
