//! Exhaustive enumeration over prime fields.
//!
//! Subspaces of GF(p)⁵ are visited through their RREF representatives,
//! partitioned by pivot pattern and processed with rayon. Results are always
//! collected in canonical order, so counts and witness lists do not depend
//! on scheduling.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::grassmann::{skew_restrict, skew_restrict_all, wedge2};
use crate::linalg::Subspace;
use crate::sections::{
    axis_locus_model, envelope_restriction, is_sigma22_plane, plane_fiber, vertex_kernel, FiberKind, LineFlag,
    SectionModel,
};

pub const DEFAULT_BUDGET: u64 = 100_000_000;
const CHUNK: u64 = 2048;

/// Number of k-dimensional subspaces of GF(q)ⁿ.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// One RREF pivot pattern of a k-subspace of GF(p)ⁿ with its free positions.
struct Pattern {
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
}

fn patterns(n: usize, k: usize) -> Vec<Pattern> {
    fn combos(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            combos(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    combos(n, k, 0, &mut Vec::new(), &mut all);
    all.into_iter()
        .map(|pivots| {
            let free = (0..k)
                .flat_map(|r| (pivots[r] + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect::<Vec<_>>();
            Pattern { pivots, free }
        })
        .collect()
}

fn build(fp: &PrimeField, n: usize, pat: &Pattern, mut idx: u64) -> Subspace<PrimeField> {
    let p = fp.p() as u64;
    let mut rows = vec![vec![0u32; n]; pat.pivots.len()];
    for (r, &c) in pat.pivots.iter().enumerate() {
        rows[r][c] = 1;
    }
    // Last free entry varies fastest.
    for &(r, c) in pat.free.iter().rev() {
        rows[r][c] = (idx % p) as u32;
        idx /= p;
    }
    Subspace::from_rref_rows(fp, n, rows, pat.pivots.clone())
}

/// Applies `visit` to every k-subspace of GF(p)ⁿ and returns the `Some`
/// results in canonical order (pivot patterns in lexicographic order, free
/// entries counted up with the last one fastest).
pub fn scan_subspaces<T, V>(fp: &PrimeField, n: usize, k: usize, visit: V) -> Vec<T>
where
    T: Send,
    V: Fn(Subspace<PrimeField>) -> Option<T> + Sync,
{
    let p = fp.p() as u64;
    let mut jobs = Vec::new();
    let pats = patterns(n, k);
    for (pi, pat) in pats.iter().enumerate() {
        let total = p.pow(pat.free.len() as u32);
        let mut start = 0;
        while start < total {
            jobs.push((pi, start, (start + CHUNK).min(total)));
            start += CHUNK;
        }
    }
    let parts: Vec<Vec<T>> = jobs
        .par_iter()
        .map(|&(pi, a, b)| (a..b).filter_map(|i| visit(build(fp, n, &pats[pi], i))).collect())
        .collect();
    parts.into_iter().flatten().collect()
}

/// All a-dimensional subspaces U with v ⊂ U ⊆ w, listed canonically.
pub fn subspaces_between(v: &Subspace<PrimeField>, w: &Subspace<PrimeField>, a: usize) -> Vec<Subspace<PrimeField>> {
    let fp = v.field();
    if a < v.dim() || a > w.dim() {
        return vec![];
    }
    // Complement of v inside w from w's basis.
    let mut chosen = v.clone();
    let mut comp = Vec::new();
    for i in 0..w.dim() {
        let x = w.vector(i);
        if !chosen.contains(x) {
            chosen = chosen.sum(&Subspace::span(fp, w.ambient(), vec![x.to_vec()]).unwrap()).unwrap();
            comp.push(x.to_vec());
        }
    }
    let m = comp.len();
    let k = a - v.dim();
    let mut out = Vec::new();
    if k == 0 {
        return vec![v.clone()];
    }
    for pat in patterns(m, k) {
        let total = (fp.p() as u64).pow(pat.free.len() as u32);
        for i in 0..total {
            let s = build(fp, m, &pat, i);
            let mut vecs = v.basis_vecs();
            for r in 0..k {
                vecs.push(combine(fp, &comp, s.vector(r)));
            }
            out.push(Subspace::span(fp, w.ambient(), vecs).unwrap());
        }
    }
    out
}

fn combine(fp: &PrimeField, vecs: &[Vec<u32>], coeffs: &[u32]) -> Vec<u32> {
    let n = vecs[0].len();
    let mut out = vec![0u32; n];
    for (c, v) in coeffs.iter().zip(vecs) {
        if *c == 0 {
            continue;
        }
        for j in 0..n {
            out[j] = fp.add(&out[j], &fp.mul(c, &v[j]));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EnumObject {
    /// Lines (V₁ ⊂ V₃), enumerated vertex by vertex.
    Lines,
    /// Lines, enumerated plane by plane with every point of the plane tested.
    LinesDirect,
    /// σ₃,₁-planes (V₁ ⊂ V₄).
    Planes31,
    /// σ₂,₂-planes V₃.
    Planes22,
    /// k-subspaces on which every section form vanishes.
    Subspaces(usize),
}

impl EnumObject {
    pub fn parse(s: &str, k: Option<usize>) -> Result<Self> {
        Ok(match s {
            "lines" => EnumObject::Lines,
            "lines-direct" => EnumObject::LinesDirect,
            "planes31" => EnumObject::Planes31,
            "planes22" => EnumObject::Planes22,
            "subspaces" => match k {
                Some(k @ 1..=5) => EnumObject::Subspaces(k),
                _ => return Err(Error::InvalidInput("subspaces needs a dimension 1..=5".into())),
            },
            _ => return Err(Error::InvalidInput(format!("unknown object {s:?}"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct EnumSpec {
    pub object: EnumObject,
    pub section: SectionModel<PrimeField>,
    pub budget: u64,
    pub witnesses: bool,
}

impl EnumSpec {
    pub fn new(section: &SectionModel<Rationals>, p: u32, object: EnumObject) -> Result<Self> {
        Ok(EnumSpec { object, section: section.reduce_mod(p)?, budget: DEFAULT_BUDGET, witnesses: false })
    }
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
    pub fn with_witnesses(mut self, on: bool) -> Self {
        self.witnesses = on;
        self
    }
    pub fn p(&self) -> u32 {
        self.section.field().p()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A point inside a subspace: a line (V₃) or a σ₃,₁-plane (V₄).
    Flag { point: Subspace<PrimeField>, space: Subspace<PrimeField> },
    Subspace(Subspace<PrimeField>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumResult {
    pub count: u64,
    pub witnesses: Vec<Witness>,
}

struct Budget {
    used: AtomicU64,
    limit: u64,
}

impl Budget {
    fn spend(&self, n: u64) -> bool {
        self.used.fetch_add(n, Ordering::Relaxed) + n <= self.limit
    }
}

fn upfront_cost(spec: &EnumSpec) -> u128 {
    let q = spec.p() as u64;
    let pts = gaussian_binomial(5, 1, q);
    match spec.object {
        EnumObject::Lines | EnumObject::Planes31 => pts,
        EnumObject::LinesDirect => gaussian_binomial(5, 3, q) * gaussian_binomial(3, 1, q),
        EnumObject::Planes22 => gaussian_binomial(5, 3, q),
        EnumObject::Subspaces(k) => gaussian_binomial(5, k as u32, q),
    }
}

/// Counts the objects of `spec.object` contained in the section.
pub fn enumerate_count(spec: &EnumSpec) -> Result<EnumResult> {
    let need = upfront_cost(spec);
    if need > spec.budget as u128 {
        return Err(Error::BudgetExceeded { needed: need.min(u64::MAX as u128) as u64, budget: spec.budget });
    }
    let fp = spec.section.field().clone();
    let sec = &spec.section;
    let budget = Budget { used: AtomicU64::new(need as u64), limit: spec.budget };
    let exceeded = AtomicU64::new(0);
    let keep = spec.witnesses;

    // Each visit returns (count, witnesses).
    let parts: Vec<(u64, Vec<Witness>)> = match spec.object {
        EnumObject::Lines | EnumObject::Planes31 => {
            let a = if spec.object == EnumObject::Lines { 3 } else { 4 };
            scan_subspaces(&fp, 5, 1, |pt| {
                let w = vertex_kernel(pt.vector(0), sec);
                if w.dim() < a {
                    return None;
                }
                let size = gaussian_binomial(w.dim() as u32 - 1, a as u32 - 1, fp.p() as u64) as u64;
                if !budget.spend(size) {
                    exceeded.store(1, Ordering::Relaxed);
                    return None;
                }
                let wit = if keep {
                    subspaces_between(&pt, &w, a)
                        .into_iter()
                        .map(|space| Witness::Flag { point: pt.clone(), space })
                        .collect()
                } else {
                    vec![]
                };
                Some((size, wit))
            })
        }
        EnumObject::LinesDirect => scan_subspaces(&fp, 5, 3, |v3| {
            let wit: Vec<Witness> = scan_points(&v3)
                .into_iter()
                .filter(|pt| line_in_section(sec, pt, &v3))
                .map(|point| Witness::Flag { point, space: v3.clone() })
                .collect();
            (!wit.is_empty()).then(|| (wit.len() as u64, if keep { wit } else { vec![] }))
        }),
        EnumObject::Planes22 => scan_subspaces(&fp, 5, 3, |v3| {
            is_sigma22_plane(&v3, sec).unwrap().then(|| (1, if keep { vec![Witness::Subspace(v3)] } else { vec![] }))
        }),
        EnumObject::Subspaces(k) => scan_subspaces(&fp, 5, k, |v| {
            isotropic(sec, &v).then(|| (1, if keep { vec![Witness::Subspace(v)] } else { vec![] }))
        }),
    };
    if exceeded.load(Ordering::Relaxed) != 0 {
        return Err(Error::BudgetExceeded { needed: budget.used.load(Ordering::Relaxed), budget: spec.budget });
    }
    let count = parts.iter().map(|(c, _)| c).sum();
    let witnesses = parts.into_iter().flat_map(|(_, w)| w).collect();
    Ok(EnumResult { count, witnesses })
}

/// Projective points of a subspace, canonically ordered.
pub fn scan_points(v: &Subspace<PrimeField>) -> Vec<Subspace<PrimeField>> {
    let fp = v.field();
    let vecs = v.basis_vecs();
    scan_subspaces(fp, v.dim(), 1, |c| Some(Subspace::span(fp, v.ambient(), vec![combine(fp, &vecs, c.vector(0))]).unwrap()))
}

fn isotropic<F: Field>(sec: &SectionModel<F>, v: &Subspace<F>) -> bool {
    sec.forms().iter().all(|w| w.gram(v).is_zero())
}

/// Whether the pencil of lines through `pt` in `v3` lies in the section.
pub fn line_in_section<F: Field>(sec: &SectionModel<F>, pt: &Subspace<F>, v3: &Subspace<F>) -> bool {
    let p = pt.vector(0);
    (0..3).all(|i| {
        let q = wedge2(sec.field(), p, v3.vector(i));
        sec.hyperplanes().iter().all(|h| sec.field().is_zero(&crate::grassmann::covector_eval(sec.field(), h, &q)))
    })
}

/// Re-checks a witness with the section predicates.
pub fn verify_witness(spec: &EnumSpec, w: &Witness) -> bool {
    let sec = &spec.section;
    match (spec.object, w) {
        (EnumObject::Lines | EnumObject::LinesDirect, Witness::Flag { point, space }) => LineFlag::new(point.clone(), space.clone())
            .and_then(|z| z.family())
            .map(|c| crate::curves::curve_in_section(&c, sec))
            .unwrap_or(false),
        (EnumObject::Planes31, Witness::Flag { point, space }) => {
            space.dim() == 4 && space.contains_subspace(point) && vertex_kernel(point.vector(0), sec).contains_subspace(space)
        }
        (EnumObject::Planes22, Witness::Subspace(v)) => is_sigma22_plane(v, sec).unwrap_or(false),
        (EnumObject::Subspaces(k), Witness::Subspace(v)) => v.dim() == k && isotropic(sec, v),
        _ => false,
    }
}

/// A polynomial in p with integer coefficients, lowest degree first.
pub fn eval_poly(coeffs: &[i64], p: u32) -> i128 {
    coeffs.iter().rev().fold(0i128, |acc, &c| acc * p as i128 + c as i128)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocusRow {
    pub p: u32,
    pub count: u64,
    pub predicted: i128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocusPolyReport {
    pub rows: Vec<LocusRow>,
    /// First prime where the count differs from the prediction.
    pub first_mismatch: Option<u32>,
}

impl LocusPolyReport {
    pub fn holds(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

pub fn locus_poly_check(
    section: &SectionModel<Rationals>,
    object: EnumObject,
    predicted: &[i64],
    primes: &[u32],
    budget: u64,
) -> Result<LocusPolyReport> {
    let mut rows = Vec::new();
    for &p in primes {
        let spec = EnumSpec::new(section, p, object)?.with_budget(budget);
        let count = enumerate_count(&spec)?.count;
        rows.push(LocusRow { p, count, predicted: eval_poly(predicted, p) });
    }
    let first_mismatch = rows.iter().find(|r| r.count as i128 != r.predicted).map(|r| r.p);
    Ok(LocusPolyReport { rows, first_mismatch })
}

pub fn reduce_subspace(v: &Subspace<Rationals>, fp: &PrimeField) -> Result<Subspace<PrimeField>> {
    let rows = v
        .basis_vecs()
        .iter()
        .map(|r| r.iter().map(|x| fp.reduce(x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Subspace::span(fp, v.ambient(), rows)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PlaneFiberCensus {
    pub planes: u64,
    pub unique: u64,
    pub projective_plane: u64,
    /// Planes whose fibre is neither a point nor a P².
    pub other: u64,
    /// Planes where "fibre is P²" and "σ₂,₂-plane" disagree.
    pub sigma22_disagreements: u64,
    /// Σ over planes of the number of points in the fibre.
    pub flags: u64,
}

/// Plane fibres over all of Gr(3,5)(GF(p)).
pub fn plane_fiber_census(sec: &SectionModel<PrimeField>) -> Result<PlaneFiberCensus> {
    let fp = sec.field().clone();
    let q = fp.p() as u64;
    let rows = scan_subspaces(&fp, 5, 3, |v3| {
        let r = plane_fiber(&v3, sec).ok()?;
        let s22 = is_sigma22_plane(&v3, sec).ok()?;
        Some((r.interpretation, s22, gaussian_binomial(r.k as u32, 1, q) as u64))
    });
    let mut c = PlaneFiberCensus::default();
    for (kind, s22, pts) in rows {
        c.planes += 1;
        c.flags += pts;
        match kind {
            FiberKind::UniquePoint => c.unique += 1,
            FiberKind::ProjSpace(2) => c.projective_plane += 1,
            _ => c.other += 1,
        }
        if (kind == FiberKind::ProjSpace(2)) != s22 {
            c.sigma22_disagreements += 1;
        }
    }
    Ok(c)
}

/// Histogram of rank of the section covectors restricted to ∧²V₄, over
/// all V₄ ∈ Gr(4,5)(GF(p)).
pub fn envelope_rank_census(sec: &SectionModel<PrimeField>) -> BTreeMap<usize, u64> {
    let fp = sec.field().clone();
    let ranks = scan_subspaces(&fp, 5, 4, |v4| Some(envelope_restriction(&v4, sec).unwrap().rank()));
    let mut h = BTreeMap::new();
    for r in ranks {
        *h.entry(r).or_insert(0) += 1;
    }
    h
}

/// Restricted rank of the first section form on each V₄, with whether V₄
/// contains the given vector.
pub fn skew_rank_census(sec: &SectionModel<PrimeField>, probe: &[u32]) -> Vec<(Subspace<PrimeField>, usize, bool)> {
    let fp = sec.field().clone();
    scan_subspaces(&fp, 5, 4, |v4| {
        let r = skew_restrict(&sec.forms()[0], &v4).ok()?;
        Some((v4.clone(), r.rank, v4.contains(probe)))
    })
}

/// Over one V₄: the points v ∈ V₄ with h(v ∧ V₄) = 0 and the 3-spaces of V₄
/// on which every form vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagFiber {
    pub v4: Subspace<PrimeField>,
    pub points: Vec<Subspace<PrimeField>>,
    pub planes: Vec<Subspace<PrimeField>>,
}

/// Nonempty flag fibres over Gr(4,5)(GF(p)).
pub fn flag_fiber_census(sec: &SectionModel<PrimeField>) -> Vec<FlagFiber> {
    let fp = sec.field().clone();
    scan_subspaces(&fp, 5, 4, |v4| {
        let common = skew_restrict_all(sec.forms(), &v4).ok()?.kernel;
        let points = if common.dim() > 0 { scan_points(&common) } else { vec![] };
        let planes: Vec<_> = scan_points_dual(&v4).into_iter().filter(|v3| isotropic(sec, v3)).collect();
        (!points.is_empty() || !planes.is_empty()).then_some(FlagFiber { v4, points, planes })
    })
}

/// Hyperplanes of a subspace.
fn scan_points_dual(v: &Subspace<PrimeField>) -> Vec<Subspace<PrimeField>> {
    let fp = v.field();
    let vecs = v.basis_vecs();
    let d = v.dim();
    scan_subspaces(fp, d, d - 1, |s| {
        Some(Subspace::span(fp, v.ambient(), (0..d - 1).map(|i| combine(fp, &vecs, s.vector(i))).collect()).unwrap())
    })
}

/// Number of GF(p)-points on the intersection of σ₂,₀(ℓ) with the section,
/// counted on the projective space cut from the span of σ₂,₀(ℓ) by the
/// section covectors.
pub fn axis_cubic_count(l: &Subspace<Rationals>, sec: &SectionModel<Rationals>, p: u32) -> Result<u64> {
    let fp = PrimeField::new(p as u64)?;
    let secp = sec.reduce_mod(p)?;
    let lp = reduce_subspace(l, &fp)?;
    let model = axis_locus_model(&lp, &secp)?;
    let k = model.section_restrictions.kernel();
    if 7 - k.dim() != sec.len() {
        return Err(Error::NonGenericEnvelope);
    }
    let quads = model.span_quadrics();
    let pts = scan_points(&k);
    Ok(pts.iter().filter(|pt| quads.iter().all(|q| fp.is_zero(&q.eval(pt.vector(0))))).count() as u64)
}

/// Lines in Gr(2,5)(GF(p)) satisfying a Schubert condition for the
/// standard flag.
pub fn schubert_count(d: &crate::grassmann::SchubertDatum, p: u32) -> Result<u64> {
    let fp = PrimeField::new(p as u64)?;
    Ok(scan_subspaces(&fp, 5, 2, |l| d.satisfies(&l).then_some(())).len() as u64)
}
