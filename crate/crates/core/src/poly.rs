//! Sparse multivariate polynomials, used for explicit quadrics and cubics
//! and as the output format of interpolation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;

/// Exponent vectors of all degree-`d` monomials in `n` variables, in graded
/// lexicographic order (x₀^d first).
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == n - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(i + 1, n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(0, n, d, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly<F: Field> {
    field: F,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, F::Elem>,
}

impl<F: Field> MPoly<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        MPoly { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn var(field: &F, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(field, nvars, vec![(field.one(), e)])
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        Self::from_terms(field, nvars, vec![(c, vec![0; nvars])])
    }

    /// Linear form Σ cᵢ xᵢ.
    pub fn linear(field: &F, coeffs: &[F::Elem]) -> Self {
        let n = coeffs.len();
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (c.clone(), e)
            })
            .collect();
        Self::from_terms(field, n, terms)
    }

    pub fn from_terms(field: &F, nvars: usize, terms: Vec<(F::Elem, Vec<u32>)>) -> Self {
        let mut p = Self::zero(field, nvars);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(c, e);
        }
        p
    }

    /// Build from integer coefficients, e.g. `[(1, &[1,0,1]), (-1, &[0,2,0])]`.
    pub fn from_i64(field: &F, nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(field, nvars, terms.iter().map(|(c, e)| (field.from_i64(*c), e.to_vec())).collect())
    }

    fn add_term(&mut self, c: F::Elem, e: Vec<u32>) {
        let f = &self.field;
        let cur = self.terms.remove(&e).unwrap_or_else(|| f.zero());
        let v = f.add(&cur, &c);
        if !f.is_zero(&v) {
            self.terms.insert(e, v);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &F::Elem)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(c.clone(), e.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        let mut p = Self::zero(f, self.nvars);
        for (e, x) in &self.terms {
            p.add_term(f.mul(x, c), e.clone());
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut p = Self::zero(f, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(f.mul(c1, c2), e);
            }
        }
        p
    }

    pub fn eval(&self, x: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &ei) in x.iter().zip(e) {
                if ei > 0 {
                    t = f.mul(&t, &f.pow(xi, ei));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Degree if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    /// Coefficients over the monomial basis of degree `d`.
    pub fn coeff_vector(&self, d: u32) -> Result<Vec<F::Elem>> {
        if !self.is_zero() && self.homogeneous_degree() != Some(d) {
            return Err(Error::DegreeMismatch { expected: d as usize, found: self.homogeneous_degree().unwrap_or(0) as usize });
        }
        let f = &self.field;
        Ok(monomials(self.nvars, d).iter().map(|m| self.terms.get(m).cloned().unwrap_or_else(|| f.zero())).collect())
    }

    pub fn from_coeff_vector(field: &F, nvars: usize, d: u32, v: &[F::Elem]) -> Self {
        let mons = monomials(nvars, d);
        Self::from_terms(field, nvars, v.iter().cloned().zip(mons).collect())
    }

    /// Text form with the given variable names, terms in graded-lex order.
    pub fn format(&self, names: &[String]) -> String {
        let f = &self.field;
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.iter().sum::<u32>().cmp(&a.iter().sum::<u32>()).then(b.cmp(a)));
        let mut parts = Vec::new();
        for e in keys {
            let c = f.format(&self.terms[e]);
            let mon: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{k}", names[i]) })
                .collect();
            parts.push(match (mon.is_empty(), c.as_str()) {
                (true, _) => c,
                (false, "1") => mon.join("*"),
                (false, "-1") => format!("-{}", mon.join("*")),
                _ => format!("{c}*{}", mon.join("*")),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }
}
