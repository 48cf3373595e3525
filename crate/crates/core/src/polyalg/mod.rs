//! Exact sparse multivariate polynomial arithmetic.
//!
//! Coefficients are arbitrary-precision rationals so that harmonicity and
//! antisymmetry are decided exactly, never to a tolerance. Variables are
//! indexed `0..num_vars`; for N-particle polynomials variable `i*d + k` is
//! coordinate `k` of particle `i` and renders as `x{i+1}_{k+1}`.

mod oracle;

pub use oracle::{
    antisymmetrize, min_antisym_harmonic_degree, min_antisym_harmonic_degree_with_budget,
    OracleResult,
};

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::vandermonde_degree;
use crate::{Error, Result, WorkBudget};

/// A multi-index of variable exponents; the atom of all polynomial work.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> ExponentVector {
        ExponentVector(exponents)
    }

    pub fn zeros(len: usize) -> ExponentVector {
        ExponentVector(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }
}

/// Canonical monomial order: total degree ascending, then lexicographically
/// descending on the exponent tuple. This is the order of the basis
/// monomials `1, t1, .., td, t1^2, t1 t2, ..`.
pub fn monomial_order(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    a.total_degree()
        .cmp(&b.total_degree())
        .then_with(|| b.0.cmp(&a.0))
}

/// A permutation of `{1, .., N}` acting on particle blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    /// `image[i]` is the 1-based image of `i+1`.
    image: Vec<usize>,
}

impl Permutation {
    /// Builds from a 1-based image sequence; panics unless it is a
    /// bijection on `{1, .., N}`.
    pub fn from_image(image: Vec<usize>) -> Permutation {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            assert!(v >= 1 && v <= n && !seen[v - 1], "not a bijection on 1..=N");
            seen[v - 1] = true;
        }
        Permutation { image }
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            image: (1..=n).collect(),
        }
    }

    /// The transposition swapping 1-based positions `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Permutation {
        assert!(i >= 1 && j >= 1 && i <= n && j <= n && i != j);
        let mut image: Vec<usize> = (1..=n).collect();
        image.swap(i - 1, j - 1);
        Permutation { image }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// 1-based image of 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    /// Composition `(self o other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            image: other.image.iter().map(|&i| self.image[i - 1]).collect(),
        }
    }

    /// Sign from inversion parity.
    pub fn sign(&self) -> i32 {
        let mut inversions = 0usize;
        for i in 0..self.image.len() {
            for j in i + 1..self.image.len() {
                if self.image[i] > self.image[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Sparse polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored; equality is term-map equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    num_vars: usize,
    terms: HashMap<ExponentVector, BigRational>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Polynomial {
        Polynomial {
            num_vars,
            terms: HashMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: BigRational) -> Polynomial {
        let mut p = Polynomial::zero(num_vars);
        p.add_term(ExponentVector::zeros(num_vars), c);
        p
    }

    pub fn one(num_vars: usize) -> Polynomial {
        Polynomial::constant(num_vars, BigRational::one())
    }

    /// The single monomial `c * x^exps`.
    pub fn monomial(num_vars: usize, exps: ExponentVector, c: BigRational) -> Polynomial {
        assert_eq!(exps.len(), num_vars, "exponent vector length mismatch");
        let mut p = Polynomial::zero(num_vars);
        p.add_term(exps, c);
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &ExponentVector) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Adds `c * x^exps`, dropping the term if the sum cancels.
    pub fn add_term(&mut self, exps: ExponentVector, c: BigRational) {
        assert_eq!(exps.len(), self.num_vars, "exponent vector length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = Polynomial::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.0.iter().zip(&eb.0).map(|(&x, &y)| x + y).collect();
                out.add_term(ExponentVector(exps), ca * cb);
            }
        }
        out
    }

    /// Largest total degree among stored terms; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|e| e.total_degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| e.total_degree());
        match degrees.next() {
            None => true,
            Some(d0) => degrees.all(|d| d == d0),
        }
    }

    /// Splits into homogeneous components keyed by degree; the components
    /// sum back to the polynomial.
    pub fn homogeneous_components(&self) -> BTreeMap<u64, Polynomial> {
        let mut out: BTreeMap<u64, Polynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e.total_degree())
                .or_insert_with(|| Polynomial::zero(self.num_vars))
                .add_term(e.clone(), c.clone());
        }
        out
    }

    /// Sum of second partials over all variables, exactly.
    pub fn laplacian(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.num_vars);
        for (e, c) in &self.terms {
            for v in 0..self.num_vars {
                let ev = e.0[v];
                if ev >= 2 {
                    let mut exps = e.0.clone();
                    exps[v] -= 2;
                    let factor =
                        BigRational::from_integer(BigInt::from(ev as u64 * (ev as u64 - 1)));
                    out.add_term(ExponentVector(exps), c * factor);
                }
            }
        }
        out
    }

    /// Permutes particle blocks of width `d`: block `i` of the result is
    /// block `sigma(i)` of the input.
    pub fn apply_permutation(&self, d: u32, sigma: &Permutation) -> Result<Polynomial> {
        let d = d as usize;
        if d == 0 || self.num_vars != d * sigma.len() {
            return Err(Error::InvalidArgument(format!(
                "permutation of {} particles does not act on {} variables of width d={}",
                sigma.len(),
                self.num_vars,
                d
            )));
        }
        let mut out = Polynomial::zero(self.num_vars);
        for (e, c) in &self.terms {
            let mut exps = vec![0u32; self.num_vars];
            for i in 0..sigma.len() {
                let src = (sigma.apply(i + 1) - 1) * d;
                exps[i * d..(i + 1) * d].copy_from_slice(&e.0[src..src + d]);
            }
            out.add_term(ExponentVector(exps), c.clone());
        }
        Ok(out)
    }

    /// True iff every adjacent transposition of particle blocks negates the
    /// polynomial (adjacent transpositions generate the symmetric group).
    pub fn is_antisymmetric(&self, d: u32) -> Result<bool> {
        if d == 0 || self.num_vars % d as usize != 0 {
            return Err(Error::InvalidArgument(format!(
                "{} variables do not split into blocks of width d={}",
                self.num_vars, d
            )));
        }
        let n = self.num_vars / d as usize;
        let neg = self.neg();
        for i in 1..n {
            let tau = Permutation::transposition(n, i, i + 1);
            if self.apply_permutation(d, &tau)? != neg {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Terms sorted leading-first (descending in the canonical monomial
    /// order), as `(exponents, coefficient)` pairs.
    pub fn sorted_terms(&self) -> Vec<(ExponentVector, BigRational)> {
        let mut terms: Vec<_> = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        terms.sort_by(|a, b| monomial_order(&b.0, &a.0));
        terms
    }

    /// Canonical text rendering: terms leading-first, exact fraction
    /// coefficients, variables `x{particle}_{coordinate}` for block width
    /// `d`. The zero polynomial renders as `0`.
    pub fn render(&self, d: u32) -> String {
        assert!(d >= 1 && self.num_vars % d as usize == 0);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.total_degree() == 0 {
                factors.push(mag.to_string());
            }
            for (v, &ev) in e.0.iter().enumerate() {
                if ev == 0 {
                    continue;
                }
                let particle = v / d as usize + 1;
                let coord = v % d as usize + 1;
                if ev == 1 {
                    factors.push(format!("x{particle}_{coord}"));
                } else {
                    factors.push(format!("x{particle}_{coord}^{ev}"));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// Exponent tuples of total degree `p` over `nvars` variables, in
/// lexicographically descending order (so `t1^p` first, `t_nvars^p` last).
pub fn exponents_of_degree(nvars: usize, p: u32) -> Vec<ExponentVector> {
    assert!(nvars >= 1);
    fn rec(out: &mut Vec<ExponentVector>, current: &mut Vec<u32>, pos: usize, left: u32) {
        if pos + 1 == current.len() {
            current[pos] = left;
            out.push(ExponentVector(current.clone()));
            current[pos] = 0;
            return;
        }
        for e in (0..=left).rev() {
            current[pos] = e;
            rec(out, current, pos + 1, left - e);
        }
        current[pos] = 0;
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    rec(&mut out, &mut current, 0, p);
    out
}

/// The first `count` unit monomials in `d` variables, ordered by total
/// degree and then lexicographically descending: `1, t1, .., td, t1^2, ..`.
pub fn monomial_basis(d: u32, count: usize) -> Vec<Polynomial> {
    monomial_basis_exponents(d, count)
        .into_iter()
        .map(|e| Polynomial::monomial(d as usize, e, BigRational::one()))
        .collect()
}

/// Exponent tuples of the first `count` basis monomials.
pub fn monomial_basis_exponents(d: u32, count: usize) -> Vec<ExponentVector> {
    assert!(d >= 1 && count >= 1);
    let mut out = Vec::with_capacity(count);
    let mut p = 0u32;
    while out.len() < count {
        for e in exponents_of_degree(d as usize, p) {
            out.push(e);
            if out.len() == count {
                break;
            }
        }
        p += 1;
    }
    out
}

fn factorial_big(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// The determinant of the first `N` basis monomials evaluated at the `N`
/// particle positions, expanded exactly over `d*N` variables.
///
/// The expansion has exactly `N!` terms (each permutation contributes one
/// distinct monomial), which is the work estimate checked against the
/// budget. The result is antisymmetric, harmonic, and homogeneous of degree
/// `V_d(N)`.
pub fn slater_determinant(d: u32, n: u64) -> Result<Polynomial> {
    slater_determinant_with_budget(d, n, WorkBudget::DETERMINANT_DEFAULT)
}

pub fn slater_determinant_with_budget(d: u32, n: u64, budget: WorkBudget) -> Result<Polynomial> {
    assert!(d >= 1 && n >= 1, "slater_determinant: requires d >= 1, N >= 1");
    budget.check(&factorial_big(n))?;
    let n = n as usize;
    let nvars = d as usize * n;
    let basis = monomial_basis_exponents(d, n);
    let mut out = Polynomial::zero(nvars);
    // Leibniz sum over column permutations via Heap's algorithm; each
    // permutation maps basis row i onto particle block perm[i].
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1i32;
    let mut counters = vec![0usize; n];
    let mut emit = |perm: &[usize], sign: i32| {
        let mut exps = vec![0u32; nvars];
        for (row, &col) in perm.iter().enumerate() {
            let block = col * d as usize;
            for (k, &e) in basis[row].exponents().iter().enumerate() {
                exps[block + k] += e;
            }
        }
        out.add_term(
            ExponentVector(exps),
            BigRational::from_integer(BigInt::from(sign)),
        );
    };
    emit(&perm, sign);
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            sign = -sign;
            emit(&perm, sign);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    debug_assert_eq!(
        BigInt::from(out.term_count()),
        factorial_big(n as u64),
        "determinant expansion must have N! distinct terms"
    );
    debug_assert_eq!(
        out.total_degree(),
        u64::try_from(&vandermonde_degree(d, n as u64)).unwrap()
    );
    Ok(out)
}

/// Cofactor (last-row) expansion of the same determinant. Exponential in N
/// and kept only as an independent cross-check for the Leibniz expansion.
pub fn slater_determinant_cofactor(d: u32, n: u64) -> Polynomial {
    assert!(d >= 1 && n >= 1);
    let nvars = d as usize * n as usize;
    let basis = monomial_basis_exponents(d, n as usize);
    fn entry(d: usize, nvars: usize, basis: &[ExponentVector], row: usize, col: usize) -> Polynomial {
        let mut exps = vec![0u32; nvars];
        let block = col * d;
        for (k, &e) in basis[row].exponents().iter().enumerate() {
            exps[block + k] += e;
        }
        Polynomial::monomial(nvars, ExponentVector::new(exps), BigRational::one())
    }
    fn det(
        d: usize,
        nvars: usize,
        basis: &[ExponentVector],
        rows: &[usize],
        cols: &[usize],
    ) -> Polynomial {
        let (&row, rest_rows) = rows.split_last().unwrap();
        if rest_rows.is_empty() {
            return entry(d, nvars, basis, row, cols[0]);
        }
        let mut acc = Polynomial::zero(nvars);
        for (j, &col) in cols.iter().enumerate() {
            let e = entry(d, nvars, basis, row, col);
            let sub_cols: Vec<usize> = cols
                .iter()
                .enumerate()
                .filter_map(|(jj, &c)| (jj != j).then_some(c))
                .collect();
            let minor = det(d, nvars, basis, rest_rows, &sub_cols);
            let signed = if (rest_rows.len() + j) % 2 == 0 {
                e.mul(&minor)
            } else {
                e.mul(&minor).neg()
            };
            acc = acc.add(&signed);
        }
        acc
    }
    let rows: Vec<usize> = (0..n as usize).collect();
    let cols: Vec<usize> = (0..n as usize).collect();
    det(d as usize, nvars, &basis, &rows, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn var(nvars: usize, v: usize) -> Polynomial {
        let mut exps = vec![0u32; nvars];
        exps[v] = 1;
        Polynomial::monomial(nvars, ExponentVector::new(exps), BigRational::one())
    }

    #[test]
    fn basis_order_matches_anchors() {
        // d=2: 1, t1, t2, t1^2, t1 t2, t2^2
        let b = monomial_basis_exponents(2, 6);
        let expected: Vec<Vec<u32>> = vec![
            vec![0, 0],
            vec![1, 0],
            vec![0, 1],
            vec![2, 0],
            vec![1, 1],
            vec![0, 2],
        ];
        assert_eq!(
            b.iter().map(|e| e.exponents().to_vec()).collect::<Vec<_>>(),
            expected
        );
        // d=1: 1, t1, t1^2, t1^3
        let b = monomial_basis_exponents(1, 4);
        assert_eq!(
            b.iter().map(|e| e.exponents().to_vec()).collect::<Vec<_>>(),
            vec![vec![0], vec![1], vec![2], vec![3]]
        );
        // d=3: phi_{d+1} = t_d
        let b = monomial_basis_exponents(3, 4);
        assert_eq!(b[3].exponents(), &[0, 0, 1]);
    }

    #[test]
    fn slater_2_particles_is_x2_minus_x1() {
        let psi = slater_determinant(1, 2).unwrap();
        let x1 = var(2, 0);
        let x2 = var(2, 1);
        assert_eq!(psi, x2.sub(&x1));
        assert_eq!(psi.render(1), "x2_1 - x1_1");
    }

    #[test]
    fn slater_3_particles_matches_vandermonde_product() {
        let psi = slater_determinant(1, 3).unwrap();
        let x1 = var(3, 0);
        let x2 = var(3, 1);
        let x3 = var(3, 2);
        let product = x2.sub(&x1).mul(&x3.sub(&x1)).mul(&x3.sub(&x2));
        assert_eq!(psi, product);
        assert_eq!(psi.term_count(), 6);
    }

    #[test]
    fn slater_d2_n2_degree_one_harmonic_antisymmetric() {
        let psi = slater_determinant(2, 2).unwrap();
        assert_eq!(psi.total_degree(), 1);
        assert!(psi.laplacian().is_zero());
        assert!(psi.is_antisymmetric(2).unwrap());
    }

    #[test]
    fn slater_n1_is_constant_one() {
        let psi = slater_determinant(3, 1).unwrap();
        assert_eq!(psi, Polynomial::one(3));
        assert!(psi.is_antisymmetric(3).unwrap());
    }

    #[test]
    fn slater_budget_exceeded_names_term_count() {
        let err = slater_determinant(1, 30).unwrap_err();
        match err {
            Error::BudgetExceeded { estimated, budget } => {
                assert_eq!(budget, WorkBudget::DETERMINANT_DEFAULT.max_terms);
                assert!(estimated > BigInt::from(u64::MAX));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn laplacian_textbook_cases() {
        let x1 = var(2, 0);
        let x2 = var(2, 1);
        let p = x1.mul(&x1).add(&x2.mul(&x2));
        assert_eq!(
            p.laplacian(),
            Polynomial::constant(2, BigRational::from_integer(BigInt::from(4)))
        );
        let cube = var(1, 0).mul(&var(1, 0)).mul(&var(1, 0));
        let expected = var(1, 0).scale(&BigRational::from_integer(BigInt::from(6)));
        assert_eq!(cube.laplacian(), expected);
    }

    #[test]
    fn laplacian_degree_drop_on_homogeneous_input() {
        let psi = slater_determinant(1, 4).unwrap();
        let p = psi.mul(&psi); // degree 12, not harmonic
        let lap = p.laplacian();
        assert!(!lap.is_zero());
        assert_eq!(lap.total_degree(), p.total_degree() - 2);
        assert!(lap.is_homogeneous());
    }

    #[test]
    fn apply_permutation_swap_and_symmetric_invariance() {
        let x1 = var(2, 0);
        let x2 = var(2, 1);
        let p = x2.sub(&x1);
        let tau = Permutation::transposition(2, 1, 2);
        assert_eq!(p.apply_permutation(1, &tau).unwrap(), p.neg());
        let sym = x1.mul(&x2).add(&x1.add(&x2));
        assert_eq!(sym.apply_permutation(1, &tau).unwrap(), sym);
    }

    #[test]
    fn apply_permutation_dimension_mismatch() {
        let p = var(3, 0);
        let tau = Permutation::transposition(2, 1, 2);
        assert!(p.apply_permutation(2, &tau).is_err());
    }

    #[test]
    fn antisymmetry_examples() {
        let psi = slater_determinant(1, 3).unwrap();
        assert!(psi.is_antisymmetric(1).unwrap());
        let x1 = var(2, 0);
        let x2 = var(2, 1);
        assert!(!x1.add(&x2).is_antisymmetric(1).unwrap());
        assert!(Polynomial::zero(4).is_antisymmetric(2).unwrap());
    }

    #[test]
    fn homogeneous_components_example() {
        let x1 = var(2, 0);
        let x2 = var(2, 1);
        let p = x1.mul(&x1).add(&x2);
        let comps = p.homogeneous_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&2], x1.mul(&x1));
        assert_eq!(comps[&1], x2);
        let h = slater_determinant(1, 3).unwrap();
        assert_eq!(h.homogeneous_components().len(), 1);
    }

    #[test]
    fn leibniz_equals_cofactor_for_small_sizes() {
        for (d, n) in [
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 2),
            (2, 3),
            (2, 4),
            (3, 3),
            (5, 2),
        ] {
            assert_eq!(
                slater_determinant(d, n).unwrap(),
                slater_determinant_cofactor(d, n),
                "(d, N) = ({d}, {n})"
            );
        }
    }

    #[test]
    fn render_coefficients_and_powers() {
        let x1 = var(2, 0);
        let p = x1
            .mul(&x1)
            .scale(&BigRational::new(BigInt::from(3), BigInt::from(2)))
            .sub(&Polynomial::one(2));
        assert_eq!(p.render(2), "3/2*x1_1^2 - 1");
        assert_eq!(Polynomial::zero(2).render(1), "0");
    }

    #[test]
    fn permutation_sign_and_compose() {
        assert_eq!(Permutation::identity(4).sign(), 1);
        assert_eq!(Permutation::transposition(4, 2, 4).sign(), -1);
        let s = Permutation::from_image(vec![2, 3, 1]);
        assert_eq!(s.sign(), 1);
        let t = Permutation::transposition(3, 1, 2);
        let st = s.compose(&t);
        assert_eq!(st.apply(1), s.apply(t.apply(1)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn permutation_composition_acts_contravariantly(
            seed_terms in proptest::collection::vec(
                (proptest::collection::vec(0u32..3, 6), -3i64..=3), 1..5),
            si in proptest::collection::vec(0usize..100, 3),
            ti in proptest::collection::vec(0usize..100, 3),
        ) {
            // d = 2, N = 3 over 6 variables
            let mut p = Polynomial::zero(6);
            for (exps, c) in seed_terms {
                p.add_term(ExponentVector::new(exps), BigRational::from_integer(BigInt::from(c)));
            }
            let to_perm = |idx: &[usize]| {
                let mut order: Vec<usize> = (1..=3).collect();
                order.sort_by_key(|&i| (idx[i - 1], i));
                Permutation::from_image(order)
            };
            let sigma = to_perm(&si);
            let tau = to_perm(&ti);
            let lhs = p
                .apply_permutation(2, &sigma).unwrap()
                .apply_permutation(2, &tau).unwrap();
            let rhs = p.apply_permutation(2, &sigma.compose(&tau)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn laplacian_is_linear(
            a_terms in proptest::collection::vec(
                (proptest::collection::vec(0u32..4, 3), -4i64..=4), 1..6),
            b_terms in proptest::collection::vec(
                (proptest::collection::vec(0u32..4, 3), -4i64..=4), 1..6),
            ca in -3i64..=3,
            cb in -3i64..=3,
        ) {
            let mut a = Polynomial::zero(3);
            for (e, c) in a_terms {
                a.add_term(ExponentVector::new(e), BigRational::from_integer(BigInt::from(c)));
            }
            let mut b = Polynomial::zero(3);
            for (e, c) in b_terms {
                b.add_term(ExponentVector::new(e), BigRational::from_integer(BigInt::from(c)));
            }
            let ca = BigRational::from_integer(BigInt::from(ca));
            let cb = BigRational::from_integer(BigInt::from(cb));
            let lhs = a.scale(&ca).add(&b.scale(&cb)).laplacian();
            let rhs = a.laplacian().scale(&ca).add(&b.laplacian().scale(&cb));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn homogeneous_components_reassemble(
            terms in proptest::collection::vec(
                (proptest::collection::vec(0u32..4, 3), -4i64..=4), 0..8),
        ) {
            let mut p = Polynomial::zero(3);
            for (e, c) in terms {
                p.add_term(ExponentVector::new(e), BigRational::from_integer(BigInt::from(c)));
            }
            let mut sum = Polynomial::zero(3);
            for (deg, comp) in p.homogeneous_components() {
                prop_assert!(comp.is_homogeneous());
                prop_assert_eq!(comp.total_degree(), deg);
                sum = sum.add(&comp);
            }
            prop_assert_eq!(sum, p);
        }
    }
}
