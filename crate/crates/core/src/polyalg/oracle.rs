//! Brute-force search for the minimal antisymmetric harmonic degree.
//!
//! Independent of the determinant construction: for each total degree `p`
//! the oracle antisymmetrizes every degree-`p` monomial in `d*N` variables,
//! then solves `laplacian = 0` inside the antisymmetrized span by exact
//! rational elimination. The smallest `p` with a nonzero solution space is
//! the answer, together with a witness polynomial and the space dimension.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{exponents_of_degree, ExponentVector, Polynomial};
use crate::combinatorics::binomial;
use crate::{Result, WorkBudget};

/// Outcome of the minimal-degree search.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub d: u32,
    pub n: u64,
    /// Largest degree scanned.
    pub max_degree: u32,
    /// Smallest degree carrying a nonzero antisymmetric harmonic
    /// polynomial, or `None` if none exists up to `max_degree`.
    pub degree_found: Option<u64>,
    /// A nonzero antisymmetric harmonic homogeneous polynomial of the found
    /// degree, with primitive integer coefficients and positive leading term.
    pub witness: Option<Polynomial>,
    /// Dimension of the solution space at the found degree (0 if none).
    pub space_dimension: u64,
}

/// Antisymmetrization `sum_sigma sign(sigma) sigma . q` of a single
/// monomial, over particle blocks of width `d`. Monomials with two equal
/// blocks cancel to zero.
pub fn antisymmetrize(d: u32, q: &ExponentVector) -> Polynomial {
    let d = d as usize;
    assert!(d >= 1 && q.len() % d == 0);
    let n = q.len() / d;
    let blocks: Vec<&[u32]> = q.exponents().chunks(d).collect();
    let mut out = Polynomial::zero(q.len());
    // Heap's algorithm over block arrangements with incremental sign.
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1i64;
    let mut counters = vec![0usize; n];
    let mut emit = |perm: &[usize], sign: i64| {
        let mut exps = vec![0u32; q.len()];
        for (i, &b) in perm.iter().enumerate() {
            exps[i * d..(i + 1) * d].copy_from_slice(blocks[b]);
        }
        out.add_term(
            ExponentVector::new(exps),
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
    out
}

/// One representative per antisymmetrization orbit at degree `p`: the
/// monomials whose `N` blocks are pairwise distinct, with blocks sorted
/// descending. Orbits with repeated blocks antisymmetrize to zero and are
/// dropped.
fn orbit_representatives(d: u32, n: u64, p: u32) -> Vec<ExponentVector> {
    let d = d as usize;
    let nvars = d * n as usize;
    let mut seen: HashSet<ExponentVector> = HashSet::new();
    let mut reps = Vec::new();
    for q in exponents_of_degree(nvars, p) {
        let mut blocks: Vec<Vec<u32>> = q.exponents().chunks(d).map(|b| b.to_vec()).collect();
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        if blocks.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let canon = ExponentVector::new(blocks.concat());
        if seen.insert(canon.clone()) {
            reps.push(canon);
        }
    }
    reps
}

/// Nullspace basis of the rational matrix `m` (rows x cols), via
/// fraction-free Bareiss elimination with partial pivoting followed by
/// rational back-substitution. Basis vectors are indexed by free columns in
/// ascending order.
fn rational_nullspace(m: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    // scale each row to integers; row scaling preserves the nullspace
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();
    let rows = a.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(pr) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .max_by_key(|&i| a[i][c].abs())
        else {
            continue;
        };
        a.swap(r, pr);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let t = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                let (q, rem) = t.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    let pivot_cols: HashSet<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::with_capacity(free_cols.len());
    for &f in &free_cols {
        let mut x = vec![BigRational::zero(); cols];
        x[f] = BigRational::one();
        for &(pr, pc) in pivots.iter().rev() {
            let mut s = BigRational::zero();
            for j in pc + 1..cols {
                if !a[pr][j].is_zero() && !x[j].is_zero() {
                    s += BigRational::from_integer(a[pr][j].clone()) * &x[j];
                }
            }
            x[pc] = -s / BigRational::from_integer(a[pr][pc].clone());
        }
        basis.push(x);
    }
    basis
}

/// Scales to primitive integer coefficients with positive leading term.
fn normalize_witness(p: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    let mut denom_lcm = BigInt::one();
    let mut numer_gcd = BigInt::zero();
    for (_, c) in p.terms() {
        denom_lcm = denom_lcm.lcm(c.denom());
        numer_gcd = numer_gcd.gcd(c.numer());
    }
    let mut scale = BigRational::new(denom_lcm, numer_gcd);
    let leading = &p.sorted_terms()[0].1;
    if (leading * &scale).is_negative() {
        scale = -scale;
    }
    p.scale(&scale)
}

/// Scans degrees `0..=max_degree` for the smallest one carrying a nonzero
/// antisymmetric harmonic homogeneous polynomial in `d*N` variables.
///
/// The monomial space at `max_degree` (`C(max_degree + dN - 1, dN - 1)`)
/// must fit the budget.
pub fn min_antisym_harmonic_degree(d: u32, n: u64, max_degree: u32) -> Result<OracleResult> {
    min_antisym_harmonic_degree_with_budget(d, n, max_degree, WorkBudget::ORACLE_DEFAULT)
}

pub fn min_antisym_harmonic_degree_with_budget(
    d: u32,
    n: u64,
    max_degree: u32,
    budget: WorkBudget,
) -> Result<OracleResult> {
    assert!(d >= 1 && n >= 2, "oracle: requires d >= 1, N >= 2");
    let nvars = d as u64 * n;
    budget.check(&binomial(max_degree as u64 + nvars - 1, nvars as i64 - 1))?;
    for p in 0..=max_degree {
        let reps = orbit_representatives(d, n, p);
        if reps.is_empty() {
            continue;
        }
        let spans: Vec<Polynomial> = reps.iter().map(|q| antisymmetrize(d, q)).collect();
        let laplacians: Vec<Polynomial> = spans.iter().map(|a| a.laplacian()).collect();
        // rows: degree p-2 monomials appearing in any laplacian
        let mut row_index: HashMap<ExponentVector, usize> = HashMap::new();
        let mut row_keys: Vec<ExponentVector> = Vec::new();
        for l in &laplacians {
            for (e, _) in l.terms() {
                if !row_index.contains_key(e) {
                    row_index.insert(e.clone(), row_keys.len());
                    row_keys.push(e.clone());
                }
            }
        }
        let nullspace = if row_keys.is_empty() {
            // every antisymmetrization is already harmonic
            (0..spans.len())
                .map(|j| {
                    let mut v = vec![BigRational::zero(); spans.len()];
                    v[j] = BigRational::one();
                    v
                })
                .collect::<Vec<_>>()
        } else {
            let mut matrix = vec![vec![BigRational::zero(); spans.len()]; row_keys.len()];
            for (j, l) in laplacians.iter().enumerate() {
                for (e, c) in l.terms() {
                    matrix[row_index[e]][j] = c.clone();
                }
            }
            rational_nullspace(&matrix, spans.len())
        };
        if !nullspace.is_empty() {
            let combo = &nullspace[0];
            let mut witness = Polynomial::zero(nvars as usize);
            for (j, c) in combo.iter().enumerate() {
                if !c.is_zero() {
                    witness = witness.add(&spans[j].scale(c));
                }
            }
            let witness = normalize_witness(&witness);
            debug_assert!(witness.laplacian().is_zero());
            debug_assert!(witness.is_antisymmetric(d).unwrap());
            return Ok(OracleResult {
                d,
                n,
                max_degree,
                degree_found: Some(p as u64),
                witness: Some(witness),
                space_dimension: nullspace.len() as u64,
            });
        }
    }
    Ok(OracleResult {
        d,
        n,
        max_degree,
        degree_found: None,
        witness: None,
        space_dimension: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::vandermonde_degree;
    use crate::Error;

    #[test]
    fn antisymmetrization_kills_repeated_blocks() {
        // blocks (t1, t1) for d=1, N=2 and (t1 t2, t1 t2, 1) for d=2, N=3
        let a = antisymmetrize(1, &ExponentVector::new(vec![1, 1]));
        assert!(a.is_zero());
        let b = antisymmetrize(2, &ExponentVector::new(vec![1, 1, 1, 1, 0, 0]));
        assert!(b.is_zero());
        let c = antisymmetrize(1, &ExponentVector::new(vec![2, 1, 0]));
        assert_eq!(c.term_count(), 6);
    }

    #[test]
    fn trivial_pair_d1_n2() {
        let r = min_antisym_harmonic_degree(1, 2, 2).unwrap();
        assert_eq!(r.degree_found, Some(1));
        assert_eq!(r.space_dimension, 1);
        let w = r.witness.unwrap();
        assert_eq!(w.render(1), "x2_1 - x1_1");
    }

    #[test]
    fn d2_n2_witness_is_coordinate_difference() {
        let r = min_antisym_harmonic_degree(2, 2, 3).unwrap();
        assert_eq!(r.degree_found, Some(1));
        let w = r.witness.unwrap();
        assert_eq!(w.total_degree(), 1);
        assert!(w.is_antisymmetric(2).unwrap());
        assert!(w.laplacian().is_zero());
        assert_eq!(w.term_count(), 2);
    }

    #[test]
    fn d1_n3_degree_three() {
        let r = min_antisym_harmonic_degree(1, 3, 4).unwrap();
        assert_eq!(r.degree_found, Some(3));
        assert_eq!(
            r.degree_found,
            Some(u64::try_from(&vandermonde_degree(1, 3)).unwrap())
        );
        let w = r.witness.unwrap();
        assert!(w.is_homogeneous());
        assert_eq!(w.total_degree(), 3);
    }

    #[test]
    fn none_below_minimal_degree() {
        let r = min_antisym_harmonic_degree(1, 3, 2).unwrap();
        assert_eq!(r.degree_found, None);
        assert!(r.witness.is_none());
        assert_eq!(r.space_dimension, 0);
    }

    #[test]
    fn budget_rejects_oversized_spaces() {
        let err = min_antisym_harmonic_degree(1, 7, 21).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn nullspace_of_known_matrix() {
        // x + y + z = 0, x + 2y + 3z = 0 -> nullspace spanned by (1, -2, 1)
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
        let m = vec![
            vec![q(1), q(1), q(1)],
            vec![q(1), q(2), q(3)],
        ];
        let ns = rational_nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        let scale = &v[2];
        assert_eq!(&v[0] / scale, q(1));
        assert_eq!(&v[1] / scale, q(-2));
    }

    #[test]
    fn nullspace_full_rank_is_empty() {
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        assert!(rational_nullspace(&m, 2).is_empty());
    }
}
