//! Sharp functional-inequality constants on antisymmetric functions.
//!
//! For `N` particles in `d` dimensions this crate computes, exactly where the
//! quantity is rational and to configurable precision otherwise:
//!
//! * the degree `V_d(N)` of the minimal antisymmetric harmonic homogeneous
//!   polynomial and the associated minimal Laplace-Beltrami eigenvalue
//!   `lambda_d(N)` on the sphere `S^{dN-1}` ([`combinatorics`]),
//! * the polynomial itself as an exact sparse multivariate polynomial,
//!   together with symbolic antisymmetry/homogeneity/harmonicity checks and a
//!   brute-force minimal-degree oracle ([`polyalg`]),
//! * the sharp Hardy, Sobolev and Caffarelli-Kohn-Nirenberg constants on the
//!   antisymmetric subspace, plus a sufficient positivity criterion for
//!   Schroedinger operators `-Delta - V` with radial `V >= 0` ([`constants`]),
//! * reference tables and gap series with CSV/JSON reports ([`verify`]).
//!
//! The `antisym` binary exposes all of it as subcommands; see the README.

pub mod combinatorics;
pub mod constants;
pub mod polyalg;
pub mod real;
pub mod verify;

use num_bigint::BigInt;

/// Errors reported by fallible operations.
///
/// Pure counting/algebra functions with total domains panic on contract
/// violations instead (documented per function).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("work budget exceeded: estimated {estimated} terms, budget {budget}")]
    BudgetExceeded { estimated: BigInt, budget: u64 },
    #[error("precision {0} outside supported range 1..={max}", max = real::MAX_DIGITS)]
    PrecisionOutOfRange(u32),
    #[error("non-integrable weighted potential: {0}")]
    NonIntegrable(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Cap on the number of monomials a symbolic computation may materialize.
///
/// The determinant expansion produces exactly `N!` terms, which is also its
/// work estimate; the minimal-degree oracle budgets the full monomial space
/// it has to antisymmetrize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkBudget {
    pub max_terms: u64,
}

impl WorkBudget {
    /// Default cap for determinant expansion (admits `d = 1, N <= 9`).
    pub const DETERMINANT_DEFAULT: WorkBudget = WorkBudget { max_terms: 400_000 };
    /// Default cap for the oracle's monomial space.
    pub const ORACLE_DEFAULT: WorkBudget = WorkBudget { max_terms: 200_000 };

    /// Reads the `ANTISYM_BUDGET` override, falling back to `self`.
    pub fn with_env_override(self) -> WorkBudget {
        match std::env::var("ANTISYM_BUDGET") {
            Ok(s) => match s.trim().parse::<u64>() {
                Ok(v) if v > 0 => WorkBudget { max_terms: v },
                _ => self,
            },
            Err(_) => self,
        }
    }

    pub fn check(&self, estimated: &BigInt) -> Result<()> {
        if *estimated > BigInt::from(self.max_terms) {
            return Err(Error::BudgetExceeded {
                estimated: estimated.clone(),
                budget: self.max_terms,
            });
        }
        Ok(())
    }
}
