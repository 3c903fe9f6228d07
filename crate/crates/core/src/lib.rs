//! Exact computation of the Dirichlet series counting finite-index
//! sublattices of a positive definite binary quadratic lattice up to proper
//! (`SL₂(ℤ)`) and full (`GL₂(ℤ)`) isometry.
//!
//! Two independent routes are provided for lattices whose discriminant is a
//! negative fundamental discriminant:
//!
//! * [`sublattice::brute_coefficients`] enumerates every index-`m` sublattice
//!   in Hermite normal form and counts distinct reduced subforms.
//! * [`formulas`] assembles the closed formulas from the arithmetic of the
//!   imaginary quadratic field: prime splitting, the class group, and
//!   truncated Dirichlet series over ℚ.
//!
//! ```
//! use latzeta::{formulas, sublattice, Bqf, Mode};
//!
//! let f = Bqf::new(2, 1, 3).unwrap();
//! let bundle = formulas::gl_zeta_for_form(&f, 40).unwrap();
//! let brute = sublattice::brute_coefficients(&f, 40, false).unwrap();
//! assert_eq!(bundle.sl.to_integers().unwrap(), brute.column(Mode::Sl));
//! assert_eq!(bundle.gl.to_integers().unwrap(), brute.column(Mode::Gl));
//! ```

pub mod arith;
pub mod class_group;
pub mod error;
pub mod field;
pub mod formulas;
pub mod lattice;
pub mod qform;
pub mod report;
pub mod series;
pub mod sublattice;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use class_group::{ClassGroup, ClassSubgroups, OrthoSubgroup, Subgroup};
pub use error::{Error, Result};
pub use field::{field_data, FieldData, PrimeSplitInfo, SplitKind};
pub use qform::{Bqf, IntMatrix, UnimodularMatrix};
pub use series::TruncatedSeries;

/// Which isometry group the sublattices are counted under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Proper isometries, `SL₂(ℤ)`-classes of subforms.
    Sl,
    /// All isometries, `GL₂(ℤ)`-classes of subforms.
    Gl,
}

impl Mode {
    pub const BOTH: [Mode; 2] = [Mode::Sl, Mode::Gl];
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Sl => "sl",
            Mode::Gl => "gl",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sl" => Ok(Mode::Sl),
            "gl" => Ok(Mode::Gl),
            other => error::domain(format!("unknown mode `{other}`; expected sl or gl")),
        }
    }
}
