//! Spectra and integrality of normal mixed Cayley graphs over finite groups.
//!
//! A mixed Cayley graph `Cay(Γ, S)` has an undirected edge for every
//! connection-set element whose inverse is also in `S` and a directed edge
//! otherwise. Two matrices are attached to it: the (0,1)-adjacency matrix
//! `A` and the Hermitian adjacency matrix of the second kind `H`, which
//! weights directed edges by the primitive sixth root of unity. This crate
//! computes both spectra through irreducible-character sums, decides when
//! all `H`-eigenvalues are rational integers (HS-integrality) and when all
//! `A`-eigenvalues are Eisenstein integers, and scans group catalogs for
//! the divisibility behaviour of the skew character sums `T_y(j)`.
//!
//! Modules follow the pipeline: [`group`] builds exact finite groups,
//! [`classes`] derives conjugacy classes and character tables, [`atoms`]
//! holds the subgroup-generated Boolean algebra machinery, [`spectra`]
//! evaluates eigenvalues, [`integrality`] implements the structural and
//! spectral integrality criteria, and [`enumerate`] drives exhaustive
//! catalog scans.

pub mod atoms;
pub mod classes;
pub mod eigen;
pub mod eisenstein;
pub mod elemset;
pub mod enumerate;
pub mod group;
pub mod integrality;
pub mod perm;
pub mod rng;
pub mod spectra;

use thiserror::Error;

/// Orthogonality verification tolerance for computed character tables.
pub const TOL_CHAR: f64 = 1e-8;
/// Default integer-snapping tolerance for eigenvalue integrality tests.
pub const TOL_INT: f64 = 1e-6;
/// Residual contract for the dense eigensolver, relative to the matrix scale.
pub const EIG_RESIDUAL: f64 = 1e-9;
/// Gap below which two numerically computed eigenvalues merge into one
/// spectrum entry.
pub const MERGE_EPS: f64 = 1e-6;
/// Default bound on group order accepted by the family constructors.
pub const DEFAULT_MAX_ORDER: usize = 2000;
/// Default bound on the number of connection sets an enumeration may visit.
pub const DEFAULT_MAX_SETS: u64 = 1 << 20;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported group family: {0}")]
    UnsupportedFamily(String),
    #[error("group order {order} exceeds the configured bound {bound}")]
    SizeExceeded { order: usize, bound: usize },
    #[error("random class-matrix combination stayed degenerate after {retries} retries")]
    DegenerateCombination { retries: usize },
    #[error("character table failed orthogonality verification: {0}")]
    OrthogonalityFailure(String),
    #[error("{d} is not a divisor of {n}")]
    NotADivisor { n: u64, d: u64 },
    #[error("residue must be 1 or 2, got {0}")]
    BadResidue(u64),
    #[error("the identity element is not allowed here")]
    IdentityElement,
    #[error("element has order not divisible by 3")]
    NotInGamma3,
    #[error("connection set contains the identity")]
    IdentityInSet,
    #[error("connection set is not a union of conjugacy classes: {0}")]
    NotNormal(String),
    #[error("eigensolver failed to converge after {0} sweeps")]
    ConvergenceFailure(usize),
    #[error("enumeration of {sets} sets exceeds the bound {bound}")]
    EnumerationTooLarge { sets: u128, bound: u64 },
    #[error("cross-route invariant violated; reproduce with: {command}")]
    InvariantViolation { command: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Everything downstream analyses need about one group: the group itself,
/// its conjugacy structure, its character table and the atom partitions.
pub struct Context {
    pub name: String,
    pub group: group::Group,
    pub classes: classes::ClassData,
    pub chars: classes::CharacterTable,
    pub atoms: atoms::AtomSystem,
}

impl Context {
    pub fn new(group: group::Group) -> Result<Self> {
        Self::named("custom", group)
    }

    pub fn named(name: &str, group: group::Group) -> Result<Self> {
        let classes = classes::conjugacy_classes(&group);
        let chars = classes::character_table(&group, &classes)?;
        let atoms = atoms::AtomSystem::new(&group);
        Ok(Context {
            name: name.to_string(),
            group,
            classes,
            chars,
            atoms,
        })
    }

    pub fn from_spec(spec: &group::GroupSpec) -> Result<Self> {
        Self::named(&spec.to_string(), group::build_group(spec)?)
    }

    /// As [`Context::from_spec`] with a custom construction bound.
    pub fn from_spec_bounded(spec: &group::GroupSpec, max_order: usize) -> Result<Self> {
        Self::named(&spec.to_string(), group::build_group_bounded(spec, max_order)?)
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }
}

/// Distance from `x` to the nearest integer.
pub fn int_distance(x: f64) -> f64 {
    (x - x.round()).abs()
}
