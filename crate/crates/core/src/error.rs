//! Error type shared by all modules. Every variant carries a stable
//! machine-readable code so CLI diagnostics can be matched by scripts.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("images {0:?} are not a bijection on 0..{1}")]
    InvalidPermutation(Vec<u16>, usize),
    #[error("group closure exceeded the element cap of {cap}")]
    ElementCapExceeded { cap: usize },
    #[error("cayley table is not a latin square (row {row}, repeated value {value})")]
    NotLatinSquare { row: usize, value: usize },
    #[error("cayley table has no identity element")]
    NoIdentity,
    #[error("cayley table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: usize, b: usize, c: usize },
    #[error("unknown named group {0:?}")]
    UnknownGroup(String),
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("prime {p} does not divide the group order {order}")]
    PrimeDoesNotDivide { p: u32, order: usize },
    #[error("empty element set where a nonempty set is required")]
    EmptySet,
    #[error("subset is not closed under conjugation: elements {a} and {b} conjugate outside it")]
    NotConjugationClosed { a: usize, b: usize },
    #[error("rack has {0} elements, more than the supported maximum of {1}")]
    RackTooLarge(usize, usize),
    #[error("operation table is not a rack: {0}")]
    NotARack(String),
    #[error("subset is not a subrack (not closed under the rack operation)")]
    NotASubrack,
    #[error("rack is not connected; operation requires a connected rack")]
    NotConnected,
    #[error("subset must be a nonempty proper subrack")]
    NotProperSubrack,
    #[error("lattice enumeration exceeded the node cap of {cap}")]
    NodeCapExceeded { cap: usize },
    #[error("poset is not a lattice: elements {x} and {y} have no unique {which}")]
    NotALattice { x: usize, y: usize, which: &'static str },
    #[error("poset relation fails {0}")]
    NotAPoset(&'static str),
    #[error("poset size {n} exceeds the {what} cap of {cap}")]
    PosetCapExceeded { n: usize, cap: usize, what: &'static str },
    #[error("interval endpoints are not ordered: {x} is not below {y}")]
    BadInterval { x: usize, y: usize },
    #[error("supplied map is not an automorphism of the poset (node {0})")]
    NotAnAutomorphism(usize),
    #[error("parameter out of bounds: {0}")]
    ParamBounds(String),
    #[error("complex construction exceeded the face cap of {cap}")]
    FaceCapExceeded { cap: usize },
    #[error("cut set is not a crosscut: {0}")]
    NotACrosscut(String),
    #[error("facet order is malformed: {0}")]
    BadFacetOrder(String),
    #[error("search exceeded its state cap of {cap}")]
    SearchCapExceeded { cap: usize },
    #[error("ranks over the two primes disagree ({0} vs {1}); escalate to snf")]
    PrimeRankDisagreement(usize, usize),
    #[error("chain element {0} is not a closed subrack")]
    ChainElementNotClosed(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code for structured diagnostics.
    pub fn code(&self) -> &'static str {
        use Error::*;
        match self {
            InvalidPermutation(..) => "invalid_permutation",
            ElementCapExceeded { .. } => "element_cap_exceeded",
            NotLatinSquare { .. } => "not_latin_square",
            NoIdentity => "no_identity",
            NonAssociative { .. } => "non_associative",
            UnknownGroup(..) => "unknown_group",
            NotPrime(..) => "not_prime",
            PrimeDoesNotDivide { .. } => "prime_does_not_divide",
            EmptySet => "empty_set",
            NotConjugationClosed { .. } => "not_conjugation_closed",
            RackTooLarge(..) => "rack_too_large",
            NotARack(..) => "not_a_rack",
            NotASubrack => "not_a_subrack",
            NotConnected => "not_connected",
            NotProperSubrack => "not_proper_subrack",
            NodeCapExceeded { .. } => "node_cap_exceeded",
            NotALattice { .. } => "not_a_lattice",
            NotAPoset(..) => "not_a_poset",
            PosetCapExceeded { .. } => "poset_cap_exceeded",
            BadInterval { .. } => "bad_interval",
            NotAnAutomorphism(..) => "not_an_automorphism",
            ParamBounds(..) => "param_bounds",
            FaceCapExceeded { .. } => "face_cap_exceeded",
            NotACrosscut(..) => "not_a_crosscut",
            BadFacetOrder(..) => "bad_facet_order",
            SearchCapExceeded { .. } => "search_cap_exceeded",
            PrimeRankDisagreement(..) => "prime_rank_disagreement",
            ChainElementNotClosed(..) => "chain_element_not_closed",
            InvalidInput(..) => "invalid_input",
            Internal(..) => "internal_invariant",
        }
    }

    /// True for errors that mean "a configured cap was hit", which the CLI
    /// maps to exit code 2.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::ElementCapExceeded { .. }
                | Error::NodeCapExceeded { .. }
                | Error::PosetCapExceeded { .. }
                | Error::FaceCapExceeded { .. }
                | Error::SearchCapExceeded { .. }
        )
    }
}
