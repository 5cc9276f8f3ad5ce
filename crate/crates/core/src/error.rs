use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("maximal simplex list is empty")]
    NoSimplices,
    #[error("simplex {simplex:?} repeats vertex {vertex}")]
    DuplicateVertex { simplex: Vec<usize>, vertex: usize },
    #[error("vertex {vertex} out of range (vertex_count = {vertex_count})")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("vertex {vertex} does not appear in any simplex")]
    UnusedVertex { vertex: usize },
    #[error("simplex has no vertices")]
    EmptySimplex,
    #[error("a cycle complex needs at least 3 vertices, got {0}")]
    CycleTooSmall(usize),
    #[error("generator {index} is not a bijection on 0..{vertex_count}")]
    NotBijective { index: usize, vertex_count: usize },
    #[error("group order exceeds the cap of {cap}")]
    GroupTooLarge { cap: usize },
    #[error("not a simplicial action: element {element:?} maps simplex {simplex:?} to {image:?}, which is not a simplex")]
    NotSimplicial {
        element: Vec<usize>,
        simplex: Vec<usize>,
        image: Vec<usize>,
    },
    #[error("regularization did not converge after {0} subdivisions")]
    RegularizationFailed(usize),
    #[error("subgroup is not contained in the acting group")]
    ForeignSubgroup,
    #[error("homology of the empty complex is not defined here")]
    EmptyComplex,
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("cochain length {got} does not match the {expected} simplices of degree {degree}")]
    CochainLength {
        degree: usize,
        expected: usize,
        got: usize,
    },
    #[error("saturation did not settle within {0} rounds")]
    SaturationCap(usize),
    #[error("depth cap must be at least 1")]
    DepthCap,
    #[error("unsupported coefficient field {0:?}")]
    UnsupportedField(String),
    #[error("unknown quantity {0:?}")]
    UnknownQuantity(String),
    #[error("invalid annotation: {0}")]
    InvalidAnnotation(String),
}
