//! Named foliation families and the specs they build.
//!
//! | text                  | base                     | fibers                          |
//! |-----------------------|--------------------------|---------------------------------|
//! | `C(n;s..)`            | one vertex               | `C(s..)`                        |
//! | `GP(n,k)`             | path on 2 vertices       | `C(k)`, `C(1)`                  |
//! | `I(n,k,l)`            | path on 2 vertices       | `C(k)`, `C(l)`                  |
//! | `SW(n;A_1,..,A_m)`    | path on `m` vertices     | `C(A_i)`                        |
//! | `Y(n;A,B,C)`          | star `K_{1,3}`           | `C(A)`, `C(B)`, `C(C)`, hub empty |
//! | `H(n;A,B,C,D)`        | H shape on 6 vertices    | four given, two centers empty   |
//! | `T(n,m)`              | cycle `C_m`              | `C(1)` everywhere               |
//! | `X(n;B,A)`            | `B`                      | `C(A)` everywhere               |
//! | `FOLIATION{..}`       | explicit edges           | explicit                        |

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{BaseGraph, FiberSpec, FoliationSpec};
use crate::{Error, Result};

/// An edge `(i, j, multiplicity)` with 0-based `i < j`.
pub type Edge = (usize, usize, u32);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BaseDescriptor {
    Complete(usize),
    Path(usize),
    Cycle(usize),
    /// Vertex count is the largest endpoint.
    Edges(Vec<Edge>),
}

impl BaseDescriptor {
    pub fn order(&self) -> usize {
        match self {
            BaseDescriptor::Complete(m) | BaseDescriptor::Path(m) | BaseDescriptor::Cycle(m) => *m,
            BaseDescriptor::Edges(edges) => edges.iter().map(|&(_, j, _)| j + 1).max().unwrap_or(1),
        }
    }

    pub fn build(&self) -> Result<BaseGraph> {
        match self {
            BaseDescriptor::Complete(m) => BaseGraph::complete(*m),
            BaseDescriptor::Path(m) => BaseGraph::path(*m),
            BaseDescriptor::Cycle(m) => BaseGraph::cycle(*m),
            BaseDescriptor::Edges(edges) => BaseGraph::from_edges(self.order(), edges),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Circulant {
        jumps: Vec<u32>,
    },
    /// `I(n,k,l)` with `l != 1`; `l = 1` is [`Family::Petersen`].
    IGraph {
        k: u32,
        l: u32,
    },
    Petersen {
        k: u32,
    },
    Sandwich {
        fibers: Vec<Vec<u32>>,
    },
    Y {
        fibers: [Vec<u32>; 3],
    },
    H {
        fibers: [Vec<u32>; 4],
    },
    Torus {
        m: usize,
    },
    Product {
        base: BaseDescriptor,
        jumps: Vec<u32>,
    },
    Foliation {
        edges: Vec<Edge>,
        fibers: Vec<Vec<u32>>,
    },
}

impl Family {
    /// `I(n,k,l)`, which is `GP(n,k)` when `l = 1`.
    pub fn i_graph(k: u32, l: u32) -> Family {
        if l == 1 {
            Family::Petersen { k }
        } else {
            Family::IGraph { k, l }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Family::Circulant { .. } => "C",
            Family::IGraph { .. } => "I",
            Family::Petersen { .. } => "GP",
            Family::Sandwich { .. } => "SW",
            Family::Y { .. } => "Y",
            Family::H { .. } => "H",
            Family::Torus { .. } => "T",
            Family::Product { .. } => "X",
            Family::Foliation { .. } => "FOLIATION",
        }
    }
}

/// Byte range of a descriptor in its source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

/// A parsed family, optionally with `n` bound to a number.
#[derive(Clone, Debug, Eq)]
pub struct FamilyDescriptor {
    pub family: Family,
    pub n: Option<u64>,
    pub span: Span,
}

impl PartialEq for FamilyDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.n == other.n
    }
}

impl FamilyDescriptor {
    /// A descriptor with `n` left symbolic.
    pub fn symbolic(family: Family) -> Self {
        FamilyDescriptor {
            family,
            n: None,
            span: Span::default(),
        }
    }

    pub fn with_n(family: Family, n: u64) -> Self {
        FamilyDescriptor {
            family,
            n: Some(n),
            span: Span::default(),
        }
    }

    pub fn kind(&self) -> &'static str {
        self.family.kind()
    }
}

fn fiber(jumps: &[u32]) -> Result<FiberSpec> {
    FiberSpec::new(jumps.to_vec())
}

fn fibers(lists: &[Vec<u32>]) -> Result<Vec<FiberSpec>> {
    lists.iter().map(|j| fiber(j)).collect()
}

/// The foliation spec a descriptor stands for.
pub fn build_family(desc: &FamilyDescriptor) -> Result<FoliationSpec> {
    build_family_with(desc, false)
}

/// As [`build_family`]; `allow_disconnected` admits a disconnected base.
pub fn build_family_with(
    desc: &FamilyDescriptor,
    allow_disconnected: bool,
) -> Result<FoliationSpec> {
    let (base, fibers) = parts(&desc.family)?;
    FoliationSpec::with_options(base, fibers, allow_disconnected)
}

fn parts(family: &Family) -> Result<(BaseGraph, Vec<FiberSpec>)> {
    Ok(match family {
        Family::Circulant { jumps } => (BaseGraph::single_vertex(), vec![fiber(jumps)?]),
        Family::Petersen { k } => (BaseGraph::path(2)?, vec![fiber(&[*k])?, fiber(&[1])?]),
        Family::IGraph { k, l } => (BaseGraph::path(2)?, vec![fiber(&[*k])?, fiber(&[*l])?]),
        Family::Sandwich { fibers: lists } => {
            if lists.len() < 2 {
                return Err(Error::BadArity {
                    family: "SW",
                    expected: "at least 2 fibers",
                    found: lists.len(),
                });
            }
            (BaseGraph::path(lists.len())?, fibers(lists)?)
        }
        Family::Y { fibers: lists } => {
            let star = BaseGraph::from_edges(4, &[(0, 3, 1), (1, 3, 1), (2, 3, 1)])?;
            let mut f = fibers(lists)?;
            f.push(FiberSpec::empty());
            (star, f)
        }
        Family::H { fibers: lists } => {
            let h =
                BaseGraph::from_edges(6, &[(0, 4, 1), (2, 4, 1), (1, 5, 1), (3, 5, 1), (4, 5, 1)])?;
            let mut f = fibers(lists)?;
            f.extend([FiberSpec::empty(), FiberSpec::empty()]);
            (h, f)
        }
        Family::Torus { m } => {
            if *m < 3 {
                return Err(Error::BadArity {
                    family: "T",
                    expected: "m >= 3",
                    found: *m,
                });
            }
            (BaseGraph::cycle(*m)?, vec![fiber(&[1])?; *m])
        }
        Family::Product { base, jumps } => {
            let g = base.build()?;
            let f = vec![fiber(jumps)?; g.order()];
            (g, f)
        }
        Family::Foliation {
            edges,
            fibers: lists,
        } => {
            if lists.is_empty() {
                return Err(Error::EmptyBase);
            }
            (BaseGraph::from_edges(lists.len(), edges)?, fibers(lists)?)
        }
    })
}
