//! The simplicial model of a wedge of `g` circles, its `n`-fold product and
//! the normalized chain complex of the pair `(X^n, Y)`, where `Y` is the
//! union of the loci `x_1 = *`, `x_n = *` and `x_i = x_{i+1}`.
//!
//! Every circle is `Δ^1/∂Δ^1`, so a `d`-simplex of the wedge is either the
//! constant simplex at the basepoint or a monotone map `[d] → [1]` tagged
//! with a generator. The latter is recorded by its jump `j ∈ [1, d]`:
//! vertices `0..j` go to `0` and `j..=d` to `1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zlinalg::{homology_from_boundaries, HomologyClass, HomologySummary, IntMatrix};

/// A simplex of the wedge of circles (its dimension is held by the
/// enclosing [`ProductSimplex`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WedgeSimplex {
    Const,
    Edge { generator: usize, jump: usize },
}

impl WedgeSimplex {
    pub fn edge(generator: usize, jump: usize) -> Self {
        WedgeSimplex::Edge { generator, jump }
    }

    /// Generator index, with `0` for the constant simplex.
    pub fn generator(&self) -> usize {
        match self {
            WedgeSimplex::Const => 0,
            WedgeSimplex::Edge { generator, .. } => *generator,
        }
    }

    /// Jump position, with `0` for the constant simplex.
    pub fn jump(&self) -> usize {
        match self {
            WedgeSimplex::Const => 0,
            WedgeSimplex::Edge { jump, .. } => *jump,
        }
    }

    /// The face `d_i` of this simplex viewed in dimension `d`.
    pub fn face(&self, d: usize, i: usize) -> WedgeSimplex {
        match *self {
            WedgeSimplex::Const => WedgeSimplex::Const,
            WedgeSimplex::Edge { generator, jump } => {
                let j = if i < jump { jump - 1 } else { jump };
                if j == 0 || j == d {
                    WedgeSimplex::Const
                } else {
                    WedgeSimplex::Edge { generator, jump: j }
                }
            }
        }
    }

    fn is_valid(&self, d: usize) -> bool {
        match *self {
            WedgeSimplex::Const => true,
            WedgeSimplex::Edge { generator, jump } => generator >= 1 && (1..=d).contains(&jump),
        }
    }
}

/// A `d`-simplex of `X^n`: `n` wedge simplices of the same dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductSimplex {
    dim: usize,
    components: Vec<WedgeSimplex>,
}

impl ProductSimplex {
    pub fn new(dim: usize, components: Vec<WedgeSimplex>) -> Result<Self> {
        if let Some(c) = components.iter().find(|c| !c.is_valid(dim)) {
            return Err(Error::InvalidSimplex(format!(
                "component {c:?} is not a simplex of dimension {dim}"
            )));
        }
        Ok(ProductSimplex { dim, components })
    }

    /// Shorthand for a product of edges given as `(generator, jump)` pairs,
    /// with `(0, 0)` for the constant simplex.
    pub fn from_pairs(dim: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let components = pairs
            .iter()
            .map(|&(g, j)| {
                if g == 0 && j == 0 {
                    WedgeSimplex::Const
                } else {
                    WedgeSimplex::edge(g, j)
                }
            })
            .collect();
        Self::new(dim, components)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[WedgeSimplex] {
        &self.components
    }

    /// Whether the simplex is degenerate at slot `i`, i.e. vertices `i` and
    /// `i+1` coincide in every component.
    pub fn degenerate_at(&self, i: usize) -> bool {
        self.components.iter().all(|c| c.jump() != i + 1)
    }

    pub fn is_degenerate(&self) -> bool {
        (0..self.dim).any(|i| self.degenerate_at(i))
    }

    /// Whether the simplex lies in `Y`.
    pub fn in_y(&self) -> bool {
        let n = self.components.len();
        n == 0
            || self.components[0] == WedgeSimplex::Const
            || self.components[n - 1] == WedgeSimplex::Const
            || self.components.windows(2).any(|w| w[0] == w[1])
    }

    pub fn face(&self, i: usize) -> Result<ProductSimplex> {
        if self.dim == 0 || i > self.dim {
            return Err(Error::IndexOutOfRange {
                index: i,
                lo: 0,
                hi: self.dim,
            });
        }
        Ok(ProductSimplex {
            dim: self.dim - 1,
            components: self.components.iter().map(|c| c.face(self.dim, i)).collect(),
        })
    }

    /// Ordering key: generators (constant = 0) lexicographically, then
    /// jump vectors in decreasing lexicographic order.
    fn sort_key(&self) -> (Vec<usize>, std::cmp::Reverse<Vec<usize>>) {
        (
            self.components.iter().map(WedgeSimplex::generator).collect(),
            std::cmp::Reverse(self.components.iter().map(WedgeSimplex::jump).collect()),
        )
    }

    /// Relabels each generator through `map`; a generator sent to `None`
    /// collapses to the basepoint.
    pub fn push_forward(&self, map: impl Fn(usize) -> Option<usize>) -> ProductSimplex {
        ProductSimplex {
            dim: self.dim,
            components: self
                .components
                .iter()
                .map(|c| match *c {
                    WedgeSimplex::Const => WedgeSimplex::Const,
                    WedgeSimplex::Edge { generator, jump } => match map(generator) {
                        Some(g) => WedgeSimplex::Edge { generator: g, jump },
                        None => WedgeSimplex::Const,
                    },
                })
                .collect(),
        }
    }

    /// Renders as `((x,2),(y,1))` using `name` for generators and `*` for
    /// the constant simplex.
    pub fn render(&self, name: impl Fn(usize) -> String) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| match *c {
                WedgeSimplex::Const => "*".to_string(),
                WedgeSimplex::Edge { generator, jump } => format!("({},{jump})", name(generator)),
            })
            .collect();
        format!("({})", parts.join(","))
    }
}

impl PartialOrd for ProductSimplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ProductSimplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.dim, self.sort_key()).cmp(&(other.dim, other.sort_key()))
    }
}

/// Default generator names: `a`, `b`, … in the word syntax.
pub fn letter_name(g: usize) -> String {
    if (1..=26).contains(&g) {
        ((b'a' + (g - 1) as u8) as char).to_string()
    } else {
        format!("g{g}")
    }
}

impl fmt::Display for ProductSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(letter_name))
    }
}

/// Nondegenerate `d`-simplices of `X^n` for a wedge of `g` circles, not
/// filtered by `Y`, in canonical order.
pub fn nondegenerate_simplices(n: usize, g: usize, d: usize) -> Vec<ProductSimplex> {
    let mut choices = vec![WedgeSimplex::Const];
    for gen in 1..=g {
        for j in 1..=d {
            choices.push(WedgeSimplex::edge(gen, j));
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(
        n: usize,
        d: usize,
        choices: &[WedgeSimplex],
        current: &mut Vec<WedgeSimplex>,
        out: &mut Vec<ProductSimplex>,
    ) {
        if current.len() == n {
            let s = ProductSimplex {
                dim: d,
                components: current.clone(),
            };
            if !s.is_degenerate() {
                out.push(s);
            }
            return;
        }
        for c in choices {
            current.push(*c);
            rec(n, d, choices, current, out);
            current.pop();
        }
    }
    rec(n, d, &choices, &mut current, &mut out);
    out.sort();
    out
}

/// Basis of the relative chain group in dimension `d`: nondegenerate
/// simplices outside `Y`, in canonical order.
pub fn enumerate_basis(n: usize, g: usize, d: usize) -> Vec<ProductSimplex> {
    nondegenerate_simplices(n, g, d)
        .into_iter()
        .filter(|s| !s.in_y())
        .collect()
}

/// The normalized chain complex of `(X^n, Y)` in dimensions `0..=d_max`.
#[derive(Debug, Clone)]
pub struct PairComplex {
    n: usize,
    g: usize,
    bases: Vec<Vec<ProductSimplex>>,
    index: Vec<HashMap<ProductSimplex, usize>>,
    /// `boundaries[d]` is `∂_d : C_d → C_{d-1}` (rows indexed by `C_{d-1}`).
    boundaries: Vec<IntMatrix>,
}

impl PairComplex {
    /// Builds the complex for `n ≥ 1` factors of a wedge of `g` circles.
    pub fn build(n: usize, g: usize, d_max: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::IndexOutOfRange {
                index: 0,
                lo: 1,
                hi: usize::MAX,
            });
        }
        let bases: Vec<Vec<ProductSimplex>> = (0..=d_max).map(|d| enumerate_basis(n, g, d)).collect();
        Self::from_bases(n, g, bases)
    }

    /// The complex with `d_max = n + 1`, enough to compute `H_n`.
    pub fn for_top_degree(n: usize, g: usize) -> Result<Self> {
        Self::build(n, g, n + 1)
    }

    fn from_bases(n: usize, g: usize, bases: Vec<Vec<ProductSimplex>>) -> Result<Self> {
        let index: Vec<HashMap<ProductSimplex, usize>> = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let mut boundaries = Vec::with_capacity(bases.len());
        for d in 0..bases.len() {
            let rows = if d == 0 { 0 } else { bases[d - 1].len() };
            let mut m = IntMatrix::zeros(rows, bases[d].len());
            if d > 0 {
                for (col, s) in bases[d].iter().enumerate() {
                    for i in 0..=d {
                        let f = s.face(i)?;
                        if let Some(&row) = index[d - 1].get(&f) {
                            m[(row, col)] += if i % 2 == 0 { 1 } else { -1 };
                        }
                    }
                }
            }
            boundaries.push(m);
        }
        Ok(PairComplex {
            n,
            g,
            bases,
            index,
            boundaries,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn d_max(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn basis(&self, d: usize) -> Result<&[ProductSimplex]> {
        self.bases
            .get(d)
            .map(Vec::as_slice)
            .ok_or(Error::MissingDegree(d))
    }

    pub fn rank(&self, d: usize) -> usize {
        self.bases.get(d).map_or(0, Vec::len)
    }

    /// `∂_d : C_d → C_{d-1}`.
    pub fn boundary(&self, d: usize) -> Result<&IntMatrix> {
        self.boundaries.get(d).ok_or(Error::MissingDegree(d))
    }

    /// Position of a simplex in the basis of its dimension, if it is a
    /// basis element.
    pub fn position(&self, s: &ProductSimplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    /// Checks `∂_{d-1} ∘ ∂_d = 0` in every dimension; returns the first
    /// failing `d`.
    pub fn check_complex(&self) -> Result<()> {
        for d in 2..self.boundaries.len() {
            if !self.boundaries[d - 1].mul(&self.boundaries[d])?.is_zero() {
                return Err(Error::NotAComplex(d));
            }
        }
        Ok(())
    }

    /// The coefficient vector of a combination of `d`-simplices in the
    /// relative chain group; degenerate simplices and simplices in `Y`
    /// are zero there and are dropped.
    pub fn chain_vector<'a>(
        &self,
        d: usize,
        terms: impl IntoIterator<Item = (&'a ProductSimplex, i64)>,
    ) -> Result<Vec<i64>> {
        let basis = self.basis(d)?;
        let mut v = vec![0i64; basis.len()];
        for (s, c) in terms {
            if s.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: s.dim(),
                });
            }
            if s.components.len() != self.n {
                return Err(Error::InvalidSimplex(format!(
                    "{s} has the wrong number of factors"
                )));
            }
            if let Some(&i) = self.index[d].get(s) {
                v[i] += c;
            } else if !s.is_degenerate() && !s.in_y() {
                return Err(Error::InvalidSimplex(format!("{s} is not in the model")));
            }
        }
        Ok(v)
    }

    /// Homology of the relative complex in degree `d < d_max`.
    pub fn homology(&self, d: usize) -> Result<HomologySummary> {
        let out = self.boundary(d + 1)?;
        homology_from_boundaries(d, self.boundary(d)?, out)
    }

    /// Homology coordinates of a relative cycle.
    pub fn cycle_coordinates(&self, d: usize, z: &[i64]) -> Result<HomologyClass> {
        self.homology(d)?.coordinates_i64(z)
    }

    pub fn to_export(&self) -> ComplexExport {
        let dims = (0..self.bases.len())
            .map(|d| DimExport {
                d,
                basis: self.bases[d]
                    .iter()
                    .map(|s| s.components.iter().map(|c| [c.generator(), c.jump()]).collect())
                    .collect(),
                boundary: self.boundaries[d]
                    .triplets()
                    .into_iter()
                    .map(|(i, j, x)| (i, j, x.to_i64().expect("boundary entries are small")))
                    .collect(),
            })
            .collect();
        ComplexExport {
            n: self.n,
            g: self.g,
            dims,
        }
    }

    /// Rebuilds a complex from its export, checking that the listed bases
    /// and boundary matrices agree with the model.
    pub fn from_export(e: &ComplexExport) -> Result<Self> {
        let mut bases = Vec::with_capacity(e.dims.len());
        for (pos, dim) in e.dims.iter().enumerate() {
            if dim.d != pos {
                return Err(Error::MalformedComplex(format!(
                    "dimension entries must be listed in order; found d={} at position {pos}",
                    dim.d
                )));
            }
            let basis = dim
                .basis
                .iter()
                .map(|cs| {
                    if cs.len() != e.n {
                        return Err(Error::MalformedComplex(format!(
                            "simplex with {} factors in a complex with n={}",
                            cs.len(),
                            e.n
                        )));
                    }
                    let pairs: Vec<(usize, usize)> = cs.iter().map(|c| (c[0], c[1])).collect();
                    ProductSimplex::from_pairs(dim.d, &pairs)
                        .map_err(|err| Error::MalformedComplex(err.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            bases.push(basis);
        }
        if bases.is_empty() {
            return Err(Error::MalformedComplex("no dimensions listed".into()));
        }
        let c = Self::from_bases(e.n, e.g, bases)?;
        for dim in &e.dims {
            let rows = if dim.d == 0 { 0 } else { c.rank(dim.d - 1) };
            let m = IntMatrix::from_triplets(rows, c.rank(dim.d), &dim.boundary)
                .map_err(|err| Error::MalformedComplex(err.to_string()))?;
            if &m != c.boundary(dim.d)? {
                return Err(Error::MalformedComplex(format!(
                    "boundary matrix in dimension {} does not match the basis",
                    dim.d
                )));
            }
        }
        Ok(c)
    }
}

/// JSON form of a [`PairComplex`]. Each basis simplex is a list of
/// `[generator, jump]` pairs (`[0, 0]` for the constant simplex); boundary
/// matrices are sparse `(row, col, value)` triplets of `∂_d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexExport {
    pub n: usize,
    pub g: usize,
    pub dims: Vec<DimExport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimExport {
    pub d: usize,
    pub basis: Vec<Vec<[usize; 2]>>,
    pub boundary: Vec<(usize, usize, i64)>,
}

/// Sparse sum of product simplices.
pub type SimplexChain = BTreeMap<ProductSimplex, i64>;

/// Adds `coeff · s` to a sparse chain, dropping cancelled terms.
pub fn add_simplex(chain: &mut SimplexChain, s: ProductSimplex, coeff: i64) {
    if coeff == 0 {
        return;
    }
    let e = chain.entry(s.clone()).or_insert(0);
    *e += coeff;
    if *e == 0 {
        chain.remove(&s);
    }
}

/// Converts a homology class with small free coordinates to `i64`s.
pub fn class_to_i64(c: &HomologyClass) -> Result<Vec<i64>> {
    c.free_i64()
        .ok_or_else(|| Error::InvalidSimplex("homology coordinates overflow i64".into()))
}

#[doc(hidden)]
pub fn bigint_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
