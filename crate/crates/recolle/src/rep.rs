//! Representations of bound quivers over GF(2): the objects and morphisms of
//! the abelian categories under study, with kernels, cokernels, sums,
//! duality, hom spaces, isomorphism testing, extension classes and
//! exhaustive enumeration.

use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix, LinearMap, Subspace};
use crate::quiver::{BoundQuiver, Path};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Exhaustive isomorphism search is attempted when the hom space has at most
/// this many dimensions (so at most 2^16 candidates); beyond it the test
/// falls back to invariant screening with an explicit Undecided outcome.
pub const DEFAULT_ISO_BUDGET: usize = 16;

/// The iso-search budget in effect: `RECOLLE_BUDGET` when set to a valid
/// number, the default otherwise. Read once per process.
pub fn iso_budget() -> usize {
    static BUDGET: std::sync::OnceLock<usize> = std::sync::OnceLock::new();
    *BUDGET.get_or_init(|| {
        std::env::var("RECOLLE_BUDGET")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(DEFAULT_ISO_BUDGET)
    })
}

/// Refuse enumerations with more than 2^24 raw candidates.
pub const ENUMERATION_BIT_BUDGET: usize = 24;

/// A finite-dimensional representation of a bound quiver: one GF(2) space
/// per vertex, one linear map per arrow.
#[derive(Clone, PartialEq, Eq)]
pub struct Rep {
    pub quiver: Arc<BoundQuiver>,
    pub dims: Vec<usize>,
    pub arrow_maps: Vec<LinearMap>,
}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep[{} dims={:?}]", self.quiver.name, self.dims)
    }
}

impl Rep {
    pub fn new(quiver: Arc<BoundQuiver>, dims: Vec<usize>, arrow_maps: Vec<LinearMap>) -> Self {
        assert_eq!(dims.len(), quiver.vertex_count());
        assert_eq!(arrow_maps.len(), quiver.arrows.len());
        for (i, a) in quiver.arrows.iter().enumerate() {
            assert_eq!(arrow_maps[i].domain_dim, dims[a.source], "arrow {} domain", a.name);
            assert_eq!(arrow_maps[i].codomain_dim, dims[a.target], "arrow {} codomain", a.name);
        }
        Rep {
            quiver,
            dims,
            arrow_maps,
        }
    }

    pub fn zero(quiver: Arc<BoundQuiver>) -> Self {
        let dims = vec![0; quiver.vertex_count()];
        let arrow_maps = quiver.arrows.iter().map(|_| LinearMap::zero(0, 0)).collect();
        Rep {
            quiver,
            dims,
            arrow_maps,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Composite of arrow maps along a path starting at `v`.
    pub fn eval_path(&self, v: usize, path: &Path) -> LinearMap {
        let mut m = LinearMap::identity(self.dims[v]);
        for &a in path {
            m = self.arrow_maps[a].compose(&m);
        }
        m
    }

    /// True iff every relation evaluates to the zero map.
    pub fn check_relations(&self) -> bool {
        self.quiver.relations.iter().all(|rel| {
            let (src, tgt) = self.quiver.path_endpoints(&rel[0]);
            let mut sum = LinearMap::zero(self.dims[src], self.dims[tgt]);
            for path in rel {
                sum = sum.add(&self.eval_path(src, path));
            }
            sum.is_zero()
        })
    }

    /// Vertexwise transpose over the opposite quiver. An exact contravariant
    /// involution: kernels and cokernels trade places.
    pub fn dualize(&self) -> Rep {
        let op = self.quiver.opposite();
        let arrow_maps = self.arrow_maps.iter().map(LinearMap::transpose).collect();
        Rep::new(op, self.dims.clone(), arrow_maps)
    }

    /// Dimension of the radical at each vertex: the sum of images of all
    /// incoming arrow maps. Correct because relations have length >= 2.
    pub fn radical_dims(&self) -> Vec<usize> {
        self.radical_subspaces().iter().map(Subspace::dim).collect()
    }

    pub fn radical_subspaces(&self) -> Vec<Subspace> {
        (0..self.quiver.vertex_count())
            .map(|v| {
                let mut span = BitMatrix::zeros(0, self.dims[v]);
                for (i, a) in self.quiver.arrows.iter().enumerate() {
                    if a.target == v {
                        span = span.vstack(&self.arrow_maps[i].matrix.transpose());
                    }
                }
                Subspace::from_spanning_rows(self.dims[v], &span)
            })
            .collect()
    }
}

// Rep JSON form: {"quiver": name, "dims": {...}, "arrows": {...}}.
impl Serialize for Rep {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Rep", 3)?;
        st.serialize_field("quiver", &self.quiver.name)?;
        let dims: BTreeMap<&str, usize> = self
            .quiver
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), self.dims[i]))
            .collect();
        st.serialize_field("dims", &dims)?;
        let arrows: BTreeMap<&str, &BitMatrix> = self
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.name.as_str(), &self.arrow_maps[i].matrix))
            .collect();
        st.serialize_field("arrows", &arrows)?;
        st.end()
    }
}

/// Parse the Rep JSON form against the quiver registry.
pub fn rep_from_json(value: &serde_json::Value) -> Result<Rep> {
    let name = value["quiver"]
        .as_str()
        .ok_or_else(|| Error::Precondition("rep JSON missing quiver name".into()))?;
    let quiver = crate::quiver::by_name(name).ok_or_else(|| Error::UnknownName(name.into()))?;
    let mut dims = vec![0usize; quiver.vertex_count()];
    for (i, v) in quiver.vertices.iter().enumerate() {
        dims[i] = value["dims"][v]
            .as_u64()
            .ok_or_else(|| Error::Precondition(format!("missing dim for vertex {v}")))?
            as usize;
    }
    let mut arrow_maps = Vec::new();
    for a in &quiver.arrows {
        let m: BitMatrix = serde_json::from_value(value["arrows"][&a.name].clone())?;
        arrow_maps.push(LinearMap::new(m));
    }
    let rep = Rep::new(quiver, dims, arrow_maps);
    if !rep.check_relations() {
        return Err(Error::Precondition("representation violates relations".into()));
    }
    Ok(rep)
}

/// A morphism of representations: one component per vertex, commuting with
/// every arrow map.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct RepMorphism {
    #[serde(skip)]
    pub source: Rep,
    #[serde(skip)]
    pub target: Rep,
    pub components: Vec<LinearMap>,
}

impl fmt::Debug for RepMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RepMorphism {:?} -> {:?} {:?}",
            self.source, self.target, self.components
        )
    }
}

impl RepMorphism {
    pub fn new(source: Rep, target: Rep, components: Vec<LinearMap>) -> Self {
        let f = RepMorphism {
            source,
            target,
            components,
        };
        debug_assert!(f.is_valid(), "intertwining violated");
        f
    }

    pub fn identity(r: &Rep) -> Self {
        let components = r.dims.iter().map(|&d| LinearMap::identity(d)).collect();
        RepMorphism::new(r.clone(), r.clone(), components)
    }

    pub fn zero(source: &Rep, target: &Rep) -> Self {
        let components = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&d, &c)| LinearMap::zero(d, c))
            .collect();
        RepMorphism::new(source.clone(), target.clone(), components)
    }

    /// The intertwining condition: for every arrow a: v -> w,
    /// `f_w ∘ source(a) = target(a) ∘ f_v`.
    pub fn is_valid(&self) -> bool {
        self.source.quiver.arrows.iter().enumerate().all(|(i, a)| {
            self.components[a.target].compose(&self.source.arrow_maps[i])
                == self.target.arrow_maps[i].compose(&self.components[a.source])
        })
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &RepMorphism) -> RepMorphism {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(f, g)| f.compose(g))
            .collect();
        RepMorphism::new(other.source.clone(), self.target.clone(), components)
    }

    pub fn add(&self, other: &RepMorphism) -> RepMorphism {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(f, g)| f.add(g))
            .collect();
        RepMorphism::new(self.source.clone(), self.target.clone(), components)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(LinearMap::is_zero)
    }

    pub fn is_mono(&self) -> bool {
        self.components
            .iter()
            .all(|c| gf2::kernel_basis(c).dim() == 0)
    }

    pub fn is_epi(&self) -> bool {
        self.components.iter().all(|c| c.rank() == c.codomain_dim)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.components.iter().all(LinearMap::is_invertible)
    }

    pub fn inverse(&self) -> Option<RepMorphism> {
        let components: Option<Vec<LinearMap>> =
            self.components.iter().map(LinearMap::inverse).collect();
        Some(RepMorphism::new(
            self.target.clone(),
            self.source.clone(),
            components?,
        ))
    }

    pub fn dualize(&self) -> RepMorphism {
        RepMorphism::new(
            self.target.dualize(),
            self.source.dualize(),
            self.components.iter().map(LinearMap::transpose).collect(),
        )
    }

    /// Per-vertex ranks, for exactness bookkeeping.
    pub fn ranks(&self) -> Vec<usize> {
        self.components.iter().map(LinearMap::rank).collect()
    }
}

/// Vertexwise kernel with induced arrow maps; returns the kernel object and
/// its inclusion. Panics if an induced arrow map fails to exist, which for
/// valid input is impossible.
pub fn kernel(f: &RepMorphism) -> (Rep, RepMorphism) {
    let q = &f.source.quiver;
    let subs: Vec<Subspace> = f.components.iter().map(gf2::kernel_basis).collect();
    let dims: Vec<usize> = subs.iter().map(Subspace::dim).collect();
    let arrow_maps: Vec<LinearMap> = q
        .arrows
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let restricted = f.source.arrow_maps[i].compose(&subs[a.source].inclusion());
            gf2::corestrict(&restricted, &subs[a.target])
        })
        .collect();
    let ker = Rep::new(q.clone(), dims, arrow_maps);
    let incl = RepMorphism::new(
        ker.clone(),
        f.source.clone(),
        subs.iter().map(Subspace::inclusion).collect(),
    );
    (ker, incl)
}

/// Vertexwise cokernel in the canonical coordinates of [`gf2::image_and_cokernel`].
pub fn cokernel(f: &RepMorphism) -> (Rep, RepMorphism) {
    let q = &f.target.quiver;
    let projs: Vec<LinearMap> = f
        .components
        .iter()
        .map(|c| gf2::image_and_cokernel(c).2)
        .collect();
    let dims: Vec<usize> = projs.iter().map(|p| p.codomain_dim).collect();
    let arrow_maps: Vec<LinearMap> = q
        .arrows
        .iter()
        .enumerate()
        .map(|(i, a)| {
            gf2::induced_on_cokernels(&projs[a.source], &projs[a.target], &f.target.arrow_maps[i])
        })
        .collect();
    let coker = Rep::new(q.clone(), dims, arrow_maps);
    let proj = RepMorphism::new(f.target.clone(), coker.clone(), projs);
    (coker, proj)
}

/// Image of `f` (kernel of its cokernel projection) with the epi-mono
/// factorization `f = incl ∘ epi`.
pub fn image(f: &RepMorphism) -> (Rep, RepMorphism, RepMorphism) {
    let (_, proj) = cokernel(f);
    let (im, incl) = kernel(&proj);
    let epi_components: Vec<LinearMap> = f
        .components
        .iter()
        .zip(&incl.components)
        .map(|(fc, ic)| gf2::solve(ic, fc).expect("image factorization must exist"))
        .collect();
    let epi = RepMorphism::new(f.source.clone(), im.clone(), epi_components);
    (im, epi, incl)
}

/// Biproduct with canonical injections and projections.
pub struct DirectSum {
    pub sum: Rep,
    pub inj1: RepMorphism,
    pub inj2: RepMorphism,
    pub proj1: RepMorphism,
    pub proj2: RepMorphism,
}

pub fn direct_sum(m: &Rep, n: &Rep) -> DirectSum {
    assert_eq!(*m.quiver, *n.quiver, "direct sum across different quivers");
    let dims: Vec<usize> = m.dims.iter().zip(&n.dims).map(|(a, b)| a + b).collect();
    let arrow_maps: Vec<LinearMap> = m
        .arrow_maps
        .iter()
        .zip(&n.arrow_maps)
        .map(|(a, b)| a.direct_sum(b))
        .collect();
    let sum = Rep::new(m.quiver.clone(), dims, arrow_maps);
    let mut i1 = Vec::new();
    let mut i2 = Vec::new();
    let mut p1 = Vec::new();
    let mut p2 = Vec::new();
    for v in 0..m.quiver.vertex_count() {
        let (a, b) = (m.dims[v], n.dims[v]);
        let id_a = BitMatrix::identity(a);
        let id_b = BitMatrix::identity(b);
        i1.push(LinearMap::new(id_a.vstack(&BitMatrix::zeros(b, a))));
        i2.push(LinearMap::new(BitMatrix::zeros(a, b).vstack(&id_b)));
        p1.push(LinearMap::new(id_a.hstack(&BitMatrix::zeros(a, b))));
        p2.push(LinearMap::new(BitMatrix::zeros(b, a).hstack(&id_b)));
    }
    DirectSum {
        inj1: RepMorphism::new(m.clone(), sum.clone(), i1),
        inj2: RepMorphism::new(n.clone(), sum.clone(), i2),
        proj1: RepMorphism::new(sum.clone(), m.clone(), p1),
        proj2: RepMorphism::new(sum.clone(), n.clone(), p2),
        sum,
    }
}

/// Pullback of `f: A -> C`, `g: B -> C` in the representation category:
/// the kernel of `[f | g]: A ⊕ B -> C`.
pub fn rep_pullback(f: &RepMorphism, g: &RepMorphism) -> (Rep, RepMorphism, RepMorphism) {
    let ds = direct_sum(&f.source, &g.source);
    let combined = f.compose(&ds.proj1).add(&g.compose(&ds.proj2));
    let (p, incl) = kernel(&combined);
    let p1 = ds.proj1.compose(&incl);
    let p2 = ds.proj2.compose(&incl);
    (p, p1, p2)
}

/// Pushout of `f: C -> A`, `g: C -> B`: the cokernel of `[f ; g]: C -> A ⊕ B`.
pub fn rep_pushout(f: &RepMorphism, g: &RepMorphism) -> (Rep, RepMorphism, RepMorphism) {
    let ds = direct_sum(&f.target, &g.target);
    let combined = ds.inj1.compose(f).add(&ds.inj2.compose(g));
    let (q, proj) = cokernel(&combined);
    let q1 = proj.compose(&ds.inj1);
    let q2 = proj.compose(&ds.inj2);
    (q, q1, q2)
}

// ---------------------------------------------------------------------------
// Hom spaces
// ---------------------------------------------------------------------------

/// Total coordinate dimension of the space of vertexwise component tuples.
fn hom_coord_dim(m: &Rep, n: &Rep) -> usize {
    m.dims.iter().zip(&n.dims).map(|(a, b)| a * b).sum()
}

fn coord_offsets(m: &Rep, n: &Rep) -> Vec<usize> {
    let mut offs = Vec::with_capacity(m.dims.len());
    let mut acc = 0;
    for (a, b) in m.dims.iter().zip(&n.dims) {
        offs.push(acc);
        acc += a * b;
    }
    offs
}

/// Flatten component matrices into a coordinate row (vertex order, row-major).
pub fn morphism_to_coords(f: &RepMorphism) -> BitMatrix {
    let total = hom_coord_dim(&f.source, &f.target);
    let mut row = BitMatrix::zeros(1, total);
    let offs = coord_offsets(&f.source, &f.target);
    for (v, c) in f.components.iter().enumerate() {
        for i in 0..c.codomain_dim {
            for j in 0..c.domain_dim {
                if c.matrix.get(i, j) {
                    row.set(0, offs[v] + i * c.domain_dim + j, true);
                }
            }
        }
    }
    row
}

pub fn coords_to_morphism(m: &Rep, n: &Rep, row: &BitMatrix) -> RepMorphism {
    let offs = coord_offsets(m, n);
    let components: Vec<LinearMap> = (0..m.dims.len())
        .map(|v| {
            let (dom, cod) = (m.dims[v], n.dims[v]);
            let mut mat = BitMatrix::zeros(cod, dom);
            for i in 0..cod {
                for j in 0..dom {
                    if row.get(0, offs[v] + i * dom + j) {
                        mat.set(i, j, true);
                    }
                }
            }
            LinearMap::new(mat)
        })
        .collect();
    RepMorphism::new(m.clone(), n.clone(), components)
}

/// The intertwining constraints as a matrix over component coordinates.
/// `constraints * coords = 0` iff the coordinates form a morphism.
fn intertwining_constraints(m: &Rep, n: &Rep) -> BitMatrix {
    let total = hom_coord_dim(m, n);
    let offs = coord_offsets(m, n);
    let mut rows: Vec<BitMatrix> = Vec::new();
    for (ai, a) in m.quiver.arrows.iter().enumerate() {
        let (v, w) = (a.source, a.target);
        let ma = &m.arrow_maps[ai].matrix; // m.dims[w] x m.dims[v]
        let na = &n.arrow_maps[ai].matrix; // n.dims[w] x n.dims[v]
        for i in 0..n.dims[w] {
            for j in 0..m.dims[v] {
                let mut row = BitMatrix::zeros(1, total);
                // (C_w * M_a)[i][j] = sum_k C_w[i][k] * M_a[k][j]
                for k in 0..m.dims[w] {
                    if ma.get(k, j) {
                        let idx = offs[w] + i * m.dims[w] + k;
                        row.set(0, idx, !row.get(0, idx));
                    }
                }
                // (N_a * C_v)[i][j] = sum_k N_a[i][k] * C_v[k][j]
                for k in 0..n.dims[v] {
                    if na.get(i, k) {
                        let idx = offs[v] + k * m.dims[v] + j;
                        row.set(0, idx, !row.get(0, idx));
                    }
                }
                rows.push(row);
            }
        }
    }
    let mut out = BitMatrix::zeros(0, total);
    for r in rows {
        out = out.vstack(&r);
    }
    out
}

/// Basis of the hom space Hom(m, n): the kernel of the intertwining system,
/// in canonical (RREF) coordinates. |Hom(m,n)| = 2^basis.len().
pub fn hom_space(m: &Rep, n: &Rep) -> Vec<RepMorphism> {
    assert_eq!(*m.quiver, *n.quiver, "hom across different quivers");
    let constraints = LinearMap::new(intertwining_constraints(m, n));
    let ker = gf2::kernel_basis(&constraints);
    (0..ker.dim())
        .map(|i| coords_to_morphism(m, n, &ker.basis.row(i)))
        .collect()
}

/// Express a morphism in the coordinates of a hom-space basis.
pub fn coords_in_basis(f: &RepMorphism, basis: &[RepMorphism]) -> Option<BitMatrix> {
    let total = hom_coord_dim(&f.source, &f.target);
    let mut basis_mat = BitMatrix::zeros(0, total);
    for b in basis {
        basis_mat = basis_mat.vstack(&morphism_to_coords(b));
    }
    // coords = x * basis_mat, i.e. basis_mat^T x^T = coords^T.
    let bt = LinearMap::new(basis_mat.transpose());
    let target = LinearMap::new(morphism_to_coords(f).transpose());
    gf2::solve(&bt, &target).map(|x| x.matrix.transpose())
}

/// All 2^d elements of the span of a hom basis, in lexicographic mask order.
/// The zero morphism is the first element.
pub fn span_elements(m: &Rep, n: &Rep, basis: &[RepMorphism]) -> Vec<RepMorphism> {
    let d = basis.len();
    assert!(d <= 24, "span too large to materialize");
    let mut out = Vec::with_capacity(1 << d);
    for mask in 0u64..(1u64 << d) {
        let mut f = RepMorphism::zero(m, n);
        for (i, b) in basis.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                f = f.add(b);
            }
        }
        out.push(f);
    }
    out
}

// ---------------------------------------------------------------------------
// Isomorphism testing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum IsoResult {
    Iso(Box<RepMorphism>),
    NotIso,
    /// Budget exceeded and invariant screening could not separate the
    /// objects; reported as such, never silently converted to a verdict.
    Undecided,
}

impl IsoResult {
    pub fn decided(&self) -> Option<bool> {
        match self {
            IsoResult::Iso(_) => Some(true),
            IsoResult::NotIso => Some(false),
            IsoResult::Undecided => None,
        }
    }
}

/// Decide isomorphism by exhaustive scan of the hom space when its dimension
/// is within budget, otherwise by invariant screening.
pub fn is_isomorphic(m: &Rep, n: &Rep, budget: usize) -> IsoResult {
    if m.dims != n.dims {
        return IsoResult::NotIso;
    }
    if m.total_dim() == 0 {
        return IsoResult::Iso(Box::new(RepMorphism::zero(m, n)));
    }
    let basis = hom_space(m, n);
    if basis.len() <= budget {
        for f in span_elements(m, n, &basis) {
            if f.is_isomorphism() {
                return IsoResult::Iso(Box::new(f));
            }
        }
        return IsoResult::NotIso;
    }
    // Screening: arrow-map ranks, radical dimensions, endomorphism
    // dimensions are all isomorphism invariants.
    let ranks_m: Vec<usize> = m.arrow_maps.iter().map(LinearMap::rank).collect();
    let ranks_n: Vec<usize> = n.arrow_maps.iter().map(LinearMap::rank).collect();
    if ranks_m != ranks_n
        || m.radical_dims() != n.radical_dims()
        || hom_space(m, m).len() != hom_space(n, n).len()
        || hom_space(m, n).len() != hom_space(n, m).len()
    {
        return IsoResult::NotIso;
    }
    IsoResult::Undecided
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// All relation-satisfying representations with the given dimension vector,
/// arrow maps in lexicographic bit order (first entry most significant).
pub fn enumerate_reps(quiver: &Arc<BoundQuiver>, dims: &[usize]) -> Result<Vec<Rep>> {
    let bit_counts: Vec<usize> = quiver
        .arrows
        .iter()
        .map(|a| dims[a.target] * dims[a.source])
        .collect();
    let total_bits: usize = bit_counts.iter().sum();
    if total_bits > ENUMERATION_BIT_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "enumerate_reps: {total_bits} arrow-map bits exceeds 2^{ENUMERATION_BIT_BUDGET} candidates"
        )));
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << total_bits) {
        let mut bit_idx = 0usize;
        let mut arrow_maps = Vec::with_capacity(quiver.arrows.len());
        for (i, a) in quiver.arrows.iter().enumerate() {
            let (rows, cols) = (dims[a.target], dims[a.source]);
            let mut mat = BitMatrix::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    // First entry is the most significant bit of the mask.
                    let shift = total_bits - 1 - bit_idx;
                    if (mask >> shift) & 1 == 1 {
                        mat.set(r, c, true);
                    }
                    bit_idx += 1;
                }
            }
            let _ = i;
            arrow_maps.push(LinearMap::new(mat));
        }
        let rep = Rep::new(quiver.clone(), dims.to_vec(), arrow_maps);
        if rep.check_relations() {
            out.push(rep);
        }
    }
    Ok(out)
}

/// All dimension vectors with each vertex dimension <= max, in lexicographic
/// order.
pub fn dim_vectors(quiver: &BoundQuiver, max: usize) -> Vec<Vec<usize>> {
    let n = quiver.vertex_count();
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    loop {
        out.push(cur.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < max {
                cur[i] += 1;
                for x in cur.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// Every relation-satisfying representation with all vertex dimensions <= max.
pub fn enumerate_all(quiver: &Arc<BoundQuiver>, max: usize) -> Result<Vec<Rep>> {
    let mut out = Vec::new();
    for dims in dim_vectors(quiver, max) {
        out.extend(enumerate_reps(quiver, &dims)?);
    }
    Ok(out)
}

/// One representative per isomorphism class (lexicographically first).
/// Errors if any isomorphism test comes back Undecided.
pub fn enumerate_iso_classes(
    quiver: &Arc<BoundQuiver>,
    dims: &[usize],
    budget: usize,
) -> Result<Vec<Rep>> {
    let mut reps: Vec<Rep> = Vec::new();
    for r in enumerate_reps(quiver, dims)? {
        let mut fresh = true;
        for seen in &reps {
            match is_isomorphic(seen, &r, budget) {
                IsoResult::Iso(_) => {
                    fresh = false;
                    break;
                }
                IsoResult::NotIso => {}
                IsoResult::Undecided => {
                    return Err(Error::BudgetExceeded(
                        "isomorphism dedup undecided within budget".into(),
                    ))
                }
            }
        }
        if fresh {
            reps.push(r);
        }
    }
    Ok(reps)
}

// ---------------------------------------------------------------------------
// Extensions
// ---------------------------------------------------------------------------

/// A represented extension 0 -> bottom -> middle -> top -> 0.
#[derive(Debug, Clone)]
pub struct ExtClass {
    pub bottom: Rep,
    pub top: Rep,
    pub middle: Rep,
    pub incl: RepMorphism,
    pub proj: RepMorphism,
}

impl ExtClass {
    pub fn new(incl: RepMorphism, proj: RepMorphism) -> Self {
        let e = ExtClass {
            bottom: incl.source.clone(),
            top: proj.target.clone(),
            middle: incl.target.clone(),
            incl,
            proj,
        };
        assert!(e.is_exact(), "extension is not a short exact sequence");
        e
    }

    pub fn is_exact(&self) -> bool {
        self.incl.is_mono()
            && self.proj.is_epi()
            && self.proj.compose(&self.incl).is_zero()
            && self
                .bottom
                .dims
                .iter()
                .zip(&self.top.dims)
                .zip(&self.middle.dims)
                .all(|((b, t), m)| b + t == *m)
    }

    /// The split extension of `top` by `bottom`.
    pub fn split(top: &Rep, bottom: &Rep) -> ExtClass {
        let ds = direct_sum(bottom, top);
        ExtClass::new(ds.inj1, ds.proj2)
    }
}

/// Baer equivalence: an isomorphism of middles commuting with both ends.
/// Any solution of the affine compatibility system is automatically an
/// isomorphism (five lemma), so equivalence is exactly solvability.
pub fn baer_equal(e1: &ExtClass, e2: &ExtClass) -> bool {
    assert_eq!(e1.bottom, e2.bottom, "baer_equal: bottoms differ");
    assert_eq!(e1.top, e2.top, "baer_equal: tops differ");
    let m1 = &e1.middle;
    let m2 = &e2.middle;
    let total = hom_coord_dim(m1, m2);
    // Homogeneous part: intertwining plus the two end conditions, as rows
    // over the component coordinates of a candidate middle map.
    let mut a = intertwining_constraints(m1, m2);
    let mut rhs = BitMatrix::zeros(a.rows(), 1);
    let offs = coord_offsets(m1, m2);
    // phi ∘ incl1 = incl2, vertexwise: sum_k phi[i][k] * incl1[k][j] = incl2[i][j]
    for v in 0..m1.dims.len() {
        let i1 = &e1.incl.components[v].matrix;
        let i2 = &e2.incl.components[v].matrix;
        for i in 0..m2.dims[v] {
            for j in 0..e1.bottom.dims[v] {
                let mut row = BitMatrix::zeros(1, total);
                for k in 0..m1.dims[v] {
                    if i1.get(k, j) {
                        let idx = offs[v] + i * m1.dims[v] + k;
                        row.set(0, idx, !row.get(0, idx));
                    }
                }
                a = a.vstack(&row);
                let mut b = BitMatrix::zeros(1, 1);
                b.set(0, 0, i2.get(i, j));
                rhs = rhs.vstack(&b);
            }
        }
    }
    // proj2 ∘ phi = proj1: sum_k proj2[i][k] * phi[k][j] = proj1[i][j]
    for v in 0..m1.dims.len() {
        let p1 = &e1.proj.components[v].matrix;
        let p2 = &e2.proj.components[v].matrix;
        for i in 0..e1.top.dims[v] {
            for j in 0..m1.dims[v] {
                let mut row = BitMatrix::zeros(1, total);
                for k in 0..m2.dims[v] {
                    if p2.get(i, k) {
                        let idx = offs[v] + k * m1.dims[v] + j;
                        row.set(0, idx, !row.get(0, idx));
                    }
                }
                a = a.vstack(&row);
                let mut b = BitMatrix::zeros(1, 1);
                b.set(0, 0, p1.get(i, j));
                rhs = rhs.vstack(&b);
            }
        }
    }
    match gf2::solve(&LinearMap::new(a), &LinearMap::new(rhs)) {
        None => false,
        Some(sol) => {
            let phi = coords_to_morphism(m1, m2, &sol.matrix.transpose());
            debug_assert!(phi.is_isomorphism(), "five lemma violated");
            true
        }
    }
}

/// Enumerate every extension of `top` by `bottom` in block upper-triangular
/// form; every Baer class is represented.
pub fn enumerate_extensions(top: &Rep, bottom: &Rep) -> Result<Vec<ExtClass>> {
    let quiver = &top.quiver;
    // Free entries: for each arrow a: v -> w, a block bottom.dims[w] x top.dims[v].
    let bit_counts: Vec<usize> = quiver
        .arrows
        .iter()
        .map(|a| bottom.dims[a.target] * top.dims[a.source])
        .collect();
    let total_bits: usize = bit_counts.iter().sum();
    if total_bits > ENUMERATION_BIT_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "enumerate_extensions: {total_bits} free bits"
        )));
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << total_bits) {
        let mut bit_idx = 0usize;
        let mut arrow_maps = Vec::with_capacity(quiver.arrows.len());
        for (i, a) in quiver.arrows.iter().enumerate() {
            let (v, w) = (a.source, a.target);
            let b = &bottom.arrow_maps[i].matrix;
            let t = &top.arrow_maps[i].matrix;
            let mut eta = BitMatrix::zeros(bottom.dims[w], top.dims[v]);
            for r in 0..bottom.dims[w] {
                for c in 0..top.dims[v] {
                    let shift = total_bits - 1 - bit_idx;
                    if (mask >> shift) & 1 == 1 {
                        eta.set(r, c, true);
                    }
                    bit_idx += 1;
                }
            }
            // [[b, eta], [0, t]]
            let upper = b.hstack(&eta);
            let lower = BitMatrix::zeros(top.dims[w], bottom.dims[v]).hstack(t);
            arrow_maps.push(LinearMap::new(upper.vstack(&lower)));
        }
        let dims: Vec<usize> = bottom.dims.iter().zip(&top.dims).map(|(a, b)| a + b).collect();
        let middle = Rep::new(quiver.clone(), dims, arrow_maps);
        if !middle.check_relations() {
            continue;
        }
        let mut incl_c = Vec::new();
        let mut proj_c = Vec::new();
        for v in 0..quiver.vertex_count() {
            let (bd, td) = (bottom.dims[v], top.dims[v]);
            incl_c.push(LinearMap::new(
                BitMatrix::identity(bd).vstack(&BitMatrix::zeros(td, bd)),
            ));
            proj_c.push(LinearMap::new(
                BitMatrix::zeros(td, bd).hstack(&BitMatrix::identity(td)),
            ));
        }
        let incl = RepMorphism::new(bottom.clone(), middle.clone(), incl_c);
        let proj = RepMorphism::new(middle.clone(), top.clone(), proj_c);
        out.push(ExtClass::new(incl, proj));
    }
    Ok(out)
}

/// Number of Baer equivalence classes of extensions of `top` by `bottom`,
/// by exhaustive enumeration and pairwise comparison. The independent oracle
/// for Ext^1 computed from resolutions.
pub fn baer_class_count(top: &Rep, bottom: &Rep) -> Result<usize> {
    let all = enumerate_extensions(top, bottom)?;
    let mut reps: Vec<&ExtClass> = Vec::new();
    for e in &all {
        if !reps.iter().any(|r| baer_equal(r, e)) {
            reps.push(e);
        }
    }
    Ok(reps.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver;

    fn qf_rep(d1: usize, d2: usize, h: &[u8], p: &[u8]) -> Rep {
        let q = quiver::quad_free();
        Rep::new(
            q,
            vec![d1, d2],
            vec![
                LinearMap::from_entries(d2, d1, h),
                LinearMap::from_entries(d1, d2, p),
            ],
        )
    }

    #[test]
    fn scalar_identity_violates_relations() {
        // (F2, 1, F2, 1): PHP = 1.
        let r = qf_rep(1, 1, &[1], &[1]);
        assert!(!r.check_relations());
    }

    #[test]
    fn i_star_image_satisfies_relations() {
        let r = qf_rep(1, 0, &[], &[]);
        assert!(r.check_relations());
    }

    #[test]
    fn witness_object_satisfies_quad_free() {
        // (F2^2, H=[1 0], F2, P=(0,1)^T): PHP = (PH)P = 0 and HPH = (HP)H = 0.
        let w = qf_rep(2, 1, &[1, 0], &[0, 1]);
        assert!(w.check_relations());
        // ...but PH != 0, so it violates quad_vect's extra relation.
        let ph = w.arrow_maps[1].compose(&w.arrow_maps[0]);
        assert!(!ph.is_zero());
    }

    #[test]
    fn hom_contains_identity() {
        let r = qf_rep(2, 1, &[1, 0], &[0, 1]);
        let basis = hom_space(&r, &r);
        let id = RepMorphism::identity(&r);
        assert!(coords_in_basis(&id, &basis).is_some());
    }

    #[test]
    fn hom_over_vect_is_full_matrix_space() {
        let q = quiver::vect();
        let m = Rep::new(q.clone(), vec![2], vec![]);
        let n = Rep::new(q, vec![3], vec![]);
        assert_eq!(hom_space(&m, &n).len(), 6);
    }

    #[test]
    fn hom_between_standard_and_costandard_is_one_dimensional() {
        // j_!(F2, T=id) = (F2,0,F2,1) and j_*(F2, T=id) = (F2,1,F2,0) in the
        // 2.1 category: the intertwining system forces f1 = 0, f2 free.
        let jb = qf_rep(1, 1, &[0], &[1]);
        let js = qf_rep(1, 1, &[1], &[0]);
        let basis = hom_space(&jb, &js);
        assert_eq!(basis.len(), 1);
        assert!(basis[0].components[0].is_zero());
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let r = qf_rep(2, 1, &[1, 0], &[0, 1]);
        let (k, _) = kernel(&RepMorphism::identity(&r));
        assert!(k.is_zero());
    }

    #[test]
    fn cokernel_of_map_from_zero_is_target() {
        let r = qf_rep(2, 1, &[1, 0], &[0, 1]);
        let z = Rep::zero(r.quiver.clone());
        let f = RepMorphism::zero(&z, &r);
        let (c, proj) = cokernel(&f);
        assert_eq!(c.dims, r.dims);
        assert!(proj.is_isomorphism());
    }

    #[test]
    fn direct_sum_with_zero_is_identity_like() {
        let r = qf_rep(2, 1, &[1, 0], &[0, 1]);
        let z = Rep::zero(r.quiver.clone());
        let ds = direct_sum(&r, &z);
        assert_eq!(ds.sum.dims, r.dims);
        let ds2 = direct_sum(&z, &r);
        assert_eq!(ds2.sum.dims, r.dims);
    }

    #[test]
    fn direct_sum_dims_add() {
        let a = qf_rep(1, 1, &[0], &[1]);
        let b = qf_rep(2, 1, &[1, 0], &[0, 1]);
        let ds = direct_sum(&a, &b);
        assert_eq!(ds.sum.dims, vec![3, 2]);
        // biproduct identities
        assert!(ds.proj1.compose(&ds.inj1).is_isomorphism());
        assert!(ds.proj2.compose(&ds.inj2).is_isomorphism());
        assert!(ds.proj1.compose(&ds.inj2).is_zero());
        assert!(ds.proj2.compose(&ds.inj1).is_zero());
    }

    #[test]
    fn enumerate_quad_free_dims_1_1() {
        let q = quiver::quad_free();
        let reps = enumerate_reps(&q, &[1, 1]).unwrap();
        // (H,P) in {(0,0),(0,1),(1,0)}: (1,1) violates PHP = 0.
        assert_eq!(reps.len(), 3);
    }

    #[test]
    fn enumerate_zero_dims_gives_zero_object() {
        let q = quiver::quad_free();
        let reps = enumerate_reps(&q, &[0, 0]).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(reps[0].is_zero());
    }

    #[test]
    fn enumerate_vect_dim_2_single_object() {
        let q = quiver::vect();
        let reps = enumerate_reps(&q, &[2]).unwrap();
        assert_eq!(reps.len(), 1);
    }

    #[test]
    fn self_isomorphic() {
        let r = qf_rep(2, 1, &[1, 0], &[0, 1]);
        assert!(matches!(
            is_isomorphic(&r, &r, DEFAULT_ISO_BUDGET),
            IsoResult::Iso(_)
        ));
    }

    #[test]
    fn different_dims_not_isomorphic() {
        let a = qf_rep(1, 1, &[0], &[1]);
        let b = qf_rep(2, 1, &[1, 0], &[0, 1]);
        assert!(matches!(
            is_isomorphic(&a, &b, DEFAULT_ISO_BUDGET),
            IsoResult::NotIso
        ));
    }

    #[test]
    fn witness_not_isomorphic_to_any_ph_zero_object() {
        // PH conjugates under isomorphism, so PH = 0 is an iso invariant.
        let w = qf_rep(2, 1, &[1, 0], &[0, 1]);
        let q = quiver::quad_free();
        for r in enumerate_reps(&q, &[2, 1]).unwrap() {
            let ph = r.arrow_maps[1].compose(&r.arrow_maps[0]);
            if ph.is_zero() {
                assert!(matches!(
                    is_isomorphic(&w, &r, DEFAULT_ISO_BUDGET),
                    IsoResult::NotIso
                ));
            }
        }
    }

    #[test]
    fn dualize_involution_and_zero() {
        let z = Rep::zero(quiver::quad_free());
        assert!(z.dualize().is_zero());
        let r = qf_rep(2, 1, &[1, 0], &[0, 1]);
        let dd = r.dualize().dualize();
        assert_eq!(dd.dims, r.dims);
        assert_eq!(dd.arrow_maps, r.arrow_maps);
        assert_eq!(*dd.quiver, *r.quiver);
        assert!(r.dualize().check_relations());
    }

    #[test]
    fn dualize_exchanges_kernel_and_cokernel() {
        // Exhaustive over all morphisms between all quad_free reps at dims <= (1,1).
        let q = quiver::quad_free();
        let reps = enumerate_reps(&q, &[1, 1]).unwrap();
        for m in &reps {
            for n in &reps {
                let basis = hom_space(m, n);
                for f in span_elements(m, n, &basis) {
                    let (k, _) = kernel(&f);
                    let (c, _) = cokernel(&f.dualize());
                    assert_eq!(k.dualize().dims, c.dims);
                    match is_isomorphic(&k.dualize(), &c, DEFAULT_ISO_BUDGET) {
                        IsoResult::Iso(_) => {}
                        _ => panic!("dualize not exact"),
                    }
                }
            }
        }
    }

    #[test]
    fn image_equals_coimage_small_exhaustive() {
        let q = quiver::quad_free();
        let mut reps = enumerate_reps(&q, &[1, 1]).unwrap();
        reps.extend(enumerate_reps(&q, &[2, 1]).unwrap());
        for m in &reps {
            for n in &reps {
                let basis = hom_space(m, n);
                if basis.len() > 6 {
                    continue;
                }
                for f in span_elements(m, n, &basis) {
                    let (im, _, _) = image(&f);
                    let (_, ki) = kernel(&f);
                    let (coim, _) = cokernel(&ki);
                    assert!(matches!(
                        is_isomorphic(&im, &coim, DEFAULT_ISO_BUDGET),
                        IsoResult::Iso(_)
                    ));
                }
            }
        }
    }

    #[test]
    fn split_extensions_are_baer_equal() {
        let q = quiver::sigma2();
        let s = Rep::new(q.clone(), vec![1], vec![LinearMap::zero(1, 1)]);
        let e1 = ExtClass::split(&s, &s);
        assert!(baer_equal(&e1, &e1));
        // Split with permuted coordinates: swap the two middle coordinates.
        let mid = e1.middle.clone();
        let swap = LinearMap::from_entries(2, 2, &[0, 1, 1, 0]);
        let incl = RepMorphism::new(
            s.clone(),
            mid.clone(),
            vec![swap.compose(&e1.incl.components[0])],
        );
        let proj = RepMorphism::new(
            mid.clone(),
            s.clone(),
            vec![e1.proj.components[0].compose(&swap)],
        );
        let e2 = ExtClass::new(incl, proj);
        assert!(baer_equal(&e1, &e2));
    }

    #[test]
    fn split_vs_nonsplit_over_loop() {
        // S by S over sigma2: middle S⊕S (u=0) vs P (u nilpotent Jordan block).
        let q = quiver::sigma2();
        let s = Rep::new(q.clone(), vec![1], vec![LinearMap::zero(1, 1)]);
        let split = ExtClass::split(&s, &s);
        let exts = enumerate_extensions(&s, &s).unwrap();
        assert_eq!(exts.len(), 2);
        let nonsplit = exts
            .iter()
            .find(|e| !e.middle.arrow_maps[0].is_zero())
            .unwrap();
        assert!(!baer_equal(&split, nonsplit));
        assert_eq!(baer_class_count(&s, &s).unwrap(), 2);
    }

    #[test]
    fn rep_json_round_trip() {
        let r = qf_rep(2, 1, &[1, 0], &[0, 1]);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["quiver"], "quad_free");
        assert_eq!(v["dims"]["1"], 2);
        let back = rep_from_json(&v).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn pullback_and_pushout_commute() {
        let q = quiver::quad_free();
        let reps = enumerate_reps(&q, &[1, 1]).unwrap();
        for a in &reps {
            for c in &reps {
                for f in span_elements(a, c, &hom_space(a, c)) {
                    for g in span_elements(a, c, &hom_space(a, c)) {
                        let (_, p1, p2) = rep_pullback(&f, &g);
                        assert_eq!(f.compose(&p1), g.compose(&p2));
                        let (_, q1, q2) = rep_pushout(&f, &g);
                        assert_eq!(q1.compose(&f), q2.compose(&g));
                    }
                }
            }
        }
    }
}
