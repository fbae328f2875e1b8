//! A uniform abelian-category interface over two kinds of categories:
//! bound-quiver representation categories and MacPherson–Vilonen glued
//! categories. Recollement verification code works against this interface
//! so the same checks run on both.

use crate::error::Result;
use crate::gf2::{self, BitMatrix, LinearMap};
use crate::mv::{MvData, MvMorphism, MvObject};
use crate::quiver::BoundQuiver;
use crate::rep::{self, Rep, RepMorphism};
use std::sync::Arc;

#[derive(Clone)]
pub enum Category {
    Rep(Arc<BoundQuiver>),
    Mv(Arc<MvData>),
}

#[derive(Clone, Debug)]
pub enum Object {
    Rep(Rep),
    Mv(Box<MvObject>),
}

#[derive(Clone, Debug)]
pub enum Morphism {
    Rep(RepMorphism),
    Mv(Box<MvMorphism>),
}

impl std::fmt::Debug for Category {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Category::Rep(q) => write!(f, "Rep({})", q.name),
            Category::Mv(d) => write!(f, "Mv({})", d.name),
        }
    }
}

impl Category {
    pub fn name(&self) -> String {
        match self {
            Category::Rep(q) => format!("rep:{}", q.name),
            Category::Mv(d) => format!("mv:{}", d.name),
        }
    }

    pub fn zero_object(&self) -> Object {
        match self {
            Category::Rep(q) => Object::Rep(Rep::zero(q.clone())),
            Category::Mv(d) => Object::Mv(Box::new(d.zero_object())),
        }
    }

    /// All objects with every constituent dimension at most `cap`.
    /// For a glued category, both the base object and the glued vector-space
    /// part respect the cap vertexwise.
    pub fn enumerate_objects(&self, cap: usize) -> Result<Vec<Object>> {
        match self {
            Category::Rep(q) => {
                let mut out = Vec::new();
                for dims in rep::dim_vectors(q, cap) {
                    for r in rep::enumerate_reps(q, &dims)? {
                        out.push(Object::Rep(r));
                    }
                }
                Ok(out)
            }
            Category::Mv(d) => Ok(d
                .enumerate_objects(cap)?
                .into_iter()
                .map(|o| Object::Mv(Box::new(o)))
                .collect()),
        }
    }
}

impl Object {
    pub fn category(&self) -> Category {
        match self {
            Object::Rep(r) => Category::Rep(r.quiver.clone()),
            Object::Mv(o) => Category::Mv(o.data.clone()),
        }
    }

    pub fn as_rep(&self) -> &Rep {
        match self {
            Object::Rep(r) => r,
            Object::Mv(_) => panic!("expected a representation object"),
        }
    }

    pub fn as_mv(&self) -> &MvObject {
        match self {
            Object::Mv(o) => o,
            Object::Rep(_) => panic!("expected a glued object"),
        }
    }

    pub fn total_dim(&self) -> usize {
        match self {
            Object::Rep(r) => r.total_dim(),
            Object::Mv(o) => o.x.total_dim() + o.v.total_dim(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn identity(&self) -> Morphism {
        match self {
            Object::Rep(r) => Morphism::Rep(RepMorphism::identity(r)),
            Object::Mv(o) => Morphism::Mv(Box::new(MvMorphism::new(
                (**o).clone(),
                (**o).clone(),
                RepMorphism::identity(&o.x),
                RepMorphism::identity(&o.v),
            ))),
        }
    }
}

impl Morphism {
    pub fn as_rep(&self) -> &RepMorphism {
        match self {
            Morphism::Rep(f) => f,
            Morphism::Mv(_) => panic!("expected a representation morphism"),
        }
    }

    pub fn as_mv(&self) -> &MvMorphism {
        match self {
            Morphism::Mv(f) => f,
            Morphism::Rep(_) => panic!("expected a glued morphism"),
        }
    }

    pub fn source(&self) -> Object {
        match self {
            Morphism::Rep(f) => Object::Rep(f.source.clone()),
            Morphism::Mv(f) => Object::Mv(Box::new(f.source.clone())),
        }
    }

    pub fn target(&self) -> Object {
        match self {
            Morphism::Rep(f) => Object::Rep(f.target.clone()),
            Morphism::Mv(f) => Object::Mv(Box::new(f.target.clone())),
        }
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Morphism) -> Morphism {
        match (self, other) {
            (Morphism::Rep(f), Morphism::Rep(g)) => Morphism::Rep(f.compose(g)),
            (Morphism::Mv(f), Morphism::Mv(g)) => Morphism::Mv(Box::new(MvMorphism::new(
                g.source.clone(),
                f.target.clone(),
                f.f.compose(&g.f),
                f.phi.compose(&g.phi),
            ))),
            _ => panic!("composing morphisms of different kinds"),
        }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        match (self, other) {
            (Morphism::Rep(f), Morphism::Rep(g)) => Morphism::Rep(f.add(g)),
            (Morphism::Mv(f), Morphism::Mv(g)) => Morphism::Mv(Box::new(MvMorphism::new(
                f.source.clone(),
                f.target.clone(),
                f.f.add(&g.f),
                f.phi.add(&g.phi),
            ))),
            _ => panic!("adding morphisms of different kinds"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Morphism::Rep(f) => f.is_zero(),
            Morphism::Mv(f) => f.f.is_zero() && f.phi.is_zero(),
        }
    }

    pub fn is_mono(&self) -> bool {
        match self {
            Morphism::Rep(f) => f.is_mono(),
            Morphism::Mv(f) => f.f.is_mono() && f.phi.is_mono(),
        }
    }

    pub fn is_epi(&self) -> bool {
        match self {
            Morphism::Rep(f) => f.is_epi(),
            Morphism::Mv(f) => f.f.is_epi() && f.phi.is_epi(),
        }
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    pub fn inverse(&self) -> Option<Morphism> {
        match self {
            Morphism::Rep(f) => f.inverse().map(Morphism::Rep),
            Morphism::Mv(f) => match (f.f.inverse(), f.phi.inverse()) {
                (Some(fi), Some(pi)) => Some(Morphism::Mv(Box::new(MvMorphism::new(
                    f.target.clone(),
                    f.source.clone(),
                    fi,
                    pi,
                )))),
                _ => None,
            },
        }
    }

    /// Coordinate row for the linear structure of the hom space; addition of
    /// morphisms is XOR of coordinate rows.
    pub fn coords(&self) -> BitMatrix {
        match self {
            Morphism::Rep(f) => rep::morphism_to_coords(f),
            Morphism::Mv(f) => rep::morphism_to_coords(&f.f)
                .hstack(&rep::morphism_to_coords(&f.phi)),
        }
    }
}

pub fn zero_morphism(a: &Object, b: &Object) -> Morphism {
    match (a, b) {
        (Object::Rep(m), Object::Rep(n)) => Morphism::Rep(RepMorphism::zero(m, n)),
        (Object::Mv(m), Object::Mv(n)) => Morphism::Mv(Box::new(MvMorphism::new(
            (**m).clone(),
            (**n).clone(),
            RepMorphism::zero(&m.x, &n.x),
            RepMorphism::zero(&m.v, &n.v),
        ))),
        _ => panic!("zero morphism between objects of different kinds"),
    }
}

pub fn kernel(f: &Morphism) -> (Object, Morphism) {
    match f {
        Morphism::Rep(f) => {
            let (k, incl) = rep::kernel(f);
            (Object::Rep(k), Morphism::Rep(incl))
        }
        Morphism::Mv(f) => {
            let (k, incl) = crate::mv::kernel(f);
            (Object::Mv(Box::new(k)), Morphism::Mv(Box::new(incl)))
        }
    }
}

pub fn cokernel(f: &Morphism) -> (Object, Morphism) {
    match f {
        Morphism::Rep(f) => {
            let (c, proj) = rep::cokernel(f);
            (Object::Rep(c), Morphism::Rep(proj))
        }
        Morphism::Mv(f) => {
            let (c, proj) = crate::mv::cokernel(f);
            (Object::Mv(Box::new(c)), Morphism::Mv(Box::new(proj)))
        }
    }
}

/// Unique factorization of `g` through a monomorphism `m`: the morphism `h`
/// with m ∘ h = g. Panics if the image of g is not contained in m.
pub fn lift_through_mono(m: &Morphism, g: &Morphism) -> Morphism {
    match (m, g) {
        (Morphism::Rep(m), Morphism::Rep(g)) => Morphism::Rep(rep_lift(m, g)),
        (Morphism::Mv(m), Morphism::Mv(g)) => Morphism::Mv(Box::new(MvMorphism::new(
            g.source.clone(),
            m.source.clone(),
            rep_lift(&m.f, &g.f),
            rep_lift(&m.phi, &g.phi),
        ))),
        _ => panic!("lifting across morphism kinds"),
    }
}

/// Unique factorization of `g` through an epimorphism `e`: the morphism `h`
/// with h ∘ e = g. Panics if ker e is not killed by g.
pub fn extend_through_epi(e: &Morphism, g: &Morphism) -> Morphism {
    match (e, g) {
        (Morphism::Rep(e), Morphism::Rep(g)) => Morphism::Rep(rep_extend(e, g)),
        (Morphism::Mv(e), Morphism::Mv(g)) => Morphism::Mv(Box::new(MvMorphism::new(
            e.target.clone(),
            g.target.clone(),
            rep_extend(&e.f, &g.f),
            rep_extend(&e.phi, &g.phi),
        ))),
        _ => panic!("extending across morphism kinds"),
    }
}

pub(crate) fn rep_lift(m: &RepMorphism, g: &RepMorphism) -> RepMorphism {
    let components: Vec<LinearMap> = m
        .components
        .iter()
        .zip(&g.components)
        .map(|(mc, gc)| gf2::solve(mc, gc).expect("image not contained in subobject"))
        .collect();
    RepMorphism::new(g.source.clone(), m.source.clone(), components)
}

pub(crate) fn rep_extend(e: &RepMorphism, g: &RepMorphism) -> RepMorphism {
    let components: Vec<LinearMap> = e
        .components
        .iter()
        .zip(&g.components)
        .map(|(ec, gc)| gf2::solve_right(ec, gc).expect("kernel not killed"))
        .collect();
    RepMorphism::new(e.target.clone(), g.target.clone(), components)
}

/// Image factorization: (image object, epi source → image, mono image → target).
pub fn image(f: &Morphism) -> (Object, Morphism, Morphism) {
    let (_, proj) = cokernel(f);
    let (im, incl) = kernel(&proj);
    let epi = lift_through_mono(&incl, f);
    (im, epi, incl)
}

pub struct Sum {
    pub sum: Object,
    pub inj1: Morphism,
    pub inj2: Morphism,
    pub proj1: Morphism,
    pub proj2: Morphism,
}

pub fn direct_sum(a: &Object, b: &Object) -> Sum {
    match (a, b) {
        (Object::Rep(m), Object::Rep(n)) => {
            let ds = rep::direct_sum(m, n);
            Sum {
                sum: Object::Rep(ds.sum),
                inj1: Morphism::Rep(ds.inj1),
                inj2: Morphism::Rep(ds.inj2),
                proj1: Morphism::Rep(ds.proj1),
                proj2: Morphism::Rep(ds.proj2),
            }
        }
        (Object::Mv(m), Object::Mv(n)) => {
            let s = crate::mv::direct_sum(m, n);
            Sum {
                sum: Object::Mv(Box::new(s.sum)),
                inj1: Morphism::Mv(Box::new(s.inj1)),
                inj2: Morphism::Mv(Box::new(s.inj2)),
                proj1: Morphism::Mv(Box::new(s.proj1)),
                proj2: Morphism::Mv(Box::new(s.proj2)),
            }
        }
        _ => panic!("direct sum of objects of different kinds"),
    }
}

pub fn hom_basis(a: &Object, b: &Object) -> Vec<Morphism> {
    match (a, b) {
        (Object::Rep(m), Object::Rep(n)) => {
            rep::hom_space(m, n).into_iter().map(Morphism::Rep).collect()
        }
        (Object::Mv(m), Object::Mv(n)) => crate::mv::hom_basis(m, n)
            .into_iter()
            .map(|f| Morphism::Mv(Box::new(f)))
            .collect(),
        _ => panic!("hom between objects of different kinds"),
    }
}

/// All 2^d elements of a hom space from its basis; the zero morphism first.
pub fn span_morphisms(a: &Object, b: &Object, basis: &[Morphism]) -> Vec<Morphism> {
    let d = basis.len();
    assert!(d <= rep::ENUMERATION_BIT_BUDGET, "span too large");
    (0u64..(1u64 << d))
        .map(|mask| {
            let mut f = zero_morphism(a, b);
            for (i, g) in basis.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    f = f.add(g);
                }
            }
            f
        })
        .collect()
}

#[derive(Debug, Clone)]
pub enum IsoCheck {
    Iso(Box<Morphism>),
    NotIso,
    Undecided,
}

impl IsoCheck {
    pub fn decided(&self) -> Option<bool> {
        match self {
            IsoCheck::Iso(_) => Some(true),
            IsoCheck::NotIso => Some(false),
            IsoCheck::Undecided => None,
        }
    }
}

pub fn is_isomorphic(a: &Object, b: &Object, budget: usize) -> IsoCheck {
    match (a, b) {
        (Object::Rep(m), Object::Rep(n)) => match rep::is_isomorphic(m, n, budget) {
            rep::IsoResult::Iso(f) => IsoCheck::Iso(Box::new(Morphism::Rep(*f))),
            rep::IsoResult::NotIso => IsoCheck::NotIso,
            rep::IsoResult::Undecided => IsoCheck::Undecided,
        },
        (Object::Mv(m), Object::Mv(n)) => {
            // Component isomorphy and the ranks of the gluing maps are
            // necessary conditions; the full check scans the hom space.
            if m.x.dims != n.x.dims
                || m.v.dims != n.v.dims
                || m.alpha.ranks() != n.alpha.ranks()
                || m.beta.ranks() != n.beta.ranks()
            {
                return IsoCheck::NotIso;
            }
            if a.total_dim() == 0 {
                return IsoCheck::Iso(Box::new(zero_morphism(a, b)));
            }
            let basis = hom_basis(a, b);
            if basis.len() <= budget {
                for f in span_morphisms(a, b, &basis) {
                    if f.is_isomorphism() {
                        return IsoCheck::Iso(Box::new(f));
                    }
                }
                return IsoCheck::NotIso;
            }
            IsoCheck::Undecided
        }
        _ => IsoCheck::NotIso,
    }
}

/// Exactness at the middle of a composable pair A --f--> B --g--> C:
/// g∘f = 0 and ker g = im f. Since g∘f = 0 already gives im f ⊆ ker g,
/// equality is a dimension count.
pub fn is_exact_at(f: &Morphism, g: &Morphism) -> bool {
    if !g.compose(f).is_zero() {
        return false;
    }
    let (kg, _) = kernel(g);
    let (kf, _) = kernel(f);
    kg.total_dim() == f.source().total_dim() - kf.total_dim()
}

/// A projective object with an epimorphism onto `a`. Minimal for
/// representation categories; for glued categories, built from the standard
/// projective generators of the construction.
pub fn projective_presentation(a: &Object) -> Result<(Object, Morphism)> {
    match a {
        Object::Rep(r) => {
            let (p, epi) = crate::resolution::projective_cover(r)?;
            Ok((Object::Rep(p), Morphism::Rep(epi)))
        }
        Object::Mv(o) => {
            let (p, epi) = crate::mv::projective_presentation(o)?;
            Ok((Object::Mv(Box::new(p)), Morphism::Mv(Box::new(epi))))
        }
    }
}

/// A projective resolution P_len → … → P_0 → a → 0 in either kind of
/// category, from iterated presentations of kernels.
pub struct ObjectResolution {
    pub target: Object,
    pub augmentation: Morphism,
    pub terms: Vec<Object>,
    pub differentials: Vec<Morphism>,
}

pub fn object_resolution(a: &Object, length: usize) -> Result<ObjectResolution> {
    let (p0, aug) = projective_presentation(a)?;
    let mut terms = vec![p0];
    let mut differentials = Vec::new();
    let (mut k, mut k_incl) = kernel(&aug);
    for _ in 0..length {
        let (p, epi) = projective_presentation(&k)?;
        differentials.push(k_incl.compose(&epi));
        terms.push(p);
        let (k2, incl2) = kernel(&epi);
        k = k2;
        k_incl = incl2;
    }
    Ok(ObjectResolution {
        target: a.clone(),
        augmentation: aug,
        terms,
        differentials,
    })
}
