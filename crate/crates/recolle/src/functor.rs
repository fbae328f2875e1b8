//! Computable additive functors, natural transformations, adjunctions,
//! derived functors via projective resolutions, and exactness profiling.

use crate::category::{
    self, cokernel, hom_basis, is_exact_at, kernel, lift_through_mono, object_resolution,
    Category, Morphism, Object,
};
use crate::error::{Error, Result};
use crate::quiver::BoundQuiver;
use crate::rep::{self, Rep, RepMorphism};
use std::sync::Arc;

type ObjFn = Arc<dyn Fn(&Object) -> Object + Send + Sync>;
type MorFn = Arc<dyn Fn(&Morphism) -> Morphism + Send + Sync>;

/// An additive functor carried as a pair of pure procedures.
#[derive(Clone)]
pub struct Functor {
    pub name: String,
    pub source: Category,
    pub target: Category,
    on_object: ObjFn,
    on_morphism: MorFn,
}

impl std::fmt::Debug for Functor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Functor({})", self.name)
    }
}

impl Functor {
    pub fn new(
        name: &str,
        source: Category,
        target: Category,
        on_object: impl Fn(&Object) -> Object + Send + Sync + 'static,
        on_morphism: impl Fn(&Morphism) -> Morphism + Send + Sync + 'static,
    ) -> Functor {
        Functor {
            name: name.to_string(),
            source,
            target,
            on_object: Arc::new(on_object),
            on_morphism: Arc::new(on_morphism),
        }
    }

    /// A functor between representation categories given on raw reps.
    pub fn between_reps(
        name: &str,
        source: Arc<BoundQuiver>,
        target: Arc<BoundQuiver>,
        on_object: impl Fn(&Rep) -> Rep + Send + Sync + 'static,
        on_morphism: impl Fn(&RepMorphism) -> RepMorphism + Send + Sync + 'static,
    ) -> Functor {
        Functor::new(
            name,
            Category::Rep(source),
            Category::Rep(target),
            move |o| Object::Rep(on_object(o.as_rep())),
            move |m| Morphism::Rep(on_morphism(m.as_rep())),
        )
    }

    pub fn identity(cat: &Category) -> Functor {
        Functor::new(
            "id",
            cat.clone(),
            cat.clone(),
            |o| o.clone(),
            |m| m.clone(),
        )
    }

    pub fn zero(source: Category, target: Category) -> Functor {
        let z = target.zero_object();
        let z2 = z.clone();
        Functor::new(
            "0",
            source,
            target,
            move |_| z.clone(),
            move |_| z2.identity(),
        )
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Functor) -> Functor {
        let f = self.clone();
        let g = other.clone();
        let (f2, g2) = (self.clone(), other.clone());
        Functor::new(
            &format!("{}∘{}", self.name, other.name),
            other.source.clone(),
            self.target.clone(),
            move |o| f.apply(&g.apply(o)),
            move |m| f2.apply_mor(&g2.apply_mor(m)),
        )
    }

    pub fn apply(&self, o: &Object) -> Object {
        (self.on_object)(o)
    }

    pub fn apply_mor(&self, m: &Morphism) -> Morphism {
        (self.on_morphism)(m)
    }

    pub fn apply_rep(&self, r: &Rep) -> Rep {
        match self.apply(&Object::Rep(r.clone())) {
            Object::Rep(out) => out,
            Object::Mv(_) => panic!("functor did not land in a representation category"),
        }
    }

    pub fn apply_rep_mor(&self, f: &RepMorphism) -> RepMorphism {
        match self.apply_mor(&Morphism::Rep(f.clone())) {
            Morphism::Rep(out) => out,
            Morphism::Mv(_) => panic!("functor did not land in a representation category"),
        }
    }

    /// The opposite functor between the opposite representation categories,
    /// conjugating by duality. Only available for rep-to-rep functors.
    pub fn opposite(&self) -> Result<Functor> {
        let (sq, tq) = match (&self.source, &self.target) {
            (Category::Rep(s), Category::Rep(t)) => (s.clone(), t.clone()),
            _ => {
                return Err(Error::Unsupported(
                    "opposite functor requires representation categories".into(),
                ))
            }
        };
        let f = self.clone();
        let f2 = self.clone();
        Ok(Functor::between_reps(
            &format!("{}^op", self.name),
            sq.opposite(),
            tq.opposite(),
            move |r| f.apply_rep(&r.dualize()).dualize(),
            move |m| f2.apply_rep_mor(&m.dualize()).dualize(),
        ))
    }
}

/// A natural transformation between parallel functors.
#[derive(Clone)]
pub struct NatTrans {
    pub name: String,
    pub source: Functor,
    pub target: Functor,
    component: ObjFn2,
}

type ObjFn2 = Arc<dyn Fn(&Object) -> Morphism + Send + Sync>;

impl NatTrans {
    pub fn new(
        name: &str,
        source: Functor,
        target: Functor,
        component: impl Fn(&Object) -> Morphism + Send + Sync + 'static,
    ) -> NatTrans {
        NatTrans {
            name: name.to_string(),
            source,
            target,
            component: Arc::new(component),
        }
    }

    pub fn between_reps(
        name: &str,
        source: Functor,
        target: Functor,
        component: impl Fn(&Rep) -> RepMorphism + Send + Sync + 'static,
    ) -> NatTrans {
        NatTrans::new(name, source, target, move |o| {
            Morphism::Rep(component(o.as_rep()))
        })
    }

    pub fn at(&self, o: &Object) -> Morphism {
        (self.component)(o)
    }

    pub fn at_rep(&self, r: &Rep) -> RepMorphism {
        match self.at(&Object::Rep(r.clone())) {
            Morphism::Rep(f) => f,
            Morphism::Mv(_) => panic!("component is not a representation morphism"),
        }
    }

    /// Naturality square for one morphism of the common source category.
    pub fn is_natural_at(&self, f: &Morphism) -> bool {
        let lhs = self.at(&f.target()).compose(&self.source.apply_mor(f));
        let rhs = self.target.apply_mor(f).compose(&self.at(&f.source()));
        morphisms_equal(&lhs, &rhs)
    }
}

pub fn morphisms_equal(a: &Morphism, b: &Morphism) -> bool {
    a.add(b).is_zero()
}

/// An adjunction left ⊣ right with unit Id → right∘left and
/// counit left∘right → Id.
#[derive(Clone)]
pub struct Adjunction {
    pub left: Functor,
    pub right: Functor,
    pub unit: NatTrans,
    pub counit: NatTrans,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub pass: bool,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new() -> CheckReport {
        CheckReport {
            pass: true,
            failures: Vec::new(),
        }
    }

    pub fn fail(&mut self, msg: String) {
        self.pass = false;
        self.failures.push(msg);
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.pass &= other.pass;
        self.failures.extend(other.failures);
    }
}

impl Default for CheckReport {
    fn default() -> Self {
        CheckReport::new()
    }
}

/// Verify triangle identities on sample objects and the hom-set bijection
/// dim Hom(LX, A) = dim Hom(X, RA), plus unit/counit naturality on basis
/// morphisms between consecutive samples.
pub fn check_adjunction(
    adj: &Adjunction,
    xs: &[Object],
    az: &[Object],
) -> CheckReport {
    let mut report = CheckReport::new();
    for x in xs {
        // counit_{LX} ∘ L(unit_X) = id_{LX}
        let lx = adj.left.apply(x);
        let lhs = adj
            .counit
            .at(&lx)
            .compose(&adj.left.apply_mor(&adj.unit.at(x)));
        if !morphisms_equal(&lhs, &lx.identity()) {
            report.fail(format!(
                "triangle 1 fails at an object of dim {}",
                x.total_dim()
            ));
        }
    }
    for a in az {
        // R(counit_A) ∘ unit_{RA} = id_{RA}
        let ra = adj.right.apply(a);
        let lhs = adj
            .right
            .apply_mor(&adj.counit.at(a))
            .compose(&adj.unit.at(&ra));
        if !morphisms_equal(&lhs, &ra.identity()) {
            report.fail(format!(
                "triangle 2 fails at an object of dim {}",
                a.total_dim()
            ));
        }
    }
    for x in xs {
        for a in az {
            let d1 = hom_basis(&adj.left.apply(x), a).len();
            let d2 = hom_basis(x, &adj.right.apply(a)).len();
            if d1 != d2 {
                report.fail(format!(
                    "hom bijection fails: dim Hom(LX,A)={d1}, dim Hom(X,RA)={d2}"
                ));
            }
        }
    }
    // Naturality of the unit on basis morphisms between sample pairs.
    for x in xs {
        for y in xs {
            for f in hom_basis(x, y) {
                if !adj.unit.is_natural_at(&f) {
                    report.fail("unit not natural on a basis morphism".to_string());
                }
            }
        }
    }
    for a in az {
        for b in az {
            for f in hom_basis(a, b) {
                if !adj.counit.is_natural_at(&f) {
                    report.fail("counit not natural on a basis morphism".to_string());
                }
            }
        }
    }
    report
}

// ---------------------------------------------------------------------------
// Derived functors
// ---------------------------------------------------------------------------

/// Homology at position `n` of F applied to a projective resolution.
pub fn derived_left(f: &Functor, m: &Object, n: usize) -> Result<Object> {
    let res = object_resolution(m, n + 1)?;
    let diffs: Vec<Morphism> = res.differentials.iter().map(|d| f.apply_mor(d)).collect();
    Ok(homology_at(&diffs, n))
}

/// Homology of an already-applied complex F(P_•); exposed so resolution
/// independence can be tested against padded resolutions.
pub fn homology_at(diffs: &[Morphism], n: usize) -> Object {
    if n == 0 {
        return cokernel(&diffs[0]).0;
    }
    let (_, incl) = kernel(&diffs[n - 1]);
    let lifted = lift_through_mono(&incl, &diffs[n]);
    cokernel(&lifted).0
}

/// Right derived functor via duality: conjugate F by dualization, take left
/// derived, dualize back. Representation-backed functors only.
pub fn derived_right(f: &Functor, m: &Object, n: usize) -> Result<Object> {
    let fop = f.opposite()?;
    let md = Object::Rep(m.as_rep().dualize());
    let out = derived_left(&fop, &md, n)?;
    Ok(Object::Rep(out.as_rep().dualize()))
}

// ---------------------------------------------------------------------------
// Exactness profiling
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ExactnessProfile {
    pub right_exact: bool,
    pub left_exact: bool,
    pub exact: bool,
    pub witness: Option<String>,
    pub sequences_tested: usize,
}

/// A short exact sequence in generic form.
pub struct Ses {
    pub incl: Morphism,
    pub proj: Morphism,
}

/// Short exact sequences harvested from every basis morphism between
/// enumerated objects (kernel and image factorizations), plus, in
/// representation categories, all block-form extensions of small pairs.
pub fn sample_ses(cat: &Category, cap: usize) -> Result<Vec<Ses>> {
    let objects = cat.enumerate_objects(cap)?;
    let mut out = Vec::new();
    for a in &objects {
        for b in &objects {
            for f in hom_basis(a, b) {
                let (_, k_incl) = kernel(&f);
                let (_, coim_proj) = cokernel(&k_incl);
                out.push(Ses {
                    incl: k_incl,
                    proj: coim_proj,
                });
                let (_, _, im_incl) = category::image(&f);
                let (_, coker_proj) = cokernel(&f);
                out.push(Ses {
                    incl: im_incl,
                    proj: coker_proj,
                });
            }
        }
    }
    if let Category::Rep(_) = cat {
        for top in &objects {
            for bottom in &objects {
                if top.total_dim() + bottom.total_dim() > cap + 1 {
                    continue;
                }
                for e in rep::enumerate_extensions(top.as_rep(), bottom.as_rep())? {
                    out.push(Ses {
                        incl: Morphism::Rep(e.incl),
                        proj: Morphism::Rep(e.proj),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Test F against the sampled short exact sequences of its source category.
pub fn exactness_profile(f: &Functor, cap: usize) -> Result<ExactnessProfile> {
    let sequences = sample_ses(&f.source, cap)?;
    let mut right = true;
    let mut left = true;
    let mut witness = None;
    for s in &sequences {
        let fi = f.apply_mor(&s.incl);
        let fp = f.apply_mor(&s.proj);
        let mid = is_exact_at(&fi, &fp);
        let left_ok = mid && fi.is_mono();
        let right_ok = mid && fp.is_epi();
        if (!left_ok && left) || (!right_ok && right) {
            witness.get_or_insert_with(|| {
                format!(
                    "sequence with dims {} -> {} -> {}",
                    s.incl.source().total_dim(),
                    s.incl.target().total_dim(),
                    s.proj.target().total_dim()
                )
            });
        }
        left &= left_ok;
        right &= right_ok;
    }
    Ok(ExactnessProfile {
        right_exact: right,
        left_exact: left,
        exact: left && right,
        witness: if left && right { None } else { witness },
        sequences_tested: sequences.len(),
    })
}

/// Build the identity adjunction of a category; useful as a control.
pub fn identity_adjunction(cat: &Category) -> Adjunction {
    let id1 = Functor::identity(cat);
    let id2 = Functor::identity(cat);
    let unit = NatTrans::new(
        "id-unit",
        Functor::identity(cat),
        Functor::identity(cat),
        |o| o.identity(),
    );
    let counit = NatTrans::new(
        "id-counit",
        Functor::identity(cat),
        Functor::identity(cat),
        |o| o.identity(),
    );
    Adjunction {
        left: id1,
        right: id2,
        unit,
        counit,
    }
}
