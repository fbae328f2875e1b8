//! The glued abelian category A(ξ) built from a right exact functor F, a
//! left exact functor G (both A'' → A') and a natural transformation
//! ξ: F → G. Objects are tuples (X, V, α: FX → V, β: V → GX) with βα = ξ_X;
//! morphisms are compatible pairs. Kernels exist because G preserves them,
//! cokernels because F preserves them.

use crate::error::{Error, Result};
use crate::functor::{Functor, NatTrans};
use crate::gf2::{self, BitMatrix, LinearMap};
use crate::quiver::BoundQuiver;
use crate::rep::{self, Rep, RepMorphism};
use std::sync::Arc;

type RepObjFn = Arc<dyn Fn(&Rep) -> RepMorphism + Send + Sync>;

/// A left adjoint G* ⊣ G with its unit V → G(G*V) and counit G*(GX) → X.
#[derive(Clone)]
pub struct GStarData {
    pub functor: Functor,
    pub unit: RepObjFn,
    pub counit: RepObjFn,
}

/// The defining data of a glued category.
pub struct MvData {
    pub name: String,
    pub aprime: Arc<BoundQuiver>,
    pub adouble: Arc<BoundQuiver>,
    pub f: Functor,
    pub g: Functor,
    pub xi: NatTrans,
    pub g_star: Option<GStarData>,
}

impl MvData {
    pub fn zero_object(self: &Arc<Self>) -> MvObject {
        let x = Rep::zero(self.adouble.clone());
        let v = Rep::zero(self.aprime.clone());
        let fx = self.f.apply_rep(&x);
        let gx = self.g.apply_rep(&x);
        MvObject::new(
            self.clone(),
            x,
            v.clone(),
            RepMorphism::zero(&fx, &v),
            RepMorphism::zero(&v, &gx),
        )
    }

    /// All objects with x-dims and v-dims at most `cap` per vertex.
    pub fn enumerate_objects(self: &Arc<Self>, cap: usize) -> Result<Vec<MvObject>> {
        let mut out = Vec::new();
        for xdims in rep::dim_vectors(&self.adouble, cap) {
            for x in rep::enumerate_reps(&self.adouble, &xdims)? {
                let fx = self.f.apply_rep(&x);
                let gx = self.g.apply_rep(&x);
                let xix = self.xi.at_rep(&x);
                for vdims in rep::dim_vectors(&self.aprime, cap) {
                    for v in rep::enumerate_reps(&self.aprime, &vdims)? {
                        let ha = rep::hom_space(&fx, &v);
                        let hb = rep::hom_space(&v, &gx);
                        if ha.len() + hb.len() > rep::ENUMERATION_BIT_BUDGET {
                            return Err(Error::BudgetExceeded(format!(
                                "gluing-map spans need {} bits",
                                ha.len() + hb.len()
                            )));
                        }
                        for alpha in rep::span_elements(&fx, &v, &ha) {
                            for beta in rep::span_elements(&v, &gx, &hb) {
                                if beta.compose(&alpha).add(&xix).is_zero() {
                                    out.push(MvObject::new(
                                        self.clone(),
                                        x.clone(),
                                        v.clone(),
                                        alpha.clone(),
                                        beta,
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone)]
pub struct MvObject {
    pub data: Arc<MvData>,
    pub x: Rep,
    pub v: Rep,
    /// F(x) → v.
    pub alpha: RepMorphism,
    /// v → G(x).
    pub beta: RepMorphism,
}

impl std::fmt::Debug for MvObject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MvObject")
            .field("x_dims", &self.x.dims)
            .field("v_dims", &self.v.dims)
            .finish()
    }
}

impl MvObject {
    pub fn new(
        data: Arc<MvData>,
        x: Rep,
        v: Rep,
        alpha: RepMorphism,
        beta: RepMorphism,
    ) -> MvObject {
        debug_assert_eq!(alpha.source.dims, data.f.apply_rep(&x).dims);
        debug_assert_eq!(alpha.target.dims, v.dims);
        debug_assert_eq!(beta.source.dims, v.dims);
        debug_assert_eq!(beta.target.dims, data.g.apply_rep(&x).dims);
        debug_assert!(
            beta.compose(&alpha).add(&data.xi.at_rep(&x)).is_zero(),
            "gluing triangle βα = ξ violated"
        );
        MvObject {
            data,
            x,
            v,
            alpha,
            beta,
        }
    }
}

#[derive(Clone)]
pub struct MvMorphism {
    pub source: MvObject,
    pub target: MvObject,
    /// x → x' in A''.
    pub f: RepMorphism,
    /// v → v' in A'.
    pub phi: RepMorphism,
}

impl std::fmt::Debug for MvMorphism {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fm.debug_struct("MvMorphism").finish_non_exhaustive()
    }
}

impl MvMorphism {
    pub fn new(source: MvObject, target: MvObject, f: RepMorphism, phi: RepMorphism) -> MvMorphism {
        debug_assert!(
            phi.compose(&source.alpha)
                .add(&target.alpha.compose(&source.data.f.apply_rep_mor(&f)))
                .is_zero(),
            "α-compatibility violated"
        );
        debug_assert!(
            target
                .beta
                .compose(&phi)
                .add(&source.data.g.apply_rep_mor(&f).compose(&source.beta))
                .is_zero(),
            "β-compatibility violated"
        );
        MvMorphism {
            source,
            target,
            f,
            phi,
        }
    }
}

/// Kernel: componentwise kernels, with the gluing maps corestricted. The
/// α-part lands in ker φ because φαF(incl) = α'F(f·incl) = 0; the β-part
/// corestricts through G(incl), which is mono by left-exactness of G.
pub fn kernel(m: &MvMorphism) -> (MvObject, MvMorphism) {
    let data = &m.source.data;
    let (kx, incl_x) = rep::kernel(&m.f);
    let (kv, incl_v) = rep::kernel(&m.phi);
    let a0 = crate::category::rep_lift(
        &incl_v,
        &m.source.alpha.compose(&data.f.apply_rep_mor(&incl_x)),
    );
    let b0 = crate::category::rep_lift(
        &data.g.apply_rep_mor(&incl_x),
        &m.source.beta.compose(&incl_v),
    );
    let k = MvObject::new(data.clone(), kx, kv, a0, b0);
    let incl = MvMorphism::new(k.clone(), m.source.clone(), incl_x, incl_v);
    (k, incl)
}

/// Cokernel: componentwise cokernels; the α-part extends through F(proj),
/// which is epi by right-exactness of F, the β-part through proj itself.
pub fn cokernel(m: &MvMorphism) -> (MvObject, MvMorphism) {
    let data = &m.source.data;
    let (cx, proj_x) = rep::cokernel(&m.f);
    let (cv, proj_v) = rep::cokernel(&m.phi);
    let abar = crate::category::rep_extend(
        &data.f.apply_rep_mor(&proj_x),
        &proj_v.compose(&m.target.alpha),
    );
    let bbar = crate::category::rep_extend(
        &proj_v,
        &data.g.apply_rep_mor(&proj_x).compose(&m.target.beta),
    );
    let c = MvObject::new(data.clone(), cx, cv, abar, bbar);
    let proj = MvMorphism::new(m.target.clone(), c.clone(), proj_x, proj_v);
    (c, proj)
}

pub struct MvSum {
    pub sum: MvObject,
    pub inj1: MvMorphism,
    pub inj2: MvMorphism,
    pub proj1: MvMorphism,
    pub proj2: MvMorphism,
}

pub fn direct_sum(m: &MvObject, n: &MvObject) -> MvSum {
    let data = &m.data;
    let dsx = rep::direct_sum(&m.x, &n.x);
    let dsv = rep::direct_sum(&m.v, &n.v);
    let fmap = |f: &RepMorphism| data.f.apply_rep_mor(f);
    let gmap = |f: &RepMorphism| data.g.apply_rep_mor(f);
    let alpha = dsv
        .inj1
        .compose(&m.alpha)
        .compose(&fmap(&dsx.proj1))
        .add(&dsv.inj2.compose(&n.alpha).compose(&fmap(&dsx.proj2)));
    let beta = gmap(&dsx.inj1)
        .compose(&m.beta)
        .compose(&dsv.proj1)
        .add(&gmap(&dsx.inj2).compose(&n.beta).compose(&dsv.proj2));
    let sum = MvObject::new(data.clone(), dsx.sum, dsv.sum, alpha, beta);
    MvSum {
        inj1: MvMorphism::new(m.clone(), sum.clone(), dsx.inj1, dsv.inj1),
        inj2: MvMorphism::new(n.clone(), sum.clone(), dsx.inj2, dsv.inj2),
        proj1: MvMorphism::new(sum.clone(), m.clone(), dsx.proj1, dsv.proj1),
        proj2: MvMorphism::new(sum.clone(), n.clone(), dsx.proj2, dsv.proj2),
        sum,
    }
}

/// Basis of Hom((x,v,α,β), (x',v',α',β')): pairs (f, φ) solving the linear
/// compatibility system over bases of Hom(x,x') and Hom(v,v').
pub fn hom_basis(m: &MvObject, n: &MvObject) -> Vec<MvMorphism> {
    let data = &m.data;
    let bx = rep::hom_space(&m.x, &n.x);
    let bv = rep::hom_space(&m.v, &n.v);
    let nb = bx.len() + bv.len();
    // Defect of a candidate pair; zero exactly for morphisms. Both parts are
    // genuine morphisms in A', so their coordinate rows are well-defined.
    let defect = |f: &RepMorphism, phi: &RepMorphism| -> BitMatrix {
        let d1 = phi
            .compose(&m.alpha)
            .add(&n.alpha.compose(&data.f.apply_rep_mor(f)));
        let d2 = n
            .beta
            .compose(phi)
            .add(&data.g.apply_rep_mor(f).compose(&m.beta));
        rep::morphism_to_coords(&d1).hstack(&rep::morphism_to_coords(&d2))
    };
    let zf = RepMorphism::zero(&m.x, &n.x);
    let zphi = RepMorphism::zero(&m.v, &n.v);
    let mut cols: Vec<BitMatrix> = Vec::with_capacity(nb);
    for f in &bx {
        cols.push(defect(f, &zphi));
    }
    for phi in &bv {
        cols.push(defect(&zf, phi));
    }
    let ncon = cols.first().map_or(0, BitMatrix::cols);
    let mut mat = BitMatrix::zeros(ncon, nb);
    for (j, c) in cols.iter().enumerate() {
        for i in 0..ncon {
            if c.get(0, i) {
                mat.set(i, j, true);
            }
        }
    }
    let ker = gf2::kernel_basis(&LinearMap::new(mat));
    (0..ker.dim())
        .map(|i| {
            let row = ker.basis.row(i);
            let mut f = zf.clone();
            let mut phi = zphi.clone();
            for (j, b) in bx.iter().enumerate() {
                if row.get(0, j) {
                    f = f.add(b);
                }
            }
            for (j, b) in bv.iter().enumerate() {
                if row.get(0, bx.len() + j) {
                    phi = phi.add(b);
                }
            }
            MvMorphism::new(m.clone(), n.clone(), f, phi)
        })
        .collect()
}

/// A projective object with an epimorphism onto `o`, assembled from the two
/// standard projective generators of the glued category: the left gluing of
/// a cover of x and the left adjoint of the retraction applied to a cover of
/// v. Requires G* data.
pub fn projective_presentation(o: &MvObject) -> Result<(MvObject, MvMorphism)> {
    let data = &o.data;
    // Part 1: (P'', FP'', id, ξ) covering the x-component.
    let (pxx, e) = crate::resolution::projective_cover(&o.x)?;
    let fp = data.f.apply_rep(&pxx);
    let part1 = MvObject::new(
        data.clone(),
        pxx.clone(),
        fp.clone(),
        RepMorphism::identity(&fp),
        data.xi.at_rep(&pxx),
    );
    let map1 = MvMorphism::new(
        part1.clone(),
        o.clone(),
        e.clone(),
        o.alpha.compose(&data.f.apply_rep_mor(&e)),
    );
    // Part 2: (G*W, FG*W ⊕ W, inj, [ξ, η]) covering the v-component.
    let gs = data.g_star.as_ref().ok_or_else(|| {
        Error::Unsupported("projective presentation needs a left adjoint of G".into())
    })?;
    let (w, q) = crate::resolution::projective_cover(&o.v)?;
    let gw = gs.functor.apply_rep(&w);
    let fgw = data.f.apply_rep(&gw);
    let ds = rep::direct_sum(&fgw, &w);
    let alpha2 = ds.inj1.clone();
    let beta2 = data
        .xi
        .at_rep(&gw)
        .compose(&ds.proj1)
        .add(&(gs.unit)(&w).compose(&ds.proj2));
    let part2 = MvObject::new(data.clone(), gw.clone(), ds.sum.clone(), alpha2, beta2);
    // The epi part2 → o adjunct to the cover q: W → v.
    let bq = o.beta.compose(&q); // W → G(x)
    let f2 = (gs.counit)(&o.x).compose(&gs.functor.apply_rep_mor(&bq));
    let phi2 = o
        .alpha
        .compose(&data.f.apply_rep_mor(&f2))
        .compose(&ds.proj1)
        .add(&q.compose(&ds.proj2));
    let map2 = MvMorphism::new(part2.clone(), o.clone(), f2, phi2);
    // Combine through the direct sum.
    let s = direct_sum(&part1, &part2);
    let f = map1
        .f
        .compose(&s.proj1.f)
        .add(&map2.f.compose(&s.proj2.f));
    let phi = map1
        .phi
        .compose(&s.proj1.phi)
        .add(&map2.phi.compose(&s.proj2.phi));
    let epi = MvMorphism::new(s.sum.clone(), o.clone(), f, phi);
    assert!(
        epi.f.is_epi() && epi.phi.is_epi(),
        "glued presentation failed to surject"
    );
    Ok((s.sum, epi))
}
