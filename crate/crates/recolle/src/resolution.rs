//! Projective machinery for bound quiver algebras: path bases of
//! indecomposable projectives, minimal projective covers and resolutions,
//! and Ext groups computed from Hom complexes.

use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix, LinearMap, Subspace};
use crate::quiver::{BoundQuiver, Path};
use crate::rep::{self, Rep, RepMorphism};
use std::collections::HashMap;
use std::sync::Arc;

/// The indecomposable projective at a vertex, with its path basis.
///
/// The basis at each vertex is the set of non-pivot path classes after
/// quotienting the span of paths from `start` by the relation ideal,
/// computed by linear algebra on path space up to the nilpotency bound.
pub struct ProjectiveData {
    pub start: usize,
    pub rep: Rep,
    /// Per vertex: every path from `start` to that vertex with length <= bound.
    pub paths: Vec<Vec<Path>>,
    /// Per vertex: projection from path coordinates onto quotient classes.
    pub class_proj: Vec<LinearMap>,
    /// Per vertex: the representative (non-pivot) paths forming the basis.
    pub basis_paths: Vec<Vec<Path>>,
}

/// Compute the indecomposable projective at `v`. Fails when some path of
/// length equal to the nilpotency bound has a nonzero class, which signals
/// that the declared bound does not make the algebra finite-dimensional.
pub fn indecomposable_projective(quiver: &Arc<BoundQuiver>, v: usize) -> Result<ProjectiveData> {
    let bound = quiver.nilpotency_bound;
    let nv = quiver.vertex_count();
    let all = quiver.paths_from(v, bound);
    let mut paths: Vec<Vec<Path>> = vec![Vec::new(); nv];
    let mut index: Vec<HashMap<Path, usize>> = vec![HashMap::new(); nv];
    for p in all {
        let w = quiver.path_target(v, &p);
        index[w].insert(p.clone(), paths[w].len());
        paths[w].push(p);
    }
    // Span of the relation ideal inside each path space: every composite
    // prefix . relation . suffix that fits under the bound. Relations are
    // required to be homogeneous (all our relations are single paths).
    let mut span_rows: Vec<BitMatrix> = (0..nv)
        .map(|w| BitMatrix::zeros(0, paths[w].len()))
        .collect();
    for rel in &quiver.relations {
        let rel_len = rel[0].len();
        assert!(
            rel.iter().all(|p| p.len() == rel_len),
            "path-basis computation requires homogeneous relations"
        );
        let (rs, rt) = quiver.path_endpoints(&rel[0]);
        for w in 0..nv {
            for prefix in &paths[w] {
                if quiver.path_target(v, prefix) != rs {
                    continue;
                }
                for suffix in quiver.paths_from(rt, bound.saturating_sub(prefix.len() + rel_len)) {
                    let total_len = prefix.len() + rel_len + suffix.len();
                    if total_len > bound {
                        continue;
                    }
                    let end = quiver.path_target(rt, &suffix);
                    let mut row = BitMatrix::zeros(1, paths[end].len());
                    for rp in rel {
                        let mut composite = prefix.clone();
                        composite.extend_from_slice(rp);
                        composite.extend_from_slice(&suffix);
                        let idx = *index[end]
                            .get(&composite)
                            .expect("composite path must be enumerated");
                        row.set(0, idx, !row.get(0, idx));
                    }
                    span_rows[end] = span_rows[end].vstack(&row);
                }
            }
        }
    }
    let mut class_proj = Vec::with_capacity(nv);
    let mut basis_paths: Vec<Vec<Path>> = Vec::with_capacity(nv);
    for w in 0..nv {
        let n = paths[w].len();
        let span = Subspace::from_spanning_rows(n, &span_rows[w]);
        let as_map = LinearMap::new(span.basis.transpose());
        let (_, _, proj) = gf2::image_and_cokernel(&as_map);
        let mut is_pivot = vec![false; n];
        for r in 0..span.dim() {
            let p = (0..n).find(|&c| span.basis.get(r, c)).unwrap();
            is_pivot[p] = true;
        }
        let basis: Vec<Path> = (0..n)
            .filter(|&i| !is_pivot[i])
            .map(|i| paths[w][i].clone())
            .collect();
        // Declared nilpotency: classes of full-length paths must vanish.
        for p in &basis {
            if p.len() >= bound {
                return Err(Error::NonFiniteDimensional(format!(
                    "path of length {} at bound {} has nonzero class in quiver {}",
                    p.len(),
                    bound,
                    quiver.name
                )));
            }
        }
        class_proj.push(proj);
        basis_paths.push(basis);
    }
    // Arrow action: extend a basis path by the arrow and take its class.
    let dims: Vec<usize> = basis_paths.iter().map(Vec::len).collect();
    let arrow_maps: Vec<LinearMap> = quiver
        .arrows
        .iter()
        .map(|a| {
            let (w, x) = (a.source, a.target);
            let a_idx = quiver
                .arrows
                .iter()
                .position(|b| std::ptr::eq(a, b))
                .unwrap();
            let mut mat = BitMatrix::zeros(dims[x], dims[w]);
            for (col, p) in basis_paths[w].iter().enumerate() {
                let mut extended = p.clone();
                extended.push(a_idx);
                let idx = index[x][&extended];
                let mut e = BitMatrix::zeros(paths[x].len(), 1);
                e.set(idx, 0, true);
                let class = class_proj[x].matrix.mul(&e);
                for r in 0..dims[x] {
                    if class.get(r, 0) {
                        mat.set(r, col, true);
                    }
                }
            }
            LinearMap::new(mat)
        })
        .collect();
    let rep = Rep::new(quiver.clone(), dims, arrow_maps);
    debug_assert!(rep.check_relations());
    // The generator (empty path) is always coordinate 0 at the start vertex:
    // paths are ordered by length and relations have length >= 2.
    debug_assert!(basis_paths[v].first().is_some_and(Vec::is_empty));
    Ok(ProjectiveData {
        start: v,
        rep,
        paths,
        class_proj,
        basis_paths,
    })
}

impl ProjectiveData {
    /// The morphism P(start) -> r determined by a chosen image `x` of the
    /// generator (a column vector in r at the start vertex): each basis path
    /// acts on `x` through r's arrow maps.
    pub fn morphism_from_generator(&self, r: &Rep, x: &LinearMap) -> RepMorphism {
        assert_eq!(x.codomain_dim, r.dims[self.start]);
        assert_eq!(x.domain_dim, 1);
        let components: Vec<LinearMap> = (0..r.quiver.vertex_count())
            .map(|w| {
                let mut mat = BitMatrix::zeros(r.dims[w], self.rep.dims[w]);
                for (col, p) in self.basis_paths[w].iter().enumerate() {
                    let val = r.eval_path(self.start, p).compose(x);
                    for row in 0..r.dims[w] {
                        if val.matrix.get(row, 0) {
                            mat.set(row, col, true);
                        }
                    }
                }
                LinearMap::new(mat)
            })
            .collect();
        RepMorphism::new(self.rep.clone(), r.clone(), components)
    }
}

/// Minimal projective cover: a direct sum of indecomposable projectives
/// matching the top (r modulo its radical), with the lifted epi.
pub fn projective_cover(r: &Rep) -> Result<(Rep, RepMorphism)> {
    let quiver = &r.quiver;
    let rads = r.radical_subspaces();
    let mut cover: Option<(Rep, RepMorphism)> = None;
    for v in 0..quiver.vertex_count() {
        let incl = rads[v].inclusion();
        // top_v = r_v / rad_v, with a canonical section lifting each
        // top basis vector back into r.
        let full = LinearMap::new(incl.matrix.clone());
        let (_, top_dim, _) = gf2::image_and_cokernel(&full);
        if top_dim == 0 {
            continue;
        }
        let section = gf2::cokernel_section(&full);
        let pdata = indecomposable_projective(quiver, v)?;
        for k in 0..top_dim {
            let x = LinearMap::new(section.matrix.submatrix_cols(k, k + 1));
            let f = pdata.morphism_from_generator(r, &x);
            cover = Some(match cover {
                None => (pdata.rep.clone(), f),
                Some((p, epi)) => {
                    let ds = rep::direct_sum(&p, &pdata.rep);
                    let combined: Vec<LinearMap> = epi
                        .components
                        .iter()
                        .zip(&f.components)
                        .map(|(a, b)| a.juxtapose(b))
                        .collect();
                    (
                        ds.sum.clone(),
                        RepMorphism::new(ds.sum, r.clone(), combined),
                    )
                }
            });
        }
    }
    let (p, epi) = cover.unwrap_or_else(|| {
        let z = Rep::zero(quiver.clone());
        let f = RepMorphism::zero(&z, r);
        (z, f)
    });
    assert!(epi.is_epi(), "projective cover failed to surject");
    Ok((p, epi))
}

/// A minimal projective resolution P_len -> ... -> P_0 -> r -> 0.
pub struct Resolution {
    pub target: Rep,
    /// P_0 -> r.
    pub augmentation: RepMorphism,
    /// terms[i] = P_i.
    pub terms: Vec<Rep>,
    /// differentials[i]: P_{i+1} -> P_i.
    pub differentials: Vec<RepMorphism>,
}

pub fn min_projective_resolution(r: &Rep, length: usize) -> Result<Resolution> {
    let (p0, aug) = projective_cover(r)?;
    let mut terms = vec![p0];
    let mut differentials = Vec::new();
    let (mut k, mut k_incl) = rep::kernel(&aug);
    for _ in 0..length {
        let (p, epi) = projective_cover(&k)?;
        let d = k_incl.compose(&epi);
        terms.push(p);
        differentials.push(d);
        let (k2, k2_incl) = rep::kernel(&epi);
        k = k2;
        k_incl = k2_incl;
    }
    debug_assert!(differentials
        .windows(2)
        .all(|w| w[0].compose(&w[1]).is_zero()));
    Ok(Resolution {
        target: r.clone(),
        augmentation: aug,
        terms,
        differentials,
    })
}

/// Ext^degree(m, n): cohomology of Hom(P_•, n) for a minimal resolution of m.
/// Returns the dimension and a basis of cocycle representatives.
pub fn ext_group(m: &Rep, n: &Rep, degree: usize) -> Result<(usize, Vec<RepMorphism>)> {
    let res = min_projective_resolution(m, degree + 1)?;
    let hom_bases: Vec<Vec<RepMorphism>> = res
        .terms
        .iter()
        .map(|p| rep::hom_space(p, n))
        .collect();
    // delta_i: Hom(P_i, n) -> Hom(P_{i+1}, n), f -> f . d_{i+1}.
    let delta = |i: usize| -> BitMatrix {
        let rows = hom_bases[i + 1].len();
        let cols = hom_bases[i].len();
        let mut mat = BitMatrix::zeros(rows, cols);
        for (j, f) in hom_bases[i].iter().enumerate() {
            let composed = f.compose(&res.differentials[i]);
            let coords = rep::coords_in_basis(&composed, &hom_bases[i + 1])
                .expect("coboundary lands in hom space");
            for r in 0..rows {
                if coords.get(0, r) {
                    mat.set(r, j, true);
                }
            }
        }
        mat
    };
    let d_out = LinearMap::new(delta(degree));
    let cocycles = gf2::kernel_basis(&d_out);
    let boundary_rank = if degree == 0 {
        0
    } else {
        delta(degree - 1).rank()
    };
    let dim = cocycles.dim() - boundary_rank;
    let reps: Vec<RepMorphism> = (0..cocycles.dim())
        .map(|i| {
            let row = cocycles.basis.row(i);
            let mut f = RepMorphism::zero(&res.terms[degree], n);
            for (j, b) in hom_bases[degree].iter().enumerate() {
                if row.get(0, j) {
                    f = f.add(b);
                }
            }
            f
        })
        .collect();
    Ok((dim, reps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver;
    use crate::rep::{baer_class_count, enumerate_reps, is_isomorphic, IsoResult, DEFAULT_ISO_BUDGET};

    #[test]
    fn vect_projective_is_simple() {
        let q = quiver::vect();
        let p = indecomposable_projective(&q, 0).unwrap();
        assert_eq!(p.rep.dims, vec![1]);
    }

    #[test]
    fn loop_projective_has_dimension_two() {
        let q = quiver::sigma2();
        let p = indecomposable_projective(&q, 0).unwrap();
        assert_eq!(p.rep.dims, vec![2]);
        // u acts by path extension: e -> u, u -> u^2 = 0.
        assert_eq!(p.rep.arrow_maps[0].rank(), 1);
    }

    #[test]
    fn quad_free_projective_at_vertex_one() {
        // Basis {e1, H, PH}: dims (2, 1). With PH = 0 imposed, {e1, H}: (1,1).
        let q = quiver::quad_free();
        let p = indecomposable_projective(&q, 0).unwrap();
        assert_eq!(p.rep.dims, vec![2, 1]);
        let qv = quiver::quad_vect();
        let pv = indecomposable_projective(&qv, 0).unwrap();
        assert_eq!(pv.rep.dims, vec![1, 1]);
    }

    #[test]
    fn undeclared_nilpotency_fails_loudly() {
        // A loop with no relations is not finite-dimensional at any bound.
        let q = std::sync::Arc::new(crate::quiver::BoundQuiver::new(
            "bad_loop",
            &["s"],
            &[("u", 0, 0)],
            vec![],
            3,
        ));
        assert!(indecomposable_projective(&q, 0).is_err());
    }

    #[test]
    fn cover_of_projective_is_isomorphism() {
        let q = quiver::quad_free();
        let p = indecomposable_projective(&q, 0).unwrap();
        let (_, epi) = projective_cover(&p.rep).unwrap();
        assert!(epi.is_isomorphism());
    }

    #[test]
    fn cover_of_simple_is_indecomposable_projective() {
        let q = quiver::sigma2();
        let s = Rep::new(q.clone(), vec![1], vec![LinearMap::zero(1, 1)]);
        let (p, epi) = projective_cover(&s).unwrap();
        assert_eq!(p.dims, vec![2]);
        assert!(epi.is_epi());
        // Kernel of the cover is S again.
        let (k, _) = rep::kernel(&epi);
        assert!(matches!(
            is_isomorphic(&k, &s, DEFAULT_ISO_BUDGET),
            IsoResult::Iso(_)
        ));
    }

    #[test]
    fn cover_minimality_kernel_in_radical() {
        let q = quiver::quad_free();
        for dims in [[1, 1], [2, 1], [1, 2]] {
            for r in enumerate_reps(&q, &dims).unwrap() {
                let (p, epi) = projective_cover(&r).unwrap();
                let (_, k_incl) = rep::kernel(&epi);
                let rads = p.radical_subspaces();
                for (v, rad) in rads.iter().enumerate() {
                    let kb = k_incl.components[v].matrix.transpose();
                    for row in 0..kb.rows() {
                        assert!(rad.contains_row(&kb.row(row)), "cover not minimal");
                    }
                }
            }
        }
    }

    #[test]
    fn resolution_of_loop_simple_is_periodic() {
        let q = quiver::sigma2();
        let s = Rep::new(q, vec![1], vec![LinearMap::zero(1, 1)]);
        let res = min_projective_resolution(&s, 3).unwrap();
        for t in &res.terms {
            assert_eq!(t.dims, vec![2]);
        }
        // Differentials compose to zero, and the complex is exact away from 0.
        for w in res.differentials.windows(2) {
            assert!(w[0].compose(&w[1]).is_zero());
            let (k, _) = rep::kernel(&w[0]);
            let (im, _, _) = rep::image(&w[1]);
            assert_eq!(k.dims, im.dims);
        }
    }

    #[test]
    fn resolution_of_i_star_f2_in_quad_vect() {
        // i_*(F2) = (F2,0,0,0): resolution P(1) <- P(2) <- P(1) <- 0.
        let q = quiver::quad_vect();
        let s = Rep::new(
            q,
            vec![1, 0],
            vec![LinearMap::zero(1, 0), LinearMap::zero(0, 1)],
        );
        let res = min_projective_resolution(&s, 2).unwrap();
        assert_eq!(res.terms[0].dims, vec![1, 1]);
        assert_eq!(res.terms[1].dims, vec![1, 2]);
        assert_eq!(res.terms[2].dims, vec![1, 1]);
    }

    #[test]
    fn resolution_of_i_star_f2_in_quad_free() {
        let q = quiver::quad_free();
        let s = Rep::new(
            q,
            vec![1, 0],
            vec![LinearMap::zero(1, 0), LinearMap::zero(0, 1)],
        );
        let res = min_projective_resolution(&s, 3).unwrap();
        assert_eq!(res.terms[0].dims, vec![2, 1]);
        assert_eq!(res.terms[1].dims, vec![1, 2]);
        assert_eq!(res.terms[2].dims, vec![1, 2]);
        assert_eq!(res.terms[3].dims, vec![2, 1]);
    }

    #[test]
    fn ext_vanishes_on_projectives() {
        let q = quiver::quad_free();
        let p = indecomposable_projective(&q, 0).unwrap().rep;
        for n in enumerate_reps(&q, &[1, 1]).unwrap() {
            for k in 1..=2 {
                assert_eq!(ext_group(&p, &n, k).unwrap().0, 0);
            }
        }
    }

    #[test]
    fn ext1_of_loop_simple_is_one_dimensional() {
        let q = quiver::sigma2();
        let s = Rep::new(q, vec![1], vec![LinearMap::zero(1, 1)]);
        assert_eq!(ext_group(&s, &s, 1).unwrap().0, 1);
    }

    #[test]
    fn ext0_agrees_with_hom() {
        let q = quiver::quad_free();
        let reps = enumerate_reps(&q, &[1, 1]).unwrap();
        for m in &reps {
            for n in &reps {
                let (d, _) = ext_group(m, n, 0).unwrap();
                assert_eq!(d, rep::hom_space(m, n).len());
            }
        }
    }

    #[test]
    fn ext1_matches_baer_classes_small() {
        // 2^ext1 = number of Baer classes, here at dims <= 2 over sigma2.
        let q = quiver::sigma2();
        for dm in 1..=2usize {
            for dn in 1..=2usize {
                for m in enumerate_reps(&q, &[dm]).unwrap() {
                    for n in enumerate_reps(&q, &[dn]).unwrap() {
                        let (e1, _) = ext_group(&m, &n, 1).unwrap();
                        let classes = baer_class_count(&m, &n).unwrap();
                        assert_eq!(1usize << e1, classes, "m={m:?} n={n:?}");
                    }
                }
            }
        }
    }
}
