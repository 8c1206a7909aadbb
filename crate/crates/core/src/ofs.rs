//! Orthogonal factorization via the codiagonal trick.
//!
//! Adjoining to a class the codiagonals `f*: A* -> B` (out of the pushout
//! of each generator with itself) turns injectivity into orthogonality:
//! factorizing against the augmented class and verifying unique lifts on
//! the residual yields the orthogonal factorization, reflections onto the
//! orthogonality class, and the square-transposition correspondence used
//! to carry cone-coreflectivity over to the starred class.

use crate::colimits;
use crate::lifting::{self, LiftError, LiftingProblem, SearchLimit};
use crate::presheaf::{PresheafError, PresheafMap, TabularPresheaf};
use crate::soa::{self, BoundednessConfig, FactorizationCertificate, MorphismClassSource, SoaError, SoaStatus};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OfsError {
    #[error("residual admits {count} lifts against generator {generator}; expected exactly 1")]
    UniquenessFailure { generator: usize, count: usize },
    #[error(transparent)]
    Soa(#[from] SoaError),
    #[error(transparent)]
    Lift(#[from] LiftError),
}

impl From<PresheafError> for OfsError {
    fn from(e: PresheafError) -> OfsError {
        OfsError::Lift(LiftError::Presheaf(e))
    }
}

/// The pushout of `f` with itself, its two legs, and the fold-back map.
#[derive(Debug, Clone)]
pub struct CodiagonalData {
    pub f: PresheafMap,
    /// pushout object `A*`
    pub object: TabularPresheaf,
    /// `p1: B -> A*`
    pub p1: PresheafMap,
    /// `p2: B -> A*`
    pub p2: PresheafMap,
    /// `f*: A* -> B` with `f* . p1 = f* . p2 = id`
    pub fstar: PresheafMap,
}

pub fn codiagonal(f: &PresheafMap) -> Result<CodiagonalData, OfsError> {
    let pushout = colimits::pushout(f, f)?;
    let id_b = PresheafMap::identity(f.target());
    let fstar = pushout.mediate(&id_b, &id_b)?;
    Ok(CodiagonalData {
        f: f.clone(),
        object: pushout.object,
        p1: pushout.left,
        p2: pushout.right,
        fstar,
    })
}

impl CodiagonalData {
    /// The defining identities of the codiagonal diagram.
    pub fn commutes(&self) -> bool {
        let fold1 = PresheafMap::compose(&self.fstar, &self.p1);
        let fold2 = PresheafMap::compose(&self.fstar, &self.p2);
        let leg1 = PresheafMap::compose(&self.p1, &self.f);
        let leg2 = PresheafMap::compose(&self.p2, &self.f);
        matches!((fold1, fold2), (Ok(a), Ok(b)) if a.is_identity() && b.is_identity())
            && matches!((leg1, leg2), (Ok(a), Ok(b)) if a == b)
    }
}

/// The pullback of `g` with itself, its projections, and the diagonal-in.
#[derive(Debug, Clone)]
pub struct PullbackData {
    pub g: PresheafMap,
    /// pullback object `D*` of element pairs with equal image
    pub object: TabularPresheaf,
    /// `q1: D* -> C`
    pub q1: PresheafMap,
    /// `q2: D* -> C`
    pub q2: PresheafMap,
    /// `g*: C -> D*` with `q_i . g* = id`
    pub gstar: PresheafMap,
}

/// Pointwise pullback of `g` with itself: pairs `(c1, c2)` with equal image,
/// named `(c1,c2)`.
pub fn self_pullback(g: &PresheafMap) -> Result<PullbackData, OfsError> {
    let base = Arc::clone(g.base());
    let c = g.source();
    let mut sets: Vec<Vec<String>> = Vec::with_capacity(base.n_objects());
    let mut pairs: Vec<Vec<(usize, usize)>> = Vec::with_capacity(base.n_objects());
    for a in base.objects() {
        let mut names = Vec::new();
        let mut index = Vec::new();
        for x1 in 0..c.size(a) {
            for x2 in 0..c.size(a) {
                if g.apply(a, x1) == g.apply(a, x2) {
                    names.push(format!("({},{})", c.set(a)[x1], c.set(a)[x2]));
                    index.push((x1, x2));
                }
            }
        }
        sets.push(names);
        pairs.push(index);
    }
    let lookup: Vec<std::collections::BTreeMap<(usize, usize), usize>> = pairs
        .iter()
        .map(|p| p.iter().enumerate().map(|(i, &xy)| (xy, i)).collect())
        .collect();
    let actions: Vec<Vec<usize>> = base
        .morphisms()
        .map(|m| {
            let (a, b) = (base.dom(m), base.cod(m));
            pairs[b.0]
                .iter()
                .map(|&(x1, x2)| lookup[a.0][&(c.act(m, x1), c.act(m, x2))])
                .collect()
        })
        .collect();
    let object = TabularPresheaf::new(Arc::clone(&base), sets, actions)?;
    let q1 = PresheafMap::new(
        object.clone(),
        c.clone(),
        pairs.iter().map(|p| p.iter().map(|&(x1, _)| x1).collect()).collect(),
    )?;
    let q2 = PresheafMap::new(
        object.clone(),
        c.clone(),
        pairs.iter().map(|p| p.iter().map(|&(_, x2)| x2).collect()).collect(),
    )?;
    let gstar = PresheafMap::new(
        c.clone(),
        object.clone(),
        base.objects()
            .map(|a| (0..c.size(a)).map(|x| lookup[a.0][&(x, x)]).collect())
            .collect(),
    )?;
    Ok(PullbackData {
        g: g.clone(),
        object,
        q1,
        q2,
        gstar,
    })
}

/// The augmented class: originals followed by their codiagonals.
pub fn cbar(class: &[PresheafMap]) -> Result<Vec<PresheafMap>, OfsError> {
    let mut out = class.to_vec();
    for f in class {
        out.push(codiagonal(f)?.fstar);
    }
    Ok(out)
}

/// Factorization against the augmented class; on a fixpoint the residual is
/// verified to lift uniquely against every original generator.
pub fn orth_factorize(
    f: &PresheafMap,
    class: &[PresheafMap],
    cfg: &BoundednessConfig,
    limit: SearchLimit,
) -> Result<FactorizationCertificate, OfsError> {
    let augmented = MorphismClassSource::new(cbar(class)?);
    let cert = soa::factorize(f, &augmented, cfg, limit)?;
    if cert.status == SoaStatus::Fixpoint {
        for (gen, h) in class.iter().enumerate() {
            if !lifting::perp_rel(h, &cert.residual, limit)? {
                // count lifts on some witnessing square for the error report
                return Err(count_uniqueness_failure(h, &cert.residual, gen, limit));
            }
        }
    }
    Ok(cert)
}

fn count_uniqueness_failure(
    h: &PresheafMap,
    residual: &PresheafMap,
    generator: usize,
    limit: SearchLimit,
) -> OfsError {
    // find the first square with lift count != 1
    let tops = match lifting::enumerate_maps(h.source(), residual.source(), limit) {
        Ok(t) => t,
        Err(e) => return OfsError::Lift(e),
    };
    for u in tops {
        let gu = match PresheafMap::compose(residual, &u) {
            Ok(c) => c,
            Err(e) => return OfsError::Lift(LiftError::Presheaf(e)),
        };
        let bottoms = match lifting::maps_extending(h, &gu, limit) {
            Ok(b) => b,
            Err(e) => return OfsError::Lift(e),
        };
        for v in bottoms {
            let problem = match LiftingProblem::new(h.clone(), residual.clone(), u.clone(), v) {
                Ok(p) => p,
                Err(e) => return OfsError::Lift(e),
            };
            match lifting::solve_limited(&problem, 3, limit) {
                Ok(d) if d.len() != 1 => {
                    return OfsError::UniquenessFailure {
                        generator,
                        count: d.len(),
                    }
                }
                Ok(_) => {}
                Err(e) => return OfsError::Lift(e),
            }
        }
    }
    OfsError::UniquenessFailure {
        generator,
        count: 0,
    }
}

/// Reflection onto the orthogonality class, with the universal property
/// verified against a supplied family of test objects.
#[derive(Debug, Clone)]
pub struct OrtReflection {
    /// `r: K -> RK`
    pub map: PresheafMap,
    pub reflection: TabularPresheaf,
    pub certificate: FactorizationCertificate,
    /// for each test object and each map `K -> X`, the count of
    /// factorizations through `r` (all must be exactly 1)
    pub universal_counts: Vec<Vec<usize>>,
}

/// Orthogonal factorization of `K -> 1`. On a fixpoint, `RK` is verified
/// orthogonal to the class, and for every map from `K` into each supplied
/// orthogonal test object the factorization through the reflection map is
/// verified to exist uniquely.
pub fn reflect_ort(
    k: &TabularPresheaf,
    class: &[PresheafMap],
    cfg: &BoundednessConfig,
    limit: SearchLimit,
    test_family: &[TabularPresheaf],
) -> Result<OrtReflection, OfsError> {
    let bang = PresheafMap::to_terminal(k);
    let certificate = orth_factorize(&bang, class, cfg, limit)?;
    let map = certificate.composite.clone();
    let reflection = certificate.middle_object().clone();
    let mut universal_counts = Vec::with_capacity(test_family.len());
    if certificate.status == SoaStatus::Fixpoint {
        debug_assert!(lifting::orthogonal(&reflection, class, limit)?);
        for x in test_family {
            let mut counts = Vec::new();
            for t in lifting::enumerate_maps(k, x, limit)? {
                let factorizations = lifting::maps_extending(&map, &t, limit)?;
                counts.push(factorizations.len());
            }
            universal_counts.push(counts);
        }
    }
    Ok(OrtReflection {
        map,
        reflection,
        certificate,
        universal_counts,
    })
}

/// The square-transposition correspondence between squares `f* -> g` and
/// squares `f -> g*`: builds both translations and checks that they are
/// mutually inverse bijections.
pub fn square_correspondence_check(
    f: &PresheafMap,
    g: &PresheafMap,
    limit: SearchLimit,
) -> Result<bool, OfsError> {
    let cd = codiagonal(f)?;
    let pb = self_pullback(g)?;
    let base = Arc::clone(f.base());

    // all squares (u, v): f* -> g
    let mut star_squares = Vec::new();
    for u in lifting::enumerate_maps(&cd.object, g.source(), limit)? {
        let gu = PresheafMap::compose(g, &u)?;
        for v in lifting::maps_extending(&cd.fstar, &gu, limit)? {
            star_squares.push((u.clone(), v));
        }
    }
    // all squares (t, h): f -> g*
    let mut plain_squares = Vec::new();
    for t in lifting::enumerate_maps(f.source(), g.source(), limit)? {
        let gst = PresheafMap::compose(&pb.gstar, &t)?;
        for h in lifting::maps_extending(f, &gst, limit)? {
            plain_squares.push((t.clone(), h));
        }
    }
    if star_squares.len() != plain_squares.len() {
        return Ok(false);
    }

    // forward: t = u . p1 . f, h collects (u p1, u p2) into the pullback
    let mut seen = vec![false; plain_squares.len()];
    for (u, v) in &star_squares {
        let up1 = PresheafMap::compose(u, &cd.p1)?;
        let up2 = PresheafMap::compose(u, &cd.p2)?;
        let t = PresheafMap::compose(&up1, f)?;
        let h_components: Vec<Vec<usize>> = base
            .objects()
            .map(|a| {
                (0..f.target().size(a))
                    .map(|b| {
                        let c1 = up1.apply(a, b);
                        let c2 = up2.apply(a, b);
                        pb.object
                            .element(a, &format!("({},{})", g.source().set(a)[c1], g.source().set(a)[c2]))
                            .expect("pair with equal image is a pullback element")
                    })
                    .collect()
            })
            .collect();
        let h = PresheafMap::new(f.target().clone(), pb.object.clone(), h_components)?;
        // the image must be a legitimate square and hit plain_squares once
        let pos = plain_squares.iter().position(|(t2, h2)| t2 == &t && h2 == &h);
        match pos {
            Some(i) if !seen[i] => seen[i] = true,
            _ => return Ok(false),
        }
        // inverse translation must reproduce (u, v)
        let q1h = PresheafMap::compose(&pb.q1, &h)?;
        let q2h = PresheafMap::compose(&pb.q2, &h)?;
        let u_back = recover_from_pushout(&cd, &q1h, &q2h)?;
        let v_back = PresheafMap::compose(g, &q1h)?;
        if &u_back != u || &v_back != v {
            return Ok(false);
        }
    }
    Ok(seen.iter().all(|&s| s))
}

/// The unique map `A* -> Z` restricting to the given legs along `p1`, `p2`.
fn recover_from_pushout(
    cd: &CodiagonalData,
    leg1: &PresheafMap,
    leg2: &PresheafMap,
) -> Result<PresheafMap, OfsError> {
    let pushout = colimits::Pushout {
        object: cd.object.clone(),
        left: cd.p1.clone(),
        right: cd.p2.clone(),
    };
    Ok(pushout.mediate(leg1, leg2)?)
}
