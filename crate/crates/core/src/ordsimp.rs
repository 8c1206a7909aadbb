//! The ordinal-category corpus: simplices, the symmetric 1-simplex, and
//! symmetrization towers.
//!
//! Over the ordinal window the representable at `alpha + 1` plays the role
//! of the alpha-simplex. The symmetric 1-simplex is the coequalizer gluing
//! the long edge of the 2-simplex to a degenerate edge; its inclusion `j`
//! generates the symmetrization experiments. All census numbers are
//! window-relative.

use crate::colimits;
use crate::fincat::{materialize, FinCategory, FincatError, MorId, ObjId, OrdinalCategory};
use crate::lifting::{self, LiftError, SearchLimit};
use crate::presheaf::{yoneda, yoneda_map, PresheafError, PresheafMap, TabularPresheaf};
use crate::soa::{self, BoundednessConfig, FactorizationCertificate, MorphismClassSource, SoaError};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrdsimpError {
    #[error("window too small: need objects up to {needed}, bound is {bound}")]
    WindowTooSmall { needed: usize, bound: usize },
    #[error("presheaf does not live over this ordinal window")]
    NotOverWindow,
    #[error(transparent)]
    Category(#[from] FincatError),
    #[error(transparent)]
    Presheaf(#[from] PresheafError),
    #[error(transparent)]
    Soa(#[from] SoaError),
    #[error(transparent)]
    Lift(#[from] LiftError),
}

/// The materialized ordinal category on objects `0..=bound`, keeping the
/// underlying isotone map of every morphism.
#[derive(Debug, Clone)]
pub struct OrdinalWindow {
    pub bound: usize,
    pub category: Arc<FinCategory>,
    /// per morphism: (dom ordinal, cod ordinal, isotone values)
    maps: Vec<(usize, usize, Vec<usize>)>,
}

impl OrdinalWindow {
    pub fn new(bound: usize) -> Result<OrdinalWindow, OrdsimpError> {
        let m = materialize(&OrdinalCategory, bound + 1)?;
        Ok(OrdinalWindow {
            bound,
            category: m.category,
            maps: m.morphism_data,
        })
    }

    pub fn object(&self, ordinal: usize) -> Option<ObjId> {
        (ordinal <= self.bound).then_some(ObjId(ordinal))
    }

    /// The morphism with the given endpoints and isotone values.
    pub fn morphism(&self, dom: usize, cod: usize, values: &[usize]) -> Option<MorId> {
        self.maps
            .iter()
            .position(|(d, c, v)| *d == dom && *c == cod && v == values)
            .map(MorId)
    }

    pub fn isotone_values(&self, m: MorId) -> &[usize] {
        &self.maps[m.0].2
    }

    fn is_injective(&self, m: MorId) -> bool {
        let vals = self.isotone_values(m);
        vals.windows(2).all(|w| w[0] < w[1])
    }
}

/// Nondegenerate simplex counts per dimension; index `d` counts dimension
/// `d`, i.e. elements at ordinal object `d + 1` not in the image of any
/// non-injective isotone action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexCensus {
    pub counts: Vec<usize>,
}

impl SimplexCensus {
    pub fn dimension(&self, d: usize) -> usize {
        self.counts.get(d).copied().unwrap_or(0)
    }
}

/// The alpha-simplex: the representable at `alpha + 1`, tabulated over the
/// window.
pub fn delta(window: &OrdinalWindow, alpha: usize) -> Result<TabularPresheaf, OrdsimpError> {
    let obj = window
        .object(alpha + 1)
        .ok_or(OrdsimpError::WindowTooSmall {
            needed: alpha + 1,
            bound: window.bound,
        })?;
    Ok(yoneda(&window.category, obj))
}

/// The symmetric 1-simplex and its generating inclusion `j`.
///
/// The coequalizer identifies the long edge `[0,2]` of the 2-simplex with
/// the constant edge at `0`; `j` includes the 1-simplex along the `[0,1]`
/// face of the quotient.
pub fn delta_1s(
    window: &OrdinalWindow,
) -> Result<(TabularPresheaf, PresheafMap), OrdsimpError> {
    if window.bound < 3 {
        return Err(OrdsimpError::WindowTooSmall {
            needed: 3,
            bound: window.bound,
        });
    }
    let long_edge = window
        .morphism(2, 3, &[0, 2])
        .expect("face [0,2] in the window");
    let constant = window
        .morphism(2, 3, &[0, 0])
        .expect("constant edge in the window");
    let f = yoneda_map(&window.category, long_edge);
    let g = yoneda_map(&window.category, constant);
    let (object, projection) = colimits::coequalizer(&f, &g)?;
    let first_face = window
        .morphism(2, 3, &[0, 1])
        .expect("face [0,1] in the window");
    let include = yoneda_map(&window.category, first_face);
    let j = PresheafMap::compose(&projection, &include)?;
    Ok((object, j))
}

/// Per-dimension nondegenerate counts: an element at ordinal `k >= 1` is
/// degenerate iff it lies in the image of the action of some non-injective
/// isotone map into `k`.
pub fn census(window: &OrdinalWindow, x: &TabularPresheaf) -> Result<SimplexCensus, OrdsimpError> {
    if x.base() != &window.category {
        return Err(OrdsimpError::NotOverWindow);
    }
    let mut counts = Vec::with_capacity(window.bound);
    for k in 1..=window.bound {
        let obj = ObjId(k);
        let mut degenerate = vec![false; x.size(obj)];
        for m in window.category.morphisms() {
            // actions X(m): X(cod) -> X(dom); degeneracy needs dom = k and a
            // non-injective underlying map
            if window.category.dom(m) != obj || window.is_injective(m) {
                continue;
            }
            for e in 0..x.size(window.category.cod(m)) {
                degenerate[x.act(m, e)] = true;
            }
        }
        counts.push(degenerate.iter().filter(|&&d| !d).count());
    }
    Ok(SimplexCensus { counts })
}

/// Symmetrization tower of `X`: the staged factorization of `X -> 1`
/// against `{j}`, with the census and the injectivity verdict per stage.
#[derive(Debug, Clone)]
pub struct Symmetrization {
    /// `X = tower[0]`, then one entry per completed stage
    pub tower: Vec<TabularPresheaf>,
    pub censuses: Vec<SimplexCensus>,
    /// `injective(tower[i], {j})`, recomputed from scratch per stage
    pub injectivity: Vec<bool>,
    pub certificate: FactorizationCertificate,
}

pub fn symmetrize(
    window: &OrdinalWindow,
    x: &TabularPresheaf,
    stages: usize,
    limit: SearchLimit,
) -> Result<Symmetrization, OrdsimpError> {
    if x.base() != &window.category {
        return Err(OrdsimpError::NotOverWindow);
    }
    let (_, j) = delta_1s(window)?;
    let source = MorphismClassSource::new(vec![j.clone()]);
    let cfg = BoundednessConfig {
        max_stages: stages,
        prune_solved: true,
    };
    let certificate = soa::factorize(&PresheafMap::to_terminal(x), &source, &cfg, limit)?;
    let mut tower = vec![x.clone()];
    for stage in &certificate.stages {
        tower.push(stage.stage_map.target().clone());
    }
    let censuses = tower
        .iter()
        .map(|obj| census(window, obj))
        .collect::<Result<Vec<_>, _>>()?;
    let injectivity = tower
        .iter()
        .map(|obj| lifting::injective(obj, &source.generators, limit))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Symmetrization {
        tower,
        censuses,
        injectivity,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::soa::SoaStatus;

    #[test]
    fn delta_zero_census_is_a_point() {
        let w = OrdinalWindow::new(4).unwrap();
        let d0 = delta(&w, 0).unwrap();
        // exactly one isotone map into the 1-chain per level
        for a in w.category.objects() {
            assert_eq!(d0.size(a), 1);
        }
        let c = census(&w, &d0).unwrap();
        assert_eq!(c.counts, vec![1, 0, 0, 0]);
    }

    #[test]
    fn delta_one_level_counts_and_census() {
        let w = OrdinalWindow::new(4).unwrap();
        let d1 = delta(&w, 1).unwrap();
        // |hom(2, 2)| = 3 total 1-simplices: 00, 11 degenerate, 01 not
        assert_eq!(d1.size(ObjId(2)), 3);
        let c = census(&w, &d1).unwrap();
        assert_eq!(c.counts[0], 2);
        assert_eq!(c.counts[1], 1);
        assert_eq!(c.counts[2], 0);
    }

    #[test]
    fn delta_two_census() {
        let w = OrdinalWindow::new(4).unwrap();
        let d2 = delta(&w, 2).unwrap();
        let c = census(&w, &d2).unwrap();
        // strictly increasing tuples out of {0,1,2}: 3 vertices, 3 edges, 1 face
        assert_eq!(&c.counts[..3], &[3, 3, 1]);
    }

    #[test]
    fn identity_simplex_is_nondegenerate() {
        let w = OrdinalWindow::new(5).unwrap();
        for alpha in 0..4 {
            let d = delta(&w, alpha).unwrap();
            let c = census(&w, &d).unwrap();
            assert_eq!(c.dimension(alpha), 1, "top cell of delta_{alpha}");
        }
    }

    #[test]
    fn window_too_small_for_delta() {
        let w = OrdinalWindow::new(2).unwrap();
        assert!(matches!(
            delta(&w, 2),
            Err(OrdsimpError::WindowTooSmall { .. })
        ));
        assert!(matches!(
            delta_1s(&w),
            Err(OrdsimpError::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn empty_presheaf_census_is_zero() {
        let w = OrdinalWindow::new(3).unwrap();
        let e = TabularPresheaf::initial(Arc::clone(&w.category));
        let c = census(&w, &e).unwrap();
        assert!(c.counts.iter().all(|&n| n == 0));
    }

    #[test]
    fn symmetric_simplex_census_matches_frozen_oracle() {
        // frozen from the independent quotient-enumeration oracle:
        // underlying sizes at objects 0..=5 are [1, 2, 4, 7, 11, 16] and the
        // nondegenerate census is [2, 2, 1, 0, 0]
        let w = OrdinalWindow::new(5).unwrap();
        let (d1s, j) = delta_1s(&w).unwrap();
        let sizes: Vec<usize> = w.category.objects().map(|a| d1s.size(a)).collect();
        assert_eq!(sizes, vec![1, 2, 4, 7, 11, 16]);
        let c = census(&w, &d1s).unwrap();
        assert_eq!(c.counts, vec![2, 2, 1, 0, 0]);
        // j includes the [0,1] edge: its image at the edge level is
        // nondegenerate, and j is pointwise injective on vertices
        assert_eq!(j.source().size(ObjId(1)), 2);
    }

    #[test]
    fn delta_zero_symmetrizes_trivially() {
        let w = OrdinalWindow::new(3).unwrap();
        let d0 = delta(&w, 0).unwrap();
        let s = symmetrize(&w, &d0, 2, SearchLimit::default()).unwrap();
        assert_eq!(s.certificate.status, SoaStatus::Fixpoint);
        assert_eq!(s.tower.len(), 1);
        assert!(s.injectivity[0]);
    }

    #[test]
    fn delta_one_first_stage_attaches_one_cell() {
        let w = OrdinalWindow::new(3).unwrap();
        let d1 = delta(&w, 1).unwrap();
        let (d1s, j) = delta_1s(&w).unwrap();
        let source = MorphismClassSource::new(vec![j]);
        let triples = soa::collect_triples(
            &PresheafMap::to_terminal(&d1),
            &source,
            true,
            SearchLimit::default(),
        )
        .unwrap();
        // only the identity attaching map survives pruning
        assert_eq!(triples.len(), 1);
        let s = symmetrize(&w, &d1, 1, SearchLimit::default()).unwrap();
        assert_eq!(s.tower.len(), 2);
        // stage 1 output is the symmetric simplex itself (pushout along id)
        let c1 = &s.censuses[1];
        let expected = census(&w, &d1s).unwrap();
        assert_eq!(c1, &expected);
        assert!(c1.dimension(1) > s.censuses[0].dimension(1));
    }

    #[test]
    fn census_never_decreases_along_tower() {
        let w = OrdinalWindow::new(3).unwrap();
        let d1 = delta(&w, 1).unwrap();
        let s = symmetrize(&w, &d1, 2, SearchLimit::default()).unwrap();
        for pair in s.censuses.windows(2) {
            for d in 0..w.bound {
                assert!(pair[1].dimension(d) >= pair[0].dimension(d));
            }
        }
    }
}
