//! Shared instance builders for the benchmarks.

use catbox::lifting::SearchLimit;
use catbox::ordsimp::{self, OrdinalWindow};
use catbox::presheaf::{PresheafMap, TabularPresheaf};
use catbox::soa::{BoundednessConfig, MorphismClassSource};

pub struct SymmetrizationInstance {
    pub window: OrdinalWindow,
    pub edge: TabularPresheaf,
    pub source: MorphismClassSource,
    pub config: BoundednessConfig,
    pub limit: SearchLimit,
}

pub fn symmetrization_instance(bound: usize, stages: usize) -> SymmetrizationInstance {
    let window = OrdinalWindow::new(bound).expect("window");
    let edge = ordsimp::delta(&window, 1).expect("delta 1");
    let (_, j) = ordsimp::delta_1s(&window).expect("symmetric simplex");
    SymmetrizationInstance {
        window,
        edge,
        source: MorphismClassSource::new(vec![j]),
        config: BoundednessConfig {
            max_stages: stages,
            prune_solved: true,
        },
        limit: SearchLimit::default(),
    }
}

pub fn representable_pair(bound: usize) -> (TabularPresheaf, TabularPresheaf) {
    let window = OrdinalWindow::new(bound).expect("window");
    let d1 = ordsimp::delta(&window, 1).expect("delta 1");
    let d2 = ordsimp::delta(&window, 2).expect("delta 2");
    (d1, d2)
}

pub fn boundary_square(bound: usize) -> catbox::lifting::LiftingProblem {
    let window = OrdinalWindow::new(bound).expect("window");
    let boundary = catbox::corpus::boundary_inclusion(&window);
    let d1 = ordsimp::delta(&window, 1).expect("delta 1");
    let bang = PresheafMap::to_terminal(&d1);
    let tops =
        catbox::lifting::enumerate_maps(boundary.source(), &d1, SearchLimit::default()).unwrap();
    let u = tops.last().unwrap().clone();
    let v = PresheafMap::to_terminal(boundary.target());
    catbox::lifting::LiftingProblem::new(boundary, bang, u, v).expect("square")
}
