//! One module per family of analyses.

mod ccr;
mod maxwell;
mod propagator;
mod topology;
mod yangmills;

use gaugeloc::linalg::{Rat, SparseVec};
use gaugeloc::{Cochain, CubicalComplex};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::report::Findings;
use crate::run::{Context, Outcome};
use crate::scenario::{AnalysisKind, Layer};

pub fn run(ctx: &Context, index: usize, kind: &AnalysisKind) -> Outcome<Findings> {
    let mut rng = ctx.rng(index);
    match kind {
        AnalysisKind::CohomologyTable { complex } => topology::cohomology_table(ctx, complex),
        AnalysisKind::DualityCheck { complex } => topology::duality_check(ctx, complex),
        AnalysisKind::HomotopyCheck { complex } => topology::homotopy_check(ctx, complex),
        AnalysisKind::PropagatorCheck { complex, degree, sources } => {
            propagator::propagator_check(ctx, complex, *degree, *sources, &mut rng)
        }
        AnalysisKind::MaxwellAudit { complex, degree, locality, time_slice, causality } => {
            maxwell::maxwell_audit(ctx, complex, *degree, locality, time_slice.as_deref(), causality.as_ref())
        }
        AnalysisKind::YmAffineAudit { complex, locality } => yangmills::affine_audit(ctx, complex, locality),
        AnalysisKind::YmCharacterAudit { complex, h0 } => yangmills::character_audit(ctx, complex, h0),
        AnalysisKind::CcrQuantize { complex, h0, samples, kernels } => {
            ccr::quantize(ctx, complex, h0, *samples, kernels, &mut rng)
        }
        AnalysisKind::Isotony { chain, layer, degree, h0 } => maxwell::isotony(ctx, chain, *layer, *degree, h0),
        AnalysisKind::NoGo { f, h, layer, degree, h0 } => match layer {
            Layer::Maxwell => maxwell::no_go(ctx, f, h, *degree),
            Layer::YangMills => yangmills::no_go(ctx, f, h, h0),
            Layer::Ccr => ccr::no_go(ctx, f, h, h0),
        },
    }
}

/// A small random rational.
pub(crate) fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    let mut n = rng.gen_range(-6i64..=6);
    if n == 0 {
        n = 1;
    }
    Rat::new(n, rng.gen_range(1i64..=3))
}

/// A random cochain with one to five nonzero entries on `cells`.
pub(crate) fn random_cochain(c: &CubicalComplex, k: usize, cells: &[usize], rng: &mut ChaCha8Rng) -> Cochain {
    let n = rng.gen_range(1..=5usize);
    let pairs = (0..n).map(|_| (cells[rng.gen_range(0..cells.len())], small_rat(rng)));
    Cochain::new(c, k, SparseVec::from_pairs(c.dim(k), pairs)).expect("indices in range")
}

/// Summarizes how many of the tested cases broke a property.
pub(crate) struct Tally {
    name: String,
    tested: usize,
    failed: usize,
    first: Option<String>,
}

impl Tally {
    pub(crate) fn new(name: &str) -> Tally {
        Tally { name: name.to_string(), tested: 0, failed: 0, first: None }
    }

    pub(crate) fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.tested += 1;
        if !ok {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(case());
            }
        }
    }

    pub(crate) fn finish(self, f: &mut Findings) {
        let detail = match &self.first {
            Some(c) => format!("{} of {} cases fail, first: {c}", self.failed, self.tested),
            None => String::new(),
        };
        f.check_with(self.name, self.failed == 0 && self.tested > 0, detail);
    }
}
