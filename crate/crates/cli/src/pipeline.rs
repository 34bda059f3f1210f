//! Code → cone-complex → flat voltages → lifts.

use conelift::covers::{enumerate_flat_homs, lift_code, verify_lift, LiftReport};
use conelift::distance::code_distances;
use conelift::{
    ConeComplex, CssCode, DistanceReport, FiniteGroup, HomOptions, Presentation, RegularLift, UpperOptions,
    VoltageAssignment,
};

/// Rewriting steps allowed when simplifying a presentation.
pub const SIMPLIFY_BUDGET: usize = 100_000;

pub struct Pipeline {
    pub base: CssCode,
    pub complex: ConeComplex,
    pub presentation: Presentation,
}

impl Pipeline {
    pub fn new(base: CssCode) -> conelift::Result<Self> {
        let complex = ConeComplex::build(&base);
        let presentation = complex.presentation(&complex.spanning_tree()?).simplify(SIMPLIFY_BUDGET);
        Ok(Pipeline {
            base,
            complex,
            presentation,
        })
    }

    pub fn voltages(&self, g: &FiniteGroup, opts: &HomOptions) -> conelift::Result<Vec<VoltageAssignment>> {
        enumerate_flat_homs(&self.complex, &self.presentation, g, opts)
    }

    pub fn lift(&self, v: &VoltageAssignment, g: &FiniteGroup) -> conelift::Result<RegularLift> {
        lift_code(&self.base, &self.complex, v, g)
    }

    pub fn verify(&self, lift: &RegularLift, g: &FiniteGroup) -> conelift::Result<LiftReport> {
        verify_lift(&self.base, &self.complex, lift, g)
    }
}

/// Exact distances when the kernels are at most `cap`-dimensional, estimates otherwise.
pub fn distances(code: &CssCode, cap: usize, opts: UpperOptions) -> conelift::Result<(DistanceReport, DistanceReport)> {
    code_distances(code, cap, opts)
}

/// `k·d²/n` with `d = min(d_X, d_Z)`; zero when `k = 0`.
pub fn figure_of_merit(n: usize, k: usize, d_x: usize, d_z: usize) -> f64 {
    if k == 0 || n == 0 {
        return 0.0;
    }
    let d = d_x.min(d_z) as f64;
    k as f64 * d * d / n as f64
}
