//! Shared fixtures for the benchmarks.

use conelift::{ConeComplex, CssCode, FamilySpec, FiniteGroup, Presentation};

pub struct Fixture {
    pub base: CssCode,
    pub complex: ConeComplex,
    pub presentation: Presentation,
    pub group: FiniteGroup,
}

impl Fixture {
    pub fn new(spec: FamilySpec, group: FiniteGroup) -> Self {
        let base = spec.build().expect("family builds");
        let complex = ConeComplex::build(&base);
        let presentation = complex
            .presentation(&complex.spanning_tree().expect("connected"))
            .simplify(100_000);
        Fixture { base, complex, presentation, group }
    }

    /// VJ(3,3) over Z3 x Z3: a [[108,8]] lift among thirteen.
    pub fn vj33() -> Self {
        Fixture::new(FamilySpec::vj(3, 3), FiniteGroup::direct(&FiniteGroup::cyclic(3), &FiniteGroup::cyclic(3)))
    }
}
