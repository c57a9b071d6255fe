//! Built-in scenarios, addressed as `preset:NAME`.

pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    /// The result the preset exercises.
    pub anchor: &'static str,
    pub text: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "maxwell-annulus",
        description: "Maxwell 1-forms on ANN3: radical, locality kernel into PLANE3, isotony",
        anchor: "non-trivial radical from the electric flux through the hole",
        text: include_str!("../presets/maxwell-annulus.toml"),
    },
    Preset {
        name: "maxwell-no-go-m2",
        description: "TWOSTRIP into TWOCYL and MINK2: kernels and the no-go witness",
        anchor: "locality cannot be recovered by quotienting Maxwell observables",
        text: include_str!("../presets/maxwell-no-go-m2.toml"),
    },
    Preset {
        name: "maxwell-causality",
        description: "Sub-window bijection on CYL2 and disjoint strips in MINK2",
        anchor: "time-slice axiom and Einstein causality",
        text: include_str!("../presets/maxwell-causality.toml"),
    },
    Preset {
        name: "ym-aharonov-bohm",
        description: "Affine and character observables for flat U(1) connections",
        anchor: "affine observables miss holonomy, characters separate it; PSV0 restores locality",
        text: include_str!("../presets/ym-aharonov-bohm.toml"),
    },
    Preset {
        name: "ym-character-no-go",
        description: "Character-level no-go on TWOSTRIP, its quantization, and isotony",
        anchor: "locality cannot be recovered for U(1) Yang-Mills characters",
        text: include_str!("../presets/ym-character-no-go.toml"),
    },
    Preset {
        name: "cohomology-toolkit",
        description: "Cohomology tables, duality pairings and homotopy identities",
        anchor: "causally restricted cohomology and Poincare duality",
        text: include_str!("../presets/cohomology-toolkit.toml"),
    },
    Preset {
        name: "ccr-smoke",
        description: "Weyl relations, reference state, l1 norm, quantum locality and center tests",
        anchor: "CCR quantization of presymplectic Abelian groups",
        text: include_str!("../presets/ccr-smoke.toml"),
    },
    Preset {
        name: "propagator",
        description: "Green operator identities on CYL2 and TWOCYL in degrees 0 and 1",
        anchor: "retarded and advanced Green operators and the causal propagator",
        text: include_str!("../presets/propagator.toml"),
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

/// One line per preset: name, description and anchor.
pub fn catalog() -> String {
    let width = PRESETS.iter().map(|p| p.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for p in PRESETS {
        out.push_str(&format!("{:width$}  {}  [{}]\n", p.name, p.description, p.anchor));
    }
    out
}
