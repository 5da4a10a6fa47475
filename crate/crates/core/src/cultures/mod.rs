//! Seeded statistical cultures for sampling elections.

mod checks;
mod generators;

pub use checks::{is_single_crossing, is_single_peaked, is_single_peaked_vote, is_spoc_vote};
pub use generators::{
    group_separable_votes, mallows_phi_from_norm, sample_euclidean, sample_group_separable, sample_ic, sample_mallows,
    sample_single_crossing, sample_sp_conitzer, sample_sp_walsh, sample_spoc, sample_urn, single_crossing_path,
};

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};

use crate::election::Election;
use crate::error::{Error, Result};

pub type Seed = u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EuclideanShape {
    #[serde(rename = "interval-1d")]
    Interval1D,
    #[serde(rename = "disc-2d")]
    Disc2D,
    #[serde(rename = "sphere-2d")]
    Sphere2D,
    #[serde(rename = "cube-3d")]
    Cube3D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GsTree {
    Balanced,
    Caterpillar,
}

/// Urn contagion. A fixed `alpha` wins; otherwise each election draws
/// `alpha ~ Gamma(gamma_shape, gamma_scale)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct UrnParams {
    pub alpha: Option<f64>,
    pub gamma_shape: f64,
    pub gamma_scale: f64,
}

impl Default for UrnParams {
    fn default() -> Self {
        UrnParams {
            alpha: None,
            gamma_shape: 0.8,
            gamma_scale: 10.0,
        }
    }
}

/// Mallows dispersion. `phi` is used as is; `norm_phi` goes through the
/// normalization map; with neither, `norm_phi ~ U[0,1]` per election.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MallowsParams {
    pub phi: Option<f64>,
    pub norm_phi: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", content = "params", rename_all = "kebab-case")]
pub enum CultureSpec {
    Ic,
    Urn(UrnParams),
    Mallows(MallowsParams),
    SpWalsh,
    SpConitzer,
    Spoc,
    SingleCrossing,
    Euclidean { shape: EuclideanShape },
    GroupSeparable { tree: GsTree },
}

impl CultureSpec {
    /// The thirteen cultures of the standard comparison dataset.
    pub fn standard_thirteen() -> Vec<CultureSpec> {
        vec![
            CultureSpec::Ic,
            CultureSpec::Urn(UrnParams::default()),
            CultureSpec::Mallows(MallowsParams::default()),
            CultureSpec::SpWalsh,
            CultureSpec::SpConitzer,
            CultureSpec::Spoc,
            CultureSpec::SingleCrossing,
            CultureSpec::Euclidean { shape: EuclideanShape::Interval1D },
            CultureSpec::Euclidean { shape: EuclideanShape::Disc2D },
            CultureSpec::Euclidean { shape: EuclideanShape::Sphere2D },
            CultureSpec::Euclidean { shape: EuclideanShape::Cube3D },
            CultureSpec::GroupSeparable { tree: GsTree::Balanced },
            CultureSpec::GroupSeparable { tree: GsTree::Caterpillar },
        ]
    }

    pub fn label(&self) -> String {
        match self {
            CultureSpec::Ic => "ic".into(),
            CultureSpec::Urn(p) => match p.alpha {
                Some(a) => format!("urn-{a}"),
                None => "urn-gamma".into(),
            },
            CultureSpec::Mallows(p) => match (p.phi, p.norm_phi) {
                (Some(phi), _) => format!("mallows-{phi}"),
                (None, Some(n)) => format!("norm-mallows-{n}"),
                (None, None) => "norm-mallows-uniform".into(),
            },
            CultureSpec::SpWalsh => "sp-walsh".into(),
            CultureSpec::SpConitzer => "sp-conitzer".into(),
            CultureSpec::Spoc => "spoc".into(),
            CultureSpec::SingleCrossing => "single-crossing".into(),
            CultureSpec::Euclidean { shape } => match shape {
                EuclideanShape::Interval1D => "euclidean-1d".into(),
                EuclideanShape::Disc2D => "euclidean-2d-disc".into(),
                EuclideanShape::Sphere2D => "euclidean-2d-sphere".into(),
                EuclideanShape::Cube3D => "euclidean-3d-cube".into(),
            },
            CultureSpec::GroupSeparable { tree } => match tree {
                GsTree::Balanced => "gs-balanced".into(),
                GsTree::Caterpillar => "gs-caterpillar".into(),
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match self {
            CultureSpec::Urn(p) => {
                if let Some(a) = p.alpha {
                    if !(a >= 0.0 && a.is_finite()) {
                        return bad(format!("urn alpha must be a nonnegative number, got {a}"));
                    }
                } else if !(p.gamma_shape > 0.0 && p.gamma_scale > 0.0) {
                    return bad("urn gamma shape and scale must be positive".into());
                }
            }
            CultureSpec::Mallows(p) => {
                for (name, v) in [("phi", p.phi), ("norm_phi", p.norm_phi)] {
                    if let Some(v) = v {
                        if !(0.0..=1.0).contains(&v) {
                            return bad(format!("mallows {name} must lie in [0,1], got {v}"));
                        }
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }
}

impl fmt::Display for CultureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Dataset entry as stored in experiment configs: `{model, params, count}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CultureEntry {
    #[serde(flatten)]
    pub spec: CultureSpec,
    pub count: usize,
}

/// RNG for election number `index` under a master seed.
pub fn election_rng(seed: Seed, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draws one election; identical inputs give identical output.
pub fn sample(spec: &CultureSpec, m: usize, n: usize, seed: Seed) -> Result<Election> {
    sample_with_rng(spec, m, n, &mut election_rng(seed, 0))
}

pub fn sample_with_rng<R: Rng + ?Sized>(spec: &CultureSpec, m: usize, n: usize, rng: &mut R) -> Result<Election> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter(format!("need m >= 1 and n >= 1, got m={m}, n={n}")));
    }
    spec.validate()?;
    match spec {
        CultureSpec::Ic => Ok(sample_ic(m, n, rng)),
        CultureSpec::Urn(p) => {
            let alpha = match p.alpha {
                Some(a) => a,
                None => Gamma::new(p.gamma_shape, p.gamma_scale)
                    .map_err(|e| Error::InvalidParameter(e.to_string()))?
                    .sample(rng),
            };
            Ok(sample_urn(m, n, alpha, rng))
        }
        CultureSpec::Mallows(p) => {
            let phi = match (p.phi, p.norm_phi) {
                (Some(phi), _) => phi,
                (None, Some(norm)) => mallows_phi_from_norm(m, norm),
                (None, None) => {
                    let norm: f64 = rng.random();
                    mallows_phi_from_norm(m, norm)
                }
            };
            Ok(sample_mallows(m, n, phi, rng))
        }
        CultureSpec::SpWalsh => Ok(sample_sp_walsh(m, n, rng)),
        CultureSpec::SpConitzer => Ok(sample_sp_conitzer(m, n, rng)),
        CultureSpec::Spoc => Ok(sample_spoc(m, n, rng)),
        CultureSpec::SingleCrossing => Ok(sample_single_crossing(m, n, rng)),
        CultureSpec::Euclidean { shape } => Ok(sample_euclidean(m, n, *shape, rng)),
        CultureSpec::GroupSeparable { tree } => Ok(sample_group_separable(m, n, *tree, rng)),
    }
}

/// Samples every entry in order; election `i` of the whole dataset uses stream `i`.
pub fn sample_dataset(entries: &[CultureEntry], m: usize, n: usize, seed: Seed) -> Result<Vec<(CultureSpec, Election)>> {
    let mut out = Vec::new();
    for entry in entries {
        for _ in 0..entry.count {
            let mut rng = election_rng(seed, out.len() as u64);
            out.push((entry.spec.clone(), sample_with_rng(&entry.spec, m, n, &mut rng)?));
        }
    }
    Ok(out)
}
