//! JSON run configuration.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use threeballs_core::field::families;
use threeballs_core::{
    BladeIndex, EigenSpec, ExpPolyField, ExpTerm, GridSpacing, Multivector, QuadOrders, RadiiTriple,
};

use crate::CliError;

/// Blade-keyed coefficients, e.g. `{"1": 2.0, "e12": -1.0}`.
pub type CoeffMap = BTreeMap<String, f64>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyTerm {
    pub coeff: f64,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTerm {
    /// `n + 1` exponents, `x_0` first.
    pub exponents: Vec<u32>,
    #[serde(default)]
    pub rate: f64,
    pub coeff: CoeffMap,
}

/// A field family and its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Family {
    Constant {
        coeff: CoeffMap,
    },
    /// `z_j = x_j - x_0 e_j`.
    Fueter {
        j: usize,
    },
    /// Symmetrised product of Fueter variables.
    FueterSym {
        indices: Vec<usize>,
    },
    /// CK extension of a scalar polynomial in `x_1..x_n`.
    Ck {
        terms: Vec<PolyTerm>,
    },
    /// `e^{λ x_0} c`.
    ExpConstant {
        #[serde(default)]
        coeff: Option<CoeffMap>,
    },
    /// `e^{λ x_0} (x_1 e_1 - x_2 e_2)`.
    ExpPlanar {},
    /// `e^{λ x_0} f` with `f` the underline extension of a polynomial in `x_2..x_n`.
    UnderlineExp {
        terms: Vec<PolyTerm>,
    },
    /// Explicit term list.
    Terms {
        terms: Vec<RawTerm>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Overrides the run-wide `n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Overrides the run-wide `lambda`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(flatten)]
    pub family: Family,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    #[serde(default)]
    pub spacing: GridSpacing,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Bound on `|Du - λu|` and the Laplacian identity.
    pub residual: f64,
    /// Accepted relative change between quadrature refinement levels.
    pub quadrature: f64,
    /// Bound on the relative `H'` identity residual.
    pub hprime: f64,
    /// Bound on the relative divergence identity residual.
    pub divergence: f64,
    /// Bound on the relative deviation of `N` from `2(α+1)k`.
    pub frequency: f64,
    /// Bound on the drift polynomial ODE residual.
    pub drift: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residual: 1e-10,
            quadrature: 1e-9,
            hprime: 1e-4,
            divergence: 1e-8,
            frequency: 1e-8,
            drift: 1e-12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub n: usize,
    #[serde(default)]
    pub lambda: f64,
    pub alpha: f64,
    pub fields: Vec<FieldSpec>,
    /// Radii triples for the three-balls checks.
    pub radii: Vec<[f64; 3]>,
    /// Triple with `r3 < 1` for the eigenfunction `L∞` bound.
    #[serde(default = "default_unit_radii")]
    pub unit_radii: [f64; 3],
    pub grid: GridSpec,
    #[serde(default = "default_orders")]
    pub orders: QuadOrders,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// Output directory; must exist.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    /// Run the per-field jobs sequentially. Results never depend on this.
    #[serde(default)]
    pub deterministic: bool,
    #[serde(default)]
    pub seed: u64,
    /// Random points in `B_1` for residual checks.
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Radii for the `h`/`H` comparisons.
    #[serde(default = "default_h_radii")]
    pub h_radii: Vec<f64>,
    /// Random centres for the mean-value inequality.
    #[serde(default = "default_centers")]
    pub mean_value_centers: usize,
    /// Radius of the mean-value balls; centres are drawn from `B_{1 - r}`.
    #[serde(default = "default_mean_value_radius")]
    pub mean_value_radius: f64,
    /// Radii at which the `H'` identity is tested.
    #[serde(default = "default_hprime_radii")]
    pub hprime_radii: Vec<f64>,
    #[serde(default = "default_hprime_step")]
    pub hprime_step: f64,
    #[serde(default = "default_moser_pairs")]
    pub moser_pairs: Vec<[f64; 2]>,
    #[serde(default = "default_sup_density")]
    pub sup_density: usize,
    /// Test hook: multiplies every three-balls constant (to force failures).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant_scale: Option<f64>,
}

fn default_orders() -> QuadOrders {
    QuadOrders {
        radial: 16,
        polar: 16,
        transverse: 8,
    }
}
fn default_unit_radii() -> [f64; 3] {
    [0.2, 0.3, 0.9]
}
fn default_samples() -> usize {
    100
}
fn default_h_radii() -> Vec<f64> {
    vec![0.5, 1.0]
}
fn default_centers() -> usize {
    20
}
fn default_mean_value_radius() -> f64 {
    0.4
}
fn default_hprime_radii() -> Vec<f64> {
    vec![0.5, 1.0]
}
fn default_hprime_step() -> f64 {
    1e-3
}
fn default_moser_pairs() -> Vec<[f64; 2]> {
    vec![[0.25, 0.5], [0.4, 0.8], [0.5, 0.9]]
}
fn default_sup_density() -> usize {
    61
}

/// A constructed field with its label and eigen-parameter.
#[derive(Clone, Debug)]
pub struct NamedField {
    pub name: String,
    pub spec: EigenSpec<f64>,
    pub field: ExpPolyField<f64>,
}

impl NamedField {
    pub fn n(&self) -> usize {
        self.field.n()
    }

    pub fn lambda(&self) -> f64 {
        self.spec.lambda
    }
}

fn parse_blade(key: &str, n: usize) -> Result<BladeIndex, CliError> {
    let bad = || CliError::Config(format!("invalid blade key {key:?} for n = {n}"));
    if key == "1" {
        return Ok(BladeIndex::SCALAR);
    }
    let rest = key.strip_prefix('e').ok_or_else(bad)?;
    let gens: Vec<usize> = if rest.contains('_') {
        rest.split('_')
            .map(|s| s.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    } else {
        rest.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
            .collect::<Result<_, _>>()?
    };
    if gens.is_empty() {
        return Err(bad());
    }
    BladeIndex::from_generators(&gens, n).map_err(|_| bad())
}

fn multivector(map: &CoeffMap, n: usize) -> Result<Multivector<f64>, CliError> {
    let terms = map
        .iter()
        .map(|(k, &v)| Ok((parse_blade(k, n)?, v)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Multivector::from_terms(n, terms)?)
}

fn poly(terms: &[PolyTerm]) -> Vec<(f64, Vec<u32>)> {
    terms
        .iter()
        .map(|t| (t.coeff, t.exponents.clone()))
        .collect()
}

impl Family {
    /// Short label used when no name is given.
    fn label(&self) -> String {
        match self {
            Family::Constant { .. } => "constant".into(),
            Family::Fueter { j } => format!("fueter{j}"),
            Family::FueterSym { indices } => {
                format!(
                    "fueter_sym{}",
                    indices.iter().map(|i| i.to_string()).collect::<String>()
                )
            }
            Family::Ck { .. } => "ck".into(),
            Family::ExpConstant { .. } => "exp_constant".into(),
            Family::ExpPlanar {} => "exp_planar".into(),
            Family::UnderlineExp { .. } => "underline_exp".into(),
            Family::Terms { .. } => "terms".into(),
        }
    }

    /// Only the exponential families use `λ` in their construction; the
    /// others are checked against whatever `λ` is configured.
    fn build(&self, n: usize, lambda: f64) -> Result<ExpPolyField<f64>, CliError> {
        let u = match self {
            Family::Constant { coeff } => families::constant(multivector(coeff, n)?),
            Family::Fueter { j } => families::fueter(n, *j)?,
            Family::FueterSym { indices } => families::fueter_symmetric(n, indices)?,
            Family::Ck { terms } => families::ck(n, &poly(terms))?,
            Family::ExpConstant { coeff } => {
                let c = match coeff {
                    Some(m) => multivector(m, n)?,
                    None => Multivector::one(n),
                };
                families::exp_constant(lambda, c)?
            }
            Family::ExpPlanar {} => families::exp_planar(n, lambda)?,
            Family::UnderlineExp { terms } => families::underline_exp(n, lambda, &poly(terms))?,
            Family::Terms { terms } => {
                let terms = terms
                    .iter()
                    .map(|t| {
                        Ok(ExpTerm {
                            exponents: t.exponents.clone(),
                            rate: t.rate,
                            coeff: multivector(&t.coeff, n)?,
                        })
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                ExpPolyField::from_terms(n, terms)?
            }
        };
        Ok(u)
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        let cfg: RunConfig = serde_json::from_str(&text).map_err(|e| {
            CliError::Config(format!("cannot parse config {}: {e}", path.display()))
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if !(self.alpha >= 2.0) || !self.alpha.is_finite() {
            return bad(format!("alpha must be at least 2, got {}", self.alpha));
        }
        if !self.lambda.is_finite() {
            return bad("lambda must be finite".into());
        }
        if self.fields.is_empty() {
            return bad("no fields configured".into());
        }
        for r in &self.radii {
            RadiiTriple::new(r[0], r[1], r[2])?;
        }
        RadiiTriple::new(self.unit_radii[0], self.unit_radii[1], self.unit_radii[2])?
            .require_unit()?;
        threeballs_core::frequency::radius_grid(
            self.grid.min,
            self.grid.max,
            self.grid.count,
            self.grid.spacing,
        )?;
        if self.orders.radial < 2 || self.orders.polar < 2 || self.orders.transverse < 1 {
            return bad(format!("quadrature orders too small: {:?}", self.orders));
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("residual", t.residual),
            ("quadrature", t.quadrature),
            ("hprime", t.hprime),
            ("divergence", t.divergence),
            ("frequency", t.frequency),
            ("drift", t.drift),
        ] {
            if !(v > 0.0) {
                return bad(format!("tolerance {name} must be positive"));
            }
        }
        if self.samples == 0 {
            return bad("samples must be positive".into());
        }
        if !(self.mean_value_radius > 0.0 && self.mean_value_radius < 1.0) {
            return bad("mean_value_radius must lie in (0, 1)".into());
        }
        if !(self.hprime_step > 0.0)
            || self
                .hprime_radii
                .iter()
                .any(|&r| !(r > 2.0 * self.hprime_step))
        {
            return bad("hprime radii must exceed twice the step".into());
        }
        if self.h_radii.iter().any(|&r| !(r > 0.0)) {
            return bad("h_radii must be positive".into());
        }
        for p in &self.moser_pairs {
            if !(p[0] > 0.0 && p[0] < p[1] && p[1] < 1.0) {
                return bad(format!("Moser pairs need 0 < r < R < 1, got {p:?}"));
            }
        }
        if self.sup_density < 3 {
            return bad("sup_density must be at least 3".into());
        }
        if let Some(s) = self.constant_scale {
            if !(s > 0.0) {
                return bad("constant_scale must be positive".into());
            }
        }
        let mut names = BTreeSet::new();
        for f in self.fields()? {
            if !names.insert(f.name.clone()) {
                return bad(format!("duplicate field name {:?}", f.name));
            }
        }
        Ok(())
    }

    /// Builds every configured field.
    pub fn fields(&self) -> Result<Vec<NamedField>, CliError> {
        self.fields
            .iter()
            .map(|spec| {
                let n = spec.n.unwrap_or(self.n);
                let lambda = spec.lambda.unwrap_or(self.lambda);
                let field = spec.family.build(n, lambda)?;
                let name = spec
                    .name
                    .clone()
                    .unwrap_or_else(|| format!("{}_n{n}_l{lambda}", spec.family.label()));
                Ok(NamedField {
                    name,
                    spec: EigenSpec::new(lambda)?,
                    field,
                })
            })
            .collect()
    }

    pub fn triples(&self) -> Vec<RadiiTriple<f64>> {
        self.radii
            .iter()
            .map(|r| RadiiTriple {
                r1: r[0],
                r2: r[1],
                r3: r[2],
            })
            .collect()
    }

    pub fn unit_triple(&self) -> RadiiTriple<f64> {
        let r = self.unit_radii;
        RadiiTriple {
            r1: r[0],
            r2: r[1],
            r3: r[2],
        }
    }

    /// The desk-scale suite: monogenic polynomials and exponential
    /// eigenfields in `n ∈ {2, 3}`.
    pub fn desk() -> Self {
        let mut fields = Vec::new();
        let pt = |coeff: f64, exponents: &[u32]| PolyTerm {
            coeff,
            exponents: exponents.to_vec(),
        };
        for n in [2usize, 3] {
            let f = |family: Family, lambda: f64| FieldSpec {
                name: None,
                n: Some(n),
                lambda: Some(lambda),
                family,
            };
            let pad = |e: &[u32]| {
                let mut v = e.to_vec();
                v.resize(n, 0);
                v
            };
            let z = |e: &[u32]| pad(e);
            fields.push(f(
                Family::Constant {
                    coeff: CoeffMap::from([("1".into(), 1.0)]),
                },
                0.0,
            ));
            fields.push(f(Family::Fueter { j: 1 }, 0.0));
            fields.push(f(Family::Fueter { j: 2 }, 0.0));
            fields.push(f(
                Family::FueterSym {
                    indices: vec![1, 2],
                },
                0.0,
            ));
            fields.push(f(
                Family::FueterSym {
                    indices: vec![1, 1, 2],
                },
                0.0,
            ));
            let mut ck2 = f(
                Family::Ck {
                    terms: vec![pt(1.0, &z(&[2])), pt(-0.5, &z(&[0, 1]))],
                },
                0.0,
            );
            ck2.name = Some(format!("ck2_n{n}"));
            fields.push(ck2);
            let mut ck3 = f(
                Family::Ck {
                    terms: vec![pt(1.0, &z(&[1, 2])), pt(0.3, &z(&[0, 0]))],
                },
                0.0,
            );
            ck3.name = Some(format!("ck3_n{n}"));
            fields.push(ck3);
            let mut ck4 = f(
                Family::Ck {
                    terms: vec![pt(1.0, &z(&[4])), pt(-2.0, &z(&[1, 3]))],
                },
                0.0,
            );
            ck4.name = Some(format!("ck4_n{n}"));
            fields.push(ck4);
            for lambda in [-1.0, 1.0, 2.0] {
                fields.push(f(Family::ExpConstant { coeff: None }, lambda));
                fields.push(f(Family::ExpPlanar {}, lambda));
                let g = if n == 2 {
                    vec![pt(1.0, &[2])]
                } else {
                    vec![pt(1.0, &[1, 1]), pt(0.5, &[2, 0])]
                };
                fields.push(f(Family::UnderlineExp { terms: g }, lambda));
            }
        }
        RunConfig {
            n: 3,
            lambda: 0.0,
            alpha: 2.0,
            fields,
            radii: vec![[0.5, 0.9, 2.0], [0.3, 0.7, 1.5]],
            unit_radii: default_unit_radii(),
            grid: GridSpec {
                min: 0.1,
                max: 2.0,
                count: 50,
                spacing: GridSpacing::Log,
            },
            orders: default_orders(),
            tolerances: Tolerances::default(),
            out: None,
            deterministic: false,
            seed: 20240611,
            samples: default_samples(),
            h_radii: default_h_radii(),
            mean_value_centers: default_centers(),
            mean_value_radius: default_mean_value_radius(),
            hprime_radii: default_hprime_radii(),
            hprime_step: default_hprime_step(),
            moser_pairs: default_moser_pairs(),
            sup_density: default_sup_density(),
            constant_scale: None,
        }
    }
}
