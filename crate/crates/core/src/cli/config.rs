//! Scenario configuration: one TOML file per scenario.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::fieldexpr::{Coord, FieldExpr};
use crate::fields::Potential5D;
use crate::grid::Grid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Clifford,
    Galilean,
    Pauli,
    Dirac,
    Susy,
    Consistency,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Clifford, Suite::Galilean, Suite::Pauli, Suite::Dirac, Suite::Susy, Suite::Consistency];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Clifford => "clifford",
            Suite::Galilean => "galilean",
            Suite::Pauli => "pauli",
            Suite::Dirac => "dirac",
            Suite::Susy => "susy",
            Suite::Consistency => "consistency",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Suite::Clifford => "gamma-matrix representations, fermion variables, composite spin",
            Suite::Galilean => "light-cone metric invariance under random Galilean boosts",
            Suite::Pauli => "Lorentz/Galilean Pauli Hamiltonians and their spectrum",
            Suite::Dirac => "Dirac vs Pauli gap across masses",
            Suite::Susy => "supercharge algebra and double variations",
            Suite::Consistency => "extra electric field corrections vs Lorentz corrections",
        }
    }
}

/// `all` or a single suite name.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    Suite::ALL.into_iter().find(|x| x.name() == s).map(|x| vec![x]).ok_or_else(|| {
        Error::InvalidArgument(format!("unknown suite '{s}' (expected all or one of {})", suite_names()))
    })
}

fn suite_names() -> String {
    Suite::ALL.map(Suite::name).join(", ")
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    pub scenario: String,
    pub suite: String,
    pub seed: u64,
    pub out: PathBuf,
    pub grid: GridConfig,
    pub potential: PotentialConfig,
    pub constants: Constants,
    pub tolerances: Tolerances,
    pub galilean: GalileanConfig,
    pub pauli: PauliConfig,
    pub dirac: DiracConfig,
    pub consistency: ConsistencyConfig,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            scenario: "default".into(),
            suite: "all".into(),
            seed: 0,
            out: PathBuf::from("xdlab-out"),
            grid: GridConfig::default(),
            potential: PotentialConfig::default(),
            constants: Constants::default(),
            tolerances: Tolerances::default(),
            galilean: GalileanConfig::default(),
            pauli: PauliConfig::default(),
            dirac: DiracConfig::default(),
            consistency: ConsistencyConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub d: usize,
    pub n: usize,
    pub length: f64,
    /// Axis names; defaults to the first `d` of x, y, z.
    pub axes: Option<Vec<String>>,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { d: 1, n: 16, length: 10.0, axes: None }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PotentialConfig {
    pub a0: String,
    pub a1: String,
    pub a2: String,
    pub a3: String,
    pub a4: String,
}

impl Default for PotentialConfig {
    fn default() -> Self {
        let z = || "0".to_string();
        Self { a0: z(), a1: z(), a2: z(), a3: z(), a4: z() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Constants {
    pub e: f64,
    pub m: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Self { e: 1.0, m: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub clifford: f64,
    pub galilean: f64,
    pub negative_control: f64,
    pub hermiticity: f64,
    pub sector: f64,
    pub levels: f64,
    pub landau: f64,
    pub slope: f64,
    pub susy: f64,
    pub variation: f64,
    pub consistency: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            clifford: 1e-13,
            galilean: 1e-10,
            negative_control: 1e-3,
            hermiticity: 1e-10,
            sector: 1e-12,
            levels: 2e-3,
            landau: 0.05,
            slope: 0.3,
            susy: 1e-12,
            variation: 1e-12,
            consistency: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GalileanConfig {
    pub boosts: usize,
    pub pairs: usize,
}

impl Default for GalileanConfig {
    fn default() -> Self {
        Self { boosts: 50, pairs: 100 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinBlock {
    Full,
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StencilName {
    Compact,
    Composed,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PauliConfig {
    /// Usual-space dimension of the theory; may exceed the grid dimension.
    pub d: usize,
    pub stencil: StencilName,
    pub block: SpinBlock,
    pub expected_lowest: Vec<f64>,
    pub landau_spacing: Option<f64>,
    pub cluster_size: usize,
}

impl Default for PauliConfig {
    fn default() -> Self {
        Self {
            d: 3,
            stencil: StencilName::Compact,
            block: SpinBlock::Full,
            expected_lowest: Vec::new(),
            landau_spacing: None,
            cluster_size: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DiracConfig {
    pub masses: Vec<f64>,
}

impl Default for DiracConfig {
    fn default() -> Self {
        Self { masses: vec![2.0, 4.0, 8.0, 16.0] }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConsistencyConfig {
    pub omegas: Vec<String>,
    pub dims: Vec<usize>,
}

impl Default for ConsistencyConfig {
    fn default() -> Self {
        Self { omegas: ["0.3*z", "0.3*x", "sin(x)", "x^2", "1.5"].map(String::from).to_vec(), dims: vec![1, 2, 3] }
    }
}

/// Parsed and validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub suites: Vec<Suite>,
    pub grid: Grid,
    pub potential: Potential5D,
    pub omegas: Vec<(String, FieldExpr)>,
}

fn config_error(path: &Path, message: impl Into<String>) -> Error {
    Error::Config { path: path.to_path_buf(), message: message.into() }
}

impl FromStr for ScenarioConfig {
    type Err = toml::de::Error;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        toml::from_str(s)
    }
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| config_error(path, e.to_string()))?;
        text.parse().map_err(|e: toml::de::Error| config_error(path, e.to_string().trim_end().to_string()))
    }

    /// Checks every field and builds the derived objects. `path` only labels errors.
    pub fn validate(self, path: &Path) -> Result<Scenario> {
        let err = |m: String| config_error(path, m);
        let suites = parse_suites(&self.suite).map_err(|e| err(e.to_string()))?;
        let g = &self.grid;
        let axes: Vec<Coord> = match &g.axes {
            Some(names) => names
                .iter()
                .map(|s| Coord::from_name(s).ok_or_else(|| err(format!("grid.axes: unknown axis '{s}'"))))
                .collect::<Result<_>>()?,
            None => Coord::SPATIAL.iter().copied().take(g.d).collect(),
        };
        if axes.len() != g.d {
            return Err(err(format!("grid.axes has {} entries but grid.d = {}", axes.len(), g.d)));
        }
        let grid = Grid::new(&axes, g.n, g.length).map_err(|e| err(format!("grid: {e}")))?;
        let c = self.constants;
        if !(c.m > 0.0 && c.m.is_finite()) || !c.e.is_finite() {
            return Err(err(format!("constants: need finite e and m > 0, got e = {}, m = {}", c.e, c.m)));
        }
        let p = &self.potential;
        let mut comps = Vec::with_capacity(5);
        for (name, src) in [("a0", &p.a0), ("a1", &p.a1), ("a2", &p.a2), ("a3", &p.a3), ("a4", &p.a4)] {
            comps.push(FieldExpr::parse(src).map_err(|e| err(format!("potential.{name}: {e}")))?);
        }
        let comps: [FieldExpr; 5] = comps.try_into().expect("five components");
        let is_static = !comps.iter().any(|f| f.depends_on(Coord::T));
        let w_independent = !comps.iter().any(|f| f.depends_on(Coord::W));
        let potential = Potential5D::new(comps, c.e, c.m)
            .and_then(|p| p.with_flags(is_static, w_independent, g.length))
            .map_err(|e| err(format!("potential: {e}")))?;
        let mut omegas = Vec::new();
        for src in &self.consistency.omegas {
            let f = FieldExpr::parse(src).map_err(|e| err(format!("consistency.omegas: '{src}': {e}")))?;
            omegas.push((src.clone(), f));
        }
        if let Some(d) = self.consistency.dims.iter().find(|d| !(1..=3).contains(*d)) {
            return Err(err(format!("consistency.dims: {d} is not 1, 2 or 3")));
        }
        if !(1..=3).contains(&self.pauli.d) || self.pauli.d < grid.d() {
            return Err(err(format!("pauli.d = {} must be in 1..=3 and at least grid.d", self.pauli.d)));
        }
        if self.galilean.boosts == 0 || self.galilean.pairs == 0 {
            return Err(err("galilean: boosts and pairs must be positive".into()));
        }
        Ok(Scenario { config: self, suites, grid, potential, omegas })
    }
}

pub const CONFIG_TEMPLATE: &str = r#"# xdlab scenario
scenario = "default"
suite = "all"          # all | clifford | galilean | pauli | dirac | susy | consistency
seed = 0
out = "xdlab-out"

[grid]
d = 1
n = 16
length = 10.0
# axes = ["z"]         # defaults to the first d of x, y, z

[potential]            # A0..A3 and the extra component A4 = Lambda
a0 = "0"
a1 = "0"
a2 = "0"
a3 = "0"
a4 = "0"

[constants]
e = 1.0
m = 1.0

[tolerances]
clifford = 1e-13
galilean = 1e-10
negative_control = 1e-3
hermiticity = 1e-10
sector = 1e-12
levels = 2e-3
landau = 0.05
slope = 0.3
susy = 1e-12
variation = 1e-12
consistency = 1e-12

[galilean]
boosts = 50
pairs = 100

[pauli]
d = 3                  # usual-space dimension of the theory
stencil = "compact"    # compact | composed
block = "full"         # full | up | down
expected_lowest = []
# landau_spacing = 1.0
cluster_size = 16

[dirac]
masses = [2.0, 4.0, 8.0, 16.0]

[consistency]
omegas = ["0.3*z", "0.3*x", "sin(x)", "x^2", "1.5"]
dims = [1, 2, 3]
"#;
