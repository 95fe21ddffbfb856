//! Deterministic synthetic inputs: Hölder path generators and named germs.
//!
//! Every generator is pure and seeded, so fixtures are reproducible byte for
//! byte across platforms: the only randomness source is a splitmix-style
//! 64-bit mixer with fixed published constants, keyed by `(seed, level,
//! index)` so that refining the grid extends a path instead of resampling it.

use crate::dyadic_grid::{norm_c1_holder, DyadicGrid, Grid1Fn, Grid2Fn, PairFn};
use crate::error::{Error, Result};

/// Increment of the splitmix64 state walk.
const SPLITMIX_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
/// Finalization multipliers of the splitmix64 output mix.
const SPLITMIX_MIX1: u64 = 0xBF58_476D_1CE4_E5B9;
const SPLITMIX_MIX2: u64 = 0x94D0_49BB_1331_11EB;
/// Stream separation keys for the (level, index) coordinates.
const LEVEL_KEY: u64 = 0xA076_1D64_78BD_642F;
const INDEX_KEY: u64 = 0xE703_7ED1_A0B4_28DB;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(SPLITMIX_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(SPLITMIX_MIX1);
    z = (z ^ (z >> 27)).wrapping_mul(SPLITMIX_MIX2);
    z ^ (z >> 31)
}

/// Displacement in `[-1, 1)` for the dyadic node `(level, index)`; pure
/// integer arithmetic plus one exact float scaling, hence portable.
fn displacement(seed: u64, level: u32, index: u64) -> f64 {
    let mut state = seed
        ^ (level as u64).wrapping_mul(LEVEL_KEY)
        ^ index.wrapping_mul(INDEX_KEY);
    let _ = splitmix64(&mut state);
    let bits = splitmix64(&mut state);
    ((bits >> 11) as f64) * (2.0 / 9_007_199_254_740_992.0) - 1.0
}

/// A synthetic path shape on a dyadic grid; all start at 0.
#[derive(Debug, Clone)]
pub enum PathSpec {
    /// `t^alpha`, `alpha` in `(0, 1]`.
    Power { alpha: f64 },
    /// `sum_n a^n cos(b^n pi t)`, re-based at 0; Hölder exponent
    /// `ln(1/a) / ln b`, which requires `a b > 1`.
    Weierstrass { a: f64, b: f64 },
    /// Midpoint displacement with per-level amplitude `2^(-alpha n)` and
    /// seeded, refinement-stable node noise.
    MidpointDisplacement { alpha: f64, seed: u64 },
    /// Polynomial `sum_i coeffs[i] t^i`, re-based at 0.
    SmoothPoly { coeffs: Vec<f64> },
}

impl PathSpec {
    /// The Hölder exponent the generator is declared to produce, if any.
    pub fn declared_exponent(&self) -> Option<f64> {
        match self {
            PathSpec::Power { alpha } => Some(*alpha),
            PathSpec::Weierstrass { a, b } => Some((1.0 / a).ln() / b.ln()),
            PathSpec::MidpointDisplacement { alpha, .. } => Some(*alpha),
            PathSpec::SmoothPoly { .. } => None,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            PathSpec::Power { alpha } => {
                if !(*alpha > 0.0 && *alpha <= 1.0) {
                    return Err(Error::invalid(format!(
                        "power path exponent must lie in (0, 1], got {alpha}"
                    )));
                }
            }
            PathSpec::Weierstrass { a, b } => {
                if !(*a > 0.0 && *a < 1.0 && *b > 1.0) {
                    return Err(Error::invalid(format!(
                        "Weierstrass parameters need 0 < a < 1 < b, got a = {a}, b = {b}"
                    )));
                }
                if a * b <= 1.0 {
                    return Err(Error::invalid(format!(
                        "Weierstrass a*b = {} <= 1: the declared Hölder exponent \
                         would not be in (0, 1)",
                        a * b
                    )));
                }
            }
            PathSpec::MidpointDisplacement { alpha, .. } => {
                if !(*alpha > 0.0 && *alpha < 1.0) {
                    return Err(Error::invalid(format!(
                        "midpoint displacement exponent must lie in (0, 1), got {alpha}"
                    )));
                }
            }
            PathSpec::SmoothPoly { coeffs } => {
                if coeffs.iter().any(|c| !c.is_finite()) {
                    return Err(Error::invalid("polynomial coefficients must be finite"));
                }
            }
        }
        Ok(())
    }
}

/// Generates the path on the grid; deterministic given the spec (including
/// its seed), with value 0 at `t = 0`.  When the spec declares a Hölder
/// exponent the generated samples are certified to have a finite grid norm
/// at that exponent.
pub fn generate_path(spec: &PathSpec, grid: &DyadicGrid) -> Result<Grid1Fn> {
    spec.validate()?;
    let f = match spec {
        PathSpec::Power { alpha } => Grid1Fn::from_fn(grid.clone(), |t| t.powf(*alpha))?,
        PathSpec::Weierstrass { a, b } => {
            // Truncate once a^n falls below f64 resolution.
            let terms = (16.0 * std::f64::consts::LN_10 / (1.0 / a).ln()).ceil() as usize;
            let base = |t: f64| {
                let mut acc = 0.0;
                let mut amp = 1.0;
                let mut freq = std::f64::consts::PI;
                for _ in 0..=terms {
                    acc += amp * (freq * t).cos();
                    amp *= a;
                    freq *= b;
                }
                acc
            };
            let w0 = base(0.0);
            Grid1Fn::from_fn(grid.clone(), |t| base(t) - w0)?
        }
        PathSpec::MidpointDisplacement { alpha, seed } => {
            let m = grid.level();
            let mut values = vec![0.0; grid.len()];
            values[grid.len() - 1] = displacement(*seed, 0, 1);
            for n in 1..=m {
                let step = 1usize << (m - n);
                let amp = (-(n as f64) * alpha).exp2();
                let mut k = 1usize;
                while k < (1usize << n) {
                    let idx = k * step;
                    values[idx] = 0.5 * (values[idx - step] + values[idx + step])
                        + amp * displacement(*seed, n, k as u64);
                    k += 2;
                }
            }
            Grid1Fn::new(grid.clone(), values)?
        }
        PathSpec::SmoothPoly { coeffs } => {
            let eval = |t: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c);
            let p0 = eval(0.0);
            Grid1Fn::from_fn(grid.clone(), |t| eval(t) - p0)?
        }
    };
    if let Some(exp) = spec.declared_exponent() {
        let norm = norm_c1_holder(&f, exp);
        if !norm.is_finite() {
            return Err(Error::invalid(format!(
                "generated path failed its Hölder certificate at exponent {exp}"
            )));
        }
    }
    Ok(f)
}

/// A two-parameter germ shape.
#[derive(Debug, Clone)]
pub enum GermSpec {
    /// `A = delta1(g)`: zero coherence by construction.
    Coboundary(Grid1Fn),
    /// `A(s,t) = y(s) (x(t) - x(s))`, the Young product germ.
    YoungProduct { x: Grid1Fn, y: Grid1Fn },
    /// `A(s,t) = |t-s| ln|t-s|`, zero on the diagonal (the limit value).
    LogGerm,
    /// `A(s,t) = |t-s|^exponent`.
    PowerGerm { exponent: f64 },
    /// A germ given directly by its table.
    Custom(Grid2Fn),
}

/// Lazy [`PairFn`] evaluation of a germ on a grid; analytic kinds never
/// materialize their table.
#[derive(Debug)]
pub struct GermView<'a> {
    grid: DyadicGrid,
    spec: &'a GermSpec,
}

/// Builds the lazy view, checking grid compatibility for path-backed kinds.
pub fn germ_view<'a>(spec: &'a GermSpec, grid: &DyadicGrid) -> Result<GermView<'a>> {
    match spec {
        GermSpec::Coboundary(g) => {
            crate::dyadic_grid::require_same_grid(g.grid(), grid)?;
        }
        GermSpec::YoungProduct { x, y } => {
            crate::dyadic_grid::require_same_grid(x.grid(), grid)?;
            crate::dyadic_grid::require_same_grid(y.grid(), grid)?;
        }
        GermSpec::Custom(a) => {
            crate::dyadic_grid::require_same_grid(a.grid(), grid)?;
        }
        GermSpec::PowerGerm { exponent } => {
            if !(*exponent > 0.0 && exponent.is_finite()) {
                return Err(Error::invalid(format!(
                    "power germ exponent must be positive, got {exponent}"
                )));
            }
        }
        GermSpec::LogGerm => {}
    }
    Ok(GermView {
        grid: grid.clone(),
        spec,
    })
}

impl PairFn for GermView<'_> {
    fn grid(&self) -> &DyadicGrid {
        &self.grid
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        match self.spec {
            GermSpec::Coboundary(g) => g.value(j) - g.value(i),
            GermSpec::YoungProduct { x, y } => y.value(i) * (x.value(j) - x.value(i)),
            GermSpec::LogGerm => {
                if i == j {
                    0.0
                } else {
                    let h = self.grid.gap(i, j);
                    h * h.ln()
                }
            }
            GermSpec::PowerGerm { exponent } => {
                if i == j {
                    0.0
                } else {
                    self.grid.gap(i, j).powf(*exponent)
                }
            }
            GermSpec::Custom(a) => a.at(i, j),
        }
    }
}

/// Materializes the germ on the grid.
pub fn generate_germ(spec: &GermSpec, grid: &DyadicGrid) -> Result<Grid2Fn> {
    Grid2Fn::materialize(&germ_view(spec, grid)?)
}
