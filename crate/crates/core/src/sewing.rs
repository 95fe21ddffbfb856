//! Sewing maps on dyadic grids.
//!
//! Given a two-parameter germ `A` with small coherence `delta2(A)`, a sewing
//! map produces a remainder `R = lambda(delta2(A))` with `delta2(R) =
//! delta2(A)` and an integral `I` with `I(0) = 0` and `delta1(I) = A - R`.
//!
//! Two constructions are provided:
//!
//! * [`sew_high`] — coherence exponent above 1: `I` is the limit of
//!   Riemann-type sums over refining partitions, and the remainder is the
//!   unique one with finite `C2` norm at that exponent.
//! * [`sew_low`] — exponent in `(0, 1]`: `I` is built level by level on the
//!   dyadic grid through the midpoint-defect recursion
//!   `u(2k+1, n+1) = u(k, n)/2 + delta2(A)` at the midpoint triple, with
//!   `u(2k, n+1) = u(k, n)/2` and `u(0, 0) = 0`.  The answer is not unique
//!   but is linear in `A` and continuous with explicit constants
//!   ([`constant_c`]).
//!
//! Both remainders are extended to unordered pairs through
//! `R(s,t) = -delta2(A)(s,t,s) - R(t,s)` for `s > t`, which keeps
//! `delta2(R) = delta2(A)` valid on all grid triples whenever `A` vanishes
//! on the diagonal.
//!
//! Sign convention: the remainder returned everywhere is `R = A - delta1(I)`,
//! so `delta2(R) = delta2(A)` with a plus sign.  On the dyadic interval with
//! index `k` at level `n` this equals minus the recursion value `u(k, n)`,
//! and the stored table is used verbatim there.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::dyadic_grid::{
    delta2, norm_c2, norm_c3, DyadicGrid, Grid1Fn, Grid2Fn, PairFn, TripleScan,
};
use crate::error::{Error, Result};

/// Series terms allowed before the control envelope is declared divergent.
const MAX_ENVELOPE_TERMS: usize = 10_000;

/// Relative tail target for truncated envelope series.
const ENVELOPE_REL_TOL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Control functions
// ---------------------------------------------------------------------------

/// The modulus shape of a [`ControlFn`].
#[derive(Debug, Clone)]
pub enum ControlKind {
    /// `V(u) = u^exponent`.
    PowerLaw { exponent: f64 },
    /// `V` tabulated on dyadic gaps: `gap_values[j] = V(T 2^-j)`.  Gaps finer
    /// than the table are treated as zero modulus; arbitrary arguments take
    /// the value of the enclosing dyadic gap.
    Tabulated { gap_values: Vec<f64> },
}

/// A modulus `V` with the summability data (`k0`, horizon) that makes the
/// dyadic error envelope [`ControlFn::vbar`] finite.
#[derive(Debug, Clone)]
pub struct ControlFn {
    kind: ControlKind,
    k0: u32,
    horizon: f64,
}

impl ControlFn {
    /// Power-law modulus.  Requires `k0 > 1/exponent` and `k0 >= 2`; the
    /// envelope series diverges otherwise.
    pub fn power_law(exponent: f64, k0: u32, horizon: f64) -> Result<Self> {
        if !(exponent > 0.0 && exponent.is_finite()) {
            return Err(Error::invalid(format!(
                "power-law exponent must be positive, got {exponent}"
            )));
        }
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::invalid(format!("bad horizon {horizon}")));
        }
        if (k0 as f64) * exponent <= 1.0 || k0 < 2 {
            return Err(Error::NonConvergent {
                k0,
                gamma: exponent,
            });
        }
        Ok(ControlFn {
            kind: ControlKind::PowerLaw { exponent },
            k0,
            horizon,
        })
    }

    /// Tabulated modulus; `gap_values[j] = V(T 2^-j)` must be nonnegative and
    /// non-increasing in `j` (so that `V` is increasing), with `k0 >= 2`.
    pub fn tabulated(gap_values: Vec<f64>, k0: u32, horizon: f64) -> Result<Self> {
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::invalid(format!("bad horizon {horizon}")));
        }
        if k0 < 2 {
            return Err(Error::invalid(
                "tabulated control requires k0 >= 2 for the envelope to converge",
            ));
        }
        if gap_values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::invalid("tabulated modulus values must be finite and >= 0"));
        }
        if gap_values.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::invalid(
                "tabulated modulus must be non-increasing along finer gaps (V increasing)",
            ));
        }
        Ok(ControlFn {
            kind: ControlKind::Tabulated { gap_values },
            k0,
            horizon,
        })
    }

    /// Default summability index for a given exponent: `floor(1/gamma) + 1`,
    /// raised to 2 when the exponent exceeds 1.
    pub fn default_k0(gamma: f64) -> u32 {
        (((1.0 / gamma).floor() as u32) + 1).max(2)
    }

    pub fn k0(&self) -> u32 {
        self.k0
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// `V(T 2^-j)`.
    fn v_at_gap(&self, j: u64) -> f64 {
        match &self.kind {
            ControlKind::PowerLaw { exponent } => {
                self.horizon.powf(*exponent) * (-(j as f64) * exponent).exp2()
            }
            ControlKind::Tabulated { gap_values } => {
                gap_values.get(j as usize).copied().unwrap_or(0.0)
            }
        }
    }

    /// `V(u)` for `u` in `[0, T]`.
    pub fn eval(&self, u: f64) -> Result<f64> {
        if u == 0.0 {
            return Ok(0.0);
        }
        if !(u > 0.0 && u <= self.horizon) {
            return Err(Error::invalid(format!(
                "modulus argument {u} outside [0, {}]",
                self.horizon
            )));
        }
        match &self.kind {
            ControlKind::PowerLaw { exponent } => Ok(u.powf(*exponent)),
            ControlKind::Tabulated { .. } => Ok(self.v_at_gap(enclosing_gap(self.horizon, u))),
        }
    }

    /// The summed error envelope at the dyadic gap `T 2^-r`:
    ///
    /// `(k0+1) * sum_m 2^(m+1) V(T 2^-(r + m k0))
    ///  + sum_m sum_{k=0..k0} sum_{l=1..r+m k0+k} 2^(m+1-r-m k0-k+l) V(T 2^-(l-1))`.
    ///
    /// Power-law moduli are summed in closed form; tabulated ones are
    /// truncated once the measured geometric tail drops below `1e-12` of the
    /// partial sum.
    pub fn vbar(&self, r: u32) -> Result<f64> {
        match &self.kind {
            ControlKind::PowerLaw { exponent } => Ok(self.vbar_power_closed(r, *exponent)),
            ControlKind::Tabulated { .. } => self.vbar_series(r, MAX_ENVELOPE_TERMS),
        }
    }

    /// The envelope extended to arbitrary arguments by the dyadic step rule:
    /// value at `u` is the value at `T 2^-r` where `T 2^-(r+1) < u <= T 2^-r`,
    /// and 0 at `u = 0`.
    pub fn vbar_at(&self, u: f64) -> Result<f64> {
        if u == 0.0 {
            return Ok(0.0);
        }
        if !(u > 0.0 && u <= self.horizon) {
            return Err(Error::invalid(format!(
                "envelope argument {u} outside [0, {}]",
                self.horizon
            )));
        }
        self.vbar(enclosing_gap(self.horizon, u) as u32)
    }

    /// Direct partial sum of the envelope series over `terms` values of the
    /// outer index; exposed so closed forms can be cross-checked.
    pub fn vbar_partial_sum(&self, r: u32, terms: usize) -> f64 {
        self.vbar_series(r, terms).unwrap_or(f64::INFINITY)
    }

    fn vbar_series(&self, r: u32, max_terms: usize) -> Result<f64> {
        let k0 = self.k0 as u64;
        let r = r as u64;
        // Incremental inner sum S(L) = sum_{l=1..L} 2^l V(T 2^-(l-1)).
        let mut s_cache: Vec<f64> = vec![0.0];
        let grow_s = |target: u64, cache: &mut Vec<f64>| -> f64 {
            while (cache.len() as u64) <= target {
                let l = cache.len() as u64;
                let inc = (l as f64).exp2() * self.v_at_gap(l - 1);
                let prev = *cache.last().unwrap();
                cache.push(prev + inc);
            }
            cache[target as usize]
        };
        let mut sum = 0.0;
        let mut prev_term = f64::INFINITY;
        for m in 0..max_terms {
            let m = m as u64;
            let mut term =
                (k0 as f64 + 1.0) * ((m + 1) as f64).exp2() * self.v_at_gap(r + m * k0);
            for k in 0..=k0 {
                let l_max = r + m * k0 + k;
                let weight =
                    (m as f64 + 1.0 - r as f64 - (m * k0) as f64 - k as f64).exp2();
                term += weight * grow_s(l_max, &mut s_cache);
            }
            sum += term;
            if !sum.is_finite() {
                return Err(Error::invalid("control envelope overflowed"));
            }
            if term == 0.0 {
                return Ok(sum);
            }
            if m >= 1 && term <= prev_term {
                let rho = term / prev_term;
                if rho < 1.0 {
                    let tail = term * rho / (1.0 - rho);
                    if tail < ENVELOPE_REL_TOL * sum {
                        return Ok(sum);
                    }
                }
            }
            prev_term = term;
        }
        Err(Error::invalid(format!(
            "control envelope did not stabilize within {max_terms} terms"
        )))
    }

    /// Closed-form envelope for `V(u) = u^g` via geometric summation.
    fn vbar_power_closed(&self, r: u32, g: f64) -> f64 {
        let t = self.horizon;
        let k0 = self.k0 as f64;
        let r = r as f64;
        let q_outer = (1.0 - g * k0).exp2(); // ratio of the first sum, < 1
        let term1 = 2.0 * (k0 + 1.0) * t.powf(g) * (-g * r).exp2() / (1.0 - q_outer);

        let term2 = if g == 1.0 {
            // S(L) = 2 T L
            let q = (1.0 - k0).exp2();
            let g0 = 1.0 / (1.0 - q);
            let g1 = q / ((1.0 - q) * (1.0 - q));
            let k0_terms = geometric_finite(0.5, self.k0 as usize + 1);
            let k1_terms = weighted_geometric_finite(0.5, self.k0 as usize);
            (2.0 - r).exp2() * t * (r * g0 * k0_terms + k0 * g1 * k0_terms + g0 * k1_terms)
        } else {
            // S(L) = P (x^L - 1), x = 2^(1-g), P = T^g 2^g x / (x - 1)
            let x = (1.0 - g).exp2();
            let p = t.powf(g) * g.exp2() * x / (x - 1.0);
            let geo_k_x = geometric_finite((-g).exp2(), self.k0 as usize + 1);
            let geo_k_half = geometric_finite(0.5, self.k0 as usize + 1);
            let q_inner = (1.0 - k0).exp2();
            (1.0 - r).exp2()
                * p
                * (x.powf(r) * geo_k_x / (1.0 - q_outer) - geo_k_half / (1.0 - q_inner))
        };
        term1 + term2
    }
}

/// `sum_{k=0}^{n-1} q^k`.
fn geometric_finite(q: f64, n: usize) -> f64 {
    (1.0 - q.powi(n as i32)) / (1.0 - q)
}

/// `sum_{k=0}^{n} k q^k`.
fn weighted_geometric_finite(q: f64, n: usize) -> f64 {
    let nf = n as f64;
    q * (1.0 - (nf + 1.0) * q.powi(n as i32) + nf * q.powi(n as i32 + 1)) / ((1.0 - q) * (1.0 - q))
}

/// The `r` with `T 2^-(r+1) < u <= T 2^-r`, for `u` in `(0, T]`.
fn enclosing_gap(horizon: f64, u: f64) -> u64 {
    let mut r = (horizon / u).log2().floor();
    if r < 0.0 {
        r = 0.0;
    }
    let mut r = r as i64;
    while r > 0 && horizon * (-(r as f64)).exp2() < u {
        r -= 1;
    }
    while horizon * (-(r as f64 + 1.0)).exp2() >= u {
        r += 1;
    }
    r as u64
}

// ---------------------------------------------------------------------------
// The sewing constructions
// ---------------------------------------------------------------------------

/// Output of a sewing map: the integral `I` (with `I(0) = 0`) and the
/// remainder `R = A - delta1(I)` on every ordered pair.
#[derive(Debug, Clone)]
pub struct SewOutcome {
    pub integral: Grid1Fn,
    pub remainder: Grid2Fn,
}

/// The remainder `R = A - delta1(I)` as a lazily evaluated [`PairFn`]; holds
/// the integral and, for the dyadic construction, the midpoint-defect table
/// whose rows pin the remainder values on dyadic intervals.
#[derive(Debug, Clone)]
pub struct RemainderView<'a, G: PairFn> {
    base: &'a G,
    integral: Grid1Fn,
    defect: Option<Vec<Vec<f64>>>,
}

impl<'a, G: PairFn> RemainderView<'a, G> {
    pub fn integral(&self) -> &Grid1Fn {
        &self.integral
    }

    /// Row `n` of the midpoint-defect table (dyadic construction only).
    pub fn defect_row(&self, n: usize) -> Option<&[f64]> {
        self.defect.as_ref().map(|u| u[n].as_slice())
    }

    /// Materializes the remainder and hands back both parts.
    pub fn into_outcome(self) -> Result<SewOutcome> {
        let remainder = Grid2Fn::materialize(&self)?;
        Ok(SewOutcome {
            integral: self.integral,
            remainder,
        })
    }
}

impl<'a, G: PairFn> PairFn for RemainderView<'a, G> {
    fn grid(&self) -> &DyadicGrid {
        self.base.grid()
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        remainder_value(self.base, &self.integral, self.defect.as_deref(), i, j)
    }
}

fn remainder_value<G: PairFn>(
    base: &G,
    integral: &Grid1Fn,
    defect: Option<&[Vec<f64>]>,
    i: usize,
    j: usize,
) -> f64 {
    if i == j {
        return base.at(i, i);
    }
    if i < j {
        if let Some(u) = defect {
            let gap = j - i;
            if gap.is_power_of_two() && i % gap == 0 {
                let depth = gap.trailing_zeros();
                let level = base.grid().level() - depth;
                return -u[level as usize][i >> depth];
            }
        }
        return base.at(i, j) - (integral.value(j) - integral.value(i));
    }
    // Unordered pair: R(s,t) = -delta2(A)(s,t,s) - R(t,s).
    let da = base.at(i, i) - base.at(i, j) - base.at(j, i);
    -da - remainder_value(base, integral, defect, j, i)
}

/// Dyadic sewing for coherence exponents in `(0, 1]`.  The construction
/// itself is exponent-free; the exponent only enters continuity estimates.
/// Returns a lazy view over the remainder.
pub fn sew_low_view<G: PairFn>(a: &G) -> RemainderView<'_, G> {
    let grid = a.grid();
    let m = grid.level();
    let coherence = delta2(a);

    // Midpoint-defect table u(k, n).
    let mut defect: Vec<Vec<f64>> = vec![vec![0.0]];
    for n in 1..=m {
        let prev = &defect[(n - 1) as usize];
        let step = 1usize << (m - n);
        let mut cur = vec![0.0; 1usize << n];
        for k in 0..(1usize << (n - 1)) {
            let half = 0.5 * prev[k];
            cur[2 * k] = half;
            cur[2 * k + 1] =
                half + coherence.at(2 * k * step, (2 * k + 1) * step, (2 * k + 2) * step);
        }
        defect.push(cur);
    }

    // I(0) = 0; each level defines I at its odd points from the previous one.
    let mut integral = vec![0.0; grid.len()];
    for n in 0..=m {
        let step = 1usize << (m - n);
        let mut k = 1usize;
        while k < (1usize << n) + 1 {
            integral[k * step] = integral[(k - 1) * step]
                + a.at((k - 1) * step, k * step)
                + defect[n as usize][k - 1];
            k += 2;
        }
    }
    let integral = Grid1Fn::new(grid.clone(), integral).expect("integral length fixed by grid");

    RemainderView {
        base: a,
        integral,
        defect: Some(defect),
    }
}

/// Dyadic sewing with the remainder materialized.
pub fn sew_low<G: PairFn>(a: &G) -> Result<SewOutcome> {
    sew_low_view(a).into_outcome()
}

/// Riemann-sum sewing for coherence exponents above 1, at the grid's own
/// resolution: `I(t)` is the sum of `A` over consecutive grid pairs in
/// `[0, t]`.
pub fn sew_high_view<G: PairFn>(a: &G, gamma: f64) -> Result<RemainderView<'_, G>> {
    if !(gamma > 1.0) {
        return Err(Error::invalid(format!(
            "Riemann sewing needs an exponent above 1, got {gamma}"
        )));
    }
    let grid = a.grid();
    let mut integral = vec![0.0; grid.len()];
    for k in 1..grid.len() {
        integral[k] = integral[k - 1] + a.at(k - 1, k);
    }
    let integral = Grid1Fn::new(grid.clone(), integral)?;
    Ok(RemainderView {
        base: a,
        integral,
        defect: None,
    })
}

/// Riemann-sum sewing with the remainder materialized.
pub fn sew_high<G: PairFn>(a: &G, gamma: f64) -> Result<SewOutcome> {
    sew_high_view(a, gamma)?.into_outcome()
}

/// Riemann-sum sewing evaluated on the coarser output grid, exposing the
/// whole refinement sequence: entry `s` of the returned vector is the sup
/// distance between the integrals from refinement levels `out_level + s` and
/// `out_level + s + 1`.  Fails with [`Error::NotConverging`] when the
/// sequence does not contract at rate `2^(1-gamma)` (within a factor 10),
/// which signals an exponent at or below 1.
pub fn sew_high_refined<G: PairFn>(
    a: &G,
    gamma: f64,
    out_level: u32,
) -> Result<(SewOutcome, Vec<f64>)> {
    if !(gamma > 1.0) {
        return Err(Error::invalid(format!(
            "Riemann sewing needs an exponent above 1, got {gamma}"
        )));
    }
    let grid = a.grid();
    if out_level > grid.level() {
        return Err(Error::LevelMismatch {
            expected: grid.level(),
            got: out_level,
        });
    }
    let out_grid = grid.coarsen(out_level)?;
    let out_stride = 1usize << (grid.level() - out_level);

    let mut diffs = Vec::new();
    let mut prev: Option<Vec<f64>> = None;
    for r in out_level..=grid.level() {
        let step = 1usize << (grid.level() - r);
        let mut vals = Vec::with_capacity(out_grid.len());
        vals.push(0.0);
        let mut acc = 0.0;
        for seg in 0..(1usize << r) {
            acc += a.at(seg * step, (seg + 1) * step);
            if ((seg + 1) * step) % out_stride == 0 {
                vals.push(acc);
            }
        }
        if let Some(p) = &prev {
            let d = vals
                .iter()
                .zip(p)
                .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
            diffs.push(d);
        }
        prev = Some(vals);
    }
    let vals = prev.expect("at least one refinement level");
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = 1e-12 * (1.0 + scale);
    if let Some(&first) = diffs.first() {
        for (s, &d) in diffs.iter().enumerate().skip(1) {
            let allowed = 10.0 * first * ((1.0 - gamma) * s as f64).exp2() + floor;
            if d > allowed {
                return Err(Error::NotConverging {
                    gamma,
                    step: s as u32,
                    observed: d,
                    allowed,
                });
            }
        }
    }

    let integral = Grid1Fn::new(out_grid.clone(), vals)?;
    let restricted = restrict_pair_fn(a, &out_grid, out_stride)?;
    let remainder = Grid2Fn::from_index_fn(out_grid, |i, j| {
        remainder_value(&restricted, &integral, None, i, j)
    })?;
    Ok((SewOutcome { integral, remainder }, diffs))
}

fn restrict_pair_fn<G: PairFn>(a: &G, out: &DyadicGrid, stride: usize) -> Result<Grid2Fn> {
    Grid2Fn::from_index_fn(out.clone(), |i, j| a.at(i * stride, j * stride))
}

/// Sewing dispatch: the dyadic construction for `gamma <= 1`, Riemann sums
/// for `gamma > 1`.
pub fn sew<G: PairFn>(a: &G, gamma: f64) -> Result<SewOutcome> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::invalid(format!(
            "coherence exponent must be positive, got {gamma}"
        )));
    }
    if gamma <= 1.0 {
        sew_low(a)
    } else {
        sew_high(a, gamma)
    }
}

/// Sewing with the output produced at a coarser level than the input grid.
/// For `gamma > 1` the finer input refines the Riemann sums (and the
/// contraction of refinements is checked); for `gamma <= 1` the input is
/// restricted first.  Errors with [`Error::LevelMismatch`] if the requested
/// level is finer than the data.
pub fn sew_at_level<G: PairFn>(a: &G, gamma: f64, out_level: u32) -> Result<SewOutcome> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::invalid(format!(
            "coherence exponent must be positive, got {gamma}"
        )));
    }
    let level = a.grid().level();
    if out_level > level {
        return Err(Error::LevelMismatch {
            expected: level,
            got: out_level,
        });
    }
    if out_level == level {
        return sew(a, gamma);
    }
    if gamma > 1.0 {
        Ok(sew_high_refined(a, gamma, out_level)?.0)
    } else {
        let out_grid = a.grid().coarsen(out_level)?;
        let stride = 1usize << (level - out_level);
        let restricted = restrict_pair_fn(a, &out_grid, stride)?;
        sew_low(&restricted)
    }
}

/// The sewing map on unordered pairs: `R = lambda(delta2(A))` with
/// `delta2(R) = delta2(A)` on all grid triples and
/// `R(s,t) + R(t,s) = -delta2(A)(s,t,s)` pointwise.
///
/// The coherence hypothesis forces `A(t,t) = 0` (take the triple `(t,t,t)`);
/// for germs violating it the reversed-pair identity still holds by
/// construction, but `delta2(R) = delta2(A)` on triples `(s,u,s)` picks up
/// the diagonal values as a defect.
pub fn lambda_unordered<G: PairFn>(a: &G, gamma: f64) -> Result<Grid2Fn> {
    Ok(sew(a, gamma)?.remainder)
}

/// The integration map: `I` with `I(0) = 0` and
/// `delta1(I) = A - lambda(delta2(A))` on ordered pairs; linear in `A`.
pub fn integrate<G: PairFn>(a: &G, gamma: f64) -> Result<Grid1Fn> {
    Ok(sew(a, gamma)?.integral)
}

/// The explicit continuity constant of the sewing map:
///
/// * `gamma > 1`: `1 / (2^gamma - 2)`;
/// * `gamma = 1`: `96 / ln 2 * (1 + |ln T|)`;
/// * `0 < gamma < 1`:
///   `2^(gamma+1) / (1 - 2^(1 - gamma (floor(1/gamma)+1)))
///    * (2 + floor(1/gamma) + 2 / ((2^(1-gamma) - 1)(1 - 2^-gamma)))`.
pub fn constant_c(gamma: f64, horizon: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::invalid(format!(
            "constant undefined for exponent {gamma}"
        )));
    }
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::invalid(format!("bad horizon {horizon}")));
    }
    if gamma > 1.0 {
        return Ok((gamma.exp2() - 2.0).recip());
    }
    if gamma == 1.0 {
        return Ok(96.0 / LN_2 * (1.0 + horizon.ln().abs()));
    }
    let k = (1.0 / gamma).floor();
    let lead = (gamma + 1.0).exp2() / (1.0 - (1.0 - gamma * (k + 1.0)).exp2());
    let inner = 2.0 + k + 2.0 / (((1.0 - gamma).exp2() - 1.0) * (1.0 - (-gamma).exp2()));
    Ok(lead * inner)
}

/// `sup |R(s,t)| / ((1 + |ln|t-s||) |t-s|)` over pairs `s != t` — the norm in
/// which the exponent-1 sewing map is bounded.
pub fn log_weighted_norm<G: PairFn>(r: &G) -> f64 {
    let grid = r.grid();
    let n = grid.len();
    let mut sup = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let h = grid.gap(i, j);
            let den = (1.0 + h.ln().abs()) * h;
            sup = sup.max(r.at(i, j).abs() / den);
        }
    }
    sup
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// Quantitative summary of one sewing run.  `output_c2_norm` is the plain
/// `C2` norm of the remainder for `gamma != 1` and the log-weighted norm for
/// `gamma = 1`; `bound_constant` is `C_gamma + 1` from the unordered-times
/// estimate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SewingReport {
    pub gamma: f64,
    pub input_c3_norm: f64,
    pub output_c2_norm: f64,
    pub bound_constant: f64,
    pub bound_satisfied: bool,
    pub grid_level: u32,
    pub tolerance: f64,
}

/// Measures a finished sewing outcome on the germ it was produced from
/// against the continuity bound `output <= (C_gamma + 1) * input +
/// tolerance`; `a` must live on the outcome's grid.
pub fn measure<G: PairFn>(
    a: &G,
    outcome: &SewOutcome,
    gamma: f64,
    scan: TripleScan,
    tolerance: f64,
) -> Result<SewingReport> {
    let input_c3_norm = norm_c3(&delta2(a), gamma, scan);
    let output_c2_norm = if gamma == 1.0 {
        log_weighted_norm(&outcome.remainder)
    } else {
        norm_c2(&outcome.remainder, gamma)
    };
    let bound_constant = constant_c(gamma, a.grid().horizon())? + 1.0;
    Ok(SewingReport {
        gamma,
        input_c3_norm,
        output_c2_norm,
        bound_constant,
        bound_satisfied: output_c2_norm <= bound_constant * input_c3_norm + tolerance,
        grid_level: outcome.integral.grid().level(),
        tolerance,
    })
}

/// Runs the sewing dispatch and measures it against the continuity bound.
pub fn sew_with_report<G: PairFn>(
    a: &G,
    gamma: f64,
    scan: TripleScan,
    tolerance: f64,
) -> Result<(SewOutcome, SewingReport)> {
    let outcome = sew(a, gamma)?;
    let report = measure(a, &outcome, gamma, scan, tolerance)?;
    Ok((outcome, report))
}
