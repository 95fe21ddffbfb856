//! Dyadic grids on `[0, T]`, grid-sampled functions, coboundary operators
//! and Hölder-type norms.
//!
//! Grid times are always addressed by their integer index `k` at the grid's
//! refinement level, never by floating-point keys: the point with index `k`
//! at level `M` is `k * T * 2^-M`, and refining by one level maps index `k`
//! to `2k`, so nesting of grids is exact.

use std::io::{Read, Write};

use crate::error::{Error, Result};

/// Hard cap on refinement depth; `2^26 + 1` points is already beyond what a
/// materialized two-parameter table can hold.
pub const MAX_LEVEL: u32 = 26;

/// Full triple enumeration is the default up to this level; above it the
/// deterministic dyadic sample is used instead.
pub const FULL_SCAN_MAX_LEVEL: u32 = 8;

/// The dyadic grid `{ k * T * 2^-M : k = 0..2^M }` on `[0, T]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicGrid {
    horizon: f64,
    level: u32,
}

impl DyadicGrid {
    pub fn new(horizon: f64, level: u32) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::invalid(format!(
                "grid horizon must be a positive real, got {horizon}"
            )));
        }
        if level > MAX_LEVEL {
            return Err(Error::invalid(format!(
                "grid level {level} exceeds the supported maximum {MAX_LEVEL}"
            )));
        }
        Ok(DyadicGrid { horizon, level })
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Number of segments, `2^M`.
    pub fn segments(&self) -> usize {
        1usize << self.level
    }

    /// Number of grid points, `2^M + 1`.
    pub fn len(&self) -> usize {
        self.segments() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Time of the point with index `k`.
    pub fn point(&self, k: usize) -> f64 {
        debug_assert!(k < self.len());
        self.horizon * (k as f64 / self.segments() as f64)
    }

    /// `|t - s|` for the pair of indices `(i, j)`, computed from the index
    /// difference so that it is exact for `T = 1`.
    pub fn gap(&self, i: usize, j: usize) -> f64 {
        let d = i.abs_diff(j);
        self.horizon * (d as f64 / self.segments() as f64)
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|k| self.point(k))
    }

    /// The coarser grid at `level`; errors if `level` exceeds the current one.
    pub fn coarsen(&self, level: u32) -> Result<DyadicGrid> {
        if level > self.level {
            return Err(Error::LevelMismatch {
                expected: self.level,
                got: level,
            });
        }
        DyadicGrid::new(self.horizon, level)
    }

    fn same_as(&self, other: &DyadicGrid) -> bool {
        self.level == other.level && self.horizon == other.horizon
    }
}

/// Read access to a two-parameter function sampled on all ordered index
/// pairs of a grid (both orderings and the diagonal).
///
/// Implemented both by the materialized [`Grid2Fn`] table and by lazily
/// evaluated germs, so norm and sewing routines never force storage.
pub trait PairFn {
    fn grid(&self) -> &DyadicGrid;

    /// Value at the pair `(s, t)` with indices `(i, j)`.
    fn at(&self, i: usize, j: usize) -> f64;
}

impl<G: PairFn + ?Sized> PairFn for &G {
    fn grid(&self) -> &DyadicGrid {
        (**self).grid()
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        (**self).at(i, j)
    }
}

/// A one-parameter function sampled on every grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1Fn {
    grid: DyadicGrid,
    values: Vec<f64>,
}

impl Grid1Fn {
    pub fn new(grid: DyadicGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::invalid(format!(
                "expected {} samples for level {}, got {}",
                grid.len(),
                grid.level(),
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("non-finite sample {bad}")));
        }
        Ok(Grid1Fn { grid, values })
    }

    pub fn from_fn(grid: DyadicGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.points().map(f).collect();
        Grid1Fn::new(grid, values)
    }

    pub fn zero(grid: DyadicGrid) -> Self {
        let n = grid.len();
        Grid1Fn {
            grid,
            values: vec![0.0; n],
        }
    }

    pub fn grid(&self) -> &DyadicGrid {
        &self.grid
    }

    pub fn value(&self, k: usize) -> f64 {
        self.values[k]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `self + c * other`, pointwise.
    pub fn add_scaled(&self, c: f64, other: &Grid1Fn) -> Result<Grid1Fn> {
        check_same_grid(&self.grid, &other.grid)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + c * b)
            .collect();
        Grid1Fn::new(self.grid.clone(), values)
    }

    /// Restriction to the nested coarser grid, bit-exact.
    pub fn restrict(&self, level: u32) -> Result<Grid1Fn> {
        let coarse = self.grid.coarsen(level)?;
        let stride = 1usize << (self.grid.level() - level);
        let values = (0..coarse.len()).map(|k| self.values[k * stride]).collect();
        Grid1Fn::new(coarse, values)
    }

    /// Writes `t,value` rows, one per grid point in index order.  Times are
    /// exact decimal dyadics when the horizon is 1.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "value"]).map_err(csv_io)?;
        for k in 0..self.grid.len() {
            w.write_record([time_field(&self.grid, k), float_field(self.values[k])])
                .map_err(csv_io)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads rows written by [`Grid1Fn::write_csv`]; the level is inferred
    /// from the row count and the horizon from the final time.
    pub fn read_csv<R: Read>(input: R) -> Result<Grid1Fn> {
        let rows = read_rows(input, &["t", "value"])?;
        let level = infer_level(rows.len().saturating_sub(1), 1)?;
        let horizon = rows
            .last()
            .ok_or_else(|| Error::csv(0, "empty table"))?
            .0[0];
        let grid = DyadicGrid::new(horizon, level)?;
        let mut values = Vec::with_capacity(grid.len());
        for (record, (fields, _)) in rows.iter().enumerate() {
            let k = record;
            check_time(&grid, k, fields[0], record)?;
            values.push(fields[1]);
        }
        Grid1Fn::new(grid, values)
    }
}

/// A two-parameter function stored on every ordered index pair `(i, j)`,
/// including `i > j` and the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2Fn {
    grid: DyadicGrid,
    values: Vec<f64>,
}

impl Grid2Fn {
    pub fn new(grid: DyadicGrid, values: Vec<f64>) -> Result<Self> {
        let n = grid.len();
        if values.len() != n * n {
            return Err(Error::invalid(format!(
                "expected {} pair samples for level {}, got {}",
                n * n,
                grid.level(),
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("non-finite pair sample {bad}")));
        }
        Ok(Grid2Fn { grid, values })
    }

    pub fn from_index_fn(grid: DyadicGrid, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let n = grid.len();
        let mut values = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                values.push(f(i, j));
            }
        }
        Grid2Fn::new(grid, values)
    }

    /// Materializes any [`PairFn`].
    pub fn materialize<G: PairFn>(f: &G) -> Result<Self> {
        Grid2Fn::from_index_fn(f.grid().clone(), |i, j| f.at(i, j))
    }

    pub fn zero(grid: DyadicGrid) -> Self {
        let n = grid.len();
        Grid2Fn {
            grid,
            values: vec![0.0; n * n],
        }
    }

    /// `ca * a + cb * b`, pointwise.
    pub fn linear(ca: f64, a: &Grid2Fn, cb: f64, b: &Grid2Fn) -> Result<Grid2Fn> {
        check_same_grid(&a.grid, &b.grid)?;
        let values = a
            .values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| ca * x + cb * y)
            .collect();
        Grid2Fn::new(a.grid.clone(), values)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Restriction to the nested coarser grid, bit-exact.
    pub fn restrict(&self, level: u32) -> Result<Grid2Fn> {
        let coarse = self.grid.coarsen(level)?;
        let stride = 1usize << (self.grid.level() - level);
        Grid2Fn::from_index_fn(coarse, |i, j| self.at(i * stride, j * stride))
    }

    /// Writes `s,t,value` rows in lexicographic `(i, j)` index order.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["s", "t", "value"]).map_err(csv_io)?;
        let n = self.grid.len();
        for i in 0..n {
            for j in 0..n {
                w.write_record([
                    time_field(&self.grid, i),
                    time_field(&self.grid, j),
                    float_field(self.at(i, j)),
                ])
                .map_err(csv_io)?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Reads rows written by [`Grid2Fn::write_csv`].
    pub fn read_csv<R: Read>(input: R) -> Result<Grid2Fn> {
        let rows = read_rows(input, &["s", "t", "value"])?;
        let count = rows.len();
        let points = (count as f64).sqrt().round() as usize;
        if points * points != count || points == 0 {
            return Err(Error::csv(0, format!("{count} rows is not a square table")));
        }
        let level = infer_level(points - 1, 1)?;
        let horizon = rows[count - 1].0[1];
        let grid = DyadicGrid::new(horizon, level)?;
        let mut values = Vec::with_capacity(count);
        for (record, (fields, _)) in rows.iter().enumerate() {
            let (i, j) = (record / points, record % points);
            check_time(&grid, i, fields[0], record)?;
            check_time(&grid, j, fields[1], record)?;
            values.push(fields[2]);
        }
        Grid2Fn::new(grid, values)
    }
}

impl PairFn for Grid2Fn {
    fn grid(&self) -> &DyadicGrid {
        &self.grid
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.len() + j]
    }
}

/// The three-parameter coherence `delta2(A)` of a two-parameter function,
/// evaluated on demand — triples are never materialized.
#[derive(Debug, Clone, Copy)]
pub struct Grid3View<'a, G: PairFn> {
    base: &'a G,
}

impl<'a, G: PairFn> Grid3View<'a, G> {
    pub fn grid(&self) -> &DyadicGrid {
        self.base.grid()
    }

    /// `A(s,t) - A(s,u) - A(u,t)` at indices `(i, j, k) = (s, u, t)`.
    pub fn at(&self, i: usize, j: usize, k: usize) -> f64 {
        self.base.at(i, k) - self.base.at(i, j) - self.base.at(j, k)
    }
}

/// `delta1(I)(s, t) = I(t) - I(s)` on all ordered pairs.
pub fn delta1(f: &Grid1Fn) -> Grid2Fn {
    let n = f.grid.len();
    let mut values = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            values.push(f.values[j] - f.values[i]);
        }
    }
    Grid2Fn {
        grid: f.grid.clone(),
        values,
    }
}

/// `delta2(A)(s, u, t) = A(s,t) - A(s,u) - A(u,t)`, as a lazy view.
pub fn delta2<G: PairFn>(a: &G) -> Grid3View<'_, G> {
    Grid3View { base: a }
}

/// Strategy for enumerating grid triples in three-parameter suprema.
///
/// `Full` visits every index triple (`O(8^M)`).  `Sampled` visits all triples
/// of the level-`min(M, 8)` subgrid plus, for every finer level, all midpoint
/// triples of consecutive parent intervals in all six index orders; it is
/// deterministic.  `Auto` resolves to `Full` for `M <= 8` and `Sampled`
/// above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TripleScan {
    #[default]
    Auto,
    Full,
    Sampled,
}

impl TripleScan {
    fn resolve(self, level: u32) -> TripleScan {
        match self {
            TripleScan::Auto => {
                if level <= FULL_SCAN_MAX_LEVEL {
                    TripleScan::Full
                } else {
                    TripleScan::Sampled
                }
            }
            other => other,
        }
    }
}

/// Visits index triples per the scan strategy, calling `visit(i, j, k)`.
pub fn scan_triples(grid: &DyadicGrid, scan: TripleScan, mut visit: impl FnMut(usize, usize, usize)) {
    let level = grid.level();
    match scan.resolve(level) {
        TripleScan::Full => {
            let n = grid.len();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        visit(i, j, k);
                    }
                }
            }
        }
        TripleScan::Sampled => {
            let coarse = level.min(FULL_SCAN_MAX_LEVEL);
            let stride = 1usize << (level - coarse);
            let n = (1usize << coarse) + 1;
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        visit(i * stride, j * stride, k * stride);
                    }
                }
            }
            for fine in (coarse + 1)..=level {
                let step = 1usize << (level - fine);
                for k in 0..(1usize << (fine - 1)) {
                    let (a, b, c) = (2 * k * step, (2 * k + 1) * step, (2 * k + 2) * step);
                    for (x, y, z) in [
                        (a, b, c),
                        (a, c, b),
                        (b, a, c),
                        (b, c, a),
                        (c, a, b),
                        (c, b, a),
                    ] {
                        visit(x, y, z);
                    }
                }
            }
        }
        TripleScan::Auto => unreachable!(),
    }
}

#[inline]
fn pow_gamma(x: f64, gamma: f64) -> f64 {
    if gamma == 1.0 {
        x
    } else {
        x.powf(gamma)
    }
}

/// `sup |A(s,t)| / |t-s|^gamma` over all pairs `s != t` (both orderings;
/// the diagonal is excluded).
pub fn norm_c2<G: PairFn>(a: &G, gamma: f64) -> f64 {
    assert!(gamma > 0.0, "norm exponent must be positive");
    let grid = a.grid();
    let n = grid.len();
    let mut sup = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let r = a.at(i, j).abs() / pow_gamma(grid.gap(i, j), gamma);
            sup = sup.max(r);
        }
    }
    sup
}

/// Denominators `gap(0, d)^gamma` for every index difference `d`, so the
/// triple scans avoid a `powf` per visit.
fn gap_powers(grid: &DyadicGrid, gamma: f64) -> Vec<f64> {
    (0..=grid.segments())
        .map(|d| pow_gamma(grid.gap(0, d), gamma))
        .collect()
}

/// `sup |B(s,u,t)| / (|t-u| ∨ |u-s|)^gamma` over triples with `s != t`,
/// unordered times.
pub fn norm_c3<G: PairFn>(b: &Grid3View<'_, G>, gamma: f64, scan: TripleScan) -> f64 {
    assert!(gamma > 0.0, "norm exponent must be positive");
    let grid = b.grid().clone();
    let powers = gap_powers(&grid, gamma);
    let mut sup = 0.0f64;
    if scan.resolve(grid.level()) == TripleScan::Full {
        let n = grid.len();
        for i in 0..n {
            for j in 0..n {
                let a_ij = b.base.at(i, j);
                let dij = i.abs_diff(j);
                for k in 0..n {
                    if i == k {
                        continue;
                    }
                    let num = (b.base.at(i, k) - a_ij - b.base.at(j, k)).abs();
                    let den = powers[dij.max(j.abs_diff(k))];
                    if num > sup * den {
                        sup = num / den;
                    }
                }
            }
        }
        return sup;
    }
    scan_triples(&grid, scan, |i, j, k| {
        if i == k {
            return;
        }
        let num = b.at(i, j, k).abs();
        let den = powers[i.abs_diff(j).max(j.abs_diff(k))];
        if num > sup * den {
            sup = num / den;
        }
    });
    sup
}

/// `sup |B(s,u,t)| / |t-s|^gamma` over ordered triples `s <= u <= t`, `s < t`.
pub fn norm_c3_ordered<G: PairFn>(b: &Grid3View<'_, G>, gamma: f64, scan: TripleScan) -> f64 {
    assert!(gamma > 0.0, "norm exponent must be positive");
    let grid = b.grid().clone();
    let powers = gap_powers(&grid, gamma);
    let mut sup = 0.0f64;
    scan_triples(&grid, scan, |i, j, k| {
        if !(i <= j && j <= k && i < k) {
            return;
        }
        let num = b.at(i, j, k).abs();
        let den = powers[k - i];
        if num > sup * den {
            sup = num / den;
        }
    });
    sup
}

/// Hölder norm of a one-parameter function: `norm_c2(delta1(f), beta)`.
pub fn norm_c1_holder(f: &Grid1Fn, beta: f64) -> f64 {
    assert!(
        beta > 0.0 && beta <= 1.0,
        "Hölder exponent must lie in (0, 1]"
    );
    let grid = f.grid();
    let n = grid.len();
    let mut sup = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let r = (f.values[j] - f.values[i]).abs() / grid.gap(i, j).powf(beta);
            sup = sup.max(r);
        }
    }
    sup
}

fn check_same_grid(a: &DyadicGrid, b: &DyadicGrid) -> Result<()> {
    if a.same_as(b) {
        Ok(())
    } else {
        Err(Error::LevelMismatch {
            expected: a.level(),
            got: b.level(),
        })
    }
}

/// Asserts `a` and `b` live on the same grid; exposed for callers combining
/// grid functions from different sources.
pub fn require_same_grid(a: &DyadicGrid, b: &DyadicGrid) -> Result<()> {
    check_same_grid(a, b)
}

// ---------------------------------------------------------------------------
// CSV plumbing
// ---------------------------------------------------------------------------

fn csv_io(e: csv::Error) -> Error {
    Error::csv(0, e.to_string())
}

/// Exact decimal expansion of `k / 2^m` (finite because 2 | 10).
fn dyadic_decimal(k: u64, m: u32) -> String {
    if m == 0 {
        return format!("{k}");
    }
    let scale = 10u128.pow(m);
    let num = (k as u128) * 5u128.pow(m);
    let int = num / scale;
    let frac = num % scale;
    let frac = format!("{frac:0width$}", width = m as usize);
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        format!("{int}")
    } else {
        format!("{int}.{frac}")
    }
}

fn time_field(grid: &DyadicGrid, k: usize) -> String {
    if grid.horizon() == 1.0 {
        dyadic_decimal(k as u64, grid.level())
    } else {
        format!("{}", grid.point(k))
    }
}

fn float_field(v: f64) -> String {
    format!("{v}")
}

type Rows = Vec<(Vec<f64>, u64)>;

fn read_rows<R: Read>(input: R, header: &[&str]) -> Result<Rows> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let got = reader.headers().map_err(csv_io)?.clone();
    let want: Vec<&str> = header.to_vec();
    if got.iter().collect::<Vec<_>>() != want {
        return Err(Error::csv(
            0,
            format!("expected header {header:?}, got {got:?}"),
        ));
    }
    let mut rows = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::csv(idx + 1, e.to_string()))?;
        if record.len() != header.len() {
            return Err(Error::csv(idx + 1, "wrong number of fields"));
        }
        let mut fields = Vec::with_capacity(header.len());
        for raw in record.iter() {
            let v: f64 = raw
                .parse()
                .map_err(|_| Error::csv(idx + 1, format!("cannot parse {raw:?} as a real")))?;
            fields.push(v);
        }
        rows.push((fields, idx as u64));
    }
    Ok(rows)
}

fn infer_level(segments: usize, _arity: usize) -> Result<u32> {
    if segments == 0 || !segments.is_power_of_two() {
        return Err(Error::csv(
            0,
            format!("{} points do not form a dyadic grid", segments + 1),
        ));
    }
    let level = segments.trailing_zeros();
    if level > MAX_LEVEL {
        return Err(Error::csv(0, format!("level {level} too deep")));
    }
    Ok(level)
}

fn check_time(grid: &DyadicGrid, k: usize, got: f64, record: usize) -> Result<()> {
    let want = grid.point(k);
    let tol = 1e-12 * grid.horizon().max(1.0);
    if (got - want).abs() > tol {
        return Err(Error::csv(
            record + 1,
            format!("time {got} does not match grid point {want} (index {k})"),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_grid(level: u32) -> DyadicGrid {
        DyadicGrid::new(1.0, level).unwrap()
    }

    #[test]
    fn points_are_increasing_and_span_the_horizon() {
        let g = DyadicGrid::new(2.5, 5).unwrap();
        let pts: Vec<f64> = g.points().collect();
        assert_eq!(pts.len(), 33);
        assert_eq!(pts[0], 0.0);
        assert_eq!(*pts.last().unwrap(), 2.5);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn refinement_keeps_existing_points() {
        let coarse = unit_grid(4);
        let fine = unit_grid(5);
        for k in 0..coarse.len() {
            assert_eq!(coarse.point(k), fine.point(2 * k));
        }
    }

    #[test]
    fn delta1_of_constant_vanishes() {
        let f = Grid1Fn::from_fn(unit_grid(3), |_| 4.25).unwrap();
        let d = delta1(&f);
        assert!(d.values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn delta1_of_linear_path() {
        let f = Grid1Fn::from_fn(unit_grid(1), |t| t).unwrap();
        let d = delta1(&f);
        assert_eq!(d.at(0, 2), 1.0);
        assert_eq!(d.at(1, 0), -0.5);
    }

    #[test]
    fn delta2_of_coboundary_vanishes() {
        let f = Grid1Fn::from_fn(unit_grid(4), |t| (3.0 * t).sin()).unwrap();
        let d = delta2_max_abs(&delta1(&f));
        assert!(d <= 1e-15);
    }

    fn delta2_max_abs(a: &Grid2Fn) -> f64 {
        let view = delta2(a);
        let mut sup = 0.0f64;
        scan_triples(a.grid(), TripleScan::Full, |i, j, k| {
            sup = sup.max(view.at(i, j, k).abs());
        });
        sup
    }

    #[test]
    fn delta2_of_square_gap() {
        // A(s,t) = (t-s)^2 on T=1: dA(0, 1/2, 1) = 1 - 1/4 - 1/4 = 1/2.
        let g = unit_grid(1);
        let a = Grid2Fn::from_index_fn(g.clone(), |i, j| {
            let h = g.point(j) - g.point(i);
            h * h
        })
        .unwrap();
        assert_eq!(delta2(&a).at(0, 1, 2), 0.5);
    }

    #[test]
    fn norm_c2_of_linear_gap_is_one() {
        let g = unit_grid(4);
        let a = Grid2Fn::from_index_fn(g.clone(), |i, j| g.point(j) - g.point(i)).unwrap();
        assert_eq!(norm_c2(&a, 1.0), 1.0);
    }

    #[test]
    fn norm_c2_square_root_gap_attained_at_finest_pair() {
        // sup h^{1/2} / h = h^{-1/2} over grid gaps h >= 2^-4, attained at 2^-4.
        let g = unit_grid(4);
        let a = Grid2Fn::from_index_fn(g.clone(), |i, j| g.gap(i, j).sqrt()).unwrap();
        let expected = (2.0f64).powi(2);
        assert!((norm_c2(&a, 1.0) - expected).abs() < 1e-12);
    }

    #[test]
    fn norm_c2_of_zero_is_zero() {
        let a = Grid2Fn::zero(unit_grid(3));
        assert_eq!(norm_c2(&a, 0.7), 0.0);
    }

    #[test]
    fn norm_c3_of_exact_coboundary_is_zero() {
        let f = Grid1Fn::from_fn(unit_grid(5), |t| t * t - t.cos()).unwrap();
        let d1 = delta1(&f);
        let n = norm_c3(&delta2(&d1), 1.0, TripleScan::Full);
        assert!(n <= 1e-12 * f.max_abs());
    }

    #[test]
    fn norm_c3_ordered_of_square_germ() {
        // Brute-force oracle over all ordered triples at M=2 agrees with the
        // hand value 1/2 attained at (0, 1/2, 1).
        let g = unit_grid(2);
        let a = Grid2Fn::from_index_fn(g.clone(), |i, j| {
            let h = g.point(j) - g.point(i);
            h * h
        })
        .unwrap();
        let view = delta2(&a);
        let mut oracle = 0.0f64;
        let n = g.len();
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    if i == k {
                        continue;
                    }
                    oracle = oracle.max(view.at(i, j, k).abs() / g.gap(i, k).powi(2));
                }
            }
        }
        assert!((oracle - 0.5).abs() < 1e-15);
        let got = norm_c3_ordered(&view, 2.0, TripleScan::Full);
        assert!((got - oracle).abs() <= 1e-15 * oracle);
    }

    #[test]
    fn norm_c3_unordered_of_square_germ() {
        // With the max-gap denominator the same germ has supremum 2, attained
        // at symmetric triples; cross-checked against brute enumeration.
        let g = unit_grid(2);
        let a = Grid2Fn::from_index_fn(g.clone(), |i, j| {
            let h = g.point(j) - g.point(i);
            h * h
        })
        .unwrap();
        let view = delta2(&a);
        let mut oracle = 0.0f64;
        let n = g.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i == k {
                        continue;
                    }
                    let den = g.gap(j, k).max(g.gap(i, j)).powi(2);
                    oracle = oracle.max(view.at(i, j, k).abs() / den);
                }
            }
        }
        assert!((oracle - 2.0).abs() < 1e-15);
        let got = norm_c3(&view, 2.0, TripleScan::Full);
        assert!((got - oracle).abs() <= 1e-15 * oracle);
    }

    #[test]
    fn norm_c1_holder_of_sqrt_attained_at_origin() {
        let g = unit_grid(6);
        let f = Grid1Fn::from_fn(g, |t| t.sqrt()).unwrap();
        let n = norm_c1_holder(&f, 0.5);
        assert!((n - 1.0).abs() < 1e-12, "norm {n}");
        assert_eq!(norm_c1_holder(&Grid1Fn::zero(unit_grid(4)), 0.5), 0.0);
        let lin = Grid1Fn::from_fn(unit_grid(4), |t| t).unwrap();
        assert!((norm_c1_holder(&lin, 1.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn restriction_is_bit_exact() {
        let g = unit_grid(6);
        let a = Grid2Fn::from_index_fn(g.clone(), |i, j| {
            (g.point(i) * 3.1).sin() + (g.point(j) * 1.7).cos()
        })
        .unwrap();
        let r = a.restrict(5).unwrap();
        for i in 0..r.grid().len() {
            for j in 0..r.grid().len() {
                assert_eq!(r.at(i, j), a.at(2 * i, 2 * j));
            }
        }
    }

    #[test]
    fn dyadic_decimal_strings() {
        assert_eq!(dyadic_decimal(3, 2), "0.75");
        assert_eq!(dyadic_decimal(1, 10), "0.0009765625");
        assert_eq!(dyadic_decimal(4, 2), "1");
        assert_eq!(dyadic_decimal(0, 5), "0");
        assert_eq!(dyadic_decimal(7, 0), "7");
    }

    #[test]
    fn grid1_csv_round_trip() {
        let f = Grid1Fn::from_fn(unit_grid(5), |t| (t * 9.7).sin() / 3.0).unwrap();
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let back = Grid1Fn::read_csv(buf.as_slice()).unwrap();
        assert_eq!(f, back);
    }

    #[test]
    fn grid2_csv_round_trip() {
        let g = unit_grid(3);
        let a = Grid2Fn::from_index_fn(g.clone(), |i, j| {
            (g.point(i) - 2.0 * g.point(j)).tanh()
        })
        .unwrap();
        let mut buf = Vec::new();
        a.write_csv(&mut buf).unwrap();
        let back = Grid2Fn::read_csv(buf.as_slice()).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn csv_rejects_bad_header() {
        let err = Grid1Fn::read_csv("time,value\n0,0\n1,1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Csv { .. }));
    }

    #[test]
    fn csv_rejects_non_dyadic_row_count() {
        let err = Grid1Fn::read_csv("t,value\n0,0\n0.5,1\n0.75,2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Csv { .. }));
    }
}
