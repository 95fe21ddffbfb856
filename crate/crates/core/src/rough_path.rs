//! Grid-sampled geometric rough paths over the shuffle algebra.
//!
//! A [`RoughPathGrid`] stores, for every ordered grid pair and every word up
//! to its stored level, the real `<X_{s,t}, w>`.  A valid rough path is a
//! truncated character in the word argument (shuffle products multiply) and
//! satisfies Chen's relation across any intermediate time: the coboundary of
//! `<X, w>` equals the pairing of `X ⊗ X` with the reduced coproduct of `w`.
//!
//! [`extend`] lifts a [`HolderFamily`] — one Hölder component per Lyndon
//! word up to level `N = floor(1/alpha)` — to such a character: level-1
//! values are path increments; each higher Lyndon word sews the Chen
//! boundary data of the already-built levels and adds the component's
//! increments; non-Lyndon words are forced by multiplicativity through their
//! Lyndon polynomial decomposition.  [`project`] inverts the lift by
//! integrating each Lyndon value, [`extend_above_n`] continues uniquely
//! above `N` where the sewing exponent exceeds 1, and [`act`] is the induced
//! free transitive action of families on rough paths.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dyadic_grid::{
    delta1, norm_c2, scan_triples, DyadicGrid, Grid1Fn, Grid2Fn, PairFn, TripleScan,
};
use crate::error::{Error, Result};
use crate::sewing;
use crate::shuffle::{ShuffleAlgebra, Word};

/// Tolerance for deciding that `1/alpha` is an integer.
const ALPHA_RECIPROCAL_TOL: f64 = 1e-9;

fn truncation_n(alpha: f64) -> Result<usize> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!(
            "rough-path exponent must lie in (0, 1), got {alpha}"
        )));
    }
    Ok((1.0 / alpha).floor() as usize)
}

fn reject_integer_reciprocal(alpha: f64) -> Result<()> {
    let inverse = 1.0 / alpha;
    if (inverse - inverse.round()).abs() < ALPHA_RECIPROCAL_TOL {
        return Err(Error::AlphaReciprocalInteger { inverse });
    }
    Ok(())
}

/// One Hölder component per Lyndon word up to level `N = floor(1/alpha)`;
/// every component starts at 0 and carries exponent `alpha * degree`.
#[derive(Debug, Clone)]
pub struct HolderFamily {
    grid: DyadicGrid,
    algebra: Arc<ShuffleAlgebra>,
    alpha: f64,
    components: BTreeMap<Word, Grid1Fn>,
}

impl HolderFamily {
    /// The zero family: every Lyndon component up to level `N` is the zero
    /// path.
    pub fn zero(algebra: Arc<ShuffleAlgebra>, grid: DyadicGrid, alpha: f64) -> Result<Self> {
        let n = truncation_n(alpha)?;
        if algebra.truncation_level() < n {
            return Err(Error::TruncationExceeded {
                degree: n,
                max: algebra.truncation_level(),
            });
        }
        let mut components = BTreeMap::new();
        for degree in 1..=n {
            for h in algebra.lyndon_words(degree)? {
                components.insert(h.clone(), Grid1Fn::zero(grid.clone()));
            }
        }
        Ok(HolderFamily {
            grid,
            algebra,
            alpha,
            components,
        })
    }

    /// Replaces the component at the Lyndon word `h`; `f` must start at 0.
    pub fn with_component(mut self, h: Word, f: Grid1Fn) -> Result<Self> {
        if !h.is_lyndon() || h.degree() > self.truncation() {
            return Err(Error::invalid(format!(
                "component index {h} is not a Lyndon word within level {}",
                self.truncation()
            )));
        }
        crate::dyadic_grid::require_same_grid(&self.grid, f.grid())?;
        if f.value(0) != 0.0 {
            return Err(Error::invalid(format!(
                "component at {h} must start at 0, got {}",
                f.value(0)
            )));
        }
        self.components.insert(h, f);
        Ok(self)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn grid(&self) -> &DyadicGrid {
        &self.grid
    }

    pub fn algebra(&self) -> &Arc<ShuffleAlgebra> {
        &self.algebra
    }

    /// `N = floor(1/alpha)`.
    pub fn truncation(&self) -> usize {
        (1.0 / self.alpha).floor() as usize
    }

    pub fn component(&self, h: &Word) -> Option<&Grid1Fn> {
        self.components.get(h)
    }

    pub fn components(&self) -> impl Iterator<Item = (&Word, &Grid1Fn)> {
        self.components.iter()
    }

    fn compatible(&self, other: &HolderFamily) -> Result<()> {
        crate::dyadic_grid::require_same_grid(&self.grid, &other.grid)?;
        if self.alpha != other.alpha
            || self.algebra.alphabet_size() != other.algebra.alphabet_size()
        {
            return Err(Error::invalid(
                "families live on different exponents or alphabets",
            ));
        }
        Ok(())
    }

    /// Componentwise sum.
    pub fn add(&self, other: &HolderFamily) -> Result<HolderFamily> {
        self.combine(other, 1.0)
    }

    /// Componentwise difference.
    pub fn sub(&self, other: &HolderFamily) -> Result<HolderFamily> {
        self.combine(other, -1.0)
    }

    fn combine(&self, other: &HolderFamily, sign: f64) -> Result<HolderFamily> {
        self.compatible(other)?;
        let mut components = BTreeMap::new();
        for (h, f) in &self.components {
            let g = &other.components[h];
            components.insert(h.clone(), f.add_scaled(sign, g)?);
        }
        Ok(HolderFamily {
            grid: self.grid.clone(),
            algebra: self.algebra.clone(),
            alpha: self.alpha,
            components,
        })
    }

    /// The family metric: sum over Lyndon words of the Hölder norms of the
    /// component differences at exponent `alpha * degree`.
    pub fn distance(&self, other: &HolderFamily) -> Result<f64> {
        self.compatible(other)?;
        let mut total = 0.0;
        for (h, f) in &self.components {
            let diff = f.add_scaled(-1.0, &other.components[h])?;
            total += crate::dyadic_grid::norm_c1_holder(&diff, self.alpha * h.degree() as f64);
        }
        Ok(total)
    }
}

/// Location of the worst Chen defect.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChenDefect {
    pub max_abs: f64,
    pub word: String,
    pub s: f64,
    pub u: f64,
    pub t: f64,
}

/// Location of the worst multiplicativity defect.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShuffleDefect {
    pub max_abs: f64,
    pub left: String,
    pub right: String,
    pub s: f64,
    pub t: f64,
}

/// Per-word Hölder norm entry of a [`HolderReport`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WordNorm {
    pub word: String,
    pub degree: usize,
    pub holder_exponent: f64,
    pub norm: f64,
}

/// Full analytic summary of a rough path: per-word norms at exponent
/// `alpha * degree`, the scale (largest stored absolute value) and the worst
/// Chen and multiplicativity defects.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HolderReport {
    pub alpha: f64,
    pub grid_level: u32,
    pub scale: f64,
    pub words: Vec<WordNorm>,
    pub chen: ChenDefect,
    pub shuffle: ShuffleDefect,
}

/// A truncated character sampled on all ordered grid pairs.
#[derive(Debug, Clone)]
pub struct RoughPathGrid {
    grid: DyadicGrid,
    algebra: Arc<ShuffleAlgebra>,
    alpha: f64,
    values: BTreeMap<Word, Grid2Fn>,
}

impl RoughPathGrid {
    /// Assembles a rough path from per-word tables; every word of each
    /// degree up to the maximum present must be supplied.
    pub fn new(
        algebra: Arc<ShuffleAlgebra>,
        alpha: f64,
        values: BTreeMap<Word, Grid2Fn>,
    ) -> Result<Self> {
        truncation_n(alpha)?;
        let stored = values.keys().map(Word::degree).max().unwrap_or(0);
        if stored == 0 {
            return Err(Error::invalid("a rough path needs at least level 1"));
        }
        if stored > algebra.truncation_level() {
            return Err(Error::TruncationExceeded {
                degree: stored,
                max: algebra.truncation_level(),
            });
        }
        let grid = values
            .values()
            .next()
            .expect("nonempty value map")
            .grid()
            .clone();
        for degree in 1..=stored {
            for w in algebra.words(degree)? {
                let table = values.get(w).ok_or_else(|| {
                    Error::invalid(format!("missing table for word {w} at degree {degree}"))
                })?;
                crate::dyadic_grid::require_same_grid(&grid, table.grid())?;
            }
        }
        Ok(RoughPathGrid {
            grid,
            algebra,
            alpha,
            values,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn grid(&self) -> &DyadicGrid {
        &self.grid
    }

    pub fn algebra(&self) -> &Arc<ShuffleAlgebra> {
        &self.algebra
    }

    /// Highest stored word degree.
    pub fn stored_level(&self) -> usize {
        self.values.keys().map(Word::degree).max().unwrap_or(0)
    }

    /// `N = floor(1/alpha)`, the natural truncation of the exponent.
    pub fn truncation(&self) -> usize {
        (1.0 / self.alpha).floor() as usize
    }

    pub fn value(&self, w: &Word) -> Result<&Grid2Fn> {
        self.values.get(w).ok_or_else(|| Error::TruncationExceeded {
            degree: w.degree(),
            max: self.stored_level(),
        })
    }

    pub fn words(&self) -> impl Iterator<Item = (&Word, &Grid2Fn)> {
        self.values.iter()
    }

    /// Largest absolute stored value.
    pub fn scale(&self) -> f64 {
        self.values
            .values()
            .map(Grid2Fn::max_abs)
            .fold(0.0, f64::max)
    }

    /// Chen defect of word `w` at the index triple `(s, u, t) = (i, j, k)`:
    /// `delta2(<X, w>)(s,u,t) - <X_{s,u} ⊗ X_{u,t}, reduced coproduct of w>`.
    pub fn chen_defect(&self, w: &Word, i: usize, j: usize, k: usize) -> Result<f64> {
        let table = self.value(w)?;
        let mut defect = table.at(i, k) - table.at(i, j) - table.at(j, k);
        for (w1, w2) in self.algebra.reduced_coproduct(w)? {
            defect -= self.values[w1].at(i, j) * self.values[w2].at(j, k);
        }
        Ok(defect)
    }

    /// Worst Chen defect over all stored words and scanned triples.
    pub fn max_chen_defect(&self, scan: TripleScan) -> Result<ChenDefect> {
        let mut worst = ChenDefect {
            max_abs: 0.0,
            word: String::new(),
            s: 0.0,
            u: 0.0,
            t: 0.0,
        };
        for (w, table) in &self.values {
            let splits = self.algebra.reduced_coproduct(w)?;
            let mut word_worst = (0.0f64, (0usize, 0usize, 0usize));
            scan_triples(&self.grid, scan, |i, j, k| {
                let mut defect = table.at(i, k) - table.at(i, j) - table.at(j, k);
                for (w1, w2) in splits {
                    defect -= self.values[w1].at(i, j) * self.values[w2].at(j, k);
                }
                let defect = defect.abs();
                if defect > word_worst.0 {
                    word_worst = (defect, (i, j, k));
                }
            });
            if word_worst.0 > worst.max_abs || worst.word.is_empty() {
                let (i, j, k) = word_worst.1;
                worst = ChenDefect {
                    max_abs: word_worst.0,
                    word: w.to_string(),
                    s: self.grid.point(i),
                    u: self.grid.point(j),
                    t: self.grid.point(k),
                };
            }
        }
        Ok(worst)
    }

    /// Worst multiplicativity defect
    /// `|<X, u ⧢ v> - <X, u> <X, v>|` over word pairs within the stored
    /// level and all grid pairs.
    pub fn max_shuffle_defect(&self) -> Result<ShuffleDefect> {
        let stored = self.stored_level();
        let mut worst = ShuffleDefect {
            max_abs: 0.0,
            left: String::new(),
            right: String::new(),
            s: 0.0,
            t: 0.0,
        };
        let n = self.grid.len();
        for p in 1..=stored {
            for q in p..=(stored.saturating_sub(p)) {
                for u in self.algebra.words(p)? {
                    for v in self.algebra.words(q)? {
                        if q == p && v < u {
                            continue;
                        }
                        let product = self.algebra.shuffle_product(u, v)?;
                        let tu = &self.values[u];
                        let tv = &self.values[v];
                        for i in 0..n {
                            for j in 0..n {
                                let mut lhs = 0.0;
                                for (z, c) in product {
                                    let c = c
                                        .to_string()
                                        .parse::<f64>()
                                        .expect("shuffle coefficient fits in f64");
                                    lhs += c * self.values[z].at(i, j);
                                }
                                let defect = (lhs - tu.at(i, j) * tv.at(i, j)).abs();
                                if defect > worst.max_abs || worst.left.is_empty() {
                                    worst = ShuffleDefect {
                                        max_abs: defect,
                                        left: u.to_string(),
                                        right: v.to_string(),
                                        s: self.grid.point(i),
                                        t: self.grid.point(j),
                                    };
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(worst)
    }

    /// Per-word norm table plus defect maxima.
    pub fn holder_report(&self, scan: TripleScan) -> Result<HolderReport> {
        let mut words = Vec::new();
        for (w, table) in &self.values {
            let exponent = self.alpha * w.degree() as f64;
            words.push(WordNorm {
                word: w.to_string(),
                degree: w.degree(),
                holder_exponent: exponent,
                norm: norm_c2(table, exponent),
            });
        }
        Ok(HolderReport {
            alpha: self.alpha,
            grid_level: self.grid.level(),
            scale: self.scale(),
            words,
            chen: self.max_chen_defect(scan)?,
            shuffle: self.max_shuffle_defect()?,
        })
    }

    /// The rough-path metric: sum over Lyndon words up to level `N` of the
    /// pair norms of the differences at exponent `alpha * degree`.
    pub fn distance(&self, other: &RoughPathGrid) -> Result<f64> {
        crate::dyadic_grid::require_same_grid(&self.grid, &other.grid)?;
        if self.alpha != other.alpha {
            return Err(Error::invalid("rough paths have different exponents"));
        }
        let n_cap = self.truncation().min(self.stored_level());
        let mut total = 0.0;
        for degree in 1..=n_cap {
            for h in self.algebra.lyndon_words(degree)? {
                let diff = Grid2Fn::linear(1.0, self.value(h)?, -1.0, other.value(h)?)?;
                total += norm_c2(&diff, self.alpha * degree as f64);
            }
        }
        Ok(total)
    }

    /// Writes `s,t,word,value` rows sorted by (degree, word, s-index,
    /// t-index).
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["s", "t", "word", "value"])
            .map_err(|e| Error::csv(0, e.to_string()))?;
        let n = self.grid.len();
        for (word, table) in &self.values {
            let label = word.to_string();
            for i in 0..n {
                for j in 0..n {
                    w.write_record([
                        time_string(&self.grid, i),
                        time_string(&self.grid, j),
                        label.clone(),
                        format!("{}", table.at(i, j)),
                    ])
                    .map_err(|e| Error::csv(0, e.to_string()))?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Reads rows written by [`RoughPathGrid::write_csv`].  The alphabet
    /// size is inferred from the letters present unless supplied.
    pub fn read_csv<R: Read>(input: R, alpha: f64, alphabet: Option<u8>) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(input);
        let headers = reader.headers().map_err(|e| Error::csv(0, e.to_string()))?;
        if headers.iter().collect::<Vec<_>>() != ["s", "t", "word", "value"] {
            return Err(Error::csv(0, format!("unexpected header {headers:?}")));
        }
        let mut rows: BTreeMap<Word, Vec<(f64, f64, f64)>> = BTreeMap::new();
        for (idx, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::csv(idx + 1, e.to_string()))?;
            if record.len() != 4 {
                return Err(Error::csv(idx + 1, "wrong number of fields"));
            }
            let parse = |raw: &str| -> Result<f64> {
                raw.parse()
                    .map_err(|_| Error::csv(idx + 1, format!("cannot parse {raw:?}")))
            };
            let s = parse(&record[0])?;
            let t = parse(&record[1])?;
            let word = Word::from_str(&record[2])?;
            let value = parse(&record[3])?;
            rows.entry(word).or_default().push((s, t, value));
        }
        if rows.is_empty() {
            return Err(Error::csv(0, "empty rough-path table"));
        }
        let count = rows.values().next().unwrap().len();
        let points = (count as f64).sqrt().round() as usize;
        if points * points != count || points < 2 || !(points - 1).is_power_of_two() {
            return Err(Error::csv(0, format!("{count} rows per word is not square dyadic")));
        }
        let level = (points - 1).trailing_zeros();
        let horizon = rows.values().next().unwrap()[count - 1].1;
        let grid = DyadicGrid::new(horizon, level)?;

        let stored = rows.keys().map(Word::degree).max().unwrap();
        let d = alphabet.unwrap_or_else(|| {
            rows.keys()
                .flat_map(|w| w.letters().iter().copied())
                .max()
                .unwrap_or(1)
        });
        let algebra = Arc::new(ShuffleAlgebra::new(d, stored.max(truncation_n(alpha)?))?);

        let mut values = BTreeMap::new();
        for (word, samples) in rows {
            if samples.len() != count {
                return Err(Error::csv(0, format!("word {word} has a ragged table")));
            }
            let mut table = vec![0.0; count];
            for (row, (s, t, v)) in samples.iter().enumerate() {
                let (i, j) = (row / points, row % points);
                let tol = 1e-12 * horizon.max(1.0);
                if (s - grid.point(i)).abs() > tol || (t - grid.point(j)).abs() > tol {
                    return Err(Error::csv(row, format!("row order broken at word {word}")));
                }
                table[i * points + j] = *v;
            }
            values.insert(word, Grid2Fn::new(grid.clone(), table)?);
        }
        RoughPathGrid::new(algebra, alpha, values)
    }
}

fn time_string(grid: &DyadicGrid, k: usize) -> String {
    // Match the Grid1Fn/Grid2Fn convention: exact decimals on the unit
    // horizon, shortest round-trip floats otherwise.
    if grid.horizon() == 1.0 {
        exact_unit_time(k as u64, grid.level())
    } else {
        format!("{}", grid.point(k))
    }
}

fn exact_unit_time(k: u64, m: u32) -> String {
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

/// The Chen boundary germ `F(s,t) = <X_{0,s} ⊗ X_{s,t}, reduced coproduct>`
/// built from already-constructed lower levels, evaluated lazily.
struct BoundaryGerm<'a> {
    grid: &'a DyadicGrid,
    built: &'a BTreeMap<Word, Grid2Fn>,
    splits: &'a [(Word, Word)],
}

impl PairFn for BoundaryGerm<'_> {
    fn grid(&self) -> &DyadicGrid {
        self.grid
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        let mut acc = 0.0;
        for (w1, w2) in self.splits {
            acc += self.built[w1].at(0, i) * self.built[w2].at(i, j);
        }
        acc
    }
}

/// Lifts a Hölder family to a rough path up to level `N = floor(1/alpha)`.
/// Rejects exponents with `1/alpha` integer: the top level would sit at
/// sewing exponent exactly 1, whose log-weighted remainder lies outside the
/// Hölder scale used here.
pub fn extend(family: &HolderFamily) -> Result<RoughPathGrid> {
    reject_integer_reciprocal(family.alpha)?;
    let n_cap = family.truncation();
    let algebra = family.algebra.clone();
    let grid = family.grid.clone();
    let mut values: BTreeMap<Word, Grid2Fn> = BTreeMap::new();

    for w in algebra.words(1)? {
        let component = family
            .component(w)
            .ok_or_else(|| Error::invalid(format!("family lacks letter component {w}")))?;
        values.insert(w.clone(), delta1(component));
    }

    for degree in 2..=n_cap {
        let gamma = family.alpha * degree as f64;
        for h in algebra.lyndon_words(degree)? {
            let remainder = {
                let germ = BoundaryGerm {
                    grid: &grid,
                    built: &values,
                    splits: algebra.reduced_coproduct(h)?,
                };
                sewing::lambda_unordered(&germ, gamma)?
            };
            let base = family
                .component(h)
                .ok_or_else(|| Error::invalid(format!("family lacks component {h}")))?;
            let increments = delta1(base);
            let table = Grid2Fn::linear(1.0, &increments, -1.0, &remainder)?;
            values.insert(h.clone(), table);
        }
        for w in algebra.words(degree)? {
            if w.is_lyndon() {
                continue;
            }
            let poly = algebra.radford_decompose(w)?;
            let table = Grid2Fn::from_index_fn(grid.clone(), |i, j| {
                poly.eval(|l| values[l].at(i, j))
            })?;
            values.insert(w.clone(), table);
        }
    }
    RoughPathGrid::new(algebra, family.alpha, values)
}

/// Projects a rough path back to its Hölder family: each Lyndon component is
/// the integration map applied to the word's table at exponent
/// `alpha * degree`.
pub fn project(x: &RoughPathGrid) -> Result<HolderFamily> {
    let n_cap = x.truncation();
    if x.stored_level() < n_cap {
        return Err(Error::TruncationExceeded {
            degree: n_cap,
            max: x.stored_level(),
        });
    }
    let mut family = HolderFamily::zero(x.algebra.clone(), x.grid.clone(), x.alpha)?;
    for degree in 1..=n_cap {
        let gamma = x.alpha * degree as f64;
        for h in x.algebra.lyndon_words(degree)? {
            let f = sewing::integrate(x.value(h)?, gamma)?;
            family = family.with_component(h.clone(), f)?;
        }
    }
    Ok(family)
}

/// Extends a rough path to word levels above `N`.  There the sewing exponent
/// `alpha * degree` exceeds 1, so each Lyndon word's value is the unique
/// remainder of its Chen boundary germ; the other words are forced by
/// multiplicativity through their Lyndon polynomial decomposition, which
/// agrees with sewing them in the refinement limit but keeps the character
/// property exact at finite resolution.
pub fn extend_above_n(x: &RoughPathGrid, target_level: usize) -> Result<RoughPathGrid> {
    let stored = x.stored_level();
    if target_level <= stored {
        return Ok(x.clone());
    }
    let algebra = if target_level > x.algebra.truncation_level() {
        Arc::new(ShuffleAlgebra::new(
            x.algebra.alphabet_size(),
            target_level,
        )?)
    } else {
        x.algebra.clone()
    };
    let mut values = x.values.clone();
    for degree in (stored + 1)..=target_level {
        let gamma = x.alpha * degree as f64;
        if gamma <= 1.0 {
            return Err(Error::invalid(format!(
                "degree {degree} still has sewing exponent {gamma} <= 1; \
                 extend the family instead"
            )));
        }
        for w in algebra.lyndon_words(degree)? {
            let remainder = {
                let germ = BoundaryGerm {
                    grid: &x.grid,
                    built: &values,
                    splits: algebra.reduced_coproduct(w)?,
                };
                sewing::lambda_unordered(&germ, gamma)?
            };
            let table = Grid2Fn::from_index_fn(x.grid.clone(), |i, j| -remainder.at(i, j))?;
            values.insert(w.clone(), table);
        }
        for w in algebra.words(degree)? {
            if w.is_lyndon() {
                continue;
            }
            let poly = algebra.radford_decompose(w)?;
            let table = Grid2Fn::from_index_fn(x.grid.clone(), |i, j| {
                poly.eval(|l| values[l].at(i, j))
            })?;
            values.insert(w.clone(), table);
        }
    }
    RoughPathGrid::new(algebra, x.alpha, values)
}

/// The action of a family on a rough path:
/// `act(g, X) = extend(g + project(X))`.
pub fn act(g: &HolderFamily, x: &RoughPathGrid) -> Result<RoughPathGrid> {
    let base = project(x)?;
    extend(&g.add(&base)?)
}
