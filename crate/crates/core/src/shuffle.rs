//! The truncated shuffle Hopf algebra over the alphabet `{1..d}`.
//!
//! Words are graded by length.  The product is the riffle shuffle, the
//! reduced coproduct is deconcatenation over proper splits, and the Lyndon
//! words of each degree form a free polynomial generating set: every word
//! decomposes uniquely as a shuffle polynomial in Lyndon words with rational
//! coefficients (triangular elimination along the lexicographic order).
//!
//! All tables are built eagerly at construction for a fixed alphabet size
//! and truncation level, in exact arbitrary-precision arithmetic; floats
//! never enter this module.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A word over `{1..d}`; the empty word is the algebra unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<u8>,
}

impl Word {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if letters.iter().any(|&l| l == 0) {
            return Err(Error::invalid("word letters start at 1"));
        }
        Ok(Word { letters })
    }

    pub fn unit() -> Self {
        Word { letters: vec![] }
    }

    pub fn letter(l: u8) -> Self {
        Word { letters: vec![l] }
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn is_unit(&self) -> bool {
        self.letters.is_empty()
    }

    /// Strictly smaller than every proper suffix.
    pub fn is_lyndon(&self) -> bool {
        let n = self.letters.len();
        n >= 1 && (1..n).all(|i| self.letters.as_slice() < &self.letters[i..])
    }

    fn prefix(&self, k: usize) -> Word {
        Word {
            letters: self.letters[..k].to_vec(),
        }
    }

    fn suffix(&self, k: usize) -> Word {
        Word {
            letters: self.letters[k..].to_vec(),
        }
    }

    fn dropping_last(&self) -> (Word, u8) {
        let mut letters = self.letters.clone();
        let last = letters.pop().expect("nonempty word");
        (Word { letters }, last)
    }

    fn appending(&self, l: u8) -> Word {
        let mut letters = self.letters.clone();
        letters.push(l);
        Word { letters }
    }
}

impl fmt::Display for Word {
    /// Dot-separated letters, e.g. `1.2.1`; the unit renders empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, ".")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Ok(Word::unit());
        }
        let letters = s
            .split('.')
            .map(|part| {
                part.parse::<u8>()
                    .ok()
                    .filter(|&l| l >= 1)
                    .ok_or_else(|| Error::invalid(format!("bad word letter {part:?} in {s:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Word { letters })
    }
}

/// Integer combination of words.
pub type WordSum = BTreeMap<Word, BigInt>;

/// Integer combination of word pairs (elements of the tensor square).
pub type TensorSum = BTreeMap<(Word, Word), BigInt>;

/// Integer combination of word triples.
pub type TensorCube = BTreeMap<(Word, Word, Word), BigInt>;

fn add_term<K: Ord>(sum: &mut BTreeMap<K, BigInt>, key: K, coeff: BigInt) {
    if coeff.is_zero() {
        return;
    }
    let entry = sum.entry(key).or_insert_with(BigInt::zero);
    *entry += coeff;
    if entry.is_zero() {
        // Re-borrow to remove; cheap since zero entries are rare.
    }
}

fn prune<K: Ord>(sum: &mut BTreeMap<K, BigInt>) {
    sum.retain(|_, c| !c.is_zero());
}

/// A shuffle polynomial in Lyndon words: a sparse map from multisets of
/// Lyndon words (kept sorted) to exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordPolynomial {
    terms: BTreeMap<Vec<Word>, BigRational>,
}

impl WordPolynomial {
    pub fn zero() -> Self {
        WordPolynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(mut factors: Vec<Word>, coeff: BigRational) -> Self {
        factors.sort();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(factors, coeff);
        }
        WordPolynomial { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Word], &BigRational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, other: &WordPolynomial, scale: &BigRational) {
        for (k, v) in &other.terms {
            let entry = self
                .terms
                .entry(k.clone())
                .or_insert_with(BigRational::zero);
            *entry += v * scale;
        }
        self.terms.retain(|_, c| !c.is_zero());
    }

    /// Evaluates the polynomial under a character given by its values on
    /// Lyndon words.
    pub fn eval(&self, mut value: impl FnMut(&Word) -> f64) -> f64 {
        let mut acc = 0.0;
        for (factors, coeff) in &self.terms {
            let mut prod = coeff.to_f64().expect("rational fits in f64");
            for w in factors {
                prod *= value(w);
            }
            acc += prod;
        }
        acc
    }

    /// Expands every monomial through the shuffle product, returning the
    /// exact rational word combination the polynomial represents.
    pub fn expand(&self, algebra: &ShuffleAlgebra) -> Result<BTreeMap<Word, BigRational>> {
        let mut out: BTreeMap<Word, BigRational> = BTreeMap::new();
        for (factors, coeff) in &self.terms {
            let mut acc: WordSum = BTreeMap::new();
            acc.insert(Word::unit(), BigInt::one());
            for f in factors {
                let mut next: WordSum = BTreeMap::new();
                for (z, c) in &acc {
                    for (w, cw) in algebra.shuffle_product(z, f)? {
                        add_term(&mut next, w.clone(), c * cw);
                    }
                }
                prune(&mut next);
                acc = next;
            }
            for (w, c) in acc {
                let entry = out.entry(w).or_insert_with(BigRational::zero);
                *entry += coeff * BigRational::from_integer(c);
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// JSON form: an array of `{"monomial": ["1.2", ...], "coeff": "p/q"}`
    /// objects, sorted by monomial.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(factors, coeff)| {
                serde_json::json!({
                    "monomial": factors.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                    "coeff": coeff.to_string(),
                })
            })
            .collect();
        serde_json::Value::Array(terms)
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let items = value
            .as_array()
            .ok_or_else(|| Error::invalid("polynomial JSON must be an array"))?;
        let mut poly = WordPolynomial::zero();
        for item in items {
            let factors = item
                .get("monomial")
                .and_then(|m| m.as_array())
                .ok_or_else(|| Error::invalid("missing monomial"))?
                .iter()
                .map(|w| {
                    w.as_str()
                        .ok_or_else(|| Error::invalid("monomial entries are strings"))
                        .and_then(Word::from_str)
                })
                .collect::<Result<Vec<Word>>>()?;
            let coeff = item
                .get("coeff")
                .and_then(|c| c.as_str())
                .ok_or_else(|| Error::invalid("missing coeff"))?;
            let coeff = BigRational::from_str(coeff)
                .map_err(|_| Error::invalid(format!("bad rational {coeff:?}")))?;
            poly.add_scaled(&WordPolynomial::monomial(factors, BigRational::one()), &coeff);
        }
        Ok(poly)
    }
}

/// The truncated shuffle algebra with all tables cached.
#[derive(Debug)]
pub struct ShuffleAlgebra {
    alphabet_size: u8,
    truncation_level: usize,
    words: Vec<Vec<Word>>,
    lyndon: Vec<Vec<Word>>,
    products: HashMap<(Word, Word), WordSum>,
    coproducts: HashMap<Word, Vec<(Word, Word)>>,
    radford: HashMap<Word, WordPolynomial>,
}

impl ShuffleAlgebra {
    /// Builds every table for the given alphabet size and truncation level.
    pub fn new(alphabet_size: u8, truncation_level: usize) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::invalid("alphabet must have at least one letter"));
        }
        if truncation_level == 0 || truncation_level > 12 {
            return Err(Error::invalid(format!(
                "truncation level {truncation_level} outside 1..=12"
            )));
        }

        let words = enumerate_words(alphabet_size, truncation_level);
        let lyndon = enumerate_lyndon(alphabet_size, truncation_level);
        for (degree, row) in lyndon.iter().enumerate().skip(1) {
            let expected = lyndon_count(alphabet_size as u64, degree as u64);
            if row.len() as u64 != expected {
                return Err(Error::invalid(format!(
                    "Lyndon generation produced {} words of degree {degree}, expected {expected}",
                    row.len()
                )));
            }
        }

        let products = build_products(&words, truncation_level)?;
        let coproducts = build_coproducts(&words);
        let radford = build_radford(&words, &products)?;

        Ok(ShuffleAlgebra {
            alphabet_size,
            truncation_level,
            words,
            lyndon,
            products,
            coproducts,
            radford,
        })
    }

    pub fn alphabet_size(&self) -> u8 {
        self.alphabet_size
    }

    pub fn truncation_level(&self) -> usize {
        self.truncation_level
    }

    /// All words of the given degree, lexicographic.  Degree 0 is the unit.
    pub fn words(&self, degree: usize) -> Result<&[Word]> {
        self.words
            .get(degree)
            .map(|w| w.as_slice())
            .ok_or(Error::TruncationExceeded {
                degree,
                max: self.truncation_level,
            })
    }

    /// Lyndon words of the given degree, lexicographic.
    pub fn lyndon_words(&self, degree: usize) -> Result<&[Word]> {
        if degree == 0 || degree > self.truncation_level {
            return Err(Error::TruncationExceeded {
                degree,
                max: self.truncation_level,
            });
        }
        Ok(self.lyndon[degree].as_slice())
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        if w.degree() > self.truncation_level {
            return Err(Error::TruncationExceeded {
                degree: w.degree(),
                max: self.truncation_level,
            });
        }
        if w.letters().iter().any(|&l| l > self.alphabet_size) {
            return Err(Error::invalid(format!(
                "word {w} uses letters outside the alphabet 1..={}",
                self.alphabet_size
            )));
        }
        Ok(())
    }

    /// The shuffle product as a nonnegative-integer word combination.
    pub fn shuffle_product(&self, u: &Word, v: &Word) -> Result<&WordSum> {
        self.check_word(u)?;
        self.check_word(v)?;
        if u.degree() + v.degree() > self.truncation_level {
            return Err(Error::TruncationExceeded {
                degree: u.degree() + v.degree(),
                max: self.truncation_level,
            });
        }
        Ok(&self.products[&(u.clone(), v.clone())])
    }

    /// Deconcatenation over proper splits: degree-1 words give the empty sum.
    pub fn reduced_coproduct(&self, w: &Word) -> Result<&[(Word, Word)]> {
        self.check_word(w)?;
        if w.is_unit() {
            return Err(Error::invalid("reduced coproduct needs degree >= 1"));
        }
        Ok(self.coproducts[w].as_slice())
    }

    /// `(Id ⊗ Δ')Δ'w − (Δ' ⊗ Id)Δ'w`, which coassociativity makes zero.
    pub fn coassociativity_defect(&self, w: &Word) -> Result<TensorCube> {
        self.check_word(w)?;
        if w.is_unit() {
            return Err(Error::invalid("coassociativity defect needs degree >= 1"));
        }
        let mut defect: TensorCube = BTreeMap::new();
        for (w1, w2) in self.reduced_coproduct(w)? {
            if !w2.is_unit() && w2.degree() >= 2 {
                for (a, b) in self.reduced_coproduct(w2)? {
                    add_term(
                        &mut defect,
                        (w1.clone(), a.clone(), b.clone()),
                        BigInt::one(),
                    );
                }
            }
        }
        for (w1, w2) in self.reduced_coproduct(w)? {
            if !w1.is_unit() && w1.degree() >= 2 {
                for (a, b) in self.reduced_coproduct(w1)? {
                    add_term(
                        &mut defect,
                        (a.clone(), b.clone(), w2.clone()),
                        -BigInt::one(),
                    );
                }
            }
        }
        prune(&mut defect);
        Ok(defect)
    }

    /// The unique expression of a word as a shuffle polynomial in Lyndon
    /// words; expanding it through [`WordPolynomial::expand`] reproduces the
    /// word exactly.
    pub fn radford_decompose(&self, w: &Word) -> Result<&WordPolynomial> {
        self.check_word(w)?;
        Ok(&self.radford[w])
    }
}

fn enumerate_words(d: u8, n_max: usize) -> Vec<Vec<Word>> {
    let mut out = vec![vec![Word::unit()]];
    for degree in 1..=n_max {
        let prev = &out[degree - 1];
        let mut row = Vec::with_capacity(prev.len() * d as usize);
        for w in prev {
            for l in 1..=d {
                row.push(w.appending(l));
            }
        }
        row.sort();
        out.push(row);
    }
    out
}

/// Duval's generation of all Lyndon words of length at most `n_max`.
fn enumerate_lyndon(d: u8, n_max: usize) -> Vec<Vec<Word>> {
    let mut by_degree: Vec<Vec<Word>> = vec![Vec::new(); n_max + 1];
    let mut w: Vec<u8> = vec![1];
    loop {
        by_degree[w.len()].push(Word { letters: w.clone() });
        let len = w.len();
        let mut t = Vec::with_capacity(n_max);
        for idx in 0..n_max {
            t.push(w[idx % len]);
        }
        w = t;
        while let Some(&last) = w.last() {
            if last == d {
                w.pop();
            } else {
                break;
            }
        }
        if w.is_empty() {
            break;
        }
        *w.last_mut().unwrap() += 1;
    }
    for row in &mut by_degree {
        row.sort();
    }
    by_degree
}

/// Number of Lyndon words of length `n` over `q` letters (necklace count):
/// `(1/n) * sum_{e | n} mu(e) q^(n/e)`.
fn lyndon_count(q: u64, n: u64) -> u64 {
    let mut total: i128 = 0;
    for e in 1..=n {
        if n % e == 0 {
            total += i128::from(moebius(e)) * (q as i128).pow((n / e) as u32);
        }
    }
    (total / n as i128) as u64
}

fn moebius(mut n: u64) -> i32 {
    let mut primes = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if n > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Duval's factorization into non-increasing Lyndon factors.
fn duval_factorize(s: &[u8]) -> Vec<Word> {
    let mut out = Vec::new();
    let n = s.len();
    let mut i = 0;
    while i < n {
        let (mut j, mut k) = (i + 1, i);
        while j < n && s[k] <= s[j] {
            if s[k] < s[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            out.push(Word {
                letters: s[i..i + j - k].to_vec(),
            });
            i += j - k;
        }
    }
    out
}

fn build_products(
    words: &[Vec<Word>],
    n_max: usize,
) -> Result<HashMap<(Word, Word), WordSum>> {
    let mut table: HashMap<(Word, Word), WordSum> = HashMap::new();
    for total in 0..=n_max {
        for p in 0..=total {
            let q = total - p;
            for u in &words[p] {
                for v in &words[q] {
                    let sum = if u.is_unit() {
                        BTreeMap::from([(v.clone(), BigInt::one())])
                    } else if v.is_unit() {
                        BTreeMap::from([(u.clone(), BigInt::one())])
                    } else {
                        let (u_head, a) = u.dropping_last();
                        let (v_head, b) = v.dropping_last();
                        let mut sum: WordSum = BTreeMap::new();
                        for (z, c) in &table[&(u_head.clone(), v.clone())] {
                            add_term(&mut sum, z.appending(a), c.clone());
                        }
                        for (z, c) in &table[&(u.clone(), v_head.clone())] {
                            add_term(&mut sum, z.appending(b), c.clone());
                        }
                        sum
                    };
                    // Grading: the product of degrees p and q lives in p + q.
                    debug_assert!(sum.keys().all(|w| w.degree() == total));
                    if sum.keys().any(|w| w.degree() != total) {
                        return Err(Error::invalid("shuffle table violated the grading"));
                    }
                    table.insert((u.clone(), v.clone()), sum);
                }
            }
        }
    }
    Ok(table)
}

fn build_coproducts(words: &[Vec<Word>]) -> HashMap<Word, Vec<(Word, Word)>> {
    let mut table = HashMap::new();
    for row in words.iter().skip(1) {
        for w in row {
            let n = w.degree();
            let splits: Vec<(Word, Word)> = (1..n).map(|k| (w.prefix(k), w.suffix(k))).collect();
            table.insert(w.clone(), splits);
        }
    }
    table
}

fn build_radford(
    words: &[Vec<Word>],
    products: &HashMap<(Word, Word), WordSum>,
) -> Result<HashMap<Word, WordPolynomial>> {
    let mut memo: HashMap<Word, WordPolynomial> = HashMap::new();
    memo.insert(
        Word::unit(),
        WordPolynomial::monomial(vec![], BigRational::one()),
    );
    for row in words.iter().skip(1) {
        for w in row {
            let mut in_progress = Vec::new();
            decompose_word(w, products, &mut memo, &mut in_progress)?;
        }
    }
    Ok(memo)
}

fn decompose_word(
    w: &Word,
    products: &HashMap<(Word, Word), WordSum>,
    memo: &mut HashMap<Word, WordPolynomial>,
    in_progress: &mut Vec<Word>,
) -> Result<()> {
    if memo.contains_key(w) {
        return Ok(());
    }
    if in_progress.contains(w) {
        return Err(Error::invalid(format!(
            "triangular elimination cycled on word {w}"
        )));
    }
    if w.is_lyndon() {
        memo.insert(
            w.clone(),
            WordPolynomial::monomial(vec![w.clone()], BigRational::one()),
        );
        return Ok(());
    }
    in_progress.push(w.clone());

    // Shuffle together the Lyndon factors of w; the factorization shuffle
    // hits w with a positive multiplicity and otherwise only words strictly
    // on one side of w in lexicographic order.
    let factors = duval_factorize(w.letters());
    let mut acc: WordSum = BTreeMap::from([(Word::unit(), BigInt::one())]);
    for f in &factors {
        let mut next: WordSum = BTreeMap::new();
        for (z, c) in &acc {
            for (word, coeff) in &products[&(z.clone(), f.clone())] {
                add_term(&mut next, word.clone(), c * coeff);
            }
        }
        prune(&mut next);
        acc = next;
    }
    let lead = acc
        .get(w)
        .cloned()
        .filter(|c| c.is_positive())
        .ok_or_else(|| Error::invalid(format!("factorization shuffle missed the word {w}")))?;
    let lead = BigRational::from_integer(lead);

    let mut poly = WordPolynomial::monomial(factors, lead.recip());
    for (v, c) in &acc {
        if v == w {
            continue;
        }
        decompose_word(v, products, memo, in_progress)?;
        let scale = -BigRational::from_integer(c.clone()) / &lead;
        let sub = memo[v].clone();
        poly.add_scaled(&sub, &scale);
    }
    in_progress.pop();
    memo.insert(w.clone(), poly);
    Ok(())
}
