//! Formal linear combinations of words in the generators of `U_q(g)`.
//!
//! No relations are imposed: two words are equal only if they are the same
//! sequence of symbols. Hopf operations act letter by letter.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cartan::CartanData;
use crate::error::{Error, Result};
use crate::scalar::Rf;

/// A generator symbol. Indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Gen {
    E(usize),
    F(usize),
    K(usize),
    /// `k_i⁻¹`
    Kinv(usize),
}

impl Gen {
    pub fn index(self) -> usize {
        match self {
            Gen::E(i) | Gen::F(i) | Gen::K(i) | Gen::Kinv(i) => i,
        }
    }

    /// All generators of an algebra of the given rank.
    pub fn all(rank: usize) -> Vec<Gen> {
        (0..rank)
            .flat_map(|i| [Gen::E(i), Gen::F(i), Gen::K(i), Gen::Kinv(i)])
            .collect()
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::E(i) => write!(f, "e{}", i + 1),
            Gen::F(i) => write!(f, "f{}", i + 1),
            Gen::K(i) => write!(f, "k{}", i + 1),
            Gen::Kinv(i) => write!(f, "k{}^-1", i + 1),
        }
    }
}

impl FromStr for Gen {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad generator `{s}`"));
        let s = s.trim();
        let (body, inv) = match s.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (s, false),
        };
        if body.len() < 2 {
            return Err(bad());
        }
        let idx: usize = body[1..].parse().map_err(|_| bad())?;
        if idx == 0 {
            return Err(bad());
        }
        let i = idx - 1;
        match (&body[..1], inv) {
            ("e", false) => Ok(Gen::E(i)),
            ("f", false) => Ok(Gen::F(i)),
            ("k", false) => Ok(Gen::K(i)),
            ("k", true) => Ok(Gen::Kinv(i)),
            _ => Err(bad()),
        }
    }
}

pub type Word = Vec<Gen>;

fn fmt_word(w: &[Gen]) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("*")
    }
}

fn add_term<K: Ord>(map: &mut BTreeMap<K, Rf>, key: K, c: Rf) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Element of the free algebra on `{e_i, f_i, k_i, k_i⁻¹}` over `Q(v)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AlgebraWord {
    terms: BTreeMap<Word, Rf>,
}

impl AlgebraWord {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Rf::one())
    }

    pub fn scalar(c: Rf) -> Self {
        Self::monomial(Vec::new(), c)
    }

    pub fn monomial(w: Word, c: Rf) -> Self {
        let mut terms = BTreeMap::new();
        add_term(&mut terms, w, c);
        AlgebraWord { terms }
    }

    pub fn gen(g: Gen) -> Self {
        Self::monomial(vec![g], Rf::one())
    }

    pub fn word(w: &[Gen]) -> Self {
        Self::monomial(w.to_vec(), Rf::one())
    }

    pub fn e(i: usize) -> Self {
        Self::gen(Gen::E(i))
    }

    pub fn f(i: usize) -> Self {
        Self::gen(Gen::F(i))
    }

    pub fn k(i: usize) -> Self {
        Self::gen(Gen::K(i))
    }

    pub fn kinv(i: usize) -> Self {
        Self::gen(Gen::Kinv(i))
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Rf)>>(it: I) -> Self {
        let mut terms = BTreeMap::new();
        for (w, c) in it {
            add_term(&mut terms, w, c);
        }
        AlgebraWord { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rf)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rf) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), x * c)))
    }

    /// Apply an algebra antihomomorphism given on generators.
    fn anti_map(&self, img: impl Fn(Gen) -> AlgebraWord) -> Self {
        let mut out = AlgebraWord::zero();
        for (w, c) in &self.terms {
            let mut acc = AlgebraWord::scalar(c.clone());
            for &g in w.iter().rev() {
                acc = &acc * &img(g);
            }
            out = &out + &acc;
        }
        out
    }

    /// Apply an algebra homomorphism given on generators.
    pub fn hom_map(&self, img: impl Fn(Gen) -> AlgebraWord) -> Self {
        let mut out = AlgebraWord::zero();
        for (w, c) in &self.terms {
            let mut acc = AlgebraWord::scalar(c.clone());
            for &g in w {
                acc = &acc * &img(g);
            }
            out = &out + &acc;
        }
        out
    }

    /// `S(e_i) = −q_i e_i`, `S(f_i) = −q_i⁻¹ f_i`, `S(k_i^{±1}) = k_i^{∓1}`.
    pub fn antipode(&self, cd: &CartanData) -> Self {
        self.anti_map(|g| antipode_gen(cd, g, 1))
    }

    /// `S⁻¹(e_i) = −q_i⁻¹ e_i`, `S⁻¹(f_i) = −q_i f_i`.
    pub fn antipode_inv(&self, cd: &CartanData) -> Self {
        self.anti_map(|g| antipode_gen(cd, g, -1))
    }

    /// Compact `*`: conjugate-linear antihomomorphism with `e_i* = f_i`,
    /// `f_i* = e_i`, `k_i* = k_i`. Scalars are fixed since `q` is real.
    pub fn star(&self) -> Self {
        self.anti_map(|g| {
            AlgebraWord::gen(match g {
                Gen::E(i) => Gen::F(i),
                Gen::F(i) => Gen::E(i),
                other => other,
            })
        })
    }

    /// Quantum Cartan involution `θ = * ∘ S`.
    pub fn theta(&self, cd: &CartanData) -> Self {
        self.antipode(cd).star()
    }

    pub fn counit(&self) -> Rf {
        let mut acc = Rf::zero();
        for (w, c) in &self.terms {
            if w.iter().all(|g| matches!(g, Gen::K(_) | Gen::Kinv(_))) {
                acc += c;
            }
        }
        acc
    }

    /// `Δ(e_i) = e_i⊗k_i + k_i⁻¹⊗e_i`, `Δ(f_i) = f_i⊗k_i + k_i⁻¹⊗f_i`,
    /// `Δ(k_i^{±1}) = k_i^{±1}⊗k_i^{±1}`, extended multiplicatively.
    pub fn coproduct(&self) -> WordTensor {
        let mut out = WordTensor::zero();
        for (w, c) in &self.terms {
            let mut acc = WordTensor::from_pair(Vec::new(), Vec::new(), c.clone());
            for &g in w {
                acc = acc.mul(&coproduct_gen(g));
            }
            out = out.add(&acc);
        }
        out
    }
}

fn antipode_gen(cd: &CartanData, g: Gen, sign: i32) -> AlgebraWord {
    let qi = |i: usize| Rf::v_pow(2 * cd.d(i) as i32 * sign);
    match g {
        Gen::E(i) => AlgebraWord::e(i).scale(&-qi(i)),
        Gen::F(i) => AlgebraWord::f(i).scale(&-qi(i).inv().expect("nonzero")),
        Gen::K(i) => AlgebraWord::kinv(i),
        Gen::Kinv(i) => AlgebraWord::k(i),
    }
}

fn coproduct_gen(g: Gen) -> WordTensor {
    let one = Rf::one();
    match g {
        Gen::E(i) | Gen::F(i) => {
            let a = WordTensor::from_pair(vec![g], vec![Gen::K(i)], one.clone());
            let b = WordTensor::from_pair(vec![Gen::Kinv(i)], vec![g], one);
            a.add(&b)
        }
        Gen::K(_) | Gen::Kinv(_) => WordTensor::from_pair(vec![g], vec![g], one),
    }
}

impl<'a> Add<&'a AlgebraWord> for &'a AlgebraWord {
    type Output = AlgebraWord;
    fn add(self, rhs: &AlgebraWord) -> AlgebraWord {
        let mut terms = self.terms.clone();
        for (w, c) in &rhs.terms {
            add_term(&mut terms, w.clone(), c.clone());
        }
        AlgebraWord { terms }
    }
}

impl Neg for &AlgebraWord {
    type Output = AlgebraWord;
    fn neg(self) -> AlgebraWord {
        self.scale(&Rf::from_int(-1))
    }
}

impl<'a> Sub<&'a AlgebraWord> for &'a AlgebraWord {
    type Output = AlgebraWord;
    fn sub(self, rhs: &AlgebraWord) -> AlgebraWord {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a AlgebraWord> for &'a AlgebraWord {
    type Output = AlgebraWord;
    fn mul(self, rhs: &AlgebraWord) -> AlgebraWord {
        let mut terms = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                add_term(&mut terms, w, x * y);
            }
        }
        AlgebraWord { terms }
    }
}

impl fmt::Display for AlgebraWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                if c.is_one() {
                    fmt_word(w)
                } else {
                    format!("({})*{}", c.to_canonical(), fmt_word(w))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for AlgebraWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for AlgebraWord {
    type Err = Error;

    /// Parses sums of terms `[(coef)*]g1*g2*...`, where a coefficient is a
    /// canonical rational function in parentheses and generators are
    /// `e1`, `f2`, `k1`, `k1^-1`; `1` is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = AlgebraWord::zero();
        for raw in split_top_level(s, " + ") {
            let t = raw.trim();
            if t.is_empty() {
                return Err(Error::Parse(format!("empty term in `{s}`")));
            }
            let (coef, rest) = if let Some(stripped) = t.strip_prefix('(') {
                let close = matching_paren(stripped)
                    .ok_or_else(|| Error::Parse(format!("unbalanced `(` in `{t}`")))?;
                let inner = &stripped[..close];
                let c = Rf::parse_canonical(inner).or_else(|e| {
                    crate::scalar::parse_rational(inner)
                        .map(Rf::from_rational)
                        .map_err(|_| e)
                })?;
                let rest = stripped[close + 1..].trim_start_matches('*');
                (c, rest)
            } else {
                (Rf::one(), t)
            };
            let mut w = Vec::new();
            for tok in rest.split('*').map(str::trim).filter(|x| !x.is_empty()) {
                if tok == "1" {
                    continue;
                }
                if let Some(b) = tok.strip_suffix("^-1") {
                    w.push(b.parse::<Gen>().and_then(|g| match g {
                        Gen::K(i) => Ok(Gen::Kinv(i)),
                        _ => Err(Error::Parse(format!("only k may be inverted: `{tok}`"))),
                    })?);
                } else {
                    w.push(tok.parse()?);
                }
            }
            out = &out + &AlgebraWord::monomial(w, coef);
        }
        Ok(out)
    }
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 1;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn split_top_level<'a>(s: &'a str, sep: &str) -> Vec<&'a str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && s[i..].starts_with(sep) {
            out.push(&s[start..i]);
            i += sep.len();
            start = i;
            continue;
        }
        i += 1;
    }
    out.push(&s[start..]);
    out
}

/// Element of the free tensor square, used for coproducts of words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct WordTensor {
    terms: BTreeMap<(Word, Word), Rf>,
}

impl WordTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_pair(a: Word, b: Word, c: Rf) -> Self {
        let mut terms = BTreeMap::new();
        add_term(&mut terms, (a, b), c);
        WordTensor { terms }
    }

    /// `a ⊗ b` for general elements.
    pub fn tensor(a: &AlgebraWord, b: &AlgebraWord) -> Self {
        let mut terms = BTreeMap::new();
        for (wa, x) in a.terms() {
            for (wb, y) in b.terms() {
                add_term(&mut terms, (wa.clone(), wb.clone()), x * y);
            }
        }
        WordTensor { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Rf)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &WordTensor) -> WordTensor {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            add_term(&mut terms, k.clone(), c.clone());
        }
        WordTensor { terms }
    }

    pub fn sub(&self, other: &WordTensor) -> WordTensor {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            add_term(&mut terms, k.clone(), -c);
        }
        WordTensor { terms }
    }

    /// Componentwise product `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn mul(&self, other: &WordTensor) -> WordTensor {
        let mut terms = BTreeMap::new();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let mut l = a.clone();
                l.extend_from_slice(c);
                let mut r = b.clone();
                r.extend_from_slice(d);
                add_term(&mut terms, (l, r), x * y);
            }
        }
        WordTensor { terms }
    }
}

impl fmt::Display for WordTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                let body = format!("{} ⊗ {}", fmt_word(a), fmt_word(b));
                if c.is_one() {
                    body
                } else {
                    format!("({})*{}", c.to_canonical(), body)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for WordTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
