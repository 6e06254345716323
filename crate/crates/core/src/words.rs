//! Words in surface braid groups, free groups, classical braid groups and
//! holed-disk braid groups, with their evaluations and Fox calculus.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{parse_err, HeisError, Result};
use crate::group_ring::{GroupElement, RingElement};
use crate::heisenberg::{HeisenbergElement, QuotientSpec};
use crate::laurent::Monomial;

/// A generator of the surface braid group `π_{n,g}` (zero-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceGen {
    Alpha(usize),
    Beta(usize),
    /// Exchange of strands `j+1` and `j+2`.
    Sigma(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceLetter {
    pub gen: SurfaceGen,
    pub inverse: bool,
}

impl SurfaceLetter {
    pub fn new(gen: SurfaceGen, inverse: bool) -> Self {
        SurfaceLetter { gen, inverse }
    }
    pub fn inv(self) -> Self {
        SurfaceLetter { gen: self.gen, inverse: !self.inverse }
    }
}

impl fmt::Display for SurfaceLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, i) = match self.gen {
            SurfaceGen::Alpha(i) => ('a', i),
            SurfaceGen::Beta(i) => ('b', i),
            SurfaceGen::Sigma(i) => ('s', i),
        };
        let c = if self.inverse { c.to_ascii_uppercase() } else { c };
        write!(f, "{c}{}", i + 1)
    }
}

/// A word in `α_i^±1, β_i^±1, σ_j^±1` for the braid group of `n` points on `Σ_{g,1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceBraidWord {
    g: usize,
    n: usize,
    letters: Vec<SurfaceLetter>,
}

impl SurfaceBraidWord {
    pub fn empty(g: usize, n: usize) -> Self {
        SurfaceBraidWord { g, n, letters: Vec::new() }
    }

    pub fn new(g: usize, n: usize, letters: Vec<SurfaceLetter>) -> Result<Self> {
        let w = SurfaceBraidWord { g, n, letters };
        for (pos, l) in w.letters.iter().enumerate() {
            w.check_letter(l).map_err(|msg| HeisError::Index(format!("letter {pos}: {msg}")))?;
        }
        Ok(w)
    }

    fn check_letter(&self, l: &SurfaceLetter) -> std::result::Result<(), String> {
        match l.gen {
            SurfaceGen::Alpha(i) | SurfaceGen::Beta(i) if i >= self.g => {
                Err(format!("handle index {} outside 1..={}", i + 1, self.g))
            }
            SurfaceGen::Sigma(j) if j + 1 >= self.n => {
                Err(format!("strand exchange index {} outside 1..={}", j + 1, self.n.saturating_sub(1)))
            }
            _ => Ok(()),
        }
    }

    /// Parses `A1 B1 a1 b1 s1`; uppercase is the inverse, `^k` repeats a letter.
    pub fn parse(text: &str, g: usize, n: usize) -> Result<Self> {
        let mut w = Self::empty(g, n);
        for (pos, c, idx, exp) in tokenize_indexed(text, "abs")? {
            let gen = match c.to_ascii_lowercase() {
                'a' => SurfaceGen::Alpha(idx),
                'b' => SurfaceGen::Beta(idx),
                _ => SurfaceGen::Sigma(idx),
            };
            let letter = SurfaceLetter::new(gen, (exp < 0) != c.is_ascii_uppercase());
            if let Err(msg) = w.check_letter(&letter) {
                return parse_err(pos, msg);
            }
            for _ in 0..exp.unsigned_abs() {
                w.letters.push(letter);
            }
        }
        Ok(w)
    }

    pub fn genus(&self) -> usize {
        self.g
    }
    pub fn strands(&self) -> usize {
        self.n
    }
    pub fn letters(&self) -> &[SurfaceLetter] {
        &self.letters
    }
    pub fn len(&self) -> usize {
        self.letters.len()
    }
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, l: SurfaceLetter) -> Result<()> {
        self.check_letter(&l).map_err(HeisError::Index)?;
        self.letters.push(l);
        Ok(())
    }

    /// Same letters viewed in a surface/configuration of larger size.
    pub fn embed(&self, g: usize, n: usize) -> Result<Self> {
        Self::new(g, n, self.letters.clone())
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if (self.g, self.n) != (other.g, other.n) {
            return Err(HeisError::Dimension("surface words of different shapes".into()));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(SurfaceBraidWord { g: self.g, n: self.n, letters })
    }

    pub fn extend(&mut self, other: &Self) {
        assert_eq!((self.g, self.n), (other.g, other.n), "surface words of different shapes");
        self.letters.extend_from_slice(&other.letters);
    }

    pub fn inverse(&self) -> Self {
        SurfaceBraidWord { g: self.g, n: self.n, letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        SurfaceBraidWord { g: self.g, n: self.n, letters }
    }

    /// `x y x^-1 y^-1`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.concat(other)?.concat(&self.inverse())?.concat(&other.inverse())
    }
}

impl fmt::Display for SurfaceBraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Evaluates a word under `α_i ↦ a_i`, `β_i ↦ b_i`, `σ_j ↦ σ` and reduces by `q`.
///
/// Accumulates with machine integers: a word of length `L` has exponents
/// bounded by `L` and `|l| ≤ 2L²`, so `i128` cannot overflow for any word
/// that fits in memory.
pub fn eval_heisenberg(w: &SurfaceBraidWord, q: QuotientSpec) -> HeisenbergElement {
    let mut acc = HeisAccumulator::new(w.g);
    acc.push_word(w.letters());
    acc.finish(q)
}

/// Incremental right multiplication by letters; see [`eval_heisenberg`].
#[derive(Clone, Debug)]
pub struct HeisAccumulator {
    m: Vec<i128>,
    n: Vec<i128>,
    l: i128,
}

impl HeisAccumulator {
    pub fn new(g: usize) -> Self {
        HeisAccumulator { m: vec![0; g], n: vec![0; g], l: 0 }
    }

    #[inline]
    pub fn push(&mut self, letter: SurfaceLetter) {
        let e: i128 = if letter.inverse { -1 } else { 1 };
        match letter.gen {
            SurfaceGen::Alpha(i) => {
                self.l -= 2 * self.n[i] * e;
                self.m[i] += e;
            }
            SurfaceGen::Beta(i) => self.n[i] += e,
            SurfaceGen::Sigma(_) => self.l += e,
        }
    }

    pub fn push_word(&mut self, letters: &[SurfaceLetter]) {
        for &l in letters {
            self.push(l);
        }
    }

    /// `Some(l)` when the accumulated element is `σ^l`.
    pub fn central_exponent(&self) -> Option<i128> {
        (self.m.iter().chain(&self.n).all(|&x| x == 0)).then_some(self.l)
    }

    pub fn finish(&self, q: QuotientSpec) -> HeisenbergElement {
        let big = |v: &[i128]| v.iter().map(|&x| BigInt::from(x)).collect();
        HeisenbergElement::from_parts_unchecked(big(&self.m), big(&self.n), BigInt::from(self.l), q)
    }
}

/// The word `([α_{h}^-1, β_{h}^-1] …)^ε` over the given handles (zero-based),
/// where `[x, y] = x y x^-1 y^-1`.
pub fn separating_word_on(g: usize, handles: &[usize], eps: i32) -> Result<SurfaceBraidWord> {
    if eps != 1 && eps != -1 {
        return Err(HeisError::Invalid("ε must be ±1".into()));
    }
    let mut letters = Vec::with_capacity(4 * handles.len());
    for &h in handles {
        if h >= g {
            return Err(HeisError::Index(format!("handle {} outside 1..={g}", h + 1)));
        }
        letters.push(SurfaceLetter::new(SurfaceGen::Alpha(h), true));
        letters.push(SurfaceLetter::new(SurfaceGen::Beta(h), true));
        letters.push(SurfaceLetter::new(SurfaceGen::Alpha(h), false));
        letters.push(SurfaceLetter::new(SurfaceGen::Beta(h), false));
    }
    let w = SurfaceBraidWord { g, n: 1, letters };
    Ok(if eps == 1 { w } else { w.inverse() })
}

/// A based loop around the first `k` handles; its image is `σ^{2εk}`.
pub fn separating_word(g: usize, k: usize, eps: i32) -> Result<SurfaceBraidWord> {
    if k > g {
        return Err(HeisError::Invalid(format!("separating genus {k} exceeds surface genus {g}")));
    }
    separating_word_on(g, &(0..k).collect::<Vec<_>>(), eps)
}

/// A freely reduced word in `x_1 … x_rank`. Letters are stored as `±i`
/// (one-based), negative meaning inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<i32>,
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        FreeWord { rank, letters: Vec::new() }
    }

    /// `x_{i+1}^{±1}` (zero-based index).
    pub fn generator(rank: usize, i: usize, inverse: bool) -> Self {
        assert!(i < rank, "generator index out of range");
        let s = (i + 1) as i32;
        FreeWord { rank, letters: vec![if inverse { -s } else { s }] }
    }

    /// Builds and freely reduces a word from signed one-based letters.
    pub fn from_letters(rank: usize, letters: &[i32]) -> Result<Self> {
        let mut w = Self::identity(rank);
        for &l in letters {
            if l == 0 || l.unsigned_abs() as usize > rank {
                return Err(HeisError::Index(format!("letter {l} outside rank {rank}")));
            }
            w.push(l);
        }
        Ok(w)
    }

    /// Parses `x1 X2 x1^-2`.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let mut w = Self::identity(rank);
        for (pos, c, idx, exp) in tokenize_indexed(text, "x")? {
            if idx >= rank {
                return parse_err(pos, format!("generator index {} outside 1..={rank}", idx + 1));
            }
            let s = (idx + 1) as i32;
            let s = if (exp < 0) != c.is_ascii_uppercase() { -s } else { s };
            for _ in 0..exp.unsigned_abs() {
                w.push(s);
            }
        }
        Ok(w)
    }

    fn push(&mut self, l: i32) {
        if self.letters.last() == Some(&-l) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn letters(&self) -> &[i32] {
        &self.letters
    }
    pub fn len(&self) -> usize {
        self.letters.len()
    }
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "free words of different rank");
        let mut out = self.clone();
        for &l in &other.letters {
            out.push(l);
        }
        out
    }

    pub fn inverse(&self) -> Self {
        FreeWord { rank: self.rank, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// Substitutes `x_i ↦ images[i]`.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let rank = images.first().map_or(self.rank, |w| w.rank);
        let mut out = FreeWord::identity(rank);
        for &l in &self.letters {
            let img = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                for &x in &img.letters {
                    out.push(x);
                }
            } else {
                for &x in img.letters.iter().rev() {
                    out.push(-x);
                }
            }
        }
        out
    }

    /// Exponent sum of each generator.
    pub fn abelianization(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for &l in &self.letters {
            v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        v
    }
}

impl GroupElement for FreeWord {
    fn op(&self, other: &Self) -> Self {
        self.concat(other)
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| if l > 0 { format!("x{l}") } else { format!("X{}", -l) })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

pub type FreeGroupRing = RingElement<FreeWord>;

impl RingElement<FreeWord> {
    pub fn one_free(rank: usize) -> Self {
        Self::from_group(FreeWord::identity(rank))
    }
}

/// Fox derivative `∂w/∂x_{i+1}` (zero-based index) in `Z[F_rank]`.
pub fn fox_derivative(w: &FreeWord, i: usize) -> Result<FreeGroupRing> {
    if i >= w.rank {
        return Err(HeisError::Index(format!("generator {} outside rank {}", i + 1, w.rank)));
    }
    let target = (i + 1) as i32;
    let mut out = FreeGroupRing::zero();
    let mut prefix = FreeWord::identity(w.rank);
    for &l in &w.letters {
        if l == target {
            out.add_term(prefix.clone(), BigInt::one());
        } else if l == -target {
            let mut p = prefix.clone();
            p.push(l);
            out.add_term(p, -BigInt::one());
        }
        prefix.push(l);
    }
    Ok(out)
}

/// A word in the Artin generators `σ_i^±1` of the braid group on `k` strands,
/// stored as signed one-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    k: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(k: usize, letters: Vec<i32>) -> Result<Self> {
        for (pos, &l) in letters.iter().enumerate() {
            if l == 0 || l.unsigned_abs() as usize >= k {
                return Err(HeisError::Index(format!("letter {pos} (σ_{l}) invalid for {k} strands")));
            }
        }
        Ok(BraidWord { k, letters })
    }

    /// Parses `s1 s2 S1` (uppercase is the inverse).
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for (pos, c, idx, exp) in tokenize_indexed(text, "s")? {
            if idx + 1 >= k {
                return parse_err(pos, format!("generator index {} outside 1..={}", idx + 1, k.saturating_sub(1)));
            }
            let s = (idx + 1) as i32;
            let s = if (exp < 0) != c.is_ascii_uppercase() { -s } else { s };
            letters.extend(std::iter::repeat(s).take(exp.unsigned_abs() as usize));
        }
        Ok(BraidWord { k, letters })
    }

    pub fn strands(&self) -> usize {
        self.k
    }
    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn concat(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k, "braid words on different strand counts");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { k: self.k, letters }
    }

    pub fn inverse(&self) -> Self {
        BraidWord { k: self.k, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// The induced permutation `π` with `π_{b1 b2} = π_{b1} ∘ π_{b2}`;
    /// entry `j` is the image of strand `j` (zero-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.k).collect();
        for &l in self.letters.iter().rev() {
            let i = l.unsigned_abs() as usize - 1;
            for x in p.iter_mut() {
                if *x == i {
                    *x = i + 1;
                } else if *x == i + 1 {
                    *x = i;
                }
            }
        }
        p
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().iter().enumerate().all(|(i, &p)| i == p)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| if l > 0 { format!("s{l}") } else { format!("S{}", -l) })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Image of `x_j` (zero-based) under the Artin generator `σ_i^{±1}`.
fn artin_generator_image(k: usize, letter: i32, j: usize) -> FreeWord {
    let i = letter.unsigned_abs() as usize - 1;
    let x = |idx: usize, inv: bool| FreeWord::generator(k, idx, inv);
    if letter > 0 {
        if j == i {
            x(i, false).concat(&x(i + 1, false)).concat(&x(i, true))
        } else if j == i + 1 {
            x(i, false)
        } else {
            x(j, false)
        }
    } else if j == i {
        x(i + 1, false)
    } else if j == i + 1 {
        x(i + 1, true).concat(&x(i, false)).concat(&x(i + 1, false))
    } else {
        x(j, false)
    }
}

/// Images of `x_1 … x_k` under the automorphism of `b`. Composition is a
/// left action: `(b1 b2)(w) = b1(b2(w))`.
pub fn artin_images(b: &BraidWord) -> Vec<FreeWord> {
    let k = b.k;
    let mut images: Vec<FreeWord> = (0..k).map(|j| FreeWord::generator(k, j, false)).collect();
    for &letter in b.letters.iter().rev() {
        let gen: Vec<FreeWord> = (0..k).map(|j| artin_generator_image(k, letter, j)).collect();
        images = images.iter().map(|w| w.substitute(&gen)).collect();
    }
    images
}

/// Applies the Artin automorphism of `b` to `w`.
pub fn artin_action(b: &BraidWord, w: &FreeWord) -> Result<FreeWord> {
    if b.k != w.rank {
        return Err(HeisError::Dimension(format!("braid on {} strands, word of rank {}", b.k, w.rank)));
    }
    Ok(w.substitute(&artin_images(b)))
}

/// Generator of the braid group of `n` points in a disk with `k` holes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiskGen {
    /// The first point loops once counterclockwise around hole `i` (zero-based).
    Hole(usize),
    /// Exchange of points `j+1` and `j+2`.
    Exchange(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiskLetter {
    pub gen: DiskGen,
    pub inverse: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiskBraidWord {
    holes: usize,
    points: usize,
    letters: Vec<DiskLetter>,
}

impl DiskBraidWord {
    pub fn new(holes: usize, points: usize, letters: Vec<DiskLetter>) -> Result<Self> {
        for l in &letters {
            match l.gen {
                DiskGen::Hole(i) if i >= holes => return Err(HeisError::Index(format!("hole {}", i + 1))),
                DiskGen::Exchange(j) if j + 1 >= points => {
                    return Err(HeisError::Index(format!("exchange {}", j + 1)))
                }
                _ => {}
            }
        }
        Ok(DiskBraidWord { holes, points, letters })
    }

    /// Parses `h1 H2 s1` (hole loops `h`, exchanges `s`, uppercase inverse).
    pub fn parse(text: &str, holes: usize, points: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for (pos, c, idx, exp) in tokenize_indexed(text, "hs")? {
            let gen = if c.eq_ignore_ascii_case(&'h') {
                if idx >= holes {
                    return parse_err(pos, format!("hole index {} outside 1..={holes}", idx + 1));
                }
                DiskGen::Hole(idx)
            } else {
                if idx + 1 >= points {
                    return parse_err(pos, format!("exchange index {} outside 1..={}", idx + 1, points.saturating_sub(1)));
                }
                DiskGen::Exchange(idx)
            };
            let inverse = (exp < 0) != c.is_ascii_uppercase();
            letters.extend(std::iter::repeat(DiskLetter { gen, inverse }).take(exp.unsigned_abs() as usize));
        }
        Ok(DiskBraidWord { holes, points, letters })
    }

    pub fn hole_loop(holes: usize, points: usize, i: usize) -> Result<Self> {
        Self::new(holes, points, vec![DiskLetter { gen: DiskGen::Hole(i), inverse: false }])
    }

    pub fn exchange(holes: usize, points: usize, j: usize) -> Result<Self> {
        Self::new(holes, points, vec![DiskLetter { gen: DiskGen::Exchange(j), inverse: false }])
    }

    pub fn holes(&self) -> usize {
        self.holes
    }
    pub fn points(&self) -> usize {
        self.points
    }
    pub fn letters(&self) -> &[DiskLetter] {
        &self.letters
    }

    /// Image in the abelianization `Z^{holes+1}`: hole windings, then total winding.
    pub fn abelianization(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.holes + 1];
        for l in &self.letters {
            let e = if l.inverse { -1 } else { 1 };
            match l.gen {
                DiskGen::Hole(i) => v[i] += e,
                DiskGen::Exchange(_) => v[self.holes] += e,
            }
        }
        v
    }
}

/// The Lawrence local system on a disk with `holes` holes: loop around hole
/// `i` ↦ `s_i`, strand exchange ↦ `σ`. Target variables are `s_1 … s_k, σ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiskLocalSystem {
    pub holes: usize,
}

impl DiskLocalSystem {
    pub fn new(holes: usize) -> Self {
        DiskLocalSystem { holes }
    }

    /// Index of the variable `σ` in the target monomials.
    pub fn sigma_var(&self) -> usize {
        self.holes
    }

    pub fn names(&self) -> Vec<String> {
        let mut v = crate::laurent::var_names("s", self.holes);
        v.push("sigma".into());
        v
    }
}

/// Abelian evaluation of a holed-disk braid word.
pub fn eval_disk(w: &DiskBraidWord, l: &DiskLocalSystem) -> Result<Monomial> {
    if w.holes != l.holes {
        return Err(HeisError::Dimension(format!("word has {} holes, local system {}", w.holes, l.holes)));
    }
    Ok(Monomial::new(w.abelianization()))
}

/// Splits text into `(position, letter, zero-based index, exponent)` tokens
/// for letters drawn from `alphabet` (lowercase; uppercase accepted too).
fn tokenize_indexed(text: &str, alphabet: &str) -> Result<Vec<(usize, char, usize, i64)>> {
    if text.trim() == "1" {
        return Ok(Vec::new());
    }
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() || c == '*' || c == ',' {
            i += 1;
            continue;
        }
        let start = i;
        if !alphabet.contains(c.to_ascii_lowercase()) {
            return parse_err(start, format!("unexpected character '{c}'"));
        }
        i += 1;
        let ds = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if ds == i {
            return parse_err(i, "missing generator index");
        }
        let idx: usize = text[ds..i].parse().map_err(|_| HeisError::Parse { pos: ds, msg: "bad index".into() })?;
        if idx == 0 {
            return parse_err(ds, "indices start at 1");
        }
        let mut exp = 1i64;
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            let es = i;
            if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
                i += 1;
            }
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            exp = text[es..i].parse().map_err(|_| HeisError::Parse { pos: es, msg: "bad exponent".into() })?;
        }
        out.push((start, c, idx - 1, exp));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_word_evaluates_to_sigma_squared() {
        let w = SurfaceBraidWord::parse("a1 b1 A1 B1", 1, 1).unwrap();
        assert_eq!(eval_heisenberg(&w, QuotientSpec::Full), HeisenbergElement::sigma_pow(1, 2));
        let s = SurfaceBraidWord::parse("s1", 1, 2).unwrap();
        assert_eq!(eval_heisenberg(&s, QuotientSpec::Full), HeisenbergElement::sigma_pow(1, 1));
        assert!(eval_heisenberg(&SurfaceBraidWord::empty(2, 1), QuotientSpec::Full).is_identity());
    }

    #[test]
    fn separating_examples() {
        let w = separating_word(3, 3, -1).unwrap();
        assert_eq!(eval_heisenberg(&w, QuotientSpec::Full), HeisenbergElement::sigma_pow(3, -6));
        assert!(separating_word(3, 0, 1).unwrap().is_empty());
        assert!(separating_word(2, 3, 1).is_err());
    }

    #[test]
    fn parse_errors_carry_positions() {
        match SurfaceBraidWord::parse("a1 b3", 2, 1) {
            Err(HeisError::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
        assert!(SurfaceBraidWord::parse("s1", 1, 1).is_err());
        assert!(SurfaceBraidWord::parse("a0", 1, 1).is_err());
    }

    #[test]
    fn fox_examples() {
        let x1x2 = FreeWord::parse("x1 x2", 2).unwrap();
        assert!(fox_derivative(&x1x2, 0).unwrap().is_one());
        let inv = FreeWord::parse("X1", 1).unwrap();
        assert_eq!(fox_derivative(&inv, 0).unwrap(), FreeGroupRing::monomial(inv.clone(), -1));
        let conj = FreeWord::parse("x1 x2 X1", 2).unwrap();
        let expected = FreeGroupRing::one_free(2).sub(&FreeGroupRing::from_group(conj.clone()));
        assert_eq!(fox_derivative(&conj, 0).unwrap(), expected);
    }

    #[test]
    fn artin_examples() {
        let s1 = BraidWord::parse("s1", 2).unwrap();
        let x1 = FreeWord::parse("x1", 2).unwrap();
        assert_eq!(artin_action(&s1, &x1).unwrap(), FreeWord::parse("x1 x2 X1", 2).unwrap());
        let id = BraidWord::parse("s1 S1", 2).unwrap();
        let w = FreeWord::parse("x1 x2 x2 X1", 2).unwrap();
        assert_eq!(artin_action(&id, &w).unwrap(), w);
        let l = BraidWord::parse("s1 s2 s1", 3).unwrap();
        let r = BraidWord::parse("s2 s1 s2", 3).unwrap();
        assert_eq!(artin_images(&l), artin_images(&r));
    }

    #[test]
    fn disk_examples() {
        let l = DiskLocalSystem::new(3);
        let w = DiskBraidWord::parse("h2", 3, 1).unwrap();
        assert_eq!(eval_disk(&w, &l).unwrap(), Monomial::var(1, 1));
        let w = DiskBraidWord::parse("s1 s1", 3, 2).unwrap();
        assert_eq!(eval_disk(&w, &l).unwrap(), Monomial::var(3, 2));
        let w = DiskBraidWord::parse("h1 h3", 3, 1).unwrap();
        assert_eq!(eval_disk(&w, &l).unwrap(), Monomial::new(vec![1, 0, 1]));
    }
}
