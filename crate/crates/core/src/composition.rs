//! Compositions and the combinatorics built on them: descent and peak sets,
//! conjugation, permutations, the order-`N` split poset, the index sets
//! `F_n^(N)` / `G_n^(N)` with the bijection between them, and the statistics
//! that appear in the peak-basis decomposition formulas.
//!
//! Compositions are totally ordered by weight, then by the numeric value of the
//! descent-set bitmask (bit `d - 1` set for each descent `d`). This is the
//! canonical order used for output and for matrix row/column indexing.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Composition(Vec<usize>);

/// A finite set of integers, used for descent sets, peak sets and friends.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct IntSet(BTreeSet<usize>);

/// A permutation of `[1, n]`, stored by its images `σ(1) … σ(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

/// Value of a statistic that may be `−∞`.
///
/// `NegInfinity` is a marker, never an operand: callers drop the
/// corresponding term instead of exponentiating.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistic {
    NegInfinity,
    Finite(usize),
}

impl Statistic {
    pub fn finite(self) -> Option<usize> {
        match self {
            Statistic::Finite(v) => Some(v),
            Statistic::NegInfinity => None,
        }
    }

    pub fn is_neg_infinity(self) -> bool {
        matches!(self, Statistic::NegInfinity)
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistic::NegInfinity => f.write_str("-inf"),
            Statistic::Finite(v) => write!(f, "{v}"),
        }
    }
}

// ---------------------------------------------------------------------------
// IntSet

impl IntSet {
    pub fn new() -> Self {
        IntSet(BTreeSet::new())
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(&x)
    }

    pub fn insert(&mut self, x: usize) -> bool {
        self.0.insert(x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &IntSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &IntSet) -> IntSet {
        IntSet(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &IntSet) -> IntSet {
        IntSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &IntSet) -> IntSet {
        IntSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn symmetric_difference(&self, other: &IntSet) -> IntSet {
        IntSet(self.0.symmetric_difference(&other.0).copied().collect())
    }

    /// `k + X`, every element shifted by `k`.
    pub fn shifted(&self, k: usize) -> IntSet {
        IntSet(self.0.iter().map(|x| x + k).collect())
    }
}

impl FromIterator<usize> for IntSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        IntSet(iter.into_iter().collect())
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for IntSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let items = parse_delimited(s, '{', '}')?;
        Ok(items.into_iter().collect())
    }
}

/// Parses `open a, b, c close` with arbitrary whitespace into integers.
fn parse_delimited(s: &str, open: char, close: char) -> Result<Vec<usize>> {
    let trimmed = s.trim();
    let lead = s.len() - s.trim_start().len();
    let inner = trimmed
        .strip_prefix(open)
        .and_then(|t| t.strip_suffix(close))
        .ok_or_else(|| Error::Parse {
            pos: lead,
            msg: format!("expected {open}…{close}"),
        })?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = lead + 1;
    for piece in inner.split(',') {
        let value = piece.trim().parse::<usize>().map_err(|_| Error::Parse {
            pos: offset + (piece.len() - piece.trim_start().len()),
            msg: format!("expected a non-negative integer, found {:?}", piece.trim()),
        })?;
        out.push(value);
        offset += piece.len() + 1;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Composition

impl Composition {
    /// Builds a composition, rejecting zero parts.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidComposition(format!(
                "zero part in {parts:?}"
            )));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    /// `(n)`, or the empty composition when `n = 0`.
    pub fn single(n: usize) -> Self {
        if n == 0 {
            Composition::empty()
        } else {
            Composition(vec![n])
        }
    }

    /// `(1^n)`.
    pub fn ones(n: usize) -> Self {
        Composition(vec![1; n])
    }

    /// The hook `(1^alpha, beta)`; `beta` must be positive.
    pub fn hook(alpha: usize, beta: usize) -> Self {
        debug_assert!(beta >= 1);
        let mut parts = vec![1; alpha];
        parts.push(beta);
        Composition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Partial sums `i_1, i_1 + i_2, …` up to and including the total.
    pub fn partial_sums(&self) -> Vec<usize> {
        self.0
            .iter()
            .scan(0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    /// `D(I)`: partial sums excluding the total.
    pub fn descent_set(&self) -> IntSet {
        let mut sums = self.partial_sums();
        sums.pop();
        sums.into_iter().collect()
    }

    /// Descent set as a bitmask, bit `d - 1` for descent `d`. Weight must be ≤ 64.
    pub fn descent_mask(&self) -> u64 {
        let mut mask = 0u64;
        let mut acc = 0;
        if let Some((_, init)) = self.0.split_last() {
            for &p in init {
                acc += p;
                mask |= 1u64 << (acc - 1);
            }
        }
        mask
    }

    /// Inverse of [`descent_mask`](Self::descent_mask) at weight `n`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        if n == 0 {
            return Composition::empty();
        }
        let mut parts = Vec::with_capacity(mask.count_ones() as usize + 1);
        let mut last = 0;
        for d in 1..n {
            if mask >> (d - 1) & 1 == 1 {
                parts.push(d - last);
                last = d;
            }
        }
        parts.push(n - last);
        Composition(parts)
    }

    /// The unique composition of `n` whose descent set is `descents`.
    pub fn from_descents(descents: &IntSet, n: usize) -> Result<Self> {
        if let Some(bad) = descents.iter().find(|&d| d == 0 || d >= n) {
            return Err(Error::OutOfRange { element: bad, n });
        }
        if n == 0 {
            return Ok(Composition::empty());
        }
        let mut parts = Vec::with_capacity(descents.len() + 1);
        let mut last = 0;
        for d in descents.iter() {
            parts.push(d - last);
            last = d;
        }
        parts.push(n - last);
        Ok(Composition(parts))
    }

    /// Concatenation `I · J`.
    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Composition(parts)
    }

    /// `I ▷ J`: last part of `I` glued to the first part of `J`.
    /// Falls back to concatenation when either side is empty.
    pub fn glue(&self, other: &Composition) -> Composition {
        match (self.0.split_last(), other.0.split_first()) {
            (Some((&a, init)), Some((&b, tail))) => {
                let mut parts = Vec::with_capacity(self.len() + other.len() - 1);
                parts.extend_from_slice(init);
                parts.push(a + b);
                parts.extend_from_slice(tail);
                Composition(parts)
            }
            _ => self.concat(other),
        }
    }

    /// Conjugate composition (transpose of the ribbon diagram).
    pub fn conjugate(&self) -> Composition {
        let n = self.weight();
        if n == 0 {
            return Composition::empty();
        }
        let d = self.descent_set();
        let conj: IntSet = (1..n).filter(|x| !d.contains(*x)).map(|x| n - x).collect();
        Composition::from_descents(&conj, n).expect("conjugate descents stay in range")
    }

    /// Reverse refinement `self ⪯ other`, i.e. `D(self) ⊆ D(other)`.
    pub fn reverse_refines(&self, other: &Composition) -> Result<bool> {
        check_same_weight(self, other)?;
        Ok(self.descent_set().is_subset(&other.descent_set()))
    }

    /// `P(I)`: descents `d_i` with `d_i − d_{i−1} ≠ 1` (taking `d_0 = 0`).
    pub fn peak_set(&self) -> IntSet {
        let mut prev = 0;
        let mut out = IntSet::new();
        for d in self.descent_set().iter() {
            if d - prev != 1 {
                out.insert(d);
            }
            prev = d;
        }
        out
    }

    /// Whether only the last part may equal 1.
    pub fn is_peak_composition(&self) -> bool {
        match self.0.split_last() {
            Some((_, init)) => init.iter().all(|&p| p >= 2),
            None => true,
        }
    }

    /// `Some(α)` when the composition has the hook shape `(1^α, β)`.
    pub fn hook_alpha(&self) -> Option<usize> {
        let (_, init) = self.0.split_last()?;
        init.iter().all(|&p| p == 1).then_some(init.len())
    }

    /// Groups the parts of `self` into consecutive blocks summing to the parts
    /// of `coarse`; `None` unless `self` refines `coarse`.
    fn blocks_of(&self, coarse: &Composition) -> Option<Vec<&[usize]>> {
        let mut out = Vec::with_capacity(coarse.len());
        let mut start = 0;
        for &target in coarse.parts() {
            let mut acc = 0;
            let mut end = start;
            while acc < target && end < self.0.len() {
                acc += self.0[end];
                end += 1;
            }
            if acc != target {
                return None;
            }
            out.push(&self.0[start..end]);
            start = end;
        }
        (start == self.0.len()).then_some(out)
    }
}

fn check_same_weight(a: &Composition, b: &Composition) -> Result<()> {
    let (l, r) = (a.weight(), b.weight());
    if l != r {
        return Err(Error::WeightMismatch { left: l, right: r });
    }
    Ok(())
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        let (wa, wb) = (self.weight(), other.weight());
        if wa != wb {
            return wa.cmp(&wb);
        }
        if wa <= 64 {
            return self.descent_mask().cmp(&other.descent_mask());
        }
        // Numeric bitmask order: the largest descent in the symmetric
        // difference decides.
        let (da, db) = (self.descent_set(), other.descent_set());
        match da.symmetric_difference(&db).iter().last() {
            None => Ordering::Equal,
            Some(top) if da.contains(top) => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_delimited(s, '[', ']')?;
        Composition::new(parts).map_err(|e| Error::Parse {
            pos: 0,
            msg: e.to_string(),
        })
    }
}

impl From<&[usize]> for Composition {
    /// Panics on a zero part; intended for literals in code and tests.
    fn from(parts: &[usize]) -> Self {
        Composition::new(parts.to_vec()).expect("composition parts must be positive")
    }
}

impl<const K: usize> From<[usize; K]> for Composition {
    fn from(parts: [usize; K]) -> Self {
        Composition::from(&parts[..])
    }
}

/// All `2^{n−1}` compositions of `n` (one empty composition for `n = 0`),
/// in increasing descent-bitmask order.
pub fn compositions_of(n: usize) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition::empty()];
    }
    assert!(n <= 63, "compositions_of: weight {n} too large to enumerate");
    (0..1u64 << (n - 1))
        .map(|mask| Composition::from_mask(mask, n))
        .collect()
}

// ---------------------------------------------------------------------------
// Permutations

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidArgument(format!(
                    "{images:?} is not a permutation of 1..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// `n n−1 … 1`.
    pub fn reversal(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.size(), other.size());
        Permutation(other.0.iter().map(|&i| self.0[i - 1]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// `𝒟(σ) = { i : σ(i) > σ(i+1) }`.
    pub fn descent_set(&self) -> IntSet {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Descent composition `D(σ)`.
    pub fn descent_composition(&self) -> Composition {
        Composition::from_descents(&self.descent_set(), self.size())
            .expect("descents lie in [1, n-1]")
    }

    /// Descent set as a bitmask (bit `i - 1` for descent `i`).
    pub fn descent_mask(&self) -> u64 {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .fold(0u64, |m, (i, _)| m | 1 << i)
    }

    /// `𝒫(σ) = { i ∈ [2, n−1] : σ(i−1) < σ(i) > σ(i+1) }`.
    pub fn peak_set(&self) -> IntSet {
        self.0
            .windows(3)
            .enumerate()
            .filter(|(_, w)| w[0] < w[1] && w[1] > w[2])
            .map(|(i, _)| i + 2)
            .collect()
    }

    /// Peak composition `P(σ)`.
    pub fn peak_composition(&self) -> Composition {
        Composition::from_descents(&self.peak_set(), self.size())
            .expect("peaks lie in [2, n-1]")
    }

    /// Every permutation of `[1, n]` in lexicographic order.
    pub fn all(n: usize) -> Permutations {
        Permutations {
            next: Some(Permutation::identity(n)),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() <= 9 {
            for x in &self.0 {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let items: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", items.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts either a digit word such as `265341` or a bracketed list.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let images = if t.starts_with('[') {
            parse_delimited(t, '[', ']')?
        } else {
            t.chars()
                .enumerate()
                .map(|(pos, c)| {
                    c.to_digit(10).map(|d| d as usize).ok_or(Error::Parse {
                        pos,
                        msg: format!("unexpected {c:?} in permutation"),
                    })
                })
                .collect::<Result<Vec<_>>>()?
        };
        Permutation::new(images)
    }
}

/// Lexicographic enumeration of a symmetric group.
pub struct Permutations {
    next: Option<Permutation>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.0.clone();
        let n = succ.len();
        if n >= 2 {
            if let Some(i) = (0..n - 1).rev().find(|&i| succ[i] < succ[i + 1]) {
                let j = (i + 1..n).rev().find(|&j| succ[j] > succ[i]).unwrap();
                succ.swap(i, j);
                succ[i + 1..].reverse();
                self.next = Some(Permutation(succ));
            }
        }
        Some(current)
    }
}

// ---------------------------------------------------------------------------
// Peak sets

/// Whether `p` is the peak set of some permutation of `[1, n]`.
pub fn is_valid_peak_set(p: &IntSet, n: usize) -> bool {
    p.iter().all(|i| i >= 2 && i + 1 <= n && !p.contains(i - 1))
}

// ---------------------------------------------------------------------------
// The split poset P_n^(N)

/// Every composition obtained by replacing one part `i_k` with `(j, i_k − j)`,
/// `1 ≤ j ≤ N − 1`, `i_k − j ≥ 1`.
pub fn split_successors(comp: &Composition, order: usize) -> Vec<Composition> {
    let mut out = BTreeSet::new();
    for (k, &p) in comp.parts().iter().enumerate() {
        for j in 1..order.min(p) {
            let mut parts = Vec::with_capacity(comp.len() + 1);
            parts.extend_from_slice(&comp.parts()[..k]);
            parts.push(j);
            parts.push(p - j);
            parts.extend_from_slice(&comp.parts()[k + 1..]);
            out.insert(Composition(parts));
        }
    }
    out.into_iter().collect()
}

/// `lower ≤ upper` in `P_n^(N)`: `upper` is reachable from `lower` by splits.
///
/// Splits only ever refine, and inside each part of `lower` the resulting
/// block of `upper` is reachable exactly when every part of the block except
/// its last is at most `N − 1`.
pub fn poset_leq(lower: &Composition, upper: &Composition, order: usize) -> Result<bool> {
    check_same_weight(lower, upper)?;
    Ok(match upper.blocks_of(lower) {
        None => false,
        Some(blocks) => blocks.iter().all(|block| {
            let (_, init) = block.split_last().expect("blocks are non-empty");
            init.iter().all(|&p| p < order)
        }),
    })
}

/// `{ J : J ≤ I }` in `P_n^(N)`, in canonical order.
///
/// A descent of `I` may be dropped exactly when the part ending there is
/// below `N`, so the lower set is a boolean lattice on those descents.
pub fn lower_set(comp: &Composition, order: usize) -> Vec<Composition> {
    let n = comp.weight();
    let sums = comp.partial_sums();
    let mut fixed = IntSet::new();
    let mut removable = Vec::new();
    for (k, &p) in comp.parts().iter().enumerate().take(comp.len().saturating_sub(1)) {
        if p < order {
            removable.push(sums[k]);
        } else {
            fixed.insert(sums[k]);
        }
    }
    let mut out: Vec<Composition> = (0..1u64 << removable.len())
        .map(|choice| {
            let mut d = fixed.clone();
            for (b, &pos) in removable.iter().enumerate() {
                if choice >> b & 1 == 1 {
                    d.insert(pos);
                }
            }
            Composition::from_descents(&d, n).expect("descents of I stay in range")
        })
        .collect();
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Index sets and the bijection ε

/// `F_n^(N)`: compositions of `n` with no part divisible by `N`.
pub fn f_set(n: usize, order: usize) -> Vec<Composition> {
    compositions_of(n)
        .into_iter()
        .filter(|c| in_f_set(c, order))
        .collect()
}

pub fn in_f_set(comp: &Composition, order: usize) -> bool {
    comp.parts().iter().all(|&p| p % order != 0)
}

/// `G_n^(N)`: parts in `[1, N]`, last part in `[1, N − 1]`.
/// Empty for `N = 1`, `n ≥ 1`.
pub fn g_set(n: usize, order: usize) -> Vec<Composition> {
    compositions_of(n)
        .into_iter()
        .filter(|c| in_g_set(c, order))
        .collect()
}

pub fn in_g_set(comp: &Composition, order: usize) -> bool {
    match comp.parts().split_last() {
        None => true,
        Some((&last, init)) => last < order && init.iter().all(|&p| p <= order),
    }
}

/// `ε : G → F`, `N^{i_1} j_1 ⋯ N^{i_r} j_r ↦ (N·i_1 + j_1, …, N·i_r + j_r)`.
pub fn epsilon(comp: &Composition, order: usize) -> Result<Composition> {
    if !in_g_set(comp, order) || order < 2 {
        return Err(not_in(comp, "G", order));
    }
    let mut parts = Vec::new();
    let mut run = 0;
    for &p in comp.parts() {
        if p == order {
            run += 1;
        } else {
            parts.push(order * run + p);
            run = 0;
        }
    }
    Ok(Composition(parts))
}

/// Inverse of [`epsilon`].
pub fn epsilon_inv(comp: &Composition, order: usize) -> Result<Composition> {
    if !in_f_set(comp, order) {
        return Err(not_in(comp, "F", order));
    }
    let mut parts = Vec::new();
    for &k in comp.parts() {
        parts.extend(std::iter::repeat(order).take(k / order));
        parts.push(k % order);
    }
    Ok(Composition(parts))
}

fn not_in(comp: &Composition, set: &'static str, order: usize) -> Error {
    Error::NotInIndexSet {
        comp: comp.to_string(),
        set,
        order,
    }
}

/// Coefficient of `t^n` in `(1 − t^N) / (1 − t − t² − ⋯ − t^N)`.
pub fn hilbert_dim(n: usize, order: usize) -> u64 {
    assert!(order >= 1, "hilbert_dim: N must be at least 1");
    // a = 1 / (1 − t − ⋯ − t^N)
    let mut a = vec![0u64; n + 1];
    a[0] = 1;
    for m in 1..=n {
        a[m] = (1..=order.min(m)).map(|k| a[m - k]).sum();
    }
    if n >= order {
        a[n] - a[n - order]
    } else {
        a[n]
    }
}

// ---------------------------------------------------------------------------
// Hooks and ribbon factorizations

/// The factorization `I = H_1 · H_2 ⋯ H_{hl}` into hooks `(1^α, β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookFactorization {
    pub segments: Vec<Composition>,
    pub hook_length: usize,
    /// `H_I = (|H_1|, …, |H_hl|)`.
    pub hook_composition: Composition,
}

/// Cuts `I` at the positions of its peak set.
pub fn hook_factorization(comp: &Composition) -> Result<HookFactorization> {
    if comp.is_empty() {
        return Err(Error::InvalidArgument(
            "hook factorization needs a non-empty composition".into(),
        ));
    }
    let cuts = comp.peak_set();
    let mut segments = Vec::with_capacity(cuts.len() + 1);
    let mut current = Vec::new();
    let mut acc = 0;
    for &p in comp.parts() {
        current.push(p);
        acc += p;
        if cuts.contains(acc) {
            segments.push(Composition(std::mem::take(&mut current)));
        }
    }
    segments.push(Composition(current));
    let hook_composition = Composition(segments.iter().map(Composition::weight).collect());
    Ok(HookFactorization {
        hook_length: segments.len(),
        segments,
        hook_composition,
    })
}

/// `H(I, J)`: `J`'s ribbon cut at the cumulative lengths of `I`, so that
/// `|H_k| = i_k` and gluing the pieces back (by `·` or `▷`) gives `J`.
pub fn ribbon_factorization(i: &Composition, j: &Composition) -> Result<Vec<Composition>> {
    check_same_weight(i, j)?;
    let dj = j.descent_set();
    let mut prev = 0;
    Ok(i
        .partial_sums()
        .into_iter()
        .map(|cut| {
            let mut parts = Vec::new();
            let mut last = prev;
            for d in dj.iter().filter(|&d| d > prev && d < cut) {
                parts.push(d - last);
                last = d;
            }
            parts.push(cut - last);
            prev = cut;
            Composition(parts)
        })
        .collect())
}

/// `h(I, J)`: `−∞` unless every piece of `H(I, J)` is a hook, else `Σ α_k`.
pub fn h_stat(i: &Composition, j: &Composition) -> Result<Statistic> {
    let mut total = 0;
    for piece in ribbon_factorization(i, j)? {
        match piece.hook_alpha() {
            Some(alpha) => total += alpha,
            None => return Ok(Statistic::NegInfinity),
        }
    }
    Ok(Statistic::Finite(total))
}

/// `α(I, J) = Σ_{k < l(J)} j_k · [j_1 + ⋯ + j_k ∉ D(I)]`.
pub fn alpha_stat(i: &Composition, j: &Composition) -> Result<usize> {
    check_same_weight(i, j)?;
    let di = i.descent_set();
    let mut acc = 0;
    let mut total = 0;
    for &p in j.parts().iter().take(j.len().saturating_sub(1)) {
        acc += p;
        if !di.contains(acc) {
            total += p;
        }
    }
    Ok(total)
}

/// `S(I) = ((1 + D(I)) − D(I)) ∪ (D(I) − (1 + D(I)))`.
pub fn s_set(comp: &Composition) -> IntSet {
    let d = comp.descent_set();
    d.shifted(1).symmetric_difference(&d)
}

/// `b(I, J) = |(1 + (D(I) − D(J))) ∪ (D(J) − D(I))|` when `D(H_J) ⊆ S(I)`,
/// `−∞` otherwise.
pub fn b_stat(i: &Composition, j: &Composition) -> Result<Statistic> {
    check_same_weight(i, j)?;
    if i.is_empty() {
        return Ok(Statistic::Finite(0));
    }
    let hooks = hook_factorization(j)?;
    if !hooks.hook_composition.descent_set().is_subset(&s_set(i)) {
        return Ok(Statistic::NegInfinity);
    }
    let (di, dj) = (i.descent_set(), j.descent_set());
    let value = di.difference(&dj).shifted(1).union(&dj.difference(&di)).len();
    Ok(Statistic::Finite(value))
}

/// How the condition `j_1 + ⋯ + j_l = i_k` defining `ℋ(I, J)` is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HhReading {
    /// `j_1 + ⋯ + j_l` equals some single part `i_k`.
    Literal,
    /// `j_1 + ⋯ + j_l` equals some partial sum `i_1 + ⋯ + i_k`.
    PartialSum,
}

impl fmt::Display for HhReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HhReading::Literal => "literal (j_1+…+j_l = i_k)",
            HhReading::PartialSum => "partial-sum (j_1+…+j_l = i_1+…+i_k)",
        })
    }
}

/// `ℋ(I, J) ⊆ [1, l(J)]` under the given reading.
pub fn hh_set(i: &Composition, j: &Composition, reading: HhReading) -> Result<IntSet> {
    check_same_weight(i, j)?;
    let targets: IntSet = match reading {
        HhReading::Literal => i.parts().iter().copied().collect(),
        HhReading::PartialSum => i.partial_sums().into_iter().collect(),
    };
    Ok(j
        .partial_sums()
        .into_iter()
        .enumerate()
        .filter(|(_, s)| targets.contains(*s))
        .map(|(l, _)| l + 1)
        .collect())
}

/// `c(n, i)`: total number of parts equal to `i` over all compositions of `n`.
///
/// Each occurrence splits the composition as `A · (i) · B`, so the count is
/// `Σ_{a+b = n−i} C(a)·C(b)` with `C(0) = 1`, `C(m) = 2^{m−1}`.
pub fn part_count(n: usize, i: usize) -> u64 {
    if i == 0 || i > n {
        return 0;
    }
    let count = |m: usize| if m == 0 { 1u64 } else { 1u64 << (m - 1) };
    let rest = n - i;
    (0..=rest).map(|a| count(a) * count(rest - a)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c<const K: usize>(parts: [usize; K]) -> Composition {
        Composition::from(parts)
    }

    fn set(items: &[usize]) -> IntSet {
        items.iter().copied().collect()
    }

    #[test]
    fn enumerates_compositions() {
        assert_eq!(compositions_of(0), vec![Composition::empty()]);
        let three: BTreeSet<_> = compositions_of(3).into_iter().collect();
        let expected: BTreeSet<_> = [c([3]), c([2, 1]), c([1, 2]), c([1, 1, 1])].into();
        assert_eq!(three, expected);
        assert_eq!(compositions_of(6).len(), 32);
        let six = compositions_of(6);
        assert!(six.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn descent_sets_round_trip() {
        assert_eq!(c([1, 3, 1, 2]).descent_set(), set(&[1, 4, 5]));
        assert_eq!(c([5]).descent_set(), IntSet::new());
        assert_eq!(c([3, 1, 2, 1]).descent_set(), set(&[3, 4, 6]));
        assert_eq!(Composition::from_descents(&set(&[1, 4, 5]), 7).unwrap(), c([1, 3, 1, 2]));
        assert_eq!(Composition::from_descents(&IntSet::new(), 5).unwrap(), c([5]));
        assert_eq!(Composition::from_descents(&set(&[2, 5]), 6).unwrap(), c([2, 3, 1]));
        assert_eq!(
            Composition::from_descents(&set(&[6]), 6),
            Err(Error::OutOfRange { element: 6, n: 6 })
        );
    }

    #[test]
    fn reverse_refinement() {
        assert!(c([4]).reverse_refines(&c([1, 3])).unwrap());
        assert!(!c([2, 2]).reverse_refines(&c([1, 2, 1])).unwrap());
        assert!(c([1, 3]).reverse_refines(&c([1, 1, 2])).unwrap());
        assert!(matches!(
            c([1]).reverse_refines(&c([2])),
            Err(Error::WeightMismatch { .. })
        ));
    }

    #[test]
    fn conjugation() {
        assert_eq!(c([3, 1, 2, 1]).conjugate(), c([2, 3, 1, 1]));
        assert_eq!(c([4]).conjugate(), Composition::ones(4));
        for n in 0..=8 {
            for comp in compositions_of(n) {
                assert_eq!(comp.conjugate().conjugate(), comp);
            }
        }
    }

    #[test]
    fn permutation_statistics() {
        let s: Permutation = "265341".parse().unwrap();
        assert_eq!(s.descent_set(), set(&[2, 3, 5]));
        assert_eq!(s.descent_composition(), c([2, 1, 2, 1]));
        assert_eq!(s.peak_set(), set(&[2, 5]));
        assert_eq!(s.peak_composition(), c([2, 3, 1]));
        assert_eq!(Permutation::identity(5).descent_composition(), c([5]));
        assert_eq!(Permutation::reversal(5).descent_composition(), Composition::ones(5));
        assert_eq!(Permutation::identity(5).peak_composition(), c([5]));
        assert_eq!("132".parse::<Permutation>().unwrap().peak_composition(), c([2, 1]));
        assert_eq!(Permutation::all(5).count(), 120);
    }

    #[test]
    fn composition_peak_sets() {
        assert_eq!(c([1, 3, 1, 2]).peak_set(), set(&[4]));
        assert_eq!(c([6]).peak_set(), IntSet::new());
        assert_eq!(c([1, 3, 1, 4, 2]).peak_set(), set(&[4, 9]));
    }

    #[test]
    fn valid_peak_sets() {
        assert!(is_valid_peak_set(&set(&[2, 5]), 6));
        assert!(!is_valid_peak_set(&set(&[1]), 3));
        let count = compositions_of(6)
            .iter()
            .filter(|c| is_valid_peak_set(&c.descent_set(), 6))
            .count();
        // f_6 with f_0 = f_1 = f_2 = 1
        assert_eq!(count, 8);
        let mut fib = vec![1usize, 1, 1];
        for n in 3..=12 {
            fib.push(fib[n - 1] + fib[n - 2]);
        }
        for n in 1..=12 {
            let count = compositions_of(n)
                .iter()
                .filter(|c| is_valid_peak_set(&c.descent_set(), n))
                .count();
            assert_eq!(count, fib[n], "n = {n}");
            assert_eq!(count as u64, hilbert_dim(n, 2), "n = {n}");
        }
    }

    #[test]
    fn splits_and_poset() {
        assert_eq!(split_successors(&c([4]), 3), vec![c([1, 3]), c([2, 2])]);
        assert_eq!(split_successors(&c([4]), 2), vec![c([1, 3])]);
        assert!(split_successors(&c([1, 1]), 5).is_empty());
        assert!(poset_leq(&c([4]), &c([1, 2, 1]), 3).unwrap());
        assert!(!poset_leq(&c([4]), &c([1, 2, 1]), 2).unwrap());
        assert!(poset_leq(&c([2, 3]), &c([2, 3]), 2).unwrap());
        assert!(poset_leq(&c([2]), &c([2, 1]), 2).is_err());
    }

    #[test]
    fn lower_sets() {
        let got: BTreeSet<_> = lower_set(&c([1, 2, 1]), 3).into_iter().collect();
        assert_eq!(got, [c([1, 2, 1]), c([3, 1]), c([1, 3]), c([4])].into());
        let got: BTreeSet<_> = lower_set(&c([1, 1, 2]), 2).into_iter().collect();
        assert_eq!(got, [c([1, 1, 2]), c([2, 2]), c([1, 3]), c([4])].into());
        assert_eq!(lower_set(&c([3, 3, 2]), 3), vec![c([3, 3, 2])]);
    }

    #[test]
    fn index_sets() {
        let f: BTreeSet<_> = f_set(4, 3).into_iter().collect();
        let expected: BTreeSet<_> = [
            c([4]),
            c([2, 2]),
            c([2, 1, 1]),
            c([1, 2, 1]),
            c([1, 1, 2]),
            c([1, 1, 1, 1]),
        ]
        .into();
        assert_eq!(f, expected);
        assert!(f_set(5, 1).is_empty());
        assert_eq!(f_set(4, 2).len(), 3);

        let g: BTreeSet<_> = g_set(4, 3).into_iter().collect();
        let expected: BTreeSet<_> = [
            c([1, 1, 1, 1]),
            c([2, 1, 1]),
            c([1, 2, 1]),
            c([1, 1, 2]),
            c([3, 1]),
            c([2, 2]),
        ]
        .into();
        assert_eq!(g, expected);
        let g: BTreeSet<_> = g_set(4, 2).into_iter().collect();
        assert_eq!(g, [c([1, 1, 1, 1]), c([2, 1, 1]), c([1, 2, 1])].into());
        assert_eq!(g_set(0, 3), vec![Composition::empty()]);
        assert!(g_set(3, 1).is_empty());
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(&c([3, 1]), 3).unwrap(), c([4]));
        assert_eq!(epsilon(&c([2, 2]), 3).unwrap(), c([2, 2]));
        assert_eq!(epsilon_inv(&c([4]), 3).unwrap(), c([3, 1]));
        assert!(epsilon(&c([1, 3]), 3).is_err());
        assert!(epsilon_inv(&c([3, 1]), 3).is_err());
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_dim(4, 2), 3);
        assert_eq!(hilbert_dim(4, 3), 6);
        for order in 2..7 {
            for n in 1..order {
                assert_eq!(hilbert_dim(n, order), 1 << (n - 1));
            }
        }
        assert_eq!(hilbert_dim(0, 4), 1);
    }

    #[test]
    fn hooks() {
        let h = hook_factorization(&c([1, 3, 1, 4, 2])).unwrap();
        assert_eq!(h.segments, vec![c([1, 3]), c([1, 4]), c([2])]);
        assert_eq!(h.hook_length, 3);
        assert_eq!(h.hook_composition.descent_set(), set(&[4, 9]));
        let h = hook_factorization(&c([5])).unwrap();
        assert_eq!((h.segments, h.hook_length), (vec![c([5])], 1));
        let h = hook_factorization(&c([2, 1, 1])).unwrap();
        assert_eq!((h.segments, h.hook_length), (vec![c([2]), c([1, 1])], 2));
        assert!(hook_factorization(&Composition::empty()).is_err());
    }

    #[test]
    fn ribbon_factorizations() {
        assert_eq!(
            ribbon_factorization(&c([3, 2, 1, 4]), &c([2, 5, 2, 1])).unwrap(),
            vec![c([2, 1]), c([2]), c([1]), c([1, 2, 1])]
        );
        assert_eq!(
            ribbon_factorization(&c([2, 3]), &c([2, 3])).unwrap(),
            vec![c([2]), c([3])]
        );
        let pieces = ribbon_factorization(&c([2, 2]), &c([4])).unwrap();
        assert_eq!(pieces, vec![c([2]), c([2])]);
        assert_eq!(pieces[0].glue(&pieces[1]), c([4]));
    }

    #[test]
    fn statistics() {
        assert_eq!(h_stat(&c([3]), &c([1, 2])).unwrap(), Statistic::Finite(1));
        assert_eq!(h_stat(&c([3]), &c([3])).unwrap(), Statistic::Finite(0));
        assert_eq!(h_stat(&c([3]), &c([2, 1])).unwrap(), Statistic::NegInfinity);

        assert_eq!(alpha_stat(&c([4]), &c([1, 2, 1])).unwrap(), 3);
        assert_eq!(alpha_stat(&c([2, 1, 3]), &c([2, 1, 3])).unwrap(), 0);
        assert_eq!(alpha_stat(&c([2, 2]), &c([1, 1, 2])).unwrap(), 1);

        assert_eq!(b_stat(&c([4]), &c([4])).unwrap(), Statistic::Finite(0));
        // S((2,1)) = {3} △ {2} = {2,3}; D(H_(2,1)) = {2} ⊆ S, b = |{} ∪ {}| = 0.
        assert_eq!(s_set(&c([2, 1])), set(&[2, 3]));
        assert_eq!(b_stat(&c([2, 1]), &c([2, 1])).unwrap(), Statistic::Finite(0));
        // D(H_(2,2)) = {2} ⊄ S((4)) = {}.
        assert_eq!(b_stat(&c([4]), &c([2, 2])).unwrap(), Statistic::NegInfinity);
    }

    #[test]
    fn hh_readings() {
        let (i, j) = (c([2, 2]), c([1, 1, 2]));
        assert_eq!(hh_set(&i, &j, HhReading::PartialSum).unwrap(), set(&[2, 3]));
        assert_eq!(hh_set(&i, &j, HhReading::Literal).unwrap(), set(&[2]));
        assert_eq!(hh_set(&c([5]), &c([5]), HhReading::PartialSum).unwrap(), set(&[1]));
        let k = c([1, 3, 2]);
        assert_eq!(hh_set(&k, &k, HhReading::PartialSum).unwrap(), set(&[1, 2, 3]));
    }

    #[test]
    fn part_counts() {
        assert_eq!(part_count(3, 1), 5);
        assert_eq!(part_count(1, 1), 1);
        assert_eq!(part_count(4, 2), part_count(3, 1));
        assert_eq!(part_count(4, 2), 5);
    }

    #[test]
    fn text_forms() {
        assert_eq!(c([1, 2, 1]).to_string(), "[1,2,1]");
        assert_eq!(" [ 1 , 2,1 ] ".parse::<Composition>().unwrap(), c([1, 2, 1]));
        assert_eq!("[]".parse::<Composition>().unwrap(), Composition::empty());
        assert!("[1,0]".parse::<Composition>().is_err());
        assert!(matches!("[1,x]".parse::<Composition>(), Err(Error::Parse { pos: 3, .. })));
        assert_eq!(set(&[1, 4, 5]).to_string(), "{1,4,5}");
        assert_eq!("{ 1,4 ,5}".parse::<IntSet>().unwrap(), set(&[1, 4, 5]));
    }
}
