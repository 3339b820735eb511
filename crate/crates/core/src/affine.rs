//! The affine Weyl group W ⋉ Q and its alcove dictionary.
//!
//! Elements act on weight space by `x(v) = w(v) + t` with `w` in the finite
//! Weyl group and `t` in the root lattice.  Hyperplanes are cut out by
//! coroots: `H(alpha, k) = { v : <v, alpha^vee> = k }`, so the generator
//! `s_0` is the reflection in the level-1 hyperplane of the root with the
//! highest coroot.  Alcove coordinates follow the convention
//! `k_alpha < <v, alpha^vee> < k_alpha + 1` on the alcove interior; the
//! fundamental alcove (identity element) has all coordinates zero.

use std::collections::HashMap;

use num::Zero;
#[allow(unused_imports)]
use num::One;
use serde::Serialize;

use crate::error::Error;
use crate::rootdata::{Rat, RatVec, RootDatum, MAX_RANK};

/// Element of the affine Weyl group: finite part and translation.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineElt {
    /// Index of the finite part in the Weyl-group enumeration.
    pub w: u16,
    /// Translation in root-lattice coordinates (unused slots stay zero).
    pub t: [i64; MAX_RANK],
}

impl AffineElt {
    pub fn identity() -> AffineElt {
        AffineElt { w: 0, t: [0; MAX_RANK] }
    }

    pub fn is_identity(&self) -> bool {
        self.w == 0 && self.t == [0; MAX_RANK]
    }
}

/// Alcove, as its integer coordinate vector over the positive roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Alcove {
    pub coords: Vec<i64>,
}

/// A point of the weight lattice; these are exactly the special points of
/// the affine arrangement (all coroot pairings integral).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialPoint {
    pub coords: RatVec,
}

impl SpecialPoint {
    pub fn new(datum: &RootDatum, coords: RatVec) -> Result<SpecialPoint, Error> {
        for a in 0..datum.n_pos {
            if !datum.pair_weight(&coords, a).is_integer() {
                return Err(Error::NotSpecial(a));
            }
        }
        Ok(SpecialPoint { coords })
    }

    /// Integer pairing with the coroot of positive root `a`.
    pub fn level(&self, datum: &RootDatum, a: usize) -> i64 {
        datum.pair_weight(&self.coords, a).to_integer()
    }

    pub fn is_dominant(&self, datum: &RootDatum) -> bool {
        (0..datum.n_pos).all(|a| self.level(datum, a) >= 0)
    }

    /// True when the point lies in the root lattice.
    pub fn in_root_lattice(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }
}

pub fn mult(datum: &RootDatum, a: AffineElt, b: AffineElt) -> AffineElt {
    let wt = datum.act_int(a.w, &b.t[..datum.rank]);
    let mut t = [0i64; MAX_RANK];
    for k in 0..datum.rank {
        t[k] = a.t[k] + wt[k];
    }
    AffineElt { w: datum.weyl.mult(a.w, b.w), t }
}

pub fn inverse(datum: &RootDatum, a: AffineElt) -> AffineElt {
    let wi = datum.weyl.inverse(a.w);
    let back = datum.act_int(wi, &a.t[..datum.rank]);
    let mut t = [0i64; MAX_RANK];
    for k in 0..datum.rank {
        t[k] = -back[k];
    }
    AffineElt { w: wi, t }
}

/// The affine generator `s_i`; index 0 is the affine reflection, indices
/// `1..=rank` are the finite simple reflections.
pub fn generator(datum: &RootDatum, i: usize) -> AffineElt {
    if i == 0 {
        let mut t = [0i64; MAX_RANK];
        for k in 0..datum.rank {
            t[k] = datum.positive_roots[datum.theta_short][k];
        }
        AffineElt { w: datum.theta_reflection, t }
    } else {
        AffineElt { w: datum.weyl.simple(i - 1), t: [0; MAX_RANK] }
    }
}

pub fn right_mul_gen(datum: &RootDatum, a: AffineElt, i: usize) -> AffineElt {
    if i == 0 {
        let theta = &datum.positive_roots[datum.theta_short];
        let wt = datum.act_int(a.w, theta);
        let mut t = a.t;
        for k in 0..datum.rank {
            t[k] += wt[k];
        }
        AffineElt { w: datum.weyl.mult(a.w, datum.theta_reflection), t }
    } else {
        AffineElt { w: datum.weyl.mult(a.w, datum.weyl.simple(i - 1)), t: a.t }
    }
}

pub fn left_mul_gen(datum: &RootDatum, i: usize, a: AffineElt) -> AffineElt {
    if i == 0 {
        let s = datum.theta_reflection;
        let moved = datum.act_int(s, &a.t[..datum.rank]);
        let mut t = [0i64; MAX_RANK];
        for k in 0..datum.rank {
            t[k] = moved[k] + datum.positive_roots[datum.theta_short][k];
        }
        AffineElt { w: datum.weyl.mult(s, a.w), t }
    } else {
        let s = datum.weyl.simple(i - 1);
        let moved = datum.act_int(s, &a.t[..datum.rank]);
        let mut t = [0i64; MAX_RANK];
        for k in 0..datum.rank {
            t[k] = moved[k];
        }
        AffineElt { w: datum.weyl.mult(s, a.w), t }
    }
}

/// Word-metric length, by the closed-form sum over positive roots.
pub fn length(datum: &RootDatum, a: AffineElt) -> u32 {
    let wi = datum.weyl.inverse(a.w);
    let mut total: i64 = 0;
    for r in 0..datum.n_pos {
        let m = datum.pair_int(&a.t[..datum.rank], r);
        if datum.weyl.root_image(wi, r) > 0 {
            total += m.abs();
        } else {
            total += (m - 1).abs();
        }
    }
    total as u32
}

/// Alcove of `a`, i.e. the coordinates of `a(A0)`.
pub fn alcove_of(datum: &RootDatum, a: AffineElt) -> Alcove {
    let wi = datum.weyl.inverse(a.w);
    let coords = (0..datum.n_pos)
        .map(|r| {
            let m = datum.pair_int(&a.t[..datum.rank], r);
            if datum.weyl.root_image(wi, r) > 0 {
                m
            } else {
                m - 1
            }
        })
        .collect();
    Alcove { coords }
}

/// Sum |k_alpha|, which equals the length of the corresponding element.
pub fn alcove_length(alcove: &Alcove) -> i64 {
    alcove.coords.iter().map(|k| k.abs()).sum()
}

/// Coordinates of `s_i(A)` for a generator acting on the left.
pub fn left_mul_gen_coords(datum: &RootDatum, i: usize, alcove: &Alcove) -> Alcove {
    let k = &alcove.coords;
    let coords = if i == 0 {
        let s = datum.theta_reflection;
        (0..datum.n_pos)
            .map(|a| {
                let shift = datum.pair_int(&datum.positive_roots[datum.theta_short], a);
                let img = datum.weyl.root_image(s, a);
                if img > 0 {
                    k[img as usize - 1] + shift
                } else {
                    -k[(-img) as usize - 1] - 1 + shift
                }
            })
            .collect()
    } else {
        let s = datum.weyl.simple(i - 1);
        (0..datum.n_pos)
            .map(|a| {
                let img = datum.weyl.root_image(s, a);
                if img > 0 {
                    k[img as usize - 1]
                } else {
                    -k[(-img) as usize - 1] - 1
                }
            })
            .collect()
    };
    Alcove { coords }
}

/// Reconstruct the group element from alcove coordinates.
///
/// Validates the coroot-additivity constraints, then walks back to the
/// fundamental alcove by left multiplications; the result is verified by a
/// round trip before it is returned.
pub fn element_of_alcove(datum: &RootDatum, alcove: &Alcove) -> Result<AffineElt, Error> {
    if alcove.coords.len() != datum.n_pos {
        return Err(Error::IncompatibleCoords(format!(
            "expected {} coordinates, got {}",
            datum.n_pos,
            alcove.coords.len()
        )));
    }
    for &(a, b, c) in &datum.coroot_triples {
        let (ka, kb, kc) = (alcove.coords[a], alcove.coords[b], alcove.coords[c]);
        if kc < ka + kb || kc > ka + kb + 1 {
            return Err(Error::IncompatibleCoords(format!(
                "k[{a}] + k[{b}] <= k[{c}] <= k[{a}] + k[{b}] + 1 fails: {ka} {kb} {kc}"
            )));
        }
    }
    let mut current = alcove.clone();
    let mut word = Vec::new();
    let mut budget = alcove_length(&current);
    while alcove_length(&current) > 0 {
        let mut stepped = false;
        for i in 0..=datum.rank {
            let next = left_mul_gen_coords(datum, i, &current);
            if alcove_length(&next) < alcove_length(&current) {
                word.push(i);
                current = next;
                stepped = true;
                break;
            }
        }
        if !stepped || budget < 0 {
            return Err(Error::IncompatibleCoords(
                "no descent towards the fundamental alcove".into(),
            ));
        }
        budget -= 1;
    }
    let mut elt = AffineElt::identity();
    for &i in &word {
        elt = mult(datum, elt, generator(datum, i));
    }
    if alcove_of(datum, elt) != *alcove {
        return Err(Error::IncompatibleCoords(
            "coordinates do not describe an alcove".into(),
        ));
    }
    Ok(elt)
}

/// Left descent set as a bitmask over generators 0..=rank.
pub fn left_descents(datum: &RootDatum, a: AffineElt) -> u16 {
    let alcove = alcove_of(datum, a);
    let mut mask = 0u16;
    if alcove.coords[datum.theta_short] >= 1 {
        mask |= 1;
    }
    for i in 1..=datum.rank {
        let root_idx = simple_root_index(datum, i - 1);
        if alcove.coords[root_idx] <= -1 {
            mask |= 1 << i;
        }
    }
    mask
}

/// Right descent set as a bitmask over generators 0..=rank.
pub fn right_descents(datum: &RootDatum, a: AffineElt) -> u16 {
    left_descents(datum, inverse(datum, a))
}

/// Index of simple root `i` (0-based) among the sorted positive roots.
pub fn simple_root_index(datum: &RootDatum, i: usize) -> usize {
    // Lexicographic sort puts e_i at a computable spot; scan once.
    datum
        .positive_roots
        .iter()
        .position(|r| r.iter().enumerate().all(|(j, &c)| c == i64::from(j == i)))
        .expect("simple roots are positive roots")
}

/// The chamber containing the (open) alcove: the unique finite `w` with
/// `w^{-1}(interior) ` dominant.
pub fn chamber_of(datum: &RootDatum, alcove: &Alcove) -> u16 {
    let mut mask: u64 = 0;
    for a in 0..datum.n_pos {
        if alcove.coords[a] < 0 {
            mask |= 1 << a;
        }
    }
    for w in 0..datum.weyl_order() as u16 {
        let wi = datum.weyl.inverse(w);
        let mut wmask: u64 = 0;
        for a in 0..datum.n_pos {
            if datum.weyl.root_image(wi, a) < 0 {
                wmask |= 1 << a;
            }
        }
        if wmask == mask {
            return w;
        }
    }
    unreachable!("every alcove lies in exactly one open chamber");
}

/// The |W| alcoves whose closure contains the special point, labelled by
/// the finite Weyl group via the local chamber structure at the point.
pub fn alcoves_around(datum: &RootDatum, v: &SpecialPoint) -> Vec<(u16, Alcove)> {
    (0..datum.weyl_order() as u16)
        .map(|w| {
            let wi = datum.weyl.inverse(w);
            let coords = (0..datum.n_pos)
                .map(|a| {
                    let lvl = v.level(datum, a);
                    if datum.weyl.root_image(wi, a) > 0 {
                        lvl
                    } else {
                        lvl - 1
                    }
                })
                .collect();
            (w, Alcove { coords })
        })
        .collect()
}

/// Canonical reduced word (descend by the smallest right descent).
pub fn canonical_word(datum: &RootDatum, a: AffineElt) -> Vec<usize> {
    let mut x = a;
    let mut rev = Vec::new();
    while !x.is_identity() {
        let rd = right_descents(datum, x);
        let i = (0..=datum.rank)
            .find(|i| rd & (1 << i) != 0)
            .expect("non-identity element has a right descent");
        rev.push(i);
        x = right_mul_gen(datum, x, i);
    }
    rev.reverse();
    rev
}

/// Element key used in exported files: the canonical word, or "e".
pub fn element_key(datum: &RootDatum, a: AffineElt) -> String {
    let word = canonical_word(datum, a);
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("")
    }
}

/// Parse an element key produced by `element_key`.
pub fn parse_element_key(datum: &RootDatum, key: &str) -> Result<AffineElt, Error> {
    if key == "e" {
        return Ok(AffineElt::identity());
    }
    let mut elt = AffineElt::identity();
    for ch in key.chars() {
        let i = ch
            .to_digit(10)
            .ok_or_else(|| Error::Invalid(format!("bad element key {key:?}")))?
            as usize;
        if i > datum.rank {
            return Err(Error::Invalid(format!(
                "generator {i} out of range for {}",
                datum.name()
            )));
        }
        elt = right_mul_gen(datum, elt, i);
    }
    Ok(elt)
}

/// A ball of elements of length <= radius, sorted by (length, finite part,
/// translation), with cached lengths and descent sets.
pub struct Ball {
    pub radius: u32,
    pub elements: Vec<AffineElt>,
    pub index: HashMap<AffineElt, u32>,
    pub lengths: Vec<u32>,
    pub left_desc: Vec<u16>,
    pub right_desc: Vec<u16>,
    /// `len_start[l]` = first index of length `l`; has `radius + 2` entries.
    pub len_start: Vec<usize>,
}

pub const DEFAULT_BALL_CAP: usize = 2_000_000;

/// Enumerate the ball of radius `radius` by breadth-first search.  The BFS
/// level of each element is cross-checked against the closed-form length.
pub fn ball(datum: &RootDatum, radius: u32, cap: usize) -> Result<Ball, Error> {
    let mut layers: Vec<Vec<AffineElt>> = vec![vec![AffineElt::identity()]];
    let mut seen: HashMap<AffineElt, u32> = HashMap::new();
    seen.insert(AffineElt::identity(), 0);
    for level in 1..=radius {
        let mut next = Vec::new();
        for &x in &layers[(level - 1) as usize] {
            for i in 0..=datum.rank {
                let y = right_mul_gen(datum, x, i);
                if seen.contains_key(&y) {
                    continue;
                }
                let l = length(datum, y);
                if l != level {
                    debug_assert!(l + 1 == level || l == level, "length formula vs BFS");
                    continue;
                }
                seen.insert(y, level);
                next.push(y);
            }
        }
        next.sort();
        if seen.len() > cap {
            return Err(Error::ResourceCap(format!(
                "ball of radius {radius} in {} exceeds cap {cap}",
                datum.name()
            )));
        }
        layers.push(next);
    }
    let mut elements = Vec::with_capacity(seen.len());
    let mut lengths = Vec::with_capacity(seen.len());
    let mut len_start = Vec::with_capacity(radius as usize + 2);
    for (l, layer) in layers.iter().enumerate() {
        len_start.push(elements.len());
        for &x in layer {
            debug_assert_eq!(length(datum, x), l as u32);
            elements.push(x);
            lengths.push(l as u32);
        }
    }
    len_start.push(elements.len());
    let index: HashMap<AffineElt, u32> = elements
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, i as u32))
        .collect();
    let left_desc: Vec<u16> = elements.iter().map(|&x| left_descents(datum, x)).collect();
    let right_desc: Vec<u16> = elements.iter().map(|&x| right_descents(datum, x)).collect();
    Ok(Ball {
        radius,
        elements,
        index,
        lengths,
        left_desc,
        right_desc,
        len_start,
    })
}

impl Ball {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: AffineElt) -> bool {
        self.index.contains_key(&x)
    }
}

/// Bruhat order via the lifting property, with memoization.
pub struct BruhatMemo<'a> {
    datum: &'a RootDatum,
    memo: HashMap<(AffineElt, AffineElt), bool>,
}

impl<'a> BruhatMemo<'a> {
    pub fn new(datum: &'a RootDatum) -> Self {
        BruhatMemo { datum, memo: HashMap::new() }
    }

    pub fn leq(&mut self, x: AffineElt, y: AffineElt) -> bool {
        if x == y || x.is_identity() {
            return true;
        }
        let (lx, ly) = (length(self.datum, x), length(self.datum, y));
        if lx >= ly {
            return false;
        }
        if let Some(&r) = self.memo.get(&(x, y)) {
            return r;
        }
        let ld = left_descents(self.datum, y);
        let i = (0..=self.datum.rank)
            .find(|i| ld & (1 << i) != 0)
            .expect("non-identity element has a left descent");
        let sy = left_mul_gen(self.datum, i, y);
        let sx = left_mul_gen(self.datum, i, x);
        let r = if length(self.datum, sx) < lx {
            self.leq(sx, sy)
        } else {
            self.leq(x, sy)
        };
        self.memo.insert((x, y), r);
        r
    }
}

/// One-shot Bruhat comparison.
pub fn bruhat_leq(datum: &RootDatum, x: AffineElt, y: AffineElt) -> bool {
    BruhatMemo::new(datum).leq(x, y)
}

/// Subword-property oracle for Bruhat order, used to validate `bruhat_leq`.
pub fn bruhat_leq_subword(datum: &RootDatum, x: AffineElt, y: AffineElt) -> bool {
    fn go(
        datum: &RootDatum,
        word: &[usize],
        pos: usize,
        x: AffineElt,
        memo: &mut HashMap<(usize, AffineElt), bool>,
    ) -> bool {
        if x.is_identity() {
            return true;
        }
        if pos == word.len() {
            return false;
        }
        if let Some(&r) = memo.get(&(pos, x)) {
            return r;
        }
        let mut r = go(datum, word, pos + 1, x, memo);
        if !r {
            let sx = left_mul_gen(datum, word[pos], x);
            if length(datum, sx) < length(datum, x) {
                r = go(datum, word, pos + 1, sx, memo);
            }
        }
        memo.insert((pos, x), r);
        r
    }
    let word = canonical_word(datum, y);
    go(datum, &word, 0, x, &mut HashMap::new())
}

/// Interior point of the alcove of `x`, exact in simple-root coordinates.
pub fn interior_point(datum: &RootDatum, x: AffineElt) -> RatVec {
    // rho / h lies in the open fundamental alcove.
    let h = Rat::from_integer(datum.coxeter as i64);
    let p0: RatVec = datum.rho.iter().map(|&c| c / h).collect();
    let moved = datum.act_weight(x.w, &p0);
    (0..datum.rank)
        .map(|k| moved[k] + Rat::from_integer(x.t[k]))
        .collect()
}

/// JSON-lines record for ball dumps.
pub fn element_record(datum: &RootDatum, x: AffineElt) -> serde_json::Value {
    let alcove = alcove_of(datum, x);
    let word = canonical_word(datum, x);
    serde_json::json!({
        "word": word,
        "finite_part": datum.weyl.elements[x.w as usize].word,
        "translation": x.t[..datum.rank],
        "length": length(datum, x),
        "left_descents": mask_to_vec(datum, left_descents(datum, x)),
        "right_descents": mask_to_vec(datum, right_descents(datum, x)),
        "alcove_coords": alcove.coords,
    })
}

pub fn mask_to_vec(datum: &RootDatum, mask: u16) -> Vec<usize> {
    (0..=datum.rank).filter(|i| mask & (1 << i) != 0).collect()
}

/// The dot action of an affine element: `x . v = x(v + rho) - rho`.
pub fn dot_action_affine(datum: &RootDatum, x: AffineElt, v: &[Rat]) -> RatVec {
    let shifted: RatVec = (0..datum.rank).map(|k| v[k] + datum.rho[k]).collect();
    let moved = datum.act_weight(x.w, &shifted);
    (0..datum.rank)
        .map(|k| moved[k] + Rat::from_integer(x.t[k]) - datum.rho[k])
        .collect()
}

/// `rho` as a special point.
pub fn rho_point(datum: &RootDatum) -> SpecialPoint {
    SpecialPoint::new(datum, datum.rho.clone()).expect("rho is special")
}

/// `2 * rho` as a special point (always in the root lattice).
pub fn two_rho_point(datum: &RootDatum) -> SpecialPoint {
    let coords: RatVec = datum.rho.iter().map(|&c| c * Rat::from_integer(2)).collect();
    SpecialPoint::new(datum, coords).expect("2 rho is special")
}

/// The element whose alcove is the lowest of the |W| alcoves around `2 rho`
/// (all coordinates as small as possible); an involution.
pub fn lowest_alcove_around_two_rho(datum: &RootDatum) -> AffineElt {
    let mut t = [0i64; MAX_RANK];
    let two_rho: Vec<i64> = datum
        .rho
        .iter()
        .map(|&c| (c * Rat::from_integer(2)).to_integer())
        .collect();
    t[..datum.rank].copy_from_slice(&two_rho);
    AffineElt { w: datum.weyl.w0, t }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_datum, Series};

    fn a1() -> RootDatum {
        build_root_datum(Series::A, 1).unwrap()
    }

    fn a2() -> RootDatum {
        build_root_datum(Series::A, 2).unwrap()
    }

    #[test]
    fn affine_a1_basics() {
        let d = a1();
        let s0 = generator(&d, 0);
        let s1 = generator(&d, 1);
        assert_eq!(length(&d, s0), 1);
        assert_eq!(length(&d, s1), 1);
        // s0 s1 is the translation by alpha
        let x = mult(&d, s0, s1);
        assert_eq!(x.w, 0);
        assert_eq!(x.t[0], 1);
        assert_eq!(length(&d, x), 2);
        // involutions and inverses
        assert!(mult(&d, s0, s0).is_identity());
        assert_eq!(inverse(&d, x), mult(&d, s1, s0));
    }

    #[test]
    fn ball_counts() {
        let d = a1();
        let b = ball(&d, 3, 10_000).unwrap();
        assert_eq!(b.len(), 7); // 1 + 2 per positive length

        let d2 = a2();
        let b2 = ball(&d2, 2, 10_000).unwrap();
        assert_eq!(b2.len(), 10); // 1 + 3 + 6
        assert_eq!(b2.len_start[1], 1);
        assert_eq!(b2.len_start[2], 4);
    }

    #[test]
    fn ball_cap_guard() {
        let d = a2();
        assert!(matches!(ball(&d, 10, 5), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn descents_example_a2() {
        let d = a2();
        let x = mult(&d, generator(&d, 0), generator(&d, 1));
        assert_eq!(mask_to_vec(&d, right_descents(&d, x)), vec![1]);
        assert_eq!(mask_to_vec(&d, left_descents(&d, x)), vec![0]);
        assert_eq!(left_descents(&d, AffineElt::identity()), 0);
        for i in 0..=d.rank {
            let g = generator(&d, i);
            assert_eq!(mask_to_vec(&d, left_descents(&d, g)), vec![i]);
            assert_eq!(mask_to_vec(&d, right_descents(&d, g)), vec![i]);
        }
    }

    #[test]
    fn alcove_roundtrip_on_ball() {
        for (s, r) in [(Series::A, 2), (Series::B, 2), (Series::G, 2), (Series::A, 3)] {
            let d = build_root_datum(s, r).unwrap();
            let b = ball(&d, 6, 100_000).unwrap();
            for &x in &b.elements {
                let alc = alcove_of(&d, x);
                assert_eq!(alcove_length(&alc) as u32, length(&d, x));
                let back = element_of_alcove(&d, &alc).unwrap();
                assert_eq!(back, x, "roundtrip in {}", d.name());
            }
        }
    }

    #[test]
    fn finite_elements_have_sign_pattern_alcoves() {
        let d = a2();
        for w in 0..d.weyl_order() as u16 {
            let x = AffineElt { w, t: [0; MAX_RANK] };
            let alc = alcove_of(&d, x);
            let wi = d.weyl.inverse(w);
            for a in 0..d.n_pos {
                let expect = if d.weyl.root_image(wi, a) > 0 { 0 } else { -1 };
                assert_eq!(alc.coords[a], expect);
            }
        }
    }

    #[test]
    fn chamber_examples() {
        let d = a2();
        // fundamental alcove -> identity chamber
        let id_alc = alcove_of(&d, AffineElt::identity());
        assert_eq!(chamber_of(&d, &id_alc), 0);
        // alcove of w0 -> w0 chamber
        let w0 = AffineElt { w: d.weyl.w0, t: [0; MAX_RANK] };
        assert_eq!(chamber_of(&d, &alcove_of(&d, w0)), d.weyl.w0);
        // dominant translate of the fundamental alcove -> identity chamber
        let mut t = [0i64; MAX_RANK];
        t[0] = 2;
        t[1] = 2; // 2 alpha_1 + 2 alpha_2 is dominant regular for A2
        let x = AffineElt { w: 0, t };
        assert_eq!(chamber_of(&d, &alcove_of(&d, x)), 0);
    }

    #[test]
    fn alcoves_around_examples() {
        let d = a2();
        let origin = SpecialPoint::new(&d, vec![Rat::zero(), Rat::zero()]).unwrap();
        let around = alcoves_around(&d, &origin);
        assert_eq!(around.len(), 6);
        for (w, alc) in &around {
            let x = element_of_alcove(&d, alc).unwrap();
            assert_eq!(x.w, *w);
            assert_eq!(x.t, [0; MAX_RANK]);
        }
        let two_rho = two_rho_point(&d);
        assert!(two_rho.in_root_lattice());
        assert_eq!(alcoves_around(&d, &two_rho).len(), 6);

        let d1 = a1();
        let rho = rho_point(&d1);
        assert_eq!(alcoves_around(&d1, &rho).len(), 2);

        // non-special point rejected
        assert!(SpecialPoint::new(&d1, vec![Rat::new(1, 3)]).is_err());
    }

    #[test]
    fn bruhat_matches_subword_oracle() {
        let d = a2();
        let b = ball(&d, 5, 100_000).unwrap();
        for &x in &b.elements {
            for &y in &b.elements {
                assert_eq!(
                    bruhat_leq(&d, x, y),
                    bruhat_leq_subword(&d, x, y),
                    "pair {} {}",
                    element_key(&d, x),
                    element_key(&d, y)
                );
            }
        }
    }

    #[test]
    fn length_parity_and_subadditivity_sampled() {
        let d = a2();
        let b = ball(&d, 4, 100_000).unwrap();
        for &x in &b.elements {
            let li = length(&d, inverse(&d, x));
            assert_eq!(li, length(&d, x));
            for &y in &b.elements {
                let lxy = length(&d, mult(&d, x, y));
                let (lx, ly) = (length(&d, x), length(&d, y));
                assert!(lxy <= lx + ly);
                assert_eq!((lxy + lx + ly) % 2, 0);
            }
        }
    }

    #[test]
    fn incompatible_coords_rejected() {
        let d = a2();
        // k for alpha_1, alpha_1+alpha_2, alpha_2 sorted lexicographically:
        // positive roots are [0,1], [1,0], [1,1]; choose an inconsistent triple.
        let bad = Alcove { coords: vec![0, 0, 5] };
        assert!(element_of_alcove(&d, &bad).is_err());
    }

    #[test]
    fn lowest_alcove_around_two_rho_is_involution() {
        for (s, r) in [(Series::A, 1), (Series::A, 2), (Series::B, 2), (Series::G, 2)] {
            let d = build_root_datum(s, r).unwrap();
            let dplus = lowest_alcove_around_two_rho(&d);
            assert!(mult(&d, dplus, dplus).is_identity());
            let alc = alcove_of(&d, dplus);
            for a in 0..d.n_pos {
                let lvl = d.pair_int(&dplus.t[..d.rank], a);
                assert_eq!(alc.coords[a], lvl - 1, "lowest alcove at 2rho in {}", d.name());
            }
        }
    }

    #[test]
    fn element_keys_roundtrip() {
        let d = a2();
        let b = ball(&d, 5, 100_000).unwrap();
        for &x in &b.elements {
            let key = element_key(&d, x);
            assert_eq!(parse_element_key(&d, &key).unwrap(), x);
        }
    }
}
