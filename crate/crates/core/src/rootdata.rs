//! Root-system data for the supported irreducible types, with the finite
//! Weyl group fully enumerated.
//!
//! All roots and weights are stored as exact vectors in the simple-root
//! basis: roots with integer coordinates, weights with rational ones.
//! Pairings against coroots are exact integers throughout.

use std::collections::HashMap;
use std::fmt;

use num::rational::Ratio;
use num::{One, Zero};
use serde::Serialize;

use crate::error::Error;

pub type Rat = Ratio<i64>;
/// Weight-space vector in simple-root coordinates.
pub type RatVec = Vec<Rat>;

pub const MAX_RANK: usize = 4;

/// Series letter of an irreducible root system.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Series {
    A,
    B,
    C,
    G,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// The supported irreducible types.
pub const SUPPORTED: [(Series, usize); 7] = [
    (Series::A, 1),
    (Series::A, 2),
    (Series::A, 3),
    (Series::B, 2),
    (Series::B, 3),
    (Series::C, 3),
    (Series::G, 2),
];

/// Parse a label like "A2", "b3", "G2".
pub fn parse_type(s: &str) -> Result<(Series, usize), Error> {
    let mut chars = s.chars();
    let letter = chars.next().ok_or_else(|| Error::UnsupportedType(s.to_string()))?;
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| Error::UnsupportedType(s.to_string()))?;
    let series = match letter.to_ascii_uppercase() {
        'A' => Series::A,
        'B' => Series::B,
        'C' => Series::C,
        'G' => Series::G,
        _ => return Err(Error::UnsupportedType(s.to_string())),
    };
    if !SUPPORTED.contains(&(series, rank)) {
        return Err(Error::UnsupportedType(s.to_string()));
    }
    Ok((series, rank))
}

fn cartan_matrix(series: Series, rank: usize) -> Option<Vec<Vec<i64>>> {
    // cartan[i][j] = pairing of alpha_j against the coroot of alpha_i,
    // so s_i(alpha_j) = alpha_j - cartan[i][j] * alpha_i.
    let path = |rank: usize| -> Vec<Vec<i64>> {
        (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        if i == j {
                            2
                        } else if i.abs_diff(j) == 1 {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect()
    };
    match (series, rank) {
        (Series::A, 1..=3) => Some(path(rank)),
        (Series::B, 2) => Some(vec![vec![2, -1], vec![-2, 2]]),
        (Series::B, 3) => {
            let mut c = path(3);
            c[2][1] = -2; // alpha_3 short
            Some(c)
        }
        (Series::C, 3) => {
            let mut c = path(3);
            c[1][2] = -2; // alpha_3 long
            Some(c)
        }
        (Series::G, 2) => Some(vec![vec![2, -3], vec![-1, 2]]),
        _ => None,
    }
}

/// One element of the finite Weyl group.
#[derive(Debug, Clone, Serialize)]
pub struct WeylElt {
    /// A reduced word in the simple reflections (0-based indices).
    pub word: Vec<usize>,
    /// Integer matrix of the action on the root lattice, columns are the
    /// images of the simple roots.
    pub matrix_action: Vec<Vec<i64>>,
}

/// Fully enumerated finite Weyl group with lookup tables.
pub struct WeylGroup {
    pub rank: usize,
    pub elements: Vec<WeylElt>,
    pub lengths: Vec<u32>,
    mult_table: Vec<u16>,
    inv_table: Vec<u16>,
    /// `root_action[w][a]` is the signed index of `w(alpha_a)` among the
    /// positive roots: `b + 1` when the image is the positive root `b`,
    /// `-(b + 1)` when it is minus that root.
    root_action: Vec<Vec<i32>>,
    pub w0: u16,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mult(&self, a: u16, b: u16) -> u16 {
        self.mult_table[a as usize * self.elements.len() + b as usize]
    }

    pub fn inverse(&self, a: u16) -> u16 {
        self.inv_table[a as usize]
    }

    pub fn length(&self, a: u16) -> u32 {
        self.lengths[a as usize]
    }

    /// Signed positive-root index of `w(alpha_a)`, `a` a positive-root index.
    pub fn root_image(&self, w: u16, a: usize) -> i32 {
        self.root_action[w as usize][a]
    }

    pub fn simple(&self, i: usize) -> u16 {
        // Simple reflections are the length-1 elements, found by word.
        self.simple_indices()[i]
    }

    fn simple_indices(&self) -> Vec<u16> {
        let mut out = vec![0u16; self.rank];
        for (idx, e) in self.elements.iter().enumerate() {
            if e.word.len() == 1 {
                out[e.word[0]] = idx as u16;
            }
        }
        out
    }
}

/// Immutable root-system context for one supported type.
pub struct RootDatum {
    pub series: Series,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, lexicographically sorted.
    pub positive_roots: Vec<Vec<i64>>,
    /// Matching coroots in simple-coroot coordinates.
    pub coroots: Vec<Vec<i64>>,
    /// `pairing[a][j]` = pairing of alpha_j against the coroot of positive root `a`.
    pub pairing: Vec<Vec<i64>>,
    /// Heights of the coroots (sum of simple-coroot coordinates).
    pub coroot_heights: Vec<i64>,
    /// Index of the positive root whose coroot is the highest coroot; the
    /// affine reflection s_0 is the reflection in its hyperplane at level 1.
    pub theta_short: usize,
    /// Fundamental weights in simple-root coordinates.
    pub fundamental_weights: Vec<RatVec>,
    /// Half-sum of positive roots, in simple-root coordinates.
    pub rho: RatVec,
    /// Number of positive roots.
    pub n_pos: usize,
    /// Coxeter number.
    pub coxeter: usize,
    pub weyl: WeylGroup,
    /// Finite-group index of the reflection in `theta_short`.
    pub theta_reflection: u16,
    /// List of (a, b, c) with coroot_a + coroot_b = coroot_c.
    pub coroot_triples: Vec<(usize, usize, usize)>,
}

impl RootDatum {
    /// Build the full datum for a supported `(series, rank)`.
    pub fn build(series: Series, rank: usize) -> Result<RootDatum, Error> {
        let cartan = cartan_matrix(series, rank).ok_or_else(|| {
            Error::UnsupportedType(format!(
                "{series}{rank} (supported: A1-A3, B2, B3, C3, G2)"
            ))
        })?;

        // Generate positive roots together with their coroots by reflection
        // closure from the simple ones.
        let mut roots: Vec<(Vec<i64>, Vec<i64>)> = (0..rank)
            .map(|i| {
                let mut r = vec![0i64; rank];
                r[i] = 1;
                (r.clone(), r)
            })
            .collect();
        let mut seen: HashMap<Vec<i64>, usize> = roots
            .iter()
            .enumerate()
            .map(|(i, (r, _))| (r.clone(), i))
            .collect();
        let mut frontier: Vec<usize> = (0..rank).collect();
        while let Some(idx) = frontier.pop() {
            let (root, coroot) = roots[idx].clone();
            for i in 0..rank {
                let pair: i64 = (0..rank).map(|j| cartan[i][j] * root[j]).sum();
                let mut new_root = root.clone();
                new_root[i] -= pair;
                if new_root.iter().any(|&c| c < 0) {
                    continue;
                }
                if seen.contains_key(&new_root) {
                    continue;
                }
                let copair: i64 = (0..rank).map(|j| cartan[j][i] * coroot[j]).sum();
                let mut new_coroot = coroot.clone();
                new_coroot[i] -= copair;
                seen.insert(new_root.clone(), roots.len());
                frontier.push(roots.len());
                roots.push((new_root, new_coroot));
            }
        }
        roots.sort();
        let positive_roots: Vec<Vec<i64>> = roots.iter().map(|(r, _)| r.clone()).collect();
        let coroots: Vec<Vec<i64>> = roots.iter().map(|(_, c)| c.clone()).collect();
        let n_pos = positive_roots.len();

        let pairing: Vec<Vec<i64>> = coroots
            .iter()
            .map(|cv| {
                (0..rank)
                    .map(|j| (0..rank).map(|i| cv[i] * cartan[i][j]).sum())
                    .collect()
            })
            .collect();
        let coroot_heights: Vec<i64> = coroots.iter().map(|c| c.iter().sum()).collect();
        let theta_short = (0..n_pos)
            .max_by_key(|&a| coroot_heights[a])
            .expect("nonempty root system");

        // Fundamental weights: columns of the inverse Cartan matrix.
        let cartan_rat: Vec<Vec<Rat>> = cartan
            .iter()
            .map(|row| row.iter().map(|&x| Rat::from_integer(x)).collect())
            .collect();
        let inv = invert_rational(&cartan_rat)
            .expect("Cartan matrices of finite type are invertible");
        let fundamental_weights: Vec<RatVec> = (0..rank)
            .map(|i| (0..rank).map(|k| inv[k][i]).collect())
            .collect();
        let rho: RatVec = (0..rank)
            .map(|k| {
                (0..rank)
                    .map(|i| fundamental_weights[i][k])
                    .fold(Rat::zero(), |a, b| a + b)
            })
            .collect();

        let weyl = enumerate_weyl_group(&cartan, rank)?;
        let coxeter = 2 * n_pos / rank;

        // Locate the reflection in theta_short among the finite elements.
        let refl_matrix = reflection_matrix(&cartan, &positive_roots[theta_short], &coroots[theta_short]);
        let theta_reflection = weyl
            .elements
            .iter()
            .position(|e| e.matrix_action == refl_matrix)
            .expect("reflection must be a Weyl element") as u16;

        let index_of: HashMap<&Vec<i64>, usize> =
            coroots.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut coroot_triples = Vec::new();
        for a in 0..n_pos {
            for b in (a + 1)..n_pos {
                let sum: Vec<i64> = (0..rank).map(|k| coroots[a][k] + coroots[b][k]).collect();
                if let Some(&c) = index_of.get(&sum) {
                    coroot_triples.push((a, b, c));
                }
            }
        }

        Ok(RootDatum {
            series,
            rank,
            cartan,
            positive_roots,
            coroots,
            pairing,
            coroot_heights,
            theta_short,
            fundamental_weights,
            rho,
            n_pos,
            coxeter,
            weyl,
            theta_reflection,
            coroot_triples,
        })
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.order()
    }

    /// Exact pairing of a rational weight vector against the coroot
    /// of positive root `a`.
    pub fn pair_weight(&self, v: &[Rat], a: usize) -> Rat {
        (0..self.rank)
            .map(|j| v[j] * Rat::from_integer(self.pairing[a][j]))
            .fold(Rat::zero(), |x, y| x + y)
    }

    /// Integer pairing of a root-lattice vector against coroot `a`.
    pub fn pair_int(&self, t: &[i64], a: usize) -> i64 {
        (0..self.rank).map(|j| t[j] * self.pairing[a][j]).sum()
    }

    /// Apply a finite Weyl element to an integer root-lattice vector.
    pub fn act_int(&self, w: u16, t: &[i64]) -> Vec<i64> {
        let m = &self.weyl.elements[w as usize].matrix_action;
        (0..self.rank)
            .map(|k| (0..self.rank).map(|j| m[k][j] * t[j]).sum())
            .collect()
    }

    /// Apply a finite Weyl element to a rational weight vector.
    pub fn act_weight(&self, w: u16, v: &[Rat]) -> RatVec {
        let m = &self.weyl.elements[w as usize].matrix_action;
        (0..self.rank)
            .map(|k| {
                (0..self.rank)
                    .map(|j| Rat::from_integer(m[k][j]) * v[j])
                    .fold(Rat::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// Dot action of a finite Weyl element: `w . v = w(v + rho) - rho`.
    pub fn dot_action(&self, w: u16, v: &[Rat]) -> RatVec {
        let shifted: RatVec = (0..self.rank).map(|k| v[k] + self.rho[k]).collect();
        let moved = self.act_weight(w, &shifted);
        (0..self.rank).map(|k| moved[k] - self.rho[k]).collect()
    }

    /// Serializable summary of the datum for golden-file tests.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.name(),
            "rank": self.rank,
            "cartan": self.cartan,
            "positive_roots": self.positive_roots,
            "coroots": self.coroots,
            "fundamental_weights": self.fundamental_weights.iter().map(|w| rat_vec_strings(w)).collect::<Vec<_>>(),
            "rho": rat_vec_strings(&self.rho),
            "n_positive": self.n_pos,
            "coxeter_number": self.coxeter,
            "weyl_order": self.weyl_order(),
        })
    }
}

pub fn rat_vec_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

fn reflection_matrix(cartan: &[Vec<i64>], root: &[i64], coroot: &[i64]) -> Vec<Vec<i64>> {
    let rank = root.len();
    // s_alpha(alpha_j) = alpha_j - <alpha_j, alpha^vee> alpha
    (0..rank)
        .map(|k| {
            (0..rank)
                .map(|j| {
                    let pair: i64 = (0..rank).map(|i| coroot[i] * cartan[i][j]).sum();
                    (if k == j { 1 } else { 0 }) - pair * root[k]
                })
                .collect()
        })
        .collect()
}

fn invert_rational(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let ac = a[col][j];
                    let ic = inv[col][j];
                    a[r][j] -= f * ac;
                    inv[r][j] -= f * ic;
                }
            }
        }
    }
    Some(inv)
}

fn enumerate_weyl_group(cartan: &[Vec<i64>], rank: usize) -> Result<WeylGroup, Error> {
    let simple_mats: Vec<Vec<Vec<i64>>> = (0..rank)
        .map(|i| {
            let mut root = vec![0i64; rank];
            root[i] = 1;
            reflection_matrix(cartan, &root, &root)
        })
        .collect();

    let identity: Vec<Vec<i64>> = (0..rank)
        .map(|k| (0..rank).map(|j| if k == j { 1 } else { 0 }).collect())
        .collect();

    let mut elements = vec![WeylElt { word: vec![], matrix_action: identity.clone() }];
    let mut lengths = vec![0u32];
    let mut index: HashMap<Vec<Vec<i64>>, u16> = HashMap::new();
    index.insert(identity, 0);

    // BFS over words; first discovery gives a reduced word.
    let mut frontier = vec![0u16];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &w in &frontier {
            for i in 0..rank {
                let m = mat_mul(&elements[w as usize].matrix_action, &simple_mats[i]);
                if !index.contains_key(&m) {
                    let mut word = elements[w as usize].word.clone();
                    word.push(i);
                    let id = elements.len() as u16;
                    index.insert(m.clone(), id);
                    lengths.push(lengths[w as usize] + 1);
                    elements.push(WeylElt { word, matrix_action: m });
                    next.push(id);
                }
            }
        }
        frontier = next;
    }

    let order = elements.len();
    if order > u16::MAX as usize {
        return Err(Error::ResourceCap("finite Weyl group too large".into()));
    }

    let mut mult_table = vec![0u16; order * order];
    for a in 0..order {
        for b in 0..order {
            let m = mat_mul(&elements[a].matrix_action, &elements[b].matrix_action);
            mult_table[a * order + b] = index[&m];
        }
    }
    let mut inv_table = vec![0u16; order];
    for a in 0..order {
        let b = (0..order)
            .find(|&b| mult_table[a * order + b] == 0)
            .expect("group closure");
        inv_table[a] = b as u16;
    }

    let w0 = (0..order).max_by_key(|&a| lengths[a]).unwrap() as u16;

    Ok(WeylGroup {
        rank,
        elements,
        lengths,
        mult_table,
        inv_table,
        root_action: Vec::new(),
        w0,
    })
}

pub(crate) fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|k| {
            (0..n)
                .map(|j| (0..n).map(|t| a[k][t] * b[t][j]).sum())
                .collect()
        })
        .collect()
}

/// Finish the datum: fill in the root-permutation table (needs both the
/// group and the sorted positive roots, so it runs after `build`).
pub fn finalize_root_action(datum: &mut RootDatum) {
    let n_pos = datum.n_pos;
    let rank = datum.rank;
    let index_of: HashMap<Vec<i64>, usize> = datum
        .positive_roots
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), i))
        .collect();
    let order = datum.weyl.order();
    let mut table = Vec::with_capacity(order);
    for w in 0..order {
        let m = &datum.weyl.elements[w].matrix_action;
        let mut row = Vec::with_capacity(n_pos);
        for a in 0..n_pos {
            let img: Vec<i64> = (0..rank)
                .map(|k| (0..rank).map(|j| m[k][j] * datum.positive_roots[a][j]).sum())
                .collect();
            let signed = if let Some(&b) = index_of.get(&img) {
                b as i32 + 1
            } else {
                let neg: Vec<i64> = img.iter().map(|&c| -c).collect();
                let b = index_of[&neg];
                -(b as i32 + 1)
            };
            row.push(signed);
        }
        table.push(row);
    }
    datum.weyl.root_action = table;
}

/// Build a complete, ready-to-use root datum.
pub fn build_root_datum(series: Series, rank: usize) -> Result<RootDatum, Error> {
    let mut datum = RootDatum::build(series, rank)?;
    finalize_root_action(&mut datum);
    debug_assert_eq!(datum.coxeter, 2 * datum.n_pos / datum.rank);
    Ok(datum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: Series, r: usize) -> RootDatum {
        build_root_datum(s, r).unwrap()
    }

    #[test]
    fn counts_for_all_supported_types() {
        let expect = [
            (Series::A, 1, 1, 2, 2),
            (Series::A, 2, 3, 3, 6),
            (Series::A, 3, 6, 4, 24),
            (Series::B, 2, 4, 4, 8),
            (Series::B, 3, 9, 6, 48),
            (Series::C, 3, 9, 6, 48),
            (Series::G, 2, 6, 6, 12),
        ];
        for (s, r, n, h, w) in expect {
            let d = datum(s, r);
            assert_eq!(d.n_pos, n, "{s}{r} positive roots");
            assert_eq!(d.coxeter, h, "{s}{r} Coxeter number");
            assert_eq!(d.weyl_order(), w, "{s}{r} Weyl order");
            assert_eq!(d.weyl.length(d.weyl.w0) as usize, n, "{s}{r} l(w0)=N");
        }
    }

    #[test]
    fn rho_pairs_to_one_with_simple_coroots() {
        for (s, r) in SUPPORTED {
            let d = datum(s, r);
            for i in 0..d.rank {
                let a = d
                    .positive_roots
                    .iter()
                    .position(|root| {
                        root.iter().enumerate().all(|(j, &c)| c == i64::from(j == i))
                    })
                    .unwrap();
                assert_eq!(d.pair_weight(&d.rho, a), Rat::one());
            }
        }
    }

    #[test]
    fn sum_of_positive_roots_is_two_rho() {
        for (s, r) in SUPPORTED {
            let d = datum(s, r);
            for k in 0..d.rank {
                let total: i64 = d.positive_roots.iter().map(|root| root[k]).sum();
                assert_eq!(Rat::from_integer(total), d.rho[k] * Rat::from_integer(2));
            }
        }
    }

    #[test]
    fn coxeter_relations_hold() {
        for (s, r) in SUPPORTED {
            let d = datum(s, r);
            for i in 0..d.rank {
                for j in 0..d.rank {
                    if i == j {
                        continue;
                    }
                    let m = match d.cartan[i][j] * d.cartan[j][i] {
                        0 => 2,
                        1 => 3,
                        2 => 4,
                        3 => 6,
                        other => panic!("unexpected Cartan product {other}"),
                    };
                    let si = d.weyl.simple(i);
                    let sj = d.weyl.simple(j);
                    let mut x = 0u16;
                    for _ in 0..m {
                        x = d.weyl.mult(x, si);
                        x = d.weyl.mult(x, sj);
                    }
                    assert_eq!(x, 0, "braid relation ({i},{j}) in {s}{r}");
                }
            }
        }
    }

    #[test]
    fn weyl_enumeration_closed_under_inverse_and_product() {
        let d = datum(Series::B, 2);
        let n = d.weyl_order() as u16;
        for a in 0..n {
            let inv = d.weyl.inverse(a);
            assert_eq!(d.weyl.mult(a, inv), 0);
            assert_eq!(d.weyl.length(a), d.weyl.length(inv));
            for b in 0..n {
                let _ = d.weyl.mult(a, b);
            }
        }
    }

    #[test]
    fn fundamental_weights_pair_kronecker() {
        for (s, r) in SUPPORTED {
            let d = datum(s, r);
            for i in 0..d.rank {
                for j in 0..d.rank {
                    let a = d
                        .positive_roots
                        .iter()
                        .position(|root| {
                            root.iter().enumerate().all(|(k, &c)| c == i64::from(k == j))
                        })
                        .unwrap();
                    let expected = if i == j { Rat::one() } else { Rat::zero() };
                    assert_eq!(d.pair_weight(&d.fundamental_weights[i], a), expected);
                }
            }
        }
    }

    #[test]
    fn dot_action_examples() {
        let d = datum(Series::A, 1);
        let zero = vec![Rat::zero()];
        // s . 0 = s(rho) - rho = -alpha
        let s = d.weyl.simple(0);
        assert_eq!(d.dot_action(s, &zero), vec![Rat::from_integer(-1)]);
        // -rho is fixed by the whole dot action
        let neg_rho: RatVec = d.rho.iter().map(|&x| -x).collect();
        for w in 0..d.weyl_order() as u16 {
            assert_eq!(d.dot_action(w, &neg_rho), neg_rho);
        }
        // identity fixes everything
        let lam = vec![Rat::new(3, 2)];
        assert_eq!(d.dot_action(0, &lam), lam);
    }

    #[test]
    fn unsupported_type_rejected() {
        let err = build_root_datum(Series::C, 2).err().expect("C2 unsupported");
        let msg = err.to_string();
        assert!(msg.contains("supported"), "{msg}");
        assert!(parse_type("D4").is_err());
        assert!(parse_type("A2").is_ok());
    }

    #[test]
    fn highest_coroot_height_is_h_minus_one() {
        for (s, r) in SUPPORTED {
            let d = datum(s, r);
            assert_eq!(
                d.coroot_heights[d.theta_short] as usize,
                d.coxeter - 1,
                "{s}{r}"
            );
        }
    }
}
