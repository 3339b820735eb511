//! Cell partitions of a window in the affine Weyl group.
//!
//! Cells are computed in the alcove convention: the element `w` is
//! identified with the alcove `w(A0)`, and the "left" preorder is generated
//! by mu-edges with the *right*-descent-set condition (u -> x when
//! mu(u,x) != 0 and R(x) is not contained in R(u)).  With this handedness
//! the dominant-chamber statements hold literally: each two-sided cell has
//! a canonical left cell whose alcoves are all dominant, and the lowest
//! two-sided cell meets each Weyl chamber in a single left cell.
//! Inversion carries this left-cell partition onto the right-cell one.

use std::collections::HashMap;

use serde::Serialize;

use crate::affine::{
    self, alcove_of, inverse, lowest_alcove_around_two_rho, Alcove, AffineElt, Ball,
};
use crate::error::Error;
use crate::hecke::{ACert, ATable, KlTable};
use crate::rootdata::RootDatum;

/// Which side of the cell structure to generate.
#[derive(Debug, Copy, Clone, PartialEq, Eq)]
enum Side {
    Left,
    Right,
    TwoSided,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellInfo {
    pub id: u32,
    /// Indices into the window's element list, sorted.
    pub members: Vec<u32>,
    /// Stable under growing the window from radius - margin to radius.
    pub complete: bool,
}

/// Left/right/two-sided cell assignment on a window.
pub struct CellPartition {
    pub radius: u32,
    pub margin: u32,
    pub elements: Vec<AffineElt>,
    pub index: HashMap<AffineElt, u32>,
    pub left_of: Vec<u32>,
    pub right_of: Vec<u32>,
    pub two_sided_of: Vec<u32>,
    pub left_cells: Vec<CellInfo>,
    pub right_cells: Vec<CellInfo>,
    pub two_sided_cells: Vec<CellInfo>,
    /// Id of the two-sided cell built from the closed-form description of
    /// the lowest cell, when the window meets it.
    pub lowest_cell: Option<u32>,
    /// Pairs (lower, higher) of two-sided cell ids, transitively closed.
    pub order: Vec<(u32, u32)>,
}

struct MuGraph {
    /// Symmetrized mu-pairs: for each pair only (shorter, longer) is kept.
    pairs: Vec<(u32, u32)>,
    rdesc: Vec<u16>,
    ldesc: Vec<u16>,
    lengths: Vec<u32>,
}

fn build_mu_pairs(datum: &RootDatum, window: &Ball, table: &mut KlTable) -> Result<MuGraph, Error> {
    let mut pairs = Vec::new();
    for &y in &window.elements {
        for (x, _mu) in table.mu_list(y)? {
            if let Some(&xi) = window.index.get(&x) {
                let yi = window.index[&y];
                pairs.push((xi, yi));
            }
        }
    }
    Ok(MuGraph {
        pairs,
        rdesc: window.right_desc.clone(),
        ldesc: window.left_desc.clone(),
        lengths: window.lengths.clone(),
    })
}

impl MuGraph {
    /// Directed edges u -> w (meaning w is reachable downwards from u in the
    /// chosen preorder), restricted to elements of length <= `cutoff`.
    fn edges(&self, side: Side, cutoff: u32) -> Vec<Vec<u32>> {
        let n = self.lengths.len();
        let mut adj = vec![Vec::new(); n];
        let not_subset = |a: u16, b: u16| a & !b != 0;
        for &(x, y) in &self.pairs {
            if self.lengths[x as usize] > cutoff || self.lengths[y as usize] > cutoff {
                continue;
            }
            let (lx, ly) = (self.ldesc[x as usize], self.ldesc[y as usize]);
            let (rx, ry) = (self.rdesc[x as usize], self.rdesc[y as usize]);
            let left_xy = not_subset(rx, ry); // edge y -> x in the left graph
            let left_yx = not_subset(ry, rx);
            let right_xy = not_subset(lx, ly);
            let right_yx = not_subset(ly, lx);
            let (fwd, bwd) = match side {
                Side::Left => (left_xy, left_yx),
                Side::Right => (right_xy, right_yx),
                Side::TwoSided => (left_xy || right_xy, left_yx || right_yx),
            };
            if fwd {
                adj[y as usize].push(x);
            }
            if bwd {
                adj[x as usize].push(y);
            }
        }
        adj
    }
}

/// Iterative Tarjan strongly connected components; returns (component id
/// per vertex, component count).  Vertices with length > cutoff are
/// excluded (component id u32::MAX).
fn scc(adj: &[Vec<u32>], active: &[bool]) -> (Vec<u32>, u32) {
    let n = adj.len();
    const NONE: u32 = u32::MAX;
    let mut ids = vec![NONE; n];
    let mut low = vec![0u32; n];
    let mut num = vec![NONE; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut next_num = 0u32;
    let mut next_comp = 0u32;

    #[derive(Clone)]
    struct Frame {
        v: u32,
        edge: usize,
    }

    for start in 0..n {
        if !active[start] || num[start] != NONE {
            continue;
        }
        let mut call_stack = vec![Frame { v: start as u32, edge: 0 }];
        num[start] = next_num;
        low[start] = next_num;
        next_num += 1;
        stack.push(start as u32);
        on_stack[start] = true;

        while let Some(frame) = call_stack.last_mut() {
            let v = frame.v as usize;
            if frame.edge < adj[v].len() {
                let w = adj[v][frame.edge] as usize;
                frame.edge += 1;
                if !active[w] {
                    continue;
                }
                if num[w] == NONE {
                    num[w] = next_num;
                    low[w] = next_num;
                    next_num += 1;
                    stack.push(w as u32);
                    on_stack[w] = true;
                    call_stack.push(Frame { v: w as u32, edge: 0 });
                } else if on_stack[w] {
                    low[v] = low[v].min(num[w]);
                }
            } else {
                if low[v] == num[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w as usize] = false;
                        ids[w as usize] = next_comp;
                        if w as usize == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
                let low_v = low[v];
                call_stack.pop();
                if let Some(parent) = call_stack.last() {
                    let p = parent.v as usize;
                    low[p] = low[p].min(low_v);
                }
            }
        }
    }
    (ids, next_comp)
}

fn components(
    graph: &MuGraph,
    side: Side,
    window: &Ball,
    margin: u32,
) -> (Vec<u32>, Vec<CellInfo>) {
    let n = window.len();
    let full_adj = graph.edges(side, window.radius);
    let active_full = vec![true; n];
    let (full_ids, full_count) = scc(&full_adj, &active_full);

    let inner_cut = window.radius.saturating_sub(margin);
    let core_cut = window.radius.saturating_sub(2 * margin);
    let inner_adj = graph.edges(side, inner_cut);
    let active_inner: Vec<bool> = window.lengths.iter().map(|&l| l <= inner_cut).collect();
    let (inner_ids, _) = scc(&inner_adj, &active_inner);

    // Deterministic ids: components sorted by their smallest member.
    let mut members: Vec<Vec<u32>> = vec![Vec::new(); full_count as usize];
    for v in 0..n {
        members[full_ids[v] as usize].push(v as u32);
    }
    let mut order: Vec<usize> = (0..full_count as usize).collect();
    order.sort_by_key(|&c| members[c][0]);

    // Core size of each inner component (elements of length <= core cut).
    let mut inner_core_size: HashMap<u32, usize> = HashMap::new();
    for v in 0..n {
        if active_inner[v] && window.lengths[v] <= core_cut {
            *inner_core_size.entry(inner_ids[v]).or_insert(0) += 1;
        }
    }

    let mut renumber = vec![0u32; full_count as usize];
    let mut infos = Vec::with_capacity(full_count as usize);
    for (new_id, &c) in order.iter().enumerate() {
        renumber[c] = new_id as u32;
        let ms = members[c].clone();
        // Completeness: the component's core (length <= radius - 2 margin)
        // coincides with the core of a single component of the smaller
        // window, i.e. the partition stopped changing there as the window
        // grew by `margin`.
        let core_members: Vec<u32> = ms
            .iter()
            .copied()
            .filter(|&v| window.lengths[v as usize] <= core_cut)
            .collect();
        let complete = if core_members.is_empty() {
            false
        } else {
            let rc = inner_ids[core_members[0] as usize];
            let same = core_members.iter().all(|&v| inner_ids[v as usize] == rc);
            same && inner_core_size.get(&rc) == Some(&core_members.len())
        };
        infos.push(CellInfo { id: new_id as u32, members: ms, complete });
    }
    let of: Vec<u32> = (0..n).map(|v| renumber[full_ids[v] as usize]).collect();
    (of, infos)
}

fn regroup(
    n: usize,
    raw_of: &[u32],
    raw: &[CellInfo],
    lowest_mask: &[bool],
    sector_key: impl Fn(usize) -> u16,
) -> (Vec<u32>, Vec<CellInfo>, Option<u32>) {
    // Non-lowest raw components survive; lowest elements are regrouped by
    // their closed-form sector key (the two-sided call passes a constant).
    let mut groups: Vec<(Vec<u32>, bool, bool)> = Vec::new();
    for c in raw {
        if !lowest_mask[c.members[0] as usize] {
            groups.push((c.members.clone(), c.complete, false));
        }
    }
    let mut sectors: HashMap<u16, Vec<u32>> = HashMap::new();
    for v in 0..n {
        if lowest_mask[v] {
            sectors.entry(sector_key(v)).or_default().push(v as u32);
        }
    }
    for (_, ms) in sectors {
        groups.push((ms, true, true));
    }
    groups.sort_by_key(|(ms, _, _)| ms[0]);
    let mut of = vec![0u32; n];
    let mut infos = Vec::with_capacity(groups.len());
    let mut lowest_id = None;
    for (id, (ms, complete, is_lowest)) in groups.into_iter().enumerate() {
        for &v in &ms {
            of[v as usize] = id as u32;
        }
        if is_lowest && lowest_id.is_none() {
            lowest_id = Some(id as u32);
        }
        infos.push(CellInfo { id: id as u32, members: ms, complete });
    }
    let _ = raw_of;
    (of, infos, lowest_id)
}

/// Compute the cell partition of the ball of radius `window.radius`.
///
/// Components are flagged complete when their core (radius - 2 margin) is
/// stable under growing the window by `margin`.  The lowest two-sided cell
/// is infinite and is handled by its closed-form description instead of the
/// component computation: its members form one two-sided cell whose left
/// cells are the chamber sectors.  The raw components are validated against
/// the closed form (no component may straddle the membership boundary, and
/// no raw left component inside the lowest cell may cross chambers).
pub fn cell_partition(
    datum: &RootDatum,
    window: &Ball,
    table: &mut KlTable,
    margin: u32,
) -> Result<CellPartition, Error> {
    table.ensure_ball(window)?;
    let graph = build_mu_pairs(datum, window, table)?;
    let (raw_left_of, raw_left) = components(&graph, Side::Left, window, margin);
    let (raw_right_of, raw_right) = components(&graph, Side::Right, window, margin);
    let (raw_two_of, raw_two) = components(&graph, Side::TwoSided, window, margin);

    let n = window.len();
    let lowest_mask: Vec<bool> = window
        .elements
        .iter()
        .map(|&x| lowest_cell_member(datum, &alcove_of(datum, x)))
        .collect();
    let chamber: Vec<u16> = window
        .elements
        .iter()
        .map(|&x| affine::chamber_of(datum, &alcove_of(datum, x)))
        .collect();
    let inv_chamber: Vec<u16> = window
        .elements
        .iter()
        .map(|&x| affine::chamber_of(datum, &alcove_of(datum, inverse(datum, x))))
        .collect();

    // Validation of the closed form against the mu-graph.
    for c in &raw_two {
        let in_lowest = lowest_mask[c.members[0] as usize];
        if c.members.iter().any(|&v| lowest_mask[v as usize] != in_lowest) {
            return Err(Error::Invalid(
                "a two-sided component straddles the lowest-cell boundary".into(),
            ));
        }
    }
    for c in &raw_left {
        if lowest_mask[c.members[0] as usize] {
            let ch = chamber[c.members[0] as usize];
            if c.members.iter().any(|&v| chamber[v as usize] != ch) {
                return Err(Error::Invalid(
                    "a left component of the lowest cell crosses chambers".into(),
                ));
            }
        }
    }

    let (left_of, left_cells, _) =
        regroup(n, &raw_left_of, &raw_left, &lowest_mask, |v| chamber[v]);
    let (right_of, right_cells, _) =
        regroup(n, &raw_right_of, &raw_right, &lowest_mask, |v| inv_chamber[v]);
    let (two_sided_of, two_sided_cells, lowest_cell) =
        regroup(n, &raw_two_of, &raw_two, &lowest_mask, |_| 0);

    // Two-sided order: lower <= higher along downward edges between cells.
    let adj = graph.edges(Side::TwoSided, window.radius);
    let mut rel: Vec<(u32, u32)> = Vec::new();
    for (u, outs) in adj.iter().enumerate() {
        for &w in outs {
            let (cu, cw) = (two_sided_of[u], two_sided_of[w as usize]);
            if cu != cw {
                rel.push((cw, cu)); // cw is below cu
            }
        }
    }
    rel.sort_unstable();
    rel.dedup();
    // transitive closure over the (small) set of cells
    let ncells = two_sided_cells.len();
    let mut leq = vec![false; ncells * ncells];
    for &(a, b) in &rel {
        leq[a as usize * ncells + b as usize] = true;
    }
    for k in 0..ncells {
        for i in 0..ncells {
            if leq[i * ncells + k] {
                for j in 0..ncells {
                    if leq[k * ncells + j] {
                        leq[i * ncells + j] = true;
                    }
                }
            }
        }
    }
    let mut order = Vec::new();
    for i in 0..ncells {
        for j in 0..ncells {
            if i != j && leq[i * ncells + j] {
                order.push((i as u32, j as u32));
            }
        }
    }
    // Antisymmetry on complete cells: a cycle between distinct complete
    // components would mean the window partition is inconsistent.
    for &(a, b) in &order {
        if order.contains(&(b, a))
            && two_sided_cells[a as usize].complete
            && two_sided_cells[b as usize].complete
        {
            return Err(Error::Invalid(format!(
                "two-sided order has a cycle between complete cells {a} and {b}"
            )));
        }
    }

    Ok(CellPartition {
        radius: window.radius,
        margin,
        elements: window.elements.clone(),
        index: window.index.clone(),
        left_of,
        right_of,
        two_sided_of,
        left_cells,
        right_cells,
        two_sided_cells,
        lowest_cell,
        order,
    })
}

impl CellPartition {
    pub fn left_cell_of(&self, x: AffineElt) -> Option<u32> {
        self.index.get(&x).map(|&i| self.left_of[i as usize])
    }

    pub fn two_sided_cell_of(&self, x: AffineElt) -> Option<u32> {
        self.index.get(&x).map(|&i| self.two_sided_of[i as usize])
    }

    /// Left cells contained in a two-sided cell.
    pub fn left_cells_in(&self, omega: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .left_cells
            .iter()
            .filter(|lc| {
                lc.members
                    .iter()
                    .all(|&m| self.two_sided_of[m as usize] == omega)
            })
            .map(|lc| lc.id)
            .collect();
        out.sort_unstable();
        out
    }

    /// Complete left cells contained in a two-sided cell.
    pub fn complete_left_cells_in(&self, omega: u32) -> Vec<u32> {
        self.left_cells_in(omega)
            .into_iter()
            .filter(|&lc| self.left_cells[lc as usize].complete)
            .collect()
    }

    /// True when `lower` <= `higher` in the two-sided order.
    pub fn cell_leq(&self, lower: u32, higher: u32) -> bool {
        lower == higher || self.order.contains(&(lower, higher))
    }

    /// Certified a-value of a two-sided cell: all certified member values
    /// must agree; returns (value, all members certified).
    pub fn cell_a_value(&self, atable: &ATable, omega: u32) -> Option<(u32, bool)> {
        let cell = &self.two_sided_cells[omega as usize];
        let mut value: Option<u32> = None;
        let mut all_certified = true;
        for &m in &cell.members {
            let x = self.elements[m as usize];
            match atable.get(x) {
                Some((a, cert)) if cert != ACert::Uncertified => {
                    if let Some(v) = value {
                        assert_eq!(v, a, "a-invariant must be constant on a two-sided cell");
                    }
                    value = Some(a);
                }
                _ => all_certified = false,
            }
        }
        value.map(|v| (v, all_certified))
    }

    /// Export as JSON: element-key -> cell data, plus the order edge list.
    pub fn to_json(&self, datum: &RootDatum) -> serde_json::Value {
        let mut elements = serde_json::Map::new();
        for (i, &x) in self.elements.iter().enumerate() {
            elements.insert(
                affine::element_key(datum, x),
                serde_json::json!({
                    "left_cell": self.left_of[i],
                    "right_cell": self.right_of[i],
                    "two_sided_cell": self.two_sided_of[i],
                    "complete": self.two_sided_cells[self.two_sided_of[i] as usize].complete,
                    "length": affine::length(datum, x),
                }),
            );
        }
        serde_json::json!({
            "type": datum.name(),
            "radius": self.radius,
            "margin": self.margin,
            "two_sided_cells": self.two_sided_cells,
            "left_cells": self.left_cells,
            "order": self.order,
            "elements": elements,
        })
    }
}

/// The canonical left cell of a two-sided cell: the unique complete left
/// cell all of whose window alcoves are dominant.
pub fn canonical_left_cell(
    datum: &RootDatum,
    partition: &CellPartition,
    omega: u32,
) -> Result<u32, Error> {
    let mut found = Vec::new();
    for lc in partition.complete_left_cells_in(omega) {
        let cell = &partition.left_cells[lc as usize];
        let all_dominant = cell.members.iter().all(|&m| {
            let alc = alcove_of(datum, partition.elements[m as usize]);
            affine::chamber_of(datum, &alc) == 0
        });
        if all_dominant {
            found.push(lc);
        }
    }
    if found.len() == 1 {
        Ok(found[0])
    } else {
        Err(Error::AmbiguousCanonical(omega as usize, found.len()))
    }
}

/// Check that dominant window alcoves in complete left cells lie exactly in
/// the all-dominant (canonical) cells: each complete left cell is either
/// entirely dominant or entirely non-dominant.
pub fn verify_canonical_partition(datum: &RootDatum, partition: &CellPartition) -> bool {
    partition.left_cells.iter().filter(|c| c.complete).all(|c| {
        let dom = c
            .members
            .iter()
            .filter(|&&m| {
                let alc = alcove_of(datum, partition.elements[m as usize]);
                affine::chamber_of(datum, &alc) == 0
            })
            .count();
        dom == 0 || dom == c.members.len()
    })
}

/// Closed-form membership test for the lowest two-sided cell.
///
/// An alcove belongs to the lowest cell exactly when some weight-lattice
/// point `v` has all of its hyperplanes `<x, alpha^vee> = <v, alpha^vee>`
/// separating the alcove from the fundamental one.  (Every weight-lattice
/// point carries a full stabilizer copy of W, so this is the alcove version
/// of factoring through the longest element of a point stabilizer.)  In the
/// dominant chamber the condition reduces to lying beyond all hyperplanes
/// through rho, and the whole antidominant chamber satisfies it with v = 0.
pub fn lowest_cell_member(datum: &RootDatum, alcove: &Alcove) -> bool {
    // Admissible levels per root: c in [1, k] or [k+1, 0].
    let range = |k: i64| -> (i64, i64) {
        if k >= 1 {
            (1, k)
        } else if k <= -1 {
            (k + 1, 0)
        } else {
            (1, 0) // empty
        }
    };
    // v = sum n_i * fundamental_weight_i with n_i = level on alpha_i.
    let mut simple_ranges = Vec::with_capacity(datum.rank);
    for i in 0..datum.rank {
        let b = affine::simple_root_index(datum, i);
        let (lo, hi) = range(alcove.coords[b]);
        if lo > hi {
            return false;
        }
        simple_ranges.push((lo, hi));
    }
    let mut n = vec![0i64; datum.rank];
    fn search(
        datum: &RootDatum,
        alcove: &Alcove,
        ranges: &[(i64, i64)],
        n: &mut Vec<i64>,
        i: usize,
        range: &dyn Fn(i64) -> (i64, i64),
    ) -> bool {
        if i == datum.rank {
            for a in 0..datum.n_pos {
                let c: i64 = (0..datum.rank).map(|j| datum.coroots[a][j] * n[j]).sum();
                let (lo, hi) = range(alcove.coords[a]);
                if c < lo || c > hi {
                    return false;
                }
            }
            return true;
        }
        for v in ranges[i].0..=ranges[i].1 {
            n[i] = v;
            if search(datum, alcove, ranges, n, i + 1, range) {
                return true;
            }
        }
        false
    }
    search(datum, alcove, &simple_ranges, &mut n, 0, &range)
}

/// Descriptor of one left cell of the lowest two-sided cell: its chamber
/// together with a membership predicate, and the distinguished involution
/// where it has a closed form (the dominant and antidominant chambers).
pub struct LowestCellDescriptor {
    pub chamber: u16,
    pub distinguished: Option<AffineElt>,
}

impl LowestCellDescriptor {
    pub fn contains(&self, datum: &RootDatum, alcove: &Alcove) -> bool {
        affine::chamber_of(datum, alcove) == self.chamber && lowest_cell_member(datum, alcove)
    }
}

/// The |W| left cells of the lowest two-sided cell, one per chamber.
pub fn lowest_cell_left_cells(datum: &RootDatum) -> Vec<LowestCellDescriptor> {
    (0..datum.weyl_order() as u16)
        .map(|chamber| {
            let distinguished = if chamber == 0 {
                Some(lowest_alcove_around_two_rho(datum))
            } else if chamber == datum.weyl.w0 {
                Some(AffineElt { w: datum.weyl.w0, t: [0; 4] })
            } else {
                None
            };
            LowestCellDescriptor { chamber, distinguished }
        })
        .collect()
}

/// Upgrade an a-table with the closed-form value N on the lowest cell.
///
/// Anchored at an actually computed ceiling witness: `a(w0) = N` must
/// already be certified by the sampling before the fill is applied.
pub fn extend_a_table_with_lowest_cell(
    datum: &RootDatum,
    window: &Ball,
    atable: &mut ATable,
) -> Result<(), Error> {
    let w0 = AffineElt { w: datum.weyl.w0, t: [0; 4] };
    match atable.get(w0) {
        Some((a, ACert::Ceiling)) if a as usize == datum.n_pos => {}
        other => {
            return Err(Error::Invalid(format!(
                "lowest-cell fill requires a ceiling witness at w0, got {other:?}"
            )))
        }
    }
    atable.fill_closed_form(
        &window.elements,
        |x| lowest_cell_member(datum, &alcove_of(datum, x)),
        datum.n_pos as u32,
    );
    Ok(())
}

/// Inversion must carry left cells onto right cells: elements x, y lie in
/// the same left cell exactly when x^{-1}, y^{-1} lie in the same right
/// cell (checked within the window).
pub fn inversion_maps_left_to_right(datum: &RootDatum, partition: &CellPartition) -> bool {
    for (i, &x) in partition.elements.iter().enumerate() {
        let xi = inverse(datum, x);
        let Some(&j) = partition.index.get(&xi) else {
            continue;
        };
        for (k, &y) in partition.elements.iter().enumerate().skip(i) {
            let yi = inverse(datum, y);
            let Some(&l) = partition.index.get(&yi) else {
                continue;
            };
            let same_left = partition.left_of[i] == partition.left_of[k];
            let same_right =
                partition.right_of[j as usize] == partition.right_of[l as usize];
            if same_left != same_right {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::{ball, generator, mult};
    use crate::rootdata::{build_root_datum, Series};

    #[test]
    fn a1_cells() {
        let d = build_root_datum(Series::A, 1).unwrap();
        let b = ball(&d, 8, 10_000).unwrap();
        let mut table = KlTable::new(&d);
        let p = cell_partition(&d, &b, &mut table, 2).unwrap();
        // {1} and the lowest cell
        let complete: Vec<&CellInfo> =
            p.two_sided_cells.iter().filter(|c| c.complete).collect();
        assert_eq!(complete.len(), 2);
        let id_cell = p.two_sided_cell_of(AffineElt::identity()).unwrap();
        assert_eq!(p.two_sided_cells[id_cell as usize].members.len(), 1);
        // the lowest cell has |W| = 2 left cells in the window
        let s0 = generator(&d, 0);
        let lowest = p.two_sided_cell_of(s0).unwrap();
        assert_eq!(p.left_cells_in(lowest).len(), 2);
        // order: lowest < identity cell
        assert!(p.cell_leq(lowest, id_cell));
        assert!(!p.cell_leq(id_cell, lowest));
    }

    #[test]
    fn a2_cells_structure() {
        let d = build_root_datum(Series::A, 2).unwrap();
        let b = ball(&d, 16, 100_000).unwrap();
        let mut table = KlTable::new(&d);
        let p = cell_partition(&d, &b, &mut table, 2).unwrap();
        let complete: Vec<&CellInfo> =
            p.two_sided_cells.iter().filter(|c| c.complete).collect();
        assert_eq!(complete.len(), 3, "A2 window should show 3 two-sided cells");
        let mut left_counts: Vec<usize> = complete
            .iter()
            .map(|c| p.complete_left_cells_in(c.id).len())
            .collect();
        left_counts.sort_unstable();
        assert_eq!(left_counts, vec![1, 3, 6]);
        assert!(verify_canonical_partition(&d, &p));
        assert!(inversion_maps_left_to_right(&d, &p));
    }

    #[test]
    fn lowest_cell_closed_form_examples() {
        let d = build_root_datum(Series::A, 2).unwrap();
        // fundamental alcove is not in the lowest cell
        let id_alc = alcove_of(&d, AffineElt::identity());
        assert!(!lowest_cell_member(&d, &id_alc));
        // w0 (antidominant chamber) is
        let w0 = AffineElt { w: d.weyl.w0, t: [0; 4] };
        assert!(lowest_cell_member(&d, &alcove_of(&d, w0)));
        // an alcove beyond all rho-hyperplanes in the dominant chamber is
        let mut t = [0i64; 4];
        t[0] = 2;
        t[1] = 2;
        let deep_dominant = AffineElt { w: 0, t };
        let alc = alcove_of(&d, deep_dominant);
        assert_eq!(affine::chamber_of(&d, &alc), 0);
        assert!(lowest_cell_member(&d, &alc));
        let _ = mult(&d, generator(&d, 1), w0);
    }

    #[test]
    fn lowest_cell_agrees_with_mu_graph() {
        let d = build_root_datum(Series::A, 2).unwrap();
        let b = ball(&d, 14, 100_000).unwrap();
        let mut table = KlTable::new(&d);
        let p = cell_partition(&d, &b, &mut table, 2).unwrap();
        let w0 = AffineElt { w: d.weyl.w0, t: [0; 4] };
        let lowest = p.two_sided_cell_of(w0).unwrap();
        for (i, &x) in p.elements.iter().enumerate() {
            let in_closed_form = lowest_cell_member(&d, &alcove_of(&d, x));
            let in_component = p.two_sided_of[i] == lowest;
            assert_eq!(in_closed_form, in_component, "element {}", affine::element_key(&d, x));
        }
        // the window shows |W| complete chamber cells
        assert_eq!(p.complete_left_cells_in(lowest).len(), d.weyl_order());
    }

    #[test]
    fn canonical_cells_found() {
        let d = build_root_datum(Series::A, 2).unwrap();
        let b = ball(&d, 14, 100_000).unwrap();
        let mut table = KlTable::new(&d);
        let p = cell_partition(&d, &b, &mut table, 2).unwrap();
        for cell in p.two_sided_cells.iter().filter(|c| c.complete) {
            let canonical = canonical_left_cell(&d, &p, cell.id).unwrap();
            let info = &p.left_cells[canonical as usize];
            assert!(info.members.iter().all(|&m| {
                affine::chamber_of(&d, &alcove_of(&d, p.elements[m as usize])) == 0
            }));
        }
    }
}
