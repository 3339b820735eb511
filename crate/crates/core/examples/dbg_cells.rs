use std::time::Instant;
use weylcells::affine::ball;
use weylcells::cells::cell_partition;
use weylcells::hecke::KlTable;
use weylcells::rootdata::parse_type;

fn main() {
    for (name, radius, margin) in [("A2", 16u32, 2u32), ("B2", 14, 3), ("G2", 16, 4), ("G2", 18, 4), ("G2", 20, 4)] {
        let (s, r) = parse_type(name).unwrap();
        let d = weylcells::rootdata::build_root_datum(s, r).unwrap();
        let t0 = Instant::now();
        let b = ball(&d, radius, 1_000_000).unwrap();
        let mut table = KlTable::new(&d);
        let p = cell_partition(&d, &b, &mut table, margin).unwrap();
        let mut summary = Vec::new();
        for c in p.two_sided_cells.iter().filter(|c| c.complete) {
            let n_complete = p.complete_left_cells_in(c.id).len();
            let star = if Some(c.id) == p.lowest_cell { "*" } else { "" };
            summary.push(format!("sz{}:lc{}{}", c.members.len(), n_complete, star));
        }
        println!("{name} R{radius} m{margin}: ball {} {:?} | {}", b.len(), t0.elapsed(), summary.join(", "));
    }
}
