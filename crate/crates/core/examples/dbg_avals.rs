use std::time::Instant;
use weylcells::affine::{ball, AffineElt};
use weylcells::cells::{cell_partition, extend_a_table_with_lowest_cell};
use weylcells::hecke::{ACert, KlTable};
use weylcells::rootdata::parse_type;

fn main() {
    for (name, radius, margin, r1, r2) in [
        ("A2", 16u32, 2u32, 8u32, 10u32),
        ("B2", 14, 3, 7, 9),
        ("G2", 16, 4, 8, 10),
    ] {
        let (s, r) = parse_type(name).unwrap();
        let d = weylcells::rootdata::build_root_datum(s, r).unwrap();
        let t0 = Instant::now();
        let b = ball(&d, radius, 1_000_000).unwrap();
        let mut table = KlTable::new(&d);
        let p = cell_partition(&d, &b, &mut table, margin).unwrap();
        let t1 = Instant::now();
        let s1 = ball(&d, r1, 1_000_000).unwrap();
        let s2 = ball(&d, r2, 1_000_000).unwrap();
        let mut at = table.a_table(&s1, &s2).unwrap();
        extend_a_table_with_lowest_cell(&d, &b, &mut at).unwrap();
        let t2 = Instant::now();
        println!("{name}: partition {:?}, a-table {:?}", t1 - t0, t2 - t1);
        for c in p.two_sided_cells.iter().filter(|c| c.complete) {
            let mut vals = std::collections::BTreeMap::new();
            let mut uncert = 0;
            let mut missing = 0;
            for &m in &c.members {
                let x = p.elements[m as usize];
                match at.get(x) {
                    Some((a, cert)) => {
                        *vals.entry(a).or_insert(0) += 1;
                        if cert == ACert::Uncertified { uncert += 1; }
                    }
                    None => missing += 1,
                }
            }
            let star = if Some(c.id) == p.lowest_cell { "*" } else { "" };
            println!("  cell sz{}{}: a-values {:?}, uncertified {}, missing {}", c.members.len(), star, vals, uncert, missing);
        }
        let _ = AffineElt::identity();
    }
}
