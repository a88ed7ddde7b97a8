use regcert_core::iso::is_isomorphic;
use regcert_core::parse_graph6;

const FIXTURE: &str = include_str!("../../../data/cubic_connected_le10.g6");

/// Connected cubic graphs up to isomorphism, n = 4, 6, 8, 10.
const KNOWN_COUNTS: [(usize, usize); 4] = [(4, 1), (6, 2), (8, 5), (10, 19)];

#[test]
fn fixture_is_complete_and_duplicate_free() {
    let graphs: Vec<_> = FIXTURE.lines().map(|l| parse_graph6(l).unwrap()).collect();
    for g in &graphs {
        assert_eq!(g.regular_degree(), Some(3));
        assert!(g.is_connected());
    }
    for (n, count) in KNOWN_COUNTS {
        let of_order: Vec<_> = graphs.iter().filter(|g| g.order() == n).collect();
        assert_eq!(of_order.len(), count, "n = {n}");
        for (i, a) in of_order.iter().enumerate() {
            for b in &of_order[i + 1..] {
                assert!(!is_isomorphic(a, b));
            }
        }
    }
    assert_eq!(graphs.len(), 27);
}
