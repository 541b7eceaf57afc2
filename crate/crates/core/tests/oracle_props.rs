mod support;

use support::*;
use symspec::oracle::{min_paint_cost_ordered, OracleBudget, SearchOrder};
use symspec::{
    fixing_number_bruteforce, is_distinguishing, middle_coloring, min_colors, min_paint_cost,
    Coloring, Error, Tree,
};

fn restrict(tree: &Tree, coloring: &Coloring, root: usize) -> (Tree, Coloring) {
    let mut order = vec![root];
    let mut i = 0;
    while i < order.len() {
        order.extend_from_slice(tree.children(order[i]));
        i += 1;
    }
    let index = |v: usize| order.iter().position(|&w| w == v).unwrap();
    let parents: Vec<Option<usize>> = order
        .iter()
        .enumerate()
        .map(|(j, &v)| (j > 0).then(|| index(tree.parent(v).unwrap())))
        .collect();
    let colors = order.iter().map(|&v| coloring.color(v)).collect();
    (
        Tree::from_parents(&parents).unwrap(),
        Coloring::new(coloring.palette_size(), colors).unwrap(),
    )
}

#[test]
fn monotone_and_floored_on_small_trees() {
    let budget = OracleBudget::default();
    let trees = all_rooted_trees(8)
        .into_iter()
        .filter(|t| t.vertex_count() >= 2);
    for tree in trees {
        let fix = fixing_number_bruteforce(&tree).unwrap();
        let dist = min_colors(&tree, &budget).unwrap();
        let mut previous: Option<usize> = None;
        for d in dist..=fix as u32 + 2 {
            let p = min_paint_cost(&tree, d, &budget).unwrap();
            assert!(is_distinguishing(&tree, &p.witness).unwrap());
            assert!(p.cost >= fix, "{:?} d={d}", tree.parents());
            if let Some(prev) = previous {
                assert!(prev >= p.cost);
            }
            if d == fix as u32 + 1 {
                assert_eq!(p.cost, fix, "{:?}", tree.parents());
            }
            previous = Some(p.cost);
        }
        if dist > 1 {
            assert!(matches!(
                min_paint_cost(&tree, dist - 1, &budget),
                Err(Error::Infeasible(_))
            ));
        }
    }
}

#[test]
fn search_orders_give_equal_costs() {
    let budget = OracleBudget::default();
    for tree in [
        Tree::perfect(2, 2).unwrap(),
        Tree::kpode(&[2, 2, 2]).unwrap(),
    ] {
        for d in 2..=4 {
            let f = min_paint_cost_ordered(&tree, d, &budget, SearchOrder::Forward).unwrap();
            let r = min_paint_cost_ordered(&tree, d, &budget, SearchOrder::Reverse).unwrap();
            assert_eq!(f.cost, r.cost);
        }
    }
}

#[test]
fn witness_is_independent_of_thread_count() {
    let tree = Tree::perfect(2, 3).unwrap();
    let one = OracleBudget {
        jobs: 1,
        ..OracleBudget::default()
    };
    let four = OracleBudget {
        jobs: 4,
        ..OracleBudget::default()
    };
    assert_eq!(
        min_paint_cost(&tree, 3, &one).unwrap(),
        min_paint_cost(&tree, 3, &four).unwrap()
    );
}

#[test]
fn middle_coloring_restricts_to_efficient_pieces() {
    let budget = OracleBudget::default();

    // Leafy T_2^3 copies inside middle(2, 4) are each efficient 3-colorings.
    let big = Tree::perfect(2, 4).unwrap();
    let c = middle_coloring(2, 4).unwrap();
    let optimum = min_paint_cost(&Tree::perfect(2, 3).unwrap(), 3, &budget)
        .unwrap()
        .cost;
    assert_eq!(optimum, 5);
    for root in big.leafy_subtree_roots(3).unwrap() {
        let (t, piece) = restrict(&big, &c, root);
        assert!(is_distinguishing(&t, &piece).unwrap());
        assert_eq!(piece.paint_cost(), optimum);
    }

    // Inside middle(2, 3) one leafy T_2^2 is efficient and the other spends
    // exactly one extra special vertex.
    let tree = Tree::perfect(2, 3).unwrap();
    let c = middle_coloring(2, 3).unwrap();
    let optimum = min_paint_cost(&Tree::perfect(2, 2).unwrap(), 3, &budget)
        .unwrap()
        .cost;
    let mut costs: Vec<usize> = tree
        .leafy_subtree_roots(2)
        .unwrap()
        .into_iter()
        .map(|r| {
            let (t, piece) = restrict(&tree, &c, r);
            assert!(is_distinguishing(&t, &piece).unwrap());
            piece.paint_cost()
        })
        .collect();
    costs.sort();
    assert_eq!(costs, vec![optimum, optimum + 1]);
}

#[test]
fn budget_errors_carry_lower_bounds() {
    let tree = Tree::perfect(2, 3).unwrap();
    let budget = OracleBudget {
        max_special_slots: 4,
        ..OracleBudget::default()
    };
    match min_paint_cost(&tree, 2, &budget) {
        Err(Error::BudgetExceeded {
            lower_bound: Some(b),
            ..
        }) => assert_eq!(b, 5),
        other => panic!("unexpected {other:?}"),
    }
}
