use deptree::conllu::{parse_conllu, SentenceRecord};
use deptree::edgelist::{parse_edgelist, write_edgelist};
use deptree_core::{LinearArrangement, Tree};
use proptest::prelude::*;

/// Head vectors of random single-rooted trees: the root is a random token and
/// every other token hangs below an earlier token of a random visiting order.
fn heads() -> impl Strategy<Value = Vec<u32>> {
    (1usize..=30)
        .prop_flat_map(|n| {
            (
                Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle(),
                proptest::collection::vec(any::<prop::sample::Index>(), n),
            )
        })
        .prop_map(|(order, picks)| {
            let mut heads = vec![0; order.len()];
            for i in 1..order.len() {
                heads[order[i] as usize - 1] = order[picks[i].index(i)];
            }
            heads
        })
}

proptest! {
    #[test]
    fn conllu_round_trip(heads in heads(), id in "[a-z][a-z0-9-]{0,8}") {
        let record = SentenceRecord::new(id, heads).unwrap();
        let text = record.to_conllu();
        let back: Vec<_> = parse_conllu(text.as_bytes()).collect();
        prop_assert_eq!(back.len(), 1);
        prop_assert_eq!(back[0].as_ref().unwrap().as_ref().unwrap(), &record);
    }

    #[test]
    fn edgelist_round_trip(code in (2usize..=15).prop_flat_map(|n| proptest::collection::vec(1..=n as u32, n - 2)), with_order in any::<bool>()) {
        let n = code.len() + 2;
        let tree = Tree::from_prufer(n, &code);
        let arr = with_order.then(|| LinearArrangement::identity(n).reversed());
        let parsed = parse_edgelist(&write_edgelist(&tree, arr.as_ref())).unwrap();
        prop_assert_eq!(parsed.tree, tree);
        prop_assert_eq!(parsed.arrangement, arr);
    }
}
