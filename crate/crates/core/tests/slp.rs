use proptest::prelude::*;
use slpseq::ingest::{generate, ingest_bytes, ingest_text, GrammarRecipe};
use slpseq::matcher::{encode_pattern, oracle_match_minimal};
use slpseq::slp::{parse_slp, write_slp};
use slpseq::{match_minimal, Flavor, LsIndex};

fn text_strategy() -> impl Strategy<Value = String> {
    prop_oneof![
        "[ab]{1,300}",
        "[a-d]{1,300}",
        "[a-z ]{1,200}",
        ("[a-c]{1,6}", 1usize..60).prop_map(|(block, k)| block.repeat(k)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compress_round_trips(text in text_strategy()) {
        let slp = ingest_text(&text).unwrap();
        prop_assert_eq!(slp.expand_string(u64::MAX).unwrap(), text.clone());
        let back = parse_slp(&write_slp(&slp)).unwrap();
        prop_assert_eq!(&back, &slp);
        let n = text.chars().count() as f64;
        prop_assert!(slp.height() as f64 <= 4.0 * n.log2() + 2.0);
    }

    #[test]
    fn ls_lp_match_the_scan(text in text_strategy(), flavor_const in any::<bool>()) {
        let flavor = if flavor_const { Flavor::ConstQuery } else { Flavor::LogQuery };
        let slp = ingest_text(&text).unwrap();
        let s = slp.expand(u64::MAX).unwrap();
        let idx = LsIndex::new(slp.clone(), flavor);
        let n = s.len();
        for c in 0..slp.sigma() {
            for i in 0..=n {
                let want = (i..n).find(|&j| s[j] as usize == c).map(|j| j as u64 + 1);
                prop_assert_eq!(idx.ls(i as u64, c).unwrap(), want);
            }
            for i in 1..=n + 1 {
                let want = (0..i - 1).rev().find(|&j| s[j] as usize == c).map(|j| j as u64 + 1);
                prop_assert_eq!(idx.lp(i as u64, c).unwrap(), want);
            }
        }
    }

    #[test]
    fn matching_equals_the_scan(text in text_strategy(), pattern in "[a-e]{1,6}") {
        let slp = ingest_text(&text).unwrap();
        let idx = LsIndex::new(slp.clone(), Flavor::LogQuery);
        let got: Vec<_> = match_minimal(&idx, &pattern).unwrap().collect();
        match encode_pattern(slp.alphabet(), &pattern).unwrap() {
            None => prop_assert!(got.is_empty()),
            Some(p) => {
                let s = slp.expand(u64::MAX).unwrap();
                let p: Vec<u32> = p.into_iter().map(|c| c as u32).collect();
                prop_assert_eq!(got, oracle_match_minimal(&s, &p).unwrap());
            }
        }
    }

    #[test]
    fn byte_ingest_round_trips(bytes in proptest::collection::vec(any::<u8>(), 1..300)) {
        let slp = ingest_bytes(&bytes).unwrap();
        let back: Vec<u8> = slp.expand_string(u64::MAX).unwrap().chars().map(|c| c as u32 as u8).collect();
        prop_assert_eq!(back, bytes);
    }
}

#[test]
fn recipes_are_deterministic() {
    for r in ["fibonacci:30", "power:20", "power:b:5", "balanced:5000:4:2", "repair:3000:3:1", "random:200:4:9"] {
        let recipe: GrammarRecipe = r.parse().unwrap();
        let a = write_slp(&generate(&recipe).unwrap());
        let b = write_slp(&generate(&recipe).unwrap());
        assert_eq!(a, b, "{r}");
        assert_eq!(recipe.to_string().parse::<GrammarRecipe>().unwrap(), recipe);
    }
    let p3 = generate(&"power:3".parse().unwrap()).unwrap();
    assert_eq!(p3.expand_string(100).unwrap(), "aaaaaaaa");
    assert_eq!(p3.num_rules(), 4);
    let f5 = generate(&GrammarRecipe::Fibonacci(5)).unwrap();
    assert_eq!(f5.expand_string(100).unwrap(), "abaab");
}

#[test]
fn guard_refuses_long_expansions() {
    let f = generate(&GrammarRecipe::Fibonacci(80)).unwrap();
    assert!(f.expand(1 << 20).is_err());
    assert_eq!(f.extract(1, 5).unwrap(), generate(&GrammarRecipe::Fibonacci(5)).unwrap().expand(5).unwrap());
}
