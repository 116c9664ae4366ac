use gp_core::conjugacy::DEFAULT_BFS_LIMIT;
use gp_core::{instances, GraphProduct, Oracle, Word};

fn agree(p: &GraphProduct) -> (usize, usize) {
    let o = Oracle::new(p);
    let elements: Vec<(usize, Word)> = o.ball(3).unwrap().iter().map(|(d, w)| (d, w.clone())).collect();
    let big = o.ball(p.clf_upper_bound(6) as usize).unwrap();
    let mut conj = 0;
    for (da, a) in &elements {
        let conjugates = o.conjugates(&big, a).unwrap();
        for (db, b) in &elements {
            let radius = p.clf_upper_bound((da + db) as u64) as usize;
            let engine = p.are_conjugate(a, b, DEFAULT_BFS_LIMIT).unwrap();
            let brute = conjugates.get(b).filter(|(d, _)| *d <= radius);
            assert_eq!(engine.is_some(), brute.is_some(), "{} vs {}", p.format_word(a), p.format_word(b));
            if let Some(w) = engine {
                assert!(p.verify_witness(a, b, &w.conjugator));
                conj += 1;
            }
        }
    }
    (elements.len(), conj)
}

#[test]
fn engine_matches_oracle_on_short_elements() {
    let (n, c) = agree(&instances::gamma_ex());
    assert!(n > 10 && c >= n);
    let (n, c) = agree(&instances::gamma_ex_s3());
    assert!(n > 10 && c >= n);
}
