use gp_core::conjugacy::DEFAULT_BFS_LIMIT;
use gp_core::diagrams::file::DiagramFile;
use gp_core::diagrams::shuffle_diagram;
use gp_core::graph::{meier_condition, subnegative_closure_table};
use gp_core::{instances, GraphProduct, Oracle, SimplicialGraph, Syllable, VertexGroup, Word};
use proptest::prelude::*;
use proptest::sample::select;

fn letters(p: &GraphProduct) -> Vec<Syllable> {
    (0..p.graph().len())
        .flat_map(|u| {
            let g = p.group(u);
            let values = if g.is_finite() { g.elements() } else { (-3..=3).collect() };
            values.into_iter().map(move |x| Syllable::new(u, x))
        })
        .collect()
}

fn words(p: &GraphProduct, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(select(letters(p)), 0..=max_len).prop_map(Word)
}

fn graph(n: usize, mask: u64) -> SimplicialGraph {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((names[i].clone(), names[j].clone()));
            }
            bit += 1;
        }
    }
    SimplicialGraph::new(&names, &edges).unwrap()
}

fn brute_maximal_cliques(g: &SimplicialGraph) -> Vec<Vec<usize>> {
    let n = g.len();
    let sets: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| g.is_clique(s))
        .collect();
    let mut out: Vec<Vec<usize>> = sets
        .iter()
        .filter(|s| !sets.iter().any(|t| t.len() > s.len() && s.iter().all(|x| t.contains(x))))
        .cloned()
        .collect();
    out.sort();
    out
}

#[test]
fn table_groups_satisfy_group_laws() {
    for g in [instances::frobenius20(), instances::symmetric3(), instances::metacyclic(7, 3, 2)] {
        let all = g.elements();
        for &x in &all {
            assert_eq!(g.compose(x, 0).unwrap(), x);
            assert_eq!(g.compose(x, g.invert(x).unwrap()).unwrap(), 0);
            for &y in &all {
                for &z in &all {
                    let left = g.compose(g.compose(x, y).unwrap(), z).unwrap();
                    assert_eq!(left, g.compose(x, g.compose(y, z).unwrap()).unwrap());
                }
            }
        }
    }
}

#[test]
fn local_conjugacy_witnesses() {
    let g = instances::frobenius20();
    for x in g.elements() {
        for y in g.elements() {
            let brute = g.elements().into_iter().find(|&c| {
                g.compose(g.compose(c, x).unwrap(), g.invert(c).unwrap()).unwrap() == y
            });
            let found = g.conjugacy_witness_local(x, y).unwrap();
            assert_eq!(found.is_some(), brute.is_some());
            if let Some(c) = found {
                assert_eq!(g.compose(g.compose(c, x).unwrap(), g.invert(c).unwrap()).unwrap(), y);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reduce_agrees_with_oracle(w in words(&instances::gamma_ex_s3(), 7)) {
        let p = instances::gamma_ex_s3();
        let o = Oracle::new(&p);
        let r = p.reduce(&w);
        prop_assert!(o.oracle_equal(&r, &w).unwrap());
        prop_assert!(p.is_graphically_reduced(&r));
        prop_assert_eq!(p.reduce(&r), r.clone());
        // Keys are shortest in syllables, like graphically reduced words.
        prop_assert_eq!(r.len(), o.key(&w).unwrap().len());
    }

    #[test]
    fn canonical_forms_are_confluent(
        w in words(&instances::frobenius_path(), 8),
        x in words(&instances::frobenius_path(), 5),
    ) {
        let p = instances::frobenius_path();
        let nf = p.canonical_form(&w);
        prop_assert_eq!(p.canonical_form(nf.as_word()), nf.clone());
        let padded = p.multiply(&[&x, &p.inverse(&x), &w]);
        prop_assert_eq!(p.canonical_form(&padded), nf.clone());
        prop_assert!(p.equal(nf.as_word(), &w));
    }

    #[test]
    fn maximal_cliques_match_brute_force(n in 1usize..=7, mask in any::<u64>()) {
        let g = graph(n, mask);
        prop_assert_eq!(g.maximal_cliques(), brute_maximal_cliques(&g));
    }

    #[test]
    fn finite_meier_is_square_free(n in 1usize..=6, mask in any::<u64>()) {
        let g = graph(n, mask);
        let square = (0..n).any(|a| {
            (0..n).any(|b| {
                (0..n).any(|c| {
                    (0..n).any(|d| {
                        a < c && b < d && a != b && a != d && c != b && c != d
                            && !g.adjacent(a, c) && !g.adjacent(b, d)
                            && g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(c, d) && g.adjacent(d, a)
                    })
                })
            })
        });
        prop_assert_eq!(g.has_induced_square(), square);
        prop_assert_eq!(meier_condition(&g, &vec![false; n]), !square);
    }

    #[test]
    fn closures_are_subadditive_and_dominate(table in prop::collection::vec(0u64..500, 1..=20)) {
        let closed = subnegative_closure_table(&table);
        for (i, (&f, &c)) in table.iter().zip(&closed).enumerate() {
            prop_assert!(c >= f);
            for j in 0..i {
                // closed(i+1) >= closed(j+1) + closed(i-j)
                prop_assert!(c >= closed[j] + closed[i - j - 1]);
            }
        }
        prop_assert_eq!(subnegative_closure_table(&closed), closed);
    }

    #[test]
    fn cyclic_reduction_certificates(w in words(&instances::frobenius_path(), 10)) {
        let p = instances::frobenius_path();
        let cr = p.cyclically_reduce(&w);
        prop_assert!(p.equal(&p.conjugate(&cr.conjugator, &cr.core), &w));
        prop_assert!(p.is_graphically_cyclically_reduced(&cr.core));
        prop_assert!(2 * p.word_length(&cr.conjugator) <= p.word_length(&w));
    }

    #[test]
    fn conjugates_are_found(
        a in words(&instances::frobenius_path(), 5),
        c in words(&instances::frobenius_path(), 4),
    ) {
        let p = instances::frobenius_path();
        let b = p.conjugate(&c, &a);
        let w = p.are_conjugate(&a, &b, DEFAULT_BFS_LIMIT).unwrap().expect("conjugate by construction");
        prop_assert!(p.verify_witness(&a, &b, &w.conjugator));
        prop_assert!(p.reduced_length(&w.conjugator) <= w.bound);
        let back = p.are_conjugate(&b, &a, DEFAULT_BFS_LIMIT).unwrap().expect("symmetric");
        prop_assert!(p.verify_witness(&b, &a, &back.conjugator));
        let fa = p.floating_decomposition(&p.cyclically_reduce(&a).core).unwrap();
        let fb = p.floating_decomposition(&p.cyclically_reduce(&b).core).unwrap();
        prop_assert_eq!(fa.float_vertices(), fb.float_vertices());
    }

    #[test]
    fn conjugacy_is_symmetric(
        a in words(&instances::gamma_ex_s3(), 5),
        b in words(&instances::gamma_ex_s3(), 5),
    ) {
        let p = instances::gamma_ex_s3();
        let ab = p.are_conjugate(&a, &b, DEFAULT_BFS_LIMIT).unwrap();
        let ba = p.are_conjugate(&b, &a, DEFAULT_BFS_LIMIT).unwrap();
        prop_assert_eq!(ab.is_some(), ba.is_some());
    }

    #[test]
    fn diagrams_keep_their_boundary(
        w in words(&instances::gamma_ex_s3(), 6),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 0..6),
    ) {
        let p = instances::gamma_ex_s3();
        let top = p.reduce(&w);
        prop_assume!(!top.is_empty());
        let mut cur = top.0.clone();
        let mut swaps = Vec::new();
        for pick in picks {
            let legal: Vec<usize> = (0..cur.len().saturating_sub(1))
                .filter(|&i| cur[i].vertex != cur[i + 1].vertex && p.commute(&cur[i], &cur[i + 1]))
                .collect();
            if legal.is_empty() {
                break;
            }
            let i = legal[pick.index(legal.len())];
            cur.swap(i, i + 1);
            swaps.push(i);
        }
        let (d, bottom) = shuffle_diagram(&p, &top, &swaps).unwrap();
        prop_assert_eq!(&bottom.0, &cur);
        // Disc diagrams: V - E + F = 2 with the outer face counted.
        prop_assert_eq!(d.vertex_count() + d.face_count(), d.edge_count() + 2);
        let label = d.boundary_label();
        prop_assert_eq!(label.outer, Word::concat(&[&top, &p.inverse(&bottom)]));
        let (_, again) = DiagramFile::from_json(&DiagramFile::of(&p, &d).to_json()).unwrap().load().unwrap();
        prop_assert_eq!(&again, &d);
        for mv in d.applicable_moves(&p) {
            let e = d.apply_move(&p, mv).unwrap();
            prop_assert_eq!(e.boundary_label(), d.boundary_label());
            prop_assert_eq!(e.face_count() as isize, d.face_count() as isize + mv.kind.face_delta());
            prop_assert!(e.validate(&p).is_ok());
        }
    }
}

#[test]
fn integers_compose_like_addition() {
    let z = VertexGroup::integers();
    assert_eq!(z.compose(3, -5).unwrap(), -2);
    assert_eq!(z.invert(7).unwrap(), -7);
    assert_eq!(z.element_length(-4).unwrap(), 4);
}
