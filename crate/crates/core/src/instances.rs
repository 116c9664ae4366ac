//! Small standard instances shared by tests, benches and fixtures.

use crate::graph::SimplicialGraph;
use crate::vertex_group::VertexGroup;
use crate::words::GraphProduct;

/// The metacyclic group `Z_m ⋊ Z_n` with `s r s^-1 = r^a`, elements
/// `r^i s^j` stored at index `j*m + i` and named like `r2s3`.
pub fn metacyclic(m: usize, n: usize, a: usize) -> VertexGroup {
    let power = |base: usize, e: usize| (0..e).fold(1usize, |acc, _| acc * base % m);
    assert_eq!(power(a, n), 1 % m, "s must act by an automorphism of order dividing n");
    let part = |letter: char, k: usize| match k {
        0 => String::new(),
        1 => letter.to_string(),
        k => format!("{letter}{k}"),
    };
    let mut names = Vec::with_capacity(m * n);
    for j in 0..n {
        for i in 0..m {
            let name = format!("{}{}", part('r', i), part('s', j));
            names.push(if name.is_empty() { "e".to_string() } else { name });
        }
    }
    let size = m * n;
    let mut table = vec![vec![0; size]; size];
    for (x, row) in table.iter_mut().enumerate() {
        let (i, j) = (x % m, x / m);
        for (y, cell) in row.iter_mut().enumerate() {
            let (k, l) = (y % m, y / m);
            let ri = (i + power(a, j) * k) % m;
            let sj = (j + l) % n;
            *cell = sj * m + ri;
        }
    }
    VertexGroup::table(names, table, &["r".into(), "s".into()]).expect("metacyclic table")
}

/// The Frobenius group of order 20, `<r, s | r^5, s^4, s r s^-1 = r^2>`.
pub fn frobenius20() -> VertexGroup {
    metacyclic(5, 4, 2)
}

/// The symmetric group on three letters as `<r, s | r^3, s^2, s r s^-1 = r^2>`.
pub fn symmetric3() -> VertexGroup {
    metacyclic(3, 2, 2)
}

fn product(names: &[&str], edges: &[(&str, &str)], groups: Vec<VertexGroup>) -> GraphProduct {
    let graph = SimplicialGraph::new(names, edges).expect("valid graph");
    GraphProduct::new(graph, groups).expect("one group per vertex")
}

/// One vertex `u` carrying the cyclic group of the given order.
pub fn single_vertex(order: i64) -> GraphProduct {
    product(&["u"], &[], vec![VertexGroup::cyclic(order).expect("order >= 2")])
}

/// Path `a - c - b` with groups `Z2, Z2, Z3`.
pub fn gamma_ex() -> GraphProduct {
    gamma_ex_with_c(VertexGroup::cyclic(3).unwrap())
}

/// Path `a - c - b` with groups `Z2, Z2` at the ends and `c` in the middle.
pub fn gamma_ex_with_c(c: VertexGroup) -> GraphProduct {
    let z2 = VertexGroup::cyclic(2).unwrap();
    product(&["a", "b", "c"], &[("a", "c"), ("b", "c")], vec![z2.clone(), z2, c])
}

/// The path instance with the symmetric group `S3` at `c`.
pub fn gamma_ex_s3() -> GraphProduct {
    gamma_ex_with_c(symmetric3())
}

/// Path `a - c - b - e`; `a`, `b`, `e` carry the integers and `c` the
/// Frobenius group of order 20.
pub fn frobenius_path() -> GraphProduct {
    let z = VertexGroup::integers();
    product(
        &["a", "b", "c", "e"],
        &[("a", "c"), ("b", "c"), ("b", "e")],
        vec![z.clone(), z.clone(), frobenius20(), z],
    )
}

/// Two non-adjacent vertices with `Z2` groups: the infinite dihedral group.
pub fn infinite_dihedral() -> GraphProduct {
    let z2 = VertexGroup::cyclic(2).unwrap();
    product(&["x", "y"], &[], vec![z2.clone(), z2])
}
