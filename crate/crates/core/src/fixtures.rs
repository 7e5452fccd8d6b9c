//! Small named complexes used throughout the tests and the CLI examples.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::complex::CellComplex;
use crate::exact::IntMatrix;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// All `k`-subsets of `{1, …, n}` in lexicographic order.
pub fn all_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

fn simplicial(facets: &[&[u64]]) -> CellComplex {
    let facets: Vec<Vec<u64>> = facets.iter().map(|f| f.to_vec()).collect();
    CellComplex::from_simplicial_facets(&facets).expect("fixture is a valid simplicial complex")
}

/// `e⁰ ∪ e¹ ∪ e²` with chain complex `ℤ --2--> ℤ --0--> ℤ`.
pub fn projective_plane() -> CellComplex {
    CellComplex::new(
        vec![labels(&["v"]), labels(&["e"]), labels(&["f"])],
        vec![IntMatrix::from_i64(&[&[0]]), IntMatrix::from_i64(&[&[2]])],
        true,
    )
    .expect("valid")
}

/// One vertex, one loop, two 2-cells with `∂₂ = [a b]`.
pub fn vic(a: i64, b: i64) -> CellComplex {
    CellComplex::new(
        vec![labels(&["v"]), labels(&["e"]), labels(&["f1", "f2"])],
        vec![IntMatrix::from_i64(&[&[0]]), IntMatrix::from_i64(&[&[a, b]])],
        true,
    )
    .expect("valid")
}

/// The complete graph on three vertices.
pub fn triangle_graph() -> CellComplex {
    simplicial(&[&[1, 2], &[1, 3], &[2, 3]])
}

/// The equatorial bipyramid: the triangle 123 coned off by 4 and by 5, plus 123.
pub fn bipyramid() -> CellComplex {
    simplicial(&[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5], &[1, 3, 4], &[1, 3, 5], &[2, 3, 4], &[2, 3, 5]])
}

/// One vertex, two loops, four 2-cells of degrees 2, 3 (on `e1`) and 5, 7 (on `e2`).
pub fn double_ravioli() -> CellComplex {
    CellComplex::new(
        vec![labels(&["v"]), labels(&["e1", "e2"]), labels(&["s2", "s3", "s5", "s7"])],
        vec![IntMatrix::from_i64(&[&[0, 0]]), IntMatrix::from_i64(&[&[2, 3, 0, 0], &[0, 0, 5, 7]])],
        true,
    )
    .expect("valid")
}

/// Two vertices joined by three edges, with three 2-cells forming a single circuit.
pub fn three_cell_circuit() -> CellComplex {
    CellComplex::new(
        vec![labels(&["v1", "v2"]), labels(&["e1", "e2", "e3"]), labels(&["s1", "s2", "s3"])],
        vec![
            IntMatrix::from_i64(&[&[-1, -1, -1], &[1, 1, 1]]),
            IntMatrix::from_i64(&[&[2, 2, 0], &[-2, 0, 1], &[0, -2, -1]]),
        ],
        true,
    )
    .expect("valid")
}

/// The full 2-skeleton of the simplex on `n` vertices.
pub fn complete_2_complex(n: usize) -> CellComplex {
    let facets: Vec<Vec<u64>> =
        all_subsets(n, 3).into_iter().map(|t| t.into_iter().map(|v| v as u64).collect()).collect();
    CellComplex::from_simplicial_facets(&facets).expect("valid")
}

/// Facets of the six-vertex triangulation of the projective plane (the
/// icosahedron with antipodal faces identified).
pub const RP2_SIX_VERTEX_FACETS: [[u64; 3]; 10] =
    [[1, 2, 4], [1, 2, 6], [1, 3, 5], [1, 3, 6], [1, 4, 5], [2, 3, 4], [2, 3, 5], [2, 5, 6], [3, 4, 6], [4, 5, 6]];

/// Labels of [`RP2_SIX_VERTEX_FACETS`] as they appear in [`complete_2_complex`].
pub fn rp2_six_vertex_labels() -> Vec<String> {
    RP2_SIX_VERTEX_FACETS.iter().map(|f| format!("{}{}{}", f[0], f[1], f[2])).collect()
}

/// The six-vertex projective plane as a simplicial complex of its own.
pub fn icosahedral_projective_plane() -> CellComplex {
    let facets: Vec<Vec<u64>> = RP2_SIX_VERTEX_FACETS.iter().map(|f| f.to_vec()).collect();
    CellComplex::from_simplicial_facets(&facets).expect("valid")
}

/// Every fixture paired with a short name.
pub fn named() -> Vec<(&'static str, CellComplex)> {
    vec![
        ("triangle", triangle_graph()),
        ("rp2", projective_plane()),
        ("vic-6-2", vic(6, 2)),
        ("bipyramid", bipyramid()),
        ("double-ravioli", double_ravioli()),
        ("three-cell", three_cell_circuit()),
    ]
}
