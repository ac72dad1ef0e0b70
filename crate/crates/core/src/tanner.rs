//! Tanner graphs with a canonical edge order.
//!
//! Edges are numbered in row-major scan order of the parity matrix. Each
//! variable's edge list is ordered by *offset*: for a circulant matrix the
//! edge (c_i, v_j) sits at slot b where i = π_j(i_b), so slot b plays the same
//! structural role at every variable. Check lists are ordered the same way
//! relative to the check's own shift. For non-circulant matrices both orders
//! reduce to ascending index.

use crate::bits::BitMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerGraph {
    n_vars: usize,
    n_checks: usize,
    /// (check, variable) pairs, row-major.
    edges: Vec<(usize, usize)>,
    var_ptr: Vec<usize>,
    var_list: Vec<usize>,
    check_ptr: Vec<usize>,
    check_list: Vec<usize>,
    /// Position of each edge inside its variable's list.
    edge_slot: Vec<usize>,
    /// Rows i with H[i][0] = 1, ascending (circulant matrices only).
    col_support: Option<Vec<usize>>,
}

impl TannerGraph {
    pub fn new(h: &BitMatrix) -> Result<Self> {
        let (n_checks, n_vars) = (h.rows(), h.cols());
        if n_checks == 0 || n_vars == 0 {
            return Err(Error::EmptyMatrix);
        }
        if let Some(j) = (0..n_vars).find(|&j| (0..n_checks).all(|i| h.get(i, j) == 0)) {
            return Err(Error::EmptyColumn(j));
        }
        let circulant = h.is_circulant();
        let n = n_vars;

        let mut edges = Vec::with_capacity(h.count_ones());
        for i in 0..n_checks {
            for j in 0..n_vars {
                if h.get(i, j) == 1 {
                    edges.push((i, j));
                }
            }
        }

        let mut var_lists: Vec<Vec<usize>> = vec![Vec::new(); n_vars];
        let mut check_lists: Vec<Vec<usize>> = vec![Vec::new(); n_checks];
        for (e, &(i, j)) in edges.iter().enumerate() {
            var_lists[j].push(e);
            check_lists[i].push(e);
        }
        if circulant {
            for (j, list) in var_lists.iter_mut().enumerate() {
                list.sort_by_key(|&e| (edges[e].0 + n - j) % n);
            }
            for (i, list) in check_lists.iter_mut().enumerate() {
                list.sort_by_key(|&e| (edges[e].1 + n - i) % n);
            }
        }

        let mut edge_slot = vec![0; edges.len()];
        for list in &var_lists {
            for (b, &e) in list.iter().enumerate() {
                edge_slot[e] = b;
            }
        }
        let (var_ptr, var_list) = flatten(var_lists);
        let (check_ptr, check_list) = flatten(check_lists);
        let col_support =
            circulant.then(|| (0..n_checks).filter(|&i| h.get(i, 0) == 1).collect());

        Ok(Self {
            n_vars,
            n_checks,
            edges,
            var_ptr,
            var_list,
            check_ptr,
            check_list,
            edge_slot,
            col_support,
        })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_checks(&self) -> usize {
        self.n_checks
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// (check, variable) of every edge, row-major.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edge ids at variable `j`, in slot order.
    pub fn var_edges(&self, j: usize) -> &[usize] {
        &self.var_list[self.var_ptr[j]..self.var_ptr[j + 1]]
    }

    /// Edge ids at check `i`, in offset order.
    pub fn check_edges(&self, i: usize) -> &[usize] {
        &self.check_list[self.check_ptr[i]..self.check_ptr[i + 1]]
    }

    pub fn var_degree(&self, j: usize) -> usize {
        self.var_ptr[j + 1] - self.var_ptr[j]
    }

    pub fn var_degrees(&self) -> Vec<usize> {
        (0..self.n_vars).map(|j| self.var_degree(j)).collect()
    }

    pub fn edge_slot(&self, e: usize) -> usize {
        self.edge_slot[e]
    }

    pub fn is_circulant(&self) -> bool {
        self.col_support.is_some()
    }

    /// {i_1, ..., i_u} (0-based) for circulant matrices.
    pub fn col_support(&self) -> Option<&[usize]> {
        self.col_support.as_deref()
    }

    /// Column weight u of a circulant matrix.
    pub fn column_weight(&self) -> Option<usize> {
        self.col_support.as_ref().map(Vec::len)
    }
}

fn flatten(lists: Vec<Vec<usize>>) -> (Vec<usize>, Vec<usize>) {
    let mut ptr = Vec::with_capacity(lists.len() + 1);
    ptr.push(0);
    let mut flat = Vec::new();
    for l in lists {
        flat.extend(l);
        ptr.push(flat.len());
    }
    (ptr, flat)
}

/// The cyclic shift π_b on {1, ..., n} (1-based, as a permutation of indices):
/// π_b(i) = i + b − 1, wrapping past n.
pub fn shift_index(n: usize, b: usize, i: usize) -> usize {
    assert!((1..=n).contains(&b) && (1..=n).contains(&i));
    if i + b - 1 <= n {
        i + b - 1
    } else {
        i + b - 1 - n
    }
}

/// (v_{π_b(1)}, ..., v_{π_b(n)}): b − 1 cyclic left shifts.
pub fn shift_vector<T: Copy>(v: &[T], b: usize) -> Vec<T> {
    let n = v.len();
    (0..n).map(|j| v[(j + b - 1) % n]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::CyclicCode;

    #[test]
    fn hamming_std_graph() {
        let c = CyclicCode::bch(3, 1).unwrap();
        let g = TannerGraph::new(&c.parity_std).unwrap();
        assert_eq!(g.n_edges(), 12);
        assert_eq!(
            g.edges(),
            &[
                (0, 0), (0, 2), (0, 3), (0, 4),
                (1, 1), (1, 3), (1, 4), (1, 5),
                (2, 2), (2, 4), (2, 5), (2, 6),
            ]
        );
        assert!(!g.is_circulant());
        assert_eq!(g.var_edges(4), &[3, 6, 9]);
    }

    #[test]
    fn hamming_cyclic_graph() {
        let c = CyclicCode::bch(3, 1).unwrap();
        let g = TannerGraph::new(&c.parity_cyclic).unwrap();
        assert_eq!(g.column_weight(), Some(4));
        assert_eq!(g.col_support(), Some(&[0usize, 3, 4, 5][..]));
        // v_2 (0-based 1) sees c_2, c_5, c_6, c_7 in slot order.
        let checks: Vec<usize> = g.var_edges(1).iter().map(|&e| g.edges()[e].0).collect();
        assert_eq!(checks, vec![1, 4, 5, 6]);
        // Wraparound: v_5 (0-based 4) sees π_5 of {1,4,5,6} = {5,1,2,3}, 1-based.
        let checks: Vec<usize> = g.var_edges(4).iter().map(|&e| g.edges()[e].0).collect();
        assert_eq!(checks, vec![4, 0, 1, 2]);
    }

    #[test]
    fn identity_graph() {
        let id = BitMatrix::from_rows((0..5).map(|i| (0..5).map(|j| u8::from(i == j)).collect()).collect());
        let g = TannerGraph::new(&id).unwrap();
        assert_eq!(g.n_edges(), 5);
        assert!((0..5).all(|j| g.var_degree(j) == 1));
    }

    #[test]
    fn empty_column_rejected() {
        let h = BitMatrix::from_rows(vec![vec![1, 0, 1], vec![1, 0, 0]]);
        assert!(matches!(TannerGraph::new(&h), Err(Error::EmptyColumn(1))));
        assert!(matches!(TannerGraph::new(&BitMatrix::zeros(0, 0)), Err(Error::EmptyMatrix)));
    }

    #[test]
    fn shift_index_cases() {
        assert!((1..=7).all(|i| shift_index(7, 1, i) == i));
        assert_eq!(shift_index(7, 2, 7), 1);
        assert_eq!(shift_index(7, 3, 6), 1);
        assert_eq!(shift_vector(&[1, 2, 3, 4], 2), vec![2, 3, 4, 1]);
    }

    #[test]
    fn degree_sums_match_edge_count() {
        for id in ["BCH(31,16)", "PRM(63,22)"] {
            let c = CyclicCode::from_id(id.parse().unwrap()).unwrap();
            for h in [&c.parity_std, &c.parity_cyclic] {
                let g = TannerGraph::new(h).unwrap();
                let vs: usize = (0..g.n_vars()).map(|j| g.var_edges(j).len()).sum();
                let cs: usize = (0..g.n_checks()).map(|i| g.check_edges(i).len()).sum();
                assert_eq!(vs, h.count_ones());
                assert_eq!(cs, h.count_ones());
                for (e, &(i, j)) in g.edges().iter().enumerate() {
                    assert_eq!(h.get(i, j), 1);
                    assert_eq!(g.var_edges(j)[g.edge_slot(e)], e);
                }
            }
        }
    }

    #[test]
    fn neighborhoods_are_shift_images() {
        let c = CyclicCode::from_id("BCH(63,36)".parse().unwrap()).unwrap();
        let g = TannerGraph::new(&c.parity_cyclic).unwrap();
        let n = c.n;
        let support = g.col_support().unwrap();
        for j in 0..n {
            let checks: Vec<usize> = g.var_edges(j).iter().map(|&e| g.edges()[e].0).collect();
            let expect: Vec<usize> = support.iter().map(|&i| (i + j) % n).collect();
            assert_eq!(checks, expect);
            let next: Vec<usize> = g.var_edges((j + 1) % n).iter().map(|&e| g.edges()[e].0).collect();
            let shifted: Vec<usize> = checks.iter().map(|&i| (i + 1) % n).collect();
            assert_eq!(next, shifted);
        }
        for i in 0..n {
            let vars: Vec<usize> = g.check_edges(i).iter().map(|&e| g.edges()[e].1).collect();
            let next: Vec<usize> = g.check_edges((i + 1) % n).iter().map(|&e| g.edges()[e].1).collect();
            let shifted: Vec<usize> = vars.iter().map(|&j| (j + 1) % n).collect();
            assert_eq!(next, shifted);
        }
    }
}
