use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::DiscreteTree;
use crate::realtree::RealTreeIndex;
use crate::{Error, Result};

/// A tree spanned by marked points, with the vertex of each mark.
#[derive(Debug, Clone)]
pub struct Extraction {
    pub tree: DiscreteTree,
    /// `mark_vertices[i]` is the vertex of the `i`-th input mark.
    pub mark_vertices: Vec<usize>,
    /// Grid index coding each vertex.
    pub grid_index: Vec<usize>,
}

/// `k` i.i.d. uniform times in `[0, 1)`.
pub fn uniform_marks<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<f64> {
    (0..k).map(|_| rng.random::<f64>()).collect()
}

/// The finite tree spanned by the root and the marked times.
///
/// Marks snap to the nearest grid point carrying measure. Vertices are the root (vertex 0),
/// the distinct marked tree points and every branch point between them;
/// coincident tree points share a vertex, so all edges have positive
/// length. The grid points `0..n` carrying measure share mass equally
/// (grid `n` is the root again) and each is assigned to its nearest vertex in tree distance, ties to
/// the smaller vertex index.
pub fn extract_tree(idx: &RealTreeIndex, marks: &[f64]) -> Result<Extraction> {
    if marks.is_empty() {
        return Err(Error::InvalidParameter("need at least one mark"));
    }
    let path = idx.path();
    let v = idx.values();
    let n = idx.intervals();
    let mut grid_marks = Vec::with_capacity(marks.len());
    for &t in marks {
        path.check_time(t)?;
        grid_marks.push(path.nearest_atom(t));
    }
    let mut sorted = grid_marks.clone();
    sorted.sort_unstable();
    sorted.dedup();

    // Vertex data; vertex 0 is the root at grid 0.
    let mut grid: Vec<usize> = vec![0];
    let mut height: Vec<f64> = vec![0.0];
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut vertex_of_mark: Vec<usize> = Vec::with_capacity(sorted.len());
    // Path from the root to the previous mark; heights strictly increase.
    let mut stack: Vec<usize> = vec![0];
    let mut prev = 0usize;
    for &g in &sorted {
        let u = idx.argmin(prev, g);
        let h = v[u];
        let mut last = None;
        while height[*stack.last().unwrap()] > h {
            last = stack.pop();
        }
        let top = *stack.last().unwrap();
        let branch = if height[top] == h {
            top
        } else {
            let b = grid.len();
            grid.push(u);
            height.push(h);
            parent.push(Some(top));
            stack.push(b);
            b
        };
        if let Some(x) = last {
            parent[x] = Some(branch);
        }
        let leaf = if v[g] > h {
            let l = grid.len();
            grid.push(g);
            height.push(v[g]);
            parent.push(Some(branch));
            stack.push(l);
            l
        } else {
            branch
        };
        vertex_of_mark.push(leaf);
        prev = g;
    }

    let edge: Vec<f64> = (0..grid.len())
        .map(|x| parent[x].map_or(0.0, |p| height[x] - height[p]))
        .collect();
    let mass = assign_mass(idx, &sorted, &vertex_of_mark, &parent, &height);
    let time: Vec<f64> = grid.iter().map(|&g| path.time_of(g)).collect();
    let tree = DiscreteTree::new(parent, edge, mass, time)?;

    let mark_vertices = grid_marks
        .iter()
        .map(|g| vertex_of_mark[sorted.binary_search(g).unwrap()])
        .collect();
    debug_assert!(grid.iter().all(|&g| g <= n));
    Ok(Extraction {
        tree,
        mark_vertices,
        grid_index: grid,
    })
}

/// Nearest-vertex mass assignment.
///
/// The point of the spanned subtree closest to grid point `t` hangs at
/// height `H = max(m(L, t), m(t, R))` below the nearest marks `L < t < R`
/// (the root stands in at either end), on the root path of whichever side
/// attains it. Every vertex is reached from `sigma_t` through that point,
/// so the nearest vertex is an end of the edge containing it.
fn assign_mass(
    idx: &RealTreeIndex,
    sorted: &[usize],
    vertex_of_mark: &[usize],
    parent: &[Option<usize>],
    height: &[f64],
) -> Vec<f64> {
    let n = idx.intervals();
    let stride = idx.path().stride();
    let w = stride as f64 / n as f64;
    let mut mass = vec![0.0; parent.len()];
    let mut next = 0usize; // first mark with grid index > t
    for t in (0..n).step_by(stride) {
        while next < sorted.len() && sorted[next] <= t {
            next += 1;
        }
        let (left_g, left_v) = if next == 0 {
            (0, 0)
        } else {
            (sorted[next - 1], vertex_of_mark[next - 1])
        };
        let (right_g, right_v) = if next == sorted.len() {
            (n, 0)
        } else {
            (sorted[next], vertex_of_mark[next])
        };
        let hl = idx.grid_min(left_g, t);
        let hr = idx.grid_min(t, right_g);
        let (h, mut a) = if hl >= hr {
            (hl, left_v)
        } else {
            (hr, right_v)
        };
        while let Some(p) = parent[a] {
            if height[p] >= h {
                a = p;
            } else {
                break;
            }
        }
        let nearest = match parent[a] {
            Some(p) if height[a] > h => {
                let (da, dp) = (height[a] - h, h - height[p]);
                if dp < da || (dp == da && p < a) {
                    p
                } else {
                    a
                }
            }
            _ => a,
        };
        mass[nearest] += w;
    }
    mass
}
