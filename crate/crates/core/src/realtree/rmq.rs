use alloc::vec::Vec;

/// Sparse table answering arg-min over inclusive index ranges in O(1).
///
/// Row `k` holds the arg-min of every window of length `2^k`. Ties resolve
/// to the smallest index.
#[derive(Debug, Clone)]
pub struct SparseTable {
    len: usize,
    rows: Vec<Vec<u32>>,
}

impl SparseTable {
    pub fn new(values: &[f64]) -> Self {
        let len = values.len();
        assert!(len > 0 && len <= u32::MAX as usize);
        let mut rows: Vec<Vec<u32>> = Vec::new();
        rows.push((0..len as u32).collect());
        let mut width = 1;
        while 2 * width <= len {
            let prev = rows.last().unwrap();
            let row: Vec<u32> = (0..=len - 2 * width)
                .map(|i| pick(values, prev[i], prev[i + width]))
                .collect();
            rows.push(row);
            width *= 2;
        }
        Self { len, rows }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Arg-min of `values[i..=j]`; requires `i <= j < len`.
    #[inline]
    pub fn argmin(&self, values: &[f64], i: usize, j: usize) -> usize {
        debug_assert!(i <= j && j < self.len);
        let k = (j - i + 1).ilog2() as usize;
        let row = &self.rows[k];
        pick(values, row[i], row[j + 1 - (1 << k)]) as usize
    }
}

#[inline]
fn pick(values: &[f64], a: u32, b: u32) -> u32 {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    if values[hi as usize] < values[lo as usize] {
        hi
    } else {
        lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn scan(values: &[f64], i: usize, j: usize) -> usize {
        let mut best = i;
        for k in i..=j {
            if values[k] < values[best] {
                best = k;
            }
        }
        best
    }

    #[test]
    fn single_element_ranges() {
        let v = [3.0, 1.0, 2.0, 1.0, 5.0];
        let t = SparseTable::new(&v);
        for i in 0..v.len() {
            assert_eq!(t.argmin(&v, i, i), i);
        }
        assert_eq!(t.argmin(&v, 0, 4), 1);
        assert_eq!(t.argmin(&v, 2, 4), 3);
    }

    proptest! {
        #[test]
        fn agrees_with_linear_scan(
            v in proptest::collection::vec(0u8..8, 1..80),
            a in 0usize..80,
            b in 0usize..80,
        ) {
            let v: Vec<f64> = v.into_iter().map(f64::from).collect();
            let t = SparseTable::new(&v);
            let (i, j) = (a.min(b) % v.len(), a.max(b) % v.len());
            let (i, j) = (i.min(j), i.max(j));
            prop_assert_eq!(t.argmin(&v, i, j), scan(&v, i, j));
        }
    }
}
