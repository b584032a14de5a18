//! Exact cover by dancing links.
//!
//! Items are `0..n_items`; each option is a set of items. A solution is a
//! set of options covering every item exactly once. Ovoids, fans and
//! rosettes are all enumerated through this one solver.

/// An exact cover instance.
#[derive(Clone, Debug)]
pub struct ExactCover {
    n_items: usize,
    options: Vec<Vec<usize>>,
}

impl ExactCover {
    pub fn new(n_items: usize) -> ExactCover {
        ExactCover {
            n_items,
            options: Vec::new(),
        }
    }

    /// Add an option and return its index. Duplicate items within an option
    /// are ignored.
    pub fn add_option(&mut self, items: &[usize]) -> usize {
        let mut items = items.to_vec();
        items.sort_unstable();
        items.dedup();
        assert!(
            items.iter().all(|&i| i < self.n_items),
            "option references an item outside 0..{}",
            self.n_items
        );
        self.options.push(items);
        self.options.len() - 1
    }

    pub fn n_options(&self) -> usize {
        self.options.len()
    }

    /// All solutions, each a sorted list of option indices, in lexicographic order.
    pub fn solutions(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        Dlx::new(self).search(&mut Vec::new(), &mut out);
        for s in &mut out {
            s.sort_unstable();
        }
        out.sort();
        out
    }

    pub fn count(&self) -> usize {
        self.solutions().len()
    }
}

const ROOT: usize = 0;

/// Toroidal doubly linked node arrays. Nodes `1..=n_items` are column headers.
struct Dlx {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    column: Vec<usize>,
    row: Vec<usize>,
    size: Vec<usize>,
}

impl Dlx {
    fn new(problem: &ExactCover) -> Dlx {
        let n = problem.n_items;
        let total = 1 + n + problem.options.iter().map(Vec::len).sum::<usize>();
        let mut d = Dlx {
            left: Vec::with_capacity(total),
            right: Vec::with_capacity(total),
            up: Vec::with_capacity(total),
            down: Vec::with_capacity(total),
            column: Vec::with_capacity(total),
            row: Vec::with_capacity(total),
            size: vec![0; n + 1],
        };
        for i in 0..=n {
            d.left.push(if i == 0 { n } else { i - 1 });
            d.right.push(if i == n { 0 } else { i + 1 });
            d.up.push(i);
            d.down.push(i);
            d.column.push(i);
            d.row.push(usize::MAX);
        }
        for (r, items) in problem.options.iter().enumerate() {
            let first = d.left.len();
            for (k, &item) in items.iter().enumerate() {
                let node = first + k;
                let col = item + 1;
                let last = if k + 1 == items.len() {
                    first
                } else {
                    node + 1
                };
                let prev = if k == 0 {
                    first + items.len() - 1
                } else {
                    node - 1
                };
                d.left.push(prev);
                d.right.push(last);
                d.up.push(d.up[col]);
                d.down.push(col);
                let above = d.up[col];
                d.down[above] = node;
                d.up[col] = node;
                d.column.push(col);
                d.row.push(r);
                d.size[col] += 1;
            }
        }
        d
    }

    fn cover(&mut self, col: usize) {
        let (l, r) = (self.left[col], self.right[col]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[col];
        while i != col {
            let mut j = self.right[i];
            while j != i {
                let (u, dn) = (self.up[j], self.down[j]);
                self.down[u] = dn;
                self.up[dn] = u;
                self.size[self.column[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, col: usize) {
        let mut i = self.up[col];
        while i != col {
            let mut j = self.left[i];
            while j != i {
                let c = self.column[j];
                self.size[c] += 1;
                let (u, dn) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[dn] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[col], self.right[col]);
        self.right[l] = col;
        self.left[r] = col;
    }

    fn search(&mut self, partial: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if self.right[ROOT] == ROOT {
            out.push(partial.clone());
            return;
        }
        // Column with fewest remaining options.
        let mut best = self.right[ROOT];
        let mut c = self.right[best];
        while c != ROOT {
            if self.size[c] < self.size[best] {
                best = c;
            }
            c = self.right[c];
        }
        if self.size[best] == 0 {
            return;
        }
        self.cover(best);
        let mut r = self.down[best];
        while r != best {
            partial.push(self.row[r]);
            let mut j = self.right[r];
            while j != r {
                self.cover(self.column[j]);
                j = self.right[j];
            }
            self.search(partial, out);
            let mut j = self.left[r];
            while j != r {
                self.uncover(self.column[j]);
                j = self.left[j];
            }
            partial.pop();
            r = self.down[r];
        }
        self.uncover(best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Brute force over all option subsets; only for tiny instances.
    fn brute(n_items: usize, options: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << options.len()) {
            let mut hits = vec![0; n_items];
            let chosen: Vec<usize> = (0..options.len()).filter(|&i| mask >> i & 1 == 1).collect();
            for &o in &chosen {
                for &it in &options[o] {
                    hits[it] += 1;
                }
            }
            if hits.iter().all(|&h| h == 1) {
                out.push(chosen);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn knuth_example() {
        // Items a..g; the unique solution is options {1, 3, 5} (0-based 0, 3, 4).
        let opts = [
            vec![2, 4, 5],
            vec![0, 3, 6],
            vec![1, 2, 5],
            vec![0, 3],
            vec![1, 6],
            vec![3, 4, 6],
        ];
        let mut ec = ExactCover::new(7);
        for o in &opts {
            ec.add_option(o);
        }
        assert_eq!(ec.solutions(), vec![vec![0, 3, 4]]);
    }

    #[test]
    fn domino_tilings_of_2x4() {
        // Cells r*4+c of a 2x4 board; five tilings.
        let mut ec = ExactCover::new(8);
        for r in 0..2 {
            for c in 0..3 {
                ec.add_option(&[r * 4 + c, r * 4 + c + 1]);
            }
        }
        for c in 0..4 {
            ec.add_option(&[c, 4 + c]);
        }
        assert_eq!(ec.count(), 5);
    }

    #[test]
    fn uncoverable_item_has_no_solution() {
        let mut ec = ExactCover::new(3);
        ec.add_option(&[0, 1]);
        assert!(ec.solutions().is_empty());
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(
            options in prop::collection::vec(prop::collection::btree_set(0usize..6, 1..4), 1..11)
        ) {
            let options: Vec<Vec<usize>> = options.into_iter().map(|s| s.into_iter().collect()).collect();
            let mut ec = ExactCover::new(6);
            for o in &options {
                ec.add_option(o);
            }
            prop_assert_eq!(ec.solutions(), brute(6, &options));
        }
    }
}
