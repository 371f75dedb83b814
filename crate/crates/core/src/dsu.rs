//! Disjoint-set forest with rollback, used as the incremental acyclicity
//! structure of the backtracking solver.
//!
//! Union by size without path compression, so every `union` is undone in
//! O(1) by popping the history.

#[derive(Debug, Clone)]
pub struct RollbackDsu {
    /// Negative size for roots, parent index otherwise.
    parent: Vec<isize>,
    /// (absorbing root, absorbed root, absorbed root's old entry)
    history: Vec<(usize, usize, isize)>,
}

impl RollbackDsu {
    pub fn new(len: usize) -> Self {
        RollbackDsu { parent: vec![-1; len], history: Vec::new() }
    }

    pub fn find(&self, mut v: usize) -> usize {
        while self.parent[v] >= 0 {
            v = self.parent[v] as usize;
        }
        v
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Size of the set containing `v`.
    pub fn size(&self, v: usize) -> usize {
        (-self.parent[self.find(v)]) as usize
    }

    /// Merges the sets of `a` and `b`. Returns false if they already were
    /// one set (nothing is recorded in that case).
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut x, mut y) = (self.find(a), self.find(b));
        if x == y {
            return false;
        }
        if self.parent[x] > self.parent[y] {
            std::mem::swap(&mut x, &mut y);
        }
        // x is the larger root
        self.history.push((x, y, self.parent[y]));
        self.parent[x] += self.parent[y];
        self.parent[y] = x as isize;
        true
    }

    /// Checkpoint for [`RollbackDsu::rollback`].
    pub fn time(&self) -> usize {
        self.history.len()
    }

    pub fn rollback(&mut self, time: usize) {
        while self.history.len() > time {
            let (x, y, old) = self.history.pop().unwrap();
            self.parent[x] -= old;
            self.parent[y] = old;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_and_rollback() {
        let mut d = RollbackDsu::new(5);
        assert!(d.union(0, 1));
        let t = d.time();
        assert!(d.union(1, 2));
        assert!(!d.union(0, 2));
        assert_eq!(d.size(2), 3);
        d.rollback(t);
        assert!(d.same(0, 1));
        assert!(!d.same(1, 2));
        assert_eq!(d.size(0), 2);
        assert_eq!(d.size(2), 1);
        d.rollback(0);
        assert!(!d.same(0, 1));
    }
}
