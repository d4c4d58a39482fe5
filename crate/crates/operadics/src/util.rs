//! Small shared helpers: integer compositions, union-find, chunked
//! parallelism.

/// All ways of writing `total` as an ordered sum of `parts` nonnegative
/// integers, each at most `cap`, in lexicographic order.
pub fn compositions(total: u32, parts: usize, cap: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts);
    fn rec(total: u32, parts: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let hi = total.min(cap);
        for j in 0..=hi {
            cur.push(j);
            rec(total - j, parts - 1, cap, cur, out);
            cur.pop();
        }
    }
    rec(total, parts, cap, &mut cur, &mut out);
    out
}

/// Union-find over `0..n`, used for coequalizers and congruence closure.
pub struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }

    /// Groups indices by representative, classes sorted by smallest member.
    pub fn classes(&mut self, n: usize) -> Vec<Vec<usize>> {
        let mut by_root = std::collections::BTreeMap::<usize, Vec<usize>>::new();
        for x in 0..n {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        let mut classes: Vec<Vec<usize>> = by_root.into_values().collect();
        classes.sort_by_key(|c| c[0]);
        classes
    }
}

/// Applies `f` to every item, splitting the work over up to `jobs` threads.
/// Results come back in input order, so output is independent of `jobs`.
pub fn par_map<T, R, F>(jobs: usize, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync,
{
    let jobs = jobs.max(1);
    if jobs == 1 || items.len() <= 1 {
        return items.into_iter().map(f).collect();
    }
    let n = items.len();
    let chunk = n.div_ceil(jobs);
    let mut slots: Vec<Option<R>> = Vec::with_capacity(n);
    slots.resize_with(n, || None);
    let indexed: Vec<(usize, T)> = items.into_iter().enumerate().collect();
    let mut chunks: Vec<Vec<(usize, T)>> = Vec::new();
    let mut it = indexed.into_iter().peekable();
    while it.peek().is_some() {
        chunks.push(it.by_ref().take(chunk).collect());
    }
    let results: Vec<Vec<(usize, R)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|c| scope.spawn(|| c.into_iter().map(|(i, t)| (i, f(t))).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for part in results {
        for (i, r) in part {
            slots[i] = Some(r);
        }
    }
    slots.into_iter().map(|s| s.unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(2, 2, 2).len(), 3);
        assert_eq!(compositions(0, 0, 5).len(), 1);
        assert_eq!(compositions(1, 0, 5).len(), 0);
        assert_eq!(compositions(3, 2, 1).len(), 0);
    }

    #[test]
    fn par_map_order_is_stable() {
        let xs: Vec<u32> = (0..100).collect();
        let a = par_map(1, xs.clone(), |x| x * x);
        let b = par_map(4, xs, |x| x * x);
        assert_eq!(a, b);
    }
}
