//! Index-level binary relations on `0..n` and the enumeration algorithms
//! (chains, maximal chains, maximal transitive sets) shared by every layer
//! that needs them: elements, classes of a simultaneity, elementary-time states.

/// Square boolean matrix; `holds(x, y)` reads "y results from x" (`y ← x`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Relation::empty(n);
        for i in 0..n {
            r.set(i, i);
        }
        r
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn holds(&self, from: usize, to: usize) -> bool {
        self.bits[from * self.n + to]
    }

    pub fn set(&mut self, from: usize, to: usize) {
        self.bits[from * self.n + to] = true;
    }

    /// `to ← from` holds and `from ← to` does not.
    pub fn strict(&self, from: usize, to: usize) -> bool {
        self.holds(from, to) && !self.holds(to, from)
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.holds(i, i))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| (0..self.n).filter(move |&b| self.holds(a, b)).map(move |b| (a, b)))
    }

    /// Relation induced on `idx` (re-indexed by position in `idx`).
    pub fn restrict(&self, idx: &[usize]) -> Relation {
        let mut r = Relation::empty(idx.len());
        for (i, &a) in idx.iter().enumerate() {
            for (j, &b) in idx.iter().enumerate() {
                if self.holds(a, b) {
                    r.set(i, j);
                }
            }
        }
        r
    }

    /// Warshall closure (paths of length >= 1; reflexive pairs only if present or on a cycle).
    pub fn transitive_closure(&self) -> Relation {
        let mut r = self.clone();
        let n = self.n;
        for k in 0..n {
            for i in 0..n {
                if r.holds(i, k) {
                    for j in 0..n {
                        if r.holds(k, j) {
                            r.set(i, j);
                        }
                    }
                }
            }
        }
        r
    }

    pub fn is_transitive_on(&self, set: &[usize]) -> bool {
        set.iter().all(|&x| {
            set.iter()
                .all(|&y| !self.holds(x, y) || set.iter().all(|&z| !self.holds(y, z) || self.holds(x, z)))
        })
    }

    pub fn is_chain(&self, set: &[usize]) -> bool {
        self.is_transitive_on(set)
            && set
                .iter()
                .all(|&x| set.iter().all(|&y| self.holds(x, y) || self.holds(y, x)))
    }

    /// Whether `set ∪ {u}` is still a chain, given that `set` already is one.
    fn chain_extends(&self, set: &[usize], u: usize) -> bool {
        if !self.holds(u, u) {
            return false;
        }
        for &x in set {
            if !(self.holds(x, u) || self.holds(u, x)) {
                return false;
            }
        }
        self.transitive_with(set, u)
    }

    /// Transitivity of `set ∪ {u}` for all triples that mention `u`.
    fn transitive_with(&self, set: &[usize], u: usize) -> bool {
        let mut all: Vec<usize> = set.to_vec();
        all.push(u);
        for &x in &all {
            for &y in &all {
                if !self.holds(x, y) {
                    continue;
                }
                for &z in &all {
                    if (x == u || y == u || z == u) && self.holds(y, z) && !self.holds(x, z) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// All nonempty chains in (size, lexicographic) order. `Err(count)` once more
    /// than `limit` chains exist.
    pub fn chains(&self, limit: usize) -> Result<Vec<Vec<usize>>, usize> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.chains_from(0, &mut cur, &mut out, limit)?;
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    fn chains_from(
        &self,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> Result<(), usize> {
        for u in start..self.n {
            if self.chain_extends(cur, u) {
                cur.push(u);
                out.push(cur.clone());
                if out.len() > limit {
                    return Err(out.len());
                }
                self.chains_from(u + 1, cur, out, limit)?;
                cur.pop();
            }
        }
        Ok(())
    }

    /// Maximal chains, each sorted, the list sorted lexicographically.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        self.maximal_members(&|r: &Relation, set: &[usize], u| r.chain_extends(set, u))
    }

    /// Maximal transitive subsets, each sorted, the list sorted lexicographically.
    pub fn maximal_transitive_sets(&self) -> Vec<Vec<usize>> {
        self.maximal_members(&|r: &Relation, set: &[usize], u| r.transitive_with(set, u))
    }

    /// Bron-Kerbosch style enumeration of the maximal members of a hereditary
    /// family described by its one-element extension test.
    fn maximal_members(&self, addable: &dyn Fn(&Relation, &[usize], usize) -> bool) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let p: Vec<usize> = (0..self.n).filter(|&u| addable(self, &[], u)).collect();
        self.bk(addable, &mut Vec::new(), p, Vec::new(), &mut out);
        for m in &mut out {
            m.sort_unstable();
        }
        out.sort();
        out
    }

    fn bk(
        &self,
        addable: &dyn Fn(&Relation, &[usize], usize) -> bool,
        r: &mut Vec<usize>,
        mut p: Vec<usize>,
        mut x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return;
        }
        // When R ∪ P is itself a member it is the only candidate in this branch.
        let mut whole = r.clone();
        let mut closed = true;
        for &u in &p {
            if !addable(self, &whole, u) {
                closed = false;
                break;
            }
            whole.push(u);
        }
        if closed {
            if !x.iter().any(|&u| addable(self, &whole, u)) {
                out.push(whole);
            }
            return;
        }
        while let Some(v) = p.first().copied() {
            r.push(v);
            let np = p[1..].iter().copied().filter(|&u| addable(self, r, u)).collect();
            let nx = x.iter().copied().filter(|&u| addable(self, r, u)).collect();
            self.bk(addable, r, np, nx, out);
            r.pop();
            p.remove(0);
            x.push(v);
        }
    }

    /// Greedy extension of a chain over increasing index order.
    pub fn extend_chain(&self, chain: &[usize]) -> Vec<usize> {
        let mut cur = chain.to_vec();
        for u in 0..self.n {
            if !cur.contains(&u) && self.chain_extends(&cur, u) {
                cur.push(u);
            }
        }
        cur.sort_unstable();
        cur
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_maximal(r: &Relation, pred: impl Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
        let n = r.len();
        let members: Vec<Vec<usize>> = (1u32..(1 << n))
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| pred(s))
            .collect();
        let mut out: Vec<Vec<usize>> = members
            .iter()
            .filter(|s| {
                !members
                    .iter()
                    .any(|t| t.len() > s.len() && s.iter().all(|e| t.contains(e)))
            })
            .cloned()
            .collect();
        out.sort();
        out
    }

    fn cycle3() -> Relation {
        let mut r = Relation::identity(3);
        r.set(0, 1);
        r.set(1, 2);
        r.set(2, 0);
        r
    }

    #[test]
    fn maximal_sets_match_subset_scan() {
        let r = cycle3();
        assert_eq!(r.maximal_chains(), brute_maximal(&r, |s| r.is_chain(s)));
        assert_eq!(r.maximal_transitive_sets(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn complete_relation_has_one_maximal_chain() {
        let mut r = Relation::empty(12);
        for i in 0..12 {
            for j in 0..12 {
                r.set(i, j);
            }
        }
        assert_eq!(r.maximal_chains(), vec![(0..12).collect::<Vec<_>>()]);
    }

    #[test]
    fn chain_limit_is_reported() {
        let mut r = Relation::empty(4);
        for i in 0..4 {
            for j in 0..4 {
                r.set(i, j);
            }
        }
        assert_eq!(r.chains(100).unwrap().len(), 15);
        assert!(r.chains(10).is_err());
    }

    #[test]
    fn closure_reaches_through_paths() {
        let mut r = Relation::empty(3);
        r.set(0, 1);
        r.set(1, 2);
        let c = r.transitive_closure();
        assert!(c.holds(0, 2));
        assert!(!c.holds(0, 0));
    }
}
