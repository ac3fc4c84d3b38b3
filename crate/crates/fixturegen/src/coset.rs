//! Felsch-style coset enumeration for two-generator presentations in which
//! the first generator is an involution.  Columns: `a`, `b`, `b^-1`.

const NONE: u32 = u32::MAX;
const INV: [usize; 3] = [0, 2, 1];

/// Letters `a`, `b`, `B` (= b^-1).
pub fn word(s: &str) -> Vec<usize> {
    s.chars()
        .map(|c| match c {
            'a' => 0,
            'b' => 1,
            'B' => 2,
            _ => panic!("bad letter {c:?}"),
        })
        .collect()
}

pub struct CosetTable {
    table: Vec<[u32; 3]>,
    parent: Vec<u32>,
    limit: usize,
    // cyclic conjugates of relators and their inverses, by first letter
    by_first: [Vec<Vec<usize>>; 3],
    deductions: Vec<(u32, usize)>,
}

impl CosetTable {
    pub fn new(relators: &[Vec<usize>], limit: usize) -> Self {
        let mut all: Vec<Vec<usize>> = Vec::new();
        for r in relators {
            let ri: Vec<usize> = r.iter().rev().map(|&x| INV[x]).collect();
            for w in [r.clone(), ri] {
                for s in 0..w.len() {
                    let mut c = w[s..].to_vec();
                    c.extend_from_slice(&w[..s]);
                    if !all.contains(&c) {
                        all.push(c);
                    }
                }
            }
        }
        let mut by_first: [Vec<Vec<usize>>; 3] = Default::default();
        for w in all {
            by_first[w[0]].push(w);
        }
        CosetTable {
            table: vec![[NONE; 3]],
            parent: vec![0],
            limit,
            by_first,
            deductions: Vec::new(),
        }
    }

    fn rep(&mut self, k: u32) -> u32 {
        let mut l = k;
        while self.parent[l as usize] != l {
            l = self.parent[l as usize];
        }
        let mut r = k;
        while self.parent[r as usize] != r {
            let n = self.parent[r as usize];
            self.parent[r as usize] = l;
            r = n;
        }
        l
    }

    fn merge(&mut self, k: u32, l: u32, queue: &mut Vec<u32>) {
        let a = self.rep(k);
        let b = self.rep(l);
        if a != b {
            let (keep, gone) = if a < b { (a, b) } else { (b, a) };
            self.parent[gone as usize] = keep;
            queue.push(gone);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let g = queue[i];
            i += 1;
            for x in 0..3 {
                let d = self.table[g as usize][x];
                if d == NONE {
                    continue;
                }
                let ix = INV[x];
                if self.table[d as usize][ix] == g {
                    self.table[d as usize][ix] = NONE;
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.table[mu as usize][x] != NONE {
                    let t = self.table[mu as usize][x];
                    self.merge(nu, t, &mut queue);
                } else if self.table[nu as usize][ix] != NONE {
                    let t = self.table[nu as usize][ix];
                    self.merge(mu, t, &mut queue);
                } else {
                    self.table[mu as usize][x] = nu;
                    self.table[nu as usize][ix] = mu;
                    self.deductions.push((mu, x));
                }
            }
        }
    }

    fn define(&mut self, c: u32, x: usize) -> bool {
        if self.table.len() >= self.limit {
            return false;
        }
        let d = self.table.len() as u32;
        self.table.push([NONE; 3]);
        self.parent.push(d);
        self.table[c as usize][x] = d;
        self.table[d as usize][INV[x]] = c;
        self.deductions.push((c, x));
        true
    }

    fn scan(&mut self, c: u32, w: &[usize], fill: bool) -> bool {
        let mut f = c;
        let mut i = 0usize;
        let mut b = c;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.table[f as usize][w[i]] != NONE {
                f = self.table[f as usize][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != c {
                    self.coincidence(f, c);
                }
                return true;
            }
            while j >= i as isize && self.table[b as usize][INV[w[j as usize]]] != NONE {
                b = self.table[b as usize][INV[w[j as usize]]];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return true;
            }
            if j == i as isize {
                self.table[f as usize][w[i]] = b;
                self.table[b as usize][INV[w[i]]] = f;
                self.deductions.push((f, w[i]));
                return true;
            }
            if !fill {
                return true;
            }
            if !self.define(f, w[i]) {
                return false;
            }
        }
    }

    fn scan_all(&mut self, c: u32, x: usize) {
        for k in 0..self.by_first[x].len() {
            let w = std::mem::take(&mut self.by_first[x][k]);
            self.scan(c, &w, false);
            self.by_first[x][k] = w;
            if self.parent[c as usize] != c {
                return;
            }
        }
    }

    fn process_deductions(&mut self) {
        while let Some((a, x)) = self.deductions.pop() {
            if self.parent[a as usize] != a {
                continue;
            }
            self.scan_all(a, x);
            if self.parent[a as usize] != a {
                continue;
            }
            let b = self.table[a as usize][x];
            if b != NONE {
                self.scan_all(b, INV[x]);
            }
        }
    }

    /// Enumerates cosets of the subgroup generated by `sub`.  Returns the
    /// index, or `None` if the definition limit was hit.
    pub fn enumerate(&mut self, sub: &[Vec<usize>]) -> Option<usize> {
        for h in sub {
            if !self.scan(0, h, true) {
                return None;
            }
            self.process_deductions();
        }
        let mut c = 0usize;
        while c < self.table.len() {
            for x in 0..3 {
                if self.parent[c] != c as u32 {
                    break;
                }
                if self.table[c][x] == NONE {
                    if !self.define(c as u32, x) {
                        return None;
                    }
                    self.process_deductions();
                }
            }
            c += 1;
        }
        Some(self.live().len())
    }

    fn live(&self) -> Vec<usize> {
        (0..self.table.len())
            .filter(|&d| self.parent[d] == d as u32)
            .collect()
    }

    /// Permutation images of `a` and `b` on the live cosets, renumbered
    /// `0..index` with the subgroup coset first.
    pub fn generator_images(&mut self) -> [Vec<u32>; 2] {
        let live = self.live();
        let mut idx = vec![u32::MAX; self.table.len()];
        for (i, &d) in live.iter().enumerate() {
            idx[d] = i as u32;
        }
        let mut out: [Vec<u32>; 2] = Default::default();
        for (col, img) in out.iter_mut().enumerate() {
            *img = live
                .iter()
                .map(|&d| {
                    let t = self.table[d][col];
                    idx[self.rep(t) as usize]
                })
                .collect();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psl27_over_cyclic_subgroups() {
        let rels: Vec<Vec<usize>> = ["aa", "bbb", &"ab".repeat(7), &"aBab".repeat(4)]
            .iter()
            .map(|s| word(s))
            .collect();
        let mut t = CosetTable::new(&rels, 100_000);
        assert_eq!(t.enumerate(&[word("ab")]), Some(24));
        let mut t = CosetTable::new(&rels, 100_000);
        assert_eq!(t.enumerate(&[word("a")]), Some(84));
        let [a, b] = t.generator_images();
        assert_eq!(a.len(), 84);
        assert!(b.iter().all(|&i| (i as usize) < 84));
    }
}
