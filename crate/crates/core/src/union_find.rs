/// Disjoint sets over `0..n` whose roots are always the least member, so the
/// root of a class doubles as its canonical representative.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n as u32).collect() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut y = x;
        while self.parent[y] as usize != root {
            let next = self.parent[y] as usize;
            self.parent[y] = root as u32;
            y = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.parent[rb] = ra as u32;
        } else if rb < ra {
            self.parent[ra] = rb as u32;
        }
    }

    /// Numbers the classes in order of their least member. Returns the class
    /// of every element and the least member of every class.
    pub fn classes(&mut self) -> (Vec<usize>, Vec<usize>) {
        let n = self.len();
        let mut class_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            if r == x {
                class_of[x] = reps.len();
                reps.push(x);
            } else {
                class_of[x] = class_of[r];
            }
        }
        (class_of, reps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_are_minima() {
        let mut uf = UnionFind::new(6);
        uf.union(5, 3);
        uf.union(3, 4);
        uf.union(1, 2);
        let (class_of, reps) = uf.classes();
        assert_eq!(reps, vec![0, 1, 3]);
        assert_eq!(class_of, vec![0, 1, 1, 2, 2, 2]);
    }
}
