use std::cell::RefCell;
use std::collections::{HashMap, VecDeque};

use crate::poly::IntPoly;
use crate::tree::Tree;

/// Pair `(phi(T_v), phi(T_v - v))` for a rooted subtree `T_v`.
type RootedPolys = (IntPoly, IntPoly);

/// Bounded memo of rooted-subtree characteristic polynomials keyed by the
/// subtree's canonical rooted level sequence. Eviction is first-in first-out,
/// so the cache contents depend only on the sequence of queries.
#[derive(Debug)]
pub struct CharPolyCache {
    map: HashMap<Vec<usize>, RootedPolys>,
    queue: VecDeque<Vec<usize>>,
    capacity: usize,
    hits: u64,
    misses: u64,
}

impl CharPolyCache {
    pub const DEFAULT_CAPACITY: usize = 1 << 15;

    pub fn new(capacity: usize) -> Self {
        CharPolyCache {
            map: HashMap::new(),
            queue: VecDeque::new(),
            capacity,
            hits: 0,
            misses: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn misses(&self) -> u64 {
        self.misses
    }

    fn insert(&mut self, key: Vec<usize>, value: RootedPolys) {
        if self.capacity == 0 {
            return;
        }
        while self.map.len() >= self.capacity {
            match self.queue.pop_front() {
                Some(old) => {
                    self.map.remove(&old);
                }
                None => break,
            }
        }
        self.queue.push_back(key.clone());
        self.map.insert(key, value);
    }

    /// Characteristic polynomial of the adjacency matrix of `tree`.
    ///
    /// Rooted at a centre, each vertex `v` with children `c` satisfies
    /// `phi(T_v - v) = prod phi(T_c)` and
    /// `phi(T_v) = x * prod phi(T_c) - sum_c phi(T_c - c) prod_{c' != c} phi(T_c')`,
    /// which is the pendant-edge expansion `phi(G) = x phi(G - v) - phi(G - u - v)`
    /// applied across every edge to a child.
    pub fn char_poly(&mut self, tree: &Tree) -> IntPoly {
        let root = crate::tree::centers(tree)[0];
        let (parent, bfs) = tree.rooted(root);
        let n = tree.order();
        let mut codes: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut polys: Vec<Option<RootedPolys>> = vec![None; n];
        let x = IntPoly::x();
        for &v in bfs.iter().rev() {
            let mut kids: Vec<usize> = tree
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| w != parent[v])
                .collect();
            kids.sort_by(|&a, &b| codes[b].cmp(&codes[a]));
            let mut code = vec![0];
            for &k in &kids {
                code.extend(codes[k].iter().map(|l| l + 1));
            }
            let value = if let Some(hit) = self.map.get(&code) {
                self.hits += 1;
                hit.clone()
            } else {
                self.misses += 1;
                let mut prod = IntPoly::one();
                let mut mixed = IntPoly::zero();
                for &k in &kids {
                    let (with_root, without_root) =
                        polys[k].as_ref().expect("children are processed first");
                    mixed = &(&mixed * with_root) + &(&prod * without_root);
                    prod = &prod * with_root;
                }
                let value = (&(&x * &prod) - &mixed, prod);
                self.insert(code.clone(), value.clone());
                value
            };
            for &k in &kids {
                codes[k] = Vec::new();
                polys[k] = None;
            }
            codes[v] = code;
            polys[v] = Some(value);
        }
        polys[root].take().expect("root processed").0
    }
}

impl Default for CharPolyCache {
    fn default() -> Self {
        Self::new(Self::DEFAULT_CAPACITY)
    }
}

thread_local! {
    static CACHE: RefCell<CharPolyCache> = RefCell::new(CharPolyCache::default());
}

/// Characteristic polynomial using this thread's cache. Each worker thread
/// owns its own cache, so results never depend on scheduling.
pub fn char_poly(tree: &Tree) -> IntPoly {
    CACHE.with(|c| c.borrow_mut().char_poly(tree))
}

/// Characteristic polynomial of a forest (product over components; the empty
/// forest gives 1).
pub fn forest_char_poly<'a, I: IntoIterator<Item = &'a Tree>>(components: I) -> IntPoly {
    components.into_iter().map(char_poly).product()
}

/// `phi(T - v)`
pub fn char_poly_without(tree: &Tree, v: usize) -> IntPoly {
    let comps = tree.components_without(&[v]);
    forest_char_poly(comps.iter().map(|(t, _)| t))
}
