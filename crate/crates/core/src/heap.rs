//! A meldable min-heap (two-pass pairing heap).
//!
//! Insert and meld are O(1); extract-min is O(log n) amortized. Every key
//! comparison is counted so callers can check the amortized bound directly.

use std::mem;

#[derive(Debug, Clone)]
struct Node<K> {
    key: K,
    /// Most recently attached child last.
    children: Vec<Node<K>>,
}

#[derive(Debug, Clone)]
pub struct PairingHeap<K> {
    root: Option<Node<K>>,
    len: usize,
    comparisons: u64,
}

impl<K> Default for PairingHeap<K> {
    fn default() -> Self {
        Self { root: None, len: 0, comparisons: 0 }
    }
}

impl<K: Ord> PairingHeap<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Key comparisons performed by this heap and everything melded into it.
    pub fn comparisons(&self) -> u64 {
        self.comparisons
    }

    pub fn find_min(&self) -> Option<&K> {
        self.root.as_ref().map(|n| &n.key)
    }

    pub fn insert(&mut self, key: K) {
        let node = Node { key, children: Vec::new() };
        self.root = Some(match self.root.take() {
            None => node,
            Some(root) => self.link(root, node),
        });
        self.len += 1;
    }

    pub fn extract_min(&mut self) -> Option<K> {
        let mut root = self.root.take()?;
        let children = mem::take(&mut root.children);
        self.root = self.combine(children);
        self.len -= 1;
        Some(root.key)
    }

    /// Moves every key of `other` into `self`.
    pub fn meld(&mut self, mut other: Self) {
        self.comparisons += other.comparisons;
        self.len += other.len;
        let theirs = other.root.take();
        self.root = match (self.root.take(), theirs) {
            (None, r) | (r, None) => r,
            (Some(a), Some(b)) => Some(self.link(a, b)),
        };
    }

    /// Removes all keys in ascending order.
    pub fn drain_sorted(&mut self) -> Vec<K> {
        let mut out = Vec::with_capacity(self.len);
        while let Some(k) = self.extract_min() {
            out.push(k);
        }
        out
    }

    fn link(&mut self, mut a: Node<K>, mut b: Node<K>) -> Node<K> {
        self.comparisons += 1;
        if b.key < a.key {
            mem::swap(&mut a, &mut b);
        }
        a.children.push(b);
        a
    }

    /// Two-pass pairing: link neighbours newest-first, then fold the
    /// resulting trees from the oldest back.
    fn combine(&mut self, mut children: Vec<Node<K>>) -> Option<Node<K>> {
        let mut paired = Vec::with_capacity(children.len().div_ceil(2));
        while let Some(a) = children.pop() {
            match children.pop() {
                Some(b) => paired.push(self.link(a, b)),
                None => paired.push(a),
            }
        }
        let mut acc = paired.pop()?;
        while let Some(t) = paired.pop() {
            acc = self.link(t, acc);
        }
        Some(acc)
    }
}

impl<K> Drop for PairingHeap<K> {
    // Iterative teardown; the recursive default could overflow the stack
    // on degenerate (path-shaped) trees.
    fn drop(&mut self) {
        let mut stack: Vec<Node<K>> = self.root.take().into_iter().collect();
        while let Some(mut node) = stack.pop() {
            stack.append(&mut node.children);
        }
    }
}

impl<K: Ord> FromIterator<K> for PairingHeap<K> {
    fn from_iter<I: IntoIterator<Item = K>>(iter: I) -> Self {
        let mut heap = Self::new();
        for k in iter {
            heap.insert(k);
        }
        heap
    }
}
