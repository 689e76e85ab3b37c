//! Minimal deterministic acyclic automaton over Unicode scalar values.
//!
//! Built incrementally from keys in sorted order: after each insertion the
//! part of the previous key's path that can no longer change is minimized
//! against a register of canonical states. Every transition also carries a
//! `skip` count (the number of keys ordered before any key that takes the
//! transition from its source state), so walking a key accumulates its rank
//! in the sorted key set. Ranks index the payload tables of the lexicon.

use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Dafsa {
    /// Transition range of state `s` is `first[s]..first[s + 1]`.
    pub(crate) first: Vec<u32>,
    pub(crate) finals: Vec<bool>,
    pub(crate) labels: Vec<char>,
    pub(crate) targets: Vec<u32>,
    pub(crate) skips: Vec<u32>,
    pub(crate) key_count: u32,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Signature {
    is_final: bool,
    edges: Vec<(char, u32)>,
}

#[derive(Default)]
struct BuildNode {
    is_final: bool,
    edges: Vec<(char, u32)>,
}

pub(crate) struct DafsaBuilder {
    nodes: Vec<BuildNode>,
    free: Vec<u32>,
    register: HashMap<Signature, u32>,
    /// Path of the previous key: (parent, label, child), root first.
    unchecked: Vec<(u32, char, u32)>,
    previous: Vec<char>,
    key_count: u32,
}

#[derive(Debug, PartialEq, Eq)]
pub(crate) struct OutOfOrder;

impl DafsaBuilder {
    pub(crate) fn new() -> Self {
        DafsaBuilder {
            nodes: vec![BuildNode::default()],
            free: Vec::new(),
            register: HashMap::new(),
            unchecked: Vec::new(),
            previous: Vec::new(),
            key_count: 0,
        }
    }

    fn alloc(&mut self) -> u32 {
        match self.free.pop() {
            Some(id) => id,
            None => {
                self.nodes.push(BuildNode::default());
                (self.nodes.len() - 1) as u32
            }
        }
    }

    /// Keys must arrive strictly increasing in code-point order.
    pub(crate) fn insert(&mut self, key: &str) -> Result<(), OutOfOrder> {
        let chars: Vec<char> = key.chars().collect();
        if self.key_count > 0 && chars <= self.previous {
            return Err(OutOfOrder);
        }
        let common = chars.iter().zip(&self.previous).take_while(|(a, b)| a == b).count();
        self.minimize(common);

        let mut node = match self.unchecked.last() {
            Some(&(_, _, child)) => child,
            None => 0,
        };
        for &c in &chars[common..] {
            let child = self.alloc();
            self.nodes[node as usize].edges.push((c, child));
            self.unchecked.push((node, c, child));
            node = child;
        }
        self.nodes[node as usize].is_final = true;
        self.previous = chars;
        self.key_count += 1;
        Ok(())
    }

    fn minimize(&mut self, down_to: usize) {
        while self.unchecked.len() > down_to {
            let (parent, label, child) = self.unchecked.pop().expect("non-empty");
            let node = &self.nodes[child as usize];
            let sig = Signature {
                is_final: node.is_final,
                edges: node.edges.clone(),
            };
            match self.register.get(&sig) {
                Some(&existing) => {
                    let edges = &mut self.nodes[parent as usize].edges;
                    let last = edges.last_mut().expect("parent has the edge");
                    debug_assert_eq!(last.0, label);
                    last.1 = existing;
                    let dead = &mut self.nodes[child as usize];
                    dead.is_final = false;
                    dead.edges.clear();
                    self.free.push(child);
                }
                None => {
                    self.register.insert(sig, child);
                }
            }
        }
    }

    pub(crate) fn finish(mut self) -> Dafsa {
        self.minimize(0);
        let nodes = self.nodes;

        // number states breadth-first from the root
        let mut order: Vec<u32> = vec![0];
        let mut new_id: HashMap<u32, u32> = HashMap::from([(0, 0)]);
        let mut head = 0;
        while head < order.len() {
            let old = order[head];
            head += 1;
            for &(_, target) in &nodes[old as usize].edges {
                if let std::collections::hash_map::Entry::Vacant(e) = new_id.entry(target) {
                    e.insert(order.len() as u32);
                    order.push(target);
                }
            }
        }

        let state_count = order.len();
        let mut first = Vec::with_capacity(state_count + 1);
        let mut finals = Vec::with_capacity(state_count);
        let mut labels = Vec::new();
        let mut targets = Vec::new();
        for &old in &order {
            let node = &nodes[old as usize];
            first.push(labels.len() as u32);
            finals.push(node.is_final);
            for &(c, t) in &node.edges {
                labels.push(c);
                targets.push(new_id[&t]);
            }
        }
        first.push(labels.len() as u32);

        let mut dafsa = Dafsa {
            first,
            finals,
            labels,
            skips: Vec::new(),
            targets,
            key_count: self.key_count,
        };
        dafsa.rebuild_skips();
        dafsa
    }
}

impl Dafsa {
    pub(crate) fn from_sorted<'a>(keys: impl IntoIterator<Item = &'a str>) -> Result<Dafsa, OutOfOrder> {
        let mut b = DafsaBuilder::new();
        for k in keys {
            b.insert(k)?;
        }
        Ok(b.finish())
    }

    pub(crate) fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub(crate) fn transition_count(&self) -> usize {
        self.labels.len()
    }

    fn range(&self, state: u32) -> std::ops::Range<usize> {
        self.first[state as usize] as usize..self.first[state as usize + 1] as usize
    }

    /// Number of keys accepted from each state, then per-transition skips.
    pub(crate) fn rebuild_skips(&mut self) {
        let n = self.state_count();
        let mut counts = vec![0u32; n];
        // post-order without recursion; the graph is acyclic
        let mut done = vec![false; n];
        let mut stack: Vec<(u32, bool)> = vec![(0, false)];
        while let Some((s, expanded)) = stack.pop() {
            if done[s as usize] {
                continue;
            }
            if expanded {
                let mut c = u32::from(self.finals[s as usize]);
                for t in self.range(s) {
                    c += counts[self.targets[t] as usize];
                }
                counts[s as usize] = c;
                done[s as usize] = true;
            } else {
                stack.push((s, true));
                for t in self.range(s) {
                    let target = self.targets[t];
                    if !done[target as usize] {
                        stack.push((target, false));
                    }
                }
            }
        }
        let mut skips = vec![0u32; self.labels.len()];
        for s in 0..n as u32 {
            let mut acc = u32::from(self.finals[s as usize]);
            for t in self.range(s) {
                skips[t] = acc;
                acc += counts[self.targets[t] as usize];
            }
        }
        self.skips = skips;
    }

    #[inline]
    fn step(&self, state: u32, c: char) -> Option<usize> {
        let r = self.range(state);
        let labels = &self.labels[r.clone()];
        if labels.len() <= 8 {
            labels.iter().position(|&l| l == c).map(|i| r.start + i)
        } else {
            labels.binary_search(&c).ok().map(|i| r.start + i)
        }
    }

    /// Rank of `key` in the sorted key set, if present.
    pub(crate) fn index(&self, key: &str) -> Option<u32> {
        let mut state = 0u32;
        let mut rank = 0u32;
        for c in key.chars() {
            let t = self.step(state, c)?;
            rank += self.skips[t];
            state = self.targets[t];
        }
        self.finals[state as usize].then_some(rank)
    }

    /// Key with the given rank.
    pub(crate) fn key(&self, mut rank: u32) -> Option<String> {
        if rank >= self.key_count {
            return None;
        }
        let mut out = String::new();
        let mut state = 0u32;
        loop {
            if self.finals[state as usize] && rank == 0 {
                return Some(out);
            }
            let r = self.range(state);
            let skips = &self.skips[r.clone()];
            let pos = skips.partition_point(|&s| s <= rank);
            if pos == 0 {
                return None;
            }
            let t = r.start + pos - 1;
            rank -= self.skips[t];
            out.push(self.labels[t]);
            state = self.targets[t];
        }
    }

    /// All keys in sorted order.
    pub(crate) fn keys(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.key_count as usize);
        let mut prefix = String::new();
        // (state, next transition offset within the state)
        let mut stack: Vec<(u32, usize)> = vec![(0, 0)];
        if self.finals[0] {
            out.push(String::new());
        }
        while let Some(&mut (state, ref mut next)) = stack.last_mut() {
            let r = self.range(state);
            if r.start + *next < r.end {
                let t = r.start + *next;
                *next += 1;
                prefix.push(self.labels[t]);
                let target = self.targets[t];
                if self.finals[target as usize] {
                    out.push(prefix.clone());
                }
                stack.push((target, 0));
            } else {
                stack.pop();
                if !stack.is_empty() {
                    prefix.pop();
                }
            }
        }
        out
    }

    /// No state has two transitions with the same label.
    pub(crate) fn is_deterministic(&self) -> bool {
        (0..self.state_count() as u32).all(|s| {
            let labels = &self.labels[self.range(s)];
            labels.windows(2).all(|w| w[0] < w[1])
        })
    }

    pub(crate) fn is_acyclic(&self) -> bool {
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut mark = vec![0u8; self.state_count()];
        let mut stack: Vec<(u32, usize)> = vec![(0, 0)];
        mark[0] = 1;
        while let Some(&mut (s, ref mut next)) = stack.last_mut() {
            let r = self.range(s);
            if r.start + *next < r.end {
                let target = self.targets[r.start + *next];
                *next += 1;
                match mark[target as usize] {
                    1 => return false,
                    0 => {
                        mark[target as usize] = 1;
                        stack.push((target, 0));
                    }
                    _ => {}
                }
            } else {
                mark[s as usize] = 2;
                stack.pop();
            }
        }
        true
    }

    /// Pairs of distinct states with identical finality and transitions.
    /// In an acyclic automaton whose states are all reachable this is zero
    /// exactly when the automaton is minimal.
    pub(crate) fn equivalent_state_pairs(&self) -> usize {
        let mut seen: HashMap<(bool, &[char], &[u32]), usize> = HashMap::new();
        for s in 0..self.state_count() as u32 {
            let r = self.range(s);
            *seen
                .entry((self.finals[s as usize], &self.labels[r.clone()], &self.targets[r]))
                .or_default() += 1;
        }
        seen.values().map(|&k| k * (k - 1) / 2).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashSet};

    fn build(keys: &[&str]) -> Dafsa {
        let mut sorted: Vec<&str> = keys.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        Dafsa::from_sorted(sorted).unwrap()
    }

    /// Distinct right languages over all prefixes of the key set: the state
    /// count of the minimal automaton.
    fn minimal_state_count(keys: &BTreeSet<String>) -> usize {
        let mut languages: HashSet<BTreeSet<String>> = HashSet::new();
        let mut prefixes: BTreeSet<String> = BTreeSet::new();
        for k in keys {
            let chars: Vec<char> = k.chars().collect();
            for i in 0..=chars.len() {
                prefixes.insert(chars[..i].iter().collect());
            }
        }
        for p in &prefixes {
            let lang: BTreeSet<String> = keys
                .iter()
                .filter_map(|k| k.strip_prefix(p.as_str()).map(str::to_string))
                .collect();
            languages.insert(lang);
        }
        languages.len()
    }

    #[test]
    fn single_key() {
        let d = build(&["a"]);
        assert_eq!(d.state_count(), 2);
        assert_eq!(d.transition_count(), 1);
        assert_eq!(d.index("a"), Some(0));
        assert_eq!(d.index("b"), None);
        assert_eq!(d.index(""), None);
    }

    #[test]
    fn suffixes_are_shared() {
        // "cantar"/"dançar" share the "ar" tail, final state is shared
        let d = build(&["cantar", "dançar", "falar"]);
        let keys: BTreeSet<String> = ["cantar", "dançar", "falar"].iter().map(|s| s.to_string()).collect();
        assert_eq!(d.state_count(), minimal_state_count(&keys));
        assert_eq!(d.equivalent_state_pairs(), 0);
    }

    #[test]
    fn ranks_follow_sorted_order() {
        let keys = ["a", "ab", "abc", "b", "ba", "ção", "é"];
        let d = build(&keys);
        for (i, k) in keys.iter().enumerate() {
            assert_eq!(d.index(k), Some(i as u32), "{k}");
            assert_eq!(d.key(i as u32).as_deref(), Some(*k));
        }
        assert_eq!(d.key(keys.len() as u32), None);
        assert_eq!(d.keys(), keys);
    }

    #[test]
    fn rejects_unsorted_input() {
        let mut b = DafsaBuilder::new();
        b.insert("b").unwrap();
        assert_eq!(b.insert("a"), Err(OutOfOrder));
        assert_eq!(b.insert("b"), Err(OutOfOrder));
    }

    #[test]
    fn empty_key_set() {
        let d = Dafsa::from_sorted(std::iter::empty()).unwrap();
        assert_eq!(d.state_count(), 1);
        assert_eq!(d.index("x"), None);
        assert!(d.keys().is_empty());
    }

    #[test]
    fn matches_brute_force_minimal_automaton() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let alphabet = ['a', 'b', 'c', 'á', 'ç', 's'];
        for round in 0..40 {
            let n = if round % 4 == 0 { 1000 } else { rng.gen_range(1..100) };
            let mut keys = BTreeSet::new();
            while keys.len() < n {
                let len = rng.gen_range(1..9);
                let k: String = (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect();
                keys.insert(k);
            }
            let d = Dafsa::from_sorted(keys.iter().map(String::as_str)).unwrap();
            assert!(d.is_deterministic());
            assert!(d.is_acyclic());
            assert_eq!(d.equivalent_state_pairs(), 0);
            assert_eq!(d.state_count(), minimal_state_count(&keys), "round {round}");
            for (i, k) in keys.iter().enumerate() {
                assert_eq!(d.index(k), Some(i as u32));
            }
        }
    }
}
