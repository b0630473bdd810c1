//! Smallest equivalence relation containing a set of generating pairs,
//! computed with disjoint-set union.

use std::collections::BTreeMap;

#[derive(thiserror::Error, Clone, PartialEq, Eq, Debug)]
#[error("generating pair mentions an item that is not in the carrier set")]
pub struct UnknownItem;

/// A partition of a finite carrier set. Classes are sorted by their
/// representative (the least member); members within a class are sorted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition<K> {
    classes: Vec<Vec<K>>,
    class_of: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Partition<K> {
    pub fn classes(&self) -> &[Vec<K>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_index_of(&self, item: &K) -> Option<usize> {
        self.class_of.get(item).copied()
    }

    pub fn representative(&self, item: &K) -> Option<&K> {
        self.class_index_of(item).map(|i| &self.classes[i][0])
    }

    pub fn same_class(&self, a: &K, b: &K) -> bool {
        match (self.class_of.get(a), self.class_of.get(b)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }
}

/// The finest partition of `items` merging every generating pair.
pub fn equivalence_closure<K: Ord + Clone>(
    items: &[K],
    pairs: &[(K, K)],
) -> Result<Partition<K>, UnknownItem> {
    let mut sorted: Vec<K> = items.to_vec();
    sorted.sort();
    sorted.dedup();
    let index: BTreeMap<&K, usize> = sorted.iter().enumerate().map(|(i, k)| (k, i)).collect();

    let mut parent: Vec<usize> = (0..sorted.len()).collect();
    let mut size: Vec<usize> = vec![1; sorted.len()];

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]]; // path halving
            x = parent[x];
        }
        x
    }

    for (a, b) in pairs {
        let (Some(&ia), Some(&ib)) = (index.get(a), index.get(b)) else {
            return Err(UnknownItem);
        };
        let (ra, rb) = (find(&mut parent, ia), find(&mut parent, ib));
        if ra != rb {
            let (big, small) = if size[ra] >= size[rb] { (ra, rb) } else { (rb, ra) };
            parent[small] = big;
            size[big] += size[small];
        }
    }

    let mut grouped: BTreeMap<usize, Vec<K>> = BTreeMap::new();
    for (i, item) in sorted.iter().enumerate() {
        let root = find(&mut parent, i);
        grouped.entry(root).or_default().push(item.clone());
    }
    let mut classes: Vec<Vec<K>> = grouped.into_values().collect();
    for class in &mut classes {
        class.sort();
    }
    classes.sort();
    let class_of = classes
        .iter()
        .enumerate()
        .flat_map(|(i, class)| class.iter().map(move |k| (k.clone(), i)))
        .collect();
    Ok(Partition { classes, class_of })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn no_pairs_gives_discrete_partition() {
        let items = vec!["a", "b", "c"];
        let p = equivalence_closure(&items, &[]).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.classes().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn transitivity() {
        let items = vec!["a", "b", "c", "d"];
        let p = equivalence_closure(&items, &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.classes()[0], vec!["a", "b", "c"]);
        assert_eq!(p.classes()[1], vec!["d"]);
        assert_eq!(p.representative(&"c"), Some(&"a"));
    }

    #[test]
    fn unknown_item_rejected() {
        let items = vec!["a"];
        assert!(equivalence_closure(&items, &[("a", "z")]).is_err());
    }

    /// Naive oracle: iterate symmetric-transitive closure to a fixed point
    /// over explicit relation sets. Algorithmically unrelated to union-find.
    fn naive_closure<K: Ord + Clone>(items: &[K], pairs: &[(K, K)]) -> Vec<Vec<K>> {
        let mut related: BTreeSet<(K, K)> = items
            .iter()
            .map(|k| (k.clone(), k.clone()))
            .chain(pairs.iter().cloned())
            .chain(pairs.iter().map(|(a, b)| (b.clone(), a.clone())))
            .collect();
        loop {
            let mut grew = false;
            let snapshot: Vec<(K, K)> = related.iter().cloned().collect();
            for (a, b) in &snapshot {
                for (c, d) in &snapshot {
                    if b == c && related.insert((a.clone(), d.clone())) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut seen: BTreeSet<K> = BTreeSet::new();
        let mut classes = Vec::new();
        for item in items {
            if seen.contains(item) {
                continue;
            }
            let class: Vec<K> = items
                .iter()
                .filter(|other| related.contains(&(item.clone(), (*other).clone())))
                .cloned()
                .collect();
            seen.extend(class.iter().cloned());
            classes.push(class);
        }
        classes.sort();
        classes
    }

    #[test]
    fn matches_naive_fixed_point_closure() {
        // 50 items, 40 deterministic pseudo-random pairs.
        let items: Vec<u32> = (0..50).collect();
        let mut state = 0x2545f491u64;
        let mut pairs = Vec::new();
        for _ in 0..40 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = ((state >> 33) % 50) as u32;
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let b = ((state >> 33) % 50) as u32;
            pairs.push((a, b));
        }
        let fast = equivalence_closure(&items, &pairs).unwrap();
        let slow = naive_closure(&items, &pairs);
        assert_eq!(fast.classes(), slow.as_slice());
    }
}
