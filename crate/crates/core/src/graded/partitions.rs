use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// An unshuffle: a strictly increasing list of slot indices (0-based).
pub type Unshuffle = Vec<usize>;

/// The index-partition families that drive the coproduct, coderivation,
/// cohomomorphism and bracket sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartitionSchema {
    /// `I u J = {0..len}` with `I` nonempty. Yields `[I, J]`.
    TwoPart { len: usize },
    /// `I u J u K = {0..len}`, `K` nonempty, every element of `I` and `J`
    /// below `min K`, optionally `|J| = j_len`. Yields `[I, J, K]`.
    ThreePart { len: usize, j_len: Option<usize> },
    /// Ordered partitions into nonempty blocks whose maxima increase,
    /// optionally with a fixed number of blocks.
    Blocks { len: usize, blocks: Option<usize> },
}

fn subsets(items: &[usize]) -> Vec<(Unshuffle, Unshuffle)> {
    let n = items.len();
    (0u64..(1u64 << n))
        .map(|mask| {
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (bit, &x) in items.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    a.push(x);
                } else {
                    b.push(x);
                }
            }
            (a, b)
        })
        .collect()
}

fn set_partitions(len: usize) -> Vec<Vec<Unshuffle>> {
    let mut out = Vec::new();
    let mut blocks: Vec<Unshuffle> = Vec::new();
    fn rec(k: usize, len: usize, blocks: &mut Vec<Unshuffle>, out: &mut Vec<Vec<Unshuffle>>) {
        if k == len {
            let mut b = blocks.clone();
            b.sort_by_key(|blk| *blk.last().unwrap());
            out.push(b);
            return;
        }
        for i in 0..blocks.len() {
            blocks[i].push(k);
            rec(k + 1, len, blocks, out);
            blocks[i].pop();
        }
        blocks.push(vec![k]);
        rec(k + 1, len, blocks, out);
        blocks.pop();
    }
    rec(0, len, &mut blocks, &mut out);
    out
}

fn compute(schema: PartitionSchema) -> Vec<Vec<Unshuffle>> {
    match schema {
        PartitionSchema::TwoPart { len } => {
            let items: Vec<usize> = (0..len).collect();
            subsets(&items)
                .into_iter()
                .filter(|(i, _)| !i.is_empty())
                .map(|(i, j)| vec![i, j])
                .collect()
        }
        PartitionSchema::ThreePart { len, j_len } => {
            let mut out = Vec::new();
            for k1 in 0..len {
                let head: Vec<usize> = (0..k1).collect();
                let k: Vec<usize> = (k1..len).collect();
                for (i, j) in subsets(&head) {
                    if j_len.is_some_and(|b| b != j.len()) {
                        continue;
                    }
                    out.push(vec![i, j, k.clone()]);
                }
            }
            out
        }
        PartitionSchema::Blocks { len, blocks } => set_partitions(len)
            .into_iter()
            .filter(|p| blocks.is_none_or(|s| s == p.len()))
            .collect(),
    }
}

/// Every admissible tuple of disjoint unshuffles for `schema`, each exactly
/// once. Results are memoized.
pub fn enumerate_partitions(schema: PartitionSchema) -> Arc<Vec<Vec<Unshuffle>>> {
    static CACHE: OnceLock<Mutex<HashMap<PartitionSchema, Arc<Vec<Vec<Unshuffle>>>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&schema) {
        return hit.clone();
    }
    let value = Arc::new(compute(schema));
    cache.lock().unwrap().insert(schema, value.clone());
    value
}
