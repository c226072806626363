//! Brute-force enumeration of legal game play-outs (gamma sequences) and the
//! bijection between play-outs and restricted set partitions.
//!
//! Sequences are pool-order normalized: wrapped gifts leave the pool in label
//! order 1, 2, ..., so the n! pool-order factor is recovered separately via
//! H_sigma(n) = n! * G_sigma(n-1). Enumeration is depth-first; at each action
//! the pool take comes first, then steals by ascending gift label, which
//! reproduces the order the worked example is listed in.

use crate::tables::StealLimit;
use std::collections::BTreeMap;
use thiserror::Error;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScenarioError {
    #[error("gamma sequence violates scenario invariants: {0}")]
    InvalidSequence(String),
    #[error("partition is not a valid restricted set partition: {0}")]
    InvalidPartition(String),
    #[error("block of size {size} exceeds limit sigma + 1 = {cap}")]
    BlockTooLarge { size: usize, cap: usize },
    #[error("enumeration exceeded budget of {0} sequences")]
    BudgetExceeded(u64),
}

/// One complete play-out: the sequence of gift labels chosen at each action.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ScenarioSequence {
    gifts: u32,
    gammas: Vec<u32>,
}

impl ScenarioSequence {
    /// Validates the gamma-sequence invariants: starts with 1, ends with the
    /// unique `gifts` label, every smaller label appears at least once, and
    /// each first occurrence follows the first occurrence of its predecessor.
    /// The per-label cap (sigma + 1) is checked when a limit is supplied.
    pub fn new(gifts: u32, gammas: Vec<u32>, sigma: Option<StealLimit>) -> Result<Self, ScenarioError> {
        let err = |m: String| Err(ScenarioError::InvalidSequence(m));
        if gifts == 0 {
            return err("gifts must be >= 1".into());
        }
        if gammas.first() != Some(&1) {
            return err("sequence must begin with gift 1".into());
        }
        if gammas.last() != Some(&gifts) {
            return err(format!("sequence must end with gift {gifts}"));
        }
        let mut counts = vec![0u32; gifts as usize + 1];
        let mut first_seen = 0u32;
        for &g in &gammas {
            if g == 0 || g > gifts {
                return err(format!("label {g} out of range 1..={gifts}"));
            }
            if counts[g as usize] == 0 {
                if g != first_seen + 1 {
                    return err(format!("first occurrence of {g} before first occurrence of {}", g - 1));
                }
                first_seen = g;
            }
            counts[g as usize] += 1;
        }
        if first_seen != gifts {
            return err("every label must appear".into());
        }
        if counts[gifts as usize] != 1 {
            return err(format!("gift {gifts} must appear exactly once"));
        }
        if let Some(limit) = sigma {
            let cap = limit.block_cap() as u32;
            for (g, &c) in counts.iter().enumerate().skip(1) {
                if g != gifts as usize && c > cap {
                    return err(format!("gift {g} chosen {c} times, limit is {cap}"));
                }
            }
        }
        Ok(ScenarioSequence { gifts, gammas })
    }

    pub fn gifts(&self) -> u32 {
        self.gifts
    }

    pub fn gammas(&self) -> &[u32] {
        &self.gammas
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    /// Digit string for gifts <= 9 (e.g. "12213"), comma-separated otherwise.
    pub fn to_compact_string(&self) -> String {
        if self.gifts <= 9 {
            self.gammas.iter().map(|g| g.to_string()).collect()
        } else {
            let parts: Vec<String> = self.gammas.iter().map(|g| g.to_string()).collect();
            parts.join(",")
        }
    }
}

/// A partition of {1..ground_size} into disjoint nonempty blocks, kept sorted
/// by minimum element (which is exactly first-occurrence order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetPartition {
    ground_size: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(ground_size: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self, ScenarioError> {
        let err = |m: String| Err(ScenarioError::InvalidPartition(m));
        let mut seen = vec![false; ground_size + 1];
        for block in &mut blocks {
            if block.is_empty() {
                return err("empty block".into());
            }
            block.sort_unstable();
            for &x in block.iter() {
                if x == 0 || x > ground_size {
                    return err(format!("element {x} outside 1..={ground_size}"));
                }
                if seen[x] {
                    return err(format!("element {x} appears in two blocks"));
                }
                seen[x] = true;
            }
        }
        if let Some(missing) = (1..=ground_size).find(|&x| !seen[x]) {
            return err(format!("element {missing} not covered"));
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(SetPartition { ground_size, blocks })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Paper-style rendering: blocks as concatenated digits when the ground
    /// set fits in one digit per element, e.g. "13, 2".
    pub fn to_compact_string(&self) -> String {
        let render = |b: &Vec<usize>| -> String {
            if self.ground_size <= 9 {
                b.iter().map(|x| x.to_string()).collect()
            } else {
                let v: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                format!("{{{}}}", v.join(" "))
            }
        };
        let parts: Vec<String> = self.blocks.iter().map(render).collect();
        parts.join(", ")
    }
}

/// Every legal pool-order-normalized play-out for `gifts` gifts under the
/// steal limit, in depth-first order (pool take first, then steals by
/// ascending label). Length of the result equals G_sigma(gifts - 1).
pub fn enumerate_scenarios(
    sigma: StealLimit,
    gifts: u32,
    budget: u64,
) -> Result<Vec<ScenarioSequence>, ScenarioError> {
    let mut out = Vec::new();
    let cap = sigma.block_cap() as u32;
    let mut gammas: Vec<u32> = Vec::new();
    let mut counts = vec![0u32; gifts as usize + 1];
    dfs(gifts, cap, budget, &mut gammas, &mut counts, 1, &mut |seq| {
        out.push(ScenarioSequence { gifts, gammas: seq.to_vec() });
    })?;
    Ok(out)
}

/// Scenario count without materializing sequences.
pub fn count_scenarios(sigma: StealLimit, gifts: u32, budget: u64) -> Result<u64, ScenarioError> {
    let mut count = 0u64;
    let cap = sigma.block_cap() as u32;
    let mut gammas: Vec<u32> = Vec::new();
    let mut counts = vec![0u32; gifts as usize + 1];
    dfs(gifts, cap, budget, &mut gammas, &mut counts, 1, &mut |_| count += 1)?;
    Ok(count)
}

/// Histogram of play-out lengths; the count at length k+1 equals
/// E_sigma(gifts-1, k) and the total equals G_sigma(gifts-1).
pub fn count_by_length(
    sigma: StealLimit,
    gifts: u32,
    budget: u64,
) -> Result<BTreeMap<usize, u64>, ScenarioError> {
    let mut hist = BTreeMap::new();
    let cap = sigma.block_cap() as u32;
    let mut gammas: Vec<u32> = Vec::new();
    let mut counts = vec![0u32; gifts as usize + 1];
    dfs(gifts, cap, budget, &mut gammas, &mut counts, 1, &mut |seq| {
        *hist.entry(seq.len()).or_insert(0) += 1;
    })?;
    Ok(hist)
}

fn dfs(
    gifts: u32,
    cap: u32,
    budget: u64,
    gammas: &mut Vec<u32>,
    counts: &mut [u32],
    next_pool: u32,
    emit: &mut impl FnMut(&[u32]),
) -> Result<u64, ScenarioError> {
    let mut emitted = 0u64;
    // take the next wrapped gift from the pool
    if next_pool <= gifts {
        gammas.push(next_pool);
        counts[next_pool as usize] += 1;
        if next_pool == gifts {
            emit(gammas);
            emitted += 1;
        } else {
            emitted += dfs(gifts, cap, budget, gammas, counts, next_pool + 1, emit)?;
        }
        counts[next_pool as usize] -= 1;
        gammas.pop();
        if emitted > budget {
            return Err(ScenarioError::BudgetExceeded(budget));
        }
    }
    // steal an already-unwrapped gift that has been chosen fewer than cap times
    for x in 1..next_pool.min(gifts) {
        if counts[x as usize] < cap {
            gammas.push(x);
            counts[x as usize] += 1;
            emitted += dfs(gifts, cap, budget, gammas, counts, next_pool, emit)?;
            counts[x as usize] -= 1;
            gammas.pop();
            if emitted > budget {
                return Err(ScenarioError::BudgetExceeded(budget));
            }
        }
    }
    Ok(emitted)
}

/// Drops the final element (the unique `gifts` label); block i records the
/// positions of label i in the shortened sequence.
pub fn scenario_to_partition(s: &ScenarioSequence) -> SetPartition {
    let k = s.gammas.len() - 1;
    let n = s.gifts as usize - 1;
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (pos, &g) in s.gammas[..k].iter().enumerate() {
        blocks[g as usize - 1].push(pos + 1);
    }
    SetPartition { ground_size: k, blocks }
}

/// Inverse of [`scenario_to_partition`]: blocks sorted by minimum element
/// get labels 1..n, and the final label n+1 is appended. Errors when a block
/// exceeds sigma + 1 elements.
pub fn partition_to_scenario(p: &SetPartition, sigma: StealLimit) -> Result<ScenarioSequence, ScenarioError> {
    let cap = sigma.block_cap();
    for block in &p.blocks {
        if block.len() > cap {
            return Err(ScenarioError::BlockTooLarge { size: block.len(), cap });
        }
    }
    let n = p.blocks.len();
    let gifts = n as u32 + 1;
    let mut gammas = vec![0u32; p.ground_size];
    for (label, block) in p.blocks.iter().enumerate() {
        for &pos in block {
            gammas[pos - 1] = label as u32 + 1;
        }
    }
    gammas.push(gifts);
    ScenarioSequence::new(gifts, gammas, Some(sigma))
}
