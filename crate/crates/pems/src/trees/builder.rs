//! Greedy split search shared by CART and the boosted ensemble.
//!
//! Feature columns are sorted once per fit; each node keeps per-feature
//! index lists in sorted order and splits them by stable partition, so no
//! re-sorting happens below the root. Split gain is the squared-error
//! reduction with an optional L2 leaf penalty `lambda`:
//! `G_L²/(n_L+λ) + G_R²/(n_R+λ) − G²/(n+λ)`; leaf values are `G/(n+λ)`.
//! With `λ = 0` this is exactly variance-reduction splitting with mean
//! leaves.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::Matrix;

use super::{MaxFeatures, Node, RegressionTree, TreeConfig};

pub(super) struct TreeBuilder<'a> {
    x: &'a Matrix,
    y: &'a [f64],
    cfg: &'a TreeConfig,
    lambda: f64,
    rng: ChaCha8Rng,
}

struct WorkItem {
    /// index into the node arena to fill in
    slot: usize,
    depth: usize,
    /// per-feature index lists, each sorted by that feature's value
    lists: Vec<Vec<u32>>,
    sum: f64,
}

impl<'a> TreeBuilder<'a> {
    pub(super) fn new(x: &'a Matrix, y: &'a [f64], cfg: &'a TreeConfig, lambda: f64) -> Self {
        TreeBuilder {
            x,
            y,
            cfg,
            lambda,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        }
    }

    pub(super) fn build(mut self) -> RegressionTree {
        let n = self.x.rows();
        let d = self.x.cols();

        let root_lists: Vec<Vec<u32>> = (0..d)
            .map(|j| {
                let mut idx: Vec<u32> = (0..n as u32).collect();
                idx.sort_unstable_by(|&a, &b| {
                    self.x
                        .get(a as usize, j)
                        .total_cmp(&self.x.get(b as usize, j))
                });
                idx
            })
            .collect();
        let root_sum: f64 = self.y.iter().sum();

        let mut nodes = vec![Node::Leaf {
            value: 0.0,
            n_samples: 0,
        }];
        let mut max_depth_seen = 0usize;
        let mut stack = vec![WorkItem {
            slot: 0,
            depth: 0,
            lists: root_lists,
            sum: root_sum,
        }];

        while let Some(item) = stack.pop() {
            max_depth_seen = max_depth_seen.max(item.depth);
            let count = item.lists[0].len();
            if let Some(split) = self.find_split(&item, count) {
                let (left_lists, right_lists, left_sum) =
                    partition(self.x, &item.lists, split.feature, split.threshold);
                let left_slot = nodes.len();
                nodes.push(Node::Leaf { value: 0.0, n_samples: 0 });
                let right_slot = nodes.len();
                nodes.push(Node::Leaf { value: 0.0, n_samples: 0 });
                nodes[item.slot] = Node::Internal {
                    feature: split.feature,
                    threshold: split.threshold,
                    left: left_slot,
                    right: right_slot,
                };
                stack.push(WorkItem {
                    slot: right_slot,
                    depth: item.depth + 1,
                    lists: right_lists,
                    sum: item.sum - left_sum,
                });
                stack.push(WorkItem {
                    slot: left_slot,
                    depth: item.depth + 1,
                    lists: left_lists,
                    sum: left_sum,
                });
            } else {
                nodes[item.slot] = Node::Leaf {
                    value: item.sum / (count as f64 + self.lambda),
                    n_samples: count,
                };
            }
        }

        RegressionTree {
            nodes,
            depth: max_depth_seen,
            n_features: d,
        }
    }

    fn find_split(&mut self, item: &WorkItem, count: usize) -> Option<SplitChoice> {
        if count < self.cfg.min_samples_split || count < 2 * self.cfg.min_samples_leaf {
            return None;
        }
        if let Some(limit) = self.cfg.max_depth {
            if item.depth >= limit {
                return None;
            }
        }
        // pure node: all targets equal
        let first = self.y[item.lists[0][0] as usize];
        if item.lists[0].iter().all(|&i| self.y[i as usize] == first) {
            return None;
        }

        let d = self.x.cols();
        let candidate_features: Vec<usize> = match self.cfg.max_features {
            MaxFeatures::All => (0..d).collect(),
            MaxFeatures::Sqrt => {
                let take = (d as f64).sqrt().ceil() as usize;
                let mut all: Vec<usize> = (0..d).collect();
                all.shuffle(&mut self.rng);
                let mut subset = all[..take.min(d)].to_vec();
                subset.sort_unstable();
                subset
            }
        };

        let n_total = count as f64;
        let total_sum = item.sum;
        let parent_score = total_sum * total_sum / (n_total + self.lambda);
        let msl = self.cfg.min_samples_leaf;

        let mut best: Option<SplitChoice> = None;
        for &j in &candidate_features {
            let list = &item.lists[j];
            let mut left_sum = 0.0;
            for k in 0..count - 1 {
                let i = list[k] as usize;
                left_sum += self.y[i];
                let v = self.x.get(i, j);
                let v_next = self.x.get(list[k + 1] as usize, j);
                if v == v_next {
                    continue;
                }
                let n_left = k + 1;
                let n_right = count - n_left;
                if n_left < msl || n_right < msl {
                    continue;
                }
                let right_sum = total_sum - left_sum;
                let gain = left_sum * left_sum / (n_left as f64 + self.lambda)
                    + right_sum * right_sum / (n_right as f64 + self.lambda)
                    - parent_score;
                // strict improvement required; first hit wins ties, and
                // features/thresholds are visited in ascending order
                if gain > 0.0 && best.as_ref().map_or(true, |b| gain > b.gain) {
                    best = Some(SplitChoice {
                        feature: j,
                        threshold: 0.5 * (v + v_next),
                        gain,
                    });
                }
            }
        }
        best
    }
}

struct SplitChoice {
    feature: usize,
    threshold: f64,
    gain: f64,
}

/// Stable partition of every per-feature sorted list by the chosen split.
fn partition(
    x: &Matrix,
    lists: &[Vec<u32>],
    feature: usize,
    threshold: f64,
) -> (Vec<Vec<u32>>, Vec<Vec<u32>>, f64) {
    let goes_left = |i: u32| x.get(i as usize, feature) <= threshold;
    let mut left = Vec::with_capacity(lists.len());
    let mut right = Vec::with_capacity(lists.len());
    for list in lists {
        let mut l = Vec::new();
        let mut r = Vec::new();
        for &i in list {
            if goes_left(i) {
                l.push(i);
            } else {
                r.push(i);
            }
        }
        left.push(l);
        right.push(r);
    }
    (left, right, 0.0)
}

pub(super) fn partition_left_sum(y: &[f64], left_list: &[u32]) -> f64 {
    left_list.iter().map(|&i| y[i as usize]).sum()
}
