//! Immunization groups, acceptance policies and greedy selection.

mod greedy;
mod io;

pub use greedy::{greedy, prefix_greedy, Evaluator, MonteCarloEvaluator, PrefixMode, Scores, Selection, SelectionStep};
pub use io::{load_groups, parse_groups, save_groups, write_groups};

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{NodeId, ProbGraph};
use crate::rng::{self, Domain};

pub type GroupId = usize;

/// How the members of a chosen group end up accepting the vaccine. Every
/// policy is realizable without looking at the epidemic.
#[derive(Debug, Clone, PartialEq)]
pub enum Policy {
    /// Every member is immunized.
    Deterministic,
    /// Member `i` accepts independently with probability `q[i]`.
    Independent { q: Vec<f64> },
    /// Members are successive time copies of one node: the first accepts,
    /// and each later copy stays protected with probability `1 - eps` given
    /// the previous one is.
    LeakyChain { eps: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Group {
    id: GroupId,
    members: Vec<NodeId>,
    policy: Policy,
}

impl Group {
    pub fn new(id: GroupId, members: Vec<NodeId>, policy: Policy) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::config(format!("group {id} has no members")));
        }
        match &policy {
            Policy::Deterministic => {}
            Policy::Independent { q } => {
                if q.len() != members.len() {
                    return Err(Error::config(format!(
                        "group {id}: {} acceptance probabilities for {} members",
                        q.len(),
                        members.len()
                    )));
                }
                if let Some(&x) = q.iter().find(|x| !(0.0..=1.0).contains(*x)) {
                    return Err(Error::InvalidProbability { value: x, context: format!("acceptance in group {id}") });
                }
            }
            Policy::LeakyChain { eps } => {
                if !(0.0..=1.0).contains(eps) {
                    return Err(Error::InvalidProbability { value: *eps, context: format!("leak rate of group {id}") });
                }
            }
        }
        Ok(Group { id, members, policy })
    }

    pub fn singleton(u: NodeId) -> Self {
        Group { id: u, members: vec![u], policy: Policy::Deterministic }
    }

    pub fn id(&self) -> GroupId {
        self.id
    }

    pub fn members(&self) -> &[NodeId] {
        &self.members
    }

    pub fn policy(&self) -> &Policy {
        &self.policy
    }

    /// Marks the members accepting in one draw of the policy.
    fn draw(&self, rng: &mut impl Rng, accepted: &mut [bool]) {
        match &self.policy {
            Policy::Deterministic => self.members.iter().for_each(|&u| accepted[u] = true),
            Policy::Independent { q } => {
                for (&u, &q) in self.members.iter().zip(q) {
                    if rng.gen::<f64>() < q {
                        accepted[u] = true;
                    }
                }
            }
            Policy::LeakyChain { eps } => {
                accepted[self.members[0]] = true;
                for &u in &self.members[1..] {
                    if rng.gen::<f64>() < 1.0 - eps {
                        accepted[u] = true;
                    } else {
                        break;
                    }
                }
            }
        }
    }

    /// Marks the union of `multiplicity` independent acceptance draws for
    /// replicate `replicate`. Draws for `l` copies are a prefix of the draws
    /// for `l + 1`, so adding a copy only ever grows the accepted set.
    pub(crate) fn accept_into(&self, multiplicity: u32, replicate: u64, master_seed: u64, accepted: &mut [bool]) {
        if multiplicity == 0 {
            return;
        }
        if self.policy == Policy::Deterministic {
            self.members.iter().for_each(|&u| accepted[u] = true);
            return;
        }
        let mut rng = rng::stream(master_seed, Domain::Acceptance(self.id as u64), replicate);
        for _ in 0..multiplicity {
            self.draw(&mut rng, accepted);
        }
    }
}

/// Singleton deterministic groups for every non-seed node (plain node
/// immunization). Group ids equal node ids.
pub fn node_groups(g: &ProbGraph) -> Vec<Group> {
    (0..g.n()).filter(|&u| !g.is_seed(u)).map(Group::singleton).collect()
}

/// Realized accepted members of `group` chosen `multiplicity` times, ascending.
pub fn sample_acceptance(
    group: &Group,
    multiplicity: u32,
    replicate_index: u64,
    master_seed: u64,
) -> Result<Vec<NodeId>> {
    if multiplicity == 0 {
        return Err(Error::config("multiplicity must be at least 1"));
    }
    let size = group.members.iter().max().map_or(0, |&m| m + 1);
    let mut accepted = vec![false; size];
    group.accept_into(multiplicity, replicate_index, master_seed, &mut accepted);
    Ok((0..size).filter(|&u| accepted[u]).collect())
}

/// Chosen groups with multiplicities, keyed by position in the group list.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Multiset {
    counts: BTreeMap<usize, u32>,
}

impl Multiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, index: usize) {
        *self.counts.entry(index).or_insert(0) += 1;
    }

    pub fn with(&self, index: usize) -> Self {
        let mut m = self.clone();
        m.add(index);
        m
    }

    pub fn count(&self, index: usize) -> u32 {
        self.counts.get(&index).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.counts.iter().map(|(&i, &c)| (i, c))
    }
}

impl FromIterator<usize> for Multiset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut m = Multiset::new();
        iter.into_iter().for_each(|i| m.add(i));
        m
    }
}

pub(crate) fn realize_into(
    groups: &[Group],
    chosen: &Multiset,
    replicate: u64,
    master_seed: u64,
    removed: &mut [bool],
) {
    for (idx, count) in chosen.iter() {
        groups[idx].accept_into(count, replicate, master_seed, removed);
    }
}

pub(crate) fn check_groups(g: &ProbGraph, groups: &[Group]) -> Result<()> {
    let mut ids: Vec<GroupId> = groups.iter().map(|gr| gr.id).collect();
    ids.sort_unstable();
    if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::config(format!("duplicate group id {}", w[0])));
    }
    for gr in groups {
        if let Some(&u) = gr.members.iter().find(|&&u| u >= g.n()) {
            return Err(Error::config(format!("group {} member {u} is not a node", gr.id)));
        }
    }
    Ok(())
}

pub(crate) fn check_multiset(g: &ProbGraph, groups: &[Group], chosen: &Multiset) -> Result<()> {
    check_groups(g, groups)?;
    if let Some((idx, _)) = chosen.iter().find(|&(idx, _)| idx >= groups.len()) {
        return Err(Error::config(format!("selection refers to group index {idx} of {}", groups.len())));
    }
    Ok(())
}
