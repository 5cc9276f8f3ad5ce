use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// Upper limit on the number of subgroups kept during enumeration.
const MAX_SUBGROUPS: usize = 10_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupMode {
    All,
    #[default]
    #[serde(alias = "conjugacy")]
    UpToConjugacy,
}

/// Every subgroup of `group`, or one representative per conjugacy class.
///
/// Cyclic subgroups are closed under joins with cyclic subgroups until no
/// new subgroup appears. The result is sorted by order, then by element
/// indices, so the trivial subgroup comes first and `group` itself last.
pub fn subgroups(group: &FiniteGroup, mode: SubgroupMode, cap: usize) -> Result<Vec<Subgroup>> {
    Ok(SubgroupCatalog::enumerate(group, mode, cap)?.entries)
}

/// The subgroups a computation quantifies over, with conjugacy data.
#[derive(Clone, Debug)]
pub struct SubgroupCatalog {
    mode: SubgroupMode,
    entries: Vec<Subgroup>,
    /// `conjugates[i]` lists the distinct conjugates of `entries[i]`.
    conjugates: Vec<Vec<Subgroup>>,
}

impl SubgroupCatalog {
    pub fn enumerate(group: &FiniteGroup, mode: SubgroupMode, cap: usize) -> Result<Self> {
        if group.order() > cap {
            return Err(Error::GroupTooLarge { cap });
        }
        let n = group.order();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| group.multiply(a, b)).collect())
            .collect();
        let join = |gens: &[usize]| -> Subgroup {
            let mut members = BTreeSet::from([0usize]);
            let mut stack = vec![0usize];
            while let Some(x) = stack.pop() {
                for &g in gens {
                    let y = table[g][x];
                    if members.insert(y) {
                        stack.push(y);
                    }
                }
            }
            Subgroup::from_indices(members)
        };

        let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
        let mut seen_cyclic = HashSet::new();
        for g in 0..n {
            let c = join(&[g]);
            if seen_cyclic.insert(c.clone()) {
                cyclic.push((g, c));
            }
        }

        let mut found: HashSet<Subgroup> = HashSet::new();
        let mut work: Vec<(Vec<usize>, Subgroup)> = Vec::new();
        for (g, c) in &cyclic {
            if found.insert(c.clone()) {
                work.push((vec![*g], c.clone()));
            }
        }
        while let Some((gens, h)) = work.pop() {
            for (g, c) in &cyclic {
                if c.is_subgroup_of(&h) {
                    continue;
                }
                let mut more = gens.clone();
                more.push(*g);
                let j = join(&more);
                if found.insert(j.clone()) {
                    if found.len() > MAX_SUBGROUPS {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    work.push((more, j));
                }
            }
        }

        let mut all: Vec<Subgroup> = found.into_iter().collect();
        all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));

        let conjugates_of = |h: &Subgroup| -> Vec<Subgroup> {
            let set: BTreeSet<Subgroup> = (0..n).map(|g| group.conjugate(h, g)).collect();
            set.into_iter().collect()
        };

        let (entries, conjugates) = match mode {
            SubgroupMode::All => {
                let conj = all.iter().map(conjugates_of).collect();
                (all, conj)
            }
            SubgroupMode::UpToConjugacy => {
                let mut assigned: HashSet<Subgroup> = HashSet::new();
                let mut reps = Vec::new();
                let mut conj = Vec::new();
                for h in all {
                    if assigned.contains(&h) {
                        continue;
                    }
                    let class = conjugates_of(&h);
                    assigned.extend(class.iter().cloned());
                    reps.push(h);
                    conj.push(class);
                }
                (reps, conj)
            }
        };
        Ok(SubgroupCatalog {
            mode,
            entries,
            conjugates,
        })
    }

    pub fn mode(&self) -> SubgroupMode {
        self.mode
    }

    pub fn entries(&self) -> &[Subgroup] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.entries[i]
    }

    pub fn whole_index(&self) -> usize {
        self.entries.len() - 1
    }

    /// Whether some conjugate of entry `k` is contained in entry `h`.
    pub fn is_subconjugate(&self, k: usize, h: usize) -> bool {
        self.conjugates[k]
            .iter()
            .any(|c| c.is_subgroup_of(&self.entries[h]))
    }

    /// Catalog index of `h`: exact match in `All` mode, conjugacy class otherwise.
    pub fn locate(&self, h: &Subgroup) -> Option<usize> {
        match self.mode {
            SubgroupMode::All => self.entries.iter().position(|e| e == h),
            SubgroupMode::UpToConjugacy => self.conjugates.iter().position(|c| c.contains(h)),
        }
    }

    /// `1` for the trivial subgroup, `G` for the whole group, `H<i>` otherwise.
    pub fn name(&self, i: usize) -> String {
        if i == 0 {
            "1".to_string()
        } else if i == self.whole_index() {
            "G".to_string()
        } else {
            format!("H{i}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{DEFAULT_GROUP_CAP, DEFAULT_SUBGROUP_CAP};

    fn group(n: usize, gens: &[Vec<usize>]) -> FiniteGroup {
        FiniteGroup::closure(n, gens, DEFAULT_GROUP_CAP).unwrap()
    }

    #[test]
    fn cyclic_four_has_three_subgroups() {
        let z4 = group(4, &[vec![1, 2, 3, 0]]);
        let subs = subgroups(&z4, SubgroupMode::All, DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(
            subs.iter().map(Subgroup::order).collect::<Vec<_>>(),
            vec![1, 2, 4]
        );
    }

    #[test]
    fn s3_classes() {
        let s3 = group(3, &[vec![1, 0, 2], vec![0, 2, 1]]);
        let all = subgroups(&s3, SubgroupMode::All, DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(all.len(), 6);
        let classes = subgroups(&s3, SubgroupMode::UpToConjugacy, DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(
            classes.iter().map(Subgroup::order).collect::<Vec<_>>(),
            vec![1, 2, 3, 6]
        );
        for h in &all {
            assert!(h.is_valid_in(&s3));
        }
    }

    #[test]
    fn trivial_group_has_one_subgroup() {
        let e = FiniteGroup::trivial(3);
        assert_eq!(
            subgroups(&e, SubgroupMode::UpToConjugacy, DEFAULT_SUBGROUP_CAP)
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn s4_lattice_counts() {
        // S4: 30 subgroups in 11 conjugacy classes
        let s4 = group(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]);
        assert_eq!(
            subgroups(&s4, SubgroupMode::All, DEFAULT_SUBGROUP_CAP)
                .unwrap()
                .len(),
            30
        );
        let cat =
            SubgroupCatalog::enumerate(&s4, SubgroupMode::UpToConjugacy, DEFAULT_SUBGROUP_CAP)
                .unwrap();
        assert_eq!(cat.len(), 11);
        assert!(cat.is_subconjugate(1, cat.whole_index()));
        assert!(!cat.is_subconjugate(cat.whole_index(), 1));
    }

    #[test]
    fn cap_is_enforced() {
        let s4 = group(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]);
        assert_eq!(
            subgroups(&s4, SubgroupMode::All, 10).unwrap_err(),
            Error::GroupTooLarge { cap: 10 }
        );
    }

    #[test]
    fn locate_finds_conjugates() {
        let s3 = group(3, &[vec![1, 0, 2], vec![0, 2, 1]]);
        let cat =
            SubgroupCatalog::enumerate(&s3, SubgroupMode::UpToConjugacy, DEFAULT_SUBGROUP_CAP)
                .unwrap();
        let all = subgroups(&s3, SubgroupMode::All, DEFAULT_SUBGROUP_CAP).unwrap();
        let order_two: Vec<_> = all.iter().filter(|h| h.order() == 2).collect();
        assert_eq!(order_two.len(), 3);
        for h in order_two {
            assert_eq!(cat.locate(h), Some(1));
        }
    }
}
