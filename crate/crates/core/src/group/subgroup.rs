use super::FiniteGroup;

/// A subgroup recorded by its member indices in the parent group.
#[derive(Clone)]
pub struct Subgroup<'g> {
    group: &'g FiniteGroup,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl std::fmt::Debug for Subgroup<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {})", self.members.len())
    }
}

impl PartialEq for Subgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.group, other.group) && self.members == other.members
    }
}

impl<'g> Subgroup<'g> {
    /// Wraps a member list that the caller knows to be a subgroup.
    pub(crate) fn from_members(group: &'g FiniteGroup, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![false; group.order()];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup { group, members, mask }
    }

    pub fn whole(group: &'g FiniteGroup) -> Self {
        Self::from_members(group, (0..group.order()).collect())
    }

    pub fn trivial(group: &'g FiniteGroup) -> Self {
        Self::from_members(group, vec![0])
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// Sorted member indices.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn is_subset_of(&self, other: &Subgroup<'_>) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.group.order()
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generating_set();
        let g = self.group;
        gens.iter().all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// Greedy generating set: repeatedly adjoin the least member not yet
    /// generated.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut c = Closure::new(self.group);
        for &x in &self.members {
            c.add(x);
        }
        c.generators().to_vec()
    }

    /// Checks closure under products and inverses.
    pub fn is_closed(&self) -> bool {
        let g = self.group;
        self.contains(0)
            && self.members.iter().all(|&a| self.contains(g.inv(a)))
            && self.generating_set().iter().all(|&s| self.members.iter().all(|&a| self.contains(g.mul(a, s))))
    }

    /// `true` when every conjugate `h^-1 a h` (h in `ambient`) stays inside.
    pub fn is_normal_in(&self, ambient: &Subgroup<'_>) -> bool {
        let g = self.group;
        let gens = self.generating_set();
        ambient.generating_set().iter().all(|&h| gens.iter().all(|&a| self.contains(g.conj(a, h))))
    }
}

/// Incrementally grown subgroup `<gens>`.
pub struct Closure<'g> {
    group: &'g FiniteGroup,
    members: Vec<usize>,
    mask: Vec<bool>,
    gens: Vec<usize>,
}

impl<'g> Closure<'g> {
    pub fn new(group: &'g FiniteGroup) -> Self {
        let mut mask = vec![false; group.order()];
        mask[0] = true;
        Closure { group, members: vec![0], mask, gens: Vec::new() }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    /// Adjoins `x`; returns `false` if it was already a member.
    pub fn add(&mut self, x: usize) -> bool {
        if self.mask[x] {
            return false;
        }
        let g = self.group;
        self.gens.push(x);
        let mut frontier = Vec::new();
        for &e in &self.members {
            let y = g.mul(e, x);
            if !self.mask[y] {
                self.mask[y] = true;
                frontier.push(y);
            }
        }
        while let Some(e) = frontier.pop() {
            self.members.push(e);
            for &s in &self.gens {
                let y = g.mul(e, s);
                if !self.mask[y] {
                    self.mask[y] = true;
                    frontier.push(y);
                }
            }
        }
        true
    }

    /// Grows the closure until it is normalised by every element of
    /// `conjugators` (typically generators of an ambient subgroup).
    pub fn close_normally(&mut self, conjugators: &[usize]) {
        let g = self.group;
        let mut i = 0;
        while i < self.gens.len() {
            let s = self.gens[i];
            for &h in conjugators {
                let c = g.conj(s, h);
                self.add(c);
            }
            i += 1;
        }
    }

    pub fn into_subgroup(self) -> Subgroup<'g> {
        Subgroup::from_members(self.group, self.members)
    }
}

impl FiniteGroup {
    /// Smallest subgroup containing `seeds`.
    pub fn closure(&self, seeds: &[usize]) -> Subgroup<'_> {
        let mut c = Closure::new(self);
        for &s in seeds {
            c.add(s);
        }
        c.into_subgroup()
    }
}
