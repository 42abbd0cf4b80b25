//! Finite groups given by multiplication tables, and their subgroups.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(&'static str),
    #[error("element {0} is out of range")]
    OutOfRange(usize),
    #[error("orders must be positive")]
    EmptyFactor,
}

/// Elements are `0..order`, with `0` the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    /// Cyclic factor orders when the group was built as a product of cyclics.
    factors: Option<Vec<usize>>,
}

impl FiniteGroup {
    pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
        Self::abelian(&[n]).expect("positive order")
    }

    /// `Z/n_1 x ... x Z/n_k`; element indices are mixed-radix with the first
    /// factor varying fastest.
    pub fn abelian(orders: &[usize]) -> Result<Arc<FiniteGroup>, GroupError> {
        if orders.contains(&0) {
            return Err(GroupError::EmptyFactor);
        }
        let n: usize = orders.iter().product();
        let digits = |mut k: usize| {
            orders
                .iter()
                .map(|&m| {
                    let d = k % m;
                    k /= m;
                    d
                })
                .collect::<Vec<_>>()
        };
        let index = |ds: &[usize]| ds.iter().zip(orders).rev().fold(0, |acc, (&d, &m)| acc * m + d);
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                let da = digits(a);
                (0..n)
                    .map(|b| {
                        let s: Vec<usize> =
                            digits(b).iter().zip(&da).zip(orders).map(|((x, y), m)| (x + y) % m).collect();
                        index(&s)
                    })
                    .collect()
            })
            .collect();
        let mut g = Self::from_table(table)?;
        Arc::get_mut(&mut g).expect("fresh").factors = Some(orders.to_vec());
        Ok(g)
    }

    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Arc<FiniteGroup>, GroupError> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(GroupError::NotAGroup("table must be square with entries in range"));
        }
        if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
            return Err(GroupError::NotAGroup("element 0 must be the identity"));
        }
        for row in &table {
            let mut seen = vec![false; n];
            for &x in row {
                if core::mem::replace(&mut seen[x], true) {
                    return Err(GroupError::NotAGroup("rows must be permutations"));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAGroup("multiplication is not associative"));
                    }
                }
            }
        }
        let inverse = (0..n).map(|a| table[a].iter().position(|&x| x == 0).expect("row is a permutation")).collect();
        Ok(Arc::new(FiniteGroup { table, inverse, factors: None }))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn factors(&self) -> Option<&[usize]> {
        self.factors.as_deref()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn conjugate(&self, t: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(t), g), t)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let mut cls: Vec<usize> = (0..n).map(|t| self.conjugate(t, g)).collect();
            cls.sort_unstable();
            cls.dedup();
            for &c in &cls {
                class_of[c] = classes.len();
            }
            classes.push(cls);
        }
        classes
    }
}

/// A subgroup, as a sorted list of elements of the ambient group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    elems: Vec<usize>,
}

impl Subgroup {
    pub fn trivial() -> Subgroup {
        Subgroup { elems: vec![0] }
    }

    pub fn whole(g: &FiniteGroup) -> Subgroup {
        Subgroup { elems: (0..g.order()).collect() }
    }

    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Result<Subgroup, GroupError> {
        if let Some(&bad) = gens.iter().find(|&&x| x >= g.order()) {
            return Err(GroupError::OutOfRange(bad));
        }
        let mut inside = vec![false; g.order()];
        inside[0] = true;
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &s in gens {
                let y = g.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    frontier.push(y);
                }
            }
        }
        Ok(Subgroup { elems: (0..g.order()).filter(|&i| inside[i]).collect() })
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elems.binary_search(&a).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elems.iter().all(|&a| other.contains(a))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup { elems: self.elems.iter().copied().filter(|&a| other.contains(a)).collect() }
    }

    pub fn is_normal_in(&self, g: &FiniteGroup) -> bool {
        (0..g.order()).all(|t| self.elems.iter().all(|&h| self.contains(g.conjugate(t, h))))
    }

    /// The subgroup as a group in its own right; element `k` of the result is
    /// `self.elements()[k]`.
    pub fn as_group(&self, g: &FiniteGroup) -> Arc<FiniteGroup> {
        let local = |x: usize| self.elems.binary_search(&x).expect("closed under multiplication");
        let table = self.elems.iter().map(|&a| self.elems.iter().map(|&b| local(g.mul(a, b))).collect()).collect();
        let mut h = FiniteGroup::from_table(table).expect("subgroup of a group");
        if let Some(fs) = g.factors() {
            if fs.len() == 1 && self.elems.len() > 1 {
                // a subgroup of a cyclic group is cyclic, generated by its smallest nonzero member
                let n = self.elems.len();
                let gen = self.elems[1];
                if (0..n).map(|k| local(g.pow(gen, k))).eq(0..n) {
                    Arc::get_mut(&mut h).expect("fresh").factors = Some(vec![n]);
                }
            }
        }
        h
    }

    /// The subgroup generated by elements of `p`-power order.
    pub fn p_part(&self, g: &FiniteGroup, p: usize) -> Subgroup {
        let is_p_power = |mut k: usize| {
            while k.is_multiple_of(p) {
                k /= p;
            }
            k == 1
        };
        let gens: Vec<usize> = self.elems.iter().copied().filter(|&a| is_p_power(g.element_order(a))).collect();
        Subgroup::generated(g, &gens).expect("members are in range")
    }
}
