//! Atoms of the subgroup-generated Boolean algebra `B(Γ)`, the mod-3
//! refinement on `Γ(3)`, connection sets, and the membership tests that
//! drive the integrality criteria.
//!
//! Two equivalence relations matter here. `x ∼ y` holds when `y = x^k` for
//! some `k` coprime to `ord(x)`; its classes `[x] = {y : ⟨y⟩ = ⟨x⟩}` are
//! the atoms of `B(Γ)`. On the elements of order divisible by 3, `x ≈ y`
//! additionally requires `k ≡ 1 (mod 3)`; its classes `⟨⟨x⟩⟩` refine the
//! atoms and, together with conjugacy classes, generate `E(Γ)`.

use num_integer::Integer;

use crate::classes::ClassData;
use crate::elemset::ElemSet;
use crate::group::Group;
use crate::{Error, Result};

/// `G_n(d) = {k : 1 ≤ k ≤ n−1, gcd(k,n) = d}`, ascending.
pub fn divisor_set(n: u64, d: u64) -> Result<Vec<u64>> {
    if d == 0 || n % d != 0 {
        return Err(Error::NotADivisor { n, d });
    }
    Ok((1..n).filter(|&k| k.gcd(&n) == d).collect())
}

/// `G^r_{n,3}(d) = {dk : k ≡ r (mod 3), gcd(dk,n) = d}`, ascending.
pub fn divisor_set_mod3(n: u64, d: u64, r: u64) -> Result<Vec<u64>> {
    if r != 1 && r != 2 {
        return Err(Error::BadResidue(r));
    }
    if n % 3 != 0 {
        return Err(Error::NotADivisor { n, d: 3 });
    }
    if d == 0 || (n / 3) % d != 0 {
        return Err(Error::NotADivisor { n: n / 3, d });
    }
    Ok((1..n)
        .filter(|&j| j % d == 0 && (j / d) % 3 == r && j.gcd(&n) == d)
        .collect())
}

/// The atom `[x] = {x^k : k ∈ G_m(1)} = {y : ⟨y⟩ = ⟨x⟩}`, `m = ord(x)`.
pub fn atom(group: &Group, x: usize) -> Result<ElemSet> {
    if x == group.identity() {
        return Err(Error::IdentityElement);
    }
    let m = group.element_order(x) as u64;
    let ks = divisor_set(m, 1).expect("1 divides m");
    Ok(ElemSet::from_iter(
        group.order(),
        ks.iter().map(|&k| group.power(x, k as i64)),
    ))
}

/// The class `⟨⟨x⟩⟩ = {x^k : k ∈ G¹_{m,3}(1)}` for `x ∈ Γ(3)`.
pub fn atom3(group: &Group, x: usize) -> Result<ElemSet> {
    let m = group.element_order(x) as u64;
    if m % 3 != 0 {
        return Err(Error::NotInGamma3);
    }
    let ks = divisor_set_mod3(m, 1, 1).expect("valid arguments");
    Ok(ElemSet::from_iter(
        group.order(),
        ks.iter().map(|&k| group.power(x, k as i64)),
    ))
}

/// Precomputed partitions: atoms of `B(Γ)` over `Γ∖{1}` and `≈`-classes
/// over `Γ(3)`.
pub struct AtomSystem {
    gamma3: ElemSet,
    atom_of: Vec<Option<usize>>,
    atoms: Vec<Vec<usize>>,
    atom3_of: Vec<Option<usize>>,
    atom3_classes: Vec<Vec<usize>>,
}

impl AtomSystem {
    pub fn new(group: &Group) -> Self {
        let n = group.order();
        let mut gamma3 = ElemSet::empty(n);
        for e in 0..n {
            if group.element_order(e) % 3 == 0 {
                gamma3.insert(e);
            }
        }
        let mut atom_of = vec![None; n];
        let mut atoms = Vec::new();
        for e in 1..n {
            if atom_of[e].is_some() {
                continue;
            }
            let id = atoms.len();
            let members = atom(group, e).expect("non-identity").to_vec();
            for &m in &members {
                atom_of[m] = Some(id);
            }
            atoms.push(members);
        }
        let mut atom3_of = vec![None; n];
        let mut atom3_classes = Vec::new();
        for e in gamma3.iter() {
            if atom3_of[e].is_some() {
                continue;
            }
            let id = atom3_classes.len();
            let members = atom3(group, e).expect("order divisible by 3").to_vec();
            for &m in &members {
                atom3_of[m] = Some(id);
            }
            atom3_classes.push(members);
        }
        AtomSystem {
            gamma3,
            atom_of,
            atoms,
            atom3_of,
            atom3_classes,
        }
    }

    pub fn gamma3(&self) -> &ElemSet {
        &self.gamma3
    }

    pub fn in_gamma3(&self, e: usize) -> bool {
        self.gamma3.contains(e)
    }

    pub fn atom_of(&self, e: usize) -> Option<usize> {
        self.atom_of[e]
    }

    pub fn atom_members(&self, id: usize) -> &[usize] {
        &self.atoms[id]
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom3_of(&self, e: usize) -> Option<usize> {
        self.atom3_of[e]
    }

    pub fn atom3_members(&self, id: usize) -> &[usize] {
        &self.atom3_classes[id]
    }

    pub fn num_atom3_classes(&self) -> usize {
        self.atom3_classes.len()
    }
}

/// Identity-free connection set with its derived symmetric and skew parts.
#[derive(Clone, Debug)]
pub struct ConnectionSet {
    members: ElemSet,
    symmetric_part: ElemSet,
    skew_part: ElemSet,
}

impl ConnectionSet {
    pub fn from_set(group: &Group, members: ElemSet) -> Result<Self> {
        if members.contains(group.identity()) {
            return Err(Error::IdentityInSet);
        }
        let inverse = inverse_set(group, &members);
        let symmetric_part = members.intersection(&inverse);
        let skew_part = members.difference(&inverse);
        Ok(ConnectionSet {
            members,
            symmetric_part,
            skew_part,
        })
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(group: &Group, iter: I) -> Result<Self> {
        Self::from_set(group, ElemSet::from_iter(group.order(), iter))
    }

    pub fn from_class_indices(group: &Group, cd: &ClassData, classes: &[usize]) -> Result<Self> {
        let mut members = ElemSet::empty(group.order());
        for &c in classes {
            for &e in cd.members(c) {
                members.insert(e);
            }
        }
        Self::from_set(group, members)
    }

    /// Bit `b` of `mask` selects class `b + 1` (the identity class cannot
    /// participate).
    pub fn from_class_mask(group: &Group, cd: &ClassData, mask: u64) -> Result<Self> {
        let classes: Vec<usize> = (0..cd.num_classes() - 1)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| b + 1)
            .collect();
        Self::from_class_indices(group, cd, &classes)
    }

    /// The full set `S`.
    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    /// `S∖S̄`, closed under inverse.
    pub fn symmetric_part(&self) -> &ElemSet {
        &self.symmetric_part
    }

    /// `S̄ = {u ∈ S : u⁻¹ ∉ S}`.
    pub fn skew_part(&self) -> &ElemSet {
        &self.skew_part
    }

    pub fn is_symmetric(&self) -> bool {
        self.skew_part.is_empty()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.symmetric_part.is_empty()
    }

    /// True iff `S` is a union of conjugacy classes.
    pub fn is_normal(&self, cd: &ClassData) -> bool {
        self.members
            .iter()
            .all(|e| cd.members(cd.class_of(e)).iter().all(|&m| self.members.contains(m)))
    }

    /// The classes making up `S`, or an error when `S` is not normal.
    pub fn class_indices(&self, cd: &ClassData) -> Result<Vec<usize>> {
        if !self.is_normal(cd) {
            let witness = self
                .members
                .iter()
                .find(|&e| !cd.members(cd.class_of(e)).iter().all(|&m| self.members.contains(m)))
                .expect("non-normal set has a witness");
            return Err(Error::NotNormal(format!(
                "element {witness} is in S but its class is not contained in S"
            )));
        }
        let mut classes: Vec<usize> = self.members.iter().map(|e| cd.class_of(e)).collect();
        classes.sort_unstable();
        classes.dedup();
        Ok(classes)
    }
}

/// `{x⁻¹ : x ∈ set}`.
pub fn inverse_set(group: &Group, set: &ElemSet) -> ElemSet {
    ElemSet::from_iter(group.order(), set.iter().map(|e| group.inv(e)))
}

/// `set ∈ B(Γ)`: a union of atoms, i.e. every member's atom is contained
/// in `set`. The empty set qualifies.
pub fn in_boolean_algebra(sys: &AtomSystem, set: &ElemSet) -> bool {
    set.iter().all(|e| match sys.atom_of(e) {
        Some(id) => sys.atom_members(id).iter().all(|&m| set.contains(m)),
        None => false, // identity can never be covered by atoms
    })
}

/// `set ∈ E(Γ)`: skew-symmetric, inside `Γ(3)`, and simultaneously a union
/// of `≈`-classes and of conjugacy classes. The empty set always qualifies.
pub fn in_e_algebra(group: &Group, cd: &ClassData, sys: &AtomSystem, set: &ElemSet) -> bool {
    if set.is_empty() {
        return true;
    }
    for e in set.iter() {
        if set.contains(group.inv(e)) {
            return false; // not skew-symmetric (covers involutions too)
        }
        match sys.atom3_of(e) {
            None => return false, // outside Γ(3)
            Some(id) => {
                if !sys.atom3_members(id).iter().all(|&m| set.contains(m)) {
                    return false;
                }
            }
        }
        if !cd.members(cd.class_of(e)).iter().all(|&m| set.contains(m)) {
            return false;
        }
    }
    true
}

/// `S¹_x`: least symmetric superset of `{x}` closed under conjugation and
/// the relation `∼`.
pub fn closure_s1(group: &Group, cd: &ClassData, x: usize) -> Result<ElemSet> {
    if x == group.identity() {
        return Err(Error::IdentityElement);
    }
    let mut set = ElemSet::empty(group.order());
    let mut stack = vec![x, group.inv(x)];
    while let Some(e) = stack.pop() {
        if set.contains(e) {
            continue;
        }
        set.insert(e);
        stack.extend(cd.members(cd.class_of(e)).iter().copied());
        stack.extend(atom(group, e)?.iter());
    }
    Ok(set)
}

/// `S²_y`: least skew-symmetric superset of `{y}` closed under conjugation
/// and `≈`. Returns `None` when the closure meets its own inverse set, in
/// which case no such skew-symmetric set exists.
pub fn closure_s2(group: &Group, cd: &ClassData, y: usize) -> Result<Option<ElemSet>> {
    if group.element_order(y) % 3 != 0 {
        return Err(Error::NotInGamma3);
    }
    let mut set = ElemSet::empty(group.order());
    let mut stack = vec![y];
    while let Some(e) = stack.pop() {
        if set.contains(e) {
            continue;
        }
        set.insert(e);
        stack.extend(cd.members(cd.class_of(e)).iter().copied());
        stack.extend(atom3(group, e)?.iter());
    }
    if set.is_disjoint(&inverse_set(group, &set)) {
        Ok(Some(set))
    } else {
        Ok(None)
    }
}
