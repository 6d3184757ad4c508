//! Exact finite-group engine: multiplication tables, element orders,
//! standard family constructors and the group-spec grammar.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::perm::{parse_cycle_list, Perm};
use crate::{Error, Result, DEFAULT_MAX_ORDER};

/// Finite group on elements `0..n` with `0` the identity. Multiplication is
/// a full table, so every product is exact and O(1).
pub struct Group {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elem_order: Vec<u32>,
    exponent: u64,
    labels: Vec<String>,
    /// Faithful permutation action, when the group was built from one.
    perms: Option<Vec<Perm>>,
}

impl Group {
    fn from_table(n: usize, mul: Vec<u32>, labels: Vec<String>, perms: Option<Vec<Perm>>) -> Self {
        debug_assert_eq!(mul.len(), n * n);
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b as u32;
                }
            }
        }
        debug_assert!(inv.iter().all(|&x| x != u32::MAX));
        let mut elem_order = vec![0u32; n];
        for g in 0..n {
            let mut p = g;
            let mut ord = 1;
            while p != 0 {
                p = mul[p * n + g] as usize;
                ord += 1;
            }
            elem_order[g] = ord;
        }
        let exponent = elem_order
            .iter()
            .fold(1u64, |acc, &o| acc.lcm(&(o as u64)));
        Group {
            n,
            mul,
            inv,
            elem_order,
            exponent,
            labels,
            perms,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g] as usize
    }

    /// Conjugate of `g` by `x`: `x g x⁻¹`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    /// Least `m ≥ 1` with `g^m = 1`.
    pub fn element_order(&self, g: usize) -> usize {
        self.elem_order[g] as usize
    }

    /// lcm of all element orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// `g^k` for any integer `k`, reduced mod `ord(g)`.
    pub fn power(&self, g: usize, k: i64) -> usize {
        let m = self.elem_order[g] as i64;
        let mut e = k.rem_euclid(m) as usize;
        let mut acc = 0usize;
        let mut base = g;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn perm(&self, g: usize) -> Option<&Perm> {
        self.perms.as_ref().map(|ps| &ps[g])
    }

    pub fn element_of_perm(&self, p: &Perm) -> Option<usize> {
        self.perms
            .as_ref()
            .and_then(|ps| ps.iter().position(|q| q == p))
    }

    /// True iff every element is conjugate to its inverse.
    pub fn is_ambivalent(&self) -> bool {
        (0..self.n).all(|g| {
            let gi = self.inv(g);
            (0..self.n).any(|x| self.conj(x, g) == gi)
        })
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("order", &self.n)
            .field("exponent", &self.exponent)
            .finish()
    }
}

/// Group family specification; parses from and prints the grammar
/// `cyclic:12`, `dihedral:6`, `dicyclic:3`, `symmetric:4`, `alternating:4`,
/// `product:cyclic:3,cyclic:4`, `perm:4:[(0 1 2)],[(0 1)(2 3)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Dicyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    Permutation {
        points: usize,
        generators: Vec<Vec<Vec<usize>>>,
    },
    Product(Vec<GroupSpec>),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(k) => write!(f, "cyclic:{k}"),
            GroupSpec::Dihedral(k) => write!(f, "dihedral:{k}"),
            GroupSpec::Dicyclic(k) => write!(f, "dicyclic:{k}"),
            GroupSpec::Symmetric(k) => write!(f, "symmetric:{k}"),
            GroupSpec::Alternating(k) => write!(f, "alternating:{k}"),
            GroupSpec::Permutation { points, generators } => {
                write!(f, "perm:{points}:")?;
                for (i, gen) in generators.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "[")?;
                    for cycle in gen {
                        let pts: Vec<String> = cycle.iter().map(|p| p.to_string()).collect();
                        write!(f, "({})", pts.join(" "))?;
                    }
                    write!(f, "]")?;
                }
                Ok(())
            }
            GroupSpec::Product(factors) => {
                write!(f, "product:")?;
                for (i, s) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{s}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupSpec> {
        let (spec, rest) = parse_prefix(s.trim())?;
        if !rest.is_empty() {
            return Err(Error::UnsupportedFamily(format!(
                "trailing input {rest:?} after {spec}"
            )));
        }
        Ok(spec)
    }
}

/// Greedily parse one spec from the front of `s`, returning the remainder.
fn parse_prefix(s: &str) -> Result<(GroupSpec, &str)> {
    let bad = || Error::UnsupportedFamily(s.to_string());
    let (family, rest) = s.split_once(':').ok_or_else(bad)?;
    match family {
        "cyclic" | "dihedral" | "dicyclic" | "symmetric" | "alternating" => {
            let (k, rest) = take_integer(rest).ok_or_else(bad)?;
            if k == 0 {
                return Err(Error::UnsupportedFamily(format!(
                    "{family} parameter must be positive"
                )));
            }
            let spec = match family {
                "cyclic" => GroupSpec::Cyclic(k),
                "dihedral" => GroupSpec::Dihedral(k),
                "dicyclic" => GroupSpec::Dicyclic(k),
                "symmetric" => GroupSpec::Symmetric(k),
                _ => GroupSpec::Alternating(k),
            };
            Ok((spec, rest))
        }
        "perm" => {
            let (points, rest) = take_integer(rest).ok_or_else(bad)?;
            let rest = rest.strip_prefix(':').ok_or_else(bad)?;
            let mut generators = Vec::new();
            let mut rest = rest;
            loop {
                let close = rest.find(']').ok_or_else(bad)?;
                let gen = parse_cycle_list(&rest[..=close])
                    .map_err(|e| Error::UnsupportedFamily(e.to_string()))?;
                for cycle in &gen {
                    if cycle.iter().any(|&p| p >= points) {
                        return Err(Error::UnsupportedFamily(format!(
                            "cycle point out of range in {s:?}"
                        )));
                    }
                }
                generators.push(gen);
                rest = &rest[close + 1..];
                match rest.strip_prefix(",[") {
                    // the '[' belongs to the next generator
                    Some(_) => rest = &rest[1..],
                    None => break,
                }
            }
            Ok((GroupSpec::Permutation { points, generators }, rest))
        }
        "product" => {
            let mut factors = Vec::new();
            let (first, mut rest) = parse_prefix(rest)?;
            factors.push(first);
            while let Some(tail) = rest.strip_prefix(',') {
                let (next, tail) = parse_prefix(tail)?;
                factors.push(next);
                rest = tail;
            }
            if factors.len() < 2 {
                return Err(Error::UnsupportedFamily(
                    "product needs at least two factors".to_string(),
                ));
            }
            Ok((GroupSpec::Product(factors), rest))
        }
        _ => Err(bad()),
    }
}

/// Split a leading decimal integer off `s`.
fn take_integer(s: &str) -> Option<(usize, &str)> {
    let end = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
    if end == 0 {
        return None;
    }
    s[..end].parse().ok().map(|k| (k, &s[end..]))
}

impl GroupSpec {
    /// Order the spec will materialize to, or `None` when it is only known
    /// after generator closure.
    pub fn known_order(&self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic(k) => Some(*k),
            GroupSpec::Dihedral(k) => Some(2 * k),
            GroupSpec::Dicyclic(k) => Some(4 * k),
            GroupSpec::Symmetric(k) => factorial(*k),
            GroupSpec::Alternating(k) => factorial(*k).map(|f| (f / 2).max(1)),
            GroupSpec::Permutation { .. } => None,
            GroupSpec::Product(fs) => fs
                .iter()
                .try_fold(1usize, |acc, f| acc.checked_mul(f.known_order()?)),
        }
    }
}

fn factorial(k: usize) -> Option<usize> {
    (1..=k).try_fold(1usize, |acc, i| acc.checked_mul(i))
}

/// Build the group described by `spec` with the default order bound.
pub fn build_group(spec: &GroupSpec) -> Result<Group> {
    build_group_bounded(spec, DEFAULT_MAX_ORDER)
}

/// Build the group described by `spec`, refusing orders above `max_order`.
pub fn build_group_bounded(spec: &GroupSpec, max_order: usize) -> Result<Group> {
    if let Some(order) = spec.known_order() {
        if order > max_order {
            return Err(Error::SizeExceeded {
                order,
                bound: max_order,
            });
        }
    } else if matches!(spec, GroupSpec::Product(_) | GroupSpec::Symmetric(_) | GroupSpec::Alternating(_)) {
        // known_order overflowed usize
        return Err(Error::SizeExceeded {
            order: usize::MAX,
            bound: max_order,
        });
    }
    match spec {
        GroupSpec::Cyclic(k) => Ok(cyclic(*k)),
        GroupSpec::Dihedral(k) => Ok(dihedral(*k)),
        GroupSpec::Dicyclic(k) => Ok(dicyclic(*k)),
        GroupSpec::Symmetric(k) => from_full_perm_set(*k, false),
        GroupSpec::Alternating(k) => from_full_perm_set(*k, true),
        GroupSpec::Permutation { points, generators } => {
            let gens = generators
                .iter()
                .map(|g| Perm::from_cycles(*points, g))
                .collect::<Result<Vec<_>>>()?;
            perm_closure(*points, &gens, max_order)
        }
        GroupSpec::Product(factors) => {
            let groups = factors
                .iter()
                .map(|f| build_group_bounded(f, max_order))
                .collect::<Result<Vec<_>>>()?;
            let mut it = groups.into_iter();
            let first = it.next().expect("product has factors");
            Ok(it.fold(first, |acc, g| direct_product(&acc, &g)))
        }
    }
}

/// Additive group of integers mod `k`; element index is the residue.
pub fn cyclic(k: usize) -> Group {
    let mut mul = vec![0u32; k * k];
    for a in 0..k {
        for b in 0..k {
            mul[a * k + b] = ((a + b) % k) as u32;
        }
    }
    let labels = (0..k).map(|i| i.to_string()).collect();
    Group::from_table(k, mul, labels, None)
}

/// Dihedral group of order `2k`: rotations `r^i` at indices `0..k`,
/// reflections `r^i·s` at `k..2k`.
pub fn dihedral(k: usize) -> Group {
    let n = 2 * k;
    let mut mul = vec![0u32; n * n];
    let rot = |i: usize| i % k;
    let refl = |i: usize| k + i % k;
    for i in 0..k {
        for j in 0..k {
            mul[rot(i) * n + rot(j)] = rot(i + j) as u32;
            mul[rot(i) * n + refl(j)] = refl(i + j) as u32;
            mul[refl(i) * n + rot(j)] = refl(i + k - j % k) as u32;
            mul[refl(i) * n + refl(j)] = rot(i + k - j % k) as u32;
        }
    }
    let mut labels: Vec<String> = (0..k).map(|i| power_label("r", i)).collect();
    labels.extend((0..k).map(|i| {
        if i == 0 {
            "s".to_string()
        } else {
            format!("{}s", power_label("r", i))
        }
    }));
    Group::from_table(n, mul, labels, None)
}

/// Dicyclic group `T_{4k}` of order `4k`: `⟨a,b | a^{2k}=1, b²=a^k,
/// b⁻¹ab=a⁻¹⟩`. Indices `0..2k` are `a^i`, `2k..4k` are `a^i·b`.
pub fn dicyclic(k: usize) -> Group {
    let m = 2 * k;
    let n = 4 * k;
    let mut mul = vec![0u32; n * n];
    for i in 0..m {
        for j in 0..m {
            mul[i * n + j] = ((i + j) % m) as u32;
            mul[i * n + (m + j)] = (m + (i + j) % m) as u32;
            mul[(m + i) * n + j] = (m + (i + m - j) % m) as u32;
            mul[(m + i) * n + (m + j)] = ((i + m - j + k) % m) as u32;
        }
    }
    let mut labels: Vec<String> = (0..m).map(|i| power_label("a", i)).collect();
    labels.extend((0..m).map(|i| {
        if i == 0 {
            "b".to_string()
        } else {
            format!("{}b", power_label("a", i))
        }
    }));
    Group::from_table(n, mul, labels, None)
}

fn power_label(gen: &str, i: usize) -> String {
    match i {
        0 => "e".to_string(),
        1 => gen.to_string(),
        _ => format!("{gen}{i}"),
    }
}

/// Symmetric (`even_only = false`) or alternating (`true`) group on `k`
/// points, elements in lexicographic order of their image vectors so the
/// identity lands at index 0.
fn from_full_perm_set(k: usize, even_only: bool) -> Result<Group> {
    let mut perms = Vec::new();
    let mut current = Perm::identity(k);
    loop {
        if !even_only || current.is_even() {
            perms.push(current.clone());
        }
        if !next_permutation(&mut current.0) {
            break;
        }
    }
    group_from_perms(perms)
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Breadth-first closure of `gens` into a full multiplication table.
fn perm_closure(points: usize, gens: &[Perm], max_order: usize) -> Result<Group> {
    let mut index: HashMap<Perm, usize> = HashMap::new();
    let mut perms = vec![Perm::identity(points)];
    index.insert(perms[0].clone(), 0);
    let mut frontier = 0;
    while frontier < perms.len() {
        let current = perms[frontier].clone();
        frontier += 1;
        for g in gens {
            let product = current.compose(g);
            if !index.contains_key(&product) {
                if perms.len() >= max_order {
                    return Err(Error::SizeExceeded {
                        order: perms.len() + 1,
                        bound: max_order,
                    });
                }
                index.insert(product.clone(), perms.len());
                perms.push(product);
            }
        }
    }
    group_from_perms(perms)
}

fn group_from_perms(perms: Vec<Perm>) -> Result<Group> {
    let n = perms.len();
    let index: HashMap<&Perm, usize> = perms.iter().zip(0..).collect();
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            let product = perms[a].compose(&perms[b]);
            let idx = *index
                .get(&product)
                .ok_or_else(|| Error::Parse("generator set is not closed".to_string()))?;
            mul[a * n + b] = idx as u32;
        }
    }
    let labels = perms.iter().map(|p| p.label()).collect();
    Ok(Group::from_table(n, mul, labels, Some(perms)))
}

/// Direct product with indices flattened row-major: `(a, b) ↦ a·|B| + b`.
pub fn direct_product(a: &Group, b: &Group) -> Group {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut mul = vec![0u32; n * n];
    for a1 in 0..na {
        for b1 in 0..nb {
            for a2 in 0..na {
                for b2 in 0..nb {
                    let x = a1 * nb + b1;
                    let y = a2 * nb + b2;
                    mul[x * n + y] = (a.mul(a1, a2) * nb + b.mul(b1, b2)) as u32;
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(n);
    for a1 in 0..na {
        for b1 in 0..nb {
            labels.push(format!("({},{})", a.label(a1), b.label(b1)));
        }
    }
    Group::from_table(n, mul, labels, None)
}

/// Whether `A_n` is ambivalent, decided on cycle types without
/// materializing the group. A class of `A_n` fails `g ~ g⁻¹` only when it
/// splits off from its `S_n` class (all cycle lengths odd and distinct,
/// counting fixed points) and the cycle-reversal conjugator is odd.
pub fn alternating_ambivalent(n: usize) -> bool {
    let mut ambivalent = true;
    let mut parts = Vec::new();
    partitions(n, n, &mut parts, &mut |parts| {
        let transpositions: usize = parts.iter().map(|p| p - 1).sum();
        if transpositions % 2 != 0 {
            return; // odd cycle type, not in A_n
        }
        let split = parts.iter().all(|&p| p % 2 == 1)
            && parts.windows(2).all(|w| w[0] != w[1]);
        if split {
            let reversal: usize = parts.iter().map(|p| p / 2).sum();
            if reversal % 2 != 0 {
                ambivalent = false;
            }
        }
    });
    ambivalent
}

fn partitions(remaining: usize, max_part: usize, parts: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if remaining == 0 {
        f(parts);
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        parts.push(part);
        partitions(remaining - part, part, parts, f);
        parts.pop();
    }
}

/// Built-in family catalog: every spec whose order is at most `max_order`,
/// in a fixed, documented order.
pub fn family_catalog(max_order: usize) -> Vec<GroupSpec> {
    let mut specs = Vec::new();
    specs.extend((2..=max_order).map(GroupSpec::Cyclic));
    specs.extend((3..).map(GroupSpec::Dihedral).take_while(|s| s.known_order().unwrap() <= max_order));
    specs.extend((2..).map(GroupSpec::Dicyclic).take_while(|s| s.known_order().unwrap() <= max_order));
    specs.extend(
        (3..)
            .map(GroupSpec::Symmetric)
            .take_while(|s| s.known_order().map(|o| o <= max_order).unwrap_or(false)),
    );
    specs.extend(
        (4..)
            .map(GroupSpec::Alternating)
            .take_while(|s| s.known_order().map(|o| o <= max_order).unwrap_or(false)),
    );
    specs
}
