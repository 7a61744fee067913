//! Prodiscrete topologies on finite groups and their completions.
//!
//! A family of subgroups generates the topology whose open subgroups are
//! those containing a finite intersection of conjugates of members. On a
//! finite group every such topology is "open iff contains `N`" for the
//! normal subgroup `N` cut out by all conjugates of all members, and the
//! completion is `G/N`.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::group::{panel_group, FiniteGroup, GroupError, PermutationGroup, Subgroup};

/// Default cap on the group order.
pub const DEFAULT_ORDER_CAP: usize = 1024;
/// Largest group whose full subgroup lattice [`correspondence_report`] enumerates.
pub const LATTICE_CAP: usize = 64;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ProdiscreteError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("group of order {order} is above the cap of {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("{axiom} fails: {detail}")]
    Axiom { axiom: &'static str, detail: String },
    #[error("unknown group name {0:?}")]
    UnknownGroup(String),
    #[error("family member {0} is given by permutations but the group is not a permutation group")]
    NotPermutations(usize),
    #[error("permutation {0:?} is not in the group")]
    NotAnElement(Vec<usize>),
}

/// A family of subgroups of one group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SubgroupFamily {
    members: Vec<Subgroup>,
}

impl SubgroupFamily {
    /// Validates each element list as a subgroup of `group`.
    pub fn new(group: &FiniteGroup, members: &[Vec<usize>]) -> Result<Self, ProdiscreteError> {
        let members = members.iter().map(|m| group.subgroup(m)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self { members })
    }

    /// Members given by generating elements.
    pub fn generated_by(group: &FiniteGroup, generators: &[Vec<usize>]) -> Result<Self, ProdiscreteError> {
        let mut members = Vec::new();
        for gens in generators {
            for &g in gens {
                group.check_element(g)?;
            }
            members.push(group.generated_subgroup(gens));
        }
        Ok(Self { members })
    }

    pub fn from_subgroups(members: Vec<Subgroup>) -> Self {
        Self { members }
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn all_normal(&self, group: &FiniteGroup) -> bool {
        self.members.iter().all(|h| group.is_normal(h))
    }
}

/// The topology generated by a family, held as its basis: the closure `M`
/// of the conjugates of the members (and of `G`) under intersection. A
/// subgroup is open iff it contains a member of `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Topology {
    basis: Vec<Subgroup>,
}

impl Topology {
    pub fn basis(&self) -> &[Subgroup] {
        &self.basis
    }

    pub fn is_open(&self, h: &Subgroup) -> bool {
        self.basis.iter().any(|m| m.is_subset(h))
    }

    /// The smallest basis member: the intersection of all open subgroups.
    pub fn core(&self) -> &Subgroup {
        self.basis.iter().min_by_key(|m| m.order()).expect("the whole group is always in the basis")
    }

    /// Every open subgroup, sorted.
    pub fn open_subgroups(&self, group: &FiniteGroup) -> Vec<Subgroup> {
        group.overgroups(&self.basis)
    }
}

fn check_cap(group: &FiniteGroup, cap: usize) -> Result<(), ProdiscreteError> {
    if group.order() > cap {
        Err(ProdiscreteError::TooLarge { order: group.order(), cap })
    } else {
        Ok(())
    }
}

/// The topology generated by `family`. Its basis is closed under
/// conjugation and intersection; open subgroups are enumerated on demand.
pub fn generate_topology(group: &FiniteGroup, family: &SubgroupFamily, cap: usize) -> Result<Topology, ProdiscreteError> {
    check_cap(group, cap)?;
    let mut found: BTreeSet<Subgroup> = BTreeSet::from([group.whole()]);
    for h in family.members() {
        for g in 0..group.order() {
            found.insert(group.conjugate_subgroup(g, h));
        }
    }
    let mut all: Vec<Subgroup> = found.iter().cloned().collect();
    let mut next = 0;
    while next < all.len() {
        let a = all[next].clone();
        next += 1;
        for i in 0..all.len() {
            let c = a.intersection(&all[i]);
            if found.insert(c.clone()) {
                all.push(c);
            }
        }
    }
    Ok(Topology { basis: found.into_iter().collect() })
}

/// Checks the three axioms on the enumerated open subgroups: closed under
/// intersection (Top1), under conjugation (Top2) and under passing to
/// overgroups (Top3). Members of `family` must be open.
pub fn verify_axioms(group: &FiniteGroup, topology: &Topology, family: &SubgroupFamily) -> Result<(), ProdiscreteError> {
    let open = topology.open_subgroups(group);
    let set: BTreeSet<&Subgroup> = open.iter().collect();
    let fail = |axiom, detail: String| Err(ProdiscreteError::Axiom { axiom, detail });
    if !set.contains(&group.whole()) {
        return fail("Top3", "the whole group is not open".into());
    }
    for u in &open {
        if !topology.is_open(u) {
            return fail("basis", format!("{:?} enumerated but not over a basis member", u.elements()));
        }
        for v in &open {
            if !set.contains(&u.intersection(v)) {
                return fail("Top1", format!("{:?} ∩ {:?} is not open", u.elements(), v.elements()));
            }
        }
        for g in 0..group.order() {
            if !set.contains(&group.conjugate_subgroup(g, u)) {
                return fail("Top2", format!("a conjugate of {:?} is not open", u.elements()));
            }
            // Every overgroup is reached by adjoining one element at a time.
            if !u.contains(g) && !set.contains(&group.join(u, g)) {
                return fail("Top3", format!("an overgroup of {:?} is not open", u.elements()));
            }
        }
    }
    if let Some(h) = family.members().iter().find(|h| !set.contains(h)) {
        return fail("generation", format!("member {:?} is not open", h.elements()));
    }
    Ok(())
}

/// `G/N` with `N` the intersection of all open subgroups.
#[derive(Clone, Debug)]
pub struct Completion {
    pub kernel: Subgroup,
    pub group: FiniteGroup,
    /// Element of `G` -> element of `G/N`.
    pub projection: Vec<usize>,
}

/// The completion of `group` for the topology generated by `family`.
pub fn completion(group: &FiniteGroup, family: &SubgroupFamily, cap: usize) -> Result<Completion, ProdiscreteError> {
    let topology = generate_topology(group, family, cap)?;
    Ok(completion_of(group, &topology))
}

fn completion_of(group: &FiniteGroup, topology: &Topology) -> Completion {
    let kernel = topology.core().clone();
    debug_assert!(group.is_normal(&kernel));
    let (quotient, projection) = group.quotient(&kernel);
    Completion { kernel, group: quotient, projection }
}

/// What [`correspondence_report`] verified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub group_order: usize,
    pub completion_order: usize,
    pub kernel_order: usize,
    pub kernel_normal: bool,
    pub open_in_group: usize,
    pub open_in_completion: usize,
    /// Preimage is a bijection from open subgroups of `G/N` onto open
    /// subgroups of `G`.
    pub bijective: bool,
    pub normality_preserved: bool,
    pub index_preserved: bool,
    pub axioms_hold: bool,
    /// With a normal family: `G/N` agrees with the inverse limit of the
    /// quotients by basis members (`None` when the family is not normal).
    pub classical_limit_matches: Option<bool>,
}

impl CorrespondenceReport {
    pub fn ok(&self) -> bool {
        self.kernel_normal
            && self.bijective
            && self.normality_preserved
            && self.index_preserved
            && self.axioms_hold
            && self.classical_limit_matches != Some(false)
    }
}

/// Checks by enumeration that `U -> preimage(U)` is a bijection from the
/// open subgroups of the completion (quotient topology) onto the open
/// subgroups of `G`, preserving normality and index.
pub fn correspondence_report(group: &FiniteGroup, family: &SubgroupFamily) -> Result<CorrespondenceReport, ProdiscreteError> {
    check_cap(group, LATTICE_CAP)?;
    let topology = generate_topology(group, family, LATTICE_CAP)?;
    let axioms_hold = verify_axioms(group, &topology, family).is_ok();
    let open: BTreeSet<Subgroup> = topology.open_subgroups(group).into_iter().collect();
    let c = completion_of(group, &topology);
    let q = &c.group;

    let preimage = |u: &Subgroup| -> Subgroup {
        group.subgroup(&(0..group.order()).filter(|&g| u.contains(c.projection[g])).collect::<Vec<_>>()).expect("preimage of a subgroup")
    };
    let mut images = BTreeSet::new();
    let mut normality_preserved = true;
    let mut index_preserved = true;
    let mut open_in_completion = 0;
    for u in q.all_subgroups() {
        let p = preimage(&u);
        if !open.contains(&p) {
            continue;
        }
        open_in_completion += 1;
        normality_preserved &= q.is_normal(&u) == group.is_normal(&p);
        index_preserved &= q.order() / u.order() == group.order() / p.order();
        images.insert(p);
    }
    let bijective = images.len() == open_in_completion && images == open;

    let classical_limit_matches =
        family.all_normal(group).then(|| inverse_limit_order(group, topology.basis()) == q.order() && kernel_of_product(group, topology.basis()) == c.kernel);

    Ok(CorrespondenceReport {
        group_order: group.order(),
        completion_order: q.order(),
        kernel_order: c.kernel.order(),
        kernel_normal: group.is_normal(&c.kernel),
        open_in_group: open.len(),
        open_in_completion,
        bijective,
        normality_preserved,
        index_preserved,
        axioms_hold,
        classical_limit_matches,
    })
}

/// Elements mapping to the identity in every `G/N_i`.
fn kernel_of_product(group: &FiniteGroup, normals: &[Subgroup]) -> Subgroup {
    let elements: Vec<usize> = (0..group.order()).filter(|&g| normals.iter().all(|n| n.contains(g))).collect();
    group.subgroup(&elements).expect("intersection of subgroups")
}

/// Number of compatible families `(c_i)` of cosets `c_i ∈ G/N_i` — a
/// family is compatible when `c_i ⊆ c_j` whenever `N_i ⊆ N_j` — found by
/// backtracking.
fn inverse_limit_order(group: &FiniteGroup, normals: &[Subgroup]) -> usize {
    let quotients: Vec<(Vec<usize>, usize)> = normals
        .iter()
        .map(|n| {
            let (q, proj) = group.quotient(n);
            (proj, q.order())
        })
        .collect();
    // A coset of N_i is named by the least element of G mapping to it.
    let reps: Vec<HashMap<usize, usize>> = quotients
        .iter()
        .map(|(proj, _)| {
            let mut m = HashMap::new();
            for g in 0..group.order() {
                m.entry(proj[g]).or_insert(g);
            }
            m
        })
        .collect();
    fn extend(
        i: usize,
        chosen: &mut Vec<usize>,
        normals: &[Subgroup],
        quotients: &[(Vec<usize>, usize)],
        reps: &[HashMap<usize, usize>],
    ) -> usize {
        if i == normals.len() {
            return 1;
        }
        let mut total = 0;
        for c in 0..quotients[i].1 {
            let rep = reps[i][&c];
            let compatible = (0..i).all(|j| {
                let rep_j = reps[j][&chosen[j]];
                if normals[i].is_subset(&normals[j]) {
                    quotients[j].0[rep] == chosen[j]
                } else if normals[j].is_subset(&normals[i]) {
                    quotients[i].0[rep_j] == c
                } else {
                    true
                }
            });
            if compatible {
                chosen.push(c);
                total += extend(i + 1, chosen, normals, quotients, reps);
                chosen.pop();
            }
        }
        total
    }
    extend(0, &mut Vec::new(), normals, &quotients, &reps)
}

/// A group as a multiplication table, permutation generators, or a panel
/// name.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupJson {
    Table { table: Vec<Vec<usize>> },
    Permutations { permutations: Vec<Vec<usize>> },
    Named { name: String },
}

/// A family member: element indices, generating elements, or (for
/// permutation groups) generating permutations.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MemberJson {
    Elements(Vec<usize>),
    GeneratedBy { generated_by: Vec<usize> },
    GeneratedByPermutations { generated_by_permutations: Vec<Vec<usize>> },
}

/// `{"group": <group>, "family": [<member>, ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProdiscreteJson {
    pub group: GroupJson,
    #[serde(default)]
    pub family: Vec<MemberJson>,
}

impl ProdiscreteJson {
    pub fn build(&self, cap: usize) -> Result<(FiniteGroup, SubgroupFamily), ProdiscreteError> {
        let mut perms: Option<PermutationGroup> = None;
        let group = match &self.group {
            GroupJson::Table { table } => FiniteGroup::from_table(table)?,
            GroupJson::Permutations { permutations } => {
                let degree = permutations.first().map_or(0, Vec::len);
                let p = PermutationGroup::generate(degree, permutations, cap)?;
                let g = p.group().clone();
                perms = Some(p);
                g
            }
            GroupJson::Named { name } => panel_group(name).ok_or_else(|| ProdiscreteError::UnknownGroup(name.clone()))?,
        };
        check_cap(&group, cap)?;
        let mut members = Vec::new();
        for (i, m) in self.family.iter().enumerate() {
            members.push(match m {
                MemberJson::Elements(e) => group.subgroup(e)?,
                MemberJson::GeneratedBy { generated_by } => {
                    for &g in generated_by {
                        group.check_element(g)?;
                    }
                    group.generated_subgroup(generated_by)
                }
                MemberJson::GeneratedByPermutations { generated_by_permutations } => {
                    let p = perms.as_ref().ok_or(ProdiscreteError::NotPermutations(i))?;
                    let gens = generated_by_permutations
                        .iter()
                        .map(|q| p.index_of(q).ok_or_else(|| ProdiscreteError::NotAnElement(q.clone())))
                        .collect::<Result<Vec<_>, _>>()?;
                    group.generated_subgroup(&gens)
                }
            });
        }
        Ok((group, SubgroupFamily::from_subgroups(members)))
    }
}
