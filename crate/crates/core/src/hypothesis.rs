//! Conditions (1) and (2) on a presentation with a commuting generating set
//! `T` of a free abelian subgroup, plus the ends classification.
//!
//! Commutation is read off the explicit commutator relators only. The rank
//! of `<T>` is asserted by the caller and recorded, not verified.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentations::Presentation;
use crate::words::{GeneratorId, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSpec {
    pub members: Vec<GeneratorId>,
    pub rank_assertion: usize,
}

impl TSpec {
    pub fn new(members: Vec<GeneratorId>) -> Self {
        let rank_assertion = members.len();
        TSpec {
            members,
            rank_assertion,
        }
    }

    pub fn from_names(p: &Presentation, names: &[&str]) -> Result<Self> {
        let members = names.iter().map(|n| p.gen(n)).collect::<Result<Vec<_>>>()?;
        Ok(TSpec::new(members))
    }

    pub fn contains(&self, g: GeneratorId) -> bool {
        self.members.contains(&g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisCertificate {
    /// Relator index -> `t_r`.
    pub t_assignment: BTreeMap<usize, GeneratorId>,
    /// Relator index -> letter generator -> `z_{r,s}`.
    pub z_witnesses: BTreeMap<usize, BTreeMap<GeneratorId, GeneratorId>>,
    pub rank_assertion: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HypothesisFailure {
    /// `|T|` below 3 or different from the asserted rank.
    Rank { members: usize, rank_assertion: usize },
    DuplicateMember(GeneratorId),
    /// Two members of `T` have no commutator relator. `witness` is the first
    /// relator mentioning both, if any.
    TNotCommuting {
        a: GeneratorId,
        b: GeneratorId,
        witness: Option<usize>,
    },
    BadRelatorIndex(usize),
    /// No `t` in `T` commutes with every letter of the relator.
    Condition1 { relator: usize },
    /// Every condition-1 candidate fails condition 2; reported for the first
    /// candidate and its first uncovered letter.
    Condition2 {
        relator: usize,
        t: GeneratorId,
        letter: GeneratorId,
    },
}

impl HypothesisFailure {
    pub fn describe(&self, p: &Presentation) -> String {
        let n = |g: &GeneratorId| p.gen_name(*g).to_string();
        match self {
            HypothesisFailure::Rank {
                members,
                rank_assertion,
            } => format!("T has {members} members, asserted rank {rank_assertion} (need >= 3 and equal)"),
            HypothesisFailure::DuplicateMember(g) => format!("T lists {} twice", n(g)),
            HypothesisFailure::TNotCommuting { a, b, witness } => match witness {
                Some(r) => format!(
                    "T members {} and {} do not commute; relator {r} = {} contains both",
                    n(a),
                    n(b),
                    p.format_word(&p.relators()[*r])
                ),
                None => format!("T members {} and {} do not commute", n(a), n(b)),
            },
            HypothesisFailure::BadRelatorIndex(i) => format!("relator index {i} out of range"),
            HypothesisFailure::Condition1 { relator } => format!(
                "condition (1) fails for relator {relator} = {}",
                p.format_word(&p.relators()[*relator])
            ),
            HypothesisFailure::Condition2 { relator, t, letter } => format!(
                "condition (2) fails for relator {relator} = {} with t = {}: no z commutes with {}",
                p.format_word(&p.relators()[*relator]),
                n(t),
                n(letter)
            ),
        }
    }
}

fn distinct_gens(r: &Word) -> Vec<GeneratorId> {
    let mut seen = BTreeSet::new();
    r.generators().filter(|g| seen.insert(*g)).collect()
}

fn check_t(p: &Presentation, t: &TSpec) -> std::result::Result<(), HypothesisFailure> {
    if t.members.len() < 3 || t.members.len() != t.rank_assertion {
        return Err(HypothesisFailure::Rank {
            members: t.members.len(),
            rank_assertion: t.rank_assertion,
        });
    }
    let mut seen = BTreeSet::new();
    for &m in &t.members {
        if !seen.insert(m) {
            return Err(HypothesisFailure::DuplicateMember(m));
        }
    }
    for (i, &a) in t.members.iter().enumerate() {
        for &b in &t.members[i + 1..] {
            if !p.commutes(a, b) {
                let witness = p
                    .relators()
                    .iter()
                    .position(|r| r.contains_gen(a) && r.contains_gen(b));
                return Err(HypothesisFailure::TNotCommuting { a, b, witness });
            }
        }
    }
    Ok(())
}

/// Witnesses for one relator given a candidate `t`, or the first letter
/// without a condition-2 witness.
fn witnesses_for(
    p: &Presentation,
    t: &TSpec,
    r: &Word,
    cand: GeneratorId,
) -> std::result::Result<BTreeMap<GeneratorId, GeneratorId>, GeneratorId> {
    let mut out = BTreeMap::new();
    for s in distinct_gens(r) {
        match t
            .members
            .iter()
            .copied()
            .find(|&z| z != cand && p.commutes(z, s))
        {
            Some(z) => {
                out.insert(s, z);
            }
            None => return Err(s),
        }
    }
    Ok(out)
}

/// Candidate order for `t_r`: members of `T` that are not letters of `r`
/// first (in `T` order), then the rest. Pushing a cell along one of its own
/// letters gives a degenerate prism, so those are only used as a fallback.
fn candidates(t: &TSpec, r: &Word) -> Vec<GeneratorId> {
    let (outside, inside): (Vec<_>, Vec<_>) =
        t.members.iter().copied().partition(|&g| !r.contains_gen(g));
    outside.into_iter().chain(inside).collect()
}

pub fn check_relator(
    p: &Presentation,
    t: &TSpec,
    index: usize,
) -> std::result::Result<(GeneratorId, BTreeMap<GeneratorId, GeneratorId>), HypothesisFailure> {
    let r = p
        .relators()
        .get(index)
        .ok_or(HypothesisFailure::BadRelatorIndex(index))?;
    let mut first_fail = None;
    for cand in candidates(t, r) {
        if !r.generators().all(|s| p.commutes(cand, s)) {
            continue;
        }
        match witnesses_for(p, t, r, cand) {
            Ok(z) => return Ok((cand, z)),
            Err(letter) => {
                first_fail.get_or_insert(HypothesisFailure::Condition2 {
                    relator: index,
                    t: cand,
                    letter,
                });
            }
        }
    }
    Err(first_fail.unwrap_or(HypothesisFailure::Condition1 { relator: index }))
}

/// Certifies conditions (1) and (2) for the relators in `r1`.
///
/// Relators are independent, so first-fit in the fixed candidate order finds
/// an assignment whenever one exists.
pub fn check_hypothesis(
    p: &Presentation,
    t: &TSpec,
    r1: &[usize],
) -> std::result::Result<HypothesisCertificate, HypothesisFailure> {
    check_t(p, t)?;
    let mut cert = HypothesisCertificate {
        t_assignment: BTreeMap::new(),
        z_witnesses: BTreeMap::new(),
        rank_assertion: t.rank_assertion,
    };
    for &i in r1 {
        let (tr, z) = check_relator(p, t, i)?;
        cert.t_assignment.insert(i, tr);
        cert.z_witnesses.insert(i, z);
    }
    Ok(cert)
}

pub fn all_relators(p: &Presentation) -> Vec<usize> {
    (0..p.relators().len()).collect()
}

/// Independent re-check of a certificate against the commutation edges.
pub fn verify_certificate(p: &Presentation, t: &TSpec, cert: &HypothesisCertificate) -> bool {
    let edges = p.commutation_graph().edges();
    let comm = |a: GeneratorId, b: GeneratorId| a == b || edges.contains(&(a.min(b), a.max(b)));
    if cert.rank_assertion < 3 || cert.rank_assertion != t.members.len() {
        return false;
    }
    for (i, &a) in t.members.iter().enumerate() {
        for &b in &t.members[i + 1..] {
            if a == b || !comm(a, b) {
                return false;
            }
        }
    }
    if cert.t_assignment.keys().ne(cert.z_witnesses.keys()) {
        return false;
    }
    for (&ri, &tr) in &cert.t_assignment {
        let Some(r) = p.relators().get(ri) else {
            return false;
        };
        if !t.members.contains(&tr) {
            return false;
        }
        let z = &cert.z_witnesses[&ri];
        for l in r.letters() {
            if !comm(tr, l.gen) {
                return false;
            }
            match z.get(&l.gen) {
                Some(&zs) if zs != tr && t.members.contains(&zs) && comm(zs, l.gen) => {}
                _ => return false,
            }
        }
        if z.keys().any(|g| !r.contains_gen(*g)) {
            return false;
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndsKind {
    InfiniteEndedSplit,
    OneEnded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndsVerdict {
    pub kind: EndsKind,
    pub free_letter: Option<GeneratorId>,
}

/// A generator missing from every relator splits off a free factor; otherwise
/// (given the hypothesis) the group is one-ended.
pub fn classify_ends(p: &Presentation, _t: &TSpec) -> EndsVerdict {
    let free = p
        .generator_ids()
        .find(|&g| !p.relators().iter().any(|r| r.contains_gen(g)));
    match free {
        Some(g) => EndsVerdict {
            kind: EndsKind::InfiniteEndedSplit,
            free_letter: Some(g),
        },
        None => EndsVerdict {
            kind: EndsKind::OneEnded,
            free_letter: None,
        },
    }
}

/// Exhaustive search for a `T` of the given size over generator subsets in
/// lexicographic order. Gives up after `cap` subsets.
pub fn search_t(p: &Presentation, size: usize, cap: usize) -> Option<(TSpec, HypothesisCertificate)> {
    let n = p.generator_count();
    if size > n || size < 3 {
        return None;
    }
    let r1 = all_relators(p);
    let mut idx: Vec<usize> = (0..size).collect();
    let mut tried = 0;
    loop {
        tried += 1;
        if tried > cap {
            return None;
        }
        let t = TSpec::new(idx.iter().map(|&i| GeneratorId(i as u32)).collect());
        if let Ok(c) = check_hypothesis(p, &t, &r1) {
            return Some((t, c));
        }
        // next combination
        let mut i = size;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - size + i {
                idx[i] += 1;
                for j in i + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub t_assignment: BTreeMap<usize, String>,
    pub z_witnesses: BTreeMap<usize, BTreeMap<String, String>>,
    pub rank_assertion: usize,
}

impl HypothesisCertificate {
    pub fn to_json(&self, p: &Presentation) -> CertificateJson {
        CertificateJson {
            t_assignment: self
                .t_assignment
                .iter()
                .map(|(&i, &g)| (i, p.gen_name(g).to_string()))
                .collect(),
            z_witnesses: self
                .z_witnesses
                .iter()
                .map(|(&i, m)| {
                    (
                        i,
                        m.iter()
                            .map(|(&s, &z)| (p.gen_name(s).to_string(), p.gen_name(z).to_string()))
                            .collect(),
                    )
                })
                .collect(),
            rank_assertion: self.rank_assertion,
        }
    }

    pub fn from_json(p: &Presentation, j: &CertificateJson) -> Result<Self> {
        let t_assignment = j
            .t_assignment
            .iter()
            .map(|(&i, g)| Ok((i, p.gen(g)?)))
            .collect::<Result<_>>()?;
        let z_witnesses = j
            .z_witnesses
            .iter()
            .map(|(&i, m)| {
                let inner = m
                    .iter()
                    .map(|(s, z)| Ok((p.gen(s)?, p.gen(z)?)))
                    .collect::<Result<_>>()?;
                Ok((i, inner))
            })
            .collect::<Result<_>>()?;
        if j.rank_assertion == 0 {
            return Err(Error::InvalidInput("rank_assertion must be positive".into()));
        }
        Ok(HypothesisCertificate {
            t_assignment,
            z_witnesses,
            rank_assertion: j.rank_assertion,
        })
    }
}
