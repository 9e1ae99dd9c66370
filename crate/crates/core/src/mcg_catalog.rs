//! The genus-3 Gervais presentation and the connectivity-at-infinity table
//! for mapping class groups.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypothesis::{
    all_relators, check_hypothesis, verify_certificate, HypothesisCertificate, TSpec,
};
use crate::presentations::{artin_word, commutator_word, Presentation};
use crate::words::{GeneratorId, Letter, Word};

/// Non-commuting pairs `(x : y1, ..., yn)`; every other pair commutes.
const NONCOMMUTING: &[(&str, &[&str])] = &[
    ("b", &["a1", "a2", "a3", "a4"]),
    ("b1", &["a2"]),
    ("b2", &["a4"]),
    ("c12", &["b1"]),
    ("c13", &["a2", "c24", "c21"]),
    ("c14", &["a2", "a3", "b2", "c21", "c31", "c32", "c42", "c43"]),
    ("c21", &["b1", "a3", "a4", "c32", "c42"]),
    ("c23", &["b1"]),
    ("c24", &["b1", "b2", "a3", "c31", "c32", "c43"]),
    ("c31", &["a4", "c42", "c43"]),
    ("c32", &["a4", "a1", "b1", "c43"]),
    ("c34", &["b2"]),
    ("c41", &["b2"]),
    ("c42", &["b2", "a1", "b1"]),
    ("c43", &["b2", "a1", "a2"]),
];

pub const GERVAIS_T: [&str; 3] = ["c12", "c34", "c13"];

pub fn generator_names() -> Vec<String> {
    let mut g: Vec<String> = ["a1", "a2", "a3", "a4", "b", "b1", "b2"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for i in 1..=4 {
        for j in 1..=4 {
            if i != j {
                g.push(format!("c{i}{j}"));
            }
        }
    }
    g
}

/// Unordered non-commuting pairs by name, sorted.
pub fn noncommuting_pairs() -> BTreeSet<(String, String)> {
    NONCOMMUTING
        .iter()
        .flat_map(|(x, ys)| {
            ys.iter().map(move |y| {
                let (a, b) = if *x < *y { (*x, *y) } else { (*y, *x) };
                (a.to_string(), b.to_string())
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GervaisSpec {
    pub noncommuting_pairs: BTreeSet<(String, String)>,
    pub good_triples: Vec<(u8, u8, u8)>,
}

impl GervaisSpec {
    pub fn new(good_triples: Vec<(u8, u8, u8)>) -> Self {
        GervaisSpec {
            noncommuting_pairs: noncommuting_pairs(),
            good_triples,
        }
    }

    /// Adds an extra non-commuting pair (used to mutate the data).
    pub fn with_extra_pair(mut self, a: &str, b: &str) -> Self {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.noncommuting_pairs.insert((a.to_string(), b.to_string()));
        self
    }

    pub fn build(&self) -> Result<Presentation> {
        let names = generator_names();
        let shell = Presentation::new("gervais3", names.clone(), vec![], BTreeSet::new())?;
        let gen = |n: &str| Letter::pos(shell.gen(n).expect("known generator"));
        for (a, b) in &self.noncommuting_pairs {
            shell.gen(a)?;
            shell.gen(b)?;
        }
        let mut relators = Vec::new();
        for (i, a) in names.iter().enumerate() {
            for b in &names[i + 1..] {
                let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
                if self.noncommuting_pairs.contains(&key) {
                    relators.push(artin_word(gen(a), gen(b)));
                } else {
                    relators.push(commutator_word(gen(a), gen(b)));
                }
            }
        }
        let mut star_tags = BTreeSet::new();
        for &(i, j, k) in &self.good_triples {
            star_tags.insert(relators.len());
            relators.push(star_word(&shell, (i, j, k))?);
        }
        Presentation::new("gervais3", names, relators, star_tags)
    }
}

impl Default for GervaisSpec {
    fn default() -> Self {
        GervaisSpec::new(default_triples())
    }
}

/// All ordered triples of distinct indices from {1,2,3,4}.
pub fn default_triples() -> Vec<(u8, u8, u8)> {
    let mut out = Vec::new();
    for i in 1..=4u8 {
        for j in 1..=4u8 {
            for k in 1..=4u8 {
                if i != j && j != k && i != k {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

fn c_letter(p: &Presentation, i: u8, j: u8) -> Result<Option<Letter>> {
    if i == j {
        // only c_{1,1} is allowed, and it is the identity
        return if i == 1 {
            Ok(None)
        } else {
            Err(Error::InvalidInput(format!("c{i}{j} is not a generator")))
        };
    }
    Ok(Some(Letter::pos(p.gen(&format!("c{i}{j}"))?)))
}

/// `c_{i,j} c_{j,k} c_{k,i} (a_i a_j a_k b)^-3`.
pub fn star_word(p: &Presentation, (i, j, k): (u8, u8, u8)) -> Result<Word> {
    for idx in [i, j, k] {
        if !(1..=4).contains(&idx) {
            return Err(Error::InvalidInput(format!("triple index {idx} not in 1..=4")));
        }
    }
    let mut letters = Vec::new();
    for (u, v) in [(i, j), (j, k), (k, i)] {
        letters.extend(c_letter(p, u, v)?);
    }
    let block: Vec<Letter> = [format!("a{i}"), format!("a{j}"), format!("a{k}"), "b".into()]
        .iter()
        .map(|n| p.gen(n).map(Letter::pos))
        .collect::<Result<_>>()?;
    let block = Word::new(block).invert();
    for _ in 0..3 {
        letters.extend_from_slice(block.letters());
    }
    let (core, _) = Word::new(letters).cyclic_reduce();
    Ok(core)
}

pub fn gervais_genus3(good_triples: Vec<(u8, u8, u8)>) -> Result<Presentation> {
    GervaisSpec::new(good_triples).build()
}

pub fn gervais_t(p: &Presentation) -> Result<TSpec> {
    TSpec::from_names(p, &GERVAIS_T)
}

/// The hand assignment: star -> c12; [b1,b2] -> c13; relators without b1 ->
/// c12; relators with b1 -> c34, with the matching z-witnesses.
pub fn hand_assignment(p: &Presentation) -> Result<HypothesisCertificate> {
    let g = |n: &str| p.gen(n);
    let (c12, c34, c13) = (g("c12")?, g("c34")?, g("c13")?);
    let (b1, b2) = (g("b1")?, g("b2")?);
    let b1b2 = commutator_word(Letter::pos(b1), Letter::pos(b2));
    let mut t_assignment = BTreeMap::new();
    let mut z_witnesses = BTreeMap::new();
    for (i, r) in p.relators().iter().enumerate() {
        let gens: BTreeSet<GeneratorId> = r.generators().collect();
        let (t, z): (GeneratorId, BTreeMap<GeneratorId, GeneratorId>) = if p.star_tags().contains(&i) {
            (c12, gens.iter().map(|&s| (s, c34)).collect())
        } else if r.is_cyclic_conjugate_up_to_inverse(&b1b2) {
            (c13, BTreeMap::from([(b1, c34), (b2, c12)]))
        } else if !gens.contains(&b1) {
            (
                c12,
                gens.iter()
                    .map(|&s| (s, if s == b2 { c13 } else { c34 }))
                    .collect(),
            )
        } else {
            (
                c34,
                gens.iter()
                    .map(|&s| (s, if s == b1 { c13 } else { c12 }))
                    .collect(),
            )
        };
        t_assignment.insert(i, t);
        z_witnesses.insert(i, z);
    }
    Ok(HypothesisCertificate {
        t_assignment,
        z_witnesses,
        rank_assertion: 3,
    })
}

#[derive(Clone, Debug)]
pub struct GervaisVerification {
    pub presentation: Presentation,
    pub greedy: HypothesisCertificate,
    pub hand: HypothesisCertificate,
}

/// Runs the checker with `T = {c12, c34, c13}` and re-verifies both the
/// greedy certificate and the hand assignment.
pub fn verify_gervais_hypothesis_with(good_triples: Vec<(u8, u8, u8)>) -> Result<GervaisVerification> {
    let p = gervais_genus3(good_triples)?;
    let t = gervais_t(&p)?;
    let greedy = check_hypothesis(&p, &t, &all_relators(&p))
        .map_err(|f| Error::InvalidInput(f.describe(&p)))?;
    if !verify_certificate(&p, &t, &greedy) {
        return Err(Error::InvalidInput("greedy certificate does not re-verify".into()));
    }
    let hand = hand_assignment(&p)?;
    if !verify_certificate(&p, &t, &hand) {
        return Err(Error::InvalidInput("hand assignment does not verify".into()));
    }
    Ok(GervaisVerification {
        presentation: p,
        greedy,
        hand,
    })
}

pub fn verify_gervais_hypothesis() -> Result<GervaisVerification> {
    verify_gervais_hypothesis_with(default_triples())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MCGSignature {
    pub g: u32,
    pub r: u32,
    pub s: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MCGKind {
    Finite,
    VirtuallyFreeInfinite,
    FreeByFreeVirtual,
    ConnectedAtInfinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MCGClassification {
    pub kind: MCGKind,
    /// `d(g,r,s) - 2` for the connected-at-infinity case.
    pub connectivity_degree: Option<i64>,
}

const VIRTUALLY_FREE: [(u32, u32, u32); 6] =
    [(0, 0, 4), (0, 1, 1), (0, 1, 2), (0, 2, 0), (1, 0, 0), (1, 0, 1)];
const FREE_BY_FREE: [(u32, u32, u32); 5] = [(0, 0, 5), (0, 1, 3), (0, 2, 1), (1, 1, 0), (1, 0, 2)];

/// Virtual cohomological dimension style index `d(g, r, s)`.
pub fn d_index(sig: MCGSignature) -> i64 {
    let (g, r, s) = (sig.g as i64, sig.r as i64, sig.s as i64);
    if g == 0 {
        2 * r + s - 3
    } else if r + s > 0 {
        4 * g + 2 * r + s - 4
    } else {
        4 * g - 5
    }
}

pub fn classify_mcg(sig: MCGSignature) -> MCGClassification {
    let key = (sig.g, sig.r, sig.s);
    let finite = (sig.g == 0 && sig.r == 0 && sig.s <= 3) || (sig.g == 0 && sig.r == 1 && sig.s == 0);
    let kind = if finite {
        MCGKind::Finite
    } else if VIRTUALLY_FREE.contains(&key) {
        MCGKind::VirtuallyFreeInfinite
    } else if FREE_BY_FREE.contains(&key) {
        MCGKind::FreeByFreeVirtual
    } else {
        MCGKind::ConnectedAtInfinity
    };
    MCGClassification {
        kind,
        connectivity_degree: (kind == MCGKind::ConnectedAtInfinity).then(|| d_index(sig) - 2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::RelatorKind;

    #[test]
    fn generator_count() {
        let p = gervais_genus3(default_triples()).unwrap();
        assert_eq!(p.generator_count(), 19);
    }

    #[test]
    fn c12_commutes_with_all_but_b1() {
        let p = gervais_genus3(default_triples()).unwrap();
        let c12 = p.gen("c12").unwrap();
        for g in p.generator_ids() {
            let expected = p.gen_name(g) != "b1";
            assert_eq!(p.commutes(c12, g), expected, "{}", p.gen_name(g));
        }
    }

    #[test]
    fn noncommutation_matches_list_exactly() {
        let p = gervais_genus3(vec![]).unwrap();
        let list = noncommuting_pairs();
        let names = p.generators().to_vec();
        let mut missing = BTreeSet::new();
        for (i, a) in names.iter().enumerate() {
            for b in &names[i + 1..] {
                if !p.commutes(p.gen(a).unwrap(), p.gen(b).unwrap()) {
                    let k = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
                    missing.insert(k);
                }
            }
        }
        assert_eq!(missing, list);
        let artin = p
            .classify_relators()
            .iter()
            .filter(|c| c.kind == RelatorKind::Artin)
            .count();
        assert_eq!(artin, list.len());
    }

    #[test]
    fn star_words_avoid_b1_b2() {
        let p = gervais_genus3(default_triples()).unwrap();
        let b1 = p.gen("b1").unwrap();
        let b2 = p.gen("b2").unwrap();
        assert_eq!(p.star_tags().len(), 24);
        for &i in p.star_tags() {
            let r = &p.relators()[i];
            assert!(!r.contains_gen(b1) && !r.contains_gen(b2));
            assert!(r.generators().all(|g| {
                let n = p.gen_name(g);
                n.starts_with('c') || n.starts_with('a') || n == "b"
            }));
            assert_eq!(p.classify_relators()[i].kind, RelatorKind::Star);
        }
        let w = star_word(&p, (1, 2, 3)).unwrap();
        assert_eq!(p.format_word(&w), "c12 c23 c31 b^-1 a3^-1 a2^-1 a1^-1 b^-1 a3^-1 a2^-1 a1^-1 b^-1 a3^-1 a2^-1 a1^-1");
    }

    #[test]
    fn c11_convention_and_bad_triples() {
        let p = gervais_genus3(vec![]).unwrap();
        let w = star_word(&p, (1, 1, 2)).unwrap();
        assert_eq!(&p.format_word(&w)[..8], "c12 c21 ");
        assert!(star_word(&p, (2, 2, 3)).is_err());
        assert!(star_word(&p, (0, 1, 2)).is_err());
        assert!(gervais_genus3(vec![(1, 5, 2)]).is_err());
    }

    #[test]
    fn empty_triples_only_commutation_and_artin() {
        let p = gervais_genus3(vec![]).unwrap();
        assert!(p
            .classify_relators()
            .iter()
            .all(|c| matches!(c.kind, RelatorKind::Commutation | RelatorKind::Artin)));
        assert_eq!(p.relators().len(), 19 * 18 / 2);
    }

    #[test]
    fn gervais_hypothesis_holds() {
        let v = verify_gervais_hypothesis().unwrap();
        let p = &v.presentation;
        let n = |g: GeneratorId| p.gen_name(g).to_string();
        let c12 = p.gen("c12").unwrap();
        for &i in p.star_tags() {
            let t = v.greedy.t_assignment[&i];
            if p.relators()[i].contains_gen(c12) {
                assert_eq!(n(t), "c34");
            } else {
                assert_eq!(n(t), "c12");
            }
            // c34 is available as z for every letter under the hand assignment
            assert!(v.hand.z_witnesses[&i].values().all(|&z| n(z) == "c34"));
        }
        let b1 = Letter::pos(p.gen("b1").unwrap());
        let b2 = Letter::pos(p.gen("b2").unwrap());
        let a2 = Letter::pos(p.gen("a2").unwrap());
        let ib = p.find_relator(&commutator_word(b1, b2)).unwrap();
        assert_eq!(n(v.greedy.t_assignment[&ib]), "c13");
        assert_eq!(n(v.greedy.z_witnesses[&ib][&b1.gen]), "c34");
        assert_eq!(n(v.greedy.z_witnesses[&ib][&b2.gen]), "c12");
        let ia = p.find_relator(&artin_word(b1, a2)).unwrap();
        assert_eq!(n(v.greedy.t_assignment[&ia]), "c34");
        assert_eq!(n(v.greedy.z_witnesses[&ia][&b1.gen]), "c13");
        assert_eq!(n(v.greedy.z_witnesses[&ia][&a2.gen]), "c12");
    }

    #[test]
    fn c13_on_star_is_rejected() {
        let v = verify_gervais_hypothesis().unwrap();
        let p = &v.presentation;
        let t = gervais_t(p).unwrap();
        let a2 = p.gen("a2").unwrap();
        let star = *p
            .star_tags()
            .iter()
            .find(|&&i| p.relators()[i].contains_gen(a2))
            .unwrap();
        let mut bad = v.hand.clone();
        bad.t_assignment.insert(star, p.gen("c13").unwrap());
        assert!(!verify_certificate(p, &t, &bad));
    }

    #[test]
    fn mcg_examples() {
        let c = |g, r, s| classify_mcg(MCGSignature { g, r, s });
        assert_eq!(c(0, 0, 3).kind, MCGKind::Finite);
        assert_eq!(c(0, 1, 0).kind, MCGKind::Finite);
        assert_eq!(c(1, 1, 0).kind, MCGKind::FreeByFreeVirtual);
        assert_eq!(c(1, 0, 0).kind, MCGKind::VirtuallyFreeInfinite);
        assert_eq!(c(3, 0, 0), MCGClassification {
            kind: MCGKind::ConnectedAtInfinity,
            connectivity_degree: Some(5)
        });
        assert_eq!(c(4, 0, 0).connectivity_degree, Some(9));
        for g in 3..10 {
            assert_eq!(c(g, 0, 0).connectivity_degree, Some(4 * g as i64 - 7));
        }
    }
}
