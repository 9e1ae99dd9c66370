//! Finite presentations, their commutation structure and Tietze expansion.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{GeneratorId, Letter, Word};

/// Graph on generators with an edge for every explicit commutator relator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationGraph {
    n: usize,
    adjacency: Vec<bool>,
    edges: BTreeSet<(GeneratorId, GeneratorId)>,
}

impl CommutationGraph {
    fn new(n: usize) -> Self {
        CommutationGraph {
            n,
            adjacency: vec![false; n * n],
            edges: BTreeSet::new(),
        }
    }

    fn add(&mut self, a: GeneratorId, b: GeneratorId) {
        if a == b {
            return;
        }
        self.adjacency[a.index() * self.n + b.index()] = true;
        self.adjacency[b.index() * self.n + a.index()] = true;
        self.edges.insert((a.min(b), a.max(b)));
    }

    /// Self-commutation is always true.
    pub fn commutes(&self, a: GeneratorId, b: GeneratorId) -> bool {
        a == b || self.adjacency[a.index() * self.n + b.index()]
    }

    pub fn letters_commute(&self, a: Letter, b: Letter) -> bool {
        self.commutes(a.gen, b.gen)
    }

    /// Unordered edges `(a, b)` with `a < b`.
    pub fn edges(&self) -> &BTreeSet<(GeneratorId, GeneratorId)> {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelatorKind {
    Commutation,
    Artin,
    Star,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorClass {
    pub relator: Word,
    pub kind: RelatorKind,
}

/// `a b a^-1 b^-1` up to rotation and inversion, with distinct generators.
pub fn commutator_pair(r: &Word) -> Option<(GeneratorId, GeneratorId)> {
    let l = r.letters();
    if l.len() == 4 && l[2] == l[0].inv() && l[3] == l[1].inv() && l[0].gen != l[1].gen {
        Some((l[0].gen, l[1].gen))
    } else {
        None
    }
}

/// `p q p q^-1 p^-1 q^-1` up to rotation and inversion.
pub fn artin_pair(r: &Word) -> Option<(GeneratorId, GeneratorId)> {
    if r.len() != 6 {
        return None;
    }
    let inv = r.invert();
    for w in [r, &inv] {
        for k in 0..6 {
            let rot = w.rotate(k);
            let l = rot.letters();
            let (p, q) = (l[0], l[1]);
            if p.gen != q.gen
                && l[2] == p
                && l[3] == q.inv()
                && l[4] == p.inv()
                && l[5] == q.inv()
            {
                return Some((p.gen, q.gen));
            }
        }
    }
    None
}

pub fn commutator_word(a: Letter, b: Letter) -> Word {
    Word::new([a, b, a.inv(), b.inv()])
}

pub fn artin_word(a: Letter, b: Letter) -> Word {
    Word::new([a, b, a, b.inv(), a.inv(), b.inv()])
}

/// Finite presentation `<S | R>`.
#[derive(Clone, Debug)]
pub struct Presentation {
    name: String,
    generators: Vec<String>,
    index: HashMap<String, GeneratorId>,
    relators: Vec<Word>,
    star_tags: BTreeSet<usize>,
    commutation: OnceLock<CommutationGraph>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.generators == other.generators
            && self.relators == other.relators
            && self.star_tags == other.star_tags
    }
}

impl Presentation {
    /// Relators are freely and cyclically reduced on the way in.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<String>,
        relators: Vec<Word>,
        star_tags: BTreeSet<usize>,
    ) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if !valid_name(g) {
                return Err(Error::Parse(g.clone()));
            }
            if index.insert(g.clone(), GeneratorId(i as u32)).is_some() {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
        }
        let mut normalized = Vec::with_capacity(relators.len());
        for (i, r) in relators.into_iter().enumerate() {
            if let Some(l) = r.iter().find(|l| l.gen.index() >= generators.len()) {
                return Err(Error::UnknownGenerator(format!("#{}", l.gen.0)));
            }
            let (core, _) = r.cyclic_reduce();
            if core.is_empty() {
                return Err(Error::EmptyRelator(i));
            }
            normalized.push(core);
        }
        if let Some(&t) = star_tags.iter().find(|&&t| t >= normalized.len()) {
            return Err(Error::InvalidInput(format!("star tag {t} out of range")));
        }
        Ok(Presentation {
            name: name.into(),
            generators,
            index,
            relators: normalized,
            star_tags,
            commutation: OnceLock::new(),
        })
    }

    /// Convenience constructor from string relators, e.g. `"x y x^-1 y^-1"`.
    pub fn parse(name: &str, generators: &[&str], relators: &[&str]) -> Result<Self> {
        let gens: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let mut p = Presentation::new(name, gens, vec![], BTreeSet::new())?;
        let words = relators
            .iter()
            .map(|r| p.parse_word(r))
            .collect::<Result<Vec<_>>>()?;
        p = Presentation::new(name, p.generators, words, BTreeSet::new())?;
        Ok(p)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_ids(&self) -> impl Iterator<Item = GeneratorId> {
        (0..self.generators.len() as u32).map(GeneratorId)
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn star_tags(&self) -> &BTreeSet<usize> {
        &self.star_tags
    }

    pub fn gen(&self, name: &str) -> Result<GeneratorId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn gen_name(&self, g: GeneratorId) -> &str {
        &self.generators[g.index()]
    }

    /// All letters `s^{±1}`, positive before negative, in generator order.
    pub fn letters(&self) -> Vec<Letter> {
        self.generator_ids()
            .flat_map(|g| [Letter::pos(g), Letter::neg(g)])
            .collect()
    }

    pub fn commutation_graph(&self) -> &CommutationGraph {
        self.commutation.get_or_init(|| {
            let mut g = CommutationGraph::new(self.generators.len());
            for r in &self.relators {
                if let Some((a, b)) = commutator_pair(r) {
                    g.add(a, b);
                }
            }
            g
        })
    }

    pub fn commutes(&self, a: GeneratorId, b: GeneratorId) -> bool {
        self.commutation_graph().commutes(a, b)
    }

    /// Index of a relator equal to `w` up to rotation and inversion.
    pub fn find_relator(&self, w: &Word) -> Option<usize> {
        self.relators
            .iter()
            .position(|r| r.is_cyclic_conjugate_up_to_inverse(w))
    }

    pub fn classify_relators(&self) -> Vec<RelatorClass> {
        self.relators
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let kind = if commutator_pair(r).is_some() {
                    RelatorKind::Commutation
                } else if artin_pair(r).is_some() {
                    RelatorKind::Artin
                } else if self.star_tags.contains(&i) {
                    RelatorKind::Star
                } else {
                    RelatorKind::Other
                };
                RelatorClass {
                    relator: r.clone(),
                    kind,
                }
            })
            .collect()
    }

    /// Adds each `(t, w_t)` as a generator with defining relator `t · w_t^-1`.
    pub fn tietze_expand(&self, new_gens: &[(String, Word)]) -> Result<Presentation> {
        let mut generators = self.generators.clone();
        let mut relators = self.relators.clone();
        for (name, def) in new_gens {
            if let Some(l) = def.iter().find(|l| l.gen.index() >= self.generators.len()) {
                return Err(Error::UnknownGenerator(format!("#{}", l.gen.0)));
            }
            if generators.contains(name) {
                return Err(Error::DuplicateGenerator(name.clone()));
            }
            let t = GeneratorId(generators.len() as u32);
            generators.push(name.clone());
            relators.push(Word::letter(Letter::pos(t)).mul(&def.invert()));
        }
        Presentation::new(
            self.name.clone(),
            generators,
            relators,
            self.star_tags.clone(),
        )
    }

    /// Returns a copy with a different relator list (star tags dropped if out of range).
    pub fn with_relators(&self, relators: Vec<Word>, star_tags: BTreeSet<usize>) -> Result<Self> {
        Presentation::new(self.name.clone(), self.generators.clone(), relators, star_tags)
    }

    pub fn parse_letter_token(&self, tok: &str) -> Result<Word> {
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => {
                let e: i64 = e.parse().map_err(|_| Error::Parse(tok.to_string()))?;
                (n, e)
            }
            None => (tok, 1),
        };
        let g = self.gen(name)?;
        Ok(Word::power(Letter::pos(g), exp))
    }

    /// Parses whitespace separated tokens like `x^3 y^-1 z`. `1` or an empty
    /// string is the identity. The result is not reduced.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            letters.extend_from_slice(self.parse_letter_token(tok)?.letters());
        }
        Ok(Word::raw(letters))
    }

    pub fn format_letter(&self, l: Letter) -> String {
        if l.inverse {
            format!("{}^-1", self.gen_name(l.gen))
        } else {
            self.gen_name(l.gen).to_string()
        }
    }

    /// Exponent-compressed rendering, e.g. `x^3 y^-1`; `1` for the identity.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let l = w.letters();
        let mut i = 0;
        while i < l.len() {
            let mut j = i;
            while j < l.len() && l[j] == l[i] {
                j += 1;
            }
            let k = (j - i) as i64 * l[i].sign();
            let name = self.gen_name(l[i].gen);
            parts.push(if k == 1 {
                name.to_string()
            } else {
                format!("{name}^{k}")
            });
            i = j;
        }
        parts.join(" ")
    }

    /// JSON token form: one signed symbol per letter, `["x", "y^-1"]`.
    pub fn word_tokens(&self, w: &Word) -> Vec<String> {
        w.iter().map(|&l| self.format_letter(l)).collect()
    }

    pub fn word_from_tokens(&self, toks: &[String]) -> Result<Word> {
        let mut letters = Vec::new();
        for t in toks {
            letters.extend_from_slice(self.parse_letter_token(t)?.letters());
        }
        Ok(Word::raw(letters))
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            name: self.name.clone(),
            generators: self.generators.clone(),
            relators: self.relators.iter().map(|r| self.word_tokens(r)).collect(),
            star_tags: self.star_tags.iter().copied().collect(),
        }
    }

    pub fn from_json(j: &PresentationJson) -> Result<Self> {
        let shell = Presentation::new(j.name.clone(), j.generators.clone(), vec![], BTreeSet::new())?;
        let relators = j
            .relators
            .iter()
            .map(|r| shell.word_from_tokens(r))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(
            j.name.clone(),
            j.generators.clone(),
            relators,
            j.star_tags.iter().copied().collect(),
        )
    }

    /// Rejects relators of length 1 or 2 (needed before building diagrams).
    pub fn check_diagram_ready(&self) -> Result<()> {
        match self.relators.iter().position(|r| r.len() <= 2) {
            Some(i) => Err(Error::InvalidInput(format!(
                "relator {i} ({}) is too short for diagram use",
                self.format_word(&self.relators[i])
            ))),
            None => Ok(()),
        }
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s != "1"
        && s.chars().all(|c| c.is_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub name: String,
    pub generators: Vec<String>,
    pub relators: Vec<Vec<String>>,
    #[serde(default)]
    pub star_tags: Vec<usize>,
}
