use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentations::{commutator_word, Presentation};
use crate::words::{GeneratorId, Letter, Word};

/// Word-problem engine for a concrete group. Elements are represented by
/// their normal forms.
///
/// Contract: the normal form of an element is a geodesic word, and every
/// subgroup generated by pairwise commuting generators is isometrically
/// embedded (its word metric equals the restriction of the ambient one).
/// Both provided oracles satisfy this; the truncation bounds elsewhere rely
/// on it.
pub trait GroupOracle: Send + Sync {
    fn name(&self) -> &str;

    fn presentation(&self) -> &Presentation;

    /// Serializable description from which the oracle can be rebuilt.
    fn spec(&self) -> GroupSpec;

    fn normal_form(&self, w: &Word) -> Word;

    fn mul(&self, a: &Word, b: &Word) -> Word {
        self.normal_form(&a.concat_raw(b))
    }

    fn mul_letter(&self, a: &Word, l: Letter) -> Word {
        self.normal_form(&a.concat_raw(&Word::letter(l)))
    }

    fn inverse(&self, a: &Word) -> Word {
        self.normal_form(&a.invert())
    }

    /// `|g|`, the word length of `g`.
    fn distance(&self, g: &Word) -> usize {
        self.normal_form(g).len()
    }

    /// `d(v, w) = |v^-1 w|`.
    fn dist(&self, v: &Word, w: &Word) -> usize {
        self.distance(&v.invert().concat_raw(w))
    }

    /// Exponents of `g` over `gens` if `g` lies in the subgroup they
    /// generate. `gens` must pairwise commute.
    fn subgroup_coordinates(&self, g: &Word, gens: &[GeneratorId]) -> Option<Vec<i64>> {
        let nf = self.normal_form(g);
        if nf.generators().all(|x| gens.contains(&x)) {
            Some(gens.iter().map(|&x| nf.exponent_sum(x)).collect())
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    FreeAbelian { generators: Vec<String> },
    Raag { graph: RaagGraphJson },
}

impl GroupSpec {
    pub fn build(&self) -> Result<Box<dyn GroupOracle>> {
        Ok(match self {
            GroupSpec::FreeAbelian { generators } => {
                let g: Vec<&str> = generators.iter().map(String::as_str).collect();
                Box::new(FreeAbelian::new(&g)?)
            }
            GroupSpec::Raag { graph } => Box::new(Raag::from_json(graph)?),
        })
    }
}

/// `Z^n` with its standard presentation.
#[derive(Clone, Debug)]
pub struct FreeAbelian {
    name: String,
    presentation: Presentation,
}

impl FreeAbelian {
    pub fn new(names: &[&str]) -> Result<Self> {
        let gens: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let n = gens.len();
        let mut relators = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                relators.push(commutator_word(
                    Letter::pos(GeneratorId(i as u32)),
                    Letter::pos(GeneratorId(j as u32)),
                ));
            }
        }
        let name = format!("z{n}");
        Ok(FreeAbelian {
            presentation: Presentation::new(name.clone(), gens, relators, BTreeSet::new())?,
            name,
        })
    }

    /// `Z^n` on `x, y, z, w` (n ≤ 4).
    pub fn standard(n: usize) -> Self {
        const NAMES: [&str; 4] = ["x", "y", "z", "w"];
        assert!((1..=4).contains(&n), "standard Z^n needs 1 <= n <= 4");
        FreeAbelian::new(&NAMES[..n]).expect("valid names")
    }

    pub fn exponents(&self, w: &Word) -> Vec<i64> {
        let mut e = vec![0i64; self.presentation.generator_count()];
        for l in w {
            e[l.gen.index()] += l.sign();
        }
        e
    }

    pub fn element(&self, exps: &[i64]) -> Word {
        let mut letters = Vec::new();
        for (i, &k) in exps.iter().enumerate() {
            letters.extend(Word::power(Letter::pos(GeneratorId(i as u32)), k).letters());
        }
        Word::raw(letters)
    }
}

impl GroupOracle for FreeAbelian {
    fn name(&self) -> &str {
        &self.name
    }

    fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn spec(&self) -> GroupSpec {
        GroupSpec::FreeAbelian {
            generators: self.presentation.generators().to_vec(),
        }
    }

    fn normal_form(&self, w: &Word) -> Word {
        self.element(&self.exponents(w))
    }

    fn distance(&self, g: &Word) -> usize {
        self.exponents(g).iter().map(|k| k.unsigned_abs() as usize).sum()
    }
}

/// Right-angled Artin group on a simple graph.
#[derive(Clone, Debug)]
pub struct Raag {
    name: String,
    presentation: Presentation,
    n: usize,
    adjacent: Vec<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RaagGraphJson {
    #[serde(default)]
    pub name: Option<String>,
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl Raag {
    pub fn new(name: &str, vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let gens: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let shell = Presentation::new(name, gens.clone(), vec![], BTreeSet::new())?;
        let n = gens.len();
        let mut adjacent = vec![false; n * n];
        for (a, b) in edges {
            let (a, b) = (shell.gen(a)?, shell.gen(b)?);
            if a == b {
                return Err(Error::InvalidInput("graph loop".into()));
            }
            adjacent[a.index() * n + b.index()] = true;
            adjacent[b.index() * n + a.index()] = true;
        }
        let mut relators = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if adjacent[i * n + j] {
                    relators.push(commutator_word(
                        Letter::pos(GeneratorId(i as u32)),
                        Letter::pos(GeneratorId(j as u32)),
                    ));
                }
            }
        }
        Ok(Raag {
            name: name.to_string(),
            presentation: Presentation::new(name, gens, relators, BTreeSet::new())?,
            n,
            adjacent,
        })
    }

    /// `F_2 x Z^3` on `a, b` (free) and `x, y, z` (central).
    pub fn f2_z3() -> Self {
        let mut edges = Vec::new();
        for f in ["a", "b"] {
            for c in ["x", "y", "z"] {
                edges.push((f, c));
            }
        }
        edges.extend([("x", "y"), ("x", "z"), ("y", "z")]);
        Raag::new("f2xz3", &["a", "b", "x", "y", "z"], &edges).expect("valid graph")
    }

    pub fn from_json(j: &RaagGraphJson) -> Result<Self> {
        let v: Vec<&str> = j.vertices.iter().map(String::as_str).collect();
        let e: Vec<(&str, &str)> = j.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Raag::new(j.name.as_deref().unwrap_or("raag"), &v, &e)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let j: RaagGraphJson = serde_json::from_str(&fs::read_to_string(path)?)?;
        Raag::from_json(&j)
    }

    fn commute(&self, a: Letter, b: Letter) -> bool {
        a.gen != b.gen && self.adjacent[a.gen.index() * self.n + b.gen.index()]
    }

    /// Shuffle reduction: a new letter cancels against the last occurrence
    /// of its inverse reachable through commuting letters.
    fn reduce(&self, w: &Word) -> Vec<Letter> {
        let mut out: Vec<Letter> = Vec::with_capacity(w.len());
        'next: for &l in w {
            for i in (0..out.len()).rev() {
                let o = out[i];
                if o == l.inv() {
                    out.remove(i);
                    continue 'next;
                }
                if !self.commute(o, l) {
                    break;
                }
            }
            out.push(l);
        }
        out
    }

    /// Lexicographically least representative of the trace of a reduced word.
    fn lex_least(&self, w: Vec<Letter>) -> Vec<Letter> {
        let n = w.len();
        let mut blockers = vec![0usize; n];
        for i in 0..n {
            for j in 0..i {
                if !self.commute(w[j], w[i]) {
                    blockers[i] += 1;
                }
            }
        }
        let mut used = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let pick = (0..n)
                .filter(|&i| !used[i] && blockers[i] == 0)
                .min_by_key(|&i| (w[i], i))
                .expect("acyclic dependence order");
            used[pick] = true;
            out.push(w[pick]);
            for k in pick + 1..n {
                if !used[k] && !self.commute(w[pick], w[k]) {
                    blockers[k] -= 1;
                }
            }
        }
        out
    }
}

impl GroupOracle for Raag {
    fn name(&self) -> &str {
        &self.name
    }

    fn spec(&self) -> GroupSpec {
        let names = self.presentation.generators();
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.adjacent[i * self.n + j] {
                    edges.push((names[i].clone(), names[j].clone()));
                }
            }
        }
        GroupSpec::Raag {
            graph: RaagGraphJson {
                name: Some(self.name.clone()),
                vertices: names.to_vec(),
                edges,
            },
        }
    }

    fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn normal_form(&self, w: &Word) -> Word {
        Word::raw(self.lex_least(self.reduce(w)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Independent F2 x Z3 model: free reduction on {a,b} plus an exponent vector.
    fn product_model(w: &Word) -> (Word, [i64; 3]) {
        let mut e = [0i64; 3];
        let free: Vec<Letter> = w
            .iter()
            .filter_map(|l| {
                if l.gen.0 >= 2 {
                    e[l.gen.index() - 2] += l.sign();
                    None
                } else {
                    Some(*l)
                }
            })
            .collect();
        (Word::new(free), e)
    }

    fn letters(n: u32) -> impl Strategy<Value = Letter> {
        (0..n, any::<bool>()).prop_map(|(g, inverse)| Letter {
            gen: GeneratorId(g),
            inverse,
        })
    }

    #[test]
    fn z3_normal_form() {
        let o = FreeAbelian::standard(3);
        let p = o.presentation();
        let w = p.parse_word("y x z^-1 x y^-1").unwrap();
        assert_eq!(p.format_word(&o.normal_form(&w)), "x^2 z^-1");
        assert_eq!(o.distance(&w), 3);
    }

    #[test]
    fn f2z3_presentation_shape() {
        let o = Raag::f2_z3();
        let p = o.presentation();
        let names: Vec<String> = p.relators().iter().map(|r| p.format_word(r)).collect();
        assert_eq!(names[0], "a x a^-1 x^-1");
        assert_eq!(names.len(), 9);
        assert!(!p.commutes(p.gen("a").unwrap(), p.gen("b").unwrap()));
    }

    #[test]
    fn raag_lex_least_non_adjacent_case() {
        // b d a with a commuting with b and d, b not commuting with d
        let o = Raag::new("t", &["a", "b", "d"], &[("a", "b"), ("a", "d")]).unwrap();
        let p = o.presentation();
        let w = p.parse_word("b d a").unwrap();
        assert_eq!(p.format_word(&o.normal_form(&w)), "a b d");
    }

    proptest! {
        #[test]
        fn raag_matches_product_model(
            u in prop::collection::vec(letters(5), 0..30),
            v in prop::collection::vec(letters(5), 0..30),
        ) {
            let o = Raag::f2_z3();
            let (u, v) = (Word::raw(u), Word::raw(v));
            let same = product_model(&u) == product_model(&v);
            prop_assert_eq!(o.normal_form(&u) == o.normal_form(&v), same);
            let nf = o.normal_form(&u);
            prop_assert_eq!(o.normal_form(&nf), nf.clone());
            let (f, e) = product_model(&u);
            let len = f.len() + e.iter().map(|k| k.unsigned_abs() as usize).sum::<usize>();
            prop_assert_eq!(o.distance(&u), len);
        }

        #[test]
        fn raag_nf_is_group_invariant(u in prop::collection::vec(letters(5), 0..20)) {
            let o = Raag::f2_z3();
            let u = Word::raw(u);
            prop_assert!(o.mul(&u, &u.invert()).is_empty());
        }
    }
}
