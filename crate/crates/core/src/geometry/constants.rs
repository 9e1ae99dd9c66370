use std::collections::BTreeMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::geometry::oracle::GroupOracle;
use crate::words::{GeneratorId, Letter, Word};

/// `v · x^k`.
pub fn translate(o: &dyn GroupOracle, v: &Word, x: Letter, k: i64) -> Word {
    o.normal_form(&v.concat_raw(&Word::power(x, k)))
}

/// Smallest `k >= 0` with `v x^k` in `St^radius(*)`. Past
/// `k = |v| + radius` the triangle inequality rules out a hit.
pub fn ray_hit(o: &dyn GroupOracle, v: &Word, x: Letter, radius: usize) -> Option<i64> {
    let bound = (o.distance(v) + radius + 1) as i64;
    (0..=bound).find(|&k| o.distance(&v.concat_raw(&Word::power(x, k))) <= radius)
}

/// Largest `k >= 0` with `v x^k` in `St^radius(*)`.
pub fn ray_last_hit(o: &dyn GroupOracle, v: &Word, x: Letter, radius: usize) -> Option<i64> {
    let bound = (o.distance(v) + radius + 1) as i64;
    (0..=bound)
        .rev()
        .find(|&k| o.distance(&v.concat_raw(&Word::power(x, k))) <= radius)
}

pub fn line_hit(o: &dyn GroupOracle, v: &Word, y: Letter, radius: usize) -> Option<i64> {
    let bound = (o.distance(v) + radius + 1) as i64;
    (-bound..=bound).find(|&k| o.distance(&v.concat_raw(&Word::power(y, k))) <= radius)
}

/// First vertex `v x^i y^j` (with `i >= 0`) found in `St^radius(*)`,
/// enumerated over `|i| + |j| <= |v| + radius`.
pub fn half_plane_hit(
    o: &dyn GroupOracle,
    v: &Word,
    x: Letter,
    y: Letter,
    radius: usize,
) -> Option<(i64, i64)> {
    let b = (o.distance(v) + radius) as i64;
    for i in 0..=b {
        let rest = b - i;
        for j in -rest..=rest {
            let w = v.concat_raw(&Word::power(x, i)).concat_raw(&Word::power(y, j));
            if o.distance(&w) <= radius {
                return Some((i, j));
            }
        }
    }
    None
}

/// Same for the half space `v x^i y^j z^k`, `i >= 0`.
pub fn half_space_hit(
    o: &dyn GroupOracle,
    v: &Word,
    (x, y, z): (Letter, Letter, Letter),
    radius: usize,
) -> Option<(i64, i64, i64)> {
    let b = (o.distance(v) + radius) as i64;
    for i in 0..=b {
        for j in -(b - i)..=(b - i) {
            let rest = b - i - j.abs();
            for k in -rest..=rest {
                let w = v
                    .concat_raw(&Word::power(x, i))
                    .concat_raw(&Word::power(y, j))
                    .concat_raw(&Word::power(z, k));
                if o.distance(&w) <= radius {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Smallest `T >= 1` such that every line `v x^t <y>` with `t >= T` misses
/// `St^m(*)`.
pub fn t_of(o: &dyn GroupOracle, v: &Word, m: usize, x: Letter, y: Letter) -> i64 {
    let bound = (o.distance(v) + m + 1) as i64;
    let mut last = None;
    for t in -bound..=bound {
        let base = translate(o, v, x, t);
        let reach = (o.distance(&base) + m + 1) as i64;
        let hit = (-reach..=reach)
            .any(|j| o.distance(&base.concat_raw(&Word::power(y, j))) <= m);
        if hit {
            last = Some(t);
        }
    }
    last.map_or(1, |t| (t + 1).max(1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsRow {
    pub m: usize,
    #[serde(rename = "L1")]
    pub l1: usize,
    #[serde(rename = "M1")]
    pub m1: usize,
    #[serde(rename = "L2")]
    pub l2: usize,
    #[serde(rename = "M2")]
    pub m2: usize,
    pub threshold: usize,
}

/// `L1`, `M1`, `L2`, `M2` as functions of `m`, memoized per instance.
pub struct LemmaConstants<'a> {
    oracle: &'a dyn GroupOracle,
    pub w: usize,
    pub pairs: Vec<(GeneratorId, GeneratorId)>,
    pub triples: Vec<(GeneratorId, GeneratorId, GeneratorId)>,
    l1_memo: Mutex<BTreeMap<usize, (usize, Word)>>,
    l2_memo: Mutex<BTreeMap<usize, (usize, Word)>>,
}

impl<'a> LemmaConstants<'a> {
    /// `t` lists the designated commuting generators; every pair and every
    /// triple of them is designated.
    pub fn new(oracle: &'a dyn GroupOracle, t: &[GeneratorId], w: usize) -> Self {
        let mut pairs = Vec::new();
        let mut triples = Vec::new();
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                pairs.push((t[i], t[j]));
                for k in j + 1..t.len() {
                    triples.push((t[i], t[j], t[k]));
                }
            }
        }
        LemmaConstants {
            oracle,
            w,
            pairs,
            triples,
            l1_memo: Mutex::new(BTreeMap::new()),
            l2_memo: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn oracle(&self) -> &'a dyn GroupOracle {
        self.oracle
    }

    /// Largest `|a|_A` over `a` in `<A>` with `|a| <= 2m`, and an element
    /// attaining it. Lattice points are scanned from the outermost shell
    /// `|coords| = 2m` inward; the outermost shell containing an element of
    /// length `<= 2m` gives the maximum.
    fn subgroup_max(&self, gens: &[GeneratorId], m: usize) -> (usize, Word) {
        let o = self.oracle;
        for shell in (0..=2 * m).rev() {
            let mut found: Option<Word> = None;
            for_each_shell_point(gens.len(), shell as i64, &mut |c| {
                if found.is_some() {
                    return;
                }
                let w = Word::raw(
                    gens.iter()
                        .zip(c)
                        .flat_map(|(&g, &k)| Word::power(Letter::pos(g), k).letters().to_vec())
                        .collect(),
                );
                if o.distance(&w) <= 2 * m {
                    found = Some(o.normal_form(&w));
                }
            });
            if let Some(w) = found {
                return (shell, w);
            }
        }
        (0, Word::empty())
    }

    fn memo_max(
        &self,
        memo: &Mutex<BTreeMap<usize, (usize, Word)>>,
        groups: Vec<Vec<GeneratorId>>,
        m: usize,
    ) -> (usize, Word) {
        if let Some(v) = memo.lock().expect("memo lock").get(&m) {
            return v.clone();
        }
        let best = groups
            .iter()
            .map(|g| self.subgroup_max(g, m))
            .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)))
            .unwrap_or((0, Word::empty()));
        memo.lock().expect("memo lock").insert(m, best.clone());
        best
    }

    /// Returns `L1(m)` and the element realizing `L1(m) - 1`.
    pub fn l1_witness(&self, m: usize) -> (usize, Word) {
        let groups = self.pairs.iter().map(|&(a, b)| vec![a, b]).collect();
        let (k, w) = self.memo_max(&self.l1_memo, groups, m);
        (k + 1, w)
    }

    pub fn l2_witness(&self, m: usize) -> (usize, Word) {
        let groups = self.triples.iter().map(|&(a, b, c)| vec![a, b, c]).collect();
        let (k, w) = self.memo_max(&self.l2_memo, groups, m);
        (k + 1, w)
    }

    pub fn l1(&self, m: usize) -> usize {
        self.l1_witness(m).0
    }

    pub fn l2(&self, m: usize) -> usize {
        self.l2_witness(m).0
    }

    pub fn m1(&self, m: usize) -> usize {
        (self.l1(m) + m).max(m + self.w + 1)
    }

    pub fn m2(&self, m: usize) -> usize {
        (self.l2(m) + m).max(self.m1(m) + self.w)
    }

    /// `M2(M1(m) + W)`, the minimum distance of loops to be filled.
    pub fn threshold(&self, m: usize) -> usize {
        self.m2(self.m1(m) + self.w)
    }

    pub fn row(&self, m: usize) -> ConstantsRow {
        ConstantsRow {
            m,
            l1: self.l1(m),
            m1: self.m1(m),
            l2: self.l2(m),
            m2: self.m2(m),
            threshold: self.threshold(m),
        }
    }
}

/// Calls `f` on every integer vector of length `n` with `|c|_1 = r`, in a
/// fixed order.
pub(crate) fn for_each_shell_point(n: usize, r: i64, f: &mut dyn FnMut(&[i64])) {
    fn rec(c: &mut Vec<i64>, n: usize, left: i64, f: &mut dyn FnMut(&[i64])) {
        if c.len() + 1 == n {
            for v in [-left, left] {
                c.push(v);
                f(c);
                c.pop();
                if left == 0 {
                    break;
                }
            }
            return;
        }
        for v in -left..=left {
            c.push(v);
            rec(c, n, left - v.abs(), f);
            c.pop();
        }
    }
    if n == 0 {
        if r == 0 {
            f(&[]);
        }
        return;
    }
    rec(&mut Vec::with_capacity(n), n, r, f);
}
